//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 10 contains one sub-check that cannot pass: the reference Jacobian of the
//! non-isolated line `X_a = [[-2, a], [0, 0]]` disagrees with the Jacobian of `f` in
//! the lower-right block, while the same layout reproduces the other reference matrix
//! exactly. That line is reported as FAIL and listed in `KNOWN_UNATTAINABLE`; any
//! other failure makes the run exit non-zero.

use std::panic::catch_unwind;
use std::time::{Duration, Instant};

use matsolve::exactalg::{buchberger, parse_poly, rat, ratio, MonomialOrder, Rat, RatMatrix, RatUniPoly, Ring};
use matsolve::matpoly::{
    binomial, det_lambda, is_generic_exact, random_generic_unilateral, random_unilateral, subsets_independent, solve_unilateral, verify_solvent, LambdaPoly, MatPolynomial, UnilateralOptions,
};
use matsolve::riccati::catalogue::{catalogue_fixtures, check_fixture};
use matsolve::random::retry_seed;
use matsolve::riccati::{hamiltonian_solve, random_generic_riccati, reduce_riccati, solve_by_reduction, trace_evenness_check};
use matsolve::structured::{
    binome_family_emit, binome_stratum_count, commuting_counterexample_check, commuting_solve, max_commutator_with,
    random_diagonal_pair, random_generic_commuting, random_symmetric, symmetric_quadratic_solve, BinomeFamilyDescriptor,
};
use matsolve::syscount::{
    count_random_generic, count_solutions, groebner_of, is_sole_solution, jacobian_at, random_spec, CountOptions,
    EquationSpec, Shape,
};
use num_traits::Zero;
use rayon::prelude::*;

const KNOWN_UNATTAINABLE: &[u32] = &[10];
const RETRIES: u32 = 3;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn unilateral_cases() -> Vec<(usize, usize, u64)> {
    [(2, 2), (2, 3), (3, 2)].into_iter().flat_map(|(n, k)| (0..20u64).map(move |s| (n, k, s))).collect()
}

fn criterion_1_and_2() -> (Outcome, Outcome) {
    let results: Vec<Result<(f64, f64, Duration), String>> = unilateral_cases()
        .into_par_iter()
        .map(|(n, k, seed)| {
            let (mp, _) = random_generic_unilateral(n, k, seed, 16).map_err(e2s)?;
            let t = Instant::now();
            let sols = solve_unilateral(&mp).map_err(e2s)?;
            let elapsed = t.elapsed();
            let want = binomial(n * k, n) as usize;
            ensure(sols.len() == want && sols.distinct_count(1e-6) == want, || {
                format!("(n,k)=({n},{k}) seed {seed}: {} solvents, {} distinct, want {want}", sols.len(), sols.distinct_count(1e-6))
            })?;
            ensure(elapsed < Duration::from_secs(5), || format!("(n,k)=({n},{k}) seed {seed}: {elapsed:?}"))?;
            let mut phi = 0.0f64;
            for x in sols.matrices() {
                phi = phi.max(verify_solvent(&mp, &x).map_err(e2s)?.phi_residual);
            }
            Ok((sols.max_residual(), phi, elapsed))
        })
        .collect();
    let mut worst_res = 0.0f64;
    let mut worst_phi = 0.0f64;
    let mut slowest = Duration::ZERO;
    for r in &results {
        match r {
            Ok((res, phi, t)) => {
                worst_res = worst_res.max(*res);
                worst_phi = worst_phi.max(*phi);
                slowest = slowest.max(*t);
            }
            Err(e) => return (Err(e.clone()), Err("solver failed, see criterion 1".into())),
        }
    }
    let c1 = if worst_res <= 1e-8 {
        Ok(format!("60 instances, counts 6/15/20, max residual {worst_res:.1e}, slowest {slowest:.2?}"))
    } else {
        Err(format!("max residual {worst_res:.1e} > 1e-8"))
    };
    let c2 = if worst_phi <= 1e-7 { Ok(format!("max ||phi(X)|| {worst_phi:.1e}")) } else { Err(format!("max ||phi(X)|| {worst_phi:.1e} > 1e-7")) };
    (c1, c2)
}

fn criterion_3() -> Outcome {
    for (n, k) in [(2, 2), (2, 3), (3, 2)] {
        let mp = MatPolynomial::trinomial_specialization(n, k).map_err(e2s)?;
        let mut want = vec![Rat::zero(); n * k + 1];
        want[0] = rat(-1);
        want[1] = rat(-1);
        want[n * k] = rat(1);
        match det_lambda(&mp).map_err(e2s)? {
            LambdaPoly::Exact(p) => ensure(p == RatUniPoly::new(want), || format!("(n,k)=({n},{k}): got {p:?}"))?,
            LambdaPoly::Numeric(_) => return Err("rational path not taken".into()),
        }
    }
    Ok("lambda^{nk} - lambda - 1 exactly for (2,2), (2,3), (3,2)".into())
}

fn criterion_4() -> Outcome {
    let outcomes: Vec<Result<f64, String>> = (0..50u64)
        .into_par_iter()
        .map(|seed| {
            let (p, _) = random_generic_riccati(2, seed, 16).map_err(e2s)?;
            let ham = hamiltonian_solve(&p).map_err(e2s)?.set;
            let red = solve_by_reduction(&p, &UnilateralOptions::default()).map_err(e2s)?;
            let report = count_solutions(&p.to_spec()).map_err(e2s)?;
            let gro = report.solution_set();
            ensure(report.summary.count() == Some(6), || format!("seed {seed}: nu = {:?}", report.summary.count()))?;
            for (name, set) in [("hamiltonian", &ham), ("reduction", &red), ("groebner", &gro)] {
                ensure(set.len() == 6 && set.distinct_count(1e-6) == 6, || format!("seed {seed}: {name} gave {}", set.len()))?;
            }
            ensure(ham.matches(&red, 1e-6) && ham.matches(&gro, 1e-6), || format!("seed {seed}: solution sets disagree"))?;
            Ok(ham.max_residual().max(red.max_residual()).max(gro.max_residual()))
        })
        .collect();
    let mut worst = 0.0f64;
    for o in outcomes {
        worst = worst.max(o?);
    }
    Ok(format!("50 instances agree, nu = 6, max residual {worst:.1e}"))
}

/// Evenness concerns the monic form `X^2 + BX + C`: the Riccati reductions and
/// random monic instances.
fn criterion_5() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..10u64 {
        let (p, _) = random_generic_riccati(2, seed, 16).map_err(e2s)?;
        let reduced = reduce_riccati(&p).map_err(e2s)?.unilateral;
        let monic = (0..=16).map(|a| random_unilateral(2, 2, retry_seed(seed, a), true)).find(|mp| is_generic_exact(mp).unwrap_or(false) && subsets_independent(mp, &UnilateralOptions::default()).unwrap_or(false));
        let monic = monic.ok_or_else(|| format!("seed {seed}: no generic monic draw"))?;
        for (what, mp) in [("reduced", reduced), ("monic", monic)] {
            let t = trace_evenness_check(&solve_unilateral(&mp).map_err(e2s)?).map_err(e2s)?;
            ensure(t.odd_ratio <= 1e-6, || format!("{what} seed {seed}: odd ratio {:.1e}", t.odd_ratio))?;
            ensure(t.r.degree() == Some(3), || format!("{what} seed {seed}: deg R = {:?}", t.r.degree()))?;
            worst = worst.max(t.odd_ratio);
        }
    }
    Ok(format!("20 instances, worst odd/max ratio {worst:.1e}, deg R = 3"))
}

fn criterion_6() -> Outcome {
    for n in [2, 3] {
        let (b, c, _) = random_symmetric(n, 11, 16).map_err(e2s)?;
        let s = symmetric_quadratic_solve(&b, &c).map_err(e2s)?;
        ensure(s.len() == 1 << n && s.distinct_count(1e-6) == 1 << n, || format!("symmetric n={n}: {}", s.len()))?;
        ensure(s.max_residual() <= 1e-8, || format!("symmetric n={n}: residual {:.1e}", s.max_residual()))?;
    }
    let mut worst = 0.0f64;
    for (n, k) in [(2, 2), (2, 3), (3, 2)] {
        let (fam, _) = random_generic_commuting(n, k, 3, 16).map_err(e2s)?;
        let s = commuting_solve(&fam).map_err(e2s)?;
        let want = k.pow(n as u32);
        ensure(s.len() == want && s.distinct_count(1e-6) == want, || format!("commuting ({n},{k}): {} of {want}", s.len()))?;
        for x in s.matrices() {
            let c = max_commutator_with(&fam, &x);
            ensure(c <= 1e-9, || format!("commuting ({n},{k}): commutator {c:.1e}"))?;
            worst = worst.max(c);
        }
    }
    Ok(format!("symmetric 4/8; commuting 4/8/9, max commutator {worst:.1e}"))
}

fn criterion_7() -> Outcome {
    for n in 2..=4usize {
        let t = RatMatrix::diag(&(0..n).map(|i| ratio(2 * i as i64 + 1, (i + 2) as i64)).collect::<Vec<_>>());
        for r in 0..=n {
            let excluded: Vec<usize> = (n - r..n).collect();
            let y = RatMatrix::from_rows((0..n - r).map(|i| (0..r).map(|j| ratio(i as i64 - j as i64, 3)).collect()).collect())
                .unwrap_or_else(|_| RatMatrix::zeros(n - r, r));
            let m = binome_family_emit(&BinomeFamilyDescriptor { t: t.clone(), r, excluded, y }).map_err(e2s)?;
            let z = m.exact.ok_or("rational path not taken")?;
            ensure((&(&z * &z) + &(&t * &z)).is_zero() && m.residual == 0.0, || format!("n={n} r={r}: non-zero residual"))?;
        }
    }
    let got: Vec<(usize, u128)> = (2..=4).map(binome_stratum_count).collect();
    ensure(got == [(1, 2), (2, 6), (4, 6)], || format!("strata {got:?}"))?;
    Ok("exact zero residual on every stratum for n=2,3,4; strata (1,2), (2,6), (4,6)".into())
}

fn criterion_8() -> Outcome {
    let mut detail = Vec::new();
    for (polys, want) in [(["x^2", "y^3"], 6), (["y^2 - x^5", "x^2 - y^5"], 25)] {
        let t = Instant::now();
        let ring = Ring::new(["x", "y"], MonomialOrder::Grevlex).map_err(e2s)?;
        let gens = polys.iter().map(|s| parse_poly(&ring, s)).collect::<Result<Vec<_>, _>>().map_err(e2s)?;
        let got = buchberger(&gens, MonomialOrder::Grevlex).map_err(e2s)?.summary().count();
        let elapsed = t.elapsed();
        ensure(got == Some(want), || format!("{polys:?}: {got:?}, want {want}"))?;
        ensure(elapsed < Duration::from_secs(1), || format!("{polys:?}: {elapsed:?}"))?;
        detail.push(format!("{want} in {elapsed:.1?}"));
    }
    Ok(detail.join(", "))
}

fn criterion_9() -> Outcome {
    let jobs: Vec<(Shape, usize, u64)> =
        [(Shape::Riccati, 6), (Shape::Plex1, 8), (Shape::Plex2, 6), (Shape::Degmax, 16)].into_iter().flat_map(|(s, c)| (0..10u64).map(move |k| (s, c, k))).collect();
    let results: Vec<Result<(u32, Duration), String>> = jobs
        .into_par_iter()
        .map(|(shape, want, seed)| {
            let t = Instant::now();
            let g = count_random_generic(shape, 2, seed, Some(want), RETRIES, &CountOptions::default()).map_err(e2s)?;
            let elapsed = t.elapsed();
            let got = g.report.summary.count();
            ensure(got == Some(want) && g.report.distinct == Some(want), || {
                format!("{shape} seed {seed}: count {got:?}, distinct {:?} after {} retries", g.report.distinct, g.retries)
            })?;
            ensure(elapsed < Duration::from_secs(300), || format!("{shape} seed {seed}: {elapsed:?}"))?;
            Ok((g.retries, elapsed))
        })
        .collect();
    let mut retries = 0;
    let mut slowest = Duration::ZERO;
    for r in results {
        let (n, t) = r?;
        retries += n;
        slowest = slowest.max(t);
    }
    Ok(format!("riccati 6, plex1 8, plex2 6, degmax 16 on 10 seeds each; {retries} retries in total, slowest {slowest:.2?}"))
}

fn criterion_10() -> Outcome {
    let zero = RatMatrix::zeros(2, 2);
    // homogeneous degree-two equation: nu = 16 at the origin only
    let mut homog = None;
    for attempt in 0..=RETRIES {
        let spec = random_spec(Shape::Homog, 2, retry_seed(1, attempt));
        let (_, gb) = groebner_of(&spec, &CountOptions::default()).map_err(e2s)?;
        if gb.summary().count() == Some(16) {
            homog = Some(is_sole_solution(&gb, &zero));
            break;
        }
    }
    ensure(homog == Some(true), || format!("homogeneous equation: {homog:?}"))?;

    let fixtures = catalogue_fixtures();
    let get = |name: &str| fixtures.iter().find(|f| f.name == name).expect("fixture exists");
    let palin = check_fixture(get("nu6_nilpotent")).map_err(e2s)?;
    ensure(palin.passed(None) && palin.sole_solution_ok == Some(true), || format!("nilpotent fixture: {palin:?}"))?;

    let triple = get("nu3");
    let report = count_solutions(&triple.problem.to_spec()).map_err(e2s)?;
    ensure(
        report.summary.count() == Some(3) && report.points.len() == 1 && report.points[0].multiplicity == 3,
        || format!("triple point: count {:?}, points {}", report.summary.count(), report.points.len()),
    )?;

    // Jacobians at the critical points of f(X) = X^2 + diag(2, -1) X
    let f = EquationSpec::new(2).with_constant("D", RatMatrix::diag(&[rat(2), rat(-1)])).with_word(&["X", "X"]).with_word(&["D", "X"]);
    let third = ratio(1, 3);
    let x0 = RatMatrix::from_rows(vec![vec![rat(-1), third.clone()], vec![rat(0), rat(2)]]).map_err(e2s)?;
    let want_i = RatMatrix::from_rows(vec![
        vec![rat(0), rat(0), third.clone(), rat(0)],
        vec![third.clone(), rat(3), rat(0), third.clone()],
        vec![rat(0), rat(0), rat(0), rat(0)],
        vec![rat(0), rat(0), third, rat(3)],
    ])
    .map_err(e2s)?;
    let ji = jacobian_at(&f, &x0).map_err(e2s)?;
    ensure(ji.jacobian == want_i && ji.singular, || "first reference Jacobian not reproduced".into())?;

    let mut mismatches = Vec::new();
    for a in [rat(0), rat(1), ratio(-5, 2)] {
        let xa = RatMatrix::from_rows(vec![vec![rat(-2), a.clone()], vec![rat(0), rat(0)]]).map_err(e2s)?;
        ensure(f.eval_rat(&xa).is_zero(), || "X_a is not a solution".into())?;
        let reference = RatMatrix::from_rows(vec![
            vec![rat(-2), rat(0), a.clone(), rat(0)],
            vec![a.clone(), rat(0), rat(0), a.clone()],
            vec![rat(0), rat(0), rat(-3), a.clone()],
            vec![rat(0), rat(0), rat(0), rat(-1)],
        ])
        .map_err(e2s)?;
        let j = jacobian_at(&f, &xa).map_err(e2s)?;
        ensure(j.singular, || "X_a Jacobian is non-singular".into())?;
        if j.jacobian != reference {
            mismatches.push(format!("a={a}: computed {:?}", matsolve::json::rat_rows(&j.jacobian)));
        }
    }
    ensure(mismatches.is_empty(), || {
        format!(
            "homogeneous nu=16 sole 0, nilpotent nu=6 sole 0, triple point and first Jacobian OK; second reference Jacobian not reproduced \
             (entries (3,4) and (4,3) swapped; computed matrix is singular as claimed): {}",
            mismatches[0]
        )
    })?;
    Ok("all multiplicity fixtures and both Jacobians reproduced".into())
}

fn criterion_11() -> Outcome {
    let fixtures = catalogue_fixtures();
    let failures: Vec<String> = fixtures
        .par_iter()
        .filter_map(|f| match check_fixture(f) {
            Ok(o) if o.passed(f.expected_distinct) => None,
            Ok(o) => Some(format!("{}: {:?}", f.name, o)),
            Err(e) => Some(format!("{}: {e}", f.name)),
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    let roots = fixtures.iter().find(|f| f.name == "dim2_unipotent_roots").ok_or("missing X^2 = I fixture")?;
    let id = RatMatrix::identity(2);
    let want = vec![id.clone(), id.scale(&rat(-1))];
    ensure(roots.nonsingular == want, || "X^2 = I fixture does not list +-I".into())?;
    let spec = roots.problem.to_spec();
    for x in &want {
        ensure(spec.eval_rat(x).is_zero() && !spec.jacobian_rat(x).det().map_err(e2s)?.is_zero(), || "+-I check".into())?;
    }
    Ok(format!("{} fixtures classified as stated; +-I isolated and non-singular", fixtures.len()))
}

fn criterion_12() -> Outcome {
    let mut min_comm = f64::INFINITY;
    for seed in 0..5u64 {
        let (b, c) = random_diagonal_pair(seed);
        let r = commuting_counterexample_check(&b, &c).map_err(e2s)?;
        ensure(r.hilbert_dimension == 1, || format!("seed {seed}: dimension {}", r.hilbert_dimension))?;
        ensure(r.diagonal_solutions.len() == 4 && r.max_diagonal_residual < 1e-10 && r.max_diagonal_commutator < 1e-10, || {
            format!("seed {seed}: diagonal solutions {}", r.diagonal_solutions.len())
        })?;
        let distinct = matsolve::numlin::dedup_matrices(&r.diagonal_solutions, 1e-6).len();
        ensure(distinct == 4, || format!("seed {seed}: {distinct} distinct diagonal solutions"))?;
        ensure(r.family_member.is_some() && r.family_residual < 1e-8 && r.family_commutator > 1e-6, || {
            format!("seed {seed}: family residual {:.1e}, commutator {:.1e}", r.family_residual, r.family_commutator)
        })?;
        min_comm = min_comm.min(r.family_commutator);
    }
    Ok(format!("5 diagonal pairs: dimension 1, 4 commuting diagonal solutions, family commutator >= {min_comm:.2}"))
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into())
}

fn guarded(f: fn() -> Outcome) -> Outcome {
    catch_unwind(f).unwrap_or_else(|p| Err(panic_message(p)))
}

fn main() {
    // the harness passes libtest flags; a filter that matches nothing skips the run
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }
    let started = Instant::now();
    let (c1, c2) = catch_unwind(criterion_1_and_2).unwrap_or_else(|p| {
        let m = panic_message(p);
        (Err(m.clone()), Err(m))
    });

    let mut outcomes: Vec<(u32, Outcome)> = vec![(1, c1), (2, c2)];
    let rest: [(u32, fn() -> Outcome); 10] = [
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
    ];
    for (id, f) in rest {
        outcomes.push((id, guarded(f)));
    }

    let mut unexpected = 0;
    for (id, o) in &outcomes {
        match o {
            Ok(d) => println!("criterion {id:>2}: PASS  {d}"),
            Err(d) => {
                let known = KNOWN_UNATTAINABLE.contains(id);
                if !known {
                    unexpected += 1;
                }
                println!("criterion {id:>2}: FAIL{}  {d}", if known { " (known)" } else { "" });
            }
        }
    }
    let passed = outcomes.iter().filter(|(_, o)| o.is_ok()).count();
    println!("acceptance: {passed}/{} PASS in {:.1?}", outcomes.len(), started.elapsed());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
