//! Matrix equations expanded into scalar polynomial systems: Jacobians, Gröbner
//! counts with multiplicity, and the homogeneous part that governs solutions at infinity.

pub mod count;
pub mod shapes;
pub mod spec;

pub use count::{
    count_solutions, count_solutions_with, groebner_of, homogeneous_infinity_check, homogeneous_infinity_check_with,
    is_sole_solution, multiplicity_total, points_of_ideal, CountJson, CountOptions, CountReport, CountedPoint, InfinityReport, PointJson,
    SINGULAR_TOL,
};
pub use shapes::{count_random_generic, looks_generic, random_spec, GenericCount, Shape, ALL_SHAPES};
pub use spec::{
    is_singular_numeric, jacobian_at, matricize, matricize_with, variable_names, EquationFile, EquationSpec, Factor,
    JacobianReport, MatricizedSystem, TermFile, Word, DEGREE_CAP, UNKNOWN,
};
