//! Point counts of y^q - y = f(x) over F_{q^m}, their p-adic valuations, and the lower
//! bounds and optimization program that control them.

mod bounds;
mod polynomial;
mod program;
mod search;

pub use bounds::{
    digit_bounds, digit_knapsack, general_bound, homogeneous_bound, BoundCheck, BoundReport,
    HomogeneousBound, KnapsackBase,
};
pub use polynomial::{count_solutions, reduce_exponent, Polynomial, PolynomialFamily, SolutionCount};
pub use program::{
    explicit_feasible_point, solve_degree_set_program, DegreeSetProgram, ExplicitAssignment, ProgramResult, TowerParams,
};
pub use search::{search_extremal, search_extremal_detailed, ExtremalSearch, SearchHit, SearchPhase};
