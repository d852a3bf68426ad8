//! Exact commutative algebra over polynomial rings: Gröbner bases, ideals,
//! finitely presented modules, order ideals and Rees algebras of modules.

pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod limits;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod rees;
pub mod ring;

pub use error::{Error, Limit, Result};
pub use field::{Coeff, Field, DEFAULT_PRIME};
pub use groebner::{
    eliminate, groebner, groebner_with_rule, ideal_groebner, kernel_of_map, lift, relative_syzygies,
    syzygies,
    GroebnerBasis, SyzygyResult,
};
pub use limits::Limits;
pub use monomial::{compare, Monomial, MonomialOrder, PositionRule};
pub use parse::{parse_matrix_rows, parse_poly, parse_poly_list, parse_ring, parse_vector};
pub use poly::{poly_arith, ArithOp, FreeElement, Operand, Polynomial};
pub use ring::{Ring, RingRef};
pub use ideal::{Height, HeightReport, Ideal, Method, ReductionOutcome};
pub use matrix::PolyMatrix;
pub use module::{FPModule, OrderIdealResult, PerpResult, Route};
pub use rees::{
    analytic_spread, module_reduction_test, rees_of_module, colon_bound_check, FiberWitness,
    ReductionCertificate, ReesPresentation, ColonBoundOutcome, ColonBoundReport,
};
