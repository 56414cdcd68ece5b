//! Finite-dimensional algebras over an exact field: endomorphism algebras of
//! small objects, their radicals, and the splitting of idempotents into
//! primitive pieces.
//!
//! ```
//! use urep::algkit::FinDimAlgebra;
//! use urep::coeff::Ring;
//!
//! let at_one = FinDimAlgebra::partition_end(&Ring::rational_int(1), 1).unwrap();
//! assert!(at_one.is_semisimple().unwrap());
//! assert_eq!(at_one.split_idempotent(at_one.unit()).unwrap().len(), 2);
//!
//! let at_zero = FinDimAlgebra::partition_end(&Ring::rational_int(0), 1).unwrap();
//! assert_eq!(at_zero.radical().unwrap().len(), 1);
//! ```

mod algebra;
mod identify;
mod split;

pub use algebra::{FinDimAlgebra, Vector, PARTITION_END_CAP, TL_END_CAP};
pub use identify::{decompose_power, identify_summand, SummandId};
pub use split::IdempotentDecomposition;
