//! Exact computations on generalized parking function polytopes.
//!
//! The crate covers vertex and inequality descriptions of the x-parking
//! function polytopes `X_n(a, b)` and their relatives, closed-form and
//! recursive volume formulas, face and lattice-point counts, and the
//! generating-function identities behind the volumes. All arithmetic is exact:
//! integers are arbitrary precision and every volume is a reduced rational.
//!
//! Most formulas come paired with a brute-force oracle (vertex dedupe, face
//! enumeration, Ehrhart interpolation, a perfect-matching census) so that the
//! two routes can be compared.

pub mod arith;
pub mod counting;
pub mod error;
pub mod families;
pub mod series;
pub mod volume;

pub use arith::{Polynomial, Rational, RationalMatrix};
pub use counting::FVector;
pub use error::{Error, Result};
pub use families::{ConstraintSystem, LatticePoint, Layer, XpfParams};
pub use series::PowerSeries;
pub use volume::{CkSequence, Formula, VolumeResult};
