pub mod algebra;
pub mod coeffs;
pub mod envelope;
pub mod error;
pub mod lierinehart;
pub mod report;
pub mod scalar;
pub mod shapes;
pub mod smash;
pub mod superpoly;

pub use error::{Error, Result};
pub use report::{Claim, Report, Verdict};
pub use scalar::{BinomPoly, Fp, Prime, Rat};
pub use shapes::{Shape, ShapePointer};
pub use smash::{GammaTable, SmashElement};
pub use superpoly::{Parity, ParityCase, SuperMonomial, SuperPoly};
