pub mod cli;
pub mod decompose;
pub mod diamond;
pub mod error;
pub mod field;
pub mod filtration;
pub mod harness;
pub mod homology;
pub mod io;
pub mod localize;
pub mod matrix;
pub mod subspace;
pub mod svg;
pub mod zigzag;

pub use error::{Error, Result};
pub use field::Field;
pub use matrix::{ElemOp, Echelon, Matrix};
pub use subspace::Subspace;
pub use zigzag::{interval_module, Arrow, Barcode, Grid, Interval, ZigzagModule, ZigzagType};
