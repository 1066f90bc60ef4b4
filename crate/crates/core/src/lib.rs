pub mod apolarity;
pub mod artinian;
pub mod error;
pub mod forms;
pub mod generators;
pub mod matrix_algebra;
pub mod matrix_ideals;
pub mod resolutions;
pub mod scalars;
pub mod splitting;

pub use error::{Error, Result};

pub use forms::{DPForm, DiffOp};
pub use scalars::{Field, Matrix, PrimeField, RatField, Rationals};

pub type QForm = DPForm<Rationals>;
pub type QOp = DiffOp<Rationals>;
pub type QMatrix = Matrix<Rationals>;
pub type FpForm = DPForm<PrimeField>;
pub type FpOp = DiffOp<PrimeField>;
pub type FpMatrix = Matrix<PrimeField>;
/// Forms over Q(t_1, ..., t_n), as produced by degenerate splittings.
pub type QtForm = DPForm<RatField<Rationals>>;
pub type FptForm = DPForm<RatField<PrimeField>>;
