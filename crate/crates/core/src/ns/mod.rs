//! Neveu-Schwarz algebra: modes, PBW words, Verma modules, the Shapovalov
//! form and the reducibility curves.

mod gram;
mod locus;
mod mode;
mod pbw;
mod verma;

pub use gram::{gram_kernel, shapovalov_entry, shapovalov_matrix, KernelVector};
pub use locus::{
    central_charge, curve_parameters, curve_weight, degenerate_weight, reducibility_locus,
    CurvePoint,
};
pub use mode::{bracket, Bracket, Mode, ModeKind};
pub use pbw::{pbw_basis, PBWWord};
pub use verma::{apply_mode, singular_verify, Terms, VermaElement, VermaModule};

use crate::scalar::HalfInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NsError {
    #[error("element mixes levels {levels:?}")]
    NonHomogeneous { levels: Vec<HalfInt> },
    #[error("curve parameter needs sqrt of {discriminant}, not in the scalar ring")]
    UnrepresentableRoot { discriminant: String },
}
