//! Membership tests and structural diagnostics.

mod mistakes;
mod rationality;
mod structure;
mod support;

pub use mistakes::{
    deficit_around, fh_lower_identifiable, is_one_mistake, near_optimal_types, FhLowerVerdict, MistakeDirection,
    OneMistakeCheck,
};
pub use rationality::{
    is_rational_type, scrum_membership, AxiomStatus, AxiomViolationDetail, ScrumReport,
};
pub use structure::{is_lattice, is_progressive, LatticeCheck, LatticeDefect, LatticeOp};
pub use support::{support_diagnostics, SupportDiagnostics};
