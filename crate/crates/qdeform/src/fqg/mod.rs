//! Finite quantum groups: `C(G)`, `C*(Γ)`, their multiplicative unitaries,
//! modular conjugations and duality.

pub mod group;
pub mod quantum;

pub use group::{FiniteGroup, GroupError};
pub use quantum::{
    gns_modular, pentagon_defect, tensor_span, FiniteQuantumGroup, Kind, QuantumGroupError,
    QuantumGroupReport,
};
