//! Finite-dimensional `gl(1|n)` representations, tensor modules `Tens(V)`,
//! conformal duals and transposes, and the explicit `W_1` family `M(a, b)`.

mod dual;
mod glrep;
mod tens;
mod w1;

pub use glrep::{
    build_bar_forms, build_dual_rep, build_forms_const, build_standard, index_parity, unit_parity, GlRep, GlRepJson,
};
pub use tens::{tens, tens_decode, tens_index, tens_verified};
pub use dual::{conformal_dual, double_dual_matches, submodule, virasoro_d, ModuleMorphism};
pub use w1::{build_l0b, build_la_minus_a, build_m_ab, build_submodule_n, cl_params, virasoro_element, V0, V1, W0, W1};
