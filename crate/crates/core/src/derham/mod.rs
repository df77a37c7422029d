//! Differential forms on the `(1|n)`-dimensional superline: the conformal de
//! Rham complex `Ω_n` with `d̃`, `ι`, `L̃`, the homotopy `K`, and the
//! truncated Laurent complexes `Ω_±`.

mod complex;
mod exactness;
mod forms;
mod laurent;


pub use complex::{
    contraction, contraction_mono, epsilon, epsilon_mono, homotopy_k, homotopy_k_mono, lie_derivative, lie_mono,
    tilde_d, tilde_d_mono, ContractionSigns, FieldRule, FormBasis,
};
pub use exactness::{
    cartan_failures, contraction_anticommutation_failures, d_tilde_morphism, d_tilde_squared_failures,
    exactness_report, forms_module, homotopy_failures, DegreeExactness, ExactnessReport,
};
pub use forms::{derive, exterior_d, exterior_d_form, Form, FormGen, FormMono, LambdaForm};
pub use laurent::{LaurentCohomology, LaurentComplex, Side};

