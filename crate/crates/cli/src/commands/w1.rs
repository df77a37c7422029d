use clap::Args;
use confkit::conformal::{build_w, ConformalModule};
use confkit::repn::{
    build_l0b, build_la_minus_a, build_m_ab, build_submodule_n, cl_params, virasoro_element, V0, V1,
};
use confkit::singular::{solve_with_trivial, Ansatz, GeneratorSet};
use confkit::{LambdaValued, ModuleVector, Rational};
use num_traits::{One, Zero};
use serde_json::json;

use crate::report::{config_error, rat, Outcome, Report};

#[derive(Args, Debug)]
pub struct W1Args {
    #[arg(long, value_parser = crate::rational, allow_hyphen_values = true)]
    a: Rational,
    #[arg(long, value_parser = crate::rational, allow_hyphen_values = true)]
    b: Rational,
    /// Conformal weight Δ for the (Δ, Λ) ↦ (a, b) dictionary.
    #[arg(long, value_parser = crate::rational, allow_hyphen_values = true)]
    delta: Option<Rational>,
    /// Charge Λ for the dictionary.
    #[arg(long = "charge", value_parser = crate::rational, allow_hyphen_values = true)]
    charge: Option<Rational>,
}

/// First generator-basis pair violating sesquilinearity, or the first (M2) failure.
fn module_axioms(m: &ConformalModule<Rational>) -> Option<serde_json::Value> {
    let one = Rational::one();
    for g in 0..m.algebra().rank() {
        for i in 0..m.dim() {
            let base = m.act_basis(g, i);
            let left = m.act(&ModuleVector::term(1, g, one.clone()), &ModuleVector::basis(i));
            let right = m.act_gen(g, &ModuleVector::term(1, i, one.clone()));
            if left != base.mul_lambda_pow(1).neg() || right != base.mul_lambda_plus_d_pow(1) {
                return Some(json!({"M1": [g, i]}));
            }
        }
    }
    m.check_m2().first().map(|f| json!({"M2": format!("{f:?}")}))
}

pub fn run(a: &W1Args) -> Outcome {
    let mut report = Report::new("w1");
    report.config("a", rat(&a.a));
    report.config("b", rat(&a.b));
    report.config("delta", a.delta.as_ref().map(rat));
    report.config("charge", a.charge.as_ref().map(rat));

    let m = build_m_ab(&a.a, &a.b);
    report.check_witness("M(a,b) satisfies the module axioms", module_axioms(&m));
    let r = solve_with_trivial(&m, &[V0, V1], GeneratorSet::W, &Ansatz::new(2)).map_err(config_error)?;
    let dim = r.trivial + r.vectors.len();
    let degenerate = dim > 1;
    let predicted = a.a.is_zero() || (a.a.clone() + a.b.clone()).is_zero();
    report.artifact("singular_dim", dim);
    report.artifact("degenerate", degenerate);
    report.check("degenerate iff a = 0 or a + b = 0", degenerate == predicted);

    if a.a.is_zero() {
        let n = build_submodule_n(&a.b).map_err(config_error)?;
        report.check("N is a submodule of M(0,b)", n.is_morphism());
        report.check("N embeds with free cokernel", n.is_injective() && n.cokernel().torsion().is_empty());
        report.check("transpose of the inclusion is surjective", n.transpose().is_surjective());
        report.check_witness("L(0,b) satisfies the module axioms", module_axioms(&build_l0b(&a.b)));
    }
    if (a.a.clone() + a.b.clone()).is_zero() {
        report.check_witness("M(a,-a) satisfies the module axioms", module_axioms(&build_la_minus_a(&a.a)));
    }

    let w1 = build_w::<Rational>(1);
    let l = virasoro_element::<Rational>();
    let mut want = LambdaValued::constant(l.d_pow(1));
    want.add_coeff(1, &l, &Rational::from_integer(2.into()));
    report.check("[L_lambda L] = (d + 2 lambda) L for L = -1 + d(xi d_1)/2", w1.bracket(&l, &l) == want);

    match (&a.delta, &a.charge) {
        (Some(d), Some(c)) => {
            let (x, y) = cl_params(d, c);
            report.artifact("dictionary", json!({"a": rat(&x), "b": rat(&y)}));
        }
        (None, None) => {}
        _ => return Err(config_error("--delta and --charge go together")),
    }
    Ok(report)
}
