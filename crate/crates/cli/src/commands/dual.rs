use std::sync::Arc;

use clap::{Args, ValueEnum};
use confkit::conformal::{build_w, ConformalModule};
use confkit::repn::{build_m_ab, build_standard, build_submodule_n, conformal_dual, double_dual_matches, tens, virasoro_d};
use confkit::scalar::rat as q;
use confkit::Rational;
use serde_json::json;

use crate::report::{config_error, rat, Outcome, Report};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Demo {
    All,
    /// The Virasoro map `d(m) = ∂n` and its non-surjective transpose.
    Virasoro,
    /// Double dual of Tens of the standard module.
    Standard,
    /// Double dual of the W_1-module M(a, b).
    Mab,
    /// Transposes of the inclusions N ⊂ M(0, b).
    Transpose,
}

#[derive(Args, Debug)]
pub struct DualArgs {
    #[arg(long, value_enum, default_value_t = Demo::All)]
    demo: Demo,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_parser = crate::rational, allow_hyphen_values = true, default_value = "1/2")]
    a: Rational,
    #[arg(long, value_parser = crate::rational, allow_hyphen_values = true, default_value = "1/3")]
    b: Rational,
}

fn double_dual(report: &mut Report, label: &str, m: &ConformalModule<Rational>) {
    let dual_ok = conformal_dual(m).check_m2().is_empty();
    let signed = double_dual_matches(m, true);
    let unsigned = double_dual_matches(m, false);
    report.artifact(&format!("{label}: unsigned identification matches"), unsigned);
    report.check(format!("{label}: dual satisfies the module axioms"), dual_ok);
    report.check(format!("{label}: M** = M under m_i -> (-1)^p(m_i) m_i**"), signed);
}

pub fn run(a: &DualArgs) -> Outcome {
    if !(1..=3).contains(&a.n) {
        return Err(config_error(format!("n = {} outside 1..=3", a.n)));
    }
    let mut report = Report::new("dual");
    report.config("demo", format!("{:?}", a.demo).to_lowercase());
    report.config("n", a.n);
    report.config("a", rat(&a.a));
    report.config("b", rat(&a.b));
    let all = a.demo == Demo::All;
    if all || a.demo == Demo::Virasoro {
        let d = virasoro_d::<Rational>();
        let t = d.transpose();
        let coker = t.cokernel();
        report.artifact(
            "virasoro coker(d*)",
            json!({
                "torsion_degrees": coker.torsion().iter().map(|p| p.degree()).collect::<Vec<_>>(),
                "free_rank": coker.cokernel_free_rank(),
            }),
        );
        report.check("virasoro: d is a morphism", d.is_morphism());
        report.check("virasoro: d* is a morphism", t.is_morphism());
        report.check("virasoro: coker(d*) != 0", !t.is_surjective());
    }
    if all || a.demo == Demo::Standard {
        let w = Arc::new(build_w::<Rational>(a.n));
        let m = tens(&build_standard(a.n), &w).map_err(config_error)?;
        double_dual(&mut report, &format!("Tens(C^(1|{}))", a.n), &m);
    }
    if all || a.demo == Demo::Mab {
        let m = build_m_ab(&a.a, &a.b);
        double_dual(&mut report, m.name(), &m);
    }
    if all || a.demo == Demo::Transpose {
        for b in [q(-1, 1), q(0, 1), q(1, 2), q(1, 1)] {
            let inc = build_submodule_n(&b).map_err(config_error)?;
            let free = inc.is_injective() && inc.cokernel().torsion().is_empty();
            report.check(format!("N in M(0,{b}): injective with free cokernel"), free);
            report.check(format!("N in M(0,{b}): transpose is surjective"), inc.transpose().is_surjective());
        }
    }
    Ok(report)
}
