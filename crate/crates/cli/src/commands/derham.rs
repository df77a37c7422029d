use clap::Args;
use confkit::derham::{
    cartan_failures, d_tilde_squared_failures, exactness_report, homotopy_failures, ContractionSigns, FieldRule,
    Form, FormBasis, FormMono, LaurentComplex, Side,
};
use confkit::poly::Poly;
use confkit::Rational;
use serde_json::json;

use crate::report::{config_error, Outcome, Report};

#[derive(Args, Debug)]
pub struct DerhamArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Forms of degree below `jmax` are kept.
    #[arg(long, default_value_t = 4)]
    jmax: u32,
    /// t-power window `T` of the Laurent complexes.
    #[arg(long, default_value_t = 4)]
    window: i64,
}

fn all_signs() -> Vec<ContractionSigns> {
    let b = [false, true];
    let mut out = Vec::new();
    for fa in b {
        for fb in b {
            for ga in b {
                for gb in b {
                    out.push(ContractionSigns { field: (fa, fb), function: (ga, gb) });
                }
            }
        }
    }
    out
}

pub fn run(a: &DerhamArgs) -> Outcome {
    if !(1..=3).contains(&a.n) {
        return Err(config_error(format!("n = {} outside 1..=3", a.n)));
    }
    if !(2..=5).contains(&a.jmax) {
        return Err(config_error(format!("jmax = {} outside 2..=5", a.jmax)));
    }
    if !(2..=8).contains(&a.window) {
        return Err(config_error(format!("window = {} outside 2..=8", a.window)));
    }
    let mut report = Report::new("derham");
    report.config("n", a.n);
    report.config("jmax", a.jmax);
    report.config("window", a.window);
    let basis = FormBasis::new(a.n, a.jmax);
    report.artifact("basis_size", basis.len());

    let sq = d_tilde_squared_failures::<Rational>(&basis).map_err(config_error)?;
    report.check_witness("d~ squares to zero", sq.first().map(|m| json!(m.to_string())));

    let cartan_basis = FormBasis::new(a.n, a.jmax.min(3));
    let mut passing = Vec::new();
    for s in all_signs() {
        if cartan_failures::<Rational>(&cartan_basis, FieldRule::Full, s).map_err(config_error)?.is_empty() {
            passing.push(s);
        }
    }
    report.artifact("contraction_sign_rules_passing", passing.len());
    report.check("Cartan identity pins the contraction signs", passing == vec![ContractionSigns::CARTAN]);
    let cartan = cartan_failures::<Rational>(&basis, FieldRule::Full, ContractionSigns::CARTAN).map_err(config_error)?;
    report.check_witness(
        "Cartan identity on all generators",
        cartan.first().map(|(g, m)| json!({"generator": g, "form": m.to_string()})),
    );

    let hom = homotopy_failures::<Rational>(&basis).map_err(config_error)?;
    report.check_witness("K d~ + d~ K = 1 - eps", hom.first().map(|m| json!(m.to_string())));

    let ex = exactness_report::<Rational>(a.n, a.jmax).map_err(config_error)?;
    let mut degrees = Vec::new();
    for d in &ex.degrees {
        degrees.push(json!({
            "j": d.j,
            "rank": d.rank,
            "kernel_rank": d.kernel_rank,
            "image_rank": d.image_rank,
            "torsion_degrees": d.torsion.iter().map(|p| p.degree()).collect::<Vec<_>>(),
            "exact": d.exact,
        }));
    }
    report.artifact("exactness", degrees);
    report.check("no kernel in degree 0", ex.degrees[0].kernel_rank == 0);
    let d1 = &ex.degrees[1];
    report.check(
        "ker/im in degree 1 is C[d]/(d), generated by dt",
        d1.kernel_rank == d1.image_rank && d1.torsion == vec![Poly::d()] && ex.dt_closed && !ex.dt_exact && ex.d_dt_exact,
    );
    for d in ex.degrees.iter().skip(2) {
        report.check(format!("exact in degree {}", d.j), d.exact);
    }

    let n = a.n;
    let minus = LaurentComplex::new(n, Side::Minus, a.window, 2);
    let h0 = minus.cohomology::<Rational>(0);
    let h1 = minus.cohomology::<Rational>(1);
    let tdt = Form::<Rational>::mono(FormMono::new(-1, 0, vec![0; n], true));
    let plus = LaurentComplex::new(n, Side::Plus, a.window, 3);
    let hp: Vec<usize> = (0..3).map(|k| plus.cohomology::<Rational>(k).quotient_dim()).collect();
    report.artifact(
        "laurent",
        json!({
            "minus": {"h0_kernel": h0.kernel_dim, "h1": h1.quotient_dim(), "h1_flagged": h1.flagged},
            "plus": hp,
        }),
    );
    report.check("ker d = 0 on Omega^0_-", h0.kernel_dim == 0);
    report.check("H^1 of Omega_- is spanned by t^-1 dt", h1.quotient_dim() == 1 && minus.kernel_is_image_plus(1, &tdt));
    report.check("Omega_+ has only the constants", hp == vec![1, 0, 0]);
    Ok(report)
}
