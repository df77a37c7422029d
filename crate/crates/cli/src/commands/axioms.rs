use std::sync::Arc;

use clap::{Args, ValueEnum};
use confkit::annihilation::{oracle_match, FunctionSign};
use confkit::conformal::{build_s, build_sb, build_stilde, build_vir, build_w, ConformalAlgebra};
use confkit::{ModuleVector, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::{config_error, rat, Outcome, Report};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    #[value(name = "W")]
    W,
    #[value(name = "Vir")]
    Vir,
    /// `S_n`, or `S_{n,b}` with `--b`.
    #[value(name = "S")]
    S,
    #[value(name = "Stilde")]
    Stilde,
}

#[derive(Args, Debug)]
pub struct AxiomsArgs {
    #[arg(long, value_enum)]
    algebra: AlgebraKind,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Deformation parameter of `S_{n,b}`.
    #[arg(long, value_parser = crate::rational, allow_hyphen_values = true)]
    b: Option<Rational>,
    /// t-power bound `i + j ≤ T` for the annihilation oracle (W, n ≤ 2).
    #[arg(long, default_value_t = 4)]
    truncation: u32,
    /// Number of seeded single-coefficient mutations that must be detected.
    #[arg(long, default_value_t = 3)]
    mutations: usize,
}

fn build(a: &AxiomsArgs) -> Result<Arc<ConformalAlgebra<Rational>>, String> {
    let sub = match (a.algebra, &a.b) {
        (AlgebraKind::W, None) => return Ok(Arc::new(build_w(a.n))),
        (AlgebraKind::Vir, None) => return Ok(Arc::new(build_vir())),
        (AlgebraKind::S, None) => build_s(a.n),
        (AlgebraKind::S, Some(b)) => build_sb(a.n, b),
        (AlgebraKind::Stilde, None) => build_stilde(a.n),
        (_, Some(_)) => return Err("--b only applies to --algebra S".into()),
    };
    sub.map(|s| s.algebra().clone()).map_err(|e| e.to_string())
}

/// Adds 1 to one existing coefficient of a random nonzero table entry.
fn mutate(alg: &ConformalAlgebra<Rational>, rng: &mut ChaCha8Rng) -> (usize, usize, ConformalAlgebra<Rational>) {
    let r = alg.rank();
    loop {
        let (a, b) = (rng.gen_range(0..r), rng.gen_range(0..r));
        let entry = alg.entry(a, b);
        let terms: Vec<(u32, u32, usize)> =
            entry.coeffs().flat_map(|(l, v)| v.terms().map(move |(k, id, _)| (l, k, id)).collect::<Vec<_>>()).collect();
        if terms.is_empty() {
            continue;
        }
        let (l, k, id) = terms[rng.gen_range(0..terms.len())];
        let mut value = entry.clone();
        value.add_coeff(l, &ModuleVector::term(k, id, Rational::from_integer(1.into())), &Rational::from_integer(1.into()));
        return (a, b, alg.with_entry(a, b, value));
    }
}

pub fn run(a: &AxiomsArgs, seed: u64) -> Outcome {
    if a.n > 4 {
        return Err(config_error(format!("n = {} exceeds the supported range 0..=4", a.n)));
    }
    let alg = build(a).map_err(config_error)?;
    let mut report = Report::new("axioms");
    report.config("algebra", format!("{:?}", a.algebra));
    report.config("n", a.n);
    report.config("b", a.b.as_ref().map(rat));
    report.config("truncation", a.truncation);
    report.config("mutations", a.mutations);
    report.config("seed", seed);
    report.artifact("name", alg.name());
    report.artifact("rank", alg.rank());

    let skew = alg.check_skew();
    report.check_witness("skew-symmetry", skew.first().map(|(x, y)| json!({"pair": [x, y], "failures": skew.len()})));
    let jacobi = alg.check_jacobi();
    report.check_witness(
        "jacobi",
        jacobi.first().map(|(x, y, z)| json!({"triple": [x, y, z], "failures": jacobi.len()})),
    );
    if a.algebra == AlgebraKind::W && a.n <= 2 {
        let r = oracle_match(&alg, a.truncation, FunctionSign::Plus).map_err(config_error)?;
        report.artifact(
            "oracle",
            json!({"pairs": r.pairs, "columns_compared": r.columns_compared, "columns_masked": r.columns_masked}),
        );
        report.check_witness(
            "annihilation oracle",
            r.failures.first().map(|(x, i, y, j)| json!({"first": [x, i, y, j], "failures": r.failures.len()})),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut missed = Vec::new();
    for _ in 0..a.mutations {
        let (x, y, bad) = mutate(&alg, &mut rng);
        let bad = Arc::new(bad);
        if bad.check_skew().is_empty() && bad.check_jacobi().is_empty() {
            missed.push(json!([x, y]));
        }
    }
    report.check_witness("mutations detected", (!missed.is_empty()).then(|| json!({"undetected": missed})));
    Ok(report)
}
