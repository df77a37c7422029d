use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use confkit::conformal::build_w;
use confkit::repn::{build_bar_forms, build_dual_rep, build_forms_const, build_standard, tens, GlRep, GlRepJson};
use confkit::singular::{solve, Ansatz, GeneratorSet, SingularReport};
use confkit::Rational;
use serde_json::{json, Value};

use crate::expected;
use crate::report::{config_error, rat, rats, ConfigError, Outcome, Report};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    #[value(name = "W")]
    W,
    #[value(name = "S")]
    S,
    /// The derived algebra of the divergence-free fields.
    #[value(name = "Sprime")]
    Sprime,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Theta,
    Forms,
    Barforms,
    Standard,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long, value_enum)]
    algebra: SetKind,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_enum, required_unless_present = "rep", conflicts_with = "rep")]
    family: Option<Family>,
    /// Form degree, `k` or `lo..hi` (inclusive).
    #[arg(long, default_value = "0")]
    k: String,
    /// A gl(1|n)-module in JSON form.
    #[arg(long)]
    rep: Option<PathBuf>,
    /// Largest power of ∂ in the ansatz.
    #[arg(long, default_value_t = 2)]
    dmax: u32,
    /// Twist ∂ ↦ ∂ + α.
    #[arg(long, value_parser = crate::rational, allow_hyphen_values = true, default_value = "0")]
    alpha: Rational,
}

fn k_range(s: &str) -> Result<Vec<u32>, ConfigError> {
    let bad = || config_error(format!("bad --k {s:?}: expected k or lo..hi"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let k = s.trim().parse().map_err(|_| bad())?;
            (k, k)
        }
    };
    if lo > hi || hi > 8 {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn family_rep(f: Family, k: u32, n: usize) -> GlRep<Rational> {
    match f {
        Family::Theta => build_dual_rep(&build_forms_const(k, n)),
        Family::Forms => build_forms_const(k, n),
        Family::Barforms => build_bar_forms(k, n),
        Family::Standard => build_standard(n),
    }
}

fn load_rep(path: &PathBuf) -> Result<GlRep<Rational>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
    let j: GlRepJson = serde_json::from_str(&text).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
    GlRep::from_json(&j).map_err(|e| config_error(format!("{}: {e}", path.display())))
}

fn report_json(r: &SingularReport<Rational>, names: impl Fn(usize) -> String) -> Value {
    let vectors: Vec<Value> = r
        .vectors
        .iter()
        .map(|v| {
            let coords: Vec<Value> = v.coords.terms().map(|(k, id, c)| json!([k, names(id), rat(c)])).collect();
            json!({
                "tag": v.tag,
                "weight": rats(&r.reported_weight(&v.weight)),
                "d_degree": v.d_degree,
                "coords": coords,
            })
        })
        .collect();
    json!({
        "conditions": r.conditions,
        "unknowns": r.unknowns,
        "equations": r.equations,
        "rank": r.rank,
        "trivial": r.trivial,
        "vectors": vectors,
    })
}

pub fn run(a: &ClassifyArgs) -> Outcome {
    if a.n == 0 || a.n > 3 {
        return Err(config_error(format!("n = {} outside 1..=3", a.n)));
    }
    if a.dmax > 4 {
        return Err(config_error("--dmax is limited to 4"));
    }
    let set = match a.algebra {
        SetKind::W => GeneratorSet::W,
        SetKind::S => GeneratorSet::S,
        SetKind::Sprime => GeneratorSet::SPrime,
    };
    let algebra_name = format!("{:?}", a.algebra);
    let mut cases: Vec<(String, Option<u32>, GlRep<Rational>)> = Vec::new();
    match (&a.rep, a.family) {
        (Some(path), _) => {
            let rep = load_rep(path)?;
            if rep.n() != a.n {
                return Err(config_error(format!("representation has n = {}, expected {}", rep.n(), a.n)));
            }
            cases.push(("user".into(), None, rep));
        }
        (None, Some(Family::Standard)) => cases.push(("standard".into(), None, build_standard(a.n))),
        (None, Some(f)) => {
            for k in k_range(&a.k)? {
                cases.push((format!("{f:?}").to_lowercase(), Some(k), family_rep(f, k, a.n)));
            }
        }
        (None, None) => return Err(config_error("one of --family or --rep is required")),
    }

    let mut report = Report::new("classify");
    report.config("algebra", algebra_name.clone());
    report.config("n", a.n);
    report.config("family", a.family.map(|f| format!("{f:?}").to_lowercase()));
    report.config("k", a.k.clone());
    report.config("rep", a.rep.as_ref().map(|p| p.display().to_string()));
    report.config("dmax", a.dmax);
    report.config("alpha", rat(&a.alpha));

    let alg = Arc::new(build_w::<Rational>(a.n));
    let mut results = Vec::new();
    let mut verdicts = Vec::new();
    for (family, k, rep) in cases {
        let label = match k {
            Some(k) => format!("{family} k={k}"),
            None => family.clone(),
        };
        let m = tens(&rep, &alg).map_err(config_error)?.twist(&a.alpha);
        let r = solve(&m, rep.dim(), set, &Ansatz::twisted(a.dmax, a.alpha.clone())).map_err(config_error)?;
        let weights: Vec<Vec<Rational>> = r.vectors.iter().map(|v| r.reported_weight(&v.weight)).collect();
        let mut entry = report_json(&r, |id| m.basis().name(id).to_string());
        let expected = if family == "user" { None } else { expected::lookup(&algebra_name, &family, a.n, k) };
        if let Some(e) = expected {
            let ok = e.matches(&weights);
            verdicts.push(ok);
            entry["expected"] = json!({"count": e.count, "weights": e.weights});
            let witness = (!ok).then(|| json!({"computed": weights.iter().map(|w| rats(w)).collect::<Vec<_>>()}));
            report.check_witness(format!("{label}: inventory matches the expected table"), witness);
        }
        entry["label"] = json!(label);
        results.push(entry);
    }
    report.artifact("reports", results);
    let matches = if verdicts.is_empty() { Value::Null } else { Value::Bool(verdicts.iter().all(|&v| v)) };
    report.artifact("matches_expected", matches);
    Ok(report)
}
