use std::sync::OnceLock;

use confkit::scalar::parse_rational;
use confkit::Rational;
use serde::Deserialize;

/// One row of the expected singular-vector inventory.
#[derive(Deserialize, Debug, Clone)]
pub struct Expected {
    pub algebra: String,
    pub family: String,
    pub n: usize,
    pub k: Option<u32>,
    pub count: usize,
    pub weights: Option<Vec<Vec<String>>>,
}

fn table() -> &'static [Expected] {
    static TABLE: OnceLock<Vec<Expected>> = OnceLock::new();
    TABLE.get_or_init(|| {
        serde_json::from_str(include_str!("../data/expected_inventories.json")).expect("embedded table parses")
    })
}

/// The `S` rows also serve the derived algebra.
pub fn lookup(algebra: &str, family: &str, n: usize, k: Option<u32>) -> Option<&'static Expected> {
    let algebra = if algebra == "Sprime" { "S" } else { algebra };
    table().iter().find(|e| e.algebra == algebra && e.family == family && e.n == n && (e.k.is_none() || e.k == k))
}

impl Expected {
    pub fn matches(&self, weights: &[Vec<Rational>]) -> bool {
        if weights.len() != self.count {
            return false;
        }
        let Some(want) = &self.weights else {
            return true;
        };
        let mut want: Vec<Vec<Rational>> = want
            .iter()
            .map(|w| w.iter().map(|x| parse_rational(x).expect("embedded rationals parse")).collect())
            .collect();
        let mut got = weights.to_vec();
        want.sort();
        got.sort();
        want == got
    }
}
