use std::collections::BTreeMap;

use confkit::scalar::format_rational;
use confkit::Rational;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug)]
pub struct ConfigError {
    pub message: String,
}

pub fn config_error(message: impl ToString) -> ConfigError {
    ConfigError { message: message.to_string() }
}

pub type Outcome = Result<Report, ConfigError>;

#[derive(Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Serialize, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    pub config: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub artifacts: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), config: BTreeMap::new(), checks: Vec::new(), artifacts: BTreeMap::new() }
    }

    pub fn config(&mut self, key: &str, value: impl Into<Value>) {
        self.config.insert(key.into(), value.into());
    }

    pub fn artifact(&mut self, key: &str, value: impl Into<Value>) {
        self.artifacts.insert(key.into(), value.into());
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push(Check { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, witness: None });
    }

    /// Records a check that fails iff a witness is given.
    pub fn check_witness(&mut self, name: impl Into<String>, witness: Option<Value>) {
        let status = if witness.is_none() { Status::Pass } else { Status::Fail };
        self.checks.push(Check { name: name.into(), status, witness });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// Canonical JSON: keys sorted, two-space indent, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report is serializable");
        let mut s = serde_json::to_string_pretty(&value).expect("value is serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for (k, v) in &self.config {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{status} {}", c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness: {w}"));
            }
            out.push('\n');
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        out.push_str(&format!("{} checks, {failed} failed\n", self.checks.len()));
        out
    }
}

pub fn rat(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rats(qs: &[Rational]) -> Value {
    Value::Array(qs.iter().map(rat).collect())
}
