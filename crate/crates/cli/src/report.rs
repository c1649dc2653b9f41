use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// Short statement of the mathematical claim being checked.
    pub anchor: String,
    pub status: Status,
    pub witness: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: &str, passed: bool, witness: Value) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.to_string(),
            status: if passed { Status::Pass } else { Status::Fail },
            witness,
        }
    }
}

/// One report per invocation. Keys are emitted sorted and nothing
/// time-dependent is recorded, so equal inputs give byte-identical JSON.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl ReportDocument {
    pub fn new(subcommand: &str) -> Self {
        let mut command = BTreeMap::new();
        command.insert("subcommand".to_string(), Value::from(subcommand));
        ReportDocument {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            checks: Vec::new(),
            passed: true,
        }
    }

    pub fn arg(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.command.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.status == Status::Pass;
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn to_json(&self) -> String {
        // round-trip through Value: its map type is ordered
        let value = serde_json::to_value(self).expect("report is serializable");
        let mut s = serde_json::to_string_pretty(&value).expect("value is serializable");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{tag} {}\n", c.name));
        }
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}
