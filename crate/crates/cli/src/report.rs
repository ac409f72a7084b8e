//! Verdict reports: one per invocation, renderable as text or as a
//! single JSON object. Identical inputs produce byte-identical output
//! except for the timing field.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub context: String,
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub verdicts: Vec<Verdict>,
    pub witnesses: Vec<Witness>,
    pub inconclusive: bool,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report {
            command,
            verdicts: Vec::new(),
            witnesses: Vec::new(),
            inconclusive: false,
            elapsed_ms: 0,
        }
    }

    pub fn verdict(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        self.verdicts.push(Verdict { name: name.to_string(), status, detail: detail.into() });
    }

    pub fn witness(&mut self, context: impl Into<String>, indices: Vec<usize>, labels: Vec<String>) {
        self.witnesses.push(Witness { context: context.into(), indices, labels });
    }

    pub fn has_failure(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Fail)
    }

    /// 0 all pass, 1 some verdict failed, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        if self.has_failure() {
            1
        } else if self.inconclusive {
            2
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => serde_json::to_string(self).expect("report serializes"),
            Format::Text => {
                let mut out = String::new();
                out.push_str(&format!("command: {}\n", self.command));
                for v in &self.verdicts {
                    let status = match v.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Info => "INFO",
                    };
                    out.push_str(&format!("verdict {}: {} ({})\n", v.name, status, v.detail));
                }
                for w in &self.witnesses {
                    let idx: Vec<String> = w.indices.iter().map(|i| i.to_string()).collect();
                    out.push_str(&format!(
                        "witness {}: indices [{}] labels [{}]\n",
                        w.context,
                        idx.join(" "),
                        w.labels.join(" ")
                    ));
                }
                out.push_str(&format!("inconclusive: {}\n", self.inconclusive));
                out.push_str(&format!("elapsed_ms: {}\n", self.elapsed_ms));
                out
            }
        }
    }
}
