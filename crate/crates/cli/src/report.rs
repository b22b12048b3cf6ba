//! The report format: a schema header followed by one `key: value` block
//! per task, in manifest order.

use std::fmt::Write;

pub const SCHEMA: &str = "brane-gauge-report v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Ok,
    /// A checked property came out false.
    False,
    /// A shortcut and a direct computation disagreed.
    Finding,
    /// Input or engine failure: bad references, ill-formed maps, caps hit.
    Error,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::False => "false",
            Status::Finding => "finding",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub task: String,
    pub status: Status,
    pub fields: Vec<(String, String)>,
    /// Oracles run and bounds certified.
    pub trail: Vec<String>,
}

impl Report {
    pub fn new(task: impl Into<String>) -> Self {
        Report {
            task: task.into(),
            status: Status::Ok,
            fields: Vec::new(),
            trail: Vec::new(),
        }
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.trail.push(line.into());
    }

    /// Raises the status; a worse status is never downgraded.
    pub fn mark(&mut self, status: Status) {
        self.status = self.status.max(status);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

pub fn render(n: usize, reports: &[Report]) -> String {
    let mut out = String::new();
    writeln!(out, "{}", SCHEMA).unwrap();
    writeln!(out, "ring: P^{}", n).unwrap();
    writeln!(out, "tasks: {}", reports.len()).unwrap();
    for (i, r) in reports.iter().enumerate() {
        writeln!(out).unwrap();
        writeln!(out, "[report {}]", i + 1).unwrap();
        writeln!(out, "task: {}", r.task).unwrap();
        writeln!(out, "status: {}", r.status.as_str()).unwrap();
        for (k, v) in &r.fields {
            writeln!(out, "{}: {}", k, v).unwrap();
        }
        for t in &r.trail {
            writeln!(out, "trail: {}", t).unwrap();
        }
    }
    out
}

/// 0 when every task is ok, 2 on any error, otherwise 1.
pub fn exit_code(reports: &[Report]) -> i32 {
    match reports.iter().map(|r| r.status).max() {
        None | Some(Status::Ok) => 0,
        Some(Status::Error) => 2,
        Some(_) => 1,
    }
}
