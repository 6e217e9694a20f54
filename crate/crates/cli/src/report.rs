use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use confext::cdmod::ModElement;
use confext::report::CheckReport;

use crate::session::SessionFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Undecided => 3,
        }
    }
}

/// One violated identity on one basis tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Detail {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    pub identity: String,
    pub tuple: Vec<usize>,
    /// LHS − RHS, one polynomial per target coordinate.
    pub difference: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<Detail>,
    /// Witnesses and constructed objects, in session-file form.
    #[serde(default, skip_serializing_if = "SessionFile::is_empty")]
    pub witnesses: SessionFile,
    /// The degree bound behind an undecided verdict or a bounded search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub quantities: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, verdict: Verdict) -> Self {
        Report {
            command: command.to_string(),
            verdict,
            details: Vec::new(),
            witnesses: SessionFile::default(),
            bound: None,
            quantities: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// Pass if `rep` passed, otherwise fail with its failures as details.
    pub fn from_check(command: &str, rep: &CheckReport, object: Option<&str>) -> Self {
        let mut r = Report::new(command, if rep.passed() { Verdict::Pass } else { Verdict::Fail });
        r.add_failures(rep, object);
        r
    }

    pub fn add_failures(&mut self, rep: &CheckReport, object: Option<&str>) {
        for f in &rep.failures {
            self.details.push(detail(object, &f.identity, &f.tuple, &f.difference));
        }
    }

    pub fn undecided(command: &str, bound: u32) -> Self {
        let mut r = Report::new(command, Verdict::Undecided);
        r.bound = Some(bound);
        r
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}: {}", self.command, verdict_word(self.verdict));
        if let Some(b) = self.bound {
            let _ = writeln!(s, "  bound: ∂-degree {b}");
        }
        for d in &self.details {
            let obj = d.object.as_deref().map(|o| format!("{o}: ")).unwrap_or_default();
            let _ = writeln!(s, "  {obj}{} at {:?}: [{}]", d.identity, d.tuple, d.difference.join(", "));
        }
        for (k, v) in &self.quantities {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for n in &self.notes {
            let _ = writeln!(s, "  {n}");
        }
        if !self.witnesses.is_empty() {
            let w = serde_json::to_string_pretty(&self.witnesses).expect("witnesses serialize");
            let _ = writeln!(s, "  witnesses:");
            for line in w.lines() {
                let _ = writeln!(s, "    {line}");
            }
        }
        s
    }
}

pub fn detail(object: Option<&str>, identity: &str, tuple: &[usize], v: &ModElement) -> Detail {
    Detail {
        object: object.map(str::to_string),
        identity: identity.to_string(),
        tuple: tuple.to_vec(),
        difference: v.coeffs().iter().map(|p| p.to_string()).collect(),
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Undecided => "undecided",
    }
}
