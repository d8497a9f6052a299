//! Named identity checks with reproducible witnesses.

use serde::Serialize;

use crate::bundle::{DerivationDE, JetSection, SectionE, VectorField};
use crate::poly::{Poly, PolyMatrix};

/// Something whose vanishing is being asserted.
pub trait Defect {
    /// Nonzero components with a 1-based label each.
    fn nonzero_components(&self) -> Vec<(String, Poly)>;

    fn is_zero_defect(&self) -> bool {
        self.nonzero_components().is_empty()
    }
}

impl Defect for Poly {
    fn nonzero_components(&self) -> Vec<(String, Poly)> {
        if self.is_zero() {
            vec![]
        } else {
            vec![(String::new(), self.clone())]
        }
    }
}

fn labeled<'a>(prefix: &str, items: impl IntoIterator<Item = &'a Poly>) -> Vec<(String, Poly)> {
    items
        .into_iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(i, p)| (format!("{prefix}[{}]", i + 1), p.clone()))
        .collect()
}

fn labeled_matrix(prefix: &str, m: &PolyMatrix) -> Vec<(String, Poly)> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let p = m.get(i, j);
            if !p.is_zero() {
                out.push((format!("{prefix}[{}][{}]", i + 1, j + 1), p.clone()));
            }
        }
    }
    out
}

impl Defect for SectionE {
    fn nonzero_components(&self) -> Vec<(String, Poly)> {
        labeled("e", self.components())
    }
}

impl Defect for VectorField {
    fn nonzero_components(&self) -> Vec<(String, Poly)> {
        labeled("d", self.components())
    }
}

impl Defect for PolyMatrix {
    fn nonzero_components(&self) -> Vec<(String, Poly)> {
        labeled_matrix("", self)
    }
}

impl Defect for DerivationDE {
    fn nonzero_components(&self) -> Vec<(String, Poly)> {
        let mut out = labeled_matrix("endo", &self.endo);
        out.extend(labeled("base", self.base.components()));
        out
    }
}

impl Defect for JetSection {
    fn nonzero_components(&self) -> Vec<(String, Poly)> {
        let mut out = labeled_matrix("hom", &self.hom);
        out.extend(labeled("val", self.val.components()));
        out
    }
}

impl<D: Defect> Defect for [D] {
    fn nonzero_components(&self) -> Vec<(String, Poly)> {
        self.iter()
            .enumerate()
            .flat_map(|(i, d)| {
                d.nonzero_components()
                    .into_iter()
                    .map(move |(l, p)| (format!("#{}{l}", i + 1), p))
            })
            .collect()
    }
}

/// The inputs on which a check first failed, with the nonzero defect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub sections: String,
    pub components: Vec<(String, Poly)>,
}

impl Witness {
    pub fn message(sections: impl Into<String>) -> Self {
        Witness {
            sections: sections.into(),
            components: Vec::new(),
        }
    }

    /// Canonical rendering of the defect with the patch's coordinate names.
    pub fn render_defect(&self, names: &[String]) -> String {
        self.components
            .iter()
            .map(|(label, p)| {
                if label.is_empty() {
                    p.to_string_with(names)
                } else {
                    format!("{label} = {}", p.to_string_with(names))
                }
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub tag: String,
    pub pass: bool,
    pub evaluated: usize,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn new(name: impl Into<String>, tag: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            tag: tag.into(),
            pass: true,
            evaluated: 0,
            witness: None,
        }
    }

    /// Records one evaluation of the identity; the first nonzero defect
    /// becomes the witness.
    pub fn observe<D: Defect + ?Sized>(&mut self, defect: &D, sections: impl FnOnce() -> String) -> bool {
        self.evaluated += 1;
        let components = defect.nonzero_components();
        if components.is_empty() {
            return true;
        }
        if self.pass {
            self.pass = false;
            self.witness = Some(Witness {
                sections: sections(),
                components,
            });
        }
        false
    }

    /// Records a failure that has no polynomial defect.
    pub fn fail(&mut self, sections: impl Into<String>) {
        self.evaluated += 1;
        if self.pass {
            self.pass = false;
            self.witness = Some(Witness::message(sections));
        }
    }

    pub fn record(&mut self, ok: bool, sections: impl FnOnce() -> String) {
        if ok {
            self.evaluated += 1;
        } else {
            self.fail(sections());
        }
    }

    pub fn with_status(mut self, ok: bool, sections: impl FnOnce() -> String) -> Self {
        self.record(ok, sections);
        self
    }
}

/// An ordered list of checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckSet {
    checks: Vec<Check>,
}

impl CheckSet {
    pub fn new() -> Self {
        CheckSet::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: CheckSet) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> Option<bool> {
        self.get(name).map(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter()
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn into_vec(self) -> Vec<Check> {
        self.checks
    }
}

impl FromIterator<Check> for CheckSet {
    fn from_iter<T: IntoIterator<Item = Check>>(iter: T) -> Self {
        CheckSet {
            checks: iter.into_iter().collect(),
        }
    }
}

/// JSON form of a witness.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct WitnessRecord {
    pub sections: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub defect: String,
}

/// JSON form of a check.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub tag: String,
    pub pass: bool,
    pub evaluated: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
}

impl CheckRecord {
    pub fn from_check(check: &Check, names: &[String]) -> Self {
        CheckRecord {
            name: check.name.clone(),
            tag: check.tag.clone(),
            pass: check.pass,
            evaluated: check.evaluated,
            witness: check.witness.as_ref().map(|w| WitnessRecord {
                sections: w.sections.clone(),
                defect: w.render_defect(names),
            }),
        }
    }
}

/// The verification report printed by the command-line tool.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input_digest: String,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Report {
    /// Checks are sorted by name; the verdict is pass iff every check passes
    /// and no refusal message was attached.
    pub fn new(command: &str, input_digest: String, checks: &CheckSet, names: &[String]) -> Self {
        let mut records: Vec<CheckRecord> = checks.iter().map(|c| CheckRecord::from_check(c, names)).collect();
        records.sort_by(|a, b| a.name.cmp(&b.name));
        let verdict = if records.iter().all(|c| c.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Report {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input_digest,
            checks: records,
            result: None,
            message: None,
            verdict,
        }
    }

    pub fn refuse(mut self, message: impl Into<String>) -> Self {
        self.message = Some(message.into());
        self.verdict = Verdict::Fail;
        self
    }

    pub fn render_pretty(&self) -> String {
        let mut out = format!(
            "{} {}: {}\ninput sha256 {}\n",
            self.tool, self.version, self.command, self.input_digest
        );
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {:<34} ({}, {} evaluated)\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.tag,
                c.evaluated
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("         at {}\n", w.sections));
                if !w.defect.is_empty() {
                    out.push_str(&format!("         defect {}\n", w.defect));
                }
            }
        }
        if let Some(m) = &self.message {
            out.push_str(&format!("  note: {m}\n"));
        }
        if let Some(r) = &self.result {
            out.push_str(&format!(
                "  result: {}\n",
                serde_json::to_string_pretty(r).unwrap_or_default().replace('\n', "\n  ")
            ));
        }
        out.push_str(&format!(
            "verdict: {}\n",
            match self.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
            }
        ));
        out
    }
}
