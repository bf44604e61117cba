//! Pass/fail verdicts shared by every checker, and the canonical JSON form
//! the CLI writes.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    /// Number of sampled instances the law was evaluated on.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn pass(name: impl Into<String>, cases: usize) -> Self {
        Verdict { name: name.into(), passed: true, cases, witness: None, note: None }
    }

    pub fn fail(name: impl Into<String>, cases: usize, witness: Vec<String>) -> Self {
        Verdict { name: name.into(), passed: false, cases, witness: Some(witness), note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Accumulates instances of one law, keeping the first counterexample.
#[derive(Debug, Clone)]
pub struct LawCheck {
    name: String,
    cases: usize,
    witness: Option<Vec<String>>,
}

impl LawCheck {
    pub fn new(name: impl Into<String>) -> Self {
        LawCheck { name: name.into(), cases: 0, witness: None }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<String>) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn finish(self) -> Verdict {
        Verdict {
            passed: self.witness.is_none(),
            name: self.name,
            cases: self.cases,
            witness: self.witness,
            note: None,
        }
    }
}

/// A titled list of verdicts, plus optional per-sample certificates.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AxiomReport {
    pub title: String,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<serde_json::Value>,
}

impl AxiomReport {
    pub fn new(title: impl Into<String>) -> Self {
        AxiomReport { title: title.into(), ..Default::default() }
    }

    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }
}

/// Canonical JSON: keys sorted, two-space indentation, trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    // serde_json::Value objects are BTreeMaps, so a round trip sorts keys
    let v = serde_json::to_value(value).expect("report serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("value prints");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn law_check_keeps_first_witness() {
        let mut c = LawCheck::new("law");
        c.record(true, || vec!["a".into()]);
        c.record(false, || vec!["b".into()]);
        c.record(false, || vec!["c".into()]);
        let v = c.finish();
        assert!(!v.passed);
        assert_eq!(v.cases, 3);
        assert_eq!(v.witness, Some(vec!["b".to_string()]));
    }

    #[test]
    fn canonical_json_sorts_keys() {
        #[derive(Serialize)]
        struct S {
            zeta: u8,
            alpha: u8,
        }
        let s = to_canonical_json(&S { zeta: 1, alpha: 2 });
        assert!(s.find("alpha").unwrap() < s.find("zeta").unwrap());
        assert!(s.ends_with("}\n"));
    }

    #[test]
    fn empty_report_is_canonical() {
        let r = AxiomReport::new("empty");
        assert!(r.all_passed());
        assert_eq!(to_canonical_json(&r), "{\n  \"title\": \"empty\",\n  \"verdicts\": []\n}\n");
    }
}
