//! Verification reports shared by every identity checker.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub relation: String,
    /// Polynomial degree, basis index or slice label the entry refers to.
    pub degree: usize,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct VerificationReport {
    pub name: String,
    pub entries: Vec<CheckEntry>,
    /// Free-form findings, e.g. which reading of an ambiguous relation holds.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        VerificationReport { name: name.into(), ..Default::default() }
    }

    pub fn push(
        &mut self,
        relation: impl Into<String>,
        degree: usize,
        lhs: impl ToString,
        rhs: impl ToString,
        pass: bool,
    ) {
        self.entries.push(CheckEntry {
            relation: relation.into(),
            degree,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
        });
        self.summary.total += 1;
        if pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
    }

    /// Records an exact equality check.
    pub fn check_eq<T: PartialEq + ToString>(
        &mut self,
        relation: impl Into<String>,
        degree: usize,
        lhs: &T,
        rhs: &T,
    ) -> bool {
        let pass = lhs == rhs;
        self.push(relation, degree, lhs.to_string(), rhs.to_string(), pass);
        pass
    }

    /// Records a float residual check `residual <= tol`.
    pub fn check_tol(&mut self, relation: impl Into<String>, degree: usize, residual: f64, tol: f64) -> bool {
        let pass = residual.is_finite() && residual <= tol;
        self.push(relation, degree, format!("residual {residual:.3e}"), format!("tol {tol:.0e}"), pass);
        pass
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    /// Folds another report into this one, prefixing its relation names.
    pub fn absorb(&mut self, other: VerificationReport) {
        for e in other.entries {
            let relation = if other.name.is_empty() {
                e.relation
            } else {
                format!("{}: {}", other.name, e.relation)
            };
            self.push(relation, e.degree, e.lhs, e.rhs, e.pass);
        }
        for n in other.notes {
            if other.name.is_empty() {
                self.notes.push(n);
            } else {
                self.notes.push(format!("{}: {}", other.name, n));
            }
        }
    }

    /// True when at least one entry with this relation name exists and all of them pass.
    pub fn relation_holds(&self, relation: &str) -> bool {
        let mut seen = false;
        for e in self.entries.iter().filter(|e| e.relation == relation) {
            seen = true;
            if !e.pass {
                return false;
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_serialization() {
        let mut r = VerificationReport::new("demo");
        r.check_eq("a", 0, &1, &1);
        r.check_eq("b", 1, &1, &2);
        r.check_tol("c", 2, 1e-12, 1e-9);
        assert_eq!(r.summary, Summary { total: 3, passed: 2, failed: 1 });
        assert!(!r.passed());
        assert!(r.relation_holds("a"));
        assert!(!r.relation_holds("b"));
        assert!(!r.relation_holds("missing"));
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["entries"][1]["lhs"], "1");
        assert_eq!(v["entries"][1]["pass"], false);
        assert_eq!(v["summary"]["failed"], 1);
    }

    #[test]
    fn nan_residual_fails() {
        let mut r = VerificationReport::new("x");
        assert!(!r.check_tol("nan", 0, f64::NAN, 1.0));
    }
}
