//! Deterministic plain-text reports: a header, sorted `key: value` lines,
//! then one section per law.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use coarse_free::oracle::LawReport;

pub const HEADER: &str = "# coarse-free report";

#[derive(Clone, Debug, Default)]
pub struct Report {
    fields: BTreeMap<String, String>,
    laws: Vec<LawReport>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.set("command", command);
        r
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.fields.insert(key.to_string(), value.to_string());
    }

    pub fn law(&mut self, law: LawReport) {
        self.laws.push(law);
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawReport::passed)
    }

    pub fn emit(&self) -> String {
        let mut fields = self.fields.clone();
        fields.insert("laws".into(), self.laws.len().to_string());
        let failed = self.laws.iter().filter(|l| !l.passed()).count();
        if !self.laws.is_empty() {
            fields.insert("failed".into(), failed.to_string());
        }
        let mut out = format!("{HEADER}\n");
        for (k, v) in &fields {
            let _ = writeln!(out, "{k}: {}", one_line(v));
        }
        for law in &self.laws {
            let mut section: BTreeMap<String, String> = law.details.clone();
            section.insert("cases".into(), law.cases.to_string());
            section.insert("universe".into(), law.universe_size.to_string());
            section.insert("verdict".into(), law.verdict().into());
            if let Some(c) = &law.counterexample {
                section.insert("counterexample".into(), c.clone());
            }
            let _ = writeln!(out, "\n[law {}]", law.law);
            for (k, v) in section {
                let _ = writeln!(out, "{k}: {}", one_line(&v));
            }
        }
        out
    }
}

fn one_line(v: &str) -> String {
    v.replace('\n', " | ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use coarse_free::relations::Relation;

    #[test]
    fn empty_report() {
        assert_eq!(Report::new("axioms").emit(), format!("{HEADER}\ncommand: axioms\nlaws: 0\n"));
    }

    #[test]
    fn sections_are_sorted_and_stable() {
        let d = Relation::diagonal(3);
        let pass = coarse_free::oracle::verify_distance_axioms(&d).unwrap();
        let mut e = Relation::empty(2);
        e.insert(0, 1);
        e.insert(1, 0);
        let fail = coarse_free::oracle::verify_distance_axioms(&e).unwrap();
        let mut r = Report::new("axioms");
        r.set("space", "x.space");
        r.law(pass.clone());
        r.law(fail.clone());
        let text = r.emit();
        assert!(text.contains("\n[law distance axioms]\ncases: 108\nuniverse: 3\nverdict: pass\n"));
        assert!(text.contains("counterexample: zero"));
        assert!(text.contains("verdict: fail"));
        assert!(text.starts_with(&format!("{HEADER}\ncommand: axioms\nfailed: 1\nlaws: 2\nspace: x.space\n")));
        let mut again = Report::new("axioms");
        again.set("space", "x.space");
        again.law(pass);
        again.law(fail);
        assert_eq!(again.emit(), text);
        assert!(!again.passed());
    }
}
