//! Rule manifest and the elimination rules for homotopy signatures.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::sullivan::HomotopySignature;

const MANIFEST: &str = include_str!("../data/rules.toml");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub id: String,
    pub statement: String,
    pub citation: String,
    pub provenance: String,
}

#[derive(Deserialize)]
struct ManifestFile {
    version: u32,
    rule: Vec<Rule>,
}

pub struct Manifest {
    pub version: u32,
    rules: BTreeMap<String, Rule>,
}

impl Manifest {
    pub fn get(&self, id: &str) -> Option<&Rule> {
        self.rules.get(id)
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.values()
    }
}

pub fn manifest() -> &'static Manifest {
    static M: OnceLock<Manifest> = OnceLock::new();
    M.get_or_init(|| {
        let file: ManifestFile = toml::from_str(MANIFEST).expect("shipped rule manifest parses");
        let rules = file.rule.into_iter().map(|r| (r.id.clone(), r)).collect();
        Manifest { version: file.version, rules }
    })
}

/// One application of a rule, as recorded in evidence trails.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RuleHit {
    pub rule: String,
    pub citation: String,
    pub provenance: String,
    pub detail: String,
}

impl RuleHit {
    /// Panics on an id missing from the manifest; ids are compile-time constants.
    pub fn new(id: &str, detail: impl Into<String>) -> Self {
        let r = manifest().get(id).unwrap_or_else(|| panic!("rule `{id}` missing from manifest"));
        RuleHit {
            rule: r.id.clone(),
            citation: r.citation.clone(),
            provenance: r.provenance.clone(),
            detail: detail.into(),
        }
    }
}

/// Refined-stage eliminations, in the order of the classification argument.
/// Only dimension 7 has rules; dimensions 2–4 are already exact after the relations.
pub fn signature_elimination(sig: &HomotopySignature, n: u32) -> Option<RuleHit> {
    if n != 7 {
        return None;
    }
    if let Some(&e) = sig.even.iter().find(|&&e| e != 2 && e != 4) {
        return Some(RuleHit::new("dim7.even-degrees", format!("even generator of degree {e}")));
    }
    match sig.even.as_slice() {
        [_, _, _] => Some(RuleHit::new("dim7.three-even", format!("{sig}"))),
        [a, b] if *a == 4 || *b == 4 => Some(RuleHit::new(
            "dim7.two-even-degree-four",
            format!("{sig}: a degree-4 generator needs an odd generator of degree 4k-1 >= 7, exceeding dimension 7"),
        )),
        [2, 2] => {
            if sig.odd == [3, 3, 3] {
                None
            } else {
                Some(RuleHit::new("dim7.two-even-degree-two", format!("{sig}")))
            }
        }
        [y] => {
            let ok = sig.odd.iter().any(|&o| (o + 1) % y == 0 && (o + 1) / y >= 2);
            if ok {
                None
            } else {
                Some(RuleHit::new(
                    "dim7.single-even-power",
                    format!("{sig}: no odd degree of the form k*{y} - 1"),
                ))
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_loads() {
        let m = manifest();
        assert!(m.get("biq.spin8-g2").is_some());
        for r in m.rules() {
            assert!(
                ["derived", "proof-specific", "external-literature"].contains(&r.provenance.as_str()),
                "{}",
                r.id
            );
        }
    }
}
