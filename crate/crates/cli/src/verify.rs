//! Corpus sweep: engine against table for many `(cm, k)`.

use cmtorsion::cmclass::{self, CmInvariants, CM_VALUES};
use cmtorsion::cubicgrowth::{self, Verdict};
use cmtorsion::{Error, Result};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::document::{DiffDoc, GroupFieldDoc, InvariantsDoc, VerdictDoc, VerifyLine, SCHEMA_VERSION};

/// Which curves to sweep. `k_range: None` means each class's corpus bound.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub cm_list: Vec<u32>,
    pub k_range: Option<(i64, i64)>,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep {
            cm_list: CM_VALUES.to_vec(),
            k_range: None,
        }
    }
}

impl Sweep {
    /// Reduced invariants in the sweep, deduplicated and sorted by `(cm, k)`.
    pub fn invariants(&self) -> Result<Vec<CmInvariants>> {
        let mut out = Vec::new();
        for &cm in &self.cm_list {
            cmclass::class(cm)?;
            let (lo, hi) = match self.k_range {
                Some(r) => r,
                None => {
                    let b = cmclass::corpus_bound(cm);
                    (-b, b)
                }
            };
            if lo > hi {
                return Err(Error::InvalidInput(format!("empty k range {lo},{hi}")));
            }
            for k in lo..=hi {
                if k == 0 {
                    continue;
                }
                let k = cmclass::canonical_k(cm, &BigInt::from(k))?;
                out.push(CmInvariants::new(cm, k)?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub schema_version: String,
    pub kind: String,
    pub lines: Vec<VerifyLine>,
    pub matched: usize,
    pub mismatched: usize,
}

impl VerifyDocument {
    pub fn all_match(&self) -> bool {
        self.mismatched == 0
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            let verdict = match l.verdict {
                VerdictDoc::Match => "MATCH",
                VerdictDoc::Mismatch => "MISMATCH",
            };
            let growths = l
                .growths
                .iter()
                .map(|g| format!("{} over {}", g.group, g.field.sparse))
                .collect::<Vec<_>>();
            s.push_str(&format!(
                "{verdict} (cm = {}, k = {}): {} -> [{}]",
                l.inv.cm,
                l.inv.k,
                l.torsion_q,
                growths.join(", ")
            ));
            if let Some(d) = &l.diff {
                s.push_str(&format!(" diff {}", serde_json::to_string(d).expect("diff serializes")));
            }
            s.push('\n');
        }
        s.push_str(&format!(
            "checked {} curves: {} MATCH, {} MISMATCH\n",
            self.lines.len(),
            self.matched,
            self.mismatched
        ));
        s
    }
}

fn check_one(inv: &CmInvariants) -> VerifyLine {
    let doc = InvariantsDoc::from(inv);
    match cubicgrowth::cross_check(inv) {
        Ok(c) => {
            let (verdict, diff) = match &c.verdict {
                Verdict::Match => (VerdictDoc::Match, None),
                Verdict::Mismatch(d) => (VerdictDoc::Mismatch, Some(DiffDoc::from(d))),
            };
            VerifyLine {
                inv: doc,
                verdict,
                torsion_q: c.report.torsion_q.group.to_string(),
                growths: c
                    .report
                    .growths
                    .iter()
                    .map(|g| GroupFieldDoc {
                        group: g.group.to_string(),
                        field: g.field.defining_poly().into(),
                    })
                    .collect(),
                diff,
            }
        }
        // an engine failure is reported, never silently counted as a match
        Err(e) => VerifyLine {
            inv: doc,
            verdict: VerdictDoc::Mismatch,
            torsion_q: String::new(),
            growths: Vec::new(),
            diff: Some(DiffDoc {
                torsion_q: None,
                missing: Vec::new(),
                unexpected: Vec::new(),
                errors: vec![e.to_string()],
            }),
        },
    }
}

/// Runs the sweep; curves are spread over the current rayon pool, and the
/// lines come back in `(cm, k)` order.
pub fn run(sweep: &Sweep) -> Result<VerifyDocument> {
    let invs = sweep.invariants()?;
    let lines: Vec<VerifyLine> = invs.par_iter().map(check_one).collect();
    let matched = lines.iter().filter(|l| l.verdict == VerdictDoc::Match).count();
    Ok(VerifyDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        kind: "verify".to_string(),
        mismatched: lines.len() - matched,
        matched,
        lines,
    })
}
