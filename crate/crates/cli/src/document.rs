//! JSON documents emitted by the CLI, and their text rendering.
//!
//! Text output is rendered from the same documents as JSON output, so the
//! two modes always carry the same content.

use std::fmt::Write as _;

use cmtorsion::cmclass::CmInvariants;
use cmtorsion::cubicgrowth::{CrossCheck, GrowthDiff, GrowthReport, Verdict};
use cmtorsion::ellcurve::{EllipticCurve, Point, TorsionGroup};
use cmtorsion::exactnum::Rational;
use cmtorsion::numberfield::FieldElem;
use cmtorsion::Poly;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1.0";

/// A polynomial in `x`: coefficients from the constant term up, and the
/// usual sparse rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub dense: Vec<String>,
    pub sparse: String,
}

impl From<&Poly> for PolyDoc {
    fn from(p: &Poly) -> Self {
        PolyDoc {
            dense: p.to_dense_strings(),
            sparse: p.to_sparse_string("x"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDoc {
    pub a: String,
    pub b: String,
    pub equation: String,
}

impl From<&EllipticCurve> for CurveDoc {
    fn from(e: &EllipticCurve) -> Self {
        CurveDoc {
            a: e.a().to_string(),
            b: e.b().to_string(),
            equation: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsDoc {
    pub cm: u32,
    pub k: String,
}

impl From<&CmInvariants> for InvariantsDoc {
    fn from(inv: &CmInvariants) -> Self {
        InvariantsDoc {
            cm: inv.cm,
            k: inv.k.to_string(),
        }
    }
}

/// The command-line input, echoed back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum InputDoc {
    Curve { a: String, b: String },
    Invariants { cm: u32, k: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPointDoc {
    pub x: String,
    pub y: String,
}

/// A point over a cubic field; coordinates on the basis `1, a, a^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldPointDoc {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionQDoc {
    pub group: String,
    pub generators: Vec<RationalPointDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthDoc {
    pub group: String,
    pub field: PolyDoc,
    pub generators: Vec<FieldPointDoc>,
}

/// A group with its field, as printed in the growth table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFieldDoc {
    pub group: String,
    pub field: PolyDoc,
}

impl From<&(TorsionGroup, Poly)> for GroupFieldDoc {
    fn from((g, p): &(TorsionGroup, Poly)) -> Self {
        GroupFieldDoc {
            group: g.to_string(),
            field: p.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionMismatchDoc {
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffDoc {
    pub torsion_q: Option<TorsionMismatchDoc>,
    pub missing: Vec<GroupFieldDoc>,
    pub unexpected: Vec<GroupFieldDoc>,
    pub errors: Vec<String>,
}

impl From<&GrowthDiff> for DiffDoc {
    fn from(d: &GrowthDiff) -> Self {
        DiffDoc {
            torsion_q: d.torsion_q.map(|(e, c)| TorsionMismatchDoc {
                expected: e.to_string(),
                computed: c.to_string(),
            }),
            missing: d.missing.iter().map(Into::into).collect(),
            unexpected: d.unexpected.iter().map(Into::into).collect(),
            errors: d.errors.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictDoc {
    Match,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckDoc {
    pub verdict: VerdictDoc,
    pub table_condition: String,
    pub table_torsion_q: String,
    pub table_growths: Vec<GroupFieldDoc>,
    pub diff: Option<DiffDoc>,
}

impl From<&CrossCheck> for CrossCheckDoc {
    fn from(c: &CrossCheck) -> Self {
        let (verdict, diff) = match &c.verdict {
            Verdict::Match => (VerdictDoc::Match, None),
            Verdict::Mismatch(d) => (VerdictDoc::Mismatch, Some(d.into())),
        };
        CrossCheckDoc {
            verdict,
            table_condition: c.table.condition.to_string(),
            table_torsion_q: c.table.torsion_q.to_string(),
            table_growths: c.table.growths.iter().map(Into::into).collect(),
            diff,
        }
    }
}

/// Output of `classify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub kind: String,
    pub input: InputDoc,
    pub curve: CurveDoc,
    pub j_invariant: String,
    pub inv: InvariantsDoc,
    pub torsion_q: TorsionQDoc,
    pub growths: Vec<GrowthDoc>,
    pub cross_check: Option<CrossCheckDoc>,
}

fn rational_point(p: &Point<Rational>) -> Option<RationalPointDoc> {
    let (x, y) = (p.x()?, p.y()?);
    Some(RationalPointDoc {
        x: x.to_string(),
        y: y.to_string(),
    })
}

fn field_point(p: &Point<FieldElem>) -> Option<FieldPointDoc> {
    let (x, y) = (p.x()?, p.y()?);
    Some(FieldPointDoc {
        x: x.to_coord_strings().to_vec(),
        y: y.to_coord_strings().to_vec(),
        text: p.to_string(),
    })
}

impl ReportDocument {
    pub fn new(input: InputDoc, report: &GrowthReport, cross: Option<&CrossCheck>) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            kind: "classify".to_string(),
            input,
            curve: (&report.curve).into(),
            j_invariant: report.curve.j_invariant().to_string(),
            inv: (&report.inv).into(),
            torsion_q: TorsionQDoc {
                group: report.torsion_q.group.to_string(),
                generators: report.torsion_q.generators.iter().filter_map(rational_point).collect(),
            },
            growths: report
                .growths
                .iter()
                .map(|g| GrowthDoc {
                    group: g.group.to_string(),
                    field: g.field.defining_poly().into(),
                    generators: g.generators.iter().filter_map(field_point).collect(),
                })
                .collect(),
            cross_check: cross.map(Into::into),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "curve: {}", self.curve.equation);
        let _ = writeln!(s, "j-invariant: {}", self.j_invariant);
        let _ = writeln!(s, "CM invariants: cm = {}, k = {}", self.inv.cm, self.inv.k);
        let _ = writeln!(s, "torsion over Q: {}", self.torsion_q.group);
        for p in &self.torsion_q.generators {
            let _ = writeln!(s, "  generator: ({}, {})", p.x, p.y);
        }
        if self.growths.is_empty() {
            let _ = writeln!(s, "cubic growth: none");
        } else {
            let _ = writeln!(s, "cubic growth ({}):", self.growths.len());
            for g in &self.growths {
                let _ = writeln!(s, "  {} over Q(a), a root of {}", g.group, g.field.sparse);
                for p in &g.generators {
                    let _ = writeln!(s, "    generator: {}", p.text);
                }
            }
        }
        if let Some(c) = &self.cross_check {
            let verdict = match c.verdict {
                VerdictDoc::Match => "MATCH",
                VerdictDoc::Mismatch => "MISMATCH",
            };
            let _ = writeln!(s, "cross-check: {verdict}");
            let _ = writeln!(
                s,
                "  table row: k {} with torsion {}",
                c.table_condition, c.table_torsion_q
            );
            for g in &c.table_growths {
                let _ = writeln!(s, "  table growth: {} over {}", g.group, g.field.sparse);
            }
            if let Some(d) = &c.diff {
                let _ = writeln!(s, "  diff: {}", serde_json::to_string(d).expect("diff serializes"));
            }
        }
        s
    }
}

/// One row of the regenerated growth table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthTableRowDoc {
    pub cm: u32,
    pub condition: String,
    pub k: String,
    pub torsion_q: String,
    pub growths: Vec<GroupFieldDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthTableDocument {
    pub schema_version: String,
    pub kind: String,
    pub rows: Vec<GrowthTableRowDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionConditionDoc {
    pub condition: String,
    pub k: String,
    pub torsion: String,
}

/// One CM class of the regenerated class table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRowDoc {
    pub disc: i64,
    pub conductor: u32,
    pub j: String,
    pub j_factored: String,
    pub cm: u32,
    pub a: String,
    pub b: String,
    pub torsion: Vec<TorsionConditionDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTableDocument {
    pub schema_version: String,
    pub kind: String,
    pub classes: Vec<ClassRowDoc>,
}

/// One line of `verify` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyLine {
    pub inv: InvariantsDoc,
    pub verdict: VerdictDoc,
    pub torsion_q: String,
    pub growths: Vec<GroupFieldDoc>,
    pub diff: Option<DiffDoc>,
}
