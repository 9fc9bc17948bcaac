//! Regeneration of the class table and the growth table from engine runs.

use std::fmt::Write as _;

use cmtorsion::cmclass::{self, CmInvariants};
use cmtorsion::cubicgrowth::{self, growth_rows};
use cmtorsion::ellcurve::torsion_over_q;
use cmtorsion::exactnum;
use cmtorsion::Result;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::document::{
    ClassRowDoc, ClassTableDocument, GroupFieldDoc, GrowthTableDocument, GrowthTableRowDoc, TorsionConditionDoc,
    SCHEMA_VERSION,
};

/// Search bound for representative `k`; every row is hit well below it.
const K_SEARCH: i64 = 2000;

/// The reduced `k` of smallest absolute value, positive first, for which
/// `selects` holds.
pub fn representative_k(cm: u32, selects: impl Fn(&CmInvariants) -> bool) -> Option<BigInt> {
    (1..=K_SEARCH)
        .flat_map(|n| [n, -n])
        .map(BigInt::from)
        .filter_map(|k| CmInvariants::new(cm, k).ok())
        .find(|inv| selects(inv))
        .map(|inv| inv.k)
}

fn growth_row_index(inv: &CmInvariants) -> usize {
    cubicgrowth::growth_table(inv).row
}

fn torsion_row_index(inv: &CmInvariants) -> usize {
    let row = cmclass::torsion_row(inv);
    cmclass::torsion_rows()
        .iter()
        .position(|r| std::ptr::eq(r, row))
        .expect("row comes from the table")
}

fn internal(msg: String) -> cmtorsion::Error {
    cmtorsion::Error::Internal(msg)
}

/// Growth table: one engine run per row at its representative `k`.
pub fn growth_table() -> Result<GrowthTableDocument> {
    let rows = growth_rows()
        .par_iter()
        .enumerate()
        .map(|(i, row)| {
            let k = representative_k(row.cm, |inv| growth_row_index(inv) == i)
                .ok_or_else(|| internal(format!("no k selects growth row {i}")))?;
            let inv = CmInvariants::new(row.cm, k)?;
            let report = cubicgrowth::growth_engine(&cmclass::normal_form(&inv)?)?;
            Ok(GrowthTableRowDoc {
                cm: row.cm,
                condition: row.condition.to_string(),
                k: inv.k.to_string(),
                torsion_q: report.torsion_q.group.to_string(),
                growths: report
                    .growths
                    .iter()
                    .map(|g| GroupFieldDoc {
                        group: g.group.to_string(),
                        field: g.field.defining_poly().into(),
                    })
                    .collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GrowthTableDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        kind: "growth_table".to_string(),
        rows,
    })
}

fn factored_string(j: &BigInt) -> Result<String> {
    if j == &BigInt::from(0) {
        return Ok("0".to_string());
    }
    let f = exactnum::factor_integer(j)?;
    let body = f
        .factors
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join("*");
    Ok(if f.sign < 0 { format!("-{body}") } else { body })
}

/// Class table: `j` recomputed from `[A, B]`, torsion over `Q` computed at
/// a representative `k` for every condition.
pub fn class_table() -> Result<ClassTableDocument> {
    let all_rows = cmclass::torsion_rows();
    let classes = cmclass::classes()
        .par_iter()
        .map(|c| {
            let j = c.curve().j_invariant();
            if !j.is_integer() {
                return Err(internal(format!("j = {j} is not an integer")));
            }
            let mut torsion = Vec::new();
            for (i, row) in all_rows.iter().enumerate().filter(|(_, r)| r.cm == c.cm) {
                let k = representative_k(c.cm, |inv| torsion_row_index(inv) == i)
                    .ok_or_else(|| internal(format!("no k selects torsion row {i}")))?;
                let inv = CmInvariants::new(c.cm, k)?;
                let t = torsion_over_q(&cmclass::normal_form(&inv)?)?;
                torsion.push(TorsionConditionDoc {
                    condition: row.condition.to_string(),
                    k: inv.k.to_string(),
                    torsion: t.group.to_string(),
                });
            }
            Ok(ClassRowDoc {
                disc: c.disc,
                conductor: c.conductor,
                j: j.to_string(),
                j_factored: factored_string(j.numer())?,
                cm: c.cm,
                a: c.a.to_string(),
                b: c.b.to_string(),
                torsion,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassTableDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        kind: "class_table".to_string(),
        classes,
    })
}

fn or_dash(s: String) -> String {
    if s.is_empty() {
        "-".to_string()
    } else {
        s
    }
}

pub fn growth_table_markdown(doc: &GrowthTableDocument) -> String {
    let mut s = String::new();
    s.push_str("| cm | k such that E = E^k_cm | representative k | G = E(Q)_tors | H_Q(E, 3) | cubics Q(a) |\n");
    s.push_str("|---|---|---|---|---|---|\n");
    let mut last_cm = None;
    for r in &doc.rows {
        let cm = if last_cm == Some(r.cm) {
            String::new()
        } else {
            r.cm.to_string()
        };
        last_cm = Some(r.cm);
        let groups = r
            .growths
            .iter()
            .map(|g| g.group.as_str())
            .collect::<Vec<_>>()
            .join(", ");
        let fields = r
            .growths
            .iter()
            .map(|g| format!("{} = 0", g.field.sparse.replace('x', "a")))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(
            s,
            "| {cm} | {} | {} | {} | {} | {} |",
            r.condition,
            r.k,
            r.torsion_q,
            or_dash(groups),
            or_dash(fields)
        );
    }
    s
}

pub fn class_table_markdown(doc: &ClassTableDocument) -> String {
    let mut s = String::new();
    s.push_str("| -D | f | j | cm | [A, B] | k | E^k_cm(Q)_tors |\n");
    s.push_str("|---|---|---|---|---|---|---|\n");
    for c in &doc.classes {
        for (i, t) in c.torsion.iter().enumerate() {
            let head = if i == 0 {
                let j = if c.j_factored == c.j {
                    c.j.clone()
                } else {
                    format!("{} = {}", c.j_factored, c.j)
                };
                format!("| {} | {} | {j} | {} | [{}, {}] |", c.disc, c.conductor, c.cm, c.a, c.b)
            } else {
                "| | | | | |".to_string()
            };
            let _ = writeln!(s, "{head} {} | {} |", t.condition, t.torsion);
        }
    }
    s
}
