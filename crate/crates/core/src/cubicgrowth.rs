//! Torsion growth of CM curves over `Q` in cubic fields: the computing
//! engine, the closed-form table, and their comparison.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cmclass::{self, CmInvariants};
use crate::ellcurve::{
    count_points_of_exact_order, torsion_over_base, DivisionData, EllipticCurve, Point, RationalField, Torsion,
    TorsionGroup,
};
use crate::error::{Error, Result};
use crate::exactnum::{self, Rational};
use crate::numberfield::{self, CubicField, FieldElem};
use crate::poly::Poly;
use crate::polyfactor::FactorList;

/// Orders checked in paranoid mode; no cubic field can carry points of
/// these orders beyond what the computed group predicts.
pub const PARANOID_ORDERS: [u32; 3] = [5, 6, 8];

/// Torsion over one cubic field that strictly contains `E(Q)_tors`.
#[derive(Clone, Debug)]
pub struct GrowthRecord {
    pub group: TorsionGroup,
    pub field: Arc<CubicField>,
    pub generators: Vec<Point<FieldElem>>,
}

#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub curve: EllipticCurve,
    pub inv: CmInvariants,
    pub torsion_q: Torsion<Rational>,
    /// One record per isomorphism class of cubic field with growth, sorted.
    pub growths: Vec<GrowthRecord>,
    /// Factorizations of primitive division polynomials made on the way.
    pub factorizations: Vec<(u32, FactorList)>,
}

impl GrowthReport {
    pub fn h_count(&self) -> usize {
        self.growths.len()
    }

    pub fn groups(&self) -> Vec<TorsionGroup> {
        self.growths.iter().map(|g| g.group).collect()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EngineOptions {
    /// Also count points of order 5, 6 and 8 over `Q` and every growth
    /// field and compare with the computed groups.
    pub paranoid: bool,
}

fn coeff_sizes(g: &Poly) -> impl Iterator<Item = BigInt> + '_ {
    g.coeffs().iter().map(|c| (c.numer() * c.denom()).abs())
}

/// Order used to pick a defining polynomial: smallest sum of coefficient
/// sizes, then smallest largest coefficient, then lexicographic on
/// coefficients from the constant term up.
fn representative_order(a: &Poly, b: &Poly) -> Ordering {
    let l1 = |g: &Poly| coeff_sizes(g).sum::<BigInt>();
    let height = |g: &Poly| coeff_sizes(g).max().unwrap_or_default();
    l1(a)
        .cmp(&l1(b))
        .then_with(|| height(a).cmp(&height(b)))
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Bound on `|a| + |b| + |c|` in the search for a small `x^3 + a x^2 + b x + c`.
const SMALL_NORM: i64 = 12;

fn isqrt_exact(v: i128) -> bool {
    if v < 0 {
        return false;
    }
    let mut r = (v as f64).sqrt() as i128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r * r == v
}

/// The first small monic integer cubic, in representative order, defining
/// the same field as `field`. Results are cached per defining polynomial.
fn small_representative(field: &Arc<CubicField>) -> Result<Option<Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<Poly, Option<Poly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache poisoned").get(field.defining_poly()) {
        return Ok(hit.clone());
    }
    // isomorphic fields have discriminants in the same square class
    let class = exactnum::squarefree_part(&field.discriminant())?;
    let mut polys = Vec::new();
    if let Ok(class) = i128::try_from(class) {
        let n = SMALL_NORM;
        for c in -n..=n {
            for b in -(n - c.abs())..=(n - c.abs()) {
                let rest = n - c.abs() - b.abs();
                for a in -rest..=rest {
                    let (a2, b2, c2) = (a as i128, b as i128, c as i128);
                    let d = a2 * a2 * b2 * b2 - 4 * b2.pow(3) - 4 * a2.pow(3) * c2 - 27 * c2 * c2 + 18 * a2 * b2 * c2;
                    if c != 0 && d.checked_mul(class).is_some_and(isqrt_exact) {
                        polys.push(Poly::from_ints(&[c, b, a, 1]));
                    }
                }
            }
        }
    }
    polys.sort_by(representative_order);
    let mut found = None;
    for g in polys {
        let Ok(k) = CubicField::new(g.clone()) else {
            continue;
        };
        if numberfield::fields_isomorphic(field, &k)? {
            found = Some(g);
            break;
        }
    }
    cache
        .lock()
        .expect("cache poisoned")
        .insert(field.defining_poly().clone(), found.clone());
    Ok(found)
}

/// `c^{-3} g(c x)`: the minimal polynomial of `alpha / c`.
fn scale_root(g: &Poly, c: &Rational) -> Poly {
    g.scale_variable(c).monic()
}

/// Simple rewrites of a monic cubic that define the same field: clear
/// denominators, divide the root by the largest integer keeping the
/// coefficients integral, and negate the root.
fn defining_poly_variants(g: &Poly) -> Vec<Poly> {
    let d = g.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let integral = scale_root(g, &Rational::from_integer(d).recip());
    let a: Vec<BigInt> = (0..3).map(|i| integral.coeff(i).to_integer()).collect();
    let mut c = BigInt::one();
    if !a[0].is_zero() {
        let fact = exactnum::factor_integer(&a[0]).expect("nonzero");
        for (p, e) in fact.factors {
            let mut best = 0;
            for t in 1..=e / 3 {
                let pt = num_traits::pow(p.clone(), t as usize);
                if (&a[1] % (&pt * &pt)).is_zero() && (&a[2] % &pt).is_zero() {
                    best = t;
                }
            }
            c *= num_traits::pow(p, best as usize);
        }
    }
    let reduced = scale_root(&integral, &Rational::from_integer(c));
    let negated = scale_root(&reduced, &Rational::from_integer(BigInt::from(-1)));
    vec![g.clone(), integral, reduced, negated]
}

fn pick_representative(polys: &[Poly]) -> Poly {
    polys
        .iter()
        .flat_map(defining_poly_variants)
        .min_by(representative_order)
        .expect("nonempty class")
}

/// Cubic fields over which new points can appear: for each searched order,
/// the cubic factors of the primitive division polynomial whose root gives
/// a point (for order 2 every cubic factor does).
fn candidate_fields(div: &DivisionData, tq: &Torsion<Rational>) -> Result<Vec<Arc<CubicField>>> {
    let f = div.rhs_poly();
    let mut out: Vec<Arc<CubicField>> = Vec::new();
    let mut has_three = tq.group.points_of_exact_order(3) > 0;
    for m in [2u32, 3, 4, 7, 9] {
        // a point of order 9 over K has a multiple of order 3 over K, which
        // is rational or has abscissa generating K
        if m == 9 && !has_three {
            continue;
        }
        let fl = div.primitive_factored(m)?;
        for g in fl.factors_of_degree(3) {
            let field = CubicField::new(g.clone())?;
            let ok = m == 2 || numberfield::is_square(&field.generator().eval_poly(f))?.is_some();
            if ok {
                if m == 3 {
                    has_three = true;
                }
                out.push(field);
            }
        }
    }
    Ok(out)
}

/// Partition by field isomorphism, keeping one canonical field per class.
fn isomorphism_classes(fields: Vec<Arc<CubicField>>) -> Result<Vec<Arc<CubicField>>> {
    let mut classes: Vec<Vec<Arc<CubicField>>> = Vec::new();
    'outer: for k in fields {
        for class in classes.iter_mut() {
            if numberfield::fields_isomorphic(&class[0], &k)? {
                class.push(k);
                continue 'outer;
            }
        }
        classes.push(vec![k]);
    }
    classes
        .into_iter()
        .map(|class| {
            let mut polys: Vec<Poly> = class.iter().map(|k| k.defining_poly().clone()).collect();
            polys.extend(small_representative(&class[0])?);
            let rep = pick_representative(&polys);
            let field = CubicField::new(rep)?;
            if !numberfield::fields_isomorphic(&field, &class[0])? {
                return Err(Error::Internal(
                    "rewritten defining polynomial changed the field".into(),
                ));
            }
            Ok(field)
        })
        .collect()
}

fn paranoid_check<B: crate::ellcurve::TorsionBase>(div: &DivisionData, base: &B, group: TorsionGroup) -> Result<()> {
    for m in PARANOID_ORDERS {
        let found = count_points_of_exact_order(div, base, m)?;
        if found != group.points_of_exact_order(m) as usize {
            return Err(Error::Internal(format!(
                "{group} predicts {} points of order {m}, found {found}",
                group.points_of_exact_order(m)
            )));
        }
    }
    Ok(())
}

/// Computes `E(Q)_tors` and every strict torsion growth of `E` over cubic
/// fields, one record per isomorphism class of field.
pub fn growth_engine(e: &EllipticCurve) -> Result<GrowthReport> {
    growth_engine_with(e, EngineOptions::default())
}

pub fn growth_engine_with(e: &EllipticCurve, opts: EngineOptions) -> Result<GrowthReport> {
    let inv = cmclass::detect_cm(e)?;
    let div = DivisionData::new(e);
    let torsion_q = torsion_over_base(&div, &RationalField)?;
    if opts.paranoid {
        paranoid_check(&div, &RationalField, torsion_q.group)?;
    }
    let mut growths = Vec::new();
    for field in isomorphism_classes(candidate_fields(&div, &torsion_q)?)? {
        let t = torsion_over_base(&div, &field)?;
        if !torsion_q.group.embeds_in(&t.group) {
            return Err(Error::Internal(format!(
                "{} over Q does not embed in {} over {field}",
                torsion_q.group, t.group
            )));
        }
        if opts.paranoid {
            paranoid_check(&div, &field, t.group)?;
        }
        if t.group != torsion_q.group {
            growths.push(GrowthRecord {
                group: t.group,
                field,
                generators: t.generators,
            });
        }
    }
    growths.sort_by(|a, b| {
        a.group
            .order()
            .cmp(&b.group.order())
            .then_with(|| a.group.cmp(&b.group))
            .then_with(|| representative_order(a.field.defining_poly(), b.field.defining_poly()))
    });
    Ok(GrowthReport {
        curve: e.clone(),
        inv,
        torsion_q,
        growths,
        factorizations: div.cached_factorizations(),
    })
}

/// One row of the closed-form growth table.
pub struct GrowthRow {
    pub cm: u32,
    /// The `k`-condition as printed, e.g. `"r^2 (r != +-1, +-4)"`.
    pub condition: &'static str,
    pub torsion_q: TorsionGroup,
    pub applies: fn(&BigInt) -> bool,
    /// Growth groups with their defining cubics, as functions of `k`.
    pub growths: fn(&BigInt) -> Vec<(TorsionGroup, Poly)>,
}

fn x3_minus(c: &BigInt) -> Poly {
    Poly::from_bigints(&[-c, BigInt::zero(), BigInt::zero(), BigInt::one()])
}

fn is_square_int(k: &BigInt) -> bool {
    !k.is_negative() && exactnum::integer_nth_root(k, 2).is_some()
}

fn is_cube_int(k: &BigInt) -> bool {
    exactnum::integer_nth_root(k, 3).is_some()
}

/// `k = -3 r^2` for an integer `r`.
fn is_minus_three_square(k: &BigInt) -> bool {
    let three = BigInt::from(3);
    k.is_negative() && (k % &three).is_zero() && is_square_int(&(-k / three))
}

fn cyc(n: u32) -> TorsionGroup {
    TorsionGroup::cyclic(n)
}

fn cbrt2() -> Poly {
    Poly::from_ints(&[-2, 0, 0, 1])
}

fn galois9() -> Poly {
    Poly::from_ints(&[-1, -3, 0, 1])
}

fn galois7() -> Poly {
    Poly::from_ints(&[-1, -2, 1, 1])
}

/// Rows in table order; within a class the first applicable row wins.
pub fn growth_rows() -> &'static [GrowthRow] {
    static ROWS: OnceLock<Vec<GrowthRow>> = OnceLock::new();
    ROWS.get_or_init(|| {
        let none: fn(&BigInt) -> Vec<(TorsionGroup, Poly)> = |_| Vec::new();
        let any: fn(&BigInt) -> bool = |_| true;
        vec![
            GrowthRow {
                cm: 3,
                condition: "1",
                torsion_q: cyc(6),
                applies: |k| k.is_one(),
                growths: none,
            },
            GrowthRow {
                cm: 3,
                condition: "16",
                torsion_q: cyc(3),
                applies: |k| *k == BigInt::from(16),
                growths: |_| vec![(cyc(6), cbrt2()), (cyc(9), galois9())],
            },
            GrowthRow {
                cm: 3,
                condition: "-432",
                torsion_q: cyc(3),
                applies: |k| *k == BigInt::from(-432),
                growths: |_| vec![(cyc(6), cbrt2())],
            },
            GrowthRow {
                cm: 3,
                condition: "r^2 (r != +-1, +-4)",
                torsion_q: cyc(3),
                applies: |k| is_square_int(k) && !k.is_one() && *k != BigInt::from(16),
                growths: |k| vec![(cyc(6), x3_minus(k))],
            },
            GrowthRow {
                cm: 3,
                condition: "-27",
                torsion_q: cyc(2),
                applies: |k| *k == BigInt::from(-27),
                growths: |_| vec![(cyc(6), cbrt2())],
            },
            GrowthRow {
                cm: 3,
                condition: "r^3 (r != 1, -3)",
                torsion_q: cyc(2),
                applies: |k| is_cube_int(k) && !k.is_one() && *k != BigInt::from(-27),
                growths: none,
            },
            GrowthRow {
                cm: 3,
                condition: "-108",
                torsion_q: cyc(1),
                applies: |k| *k == BigInt::from(-108),
                growths: |_| vec![(cyc(6), cbrt2())],
            },
            GrowthRow {
                cm: 3,
                condition: "-3r^2 (r != +-6)",
                torsion_q: cyc(1),
                applies: |k| is_minus_three_square(k) && *k != BigInt::from(-108),
                growths: |k| vec![(cyc(2), x3_minus(&-k)), (cyc(3), x3_minus(&(-k * 4)))],
            },
            GrowthRow {
                cm: 3,
                condition: "!= r^2, r^3, -3r^2",
                torsion_q: cyc(1),
                applies: any,
                growths: |k| vec![(cyc(2), x3_minus(k))],
            },
            GrowthRow {
                cm: 12,
                condition: "1",
                torsion_q: cyc(6),
                applies: |k| k.is_one(),
                growths: none,
            },
            GrowthRow {
                cm: 12,
                condition: "-3",
                torsion_q: cyc(2),
                applies: |k| *k == BigInt::from(-3),
                growths: |_| vec![(cyc(6), cbrt2())],
            },
            GrowthRow {
                cm: 12,
                condition: "!= 1, -3",
                torsion_q: cyc(2),
                applies: any,
                growths: none,
            },
            GrowthRow {
                cm: 27,
                condition: "1",
                torsion_q: cyc(3),
                applies: |k| k.is_one(),
                growths: |_| vec![(cyc(6), cbrt2()), (cyc(9), galois9())],
            },
            GrowthRow {
                cm: 27,
                condition: "-3",
                torsion_q: cyc(1),
                applies: |k| *k == BigInt::from(-3),
                growths: |_| vec![(cyc(2), cbrt2()), (cyc(3), Poly::from_ints(&[-3, 0, 0, 1]))],
            },
            GrowthRow {
                cm: 27,
                condition: "!= 1, -3",
                torsion_q: cyc(1),
                applies: any,
                growths: |_| vec![(cyc(2), cbrt2())],
            },
            GrowthRow {
                cm: 4,
                condition: "4",
                torsion_q: cyc(4),
                applies: |k| *k == BigInt::from(4),
                growths: none,
            },
            GrowthRow {
                cm: 4,
                condition: "-r^2",
                torsion_q: TorsionGroup::product(2, 2).expect("normal form"),
                applies: |k| is_square_int(&-k),
                growths: none,
            },
            GrowthRow {
                cm: 4,
                condition: "!= 4, -r^2",
                torsion_q: cyc(2),
                applies: any,
                growths: none,
            },
            GrowthRow {
                cm: 16,
                condition: "1, 2",
                torsion_q: cyc(4),
                applies: |k| k.is_one() || *k == BigInt::from(2),
                growths: none,
            },
            GrowthRow {
                cm: 16,
                condition: "!= 1, 2",
                torsion_q: cyc(2),
                applies: any,
                growths: none,
            },
            GrowthRow {
                cm: 7,
                condition: "-7",
                torsion_q: cyc(2),
                applies: |k| *k == BigInt::from(-7),
                growths: |_| vec![(cyc(14), galois7())],
            },
            GrowthRow {
                cm: 7,
                condition: "!= -7",
                torsion_q: cyc(2),
                applies: any,
                growths: none,
            },
            GrowthRow {
                cm: 28,
                condition: "7",
                torsion_q: cyc(2),
                applies: |k| *k == BigInt::from(7),
                growths: |_| vec![(cyc(14), galois7())],
            },
            GrowthRow {
                cm: 28,
                condition: "!= 7",
                torsion_q: cyc(2),
                applies: any,
                growths: none,
            },
            GrowthRow {
                cm: 8,
                condition: "-",
                torsion_q: cyc(2),
                applies: any,
                growths: none,
            },
            GrowthRow {
                cm: 11,
                condition: "-",
                torsion_q: cyc(1),
                applies: any,
                growths: |_| vec![(cyc(2), Poly::from_ints(&[1, 1, -1, 1]))],
            },
            GrowthRow {
                cm: 19,
                condition: "-",
                torsion_q: cyc(1),
                applies: any,
                growths: |_| vec![(cyc(2), Poly::from_ints(&[-1, 3, -1, 1]))],
            },
            GrowthRow {
                cm: 43,
                condition: "-",
                torsion_q: cyc(1),
                applies: any,
                growths: |_| vec![(cyc(2), Poly::from_ints(&[3, -1, -1, 1]))],
            },
            GrowthRow {
                cm: 67,
                condition: "-",
                torsion_q: cyc(1),
                applies: any,
                growths: |_| vec![(cyc(2), Poly::from_ints(&[5, -3, -1, 1]))],
            },
            GrowthRow {
                cm: 163,
                condition: "-",
                torsion_q: cyc(1),
                applies: any,
                growths: |_| vec![(cyc(2), Poly::from_ints(&[-10, -8, 0, 1]))],
            },
        ]
    })
}

pub fn growth_row(inv: &CmInvariants) -> &'static GrowthRow {
    growth_rows()
        .iter()
        .find(|r| r.cm == inv.cm && (r.applies)(&inv.k))
        .expect("every class ends with a catch-all row")
}

/// The closed-form prediction for `(cm, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableGrowth {
    pub row: usize,
    pub condition: &'static str,
    pub torsion_q: TorsionGroup,
    pub growths: Vec<(TorsionGroup, Poly)>,
}

pub fn growth_table(inv: &CmInvariants) -> TableGrowth {
    let rows = growth_rows();
    let row = rows
        .iter()
        .position(|r| r.cm == inv.cm && (r.applies)(&inv.k))
        .expect("every class ends with a catch-all row");
    TableGrowth {
        row,
        condition: rows[row].condition,
        torsion_q: rows[row].torsion_q,
        growths: (rows[row].growths)(&inv.k),
    }
}

/// Differences between the table and the engine.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrowthDiff {
    /// `(expected, computed)` when the groups over `Q` differ.
    pub torsion_q: Option<(TorsionGroup, TorsionGroup)>,
    /// Table entries without an engine counterpart.
    pub missing: Vec<(TorsionGroup, Poly)>,
    /// Engine entries without a table counterpart.
    pub unexpected: Vec<(TorsionGroup, Poly)>,
    pub errors: Vec<String>,
}

impl GrowthDiff {
    pub fn is_empty(&self) -> bool {
        self.torsion_q.is_none() && self.missing.is_empty() && self.unexpected.is_empty() && self.errors.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch(GrowthDiff),
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::Match)
    }
}

/// Compares an engine report with the table. Growths pair up when the
/// groups agree and the fields are isomorphic.
pub fn compare(report: &GrowthReport, table: &TableGrowth) -> Verdict {
    let mut diff = GrowthDiff::default();
    if report.torsion_q.group != table.torsion_q {
        diff.torsion_q = Some((table.torsion_q, report.torsion_q.group));
    }
    let mut unmatched: Vec<&GrowthRecord> = report.growths.iter().collect();
    for (group, poly) in &table.growths {
        let expected = match CubicField::new(poly.clone()) {
            Ok(k) => k,
            Err(e) => {
                diff.errors.push(format!("table field {poly}: {e}"));
                continue;
            }
        };
        let mut found = None;
        for (i, rec) in unmatched.iter().enumerate() {
            if rec.group != *group {
                continue;
            }
            match numberfield::fields_isomorphic(&expected, &rec.field) {
                Ok(true) => {
                    found = Some(i);
                    break;
                }
                Ok(false) => {}
                Err(e) => diff.errors.push(e.to_string()),
            }
        }
        match found {
            Some(i) => {
                unmatched.remove(i);
            }
            None => diff.missing.push((*group, poly.clone())),
        }
    }
    diff.unexpected = unmatched
        .into_iter()
        .map(|r| (r.group, r.field.defining_poly().clone()))
        .collect();
    if diff.is_empty() {
        Verdict::Match
    } else {
        Verdict::Mismatch(diff)
    }
}

/// Engine result for the normal form of `inv`, the table prediction, and
/// the verdict.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub inv: CmInvariants,
    pub report: GrowthReport,
    pub table: TableGrowth,
    pub verdict: Verdict,
}

pub fn cross_check(inv: &CmInvariants) -> Result<CrossCheck> {
    let curve = cmclass::normal_form(inv)?;
    let report = growth_engine(&curve)?;
    Ok(cross_check_report(report))
}

/// Cross-check of an engine report already computed.
pub fn cross_check_report(report: GrowthReport) -> CrossCheck {
    let table = growth_table(&report.inv);
    let verdict = compare(&report, &table);
    CrossCheck {
        inv: report.inv.clone(),
        report,
        table,
        verdict,
    }
}

/// Number of growth records per group across reports.
pub fn group_histogram<'a>(reports: impl IntoIterator<Item = &'a GrowthReport>) -> BTreeMap<TorsionGroup, usize> {
    let mut out = BTreeMap::new();
    for r in reports {
        for g in r.groups() {
            *out.entry(g).or_default() += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(cm: u32, k: i64) -> CmInvariants {
        CmInvariants::new(cm, BigInt::from(k)).unwrap()
    }

    fn field(c: &[i64]) -> Arc<CubicField> {
        CubicField::new(Poly::from_ints(c)).unwrap()
    }

    #[test]
    fn variants_define_the_same_field() {
        let g = Poly::from_ints(&[16, 0, 0, 1]);
        let vs = defining_poly_variants(&g);
        assert!(vs.contains(&Poly::from_ints(&[-2, 0, 0, 1])));
        let base = field(&[16, 0, 0, 1]);
        for v in vs {
            assert!(numberfield::fields_isomorphic(&base, &CubicField::new(v).unwrap()).unwrap());
        }
        let g = Poly::new(vec![
            Rational::new(1.into(), 27.into()),
            Rational::zero(),
            Rational::one(),
            Rational::one(),
        ]);
        for v in defining_poly_variants(&g) {
            assert!(
                numberfield::fields_isomorphic(&CubicField::new(g.clone()).unwrap(), &CubicField::new(v).unwrap())
                    .unwrap()
            );
        }
    }

    #[test]
    fn mordell_sixteen() {
        let e = cmclass::normal_form(&inv(3, 16)).unwrap();
        let r = growth_engine(&e).unwrap();
        assert_eq!(r.torsion_q.group.to_string(), "C3");
        assert_eq!(
            r.groups().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            ["C6", "C9"]
        );
        assert!(numberfield::fields_isomorphic(&r.growths[0].field, &field(&[-2, 0, 0, 1])).unwrap());
        assert!(numberfield::fields_isomorphic(&r.growths[1].field, &field(&[-1, -3, 0, 1])).unwrap());
        assert!(cross_check_report(r).verdict.is_match());
    }

    #[test]
    fn table_examples() {
        let t = growth_table(&inv(3, -12));
        assert_eq!(
            t.growths,
            vec![
                (cyc(2), Poly::from_ints(&[-12, 0, 0, 1])),
                (cyc(3), Poly::from_ints(&[-48, 0, 0, 1]))
            ]
        );
        assert_eq!(growth_table(&inv(28, 7)).growths, vec![(cyc(14), galois7())]);
        assert_eq!(growth_table(&inv(3, -108)).growths, vec![(cyc(6), cbrt2())]);
        assert_eq!(growth_table(&inv(3, 4)).condition, "r^2 (r != +-1, +-4)");
        assert_eq!(growth_table(&inv(3, 16)).condition, "16");
        assert_eq!(growth_table(&inv(3, 1)).condition, "1");
        assert_eq!(growth_table(&inv(3, -27)).condition, "-27");
        assert_eq!(growth_table(&inv(3, 8)).condition, "r^3 (r != 1, -3)");
    }

    #[test]
    fn table_torsion_agrees_with_class_table() {
        for i in cmclass::corpus() {
            assert_eq!(growth_table(&i).torsion_q, cmclass::torsion_over_q_table(&i), "{i}");
        }
    }

    #[test]
    fn cross_check_examples() {
        for (cm, k, n) in [(7, -7, 1), (3, 1, 0), (4, 3, 0), (27, -3, 2), (8, 5, 0), (11, 1, 1)] {
            let c = cross_check(&inv(cm, k)).unwrap();
            assert!(c.verdict.is_match(), "{cm} {k}: {:?}", c.verdict);
            assert_eq!(c.report.h_count(), n);
        }
    }

    #[test]
    fn paranoid_mode_agrees() {
        for (cm, k) in [(3, 16), (7, -7), (4, -1), (12, 1)] {
            let e = cmclass::normal_form(&inv(cm, k)).unwrap();
            let r = growth_engine_with(&e, EngineOptions { paranoid: true }).unwrap();
            let plain = growth_engine(&e).unwrap();
            assert_eq!(r.groups(), plain.groups());
        }
    }

    #[test]
    fn mismatch_carries_a_diff() {
        let e = cmclass::normal_form(&inv(7, -7)).unwrap();
        let report = growth_engine(&e).unwrap();
        let wrong = TableGrowth {
            row: 0,
            condition: "test",
            torsion_q: cyc(2),
            growths: vec![(cyc(14), cbrt2())],
        };
        match compare(&report, &wrong) {
            Verdict::Mismatch(d) => {
                assert_eq!(d.missing, vec![(cyc(14), cbrt2())]);
                assert_eq!(d.unexpected.len(), 1);
            }
            Verdict::Match => panic!("expected a mismatch"),
        }
    }
}
