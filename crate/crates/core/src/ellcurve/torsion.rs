//! Torsion subgroups over `Q` and over cubic fields.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{self, Rational};
use crate::numberfield::{self, CubicField, FieldElem};
use crate::polyfactor::FactorList;

use super::{DivisionData, EllipticCurve, Point, Scalar};

/// Orders whose points are searched for. Over `Q` and over cubic fields a
/// CM curve has torsion in `C1..C6, C2xC2, C9, C14`, so besides 2-torsion
/// only points of order 3, 4, 7 and 9 can occur.
pub const SEARCHED_ORDERS: [u32; 5] = [2, 3, 4, 7, 9];

/// `C_{n1} x C_{n2}` with `n1 | n2`; `n1 = 1` for cyclic groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionGroup {
    n1: u32,
    n2: u32,
}

impl TorsionGroup {
    pub fn cyclic(n: u32) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        TorsionGroup { n1: 1, n2: n }
    }

    pub fn product(n1: u32, n2: u32) -> Result<Self> {
        if n1 == 0 || n2 == 0 || n2 % n1 != 0 {
            return Err(Error::InvalidInput(format!("C{n1}xC{n2} is not in normal form")));
        }
        Ok(TorsionGroup { n1, n2 })
    }

    pub fn invariants(&self) -> (u32, u32) {
        (self.n1, self.n2)
    }

    pub fn order(&self) -> u32 {
        self.n1 * self.n2
    }

    pub fn is_cyclic(&self) -> bool {
        self.n1 == 1
    }

    /// Number of elements killed by `d`.
    pub fn points_of_order_dividing(&self, d: u32) -> u32 {
        self.n1.gcd(&d) * self.n2.gcd(&d)
    }

    /// Number of elements of exact order `m` (Mobius inversion).
    pub fn points_of_exact_order(&self, m: u32) -> u32 {
        let mut total: i64 = 0;
        for d in 1..=m {
            if m % d == 0 {
                total += mobius(m / d) * self.points_of_order_dividing(d) as i64;
            }
        }
        total as u32
    }

    /// Whether `self` is isomorphic to a subgroup of `other`.
    pub fn embeds_in(&self, other: &TorsionGroup) -> bool {
        other.n1 % self.n1 == 0 && other.n2 % self.n2 == 0
    }
}

fn mobius(mut n: u32) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

impl fmt::Display for TorsionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n1 == 1 {
            write!(f, "C{}", self.n2)
        } else {
            write!(f, "C{}xC{}", self.n1, self.n2)
        }
    }
}

impl FromStr for TorsionGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a torsion group name: {s:?}"));
        let parse_c =
            |t: &str| -> Result<u32> { t.trim().strip_prefix('C').and_then(|n| n.parse().ok()).ok_or_else(bad) };
        match s.split_once('x') {
            None => {
                let n = parse_c(s)?;
                if n == 0 {
                    return Err(bad());
                }
                Ok(TorsionGroup::cyclic(n))
            }
            Some((l, r)) => TorsionGroup::product(parse_c(l)?, parse_c(r)?).map_err(|_| bad()),
        }
    }
}

/// A field over which torsion points can be searched: `Q` or a cubic field.
pub trait TorsionBase {
    type Elem: Scalar;

    fn lift(&self, q: &Rational) -> Self::Elem;

    /// Distinct roots in this field of the factored polynomial.
    fn roots(&self, fl: &FactorList) -> Result<Vec<Self::Elem>>;

    fn sqrt(&self, e: &Self::Elem) -> Result<Option<Self::Elem>>;
}

/// The rational numbers as a [`TorsionBase`].
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalField;

impl TorsionBase for RationalField {
    type Elem = Rational;

    fn lift(&self, q: &Rational) -> Rational {
        q.clone()
    }

    fn roots(&self, fl: &FactorList) -> Result<Vec<Rational>> {
        let mut out: Vec<Rational> = fl.factors_of_degree(1).map(|g| -g.coeff(0)).collect();
        out.sort();
        Ok(out)
    }

    fn sqrt(&self, e: &Rational) -> Result<Option<Rational>> {
        if e.is_zero() {
            return Ok(Some(Rational::zero()));
        }
        Ok(exactnum::is_perfect_power(e, 2))
    }
}

impl TorsionBase for Arc<CubicField> {
    type Elem = FieldElem;

    fn lift(&self, q: &Rational) -> FieldElem {
        self.rational(q.clone())
    }

    fn roots(&self, fl: &FactorList) -> Result<Vec<FieldElem>> {
        numberfield::roots_in_field_factored(fl, self)
    }

    fn sqrt(&self, e: &FieldElem) -> Result<Option<FieldElem>> {
        numberfield::is_square(e)
    }
}

/// Torsion subgroup with generators and the points found, by exact order.
#[derive(Clone, Debug)]
pub struct Torsion<F> {
    pub group: TorsionGroup,
    pub generators: Vec<Point<F>>,
    pub points: BTreeMap<u32, Vec<Point<F>>>,
}

/// All points of exact order `m` over the base field.
fn points_of_exact_order<B: TorsionBase>(div: &DivisionData, base: &B, m: u32) -> Result<Vec<Point<B::Elem>>> {
    let fl = div.primitive_factored(m)?;
    let f = div.rhs_poly();
    let mut out = Vec::new();
    for x in base.roots(&fl)? {
        // f(x) with x in the base field
        let fx = f
            .coeffs()
            .iter()
            .rev()
            .fold(base.lift(&Rational::zero()), |acc, c| acc.times(&x).plus(&base.lift(c)));
        if fx.is_zero_elem() {
            out.push(Point::Affine(x, fx));
        } else if let Some(y) = base.sqrt(&fx)? {
            out.push(Point::Affine(x.clone(), y.negated()));
            out.push(Point::Affine(x, y));
        }
    }
    Ok(out)
}

/// Number of points of exact order `m` over the base field, found from the
/// primitive `m`-division polynomial.
pub fn count_points_of_exact_order<B: TorsionBase>(div: &DivisionData, base: &B, m: u32) -> Result<usize> {
    Ok(points_of_exact_order(div, base, m)?.len())
}

/// `E(K)_tors` for `K` the base field.
pub fn torsion_over_base<B: TorsionBase>(div: &DivisionData, base: &B) -> Result<Torsion<B::Elem>> {
    let curve = EllipticCurve::new(base.lift(div.curve().a()), base.lift(div.curve().b()))?;
    let mut points: BTreeMap<u32, Vec<Point<B::Elem>>> = BTreeMap::new();
    let two = points_of_exact_order(div, base, 2)?;
    let three = points_of_exact_order(div, base, 3)?;
    // a point of order 4 (resp. 9) has a multiple of order 2 (resp. 3)
    let four = if two.is_empty() {
        Vec::new()
    } else {
        points_of_exact_order(div, base, 4)?
    };
    let nine = if three.is_empty() {
        Vec::new()
    } else {
        points_of_exact_order(div, base, 9)?
    };
    let seven = points_of_exact_order(div, base, 7)?;
    if three.len() > 2 || seven.len() > 6 || four.len() > 4 {
        return Err(Error::Internal(format!(
            "unexpected torsion over the base field: {} points of order 3, {} of order 4, {} of order 7",
            three.len(),
            four.len(),
            seven.len()
        )));
    }

    let (two_exp, two_gen) = match (four.first(), two.first()) {
        (Some(p), _) => (4, Some(p.clone())),
        (None, Some(p)) => (2, Some(p.clone())),
        (None, None) => (1, None),
    };
    let (three_exp, three_gen) = match (nine.first(), three.first()) {
        (Some(p), _) => (9, Some(p.clone())),
        (None, Some(p)) => (3, Some(p.clone())),
        (None, None) => (1, None),
    };
    let (seven_exp, seven_gen) = match seven.first() {
        Some(p) => (7, Some(p.clone())),
        None => (1, None),
    };
    let n2 = two_exp * three_exp * seven_exp;
    let mut gen = Point::Infinity;
    for p in [two_gen, three_gen, seven_gen].into_iter().flatten() {
        gen = curve.add(&gen, &p);
    }
    if curve.order_of(&gen, n2) != Some(n2) {
        return Err(Error::Internal(format!("generator {gen} does not have order {n2}")));
    }
    let mut generators = vec![gen.clone()];
    let group = if two.len() == 3 {
        let half = curve.mul(i64::from(n2 / 2), &gen);
        let other = two
            .iter()
            .find(|p| **p != half)
            .expect("three points of order 2")
            .clone();
        generators.insert(0, other);
        TorsionGroup::product(2, n2)?
    } else {
        TorsionGroup::cyclic(n2)
    };

    for (m, pts) in [(2, two), (3, three), (4, four), (7, seven), (9, nine)] {
        if !pts.is_empty() {
            points.insert(m, pts);
        }
    }
    for m in SEARCHED_ORDERS {
        let found = points.get(&m).map_or(0, Vec::len) as u32;
        if found != group.points_of_exact_order(m) {
            return Err(Error::Internal(format!(
                "{group} predicts {} points of order {m}, found {found}",
                group.points_of_exact_order(m)
            )));
        }
    }
    Ok(Torsion {
        group,
        generators,
        points,
    })
}

/// `E(Q)_tors`.
pub fn torsion_over_q(curve: &EllipticCurve) -> Result<Torsion<Rational>> {
    torsion_over_base(&DivisionData::new(curve), &RationalField)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn group_names_round_trip() {
        for s in ["C1", "C2", "C6", "C9", "C14", "C2xC2", "C2xC6"] {
            assert_eq!(s.parse::<TorsionGroup>().unwrap().to_string(), s);
        }
        assert!("C2xC3".parse::<TorsionGroup>().is_err());
        assert!("C0".parse::<TorsionGroup>().is_err());
        assert!("Z6".parse::<TorsionGroup>().is_err());
    }

    #[test]
    fn exact_order_counts() {
        let c6 = TorsionGroup::cyclic(6);
        assert_eq!([1, 2, 3, 6].map(|m| c6.points_of_exact_order(m)), [1, 1, 2, 2]);
        let k = TorsionGroup::product(2, 2).unwrap();
        assert_eq!(k.points_of_exact_order(2), 3);
        assert_eq!(TorsionGroup::cyclic(14).points_of_exact_order(7), 6);
        assert!(TorsionGroup::cyclic(3).embeds_in(&TorsionGroup::cyclic(9)));
        assert!(!TorsionGroup::cyclic(2).embeds_in(&TorsionGroup::cyclic(9)));
        assert!(TorsionGroup::cyclic(2).embeds_in(&k));
    }

    #[test]
    fn rational_torsion_examples() {
        let cases = [
            ((0, 1), "C6"),
            ((-2835, -71442), "C2"),
            ((4, 0), "C4"),
            ((-25, 0), "C2xC2"),
            ((0, 16), "C3"),
            ((0, 2), "C1"),
            ((-15, 22), "C6"),
            ((-60, 176), "C2"),
            ((-9504, 365904), "C1"),
        ];
        for ((a, b), g) in cases {
            let t = torsion_over_q(&EllipticCurve::from_ints(a, b).unwrap()).unwrap();
            assert_eq!(t.group.to_string(), g, "y^2 = x^3 + {a}x + {b}");
        }
    }

    #[test]
    fn order_fourteen_over_cyclic_cubic() {
        let e = EllipticCurve::from_ints(-138915, 24504606).unwrap();
        let k = CubicField::new(Poly::from_ints(&[-1, -2, 1, 1])).unwrap();
        let t = torsion_over_base(&DivisionData::new(&e), &k).unwrap();
        assert_eq!(t.group, TorsionGroup::cyclic(14));
        let ek = e.base_change(&k);
        assert_eq!(ek.order_of(&t.generators[0], 20), Some(14));
        assert!(ek.contains(&t.generators[0]));
    }

    #[test]
    fn tripling_a_point_of_order_nine_lands_on_order_three() {
        let e = EllipticCurve::from_ints(0, 16).unwrap();
        let k = CubicField::new(Poly::from_ints(&[-1, -3, 0, 1])).unwrap();
        let div = DivisionData::new(&e);
        let t = torsion_over_base(&div, &k).unwrap();
        assert_eq!(t.group, TorsionGroup::cyclic(9));
        let psi3 = div.classical(3).unwrap();
        let ek = e.base_change(&k);
        for p in &t.points[&9] {
            let q = ek.mul(3, p);
            let x = q.x().unwrap();
            assert!(x.eval_poly(&psi3).is_zero());
        }
    }
}
