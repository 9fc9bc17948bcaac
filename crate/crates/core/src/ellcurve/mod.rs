//! Short Weierstrass curves `y^2 = x^3 + a x + b` over `Q` or a cubic field.

mod division;
mod torsion;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{rat, Rational};
use crate::numberfield::{CubicField, FieldElem};
use crate::poly::Poly;

pub use division::{division_polynomial, primitive_degree, primitive_division_polynomial, DivisionData};
pub use torsion::{
    count_points_of_exact_order, torsion_over_base, torsion_over_q, RationalField, Torsion, TorsionBase, TorsionGroup,
    SEARCHED_ORDERS,
};

/// The field operations the group law needs.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverted(&self) -> Option<Self>;
    fn is_zero_elem(&self) -> bool;
    /// A rational number in the same field as `self`.
    fn lift(&self, q: &Rational) -> Self;
}

impl Scalar for Rational {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverted(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn lift(&self, q: &Rational) -> Self {
        q.clone()
    }
}

impl Scalar for FieldElem {
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn inverted(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn lift(&self, q: &Rational) -> Self {
        self.field().rational(q.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point<F> {
    Infinity,
    Affine(F, F),
}

impl<F> Point<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(x),
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::Infinity => None,
            Point::Affine(_, y) => Some(y),
        }
    }
}

impl<F: fmt::Display> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => f.write_str("O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticCurve<F = Rational> {
    a: F,
    b: F,
}

impl<F: Scalar> EllipticCurve<F> {
    pub fn new(a: F, b: F) -> Result<Self> {
        let a3 = a.times(&a).times(&a);
        let b2 = b.times(&b);
        let d = a3.times(&a.lift(&rat(4))).plus(&b2.times(&a.lift(&rat(27))));
        if d.is_zero_elem() {
            return Err(Error::Singular);
        }
        Ok(EllipticCurve { a, b })
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    /// `x^3 + a x + b`.
    pub fn rhs(&self, x: &F) -> F {
        x.times(x).plus(&self.a).times(x).plus(&self.b)
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => y.times(y) == self.rhs(x),
        }
    }

    pub fn point(&self, x: F, y: F) -> Result<Point<F>> {
        let p = Point::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), y.negated()),
        }
    }

    /// Group law; both points must lie on this curve (checked).
    pub fn point_add(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::NotOnCurve);
        }
        Ok(self.add(p, q))
    }

    pub(crate) fn add(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if y1.plus(y2).is_zero_elem() {
                return Point::Infinity;
            }
            let three = x1.lift(&rat(3));
            let num = x1.times(x1).times(&three).plus(&self.a);
            let den = y1.plus(y1);
            num.times(&den.inverted().expect("nonzero"))
        } else {
            y2.minus(y1).times(&x2.minus(x1).inverted().expect("distinct x"))
        };
        let x3 = lambda.times(&lambda).minus(x1).minus(x2);
        let y3 = lambda.times(&x1.minus(&x3)).minus(y1);
        Point::Affine(x3, y3)
    }

    pub fn double(&self, p: &Point<F>) -> Point<F> {
        self.add(p, p)
    }

    /// `n * p` by double-and-add.
    pub fn mul(&self, n: i64, p: &Point<F>) -> Point<F> {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.double(&base);
            k >>= 1;
        }
        acc
    }

    /// Exact order of `p` if it is at most `bound`.
    pub fn order_of(&self, p: &Point<F>, bound: u32) -> Option<u32> {
        let mut q = p.clone();
        for n in 1..=bound {
            if q.is_infinity() {
                return Some(n);
            }
            q = self.add(&q, p);
        }
        None
    }
}

impl EllipticCurve<Rational> {
    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(rat(a), rat(b))
    }

    /// `-16 (4a^3 + 27b^2)`.
    pub fn discriminant(&self) -> Rational {
        let a3 = &self.a * &self.a * &self.a;
        rat(-16) * (rat(4) * a3 + rat(27) * &self.b * &self.b)
    }

    /// `1728 * 4a^3 / (4a^3 + 27b^2)`.
    pub fn j_invariant(&self) -> Rational {
        let a3 = rat(4) * &self.a * &self.a * &self.a;
        rat(1728) * &a3 / (&a3 + rat(27) * &self.b * &self.b)
    }

    /// `y^2 = x^3 + d^2 a x + d^3 b`.
    pub fn quadratic_twist(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroInput("twist parameter"));
        }
        let d = Rational::from_integer(d.clone());
        Self::new(&d * &d * &self.a, &d * &d * &d * &self.b)
    }

    /// The model `y^2 = x^3 + u^4 a x + u^6 b`, isomorphic over `Q`.
    pub fn scaled(&self, u: &Rational) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroInput("scaling factor"));
        }
        let u2 = u * u;
        let u4 = &u2 * &u2;
        Self::new(&u4 * &self.a, &u4 * &u2 * &self.b)
    }

    pub fn base_change(&self, field: &Arc<CubicField>) -> EllipticCurve<FieldElem> {
        EllipticCurve {
            a: field.rational(self.a.clone()),
            b: field.rational(self.b.clone()),
        }
    }

    /// `x^3 + a x + b` as a polynomial.
    pub fn rhs_poly(&self) -> Poly {
        Poly::new(vec![self.b.clone(), self.a.clone(), Rational::zero(), Rational::one()])
    }
}

impl fmt::Display for EllipticCurve<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.rhs_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use proptest::prelude::*;

    #[test]
    fn order_three_point_on_mordell_curve() {
        let e = EllipticCurve::from_ints(0, 16).unwrap();
        let p = e.point(rat(0), rat(4)).unwrap();
        assert!(e.mul(3, &p).is_infinity());
        assert_eq!(e.order_of(&p, 20), Some(3));
        assert_eq!(e.add(&p, &Point::Infinity), p);
        assert_eq!(e.point_add(&Point::Infinity, &p).unwrap(), p);
        assert!(e.point_add(&Point::Affine(rat(1), rat(1)), &p).is_err());
    }

    #[test]
    fn singular_curves_rejected() {
        assert_eq!(EllipticCurve::from_ints(0, 0), Err(Error::Singular));
        assert_eq!(EllipticCurve::from_ints(-3, 2), Err(Error::Singular));
    }

    #[test]
    fn j_invariants() {
        assert_eq!(EllipticCurve::from_ints(0, 1).unwrap().j_invariant(), rat(0));
        assert_eq!(EllipticCurve::from_ints(1, 0).unwrap().j_invariant(), rat(1728));
        assert_eq!(EllipticCurve::from_ints(-15, 22).unwrap().j_invariant(), rat(54000));
        assert_eq!(EllipticCurve::from_ints(0, 1).unwrap().discriminant(), rat(-432));
    }

    #[test]
    fn twist_of_conductor_seven_class() {
        let e = EllipticCurve::from_ints(-2835, -71442).unwrap();
        let t = e.quadratic_twist(&BigInt::from(-7)).unwrap();
        assert_eq!(t, EllipticCurve::from_ints(-138915, 24504606).unwrap());
        assert_eq!(e.quadratic_twist(&BigInt::from(1)).unwrap(), e);
        assert!(e.quadratic_twist(&BigInt::from(0)).is_err());
    }

    #[test]
    fn doubling_matches_tangent_formula() {
        // y^2 = x^3 - 2x + 5 through (1, 2): tangent slope (3 - 2) / 4
        let e = EllipticCurve::from_ints(-2, 5).unwrap();
        let p = e.point(rat(1), rat(2)).unwrap();
        let l = ratio(1, 4);
        let x3 = &l * &l - rat(2);
        let y3 = &l * (rat(1) - &x3) - rat(2);
        assert_eq!(e.double(&p), Point::Affine(x3, y3));
        assert!(e.contains(&e.mul(7, &p)));
    }

    fn curve_and_point() -> impl Strategy<Value = (EllipticCurve, Point<Rational>)> {
        // choose a point first, then b so the point lies on the curve
        (-20i64..20, -20i64..20, -20i64..20).prop_filter_map("singular", |(a, x, y)| {
            let b = y * y - x * x * x - a * x;
            let e = EllipticCurve::from_ints(a, b).ok()?;
            Some((e, Point::Affine(rat(x), rat(y))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn group_law_is_consistent((e, p) in curve_and_point(), m in 1i64..6, n in 1i64..6) {
            let mp = e.mul(m, &p);
            let np = e.mul(n, &p);
            prop_assert!(e.contains(&mp));
            prop_assert_eq!(e.add(&mp, &np), e.mul(m + n, &p));
            prop_assert_eq!(e.add(&mp, &np), e.add(&np, &mp));
            prop_assert!(e.add(&p, &e.neg(&p)).is_infinity());
        }

        #[test]
        fn twist_preserves_j(a in -50i64..50, b in -50i64..50, d in -40i64..40) {
            prop_assume!(d != 0);
            if let Ok(e) = EllipticCurve::from_ints(a, b) {
                let t = e.quadratic_twist(&BigInt::from(d)).unwrap();
                prop_assert_eq!(t.j_invariant(), e.j_invariant());
            }
        }
    }
}
