//! Univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, rational_to_string, Rational};
use crate::intpoly::{self, ZPoly};

/// Dense polynomial over `Q`, lowest degree first. The leading coefficient
/// is nonzero unless the polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * g) + &Poly::constant(c.clone()))
    }

    /// `self(c * x)`.
    pub fn scale_variable(&self, c: &Rational) -> Poly {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Poly::new(out)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let Some(ds) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if ds < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv_lead = d.leading().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); ds - dd + 1];
        for i in (0..=ds - dd).rev() {
            let c = &r[i + dd] * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Primitive integer polynomial `p` and rational `c` with `self = c * p`,
    /// `lc(p) > 0`.
    pub(crate) fn to_primitive_integer(&self) -> (Rational, ZPoly) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: ZPoly = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let prim = intpoly::primitive_part(&ints);
        let lead = &ints[ints.len() - 1];
        let c = Rational::new(lead.clone(), den) / Rational::from_integer(prim[prim.len() - 1].clone());
        (c, prim)
    }

    /// Monic gcd over `Q[x]`, computed through primitive remainder sequences
    /// in `Z[x]`.
    pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (_, za) = a.to_primitive_integer();
        let (_, zb) = b.to_primitive_integer();
        Ok(Poly::from_bigints(&intpoly::gcd(&za, &zb)).monic())
    }

    /// `(g, s, t)` with `g = s*a + t*b` and `g` the monic gcd.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.leading().recip();
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Resultant of `a` and `b` by the Euclidean recurrence
    /// `Res(a, b) = (-1)^(mn) lc(b)^(m - deg r) Res(b, r)`, `r = a mod b`.
    pub fn resultant(a: &Poly, b: &Poly) -> Rational {
        let (Some(mut m), Some(mut n)) = (a.degree(), b.degree()) else {
            return Rational::zero();
        };
        let (mut f, mut g) = (a.clone(), b.clone());
        let mut acc = Rational::one();
        loop {
            if n == 0 {
                return acc * num_traits::pow(g.leading(), m);
            }
            let r = f.rem(&g).expect("nonzero divisor");
            let Some(k) = r.degree() else {
                return Rational::zero();
            };
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc *= num_traits::pow(g.leading(), m - k);
            f = g;
            g = r;
            m = n;
            n = k;
        }
    }

    /// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<Rational> {
        let n = self.degree().unwrap_or(0);
        if n < 2 {
            return Err(Error::DegreeTooSmall { needed: 2, found: n });
        }
        let mut d = Poly::resultant(self, &self.derivative()) / self.leading();
        if (n * (n - 1) / 2) % 2 == 1 {
            d = -d;
        }
        Ok(d)
    }

    pub fn is_squarefree(&self) -> bool {
        match Poly::gcd(self, &self.derivative()) {
            Ok(g) => g.degree() == Some(0),
            Err(_) => false,
        }
    }

    /// Rational roots, repeated according to multiplicity, ascending.
    pub fn rational_roots(&self) -> Result<Vec<Rational>> {
        if self.is_zero() {
            return Err(Error::ZeroInput("rational_roots"));
        }
        let fl = crate::polyfactor::factor_poly(self)?;
        let mut roots = Vec::new();
        for (g, mult) in &fl.factors {
            if g.degree() == Some(1) {
                for _ in 0..*mult {
                    roots.push(-g.coeff(0));
                }
            }
        }
        roots.sort();
        Ok(roots)
    }

    /// Coefficients as `"num/den"` strings, lowest degree first.
    pub fn to_dense_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_to_string).collect()
    }

    pub fn from_dense_strings<S: AsRef<str>>(coeffs: &[S]) -> Result<Poly> {
        Ok(Poly::new(
            coeffs
                .iter()
                .map(|s| parse_rational(s.as_ref()))
                .collect::<Result<_>>()?,
        ))
    }

    /// Sparse human-readable form such as `x^3 - 3*x - 1`.
    pub fn to_sparse_string(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sparse_string("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(&[2, 1]) * &p(&[4, -2, 1]), p(&[8, 0, 0, 1]));
        assert_eq!(p(&[8, 0, 0, 1]).exact_div(&p(&[2, 1])).unwrap(), p(&[4, -2, 1]));
        assert_eq!(p(&[0, 0, 0, 0, 1]).rem(&p(&[-2, 0, 0, 1])).unwrap(), p(&[0, 2]));
        assert_eq!(p(&[8, 0, 0, 1]).exact_div(&p(&[3, 1])), Err(Error::InexactDivision));
        assert_eq!(p(&[1, 1]).div_rem(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(Poly::gcd(&p(&[-1, 0, 1]), &p(&[1, -2, 1])).unwrap(), p(&[-1, 1]));
        // Psi_3 and Psi_2 of y^2 = x^3 + 1
        let psi3 = p(&[0, 12, 0, 0, 3]);
        let psi2 = p(&[1, 0, 0, 1]);
        assert_eq!(Poly::gcd(&psi3, &psi2).unwrap(), Poly::one());
        assert_ne!(Poly::resultant(&psi3, &psi2), rat(0));
        let f = p(&[-1, -3, 0, 1]);
        assert_eq!(Poly::gcd(&f, &f.derivative()).unwrap(), Poly::one());
        assert_eq!(Poly::gcd(&Poly::zero(), &Poly::zero()), Err(Error::GcdOfZeros));
        assert_eq!(Poly::gcd(&Poly::zero(), &p(&[2, 4])).unwrap(), p(&[1, 2]).monic());
    }

    #[test]
    fn ext_gcd_identity() {
        let a = p(&[-2, 0, 0, 1]);
        let b = p(&[0, 1]);
        let (g, s, t) = Poly::ext_gcd(&a, &b).unwrap();
        assert_eq!(g, Poly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(p(&[-1, -3, 0, 1]).discriminant().unwrap(), rat(81));
        assert_eq!(p(&[-2, 0, 0, 1]).discriminant().unwrap(), rat(-108));
        assert_eq!(p(&[1, 0, 1]).discriminant().unwrap(), rat(-4));
        assert_eq!(p(&[-1, -2, 1, 1]).discriminant().unwrap(), rat(49));
        assert!(p(&[1, 1]).discriminant().is_err());
        // depressed cubic formula -4p^3 - 27q^2
        for (pp, qq) in [(5i64, -7i64), (-15, 22), (0, 3)] {
            let f = p(&[qq, pp, 0, 1]);
            assert_eq!(f.discriminant().unwrap(), rat(-4 * pp * pp * pp - 27 * qq * qq));
        }
    }

    #[test]
    fn rational_root_examples() {
        // 3x(x^3 + 4k) with k = -2
        let f = p(&[0, -24, 0, 0, 3]);
        assert_eq!(f.rational_roots().unwrap(), vec![rat(0), rat(2)]);
        assert_eq!(p(&[1, 0, 0, 1]).rational_roots().unwrap(), vec![rat(-1)]);
        assert!(p(&[-1, -3, 0, 1]).rational_roots().unwrap().is_empty());
        let g = &p(&[1, 2]) * &p(&[1, 2]);
        assert_eq!(g.rational_roots().unwrap(), vec![ratio(-1, 2), ratio(-1, 2)]);
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[-1, -3, 0, 1]).to_string(), "x^3 - 3*x - 1");
        assert_eq!(p(&[0, 0, -1]).to_string(), "-x^2");
        assert_eq!(
            Poly::new(vec![ratio(1, 2), rat(0), ratio(-3, 4)]).to_string(),
            "-3/4*x^2 + 1/2"
        );
        assert_eq!(Poly::zero().to_string(), "0");
        let f = p(&[-1728, 0, 36, 1]);
        let dense = f.to_dense_strings();
        assert_eq!(dense, vec!["-1728/1", "0/1", "36/1", "1/1"]);
        assert_eq!(Poly::from_dense_strings(&dense).unwrap(), f);
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-20i64..20, 1..=max_deg + 1).prop_map(|c| Poly::from_ints(&c))
    }

    proptest! {
        #[test]
        fn exact_div_inverts_mul(a in small_poly(5), b in small_poly(4)) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
        }

        #[test]
        fn gcd_is_monic_common_divisor(a in small_poly(4), b in small_poly(4), c in small_poly(3)) {
            prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
            let x = &a * &c;
            let y = &b * &c;
            prop_assume!(!(x.is_zero() && y.is_zero()));
            let g = Poly::gcd(&x, &y).unwrap();
            prop_assert!(g.is_monic());
            prop_assert!(x.rem(&g).unwrap().is_zero());
            prop_assert!(y.rem(&g).unwrap().is_zero());
            prop_assert!(g.degree() >= c.degree());
        }

        #[test]
        fn discriminant_vanishes_iff_repeated_factor(a in small_poly(3), b in small_poly(2), repeat in any::<bool>()) {
            prop_assume!(a.degree().unwrap_or(0) >= 1 && b.degree().unwrap_or(0) >= 1);
            let f = if repeat { &(&a * &a) * &b } else { &a * &b };
            let d = f.discriminant().unwrap();
            let g = Poly::gcd(&f, &f.derivative()).unwrap();
            prop_assert_eq!(d.is_zero(), g.degree().unwrap() > 0);
        }
    }
}
