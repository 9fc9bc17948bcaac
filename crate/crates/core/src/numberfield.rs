//! Cubic number fields `Q[x]/(g)`: element arithmetic, norms, square roots
//! and root finding through Trager's norm-and-gcd factorization.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{self, rational_to_string, Rational};
use crate::poly::Poly;
use crate::polyfactor::{self, modp, FactorList};

/// `Q[x]/(g)` for a monic irreducible cubic `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicField {
    poly: Poly,
}

impl CubicField {
    pub fn new(g: Poly) -> Result<Arc<CubicField>> {
        if g.degree() != Some(3) || !g.is_monic() {
            return Err(Error::NotIrreducibleCubic(g.to_string()));
        }
        if !polyfactor::is_irreducible(&g)? {
            return Err(Error::NotIrreducibleCubic(g.to_string()));
        }
        Ok(Arc::new(CubicField { poly: g }))
    }

    pub fn defining_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn discriminant(&self) -> Rational {
        self.poly.discriminant().expect("cubic")
    }

    /// The class of `x`.
    pub fn generator(self: &Arc<Self>) -> FieldElem {
        FieldElem::from_coords(self, [Rational::zero(), Rational::one(), Rational::zero()])
    }

    pub fn zero(self: &Arc<Self>) -> FieldElem {
        self.rational(Rational::zero())
    }

    pub fn one(self: &Arc<Self>) -> FieldElem {
        self.rational(Rational::one())
    }

    pub fn rational(self: &Arc<Self>, q: Rational) -> FieldElem {
        FieldElem::from_coords(self, [q, Rational::zero(), Rational::zero()])
    }

    /// Reduces a polynomial in the generator modulo `g`.
    pub fn element(self: &Arc<Self>, p: &Poly) -> FieldElem {
        let r = p.rem(&self.poly).expect("nonzero modulus");
        FieldElem::from_coords(self, [r.coeff(0), r.coeff(1), r.coeff(2)])
    }

    fn g_low(&self) -> [Rational; 3] {
        [self.poly.coeff(0), self.poly.coeff(1), self.poly.coeff(2)]
    }
}

impl fmt::Display for CubicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[a]/({})", self.poly.to_sparse_string("a"))
    }
}

/// `c0 + c1*a + c2*a^2` in a cubic field, always reduced.
#[derive(Clone, Debug)]
pub struct FieldElem {
    field: Arc<CubicField>,
    c: [Rational; 3],
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for FieldElem {}

impl FieldElem {
    pub fn from_coords(field: &Arc<CubicField>, c: [Rational; 3]) -> Self {
        FieldElem {
            field: field.clone(),
            c,
        }
    }

    pub fn field(&self) -> &Arc<CubicField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.c
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.c.to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.c[1].is_zero() && self.c[2].is_zero()).then_some(&self.c[0])
    }

    fn check(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "{}",
            Error::FieldMismatch
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let c = [0, 1, 2].map(|i| &self.c[i] + &other.c[i]);
        FieldElem::from_coords(&self.field, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let c = [0, 1, 2].map(|i| &self.c[i] - &other.c[i]);
        FieldElem::from_coords(&self.field, c)
    }

    pub fn neg(&self) -> Self {
        FieldElem::from_coords(&self.field, self.c.clone().map(|c| -c))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FieldElem::from_coords(&self.field, self.c.clone().map(|c| c * q))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut d: [Rational; 5] = Default::default();
        for i in 0..3 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                d[i + j] += &self.c[i] * &other.c[j];
            }
        }
        let g = self.field.g_low();
        for i in (3..5).rev() {
            let top = std::mem::take(&mut d[i]);
            if top.is_zero() {
                continue;
            }
            for (k, gk) in g.iter().enumerate() {
                d[i - 3 + k] -= &top * gk;
            }
        }
        let [d0, d1, d2, _, _] = d;
        FieldElem::from_coords(&self.field, [d0, d1, d2])
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput("inverse"));
        }
        let (g, s, _) = Poly::ext_gcd(&self.to_poly(), self.field.defining_poly())?;
        if g != Poly::one() {
            return Err(Error::Internal("defining polynomial is not irreducible".into()));
        }
        Ok(self.field.element(&s))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        Ok(acc)
    }

    /// Product of the conjugates: `Res(g, e(x))`.
    pub fn norm(&self) -> Rational {
        Poly::resultant(self.field.defining_poly(), &self.to_poly())
    }

    pub fn trace(&self) -> Rational {
        let m = self.mult_matrix();
        &m[0][0] + &m[1][1] + &m[2][2]
    }

    /// Matrix of multiplication by `self` on the basis `1, a, a^2`
    /// (column `j` holds the coordinates of `self * a^j`).
    pub fn mult_matrix(&self) -> [[Rational; 3]; 3] {
        let mut cols = Vec::with_capacity(3);
        let a = self.field.generator();
        let mut cur = self.clone();
        for _ in 0..3 {
            cols.push(cur.c.clone());
            cur = cur.mul(&a);
        }
        [0, 1, 2].map(|r| [0, 1, 2].map(|c| cols[c][r].clone()))
    }

    /// Evaluates a rational polynomial at `self`.
    pub fn eval_poly(&self, p: &Poly) -> Self {
        p.coeffs().iter().rev().fold(self.field.zero(), |acc, c| {
            acc.mul(self).add(&self.field.rational(c.clone()))
        })
    }

    /// Coordinates as `"num/den"` strings.
    pub fn to_coord_strings(&self) -> [String; 3] {
        self.c.clone().map(|c| rational_to_string(&c))
    }

    /// Sign normalization used for canonical square roots: the lowest
    /// nonzero coordinate is positive.
    fn canonical_sign(self) -> Self {
        match self.c.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly().to_sparse_string("a"))
    }
}

/// Polynomials over a cubic field, lowest degree first.
type KPoly = Vec<FieldElem>;

fn kp_trim(p: &mut KPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn kp_embed(field: &Arc<CubicField>, p: &Poly) -> KPoly {
    p.coeffs().iter().map(|c| field.rational(c.clone())).collect()
}

fn kp_monic(p: &[FieldElem]) -> Result<KPoly> {
    let inv = p.last().expect("nonzero").inverse()?;
    Ok(p.iter().map(|c| c.mul(&inv)).collect())
}

fn kp_rem(a: &[FieldElem], b: &[FieldElem]) -> Result<KPoly> {
    let db = b.len() - 1;
    let inv = b[db].inverse()?;
    let mut r: KPoly = a.to_vec();
    kp_trim(&mut r);
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top].mul(&inv);
        for (j, bc) in b.iter().enumerate() {
            r[top - db + j] = r[top - db + j].sub(&c.mul(bc));
        }
        kp_trim(&mut r);
    }
    Ok(r)
}

fn kp_gcd(a: &[FieldElem], b: &[FieldElem]) -> Result<KPoly> {
    let mut u: KPoly = a.to_vec();
    let mut v: KPoly = b.to_vec();
    kp_trim(&mut u);
    kp_trim(&mut v);
    while !v.is_empty() {
        let r = kp_rem(&u, &v)?;
        u = std::mem::replace(&mut v, r);
    }
    kp_monic(&u)
}

/// `p(y + c)` by Horner's rule.
fn kp_shift(p: &[FieldElem], c: &FieldElem) -> KPoly {
    let field = c.field().clone();
    let mut acc: KPoly = Vec::new();
    for coeff in p.iter().rev() {
        // acc = acc * (y + c) + coeff
        let mut next: KPoly = vec![field.zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] = next[i + 1].add(a);
            next[i] = next[i].add(&a.mul(c));
        }
        next[0] = next[0].add(coeff);
        acc = next;
    }
    kp_trim(&mut acc);
    acc
}

/// `N_{K(y)/Q(y)}(h)`: the determinant of multiplication by `h` as a
/// 3x3 matrix over `Q[y]`.
fn norm_poly(h: &[FieldElem]) -> Poly {
    let mut m: [[Poly; 3]; 3] = Default::default();
    for (j, coeff) in h.iter().enumerate() {
        let mm = coeff.mult_matrix();
        for r in 0..3 {
            for c in 0..3 {
                if !mm[r][c].is_zero() {
                    m[r][c] = &m[r][c] + &Poly::monomial(mm[r][c].clone(), j);
                }
            }
        }
    }
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1]);
    let t0 = &m[0][0] * &minor(1, 2, 1, 2);
    let t1 = &m[0][1] * &minor(1, 2, 0, 2);
    let t2 = &m[0][2] * &minor(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

/// Monic irreducible factors over `K` of a squarefree `h` in `K[y]`
/// (Trager): shift until the norm is squarefree, factor the norm over `Q`,
/// and pull each factor back with a gcd over `K`.
fn trager_factor(h: &[FieldElem]) -> Result<Vec<KPoly>> {
    let field = h[0].field().clone();
    let alpha = field.generator();
    let h = kp_monic(h)?;
    if h.len() <= 2 {
        return Ok(vec![h]);
    }
    for s in 0i64.. {
        let shift = alpha.scale(&exactnum::rat(-s));
        let hs = kp_shift(&h, &shift);
        let norm = norm_poly(&hs);
        if !norm.is_squarefree() {
            continue;
        }
        let fl = polyfactor::factor_poly(&norm)?;
        let back = alpha.scale(&exactnum::rat(s));
        let mut out = Vec::new();
        for (q, _) in &fl.factors {
            let g = kp_gcd(&hs, &kp_embed(&field, q))?;
            if g.len() > 1 {
                out.push(kp_shift(&g, &back));
            }
        }
        let total: usize = out.iter().map(|g| g.len() - 1).sum();
        if total != h.len() - 1 {
            return Err(Error::Internal("Trager factors do not account for the degree".into()));
        }
        return Ok(out);
    }
    unreachable!()
}

fn sort_elems(v: &mut [FieldElem]) {
    v.sort_by(|a, b| a.c.cmp(&b.c));
}

/// Roots in `K` of the irreducible factors of a rational polynomial; only
/// factors of degree 1 or 3 can contribute.
pub fn roots_in_field_factored(fl: &FactorList, field: &Arc<CubicField>) -> Result<Vec<FieldElem>> {
    let mut roots = Vec::new();
    for (g, _) in &fl.factors {
        match g.degree() {
            Some(1) => roots.push(field.rational(-g.coeff(0))),
            Some(3) => {
                for lin in trager_factor(&kp_embed(field, g))? {
                    if lin.len() == 2 {
                        roots.push(lin[0].neg());
                    }
                }
            }
            _ => {}
        }
    }
    sort_elems(&mut roots);
    Ok(roots)
}

/// Distinct roots of `f` lying in `K`.
pub fn roots_in_field(f: &Poly, field: &Arc<CubicField>) -> Result<Vec<FieldElem>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("roots_in_field"));
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    roots_in_field_factored(&polyfactor::factor_poly(f)?, field)
}

/// Factorization over `K` of a rational polynomial, as monic polynomials
/// over `K` with multiplicities.
pub fn factor_over_field(f: &Poly, field: &Arc<CubicField>) -> Result<Vec<(Vec<FieldElem>, u32)>> {
    let fl = polyfactor::factor_poly(f)?;
    let mut out = Vec::new();
    for (g, m) in &fl.factors {
        for h in trager_factor(&kp_embed(field, g))? {
            out.push((h, *m));
        }
    }
    Ok(out)
}

fn reduce_mod_p(q: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    if (q.denom() % &pb).is_zero() {
        return None;
    }
    let n = u64::try_from(((q.numer() % &pb) + &pb) % &pb).ok()?;
    let d = u64::try_from(((q.denom() % &pb) + &pb) % &pb).ok()?;
    Some(n * modp::inv(d, p) % p)
}

/// Euler's criterion in `F_p[x]/(g mod p)` at primes where `g` stays
/// irreducible. `Some(false)` proves that `e` is not a square in `K`.
fn modular_square_filter(e: &FieldElem) -> Option<bool> {
    let g = e.field().defining_poly();
    let mut tried = 0;
    for &p in exactnum::primes_below_million().iter().skip(1).take(60) {
        let p = p as u64;
        let gp: Option<Vec<u64>> = g.coeffs().iter().map(|c| reduce_mod_p(c, p)).collect();
        let ep: Option<Vec<u64>> = e.coords().iter().map(|c| reduce_mod_p(c, p)).collect();
        let (Some(gp), Some(mut ep)) = (gp, ep) else {
            continue;
        };
        if !modp::is_squarefree(&gp, p) || modp::factor_degrees(&gp, p) != vec![3] {
            continue;
        }
        modp::trim(&mut ep);
        if ep.is_empty() {
            continue;
        }
        let exp = (num_bigint::BigUint::from(p).pow(3) - 1u32) >> 1;
        let r = modp::pow_poly_mod(&ep, &exp, &gp, p);
        if r != vec![1] {
            return Some(false);
        }
        tried += 1;
        if tried == 4 {
            break;
        }
    }
    None
}

/// At a prime where both cubics are squarefree, neither divides the index
/// of its order, so both factor like the prime itself (Dedekind); the
/// factor degrees must then agree for isomorphic fields.
fn splitting_types_differ(g1: &Poly, g2: &Poly) -> bool {
    let reduce = |g: &Poly, p: u64| -> Option<Vec<u64>> {
        let mut v: Vec<u64> = g.coeffs().iter().map(|c| reduce_mod_p(c, p)).collect::<Option<_>>()?;
        modp::trim(&mut v);
        (v.len() == 4 && modp::is_squarefree(&v, p)).then_some(v)
    };
    for &p in exactnum::primes_below_million().iter().take(40) {
        let p = p as u64;
        let (Some(a), Some(b)) = (reduce(g1, p), reduce(g2, p)) else {
            continue;
        };
        let mut da = modp::factor_degrees(&a, p);
        let mut db = modp::factor_degrees(&b, p);
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return true;
        }
    }
    false
}

/// Square root in `K` by Trager factorization of `y^2 - e` alone.
pub fn sqrt_trager(e: &FieldElem) -> Result<Option<FieldElem>> {
    if e.is_zero() {
        return Ok(Some(e.clone()));
    }
    let field = e.field().clone();
    let h: KPoly = vec![e.neg(), field.zero(), field.one()];
    for lin in trager_factor(&h)? {
        if lin.len() == 2 {
            let w = lin[0].neg().canonical_sign();
            if &w.square() != e {
                return Err(Error::Internal(format!("square root witness {w} fails")));
            }
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `Some(w)` with `w^2 = e` if `e` is a square in `K`. The norm and
/// inert-prime tests only ever reject; every witness comes from Trager
/// factorization and is re-verified by squaring.
pub fn is_square(e: &FieldElem) -> Result<Option<FieldElem>> {
    if e.is_zero() {
        return Ok(Some(e.clone()));
    }
    if let Some(q) = e.as_rational() {
        // a cubic field has no quadratic subfield
        return Ok(exactnum::is_perfect_power(q, 2).map(|r| e.field().rational(r)));
    }
    if !exactnum::is_square(&e.norm()) {
        return Ok(None);
    }
    if modular_square_filter(e) == Some(false) {
        return Ok(None);
    }
    sqrt_trager(e)
}

/// `(d, w)` with `d` squarefree and `e = d * w^2`.
pub fn twist_witness(e: &FieldElem) -> Result<(BigInt, FieldElem)> {
    if e.is_zero() {
        return Err(Error::ZeroInput("twist_witness"));
    }
    let d = exactnum::squarefree_part(&e.norm())?;
    let scaled = e.scale(&Rational::from_integer(d.clone()).recip());
    match is_square(&scaled)? {
        Some(w) => Ok((d, w)),
        None => Err(Error::NoSquarefreeTwist),
    }
}

/// A monic irreducible cubic defines a Galois (cyclic) field iff its
/// discriminant is a rational square.
pub fn galois_cubic_test(g: &Poly) -> Result<bool> {
    let field = CubicField::new(g.clone())?;
    Ok(exactnum::is_square(&field.discriminant()))
}

/// Two cubic fields are isomorphic iff the defining polynomial of one has a
/// root in the other.
pub fn fields_isomorphic(k1: &Arc<CubicField>, k2: &Arc<CubicField>) -> Result<bool> {
    if k1.defining_poly() == k2.defining_poly() {
        return Ok(true);
    }
    // discriminants of isomorphic fields differ by a rational square
    let ratio = k1.discriminant() / k2.discriminant();
    if !exactnum::is_square(&ratio) {
        return Ok(false);
    }
    if splitting_types_differ(k1.defining_poly(), k2.defining_poly()) {
        return Ok(false);
    }
    Ok(!roots_in_field(k2.defining_poly(), k1)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};
    use proptest::prelude::*;

    fn field(c: &[i64]) -> Arc<CubicField> {
        CubicField::new(Poly::from_ints(c)).unwrap()
    }

    fn elem(k: &Arc<CubicField>, c: [i64; 3]) -> FieldElem {
        FieldElem::from_coords(k, c.map(rat))
    }

    #[test]
    fn construction_rejects_bad_polys() {
        assert!(CubicField::new(Poly::from_ints(&[8, 0, 0, 1])).is_err());
        assert!(CubicField::new(Poly::from_ints(&[1, 0, 1])).is_err());
        assert!(CubicField::new(Poly::from_ints(&[-2, 0, 0, 2])).is_err());
    }

    #[test]
    fn cube_root_of_two_arithmetic() {
        let k = field(&[-2, 0, 0, 1]);
        let a = k.generator();
        assert_eq!(a.mul(&a.square()), k.rational(rat(2)));
        let inv = a.inverse().unwrap();
        assert_eq!(inv, FieldElem::from_coords(&k, [rat(0), rat(0), ratio(1, 2)]));
        assert_eq!(a.norm(), rat(2));
        assert_eq!(k.rational(ratio(3, 2)).norm(), ratio(27, 8));
        assert_eq!(a.pow(-3).unwrap(), k.rational(ratio(1, 2)));
        assert!(k.zero().inverse().is_err());
    }

    #[test]
    fn galois_cubic_identity() {
        // (2a^2 - 4a - 1)^2 - 1 = 4 (a^2 - a - 1)^3 in Q[a]/(a^3 - 3a - 1)
        let k = field(&[-1, -3, 0, 1]);
        let gamma = elem(&k, [-1, -4, 2]);
        let lhs = gamma.square().sub(&k.one());
        let rhs = elem(&k, [-1, -1, 1]).pow(3).unwrap().scale(&rat(4));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn norm_matches_root_product_oracle() {
        // N(36a - 9) = 36^3 * prod(a_i - 1/4) = -36^3 * g(1/4) for monic g
        let g = Poly::from_ints(&[-1, -2, 1, 1]);
        let k = CubicField::new(g.clone()).unwrap();
        let e = elem(&k, [-9, 36, 0]);
        let oracle = -rat(36 * 36 * 36) * g.eval(&ratio(1, 4));
        assert_eq!(e.norm(), oracle);
        assert_eq!(e.norm(), rat(66339));
        assert_eq!(e.norm(), e.mult_matrix_det());
    }

    impl FieldElem {
        fn mult_matrix_det(&self) -> Rational {
            let m = self.mult_matrix();
            &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
        }
    }

    #[test]
    fn square_roots() {
        let k = field(&[-1, -2, 1, 1]);
        let a = k.generator();
        let sq = a.scale(&rat(108)).square();
        assert_eq!(is_square(&sq).unwrap(), Some(a.scale(&rat(108))));
        let k2 = field(&[-2, 0, 0, 1]);
        assert_eq!(is_square(&k2.generator()).unwrap(), None);
        assert_eq!(sqrt_trager(&k2.generator()).unwrap(), None);
        assert_eq!(is_square(&k2.rational(rat(9))).unwrap(), Some(k2.rational(rat(3))));
    }

    #[test]
    fn twist_witness_of_rational_square() {
        let k = field(&[-2, 0, 0, 1]);
        let (d, w) = twist_witness(&k.rational(rat(9))).unwrap();
        assert_eq!(d, BigInt::from(1));
        assert_eq!(w, k.rational(rat(3)));
        assert!(twist_witness(&k.zero()).is_err());
    }

    #[test]
    fn roots_examples() {
        let k = field(&[-2, 0, 0, 1]);
        let roots = roots_in_field(&Poly::from_ints(&[-16, 0, 0, 1]), &k).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].pow(3).unwrap(), k.rational(rat(16)));
        // the root is 2 * cbrt(2)
        assert_eq!(roots[0], elem(&k, [0, 2, 0]));
        let g = field(&[-1, -3, 0, 1]);
        assert_eq!(roots_in_field(&Poly::from_ints(&[-1, -3, 0, 1]), &g).unwrap().len(), 3);
        assert!(roots_in_field(&Poly::from_ints(&[1, 0, 1]), &k).unwrap().is_empty());
    }

    #[test]
    fn galois_test_examples() {
        assert!(galois_cubic_test(&Poly::from_ints(&[-1, -3, 0, 1])).unwrap());
        assert!(!galois_cubic_test(&Poly::from_ints(&[-2, 0, 0, 1])).unwrap());
        assert!(galois_cubic_test(&Poly::from_ints(&[-1, -2, 1, 1])).unwrap());
        assert!(galois_cubic_test(&Poly::from_ints(&[-1, 0, 1])).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let a = field(&[-2, 0, 0, 1]);
        let b = field(&[-16, 0, 0, 1]);
        let c = field(&[-3, 0, 0, 1]);
        assert!(fields_isomorphic(&a, &b).unwrap());
        assert!(fields_isomorphic(&b, &a).unwrap());
        assert!(!fields_isomorphic(&a, &c).unwrap());
        assert!(fields_isomorphic(&c, &c).unwrap());
        // same discriminant class, different fields: cbrt(2) vs cbrt(4)? isomorphic
        let d = field(&[-4, 0, 0, 1]);
        assert!(fields_isomorphic(&a, &d).unwrap());
        // cbrt(12) and cbrt(3) share discriminant class -3 but are not isomorphic
        let e = field(&[-12, 0, 0, 1]);
        assert!(!fields_isomorphic(&c, &e).unwrap());
    }

    #[test]
    fn factor_over_field_splits_cyclic_cubic() {
        let k = field(&[-1, -2, 1, 1]);
        let facs = factor_over_field(&Poly::from_ints(&[-1, -2, 1, 1]), &k).unwrap();
        assert_eq!(facs.len(), 3);
        let k2 = field(&[-2, 0, 0, 1]);
        let facs = factor_over_field(&Poly::from_ints(&[-2, 0, 0, 1]), &k2).unwrap();
        let mut degs: Vec<usize> = facs.iter().map(|(h, _)| h.len() - 1).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 2]);
    }

    #[test]
    fn twist_witnesses_in_the_cyclic_field_of_conductor_seven() {
        let k = field(&[-1, -2, 1, 1]);
        let f7 = Poly::from_ints(&[-71442, -2835, 0, 1]);
        let e = elem(&k, [-9, 36, 0]).eval_poly(&f7);
        let (d, w) = twist_witness(&e).unwrap();
        assert_eq!(d, BigInt::from(-7));
        assert_eq!(w, elem(&k, [0, 108, 0]));
        let w2 = is_square(&e.scale(&ratio(-1, 7))).unwrap().unwrap();
        assert_eq!(w2, elem(&k, [0, 108, 0]));

        let f28 = Poly::from_ints(&[5586, -595, 0, 1]);
        let e = elem(&k, [13, -4, 4]).eval_poly(&f28);
        let (d, w) = twist_witness(&e).unwrap();
        assert_eq!(d, BigInt::from(7));
        assert_eq!(w, elem(&k, [4, 12, -12]));
    }

    fn corpus() -> Vec<Arc<CubicField>> {
        [
            [-2, 0, 0, 1],
            [-1, -3, 0, 1],
            [-1, -2, 1, 1],
            [1, 1, -1, 1],
            [-1, 3, -1, 1],
        ]
        .iter()
        .map(|c| field(c))
        .collect()
    }

    fn coords() -> impl Strategy<Value = [i64; 3]> {
        [-30i64..30, -30i64..30, -30i64..30]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn norm_is_multiplicative(i in 0usize..5, x in coords(), y in coords()) {
            let k = &corpus()[i];
            let a = elem(k, x);
            let b = elem(k, y);
            prop_assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        }

        #[test]
        fn square_of_element_has_root(i in 0usize..5, x in coords()) {
            let k = &corpus()[i];
            let b = elem(k, x);
            let w = is_square(&b.square()).unwrap().unwrap();
            prop_assert!(w == b || w == b.neg());
        }

        #[test]
        fn prefiltered_and_exact_routes_agree(i in 0usize..5, x in coords()) {
            let k = &corpus()[i];
            let e = elem(k, x);
            prop_assert_eq!(is_square(&e).unwrap().is_some(), sqrt_trager(&e).unwrap().is_some());
        }

        #[test]
        fn inverse_is_inverse(i in 0usize..5, x in coords()) {
            let k = &corpus()[i];
            let e = elem(k, x);
            prop_assume!(!e.is_zero());
            prop_assert_eq!(e.mul(&e.inverse().unwrap()), k.one());
        }

        #[test]
        fn twist_witness_reconstructs(i in 0usize..5, x in coords(), d in -30i64..30) {
            let k = &corpus()[i];
            let b = elem(k, x);
            prop_assume!(!b.is_zero() && d != 0);
            let d = exactnum::squarefree_part(&rat(d)).unwrap();
            let e = b.square().scale(&Rational::from_integer(d.clone()));
            let (d2, w) = twist_witness(&e).unwrap();
            prop_assert_eq!(&d2, &d);
            prop_assert_eq!(w.square().scale(&Rational::from_integer(d2)), e);
        }
    }
}
