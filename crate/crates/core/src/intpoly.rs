//! Dense polynomials over `Z` (lowest degree first), used by gcd and by the
//! Zassenhaus factorizer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive_part(p: &[BigInt]) -> ZPoly {
    let mut g = content(p);
    if g.is_zero() {
        return Vec::new();
    }
    if p[degree(p).unwrap()].is_negative() {
        g = -g;
    }
    let mut out: ZPoly = p.iter().map(|c| c / &g).collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
pub(crate) fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = degree(b).expect("pseudo_rem by zero");
    let lb = &b[db];
    let mut r: ZPoly = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &lr * c;
        }
        trim(&mut r);
    }
    r
}

/// Exact quotient `a / b` over `Z`, or `None` if `b` does not divide `a`.
pub(crate) fn exact_quotient(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = degree(b)?;
    let mut r: ZPoly = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return Some(Vec::new());
    };
    if da < db {
        return None;
    }
    // cheap rejection on the constant terms
    if !b[0].is_zero() && !(&r[0] % &b[0]).is_zero() {
        return None;
    }
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            return None;
        }
        let (qc, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &qc * c;
        }
        q[shift] = qc;
        trim(&mut r);
    }
    Some(q)
}

/// Gcd over `Z[x]` by the primitive remainder sequence; result is primitive
/// with positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut u = primitive_part(a);
    let mut v = primitive_part(b);
    if degree(&u).is_none() {
        return v;
    }
    if degree(&v).is_none() {
        return u;
    }
    if degree(&u) < degree(&v) {
        std::mem::swap(&mut u, &mut v);
    }
    while degree(&v).is_some() {
        let r = pseudo_rem(&u, &v);
        u = v;
        v = primitive_part(&r);
    }
    primitive_part(&u)
}

/// Euclidean norm rounded up.
pub(crate) fn l2_norm_ceil(p: &[BigInt]) -> BigInt {
    let sq: BigInt = p.iter().map(|c| c * c).sum();
    let r = sq.sqrt();
    if &r * &r == sq {
        r
    } else {
        r + BigInt::one()
    }
}
