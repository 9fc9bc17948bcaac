//! Quadratic Hensel lifting of a modular factorization to `p^a`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp::{self, FpPoly};
use crate::intpoly::{self, ZPoly};

fn reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    intpoly::trim(&mut out);
    out
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let s: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    reduce(&s, m)
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let s: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    reduce(&s, m)
}

fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    reduce(&intpoly::mul(a, b), m)
}

/// Division by a monic polynomial modulo `m`.
fn div_rem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = intpoly::degree(b).expect("monic divisor");
    debug_assert!(b[db].is_one());
    let mut r = reduce(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i + j] = (&r[i + j] - &c * bc).mod_floor(m);
        }
        q[i] = c;
    }
    r.truncate(db);
    intpoly::trim(&mut r);
    intpoly::trim(&mut q);
    (q, r)
}

fn to_z(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts `f = g * h (mod p)` with `h` monic and `lc(g) = lc(f)` to the same
/// identity modulo `target` (a power of `p`).
fn lift_pair(f: &[BigInt], g0: &FpPoly, h0: &FpPoly, p: u64, target: &BigInt) -> (ZPoly, ZPoly) {
    let (one, s0, t0) = modp::ext_gcd(g0, h0, p);
    debug_assert_eq!(one, vec![1]);
    let mut g = to_z(g0);
    let mut h = to_z(h0);
    let mut s = to_z(&s0);
    let mut t = to_z(&t0);
    let mut m = BigInt::from(p);
    while &m < target {
        let m2 = (&m * &m).min(target.clone());
        let e = sub(f, &mul(&g, &h, &m2), &m2);
        let (q, r) = div_rem_monic(&mul(&s, &e, &m2), &h, &m2);
        let g_new = add(&add(&g, &mul(&t, &e, &m2), &m2), &mul(&q, &g, &m2), &m2);
        let h_new = add(&h, &r, &m2);
        let b = sub(
            &add(&mul(&s, &g_new, &m2), &mul(&t, &h_new, &m2), &m2),
            &[BigInt::one()],
            &m2,
        );
        let (c, d) = div_rem_monic(&mul(&s, &b, &m2), &h_new, &m2);
        s = sub(&s, &d, &m2);
        t = sub(&sub(&t, &mul(&t, &b, &m2), &m2), &mul(&c, &g_new, &m2), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    (g, h)
}

/// Lifts the monic modular factors of `f` (whose leading coefficient is a
/// unit mod `p`) to monic factors modulo `target`.
pub(crate) fn multifactor_lift(f: &[BigInt], factors: &[FpPoly], p: u64, target: &BigInt) -> Vec<ZPoly> {
    let lc = &f[intpoly::degree(f).expect("nonzero")];
    if factors.len() == 1 {
        let inv = mod_inverse(lc, target);
        return vec![reduce(&f.iter().map(|c| c * &inv).collect::<ZPoly>(), target)];
    }
    let k = factors.len() / 2;
    let prod = |fs: &[FpPoly]| fs.iter().fold(vec![1u64], |acc, g| modp::mul(&acc, g, p));
    let lc_p = u64::try_from(lc.mod_floor(&BigInt::from(p))).unwrap();
    let g0 = modp::scale(&prod(&factors[..k]), lc_p, p);
    let h0 = prod(&factors[k..]);
    let (g, h) = lift_pair(f, &g0, &h0, p, target);
    let inv = mod_inverse(lc, target);
    let g_monic = reduce(&g.iter().map(|c| c * &inv).collect::<ZPoly>(), target);
    let mut out = multifactor_lift(&g_monic, &factors[..k], p, target);
    out.extend(multifactor_lift(&h, &factors[k..], p, target));
    out
}
