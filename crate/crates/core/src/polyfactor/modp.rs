//! Polynomials over the prime field `F_p` (`p < 2^32`), lowest degree first.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::Rng;

pub(crate) type FpPoly = Vec<u64>;

pub(crate) fn trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub(crate) fn from_ints(z: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    let mut out: FpPoly = z
        .iter()
        .map(|c| {
            let r = ((c % &pb) + &pb) % &pb;
            u64::try_from(r).expect("reduced residue fits")
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[u64], c: u64, p: u64) -> FpPoly {
    let mut out: FpPoly = a.iter().map(|&x| x * c % p).collect();
    trim(&mut out);
    out
}

pub(crate) fn monic(a: &[u64], p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv(l, p), p),
    }
}

pub(crate) fn div_rem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = degree(b).expect("division by zero polynomial mod p");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let li = inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * li % p;
        if c == 0 {
            continue;
        }
        q[i] = c;
        for (j, &bc) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p - c * bc % p) % p;
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    div_rem(a, b, p).1
}

/// Monic gcd.
pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut u = a.to_vec();
    let mut v = b.to_vec();
    trim(&mut u);
    trim(&mut v);
    while !v.is_empty() {
        let r = rem(&u, &v, p);
        u = v;
        v = r;
    }
    monic(&u, p)
}

/// `(g, s, t)` with `s*a + t*b = g` monic.
pub(crate) fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let l = inv(*r0.last().expect("gcd of zeros"), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub(crate) fn derivative(a: &[u64], p: u64) -> FpPoly {
    let mut out: FpPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn is_squarefree(a: &[u64], p: u64) -> bool {
    let d = derivative(a, p);
    if d.is_empty() {
        return degree(a) == Some(0);
    }
    degree(&gcd(a, &d, p)) == Some(0)
}

/// `base^e mod m`.
pub(crate) fn pow_poly_mod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> FpPoly {
    let mut result: FpPoly = rem(&[1], m, p);
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        result = rem(&mul(&result, &result, p), m, p);
        if e.bit(i) {
            result = rem(&mul(&result, &b, p), m, p);
        }
    }
    result
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(d, g_d)` where `g_d` is the product of all irreducible factors
/// of degree `d`.
pub(crate) fn distinct_degree(f: &[u64], p: u64) -> Vec<(usize, FpPoly)> {
    let mut out = Vec::new();
    let mut rest = monic(f, p);
    let x: FpPoly = vec![0, 1];
    let mut h = rem(&x, &rest, p);
    let pe = BigUint::from(p);
    let mut d = 0;
    while let Some(dr) = degree(&rest) {
        d += 1;
        if 2 * d > dr {
            if dr > 0 {
                out.push((dr, rest));
            }
            break;
        }
        h = pow_poly_mod(&h, &pe, &rest, p);
        let g = gcd(&rest, &sub(&h, &x, p), p);
        if degree(&g).unwrap_or(0) > 0 {
            rest = div_rem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
            out.push((d, g));
        }
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting (odd `p`) of a monic product of
/// distinct irreducibles of degree `d`.
pub(crate) fn equal_degree<R: Rng>(f: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<FpPoly> {
    let n = degree(f).unwrap_or(0);
    if n == d {
        return vec![f.to_vec()];
    }
    let exp = (num_traits::pow(BigUint::from(p), d) - BigUint::one()) >> 1;
    loop {
        let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
        trim(&mut a);
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let g = gcd(f, &a, p);
        let g = if degree(&g).unwrap_or(0) > 0 {
            g
        } else {
            let b = pow_poly_mod(&a, &exp, f, p);
            gcd(f, &sub(&b, &[1], p), p)
        };
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = div_rem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&h, d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial over `F_p`,
/// sorted by degree then coefficients.
pub(crate) fn factor_squarefree<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<FpPoly> {
    let mut out = Vec::new();
    for (d, g) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Degrees of the irreducible factors of a squarefree polynomial over `F_p`.
pub(crate) fn factor_degrees(f: &[u64], p: u64) -> Vec<usize> {
    let mut out = Vec::new();
    for (d, g) in distinct_degree(f, p) {
        let count = degree(&g).unwrap_or(0) / d;
        out.extend(std::iter::repeat(d).take(count));
    }
    out
}

pub(crate) fn is_zero_mod(c: &BigInt, p: u64) -> bool {
    (c % BigInt::from(p)).is_zero()
}
