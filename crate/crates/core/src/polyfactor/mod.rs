//! Factorization of univariate polynomials over `Q`.
//!
//! Squarefree decomposition, then Zassenhaus on each squarefree part:
//! factor modulo a well-chosen prime (distinct-degree + Cantor–Zassenhaus),
//! Hensel-lift past the Landau–Mignotte bound and recombine by subset search.

mod hensel;
pub(crate) mod modp;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::intpoly::{self, ZPoly};
use crate::poly::Poly;

pub const DEFAULT_SEED: u64 = 0x5eed_c0de_2019_0716;

/// Number of suitable primes inspected when choosing the modulus.
const PRIME_CANDIDATES: usize = 10;

/// Seed for the equal-degree splitting RNG; `CMTORSION_SEED` overrides the
/// built-in default. Read once per process.
pub fn factor_seed() -> u64 {
    static SEED: OnceLock<u64> = OnceLock::new();
    *SEED.get_or_init(|| {
        std::env::var("CMTORSION_SEED")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_SEED)
    })
}

/// `f = content * prod(factor^mult)` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList {
    pub content: Rational,
    pub factors: Vec<(Poly, u32)>,
}

impl FactorList {
    pub fn reassemble(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.content.clone()), |acc, (g, m)| &acc * &g.pow(*m))
    }

    pub fn factors_of_degree(&self, d: usize) -> impl Iterator<Item = &Poly> {
        self.factors
            .iter()
            .filter(move |(g, _)| g.degree() == Some(d))
            .map(|(g, _)| g)
    }

    /// Degrees of the distinct irreducible factors (ascending).
    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().filter_map(|(g, _)| g.degree()).collect()
    }
}

fn canonical_order(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Yun's squarefree decomposition of a monic polynomial: `(part, multiplicity)`.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = Poly::gcd(&f, &df)?;
    let mut b = f.exact_div(&a0)?;
    let c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = Poly::gcd(&b, &d)?;
        let b_next = b.exact_div(&a)?;
        let c_next = d.exact_div(&a)?;
        d = &c_next - &b_next.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        b = b_next;
        i += 1;
    }
    Ok(out)
}

/// Complete factorization over `Q` with deterministic ordering.
pub fn factor_poly(f: &Poly) -> Result<FactorList> {
    factor_poly_seeded(f, factor_seed())
}

pub fn factor_poly_seeded(f: &Poly, seed: u64) -> Result<FactorList> {
    if f.is_zero() {
        return Err(Error::ZeroInput("factor_poly"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        for g in factor_squarefree(&part, &mut rng)? {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| canonical_order(&a.0, &b.0));
    let fl = FactorList {
        content: f.leading(),
        factors,
    };
    if &fl.reassemble() != f {
        return Err(Error::Internal(format!("factorization of {f} does not reassemble")));
    }
    verify_modular_degrees(&fl)?;
    Ok(fl)
}

/// Monic irreducible factors of exactly degree `d`.
pub fn irreducible_factors_of_degree(f: &Poly, d: usize) -> Result<Vec<Poly>> {
    Ok(factor_poly(f)?.factors_of_degree(d).cloned().collect())
}

pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let fl = factor_poly(f)?;
    Ok(fl.factors.len() == 1 && fl.factors[0].1 == 1 && f.degree().unwrap_or(0) > 0)
}

fn integer_coeffs(f: &Poly) -> Result<ZPoly> {
    f.coeffs()
        .iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::InvalidInput(format!("{f} has non-integer coefficients")))
            }
        })
        .collect()
}

/// Degrees of the irreducible factors of `f` over `F_p`, ascending.
pub fn factor_degrees_mod_p(f: &Poly, p: u64) -> Result<Vec<usize>> {
    let z = integer_coeffs(f)?;
    if z.is_empty() || modp::is_zero_mod(z.last().unwrap(), p) {
        return Err(Error::UnsuitablePrime(p));
    }
    let fp = modp::from_ints(&z, p);
    if !modp::is_squarefree(&fp, p) {
        return Err(Error::UnsuitablePrime(p));
    }
    let mut degs = modp::factor_degrees(&fp, p);
    degs.sort_unstable();
    Ok(degs)
}

/// Modular oracle: for a prime `p` suitable for the radical of the input,
/// the mod-p factor degrees of the radical must be exactly the union of the
/// mod-p factor degrees of the individual rational factors.
pub fn check_degree_consistency(fl: &FactorList, p: u64) -> Result<bool> {
    let radical = fl.factors.iter().fold(Poly::one(), |acc, (g, _)| &acc * g);
    if radical.is_constant() {
        return Ok(true);
    }
    let (_, z) = radical.to_primitive_integer();
    let mut whole = factor_degrees_mod_p(&Poly::from_bigints(&z), p)?;
    whole.sort_unstable();
    let mut parts = Vec::new();
    for (g, _) in &fl.factors {
        let (_, zg) = g.to_primitive_integer();
        let degs = factor_degrees_mod_p(&Poly::from_bigints(&zg), p)?;
        if degs.iter().sum::<usize>() != g.degree().unwrap_or(0) {
            return Ok(false);
        }
        parts.extend(degs);
    }
    parts.sort_unstable();
    Ok(parts == whole)
}

/// First prime at least `start` that is suitable for the radical of `fl`.
pub fn suitable_prime(fl: &FactorList, start: u64) -> Option<u64> {
    let radical = fl.factors.iter().fold(Poly::one(), |acc, (g, _)| &acc * g);
    let (_, z) = radical.to_primitive_integer();
    crate::exactnum::primes_below_million()
        .iter()
        .map(|&p| p as u64)
        .filter(|&p| p >= start)
        .take(200)
        .find(|&p| {
            !z.is_empty() && !modp::is_zero_mod(z.last().unwrap(), p) && modp::is_squarefree(&modp::from_ints(&z, p), p)
        })
}

static FACTORIZATIONS: AtomicU64 = AtomicU64::new(0);
static ORACLE_CHECKED: AtomicU64 = AtomicU64::new(0);

/// Process-wide counters: `(factorizations completed, factorizations whose
/// mod-p degree oracle ran and agreed)`. Factorizations into linear factors
/// only are counted as checked, since their degrees cannot disagree.
pub fn oracle_stats() -> (u64, u64) {
    (
        FACTORIZATIONS.load(Ordering::Relaxed),
        ORACLE_CHECKED.load(Ordering::Relaxed),
    )
}

fn verify_modular_degrees(fl: &FactorList) -> Result<()> {
    FACTORIZATIONS.fetch_add(1, Ordering::Relaxed);
    if fl.factors.iter().all(|(g, _)| g.degree() == Some(1)) {
        ORACLE_CHECKED.fetch_add(1, Ordering::Relaxed);
        return Ok(());
    }
    let Some(p) = suitable_prime(fl, 101) else {
        return Ok(());
    };
    if check_degree_consistency(fl, p)? {
        ORACLE_CHECKED.fetch_add(1, Ordering::Relaxed);
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "mod-{p} factor degrees inconsistent with rational factorization"
        )))
    }
}

/// Irreducible factors (monic, over `Q`) of a monic squarefree polynomial.
fn factor_squarefree(f: &Poly, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let Some(n) = f.degree() else {
        return Ok(Vec::new());
    };
    if n <= 1 {
        return Ok(if n == 1 { vec![f.clone()] } else { Vec::new() });
    }
    let (_, mut z) = f.to_primitive_integer();
    let mut out = Vec::new();
    if z[0].is_zero() {
        out.push(Poly::x());
        z.remove(0);
    }
    for g in zassenhaus(&z, rng) {
        out.push(Poly::from_bigints(&g).monic());
    }
    Ok(out)
}

/// Subset sums of a multiset of degrees, as a membership table up to `n`.
fn subset_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r > half {
        r - m
    } else {
        r
    }
}

/// Factors a primitive squarefree integer polynomial with nonzero constant
/// term into primitive irreducibles.
fn zassenhaus(f: &[BigInt], rng: &mut ChaCha8Rng) -> Vec<ZPoly> {
    let n = intpoly::degree(f).expect("nonzero");
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();

    // prime selection
    let mut candidates: Vec<(usize, u64, Vec<usize>)> = Vec::new();
    for &p in crate::exactnum::primes_below_million().iter().skip(1) {
        let p = p as u64;
        if modp::is_zero_mod(&lc, p) {
            continue;
        }
        let fp = modp::monic(&modp::from_ints(f, p), p);
        if !modp::is_squarefree(&fp, p) {
            continue;
        }
        let degs = modp::factor_degrees(&fp, p);
        if degs.len() == 1 {
            return vec![f.to_vec()];
        }
        candidates.push((degs.len(), p, degs));
        if candidates.len() == PRIME_CANDIDATES {
            break;
        }
    }
    let allowed = candidates
        .iter()
        .map(|(_, _, d)| subset_sums(d, n))
        .fold(vec![true; n + 1], |acc, s| {
            acc.iter().zip(&s).map(|(a, b)| *a && *b).collect()
        });
    if (1..n).all(|d| !allowed[d]) {
        return vec![f.to_vec()];
    }
    let (_, p, _) = candidates
        .iter()
        .min_by_key(|(count, p, _)| (*count, *p))
        .cloned()
        .expect("some suitable prime exists for a squarefree polynomial");

    let fp = modp::monic(&modp::from_ints(f, p), p);
    let modular = modp::factor_squarefree(&fp, p, rng);

    // Landau–Mignotte: every factor g of f has |g|_inf <= 2^n |f|_2; the
    // recombined candidates are lc * g / lc(g).
    let bound = lc.abs() * (BigInt::one() << n) * intpoly::l2_norm_ceil(f);
    let two_bound = &bound * 2;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus <= two_bound {
        modulus *= &pb;
    }
    let half = &modulus >> 1;
    let mut lifted = hensel::multifactor_lift(f, &modular, p, &modulus);

    let mut out = Vec::new();
    let mut rest: ZPoly = f.to_vec();
    let mut size = 1;
    'grow: while 2 * size <= lifted.len() {
        let rest_lc = rest[intpoly::degree(&rest).unwrap()].clone();
        let rest_const = rest_lc.clone() * &rest[0];
        for combo in (0..lifted.len()).combinations(size) {
            let deg: usize = combo.iter().map(|&i| lifted[i].len() - 1).sum();
            if !allowed[deg] {
                continue;
            }
            let c0 = combo
                .iter()
                .fold(rest_lc.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(&modulus));
            let c0 = symmetric(&c0, &modulus, &half);
            if c0.is_zero() || !(&rest_const % &c0).is_zero() {
                continue;
            }
            let mut g: ZPoly = vec![rest_lc.clone()];
            for &i in &combo {
                g = intpoly::mul(&g, &lifted[i])
                    .iter()
                    .map(|c| c.mod_floor(&modulus))
                    .collect();
            }
            let g: ZPoly = g.iter().map(|c| symmetric(c, &modulus, &half)).collect();
            let g = intpoly::primitive_part(&g);
            if let Some(q) = intpoly::exact_quotient(&rest, &g) {
                out.push(g);
                rest = intpoly::primitive_part(&q);
                for &i in combo.iter().rev() {
                    lifted.remove(i);
                }
                continue 'grow;
            }
        }
        size += 1;
    }
    if intpoly::degree(&rest).unwrap_or(0) > 0 {
        out.push(rest);
    }
    out
}
