//! Exact integers and rationals, integer factorization, and representatives
//! of `Q*` modulo n-th powers.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

const TRIAL_DIVISION_BOUND: u32 = 1_000_000;

/// Witness bases for Miller–Rabin; deterministic below 3.3 * 10^24.
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const MR_EXTRA_BASES: [u32; 7] = [43, 47, 53, 59, 61, 67, 71];

/// Prime factorization of a nonzero integer: `sign * prod(p^e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| p.then_some(i as u32))
            .collect()
    })
}

/// Primes below one million, ascending.
pub fn primes_below_million() -> &'static [u32] {
    small_primes()
}

pub fn is_probable_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &p in MR_BASES.iter() {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let deterministic_limit: BigInt = "3317044064679887385961981".parse().unwrap();
    let extra: &[u32] = if n < &deterministic_limit { &[] } else { &MR_EXTRA_BASES };
    'witness: for &a in MR_BASES.iter().chain(extra) {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. `n` must be odd and composite.
fn pollard_rho(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |v: &BigInt| (v * v + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m: u64 = 128;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

fn split_into(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(&n);
    let e = &n / &d;
    split_into(d, out);
    split_into(e, out);
}

/// Trial division up to 10^6 followed by Pollard rho on the cofactor.
pub fn factor_integer(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput("factor_integer"));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();
    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            primes.push(pb.clone());
            m = q;
        }
    }
    if !m.is_one() {
        split_into(m, &mut primes);
    }
    primes.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    let fact = Factorization { sign, factors };
    debug_assert_eq!(&fact.product(), n);
    Ok(fact)
}

/// Integer representative of `q` in `Q* / (Q*)^n` with every prime exponent
/// in `[0, n)`. For even `n` the sign of `q` is kept; for odd `n` the
/// representative is positive.
pub fn power_free_part(q: &Rational, n: u32) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("power_free_part needs n >= 2, got {n}")));
    }
    if q.is_zero() {
        return Err(Error::ZeroInput("power_free_part"));
    }
    // q = a/b ~ a * b^(n-1) modulo n-th powers
    let num = q.numer().abs();
    let den = q.denom().clone();
    let mut acc = BigInt::one();
    for part in [(&num, 1u32), (&den, n - 1)] {
        if part.0.is_one() {
            continue;
        }
        let fact = factor_integer(part.0)?;
        for (p, e) in fact.factors {
            let r = (e * part.1) % n;
            acc *= num_traits::pow(p, r as usize);
        }
    }
    if n % 2 == 0 && q.is_negative() {
        acc = -acc;
    }
    Ok(acc)
}

/// Squarefree integer `d` with `q / d` a rational square.
pub fn squarefree_part(q: &Rational) -> Result<BigInt> {
    power_free_part(q, 2)
}

/// Exact `n`-th root of an integer if there is one (positive root for even `n`).
pub fn integer_nth_root(v: &BigInt, n: u32) -> Option<BigInt> {
    if v.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return integer_nth_root(&-v, n).map(|r| -r);
    }
    let r = v.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *v).then_some(r)
}

/// `r` with `r^n = q` if such a rational exists; positive for even `n`.
pub fn is_perfect_power(q: &Rational, n: u32) -> Option<Rational> {
    assert!(n >= 1);
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let num = integer_nth_root(q.numer(), n)?;
    let den = integer_nth_root(q.denom(), n)?;
    Some(Rational::new(num, den))
}

pub fn is_square(q: &Rational) -> bool {
    is_perfect_power(q, 2).is_some()
}

/// Parses `"p/q"` or an integer string into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Renders a rational as `"num/den"`, always with an explicit denominator.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Bit length of the larger of numerator and denominator.
pub fn height_bits(q: &Rational) -> u64 {
    q.numer().bits().max(q.denom().bits())
}
