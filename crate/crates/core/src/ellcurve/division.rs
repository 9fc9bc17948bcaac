//! Division polynomials in `x` alone.
//!
//! With `psi_n` the classical division polynomials, `g_n = psi_n` for odd
//! `n` and `g_n = psi_n / (2y)` for even `n`; every `g_n` is a polynomial in
//! `x` once `y^2` is replaced by `f = x^3 + a x + b`.

use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{rat, Rational};
use crate::poly::Poly;
use crate::polyfactor::{self, FactorList};

use super::EllipticCurve;

/// Indices below this bound have their primitive polynomials and
/// factorizations cached.
const CACHE: usize = 13;

/// Degree of the primitive `n`-division polynomial: 3 for `n = 2`,
/// otherwise half the Jordan totient `J_2(n)`.
pub fn primitive_degree(n: u32) -> Result<usize> {
    match n {
        0 | 1 => Err(Error::InvalidInput(format!("no primitive {n}-division polynomial"))),
        2 => Ok(3),
        _ => {
            let mut j2 = (n as u64).pow(2);
            let mut m = n as u64;
            let mut p = 2;
            while m > 1 {
                if m % p == 0 {
                    j2 = j2 / (p * p) * (p * p - 1);
                    while m % p == 0 {
                        m /= p;
                    }
                }
                p += 1;
            }
            Ok((j2 / 2) as usize)
        }
    }
}

/// Division polynomials of one curve over `Q`, computed on demand and cached.
pub struct DivisionData {
    curve: EllipticCurve,
    f: Poly,
    g: Mutex<Vec<Poly>>,
    prim: [OnceLock<Poly>; CACHE],
    factored: [OnceLock<FactorList>; CACHE],
}

impl DivisionData {
    pub fn new(curve: &EllipticCurve) -> Self {
        let a = curve.a().clone();
        let b = curve.b().clone();
        let seeds = vec![
            Poly::zero(),
            Poly::one(),
            Poly::one(),
            Poly::new(vec![-(&a * &a), rat(12) * &b, rat(6) * &a, Rational::zero(), rat(3)]),
            Poly::new(vec![
                rat(2) * (rat(-8) * &b * &b - &a * &a * &a),
                rat(-8) * &a * &b,
                rat(-10) * &a * &a,
                rat(40) * &b,
                rat(10) * &a,
                Rational::zero(),
                rat(2),
            ]),
        ];
        DivisionData {
            curve: curve.clone(),
            f: curve.rhs_poly(),
            g: Mutex::new(seeds),
            prim: std::array::from_fn(|_| OnceLock::new()),
            factored: std::array::from_fn(|_| OnceLock::new()),
        }
    }

    pub fn curve(&self) -> &EllipticCurve {
        &self.curve
    }

    /// `x^3 + a x + b`.
    pub fn rhs_poly(&self) -> &Poly {
        &self.f
    }

    fn g(&self, n: usize) -> Poly {
        let mut g = self.g.lock().expect("division cache poisoned");
        let f2 = self.f.pow(2).scale(&rat(16));
        while g.len() <= n {
            let k = g.len();
            let m = k / 2;
            let next = if k % 2 == 1 {
                let t1 = &g[m + 2] * &g[m].pow(3);
                let t2 = &g[m - 1] * &g[m + 1].pow(3);
                if m % 2 == 0 {
                    &(&f2 * &t1) - &t2
                } else {
                    &t1 - &(&f2 * &t2)
                }
            } else {
                let t1 = &g[m + 2] * &g[m - 1].pow(2);
                let t2 = &g[m - 2] * &g[m + 1].pow(2);
                &(&t1 - &t2) * &g[m]
            };
            g.push(next);
        }
        g[n].clone()
    }

    /// The `n`-division polynomial in `x`: `psi_n` for odd `n`,
    /// `psi_n / (2y)` for even `n >= 4`, and `f` itself for `n = 2`.
    pub fn classical(&self, n: u32) -> Result<Poly> {
        match n {
            0 => Err(Error::InvalidInput("division polynomial index 0".into())),
            2 => Ok(self.f.clone()),
            _ => Ok(self.g(n as usize)),
        }
    }

    /// Polynomial whose roots are the x-coordinates of all nonzero points
    /// of order dividing `n`.
    pub fn torsion_x_poly(&self, n: u32) -> Result<Poly> {
        match n {
            0 => Err(Error::InvalidInput("division polynomial index 0".into())),
            1 => Ok(Poly::one()),
            2 => Ok(self.f.clone()),
            _ if n % 2 == 0 => Ok(&self.f * &self.g(n as usize)),
            _ => Ok(self.g(n as usize)),
        }
    }

    /// Polynomial whose roots are the x-coordinates of the points of exact
    /// order `n`: the torsion polynomial with every smaller primitive factor
    /// divided out.
    pub fn primitive(&self, n: u32) -> Result<Poly> {
        if (n as usize) < CACHE {
            if let Some(p) = self.prim[n as usize].get() {
                return Ok(p.clone());
            }
        }
        let expected = primitive_degree(n)?;
        let mut p = self.torsion_x_poly(n)?;
        for m in 2..n {
            if n % m == 0 {
                p = p.exact_div(&self.primitive(m)?).map_err(|_| {
                    Error::Internal(format!("primitive {m}-division polynomial does not divide index {n}"))
                })?;
            }
        }
        if p.degree() != Some(expected) {
            return Err(Error::Internal(format!(
                "primitive {n}-division polynomial has degree {:?}, expected {expected}",
                p.degree()
            )));
        }
        if (n as usize) < CACHE {
            let _ = self.prim[n as usize].set(p.clone());
        }
        Ok(p)
    }

    pub fn primitive_factored(&self, n: u32) -> Result<FactorList> {
        if (n as usize) < CACHE {
            if let Some(fl) = self.factored[n as usize].get() {
                return Ok(fl.clone());
            }
        }
        let fl = polyfactor::factor_poly(&self.primitive(n)?)?;
        if (n as usize) < CACHE {
            let _ = self.factored[n as usize].set(fl.clone());
        }
        Ok(fl)
    }

    /// The factorizations computed so far, by index.
    pub fn cached_factorizations(&self) -> Vec<(u32, FactorList)> {
        self.factored
            .iter()
            .enumerate()
            .filter_map(|(n, c)| c.get().map(|fl| (n as u32, fl.clone())))
            .collect()
    }
}

/// Classical `n`-division polynomial of `E` in `x` (see [`DivisionData::classical`]).
pub fn division_polynomial(curve: &EllipticCurve, n: u32) -> Result<Poly> {
    DivisionData::new(curve).classical(n)
}

pub fn primitive_division_polynomial(curve: &EllipticCurve, n: u32) -> Result<Poly> {
    DivisionData::new(curve).primitive(n)
}
