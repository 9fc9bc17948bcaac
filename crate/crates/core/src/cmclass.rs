//! The thirteen `Q`-isomorphism classes of `j`-invariants with complex
//! multiplication, CM-invariants `(cm, k)` and torsion over `Q`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ellcurve::{EllipticCurve, TorsionGroup};
use crate::error::{Error, Result};
use crate::exactnum::{self, Rational};

/// One row of the class table: `y^2 = x^3 + A x + B` with CM by the order
/// of discriminant `-D f^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmClass {
    pub cm: u32,
    /// The fundamental discriminant `-D`.
    pub disc: i64,
    pub conductor: u32,
    pub j: Rational,
    /// `j` as `sign * prod(p^e)`.
    pub j_factored: (i8, Vec<(u32, u32)>),
    pub a: BigInt,
    pub b: BigInt,
}

impl CmClass {
    pub fn curve(&self) -> EllipticCurve {
        EllipticCurve::new(
            Rational::from_integer(self.a.clone()),
            Rational::from_integer(self.b.clone()),
        )
        .expect("class curves are nonsingular")
    }

    /// Which power `k` is reduced by: 6 for `j = 0`, 4 for `j = 1728`,
    /// 2 otherwise.
    pub fn twist_degree(&self) -> u32 {
        match self.cm {
            3 => 6,
            4 => 4,
            _ => 2,
        }
    }
}

pub const CM_VALUES: [u32; 13] = [3, 12, 27, 4, 16, 7, 28, 8, 11, 19, 43, 67, 163];

type RawClass = (u32, i64, u32, &'static str, i8, &'static [(u32, u32)], i64, i64);

const RAW: [RawClass; 13] = [
    (3, -3, 1, "0", 0, &[], 0, 1),
    (12, -3, 2, "54000", 1, &[(2, 4), (3, 3), (5, 3)], -15, 22),
    (27, -3, 3, "-12288000", -1, &[(2, 15), (3, 1), (5, 3)], -480, 4048),
    (4, -4, 1, "1728", 1, &[(2, 6), (3, 3)], 1, 0),
    (16, -4, 2, "287496", 1, &[(2, 3), (3, 3), (11, 3)], -11, 14),
    (7, -7, 1, "-3375", -1, &[(3, 3), (5, 3)], -2835, -71442),
    (28, -7, 2, "16581375", 1, &[(3, 3), (5, 3), (17, 3)], -595, 5586),
    (8, -8, 1, "8000", 1, &[(2, 6), (5, 3)], -4320, 96768),
    (11, -11, 1, "-32768", -1, &[(2, 15)], -9504, 365904),
    (19, -19, 1, "-884736", -1, &[(2, 15), (3, 3)], -608, 5776),
    (43, -43, 1, "-884736000", -1, &[(2, 18), (3, 3), (5, 3)], -13760, 621264),
    (
        67,
        -67,
        1,
        "-147197952000",
        -1,
        &[(2, 15), (3, 3), (5, 3), (11, 3)],
        -117920,
        15585808,
    ),
    (
        163,
        -163,
        1,
        "-262537412640768000",
        -1,
        &[(2, 18), (3, 3), (5, 3), (23, 3), (29, 3)],
        -34790720,
        78984748304,
    ),
];

/// The class table. The first call recomputes every `j` from `[A, B]` and
/// from its factored form and panics on any disagreement.
pub fn classes() -> &'static [CmClass] {
    static TABLE: OnceLock<Vec<CmClass>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let table: Vec<CmClass> = RAW
            .iter()
            .map(|&(cm, disc, conductor, j, sign, fac, a, b)| CmClass {
                cm,
                disc,
                conductor,
                j: exactnum::parse_rational(j).expect("table literal"),
                j_factored: (sign, fac.to_vec()),
                a: BigInt::from(a),
                b: BigInt::from(b),
            })
            .collect();
        for c in &table {
            let from_curve = c.curve().j_invariant();
            assert_eq!(from_curve, c.j, "class table: j of [A, B] disagrees for cm = {}", c.cm);
            let (sign, fac) = &c.j_factored;
            let product = fac
                .iter()
                .fold(BigInt::from(*sign), |acc, &(p, e)| acc * BigInt::from(p).pow(e));
            assert_eq!(
                Rational::from_integer(product),
                c.j,
                "class table: factored j disagrees for cm = {}",
                c.cm
            );
        }
        table
    })
}

pub fn class(cm: u32) -> Result<&'static CmClass> {
    classes()
        .iter()
        .find(|c| c.cm == cm)
        .ok_or_else(|| Error::InvalidInvariants(format!("no CM class {cm}")))
}

/// `(cm, k)`: `E` is isomorphic over `Q` to the `k`-twist of class `cm`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CmInvariants {
    pub cm: u32,
    pub k: BigInt,
}

impl CmInvariants {
    /// Rejects unknown classes and `k` not in canonical (power-free) form.
    pub fn new(cm: u32, k: BigInt) -> Result<Self> {
        let canon = canonical_k(cm, &k)?;
        if canon != k {
            return Err(Error::InvalidInvariants(format!(
                "k = {k} is not reduced for cm = {cm} (reduced form {canon})"
            )));
        }
        Ok(CmInvariants { cm, k })
    }
}

impl fmt::Display for CmInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(cm = {}, k = {})", self.cm, self.k)
    }
}

/// The representative of `k` modulo the class's twisting powers.
pub fn canonical_k(cm: u32, k: &BigInt) -> Result<BigInt> {
    let c = class(cm)?;
    if k.is_zero() {
        return Err(Error::InvalidInvariants("k = 0".into()));
    }
    exactnum::power_free_part(&Rational::from_integer(k.clone()), c.twist_degree())
}

/// `y^2 = x^3 + k^2 A x + k^3 B`, with `y^2 = x^3 + k` for `cm = 3` and
/// `y^2 = x^3 + k x` for `cm = 4`.
pub fn normal_form(inv: &CmInvariants) -> Result<EllipticCurve> {
    let inv = CmInvariants::new(inv.cm, inv.k.clone())?;
    let c = class(inv.cm)?;
    let k = Rational::from_integer(inv.k.clone());
    let a = Rational::from_integer(c.a.clone());
    let b = Rational::from_integer(c.b.clone());
    match inv.cm {
        3 => EllipticCurve::new(Rational::zero(), k),
        4 => EllipticCurve::new(k, Rational::zero()),
        _ => EllipticCurve::new(&k * &k * a, &k * &k * &k * b),
    }
}

/// Whether `y^2 = x^3 + a x + b` and `y^2 = x^3 + a' x + b'` are isomorphic
/// over `Q`, i.e. `a = u^4 a'`, `b = u^6 b'` for some rational `u`.
pub fn isomorphic_over_q(e1: &EllipticCurve, e2: &EllipticCurve) -> bool {
    let (a1, b1, a2, b2) = (e1.a(), e1.b(), e2.a(), e2.b());
    if a1.is_zero() != a2.is_zero() || b1.is_zero() != b2.is_zero() {
        return false;
    }
    match (a1.is_zero(), b1.is_zero()) {
        (true, _) => exactnum::is_perfect_power(&(b1 / b2), 6).is_some(),
        (_, true) => exactnum::is_perfect_power(&(a1 / a2), 4).is_some(),
        _ => {
            let ra = a1 / a2;
            let u2 = (b1 / b2) / &ra;
            &u2 * &u2 == ra && exactnum::is_square(&u2)
        }
    }
}

/// CM-invariants of a curve over `Q`, found by matching `j` and then
/// recovering `k`; the answer is checked by an explicit isomorphism.
pub fn detect_cm(e: &EllipticCurve) -> Result<CmInvariants> {
    let j = e.j_invariant();
    let Some(c) = classes().iter().find(|c| c.j == j) else {
        return Err(Error::NotCm(j.to_string()));
    };
    let k = match c.cm {
        3 => exactnum::power_free_part(e.b(), 6)?,
        4 => exactnum::power_free_part(e.a(), 4)?,
        _ => {
            let ratio = e.b() * Rational::from_integer(c.a.clone()) / (e.a() * Rational::from_integer(c.b.clone()));
            exactnum::squarefree_part(&ratio)?
        }
    };
    let inv = CmInvariants::new(c.cm, k)?;
    if !isomorphic_over_q(e, &normal_form(&inv)?) {
        return Err(Error::Internal(format!(
            "{e} is not isomorphic to the normal form of {inv}"
        )));
    }
    Ok(inv)
}

fn is_square_int(k: &BigInt) -> bool {
    !k.is_negative() && exactnum::integer_nth_root(k, 2).is_some()
}

fn is_cube_int(k: &BigInt) -> bool {
    exactnum::integer_nth_root(k, 3).is_some()
}

/// One `k`-condition of the torsion-over-`Q` table.
pub struct TorsionRow {
    pub cm: u32,
    pub condition: &'static str,
    pub torsion: TorsionGroup,
    pub applies: fn(&BigInt) -> bool,
}

/// Rows in table order; for each class the first applicable row wins.
pub fn torsion_rows() -> &'static [TorsionRow] {
    static ROWS: OnceLock<Vec<TorsionRow>> = OnceLock::new();
    ROWS.get_or_init(|| {
        let c = TorsionGroup::cyclic;
        let any: fn(&BigInt) -> bool = |_| true;
        let mut rows = vec![
            TorsionRow {
                cm: 3,
                condition: "1",
                torsion: c(6),
                applies: |k| k.is_one(),
            },
            TorsionRow {
                cm: 3,
                condition: "-432, r^2 != 1",
                torsion: c(3),
                applies: |k| *k == BigInt::from(-432) || is_square_int(k),
            },
            TorsionRow {
                cm: 3,
                condition: "r^3 != 1",
                torsion: c(2),
                applies: is_cube_int,
            },
            TorsionRow {
                cm: 3,
                condition: "!= r^2, r^3, -432",
                torsion: c(1),
                applies: any,
            },
            TorsionRow {
                cm: 12,
                condition: "1",
                torsion: c(6),
                applies: |k| k.is_one(),
            },
            TorsionRow {
                cm: 12,
                condition: "!= 1",
                torsion: c(2),
                applies: any,
            },
            TorsionRow {
                cm: 27,
                condition: "1",
                torsion: c(3),
                applies: |k| k.is_one(),
            },
            TorsionRow {
                cm: 27,
                condition: "!= 1",
                torsion: c(1),
                applies: any,
            },
            TorsionRow {
                cm: 4,
                condition: "4",
                torsion: c(4),
                applies: |k| *k == BigInt::from(4),
            },
            TorsionRow {
                cm: 4,
                condition: "-r^2",
                torsion: TorsionGroup::product(2, 2).expect("normal form"),
                applies: |k| is_square_int(&-k),
            },
            TorsionRow {
                cm: 4,
                condition: "!= 4, -r^2",
                torsion: c(2),
                applies: any,
            },
            TorsionRow {
                cm: 16,
                condition: "1, 2",
                torsion: c(4),
                applies: |k| k.is_one() || *k == BigInt::from(2),
            },
            TorsionRow {
                cm: 16,
                condition: "!= 1, 2",
                torsion: c(2),
                applies: any,
            },
        ];
        for cm in [7, 28, 8] {
            rows.push(TorsionRow {
                cm,
                condition: "-",
                torsion: c(2),
                applies: any,
            });
        }
        for cm in [11, 19, 43, 67, 163] {
            rows.push(TorsionRow {
                cm,
                condition: "-",
                torsion: c(1),
                applies: any,
            });
        }
        rows
    })
}

pub fn torsion_row(inv: &CmInvariants) -> &'static TorsionRow {
    torsion_rows()
        .iter()
        .find(|r| r.cm == inv.cm && (r.applies)(&inv.k))
        .expect("every class ends with a catch-all row")
}

/// `E(Q)_tors` of the normal form, read off the class table.
pub fn torsion_over_q_table(inv: &CmInvariants) -> TorsionGroup {
    torsion_row(inv).torsion
}

/// Reduced `k` with `|k| <= bound`, ascending.
pub fn reduced_k_values(cm: u32, bound: i64) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    for k in -bound..=bound {
        if k == 0 {
            continue;
        }
        let k = BigInt::from(k);
        if canonical_k(cm, &k)? == k {
            out.push(k);
        }
    }
    Ok(out)
}

/// Bound on `|k|` for the verification corpus of a class.
pub fn corpus_bound(cm: u32) -> i64 {
    match cm {
        3 | 4 => 200,
        _ => 100,
    }
}

/// Every `(cm, k)` of the verification corpus, sorted.
pub fn corpus() -> Vec<CmInvariants> {
    CM_VALUES
        .iter()
        .flat_map(|&cm| {
            reduced_k_values(cm, corpus_bound(cm))
                .expect("known class")
                .into_iter()
                .map(move |k| CmInvariants { cm, k })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};
    use proptest::prelude::*;

    fn inv(cm: u32, k: i64) -> CmInvariants {
        CmInvariants::new(cm, BigInt::from(k)).unwrap()
    }

    #[test]
    fn table_is_consistent() {
        let t = classes();
        assert_eq!(t.len(), 13);
        for (i, a) in t.iter().enumerate() {
            for b in &t[i + 1..] {
                assert_ne!(a.j, b.j);
            }
        }
        assert_eq!(class(11).unwrap().j, rat(-32768));
        assert_eq!(class(67).unwrap().j, rat(-147197952000));
    }

    #[test]
    fn detection_examples() {
        let e = EllipticCurve::from_ints(-9504, 365904).unwrap();
        assert_eq!(detect_cm(&e).unwrap(), inv(11, 1));
        let e = EllipticCurve::from_ints(-138915, 24504606).unwrap();
        assert_eq!(detect_cm(&e).unwrap(), inv(7, -7));
        let e = EllipticCurve::from_ints(0, 64).unwrap();
        assert_eq!(detect_cm(&e).unwrap(), inv(3, 1));
        let e = EllipticCurve::from_ints(1, 1).unwrap();
        assert!(matches!(detect_cm(&e), Err(Error::NotCm(_))));
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(
            normal_form(&inv(3, -432)).unwrap(),
            EllipticCurve::from_ints(0, -432).unwrap()
        );
        assert_eq!(
            normal_form(&inv(16, 2)).unwrap(),
            EllipticCurve::from_ints(-44, 112).unwrap()
        );
        assert_eq!(
            normal_form(&inv(4, 4)).unwrap(),
            EllipticCurve::from_ints(4, 0).unwrap()
        );
        assert!(CmInvariants::new(7, BigInt::from(4)).is_err());
        assert!(CmInvariants::new(3, BigInt::from(64)).is_err());
        assert!(CmInvariants::new(5, BigInt::from(1)).is_err());
        assert!(CmInvariants::new(4, BigInt::from(0)).is_err());
    }

    #[test]
    fn table_torsion_examples() {
        assert_eq!(torsion_over_q_table(&inv(3, 16)).to_string(), "C3");
        assert_eq!(torsion_over_q_table(&inv(4, -25)).to_string(), "C2xC2");
        assert_eq!(torsion_over_q_table(&inv(12, 5)).to_string(), "C2");
        assert_eq!(torsion_over_q_table(&inv(3, -1)).to_string(), "C2");
        assert_eq!(torsion_over_q_table(&inv(3, -432)).to_string(), "C3");
        assert_eq!(torsion_over_q_table(&inv(3, 2)).to_string(), "C1");
    }

    #[test]
    fn corpus_sizes() {
        // oracle: count reduced k directly from prime exponents
        let count = |n: u32, bound: i64| {
            (-bound..=bound)
                .filter(|&k| k != 0)
                .filter(|&k| {
                    let mut m = k.unsigned_abs();
                    let mut p = 2;
                    let mut ok = true;
                    while p * p <= m {
                        let mut e = 0;
                        while m % p == 0 {
                            m /= p;
                            e += 1;
                        }
                        ok &= e < n;
                        p += 1;
                    }
                    ok
                })
                .count()
        };
        assert_eq!(reduced_k_values(3, 200).unwrap().len(), count(6, 200));
        assert_eq!(reduced_k_values(4, 200).unwrap().len(), count(4, 200));
        assert_eq!(reduced_k_values(7, 100).unwrap().len(), count(2, 100));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn detection_round_trips_and_is_isomorphism_invariant(
            idx in 0usize..13, k in -60i64..60, un in 1i64..6, ud in 1i64..6, neg in any::<bool>()
        ) {
            prop_assume!(k != 0);
            let cm = CM_VALUES[idx];
            let k = canonical_k(cm, &BigInt::from(k)).unwrap();
            let i = CmInvariants::new(cm, k).unwrap();
            let e = normal_form(&i).unwrap();
            prop_assert_eq!(detect_cm(&e).unwrap(), i.clone());
            let u = if neg { -ratio(un, ud) } else { ratio(un, ud) };
            prop_assert_eq!(detect_cm(&e.scaled(&u).unwrap()).unwrap(), i);
        }
    }
}
