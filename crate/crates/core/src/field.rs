//! Exact coefficient fields: the rationals and prime fields GF(p).
//!
//! No floating point anywhere. Rationals are arbitrary-precision and kept
//! reduced with a positive denominator (num's canonical form); GF(p)
//! residues are kept in `[0, p)`.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which field coefficients live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    pub fn zero(&self) -> FieldElem {
        match self {
            Field::Q => FieldElem::Q(BigRational::zero()),
            Field::Fp(p) => FieldElem::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            Field::Q => FieldElem::Q(BigRational::one()),
            Field::Fp(p) => FieldElem::Fp { v: 1 % *p, p: *p },
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        match self {
            Field::Q => FieldElem::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => FieldElem::Fp {
                v: n.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    /// Build an element from a numerator/denominator pair of decimal strings.
    pub fn from_decimal(&self, neg: bool, num: &str, den: Option<&str>) -> Result<FieldElem> {
        match self {
            Field::Q => {
                let mut n: BigInt = num
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad integer literal {num}")))?;
                if neg {
                    n = -n;
                }
                let d: BigInt = match den {
                    None => BigInt::one(),
                    Some(d) => d
                        .parse()
                        .map_err(|_| Error::Domain(format!("bad integer literal {d}")))?,
                };
                if d.is_zero() {
                    return Err(Error::Domain("zero denominator".into()));
                }
                Ok(FieldElem::Q(BigRational::new(n, d)))
            }
            Field::Fp(p) => {
                let n: u128 = num
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad integer literal {num}")))?;
                let mut v = (n % *p as u128) as u64;
                if neg && v != 0 {
                    v = p - v;
                }
                let elem = FieldElem::Fp { v, p: *p };
                match den {
                    None => Ok(elem),
                    Some(d) => {
                        let d: u128 = d
                            .parse()
                            .map_err(|_| Error::Domain(format!("bad integer literal {d}")))?;
                        let dv = (d % *p as u128) as u64;
                        let den = FieldElem::Fp { v: dv, p: *p };
                        elem.div(&den)
                    }
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "q"),
            Field::Fp(p) => write!(f, "gf:{p}"),
        }
    }
}

/// An exact field element. All arithmetic is total within one field;
/// mixing fields is a caller bug and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElem {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Q(_) => Field::Q,
            FieldElem::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Q(r) => r.is_zero(),
            FieldElem::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Q(r) => r.is_one(),
            FieldElem::Fp { v, p } => *v == 1 % *p,
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a + b),
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, p: q }) if p == q => {
                FieldElem::Fp {
                    v: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Q(a) => FieldElem::Q(-a),
            FieldElem::Fp { v, p } => FieldElem::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a * b),
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, p: q }) if p == q => {
                FieldElem::Fp {
                    v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        match self {
            FieldElem::Q(a) => Ok(FieldElem::Q(a.recip())),
            FieldElem::Fp { v, p } => {
                // Extended Euclid; p is prime so every nonzero residue
                // is invertible (validated when parsing --field).
                let (mut r0, mut r1) = (*p as i128, *v as i128);
                let (mut t0, mut t1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                if r0 != 1 {
                    return Err(Error::Domain(format!("{v} not invertible mod {p}")));
                }
                Ok(FieldElem::Fp {
                    v: t0.rem_euclid(*p as i128) as u64,
                    p: *p,
                })
            }
        }
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() {
                    write!(f, "-{}/{}", r.numer().magnitude(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}
