//! Ordinals below `ω^k` in Cantor normal form.
//!
//! An ordinal is a fixed-length coefficient vector `(c_{k-1}, ..., c_0)`
//! denoting `ω^{k-1}·c_{k-1} + ... + ω·c_1 + c_0`. The length `k` is a
//! property of the ambient domain and never changes under arithmetic.
//! Order is lexicographic on the vector and is a total well order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Element of `ω^k` as a CNF coefficient vector, most significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordinal {
    coeffs: Vec<u64>,
}

impl Ordinal {
    pub fn new(coeffs: Vec<u64>) -> Self {
        assert!(!coeffs.is_empty(), "ordinal needs at least one CNF position");
        Ordinal { coeffs }
    }

    /// Zero of `ω^k`.
    pub fn zero(k: usize) -> Self {
        Ordinal { coeffs: vec![0; k] }
    }

    /// The finite ordinal `n` inside `ω^k`.
    pub fn finite(k: usize, n: u64) -> Self {
        let mut coeffs = vec![0; k];
        coeffs[k - 1] = n;
        Ordinal { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// The CNF length `k` of the ambient `ω^k`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Successor ordinal (bumps the constant coefficient).
    pub fn succ(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        *coeffs.last_mut().unwrap() += 1;
        Ordinal { coeffs }
    }

    fn check_len(&self, other: &Ordinal) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Domain(format!(
                "ordinal CNF length mismatch: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

/// Ordinal addition `a + b` in `ω^k`. Not commutative: the positions of `a`
/// strictly below the leading nonzero position of `b` are absorbed.
pub fn ord_add(a: &Ordinal, b: &Ordinal) -> Result<Ordinal> {
    a.check_len(b)?;
    // Highest position (smallest index) where b is nonzero.
    let lead = match b.coeffs.iter().position(|&c| c != 0) {
        None => return Ok(a.clone()),
        Some(i) => i,
    };
    let mut coeffs = Vec::with_capacity(a.len());
    coeffs.extend_from_slice(&a.coeffs[..lead]);
    coeffs.push(a.coeffs[lead] + b.coeffs[lead]);
    coeffs.extend_from_slice(&b.coeffs[lead + 1..]);
    Ok(Ordinal { coeffs })
}

/// Ordinal subtraction: the unique `d` with `g + d = b`, defined for `g <= b`.
pub fn ord_sub(b: &Ordinal, g: &Ordinal) -> Result<Ordinal> {
    b.check_len(g)?;
    match g.cmp(b) {
        Ordering::Greater => Err(Error::Domain(format!(
            "ordinal subtraction {} - {} with subtrahend larger",
            b, g
        ))),
        Ordering::Equal => Ok(Ordinal::zero(b.len())),
        Ordering::Less => {
            // Highest position where they differ; there g < b.
            let j = b
                .coeffs
                .iter()
                .zip(&g.coeffs)
                .position(|(x, y)| x != y)
                .unwrap();
            let mut coeffs = vec![0; b.len()];
            coeffs[j] = b.coeffs[j] - g.coeffs[j];
            coeffs[j + 1..].copy_from_slice(&b.coeffs[j + 1..]);
            Ok(Ordinal { coeffs })
        }
    }
}

impl fmt::Display for Ordinal {
    /// `ω` elements print as bare naturals, higher powers as `<c,...,c0>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "<")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ">")
    }
}
