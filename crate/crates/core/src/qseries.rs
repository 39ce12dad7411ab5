//! Truncated formal power series in `q` with exact integer coefficients.
//!
//! A [`QSeries`] of order `N` knows its coefficients through `q^N`. Binary
//! operations between series of different orders truncate to the smaller one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    /// The zero series known through `q^order`.
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, 1, order)
    }

    /// `c·q^power`, truncated (so a power beyond `order` gives zero).
    pub fn monomial(power: usize, c: i64, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = BigInt::from(c);
        }
        s
    }

    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty slice.
    pub fn from_coeffs<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        QSeries { coeffs }
    }

    /// Builds a series of the given order from a (possibly shorter or longer)
    /// polynomial coefficient list.
    pub fn from_poly<T: Into<BigInt> + Clone>(poly: &[T], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (c, v) in s.coeffs.iter_mut().zip(poly) {
            *c = v.clone().into();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        QSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Adds `c·q^power` in place (ignored beyond the order).
    pub fn add_monomial(&mut self, power: usize, c: &BigInt) {
        if power <= self.order() {
            self.coeffs[power] += c;
        }
    }

    /// Multiplies by `q^shift`, keeping the order.
    pub fn shift(&self, shift: usize) -> Self {
        let mut s = Self::zero(self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + shift > self.order() {
                break;
            }
            s.coeffs[i + shift] = c.clone();
        }
        s
    }

    /// The multiplicative inverse; requires a unit constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::NotInvertible(c0.to_string()));
        }
        let n = self.order();
        let mut inv: Vec<BigInt> = Vec::with_capacity(n + 1);
        inv.push(c0.clone());
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !inv[k - j].is_zero() {
                    acc += &self.coeffs[j] * &inv[k - j];
                }
            }
            // c0 is ±1, so dividing by it is multiplying by it.
            inv.push(-(acc * c0));
        }
        Ok(QSeries { coeffs: inv })
    }

    /// Multiplies in place by `1/(1 - q^k)`.
    pub fn div_one_minus_qk(&mut self, k: usize) {
        assert!(k > 0);
        for i in k..self.coeffs.len() {
            let prev = self.coeffs[i - k].clone();
            self.coeffs[i] += prev;
        }
    }

    /// Multiplies in place by `(1 - q^k)`.
    pub fn mul_one_minus_qk(&mut self, k: usize) {
        assert!(k > 0);
        for i in (k..self.coeffs.len()).rev() {
            let prev = self.coeffs[i - k].clone();
            self.coeffs[i] -= prev;
        }
    }

    /// Index and both coefficients of the first disagreement through the
    /// common order, if any.
    pub fn first_mismatch(&self, other: &QSeries) -> Option<(usize, BigInt, BigInt)> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(i, (a, b))| (i, a.clone(), b.clone()))
    }

    /// Equality through the smaller of the two orders.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        self.first_mismatch(other).is_none()
    }

    pub fn to_csv(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse_csv(s: &str) -> Result<Self> {
        let coeffs = s
            .trim()
            .split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries { coeffs })
    }

    /// Human-readable form, e.g. `1 + q + 2*q^2 - q^5`.
    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{i}"),
            };
            if i == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        QSeries { coeffs }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        QSeries { coeffs }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `(q)_n = (1-q)(1-q^2)...(1-q^n)`, with `(q)_0 = 1`.
pub fn pochhammer_finite(n: usize, order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    for i in 1..=n.min(order) {
        s.mul_one_minus_qk(i);
    }
    s
}

/// `1/(q)_∞`, the partition generating function.
pub fn pochhammer_inf_inverse(order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    for k in 1..=order {
        s.div_one_minus_qk(k);
    }
    s
}

/// `1/(q)_n`.
pub fn pochhammer_finite_inverse(n: usize, order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    for k in 1..=n.min(order) {
        s.div_one_minus_qk(k);
    }
    s
}

/// Gaussian binomial `[m, n]_q`; zero unless `0 <= n <= m`.
pub fn q_binomial(m: i64, n: i64, order: usize) -> QSeries {
    if n < 0 || n > m {
        return QSeries::zero(order);
    }
    let (m, n) = (m as usize, n.min(m - n) as usize);
    // Pascal recurrence [j, i] = [j-1, i-1] + q^i [j-1, i], one row per j.
    let mut row: Vec<QSeries> = vec![QSeries::one(order)];
    for j in 1..=m {
        let width = n.min(j);
        let mut next = Vec::with_capacity(width + 1);
        for i in 0..=width {
            let from_diag = if i > 0 { Some(&row[i - 1]) } else { None };
            let from_up = if i < row.len() && i < j { Some(row[i].shift(i)) } else { None };
            let term = match (from_diag, from_up) {
                (Some(a), Some(b)) => a + &b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b,
                (None, None) => unreachable!(),
            };
            next.push(term);
        }
        row = next;
    }
    row.swap_remove(n)
}

/// `∏_{k >= 1, k mod modulus ∈ residues} 1/(1 - q^k)`.
pub fn modular_product(modulus: u64, residues: &[u64], order: usize) -> Result<QSeries> {
    if modulus == 0 {
        return Err(Error::InvalidParameters("modulus must be positive".into()));
    }
    if residues.is_empty() {
        return Err(Error::InvalidParameters("residue set must be nonempty".into()));
    }
    let mut s = QSeries::one(order);
    for k in 1..=order {
        if residues.iter().any(|&r| (k as u64) % modulus == r % modulus) {
            s.div_one_minus_qk(k);
        }
    }
    Ok(s)
}

/// Residues `{±r mod m : r ∈ base}` as a sorted set.
pub fn symmetric_residues(modulus: u64, base: &[i64]) -> Vec<u64> {
    let m = modulus as i64;
    let mut out: Vec<u64> = base
        .iter()
        .flat_map(|&r| [r.rem_euclid(m) as u64, (-r).rem_euclid(m) as u64])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
