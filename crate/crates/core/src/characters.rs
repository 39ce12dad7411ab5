//! Virasoro minimal-model characters: the alternating-sign (bosonic) formula,
//! the fermionic sum for `χ_{1,2}` of the `M(p, 2p±1)` families, closed-form
//! examples, product forms and the two symmetry identities.
//!
//! The parameter `t ∈ ½Z` is always carried doubled as `T = 2t`.

use num_integer::Integer;
use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qseries::{
    modular_product, pochhammer_finite_inverse, pochhammer_inf_inverse, q_binomial,
    symmetric_residues, QSeries,
};

/// A minimal-model label `(p, p', r, s)` with coprime `1 < p < p'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CharacterLabel {
    pub p: i64,
    pub pp: i64,
    pub r: i64,
    pub s: i64,
}

impl CharacterLabel {
    pub fn new(p: i64, pp: i64, r: i64, s: i64) -> Result<Self> {
        if !(1 < p && p < pp) {
            return Err(Error::InvalidLabel(format!("need 1 < p < p', got p={p}, p'={pp}")));
        }
        if p.gcd(&pp) != 1 {
            return Err(Error::InvalidLabel(format!("p={p} and p'={pp} are not coprime")));
        }
        if !(1 <= r && r < p) || !(1 <= s && s < pp) {
            return Err(Error::InvalidLabel(format!(
                "need 1 <= r < p and 1 <= s < p', got r={r}, s={s}"
            )));
        }
        Ok(CharacterLabel { p, pp, r, s })
    }

    /// The label `(p, p', p-r, p'-s)`.
    pub fn reflected(&self) -> Self {
        CharacterLabel { p: self.p, pp: self.pp, r: self.p - self.r, s: self.pp - self.s }
    }

    /// Every valid label with `p' <= max_pp`.
    pub fn all_up_to(max_pp: i64) -> Vec<Self> {
        let mut out = Vec::new();
        for pp in 3..=max_pp {
            for p in 2..pp {
                for r in 1..p {
                    for s in 1..pp {
                        if let Ok(l) = Self::new(p, pp, r, s) {
                            out.push(l);
                        }
                    }
                }
            }
        }
        out
    }
}

impl std::fmt::Display for CharacterLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "chi^{{{},{}}}_{{{},{}}}", self.p, self.pp, self.r, self.s)
    }
}

/// The bosonic character of a validated label.
pub fn bosonic_character(label: &CharacterLabel, order: usize) -> QSeries {
    bosonic_sum(label.p, label.pp, label.r, label.s, order)
}

/// The bosonic formula for arbitrary positive `(p, p', r, s)`; unlike
/// [`CharacterLabel`] this does not insist on `p < p'`, which the swap
/// identity `χ^{p,p'}_{r,s} = χ^{p',p}_{s,r}` needs.
pub fn bosonic_character_raw(p: i64, pp: i64, r: i64, s: i64, order: usize) -> Result<QSeries> {
    if p < 2 || pp < 2 || p.gcd(&pp) != 1 || !(1..p).contains(&r) || !(1..pp).contains(&s) {
        return Err(Error::InvalidLabel(format!("({p},{pp},{r},{s})")));
    }
    Ok(bosonic_sum(p, pp, r, s, order))
}

fn bosonic_sum(p: i64, pp: i64, r: i64, s: i64, order: usize) -> QSeries {
    let n = order as i64;
    let mut numer = QSeries::zero(order);
    let one = BigInt::from(1);
    let minus_one = BigInt::from(-1);
    let mut add = |e: i64, c: &BigInt| {
        if (0..=n).contains(&e) {
            numer.add_monomial(e as usize, c);
        }
    };
    for dir in [1i64, -1] {
        let mut misses = 0;
        let mut k = if dir == 1 { 0 } else { -1 };
        while misses < 2 {
            let e1 = k * k * p * pp + k * (pp * r - p * s);
            let e2 = (k * p + r) * (k * pp + s);
            add(e1, &one);
            add(e2, &minus_one);
            misses = if e1 > n && e2 > n { misses + 1 } else { 0 };
            k += dir;
        }
    }
    &numer * &pochhammer_inf_inverse(order)
}

/// `B_{ij} = (i-1) j` for `i <= j`, indexed by `2..=T-2`.
pub fn b_entry(i: usize, j: usize) -> i64 {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    ((i - 1) * j) as i64
}

/// Twice the quadratic form `n B nᵀ` for `n = (n_2, ..., n_{T-2})`.
pub fn twice_quadratic_form(n: &[u32]) -> i64 {
    let mut acc = 0i64;
    for (a, &na) in n.iter().enumerate() {
        for (b, &nb) in n.iter().enumerate() {
            acc += na as i64 * nb as i64 * b_entry(a + 2, b + 2);
        }
    }
    acc
}

/// `m_d = Σ_{k>d} n_k (k-d)` for `d = 1..=T-3`.
pub fn m_vector(n: &[u32]) -> Vec<u32> {
    let top = n.len() + 1;
    (1..=top - 1)
        .map(|d| (d + 1..=top).map(|k| n[k - 2] * (k - d) as u32).sum())
        .collect()
}

fn check_t2(t2: u32) -> Result<()> {
    if t2 < 4 {
        return Err(Error::InvalidParameters(format!("need T = 2t >= 4, got {t2}")));
    }
    Ok(())
}

/// One term of the fermionic sum: `q^{½nBnᵀ}/(q)_{m_1} ∏_{j=2}^{T-3} [n_j+m_j, n_j]`.
pub fn fermionic_term(n: &[u32], order: usize) -> QSeries {
    let twice = twice_quadratic_form(n);
    debug_assert!(twice % 2 == 0);
    let e = (twice / 2) as usize;
    if e > order {
        return QSeries::zero(order);
    }
    let m = m_vector(n);
    let rest = order - e;
    let mut t = pochhammer_finite_inverse(m[0] as usize, rest);
    for j in 2..=n.len() {
        let (nj, mj) = (n[j - 2] as i64, m[j - 1] as i64);
        t = &t * &q_binomial(nj + mj, nj, rest);
    }
    let mut padded = QSeries::zero(order);
    for (i, c) in t.coeffs().iter().enumerate() {
        padded.add_monomial(i + e, c);
    }
    padded
}

/// All `n` vectors of length `T-3` with `½nBnᵀ <= max`, in lexicographic order.
/// `slack` loosens the per-coordinate diagonal cap (used to check that the cap
/// never excludes anything).
pub fn sectors_up_to(t2: u32, max: usize, slack: u32) -> Vec<Vec<u32>> {
    let len = (t2 - 3) as usize;
    let mut out = Vec::new();
    let mut cur = vec![0u32; len];
    fn rec(idx: usize, cur: &mut Vec<u32>, max: i64, slack: u32, out: &mut Vec<Vec<u32>>) {
        if idx == cur.len() {
            out.push(cur.clone());
            return;
        }
        let d = (idx + 2) as f64;
        let cap = ((2.0 * max as f64 / ((d - 1.0) * d)).sqrt().floor() as u32) + slack;
        for v in 0..=cap {
            cur[idx] = v;
            // Entries of B are nonnegative, so the partial form bounds the total.
            if twice_quadratic_form(&cur[..=idx]) > 2 * max {
                break;
            }
            rec(idx + 1, cur, max, slack, out);
        }
        cur[idx] = 0;
    }
    rec(0, &mut cur, max as i64, slack, &mut out);
    out
}

/// The fermionic sum for `χ_{1,2}` of `M(t, 2t+1)` (even `T`) or
/// `M(t+½, 2t)` (odd `T`).
pub fn fermionic_character_12(t2: u32, order: usize) -> Result<QSeries> {
    check_t2(t2)?;
    Ok(fermionic_sum_over(&sectors_up_to(t2, order, 0), order))
}

pub(crate) fn fermionic_sum_over(sectors: &[Vec<u32>], order: usize) -> QSeries {
    use rayon::prelude::*;
    let terms: Vec<QSeries> = sectors.par_iter().map(|n| fermionic_term(n, order)).collect();
    terms.iter().fold(QSeries::zero(order), |acc, t| &acc + t)
}

/// The character label whose series equals `Y^t_{â,b̂}`.
pub fn theorem1_label(t2: u32, a_hat: i64, b_hat: i64) -> Result<CharacterLabel> {
    check_t2(t2)?;
    let t2 = t2 as i64;
    if t2 % 2 == 0 {
        let t = t2 / 2;
        if !(1..=t).contains(&a_hat) || !(1..t).contains(&b_hat) {
            return Err(Error::InvalidParameters(format!(
                "for t={t} need 1 <= a <= {t} and 1 <= b <= {}, got a={a_hat}, b={b_hat}",
                t - 1
            )));
        }
        CharacterLabel::new(t, 2 * t + 1, b_hat, 2 * a_hat)
    } else {
        let top = (t2 - 1) / 2;
        if !(1..=top).contains(&a_hat) || !(1..=top).contains(&b_hat) {
            return Err(Error::InvalidParameters(format!(
                "for t={t2}/2 need 1 <= a, b <= {top}, got a={a_hat}, b={b_hat}"
            )));
        }
        CharacterLabel::new((t2 + 1) / 2, t2, a_hat, 2 * b_hat)
    }
}

/// `χ_{1,2}` of the family selected by `T`.
pub fn label_12(t2: u32) -> Result<CharacterLabel> {
    theorem1_label(t2, 1, 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub power: usize,
    pub left: String,
    pub right: String,
}

impl Mismatch {
    pub fn between(a: &QSeries, b: &QSeries) -> Option<Self> {
        a.first_mismatch(b).map(|(power, l, r)| Mismatch {
            power,
            left: l.to_string(),
            right: r.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub label: CharacterLabel,
    pub order: usize,
    pub reflection: Option<Mismatch>,
    pub swap: Option<Mismatch>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.reflection.is_none() && self.swap.is_none()
    }
}

/// Checks `χ_{r,s} = χ_{p-r,p'-s}` and `χ^{p,p'}_{r,s} = χ^{p',p}_{s,r}`.
pub fn verify_symmetries(label: &CharacterLabel, order: usize) -> SymmetryReport {
    let base = bosonic_character(label, order);
    let refl = bosonic_character(&label.reflected(), order);
    let swap = bosonic_character_raw(label.pp, label.p, label.s, label.r, order)
        .expect("swapped label of a valid label is valid");
    SymmetryReport {
        label: *label,
        order,
        reflection: Mismatch::between(&base, &refl),
        swap: Mismatch::between(&base, &swap),
    }
}

/// Named closed-form sums and products for small characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClosedForm {
    /// `Σ q^{n²}/(q)_n = χ^{2,5}_{1,2}`
    Sum25,
    /// `ΣΣ q^{(n1+n2)²+2n2²}/((q)_{n1}(q)_{2n2}) = χ^{3,7}_{1,2}`
    Sum37,
    /// `Σ q^{2n²+2n}/(q)_{2n+1} = χ^{3,4}_{1,3}`
    Sum34,
    /// `ΣΣ q^{(n1+2n2)²+2n2²}/(q)_{2n1+4n2} [n1+2n2, n1] = χ^{4,7}_{1,2}`
    Sum47,
    /// Product over `k ≡ ±1 mod 5`.
    Product25,
    /// Product over `k ≢ 0, ±2, ±10, ±12, 14 mod 28`.
    Product37,
    /// Product over `k ≡ ±1, ±4, ±6, ±7 mod 16`.
    Product34,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 7] = [
        ClosedForm::Sum25,
        ClosedForm::Sum37,
        ClosedForm::Sum34,
        ClosedForm::Sum47,
        ClosedForm::Product25,
        ClosedForm::Product37,
        ClosedForm::Product34,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ClosedForm::Sum25 => "sum-2-5",
            ClosedForm::Sum37 => "sum-3-7",
            ClosedForm::Sum34 => "sum-3-4",
            ClosedForm::Sum47 => "sum-4-7",
            ClosedForm::Product25 => "product-2-5",
            ClosedForm::Product37 => "product-3-7",
            ClosedForm::Product34 => "product-3-4",
        }
    }

    pub fn label(&self) -> CharacterLabel {
        let (p, pp, r, s) = match self {
            ClosedForm::Sum25 | ClosedForm::Product25 => (2, 5, 1, 2),
            ClosedForm::Sum37 | ClosedForm::Product37 => (3, 7, 1, 2),
            ClosedForm::Sum34 | ClosedForm::Product34 => (3, 4, 1, 3),
            ClosedForm::Sum47 => (4, 7, 1, 2),
        };
        CharacterLabel { p, pp, r, s }
    }

    pub fn series(&self, order: usize) -> QSeries {
        let n = order as i64;
        let mut acc = QSeries::zero(order);
        let mut add = |e: i64, body: QSeries| {
            if e <= n {
                acc = &acc + &body.shift(e as usize);
            }
        };
        match self {
            ClosedForm::Sum25 => {
                for k in (0..).take_while(|k| k * k <= n) {
                    add(k * k, pochhammer_finite_inverse(k as usize, order));
                }
            }
            ClosedForm::Sum37 => {
                for n1 in (0..).take_while(|k| k * k <= n) {
                    for n2 in (0..).take_while(|k| (n1 + k) * (n1 + k) + 2 * k * k <= n) {
                        let e = (n1 + n2) * (n1 + n2) + 2 * n2 * n2;
                        let d = &pochhammer_finite_inverse(n1 as usize, order)
                            * &pochhammer_finite_inverse(2 * n2 as usize, order);
                        add(e, d);
                    }
                }
            }
            ClosedForm::Sum34 => {
                for k in (0..).take_while(|k| 2 * k * k + 2 * k <= n) {
                    add(2 * k * k + 2 * k, pochhammer_finite_inverse(2 * k as usize + 1, order));
                }
            }
            ClosedForm::Sum47 => {
                for n1 in (0..).take_while(|k| k * k <= n) {
                    for n2 in (0..).take_while(|k| (n1 + 2 * k).pow(2) + 2 * k * k <= n) {
                        let e = (n1 + 2 * n2).pow(2) + 2 * n2 * n2;
                        let d = &pochhammer_finite_inverse((2 * n1 + 4 * n2) as usize, order)
                            * &q_binomial(n1 + 2 * n2, n1, order);
                        add(e, d);
                    }
                }
            }
            ClosedForm::Product25 => {
                return modular_product(5, &symmetric_residues(5, &[1]), order).unwrap()
            }
            ClosedForm::Product37 => {
                let excluded = symmetric_residues(28, &[0, 2, 10, 12, 14]);
                let res: Vec<u64> = (0..28).filter(|r| !excluded.contains(r)).collect();
                return modular_product(28, &res, order).unwrap();
            }
            ClosedForm::Product34 => {
                return modular_product(16, &symmetric_residues(16, &[1, 4, 6, 7]), order).unwrap()
            }
        }
        acc
    }
}
