//! Exact truncated power series in `q` (weight) and `x` (number of parts).
//!
//! Coefficients are 128-bit integers with checked arithmetic, so any
//! overflow aborts loudly instead of wrapping. Storage is dense: one row per
//! power of `q`, each row a vector over powers of `x`.
//!
//! Finite q-Pochhammer symbols `(a; q^s)_n = ∏_{j=0}^{n-1} (1 − a q^{js})`
//! with `a = ±q^b` use the standard convention of exactly `n` factors. A
//! negative `b` (as in `(−1/q; q²)_n`) produces a [`LaurentFactor`], which
//! must be combined with enough positive powers of `q` before it can be
//! turned back into an ordinary series.

use serde_json::json;

use crate::error::{KrError, Result};

/// Coefficient type of every series.
pub type Coeff = i128;

pub(crate) fn cadd(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b)
        .expect("series coefficient overflow in addition")
}

pub(crate) fn cmul(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b)
        .expect("series coefficient overflow in multiplication")
}

/// Divides a univariate truncated series in place by `1 − q^k` (`k ≥ 1`).
pub(crate) fn divide_one_minus(coeffs: &mut [Coeff], k: usize) {
    debug_assert!(k >= 1);
    for i in k..coeffs.len() {
        coeffs[i] = cadd(coeffs[i], coeffs[i - k]);
    }
}

/// Multiplies two univariate truncated series, keeping `len` coefficients.
pub(crate) fn mul_univariate(a: &[Coeff], b: &[Coeff], len: usize) -> Vec<Coeff> {
    let mut out = vec![0; len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            if bj != 0 {
                out[i + j] = cadd(out[i + j], cmul(ai, bj));
            }
        }
    }
    out
}

/// A bivariate series `Σ c(n, m) q^n x^m` known exactly for `n ≤ max_q`, `m ≤ max_x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    max_q: usize,
    max_x: usize,
    rows: Vec<Vec<Coeff>>,
}

impl TruncatedSeries {
    /// The zero series.
    pub fn zero(max_q: usize, max_x: usize) -> Self {
        Self {
            max_q,
            max_x,
            rows: vec![vec![0; max_x + 1]; max_q + 1],
        }
    }

    /// The constant series 1.
    pub fn one(max_q: usize, max_x: usize) -> Self {
        Self::monomial(0, 0, 1, max_q, max_x)
    }

    /// `c q^n x^m`, or zero when the monomial lies beyond the truncation.
    pub fn monomial(n: usize, m: usize, c: Coeff, max_q: usize, max_x: usize) -> Self {
        let mut s = Self::zero(max_q, max_x);
        s.add_coeff(n, m, c);
        s
    }

    /// A series in `q` alone (`max_x = 0`) from its coefficient list. Entries
    /// beyond `max_q` are ignored.
    pub fn from_q_coeffs(coeffs: &[Coeff], max_q: usize) -> Self {
        let mut s = Self::zero(max_q, 0);
        for (n, &c) in coeffs.iter().enumerate().take(max_q + 1) {
            s.rows[n][0] = c;
        }
        s
    }

    /// Truncation order in `q`.
    pub fn max_q(&self) -> usize {
        self.max_q
    }

    /// Truncation order in `x`.
    pub fn max_x(&self) -> usize {
        self.max_x
    }

    /// Coefficient of `q^n x^m`; zero beyond the truncation.
    pub fn coeff(&self, n: usize, m: usize) -> Coeff {
        if n > self.max_q || m > self.max_x {
            return 0;
        }
        self.rows[n][m]
    }

    /// Adds `c` to the coefficient of `q^n x^m`; silently ignored beyond the truncation.
    pub fn add_coeff(&mut self, n: usize, m: usize, c: Coeff) {
        if n <= self.max_q && m <= self.max_x {
            self.rows[n][m] = cadd(self.rows[n][m], c);
        }
    }

    /// Coefficients of the `x^m` slice as a series in `q`.
    pub fn q_coeffs_at_x(&self, m: usize) -> Vec<Coeff> {
        (0..=self.max_q).map(|n| self.coeff(n, m)).collect()
    }

    /// Nonzero coefficients as `(n, m, c)` triples in `(n, m)` order.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, usize, Coeff)> + '_ {
        self.rows.iter().enumerate().flat_map(|(n, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(move |(m, &c)| (n, m, c))
        })
    }

    /// True when every stored coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.nonzero_terms().next().is_none()
    }

    /// The same series cut to smaller truncation orders.
    pub fn truncate(&self, max_q: usize, max_x: usize) -> Self {
        let max_q = max_q.min(self.max_q);
        let max_x = max_x.min(self.max_x);
        let rows = self.rows[..=max_q]
            .iter()
            .map(|r| r[..=max_x].to_vec())
            .collect();
        Self { max_q, max_x, rows }
    }

    /// Coefficientwise sum, truncated to the smaller orders.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(other.max_q, other.max_x);
        for n in 0..=out.max_q {
            for m in 0..=out.max_x {
                out.rows[n][m] = cadd(out.rows[n][m], other.rows[n][m]);
            }
        }
        out
    }

    /// Coefficientwise difference, truncated to the smaller orders.
    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.truncate(other.max_q, other.max_x);
        for n in 0..=out.max_q {
            for m in 0..=out.max_x {
                out.rows[n][m] = out.rows[n][m]
                    .checked_sub(other.rows[n][m])
                    .expect("series coefficient overflow");
            }
        }
        out
    }

    /// Exact product, truncated to the smaller orders.
    pub fn mul(&self, other: &Self) -> Self {
        let max_q = self.max_q.min(other.max_q);
        let max_x = self.max_x.min(other.max_x);
        let mut out = Self::zero(max_q, max_x);
        for n1 in 0..=max_q {
            for m1 in 0..=max_x {
                let a = self.rows[n1][m1];
                if a == 0 {
                    continue;
                }
                for n2 in 0..=(max_q - n1) {
                    for m2 in 0..=(max_x - m1) {
                        let b = other.rows[n2][m2];
                        if b != 0 {
                            let slot = &mut out.rows[n1 + n2][m1 + m2];
                            *slot = cadd(*slot, cmul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplies by `q^dq x^dx`. A negative `dq` lowers the truncation order
    /// by `|dq|` and fails with a Laurent-resolution error if a nonzero
    /// coefficient would land on a negative power of `q`.
    pub fn scalar_shift(&self, dq: i64, dx: usize) -> Result<Self> {
        let max_q = if dq >= 0 {
            self.max_q
        } else {
            let down = dq.unsigned_abs() as usize;
            if let Some((n, m, c)) = self.nonzero_terms().find(|&(n, _, _)| n < down) {
                return Err(KrError::LaurentResolution(format!(
                    "shift by q^{dq} leaves coefficient {c} at q^{} x^{m}",
                    n as i64 + dq
                )));
            }
            self.max_q.saturating_sub(down)
        };
        let mut out = Self::zero(max_q, self.max_x);
        for (n, m, c) in self.nonzero_terms() {
            let target = n as i64 + dq;
            if target >= 0 {
                out.add_coeff(target as usize, m + dx, c);
            }
        }
        Ok(out)
    }

    /// Sets `x = 1`: the result is a series in `q` alone. Only meaningful when
    /// `max_x ≥ max_q`, which holds for every series whose `x`-degree never
    /// exceeds its `q`-degree.
    pub fn specialize_x1(&self) -> Self {
        let mut out = Self::zero(self.max_q, 0);
        for (n, _, c) in self.nonzero_terms() {
            out.add_coeff(n, 0, c);
        }
        out
    }

    /// JSON dump `{"max_q":…, "max_x":…, "coeffs":[[n,m,"c"],…]}` with
    /// coefficients as decimal strings; only nonzero entries are listed.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .nonzero_terms()
            .map(|(n, m, c)| json!([n, m, c.to_string()]))
            .collect();
        json!({ "max_q": self.max_q, "max_x": self.max_x, "coeffs": coeffs })
    }

    /// CSV dump with header `n,m,coeff`, nonzero entries only.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,m,coeff\n");
        for (n, m, c) in self.nonzero_terms() {
            out.push_str(&format!("{n},{m},{c}\n"));
        }
        out
    }
}

/// `q^{q_shift} · body`, where `body` has only nonnegative exponents and
/// `q_shift` may be negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentFactor {
    /// Power of `q` multiplying the body.
    pub q_shift: i64,
    /// Polynomial or series part; its truncation order already accounts for `q_shift`.
    pub body: TruncatedSeries,
}

impl LaurentFactor {
    /// Multiplies the body by an ordinary series (orders truncate to the minimum).
    pub fn mul_series(&self, s: &TruncatedSeries) -> Self {
        Self {
            q_shift: self.q_shift,
            body: self.body.mul(s),
        }
    }

    /// Adds an extra power of `q` to the shift.
    pub fn shifted(&self, dq: i64) -> Self {
        Self {
            q_shift: self.q_shift + dq,
            body: self.body.clone(),
        }
    }

    /// Converts to an ordinary series, failing if a nonzero coefficient would
    /// sit at a negative power of `q`.
    pub fn resolve(&self) -> Result<TruncatedSeries> {
        self.body.scalar_shift(self.q_shift, 0)
    }
}

/// Sign of `a` in `(a; q^s)_n` with `a = ±q^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ASign {
    /// `a = +q^b`: factors `1 − q^{b+js}`.
    Plus,
    /// `a = −q^b`: factors `1 + q^{b+js}`.
    Minus,
}

/// `(±q^b; q^s)_n = ∏_{j=0}^{n-1} (1 ∓ q^{b+js})` as an exact polynomial,
/// truncated so that after applying the shift every power up to `max_q` is kept.
/// The shift is the sum of the negative exponents among the factors and is
/// zero when `b ≥ 0`.
pub fn poch_finite(
    sign: ASign,
    base_q_power: i64,
    step: i64,
    n: usize,
    max_q: usize,
) -> Result<LaurentFactor> {
    if step < 1 {
        return Err(KrError::Argument(format!(
            "Pochhammer step {step} is below 1"
        )));
    }
    let exps: Vec<i64> = (0..n as i64).map(|j| base_q_power + j * step).collect();
    let q_shift: i64 = exps.iter().filter(|&&e| e < 0).sum();
    let top = max_q as i64 - q_shift;
    let len = (top + 1) as usize;
    // coefficient vector indexed by exponent − q_shift
    let mut body = vec![0 as Coeff; len];
    body[0] = 1;
    // a factor with negative exponent e equals q^e (c + q^{-e}); the q^e
    // goes into the shift and the body is multiplied by c + q^{-e}
    let c: Coeff = match sign {
        ASign::Plus => -1,
        ASign::Minus => 1,
    };
    for &e in &exps {
        let (lo_exp, hi_exp, lo_c, hi_c) = if e >= 0 {
            (0usize, e as usize, 1, c)
        } else {
            (0usize, (-e) as usize, c, 1)
        };
        let mut next = vec![0 as Coeff; len];
        for (i, &v) in body.iter().enumerate() {
            if v == 0 {
                continue;
            }
            if i + lo_exp < len {
                next[i + lo_exp] = cadd(next[i + lo_exp], cmul(v, lo_c));
            }
            if i + hi_exp < len {
                next[i + hi_exp] = cadd(next[i + hi_exp], cmul(v, hi_c));
            }
        }
        body = next;
    }
    Ok(LaurentFactor {
        q_shift,
        body: TruncatedSeries::from_q_coeffs(&body, len - 1),
    })
}

/// `1/∏_{j=0}^{n-1} (1 − q^{b+js})` expanded to order `max_q`, by dividing by
/// one factor at a time. Requires `b ≥ 1` and `s ≥ 1`.
pub fn inv_poch_series(
    base_q_power: i64,
    step: i64,
    n: usize,
    max_q: usize,
) -> Result<TruncatedSeries> {
    if base_q_power < 1 || step < 1 {
        return Err(KrError::Argument(format!(
            "reciprocal Pochhammer needs base ≥ 1 and step ≥ 1, got base {base_q_power}, step {step}"
        )));
    }
    let mut coeffs = vec![0 as Coeff; max_q + 1];
    coeffs[0] = 1;
    for j in 0..n as i64 {
        let k = (base_q_power + j * step) as usize;
        if k > max_q {
            break;
        }
        divide_one_minus(&mut coeffs, k);
    }
    Ok(TruncatedSeries::from_q_coeffs(&coeffs, max_q))
}

/// `1/∏_{r ∈ residues} (q^r; q^M)_∞` to order `max_q`. The coefficient of
/// `q^n` counts partitions of `n` into parts congruent to a residue mod `M`.
pub fn product_series_inverse(
    modulus: u32,
    residues: &[u32],
    max_q: usize,
) -> Result<TruncatedSeries> {
    if modulus < 2 {
        return Err(KrError::Argument(format!("modulus {modulus} is below 2")));
    }
    if residues.is_empty() {
        return Err(KrError::Argument("empty residue set".into()));
    }
    if let Some(r) = residues.iter().find(|&&r| r == 0 || r > modulus) {
        return Err(KrError::Argument(format!(
            "residue {r} is outside 1..={modulus}"
        )));
    }
    let mut coeffs = vec![0 as Coeff; max_q + 1];
    coeffs[0] = 1;
    for &r in residues {
        let mut k = r as usize;
        while k <= max_q {
            divide_one_minus(&mut coeffs, k);
            k += modulus as usize;
        }
    }
    Ok(TruncatedSeries::from_q_coeffs(&coeffs, max_q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[Coeff], max_q: usize) -> TruncatedSeries {
        TruncatedSeries::from_q_coeffs(coeffs, max_q)
    }

    #[test]
    fn poch_examples() {
        let p = poch_finite(ASign::Minus, 1, 2, 2, 20).unwrap();
        assert_eq!(p.q_shift, 0);
        assert_eq!(p.resolve().unwrap(), q(&[1, 1, 0, 1, 1], 20));
        let p = poch_finite(ASign::Plus, 1, 1, 0, 20).unwrap();
        assert_eq!(p.resolve().unwrap(), TruncatedSeries::one(20, 0));
        // (1 + q^{-1})(1 + q) = q^{-1} (1 + q)^2
        let p = poch_finite(ASign::Minus, -1, 2, 2, 20).unwrap();
        assert_eq!(p.q_shift, -1);
        assert_eq!(p.body.truncate(20, 0), q(&[1, 2, 1], 20));
        assert_eq!(p.body.max_q(), 21);
        assert!(p.resolve().is_err());
        assert_eq!(p.shifted(1).resolve().unwrap(), q(&[1, 2, 1], 21));
        // (q; q)_3 = 1 - q - q^2 + q^4 + q^5 - q^6
        let p = poch_finite(ASign::Plus, 1, 1, 3, 10).unwrap();
        assert_eq!(p.resolve().unwrap(), q(&[1, -1, -1, 0, 1, 1, -1], 10));
    }

    #[test]
    fn inverse_poch_examples() {
        assert_eq!(
            inv_poch_series(1, 1, 1, 5).unwrap(),
            q(&[1, 1, 1, 1, 1, 1], 5)
        );
        assert_eq!(inv_poch_series(3, 3, 2, 9).unwrap().coeff(9, 0), 2);
        assert_eq!(
            inv_poch_series(1, 1, 0, 5).unwrap(),
            TruncatedSeries::one(5, 0)
        );
        assert!(inv_poch_series(0, 1, 1, 5).is_err());
    }

    #[test]
    fn poch_times_inverse_is_one() {
        for n in 0..6 {
            let p = poch_finite(ASign::Plus, 2, 3, n, 30)
                .unwrap()
                .resolve()
                .unwrap();
            let inv = inv_poch_series(2, 3, n, 30).unwrap();
            assert_eq!(p.mul(&inv), TruncatedSeries::one(30, 0));
        }
    }

    #[test]
    fn product_examples() {
        let s = product_series_inverse(9, &[1, 3, 6, 8], 9).unwrap();
        assert_eq!(s.coeff(9, 0), 7);
        assert_eq!(
            product_series_inverse(9, &[1], 0).unwrap(),
            TruncatedSeries::one(0, 0)
        );
        assert!(product_series_inverse(9, &[], 4).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let a = q(&[1, 1], 10);
        assert_eq!(a.mul(&a), q(&[1, 2, 1], 10));
        assert_eq!(a.mul(&TruncatedSeries::one(10, 0)), a);
        let b = q(&[0, 1, 1], 10);
        assert_eq!(b.scalar_shift(-1, 0).unwrap(), q(&[1, 1], 9));
        assert!(a.scalar_shift(-1, 0).is_err());
        let mixed = TruncatedSeries::one(5, 3).mul(&TruncatedSeries::one(3, 5));
        assert_eq!((mixed.max_q(), mixed.max_x()), (3, 3));
    }

    #[test]
    fn json_dump_uses_strings() {
        let s = TruncatedSeries::monomial(2, 1, -5, 3, 3);
        let j = s.to_json();
        assert_eq!(j["coeffs"][0], json!([2, 1, "-5"]));
        assert_eq!(j["max_q"], 3);
    }
}
