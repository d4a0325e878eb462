//! Laurent series over a finite field, known modulo a power of `t`.

use std::fmt;

use super::field::FiniteField;

/// A Laurent series `sum c_i t^i`.
///
/// `coeffs[0]` is the coefficient of `t^start` and is nonzero whenever
/// `coeffs` is nonempty, so `start` is the valuation. With `abs_prec =
/// None` the series is an exact Laurent polynomial (trailing zeros
/// trimmed). With `Some(p)` it is known modulo `t^p` and `coeffs` covers
/// exactly the exponents `start..p`; an empty inexact series is `0 mod
/// t^p` and has unknown valuation `>= p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    start: i64,
    coeffs: Vec<u32>,
    abs_prec: Option<i64>,
}

impl TruncSeries {
    pub fn zero() -> Self {
        Self {
            start: 0,
            coeffs: Vec::new(),
            abs_prec: None,
        }
    }

    /// `c t^e`, exact.
    pub fn monomial(c: u32, e: i64) -> Self {
        Self::from_terms(&[(e, c)], None)
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// Builds from `(exponent, coefficient)` pairs; terms at or above a
    /// given precision are dropped. Coefficients must already be reduced.
    pub fn from_terms(terms: &[(i64, u32)], abs_prec: Option<i64>) -> Self {
        let Some(lo) = terms.iter().filter(|(_, c)| *c != 0).map(|(e, _)| *e).min() else {
            return Self {
                start: abs_prec.unwrap_or(0),
                coeffs: Vec::new(),
                abs_prec,
            };
        };
        let hi = terms.iter().map(|(e, _)| *e + 1).max().unwrap_or(lo);
        let mut coeffs = vec![0u32; (hi - lo).max(0) as usize];
        for &(e, c) in terms {
            if e >= lo {
                // caller supplies distinct exponents
                coeffs[(e - lo) as usize] = c;
            }
        }
        Self::normalize(lo, coeffs, abs_prec)
    }

    fn normalize(mut start: i64, mut coeffs: Vec<u32>, abs_prec: Option<i64>) -> Self {
        if let Some(p) = abs_prec {
            let keep = (p - start).max(0) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|&c| c != 0);
        match lead {
            None => {
                return Self {
                    start: abs_prec.unwrap_or(0),
                    coeffs: Vec::new(),
                    abs_prec,
                }
            }
            Some(i) => {
                coeffs.drain(..i);
                start += i as i64;
            }
        }
        match abs_prec {
            None => {
                while coeffs.last() == Some(&0) {
                    coeffs.pop();
                }
            }
            Some(p) => coeffs.resize((p - start) as usize, 0),
        }
        Self {
            start,
            coeffs,
            abs_prec,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.abs_prec.is_none()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.is_exact() && self.coeffs.is_empty()
    }

    pub fn abs_prec(&self) -> Option<i64> {
        self.abs_prec
    }

    /// `None` for zero and for inexact series with no known nonzero term.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// A lower bound for the valuation (`i64::MAX` for exact zero).
    fn val_bound(&self) -> i64 {
        match (self.valuation(), self.abs_prec) {
            (Some(v), _) => v,
            (None, Some(p)) => p,
            (None, None) => i64::MAX,
        }
    }

    pub fn coeff(&self, e: i64) -> u32 {
        if e < self.start {
            return 0;
        }
        self.coeffs
            .get((e - self.start) as usize)
            .copied()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(i, c)| (self.start + i as i64, *c))
    }

    fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub fn add(&self, other: &Self, f: &FiniteField) -> Self {
        let prec = min_opt(self.abs_prec, other.abs_prec);
        if self.coeffs.is_empty() && other.coeffs.is_empty() {
            return Self::normalize(0, Vec::new(), prec);
        }
        let lo = match (self.coeffs.is_empty(), other.coeffs.is_empty()) {
            (true, _) => other.start,
            (_, true) => self.start,
            _ => self.start.min(other.start),
        };
        let hi = self.end().max(other.end());
        let coeffs = (lo..hi.max(lo))
            .map(|e| f.add(self.coeff(e), other.coeff(e)))
            .collect();
        Self::normalize(lo, coeffs, prec)
    }

    pub fn neg(&self, f: &FiniteField) -> Self {
        Self {
            start: self.start,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            abs_prec: self.abs_prec,
        }
    }

    pub fn sub(&self, other: &Self, f: &FiniteField) -> Self {
        self.add(&other.neg(f), f)
    }

    pub fn mul(&self, other: &Self, f: &FiniteField) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        // a = A + O(t^Pa), b = B + O(t^Pb): ab = AB + O(t^min(Pa + vb, Pb + va))
        let prec = min_opt(
            self.abs_prec.map(|p| p.saturating_add(other.val_bound())),
            other.abs_prec.map(|p| p.saturating_add(self.val_bound())),
        );
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::normalize(0, Vec::new(), prec);
        }
        let mut coeffs = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Self::normalize(self.start + other.start, coeffs, prec)
    }

    /// Inverse of a series with known valuation. Exact monomials invert
    /// exactly; otherwise at most `rel_prec` terms are produced.
    pub fn inv(&self, f: &FiniteField, rel_prec: i64) -> Option<Self> {
        let v = self.valuation()?;
        if self.is_exact() && self.coeffs.len() == 1 {
            return Some(Self::monomial(f.inv(self.coeffs[0]), -v));
        }
        let own = self.abs_prec.map_or(rel_prec, |p| p - v);
        let r = own.min(rel_prec).max(1) as usize;
        let u0_inv = f.inv(self.coeffs[0]);
        // solve (sum u_i t^i)(sum w_j t^j) = 1 term by term
        let mut w = vec![0u32; r];
        w[0] = u0_inv;
        for n in 1..r {
            let mut s = 0u32;
            for i in 1..=n {
                s = f.add(s, f.mul(self.coeffs.get(i).copied().unwrap_or(0), w[n - i]));
            }
            w[n] = f.mul(f.neg(s), u0_inv);
        }
        Some(Self::normalize(-v, w, Some(-v + r as i64)))
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*t^{e}")?;
        }
        match (first, self.abs_prec) {
            (true, None) => write!(f, "0"),
            (true, Some(p)) => write!(f, "O(t^{p})"),
            (false, Some(p)) => write!(f, " + O(t^{p})"),
            (false, None) => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic() {
        let f = FiniteField::new(3).unwrap();
        let a = TruncSeries::from_terms(&[(0, 1), (1, 2)], None);
        let b = TruncSeries::from_terms(&[(-1, 1), (0, 1)], None);
        let ab = a.mul(&b, &f);
        // (1 + 2t)(t^-1 + 1) = t^-1 + 3 + 2t = t^-1 + 2t over F_3
        assert_eq!(ab, TruncSeries::from_terms(&[(-1, 1), (1, 2)], None));
        assert!(a.sub(&a, &f).is_exact_zero());
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let f = FiniteField::new(2).unwrap();
        let a = TruncSeries::from_terms(&[(0, 1), (1, 1)], None);
        let inv = a.inv(&f, 6).unwrap();
        assert_eq!(inv.abs_prec(), Some(6));
        assert!((0..6).all(|e| inv.coeff(e) == 1));
        let one = a.mul(&inv, &f);
        assert_eq!(one, TruncSeries::from_terms(&[(0, 1)], Some(6)));
    }

    #[test]
    fn monomials_invert_exactly() {
        let f = FiniteField::new(5).unwrap();
        let a = TruncSeries::monomial(2, 3);
        assert_eq!(a.inv(&f, 4).unwrap(), TruncSeries::monomial(3, -3));
    }

    #[test]
    fn precision_tracking() {
        let f = FiniteField::new(2).unwrap();
        let a = TruncSeries::from_terms(&[(1, 1)], Some(4));
        let b = TruncSeries::from_terms(&[(2, 1)], None);
        let ab = a.mul(&b, &f);
        assert_eq!(ab.valuation(), Some(3));
        assert_eq!(ab.abs_prec(), Some(6));
        let c = a.sub(&a, &f);
        assert_eq!(c.valuation(), None);
        assert_eq!(c.abs_prec(), Some(4));
        assert_eq!(c.to_string(), "O(t^4)");
    }
}
