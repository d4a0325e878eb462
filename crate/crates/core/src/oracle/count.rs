//! Brute-force double-coset counts in `GL_n(F_q((t)))`.

use std::collections::BTreeMap;

use super::field::FiniteField;
use super::series::TruncSeries;
use super::smith::{smith_valuations_from, OracleMatrix};
use crate::catalog;
use crate::charalg::{LatticeElement, QMode};
use crate::error::{Error, Result};
use crate::lattice::Weight;
use crate::poly::LaurentPoly;

/// Limits of the enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub max_n: usize,
    pub max_q: u64,
    pub max_spread: i64,
}

impl Default for Envelope {
    fn default() -> Self {
        Self {
            max_n: 3,
            max_q: 5,
            max_spread: 4,
        }
    }
}

impl Envelope {
    pub fn check(&self, q: u64, weights: &[&[i64]]) -> Result<()> {
        for w in weights {
            if w.is_empty() || w.len() > self.max_n {
                return Err(Error::EnvelopeExceeded(format!(
                    "GL_{} outside n <= {}",
                    w.len(),
                    self.max_n
                )));
            }
            let spread = w.iter().max().unwrap() - w.iter().min().unwrap();
            if spread > self.max_spread {
                return Err(Error::EnvelopeExceeded(format!(
                    "spread {spread} above {}",
                    self.max_spread
                )));
            }
        }
        if q > self.max_q {
            return Err(Error::EnvelopeExceeded(format!(
                "q = {q} above {}",
                self.max_q
            )));
        }
        Ok(())
    }
}

/// Counting context: a residue field and an envelope.
#[derive(Clone, Debug)]
pub struct Oracle {
    field: FiniteField,
    q: u64,
    envelope: Envelope,
}

fn require_dominant(mu: &[i64]) -> Result<()> {
    if mu.windows(2).all(|p| p[0] >= p[1]) {
        Ok(())
    } else {
        Err(Error::NotDominant(Weight(mu.to_vec()).to_string()))
    }
}

/// Sum of `c_v t^v` over the given exponents, with coefficients drawn from
/// `digits` in order.
fn series_from_digits(exps: std::ops::Range<i64>, digits: &[u32]) -> TruncSeries {
    let terms: Vec<(i64, u32)> = exps.zip(digits.iter().copied()).collect();
    TruncSeries::from_terms(&terms, None)
}

/// Runs `visit` on every vector in `{0..q}^len`.
fn for_each_digits(len: usize, q: u32, mut visit: impl FnMut(&[u32]) -> Result<()>) -> Result<()> {
    let mut d = vec![0u32; len];
    loop {
        visit(&d)?;
        let mut k = 0;
        while k < len && d[k] == q - 1 {
            d[k] = 0;
            k += 1;
        }
        if k == len {
            return Ok(());
        }
        d[k] += 1;
    }
}

impl Oracle {
    pub fn new(q: u64) -> Result<Self> {
        Self::with_envelope(q, Envelope::default())
    }

    pub fn with_envelope(q: u64, envelope: Envelope) -> Result<Self> {
        let field = FiniteField::new(q)?;
        envelope.check(q, &[&[0]])?;
        Ok(Self { field, q, envelope })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    fn smith(&self, m: &OracleMatrix, mu: &[i64], lambda: &[i64]) -> Result<Vec<i64>> {
        let abs = |v: &[i64]| v.iter().sum::<i64>().abs();
        smith_valuations_from(m, &self.field, abs(mu) + abs(lambda) + 4)
    }

    /// Number of `u` in `U(F)/U(O)` with `lambda(t) u` in `K mu(t) K`.
    ///
    /// Entry `(i, j)` of `lambda(t) u` is `t^lambda_i x_ij`, and every entry
    /// of a matrix in `K mu(t) K` has valuation at least `min(mu)`, so only
    /// polar parts `x_ij` in `t^-k O / O` with `k = max(0, lambda_i -
    /// min(mu))` can contribute.
    pub fn satake_count(&self, mu: &[i64], lambda: &[i64]) -> Result<u64> {
        require_dominant(mu)?;
        if mu.len() != lambda.len() {
            return Err(Error::Malformed(
                "mu and lambda need the same length".into(),
            ));
        }
        self.envelope.check(self.q, &[mu, lambda])?;
        let n = mu.len();
        let mu_min = *mu.iter().min().unwrap();
        if lambda.iter().sum::<i64>() != mu.iter().sum::<i64>()
            || lambda.iter().any(|&l| l < mu_min)
        {
            return Ok(0);
        }
        let k: Vec<usize> = lambda
            .iter()
            .map(|&l| (l - mu_min).max(0) as usize)
            .collect();
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let total: usize = slots.iter().map(|&(i, _)| k[i]).sum();
        let mut count = 0u64;
        for_each_digits(total, self.field.order(), |digits| {
            let mut m: OracleMatrix = vec![vec![TruncSeries::zero(); n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = TruncSeries::monomial(1, lambda[i]);
            }
            let mut pos = 0;
            for &(i, j) in &slots {
                let ki = k[i] as i64;
                let x = series_from_digits(lambda[i] - ki..lambda[i], &digits[pos..pos + k[i]]);
                m[i][j] = x;
                pos += k[i];
            }
            if self.smith(&m, mu, lambda)? == mu {
                count += 1;
            }
            Ok(())
        })?;
        Ok(count)
    }

    /// `sum over lambda of satake_count(mu, lambda) e^lambda`, in numeric
    /// mode. Every nonzero count must sit at some `lambda` whose dominant
    /// conjugate is below `mu`.
    pub fn satake_vector(&self, mu: &[i64]) -> Result<LatticeElement> {
        require_dominant(mu)?;
        self.envelope.check(self.q, &[mu])?;
        let n = mu.len();
        let gl = catalog::lookup(&format!("GL{n}"))?;
        let mu_w = Weight(mu.to_vec());
        let mu_min = *mu.iter().min().unwrap();
        let total: i64 = mu.iter().sum();
        let mut out = LatticeElement::zero(QMode::Numeric(self.q));
        for lambda in compositions(n, total, mu_min) {
            let c = self.satake_count(mu, &lambda)?;
            if c == 0 {
                continue;
            }
            let lw = Weight(lambda);
            let dom = crate::weyl::to_dominant(&gl, &lw);
            if !gl.dominance_leq(&dom, &mu_w) {
                return Err(Error::SupportViolation(lw));
            }
            out.add_term(lw, &LaurentPoly::constant(c as i64));
        }
        Ok(out)
    }

    /// For `GL_2`: the number of cosets `hK` in `K mu(t) K` with
    /// `h^-1 kappa(t)` in `K nu(t) K`, i.e. the coefficient of the double
    /// coset of `kappa` in the convolution of those of `mu` and `nu`.
    ///
    /// Cosets are enumerated by their Hermite forms `[[t^a, c], [0, t^b]]`
    /// with `a + b = |mu|` and `c` a sum of `c_v t^v` for `min(mu) <= v < a`.
    pub fn convolve_count(&self, mu: &[i64], nu: &[i64], kappa: &[i64]) -> Result<u64> {
        for w in [mu, nu, kappa] {
            require_dominant(w)?;
            if w.len() != 2 {
                return Err(Error::EnvelopeExceeded(
                    "convolution is enumerated for GL_2 only".into(),
                ));
            }
        }
        self.envelope.check(self.q, &[mu, nu, kappa])?;
        let sum = mu[0] + mu[1];
        let mu_min = mu[1];
        let mut count = 0u64;
        for a in mu_min..=sum - mu_min {
            let b = sum - a;
            let len = (a - mu_min).max(0) as usize;
            for_each_digits(len, self.field.order(), |digits| {
                let c = series_from_digits(mu_min..a, digits);
                let h = vec![
                    vec![TruncSeries::monomial(1, a), c.clone()],
                    vec![TruncSeries::zero(), TruncSeries::monomial(1, b)],
                ];
                if self.smith(&h, mu, mu)? != mu {
                    return Ok(());
                }
                // h^-1 = [[t^-a, -c t^(-a-b)], [0, t^-b]]
                let f = &self.field;
                let g = vec![
                    vec![
                        TruncSeries::monomial(1, kappa[0] - a),
                        c.neg(f).mul(&TruncSeries::monomial(1, kappa[1] - a - b), f),
                    ],
                    vec![TruncSeries::zero(), TruncSeries::monomial(1, kappa[1] - b)],
                ];
                if self.smith(&g, nu, kappa)? == nu {
                    count += 1;
                }
                Ok(())
            })?;
        }
        Ok(count)
    }

    /// All convolution coefficients of `mu` and `nu` for `GL_2`, keyed by
    /// the dominant `kappa`.
    pub fn convolution(&self, mu: &[i64], nu: &[i64]) -> Result<BTreeMap<Weight, u64>> {
        let top = [mu[0] + nu[0], mu[1] + nu[1]];
        let sum = top[0] + top[1];
        let mut out = BTreeMap::new();
        let mut k0 = top[0];
        while 2 * k0 >= sum {
            let kappa = [k0, sum - k0];
            let c = self.convolve_count(mu, nu, &kappa)?;
            if c > 0 {
                out.insert(Weight(kappa.to_vec()), c);
            }
            k0 -= 1;
        }
        Ok(out)
    }
}

/// Integer vectors of length `n` with entries at least `floor` summing to
/// `total`, in lexicographic order.
pub fn compositions(n: usize, total: i64, floor: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, rest: i64, floor: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() + 1 == n {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        let room = rest - floor * (n - prefix.len() - 1) as i64;
        for x in floor..=room {
            prefix.push(x);
            go(n, rest - x, floor, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 && total >= floor * n as i64 {
        go(n, total, floor, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_counts() {
        for q in [2u64, 3] {
            let o = Oracle::new(q).unwrap();
            assert_eq!(o.satake_count(&[1, 0], &[0, 1]).unwrap(), 1);
            assert_eq!(o.satake_count(&[1, 0], &[1, 0]).unwrap(), q);
            assert_eq!(o.satake_count(&[2, 0], &[1, 1]).unwrap(), q - 1);
            assert_eq!(o.satake_count(&[2, 0], &[0, 2]).unwrap(), 1);
            assert_eq!(o.satake_count(&[2, 0], &[2, 0]).unwrap(), q * q);
        }
    }

    #[test]
    fn gl2_vectors() {
        let o = Oracle::new(2).unwrap();
        assert_eq!(
            o.satake_vector(&[1, 0]).unwrap().to_string(),
            "e^(0,1) + 2*e^(1,0)"
        );
        assert_eq!(o.satake_vector(&[1, 1]).unwrap().to_string(), "e^(1,1)");
    }

    #[test]
    fn gl3_minuscule_vector() {
        let o = Oracle::new(2).unwrap();
        assert_eq!(
            o.satake_vector(&[1, 0, 0]).unwrap().to_string(),
            "e^(0,0,1) + 2*e^(0,1,0) + 4*e^(1,0,0)"
        );
    }

    #[test]
    fn convolution_examples() {
        for q in [2u64, 3] {
            let o = Oracle::new(q).unwrap();
            assert_eq!(o.convolve_count(&[1, 0], &[1, 0], &[1, 1]).unwrap(), q + 1);
            assert_eq!(o.convolve_count(&[1, 0], &[1, 0], &[2, 0]).unwrap(), 1);
            assert_eq!(o.convolve_count(&[1, 0], &[0, 0], &[1, 0]).unwrap(), 1);
        }
    }

    #[test]
    fn envelope_is_enforced() {
        assert_eq!(Oracle::new(7).unwrap_err().kind(), "EnvelopeExceeded");
        let o = Oracle::new(2).unwrap();
        assert_eq!(
            o.satake_count(&[5, 0], &[5, 0]).unwrap_err().kind(),
            "EnvelopeExceeded"
        );
        assert_eq!(
            o.satake_vector(&[1, 0, 0, 0]).unwrap_err().kind(),
            "EnvelopeExceeded"
        );
        assert_eq!(
            o.satake_count(&[0, 1], &[0, 1]).unwrap_err().kind(),
            "NotDominant"
        );
    }

    #[test]
    fn composition_counts() {
        assert_eq!(
            compositions(2, 2, 0),
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
        assert_eq!(compositions(3, 1, 0).len(), 3);
        assert!(compositions(2, -1, 0).is_empty());
    }
}
