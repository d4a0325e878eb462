//! Elementary-divisor valuations over `F_q[[t]]`.

use super::field::FiniteField;
use super::series::TruncSeries;
use crate::error::{Error, Result};

/// Square matrix of series; rows of entries.
pub type OracleMatrix = Vec<Vec<TruncSeries>>;

/// Relative precision ceiling for automatic retries.
pub const PRECISION_CAP: i64 = 256;

/// Exact diagonal matrix `diag(t^e_1, ..., t^e_n)`.
pub fn diag_monomials(exps: &[i64]) -> OracleMatrix {
    let n = exps.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        TruncSeries::monomial(1, exps[i])
                    } else {
                        TruncSeries::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &OracleMatrix, b: &OracleMatrix, f: &FiniteField) -> OracleMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(TruncSeries::zero(), |acc, k| {
                        acc.add(&a[i][k].mul(&b[k][j], f), f)
                    })
                })
                .collect()
        })
        .collect()
}

/// Valuations of the elementary divisors in decreasing order: the dominant
/// weight `mu` with `m` in `K t^mu K`. Precision for the internal divisions
/// starts at `start_prec` and doubles up to [`PRECISION_CAP`].
pub fn smith_valuations_from(
    m: &OracleMatrix,
    f: &FiniteField,
    start_prec: i64,
) -> Result<Vec<i64>> {
    let mut prec = start_prec.max(1);
    loop {
        match smith_at_precision(m, f, prec) {
            Err(Error::PrecisionExhausted) if prec < PRECISION_CAP => {
                prec = (prec * 2).min(PRECISION_CAP)
            }
            other => return other,
        }
    }
}

pub fn smith_valuations(m: &OracleMatrix, f: &FiniteField) -> Result<Vec<i64>> {
    smith_valuations_from(m, f, 8)
}

/// One elimination pass: pivot on an entry of least valuation, clear its
/// row and column, recurse on the complement.
pub fn smith_at_precision(m: &OracleMatrix, f: &FiniteField, rel_prec: i64) -> Result<Vec<i64>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Malformed("oracle matrix must be square".into()));
    }
    let mut a = m.clone();
    let mut vals = Vec::with_capacity(n);
    for k in 0..n {
        let mut best: Option<(usize, usize, i64)> = None;
        let mut all_exact_zero = true;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if !x.is_exact_zero() {
                    all_exact_zero = false;
                }
                if let Some(v) = x.valuation() {
                    if best.is_none_or(|(_, _, b)| v < b) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        if all_exact_zero {
            return Err(Error::Singular);
        }
        let (pi, pj, v) = best.ok_or(Error::PrecisionExhausted)?;
        // an entry known only as O(t^p) with p <= v might be the true pivot
        let ambiguous = a
            .iter()
            .skip(k)
            .flat_map(|r| r.iter().skip(k))
            .any(|x| x.valuation().is_none() && x.abs_prec().is_some_and(|p| p <= v));
        if ambiguous {
            return Err(Error::PrecisionExhausted);
        }
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        vals.push(v);
        let pivot_inv = a[k][k]
            .inv(f, rel_prec)
            .expect("pivot has a known valuation");
        for i in k + 1..n {
            if a[i][k].is_exact_zero() {
                continue;
            }
            let factor = a[i][k].mul(&pivot_inv, f);
            for j in k + 1..n {
                let t = factor.mul(&a[k][j], f);
                a[i][j] = a[i][j].sub(&t, f);
            }
        }
    }
    vals.reverse();
    Ok(vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s(terms: &[(i64, u32)]) -> TruncSeries {
        TruncSeries::from_terms(terms, None)
    }

    /// Independent check by gcd of minors: the least valuation of the
    /// `k x k` minors is `d_n + ... + d_(n-k+1)` of the increasing list.
    fn minors_oracle(m: &OracleMatrix, f: &FiniteField) -> Vec<i64> {
        let n = m.len();
        let det2 = |r: [usize; 2], c: [usize; 2]| {
            m[r[0]][c[0]]
                .mul(&m[r[1]][c[1]], f)
                .sub(&m[r[0]][c[1]].mul(&m[r[1]][c[0]], f), f)
        };
        let min_val =
            |xs: Vec<TruncSeries>| xs.iter().filter_map(TruncSeries::valuation).min().unwrap();
        let mut partial = Vec::new();
        partial.push(min_val(m.iter().flatten().cloned().collect()));
        if n >= 2 {
            let mut minors = Vec::new();
            for r0 in 0..n {
                for r1 in r0 + 1..n {
                    for c0 in 0..n {
                        for c1 in c0 + 1..n {
                            minors.push(det2([r0, r1], [c0, c1]));
                        }
                    }
                }
            }
            partial.push(min_val(minors));
        }
        if n == 3 {
            let mut det = TruncSeries::zero();
            for j in 0..3 {
                let others: Vec<usize> = (0..3).filter(|&c| c != j).collect();
                let term = m[0][j].mul(&det2([1, 2], [others[0], others[1]]), f);
                det = if j % 2 == 0 {
                    det.add(&term, f)
                } else {
                    det.sub(&term, f)
                };
            }
            partial.push(det.valuation().unwrap());
        }
        let mut inc = vec![partial[0]];
        for k in 1..partial.len() {
            inc.push(partial[k] - partial[k - 1]);
        }
        inc.reverse();
        inc
    }

    #[test]
    fn basic_cases() {
        let f = FiniteField::new(2).unwrap();
        assert_eq!(
            smith_valuations(&diag_monomials(&[0, 0]), &f).unwrap(),
            vec![0, 0]
        );
        assert_eq!(
            smith_valuations(&diag_monomials(&[1, 0]), &f).unwrap(),
            vec![1, 0]
        );
        let m = vec![
            vec![s(&[(1, 1)]), s(&[(0, 1)])],
            vec![TruncSeries::zero(), s(&[(0, 1)])],
        ];
        assert_eq!(smith_valuations(&m, &f).unwrap(), vec![1, 0]);
        assert_eq!(minors_oracle(&m, &f), vec![1, 0]);
    }

    #[test]
    fn singular_matrix() {
        let f = FiniteField::new(3).unwrap();
        let m = vec![
            vec![s(&[(0, 1)]), s(&[(0, 1)])],
            vec![s(&[(0, 1)]), s(&[(0, 1)])],
        ];
        assert_eq!(smith_valuations(&m, &f).unwrap_err().kind(), "Singular");
    }

    #[test]
    fn needs_more_than_one_term_of_precision() {
        // [[1, 1], [1, 1 + t^5]]: the complement entry is t^5
        let f = FiniteField::new(2).unwrap();
        let m = vec![
            vec![s(&[(0, 1), (1, 1)]), s(&[(0, 1)])],
            vec![s(&[(0, 1), (1, 1)]), s(&[(0, 1), (5, 1)])],
        ];
        assert_eq!(
            smith_at_precision(&m, &f, 2).unwrap_err().kind(),
            "PrecisionExhausted"
        );
        let v = smith_valuations_from(&m, &f, 2).unwrap();
        assert_eq!(v, minors_oracle(&m, &f));
    }

    fn random_poly(rng: &mut ChaCha8Rng, q: u32, lo: i64, hi: i64) -> TruncSeries {
        let terms: Vec<(i64, u32)> = (lo..=hi).map(|e| (e, rng.gen_range(0..q))).collect();
        TruncSeries::from_terms(&terms, None)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, q: u32) -> OracleMatrix {
        (0..n)
            .map(|_| (0..n).map(|_| random_poly(rng, q, -2, 2)).collect())
            .collect()
    }

    /// Product of elementary matrices with entries in `F_q[t]` and a
    /// diagonal of units.
    fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, f: &FiniteField) -> OracleMatrix {
        let q = f.order();
        let mut u = diag_monomials(&vec![0; n]);
        for i in 0..n {
            u[i][i] = TruncSeries::monomial(rng.gen_range(1..q), 0);
        }
        for _ in 0..4 {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let mut e = diag_monomials(&vec![0; n]);
            e[i][j] = random_poly(rng, q, 0, 2);
            u = mat_mul(&u, &e, f);
        }
        u
    }

    #[test]
    fn agrees_with_minors_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2u64, 3, 4] {
            let f = FiniteField::new(q).unwrap();
            for n in [2usize, 3] {
                for _ in 0..30 {
                    let m = random_matrix(&mut rng, n, f.order());
                    match smith_valuations(&m, &f) {
                        Ok(v) => assert_eq!(v, minors_oracle(&m, &f)),
                        Err(e) => assert_eq!(e.kind(), "Singular"),
                    }
                }
            }
        }
    }

    #[test]
    fn invariant_under_unimodular_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = FiniteField::new(3).unwrap();
        for exps in [vec![2, 0], vec![1, -1], vec![3, 1, 0], vec![2, 2, -1]] {
            let base = diag_monomials(&exps);
            let mut sorted = exps.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            for _ in 0..20 {
                let l = random_unimodular(&mut rng, exps.len(), &f);
                let r = random_unimodular(&mut rng, exps.len(), &f);
                let m = mat_mul(&mat_mul(&l, &base, &f), &r, &f);
                assert_eq!(smith_valuations(&m, &f).unwrap(), sorted);
            }
        }
    }

    #[test]
    fn independent_of_starting_precision() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = FiniteField::new(2).unwrap();
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 3, 2);
            let a = smith_valuations_from(&m, &f, 4);
            let b = smith_valuations_from(&m, &f, 64);
            assert_eq!(a, b);
        }
    }
}
