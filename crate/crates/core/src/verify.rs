//! The eight acceptance checks, as functions returning reports. Each check
//! records failures as counterexample strings instead of stopping.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::charalg::{
    expand_in_m_basis, m_element, twisted_action, LatticeElement, MCoords, QMode,
};
use crate::error::Result;
use crate::hecke::{at_q_zero, scaling_compare, HeckeAlgebra, HeckeElement};
use crate::kostka::{
    character_image, dominant_weights_below, freudenthal_multiplicity, kostka_foulkes,
};
use crate::lattice::{vectors_up_to_height, Weight};
use crate::oracle::Oracle;
use crate::poly::{prime_power, LaurentPoly};
use crate::rootdata::RootDatum;
use crate::weyl::to_dominant;

/// Data used by the closure, mod-p and invariance checks.
pub const CLOSURE_DATA: [&str; 9] = [
    "GL2", "GL3", "PGL2", "PGL3", "SL2", "Sp4", "G2", "U3", "GL2xGL2",
];
/// Split data of semisimple rank at most two for the Kostka check.
pub const KOSTKA_DATA: [&str; 6] = ["SL2", "PGL2", "SL3", "PGL3", "Sp4", "G2"];
pub const GL3_ORACLE_WEIGHTS: [[i64; 3]; 4] = [[1, 0, 0], [1, 1, 0], [2, 0, 0], [2, 1, 0]];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub height: i64,
    pub kostka_height: i64,
    pub scaling_height: i64,
    pub gl2_spread: i64,
    pub qs: Vec<u64>,
    pub seed: u64,
    pub random_pairs: usize,
    /// Restricts every check to one datum when set.
    pub datum: Option<String>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            height: 4,
            kostka_height: 6,
            scaling_height: 3,
            gl2_spread: 3,
            qs: vec![2, 3],
            seed: 20_240_917,
            random_pairs: 10,
            datum: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CriterionReport {
    fn new(id: u8, name: &'static str) -> Self {
        Self {
            id,
            name,
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }

    /// Nothing applied, as when a check is restricted to an unrelated datum.
    pub fn skipped(&self) -> bool {
        self.failures.is_empty() && self.checked == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn record<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.skipped() {
            "SKIP"
        } else if self.passed() {
            "PASS"
        } else {
            "FAIL"
        };
        write!(
            f,
            "criterion {} ({}): {status} [{} checks",
            self.id, self.name, self.checked
        )?;
        if !self.failures.is_empty() {
            write!(f, ", {} failures", self.failures.len())?;
        }
        write!(f, "]")
    }
}

fn data(names: &[&str], only: &Option<String>) -> Vec<RootDatum> {
    names
        .iter()
        .filter(|n| only.as_ref().is_none_or(|o| o.eq_ignore_ascii_case(n)))
        .map(|n| catalog::lookup(n).expect("catalog entry"))
        .collect()
}

fn applies(name: &str, only: &Option<String>) -> bool {
    only.as_ref().is_none_or(|o| o.eq_ignore_ascii_case(name))
}

/// Structure constants for every unordered pair of basis weights.
pub fn structure_tables(h: &HeckeAlgebra, height: i64) -> Vec<(Weight, Weight, Result<MCoords>)> {
    let basis = h.basis_up_to_height(height);
    let mut out = Vec::new();
    for (i, l) in basis.iter().enumerate() {
        for m in &basis[i..] {
            out.push((l.clone(), m.clone(), h.structure_constants(l, m)));
        }
    }
    out
}

/// Products of m-basis elements re-expand exactly, with coefficients in
/// nonnegative integer polynomials.
pub fn check_closure(data: &[RootDatum], height: i64) -> CriterionReport {
    let mut rep = CriterionReport::new(1, "m-basis closure");
    for d in data {
        let h = HeckeAlgebra::spherical(d.clone(), QMode::Symbolic);
        let tables = structure_tables(&h, height);
        rep.notes
            .push(format!("{}: {} products", d.name(), tables.len()));
        for (l, m, t) in tables {
            let ctx = || format!("{} m{l} * m{m}", d.name());
            if let Some(t) = rep.record(t, ctx) {
                let ok = t.values().all(|c| c.is_polynomial() && c.is_nonnegative());
                rep.check(ok, || {
                    format!("{} m{l} * m{m}: coefficient outside Z>=0[q]", d.name())
                });
            }
        }
    }
    rep
}

fn gl2_weights(spread: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for b in [-1, 0] {
        for s in 0..=spread {
            out.push(vec![b + s, b]);
        }
    }
    out
}

/// Brute-force Satake transforms against the double-coset basis.
pub fn check_satake_oracle(gl2_spread: i64, qs: &[u64], only: &Option<String>) -> CriterionReport {
    let mut rep = CriterionReport::new(2, "oracle Satake transform");
    let mut cases: Vec<(&str, Vec<i64>)> = Vec::new();
    if applies("GL2", only) {
        cases.extend(gl2_weights(gl2_spread).into_iter().map(|w| ("GL2", w)));
    }
    if applies("GL3", only) {
        cases.extend(GL3_ORACLE_WEIGHTS.iter().map(|w| ("GL3", w.to_vec())));
    }
    if applies("GL2", only) {
        // hand-derivable values, symbolically
        let h = HeckeAlgebra::spherical(catalog::lookup("GL2").unwrap(), QMode::Symbolic);
        let w = |v: &[i64]| Weight(v.to_vec());
        let q = LaurentPoly::q_pow(1);
        let expect10 = LatticeElement::from_terms(
            [(w(&[0, 1]), LaurentPoly::one()), (w(&[1, 0]), q.clone())],
            QMode::Symbolic,
        );
        let got10 = h.double_coset_basis(&w(&[1, 0])).and_then(|x| h.lift(&x));
        rep.check(got10.as_ref() == Ok(&expect10), || {
            format!("CT of (1,0) is {got10:?}")
        });
        let m02 = h.m_element(&w(&[0, 2])).unwrap();
        let expect20 = m02
            .add(&LatticeElement::monomial(
                w(&[1, 1]),
                &q - &LaurentPoly::one(),
                QMode::Symbolic,
            ))
            .unwrap();
        let got20 = h.double_coset_basis(&w(&[2, 0])).and_then(|x| h.lift(&x));
        rep.check(got20.as_ref() == Ok(&expect20), || {
            format!("CT of (2,0) is {got20:?}")
        });
    }
    for &q in qs {
        let Some(oracle) = rep.record(Oracle::new(q), || format!("oracle at q={q}")) else {
            continue;
        };
        for (name, mu) in &cases {
            let h = HeckeAlgebra::spherical(catalog::lookup(name).unwrap(), QMode::Numeric(q));
            let ctx = || format!("{name} mu={} q={q}", Weight(mu.clone()));
            let Some(counted) = rep.record(oracle.satake_vector(mu), ctx) else {
                continue;
            };
            let model = h
                .double_coset_basis(&Weight(mu.clone()))
                .and_then(|x| h.lift(&x));
            let Some(model) = rep.record(model, ctx) else {
                continue;
            };
            rep.check(counted == model, || {
                format!("{}: oracle {counted} vs model {model}", ctx())
            });
        }
    }
    rep
}

/// Dominant keys of a double-coset expansion.
fn dominant_keys(h: &HeckeAlgebra, x: &HeckeElement) -> BTreeMap<Weight, LaurentPoly> {
    x.coords()
        .iter()
        .map(|(k, c)| (to_dominant(h.datum(), k), c.clone()))
        .collect()
}

/// `GL_2` convolution by lattice counting against the model, and the ring
/// map property of the brute-force Satake transform.
pub fn check_convolution(
    qs: &[u64],
    seed: u64,
    pairs: usize,
    only: &Option<String>,
) -> CriterionReport {
    let mut rep = CriterionReport::new(3, "oracle convolution");
    if !applies("GL2", only) {
        return rep;
    }
    let gl2 = catalog::lookup("GL2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<Vec<i64>> = vec![
        vec![0, 0],
        vec![1, 0],
        vec![1, 1],
        vec![2, 0],
        vec![2, 1],
        vec![1, -1],
        vec![0, -1],
    ];
    for &q in qs {
        let Some(oracle) = rep.record(Oracle::new(q), || format!("oracle at q={q}")) else {
            continue;
        };
        let h = HeckeAlgebra::spherical(gl2.clone(), QMode::Numeric(q));
        let q_i = q as i64;
        let counted = oracle.convolution(&[1, 0], &[1, 0]);
        let expect = BTreeMap::from([(Weight(vec![1, 1]), q + 1), (Weight(vec![2, 0]), 1)]);
        rep.check(counted.as_ref() == Ok(&expect), || {
            format!("q={q}: (1,0)*(1,0) counted as {counted:?}")
        });

        let mut sample: Vec<(Vec<i64>, Vec<i64>)> = vec![(vec![1, 0], vec![1, 0])];
        for _ in 0..pairs {
            let a = pool.choose(&mut rng).unwrap().clone();
            let b = pool.choose(&mut rng).unwrap().clone();
            sample.push((a, b));
        }
        for (mu, nu) in sample {
            let ctx = || format!("q={q} mu={} nu={}", Weight(mu.clone()), Weight(nu.clone()));
            let Some(counted) = rep.record(oracle.convolution(&mu, &nu), ctx) else {
                continue;
            };
            let model = h.dc_structure_constants(&Weight(mu.clone()), &Weight(nu.clone()));
            let Some(model) = rep.record(model, ctx) else {
                continue;
            };
            let model: BTreeMap<Weight, i64> = dominant_keys(&h, &model)
                .into_iter()
                .map(|(k, c)| (k, c.eval_integer(q_i).unwrap_or(i64::MIN)))
                .collect();
            let counted_i: BTreeMap<Weight, i64> = counted
                .iter()
                .map(|(k, &c)| (k.clone(), c as i64))
                .collect();
            rep.check(model == counted_i, || {
                format!("{}: counted {counted_i:?} vs model {model:?}", ctx())
            });

            // CT(a * b) = CT(a) CT(b)
            let lhs = (|| -> Result<LatticeElement> {
                let mut acc = LatticeElement::zero(QMode::Numeric(q));
                for (kappa, c) in &counted {
                    let v = oracle.satake_vector(kappa.coords())?;
                    acc = acc.add(&v.scale(&LaurentPoly::constant(*c as i64)))?;
                }
                Ok(acc)
            })();
            let rhs = oracle
                .satake_vector(&mu)
                .and_then(|a| a.multiply(&oracle.satake_vector(&nu)?));
            let (Some(lhs), Some(rhs)) = (rep.record(lhs, ctx), rep.record(rhs, ctx)) else {
                continue;
            };
            rep.check(lhs == rhs, || {
                format!("{}: CT(a*b) = {lhs} but CT(a)CT(b) = {rhs}", ctx())
            });
        }
    }
    rep
}

/// For `PGL_2`, powers of the trace of the standard representation are
/// unitriangular in the m-basis up to height six.
pub fn check_pgl2_trace(only: &Option<String>) -> CriterionReport {
    let mut rep = CriterionReport::new(4, "PGL2 trace generator");
    if !applies("PGL2", only) {
        return rep;
    }
    let d = catalog::lookup("PGL2").unwrap();
    let rho = d.rho_ad();
    let h = HeckeAlgebra::spherical(d.clone(), QMode::Symbolic);
    let tr = character_image(&d, &Weight(vec![1]), &rho)
        .and_then(|c| h.lift(&HeckeElement::from_coords(c)));
    let Some(tr) = rep.record(tr, || "trace of the standard representation".into()) else {
        return rep;
    };
    rep.check(tr.to_string() == "e^(-1) + q*e^(1)", || {
        format!("trace is {tr}")
    });
    let mut power = LatticeElement::one(1, QMode::Symbolic);
    let mut leading = Vec::new();
    for k in 0..=6i64 {
        let Some(c) = rep.record(expand_in_m_basis(&d, &rho, &power), || format!("tr^{k}")) else {
            return rep;
        };
        let integral = c.values().all(LaurentPoly::is_polynomial);
        rep.check(integral, || {
            format!("tr^{k} has non-polynomial coordinates")
        });
        let lead = c
            .get(&Weight(vec![-k]))
            .cloned()
            .unwrap_or_else(LaurentPoly::zero);
        rep.check(lead == LaurentPoly::one(), || {
            format!("tr^{k} has leading coordinate {lead}")
        });
        let higher = c.keys().any(|w| w.coords()[0] < -k);
        rep.check(!higher, || format!("tr^{k} reaches beyond m(-{k})"));
        leading.push(Weight(vec![-k]));
        power = power.multiply(&tr).unwrap();
    }
    let basis = h.basis_up_to_height(6);
    rep.check(basis == leading, || {
        format!("basis up to height 6 is {basis:?}")
    });
    rep
}

/// Structure constants at `q = 0` are the monoid law, and numeric tables at
/// a prime reduce to it modulo that prime.
pub fn check_modp(data: &[RootDatum], height: i64, qs: &[u64]) -> CriterionReport {
    let mut rep = CriterionReport::new(5, "mod-p degeneration");
    for d in data {
        let h = HeckeAlgebra::spherical(d.clone(), QMode::Symbolic);
        for (l, m, t) in structure_tables(&h, height) {
            let sum = &l + &m;
            let ctx = || format!("{} m{l} * m{m}", d.name());
            let Some(t) = rep.record(t, ctx) else {
                continue;
            };
            let Some(z) = rep.record(at_q_zero(&t), ctx) else {
                continue;
            };
            let ok = z.iter().all(|(k, &c)| c == i64::from(*k == sum)) && z.get(&sum) == Some(&1);
            rep.check(ok, || format!("{} at q=0: {z:?}", ctx()));
        }
        for &q in qs {
            if prime_power(q).map(|(_, k)| k) != Some(1) {
                continue;
            }
            let hq = h.with_mode(QMode::Numeric(q));
            let basis = hq.basis_up_to_height(height);
            for (i, l) in basis.iter().enumerate() {
                for m in &basis[i..] {
                    let sum = l + m;
                    let ctx = || format!("{} q={q} m{l} * m{m}", d.name());
                    let Some(t) = rep.record(hq.modp_structure(l, m), ctx) else {
                        continue;
                    };
                    let ok = t.iter().all(|(k, &c)| c == u64::from(*k == sum))
                        && t.get(&sum) == Some(&1);
                    rep.check(ok, || format!("{}: {t:?}", ctx()));
                }
            }
        }
    }
    rep
}

/// Sample dominant weights of the p-adic group for the scaling check.
pub fn scaling_samples(d: &RootDatum) -> Vec<Vec<i64>> {
    match d.name() {
        "GL2" => vec![vec![1, 0], vec![2, 0], vec![2, 1]],
        "PGL2" | "SL2" => vec![vec![1], vec![2], vec![3]],
        _ => Vec::new(),
    }
}

/// Structure constants for the shift `lambda_ad + rho_ad` against those for
/// `rho_ad`.
pub fn check_scaling(height: i64, only: &Option<String>) -> CriterionReport {
    let mut rep = CriterionReport::new(6, "weight-V scaling");
    let mut reversed_ok = 0usize;
    let mut reversed_total = 0usize;
    for d in data(&["GL2", "PGL2"], only) {
        let h = HeckeAlgebra::spherical(d.clone(), QMode::Symbolic);
        let basis = h.basis_up_to_height(height);
        for lam in scaling_samples(&d) {
            let Some(hv) = rep.record(h.weight_hecke(&lam), || {
                format!("{} lambda={lam:?}", d.name())
            }) else {
                continue;
            };
            for (i, l) in basis.iter().enumerate() {
                for m in &basis[i..] {
                    let ctx = || format!("{} lambda={lam:?} m{l} * m{m}", d.name());
                    let Some(rows) = rep.record(scaling_compare(&h, &hv, l, m), ctx) else {
                        continue;
                    };
                    rep.checked += rows.len();
                    for r in rows {
                        reversed_total += 1;
                        if r.base.shift(-r.exponent as i32) == r.shifted {
                            reversed_ok += 1;
                        }
                    }
                }
            }
        }
    }
    if reversed_total > 0 {
        rep.notes.push(format!(
            "exponent <s, lambda + mu - kappa> in place of <s, kappa - lambda - mu> holds on {reversed_ok} of {reversed_total} entries"
        ));
    }
    rep
}

/// Dominant weights of height at most `h`.
pub fn dominant_up_to_height(d: &RootDatum, h: i64) -> Vec<Weight> {
    vectors_up_to_height(d.rank(), h)
        .into_iter()
        .filter(|w| d.is_dominant(w))
        .collect()
}

/// Kostka-Foulkes polynomials at `q = 1` against Freudenthal, unitriangularity
/// and the degree bound.
pub fn check_kostka(data: &[RootDatum], height: i64) -> CriterionReport {
    let mut rep = CriterionReport::new(7, "Kostka consistency");
    for d in data {
        let dominant = dominant_up_to_height(d, height);
        let rho = d.rho_ad();
        for mu in &dominant {
            let below = match dominant_weights_below(d, mu) {
                Ok(b) => b,
                Err(e) => {
                    rep.failures.push(format!("{} {mu}: {e}", d.name()));
                    continue;
                }
            };
            let low = crate::weyl::to_antidominant(d, mu);
            for lam in &dominant {
                let ctx = || format!("{} K[{mu},{lam}]", d.name());
                let Some(k) = rep.record(kostka_foulkes(d, mu, lam), ctx) else {
                    continue;
                };
                if !below.contains(lam) {
                    rep.check(k.is_zero(), || {
                        format!("{} nonzero outside the cone", ctx())
                    });
                    continue;
                }
                let Some(mult) = rep.record(freudenthal_multiplicity(d, mu, lam), ctx) else {
                    continue;
                };
                let at_one = k.eval_integer(1).unwrap_or(-1);
                rep.check(at_one == mult as i64, || {
                    format!("{}(1) = {at_one}, multiplicity {mult}", ctx())
                });
                rep.check(k.is_polynomial() && k.is_nonnegative(), || {
                    format!("{} = {k}", ctx())
                });
                if lam == mu {
                    rep.check(k == LaurentPoly::one(), || format!("{} = {k}", ctx()));
                }
                let anti = crate::weyl::to_antidominant(d, lam);
                let bound = rho.pair_integral(&(&anti - &low)).unwrap_or(-1);
                let deg = k.degree().unwrap_or(0);
                rep.check(i64::from(deg) <= bound, || {
                    format!("{}: degree {deg} above {bound}", ctx())
                });
            }
        }
    }
    rep
}

/// Every m-element is fixed by every folded generator under the twisted
/// action.
pub fn check_twisted_invariance(data: &[RootDatum], height: i64) -> CriterionReport {
    let mut rep = CriterionReport::new(8, "twisted-action invariance");
    for d in data {
        let rho = d.rho_ad();
        let h = HeckeAlgebra::spherical(d.clone(), QMode::Symbolic);
        for lam in h.basis_up_to_height(height) {
            let ctx = || format!("{} m{lam}", d.name());
            let Some(m) = rep.record(m_element(d, &rho, &lam, QMode::Symbolic), ctx) else {
                continue;
            };
            for j in 0..d.folded_words().len() {
                let moved = twisted_action(d, &rho, &[j], &m);
                rep.check(moved.as_ref() == Ok(&m), || {
                    format!("{} moved by generator {j}", ctx())
                });
            }
        }
    }
    rep
}

/// Runs every check that applies under `config`.
pub fn run_all(config: &VerifyConfig) -> Vec<CriterionReport> {
    let only = &config.datum;
    let closure = data(&CLOSURE_DATA, only);
    let twisted: Vec<RootDatum> = match only {
        None => catalog::catalog(),
        Some(_) => catalog::catalog()
            .into_iter()
            .filter(|d| applies(d.name(), only))
            .collect(),
    };
    vec![
        check_closure(&closure, config.height),
        check_satake_oracle(config.gl2_spread, &config.qs, only),
        check_convolution(&config.qs, config.seed, config.random_pairs, only),
        check_pgl2_trace(only),
        check_modp(&closure, config.height, &config.qs),
        check_scaling(config.scaling_height, only),
        check_kostka(&data(&KOSTKA_DATA, only), config.kostka_height),
        check_twisted_invariance(&twisted, config.height),
    ]
}
