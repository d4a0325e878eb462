//! Split-case representation theory of the dual group: weight
//! multiplicities, q-analogues of them, and the two expansions of a
//! representation's trace function used by the Hecke engine.

use std::collections::{BTreeMap, HashMap};

use crate::charalg::MCoords;
use crate::error::{Error, Result};
use crate::lattice::{dot, Weight};
use crate::poly::{LaurentPoly, QPolynomial};
use crate::rootdata::{RootDatum, ShiftCovector};
use crate::weyl::{to_antidominant, to_dominant, weyl_group};

fn require_split(d: &RootDatum) -> Result<()> {
    if d.is_split() {
        Ok(())
    } else {
        Err(Error::SigmaNontrivial)
    }
}

fn require_dominant(d: &RootDatum, w: &Weight) -> Result<()> {
    if d.is_dominant(w) {
        Ok(())
    } else {
        Err(Error::NotDominant(w.to_string()))
    }
}

/// `sum over beta = sum n_a a (a > 0, n_a >= 0) of q^(sum n_a)`.
pub fn q_kostant_partition(d: &RootDatum, beta: &Weight) -> Result<QPolynomial> {
    require_split(d)?;
    Ok(partition_unchecked(d, beta))
}

fn partition_unchecked(d: &RootDatum, beta: &Weight) -> QPolynomial {
    let target = match d.root_coordinates(beta) {
        Some(c) if c.iter().all(|&x| x >= 0) => c,
        _ => return LaurentPoly::zero(),
    };
    if target.is_empty() {
        return LaurentPoly::one();
    }
    // dense table over the box [0, target], mixed-radix indexed
    let dims: Vec<usize> = target.iter().map(|&t| t as usize + 1).collect();
    let size: usize = dims.iter().product();
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let mut table = vec![LaurentPoly::zero(); size];
    table[0] = LaurentPoly::one();
    let q = LaurentPoly::q_pow(1);
    for root in d.positive_root_coords() {
        if root.iter().zip(&target).any(|(r, t)| r > t) {
            continue;
        }
        let offset: usize = root
            .iter()
            .zip(&strides)
            .map(|(&r, s)| r as usize * s)
            .sum();
        // increasing index order visits c - root before c
        for idx in 0..size {
            let fits = (0..dims.len()).all(|k| (idx / strides[k]) % dims[k] >= root[k] as usize);
            if fits {
                let add = &table[idx - offset] * &q;
                table[idx] += &add;
            }
        }
    }
    table[size - 1].clone()
}

/// `K_{mu,lambda}(q) = sum_w (-1)^l(w) P_q(w(mu + rho) - (lambda + rho))`,
/// evaluated in the doubled lattice so that `rho` stays integral.
pub fn kostka_foulkes(d: &RootDatum, mu: &Weight, lambda: &Weight) -> Result<QPolynomial> {
    require_split(d)?;
    require_dominant(d, mu)?;
    require_dominant(d, lambda)?;
    if !d.in_root_lattice(&(mu - lambda)) {
        return Ok(LaurentPoly::zero());
    }
    let two_rho = d.two_rho_hat();
    let top = &mu.scale(2) + &two_rho;
    let bottom = &lambda.scale(2) + &two_rho;
    let mut total = LaurentPoly::zero();
    for w in weyl_group(d)? {
        let diff = &w.apply(d, &top) - &bottom;
        if diff.coords().iter().any(|x| x % 2 != 0) {
            return Err(Error::NotIntegral(diff));
        }
        let half = Weight(diff.coords().iter().map(|x| x / 2).collect());
        total += &partition_unchecked(d, &half).scale(w.sign());
    }
    Ok(total)
}

/// Invariant form `B(x, y) = sum over positive coroots of <a,x><a,y>`.
fn form(d: &RootDatum, x: &Weight, y: &Weight) -> i64 {
    d.positive_coroots()
        .iter()
        .map(|a| dot(a, x.coords()) * dot(a, y.coords()))
        .sum()
}

/// Dimension of the `lambda` weight space of the irreducible representation
/// with highest weight `mu`, by Freudenthal's recursion.
pub fn freudenthal_multiplicity(d: &RootDatum, mu: &Weight, lambda: &Weight) -> Result<u64> {
    require_split(d)?;
    require_dominant(d, mu)?;
    let mut memo = HashMap::new();
    Ok(freudenthal_rec(d, mu, &to_dominant(d, lambda), &mut memo))
}

fn freudenthal_rec(
    d: &RootDatum,
    mu: &Weight,
    lambda: &Weight,
    memo: &mut HashMap<Weight, u64>,
) -> u64 {
    if !d.dominance_leq(lambda, mu) {
        return 0;
    }
    if lambda == mu {
        return 1;
    }
    if let Some(&m) = memo.get(lambda) {
        return m;
    }
    // all quantities scaled by 4 so that rho = two_rho / 2 stays integral
    let two_rho = d.two_rho_hat();
    let a = &mu.scale(2) + &two_rho;
    let b = &lambda.scale(2) + &two_rho;
    let denom = form(d, &a, &a) - form(d, &b, &b);
    let mut numer = 0i64;
    for alpha in d.positive_roots() {
        let mut k = 1;
        loop {
            let v = lambda.add_scaled(k, alpha);
            let vd = to_dominant(d, &v);
            if !d.dominance_leq(&vd, mu) {
                break;
            }
            let m = freudenthal_rec(d, mu, &vd, memo) as i64;
            numer += 8 * form(d, &v, alpha) * m;
            k += 1;
        }
    }
    debug_assert!(denom > 0 && numer % denom == 0);
    let m = (numer / denom) as u64;
    memo.insert(lambda.clone(), m);
    m
}

/// Dominant weights `lambda` with `lambda <= mu`, highest first: ordered by
/// decreasing `<2 rho, lambda>`, then lexicographically.
pub fn dominant_weights_below(d: &RootDatum, mu: &Weight) -> Result<Vec<Weight>> {
    require_dominant(d, mu)?;
    let low = to_antidominant(d, mu);
    let bound = d
        .root_coordinates(&(mu - &low))
        .expect("orbit differences lie in the root lattice");
    let mut out = Vec::new();
    let mut c = vec![0i64; bound.len()];
    loop {
        let mut lambda = mu.clone();
        for (ci, a) in c.iter().zip(d.simple_roots()) {
            lambda = lambda.add_scaled(-ci, a);
        }
        if d.is_dominant(&lambda) {
            out.push(lambda);
        }
        // odometer over the box
        let mut k = 0;
        while k < c.len() && c[k] == bound[k] {
            c[k] = 0;
            k += 1;
        }
        if k == c.len() {
            break;
        }
        c[k] += 1;
    }
    let two_rho = d.two_rho();
    out.sort_by(|x, y| {
        dot(&two_rho, y.coords())
            .cmp(&dot(&two_rho, x.coords()))
            .then_with(|| x.cmp(y))
    });
    Ok(out)
}

/// The trace function of the representation with highest weight `mu`, in
/// m-coordinates for `shift`: the coordinate at antidominant `lambda` is
/// `q^<shift, lambda - w0 mu>` times the multiplicity of `lambda`.
pub fn character_image(d: &RootDatum, mu: &Weight, shift: &ShiftCovector) -> Result<MCoords> {
    require_split(d)?;
    let low = to_antidominant(d, mu);
    let mut out = MCoords::new();
    for lambda in dominant_weights_below(d, mu)? {
        let anti = to_antidominant(d, &lambda);
        let mult = freudenthal_multiplicity(d, mu, &lambda)?;
        if mult == 0 {
            continue;
        }
        let k = shift.pair_integral(&(&anti - &low))?;
        out.insert(anti, LaurentPoly::monomial(mult as i64, k as i32));
    }
    Ok(out)
}

/// Expansion of the trace function in characteristic functions of double
/// cosets, normalized to leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IcExpansion {
    /// `(-1)^<2 rho, mu>`, the sign of the unnormalized leading term.
    pub sign: i64,
    /// Keyed by antidominant weights; the value at `lambda` is
    /// `q^<rho_ad, lambda - w0 mu> K_{mu, lambda+}(q^-1)`.
    pub coords: MCoords,
}

pub fn ic_function(d: &RootDatum, mu: &Weight) -> Result<IcExpansion> {
    require_split(d)?;
    let low = to_antidominant(d, mu);
    let rho = d.rho_ad();
    let mut coords = MCoords::new();
    for lambda in dominant_weights_below(d, mu)? {
        let anti = to_antidominant(d, &lambda);
        let k = kostka_foulkes(d, mu, &lambda)?;
        if k.is_zero() {
            continue;
        }
        let e = rho.pair_integral(&(&anti - &low))?;
        let a = k.invert_variable().shift(e as i32);
        if !a.is_polynomial() {
            return Err(Error::NonPolynomial(anti));
        }
        coords.insert(anti, a);
    }
    let parity = dot(&d.two_rho(), mu.coords()).rem_euclid(2);
    Ok(IcExpansion {
        sign: if parity == 0 { 1 } else { -1 },
        coords,
    })
}

/// `K_{mu,lambda}(q)` for every dominant `lambda <= mu`.
pub fn kostka_table(d: &RootDatum, mu: &Weight) -> Result<BTreeMap<Weight, QPolynomial>> {
    let mut out = BTreeMap::new();
    for lambda in dominant_weights_below(d, mu)? {
        out.insert(lambda.clone(), kostka_foulkes(d, mu, &lambda)?);
    }
    Ok(out)
}
