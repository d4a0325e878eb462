//! Weyl group orbits on `X`, the sigma-fixed subgroup `W0` acting on the
//! fixed sublattice, and antidominant representatives.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::lattice::Weight;
use crate::rootdata::RootDatum;

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;
pub const WEYL_GROUP_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitResult {
    /// Sorted, pairwise distinct.
    pub elements: Vec<Weight>,
    pub antidominant_rep: Weight,
    pub dominant_rep: Weight,
}

impl OrbitResult {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.elements.binary_search(w).is_ok()
    }
}

/// Descends to the unique antidominant element of the W-orbit.
pub fn to_antidominant(d: &RootDatum, w: &Weight) -> Weight {
    let mut v = w.clone();
    while let Some(i) = (0..d.semisimple_rank()).find(|&i| d.coroot_pairing(i, &v) > 0) {
        v = d.reflect(i, &v);
    }
    v
}

/// Ascends to the unique dominant element of the W-orbit.
pub fn to_dominant(d: &RootDatum, w: &Weight) -> Weight {
    let mut v = w.clone();
    while let Some(i) = (0..d.semisimple_rank()).find(|&i| d.coroot_pairing(i, &v) < 0) {
        v = d.reflect(i, &v);
    }
    v
}

pub fn w_orbit(d: &RootDatum, w: &Weight) -> Result<OrbitResult> {
    w_orbit_capped(d, w, DEFAULT_ORBIT_CAP)
}

/// Breadth-first closure under the simple reflections.
pub fn w_orbit_capped(d: &RootDatum, w: &Weight, cap: usize) -> Result<OrbitResult> {
    let gens: Vec<Vec<usize>> = (0..d.semisimple_rank()).map(|i| vec![i]).collect();
    let elements = closure(d, w, &gens, cap)?;
    Ok(OrbitResult {
        elements,
        antidominant_rep: to_antidominant(d, w),
        dominant_rep: to_dominant(d, w),
    })
}

/// The `W0`-orbit of a sigma-fixed weight, computed both as `W w` cut down
/// to the fixed sublattice and as the closure under the folded generators.
pub fn w0_orbit(d: &RootDatum, w: &Weight) -> Result<OrbitResult> {
    if !d.is_sigma_fixed(w) {
        return Err(Error::NotSigmaFixed(w.clone()));
    }
    let full = w_orbit(d, w)?;
    let restricted: Vec<Weight> = full
        .elements
        .iter()
        .filter(|v| d.is_sigma_fixed(v))
        .cloned()
        .collect();
    let folded = closure(d, w, d.folded_words(), DEFAULT_ORBIT_CAP)?;
    if restricted != folded {
        return Err(Error::MethodMismatch(w.clone()));
    }
    let antidominant_rep = antidominant_in_fixed(d, w)?;
    Ok(OrbitResult {
        elements: folded,
        antidominant_rep,
        dominant_rep: full.dominant_rep,
    })
}

/// The antidominant element of `W0 w`, by descent along folded generators.
/// It agrees with the W-antidominant representative.
pub fn antidominant_in_fixed(d: &RootDatum, w: &Weight) -> Result<Weight> {
    if !d.is_sigma_fixed(w) {
        return Err(Error::NotSigmaFixed(w.clone()));
    }
    let mut v = w.clone();
    // pairings are constant along a sigma-orbit of simple roots on fixed weights
    while let Some(j) = d
        .sigma_orbits()
        .iter()
        .position(|orb| d.coroot_pairing(orb[0], &v) > 0)
    {
        v = d.apply_word(&d.folded_words()[j], &v);
    }
    if v != to_antidominant(d, w) {
        return Err(Error::MethodMismatch(w.clone()));
    }
    Ok(v)
}

/// Applies the `j`-th folded generator of `W0`.
pub fn folded_generator(d: &RootDatum, j: usize, w: &Weight) -> Weight {
    d.apply_word(&d.folded_words()[j], w)
}

fn closure(d: &RootDatum, w: &Weight, gens: &[Vec<usize>], cap: usize) -> Result<Vec<Weight>> {
    let mut seen: BTreeSet<Weight> = BTreeSet::new();
    let mut queue = VecDeque::from([w.clone()]);
    seen.insert(w.clone());
    while let Some(v) = queue.pop_front() {
        for g in gens {
            let next = d.apply_word(g, &v);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::OrbitTooLarge(cap));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// An element of W as a reduced word (rightmost letter applied first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `(-1)^length`.
    pub fn sign(&self) -> i64 {
        if self.word.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn apply(&self, d: &RootDatum, w: &Weight) -> Weight {
        d.apply_word(&self.word, w)
    }
}

/// All of W, via the free orbit of the sum of positive roots; each element
/// carries a shortest word found by breadth-first search.
pub fn weyl_group(d: &RootDatum) -> Result<Vec<WeylElement>> {
    let regular = d.two_rho_hat();
    let mut words: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    let mut queue = VecDeque::from([regular.clone()]);
    words.insert(regular, Vec::new());
    while let Some(v) = queue.pop_front() {
        let word = words[&v].clone();
        for i in 0..d.semisimple_rank() {
            let next = d.reflect(i, &v);
            if !words.contains_key(&next) {
                if words.len() >= WEYL_GROUP_CAP {
                    return Err(Error::WeylGroupTooLarge(WEYL_GROUP_CAP));
                }
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(i);
                w.extend_from_slice(&word);
                words.insert(next.clone(), w);
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<WeylElement> = words
        .into_values()
        .map(|word| WeylElement { word })
        .collect();
    out.sort_by(|a, b| {
        a.word
            .len()
            .cmp(&b.word.len())
            .then_with(|| a.word.cmp(&b.word))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn sl2_orbit() {
        let d = lookup("PGL2").unwrap();
        let o = w_orbit(&d, &w(&[2])).unwrap();
        assert_eq!(o.elements, vec![w(&[-2]), w(&[2])]);
        assert_eq!(o.antidominant_rep, w(&[-2]));
    }

    #[test]
    fn gl3_orbit_is_permutations() {
        let d = lookup("GL3").unwrap();
        let o = w_orbit(&d, &w(&[1, 0, 0])).unwrap();
        assert_eq!(o.len(), 3);
        assert_eq!(o.antidominant_rep, w(&[0, 0, 1]));
        assert_eq!(o.dominant_rep, w(&[1, 0, 0]));
    }

    #[test]
    fn g2_fundamental_orbit() {
        let d = lookup("G2").unwrap();
        // first fundamental weight in root coordinates
        let omega1 = w(&[2, 1]);
        assert_eq!(d.coroot_pairing(0, &omega1), 1);
        assert_eq!(d.coroot_pairing(1, &omega1), 0);
        assert_eq!(w_orbit(&d, &omega1).unwrap().len(), 6);
    }

    #[test]
    fn orbit_cap() {
        let d = lookup("GL3").unwrap();
        assert_eq!(
            w_orbit_capped(&d, &w(&[2, 1, 0]), 4).unwrap_err().kind(),
            "OrbitTooLarge"
        );
    }

    #[test]
    fn swap_orbit() {
        let d = lookup("GL2xGL2").unwrap();
        let o = w0_orbit(&d, &w(&[1, 0, 1, 0])).unwrap();
        assert_eq!(o.elements, vec![w(&[0, 1, 0, 1]), w(&[1, 0, 1, 0])]);
        assert_eq!(o.antidominant_rep, w(&[0, 1, 0, 1]));
        assert_eq!(
            w0_orbit(&d, &w(&[1, 0, 0, 0])).unwrap_err().kind(),
            "NotSigmaFixed"
        );
    }

    #[test]
    fn unitary_orbit_methods_agree() {
        let d = lookup("U3").unwrap();
        let o = w0_orbit(&d, &w(&[1, 0, -1])).unwrap();
        assert_eq!(o.elements, vec![w(&[-1, 0, 1]), w(&[1, 0, -1])]);
        let a = antidominant_in_fixed(&d, &w(&[1, 0, -1])).unwrap();
        assert_eq!(a, w(&[-1, 0, 1]));
        assert!(d.is_antidominant(&a));
    }

    #[test]
    fn split_w0_orbit_is_w_orbit() {
        let d = lookup("GL3").unwrap();
        let v = w(&[2, 0, -1]);
        assert_eq!(w0_orbit(&d, &v).unwrap(), w_orbit(&d, &v).unwrap());
    }

    #[test]
    fn antidominant_examples() {
        let d = lookup("GL2").unwrap();
        assert_eq!(antidominant_in_fixed(&d, &w(&[1, 0])).unwrap(), w(&[0, 1]));
        assert_eq!(antidominant_in_fixed(&d, &w(&[0, 1])).unwrap(), w(&[0, 1]));
    }

    #[test]
    fn weyl_group_orders() {
        for (name, order) in [
            ("GL1", 1),
            ("GL2", 2),
            ("GL3", 6),
            ("GL4", 24),
            ("Sp4", 8),
            ("G2", 12),
        ] {
            let g = weyl_group(&lookup(name).unwrap()).unwrap();
            assert_eq!(g.len(), order, "{name}");
            let signs: i64 = g.iter().map(WeylElement::sign).sum();
            assert_eq!(signs, i64::from(order == 1), "{name}");
        }
    }
}
