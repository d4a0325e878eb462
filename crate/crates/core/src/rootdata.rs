//! Based root data with a pinned automorphism, stored on the dual side.
//!
//! The lattice `X` of a datum is the character lattice of the dual torus,
//! which is the cocharacter lattice of the p-adic group's torus. Simple
//! roots are vectors in `X`, simple coroots are covectors acting on `X` by
//! the dot product, and `sigma` is an integer matrix acting on column
//! vectors of `X`.
//!
//! [`RootDatum::validate`] checks the raw fields and caches everything the
//! other modules derive from them: the Cartan matrix and its rational
//! inverse, positive roots and coroots, the sigma-orbits of simple roots
//! together with a reduced word for the longest element of each orbit's
//! parabolic subgroup, and a basis of the sigma-fixed sublattice.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    dot, identity, integer_kernel, mat_mul, mat_vec, rational_inverse, vec_mat, IntMatrix,
    Rational, Weight,
};

const MAX_SIGMA_ORDER: usize = 64;

/// Raw root-datum fields as they appear in datum files and the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    /// Row-major `rank * rank` integers; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_matrix: Option<Vec<i64>>,
    /// Zero-based images of the simple-root indices; derived when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_permutation: Option<Vec<usize>>,
}

/// A validated based root datum with its derived data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    spec: RootDatumSpec,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Vec<i64>>,
    sigma: IntMatrix,
    sigma_perm: Vec<usize>,
    sigma_order: usize,
    cartan: IntMatrix,
    cartan_inv: Vec<Vec<Rational>>,
    positive_roots: Vec<Weight>,
    positive_root_coords: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    sigma_orbits: Vec<Vec<usize>>,
    folded_words: Vec<Vec<usize>>,
    fixed_basis: IntMatrix,
}

/// A rational linear functional on `X`: the home of `rho_ad`, of the
/// cocharacters `lambda_ad` attached to weights of the p-adic group, and
/// of their sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftCovector {
    values: Vec<Rational>,
}

impl ShiftCovector {
    pub fn zero(rank: usize) -> Self {
        Self {
            values: vec![Rational::from_integer(0); rank],
        }
    }

    pub fn from_integers(v: &[i64]) -> Self {
        Self {
            values: v.iter().map(|&x| Rational::from_integer(x)).collect(),
        }
    }

    pub fn from_rationals(values: Vec<Rational>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn pair(&self, w: &Weight) -> Rational {
        self.values
            .iter()
            .zip(w.coords())
            .map(|(a, &b)| a * b)
            .sum()
    }

    /// Pairing that must be an integer, as it is on root-lattice elements.
    pub fn pair_integral(&self, w: &Weight) -> Result<i64> {
        let v = self.pair(w);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NotIntegral(w.clone()))
        }
    }

    pub fn add(&self, other: &ShiftCovector) -> ShiftCovector {
        ShiftCovector {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &ShiftCovector) -> ShiftCovector {
        ShiftCovector {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == Rational::from_integer(0))
    }
}

impl fmt::Display for ShiftCovector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl RootDatum {
    /// Checks every invariant of the raw datum and caches derived data.
    pub fn validate(spec: RootDatumSpec) -> Result<Self> {
        let rank = spec.rank;
        if rank == 0 {
            return Err(Error::Malformed("rank must be positive".into()));
        }
        let r = spec.simple_roots.len();
        if spec.simple_coroots.len() != r {
            return Err(Error::Malformed(format!(
                "{} simple roots but {} simple coroots",
                r,
                spec.simple_coroots.len()
            )));
        }
        if spec
            .simple_roots
            .iter()
            .chain(&spec.simple_coroots)
            .any(|v| v.len() != rank)
        {
            return Err(Error::Malformed(format!(
                "every root and coroot needs {rank} coordinates"
            )));
        }
        let simple_roots: Vec<Weight> = spec.simple_roots.iter().cloned().map(Weight).collect();
        let simple_coroots = spec.simple_coroots.clone();

        let cartan: IntMatrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| dot(&simple_coroots[i], simple_roots[j].coords()))
                    .collect()
            })
            .collect();
        check_finite_type(&cartan)?;
        let cartan_inv = rational_inverse(&cartan)
            .ok_or_else(|| Error::NotFiniteType("singular Cartan matrix".into()))?;

        let sigma = match &spec.sigma_matrix {
            None => identity(rank),
            Some(flat) => {
                if flat.len() != rank * rank {
                    return Err(Error::Malformed(format!(
                        "sigma_matrix needs {} entries",
                        rank * rank
                    )));
                }
                flat.chunks(rank).map(|c| c.to_vec()).collect()
            }
        };
        let sigma_order = matrix_order(&sigma)?;
        let sigma_perm = derive_sigma_permutation(&simple_roots, &simple_coroots, &sigma)?;
        if let Some(given) = &spec.sigma_permutation {
            if *given != sigma_perm {
                return Err(Error::PinningViolated(format!(
                    "sigma_permutation {given:?} disagrees with sigma_matrix, which gives {sigma_perm:?}"
                )));
            }
        }

        let (positive_root_coords, positive_coroot_coords) = positive_closure(&cartan);
        let combine = |coords: &[i64], basis: &[Vec<i64>]| -> Vec<i64> {
            (0..rank)
                .map(|k| coords.iter().zip(basis).map(|(c, b)| c * b[k]).sum())
                .collect()
        };
        let mut roots: Vec<(Vec<i64>, Weight)> = positive_root_coords
            .iter()
            .map(|c| (c.clone(), Weight(combine(c, &spec.simple_roots))))
            .collect();
        roots.sort_by(|(ca, wa), (cb, wb)| {
            let ha: i64 = ca.iter().sum();
            let hb: i64 = cb.iter().sum();
            ha.cmp(&hb).then_with(|| wa.cmp(wb))
        });
        let positive_coroots: Vec<Vec<i64>> = positive_coroot_coords
            .iter()
            .map(|c| combine(c, &simple_coroots))
            .collect();

        let sigma_orbits = simple_orbits(&sigma_perm);
        let folded_words = sigma_orbits
            .iter()
            .map(|orbit| longest_word(&cartan, orbit))
            .collect();

        let sigma_minus_id: IntMatrix = sigma
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| x - i64::from(i == j))
                    .collect()
            })
            .collect();
        let fixed_basis = integer_kernel(&sigma_minus_id, rank);

        Ok(Self {
            spec,
            simple_roots,
            simple_coroots,
            sigma,
            sigma_perm,
            sigma_order,
            cartan,
            cartan_inv,
            positive_root_coords: roots.iter().map(|(c, _)| c.clone()).collect(),
            positive_roots: roots.into_iter().map(|(_, w)| w).collect(),
            positive_coroots,
            sigma_orbits,
            folded_words,
            fixed_basis,
        })
    }

    /// Parses and validates a single datum in the TOML file format.
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let spec: RootDatumSpec = toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::validate(spec)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(&self.spec).expect("root datum spec serializes")
    }

    pub fn spec(&self) -> &RootDatumSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    /// `cartan()[i][j] = <alpha_i^vee, alpha_j>`.
    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn sigma_matrix(&self) -> &IntMatrix {
        &self.sigma
    }

    pub fn sigma_permutation(&self) -> &[usize] {
        &self.sigma_perm
    }

    pub fn sigma_order(&self) -> usize {
        self.sigma_order
    }

    pub fn is_split(&self) -> bool {
        self.sigma_order == 1
    }

    /// Positive roots ordered by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Simple-root coordinates of [`Self::positive_roots`], same order.
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_root_coords
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    /// Orbits of sigma on simple-root indices, each sorted, ordered by
    /// smallest member.
    pub fn sigma_orbits(&self) -> &[Vec<usize>] {
        &self.sigma_orbits
    }

    /// For each sigma-orbit, a reduced word (applied right to left) of the
    /// longest element of the parabolic subgroup it generates. These are
    /// the generators of the sigma-fixed Weyl group `W0`.
    pub fn folded_words(&self) -> &[Vec<usize>] {
        &self.folded_words
    }

    /// `<alpha_i^vee, w>`.
    pub fn coroot_pairing(&self, i: usize, w: &Weight) -> i64 {
        dot(&self.simple_coroots[i], w.coords())
    }

    /// Simple reflection `s_i(v) = v - <alpha_i^vee, v> alpha_i`.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        w.add_scaled(-self.coroot_pairing(i, w), &self.simple_roots[i])
    }

    /// Applies a word of simple reflections, rightmost letter first.
    pub fn apply_word(&self, word: &[usize], w: &Weight) -> Weight {
        word.iter()
            .rev()
            .fold(w.clone(), |v, &i| self.reflect(i, &v))
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        (0..self.semisimple_rank()).all(|i| self.coroot_pairing(i, w) >= 0)
    }

    pub fn is_antidominant(&self, w: &Weight) -> bool {
        (0..self.semisimple_rank()).all(|i| self.coroot_pairing(i, w) <= 0)
    }

    pub fn apply_sigma(&self, w: &Weight) -> Weight {
        Weight(mat_vec(&self.sigma, w.coords()))
    }

    pub fn is_sigma_fixed(&self, w: &Weight) -> bool {
        self.apply_sigma(w) == *w
    }

    /// A covector is sigma-invariant when `phi . sigma = phi`.
    pub fn covector_is_sigma_fixed(&self, phi: &[i64]) -> bool {
        vec_mat(phi, &self.sigma) == phi
    }

    /// Integer basis of the saturated sigma-fixed sublattice.
    pub fn fixed_sublattice(&self) -> &IntMatrix {
        &self.fixed_basis
    }

    /// Coordinates of a sigma-fixed weight in [`Self::fixed_sublattice`].
    pub fn fixed_coordinates(&self, w: &Weight) -> Option<Vec<i64>> {
        if !self.is_sigma_fixed(w) {
            return None;
        }
        solve_integer_combination(&self.fixed_basis, w.coords())
    }

    /// Simple-root coordinates of `w`, when `w` lies in the root lattice.
    pub fn root_coordinates(&self, w: &Weight) -> Option<Vec<i64>> {
        let r = self.semisimple_rank();
        let rhs: Vec<i64> = (0..r).map(|i| self.coroot_pairing(i, w)).collect();
        let mut coords = Vec::with_capacity(r);
        for row in &self.cartan_inv {
            let c: Rational = row.iter().zip(&rhs).map(|(a, &b)| a * b).sum();
            if !c.is_integer() {
                return None;
            }
            coords.push(c.to_integer());
        }
        let back = self.from_root_coordinates(&coords);
        (back == *w).then_some(coords)
    }

    pub fn from_root_coordinates(&self, coords: &[i64]) -> Weight {
        let mut out = Weight::zero(self.rank());
        for (c, a) in coords.iter().zip(&self.simple_roots) {
            out = out.add_scaled(*c, a);
        }
        out
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.root_coordinates(w).is_some()
    }

    /// `mu - lambda` is a nonnegative integer combination of simple roots.
    pub fn dominance_leq(&self, lambda: &Weight, mu: &Weight) -> bool {
        self.root_coordinates(&(mu - lambda))
            .is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// Half the sum of the positive coroots. Pairs to 1 with every simple
    /// root and is integral on the root lattice.
    pub fn rho_ad(&self) -> ShiftCovector {
        let sum = self.two_rho();
        ShiftCovector::from_rationals(sum.iter().map(|&x| Rational::new(x, 2)).collect())
    }

    /// Sum of the positive coroots, an integral covector.
    pub fn two_rho(&self) -> Vec<i64> {
        let mut sum = vec![0i64; self.rank()];
        for c in &self.positive_coroots {
            for (s, x) in sum.iter_mut().zip(c) {
                *s += x;
            }
        }
        sum
    }

    /// Sum of the positive roots (twice the usual `rho` of the dual group).
    pub fn two_rho_hat(&self) -> Weight {
        self.positive_roots
            .iter()
            .fold(Weight::zero(self.rank()), |acc, a| &acc + a)
    }

    /// The covector `beta -> <lambda, beta>` of a dominant weight `lambda`
    /// of the p-adic group (an integral covector on `X`).
    pub fn shift_from_weight(&self, lambda: &[i64]) -> Result<ShiftCovector> {
        if lambda.len() != self.rank() {
            return Err(Error::Malformed(format!(
                "weight of G needs {} coordinates",
                self.rank()
            )));
        }
        if self
            .simple_roots
            .iter()
            .any(|a| dot(lambda, a.coords()) < 0)
        {
            return Err(Error::NotDominant(Weight(lambda.to_vec()).to_string()));
        }
        Ok(ShiftCovector::from_integers(lambda))
    }

    /// A shift is usable by the Hecke engine when it is dominant, integral
    /// on the root lattice and sigma-invariant on the simple roots.
    pub fn check_shift(&self, shift: &ShiftCovector) -> Result<()> {
        for (i, a) in self.simple_roots.iter().enumerate() {
            let v = shift.pair_integral(a)?;
            if v < 0 {
                return Err(Error::NotDominant(shift.to_string()));
            }
            if shift.pair(&self.simple_roots[self.sigma_perm[i]]) != shift.pair(a) {
                return Err(Error::NotSigmaFixed(a.clone()));
            }
        }
        Ok(())
    }
}

fn check_finite_type(c: &IntMatrix) -> Result<()> {
    let r = c.len();
    for i in 0..r {
        if c[i][i] != 2 {
            return Err(Error::NotFiniteType(format!(
                "diagonal entry {i} is {}",
                c[i][i]
            )));
        }
        for j in 0..r {
            if i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) {
                return Err(Error::NotFiniteType(format!(
                    "entry ({i},{j}) breaks the Cartan axioms"
                )));
            }
        }
    }
    // A generalized Cartan matrix is of finite type iff all principal
    // minors are positive.
    for mask in 1u32..(1u32 << r) {
        let idx: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let sub: IntMatrix = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| c[i][j]).collect())
            .collect();
        if crate::lattice::determinant(&sub) <= 0 {
            return Err(Error::NotFiniteType(format!(
                "principal minor on {idx:?} is not positive"
            )));
        }
    }
    Ok(())
}

fn matrix_order(m: &IntMatrix) -> Result<usize> {
    let id = identity(m.len());
    let mut p = m.clone();
    for k in 1..=MAX_SIGMA_ORDER {
        if p == id {
            return Ok(k);
        }
        p = mat_mul(&p, m);
    }
    Err(Error::NotFiniteOrder(MAX_SIGMA_ORDER))
}

fn derive_sigma_permutation(
    roots: &[Weight],
    coroots: &[Vec<i64>],
    sigma: &IntMatrix,
) -> Result<Vec<usize>> {
    let mut perm = Vec::with_capacity(roots.len());
    for (i, a) in roots.iter().enumerate() {
        let image = Weight(mat_vec(sigma, a.coords()));
        let j = roots.iter().position(|b| *b == image).ok_or_else(|| {
            Error::PinningViolated(format!(
                "sigma sends simple root {i} to {image}, not a simple root"
            ))
        })?;
        // contragredient: alpha_j^vee . sigma must equal alpha_i^vee
        if vec_mat(&coroots[j], sigma) != coroots[i] {
            return Err(Error::PinningViolated(format!(
                "sigma does not carry coroot {i} to coroot {j}"
            )));
        }
        perm.push(j);
    }
    let distinct: BTreeSet<usize> = perm.iter().copied().collect();
    if distinct.len() != perm.len() {
        return Err(Error::PinningViolated(
            "sigma is not a permutation of the simple roots".into(),
        ));
    }
    Ok(perm)
}

/// Positive roots and positive coroots, in simple-root (resp. simple-coroot)
/// coordinates, by closure of the simple ones under simple reflections.
fn positive_closure(cartan: &IntMatrix) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let r = cartan.len();
    // roots: s_i(c) = c - (sum_k C[i][k] c_k) e_i
    let root_reflect = |i: usize, c: &[i64]| {
        let mut out = c.to_vec();
        out[i] -= (0..r).map(|k| cartan[i][k] * c[k]).sum::<i64>();
        out
    };
    // coroots: s_i(d) = d - (sum_k d_k C[k][i]) e_i
    let coroot_reflect = |i: usize, d: &[i64]| {
        let mut out = d.to_vec();
        out[i] -= (0..r).map(|k| d[k] * cartan[k][i]).sum::<i64>();
        out
    };
    let close = |reflect: &dyn Fn(usize, &[i64]) -> Vec<i64>| {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|k| i64::from(i == k)).collect())
            .collect();
        while let Some(c) = queue.pop() {
            if !seen.insert(c.clone()) {
                continue;
            }
            for i in 0..r {
                let next = reflect(i, &c);
                if !seen.contains(&next) {
                    queue.push(next);
                }
            }
        }
        seen.into_iter()
            .filter(|c| c.iter().all(|&x| x >= 0))
            .collect::<Vec<_>>()
    };
    (close(&root_reflect), close(&coroot_reflect))
}

fn simple_orbits(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut orbits = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            orbit.push(i);
            i = perm[i];
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Reduced word of the longest element of the parabolic subgroup generated
/// by `subset`: extend `w` by `s_j` while some `w(alpha_j)` is positive.
fn longest_word(cartan: &IntMatrix, subset: &[usize]) -> Vec<usize> {
    let r = cartan.len();
    let apply = |word: &[usize], c: Vec<i64>| {
        word.iter().rev().fold(c, |mut v, &i| {
            v[i] -= (0..r).map(|k| cartan[i][k] * v[k]).sum::<i64>();
            v
        })
    };
    let mut word: Vec<usize> = Vec::new();
    loop {
        let next = subset.iter().copied().find(|&j| {
            let e: Vec<i64> = (0..r).map(|k| i64::from(k == j)).collect();
            apply(&word, e).iter().all(|&x| x >= 0)
        });
        match next {
            Some(j) => word.push(j),
            None => return word,
        }
    }
}

/// Integer solution `x` of `sum_k x_k basis[k] = target`, if any.
fn solve_integer_combination(basis: &IntMatrix, target: &[i64]) -> Option<Vec<i64>> {
    let k = basis.len();
    if k == 0 {
        return target.iter().all(|&x| x == 0).then(Vec::new);
    }
    // normal equations G x = B target with G = B B^T (B has full row rank)
    let gram: IntMatrix = basis
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let inv = rational_inverse(&gram)?;
    let rhs: Vec<i64> = basis.iter().map(|b| dot(b, target)).collect();
    let mut x = Vec::with_capacity(k);
    for row in &inv {
        let v: Rational = row.iter().zip(&rhs).map(|(a, &b)| a * b).sum();
        if !v.is_integer() {
            return None;
        }
        x.push(v.to_integer());
    }
    let back: Vec<i64> = (0..target.len())
        .map(|j| x.iter().zip(basis).map(|(c, b)| c * b[j]).sum())
        .collect();
    (back == target).then_some(x)
}
