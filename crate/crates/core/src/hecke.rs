//! Spherical Hecke algebras in the m-basis model.
//!
//! A [`HeckeAlgebra`] fixes a datum, a shift and a coefficient mode. Its
//! basis is indexed by antidominant sigma-fixed weights and multiplication
//! goes through the lattice algebra. With shift `rho_ad` this models the
//! spherical Hecke algebra of the p-adic group; with `lambda_ad + rho_ad`
//! it models the weight-V algebra attached to `lambda`. In the split case
//! the double-coset basis is reconstructed from trace functions.

use std::collections::BTreeMap;
use std::fmt;

use crate::charalg::{expand_in_m_basis, from_m_coords, m_element, LatticeElement, MCoords, QMode};
use crate::error::{Error, Result};
use crate::kostka::{character_image, dominant_weights_below, ic_function};
use crate::lattice::{dot, vectors_up_to_height, Weight};
use crate::poly::{prime_power, LaurentPoly};
use crate::rootdata::{RootDatum, ShiftCovector};
use crate::weyl::to_dominant;

/// Coordinates with respect to a basis indexed by antidominant weights.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HeckeElement {
    coords: MCoords,
}

impl HeckeElement {
    pub fn from_coords(coords: MCoords) -> Self {
        let coords = coords.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { coords }
    }

    pub fn basis(lambda: Weight) -> Self {
        Self::from_coords(MCoords::from([(lambda, LaurentPoly::one())]))
    }

    pub fn coords(&self) -> &MCoords {
        &self.coords
    }

    pub fn coeff(&self, w: &Weight) -> LaurentPoly {
        self.coords
            .get(w)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.coords.clone();
        for (w, c) in &other.coords {
            *out.entry(w.clone()).or_insert_with(LaurentPoly::zero) += c;
        }
        Self::from_coords(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        Self::from_coords(
            self.coords
                .iter()
                .map(|(w, x)| (w.clone(), x * c))
                .collect(),
        )
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c == LaurentPoly::one() {
                write!(f, "m{w}")?;
            } else if c.terms().count() == 1 {
                write!(f, "{c}*m{w}")?;
            } else {
                write!(f, "({c})*m{w}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeAlgebra {
    datum: RootDatum,
    shift: ShiftCovector,
    mode: QMode,
}

impl HeckeAlgebra {
    pub fn new(datum: RootDatum, shift: ShiftCovector, mode: QMode) -> Result<Self> {
        if shift.rank() != datum.rank() {
            return Err(Error::Malformed(format!(
                "shift needs {} entries",
                datum.rank()
            )));
        }
        datum.check_shift(&shift)?;
        if let QMode::Numeric(q) = mode {
            if q < 2 {
                return Err(Error::NotPrimePower(q));
            }
        }
        Ok(Self { datum, shift, mode })
    }

    /// The spherical Hecke algebra itself: shift `rho_ad`.
    pub fn spherical(datum: RootDatum, mode: QMode) -> Self {
        let shift = datum.rho_ad();
        Self { datum, shift, mode }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn shift(&self) -> &ShiftCovector {
        &self.shift
    }

    pub fn mode(&self) -> QMode {
        self.mode
    }

    /// The same algebra with another coefficient mode.
    pub fn with_mode(&self, mode: QMode) -> Self {
        Self {
            mode,
            ..self.clone()
        }
    }

    pub fn unit(&self) -> HeckeElement {
        HeckeElement::basis(Weight::zero(self.datum.rank()))
    }

    /// Antidominant sigma-fixed weights of height at most `h`, ordered by
    /// height and then lexicographically.
    pub fn basis_up_to_height(&self, h: i64) -> Vec<Weight> {
        let mut out: Vec<Weight> = vectors_up_to_height(self.datum.rank(), h)
            .into_iter()
            .filter(|w| self.datum.is_sigma_fixed(w) && self.datum.is_antidominant(w))
            .collect();
        out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        out
    }

    pub fn m_element(&self, lambda: &Weight) -> Result<LatticeElement> {
        m_element(&self.datum, &self.shift, lambda, self.mode)
    }

    /// The lattice-algebra element with the given m-coordinates.
    pub fn lift(&self, h: &HeckeElement) -> Result<LatticeElement> {
        let coords: MCoords = h
            .coords
            .iter()
            .map(|(w, c)| Ok((w.clone(), self.mode.specialize(c)?)))
            .collect::<Result<_>>()?;
        from_m_coords(&self.datum, &self.shift, self.mode, &coords)
    }

    pub fn expand(&self, x: &LatticeElement) -> Result<HeckeElement> {
        Ok(HeckeElement::from_coords(expand_in_m_basis(
            &self.datum,
            &self.shift,
            x,
        )?))
    }

    pub fn multiply(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
        self.expand(&self.lift(a)?.multiply(&self.lift(b)?)?)
    }

    /// Coordinates of `m_lambda * m_mu`.
    pub fn structure_constants(&self, lambda: &Weight, mu: &Weight) -> Result<MCoords> {
        let prod = self.m_element(lambda)?.multiply(&self.m_element(mu)?)?;
        expand_in_m_basis(&self.datum, &self.shift, &prod)
    }

    fn require_rho_shift(&self) -> Result<()> {
        let rho = self.datum.rho_ad();
        let same = self
            .datum
            .simple_roots()
            .iter()
            .all(|a| self.shift.pair(a) == rho.pair(a));
        if same {
            Ok(())
        } else {
            Err(Error::UnsupportedShift(self.shift.to_string()))
        }
    }

    /// m-coordinates of the characteristic function of the double coset of
    /// the dominant weight `mu`, obtained by peeling lower double cosets off
    /// the trace function of the representation with highest weight `mu`.
    pub fn double_coset_basis(&self, mu: &Weight) -> Result<HeckeElement> {
        if !self.datum.is_split() {
            return Err(Error::SigmaNontrivial);
        }
        self.require_rho_shift()?;
        let mut memo = BTreeMap::new();
        let sym = self.dc_symbolic(mu, &mut memo)?;
        self.specialize(&sym)
    }

    fn dc_symbolic(
        &self,
        mu: &Weight,
        memo: &mut BTreeMap<Weight, HeckeElement>,
    ) -> Result<HeckeElement> {
        if let Some(x) = memo.get(mu) {
            return Ok(x.clone());
        }
        let d = &self.datum;
        let mut out = HeckeElement::from_coords(character_image(d, mu, &self.shift)?);
        let ic = ic_function(d, mu)?;
        for lower in dominant_weights_below(d, mu)?.into_iter().skip(1) {
            let anti = crate::weyl::to_antidominant(d, &lower);
            if let Some(a) = ic.coords.get(&anti) {
                let dc = self.dc_symbolic(&lower, memo)?;
                out = out.sub(&dc.scale(a));
            }
        }
        memo.insert(mu.clone(), out.clone());
        Ok(out)
    }

    fn specialize(&self, x: &HeckeElement) -> Result<HeckeElement> {
        let coords = x
            .coords
            .iter()
            .map(|(w, c)| Ok((w.clone(), self.mode.specialize(c)?)))
            .collect::<Result<_>>()?;
        Ok(HeckeElement::from_coords(coords))
    }

    /// Rewrites m-coordinates in the double-coset basis. Keys of the result
    /// are antidominant weights standing for the double coset of their
    /// dominant conjugate.
    pub fn to_double_coset_coords(&self, x: &HeckeElement) -> Result<HeckeElement> {
        let two_rho = self.datum.two_rho();
        let mut rest = x.clone();
        let mut out = MCoords::new();
        let mut memo = BTreeMap::new();
        while let Some(top) = rest
            .coords
            .keys()
            .max_by(|a, b| {
                dot(&two_rho, b.coords())
                    .cmp(&dot(&two_rho, a.coords()))
                    .then_with(|| b.cmp(a))
            })
            .cloned()
        {
            let c = rest.coeff(&top);
            let dc =
                self.specialize(&self.dc_symbolic(&to_dominant(&self.datum, &top), &mut memo)?)?;
            rest = rest.sub(&dc.scale(&c));
            out.insert(top, c);
        }
        Ok(HeckeElement::from_coords(out))
    }

    /// Structure constants of the double-coset basis, keyed by antidominant
    /// representatives.
    pub fn dc_structure_constants(&self, mu: &Weight, nu: &Weight) -> Result<HeckeElement> {
        let a = self.double_coset_basis(mu)?;
        let b = self.double_coset_basis(nu)?;
        self.to_double_coset_coords(&self.multiply(&a, &b)?)
    }

    /// Structure constants at numeric `q = p^k`, reduced modulo `p`.
    pub fn modp_structure(&self, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
        let q = match self.mode {
            QMode::Numeric(q) => q,
            QMode::Symbolic => {
                return Err(Error::ModeMismatch("symbolic".into(), "numeric q".into()))
            }
        };
        let (p, _) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let table = self.structure_constants(lambda, mu)?;
        table
            .into_iter()
            .map(|(k, c)| Ok((k, c.eval_integer(1)?.rem_euclid(p as i64) as u64)))
            .collect()
    }

    /// The algebra for the weight `lambda` of the p-adic group: shift
    /// `lambda_ad + rho_ad`. Needs shift `rho_ad` here, a sigma-invariant
    /// dominant `lambda`, and `q` prime when numeric.
    pub fn weight_hecke(&self, lambda: &[i64]) -> Result<HeckeAlgebra> {
        self.require_rho_shift()?;
        if let QMode::Numeric(q) = self.mode {
            if prime_power(q).map(|(_, k)| k) != Some(1) {
                return Err(Error::NotPrime(q));
            }
        }
        let s = self.datum.shift_from_weight(lambda)?;
        if !self.datum.covector_is_sigma_fixed(lambda) {
            return Err(Error::NotSigmaFixed(Weight(lambda.to_vec())));
        }
        HeckeAlgebra::new(self.datum.clone(), s.add(&self.shift), self.mode)
    }
}

/// Value of every coefficient at `q = 0`; coefficients must be polynomials.
pub fn at_q_zero(table: &MCoords) -> Result<BTreeMap<Weight, i64>> {
    table
        .iter()
        .map(|(k, c)| {
            if c.is_polynomial() {
                Ok((k.clone(), c.coeff(0)))
            } else {
                Err(Error::NonPolynomial(k.clone()))
            }
        })
        .collect()
}

/// One row of a scaling comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingRow {
    pub kappa: Weight,
    pub base: LaurentPoly,
    pub shifted: LaurentPoly,
    /// `<s, kappa - lambda - mu>`.
    pub exponent: i64,
}

/// Checks `c'_kappa = q^<s, kappa - lambda - mu> c_kappa` between the
/// structure constants of `base` and of `shifted`, where `s` is the
/// difference of their shifts. This is the effect of the ring automorphism
/// `e^w -> q^<s, w> e^w`, which sends `m_w` to `q^<s, w> m'_w`.
pub fn scaling_compare(
    base: &HeckeAlgebra,
    shifted: &HeckeAlgebra,
    lambda: &Weight,
    mu: &Weight,
) -> Result<Vec<ScalingRow>> {
    if base.datum != shifted.datum {
        return Err(Error::Malformed(
            "scaling comparison needs a shared datum".into(),
        ));
    }
    if base.mode != QMode::Symbolic || shifted.mode != QMode::Symbolic {
        return Err(Error::ModeMismatch(
            base.mode.to_string(),
            "symbolic".into(),
        ));
    }
    let s = shifted.shift.sub(&base.shift);
    let c0 = base.structure_constants(lambda, mu)?;
    let c1 = shifted.structure_constants(lambda, mu)?;
    let kappas: std::collections::BTreeSet<&Weight> = c0.keys().chain(c1.keys()).collect();
    let sum = lambda + mu;
    let mut rows = Vec::new();
    for kappa in kappas {
        let base_c = c0.get(kappa).cloned().unwrap_or_else(LaurentPoly::zero);
        let shifted_c = c1.get(kappa).cloned().unwrap_or_else(LaurentPoly::zero);
        let exponent = s.pair_integral(&(kappa - &sum))?;
        if base_c.shift(exponent as i32) != shifted_c
            || !base_c.is_polynomial()
            || !shifted_c.is_polynomial()
        {
            return Err(Error::Mismatch(kappa.clone()));
        }
        rows.push(ScalingRow {
            kappa: kappa.clone(),
            base: base_c,
            shifted: shifted_c,
            exponent,
        });
    }
    Ok(rows)
}
