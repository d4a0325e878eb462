//! The group algebra of the sigma-fixed lattice over integer Laurent
//! polynomials in `q`, the twisted `W0`-action, the m-basis of the
//! invariant ring and the monoid ring of `V_T`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::Weight;
use crate::poly::LaurentPoly;
use crate::rootdata::{RootDatum, ShiftCovector};
use crate::weyl::{antidominant_in_fixed, folded_generator, to_antidominant, w0_orbit};

/// How coefficients are read: as formal Laurent polynomials in `q`, or as
/// integers after substituting a numeric `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QMode {
    Symbolic,
    Numeric(u64),
}

impl QMode {
    /// The coefficient `q^k` in this mode.
    pub fn q_power(&self, k: i64) -> Result<LaurentPoly> {
        let sym = LaurentPoly::q_pow(k as i32);
        self.specialize(&sym)
    }

    /// Substitutes the numeric value of `q`; the identity in symbolic mode.
    pub fn specialize(&self, c: &LaurentPoly) -> Result<LaurentPoly> {
        match *self {
            QMode::Symbolic => Ok(c.clone()),
            QMode::Numeric(q) => Ok(LaurentPoly::constant(c.eval_integer(q as i64)?)),
        }
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Symbolic => write!(f, "symbolic"),
            QMode::Numeric(q) => write!(f, "q={q}"),
        }
    }
}

fn check_modes(a: QMode, b: QMode) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ModeMismatch(a.to_string(), b.to_string()))
    }
}

/// A finitely supported function from the lattice to coefficients,
/// written as a sum of `c * e^w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeElement {
    mode: QMode,
    terms: BTreeMap<Weight, LaurentPoly>,
}

impl LatticeElement {
    pub fn zero(mode: QMode) -> Self {
        Self {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, mode: QMode) -> Self {
        Self::monomial(Weight::zero(rank), LaurentPoly::one(), mode)
    }

    pub fn monomial(w: Weight, c: LaurentPoly, mode: QMode) -> Self {
        let mut out = Self::zero(mode);
        out.add_term(w, &c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, LaurentPoly)>>(
        terms: I,
        mode: QMode,
    ) -> Self {
        let mut out = Self::zero(mode);
        for (w, c) in terms {
            out.add_term(w, &c);
        }
        out
    }

    pub fn mode(&self) -> QMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Weight, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, w: &Weight) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn add_term(&mut self, w: Weight, c: &LaurentPoly) {
        let entry = self
            .terms
            .entry(w.clone())
            .or_insert_with(LaurentPoly::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &LatticeElement) -> Result<LatticeElement> {
        check_modes(self.mode, other.mode)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LatticeElement) -> Result<LatticeElement> {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> LatticeElement {
        let mut out = Self::zero(self.mode);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    /// `e^a * e^b = e^(a+b)`, extended bilinearly.
    pub fn multiply(&self, other: &LatticeElement) -> Result<LatticeElement> {
        check_modes(self.mode, other.mode)?;
        let mut out = Self::zero(self.mode);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, &(x * y));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32, rank: usize) -> Result<LatticeElement> {
        let mut out = Self::one(rank, self.mode);
        for _ in 0..n {
            out = out.multiply(self)?;
        }
        Ok(out)
    }

    /// Moves a symbolic element to numeric mode.
    pub fn specialize(&self, q: u64) -> Result<LatticeElement> {
        check_modes(self.mode, QMode::Symbolic)?;
        let mode = QMode::Numeric(q);
        let mut out = Self::zero(mode);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &mode.specialize(c)?);
        }
        Ok(out)
    }

    pub fn is_sigma_supported(&self, d: &RootDatum) -> bool {
        self.terms.keys().all(|w| d.is_sigma_fixed(w))
    }
}

impl fmt::Display for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c == LaurentPoly::one() {
                write!(f, "e^{w}")?;
            } else if c.terms().count() == 1 {
                write!(f, "{c}*e^{w}")?;
            } else {
                write!(f, "({c})*e^{w}")?;
            }
        }
        Ok(())
    }
}

/// Twisted action of a word in the folded generators (rightmost first):
/// `w . e^l = q^<shift, w l - l> e^(w l)`. Symbolic mode only, since the
/// result may carry negative powers of `q`.
pub fn twisted_action(
    d: &RootDatum,
    shift: &ShiftCovector,
    word: &[usize],
    x: &LatticeElement,
) -> Result<LatticeElement> {
    check_modes(x.mode, QMode::Symbolic)?;
    let mut cur = x.clone();
    for &j in word.iter().rev() {
        let mut next = LatticeElement::zero(QMode::Symbolic);
        for (w, c) in &cur.terms {
            if !d.is_sigma_fixed(w) {
                return Err(Error::NotSigmaFixed(w.clone()));
            }
            let image = folded_generator(d, j, w);
            let k = shift.pair_integral(&(&image - w))?;
            next.add_term(image, &c.shift(k as i32));
        }
        cur = next;
    }
    Ok(cur)
}

/// `m_l = sum over l' in W0 l of q^<shift, l' - l> e^l'`.
pub fn m_element(
    d: &RootDatum,
    shift: &ShiftCovector,
    lambda: &Weight,
    mode: QMode,
) -> Result<LatticeElement> {
    if !d.is_sigma_fixed(lambda) {
        return Err(Error::NotSigmaFixed(lambda.clone()));
    }
    if !d.is_antidominant(lambda) {
        return Err(Error::NotAntidominant(lambda.clone()));
    }
    let orbit = w0_orbit(d, lambda)?;
    let mut out = LatticeElement::zero(mode);
    for w in orbit.elements {
        let k = shift.pair_integral(&(&w - lambda))?;
        let c = mode.q_power(k)?;
        out.add_term(w, &c);
    }
    Ok(out)
}

/// Coordinates in the m-basis, keyed by antidominant sigma-fixed weights.
pub type MCoords = BTreeMap<Weight, LaurentPoly>;

/// Reads coordinates at antidominant representatives and certifies them by
/// an exactly vanishing residual.
pub fn expand_in_m_basis(
    d: &RootDatum,
    shift: &ShiftCovector,
    x: &LatticeElement,
) -> Result<MCoords> {
    let mut coords = MCoords::new();
    for w in x.terms.keys() {
        let rep = antidominant_in_fixed(d, w)?;
        if let std::collections::btree_map::Entry::Vacant(slot) = coords.entry(rep.clone()) {
            let c = x.coeff(&rep);
            if c.is_zero() {
                return Err(Error::NotInSpan(rep));
            }
            slot.insert(c);
        }
    }
    let rebuilt = from_m_coords(d, shift, x.mode, &coords)?;
    let residual = x.sub(&rebuilt)?;
    if let Some(w) = residual.terms.keys().next() {
        return Err(Error::NotInSpan(w.clone()));
    }
    Ok(coords)
}

/// `sum c_l m_l`.
pub fn from_m_coords(
    d: &RootDatum,
    shift: &ShiftCovector,
    mode: QMode,
    coords: &MCoords,
) -> Result<LatticeElement> {
    let mut out = LatticeElement::zero(mode);
    for (lambda, c) in coords {
        out = out.add(&m_element(d, shift, lambda, mode)?.scale(c))?;
    }
    Ok(out)
}

/// An element of the monoid ring of `V_T`: pairs `(l, n)` standing for
/// `e1^l (x) e2^n`, with `n + l_-` in the positive root cone.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VTElement {
    terms: BTreeMap<(Weight, Weight), LaurentPoly>,
}

/// An element of the monoid ring of the positive cone of the adjoint
/// lattice, stored by root-lattice vectors of `X`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AdMonoidElement {
    terms: BTreeMap<Weight, LaurentPoly>,
}

fn vt_check(d: &RootDatum, lambda: &Weight, nu: &Weight) -> Result<()> {
    let low = to_antidominant(d, lambda);
    let in_cone = d
        .root_coordinates(&(nu + &low))
        .is_some_and(|c| c.iter().all(|&x| x >= 0));
    if !in_cone || !d.in_root_lattice(&(nu + lambda)) {
        return Err(Error::ConstraintViolated(lambda.clone(), nu.clone()));
    }
    Ok(())
}

fn add_into<K: Ord + Clone>(map: &mut BTreeMap<K, LaurentPoly>, k: K, c: &LaurentPoly) {
    let entry = map.entry(k.clone()).or_insert_with(LaurentPoly::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&k);
    }
}

impl VTElement {
    pub fn monomial(d: &RootDatum, lambda: Weight, nu: Weight, c: LaurentPoly) -> Result<Self> {
        vt_check(d, &lambda, &nu)?;
        let mut out = Self::default();
        add_into(&mut out.terms, (lambda, nu), &c);
        Ok(out)
    }

    pub fn terms(&self) -> &BTreeMap<(Weight, Weight), LaurentPoly> {
        &self.terms
    }

    pub fn add(&self, other: &VTElement) -> VTElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_into(&mut out.terms, k.clone(), c);
        }
        out
    }
}

impl AdMonoidElement {
    pub fn monomial(beta: Weight, c: LaurentPoly) -> Self {
        let mut out = Self::default();
        add_into(&mut out.terms, beta, &c);
        out
    }

    pub fn terms(&self) -> &BTreeMap<Weight, LaurentPoly> {
        &self.terms
    }

    pub fn multiply(&self, other: &AdMonoidElement) -> AdMonoidElement {
        let mut out = Self::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                add_into(&mut out.terms, a + b, &(x * y));
            }
        }
        out
    }
}

/// Componentwise addition of pairs; the cone condition is re-checked.
pub fn vt_multiply(d: &RootDatum, a: &VTElement, b: &VTElement) -> Result<VTElement> {
    let mut out = VTElement::default();
    for ((l1, n1), x) in &a.terms {
        for ((l2, n2), y) in &b.terms {
            let (l, n) = (l1 + l2, n1 + n2);
            vt_check(d, &l, &n)?;
            add_into(&mut out.terms, (l, n), &(x * y));
        }
    }
    Ok(out)
}

/// `e1^l (x) e2^n -> q^<shift, n + l> e^l`.
pub fn vt_embed(
    d: &RootDatum,
    shift: &ShiftCovector,
    mode: QMode,
    a: &VTElement,
) -> Result<LatticeElement> {
    let mut out = LatticeElement::zero(mode);
    for ((l, n), c) in &a.terms {
        if !d.is_sigma_fixed(l) {
            return Err(Error::NotSigmaFixed(l.clone()));
        }
        let k = shift.pair_integral(&(n + l))?;
        out.add_term(l.clone(), &(&mode.q_power(k)? * &mode.specialize(c)?));
    }
    Ok(out)
}

/// `e1^l (x) e2^n -> e^(n + l)` in the adjoint monoid ring.
pub fn vt_section(a: &VTElement) -> AdMonoidElement {
    let mut out = AdMonoidElement::default();
    for ((l, n), c) in &a.terms {
        add_into(&mut out.terms, n + l, c);
    }
    out
}

/// `e^b -> 1 (x) e2^b`; a right inverse of the section on the adjoint side.
pub fn vt_grade(d: &RootDatum, x: &AdMonoidElement) -> Result<VTElement> {
    let mut out = VTElement::default();
    for (b, c) in &x.terms {
        let zero = Weight::zero(d.rank());
        vt_check(d, &zero, b)?;
        add_into(&mut out.terms, (zero, b.clone()), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn q() -> LaurentPoly {
        LaurentPoly::q_pow(1)
    }

    #[test]
    fn unit_and_square() {
        let sym = QMode::Symbolic;
        let x =
            LatticeElement::from_terms([(w(&[0, 1]), LaurentPoly::one()), (w(&[1, 0]), q())], sym);
        assert_eq!(LatticeElement::one(2, sym).multiply(&x).unwrap(), x);
        let sq = x.multiply(&x).unwrap();
        let want = LatticeElement::from_terms(
            [
                (w(&[0, 2]), LaurentPoly::one()),
                (w(&[1, 1]), q().scale(2)),
                (w(&[2, 0]), q().pow(2)),
            ],
            sym,
        );
        assert_eq!(sq, want);
        let num = x.specialize(2).unwrap();
        let sq2 = num.multiply(&num).unwrap();
        assert_eq!(sq2.coeff(&w(&[1, 1])), LaurentPoly::constant(4));
        assert_eq!(sq2.coeff(&w(&[2, 0])), LaurentPoly::constant(4));
        assert_eq!(num.multiply(&x).unwrap_err().kind(), "ModeMismatch");
    }

    #[test]
    fn m_elements() {
        let gl2 = lookup("GL2").unwrap();
        let rho = gl2.rho_ad();
        let m = m_element(&gl2, &rho, &w(&[0, 1]), QMode::Symbolic).unwrap();
        assert_eq!(m.to_string(), "e^(0,1) + q*e^(1,0)");
        assert_eq!(
            m_element(&gl2, &rho, &w(&[0, 0]), QMode::Symbolic).unwrap(),
            LatticeElement::one(2, QMode::Symbolic)
        );
        assert_eq!(
            m_element(&gl2, &rho, &w(&[1, 0]), QMode::Symbolic)
                .unwrap_err()
                .kind(),
            "NotAntidominant"
        );

        let pgl2 = lookup("PGL2").unwrap();
        let m = m_element(&pgl2, &pgl2.rho_ad(), &w(&[-1]), QMode::Symbolic).unwrap();
        assert_eq!(m.to_string(), "e^(-1) + q*e^(1)");

        let swap = lookup("GL2xGL2").unwrap();
        assert_eq!(
            m_element(&swap, &swap.rho_ad(), &w(&[0, 0, 0, 1]), QMode::Symbolic)
                .unwrap_err()
                .kind(),
            "NotSigmaFixed"
        );
    }

    #[test]
    fn twisted_action_examples() {
        let gl2 = lookup("GL2").unwrap();
        let rho = gl2.rho_ad();
        let x = LatticeElement::monomial(w(&[0, 1]), LaurentPoly::one(), QMode::Symbolic);
        assert_eq!(twisted_action(&gl2, &rho, &[], &x).unwrap(), x);
        let y = twisted_action(&gl2, &rho, &[0], &x).unwrap();
        assert_eq!(
            y,
            LatticeElement::monomial(w(&[1, 0]), q(), QMode::Symbolic)
        );
        let back = twisted_action(&gl2, &rho, &[0], &y).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn expansion_examples() {
        let gl2 = lookup("GL2").unwrap();
        let rho = gl2.rho_ad();
        let m = m_element(&gl2, &rho, &w(&[0, 1]), QMode::Symbolic).unwrap();
        let c = expand_in_m_basis(&gl2, &rho, &m).unwrap();
        assert_eq!(c, MCoords::from([(w(&[0, 1]), LaurentPoly::one())]));
        let sq = expand_in_m_basis(&gl2, &rho, &m.multiply(&m).unwrap()).unwrap();
        assert_eq!(
            sq,
            MCoords::from([(w(&[0, 2]), LaurentPoly::one()), (w(&[1, 1]), q().scale(2))])
        );
        let lone = LatticeElement::monomial(w(&[1, 0]), LaurentPoly::one(), QMode::Symbolic);
        assert_eq!(
            expand_in_m_basis(&gl2, &rho, &lone).unwrap_err().kind(),
            "NotInSpan"
        );
    }

    #[test]
    fn vt_worked_example() {
        let gl2 = lookup("GL2").unwrap();
        let rho = gl2.rho_ad();
        let unit = VTElement::monomial(&gl2, w(&[0, 0]), w(&[0, 0]), LaurentPoly::one()).unwrap();
        assert_eq!(
            vt_embed(&gl2, &rho, QMode::Symbolic, &unit).unwrap(),
            LatticeElement::one(2, QMode::Symbolic)
        );

        // nu + lambda is the simple root
        let pair = VTElement::monomial(&gl2, w(&[0, 1]), w(&[1, -2]), LaurentPoly::one()).unwrap();
        let img = vt_embed(&gl2, &rho, QMode::Symbolic, &pair).unwrap();
        assert_eq!(
            img,
            LatticeElement::monomial(w(&[0, 1]), q(), QMode::Symbolic)
        );
        assert_eq!(
            vt_section(&pair),
            AdMonoidElement::monomial(w(&[1, -1]), LaurentPoly::one())
        );

        assert_eq!(
            VTElement::monomial(&gl2, w(&[1, 0]), w(&[0, 0]), LaurentPoly::one())
                .unwrap_err()
                .kind(),
            "ConstraintViolated"
        );
    }

    #[test]
    fn vt_grade_is_right_inverse_of_section() {
        let gl3 = lookup("GL3").unwrap();
        let x = AdMonoidElement::monomial(w(&[1, 0, -1]), q()).multiply(
            &AdMonoidElement::monomial(w(&[0, 0, 0]), LaurentPoly::one()).multiply(
                &AdMonoidElement::monomial(w(&[1, -1, 0]), LaurentPoly::constant(3)),
            ),
        );
        assert_eq!(vt_section(&vt_grade(&gl3, &x).unwrap()), x);
    }
}
