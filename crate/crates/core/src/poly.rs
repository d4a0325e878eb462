//! Integer Laurent polynomials in a formal variable `q`.
//!
//! This is the coefficient ring of every algebra in the crate. Storage is
//! dense between the lowest and highest nonzero exponent; the zero
//! polynomial has no coefficients. Canonical text form lists terms by
//! increasing exponent, e.g. `1+2*q^3` or `-q^-1+q`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

/// Polynomials in `q` with nonnegative exponents. Kostka-Foulkes
/// polynomials and partition functions use this alias; the invariant is
/// checked with [`LaurentPoly::is_polynomial`].
pub type QPolynomial = LaurentPoly;

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            low: e,
            coeffs: vec![c],
        }
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc += &Self::monomial(c, e);
        }
        acc
    }

    fn normalize(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            return Self::zero();
        }
        self.coeffs.drain(..lead);
        self.low += lead as i32;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> i64 {
        let idx = e - self.low;
        if idx < 0 {
            return 0;
        }
        self.coeffs.get(idx as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs by increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    /// No negative powers of `q`.
    pub fn is_polynomial(&self) -> bool {
        self.low_degree().is_none_or(|d| d >= 0)
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs.len() == 1)
    }

    /// All coefficients are nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn invert_variable(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(d) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                Self { low: -d, coeffs }
            }
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
        .normalize()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Value at a rational point `q`; `q = 0` is allowed only without
    /// negative exponents.
    pub fn eval_rational(&self, q: i64) -> Option<Ratio<i128>> {
        if self.is_zero() {
            return Some(Ratio::from_integer(0));
        }
        if q == 0 && self.low < 0 {
            return None;
        }
        let q = Ratio::from_integer(q as i128);
        let mut acc = Ratio::from_integer(0);
        for (e, c) in self.terms() {
            let term = if e >= 0 {
                num_traits::pow(q, e as usize)
            } else {
                num_traits::pow(q.recip(), (-e) as usize)
            };
            acc += term * Ratio::from_integer(c as i128);
        }
        Some(acc)
    }

    /// Value at an integer `q` when it is an integer.
    pub fn eval_integer(&self, q: i64) -> Result<i64> {
        let v = self
            .eval_rational(q)
            .ok_or_else(|| Error::NonIntegralSpecialization(self.to_string(), q))?;
        if !v.is_integer() {
            return Err(Error::NonIntegralSpecialization(self.to_string(), q));
        }
        i64::try_from(v.to_integer())
            .map_err(|_| Error::NonIntegralSpecialization(self.to_string(), q))
    }

    /// Reduces every coefficient modulo `m` into `[0, m)`.
    pub fn reduce_mod(&self, m: i64) -> Self {
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c.rem_euclid(m)).collect(),
        }
        .normalize()
    }
}

/// `Some((p, k))` when `q = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&p| q.is_multiple_of(p))?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{a}*q")?,
                (_, 1) => write!(f, "q^{e}")?,
                _ => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the canonical form written by `Display`, tolerating spaces and
    /// terms in any order.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty coefficient".into()));
        }
        let bad = || Error::Parse(format!("bad coefficient `{s}`"));
        // split at top-level signs, keeping the sign of `^-` exponents attached
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
        pieces.push(&s[start..]);

        let mut acc = Self::zero();
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'-') => (-1, &piece[1..]),
                Some(b'+') => (1, &piece[1..]),
                _ => (1, piece),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coef, var) = match body.find('q') {
                None => (body, None),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    (if c.is_empty() { "1" } else { c }, Some(&body[pos + 1..]))
                }
            };
            let c: i64 = coef.parse().map_err(|_| bad())?;
            let e: i32 = match var {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?,
            };
            acc += &Self::monomial(sign * c, e);
        }
        Ok(acc)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        let low = self.low.min(rhs.low);
        let high = self.degree().unwrap().max(rhs.degree().unwrap());
        let mut coeffs = vec![0i64; (high - low + 1) as usize];
        for (e, c) in self.terms().chain(rhs.terms()) {
            coeffs[(e - low) as usize] += c;
        }
        *self = Self { low, coeffs }.normalize();
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self += &(-rhs);
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly {
            low: self.low + rhs.low,
            coeffs,
        }
        .normalize()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(
            LaurentPoly::from_terms([(3, 2), (0, 1)]).to_string(),
            "1+2*q^3"
        );
        assert_eq!(
            LaurentPoly::from_terms([(-1, -1), (1, 1)]).to_string(),
            "-q^-1+q"
        );
        assert_eq!(LaurentPoly::from_terms([(1, 2)]).to_string(), "2*q");
        assert_eq!(
            LaurentPoly::from_terms([(2, 1), (0, -1)]).to_string(),
            "-1+q^2"
        );
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn parse_accepts_loose_forms() {
        assert_eq!(p("q^2 - 1"), LaurentPoly::from_terms([(2, 1), (0, -1)]));
        assert_eq!(p("2*q+q"), LaurentPoly::monomial(3, 1));
        assert_eq!(p("-q^-2"), LaurentPoly::monomial(-1, -2));
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn cancellation_gives_canonical_zero() {
        let a = p("1+q");
        assert_eq!(&a - &a, LaurentPoly::zero());
        assert_eq!((&a - &p("1")).low_degree(), Some(1));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("1+2*q^3").eval_integer(2).unwrap(), 17);
        assert_eq!(p("q+q^-1").eval_integer(1).unwrap(), 2);
        assert!(p("q^-1").eval_integer(2).is_err());
        assert!(p("q^-1").eval_integer(0).is_err());
        assert_eq!(p("3+q").eval_integer(0).unwrap(), 3);
        assert_eq!(p("2*q^-1").eval_integer(2).unwrap(), 1);
    }

    #[test]
    fn inversion_and_reduction() {
        assert_eq!(p("q+q^2").invert_variable(), p("q^-1+q^-2"));
        assert_eq!(p("1+2*q+3*q^2").reduce_mod(2), p("1+q^2"));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i32..5, -5i64..6), 0..5).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn evaluation_is_a_ring_map(a in arb_poly(), b in arb_poly(), q in 1i64..5) {
            let lhs = (&a * &b).eval_rational(q).unwrap();
            prop_assert_eq!(lhs, a.eval_rational(q).unwrap() * b.eval_rational(q).unwrap());
        }
    }
}
