//! Small finite fields `GF(p^k)` by lookup tables.

use crate::error::{Error, Result};
use crate::poly::prime_power;

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 64;

/// Elements are `0..q`; `0` and `1` are the additive and multiplicative
/// identities. An element encodes a polynomial over `F_p` of degree `< k`
/// by its base-`p` digits, reduced modulo a monic irreducible of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    q: u32,
    p: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::EnvelopeExceeded(format!(
                "field order {q} above {MAX_FIELD_ORDER}"
            )));
        }
        let (q, p, k) = (q as u32, p as u32, k as usize);
        let digits = |x: u32| -> Vec<u32> { (0..k).map(|i| (x / p.pow(i as u32)) % p).collect() };
        let encode = |d: &[u32]| -> u32 {
            d.iter()
                .enumerate()
                .map(|(i, &c)| c * p.pow(i as u32))
                .sum()
        };

        let add: Vec<u32> = (0..q * q)
            .map(|ab| {
                let (a, b) = (digits(ab / q), digits(ab % q));
                encode(
                    &a.iter()
                        .zip(&b)
                        .map(|(x, y)| (x + y) % p)
                        .collect::<Vec<_>>(),
                )
            })
            .collect();

        // monic modulus x^k + m_{k-1} x^{k-1} + ... + m_0, searched in order
        let mut found = None;
        for low in 0..q {
            let modulus = digits(low);
            let mul = mul_table(q, p, k, &modulus, &digits, &encode);
            let field = (1..q).all(|a| (1..q).any(|b| mul[(a * q + b) as usize] == 1));
            if field {
                found = Some(mul);
                break;
            }
        }
        let mul = found.expect("an irreducible polynomial of every degree exists");
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap())
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap()
                }
            })
            .collect();
        Ok(Self {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }
}

fn mul_table(
    q: u32,
    p: u32,
    k: usize,
    modulus: &[u32],
    digits: &dyn Fn(u32) -> Vec<u32>,
    encode: &dyn Fn(&[u32]) -> u32,
) -> Vec<u32> {
    (0..q * q)
        .map(|ab| {
            let (a, b) = (digits(ab / q), digits(ab % q));
            let mut prod = vec![0u32; 2 * k];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            // x^k = -(m_{k-1} x^{k-1} + ... + m_0)
            for deg in (k..2 * k).rev() {
                let c = prod[deg];
                if c != 0 {
                    prod[deg] = 0;
                    for (i, m) in modulus.iter().enumerate() {
                        prod[deg - k + i] = (prod[deg - k + i] + (p - c) * m) % p;
                    }
                }
            }
            encode(&prod[..k])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FiniteField) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                }
            }
        }
    }

    #[test]
    fn small_fields_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(f.order() as u64, q);
            check_axioms(&f);
        }
    }

    #[test]
    fn gf4_has_characteristic_two() {
        let f = FiniteField::new(4).unwrap();
        assert_eq!(f.characteristic(), 2);
        for a in 0..4 {
            assert_eq!(f.add(a, a), 0);
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert_eq!(FiniteField::new(6).unwrap_err().kind(), "NotPrimePower");
        assert_eq!(
            FiniteField::new(128).unwrap_err().kind(),
            "EnvelopeExceeded"
        );
    }
}
