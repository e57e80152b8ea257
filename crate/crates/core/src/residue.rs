//! Arithmetic in `Z/p^k`.

use crate::error::{Error, Result};

/// The ring `Z/p^k`, residues stored canonically in `[0, p^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrimePowerRing {
    p: u64,
    exponent: u32,
    modulus: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimePowerRing {
    pub fn new(p: u64, exponent: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidPrecision(alloc::format!("{p} is not prime")));
        }
        let modulus = p
            .checked_pow(exponent)
            .filter(|m| *m < (1u64 << 62))
            .ok_or_else(|| Error::InvalidPrecision(alloc::format!("{p}^{exponent} is too large")))?;
        Ok(PrimePowerRing { p, exponent, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The same prime at a smaller exponent.
    pub fn truncate(&self, exponent: u32) -> PrimePowerRing {
        assert!(exponent <= self.exponent);
        PrimePowerRing { p: self.p, exponent, modulus: self.p.pow(exponent) }
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.modulus
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    pub fn from_i128(&self, x: i128) -> u64 {
        x.rem_euclid(self.modulus as i128) as u64
    }

    /// Representative in `(-p^k/2, p^k/2]`.
    pub fn lift_symmetric(&self, x: u64) -> i64 {
        if x > self.modulus / 2 {
            x as i64 - self.modulus as i64
        } else {
            x as i64
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        base %= self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.p)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus as i128, (a % self.modulus) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.from_i128(s0))
    }

    /// `p`-adic valuation of a residue; zero has valuation `k`.
    pub fn valuation(&self, a: u64) -> u32 {
        let mut a = a % self.modulus;
        if a == 0 {
            return self.exponent;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn p_power(&self, v: u32) -> u64 {
        if v >= self.exponent {
            0
        } else {
            self.p.pow(v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod_nine() {
        let r = PrimePowerRing::new(3, 2).unwrap();
        assert_eq!(r.inv(2), Some(5));
        assert_eq!(r.inv(3), None);
        for a in 0..9 {
            if let Some(b) = r.inv(a) {
                assert_eq!(r.mul(a, b), 1);
            }
        }
    }

    #[test]
    fn valuations() {
        let r = PrimePowerRing::new(5, 3).unwrap();
        assert_eq!(r.valuation(0), 3);
        assert_eq!(r.valuation(25), 2);
        assert_eq!(r.valuation(7), 0);
        assert_eq!(r.lift_symmetric(124), -1);
    }

    #[test]
    fn rejects_composite_and_overflow() {
        assert!(PrimePowerRing::new(9, 2).is_err());
        assert!(PrimePowerRing::new(3, 60).is_err());
    }
}
