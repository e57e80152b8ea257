//! Truncated power series over `Z/p^N`, Weierstrass preparation and the
//! involution `ι`.
//!
//! A [`PowerSeries`] is an element of `(Z/p^N)[T] / (T^M)`. All equality is
//! equality of canonical residues at that precision.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::residue::PrimePowerRing;

/// Working precision: coefficients modulo `p^N`, series modulo `T^M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Precision {
    ring: PrimePowerRing,
    truncation: usize,
}

impl Precision {
    pub fn new(p: u64, p_adic: u32, truncation: usize) -> Result<Self> {
        if p < 3 {
            return Err(Error::InvalidPrecision(alloc::format!("p must be an odd prime, got {p}")));
        }
        if p_adic == 0 {
            return Err(Error::InvalidPrecision("N must be at least 1".into()));
        }
        if truncation == 0 {
            return Err(Error::InvalidPrecision("M must be at least 1".into()));
        }
        let ring = PrimePowerRing::new(p, p_adic)?;
        Ok(Precision { ring, truncation })
    }

    pub fn p(&self) -> u64 {
        self.ring.p()
    }

    /// `N`: coefficients live modulo `p^N`.
    pub fn p_adic(&self) -> u32 {
        self.ring.exponent()
    }

    /// `M`: series are stored modulo `T^M`.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn ring(&self) -> &PrimePowerRing {
        &self.ring
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} N={} M={}", self.p(), self.p_adic(), self.truncation)
    }
}

/// An element of `Λ` at working precision; `coeffs[k]` is the coefficient of `T^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    prec: Precision,
    coeffs: Vec<u64>,
}

impl PowerSeries {
    pub fn zero(prec: Precision) -> Self {
        PowerSeries { prec, coeffs: vec![0; prec.truncation] }
    }

    pub fn one(prec: Precision) -> Self {
        PowerSeries::constant(prec, 1)
    }

    pub fn constant(prec: Precision, c: i64) -> Self {
        let mut s = PowerSeries::zero(prec);
        s.coeffs[0] = prec.ring.from_i64(c);
        s
    }

    /// The series `T` (zero when `M = 1`).
    pub fn t(prec: Precision) -> Self {
        let mut s = PowerSeries::zero(prec);
        if prec.truncation > 1 {
            s.coeffs[1] = 1;
        }
        s
    }

    /// Build from integer coefficients (constant term first); terms at index
    /// `>= M` are dropped.
    pub fn from_coeffs(prec: Precision, coeffs: &[i64]) -> Self {
        let mut s = PowerSeries::zero(prec);
        for (dst, &c) in s.coeffs.iter_mut().zip(coeffs) {
            *dst = prec.ring.from_i64(c);
        }
        s
    }

    /// Build from residues; values are reduced, terms at index `>= M` dropped.
    pub fn from_residues(prec: Precision, coeffs: &[u64]) -> Self {
        let mut s = PowerSeries::zero(prec);
        for (dst, &c) in s.coeffs.iter_mut().zip(coeffs) {
            *dst = prec.ring.reduce(c);
        }
        s
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Index of the first coefficient that is a unit modulo `p`.
    pub fn first_unit_index(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| self.prec.ring.is_unit(c))
    }

    fn check(&self, other: &PowerSeries) -> Result<()> {
        if self.prec == other.prec {
            Ok(())
        } else {
            Err(Error::PrecisionMismatch)
        }
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.check(other)?;
        let r = self.prec.ring;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| r.add(a, b)).collect();
        Ok(PowerSeries { prec: self.prec, coeffs })
    }

    pub fn sub(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.check(other)?;
        let r = self.prec.ring;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| r.sub(a, b)).collect();
        Ok(PowerSeries { prec: self.prec, coeffs })
    }

    pub fn neg(&self) -> PowerSeries {
        let r = self.prec.ring;
        PowerSeries { prec: self.prec, coeffs: self.coeffs.iter().map(|&a| r.neg(a)).collect() }
    }

    pub fn scale(&self, c: u64) -> PowerSeries {
        let r = self.prec.ring;
        PowerSeries { prec: self.prec, coeffs: self.coeffs.iter().map(|&a| r.mul(a, c)).collect() }
    }

    pub fn mul(&self, other: &PowerSeries) -> Result<PowerSeries> {
        series_mul(self, other)
    }

    pub fn pow(&self, mut e: u64) -> PowerSeries {
        let mut acc = PowerSeries::one(self.prec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_unchecked(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = mul_unchecked(&base, &base);
            }
        }
        acc
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs)?;
        write!(f, " + O(T^{})", self.prec.truncation)
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[u64]) -> fmt::Result {
    let mut first = true;
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match (k, c) {
            (0, c) => write!(f, "{c}")?,
            (1, 1) => f.write_str("T")?,
            (1, c) => write!(f, "{c}*T")?,
            (k, 1) => write!(f, "T^{k}")?,
            (k, c) => write!(f, "{c}*T^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn mul_unchecked(f: &PowerSeries, g: &PowerSeries) -> PowerSeries {
    let r = f.prec.ring;
    let m = f.prec.truncation;
    let mut acc = vec![0u128; m];
    let modulus = r.modulus() as u128;
    for (i, &a) in f.coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.coeffs[..m - i].iter().enumerate() {
            acc[i + j] = (acc[i + j] + a as u128 * b as u128) % modulus;
        }
    }
    PowerSeries { prec: f.prec, coeffs: acc.into_iter().map(|x| x as u64).collect() }
}

/// Product in `Λ` reduced modulo `(p^N, T^M)`.
pub fn series_mul(f: &PowerSeries, g: &PowerSeries) -> Result<PowerSeries> {
    f.check(g)?;
    Ok(mul_unchecked(f, g))
}

/// A power series whose constant term is a unit modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitSeries(PowerSeries);

impl UnitSeries {
    pub fn new(series: PowerSeries) -> Result<Self> {
        if series.prec.ring.is_unit(series.coeff(0)) {
            Ok(UnitSeries(series))
        } else {
            Err(Error::NotAUnit)
        }
    }

    pub fn as_series(&self) -> &PowerSeries {
        &self.0
    }

    pub fn into_series(self) -> PowerSeries {
        self.0
    }
}

impl fmt::Display for UnitSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn inverse_series(u: &PowerSeries) -> Result<PowerSeries> {
    let r = u.prec.ring;
    let c0_inv = r.inv(u.coeff(0)).ok_or(Error::NotAUnit)?;
    let m = u.prec.truncation;
    let mut out = vec![0u64; m];
    out[0] = c0_inv;
    for k in 1..m {
        let mut acc = 0u64;
        for i in 1..=k {
            acc = r.add(acc, r.mul(u.coeffs[i], out[k - i]));
        }
        out[k] = r.neg(r.mul(c0_inv, acc));
    }
    Ok(PowerSeries { prec: u.prec, coeffs: out })
}

/// Multiplicative inverse of a unit modulo `(p^N, T^M)`.
pub fn invert_unit(u: &UnitSeries) -> UnitSeries {
    UnitSeries(inverse_series(&u.0).expect("constant term is a unit"))
}

/// Monic polynomial whose non-leading coefficients are divisible by `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistinguishedPoly {
    prec: Precision,
    coeffs: Vec<u64>,
}

impl PartialOrd for Precision {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Precision {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.p(), self.p_adic(), self.truncation).cmp(&(other.p(), other.p_adic(), other.truncation))
    }
}

impl DistinguishedPoly {
    /// Coefficients constant term first; the last must be `1` and every other
    /// coefficient divisible by `p`.
    pub fn new(prec: Precision, coeffs: &[i64]) -> Result<Self> {
        let residues: Vec<u64> = coeffs.iter().map(|&c| prec.ring.from_i64(c)).collect();
        Self::from_residues(prec, residues)
    }

    pub fn from_residues(prec: Precision, coeffs: Vec<u64>) -> Result<Self> {
        let r = prec.ring;
        let coeffs: Vec<u64> = coeffs.into_iter().map(|c| r.reduce(c)).collect();
        match coeffs.split_last() {
            None => Err(Error::NotDistinguished("empty coefficient list".into())),
            Some((&lead, _)) if lead != 1 => {
                Err(Error::NotDistinguished(alloc::format!("leading coefficient {lead} is not 1")))
            }
            Some((_, lower)) => {
                if let Some(i) = lower.iter().position(|&c| r.is_unit(c)) {
                    return Err(Error::NotDistinguished(alloc::format!(
                        "coefficient of T^{i} is not divisible by {}",
                        prec.p()
                    )));
                }
                Ok(DistinguishedPoly { prec, coeffs })
            }
        }
    }

    pub fn one(prec: Precision) -> Self {
        DistinguishedPoly { prec, coeffs: vec![1] }
    }

    pub fn t(prec: Precision) -> Self {
        DistinguishedPoly { prec, coeffs: vec![0, 1] }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn to_series(&self) -> Result<PowerSeries> {
        if self.degree() >= self.prec.truncation {
            return Err(Error::InsufficientTruncation {
                needed: self.degree(),
                available: self.prec.truncation,
            });
        }
        Ok(PowerSeries::from_residues(self.prec, &self.coeffs))
    }

    /// Exact polynomial product; a product of distinguished polynomials is
    /// distinguished.
    pub fn mul(&self, other: &DistinguishedPoly) -> Result<DistinguishedPoly> {
        if self.prec != other.prec {
            return Err(Error::PrecisionMismatch);
        }
        let coeffs = poly_mul(&self.prec.ring, &self.coeffs, &other.coeffs);
        Ok(DistinguishedPoly { prec: self.prec, coeffs })
    }

    pub fn pow(&self, e: u32) -> DistinguishedPoly {
        let coeffs = poly_pow(&self.prec.ring, &self.coeffs, e as u64);
        DistinguishedPoly { prec: self.prec, coeffs }
    }
}

impl fmt::Display for DistinguishedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs)
    }
}

/// Weierstrass preparation `f = u·f1` at working precision.
///
/// Let `d` be the index of the first unit coefficient. Starting from
/// `f1 = T^d`, `u = f / T^d`, each round solves
/// `T^d·δu + u·δf1 ≡ f - f1·u` one `p`-adic digit further and stops once the
/// product reproduces `f` exactly modulo `(p^N, T^M)`. The result is a
/// deterministic function of `f`. When `M ≥ (N + 1)·d` it agrees with the
/// preparation of any lift of `f` to `Λ`.
pub fn weierstrass_prepare(f: &PowerSeries) -> Result<(UnitSeries, DistinguishedPoly)> {
    let prec = f.prec;
    let r = prec.ring;
    let m = prec.truncation;
    let d = f.first_unit_index().ok_or(Error::NoPreparation)?;

    let mut f1 = vec![0u64; d + 1];
    f1[d] = 1;
    let mut u = PowerSeries::zero(prec);
    u.coeffs[..m - d].copy_from_slice(&f.coeffs[d..]);

    for _ in 0..=prec.p_adic() {
        let f1_series = PowerSeries::from_residues(prec, &f1);
        let err = f.sub(&mul_unchecked(&f1_series, &u))?;
        if err.is_zero() {
            let f1 = DistinguishedPoly::from_residues(prec, f1)?;
            return Ok((UnitSeries(u), f1));
        }
        let w = mul_unchecked(&err, &inverse_series(&u)?);
        for (c, &dc) in f1[..d].iter_mut().zip(&w.coeffs[..d]) {
            *c = r.add(*c, dc);
        }
        let mut shifted = PowerSeries::zero(prec);
        shifted.coeffs[..m - d].copy_from_slice(&w.coeffs[d..]);
        let du = mul_unchecked(&u, &shifted);
        u = u.add(&du)?;
    }
    unreachable!("Hensel iteration gains one p-adic digit per round")
}

/// `deg(f)`: the degree of the distinguished factor, i.e. the index of the
/// first unit coefficient.
pub fn weierstrass_degree(f: &PowerSeries) -> Result<usize> {
    f.first_unit_index().ok_or(Error::NoPreparation)
}

/// `f((1+T)^{-1} - 1)` modulo `(p^N, T^M)`.
pub fn iota(f: &PowerSeries) -> PowerSeries {
    let prec = f.prec;
    let one_plus_t = PowerSeries::one(prec).add(&PowerSeries::t(prec)).expect("same precision");
    let s = inverse_series(&one_plus_t).expect("1+T is a unit").sub(&PowerSeries::one(prec)).expect("same precision");
    // Horner; S has zero constant term so truncation is exact.
    let mut acc = PowerSeries::zero(prec);
    for &c in f.coeffs.iter().rev() {
        acc = mul_unchecked(&acc, &s);
        acc.coeffs[0] = prec.ring.add(acc.coeffs[0], c);
    }
    acc
}

/// `ω_n = (1+T)^{p^n} - 1`.
pub fn omega(prec: Precision, n: u32) -> Result<DistinguishedPoly> {
    let degree = prec.p().checked_pow(n).map(|d| d as usize).unwrap_or(usize::MAX);
    if degree >= prec.truncation {
        return Err(Error::InsufficientTruncation { needed: degree, available: prec.truncation });
    }
    DistinguishedPoly::from_residues(prec, omega_coeffs(&prec.ring, prec.p(), n))
}

/// Coefficients of `(1+T)^{p^n} - 1` without any `T`-adic truncation.
pub(crate) fn omega_coeffs(ring: &PrimePowerRing, p: u64, n: u32) -> Vec<u64> {
    let mut c = poly_pow(ring, &[1, 1], p.pow(n));
    c[0] = ring.sub(c[0], 1);
    c
}

pub(crate) fn poly_mul(ring: &PrimePowerRing, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ring.add(out[i + j], ring.mul(x, y));
        }
    }
    out
}

pub(crate) fn poly_pow(ring: &PrimePowerRing, a: &[u64], mut e: u64) -> Vec<u64> {
    let mut acc = vec![1 % ring.modulus()];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul(ring, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = poly_mul(ring, &base, &base);
        }
    }
    acc
}

/// Remainder of `a` modulo a monic polynomial; the result has length `deg(monic)`.
pub(crate) fn poly_rem_monic(ring: &PrimePowerRing, a: &[u64], monic: &[u64]) -> Vec<u64> {
    let d = monic.len() - 1;
    debug_assert_eq!(monic[d] % ring.modulus(), 1 % ring.modulus());
    let mut r: Vec<u64> = a.iter().map(|&x| ring.reduce(x)).collect();
    for top in (d..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for i in 0..=d {
            let v = ring.mul(c, monic[i]);
            r[top - d + i] = ring.sub(r[top - d + i], v);
        }
    }
    r.resize(d, 0);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec(p: u64, n: u32, m: usize) -> Precision {
        Precision::new(p, n, m).unwrap()
    }

    #[test]
    fn monomial_product() {
        let pr = prec(3, 4, 8);
        let t = PowerSeries::t(pr);
        assert_eq!(series_mul(&t, &t).unwrap(), PowerSeries::from_coeffs(pr, &[0, 0, 1]));
    }

    #[test]
    fn geometric_series_inverse() {
        for m in [1, 2, 5, 12] {
            let pr = prec(5, 3, m);
            let a = PowerSeries::from_coeffs(pr, &[1, 1]);
            let alt: Vec<i64> = (0..m).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
            let b = PowerSeries::from_coeffs(pr, &alt);
            assert_eq!(series_mul(&a, &b).unwrap(), PowerSeries::one(pr));
        }
    }

    #[test]
    fn hand_expanded_product() {
        // (1 + T + T^2)(T + 3) = T^3 + 4T^2 + 4T + 3
        let pr = prec(3, 4, 8);
        let a = PowerSeries::from_coeffs(pr, &[1, 1, 1]);
        let b = PowerSeries::from_coeffs(pr, &[3, 1]);
        assert_eq!(series_mul(&a, &b).unwrap(), PowerSeries::from_coeffs(pr, &[3, 4, 4, 1]));
    }

    #[test]
    fn mismatched_precision() {
        let a = PowerSeries::one(prec(3, 4, 8));
        let b = PowerSeries::one(prec(3, 4, 9));
        assert_eq!(series_mul(&a, &b), Err(Error::PrecisionMismatch));
    }

    #[test]
    fn unit_inverses() {
        let pr = prec(3, 2, 6);
        let one = UnitSeries::new(PowerSeries::one(pr)).unwrap();
        assert_eq!(invert_unit(&one), one);
        let two = UnitSeries::new(PowerSeries::constant(pr, 2)).unwrap();
        assert_eq!(invert_unit(&two).as_series(), &PowerSeries::constant(pr, 5));
        let opt = UnitSeries::new(PowerSeries::from_coeffs(pr, &[1, 1])).unwrap();
        assert_eq!(
            invert_unit(&opt).as_series(),
            &PowerSeries::from_coeffs(pr, &[1, -1, 1, -1, 1, -1])
        );
        assert_eq!(UnitSeries::new(PowerSeries::constant(pr, 3)), Err(Error::NotAUnit));
    }

    #[test]
    fn prepare_already_distinguished() {
        let pr = prec(3, 4, 8);
        let (u, f1) = weierstrass_prepare(&PowerSeries::t(pr)).unwrap();
        assert_eq!(u.as_series(), &PowerSeries::one(pr));
        assert_eq!(f1, DistinguishedPoly::t(pr));
        let (u, f1) = weierstrass_prepare(&PowerSeries::from_coeffs(pr, &[3, 1])).unwrap();
        assert_eq!(u.as_series(), &PowerSeries::one(pr));
        assert_eq!(f1, DistinguishedPoly::new(pr, &[3, 1]).unwrap());
    }

    #[test]
    fn prepare_product_with_unit() {
        let pr = prec(3, 4, 8);
        let f = PowerSeries::from_coeffs(pr, &[3, 4, 4, 1]);
        let (u, f1) = weierstrass_prepare(&f).unwrap();
        assert_eq!(series_mul(u.as_series(), &f1.to_series().unwrap()).unwrap(), f);
        assert_eq!(f1.degree(), 1);
        assert_eq!(f1, DistinguishedPoly::new(pr, &[3, 1]).unwrap());
        // only the low coefficients of u are pinned down modulo T^M
        assert_eq!(&u.as_series().coeffs()[..6], &[1, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn prepare_errors() {
        let pr = prec(3, 2, 4);
        let f = PowerSeries::from_coeffs(pr, &[3, 6, 0, 3]);
        assert_eq!(weierstrass_prepare(&f), Err(Error::NoPreparation));
        assert_eq!(weierstrass_degree(&PowerSeries::zero(pr)), Err(Error::NoPreparation));
    }

    #[test]
    fn degrees() {
        let pr = prec(3, 3, 8);
        assert_eq!(weierstrass_degree(&PowerSeries::from_coeffs(pr, &[3, 0, 1])).unwrap(), 2);
        assert_eq!(weierstrass_degree(&PowerSeries::from_coeffs(pr, &[2, 3, 1])).unwrap(), 0);
        assert_eq!(weierstrass_degree(&PowerSeries::from_coeffs(pr, &[0, 3, 3, 1])).unwrap(), 3);
    }

    #[test]
    fn iota_examples() {
        let pr = prec(5, 3, 7);
        assert_eq!(iota(&PowerSeries::constant(pr, 7)), PowerSeries::constant(pr, 7));
        let expected = PowerSeries::from_coeffs(pr, &[0, -1, 1, -1, 1, -1, 1]);
        assert_eq!(iota(&PowerSeries::t(pr)), expected);
    }

    #[test]
    fn iota_of_t_plus_three_prepares_to_t_plus_six() {
        let pr = prec(3, 2, 8);
        let f = PowerSeries::from_coeffs(pr, &[3, 1]);
        let (_, f1) = weierstrass_prepare(&iota(&f)).unwrap();
        assert_eq!(f1, DistinguishedPoly::new(pr, &[6, 1]).unwrap());
    }

    #[test]
    fn omega_examples() {
        let pr = prec(3, 4, 12);
        assert_eq!(omega(pr, 0).unwrap(), DistinguishedPoly::t(pr));
        assert_eq!(omega(pr, 1).unwrap(), DistinguishedPoly::new(pr, &[0, 3, 3, 1]).unwrap());
        let w2 = omega(pr, 2).unwrap();
        assert_eq!(w2.degree(), 9);
        assert!(w2.coeffs()[..9].iter().all(|c| c % 3 == 0));
        assert!(matches!(omega(pr, 3), Err(Error::InsufficientTruncation { .. })));
    }

    #[test]
    fn distinguished_validation() {
        let pr = prec(3, 2, 8);
        assert!(DistinguishedPoly::new(pr, &[1, 1]).is_err());
        assert!(DistinguishedPoly::new(pr, &[3, 2]).is_err());
        assert!(DistinguishedPoly::new(pr, &[3, 0, 1]).is_ok());
    }

    #[test]
    fn display() {
        let pr = prec(3, 4, 8);
        let f = PowerSeries::from_coeffs(pr, &[3, 4, 4, 1]);
        assert_eq!(alloc::format!("{f}"), "T^3 + 4*T^2 + 4*T + 3 + O(T^8)");
        assert_eq!(alloc::format!("{}", DistinguishedPoly::new(pr, &[3, 1]).unwrap()), "T + 3");
    }
}
