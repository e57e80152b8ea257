//! Perfect pairings on `H = (Z/p^m)^k`, exact annihilators, and the local
//! and global size-exponent formulas used by the Selmer bookkeeping.
//!
//! Sizes are exponents: a group of order `p^e` is reported as `e`, and a
//! ratio of sizes as a difference of exponents.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::lambda_modules::SizeExponent;
use crate::matrix::{cokernel_exponents, howell_form, howell_size_exponent, kernel_generators, smith_valuations, Matrix};
use crate::residue::PrimePowerRing;

/// `⟨x, y⟩ = xᵀ·G·y mod p^m` on `(Z/p^m)^k` with `det G` a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePairing {
    ring: PrimePowerRing,
    gram: Matrix,
}

impl FinitePairing {
    pub fn new(p: u64, m: u32, gram: &[Vec<i64>]) -> Result<Self> {
        let ring = PrimePowerRing::new(p, m)?;
        let k = gram.len();
        if gram.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidSubgroup("Gram matrix must be square".into()));
        }
        let rows: Vec<Vec<u64>> = gram.iter().map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect();
        FinitePairing::from_matrix(ring, Matrix::from_rows(&ring, &rows))
    }

    pub fn from_matrix(ring: PrimePowerRing, gram: Matrix) -> Result<Self> {
        if gram.rows() != gram.cols() {
            return Err(Error::InvalidSubgroup("Gram matrix must be square".into()));
        }
        if smith_valuations(&ring, &gram).iter().any(|&v| v > 0) {
            return Err(Error::NotPerfect);
        }
        Ok(FinitePairing { ring, gram })
    }

    pub fn ring(&self) -> &PrimePowerRing {
        &self.ring
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// `k` in `H = (Z/p^m)^k`.
    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// `exp |H| = m·k`.
    pub fn size_exponent(&self) -> u32 {
        self.ring.exponent() * self.rank() as u32
    }

    pub fn pair(&self, x: &[u64], y: &[u64]) -> u64 {
        let gy = self.gram.mul_vec(&self.ring, y);
        x.iter().zip(&gy).fold(0, |acc, (&a, &b)| self.ring.add(acc, self.ring.mul(a, b)))
    }
}

/// A subgroup of `(Z/p^m)^k`, held in Howell normal form so that equal
/// subgroups have equal bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    width: usize,
    basis: Vec<Vec<u64>>,
}

impl Subgroup {
    pub fn new(ring: &PrimePowerRing, width: usize, generators: &[Vec<u64>]) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != width) {
            return Err(Error::InvalidSubgroup(alloc::format!(
                "generator of length {} in a group of rank {width}",
                bad.len()
            )));
        }
        Ok(Subgroup { width, basis: howell_form(ring, width, generators) })
    }

    pub fn from_signed(ring: &PrimePowerRing, width: usize, generators: &[Vec<i64>]) -> Result<Self> {
        let gens: Vec<Vec<u64>> = generators.iter().map(|g| g.iter().map(|&x| ring.from_i64(x)).collect()).collect();
        Subgroup::new(ring, width, &gens)
    }

    pub fn zero(width: usize) -> Self {
        Subgroup { width, basis: Vec::new() }
    }

    pub fn whole(ring: &PrimePowerRing, width: usize) -> Self {
        let gens: Vec<Vec<u64>> = (0..width)
            .map(|i| (0..width).map(|j| u64::from(i == j)).collect())
            .collect();
        Subgroup { width, basis: howell_form(ring, width, &gens) }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn size_exponent(&self, ring: &PrimePowerRing) -> u32 {
        howell_size_exponent(ring, &self.basis)
    }

    /// Cyclic decomposition of `H/C`.
    pub fn quotient_exponents(&self, ring: &PrimePowerRing) -> Vec<u32> {
        let mut gens = Matrix::zeros(self.width, self.basis.len());
        for (j, row) in self.basis.iter().enumerate() {
            for (i, &x) in row.iter().enumerate() {
                gens[(i, j)] = x;
            }
        }
        cokernel_exponents(ring, &gens)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return f.write_str("<0>");
        }
        let rows: Vec<alloc::string::String> = self
            .basis
            .iter()
            .map(|r| {
                let cells: Vec<alloc::string::String> = r.iter().map(|x| alloc::format!("{x}")).collect();
                alloc::format!("({})", cells.join(", "))
            })
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

/// `C^⊥ = { y : ⟨x, y⟩ = 0 for all x in C }`, the kernel of `B·G` where the
/// rows of `B` generate `C`.
pub fn exact_annihilator(pair: &FinitePairing, c: &Subgroup) -> Result<Subgroup> {
    let k = pair.rank();
    if c.width != k {
        return Err(Error::InvalidSubgroup(alloc::format!("subgroup of rank {} in a group of rank {k}", c.width)));
    }
    if c.basis.is_empty() {
        return Ok(Subgroup::whole(&pair.ring, k));
    }
    let b = Matrix::from_rows(&pair.ring, &c.basis);
    let constraints = b.mul(&pair.ring, &pair.gram);
    let gens = kernel_generators(&pair.ring, &constraints);
    Subgroup::new(&pair.ring, k, &gens)
}

/// `{ x : ⟨x, y⟩ = 0 for all y in D }`. For a non-symmetric Gram matrix
/// this is the annihilator to use on the other side, so that
/// `left_annihilator(exact_annihilator(C)) = C`.
pub fn left_annihilator(pair: &FinitePairing, d: &Subgroup) -> Result<Subgroup> {
    let transposed = FinitePairing { ring: pair.ring, gram: pair.gram.transpose() };
    exact_annihilator(&transposed, d)
}

/// `C` is its own exact annihilator.
pub fn self_annihilator_check(pair: &FinitePairing, c: &Subgroup) -> Result<bool> {
    Ok(exact_annihilator(pair, c)? == *c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Sign {
    #[cfg_attr(feature = "serde", serde(rename = "+"))]
    Plus,
    #[cfg_attr(feature = "serde", serde(rename = "-"))]
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum LocalKind {
    Ordinary,
    Supersingular,
    Away,
}

/// Exponents of the three torsion groups at an ordinary prime:
/// `a` for `E(K_n)[p^∞]/p^m`, `b` for the formal-group analogue and `c` for
/// `E(K_n)[p^m]`, all on the `η̄`-part cut out by `f`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TorsionExponents {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

/// Caller-supplied local data at one prime `v | p` (or away from `p`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDatum {
    pub kind: LocalKind,
    /// `d = [K : Qp]`; the `n`-th layer has `[K_n : Qp] = d·p^n`.
    pub local_degree: u32,
    pub sign: Option<Sign>,
    pub eta_trivial: bool,
    pub torsion: Option<TorsionExponents>,
}

/// `δ = 2` when `4 | d` and `η` is trivial, else `0`.
pub fn delta(local_degree: u32, eta_trivial: bool) -> u32 {
    if local_degree.is_multiple_of(4) && eta_trivial {
        2
    } else {
        0
    }
}

/// Corank of the signed local condition: `d·p^n + δ` for `+`, `d·p^n` for `-`.
pub fn signed_corank(sign: Sign, local_degree: u32, n: u32, eta_trivial: bool, p: u64) -> u64 {
    let base = local_degree as u64 * p.pow(n);
    match sign {
        Sign::Plus => base + delta(local_degree, eta_trivial) as u64,
        Sign::Minus => base,
    }
}

/// `-m·[K_n : Qp]·deg f`.
pub fn local_ratio_ss(m: u32, n: u32, local_degree: u32, deg_f: u32, p: u64) -> SizeExponent {
    SizeExponent(-(m as i64) * local_degree as i64 * p.pow(n) as i64 * deg_f as i64)
}

/// `a + b - c - m·[K_n : Qp]·deg f`.
pub fn local_ratio_ord(datum: &LocalDatum, m: u32, n: u32, deg_f: u32, p: u64) -> Result<SizeExponent> {
    if datum.kind != LocalKind::Ordinary {
        return Err(Error::IncompleteDatum("ordinary ratio requested at a non-ordinary prime".into()));
    }
    let t = datum
        .torsion
        .ok_or_else(|| Error::IncompleteDatum("ordinary prime without torsion exponents a, b, c".into()))?;
    Ok(SizeExponent(t.a as i64 + t.b as i64 - t.c as i64) + local_ratio_ss(m, n, datum.local_degree, deg_f, p))
}

pub fn local_ratio_away() -> SizeExponent {
    SizeExponent(0)
}

/// Dispatch on the kind of the prime.
pub fn local_ratio(datum: &LocalDatum, m: u32, n: u32, deg_f: u32, p: u64) -> Result<SizeExponent> {
    match datum.kind {
        LocalKind::Ordinary => local_ratio_ord(datum, m, n, deg_f, p),
        LocalKind::Supersingular => Ok(local_ratio_ss(m, n, datum.local_degree, deg_f, p)),
        LocalKind::Away => Ok(local_ratio_away()),
    }
}

/// `[F_n : Q]·m·deg f`.
pub fn global_euler_exponent(field_degree_fn: u64, m: u32, deg_f: u32) -> SizeExponent {
    SizeExponent(field_degree_fn as i64 * m as i64 * deg_f as i64)
}
