//! Finitely generated `Λ`-modules in elementary form
//! `Λ^r ⊕ ⊕ Λ/p^{α_i} ⊕ ⊕ Λ/f_j^{β_j}`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{cokernel_exponents, smith_valuations, Matrix};
use crate::padic_series::{
    iota, omega_coeffs, poly_pow, poly_rem_monic, weierstrass_prepare, DistinguishedPoly, Precision,
};
use crate::residue::PrimePowerRing;

/// A group of order `p^e` (or a ratio `p^e` when `e < 0`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SizeExponent(pub i64);

impl SizeExponent {
    pub const ONE: SizeExponent = SizeExponent(0);

    pub fn exponent(self) -> i64 {
        self.0
    }
}

impl Add for SizeExponent {
    type Output = SizeExponent;
    fn add(self, rhs: SizeExponent) -> SizeExponent {
        SizeExponent(self.0 + rhs.0)
    }
}

impl AddAssign for SizeExponent {
    fn add_assign(&mut self, rhs: SizeExponent) {
        self.0 += rhs.0;
    }
}

impl Sub for SizeExponent {
    type Output = SizeExponent;
    fn sub(self, rhs: SizeExponent) -> SizeExponent {
        SizeExponent(self.0 - rhs.0)
    }
}

impl Neg for SizeExponent {
    type Output = SizeExponent;
    fn neg(self) -> SizeExponent {
        SizeExponent(-self.0)
    }
}

impl core::iter::Sum for SizeExponent {
    fn sum<I: Iterator<Item = SizeExponent>>(iter: I) -> SizeExponent {
        iter.fold(SizeExponent::ONE, Add::add)
    }
}

impl fmt::Display for SizeExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p^{}", self.0)
    }
}

/// A summand `Λ/f^β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyPart {
    pub f: DistinguishedPoly,
    pub beta: u32,
}

impl PolyPart {
    pub fn new(f: DistinguishedPoly, beta: u32) -> Self {
        PolyPart { f, beta }
    }
}

/// Structure-theorem data of a finitely generated `Λ`-module.
///
/// Summands are kept sorted, so two values compare equal exactly when their
/// elementary forms agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryModule {
    prec: Precision,
    free_rank: u32,
    p_parts: Vec<u32>,
    poly_parts: Vec<PolyPart>,
}

impl ElementaryModule {
    pub fn new(
        prec: Precision,
        free_rank: u32,
        mut p_parts: Vec<u32>,
        mut poly_parts: Vec<PolyPart>,
    ) -> Result<Self> {
        if let Some(a) = p_parts.iter().find(|&&a| a == 0) {
            return Err(Error::InvalidModule(alloc::format!("p-part exponent {a} must be >= 1")));
        }
        for part in &poly_parts {
            if part.f.precision() != prec {
                return Err(Error::PrecisionMismatch);
            }
            if part.beta == 0 {
                return Err(Error::InvalidModule("beta must be >= 1".into()));
            }
            if part.f.degree() == 0 {
                return Err(Error::InvalidModule("f_j must have degree >= 1".into()));
            }
        }
        let mut distinct: Vec<&DistinguishedPoly> = poly_parts.iter().map(|pp| &pp.f).collect();
        distinct.sort();
        distinct.dedup();
        for (i, f) in distinct.iter().enumerate() {
            for g in &distinct[i + 1..] {
                if !coprime_at_precision(f, g) {
                    return Err(Error::InvalidModule(alloc::format!(
                        "{f} and {g} are not coprime at precision {prec}"
                    )));
                }
            }
        }
        p_parts.sort_unstable();
        poly_parts.sort();
        Ok(ElementaryModule { prec, free_rank, p_parts, poly_parts })
    }

    pub fn zero(prec: Precision) -> Self {
        ElementaryModule { prec, free_rank: 0, p_parts: Vec::new(), poly_parts: Vec::new() }
    }

    pub fn free(prec: Precision, rank: u32) -> Self {
        ElementaryModule { free_rank: rank, ..ElementaryModule::zero(prec) }
    }

    pub fn cyclic_p(prec: Precision, alpha: u32) -> Result<Self> {
        ElementaryModule::new(prec, 0, vec![alpha], Vec::new())
    }

    pub fn cyclic_poly(f: DistinguishedPoly, beta: u32) -> Result<Self> {
        ElementaryModule::new(f.precision(), 0, Vec::new(), vec![PolyPart::new(f, beta)])
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn p_parts(&self) -> &[u32] {
        &self.p_parts
    }

    pub fn poly_parts(&self) -> &[PolyPart] {
        &self.poly_parts
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.p_parts.is_empty() && self.poly_parts.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    /// The torsion submodule: drop the free part.
    pub fn torsion(&self) -> ElementaryModule {
        ElementaryModule { free_rank: 0, ..self.clone() }
    }

    pub fn direct_sum(&self, other: &ElementaryModule) -> Result<ElementaryModule> {
        if self.prec != other.prec {
            return Err(Error::PrecisionMismatch);
        }
        let mut p_parts = self.p_parts.clone();
        p_parts.extend_from_slice(&other.p_parts);
        let mut poly_parts = self.poly_parts.clone();
        poly_parts.extend_from_slice(&other.poly_parts);
        ElementaryModule::new(self.prec, self.free_rank + other.free_rank, p_parts, poly_parts)
    }

    /// Multiset containment of elementary divisors (and free rank).
    pub fn is_summand_of(&self, other: &ElementaryModule) -> bool {
        self.free_rank <= other.free_rank
            && multiset_contains(&other.p_parts, &self.p_parts)
            && multiset_contains(&other.poly_parts, &self.poly_parts)
    }

    /// One human-readable label per summand, e.g. `Λ`, `Λ/3^2`, `Λ/(T + 3)`.
    pub fn summand_labels(&self) -> Vec<String> {
        let p = self.prec.p();
        let mut out = Vec::new();
        for _ in 0..self.free_rank {
            out.push(String::from("Λ"));
        }
        for a in &self.p_parts {
            out.push(if *a == 1 { alloc::format!("Λ/{p}") } else { alloc::format!("Λ/{p}^{a}") });
        }
        for pp in &self.poly_parts {
            out.push(if pp.beta == 1 {
                alloc::format!("Λ/({})", pp.f)
            } else {
                alloc::format!("Λ/({})^{}", pp.f, pp.beta)
            });
        }
        out
    }
}

fn multiset_contains<T: Ord + Clone>(big: &[T], small: &[T]) -> bool {
    let mut remaining = big.to_vec();
    for x in small {
        match remaining.iter().position(|y| y == x) {
            Some(i) => {
                remaining.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

impl fmt::Display for ElementaryModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push(String::from("Λ"));
        } else if self.free_rank > 1 {
            parts.push(alloc::format!("Λ^{}", self.free_rank));
        }
        let labels = self.summand_labels();
        parts.extend(labels.into_iter().skip(self.free_rank as usize));
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// Resultant of `f` and `g` is nonzero modulo `p^N`.
fn coprime_at_precision(f: &DistinguishedPoly, g: &DistinguishedPoly) -> bool {
    let prec = f.precision();
    let ring = prec.ring();
    let (a, b) = (f.coeffs(), g.coeffs());
    let (da, db) = (a.len() - 1, b.len() - 1);
    let n = da + db;
    let mut syl = Matrix::zeros(n, n);
    for i in 0..db {
        for (k, &c) in a.iter().enumerate() {
            syl[(i, i + k)] = c;
        }
    }
    for i in 0..da {
        for (k, &c) in b.iter().enumerate() {
            syl[(db + i, i + k)] = c;
        }
    }
    let total: u32 = smith_valuations(ring, &syl).iter().sum();
    total < ring.exponent()
}

/// `rank`, `μ`, `λ` and the characteristic ideal of an elementary module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IwasawaInvariants {
    pub rank: u32,
    pub mu: u32,
    pub lambda: u32,
    /// Exponent of `p` in a generator of `Char(M)`.
    pub char_p_exponent: u32,
    /// Distinguished part `Π f_j^{β_j}` of the characteristic ideal.
    pub char_poly: DistinguishedPoly,
}

pub fn invariants(module: &ElementaryModule) -> IwasawaInvariants {
    let mu: u32 = module.p_parts.iter().sum();
    let lambda: u32 = module.poly_parts.iter().map(|pp| pp.beta * pp.f.degree() as u32).sum();
    let char_poly = module
        .poly_parts
        .iter()
        .fold(DistinguishedPoly::one(module.prec), |acc, pp| {
            acc.mul(&pp.f.pow(pp.beta)).expect("summands share precision")
        });
    IwasawaInvariants { rank: module.free_rank, mu, lambda, char_p_exponent: mu, char_poly }
}

/// Distinguished generator of the ideal `(f^ι)`.
pub fn iota_poly(f: &DistinguishedPoly) -> Result<DistinguishedPoly> {
    let (_, prepared) = weierstrass_prepare(&iota(&f.to_series()?))?;
    Ok(prepared)
}

/// `M^ι`: every `Λ/f^β` becomes `Λ/(f^ι)^β`; free and `p`-parts are unchanged.
pub fn iota_module(module: &ElementaryModule) -> Result<ElementaryModule> {
    let poly_parts = module
        .poly_parts
        .iter()
        .map(|pp| Ok(PolyPart::new(iota_poly(&pp.f)?, pp.beta)))
        .collect::<Result<Vec<_>>>()?;
    ElementaryModule::new(module.prec, module.free_rank, module.p_parts.clone(), poly_parts)
}

pub(crate) fn check_levels(prec: Precision, m: u32, n: u32) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidModule("level m must be >= 1".into()));
    }
    if m > prec.p_adic() {
        return Err(Error::InsufficientPrecision { needed: m, available: prec.p_adic() });
    }
    let degree = prec.p().checked_pow(n).filter(|&d| (d as usize) < prec.truncation());
    degree.ok_or(Error::InsufficientTruncation {
        needed: prec.p().saturating_pow(n) as usize,
        available: prec.truncation(),
    })
}

/// Matrix of multiplication by `g` on `(Z/p^m)[T]/(modulus)`, in the basis
/// `1, T, …, T^{d-1}`.
pub(crate) fn multiplication_matrix(ring: &PrimePowerRing, g: &[u64], modulus: &[u64]) -> Matrix {
    let d = modulus.len() - 1;
    let mut mat = Matrix::zeros(d, d);
    let mut column = poly_rem_monic(ring, g, modulus);
    for j in 0..d {
        for i in 0..d {
            mat[(i, j)] = column[i];
        }
        // multiply by T and reduce
        let mut shifted = vec![0u64];
        shifted.extend_from_slice(&column);
        column = poly_rem_monic(ring, &shifted, modulus);
    }
    mat
}

/// Cyclic decomposition of `(M/p^m)_{Γ_n} = M/(p^m, ω_n)M`: the exponents
/// `e` of its factors `Z/p^e`.
///
/// `Λ` contributes `p^n` copies of `Z/p^m` and `Λ/p^α` contributes `p^n`
/// copies of `Z/p^{min(α, m)}`. For `Λ/f^β` the group is the cokernel of
/// multiplication by `f^β` on the free `Z/p^m`-module `Λ/(p^m, ω_n)` of rank
/// `p^n`, read off from its Smith form.
pub fn coinvariant_structure(module: &ElementaryModule, m: u32, n: u32) -> Result<Vec<u32>> {
    let width = check_levels(module.prec, m, n)? as usize;
    let ring = module.prec.ring().truncate(m);
    let mut out = Vec::new();
    out.extend(core::iter::repeat_n(m, width * module.free_rank as usize));
    for &alpha in &module.p_parts {
        out.extend(core::iter::repeat_n(alpha.min(m), width));
    }
    if !module.poly_parts.is_empty() {
        let omega = omega_coeffs(&ring, ring.p(), n);
        for pp in &module.poly_parts {
            let f: Vec<u64> = pp.f.coeffs().iter().map(|&c| ring.reduce(c)).collect();
            let g = poly_pow(&ring, &f, pp.beta as u64);
            let mat = multiplication_matrix(&ring, &g, &omega);
            out.extend(cokernel_exponents(&ring, &mat));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `e` with `|(M/p^m)_{Γ_n}| = p^e`.
pub fn coinvariant_size(module: &ElementaryModule, m: u32, n: u32) -> Result<SizeExponent> {
    let s = coinvariant_structure(module, m, n)?;
    Ok(SizeExponent(s.iter().map(|&e| e as i64).sum()))
}

/// `μ(M/p^m) = m·r + Σ min(α_i, m)`.
pub fn mu_mod_p_power(module: &ElementaryModule, m: u32) -> u64 {
    m as u64 * module.free_rank as u64 + module.p_parts.iter().map(|&a| a.min(m) as u64).sum::<u64>()
}

/// `Zp`-rank of `Hom_Λ(M, Λ/f^n)`:
/// `(r·n + Σ_j δ(f_j, f)·min(β_j, n))·deg f`, where `δ(f_j, f) = 1` exactly
/// when `f_j` and `f` generate the same ideal.
///
/// `Hom_Λ(Λ, Λ/f^n) = Λ/f^n` has rank `n·deg f`, so the free part scales
/// with `n`.
pub fn hom_corank(module: &ElementaryModule, f: &DistinguishedPoly, n: u32) -> u64 {
    let matching: u64 = module
        .poly_parts
        .iter()
        .filter(|pp| pp.f == *f)
        .map(|pp| pp.beta.min(n) as u64)
        .sum();
    (module.free_rank as u64 * n as u64 + matching) * f.degree() as u64
}

/// Largest dense system the oracle will solve.
const ORACLE_MAX_DIM: usize = 64;

/// Direct computation of `rank_Zp Hom_Λ(M, Λ/f^n)`, summand by summand.
///
/// A homomorphism out of a cyclic summand `Λ/g` is fixed by the image `x` of
/// `1`, subject to the single constraint `g·x = 0` in `Λ/f^n`. The oracle
/// lifts every coefficient to its symmetric integer representative, builds
/// the matrix of multiplication by `g` on `Q[T]/(f^n)` and takes the
/// dimension of its kernel by fraction-free elimination over the integers.
pub fn hom_corank_oracle(module: &ElementaryModule, f: &DistinguishedPoly, n: u32) -> Result<u64> {
    if f.precision() != module.prec {
        return Err(Error::PrecisionMismatch);
    }
    let ring = &module.prec.ring().clone();
    let target = int_poly_pow(&lift_poly(ring, f.coeffs()), n);
    let dim = target.len() - 1;
    if dim > ORACLE_MAX_DIM {
        return Err(Error::OracleInconclusive(alloc::format!(
            "Λ/f^n has rank {dim}, above the dense-solve limit {ORACLE_MAX_DIM}"
        )));
    }
    let kernel_dim = |g: &[BigInt]| -> u64 {
        let mat = int_multiplication_matrix(g, &target);
        (dim - bareiss_rank(mat)) as u64
    };
    let mut total = 0u64;
    // free summands impose no constraint
    total += module.free_rank as u64 * dim as u64;
    for &alpha in &module.p_parts {
        let g = vec![BigInt::from(ring.p()).pow(alpha)];
        total += kernel_dim(&g);
    }
    for pp in &module.poly_parts {
        let g = int_poly_pow(&lift_poly(ring, pp.f.coeffs()), pp.beta);
        total += kernel_dim(&g);
    }
    Ok(total)
}

fn lift_poly(ring: &PrimePowerRing, coeffs: &[u64]) -> Vec<BigInt> {
    coeffs.iter().map(|&c| BigInt::from(ring.lift_symmetric(c))).collect()
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn int_poly_pow(a: &[BigInt], e: u32) -> Vec<BigInt> {
    (0..e).fold(vec![BigInt::one()], |acc, _| int_poly_mul(&acc, a))
}

fn int_rem_monic(a: &[BigInt], monic: &[BigInt]) -> Vec<BigInt> {
    let d = monic.len() - 1;
    let mut r = a.to_vec();
    for top in (d..r.len()).rev() {
        let c = r[top].clone();
        if c.is_zero() {
            continue;
        }
        for i in 0..=d {
            r[top - d + i] -= &c * &monic[i];
        }
    }
    r.resize(d, BigInt::zero());
    r
}

fn int_multiplication_matrix(g: &[BigInt], modulus: &[BigInt]) -> Vec<Vec<BigInt>> {
    let d = modulus.len() - 1;
    let mut rows = vec![vec![BigInt::zero(); d]; d];
    let mut column = int_rem_monic(g, modulus);
    for j in 0..d {
        for i in 0..d {
            rows[i][j] = column[i].clone();
        }
        let mut shifted = vec![BigInt::zero()];
        shifted.extend_from_slice(&column);
        column = int_rem_monic(&shifted, modulus);
    }
    rows
}

/// Rank over `Q` by fraction-free (Bareiss) elimination.
fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = (&a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Torsion parts agree as multisets of elementary divisors.
///
/// This is strictly finer than equality of characteristic ideals:
/// `Λ/f²` and `Λ/f ⊕ Λ/f` share `Char` but are not pseudo-isomorphic.
pub fn pseudo_isomorphic(a: &ElementaryModule, b: &ElementaryModule) -> bool {
    a.prec == b.prec && a.p_parts == b.p_parts && a.poly_parts == b.poly_parts
}

/// Test ranges for [`compare_modules`].
#[derive(Clone, Debug)]
pub struct ComparisonRanges {
    /// `p`-power levels `m`.
    pub levels: Vec<u32>,
    /// Tower levels `n` for the coinvariant sizes.
    pub tower: Vec<u32>,
    /// Powers `n` in `Λ/f^n` for the corank comparison.
    pub powers: Vec<u32>,
    /// Weierstrass polynomials `f`, declared irreducible by the caller.
    pub polys: Vec<DistinguishedPoly>,
}

/// Coinvariant-size gaps `e_A(m, n) - e_B(m, n)` at one level `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundednessCheck {
    pub m: u32,
    /// `(n, gap)` in increasing `n`.
    pub gaps: Vec<(u32, i64)>,
    /// The gap between the free and `p`-power parts is the same at every
    /// tested tower level.
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorankMismatch {
    pub f: DistinguishedPoly,
    pub n: u32,
    pub left: u64,
    pub right: u64,
}

/// Outcome of [`compare_modules`]. Hypotheses and conclusion are evaluated
/// independently; none is inferred from another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonVerdict {
    pub boundedness: Vec<BoundednessCheck>,
    pub corank_mismatches: Vec<CorankMismatch>,
    pub ranks_equal: bool,
    pub torsion_pseudo_isomorphic: bool,
}

impl ComparisonVerdict {
    /// Hypothesis (1): coinvariant-size ratios bounded in `n`, for every `m`.
    pub fn bounded_holds(&self) -> bool {
        self.boundedness.iter().all(|b| b.stable)
    }

    /// Hypothesis (2): equal coranks for every tested `f` and power.
    pub fn corank_holds(&self) -> bool {
        self.corank_mismatches.is_empty()
    }

    pub fn conclusion_holds(&self) -> bool {
        self.ranks_equal && self.torsion_pseudo_isomorphic
    }

    pub fn first_unbounded(&self) -> Option<&BoundednessCheck> {
        self.boundedness.iter().find(|b| !b.stable)
    }

    pub fn first_corank_mismatch(&self) -> Option<&CorankMismatch> {
        self.corank_mismatches.first()
    }
}

/// Check both comparison hypotheses and the conclusion on finite ranges.
///
/// A `Λ/f^β` summand has at most `p^{mβ deg f}` coinvariants at every `n`,
/// so the gap is bounded in `n` exactly when the gap between the free and
/// `p`-power parts is constant; that part is measured at every tested tower
/// level. The reported gaps are those of the full modules.
pub fn compare_modules(
    a: &ElementaryModule,
    b: &ElementaryModule,
    ranges: &ComparisonRanges,
) -> Result<ComparisonVerdict> {
    if a.prec != b.prec {
        return Err(Error::PrecisionMismatch);
    }
    let mut tower = ranges.tower.clone();
    tower.sort_unstable();
    tower.dedup();

    let a_lin = ElementaryModule { poly_parts: Vec::new(), ..a.clone() };
    let b_lin = ElementaryModule { poly_parts: Vec::new(), ..b.clone() };
    let mut boundedness = Vec::new();
    for &m in &ranges.levels {
        let gaps = tower
            .iter()
            .map(|&n| Ok((n, (coinvariant_size(a, m, n)? - coinvariant_size(b, m, n)?).0)))
            .collect::<Result<Vec<_>>>()?;
        let linear = tower
            .iter()
            .map(|&n| Ok((coinvariant_size(&a_lin, m, n)? - coinvariant_size(&b_lin, m, n)?).0))
            .collect::<Result<Vec<_>>>()?;
        let stable = linear.windows(2).all(|w| w[0] == w[1]);
        boundedness.push(BoundednessCheck { m, gaps, stable });
    }

    let mut corank_mismatches = Vec::new();
    for f in &ranges.polys {
        for &n in &ranges.powers {
            let (left, right) = (hom_corank(a, f, n), hom_corank(b, f, n));
            if left != right {
                corank_mismatches.push(CorankMismatch { f: f.clone(), n, left, right });
            }
        }
    }

    Ok(ComparisonVerdict {
        boundedness,
        corank_mismatches,
        ranks_equal: a.free_rank == b.free_rank,
        torsion_pseudo_isomorphic: pseudo_isomorphic(&a.torsion(), &b.torsion()),
    })
}
