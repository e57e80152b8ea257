//! Characters of a cyclic group `G` of order `g | p - 1`, the idempotents
//! `e_η`, eigenspace-graded `Λ[G]`-modules and twists.
//!
//! Character values are Teichmüller lifts, so they live in `Z/p^N` itself.
//! A fixed generator `σ₀` of `G` maps to `ζ = ω(r)^{(p-1)/g}` where `r` is the
//! least primitive root modulo `p`; the character of index `k` sends `σ₀` to
//! `ζ^k`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::lambda_modules::{check_levels, iota_module, iota_poly, multiplication_matrix, ElementaryModule, SizeExponent};
use crate::matrix::{cokernel_exponents, Matrix};
use crate::padic_series::{omega_coeffs, poly_pow, DistinguishedPoly, Precision};
use crate::residue::PrimePowerRing;

/// Least primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    let ring = PrimePowerRing::new(p, 1).expect("p prime");
    let mut factors = Vec::new();
    let mut rest = p - 1;
    let mut q = 2;
    while q * q <= rest {
        if rest.is_multiple_of(q) {
            factors.push(q);
            while rest.is_multiple_of(q) {
                rest /= q;
            }
        }
        q += 1;
    }
    if rest > 1 {
        factors.push(rest);
    }
    (1..p)
        .find(|&r| factors.iter().all(|&q| ring.pow(r, (p - 1) / q) != 1))
        .expect("cyclic unit group")
}

/// The `(p-1)`-th root of unity in `Z/p^N` congruent to `a` modulo `p`.
pub fn teichmuller(ring: &PrimePowerRing, a: u64) -> Result<u64> {
    let mut x = ring.reduce(a);
    if !ring.is_unit(x) {
        return Err(Error::NotAUnit);
    }
    loop {
        let next = ring.pow(x, ring.p());
        if next == x {
            return Ok(x);
        }
        x = next;
    }
}

fn check_order(prec: Precision, order: u32) -> Result<()> {
    if order == 0 || !(prec.p() - 1).is_multiple_of(order as u64) {
        return Err(Error::UnsupportedGroup { order, p: prec.p() });
    }
    Ok(())
}

/// A character `η` of `G = <σ₀>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    prec: Precision,
    order: u32,
    index: u32,
    values: Vec<u64>,
}

impl Character {
    /// The character sending `σ₀` to `ζ^index`; the index is read modulo `order`.
    pub fn new(prec: Precision, order: u32, index: i64) -> Result<Self> {
        check_order(prec, order)?;
        let ring = prec.ring();
        let p = prec.p();
        let zeta = ring.pow(teichmuller(ring, primitive_root(p))?, (p - 1) / order as u64);
        let index = index.rem_euclid(order as i64) as u32;
        let step = ring.pow(zeta, index as u64);
        let mut values = Vec::with_capacity(order as usize);
        let mut x = 1;
        for _ in 0..order {
            values.push(x);
            x = ring.mul(x, step);
        }
        Ok(Character { prec, order, index, values })
    }

    pub fn trivial(prec: Precision, order: u32) -> Result<Self> {
        Character::new(prec, order, 0)
    }

    /// Every character of `G`, by index.
    pub fn all(prec: Precision, order: u32) -> Result<Vec<Character>> {
        (0..order as i64).map(|k| Character::new(prec, order, k)).collect()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// `η(σ₀^j)` for `j` in `[0, g)`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, j: i64) -> u64 {
        self.values[j.rem_euclid(self.order as i64) as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    /// `η̄`, the inverse character.
    pub fn contragredient(&self) -> Character {
        Character::new(self.prec, self.order, -(self.index as i64)).expect("order already checked")
    }

    pub fn mul(&self, other: &Character) -> Result<Character> {
        if self.order != other.order {
            return Err(Error::GroupMismatch { expected: self.order, found: other.order });
        }
        Character::new(self.prec, self.order, self.index as i64 + other.index as i64)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eta={} (order {})", self.index, self.order)
    }
}

/// An element `Σ c_j σ₀^j` of `(Z/p^N)[G]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    prec: Precision,
    coeffs: Vec<u64>,
}

impl GroupRingElement {
    pub fn zero(prec: Precision, order: u32) -> Self {
        GroupRingElement { prec, coeffs: vec![0; order as usize] }
    }

    pub fn one(prec: Precision, order: u32) -> Self {
        let mut e = GroupRingElement::zero(prec, order);
        e.coeffs[0] = 1;
        e
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        let ring = self.prec.ring();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| ring.add(a, b)).collect();
        GroupRingElement { prec: self.prec, coeffs }
    }

    pub fn mul(&self, other: &GroupRingElement) -> GroupRingElement {
        let ring = self.prec.ring();
        let g = self.coeffs.len();
        let mut coeffs = vec![0; g];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = (i + j) % g;
                coeffs[k] = ring.add(coeffs[k], ring.mul(a, b));
            }
        }
        GroupRingElement { prec: self.prec, coeffs }
    }

    /// The scalar by which this element acts on the `χ`-eigenspace.
    pub fn act_on(&self, chi: &Character) -> u64 {
        let ring = self.prec.ring();
        self.coeffs
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &c)| ring.add(acc, ring.mul(c, chi.value(j as i64))))
    }
}

/// `e_η = g⁻¹ Σ_σ η(σ) σ⁻¹`: the coefficient of `σ₀^i` is `g⁻¹ η(σ₀^{-i})`.
pub fn idempotent(eta: &Character) -> Result<GroupRingElement> {
    check_order(eta.prec, eta.order)?;
    let ring = eta.prec.ring();
    let g_inv = ring.inv(ring.reduce(eta.order as u64)).ok_or(Error::UnsupportedGroup { order: eta.order, p: ring.p() })?;
    let coeffs = (0..eta.order as i64).map(|i| ring.mul(g_inv, eta.value(-i))).collect();
    Ok(GroupRingElement { prec: eta.prec, coeffs })
}

/// A `Λ[G]`-module stored by eigenspaces: slot `k` holds `e_η M` for the
/// character of index `k`. Absent slots are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    prec: Precision,
    order: u32,
    slots: BTreeMap<u32, ElementaryModule>,
}

impl GModule {
    pub fn new(prec: Precision, order: u32, slots: BTreeMap<u32, ElementaryModule>) -> Result<Self> {
        check_order(prec, order)?;
        let mut kept = BTreeMap::new();
        for (k, module) in slots {
            if k >= order {
                return Err(Error::InvalidModule(alloc::format!("character index {k} out of range for order {order}")));
            }
            if module.precision() != prec {
                return Err(Error::PrecisionMismatch);
            }
            if !module.is_zero() {
                kept.insert(k, module);
            }
        }
        Ok(GModule { prec, order, slots: kept })
    }

    pub fn zero(prec: Precision, order: u32) -> Result<Self> {
        GModule::new(prec, order, BTreeMap::new())
    }

    /// The same module in every slot, e.g. `Λ[G] = ⊕_χ Λ` for `module = Λ`.
    pub fn regular(module: &ElementaryModule, order: u32) -> Result<Self> {
        let slots = (0..order).map(|k| (k, module.clone())).collect();
        GModule::new(module.precision(), order, slots)
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Nonzero slots in index order.
    pub fn slots(&self) -> impl Iterator<Item = (u32, &ElementaryModule)> {
        self.slots.iter().map(|(&k, m)| (k, m))
    }

    pub fn slot(&self, index: u32) -> ElementaryModule {
        self.slots.get(&(index % self.order)).cloned().unwrap_or_else(|| ElementaryModule::zero(self.prec))
    }

    pub fn with_slot(&self, index: u32, module: ElementaryModule) -> Result<GModule> {
        let mut slots = self.slots.clone();
        slots.insert(index, module);
        GModule::new(self.prec, self.order, slots)
    }

    pub fn is_zero(&self) -> bool {
        self.slots.is_empty()
    }

    /// Slot-wise `ι`; eigenspace labels are untouched.
    pub fn iota(&self) -> Result<GModule> {
        let slots = self
            .slots
            .iter()
            .map(|(&k, m)| Ok((k, iota_module(m)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        GModule::new(self.prec, self.order, slots)
    }

    fn check_character(&self, eta: &Character) -> Result<()> {
        if eta.order != self.order {
            return Err(Error::GroupMismatch { expected: self.order, found: eta.order });
        }
        Ok(())
    }
}

impl fmt::Display for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slots.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, m) in &self.slots {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{k}: {m}")?;
        }
        Ok(())
    }
}

/// `e_η M`.
pub fn eigenspace(gm: &GModule, eta: &Character) -> Result<ElementaryModule> {
    gm.check_character(eta)?;
    Ok(gm.slot(eta.index))
}

/// `M(η) = M ⊗ Zp(η)`: `σ` acts on `x ⊗ 1` by `η(σ)·σx`, so the old
/// `χ`-slot becomes the `χη`-slot, i.e. `e_χ M(η) = e_{χη̄} M`.
pub fn twist(gm: &GModule, eta: &Character) -> Result<GModule> {
    gm.check_character(eta)?;
    let slots = gm.slots.iter().map(|(&k, m)| ((k + eta.index) % gm.order, m.clone())).collect();
    GModule::new(gm.prec, gm.order, slots)
}

/// Component-wise elementary-divisor containment `a_χ ⊆ b_χ`.
pub fn componentwise_contained(a: &GModule, b: &GModule) -> bool {
    a.order == b.order && (0..a.order).all(|k| a.slot(k).is_summand_of(&b.slot(k)))
}

/// How [`twist_identity_check_with`] evaluates the left-hand sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Faithful,
    /// Uses `η̄` wherever `η` belongs. A negative control for harnesses.
    Corrupted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TwistItem {
    /// `e_η(M_f) = (e_η M)_f`.
    TensorCommutes,
    /// `e_η (M^∨)_f` against `e_η̄ M_{f^ι}`.
    Duality,
    /// `e_η M = (M(η̄))^G`.
    FixedPart,
}

impl fmt::Display for TwistItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwistItem::TensorCommutes => "(1)",
            TwistItem::Duality => "(2)",
            TwistItem::FixedPart => "(4)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistLine {
    pub item: TwistItem,
    pub left: SizeExponent,
    pub right: SizeExponent,
}

impl TwistLine {
    pub fn pass(&self) -> bool {
        self.left == self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    pub m: u32,
    pub n: u32,
    pub lines: Vec<TwistLine>,
    /// Slot `η` equals the trivial slot of `M(η̄)` as elementary modules.
    pub fixed_part_matches: bool,
}

impl TwistReport {
    pub fn pass(&self) -> bool {
        self.fixed_part_matches && self.lines.iter().all(TwistLine::pass)
    }
}

impl fmt::Display for TwistReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            let verdict = if line.pass() { "OK" } else { "FAIL" };
            writeln!(f, "{} m={} n={} {} == {} : {verdict}", line.item, self.m, self.n, line.left, line.right)?;
        }
        let verdict = if self.fixed_part_matches { "OK" } else { "FAIL" };
        write!(f, "(4) fixed part equals eigenspace : {verdict}")
    }
}

enum Cyclic<'a> {
    Free,
    PPower(u32),
    Poly(&'a DistinguishedPoly, u32),
}

fn cyclic_summands(module: &ElementaryModule) -> Vec<Cyclic<'_>> {
    let mut out: Vec<Cyclic<'_>> = (0..module.free_rank()).map(|_| Cyclic::Free).collect();
    out.extend(module.p_parts().iter().map(|&a| Cyclic::PPower(a)));
    out.extend(module.poly_parts().iter().map(|pp| Cyclic::Poly(&pp.f, pp.beta)));
    out
}

fn reduce_poly(ring: &PrimePowerRing, coeffs: &[u64]) -> Vec<u64> {
    coeffs.iter().map(|&c| ring.reduce(c)).collect()
}

/// Relations of `Λ/(h, p^m, ω_n)` on the basis `1, …, T^{p^n - 1}`, where
/// `Λ/h` is the summand.
fn summand_relations(ring: &PrimePowerRing, omega: &[u64], s: &Cyclic<'_>) -> Matrix {
    let w = omega.len() - 1;
    match s {
        Cyclic::Free => Matrix::zeros(w, 0),
        Cyclic::PPower(a) => Matrix::scalar(w, ring.p_power(*a)),
        Cyclic::Poly(f, beta) => {
            let g = poly_pow(ring, &reduce_poly(ring, f.coeffs()), *beta as u64);
            multiplication_matrix(ring, &g, omega)
        }
    }
}

fn coker_exp(ring: &PrimePowerRing, a: &Matrix) -> i64 {
    cokernel_exponents(ring, a).iter().map(|&e| e as i64).sum()
}

fn poly_at_matrix(ring: &PrimePowerRing, coeffs: &[u64], x: &Matrix) -> Matrix {
    let d = x.rows();
    let mut acc = Matrix::zeros(d, d);
    for &c in coeffs.iter().rev() {
        acc = acc.mul(ring, x);
        for i in 0..d {
            acc[(i, i)] = ring.add(acc[(i, i)], ring.reduce(c));
        }
    }
    acc
}

/// Check the twist identities (1), (2) and (4) on finite quotients at
/// level `(m, n)`.
///
/// Each cyclic summand `Λ/h` in slot `χ` is replaced by a finite
/// `Z/p^m`-module on which `σ₀` acts by `χ(σ₀)` and `γ = 1 + T` acts by a
/// companion matrix.
///
/// * (1) The image of the idempotent `e_η`, evaluated as a scalar on every
///   summand of `M/(f, p^m, ω_n)`, is compared with `(e_η M)/(f, p^m, ω_n)`.
/// * (2) For `R = Λ/(p^m, ω_n)` (or `Λ/(p^m, f_j^β)` for polynomial
///   summands) with `γ`-matrix `C`, the dual `R^∨` carries `γ ↦ (C⁻¹)ᵀ` and
///   lands in slot `χ̄`. The size of `e_η (M^∨)/f` is compared with that of
///   `e_η̄ M/f^ι`, where `f^ι` is the distinguished generator of `(ι f)`.
/// * (4) The `G`-fixed part of `M(η̄)/(p^m, ω_n)`, computed as the kernel of
///   `σ₀ - 1`, is compared with `e_η M/(p^m, ω_n)`; the report also records
///   whether the trivial slot of `M(η̄)` is `e_η M` itself.
pub fn twist_identity_check(gm: &GModule, eta: &Character, f: &DistinguishedPoly, m: u32, n: u32) -> Result<TwistReport> {
    twist_identity_check_with(gm, eta, f, m, n, Evaluation::Faithful)
}

pub fn twist_identity_check_with(
    gm: &GModule,
    eta: &Character,
    f: &DistinguishedPoly,
    m: u32,
    n: u32,
    evaluation: Evaluation,
) -> Result<TwistReport> {
    gm.check_character(eta)?;
    if f.precision() != gm.prec {
        return Err(Error::PrecisionMismatch);
    }
    check_levels(gm.prec, m, n)?;
    let prec = gm.prec;
    let ring = prec.ring().truncate(m);
    let p = prec.p();
    let omega = omega_coeffs(&ring, p, n);
    let w = omega.len() - 1;
    let eta_bar = eta.contragredient();
    let (used, used_bar) = match evaluation {
        Evaluation::Faithful => (eta.clone(), eta_bar.clone()),
        Evaluation::Corrupted => (eta_bar.clone(), eta.clone()),
    };
    let characters = Character::all(prec, gm.order)?;
    let fmat = multiplication_matrix(&ring, &reduce_poly(&ring, f.coeffs()), &omega);

    // (1)
    let e = idempotent(&used)?;
    let mut left = 0;
    let mut right = 0;
    for (k, module) in gm.slots() {
        let scalar = e.act_on(&characters[k as usize]);
        for s in cyclic_summands(module) {
            let rel = summand_relations(&ring, &omega, &s).hconcat(&fmat);
            let whole = coker_exp(&ring, &rel);
            left += whole - coker_exp(&ring, &rel.hconcat(&Matrix::scalar(w, scalar)));
            if k == eta.index {
                right += whole;
            }
        }
    }
    let mut lines = vec![TwistLine { item: TwistItem::TensorCommutes, left: SizeExponent(left), right: SizeExponent(right) }];

    // (2)
    let f_iota = iota_poly(f)?;
    let (mut left, mut right) = (0, 0);
    for (k, module) in gm.slots() {
        let dual_slot = characters[k as usize].contragredient().index;
        let to_left = match evaluation {
            Evaluation::Faithful => dual_slot == eta.index,
            Evaluation::Corrupted => k == eta.index,
        };
        let to_right = k == eta_bar.index;
        if !to_left && !to_right {
            continue;
        }
        for s in cyclic_summands(module) {
            let (r, modulus) = match s {
                Cyclic::Free => (ring, omega.clone()),
                Cyclic::PPower(a) => {
                    let r = ring.truncate(a.min(m));
                    let om = omega_coeffs(&r, p, n);
                    (r, om)
                }
                Cyclic::Poly(g, beta) => {
                    let red = reduce_poly(&ring, g.coeffs());
                    (ring, poly_pow(&ring, &red, beta as u64))
                }
            };
            let d = modulus.len() - 1;
            let needed = d * r.exponent() as usize;
            if needed > prec.truncation() {
                return Err(Error::InsufficientTruncation { needed, available: prec.truncation() });
            }
            let gamma = multiplication_matrix(&r, &[1, 1], &modulus);
            if to_left {
                let inv = gamma.inverse(&r).expect("1 + T is a unit");
                let t_dual = inv.sub_identity(&r).transpose();
                left += coker_exp(&r, &poly_at_matrix(&r, f.coeffs(), &t_dual));
            }
            if to_right {
                let t = gamma.sub_identity(&r);
                right += coker_exp(&r, &poly_at_matrix(&r, f_iota.coeffs(), &t));
            }
        }
    }
    lines.push(TwistLine { item: TwistItem::Duality, left: SizeExponent(left), right: SizeExponent(right) });

    // (4)
    let twisted = twist(gm, &used_bar)?;
    let (mut left, mut right) = (0, 0);
    for (k, module) in twisted.slots() {
        let shift = ring.sub(characters[k as usize].value(1), 1);
        for s in cyclic_summands(module) {
            let rel = summand_relations(&ring, &omega, &s);
            left += coker_exp(&ring, &rel.hconcat(&Matrix::scalar(w, shift)));
        }
    }
    for s in cyclic_summands(&gm.slot(eta.index)) {
        right += coker_exp(&ring, &summand_relations(&ring, &omega, &s));
    }
    lines.push(TwistLine { item: TwistItem::FixedPart, left: SizeExponent(left), right: SizeExponent(right) });
    let fixed_part_matches = twisted.slot(0) == gm.slot(eta.index);

    Ok(TwistReport { m, n, lines, fixed_part_matches })
}
