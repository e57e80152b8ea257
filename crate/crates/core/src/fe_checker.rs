//! Synthetic Selmer data and the checks run against them: hypotheses on the
//! primes above `p`, the algebraic functional equation between the `η` and
//! `η̄` eigenspaces, the vanishing equivalence, and the boundedness of the
//! Poitou–Tate size ratio.
//!
//! `ι` acts on `Λ` only: the functional equation pairs slot `η` with `ι` of
//! slot `η̄`, and eigenspace labels are never inverted. Some authors use the
//! involution of `Λ[G]` that also inverts `G`; that variant is not modelled.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::duality_counting::{global_euler_exponent, local_ratio, LocalDatum, LocalKind, Sign, TorsionExponents};
use crate::error::{Error, Result};
use crate::group_eigenspaces::GModule;
use crate::lambda_modules::{iota_module, pseudo_isomorphic};
use crate::padic_series::{DistinguishedPoly, Precision};

/// One prime of `F`, above `p` unless `kind` is `Away`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrimeDatum {
    pub id: String,
    pub kind: LocalKind,
    /// `[F_v : Qp]`.
    pub local_degree: u32,
    pub sign: Option<Sign>,
    /// Trace of Frobenius at the prime of the base field below `v`.
    pub a_u: Option<i64>,
    pub unramified_in_f: Option<bool>,
    /// `[F'_u : Qp]` for the prime `u` of the base field below `v`.
    pub base_local_degree: u32,
    /// Upper bounds for the ordinary torsion exponents.
    pub torsion_caps: Option<TorsionExponents>,
}

impl PrimeDatum {
    pub fn supersingular(id: &str, local_degree: u32, sign: Sign) -> Self {
        PrimeDatum {
            id: id.into(),
            kind: LocalKind::Supersingular,
            local_degree,
            sign: Some(sign),
            a_u: Some(0),
            unramified_in_f: Some(true),
            base_local_degree: 1,
            torsion_caps: None,
        }
    }

    pub fn ordinary(id: &str, local_degree: u32, caps: Option<TorsionExponents>) -> Self {
        PrimeDatum {
            id: id.into(),
            kind: LocalKind::Ordinary,
            local_degree,
            sign: None,
            a_u: None,
            unramified_in_f: None,
            base_local_degree: 1,
            torsion_caps: caps,
        }
    }

    pub fn away(id: &str) -> Self {
        PrimeDatum {
            id: id.into(),
            kind: LocalKind::Away,
            local_degree: 1,
            sign: None,
            a_u: None,
            unramified_in_f: None,
            base_local_degree: 1,
            torsion_caps: None,
        }
    }

    fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let id = &self.id;
        if self.local_degree == 0 {
            out.push(alloc::format!("prime {id}: local degree must be >= 1"));
        }
        match self.kind {
            LocalKind::Supersingular => {
                if self.sign.is_none() {
                    out.push(alloc::format!("prime {id}: supersingular prime needs a sign + or -"));
                }
                if self.base_local_degree != 1 {
                    out.push(alloc::format!(
                        "(S2)(a) violated: [F'_u : Qp] = {} at prime {id}",
                        self.base_local_degree
                    ));
                }
                match self.a_u {
                    Some(0) => {}
                    Some(a) => out.push(alloc::format!("(S2)(b) violated: a_u = {a} at prime {id}")),
                    None => out.push(alloc::format!("(S2)(b) violated: a_u missing at prime {id}")),
                }
                if self.unramified_in_f != Some(true) {
                    out.push(alloc::format!("(S2)(c) violated: prime {id} is not unramified in F/F'"));
                }
            }
            LocalKind::Ordinary | LocalKind::Away => {
                if self.sign.is_some() {
                    out.push(alloc::format!("prime {id}: sign given at a non-supersingular prime"));
                }
            }
        }
        if self.kind != LocalKind::Ordinary && self.torsion_caps.is_some() {
            out.push(alloc::format!("prime {id}: torsion caps given at a non-ordinary prime"));
        }
        out
    }
}

/// Every violated condition on the field degree and the list of primes.
pub fn prime_violations(field_degree: u32, primes: &[PrimeDatum]) -> Vec<String> {
    let mut errors = Vec::new();
    if field_degree == 0 {
        errors.push("[F:Q] must be >= 1".into());
    }
    for prime in primes {
        errors.extend(prime.violations());
    }
    let above_p: u32 = primes.iter().filter(|v| v.kind != LocalKind::Away).map(|v| v.local_degree).sum();
    if above_p != field_degree {
        errors.push(alloc::format!(
            "local degrees above p sum to {above_p}, expected [F:Q] = {field_degree}"
        ));
    }
    errors
}

/// A synthetic Selmer datum: the primes of `F` and the eigenspaces of the
/// dual signed Selmer group over the cyclotomic tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelmerDatum {
    field_degree: u32,
    primes: Vec<PrimeDatum>,
    x: GModule,
    assume_torsion: bool,
}

impl SelmerDatum {
    /// Validate and build. Every violated condition is listed in the error.
    ///
    /// The local degrees of the primes above `p` must add up to `[F : Q]`.
    /// With `assume_torsion`, every eigenspace must have rank 0.
    pub fn new(field_degree: u32, primes: Vec<PrimeDatum>, x: GModule, assume_torsion: bool) -> Result<Self> {
        let mut errors = prime_violations(field_degree, &primes);
        if assume_torsion {
            for (k, slot) in x.slots() {
                if !slot.is_torsion() {
                    errors.push(alloc::format!(
                        "torsion assumed but eigenspace {k} has rank {}",
                        slot.free_rank()
                    ));
                }
            }
        }
        if errors.is_empty() {
            Ok(SelmerDatum { field_degree, primes, x, assume_torsion })
        } else {
            Err(Error::InvalidDatum(errors))
        }
    }

    pub fn precision(&self) -> Precision {
        self.x.precision()
    }

    pub fn group_order(&self) -> u32 {
        self.x.order()
    }

    pub fn field_degree(&self) -> u32 {
        self.field_degree
    }

    pub fn primes(&self) -> &[PrimeDatum] {
        &self.primes
    }

    pub fn x(&self) -> &GModule {
        &self.x
    }

    pub fn assumes_torsion(&self) -> bool {
        self.assume_torsion
    }

    pub fn with_x(&self, x: GModule) -> Result<SelmerDatum> {
        SelmerDatum::new(self.field_degree, self.primes.clone(), x, self.assume_torsion)
    }

    /// `η̄`-index of a character index.
    pub fn contragredient_index(&self, index: u32) -> u32 {
        let g = self.group_order();
        (g - index % g) % g
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HypothesisLine {
    /// `(S1)`, `(S2)(a)`, `(S2)(b)`, `(S2)(c)` or `4∤d`.
    pub hypothesis: String,
    pub prime: Option<String>,
    pub pass: bool,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HypothesisReport {
    pub lines: Vec<HypothesisLine>,
}

impl HypothesisReport {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &HypothesisLine> {
        self.lines.iter().filter(|l| !l.pass)
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{} {} : {}", line.hypothesis, line.message, if line.pass { "OK" } else { "FAIL" })?;
        }
        Ok(())
    }
}

/// One line per hypothesis: `(S1)`, `(S2)(a-c)` at each supersingular prime,
/// and `4 ∤ [F_v : Qp]` at each `+`-signed supersingular prime.
pub fn hypothesis_check(datum: &SelmerDatum) -> HypothesisReport {
    let mut lines = Vec::new();
    let ss: Vec<&PrimeDatum> = datum.primes.iter().filter(|v| v.kind == LocalKind::Supersingular).collect();
    lines.push(HypothesisLine {
        hypothesis: "(S1)".into(),
        prime: None,
        pass: !ss.is_empty(),
        message: if ss.is_empty() {
            "no supersingular prime above p".into()
        } else {
            alloc::format!("{} supersingular prime(s) above p", ss.len())
        },
    });
    for v in &ss {
        let id = Some(v.id.clone());
        lines.push(HypothesisLine {
            hypothesis: "(S2)(a)".into(),
            prime: id.clone(),
            pass: v.base_local_degree == 1,
            message: alloc::format!("[F'_u : Qp] = {} below {}", v.base_local_degree, v.id),
        });
        lines.push(HypothesisLine {
            hypothesis: "(S2)(b)".into(),
            prime: id.clone(),
            pass: v.a_u == Some(0),
            message: match v.a_u {
                Some(a) => alloc::format!("a_u = {a} below {}", v.id),
                None => alloc::format!("a_u missing below {}", v.id),
            },
        });
        lines.push(HypothesisLine {
            hypothesis: "(S2)(c)".into(),
            prime: id.clone(),
            pass: v.unramified_in_f == Some(true),
            message: alloc::format!("{} unramified in F/F'", v.id),
        });
        if v.sign == Some(Sign::Plus) {
            let pass = v.local_degree % 4 != 0;
            lines.push(HypothesisLine {
                hypothesis: "4∤d".into(),
                prime: id,
                pass,
                message: if pass {
                    alloc::format!("4 ∤ d at +-signed prime {} (d = {})", v.id, v.local_degree)
                } else {
                    alloc::format!("4 | d at +-signed prime {} (d = {})", v.id, v.local_degree)
                },
            });
        }
    }
    HypothesisReport { lines }
}

/// Outcome for one character `η`: slot `η` against `ι` of slot `η̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CharacterRecord {
    pub eta: u32,
    pub eta_bar: u32,
    pub rank_eta: u32,
    pub rank_eta_bar_iota: u32,
    pub ranks_equal: bool,
    pub torsion_pseudo_iso: bool,
}

impl CharacterRecord {
    pub fn pass(&self) -> bool {
        self.ranks_equal && self.torsion_pseudo_iso
    }
}

impl fmt::Display for CharacterRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "eta={} rank {}={} {} torsion {}",
            self.eta,
            self.rank_eta,
            self.rank_eta_bar_iota,
            if self.ranks_equal { "OK" } else { "FAIL" },
            if self.torsion_pseudo_iso { "OK" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FeVerdict {
    pub records: Vec<CharacterRecord>,
    pub pass: bool,
    pub hypotheses: HypothesisReport,
}

/// Compare `e_η X` with `(e_η̄ X)^ι` for every character. When a hypothesis
/// fails the per-character checks are skipped and the verdict fails.
pub fn functional_equation_check(datum: &SelmerDatum) -> Result<FeVerdict> {
    let hypotheses = hypothesis_check(datum);
    if !hypotheses.pass() {
        return Ok(FeVerdict { records: Vec::new(), pass: false, hypotheses });
    }
    let mut records = Vec::new();
    for eta in 0..datum.group_order() {
        let eta_bar = datum.contragredient_index(eta);
        let a = datum.x.slot(eta);
        let b = iota_module(&datum.x.slot(eta_bar))?;
        records.push(CharacterRecord {
            eta,
            eta_bar,
            rank_eta: a.free_rank(),
            rank_eta_bar_iota: b.free_rank(),
            ranks_equal: a.free_rank() == b.free_rank(),
            torsion_pseudo_iso: pseudo_isomorphic(&a.torsion(), &b.torsion()),
        });
    }
    let pass = records.iter().all(CharacterRecord::pass);
    Ok(FeVerdict { records, pass, hypotheses })
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Vanishing {
    Consistent,
    /// Slot `η` vanishes but slot `η̄` does not; the summands that should
    /// not be there.
    Inconsistent { offending: Vec<String> },
    /// Slot `η` is nonzero, so the equivalence says nothing.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VanishingVerdict {
    pub eta: u32,
    pub eta_bar: u32,
    pub vanishing: Vanishing,
    /// Slot `η` is torsion exactly when slot `η̄` is.
    pub torsion_equivalent: bool,
}

impl fmt::Display for VanishingVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eta={} eta_bar={} ", self.eta, self.eta_bar)?;
        match &self.vanishing {
            Vanishing::Consistent => f.write_str("vanishing consistent")?,
            Vanishing::NotApplicable => f.write_str("vanishing not applicable")?,
            Vanishing::Inconsistent { offending } => write!(f, "vanishing INCONSISTENT: {}", offending.join(", "))?,
        }
        write!(f, " torsion {}", if self.torsion_equivalent { "OK" } else { "FAIL" })
    }
}

/// If `e_η X = 0` then `e_η̄ X` has rank 0 and trivial characteristic ideal.
/// An elementary module with those invariants is zero, since `X` has no
/// nonzero finite submodules; any summand left in slot `η̄` is named.
pub fn vanishing_equivalence(datum: &SelmerDatum, eta_index: u32) -> VanishingVerdict {
    let eta = eta_index % datum.group_order();
    let eta_bar = datum.contragredient_index(eta);
    let a = datum.x.slot(eta);
    let b = datum.x.slot(eta_bar);
    let torsion_equivalent = a.is_torsion() == b.is_torsion();
    let vanishing = if !a.is_zero() {
        Vanishing::NotApplicable
    } else if b.is_zero() {
        Vanishing::Consistent
    } else {
        let offending = b
            .summand_labels()
            .into_iter()
            .enumerate()
            .map(|(i, label)| {
                if i < b.free_rank() as usize {
                    alloc::format!("{label} in eta={eta_bar} (positive rank)")
                } else {
                    alloc::format!("{label} in eta={eta_bar} (nontrivial characteristic ideal)")
                }
            })
            .collect();
        Vanishing::Inconsistent { offending }
    };
    VanishingVerdict { eta, eta_bar, vanishing, torsion_equivalent }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PoitouTatePoint {
    pub m: u32,
    pub n: u32,
    /// `Σ_v (a + b - c)` over ordinary primes.
    pub exponent: i64,
    /// Global Euler factor plus every local ratio; equals `exponent` when
    /// the Euler parts cancel.
    pub full_exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PoitouTateReport {
    pub points: Vec<PoitouTatePoint>,
    /// `Σ_v (a_cap + b_cap)`.
    pub bound: i64,
    pub pass: bool,
}

/// Size-ratio exponent of the Poitou–Tate sequence at each `(m, n)`.
///
/// At an ordinary prime with caps `(a, b, c)` the torsion groups at level
/// `p^m` have exponents `min(a, m)`, `min(b, m)` and `min(c, m)`. The local
/// Euler parts `-m·[K_n:Qp]·deg f` add up to minus the global factor
/// `[F_n:Q]·m·deg f`, leaving only the torsion terms, which never exceed
/// `Σ (a_cap + b_cap)`. That bound is what makes the control maps have
/// bounded kernels and cokernels in `m` and `n`.
pub fn poitou_tate_bound(datum: &SelmerDatum, f: &DistinguishedPoly, m_range: &[u32], n_range: &[u32]) -> Result<PoitouTateReport> {
    let p = datum.precision().p();
    let deg_f = f.degree() as u32;
    let mut caps = Vec::new();
    for v in datum.primes.iter().filter(|v| v.kind == LocalKind::Ordinary) {
        let c = v
            .torsion_caps
            .ok_or_else(|| Error::IncompleteDatum(alloc::format!("ordinary prime {} has no torsion caps", v.id)))?;
        caps.push(c);
    }
    let bound: i64 = caps.iter().map(|c| c.a as i64 + c.b as i64).sum();
    let mut points = Vec::new();
    for &m in m_range {
        for &n in n_range {
            let mut exponent = 0;
            let mut full = global_euler_exponent(datum.field_degree as u64 * p.pow(n), m, deg_f);
            let mut ord = caps.iter();
            for v in &datum.primes {
                let torsion = if v.kind == LocalKind::Ordinary {
                    let c = ord.next().expect("one cap per ordinary prime");
                    let at_level = TorsionExponents { a: c.a.min(m), b: c.b.min(m), c: c.c.min(m) };
                    exponent += at_level.a as i64 + at_level.b as i64 - at_level.c as i64;
                    Some(at_level)
                } else {
                    None
                };
                let local = LocalDatum {
                    kind: v.kind,
                    local_degree: v.local_degree,
                    sign: v.sign,
                    eta_trivial: false,
                    torsion,
                };
                full += local_ratio(&local, m, n, deg_f, p)?;
            }
            points.push(PoitouTatePoint { m, n, exponent, full_exponent: full.0 });
        }
    }
    let pass = points.iter().all(|pt| pt.exponent <= bound);
    Ok(PoitouTateReport { points, bound, pass })
}

/// `X` whose `η̄`-slot is `ι` of the `η`-slot, for the given choice of slots
/// on one representative of each pair `{η, η̄}`.
pub fn symmetric_completion(x: &GModule) -> Result<GModule> {
    let g = x.order();
    let mut out = x.clone();
    for k in 0..g {
        let bar = (g - k) % g;
        if k < bar {
            out = out.with_slot(bar, iota_module(&x.slot(k))?)?;
        } else if k == bar {
            // self-paired slot: make it ι-stable
            let slot = x.slot(k);
            let sum = slot.direct_sum(&iota_module(&slot)?)?;
            out = out.with_slot(k, sum)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda_modules::{ElementaryModule, PolyPart};
    use crate::testgen;
    use alloc::collections::BTreeMap;
    use alloc::vec;
    use rand::Rng;

    fn prec(p: u64, n: u32, m: usize) -> Precision {
        Precision::new(p, n, m).unwrap()
    }

    fn dp(pr: Precision, c: &[i64]) -> DistinguishedPoly {
        DistinguishedPoly::new(pr, c).unwrap()
    }

    fn minus_prime() -> Vec<PrimeDatum> {
        vec![PrimeDatum::supersingular("v1", 1, Sign::Minus)]
    }

    fn datum(x: GModule) -> SelmerDatum {
        SelmerDatum::new(1, minus_prime(), x, false).unwrap()
    }

    fn gm(pr: Precision, g: u32, slots: &[(u32, ElementaryModule)]) -> GModule {
        GModule::new(pr, g, slots.iter().cloned().collect()).unwrap()
    }

    #[test]
    fn minimal_datum_loads() {
        let pr = prec(3, 2, 8);
        let d = datum(GModule::zero(pr, 1).unwrap());
        assert!(hypothesis_check(&d).pass());
        assert!(functional_equation_check(&d).unwrap().pass);
    }

    #[test]
    fn validation_lists_every_violation() {
        let pr = prec(3, 2, 8);
        let mut bad = PrimeDatum::supersingular("v1", 1, Sign::Minus);
        bad.a_u = Some(1);
        bad.unramified_in_f = Some(false);
        let err = SelmerDatum::new(1, vec![bad], GModule::zero(pr, 1).unwrap(), false).unwrap_err();
        let Error::InvalidDatum(list) = err else { panic!() };
        assert!(list.iter().any(|e| e.contains("(S2)(b) violated: a_u = 1")));
        assert!(list.iter().any(|e| e.contains("(S2)(c)")));
        assert!(matches!(GModule::zero(pr, 3), Err(Error::UnsupportedGroup { order: 3, p: 3 })));
        let err = SelmerDatum::new(2, minus_prime(), GModule::zero(pr, 1).unwrap(), false).unwrap_err();
        assert!(alloc::format!("{err}").contains("sum to 1"));
    }

    #[test]
    fn hypothesis_examples() {
        let pr = prec(3, 2, 8);
        let x = GModule::zero(pr, 1).unwrap();
        let d4 = SelmerDatum::new(4, vec![PrimeDatum::supersingular("v", 4, Sign::Plus)], x.clone(), false).unwrap();
        let report = hypothesis_check(&d4);
        let fail: Vec<_> = report.failures().collect();
        assert_eq!(fail.len(), 1);
        assert!(fail[0].message.contains("4 | d at +-signed prime"));
        assert!(!functional_equation_check(&d4).unwrap().pass);
        let d2 = SelmerDatum::new(2, vec![PrimeDatum::supersingular("v", 2, Sign::Plus)], x.clone(), false).unwrap();
        assert!(hypothesis_check(&d2).pass());
        let ord = SelmerDatum::new(1, vec![PrimeDatum::ordinary("v", 1, None)], x, false).unwrap();
        let report = hypothesis_check(&ord);
        assert_eq!(report.failures().next().unwrap().hypothesis, "(S1)");
    }

    #[test]
    fn fe_examples_at_order_two() {
        let pr = prec(3, 2, 8);
        assert!(functional_equation_check(&datum(GModule::zero(pr, 2).unwrap())).unwrap().pass);
        let a = ElementaryModule::cyclic_poly(dp(pr, &[3, 1]), 1).unwrap();
        let b = ElementaryModule::cyclic_poly(dp(pr, &[6, 1]), 1).unwrap();
        // with g = 2 every character is its own contragredient, so each slot
        // is paired with ι of itself
        let split = datum(gm(pr, 2, &[(0, a.clone()), (1, b.clone())]));
        let verdict = functional_equation_check(&split).unwrap();
        assert!(!verdict.pass);
        assert!(verdict.records.iter().all(|r| r.eta == r.eta_bar && !r.torsion_pseudo_iso));
        let same = datum(gm(pr, 2, &[(0, a.clone()), (1, a.clone())]));
        assert!(!functional_equation_check(&same).unwrap().pass);
        let both = a.direct_sum(&b).unwrap();
        let sym = datum(gm(pr, 2, &[(1, both)]));
        assert!(functional_equation_check(&sym).unwrap().pass);
    }

    #[test]
    fn fe_pairs_distinct_characters() {
        let pr = prec(5, 2, 8);
        let a = ElementaryModule::new(pr, 1, vec![], vec![PolyPart::new(dp(pr, &[5, 1]), 1)]).unwrap();
        let x = gm(pr, 4, &[(1, a.clone()), (3, iota_module(&a).unwrap())]);
        let verdict = functional_equation_check(&datum(x)).unwrap();
        assert!(verdict.pass, "{verdict:?}");
        let rec = &verdict.records[1];
        assert_eq!((rec.eta, rec.eta_bar, rec.rank_eta, rec.rank_eta_bar_iota), (1, 3, 1, 1));
        let swapped = gm(pr, 4, &[(1, a.clone()), (3, a.clone())]);
        assert!(!functional_equation_check(&datum(swapped)).unwrap().pass);
    }

    #[test]
    fn symmetric_completion_always_passes() {
        let mut rng = testgen::rng(41);
        let mut checked = 0;
        for case in 0..60 {
            let (p, g) = [(3, 2), (5, 4), (7, 6), (7, 3)][case % 4];
            let pr = prec(p, 3, 16);
            let mut slots = BTreeMap::new();
            for k in 0..g {
                if rng.gen_bool(0.5) {
                    slots.insert(k, testgen::module(&mut rng, pr, 2, 2));
                }
            }
            // f and f^ι may share a factor modulo p^N without being equal
            let Ok(x) = symmetric_completion(&GModule::new(pr, g, slots).unwrap()) else { continue };
            checked += 1;
            let d = datum(x.clone());
            let v = functional_equation_check(&d).unwrap();
            assert!(v.pass, "case {case}: {x}");
            // swapping roles and applying ι everywhere gives the same verdict
            let flipped = datum(x.iota().unwrap());
            assert_eq!(functional_equation_check(&flipped).unwrap().pass, v.pass);
            for k in 0..g {
                let van = vanishing_equivalence(&d, k);
                assert!(van.torsion_equivalent);
                assert_ne!(
                    core::mem::discriminant(&van.vanishing),
                    core::mem::discriminant(&Vanishing::Inconsistent { offending: vec![] })
                );
            }
        }
        assert!(checked >= 40, "{checked}");
    }

    #[test]
    fn vanishing_examples() {
        let pr = prec(5, 2, 8);
        let d = datum(GModule::zero(pr, 4).unwrap());
        assert_eq!(vanishing_equivalence(&d, 1).vanishing, Vanishing::Consistent);
        let f = ElementaryModule::cyclic_poly(dp(pr, &[5, 1]), 1).unwrap();
        let d = datum(gm(pr, 4, &[(3, f)]));
        let v = vanishing_equivalence(&d, 1);
        let Vanishing::Inconsistent { offending } = &v.vanishing else { panic!("{v}") };
        assert!(offending[0].contains("Λ/(T + 5)"));
        assert!(!functional_equation_check(&d).unwrap().pass);
        let d = datum(gm(pr, 4, &[(1, ElementaryModule::free(pr, 1))]));
        assert_eq!(vanishing_equivalence(&d, 1).vanishing, Vanishing::NotApplicable);
        assert!(!vanishing_equivalence(&d, 1).torsion_equivalent);
    }

    #[test]
    fn poitou_tate_examples() {
        let pr = prec(3, 2, 8);
        let f = dp(pr, &[3, 1]);
        let x = GModule::zero(pr, 1).unwrap();
        let d = datum(x.clone());
        let r = poitou_tate_bound(&d, &f, &[1, 2, 3], &[0, 1, 2]).unwrap();
        assert!(r.pass && r.points.iter().all(|pt| pt.exponent == 0 && pt.full_exponent == 0));

        let caps = TorsionExponents { a: 1, b: 0, c: 2 };
        let primes = vec![PrimeDatum::supersingular("v1", 1, Sign::Minus), PrimeDatum::ordinary("v2", 2, Some(caps))];
        let d = SelmerDatum::new(3, primes.clone(), x.clone(), false).unwrap();
        let r = poitou_tate_bound(&d, &f, &[1, 2, 3], &[0, 1, 2]).unwrap();
        assert_eq!(r.bound, 1);
        assert!(r.pass);
        assert!(r.points.iter().all(|pt| pt.exponent == pt.full_exponent));

        let mut two = primes.clone();
        two.push(PrimeDatum::ordinary("v3", 1, Some(TorsionExponents { a: 2, b: 1, c: 0 })));
        let d2 = SelmerDatum::new(4, two, x.clone(), false).unwrap();
        assert_eq!(poitou_tate_bound(&d2, &f, &[1], &[0]).unwrap().bound, 1 + 3);

        // constant in n
        for m in 1..4 {
            let vals: Vec<i64> = poitou_tate_bound(&d2, &f, &[m], &[0, 1, 2]).unwrap().points.iter().map(|pt| pt.exponent).collect();
            assert!(vals.windows(2).all(|w| w[0] == w[1]));
        }

        let missing = SelmerDatum::new(2, vec![PrimeDatum::supersingular("v1", 1, Sign::Minus), PrimeDatum::ordinary("v2", 1, None)], x, false).unwrap();
        assert!(matches!(poitou_tate_bound(&missing, &f, &[1], &[0]), Err(Error::IncompleteDatum(_))));
    }

    #[test]
    fn torsion_assumption_is_validated() {
        let pr = prec(3, 2, 8);
        let x = gm(pr, 2, &[(1, ElementaryModule::free(pr, 1))]);
        assert!(SelmerDatum::new(1, minus_prime(), x.clone(), true).is_err());
        assert!(SelmerDatum::new(1, minus_prime(), x, false).is_ok());
    }
}
