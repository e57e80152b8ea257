//! The subcommands, as functions from parsed inputs to report text.

use std::fmt::Write;
use std::path::Path;

use iwalab_core::duality_counting::{exact_annihilator, left_annihilator, FinitePairing, Subgroup};
use iwalab_core::fe_checker::{functional_equation_check, poitou_tate_bound, vanishing_equivalence, FeVerdict, SelmerDatum, Vanishing};
use iwalab_core::lambda_modules::{coinvariant_structure, compare_modules, invariants, ComparisonRanges, ComparisonVerdict};
use iwalab_core::padic_series::weierstrass_prepare;
use iwalab_core::{DistinguishedPoly, ElementaryModule};

use crate::expr::{parse_distinguished, parse_series};
use crate::files::{self, InputError, Result};

/// Report text and whether every check in it passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

fn ok_fail(b: bool) -> &'static str {
    if b {
        "OK"
    } else {
        "FAIL"
    }
}

pub fn prep(expr: &str, precision: &[String]) -> Result<Outcome> {
    let prec = files::parse_precision_args(precision)?;
    let f = parse_series(expr, prec).map_err(|e| InputError::Poly { text: expr.into(), source: e.into() })?;
    let (u, f1) = weierstrass_prepare(&f)?;
    Ok(Outcome::ok(format!("u = {u}\nf1 = {f1}\n")))
}

fn char_ideal(module: &ElementaryModule) -> String {
    let inv = invariants(module);
    let p = module.precision().p();
    let mut factors = Vec::new();
    match inv.char_p_exponent {
        0 => {}
        1 => factors.push(p.to_string()),
        e => factors.push(format!("{p}^{e}")),
    }
    for pp in module.poly_parts() {
        if pp.beta == 1 {
            factors.push(format!("({})", pp.f));
        } else {
            factors.push(format!("({})^{}", pp.f, pp.beta));
        }
    }
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join(" * ")
    }
}

pub fn invariants_report(module: &ElementaryModule) -> Outcome {
    let inv = invariants(module);
    let mut out = String::new();
    writeln!(out, "module = {module}").unwrap();
    writeln!(out, "precision = {}", module.precision()).unwrap();
    writeln!(out, "rank = {}", inv.rank).unwrap();
    writeln!(out, "mu = {}", inv.mu).unwrap();
    writeln!(out, "lambda = {}", inv.lambda).unwrap();
    writeln!(out, "char = {}", char_ideal(module)).unwrap();
    writeln!(out, "char_poly = {}", inv.char_poly).unwrap();
    Outcome::ok(out)
}

pub fn coinv_report(module: &ElementaryModule, m: u32, n: u32) -> Result<Outcome> {
    let structure = coinvariant_structure(module, m, n)?;
    let p = module.precision().p();
    let total: u32 = structure.iter().sum();
    let factors: Vec<String> = structure
        .iter()
        .map(|&e| if e == 1 { format!("Z/{p}") } else { format!("Z/{p}^{e}") })
        .collect();
    let mut out = String::new();
    writeln!(out, "module = {module}").unwrap();
    writeln!(out, "(M/p^{m})_Gamma_{n} = {}", if factors.is_empty() { "0".into() } else { factors.join(" + ") }).unwrap();
    writeln!(out, "size = {p}^{total}").unwrap();
    Ok(Outcome::ok(out))
}

/// Options for `compare`.
#[derive(Debug, Clone)]
pub struct CompareOptions {
    pub m_max: u32,
    pub n_max: u32,
    pub power_max: u32,
    pub extra_polys: Vec<String>,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions { m_max: 2, n_max: 3, power_max: 3, extra_polys: Vec::new() }
    }
}

/// Ranges clipped to what the precision supports; the polynomials default
/// to every `f_j` occurring in either module.
pub fn comparison_ranges(a: &ElementaryModule, b: &ElementaryModule, opts: &CompareOptions) -> Result<ComparisonRanges> {
    let prec = a.precision();
    let levels: Vec<u32> = (1..=opts.m_max.min(prec.p_adic())).collect();
    let tower: Vec<u32> = (0..=opts.n_max)
        .take_while(|&n| prec.p().checked_pow(n).is_some_and(|d| (d as usize) < prec.truncation()))
        .collect();
    let powers: Vec<u32> = (1..=opts.power_max).collect();
    let mut polys: Vec<DistinguishedPoly> = a.poly_parts().iter().chain(b.poly_parts()).map(|pp| pp.f.clone()).collect();
    for text in &opts.extra_polys {
        polys.push(parse_distinguished(text, prec).map_err(|source| InputError::Poly { text: text.clone(), source })?);
    }
    polys.sort();
    polys.dedup();
    Ok(ComparisonRanges { levels, tower, powers, polys })
}

pub fn compare_text(a: &ElementaryModule, b: &ElementaryModule, v: &ComparisonVerdict) -> String {
    let mut out = String::new();
    writeln!(out, "A = {a}").unwrap();
    writeln!(out, "B = {b}").unwrap();
    match v.first_unbounded() {
        None => writeln!(out, "hypothesis (1) bounded coinvariant ratio : OK").unwrap(),
        Some(check) => {
            let gaps: Vec<String> = check.gaps.iter().map(|(n, g)| format!("n={n}:{g}")).collect();
            writeln!(out, "hypothesis (1) bounded coinvariant ratio : FAIL at m={} (exponent gaps {})", check.m, gaps.join(" ")).unwrap();
        }
    }
    match v.first_corank_mismatch() {
        None => writeln!(out, "hypothesis (2) equal coranks : OK").unwrap(),
        Some(x) => writeln!(out, "hypothesis (2) equal coranks : FAIL at f={} n={} ({} vs {})", x.f, x.n, x.left, x.right).unwrap(),
    }
    writeln!(out, "conclusion ranks equal : {}", ok_fail(v.ranks_equal)).unwrap();
    writeln!(out, "conclusion torsion pseudo-isomorphic : {}", ok_fail(v.torsion_pseudo_isomorphic)).unwrap();
    out
}

/// Passes when the verdict is internally consistent: if both hypotheses
/// hold then so does the conclusion.
pub fn compare(a: &ElementaryModule, b: &ElementaryModule, opts: &CompareOptions) -> Result<Outcome> {
    if a.precision() != b.precision() {
        return Err(InputError::Usage(format!(
            "modules have different precision ({} vs {})",
            a.precision(),
            b.precision()
        )));
    }
    let ranges = comparison_ranges(a, b, opts)?;
    let v = compare_modules(a, b, &ranges)?;
    let pass = !(v.bounded_holds() && v.corank_holds()) || v.conclusion_holds();
    Ok(Outcome { text: compare_text(a, b, &v), pass })
}

fn write_subgroup(out: &mut String, name: &str, c: &Subgroup) {
    writeln!(out, "{name} generators:").unwrap();
    if c.basis().is_empty() {
        writeln!(out, "  (none)").unwrap();
    }
    for row in c.basis() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        writeln!(out, "  [{}]", cells.join(", ")).unwrap();
    }
}

pub fn annihilate(pair: &FinitePairing, c: &Subgroup) -> Result<Outcome> {
    let ring = pair.ring();
    let perp = exact_annihilator(pair, c)?;
    let (ec, ep, eh) = (c.size_exponent(ring), perp.size_exponent(ring), pair.size_exponent());
    let sizes = ec + ep == eh;
    let double = left_annihilator(pair, &perp)? == *c;
    let p = ring.p();
    let mut out = String::new();
    write_subgroup(&mut out, "C", c);
    write_subgroup(&mut out, "Cperp", &perp);
    writeln!(out, "|C| = {p}^{ec}, |Cperp| = {p}^{ep}, |H| = {p}^{eh}").unwrap();
    writeln!(out, "|C| * |Cperp| == |H| : {}", ok_fail(sizes)).unwrap();
    writeln!(out, "(Cperp)perp == C : {}", ok_fail(double)).unwrap();
    if perp == *c {
        writeln!(out, "C is its own exact annihilator").unwrap();
    }
    Ok(Outcome { text: out, pass: sizes && double })
}

#[derive(Debug, Clone)]
pub struct FeOptions {
    pub f: String,
    pub m_max: u32,
    pub n_max: u32,
}

impl Default for FeOptions {
    fn default() -> Self {
        FeOptions { f: "T".into(), m_max: 3, n_max: 2 }
    }
}

/// Verdict plus the text report: hypotheses, one line per character,
/// vanishing checks and the Poitou–Tate bound.
pub fn fe_check(datum: &SelmerDatum, opts: &FeOptions) -> Result<(FeVerdict, Outcome)> {
    let prec = datum.precision();
    let f = parse_distinguished(&opts.f, prec).map_err(|source| InputError::Poly { text: opts.f.clone(), source })?;
    let verdict = functional_equation_check(datum)?;
    let mut out = String::new();
    let mut pass = verdict.pass;
    writeln!(out, "hypotheses:").unwrap();
    write!(out, "{}", verdict.hypotheses).unwrap();
    writeln!(out, "functional equation:").unwrap();
    if verdict.records.is_empty() {
        writeln!(out, "skipped: a hypothesis fails").unwrap();
    }
    for r in &verdict.records {
        writeln!(out, "{r}").unwrap();
    }
    if verdict.hypotheses.pass() {
        writeln!(out, "vanishing:").unwrap();
        for k in 0..datum.group_order() {
            let v = vanishing_equivalence(datum, k);
            pass &= !matches!(v.vanishing, Vanishing::Inconsistent { .. }) && v.torsion_equivalent;
            writeln!(out, "{v}").unwrap();
        }
    }
    let m_range: Vec<u32> = (1..=opts.m_max).collect();
    let n_range: Vec<u32> = (0..=opts.n_max).collect();
    match poitou_tate_bound(datum, &f, &m_range, &n_range) {
        Ok(report) => {
            let max = report.points.iter().map(|pt| pt.exponent).max().unwrap_or(0);
            let cancels = report.points.iter().all(|pt| pt.exponent == pt.full_exponent);
            writeln!(
                out,
                "poitou-tate f={f} m<={} n<={} : max exponent {max} <= bound {} : {}",
                opts.m_max,
                opts.n_max,
                report.bound,
                ok_fail(report.pass)
            )
            .unwrap();
            writeln!(out, "poitou-tate euler factors cancel : {}", ok_fail(cancels)).unwrap();
            pass &= report.pass && cancels;
        }
        Err(iwalab_core::Error::IncompleteDatum(why)) => {
            writeln!(out, "poitou-tate skipped: {why}").unwrap();
        }
        Err(e) => return Err(e.into()),
    }
    writeln!(out, "verdict: {}", if pass { "PASS" } else { "FAIL" }).unwrap();
    Ok((verdict, Outcome { text: out, pass }))
}

pub fn fe_check_file(path: &Path, opts: &FeOptions) -> Result<(FeVerdict, Outcome)> {
    fe_check(&files::load_datum(path)?, opts)
}
