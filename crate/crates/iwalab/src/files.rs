//! TOML input formats: module files, Selmer datum files and pairing files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use iwalab_core::duality_counting::{FinitePairing, LocalKind, Sign, Subgroup, TorsionExponents};
use iwalab_core::fe_checker::{prime_violations, PrimeDatum, SelmerDatum};
use iwalab_core::group_eigenspaces::GModule;
use iwalab_core::{ElementaryModule, PolyPart, Precision};

use crate::expr::{parse_distinguished, PolyError};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Syntax { path: String, source: toml::de::Error },
    #[error("polynomial {text:?}: {source}")]
    Poly { text: String, source: PolyError },
    #[error(transparent)]
    Core(#[from] iwalab_core::Error),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, InputError>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })
}

fn parse_toml<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T> {
    toml::from_str(text).map_err(|source| InputError::Syntax { path: origin.to_string(), source })
}

fn one() -> u32 {
    1
}

/// `{ rank = 2, p_parts = [2], poly_parts = [{ f = "T+3", beta = 1 }] }`
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    #[serde(default)]
    pub rank: u32,
    #[serde(default)]
    pub p_parts: Vec<u32>,
    #[serde(default)]
    pub poly_parts: Vec<PolyPartSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyPartSpec {
    pub f: String,
    #[serde(default = "one")]
    pub beta: u32,
}

impl ModuleSpec {
    pub fn build(&self, prec: Precision) -> Result<ElementaryModule> {
        let poly_parts = self
            .poly_parts
            .iter()
            .map(|pp| {
                let f = parse_distinguished(&pp.f, prec)
                    .map_err(|source| InputError::Poly { text: pp.f.clone(), source })?;
                Ok(PolyPart::new(f, pp.beta))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementaryModule::new(prec, self.rank, self.p_parts.clone(), poly_parts)?)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrecisionSpec {
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "M")]
    pub m: usize,
}

impl PrecisionSpec {
    pub fn build(&self) -> Result<Precision> {
        Ok(Precision::new(self.p, self.n, self.m)?)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    p: u64,
    #[serde(rename = "N")]
    n: u32,
    #[serde(rename = "M")]
    m: usize,
    module: ModuleSpec,
}

pub fn parse_module(text: &str, origin: &str) -> Result<ElementaryModule> {
    let file: ModuleFile = parse_toml(text, origin)?;
    file.module.build(Precision::new(file.p, file.n, file.m)?)
}

pub fn load_module(path: &Path) -> Result<ElementaryModule> {
    parse_module(&read(path)?, &path.display().to_string())
}

/// `p=3 N=4 M=8`, in any order.
pub fn parse_precision_args<S: AsRef<str>>(args: &[S]) -> Result<Precision> {
    let (mut p, mut n, mut m) = (None, None, None);
    for arg in args {
        let arg = arg.as_ref();
        let (key, value) = arg
            .split_once('=')
            .ok_or_else(|| InputError::Usage(format!("expected key=value, got {arg:?}")))?;
        let bad = || InputError::Usage(format!("{key} must be a nonnegative integer, got {value:?}"));
        match key.trim() {
            "p" => p = Some(value.trim().parse::<u64>().map_err(|_| bad())?),
            "N" => n = Some(value.trim().parse::<u32>().map_err(|_| bad())?),
            "M" => m = Some(value.trim().parse::<usize>().map_err(|_| bad())?),
            other => return Err(InputError::Usage(format!("unknown precision key {other:?}; use p, N and M"))),
        }
    }
    match (p, n, m) {
        (Some(p), Some(n), Some(m)) => Ok(Precision::new(p, n, m)?),
        _ => Err(InputError::Usage("precision needs p=…, N=… and M=…".into())),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    order: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSpec {
    degree: u32,
    #[serde(default)]
    assume_torsion: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PrimeSpec {
    id: String,
    kind: LocalKind,
    #[serde(default = "one")]
    degree: u32,
    sign: Option<Sign>,
    a_u: Option<i64>,
    unramified: Option<bool>,
    #[serde(default = "one")]
    base_degree: u32,
    caps: Option<TorsionExponents>,
}

impl PrimeSpec {
    fn build(&self) -> PrimeDatum {
        let supersingular = self.kind == LocalKind::Supersingular;
        PrimeDatum {
            id: self.id.clone(),
            kind: self.kind,
            local_degree: self.degree,
            sign: self.sign,
            // omitted at a supersingular prime means the value (S2) asks for
            a_u: self.a_u.or(supersingular.then_some(0)),
            unramified_in_f: self.unramified.or(supersingular.then_some(true)),
            base_local_degree: self.base_degree,
            torsion_caps: self.caps,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumFile {
    precision: PrecisionSpec,
    group: GroupSpec,
    field: FieldSpec,
    #[serde(default)]
    primes: Vec<PrimeSpec>,
    #[serde(default)]
    eigenspaces: BTreeMap<String, ModuleSpec>,
}

/// Parse and validate a datum. Validation problems are collected and
/// reported together as one [`iwalab_core::Error::InvalidDatum`].
pub fn parse_datum(text: &str, origin: &str) -> Result<SelmerDatum> {
    let file: DatumFile = parse_toml(text, origin)?;
    let prec = file.precision.build()?;
    let order = file.group.order;
    let mut errors = Vec::new();
    if order == 0 || (prec.p() - 1) % order as u64 != 0 {
        errors.push(format!("g must divide p-1 (g = {order}, p = {})", prec.p()));
    }
    let primes: Vec<PrimeDatum> = file.primes.iter().map(PrimeSpec::build).collect();
    errors.extend(prime_violations(file.field.degree, &primes));
    let mut slots = BTreeMap::new();
    for (key, spec) in &file.eigenspaces {
        let Ok(index) = key.trim().parse::<u32>() else {
            errors.push(format!("eigenspace key {key:?} is not a character index"));
            continue;
        };
        if index >= order {
            errors.push(format!("eigenspace {index} out of range for a group of order {order}"));
            continue;
        }
        match spec.build(prec) {
            Ok(module) => {
                slots.insert(index, module);
            }
            Err(e) => errors.push(format!("eigenspace {index}: {e}")),
        }
    }
    if !errors.is_empty() {
        return Err(iwalab_core::Error::InvalidDatum(errors).into());
    }
    let x = GModule::new(prec, order, slots)?;
    Ok(SelmerDatum::new(file.field.degree, primes, x, file.field.assume_torsion)?)
}

pub fn load_datum(path: &Path) -> Result<SelmerDatum> {
    parse_datum(&read(path)?, &path.display().to_string())
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairingFile {
    p: u64,
    m: u32,
    gram: Vec<Vec<i64>>,
    #[serde(default)]
    generators: Vec<Vec<i64>>,
}

pub fn parse_pairing(text: &str, origin: &str) -> Result<(FinitePairing, Subgroup)> {
    let file: PairingFile = parse_toml(text, origin)?;
    let pair = FinitePairing::new(file.p, file.m, &file.gram)?;
    let c = Subgroup::from_signed(pair.ring(), pair.rank(), &file.generators)?;
    Ok((pair, c))
}

pub fn load_pairing(path: &Path) -> Result<(FinitePairing, Subgroup)> {
    parse_pairing(&read(path)?, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_file() {
        let m = parse_module(
            "p = 3\nN = 4\nM = 16\nmodule = { rank = 2, p_parts = [2], poly_parts = [ { f = \"T+3\", beta = 1 } ] }\n",
            "t",
        )
        .unwrap();
        assert_eq!(m.to_string(), "Λ^2 ⊕ Λ/3^2 ⊕ Λ/(T + 3)");
        assert!(matches!(parse_module("p = 3\nN = 4\nM = 16\nmodule = { rnk = 2 }", "t"), Err(InputError::Syntax { .. })));
        assert!(matches!(parse_module("p = 3\nN = 4\nM = 16\nmodule = { poly_parts = [{ f = \"T+1\" }] }", "t"), Err(InputError::Poly { .. })));
    }

    #[test]
    fn precision_args() {
        let prec = parse_precision_args(&["p=3", "N=4", "M=8"]).unwrap();
        assert_eq!(prec.to_string(), "p=3 N=4 M=8");
        assert!(parse_precision_args(&["p=3", "N=4"]).is_err());
        assert!(parse_precision_args(&["p=4", "N=4", "M=8"]).is_err());
        assert!(parse_precision_args(&["q=3"]).is_err());
    }

    const MINIMAL: &str = r#"
[precision]
p = 3
N = 2
M = 8

[group]
order = 1

[field]
degree = 1

[[primes]]
id = "v"
kind = "supersingular"
degree = 1
sign = "-"
"#;

    #[test]
    fn minimal_datum() {
        let d = parse_datum(MINIMAL, "t").unwrap();
        assert_eq!(d.group_order(), 1);
        assert!(d.x().is_zero());
    }

    #[test]
    fn datum_errors_are_collected() {
        let text = MINIMAL.replace("order = 1", "order = 3").replace("sign = \"-\"", "sign = \"-\"\na_u = 1");
        let err = parse_datum(&text, "t").unwrap_err().to_string();
        assert!(err.contains("g must divide p-1"), "{err}");
        assert!(err.contains("(S2)(b) violated: a_u = 1"), "{err}");
    }

    #[test]
    fn pairing_file() {
        let (pair, c) = parse_pairing("p = 3\nm = 2\ngram = [[0, 1], [-1, 0]]\ngenerators = [[1, 0]]\n", "t").unwrap();
        assert_eq!(pair.rank(), 2);
        assert_eq!(c.basis(), &[vec![1, 0]]);
        assert!(parse_pairing("p = 3\nm = 2\ngram = [[3, 0], [0, 1]]\n", "t").is_err());
    }
}
