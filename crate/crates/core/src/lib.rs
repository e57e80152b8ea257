//! Finite-precision computer algebra for the Iwasawa algebra `Λ = Zp[[T]]`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function on immutable values; file formats and the command-line front end
//! live in the `iwalab` crate.
//!
//! Module map:
//!
//! * [`padic_series`]: truncated power series over `Z/p^N`, Weierstrass
//!   preparation and the involution `ι: T ↦ (1+T)^{-1} - 1`.
//! * [`lambda_modules`]: elementary `Λ`-modules, Iwasawa invariants,
//!   coinvariant sizes and module comparison.
//! * [`group_eigenspaces`]: characters of a cyclic group of order dividing
//!   `p - 1`, idempotents, eigenspaces and twists.
//! * [`duality_counting`]: perfect pairings on `(Z/p^m)^k`, exact
//!   annihilators and the local/global exponent formulas.
//! * [`fe_checker`]: the functional-equation checker on synthetic Selmer data.
#![no_std]

extern crate alloc;

mod error;
pub mod residue;
pub mod matrix;
pub mod padic_series;
pub mod lambda_modules;
pub mod group_eigenspaces;
pub mod duality_counting;
pub mod fe_checker;
#[cfg(test)]
mod testgen;

pub use error::{Error, Result};

pub use lambda_modules::{ElementaryModule, PolyPart, SizeExponent};
pub use padic_series::{DistinguishedPoly, PowerSeries, Precision, UnitSeries};
