//! Seeded random generators shared by the unit tests.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lambda_modules::{ElementaryModule, PolyPart};
use crate::padic_series::{DistinguishedPoly, Precision};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn distinguished(rng: &mut ChaCha8Rng, prec: Precision, max_deg: usize) -> DistinguishedPoly {
    let ring = prec.ring();
    let d = rng.gen_range(1..=max_deg);
    let mut c: Vec<u64> = (0..d).map(|_| ring.mul(ring.p(), rng.gen_range(0..ring.modulus()))).collect();
    c.push(1);
    DistinguishedPoly::from_residues(prec, c).unwrap()
}

pub fn module(rng: &mut ChaCha8Rng, prec: Precision, max_rank: u32, max_deg: usize) -> ElementaryModule {
    loop {
        let rank = rng.gen_range(0..=max_rank);
        let p_parts: Vec<u32> = (0..rng.gen_range(0..=1)).map(|_| rng.gen_range(1..=2)).collect();
        let poly_parts: Vec<PolyPart> = (0..rng.gen_range(0..=2))
            .map(|_| PolyPart::new(distinguished(rng, prec, max_deg), rng.gen_range(1..=2)))
            .collect();
        if let Ok(m) = ElementaryModule::new(prec, rank, p_parts, poly_parts) {
            return m;
        }
    }
}
