//! Seeded random inputs for the verification suites.
//!
//! Every suite draws from its own stream, derived from the run seed and a
//! fixed stream id, so adding a suite never shifts another suite's corpus.

use amalgam_core::{CoefficientSequence, FunctionModel, Generator, Piecewise};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SUPPORT_MAX: f64 = 8.0;
const MIN_GAP: f64 = 0.05;

pub fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Random model with 3–12 breakpoints in `[0, 8]` and values in `[−2, 2]`.
///
/// `continuous` pins both edge values to zero so the model is absolutely
/// continuous on the half-line.
pub fn random_model<R: Rng>(rng: &mut R, continuous: bool) -> FunctionModel {
    loop {
        let count = rng.gen_range(3..=12);
        let mut knots: Vec<f64> = (0..count).map(|_| rng.gen_range(0.0..SUPPORT_MAX)).collect();
        knots.sort_by(f64::total_cmp);
        if knots.windows(2).any(|w| w[1] - w[0] < MIN_GAP) {
            continue;
        }
        let mut values: Vec<f64> = (0..count).map(|_| rng.gen_range(-2.0..=2.0)).collect();
        if continuous {
            values[0] = 0.0;
            values[count - 1] = 0.0;
        }
        if let Ok(model) = FunctionModel::new(knots, values) {
            if !model.is_zero() {
                return model;
            }
        }
    }
}

pub fn model_corpus(seed: u64, id: u64, size: usize, continuous: bool) -> Vec<FunctionModel> {
    let mut rng = stream(seed, id);
    (0..size).map(|_| random_model(&mut rng, continuous)).collect()
}

/// Random sequence of length 8–64 with entries in `[−1, 1]`.
pub fn random_sequence<R: Rng>(rng: &mut R) -> CoefficientSequence {
    let len = rng.gen_range(8..=64);
    let entries = (0..len).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    CoefficientSequence::new(entries).expect("finite and non-empty")
}

/// Decaying coefficient families of length 16–256, the natural inputs for sine series.
pub fn random_decaying_sequence<R: Rng>(rng: &mut R) -> CoefficientSequence {
    let len = rng.gen_range(16..=256);
    let generator = match rng.gen_range(0..3) {
        0 => Generator::Power { p: rng.gen_range(0.5..=2.0), len },
        1 => Generator::LogPower { q: rng.gen_range(0.5..=2.0), len },
        _ => {
            // monotone, with random decrements
            let mut level = 1.0;
            let entries = (0..len)
                .map(|_| {
                    let v = level;
                    level *= rng.gen_range(0.8..1.0);
                    v
                })
                .collect();
            return CoefficientSequence::new(entries).expect("finite and non-empty");
        }
    };
    generator.materialize().expect("valid generator")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible() {
        assert_eq!(model_corpus(42, 1, 5, true), model_corpus(42, 1, 5, true));
        assert_ne!(model_corpus(42, 1, 5, true), model_corpus(43, 1, 5, true));
        assert_ne!(model_corpus(42, 1, 5, true), model_corpus(42, 2, 5, true));
    }

    #[test]
    fn corpus_respects_ranges() {
        for g in model_corpus(7, 0, 50, true) {
            let k = g.breakpoints();
            assert!((3..=12).contains(&k.len()));
            assert!(k[0] >= 0.0 && k[k.len() - 1] <= SUPPORT_MAX);
            assert!(g.values().iter().all(|v| v.abs() <= 2.0));
            assert!(g.is_absolutely_continuous() && !g.is_zero());
        }
        let mut rng = stream(7, 9);
        for _ in 0..20 {
            let s = random_decaying_sequence(&mut rng);
            assert!(s.len() >= 16 && s.entries().iter().all(|v| v.is_finite()));
        }
    }
}
