#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use veclog::eval::Assignment;
use veclog::formula::{BinOp, Formula};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random formula over the given variable pool with bounded depth.
pub fn random_formula(rng: &mut impl Rng, vars: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        if !vars.is_empty() && rng.gen_bool(0.9) {
            Formula::var(vars[rng.gen_range(0..vars.len())])
        } else {
            Formula::Const(rng.gen_bool(0.5))
        }
    } else {
        match rng.gen_range(0..8) {
            0 => Formula::not(random_formula(rng, vars, depth - 1)),
            k => Formula::binary(
                BinOp::ALL[k - 1],
                random_formula(rng, vars, depth - 1),
                random_formula(rng, vars, depth - 1),
            ),
        }
    }
}

/// Random formula guaranteed to mention every variable of the pool.
pub fn random_formula_with_all_vars(rng: &mut impl Rng, vars: &[&str], depth: usize) -> Formula {
    loop {
        let f = random_formula(rng, vars, depth);
        if f.variables().len() == vars.len() {
            return f;
        }
    }
}

pub fn assignment(pairs: &[(&str, f64)]) -> Assignment {
    Assignment::from_pairs(pairs.iter().copied()).expect("weights in range")
}

/// Inclusive grid of weights from 0 to 1.
pub fn grid(step: f64) -> Vec<f64> {
    let mut ticks = (1.0 / step) as usize;
    if (ticks as f64) < 1.0 / step - 1e-9 {
        ticks += 1;
    }
    (0..=ticks).map(|k| (k as f64 * step).min(1.0)).collect()
}
