#![allow(dead_code)]

use std::sync::Arc;

use num_rational::BigRational;
use rand::Rng;
use vvjack::{KappaContext, Partition, Poly};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn ctx(parts: &[usize], k: BigRational) -> Arc<KappaContext<BigRational>> {
    KappaContext::new(&Partition::new(parts.to_vec()).unwrap(), k).unwrap()
}

/// Random polynomial with small rational coefficients.
pub fn random_poly<R: Rng>(ctx: &Arc<KappaContext<BigRational>>, rng: &mut R, terms: usize, max_deg: i64) -> Poly {
    let n = ctx.n();
    let dim = ctx.dim();
    let mut out = Vec::new();
    for _ in 0..terms {
        let alpha: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max_deg)).collect();
        let t = rng.gen_range(0..dim);
        let mut c = rng.gen_range(-9..=9);
        if c == 0 {
            c = 1;
        }
        out.push((alpha, t, q(c, rng.gen_range(1..=5))));
    }
    Poly::from_terms(ctx, out)
}

pub const SHAPES: [&[usize]; 6] = [&[2, 1], &[2, 2], &[3, 1], &[2, 1, 1], &[3, 2], &[2, 2, 1]];
