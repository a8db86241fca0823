//! Reproducible Monte Carlo on spheres and on the ball with the measure
//! `μ = dy / (d |S^{N-1}| |y|^{N-2})`.
//!
//! Samples are drawn in batches. Batch `b` uses a ChaCha8 generator keyed by
//! `seed` on stream `b`, and batch statistics are merged in batch order, so a
//! result depends on `(seed, samples, batch)` only and not on the thread count.

use super::{IntegralEstimate, Method};
use crate::error::{domain, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Seed and sizes of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarloSpec {
    pub seed: u64,
    pub samples: usize,
    pub batch: usize,
}

impl MonteCarloSpec {
    pub fn new(seed: u64, samples: usize) -> Self {
        Self { seed, samples, batch: 4096 }
    }

    fn validate(&self) -> Result<()> {
        if self.samples < 2 || self.batch == 0 {
            return domain("Monte Carlo needs at least 2 samples and a positive batch size");
        }
        Ok(())
    }

    fn batches(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        let full = self.samples / self.batch;
        let rest = self.samples % self.batch;
        (0..full)
            .map(|b| (b as u64, self.batch))
            .chain((rest > 0).then_some((full as u64, rest)))
    }

    fn rng(&self, batch: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(batch);
        rng
    }
}

/// Fill `out` with a uniform point of the sphere of the given radius.
pub fn draw_sphere(rng: &mut impl Rng, radius: f64, out: &mut [f64]) {
    loop {
        let mut s = 0.0;
        for v in out.iter_mut() {
            *v = rng.sample(StandardNormal);
            s += *v * *v;
        }
        if s > 0.0 {
            let k = radius / s.sqrt();
            out.iter_mut().for_each(|v| *v *= k);
            return;
        }
    }
}

/// Fill `out` with a draw from `μ` on the ball of radius `radius`, normalised
/// to a probability: `|y|²` is uniform on `[0, radius²]`, direction uniform.
pub fn draw_mu_ball(rng: &mut impl Rng, radius: f64, out: &mut [f64]) {
    let u: f64 = 1.0 - rng.gen::<f64>();
    draw_sphere(rng, radius * u.sqrt(), out);
}

/// All draws of a run, in order: `samples` rows of `dim` coordinates.
pub fn sample_sphere_uniform(dim: usize, radius: f64, mc: &MonteCarloSpec) -> Result<Vec<Vec<f64>>> {
    collect(dim, radius, mc, draw_sphere)
}

/// All draws of a `μ`-ball run; each row is a point of `ℝ^dim`.
pub fn sample_mu_ball(dim: usize, radius: f64, mc: &MonteCarloSpec) -> Result<Vec<Vec<f64>>> {
    collect(dim, radius, mc, draw_mu_ball)
}

fn collect(
    dim: usize,
    radius: f64,
    mc: &MonteCarloSpec,
    draw: fn(&mut ChaCha8Rng, f64, &mut [f64]),
) -> Result<Vec<Vec<f64>>> {
    check(dim, radius, mc)?;
    let mut out = Vec::with_capacity(mc.samples);
    for (b, len) in mc.batches() {
        let mut rng = mc.rng(b);
        for _ in 0..len {
            let mut y = vec![0.0; dim];
            draw(&mut rng, radius, &mut y);
            out.push(y);
        }
    }
    Ok(out)
}

fn check(dim: usize, radius: f64, mc: &MonteCarloSpec) -> Result<()> {
    mc.validate()?;
    if dim == 0 || !(radius > 0.0) {
        return domain("sampling needs dimension >= 1 and a positive radius");
    }
    Ok(())
}

/// Running mean and centred sum of squares (Welford), mergeable.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, v: f64) {
        self.count += 1.0;
        let delta = v - self.mean;
        self.mean += delta / self.count;
        self.m2 += delta * (v - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.count == 0.0 {
            return o;
        }
        let count = self.count + o.count;
        let delta = o.mean - self.mean;
        Moments {
            count,
            mean: self.mean + delta * o.count / count,
            m2: self.m2 + o.m2 + delta * delta * self.count * o.count / count,
        }
    }
}

/// Sample means of several integrands of the same draws.
pub(crate) fn mc_means<F>(
    dim: usize,
    radius: f64,
    mc: &MonteCarloSpec,
    draw: fn(&mut ChaCha8Rng, f64, &mut [f64]),
    integrands: &[F],
) -> Result<Vec<IntegralEstimate>>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    check(dim, radius, mc)?;
    let batches: Vec<(u64, usize)> = mc.batches().collect();
    let per_batch: Vec<Result<Vec<Moments>>> = batches
        .par_iter()
        .map(|&(b, len)| {
            let mut rng = mc.rng(b);
            let mut y = vec![0.0; dim];
            let mut m = vec![Moments::default(); integrands.len()];
            for _ in 0..len {
                draw(&mut rng, radius, &mut y);
                for (f, acc) in integrands.iter().zip(m.iter_mut()) {
                    acc.push(f(&y)?);
                }
            }
            Ok(m)
        })
        .collect();
    let mut total = vec![Moments::default(); integrands.len()];
    for batch in per_batch {
        for (acc, m) in total.iter_mut().zip(batch?) {
            *acc = acc.merge(m);
        }
    }
    Ok(total
        .into_iter()
        .map(|m| IntegralEstimate {
            value: m.mean,
            std_error: (m.m2 / (m.count - 1.0) / m.count).sqrt(),
            method: Method::MonteCarlo,
            evaluations: m.count as u64,
        })
        .collect())
}

/// Uniform-sphere mean of `f`.
pub fn mc_sphere_mean(
    f: impl Fn(&[f64]) -> Result<f64> + Sync,
    dim: usize,
    radius: f64,
    mc: &MonteCarloSpec,
) -> Result<IntegralEstimate> {
    Ok(mc_means(dim, radius, mc, draw_sphere, &[f])?.remove(0))
}

/// `μ`-ball mean of `f` (probability normalisation).
pub fn mc_mu_ball_mean(
    f: impl Fn(&[f64]) -> Result<f64> + Sync,
    dim: usize,
    radius: f64,
    mc: &MonteCarloSpec,
) -> Result<IntegralEstimate> {
    Ok(mc_means(dim, radius, mc, draw_mu_ball, &[f])?.remove(0))
}
