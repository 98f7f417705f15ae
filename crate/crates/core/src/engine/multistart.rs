//! Random-restart Lloyd search.
//!
//! Each run draws `n` points uniformly from the unit square, iterates the
//! relaxed Lloyd map in `f64` until it settles, and then polishes the result
//! with strict exact steps. A generic random codebook has bisectors cutting
//! the Cantor dust at every depth, so the strict step alone would fail on
//! almost every start; the float phase only supplies a starting point and
//! everything reported is recomputed exactly.

use num_traits::FromPrimitive;

use super::distortion::{default_tolerance, exact_distortion, CertifiedInterval, DEFAULT_MAX_DEPTH};
use super::lloyd::{lloyd_step, relaxed_step};
use super::rng::Lcg64;
use super::tree::partition;
use crate::codebook::Codebook;
use crate::error::{domain, Error, Result};
use crate::measure::Point;
use crate::Rational;

/// Cell depth of the float phase.
pub const RELAXED_DEPTH: u32 = 10;
const RELAXED_ITERS: usize = 500;
const RELAXED_STILL: f64 = 1e-14;
const POLISH_ITERS: usize = 20;
const DEPTH_STEP: u32 = 4;

/// One successful run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub seed_index: usize,
    pub codebook: Codebook<Rational>,
    pub interval: CertifiedInterval<Rational>,
    /// The exact polish reached a fixed point of the strict Lloyd map.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultistartReport {
    /// Successful run with the smallest upper bound (first one on ties).
    pub best: Option<RunOutcome>,
    pub runs: Vec<RunOutcome>,
    /// Runs aborted by unresolvable cells or empty regions.
    pub failed: usize,
}

fn random_codebook(n: usize, rng: &mut Lcg64) -> Codebook<f64> {
    loop {
        let pts = (0..n).map(|_| Point::new(rng.next_f64(), rng.next_f64())).collect();
        if let Ok(cb) = Codebook::new(pts) {
            return cb;
        }
    }
}

fn settle(mut cb: Codebook<f64>) -> Result<Codebook<f64>> {
    for _ in 0..RELAXED_ITERS {
        let next = relaxed_step(&cb, RELAXED_DEPTH)?;
        let moved = cb
            .iter()
            .zip(next.iter())
            .map(|(a, b)| (a.x - b.x).abs().max((a.y - b.y).abs()))
            .fold(0.0, f64::max);
        cb = next;
        if moved < RELAXED_STILL {
            break;
        }
    }
    Ok(cb)
}

fn to_exact(cb: &Codebook<f64>) -> Result<Codebook<Rational>> {
    cb.iter()
        .map(|p| match (Rational::from_f64(p.x), Rational::from_f64(p.y)) {
            (Some(x), Some(y)) => Ok(Point::new(x, y)),
            _ => domain("non-finite coordinate"),
        })
        .collect::<Result<Vec<_>>>()
        .and_then(Codebook::new)
}

fn depth_schedule(cap: u32) -> Vec<u32> {
    let mut d: Vec<u32> = (1..).map(|k| k * DEPTH_STEP).take_while(|&d| d < cap).collect();
    d.push(cap);
    d
}

/// Strict step at the first depth of the schedule where it succeeds.
///
/// A float pass decides cheaply whether a depth can possibly resolve before
/// the exact partition is attempted.
fn escalating_step(cb: &Codebook<Rational>, schedule: &[u32]) -> Result<Codebook<Rational>> {
    let approx: Codebook<f64> = cb.convert()?;
    let mut last = None;
    for &d in schedule {
        let (_, open) = partition(&approx, d, false);
        if !open.is_empty() {
            continue;
        }
        match lloyd_step(cb, d) {
            Err(e @ Error::Resolution { .. }) => last = Some(e),
            other => return other,
        }
    }
    let cap = *schedule.last().expect("schedule is nonempty");
    Err(last.unwrap_or(Error::Resolution { depth: cap, count: 0, cells: vec![] }))
}

fn run_once(start: Codebook<f64>, schedule: &[u32]) -> Result<(Codebook<Rational>, bool)> {
    let mut cb = to_exact(&settle(start)?)?;
    for _ in 0..POLISH_ITERS {
        let next = escalating_step(&cb, schedule)?;
        if next == cb {
            return Ok((cb, true));
        }
        cb = next;
    }
    Ok((cb, false))
}

/// Runs `seeds` random starts for `n` codewords, drawing every start from
/// one [`Lcg64`] stream seeded with `rng_seed`. Strict steps escalate the
/// cell depth up to `depth` before a run is abandoned.
pub fn multistart_search(n: usize, seeds: usize, rng_seed: u64, depth: u32) -> Result<MultistartReport> {
    if n < 1 {
        return domain("multistart needs n >= 1");
    }
    if seeds < 1 {
        return domain("multistart needs at least one seed");
    }
    if depth < 1 {
        return domain("depth must be at least 1");
    }
    let schedule = depth_schedule(depth);
    let mut rng = Lcg64::new(rng_seed);
    let starts: Vec<Codebook<f64>> = (0..seeds).map(|_| random_codebook(n, &mut rng)).collect();
    let mut runs = Vec::new();
    let mut failed = 0;
    for (seed_index, start) in starts.into_iter().enumerate() {
        match run_once(start, &schedule) {
            Ok((codebook, converged)) => {
                let interval = exact_distortion(&codebook, &default_tolerance(), DEFAULT_MAX_DEPTH.max(depth))?;
                runs.push(RunOutcome { seed_index, codebook, interval, converged });
            }
            Err(Error::Resolution { .. } | Error::EmptyRegion(_) | Error::Domain(_)) => failed += 1,
            Err(e) => return Err(e),
        }
    }
    let best = runs
        .iter()
        .fold(None::<&RunOutcome>, |b, r| match b {
            Some(b) if b.interval.upper <= r.interval.upper => Some(b),
            _ => Some(r),
        })
        .cloned();
    Ok(MultistartReport { best, runs, failed })
}
