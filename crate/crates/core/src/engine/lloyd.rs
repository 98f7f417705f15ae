use super::distortion::{default_tolerance, exact_distortion, CertifiedInterval, DEFAULT_MAX_DEPTH};
use super::tree::{partition, Capture, NAMED_CELLS};
use crate::codebook::Codebook;
use crate::error::{Error, Result};
use crate::measure::Point;
use crate::scalar::Scalar;

fn centroids<S: Scalar>(codebook: &Codebook<S>, cap: Capture<S>) -> Result<Codebook<S>> {
    let empty: Vec<usize> = (0..codebook.len()).filter(|&i| cap.mass[i] <= S::zero()).collect();
    if !empty.is_empty() {
        return Err(Error::EmptyRegion(empty));
    }
    let points = cap
        .mass
        .into_iter()
        .zip(cap.moment_x)
        .zip(cap.moment_y)
        .map(|((m, mx), my)| Point::new(mx / m.clone(), my / m))
        .collect();
    Codebook::new(points)
}

/// One Lloyd update: every codeword moves to the centroid of its Voronoi
/// region, computed over cells resolved within `depth` levels.
///
/// Fails with [`Error::Resolution`] if some cell is still cut at `depth` and
/// with [`Error::EmptyRegion`] if a codeword captures no mass.
pub fn lloyd_step<S: Scalar>(codebook: &Codebook<S>, depth: u32) -> Result<Codebook<S>> {
    let (cap, open) = partition(codebook, depth, false);
    if !open.is_empty() {
        return Err(Error::Resolution {
            depth,
            count: open.len(),
            cells: open.iter().take(NAMED_CELLS).map(|n| n.name()).collect(),
        });
    }
    centroids(codebook, cap)
}

/// Approximate Lloyd update: cells still cut at `depth` go wholly to the
/// codeword nearest their centre, and codewords without mass stay put.
pub fn relaxed_step<S: Scalar>(codebook: &Codebook<S>, depth: u32) -> Result<Codebook<S>> {
    let (cap, _) = partition(codebook, depth, true);
    let points = codebook
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if cap.mass[i] > S::zero() {
                Point::new(cap.moment_x[i].clone() / cap.mass[i].clone(), cap.moment_y[i].clone() / cap.mass[i].clone())
            } else {
                p.clone()
            }
        })
        .collect();
    Codebook::new(points)
}

/// Result of [`lloyd`].
#[derive(Debug, Clone, PartialEq)]
pub struct LloydOutcome<S> {
    pub codebook: Codebook<S>,
    pub interval: CertifiedInterval<S>,
    pub iterations: usize,
    /// The last step left the codebook unchanged.
    pub converged: bool,
}

/// Iterates [`lloyd_step`] until a fixed point or `max_iters` steps, then
/// certifies the distortion of the final codebook.
pub fn lloyd<S: Scalar>(codebook: &Codebook<S>, depth: u32, max_iters: usize) -> Result<LloydOutcome<S>> {
    let mut current = codebook.clone();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        let next = lloyd_step(&current, depth)?;
        iterations += 1;
        if next == current {
            converged = true;
            break;
        }
        current = next;
    }
    let interval = exact_distortion(&current, &default_tolerance(), DEFAULT_MAX_DEPTH.max(depth))?;
    Ok(LloydOutcome { codebook: current, interval, iterations, converged })
}
