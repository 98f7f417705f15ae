use std::fmt;

use rayon::prelude::*;

use super::tree::{classify_level, level_scale, Node, Verdict};
use crate::codebook::Codebook;
use crate::error::{domain, Result};
use crate::measure::Region;
use crate::moments::single_center_distortion;
use crate::scalar::Scalar;

/// Default recursion depth of [`exact_distortion`].
pub const DEFAULT_MAX_DEPTH: u32 = 40;

/// Default tolerance of [`exact_distortion`], `10^-12`.
pub fn default_tolerance<S: Scalar>() -> S {
    S::inv_pow(10, 12)
}

/// Enclosure `lower ≤ ∫ min_a ‖x − a‖² dP ≤ upper`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CertifiedInterval<S> {
    pub lower: S,
    pub upper: S,
    /// No truncated cells remained, so `lower == upper` is the value.
    pub exact: bool,
}

impl<S: Scalar> CertifiedInterval<S> {
    pub fn exact(value: S) -> Self {
        CertifiedInterval { lower: value.clone(), upper: value, exact: true }
    }

    pub fn width(&self) -> S {
        self.upper.clone() - self.lower.clone()
    }

    pub fn contains(&self, v: &S) -> bool {
        &self.lower <= v && v <= &self.upper
    }

    /// `self ⊆ other`.
    pub fn within(&self, other: &CertifiedInterval<S>) -> bool {
        other.lower <= self.lower && self.upper <= other.upper
    }
}

impl<S: fmt::Display> fmt::Display for CertifiedInterval<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{} (exact)", self.lower)
        } else {
            write!(f, "[{}, {}]", self.lower, self.upper)
        }
    }
}

fn truncated_bounds<S: Scalar>(node: &Node<S>, side: &S, mass: &S, codebook: &Codebook<S>) -> (S, S) {
    let rect = node.rect(side);
    let c = rect.center();
    let pts = codebook.points();
    let mut d_min: Option<S> = None;
    let mut d_cent: Option<S> = None;
    for &i in &node.live {
        let a = rect.dist2_to(&pts[i]);
        let b = pts[i].dist2(&c);
        if d_min.as_ref().is_none_or(|m| &a < m) {
            d_min = Some(a);
        }
        if d_cent.as_ref().is_none_or(|m| &b < m) {
            d_cent = Some(b);
        }
    }
    let spread = side.square() * S::ratio(2, 8);
    let lower = mass.clone() * d_min.expect("live list is nonempty");
    let upper = mass.clone() * (spread + d_cent.expect("live list is nonempty"));
    (lower, upper)
}

/// Certified distortion of `codebook` with respect to the measure.
///
/// Recursion stops as soon as the open cells can be closed off with total
/// width `≤ tolerance`, or at `max_depth`.
pub fn exact_distortion<S: Scalar>(
    codebook: &Codebook<S>,
    tolerance: &S,
    max_depth: u32,
) -> Result<CertifiedInterval<S>> {
    if max_depth < 1 {
        return domain("max_depth must be at least 1");
    }
    if tolerance <= &S::zero() {
        return domain("tolerance must be positive");
    }
    let pts = codebook.points();
    let mut exact_part = S::zero();
    let mut frontier = vec![Node::root(codebook.len())];
    for d in 0..=max_depth {
        let (side, mass) = level_scale::<S>(d);
        let verdicts = classify_level(&frontier, &side, codebook);
        let mut open = Vec::new();
        for (mut node, v) in frontier.into_iter().zip(verdicts) {
            match v {
                Verdict::Owned(a) => {
                    let cell = Region::cantor(node.x, node.y);
                    exact_part = exact_part + single_center_distortion(&cell, &pts[a]);
                }
                Verdict::Live(live) => {
                    node.live = live;
                    open.push(node);
                }
            }
        }
        if open.is_empty() {
            return Ok(CertifiedInterval::exact(exact_part));
        }
        let bounds: Vec<(S, S)> = open.par_iter().map(|n| truncated_bounds(n, &side, &mass, codebook)).collect();
        let (lo, hi) = bounds
            .into_iter()
            .fold((S::zero(), S::zero()), |(l, u), (a, b)| (l + a, u + b));
        if d == max_depth || hi.clone() - lo.clone() <= *tolerance {
            return Ok(CertifiedInterval { lower: exact_part.clone() + lo, upper: exact_part + hi, exact: false });
        }
        frontier = open.iter().flat_map(|n| n.children(&side)).collect();
    }
    unreachable!("loop returns at max_depth")
}
