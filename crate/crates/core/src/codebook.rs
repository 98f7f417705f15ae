use std::cmp::Ordering;
use std::fmt;

use crate::error::{domain, Result};
use crate::measure::Point;
use crate::scalar::Scalar;

/// A finite set of codewords kept in lexicographic `(x, y)` order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codebook<S> {
    points: Vec<Point<S>>,
}

fn lex<S: Scalar>(a: &Point<S>, b: &Point<S>) -> Option<Ordering> {
    match a.x.partial_cmp(&b.x)? {
        Ordering::Equal => a.y.partial_cmp(&b.y),
        o => Some(o),
    }
}

impl<S: Scalar> Codebook<S> {
    /// Sorts the points; rejects empty input, duplicates and unordered values.
    pub fn new(mut points: Vec<Point<S>>) -> Result<Self> {
        if points.is_empty() {
            return domain("a codebook needs at least one point");
        }
        let mut bad = false;
        points.sort_by(|a, b| {
            lex(a, b).unwrap_or_else(|| {
                bad = true;
                Ordering::Equal
            })
        });
        if bad {
            return domain("codebook coordinates must be ordered numbers");
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return domain("codebook points must be pairwise distinct");
        }
        Ok(Codebook { points })
    }

    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point<S>> {
        self.points.iter()
    }

    /// Index of the codeword nearest to `p` (first index on ties).
    pub fn nearest(&self, p: &Point<S>) -> usize {
        let mut best = 0;
        let mut best_d = self.points[0].dist2(p);
        for (i, c) in self.points.iter().enumerate().skip(1) {
            let d = c.dist2(p);
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        best
    }

    /// Applies `f` to every point and re-sorts.
    pub fn map_points(&self, f: impl Fn(&Point<S>) -> Point<S>) -> Result<Self> {
        Codebook::new(self.points.iter().map(f).collect())
    }

    /// Converts to another scalar type.
    pub fn convert<T: Scalar>(&self) -> Result<Codebook<T>> {
        Codebook::new(self.points.iter().map(Point::convert).collect())
    }
}

impl<S: fmt::Display> fmt::Display for Codebook<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}
