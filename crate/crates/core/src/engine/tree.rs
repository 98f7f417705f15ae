//! Voronoi resolution over the tree of Cantor product cells.

use rayon::prelude::*;

use crate::codebook::Codebook;
use crate::measure::{Point, Region};
use crate::scalar::Scalar;
use crate::words::BinaryWord;

/// How many offending cells a resolution error names.
pub(crate) const NAMED_CELLS: usize = 8;

/// Outcome of testing one rectangle against the live codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Verdict {
    Owned(usize),
    /// Codewords that may still be nearest somewhere in the rectangle.
    Live(Vec<usize>),
}

/// Rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone)]
pub(crate) struct Rect<S> {
    pub x0: S,
    pub x1: S,
    pub y0: S,
    pub y1: S,
}

impl<S: Scalar> Rect<S> {
    pub fn center(&self) -> Point<S> {
        Point::new(
            (self.x0.clone() + self.x1.clone()) * S::half(),
            (self.y0.clone() + self.y1.clone()) * S::half(),
        )
    }

    fn corners(&self) -> [Point<S>; 4] {
        [
            Point::new(self.x0.clone(), self.y0.clone()),
            Point::new(self.x0.clone(), self.y1.clone()),
            Point::new(self.x1.clone(), self.y0.clone()),
            Point::new(self.x1.clone(), self.y1.clone()),
        ]
    }

    /// Squared distance from the rectangle to `p`.
    pub fn dist2_to(&self, p: &Point<S>) -> S {
        let gap = |lo: &S, hi: &S, v: &S| {
            if v < lo {
                lo.clone() - v.clone()
            } else if v > hi {
                v.clone() - hi.clone()
            } else {
                S::zero()
            }
        };
        gap(&self.x0, &self.x1, &p.x).square() + gap(&self.y0, &self.y1, &p.y).square()
    }
}

/// Prunes `live` to the codewords that can be nearest somewhere in `rect`.
///
/// The reference codeword `a` is the one nearest the centre; a rival `b` is
/// dropped when every corner is at least as close to `a` as to `b` (the
/// half-plane `{q : ‖q−a‖ ≤ ‖q−b‖}` is convex). If some codeword owns the
/// rectangle it must be `a`, so this decides ownership exactly.
pub(crate) fn classify<S: Scalar>(rect: &Rect<S>, codebook: &Codebook<S>, live: &[usize]) -> Verdict {
    let pts = codebook.points();
    let c = rect.center();
    let mut a = live[0];
    let mut best = pts[a].dist2(&c);
    for &i in &live[1..] {
        let d = pts[i].dist2(&c);
        if d < best {
            a = i;
            best = d;
        }
    }
    let corners = rect.corners();
    let da: Vec<S> = corners.iter().map(|q| pts[a].dist2(q)).collect();
    let kept: Vec<usize> = live
        .iter()
        .copied()
        .filter(|&b| b == a || corners.iter().zip(&da).any(|(q, d)| pts[b].dist2(q) < *d))
        .collect();
    if kept.len() == 1 {
        Verdict::Owned(a)
    } else {
        Verdict::Live(kept)
    }
}

/// Index of the codeword owning every point of `cell`'s bounding rectangle
/// (ties only on its boundary), or `None` when a bisector cuts it.
pub fn resolve_cell<S: Scalar>(cell: &Region<S>, codebook: &Codebook<S>) -> Option<usize> {
    let (x0, x1, y0, y1) = cell.bounds();
    let all: Vec<usize> = (0..codebook.len()).collect();
    match classify(&Rect { x0, x1, y0, y1 }, codebook, &all) {
        Verdict::Owned(a) => Some(a),
        Verdict::Live(_) => None,
    }
}

/// A square Cantor cell `A_x × A_y` of the current level.
#[derive(Debug, Clone)]
pub(crate) struct Node<S> {
    pub x: BinaryWord,
    pub y: BinaryWord,
    pub x0: S,
    pub y0: S,
    pub live: Vec<usize>,
}

impl<S: Scalar> Node<S> {
    pub fn root(n: usize) -> Self {
        Node { x: BinaryWord::empty(), y: BinaryWord::empty(), x0: S::zero(), y0: S::zero(), live: (0..n).collect() }
    }

    pub fn rect(&self, side: &S) -> Rect<S> {
        Rect {
            x0: self.x0.clone(),
            x1: self.x0.clone() + side.clone(),
            y0: self.y0.clone(),
            y1: self.y0.clone() + side.clone(),
        }
    }

    pub fn name(&self) -> String {
        format!("({},{})", self.x, self.y)
    }

    /// The four children; `side` is this node's side length.
    pub fn children(&self, side: &S) -> [Node<S>; 4] {
        let off = side.clone() * S::ratio(2, 3);
        let child = |dx: u8, dy: u8| Node {
            x: self.x.child(dx),
            y: self.y.child(dy),
            x0: if dx == 1 { self.x0.clone() } else { self.x0.clone() + off.clone() },
            y0: if dy == 1 { self.y0.clone() } else { self.y0.clone() + off.clone() },
            live: self.live.clone(),
        };
        [child(1, 1), child(1, 2), child(2, 1), child(2, 2)]
    }
}

/// Side `3^-d` and mass `4^-d` of level-`d` cells.
pub(crate) fn level_scale<S: Scalar>(depth: u32) -> (S, S) {
    (S::inv_pow(3, depth), S::inv_pow(4, depth))
}

/// Classifies a whole level, in parallel when it is large.
pub(crate) fn classify_level<S: Scalar>(nodes: &[Node<S>], side: &S, codebook: &Codebook<S>) -> Vec<Verdict> {
    const PAR_THRESHOLD: usize = 64;
    let f = |n: &Node<S>| classify(&n.rect(side), codebook, &n.live);
    if nodes.len() >= PAR_THRESHOLD {
        nodes.par_iter().map(f).collect()
    } else {
        nodes.iter().map(f).collect()
    }
}

/// Mass and first moments captured by each codeword.
pub(crate) struct Capture<S> {
    pub mass: Vec<S>,
    pub moment_x: Vec<S>,
    pub moment_y: Vec<S>,
}

impl<S: Scalar> Capture<S> {
    fn new(n: usize) -> Self {
        Capture { mass: vec![S::zero(); n], moment_x: vec![S::zero(); n], moment_y: vec![S::zero(); n] }
    }

    fn add(&mut self, owner: usize, mass: &S, center: &Point<S>) {
        self.mass[owner] = self.mass[owner].clone() + mass.clone();
        self.moment_x[owner] = self.moment_x[owner].clone() + mass.clone() * center.x.clone();
        self.moment_y[owner] = self.moment_y[owner].clone() + mass.clone() * center.y.clone();
    }
}

/// Voronoi partition at cell resolution down to `depth`.
///
/// Returns the captured masses and the cells still unresolved at `depth`.
/// When `relaxed`, those cells are instead given wholly to the codeword
/// nearest their centre and the returned list is empty.
pub(crate) fn partition<S: Scalar>(codebook: &Codebook<S>, depth: u32, relaxed: bool) -> (Capture<S>, Vec<Node<S>>) {
    let mut cap = Capture::new(codebook.len());
    let mut frontier = vec![Node::root(codebook.len())];
    for d in 0..=depth {
        let (side, mass) = level_scale::<S>(d);
        let verdicts = classify_level(&frontier, &side, codebook);
        let mut open = Vec::new();
        for (mut node, v) in frontier.into_iter().zip(verdicts) {
            match v {
                Verdict::Owned(a) => cap.add(a, &mass, &node.rect(&side).center()),
                Verdict::Live(live) => {
                    node.live = live;
                    open.push(node);
                }
            }
        }
        if open.is_empty() {
            return (cap, open);
        }
        if d == depth {
            if relaxed {
                for node in &open {
                    let c = node.rect(&side).center();
                    let a = nearest_of(codebook, &node.live, &c);
                    cap.add(a, &mass, &c);
                }
                open.clear();
            }
            return (cap, open);
        }
        frontier = open.iter().flat_map(|n| n.children(&side)).collect();
    }
    unreachable!("loop returns at the last level")
}

pub(crate) fn nearest_of<S: Scalar>(codebook: &Codebook<S>, live: &[usize], p: &Point<S>) -> usize {
    let pts = codebook.points();
    let mut best = live[0];
    let mut best_d = pts[best].dist2(p);
    for &i in &live[1..] {
        let d = pts[i].dist2(p);
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    best
}
