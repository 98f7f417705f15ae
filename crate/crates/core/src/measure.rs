//! Contraction maps, weights and cells of the affine measure.
//!
//! The measure is generated by `S_(i,j)(x, y) = (T_i(x), T_j(y))` with
//! `T_k(x) = 3^(-k) x + 1 - 3^(1-k)` and weights `2^(-(i+j))`. It coincides
//! with the product of two Cantor distributions generated by
//! `U_1(x) = x/3` and `U_2(x) = x/3 + 2/3` with equal weights, and this
//! module exposes both descriptions.

use std::fmt;

use crate::error::{domain, Result};
use crate::scalar::Scalar;
use crate::words::{BinaryWord, NatAddress, NatWord, PairWord, TailMarker};

/// A point of the plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    /// The mean of the measure, `(1/2, 1/2)`.
    pub fn center() -> Self {
        Point::new(S::half(), S::half())
    }

    pub fn dist2(&self, other: &Point<S>) -> S {
        (self.x.clone() - other.x.clone()).square() + (self.y.clone() - other.y.clone()).square()
    }

    /// Converts coordinates to another scalar type (via `f64`).
    pub fn convert<T: Scalar>(&self) -> Point<T> {
        Point::new(crate::scalar::convert(&self.x), crate::scalar::convert(&self.y))
    }
}

impl<S: fmt::Display> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An affine map `x ↦ scale·x + offset` of the line.
#[derive(Debug, Clone, PartialEq)]
pub struct Map1D<S> {
    pub scale: S,
    pub offset: S,
}

impl<S: Scalar> Map1D<S> {
    pub fn new(scale: S, offset: S) -> Self {
        Map1D { scale, offset }
    }

    pub fn identity() -> Self {
        Map1D::new(S::one(), S::zero())
    }

    pub fn apply(&self, x: &S) -> S {
        self.scale.clone() * x.clone() + self.offset.clone()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Map1D<S>) -> Map1D<S> {
        Map1D::new(self.scale.clone() * inner.scale.clone(), self.apply(&inner.offset))
    }
}

/// A product of two line maps acting on the two coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Map2D<S> {
    pub horizontal: Map1D<S>,
    pub vertical: Map1D<S>,
}

impl<S: Scalar> Map2D<S> {
    pub fn identity() -> Self {
        Map2D { horizontal: Map1D::identity(), vertical: Map1D::identity() }
    }

    pub fn apply(&self, p: &Point<S>) -> Point<S> {
        Point::new(self.horizontal.apply(&p.x), self.vertical.apply(&p.y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// `T_k(x) = 3^(-k) x + 1 - 3^(1-k)`.
pub fn map_t<S: Scalar>(k: u32) -> Result<Map1D<S>> {
    if k < 1 {
        return domain("T_k needs k >= 1");
    }
    Ok(Map1D::new(S::inv_pow(3, k), S::one() - S::inv_pow(3, k - 1)))
}

/// `T_σ = T_σ1 ∘ … ∘ T_σk`.
pub fn map_t_word<S: Scalar>(sigma: &NatWord) -> Map1D<S> {
    sigma.symbols().iter().fold(Map1D::identity(), |acc, &k| {
        acc.compose(&map_t(k).expect("word symbols are >= 1"))
    })
}

/// `U_1(x) = x/3` or `U_2(x) = x/3 + 2/3`.
pub fn map_u_symbol<S: Scalar>(d: u8) -> Map1D<S> {
    let third = S::ratio(1, 3);
    match d {
        1 => Map1D::new(third, S::zero()),
        _ => Map1D::new(third, S::ratio(2, 3)),
    }
}

/// `U_σ = U_σ1 ∘ … ∘ U_σk`; the identity for the empty word.
pub fn map_u<S: Scalar>(sigma: &BinaryWord) -> Map1D<S> {
    // Scale is 3^-k; the offset accumulates 2/3·3^-(p) for every 2 at position p.
    let k = sigma.len() as u32;
    let mut offset = S::zero();
    for (p, &d) in sigma.symbols().iter().enumerate() {
        if d == 2 {
            offset = offset + S::ratio(2, 1) * S::inv_pow(3, p as u32 + 1);
        }
    }
    Map1D::new(S::inv_pow(3, k), offset)
}

/// `S_ω = S_ω1 ∘ … ∘ S_ωk`.
pub fn map_s<S: Scalar>(omega: &PairWord) -> Map2D<S> {
    let (h, v) = omega.components();
    Map2D { horizontal: map_t_word(&h), vertical: map_t_word(&v) }
}

/// `p_ω = 2^(-(Σ i + Σ j))`.
pub fn prob<S: Scalar>(omega: &PairWord) -> S {
    S::inv_pow(2, omega.weight() as u32)
}

/// Similarity ratio of `S_ω` along one axis, `3^(-Σ)` of that coordinate.
pub fn ratio<S: Scalar>(omega: &PairWord, axis: Axis) -> S {
    let (h, v) = omega.components();
    let w = match axis {
        Axis::X => h.weight(),
        Axis::Y => v.weight(),
    };
    S::inv_pow(3, w as u32)
}

/// `A(σ) = U_σ(1/2)`, the centre of the Cantor cell `A_σ`.
pub fn cantor_point<S: Scalar>(sigma: &BinaryWord) -> S {
    map_u::<S>(sigma).apply(&S::half())
}

/// Endpoints of `A_σ = U_σ[0, 1]`.
pub fn cell_interval<S: Scalar>(sigma: &BinaryWord) -> (S, S) {
    let u = map_u::<S>(sigma);
    (u.apply(&S::zero()), u.apply(&S::one()))
}

/// Cantor-measure mass of `A_σ`, `2^(-|σ|)`.
pub fn cantor_mass<S: Scalar>(sigma: &BinaryWord) -> S {
    S::inv_pow(2, sigma.len() as u32)
}

/// Marginal mass of `T_σ[0, 1]` under the infinite system with weights `2^(-k)`.
pub fn marginal_mass<S: Scalar>(sigma: &NatWord) -> S {
    S::inv_pow(2, sigma.weight() as u32)
}

/// Checks `T_σ(x) = U_{F(σ)}(x)` in the given scalar type.
pub fn conjugacy_check<S: Scalar>(sigma: &NatWord, x: &S) -> bool {
    let code = NatAddress::finite(sigma.clone()).to_binary();
    map_t_word::<S>(sigma).apply(x) == map_u::<S>(&code).apply(x)
}

/// Symbolic address of a region.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Address {
    /// A basic rectangle `J_ω`, or one of its tail unions.
    Basic { word: PairWord, tail: TailMarker },
    /// A product of Cantor cells `A_σ × A_τ`.
    Cantor { x: BinaryWord, y: BinaryWord },
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Address::Basic { word, tail } if word.is_empty() => write!(f, "∅{}", tail.suffix()),
            Address::Basic { word, tail } => write!(f, "{word}{}", tail.suffix()),
            Address::Cantor { x, y } => write!(f, "({x},{y})"),
        }
    }
}

/// A measurable piece of the support with its mass and per-axis scale.
///
/// For tail unions the ratios are those of `S_ω`; they are also the widths
/// of the equivalent Cantor cells, and they set the within-region variance
/// `mass·(ratio_x² + ratio_y²)/8`.
#[derive(Debug, Clone, PartialEq)]
pub struct Region<S> {
    address: Address,
    mass: S,
    ratio_x: S,
    ratio_y: S,
}

impl<S: Scalar> Region<S> {
    /// The basic rectangle `J_ω`.
    pub fn basic(word: PairWord) -> Self {
        let mass = prob(&word);
        let ratio_x = ratio(&word, Axis::X);
        let ratio_y = ratio(&word, Axis::Y);
        Region { address: Address::Basic { word, tail: TailMarker::None }, mass, ratio_x, ratio_y }
    }

    /// `J_ω` or one of its tail unions; tails need a nonempty word.
    pub fn tail(word: PairWord, tail: TailMarker) -> Result<Self> {
        if tail != TailMarker::None && word.is_empty() {
            return domain("tail unions need a nonempty word");
        }
        let mut r = Region::basic(word);
        if let Address::Basic { tail: t, .. } = &mut r.address {
            *t = tail;
        }
        Ok(r)
    }

    /// The Cantor product cell `A_σ × A_τ`.
    pub fn cantor(x: BinaryWord, y: BinaryWord) -> Self {
        let mass = S::inv_pow(2, (x.len() + y.len()) as u32);
        let ratio_x = S::inv_pow(3, x.len() as u32);
        let ratio_y = S::inv_pow(3, y.len() as u32);
        Region { address: Address::Cantor { x, y }, mass, ratio_x, ratio_y }
    }

    /// The whole support.
    pub fn root() -> Self {
        Region::cantor(BinaryWord::empty(), BinaryWord::empty())
    }

    pub fn address(&self) -> &Address {
        &self.address
    }

    pub fn mass(&self) -> &S {
        &self.mass
    }

    pub fn ratio_x(&self) -> &S {
        &self.ratio_x
    }

    pub fn ratio_y(&self) -> &S {
        &self.ratio_y
    }

    /// The equivalent Cantor-cell address (every basic rectangle and tail
    /// union is exactly one product of Cantor cells).
    pub fn cantor_address(&self) -> (BinaryWord, BinaryWord) {
        match &self.address {
            Address::Cantor { x, y } => (x.clone(), y.clone()),
            Address::Basic { word, tail } => {
                let (h, v) = word.components();
                let (tx, ty) = tail.axes();
                let hx = NatAddress::new(h, tx).expect("tail words are nonempty");
                let vy = NatAddress::new(v, ty).expect("tail words are nonempty");
                (hx.to_binary(), vy.to_binary())
            }
        }
    }

    /// Bounding rectangle `(x0, x1, y0, y1)`.
    pub fn bounds(&self) -> (S, S, S, S) {
        let (x, y) = self.cantor_address();
        let (x0, x1) = cell_interval(&x);
        let (y0, y1) = cell_interval(&y);
        (x0, x1, y0, y1)
    }

    /// A partition of the region into disjoint sub-regions.
    ///
    /// Cantor cells split into their four children. A basic rectangle `J_ω`
    /// splits as `J_ω(1,1)` plus the three tail unions of `ω(1,1)`; tail
    /// unions peel off their first member.
    pub fn children(&self) -> Vec<Region<S>> {
        match &self.address {
            Address::Cantor { x, y } => {
                let mut out = Vec::with_capacity(4);
                for i in 1..=2 {
                    for j in 1..=2 {
                        out.push(Region::cantor(x.child(i), y.child(j)));
                    }
                }
                out
            }
            Address::Basic { word, tail } => {
                let four = |w: PairWord| {
                    vec![
                        Region::basic(w.clone()),
                        Region::tail(w.clone(), TailMarker::InfEmpty).expect("nonempty"),
                        Region::tail(w.clone(), TailMarker::EmptyInf).expect("nonempty"),
                        Region::tail(w, TailMarker::InfInf).expect("nonempty"),
                    ]
                };
                match tail {
                    TailMarker::None => four(word.child(1, 1).expect("valid symbol")),
                    TailMarker::InfInf => four(word.bump_last(1, 1)),
                    TailMarker::InfEmpty => {
                        let w = word.bump_last(1, 0);
                        vec![Region::basic(w.clone()), Region::tail(w, TailMarker::InfEmpty).expect("nonempty")]
                    }
                    TailMarker::EmptyInf => {
                        let w = word.bump_last(0, 1);
                        vec![Region::basic(w.clone()), Region::tail(w, TailMarker::EmptyInf).expect("nonempty")]
                    }
                }
            }
        }
    }
}
