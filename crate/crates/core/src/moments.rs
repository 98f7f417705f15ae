//! Exact centroids and single-centre distortion integrals over basic
//! rectangles, tail unions, Cantor cells, and disjoint unions of them.
//!
//! Both marginals have mean 1/2 and variance 1/8, so a region with mass `p`,
//! axis ratios `s1, s2` and centroid `m` satisfies
//! `∫_R ‖x − c‖² dP = p·((s1² + s2²)/8 + ‖m − c‖²)`.

use crate::error::{domain, Result};
use crate::measure::{cantor_point, map_s, ratio, Address, Axis, Point, Region};
use crate::scalar::Scalar;
use crate::words::{PairWord, TailMarker};

/// Mass, centroid and second moment about the centroid of a region or union.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSummary<S> {
    pub mass: S,
    pub centroid: Point<S>,
    pub second_moment: S,
}

impl<S: Scalar> MomentSummary<S> {
    pub fn of_region(region: &Region<S>) -> Self {
        MomentSummary {
            mass: region.mass().clone(),
            centroid: region_centroid(region),
            second_moment: region.mass().clone() * (region.ratio_x().square() + region.ratio_y().square())
                / S::ratio(8, 1),
        }
    }

    /// Summary of the disjoint union of two pieces.
    pub fn merge(&self, other: &MomentSummary<S>) -> MomentSummary<S> {
        let mass = self.mass.clone() + other.mass.clone();
        let centroid = Point::new(
            (self.mass.clone() * self.centroid.x.clone() + other.mass.clone() * other.centroid.x.clone())
                / mass.clone(),
            (self.mass.clone() * self.centroid.y.clone() + other.mass.clone() * other.centroid.y.clone())
                / mass.clone(),
        );
        let second_moment = self.second_moment.clone()
            + self.mass.clone() * self.centroid.dist2(&centroid)
            + other.second_moment.clone()
            + other.mass.clone() * other.centroid.dist2(&centroid);
        MomentSummary { mass, centroid, second_moment }
    }

    /// `∫ ‖x − c‖² dP` over the summarised set.
    pub fn distortion_about(&self, center: &Point<S>) -> S {
        self.second_moment.clone() + self.mass.clone() * self.centroid.dist2(center)
    }
}

/// `a(ω) = S_ω(1/2, 1/2)`.
pub fn centroid<S: Scalar>(omega: &PairWord) -> Point<S> {
    map_s::<S>(omega).apply(&Point::center())
}

/// Conditional mean of a tail union `ω(·,·)`.
///
/// With `ν` the word `ω` whose last symbol is advanced by one on each
/// infinite axis, the mean is `S_ν(1/2, 1/2)` shifted by the ratio of `S_ν`
/// along every infinite axis.
pub fn tail_centroid<S: Scalar>(omega: &PairWord, tail: TailMarker) -> Result<Point<S>> {
    if omega.is_empty() {
        return domain("tail centroid of the empty word");
    }
    let (tx, ty) = tail.axes();
    if !tx && !ty {
        return domain("tail centroid needs a tail marker");
    }
    let nu = omega.bump_last(u32::from(tx), u32::from(ty));
    let base = centroid::<S>(&nu);
    let dx = if tx { ratio::<S>(&nu, Axis::X) } else { S::zero() };
    let dy = if ty { ratio::<S>(&nu, Axis::Y) } else { S::zero() };
    Ok(Point::new(base.x + dx, base.y + dy))
}

/// Centroid of any region kind.
pub fn region_centroid<S: Scalar>(region: &Region<S>) -> Point<S> {
    match region.address() {
        Address::Basic { word, tail: TailMarker::None } => centroid(word),
        Address::Basic { word, tail } => tail_centroid(word, *tail).expect("tail regions have nonempty words"),
        Address::Cantor { x, y } => Point::new(cantor_point(x), cantor_point(y)),
    }
}

/// Summary of a disjoint union (disjointness is the caller's contract).
pub fn union_summary<S: Scalar>(regions: &[Region<S>]) -> Result<MomentSummary<S>> {
    let mut iter = regions.iter().map(MomentSummary::of_region);
    let Some(first) = iter.next() else {
        return domain("union of no regions");
    };
    Ok(iter.fold(first, |acc, s| acc.merge(&s)))
}

/// Mass-weighted centroid of a disjoint union of regions.
pub fn union_centroid<S: Scalar>(regions: &[Region<S>]) -> Result<Point<S>> {
    let mut mass = S::zero();
    let mut mx = S::zero();
    let mut my = S::zero();
    for r in regions {
        let c = region_centroid(r);
        mass = mass + r.mass().clone();
        mx = mx + r.mass().clone() * c.x;
        my = my + r.mass().clone() * c.y;
    }
    if regions.is_empty() {
        return domain("union of no regions");
    }
    if mass.is_zero() {
        return domain("union has zero mass");
    }
    Ok(Point::new(mx / mass.clone(), my / mass))
}

/// `∫_R ‖x − c‖² dP` for one region.
pub fn single_center_distortion<S: Scalar>(region: &Region<S>, center: &Point<S>) -> S {
    MomentSummary::of_region(region).distortion_about(center)
}

/// Sum of [`single_center_distortion`] over disjoint regions.
pub fn union_distortion<S: Scalar>(regions: &[Region<S>], center: &Point<S>) -> S {
    regions.iter().fold(S::zero(), |acc, r| acc + single_center_distortion(r, center))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::prob;
    use num_rational::BigRational;
    use num_traits::Signed;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn pw(s: &str) -> PairWord {
        s.parse().unwrap()
    }

    fn pt(x: Q, y: Q) -> Point<Q> {
        Point::new(x, y)
    }

    fn tail(w: &str, t: TailMarker) -> Region<Q> {
        Region::tail(pw(w), t).unwrap()
    }

    #[test]
    fn basic_centroids() {
        assert_eq!(centroid::<Q>(&pw("(1,1)")), pt(q(1, 6), q(1, 6)));
        assert_eq!(centroid::<Q>(&PairWord::empty()), pt(q(1, 2), q(1, 2)));
        assert_eq!(centroid::<Q>(&pw("(1,1)(1,1)")), pt(q(1, 18), q(1, 18)));
    }

    #[test]
    fn tail_centroid_examples() {
        assert_eq!(tail_centroid::<Q>(&pw("(1,1)"), TailMarker::InfEmpty).unwrap(), pt(q(5, 6), q(1, 6)));
        assert_eq!(tail_centroid::<Q>(&pw("(1,1)"), TailMarker::EmptyInf).unwrap(), pt(q(1, 6), q(5, 6)));
        assert_eq!(tail_centroid::<Q>(&pw("(1,1)"), TailMarker::InfInf).unwrap(), pt(q(5, 6), q(5, 6)));
        assert_eq!(
            tail_centroid::<Q>(&pw("(1,1)(1,1)"), TailMarker::EmptyInf).unwrap(),
            pt(q(1, 18), q(5, 18))
        );
        assert!(tail_centroid::<Q>(&pw("(1,1)"), TailMarker::None).is_err());
        assert!(tail_centroid::<Q>(&PairWord::empty(), TailMarker::InfInf).is_err());
    }

    #[test]
    fn tail_centroid_matches_cantor_route() {
        for w in ["(1,1)", "(2,1)", "(1,3)(2,2)", "(3,1)(1,1)(2,4)"] {
            for t in [TailMarker::InfEmpty, TailMarker::EmptyInf, TailMarker::InfInf] {
                let r = tail(w, t);
                let (x, y) = r.cantor_address();
                let via_cantor = pt(cantor_point(&x), cantor_point(&y));
                assert_eq!(tail_centroid::<Q>(&pw(w), t).unwrap(), via_cantor, "{w}{}", t.suffix());
            }
        }
    }

    #[test]
    fn union_centroid_examples() {
        let a = Region::basic(pw("(1,1)"));
        let b = tail("(1,1)", TailMarker::InfEmpty);
        let c = tail("(1,1)", TailMarker::InfInf);
        let d = tail("(1,1)", TailMarker::EmptyInf);
        assert_eq!(union_centroid(&[a.clone(), b.clone()]).unwrap(), pt(q(1, 2), q(1, 6)));
        assert_eq!(union_centroid(&[b.clone(), c.clone()]).unwrap(), pt(q(5, 6), q(1, 2)));
        assert_eq!(union_centroid(&[a.clone(), d.clone()]).unwrap(), pt(q(1, 6), q(1, 2)));
        assert_eq!(union_centroid(&[d, c]).unwrap(), pt(q(1, 2), q(5, 6)));
        assert_eq!(union_centroid(&Region::<Q>::root().children()).unwrap(), Point::center());
        assert!(union_centroid::<Q>(&[]).is_err());
    }

    #[test]
    fn distortion_examples() {
        let root = Region::<Q>::basic(PairWord::empty());
        assert_eq!(single_center_distortion(&root, &Point::center()), q(1, 4));
        let c = pt(q(1, 10), q(7, 9));
        assert_eq!(single_center_distortion(&root, &c), q(1, 4) + c.dist2(&Point::center()));
        let t = tail("(1,1)", TailMarker::InfEmpty);
        let at = tail_centroid::<Q>(&pw("(1,1)"), TailMarker::InfEmpty).unwrap();
        assert_eq!(single_center_distortion(&t, &at), q(1, 144));
    }

    #[test]
    fn left_column_distortion() {
        let regions = [Region::basic(pw("(1,1)")), tail("(1,1)", TailMarker::EmptyInf)];
        assert_eq!(union_distortion(&regions, &pt(q(1, 6), q(1, 2))), q(5, 72));
        let single = tail("(2,1)", TailMarker::InfInf);
        let c = pt(q(2, 7), q(1, 3));
        assert_eq!(union_distortion(std::slice::from_ref(&single), &c), single_center_distortion(&single, &c));
    }

    /// Truncated-sum oracle for the tail unions: sums the member rectangles
    /// `J_ω⁻(i+a, j+b)` with `a, b ≤ m` directly.
    fn truncated_members(w: &str, t: TailMarker, m: u32) -> Vec<Region<Q>> {
        let word = pw(w);
        let (tx, ty) = t.axes();
        let mut out = Vec::new();
        for a in 1..=m {
            for b in 1..=m {
                let (da, db) = (if tx { a } else { 0 }, if ty { b } else { 0 });
                if (!tx && a > 1) || (!ty && b > 1) {
                    continue;
                }
                out.push(Region::basic(word.bump_last(da, db)));
            }
        }
        out
    }

    #[test]
    fn tail_closed_forms_agree_with_truncated_sums() {
        let m = 30;
        for w in ["(1,1)", "(2,3)", "(1,2)(3,1)"] {
            for t in [TailMarker::InfEmpty, TailMarker::EmptyInf, TailMarker::InfInf] {
                let members = truncated_members(w, t, m);
                let s = union_summary(&members).unwrap();
                let closed = tail_centroid::<Q>(&pw(w), t).unwrap();
                // Missing mass relative to the tail is at most 2·2^-m; every
                // coordinate lies in [0, 1].
                let deficit = (prob::<Q>(&pw(w)) - s.mass.clone()) / prob::<Q>(&pw(w));
                assert!(deficit <= q(2, 1) * Q::inv_pow(2, m));
                let bound = deficit.clone() * q(2, 1);
                assert!((s.centroid.x.clone() - closed.x.clone()).abs() <= bound);
                assert!((s.centroid.y.clone() - closed.y.clone()).abs() <= bound);
                let region = tail(w, t);
                let exact = single_center_distortion(&region, &closed);
                let approx = union_distortion(&members, &closed);
                assert!((exact - approx).abs() <= bound * prob::<Q>(&pw(w)) * q(2, 1));
            }
        }
    }

    #[test]
    fn tail_distortions_about_own_centroids_coincide() {
        let words = ["(1,1)", "(2,1)", "(1,3)", "(2,2)(1,1)", "(1,2)(3,1)", "(1,1)(1,2)(2,1)"];
        for w in words {
            let word = pw(w);
            let expected = prob::<Q>(&word)
                * (ratio::<Q>(&word, Axis::X).square() + ratio::<Q>(&word, Axis::Y).square())
                / q(8, 1);
            let basic = Region::<Q>::basic(word.clone());
            assert_eq!(single_center_distortion(&basic, &centroid(&word)), expected);
            for t in [TailMarker::InfEmpty, TailMarker::EmptyInf, TailMarker::InfInf] {
                let r = tail(w, t);
                assert_eq!(single_center_distortion(&r, &region_centroid(&r)), expected);
            }
        }
    }

    #[test]
    fn refinement_preserves_union_centroid_and_moments() {
        let regions = vec![Region::basic(pw("(1,2)")), tail("(2,1)", TailMarker::InfInf), Region::cantor(
            "12".parse().unwrap(),
            "2".parse().unwrap(),
        )];
        let refined: Vec<_> = regions.iter().flat_map(|r| r.children()).collect();
        assert_eq!(union_centroid(&regions).unwrap(), union_centroid(&refined).unwrap());
        let c = pt(q(1, 5), q(3, 4));
        for r in &regions {
            assert_eq!(single_center_distortion(r, &c), union_distortion(&r.children(), &c));
        }
    }

    #[test]
    fn parallel_axis_identity() {
        let r = tail("(1,2)", TailMarker::EmptyInf);
        let m = region_centroid(&r);
        let c = pt(q(2, 3), q(-1, 5));
        assert_eq!(
            single_center_distortion(&r, &c),
            single_center_distortion(&r, &m) + r.mass().clone() * c.dist2(&m)
        );
    }
}
