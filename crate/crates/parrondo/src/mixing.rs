//! Compound-game construction in probability space: linear mixtures, a
//! one-parameter family of bent paths between the two component games, and
//! signed distance from a point to the fair boundary curve.

use crate::analysis::{boundary_p2, classify_point, ProbabilityPoint, Region, DEFAULT_REGION_TOL};
use crate::error::{Error, Result};
use crate::model::{CapitalGameB, GameA, Probability};

/// Shape of a mixing path between two probability points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PathKind {
    /// Straight segment.
    Linear,
    /// Quadratic Bezier arc. The control point sits at the segment
    /// midpoint, displaced by the parameter along the segment's unit
    /// normal, so the sign of the parameter picks the side of the bulge.
    Bent(f64),
}

/// A parametric path through probability space from a game B point at
/// t = 0 to game A's diagonal point at t = 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixPath {
    endpoint_a: ProbabilityPoint,
    endpoint_b: ProbabilityPoint,
    kind: PathKind,
}

impl MixPath {
    /// A straight path between the two endpoints.
    pub fn linear(endpoint_a: ProbabilityPoint, endpoint_b: ProbabilityPoint) -> Self {
        Self {
            endpoint_a,
            endpoint_b,
            kind: PathKind::Linear,
        }
    }

    /// A bent path between the two endpoints. Fails when kappa is not
    /// finite, or when the endpoints coincide with kappa nonzero, since a
    /// zero-length segment has no normal to displace along.
    pub fn bent(
        endpoint_a: ProbabilityPoint,
        endpoint_b: ProbabilityPoint,
        kappa: f64,
    ) -> Result<Self> {
        if !kappa.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "path curvature must be finite, got {kappa}"
            )));
        }
        let dx = endpoint_a.p2.value() - endpoint_b.p2.value();
        let dy = endpoint_a.p3.value() - endpoint_b.p3.value();
        if kappa != 0.0 && dx == 0.0 && dy == 0.0 {
            return Err(Error::InvalidArgument(
                "a bent path needs distinct endpoints".to_string(),
            ));
        }
        Ok(Self {
            endpoint_a,
            endpoint_b,
            kind: PathKind::Bent(kappa),
        })
    }

    /// The game A endpoint, reached at t = 1.
    pub fn endpoint_a(&self) -> ProbabilityPoint {
        self.endpoint_a
    }

    /// The game B endpoint, reached at t = 0.
    pub fn endpoint_b(&self) -> ProbabilityPoint {
        self.endpoint_b
    }

    /// The path's shape.
    pub fn kind(&self) -> PathKind {
        self.kind
    }

    fn control(&self, kappa: f64) -> (f64, f64) {
        let (bx, by) = (self.endpoint_b.p2.value(), self.endpoint_b.p3.value());
        let (ax, ay) = (self.endpoint_a.p2.value(), self.endpoint_a.p3.value());
        let mid = (0.5 * (bx + ax), 0.5 * (by + ay));
        if kappa == 0.0 {
            return mid;
        }
        let (dx, dy) = (ax - bx, ay - by);
        let len = dx.hypot(dy);
        (mid.0 - kappa * dy / len, mid.1 + kappa * dx / len)
    }
}

/// The compound point of mixing game A into game B with weight gamma:
/// (gamma p1 + (1-gamma) p2, gamma p1 + (1-gamma) p3).
pub fn linear_mix(a: &GameA, b: &CapitalGameB, gamma: f64) -> Result<ProbabilityPoint> {
    if !gamma.is_finite() || !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidArgument(format!(
            "mixing parameter must lie in [0, 1], got {gamma}"
        )));
    }
    let p1 = a.p1().value();
    let mix = |p: f64| Probability::new((gamma * p1 + (1.0 - gamma) * p).clamp(0.0, 1.0));
    Ok(ProbabilityPoint::new(
        mix(b.p2().value())?,
        mix(b.p3().value())?,
    ))
}

/// Evaluates a path at parameter t in [0, 1]. The endpoints are returned
/// exactly; interior points of a bent path that leave the unit square are
/// an error, since they are not probabilities.
pub fn path_point(path: &MixPath, t: f64) -> Result<ProbabilityPoint> {
    if !t.is_finite() || !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "path parameter must lie in [0, 1], got {t}"
        )));
    }
    let (bx, by) = (path.endpoint_b.p2.value(), path.endpoint_b.p3.value());
    let (ax, ay) = (path.endpoint_a.p2.value(), path.endpoint_a.p3.value());
    let (x, y) = match path.kind {
        PathKind::Linear => ((1.0 - t) * bx + t * ax, (1.0 - t) * by + t * ay),
        PathKind::Bent(kappa) => {
            let (cx, cy) = path.control(kappa);
            let w0 = (1.0 - t) * (1.0 - t);
            let w1 = 2.0 * (1.0 - t) * t;
            let w2 = t * t;
            (w0 * bx + w1 * cx + w2 * ax, w0 * by + w1 * cy + w2 * ay)
        }
    };
    if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
        return Err(Error::PathOutOfRange { t, x, y });
    }
    Ok(ProbabilityPoint::new(
        Probability::new(x)?,
        Probability::new(y)?,
    ))
}

/// Embeds a probability point as a playable capital-dependent game:
/// scenario 1 uses p2, every other residue uses p3.
pub fn compound_from_point(point: ProbabilityPoint, m: u32) -> Result<CapitalGameB> {
    CapitalGameB::new(point.p2, point.p3, m)
}

const GOLDEN_RATIO_CONJUGATE: f64 = 0.618_033_988_749_894_8;

fn golden_minimum(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut x1 = hi - GOLDEN_RATIO_CONJUGATE * (hi - lo);
    let mut x2 = lo + GOLDEN_RATIO_CONJUGATE * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > 1e-10 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN_RATIO_CONJUGATE * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN_RATIO_CONJUGATE * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Euclidean distance from a point to the fair boundary curve, positive in
/// the winning region and negative otherwise. The curve parameter is first
/// scanned on a coarse grid to bracket the nearest segment, then refined by
/// golden-section search.
pub fn signed_boundary_distance(point: ProbabilityPoint, m: u32) -> Result<f64> {
    let distance_sq = |q: f64| -> f64 {
        let curve_p2 = boundary_p2(Probability::new(q).expect("scan stays in range"), m)
            .expect("modulus validated below")
            .value();
        let dx = point.p2.value() - curve_p2;
        let dy = point.p3.value() - q;
        dx * dx + dy * dy
    };
    boundary_p2(Probability::new(0.0)?, m)?;

    const SCAN: usize = 1000;
    let mut best = 0;
    let mut best_value = f64::INFINITY;
    for i in 0..=SCAN {
        let value = distance_sq(i as f64 / SCAN as f64);
        if value < best_value {
            best_value = value;
            best = i;
        }
    }
    let lo = best.saturating_sub(1) as f64 / SCAN as f64;
    let hi = (best + 1).min(SCAN) as f64 / SCAN as f64;
    let q = golden_minimum(lo, hi, distance_sq);
    let distance = distance_sq(q).sqrt();

    let sign = if classify_point(point, m, DEFAULT_REGION_TOL)? == Region::Winning {
        1.0
    } else {
        -1.0
    };
    Ok(sign * distance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::exact_drift;
    use crate::model::{build_modified_games, build_parrondo_games, BiasParams, GameSpec};
    use proptest::prelude::*;

    fn p(v: f64) -> Probability {
        Probability::new(v).unwrap()
    }

    fn point(p2: f64, p3: f64) -> ProbabilityPoint {
        ProbabilityPoint::new(p(p2), p(p3))
    }

    fn published_endpoints() -> (ProbabilityPoint, ProbabilityPoint) {
        (point(0.495, 0.495), point(0.095, 0.745))
    }

    fn modified_endpoints() -> (ProbabilityPoint, ProbabilityPoint) {
        (point(0.495, 0.495), point(0.095, 0.625))
    }

    #[test]
    fn linear_mix_reproduces_the_published_compound_point() {
        let (a, b) = build_parrondo_games(BiasParams::new(0.005, 3).unwrap()).unwrap();
        let mid = linear_mix(&a, &b, 0.5).unwrap();
        assert!((mid.p2.value() - 0.295).abs() < 1e-15);
        assert!((mid.p3.value() - 0.62).abs() < 1e-15);

        let pure_b = linear_mix(&a, &b, 0.0).unwrap();
        assert_eq!(pure_b.p2.value(), b.p2().value());
        assert_eq!(pure_b.p3.value(), b.p3().value());

        let pure_a = linear_mix(&a, &b, 1.0).unwrap();
        assert_eq!(pure_a.p2.value(), a.p1().value());
        assert_eq!(pure_a.p3.value(), a.p1().value());
    }

    #[test]
    fn linear_mix_rejects_out_of_range_weights() {
        let (a, b) = build_parrondo_games(BiasParams::new(0.005, 3).unwrap()).unwrap();
        assert!(matches!(
            linear_mix(&a, &b, -0.1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(linear_mix(&a, &b, 1.1).is_err());
        assert!(linear_mix(&a, &b, f64::NAN).is_err());
    }

    #[test]
    fn path_endpoints_are_exact_for_both_kinds() {
        let (a, b) = published_endpoints();
        for path in [MixPath::linear(a, b), MixPath::bent(a, b, 0.1).unwrap()] {
            assert_eq!(path_point(&path, 0.0).unwrap(), b);
            assert_eq!(path_point(&path, 1.0).unwrap(), a);
        }
    }

    #[test]
    fn linear_path_agrees_with_linear_mix() {
        let bias = BiasParams::new(0.005, 3).unwrap();
        let (game_a, game_b) = build_parrondo_games(bias).unwrap();
        let (a, b) = published_endpoints();
        let path = MixPath::linear(a, b);
        for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let on_path = path_point(&path, t).unwrap();
            let mixed = linear_mix(&game_a, &game_b, t).unwrap();
            assert!((on_path.p2.value() - mixed.p2.value()).abs() < 1e-15);
            assert!((on_path.p3.value() - mixed.p3.value()).abs() < 1e-15);
        }
    }

    #[test]
    fn bent_midpoint_is_displaced_half_kappa_along_the_normal() {
        let (a, b) = published_endpoints();
        let kappa = 0.1;
        let path = MixPath::bent(a, b, kappa).unwrap();
        let mid = path_point(&path, 0.5).unwrap();
        let straight = path_point(&MixPath::linear(a, b), 0.5).unwrap();

        let dx = mid.p2.value() - straight.p2.value();
        let dy = mid.p3.value() - straight.p3.value();
        let displacement = dx.hypot(dy);
        assert!(
            (displacement - 0.5 * kappa).abs() < 1e-15,
            "quadratic weights put the curve half of kappa off the chord, got {displacement}"
        );

        let sx = a.p2.value() - b.p2.value();
        let sy = a.p3.value() - b.p3.value();
        assert!(
            (dx * sx + dy * sy).abs() < 1e-15,
            "displacement is normal to the chord"
        );
    }

    #[test]
    fn bent_path_matches_direct_polynomial_evaluation() {
        let (a, b) = published_endpoints();
        let kappa = 0.07;
        let path = MixPath::bent(a, b, kappa).unwrap();
        let (cx, cy) = path.control(kappa);
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            let got = path_point(&path, t).unwrap();
            let x = (1.0 - t).powi(2) * b.p2.value()
                + 2.0 * (1.0 - t) * t * cx
                + t.powi(2) * a.p2.value();
            let y = (1.0 - t).powi(2) * b.p3.value()
                + 2.0 * (1.0 - t) * t * cy
                + t.powi(2) * a.p3.value();
            assert!((got.p2.value() - x).abs() < 1e-15);
            assert!((got.p3.value() - y).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_curvature_degenerates_to_the_straight_path() {
        let (a, b) = published_endpoints();
        let bent = MixPath::bent(a, b, 0.0).unwrap();
        let straight = MixPath::linear(a, b);
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            let curved = path_point(&bent, t).unwrap();
            let flat = path_point(&straight, t).unwrap();
            assert!((curved.p2.value() - flat.p2.value()).abs() <= 1e-15);
            assert!((curved.p3.value() - flat.p3.value()).abs() <= 1e-15);
        }
    }

    #[test]
    fn paths_that_leave_the_unit_square_are_errors() {
        let path = MixPath::bent(point(0.9, 0.02), point(0.5, 0.02), -0.1).unwrap();
        match path_point(&path, 0.5) {
            Err(Error::PathOutOfRange { t, y, .. }) => {
                assert_eq!(t, 0.5);
                assert!(y < 0.0);
            }
            other => panic!("expected out-of-range error, got {other:?}"),
        }
        assert!(path_point(&path, 0.0).is_ok());
        assert!(path_point(&path, 1.0).is_ok());
    }

    #[test]
    fn path_parameter_is_validated() {
        let (a, b) = published_endpoints();
        let path = MixPath::linear(a, b);
        assert!(matches!(
            path_point(&path, -0.01),
            Err(Error::InvalidArgument(_))
        ));
        assert!(path_point(&path, 1.01).is_err());
        assert!(path_point(&path, f64::NAN).is_err());
    }

    #[test]
    fn degenerate_bent_paths_are_rejected() {
        let a = point(0.3, 0.3);
        assert!(MixPath::bent(a, a, 0.0).is_ok());
        assert!(matches!(
            MixPath::bent(a, a, 0.1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(MixPath::bent(a, point(0.2, 0.2), f64::INFINITY).is_err());
    }

    #[test]
    fn point_embedding_reproduces_game_b_and_the_compound() {
        let b = compound_from_point(point(0.095, 0.745), 3).unwrap();
        assert_eq!(b.p2().value(), 0.095);
        assert_eq!(b.p3().value(), 0.745);
        assert!(exact_drift(&GameSpec::CapitalB(b)).unwrap() < 0.0);

        let c = compound_from_point(point(0.295, 0.62), 3).unwrap();
        assert!(exact_drift(&GameSpec::CapitalB(c)).unwrap() > 0.0);

        let fair = compound_from_point(point(0.5, 0.5), 3).unwrap();
        assert!(exact_drift(&GameSpec::CapitalB(fair)).unwrap().abs() < 1e-15);
    }

    #[test]
    fn distance_vanishes_on_the_curve() {
        for m in [3u32, 5] {
            for q in [0.2, 0.5, 0.8] {
                let p3 = p(q);
                let p2 = boundary_p2(p3, m).unwrap();
                let d = signed_boundary_distance(ProbabilityPoint::new(p2, p3), m).unwrap();
                assert!(d.abs() < 1e-8, "m {m} q {q} distance {d}");
            }
        }
    }

    #[test]
    fn distance_grows_moving_into_the_winning_region() {
        let mut previous = 0.0;
        for step in [0.01, 0.02, 0.05, 0.1] {
            let d = signed_boundary_distance(point(0.5 + step, 0.5), 3).unwrap();
            assert!(d > previous, "step {step} gave {d}, not above {previous}");
            previous = d;
        }
    }

    #[test]
    fn distance_matches_frozen_values_and_orders_the_published_points() {
        let compound = signed_boundary_distance(point(0.295, 0.62), 3).unwrap();
        let game_b = signed_boundary_distance(point(0.095, 0.745), 3).unwrap();
        assert!((compound - 0.011_081_750_226).abs() < 1e-8);
        assert!((game_b - (-0.007_069_618_263)).abs() < 1e-8);
        assert!(compound > game_b);
    }

    #[test]
    fn midpoint_drift_and_distance_rank_kappa_identically() {
        let (a, b) = modified_endpoints();
        let kappas = [-0.05, 0.0, 0.05, 0.1];
        let mut drifts = Vec::new();
        let mut distances = Vec::new();
        for &kappa in &kappas {
            let path = MixPath::bent(a, b, kappa).unwrap();
            let mid = path_point(&path, 0.5).unwrap();
            let game = compound_from_point(mid, 5).unwrap();
            drifts.push(exact_drift(&GameSpec::CapitalB(game)).unwrap());
            distances.push(signed_boundary_distance(mid, 5).unwrap());
        }

        let rank = |values: &[f64]| {
            let mut order: Vec<usize> = (0..values.len()).collect();
            order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
            order
        };
        assert_eq!(rank(&drifts), rank(&distances));
        assert_eq!(
            rank(&drifts),
            vec![0, 1, 2, 3],
            "drift increases with kappa here"
        );

        assert!((drifts[1] - 0.008_468_470).abs() < 1e-8);
        assert!((distances[0] - (-0.019_468_718)).abs() < 1e-7);
        assert!((distances[3] - 0.055_508_023).abs() < 1e-7);
    }

    #[test]
    fn modified_endpoints_match_the_builder() {
        let (a, b) = build_modified_games(BiasParams::new(0.005, 5).unwrap()).unwrap();
        let (pa, pb) = modified_endpoints();
        assert_eq!(a.p1().value(), pa.p2.value());
        assert_eq!(b.p2().value(), pb.p2.value());
        assert_eq!(b.p3().value(), pb.p3.value());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn golden_section_matches_a_dense_grid_scan(
            x in 0.05..=0.95f64,
            y in 0.05..=0.95f64,
            m in prop::sample::select(vec![3u32, 5]),
        ) {
            let pt = point(x, y);
            let signed = signed_boundary_distance(pt, m).unwrap();
            let dist = signed.abs();

            let mut best = f64::INFINITY;
            for i in 0..=10_000u32 {
                let q = f64::from(i) / 10_000.0;
                let curve = boundary_p2(p(q), m).unwrap().value();
                let d = (x - curve).hypot(y - q);
                if d < best {
                    best = d;
                }
            }

            // The refined minimum can never exceed the grid's.
            prop_assert!(dist <= best + 1e-8,
                "golden {} above grid {}", dist, best);

            // The grid overshoots a true minimum: its nearest sample sits up
            // to half a step from the minimizer, costing the half-step chord
            // near the curve and its quadratic refinement away from it. Both
            // bounds use the curves' maximum slope (4, at m = 5's center)
            // plus a curvature allowance on the quadratic term.
            let half_step = 0.5 / 10_000.0;
            let steepness = 1.0 + 4.0 * 4.0;
            let quadratic = steepness * (1.0 + 2.0 * dist) * half_step * half_step
                / (2.0 * dist);
            let chord = steepness.sqrt() * half_step;
            let slack = quadratic.min(chord) + 1e-9;
            prop_assert!(best - dist <= slack,
                "grid {} above golden {} by more than {}", best, dist, slack);
        }

        #[test]
        fn bent_paths_stay_inside_for_small_curvature(
            kappa in -0.05..=0.05f64,
            t in 0.0..=1.0f64,
        ) {
            let (a, b) = published_endpoints();
            let path = MixPath::bent(a, b, kappa).unwrap();
            let pt = path_point(&path, t).unwrap();
            prop_assert!((0.0..=1.0).contains(&pt.p2.value()));
            prop_assert!((0.0..=1.0).contains(&pt.p3.value()));
        }
    }
}
