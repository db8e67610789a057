//! Cycloid-family geometry.
//!
//! The three rolling-curve families that make up a mirror neuron's internal
//! dynamics: the cycloid traced by the motor core, the epicycloid traced by
//! the sensory core and the hypocycloid traced inside the intention wheel.
//! All curves live in a local frame centered at the neuron's origin.
//!
//! Closed forms (Cartesian inverse, slope identity, hypocycloid area and arc
//! length) are provided next to the parametric forms so the test suites can
//! cross-check them against brute-force numerics.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors for invalid curve parameters or evaluations outside a curve's domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("radius must be positive (got {0})")]
    NonPositiveRadius(f64),
    #[error("epicycloid ratio k must be positive (got {0})")]
    NonPositiveRatio(f64),
    #[error("hypocycloid ratio k must exceed 1 (got {0})")]
    RatioNotAboveOne(f64),
    #[error("expected a {expected:?} spec, got {got:?}")]
    FamilyMismatch { expected: CurveFamily, got: CurveFamily },
    #[error("y = {y} lies outside the cycloid arch range [0, {max}]")]
    OutsideArch { y: f64, max: f64 },
    #[error("cycloid slope is singular at the cusp (theta = {0})")]
    CuspSingularity(f64),
    #[error("closed forms need integer k >= 3 (got k = {0})")]
    UnsupportedShape(f64),
    #[error("sampling needs at least 2 points (got {0})")]
    TooFewSamples(usize),
    #[error("theta_end must exceed theta_start")]
    EmptyThetaRange,
}

/// A point of a rolled-curve trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Euclidean distance from the local origin.
    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveFamily {
    Cycloid,
    Epicycloid,
    Hypocycloid,
}

/// A validated description of one curve: the family, the rolling-circle
/// radius `r` and (for the circular families) the fixed-to-rolling ratio
/// `k`, so the fixed circle has radius `k * r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    family: CurveFamily,
    r: f64,
    k: f64,
}

impl CurveSpec {
    /// Cycloid rolling along the x-axis. The ratio is unused for this family.
    pub fn cycloid(r: f64) -> Result<Self, CurveError> {
        check_radius(r)?;
        Ok(Self { family: CurveFamily::Cycloid, r, k: 1.0 })
    }

    /// Epicycloid rolling outside a fixed circle of radius `k * r`; `k > 0`.
    pub fn epicycloid(r: f64, k: f64) -> Result<Self, CurveError> {
        check_radius(r)?;
        if !(k > 0.0) || !k.is_finite() {
            return Err(CurveError::NonPositiveRatio(k));
        }
        Ok(Self { family: CurveFamily::Epicycloid, r, k })
    }

    /// Hypocycloid rolling strictly inside a fixed circle of radius `k * r`;
    /// `k > 1`.
    pub fn hypocycloid(r: f64, k: f64) -> Result<Self, CurveError> {
        check_radius(r)?;
        if !(k > 1.0) || !k.is_finite() {
            return Err(CurveError::RatioNotAboveOne(k));
        }
        Ok(Self { family: CurveFamily::Hypocycloid, r, k })
    }

    pub fn family(&self) -> CurveFamily {
        self.family
    }

    pub fn rolling_radius(&self) -> f64 {
        self.r
    }

    pub fn ratio(&self) -> f64 {
        self.k
    }

    /// Fixed-circle radius `k * r` (equals `r` for the cycloid placeholder ratio).
    pub fn fixed_radius(&self) -> f64 {
        self.k * self.r
    }

    /// Trajectory point at rolling angle `theta`, dispatched by family.
    pub fn point_at(&self, theta: f64) -> Point2D {
        match self.family {
            CurveFamily::Cycloid => cycloid_point_unchecked(self.r, theta),
            CurveFamily::Epicycloid => epicycloid_point_unchecked(self.r, self.k, theta),
            CurveFamily::Hypocycloid => hypocycloid_point_unchecked(self.r, self.k, theta),
        }
    }
}

/// An ordered polyline sampled from a curve, with the angle window it covers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub points: Vec<Point2D>,
    pub theta_start: f64,
    pub theta_end: f64,
}

fn check_radius(r: f64) -> Result<(), CurveError> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(CurveError::NonPositiveRadius(r));
    }
    Ok(())
}

fn cycloid_point_unchecked(r: f64, theta: f64) -> Point2D {
    Point2D::new(r * (theta - theta.sin()), r * (1.0 - theta.cos()))
}

fn epicycloid_point_unchecked(r: f64, k: f64, theta: f64) -> Point2D {
    let outer = r * (k + 1.0);
    Point2D::new(
        outer * theta.cos() - r * ((k + 1.0) * theta).cos(),
        outer * theta.sin() - r * ((k + 1.0) * theta).sin(),
    )
}

fn hypocycloid_point_unchecked(r: f64, k: f64, theta: f64) -> Point2D {
    let inner = r * (k - 1.0);
    Point2D::new(
        inner * theta.cos() + r * ((k - 1.0) * theta).cos(),
        inner * theta.sin() - r * ((k - 1.0) * theta).sin(),
    )
}

/// Point of the cycloid of rolling radius `r` at angle `theta`:
/// `(r(θ − sin θ), r(1 − cos θ))`.
pub fn cycloid_point(r: f64, theta: f64) -> Result<Point2D, CurveError> {
    check_radius(r)?;
    Ok(cycloid_point_unchecked(r, theta))
}

/// Center of the rolling circle at angle `theta`: `(rθ, r)`.
pub fn cycloid_center(r: f64, theta: f64) -> Result<Point2D, CurveError> {
    check_radius(r)?;
    Ok(Point2D::new(r * theta, r))
}

/// Cartesian inverse of the cycloid on the first half-arch branch
/// (`0 ≤ θ ≤ π`): `x = r·arccos(1 − y/r) − sqrt(y(2r − y))`.
pub fn cycloid_x_of_y(r: f64, y: f64) -> Result<f64, CurveError> {
    check_radius(r)?;
    let max = 2.0 * r;
    if !(0.0..=max).contains(&y) {
        return Err(CurveError::OutsideArch { y, max });
    }
    Ok(r * (1.0 - y / r).acos() - (y * (max - y)).sqrt())
}

/// Residual of the cycloid slope identity `(dy/dx)² = 2r/y − 1`, evaluated
/// with the parametric slope `sin θ / (1 − cos θ)`.
///
/// The slope blows up at the cusps (`θ ∈ 2πZ`), so those angles are
/// rejected rather than returning a meaningless value.
pub fn cycloid_ode_residual(r: f64, theta: f64) -> Result<f64, CurveError> {
    check_radius(r)?;
    let one_minus_cos = 1.0 - theta.cos();
    if one_minus_cos == 0.0 {
        return Err(CurveError::CuspSingularity(theta));
    }
    let slope = theta.sin() / one_minus_cos;
    let y = r * one_minus_cos;
    Ok(slope * slope - (2.0 * r / y - 1.0))
}

fn expect_family(spec: &CurveSpec, expected: CurveFamily) -> Result<(), CurveError> {
    if spec.family != expected {
        return Err(CurveError::FamilyMismatch { expected, got: spec.family });
    }
    Ok(())
}

/// Epicycloid point at angle `theta`:
/// `(r(k+1)cos θ − r cos((k+1)θ), r(k+1)sin θ − r sin((k+1)θ))`.
pub fn epicycloid_point(spec: &CurveSpec, theta: f64) -> Result<Point2D, CurveError> {
    expect_family(spec, CurveFamily::Epicycloid)?;
    Ok(epicycloid_point_unchecked(spec.r, spec.k, theta))
}

/// Hypocycloid point at angle `theta`:
/// `(r(k−1)cos θ + r cos((k−1)θ), r(k−1)sin θ − r sin((k−1)θ))`.
pub fn hypocycloid_point(spec: &CurveSpec, theta: f64) -> Result<Point2D, CurveError> {
    expect_family(spec, CurveFamily::Hypocycloid)?;
    Ok(hypocycloid_point_unchecked(spec.r, spec.k, theta))
}

/// Integer cusp count for the closed forms; only integer `k >= 3` closes into
/// a curve with `k` cusps, so area and arc length are restricted to that case.
fn closed_cusp_count(spec: &CurveSpec) -> Result<f64, CurveError> {
    let rounded = spec.k.round();
    if (spec.k - rounded).abs() > 1e-9 || rounded < 3.0 {
        return Err(CurveError::UnsupportedShape(spec.k));
    }
    Ok(rounded)
}

/// Area enclosed by a closed hypocycloid: `(k−1)(k−2)πr²`.
pub fn hypocycloid_area(spec: &CurveSpec) -> Result<f64, CurveError> {
    expect_family(spec, CurveFamily::Hypocycloid)?;
    let k = closed_cusp_count(spec)?;
    Ok((k - 1.0) * (k - 2.0) * std::f64::consts::PI * spec.r * spec.r)
}

/// Arc length of a closed hypocycloid: `8(k−1)r`.
pub fn hypocycloid_arclength(spec: &CurveSpec) -> Result<f64, CurveError> {
    expect_family(spec, CurveFamily::Hypocycloid)?;
    let k = closed_cusp_count(spec)?;
    Ok(8.0 * (k - 1.0) * spec.r)
}

/// Uniformly sample `n` points of `spec` over `[theta_start, theta_end]`.
pub fn sample_curve(
    spec: &CurveSpec,
    theta_start: f64,
    theta_end: f64,
    n: usize,
) -> Result<Polyline, CurveError> {
    if n < 2 {
        return Err(CurveError::TooFewSamples(n));
    }
    if !(theta_end > theta_start) {
        return Err(CurveError::EmptyThetaRange);
    }
    let span = theta_end - theta_start;
    let steps = (n - 1) as f64;
    let points = (0..n)
        .map(|i| spec.point_at(theta_start + span * i as f64 / steps))
        .collect();
    Ok(Polyline { points, theta_start, theta_end })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn cycloid_point_known_angles() {
        let origin = cycloid_point(1.0, 0.0).unwrap();
        assert_eq!((origin.x, origin.y), (0.0, 0.0));

        let apex = cycloid_point(1.0, PI).unwrap();
        assert!(close(apex.x, PI, 1e-12));
        assert!(close(apex.y, 2.0, 1e-12));

        let quarter = cycloid_point(2.0, PI / 2.0).unwrap();
        assert!(close(quarter.x, PI - 2.0, 1e-12));
        assert!(close(quarter.y, 2.0, 1e-12));
    }

    #[test]
    fn cycloid_center_rides_at_height_r() {
        let c0 = cycloid_center(1.0, 0.0).unwrap();
        assert_eq!((c0.x, c0.y), (0.0, 1.0));
        let c1 = cycloid_center(1.0, TAU).unwrap();
        assert!(close(c1.x, TAU, 1e-12) && c1.y == 1.0);
        let c2 = cycloid_center(3.0, PI).unwrap();
        assert!(close(c2.x, 3.0 * PI, 1e-12) && c2.y == 3.0);
    }

    #[test]
    fn cycloid_rejects_bad_radius() {
        assert!(matches!(cycloid_point(0.0, 1.0), Err(CurveError::NonPositiveRadius(_))));
        assert!(matches!(cycloid_center(-1.0, 1.0), Err(CurveError::NonPositiveRadius(_))));
        assert!(matches!(cycloid_x_of_y(f64::NAN, 0.5), Err(CurveError::NonPositiveRadius(_))));
    }

    #[test]
    fn cartesian_inverse_known_values() {
        assert!(close(cycloid_x_of_y(1.0, 1.0).unwrap(), PI / 2.0 - 1.0, 1e-12));
        assert!(close(cycloid_x_of_y(1.0, 2.0).unwrap(), PI, 1e-12));
        assert!(close(cycloid_x_of_y(1.0, 0.0).unwrap(), 0.0, 1e-12));
    }

    #[test]
    fn cartesian_inverse_domain_error() {
        assert!(matches!(cycloid_x_of_y(1.0, 2.5), Err(CurveError::OutsideArch { .. })));
        assert!(matches!(cycloid_x_of_y(1.0, -0.1), Err(CurveError::OutsideArch { .. })));
    }

    #[test]
    fn ode_residual_vanishes_off_cusp() {
        assert!(close(cycloid_ode_residual(1.0, PI / 2.0).unwrap(), 0.0, 1e-12));
        assert!(close(cycloid_ode_residual(1.0, PI).unwrap(), 0.0, 1e-12));
        assert!(cycloid_ode_residual(5.0, 1.0).unwrap().abs() < 1e-9);
    }

    #[test]
    fn ode_residual_rejects_cusp() {
        assert!(matches!(cycloid_ode_residual(1.0, 0.0), Err(CurveError::CuspSingularity(_))));
        assert!(matches!(cycloid_ode_residual(1.0, TAU), Err(CurveError::CuspSingularity(_))));
    }

    #[test]
    fn epicycloid_known_points() {
        let cardioid = CurveSpec::epicycloid(1.0, 1.0).unwrap();
        let cusp = epicycloid_point(&cardioid, 0.0).unwrap();
        assert!(close(cusp.x, 1.0, 1e-12) && close(cusp.y, 0.0, 1e-12));
        let far = epicycloid_point(&cardioid, PI).unwrap();
        assert!(close(far.x, -3.0, 1e-12) && close(far.y, 0.0, 1e-12));

        let spec = CurveSpec::epicycloid(2.0, 3.0).unwrap();
        let p = epicycloid_point(&spec, PI / 2.0).unwrap();
        assert!(close(p.x, -2.0, 1e-12) && close(p.y, 8.0, 1e-12));
    }

    #[test]
    fn hypocycloid_known_points() {
        let deltoid = CurveSpec::hypocycloid(1.0, 3.0).unwrap();
        let cusp = hypocycloid_point(&deltoid, 0.0).unwrap();
        assert!(close(cusp.x, 3.0, 1e-12) && close(cusp.y, 0.0, 1e-12));
        let p = hypocycloid_point(&deltoid, PI).unwrap();
        assert!(close(p.x, -1.0, 1e-12) && close(p.y, 0.0, 1e-12));
    }

    #[test]
    fn spec_constructors_validate() {
        assert!(matches!(CurveSpec::epicycloid(1.0, 0.0), Err(CurveError::NonPositiveRatio(_))));
        assert!(matches!(CurveSpec::hypocycloid(1.0, 1.0), Err(CurveError::RatioNotAboveOne(_))));
        assert!(matches!(CurveSpec::cycloid(-2.0), Err(CurveError::NonPositiveRadius(_))));

        let epi = CurveSpec::epicycloid(1.0, 2.0).unwrap();
        assert!(matches!(
            hypocycloid_point(&epi, 0.0),
            Err(CurveError::FamilyMismatch { .. })
        ));
    }

    #[test]
    fn closed_forms_known_values() {
        let deltoid = CurveSpec::hypocycloid(1.0, 3.0).unwrap();
        assert!(close(hypocycloid_area(&deltoid).unwrap(), 2.0 * PI, 1e-12));
        assert!(close(hypocycloid_arclength(&deltoid).unwrap(), 16.0, 1e-12));

        let astroid = CurveSpec::hypocycloid(1.0, 4.0).unwrap();
        assert!(close(hypocycloid_area(&astroid).unwrap(), 6.0 * PI, 1e-12));
        assert!(close(hypocycloid_arclength(&astroid).unwrap(), 24.0, 1e-12));

        let scaled = CurveSpec::hypocycloid(2.0, 3.0).unwrap();
        assert!(close(hypocycloid_area(&scaled).unwrap(), 8.0 * PI, 1e-12));
    }

    #[test]
    fn closed_forms_reject_open_shapes() {
        let open = CurveSpec::hypocycloid(1.0, 2.5).unwrap();
        assert!(matches!(hypocycloid_area(&open), Err(CurveError::UnsupportedShape(_))));
        let tusi = CurveSpec::hypocycloid(1.0, 2.0).unwrap();
        assert!(matches!(hypocycloid_arclength(&tusi), Err(CurveError::UnsupportedShape(_))));
    }

    #[test]
    fn sample_curve_endpoints_and_counts() {
        let cyc = CurveSpec::cycloid(1.0).unwrap();
        let line = sample_curve(&cyc, 0.0, TAU, 3).unwrap();
        assert_eq!(line.points.len(), 3);
        assert!(close(line.points[0].x, 0.0, 1e-12) && close(line.points[0].y, 0.0, 1e-12));
        assert!(close(line.points[1].x, PI, 1e-12) && close(line.points[1].y, 2.0, 1e-12));
        assert!(close(line.points[2].x, TAU, 1e-12) && close(line.points[2].y, 0.0, 1e-12));

        assert!(matches!(sample_curve(&cyc, 0.0, 1.0, 1), Err(CurveError::TooFewSamples(1))));
        assert!(matches!(sample_curve(&cyc, 1.0, 1.0, 4), Err(CurveError::EmptyThetaRange)));
    }

    #[test]
    fn tusi_couple_degenerates_to_diameter() {
        let tusi = CurveSpec::hypocycloid(1.0, 2.0).unwrap();
        let line = sample_curve(&tusi, 0.0, TAU, 5).unwrap();
        assert!(line.points.iter().all(|p| p.y == 0.0));
    }

    #[test]
    fn cardioid_samples_stay_in_annulus() {
        let cardioid = CurveSpec::epicycloid(1.0, 1.0).unwrap();
        let line = sample_curve(&cardioid, 0.0, TAU, 101).unwrap();
        let max = line.points.iter().map(Point2D::norm).fold(0.0, f64::max);
        assert!(close(max, 3.0, 1e-9));
    }
}
