//! Information functionals as functions of a local fractal dimension, and
//! empirical sphere-growth dimensions of patch graphs.
//!
//! In a metric measure space of dimension `delta` the ball volumes are
//! `s(d) = U(delta) d^delta` with `U` the interpolated unit-ball volume.
//! The exponential weighting then gives
//!
//! ```text
//! ln f^V = M * int_0^inf q^d s(d) dd
//! ln f^P = M * int_0^inf q^d d s(d) dd
//! ```
//!
//! Both integrals have closed forms in terms of the Gamma function. The
//! quadrature is the reference evaluator; see [`ExponentConvention`] for the
//! two closed forms on offer.

use std::io::Write;

use rayon::prelude::*;
use statrs::function::gamma::gamma;

use crate::image::{Image, Pixel};
use crate::patch::{adaptive_patch_graph, dijkstra, Neighborhood, PatchGraph};
use crate::{Error, Result};

/// Volume of the unit ball in (interpolated) dimension `delta`,
/// `pi^(delta/2) / Gamma(delta/2 + 1)`.
pub fn unit_sphere_volume(delta: f64) -> f64 {
    assert!(delta >= 0.0, "dimension must be non-negative");
    std::f64::consts::PI.powf(delta / 2.0) / gamma(delta / 2.0 + 1.0)
}

/// Which power of `-ln q` the closed forms carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentConvention {
    /// `(-ln q)^-(delta+1)`, the value of the integral.
    Integral,
    /// `(-ln q)^(delta+1)`, as the formula is usually printed. It does not
    /// evaluate the integral, but it is the form whose curves show the
    /// qualitative behaviour described for the functionals.
    Printed,
}

impl ExponentConvention {
    pub fn name(self) -> &'static str {
        match self {
            ExponentConvention::Integral => "integral",
            ExponentConvention::Printed => "printed",
        }
    }

    fn sign(self) -> f64 {
        match self {
            ExponentConvention::Integral => -1.0,
            ExponentConvention::Printed => 1.0,
        }
    }
}

impl std::str::FromStr for ExponentConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "integral" => Ok(ExponentConvention::Integral),
            "printed" => Ok(ExponentConvention::Printed),
            _ => Err(Error::InvalidParameter(format!("unknown exponent convention {s:?}"))),
        }
    }
}

fn check_q(q: f64) {
    assert!(q > 0.0 && q < 1.0, "q must lie in (0, 1)");
}

/// `M * U(delta) * Gamma(delta + 1 + extra) * (-ln q)^(±(delta + 1 + extra))`.
fn closed_form(delta: f64, q: f64, m: f64, extra: f64, convention: ExponentConvention) -> f64 {
    check_q(q);
    let k = delta + 1.0 + extra;
    m * (-q.ln()).powf(convention.sign() * k) * unit_sphere_volume(delta) * gamma(k)
}

/// Closed form of `ln f^V`.
pub fn ln_fv_closed_form(delta: f64, q: f64, m: f64, convention: ExponentConvention) -> f64 {
    closed_form(delta, q, m, 0.0, convention)
}

/// Closed form of `ln f^P`.
pub fn ln_fp_closed_form(delta: f64, q: f64, m: f64, convention: ExponentConvention) -> f64 {
    closed_form(delta, q, m, 1.0, convention)
}

/// `ln f^V` by quadrature.
pub fn ln_fv_of_dimension(delta: f64, q: f64, m: f64) -> f64 {
    check_q(q);
    m * unit_sphere_volume(delta) * laplace_moment(delta, q)
}

/// `ln f^P` by quadrature.
pub fn ln_fp_of_dimension(delta: f64, q: f64, m: f64) -> f64 {
    check_q(q);
    m * unit_sphere_volume(delta) * laplace_moment(delta + 1.0, q)
}

/// `int_0^inf q^d d^k dd` by adaptive Simpson quadrature. The range is cut
/// where the integrand has dropped below `1e-16` of its peak, and split at
/// the peak.
fn laplace_moment(k: f64, q: f64) -> f64 {
    let a = -q.ln();
    let f = |d: f64| if d == 0.0 { if k == 0.0 { 1.0 } else { 0.0 } } else { (k * d.ln() - a * d).exp() };
    let peak_at = k / a;
    let peak = f(peak_at);
    let mut end = peak_at.max(1.0 / a);
    while f(end) > 1e-16 * peak {
        end *= 2.0;
    }
    let mut total = 0.0;
    let mut lo = 0.0;
    for hi in [peak_at, end] {
        if hi > lo {
            total += adaptive_simpson(&f, lo, hi, 1e-14 * peak * end, 60);
            lo = hi;
        }
    }
    total
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (fa, fb) = (f(a), f(b));
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * tol {
        return left + right + diff / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// The closed-form convention that reproduces the quadrature at `(q, m)`
/// over a few test dimensions, together with the worst relative error of
/// each convention.
pub fn select_convention(q: f64, m: f64) -> (ExponentConvention, f64, f64) {
    let worst = |conv: ExponentConvention| {
        [0.0, 0.5, 1.0, 1.5, 2.0]
            .iter()
            .flat_map(|&d| {
                [
                    rel_err(ln_fv_closed_form(d, q, m, conv), ln_fv_of_dimension(d, q, m)),
                    rel_err(ln_fp_closed_form(d, q, m, conv), ln_fp_of_dimension(d, q, m)),
                ]
            })
            .fold(0.0, f64::max)
    };
    let (ei, ep) = (worst(ExponentConvention::Integral), worst(ExponentConvention::Printed));
    let best = if ei <= ep { ExponentConvention::Integral } else { ExponentConvention::Printed };
    (best, ei, ep)
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub delta: f64,
    pub ln_fv: f64,
    pub ln_fp: f64,
}

/// `ln f^V` and `ln f^P` tabulated over dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionCurve {
    pub q: f64,
    pub m: f64,
    pub samples: Vec<CurveSample>,
}

/// How a [`DimensionCurve`] evaluates its samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveSource {
    Quadrature,
    ClosedForm(ExponentConvention),
}

/// `n + 1` evenly spaced dimensions from 0 to 2.
pub fn delta_grid(n: usize) -> Vec<f64> {
    (0..=n).map(|i| 2.0 * i as f64 / n as f64).collect()
}

/// Tabulates the functionals by quadrature.
pub fn dimension_curve(q: f64, m: f64, deltas: &[f64]) -> Result<DimensionCurve> {
    dimension_curve_from(q, m, deltas, CurveSource::Quadrature)
}

pub fn dimension_curve_from(q: f64, m: f64, deltas: &[f64], source: CurveSource) -> Result<DimensionCurve> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!("q = {q} outside (0, 1)")));
    }
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::InvalidParameter(format!("M = {m} must be positive")));
    }
    if deltas.iter().any(|d| !(0.0..=2.0).contains(d)) || deltas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "dimensions must increase strictly within [0, 2]".into(),
        ));
    }
    let samples = deltas
        .par_iter()
        .map(|&delta| {
            let (ln_fv, ln_fp) = match source {
                CurveSource::Quadrature => (ln_fv_of_dimension(delta, q, m), ln_fp_of_dimension(delta, q, m)),
                CurveSource::ClosedForm(c) => (ln_fv_closed_form(delta, q, m, c), ln_fp_closed_form(delta, q, m, c)),
            };
            CurveSample { delta, ln_fv, ln_fp }
        })
        .collect();
    Ok(DimensionCurve { q, m, samples })
}

/// Shape of a tabulated sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    NonMonotonic,
}

/// Strict monotonicity from the signs of consecutive differences.
pub fn monotonicity(values: &[f64]) -> Monotonicity {
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    if diffs.iter().all(|&d| d > 0.0) {
        Monotonicity::Increasing
    } else if diffs.iter().all(|&d| d < 0.0) {
        Monotonicity::Decreasing
    } else {
        Monotonicity::NonMonotonic
    }
}

impl DimensionCurve {
    pub fn ln_fv(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.ln_fv).collect()
    }

    pub fn ln_fp(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.ln_fp).collect()
    }

    /// CSV with header `delta,ln_fv,ln_fp`.
    pub fn write_csv(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "delta,ln_fv,ln_fp")?;
        for s in &self.samples {
            writeln!(out, "{},{},{}", s.delta, s.ln_fv, s.ln_fp)?;
        }
        Ok(())
    }
}

/// Ball volumes of a patch graph around its center.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrowthSample {
    pub radii: Vec<f64>,
    pub volumes: Vec<f64>,
}

impl SphereGrowthSample {
    /// CSV with header `d,volume`.
    pub fn write_csv(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "d,volume")?;
        for (d, v) in self.radii.iter().zip(&self.volumes) {
            writeln!(out, "{d},{v}")?;
        }
        Ok(())
    }
}

fn check_radii(radii: &[f64]) -> Result<()> {
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) || radii[0] < 0.0 {
        return Err(Error::InvalidParameter("radii must be non-negative and increasing".into()));
    }
    Ok(())
}

/// Number of vertices within each radius of the center, from sorted
/// center distances.
fn volumes_from_distances(sorted: &[f64], radii: &[f64]) -> Vec<f64> {
    radii
        .iter()
        .map(|&r| sorted.partition_point(|&d| d <= r) as f64)
        .collect()
}

/// Counts the vertices of `g` whose shortest-path distance from the
/// center (vertex 0) is at most each radius.
pub fn sphere_growth(g: &PatchGraph, radii: &[f64]) -> Result<SphereGrowthSample> {
    check_radii(radii)?;
    let tree = dijkstra(g, None);
    if tree.vertex_count() != g.vertex_count() {
        return Err(Error::Disconnected);
    }
    let mut d = tree.dist.clone();
    d.sort_by(f64::total_cmp);
    Ok(SphereGrowthSample {
        radii: radii.to_vec(),
        volumes: volumes_from_distances(&d, radii),
    })
}

/// Ball volumes summed over the amoebas of radius `rho` around `centers`.
///
/// Pooling keeps the growth exponent of the individual balls while lifting
/// volumes well above one on rough images, where single amoebas barely
/// grow at all.
pub fn pooled_sphere_growth(
    u: &Image,
    centers: &[Pixel],
    rho: f64,
    beta: f64,
    nbhd: Neighborhood,
    radii: &[f64],
) -> Result<SphereGrowthSample> {
    check_radii(radii)?;
    if centers.is_empty() {
        return Err(Error::InvalidParameter("no centers to pool".into()));
    }
    let per_center: Vec<Vec<f64>> = centers
        .par_iter()
        .map(|&p| {
            let (_, tree) = adaptive_patch_graph(u, p, rho, beta, nbhd);
            // settle order is sorted by distance
            volumes_from_distances(&tree.dist, radii)
        })
        .collect();
    let mut volumes = vec![0.0; radii.len()];
    for v in &per_center {
        for (acc, x) in volumes.iter_mut().zip(v) {
            *acc += x;
        }
    }
    Ok(SphereGrowthSample {
        radii: radii.to_vec(),
        volumes,
    })
}

/// Pixels at least `margin` away from every border.
pub fn interior_centers(width: usize, height: usize, margin: usize) -> Vec<Pixel> {
    let mut out = Vec::new();
    for y in margin..height.saturating_sub(margin) {
        for x in margin..width.saturating_sub(margin) {
            out.push(Pixel::new(x, y));
        }
    }
    out
}

/// Least-squares slope of `ln volume` against `ln d` over the samples with
/// `d` in `[dmin, dmax]` and volume at least 2.
pub fn fit_local_dimension(s: &SphereGrowthSample, fit_range: (f64, f64)) -> Result<f64> {
    let pts: Vec<(f64, f64)> = s
        .radii
        .iter()
        .zip(&s.volumes)
        .filter(|&(&d, &v)| d >= fit_range.0 && d <= fit_range.1 && d > 0.0 && v >= 2.0)
        .map(|(&d, &v)| (d.ln(), v.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientSamples(format!(
            "{} usable radii in [{}, {}], need 3",
            pts.len(),
            fit_range.0,
            fit_range.1
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
