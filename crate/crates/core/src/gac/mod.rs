//! Geodesic active contours on a level-set function.
//!
//! The contour is the zero level set of `u`, with `u < 0` inside. The
//! evolution is
//!
//! ```text
//! u_t = g |grad u| div(grad u / |grad u|) + <grad g, grad u> + nu g |grad u|
//! ```
//!
//! stepped explicitly with upwind transport and force terms. A negative
//! force `nu` inflates the contour.

mod edt;
mod scheme;

use crate::image::{gaussian_smooth, reflect, Image, ShapeMask};
use crate::{Error, Result};

pub use edt::{nearest_feature, squared_distance_transform};
pub use scheme::gac_step;

/// Edge-stopping function `g = 1 / (1 + s^2 / lambda^2)` of the smoothed
/// gradient magnitude `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeMap {
    width: usize,
    height: usize,
    g: Vec<f64>,
    pub lambda: f64,
    pub sigma: f64,
}

impl EdgeMap {
    /// `g = 1` everywhere: pure curvature motion plus force.
    pub fn uniform(width: usize, height: usize) -> Self {
        EdgeMap {
            width,
            height,
            g: vec![1.0; width * height],
            lambda: f64::INFINITY,
            sigma: 0.0,
        }
    }

    /// Wraps precomputed values, which must lie in `(0, 1]`.
    pub fn from_values(width: usize, height: usize, g: Vec<f64>) -> Result<Self> {
        if g.len() != width * height {
            return Err(Error::DimensionMismatch(format!(
                "{} edge values for a {width}x{height} grid",
                g.len()
            )));
        }
        if let Some(v) = g.iter().find(|v| !(**v > 0.0 && **v <= 1.0)) {
            return Err(Error::InvalidParameter(format!("edge value {v} outside (0, 1]")));
        }
        Ok(EdgeMap {
            width,
            height,
            g,
            lambda: f64::NAN,
            sigma: f64::NAN,
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn values(&self) -> &[f64] {
        &self.g
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.g[y * self.width + x]
    }

    pub fn to_image(&self) -> Image {
        Image::from_vec(self.width, self.height, 1, self.g.clone()).expect("edge map is finite")
    }

    /// Shifts the map by `(dx, dy)`, filling uncovered pixels with 1.
    pub fn translated(&self, dx: i64, dy: i64) -> EdgeMap {
        let (w, h) = (self.width as i64, self.height as i64);
        let mut g = vec![1.0; self.g.len()];
        for y in 0..h {
            for x in 0..w {
                let (sx, sy) = (x - dx, y - dy);
                if sx >= 0 && sy >= 0 && sx < w && sy < h {
                    g[(y * w + x) as usize] = self.g[(sy * w + sx) as usize];
                }
            }
        }
        EdgeMap { g, ..self.clone() }
    }
}

/// Perona–Malik edge map of a (possibly multi-channel) image. The squared
/// gradient is summed over channels, i.e. the squared Frobenius norm of the
/// Jacobian.
pub fn edge_map(f: &Image, sigma: f64, lambda: f64) -> Result<EdgeMap> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!("lambda = {lambda} must be positive")));
    }
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!("sigma = {sigma} must be >= 0")));
    }
    let s = gaussian_smooth(f, sigma);
    let (w, h, c) = (f.width(), f.height(), f.channels());
    let mut g = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            let (xl, xr) = (reflect(x as i64 - 1, w), reflect(x as i64 + 1, w));
            let (yu, yd) = (reflect(y as i64 - 1, h), reflect(y as i64 + 1, h));
            let mut s2 = 0.0;
            for ch in 0..c {
                let fx = 0.5 * (s.get(xr, y, ch) - s.get(xl, y, ch));
                let fy = 0.5 * (s.get(x, yd, ch) - s.get(x, yu, ch));
                s2 += fx * fx + fy * fy;
            }
            g.push(1.0 / (1.0 + s2 / (lambda * lambda)));
        }
    }
    Ok(EdgeMap {
        width: w,
        height: h,
        g,
        lambda,
        sigma,
    })
}

/// Level-set function on the pixel grid plus the evolution time so far.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSetField {
    width: usize,
    height: usize,
    u: Vec<f64>,
    pub time: f64,
}

impl LevelSetField {
    pub fn from_vec(width: usize, height: usize, u: Vec<f64>) -> Result<Self> {
        if u.len() != width * height || width == 0 || height == 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} level-set values for a {width}x{height} grid",
                u.len()
            )));
        }
        if u.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite level-set value".into()));
        }
        Ok(LevelSetField {
            width,
            height,
            u,
            time: 0.0,
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn values(&self) -> &[f64] {
        &self.u
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.u[y * self.width + x]
    }

    /// Pixels with `u < 0`.
    pub fn mask(&self) -> ShapeMask {
        ShapeMask::from_vec(self.width, self.height, self.u.iter().map(|&v| v < 0.0).collect())
            .expect("dimensions match")
    }

    pub fn interior_area(&self) -> usize {
        self.u.iter().filter(|&&v| v < 0.0).count()
    }

    /// Interior area with sub-pixel resolution: each pixel contributes
    /// `clamp(1/2 - u, 0, 1)`, exact for a signed distance to a straight
    /// interface.
    pub fn coverage_area(&self) -> f64 {
        self.u.iter().map(|v| (0.5 - v).clamp(0.0, 1.0)).sum()
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.u
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)))
    }

    fn has_both_signs(&self) -> bool {
        let inside = self.interior_area();
        inside > 0 && inside < self.u.len()
    }

    /// Shifts the field by `(dx, dy)`, clamping reads at the border.
    pub fn translated(&self, dx: i64, dy: i64) -> LevelSetField {
        let (w, h) = (self.width as i64, self.height as i64);
        let mut u = Vec::with_capacity(self.u.len());
        for y in 0..h {
            for x in 0..w {
                let sx = (x - dx).clamp(0, w - 1);
                let sy = (y - dy).clamp(0, h - 1);
                u.push(self.u[(sy * w + sx) as usize]);
            }
        }
        LevelSetField { u, ..self.clone() }
    }
}

/// Initial contour geometry.
#[derive(Debug, Clone, PartialEq)]
pub enum ContourSpec {
    Circle { cx: f64, cy: f64, radius: f64 },
    /// Inclusive pixel corners.
    Rectangle { x0: usize, y0: usize, x1: usize, y1: usize },
    Mask(ShapeMask),
}

impl ContourSpec {
    /// The pixels `u < 0` of the initial field.
    pub fn rasterize(&self, width: usize, height: usize) -> ShapeMask {
        match *self {
            ContourSpec::Circle { cx, cy, radius } => ShapeMask::from_fn(width, height, |x, y| {
                (x as f64 - cx).hypot(y as f64 - cy) < radius
            }),
            ContourSpec::Rectangle { x0, y0, x1, y1 } => {
                ShapeMask::from_fn(width, height, |x, y| (x0..=x1).contains(&x) && (y0..=y1).contains(&y))
            }
            ContourSpec::Mask(ref m) => m.clone(),
        }
    }
}

/// Signed distance to the initial contour, negative inside.
///
/// Circles use the exact `|x - c| - R`; rectangles and masks use the
/// pixel-interface distance of [`mask_signed_distance`].
pub fn signed_distance(spec: &ContourSpec, width: usize, height: usize) -> Result<LevelSetField> {
    let mask = spec.rasterize(width, height);
    if mask.dims() != (width, height) {
        return Err(Error::DimensionMismatch(format!(
            "mask {:?} for a {width}x{height} grid",
            mask.dims()
        )));
    }
    let inside = mask.count_inside();
    if inside == 0 {
        return Err(Error::EmptyInterior);
    }
    if inside == width * height {
        return Err(Error::InvalidParameter("contour covers the whole domain".into()));
    }
    match *spec {
        ContourSpec::Circle { cx, cy, radius } => {
            let u = (0..width * height)
                .map(|i| ((i % width) as f64 - cx).hypot((i / width) as f64 - cy) - radius)
                .collect();
            LevelSetField::from_vec(width, height, u)
        }
        _ => Ok(mask_signed_distance(&mask)),
    }
}

/// Signed distance of a pixel mask: the Euclidean distance from each pixel
/// center to the nearest pixel of the opposite side, minus one half, and
/// negated inside. Pixels touching the interface get exactly `±0.5`.
pub fn mask_signed_distance(mask: &ShapeMask) -> LevelSetField {
    let (w, h) = mask.dims();
    let inside = mask.as_slice();
    let outside: Vec<bool> = inside.iter().map(|b| !b).collect();
    let to_inside = squared_distance_transform(inside, w, h);
    let to_outside = squared_distance_transform(&outside, w, h);
    let u = (0..w * h)
        .map(|i| {
            if inside[i] {
                0.5 - to_outside[i].sqrt()
            } else {
                to_inside[i].sqrt() - 0.5
            }
        })
        .collect();
    LevelSetField {
        width: w,
        height: h,
        u,
        time: 0.0,
    }
}

/// How [`reinitialize_with`] rebuilds the signed distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReinitMode {
    /// Distance to the zero crossings of `u`, located by linear
    /// interpolation between 4-neighbours of opposite sign.
    #[default]
    Subpixel,
    /// [`mask_signed_distance`] of the sign mask: the interface snaps to
    /// pixel edges.
    PixelInterface,
}

impl ReinitMode {
    pub fn name(self) -> &'static str {
        match self {
            ReinitMode::Subpixel => "subpixel",
            ReinitMode::PixelInterface => "pixel",
        }
    }
}

impl std::str::FromStr for ReinitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subpixel" => Ok(ReinitMode::Subpixel),
            "pixel" => Ok(ReinitMode::PixelInterface),
            _ => Err(Error::InvalidParameter(format!("unknown reinitialization {s:?}"))),
        }
    }
}

/// [`reinitialize_with`] in the default subpixel mode.
pub fn reinitialize(u: &LevelSetField) -> Result<LevelSetField> {
    reinitialize_with(u, ReinitMode::Subpixel)
}

/// Replaces `u` by a signed distance function with the same sign mask.
pub fn reinitialize_with(u: &LevelSetField, mode: ReinitMode) -> Result<LevelSetField> {
    if !u.has_both_signs() {
        return Err(Error::ContourVanished { iteration: 0 });
    }
    let mut out = match mode {
        ReinitMode::PixelInterface => mask_signed_distance(&u.mask()),
        ReinitMode::Subpixel => subpixel_signed_distance(u),
    };
    out.time = u.time;
    Ok(out)
}

fn subpixel_signed_distance(u: &LevelSetField) -> LevelSetField {
    let (w, h) = u.dims();
    let inside = |i: usize| u.u[i] < 0.0;
    let at = |x: usize, y: usize| u.u[y * w + x];
    // nearest zero-level point of each pixel that has a 4-neighbour of the
    // opposite sign, by a Newton step along the local gradient
    let mut points: Vec<Vec<(f64, f64)>> = vec![Vec::new(); w * h];
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            let mut crossings = Vec::new();
            for (dx, dy) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
                let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                    continue;
                }
                let j = ny as usize * w + nx as usize;
                if inside(i) != inside(j) {
                    let t = u.u[i] / (u.u[i] - u.u[j]);
                    crossings.push((x as f64 + t * dx as f64, y as f64 + t * dy as f64));
                }
            }
            if crossings.is_empty() {
                continue;
            }
            let diff = |lo: f64, hi: f64, span: usize| (hi - lo) / span as f64;
            let (xl, xr) = (x.saturating_sub(1), (x + 1).min(w - 1));
            let (yl, yr) = (y.saturating_sub(1), (y + 1).min(h - 1));
            let gx = if xr > xl { diff(at(xl, y), at(xr, y), xr - xl) } else { 0.0 };
            let gy = if yr > yl { diff(at(x, yl), at(x, yr), yr - yl) } else { 0.0 };
            let g2 = gx * gx + gy * gy;
            points[i] = if g2 > 1e-12 {
                let s = u.u[i] / g2;
                vec![(x as f64 - s * gx, y as f64 - s * gy)]
            } else {
                crossings
            };
        }
    }
    let boundary: Vec<bool> = points.iter().map(|p| !p.is_empty()).collect();
    let near = nearest_feature(&boundary, w, h).expect("both signs present");
    let values = (0..w * h)
        .map(|i| {
            let (x, y) = ((i % w) as f64, (i / w) as f64);
            let (bx, by) = (near[i] % w, near[i] / w);
            let mut best = f64::INFINITY;
            for ny in by.saturating_sub(2)..(by + 3).min(h) {
                for nx in bx.saturating_sub(2)..(bx + 3).min(w) {
                    for &(px, py) in &points[ny * w + nx] {
                        best = best.min((x - px).hypot(y - py));
                    }
                }
            }
            if inside(i) {
                -best
            } else {
                best
            }
        })
        .collect();
    LevelSetField {
        width: w,
        height: h,
        u: values,
        time: 0.0,
    }
}

/// Solver controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GacParams {
    /// Force weight; negative values inflate the contour.
    pub nu: f64,
    pub tau: f64,
    pub reinit_every: usize,
    pub max_iters: usize,
    /// Iterations without any mask change that count as a steady state.
    pub steady_window: usize,
    pub reinit: ReinitMode,
}

impl Default for GacParams {
    fn default() -> Self {
        GacParams {
            nu: -1.0,
            tau: 0.1,
            reinit_every: 100,
            max_iters: 20_000,
            steady_window: 100,
            reinit: ReinitMode::Subpixel,
        }
    }
}

impl GacParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau <= 0.25) {
            return Err(Error::InvalidParameter(format!("tau = {} outside (0, 0.25]", self.tau)));
        }
        if !self.nu.is_finite() {
            return Err(Error::InvalidParameter("nu must be finite".into()));
        }
        if self.reinit_every == 0 || self.steady_window == 0 {
            return Err(Error::InvalidParameter(
                "reinit interval and steady window must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// What the observer sees after every step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub time: f64,
    pub area: usize,
    /// Pixels whose inside/outside state flipped during this step.
    pub changed: usize,
}

/// Result of [`run_gac`].
#[derive(Debug, Clone, PartialEq)]
pub struct GacOutcome {
    pub field: LevelSetField,
    pub mask: ShapeMask,
    pub iterations: usize,
    /// Whether the run stopped on a steady state rather than `max_iters`.
    pub steady: bool,
    /// Last iteration that changed the mask (0 if none did).
    pub last_change: usize,
}

impl GacOutcome {
    /// Evolution time at which the mask last moved.
    pub fn settle_time(&self, tau: f64) -> f64 {
        self.last_change as f64 * tau
    }
}

/// Runs the evolution to a steady state or `max_iters`.
pub fn run_gac(u0: &LevelSetField, e: &EdgeMap, params: &GacParams) -> Result<GacOutcome> {
    run_gac_observed(u0, e, params, |_, _| {})
}

/// [`run_gac`] with a callback after every iteration.
pub fn run_gac_observed(
    u0: &LevelSetField,
    e: &EdgeMap,
    params: &GacParams,
    mut observe: impl FnMut(&IterationRecord, &LevelSetField),
) -> Result<GacOutcome> {
    params.validate()?;
    if u0.dims() != e.dims() {
        return Err(Error::DimensionMismatch(format!(
            "level set {:?} vs edge map {:?}",
            u0.dims(),
            e.dims()
        )));
    }
    if !u0.has_both_signs() {
        return Err(Error::ContourVanished { iteration: 0 });
    }
    let mut u = u0.clone();
    let mut mask = u.mask();
    let mut quiet = 0;
    let mut last_change = 0;
    for it in 1..=params.max_iters {
        u = gac_step(&u, e, params);
        if !u.has_both_signs() {
            return Err(Error::ContourVanished { iteration: it });
        }
        if it % params.reinit_every == 0 {
            u = reinitialize_with(&u, params.reinit)?;
        }
        let next = u.mask();
        let changed = next.count_differences(&mask);
        mask = next;
        observe(
            &IterationRecord {
                iteration: it,
                time: u.time,
                area: mask.count_inside(),
                changed,
            },
            &u,
        );
        if changed == 0 {
            quiet += 1;
        } else {
            quiet = 0;
            last_change = it;
        }
        if quiet >= params.steady_window {
            return Ok(GacOutcome {
                field: u,
                mask,
                iterations: it,
                steady: true,
                last_change,
            });
        }
    }
    Ok(GacOutcome {
        field: u,
        mask,
        iterations: params.max_iters,
        steady: false,
        last_change,
    })
}

/// `|a ∩ b| / |a ∪ b|`, with two empty masks scoring 1.
pub fn jaccard(a: &ShapeMask, b: &ShapeMask) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", a.dims(), b.dims())));
    }
    let (mut inter, mut union) = (0usize, 0usize);
    for (&p, &q) in a.as_slice().iter().zip(b.as_slice()) {
        inter += (p && q) as usize;
        union += (p || q) as usize;
    }
    Ok(if union == 0 { 1.0 } else { inter as f64 / union as f64 })
}

/// Fraction of pixels on which the masks agree.
pub fn pixel_accuracy(a: &ShapeMask, b: &ShapeMask) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", a.dims(), b.dims())));
    }
    let n = a.as_slice().len();
    Ok(1.0 - a.count_differences(b) as f64 / n as f64)
}

/// RGB rendering of `background` (channel 0, rescaled to [0, 255]) with the
/// inner boundary of `mask` drawn in red.
pub fn overlay(background: &Image, mask: &ShapeMask) -> Result<Image> {
    if background.dims() != mask.dims() {
        return Err(Error::DimensionMismatch(format!(
            "{:?} vs {:?}",
            background.dims(),
            mask.dims()
        )));
    }
    let grey = crate::image::rescale(&background.channel(0), 0.0, 255.0);
    let (w, h) = mask.dims();
    let mut data = Vec::with_capacity(w * h * 3);
    for y in 0..h {
        for x in 0..w {
            let v = grey.get(x, y, 0).round();
            let edge = mask.get(x, y) && !mask.is_interior(x, y);
            data.extend_from_slice(&if edge { [255.0, 0.0, 0.0] } else { [v, v, v] });
        }
    }
    Image::from_vec(w, h, 3, data)
}

#[cfg(test)]
mod tests;
