//! One explicit time step of the level-set evolution.

use rayon::prelude::*;

use super::{EdgeMap, GacParams, LevelSetField};
use crate::image::reflect;

/// Regularizes the curvature term where the gradient vanishes.
const EPS: f64 = 1e-10;

/// Advances `u` by one step of length `params.tau`.
///
/// * curvature: central differences, `g (u_xx u_y^2 - 2 u_x u_y u_xy + u_yy u_x^2) / (|grad u|^2 + eps)`,
///   replaced by `g (u_xx + u_yy) / 2` where `|grad u|^2 <= eps`
/// * transport `<grad g, grad u>`: forward difference of `u` on an axis where
///   the central difference of `g` is positive, backward otherwise
/// * force `F = nu g`: Godunov-upwinded `F |grad u|`
///
/// Out-of-grid reads reflect at the border.
pub fn gac_step(u: &LevelSetField, e: &EdgeMap, params: &GacParams) -> LevelSetField {
    let (w, h) = u.dims();
    assert_eq!((w, h), e.dims(), "edge map size");
    let src = u.values();
    let g = e.values();
    let tau = params.tau;
    let nu = params.nu;
    let mut next = vec![0.0; src.len()];
    next.par_chunks_mut(w).enumerate().for_each(|(y, row)| {
        let ym = reflect(y as i64 - 1, h) * w;
        let yp = reflect(y as i64 + 1, h) * w;
        let yc = y * w;
        for x in 0..w {
            let xm = reflect(x as i64 - 1, w);
            let xp = reflect(x as i64 + 1, w);
            let c = src[yc + x];
            let (l, r, t, b) = (src[yc + xm], src[yc + xp], src[ym + x], src[yp + x]);

            let ux = 0.5 * (r - l);
            let uy = 0.5 * (b - t);
            let uxx = r - 2.0 * c + l;
            let uyy = b - 2.0 * c + t;
            let uxy = 0.25 * (src[yp + xp] - src[ym + xp] - src[yp + xm] + src[ym + xm]);
            let gc = g[yc + x];
            let grad2 = ux * ux + uy * uy;
            let curvature = if grad2 > EPS {
                gc * (uxx * uy * uy - 2.0 * ux * uy * uxy + uyy * ux * ux) / (grad2 + EPS)
            } else {
                // isotropic limit at a critical point, otherwise a symmetric
                // extremum is a fixed point and a shrinking contour never vanishes
                gc * 0.5 * (uxx + uyy)
            };

            let (dmx, dpx) = (c - l, r - c);
            let (dmy, dpy) = (c - t, b - c);
            let gx = 0.5 * (g[yc + xp] - g[yc + xm]);
            let gy = 0.5 * (g[yp + x] - g[ym + x]);
            let transport = gx * if gx > 0.0 { dpx } else { dmx } + gy * if gy > 0.0 { dpy } else { dmy };

            let f = nu * gc;
            let force = if f > 0.0 {
                f * grad_shrinking(dmx, dpx, dmy, dpy)
            } else if f < 0.0 {
                f * grad_growing(dmx, dpx, dmy, dpy)
            } else {
                0.0
            };

            row[x] = c + tau * (curvature + transport + force);
        }
    });
    LevelSetField {
        width: w,
        height: h,
        u: next,
        time: u.time + tau,
    }
}

/// Upwind `|grad u|` for a front moving towards `u > 0` (interior grows,
/// `u` decreases): information comes from the smaller neighbours.
#[inline]
fn grad_growing(dmx: f64, dpx: f64, dmy: f64, dpy: f64) -> f64 {
    (sq(dmx.max(0.0)) + sq(dpx.min(0.0)) + sq(dmy.max(0.0)) + sq(dpy.min(0.0))).sqrt()
}

/// The mirror image of [`grad_growing`], for `u` increasing.
#[inline]
fn grad_shrinking(dmx: f64, dpx: f64, dmy: f64, dpy: f64) -> f64 {
    (sq(dmx.min(0.0)) + sq(dpx.max(0.0)) + sq(dmy.min(0.0)) + sq(dpy.max(0.0))).sqrt()
}

#[inline]
fn sq(v: f64) -> f64 {
    v * v
}
