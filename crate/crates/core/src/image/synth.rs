use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{gaussian_smooth, rescale, Image, ShapeMask};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Stripes run horizontally (intensity varies with `y`).
    Horizontal,
    /// Stripes run vertically (intensity varies with `x`).
    Vertical,
}

/// Deterministic texture families used as stand-ins for photographic patches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TextureStyle {
    /// Uniform noise smoothed with a Gaussian of standard deviation `scale`,
    /// rescaled to a band of width `contrast` around mid-grey.
    Blobs { scale: f64, contrast: f64 },
    /// Sinusoidal waves of the given period and direction (radians) with
    /// additive uniform jitter of amplitude `jitter`.
    Waves {
        period: f64,
        angle: f64,
        contrast: f64,
        jitter: f64,
    },
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `tex_a` inside the mask, `tex_b` elsewhere.
pub fn synth_compose(tex_a: &Image, tex_b: &Image, mask: &ShapeMask) -> Result<Image> {
    if tex_a.dims() != tex_b.dims()
        || tex_a.dims() != mask.dims()
        || tex_a.channels() != tex_b.channels()
    {
        return Err(Error::DimensionMismatch(format!(
            "textures {:?}/{:?} and mask {:?} differ",
            tex_a.dims(),
            tex_b.dims(),
            mask.dims()
        )));
    }
    let c = tex_a.channels();
    let (w, _) = tex_a.dims();
    let data = tex_a
        .data()
        .iter()
        .zip(tex_b.data())
        .enumerate()
        .map(|(i, (&a, &b))| {
            let px = i / c;
            if mask.get(px % w, px / w) {
                a
            } else {
                b
            }
        })
        .collect();
    Image::from_vec(w, tex_a.height(), c, data)
}

/// Binary 0/255 stripes of the given period inside the mask; i.i.d. uniform
/// integers in `[0, 255]` elsewhere.
///
/// Noise is drawn for every pixel in row-major order, so the background does
/// not depend on the mask shape.
pub fn synth_stripe_noise(
    width: usize,
    height: usize,
    mask: &ShapeMask,
    period: usize,
    orientation: Orientation,
    seed: u64,
) -> Result<Image> {
    if period < 2 {
        return Err(Error::InvalidParameter(format!("stripe period {period} < 2")));
    }
    if mask.dims() != (width, height) {
        return Err(Error::DimensionMismatch(format!(
            "mask {:?} vs canvas {:?}",
            mask.dims(),
            (width, height)
        )));
    }
    let mut rng = rng(seed);
    Ok(Image::from_fn(width, height, |x, y| {
        let noise = rng.random_range(0..=255u32) as f64;
        if mask.get(x, y) {
            let t = match orientation {
                Orientation::Vertical => x,
                Orientation::Horizontal => y,
            };
            if 2 * (t % period) < period {
                0.0
            } else {
                255.0
            }
        } else {
            noise
        }
    }))
}

/// Block letter 'E' in the central 60% of the canvas.
///
/// A vertical bar on the left plus top, middle and bottom bars spanning the
/// letter width; every bar is `round(letter_height / 7)` pixels thick.
pub fn letter_e_mask(width: usize, height: usize) -> Result<ShapeMask> {
    if width < 40 || height < 40 {
        return Err(Error::InvalidParameter(format!(
            "letter canvas must be at least 40x40, got {width}x{height}"
        )));
    }
    let lw = (0.6 * width as f64).round() as usize;
    let lh = (0.6 * height as f64).round() as usize;
    let x0 = (width - lw) / 2;
    let y0 = (height - lh) / 2;
    let t = ((lh as f64 / 7.0).round() as usize).max(1);
    let mid = y0 + (lh - t) / 2;
    Ok(ShapeMask::from_fn(width, height, |x, y| {
        let in_box = x >= x0 && x < x0 + lw && y >= y0 && y < y0 + lh;
        if !in_box {
            return false;
        }
        let stem = x < x0 + t;
        let top = y < y0 + t;
        let middle = y >= mid && y < mid + t;
        let bottom = y >= y0 + lh - t;
        stem || top || middle || bottom
    }))
}

/// Deterministic synthetic texture with intensities in `[0, 255]`.
pub fn synth_texture(width: usize, height: usize, style: TextureStyle, seed: u64) -> Image {
    let mut rng = rng(seed);
    match style {
        TextureStyle::Blobs { scale, contrast } => {
            let noise = Image::from_fn(width, height, |_, _| rng.random::<f64>());
            let smooth = gaussian_smooth(&noise, scale);
            let half = 0.5 * contrast.clamp(0.0, 255.0);
            rescale(&smooth, 127.5 - half, 127.5 + half)
        }
        TextureStyle::Waves {
            period,
            angle,
            contrast,
            jitter,
        } => {
            let (s, c) = angle.sin_cos();
            let k = std::f64::consts::TAU / period;
            Image::from_fn(width, height, |x, y| {
                let phase = k * (c * x as f64 + s * y as f64);
                let v = 127.5 + 0.5 * contrast * phase.sin() + jitter * (rng.random::<f64>() - 0.5);
                v.clamp(0.0, 255.0)
            })
        }
    }
}

/// Texture inside the letter of [`synth_e_compose`]: smooth blobs.
pub const E_COMPOSE_INSIDE: TextureStyle = TextureStyle::Blobs {
    scale: 3.0,
    contrast: 120.0,
};

/// Texture around the letter of [`synth_e_compose`]: jittered oblique waves.
pub const E_COMPOSE_OUTSIDE: TextureStyle = TextureStyle::Waves {
    period: 8.0,
    angle: 0.6,
    contrast: 160.0,
    jitter: 40.0,
};

/// Stripe period of [`synth_e_stripes`].
pub const E_STRIPES_PERIOD: usize = 8;

/// Two-texture composite: [`E_COMPOSE_INSIDE`] within a letter 'E',
/// [`E_COMPOSE_OUTSIDE`] around it. Returns the image and the letter mask.
pub fn synth_e_compose(width: usize, height: usize, seed: u64) -> Result<(Image, ShapeMask)> {
    let mask = letter_e_mask(width, height)?;
    let inside = synth_texture(width, height, E_COMPOSE_INSIDE, 2 * seed + 1);
    let outside = synth_texture(width, height, E_COMPOSE_OUTSIDE, 2 * seed + 2);
    Ok((synth_compose(&inside, &outside, &mask)?, mask))
}

/// Vertical 0/255 stripes within a letter 'E' on uniform noise. Returns the
/// image and the letter mask.
pub fn synth_e_stripes(width: usize, height: usize, seed: u64) -> Result<(Image, ShapeMask)> {
    let mask = letter_e_mask(width, height)?;
    let img = synth_stripe_noise(width, height, &mask, E_STRIPES_PERIOD, Orientation::Vertical, seed)?;
    Ok((img, mask))
}
