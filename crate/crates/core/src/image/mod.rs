//! Real-valued images, binary masks and everything that reads, writes,
//! smooths or synthesizes them.

mod filter;
mod io;
mod synth;

use std::cmp::Ordering;

use crate::{Error, Result};

pub use filter::{gaussian_kernel, gaussian_smooth, rescale};
pub(crate) use filter::reflect;
pub use io::{load_image, load_image_with, load_mask, save_image, save_mask, ImageFormat};
pub use synth::{
    letter_e_mask, synth_compose, synth_e_compose, synth_e_stripes, synth_stripe_noise,
    synth_texture, Orientation, TextureStyle, E_COMPOSE_INSIDE, E_COMPOSE_OUTSIDE,
    E_STRIPES_PERIOD,
};

/// A pixel coordinate. Ordering is row-major: by `y`, then by `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pixel {
    pub x: usize,
    pub y: usize,
}

impl Pixel {
    pub const fn new(x: usize, y: usize) -> Self {
        Pixel { x, y }
    }

    pub fn distance(self, other: Pixel) -> f64 {
        let dx = self.x as f64 - other.x as f64;
        let dy = self.y as f64 - other.y as f64;
        (dx * dx + dy * dy).sqrt()
    }

    pub(crate) fn offset(self, dx: i64, dy: i64, width: usize, height: usize) -> Option<Pixel> {
        let x = self.x as i64 + dx;
        let y = self.y as i64 + dy;
        if x < 0 || y < 0 || x >= width as i64 || y >= height as i64 {
            None
        } else {
            Some(Pixel::new(x as usize, y as usize))
        }
    }
}

impl Ord for Pixel {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Pixel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rectangular grid of finite intensities with unit mesh size.
///
/// Samples are stored row-major with channels interleaved, so the value of
/// channel `c` at `(x, y)` lives at `(y * width + x) * channels + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<f64>,
}

impl Image {
    pub fn new(width: usize, height: usize, channels: usize) -> Self {
        Self::filled(width, height, channels, 0.0)
    }

    pub fn filled(width: usize, height: usize, channels: usize, value: f64) -> Self {
        assert!(width >= 1 && height >= 1 && channels >= 1, "empty image");
        assert!(value.is_finite());
        Image {
            width,
            height,
            channels,
            data: vec![value; width * height * channels],
        }
    }

    pub fn from_vec(width: usize, height: usize, channels: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || channels == 0 {
            return Err(Error::DimensionMismatch(format!(
                "image must be non-empty, got {width}x{height}x{channels}"
            )));
        }
        if data.len() != width * height * channels {
            return Err(Error::DimensionMismatch(format!(
                "{width}x{height}x{channels} image needs {} samples, got {}",
                width * height * channels,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite intensity {bad}")));
        }
        Ok(Image {
            width,
            height,
            channels,
            data,
        })
    }

    /// Builds a single-channel image by evaluating `f(x, y)`.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Image::from_vec(width, height, 1, data).expect("generator produced invalid samples")
    }

    /// Interleaves equally sized single-channel images.
    pub fn from_channels(planes: &[Image]) -> Result<Self> {
        let first = planes
            .first()
            .ok_or_else(|| Error::InvalidParameter("no channels to stack".into()))?;
        let (w, h) = first.dims();
        if let Some(p) = planes.iter().find(|p| p.dims() != (w, h) || p.channels != 1) {
            return Err(Error::DimensionMismatch(format!(
                "channel of size {}x{}x{} does not match {w}x{h}x1",
                p.width, p.height, p.channels
            )));
        }
        let c = planes.len();
        let mut data = vec![0.0; w * h * c];
        for (ch, plane) in planes.iter().enumerate() {
            for (i, v) in plane.data.iter().enumerate() {
                data[i * c + ch] = *v;
            }
        }
        Image::from_vec(w, h, c, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, c: usize) -> f64 {
        self.data[(y * self.width + x) * self.channels + c]
    }

    #[inline]
    pub fn at(&self, p: Pixel) -> f64 {
        self.get(p.x, p.y, 0)
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, c: usize, value: f64) {
        assert!(value.is_finite(), "non-finite intensity");
        self.data[(y * self.width + x) * self.channels + c] = value;
    }

    pub fn contains(&self, p: Pixel) -> bool {
        p.x < self.width && p.y < self.height
    }

    /// Extracts channel `c` as a single-channel image.
    pub fn channel(&self, c: usize) -> Image {
        assert!(c < self.channels, "channel {c} out of range");
        let data = self
            .data
            .iter()
            .skip(c)
            .step_by(self.channels)
            .copied()
            .collect();
        Image {
            width: self.width,
            height: self.height,
            channels: 1,
            data,
        }
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.data
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Image {
        Image::from_vec(
            self.width,
            self.height,
            self.channels,
            self.data.iter().map(|&v| f(v)).collect(),
        )
        .expect("mapped image has non-finite samples")
    }
}

/// Binary inside/outside mask over an image grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeMask {
    width: usize,
    height: usize,
    inside: Vec<bool>,
}

impl ShapeMask {
    pub fn new(width: usize, height: usize) -> Self {
        ShapeMask {
            width,
            height,
            inside: vec![false; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut inside = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                inside.push(f(x, y));
            }
        }
        ShapeMask {
            width,
            height,
            inside,
        }
    }

    pub fn from_vec(width: usize, height: usize, inside: Vec<bool>) -> Result<Self> {
        if inside.len() != width * height {
            return Err(Error::DimensionMismatch(format!(
                "{width}x{height} mask needs {} entries, got {}",
                width * height,
                inside.len()
            )));
        }
        Ok(ShapeMask {
            width,
            height,
            inside,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.inside[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.inside[y * self.width + x] = value;
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.inside
    }

    pub fn count_inside(&self) -> usize {
        self.inside.iter().filter(|&&b| b).count()
    }

    pub fn inverted(&self) -> ShapeMask {
        ShapeMask {
            width: self.width,
            height: self.height,
            inside: self.inside.iter().map(|b| !b).collect(),
        }
    }

    /// Number of pixels whose membership differs between the two masks.
    pub fn count_differences(&self, other: &ShapeMask) -> usize {
        self.inside
            .iter()
            .zip(&other.inside)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Renders the mask as an image with `inside` = 255 and outside = 0.
    pub fn to_image(&self) -> Image {
        Image::from_fn(self.width, self.height, |x, y| {
            if self.get(x, y) {
                255.0
            } else {
                0.0
            }
        })
    }

    /// Pixels strictly inside the mask whose 4-neighbours are all inside too.
    pub fn is_interior(&self, x: usize, y: usize) -> bool {
        if !self.get(x, y) {
            return false;
        }
        let p = Pixel::new(x, y);
        [(1, 0), (-1, 0), (0, 1), (0, -1)]
            .iter()
            .all(|&(dx, dy)| match p.offset(dx, dy, self.width, self.height) {
                Some(q) => self.get(q.x, q.y),
                None => true,
            })
    }
}
