use rayon::prelude::*;

use super::Image;

/// Affine map sending `min(img)` to `lo` and `max(img)` to `hi`.
///
/// A constant image maps to the midpoint `(lo + hi) / 2`.
pub fn rescale(img: &Image, lo: f64, hi: f64) -> Image {
    assert!(lo < hi, "rescale needs lo < hi");
    let (min, max) = img.min_max();
    if max <= min {
        let mid = 0.5 * (lo + hi);
        return img.map(|_| mid);
    }
    let scale = (hi - lo) / (max - min);
    img.map(|v| {
        if v == max {
            hi
        } else {
            lo + (v - min) * scale
        }
    })
}

/// Half-sample symmetric reflection of `i` into `0..n` (`-1 -> 0`, `n -> n-1`).
#[inline]
pub(crate) fn reflect(i: i64, n: usize) -> usize {
    let n = n as i64;
    let period = 2 * n;
    let mut r = i.rem_euclid(period);
    if r >= n {
        r = period - 1 - r;
    }
    r as usize
}

/// Sampled, normalized Gaussian of standard deviation `sigma` with radius
/// `ceil(3 sigma)`. Index `radius` is the center tap.
pub fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    assert!(sigma > 0.0);
    let radius = (3.0 * sigma).ceil() as i64;
    let mut k: Vec<f64> = (-radius..=radius)
        .map(|i| (-(i * i) as f64 / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = k.iter().sum();
    k.iter_mut().for_each(|v| *v /= sum);
    k
}

/// Separable Gaussian convolution with a reflecting boundary, applied to
/// every channel. `sigma = 0` returns the input unchanged.
pub fn gaussian_smooth(img: &Image, sigma: f64) -> Image {
    assert!(sigma >= 0.0 && sigma.is_finite(), "sigma must be >= 0");
    if sigma == 0.0 {
        return img.clone();
    }
    let kernel = gaussian_kernel(sigma);
    let radius = (kernel.len() / 2) as i64;
    let (w, h, c) = (img.width(), img.height(), img.channels());
    let src = img.data();

    let mut horiz = vec![0.0; src.len()];
    horiz
        .par_chunks_mut(w * c)
        .enumerate()
        .for_each(|(y, row)| {
            for x in 0..w {
                for ch in 0..c {
                    let mut acc = 0.0;
                    for (k, wk) in kernel.iter().enumerate() {
                        let xs = reflect(x as i64 + k as i64 - radius, w);
                        acc += wk * src[(y * w + xs) * c + ch];
                    }
                    row[x * c + ch] = acc;
                }
            }
        });

    let mut out = vec![0.0; src.len()];
    out.par_chunks_mut(w * c).enumerate().for_each(|(y, row)| {
        for x in 0..w {
            for ch in 0..c {
                let mut acc = 0.0;
                for (k, wk) in kernel.iter().enumerate() {
                    let ys = reflect(y as i64 + k as i64 - radius, h);
                    acc += wk * horiz[(ys * w + x) * c + ch];
                }
                row[x * c + ch] = acc;
            }
        }
    });
    Image::from_vec(w, h, c, out).expect("smoothing keeps samples finite")
}
