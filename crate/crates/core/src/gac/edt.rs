//! Exact squared Euclidean distance transform (two separable passes of the
//! lower-envelope-of-parabolas algorithm).

const FAR: f64 = 1e20;

/// Squared distance from every pixel to the nearest pixel with
/// `feature = true`. Without any feature pixel all entries stay huge.
pub fn squared_distance_transform(feature: &[bool], width: usize, height: usize) -> Vec<f64> {
    transform_2d(feature, width, height).0
}

/// Row-major index of a nearest feature pixel for every pixel, or `None`
/// when there is no feature at all.
pub fn nearest_feature(feature: &[bool], width: usize, height: usize) -> Option<Vec<usize>> {
    if !feature.iter().any(|&b| b) {
        return None;
    }
    Some(transform_2d(feature, width, height).1)
}

fn transform_2d(feature: &[bool], width: usize, height: usize) -> (Vec<f64>, Vec<usize>) {
    let mut f: Vec<f64> = feature.iter().map(|&b| if b { 0.0 } else { FAR }).collect();
    // row of the nearest feature within each column after the first pass
    let mut col_arg = vec![0usize; width * height];
    let mut arg = vec![0usize; width * height];
    let n = width.max(height);
    let mut scratch = Scratch::new(n);
    let mut line = vec![0.0; n];

    for x in 0..width {
        for y in 0..height {
            line[y] = f[y * width + x];
        }
        scratch.transform(&line[..height]);
        for y in 0..height {
            f[y * width + x] = scratch.out[y];
            col_arg[y * width + x] = scratch.arg[y];
        }
    }
    for y in 0..height {
        let row = &mut f[y * width..(y + 1) * width];
        scratch.transform(row);
        row.copy_from_slice(&scratch.out[..width]);
        for x in 0..width {
            let cx = scratch.arg[x];
            arg[y * width + x] = col_arg[y * width + cx] * width + cx;
        }
    }
    (f, arg)
}

struct Scratch {
    v: Vec<usize>,
    z: Vec<f64>,
    out: Vec<f64>,
    arg: Vec<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            v: vec![0; n],
            z: vec![0.0; n + 1],
            out: vec![0.0; n],
            arg: vec![0; n],
        }
    }

    fn transform(&mut self, f: &[f64]) {
        let n = f.len();
        let (v, z) = (&mut self.v, &mut self.z);
        let mut k = 0;
        v[0] = 0;
        z[0] = f64::NEG_INFINITY;
        z[1] = f64::INFINITY;
        for q in 1..n {
            let fq = f[q] + (q * q) as f64;
            // z[0] = -inf stops the backtracking at k = 0
            let mut s;
            loop {
                let p = v[k];
                s = (fq - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64));
                if s > z[k] {
                    break;
                }
                k -= 1;
            }
            k += 1;
            v[k] = q;
            z[k] = s;
            z[k + 1] = f64::INFINITY;
        }
        k = 0;
        for q in 0..n {
            while z[k + 1] < q as f64 {
                k += 1;
            }
            let d = q as f64 - v[k] as f64;
            self.out[q] = d * d + f[v[k]];
            self.arg[q] = v[k];
        }
    }
}
