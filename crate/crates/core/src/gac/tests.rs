use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn circle(w: usize, h: usize, cx: f64, cy: f64, radius: f64) -> LevelSetField {
    signed_distance(&ContourSpec::Circle { cx, cy, radius }, w, h).unwrap()
}

/// Zero crossings on grid edges by linear interpolation.
fn zero_crossings(u: &LevelSetField) -> Vec<(f64, f64)> {
    let (w, h) = u.dims();
    let mut pts = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let a = u.get(x, y);
            if x + 1 < w {
                let b = u.get(x + 1, y);
                if (a < 0.0) != (b < 0.0) {
                    pts.push((x as f64 + a / (a - b), y as f64));
                }
            }
            if y + 1 < h {
                let b = u.get(x, y + 1);
                if (a < 0.0) != (b < 0.0) {
                    pts.push((x as f64, y as f64 + a / (a - b)));
                }
            }
        }
    }
    pts
}

fn radius_stats(u: &LevelSetField, cx: f64, cy: f64) -> (f64, f64) {
    let r: Vec<f64> = zero_crossings(u).iter().map(|&(x, y)| (x - cx).hypot(y - cy)).collect();
    let mean = r.iter().sum::<f64>() / r.len() as f64;
    let rms = (r.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / r.len() as f64).sqrt();
    (mean, rms)
}

#[test]
fn edge_map_examples() {
    let e = edge_map(&Image::filled(9, 9, 1, 77.0), 1.5, 0.1).unwrap();
    assert!(e.values().iter().all(|&g| g == 1.0));

    let lambda = 0.3;
    let ramp = Image::from_fn(9, 9, |x, _| lambda * x as f64);
    let e = edge_map(&ramp, 0.0, lambda).unwrap();
    assert!((e.get(4, 4) - 0.5).abs() < 1e-12);

    let wave = Image::from_fn(12, 10, |x, y| ((x * 7 + y * 3) % 11) as f64);
    let one = edge_map(&wave, 1.0, 2.0).unwrap();
    let two = edge_map(&Image::from_channels(&[wave.clone(), wave]).unwrap(), 1.0, 2.0).unwrap();
    for (a, b) in one.values().iter().zip(two.values()) {
        let s2 = (1.0 / a - 1.0) * 4.0;
        assert!((b - 1.0 / (1.0 + 2.0 * s2 / 4.0)).abs() < 1e-12);
    }
    assert!(edge_map(&ramp, 1.0, 0.0).is_err());
    assert!(EdgeMap::from_values(2, 1, vec![0.5, 0.0]).is_err());
}

#[test]
fn circle_signed_distance() {
    let u = circle(100, 100, 50.0, 50.0, 30.0);
    assert_eq!(u.get(50, 50), -30.0);
    let m = u.mask();
    for y in 0..100 {
        for x in 0..100 {
            let on_interface = m.get(x, y) != m.is_interior(x, y) || !(m.get(x, y) || m.inverted().is_interior(x, y));
            if on_interface {
                assert!(u.get(x, y).abs() <= 1.0);
            }
        }
    }
    let e = signed_distance(&ContourSpec::Circle { cx: 5.3, cy: 5.3, radius: 0.2 }, 10, 10);
    assert!(matches!(e, Err(Error::EmptyInterior)));
}

#[test]
fn mask_signed_distance_matches_quadratic_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let (cx, cy) = (rng.random_range(10.0..30.0), rng.random_range(10.0..30.0));
        let mask = ShapeMask::from_fn(40, 40, |x, y| {
            let (dx, dy) = (x as f64 - cx, y as f64 - cy);
            dx.abs() + 0.5 * dy.abs() < 8.0 || rng.random::<f64>() < 0.05
        });
        let u = signed_distance(&ContourSpec::Mask(mask.clone()), 40, 40).unwrap();
        for y in 0..40 {
            for x in 0..40 {
                let me = mask.get(x, y);
                let mut best = f64::INFINITY;
                for j in 0..40 {
                    for i in 0..40 {
                        if mask.get(i, j) != me {
                            best = best.min((x as f64 - i as f64).hypot(y as f64 - j as f64));
                        }
                    }
                }
                let want = if me { 0.5 - best } else { best - 0.5 };
                assert!((u.get(x, y) - want).abs() < 1e-12);
            }
        }
    }
    let rect = signed_distance(&ContourSpec::Rectangle { x0: 3, y0: 4, x1: 8, y1: 6 }, 12, 12).unwrap();
    assert_eq!(rect.interior_area(), 18);
    assert_eq!(rect.get(5, 5), -1.5);
    assert_eq!(rect.get(0, 5), 2.5);
}

#[test]
fn reinitialize_properties() {
    let u = circle(64, 64, 31.7, 30.2, 17.3);
    let r = reinitialize(&u).unwrap();
    for (a, b) in u.values().iter().zip(r.values()) {
        assert!((a - b).abs() < 1.0);
        assert_eq!(*a < 0.0, *b < 0.0);
    }
    assert_eq!(reinitialize(&r).unwrap().mask(), r.mask());
    let p = reinitialize_with(&u, ReinitMode::PixelInterface).unwrap();
    assert_eq!(reinitialize_with(&p, ReinitMode::PixelInterface).unwrap(), p);
    // interpolated crossings keep the circle's radius, snapping does not
    let (mean, _) = radius_stats(&r, 31.7, 30.2);
    assert!((mean - 17.3).abs() < 0.05, "{mean}");
    let flat = LevelSetField::from_vec(3, 3, vec![1.0; 9]).unwrap();
    assert!(matches!(reinitialize(&flat), Err(Error::ContourVanished { .. })));
}

#[test]
fn constant_field_is_stationary() {
    let u = LevelSetField::from_vec(8, 6, vec![-2.5; 48]).unwrap();
    let e = edge_map(&Image::from_fn(8, 6, |x, y| (x * y) as f64), 1.0, 1.0).unwrap();
    let next = gac_step(&u, &e, &GacParams::default());
    assert_eq!(next.values(), u.values());
    assert!((next.time - 0.1).abs() < 1e-15);
}

#[test]
fn shrinking_circle_follows_curvature_flow() {
    let (r0, tau) = (20.0, 0.1);
    let mut u = circle(60, 60, 30.0, 30.0, r0);
    let e = EdgeMap::uniform(60, 60);
    let params = GacParams { nu: 0.0, ..Default::default() };
    for it in 1..=1000 {
        u = gac_step(&u, &e, &params);
        if it % 100 == 0 {
            u = reinitialize(&u).unwrap();
            let t = it as f64 * tau;
            let want = std::f64::consts::PI * (r0 * r0 - 2.0 * t);
            let got = u.interior_area() as f64;
            assert!((got / want - 1.0).abs() < 0.05, "t={t}: {got} vs {want}");
            let (_, rms) = radius_stats(&u, 30.0, 30.0);
            assert!(rms < 0.5);
        }
    }
}

#[test]
fn balloon_follows_ode() {
    let mut u = circle(80, 80, 40.0, 40.0, 8.0);
    let e = EdgeMap::uniform(80, 80);
    let params = GacParams { nu: -1.0, ..Default::default() };
    let mut r = 8.0;
    for it in 1..=200 {
        u = gac_step(&u, &e, &params);
        r += 0.1 * (1.0 - 1.0 / r);
        if it % 100 == 0 {
            u = reinitialize(&u).unwrap();
        }
        if it % 50 == 0 {
            let want = std::f64::consts::PI * r * r;
            let got = u.interior_area() as f64;
            assert!((got / want - 1.0).abs() < 0.05, "it={it}: {got} vs {want}");
        }
    }
}

#[test]
fn curvature_flow_extinguishes_contour() {
    let u0 = circle(30, 30, 15.0, 15.0, 4.0);
    let params = GacParams { nu: 0.0, ..Default::default() };
    match run_gac(&u0, &EdgeMap::uniform(30, 30), &params) {
        Err(Error::ContourVanished { iteration }) => assert!((60..120).contains(&iteration), "{iteration}"),
        Err(e) => panic!("unexpected error {e}"),
        Ok(o) => panic!("contour survived with area {}", o.mask.count_inside()),
    }
}

/// Rectangle contour sitting in a deep valley of `g`.
fn valley(w: usize, h: usize, dx: usize, dy: usize) -> (LevelSetField, EdgeMap) {
    let spec = ContourSpec::Rectangle { x0: 15 + dx, y0: 12 + dy, x1: 40 + dx, y1: 30 + dy };
    let u0 = signed_distance(&spec, w, h).unwrap();
    let g = u0.values().iter().map(|d| 1.0 - 0.999 * (-d * d / 8.0).exp()).collect();
    (u0, EdgeMap::from_values(w, h, g).unwrap())
}

#[test]
fn contour_locks_into_edge_valley() {
    let (u0, e) = valley(56, 44, 0, 0);
    let mut u = u0.clone();
    let params = GacParams { nu: -1.0, ..Default::default() };
    for it in 1..=500 {
        u = gac_step(&u, &e, &params);
        if it % 100 == 0 {
            u = reinitialize(&u).unwrap_or_else(|_| panic!("vanished at {it}"));
        }
    }
    let (m0, m1) = (u0.mask(), u.mask());
    for y in 0..44 {
        for x in 0..56 {
            if m0.get(x, y) != m1.get(x, y) {
                assert!(u0.get(x, y).abs() < 1.0, "pixel ({x},{y}) moved");
            }
        }
    }
}

#[test]
fn steady_state_and_translation_equivariance() {
    let params = GacParams { nu: -1.0, ..Default::default() };
    let square = Image::from_fn(60, 60, |x, y| if (14..=44).contains(&x) && (16..=42).contains(&y) { 200.0 } else { 20.0 });
    let e = edge_map(&square, 1.0, 5.0).unwrap();
    let u0 = circle(60, 60, 29.0, 29.0, 5.0);
    let a = run_gac(&u0, &e, &params).unwrap();
    assert!(a.steady);
    let truth = ShapeMask::from_fn(60, 60, |x, y| (14..=44).contains(&x) && (16..=42).contains(&y));
    assert!(jaccard(&a.mask, &truth).unwrap() > 0.9);

    let b = run_gac(&u0.translated(1, 1), &e.translated(1, 1), &params).unwrap();
    for y in 1..60 {
        for x in 1..60 {
            assert_eq!(b.mask.get(x, y), a.mask.get(x - 1, y - 1));
        }
    }
}

#[test]
fn maximum_principle_without_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let img = Image::from_fn(40, 40, |_, _| rng.random_range(0.0..255.0));
    let e = edge_map(&img, 2.0, 10.0).unwrap();
    let mut u = circle(40, 40, 20.0, 19.0, 11.0);
    let params = GacParams { nu: 0.0, ..Default::default() };
    for _ in 0..300 {
        let (lo, hi) = u.min_max();
        u = gac_step(&u, &e, &params);
        let (lo2, hi2) = u.min_max();
        assert!(lo2 >= lo - 1e-9 && hi2 <= hi + 1e-9);
    }
}

#[test]
fn force_displacement_bound() {
    let e = EdgeMap::uniform(50, 50);
    let u0 = circle(50, 50, 25.0, 25.0, 10.0);
    let (lo, hi) = u0.min_max();
    let params = GacParams { nu: 1.0, ..Default::default() };
    let mut u = u0;
    for it in 1..=50 {
        u = gac_step(&u, &e, &params);
        let (a, b) = u.min_max();
        let slack = params.tau * it as f64;
        assert!(a >= lo - slack && b <= hi + slack);
    }
}

#[test]
fn jaccard_examples() {
    let a = ShapeMask::from_fn(10, 10, |x, _| x < 5);
    assert_eq!(jaccard(&a, &a).unwrap(), 1.0);
    assert_eq!(jaccard(&a, &a.inverted()).unwrap(), 0.0);
    let small = ShapeMask::from_fn(10, 10, |x, y| x < 5 && y < 5);
    let big = ShapeMask::from_fn(10, 10, |x, y| x < 5 && y < 10);
    assert_eq!(jaccard(&small, &big).unwrap(), 0.5);
    let empty = ShapeMask::new(10, 10);
    assert_eq!(jaccard(&empty, &empty).unwrap(), 1.0);
    assert!(jaccard(&a, &ShapeMask::new(3, 3)).is_err());
    assert_eq!(pixel_accuracy(&small, &big).unwrap(), 0.75);
}

#[test]
fn overlay_marks_boundary() {
    let m = ShapeMask::from_fn(6, 6, |x, y| (1..5).contains(&x) && (1..5).contains(&y));
    let o = overlay(&Image::filled(6, 6, 1, 3.0), &m).unwrap();
    assert_eq!(o.channels(), 3);
    assert_eq!((o.get(1, 1, 0), o.get(1, 1, 1)), (255.0, 0.0));
    assert_eq!((o.get(2, 2, 0), o.get(2, 2, 1)), (128.0, 128.0));
}
