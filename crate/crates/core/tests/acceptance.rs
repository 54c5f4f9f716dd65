//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs under a custom harness (`harness = false`): every criterion is
//! executed, its verdict printed, and the process fails if a criterion not
//! listed in `KNOWN_FAILURES` fails.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use texseg::descriptor::{compute_descriptor_map, normalize_map, DescriptorConfig};
use texseg::entropy::{
    default_m, dehmer_fp, dehmer_fv, distance_class_counts, distance_matrix,
    entropy_from_logdensity, mean_information_on_distances, InformationDensity,
};
use texseg::fractal::{
    delta_grid, dimension_curve_from, fit_local_dimension, interior_centers, ln_fp_closed_form,
    ln_fp_of_dimension, ln_fv_closed_form, ln_fv_of_dimension, monotonicity, pooled_sphere_growth,
    select_convention, CurveSource, ExponentConvention, Monotonicity,
};
use texseg::gac::{
    edge_map, jaccard, run_gac_observed, signed_distance, ContourSpec, EdgeMap, GacParams,
};
use texseg::image::{synth_e_compose, synth_e_stripes, Image, Pixel, ShapeMask};
use texseg::patch::{adaptive_patch_graph, dijkstra, euclidean_patch_graph, Neighborhood, PatchGraph};
use texseg::{descriptor::DescriptorMap, entropy::IndexKind, patch::GraphSetting, Error};

/// Criteria expected to fail; see the README section on known limitations.
const KNOWN_FAILURES: &[u32] = &[6];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

type Criterion = (u32, &'static str, Duration, fn() -> Verdict);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "entropy oracle equivalence", Duration::from_secs(10), c1_entropy_oracle),
        (2, "shortest-path oracle", Duration::from_secs(5), c2_shortest_paths),
        (3, "amoeba geometry", Duration::from_secs(1), c3_amoeba_geometry),
        (4, "curvature flow benchmark", Duration::from_secs(30), c4_curvature_flow),
        (5, "balloon benchmark", Duration::from_secs(30), c5_balloon),
        (6, "stripe/noise E segmentation", Duration::from_secs(600), c6_stripe_e),
        (7, "descriptor contrast", Duration::from_secs(600), c7_descriptor_contrast),
        (8, "fractal curve claims", Duration::from_secs(5), c8_fractal_curves),
        (9, "dimension ordering", Duration::from_secs(30), c9_dimension_ordering),
        (10, "determinism", Duration::from_secs(600), c10_determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let mut v = std::panic::catch_unwind(run)
            .unwrap_or_else(|_| verdict(false, "panicked"));
        let took = start.elapsed();
        if took > budget {
            v.pass = false;
            v.detail.push_str(&format!("; over the {budget:?} budget"));
        }
        let known = KNOWN_FAILURES.contains(&id);
        let tag = match (v.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {id:>2} {tag}: {name} [{:.2}s] {}", took.as_secs_f64(), v.detail);
        if !v.pass && !known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------- criterion 1

fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.insert((u, v));
    }
    let extra = rng.random_range(0..=n);
    for _ in 0..extra {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    edges.into_iter().collect()
}

/// Hop distances by Floyd–Warshall over an adjacency matrix.
fn hop_distances(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(a, b) in edges {
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Cumulative-sphere functionals: sum over radii of `q^r` times the size
/// (or distance sum) of the closed ball of radius `r`, run until `q^r` is
/// negligible.
fn sphere_oracle(d: &[Vec<usize>], q: f64) -> (Vec<f64>, Vec<f64>) {
    let n = d.len();
    let (mut av, mut ap) = (vec![0.0; n], vec![0.0; n]);
    for i in 0..n {
        let mut r = 1;
        let mut qr = q;
        while qr > 1e-17 {
            let ball: Vec<usize> = (0..n).filter(|&j| d[i][j] <= r).collect();
            av[i] += qr * ball.len() as f64;
            ap[i] += qr * ball.iter().map(|&j| d[i][j] as f64).sum::<f64>();
            r += 1;
            qr *= q;
        }
    }
    (av, ap)
}

fn c1_entropy_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut ide_mismatch = 0;
    for _ in 0..200 {
        let n = rng.random_range(1..=8);
        let q = rng.random_range(0.05..0.95);
        let edges = random_connected_graph(&mut rng, n);
        let wedges: Vec<_> = edges.iter().map(|&(a, b)| (a, b, 1.0)).collect();
        let g = PatchGraph::from_edges(n, &wedges, false).unwrap();
        let d = hop_distances(n, &edges);
        let (ov, op) = sphere_oracle(&d, q);
        let m = default_m(q);
        let ent = |a: Vec<f64>| entropy_from_logdensity(&InformationDensity::new(a).unwrap());
        let fv = entropy_from_logdensity(&dehmer_fv(&g, q, m).unwrap());
        let fp = entropy_from_logdensity(&dehmer_fp(&g, q, m).unwrap());
        worst = worst.max((fv - ent(ov)).abs()).max((fp - ent(op)).abs());

        let mut counts: HashMap<usize, usize> = HashMap::new();
        for (i, row) in d.iter().enumerate() {
            for &dij in &row[i + 1..] {
                *counts.entry(dij).or_default() += 1;
            }
        }
        let pairs = (n * (n.saturating_sub(1)) / 2) as f64;
        let mut classes: Vec<_> = counts.into_iter().collect();
        classes.sort();
        let oracle_ide: f64 = classes
            .iter()
            .map(|&(_, k)| {
                let p = k as f64 / pairs;
                -p * p.log2()
            })
            .sum();
        let ide = mean_information_on_distances(&g).unwrap();
        let lib_counts = if n > 1 {
            distance_class_counts(&distance_matrix(&g).unwrap(), n)
        } else {
            Vec::new()
        };
        let oracle_counts: Vec<usize> = classes.iter().map(|&(_, k)| k).collect();
        if ide != oracle_ide || lib_counts != oracle_counts {
            ide_mismatch += 1;
        }
    }
    verdict(
        worst <= 1e-9 && ide_mismatch == 0,
        format!("max |ΔI_fV|,|ΔI_fP| = {worst:.2e} bits; IDE mismatches {ide_mismatch}/200"),
    )
}

// ---------------------------------------------------------------- criterion 2

fn bellman_ford(g: &PatchGraph) -> Vec<f64> {
    let n = g.vertices.len();
    let mut d = vec![f64::INFINITY; n];
    d[0] = 0.0;
    for _ in 0..n {
        let mut changed = false;
        for e in &g.edges {
            for (a, b) in [(e.a, e.b), (e.b, e.a)] {
                if d[a] + e.weight < d[b] {
                    d[b] = d[a] + e.weight;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    d
}

fn c2_shortest_paths() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    let mut max_vertices = 0;
    for _ in 0..100 {
        let img = Image::from_fn(16, 16, |_, _| rng.random_range(0.0..255.0));
        let rho = rng.random_range(1.0..3.9);
        let beta = rng.random_range(0.0..0.5);
        let p = Pixel::new(rng.random_range(0..16), rng.random_range(0..16));
        let nbhd = if rng.random_bool(0.5) { Neighborhood::Four } else { Neighborhood::Eight };
        let g = euclidean_patch_graph(&img, p, rho, beta, nbhd);
        max_vertices = max_vertices.max(g.vertices.len());
        let bf = bellman_ford(&g);
        let tree = dijkstra(&g, None);
        let index: HashMap<Pixel, usize> =
            g.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let reached = tree.vertices.len() == bf.iter().filter(|d| d.is_finite()).count();
        if !reached {
            return verdict(false, format!("reachability differs at {p:?}"));
        }
        for (v, d) in tree.vertices.iter().zip(&tree.dist) {
            worst = worst.max((d - bf[index[v]]).abs());
        }
    }
    verdict(
        worst <= 1e-12 && max_vertices <= 50,
        format!("max |Δd| = {worst:.2e}, largest graph {max_vertices} vertices"),
    )
}

// ---------------------------------------------------------------- criterion 3

fn chamfer_ball(rho: f64) -> BTreeSet<(i64, i64)> {
    let r = rho.ceil() as i64;
    let mut out = BTreeSet::new();
    for dy in -r..=r {
        for dx in -r..=r {
            let (a, b) = (dx.abs().max(dy.abs()) as f64, dx.abs().min(dy.abs()) as f64);
            if (a - b) + b * 2f64.sqrt() <= rho + 1e-12 {
                out.insert((dx, dy));
            }
        }
    }
    out
}

fn c3_amoeba_geometry() -> Verdict {
    let img = Image::filled(21, 21, 1, 100.0);
    let c = Pixel::new(10, 10);
    let mut sizes = Vec::new();
    let mut ok = true;
    for (rho, expected) in [(1.0, 5), (1.5, 9), (2.0, 13), (3.0, 29)] {
        let (g, _) = adaptive_patch_graph(&img, c, rho, 0.1, Neighborhood::Eight);
        let got: BTreeSet<(i64, i64)> = g
            .vertices
            .iter()
            .map(|v| (v.x as i64 - 10, v.y as i64 - 10))
            .collect();
        let oracle = chamfer_ball(rho);
        ok &= got == oracle && oracle.len() == expected;
        sizes.push(got.len());
    }
    verdict(ok, format!("amoeba sizes {sizes:?}, expected [5, 9, 13, 29]"))
}

// ---------------------------------------------------------- criteria 4 and 5

fn c4_curvature_flow() -> Verdict {
    let (r0, tau) = (30.0, 0.1);
    let u0 = signed_distance(&ContourSpec::Circle { cx: 50.0, cy: 50.0, radius: r0 }, 100, 100)
        .unwrap();
    let horizon = ((r0 * r0 - 25.0) / 2.0 / tau).floor() as usize;
    let params = GacParams { nu: 0.0, tau, max_iters: horizon, ..Default::default() };
    let (mut worst, mut worst_count) = ((0.0f64, 0.0), 0.0f64);
    let res = run_gac_observed(&u0, &EdgeMap::uniform(100, 100), &params, |rec, u| {
        let want = std::f64::consts::PI * (r0 * r0 - 2.0 * rec.time);
        let err = (u.coverage_area() / want - 1.0).abs();
        if err > worst.0 {
            worst = (err, rec.time);
        }
        worst_count = worst_count.max((rec.area as f64 / want - 1.0).abs());
    });
    if let Err(e) = res {
        return verdict(false, format!("run failed: {e}"));
    }
    verdict(
        worst.0 <= 0.05,
        format!(
            "max relative area error {:.4} (at t = {:.1}) up to R = 5; whole-pixel count error {:.4}",
            worst.0, worst.1, worst_count
        ),
    )
}

fn c5_balloon() -> Verdict {
    let (r0, tau) = (30.0f64, 0.1);
    let u0 = signed_distance(&ContourSpec::Circle { cx: 50.0, cy: 50.0, radius: r0 }, 100, 100)
        .unwrap();
    let params = GacParams { nu: -1.0, tau, max_iters: 10_000, ..Default::default() };
    // dR/dt = 1 - 1/R, integrated with fine RK4 sub-steps
    let f = |r: f64| 1.0 - 1.0 / r;
    let mut r = r0;
    let (mut worst, mut worst_count) = (0.0f64, 0.0f64);
    let mut reached = false;
    let mut steps = 0;
    let _ = run_gac_observed(&u0, &EdgeMap::uniform(100, 100), &params, |rec, u| {
        if reached {
            return;
        }
        let h = tau / 10.0;
        for _ in 0..10 {
            let k1 = f(r);
            let k2 = f(r + h / 2.0 * k1);
            let k3 = f(r + h / 2.0 * k2);
            let k4 = f(r + h * k3);
            r += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if r > 45.0 {
            reached = true;
            return;
        }
        steps = rec.iteration;
        let want = std::f64::consts::PI * r * r;
        worst = worst.max((u.coverage_area() / want - 1.0).abs());
        worst_count = worst_count.max((rec.area as f64 / want - 1.0).abs());
    });
    verdict(
        reached && worst <= 0.05,
        format!(
            "max relative area error {worst:.4} over {steps} iterations up to R = 45; whole-pixel count error {worst_count:.4}"
        ),
    )
}

// ---------------------------------------------------------------- criterion 6

struct StripeRun {
    outcome: Result<(f64, f64, bool), Error>,
    g_bands: [f64; 4],
}

/// Descriptor map, edge map and GAC for the stripe/noise letter; the
/// descriptor map is normalized to [0, 1] and multiplied by `weight`.
fn stripe_e_run(weight: f64) -> StripeRun {
    let (img, truth) = synth_e_stripes(80, 80, 7).unwrap();
    let cfg = DescriptorConfig::new(GraphSetting::GwA, IndexKind::ifv(0.1));
    let map = compute_descriptor_map(&img, &cfg).unwrap();
    let f = normalize_map(&map).map(|v| weight * v);
    let e = edge_map(&f, 1.0, 0.1).unwrap();
    let g_bands = band_means(&e, &truth);
    let u0 = signed_distance(&ContourSpec::Circle { cx: 19.0, cy: 40.0, radius: 3.0 }, 80, 80)
        .unwrap();
    let params = GacParams { nu: -1.0, tau: 0.1, ..Default::default() };
    let outcome = run_gac_observed(&u0, &e, &params, |_, _| {}).map(|o| {
        (o.settle_time(0.1), jaccard(&o.mask, &truth).unwrap(), o.steady)
    });
    StripeRun { outcome, g_bands }
}

/// Mean edge-stopping value inside/outside the letter, split at 2 px from
/// the boundary.
fn band_means(e: &EdgeMap, truth: &ShapeMask) -> [f64; 4] {
    let sd = texseg::gac::mask_signed_distance(truth);
    let (w, h) = truth.dims();
    let mut acc = [(0.0, 0usize); 4];
    for y in 0..h {
        for x in 0..w {
            let d = sd.get(x, y).abs() + 0.5;
            let band = match (truth.get(x, y), d > 2.0) {
                (true, true) => 0,
                (true, false) => 1,
                (false, false) => 2,
                (false, true) => 3,
            };
            acc[band].0 += e.get(x, y);
            acc[band].1 += 1;
        }
    }
    acc.map(|(s, n)| s / n.max(1) as f64)
}

fn c6_stripe_e() -> Verdict {
    let run = stripe_e_run(1.0);
    let b = run.g_bands;
    let bands = format!(
        "mean g inside/inner edge/outer edge/outside = {:.2}/{:.2}/{:.2}/{:.2}",
        b[0], b[1], b[2], b[3]
    );
    let weighted = match stripe_e_run(4.0).outcome {
        Ok((t, j, steady)) => format!("with descriptor weight 4: steady {steady}, t = {t:.1}, J = {j:.3}"),
        Err(e) => format!("with descriptor weight 4: {e}"),
    };
    match run.outcome {
        Ok((t, j, steady)) => verdict(
            steady && t <= 200.0 && j >= 0.75,
            format!("steady {steady}, settled at t = {t:.1} (≤ 200), Jaccard {j:.3} (≥ 0.75); {bands}; {weighted}"),
        ),
        Err(e) => verdict(false, format!("{e}; {bands}; {weighted}")),
    }
}

// ---------------------------------------------------------------- criterion 7

fn region_contrast(map: &DescriptorMap, truth: &ShapeMask, margin: f64) -> (f64, f64) {
    let sd = texseg::gac::mask_signed_distance(truth);
    let (w, h) = truth.dims();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for y in 0..h {
        for x in 0..w {
            if sd.get(x, y).abs() + 0.5 > margin {
                let v = map.values.get(x, y, 0);
                if truth.get(x, y) { a.push(v) } else { b.push(v) }
            }
        }
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let ss = |v: &[f64]| {
        let m = mean(v);
        v.iter().map(|x| (x - m).powi(2)).sum::<f64>()
    };
    let pooled = ((ss(&a) + ss(&b)) / (a.len() + b.len() - 2) as f64).sqrt();
    ((mean(&a) - mean(&b)).abs(), pooled)
}

fn c7_descriptor_contrast() -> Verdict {
    let (img, truth) = synth_e_compose(160, 160, 7).unwrap();
    // statistics skip pixels whose patch straddles the boundary
    let margin = 6.0;
    let tw = compute_descriptor_map(&img, &DescriptorConfig::new(GraphSetting::TwA, IndexKind::ifv(0.1)))
        .unwrap();
    let ge = compute_descriptor_map(&img, &DescriptorConfig::new(GraphSetting::GwE, IndexKind::ifv(0.1)))
        .unwrap();
    let (dt, st) = region_contrast(&tw, &truth, margin);
    let (dg, sg) = region_contrast(&ge, &truth, margin);
    verdict(
        dt > 2.0 * st && sg >= dg,
        format!(
            "T_w^A: |Δmean| {dt:.3} vs pooled sd {st:.3} (ratio {:.2} > 2); G_w^E: |Δmean| {dg:.3} vs sd {sg:.3} (ratio {:.2} ≤ 1)",
            dt / st,
            dg / sg
        ),
    )
}

// ---------------------------------------------------------------- criterion 8

fn c8_fractal_curves() -> Verdict {
    let grid = delta_grid(200);
    let mut notes = Vec::new();
    let mut ok = true;

    let mut worst = 0.0f64;
    for q in [0.1, 0.5, 0.7, 0.9] {
        let (best, _, _) = select_convention(q, 1.0);
        ok &= best == ExponentConvention::Integral;
        for &d in &grid {
            let rel = |a: f64, b: f64| ((a - b) / b).abs();
            worst = worst
                .max(rel(ln_fv_of_dimension(d, q, 1.0), ln_fv_closed_form(d, q, 1.0, best)))
                .max(rel(ln_fp_of_dimension(d, q, 1.0), ln_fp_closed_form(d, q, 1.0, best)));
        }
    }
    ok &= worst <= 1e-6;
    notes.push(format!("quadrature vs negative-power closed form: max rel err {worst:.1e}"));

    // the qualitative shape claims hold for the positive-power closed form,
    // not for the quadrature values
    let printed = |q| {
        dimension_curve_from(q, 1.0, &grid, CurveSource::ClosedForm(ExponentConvention::Printed))
            .unwrap()
    };
    let claims = [
        ("f^V q=0.1 increasing", monotonicity(&printed(0.1).ln_fv()) == Monotonicity::Increasing),
        ("f^V q=0.7 non-monotone", monotonicity(&printed(0.7).ln_fv()) == Monotonicity::NonMonotonic),
        ("f^V q=0.9 decreasing", is_decreasing(monotonicity(&printed(0.9).ln_fv()))),
        ("f^P q=0.9 decreasing", is_decreasing(monotonicity(&printed(0.9).ln_fp()))),
    ];
    for (name, holds) in &claims {
        ok &= holds;
        notes.push(format!("{name}: {holds}"));
    }
    let quad = |q| dimension_curve_from(q, 1.0, &grid, CurveSource::Quadrature).unwrap();
    notes.push(format!(
        "quadrature curves for reference: q=0.1 {:?}, q=0.7 {:?}, q=0.9 {:?}",
        monotonicity(&quad(0.1).ln_fv()),
        monotonicity(&quad(0.7).ln_fv()),
        monotonicity(&quad(0.9).ln_fv())
    ));
    verdict(ok, notes.join("; "))
}

fn is_decreasing(m: Monotonicity) -> bool {
    matches!(m, Monotonicity::Decreasing)
}

// ---------------------------------------------------------------- criterion 9

fn growth_fixtures() -> [(&'static str, Image, f64); 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let noise = Image::from_fn(64, 64, |_, _| rng.random_range(0..=255u32) as f64);
    [
        ("constant", Image::filled(64, 64, 1, 128.0), 0.1),
        ("corridor", Image::from_fn(64, 64, |x, _| if x % 2 == 0 { 0.0 } else { 255.0 }), 10.0),
        ("noise", noise, 10.0),
    ]
}

fn growth_dimension(img: &Image, beta: f64) -> f64 {
    let rho = 12.0;
    let centers = interior_centers(64, 64, 12);
    let radii: Vec<f64> = (1..=12).map(f64::from).collect();
    let s = pooled_sphere_growth(img, &centers, rho, beta, Neighborhood::Eight, &radii).unwrap();
    fit_local_dimension(&s, (3.0, 10.0)).unwrap()
}

fn c9_dimension_ordering() -> Verdict {
    let d: Vec<(&str, f64)> = growth_fixtures()
        .iter()
        .map(|(name, img, beta)| (*name, growth_dimension(img, *beta)))
        .collect();
    let (c, s, n) = (d[0].1, d[1].1, d[2].1);
    verdict(
        c - s > 0.4 && s - n > 0.4,
        format!("δ̂ constant {c:.3}, corridor {s:.3}, noise {n:.3}"),
    )
}

// --------------------------------------------------------------- criterion 10

fn texseg(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_texseg")).args(args).output().unwrap()
}

fn pipeline(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let d = |p: &str| dir.join(p).to_str().unwrap().to_owned();
    texseg(&["synth", "e-stripes", "--seed", "7", "--out", &d("synth")]);
    texseg(&[
        "descriptor", "--input", &d("synth/image.f64"), "--setting", "GwA", "--kind", "IfV",
        "--out", &d("desc"),
    ]);
    texseg(&[
        "segment", "--input", &d("desc.f64"), "--sigma", "1", "--circle", "19,40,3",
        "--snapshot-every", "500", "--out", &d("seg"),
    ]);
    let noise = growth_fixtures()[2].1.clone();
    texseg::image::save_image(&noise, dir.join("noise.f64"), texseg::image::ImageFormat::F64Raw)
        .unwrap();
    texseg(&[
        "fractal", "growth", "--input", &d("noise.f64"), "--beta", "10", "--out", &d("growth.csv"),
    ]);
    let mut files = Vec::new();
    let mut stack = VecDeque::from([dir.to_path_buf()]);
    while let Some(p) = stack.pop_front() {
        for entry in std::fs::read_dir(&p).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push_back(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                files.push((rel, std::fs::read(&path).unwrap()));
            }
        }
    }
    files.sort();
    files
}

fn c10_determinism() -> Verdict {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = pipeline(a.path());
    let second = pipeline(b.path());
    let same = first == second;
    let lib_same = {
        let r1 = stripe_e_run(1.0);
        let r2 = stripe_e_run(1.0);
        format!("{:?}", r1.outcome) == format!("{:?}", r2.outcome)
            && growth_dimension(&growth_fixtures()[2].1, 10.0).to_bits()
                == growth_dimension(&growth_fixtures()[2].1, 10.0).to_bits()
    };
    verdict(
        same && lib_same && first.len() >= 8,
        format!("{} output files compared byte for byte", first.len()),
    )
}
