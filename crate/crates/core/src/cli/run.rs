use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::{
    Command, Convention, CurvesArgs, DescriptorArgs, EvalArgs, FractalMode, GrowthArgs, IndexArgs,
    SegmentArgs, SynthArgs, SynthKind,
};
use crate::descriptor::{compute_descriptor_map, DescriptorConfig};
use crate::entropy::IndexKind;
use crate::fractal::{
    delta_grid, dimension_curve_from, fit_local_dimension, interior_centers, pooled_sphere_growth,
    select_convention, CurveSource, ExponentConvention,
};
use crate::gac::{
    edge_map, jaccard, overlay, pixel_accuracy, run_gac_observed, signed_distance, ContourSpec,
    GacParams,
};
use crate::image::{
    load_image, load_mask, rescale, save_image, save_mask, synth_e_compose, synth_e_stripes, Image,
    ImageFormat, Pixel,
};
use crate::patch::{GraphSetting, Neighborhood};
use crate::{Error, Result};

/// Executes a parsed subcommand, writing its summary to `out`.
pub fn run(cmd: &Command, out: &mut impl Write) -> Result<()> {
    match cmd {
        Command::Synth(a) => synth(a, out),
        Command::Descriptor(a) => descriptor(a, out),
        Command::Segment(a) => segment(a, out),
        Command::Fractal { mode: FractalMode::Curves(a) } => curves(a, out),
        Command::Fractal { mode: FractalMode::Growth(a) } => growth(a, out),
        Command::Eval(a) => eval(a, out),
    }
}

fn stdout_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn read_image(path: &Path) -> Result<Image> {
    load_image(path, ImageFormat::from_path(path)?)
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn synth(a: &SynthArgs, out: &mut impl Write) -> Result<()> {
    let default = match a.kind {
        SynthKind::ECompose => 160,
        SynthKind::EStripes => 80,
    };
    let w = a.width.unwrap_or(default);
    let h = a.height.unwrap_or(w);
    let (img, mask) = match a.kind {
        SynthKind::ECompose => synth_e_compose(w, h, a.seed)?,
        SynthKind::EStripes => synth_e_stripes(w, h, a.seed)?,
    };
    create_dir(&a.out)?;
    save_image(&img, a.out.join("image.pgm"), ImageFormat::Pgm)?;
    save_image(&img, a.out.join("image.f64"), ImageFormat::F64Raw)?;
    save_mask(&mask, a.out.join("mask.pgm"), ImageFormat::Pgm)?;
    writeln!(out, "width,height,seed,inside").map_err(stdout_err)?;
    writeln!(out, "{w},{h},{},{}", a.seed, mask.count_inside()).map_err(stdout_err)
}

fn descriptor_config(a: &IndexArgs) -> Result<DescriptorConfig> {
    let cfg = DescriptorConfig {
        setting: a.setting.parse::<GraphSetting>()?,
        kind: IndexKind::parse(&a.kind, a.q, a.m)?,
        rho: a.rho,
        beta: a.beta,
        nbhd: a.nbhd.parse::<Neighborhood>()?,
        channel_weight: 1.0,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn descriptor(a: &DescriptorArgs, out: &mut impl Write) -> Result<()> {
    let cfg = descriptor_config(&a.index)?;
    let img = read_image(&a.input)?;
    let map = compute_descriptor_map(&img, &cfg)?;
    save_image(&map.values, with_suffix(&a.out, "f64"), ImageFormat::F64Raw)?;
    save_image(&rescale(&map.values, 0.0, 255.0), with_suffix(&a.out, "pgm"), ImageFormat::Pgm)?;
    let (lo, hi) = map.values.min_max();
    writeln!(out, "min,max,mean").map_err(stdout_err)?;
    writeln!(out, "{lo},{hi},{}", map.values.mean()).map_err(stdout_err)
}

fn segment(a: &SegmentArgs, out: &mut impl Write) -> Result<()> {
    let weights = a.weights.clone().unwrap_or_else(|| vec![1.0; a.input.len()]);
    if weights.len() != a.input.len() {
        return Err(Error::InvalidParameter(format!(
            "{} weights for {} inputs",
            weights.len(),
            a.input.len()
        )));
    }
    let mut planes = Vec::new();
    for (path, &k) in a.input.iter().zip(&weights) {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidParameter(format!("channel weight {k} must be positive")));
        }
        let img = read_image(path)?;
        for c in 0..img.channels() {
            planes.push(rescale(&img.channel(c), 0.0, 1.0).map(|v| k * v));
        }
    }
    let f = Image::from_channels(&planes)?;
    let (w, h) = f.dims();

    let spec = match (&a.circle, &a.rect) {
        (Some(c), _) => match c.as_slice() {
            &[cx, cy, radius] => ContourSpec::Circle { cx, cy, radius },
            _ => return Err(Error::InvalidParameter("--circle takes cx,cy,r".into())),
        },
        (None, Some(r)) => match r.as_slice() {
            &[x0, y0, x1, y1] if x0 <= x1 && y0 <= y1 => ContourSpec::Rectangle { x0, y0, x1, y1 },
            _ => return Err(Error::InvalidParameter("--rect takes x0,y0,x1,y1 with x0<=x1, y0<=y1".into())),
        },
        (None, None) => ContourSpec::Circle {
            cx: (w as f64 - 1.0) / 2.0,
            cy: (h as f64 - 1.0) / 2.0,
            radius: w.min(h) as f64 / 10.0,
        },
    };
    let params = GacParams {
        nu: a.nu,
        tau: a.tau,
        reinit_every: a.reinit_every,
        max_iters: a.max_iters,
        steady_window: a.steady_window,
        reinit: a.reinit.parse()?,
    };
    params.validate()?;
    let e = edge_map(&f, a.sigma, a.lambda)?;
    let u0 = signed_distance(&spec, w, h)?;
    create_dir(&a.out)?;

    let background = f.channel(0);
    let snapshot = |it: usize, mask: &crate::image::ShapeMask| -> Result<()> {
        let path = a.out.join(format!("overlay_{it:06}.png"));
        save_image(&overlay(&background, mask)?, path, ImageFormat::Png)
    };
    if a.snapshot_every > 0 {
        snapshot(0, &u0.mask())?;
    }
    let mut log = String::from("iteration,time,area,changed\n");
    log.push_str(&format!("0,0,{},0\n", u0.interior_area()));
    let mut snapshot_error = None;
    let result = run_gac_observed(&u0, &e, &params, |rec, u| {
        log.push_str(&format!("{},{},{},{}\n", rec.iteration, rec.time, rec.area, rec.changed));
        if a.snapshot_every > 0 && rec.iteration % a.snapshot_every == 0 && snapshot_error.is_none() {
            snapshot_error = snapshot(rec.iteration, &u.mask()).err();
        }
    });
    write_file(&a.out.join("log.csv"), log.as_bytes())?;
    if let Some(err) = snapshot_error {
        return Err(err);
    }
    let outcome = result?;
    save_mask(&outcome.mask, a.out.join("mask.pgm"), ImageFormat::Pgm)?;
    writeln!(out, "iterations,time,steady,settle_time,area").map_err(stdout_err)?;
    writeln!(
        out,
        "{},{},{},{},{}",
        outcome.iterations,
        outcome.field.time,
        outcome.steady,
        outcome.settle_time(a.tau),
        outcome.mask.count_inside()
    )
    .map_err(stdout_err)
}

fn curves(a: &CurvesArgs, out: &mut impl Write) -> Result<()> {
    let n = (2.0 / a.step).round();
    if !(a.step > 0.0 && n >= 1.0 && (n * a.step - 2.0).abs() < 1e-9) {
        return Err(Error::InvalidParameter(format!("step {} does not divide [0, 2]", a.step)));
    }
    let grid = delta_grid(n as usize);
    let source = match a.convention {
        Convention::Integral => CurveSource::Quadrature,
        Convention::Printed => CurveSource::ClosedForm(ExponentConvention::Printed),
    };
    create_dir(&a.out)?;
    writeln!(out, "q,file,closest_closed_form,integral_rel_err,printed_rel_err").map_err(stdout_err)?;
    for &q in &a.q {
        let curve = dimension_curve_from(q, a.m, &grid, source)?;
        let name = format!("curve_q{q}.csv");
        let mut buf = Vec::new();
        curve.write_csv(&mut buf).expect("writing to memory");
        write_file(&a.out.join(&name), &buf)?;
        let (best, ei, ep) = select_convention(q, a.m);
        writeln!(out, "{q},{name},{},{ei:e},{ep:e}", best.name()).map_err(stdout_err)?;
    }
    Ok(())
}

fn growth(a: &GrowthArgs, out: &mut impl Write) -> Result<()> {
    let img = read_image(&a.input)?;
    let nbhd: Neighborhood = a.nbhd.parse()?;
    if !(a.rho > 0.0 && a.beta > 0.0) {
        return Err(Error::InvalidParameter("rho and beta must be positive".into()));
    }
    if a.max_radius == 0 {
        return Err(Error::InvalidParameter("max radius must be at least 1".into()));
    }
    let fit = match a.fit.as_slice() {
        &[lo, hi] if lo < hi => (lo, hi),
        _ => return Err(Error::InvalidParameter("--fit takes dmin,dmax with dmin < dmax".into())),
    };
    let (w, h) = img.dims();
    let centers = match &a.center {
        Some(c) => match c.as_slice() {
            &[x, y] if x < w && y < h => vec![Pixel::new(x, y)],
            _ => return Err(Error::InvalidParameter("--center takes x,y inside the image".into())),
        },
        None => interior_centers(w, h, a.rho.ceil() as usize),
    };
    if centers.is_empty() {
        return Err(Error::InvalidParameter("image too small for the amoeba radius".into()));
    }
    let radii: Vec<f64> = (1..=a.max_radius).map(|d| d as f64).collect();
    let sample = pooled_sphere_growth(&img, &centers, a.rho, a.beta, nbhd, &radii)?;
    let mut buf = Vec::new();
    sample.write_csv(&mut buf).expect("writing to memory");
    write_file(&a.out, &buf)?;
    let delta = fit_local_dimension(&sample, fit)?;
    writeln!(out, "centers,delta_hat").map_err(stdout_err)?;
    writeln!(out, "{},{delta}", centers.len()).map_err(stdout_err)
}

fn eval(a: &EvalArgs, out: &mut impl Write) -> Result<()> {
    let m = load_mask(&a.mask, ImageFormat::from_path(&a.mask)?)?;
    let t = load_mask(&a.truth, ImageFormat::from_path(&a.truth)?)?;
    let j = jaccard(&m, &t)?;
    let acc = pixel_accuracy(&m, &t)?;
    writeln!(out, "jaccard,accuracy").map_err(stdout_err)?;
    writeln!(out, "{j},{acc}").map_err(stdout_err)
}
