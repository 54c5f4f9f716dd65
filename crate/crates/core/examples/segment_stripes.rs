//! Full segmentation pipeline on the stripe/noise letter: descriptor map,
//! edge-stopping function, balloon-driven active contour, and a score
//! against the ground truth.
//!
//! The descriptor map is normalized to [0, 1] and can be amplified with the
//! optional weight argument, which sharpens the edge map.
//!
//! ```text
//! cargo run --release --example segment_stripes -- [weight] [out-dir]
//! ```

use std::path::PathBuf;

use texseg::descriptor::{compute_descriptor_map, normalize_map, DescriptorConfig};
use texseg::entropy::IndexKind;
use texseg::gac::{edge_map, jaccard, overlay, run_gac_observed, signed_distance, ContourSpec, GacParams};
use texseg::image::{save_image, synth_e_stripes, ImageFormat};
use texseg::patch::GraphSetting;

fn main() -> texseg::Result<()> {
    let mut args = std::env::args().skip(1);
    let weight: f64 = args.next().map_or(1.0, |s| s.parse().expect("weight must be a number"));
    let out = PathBuf::from(args.next().unwrap_or_else(|| "out/segment".into()));
    std::fs::create_dir_all(&out).map_err(|e| texseg::Error::Io { path: out.clone(), source: e })?;

    let (img, truth) = synth_e_stripes(80, 80, 7)?;
    let map = compute_descriptor_map(&img, &DescriptorConfig::new(GraphSetting::GwA, IndexKind::ifv(0.1)))?;
    let f = normalize_map(&map).map(|v| weight * v);
    let g = edge_map(&f, 1.0, 0.1)?;
    save_image(&texseg::image::rescale(&g.to_image(), 0.0, 255.0), out.join("edge_map.pgm"), ImageFormat::Pgm)?;

    let u0 = signed_distance(&ContourSpec::Circle { cx: 19.0, cy: 40.0, radius: 3.0 }, 80, 80)?;
    let params = GacParams::default();
    let mut last = u0.mask();
    let res = run_gac_observed(&u0, &g, &params, |rec, u| {
        if rec.iteration % 200 == 0 {
            println!("t = {:>6.1}  area {:>5}", rec.time, rec.area);
        }
        last = u.mask();
    });
    save_image(&overlay(&img, &last)?, out.join("overlay.png"), ImageFormat::Png)?;
    match res {
        Ok(o) => println!(
            "steady state at t = {:.1}, Jaccard {:.3}",
            o.settle_time(params.tau),
            jaccard(&o.mask, &truth)?
        ),
        Err(e) => println!("{e}; last contour written to {}", out.join("overlay.png").display()),
    }
    Ok(())
}
