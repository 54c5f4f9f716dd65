//! Computes I_fV descriptor maps of the two-texture composite for several
//! graph settings and reports how well each separates the two regions.
//!
//! ```text
//! cargo run --release --example descriptor_maps -- [out-dir]
//! ```

use std::path::PathBuf;

use texseg::descriptor::{compute_descriptor_map, normalize_map, DescriptorConfig};
use texseg::entropy::IndexKind;
use texseg::image::{rescale, save_image, synth_e_compose, ImageFormat};
use texseg::patch::GraphSetting;

fn main() -> texseg::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out/descriptors".into()));
    std::fs::create_dir_all(&out).map_err(|e| texseg::Error::Io { path: out.clone(), source: e })?;
    let (img, truth) = synth_e_compose(120, 120, 7)?;
    save_image(&img, out.join("input.pgm"), ImageFormat::Pgm)?;

    for setting in [GraphSetting::GwE, GraphSetting::TwE, GraphSetting::GwA, GraphSetting::TwA] {
        let map = compute_descriptor_map(&img, &DescriptorConfig::new(setting, IndexKind::ifv(0.1)))?;
        let norm = normalize_map(&map);
        let (mut inside, mut outside) = ((0.0, 0), (0.0, 0));
        for y in 0..120 {
            for x in 0..120 {
                let v = norm.get(x, y, 0);
                if truth.get(x, y) {
                    inside = (inside.0 + v, inside.1 + 1);
                } else {
                    outside = (outside.0 + v, outside.1 + 1);
                }
            }
        }
        println!(
            "{:<4} mean inside {:.3}  outside {:.3}",
            setting.name(),
            inside.0 / inside.1 as f64,
            outside.0 / outside.1 as f64
        );
        let path = out.join(format!("ifv_{}.pgm", setting.name()));
        save_image(&rescale(&map.values, 0.0, 255.0), path, ImageFormat::Pgm)?;
    }
    Ok(())
}
