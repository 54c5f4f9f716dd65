//! Generates both synthetic letter-'E' test images with their ground-truth
//! masks.
//!
//! ```text
//! cargo run --example synth_test_images -- [out-dir]
//! ```

use std::path::PathBuf;

use texseg::image::{save_image, save_mask, synth_e_compose, synth_e_stripes, ImageFormat};

fn main() -> texseg::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out/synth".into()));
    std::fs::create_dir_all(&out).map_err(|e| texseg::Error::Io { path: out.clone(), source: e })?;

    let (stripes, truth) = synth_e_stripes(80, 80, 7)?;
    save_image(&stripes, out.join("e_stripes.pgm"), ImageFormat::Pgm)?;
    save_mask(&truth, out.join("e_stripes_mask.pgm"), ImageFormat::Pgm)?;

    let (composite, truth) = synth_e_compose(160, 160, 7)?;
    save_image(&composite, out.join("e_compose.pgm"), ImageFormat::Pgm)?;
    save_mask(&truth, out.join("e_compose_mask.pgm"), ImageFormat::Pgm)?;

    println!("letter covers {} of {} pixels", truth.count_inside(), 160 * 160);
    println!("wrote images to {}", out.display());
    Ok(())
}
