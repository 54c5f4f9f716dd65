//! Builds the six patch graphs around one pixel of a stripe image and
//! prints their sizes.
//!
//! On a high-contrast edge the adaptive (amoeba) patch stays on one side of
//! the edge while the Euclidean patch does not care.

use texseg::image::{Image, Pixel};
use texseg::patch::{build_setting, GraphSetting, Neighborhood};

fn main() {
    // dark left half, bright right half
    let img = Image::from_fn(21, 21, |x, _| if x < 11 { 20.0 } else { 220.0 });
    let p = Pixel::new(9, 10);
    println!("setting  vertices  weighted  on the dark side");
    for setting in GraphSetting::ALL {
        let g = build_setting(&img, p, setting, 5.0, 0.1, Neighborhood::Eight);
        let dark = g.vertices().iter().filter(|v| v.x < 11).count();
        println!("{:<8} {:>8}  {:>8}  {:>16}", setting.name(), g.vertices().len(), g.is_weighted(), dark);
    }
}
