//! Information functionals as functions of the local dimension, under both
//! exponent conventions, plus sphere-growth dimension estimates on three
//! fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use texseg::fractal::{
    delta_grid, dimension_curve_from, fit_local_dimension, interior_centers, monotonicity,
    pooled_sphere_growth, select_convention, CurveSource, ExponentConvention,
};
use texseg::image::Image;
use texseg::patch::Neighborhood;

fn main() -> texseg::Result<()> {
    let grid = delta_grid(200);
    println!("q    quadrature ln f^V     printed-form ln f^V   closest form");
    for q in [0.1, 0.5, 0.7, 0.9] {
        let quad = dimension_curve_from(q, 1.0, &grid, CurveSource::Quadrature)?;
        let printed = dimension_curve_from(q, 1.0, &grid, CurveSource::ClosedForm(ExponentConvention::Printed))?;
        let (best, _, _) = select_convention(q, 1.0);
        println!(
            "{q:<4} {:<21} {:<21} {}",
            format!("{:?}", monotonicity(&quad.ln_fv())),
            format!("{:?}", monotonicity(&printed.ln_fv())),
            best.name()
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let fixtures = [
        ("constant", Image::filled(64, 64, 1, 128.0), 0.1),
        ("stripes", Image::from_fn(64, 64, |x, _| if x % 2 == 0 { 0.0 } else { 255.0 }), 10.0),
        ("noise", Image::from_fn(64, 64, |_, _| rng.random_range(0..=255u32) as f64), 10.0),
    ];
    let radii: Vec<f64> = (1..=12).map(f64::from).collect();
    for (name, img, beta) in fixtures {
        let s = pooled_sphere_growth(&img, &interior_centers(64, 64, 12), 12.0, beta, Neighborhood::Eight, &radii)?;
        println!("{name:<9} local dimension {:.3}", fit_local_dimension(&s, (3.0, 10.0))?);
    }
    Ok(())
}
