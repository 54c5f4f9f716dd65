//! Pure curvature flow of a circle on a uniform edge map: the radius follows
//! `R(t) = sqrt(R0^2 - 2t)` until the contour vanishes.

use texseg::gac::{run_gac_observed, signed_distance, ContourSpec, EdgeMap, GacParams};
use texseg::Error;

fn main() -> texseg::Result<()> {
    let r0 = 20.0;
    let u0 = signed_distance(&ContourSpec::Circle { cx: 40.0, cy: 40.0, radius: r0 }, 80, 80)?;
    let params = GacParams { nu: 0.0, ..Default::default() };
    println!("    t  measured R  analytic R");
    let res = run_gac_observed(&u0, &EdgeMap::uniform(80, 80), &params, |rec, u| {
        if rec.iteration % 250 == 0 {
            let measured = (u.coverage_area() / std::f64::consts::PI).sqrt();
            let analytic = (r0 * r0 - 2.0 * rec.time).max(0.0).sqrt();
            println!("{:>5.1}  {measured:>10.3}  {analytic:>10.3}", rec.time);
        }
    });
    match res {
        Err(Error::ContourVanished { iteration }) => {
            println!("vanished at t = {:.1}, analytic {:.1}", iteration as f64 * params.tau, r0 * r0 / 2.0);
            Ok(())
        }
        Err(e) => Err(e),
        Ok(_) => unreachable!("curvature flow always shrinks a circle to a point"),
    }
}
