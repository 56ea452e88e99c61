//! Actions, volume and Chern-Simons invariant along the geometric branch of
//! the A-polynomial.

use cjones::geometry::{action_s, schlafli_residual};
use cjones::PrecisionCfg;

fn main() -> cjones::Result<()> {
    let cfg = PrecisionCfg::new(40)?;
    println!("{:>6} {:>6} {:>14} {:>14} {:>12}", "Re u", "Im u", "Vol", "CS", "Schläfli");
    for (re, im) in [(0.0, 0.0), (0.0, 0.3), (0.2, 0.3), (0.5, 0.0), (0.0, 1.2), (-0.3, 0.6)] {
        let u = cfg.complex(re, im);
        let a = action_s(&u, &cfg)?;
        let sch = schlafli_residual(&u, 1e-4, &cfg)?;
        println!(
            "{re:>6.2} {im:>6.2} {:>14.10} {:>14.10} {sch:>12.2e}",
            a.vol.to_f64(),
            a.cs.to_f64()
        );
    }
    Ok(())
}
