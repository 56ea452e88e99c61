//! Torsion of the figure-eight complement as a function of cone angle.

use cjones::geometry::{torsion_fig8, torsion_fig8_zero};
use cjones::PrecisionCfg;

fn main() -> cjones::Result<()> {
    let cfg = PrecisionCfg::new(30)?;
    for i in 0..8 {
        let alpha = cfg.pi() * 2u32 / 3u32 * i / 8u32;
        let t = torsion_fig8(&alpha, &cfg)?;
        println!("α = {:.6}  T = {:.15}", alpha.to_f64(), t.to_f64());
    }
    println!("T_E(0) = {:.15}", torsion_fig8_zero(&cfg).to_f64());
    let edge = cfg.pi() * 2u32 / 3u32;
    println!("α = 2π/3: {}", torsion_fig8(&edge, &cfg).unwrap_err());
    Ok(())
}
