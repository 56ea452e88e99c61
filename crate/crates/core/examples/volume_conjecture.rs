//! Growth rate of the Kashaev invariant of the figure-eight knot against its
//! hyperbolic volume.

use cjones::asym::volume_conjecture_check;
use cjones::numkit::vol_fig8;
use cjones::PrecisionCfg;

fn main() -> cjones::Result<()> {
    let cfg = PrecisionCfg::default();
    let vol = vol_fig8(&cfg).to_f64();
    println!("Vol(4_1) = {vol:.15}");
    for n_max in [200, 500, 1000, 2000] {
        let est = volume_conjecture_check(n_max, &cfg)?.to_f64();
        println!("N_max = {n_max:>5}  2πa = {est:.12}  error = {:.2e}", (est - vol).abs());
    }
    Ok(())
}
