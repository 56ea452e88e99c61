//! Residual of the large-N expansion over a window of r around 1.

use cjones::asym::sweep;
use cjones::PrecisionCfg;

fn main() -> cjones::Result<()> {
    let cfg = PrecisionCfg::default();
    for row in sweep(500, 0.9, 1.1, 11, &cfg)? {
        match row.outcome {
            Ok(res) => println!(
                "r = {:.3}  log|J| = {:>12.6}  predicted = {:>12.6}  residual = {:>+10.5}",
                row.r, res.log_jones, res.prediction, res.residual
            ),
            Err(e) => println!("r = {:.3}  {e}", row.r),
        }
    }
    Ok(())
}
