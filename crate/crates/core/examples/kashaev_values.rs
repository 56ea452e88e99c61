//! Small Kashaev invariants and the reduced colored Jones polynomial at a
//! generic root of unity.

use cjones::jones::{jones_eval, jones_reduced, kashaev_fig8, EvalPoint};
use cjones::knotlang::parse_knot;
use cjones::PrecisionCfg;

fn main() -> cjones::Result<()> {
    let cfg = PrecisionCfg::new(30)?;
    for n in 2..=8 {
        println!("<4_1>_{n} = {:.20}", kashaev_fig8(n, &cfg)?.to_f64());
    }

    let p = EvalPoint::new(40, 0.93)?;
    for text in ["U", "hopf", "4_1", "4_1 # 4_1"] {
        let k = parse_knot(text)?;
        let j = jones_eval(&k, &p, &cfg)?;
        let v = jones_reduced(&k, &p, &cfg)?;
        println!("{text:>10}: log|J| = {:>12.6}  log|J/[N]| = {:>12.6}", j.log_mag_f64(), v.log_mag_f64());
    }
    Ok(())
}
