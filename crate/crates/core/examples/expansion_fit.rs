//! Least-squares extraction of a·N + b·log N + c, with and without a 1/N
//! correction.

use cjones::asym::fit_expansion_with;
use cjones::knotlang::parse_knot;
use cjones::numkit::FitModel;
use cjones::PrecisionCfg;

fn main() -> cjones::Result<()> {
    let cfg = PrecisionCfg::default();
    let n_list: Vec<u64> = (1..=10).map(|i| 200 * i).collect();
    let fig8 = parse_knot("4_1")?;
    for model in [FitModel::LogAffine, FitModel::LogAffineWithInverse] {
        let f = fit_expansion_with(&fig8, &n_list, 1.0, model, &cfg)?;
        println!(
            "{model:?}: a = {:.8} b = {:.5} c = {:.5} d = {:?}  Vol ≈ {:.8}  δ ≈ {:.4}  rms = {:.1e}",
            f.a, f.b, f.c, f.d, f.vol_est, f.delta_est, f.rms
        );
    }

    let unknot = fit_expansion_with(&parse_knot("U")?, &n_list, 0.5, FitModel::LogAffine, &cfg)?;
    println!("unknot at r = 0.5: b = {:.5}", unknot.b);
    Ok(())
}
