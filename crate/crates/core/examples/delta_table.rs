//! The log-term coefficient δ for a handful of knots and representation
//! classes, with the rule trace.

use cjones::deltacalc::{delta_rep, RepClass, RepKind};
use cjones::knotlang::parse_knot;

fn main() -> cjones::Result<()> {
    let nonab = RepClass::new(RepKind::NonAbelian);
    let abel = RepClass::new(RepKind::AbelianNearIdentity);
    let cases = [
        ("4_1", nonab),
        ("T(2,5)", nonab),
        ("4_1 # 3_1", nonab),
        ("4_1 # 4_1 # 3_1", nonab),
        ("4_1", abel),
        ("4_1 # 3_1", abel.with_annulus_central(true)),
        ("hopf", nonab),
        ("sat(whitehead, 4_1)", RepClass::new(RepKind::Holonomy).with_satellite_hypotheses([true; 4])),
        ("sat(whitehead, 4_1)", RepClass::new(RepKind::Holonomy)),
        ("U", nonab),
    ];
    for (text, rep) in cases {
        let k = parse_knot(text)?;
        match delta_rep(&k, &rep) {
            Ok(d) => println!(
                "{text:>20} {:>10}: δ = {} h0 = {} h1_ker = {}  [{}]",
                rep.kind,
                d.delta,
                d.h0,
                d.h1_ker,
                d.trace.join(", ")
            ),
            Err(e) => println!("{text:>20} {:>10}: {e}", rep.kind),
        }
    }
    Ok(())
}
