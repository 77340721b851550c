//! Scaling set on the dihedral group I2(4): digits, the split of `BK` into
//! lattice-congruent pieces and the resulting multiwavelet sets.
//!
//! `cargo run --example mra_dihedral -- out_dir` writes the figure as SVG.

use std::path::PathBuf;

use coxwave::coxeter::CoxeterData;
use coxwave::io::{svg_2d, NamedRegion};
use coxwave::lattice::{DilationScheme, Lattice};
use coxwave::linalg::{format_q, qi};
use coxwave::mra::{standard_scaling_box, MraLadder, ScalingBoxSpec};

fn main() -> coxwave::Result<()> {
    let data = CoxeterData::new("I2:4".parse()?, true)?;
    let k = standard_scaling_box(&data.dual, &ScalingBoxSpec::unit(2))?;
    let scheme = DilationScheme::diagonal(k.frame().clone(), vec![qi(2), qi(2)])?;
    let lattice = Lattice::frame_integer(k.frame().clone());
    let ladder = MraLadder::new(k, scheme, lattice)?;

    let digits = ladder.digits()?;
    let shown: Vec<String> = digits
        .digits
        .iter()
        .map(|d| format!("({})", d.iter().map(format_q).collect::<Vec<_>>().join(",")))
        .collect();
    println!("digits: {}", shown.join(" "));

    let bundle = ladder.decompose(5.0)?;
    for (i, w) in bundle.wavelet_sets.iter().enumerate() {
        let (lo, hi) = w.bounding_box().expect("nonempty");
        let fmt = |v: &[coxwave::linalg::Q]| v.iter().map(format_q).collect::<Vec<_>>().join(",");
        println!(
            "Ω_{}: [{}) to [{}), volume {:.4}",
            i + 1,
            fmt(&lo),
            fmt(&hi),
            w.volume()
        );
    }
    println!(
        "partition {}, congruence {}, refinement {}, Gram {:.1e}",
        bundle.checks.partition, bundle.checks.congruence, bundle.checks.refinement, bundle.checks.gram
    );

    let mut named = vec![NamedRegion {
        name: "K".into(),
        region: bundle.k.clone(),
    }];
    named.extend(bundle.wavelet_sets.iter().enumerate().map(|(i, r)| NamedRegion {
        name: format!("Omega_{}", i + 1),
        region: r.clone(),
    }));
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let path = dir.join("mra_dihedral.svg");
    std::fs::write(&path, svg_2d(&named, 480.0)?)?;
    println!("figure: {}", path.display());
    Ok(())
}
