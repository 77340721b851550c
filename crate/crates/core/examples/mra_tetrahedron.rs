//! Three-dimensional scaling set for the tetrahedral group A3 with dyadic
//! dilation, exported as a box list.

use std::path::PathBuf;

use coxwave::coxeter::CoxeterData;
use coxwave::io::{box_list, to_json, NamedRegion};
use coxwave::lattice::{DilationScheme, Lattice};
use coxwave::linalg::qi;
use coxwave::mra::{standard_scaling_box, MraLadder, ScalingBoxSpec};

fn main() -> coxwave::Result<()> {
    let data = CoxeterData::new("A3".parse()?, true)?;
    let k = standard_scaling_box(&data.dual, &ScalingBoxSpec::unit(3))?;
    let scheme = DilationScheme::diagonal(k.frame().clone(), vec![qi(2); 3])?;
    let lattice = Lattice::frame_integer(k.frame().clone());
    let ladder = MraLadder::new(k, scheme, lattice)?;
    let bundle = ladder.decompose(3.0)?;

    println!(
        "|det B| = {}, {} wavelet sets",
        bundle.scheme.q,
        bundle.wavelet_sets.len()
    );
    for (i, w) in bundle.wavelet_sets.iter().enumerate() {
        println!("  Ω_{}: {} cells, volume {:.6}", i + 1, w.cells().len(), w.volume());
    }
    println!("all checks pass: {}", bundle.checks.all_pass(1e-8));

    let named: Vec<NamedRegion> = bundle
        .wavelet_sets
        .iter()
        .enumerate()
        .map(|(i, r)| NamedRegion {
            name: format!("Omega_{}", i + 1),
            region: r.clone(),
        })
        .collect();
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let path = dir.join("mra_tetrahedron.boxes.json");
    std::fs::write(&path, to_json(&box_list(&named))?)?;
    println!("box list: {}", path.display());
    Ok(())
}
