//! The rotation-dilation wavelet set with `D = {aᵏR_{2πj/m}}`, for a = 2 and
//! m = 4, plus the rational-wedge variant for m = 6.

use std::path::PathBuf;

use coxwave::io::{svg_2d, NamedRegion};
use coxwave::lattice::Lattice;
use coxwave::linalg::qi;
use coxwave::region::Frame;
use coxwave::tiling::is_translation_tile;
use coxwave::wavelet::{construct_example31, piece_volumes, Example31Options};

fn main() -> coxwave::Result<()> {
    let opts = Example31Options::default();
    let state = construct_example31(&qi(2), 4, 20, &opts)?;
    let omega = state.region()?;
    let tile = is_translation_tile(&omega, &Lattice::frame_integer(Frame::identity(2)))?;
    println!("a = 2, m = 4, N = 20");
    println!("  first piece volumes: {:?}", &piece_volumes(&state)[..4]);
    println!("  |Ω| = {:.9}, defect mod ℤ² = {:.3e}", omega.volume(), tile.defect());

    let named: Vec<NamedRegion> = state
        .first
        .iter()
        .zip(&state.second)
        .take(6)
        .enumerate()
        .flat_map(|(j, (a, b))| {
            [
                NamedRegion {
                    name: format!("Omega_1_{}", j + 1),
                    region: a.clone(),
                },
                NamedRegion {
                    name: format!("Omega_2_{}", j + 1),
                    region: b.clone(),
                },
            ]
        })
        .collect();
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let path = dir.join("rotation_wavelet_set.svg");
    std::fs::write(&path, svg_2d(&named, 480.0)?)?;
    println!("  figure: {}", path.display());

    let hex = construct_example31(&qi(2), 6, 12, &opts)?;
    println!("\na = 2, m = 6, N = 12 (approximate: {})", hex.approximate);
    println!("  |Ω| = {:.6}, |E| = {:.6}", hex.region()?.volume(), hex.base.volume());
    for n in &hex.notes {
        println!("  note: {n}");
    }
    Ok(())
}
