//! The two-sequence recursion producing a (D, ℤ²) wavelet set inside the
//! fundamental chamber of I2(4), followed by a full verification.

use coxwave::coxeter::CoxeterData;
use coxwave::lattice::{DilationScheme, Lattice};
use coxwave::linalg::qi;
use coxwave::mra::{standard_scaling_box, ScalingBoxSpec};
use coxwave::tiling::SampleWindow;
use coxwave::wavelet::{construct_section5, verify_wavelet_set, VerifyOptions};

fn main() -> coxwave::Result<()> {
    let data = CoxeterData::new("I2:4".parse()?, true)?;
    let p = standard_scaling_box(&data.dual, &ScalingBoxSpec::unit(2))?;
    let scheme = DilationScheme::diagonal(p.frame().clone(), vec![qi(2), qi(2)])?;
    let lattice = Lattice::frame_integer(p.frame().clone());

    println!("depth  cells  volume        residual");
    for depth in [2, 4, 8, 16] {
        let state = construct_section5(&p, &scheme, 0, depth)?;
        let w = state.region()?;
        println!(
            "{depth:>5}  {:>5}  {:.10}  {:.3e}",
            w.cells().len(),
            w.volume(),
            state.residual_volume
        );
    }

    let state = construct_section5(&p, &scheme, 0, 16)?;
    let verdict = verify_wavelet_set(
        &state.region()?,
        &data.group,
        &scheme,
        &lattice,
        &SampleWindow::annulus(2, 1.0, 2.0),
        &VerifyOptions {
            n_samples: 20_000,
            ..VerifyOptions::default()
        },
    )?;
    println!(
        "\ntranslation defect {:.3e}, multiplicity-1 fraction {:.4}, Gram bound {:.3e}",
        verdict.translation_report.defect(),
        verdict.dilation_histogram.fraction(1),
        verdict.gram_bound
    );
    Ok(())
}
