//! Sampling and reconstruction of a band-limited signal: the error of the
//! truncated series shrinks as the truncation radius grows, and the dilated
//! plan recovers a signal with spectrum in `2P`.

use coxwave::lattice::DilationScheme;
use coxwave::linalg::{q, qi};
use coxwave::region::{Frame, Region};
use coxwave::sampling::{
    reconstruction_experiment, wsk_reconstruct_dilated, BandlimitedSignal, SamplingPlan, TestGrid,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> coxwave::Result<()> {
    let frame = Frame::identity(2);
    let half = vec![q(-1, 2), q(-1, 2)];
    let p = Region::from_box(frame.clone(), half.clone(), vec![q(1, 2), q(1, 2)])?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = BandlimitedSignal::random_on_box(frame.clone(), &half, &[q(1, 2), q(1, 2)], 3, &mut rng)?;

    let plan = SamplingPlan::for_box(p.clone(), 8)?;
    let grid = TestGrid {
        half_width: 3.0,
        points_per_axis: 13,
    };
    let rows = reconstruction_experiment(&plan, &f, &[8, 16, 32, 64], &grid, 11)?;
    println!("   R   relative L²     sup error");
    for r in &rows {
        println!("{:>4}   {:.4e}   {:.4e}", r.radius, r.l2_rel_error, r.sup_error);
    }

    let scheme = DilationScheme::diagonal(frame.clone(), vec![qi(2), qi(2)])?;
    let g = BandlimitedSignal::random_on_box(frame, &[qi(-1), qi(-1)], &[qi(1), qi(1)], 2, &mut rng)?;
    let fine = SamplingPlan::for_box(p, 48)?.at_level(scheme, 1)?;
    let samples = fine.sample(&g)?;
    let x = [0.37, -1.21];
    let got = wsk_reconstruct_dilated(&fine, &samples, &x)?;
    println!("\nlevel 1 at x = {x:?}: |g − Σ| = {:.3e}", (got - g.eval(&x)).norm());
    Ok(())
}
