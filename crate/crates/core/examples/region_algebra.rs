//! Exact box-region algebra and the closed-form Fourier transform of an
//! indicator function.

use coxwave::linalg::{q, qi};
use coxwave::region::{Frame, Region};

fn main() -> coxwave::Result<()> {
    let frame = Frame::identity(2);
    let square = Region::from_box(frame.clone(), vec![qi(0), qi(0)], vec![qi(2), qi(2)])?;
    let hole = Region::from_box(frame.clone(), vec![q(1, 2), q(1, 2)], vec![q(3, 2), q(3, 2)])?;
    let ring = square.subtract(&hole)?;
    println!(
        "square minus hole: {} cells, area {}",
        ring.cells().len(),
        ring.volume()
    );

    let strip = Region::from_box(frame.clone(), vec![qi(1), qi(-1)], vec![qi(3), qi(1)])?;
    let u = ring.union(&strip)?;
    let i = ring.intersect(&strip)?;
    println!(
        "|A ∪ S| + |A ∩ S| = {:.4}, |A| + |S| = {:.4}",
        u.volume() + i.volume(),
        ring.volume() + strip.volume()
    );

    // A lattice-skewed frame: the same algebra runs in frame coordinates.
    let skew = Frame::from_columns(&[vec![1.0, 0.0], vec![1.0, 1.0]])?;
    let p = Region::from_box(skew, vec![qi(0), qi(0)], vec![qi(1), qi(1)])?;
    println!("skewed unit box: ambient area {}", p.volume());

    println!("\n      ξ           χ̂_ring(ξ)");
    for xi in [[0.0, 0.0], [0.25, 0.0], [0.5, 0.5], [1.0, -0.3]] {
        let v = ring.fourier_indicator(&xi);
        println!("  ({:>5.2},{:>5.2})   {:>9.5} {:+.5}i", xi[0], xi[1], v.re, v.im);
    }

    let shifted = ring.translate(&[qi(1), q(-1, 3)])?;
    let xi = [0.7, 0.2];
    let phase = (-2.0 * std::f64::consts::PI * (xi[0] * 1.0 - xi[1] / 3.0)).sin_cos();
    let expect = ring.fourier_indicator(&xi) * num_complex::Complex64::new(phase.1, phase.0);
    let got = shifted.fourier_indicator(&xi);
    println!("\ntranslation modulation error {:.2e}", (got - expect).norm());
    Ok(())
}
