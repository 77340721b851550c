//! Splitting a band-limited signal by the Weyl chambers of I2(4) and
//! evaluating the holomorphic extension of one chamber component in its tube.

use coxwave::coxeter::CoxeterData;
use coxwave::linalg::{q, rationalize, Vector};
use coxwave::region::{Cell, Frame, Region};
use coxwave::sampling::{dual_cone, eval_tube_extension, tube_damping_bound, BandlimitedSignal, SpectrumTerm};
use num_complex::Complex64;

fn main() -> coxwave::Result<()> {
    let data = CoxeterData::new("I2:4".parse()?, true)?;
    let frame = Frame::identity(2);
    // One small box of spectrum inside each chamber, around w·c for an interior point c.
    let c = data
        .dual
        .vectors()
        .iter()
        .fold(Vector::zeros(2), |acc, v| acc + v.normalize());
    let c = c.normalize() * 0.6;
    let mut terms = Vec::new();
    for (i, w) in data.group.elements().iter().enumerate() {
        let centre = w * &c;
        let lo: Vec<_> = centre
            .iter()
            .map(|x| rationalize(*x, 1 << 20, 1e-6).unwrap() - q(1, 32))
            .collect();
        let hi: Vec<_> = lo.iter().map(|l| l + q(1, 16)).collect();
        terms.push(SpectrumTerm {
            coeff: Complex64::new(1.0 + i as f64, 0.5),
            cell: Cell::new(lo, hi)?,
        });
    }
    let f = BandlimitedSignal::new(frame.clone(), terms)?;
    let parts = coxwave::sampling::directional_decompose(&f, &data.group, &data.simple)?;
    println!("{} chamber components", parts.len());

    let x = [0.4, -0.7];
    let total: Complex64 = parts.values().map(|g| g.eval(&x)).sum();
    println!("|f(x) − Σ f_w(x)| = {:.2e}", (f.eval(&x) - total).norm());

    let (&idx, f_w) = parts.iter().next().expect("nonempty");
    let cone = dual_cone(&data.simple, &data.group.elements()[idx])?;
    let support: Region = f_w.support()?;
    println!("component {idx}: spectrum area {:.4}", support.volume());
    println!("   t     |F(x + ity)|    damping bound");
    let dir = cone
        .generators()
        .iter()
        .fold(vec![0.0; 2], |acc, g| vec![acc[0] + g[0], acc[1] + g[1]]);
    for t in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let y = [t * dir[0], t * dir[1]];
        let v = eval_tube_extension(f_w, &cone, &x, &y);
        match v {
            Ok(v) => println!("{t:>4.1}   {:.6e}   {:.6e}", v.norm(), tube_damping_bound(f_w, &y)),
            Err(e) => println!("{t:>4.1}   {e}"),
        }
    }
    Ok(())
}
