//! Monte Carlo covering multiplicity: the chambers of each group tile the
//! plane or space, and a truncated dyadic family tiles an annulus.

use coxwave::coxeter::CoxeterData;
use coxwave::linalg::{qi, Mat};
use coxwave::region::{Frame, Region};
use coxwave::tiling::{multiplicative_multiplicity, FamilyMember, SampleWindow};

fn main() -> coxwave::Result<()> {
    for name in ["I2:4", "I2:6", "A3", "B3"] {
        let data = CoxeterData::new(name.parse()?, false)?;
        let cone = data.cone();
        let family: Vec<FamilyMember> = data
            .group
            .elements()
            .iter()
            .map(|w| FamilyMember {
                matrix: w.clone(),
                tile: &cone,
            })
            .collect();
        let dim = data.group.dim();
        let report = multiplicative_multiplicity(&family, &SampleWindow::annulus(dim, 0.0, 1.0), 50_000, 1)?;
        println!(
            "{name:>5}: multiplicity 1 on {:.4} of samples, boundary {:.1e}",
            report.fraction(1),
            report.boundary_fraction
        );
    }

    let frame = Frame::identity(2);
    let shell = Region::from_box(frame.clone(), vec![qi(0), qi(0)], vec![qi(2), qi(2)])?
        .subtract(&Region::from_box(frame, vec![qi(0), qi(0)], vec![qi(1), qi(1)])?)?;
    let family: Vec<FamilyMember> = (-20..=20)
        .map(|k| FamilyMember {
            matrix: Mat::identity(2, 2) * 2f64.powi(k),
            tile: &shell,
        })
        .collect();
    let window = SampleWindow::Region(Region::from_box(
        Frame::identity(2),
        vec![qi(1) / qi(10), qi(1) / qi(10)],
        vec![qi(10), qi(10)],
    )?);
    let report = multiplicative_multiplicity(&family, &window, 50_000, 2)?;
    println!("dyadic shells on the first quadrant: histogram {:?}", report.histogram);
    Ok(())
}
