//! Root systems, reflection groups, simple roots and chambers for every
//! supported family.

use coxwave::coxeter::{chamber_of, CoxeterData, Family};
use coxwave::linalg::Vector;

fn fmt(v: &Vector) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:+.4}")).collect();
    format!("({})", parts.join(", "))
}

fn main() -> coxwave::Result<()> {
    for name in ["I2:4", "I2:5", "I2:6", "A3", "B3", "I2:3xA1"] {
        let family: Family = name.parse()?;
        let data = CoxeterData::new(family, false)?;
        println!(
            "{family:>8}: {:>2} roots, |W| = {:>2}, dual basis error {:.1e}",
            data.roots.roots().len(),
            data.group.order(),
            data.dual.max_gram_error(&data.simple)
        );
        for (i, a) in data.simple.roots().iter().enumerate() {
            println!("          α_{} = {}", i + 1, fmt(a));
        }
    }

    let data = CoxeterData::new("I2:4".parse()?, false)?;
    let x = Vector::from_vec(vec![-0.3, 0.8]);
    let hit = chamber_of(&x, &data.simple, &data.group)?;
    println!(
        "\nx = {} lies in w·C with w = element {} (canonical point {})",
        fmt(&x),
        hit.element,
        fmt(&hit.canonical)
    );
    Ok(())
}
