use coxwave::coxeter::{chamber_of, reflection_matrix, CoxeterData, Family};
use coxwave::lattice::{digit_representatives, reduce_mod_lattice, DilationScheme, Lattice};
use coxwave::linalg::{q, qi, Mat, Vector};
use coxwave::region::{Frame, Region};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FAMILIES: [&str; 7] = ["I2:3", "I2:4", "I2:5", "I2:8", "A3", "B3", "I2:5xA1"];

fn data(name: &str, unimodular: bool) -> CoxeterData {
    CoxeterData::new(name.parse::<Family>().unwrap(), unimodular).unwrap()
}

proptest! {
    #[test]
    fn reflections_are_involutions(v in prop::collection::vec(-5.0f64..5.0, 3), x in prop::collection::vec(-5.0f64..5.0, 3)) {
        let a = Vector::from_vec(v);
        prop_assume!(a.norm() > 1e-3);
        let s = reflection_matrix(&a).unwrap();
        prop_assert!((&s * &s - Mat::identity(3, 3)).amax() < 1e-12);
        prop_assert!((&s * &a + &a).amax() < 1e-12 * a.norm());
        let x = Vector::from_vec(x);
        // Orthogonal: lengths are preserved.
        prop_assert!(((&s * &x).norm() - x.norm()).abs() < 1e-12 * (1.0 + x.norm()));
    }

    #[test]
    fn digit_count_equals_determinant(a in 2i64..5, b in 2i64..5, c in 2i64..4) {
        let frame = Frame::identity(3);
        let scheme = DilationScheme::diagonal(frame.clone(), vec![qi(a), qi(b), qi(c)]).unwrap();
        let digits = digit_representatives(&scheme, &Lattice::frame_integer(frame)).unwrap();
        prop_assert_eq!(digits.len() as i64, a * b * c);
        let mut seen = std::collections::HashSet::new();
        for d in &digits.digits {
            prop_assert!(seen.insert(d.clone()));
        }
    }

    #[test]
    fn reduction_preserves_volume(x in -12i64..12, y in -12i64..12, w in 1i64..9, h in 1i64..9) {
        let frame = Frame::from_columns(&[vec![1.0, 0.0], vec![0.3, 1.0]]).unwrap();
        let r = Region::from_box(frame.clone(), vec![q(x, 4), q(y, 4)], vec![q(x + w, 4), q(y + h, 4)]).unwrap();
        let lattice = Lattice::from_frame_generator(frame, vec![vec![qi(1), q(1, 2)], vec![qi(0), qi(1)]]).unwrap();
        let red = reduce_mod_lattice(&r, &lattice).unwrap();
        let fb = lattice.fundamental_box();
        prop_assert!(red.region.is_subset(&fb).unwrap());
        prop_assert_eq!(red.region.coordinate_volume() + red.overlap, r.coordinate_volume());
    }
}

#[test]
fn dual_basis_is_biorthogonal() {
    for name in FAMILIES {
        for unimodular in [false, true] {
            let d = data(name, unimodular);
            let simple = d.simple.roots();
            let dual = d.dual.vectors();
            for (i, a) in simple.iter().enumerate() {
                for (j, w) in dual.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((a.dot(w) - expect).abs() < 1e-12, "{name} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn groups_are_closed_and_preserve_roots() {
    for name in FAMILIES {
        let d = data(name, false);
        assert!(d.group.is_closed(), "{name}");
        for w in d.group.elements() {
            for a in d.roots.roots() {
                assert!(d.roots.contains(&(w * a)), "{name}");
            }
        }
    }
}

#[test]
fn chamber_lookup_on_ten_thousand_points() {
    for name in ["I2:4", "I2:7", "A3", "B3"] {
        let d = data(name, false);
        let dim = d.group.dim();
        let cone = d.cone();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10_000 {
            let x = Vector::from_fn(dim, |_, _| rng.random_range(-1.0..1.0));
            let hit = chamber_of(&x, &d.simple, &d.group).unwrap();
            assert!(cone.contains(&hit.canonical, 1e-9), "{name}");
            let w = &d.group.elements()[hit.element];
            assert!((w * &hit.canonical - &x).amax() < 1e-9, "{name}");
            if !hit.boundary {
                // Interior points have exactly one chamber.
                let owners = d
                    .group
                    .elements()
                    .iter()
                    .filter(|g| cone.contains_interior(&(g.transpose() * &x), 1e-9))
                    .count();
                assert_eq!(owners, 1, "{name}");
            }
        }
    }
}
