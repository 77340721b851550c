//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with the measured quantities. Run with `--nocapture` to see the lines.

mod common;

use std::time::{Duration, Instant};

use coxwave::coxeter::{CoxeterData, Family};
use coxwave::io::{svg_2d, NamedRegion};
use coxwave::lattice::{digit_representatives, DilationScheme, Lattice};
use coxwave::linalg::{q, qi, Q};
use coxwave::mra::{multiwavelet_sets, split_scaling_set, standard_scaling_box, ScalingBoxSpec};
use coxwave::region::{Cell, Frame, Region};
use coxwave::sampling::{
    directional_decompose, reconstruction_experiment, wsk_reconstruct, BandlimitedSignal, SamplingPlan, SpectrumTerm,
    TestGrid,
};
use coxwave::tiling::{gram_max_offdiag, is_translation_tile, multiplicative_multiplicity, FamilyMember, SampleWindow};
use coxwave::wavelet::{construct_example31, construct_section5, verify_wavelet_set, Example31Options, VerifyOptions};
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, name: &str, pass: bool, detail: String) {
    println!(
        "criterion {n:>2} [{}] {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} failed: {detail}");
}

fn dyadic(frame: &Frame) -> DilationScheme {
    DilationScheme::diagonal(frame.clone(), vec![qi(2); frame.dim()]).unwrap()
}

#[test]
fn criterion_01_group_orders() {
    let start = Instant::now();
    let mut orders = Vec::new();
    let mut pass = true;
    for m in 2..=12u32 {
        let data = CoxeterData::new(Family::Dihedral(m), false).unwrap();
        let order = data.group.order();
        pass &= order == 2 * m as usize && data.group.is_closed();
        orders.push(format!("I2({m})={order}"));
    }
    let a3 = CoxeterData::new(Family::A3, false).unwrap();
    pass &= a3.group.order() == 24 && a3.group.is_closed();
    orders.push(format!("A3={}", a3.group.order()));
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(1);
    report(1, "group orders", pass, format!("{} in {elapsed:?}", orders.join(" ")));
}

#[test]
fn criterion_02_dihedral_multiwavelet_layout() {
    let frame = Frame::rotation_domain(4).unwrap();
    let p = Region::from_box(frame.clone(), vec![qi(0), qi(0)], vec![qi(1), qi(1)]).unwrap();
    let b = dyadic(&frame);
    let t = Lattice::frame_integer(frame.clone());
    let digits = digit_representatives(&b, &t).unwrap();
    let pieces = split_scaling_set(&p, &b, &t, &digits).unwrap();
    let omegas = multiwavelet_sets(&pieces, &b).unwrap();
    let expected = [[1, 0], [1, 1], [0, 1]].map(|v| p.translate(&[qi(v[0]), qi(v[1])]).unwrap());
    let pass = omegas.len() == 3 && omegas.iter().zip(&expected).all(|(a, e)| a == e);
    let layout: Vec<String> = omegas
        .iter()
        .map(|o| {
            let (lo, _) = o.bounding_box().unwrap();
            format!("P+({},{})", lo[0], lo[1])
        })
        .collect();
    report(2, "dihedral Ω_1..Ω_3 layout", pass, layout.join(", "));
}

#[test]
fn criterion_03_tetrahedron_seven_sets() {
    let start = Instant::now();
    let data = CoxeterData::new(Family::A3, true).unwrap();
    let p = standard_scaling_box(&data.dual, &ScalingBoxSpec::unit(3)).unwrap();
    let frame = p.frame().clone();
    let b = dyadic(&frame);
    let t = Lattice::frame_integer(frame);
    let digits = digit_representatives(&b, &t).unwrap();
    let pieces = split_scaling_set(&p, &b, &t, &digits).unwrap();
    let omegas = multiwavelet_sets(&pieces, &b).unwrap();
    let bp = b.apply(&p).unwrap();
    let mut disjoint = true;
    let mut union = p.clone();
    for o in &omegas {
        disjoint &= union.intersect(o).unwrap().is_empty();
        union = union.union(o).unwrap();
    }
    let equal_volumes = omegas.iter().all(|o| o.coordinate_volume() == p.coordinate_volume());
    let refinement = disjoint && bp == union;
    let elapsed = start.elapsed();
    let pass = omegas.len() == 7 && equal_volumes && refinement && elapsed < Duration::from_secs(1);
    report(
        3,
        "tetrahedron SMRA sets",
        pass,
        format!(
            "{} sets, equal volumes {equal_volumes}, BP = P ⊔ ⋃Ω_i {refinement}, |P| = {:.6}, {elapsed:?}",
            omegas.len(),
            p.volume()
        ),
    );
}

#[test]
fn criterion_04_partition_random_boxes() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let frames = [
        (Frame::identity(2), vec![qi(2), qi(2)]),
        (
            CoxeterData::new(Family::Dihedral(6), false)
                .unwrap()
                .dual
                .frame()
                .unwrap(),
            vec![qi(2), qi(3)],
        ),
        (
            CoxeterData::new(Family::A3, false).unwrap().dual.frame().unwrap(),
            vec![qi(2), qi(2), qi(2)],
        ),
    ];
    let mut cases = 0;
    let mut pass = true;
    for (frame, scales) in &frames {
        let b = DilationScheme::diagonal(frame.clone(), scales.clone()).unwrap();
        for _ in 0..20 {
            let sides: Vec<Q> = (0..frame.dim())
                .map(|_| q(rng.random_range(1..40), rng.random_range(1..12)))
                .collect();
            let k = Region::from_box(frame.clone(), vec![Q::zero(); sides.len()], sides.clone()).unwrap();
            let t = Lattice::box_lattice(frame.clone(), &sides).unwrap();
            let digits = digit_representatives(&b, &t).unwrap();
            let pieces = split_scaling_set(&k, &b, &t, &digits).unwrap();
            let qn = Q::from_integer(b.det_abs().to_integer());
            let total: Q = pieces.iter().fold(Q::zero(), |a, p| a + p.coordinate_volume());
            pass &= pieces.len() as i64 == b.det_abs().to_integer().try_into().unwrap_or(-1i64);
            pass &= total == k.coordinate_volume();
            pass &= pieces
                .iter()
                .all(|p| p.coordinate_volume() * &qn == k.coordinate_volume());
            for (i, a) in pieces.iter().enumerate() {
                for c in &pieces[i + 1..] {
                    pass &= a.intersect(c).unwrap().is_empty();
                }
            }
            cases += 1;
        }
    }
    report(
        4,
        "K_i partition",
        pass,
        format!("{cases} random boxes, exact sums and disjointness"),
    );
}

fn chamber_setup() -> (CoxeterData, Region, DilationScheme, Lattice) {
    let data = CoxeterData::new(Family::Dihedral(4), true).unwrap();
    let p = standard_scaling_box(&data.dual, &ScalingBoxSpec::unit(2)).unwrap();
    let b = dyadic(p.frame());
    let t = Lattice::frame_integer(p.frame().clone());
    (data, p, b, t)
}

#[test]
fn criterion_05_section5_recursion() {
    let start = Instant::now();
    let (_, p, b, t) = chamber_setup();
    let state = construct_section5(&p, &b, 0, 16).unwrap();
    let w = state.region().unwrap();
    let vol_err = (w.volume() - 1.0).abs();
    let tile = is_translation_tile(&w, &t).unwrap();
    let gram = gram_max_offdiag(&w, &t.dual_generator().unwrap(), 5.0).unwrap();
    let elapsed = start.elapsed();
    let pass = vol_err <= 1e-3 && tile.defect() <= 1e-3 && gram <= 1e-2 && elapsed < Duration::from_secs(30);
    report(
        5,
        "chamber recursion N=16",
        pass,
        format!(
            "|vol−1| = {vol_err:.3e}, translation defect = {:.3e}, Gram = {gram:.3e}, {} cells, {elapsed:?}",
            tile.defect(),
            w.cells().len()
        ),
    );
}

#[test]
fn criterion_06_example31() {
    let state = construct_example31(&qi(2), 4, 20, &Example31Options::default()).unwrap();
    let omega = state.region().unwrap();
    let vol_err = (omega.volume() - 1.0).abs();
    let t = Lattice::frame_integer(Frame::identity(2));
    let tile = is_translation_tile(&omega, &t).unwrap();
    let mut named: Vec<NamedRegion> = state
        .first
        .iter()
        .take(5)
        .enumerate()
        .map(|(j, r)| NamedRegion {
            name: format!("Omega_1_{}", j + 1),
            region: r.clone(),
        })
        .collect();
    named.extend(state.second.iter().take(5).enumerate().map(|(j, r)| NamedRegion {
        name: format!("Omega_2_{}", j + 1),
        region: r.clone(),
    }));
    let svg = svg_2d(&named, 600.0).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("figure1.svg");
    std::fs::write(&path, &svg).unwrap();
    let paths = svg.matches("<path").count();
    let pass = vol_err <= 1e-3 && tile.defect() <= 1e-3 && paths >= 10;
    report(
        6,
        "rotation example a=2 m=4 N=20",
        pass,
        format!(
            "|vol−1| = {vol_err:.3e}, defect vs E = {:.3e}, svg paths = {paths}",
            tile.defect()
        ),
    );
}

#[test]
fn criterion_07_chamber_tiling() {
    let cases = [
        Family::Dihedral(3),
        Family::Dihedral(4),
        Family::Dihedral(6),
        Family::A3,
    ];
    let mut lines = Vec::new();
    let mut pass = true;
    for fam in cases {
        let start = Instant::now();
        let data = CoxeterData::new(fam, false).unwrap();
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
        let window = SampleWindow::annulus(fam.dim(), 1.0, 2.0);
        let rep = multiplicative_multiplicity(&family, &window, 100_000, 7).unwrap();
        let elapsed = start.elapsed();
        let ok = rep.fraction(1) >= 0.995 && rep.histogram.keys().all(|&k| k == 1) && elapsed < Duration::from_secs(10);
        pass &= ok;
        lines.push(format!(
            "{fam}: mult1 = {:.5}, boundary = {:.1e}, {elapsed:?}",
            rep.fraction(1),
            rep.boundary_fraction
        ));
    }
    report(7, "chamber tiling", pass, lines.join("; "));
}

#[test]
fn criterion_08_section5_multiplicative_tiling() {
    let (data, p, b, t) = chamber_setup();
    let state = construct_section5(&p, &b, 0, 16).unwrap();
    let w = state.region().unwrap();
    let verdict = verify_wavelet_set(
        &w,
        &data.group,
        &b,
        &t,
        &SampleWindow::annulus(2, 1.0, 2.0),
        &VerifyOptions {
            k_max: 20,
            n_samples: 100_000,
            seed: 8,
            gram_cutoff: 5.0,
        },
    )
    .unwrap();
    let f1 = verdict.dilation_histogram.fraction(1);
    report(
        8,
        "chamber wavelet set multiplicative tiling",
        f1 >= 0.99,
        format!(
            "mult1 = {f1:.5}, mult0 = {:.2e}, boundary = {:.2e}",
            verdict.dilation_histogram.fraction(0),
            verdict.dilation_histogram.boundary_fraction
        ),
    );
}

fn signal_family(p: &Region, count: u64) -> Vec<BandlimitedSignal> {
    let cell = &p.cells()[0];
    (0..count)
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(900 + s);
            BandlimitedSignal::random_on_box(p.frame().clone(), cell.lo(), cell.hi(), 3, &mut rng).unwrap()
        })
        .collect()
}

#[test]
fn criterion_09_wsk_interpolation() {
    let (_, p, _, _) = chamber_setup();
    let plan = SamplingPlan::for_box(p.clone(), 12).unwrap();
    let mut worst = 0.0f64;
    for f in signal_family(&p, 5) {
        let samples = plan.sample(&f).unwrap();
        for n in plan.indices() {
            let x = plan.sample_point(&n).unwrap();
            let r = wsk_reconstruct(&plan, &samples, x.as_slice()).unwrap();
            worst = worst.max((r - samples.values[&n]).norm());
        }
    }
    report(
        9,
        "WSK interpolation identity",
        worst <= 1e-10,
        format!("max |error| = {worst:.3e}"),
    );
}

#[test]
fn criterion_10_wsk_convergence() {
    let (_, p, _, _) = chamber_setup();
    let plan = SamplingPlan::for_box(p.clone(), 8).unwrap();
    let radii = [8, 16, 32, 64];
    let grid = TestGrid {
        half_width: 3.0,
        points_per_axis: 13,
    };
    let signals = signal_family(&p, 5);
    let mut mean = vec![0.0; radii.len()];
    for (s, f) in signals.iter().enumerate() {
        let rows = reconstruction_experiment(&plan, f, &radii, &grid, 900 + s as u64).unwrap();
        for (m, r) in mean.iter_mut().zip(&rows) {
            *m += r.l2_rel_error / signals.len() as f64;
        }
    }
    let pass = mean.windows(2).all(|w| w[1] < w[0]);
    let table: Vec<String> = radii
        .iter()
        .zip(&mean)
        .map(|(r, e)| format!("R={r}: {e:.3e}"))
        .collect();
    report(10, "WSK truncation convergence", pass, table.join(", "));
}

/// Random disjoint small boxes, each inside a single open chamber.
fn chamber_signal(data: &CoxeterData, terms: usize, seed: u64) -> BandlimitedSignal {
    let d = data.roots.dim();
    let frame = Frame::identity(d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted: Vec<SpectrumTerm> = Vec::new();
    while accepted.len() < terms {
        let lo: Vec<Q> = (0..d).map(|_| q(rng.random_range(-64..64), 32)).collect();
        let hi: Vec<Q> = lo.iter().map(|x| x + q(1, 16)).collect();
        let cell = Cell::new(lo, hi).unwrap();
        if accepted.iter().any(|t| t.cell.overlaps(&cell)) {
            continue;
        }
        let term = SpectrumTerm {
            coeff: Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            cell,
        };
        let single = BandlimitedSignal::new(frame.clone(), vec![term.clone()]).unwrap();
        if directional_decompose(&single, &data.group, &data.simple).is_ok() {
            accepted.push(term);
        }
    }
    BandlimitedSignal::new(frame, accepted).unwrap()
}

#[test]
fn criterion_11_directional_decomposition() {
    let mut pass = true;
    let mut lines = Vec::new();
    for fam in [Family::Dihedral(4), Family::A3] {
        let data = CoxeterData::new(fam, false).unwrap();
        let f = chamber_signal(&data, 8, 11);
        let parts = directional_decompose(&f, &data.group, &data.simple).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut pointwise = 0.0f64;
        for _ in 0..100 {
            let x: Vec<f64> = (0..fam.dim()).map(|_| rng.random_range(-3.0..3.0)).collect();
            let sum: Complex64 = parts.values().map(|g| g.eval(&x)).sum();
            pointwise = pointwise.max((sum - f.eval(&x)).norm());
        }
        let parseval = (parts.values().map(|g| g.norm_sq()).sum::<f64>() - f.norm_sq()).abs();
        pass &= pointwise <= 1e-10 && parseval <= 1e-12;
        lines.push(format!(
            "{fam}: {} chambers, pointwise {pointwise:.2e}, Parseval {parseval:.2e}",
            parts.len()
        ));
    }
    report(11, "directional decomposition", pass, lines.join("; "));
}

#[test]
fn criterion_12_quadrature_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let frames = [
        Frame::identity(2),
        CoxeterData::new(Family::Dihedral(5), false)
            .unwrap()
            .dual
            .frame()
            .unwrap(),
        CoxeterData::new(Family::A3, true).unwrap().dual.frame().unwrap(),
    ];
    let mut worst = 0.0f64;
    for case in 0..50 {
        let frame = &frames[case % frames.len()];
        let d = frame.dim();
        let lo: Vec<Q> = (0..d).map(|_| q(rng.random_range(-32..32), 16)).collect();
        let hi: Vec<Q> = lo.iter().map(|x| x + q(rng.random_range(1..32), 16)).collect();
        let cell = Cell::new(lo, hi).unwrap();
        let region = Region::from_cell(frame.clone(), cell.clone()).unwrap();
        let xi: Vec<f64> = (0..d).map(|_| rng.random_range(-3.0..3.0)).collect();
        let scale = common::frame_freq(frame, &xi);
        let oracle = common::cell_quadrature(frame, &cell, &scale, &|x: &[f64]| {
            common::expi(-x.iter().zip(&xi).map(|(a, b)| a * b).sum::<f64>())
        });
        let got = region.fourier_indicator(&xi);
        worst = worst.max((got - oracle).norm() / region.volume());

        let coeff = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let f = BandlimitedSignal::new(
            frame.clone(),
            vec![SpectrumTerm {
                coeff,
                cell: cell.clone(),
            }],
        )
        .unwrap();
        let x: Vec<f64> = (0..d).map(|_| rng.random_range(-3.0..3.0)).collect();
        let scale = common::frame_freq(frame, &x);
        let oracle = coeff
            * common::cell_quadrature(frame, &cell, &scale, &|l: &[f64]| {
                common::expi(l.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>())
            });
        worst = worst.max((f.eval(&x) - oracle).norm() / (coeff.norm() * region.volume()));
    }
    report(
        12,
        "closed forms vs quadrature",
        worst <= 1e-8,
        format!("50 cases, max error / L¹ scale = {worst:.3e}"),
    );
}
