//! Subcommands behind the `coxwave` binary: `construct`, `verify`, `sample`
//! and `report`. Exit codes: 0 on success, 1 when a verification check
//! fails, 2 on invalid input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterData, Family, MatrixGroup};
use crate::error::{Error, Result};
use crate::io::{box_list, svg_2d, to_json, NamedRegion, RootSystemDoc};
use crate::lattice::{reduce_mod_lattice, DilationScheme, Lattice};
use crate::linalg::{format_q, parse_q, Q};
use crate::mra::{standard_scaling_box, MraLadder, ScalingBoxSpec};
use crate::region::{Frame, Region};
use crate::sampling::{reconstruction_experiment, BandlimitedSignal, ExperimentRow, SamplingPlan, TestGrid};
use crate::tiling::{gram_max_offdiag, is_translation_tile, multiplicative_multiplicity, FamilyMember, SampleWindow};
use crate::wavelet::{construct_example31, construct_section5, Example31Options};

#[derive(Parser, Debug)]
#[command(
    name = "coxwave",
    version,
    about = "Coxeter-group wavelet sets and spectral sampling"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a scaling-set, recursion or rotation-example scene and export it.
    Construct(ConstructArgs),
    /// Run tiling, multiplicity and Gram checks on a scene.
    Verify(VerifyArgs),
    /// Reconstruct a signal from lattice samples at several radii.
    Sample(SampleArgs),
    /// Summarize a scene or dump a root system.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Mra,
    Section5,
    Example31,
}

/// Acceptance thresholds for `verify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Largest admissible gap + overlap volume against the lattice.
    #[serde(with = "crate::io::f17")]
    pub defect: f64,
    /// Largest admissible normalized off-diagonal Gram entry.
    #[serde(with = "crate::io::f17")]
    pub gram: f64,
    /// Smallest admissible fraction of samples covered exactly once.
    #[serde(with = "crate::io::f17")]
    pub multiplicity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            defect: 1e-3,
            gram: 1e-2,
            multiplicity: 0.99,
        }
    }
}

/// Every knob of `construct` and `verify`, readable from one JSON file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneConfig {
    pub family: Option<String>,
    /// `diag:a_1,...,a_n`.
    pub scheme: Option<String>,
    /// `frame` (the frame's integer lattice) or `box` (side lengths of `P`).
    pub lattice: Option<String>,
    pub method: Option<MethodArg>,
    pub depth: Option<usize>,
    pub a: Option<String>,
    pub m: Option<u32>,
    pub sides: Option<String>,
    pub alpha_index: Option<usize>,
    pub unimodular: Option<bool>,
    pub columns: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub k_max: Option<i32>,
    pub gram_cutoff: Option<f64>,
    pub tolerances: Option<Tolerances>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl SceneConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = read_text(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `other` win.
    pub fn overlay(self, other: SceneConfig) -> SceneConfig {
        macro_rules! pick {
            ($($f:ident),*) => { SceneConfig { $($f: other.$f.or(self.$f)),* } };
        }
        pick!(
            family,
            scheme,
            lattice,
            method,
            depth,
            a,
            m,
            sides,
            alpha_index,
            unimodular,
            columns,
            seed,
            samples,
            k_max,
            gram_cutoff,
            tolerances,
            out,
            svg
        )
    }
}

#[derive(Args, Debug, Default)]
pub struct ConstructArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `I2:m`, `A3`, `B3` or `I2:mxA1`.
    #[arg(long)]
    pub family: Option<String>,
    /// `diag:a_1,...,a_n`.
    #[arg(long)]
    pub scheme: Option<String>,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    #[arg(long)]
    pub depth: Option<usize>,
    /// Dilation factor of the rotation example.
    #[arg(long)]
    pub a: Option<String>,
    /// Rotation order of the rotation example.
    #[arg(long)]
    pub m: Option<u32>,
    /// Side lengths of `P`, comma separated rationals.
    #[arg(long)]
    pub sides: Option<String>,
    #[arg(long)]
    pub alpha_index: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// SVG output for 2D scenes; defaults to the scene path with `.svg`.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

impl ConstructArgs {
    fn as_config(&self) -> SceneConfig {
        SceneConfig {
            family: self.family.clone(),
            scheme: self.scheme.clone(),
            method: self.method,
            depth: self.depth,
            a: self.a.clone(),
            m: self.m,
            sides: self.sides.clone(),
            alpha_index: self.alpha_index,
            out: self.out.clone(),
            svg: self.svg.clone(),
            ..SceneConfig::default()
        }
    }
}

#[derive(Args, Debug, Default)]
pub struct VerifyArgs {
    /// Scene written by `construct`.
    #[arg(long)]
    pub scene: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub k_max: Option<i32>,
    #[arg(long)]
    pub gram_cutoff: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include wall-clock time in the report (makes it non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args, Debug, Default)]
pub struct SampleArgs {
    #[arg(long)]
    pub plan: PathBuf,
    #[arg(long)]
    pub signal: PathBuf,
    /// Comma-separated truncation radii.
    #[arg(long, default_value = "8,16,32,64")]
    pub radii: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct ReportArgs {
    /// Scene to summarize.
    #[arg(long, conflicts_with = "family")]
    pub scene: Option<PathBuf>,
    /// Root system to dump as JSON.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Self-contained description of a constructed scene.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub method: MethodArg,
    /// Reflection family; absent for the rotation example.
    pub family: Option<String>,
    /// Rotation order of the rotation example.
    pub rotation_order: Option<u32>,
    /// Frame-diagonal dilation factors.
    #[serde(with = "crate::io::qvec")]
    pub scales: Vec<Q>,
    /// Lattice generator in frame coordinates (columns).
    #[serde(with = "crate::io::qvecs")]
    pub lattice: Vec<Vec<Q>>,
    /// Translation tile the sets are congruent to (`K`, `P` or `E`).
    pub base: Region,
    pub sets: Vec<NamedRegion>,
    #[serde(with = "crate::io::f17")]
    pub residual_volume: f64,
    pub approximate: bool,
    pub notes: Vec<String>,
}

impl Scene {
    fn frame(&self) -> &Frame {
        self.base.frame()
    }

    fn scheme(&self) -> Result<DilationScheme> {
        DilationScheme::diagonal(self.frame().clone(), self.scales.clone())
    }

    fn lattice(&self) -> Result<Lattice> {
        Lattice::from_frame_generator(self.frame().clone(), self.lattice.clone())
    }

    fn group(&self) -> Result<MatrixGroup> {
        match (&self.family, self.rotation_order) {
            (Some(f), _) => Ok(CoxeterData::new(f.parse()?, false)?.group),
            (None, Some(m)) => MatrixGroup::cyclic_rotations(m),
            (None, None) => Ok(MatrixGroup::trivial(self.frame().dim())),
        }
    }

    /// Union of all sets.
    pub fn union(&self) -> Result<Region> {
        self.sets
            .iter()
            .try_fold(Region::empty(self.frame().clone()), |acc, s| acc.union(&s.region))
    }
}

fn parse_list(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(|x| parse_q(x.trim())).collect()
}

fn parse_scheme(s: &str) -> Result<Vec<Q>> {
    let body = s
        .strip_prefix("diag:")
        .ok_or_else(|| Error::Config(format!("scheme `{s}` must look like diag:a1,a2,...")))?;
    parse_list(body)
}

fn lattice_generator(kind: Option<&str>, sides: &[Q]) -> Result<Vec<Vec<Q>>> {
    match kind.unwrap_or("frame") {
        "frame" => Ok(crate::linalg::qmat_identity(sides.len())),
        "box" => Ok(crate::linalg::qmat_diag(sides)),
        other => Err(Error::Config(format!(
            "unknown lattice `{other}` (expected frame or box)"
        ))),
    }
}

/// Builds the scene described by `cfg`.
pub fn build_scene(cfg: &SceneConfig) -> Result<Scene> {
    let method = cfg.method.ok_or_else(|| Error::Config("missing method".into()))?;
    match method {
        MethodArg::Mra | MethodArg::Section5 => {
            let family: Family = cfg
                .family
                .as_deref()
                .ok_or_else(|| Error::Config("missing family".into()))?
                .parse()?;
            let data = CoxeterData::new(family, cfg.unimodular.unwrap_or(true))?;
            let dim = family.dim();
            let sides = match &cfg.sides {
                Some(s) => parse_list(s)?,
                None => ScalingBoxSpec::unit(dim).sides,
            };
            let p = standard_scaling_box(&data.dual, &ScalingBoxSpec { sides: sides.clone() })?;
            let scales = match &cfg.scheme {
                Some(s) => parse_scheme(s)?,
                None => vec![crate::linalg::qi(2); dim],
            };
            if scales.len() != dim {
                return Err(Error::Config(format!(
                    "scheme has {} factors, family has dimension {dim}",
                    scales.len()
                )));
            }
            let scheme = DilationScheme::diagonal(p.frame().clone(), scales.clone())?;
            let lattice_rows = lattice_generator(cfg.lattice.as_deref(), &sides)?;
            let lattice = Lattice::from_frame_generator(p.frame().clone(), lattice_rows.clone())?;
            let (sets, residual, notes) = if method == MethodArg::Mra {
                let ladder = MraLadder::new(p.clone(), scheme, lattice)?;
                let bundle = ladder.decompose(2.0)?;
                let sets = bundle
                    .wavelet_sets
                    .into_iter()
                    .enumerate()
                    .map(|(i, region)| NamedRegion {
                        name: format!("Omega_{}", i + 1),
                        region,
                    })
                    .collect();
                (sets, 0.0, Vec::new())
            } else {
                let state = construct_section5(&p, &scheme, cfg.alpha_index.unwrap_or(0), cfg.depth.unwrap_or(16))?;
                let sets = vec![NamedRegion {
                    name: format!("W_{}", state.depth),
                    region: state.region()?,
                }];
                (sets, state.residual_volume, state.notes)
            };
            Ok(Scene {
                method,
                family: Some(family.to_string()),
                rotation_order: None,
                scales,
                lattice: lattice_rows,
                base: p,
                sets,
                residual_volume: residual,
                approximate: false,
                notes,
            })
        }
        MethodArg::Example31 => {
            let a = parse_q(cfg.a.as_deref().unwrap_or("2"))?;
            let m = cfg.m.unwrap_or(4);
            let opts = Example31Options {
                columns: cfg.columns.unwrap_or(Example31Options::default().columns),
            };
            let state = construct_example31(&a, m, cfg.depth.unwrap_or(20), &opts)?;
            let sets = vec![NamedRegion {
                name: format!("Omega_{}", state.depth),
                region: state.region()?,
            }];
            Ok(Scene {
                method,
                family: None,
                rotation_order: Some(m),
                scales: vec![a.clone(), a],
                lattice: crate::linalg::qmat_identity(2),
                base: state.base.clone(),
                sets,
                residual_volume: state.residual_volume,
                approximate: state.approximate,
                notes: state.notes,
            })
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(path, contents)?;
    Ok(())
}

/// Figures for a scene: SVG in 2D, box list JSON in 3D.
fn export_figures(scene: &Scene, scene_path: &Path, svg: Option<&Path>) -> Result<PathBuf> {
    let mut named = vec![NamedRegion {
        name: "base".into(),
        region: scene.base.clone(),
    }];
    named.extend(scene.sets.iter().cloned());
    if scene.base.dim() == 2 {
        let path = svg
            .map(Path::to_path_buf)
            .unwrap_or_else(|| scene_path.with_extension("svg"));
        write_file(&path, &svg_2d(&named, 640.0)?)?;
        Ok(path)
    } else {
        let path = scene_path.with_extension("boxes.json");
        write_file(&path, &to_json(&box_list(&named))?)?;
        Ok(path)
    }
}

/// `construct`: builds the scene, writes JSON and a figure.
pub fn cmd_construct(args: &ConstructArgs) -> Result<String> {
    let base = match &args.config {
        Some(p) => SceneConfig::load(p)?,
        None => SceneConfig::default(),
    };
    let cfg = base.overlay(args.as_config());
    let scene = build_scene(&cfg)?;
    let out = cfg.out.clone().unwrap_or_else(|| PathBuf::from("scene.json"));
    write_file(&out, &to_json(&scene)?)?;
    let fig = export_figures(&scene, &out, cfg.svg.as_deref())?;
    let mut msg = format!(
        "wrote {} ({} sets, residual {:.3e}) and {}",
        out.display(),
        scene.sets.len(),
        scene.residual_volume,
        fig.display()
    );
    for n in &scene.notes {
        write!(msg, "\nnote: {n}").ok();
    }
    Ok(msg)
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    #[serde(with = "crate::io::f17")]
    pub measured: f64,
    #[serde(with = "crate::io::f17")]
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub method: MethodArg,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
    pub seed: u64,
    pub n_samples: usize,
    pub tolerances: Tolerances,
    pub approximate: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_clock_ms: Option<f64>,
}

/// Runs every check appropriate to the scene's method.
pub fn verify_scene(scene: &Scene, cfg: &SceneConfig) -> Result<VerificationReport> {
    let tol = cfg.tolerances.clone().unwrap_or_default();
    let seed = cfg.seed.unwrap_or(0);
    let n_samples = cfg.samples.unwrap_or(100_000);
    let k_max = cfg.k_max.unwrap_or(20);
    let cutoff = cfg.gram_cutoff.unwrap_or(5.0);
    let lattice = scene.lattice()?;
    let scheme = scene.scheme()?;
    let spectrum = lattice.dual_generator()?;
    let mut checks = Vec::new();
    let base_fold = reduce_mod_lattice(&scene.base, &lattice)?;
    for set in &scene.sets {
        let tile = is_translation_tile(&set.region, &lattice)?;
        checks.push(CheckResult {
            name: format!("{}: translation defect", set.name),
            pass: tile.defect() <= tol.defect,
            measured: tile.defect(),
            tolerance: tol.defect,
        });
        let fold = reduce_mod_lattice(&set.region, &lattice)?;
        let mismatch =
            fold.region.subtract(&base_fold.region)?.volume() + base_fold.region.subtract(&fold.region)?.volume();
        checks.push(CheckResult {
            name: format!("{}: congruence to base", set.name),
            pass: mismatch <= tol.defect,
            measured: mismatch,
            tolerance: tol.defect,
        });
        let gram = if set.region.is_empty() {
            f64::INFINITY
        } else {
            gram_max_offdiag(&set.region, &spectrum, cutoff)?
        };
        checks.push(CheckResult {
            name: format!("{}: Gram off-diagonal", set.name),
            pass: gram <= tol.gram,
            measured: gram,
            tolerance: tol.gram,
        });
    }
    let union = scene.union()?;
    if scene.method == MethodArg::Mra {
        let bk = scheme.apply(&scene.base)?;
        let whole = union.union(&scene.base)?;
        let overlap = union.intersect(&scene.base)?.volume();
        let diff = bk.subtract(&whole)?.volume() + whole.subtract(&bk)?.volume() + overlap;
        checks.push(CheckResult {
            name: "refinement BK = K ⊔ ⋃Ω_i".into(),
            pass: diff == 0.0,
            measured: diff,
            tolerance: 0.0,
        });
    }
    let group = scene.group()?;
    let mut family = Vec::new();
    for k in -k_max..=k_max {
        let bk = scheme.ambient_power(k)?;
        for w in group.elements() {
            family.push(FamilyMember {
                matrix: &bk * w,
                tile: &union,
            });
        }
    }
    let window = SampleWindow::annulus(union.dim(), 1.0, 2.0);
    let mult = multiplicative_multiplicity(&family, &window, n_samples, seed)?;
    checks.push(CheckResult {
        name: "dilation multiplicity one".into(),
        pass: mult.fraction(1) >= tol.multiplicity,
        measured: mult.fraction(1),
        tolerance: tol.multiplicity,
    });
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        method: scene.method,
        checks,
        all_pass,
        seed,
        n_samples,
        tolerances: tol,
        approximate: scene.approximate,
        wall_clock_ms: None,
    })
}

pub fn load_scene(path: &Path) -> Result<Scene> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// `verify`: returns the report text and whether every check passed.
pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let start = Instant::now();
    let scene = load_scene(&args.scene)?;
    let base = match &args.config {
        Some(p) => SceneConfig::load(p)?,
        None => SceneConfig::default(),
    };
    let cfg = base.overlay(SceneConfig {
        seed: args.seed,
        samples: args.samples,
        k_max: args.k_max,
        gram_cutoff: args.gram_cutoff,
        out: args.out.clone(),
        ..SceneConfig::default()
    });
    let mut report = verify_scene(&scene, &cfg)?;
    if args.timings {
        report.wall_clock_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let json = to_json(&report)?;
    if let Some(out) = &cfg.out {
        write_file(out, &json)?;
    }
    let mut text = String::new();
    for c in &report.checks {
        writeln!(
            text,
            "[{}] {}: {:.3e} (tolerance {:.1e})",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.measured,
            c.tolerance
        )
        .ok();
    }
    if cfg.out.is_none() {
        text.push_str(&json);
    }
    Ok((text, report.all_pass))
}

/// Sampling plan file for `sample`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanDoc {
    /// Single-box spectral support `P`.
    pub support: Region,
    /// Level `j`; the signal must be band-limited to `BʲP`.
    #[serde(default)]
    pub level: i32,
    /// Frame-diagonal dilation factors, required when `level ≠ 0`.
    #[serde(default, with = "opt_qvec", skip_serializing_if = "Option::is_none")]
    pub scales: Option<Vec<Q>>,
    pub grid: TestGrid,
    #[serde(default)]
    pub seed: u64,
}

mod opt_qvec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Q>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| v.iter().map(format_q).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Q>>, D::Error> {
        let raw = Option::<Vec<String>>::deserialize(d)?;
        raw.map(|v| v.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>())
            .transpose()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleReport {
    pub level: i32,
    pub rows: Vec<ExperimentRow>,
}

/// Builds the plan and checks that the signal lives on `BʲP` in the same frame.
pub fn plan_from_doc(doc: &PlanDoc, signal: &BandlimitedSignal) -> Result<SamplingPlan> {
    if !doc.support.frame().same_as(signal.frame()) {
        return Err(Error::InvalidInput("plan and signal use different frames".into()));
    }
    let mut plan = SamplingPlan::for_box(doc.support.clone(), 8)?;
    let mut band = doc.support.clone();
    if doc.level != 0 {
        let scales = doc
            .scales
            .clone()
            .ok_or_else(|| Error::Config("level ≠ 0 needs scales".into()))?;
        let scheme = DilationScheme::diagonal(doc.support.frame().clone(), scales)?;
        band = scheme.apply_power(&doc.support, doc.level)?;
        plan = plan.at_level(scheme, doc.level)?;
    }
    if !signal.support()?.is_subset(&band)? {
        return Err(Error::InvalidInput("signal spectrum is not contained in BʲP".into()));
    }
    Ok(plan)
}

/// `sample`: error table over the radii.
pub fn cmd_sample(args: &SampleArgs) -> Result<String> {
    let doc: PlanDoc = serde_json::from_str(&read_text(&args.plan)?)
        .map_err(|e| Error::Config(format!("{}: {e}", args.plan.display())))?;
    let signal: BandlimitedSignal = serde_json::from_str(&read_text(&args.signal)?)
        .map_err(|e| Error::Config(format!("{}: {e}", args.signal.display())))?;
    let radii: Vec<usize> = args
        .radii
        .split(',')
        .map(|r| r.trim().parse().map_err(|_| Error::Config(format!("bad radius `{r}`"))))
        .collect::<Result<_>>()?;
    let plan = plan_from_doc(&doc, &signal)?;
    let rows = reconstruction_experiment(&plan, &signal, &radii, &doc.grid, doc.seed)?;
    let report = SampleReport { level: doc.level, rows };
    let json = to_json(&report)?;
    let mut text = String::from("     R   l2_rel_error      sup_error  interp_max_abs\n");
    for r in &report.rows {
        writeln!(
            text,
            "{:>6}  {:>13.6e}  {:>13.6e}  {:>14.6e}",
            r.radius, r.l2_rel_error, r.sup_error, r.interp_max_abs_err
        )
        .ok();
    }
    match &args.out {
        Some(out) => write_file(out, &json)?,
        None => text.push_str(&json),
    }
    Ok(text)
}

/// `report`: scene summary with regenerated figure, or a root-system dump.
pub fn cmd_report(args: &ReportArgs) -> Result<String> {
    if let Some(f) = &args.family {
        let family: Family = f.parse()?;
        let data = CoxeterData::new(family, false)?;
        let json = to_json(&RootSystemDoc::from(&data))?;
        return match &args.out {
            Some(out) => {
                write_file(out, &json)?;
                Ok(format!(
                    "{family}: {} roots, |W| = {}",
                    data.roots.roots().len(),
                    data.group.order()
                ))
            }
            None => Ok(json),
        };
    }
    let path = args
        .scene
        .as_ref()
        .ok_or_else(|| Error::Config("report needs --scene or --family".into()))?;
    let scene = load_scene(path)?;
    let mut text = String::new();
    writeln!(
        text,
        "method {}, base volume {:.6}, residual {:.3e}{}",
        serde_json::to_string(&scene.method)?.trim_matches('"'),
        scene.base.volume(),
        scene.residual_volume,
        if scene.approximate { " (approximate)" } else { "" }
    )
    .ok();
    for s in &scene.sets {
        writeln!(
            text,
            "{}: {} cells, volume {:.6}",
            s.name,
            s.region.cells().len(),
            s.region.volume()
        )
        .ok();
    }
    for n in &scene.notes {
        writeln!(text, "note: {n}").ok();
    }
    let target = args.out.clone().unwrap_or_else(|| path.clone());
    let fig = export_figures(&scene, &target, None)?;
    writeln!(text, "figure: {}", fig.display()).ok();
    Ok(text)
}

/// Maps library errors to exit code 2 and failed checks to 1.
pub fn run(cli: Cli) -> (i32, String) {
    let outcome = match &cli.command {
        Command::Construct(a) => cmd_construct(a).map(|s| (s, true)),
        Command::Verify(a) => cmd_verify(a),
        Command::Sample(a) => cmd_sample(a).map(|s| (s, true)),
        Command::Report(a) => cmd_report(a).map(|s| (s, true)),
    };
    match outcome {
        Ok((text, true)) => (0, text),
        Ok((text, false)) => (1, text),
        Err(e) => (2, format!("error: {e}")),
    }
}
