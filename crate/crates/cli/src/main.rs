//! flagcalc: exact invariants of flag varieties from the command line.
//!
//! Every subcommand maps onto one library operation and renders both a
//! text form and, with `--json`, the stable object
//! `{inputs, exact, float, verdicts}`. Exit codes: 0 success, 1 parse
//! error, 2 domain error, 3 ambiguous window classification.

mod parse;
mod render;

use std::f64::consts::PI;

use clap::{Args, Parser, Subcommand};
use flagcalc::arith::{
    density, hodge_riemann_matrix, k0_report, line_bundle_label, nef_solve, pic0_generators,
    solve_slope, tau, ArithError, NefSolution, SlopeSolution,
};
use flagcalc::dhym::{
    central_charge, cjy_ratio, classify_window, lifted_angle, phase_defect, ChargeSource,
    ChargeTarget, DhymError,
};
use flagcalc::flag::{
    FlagError, InvariantClass, KahlerClass, ParabolicGeometry, SplitBundle,
};
use flagcalc::rootsys::{build_root_system, RootSysError, RootSystem};
use flagcalc::stability::{
    hym_constant, mu_hat, restriction_semistable, slope, split_stability, HymConstant,
    StabilityError,
};
use num::ToPrimitive;
use parse::TargetSpec;
use render::{
    gauss_json, gauss_str, rat_both, rat_f64, rat_json, rat_str, rats_json, sig6, weight_json,
    Report,
};
use serde_json::{json, Value};

pub enum CliError {
    Parse(String),
    Domain(String),
    Boundary(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Boundary(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) | CliError::Boundary(m) => m,
        }
    }
}

impl From<RootSysError> for CliError {
    fn from(e: RootSysError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<FlagError> for CliError {
    fn from(e: FlagError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<StabilityError> for CliError {
    fn from(e: StabilityError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<DhymError> for CliError {
    fn from(e: DhymError) -> Self {
        match e {
            DhymError::BoundaryAmbiguous { .. } => CliError::Boundary(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "flagcalc",
    version,
    about = "Exact invariants of flag varieties: roots, volumes, phases, charges, slopes, lattices"
)]
struct Cli {
    /// Emit one JSON object {inputs, exact, float, verdicts} instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct FlagArgs {
    /// Simple type: a series letter and rank, like A2 or D4.
    #[arg(long = "type", value_name = "TYPE")]
    ty: String,
    /// Comma-separated 1-based simple-root indices spanning the
    /// parabolic set; empty (the default) is the Borel case.
    #[arg(long, value_name = "LIST", default_value = "")]
    parabolic: String,
}

#[derive(Args)]
struct OmegaArg {
    /// Kahler coordinates over the free simple roots: comma-separated
    /// rationals, like 2,1/2.
    #[arg(long, value_name = "COORDS", allow_hyphen_values = true)]
    omega: String,
}

#[derive(Args)]
struct PsiArg {
    /// Invariant-class coordinates over the free simple roots.
    #[arg(long, value_name = "COORDS", allow_hyphen_values = true)]
    psi: String,
}

#[derive(Args)]
struct BundleArg {
    /// Split bundle: semicolon-separated summands, each a comma list of
    /// integer coordinates over the free simple roots.
    #[arg(long, value_name = "SUMMANDS", allow_hyphen_values = true)]
    bundle: String,
}

#[derive(Args)]
struct TargetArg {
    /// Target cycle: "space", "curve:K" (1-based, canonical root
    /// order), or "divisor:COORDS".
    #[arg(long, value_name = "TARGET", allow_hyphen_values = true)]
    target: String,
}

#[derive(Args)]
struct GammaArg {
    /// 1-based pivot index among the free simple roots; defaults to the
    /// first one.
    #[arg(long, value_name = "INDEX")]
    gamma: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the positive roots of a simple type.
    Roots {
        /// Simple type: a series letter and rank, like A2 or D4.
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
    },
    /// Dimension, index sets, and distinguished classes of a flag variety.
    FlagInfo {
        #[command(flatten)]
        flag: FlagArgs,
    },
    /// Exact volume of a Kahler class.
    Volume {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
    },
    /// Exact degree of an invariant class against a Kahler class.
    Degree {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        #[command(flatten)]
        psi: PsiArg,
    },
    /// Lifted phase angle, eigenvalues, and window of a class.
    Phase {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        #[command(flatten)]
        psi: PsiArg,
    },
    /// Window classification of a given lifted angle.
    Classify {
        /// The lifted angle to classify, in radians.
        #[arg(long, value_name = "RADIANS", allow_hyphen_values = true)]
        theta_hat: f64,
        /// Complex dimension of the flag variety.
        #[arg(long, value_name = "N")]
        dimension: usize,
    },
    /// Central charge of a split bundle against a target cycle.
    Charge {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        #[command(flatten)]
        bundle: BundleArg,
        #[command(flatten)]
        target: TargetArg,
    },
    /// Exact sign of Im(Z_Y / Z_X) for a target cycle.
    Cjy {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        #[command(flatten)]
        bundle: BundleArg,
        #[command(flatten)]
        target: TargetArg,
    },
    /// Lifted-angle defect of a target cycle against the window drop.
    Defect {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        #[command(flatten)]
        psi: PsiArg,
        #[command(flatten)]
        target: TargetArg,
    },
    /// Slope (degree over rank) of a split bundle.
    Slope {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        #[command(flatten)]
        bundle: BundleArg,
    },
    /// Average phase tangent of a split bundle.
    Muhat {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        #[command(flatten)]
        bundle: BundleArg,
    },
    /// Slope-stability verdict of a split bundle, with restriction data.
    Stability {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        #[command(flatten)]
        bundle: BundleArg,
    },
    /// Einstein constant of the induced metric on a split bundle.
    Hym {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        #[command(flatten)]
        bundle: BundleArg,
    },
    /// Pairing matrix of the divisor generators against omega^(n-2).
    HrMatrix {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
    },
    /// gcd of the generator line-bundle degrees.
    Tau {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
    },
    /// Integer line bundle of prescribed slope, when one exists.
    SolveSlope {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        /// Requested slope.
        #[arg(long, value_name = "INT", allow_hyphen_values = true)]
        m0: String,
    },
    /// Basis of the slope-zero line-bundle lattice.
    Pic0 {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        #[command(flatten)]
        gamma: GammaArg,
    },
    /// Density of attainable slopes among 1..=samples.
    Density {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        /// Number of integers to scan.
        #[arg(long, value_name = "N")]
        samples: u64,
    },
    /// Nonnegative-exponent line bundle of prescribed slope.
    NefSolve {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        /// Requested slope.
        #[arg(long, value_name = "INT", allow_hyphen_values = true)]
        m0: String,
        #[command(flatten)]
        gamma: GammaArg,
    },
    /// Grothendieck-group splitting summary.
    K0 {
        #[command(flatten)]
        flag: FlagArgs,
        #[command(flatten)]
        omega: OmegaArg,
        #[command(flatten)]
        gamma: GammaArg,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(&cli.command) {
        Ok(report) => report.emit(cli.json),
        Err(err) => {
            eprintln!("error: {}", err.message());
            std::process::exit(err.exit_code());
        }
    }
}

fn flag_of(args: &FlagArgs, report: &mut Report) -> Result<ParabolicGeometry, CliError> {
    report.input("type", args.ty.clone());
    report.input("parabolic", args.parabolic.clone());
    let (series, rank) = parse::series_rank(&args.ty)?;
    let parabolic = parse::index_list(&args.parabolic)?;
    let rs = build_root_system(series, rank)?;
    Ok(ParabolicGeometry::new(rs, &parabolic)?)
}

fn omega_of(
    flag: &ParabolicGeometry,
    arg: &OmegaArg,
    report: &mut Report,
) -> Result<KahlerClass, CliError> {
    report.input("omega", arg.omega.clone());
    let coords = parse::rationals(&arg.omega)?;
    Ok(flag.kahler_from_free(&coords)?)
}

fn psi_of(
    flag: &ParabolicGeometry,
    arg: &PsiArg,
    report: &mut Report,
) -> Result<InvariantClass, CliError> {
    report.input("psi", arg.psi.clone());
    let coords = parse::rationals(&arg.psi)?;
    Ok(flag.invariant_from_free(&coords)?)
}

fn bundle_of(
    flag: &ParabolicGeometry,
    arg: &BundleArg,
    report: &mut Report,
) -> Result<SplitBundle, CliError> {
    report.input("bundle", arg.bundle.clone());
    let summands = parse::bundle(&arg.bundle)?
        .iter()
        .map(|coords| flag.invariant_from_free(coords))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SplitBundle::new(summands)?)
}

fn target_of(
    flag: &ParabolicGeometry,
    arg: &TargetArg,
    report: &mut Report,
) -> Result<ChargeTarget, CliError> {
    report.input("target", arg.target.clone());
    match parse::target(&arg.target)? {
        TargetSpec::Space => Ok(ChargeTarget::WholeSpace),
        TargetSpec::Curve(k) => {
            let roots = flag.complement_roots();
            let beta = roots.get(k - 1).ok_or_else(|| {
                CliError::Domain(format!(
                    "curve index {k} out of range 1..={}",
                    roots.len()
                ))
            })?;
            Ok(ChargeTarget::Curve(beta.clone()))
        }
        TargetSpec::Divisor(coords) => {
            Ok(ChargeTarget::Divisor(flag.invariant_from_free(&coords)?))
        }
    }
}

fn target_label(flag: &ParabolicGeometry, target: &ChargeTarget) -> String {
    match target {
        ChargeTarget::WholeSpace => "whole space".to_string(),
        ChargeTarget::Curve(beta) => format!("curve {beta}"),
        ChargeTarget::Divisor(class) => {
            format!("divisor {}", line_bundle_label(flag, class.weight()))
        }
    }
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|&i| i + 1).collect()
}

fn roots_json(rs: &RootSystem) -> Value {
    Value::Array(
        rs.positive_roots
            .iter()
            .map(|r| {
                json!({
                    "label": r.to_string(),
                    "coeffs": r.coeffs,
                    "height": r.height,
                    "normsq": rat_str(&r.normsq),
                })
            })
            .collect(),
    )
}

fn run(cmd: &Cmd) -> Result<Report, CliError> {
    let mut rep = Report::default();
    match cmd {
        Cmd::Roots { ty } => {
            rep.input("type", ty.clone());
            let (series, rank) = parse::series_rank(ty)?;
            let rs = build_root_system(series, rank)?;
            rep.exact.insert("count".into(), rs.positive_roots.len().into());
            rep.exact.insert("symmetrizer".into(), json!(rs.cartan.symmetrizer));
            rep.exact.insert("roots".into(), roots_json(&rs));
            rep.line(format!("{series}{rank}: {} positive roots", rs.positive_roots.len()));
            for r in &rs.positive_roots {
                rep.line(format!(
                    "  {r}  coeffs {:?}  height {}  normsq {}",
                    r.coeffs, r.height, r.normsq
                ));
            }
        }
        Cmd::FlagInfo { flag } => {
            let geom = flag_of(flag, &mut rep)?;
            let rs = geom.root_system();
            rep.exact.insert("rank".into(), geom.rank().into());
            rep.exact.insert("dimension".into(), geom.dimension().into());
            rep.exact.insert("parabolic".into(), json!(one_based(geom.parabolic_indices())));
            rep.exact.insert("free".into(), json!(one_based(geom.free_indices())));
            rep.exact.insert("delta_p".into(), weight_json(geom.delta_p()));
            rep.exact.insert("rho_plus".into(), weight_json(&geom.rho_plus()));
            rep.exact.insert(
                "complement_roots".into(),
                Value::Array(
                    geom.complement_roots().iter().map(|r| Value::String(r.to_string())).collect(),
                ),
            );
            rep.line(format!(
                "{}{}, parabolic {{{}}}",
                rs.cartan.series,
                rs.cartan.rank,
                one_based(geom.parabolic_indices())
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ));
            rep.line(format!("dimension = {}", geom.dimension()));
            rep.line(format!(
                "free indices = {}",
                one_based(geom.free_indices())
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            rep.line(format!(
                "delta_P = ({})",
                geom.delta_p().coords.iter().map(rat_str).collect::<Vec<_>>().join(", ")
            ));
            rep.line(format!(
                "complement roots: {}",
                geom.complement_roots()
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
        Cmd::Volume { flag, omega } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            let vol = geom.volume(&om)?;
            rep.exact.insert("volume".into(), rat_json(&vol));
            rep.float.insert("volume".into(), json!(rat_f64(&vol)));
            rep.line(format!("volume = {}", rat_both(&vol)));
        }
        Cmd::Degree { flag, omega, psi } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            let class = psi_of(&geom, psi, &mut rep)?;
            let deg = geom.degree(&om, &class)?;
            rep.exact.insert("degree".into(), rat_json(&deg));
            rep.float.insert("degree".into(), json!(rat_f64(&deg)));
            rep.line(format!("degree = {}", rat_both(&deg)));
        }
        Cmd::Phase { flag, omega, psi } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            let class = psi_of(&geom, psi, &mut rep)?;
            let report = lifted_angle(&geom, &om, &class)?;
            rep.exact.insert("eigenvalues".into(), rats_json(&report.eigenvalues));
            rep.exact.insert("modulus_sq".into(), rat_json(&report.modulus_sq));
            rep.exact.insert("dimension".into(), report.dimension.into());
            rep.float.insert("theta_hat".into(), json!(report.theta_hat));
            rep.float.insert("boundary_distance".into(), json!(report.boundary_distance));
            rep.verdicts.insert("window".into(), json!(report.window.to_string()));
            rep.line(format!(
                "eigenvalues = {}",
                report.eigenvalues.iter().map(rat_str).collect::<Vec<_>>().join(", ")
            ));
            rep.line(format!("theta_hat = {}", sig6(report.theta_hat)));
            rep.line(format!("modulus_sq = {}", rat_both(&report.modulus_sq)));
            rep.line(format!(
                "window = {} (boundary distance {})",
                report.window,
                sig6(report.boundary_distance)
            ));
        }
        Cmd::Classify { theta_hat, dimension } => {
            rep.input("theta_hat", json!(theta_hat));
            rep.input("dimension", json!(dimension));
            let (window, distance) = classify_window(*theta_hat, *dimension)?;
            let n = *dimension as f64;
            rep.float.insert("boundary_distance".into(), json!(distance));
            rep.float.insert("hypercritical_above".into(), json!((n - 1.0) * PI / 2.0));
            rep.float.insert("supercritical_above".into(), json!((n - 2.0) * PI / 2.0));
            rep.verdicts.insert("window".into(), json!(window.to_string()));
            rep.line(format!("window = {window} (boundary distance {})", sig6(distance)));
        }
        Cmd::Charge { flag, omega, bundle, target } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            let b = bundle_of(&geom, bundle, &mut rep)?;
            let t = target_of(&geom, target, &mut rep)?;
            let z = central_charge(&geom, &om, &ChargeSource::from_bundle(&b), &t)?;
            let re = rat_f64(&z.value.re);
            let im = rat_f64(&z.value.im);
            rep.exact.insert("z".into(), gauss_json(&z.value));
            rep.float.insert("re".into(), json!(re));
            rep.float.insert("im".into(), json!(im));
            rep.float.insert("arg".into(), json!(z.arg));
            rep.float.insert("modulus".into(), json!(re.hypot(im)));
            rep.line(format!("target = {}", target_label(&geom, &t)));
            rep.line(format!("Z = {}", gauss_str(&z.value)));
            rep.line(format!("arg = {}", sig6(z.arg)));
            rep.line(format!("modulus = {}", sig6(re.hypot(im))));
        }
        Cmd::Cjy { flag, omega, bundle, target } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            let b = bundle_of(&geom, bundle, &mut rep)?;
            let t = target_of(&geom, target, &mut rep)?;
            let r = cjy_ratio(&geom, &om, &ChargeSource::from_bundle(&b), &t)?;
            rep.exact.insert("sign".into(), json!(r.sign));
            rep.exact.insert("z_y".into(), gauss_json(&r.z_y.value));
            rep.exact.insert("z_x".into(), gauss_json(&r.z_x.value));
            rep.float.insert("ratio_im".into(), json!(r.ratio_im));
            rep.verdicts.insert(
                "sign".into(),
                json!(match r.sign {
                    1 => "+1",
                    -1 => "-1",
                    _ => "0",
                }),
            );
            rep.line(format!("target = {}", target_label(&geom, &t)));
            rep.line(format!("Z_Y = {}", gauss_str(&r.z_y.value)));
            rep.line(format!("Z_X = {}", gauss_str(&r.z_x.value)));
            rep.line(format!("im(Z_Y/Z_X) = {}", sig6(r.ratio_im)));
            rep.line(format!("sign = {}", r.sign));
        }
        Cmd::Defect { flag, omega, psi, target } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            let class = psi_of(&geom, psi, &mut rep)?;
            let t = target_of(&geom, target, &mut rep)?;
            let d = phase_defect(&geom, &om, &class, &t)?;
            rep.float.insert("theta_y".into(), json!(d.theta_y));
            rep.float.insert("theta_hat".into(), json!(d.theta_hat));
            rep.float.insert("defect".into(), json!(d.defect));
            let sign = if d.defect > 0.0 {
                "positive"
            } else if d.defect < 0.0 {
                "negative"
            } else {
                "zero"
            };
            rep.verdicts.insert("defect_sign".into(), json!(sign));
            rep.line(format!("target = {}", target_label(&geom, &t)));
            rep.line(format!("theta_Y = {}", sig6(d.theta_y)));
            rep.line(format!("theta_hat = {}", sig6(d.theta_hat)));
            rep.line(format!("defect = {} ({sign})", sig6(d.defect)));
        }
        Cmd::Slope { flag, omega, bundle } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            let b = bundle_of(&geom, bundle, &mut rep)?;
            let deg = geom.bundle_degree(&om, &b)?;
            let mu = slope(&geom, &om, &b)?;
            rep.exact.insert("degree".into(), rat_json(&deg));
            rep.exact.insert("rank".into(), b.rank().into());
            rep.exact.insert("slope".into(), rat_json(&mu));
            rep.float.insert("slope".into(), json!(rat_f64(&mu)));
            rep.line(format!("degree = {}", rat_both(&deg)));
            rep.line(format!("rank = {}", b.rank()));
            rep.line(format!("slope = {}", rat_both(&mu)));
        }
        Cmd::Muhat { flag, omega, bundle } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            let b = bundle_of(&geom, bundle, &mut rep)?;
            let hat = mu_hat(&geom, &om, &b)?;
            rep.exact.insert("mu_hat".into(), rat_json(&hat));
            rep.float.insert("mu_hat".into(), json!(rat_f64(&hat)));
            rep.line(format!("mu_hat = {}", rat_both(&hat)));
        }
        Cmd::Stability { flag, omega, bundle } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            let b = bundle_of(&geom, bundle, &mut rep)?;
            let verdict = split_stability(&geom, &om, &b)?;
            let restriction = restriction_semistable(&geom, &b)?;
            rep.verdicts.insert("verdict".into(), json!(verdict.verdict.to_string()));
            rep.verdicts
                .insert("restriction_semistable".into(), json!(restriction.semistable));
            if let Some(w) = &verdict.witness {
                rep.exact.insert(
                    "witness".into(),
                    json!({
                        "summands": one_based(&w.indices),
                        "slope": rat_str(&w.slope),
                    }),
                );
            }
            rep.line(format!("verdict = {}", verdict.verdict));
            if let Some(w) = &verdict.witness {
                rep.line(format!(
                    "witness: summands {{{}}} with slope {}",
                    one_based(&w.indices)
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(","),
                    rat_both(&w.slope)
                ));
            }
            rep.line(format!(
                "restriction to generator curves semistable = {}",
                restriction.semistable
            ));
        }
        Cmd::Hym { flag, omega, bundle } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            let b = bundle_of(&geom, bundle, &mut rep)?;
            match hym_constant(&geom, &om, &b)? {
                HymConstant::Defined { pi_coefficient, lambda } => {
                    rep.verdicts.insert("defined".into(), json!(true));
                    rep.exact.insert("pi_coefficient".into(), rat_json(&pi_coefficient));
                    rep.exact.insert("lambda".into(), rat_json(&lambda));
                    rep.float
                        .insert("constant".into(), json!(rat_f64(&pi_coefficient) * PI));
                    rep.float.insert("lambda".into(), json!(rat_f64(&lambda)));
                    rep.line(format!(
                        "constant = {} * pi (= {})",
                        rat_str(&pi_coefficient),
                        sig6(rat_f64(&pi_coefficient) * PI)
                    ));
                    rep.line(format!("lambda = {}", rat_both(&lambda)));
                }
                HymConstant::Undefined { pi_coefficients } => {
                    rep.verdicts.insert("defined".into(), json!(false));
                    rep.exact.insert("pi_coefficients".into(), rats_json(&pi_coefficients));
                    rep.line(format!(
                        "undefined: summand pi-coefficients {}",
                        pi_coefficients.iter().map(rat_str).collect::<Vec<_>>().join(", ")
                    ));
                }
            }
        }
        Cmd::HrMatrix { flag, omega } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            let hr = hodge_riemann_matrix(&geom, &om)?;
            rep.exact.insert("generators".into(), json!(one_based(&hr.generators)));
            rep.exact.insert(
                "entries".into(),
                Value::Array(hr.entries.iter().map(|row| rats_json(row)).collect()),
            );
            rep.float.insert(
                "entries".into(),
                Value::Array(
                    hr.entries
                        .iter()
                        .map(|row| {
                            Value::Array(row.iter().map(|e| json!(rat_f64(e))).collect())
                        })
                        .collect(),
                ),
            );
            rep.verdicts.insert("integral".into(), json!(hr.integral));
            rep.line(format!(
                "generators (free indices) = {}",
                one_based(&hr.generators)
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            for (i, row) in hr.entries.iter().enumerate() {
                rep.line(format!(
                    "row {} = [{}]",
                    i + 1,
                    row.iter().map(rat_str).collect::<Vec<_>>().join(", ")
                ));
            }
            rep.line(format!("integral = {}", hr.integral));
        }
        Cmd::Tau { flag, omega } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            let t = tau(&geom, &om)?;
            rep.exact.insert("tau".into(), json!(t.to_string()));
            rep.float.insert("tau".into(), json!(t.to_f64()));
            rep.line(format!("tau = {t}"));
        }
        Cmd::SolveSlope { flag, omega, m0 } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            rep.input("m0", m0.clone());
            let target = parse::big_int(m0)?;
            match solve_slope(&geom, &om, &target)? {
                SlopeSolution::Solution(w) => {
                    rep.verdicts.insert("solvable".into(), json!(true));
                    rep.exact.insert("solution".into(), weight_json(&w));
                    rep.exact
                        .insert("label".into(), json!(line_bundle_label(&geom, &w)));
                    rep.line(format!("solution = {}", line_bundle_label(&geom, &w)));
                }
                SlopeSolution::Unsolvable { tau } => {
                    rep.verdicts.insert("solvable".into(), json!(false));
                    rep.exact.insert("tau".into(), json!(tau.to_string()));
                    rep.line(format!("no solution: {target} is not a multiple of tau = {tau}"));
                }
            }
        }
        Cmd::Pic0 { flag, omega, gamma } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            if let Some(g) = gamma.gamma {
                rep.input("gamma", json!(g));
            }
            let pivot = resolve_pivot(&geom, gamma)?;
            let basis = pic0_generators(&geom, &om, pivot)?;
            rep.exact.insert(
                "gamma".into(),
                json!(pivot.unwrap_or(geom.free_indices()[0]) + 1),
            );
            rep.exact.insert(
                "basis".into(),
                Value::Array(
                    basis
                        .iter()
                        .map(|w| {
                            json!({
                                "coords": weight_json(w),
                                "label": line_bundle_label(&geom, w),
                            })
                        })
                        .collect(),
                ),
            );
            rep.line(format!(
                "pivot gamma = {}",
                pivot.unwrap_or(geom.free_indices()[0]) + 1
            ));
            if basis.is_empty() {
                rep.line("slope-zero lattice is trivial (one generator)".to_string());
            }
            for (i, w) in basis.iter().enumerate() {
                rep.line(format!("xi_{} = {}", i + 1, line_bundle_label(&geom, w)));
            }
        }
        Cmd::Density { flag, omega, samples } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            rep.input("samples", json!(samples));
            let d = density(&geom, &om, *samples)?;
            rep.exact.insert("count".into(), json!(d.count.to_string()));
            rep.exact.insert("limit".into(), rat_json(&d.limit));
            rep.exact.insert("bound".into(), rat_json(&d.bound));
            rep.float.insert("limit".into(), json!(rat_f64(&d.limit)));
            rep.float.insert("bound".into(), json!(rat_f64(&d.bound)));
            rep.line(format!("count = {} of {samples}", d.count));
            rep.line(format!("limit = {}", rat_both(&d.limit)));
            rep.line(format!("bound on the gap = {}", rat_both(&d.bound)));
        }
        Cmd::NefSolve { flag, omega, m0, gamma } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            rep.input("m0", m0.clone());
            if let Some(g) = gamma.gamma {
                rep.input("gamma", json!(g));
            }
            let pivot = resolve_pivot(&geom, gamma)?;
            let target = parse::big_int(m0)?;
            match nef_solve(&geom, &om, &target, pivot)? {
                NefSolution::Solution(w) => {
                    rep.verdicts.insert("found".into(), json!(true));
                    rep.exact.insert("solution".into(), weight_json(&w));
                    rep.exact
                        .insert("label".into(), json!(line_bundle_label(&geom, &w)));
                    rep.line(format!("solution = {}", line_bundle_label(&geom, &w)));
                }
                NefSolution::NotFound => {
                    rep.verdicts.insert("found".into(), json!(false));
                    rep.line("no nonnegative solution in the searched range".to_string());
                }
            }
        }
        Cmd::K0 { flag, omega, gamma } => {
            let geom = flag_of(flag, &mut rep)?;
            let om = omega_of(&geom, omega, &mut rep)?;
            if let Some(g) = gamma.gamma {
                rep.input("gamma", json!(g));
            }
            let pivot = resolve_pivot(&geom, gamma)?;
            let report = k0_report(&geom, &om, pivot)?;
            rep.exact.insert("tau".into(), json!(report.lattice.tau.to_string()));
            rep.exact.insert("gamma".into(), json!(report.lattice.gamma + 1));
            rep.exact
                .insert("pic0_index".into(), json!(report.pic0_index.to_string()));
            rep.exact.insert(
                "basis".into(),
                Value::Array(
                    report
                        .lattice
                        .pic0_basis
                        .iter()
                        .map(|w| {
                            json!({
                                "coords": weight_json(w),
                                "label": line_bundle_label(&geom, w),
                            })
                        })
                        .collect(),
                ),
            );
            rep.verdicts.insert("statement".into(), json!(report.statement));
            rep.line(report.statement.clone());
        }
    }
    Ok(rep)
}

/// 1-based CLI pivot to the library's 0-based optional index.
fn resolve_pivot(
    geom: &ParabolicGeometry,
    gamma: &GammaArg,
) -> Result<Option<usize>, CliError> {
    match gamma.gamma {
        None => Ok(None),
        Some(0) => Err(CliError::Parse("gamma is 1-based; 0 is not valid".into())),
        Some(g) => {
            // Range and membership are validated by the library.
            let _ = geom;
            Ok(Some(g - 1))
        }
    }
}
