//! Command-line front end. `run` parses arguments, dispatches and returns the exit code.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{format_rational, parse_rational};
use crate::biquotient::{self, BiquotientSpec, Convention};
use crate::error::{Error, Result};
use crate::holonomy::{self, BettiInput, BoundQuery, Estimate, ManifoldClass};
use crate::liegroups::enumerate_pairs;
use crate::lowdim::{self, Classification, FieldMode, RealType4, RealType7};
use crate::sullivan::{check_elliptic_constraints, enumerate_elliptic_signatures, Stage, SullivanAlgebra};

#[derive(Parser, Debug)]
#[command(name = "ratholo", version, about = "Exact rational homotopy computations")]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for enumerations (overrides RATHOLO_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Real homotopy types of elliptic spaces.
    Classify {
        #[command(subcommand)]
        what: ClassifyCmd,
    },
    /// Homotopy signatures admitted by the ellipticity relations.
    Signature {
        #[command(subcommand)]
        what: SignatureCmd,
    },
    /// Operations on a Sullivan algebra read from JSON.
    Model {
        #[command(subcommand)]
        what: ModelCmd,
    },
    /// Isomorphism of quadratic pairs.
    Iso {
        #[command(subcommand)]
        what: IsoCmd,
    },
    /// Seven-dimensional biquotients.
    Biquotient {
        #[command(subcommand)]
        what: BiquotientCmd,
    },
    /// Special holonomy obstructions.
    Holonomy {
        #[command(subcommand)]
        what: HolonomyCmd,
    },
    /// Betti bounds for formal metrics.
    Bounds(BoundsArgs),
    /// Positive quaternion Kähler bookkeeping.
    Pqk {
        #[command(subcommand)]
        what: PqkCmd,
    },
}

#[derive(Subcommand, Debug)]
enum ClassifyCmd {
    Elliptic {
        #[arg(long)]
        dim: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StageArg {
    Arithmetic,
    Refined,
}

impl From<StageArg> for Stage {
    fn from(s: StageArg) -> Stage {
        match s {
            StageArg::Arithmetic => Stage::Arithmetic,
            StageArg::Refined => Stage::Refined,
        }
    }
}

#[derive(Subcommand, Debug)]
enum SignatureCmd {
    Enumerate {
        #[arg(long)]
        dim: u32,
        #[arg(long, value_enum, default_value = "refined")]
        stage: StageArg,
    },
}

#[derive(Subcommand, Debug)]
enum ModelCmd {
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    Cohomology {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_degree: u32,
    },
}

#[derive(Subcommand, Debug)]
enum IsoCmd {
    Test {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    Family {
        #[arg(long)]
        count: usize,
        /// Real type shared by the family: S2xS2 or CP2#CP2.
        #[arg(long, default_value = "S2xS2")]
        target: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    PullbackDifference,
    PaperSu3,
}

#[derive(Subcommand, Debug)]
enum BiquotientCmd {
    Enumerate {
        #[arg(long, value_enum, default_value = "refined")]
        stage: StageArg,
    },
    Model {
        #[arg(long)]
        input: PathBuf,
        /// Overrides the convention in the input file.
        #[arg(long, value_enum)]
        convention: Option<ConventionArg>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HolonomyType {
    Spin7,
    Su4,
    G2,
}

#[derive(Subcommand, Debug)]
enum HolonomyCmd {
    Check {
        #[arg(long = "type", value_enum)]
        kind: HolonomyType,
        /// Comma-separated Betti numbers b0,b1,...
        #[arg(long)]
        betti: Option<String>,
        /// b4+,b4-
        #[arg(long)]
        b4_split: Option<String>,
    },
    /// Betti caps for formal metrics of holonomy G2 or Spin7.
    Constants {
        #[arg(long = "type", value_enum)]
        kind: HolonomyType,
    },
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    class: Option<String>,
    /// Real dimension.
    #[arg(long)]
    dim: Option<u32>,
    /// Degree 2K.
    #[arg(long)]
    k: Option<u32>,
    /// first, second, special (special_b2 in degree 2, special_bp otherwise), special-b2, special-bp.
    #[arg(long, default_value = "first")]
    estimate: String,
    /// Print the comparison against the reference table and the complement oracle.
    #[arg(long)]
    report: bool,
}

#[derive(Subcommand, Debug)]
enum PqkCmd {
    Triples {
        #[arg(long)]
        dim: u32,
        /// Take the b2 != 0 branch.
        #[arg(long)]
        b2_nonzero: bool,
    },
}

struct Output {
    json: Value,
    text: String,
}

fn out(json: Value, text: impl Into<String>) -> Output {
    Output { json, text: text.into() }
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::validation("input", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| Error::parse("input", e.to_string()))
}

fn classification_json<T: Copy>(c: &Classification<T>, name: fn(&T) -> &'static str) -> Value {
    json!({"type": name(&c.real_type), "trail": c.trail, "evidence": c.evidence})
}

fn classify_elliptic(dim: u32) -> Result<Output> {
    let rows: Vec<(String, SullivanAlgebra)> = match dim {
        4 => RealType4::ALL.iter().map(|t| (t.name().to_string(), lowdim::representative4(*t))).collect(),
        7 => RealType7::ALL.iter().map(|t| (t.name().to_string(), t.representative())).collect(),
        _ => return Err(Error::validation("dim", "expected 4 or 7")),
    };
    let mut recs = Vec::new();
    let mut text = String::new();
    for (name, m) in rows {
        let sig = m.signature()?;
        let betti = m.cohomology_dims(dim).dims;
        text.push_str(&format!("{name:<12} {sig:<24} b = {betti:?}\n"));
        recs.push(json!({"type": name, "signature": sig.to_json(), "betti": betti, "model": m.to_json()}));
    }
    Ok(out(Value::Array(recs), text))
}

fn signature_enumerate(dim: u32, stage: Stage) -> Result<Output> {
    let e = enumerate_elliptic_signatures(dim, stage)?;
    let mut text = String::new();
    let mut sigs = Vec::new();
    for s in &e.signatures {
        let r = check_elliptic_constraints(s, dim, None);
        text.push_str(&format!("{s}  formal dimension {}\n", s.formal_dimension()));
        sigs.push(json!({"signature": s.to_json(), "constraints": r}));
    }
    for (s, hit) in &e.eliminated {
        text.push_str(&format!("eliminated {s}: {} {}\n", hit.rule, hit.citation));
    }
    let eliminated: Vec<Value> = e.eliminated.iter().map(|(s, h)| json!({"signature": s.to_json(), "rule": h})).collect();
    Ok(out(
        json!({"dimension": e.dimension, "stage": e.stage, "verified": e.verified, "signatures": sigs, "eliminated": eliminated}),
        text,
    ))
}

fn model_classify(path: &PathBuf) -> Result<Output> {
    let m = SullivanAlgebra::from_json(&read_json(path)?)?;
    let (m, cancelled) = if m.is_minimal() { (m, Vec::new()) } else { biquotient::restricted_minimalize(&m)? };
    let n = m.formal_dimension();
    let (json, name) = match n {
        4 => {
            let c = lowdim::classify4(&m)?;
            (classification_json(&c, RealType4::name), c.real_type.name())
        }
        7 => {
            let c = lowdim::classify7(&m)?;
            (classification_json(&c, RealType7::name), c.real_type.name())
        }
        _ => return Err(Error::Unsupported(format!("formal dimension {n}; only 4 and 7 are classified"))),
    };
    let mut json = json;
    json["cancelled"] = json!(cancelled);
    json["dimension"] = json!(n);
    Ok(out(json, format!("{name}\n")))
}

fn model_cohomology(path: &PathBuf, max: u32) -> Result<Output> {
    let m = SullivanAlgebra::from_json(&read_json(path)?)?;
    let b = m.cohomology_dims(max);
    Ok(out(json!({"betti": b.dims}), format!("{:?}\n", b.dims)))
}

fn rational_arg(field: &str, s: &str) -> Result<crate::algebra::Rational> {
    parse_rational(s).ok_or_else(|| Error::parse(field, format!("`{s}` is not a rational number")))
}

fn iso_test(s: &str, t: &str, field: &str) -> Result<Output> {
    let f = FieldMode::parse(field).ok_or_else(|| Error::validation("field", "expected Q or R"))?;
    let v = lowdim::iso_case31(&rational_arg("s", s)?, &rational_arg("t", t)?, f)?;
    let text = format!("isomorphic: {}\ncriterion: {}\n", v.isomorphic, v.criterion);
    Ok(out(v.to_json(), text))
}

fn iso_family(count: usize, target: &str) -> Result<Output> {
    let t = RealType4::parse(target)
        .filter(|t| matches!(t, RealType4::S2xS2 | RealType4::CP2sharpCP2))
        .ok_or_else(|| Error::validation("target", "expected S2xS2 or CP2#CP2"))?;
    let fam = lowdim::generate_rational_family(count, t)?;
    let pairs = lowdim::family_pairwise(&fam)?;
    let distinct = pairs.iter().all(|(_, _, v)| !v.isomorphic);
    let mut text = String::new();
    let mut members = Vec::new();
    for p in &fam {
        let rt = p.classify_real()?;
        text.push_str(&format!("({}, {})  {}\n", p.format_q(0), p.format_q(1), rt.name()));
        members.push(json!({"pair": p.to_json(), "real_type": rt.name()}));
    }
    text.push_str(&format!("pairwise non-isomorphic over Q: {distinct}\n"));
    let checks: Vec<Value> = pairs.iter().map(|(i, j, v)| json!({"i": i, "j": j, "isomorphic": v.isomorphic, "criterion": v.criterion})).collect();
    Ok(out(json!({"target": t.name(), "members": members, "pairwise": checks, "pairwise_distinct": distinct}), text))
}

fn biquotient_enumerate(stage: Stage) -> Result<Output> {
    let e = enumerate_pairs(stage);
    let mut text = String::new();
    for p in &e.pairs {
        text.push_str(&format!("{:<12} case {}  {}\n", p.target.name(), p.case, p.label));
    }
    let eliminated: Vec<Value> = e.eliminated.iter().map(|(p, h)| json!({"pair": p.to_json(), "rule": h})).collect();
    Ok(out(
        json!({"stage": e.stage, "pairs": e.pairs.iter().map(|p| p.to_json()).collect::<Vec<_>>(), "eliminated": eliminated}),
        text,
    ))
}

fn biquotient_model(path: &PathBuf, conv: Option<ConventionArg>) -> Result<Output> {
    let mut spec = BiquotientSpec::from_json(&read_json(path)?)?;
    if let Some(c) = conv {
        spec.convention = match c {
            ConventionArg::PullbackDifference => Convention::PullbackDifference,
            ConventionArg::PaperSu3 => Convention::PaperSu3,
        };
    }
    let built = biquotient::build_model(&spec)?;
    let mut json = json!({"spec": spec.to_json(), "model": built.model.to_json()});
    let mut text = String::new();
    for (g, e) in built.model.generators().generators().iter().zip(built.model.differential().images()) {
        if g.is_odd() {
            text.push_str(&format!("d {} = {}\n", g.name, e.format()));
        }
    }
    let (minimal, cancelled) = biquotient::restricted_minimalize(&built.model)?;
    json["minimal"] = minimal.to_json();
    json["cancelled"] = json!(cancelled);
    let fd = minimal.formal_dimension();
    json["formal_dimension"] = json!(fd);
    if fd == 7 {
        let c = lowdim::classify7(&minimal)?;
        text.push_str(&format!("type: {}\n", c.real_type.name()));
        json["classification"] = classification_json(&c, RealType7::name);
    }
    if let Some((l, r)) = su3_circle_weights(&spec) {
        let t = biquotient::torsion_advisory(l, r);
        json["torsion_advisory"] = json!(t);
        text.push_str(&format!("H4 torsion order (advisory): {t}\n"));
    }
    Ok(out(json, text))
}

fn su3_circle_weights(spec: &BiquotientSpec) -> Option<([i64; 3], [i64; 3])> {
    use crate::biquotient::Embedding;
    if spec.g != [crate::liegroups::LieGroup::su(3)] || spec.h.len() != 1 || !spec.h[0].group.is_circle() {
        return None;
    }
    let w = |e: &Embedding| match e {
        Embedding::Weights(v) => Some([v[0], v[1], v[2]]),
        Embedding::Trivial => Some([0, 0, 0]),
        Embedding::Named(_) => None,
    };
    Some((w(&spec.h[0].left[0])?, w(&spec.h[0].right[0])?))
}

fn parse_list(field: &str, s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::parse(field, format!("`{x}` is not a non-negative integer"))))
        .collect()
}

fn holonomy_check(kind: HolonomyType, betti: Option<&str>, split: Option<&str>) -> Result<Output> {
    let betti = betti.map(|b| parse_list("betti", b)).transpose()?;
    let split = match split.map(|s| parse_list("b4-split", s)).transpose()? {
        Some(v) if v.len() == 2 => Some((v[0], v[1])),
        Some(_) => return Err(Error::validation("b4-split", "expected P,M")),
        None => None,
    };
    let mut json = json!({});
    let mut text = String::new();
    match kind {
        HolonomyType::Spin7 => {
            let cert = holonomy::spin7_elliptic_obstruction();
            text.push_str(&format!("{}\n", cert.claim));
            json["obstruction"] = serde_json::to_value(&cert).expect("serializable");
            if let Some(b) = betti {
                let input = BettiInput::new(b, split)?;
                let ok = holonomy::spin7_feasible(&input)?;
                text.push_str(&format!("Betti relation satisfied: {ok}\n"));
                json["feasible"] = json!(ok);
            }
        }
        HolonomyType::Su4 => {
            let cert = holonomy::su4_elliptic_obstruction();
            text.push_str(&format!("{}\n", cert.claim));
            json["obstruction"] = serde_json::to_value(&cert).expect("serializable");
            if let Some(b) = betti {
                let input = BettiInput::new(b, split)?;
                let ok = holonomy::su4_feasible(&input)?;
                text.push_str(&format!("b3 + b4+ >= 50: {ok}\n"));
                json["feasible"] = json!(ok);
            }
        }
        HolonomyType::G2 => {
            let r = holonomy::g2_candidate_types()?;
            for t in &r.survivors {
                text.push_str(&format!("candidate {}\n", t.name()));
            }
            for (t, w) in &r.excluded {
                text.push_str(&format!(
                    "excluded {}: a = {}, omega = {}, a^2 omega = 0\n",
                    t.name(),
                    w.null_class.as_deref().unwrap_or("-"),
                    w.omega
                ));
            }
            json["report"] = serde_json::to_value(&r).expect("serializable");
            if let Some(b) = betti {
                let matching: Vec<&str> = r
                    .survivors
                    .iter()
                    .filter(|t| t.representative().cohomology_dims(7).dims == b)
                    .map(|t| t.name())
                    .collect();
                text.push_str(&format!("types with these Betti numbers: {matching:?}\n"));
                json["b3_nonzero"] = json!(b.get(3).copied().unwrap_or(0) != 0);
                json["matching"] = json!(matching);
            }
        }
    }
    Ok(out(json, text))
}

fn holonomy_constants(kind: HolonomyType) -> Result<Output> {
    let name = match kind {
        HolonomyType::G2 => "g2",
        HolonomyType::Spin7 => "spin7",
        HolonomyType::Su4 => return Err(Error::validation("type", "constants exist for g2 and spin7")),
    };
    let c = holonomy::formal_metric_constants(name)?;
    let text = c.caps.iter().map(|(d, cap, t)| format!("b{d} <= {cap} (torus {t})\n")).collect::<String>();
    Ok(out(serde_json::to_value(&c).expect("serializable"), text))
}

fn bounds(a: &BoundsArgs) -> Result<Output> {
    if a.report {
        let cells = holonomy::table_comparison();
        let oracle = holonomy::complement_oracle(5, 2, 4);
        let mut text = String::new();
        for c in &cells {
            text.push_str(&format!(
                "{:?} dim {} b{} table {}  estimates {:?}  {}\n",
                c.class,
                c.dim,
                c.degree,
                c.table,
                c.estimates,
                if c.flagged { "FLAGGED".to_string() } else { format!("matched by {}", c.matched_by.join(",")) }
            ));
        }
        let mismatches: Vec<_> = oracle.iter().filter(|c| !c.matches).collect();
        text.push_str(&format!("complement oracle: {} cases, {} closed-form mismatches\n", oracle.len(), mismatches.len()));
        return Ok(out(json!({"cells": cells, "complement_oracle": oracle}), text));
    }
    let class = a
        .class
        .as_deref()
        .and_then(ManifoldClass::parse)
        .ok_or_else(|| Error::validation("class", "expected kaehler or pqk"))?;
    let dim = a.dim.ok_or_else(|| Error::validation("dim", "required"))?;
    let k = a.k.ok_or_else(|| Error::validation("k", "required"))?;
    let degree = 2 * k;
    let estimate = match a.estimate.as_str() {
        "special" if degree == 2 => Estimate::SpecialB2,
        "special" => Estimate::SpecialBp,
        e => Estimate::parse(e).ok_or_else(|| Error::validation("estimate", format!("unknown estimate `{e}`")))?,
    };
    let q = BoundQuery { class, dim, degree, estimate };
    let v = holonomy::formality_bound(&q)?;
    let torus = holonomy::torus_bound(dim, degree);
    Ok(out(
        json!({"query": q, "bound": v.to_string(), "torus": torus.to_string(), "s_tilde": holonomy::s_tilde(if class == ManifoldClass::Pqk { dim } else { dim / 2 }, if class == ManifoldClass::Pqk { degree } else { k })}),
        format!("{v}\n"),
    ))
}

fn pqk_triples(dim: u32, b2_nonzero: bool) -> Result<Output> {
    match dim {
        16 => {
            if b2_nonzero {
                return Ok(out(json!({"dim": 16, "branch": "Gr2(C^6)"}), "Gr2(C^6)\n"));
            }
            let t = holonomy::pqk16_triples();
            let mut text = format!("before cup-length cap: {}\n", t.pre_cap.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            let mut rows = Vec::new();
            for x in &t.triples {
                let v = holonomy::pqk16_homotopy_vector(x)?;
                text.push_str(&format!("{x}  {}  balance {}\n", v.format(), v.balance()));
                rows.push(json!({"triple": x, "homotopy": v.to_json()}));
            }
            Ok(out(json!({"dim": 16, "pre_cap": t.pre_cap, "cup_length": t.cup_length, "triples": rows, "trail": t.trail}), text))
        }
        12 => {
            let a = holonomy::pqk12_analysis(!b2_nonzero)?;
            let mut text = String::new();
            if let Some(b) = &a.branch {
                text.push_str(&format!("{b}\n"));
            }
            for c in &a.cases {
                text.push_str(&format!("c4 = {}: {}  balance {}\n", c.c4, c.homotopy["c"], c.balance));
            }
            Ok(out(serde_json::to_value(&a).expect("serializable"), text))
        }
        _ => Err(Error::validation("dim", "expected 12 or 16")),
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Classify { what: ClassifyCmd::Elliptic { dim } } => classify_elliptic(*dim),
        Command::Signature { what: SignatureCmd::Enumerate { dim, stage } } => signature_enumerate(*dim, (*stage).into()),
        Command::Model { what: ModelCmd::Classify { input } } => model_classify(input),
        Command::Model { what: ModelCmd::Cohomology { input, max_degree } } => model_cohomology(input, *max_degree),
        Command::Iso { what: IsoCmd::Test { s, t, field } } => iso_test(s, t, field),
        Command::Iso { what: IsoCmd::Family { count, target } } => iso_family(*count, target),
        Command::Biquotient { what: BiquotientCmd::Enumerate { stage } } => biquotient_enumerate((*stage).into()),
        Command::Biquotient { what: BiquotientCmd::Model { input, convention } } => biquotient_model(input, *convention),
        Command::Holonomy { what: HolonomyCmd::Check { kind, betti, b4_split } } => {
            holonomy_check(*kind, betti.as_deref(), b4_split.as_deref())
        }
        Command::Holonomy { what: HolonomyCmd::Constants { kind } } => holonomy_constants(*kind),
        Command::Bounds(a) => bounds(a),
        Command::Pqk { what: PqkCmd::Triples { dim, b2_nonzero } } => pqk_triples(*dim, *b2_nonzero),
    }
}

fn configure_threads(n: Option<usize>) {
    let n = n.or_else(|| std::env::var("RATHOLO_THREADS").ok().and_then(|v| v.parse().ok()));
    if let Some(n) = n {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Runs the program on `argv` (including the program name).
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    configure_threads(cli.threads);
    match dispatch(&cli) {
        Ok(o) => {
            let r = if cli.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&o.json).expect("serializable"))
            } else {
                write!(stdout, "{}", o.text)
            };
            if r.is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(stderr, "{}", json!({"error": e.to_string(), "exit_code": e.exit_code()}));
            } else {
                let _ = writeln!(stderr, "error: {e}");
            }
            e.exit_code()
        }
    }
}

/// Formats a rational for table output.
pub fn show(q: &crate::algebra::Rational) -> String {
    format_rational(q)
}
