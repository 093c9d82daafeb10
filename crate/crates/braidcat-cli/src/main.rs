//! `braidcat` command-line frontend. Every subcommand prints one JSON document
//! (or an indented text rendering of it) carrying `schema_version`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use braidcat::acceptance::{self, DEFAULT_SEED, SCHEMA_VERSION};
use braidcat::braided_hopf::{presets as hopf, CheckReport, QuantumGroup};
use braidcat::cyclotomic::{fmt_rational, parse_rational, CycNum, Q};
use braidcat::graded_braid::{BraidedObject, BraidingSpec, Lattice, LatticeSpec};
use braidcat::nichols::{self, NicholsConfig, NicholsData, TotalDimension};
use braidcat::repcat::{self, IndecLabel};
use braidcat::singlet_fusion::{fuse, SingletLabel};
use braidcat::yd_uproll::{self, presets as up, uproll, RankOne, UprollTarget, YDModule, YdModuleSpec};
use braidcat::Error;

const SUBCOMMANDS: [&str; 8] = ["nichols", "hopf", "tensor", "fusion", "lattice", "uproll", "yd-check", "acceptance"];

#[derive(Parser, Debug)]
#[command(name = "braidcat", version, about = "Exact computations with braided categories and Nichols algebras")]
#[command(args_override_self = true)]
struct Cli {
    /// TOML file whose keys mirror the subcommand's long flags; explicit flags win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Nichols algebra dimensions of a diagonal braiding
    Nichols(NicholsArgs),
    /// Consistency checks of a quantum-group presentation
    Hopf(HopfArgs),
    /// Decompose a tensor product of weight modules of the unrolled small quantum group
    Tensor(TensorArgs),
    /// Singlet fusion of two labels
    Fusion(FusionArgs),
    /// Lattice data: discriminant form, dual, parity
    Lattice(LatticeArgs),
    /// Induced gradings along a lattice algebra
    Uproll(UprollArgs),
    /// Yetter–Drinfeld check of a module over a rank-one Nichols algebra
    YdCheck(YdArgs),
    /// Run the acceptance suite
    Acceptance(AcceptanceArgs),
}

#[derive(Args, Debug)]
struct NicholsArgs {
    /// rank1, a2, parabolic2, fermions
    #[arg(long, conflicts_with = "braiding")]
    preset: Option<String>,
    /// braiding file (JSON or TOML): {group, exponents, degrees}
    #[arg(long)]
    braiding: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    p: u32,
    #[arg(long, default_value_t = 8)]
    max_degree: u32,
    #[arg(long, default_value_t = 5000)]
    max_words: usize,
    /// dump minimal relations as word combinations
    #[arg(long)]
    relations: bool,
    /// also verify the bialgebra axiom up to this degree
    #[arg(long)]
    bialgebra: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum HopfCheck {
    Relations,
    Coproduct,
    Antipode,
    All,
}

#[derive(Args, Debug)]
struct HopfArgs {
    /// uq-sl2, uq-h-sl2, usp, ugl11, borel
    #[arg(long)]
    preset: String,
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// ħ for ugl11 (default 1/p)
    #[arg(long)]
    hbar: Option<String>,
    #[arg(long, value_enum, default_value_t = HopfCheck::All)]
    check: HopfCheck,
}

#[derive(Args, Debug)]
struct TensorArgs {
    #[arg(long)]
    p: u32,
    /// M:r,s  F:r,s  Fbar:r,s  P:r,s  or F:c with c in α_- units
    #[arg(long, allow_hyphen_values = true)]
    left: String,
    #[arg(long, allow_hyphen_values = true)]
    right: String,
}

#[derive(Args, Debug)]
struct FusionArgs {
    #[arg(long)]
    p: u32,
    #[arg(allow_hyphen_values = true)]
    a: String,
    #[arg(allow_hyphen_values = true)]
    b: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LatticeAction {
    Discriminant,
    Dual,
    Info,
}

#[derive(Args, Debug)]
struct LatticeArgs {
    #[arg(value_enum, default_value_t = LatticeAction::Info)]
    action: LatticeAction,
    /// triplet (√(2p)Z in α_- units)
    #[arg(long, conflicts_with = "lattice")]
    preset: Option<String>,
    /// lattice file: {form, basis}
    #[arg(long)]
    lattice: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// show complex approximations of discriminant values next to the exact ones
    #[arg(long)]
    numeric_shadow: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Local,
    All,
}

#[derive(Args, Debug)]
struct UprollArgs {
    /// triplet, sp, gl11, violating
    #[arg(long, conflicts_with_all = ["braiding", "lattice"])]
    preset: Option<String>,
    #[arg(long, requires = "lattice")]
    braiding: Option<PathBuf>,
    #[arg(long, requires = "braiding")]
    lattice: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// ħ for gl11
    #[arg(long, default_value = "1/3")]
    hbar: String,
    #[arg(long, value_enum, default_value_t = Target::Local)]
    target: Target,
    /// also compare Nichols dimensions before and after, up to this degree
    #[arg(long)]
    nichols_degree: Option<u32>,
}

#[derive(Args, Debug)]
struct YdArgs {
    /// verma, flipped, trivial, chain, family
    #[arg(long, conflicts_with = "module")]
    preset: Option<String>,
    /// module file: {name, base, degrees, action, coaction}
    #[arg(long)]
    module: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// degree λ in α_- units for trivial/chain
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    lambda: String,
    /// chain length
    #[arg(long, default_value_t = 1)]
    len: usize,
    /// also report whether the linking relation holds
    #[arg(long)]
    linking: bool,
}

#[derive(Args, Debug)]
struct AcceptanceArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// run criteria one after another
    #[arg(long)]
    serial: bool,
}

/// Failure of a subcommand: usage problems exit 2, failed checks exit 1.
enum Failure {
    Usage(String),
    Check(Value),
}

type Outcome = Result<(Value, bool), Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CheckFailed(m) => Failure::Check(json!({ "error": m })),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn read_spec<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let toml_ext = path.extension().is_some_and(|e| e == "toml");
    if toml_ext {
        toml::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    } else {
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

fn rational(s: &str) -> Result<Q, Failure> {
    Ok(parse_rational(s)?)
}

fn cyc(c: &CycNum) -> String {
    c.root_label().unwrap_or_else(|| c.to_text())
}

fn word(w: &[u8]) -> String {
    w.iter().map(|i| format!("x{}", i + 1)).collect()
}

fn report_json(r: &CheckReport) -> Value {
    json!({ "ok": r.ok, "checked": r.checked, "failures": r.failures })
}

fn run_nichols(a: &NicholsArgs) -> Outcome {
    let x: BraidedObject = match (&a.preset, &a.braiding) {
        (Some(name), None) => nichols::presets::by_name(name, a.p)?,
        (None, Some(path)) => read_spec::<BraidingSpec>(path)?.build()?,
        _ => return usage("give exactly one of --preset or --braiding"),
    };
    let cfg = NicholsConfig { max_degree: a.max_degree, max_words: a.max_words };
    let d = NicholsData::compute(&x, &cfg)?;
    let dims: Map<String, Value> = d
        .components
        .iter()
        .map(|(m, c)| (m.iter().map(u32::to_string).collect::<Vec<_>>().join(","), Value::from(c.dim())))
        .collect();
    let total = match d.total_dimension() {
        TotalDimension::Finite(n) => json!({ "finite": n }),
        TotalDimension::AtLeast(n) => json!({ "at_least": n }),
    };
    let mut out = json!({
        "braiding": BraidingSpec::from_object(&x),
        "max_degree": a.max_degree,
        "hilbert": d.hilbert,
        "dimensions": dims,
        "total_dimension": total,
    });
    let mut ok = true;
    if a.relations {
        let rels: Vec<Value> = d
            .minimal_relations()?
            .iter()
            .map(|e| Value::Array(e.iter().map(|(w, c)| json!({ "word": word(w), "coefficient": c })).collect()))
            .collect();
        out["relations"] = Value::Array(rels);
    }
    if let Some(k) = a.bialgebra {
        let r = d.check_bialgebra_axiom(k)?;
        ok &= r.ok;
        out["bialgebra"] = json!({
            "ok": r.ok,
            "pairs_checked": r.pairs_checked,
            "witness": r.witness.map(|(u, v)| [word(&u), word(&v)]),
        });
    }
    Ok((out, ok))
}

/// One entry per relation (or generator, for the antipode) with the first witness.
fn per_relation(kind: &str, labels: &[String], r: &CheckReport) -> Vec<Value> {
    labels
        .iter()
        .map(|l| {
            let w = r.failures.iter().find(|f| f.starts_with(&format!("{l}:")) || f.starts_with(&format!("{l} ")));
            let mut v = json!({ "check": kind, "relation": l, "status": if w.is_some() { "fail" } else { "pass" } });
            if let Some(w) = w {
                v["witness"] = json!(w);
            }
            v
        })
        .collect()
}

fn run_hopf(a: &HopfArgs) -> Outcome {
    let pres = match (a.preset.as_str(), &a.hbar) {
        ("ugl11", Some(h)) => hopf::ugl11(&rational(h)?)?,
        (_, Some(_)) => return usage("--hbar only applies to ugl11"),
        (name, None) => hopf::by_name(name, a.p)?,
    };
    let u = QuantumGroup::new(pres)?;
    let labels: Vec<String> = u.pres.relations.iter().map(|r| r.label.clone()).collect();
    let mut entries = Vec::new();
    let mut summary = Map::new();
    let all = a.check == HopfCheck::All;
    if all || a.check == HopfCheck::Relations {
        // module check where a weight-module family exists, normal forms otherwise
        let r = match a.preset.as_str() {
            "uq-sl2" | "uq-h-sl2" => {
                let unrolled = a.preset == "uq-h-sl2";
                let fam: Vec<_> = repcat::test_family(a.p, unrolled)?.iter().map(|m| m.as_representation(unrolled)).collect();
                u.check_modules(&fam)?
            }
            _ => u.check_symbolic()?,
        };
        entries.extend(per_relation("relations", &labels, &r));
        summary.insert("relations".into(), report_json(&r));
    }
    if all || a.check == HopfCheck::Coproduct {
        let r = u.check_symbolic()?;
        entries.extend(per_relation("coproduct", &labels, &r));
        summary.insert("coproduct".into(), report_json(&r));
    }
    if all || a.check == HopfCheck::Antipode {
        let r = u.check_antipode()?;
        entries.push(json!({
            "check": "antipode",
            "relation": "S(h1) h2 = eps(h) = h1 S(h2)",
            "status": if r.ok { "pass" } else { "fail" },
            "witness": r.failures.first(),
        }));
        summary.insert("antipode".into(), report_json(&r));
    }
    let ok = summary.values().all(|v| v["ok"] == json!(true));
    Ok((json!({ "presentation": u.pres.name, "results": entries, "summary": summary }), ok))
}

fn run_tensor(a: &TensorArgs) -> Outcome {
    let l = IndecLabel::parse(&a.left, a.p)?;
    let r = IndecLabel::parse(&a.right, a.p)?;
    let m = repcat::tensor(&l.module(a.p)?, &r.module(a.p)?)?;
    let parts: Vec<Value> = repcat::decompose(&m)?
        .iter()
        .map(|(k, n)| json!({ "label": k.to_string(), "multiplicity": n }))
        .collect();
    Ok((json!({ "left": l.to_string(), "right": r.to_string(), "dim": m.dim(), "decomposition": parts }), true))
}

fn run_fusion(a: &FusionArgs) -> Outcome {
    let x = SingletLabel::parse(&a.a, a.p)?;
    let y = SingletLabel::parse(&a.b, a.p)?;
    let d = fuse(&x, &y, a.p)?;
    let mut v = d.to_json();
    v["p"] = json!(a.p);
    v["product"] = json!([x.to_string(), y.to_string()]);
    Ok((v, true))
}

fn lattice_input(preset: &Option<String>, file: &Option<PathBuf>, p: u32) -> Result<Lattice, Failure> {
    match (preset.as_deref(), file) {
        (Some("triplet"), None) => Ok(Lattice::triplet(p)?),
        (Some(other), None) => usage(format!("unknown lattice preset {other:?}")),
        (None, Some(path)) => Ok(read_spec::<LatticeSpec>(path)?.build()?),
        _ => usage("give exactly one of --preset or --lattice"),
    }
}

fn run_lattice(a: &LatticeArgs) -> Outcome {
    let l = lattice_input(&a.preset, &a.lattice, a.p)?;
    let out = match a.action {
        LatticeAction::Info => json!({
            "lattice": LatticeSpec::from_lattice(&l),
            "rank": l.rank(),
            "ambient_dim": l.ambient_dim(),
            "integral": l.is_integral(),
            "even": l.is_even(),
            "gram": (0..l.rank()).map(|i| (0..l.rank()).map(|j| fmt_rational(l.gram().get(i, j))).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
        LatticeAction::Dual => json!({ "dual": LatticeSpec::from_lattice(&l.dual()?) }),
        LatticeAction::Discriminant => {
            let d = l.discriminant_form()?;
            let elems = d.elements();
            let qs: Vec<CycNum> = elems.iter().map(|k| d.quadratic_form(k)).collect();
            let mut v = json!({
                "group": d.group.label(),
                "order": d.order(),
                "elements": elems,
                "Q": qs.iter().map(cyc).collect::<Vec<_>>(),
                "generators": d.generators.iter().map(|g| g.iter().map(fmt_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            if a.numeric_shadow {
                v["Q_numeric"] = qs.iter().map(|c| json!(c.to_complex())).collect();
            }
            v
        }
    };
    Ok((out, true))
}

fn run_uproll(a: &UprollArgs) -> Outcome {
    let (x, l) = match (&a.preset, &a.braiding, &a.lattice) {
        (Some(name), None, None) => up::by_name(name, a.p, &rational(&a.hbar)?)?,
        (None, Some(b), Some(r)) => (read_spec::<BraidingSpec>(b)?.build()?, read_spec::<LatticeSpec>(r)?.build()?),
        _ => return usage("give --preset or both --braiding and --lattice"),
    };
    let target = match a.target {
        Target::Local => UprollTarget::Local,
        Target::All => UprollTarget::All,
    };
    let u = uproll(&x, &l, target)?;
    let mut v = u.to_json();
    let mut ok = u.ok();
    if let Some(k) = a.nichols_degree {
        let kept = u.nichols_preserved(&NicholsConfig { max_degree: k, ..Default::default() })?;
        v["nichols_preserved"] = json!(kept);
        ok &= kept;
    }
    v["ok"] = json!(ok);
    Ok((v, ok))
}

fn yd_json(m: &YDModule, linking: bool) -> Result<Value, Failure> {
    let c = yd_uproll::yd_check(m)?;
    let mut v = json!({ "module": m.name, "dim": m.dim(), "yd": c.ok, "axioms": c.axioms, "violation": c.violation });
    if linking {
        v["linking"] = json!(yd_uproll::linking_holds(m)?);
    }
    Ok(v)
}

fn run_yd(a: &YdArgs) -> Outcome {
    if let Some(path) = &a.module {
        let m = read_spec::<YdModuleSpec>(path)?.build()?;
        let v = yd_json(&m, a.linking)?;
        let ok = v["yd"] == json!(true);
        return Ok((v, ok));
    }
    let Some(name) = a.preset.as_deref() else {
        return usage("give --preset or --module");
    };
    if name == "family" {
        let r = yd_uproll::linking_from_yd(a.p)?;
        let ok = r.ok;
        return Ok((serde_json::to_value(r).expect("report serializes"), ok));
    }
    let base = RankOne::singlet(a.p)?;
    let lambda = base.bichar.group().degree(vec![rational(&a.lambda)?], vec![])?;
    let m = match name {
        "verma" => YDModule::verma(&base)?,
        "flipped" => {
            let mut m = YDModule::verma(&base)?;
            m.action = m.action.scale(&CycNum::from_int(-1));
            m.name = "V0(-x)".into();
            m
        }
        "trivial" => YDModule::trivial(&base, lambda)?,
        "chain" => YDModule::induced_chain(&base, lambda, a.len)?,
        other => return usage(format!("unknown YD preset {other:?}")),
    };
    let v = yd_json(&m, a.linking)?;
    let ok = v["yd"] == json!(true);
    Ok((v, ok))
}

fn run_acceptance(a: &AcceptanceArgs) -> Outcome {
    let r = acceptance::run_all(a.seed, !a.serial);
    let ok = r.all_pass;
    Ok((serde_json::to_value(&r).expect("report serializes"), ok))
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn acceptance_table(v: &Value) -> String {
    let mut s = String::new();
    for c in v["criteria"].as_array().into_iter().flatten() {
        let status = if c["pass"] == json!(true) { "PASS" } else { "FAIL" };
        s.push_str(&format!("{status} {:>2} {}: {}\n", c["id"].as_u64().unwrap_or(0), scalar(&c["name"]), scalar(&c["detail"])));
    }
    s.push_str(&format!("all_pass: {}\n", v["all_pass"]));
    s
}

fn emit(v: Value, format: Format, acceptance: bool) {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    match v {
        Value::Object(m) => doc.extend(m),
        other => {
            doc.insert("result".into(), other);
        }
    }
    let doc = Value::Object(doc);
    let s = match format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("json") + "\n",
        Format::Text if acceptance => acceptance_table(&doc),
        Format::Text => {
            let mut s = String::new();
            render_text(&doc, 0, &mut s);
            s
        }
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

/// Turns a TOML config into flags inserted right after the subcommand, so
/// flags given on the command line override them. The `args` key holds
/// positional arguments, returned separately.
fn config_flags(path: &Path) -> Result<(Vec<String>, Vec<String>), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let table: toml::Table = text.parse().map_err(|e| format!("{}: {e}", path.display()))?;
    let mut flags = Vec::new();
    let mut positional = Vec::new();
    for (k, v) in table {
        let flag = format!("--{}", k.replace('_', "-"));
        match v {
            toml::Value::Array(xs) if k == "args" => {
                positional.extend(xs.into_iter().map(|x| x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string())))
            }
            toml::Value::String(s) if k == "args" => positional.push(s),
            toml::Value::Boolean(true) => flags.push(flag),
            toml::Value::Boolean(false) => {}
            toml::Value::String(s) => {
                flags.push(flag);
                flags.push(s);
            }
            toml::Value::Integer(_) | toml::Value::Float(_) => {
                flags.push(flag);
                flags.push(v.to_string());
            }
            other => return Err(format!("config key {k:?}: unsupported value {other}")),
        }
    }
    Ok((flags, positional))
}

/// Command lines with the config merged in: first with the config's positional
/// arguments appended, then without them (used when the user gave their own).
fn with_config(argv: &[String], config: &Path) -> Result<[Vec<String>; 2], String> {
    let pos = argv
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.as_str()))
        .ok_or_else(|| "no subcommand given".to_string())?;
    let (flags, positional) = config_flags(config)?;
    let mut base = argv[..=pos].to_vec();
    base.extend(flags);
    base.extend_from_slice(&argv[pos + 1..]);
    let mut full = base.clone();
    if !positional.is_empty() {
        full.push("--".into());
        full.extend(positional);
    }
    Ok([full, base])
}

/// The `--config` value, found before clap runs so the config can supply required flags.
fn config_path(argv: &[String]) -> Option<PathBuf> {
    argv.iter().enumerate().find_map(|(i, a)| match a.strip_prefix("--config") {
        Some("") => argv.get(i + 1).map(PathBuf::from),
        Some(rest) => rest.strip_prefix('=').map(PathBuf::from),
        None => None,
    })
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let parsed = match config_path(&argv) {
        None => Cli::try_parse_from(&argv),
        Some(cfg) => match with_config(&argv, &cfg) {
            Ok([full, base]) => Cli::try_parse_from(&full).or_else(|_| Cli::try_parse_from(&base)),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
    };
    let cli = match parsed {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let result = match &cli.cmd {
        Cmd::Nichols(a) => run_nichols(a),
        Cmd::Hopf(a) => run_hopf(a),
        Cmd::Tensor(a) => run_tensor(a),
        Cmd::Fusion(a) => run_fusion(a),
        Cmd::Lattice(a) => run_lattice(a),
        Cmd::Uproll(a) => run_uproll(a),
        Cmd::YdCheck(a) => run_yd(a),
        Cmd::Acceptance(a) => run_acceptance(a),
    };
    let acc = matches!(cli.cmd, Cmd::Acceptance(_));
    match result {
        Ok((v, ok)) => {
            emit(v, cli.format, acc);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Check(v)) => {
            emit(v, cli.format, false);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
