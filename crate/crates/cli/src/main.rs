//! `qcc`: compute quantum cluster characters, dual Hall products, and seed
//! mutations, and run the verification suites, from the command line.
//!
//! Exit codes: 0 success/pass, 1 verification failure, 2 usage error,
//! 3 enumeration cap exceeded.

use clap::{Args, Parser, Subcommand};
use qcc_core::cc::CCContext;
use qcc_core::error::Error;
use qcc_core::field::FiniteField;
use qcc_core::hall::{hall_star, psi, HallElement};
use qcc_core::mutation::QuantumSeed;
use qcc_core::quiver::{standard, Quiver};
use qcc_core::rep::{kronecker, P1Point, Representation};
use qcc_core::scalar::ScalarRing;
use qcc_core::verify::{run_all, run_suite, CheckStatus, SuiteConfig, SuiteReport, SUITE_NAMES};
use qcc_core::Caps;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "qcc",
    about = "Exact quantum cluster characters, Hall products, and seed mutation over finite fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the randomized isomorphism fast path (off when absent;
    /// results are identical either way).
    #[arg(long, global = true)]
    rng_seed: Option<u64>,
    /// Emit a replay block with all resolved inputs alongside the result.
    #[arg(long, global = true)]
    seed_dump: bool,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Quiver: a JSON file path or one of `kronecker`, `a2`, `a3`,
    /// `a2-framed`, `a3-framed`.
    #[arg(long)]
    quiver: String,
    /// Finite field as `p,k` (cardinality p^k).
    #[arg(long, value_parser = parse_field)]
    field: Option<(u64, u32)>,
    /// Coefficient ring: `free` or `related:N` (default: related with
    /// N = 2d read off the seed).
    #[arg(long)]
    ring: Option<String>,
    /// Enumeration cap for counting loops.
    #[arg(long)]
    cap: Option<u64>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Character of a module, optionally shifted by an injective.
    Char {
        #[command(flatten)]
        common: CommonArgs,
        /// Module descriptor: `S1`, `P2`, `I1`, `M(2)`, `N(1)`, `V(-1)`,
        /// `R(1)@lambda=0`, `R(1)@lambda=inf`, `0`, or `@file.json`.
        #[arg(long)]
        module: String,
        /// Injective descriptor for the shifted character `X_{M + I[-1]}`.
        #[arg(long)]
        shift: Option<String>,
    },
    /// Dual Hall product of two delta functions.
    HallStar {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// The homomorphism into the quantum torus applied to a delta function
    /// or to a Hall element loaded from JSON.
    Psi {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        module: Option<String>,
        /// Hall element JSON file, as produced by `hall-star --json`.
        #[arg(long)]
        file: Option<String>,
    },
    /// Apply a mutation sequence to the initial seed.
    Mutate {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated 1-based directions, e.g. `1,2,1`.
        #[arg(long)]
        seq: String,
    },
    /// Frame expansion of the mutated frame value M'(c) in the current seed.
    Expand {
        #[command(flatten)]
        common: CommonArgs,
        /// Coordinate vector, comma-separated.
        #[arg(long)]
        c: String,
        /// Mutation direction (1-based).
        #[arg(long)]
        k: usize,
        /// Mutation sequence applied before expanding.
        #[arg(long)]
        seq: Option<String>,
    },
    /// Run one verification suite or the whole catalog.
    Verify {
        #[command(flatten)]
        common: VerifyArgs,
    },
    /// List the standard modules of a quiver over a field.
    Catalog {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Clone)]
struct VerifyArgs {
    /// Suite name; see `--all` for the catalog.
    #[arg(long, conflicts_with = "all")]
    suite: Option<String>,
    /// Run the full catalog.
    #[arg(long)]
    all: bool,
    /// Field override `p,k` applied to every suite that takes one.
    #[arg(long, value_parser = parse_field)]
    field: Option<(u64, u32)>,
    /// Mutation depth for the recursion suite (upper end of the index range).
    #[arg(long)]
    depth: Option<i64>,
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long)]
    json: bool,
}

fn parse_field(s: &str) -> Result<(u64, u32), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected `p,k`".into());
    }
    let p = parts[0].trim().parse().map_err(|_| "bad p")?;
    let k = parts[1].trim().parse().map_err(|_| "bad k")?;
    Ok((p, k))
}

fn parse_seq(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArg(format!("bad mutation direction `{x}`")))
        })
        .collect()
}

fn parse_vec(s: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidArg(format!("bad coordinate `{x}`")))
        })
        .collect()
}

fn load_quiver(name: &str) -> Result<Arc<Quiver>, Error> {
    match name {
        "kronecker" => Ok(standard::kronecker()),
        "a2" => Ok(standard::a2()),
        "a3" => Ok(standard::a3_bipartite()),
        "a2-framed" => standard::a2().principal_framing(),
        "a3-framed" => standard::a3_bipartite().principal_framing(),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArg(format!("cannot read quiver `{path}`: {e}")))?;
            let v: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()))?;
            Quiver::from_json(&v)
        }
    }
}

fn parse_point(field: &FiniteField, s: &str) -> Result<P1Point, Error> {
    if s == "inf" || s == "infinity" {
        return Ok(P1Point::Infinity);
    }
    let v: u64 = s
        .parse()
        .map_err(|_| Error::InvalidArg(format!("bad projective point `{s}`")))?;
    if v >= field.cardinality() {
        return Err(Error::InvalidArg(format!(
            "point index {v} exceeds the field cardinality"
        )));
    }
    Ok(P1Point::Finite(v as u16))
}

/// Parses a module descriptor against a quiver and field.
fn parse_module(
    desc: &str,
    quiver: &Arc<Quiver>,
    field: &FiniteField,
) -> Result<Representation, Error> {
    let desc = desc.trim();
    if desc == "0" {
        return Ok(Representation::zero(quiver, field));
    }
    if let Some(path) = desc.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArg(format!("cannot read module `{path}`: {e}")))?;
        let v: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()))?;
        return Representation::from_json(&v, quiver);
    }
    let take_index = |prefix: &str| -> Option<Result<usize, Error>> {
        desc.strip_prefix(prefix).map(|rest| {
            rest.parse::<usize>()
                .map_err(|_| Error::InvalidArg(format!("bad vertex in `{desc}`")))
        })
    };
    if let Some(i) = take_index("S") {
        return Representation::simple(quiver, field, i?);
    }
    if let Some(i) = take_index("P") {
        return Representation::projective(quiver, field, i?);
    }
    if let Some(i) = take_index("I") {
        return Representation::injective(quiver, field, i?);
    }
    let family = |prefix: &str| -> Option<Result<i64, Error>> {
        desc.strip_prefix(prefix).and_then(|rest| {
            let rest = rest.strip_prefix('(')?;
            let rest = rest.strip_suffix(')')?;
            Some(
                rest.parse::<i64>()
                    .map_err(|_| Error::InvalidArg(format!("bad index in `{desc}`"))),
            )
        })
    };
    if let Some(n) = family("M") {
        let n = n?;
        if n < 1 {
            return Err(Error::InvalidArg("M(n) needs n >= 1".into()));
        }
        return kronecker::preprojective(quiver, field, n as usize);
    }
    if let Some(n) = family("N") {
        let n = n?;
        if n < 1 {
            return Err(Error::InvalidArg("N(n) needs n >= 1".into()));
        }
        return kronecker::preinjective(quiver, field, n as usize);
    }
    if let Some(m) = family("V") {
        return kronecker::v_module(quiver, field, m?);
    }
    if let Some(rest) = desc.strip_prefix("R(") {
        // R(n)@lambda=point; only degree-one regulars with n = 1 exist here.
        let Some((n_str, point_str)) = rest.split_once(")@lambda=") else {
            return Err(Error::InvalidArg(
                "regular modules are written R(1)@lambda=<point>".into(),
            ));
        };
        if n_str != "1" {
            return Err(Error::InvalidArg(
                "only degree-one regulars R(1) are supported".into(),
            ));
        }
        let point = parse_point(field, point_str)?;
        return kronecker::regular(quiver, field, point);
    }
    Err(Error::InvalidArg(format!(
        "unknown module descriptor `{desc}`"
    )))
}

struct Resolved {
    quiver: Arc<Quiver>,
    field: FiniteField,
    ctx: CCContext,
    caps: Caps,
}

impl Resolved {
    /// Everything needed to replay the computation bit-identically, with the
    /// quiver and field fully embedded rather than referenced by path.
    fn replay(&self) -> serde_json::Value {
        serde_json::json!({
            "quiver": self.quiver.to_json(),
            "field": self.field.to_json(),
            "ring": match self.ctx.ring().relation() {
                Some((n, q0)) => serde_json::json!({ "mode": "related", "N": n, "Q0": q0 }),
                None => serde_json::json!({ "mode": "free" }),
            },
            "caps": {
                "subspaces": self.caps.subspaces as u64,
                "enumeration": self.caps.enumeration as u64,
            },
            "rng_seed": self.caps.rng_seed,
        })
    }
}

fn resolve(common: &CommonArgs, rng_seed: Option<u64>) -> Result<Resolved, Error> {
    let quiver = load_quiver(&common.quiver)?;
    let (p, k) = common.field.unwrap_or((2, 1));
    let mut caps = Caps::default().with_rng_seed(rng_seed);
    if let Some(c) = common.cap {
        caps = caps.with_enumeration(c as u128).with_subspaces(c as u128);
    }
    let field = FiniteField::with_cap(p, k, caps.field)?;
    let ctx = match common.ring.as_deref() {
        None | Some("related") => CCContext::new(&quiver, &field, &caps)?,
        Some("free") => CCContext::with_ring(&quiver, &field, &ScalarRing::free(), &caps)?,
        Some(spec) => {
            let Some(n) = spec.strip_prefix("related:") else {
                return Err(Error::InvalidArg(format!("unknown ring `{spec}`")));
            };
            let n: u32 = n
                .parse()
                .map_err(|_| Error::InvalidArg(format!("bad ring exponent in `{spec}`")))?;
            let ring = ScalarRing::related(n, field.cardinality())?;
            CCContext::with_ring(&quiver, &field, &ring, &caps)?
        }
    };
    Ok(Resolved {
        quiver,
        field,
        ctx,
        caps,
    })
}

/// A display name for an isomorphism class: a catalog name when one matches,
/// a sum of catalog names for split classes, otherwise the dimension vector.
fn describe_class(rep: &Representation, r: &Resolved) -> String {
    let mut names: Vec<(String, Representation)> = Vec::new();
    for i in 1..=r.quiver.vertices() {
        if let Ok(s) = Representation::simple(&r.quiver, &r.field, i) {
            names.push((format!("S{i}"), s));
        }
    }
    let is_kronecker = r.quiver.vertices() == 2 && r.quiver.arrow_count(0, 1) == 2;
    if is_kronecker {
        for n in 1..=4usize {
            if let Ok(m) = kronecker::preprojective(&r.quiver, &r.field, n) {
                names.push((format!("M({n})"), m));
            }
            if let Ok(m) = kronecker::preinjective(&r.quiver, &r.field, n) {
                names.push((format!("N({n})"), m));
            }
        }
        for p in qcc_core::rep::p1_points(&r.field) {
            if let Ok(m) = kronecker::regular(&r.quiver, &r.field, p) {
                names.push((format!("R(1)@lambda={p}"), m));
            }
        }
    }
    for (name, known) in &names {
        if matches!(
            qcc_core::rep::is_isomorphic(known, rep, &r.caps, r.caps.rng_seed),
            Ok(true)
        ) {
            return name.clone();
        }
    }
    // Split classes made of two catalog pieces.
    for (na, a) in &names {
        for (nb, b) in &names {
            if let Ok(sum) = a.direct_sum(b) {
                if matches!(
                    qcc_core::rep::is_isomorphic(&sum, rep, &r.caps, r.caps.rng_seed),
                    Ok(true)
                ) {
                    return format!("{na}+{nb}");
                }
            }
        }
    }
    format!("dims {:?}", rep.dims())
}

fn emit(
    json: bool,
    seed_dump: Option<serde_json::Value>,
    cli_args: &[String],
    text: String,
    value: serde_json::Value,
) {
    if let Some(inputs) = seed_dump {
        let out = serde_json::json!({
            "replay": {
                "argv": cli_args,
                "version": env!("CARGO_PKG_VERSION"),
                "inputs": inputs,
            },
            "result": value,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else if json {
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        println!("{text}");
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 3,
        Error::NotDivisible => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    match run(&cli, &argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cli: &Cli, argv: &[String]) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Char {
            common,
            module,
            shift,
        } => {
            let r = resolve(common, cli.rng_seed)?;
            let m = parse_module(module, &r.quiver, &r.field)?;
            let x = match shift {
                Some(inj_desc) => {
                    let inj = parse_module(inj_desc, &r.quiver, &r.field)?;
                    r.ctx.character_shifted(&m, &inj)?
                }
                None => r.ctx.character(&m)?,
            };
            emit(
                common.json,
                cli.seed_dump.then(|| r.replay()),
                argv,
                x.to_string(),
                x.to_json(),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::HallStar {
            common,
            left,
            right,
        } => {
            let r = resolve(common, cli.rng_seed)?;
            let a = HallElement::delta(&r.ctx, parse_module(left, &r.quiver, &r.field)?)?;
            let b = HallElement::delta(&r.ctx, parse_module(right, &r.quiver, &r.field)?)?;
            let prod = hall_star(&a, &b)?;
            let text = prod
                .terms()
                .iter()
                .map(|(rep, c)| format!("({c}) * delta[{}]", describe_class(rep, &r)))
                .collect::<Vec<_>>()
                .join(" + ");
            emit(
                common.json,
                cli.seed_dump.then(|| r.replay()),
                argv,
                text,
                prod.to_json(),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Psi {
            common,
            module,
            file,
        } => {
            let r = resolve(common, cli.rng_seed)?;
            let h = match (module, file) {
                (Some(desc), None) => {
                    HallElement::delta(&r.ctx, parse_module(desc, &r.quiver, &r.field)?)?
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Error::InvalidArg(format!("cannot read hall element `{path}`: {e}"))
                    })?;
                    let v: serde_json::Value =
                        serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()))?;
                    let items = v.as_array().ok_or_else(|| {
                        Error::Json("hall element JSON is a list of {rep, coeff}".into())
                    })?;
                    let mut h = HallElement::zero(&r.ctx);
                    for item in items {
                        let rep = Representation::from_json(
                            item.get("rep")
                                .ok_or_else(|| Error::Json("term needs rep".into()))?,
                            &r.quiver,
                        )?;
                        let coeff = qcc_core::scalar::Scalar::from_json(
                            item.get("coeff")
                                .ok_or_else(|| Error::Json("term needs coeff".into()))?,
                        )?
                        .reduce_to(r.ctx.ring())?;
                        h = h.add_term(rep, coeff)?;
                    }
                    h
                }
                _ => {
                    return Err(Error::InvalidArg(
                        "psi needs exactly one of --module or --file".into(),
                    ))
                }
            };
            let x = psi(&h)?;
            emit(
                common.json,
                cli.seed_dump.then(|| r.replay()),
                argv,
                x.to_string(),
                x.to_json(),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Mutate { common, seq } => {
            let r = resolve(common, cli.rng_seed)?;
            let ring = match common.ring.as_deref() {
                None | Some("free") => ScalarRing::free(),
                _ => r.ctx.ring().clone(),
            };
            let seed = QuantumSeed::initial(&r.quiver, &ring)?;
            let seq = parse_seq(seq)?;
            let out = seed.mutate_seq(&seq)?;
            let text = out
                .cluster()
                .iter()
                .enumerate()
                .map(|(i, v)| format!("X_{} = {v}", i + 1))
                .collect::<Vec<_>>()
                .join("\n");
            emit(
                common.json,
                cli.seed_dump.then(|| r.replay()),
                argv,
                text,
                out.to_json(),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Expand { common, c, k, seq } => {
            let r = resolve(common, cli.rng_seed)?;
            let ring = match common.ring.as_deref() {
                None | Some("free") => ScalarRing::free(),
                _ => r.ctx.ring().clone(),
            };
            let mut seed = QuantumSeed::initial(&r.quiver, &ring)?;
            if let Some(seq) = seq {
                seed = seed.mutate_seq(&parse_seq(seq)?)?;
            }
            let c = parse_vec(c)?;
            let x = seed.frame_expand(&c, *k)?;
            emit(
                common.json,
                cli.seed_dump.then(|| r.replay()),
                argv,
                x.to_string(),
                x.to_json(),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { common } => {
            let mut cfg = SuiteConfig::default();
            if let Some((p, k)) = common.field {
                cfg.fields = Some(vec![(p, k)]);
            }
            if let Some(depth) = common.depth {
                cfg.range_hi = depth;
                cfg.range_lo = -(depth - 3).max(0);
            }
            if let Some(cap) = common.cap {
                cfg.caps = cfg
                    .caps
                    .with_enumeration(cap as u128)
                    .with_subspaces(cap as u128);
            }
            let reports: Vec<SuiteReport> = if common.all {
                run_all(&cfg)?
            } else if let Some(name) = &common.suite {
                vec![run_suite(name, &cfg)?]
            } else {
                return Err(Error::InvalidArg(format!(
                    "verify needs --suite NAME or --all; suites: {}",
                    SUITE_NAMES.join(", ")
                )));
            };
            let mut any_fail = false;
            let mut any_cap = false;
            let mut lines = Vec::new();
            for rep in &reports {
                match rep.status {
                    CheckStatus::Fail => any_fail = true,
                    CheckStatus::Inconclusive => any_cap = true,
                    CheckStatus::Pass => {}
                }
                let (pass, total) = (
                    rep.checks
                        .iter()
                        .filter(|c| c.status == CheckStatus::Pass)
                        .count(),
                    rep.checks.len(),
                );
                lines.push(format!(
                    "{:<22} {:<12} {pass}/{total} checks",
                    rep.suite,
                    format!("{:?}", rep.status).to_lowercase()
                ));
                for c in &rep.checks {
                    if c.status == CheckStatus::Fail {
                        lines.push(format!(
                            "  FAIL {} [{}]: {}",
                            c.id,
                            c.instance,
                            c.witness
                                .as_ref()
                                .map(|w| w.to_string())
                                .unwrap_or_default()
                        ));
                    }
                }
            }
            let value = serde_json::json!(reports.iter().map(|r| r.to_json()).collect::<Vec<_>>());
            let params_value = serde_json::json!({
                "suites": common.suite.clone().map(|s| vec![s]),
                "all": common.all,
                "fields": cfg.fields,
                "range": [cfg.range_lo, cfg.range_hi],
                "caps": {
                    "subspaces": cfg.caps.subspaces as u64,
                    "enumeration": cfg.caps.enumeration as u64,
                },
            });
            emit(
                common.json,
                cli.seed_dump.then(|| params_value.clone()),
                argv,
                lines.join("\n"),
                value,
            );
            if any_fail {
                Ok(ExitCode::from(1))
            } else if any_cap {
                Ok(ExitCode::from(3))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Catalog { common } => {
            let r = resolve(common, cli.rng_seed)?;
            let mut entries: Vec<(String, Representation)> = Vec::new();
            for i in 1..=r.quiver.vertices() {
                entries.push((
                    format!("S{i}"),
                    Representation::simple(&r.quiver, &r.field, i)?,
                ));
                entries.push((
                    format!("P{i}"),
                    Representation::projective(&r.quiver, &r.field, i)?,
                ));
                entries.push((
                    format!("I{i}"),
                    Representation::injective(&r.quiver, &r.field, i)?,
                ));
            }
            let is_kronecker = r.quiver.vertices() == 2 && r.quiver.arrow_count(0, 1) == 2;
            if is_kronecker {
                for n in 1..=3usize {
                    entries.push((
                        format!("M({n})"),
                        kronecker::preprojective(&r.quiver, &r.field, n)?,
                    ));
                    entries.push((
                        format!("N({n})"),
                        kronecker::preinjective(&r.quiver, &r.field, n)?,
                    ));
                }
                for p in qcc_core::rep::p1_points(&r.field) {
                    entries.push((
                        format!("R(1)@lambda={p}"),
                        kronecker::regular(&r.quiver, &r.field, p)?,
                    ));
                }
            }
            let text = entries
                .iter()
                .map(|(n, rep)| format!("{n:<18} dims {:?}", rep.dims()))
                .collect::<Vec<_>>()
                .join("\n");
            let value = serde_json::json!(entries
                .iter()
                .map(|(n, rep)| serde_json::json!({ "name": n, "module": rep.to_json() }))
                .collect::<Vec<_>>());
            emit(
                common.json,
                cli.seed_dump.then(|| r.replay()),
                argv,
                text,
                value,
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}
