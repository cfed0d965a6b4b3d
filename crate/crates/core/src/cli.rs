//! Command-line surface and the verification runner.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::arq::{export_dot, export_json, knit, knit_with, Budget, Category, DEFAULT_MAX_OBJECTS};
use crate::artrans::{ar_sequence, ar_sequence_f, ar_sequence_s, tau_f, tau_f_inv, tau_m, tau_m_inv, tau_s, tau_s_inv, ArSequence, TauMethod};
use crate::error::{Error, Result};
use crate::exactlin::rng;
use crate::io::{chain_from_str, chain_label, chain_to_json, map_to_json, module_label};
use crate::morcat::{chain_len, cok, component, epi, in_epi, in_mono, ker, mepi, mimo, mono};
use crate::repmod::{decompose, factor_through, is_iso, ModMap, Rep};
use crate::stable::{
    check_closed_formula, check_closed_formula_stable, check_rot_tau, check_rotation, check_rotation_period,
    check_serre_formula, check_serre_period, check_tau_formula, check_tau_period, check_tau_rot, omega_s, omega_s_inv,
    orders, predicted_orders, random_chain, rot, serre, serre_period, strip_branch_injectives, tau_s_period, Instance,
    Report,
};

#[derive(Parser, Debug)]
#[command(name = "arkit", version, about = "Auslander-Reiten theory of monomorphism categories, computed exactly")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "ARKIT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Field characteristic (prime).
    #[arg(long, global = true)]
    pub p: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Facts about an algebra.
    Algebra {
        #[command(subcommand)]
        command: AlgebraCommand,
    },
    /// Apply an operation to a chain object read from a JSON file.
    Chain(ChainArgs),
    /// Auslander-Reiten quivers.
    Quiver {
        #[command(subcommand)]
        command: QuiverCommand,
    },
    /// Check a property over every relevant object; exit 0 iff all pass.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCommand {
    Info { algebra: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChainOp {
    TauS,
    TauSInv,
    TauF,
    TauFInv,
    TauM,
    TauMInv,
    Mimo,
    Mepi,
    Cok,
    Ker,
    Mono,
    Epi,
    Rot,
    Serre,
    OmegaS,
    OmegaSInv,
    ArSequence,
}

#[derive(Args, Debug)]
pub struct ChainArgs {
    pub op: ChainOp,
    /// Chain JSON file.
    pub object: PathBuf,
    /// Algebra name or JSON file; defaults to the object's "algebra" field.
    #[arg(long)]
    pub algebra: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub power: usize,
    #[arg(long, default_value = "mimo-tau-cok")]
    pub method: String,
    /// Category for ar-sequence: S, F or mor.
    #[arg(long, default_value = "S")]
    pub category: String,
}

#[derive(Subcommand, Debug)]
pub enum QuiverCommand {
    Knit {
        algebra: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// S, F or mod.
        #[arg(long, default_value = "S")]
        category: String,
        #[arg(long, default_value_t = DEFAULT_MAX_OBJECTS)]
        max_objects: usize,
        /// Largest total dimension of an indecomposable before giving up.
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    /// Both translate formulas agree, and τ_S agrees stably with τ of Cok.
    TauFormula,
    /// Pushout rotation agrees with Cok Mimo (random chains).
    Rotation,
    /// Rot^{n+1} agrees with Ω^{-(n-1)} (random chains).
    RotationPeriod,
    /// Rotation commutes with τ (random chains).
    RotationTau,
    /// τ_S^s agrees stably with τ^s Rot^s.
    TauRotation,
    /// τ_S^{s(n+1)} agrees with Mimo τ^{s(n+1)} Ω^{-s(n-1)}.
    ClosedFormula,
    /// τ_S has the predicted period.
    TauPeriod,
    /// F_S^{s(n+1)} agrees with Mimo τ^{s(n+1)} Ω^{-2sn}.
    SerreFormula,
    /// F_S has the predicted period.
    SerrePeriod,
    /// Orders of τ and Ω on the stable module category.
    Orders,
    /// Numbers of projective and non-projective indecomposables.
    Counts,
}

fn parse_value<T: ValueEnum>(s: &str, what: &str) -> Result<T> {
    T::from_str(s, true).map_err(|_| Error::Input(format!("unknown {what} {s}")))
}

impl std::str::FromStr for ChainOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_value(s, "chain operation")
    }
}

impl std::str::FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_value(s, "property")
    }
}

impl Property {
    pub fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub property: Property,
    pub algebra: String,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Multiple of n+1 used by the closed formulas, or the power for tau-rotation.
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// Period to test instead of the predicted one.
    #[arg(long)]
    pub period: Option<usize>,
    /// Random chains for the rotation properties.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value = "mimo-tau-cok")]
    pub method: String,
    /// Expected counts "P,N" for the counts property.
    #[arg(long)]
    pub expect: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_OBJECTS)]
    pub max_objects: usize,
}

/// Everything a verification run depends on.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub algebra: String,
    pub n: usize,
    pub p: Option<u32>,
    pub seed: u64,
    pub s: usize,
    pub period: Option<usize>,
    pub samples: usize,
    pub method: TauMethod,
    pub expect: Option<(usize, usize)>,
    pub max_objects: usize,
}

impl RunConfig {
    pub fn new(algebra: &str, n: usize) -> RunConfig {
        RunConfig {
            algebra: algebra.into(),
            n,
            p: None,
            seed: 0,
            s: 1,
            period: None,
            samples: 50,
            method: TauMethod::MimoTauCok,
            expect: None,
            max_objects: DEFAULT_MAX_OBJECTS,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Input("n must be at least 2".into()));
        }
        if self.s == 0 || self.samples == 0 || self.max_objects == 0 {
            return Err(Error::Input("budgets and multiples must be positive".into()));
        }
        Ok(())
    }
}

fn parse_expect(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Input(format!("--expect wants P,N, got {s}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Counts recorded for the representation-finite cases we know.
pub fn known_counts(alg: &Algebra, n: usize) -> Option<(usize, usize)> {
    match (alg.nakayama_params()?, n) {
        ((1, 2), n) => Some((n, n * (n + 1) / 2)),
        ((1, 3), 3) => Some((3, 24)),
        ((1, 3), 4) => Some((4, 80)),
        ((2, 2), 2) => Some((4, 6)),
        ((2, 2), 3) => Some((6, 12)),
        _ => None,
    }
}

fn label(alg: &Algebra, x: &Rep, seed: u64) -> String {
    let r = if x.frame.chain_len().is_some() { chain_label(alg, x, seed) } else { module_label(alg, x, seed) };
    r.unwrap_or_else(|e| format!("<{e}>"))
}

/// Non-projective indecomposables of the monomorphism category.
fn nonprojectives(alg: &Arc<Algebra>, cfg: &RunConfig) -> Result<Vec<Rep>> {
    let q = knit(alg, cfg.n, Category::S, cfg.max_objects, cfg.seed)?;
    Ok(q.nodes.into_iter().filter(|n| !n.projective).map(|n| n.object).collect())
}

fn nakayama_or(alg: &Algebra, what: &str) -> Result<(usize, usize)> {
    alg.nakayama_params()
        .ok_or_else(|| Error::Input(format!("{what}: pass --period for algebras other than selfinjective Nakayama ones")))
}

/// Run a verifier and collect a report.
pub fn verify(property: Property, cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let alg = Algebra::load(&cfg.algebra, cfg.p)?;
    let seed = cfg.seed;
    let mut rep = Report::new(&property.name(), &alg, cfg.n);
    if !alg.is_selfinjective() && !matches!(property, Property::Counts | Property::TauFormula) {
        return Err(Error::Domain(format!("{} is not selfinjective", alg.name)));
    }
    match property {
        Property::Counts => {
            let q = knit(&alg, cfg.n, Category::S, cfg.max_objects, seed)?;
            let got = (q.projective_count(), q.nonprojective_count());
            let want = cfg.expect.or_else(|| known_counts(&alg, cfg.n));
            rep.push(Instance {
                object: format!("S_{}({})", cfg.n, alg.name),
                pass: want.is_none_or(|w| w == got),
                lhs: format!("{got:?}"),
                rhs: want.map_or("unknown".into(), |w| format!("{w:?}")),
            });
        }
        Property::Orders => {
            let q = knit(&alg, 1, Category::Mod, cfg.max_objects, seed)?;
            let mods: Vec<Rep> = q.nodes.into_iter().filter(|n| !n.projective).map(|n| n.object).collect();
            let (ot, oo) = orders(&mods, seed)?;
            let pred = alg.nakayama_params().map(|(m, t)| predicted_orders(m, t));
            rep.n = 1;
            rep.push(Instance {
                object: "tau".into(),
                pass: pred.is_none_or(|p| p.0 == ot),
                lhs: ot.to_string(),
                rhs: pred.map_or("unknown".into(), |p| p.0.to_string()),
            });
            rep.push(Instance {
                object: "omega".into(),
                pass: pred.is_none_or(|p| p.1 == oo),
                lhs: oo.to_string(),
                rhs: pred.map_or("unknown".into(), |p| p.1.to_string()),
            });
        }
        Property::Rotation | Property::RotationPeriod | Property::RotationTau => {
            let catalog: Vec<Rep> =
                knit(&alg, 1, Category::Mod, cfg.max_objects, seed)?.nodes.into_iter().map(|n| n.object).collect();
            let mut r = rng(seed);
            for _ in 0..cfg.samples {
                let x = random_chain(&alg, cfg.n, &catalog, &mut r);
                let c = match property {
                    Property::Rotation => check_rotation(&x, seed)?,
                    Property::RotationPeriod => check_rotation_period(&x, 1, seed)?,
                    _ => check_rot_tau(&x, seed)?,
                };
                rep.push(c.instance(&alg, &x, seed));
            }
        }
        _ => {
            let n = cfg.n;
            for x in nonprojectives(&alg, cfg)? {
                let inst = match property {
                    Property::TauFormula => {
                        let a = tau_s(&x, TauMethod::MimoTauCok, seed);
                        let b = tau_s(&x, TauMethod::KerTaumCok, seed);
                        let stable_ok = !alg.is_selfinjective() || check_tau_formula(&x, cfg.method, seed)?.pass;
                        Instance {
                            object: label(&alg, &x, seed),
                            pass: is_iso(&a, &b, seed) && stable_ok,
                            lhs: label(&alg, &a, seed),
                            rhs: label(&alg, &b, seed),
                        }
                    }
                    Property::TauRotation => check_tau_rot(&x, cfg.s, cfg.method, seed)?.instance(&alg, &x, seed),
                    Property::ClosedFormula => {
                        let st = check_closed_formula_stable(&x, cfg.s, cfg.method, seed)?;
                        let mut i = check_closed_formula(&x, cfg.s, cfg.method, seed)?.instance(&alg, &x, seed);
                        i.pass &= st.pass;
                        i
                    }
                    Property::TauPeriod => {
                        let k = match cfg.period {
                            Some(k) => k,
                            None => tau_s_period(nakayama_or(&alg, "tau-period")?.0, n),
                        };
                        check_tau_period(&x, k, cfg.method, seed)?.instance(&alg, &x, seed)
                    }
                    Property::SerreFormula => check_serre_formula(&x, cfg.s, cfg.method, seed)?.instance(&alg, &x, seed),
                    Property::SerrePeriod => {
                        let k = match cfg.period {
                            Some(k) => k,
                            None => {
                                let (m, t) = nakayama_or(&alg, "serre-period")?;
                                serre_period(m, t, n)
                            }
                        };
                        check_serre_period(&x, k, cfg.method, seed)?.instance(&alg, &x, seed)
                    }
                    _ => unreachable!("handled above"),
                };
                rep.push(inst);
            }
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// commands

/// Facts about an algebra as JSON.
pub fn algebra_info(alg: &Algebra, seed: u64) -> Value {
    let f = alg.frame();
    let names = |p: &crate::algebra::Path| -> Vec<String> {
        p.1.iter().rev().map(|&a| alg.quiver.arrows[a].name.clone()).collect()
    };
    let basis: Vec<Value> = alg
        .all_basis_paths()
        .iter()
        .map(|p| json!({"source": alg.quiver.vertices[p.0], "path": names(p)}))
        .collect();
    let proj: Vec<Value> = (0..alg.nverts())
        .map(|x| json!({"vertex": alg.quiver.vertices[x], "dims": f.proj(x).dims, "label": label(alg, &f.proj(x), seed)}))
        .collect();
    let inj: Vec<Value> = (0..alg.nverts())
        .map(|x| json!({"vertex": alg.quiver.vertices[x], "dims": f.inj(x).dims, "label": label(alg, &f.inj(x), seed)}))
        .collect();
    let perm = alg
        .nakayama_permutation()
        .map(|s| s.iter().map(|&v| alg.quiver.vertices[v].clone()).collect::<Vec<_>>());
    json!({
        "name": alg.name,
        "field": alg.p(),
        "vertices": alg.quiver.vertices,
        "arrows": alg.quiver.arrows.iter().map(|a| json!({"name": a.name, "from": alg.quiver.vertices[a.from], "to": alg.quiver.vertices[a.to]})).collect::<Vec<_>>(),
        "dim": alg.dim(),
        "cartan": alg.cartan(),
        "basis": basis,
        "projectives": proj,
        "injectives": inj,
        "selfinjective": alg.is_selfinjective(),
        "nakayama_permutation": perm,
        "symmetric": alg.is_symmetric(seed),
    })
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("object is not in the {what} category")))
    }
}

/// One application of a chain operation.
pub fn apply_chain_op(op: ChainOp, x: &Rep, method: TauMethod, seed: u64) -> Result<Rep> {
    use ChainOp::*;
    Ok(match op {
        TauS | TauSInv | Serre | OmegaS | OmegaSInv => {
            require(in_mono(x), "monomorphism")?;
            match op {
                TauS => tau_s(x, method, seed),
                TauSInv => tau_s_inv(x, method),
                Serre => serre(x, method, seed)?,
                OmegaS => omega_s(x, seed)?,
                _ => omega_s_inv(x, seed)?,
            }
        }
        TauF | TauFInv => {
            require(in_epi(x), "epimorphism")?;
            if op == TauF {
                tau_f(x, method, seed)
            } else {
                tau_f_inv(x, method)
            }
        }
        TauM => tau_m(x),
        TauMInv => tau_m_inv(x),
        Mimo => mimo(x, seed),
        Mepi => mepi(x),
        Cok => cok(x).chain,
        Ker => ker(x).chain,
        Mono => mono(x).chain,
        Epi => epi(x).chain,
        Rot => strip_branch_injectives(&rot(x), seed)?,
        ArSequence => return Err(Error::Input("ar-sequence is not iterable".into())),
    })
}

fn chain_map_json(alg: &Algebra, f: &ModMap) -> Value {
    let n = chain_len(&f.src);
    Value::Array((0..n).map(|i| map_to_json(alg, &component(f, i))).collect())
}

fn summand_labels(alg: &Algebra, x: &Rep, seed: u64) -> Result<Vec<String>> {
    let mut v: Vec<String> = decompose(x, seed)?.iter().map(|s| label(alg, &s.rep, seed)).collect();
    v.sort();
    Ok(v)
}

pub fn ar_sequence_json(alg: &Algebra, seq: &ArSequence, seed: u64) -> Result<Value> {
    let composite_zero = seq.g.after(&seq.f).is_zero();
    let dims_add = seq.left.total_dim() + seq.right.total_dim() == seq.middle.total_dim();
    let non_split = factor_through(&ModMap::identity(&seq.right), &seq.g).is_none();
    Ok(json!({
        "left": chain_to_json(alg, &seq.left, seed)?,
        "middle": chain_to_json(alg, &seq.middle, seed)?,
        "right": chain_to_json(alg, &seq.right, seed)?,
        "left_label": label(alg, &seq.left, seed),
        "middle_summands": summand_labels(alg, &seq.middle, seed)?,
        "right_label": label(alg, &seq.right, seed),
        "f": chain_map_json(alg, &seq.f),
        "g": chain_map_json(alg, &seq.g),
        "certified": {
            "f_mono": seq.f.is_mono(),
            "g_epi": seq.g.is_epi(),
            "exact": composite_zero && dims_add && seq.f.is_mono() && seq.g.is_epi(),
            "non_split": non_split,
        }
    }))
}

fn run_chain(args: &ChainArgs, p: Option<u32>, seed: u64) -> Result<Value> {
    let text = std::fs::read_to_string(&args.object)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", args.object.display())))?;
    let raw: Value = serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", args.object.display())))?;
    let name = match (&args.algebra, raw.get("algebra").and_then(Value::as_str)) {
        (Some(a), _) => a.clone(),
        (None, Some(a)) => a.to_string(),
        (None, None) => return Err(Error::Input("no algebra given: use --algebra or an \"algebra\" field".into())),
    };
    let alg = Algebra::load(&name, p)?;
    let x = chain_from_str(&alg, &text)?;
    let method: TauMethod = args.method.parse()?;
    if args.op == ChainOp::ArSequence {
        let seq = match args.category.to_ascii_lowercase().as_str() {
            "s" => {
                require(in_mono(&x), "monomorphism")?;
                ar_sequence_s(&x, seed)?
            }
            "f" => {
                require(in_epi(&x), "epimorphism")?;
                ar_sequence_f(&x, seed)?
            }
            "mor" => ar_sequence(&x, seed)?,
            c => return Err(Error::Input(format!("unknown category {c}; use S, F or mor"))),
        };
        return ar_sequence_json(&alg, &seq, seed);
    }
    let mut y = x;
    for _ in 0..args.power {
        y = apply_chain_op(args.op, &y, method, seed)?;
    }
    Ok(json!({
        "op": args.op.to_possible_value().map(|v| v.get_name().to_string()),
        "power": args.power,
        "label": label(&alg, &y, seed),
        "summands": summand_labels(&alg, &y, seed)?,
        "object": chain_to_json(&alg, &y, seed)?,
    }))
}

/// Output of a command: JSON for stdout, a summary for stderr, and whether
/// every check passed.
pub struct Outcome {
    pub json: Value,
    pub summary: String,
    pub pass: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let seed = cli.seed;
    match &cli.command {
        Command::Algebra { command: AlgebraCommand::Info { algebra } } => {
            let alg = Algebra::load(algebra, cli.p)?;
            let json = algebra_info(&alg, seed);
            let summary = format!("{}: dim {}, selfinjective {}", alg.name, alg.dim(), alg.is_selfinjective());
            Ok(Outcome { json, summary, pass: true })
        }
        Command::Chain(args) => {
            let json = run_chain(args, cli.p, seed)?;
            let summary = json.get("label").or_else(|| json.get("middle_summands")).map(Value::to_string).unwrap_or_default();
            Ok(Outcome { json, summary, pass: true })
        }
        Command::Quiver { command: QuiverCommand::Knit { algebra, n, category, max_objects, max_dim, dot, json } } => {
            let alg = Algebra::load(algebra, cli.p)?;
            let cat: Category = category.parse()?;
            let mut budget = Budget::for_category(&alg, *n, cat, *max_objects);
            if let Some(d) = max_dim {
                budget.max_dim = *d;
            }
            let q = knit_with(&alg, *n, cat, budget, seed)?;
            let text = export_json(&alg, &q, seed)?;
            if let Some(path) = dot {
                std::fs::write(path, export_dot(&q))?;
            }
            if let Some(path) = json {
                std::fs::write(path, &text)?;
            }
            let summary = format!(
                "{} nodes: {} projective, {} non-projective; mesh {}",
                q.nodes.len(),
                q.projective_count(),
                q.nonprojective_count(),
                if q.mesh_consistent() { "consistent" } else { "INCONSISTENT" }
            );
            let value: Value = serde_json::from_str(&text)?;
            Ok(Outcome { json: value, summary, pass: q.mesh_consistent() })
        }
        Command::Verify(a) => {
            let cfg = RunConfig {
                algebra: a.algebra.clone(),
                n: a.n,
                p: cli.p,
                seed,
                s: a.s,
                period: a.period,
                samples: a.samples,
                method: a.method.parse()?,
                expect: a.expect.as_deref().map(parse_expect).transpose()?,
                max_objects: a.max_objects,
            };
            let rep = verify(a.property, &cfg)?;
            let passed = rep.instances.iter().filter(|i| i.pass).count();
            let summary = format!("{}: {passed}/{} instances pass", rep.property, rep.instances.len());
            Ok(Outcome { pass: rep.all_pass, json: serde_json::to_value(&rep)?, summary })
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    match run(&cli) {
        Ok(out) => {
            use std::io::Write;
            let text = serde_json::to_string_pretty(&out.json).expect("serializable");
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout(), "{text}");
            eprintln!("{}", out.summary);
            if out.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
