use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quandlekit::braid::{closure_diagram, fixed_tuples, random_markov_moves, BraidWord};
use quandlekit::diagram::{extended_colorings, wirtinger_colorings, KnotDiagram};
use quandlekit::homology::{cocycle_basis2, cohomology2, QuandleComplex, DEFAULT_DEGREE_CAP};
use quandlekit::invariants::{classical_invariant, extended_invariant, partial_invariant, GroupRingElement};
use quandlekit::knots::knot_braid;
use quandlekit::quandle::{inner_group, orbit_decomposition, FiniteQuandle, PointedQuandle};
use quandlekit::{Cocycle2, Error};

#[derive(Parser)]
#[command(name = "quandlekit", version, about = "Quandle colorings, homology and cocycle invariants of knots")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect finite quandles.
    #[command(subcommand)]
    Quandle(QuandleCmd),
    /// Evaluate a cocycle invariant of a knot.
    Invariant(InvariantArgs),
    /// Run a verification suite.
    #[command(subcommand)]
    Check(CheckCmd),
}

#[derive(Subcommand)]
enum QuandleCmd {
    /// Check the quandle axioms of a table file.
    Validate { file: String },
    /// Order, connectedness, |Inn| and basepoint orbits.
    Info { quandle: String },
    /// Integral quandle homology in one degree.
    Homology {
        quandle: String,
        #[arg(long)]
        degree: usize,
    },
    /// Basis of 2-cocycles and the dimension of H² over a prime field.
    Cocycles {
        quandle: String,
        #[arg(long = "mod")]
        modulus: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Classical,
    Extended,
    Partial,
}

#[derive(Args)]
struct InvariantArgs {
    kind: Kind,
    /// Built-in name, braid word like "B3: 1 -2 1 -2", or diagram JSON path.
    knot: String,
    #[arg(long)]
    target: String,
    /// Cocycle JSON path, `zero`, or `basis:i:p`.
    #[arg(long)]
    cocycle: String,
    /// Pointed quandle `name:h`.
    #[arg(long)]
    pointed: Option<String>,
    /// An element of the orbit, or a comma-separated block.
    #[arg(long)]
    orbit: Option<String>,
}

#[derive(Args)]
struct TargetCocycle {
    #[arg(long)]
    target: String,
    #[arg(long)]
    cocycle: String,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Invariants are unchanged by seeded random conjugations and stabilizations.
    Markov {
        knot: String,
        #[arg(long, default_value_t = 20)]
        moves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tc: TargetCocycle,
        /// Pointed quandles for the extended invariant (default: dihedral:3:0 and trivial:2:0).
        #[arg(long)]
        pointed: Vec<String>,
    },
    /// The reverse mirror's extended invariant is the dual of the original's.
    Duality {
        knot: String,
        #[command(flatten)]
        tc: TargetCocycle,
        #[arg(long, default_value = "dihedral:3:0")]
        pointed: String,
    },
    /// Extended invariant for the one-element quandle equals the classical invariant.
    ReduceT1 {
        knot: String,
        #[command(flatten)]
        tc: TargetCocycle,
    },
    /// Fixed morphism tuples of the braid match extended colorings of its closure.
    Oracle {
        knot: String,
        #[arg(long)]
        pointed: String,
        #[arg(long)]
        target: String,
    },
}

enum Failure {
    Error(Error),
    Message(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = Result<(), Failure>;

struct Knot {
    braid: Option<BraidWord>,
    diagram: KnotDiagram,
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Message(format!("cannot read {path}: {e}")))
}

fn load_quandle(arg: &str) -> Result<FiniteQuandle, Failure> {
    if Path::new(arg).is_file() {
        Ok(FiniteQuandle::from_json(&read(arg)?)?)
    } else {
        Ok(FiniteQuandle::by_name(arg)?)
    }
}

fn load_knot(arg: &str) -> Result<Knot, Failure> {
    let braid = if let Some(b) = knot_braid(arg) {
        Some(b)
    } else if arg.trim_start().starts_with('B') && !Path::new(arg).is_file() {
        Some(arg.parse::<BraidWord>()?)
    } else {
        None
    };
    match braid {
        Some(b) => Ok(Knot { diagram: closure_diagram(&b)?, braid: Some(b) }),
        None => Ok(Knot { braid: None, diagram: KnotDiagram::from_json(&read(arg)?)? }),
    }
}

fn braid_of(knot: &Knot, arg: &str) -> Result<BraidWord, Failure> {
    knot.braid.clone().ok_or_else(|| Failure::Message(format!("{arg} is a diagram file; this check needs a braid word")))
}

fn load_cocycle(arg: &str, x: &FiniteQuandle) -> Result<Cocycle2, Failure> {
    if arg == "zero" {
        return Ok(Cocycle2::zero(x.order(), 2));
    }
    if let Some(rest) = arg.strip_prefix("basis:") {
        let bad = || Failure::Message(format!("malformed cocycle reference `{arg}`, expected basis:i:p"));
        let (i, p) = rest.split_once(':').ok_or_else(bad)?;
        let i: usize = i.parse().map_err(|_| bad())?;
        let p: u64 = p.parse().map_err(|_| bad())?;
        let basis = cocycle_basis2(x, p)?;
        let len = basis.len();
        return basis
            .into_iter()
            .nth(i)
            .ok_or_else(|| Failure::Message(format!("cocycle basis over Z_{p} has {len} elements, index {i} requested")));
    }
    let c = Cocycle2::from_json(&read(arg)?)?;
    c.validate(x)?;
    Ok(c)
}

fn degree_cap() -> Result<usize, Failure> {
    match std::env::var("QF_DEGREE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Message(format!("QF_DEGREE_CAP must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_DEGREE_CAP),
    }
}

fn value_json(v: &GroupRingElement, colorings: usize) -> Value {
    let mut out: Value = serde_json::from_str(&v.to_json()).expect("valid json");
    out["colorings"] = json!(colorings);
    out
}

fn cmd_quandle(cmd: QuandleCmd, as_json: bool) -> Outcome {
    match cmd {
        QuandleCmd::Validate { file } => {
            let text = read(&file)?;
            match FiniteQuandle::from_json(&text) {
                Ok(q) => {
                    if as_json {
                        println!("{}", json!({"valid": true, "order": q.order()}));
                    } else {
                        println!("OK (order {})", q.order());
                    }
                    Ok(())
                }
                Err(e) => {
                    if as_json {
                        println!("{}", json!({"valid": false, "error": e.to_string()}));
                    }
                    Err(e.into())
                }
            }
        }
        QuandleCmd::Info { quandle } => {
            let q = load_quandle(&quandle)?;
            let inn = inner_group(&q).len();
            let orbits: Vec<Vec<Vec<usize>>> = q
                .elements()
                .map(|h| orbit_decomposition(&PointedQuandle::new(q.clone(), h).expect("valid element")).blocks)
                .collect();
            if as_json {
                println!(
                    "{}",
                    json!({"order": q.order(), "connected": q.is_connected(), "inn_order": inn, "orbits": orbits})
                );
            } else {
                println!("order: {}", q.order());
                println!("connected: {}", if q.is_connected() { "yes" } else { "no" });
                println!("|Inn|: {inn}");
                for (h, blocks) in orbits.iter().enumerate() {
                    let parts: Vec<String> = blocks
                        .iter()
                        .map(|b| format!("{{{}}}", b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
                        .collect();
                    println!("orbits(h={h}): {}", parts.join(","));
                }
            }
            Ok(())
        }
        QuandleCmd::Homology { quandle, degree } => {
            let q = load_quandle(&quandle)?;
            let g = QuandleComplex::new(&q, degree_cap()?).homology(degree)?;
            if as_json {
                let torsion: Vec<String> = g.torsion.iter().map(|d| d.to_string()).collect();
                println!(
                    "{}",
                    json!({"degree": degree, "free_rank": g.free_rank, "torsion": torsion, "group": g.to_string()})
                );
            } else {
                println!("{g}");
            }
            Ok(())
        }
        QuandleCmd::Cocycles { quandle, modulus } => {
            let q = load_quandle(&quandle)?;
            let basis = cocycle_basis2(&q, modulus)?;
            let h = cohomology2(&q, modulus)?;
            if as_json {
                let to_value = |c: &Cocycle2| serde_json::to_value(c).expect("serializable");
                println!(
                    "{}",
                    json!({
                        "modulus": modulus,
                        "dimension": h.dimension,
                        "cocycle_dimension": h.cocycle_dimension,
                        "coboundary_dimension": h.coboundary_dimension,
                        "basis": basis.iter().map(to_value).collect::<Vec<_>>(),
                        "representatives": h.representatives.iter().map(to_value).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!(
                    "H^2 dimension over Z_{modulus}: {} (cocycles {}, coboundaries {})",
                    h.dimension, h.cocycle_dimension, h.coboundary_dimension
                );
                for (i, c) in basis.iter().enumerate() {
                    println!("basis[{i}]: {}", c.to_json());
                }
            }
            Ok(())
        }
    }
}

fn parse_orbit(arg: &str, p: &PointedQuandle) -> Result<Vec<usize>, Failure> {
    let elems: Vec<usize> = arg
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Message(format!("malformed orbit `{arg}`")))?;
    if let [q] = elems.as_slice() {
        p.quandle.check_element(*q)?;
        let partition = orbit_decomposition(p);
        return Ok(partition.block_of(*q).expect("every element lies in a block").to_vec());
    }
    Ok(elems)
}

fn cmd_invariant(args: InvariantArgs, as_json: bool) -> Outcome {
    let knot = load_knot(&args.knot)?;
    let x = load_quandle(&args.target)?;
    let phi = load_cocycle(&args.cocycle, &x)?;
    let d = &knot.diagram;
    let pointed = |what: &str| -> Result<PointedQuandle, Failure> {
        let arg = args
            .pointed
            .as_deref()
            .ok_or_else(|| Failure::Message(format!("{what} invariants need --pointed")))?;
        Ok(PointedQuandle::by_name(arg)?)
    };
    let (value, count) = match args.kind {
        Kind::Classical => (classical_invariant(d, &x, &phi)?, wirtinger_colorings(d, &x).len()),
        Kind::Extended => {
            let p = pointed("extended")?;
            (extended_invariant(d, &p, &x, &phi)?, extended_colorings(d, &p, &x).len())
        }
        Kind::Partial => {
            let p = pointed("partial")?;
            let arg = args.orbit.as_deref().ok_or_else(|| Failure::Message("partial invariants need --orbit".into()))?;
            let orbit = parse_orbit(arg, &p)?;
            (partial_invariant(d, &p, &x, &phi, &orbit)?, extended_colorings(d, &p, &x).len())
        }
    };
    if as_json {
        println!("{}", value_json(&value, count));
    } else {
        println!("{value}");
        println!("colorings: {count}");
    }
    Ok(())
}

struct Report {
    lines: Vec<(bool, String)>,
}

impl Report {
    fn new() -> Report {
        Report { lines: Vec::new() }
    }

    fn compare(&mut self, label: &str, left: &GroupRingElement, right: &GroupRingElement) {
        let ok = left == right;
        let text = if ok { format!("{label}: {left}") } else { format!("{label}: {left} != {right}") };
        self.lines.push((ok, text));
    }

    fn finish(self, as_json: bool) -> Outcome {
        let pass = self.lines.iter().all(|(ok, _)| *ok);
        if as_json {
            let checks: Vec<Value> = self.lines.iter().map(|(ok, t)| json!({"pass": ok, "detail": t})).collect();
            println!("{}", json!({"pass": pass, "checks": checks}));
        } else {
            for (ok, t) in &self.lines {
                println!("{} {t}", if *ok { "PASS" } else { "FAIL" });
            }
        }
        if pass {
            Ok(())
        } else {
            Err(Failure::Message("check failed".into()))
        }
    }
}

fn cmd_check(cmd: CheckCmd, as_json: bool) -> Outcome {
    let mut report = Report::new();
    match cmd {
        CheckCmd::Markov { knot, moves, seed, tc, pointed } => {
            let k = load_knot(&knot)?;
            let beta = braid_of(&k, &knot)?;
            let x = load_quandle(&tc.target)?;
            let phi = load_cocycle(&tc.cocycle, &x)?;
            let (moved, _) = random_markov_moves(&beta, moves, seed);
            let d2 = closure_diagram(&moved)?;
            report.compare(
                &format!("classical after {moves} moves (seed {seed}, {moved})"),
                &classical_invariant(&k.diagram, &x, &phi)?,
                &classical_invariant(&d2, &x, &phi)?,
            );
            let pointed = if pointed.is_empty() { vec!["dihedral:3:0".into(), "trivial:2:0".into()] } else { pointed };
            for arg in pointed {
                let p = PointedQuandle::by_name(&arg)?;
                report.compare(
                    &format!("extended ({arg})"),
                    &extended_invariant(&k.diagram, &p, &x, &phi)?,
                    &extended_invariant(&d2, &p, &x, &phi)?,
                );
            }
        }
        CheckCmd::Duality { knot, tc, pointed } => {
            let k = load_knot(&knot)?;
            let beta = braid_of(&k, &knot)?;
            let x = load_quandle(&tc.target)?;
            let phi = load_cocycle(&tc.cocycle, &x)?;
            let p = PointedQuandle::by_name(&pointed)?;
            let mirror = closure_diagram(&beta.inverse())?;
            report.compare(
                "reverse mirror vs dual",
                &extended_invariant(&mirror, &p, &x, &phi)?,
                &extended_invariant(&k.diagram, &p, &x, &phi)?.dual_involution(),
            );
        }
        CheckCmd::ReduceT1 { knot, tc } => {
            let k = load_knot(&knot)?;
            let x = load_quandle(&tc.target)?;
            let phi = load_cocycle(&tc.cocycle, &x)?;
            let t1 = PointedQuandle::new(FiniteQuandle::trivial(1)?, 0)?;
            report.compare(
                "extended (trivial:1:0) vs classical",
                &extended_invariant(&k.diagram, &t1, &x, &phi)?,
                &classical_invariant(&k.diagram, &x, &phi)?,
            );
        }
        CheckCmd::Oracle { knot, pointed, target } => {
            let k = load_knot(&knot)?;
            let beta = braid_of(&k, &knot)?;
            let x = load_quandle(&target)?;
            let p = PointedQuandle::by_name(&pointed)?;
            let tuples = fixed_tuples(&beta, &p, &x).len();
            let colorings = extended_colorings(&k.diagram, &p, &x).len();
            let ok = tuples == colorings;
            report.lines.push((ok, format!("fixed tuples {tuples}, extended colorings {colorings}")));
        }
    }
    report.finish(as_json)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Quandle(c) => cmd_quandle(c, cli.json),
        Command::Invariant(a) => cmd_invariant(a, cli.json),
        Command::Check(c) => cmd_check(c, cli.json),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Message(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
