use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use qhide::bounds::*;
use qhide::clifford::{gate_budget, log2_group_order_mod_phase, random_walk_sample, synthesize_circuit, walk_length_policy, WalkOptions};
use qhide::commitment::{run_sessions, CheatModel};
use qhide::error::Error;
use qhide::linalg::trace_product;
use qhide::locc::*;
use qhide::states::*;

mod figures;

/// Bipartite data hiding: states, attacks, bounds, preparation and commitment.
#[derive(Parser, Debug)]
#[command(name = "qhide", version)]
struct Cli {
    /// Print JSON instead of `key = value` lines.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for Monte Carlo and grids; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Root seed. Defaults to QHIDE_SEED, then to 20030219.
    #[arg(long, global = true, env = "QHIDE_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a state and report its defining identities.
    States(StatesArgs),
    /// Run the pairwise Bell attack or the two-step protocol for τ.
    Attack(AttackArgs),
    /// Evaluate a bound.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Sample a Clifford element by random walk and synthesize it.
    Clifford(CliffordArgs),
    /// Preparation procedures for the hiding states.
    #[command(subcommand)]
    Prepare(PrepareCommand),
    /// Simulate commitment sessions.
    Commit(CommitArgs),
    /// Write every figure dataset as CSV.
    Figures(FiguresArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StateKind {
    Hiding,
    Tau,
}

#[derive(Args, Debug)]
struct StatesArgs {
    #[arg(long)]
    n: usize,
    /// Hidden bit; both states are reported when omitted.
    #[arg(long)]
    b: Option<u8>,
    #[arg(long, value_enum, default_value = "hiding")]
    kind: StateKind,
    /// Write the state (requires --b) as a JSON record.
    #[arg(long)]
    state_out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Protocol {
    Pairwise,
    Tau,
}

#[derive(Args, Debug)]
struct AttackArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, value_enum, default_value = "pairwise")]
    protocol: Protocol,
    /// Write every pairwise trial as one JSON line.
    #[arg(long)]
    records: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum BoundCommand {
    /// `p00 + p11 − 1 ≤ 2/(2ⁿ+1)` and the attack that reaches it.
    Single {
        #[arg(long)]
        n: usize,
        /// Also solve the Bell-diagonal LP (n ≤ 3).
        #[arg(long)]
        lp: bool,
    },
    /// Information bound for k bits hidden in n pairs each.
    Multi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Also report the smallest n reaching this many bits.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Guaranteed single-Pauli advantage at `x = p00 − p11`.
    Theorem1 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x: f64,
    },
    /// PPT optimum for the τ parity states.
    Tau {
        #[arg(long)]
        n: usize,
        /// Trace the region on this many p00 values instead.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Entanglement needed to prepare ρ₁ from ρ₀ resources.
    Emin {
        #[arg(long)]
        n: usize,
    },
    /// `δ·H(X)` and the channel attaining it.
    Info {
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 0.5)]
        prior: f64,
    },
}

#[derive(Args, Debug)]
struct CliffordArgs {
    #[arg(long)]
    n: usize,
    /// Walk length; defaults to the mixing policy at --eps.
    #[arg(long)]
    steps: Option<u64>,
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
}

#[derive(Subcommand, Debug)]
enum PrepareCommand {
    /// Emit a circuit to apply bilaterally to |0…0⟩⊗|0…0⟩.
    Rho0 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        steps: Option<u64>,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
    },
    /// Sample Bell labels of ρ₁.
    Rho1 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
}

#[derive(Args, Debug)]
struct CommitArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// honest, parity or nonsinglet:α.
    #[arg(long, default_value = "honest", value_parser = parse_cheat)]
    cheat: CheatModel,
    #[arg(long, default_value_t = 10_000)]
    sessions: u64,
}

#[derive(Args, Debug)]
struct FiguresArgs {
    #[arg(long)]
    out: PathBuf,
    /// Points on the p00 axis for the Werner and τ regions.
    #[arg(long, default_value_t = 101)]
    grid: usize,
    /// Points for the multi-copy τ regions, one cutting-plane solve each.
    #[arg(long, default_value_t = 101)]
    tau_grid: usize,
    /// Largest number of τ copies in tal2bdd; 3 takes minutes per point.
    #[arg(long, default_value_t = 2)]
    tau_max_n: usize,
}

fn parse_cheat(s: &str) -> Result<CheatModel, String> {
    match s {
        "honest" => Ok(CheatModel::Honest),
        "parity" => Ok(CheatModel::WrongParityOpen),
        _ => {
            let alpha = s
                .strip_prefix("nonsinglet:")
                .ok_or_else(|| format!("unknown cheat model {s:?}"))?
                .parse::<f64>()
                .map_err(|e| e.to_string())?;
            if !(0.0..=1.0).contains(&alpha) {
                return Err(format!("fidelity {alpha} outside [0, 1]"));
            }
            Ok(CheatModel::NonSingletOpen(alpha))
        }
    }
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Out = Result<Value, Failure>;

fn ser<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn render(v: &Value, json: bool) -> String {
    if json {
        return serde_json::to_string_pretty(v).expect("valid json") + "\n";
    }
    match v {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k} = {}\n", scalar(v))).collect(),
        other => format!("{}\n", scalar(other)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn states(a: &StatesArgs) -> Out {
    let bits: Vec<u8> = match a.b {
        Some(b) => vec![b],
        None => vec![0, 1],
    };
    if a.state_out.is_some() && a.b.is_none() {
        return Err(Failure::Usage("--state-out needs --b".into()));
    }
    let build = |b: u8| match a.kind {
        StateKind::Hiding => hiding_state(b, a.n),
        StateKind::Tau => tau_parity_state(b, a.n),
    };
    let mut out = Map::new();
    out.insert("n".into(), json!(a.n));
    out.insert("kind".into(), json!(format!("{:?}", a.kind).to_lowercase()));
    for &b in &bits {
        let rho = build(b)?;
        let mut m = Map::new();
        m.insert("trace".into(), json!(rho.matrix().trace().re));
        if a.n <= EIGEN_CAP {
            m.insert("min_pt_eigenvalue".into(), json!(rho.partial_transpose().min_eigenvalue()));
            m.insert("ppt".into(), json!(rho.is_ppt(POSITIVITY_TOL)));
        }
        if let StateKind::Hiding = a.kind {
            if a.n <= EIGEN_CAP {
                m.insert("werner_deviation".into(), json!(werner_form_check(b, a.n)?));
            }
            if (2..=4).contains(&a.n) {
                m.insert("recursion_deviation".into(), json!(recursion_check(b, a.n)?));
            }
        }
        if rho.dim() == 4 {
            m.insert("eof".into(), json!(wootters_eof(&rho)?));
        }
        out.insert(format!("b{b}"), Value::Object(m));
        if let Some(path) = &a.state_out {
            fs::write(path, rho.to_json())?;
        }
    }
    if bits.len() == 2 {
        let overlap = trace_product(build(0)?.matrix(), build(1)?.matrix()).re;
        out.insert("overlap".into(), json!(overlap));
    }
    Ok(Value::Object(out))
}

fn attack(a: &AttackArgs, seed: u64) -> Out {
    match a.protocol {
        Protocol::Pairwise => {
            let est = pairwise_attack_mc(a.n, a.trials, seed)?;
            if let Some(path) = &a.records {
                let mut text = String::new();
                for b in 0..2 {
                    for r in pairwise_attack_records(a.n, b, a.trials, seed)? {
                        text.push_str(&serde_json::to_string(&r).expect("serializable"));
                        text.push('\n');
                    }
                }
                fs::write(path, text)?;
            }
            Ok(ser(&est))
        }
        Protocol::Tau => {
            let p = tau_protocol_exact()?;
            let s = tau_protocol_symmetrized()?;
            Ok(json!({
                "p00": p.p00,
                "p11": p.p11,
                "sum": p.p00 + p.p11,
                "symmetrized_p00": s.p00,
                "symmetrized_p11": s.p11,
            }))
        }
    }
}

fn bound(cmd: &BoundCommand) -> Out {
    match *cmd {
        BoundCommand::Single { n, lp } => {
            let b = single_bit_bound(n)?;
            let mut v = ser(&b);
            let attack = pairwise_attack_exact(n)?;
            v["attack_p00"] = json!(attack.p00);
            v["attack_p11"] = json!(attack.p11);
            if lp {
                let (w, k) = sum_objective(n)?;
                v["lp_sum"] = json!(bell_diag_lp(n, &w)?.0 + k);
            }
            Ok(v)
        }
        BoundCommand::Multi { n, k, eps } => {
            let b = multi_bit_bound(n, k)?;
            let mut v = json!({
                "n": b.n,
                "k": b.k,
                "l": b.l.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "u": b.u.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "delta": b.delta,
                "log2_delta": b.log2_delta,
                "info_bound": b.info_bound,
                "log2_info_bound": b.log2_info_bound,
            });
            if let Some(eps) = eps {
                v["required_n"] = json!(required_n(k, eps)?);
                v["asymptotic_n"] = json!(asymptotic_n(k, eps));
            }
            Ok(v)
        }
        BoundCommand::Theorem1 { n, x } => Ok(json!({
            "n": n,
            "x": x,
            "advantage": theorem1_curve(n, x)?,
            "floor": theorem1_curve(n, 0.0)?,
        })),
        BoundCommand::Tau { n, grid } => match grid {
            None => Ok(ser(&tau_max_sum(n)?)),
            Some(points) => Ok(json!({ "n": n, "region": ser(&tau_ppt_region(n, &unit_grid(points))?) })),
        },
        BoundCommand::Emin { n } => Ok(json!({ "n": n, "emin_lower_bound": emin_lower_bound(n)? })),
        BoundCommand::Info { delta, prior } => Ok(ser(&mutual_info_cap(delta, prior)?)),
    }
}

fn walk_steps(n: usize, steps: Option<u64>, eps: f64) -> Result<u64, Failure> {
    Ok(match steps {
        Some(s) => s,
        None => walk_length_policy(n, eps)?,
    })
}

fn clifford(a: &CliffordArgs, seed: u64) -> Out {
    let steps = walk_steps(a.n, a.steps, a.eps)?;
    let element = random_walk_sample(a.n, steps, seed, WalkOptions::default())?;
    let circuit = synthesize_circuit(&element)?;
    Ok(json!({
        "n": a.n,
        "steps": steps,
        "log2_group_order": log2_group_order_mod_phase(a.n),
        "images": element.images().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "gates": circuit.len(),
        "budget": gate_budget(a.n),
        "circuit": circuit.gates().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    }))
}

fn prepare(cmd: &PrepareCommand, seed: u64) -> Out {
    match *cmd {
        PrepareCommand::Rho0 { n, steps, eps } => {
            let steps = walk_steps(n, steps, eps)?;
            let prep = prepare_rho0(n, seed, steps)?;
            Ok(json!({
                "n": n,
                "seed": seed,
                "steps": steps,
                "apply": "bilaterally to |0...0> (x) |0...0>",
                "gates": prep.circuit.len(),
                "budget": gate_budget(n),
                "circuit": prep.circuit.gates().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            }))
        }
        PrepareCommand::Rho1 { n, count } => {
            let labels = if count == 1 { vec![prepare_rho1_sample(n, seed)?] } else { prepare_rho1_samples(n, count, seed)? };
            Ok(json!({
                "n": n,
                "seed": seed,
                "labels": labels.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            }))
        }
    }
}

fn commit(a: &CommitArgs, seed: u64) -> Out {
    Ok(ser(&run_sessions(a.n, a.r, a.cheat, a.sessions, seed)?))
}

fn run(cli: &Cli) -> Out {
    let seed = cli.seed.unwrap_or(qhide::rng::DEFAULT_SEED);
    match &cli.command {
        Command::States(a) => states(a),
        Command::Attack(a) => attack(a, seed),
        Command::Bound(b) => bound(b),
        Command::Clifford(a) => clifford(a, seed),
        Command::Prepare(p) => prepare(p, seed),
        Command::Commit(a) => commit(a, seed),
        Command::Figures(a) => figures::write_all(a, seed),
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Lib(Error::NonConvergence { .. }) => 3,
        Failure::Lib(_) | Failure::Usage(_) => 2,
        Failure::Io(_) => 1,
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Usage(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().expect("thread pool set once");
    }
    match run(&cli) {
        Ok(v) => {
            print!("{}", render(&v, cli.json));
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(exit_code(&f))
        }
    }
}
