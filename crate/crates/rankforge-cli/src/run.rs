use std::fmt;
use std::io::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde_json::json;

use rankforge::estimator::{self as est, AttackPlan, FieldOrder, LinearSolver, Variant};
use rankforge::ffield::rank_weight;
use rankforge::instances::{gen_minrank, gen_rd};
use rankforge::supportminors::{self as sm, Solver};
use rankforge::{maxminors, Error, ExtField, MinRankInstance, RdInstance};

use crate::format::{ext_from, minrank_fingerprint, rd_fingerprint, Instance, Solution};
use crate::{
    Cli, Command, EstimateArgs, EstimateTarget, ExperimentKind, GenKind, OutputFormat, Preset, SolveArgs, SolverArg,
};

pub const EXIT_OTHER: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_RANK_DEFICIENT: u8 = 4;
pub const EXIT_NOT_FOUND: u8 = 5;
pub const EXIT_UNVERIFIED: u8 = 6;
pub const EXIT_REFUSED: u8 = 7;

/// The plan exceeds the memory budget.
#[derive(Debug)]
struct Refused {
    plan: String,
    columns: u128,
    log2_cost: f64,
}

impl fmt::Display for Refused {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "refusing {} with {} monomials (estimated cost 2^{:.2}); raise --memory-mb to force",
            self.plan, self.columns, self.log2_cost
        )
    }
}

impl std::error::Error for Refused {}

/// A solution that failed its check.
#[derive(Debug)]
struct Invalid(&'static str);

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl std::error::Error for Invalid {}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Refused>().is_some() {
        return EXIT_REFUSED;
    }
    if e.downcast_ref::<Invalid>().is_some() {
        return EXIT_UNVERIFIED;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::Precondition(_) | Error::InvalidDimensions(_) | Error::NotSystematic) => EXIT_PRECONDITION,
        Some(Error::RankDeficient { .. }) => EXIT_RANK_DEFICIENT,
        Some(Error::NotFound | Error::NoSolution | Error::NoPivot | Error::RetriesExhausted) => EXIT_NOT_FOUND,
        Some(Error::VerificationFailed) => EXIT_UNVERIFIED,
        Some(Error::Infeasible { .. }) => EXIT_REFUSED,
        _ => EXIT_OTHER,
    }
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Gen { kind } => gen(cli, kind),
        Command::Solve(args) => solve(cli, args),
        Command::Estimate(args) => estimate(cli, args),
        Command::Experiment { name } => experiment(cli, name),
        Command::Verify { instance, solution } => verify(instance, solution),
    }
}

fn write_out(path: Option<&std::path::Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_instance(path: &std::path::Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Instance::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn gen(cli: &Cli, kind: &GenKind) -> Result<ExitCode> {
    let (inst, common) = match kind {
        GenKind::Rd { common, k } => {
            let c = common;
            (Instance::Rd(gen_rd(c.q, c.m as usize, c.n as usize, *k as usize, c.r as usize, cli.seed)?), c)
        }
        GenKind::Minrank { common, kk, unplanted } => {
            let c = common;
            let i = gen_minrank(c.q, c.m as usize, c.n as usize, *kk as usize, c.r as usize, !unplanted, cli.seed)?;
            (Instance::MinRank(i), c)
        }
    };
    if let Instance::Rd(i) = &inst {
        i.check_invariants()?;
    }
    write_out(common.out.as_deref(), &inst.to_json(common.with_plant)?)?;
    if let Some(fp) = inst.plant_fingerprint() {
        eprintln!("plant fingerprint: {fp}");
    }
    Ok(ExitCode::SUCCESS)
}

fn solver(s: SolverArg) -> Solver {
    match s {
        SolverArg::Dense => Solver::Dense,
        SolverArg::Wiedemann => Solver::Wiedemann,
        SolverArg::Auto => Solver::Auto,
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i + 1) as u128)
}

fn to_u128(v: &num_bigint::BigUint) -> u128 {
    u128::try_from(v).unwrap_or(u128::MAX)
}

/// Monomials of the linear system a plan builds.
fn plan_columns(plan: &AttackPlan, q: FieldOrder, m: usize, n: usize, k: usize, r: usize) -> u128 {
    match plan.variant {
        Variant::Overdetermined | Variant::Punctured => binom(n - plan.p, r),
        Variant::Hybrid => binom(n - plan.a, r),
        Variant::SmRdCombined => {
            est::combined_counts(q, m, n, k, r, plan.b, plan.a, plan.p).map_or(u128::MAX, |c| to_u128(&c.a))
        }
        Variant::SmMinRank => {
            let Some(q) = (match q {
                FieldOrder::Small(q) => Some(q),
                FieldOrder::Large => None,
            }) else {
                return u128::MAX;
            };
            to_u128(&sm::monomial_count(q, plan.n_prime, k, r, plan.b))
        }
        Variant::Combinatorial => 0,
    }
}

fn budget_columns(memory_mb: u64) -> u128 {
    // dense elimination keeps up to cols^2 entries of 4 bytes
    (((memory_mb as f64) * 1024.0 * 1024.0 / 4.0).sqrt()) as u128
}

fn describe(plan: &AttackPlan) -> String {
    format!("{} (a={}, p={}, b={}, n'={})", plan.variant.name(), plan.a, plan.p, plan.b, plan.n_prime)
}

fn manual_plan(variant: Variant, a: usize, p: usize, b: usize, n_prime: usize) -> AttackPlan {
    AttackPlan {
        variant,
        a,
        p,
        b,
        n_prime,
        omega: est::DEFAULT_OMEGA,
        solver: LinearSolver::Strassen,
        log2_cost: f64::NAN,
        formula: "manual",
    }
}

fn rd_plans(inst: &RdInstance, args: &SolveArgs) -> Result<Vec<AttackPlan>> {
    let (m, n, k, r) = (inst.m(), inst.n, inst.k, inst.r);
    let q = FieldOrder::Small(inst.q());
    let explicit = args.a.is_some() || args.p.is_some() || args.b.is_some() || args.n_prime.is_some();
    if explicit {
        let a = args.a.unwrap_or(0);
        let mut p = args.p.unwrap_or(0);
        if let Some(np) = args.n_prime {
            if np > n {
                return Err(Error::Precondition("n' exceeds n").into());
            }
            p = n - np;
        }
        let plan = if let Some(b) = args.b {
            if a > 0 {
                return Err(Error::Precondition("the combined attack runs with a = 0 only").into());
            }
            let mut pl = manual_plan(Variant::SmRdCombined, 0, p, b, n - p);
            if let Ok(c) = est::cost_rd_combined(q, m, n, k, r, b, 0, p, LinearSolver::Wiedemann, est::DEFAULT_OMEGA) {
                pl.log2_cost = c;
            }
            pl
        } else if a > 0 {
            if p > 0 {
                return Err(Error::Precondition("hybrid and puncturing are not combined").into());
            }
            let mut pl = manual_plan(Variant::Hybrid, a, 0, 0, n - a);
            pl.log2_cost = est::cost_hybrid(q, m, n, k, r, a, est::DEFAULT_OMEGA).unwrap_or(f64::NAN);
            pl
        } else {
            let v = if p == 0 { Variant::Overdetermined } else { Variant::Punctured };
            let mut pl = manual_plan(v, 0, p, 0, n - p);
            pl.log2_cost = est::cost_overdetermined(m, n, k, r, p, est::DEFAULT_OMEGA).unwrap_or(f64::NAN);
            pl
        };
        return Ok(vec![plan]);
    }
    let rep = est::optimize_rd(q, m, n, k, r, &est::RdSearch::default());
    // the solver guesses columns only in the MaxMinors hybrid
    let mut plans: Vec<AttackPlan> =
        rep.plans.into_iter().filter(|p| !(p.variant == Variant::SmRdCombined && p.a > 0)).collect();
    plans.sort_by(|x, y| {
        if x.better_than(y) {
            std::cmp::Ordering::Less
        } else if y.better_than(x) {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    if plans.is_empty() {
        return Err(Error::Precondition("no applicable plan for these parameters").into());
    }
    Ok(plans)
}

fn minrank_plans(inst: &MinRankInstance, args: &SolveArgs) -> Result<Vec<AttackPlan>> {
    let q = FieldOrder::Small(inst.field.q());
    let (m, n, kk, r) = (inst.m, inst.n, inst.k(), inst.r);
    if args.a.is_some() || args.p.is_some() {
        return Err(Error::Precondition("--a and --p apply to rank decoding only").into());
    }
    if args.b.is_some() || args.n_prime.is_some() {
        let np = args.n_prime.unwrap_or(n);
        let b = match args.b {
            Some(b) => b,
            None => est::minimal_sm_degree(q, m, np, kk, r)
                .ok_or(Error::Precondition("no degree linearizes on these columns"))?,
        };
        let mut pl = manual_plan(Variant::SmMinRank, 0, 0, b, np);
        pl.log2_cost = est::cost_sm(q, m, np, kk, r, b, LinearSolver::Wiedemann, est::DEFAULT_OMEGA).unwrap_or(f64::NAN);
        return Ok(vec![pl]);
    }
    let mut plans = est::optimize_minrank(q, m, n, kk, r).plans;
    plans.sort_by(|x, y| x.log2_cost.total_cmp(&y.log2_cost).then(x.n_prime.cmp(&y.n_prime)));
    if plans.is_empty() {
        return Err(Error::Precondition("no degree b < r + 2 linearizes this instance").into());
    }
    Ok(plans)
}

/// Plans within the budget, in order, or the refusal for the cheapest one.
fn affordable(plans: Vec<AttackPlan>, columns: impl Fn(&AttackPlan) -> u128, budget: u128) -> Result<Vec<(AttackPlan, u128)>> {
    let first = plans[0].clone();
    let ok: Vec<_> = plans.into_iter().map(|p| (columns(&p), p)).filter(|(c, _)| *c <= budget).map(|(c, p)| (p, c)).collect();
    if ok.is_empty() {
        return Err(Refused { plan: describe(&first), columns: columns(&first), log2_cost: first.log2_cost }.into());
    }
    Ok(ok)
}

/// Run the plans in order until one verifies. Failures of the attack
/// itself move on to the next plan; anything else stops.
fn first_success<T>(plans: Vec<(AttackPlan, u128)>, verbose: bool, mut run: impl FnMut(&AttackPlan) -> Result<T>) -> Result<(AttackPlan, u128, T)> {
    let mut last = None;
    for (plan, cols) in plans {
        if verbose {
            eprintln!("running {}", describe(&plan));
        }
        match run(&plan) {
            Ok(v) => return Ok((plan, cols, v)),
            Err(e) => {
                let code = exit_code(&e);
                if verbose {
                    eprintln!("{}: {e:#}", describe(&plan));
                }
                if ![EXIT_RANK_DEFICIENT, EXIT_NOT_FOUND, EXIT_REFUSED, EXIT_PRECONDITION].contains(&code) {
                    return Err(e);
                }
                last = Some(e);
            }
        }
    }
    Err(last.expect("at least one plan"))
}

fn solve(cli: &Cli, args: &SolveArgs) -> Result<ExitCode> {
    let inst = read_instance(&args.instance)?;
    let budget = budget_columns(args.memory_mb);
    let start = Instant::now();
    let (plan, columns, solution, fingerprint) = match &inst {
        Instance::Rd(i) => {
            let q = FieldOrder::Small(i.q());
            let (m, n, k, r) = (i.m(), i.n, i.k, i.r);
            let plans = affordable(rd_plans(i, args)?, |p| plan_columns(p, q, m, n, k, r), budget)?;
            let (plan, cols, e) = first_success(plans, cli.verbose, |plan| {
                let e = match plan.variant {
                    Variant::Overdetermined | Variant::Punctured => maxminors::solve_overdetermined(i, plan.p)?,
                    Variant::Hybrid => maxminors::solve_hybrid(i, plan.a)?,
                    Variant::SmRdCombined => sm::solve_rd_combined(i, plan.b, plan.n_prime, solver(args.solver))?,
                    _ => unreachable!("not a decoding plan"),
                };
                if !i.is_solution(&e) || rank_weight(&i.field, &e) > i.r {
                    return Err(Error::VerificationFailed.into());
                }
                Ok(e)
            })?;
            let fp = rd_fingerprint(&e);
            (plan, cols, Solution::rd(&e), fp)
        }
        Instance::MinRank(i) => {
            let q = FieldOrder::Small(i.field.q());
            let (m, kk, r) = (i.m, i.k(), i.r);
            let plans = affordable(minrank_plans(i, args)?, |p| plan_columns(p, q, m, p.n_prime, kk, r), budget)?;
            let (plan, cols, x) = first_success(plans, cli.verbose, |plan| {
                let x = sm::solve_minrank(i, plan.b, plan.n_prime, solver(args.solver), cli.seed)?;
                if !i.is_solution(&x) {
                    return Err(Error::VerificationFailed.into());
                }
                Ok(x)
            })?;
            let fp = minrank_fingerprint(&i.field, &x);
            (plan, cols, Solution::minrank(&x), fp)
        }
    };
    let secs = start.elapsed().as_secs_f64();
    if let Some(out) = &args.out {
        std::fs::write(out, serde_json::to_string_pretty(&solution)? + "\n")
            .with_context(|| format!("writing {}", out.display()))?;
    }
    let plan_matches = inst.plant_fingerprint().map(|p| p == fingerprint);
    match cli.format {
        OutputFormat::Json => {
            let v = json!({
                "format": crate::format::FORMAT,
                "plan": plan_json(&plan),
                "columns": columns.to_string(),
                "verified": true,
                "solution": solution,
                "fingerprint": fingerprint,
                "matches_plant": plan_matches,
                "seconds": secs,
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        _ => {
            println!("plan: {} with {} monomials, estimated 2^{:.2}", describe(&plan), columns, plan.log2_cost);
            match &solution {
                Solution::Rd { e, .. } => println!("e = {}", serde_json::to_string(e)?),
                Solution::MinRank { x, .. } => println!("x = {}", serde_json::to_string(x)?),
            }
            println!("status: verified");
            println!("fingerprint: {fingerprint}");
            if let Some(b) = plan_matches {
                println!("matches plant: {b}");
            }
            println!("time: {secs:.3} s");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(instance: &std::path::Path, solution: &std::path::Path) -> Result<ExitCode> {
    let inst = read_instance(instance)?;
    let text = std::fs::read_to_string(solution).with_context(|| format!("reading {}", solution.display()))?;
    let sol: Solution = serde_json::from_str(&text).context("parsing solution")?;
    match (&inst, sol) {
        (Instance::Rd(i), Solution::Rd { e, .. }) => {
            let field: &ExtField = &i.field;
            let e = ext_from(field, &e)?;
            if e.len() != i.n || !i.is_solution(&e) {
                return Err(Invalid("y - e is not in the code or e has the wrong rank weight").into());
            }
            println!("valid: rank weight {} <= {}", rank_weight(field, &e), i.r);
        }
        (Instance::MinRank(i), Solution::MinRank { x, .. }) => {
            if x.iter().any(|&v| v >= i.field.q()) || !i.is_solution(&x) {
                return Err(Invalid("the combination is zero or has rank above r").into());
            }
            println!("valid: rank {} <= {}", i.combination(&x).rank(), i.r);
        }
        _ => bail!("solution type does not match the instance"),
    }
    Ok(ExitCode::SUCCESS)
}

fn plan_json(p: &AttackPlan) -> serde_json::Value {
    json!({
        "variant": p.variant.name(),
        "a": p.a,
        "p": p.p,
        "b": p.b,
        "n_prime": p.n_prime,
        "solver": match p.solver { LinearSolver::Strassen => "dense", LinearSolver::Wiedemann => "wiedemann" },
        "log2_cost": if p.log2_cost.is_finite() { json!(p.log2_cost) } else { json!(null) },
        "formula": p.formula,
    })
}

fn estimate(cli: &Cli, args: &EstimateArgs) -> Result<ExitCode> {
    let omega = args.omega.unwrap_or(est::DEFAULT_OMEGA);
    let out = match (&args.preset, &args.target) {
        (Some(Preset::RolloRqc), _) => {
            let search = est::RdSearch { omega, ..Default::default() };
            let rows: Vec<_> = est::ROLLO_RQC
                .par_iter()
                .map(|p| (*p, est::optimize_rd(FieldOrder::Small(p.q), p.m, p.n, p.k, p.r, &search)))
                .collect();
            match cli.format {
                OutputFormat::Csv => est::render_rd_csv(&rows),
                OutputFormat::Text => est::render_rd_text(&rows),
                OutputFormat::Json => {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|(p, rep)| {
                            json!({"scheme": p.name, "q": p.q, "m": p.m, "n": p.n, "k": p.k, "r": p.r,
                                   "ratio": rep.ratio, "best": rep.best().map(plan_json),
                                   "plans": rep.plans.iter().map(plan_json).collect::<Vec<_>>()})
                        })
                        .collect();
                    serde_json::to_string_pretty(&json!({"format": 1, "rows": v}))? + "\n"
                }
            }
        }
        (Some(Preset::GemssRainbow), _) => {
            let rows: Vec<_> =
                est::GEMSS_RAINBOW.par_iter().map(|p| (*p, est::optimize_minrank(p.q, p.n, p.n, p.k, p.r))).collect();
            match cli.format {
                OutputFormat::Csv => est::render_minrank_csv(&rows),
                OutputFormat::Text => est::render_minrank_text(&rows),
                OutputFormat::Json => {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|(p, rep)| json!({"scheme": p.name, "n": p.n, "K": p.k, "r": p.r, "best": rep.best().map(plan_json)}))
                        .collect();
                    serde_json::to_string_pretty(&json!({"format": 1, "rows": v}))? + "\n"
                }
            }
        }
        (Some(Preset::NewParams), _) => {
            let rows: Vec<_> = est::NEW_PARAMS.par_iter().map(|bp| est::estimate_block(bp, omega)).collect();
            match cli.format {
                OutputFormat::Csv => est::render_block_csv(&rows),
                OutputFormat::Text => est::render_block_text(&rows),
                OutputFormat::Json => {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            json!({"scheme": r.params.name, "hybrid": r.hybrid.as_ref().map(plan_json),
                                   "under": r.under.as_ref().map(plan_json), "comb_log2": r.combinatorial})
                        })
                        .collect();
                    serde_json::to_string_pretty(&json!({"format": 1, "rows": v}))? + "\n"
                }
            }
        }
        (None, Some(EstimateTarget::Rd { q, m, n, k, r, omega: o })) => {
            let search = est::RdSearch { omega: o.unwrap_or(omega), ..Default::default() };
            let rep = est::optimize_rd(FieldOrder::Small(*q), *m, *n, *k, *r, &search);
            render_report(cli.format, &rep)?
        }
        (None, Some(EstimateTarget::Minrank { q, m, n, kk, r })) => {
            let fq = q.map_or(FieldOrder::Large, FieldOrder::Small);
            render_report(cli.format, &est::optimize_minrank(fq, *m, *n, *kk, *r))?
        }
        (None, Some(EstimateTarget::Sweep { q, r, ratio, n2k, from, to, plain, omega: o })) => {
            if !n2k {
                bail!("sweep needs --n2k (k = n/2 is the only supported family)");
            }
            if *ratio <= 0.0 || from > to {
                return Err(Error::InvalidDimensions("empty sweep range or nonpositive ratio").into());
            }
            let mode = if *plain { est::SweepMode::Overdetermined } else { est::SweepMode::Optimized };
            let omega = o.or(args.omega).unwrap_or(7f64.log2());
            est::render_sweep_csv(&est::sweep(*q, *r, *ratio, *from..=*to, mode, omega))
        }
        (None, None) => bail!("give --preset or one of rd, minrank, sweep"),
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn render_report(fmt: OutputFormat, rep: &est::ComplexityReport) -> Result<String> {
    let mut plans = rep.plans.clone();
    plans.sort_by(|x, y| x.log2_cost.total_cmp(&y.log2_cost));
    Ok(match fmt {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&json!({
                "format": 1,
                "ratio": rep.ratio,
                "best": rep.best().map(plan_json),
                "plans": plans.iter().map(plan_json).collect::<Vec<_>>(),
            }))? + "\n"
        }
        OutputFormat::Csv => {
            let mut s = String::from("variant,a,p,b,n_prime,solver,log2_cost,formula\n");
            for p in &plans {
                s += &format!(
                    "{},{},{},{},{},{:?},{:.2},{}\n",
                    p.variant.name(),
                    p.a,
                    p.p,
                    p.b,
                    p.n_prime,
                    p.solver,
                    p.log2_cost,
                    p.formula
                );
            }
            s
        }
        OutputFormat::Text => {
            let mut s = match rep.ratio {
                Some(x) => format!("ratio: {x:.2}\n"),
                None => String::new(),
            };
            s += &format!("{:<16} {:>3} {:>3} {:>2} {:>5} {:>10}\n", "variant", "a", "p", "b", "n'", "log2 cost");
            for p in &plans {
                let star = if p.solver == LinearSolver::Wiedemann { "*" } else { "" };
                s += &format!(
                    "{:<16} {:>3} {:>3} {:>2} {:>5} {:>9.2}{}\n",
                    p.variant.name(),
                    p.a,
                    p.p,
                    p.b,
                    p.n_prime,
                    p.log2_cost,
                    star
                );
            }
            if let Some(b) = rep.best() {
                s += &format!("best: {} at 2^{:.2}\n", describe(b), b.log2_cost);
            }
            s
        }
    })
}

fn experiment(cli: &Cli, name: &ExperimentKind) -> Result<ExitCode> {
    match name {
        ExperimentKind::RankHeuristic { q, m, n, k, r, trials } => {
            // one trial per task; trial t keeps seed + t as in the sequential run
            let ranks = (0..*trials)
                .into_par_iter()
                .map(|t| maxminors::verify_rank_heuristic(*q, *m, *n, *k, *r, 1, cli.seed.wrapping_add(t)))
                .collect::<rankforge::Result<Vec<_>>>()?;
            let columns = binom(*n, *r);
            let hits = ranks.iter().filter(|rep| rep.corank_one == 1).count();
            println!("q,m,n,k,r,columns,trials,corank_one,frequency");
            println!("{q},{m},{n},{k},{r},{columns},{trials},{hits},{:.4}", hits as f64 / *trials as f64);
        }
        ExperimentKind::Dexp { q, grid: _, trials, budget, unplanted } => {
            let cells = sm::dexp_grid(*q, !unplanted);
            let rows = cells
                .par_iter()
                .enumerate()
                .map(|(ci, c)| {
                    let s = cli.seed.wrapping_add(1000 * ci as u64);
                    sm::verify_dexp(&[*c], *trials as usize, s, *budget).map(|mut v| v.remove(0))
                })
                .collect::<rankforge::Result<Vec<_>>>()?;
            println!("q,m,n,K,r,b,planted,dexp,columns,expected,measured,match");
            let (mut measured, mut matched) = (0usize, 0usize);
            for row in &rows {
                let c = row.cell;
                let m = row.matches();
                measured += usize::from(m.is_some());
                matched += usize::from(m == Some(true));
                println!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    c.q,
                    c.m,
                    c.n,
                    c.k,
                    c.r,
                    c.b,
                    c.planted,
                    row.dexp,
                    row.columns,
                    row.expected,
                    row.measured.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";"),
                    match m {
                        Some(true) => "yes",
                        Some(false) => "no",
                        None => "-",
                    }
                );
            }
            let total = rows.len();
            eprintln!(
                "measured {measured} of {total} cells within {budget} monomials; {matched} match; grid match fraction {:.4}",
                matched as f64 / total as f64
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}
