use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use iord_cli::json::{instance_to_json, parse_instance, parse_rat_flag, rat_json};
use iord_cli::{format_rat, svg, verify, CliError};
use iord_core::exposed::{
    enumerate_alpha, enumerate_full, enumerate_interval_parts, enumerate_oracle,
    enumerate_pairwise, enumerate_sbound, enumerate_super_parts, ExposedPartSet,
};
use iord_core::generators::{
    gen_lemma14, gen_partition_reduction, gen_random, PartitionReductionParams, RandomFamily,
};
use iord_core::instance::{CostBackend, CostFunction, CostKind, Ordering};
use iord_core::solver::{brute_force, dp_solve, solve_auto, subset_dp, Solution};
use iord_core::{FunctionClass, Instance};

/// Exact solvers for ordering half-open intervals to minimize the summed
/// cost of their exposed parts.
#[derive(Parser)]
#[command(name = "iord", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and print an optimal ordering.
    Solve {
        file: String,
        /// auto | full | sub | super | pairwise | alpha:K | sbound |
        /// subset-dp | brute
        #[arg(long, default_value = "auto")]
        algorithm: String,
        /// Emit a machine-readable JSON report.
        #[arg(long)]
        json: bool,
    },
    /// List the exposed parts an enumerator produces.
    Enumerate {
        file: String,
        /// full | oracle | intervals | super | pairwise | alpha:K | sbound
        #[arg(long, default_value = "full")]
        mode: String,
    },
    /// Print structural facts about an instance.
    Classify {
        file: String,
        /// Also dump the covered-interval table in topological order.
        #[arg(long)]
        covered: bool,
    },
    /// Emit a generated instance as JSON on stdout.
    #[command(subcommand)]
    Generate(GenerateCmd),
    /// Cross-check the solvers against each other.
    Verify {
        /// Instance file to verify; omit to use --random.
        file: Option<String>,
        /// Number of intervals per random instance.
        #[arg(long)]
        random: Option<usize>,
        /// Number of random instances.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render an ordering of an instance as SVG.
    Plot {
        file: String,
        /// Comma-separated 1-based interval order, e.g. "2,1".
        #[arg(long, conflicts_with = "solve")]
        ordering: Option<String>,
        /// Use an optimal ordering from the auto solver.
        #[arg(long)]
        solve: bool,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<String>,
    },
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// The adversarial family: [2^i, 2^{i+1}) for i = 1..n-1 plus [0, 2^n).
    Lemma14 {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "pow2")]
        cost: String,
        /// arbitrary | sub | super
        #[arg(long, default_value = "super")]
        class: String,
    },
    /// The PARTITION reduction with its three-slope cost function and
    /// threshold W.
    Partition {
        /// The positive integers to split in half.
        #[arg(long, num_args = 1.., required = true)]
        items: Vec<u64>,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        x0: String,
        /// Three slopes c1 < c2 < c3.
        #[arg(long, num_args = 3, required = true)]
        slopes: Vec<String>,
    },
    /// Seeded random instances.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 16)]
        range: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// general | agreeable | laminar | pairwise
        #[arg(long, default_value = "general")]
        family: String,
        #[arg(long, default_value = "pow2")]
        cost: String,
        /// arbitrary | sub | super
        #[arg(long, default_value = "super")]
        class: String,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run() -> Result<ExitCode, CliError> {
    match Cli::parse().command {
        Command::Solve {
            file,
            algorithm,
            json,
        } => cmd_solve(&file, &algorithm, json),
        Command::Enumerate { file, mode } => cmd_enumerate(&file, &mode),
        Command::Classify { file, covered } => cmd_classify(&file, covered),
        Command::Generate(g) => cmd_generate(g),
        Command::Verify {
            file,
            random,
            count,
            seed,
        } => cmd_verify(file.as_deref(), random, count, seed),
        Command::Plot {
            file,
            ordering,
            solve,
            output,
        } => cmd_plot(&file, ordering.as_deref(), solve, output.as_deref()),
    }
}

fn load_instance(path: &str) -> Result<Instance, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
    parse_instance(&text)
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

fn enumerate_by_mode(inst: &Instance, mode: &str) -> Result<ExposedPartSet, CliError> {
    Ok(match mode {
        "full" => enumerate_full(inst),
        "oracle" => enumerate_oracle(inst)?,
        "intervals" | "sub" => enumerate_interval_parts(inst),
        "super" => enumerate_super_parts(inst),
        "pairwise" => enumerate_pairwise(inst)?,
        "sbound" => enumerate_sbound(inst),
        other => {
            if let Some(k) = other.strip_prefix("alpha:") {
                let alpha = u32::from_str(k)
                    .map_err(|_| CliError::Input(format!("invalid alpha in \"{other}\"")))?;
                enumerate_alpha(inst, alpha)?
            } else {
                return Err(CliError::Input(format!("unknown mode \"{other}\"")));
            }
        }
    })
}

fn cmd_solve(path: &str, algorithm: &str, json: bool) -> Result<ExitCode, CliError> {
    let inst = load_instance(path)?;
    let sol: Solution = match algorithm {
        "auto" => solve_auto(&inst)?,
        "subset-dp" => subset_dp(&inst)?,
        "brute" => brute_force(&inst)?,
        mode => dp_solve(&inst, &enumerate_by_mode(&inst, mode)?)?,
    };
    let decision = inst.threshold().map(|w| (w.clone(), sol.total.value() <= w));

    if json {
        println!("{}", solution_json(&inst, &sol));
    } else {
        println!("algorithm: {}", sol.algorithm);
        println!(
            "backend: {}",
            match inst.cost_backend() {
                CostBackend::Exact => "exact",
                CostBackend::Float => "float",
            }
        );
        println!("ordering: {}", sol.ordering);
        for (pos, &idx) in sol.ordering.as_slice().iter().enumerate() {
            let part = &sol.exposed[pos];
            let cost = inst
                .cost()
                .eval(&part.length())
                .map_err(|e| CliError::Input(e.to_string()))?;
            println!(
                "  {}. I{} = {}   exposed: {}   |E| = {}   cost: {}",
                pos + 1,
                idx + 1,
                inst.intervals()[idx],
                part,
                format_rat(&part.length()),
                cost
            );
        }
        println!("total: {}", sol.total);
        if let Some((w, yes)) = &decision {
            println!(
                "decision: {} <= {} -> {}",
                sol.total,
                format_rat(w),
                if *yes { "yes" } else { "no" }
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn solution_json(inst: &Instance, sol: &Solution) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"algorithm\": \"{}\",\n", sol.algorithm));
    out.push_str(&format!("  \"exact\": {},\n", sol.total.is_exact()));
    out.push_str(&format!("  \"total\": {},\n", rat_json(sol.total.value())));
    let positions: Vec<String> = sol
        .ordering
        .as_slice()
        .iter()
        .map(|i| (i + 1).to_string())
        .collect();
    out.push_str(&format!("  \"ordering\": [{}],\n", positions.join(", ")));
    out.push_str("  \"steps\": [\n");
    for (pos, &idx) in sol.ordering.as_slice().iter().enumerate() {
        let part = &sol.exposed[pos];
        let comps: Vec<String> = part
            .components()
            .iter()
            .map(|c| format!("[{}, {}]", rat_json(c.start()), rat_json(c.end())))
            .collect();
        let cost = inst
            .cost()
            .eval(&part.length())
            .expect("evaluated during solve");
        out.push_str(&format!(
            "    {{\"interval\": {}, \"exposed\": [{}], \"length\": {}, \"cost\": {}}}{}\n",
            idx + 1,
            comps.join(", "),
            rat_json(&part.length()),
            rat_json(cost.value()),
            if pos + 1 < sol.ordering.len() { "," } else { "" }
        ));
    }
    out.push_str("  ]");
    if let Some(w) = inst.threshold() {
        out.push_str(&format!(",\n  \"W\": {}", rat_json(w)));
        out.push_str(&format!(
            ",\n  \"decision\": {}",
            sol.total.value() <= w
        ));
    }
    out.push_str("\n}");
    out
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

fn cmd_enumerate(path: &str, mode: &str) -> Result<ExitCode, CliError> {
    let inst = load_instance(path)?;
    let parts = enumerate_by_mode(&inst, mode)?;
    for part in parts.iter() {
        println!("{}   length {}", part, format_rat(&part.length()));
    }
    println!("{} parts (mode {})", parts.len(), parts.mode());
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

fn cmd_classify(path: &str, covered: bool) -> Result<ExitCode, CliError> {
    let inst = load_instance(path)?;
    let stats = inst.classify();
    let yesno = |b: bool| if b { "yes" } else { "no" };
    println!("n: {}", inst.len());
    println!("agreeable: {}", yesno(stats.is_agreeable));
    println!("laminar: {}", yesno(stats.is_laminar));
    println!("pairwise-connected: {}", yesno(stats.is_pairwise_connected));
    println!("max proper subintervals (s): {}", stats.max_subintervals);
    println!("covered-area components: {}", stats.component_count);
    println!(
        "cost backend: {}",
        match inst.cost_backend() {
            CostBackend::Exact => "exact",
            CostBackend::Float => "float",
        }
    );
    if inst.cost().class() != FunctionClass::Arbitrary {
        let violations = inst
            .cost()
            .spot_check_class(200, 0)
            .map_err(|e| CliError::Input(e.to_string()))?;
        if violations.is_empty() {
            println!(
                "declared class: {} (spot check over 200 samples: no violations)",
                inst.cost().class()
            );
        } else {
            let (x, y) = &violations[0];
            println!(
                "declared class: {} (SUSPECT: {} violations in 200 samples, e.g. x={}, y={})",
                inst.cost().class(),
                violations.len(),
                format_rat(x),
                format_rat(y)
            );
        }
    }
    if covered {
        let table = iord_core::covered::build_covered_table(&inst);
        println!("covered intervals (topological order):");
        for (iv, contained) in table.iter() {
            println!("  {iv}   contains {contained}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

fn parse_class(s: &str) -> Result<FunctionClass, CliError> {
    match s {
        "arbitrary" => Ok(FunctionClass::Arbitrary),
        "sub" => Ok(FunctionClass::SubShifted),
        "super" => Ok(FunctionClass::SuperShifted),
        other => Err(CliError::Input(format!(
            "class must be arbitrary, sub or super, got \"{other}\""
        ))),
    }
}

/// Parses compact cost specs: `pow2`, `sqrt`, `linear:c,b`,
/// `poly:c0,c1,...`, `pw:f0:s1,s2,...:b1,...`, `table:x=y,...`.
fn parse_cost_spec(spec: &str, class: FunctionClass) -> Result<CostFunction, CliError> {
    let rats = |s: &str| -> Result<Vec<_>, CliError> {
        s.split(',').map(parse_rat_flag).collect()
    };
    let kind = match spec {
        "pow2" => CostKind::Pow2,
        "sqrt" => CostKind::Sqrt,
        _ => {
            if let Some(rest) = spec.strip_prefix("linear:") {
                let v = rats(rest)?;
                if v.len() != 2 {
                    return Err(CliError::Input("linear needs \"c,b\"".into()));
                }
                CostKind::Linear {
                    slope: v[0].clone(),
                    intercept: v[1].clone(),
                }
            } else if let Some(rest) = spec.strip_prefix("poly:") {
                CostKind::Polynomial { coeffs: rats(rest)? }
            } else if let Some(rest) = spec.strip_prefix("pw:") {
                let pieces: Vec<&str> = rest.split(':').collect();
                if pieces.len() != 3 {
                    return Err(CliError::Input(
                        "piecewise spec is \"pw:f0:slopes:breakpoints\"".into(),
                    ));
                }
                CostKind::PiecewiseLinear {
                    f0: parse_rat_flag(pieces[0])?,
                    slopes: rats(pieces[1])?,
                    breakpoints: if pieces[2].is_empty() {
                        vec![]
                    } else {
                        rats(pieces[2])?
                    },
                }
            } else if let Some(rest) = spec.strip_prefix("table:") {
                let mut entries = Vec::new();
                for item in rest.split(',') {
                    let (x, y) = item.split_once('=').ok_or_else(|| {
                        CliError::Input("table entries are \"length=value\"".into())
                    })?;
                    entries.push((parse_rat_flag(x)?, parse_rat_flag(y)?));
                }
                CostKind::Table { entries }
            } else {
                return Err(CliError::Input(format!("unknown cost spec \"{spec}\"")));
            }
        }
    };
    CostFunction::new(kind, class).map_err(|e| CliError::Input(e.to_string()))
}

fn cmd_generate(cmd: GenerateCmd) -> Result<ExitCode, CliError> {
    let inst = match cmd {
        GenerateCmd::Lemma14 { n, cost, class } => {
            let f = parse_cost_spec(&cost, parse_class(&class)?)?;
            gen_lemma14(n, f).map_err(|e| CliError::Input(e.to_string()))?
        }
        GenerateCmd::Partition {
            items,
            eps,
            x0,
            slopes,
        } => {
            let params = PartitionReductionParams {
                items,
                eps: parse_rat_flag(&eps)?,
                x0: parse_rat_flag(&x0)?,
                slopes: (
                    parse_rat_flag(&slopes[0])?,
                    parse_rat_flag(&slopes[1])?,
                    parse_rat_flag(&slopes[2])?,
                ),
            };
            gen_partition_reduction(&params).map_err(|e| CliError::Input(e.to_string()))?
        }
        GenerateCmd::Random {
            n,
            range,
            seed,
            family,
            cost,
            class,
        } => {
            let fam = match family.as_str() {
                "general" => RandomFamily::General,
                "agreeable" => RandomFamily::Agreeable,
                "laminar" => RandomFamily::Laminar,
                "pairwise" => RandomFamily::Pairwise,
                other => {
                    return Err(CliError::Input(format!(
                        "family must be general, agreeable, laminar or pairwise, got \"{other}\""
                    )))
                }
            };
            let f = parse_cost_spec(&cost, parse_class(&class)?)?;
            gen_random(n, range, seed, fam, f).map_err(|e| CliError::Input(e.to_string()))?
        }
    };
    print!("{}", instance_to_json(&inst));
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(
    file: Option<&str>,
    random: Option<usize>,
    count: usize,
    seed: u64,
) -> Result<ExitCode, CliError> {
    let failures = match (file, random) {
        (Some(path), _) => {
            let inst = load_instance(path)?;
            let f = verify::verify_instance(&inst)?;
            println!(
                "checked 1 instance: {}",
                if f.is_none() { "all solvers agree" } else { "DISAGREEMENT" }
            );
            f.into_iter().collect::<Vec<_>>()
        }
        (None, Some(n)) => {
            let (checked, failures) = verify::verify_random(n, count, seed)?;
            println!(
                "checked {checked} random instances (n = {n}, seed {seed}): {}",
                if failures.is_empty() {
                    "all solvers agree".to_string()
                } else {
                    format!("{} DISAGREEMENTS", failures.len())
                }
            );
            failures
        }
        (None, None) => {
            return Err(CliError::Input(
                "verify needs an instance file or --random N".into(),
            ))
        }
    };
    if failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for f in &failures {
            eprintln!("failure: {}", f.detail);
            eprintln!("instance:\n{}", f.instance_json);
        }
        Ok(ExitCode::from(1))
    }
}

// ---------------------------------------------------------------------------
// plot
// ---------------------------------------------------------------------------

fn cmd_plot(
    path: &str,
    ordering: Option<&str>,
    solve: bool,
    output: Option<&str>,
) -> Result<ExitCode, CliError> {
    let inst = load_instance(path)?;
    let ord = if solve {
        solve_auto(&inst)?.ordering
    } else if let Some(list) = ordering {
        let mut indices = Vec::new();
        for item in list.split(',').filter(|s| !s.trim().is_empty()) {
            let one_based: usize = item
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("invalid ordering entry \"{item}\"")))?;
            if one_based == 0 {
                return Err(CliError::Input("ordering positions are 1-based".into()));
            }
            indices.push(one_based - 1);
        }
        let ord = Ordering::new(indices);
        if !ord.is_valid_for(inst.len()) {
            return Err(CliError::Input(format!(
                "ordering must be a permutation of 1..{}",
                inst.len()
            )));
        }
        ord
    } else {
        return Err(CliError::Input(
            "plot needs --ordering or --solve".into(),
        ));
    };
    let rendered = svg::render_ordering(&inst, &ord);
    match output {
        Some(path) => fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(ExitCode::SUCCESS)
}
