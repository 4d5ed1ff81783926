use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use brpart::dot::export_dot;
use brpart::harness::{equivalence_test, Agreement};
use brpart::json::{to_json_pretty, InstanceJson, WitnessJson};
use brpart::nae::{generate_random_instance, parse_instance, VarColoring};
use brpart::solver::{decide_partition, verify_witness, Budget, Decision, Verdict};
use brpart::witness::{
    build_witness_from_assignment, check_clause_gadget_properties, check_variable_monochrome,
    extract_assignment_from_witness, BuildError, ExtractError,
};
use brpart::{build_reduction, NaeInstance};

const EXIT_OK: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Spanning-tree partitions with prescribed out-degrees, and the NAE-3-SAT
/// reduction onto them. File arguments accept "-" for stdin/stdout.
#[derive(Parser)]
#[command(name = "brpart", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Stop after this many search nodes
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Stop after this many seconds
    #[arg(long)]
    budget_seconds: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget> {
        let max_time = match self.budget_seconds {
            Some(s) if !(s.is_finite() && s >= 0.0) => bail!("--budget-seconds must be a nonnegative number"),
            Some(s) => Some(Duration::from_secs_f64(s)),
            None => None,
        };
        Ok(Budget {
            max_nodes: self.budget_nodes,
            max_time,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compile an NAE-3-SAT file into a partition instance
    Reduce {
        nae: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the graph in DOT format
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Search for a (b,r)-partition of an instance
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Where to write the witness
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a witness against an instance
    Verify { instance: PathBuf, witness: PathBuf },
    /// Build a witness from a satisfying assignment
    Witness {
        nae: PathBuf,
        assignment: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Read the variable assignment off a witness of a reduction instance
    Extract { instance: PathBuf, witness: PathBuf },
    /// Print the gadget and variable structure reports for a witness
    Props { instance: PathBuf, witness: PathBuf },
    /// Decide an NAE file both directly and through the reduction
    Equiv {
        nae: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Generate a random NAE-3-SAT instance
    Gen {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        clauses: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a reduction instance, optionally with a witness, as DOT
    ExportDot {
        instance: PathBuf,
        witness: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn is_std(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn read_input(path: &Path) -> Result<String> {
    if is_std(path) {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) if !is_std(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        _ => {
            io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn load_nae(path: &Path) -> Result<NaeInstance> {
    let text = read_input(path)?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_instance_json(path: &Path) -> Result<InstanceJson> {
    let text = read_input(path)?;
    InstanceJson::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_witness_json(path: &Path) -> Result<WitnessJson> {
    let text = read_input(path)?;
    WitnessJson::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Reduce { nae, output, dot } => {
            let inst = load_nae(&nae)?;
            let art = build_reduction(&inst)?;
            write_output(output.as_deref(), &to_json_pretty(&InstanceJson::from_artifact(&art)))?;
            if let Some(dot) = dot {
                write_output(Some(&dot), &export_dot(&art, None)?)?;
            }
            Ok(EXIT_OK)
        }
        Command::Solve {
            instance,
            budget,
            output,
        } => {
            let inst = load_instance_json(&instance)?.to_instance()?;
            let started = Instant::now();
            let report = decide_partition(&inst.graph, &inst.b, &inst.r, budget.budget()?)?;
            eprintln!("time: {:.3}s", started.elapsed().as_secs_f64());
            let (line, code) = match &report.decision {
                Decision::Yes(w) => {
                    if let Some(out) = &output {
                        write_output(Some(out), &to_json_pretty(&WitnessJson::from_witness(w)))?;
                    }
                    (format!("yes ({} nodes)", report.nodes), EXIT_OK)
                }
                Decision::No => (format!("no ({} nodes)", report.nodes), EXIT_NO),
                Decision::BudgetExhausted => (format!("budget exhausted ({} nodes)", report.nodes), EXIT_BUDGET),
            };
            if output.as_deref().is_some_and(is_std) {
                eprintln!("{line}");
            } else {
                println!("{line}");
            }
            Ok(code)
        }
        Command::Verify { instance, witness } => {
            let inst = load_instance_json(&instance)?.to_instance()?;
            let w = load_witness_json(&witness)?.to_witness(&inst.graph)?;
            match verify_witness(&inst.graph, &inst.b, &inst.r, &w)? {
                Verdict::Accept => {
                    println!("accept");
                    Ok(EXIT_OK)
                }
                Verdict::Reject(reason) => {
                    println!("reject: {reason}");
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Witness {
            nae,
            assignment,
            output,
        } => {
            let inst = load_nae(&nae)?;
            let a = VarColoring::parse(&read_input(&assignment)?)
                .map_err(anyhow::Error::msg)
                .with_context(|| format!("parsing {}", assignment.display()))?;
            let art = build_reduction(&inst)?;
            match build_witness_from_assignment(&art, &a) {
                Ok(w) => {
                    write_output(output.as_deref(), &to_json_pretty(&WitnessJson::from_witness(&w)))?;
                    Ok(EXIT_OK)
                }
                Err(e @ BuildError::Unsatisfied(_)) => {
                    eprintln!("{e}");
                    Ok(EXIT_NO)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Extract { instance, witness } => {
            let art = load_instance_json(&instance)?.to_artifact()?;
            let w = load_witness_json(&witness)?.to_witness(art.graph())?;
            match extract_assignment_from_witness(&art, &w) {
                Ok(a) => {
                    print!("{}", a.to_text());
                    Ok(EXIT_OK)
                }
                Err(e @ ExtractError::Malformed(_)) => Err(e.into()),
                Err(e) => {
                    println!("{e}");
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Props { instance, witness } => {
            let art = load_instance_json(&instance)?.to_artifact()?;
            let w = load_witness_json(&witness)?.to_witness(art.graph())?;
            if let Verdict::Reject(reason) = verify_witness(art.graph(), art.b(), art.r(), &w)? {
                println!("reject: {reason}");
                return Ok(EXIT_NO);
            }
            let gadgets = check_clause_gadget_properties(&art, &w);
            let variables = check_variable_monochrome(&art, &w);
            print!("{gadgets}{variables}");
            Ok(if gadgets.all_true() && variables.all_true() {
                EXIT_OK
            } else {
                EXIT_NO
            })
        }
        Command::Equiv { nae, budget } => {
            let inst = load_nae(&nae)?;
            let started = Instant::now();
            let report = equivalence_test(&inst, budget.budget()?)?;
            eprintln!("time: {:.3}s", started.elapsed().as_secs_f64());
            print!("{report}");
            Ok(match report.agreement {
                Agreement::Disagree => EXIT_NO,
                _ if !report.consistent() => EXIT_NO,
                _ => EXIT_OK,
            })
        }
        Command::Gen {
            vars,
            clauses,
            seed,
            output,
        } => {
            let inst = generate_random_instance(vars, clauses, seed)?;
            write_output(output.as_deref(), &inst.to_text())?;
            Ok(EXIT_OK)
        }
        Command::ExportDot {
            instance,
            witness,
            output,
        } => {
            let art = load_instance_json(&instance)?.to_artifact()?;
            let w = witness
                .map(|p| load_witness_json(&p)?.to_witness(art.graph()).map_err(anyhow::Error::from))
                .transpose()?;
            match export_dot(&art, w.as_ref()) {
                Ok(dot) => {
                    write_output(output.as_deref(), &dot)?;
                    Ok(EXIT_OK)
                }
                Err(brpart::dot::DotError::Rejected(reason)) => {
                    eprintln!("reject: {reason}");
                    Ok(EXIT_NO)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
