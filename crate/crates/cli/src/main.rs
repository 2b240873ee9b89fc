use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hultman::arrangement::{chamber_count, characteristic_polynomial, inversion_arrangement};
use hultman::diagram::DEFAULT_HULL_BUDGET;
use hultman::harness::{
    find_minimal_non_hultman, render_report, render_summary, render_witness_table, verify_equivalence, witness_table,
    Condition, Context, HullPlan,
};
use hultman::pattern::{bp_contains, condition5_patterns, PatternSpec};
use hultman::{Family, Group};

#[derive(Parser)]
#[command(name = "hultman", version, about = "Decide which elements of S_n and B_n are Hultman")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the five conditions on one element.
    Classify {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        rank: usize,
        /// One-line notation (digits, then a-z for 10..) or a comma list;
        /// type B also accepts a signed window such as -3,2,-1.
        #[arg(long)]
        element: String,
        /// Condition numbers, e.g. 1,2,5.
        #[arg(long, default_value = "1,2,3,4,5")]
        conditions: String,
        /// Print E(w), E'(w), witnesses, violated boxes and matched patterns.
        #[arg(long)]
        explain: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_HULL_BUDGET)]
        hull_budget: u64,
    },
    /// Check that the conditions agree on every element of a group.
    Verify {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value = "1,2,3,4,5")]
        conditions: String,
        /// Run the hull condition on this many random elements only.
        #[arg(long)]
        sample_hull: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_HULL_BUDGET)]
        hull_budget: u64,
        /// Write one JSON object per element to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Search for the BP-minimal elements not defined by (pseudo-)inclusions.
    MinimalPatterns {
        #[arg(long, default_value_t = 6)]
        max_a: usize,
        #[arg(long, default_value_t = 5)]
        max_b: usize,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the distance witnesses of the listed patterns and compare
    /// them with the published table.
    Witnesses {
        #[arg(long)]
        json: bool,
    },
    /// Inversion arrangement, characteristic polynomial and chamber count.
    Chambers {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        element: String,
    },
    /// BP containment of a pattern in a host element.
    Patterns {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
        /// Family of the pattern.
        #[arg(long)]
        family: Family,
        /// Family of the host.
        #[arg(long, default_value = "B")]
        host_family: Family,
    },
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn polynomial(coeffs: &[i64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| {
            let coeff = match (c, k) {
                (1, 1..) => String::new(),
                (-1, 1..) => "-".into(),
                _ => c.to_string(),
            };
            match k {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{k}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify { family, rank, element, conditions, explain, json, hull_budget } => {
            let group = Group::new(family, rank)?;
            let w = group.parse(&element)?;
            let conditions = Condition::parse_list(&conditions)?;
            let ctx = Context::new(&group)?.with_hull_budget(hull_budget);
            let mut report = ctx.classify(&w, &conditions)?;
            if explain {
                ctx.explain(&mut report)?;
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", render_report(&report, explain));
            }
            if !report.consistent() {
                return Err(Failure::Violation(format!("conditions disagree on {w}")));
            }
        }
        Command::Verify { family, rank, conditions, sample_hull, seed, hull_budget, json } => {
            let group = Group::new(family, rank)?;
            let conditions = Condition::parse_list(&conditions)?;
            let ctx = Context::new(&group)?.with_hull_budget(hull_budget);
            let plan = sample_hull.map_or(HullPlan::Exhaustive, |k| HullPlan::Sample(k, seed));
            let summary = verify_equivalence(&ctx, &conditions, plan)?;
            print!("{}", render_summary(&summary));
            if let Some(path) = json {
                let lines: Vec<String> = summary.reports.iter().map(serde_json::to_string).collect::<Result<_, _>>()?;
                fs::write(&path, lines.join("\n") + "\n")?;
            }
            if !summary.all_agree() {
                return Err(Failure::Violation(format!("{} disagreements", summary.disagreements.len())));
            }
        }
        Command::MinimalPatterns { max_a, max_b, json } => {
            let found = find_minimal_non_hultman(max_a, max_b)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&found)?);
            } else {
                for v in &found {
                    println!("{v}");
                }
            }
            let listed = condition5_patterns();
            let expected: Vec<&PatternSpec> = listed
                .iter()
                .filter(|v| match v.family {
                    Family::A => v.rank() <= max_a,
                    Family::B => v.rank() <= max_b,
                })
                .collect();
            let same = found.len() == expected.len() && expected.iter().all(|v| found.contains(v));
            if same {
                eprintln!("{} patterns, matching the listed ones in these ranks", found.len());
            } else {
                return Err(Failure::Violation("search result differs from the listed patterns".into()));
            }
        }
        Command::Witnesses { json } => {
            let table = witness_table(&condition5_patterns())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&table)?);
            } else {
                print!("{}", render_witness_table(&table));
            }
            let bad = table.mismatches().count() + table.patterns.iter().filter(|p| !p.confirmed_non_hultman()).count();
            if bad > 0 {
                return Err(Failure::Violation(format!("{bad} rows or patterns not reproduced")));
            }
        }
        Command::Chambers { family, rank, element } => {
            let group = Group::new(family, rank)?;
            let w = group.parse(&element)?;
            let planes = inversion_arrangement(&group, &w);
            println!("|Inv(w)| = {}", planes.len());
            for h in &planes {
                println!("  {h}");
            }
            println!("chi(t) = {}", polynomial(&characteristic_polynomial(&group, &w)));
            println!("c(w) = {}", chamber_count(&group, &w));
        }
        Command::Patterns { host, pattern, family, host_family } => {
            let w = host.parse()?;
            if host_family == Family::B {
                Group::new(Family::B, host_len(&w)?)?.check(&w)?;
            }
            let v = PatternSpec::new(pattern.parse()?, family)?;
            match bp_contains(&w, host_family, &v) {
                Some(m) => {
                    let note = if m.reversed { " (via w0 v w0)" } else { "" };
                    println!("{w} contains {v} at {:?}{note}", m.embedding.indices());
                }
                None => println!("{w} avoids {v}"),
            }
        }
    }
    Ok(())
}

fn host_len(w: &hultman::Perm) -> Result<usize, Failure> {
    if w.degree() % 2 == 1 {
        return Err(Failure::Usage(format!("{w} has odd degree and is not in any B_n")));
    }
    Ok(w.degree() / 2)
}
