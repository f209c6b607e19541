use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kronspan::exactlin::SparseMat;
use kronspan::hecke::theorem2a_check;
use kronspan::partalg::schur_weyl_check;
use kronspan::permcomb::{consecutive_cycles, grid, Permutation};
use kronspan::report::{
    describe_matrix, run_acceptance_suite, OutputFormat, Report,
};
use kronspan::stochastic::{
    enumerate_vertices, greedy_decompose, roberson_schmidt_matrix, DecomposeOutcome, SpanContext,
};
use kronspan::tensorrep::{
    kernel_dim, span_rank, span_rank_by_tableau_count, theorem1_basis, Direction,
};
use kronspan::{Budget, Error};

#[derive(Parser)]
#[command(
    name = "kronspan",
    version,
    about = "Exact verification of Kronecker-power spans, their bases, and their convex geometry"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format for the run report
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Write the report to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cost cap for span computations (weight n^(2r) * n!)
    #[arg(long, global = true)]
    budget_cells: Option<u128>,
    /// Seed for the randomized property suites
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirectionArg {
    Increasing,
    Decreasing,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Direction {
        match d {
            DirectionArg::Increasing => Direction::Increasing,
            DirectionArg::Decreasing => Direction::Decreasing,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// The subsequence-indexed basis of the span of Kronecker powers
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = DirectionArg::Increasing)]
        direction: DirectionArg,
    },
    /// Span rank and kernel dimension at (n, r)
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// The n x n grid of consecutive cycles
    Grid {
        #[arg(long)]
        n: usize,
    },
    /// Double-centralizer dimensions at (n, r)
    Schurweyl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Kazhdan-Lusztig and annihilator verifications
    HeckeVerify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Membership of a matrix file in the doubly stochastic slice of the span
    Omega {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// Greedy diagonal decomposition of a matrix file
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// Enumerate all vertices of the polytope
    Vertices {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// The 16 x 16 separating matrix and its certificates
    Counterexample,
    /// The full acceptance battery
    Suite,
}

fn load_matrix(path: &PathBuf) -> kronspan::Result<SparseMat> {
    let text = std::fs::read_to_string(path)?;
    SparseMat::from_text(&text)
}

fn run(cli: &Cli, budget: &Budget) -> kronspan::Result<Report> {
    let start = std::time::Instant::now();
    let mut rep = Report::new();
    match &cli.cmd {
        Cmd::Basis { n, r, direction } => {
            let basis = theorem1_basis(*n, *r, (*direction).into(), budget)?;
            for w in &basis {
                println!("{w}");
            }
            let expected = span_rank_by_tableau_count(*n, *r);
            rep.push(
                "basis",
                format!("n={n}, r={r}, direction={direction:?}"),
                format!("{expected} independent spanning Kronecker powers"),
                format!("{} (verified basis)", basis.len()),
                basis.len() == expected,
            );
        }
        Cmd::Rank { n, r } => {
            let rank = span_rank(*n, *r, budget)?;
            let kernel = kernel_dim(*n, *r, budget)?;
            let expected = span_rank_by_tableau_count(*n, *r);
            rep.push(
                "span-rank",
                format!("n={n}, r={r}"),
                format!("{expected} by the tableau-count identity"),
                format!("rank {rank}, kernel {kernel}"),
                rank == expected,
            );
        }
        Cmd::Grid { n } => {
            let g = grid(*n);
            for row in &g {
                let words: Vec<String> = row.iter().map(|w| w.to_string()).collect();
                println!("{}", words.join(" "));
            }
            let dedup: std::collections::BTreeSet<Permutation> =
                g.into_iter().flatten().collect();
            let cc = consecutive_cycles(*n);
            rep.push(
                "grid",
                format!("n={n}"),
                format!("{} consecutive cycles", n * n - 2 * n + 2),
                format!("{} distinct entries", dedup.len()),
                dedup == cc,
            );
        }
        Cmd::Schurweyl { n, r } => {
            let sw = schur_weyl_check(*n, *r, budget)?;
            rep.push(
                "schur-weyl",
                format!("n={n}, r={r}"),
                "commutant and bicommutant dimensions verified against each other",
                format!(
                    "commutant {}, bicommutant {}",
                    sw.dim_commutant, sw.dim_bicommutant
                ),
                true,
            );
        }
        Cmd::HeckeVerify { n, r } => {
            let ctx = kronspan::hecke::HeckeContext::new(*n);
            let mut ok = true;
            for w in Permutation::all(*n) {
                let cp = ctx.cprime(&w)?;
                if ctx.bar(&cp)? != cp {
                    ok = false;
                }
            }
            rep.push(
                "kl-bar-invariance",
                format!("n={n}"),
                "every C' bar-invariant",
                if ok { "all pass" } else { "failures" }.to_string(),
                ok,
            );
            if let Some(r) = r {
                let a = theorem2a_check(*n, *r, budget)?;
                let expected = kernel_dim(*n, *r, budget)?;
                rep.push(
                    "annihilator-basis",
                    format!("n={n}, r={r}"),
                    format!("{expected} specialized C-basis elements"),
                    a.size.to_string(),
                    a.size == expected,
                );
            }
        }
        Cmd::Omega { n, r, input } => {
            let m = load_matrix(input)?;
            rep = describe_matrix(&m, *n, *r, budget)?;
        }
        Cmd::Decompose { n, r, input } => {
            let m = load_matrix(input)?;
            let ctx = SpanContext::new(*n, *r, budget)?;
            match greedy_decompose(&m, &ctx)? {
                DecomposeOutcome::Weights(ws) => {
                    let txt: Vec<String> = ws
                        .iter()
                        .map(|(w, c)| format!("{w}: {}", kronspan::exactlin::rational::fmt_rat(c)))
                        .collect();
                    rep.push(
                        "decompose",
                        format!("n={n}, r={r}"),
                        "convex weights over Kronecker powers",
                        txt.join(", "),
                        true,
                    );
                }
                DecomposeOutcome::Stuck { step, .. } => {
                    rep.push(
                        "decompose",
                        format!("n={n}, r={r}"),
                        "convex weights over Kronecker powers",
                        format!("stuck at step {step}: no positive Kronecker diagonal"),
                        false,
                    );
                }
            }
        }
        Cmd::Vertices { n, r } => {
            let ctx = SpanContext::new(*n, *r, budget)?;
            let vertices = enumerate_vertices(&ctx)?;
            rep.push(
                "vertices",
                format!("n={n}, r={r}"),
                "all extreme points, canonicalized and deduplicated",
                format!("{} vertices", vertices.len()),
                true,
            );
        }
        Cmd::Counterexample => {
            let m = roberson_schmidt_matrix();
            print!("{}", m.to_text());
            rep = describe_matrix(&m, 4, 2, budget)?;
            let diag = kronspan::stochastic::positive_kron_diagonal(&m, 4, 2);
            rep.push(
                "no-positive-diagonal",
                "n=4, r=2",
                "none",
                match &diag {
                    None => "none".into(),
                    Some(w) => format!("found {w}"),
                },
                diag.is_none(),
            );
            let hull = kronspan::stochastic::conv_hull_membership(&m, 4, 2)?;
            let infeasible = matches!(hull, kronspan::stochastic::ConvexCertificate::Farkas(_));
            rep.push(
                "conv-hull",
                "n=4, r=2",
                "infeasible with exact certificate",
                if infeasible { "infeasible" } else { "feasible" }.to_string(),
                infeasible,
            );
        }
        Cmd::Suite => {
            rep = run_acceptance_suite(cli.seed, budget);
        }
    }
    rep.elapsed_ms = start.elapsed().as_millis();
    Ok(rep)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format: OutputFormat = match cli.format.parse() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let budget = match cli.budget_cells {
        Some(max_weight) => Budget { max_weight },
        None => Budget::default(),
    };
    match run(&cli, &budget) {
        Ok(rep) => {
            let rendered = rep.render(format);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{rendered}"),
            }
            if rep.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Error::BudgetExceeded(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
