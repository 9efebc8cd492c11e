use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use markov_core::cycles::{
    cycle_report, internal_structure, last_digit_frequency_with, palindromic_cycle,
    InternalStructure,
};
use markov_core::export::{
    brute_table, cycle_table, edge_table, farey_table, histogram_table, oscillation_table,
    pell_solutions_table, plot_table, square_lists_table, square_palindrome_table,
    square_series_table, tree_table, uniqueness_table, Cell, Format, Table,
};
use markov_core::farey::{farey_for_region, plot_points};
use markov_core::markov_tree::{enumerate, LazyMarkovList};
use markov_core::pell::{
    generate_solutions, solve_pell_brute_with, uniqueness_check_with, BoundPolicy,
};
use markov_core::squares::{
    edge_lists, k_sf, oscillation_ratio, q_decompose, region_sign, square_palindrome_check,
};
use markov_core::{Budget, EdgeSide, ExecMode, MarkovList, OrderedTriplet, RegionHead};
use num_bigint::BigInt;

#[derive(Parser)]
#[command(
    name = "markov",
    version,
    about = "Explore Markov triplets, their edges and digit cycles"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    /// Write to this file instead of stdout. Relative paths resolve against
    /// MARKOV_OUT_DIR when it is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Refuse to build integers with more decimal digits than this.
    #[arg(long, global = true, default_value_t = Budget::default().max_digits)]
    max_digits: u64,
    /// Refuse to visit more tree nodes than this.
    #[arg(long, global = true, default_value_t = Budget::default().max_nodes)]
    max_nodes: u64,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Breadth-first list of triplets through a depth.
    Tree {
        #[arg(long)]
        depth: usize,
    },
    /// Region numbers H(n) along the edges of a region.
    Edge {
        #[arg(long)]
        region: BigInt,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
        #[arg(long, default_value_t = -5, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        to: i64,
    },
    /// Solutions J of K² = (9R² - 4)J² - 4R².
    Pell {
        #[arg(long)]
        region: BigInt,
        /// Brute-force every J up to this bound.
        #[arg(long, conflicts_with_all = ["verify"])]
        brute_bound: Option<u64>,
        /// Check that the smallest solutions are the triplet's outer members.
        #[arg(long)]
        verify: bool,
        /// Number of solutions to generate by half-unit iteration.
        #[arg(long, default_value_t = 6)]
        count: usize,
    },
    /// Last-digit repeat cycles along the edges of a region.
    Cycles {
        #[arg(long)]
        region: BigInt,
        #[arg(long, default_value_t = 1)]
        digits: u32,
        /// Show both cycles together with the mirror check.
        #[arg(long, conflicts_with = "structure")]
        palindrome: bool,
        /// Break each cycle into its sublists.
        #[arg(long)]
        structure: bool,
    },
    /// Histogram of region numbers mod 10^d through a depth.
    Freq {
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        digits: u32,
    },
    /// Special sum-of-two-squares terms of a region and along its edges.
    Squares {
        #[arg(long)]
        region: BigInt,
        /// The four generating lists of each edge.
        #[arg(long, group = "mode")]
        lists: bool,
        /// Square terms for n in A..B (inclusive, n = 0 skipped).
        #[arg(long, group = "mode", value_name = "A..B", allow_hyphen_values = true)]
        ksf: Option<String>,
        /// Upper and lower accumulation estimates of Λ/σ up to n.
        #[arg(long, group = "mode", value_name = "N")]
        oscillation: Option<i64>,
        /// Mirror check of the square-term cycles mod 10^d.
        #[arg(long, group = "mode", value_name = "D")]
        palindrome_digits: Option<u32>,
    },
    /// Farey triplet of a region, or plot points through a depth.
    Farey {
        #[arg(long, group = "target", required_unless_present = "plot_depth")]
        region: Option<BigInt>,
        #[arg(long, group = "target")]
        plot_depth: Option<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    Domain(markov_core::Error),
    Usage(String),
    Io(io::Error),
}

impl From<markov_core::Error> for Failure {
    fn from(e: markov_core::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

struct Ctx {
    budget: Budget,
    mode: ExecMode,
}

impl Ctx {
    /// Head triplet of `r` and a list deep enough to hold its first two edge
    /// triplets.
    fn resolve(&self, r: &BigInt) -> Outcome<(RegionHead, MarkovList)> {
        let (t, depth) = match u8::try_from(r) {
            Ok(1) => (OrderedTriplet::from_u64(1, 1, 1)?, 0),
            Ok(2) => (OrderedTriplet::from_u64(1, 2, 1)?, 0),
            _ => {
                let lazy = LazyMarkovList::new(0, self.budget)?;
                let (t, pos) = lazy.triplet_by_region(r)?;
                let depth = lazy.snapshot().depth_at(pos).unwrap_or(0);
                (t, depth)
            }
        };
        let list = enumerate(depth + 2, &self.budget)?;
        Ok((RegionHead::new(t)?, list))
    }
}

fn sides(head: &RegionHead, arg: SideArg) -> Outcome<Vec<EdgeSide>> {
    let wanted = match arg {
        SideArg::Left => vec![EdgeSide::Left],
        SideArg::Right => vec![EdgeSide::Right],
        SideArg::Both => head.sides().to_vec(),
    };
    for &s in &wanted {
        head.check_side(s)?;
    }
    Ok(wanted)
}

fn small_region(r: &BigInt) -> Outcome<u64> {
    u64::try_from(r).map_err(|_| Failure::Usage(format!("region {r} does not fit in 64 bits")))
}

fn parse_range(s: &str) -> Outcome<(i64, i64)> {
    let bad = || Failure::Usage(format!("expected A..B, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn concat(tables: Vec<Table>) -> Table {
    let mut it = tables.into_iter();
    let mut first = it.next().expect("at least one table");
    for t in it {
        for row in t.rows {
            first.push(row);
        }
    }
    first
}

fn pell(
    ctx: &Ctx,
    region: &BigInt,
    brute_bound: Option<u64>,
    verify: bool,
    count: usize,
) -> Outcome<Table> {
    if let Some(bound) = brute_bound {
        let r = small_region(region)?;
        return Ok(brute_table(r, &solve_pell_brute_with(r, bound, ctx.mode)?));
    }
    let (head, list) = ctx.resolve(region)?;
    if verify {
        let report = uniqueness_check_with(region, &list, BoundPolicy::default(), ctx.mode)?;
        return Ok(uniqueness_table(&[report]));
    }
    // Each outer member starts its own class of solutions.
    let t = head.triplet();
    let swapped = OrderedTriplet::new(t.z().clone(), t.region().clone(), t.x().clone())?;
    let mut sols = generate_solutions(t, count, &ctx.budget)?;
    if !t.is_singular() {
        sols.extend(generate_solutions(&swapped, count, &ctx.budget)?);
    }
    sols.sort_by(|a, b| a.j.cmp(&b.j));
    sols.dedup_by(|a, b| a.j == b.j);
    sols.truncate(count);
    Ok(pell_solutions_table(&sols))
}

fn cycles(
    ctx: &Ctx,
    region: &BigInt,
    digits: u32,
    palindrome: bool,
    structure: bool,
) -> Outcome<Table> {
    let (head, _) = ctx.resolve(region)?;
    if palindrome {
        let (l, r) = palindromic_cycle(&head, digits)?;
        return Ok(cycle_table(&[l, r]));
    }
    if structure {
        let mut t = Table::new(&["head", "side", "part", "values"]);
        let list = |v: &[u64]| Cell::List(v.iter().map(|&x| BigInt::from(x)).collect());
        for &side in head.sides() {
            let mut row = |part: String, cell: Cell| {
                t.push(vec![
                    head.to_string().into(),
                    side.to_string().into(),
                    part.into(),
                    cell,
                ]);
            };
            match internal_structure(&head, side, digits)? {
                InternalStructure::OddFibonacci {
                    first,
                    first_matches,
                    second,
                    second_rotation,
                    ..
                } => {
                    row(
                        format!("first (odd Fibonacci: {first_matches})"),
                        list(&first),
                    );
                    let rot = second_rotation.map_or("none".to_string(), |r| r.to_string());
                    row(format!("second (rotation {rot})"), list(&second));
                }
                InternalStructure::CyclicLucas { copies, matched } => {
                    let how = matched.map_or("unmatched".to_string(), |(d, r)| {
                        format!("{d:?} rotation {r}")
                    });
                    for (i, c) in copies.iter().enumerate() {
                        row(format!("copy {} ({how})", i + 1), list(c));
                    }
                }
            }
        }
        return Ok(t);
    }
    let reports = head
        .sides()
        .iter()
        .map(|&s| cycle_report(&head, s, digits))
        .collect::<markov_core::Result<Vec<_>>>()?;
    Ok(cycle_table(&reports))
}

fn decomposition_table(t: &OrderedTriplet, list: &MarkovList) -> Outcome<Table> {
    let (reg, sib) = q_decompose(t, list)?;
    let mut out = Table::new(&[
        "triplet",
        "R",
        "sigma",
        "lambda",
        "sibling",
        "sibling_sigma",
        "sibling_lambda",
        "sign",
    ]);
    out.push(vec![
        t.to_string().into(),
        (&reg.target).into(),
        (&reg.sigma).into(),
        (&reg.lambda).into(),
        (&sib.target).into(),
        (&sib.sigma).into(),
        (&sib.lambda).into(),
        region_sign(t, list)?.into(),
    ]);
    Ok(out)
}

fn squares(ctx: &Ctx, cmd: &Command) -> Outcome<Table> {
    let Command::Squares {
        region,
        lists,
        ksf,
        oscillation,
        palindrome_digits,
    } = cmd
    else {
        unreachable!()
    };
    let (head, list) = ctx.resolve(region)?;
    let r = head.region();
    if let Some(d) = palindrome_digits {
        return Ok(square_palindrome_table(&square_palindrome_check(
            &head, &list, *d,
        )?));
    }
    let per_side = head
        .sides()
        .iter()
        .map(|&s| Ok((s, edge_lists(&head, s, &list)?)))
        .collect::<markov_core::Result<Vec<_>>>()?;
    if *lists {
        let rows: Vec<_> = per_side
            .into_iter()
            .map(|(s, l)| (head.to_string(), s, l))
            .collect();
        return Ok(square_lists_table(&rows));
    }
    if let Some(range) = ksf {
        let (a, b) = parse_range(range)?;
        let mut tables = Vec::new();
        for (s, l) in &per_side {
            let series = (a..=b)
                .filter(|&n| n != 0)
                .map(|n| k_sf(l, r, n).map(|(x, y)| (n, x, y)))
                .collect::<markov_core::Result<Vec<_>>>()?;
            tables.push(square_series_table(*s, &series));
        }
        return Ok(concat(tables));
    }
    if let Some(n) = oscillation {
        let tables = per_side
            .iter()
            .map(|(s, l)| Ok(oscillation_table(*s, &oscillation_ratio(l, r, *n)?)))
            .collect::<markov_core::Result<Vec<_>>>()?;
        return Ok(concat(tables));
    }
    if head.is_singular() {
        return Err(markov_core::Error::SingularTriplet(head.to_string()).into());
    }
    decomposition_table(head.triplet(), &list)
}

fn run(cli: &Cli) -> Outcome<Table> {
    let g = &cli.global;
    let ctx = Ctx {
        budget: Budget {
            max_digits: g.max_digits,
            max_nodes: g.max_nodes,
        },
        mode: if g.sequential {
            ExecMode::Sequential
        } else {
            ExecMode::Parallel
        },
    };
    match &cli.command {
        Command::Tree { depth } => Ok(tree_table(&enumerate(*depth, &ctx.budget)?)),
        Command::Edge {
            region,
            side,
            from,
            to,
        } => {
            if from > to {
                return Err(Failure::Usage(format!("--from {from} exceeds --to {to}")));
            }
            let (head, _) = ctx.resolve(region)?;
            let tables = sides(&head, *side)?
                .into_iter()
                .map(|s| edge_table(&head, s, *from, *to))
                .collect::<markov_core::Result<Vec<_>>>()?;
            Ok(concat(tables))
        }
        Command::Pell {
            region,
            brute_bound,
            verify,
            count,
        } => pell(&ctx, region, *brute_bound, *verify, *count),
        Command::Cycles {
            region,
            digits,
            palindrome,
            structure,
        } => cycles(&ctx, region, *digits, *palindrome, *structure),
        Command::Freq { depth, digits } => Ok(histogram_table(&last_digit_frequency_with(
            *depth,
            *digits,
            &ctx.budget,
            ctx.mode,
        )?)),
        cmd @ Command::Squares { .. } => squares(&ctx, cmd),
        Command::Farey { region, plot_depth } => {
            if let Some(depth) = plot_depth {
                let list = enumerate(*depth, &ctx.budget)?;
                return Ok(plot_table(&plot_points(*depth, &list)?));
            }
            let region = region
                .as_ref()
                .expect("clap requires --region or --plot-depth");
            let (head, list) = ctx.resolve(region)?;
            let f = farey_for_region(head.region(), &list)?;
            Ok(farey_table(&[(region.clone(), f)]))
        }
    }
}

fn out_path(p: &PathBuf) -> PathBuf {
    match std::env::var_os("MARKOV_OUT_DIR") {
        Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
        _ => p.clone(),
    }
}

fn emit(cli: &Cli, table: &Table) -> io::Result<()> {
    match &cli.global.out {
        Some(p) => {
            let mut w = BufWriter::new(File::create(out_path(p))?);
            table.write(cli.global.format, &mut w)?;
            w.flush()
        }
        None => table.write(cli.global.format, io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|t| emit(&cli, &t).map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
