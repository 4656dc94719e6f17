//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::affine::{affine_of_matching, grassmann_necklace, matching_leq, uncross_covers};
use crate::combinat::{dual, enumerate_nc, format_subset, matching_of_partition, Matching, NCPartition};
use crate::electroid::{electroid, oh_electroid, partition_necklace_of, Electroid};
use crate::error::{Error, Result};
use crate::grassmann::perm_of_point;
use crate::io;
use crate::medial::{is_lensless, medial_dot, medial_graph, medial_pairing};
use crate::network::{nc_index, CactusNetwork};
use crate::rat::format_q;
use crate::realize::network_from_point;
use crate::temperley::{embed, temperley};
use crate::verify::{self, Config};

#[derive(Parser, Debug)]
#[command(name = "electroid-lab", version, about = "Grove measurements, electroids and the Temperley embedding")]
pub struct Cli {
    /// Output format; defaults to json, or text for `verify`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Emit Graphviz where the command has a graph to draw.
    #[arg(long, global = true)]
    pub dot: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Operations on a network file.
    #[command(subcommand)]
    Net(NetCmd),
    /// Non-crossing partitions.
    #[command(subcommand)]
    Nc(NcCmd),
    /// The uncrossing order on matchings.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Bounded affine permutations.
    #[command(subcommand)]
    Perm(PermCmd),
    /// Grassmann and partition necklaces.
    #[command(subcommand)]
    Necklace(NecklaceCmd),
    /// Electroids.
    #[command(subcommand)]
    Electroid(ElectroidCmd),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum NetCmd {
    /// Grove vector of a network.
    Groves { file: PathBuf },
    /// Response matrix of a network.
    Response { file: PathBuf },
    /// Medial pairing (or the medial graph with --dot).
    Medial { file: PathBuf },
    /// Plücker vector of the Temperley graph (or the graph with --dot).
    Embed { file: PathBuf },
    /// A network realizing a Plücker vector.
    Realize { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum NcCmd {
    /// All non-crossing partitions of [n]
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Dual partition on the tilde labels.
    Dual { partition: String },
    /// The non-crossing matching of a partition.
    Matching { partition: String },
}

#[derive(Args, Debug)]
pub struct MatchingArg {
    #[arg(long)]
    pub matching: String,
}

#[derive(Subcommand, Debug)]
pub enum PosetCmd {
    /// Matchings covered by `--matching`
    Covers(MatchingArg),
    /// Whether `--matching` lies below `--upper`.
    Leq {
        #[arg(long)]
        matching: String,
        #[arg(long)]
        upper: String,
    },
    /// Hasse diagram of all matchings of [2n].
    Hasse {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum PermCmd {
    /// Bounded affine permutation of a matching
    OfMatching(MatchingArg),
    /// Bounded affine permutation of the cell containing a Plücker vector.
    OfPoint { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum NecklaceCmd {
    /// Grassmann necklace of a matching
    OfMatching(MatchingArg),
    /// Partition necklace of a matching
    Partitions(MatchingArg),
}

#[derive(Subcommand, Debug)]
pub enum ElectroidCmd {
    /// Electroid of a matching, from its necklace
    OfMatching(MatchingArg),
    /// Electroid as an intersection of shifted dominance orders
    Oh(MatchingArg),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// One of the suite names, or `all`.
    pub suite: String,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 25)]
    pub trials: usize,
}

/// Result of running a command: text to emit and whether every check passed.
struct Outcome {
    body: String,
    passed: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, passed: true }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_network(path: &Path) -> Result<CactusNetwork> {
    io::network_from_json(&read(path)?)
}

fn list(items: Vec<String>, format: Format) -> String {
    match format {
        Format::Json => json!(items).to_string(),
        Format::Text => items.join("\n"),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let verify_cmd = matches!(cli.command, Command::Verify(_));
    let format = cli.format.unwrap_or(if verify_cmd { Format::Text } else { Format::Json });
    let text = format == Format::Text;
    let body = match &cli.command {
        Command::Net(cmd) => match cmd {
            NetCmd::Groves { file } => {
                let l = read_network(file)?.grove_vector();
                if text {
                    let idx = nc_index(l.n);
                    let rows: Vec<String> = idx
                        .list
                        .iter()
                        .zip(&l.coords)
                        .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                        .map(|(s, x)| format!("{s}\t{}", format_q(x)))
                        .collect();
                    rows.join("\n")
                } else {
                    io::grove_to_json(&l)
                }
            }
            NetCmd::Response { file } => {
                let net = read_network(file)?;
                let r = net.response_matrix();
                let rows: Vec<Vec<String>> =
                    (0..r.rows).map(|i| (0..r.cols).map(|j| format_q(&r[(i, j)])).collect()).collect();
                if text {
                    rows.iter().map(|row| row.join("\t")).collect::<Vec<_>>().join("\n")
                } else {
                    let classes: Vec<String> = net.shape.parts().iter().map(|p| format_subset(p)).collect();
                    json!({ "classes": classes, "matrix": rows }).to_string()
                }
            }
            NetCmd::Medial { file } => {
                let net = read_network(file)?;
                let g = medial_graph(&net);
                if cli.dot {
                    medial_dot(&g)
                } else {
                    let pairing = medial_pairing(&net);
                    let lensless = is_lensless(&g);
                    if text {
                        format!("{}\nclosed strands: {}\nlensless: {lensless}", pairing.tau, pairing.closed_strands)
                    } else {
                        json!({ "matching": pairing.tau.to_string(), "closed_strands": pairing.closed_strands, "lensless": lensless })
                            .to_string()
                    }
                }
            }
            NetCmd::Embed { file } => {
                let net = read_network(file)?;
                if cli.dot {
                    io::temperley_dot(&temperley(&net))
                } else {
                    let p = embed(&net.grove_vector());
                    if text {
                        let rows: Vec<String> = p
                            .subsets()
                            .iter()
                            .zip(&p.coords)
                            .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                            .map(|(s, x)| format!("{}\t{}", format_subset(s), format_q(x)))
                            .collect();
                        rows.join("\n")
                    } else {
                        io::plucker_to_json(&p)
                    }
                }
            }
            NetCmd::Realize { file } => {
                let p = io::plucker_from_json(&read(file)?)?;
                let net = network_from_point(&p)?;
                if cli.dot {
                    io::network_dot(&net)
                } else {
                    io::network_to_json(&net)
                }
            }
        },
        Command::Nc(cmd) => match cmd {
            NcCmd::Enumerate { n } => {
                if *n == 0 {
                    return Err(Error::InvalidArgument("n must be positive".into()));
                }
                list(enumerate_nc(*n)?.iter().map(|s| s.to_string()).collect(), format)
            }
            NcCmd::Dual { partition } => {
                let d = dual(&NCPartition::parse(partition)?);
                if text {
                    d.to_string()
                } else {
                    json!(d.to_string()).to_string()
                }
            }
            NcCmd::Matching { partition } => {
                let tau = matching_of_partition(&NCPartition::parse(partition)?);
                if text {
                    tau.to_string()
                } else {
                    json!(tau.to_string()).to_string()
                }
            }
        },
        Command::Poset(cmd) => match cmd {
            PosetCmd::Covers(m) => {
                let covers = uncross_covers(&Matching::parse(&m.matching)?);
                list(covers.iter().map(|c| c.to_string()).collect(), format)
            }
            PosetCmd::Leq { matching, upper } => {
                let leq = matching_leq(&Matching::parse(matching)?, &Matching::parse(upper)?)?;
                if text {
                    leq.to_string()
                } else {
                    json!(leq).to_string()
                }
            }
            PosetCmd::Hasse { n } => {
                if *n == 0 {
                    return Err(Error::InvalidArgument("n must be positive".into()));
                }
                io::hasse_dot(*n)
            }
        },
        Command::Perm(cmd) => match cmd {
            PermCmd::OfMatching(m) => {
                let (g, f) = affine_of_matching(&Matching::parse(&m.matching)?);
                if text {
                    format!("g = {g}\nf = {f}")
                } else {
                    json!({ "g": g.to_string(), "f": f.to_string() }).to_string()
                }
            }
            PermCmd::OfPoint { file } => {
                let f = perm_of_point(&io::plucker_from_json(&read(file)?)?)?;
                if text {
                    f.to_string()
                } else {
                    json!(f.to_string()).to_string()
                }
            }
        },
        Command::Necklace(cmd) => match cmd {
            NecklaceCmd::OfMatching(m) => {
                let (_, f) = affine_of_matching(&Matching::parse(&m.matching)?);
                let neck = grassmann_necklace(&f);
                list(neck.subsets.iter().map(|s| format_subset(s)).collect(), format)
            }
            NecklaceCmd::Partitions(m) => {
                let neck = partition_necklace_of(&Matching::parse(&m.matching)?);
                if text {
                    neck.entries.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("\n")
                } else {
                    io::necklace_to_json(&neck)
                }
            }
        },
        Command::Electroid(cmd) => {
            let (m, e) = match cmd {
                ElectroidCmd::OfMatching(m) => (m, electroid as fn(&Matching) -> Electroid),
                ElectroidCmd::Oh(m) => (m, oh_electroid as fn(&Matching) -> Electroid),
            };
            let e = e(&Matching::parse(&m.matching)?);
            if text {
                e.strings().join("\n")
            } else {
                io::electroid_to_json(&e)
            }
        }
        Command::Verify(args) => {
            let cfg = Config { n: args.n, seed: args.seed, trials: args.trials };
            let reports = verify::run(&args.suite, &cfg)?;
            let passed = reports.iter().all(|r| r.passed());
            let body = match format {
                Format::Text => reports.iter().map(|r| r.to_text()).collect::<String>().trim_end().to_string(),
                Format::Json => reports.iter().map(|r| r.to_json()).collect::<Vec<_>>().join("\n"),
            };
            return Ok(Outcome { body, passed });
        }
    };
    Ok(Outcome::ok(body))
}

/// Runs a parsed command. Exit status 0 on success, 1 when a verification check fails,
/// 2 on malformed input or any other error.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = match execute(cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let mut body = outcome.body;
    body.push('\n');
    let written = match &cli.output {
        Some(path) => fs::write(path, &body).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    if outcome.passed {
        0
    } else {
        1
    }
}

/// Parses `args` (program name first) and runs; clap usage errors exit with status 2.
pub fn main_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            code
        }
    }
}
