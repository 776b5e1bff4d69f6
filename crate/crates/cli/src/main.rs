use std::fs;
use std::io::{self, Read as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gossip_core::io::{
    parse_bmat, parse_gjp_witness, parse_graph, parse_witness, write_bmat, write_gjp_witness,
    write_meta, write_witness, ReductionMeta,
};
use gossip_core::reduce::{reduce_ds_to_mgtp, reduce_gtp_to_gjp, reduce_mgtp_to_gmp};
use gossip_core::{
    enumerate_with, factor_conference, solve_dominating_set, solve_gjp, solve_gjp_certified,
    solve_gmp, solve_gtp, solve_mgtp, verify_gjp_witness, verify_gtp_witness, BoolMatrix, CallPair,
    CallSequence, ConferenceSet, EnumerationConfig, Execution, GeneratorMode, Graph,
    MalformedInstance, SearchOutcome, SolveError, Status, DEFAULT_BUDGET,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_MALFORMED: u8 = 64;
const EXIT_PARSE: u8 = 65;

/// Exact solvers and reductions for the gossip monoid.
#[derive(Parser)]
#[command(name = "gossip", version)]
struct Cli {
    /// Node-expansion budget for every search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply calls to the identity and print the knowledge matrix after each one.
    Simulate {
        #[arg(long)]
        n: usize,
        /// Witness file with one `i j` call per line; `-` or omitted reads stdin.
        file: Option<PathBuf>,
        /// Use this many random calls instead of reading a file.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Enumerate the monoid generated by all calls or by adjacent calls.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "all")]
        mode: GeneratorMode,
        /// Largest dimension allowed for this mode.
        #[arg(long)]
        cap: Option<usize>,
        /// Expand each layer on a single thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Is the matrix a member of the gossip monoid?
    Member {
        file: PathBuf,
        #[command(flatten)]
        out: WitnessOut,
    },
    /// Is there a monoid element G with X G = Y?
    Transform {
        x: PathBuf,
        y: PathBuf,
        /// Require X to satisfy the maximal column condition.
        #[arg(long)]
        mgtp: bool,
        #[command(flatten)]
        out: WitnessOut,
    },
    /// Is X <=_J Y, i.e. X = U Y V for monoid elements U, V?
    Jorder {
        x: PathBuf,
        y: PathBuf,
        /// Word multiplying to X, used instead of a membership search.
        #[arg(long, requires = "y_cert")]
        x_cert: Option<PathBuf>,
        /// Word multiplying to Y, used instead of a membership search.
        #[arg(long, requires = "x_cert")]
        y_cert: Option<PathBuf>,
        #[command(flatten)]
        out: WitnessOut,
    },
    /// Does the graph have a dominating set of size at most k?
    Domset {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Write a reduced instance into a directory.
    Reduce {
        #[command(subcommand)]
        which: Reduction,
    },
    /// Check a witness against an instance by multiplication.
    Verify {
        #[command(subcommand)]
        which: Verification,
    },
    /// Print a call word for the conference matrix C[S].
    FactorConference {
        #[arg(long)]
        n: usize,
        /// Comma-separated members of S, e.g. `1,2,3`.
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
    },
}

#[derive(Args)]
struct WitnessOut {
    /// Write the witness here instead of stdout.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Reduction {
    /// Dominating set to maximal transformation: writes A.bmat, B.bmat.
    DsMgtp {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Transformation to J-order: writes X.bmat, Y.bmat and their certificates.
    GtpGjp {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Maximal transformation to membership: writes C.bmat.
    MgtpGmp {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum Verification {
    Member {
        file: PathBuf,
        witness: PathBuf,
    },
    Transform {
        x: PathBuf,
        y: PathBuf,
        witness: PathBuf,
    },
    Jorder {
        x: PathBuf,
        y: PathBuf,
        witness: PathBuf,
    },
    /// The set file lists vertices separated by whitespace.
    Domset {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        set: PathBuf,
    },
}

enum Failure {
    Malformed(String),
    Parse(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Malformed(_) => EXIT_MALFORMED,
            Failure::Parse(_) => EXIT_PARSE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Malformed(m) | Failure::Parse(m) => m,
        }
    }
}

type Outcome = Result<u8, Failure>;

fn malformed(e: impl ToString) -> Failure {
    Failure::Malformed(e.to_string())
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn with_path<T, E: ToString>(path: &Path, r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Parse(format!("{}: {}", path.display(), e.to_string())))
}

fn read_matrix(path: &Path) -> Result<BoolMatrix, Failure> {
    with_path(path, parse_bmat(&read_text(path)?))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    with_path(path, parse_graph(&read_text(path)?))
}

fn read_word(path: &Path) -> Result<CallSequence, Failure> {
    with_path(path, parse_witness(&read_text(path)?))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn same_dim(a: &BoolMatrix, b: &BoolMatrix) -> Result<(), Failure> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(malformed(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )))
    }
}

fn report<W>(
    out: &SearchOutcome<W>,
    witness_out: &WitnessOut,
    render: impl Fn(&W) -> String,
) -> Outcome {
    let (line, code) = match out.status {
        Status::Found => ("yes", EXIT_YES),
        Status::ProvenAbsent => ("no", EXIT_NO),
        Status::Inconclusive => ("inconclusive", EXIT_INCONCLUSIVE),
    };
    println!("{line}");
    eprintln!("expanded {} of budget {}", out.nodes_expanded, out.budget);
    if let Some(w) = &out.witness {
        let text = render(w);
        match &witness_out.witness_out {
            Some(path) => write_file(path, &text)?,
            None => print!("{text}"),
        }
    }
    Ok(code)
}

fn verdict(ok: bool) -> Outcome {
    println!("{}", if ok { "valid" } else { "invalid" });
    Ok(if ok { EXIT_YES } else { EXIT_NO })
}

fn simulate(n: usize, file: Option<&Path>, random: Option<usize>, seed: u64) -> Outcome {
    if n == 0 {
        return Err(malformed("n must be at least 1"));
    }
    let word = match random {
        Some(count) => {
            if n < 2 && count > 0 {
                return Err(malformed("random calls need n >= 2"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let i = rng.random_range(1..=n);
                    let j = (i + rng.random_range(1..n) - 1) % n + 1;
                    CallPair::new(i, j).expect("distinct endpoints")
                })
                .collect()
        }
        None => read_word(file.unwrap_or(Path::new("-")))?,
    };
    word.check(n).map_err(malformed)?;
    let mut m = BoolMatrix::identity(n);
    print!("{}", write_bmat(&m));
    for p in word.iter() {
        let (i, j) = p.zero_based();
        m = m.merge_columns(i, j);
        println!("call {p}");
        print!("{}", write_bmat(&m));
    }
    Ok(EXIT_YES)
}

fn enumerate_cmd(n: usize, mode: GeneratorMode, cap: Option<usize>, sequential: bool) -> Outcome {
    let mut cfg = EnumerationConfig::default();
    if let Some(cap) = cap {
        cfg.cap_all_calls = cap;
        cfg.cap_adjacent_calls = cap;
    }
    if sequential {
        cfg.execution = Execution::Sequential;
    }
    let e = enumerate_with(n, mode, &cfg).map_err(malformed)?;
    println!("{}", e.summary());
    Ok(EXIT_YES)
}

fn jorder(
    x: &Path,
    y: &Path,
    certs: Option<(&Path, &Path)>,
    out: &WitnessOut,
    budget: u64,
) -> Outcome {
    let (xm, ym) = (read_matrix(x)?, read_matrix(y)?);
    same_dim(&xm, &ym)?;
    let result = match certs {
        Some((xc, yc)) => solve_gjp_certified(&xm, &ym, &read_word(xc)?, &read_word(yc)?, budget),
        None => solve_gjp(&xm, &ym, budget),
    };
    match result {
        Ok(o) => report(&o, out, write_gjp_witness),
        Err(SolveError::Malformed(MalformedInstance::MembershipUndecided { which })) => {
            println!("inconclusive");
            eprintln!("membership of {which} undecided within the budget");
            Ok(EXIT_INCONCLUSIVE)
        }
        Err(e) => Err(malformed(e)),
    }
}

fn domset(graph: &Path, k: usize) -> Outcome {
    let g = read_graph(graph)?;
    match solve_dominating_set(&g, k).map_err(malformed)? {
        Some(set) => {
            println!("yes");
            let line: Vec<String> = set.iter().map(usize::to_string).collect();
            println!("{}", line.join(" "));
            Ok(EXIT_YES)
        }
        None => {
            println!("no");
            Ok(EXIT_NO)
        }
    }
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Parse(format!("{}: {e}", dir.display())))
}

fn reduce(which: &Reduction) -> Outcome {
    let dir = match which {
        Reduction::DsMgtp { graph, k, out } => {
            let g = read_graph(graph)?;
            let inst = reduce_ds_to_mgtp(&g, *k).map_err(malformed)?;
            create_dir(out)?;
            write_file(&out.join("A.bmat"), &write_bmat(&inst.a))?;
            write_file(&out.join("B.bmat"), &write_bmat(&inst.b))?;
            let meta = ReductionMeta {
                name: "ds-mgtp".into(),
                source_n: g.vertex_count(),
                k: Some(*k),
            };
            write_file(&out.join("meta.txt"), &write_meta(&meta))?;
            out
        }
        Reduction::GtpGjp { a, b, out } => {
            let (am, bm) = (read_matrix(a)?, read_matrix(b)?);
            same_dim(&am, &bm)?;
            let inst = reduce_gtp_to_gjp(&am, &bm).map_err(malformed)?;
            create_dir(out)?;
            write_file(&out.join("X.bmat"), &write_bmat(&inst.x))?;
            write_file(&out.join("Y.bmat"), &write_bmat(&inst.y))?;
            write_file(&out.join("X.cert"), &write_witness(&inst.x_cert))?;
            write_file(&out.join("Y.cert"), &write_witness(&inst.y_cert))?;
            let meta = ReductionMeta {
                name: "gtp-gjp".into(),
                source_n: am.dim(),
                k: None,
            };
            write_file(&out.join("meta.txt"), &write_meta(&meta))?;
            out
        }
        Reduction::MgtpGmp { a, b, out } => {
            let (am, bm) = (read_matrix(a)?, read_matrix(b)?);
            same_dim(&am, &bm)?;
            let inst = reduce_mgtp_to_gmp(&am, &bm).map_err(malformed)?;
            create_dir(out)?;
            write_file(&out.join("C.bmat"), &write_bmat(&inst.c))?;
            let meta = ReductionMeta {
                name: "mgtp-gmp".into(),
                source_n: am.dim(),
                k: None,
            };
            write_file(&out.join("meta.txt"), &write_meta(&meta))?;
            out
        }
    };
    println!("wrote {}", dir.display());
    Ok(EXIT_YES)
}

fn verify(which: &Verification) -> Outcome {
    match which {
        Verification::Member { file, witness } => {
            let m = read_matrix(file)?;
            let w = read_word(witness)?;
            verdict(w.check(m.dim()).is_ok() && w.product(m.dim()).ok() == Some(m))
        }
        Verification::Transform { x, y, witness } => {
            let (xm, ym) = (read_matrix(x)?, read_matrix(y)?);
            same_dim(&xm, &ym)?;
            verdict(verify_gtp_witness(&xm, &ym, &read_word(witness)?))
        }
        Verification::Jorder { x, y, witness } => {
            let (xm, ym) = (read_matrix(x)?, read_matrix(y)?);
            same_dim(&xm, &ym)?;
            let w = with_path(witness, parse_gjp_witness(&read_text(witness)?))?;
            verdict(verify_gjp_witness(&xm, &ym, &w))
        }
        Verification::Domset { graph, k, set } => {
            let g = read_graph(graph)?;
            let text = read_text(set)?;
            let vertices: Vec<usize> = text
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| Failure::Parse(format!("{}: {e}", set.display())))?;
            if *k == 0 || *k > g.vertex_count() {
                return Err(malformed(format!(
                    "k = {k} must lie in 1..={}",
                    g.vertex_count()
                )));
            }
            let in_range = vertices
                .iter()
                .all(|&v| (1..=g.vertex_count()).contains(&v));
            let mut distinct = vertices.clone();
            distinct.sort_unstable();
            distinct.dedup();
            verdict(
                in_range
                    && distinct.len() == vertices.len()
                    && vertices.len() <= *k
                    && g.is_dominating(&vertices),
            )
        }
    }
}

fn factor(n: usize, set: &[usize]) -> Outcome {
    let s = ConferenceSet::new(set.iter().copied());
    let w = factor_conference(n, &s).map_err(malformed)?;
    print!("{}", write_witness(&w));
    Ok(EXIT_YES)
}

fn run(cli: Cli) -> Outcome {
    let budget = cli.budget;
    if budget == 0 {
        return Err(malformed("budget must be positive"));
    }
    match &cli.command {
        Command::Simulate { n, file, random } => simulate(*n, file.as_deref(), *random, cli.seed),
        Command::Enumerate {
            n,
            mode,
            cap,
            sequential,
        } => enumerate_cmd(*n, *mode, *cap, *sequential),
        Command::Member { file, out } => {
            let m = read_matrix(file)?;
            let o = solve_gmp(&m, budget).map_err(malformed)?;
            report(&o, out, write_witness)
        }
        Command::Transform { x, y, mgtp, out } => {
            let (xm, ym) = (read_matrix(x)?, read_matrix(y)?);
            same_dim(&xm, &ym)?;
            let o = if *mgtp {
                solve_mgtp(&xm, &ym, budget)
            } else {
                solve_gtp(&xm, &ym, budget)
            }
            .map_err(malformed)?;
            report(&o, out, write_witness)
        }
        Command::Jorder {
            x,
            y,
            x_cert,
            y_cert,
            out,
        } => {
            let certs = x_cert.as_deref().zip(y_cert.as_deref());
            jorder(x, y, certs, out, budget)
        }
        Command::Domset { graph, k } => domset(graph, *k),
        Command::Reduce { which } => reduce(which),
        Command::Verify { which } => verify(which),
        Command::FactorConference { n, set } => factor(*n, set),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_MALFORMED
            } else {
                EXIT_YES
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
