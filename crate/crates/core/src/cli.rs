//! Command-line driver.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::ffield::PrimeField;
use crate::frontend::{
    kernelize_multicut, kernelize_multiway_cut, parse_requests, write_requests, MulticutInstance,
    MultiwayCutInstance, MwcOutcome, Settings,
};
use crate::marker::mark;
use crate::netgraph::{parse_graph, write_graph, EdgeSet, Partition, TerminalNetwork, VertexId};
use crate::oracles::{cut_covering_set, Oracle};
use crate::reducer::mimicking_network;
use crate::tester::{Tester, TesterVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mcmimic", version, about = "Multicut-mimicking networks and cut kernels")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Opts {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Prime modulus for the matroid representations.
    #[arg(long, global = true)]
    prime: Option<u64>,
    #[arg(long, global = true)]
    c: Option<u32>,
    #[arg(long, global = true)]
    i0: Option<u32>,
    /// Stop once the edge count is at most this.
    #[arg(long, global = true)]
    threshold: Option<usize>,
    /// Rank of the graphic layer used by the marker.
    #[arg(long, global = true)]
    graphic_rank: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = TesterKind::Exact)]
    tester: TesterKind,
    #[arg(long, global = true, default_value_t = crate::tester::DEFAULT_MAX_EXACT_N)]
    max_exact_n: usize,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Trace file for `reduce` and `kernelize`.
    #[arg(long, global = true)]
    trace: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TesterKind {
    Exact,
    Heuristic,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Reduce a terminal network to a multicut-mimicking network.
    Reduce { graph: PathBuf },
    /// List the edges marked on a network.
    Mark { graph: PathBuf },
    /// Run the expansion tester.
    Tester { graph: PathBuf },
    /// Compare the cut value tables of two networks, terminals matched by position.
    Verify {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = 16)]
        spot_checks: usize,
    },
    /// Exact solvers.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Kernelize a cut problem.
    #[command(subcommand)]
    Kernelize(KernelCmd),
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Minimum multiway cut for a partition (all singletons by default).
    Mwc {
        graph: PathBuf,
        /// Blocks as `1,2|3`.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Minimum multicut for a requests file.
    Mc { graph: PathBuf, requests: PathBuf },
    /// Essential edges for every partition.
    Essential { graph: PathBuf },
    /// Union of closest cuts over terminal bipartitions.
    Cutcover { graph: PathBuf },
}

#[derive(Subcommand, Debug)]
enum KernelCmd {
    /// Edge Multiway Cut with budget `k`.
    Mwc {
        graph: PathBuf,
        #[arg(long)]
        budget: usize,
    },
    /// Edge Multicut with budget `p`.
    Multicut {
        graph: PathBuf,
        requests: PathBuf,
        #[arg(long)]
        budget: usize,
        /// Where to write the renumbered requests; appended to the output when absent.
        #[arg(long)]
        requests_out: Option<PathBuf>,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Refused(_) | Error::SizeLimit(_) | Error::Degenerate(_) => EXIT_REFUSED,
            _ => EXIT_INPUT,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        msg: format!("{}: {e}", path.display()),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| io_failure(path, e))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn read_graph(path: &Path) -> Result<TerminalNetwork, Failure> {
    parse_graph(&read_text(path)?).map_err(|e| Failure {
        code: EXIT_INPUT,
        msg: format!("{}: {e}", path.display()),
    })
}

fn read_requests(path: &Path) -> Result<Vec<(VertexId, VertexId)>, Failure> {
    parse_requests(&read_text(path)?).map_err(|e| Failure {
        code: EXIT_INPUT,
        msg: format!("{}: {e}", path.display()),
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn ids_line<I: IntoIterator<Item = T>, T: std::fmt::Display>(xs: I) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    v.join(" ")
}

/// Requests in the vertex numbering used by [`write_graph`].
fn renumber(g: &TerminalNetwork, reqs: &[(VertexId, VertexId)]) -> Vec<(VertexId, VertexId)> {
    let ix = g.indexed();
    let at = |v: VertexId| VertexId(ix.index[&v] as u32 + 1);
    reqs.iter().map(|&(u, v)| (at(u), at(v))).collect()
}

struct Output {
    text: String,
    code: i32,
}

impl Opts {
    fn settings(&self) -> Result<Settings, Failure> {
        let field = match self.prime {
            Some(p) => PrimeField::new(p)?,
            None => PrimeField::default(),
        };
        Ok(Settings {
            c: self.c,
            i0: self.i0,
            threshold: self.threshold,
            tester: self.tester(),
            field,
            graphic_cap: self.graphic_rank,
        })
    }

    fn tester(&self) -> Tester {
        match self.tester {
            TesterKind::Exact => Tester::Exact { max_n: self.max_exact_n },
            TesterKind::Heuristic => Tester::Heuristic,
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let o = &cli.opts;
    let oracle = Oracle::default();
    let mut text = String::new();
    let mut code = EXIT_OK;
    match &cli.cmd {
        Cmd::Reduce { graph } => {
            let g = read_graph(graph)?;
            let params = o.settings()?.params_for(g.k())?;
            let r = mimicking_network(&g, &params, &mut o.rng())?;
            if !r.verified {
                text.push_str("c unverified\n");
            }
            text.push_str(&write_graph(&r.network));
            if let Some(path) = &o.trace {
                write_file(path, &r.trace.to_text())?;
            }
        }
        Cmd::Mark { graph } => {
            let g = read_graph(graph)?;
            let params = o.settings()?.params_for(g.k())?;
            let r = mark(&g, &params.mark, &mut o.rng())?;
            writeln!(
                text,
                "c marked {} of {} ranks {} dim {}",
                r.marked.len(),
                g.num_edges(),
                ids_line(&r.ranks).replace(' ', ","),
                r.tensor_dim
            )
            .unwrap();
            for e in &r.marked {
                writeln!(text, "{e}").unwrap();
            }
        }
        Cmd::Tester { graph } => {
            let g = read_graph(graph)?;
            let params = o.settings()?.params_for(g.k())?;
            match o.tester().run(&g, params.mark.c)? {
                TesterVerdict::Dense { verified: true } => text.push_str("dense verified\n"),
                TesterVerdict::Dense { verified: false } => text.push_str("dense unverified\n"),
                TesterVerdict::SparseSet(s) => {
                    writeln!(text, "sparse {} {}", s.cap(), ids_line(s.set())).unwrap();
                }
            }
        }
        Cmd::Verify { left, right, spot_checks } => {
            let (g, h) = (read_graph(left)?, read_graph(right)?);
            let report = oracle.verify_mimicking(&g, &h, *spot_checks, &mut o.rng())?;
            if report.equal {
                text.push_str("EQUAL\n");
            } else {
                code = EXIT_NO;
                if let Some(m) = report.first_failure {
                    writeln!(text, "DIFF {} {} {}", m.partition, m.left, m.right).unwrap();
                }
                if let Some((pairs, a, b)) = report.request_failure {
                    let ps = pairs.iter().map(|(u, v)| format!("{u}-{v}"));
                    writeln!(text, "DIFF requests {} {a} {b}", ids_line(ps)).unwrap();
                }
            }
        }
        Cmd::Oracle(which) => oracle_cmd(which, &oracle, &mut text)?,
        Cmd::Kernelize(KernelCmd::Mwc { graph, budget }) => {
            let g = read_graph(graph)?;
            let inst = MultiwayCutInstance { network: g, budget: *budget };
            match kernelize_multiway_cut(&inst, &o.settings()?, &mut o.rng())? {
                MwcOutcome::IsolatingCutTooLarge { terminal, value } => {
                    code = EXIT_NO;
                    writeln!(text, "NO isolating cut of terminal {terminal} has size {value}").unwrap();
                }
                MwcOutcome::CapacityTooLarge { cap } => {
                    code = EXIT_NO;
                    writeln!(text, "NO terminal capacity {cap} exceeds twice the budget").unwrap();
                }
                MwcOutcome::Kernel(k) => {
                    writeln!(text, "c budget {budget}").unwrap();
                    if !k.verified {
                        text.push_str("c unverified\n");
                    }
                    text.push_str(&write_graph(&k.instance.network));
                    if let Some(path) = &o.trace {
                        write_file(path, &k.trace.to_text())?;
                    }
                }
            }
        }
        Cmd::Kernelize(KernelCmd::Multicut { graph, requests, budget, requests_out }) => {
            let g = read_graph(graph)?;
            let inst = MulticutInstance::new(g, read_requests(requests)?, *budget)?;
            let k = kernelize_multicut(&inst, &o.settings()?, &mut o.rng())?;
            let net = &k.instance.network;
            writeln!(text, "c budget {budget} attachment capacity {}", k.gadget_cap).unwrap();
            if !k.verified {
                text.push_str("c unverified\n");
            }
            text.push_str(&write_graph(net));
            let reqs = write_requests(&renumber(net, &k.instance.requests));
            match requests_out {
                Some(path) => write_file(path, &reqs)?,
                None => text.push_str(&reqs),
            }
            if let Some(path) = &o.trace {
                write_file(path, &k.trace.to_text())?;
            }
        }
    }
    Ok(Output { text, code })
}

fn oracle_cmd(which: &OracleCmd, oracle: &Oracle, text: &mut String) -> Result<(), Failure> {
    let cut_lines = |text: &mut String, value: usize, x: &EdgeSet| {
        writeln!(text, "{value}").unwrap();
        writeln!(text, "{}", ids_line(x)).unwrap();
    };
    match which {
        OracleCmd::Mwc { graph, partition } => {
            let g = read_graph(graph)?;
            let p = match partition {
                Some(s) => Partition::parse(s, g.terminals())?,
                None => Partition::singletons(g.terminals()),
            };
            let (value, x) = oracle.min_multiway_cut(&g, &p)?;
            cut_lines(text, value, &x);
        }
        OracleCmd::Mc { graph, requests } => {
            let g = read_graph(graph)?;
            let inst = MulticutInstance::new(g, read_requests(requests)?, 0)?;
            let (g, r) = inst
                .request_network()?
                .ok_or_else(|| Failure::from(Error::Input("a request pairs a vertex with itself".into())))?;
            let (value, x) = oracle.min_multicut(&g, &r)?;
            cut_lines(text, value, &x);
        }
        OracleCmd::Essential { graph } => {
            let g = read_graph(graph)?;
            for (p, x) in oracle.essential_edges(&g)? {
                writeln!(text, "{p} {}", ids_line(&x)).unwrap();
            }
        }
        OracleCmd::Cutcover { graph } => {
            let g = read_graph(graph)?;
            writeln!(text, "{}", ids_line(&cut_covering_set(&g)?)).unwrap();
        }
    }
    Ok(())
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = execute(&cli).and_then(|out| {
        match &cli.opts.out {
            Some(path) => write_file(path, &out.text)?,
            None => stdout
                .write_all(out.text.as_bytes())
                .map_err(|e| io_failure(Path::new("<stdout>"), e))?,
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.msg);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("mcmimic").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn file(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }

    const PATH5: &str = "p tn 5 4 2\nt 1\nt 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n";

    #[test]
    fn reduce_and_verify() {
        let dir = tempfile::tempdir().unwrap();
        let g = file(&dir, "g.txt", PATH5);
        let trace = dir.path().join("t.txt");
        let (code, out, _) = call(&["reduce", &g, "--seed", "7", "--trace", trace.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out, "p tn 2 1 2\nt 1\nt 2\ne 1 2\n");
        assert!(std::fs::read_to_string(&trace).unwrap().ends_with("S threshold\n"));
        let h = file(&dir, "h.txt", &out);
        assert_eq!(call(&["verify", &g, &h]), (0, "EQUAL\n".into(), String::new()));
        let two = file(&dir, "two.txt", "p tn 2 2 2\nt 1\nt 2\ne 1 2\ne 1 2\n");
        let (code, out, _) = call(&["verify", &g, &two]);
        assert_eq!((code, out.as_str()), (1, "DIFF 1|5 1 2\n"));
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let bad = file(&dir, "bad.txt", "p tn 2 1 1\nt 1\ne 1 9\n");
        let (code, _, err) = call(&["reduce", &bad]);
        assert_eq!(code, 2);
        assert!(err.contains("line 3"), "{err}");
        assert_eq!(call(&["reduce", "/nonexistent/file"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        let star = (2..=22).map(|v| format!("e 1 {v}\n")).collect::<String>();
        let big = file(&dir, "big.txt", &format!("p tn 22 21 2\nt 2\nt 3\n{star}"));
        assert_eq!(call(&["tester", &big]).0, 3);
        let tri = file(&dir, "tri.txt", "p tn 3 3 3\nt 1\nt 2\nt 3\ne 1 2\ne 2 3\ne 1 3\n");
        let (code, out, _) = call(&["kernelize", "mwc", &tri, "--budget", "1"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("NO"));
        assert_eq!(call(&["kernelize", "mwc", &tri, "--budget", "2"]).0, 1);
        assert_eq!(call(&["kernelize", "mwc", &tri, "--budget", "3"]).0, 0);
    }

    #[test]
    fn oracle_commands() {
        let dir = tempfile::tempdir().unwrap();
        let g = file(&dir, "g.txt", "p tn 4 4 3\nt 1\nt 2\nt 3\ne 1 4\ne 2 4\ne 3 4\ne 1 2\n");
        assert!(call(&["oracle", "mwc", &g]).1.starts_with("3\n"));
        assert_eq!(call(&["oracle", "mwc", &g, "--partition", "1,2|3"]).1, "1\n3\n");
        let r = file(&dir, "r.txt", "r 1 3\n");
        assert_eq!(call(&["oracle", "mc", &g, &r]).1, "1\n3\n");
        assert_eq!(call(&["oracle", "cutcover", &g]).0, 0);
        let (code, out, _) = call(&["oracle", "essential", &g]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 5);
    }

    #[test]
    fn tester_and_mark_print() {
        let dir = tempfile::tempdir().unwrap();
        let es: String = (1..10).map(|i| format!("e {i} {}\n", i + 1)).collect();
        let g = file(&dir, "p.txt", &format!("p tn 10 9 2\nt 1\nt 10\n{es}"));
        assert_eq!(call(&["tester", &g, "--c", "2"]).1, "sparse 2 1 2 3 4 5\n");
        let (code, out, _) = call(&["mark", &g, "--c", "2", "--i0", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("c marked "));
    }

    #[test]
    fn multicut_kernel_output_parses() {
        let dir = tempfile::tempdir().unwrap();
        let g = file(&dir, "g.txt", "p tn 3 2 0\ne 1 2\ne 2 3\n");
        let r = file(&dir, "r.txt", "r 1 3\n");
        let ro = dir.path().join("ro.txt");
        let (code, out, _) = call(&[
            "kernelize", "multicut", &g, &r, "--budget", "1", "--requests-out", ro.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let h = parse_graph(&out).unwrap();
        let reqs = parse_requests(&std::fs::read_to_string(ro).unwrap()).unwrap();
        let inst = MulticutInstance::new(h, reqs, 1).unwrap();
        assert!(inst.solve(&Oracle::default()).unwrap());
    }
}
