#![allow(dead_code)]

use multicut_mimic::netgraph::{TerminalNetwork, VertexId};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn net(n: u32, edges: &[(u32, u32)], terminals: &[u32]) -> TerminalNetwork {
    let mut g = TerminalNetwork::with_vertices(n);
    for &(u, v) in edges {
        g.add_edge(VertexId(u), VertexId(v)).unwrap();
    }
    for &t in terminals {
        g.add_terminal(VertexId(t)).unwrap();
    }
    g
}

/// Random spanning tree on `1..=n` plus `extra` random non-loop edges, with
/// `t` distinct random terminals.
pub fn random_connected<R: Rng>(rng: &mut R, n: u32, extra: usize, t: usize) -> TerminalNetwork {
    let mut edges = Vec::new();
    for v in 2..=n {
        edges.push((rng.gen_range(1..v), v));
    }
    while edges.len() < (n as usize - 1) + extra {
        let (a, b) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        if a != b {
            edges.push((a, b));
        }
    }
    let mut vs: Vec<u32> = (1..=n).collect();
    vs.shuffle(rng);
    net(n, &edges, &vs[..t.min(n as usize)])
}

/// Small multigraphs, possibly disconnected, with loops dropped on insert.
pub fn small_graph(
    n: std::ops::RangeInclusive<u32>,
    m: std::ops::RangeInclusive<usize>,
    t: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = TerminalNetwork> {
    n.prop_flat_map(move |n| {
        let t = *t.start()..=(*t.end()).min(n as usize);
        (
            prop::collection::vec((1..=n, 1..=n), m.clone()),
            prop::collection::btree_set(1..=n, t),
        )
            .prop_map(move |(es, ts)| net(n, &es, &ts.into_iter().collect::<Vec<_>>()))
    })
}

pub const FIXTURES: [&str; 10] = [
    "path10", "ring12", "grid3x3", "k4", "parallel", "star", "random1", "random2", "random3", "random4",
];

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Runs the installed binary; returns exit code, stdout and stderr.
pub fn mcmimic(args: &[&str]) -> (i32, String, String) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_mcmimic"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Command lines exercised per fixture, with `{g}` for the graph, `{r}` for
/// the requests file and `{t}` for a trace path.
pub const COMMANDS: [&str; 12] = [
    "reduce {g} --trace {t}",
    "reduce {g} --c 2 --i0 2 --threshold 1 --graphic-rank 64 --trace {t}",
    "reduce {g} --c 2 --i0 2 --threshold 1 --graphic-rank 64 --tester heuristic",
    "mark {g} --c 3 --i0 2",
    "tester {g} --c 2",
    "oracle mwc {g}",
    "oracle cutcover {g}",
    "oracle mc {g} {r}",
    "oracle essential {g}",
    "verify {g} {g} --spot-checks 4",
    "kernelize mwc {g} --budget 3 --c 2 --i0 2 --threshold 1 --graphic-rank 64 --trace {t}",
    "kernelize multicut {g} {r} --budget 1 --c 2 --i0 2 --threshold 1 --graphic-rank 64",
];

/// Output of one command line on one fixture: exit code, stdout, trace file.
pub fn run_fixture_command(template: &str, name: &str, seed: u64, dir: &std::path::Path) -> (i32, String, String) {
    let g = fixture(&format!("{name}.txt"));
    let r = fixture("requests.txt");
    let t = dir.join(format!("{name}.trace"));
    let _ = std::fs::remove_file(&t);
    let line = template
        .replace("{g}", g.to_str().unwrap())
        .replace("{r}", r.to_str().unwrap())
        .replace("{t}", t.to_str().unwrap());
    let seed = seed.to_string();
    let mut args: Vec<&str> = line.split_whitespace().collect();
    args.extend(["--seed", &seed]);
    let (code, out, _) = mcmimic(&args);
    (code, out, std::fs::read_to_string(&t).unwrap_or_default())
}
