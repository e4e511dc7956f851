use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use contentmax_cli::decimal::decimal_approx;
use contentmax_cli::formats::{
    parse_graph, parse_matrix, parse_pattern_graph, parse_pattern_spec, pattern_from_graph,
    write_graph, write_matrix, PatternSpec,
};
use contentmax_cli::parallel::{max_ct_over_dags_parallel, thread_cap};
use contentmax_core::bounds::{
    balanced_exchange, bound_report, path_bound_int, path_bound_real, star_bound_int,
    star_supremum, star_value_at, BoundKind, BoundReport,
};
use contentmax_core::copies::{content_sum, enumerate_copies};
use contentmax_core::optimize::optimize;
use contentmax_core::search::{
    canonical_form, canonical_unit_cycle, canonical_unit_path, check_nilpotent_bound,
    classify_coverage_graphs, is_balanced_labeled_path, max_ct_over_digraphs,
    max_elementary_symmetric_tuples, max_product_composition,
};
use contentmax_core::{Label, LabeledDigraph, Pattern};

/// Exact extremal calculator for labeled digraphs: weighted copy counts,
/// label-merge optimization, closed-form bounds and brute-force checks.
#[derive(Parser)]
#[command(name = "contentmax", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count pattern copies in a graph and evaluate the content sum.
    Ct {
        /// Edge-list file describing the graph.
        #[arg(long)]
        graph: PathBuf,
        /// Pattern spec: path:K, star:A, equistar:A:L, or file:PATH.
        #[arg(long)]
        pattern: String,
    },
    /// Improve a graph by merging edge labels until every two edges share a copy.
    Optimize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: String,
        /// Print one line per merge step.
        #[arg(long)]
        trace: bool,
        /// Write the final graph to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a closed-form extremal value with its witness.
    Bound {
        #[arg(long)]
        kind: BoundKindArg,
        /// Total weight, a nonnegative rational (integer kinds need an integer).
        #[arg(long = "N", value_name = "RAT")]
        total: String,
        /// Path length, for the path kinds.
        #[arg(long = "k")]
        k: Option<u32>,
        /// Arm count, for the star kinds.
        #[arg(long = "a")]
        arms: Option<u32>,
        /// Finite evaluation point for star-real (t >= a).
        #[arg(long = "t")]
        t: Option<u64>,
        /// Emit a machine-readable key=value document instead.
        #[arg(long)]
        kv: bool,
    },
    /// Exhaustively maximize the content sum over weighted DAGs.
    Search {
        /// Total integer weight to distribute.
        #[arg(long)]
        edges: u64,
        #[arg(long)]
        pattern: String,
        /// Vertex budget; defaults to pattern vertices + 2.
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Write the full maximizer list to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite; exits nonzero on any failing case.
    Verify {
        #[arg(long)]
        suite: Suite,
        /// Seed for the randomized suites.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Trials per configuration in the matrix suite.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Largest total weight in the paths/stars suites.
        #[arg(long, default_value_t = 8)]
        max_n: u64,
        /// Largest path length in the paths suite.
        #[arg(long, default_value_t = 3)]
        max_k: u32,
        /// Largest arm count in the stars suite.
        #[arg(long, default_value_t = 3)]
        max_a: u32,
    },
    /// Exact matrix power with weight and nilpotency report.
    Matpow {
        /// Matrix file: dimension line, then the rows.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long = "k")]
        k: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BoundKindArg {
    PathInt,
    PathReal,
    StarInt,
    StarReal,
}

impl From<BoundKindArg> for BoundKind {
    fn from(k: BoundKindArg) -> BoundKind {
        match k {
            BoundKindArg::PathInt => BoundKind::PathInt,
            BoundKindArg::PathReal => BoundKind::PathReal,
            BoundKindArg::StarInt => BoundKind::StarInt,
            BoundKindArg::StarReal => BoundKind::StarReal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Paths,
    Stars,
    Matrix,
    Lemma,
}

fn main() -> ExitCode {
    // Behave like a normal Unix filter when stdout is closed early.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(true)`: success. `Ok(false)`: a verification assertion failed (exit
/// 1). `Err`: usage or parse problem (exit 2).
fn run(command: Command) -> Result<bool, String> {
    match command {
        Command::Ct { graph, pattern } => cmd_ct(&graph, &pattern),
        Command::Optimize {
            graph,
            pattern,
            trace,
            out,
        } => cmd_optimize(&graph, &pattern, trace, out.as_deref()),
        Command::Bound {
            kind,
            total,
            k,
            arms,
            t,
            kv,
        } => cmd_bound(kind, &total, k, arms, t, kv),
        Command::Search {
            edges,
            pattern,
            max_vertices,
            out,
        } => cmd_search(edges, &pattern, max_vertices, out.as_deref()),
        Command::Verify {
            suite,
            seed,
            trials,
            max_n,
            max_k,
            max_a,
        } => cmd_verify(suite, seed, trials, max_n, max_k, max_a),
        Command::Matpow { matrix, k } => cmd_matpow(&matrix, k),
    }
}

fn read_graph(path: &std::path::Path) -> Result<LabeledDigraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn resolve_pattern(spec: &str) -> Result<Pattern, String> {
    match parse_pattern_spec(spec)? {
        PatternSpec::Path(k) => Ok(Pattern::path(k)),
        PatternSpec::Star(a) => Ok(Pattern::star(a)),
        PatternSpec::Equistar(a, l) => Ok(Pattern::equistar(a, l)),
        PatternSpec::File(path) => {
            let text = fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
            let g = parse_pattern_graph(&text).map_err(|e| format!("{path}: {e}"))?;
            pattern_from_graph(&g).map_err(|e| format!("{path}: {e}"))
        }
    }
}

/// Exact value, with a clearly-approximate decimal alongside when it is not
/// an integer.
fn show(value: &Label) -> String {
    if value.is_integer() {
        value.to_string()
    } else {
        format!("{value} (~ {})", decimal_approx(value.ratio(), 20))
    }
}

fn pattern_line(p: &Pattern) -> String {
    format!(
        "{} ({} vertices, {} edges, automorphisms {})",
        p.descriptor(),
        p.vertex_count(),
        p.edge_count(),
        p.automorphism_count()
    )
}

fn cmd_ct(graph: &std::path::Path, pattern: &str) -> Result<bool, String> {
    let g = read_graph(graph)?;
    let p = resolve_pattern(pattern)?;
    let copies = enumerate_copies(&g, &p);
    let ct: Label = copies
        .iter()
        .map(|c| c.content(&g))
        .fold(Label::zero(), |acc, x| &acc + &x);
    println!(
        "graph: {} ({} vertices, {} edges)",
        graph.display(),
        g.vertex_count(),
        g.edge_count()
    );
    println!("pattern: {}", pattern_line(&p));
    println!("weight: {}", show(&g.weight()));
    println!("dag: {}", g.is_dag());
    println!("copies: {}", copies.len());
    println!("ct: {}", show(&ct));
    Ok(true)
}

fn cmd_optimize(
    graph: &std::path::Path,
    pattern: &str,
    trace: bool,
    out: Option<&std::path::Path>,
) -> Result<bool, String> {
    let g = read_graph(graph)?;
    let p = resolve_pattern(pattern)?;
    let before = content_sum(&g, &p);
    let outcome = optimize(&g, &p);
    let after = content_sum(&outcome.graph, &p);
    println!("pattern: {}", pattern_line(&p));
    println!("ct before: {}", show(&before));
    println!("ct after: {}", show(&after));
    println!("weight: {}", show(&outcome.graph.weight()));
    println!("steps: {}", outcome.trace.steps.len());
    println!("coverage: {}", outcome.coverage);
    if trace {
        let name = |v: usize| outcome.graph.vertex_name(v);
        for s in &outcome.trace.steps {
            println!(
                "merge {} {} ({}) -> {} {} | {} {} | {} -> {}",
                name(s.removed.0),
                name(s.removed.1),
                s.removed_label,
                name(s.survivor.0),
                name(s.survivor.1),
                s.survivor_sigma,
                s.removed_sigma,
                s.ct_before,
                s.ct_after
            );
        }
    }
    let text = write_graph(&outcome.graph);
    match out {
        Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => {
            println!("# final graph");
            print!("{text}");
        }
    }
    Ok(true)
}

fn cmd_bound(
    kind: BoundKindArg,
    total: &str,
    k: Option<u32>,
    arms: Option<u32>,
    t: Option<u64>,
    kv: bool,
) -> Result<bool, String> {
    let total: Label = total.parse().map_err(|e| format!("--N: {e}"))?;
    let kind: BoundKind = kind.into();
    let param = match kind {
        BoundKind::PathInt | BoundKind::PathReal => {
            if arms.is_some() {
                return Err("path kinds take --k, not --a".into());
            }
            k.ok_or("path kinds need --k")?
        }
        BoundKind::StarInt | BoundKind::StarReal => {
            if k.is_some() {
                return Err("star kinds take --a, not --k".into());
            }
            arms.ok_or("star kinds need --a")?
        }
    };
    if t.is_some() && kind != BoundKind::StarReal {
        return Err("--t only applies to star-real".into());
    }
    let report = bound_report(kind, &total, param, t).map_err(|e| format!("{e}"))?;
    if kv {
        print_bound_kv(&report);
    } else {
        print_bound(&report);
    }
    check_bound_witness(&report)
}

fn bound_param_name(kind: BoundKind) -> &'static str {
    match kind {
        BoundKind::PathInt | BoundKind::PathReal => "k",
        BoundKind::StarInt | BoundKind::StarReal => "a",
    }
}

fn print_bound(r: &BoundReport) {
    println!("kind: {}", r.kind.name());
    println!("N: {}", show(&r.total));
    println!("{}: {}", bound_param_name(r.kind), r.param);
    if r.kind == BoundKind::StarReal {
        println!("supremum: {}", show(&r.value));
    } else {
        println!("value: {}", show(&r.value));
    }
    if let Some(tuple) = &r.tuple {
        let parts: Vec<String> = tuple.iter().map(u64::to_string).collect();
        println!("tuple: {}", parts.join(" "));
    }
    println!("attained: {}", if r.attained { "yes" } else { "no" });
    if let Some(t) = r.t {
        println!("t: {t}");
    }
    if let Some(v) = &r.finite_value {
        println!("value at t: {}", show(v));
    }
    println!("witness: {}", r.witness_note);
    if let Some(w) = &r.witness {
        println!("witness graph:");
        print!("{}", write_graph(w));
    }
}

fn print_bound_kv(r: &BoundReport) {
    println!("kind={}", r.kind.name());
    println!("N={}", r.total);
    println!("{}={}", bound_param_name(r.kind), r.param);
    println!("value={}", r.value);
    if let Some(tuple) = &r.tuple {
        let parts: Vec<String> = tuple.iter().map(u64::to_string).collect();
        println!("tuple={}", parts.join(","));
    }
    println!("attained={}", r.attained);
    if let Some(t) = r.t {
        println!("t={t}");
    }
    if let Some(v) = &r.finite_value {
        println!("value_at_t={v}");
    }
}

/// Re-evaluates the witness through the copy machinery; a mismatch would
/// mean the closed form and the enumeration disagree.
fn check_bound_witness(r: &BoundReport) -> Result<bool, String> {
    let witness = match &r.witness {
        Some(w) => w,
        None => return Ok(true),
    };
    let pattern = match r.kind {
        BoundKind::PathInt | BoundKind::PathReal => Pattern::path(r.param),
        BoundKind::StarInt | BoundKind::StarReal => Pattern::star(r.param),
    };
    let expected = r.finite_value.as_ref().unwrap_or(&r.value);
    let got = content_sum(witness, &pattern);
    if &got == expected {
        println!("witness check: ok (ct = {got})");
        Ok(true)
    } else {
        println!("witness check: FAIL (ct = {got}, expected {expected})");
        Ok(false)
    }
}

fn cmd_search(
    total: u64,
    pattern: &str,
    max_vertices: Option<usize>,
    out: Option<&std::path::Path>,
) -> Result<bool, String> {
    if total == 0 {
        return Err("--edges must be positive".into());
    }
    let p = resolve_pattern(pattern)?;
    let vertices = max_vertices.unwrap_or(p.vertex_count() + 2);
    if vertices < p.vertex_count() {
        return Err(format!(
            "--max-vertices {vertices} is smaller than the pattern's {} vertices",
            p.vertex_count()
        ));
    }
    let threads = thread_cap()?;
    let r = max_ct_over_dags_parallel(total, &p, vertices, threads);
    println!("pattern: {}", pattern_line(&p));
    println!("weight: {}", r.total);
    println!("vertices: {}", r.vertices);
    println!("space: {} ({} graphs)", r.space, r.space_size);
    println!("best: {}", show(&r.best_value));
    println!("attaining graphs: {}", r.argmax_total);
    println!("coverage-satisfying maximizers: {}", r.maximizers.len());
    for (i, m) in r.maximizers.iter().take(10).enumerate() {
        println!("maximizer {}:", i + 1);
        print!("{}", write_graph(m));
    }
    if r.maximizers.len() > 10 && out.is_none() {
        println!(
            "... ({} total; use --out for the full list)",
            r.maximizers.len()
        );
    }
    if let Some(path) = out {
        let mut text = String::new();
        for (i, m) in r.maximizers.iter().enumerate() {
            text.push_str(&format!("# maximizer {}\n", i + 1));
            text.push_str(&write_graph(m));
            text.push('\n');
        }
        fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(true)
}

fn cmd_matpow(matrix: &std::path::Path, k: u32) -> Result<bool, String> {
    if k == 0 {
        return Err("--k must be at least 1".into());
    }
    let text = fs::read_to_string(matrix).map_err(|e| format!("{}: {e}", matrix.display()))?;
    let m = parse_matrix(&text).map_err(|e| format!("{}: {e}", matrix.display()))?;
    let powered = m.pow(k);
    let weight = m.weight();
    let powered_weight = powered.weight();
    println!("A^{k}:");
    print!("{}", write_matrix(&powered));
    println!("|A|: {}", show(&weight));
    println!("|A^{k}|: {}", show(&powered_weight));
    let nilpotent = m.is_nilpotent();
    println!("nilpotent: {nilpotent}");
    if !nilpotent {
        println!("bound comparison skipped (matrix is not nilpotent)");
        return Ok(true);
    }
    let bound = path_bound_real(&weight, k);
    println!("bound (|A|/{k})^{k}: {}", show(&bound));
    let holds = powered_weight <= bound;
    println!("|A^{k}| <= bound: {holds}");
    Ok(holds)
}

struct CaseLog {
    passed: u64,
    failed: u64,
}

impl CaseLog {
    fn new() -> Self {
        CaseLog {
            passed: 0,
            failed: 0,
        }
    }

    fn case(&mut self, ok: bool, line: String) {
        if ok {
            self.passed += 1;
            println!("ok {line}");
        } else {
            self.failed += 1;
            println!("FAIL {line}");
        }
    }

    fn finish(self, suite: &str) -> bool {
        println!(
            "suite {suite}: {}/{} cases passed",
            self.passed,
            self.passed + self.failed
        );
        self.failed == 0
    }
}

fn cmd_verify(
    suite: Suite,
    seed: u64,
    trials: u64,
    max_n: u64,
    max_k: u32,
    max_a: u32,
) -> Result<bool, String> {
    let threads = thread_cap()?;
    let ok = match suite {
        Suite::Paths => verify_paths(max_n, max_k, threads),
        Suite::Stars => verify_stars(max_n, max_a),
        Suite::Matrix => verify_matrix(trials, seed),
        Suite::Lemma => verify_lemma(),
    };
    Ok(ok)
}

/// Oracle search equals the integer closed form, maximizers have the
/// predicted shape, and the composition oracle agrees, with the balanced
/// exchange reaching an argmax.
fn verify_paths(max_n: u64, max_k: u32, threads: usize) -> bool {
    let mut log = CaseLog::new();
    for k in 1..=max_k {
        let pattern = Pattern::path(k);
        for n in 1..=max_n {
            let r = max_ct_over_dags_parallel(n, &pattern, k as usize + 2, threads);
            let (closed, tuple) = path_bound_int(n, k);
            let mut ok = r.best_value == closed;
            ok &= r
                .maximizers
                .iter()
                .all(|m| is_balanced_labeled_path(m, k) && m.weight() == Label::from_int(n));
            if n >= k as u64 {
                let witness = LabeledDigraph::from_numbered_edges(
                    k as usize + 1,
                    tuple
                        .iter()
                        .enumerate()
                        .map(|(i, &x)| (i, i + 1, Label::from_int(x))),
                );
                ok &= r.maximizers.contains(&canonical_form(&witness));
            } else {
                ok &= r.maximizers.is_empty();
            }
            log.case(
                ok,
                format!(
                    "oracle N={n} k={k} best={} closed={closed} maximizers={} space={}",
                    r.best_value,
                    r.maximizers.len(),
                    r.space_size
                ),
            );
        }
    }
    for k in 1..=5u32 {
        for n in 1..=12u64 {
            let (value, argmax) = max_product_composition(n, k as usize);
            let (closed, _) = path_bound_int(n, k);
            let mut start = vec![0u64; k as usize];
            start[0] = n;
            let exchanged = balanced_exchange(&start);
            let ok = value == closed && argmax.contains(&exchanged);
            log.case(
                ok,
                format!(
                    "composition N={n} k={k} max={value} closed={closed} argmax_count={}",
                    argmax.len()
                ),
            );
        }
    }
    log.finish("paths")
}

/// Star tuple oracle equals the binomial closed form; the unconditional
/// digraph search confirms it for two arms; the finite-t family is monotone
/// and approaches the supremum.
fn verify_stars(max_n: u64, max_a: u32) -> bool {
    let mut log = CaseLog::new();
    for a in 1..=max_a {
        for n in 1..=max_n {
            let (best, argmax) = max_elementary_symmetric_tuples(n, a);
            let closed = star_bound_int(n, a);
            let mut ok = best == closed;
            if a as u64 <= n {
                ok &= argmax.contains(&vec![1u64; n as usize]);
            }
            log.case(
                ok,
                format!("tuples N={n} a={a} best={best} closed={closed}"),
            );
        }
    }
    let star2 = Pattern::star(2);
    for n in 1..=4u64 {
        let vertices = (n as usize + 1).max(star2.vertex_count());
        let r = max_ct_over_digraphs(n, &star2, vertices, true);
        let closed = star_bound_int(n, 2);
        log.case(
            r.best_value == closed,
            format!(
                "digraph-search N={n} a=2 vertices={vertices} best={} closed={closed} space={}",
                r.best_value, r.space_size
            ),
        );
    }
    for n in [
        Label::from_int(1),
        Label::from_int(5),
        "22/7".parse().unwrap(),
    ] {
        for a in 1..=max_a {
            let sup = star_supremum(&n, a);
            let mut monotone = true;
            let mut prev: Option<Label> = None;
            for t in a as u64..=200 {
                let v = star_value_at(&n, a, t).expect("t >= a");
                monotone &= v <= sup;
                if let Some(p) = &prev {
                    monotone &= &v >= p;
                }
                prev = Some(v);
            }
            log.case(
                monotone,
                format!("monotone N={n} a={a} t={}..200 sup={}", a, show(&sup)),
            );
            let far = star_value_at(&n, a, 1_000_000).expect("t >= a");
            // Relative gap (sup - value) / sup <= 1/10^4, checked exactly.
            let gap_ok =
                (sup.ratio() - far.ratio()) * num_bigint::BigInt::from(10_000) <= *sup.ratio();
            log.case(
                gap_ok,
                format!(
                    "limit N={n} a={a} t=1000000 value~{}",
                    decimal_approx(far.ratio(), 20)
                ),
            );
        }
    }
    log.finish("stars")
}

/// Seeded random nilpotent matrices never exceed the real path bound, and
/// the equal-label path matrix attains it exactly.
fn verify_matrix(trials: u64, seed: u64) -> bool {
    let mut log = CaseLog::new();
    let totals: [Label; 3] = [
        Label::from_int(1),
        Label::from_int(5),
        "22/7".parse().unwrap(),
    ];
    for k in 1..=3u32 {
        for dim in 3..=5usize {
            for total in &totals {
                let r = check_nilpotent_bound(total, k, dim, trials, seed);
                let ok = r.violations == 0
                    && r.witness_exact
                    && r.max_ratio.as_ref().is_none_or(|x| x <= &Label::one());
                let ratio = r
                    .max_ratio
                    .as_ref()
                    .map(|x| decimal_approx(x.ratio(), 6))
                    .unwrap_or_else(|| "-".into());
                log.case(
                    ok,
                    format!(
                        "matrix k={k} dim={dim} N={total} trials={} violations={} max_ratio~{ratio} witness_exact={}",
                        r.trials, r.violations, r.witness_exact
                    ),
                );
            }
        }
    }
    log.finish("matrix")
}

fn graph_set(graphs: &[LabeledDigraph]) -> std::collections::BTreeSet<String> {
    graphs.iter().map(write_graph).collect()
}

fn lemma_expected(k: u32) -> Vec<(String, LabeledDigraph)> {
    let mut expected = vec![(format!("P{k}"), canonical_unit_path(k))];
    for m in k + 1..=2 * k - 1 {
        expected.push((format!("C{m}"), canonical_unit_cycle(m)));
    }
    expected
}

/// The coverage classification scan finds exactly the k-path and the cycles
/// of lengths k+1..=2k-1.
fn verify_lemma() -> bool {
    let mut log = CaseLog::new();
    for (k, caps) in [(2u32, (4usize, 4usize)), (3, (6, 6))] {
        let scan = classify_coverage_graphs(k, caps.0, caps.1);
        let expected = lemma_expected(k);
        let ok = graph_set(&scan.survivors)
            == graph_set(&expected.iter().map(|(_, g)| g.clone()).collect::<Vec<_>>());
        let names: Vec<&str> = expected.iter().map(|(n, _)| n.as_str()).collect();
        log.case(
            ok,
            format!(
                "lemma k={k} caps={}v/{}e survivors={} expected={{{}}} scanned={}",
                caps.0,
                caps.1,
                scan.survivors.len(),
                names.join(","),
                scan.scanned
            ),
        );
    }
    log.finish("lemma")
}
