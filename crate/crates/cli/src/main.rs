use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vgalg::arrangement::{format_poly, Arrangement};
use vgalg::catalog;
use vgalg::compare::{compare, CompareWhat};
use vgalg::exactla::{Field, FieldSpec, PrimeField, Rationals};
use vgalg::omatroid::{signed_circuits, tope_graph, Graph};
use vgalg::reconstruct::{
    aut_groups, conjecture_harness_filtered, conjecture_harness_graded, recover_and_compare,
    recover_tope_graph_from_heav, HarnessMode, HarnessReport,
};
use vgalg::verify::{self, VerifyConfig, DEFAULT_SEED};
use vgalg::vgalgebra::{format_linear, VgAlgebra, SCHEMA_VERSION};
use vgalg::{Error, Result};

/// Exact filtered and graded Varchenko-Gelfand algebras of real hyperplane arrangements.
///
/// INPUT is a path to an arrangement JSON file, `-` for stdin, or the name of
/// a built-in catalog entry.
#[derive(Parser)]
#[command(name = "vg", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Coefficient field: Q or Fp:<p>.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Allow characteristic 2 (only brute-force enumerators run).
    #[arg(long, global = true)]
    allow_char2: bool,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for random modes; defaults to $VG_SEED.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the chambers with their sign vectors.
    Chambers { input: String },
    /// Characteristic polynomial and Betti numbers of the intersection lattice.
    Charpoly { input: String },
    /// The tope graph, optionally recovered from the filtered algebra.
    Topegraph {
        input: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
        format: GraphFormat,
        /// Build the graph from generalized Heaviside functions (codim-2 generic only).
        #[arg(long)]
        from_heav: bool,
    },
    /// Signed circuits of the normals, one per antipodal pair.
    Circuits { input: String },
    /// Generalized Heaviside functions.
    Gheav {
        input: String,
        /// Use the structural (alternating pattern) enumeration.
        #[arg(long)]
        structural: bool,
    },
    /// Square-zero lines in degree 1.
    Sqzero {
        input: String,
        /// Scan every vector of F_p^n instead (prime fields only).
        #[arg(long)]
        scan: bool,
    },
    /// Orders of the graph, filtered and set automorphism groups.
    Autgroups { input: String },
    /// Filtered-algebra conjecture harness.
    ReconstructFiltered(HarnessArgs),
    /// Graded-algebra conjecture harness.
    ReconstructGraded(HarnessArgs),
    /// Recover signed circuits from rescaled square-zero generators.
    RecoverCircuits {
        input: String,
        /// Comma-separated nonzero scalars, one per hyperplane (default all 1).
        #[arg(long, allow_hyphen_values = true)]
        scalars: Option<String>,
    },
    /// Compare two arrangements.
    Compare {
        a: String,
        b: String,
        /// lattice, topegraph, filtered-vg, graded-vg-invariants or all.
        #[arg(long, default_value = "all")]
        what: String,
    },
    /// List catalog entries, or print one as arrangement JSON.
    Catalog {
        name: Option<String>,
        /// Re-derive the entry's recorded invariants and show each.
        #[arg(long)]
        check: bool,
    },
    /// Run the acceptance criteria, optionally restricted to modules.
    Verify {
        modules: Vec<String>,
        /// Run everything (the default when no module is given).
        #[arg(long)]
        all: bool,
        /// Size of each random arrangement sample.
        #[arg(long, default_value_t = 50)]
        random_count: usize,
    },
}

#[derive(Args)]
struct HarnessArgs {
    input: String,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,
    /// Number of samples in random mode.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Text,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

/// What a command prints: text by default, JSON with `--json`.
struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json }
    }
}

fn read_arrangement(input: &str) -> Result<Arrangement> {
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Usage(format!("reading stdin: {e}")))?;
        s
    } else if Path::new(input).exists() {
        std::fs::read_to_string(input).map_err(|e| Error::Usage(format!("reading {input}: {e}")))?
    } else if catalog::names().contains(&input) {
        return Ok(catalog::load(input)?.arrangement);
    } else {
        return Err(Error::Usage(format!(
            "`{input}` is neither a file nor a catalog entry (known: {})",
            catalog::names().join(", ")
        )));
    };
    Arrangement::from_json(&text)
}

fn seed(g: &Global) -> Result<u64> {
    if let Some(s) = g.seed {
        return Ok(s);
    }
    match std::env::var("VG_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| Error::Usage(format!("VG_SEED `{v}` is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// A computation that runs over whichever field `--field` selects.
trait FieldJob {
    fn run<F: Field>(self, vg: &VgAlgebra<F>) -> Result<Output>;
}

fn with_field(g: &Global, a: &Arrangement, job: impl FieldJob) -> Result<Output> {
    match FieldSpec::parse(&g.field)? {
        FieldSpec::Rationals => job.run(&VgAlgebra::new(a, Rationals, g.allow_char2)?),
        FieldSpec::PrimeField(p) => job.run(&VgAlgebra::new(a, PrimeField::new(p)?, g.allow_char2)?),
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn chambers_cmd(a: &Arrangement) -> Result<Output> {
    let cs = vgalg::arrangement::chambers(a);
    let mut text = format!("{} chambers\n", cs.len());
    for (c, sv) in cs.signs().iter().enumerate() {
        let _ = writeln!(text, "{c:>4}  {sv}");
    }
    let json = json!({
        "count": cs.len(),
        "sign_vectors": cs.signs().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    });
    Ok(Output::new(text, json))
}

fn charpoly_cmd(a: &Arrangement) -> Result<Output> {
    let l = vgalg::arrangement::Lattice::new(a);
    let chi = l.char_poly();
    let text = format!(
        "chi(t) = {}\nbetti = {:?}\nchambers = {}\ngeneric in codimension 2: {}\n",
        format_poly(&chi),
        l.betti(),
        l.zaslavsky_count(),
        l.is_generic_codim2()
    );
    let json = json!({
        "char_poly": chi,
        "betti": l.betti(),
        "chambers": l.zaslavsky_count(),
        "generic_codim2": l.is_generic_codim2(),
    });
    Ok(Output::new(text, json))
}

fn graph_output(g: &Graph, name: &str, format: GraphFormat) -> Output {
    let text = match format {
        GraphFormat::Dot => g.to_dot(name),
        GraphFormat::Text => {
            let hist: Vec<String> = g.degree_histogram().iter().map(|(d, k)| format!("{k} of degree {d}")).collect();
            let mut s = format!("{} vertices, {} edges; {}\n", g.vertex_count(), g.edge_count(), hist.join(", "));
            for (u, v) in g.edges() {
                let _ = writeln!(s, "{u} -- {v}");
            }
            s
        }
    };
    Output::new(text, g.to_json())
}

struct RecoveredGraph {
    format: GraphFormat,
}

impl FieldJob for RecoveredGraph {
    fn run<F: Field>(self, vg: &VgAlgebra<F>) -> Result<Output> {
        Ok(graph_output(&recover_tope_graph_from_heav(vg)?, "recovered", self.format))
    }
}

fn circuits_cmd(a: &Arrangement) -> Result<Output> {
    let reps: Vec<String> = signed_circuits(a).representatives().iter().map(|s| s.to_string()).collect();
    let mut text = format!("{} signed circuits up to sign\n", reps.len());
    for r in &reps {
        let _ = writeln!(text, "{r}");
    }
    Ok(Output::new(text, json!({ "circuits": reps })))
}

struct GheavJob {
    structural: bool,
}

impl FieldJob for GheavJob {
    fn run<F: Field>(self, vg: &VgAlgebra<F>) -> Result<Output> {
        let list = if self.structural { vg.gheav_structural()? } else { vg.gheav_bruteforce() };
        let heav = list.iter().filter(|g| g.is_heaviside()).count();
        let mut text = format!("{} generalized Heaviside functions ({heav} Heaviside)\n", list.len());
        let mut items = Vec::new();
        for (k, g) in list.iter().enumerate() {
            let bits: String = g.indicator.iter().map(|&b| if b { '1' } else { '0' }).collect();
            let _ = writeln!(text, "{k:>4}  {:<24} {bits}", g.formula(vg));
            items.push(json!({
                "formula": g.formula(vg),
                "support": one_based(&g.support),
                "heaviside": g.is_heaviside(),
                "values": bits,
            }));
        }
        let json = json!({
            "field": vg.field().spec().to_string(),
            "method": if self.structural { "structural" } else { "brute-force" },
            "count": list.len(),
            "elements": items,
        });
        Ok(Output::new(text, json))
    }
}

struct SqzeroJob {
    scan: bool,
}

impl FieldJob for SqzeroJob {
    fn run<F: Field>(self, vg: &VgAlgebra<F>) -> Result<Output> {
        let f = vg.field();
        let lines: Vec<(String, Vec<usize>)> = if self.scan {
            vg.sqzero_scan()?
                .iter()
                .map(|c| (format_linear(f, c), (0..c.len()).filter(|&i| !f.is_zero(&c[i])).collect()))
                .collect()
        } else {
            vg.sqzero()?.iter().map(|l| (l.display(f), l.support.clone())).collect()
        };
        let noun = if self.scan { "square-zero directions" } else { "lines" };
        let mut text = format!("{} {noun}\n", lines.len());
        for (s, _) in &lines {
            let _ = writeln!(text, "{s}");
        }
        let json = json!({
            "field": f.spec().to_string(),
            "method": if self.scan { "scan" } else { "lines" },
            "count": lines.len(),
            "lines": lines.iter().map(|(s, sup)| json!({ "direction": s, "support": one_based(sup) })).collect::<Vec<_>>(),
        });
        Ok(Output::new(text, json))
    }
}

struct AutJob;

impl FieldJob for AutJob {
    fn run<F: Field>(self, vg: &VgAlgebra<F>) -> Result<Output> {
        let r = aut_groups(vg);
        let text = format!(
            "Aut_graph {}\nAut_filt {}\nAut_set {}\nchain holds: {}\n",
            r.graph,
            r.filtered,
            r.set,
            if r.chain_holds() { "yes" } else { "NO" }
        );
        let mut json = serde_json::to_value(&r).expect("serializable");
        json["chain_holds"] = json!(r.chain_holds());
        if !r.chain_holds() {
            return Err(Error::Invariant(format!("automorphism chain fails: {json}")));
        }
        Ok(Output::new(text, json))
    }
}

struct HarnessJob {
    graded: bool,
    mode: HarnessMode,
}

fn harness_text(r: &HarnessReport) -> String {
    let mut s = format!(
        "{} harness over {} ({}): {} choices from a pool of {}\n",
        r.harness,
        r.field,
        match r.mode {
            HarnessMode::Exhaustive => "exhaustive".to_string(),
            HarnessMode::Random { seed, trials } => format!("random, seed {seed}, {trials} trials"),
        },
        r.examined,
        r.pool
    );
    let _ = writeln!(s, "note: {}", r.note);
    let _ = writeln!(s, "basis-valid {}", r.basis_valid);
    let _ = writeln!(s, "passing {} ({} with non-Heaviside elements)", r.passing, r.passing_non_heaviside);
    let _ = writeln!(s, "matching {}", r.matching);
    for (why, k) in &r.rejections {
        let _ = writeln!(s, "rejected {k}: {why}");
    }
    let _ = writeln!(s, "counterexamples {}", r.counterexamples.len());
    for c in &r.counterexamples {
        let _ = writeln!(s, "  #{} indices {:?} signs {:?}: {}", c.ordinal, c.indices, c.signs, c.detail);
    }
    s
}

impl FieldJob for HarnessJob {
    fn run<F: Field>(self, vg: &VgAlgebra<F>) -> Result<Output> {
        let r = if self.graded {
            conjecture_harness_graded(vg, self.mode)?
        } else {
            conjecture_harness_filtered(vg, self.mode)?
        };
        Ok(Output::new(harness_text(&r), serde_json::to_value(&r).expect("serializable")))
    }
}

struct RecoverJob {
    scalars: Option<String>,
}

impl FieldJob for RecoverJob {
    fn run<F: Field>(self, vg: &VgAlgebra<F>) -> Result<Output> {
        let f = vg.field();
        let scalars = match &self.scalars {
            None => vec![f.one(); vg.n()],
            Some(s) => s.split(',').map(|t| f.parse(t.trim())).collect::<Result<Vec<_>>>()?,
        };
        let v = recover_and_compare(vg, &scalars)?;
        let json = serde_json::to_value(&v).expect("serializable");
        if !v.pass() {
            return Err(Error::Invariant(format!("recovered circuits are not a reorientation: {json}")));
        }
        let flips: Vec<usize> = v
            .reorientation
            .as_ref()
            .map(|e| (0..e.len()).filter(|&i| e[i]).map(|i| i + 1).collect())
            .unwrap_or_default();
        let mut text = format!(
            "recovered {} signed circuits; equal to the arrangement's after reorienting {:?}\n",
            v.recovered.len(),
            flips
        );
        for c in &v.recovered {
            let _ = writeln!(text, "{c}");
        }
        Ok(Output::new(text, json))
    }
}

fn compare_cmd(a: &str, b: &str, what: &str) -> Result<Output> {
    let (x, y) = (read_arrangement(a)?, read_arrangement(b)?);
    let whats: Vec<CompareWhat> =
        if what == "all" { CompareWhat::ALL.to_vec() } else { vec![CompareWhat::parse(what)?] };
    let results = whats.iter().map(|&w| compare(&x, &y, w)).collect::<Result<Vec<_>>>()?;
    let text = if results.len() == 1 {
        format!("{}\n", results[0].message)
    } else {
        results.iter().map(|c| format!("{}: {}\n", c.what.name(), c.message)).collect()
    };
    Ok(Output::new(text, json!({ "comparisons": results })))
}

fn catalog_cmd(name: Option<&str>, check: bool) -> Result<Output> {
    let Some(name) = name else {
        let mut text = String::new();
        let mut items = Vec::new();
        for n in catalog::names() {
            let e = catalog::load_unverified(n)?;
            let _ = writeln!(text, "{n:<10} {}", e.description);
            items.push(json!({ "name": n, "description": e.description }));
        }
        return Ok(Output::new(text, json!({ "entries": items })));
    };
    if !check {
        let e = catalog::load(name)?;
        let j = e.arrangement.to_json();
        // the arrangement itself, so that the output can be piped back in
        return Ok(Output::new(serde_json::to_string_pretty(&j).expect("serializable") + "\n", j));
    }
    let e = catalog::load_unverified(name)?;
    let checks = e.verify();
    let mut text = format!("{}: {}\n{}\n", e.name, e.description, e.construction);
    for c in &checks {
        let _ = writeln!(
            text,
            "{} {:<18} [{:?}] recorded {} computed {}",
            if c.ok { "ok  " } else { "FAIL" },
            c.name,
            c.origin,
            c.expected,
            c.actual
        );
    }
    if let Some(note) = e.sqzero_reference.as_ref().and_then(|r| r.discrepancy.as_ref()) {
        let _ = writeln!(text, "note: {note}");
    }
    if let Some(bad) = checks.iter().find(|c| !c.ok) {
        print!("{text}");
        return Err(Error::Invariant(format!("catalog entry `{name}`: {} does not re-derive", bad.name)));
    }
    Ok(Output::new(text, json!({ "name": e.name, "checks": checks })))
}

fn verify_cmd(g: &Global, modules: Vec<String>, all: bool, random_count: usize) -> Result<Output> {
    let scope = if all { Vec::new() } else { modules };
    let cfg = VerifyConfig { seed: seed(g)?, random_count, ..VerifyConfig::default() };
    let checks = verify::select(&scope)?;
    let mut results = Vec::new();
    for c in checks {
        let r = c.run(&cfg);
        let line = format!(
            "{} {:<8} {} ({} ms): {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.key,
            r.title,
            r.millis,
            r.detail
        );
        if !g.json {
            println!("{line}");
        }
        results.push(r);
    }
    let failed = results.iter().find(|r| !r.pass);
    let json = json!({ "seed": cfg.seed, "pass": failed.is_none(), "results": results });
    if let Some(r) = failed {
        if g.json {
            println!("{}", serde_json::to_string_pretty(&with_header("verify", json.clone())).expect("serializable"));
        }
        return Err(Error::Invariant(format!("criterion {} failed: {}", r.key, r.title)));
    }
    // text lines were streamed as each check finished
    Ok(Output::new(String::new(), json))
}

fn with_header(command: &str, mut body: Value) -> Value {
    if let Value::Object(m) = &mut body {
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        m.insert("command".into(), json!(command));
    }
    body
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    if let Some(n) = g.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Error::Usage(format!("--jobs: {e}")))?;
    }
    let (name, out) = match cli.cmd {
        Cmd::Chambers { input } => ("chambers", chambers_cmd(&read_arrangement(&input)?)?),
        Cmd::Charpoly { input } => ("charpoly", charpoly_cmd(&read_arrangement(&input)?)?),
        Cmd::Topegraph { input, format, from_heav } => {
            let a = read_arrangement(&input)?;
            let out = if from_heav {
                with_field(g, &a, RecoveredGraph { format })?
            } else {
                graph_output(&tope_graph(&vgalg::arrangement::chambers(&a)), "tope", format)
            };
            ("topegraph", out)
        }
        Cmd::Circuits { input } => ("circuits", circuits_cmd(&read_arrangement(&input)?)?),
        Cmd::Gheav { input, structural } => {
            ("gheav", with_field(g, &read_arrangement(&input)?, GheavJob { structural })?)
        }
        Cmd::Sqzero { input, scan } => ("sqzero", with_field(g, &read_arrangement(&input)?, SqzeroJob { scan })?),
        Cmd::Autgroups { input } => ("autgroups", with_field(g, &read_arrangement(&input)?, AutJob)?),
        Cmd::ReconstructFiltered(h) => ("reconstruct-filtered", harness(g, h, false)?),
        Cmd::ReconstructGraded(h) => ("reconstruct-graded", harness(g, h, true)?),
        Cmd::RecoverCircuits { input, scalars } => {
            ("recover-circuits", with_field(g, &read_arrangement(&input)?, RecoverJob { scalars })?)
        }
        Cmd::Compare { a, b, what } => ("compare", compare_cmd(&a, &b, &what)?),
        Cmd::Catalog { name, check } => {
            if let (Some(_), false) = (&name, check) {
                // raw arrangement JSON regardless of --json
                print!("{}", catalog_cmd(name.as_deref(), false)?.text);
                return Ok(());
            }
            ("catalog", catalog_cmd(name.as_deref(), check)?)
        }
        Cmd::Verify { modules, all, random_count } => ("verify", verify_cmd(g, modules, all, random_count)?),
    };
    if g.json {
        println!("{}", serde_json::to_string_pretty(&with_header(name, out.json)).expect("serializable"));
    } else {
        print!("{}", out.text);
    }
    Ok(())
}

fn harness(g: &Global, h: HarnessArgs, graded: bool) -> Result<Output> {
    let mode = match h.mode {
        Mode::Exhaustive => HarnessMode::Exhaustive,
        Mode::Random => HarnessMode::Random { seed: seed(g)?, trials: h.trials },
    };
    with_field(g, &read_arrangement(&h.input)?, HarnessJob { graded, mode })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
