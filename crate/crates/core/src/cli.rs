//! The `cellkit` command line.
//!
//! Data goes to `out` in the requested format; progress and errors go to
//! `err`. Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::based::{
    classify_spectral_graphs, dihedral_small_quotient_ring, enumerate_with, parabolic_reduction,
    cell_quotient_ring, BasedRing, Enumeration, EnumerationOptions, SpectralGraph,
};
use crate::cells::{cell_report, compute_cells, CellDecomposition, ReportFormat};
use crate::coxeter::{CoxeterSpec, CoxeterSystem};
use crate::error::{Error, Result};
use crate::hecke::{cache, HeckeProducts, KLTable};

const NOTE: &str = "decategorified candidates";

#[derive(Debug, Parser)]
#[command(name = "cellkit", version, about = "Kazhdan-Lusztig cells, a-function and cell based rings")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Output format: markdown, json or csv.
    #[arg(long, global = true, default_value = "markdown")]
    format: ReportFormat,
    /// Directory for cached KL tables.
    #[arg(long, global = true, env = "CELLKIT_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads: a positive integer or `auto`.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_threads)]
    threads: Threads,
    /// Neither read nor write the KL table cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Debug, Clone, Copy)]
enum Threads {
    Auto,
    Fixed(usize),
}

fn parse_threads(s: &str) -> std::result::Result<Threads, String> {
    if s == "auto" {
        return Ok(Threads::Auto);
    }
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(Threads::Fixed(n)),
        _ => Err(format!("expected a positive integer or `auto`, got `{s}`")),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Left, right and two-sided cells.
    Cells { spec: String },
    /// The a-function on every element.
    Afunction { spec: String },
    /// The Kazhdan-Lusztig polynomial P_{x,y}.
    Kl { spec: String, x: String, y: String },
    /// The H-cell in the left cell of an element.
    Hcell { spec: String, element: String },
    /// The based ring of the H-cell in the left cell of an element.
    Ring { spec: String, element: String },
    /// Regularity and niceness of every two-sided cell.
    Report { spec: String },
    /// Transitive based modules and spectral graphs.
    #[command(subcommand)]
    Classify(Classify),
    /// Manage cached KL tables.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Largest module rank searched (default 4, and at most n - 1 for
    /// dihedral groups).
    #[arg(long)]
    max_rank: Option<usize>,
    /// Largest entry tried in a generator matrix (default 2 for dihedral
    /// groups, otherwise one more than the ring's special value).
    #[arg(long)]
    entry_bound: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Classify {
    /// Spectral graphs for 2cos(pi/n) and modules over the small quotient of I2(n).
    Dihedral {
        n: u32,
        #[command(flatten)]
        search: SearchArgs,
        /// Largest graph searched (defaults to 12, at least n).
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// Modules over the ring of the H-cell in the left cell of an element.
    Hcell {
        spec: String,
        element: String,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug, Subcommand)]
enum CacheCommand {
    /// Compute and store the KL table.
    Build { spec: String },
    /// Recompute a random sample of cached polynomials.
    Verify {
        spec: String,
        /// Fraction of polynomials checked.
        #[arg(long, default_value_t = 0.01)]
        fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Delete the stored table.
    Clear { spec: String },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.global.threads {
        Threads::Auto => execute(&cli, err),
        Threads::Fixed(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli, err)),
            Err(e) => {
                let _ = writeln!(err, "error: cannot start thread pool: {e}");
                return 1;
            }
        },
    };
    match result {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

struct Ctx<'a> {
    global: &'a Global,
    err: &'a mut (dyn Write + Send),
}

impl Ctx<'_> {
    fn progress(&mut self, msg: &str) {
        let _ = writeln!(self.err, "{msg}");
    }

    fn cache_dir(&self) -> Option<&Path> {
        if self.global.no_cache {
            None
        } else {
            self.global.cache_dir.as_deref()
        }
    }

    /// The KL table, from the cache when possible. A cache file that fails
    /// its checks is an error, never silently rebuilt.
    fn table(&mut self, sys: &CoxeterSystem) -> Result<KLTable> {
        if let Some(dir) = self.cache_dir().map(Path::to_path_buf) {
            if let Some(t) = cache::load(sys, &dir)? {
                self.progress(&format!("loaded KL table from {}", cache::cache_path(&dir, &sys.spec()).display()));
                return Ok(t);
            }
            let t = self.build_table(sys)?;
            let path = cache::save(&t, sys, &dir)?;
            self.progress(&format!("cached KL table at {}", path.display()));
            return Ok(t);
        }
        self.build_table(sys)
    }

    fn build_table(&mut self, sys: &CoxeterSystem) -> Result<KLTable> {
        let start = Instant::now();
        self.progress(&format!("building KL table for {} ({} elements)", sys.spec(), sys.order()));
        let t = KLTable::build(sys)?;
        self.progress(&format!("KL table done in {:.2?}", start.elapsed()));
        Ok(t)
    }

    fn cells(&mut self, sys: &CoxeterSystem, table: &KLTable) -> CellDecomposition {
        let start = Instant::now();
        let dec = compute_cells(HeckeProducts::new(sys, table));
        self.progress(&format!(
            "{} two-sided cells in {:.2?}",
            dec.two_sided_cells().len(),
            start.elapsed()
        ));
        dec
    }
}

fn execute(cli: &Cli, err: &mut (dyn Write + Send)) -> Result<String> {
    let mut ctx = Ctx {
        global: &cli.global,
        err,
    };
    let format = cli.global.format;
    match &cli.command {
        Command::Cells { spec } => {
            let sys = CoxeterSystem::build(spec.parse()?)?;
            let table = ctx.table(&sys)?;
            let dec = ctx.cells(&sys, &table);
            cell_report(&sys, &dec, format)
        }
        Command::Afunction { spec } => {
            let sys = CoxeterSystem::build(spec.parse()?)?;
            let table = ctx.table(&sys)?;
            let dec = ctx.cells(&sys, &table);
            let rows: Vec<(String, u32)> = sys.elements().map(|x| (sys.label(x), dec.a_function(x))).collect();
            afunction_output(&rows, format)
        }
        Command::Kl { spec, x, y } => {
            let sys = CoxeterSystem::build(spec.parse()?)?;
            let (x, y) = (sys.parse_label(x)?, sys.parse_label(y)?);
            let p = if ctx.cache_dir().is_some() {
                ctx.table(&sys)?.kl(x, y)
            } else {
                crate::hecke::KlRecursion::new(&sys).poly(x, y)
            };
            match format {
                ReportFormat::Markdown => Ok(format!("{p}\n")),
                ReportFormat::Json => json(&KlJson {
                    spec: spec.clone(),
                    x: sys.label(x),
                    y: sys.label(y),
                    coefficients: p.coeffs().to_vec(),
                    display: p.to_string(),
                }),
                ReportFormat::Csv => Ok(format!(
                    "x,y,coefficients\n{},{},{}\n",
                    sys.label(x),
                    sys.label(y),
                    p.coeffs().iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
                )),
            }
        }
        Command::Hcell { spec, element } => {
            let sys = CoxeterSystem::build(spec.parse()?)?;
            let x = sys.parse_label(element)?;
            let table = ctx.table(&sys)?;
            let dec = ctx.cells(&sys, &table);
            let (l, r, j) = dec.cell_of(x);
            let h: Vec<String> = dec.h_cell(l).iter().map(|&w| sys.label(w)).collect();
            let info = HcellJson {
                spec: spec.clone(),
                element: sys.label(x),
                left_cell: l,
                right_cell: r,
                two_sided_cell: j,
                a: dec.a_value(j),
                h_cell: h,
            };
            match format {
                ReportFormat::Markdown => Ok(format!(
                    "H-cell of left cell L{} (two-sided cell {}, a = {}): {{{}}}\n",
                    l,
                    j,
                    info.a,
                    info.h_cell.join(", ")
                )),
                ReportFormat::Json => json(&info),
                ReportFormat::Csv => Ok(format!("label\n{}\n", info.h_cell.join("\n"))),
            }
        }
        Command::Ring { spec, element } => {
            let sys = CoxeterSystem::build(spec.parse()?)?;
            let x = sys.parse_label(element)?;
            let table = ctx.table(&sys)?;
            let dec = ctx.cells(&sys, &table);
            let ring = cell_quotient_ring(HeckeProducts::new(&sys, &table), &dec, dec.cell_of(x).0)?;
            ring_output(&ring, format)
        }
        Command::Report { spec } => {
            let sys = CoxeterSystem::build(spec.parse()?)?;
            let table = ctx.table(&sys)?;
            let dec = ctx.cells(&sys, &table);
            let reports: Vec<_> = (0..dec.two_sided_cells().len()).map(|j| dec.predicate_report(j)).collect();
            match format {
                ReportFormat::Json => json(&reports),
                ReportFormat::Markdown | ReportFormat::Csv => {
                    let md = format == ReportFormat::Markdown;
                    let mut s = String::new();
                    if md {
                        let _ = writeln!(s, "# Cell properties of {spec}\n");
                        s.push_str("| cell | a | regular | strongly regular | nice |\n|---|---|---|---|---|\n");
                    } else {
                        s.push_str("cell,a,regular,strongly_regular,nice\n");
                    }
                    for r in &reports {
                        let row = [
                            r.cell.to_string(),
                            r.a.to_string(),
                            r.is_regular.to_string(),
                            r.is_strongly_regular.to_string(),
                            r.is_nice.to_string(),
                        ];
                        if md {
                            let _ = writeln!(s, "| {} |", row.join(" | "));
                        } else {
                            let _ = writeln!(s, "{}", row.join(","));
                        }
                    }
                    Ok(s)
                }
            }
        }
        Command::Classify(Classify::Hcell { spec, element, search }) => {
            let sys = CoxeterSystem::build(spec.parse()?)?;
            let x = sys.parse_label(element)?;
            let table = ctx.table(&sys)?;
            let dec = ctx.cells(&sys, &table);
            let hecke = HeckeProducts::new(&sys, &table);
            let l = dec.cell_of(x).0;
            let raw = cell_quotient_ring(hecke, &dec, l)?;
            let max_rank = search.max_rank.unwrap_or(4);
            let raw_enum = enumerate(&mut ctx, &raw, max_rank, search.entry_bound);
            let reduced = match parabolic_reduction(hecke, &dec, l) {
                Ok(red) => {
                    let e = enumerate(&mut ctx, &red.ring, max_rank, search.entry_bound);
                    Some((red, e))
                }
                Err(Error::NotClosed(msg)) => {
                    ctx.progress(&format!("no parabolic reduction: {msg}"));
                    None
                }
                Err(e) => return Err(e),
            };
            let out = ClassifyHcellJson {
                spec: spec.clone(),
                element: sys.label(x),
                note: NOTE,
                h_cell: dec.h_cell(l).iter().map(|&w| sys.label(w)).collect(),
                parabolic_longest: reduced.as_ref().map(|(r, _)| sys.label(r.elements[0])),
                scale: reduced.as_ref().map(|(r, _)| r.scale),
                ring: reduced.as_ref().map(|(r, _)| r.ring.clone()),
                modules: reduced.as_ref().map(|(_, e)| EnumJson::new(e)),
                hcell_ring: RingModulesJson {
                    ring: raw,
                    modules: EnumJson::new(&raw_enum),
                },
            };
            match format {
                ReportFormat::Json => json(&out),
                ReportFormat::Markdown => Ok(classify_hcell_markdown(&out)),
                ReportFormat::Csv => Err(Error::UnsupportedFormat("csv for classify".into())),
            }
        }
        Command::Classify(Classify::Dihedral { n, search, max_vertices }) => {
            if *n < 3 {
                return Err(Error::InvalidSpec(format!("I2({n})"), "n must be at least 3".into()));
            }
            let max_vertices = max_vertices.unwrap_or(12).max(*n as usize);
            let start = Instant::now();
            let graphs = classify_spectral_graphs(*n, max_vertices);
            ctx.progress(&format!("{} spectral graphs in {:.2?}", graphs.len(), start.elapsed()));
            let ring = dihedral_small_quotient_ring(*n)?;
            // b_s^2 = 2 b_s caps diagonal entries at 2; the cap on the other
            // entries is a default only, flagged by `at_bound`
            let max_rank = search.max_rank.unwrap_or((*n as usize - 1).min(4));
            let e = enumerate(&mut ctx, &ring, max_rank, Some(search.entry_bound.unwrap_or(2)));
            let out = ClassifyDihedralJson {
                n: *n,
                note: NOTE,
                max_vertices,
                graphs,
                ring,
                modules: EnumJson::new(&e),
            };
            match format {
                ReportFormat::Json => json(&out),
                ReportFormat::Markdown => Ok(classify_dihedral_markdown(&out)),
                ReportFormat::Csv => Err(Error::UnsupportedFormat("csv for classify".into())),
            }
        }
        Command::Cache(cmd) => {
            let dir = ctx
                .global
                .cache_dir
                .clone()
                .ok_or_else(|| Error::Cache("no cache directory: pass --cache-dir or set CELLKIT_CACHE_DIR".into()))?;
            match cmd {
                CacheCommand::Build { spec } => {
                    let sys = CoxeterSystem::build(spec.parse()?)?;
                    let t = ctx.build_table(&sys)?;
                    let path = cache::save(&t, &sys, &dir)?;
                    Ok(format!("{}\n", path.display()))
                }
                CacheCommand::Verify { spec, fraction, seed } => {
                    let sys = CoxeterSystem::build(spec.parse()?)?;
                    let rep = cache::verify(&sys, &dir, *fraction, *seed)?;
                    if !rep.mismatches.is_empty() {
                        return Err(Error::StaleCache(format!(
                            "{} of {} sampled polynomials differ",
                            rep.mismatches.len(),
                            rep.checked
                        )));
                    }
                    match format {
                        ReportFormat::Json => json(&rep),
                        _ => Ok(format!("ok: {} polynomials checked\n", rep.checked)),
                    }
                }
                CacheCommand::Clear { spec } => {
                    let removed = cache::clear(&dir, &spec.parse::<CoxeterSpec>()?)?;
                    Ok(format!("{}\n", if removed { "removed" } else { "nothing to remove" }))
                }
            }
        }
    }
}

fn enumerate(ctx: &mut Ctx<'_>, ring: &BasedRing, max_rank: usize, entry_bound: Option<u64>) -> Enumeration {
    let start = Instant::now();
    let mut opts = EnumerationOptions::new(max_rank);
    opts.entry_bound = entry_bound;
    let e = enumerate_with(ring, &opts);
    ctx.progress(&format!(
        "rank {} ring: {} modules up to rank {max_rank} ({} nodes, {:.2?})",
        ring.rank(),
        e.modules.len(),
        e.nodes,
        start.elapsed()
    ));
    if e.partial {
        ctx.progress("warning: node budget exhausted, module list may be incomplete");
    }
    if e.at_bound {
        ctx.progress("warning: some module has an entry at the entry bound");
    }
    e
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct KlJson {
    spec: String,
    x: String,
    y: String,
    coefficients: Vec<i64>,
    display: String,
}

#[derive(Serialize)]
struct HcellJson {
    spec: String,
    element: String,
    left_cell: usize,
    right_cell: usize,
    two_sided_cell: usize,
    a: u32,
    h_cell: Vec<String>,
}

#[derive(Serialize)]
struct EnumJson {
    count: usize,
    modules: Vec<crate::based::BasedModule>,
    max_rank_searched: bool,
    entry_bound: u64,
    at_bound: bool,
    partial: bool,
}

impl EnumJson {
    fn new(e: &Enumeration) -> Self {
        EnumJson {
            count: e.modules.len(),
            modules: e.modules.clone(),
            max_rank_searched: !e.partial,
            entry_bound: e.entry_bound,
            at_bound: e.at_bound,
            partial: e.partial,
        }
    }
}

#[derive(Serialize)]
struct RingModulesJson {
    ring: BasedRing,
    modules: EnumJson,
}

#[derive(Serialize)]
struct ClassifyHcellJson {
    spec: String,
    element: String,
    note: &'static str,
    h_cell: Vec<String>,
    parabolic_longest: Option<String>,
    scale: Option<u64>,
    /// The H-cell ring rescaled at its parabolic longest element.
    ring: Option<BasedRing>,
    modules: Option<EnumJson>,
    /// The unreduced ring on `{e} ∪ H`.
    hcell_ring: RingModulesJson,
}

#[derive(Serialize)]
struct ClassifyDihedralJson {
    n: u32,
    note: &'static str,
    max_vertices: usize,
    graphs: Vec<SpectralGraph>,
    ring: BasedRing,
    modules: EnumJson,
}

fn afunction_output(rows: &[(String, u32)], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Markdown => {
            let mut s = String::from("| element | a |\n|---|---|\n");
            for (l, a) in rows {
                let _ = writeln!(s, "| {l} | {a} |");
            }
            Ok(s)
        }
        ReportFormat::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                element: &'a str,
                a: u32,
            }
            json(&rows.iter().map(|(l, a)| Row { element: l, a: *a }).collect::<Vec<_>>())
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["element", "a"])?;
            for (l, a) in rows {
                w.write_record([l.as_str(), &a.to_string()])?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

fn product_text(ring: &BasedRing, i: usize, j: usize) -> String {
    let terms = ring.product(i, j);
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|&(k, c)| {
            if c == 1 {
                ring.labels()[k].clone()
            } else {
                format!("{c}·{}", ring.labels()[k])
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn ring_markdown(ring: &BasedRing) -> String {
    let labels = ring.labels();
    let mut s = String::new();
    let _ = writeln!(s, "| | {} |", labels.join(" | "));
    let _ = writeln!(s, "|---|{}", "---|".repeat(labels.len()));
    for i in 0..ring.rank() {
        let row: Vec<String> = (0..ring.rank()).map(|j| product_text(ring, i, j)).collect();
        let _ = writeln!(s, "| **{}** | {} |", labels[i], row.join(" | "));
    }
    s
}

fn ring_output(ring: &BasedRing, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => json(ring),
        ReportFormat::Markdown => Ok(ring_markdown(ring)),
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["left", "right", "term", "coefficient"])?;
            for i in 0..ring.rank() {
                for j in 0..ring.rank() {
                    for (k, c) in ring.product(i, j) {
                        w.write_record([
                            ring.labels()[i].as_str(),
                            ring.labels()[j].as_str(),
                            ring.labels()[k].as_str(),
                            &c.to_string(),
                        ])?;
                    }
                }
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

fn modules_markdown(s: &mut String, ring: &BasedRing, e: &EnumJson) {
    let _ = writeln!(
        s,
        "{} modules (entry bound {}{}{})\n",
        e.count,
        e.entry_bound,
        if e.at_bound { ", some entry at the bound" } else { "" },
        if e.partial { ", PARTIAL: search budget exhausted" } else { "" }
    );
    for (idx, m) in e.modules.iter().enumerate() {
        let _ = writeln!(s, "- module {idx}, rank {}:", m.rank);
        for (i, mat) in m.matrices.iter().enumerate().skip(1) {
            let rows: Vec<String> = mat
                .iter()
                .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            let _ = writeln!(s, "  - {} ↦ [{}]", ring.labels()[i], rows.join("; "));
        }
    }
    s.push('\n');
}

fn classify_hcell_markdown(out: &ClassifyHcellJson) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Transitive based modules for the H-cell of {} in {}\n", out.element, out.spec);
    let _ = writeln!(s, "Outputs are {}.\n", out.note);
    let _ = writeln!(s, "H-cell: {{{}}}\n", out.h_cell.join(", "));
    if let (Some(ring), Some(modules), Some(w), Some(c)) = (&out.ring, &out.modules, &out.parabolic_longest, out.scale) {
        let _ = writeln!(s, "## Reduced ring (unit x{w}, scale {c})\n");
        s.push_str(&ring_markdown(ring));
        s.push('\n');
        modules_markdown(&mut s, ring, modules);
    }
    s.push_str("## H-cell ring\n\n");
    s.push_str(&ring_markdown(&out.hcell_ring.ring));
    s.push('\n');
    modules_markdown(&mut s, &out.hcell_ring.ring, &out.hcell_ring.modules);
    s
}

fn classify_dihedral_markdown(out: &ClassifyDihedralJson) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# I2({})\n", out.n);
    let _ = writeln!(s, "Outputs are {}.\n", out.note);
    let _ = writeln!(
        s,
        "## Graphs with spectral radius 2cos(pi/{}) on at most {} vertices\n",
        out.n, out.max_vertices
    );
    s.push_str("| name | vertices | graph6 | bicolorings | colour swap is an automorphism |\n|---|---|---|---|---|\n");
    for g in &out.graphs {
        let _ = writeln!(
            s,
            "| {} | {} | `{}` | {} | {} |",
            g.name,
            g.vertices,
            g.graph6,
            g.bicolorings.len(),
            g.bicolorings_equivalent
        );
    }
    s.push_str("\n## Small quotient ring modules\n\n");
    modules_markdown(&mut s, &out.ring, &out.modules);
    s
}
