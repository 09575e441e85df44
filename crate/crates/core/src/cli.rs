//! The `supertropical` command line.
//!
//! Reports are `key: value` lines. With `--json` each line becomes a JSON object
//! `{"key": …, "value": …}` (JSON Lines); list values become arrays.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::catalog;
use crate::covers::{self, CoverHandle, FiberPartition, DEFAULT_FIBER_LIMIT};
use crate::divisor::{self, DivisorMonoid};
use crate::dot::{self, DotOptions};
use crate::error::Error;
use crate::fate;
use crate::monomial::Monomial;
use crate::presentation::PresentationFile;
use crate::quotients::{QuotientElement, QuotientPresentation};
use crate::restricted::{self, Edge, RestrictedMonoid};
use crate::transmissions::{GhostHom, Transmission};
use crate::Ambient;

#[derive(Parser, Debug)]
#[command(
    name = "supertropical",
    version,
    about = "Supertropical monoids over the ghost chain"
)]
struct Cli {
    /// Degree window for tangibly finite builds; exponent box for DOT views of infinite monoids.
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit JSON Lines instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a presentation file and print it in normal form.
    Parse { file: PathBuf },
    /// Tangibles, irreducibles, UF, properties (A)/(B), fate distinction, tyrants.
    Analyze { file: PathBuf },
    /// Fate classes, and same-fate verdicts for `--pair a,b`.
    Fates {
        file: PathBuf,
        #[arg(long = "pair")]
        pairs: Vec<String>,
    },
    /// Staircase analysis of 𝔄′/Feq(T) over u:0, x:1.
    Staircase {
        /// Comma-separated generators of T (default: the worked example).
        #[arg(long)]
        t: Option<String>,
        #[arg(long, default_value_t = 9)]
        rows: u32,
    },
    /// The divisor monoid A_ω.
    Aomega {
        omega: String,
        /// A second ω for the product comparisons.
        #[arg(long)]
        with: Option<String>,
    },
    /// Ũ, U′, W_S covers, PΣ families and partition covers.
    Covers(CoversArgs),
    /// U_w, edge quotients and erasures.
    Restricted(RestrictedArgs),
    /// A transmission between two presentations.
    Transmit(TransmitArgs),
    /// Reproduce a worked example.
    Paper {
        name: String,
        #[arg(long, default_value_t = 3)]
        d: u32,
    },
    /// Emit a DOT diagram.
    Dot(DotArgs),
}

#[derive(Args, Debug)]
struct CoversArgs {
    file: PathBuf,
    /// A fiber target: a name from the file's `zeta` stanzas or a monomial.
    #[arg(long = "zeta")]
    zetas: Vec<String>,
    /// Comma-separated monomials S to keep as singletons.
    #[arg(long)]
    set: Option<String>,
    /// Blocks of the first ζ's fiber, e.g. `x1^2,x1*x2|x2^2`.
    #[arg(long)]
    partition: Option<String>,
}

#[derive(Args, Debug)]
struct RestrictedArgs {
    file: PathBuf,
    #[arg(long)]
    w: String,
    /// File with one `a ~ b` edge per line.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Semicolon-separated edges to erase, e.g. `x1^2~x1*x2`.
    #[arg(long)]
    erase: Option<String>,
}

#[derive(Args, Debug)]
struct TransmitArgs {
    #[arg(long)]
    source: PathBuf,
    #[arg(long)]
    target: PathBuf,
    /// Letter images, e.g. `x1=y,x2=y`.
    #[arg(long)]
    map: String,
    /// Ghost map, e.g. `c=d^2`.
    #[arg(long, default_value = "c=d")]
    ghost: String,
}

#[derive(Args, Debug)]
struct DotArgs {
    file: Option<PathBuf>,
    /// A worked example instead of a file: example-8.5, diagram-8.7, diagram-12.6, diagram-12.7.
    #[arg(long)]
    paper: Option<String>,
    #[arg(long, default_value_t = 3)]
    d: u32,
    /// Draw ghost products as 0 and stop the ghost row at c^D.
    #[arg(long)]
    rees: Option<u32>,
    /// Draw the chart of U_w with identification edges from this file.
    #[arg(long)]
    w: Option<String>,
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Hasse diagram of PΣ for the given ζ targets.
    #[arg(long)]
    psigma: bool,
    #[arg(long = "zeta")]
    zetas: Vec<String>,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => f.write_str(m),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Ordered `key: value` records.
#[derive(Default)]
struct Report {
    records: Vec<(String, Value)>,
}

impl Report {
    fn put(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.records.push((key.into(), value.into()));
    }

    fn list(&mut self, key: impl Into<String>, items: Vec<String>) {
        self.put(key, Value::from(items));
    }

    fn render(&self, as_json: bool) -> String {
        let mut out = String::new();
        for (k, v) in &self.records {
            if as_json {
                out.push_str(&json!({ "key": k, "value": v }).to_string());
            } else {
                out.push_str(&format!("{k}: {}", text(v)));
            }
            out.push('\n');
        }
        out
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("{{{}}}", items.iter().map(text).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// Runs the CLI and returns the process exit code: 0 success, 1 domain or file error, 2 usage error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = dispatch(&cli).and_then(|body| match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Domain(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Domain(e.to_string())),
    });
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {f}");
            match f {
                Failure::Usage(_) => 2,
                Failure::Domain(_) => 1,
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Outcome<String> {
    let report = match &cli.command {
        Command::Parse { file } => return Ok(load(file)?.emit()),
        Command::Dot(args) => return dot_command(cli, args),
        Command::Analyze { file } => analyze(&build(&load(file)?, cli.bound)?)?,
        Command::Fates { file, pairs } => fates(&build(&load(file)?, cli.bound)?, pairs, cli.bound)?,
        Command::Staircase { t, rows } => staircase(t.as_deref(), *rows)?,
        Command::Aomega { omega, with } => aomega(omega, with.as_deref())?,
        Command::Covers(args) => covers_command(cli, args)?,
        Command::Restricted(args) => restricted_command(cli, args)?,
        Command::Transmit(args) => transmit(cli, args)?,
        Command::Paper { name, d } => paper(name, *d)?,
    };
    Ok(report.render(cli.json))
}

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Outcome<PresentationFile> {
    Ok(PresentationFile::parse(&read(path)?)?)
}

fn build(file: &PresentationFile, bound: Option<u32>) -> Outcome<QuotientPresentation> {
    Ok(file.build(bound)?)
}

fn names(u: &QuotientPresentation, xs: &[QuotientElement]) -> Vec<String> {
    xs.iter().map(|x| u.format_element(x)).collect()
}

fn monomials(a: &Ambient, xs: &[Monomial]) -> Vec<String> {
    xs.iter().map(|z| a.format_monomial(z)).collect()
}

fn parse_list(a: &Ambient, text: &str) -> Outcome<Vec<Monomial>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| a.parse_monomial(s).map_err(Failure::from))
        .collect()
}

fn analyze(u: &QuotientPresentation) -> Outcome<Report> {
    let mut r = Report::default();
    r.put("ambient", u.ambient().to_string());
    r.list("ghost_generators", monomials(u.ambient(), u.ghost_generators()));
    match u.finite() {
        Some(f) => {
            r.put("tangibly_finite", true);
            r.put("max_degree", f.max_degree());
            r.put("tangible_count", u.tangible_count()?);
            r.list("tangibles", names(u, &u.tangibles()?));
            r.put("tangible_monomial_count", f.tangibles().len());
            r.list("irreducibles", names(u, &u.irreducibles()?));
            r.put("uf", u.has_uf());
            let p = u.properties()?;
            r.put("tangible_units_trivial", p.tangible_units_trivial);
            r.put("generated_by_degree_one", p.generated_by_degree_one);
            r.put("irreducibles_are_degree_one", p.irreducibles_are_degree_one);
        }
        None => r.put("tangibly_finite", false),
    }
    let failure = fate::fate_distinction_failure(u)?;
    r.put("fate_distinction", failure.is_none());
    if let Some((a, b)) = failure {
        r.list("fate_distinction_counterexample", names(u, &[a, b]));
    }
    tyrant_lines(u, &mut r)?;
    Ok(r)
}

fn tyrant_lines(u: &QuotientPresentation, r: &mut Report) -> Outcome<()> {
    let tyrants = fate::tyrants(u)?;
    let all: Vec<QuotientElement> = tyrants.iter().map(|(t, _)| t.clone()).collect();
    let lonely: Vec<QuotientElement> = tyrants
        .iter()
        .filter(|(_, c)| c.lonely)
        .map(|(t, _)| t.clone())
        .collect();
    r.list("tyrants", names(u, &all));
    r.list("lonely_tyrants", names(u, &lonely));
    Ok(())
}

fn fates(u: &QuotientPresentation, pairs: &[String], window: Option<u32>) -> Outcome<Report> {
    let mut r = Report::default();
    let q = fate::equal_fate_quotient(u, window)?;
    for class in q.classes.iter().filter(|c| c.len() > 1) {
        r.list("same_fate_class", names(u, class));
    }
    r.put("fate_classes", q.classes.len());
    for p in pairs {
        let (a, b) = p
            .split_once(',')
            .ok_or_else(|| Failure::Usage(format!("--pair expects `a,b`, got `{p}`")))?;
        let (a, b) = (u.parse_element(a.trim())?, u.parse_element(b.trim())?);
        pair_line(u, &a, &b, &mut r)?;
    }
    Ok(r)
}

fn pair_line(u: &QuotientPresentation, a: &QuotientElement, b: &QuotientElement, r: &mut Report) -> Outcome<()> {
    let key = format!("same_fate({}, {})", u.format_element(a), u.format_element(b));
    match fate::fate_witness(u, a, b)? {
        None => r.put(key, true),
        Some(w) => r.put(key, format!("false, witness {}", u.format_monomial(&w))),
    }
    Ok(())
}

fn staircase(t: Option<&str>, rows: u32) -> Outcome<Report> {
    let (a, default_t) = catalog::staircase_t();
    let t = match t {
        Some(text) => parse_list(&a, text)?,
        None => default_t,
    };
    let s = fate::staircase(a.clone(), &t, Some(rows))?;
    let mut r = Report::default();
    r.list("basic", monomials(&a, &s.basic));
    r.list("superfluous", monomials(&a, &s.superfluous));
    for row in &s.rows {
        let mut items = monomials(&a, &row.tangibles);
        if row.infinite {
            items.push("…".into());
        }
        r.list(format!("row u^{}", row.u_exponent), items);
    }
    r.list("border_tangibles", monomials(&a, &s.border_tangibles));
    match s.same_fate_from_row {
        Some(p) => r.put("same_fate_from_row", p),
        None => r.put("same_fate_from_row", "none within the rows shown"),
    }
    Ok(r)
}

/// Letters of a monomial in order of first appearance.
fn letters(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for factor in text.split('*') {
        let name = factor.split('^').next().unwrap_or("").trim().to_string();
        if !name.is_empty() && name != "1" && !out.contains(&name) {
            out.push(name);
        }
    }
    out
}

fn aomega(omega: &str, with: Option<&str>) -> Outcome<Report> {
    let mut ls = letters(omega);
    for l in with.map(letters).unwrap_or_default() {
        if !ls.contains(&l) {
            ls.push(l);
        }
    }
    let a = std::sync::Arc::new(Ambient::uniform(&ls)?);
    let m = DivisorMonoid::new(a.clone(), a.parse_monomial(omega)?)?;
    let u = m.presentation();
    let mut r = Report::default();
    r.put("omega", a.format_monomial(m.omega()));
    r.put("divisor_count", m.divisors().len());
    r.put("fate_distinction", fate::has_fate_distinction(u)?);
    tyrant_lines(u, &mut r)?;
    if let Some(w2) = with {
        let (o1, o2) = (m.omega().clone(), a.parse_monomial(w2)?);
        let s = divisor::setwise_product(&o1, &o2);
        r.put("setwise_product_is_a_of_product", s.product_matches());
        r.put("setwise_product_matches_gcd_lcm", s.lattice_matches());
        let ambiguous = o1
            .mul(&o2)
            .divisors()
            .iter()
            .filter(|z| divisor::all_splittings(&o1, &o2, z).len() > 1)
            .count();
        r.put("divisors_with_several_splittings", ambiguous);
    }
    Ok(r)
}

fn zeta(file: &PresentationFile, u: &QuotientPresentation, text: &str) -> Outcome<QuotientElement> {
    match file.zeta(text) {
        Some(z) => Ok(u.project(z)?),
        None => Ok(u.parse_element(text)?),
    }
}

fn covers_command(cli: &Cli, args: &CoversArgs) -> Outcome<Report> {
    let file = load(&args.file)?;
    let u = build(&file, cli.bound)?;
    let a = u.ambient();
    let zetas: Vec<QuotientElement> = args.zetas.iter().map(|z| zeta(&file, &u, z)).collect::<Outcome<_>>()?;
    let mut r = Report::default();
    let uf = covers::uf_and_covers(&u)?;
    r.put("uf", uf.has_uf);
    r.put("tilde_tangible_count", cover_count(&uf.tilde)?);
    r.put("prime_multiplicative", uf.prime.is_multiplicative()?);
    r.put(
        "tilde_prime_decomposition",
        uf.prime.check_decomposition(uf.tilde.relation())?,
    );
    for z in &zetas {
        r.list(format!("fiber({})", u.format_element(z)), monomials(a, &u.fiber_of(z)?));
    }
    if let Some(set) = &args.set {
        if zetas.is_empty() {
            return Err(Failure::Usage("--set needs at least one --zeta".into()));
        }
        let s = parse_list(a, set)?;
        let w = covers::w_s_cover(&u, &zetas, &s)?;
        r.list("singletons", monomials(a, &w.singletons));
        r.put("in_psigma", w.in_psigma);
        r.put("w_s_tangible_count", cover_count(&w.cover)?);
    } else if !zetas.is_empty() {
        let fam = covers::psigma_family(&u, &zetas, DEFAULT_FIBER_LIMIT)?;
        for m in &fam.members {
            r.list("psigma_member", monomials(a, m));
        }
        r.list("psigma_least", monomials(a, &fam.least));
        r.put("psigma_closed_under_intersection", fam.closed_under_intersection);
    }
    if let Some(p) = &args.partition {
        let zeta = zetas
            .first()
            .ok_or_else(|| Failure::Usage("--partition needs a --zeta".into()))?;
        let blocks = p.split('|').map(|b| parse_list(a, b)).collect::<Outcome<Vec<_>>>()?;
        let part = FiberPartition::new(&u, zeta.clone(), blocks)?;
        let pc = covers::partition_covers(&u, &part)?;
        r.put("partition_collapses", pc.adaptation.collapses);
        r.put("partition_separates", pc.adaptation.separates);
        r.put("partition_adapted", pc.adapted());
    }
    Ok(r)
}

fn cover_count(c: &CoverHandle) -> Outcome<usize> {
    Ok(QuotientPresentation::tangibly_finite(c.relation().clone())?.tangible_count()?)
}

fn parse_edge(a: &Ambient, text: &str) -> Outcome<Edge> {
    let (x, y) = text
        .split_once('~')
        .ok_or_else(|| Failure::Usage(format!("expected an edge `a ~ b`, got `{text}`")))?;
    Ok(Edge::new(a.parse_monomial(x)?, a.parse_monomial(y)?))
}

fn read_edges(a: &Ambient, path: &Path) -> Outcome<Vec<Edge>> {
    read(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_edge(a, l))
        .collect()
}

fn edge_name(a: &Ambient, e: &Edge) -> String {
    format!("{} ~ {}", a.format_monomial(&e.0), a.format_monomial(&e.1))
}

fn edge_report(rm: &RestrictedMonoid, edges: &[Edge], erase: &[Vec<Edge>], r: &mut Report) -> Outcome<()> {
    let a = rm.u_w().ambient().clone();
    let q = restricted::edge_quotient(rm, edges)?;
    let show = |es: &[Edge]| es.iter().map(|e| edge_name(&a, e)).collect::<Vec<_>>();
    r.list("marked_edges", show(&q.marked));
    r.list("implied_pairs", show(&q.implied));
    r.list("forced_ghosts", monomials(&a, &q.forced_ghosts));
    r.put("w_tangible_count", q.quotient.tangible_count()?);
    for d in &q.dependencies {
        let implied: Vec<Edge> = d.implies.iter().map(|&i| q.marked[i].clone()).collect();
        r.list(format!("edge {} implies", edge_name(&a, &d.edge)), show(&implied));
    }
    for e in erase {
        let out = restricted::erase_edges(rm, &q.marked, e)?;
        let key = format!("erase {}", show(e).join("; "));
        r.list(format!("{key}: erased"), show(&out.erased));
        r.put(format!("{key}: cover is U_w"), out.is_u_w);
    }
    Ok(())
}

fn restricted_command(cli: &Cli, args: &RestrictedArgs) -> Outcome<Report> {
    let u = build(&load(&args.file)?, cli.bound)?;
    let a = u.ambient().clone();
    let rm = RestrictedMonoid::new(&u, &a.parse_monomial(&args.w)?)?;
    let mut r = Report::default();
    r.put("w", a.format_monomial(rm.w()));
    r.put("w_tangible_in_u", rm.w_tangible_in_base()?);
    r.put("u_w_tangible_count", rm.u_w().tangible_count()?);
    r.list("u_w_tangibles", names(rm.u_w(), &rm.u_w().tangibles()?));
    if let Some(path) = &args.edges {
        let edges = read_edges(&a, path)?;
        let erase = match &args.erase {
            Some(text) => vec![text
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_edge(&a, s))
                .collect::<Outcome<Vec<_>>>()?],
            None => Vec::new(),
        };
        edge_report(&rm, &edges, &erase, &mut r)?;
    } else if args.erase.is_some() {
        return Err(Failure::Usage("--erase needs --edges".into()));
    }
    Ok(r)
}

fn transmit(cli: &Cli, args: &TransmitArgs) -> Outcome<Report> {
    let source = build(&load(&args.source)?, cli.bound)?;
    let target = build(&load(&args.target)?, cli.bound)?;
    let images = Transmission::parse_images(&source, &target, &args.map)?;
    let alpha = Transmission::new(&source, &target, images, GhostHom::parse(&args.ghost)?)?;
    let max_ghost = cli.bound.unwrap_or(8);
    let mut r = Report::default();
    r.put("ghost_map", alpha.ghost().to_string());
    r.put("conditions_hold", alpha.conditions_hold(max_ghost)?);
    if let Some((x, y)) = alpha.multiplicativity_failure(max_ghost)? {
        r.list("multiplicativity_failure", names(&source, &[x, y]));
    }
    let mut dichotomy = true;
    for t in source.tangibles()? {
        if let Some(z) = t.representative() {
            dichotomy &= alpha.dichotomy_holds(z)?;
        }
    }
    r.put("dichotomy", dichotomy);
    r.put("surjective", alpha.is_surjective()?);
    for t in source.tangibles()? {
        r.put(
            format!("alpha({})", source.format_element(&t)),
            target.format_element(&alpha.apply(&t)?),
        );
    }
    Ok(r)
}

fn paper(name: &str, d: u32) -> Outcome<Report> {
    let mut r = Report::default();
    match name {
        "example-8.5" => {
            let u = catalog::u_d(d)?;
            r.put("tangible_count", u.tangible_count()?);
            r.list("tangibles", names(&u, &u.tangibles()?));
            r.put("fate_distinction", fate::has_fate_distinction(&u)?);
            tyrant_lines(&u, &mut r)?;
        }
        "diagram-8.7" => {
            let u = catalog::u_prime(2, 3)?;
            for (a, b) in [
                ("x", "u*x"),
                ("x", "u^2*x"),
                ("x", "u^3*x"),
                ("u^3*x", "u^4*x"),
                ("u^4*x", "u^5*x"),
            ] {
                pair_line(&u, &u.parse_element(a)?, &u.parse_element(b)?, &mut r)?;
            }
        }
        "staircase" => return staircase(None, 9),
        "diagram-12.6" => {
            let full = catalog::chart_full()?;
            let printed = catalog::chart_printed()?;
            r.put("u_w_tangible_count", full.u_w().tangible_count()?);
            r.list("u_w_tangibles", names(full.u_w(), &full.u_w().tangibles()?));
            r.put("chart_tangible_count_with_w_ghost", printed.u_w().tangible_count()?);
        }
        "diagram-12.7" => {
            let rm = catalog::chart_full()?;
            let e = catalog::chart_edges();
            let erase = vec![vec![e[0].clone()], vec![e[1].clone()], e[3..].to_vec()];
            edge_report(&rm, &e, &erase, &mut r)?;
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown example `{other}` (expected example-8.5, diagram-8.7, staircase, diagram-12.6, diagram-12.7)"
            )))
        }
    }
    Ok(r)
}

fn dot_command(cli: &Cli, args: &DotArgs) -> Outcome<String> {
    let mut options = DotOptions {
        bound: cli.bound,
        rees: args.rees,
        identifications: Vec::new(),
    };
    if let Some(name) = &args.paper {
        if args.file.is_some() {
            return Err(Failure::Usage("give either a file or --paper".into()));
        }
        let (u, title) = match name.as_str() {
            "example-8.5" => {
                options.rees = options.rees.or(Some(args.d));
                (catalog::u_d(args.d)?, format!("U_{}", args.d))
            }
            "diagram-8.7" => {
                options.bound = options.bound.or(Some(4));
                (catalog::u_prime(2, 3)?, "U'_{2,3}".to_string())
            }
            "diagram-12.6" => (catalog::chart_full()?.u_w().clone(), "U_w".to_string()),
            "diagram-12.7" => {
                options.identifications = catalog::chart_edges().into_iter().map(|e| (e.0, e.1)).collect();
                (catalog::chart_full()?.u_w().clone(), "W".to_string())
            }
            other => return Err(Failure::Usage(format!("no diagram for `{other}`"))),
        };
        return Ok(dot::monoid_dot(&u, &title, &options)?);
    }
    let path = args
        .file
        .as_ref()
        .ok_or_else(|| Failure::Usage("dot needs a file or --paper".into()))?;
    let file = load(path)?;
    let u = build(&file, cli.bound)?;
    let a = u.ambient().clone();
    if args.psigma {
        let zetas: Vec<QuotientElement> = args.zetas.iter().map(|z| zeta(&file, &u, z)).collect::<Outcome<_>>()?;
        let fam = covers::psigma_family(&u, &zetas, DEFAULT_FIBER_LIMIT)?;
        let labels: Vec<String> = fam
            .members
            .iter()
            .map(|m| format!("{{{}}}", monomials(&a, m).join(", ")))
            .collect();
        let leq = |i: usize, j: usize| fam.members[i].iter().all(|z| fam.members[j].contains(z));
        return Ok(dot::hasse_dot("PSigma", &labels, leq));
    }
    let target = match &args.w {
        Some(w) => {
            let rm = RestrictedMonoid::new(&u, &a.parse_monomial(w)?)?;
            if let Some(p) = &args.edges {
                options.identifications = read_edges(&a, p)?.into_iter().map(|e| (e.0, e.1)).collect();
            }
            rm.u_w().clone()
        }
        None if args.edges.is_some() => return Err(Failure::Usage("--edges needs --w".into())),
        None => u,
    };
    let title = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(dot::monoid_dot(&target, &title, &options)?)
}
