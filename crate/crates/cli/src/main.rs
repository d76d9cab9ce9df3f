use std::fmt::Write as _;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bowvar::butterfly::{build_butterfly_diagram, tangent_class_oracle, taut_restrictions};
use bowvar::charring::canonical;
use bowvar::corpus::CorpusSpec;
use bowvar::curves::{classify_indexed, skeleton, CurveType, Skeleton};
use bowvar::exec::Exec;
use bowvar::fixedpoints::{bct_to_ties, enumerate_fixed_points, subset_label, young_diagrams, FixedPointIndex};
use bowvar::selftest;
use bowvar::tangent::tangent_weights_general;
use bowvar::{Bct, BraneDiagram};

const DIAGRAM_HELP: &str = "Brane diagram such as \"/2/3/5\\3\\2\\\": '/' is an NS5 brane, '\\' a D5 brane, \
numbers are D3 multiplicities. The letters 's' and 'b' may stand for '/' and '\\', as in s2s3s5b3b2b.";

#[derive(Parser)]
#[command(
    name = "bowvar",
    version,
    about = "Torus fixed points, tangent weights and invariant curves of bow varieties"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    /// Run on one thread
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Args)]
struct Diagram {
    #[arg(help = DIAGRAM_HELP)]
    diagram: String,
}

#[derive(Args)]
struct Select {
    /// 1-based index in the canonical enumeration, or "all"
    #[arg(long, value_parser = parse_selector, conflicts_with = "label")]
    fixed_point: Option<Selector>,
    /// Subset alias such as "13"; needs two D5 branes and all NS5 charges 1
    #[arg(long)]
    label: Option<String>,
}

#[derive(Clone, Copy)]
enum Selector {
    All,
    Index(usize),
}

fn parse_selector(s: &str) -> Result<Selector, String> {
    if s == "all" {
        return Ok(Selector::All);
    }
    match s.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(Selector::Index(k)),
        _ => Err(format!("expected a positive index or \"all\", got {s:?}")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Echo the canonical diagram and its charges
    Parse(Diagram),
    /// List the fixed points in canonical order
    FixedPoints(Diagram),
    /// Tangent weights at fixed points
    Weights {
        #[command(flatten)]
        diagram: Diagram,
        #[command(flatten)]
        select: Select,
        /// Cross-check against the brute-force expansion; exit 3 on mismatch
        #[arg(long)]
        oracle: bool,
    },
    /// Invariant curves through fixed points, by pencil
    Curves {
        #[command(flatten)]
        diagram: Diagram,
        #[command(flatten)]
        select: Select,
    },
    /// Butterfly diagram and tautological restrictions at a fixed point
    Butterflies {
        #[command(flatten)]
        diagram: Diagram,
        #[command(flatten)]
        select: Select,
    },
    /// Fixed points, compact curves, pencils and rays
    Skeleton(Diagram),
    /// Move every NS5 brane to the left with Hanany-Witten transitions
    Separate(Diagram),
    /// One Hanany-Witten transition
    Hw {
        #[command(flatten)]
        diagram: Diagram,
        /// swap branes K and K+1 (1-based)
        #[arg(long)]
        at: usize,
    },
    /// Invariant checks over a seeded random corpus
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_margin: i64,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
    Mismatch(String),
}

impl From<bowvar::Error> for Failure {
    fn from(e: bowvar::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Run = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => Cli::command().error(ErrorKind::InvalidValue, msg).exit(),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("oracle mismatch: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Run {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let dot_ok = matches!(cli.command, Command::Skeleton(_));
    if cli.format == Format::Dot && !dot_ok {
        return Err(Failure::Usage("--format dot is only available for skeleton".into()));
    }
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Parse(x) => parse(&diagram(x)?, json),
        Command::FixedPoints(x) => fixed_points(&diagram(x)?, json),
        Command::Weights { diagram: x, select, oracle } => weights(&diagram(x)?, select, *oracle, json),
        Command::Curves { diagram: x, select } => curves(&diagram(x)?, select, exec, json),
        Command::Butterflies { diagram: x, select } => butterflies(&diagram(x)?, select, json),
        Command::Skeleton(x) => {
            let s = skeleton(&diagram(x)?, exec)?;
            Ok(match cli.format {
                Format::Dot => s.to_dot(),
                Format::Json => to_json(&s),
                Format::Table => skeleton_table(&s),
            })
        }
        Command::Separate(x) => separate(&diagram(x)?, json),
        Command::Hw { diagram: x, at } => hw(&diagram(x)?, *at, json),
        Command::Selftest { seed, max_size, count, max_margin } => {
            if *max_size < 2 {
                return Err(Failure::Usage("--max-size must be at least 2".into()));
            }
            let spec = CorpusSpec { seed: *seed, count: *count, max_size: *max_size, max_margin: *max_margin };
            selftest_cmd(spec, exec, json)
        }
    }
}

fn diagram(x: &Diagram) -> Result<BraneDiagram, Failure> {
    Ok(x.diagram.parse()?)
}

fn to_json<T: serde::Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

fn tuple(xs: &[i64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn parse(d: &BraneDiagram, json: bool) -> Run {
    let m = d.charges();
    if json {
        return Ok(to_json(&json!({
            "diagram": d.to_string(),
            "n": d.n(),
            "m": d.m(),
            "r": m.r,
            "c": m.c,
            "separated": d.is_separated(),
            "sigma": d.sigma(),
        })));
    }
    let mut s = String::new();
    let _ = writeln!(s, "diagram    {d}");
    let _ = writeln!(s, "shape      {}", selftest::shape(d));
    let _ = writeln!(s, "n, m       {}, {}", d.n(), d.m());
    let _ = writeln!(s, "r          {}", tuple(&m.r));
    let _ = writeln!(s, "c          {}", tuple(&m.c));
    let _ = writeln!(s, "separated  {}", if d.is_separated() { "yes" } else { "no" });
    let _ = writeln!(s, "sigma      {}", tuple(&d.sigma()));
    Ok(s)
}

fn fixed_points(d: &BraneDiagram, json: bool) -> Run {
    let pts = enumerate_fixed_points(d)?;
    if json {
        let rows: Vec<Value> = pts
            .iter()
            .enumerate()
            .map(|(k, b)| {
                json!({"index": k + 1, "table": b, "label": subset_label(b), "young": young_diagrams(b).diagrams})
            })
            .collect();
        return Ok(to_json(&rows));
    }
    let mut s = String::new();
    for (k, b) in pts.iter().enumerate() {
        let label = subset_label(b).map(|l| format!("  [{l}]")).unwrap_or_default();
        let _ = writeln!(s, "{:>4}  {b}  {}{label}", k + 1, young_diagrams(b));
    }
    let _ = writeln!(s, "{} fixed points", pts.len());
    Ok(s)
}

/// Resolves the selector against the canonical enumeration of `d`.
fn selected(pts: &[Bct], select: &Select, default_all: bool) -> Result<Vec<usize>, Failure> {
    if let Some(label) = &select.label {
        if pts.first().and_then(subset_label).is_none() {
            return Err(Failure::Usage("--label needs two D5 branes and every NS5 charge equal to 1".into()));
        }
        return pts
            .iter()
            .position(|b| subset_label(b).as_deref() == Some(label))
            .map(|k| vec![k])
            .ok_or_else(|| Failure::Domain(format!("no fixed point with label {label}")));
    }
    match select.fixed_point {
        Some(Selector::Index(k)) if k <= pts.len() => Ok(vec![k - 1]),
        Some(Selector::Index(k)) => {
            Err(Failure::Domain(format!("fixed point {k} out of range: there are {}", pts.len())))
        }
        Some(Selector::All) => Ok((0..pts.len()).collect()),
        None if default_all => Ok((0..pts.len()).collect()),
        None => Err(Failure::Usage("pass --fixed-point K, --fixed-point all or --label L".into())),
    }
}

fn weights(d: &BraneDiagram, select: &Select, oracle: bool, json: bool) -> Run {
    let pts = enumerate_fixed_points(d)?;
    let sigma = d.sigma();
    let mut rows = Vec::new();
    let mut s = String::new();
    for k in selected(&pts, select, true)? {
        let b = &pts[k];
        let w = canonical(tangent_weights_general(b, &sigma)?);
        if oracle {
            let slow = canonical(tangent_class_oracle(&bct_to_ties(b, d)?)?);
            if slow != w {
                return Err(Failure::Mismatch(format!("fixed point {} of {d}", k + 1)));
            }
        }
        let names: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "# fixed point {}  {b}", k + 1);
        for n in &names {
            let _ = writeln!(s, "{n}");
        }
        rows.push(json!({"index": k + 1, "table": b, "weights": names, "oracle": oracle.then_some(true)}));
    }
    Ok(if json { to_json(&rows) } else { s })
}

fn curves(d: &BraneDiagram, select: &Select, exec: Exec, json: bool) -> Run {
    let (sep, trace) = d.separate()?;
    let pts = enumerate_fixed_points(&sep)?;
    let index = FixedPointIndex::new(&pts);
    let ks = selected(&pts, select, false)?;
    let reports = exec.try_map(&ks, |&k| classify_indexed(&pts[k], &index))?;
    if json {
        let out: Vec<Value> = ks
            .iter()
            .zip(&reports)
            .map(|(k, r)| json!({"index": k + 1, "separated": sep.to_string(), "sigma": trace.sigma, "report": r}))
            .collect();
        return Ok(to_json(&out));
    }
    let mut s = String::new();
    if !d.is_separated() {
        let _ = writeln!(s, "weights in the coordinates of {sep}, sigma {}", tuple(&trace.sigma));
    }
    for (k, r) in ks.iter().zip(&reports) {
        let _ = writeln!(s, "# fixed point {}  {}  {}", k + 1, r.point, young_diagrams(&r.point));
        for (w, members) in &r.pencils {
            let _ = writeln!(s, "{w}  dim {}", members.len());
            for c in members {
                let kind = match c.curve_type {
                    CurveType::I => "I",
                    CurveType::II => "II",
                    CurveType::III => "III",
                };
                let mut line = format!("  {kind:<3}");
                if let Some(q) = c.endpoint {
                    let _ = write!(line, " -> {}", q + 1);
                }
                if let Some(x) = &c.surgery {
                    let site: Vec<String> = x.site.iter().map(|(i, o)| format!("({i},{o})")).collect();
                    let _ = write!(
                        line,
                        "  U{} -> U{} row {} site {}",
                        x.source + 1,
                        x.target + 1,
                        x.row + 1,
                        site.join("")
                    );
                }
                let _ = writeln!(s, "{line}");
            }
        }
        for x in &r.blocked {
            let _ = writeln!(
                s,
                "blocked  U{} -> U{} row {}: boxes in the rightmost column {}, needed {}",
                x.surgery.source + 1,
                x.surgery.target + 1,
                x.surgery.row + 1,
                x.surgery.right_col_boxes,
                x.required
            );
        }
    }
    Ok(s)
}

fn butterflies(d: &BraneDiagram, select: &Select, json: bool) -> Run {
    let pts = enumerate_fixed_points(d)?;
    let mut s = String::new();
    let mut out = Vec::new();
    for k in selected(&pts, select, false)? {
        let bd = build_butterfly_diagram(&bct_to_ties(&pts[k], d)?);
        let xi = taut_restrictions(&bd)?;
        if json {
            out.push(json!({"index": k + 1, "butterflies": bd, "xi": xi}));
            continue;
        }
        let _ = writeln!(s, "# fixed point {}  {}", k + 1, pts[k]);
        let _ = write!(s, "{bd}");
        for (seg, x) in xi.iter().enumerate().filter(|(_, x)| x.rank() > 0) {
            let _ = writeln!(s, "xi_X{seg} = {x}");
        }
    }
    Ok(if json { to_json(&out) } else { s })
}

fn skeleton_table(sk: &Skeleton) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "diagram {}  separated {}  sigma {}", sk.diagram, sk.separated, tuple(&sk.sigma));
    let deg = sk.degrees();
    let _ = writeln!(s, "fixed points");
    for (p, b) in sk.fixed_points.iter().enumerate() {
        let _ = writeln!(s, "  {:<8} {b}  degree {}", sk.node_label(p), deg[p]);
    }
    let _ = writeln!(s, "compact curves");
    for e in &sk.edges {
        let _ = writeln!(s, "  {} -- {}  {} / {}", e.p1 + 1, e.p2 + 1, e.w1, e.w2);
    }
    let fans = sk.fans();
    if !fans.is_empty() {
        let _ = writeln!(s, "fans");
        for (a, b, k) in fans {
            let _ = writeln!(s, "  {} -- {}  dim {k}", a + 1, b + 1);
        }
    }
    let _ = writeln!(s, "rays");
    for r in &sk.rays {
        let _ = writeln!(s, "  {}  {}  dim {}", r.p + 1, r.w, r.dim);
    }
    s
}

fn separate(d: &BraneDiagram, json: bool) -> Run {
    let (sep, trace) = d.separate()?;
    if json {
        return Ok(to_json(&json!({"diagram": d.to_string(), "separated": sep.to_string(), "trace": trace})));
    }
    let mut s = String::new();
    let _ = writeln!(s, "{sep}");
    let _ = writeln!(s, "sigma {}", tuple(&trace.sigma));
    let _ = writeln!(s, "{} transitions", trace.steps.len());
    Ok(s)
}

fn hw(d: &BraneDiagram, at: usize, json: bool) -> Run {
    if at == 0 || at >= d.len() {
        return Err(Failure::Domain(format!("--at {at}: expected 1 <= K < {}", d.len())));
    }
    if d.branes()[at - 1] == d.branes()[at] {
        return Err(Failure::Domain(format!("branes {at} and {} have the same kind", at + 1)));
    }
    let e = d.hw_step(at - 1)?;
    if json {
        return Ok(to_json(&json!({"diagram": d.to_string(), "at": at, "result": e.to_string()})));
    }
    Ok(format!("{e}\n"))
}

fn selftest_cmd(spec: CorpusSpec, exec: Exec, json: bool) -> Run {
    let outcomes = selftest::run(spec, exec);
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    let mut s = String::new();
    if json {
        let rows: Vec<Value> =
            outcomes.iter().map(|o| json!({"check": o.name, "cases": o.cases, "failures": o.failures})).collect();
        s = to_json(&json!({"seed": spec.seed, "count": spec.count, "max_size": spec.max_size, "checks": rows}));
    } else {
        for o in &outcomes {
            let _ = writeln!(s, "{} {:<36} {} cases", if o.passed() { "PASS" } else { "FAIL" }, o.name, o.cases);
            for f in o.failures.iter().take(5) {
                let _ = writeln!(s, "     {f}");
            }
        }
        let _ = writeln!(s, "{} of {} checks passed", outcomes.len() - failed, outcomes.len());
    }
    if failed > 0 {
        print!("{s}");
        return Err(Failure::Mismatch(format!("{failed} checks failed")));
    }
    Ok(s)
}
