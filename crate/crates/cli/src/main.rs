use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ringline::harness::{self, GraphFormat, GraphKind, SuiteConfig};
use ringline::morphisms::{
    classify_jordan, count_dis_automorphisms, decompose_product_dis_iso, enumerate_jordan_isomorphisms, Factorizer,
    JordanCertificate, PointMap,
};
use ringline::{Error, ProjectiveLine, RingMapTable};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "ringline", version, about = "Projective lines over finite rings")]
struct Cli {
    /// Largest ring order accepted
    #[arg(long, global = true, env = "RINGLINE_ORDER_CAP")]
    cap: Option<usize>,
    /// Most points for listing all isomorphisms
    #[arg(long, global = true, env = "RINGLINE_LIST_CAP", default_value_t = ringline::morphisms::DEFAULT_LIST_CAP)]
    list_cap: usize,
    /// Most points for counting automorphisms
    #[arg(long, global = true, env = "RINGLINE_COUNT_CAP", default_value_t = ringline::morphisms::DEFAULT_COUNT_CAP)]
    count_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    Identity,
    Transpose,
}

#[derive(Subcommand)]
enum Command {
    /// Point count and parallel classes
    Enumerate { ring: String },
    /// Point count and relation degrees
    Relations { ring: String },
    /// Distant or adjacency graph as DOT or JSON
    ExportGraph {
        ring: String,
        #[arg(long, default_value = "distant")]
        graph: String,
    },
    /// Order of the distant-automorphism group
    Aut { ring: String },
    /// Predicate verdicts for a map between two lines
    CheckMap { source: String, target: String, map: PathBuf },
    /// Factorization certificate of a distant-automorphism of a line over M(n,K)
    Factorize {
        ring: String,
        #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
        map: Option<PathBuf>,
        #[arg(long, value_enum)]
        builtin: Option<Builtin>,
    },
    /// Permutation and components of a distant-isomorphism between product lines
    DecomposeProduct {
        source: String,
        map: PathBuf,
        #[arg(long)]
        target: Option<String>,
    },
    /// Jordan automorphisms of a ring and their classification
    Jordan { ring: String },
    /// Run a named verification suite
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Round trips for the randomized suite
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.cap {
        ringline::ring::set_order_cap(cap);
    }
    let result = run(&cli).and_then(|out| {
        let mut text = out.text;
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &cli.output {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{text}"),
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let violation = e.downcast_ref::<Error>().is_some_and(Error::is_theorem_violation);
            ExitCode::from(if violation { EXIT_VIOLATION } else { EXIT_INPUT })
        }
    }
}

fn line(spec: &str) -> anyhow::Result<Arc<ProjectiveLine>> {
    let ring = harness::parse_ring_spec(spec)?.build()?;
    Ok(Arc::new(ProjectiveLine::new(&ring)))
}

fn read_map(path: &PathBuf, source: &Arc<ProjectiveLine>, target: &Arc<ProjectiveLine>) -> anyhow::Result<PointMap> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    let table: Vec<usize> = serde_json::from_str(&text).with_context(|| format!("{} is not a JSON index array", path.display()))?;
    Ok(PointMap::raw(source, target, table)?)
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Enumerate { ring } => {
            let l = line(ring)?;
            if json {
                return Ok(Output::ok(pretty(&l.to_json())));
            }
            let s = harness::relation_summary(&l);
            let mut out = match s.parallel_class_size {
                Some(size) => format!("{} points, {} parallel classes of size {size}\n", s.points, s.parallel_classes),
                None => format!("{} points, {} parallel classes\n", s.points, s.parallel_classes),
            };
            for p in l.ids() {
                writeln!(out, "{p}\t{}", l.format_point(p))?;
            }
            Ok(Output::ok(out))
        }
        Command::Relations { ring } => {
            let s = harness::relation_summary(&*line(ring)?);
            Ok(Output::ok(if json { pretty(&s) } else { s.to_string() }))
        }
        Command::ExportGraph { ring, graph } => {
            let kind: GraphKind = graph.parse()?;
            let format = if json { GraphFormat::Json } else { GraphFormat::Dot };
            Ok(Output::ok(harness::export_graph(&*line(ring)?, kind, format)))
        }
        Command::Aut { ring } => {
            let c = count_dis_automorphisms(&line(ring)?, cli.list_cap, cli.count_cap)?;
            Ok(Output::ok(if json {
                pretty(&json!({ "format": 1, "count": c.count.to_string(), "method": c.method }))
            } else {
                format!("{} ({})", c.count, c.method)
            }))
        }
        Command::CheckMap { source, target, map } => {
            let (s, t) = (line(source)?, line(target)?);
            let f = read_map(map, &s, &t)?;
            let verdicts = [
                ("bijective", f.is_bijective()),
                ("dis-morphism", f.is_dis_morphism()),
                ("dis-isomorphism", f.is_dis_isomorphism()),
                ("par-isomorphism", f.is_par_isomorphism()),
                ("adj-isomorphism", f.is_adj_isomorphism()),
            ];
            if json {
                let mut obj = serde_json::Map::new();
                obj.insert("format".into(), 1.into());
                for (k, v) in verdicts {
                    obj.insert(k.into(), v.into());
                }
                return Ok(Output::ok(pretty(&obj)));
            }
            Ok(Output::ok(verdicts.iter().map(|(k, v)| format!("{k}: {}\n", if *v { "yes" } else { "no" })).collect()))
        }
        Command::Factorize { ring, map, builtin } => {
            let l = line(ring)?;
            let f = match (map, builtin) {
                (_, Some(Builtin::Identity)) => PointMap::identity(&l),
                (_, Some(Builtin::Transpose)) => PointMap::induced_by_antihom(&l, &l, &RingMapTable::transpose(l.ring())?)?,
                (Some(path), None) => read_map(path, &l, &l)?,
                (None, None) => bail!("a map file or --builtin is required"),
            };
            let cert = Factorizer::new(&l)?.factorize(&f)?;
            if cert.recompose(&l)? != f {
                return Err(Error::TheoremViolation("certificate does not recompose the map".into()).into());
            }
            if json {
                return Ok(Output::ok(pretty(&json!({ "format": 1, "certificate": cert }))));
            }
            let r = l.ring();
            let g = &cert.gamma;
            let mut out = format!("kind: {}\n", cert.kind);
            writeln!(out, "frobenius power: {}", cert.frobenius_power)?;
            writeln!(out, "gamma: [[{}, {}], [{}, {}]]", r.format_elem(g[0]), r.format_elem(g[1]), r.format_elem(g[2]), r.format_elem(g[3]))?;
            writeln!(out, "alpha: {:?}", cert.alpha.table())?;
            Ok(Output::ok(out))
        }
        Command::DecomposeProduct { source, map, target } => {
            let s = line(source)?;
            let t = match target {
                Some(spec) => line(spec)?,
                None => s.clone(),
            };
            let d = decompose_product_dis_iso(&read_map(map, &s, &t)?)?;
            if json {
                let comps: Vec<_> = d.components.iter().map(|c| c.to_json()).collect();
                return Ok(Output::ok(pretty(&json!({ "format": 1, "sigma": d.sigma, "components": comps }))));
            }
            let mut out = format!("sigma: {:?}\n", d.sigma);
            for (k, c) in d.components.iter().enumerate() {
                writeln!(out, "component {k}: {:?}", c.table())?;
            }
            Ok(Output::ok(out))
        }
        Command::Jordan { ring } => {
            let r = harness::parse_ring_spec(ring)?.build()?;
            let all = enumerate_jordan_isomorphisms(&r, &r)?;
            let certs = all.iter().map(classify_jordan).collect::<ringline::Result<Vec<_>>>()?;
            if json {
                let items: Vec<_> = all.iter().zip(&certs).map(|(m, c)| json!({ "map": m, "certificate": c })).collect();
                return Ok(Output::ok(pretty(&json!({ "format": 1, "count": all.len(), "automorphisms": items }))));
            }
            let mut out = format!("{} Jordan automorphisms\n", all.len());
            for (i, (m, c)) in all.iter().zip(&certs).enumerate() {
                let desc = match c {
                    JordanCertificate::Matrix { kind, frobenius_power, g, .. } => {
                        format!("{kind}, frobenius power {frobenius_power}, G = {g:?}")
                    }
                    JordanCertificate::Product { sigma, .. } => format!("product, sigma = {sigma:?}"),
                    JordanCertificate::Scalar { kind } => kind.to_string(),
                };
                writeln!(out, "{i}: {desc} ({})", m.kind())?;
            }
            Ok(Output::ok(out))
        }
        Command::Verify { suite, seed, samples } => {
            let config = SuiteConfig { list_cap: cli.list_cap, count_cap: cli.count_cap, seed: *seed, samples: *samples };
            let report = harness::run_suite(suite, &config)?;
            let code = if report.theorem_violation {
                EXIT_VIOLATION
            } else if report.passed {
                0
            } else {
                EXIT_FAIL
            };
            let text = if json { pretty(&report) } else { report.to_string() };
            Ok(Output { text, code })
        }
    }
}
