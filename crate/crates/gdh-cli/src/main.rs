use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gdh::classify::{
    affine_completion_search, candidate_pairs, d12_centre_search, d12_pairs, reproduce_tables, spurious_norm_filter, verify_centre,
};
use gdh::data::{DataError, DataSet, GoldenRow};
use gdh::diagram::{Family, HoleDiagram};
use gdh::enumerate::{leech_enumerator, EnumConfig, Enumerator};
use gdh::exactlat::{leech_lattice, parse_rational, parse_vector, ExactLattice, Rational};
use gdh::liealg::{invtype_diagram, orbifold_order, trace_identity_solutions};
use gdh::orbnum::{dim_bound, eisenstein_coeffs, vacuum_anomaly, CycleShape};

#[derive(Parser)]
#[command(name = "gdh", version, about = "Exact re-verification of the generalised deep holes of the Leech lattice VOA")]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Re-validate all bundled data invariants before running.
    #[arg(long, global = true)]
    seed_check: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients c_n(d) of the dimension formula.
    Coeffs { n: u64 },
    /// Vacuum anomaly of a cycle shape, e.g. "1^8 2^8".
    Vacuum { shape: String },
    /// Upper bound for dim V₁ of the orbifold.
    Bound { shape: String, n: u64 },
    /// Solutions of the lowest-order trace identity.
    TraceSolutions {
        #[arg(long)]
        count_only: bool,
    },
    /// Pairs of affine structures and frame shapes passing the four conditions.
    Candidates {
        /// Only pairs without a generalised deep hole.
        #[arg(long)]
        spurious_only: bool,
    },
    /// Centre search in the fixed lattice of cycle shape 2^12.
    D12Search { diagram: String },
    /// Diagram of the closest vectors around a centre.
    HoleDiagram {
        #[arg(long)]
        lattice: PathBuf,
        /// Comma-separated exact rationals.
        #[arg(long, allow_hyphen_values = true)]
        centre: String,
        #[arg(long)]
        rho: String,
    },
    /// Complete an affine seed to a deep hole of the Leech lattice.
    Complete {
        /// Ã_1, Ã_2 or Ã_3; may be repeated.
        #[arg(long, required = true)]
        seed: Vec<String>,
    },
    /// Recompute both classification tables and compare with the golden copy.
    Tables {
        /// Exit with status 1 on any diff.
        #[arg(long)]
        verify: bool,
        /// Replacement for the bundled golden table of deep holes.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

/// One result in all three formats.
struct Rendered {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    text: String,
    failed: bool,
}

impl Rendered {
    fn new(json: Value, header: Vec<&'static str>, rows: Vec<Vec<String>>, text: String) -> Self {
        Rendered { json, header, rows, text, failed: false }
    }

    fn render(&self, f: Format) -> anyhow::Result<String> {
        Ok(match f {
            Format::Json => serde_json::to_string_pretty(&self.json)? + "\n",
            Format::Text => self.text.clone(),
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().quote_style(csv::QuoteStyle::NonNumeric).from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
        })
    }
}

enum Failure {
    Usage(String),
    Data(DataError),
    Diff,
    Other(anyhow::Error),
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Self {
        Failure::Data(e)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<DataError>() {
            Ok(d) => Failure::Data(d),
            Err(e) => Failure::Other(e),
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

fn parse_shape(s: &str) -> Result<CycleShape, Failure> {
    s.parse().map_err(usage)
}

fn parse_diagram(s: &str) -> Result<HoleDiagram, Failure> {
    HoleDiagram::parse(s).map_err(usage)
}

fn load_data(golden: Option<&PathBuf>) -> anyhow::Result<DataSet> {
    let mut data = DataSet::load()?;
    if let Some(p) = golden {
        let text = fs::read_to_string(p).map_err(|source| DataError::Io { file: p.display().to_string(), source })?;
        data.table2 = serde_json::from_str::<Vec<GoldenRow>>(&text)
            .map_err(|e| DataError::Invalid { file: p.display().to_string(), msg: e.to_string() })?;
        data.validate()?;
    }
    Ok(data)
}

/// Full re-validation of the bundled assets and the Leech basis.
fn seed_check() -> anyhow::Result<()> {
    let data = DataSet::load()?;
    let l = leech_lattice();
    let bad = |msg: &str| DataError::Invalid { file: "leech.json".into(), msg: msg.into() };
    if !l.is_even() || l.det() != Rational::from_integer(1.into()) {
        return Err(bad("basis is not even unimodular").into());
    }
    let (m, _) = leech_enumerator().min_norm_in_coset(&vec![Rational::from_integer(0.into()); 24], &EnumConfig::default())?;
    if m != Rational::from_integer(0.into()) {
        return Err(bad("origin is not a lattice point").into());
    }
    for r in &data.table2 {
        if r.rank as i64 != r.shape.fixed_rank() {
            return Err(DataError::Invalid { file: "table2_golden.json".into(), msg: format!("row {}: rank heading disagrees with shape", r.label) }.into());
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Rendered, Failure> {
    let cfg = EnumConfig::parallel();
    Ok(match &cli.command {
        Command::Coeffs { n } => {
            if *n == 0 {
                return Err(usage("n must be positive"));
            }
            let c = eisenstein_coeffs(*n);
            let map: serde_json::Map<String, Value> = c.coeffs.iter().map(|(d, v)| (d.to_string(), json!(v.to_string()))).collect();
            let text = format!("{{{}}}\n", c.coeffs.iter().map(|(d, v)| format!("{d}: {v}")).collect::<Vec<_>>().join(", "));
            Rendered::new(
                json!({ "n": n, "coeffs": map }),
                vec!["d", "c"],
                c.coeffs.iter().map(|(d, v)| vec![d.to_string(), v.to_string()]).collect(),
                text,
            )
        }
        Command::Vacuum { shape } => {
            let s = parse_shape(shape)?;
            let r = vacuum_anomaly(&s);
            Rendered::new(json!({ "shape": s.to_string(), "rho": r.to_string() }), vec!["shape", "rho"], vec![vec![s.to_string(), r.to_string()]], format!("{r}\n"))
        }
        Command::Bound { shape, n } => {
            let s = parse_shape(shape)?;
            let d = dim_bound(&s, *n).map_err(usage)?;
            Rendered::new(
                json!({ "shape": s.to_string(), "n": n, "dim": d }),
                vec!["shape", "n", "dim"],
                vec![vec![s.to_string(), n.to_string(), d.to_string()]],
                format!("{d}\n"),
            )
        }
        Command::TraceSolutions { count_only } => {
            let sols = trace_identity_solutions();
            if *count_only {
                Rendered::new(json!({ "count": sols.len() }), vec!["count"], vec![vec![sols.len().to_string()]], format!("{}\n", sols.len()))
            } else {
                let rows: Vec<Vec<String>> = sols
                    .iter()
                    .map(|s| {
                        vec![
                            s.notation(),
                            s.total_dim().to_string(),
                            s.total_rank().to_string(),
                            s.ratio().expect("common ratio").to_string(),
                            orbifold_order(s).to_string(),
                            invtype_diagram(s).ascii(),
                        ]
                    })
                    .collect();
                let json = Value::Array(
                    rows.iter()
                        .map(|r| json!({ "structure": r[0], "dim": r[1].parse::<u32>().unwrap(), "rank": r[2].parse::<u32>().unwrap(), "ratio": r[3], "n": r[4].parse::<u64>().unwrap(), "diagram": r[5] }))
                        .collect(),
                );
                let text = rows.iter().map(|r| format!("{:<28} dim {:>4}  rank {:>2}  n {:>2}  {}\n", r[0], r[1], r[2], r[4], r[5])).collect();
                Rendered::new(json, vec!["structure", "dim", "rank", "ratio", "n", "diagram"], rows, text)
            }
        }
        Command::Candidates { spurious_only } => {
            let data = load_data(None)?;
            let realised: Vec<_> = data.table2.iter().filter_map(|r| r.affine_structure()).collect();
            let mut rows = Vec::new();
            for p in candidate_pairs(&data.shapes) {
                let spurious = !realised.contains(&p.structure);
                if *spurious_only && !spurious {
                    continue;
                }
                let info = data.shape_info(&p.shape).expect("catalog shape");
                let f = spurious_norm_filter(&p, info);
                let norms = f.witnesses.iter().map(|w| w.label.clone()).collect::<Vec<_>>().join(", ");
                rows.push(vec![
                    p.shape.to_string(),
                    p.n.to_string(),
                    p.structure.notation(),
                    p.expected_diagram.ascii(),
                    norms,
                    if f.keep { "keep" } else { "eliminate" }.to_string(),
                ]);
            }
            let json = Value::Array(
                rows.iter().map(|r| json!({ "shape": r[0], "n": r[1].parse::<u64>().unwrap(), "structure": r[2], "diagram": r[3], "norms": r[4], "norm_filter": r[5] })).collect(),
            );
            let mut text: String = rows.iter().map(|r| format!("{:<16} n {:>2}  {:<28} {:<14} {:<12} {}\n", r[0], r[1], r[2], r[3], r[4], r[5])).collect();
            text.push_str(&format!("{} pairs\n", rows.len()));
            Rendered::new(json, vec!["shape", "n", "structure", "diagram", "norms", "norm_filter"], rows, text)
        }
        Command::D12Search { diagram } => {
            let d = parse_diagram(diagram)?;
            let n = d12_pairs()
                .into_iter()
                .find(|(t, _)| t == &d)
                .map(|(_, n)| n)
                .ok_or_else(|| usage(format!("{} is not one of the 2^12 diagrams without affine part", d.ascii())))?;
            let r = d12_centre_search(&d, n, &cfg).map_err(|e| anyhow!("{e}"))?;
            let reps: Vec<String> = r.surviving_orbits.iter().map(|h| format!("({})", h.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
            let mut text = format!(
                "diagram {}\nn {}\nsign/permutation classes {}\nclose-vector solutions {}\n",
                d.ascii(),
                n,
                r.sign_perm_classes,
                r.close_vector_solutions
            );
            for (rep, c) in reps.iter().zip(&r.centres) {
                text.push_str(&format!("survivor {rep} -> {} ({} vectors, weight {})\n", c.diagram.ascii(), c.nodes, c.twisted_weight));
            }
            let rows = reps.iter().zip(&r.centres).map(|(rep, c)| vec![d.ascii(), n.to_string(), r.sign_perm_classes.to_string(), rep.clone(), c.diagram.ascii()]).collect();
            Rendered::new(serde_json::to_value(&r).map_err(anyhow::Error::from)?, vec!["diagram", "n", "classes", "representative", "verified"], rows, text)
        }
        Command::HoleDiagram { lattice, centre, rho } => {
            let c = parse_vector(centre).map_err(|e| usage(format!("--centre: {e}")))?;
            let rho = parse_rational(rho).map_err(|e| usage(format!("--rho: {e}")))?;
            let text = fs::read_to_string(lattice).map_err(|e| usage(format!("{}: {e}", lattice.display())))?;
            let l = ExactLattice::from_json(&text).map_err(|e| DataError::Invalid { file: lattice.display().to_string(), msg: e.to_string() })?;
            if c.len() != l.ambient_dim() {
                return Err(usage(format!("--centre has {} coordinates, lattice ambient dimension is {}", c.len(), l.ambient_dim())));
            }
            let en = Enumerator::new(&l).map_err(|e| anyhow!("{e}"))?;
            let v = verify_centre(&en, &c, &rho, None, &cfg).map_err(|e| anyhow!("{e}"))?;
            Rendered::new(
                serde_json::to_value(&v).map_err(anyhow::Error::from)?,
                vec!["diagram", "nodes", "twisted_weight"],
                vec![vec![v.diagram.ascii(), v.nodes.to_string(), v.twisted_weight.clone()]],
                format!("{}\n{} vectors\ntwisted weight {}\n", v.diagram.latex(), v.nodes, v.twisted_weight),
            )
        }
        Command::Complete { seed } => {
            let mut out = Vec::new();
            let mut rows = Vec::new();
            let mut text = String::new();
            let seeds = seed
                .iter()
                .map(|s| {
                    let d = parse_diagram(s)?;
                    match d.components().collect::<Vec<_>>().as_slice() {
                        [(c, 1)] if c.affine && c.family == Family::A && (1..=3).contains(&c.rank) => Ok(*c),
                        _ => Err(usage(format!("seed must be one of Ã_1, Ã_2, Ã_3, got {s}"))),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            for c in &seeds {
                let zero = Rational::from_integer(0.into());
                for comp in affine_completion_search(leech_enumerator(), *c, &zero, &cfg).map_err(|e| anyhow!("{e}"))? {
                    let v = &comp.verified;
                    text.push_str(&format!("{} => {} ({} vectors)\ncentre {}\n", c.ascii(), v.diagram.ascii(), v.nodes, v.centre.join(",")));
                    rows.push(vec![c.ascii(), v.diagram.ascii(), v.nodes.to_string(), v.centre.join(",")]);
                    out.push(json!({ "seed": c.latex(), "diagram": v.diagram.latex(), "nodes": v.nodes, "centre": v.centre, "embedding": comp.embedding }));
                }
            }
            Rendered::new(Value::Array(out), vec!["seed", "diagram", "nodes", "centre"], rows, text)
        }
        Command::Tables { verify, golden } => {
            let data = load_data(golden.as_ref())?;
            let r = reproduce_tables(&data, &cfg).map_err(|e| anyhow!("{e}"))?;
            let mut text = String::new();
            for row in &r.rows {
                text.push_str(&format!(
                    "{:<4} {:<28} n {:>2}  Dim {:>4}  {:<24} {}\n",
                    row.label,
                    row.structure,
                    row.n,
                    row.dim,
                    row.phi,
                    row.verified_diagram.as_ref().map_or(String::new(), |d| format!("verified {d}"))
                ));
                for d in &row.diffs {
                    text.push_str(&format!("  diff: {d}\n"));
                }
            }
            for s in &r.spurious {
                for d in &s.diffs {
                    text.push_str(&format!("spurious {}: {d}\n", s.structure));
                }
            }
            for d in &r.diffs {
                text.push_str(&format!("diff: {d}\n"));
            }
            text.push_str(&format!(
                "trace solutions {}, candidate pairs {}, spurious rows {}, centres verified {}\n",
                r.trace_solutions,
                r.candidate_pairs,
                r.spurious.len(),
                r.centres_verified()
            ));
            text.push_str(&r.summary());
            text.push('\n');
            let rows = r
                .rows
                .iter()
                .map(|row| {
                    vec![
                        row.label.clone(),
                        row.shape.clone(),
                        row.rank.to_string(),
                        row.structure.clone(),
                        row.n.to_string(),
                        row.dim.to_string(),
                        row.phi.clone(),
                        row.verified_diagram.clone().unwrap_or_default(),
                        row.diffs.len().to_string(),
                    ]
                })
                .collect();
            let mut out = Rendered::new(
                json!({ "rows": r.rows, "spurious": r.spurious, "diffs": r.diffs, "summary": r.summary() }),
                vec!["label", "shape", "rank", "structure", "n", "dim", "phi", "verified_diagram", "diffs"],
                rows,
                text,
            );
            out.failed = *verify && r.diff_count() > 0;
            out
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().expect("global pool is built once");
    }
    let result = (|| -> Result<(), Failure> {
        if cli.seed_check {
            seed_check()?;
        }
        let r = run(&cli)?;
        let s = r.render(cli.format)?;
        match &cli.output {
            Some(p) => fs::write(p, s).with_context(|| format!("writing {}", p.display()))?,
            None => std::io::stdout().write_all(s.as_bytes()).context("writing output")?,
        }
        if r.failed {
            return Err(Failure::Diff);
        }
        Ok(())
    })();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Diff) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("usage error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Data(e)) => {
            eprintln!("data error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
