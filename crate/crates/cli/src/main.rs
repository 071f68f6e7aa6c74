use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use dspheres::dsc::{self, TraceStatus, YTrace};
use dspheres::finite::{self, FiniteGraph};
use dspheres::metric::{self, SphereReport, Truncation};
use dspheres::permgrp::{close_group, PermGroup, Permutation, ENUMERATION_CAP, MAX_COLORS};
use dspheres::{weakprod, Coloring, Error, GraphHandle, VertexId};

const OK: u8 = 0;
const VIOLATION: u8 = 1;
const USAGE: u8 = 2;
const EXHAUSTED: u8 = 3;

#[derive(Parser)]
#[command(name = "dspheres", version, about = "Distinct spheres in infinite graphs, with finite group checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Args)]
struct Output {
    /// Output format on standard output.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also write a DOT export of the relevant graph to this file.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArg {
    /// Graph family expression, e.g. "direct(tree(3),cycle(7))".
    #[arg(long)]
    graph: String,
    /// Base vertex; defaults to the family root.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
}

impl GraphArg {
    fn load(&self) -> anyhow::Result<(GraphHandle, VertexId)> {
        let g = dspheres::parse_family(&self.graph)?;
        let alpha = match &self.alpha {
            Some(s) => g.parse_vertex(s)?,
            None => g.root(),
        };
        Ok((g, alpha))
    }
}

#[derive(Args)]
struct FiniteInput {
    /// Finite family expression such as "cycle(7)" or "edges(3,0-1,1-2)".
    #[arg(long, conflicts_with = "input")]
    graph: Option<String>,
    /// Edge-list JSON ({"n":..,"edges":[[u,v],..]}) or DOT file.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl FiniteInput {
    fn load(&self) -> anyhow::Result<(FiniteGraph, Vec<String>)> {
        if let Some(expr) = &self.graph {
            let g = dspheres::parse_family(expr)?;
            let verts = g
                .vertices()
                .ok_or_else(|| anyhow!(Error::Argument(format!("{g} is infinite; truncate it first"))))?;
            let t = Truncation::from_vertices(&g, verts)?;
            let labels = t.labels();
            return Ok((t.graph, labels));
        }
        let path = self
            .input
            .as_ref()
            .ok_or_else(|| anyhow!(Error::Argument("give --graph or --input".into())))?;
        let text = read_input(path)?;
        let g = if text.trim_start().starts_with('{') {
            FiniteGraph::from_json(&text)?
        } else {
            FiniteGraph::from_dot(&text)?
        };
        let labels = (0..g.order()).map(|v| v.to_string()).collect();
        Ok((g, labels))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sphere, ball or sphere symmetric difference around a vertex.
    Spheres {
        #[command(flatten)]
        graph: GraphArg,
        /// Radius.
        #[arg(long)]
        n: u32,
        /// Report the ball instead of the sphere.
        #[arg(long)]
        ball: bool,
        /// Report S(alpha,n) △ S(other,n) instead.
        #[arg(long, allow_hyphen_values = true)]
        diff_with: Option<String>,
        /// Omit member lists longer than this.
        #[arg(long, default_value_t = 1000)]
        threshold: usize,
    },
    /// Look for sphere differences on the first equidistant pairs.
    DscCheck {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 25)]
        pairs: usize,
        #[arg(long, default_value_t = 128)]
        nmax: u32,
    },
    /// Compare spheres of all pairs in a ball.
    Distinct {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 3)]
        radius: u32,
        #[arg(long, default_value_t = 10)]
        nmax: u32,
    },
    /// Build the distinguishing set Y and print its trace.
    BuildY {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 3)]
        n1: u32,
        #[arg(long, default_value_t = 25)]
        pairs: usize,
        #[arg(long, default_value_t = 128)]
        nmax: u32,
    },
    /// Re-check a trace produced by build-y.
    VerifyY {
        #[arg(long)]
        graph: String,
        /// Trace JSON file, or - for standard input.
        #[arg(long)]
        trace: PathBuf,
    },
    /// The 2-coloring of a ball induced by a trace.
    Color {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        radius: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Induced subgraph on a ball.
    Truncate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        radius: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Permutation group from generators.
    Group {
        /// Generator in cycle notation or as an image array; repeatable.
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Number of points; inferred from the generators if omitted.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = ENUMERATION_CAP)]
        cap: usize,
        /// Point for suborbits and blocks.
        #[arg(long, default_value_t = 0)]
        alpha: usize,
        /// Second point for minimal blocks and the orbital graph.
        #[arg(long)]
        beta: Option<usize>,
        /// Comma-separated point set for the setwise stabilizer.
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
        #[arg(long, default_value_t = MAX_COLORS)]
        max_colors: usize,
    },
    /// Automorphism group of a finite graph.
    Autgrp {
        #[command(flatten)]
        input: FiniteInput,
        #[arg(long, default_value_t = ENUMERATION_CAP)]
        cap: usize,
    },
    /// Distinguishing number of a finite graph with a witness coloring.
    Distnum {
        #[command(flatten)]
        input: FiniteInput,
        #[arg(long, default_value_t = MAX_COLORS)]
        max_colors: usize,
        #[arg(long, default_value_t = ENUMERATION_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Checks on the direct product tree(r) ⊗ cycle(k).
    Weakprod {
        #[arg(long, default_value_t = 3)]
        r: u32,
        #[arg(long, default_value_t = 7)]
        k: u32,
        #[arg(long, default_value_t = 7)]
        nlo: u32,
        #[arg(long, default_value_t = 10)]
        nhi: u32,
        /// Tree radius of the truncation used for the coloring and motion checks.
        #[arg(long, default_value_t = 3)]
        radius: u32,
        #[arg(long, default_value_t = 20)]
        nmax: u32,
        #[arg(long, default_value_t = 25)]
        pairs: usize,
        #[command(flatten)]
        out: Output,
    },
}

struct Outcome {
    report: Value,
    code: u8,
    dot: Option<String>,
}

fn outcome(report: impl Serialize, code: u8) -> anyhow::Result<Outcome> {
    Ok(Outcome {
        report: serde_json::to_value(report)?,
        code,
        dot: None,
    })
}

fn read_input(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_trace(path: &PathBuf) -> anyhow::Result<YTrace> {
    let text = read_input(path)?;
    let trace: YTrace = serde_json::from_str(&text).map_err(Error::from)?;
    Ok(trace)
}

fn run(cmd: &Command) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Spheres {
            graph,
            n,
            ball,
            diff_with,
            threshold,
        } => {
            let (g, alpha) = graph.load()?;
            if let Some(other) = diff_with {
                let delta = g.parse_vertex(other)?;
                let diff = metric::sphere_sym_diff(&g, &alpha, &delta, *n)?;
                let size = diff.len();
                let members = (size <= *threshold).then_some(diff);
                return outcome(
                    json!({"gamma": alpha, "delta": delta, "radius": n, "size": size, "members": members}),
                    OK,
                );
            }
            let set = if *ball {
                metric::SphereSet {
                    center: alpha.clone(),
                    radius: *n,
                    members: metric::ball(&g, &alpha, *n)?,
                }
            } else {
                metric::sphere(&g, &alpha, *n)?
            };
            outcome(SphereReport::new(set, *threshold), OK)
        }
        Command::DscCheck { graph, pairs, nmax } => {
            let (g, alpha) = graph.load()?;
            let r = dsc::check_dsc(&g, &alpha, *pairs, *nmax)?;
            let code = if r.all_witnessed { OK } else { EXHAUSTED };
            outcome(r, code)
        }
        Command::Distinct { graph, radius, nmax } => {
            let (g, alpha) = graph.load()?;
            outcome(dsc::sphere_distinctness(&g, &alpha, *radius, *nmax)?, OK)
        }
        Command::BuildY {
            graph,
            n1,
            pairs,
            nmax,
        } => {
            let (g, alpha) = graph.load()?;
            let t = dsc::build_distinguishing_set(&g, &alpha, *n1, *pairs, *nmax)?;
            let code = match t.status {
                TraceStatus::Complete => OK,
                TraceStatus::BudgetExhausted(_) => EXHAUSTED,
            };
            outcome(t, code)
        }
        Command::VerifyY { graph, trace } => {
            let g = dspheres::parse_family(graph)?;
            let t = read_trace(trace)?;
            let v = dsc::verify_trace(&g, &t);
            let code = if v.ok { OK } else { VIOLATION };
            outcome(v, code)
        }
        Command::Color {
            graph,
            trace,
            radius,
            out,
        } => {
            let g = dspheres::parse_family(graph)?;
            let t = read_trace(trace)?;
            let c = dsc::emit_two_coloring(&g, &t, *radius)?;
            let tr = metric::truncate(&g, &t.alpha, *radius)?;
            let dot = tr.graph.to_dot(&tr.labels(), Some(c.coloring.colors()));
            let code = if c.no_closed_neighborhood_in_y { OK } else { VIOLATION };
            let mut o = outcome(c, code)?;
            o.dot = Some(dot);
            with_format(o, out)
        }
        Command::Truncate { graph, radius, out } => {
            let (g, alpha) = graph.load()?;
            let tr = metric::truncate(&g, &alpha, *radius)?;
            let report = json!({
                "alpha": alpha,
                "radius": radius,
                "vertices": tr.vertices,
                "edges": tr.graph.to_edge_list().edges,
            });
            let mut o = outcome(report, OK)?;
            o.dot = Some(tr.graph.to_dot(&tr.labels(), None));
            with_format(o, out)
        }
        Command::Group {
            gens,
            degree,
            cap,
            alpha,
            beta,
            set,
            max_colors,
        } => group_report(gens, *degree, *cap, *alpha, *beta, set.as_deref(), *max_colors),
        Command::Autgrp { input, cap } => {
            let (g, labels) = input.load()?;
            let grp = finite::automorphism_group(&g, *cap)?;
            let report = json!({
                "vertices": labels,
                "order": grp.order().map(|o| o.to_string()),
                "enumerated": grp.is_enumerated(),
                "generators": grp.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "orbits": grp.orbits(),
            });
            outcome(report, OK)
        }
        Command::Distnum {
            input,
            max_colors,
            cap,
            out,
        } => {
            let (g, labels) = input.load()?;
            let d = finite::distinguishing_number_graph(&g, *max_colors, *cap)?;
            let witness = match &d.witness {
                Some(w) => {
                    let domain: Vec<VertexId> = labels.iter().map(|l| l.parse()).collect::<Result<_, _>>()?;
                    Some(Coloring::new(domain, w.clone())?)
                }
                None => None,
            };
            let code = if d.distinguishing_number.is_some() { OK } else { EXHAUSTED };
            let report = json!({
                "distinguishing_number": d.distinguishing_number,
                "max_colors": d.max_colors,
                "witness": witness,
            });
            let mut o = outcome(report, code)?;
            o.dot = Some(g.to_dot(&labels, d.witness.as_deref()));
            with_format(o, out)
        }
        Command::Weakprod {
            r,
            k,
            nlo,
            nhi,
            radius,
            nmax,
            pairs,
            out,
        } => {
            let spheres = weakprod::verify_equal_spheres(*r, *k, *nlo, *nhi)?;
            let g = weakprod::product(*r, *k)?;
            let dsc_report = dsc::check_dsc(&g, &g.root(), *pairs, *nmax)?;
            let rigidity = weakprod::coloring_rigidity(*r, *k, *radius)?;
            let motion = weakprod::level_motion_evidence(*r, *k, *radius)?;
            let level = weakprod::level_truncation(*r, *k, *radius)?.1;
            let big_f = weakprod::weak_product_coloring(&rigidity.f, &rigidity.h)?;
            let dot = weakprod::level_dot(*r, *k, *radius, Some(&big_f))?;
            let ok = spheres.all_equal && spheres.all_match_closed_form && rigidity.ok && motion.every_interior_level_moved;
            let report = json!({
                "spheres": spheres,
                "dsc": {
                    "exhausted": dsc_report.exhausted(),
                    "report": dsc_report,
                },
                "coloring": rigidity,
                "motion": motion,
                "levels": level.len(),
            });
            let mut o = outcome(report, if ok { OK } else { VIOLATION })?;
            o.dot = Some(dot);
            with_format(o, out)
        }
    }
}

fn with_format(o: Outcome, out: &Output) -> anyhow::Result<Outcome> {
    if let (Some(path), Some(dot)) = (&out.dot, &o.dot) {
        fs::write(path, dot).with_context(|| format!("writing {}", path.display()))?;
    }
    if out.format == Format::Dot && o.dot.is_none() {
        return Err(anyhow!(Error::Argument("this command has no DOT output".into())));
    }
    Ok(Outcome {
        dot: if out.format == Format::Dot { o.dot } else { None },
        ..o
    })
}

fn group_report(
    gens: &[String],
    degree: Option<usize>,
    cap: usize,
    alpha: usize,
    beta: Option<usize>,
    set: Option<&[usize]>,
    max_colors: usize,
) -> anyhow::Result<Outcome> {
    let parsed: Vec<Permutation> = match degree {
        Some(n) => gens.iter().map(|s| Permutation::parse(s, Some(n))).collect::<Result<_, _>>()?,
        None => {
            let raw: Vec<Permutation> = gens.iter().map(|s| Permutation::parse(s, None)).collect::<Result<_, _>>()?;
            let n = raw.iter().map(Permutation::degree).max().unwrap_or(0);
            gens.iter().map(|s| Permutation::parse(s, Some(n))).collect::<Result<_, _>>()?
        }
    };
    let n = parsed.first().map_or(degree.unwrap_or(0), Permutation::degree);
    if alpha >= n.max(1) {
        return Err(anyhow!(Error::Argument(format!("point {alpha} is outside 0..{n}"))));
    }
    let g: PermGroup = close_group(n, parsed, cap)?;
    let mut report = Map::new();
    report.insert("summary".into(), serde_json::to_value(g.summary())?);
    let transitive = g.is_transitive();
    report.insert("transitive".into(), transitive.into());
    if transitive && n >= 2 {
        report.insert("primitive".into(), g.is_primitive()?.into());
        report.insert("block_system".into(), serde_json::to_value(g.block_system()?)?);
        if let Some(b) = beta {
            report.insert("minimal_blocks".into(), serde_json::to_value(g.minimal_blocks(alpha, b)?)?);
        }
    }
    if g.is_enumerated() {
        report.insert("suborbits".into(), serde_json::to_value(g.suborbits(alpha)?)?);
        let motion = match g.motion() {
            Ok(m) => Value::from(m),
            Err(Error::TrivialGroup) => Value::Null,
            Err(e) => return Err(e.into()),
        };
        report.insert("motion".into(), motion);
        if let Some(b) = beta {
            let og = g.orbital_graph(alpha, b)?;
            report.insert("orbital_graph".into(), serde_json::to_value(og.to_edge_list())?);
        }
        if let Some(y) = set {
            let st = g.setwise_stabilizer(y)?;
            report.insert("setwise_stabilizer".into(), serde_json::to_value(st.summary())?);
        }
        report.insert("distinguishing".into(), serde_json::to_value(g.distinguishing_number(max_colors)?)?);
    }
    let code = if g.is_enumerated() { OK } else { EXHAUSTED };
    outcome(Value::Object(report), code)
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Spheres { .. } => "spheres",
        Command::DscCheck { .. } => "dsc-check",
        Command::Distinct { .. } => "distinct",
        Command::BuildY { .. } => "build-y",
        Command::VerifyY { .. } => "verify-y",
        Command::Color { .. } => "color",
        Command::Truncate { .. } => "truncate",
        Command::Group { .. } => "group",
        Command::Autgrp { .. } => "autgrp",
        Command::Distnum { .. } => "distnum",
        Command::Weakprod { .. } => "weakprod",
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BallTooLarge { .. } | Error::EnumerationCap { .. } | Error::IncompleteTrace) => EXHAUSTED,
        _ => USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    let name = command_name(&cli.command);
    match run(&cli.command) {
        Ok(o) => {
            let text = match o.dot {
                Some(dot) => dot,
                None => {
                    let mut body = Map::new();
                    body.insert(
                        "meta".into(),
                        json!({"tool": "dspheres", "version": env!("CARGO_PKG_VERSION"), "command": name}),
                    );
                    match o.report {
                        Value::Object(fields) => body.extend(fields),
                        other => {
                            body.insert("report".into(), other);
                        }
                    }
                    serde_json::to_string_pretty(&Value::Object(body)).expect("JSON values serialize") + "\n"
                }
            };
            let mut stdout = io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(USAGE);
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("dspheres {name}: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
