use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};

use burnoff_core::chart::length_chart;
use burnoff_core::enumeration::big_number;
use burnoff_core::families::connected_graphs_up_to_isomorphism;
use burnoff_core::format::{format_configuration, format_tree, parse_configuration, parse_tree};
use burnoff_core::{
    config_to_tree, config_to_tree_traced, count_r, distribution_analytic, distribution_oracle, enumerate_r_bruteforce,
    enumerate_spanning_trees, simulate, tree_to_config, tree_to_config_traced, Graph, SimulationOptions,
};
use rayon::prelude::*;
use serde_json::json;

use crate::args::{
    AnalyzeArgs, AnalyzeFormat, BijectionArgs, Direction, EnumerateArgs, Listing, ReportFormat, SimulateArgs,
    VerifyArgs,
};
use crate::error::CliError;
use crate::source::Source;

/// Most cone spanning trees `enumerate --what trees` will list.
const TREE_LISTING_LIMIT: u64 = 1_000_000;

fn require_vertices(source: &Source) -> Result<(), CliError> {
    if source.graph.n() == 0 {
        return Err(CliError::input(format!("{}: graph has no vertices", source.name)));
    }
    Ok(())
}

fn require_connected(source: &Source) -> Result<(), CliError> {
    require_vertices(source)?;
    if !source.graph.is_connected() {
        let parts = source.graph.components().len();
        return Err(CliError::input(format!(
            "{}: graph is disconnected ({parts} components); this command needs a connected graph",
            source.name
        )));
    }
    Ok(())
}

pub fn analyze(args: AnalyzeArgs) -> Result<String, CliError> {
    let source = args.graph.load()?;
    require_connected(&source)?;
    let g = &source.graph;
    let distribution = distribution_analytic(g)?;
    let trees = count_r(g);

    Ok(match args.format {
        AnalyzeFormat::Csv => distribution.to_csv(),
        AnalyzeFormat::Json => {
            let doc = json!({
                "graph": source.name,
                "vertices": g.n(),
                "edges": g.edge_count(),
                "relaxed_legal_configurations": big_number(trees.value()),
                "cone_spanning_trees": big_number(trees.value()),
                "distribution": distribution.to_json(),
            });
            serde_json::to_string_pretty(&doc).expect("JSON value serializes") + "\n"
        }
        AnalyzeFormat::Svg => {
            let exact = distribution.probabilities_f64();
            length_chart(&format!("{}: exact game lengths", source.name), &[("exact", &exact)])
        }
        AnalyzeFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "graph: {} ({} vertices, {} edges)",
                source.name,
                g.n(),
                g.edge_count()
            );
            let _ = writeln!(out, "relaxed legal configurations |R|: {trees}");
            let _ = writeln!(out, "spanning trees of the cone: {trees}");
            let _ = writeln!(out, "pairs (C, v): {}", distribution.total());
            out.push('\n');
            let rows: Vec<[String; 5]> = (0..distribution.counts().len())
                .map(|length| {
                    let p = distribution.probability(length);
                    [
                        length.to_string(),
                        distribution.count(length).to_string(),
                        format!("{}/{}", distribution.count(length), distribution.total()),
                        format!("{}/{}", p.numer(), p.denom()),
                        distribution.percent(length),
                    ]
                })
                .collect();
            out.push_str(&table(
                &["length", "count", "fraction", "probability", "percent"],
                &rows,
            ));
            out
        }
    })
}

fn table(header: &[&str; 5], rows: &[[String; 5]]) -> String {
    let mut widths = header.map(str::len);
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: [&str; 5]| {
        let text: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", text.join("  ").trim_end());
    };
    line(*header);
    for row in rows {
        line(row.each_ref().map(String::as_str));
    }
    out
}

pub fn simulate_cmd(args: SimulateArgs) -> Result<String, CliError> {
    let source = args.graph.load()?;
    require_vertices(&source)?;
    let report = simulate(
        &source.graph,
        SimulationOptions {
            games: args.games,
            seed: args.seed,
            alpha: args.alpha,
            track_visits: args.visitation,
        },
    )?;
    if let Some(path) = &args.chart {
        let simulated = report.empirical_probabilities();
        let mut series: Vec<(&str, &[f64])> = vec![("simulated", &simulated)];
        if let Some(exact) = &report.expected_probabilities {
            series.push(("analytic", exact));
        }
        let title = format!("{}: {} games, seed {}", source.name, args.games, args.seed);
        fs::write(path, length_chart(&title, &series))
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(match args.format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Csv => report.histogram_csv(),
    })
}

/// Counts from checking one graph.
struct Checked {
    configurations: usize,
    trees: usize,
    pairs: String,
}

fn check_graph(g: &Graph) -> Result<Result<Checked, String>, CliError> {
    let configs = enumerate_r_bruteforce(g)?;
    let tau = count_r(g);
    if tau != configs.len() as u64 {
        return Ok(Err(format!(
            "brute force finds {} configurations, the cone has {tau} spanning trees",
            configs.len()
        )));
    }
    let cone = g.cone();
    for c in &configs {
        let t = config_to_tree(c)?;
        let back = tree_to_config(g, &t)?;
        if &back != c {
            return Ok(Err(format!("configuration {c} maps back to {back}")));
        }
    }
    let mut trees = 0usize;
    for t in enumerate_spanning_trees(cone.graph()) {
        let c = tree_to_config(g, &t)?;
        if config_to_tree(&c)? != t {
            return Ok(Err(format!("tree {:?} does not survive a round trip", t.edges())));
        }
        trees += 1;
    }
    if trees != configs.len() {
        return Ok(Err(format!(
            "{trees} cone spanning trees but {} configurations",
            configs.len()
        )));
    }
    let analytic = distribution_analytic(g)?;
    let oracle = distribution_oracle(g)?;
    if analytic != oracle {
        return Ok(Err(format!(
            "formula counts {:?} differ from played games {:?}",
            analytic.counts(),
            oracle.counts()
        )));
    }
    Ok(Ok(Checked {
        configurations: configs.len(),
        trees,
        pairs: analytic.total().to_string(),
    }))
}

pub fn verify(args: VerifyArgs) -> Result<String, CliError> {
    if let Some(graph) = args.graph.into_required() {
        let source = graph.load()?;
        require_connected(&source)?;
        return match check_graph(&source.graph)? {
            Ok(c) => Ok(format!(
                "PASS {}: {} configurations, {} trees, {} pairs\n",
                source.name, c.configurations, c.trees, c.pairs
            )),
            Err(reason) => Err(CliError::Verification(format!("{}: {reason}", source.name))),
        };
    }

    let mut out = String::new();
    for n in 1..=args.max_n as usize {
        let graphs = connected_graphs_up_to_isomorphism(n)?;
        let results: Vec<Result<Result<Checked, String>, CliError>> = graphs.par_iter().map(check_graph).collect();
        let mut configurations = 0usize;
        for (g, result) in graphs.iter().zip(results) {
            match result? {
                Ok(c) => configurations += c.configurations,
                Err(reason) => {
                    return Err(CliError::Verification(format!(
                        "{out}graph `{}`: {reason}",
                        g.to_string().replace('\n', " ").trim_end()
                    )))
                }
            }
        }
        let _ = writeln!(
            out,
            "PASS n={n}: {} graphs up to isomorphism, {configurations} configurations",
            graphs.len()
        );
    }
    Ok(out)
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {path}: {e}")))
    }
}

fn commented(trace: impl std::fmt::Display) -> String {
    trace.to_string().lines().map(|line| format!("# {line}\n")).collect()
}

pub fn bijection(args: BijectionArgs) -> Result<String, CliError> {
    let source = args.graph.load()?;
    require_connected(&source)?;
    let g = &source.graph;
    let text = read_input(&args.input)?;
    let label = if args.input == "-" {
        "standard input"
    } else {
        args.input.as_str()
    };
    let at = |e: burnoff_core::Error| CliError::input(format!("{label}: {e}"));
    match args.direction {
        Direction::ToTree => {
            let c = parse_configuration(g, &text).map_err(at)?;
            if args.trace {
                let (t, trace) = config_to_tree_traced(&c).map_err(at)?;
                Ok(commented(trace) + &format_tree(g.n(), &t))
            } else {
                Ok(format_tree(g.n(), &config_to_tree(&c).map_err(at)?))
            }
        }
        Direction::ToConfig => {
            let t = parse_tree(g.n(), &text).map_err(at)?;
            if args.trace {
                let (c, trace) = tree_to_config_traced(g, &t).map_err(at)?;
                Ok(commented(trace) + &format_configuration(&c))
            } else {
                Ok(format_configuration(&tree_to_config(g, &t).map_err(at)?))
            }
        }
    }
}

pub fn enumerate(args: EnumerateArgs) -> Result<String, CliError> {
    let source = args.graph.load()?;
    require_vertices(&source)?;
    let g = &source.graph;
    match args.what {
        Listing::Configs => Ok(enumerate_r_bruteforce(g)?.iter().map(format_configuration).collect()),
        Listing::Trees => {
            let total = count_r(g);
            if total.value() > &TREE_LISTING_LIMIT.into() {
                return Err(CliError::input(format!(
                    "the cone has {total} spanning trees; listing stops at {TREE_LISTING_LIMIT}"
                )));
            }
            let cone = g.cone();
            let mut out = String::new();
            for (i, t) in enumerate_spanning_trees(cone.graph()).enumerate() {
                let _ = writeln!(out, "# tree {}", i + 1);
                out.push_str(&format_tree(g.n(), &t));
            }
            Ok(out)
        }
    }
}
