use std::io::{Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use widthlab::experiments::{
    bell_report, boolw_vs_rw_experiment, envelope_report, lemma1_experiment, scaling_experiment, write_report, Caps,
    ExperimentConfig, ExperimentReport, Mode, ReportFormat,
};
use widthlab::gf2::rank_distribution_oracle;
use widthlab::graphs::{emit_edge_list, emit_graph6, parse_edge_list_blocks, parse_graph6};
use widthlab::widths::{balanced_cut_lower_bound, exact_f_width, tree_width_under, BooleanCut, CutFunction, CutRank};
use widthlab::{bell, galois_number, sample_gnp_half, DecompositionTree, Graph, RngSeed};

use crate::{
    CheckArgs, Command, ExpArgs, Experiment, GenArgs, GraphFormat, InputArgs, LbArgs, Measure, ModeArg, OracleCommand,
    ReportFormatArg, WidthArgs,
};

pub enum Outcome {
    Success,
    GraphFailures,
}

pub fn run(command: Command, out: &mut impl Write) -> Result<Outcome> {
    match command {
        Command::Gen(args) => gen(args, out).map(|()| Outcome::Success),
        Command::Width(args) => width(args, out),
        Command::Lb(args) => lb(args, out),
        Command::Check(args) => check(args, out).map(|()| Outcome::Success),
        Command::Exp(args) => exp(args, out).map(|()| Outcome::Success),
        Command::Oracle(args) => oracle(args, out).map(|()| Outcome::Success),
    }
}

fn cut_function(measure: Measure) -> Box<dyn CutFunction> {
    match measure {
        Measure::Rank => Box::new(CutRank),
        Measure::Bool => Box::new(BooleanCut::default()),
    }
}

/// Integers for the rank measure, six decimals for the boolean one.
fn format_width(measure: Measure, value: f64) -> String {
    match measure {
        Measure::Rank => format!("{}", value as u64),
        Measure::Bool => format!("{value:.6}"),
    }
}

fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

/// Input graphs in order; unparsable graph6 lines become per-graph errors.
fn read_graphs(input: &InputArgs) -> Result<Vec<Result<Graph, String>>> {
    let text = read_source(&input.input)?;
    if input.edge_list {
        let graphs = parse_edge_list_blocks(&text).with_context(|| format!("parsing {}", input.input))?;
        return Ok(graphs.into_iter().map(Ok).collect());
    }
    Ok(text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_graph6(l.trim()).map_err(|e| e.to_string()))
        .collect())
}

fn gen(args: GenArgs, out: &mut impl Write) -> Result<()> {
    let master = RngSeed(args.seed);
    for i in 0..args.count {
        let g = sample_gnp_half(args.n, master.derive(args.n as u64, i as u64));
        match args.format {
            GraphFormat::G6 => writeln!(out, "{}", emit_graph6(&g))?,
            GraphFormat::Edges => {
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", emit_edge_list(&g))?;
            }
        }
    }
    Ok(())
}

fn width(args: WidthArgs, out: &mut impl Write) -> Result<Outcome> {
    let f = cut_function(args.measure);
    let mut failed = false;
    for (index, graph) in read_graphs(&args.input)?.into_iter().enumerate() {
        let result = graph.and_then(|g| exact_f_width(&g, f.as_ref(), args.cap).map_err(|e| e.to_string()));
        match result {
            Ok(res) => {
                writeln!(out, "{index} {}", format_width(args.measure, res.value))?;
                if args.witness {
                    write!(out, "{}", res.tree.to_text())?;
                }
            }
            Err(e) => {
                eprintln!("{index} error: {e}");
                failed = true;
            }
        }
    }
    Ok(if failed {
        Outcome::GraphFailures
    } else {
        Outcome::Success
    })
}

fn lb(args: LbArgs, out: &mut impl Write) -> Result<Outcome> {
    let f = cut_function(args.measure);
    let mut failed = false;
    for (index, graph) in read_graphs(&args.input)?.into_iter().enumerate() {
        let result = graph.and_then(|g| balanced_cut_lower_bound(&g, f.as_ref(), args.cap).map_err(|e| e.to_string()));
        match result {
            Ok(bound) => writeln!(out, "{index} {} {}", format_width(args.measure, bound.value), bound.cut)?,
            Err(e) => {
                eprintln!("{index} error: {e}");
                failed = true;
            }
        }
    }
    Ok(if failed {
        Outcome::GraphFailures
    } else {
        Outcome::Success
    })
}

fn check(args: CheckArgs, out: &mut impl Write) -> Result<()> {
    let graphs = read_graphs(&args.input)?;
    let graph = match graphs.into_iter().nth(args.index) {
        Some(Ok(g)) => g,
        Some(Err(e)) => bail!("graph {}: {e}", args.index),
        None => bail!("input has no graph at index {}", args.index),
    };
    let tree = DecompositionTree::parse_text(&read_source(&args.tree)?)?;
    let res = tree_width_under(&graph, &tree, cut_function(args.measure).as_ref())?;
    writeln!(out, "{} {}", args.index, format_width(args.measure, res.value))?;
    Ok(())
}

/// Parses `8,10,12` and inclusive ranges `3..12`, or a mix of both.
pub fn parse_n_list(list: &str) -> Result<Vec<usize>> {
    let mut values = Vec::new();
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: usize = lo
                .trim()
                .parse()
                .with_context(|| format!("bad range start in {part:?}"))?;
            let hi: usize = hi
                .trim()
                .parse()
                .with_context(|| format!("bad range end in {part:?}"))?;
            if lo > hi {
                bail!("empty range {part:?}");
            }
            values.extend(lo..=hi);
        } else {
            values.push(part.parse().with_context(|| format!("bad size {part:?}"))?);
        }
    }
    if values.is_empty() {
        bail!("empty n list");
    }
    Ok(values)
}

fn exp(args: ExpArgs, out: &mut impl Write) -> Result<()> {
    let default_list = match args.experiment {
        Experiment::Lemma1 => "6,9,12",
        Experiment::Scaling => "8,10,12,14",
        Experiment::BoolwRw => "6..10",
        Experiment::Bell => "3..30",
        Experiment::Envelope => "3..12",
    };
    let n_values = parse_n_list(args.n_list.as_deref().unwrap_or(default_list))?;
    let name = match args.experiment {
        Experiment::Lemma1 => "lemma1",
        Experiment::Scaling => "scaling",
        Experiment::BoolwRw => "boolw-rw",
        Experiment::Bell => "bell",
        Experiment::Envelope => "envelope",
    };
    let caps = Caps {
        submatrix_work: args.work_cap,
        sampled_draws: args.draws,
        exact_n: args.exact_cap,
        ..Caps::default()
    };
    let mode = match args.mode {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Sampled => Mode::Sampled,
    };
    let cfg = ExperimentConfig::new(name, n_values.clone(), args.trials, args.seed)
        .with_mode(mode)
        .with_caps(caps);
    let mut report: ExperimentReport = match args.experiment {
        Experiment::Lemma1 => lemma1_experiment(&cfg)?,
        Experiment::Scaling => scaling_experiment(&cfg)?,
        Experiment::BoolwRw => boolw_vs_rw_experiment(&cfg)?,
        Experiment::Bell => bell_report(*n_values.iter().max().expect("nonempty"))?,
        Experiment::Envelope => envelope_report(&n_values),
    };
    report.config.master_seed = RngSeed(args.seed);
    let format = match args.format {
        ReportFormatArg::Csv => ReportFormat::Csv,
        ReportFormatArg::Jsonl => ReportFormat::JsonLines,
    };
    let path = write_report(&report, format, Path::new(&args.out))?;
    eprintln!("wrote {}", path.display());
    write!(out, "{}", report.summary_text())?;
    Ok(())
}

fn oracle(cmd: OracleCommand, out: &mut impl Write) -> Result<()> {
    match cmd {
        OracleCommand::Rankdist { m, n } => {
            let dist = rank_distribution_oracle(m, n)?;
            for (r, count) in dist.counts.iter().enumerate() {
                writeln!(out, "{r} {count}/{}", dist.total)?;
            }
        }
        OracleCommand::Bell { n } => writeln!(out, "{}", bell(n)?)?,
        OracleCommand::Galois { r } => writeln!(out, "{}", galois_number(r))?,
    }
    Ok(())
}
