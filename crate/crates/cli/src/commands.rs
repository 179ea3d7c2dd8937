//! One function per subcommand. Each expands the threshold grid, runs the
//! points in parallel and returns the records in grid order.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Value};

use prsreduct_core::table::DecisionColumn;
use prsreduct_core::{
    enumerate_all_reducts, AttrSet, DatasetConfig, DecisionTable, Evaluator, Fraction,
    GranularityKind, Measure, OracleOptions, Reducer, ReductResult, Target, Thresholds,
};

use crate::args::{Algo, Chain, Command, CommonArgs, Format};
use crate::error::CliError;
use crate::grid;
use crate::report::{record, Report, RunSpec};

/// Validated inputs shared by every subcommand.
pub struct Prepared {
    pub table: DecisionTable,
    pub grid: Vec<Thresholds>,
    pub target: Target,
    pub kind: GranularityKind,
    pub bins: usize,
}

pub fn dataset_config(args: &CommonArgs) -> Result<DatasetConfig, CliError> {
    let mut config = match &args.config {
        Some(path) => DatasetConfig::from_file(path)?,
        None => DatasetConfig::default(),
    };
    if let Some(d) = &args.decision {
        config.decision_column = DecisionColumn::from_arg(d);
    }
    if let Some(bins) = args.bins {
        config.preprocess.bins = bins;
    }
    config.preprocess.validate()?;
    Ok(config)
}

/// Parses and checks the grid before touching the dataset.
pub fn prepare(args: &CommonArgs) -> Result<Prepared, CliError> {
    let alphas = grid::parse_values(&args.alpha)?;
    let betas = args.beta.as_deref().map(grid::parse_values).transpose()?;
    let grid = grid::thresholds(&alphas, betas.as_deref())?;
    let config = dataset_config(args)?;
    let table = DecisionTable::load(&args.data, &config)?;
    Ok(Prepared {
        table,
        grid,
        target: args.target.into(),
        kind: args.kind.into(),
        bins: config.preprocess.bins,
    })
}

fn run_grid<F>(grid: &[Thresholds], point: F) -> Result<Vec<Map<String, Value>>, CliError>
where
    F: Fn(&Thresholds) -> Result<Vec<Map<String, Value>>, CliError> + Sync + Send,
{
    let per_point: Vec<Vec<Map<String, Value>>> =
        grid.par_iter().map(point).collect::<Result<_, _>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

fn run_algo(reducer: &Reducer<'_>, algo: Algo, kind: GranularityKind) -> ReductResult {
    match algo {
        Algo::AddDel => reducer.addition_deletion(kind),
        Algo::Del => reducer.deletion(kind),
    }
}

#[derive(Serialize)]
struct ReduceRecord {
    alpha: Fraction,
    beta: Fraction,
    target: Target,
    algo: &'static str,
    kind: GranularityKind,
    reduct: Vec<String>,
    length: usize,
    core: Vec<String>,
    delta_full: Fraction,
    delta_reduct: Fraction,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<f64>,
}

fn reduce(p: &Prepared, algo: Algo, timing: bool) -> Result<Vec<Map<String, Value>>, CliError> {
    run_grid(&p.grid, |th| {
        let start = Instant::now();
        let reducer = Reducer::new(&p.table, *th, p.target);
        let result = run_algo(&reducer, algo, p.kind);
        let wall = start.elapsed();
        Ok(vec![record(&ReduceRecord {
            alpha: th.alpha(),
            beta: th.beta(),
            target: p.target,
            algo: algo.as_str(),
            kind: p.kind,
            reduct: p.table.names_of(&result.reduct),
            length: result.reduct.len(),
            core: p.table.names_of(&result.core),
            delta_full: reducer.delta_full(),
            delta_reduct: reducer.delta(&result.reduct),
            verified: result.verified,
            wall_ms: timing.then(|| (wall.as_secs_f64() * 1e6).round() / 1e3),
        })])
    })
}

#[derive(Serialize)]
struct CoreRecord {
    alpha: Fraction,
    beta: Fraction,
    target: Target,
    core: Vec<String>,
    delta_full: Fraction,
}

fn core(p: &Prepared) -> Result<Vec<Map<String, Value>>, CliError> {
    run_grid(&p.grid, |th| {
        let reducer = Reducer::new(&p.table, *th, p.target);
        Ok(vec![record(&CoreRecord {
            alpha: th.alpha(),
            beta: th.beta(),
            target: p.target,
            core: p.table.names_of(&reducer.core()),
            delta_full: reducer.delta_full(),
        })])
    })
}

/// Attribute order for the monotonicity chain.
fn chain_order(p: &Prepared, th: &Thresholds, chain: Chain) -> Vec<usize> {
    let n = p.table.n_conditions();
    match chain {
        Chain::Dataset => (0..n).collect(),
        Chain::Greedy => {
            let ev = Evaluator::new(&p.table, *th);
            let measure = p.target.granular();
            let mut chosen = AttrSet::empty(n);
            let mut order = Vec::with_capacity(n);
            while chosen.len() < n {
                let mut best: Option<(usize, f64)> = None;
                for a in chosen.complement().iter() {
                    let sig = ev
                        .sig_add(a, &chosen, measure, p.kind)
                        .expect("a is not chosen");
                    if best.is_none_or(|(_, s)| sig > s) {
                        best = Some((a, sig));
                    }
                }
                let (a, _) = best.expect("candidates remain");
                chosen.insert(a);
                order.push(a);
            }
            order
        }
    }
}

/// Min-max rescaling to [0, 1]; a flat curve maps to 0.
fn rescale(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi > lo {
        values.iter().map(|v| (v - lo) / (hi - lo)).collect()
    } else {
        vec![0.0; values.len()]
    }
}

const GRANULAR: [(Measure, GranularityKind, &str); 6] = [
    (Measure::GEta, GranularityKind::Ce, "geta_ce"),
    (Measure::GEta, GranularityKind::Kg, "geta_kg"),
    (Measure::GEta, GranularityKind::Cg, "geta_cg"),
    (Measure::GMu, GranularityKind::Ce, "gmu_ce"),
    (Measure::GMu, GranularityKind::Kg, "gmu_kg"),
    (Measure::GMu, GranularityKind::Cg, "gmu_cg"),
];

fn monotonicity(p: &Prepared, chain: Chain) -> Result<Vec<Map<String, Value>>, CliError> {
    run_grid(&p.grid, |th| {
        let ev = Evaluator::new(&p.table, *th);
        let order = chain_order(p, th, chain);
        let n = p.table.n_conditions();
        let prefixes: Vec<AttrSet> = (1..=n)
            .map(|k| AttrSet::from_ids(n, order[..k].iter().copied()))
            .collect();
        let curves: Vec<Vec<f64>> = GRANULAR
            .iter()
            .map(|&(m, kind, _)| {
                rescale(
                    &prefixes
                        .iter()
                        .map(|r| ev.fitness(r, m, kind))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        let rows = prefixes
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let eta = ev.eta(r);
                let mu = ev.mu(r);
                let mut rec = Map::new();
                rec.insert("alpha".into(), Value::from(th.alpha().to_string()));
                rec.insert("beta".into(), Value::from(th.beta().to_string()));
                rec.insert("k".into(), Value::from(i + 1));
                rec.insert(
                    "added".into(),
                    Value::from(p.table.condition(order[i]).name.clone()),
                );
                rec.insert("eta".into(), Value::from(eta.to_f64()));
                rec.insert("mu".into(), Value::from(mu.to_f64()));
                rec.insert("eta_exact".into(), Value::from(eta.to_string()));
                rec.insert("mu_exact".into(), Value::from(mu.to_string()));
                for (curve, &(_, _, name)) in curves.iter().zip(GRANULAR.iter()) {
                    rec.insert(name.into(), Value::from(curve[i]));
                }
                rec
            })
            .collect();
        Ok(rows)
    })
}

/// 1-based ranks by descending score, ties to the smaller attribute id.
fn ranks(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&x, &y| scores[y].total_cmp(&scores[x]).then(x.cmp(&y)));
    let mut rank = vec![0; scores.len()];
    for (pos, a) in order.into_iter().enumerate() {
        rank[a] = pos + 1;
    }
    rank
}

fn significance(p: &Prepared) -> Result<Vec<Map<String, Value>>, CliError> {
    run_grid(&p.grid, |th| {
        let ev = Evaluator::new(&p.table, *th);
        let n = p.table.n_conditions();
        let mut columns: Vec<(String, Vec<f64>)> = vec![
            (
                "eta".into(),
                (0..n)
                    .map(|a| ev.sig_single(a, Measure::Eta, p.kind))
                    .collect(),
            ),
            (
                "mu".into(),
                (0..n)
                    .map(|a| ev.sig_single(a, Measure::Mu, p.kind))
                    .collect(),
            ),
        ];
        for &(m, kind, name) in &GRANULAR {
            columns.push((
                name.into(),
                (0..n).map(|a| ev.sig_single(a, m, kind)).collect(),
            ));
        }
        let ranked: Vec<Vec<usize>> = columns.iter().map(|(_, s)| ranks(s)).collect();
        let rows = (0..n)
            .map(|a| {
                let mut rec = Map::new();
                rec.insert("alpha".into(), Value::from(th.alpha().to_string()));
                rec.insert("beta".into(), Value::from(th.beta().to_string()));
                rec.insert(
                    "attribute".into(),
                    Value::from(p.table.condition(a).name.clone()),
                );
                for (name, scores) in &columns {
                    rec.insert(name.clone(), Value::from(scores[a]));
                }
                for ((name, _), r) in columns.iter().zip(&ranked) {
                    rec.insert(format!("rank_{name}"), Value::from(r[a]));
                }
                rec
            })
            .collect();
        Ok(rows)
    })
}

#[derive(Serialize)]
struct RbarRecord {
    alpha: Fraction,
    beta: Fraction,
    target: Target,
    algo: &'static str,
    kind: GranularityKind,
    k: usize,
    reduct: Vec<String>,
    reduct_consistent: bool,
    rbar: Vec<String>,
    rbar_consistent: bool,
}

fn rbar(p: &Prepared, algo: Algo, k: Option<usize>) -> Result<Vec<Map<String, Value>>, CliError> {
    run_grid(&p.grid, |th| {
        let reducer = Reducer::new(&p.table, *th, p.target);
        let result = run_algo(&reducer, algo, p.kind);
        let k = k.unwrap_or(result.reduct.len());
        let ranked = reducer.rbar(p.kind, k)?;
        Ok(vec![record(&RbarRecord {
            alpha: th.alpha(),
            beta: th.beta(),
            target: p.target,
            algo: algo.as_str(),
            kind: p.kind,
            k,
            reduct: p.table.names_of(&result.reduct),
            reduct_consistent: reducer.is_consistent_set(&result.reduct),
            rbar: p.table.names_of(&ranked),
            rbar_consistent: reducer.is_consistent_set(&ranked),
        })])
    })
}

#[derive(Serialize)]
struct OracleRecord {
    alpha: Fraction,
    beta: Fraction,
    target: Target,
    index: usize,
    reduct: Vec<String>,
    length: usize,
}

fn oracle(p: &Prepared, limit: usize) -> Result<Vec<Map<String, Value>>, CliError> {
    run_grid(&p.grid, |th| {
        let options = OracleOptions { limit, prune: true };
        let all = enumerate_all_reducts(&p.table, th, p.target, options)?;
        Ok(all
            .iter()
            .enumerate()
            .map(|(i, r)| {
                record(&OracleRecord {
                    alpha: th.alpha(),
                    beta: th.beta(),
                    target: p.target,
                    index: i + 1,
                    reduct: p.table.names_of(r),
                    length: r.len(),
                })
            })
            .collect())
    })
}

pub fn build_report(command: &Command) -> Result<Report, CliError> {
    let common = command.common();
    let p = prepare(common)?;
    let (records, algo, chain, k) = match command {
        Command::Reduce(a) => (reduce(&p, a.algo, a.timing)?, Some(a.algo), None, None),
        Command::Core(_) => (core(&p)?, None, None, None),
        Command::Monotonicity(a) => (monotonicity(&p, a.chain)?, None, Some(a.chain), None),
        Command::Significance(_) => (significance(&p)?, None, None, None),
        Command::Rbar(a) => (rbar(&p, a.algo, a.k)?, Some(a.algo), None, a.k),
        Command::Oracle(a) => (oracle(&p, a.limit)?, None, None, None),
    };
    let spec = RunSpec {
        command: command.name().to_string(),
        data: common.data.display().to_string(),
        decision: common.decision.clone(),
        config: common.config.as_ref().map(|c| c.display().to_string()),
        bins: p.bins,
        thresholds: p
            .grid
            .iter()
            .map(|t| (t.alpha().to_string(), t.beta().to_string()))
            .collect(),
        target: p.target.to_string(),
        kind: p.kind.to_string(),
        algo: algo.map(|a| a.as_str().to_string()),
        chain: chain.map(|c| match c {
            Chain::Dataset => "dataset".to_string(),
            Chain::Greedy => "greedy".to_string(),
        }),
        k,
        format: match common.format {
            Format::Csv => "csv".to_string(),
            Format::Json => "json".to_string(),
        },
    };
    Ok(Report { spec, records })
}
