//! The `report` subcommand: one JSON document summarising a net.

use anyhow::Result;
use serde::Serialize;
use wizdata_core::classify::buzz_threshold;
use wizdata_core::{
    basic_wizscore, classify_words, fair_wizscore_iterative, fair_wizscore_onelevel,
    fit_power_law, global_wizword_likelihood, pareto_share, reach_comparison, wiznet_coverage,
    ClassCounts, ClassificationConfig, LikelihoodReport, ParetoReport, PowerLawFit,
    ReachComparison, ScoreMethod, ScoreTable, SolverConfig, WordNet,
};

/// Everything that influences the report, echoed back in `config`.
#[derive(Debug, Clone, Serialize)]
pub struct ReportSettings {
    pub input: String,
    pub method: ScoreMethod,
    pub solver: SolverConfig,
    pub classification: ClassificationConfig,
    pub top_fraction: f64,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub tool: ToolInfo,
    pub config: ReportSettings,
    pub net: NetInfo,
    pub scores: ScoreSummaries,
    pub classification: ClassInfo,
    pub likelihood: LikelihoodReport,
    pub hypotheses: HypothesisResults,
}

#[derive(Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Serialize)]
pub struct NetInfo {
    pub nodes: usize,
    pub edges: usize,
    pub max_ref: usize,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl Summary {
    fn of(table: &ScoreTable) -> Option<Self> {
        if table.is_empty() {
            return None;
        }
        let (mut min, mut max, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for (_, v) in table.iter() {
            min = min.min(v);
            max = max.max(v);
            sum += v;
        }
        Some(Summary { min, max, mean: sum / table.len() as f64 })
    }
}

#[derive(Debug, Serialize)]
pub struct SolverSummary {
    pub iterations_used: usize,
    pub final_residual: f64,
    pub converged: bool,
}

#[derive(Debug, Serialize)]
pub struct ScoreSummaries {
    pub basic: Option<Summary>,
    pub fair_onelevel: Option<Summary>,
    pub fair_iterative: Option<Summary>,
    pub solver: SolverSummary,
}

#[derive(Debug, Serialize)]
pub struct ClassInfo {
    pub method: ScoreMethod,
    /// Smallest in-degree that counts as a buzzword, absent if nothing is referenced.
    pub buzz_threshold: Option<usize>,
    pub counts: ClassCounts,
}

/// A test result, or the reason it could not be computed.
#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Outcome<T> {
    Ok(T),
    Err { error: String },
}

impl<T, E: std::fmt::Display> From<Result<T, E>> for Outcome<T> {
    fn from(r: Result<T, E>) -> Self {
        match r {
            Ok(v) => Outcome::Ok(v),
            Err(e) => Outcome::Err { error: e.to_string() },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct HypothesisResults {
    pub pareto: Outcome<ParetoReport>,
    pub power_law: Outcome<PowerLawFit>,
    pub coverage: f64,
    pub reach: Outcome<ReachComparison>,
}

pub fn build_report(net: &WordNet, settings: &ReportSettings) -> Result<AnalysisReport> {
    let basic = basic_wizscore(net);
    let onelevel = fair_wizscore_onelevel(net);
    let (iterative, solver) = fair_wizscore_iterative(net, &settings.solver)?;
    let selected = match settings.method {
        ScoreMethod::Basic => &basic,
        ScoreMethod::FairOnelevel => &onelevel,
        ScoreMethod::FairIterative => &iterative,
    };
    let classification = classify_words(net, selected, &settings.classification)?;

    let degrees: Vec<u64> = net
        .in_degrees()
        .into_iter()
        .filter(|&d| d > 0)
        .map(|d| d as u64)
        .collect();

    Ok(AnalysisReport {
        tool: ToolInfo {
            name: "wizdata",
            version: env!("CARGO_PKG_VERSION"),
        },
        config: settings.clone(),
        net: NetInfo {
            nodes: net.node_count(),
            edges: net.edge_count(),
            max_ref: net.max_ref(),
        },
        scores: ScoreSummaries {
            basic: Summary::of(&basic),
            fair_onelevel: Summary::of(&onelevel),
            fair_iterative: Summary::of(&iterative),
            solver: SolverSummary {
                iterations_used: solver.iterations_used,
                final_residual: solver.final_residual,
                converged: solver.converged,
            },
        },
        classification: ClassInfo {
            method: settings.method,
            buzz_threshold: buzz_threshold(net, settings.classification.buzz_quantile),
            counts: classification.counts(),
        },
        likelihood: global_wizword_likelihood(&classification),
        hypotheses: HypothesisResults {
            pareto: pareto_share(net, settings.top_fraction).into(),
            power_law: fit_power_law(&degrees).into(),
            coverage: wiznet_coverage(net, &classification),
            reach: reach_comparison(net, &classification).into(),
        },
    })
}
