//! JSON reports for single simulations and closed-form queries.

use pdsearch_core::analytic::{iteration_bound, required_iterations, success_prob};
use pdsearch_core::sim::run_search;
use pdsearch_core::{IterationPlan, MarkedSet, SearchShape};
use serde::Serialize;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TripleReport {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulateReport {
    pub n: usize,
    #[serde(rename = "N")]
    pub items: usize,
    #[serde(rename = "M")]
    pub marked: usize,
    pub q: u64,
    pub p_success_sim: f64,
    /// Absent when nothing is marked.
    pub p_success_analytic: Option<f64>,
    pub triple: TripleReport,
}

/// Iteration count used when none is given: `⌊π/2θ⌋`, or 0 with no matches.
pub fn auto_iterations(marked: &MarkedSet) -> Result<u64> {
    if marked.is_empty() {
        return Ok(0);
    }
    let shape = SearchShape::new(marked.items() as u64, marked.len() as u64)?;
    Ok(required_iterations(&shape).q)
}

pub fn simulate(n: usize, marked: &MarkedSet, q: u64) -> Result<SimulateReport> {
    let state = run_search(n, marked, q)?;
    let triple = state.extract_amplitude_triple(marked, q)?;
    let p_success_analytic = if marked.is_empty() {
        None
    } else {
        let shape = SearchShape::new(marked.items() as u64, marked.len() as u64)?;
        Some(success_prob(q, &shape))
    };
    Ok(SimulateReport {
        n,
        items: marked.items(),
        marked: marked.len(),
        q,
        p_success_sim: state.success_probability(marked)?,
        p_success_analytic,
        triple: TripleReport {
            a: triple.a,
            b: triple.b,
            c: triple.c,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeReport {
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub items: Option<u64>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub marked: Option<u64>,
    pub ratio: f64,
    pub y: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanReport {
    pub q: u64,
    pub q_exact: f64,
    pub q_bound: f64,
    pub p_success: f64,
    pub p_lower_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticReport {
    pub shape: ShapeReport,
    pub plan: PlanReport,
}

pub fn analytic(shape: &SearchShape) -> AnalyticReport {
    let IterationPlan {
        q,
        q_exact,
        p_success,
        p_lower_bound,
    } = required_iterations(shape);
    AnalyticReport {
        shape: ShapeReport {
            items: shape.items(),
            marked: shape.marked(),
            ratio: shape.ratio(),
            y: shape.y(),
            theta: shape.theta(),
        },
        plan: PlanReport {
            q,
            q_exact,
            q_bound: iteration_bound(shape),
            p_success,
            p_lower_bound,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_marked() {
        let marked = MarkedSet::new(2, [3]).unwrap();
        assert_eq!(auto_iterations(&marked).unwrap(), 2);
        let r = simulate(2, &marked, 2).unwrap();
        assert!((r.p_success_sim - 0.953125).abs() < 1e-12);
        assert!((r.p_success_analytic.unwrap() - 0.953125).abs() < 1e-12);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["N"], 4);
        assert_eq!(json["M"], 1);
    }

    #[test]
    fn nothing_marked() {
        let marked = MarkedSet::empty(3).unwrap();
        assert_eq!(auto_iterations(&marked).unwrap(), 0);
        let r = simulate(3, &marked, 4).unwrap();
        assert_eq!(r.p_success_sim, 0.0);
        assert_eq!(r.p_success_analytic, None);
        assert!(serde_json::to_string(&r)
            .unwrap()
            .contains("\"p_success_analytic\":null"));
    }

    #[test]
    fn ratio_only_shape_omits_counts() {
        let r = analytic(&SearchShape::from_ratio(0.25).unwrap());
        let json = serde_json::to_value(&r).unwrap();
        assert!(json["shape"].get("N").is_none());
        assert_eq!(json["plan"]["q"], 2);
    }
}
