//! CSV and JSON emission. Every reported number is rounded to 12
//! significant digits, so files are byte-stable across platforms.

use cogradio_core::analysis::{Experiment, SchemeEval, SweepPoint};
use cogradio_core::channel::ChannelRealization;
use serde_json::{json, Value};

use crate::channel_file::channel_to_json;

pub const SWEEP_HEADER: &str = "scheme,P_dB,rate_bits,t_star,alpha,u,rate1,rate2,trials,seed";

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// JSON number with 12 significant digits; `null` when not finite.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(round12(x))
    } else {
        Value::Null
    }
}

fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn csv_num(x: f64) -> String {
    if x.is_finite() {
        round12(x).to_string()
    } else {
        String::new()
    }
}

fn csv_opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, csv_num)
}

/// One row per `(scheme, P_dB)`, grouped by scheme in configured order.
pub fn sweep_csv(points: &[SweepPoint], with_stderr: bool) -> String {
    let mut out = String::from(SWEEP_HEADER);
    if with_stderr {
        out.push_str(",rate_stderr");
    }
    out.push('\n');
    let n_schemes = points.first().map_or(0, |p| p.summaries.len());
    for s in 0..n_schemes {
        for point in points {
            let sum = &point.summaries[s];
            let fields = [
                sum.scheme.name().to_string(),
                csv_num(point.p_db),
                csv_num(sum.rate),
                csv_num(sum.t_star),
                csv_opt(sum.alpha),
                csv_opt(sum.u),
                csv_num(sum.rate1),
                csv_num(sum.rate2),
                point.trials.to_string(),
                point.seed.to_string(),
            ];
            out.push_str(&fields.join(","));
            if with_stderr {
                out.push(',');
                out.push_str(&csv_num(sum.rate_stderr));
            }
            out.push('\n');
        }
    }
    out
}

fn params_json(exp: &Experiment) -> Value {
    json!({
        "p": num(exp.params.p),
        "beta": num(exp.params.beta),
        "M": exp.params.antennas,
        "pathloss_exponent": num(exp.params.pathloss_exponent),
    })
}

pub fn sweep_json(exp: &Experiment, points: &[SweepPoint]) -> Value {
    let points: Vec<Value> = points
        .iter()
        .map(|point| {
            let results: Vec<Value> = point
                .summaries
                .iter()
                .map(|s| {
                    json!({
                        "scheme": s.scheme.name(),
                        "rate_bits": num(s.rate),
                        "rate_stderr": num(s.rate_stderr),
                        "t_star": num(s.t_star),
                        "alpha": opt_num(s.alpha),
                        "u": opt_num(s.u),
                        "rate1": num(s.rate1),
                        "rate2": num(s.rate2),
                    })
                })
                .collect();
            json!({ "P_dB": num(point.p_db), "results": results })
        })
        .collect();
    json!({
        "scenario": exp.scenario.name(),
        "params": params_json(exp),
        "trials": exp.trials,
        "seed": exp.seed,
        "points": points,
    })
}

pub fn eval_json(
    exp: &Experiment,
    p_db: f64,
    trial: Option<u64>,
    ch: &ChannelRealization,
    evals: &[SchemeEval],
) -> Value {
    let results: Vec<Value> = evals
        .iter()
        .map(|e| {
            let d = &e.diagnostics;
            json!({
                "scheme": e.scheme.name(),
                "rate_bits": num(e.total_rate),
                "t_star": num(e.t_star),
                "alpha": opt_num(e.alpha),
                "u": opt_num(e.u),
                "rate1": num(e.rate1),
                "rate2": num(e.rate2),
                "branch": d.branch.map(|b| b.name()),
                "decodable": d.decodable,
                "weak_interference": d.weak_interference,
                "singular": d.singular,
                "failures": d.failures,
            })
        })
        .collect();
    json!({
        "scenario": exp.scenario.name(),
        "P_dB": num(p_db),
        "params": params_json(exp),
        "seed": exp.seed,
        "trial": trial,
        "channel": channel_to_json(ch),
        "results": results,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeRow {
    pub scheme: &'static str,
    pub slope: f64,
    pub reference: f64,
}

pub fn slope_json(exp: &Experiment, low: f64, high: f64, rows: &[SlopeRow]) -> Value {
    let slopes: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "scheme": r.scheme,
                "slope": num(r.slope),
                "reference": num(r.reference),
                "difference": num(r.slope - r.reference),
            })
        })
        .collect();
    json!({
        "scenario": exp.scenario.name(),
        "params": params_json(exp),
        "P_dB_low": num(low),
        "P_dB_high": num(high),
        "trials": exp.trials,
        "seed": exp.seed,
        "slopes": slopes,
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
