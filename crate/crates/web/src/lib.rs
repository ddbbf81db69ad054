//! Browser demo bindings: three interactive views of the scenario, each
//! returned as a JSON string for the static page to render.

use wasm_bindgen::prelude::*;

use wfsim_core::{
    evaluate, exact_wire_distribution, run_fusion_demo, sample_wire_histogram,
    w_state_rotation_circuit, w_state_unitary_circuit, EvalMode, SamplingMode, WPrepMethod,
};

fn error_json(message: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": message.to_string() }).to_string()
}

/// Analytic inequality curve: `points` samples of I(theta) over [0, pi],
/// with the classical bound and quantum maximum attached.
#[wasm_bindgen]
pub fn inequality_curve(points: u32) -> String {
    let points = points.clamp(2, 4096);
    let samples: Vec<serde_json::Value> = (0..points)
        .map(|i| {
            let theta = std::f64::consts::PI * f64::from(i) / f64::from(points - 1);
            serde_json::json!({
                "theta": theta,
                "i": wfsim_core::inequality_closed_form(theta),
            })
        })
        .collect();
    serde_json::json!({
        "classical_bound": 1.0,
        "quantum_max": 1.5,
        "samples": samples,
    })
    .to_string()
}

/// Full scenario evaluation at one angle: all eight settings, sampled
/// (with per-setting counts) or analytic.
#[wasm_bindgen]
pub fn run_report(theta: f64, shots: u32, seed: u64, analytic: bool, w_method: &str) -> String {
    let method = match w_method.parse::<WPrepMethod>() {
        Ok(m) => m,
        Err(e) => return error_json(e),
    };
    let eval = if analytic {
        EvalMode::Analytic
    } else {
        EvalMode::Sampled {
            shots: u64::from(shots.max(1)),
            seed,
            mode: SamplingMode::ExactPostselect,
            workers: 1,
        }
    };
    match evaluate(theta, method, &eval) {
        Ok(report) => report.to_json(),
        Err(e) => error_json(e),
    }
}

/// W-preparation histogram: analytic probabilities and sampled counts per
/// three-bit outcome.
#[wasm_bindgen]
pub fn w_state_histogram(method: &str, shots: u32, seed: u64) -> String {
    let mut circuit = match method.parse::<WPrepMethod>() {
        Ok(WPrepMethod::Rotation) => w_state_rotation_circuit(),
        Ok(WPrepMethod::Unitary) => w_state_unitary_circuit(),
        Err(e) => return error_json(e),
    };
    for q in [0, 1, 2] {
        circuit.measure(q);
    }
    let shots = u64::from(shots.max(1));
    let exact = match exact_wire_distribution(&circuit) {
        Ok(d) => d,
        Err(e) => return error_json(e),
    };
    let sampled = match sample_wire_histogram(&circuit, shots, seed, "w-state", 1) {
        Ok(h) => h,
        Err(e) => return error_json(e),
    };
    let bins: Vec<serde_json::Value> = exact
        .iter()
        .map(|(bits, p)| {
            let count = sampled.counts.get(bits).copied().unwrap_or(0);
            serde_json::json!({
                "bits": bits,
                "analytic": p,
                "count": count,
                "frequency": count as f64 / sampled.valid_shots as f64,
            })
        })
        .collect();
    serde_json::json!({
        "method": method,
        "shots": shots,
        "seed": seed,
        "bins": bins,
    })
    .to_string()
}

/// Fusion-gate demonstration: postselected (a, b, c, record) histogram and
/// the kept-shot ratio.
#[wasm_bindgen]
pub fn fusion_demo(shots: u32, seed: u64) -> String {
    let shots = u64::from(shots.max(1));
    match run_fusion_demo(shots, seed) {
        Ok(demo) => {
            let valid = demo.histogram.valid_shots;
            let bins: Vec<serde_json::Value> = demo
                .exact
                .iter()
                .map(|(bits, p)| {
                    let count = demo.histogram.counts.get(bits).copied().unwrap_or(0);
                    serde_json::json!({
                        "bits": bits,
                        "analytic": p,
                        "count": count,
                        "frequency": if valid > 0 { count as f64 / valid as f64 } else { 0.0 },
                    })
                })
                .collect();
            serde_json::json!({
                "shots": shots,
                "seed": seed,
                "valid_shots": valid,
                "attempted_shots": demo.histogram.attempted_shots,
                "success_ratio": valid as f64 / demo.histogram.attempted_shots as f64,
                "bins": bins,
            })
            .to_string()
        }
        Err(e) => error_json(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn curve_has_the_right_extremes() {
        let doc: Value = serde_json::from_str(&inequality_curve(65)).unwrap();
        let samples = doc["samples"].as_array().unwrap();
        assert_eq!(samples.len(), 65);
        assert!((samples[0]["i"].as_f64().unwrap() - 1.5).abs() < 1e-12);
        let max = samples
            .iter()
            .map(|s| s["i"].as_f64().unwrap())
            .fold(0.0f64, f64::max);
        assert!((max - 1.5).abs() < 1e-12);
    }

    #[test]
    fn report_round_trips_as_json() {
        let doc: Value = serde_json::from_str(&run_report(
            std::f64::consts::FRAC_PI_4,
            2000,
            7,
            false,
            "rotation",
        ))
        .unwrap();
        assert!(doc.get("error").is_none());
        let i = doc["i_value"].as_f64().unwrap();
        assert!((1.3..1.7).contains(&i));
        let analytic: Value =
            serde_json::from_str(&run_report(0.0, 0, 0, true, "unitary")).unwrap();
        assert!((analytic["i_value"].as_f64().unwrap() - 1.5).abs() < 1e-12);
        let bad: Value = serde_json::from_str(&run_report(0.0, 1, 0, true, "nope")).unwrap();
        assert!(bad.get("error").is_some());
    }

    #[test]
    fn histograms_parse_and_balance() {
        let doc: Value = serde_json::from_str(&w_state_histogram("rotation", 4096, 3)).unwrap();
        let total: u64 = doc["bins"]
            .as_array()
            .unwrap()
            .iter()
            .map(|b| b["count"].as_u64().unwrap())
            .sum();
        assert_eq!(total, 4096);

        let demo: Value = serde_json::from_str(&fusion_demo(4096, 3)).unwrap();
        let ratio = demo["success_ratio"].as_f64().unwrap();
        assert!((ratio - 0.5).abs() < 0.05);
    }
}
