//! End-to-end tests of the `wfsim` binary: flag handling, exit codes,
//! reproducibility of the emitted bytes, and JSON-schema conformance.

use std::process::{Command, Output};

use serde_json::Value;

fn wfsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wfsim"))
        .args(args)
        .env_remove("WFSIM_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = wfsim(args);
    assert!(
        out.status.success(),
        "wfsim {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn json_of(args: &[&str]) -> Value {
    serde_json::from_str(&stdout_of(args)).expect("valid JSON")
}

// ---- a small validator for the subset of JSON Schema the CLI publishes ----

fn resolve<'a>(schema: &'a Value, root: &'a Value) -> &'a Value {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        let path = reference.trim_start_matches("#/");
        let mut node = root;
        for part in path.split('/') {
            node = node.get(part).expect("resolvable $ref");
        }
        node
    } else {
        schema
    }
}

fn validates(instance: &Value, schema: &Value, root: &Value) -> Result<(), String> {
    let schema = resolve(schema, root);
    if let Some(options) = schema.get("oneOf").and_then(Value::as_array) {
        let hits: Vec<_> = options
            .iter()
            .filter(|s| validates(instance, s, root).is_ok())
            .collect();
        return if hits.len() == 1 {
            Ok(())
        } else {
            Err(format!("oneOf matched {} branches", hits.len()))
        };
    }
    if let Some(expected) = schema.get("const") {
        if instance != expected {
            return Err(format!("const mismatch: {instance} != {expected}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(instance) {
            return Err(format!("{instance} not in enum"));
        }
    }
    if let Some(ty) = schema.get("type") {
        let names: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let ok = names.iter().any(|name| match *name {
            "object" => instance.is_object(),
            "array" => instance.is_array(),
            "string" => instance.is_string(),
            "number" => instance.is_number(),
            "integer" => instance.is_u64() || instance.is_i64(),
            "boolean" => instance.is_boolean(),
            "null" => instance.is_null(),
            _ => false,
        });
        if !ok {
            return Err(format!("type mismatch: expected {names:?}, got {instance}"));
        }
    }
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        for key in required.iter().filter_map(Value::as_str) {
            if instance.get(key).is_none() {
                return Err(format!("missing required field `{key}`"));
            }
        }
    }
    if let (Some(props), Some(obj)) = (
        schema.get("properties").and_then(Value::as_object),
        instance.as_object(),
    ) {
        for (key, sub) in props {
            if let Some(value) = obj.get(key) {
                validates(value, sub, root).map_err(|e| format!("{key}: {e}"))?;
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), instance.as_array()) {
        if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
            if (arr.len() as u64) < min {
                return Err(format!("array shorter than {min}"));
            }
        }
        if let Some(max) = schema.get("maxItems").and_then(Value::as_u64) {
            if (arr.len() as u64) > max {
                return Err(format!("array longer than {max}"));
            }
        }
        for (i, item) in arr.iter().enumerate() {
            validates(item, items, root).map_err(|e| format!("[{i}]: {e}"))?;
        }
    }
    Ok(())
}

fn assert_valid(instance: &Value, schema: &Value) {
    if let Err(e) = validates(instance, schema, schema) {
        panic!("schema violation: {e}\ninstance: {instance:#}");
    }
}

// ---- tests ----

#[test]
fn analytic_run_reaches_the_quantum_maximum() {
    let doc = json_of(&["run", "--theta", "pi/4", "--analytic", "--format", "json"]);
    let i = doc["i_value"].as_f64().unwrap();
    assert!((i - 1.5).abs() < 1e-12);
    assert_eq!(doc["sigma_i"].as_f64().unwrap(), 0.0);
    assert_eq!(doc["mode"], "analytic");
}

#[test]
fn sampled_run_lands_near_the_maximum() {
    let doc = json_of(&[
        "run", "--theta", "pi/4", "--shots", "10000", "--seed", "7", "--mode", "exact",
        "--format", "json",
    ]);
    let i = doc["i_value"].as_f64().unwrap();
    let sigma = doc["sigma_i"].as_f64().unwrap();
    assert!((i - 1.5).abs() < 5.0 * sigma, "I = {i}, sigma = {sigma}");
    assert_eq!(doc["counts"].as_array().unwrap().len(), 8);
}

#[test]
fn single_setting_analytic_value() {
    let doc = json_of(&[
        "run", "--theta", "0", "--analytic", "--setting", "A0B0C0", "--format", "json",
    ]);
    assert_eq!(doc["e"].as_f64().unwrap(), -1.0);
}

#[test]
fn identical_seeds_repeat_the_bytes_across_runs_and_workers() {
    let args = [
        "run", "--theta", "pi/4", "--shots", "4000", "--seed", "11", "--format", "json",
    ];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);
    let with_workers = stdout_of(&[
        "run", "--theta", "pi/4", "--shots", "4000", "--seed", "11", "--format", "json",
        "--workers", "4",
    ]);
    assert_eq!(first, with_workers);
}

#[test]
fn omitted_seed_is_printed_and_reproducible() {
    let doc = json_of(&["run", "--theta", "0.3", "--shots", "500", "--format", "json"]);
    let seed = doc["seed"].as_u64().expect("fresh seed is reported");
    let replay = json_of(&[
        "run", "--theta", "0.3", "--shots", "500", "--seed", &seed.to_string(), "--format",
        "json",
    ]);
    assert_eq!(doc, replay);
}

#[test]
fn seed_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_wfsim"))
        .args(["run", "--theta", "0.3", "--shots", "500", "--format", "json"])
        .env("WFSIM_SEED", "4242")
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["seed"].as_u64(), Some(4242));
}

#[test]
fn sweep_csv_shape_and_maxima() {
    let text = stdout_of(&["sweep", "0:pi/2:5", "--analytic", "--format", "csv"]);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(
        lines[0],
        "theta,I,sigma_I,E_000,E_100,E_010,E_001,E_110,E_101,E_011,E_111"
    );
    for row in [1, 3, 5] {
        let i: f64 = lines[row].split(',').nth(1).unwrap().parse().unwrap();
        assert!((i - 1.5).abs() < 1e-12, "row {row}: I = {i}");
    }
    let mid: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!(mid < 1.5 - 0.2);
}

#[test]
fn single_point_sweep_matches_run() {
    let sweep = json_of(&[
        "sweep", "pi/4:pi/4:1", "--shots", "1000", "--seed", "5", "--format", "json",
    ]);
    let run = json_of(&[
        "run", "--theta", "pi/4", "--shots", "1000", "--seed", "5", "--format", "json",
    ]);
    assert_eq!(sweep["rows"][0], run);
}

#[test]
fn w_state_histogram_is_balanced() {
    let doc = json_of(&[
        "w-state", "--method", "rotation", "--shots", "8192", "--seed", "1", "--format", "json",
    ]);
    let bins = doc["bins"].as_array().unwrap();
    assert_eq!(bins.len(), 8);
    let sigma = (8192.0f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
    for bin in bins {
        let bits = bin["bits"].as_str().unwrap();
        let count = bin["count"].as_u64().unwrap() as f64;
        match bits {
            "001" | "010" | "100" => {
                assert!((count - 8192.0 / 3.0).abs() <= 5.0 * sigma, "{bits}: {count}")
            }
            _ => assert_eq!(count, 0.0, "{bits} should be empty"),
        }
    }
}

#[test]
fn both_w_methods_share_the_analytic_column() {
    let args = |m: &'static str| {
        vec!["w-state", "--method", m, "--shots", "64", "--seed", "1", "--format", "json"]
    };
    let rotation = json_of(&args("rotation"));
    let unitary = json_of(&args("unitary"));
    for (a, b) in rotation["bins"]
        .as_array()
        .unwrap()
        .iter()
        .zip(unitary["bins"].as_array().unwrap())
    {
        assert_eq!(a["bits"], b["bits"]);
        let (pa, pb) = (a["analytic"].as_f64().unwrap(), b["analytic"].as_f64().unwrap());
        assert!((pa - pb).abs() < 1e-10, "{}: {pa} vs {pb}", a["bits"]);
    }
}

#[test]
fn fusion_demo_keeps_half_and_anticorrelates() {
    let doc = json_of(&["fusion-demo", "--shots", "8192", "--seed", "9", "--format", "json"]);
    let ratio = doc["success_ratio"].as_f64().unwrap();
    assert!((ratio - 0.5).abs() < 0.03, "ratio {ratio}");
    for bin in doc["bins"].as_array().unwrap() {
        let bits = bin["bits"].as_str().unwrap().as_bytes();
        if bin["count"].as_u64().unwrap() > 0 {
            assert_ne!(bits[0], bits[3]);
        }
    }
}

#[test]
fn classical_bound_is_exactly_one() {
    let doc = json_of(&["classical-bound", "--format", "json"]);
    assert_eq!(doc["max_i"].as_f64(), Some(1.0));
    assert_eq!(doc["strategies"].as_u64(), Some(64));
    assert_eq!(doc["all_values_equal_one"].as_bool(), Some(true));
}

#[test]
fn export_is_byte_stable_and_failures_exit_one() {
    let dir = std::env::temp_dir().join("wfsim-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scenario.qasm");
    let path_str = path.to_str().unwrap();
    let args = ["export", "--theta", "pi/4", "--setting", "A1B1C1", "--out", path_str];
    stdout_of(&args);
    let first = std::fs::read(&path).unwrap();
    stdout_of(&args);
    let second = std::fs::read(&path).unwrap();
    assert_eq!(first, second);
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("OPENQASM 2.0;\n"));
    assert!(!text.contains('\r'));

    let bad = wfsim(&[
        "export", "--theta", "pi/4", "--setting", "A1B1C1", "--out",
        "/nonexistent-dir/x.qasm",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&bad.stderr).is_empty());
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(wfsim(&["run", "--theta", "pie"]).status.code(), Some(2));
    assert_eq!(wfsim(&["run"]).status.code(), Some(2));
    assert_eq!(wfsim(&["sweep", "0:1"]).status.code(), Some(2));
    assert_eq!(wfsim(&["sweep", "0:1:0"]).status.code(), Some(2));
    assert_eq!(wfsim(&[]).status.code(), Some(2));
    let bad_setting = wfsim(&["run", "--theta", "0", "--setting", "A9B0C0"]);
    assert_eq!(bad_setting.status.code(), Some(2));
}

#[test]
fn every_json_output_validates_against_the_published_schema() {
    let schema: Value = serde_json::from_str(&stdout_of(&["--schema"])).unwrap();
    let documents = [
        json_of(&["run", "--theta", "pi/4", "--analytic", "--format", "json"]),
        json_of(&["run", "--theta", "pi/4", "--shots", "600", "--seed", "3", "--format", "json"]),
        json_of(&[
            "run", "--theta", "pi/8", "--shots", "800", "--seed", "3", "--mode", "rejection",
            "--format", "json",
        ]),
        json_of(&[
            "run", "--theta", "0.2", "--setting", "A1B0C0", "--shots", "500", "--seed", "2",
            "--format", "json",
        ]),
        json_of(&["sweep", "0:pi/4:3", "--analytic", "--format", "json"]),
        json_of(&["w-state", "--shots", "1000", "--seed", "4", "--format", "json"]),
        json_of(&["fusion-demo", "--shots", "1000", "--seed", "4", "--format", "json"]),
        json_of(&["classical-bound", "--format", "json"]),
        json_of(&[
            "export", "--theta", "0.1", "--setting", "A0B0C0", "--out",
            "/tmp/wfsim-schema-check.qasm", "--format", "json",
        ]),
    ];
    for doc in &documents {
        assert_valid(doc, &schema);
    }
}
