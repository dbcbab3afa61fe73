//! fixtures against the published schema

use std::path::Path;

use serde_json::Value;
use swssb_lab::ExperimentConfig;

fn root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(root().join("schema/experiment.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn fixtures() -> Vec<(String, Value)> {
    let mut out: Vec<(String, Value)> = std::fs::read_dir(root().join("fixtures"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .map(|p| (p.display().to_string(), serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap()))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[test]
fn every_fixture_is_schema_valid_and_loads() {
    let v = validator();
    let all = fixtures();
    assert!(all.len() >= 15);
    for (path, doc) in &all {
        let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{path}: {errors:?}");
        let cfg = ExperimentConfig::load(path).unwrap();
        let again: Value = serde_json::from_str(&cfg.to_json()).unwrap();
        assert!(v.is_valid(&again), "{path}: serialized form leaves the schema");
    }
}

#[test]
fn schema_rejects_what_the_loader_rejects() {
    let v = validator();
    let (_, base) = fixtures().into_iter().find(|(p, _)| p.ends_with("chain_nu050.json")).unwrap();
    let mutate = |f: &dyn Fn(&mut Value)| {
        let mut d = base.clone();
        f(&mut d);
        d
    };
    let bad = [
        mutate(&|d| d["name"] = "has space".into()),
        mutate(&|d| d["model"]["filling"] = 1.5.into()),
        mutate(&|d| d["model"]["kind"] = "honeycomb".into()),
        mutate(&|d| d["estimator"] = serde_json::json!({"kind": "renyi"})),
        mutate(&|d| d["ell"] = serde_json::json!({"from": 1, "to": 5, "step": 0})),
        mutate(&|d| d["extra"] = 1.into()),
    ];
    for d in &bad {
        assert!(!v.is_valid(d), "{d}");
        assert!(ExperimentConfig::from_json(&d.to_string()).is_err(), "{d}");
    }
}
