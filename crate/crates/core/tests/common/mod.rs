#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::OnceLock;

use serde_json::Value;

/// Reference values generated by `tests/oracle/oracle.py` (mpmath, 40 digits).
pub fn oracle() -> &'static HashMap<String, Value> {
    static DATA: OnceLock<HashMap<String, Value>> = OnceLock::new();
    DATA.get_or_init(|| {
        let text = include_str!("../data/oracle.json");
        serde_json::from_str(text).expect("oracle.json parses")
    })
}

pub fn scalar(key: &str) -> f64 {
    match &oracle()[key] {
        Value::String(s) => s.parse().unwrap(),
        other => panic!("{key} is not a scalar: {other}"),
    }
}

pub fn vector(key: &str) -> Vec<f64> {
    oracle()[key]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().parse().unwrap())
        .collect()
}

pub fn rows(key: &str) -> Vec<Vec<f64>> {
    oracle()[key]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|v| v.as_str().unwrap().parse().unwrap()).collect())
        .collect()
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}
pub mod pr;
