//! The JSON bundle format end to end: serialize a triple, read it back, and
//! produce the same analysis the CLI's `analyze` subcommand emits.
//!
//! Run: `cargo run --example analyze_bundle`

use nilherm::complex::classify;
use nilherm::construct::standard_heisenberg_abelian_triple;
use nilherm::hermitian::{is_pluriclosed, MetricComplexTriple};
use nilherm::io::{decode_bundle, triple_to_bundle};

fn main() {
    let t = standard_heisenberg_abelian_triple(0, 1).unwrap();
    let bundle = triple_to_bundle(&t);
    let text = serde_json::to_string_pretty(&bundle).unwrap();
    println!("bundle JSON:\n{text}\n");

    let decoded = decode_bundle(&serde_json::from_str(&text).unwrap()).unwrap();
    let triple = MetricComplexTriple::new(
        decoded.algebra.clone(),
        decoded.j.unwrap(),
        decoded.metric.unwrap(),
    )
    .unwrap();
    let report = triple.algebra.report().unwrap();
    let class = classify(&triple.algebra, &triple.j);
    println!("report: {report:?}");
    println!("classification: {class:?}");
    println!("pluriclosed: {}", is_pluriclosed(&triple));
}
