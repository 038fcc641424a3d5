//! Salamon structure-equation notation: parsing, printing, and the errors
//! the front end reports (syntax, range, and d² ≠ 0).
//!
//! Run: `cargo run --example salamon`

use nilherm::lie::{parse_salamon, print_salamon};

fn main() {
    let l = parse_salamon("(0,0,0,0,13-24,14+23)", 6).unwrap();
    println!("parsed h3(C): dim {}", l.dim());
    for (&(i, j), v) in l.brackets() {
        let target: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.to_string().eq("0"))
            .map(|(k, c)| format!("{c} e{}", k + 1))
            .collect();
        println!("  [e{}, e{}] = {}", i + 1, j + 1, target.join(" + "));
    }
    println!("printed back: {}", print_salamon(&l).unwrap());

    // Rational coefficients round-trip too.
    let half = parse_salamon("(0,0,1/212)", 3).unwrap();
    println!("half-coefficient tuple: {}", print_salamon(&half).unwrap());

    for bad in ["(0,0", "(0,0,19)", "(13,0,12)"] {
        match parse_salamon(bad, 3) {
            Err(e) => println!("{bad:<12} -> {e}"),
            Ok(_) => unreachable!(),
        }
    }
}
