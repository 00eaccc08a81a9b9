//! The quantum-to-classical ratio split into its two factors: the
//! symmetrization prefactor (a pure counting bonus) and the interference
//! factor (bounded by one, Jensen).
//!
//! Run with `cargo run --example ratio_decomposition`.

use multiphoton::combinat::{enumerate_compositions, Composition};
use multiphoton::optics::beam_splitter;
use multiphoton::transition::{p_quantum, qc_ratio};

fn main() {
    let m = 4;
    let u = beam_splitter(0.5).unwrap();
    println!("four photons at a balanced splitter:");
    println!(
        "{:>8} {:>8}  {:>8}  {:>9}  {:>13}  {:>8}",
        "input", "output", "classes", "prefactor", "interference", "ratio"
    );
    for n in enumerate_compositions(m, 2) {
        for c in enumerate_compositions(m, 2) {
            let report = p_quantum(&u, &n, &c).unwrap();
            match qc_ratio(&u, &n, &c) {
                Ok(r) => println!(
                    "{:>8} {:>8}  {:>8}  {:>9}  {:>13.6}  {:>8.4}",
                    format!("({n})"),
                    format!("({c})"),
                    report.class_count,
                    r.prefactor,
                    r.interference_factor,
                    r.ratio
                ),
                Err(_) => println!(
                    "{:>8} {:>8}  {:>8}  {:>9}  {:>13}  {:>8}",
                    format!("({n})"),
                    format!("({c})"),
                    report.class_count,
                    "-",
                    "-",
                    "undefined"
                ),
            }
        }
    }
    println!();
    println!("single-class transitions sit exactly at interference factor 1;");
    println!("the balanced 2+2 input on the split output lands at ratio 2/3,");
    println!("between full cancellation (0) and the Jensen bound (prefactor 6).");

    let r = qc_ratio(&u, &Composition::new([2, 2]), &Composition::new([2, 2])).unwrap();
    println!(
        "\n(2,2) -> (2,2): ratio {:.6} with prefactor {} and interference factor {:.6}",
        r.ratio, r.prefactor, r.interference_factor
    );
}
