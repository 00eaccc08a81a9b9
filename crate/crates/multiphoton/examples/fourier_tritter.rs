//! Three-port Fourier interferometer: partial cancellation, the cyclic
//! selection rule for balanced outputs, and the quantum-to-classical ratio
//! decomposition.
//!
//! Run with `cargo run --example fourier_tritter`.

use multiphoton::combinat::{enumerate_compositions, Composition};
use multiphoton::optics::fourier;
use multiphoton::suppress::{z3_balanced_rule, RulePrediction};
use multiphoton::transition::{p_classical, p_quantum, qc_ratio};

fn main() {
    let u = fourier(3);
    let ones = Composition::new([1, 1, 1]);

    let q = p_quantum(&u, &ones, &ones).unwrap();
    let cl = p_classical(&u, &ones, &ones).unwrap();
    let r = qc_ratio(&u, &ones, &ones).unwrap();
    println!("one photon per port, balanced output:");
    println!("  routing classes: {} (the 3! permutation matrices)", q.class_count);
    println!("  P_bosons    = {:.9}  (exactly 1/3)", q.probability);
    println!("  P_classical = {:.9}  (exactly 2/9)", cl.probability);
    println!(
        "  ratio       = {:.3} = prefactor {} x interference factor {:.4}",
        r.ratio, r.prefactor, r.interference_factor
    );

    println!("\ncyclic selection rule on the balanced output (1,1,1), m = 3:");
    println!("{:>10}  {:>14}  {:>12}  rule verdict", "input", "2n1+n2 mod 3", "P(1,1,1|n)");
    for n in enumerate_compositions(3, 3) {
        let residue = (2 * n.count(0) + n.count(1)) % 3;
        let p = p_quantum(&u, &n, &ones).unwrap().probability;
        let verdict = match z3_balanced_rule(&n) {
            RulePrediction::Suppressed => "suppressed",
            RulePrediction::Allowed => "allowed",
        };
        println!("{:>10}  {residue:>14}  {p:>12.8}  {verdict}", n.to_string());
    }
}
