//! The permanent route and the routing-class route compute the same
//! probabilities; the routing-class form just has far fewer terms.
//!
//! Run with `cargo run --example permanent_oracle`.

use multiphoton::combinat::{enumerate_compositions, enumerate_routing_matrices, Composition};
use multiphoton::optics::random_unitary;
use multiphoton::oracle::p_via_permanent;
use multiphoton::transition::p_quantum;

fn main() {
    // Exhaustive cross-check on a seeded Haar-random 4-port matrix.
    let k = 4;
    let u = random_unitary(k, 2024);
    let mut max_dev: f64 = 0.0;
    let mut pairs = 0usize;
    for m in 1..=4u32 {
        let comps: Vec<Composition> = enumerate_compositions(m, k).collect();
        for n in &comps {
            for c in &comps {
                let routing = p_quantum(&u, n, c).unwrap().probability;
                let permanent = p_via_permanent(&u, n, c).unwrap();
                max_dev = max_dev.max((routing - permanent).abs());
                pairs += 1;
            }
        }
    }
    println!("random 4-port unitary, every (input, output) pair up to m = 4:");
    println!("  {pairs} pairs checked, max |P_routing - P_permanent| = {max_dev:.2e}");

    // Term-count reduction: m! permanent terms collapse into routing classes.
    println!("\nterm counts for ten photons split evenly on a two-port device:");
    let n = Composition::new([5, 5]);
    let classes = enumerate_routing_matrices(&n, &n).len();
    let factorial: u64 = (1..=10).product();
    println!("  permanent terms: 10! = {factorial}");
    println!("  routing classes: {classes}");
}
