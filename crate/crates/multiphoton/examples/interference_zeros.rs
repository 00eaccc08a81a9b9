//! Exact zeros of three-photon transitions as the transmittance varies.
//! P_1(1) = T(2R - T)^2 vanishes at T = 2/3 and P_1(2) = R(R - 2T)^2 at
//! T = 1/3: two routing classes cancel exactly.
//!
//! Run with `cargo run --example interference_zeros`.

use multiphoton::combinat::Composition;
use multiphoton::optics::beam_splitter;
use multiphoton::transition::p_quantum;

fn main() {
    let n = Composition::new([1, 2]);
    println!("{:>8}  {:>12}  {:>12}", "T", "P_1(1)", "P_1(2)");
    for step in 0..=12 {
        let t = step as f64 / 12.0;
        let u = beam_splitter(t).unwrap();
        let p1 = p_quantum(&u, &n, &Composition::new([1, 2])).unwrap().probability;
        let p2 = p_quantum(&u, &n, &Composition::new([2, 1])).unwrap().probability;
        let mark = |p: f64| if p < 1e-12 { "  <- zero" } else { "" };
        println!("{t:>8.4}  {p1:>12.8}  {p2:>12.8}{}{}", mark(p1), mark(p2));
    }
    println!("\nT = 4/12 = 1/3 kills P_1(2); T = 8/12 = 2/3 kills P_1(1).");
}
