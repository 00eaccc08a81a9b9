//! The discrete-orthogonal-polynomial skeleton of the two-port statistics:
//! Krawtchouk orthogonality, the squared-function identity, and the closed
//! probability generating function.
//!
//! Run with `cargo run --example krawtchouk`.

use multiphoton::combinat::Composition;
use multiphoton::optics::beam_splitter;
use multiphoton::statistics::{krawtchouk_g, p_via_krawtchouk, pgf_value, KrawtchoukContext};
use multiphoton::transition::{output_distribution, p_quantum, StatisticsKind};

fn main() {
    let m = 6;
    let t = 0.3;
    let ctx = KrawtchoukContext::new(m, t);

    println!("orthogonality residuals |sum_c w(c) g_n(c) g_l(c) - h_n d_nl|, m = {m}, T = {t}:");
    let mut max_residual: f64 = 0.0;
    for n in 0..=m {
        for l in 0..=m {
            let sum: f64 = (0..=m)
                .map(|c| ctx.weight(c) * krawtchouk_g(&ctx, n, c) * krawtchouk_g(&ctx, l, c))
                .sum();
            let want = if n == l { ctx.squared_norm(n) } else { 0.0 };
            max_residual = max_residual.max((sum - want).abs());
        }
    }
    println!("  max residual over all (n, l): {max_residual:.2e}");

    println!("\nsquared orthonormal function vs the routing-class probability:");
    let u = beam_splitter(t).unwrap();
    let mut max_gap: f64 = 0.0;
    for n in 0..=m {
        for c in 0..=m {
            let via_polynomials = p_via_krawtchouk(&ctx, n, c);
            let via_routing = p_quantum(&u, &Composition::new([n, m - n]), &Composition::new([c, m - c]))
                .unwrap()
                .probability;
            max_gap = max_gap.max((via_polynomials - via_routing).abs());
        }
    }
    println!("  max |P_krawtchouk - P_routing| over the m = {m} family: {max_gap:.2e}");

    println!("\nprobability generating function G_n(s), m = 3, T = 1/2:");
    let ctx = KrawtchoukContext::new(3, 0.5);
    let u = beam_splitter(0.5).unwrap();
    println!("{:>3}  {:>5}  {:>12}  {:>12}", "n", "s", "closed form", "sum P s^c");
    for n in 0..=3u32 {
        let dist = output_distribution(&u, &Composition::new([n, 3 - n]), StatisticsKind::Boson)
            .unwrap();
        for s in [0.0f64, 0.5, 1.0, 2.0] {
            let direct: f64 = dist
                .entries()
                .iter()
                .map(|(c, p)| p * s.powi(c.count(0) as i32))
                .sum();
            println!("{n:>3}  {s:>5.1}  {:>12.8}  {direct:>12.8}", pgf_value(&ctx, n, s));
        }
    }
}
