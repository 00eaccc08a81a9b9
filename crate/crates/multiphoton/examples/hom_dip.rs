//! Two-photon interference at a beam splitter: the Hong-Ou-Mandel dip.
//!
//! Run with `cargo run --example hom_dip`.

use multiphoton::combinat::Composition;
use multiphoton::optics::beam_splitter;
use multiphoton::transition::{p_classical, p_fermionic, p_quantum, qc_ratio};

fn main() {
    let n = Composition::new([1, 1]);
    let split = Composition::new([1, 1]);
    let bunched = Composition::new([2, 0]);

    let u = beam_splitter(0.5).unwrap();
    let q = p_quantum(&u, &n, &split).unwrap();
    let cl = p_classical(&u, &n, &split).unwrap();
    let f = p_fermionic(&u, &n, &split).unwrap();

    println!("balanced beam splitter, one photon per input port");
    println!("  P(split | bosons)          = {:.6}", q.probability);
    println!("  P(split | distinguishable) = {:.6}", cl.probability);
    println!("  P(split | fermions)        = {:.6}", f.probability);

    let r = qc_ratio(&u, &n, &bunched).unwrap();
    println!(
        "  bunched output: ratio = {} = prefactor {} x interference factor {}",
        r.ratio, r.prefactor, r.interference_factor
    );

    println!("\ncoincidence probability P(1,1 | 1,1) as the transmittance varies:");
    println!("{:>6}  {:>10}  {:>10}", "T", "bosons", "classical");
    for step in 0..=10 {
        let t = step as f64 / 10.0;
        let u = beam_splitter(t).unwrap();
        let q = p_quantum(&u, &n, &split).unwrap().probability;
        let c = p_classical(&u, &n, &split).unwrap().probability;
        println!("{t:>6.2}  {q:>10.6}  {c:>10.6}");
    }
    println!("\nthe bosonic coincidence rate is (T - R)^2: it vanishes at T = 1/2.");
}
