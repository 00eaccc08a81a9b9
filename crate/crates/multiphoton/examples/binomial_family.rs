//! The family of two-port output distributions, parametrized by how the
//! photons split across the input ports. The boundary rows are classical
//! binomial distributions; interior rows interfere.
//!
//! Run with `cargo run --example binomial_family`.

use multiphoton::combinat::Composition;
use multiphoton::optics::beam_splitter;
use multiphoton::transition::{output_distribution, StatisticsKind};

fn print_family(m: u32, t: f64) {
    let u = beam_splitter(t).unwrap();
    println!("m = {m}, T = {t}");
    print!("{:>5}", "n\\c");
    for c in 0..=m {
        print!("{c:>10}");
    }
    println!();
    for n in 0..=m {
        let dist = output_distribution(&u, &Composition::new([n, m - n]), StatisticsKind::Boson)
            .unwrap();
        print!("{n:>5}");
        for c in 0..=m {
            let p = dist.probability(&Composition::new([c, m - c])).unwrap();
            print!("{p:>10.6}");
        }
        println!();
    }
    println!();
}

fn main() {
    // Three photons: the 4x4 grid of probabilities at the balanced splitter.
    print_family(3, 0.5);

    // Six photons: the balanced input suppresses every odd output count.
    print_family(6, 0.5);
    println!("note the zeros of the n = 3 row at odd c, and the symmetric");
    println!("pattern P_n(c) = P_(m-n)(m-c) across the whole family.");
}
