//! Scanning for suppressed outputs: transitions whose probability vanishes
//! by complete destructive interference, confirmed against the permanent.
//!
//! Run with `cargo run --example suppression_scan`.

use multiphoton::combinat::Composition;
use multiphoton::optics::{beam_splitter, fourier};
use multiphoton::oracle::p_via_permanent;
use multiphoton::suppress::{scan_suppressed, DEFAULT_SUPPRESSION_THRESHOLD};

fn scan_and_print(
    label: &str,
    u: &multiphoton::optics::InterferometerMatrix,
    n: Composition,
) {
    let records = scan_suppressed(u, &n, DEFAULT_SUPPRESSION_THRESHOLD).unwrap();
    println!("{label}, input ({n}): {} suppressed outputs", records.len());
    for r in &records {
        let oracle = p_via_permanent(u, &r.input, &r.output).unwrap();
        let rule = r
            .predicted_by_rule
            .map(|t| format!("  [{t}]"))
            .unwrap_or_default();
        println!(
            "  ({})  routing P = {:.1e}, permanent P = {:.1e}{rule}",
            r.output, r.probability, oracle
        );
    }
    println!();
}

fn main() {
    let tritter = fourier(3);
    scan_and_print("Fourier tritter", &tritter, Composition::new([2, 1, 0]));
    scan_and_print("Fourier tritter", &tritter, Composition::new([2, 2, 0]));

    let bs = beam_splitter(0.5).unwrap();
    scan_and_print("balanced splitter", &bs, Composition::new([3, 3]));
    scan_and_print("balanced splitter", &bs, Composition::new([2, 0]));
}
