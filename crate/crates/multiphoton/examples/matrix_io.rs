//! Matrix files: write an interferometer to JSON, read it back bit-exactly,
//! and validate unitarity.
//!
//! Run with `cargo run --example matrix_io`.

use multiphoton::optics::{read_matrix, tritter, validate_unitary, write_matrix};

fn main() {
    let u = tritter(0.4, 1.1, 0.7, 2.0);
    let check = validate_unitary(&u, 1e-10);
    println!(
        "tritter(0.4, 1.1, 0.7, 2.0): unitarity deviation {:.2e} (pass: {})",
        check.max_deviation, check.pass
    );

    let dir = std::env::temp_dir();
    let path = dir.join("multiphoton_tritter.json");
    write_matrix(&path, &u).unwrap();
    println!("\nwrote {}:", path.display());
    let text = std::fs::read_to_string(&path).unwrap();
    println!("{text}");

    let back = read_matrix(&path).unwrap();
    let identical = u.entries() == back.entries();
    println!("reread matrix is bit-identical: {identical}");
    std::fs::remove_file(&path).ok();
}
