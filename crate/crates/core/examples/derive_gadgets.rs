//! Rederives the blade and tricorne triangulations by exhaustive enumeration
//! and prints them with a shelling.
//!
//!     cargo run --release --example derive_gadgets

use std::time::Instant;

use shellkit::search::{derive_blade, derive_tricorne_with};

fn main() {
    let t = Instant::now();
    let blade = derive_blade().expect("a blade exists");
    println!("blade {} in {:.2?}", blade.complex, t.elapsed());
    println!("  f = {}  h = {:?}", blade.complex.f_vector(), blade.complex.h_vector().0);
    println!("  shelling {:?}", blade.shelling.as_ref().unwrap());

    let t = Instant::now();
    let (tricorne, stats) = derive_tricorne_with(7, 13).expect("a tricorne exists");
    println!("tricorne {} in {:.2?}", tricorne.complex, t.elapsed());
    println!("  f = {}  h = {:?}", tricorne.complex.f_vector(), tricorne.complex.h_vector().0);
    println!("  classes per size {:?}", stats.classes_per_level);
    println!("  witnesses by vertex count {:?}", stats.witnesses_by_vertices);
    println!("  shelling {:?}", tricorne.shelling.as_ref().unwrap());

    if std::env::args().any(|a| a == "--six") {
        match derive_tricorne_with(6, 13) {
            Ok((g, _)) => println!("six-vertex tricorne: {}", g.complex),
            Err(e) => println!("six vertices: {e}"),
        }
    }
}
