//! The 2-turbine relative to its whole gluing tree: a quick homological
//! proof of unshellability, then the exhaustive search that confirms it.
//!
//!     cargo run --release --example unshellable_turbine [-- --parallel]

use std::time::Instant;

use shellkit::gadgets::turbine;
use shellkit::search::{find_shelling, prove_unshellable_quick, QuickVerdict, SearchOptions};
use shellkit::RelativeComplex;

fn main() {
    let parallel = std::env::args().any(|a| a == "--parallel");
    for n in 2..=4 {
        let t = turbine(n).unwrap();
        let rc = RelativeComplex::new(t.complex.clone(), t.marked("tree").unwrap().clone()).unwrap();
        let start = Instant::now();
        match prove_unshellable_quick(&rc).unwrap() {
            QuickVerdict::Unshellable(p) => println!(
                "n={n}: unshellable (relative Betti {}, {} facets admit no last step) in {:.2?}",
                p.relative_betti,
                p.facets_checked,
                start.elapsed()
            ),
            QuickVerdict::Inconclusive(why) => println!("n={n}: inconclusive: {why}"),
        }
    }

    let t = turbine(2).unwrap();
    let rc = RelativeComplex::new(t.complex.clone(), t.marked("tree").unwrap().clone()).unwrap();
    let start = Instant::now();
    let opts = SearchOptions { parallel, ..SearchOptions::default() };
    let out = find_shelling(&rc, &opts).unwrap();
    println!(
        "exhaustive search on n=2: {} after {} placements in {:.2?}",
        out.verdict.label(),
        out.nodes,
        start.elapsed()
    );
}
