//! Searches for shellings of a few complexes, serially and in parallel, with
//! and without a budget.
//!
//!     cargo run --release --example shelling_search

use std::time::Instant;

use shellkit::gadgets::{blade, separated_hemisphere, turbine};
use shellkit::search::{find_shelling, SearchOptions};
use shellkit::{Complex, RelativeComplex};

fn main() {
    let octahedron = Complex::from_facets(
        ["1 2 3", "1 3 4", "1 4 5", "1 5 2", "6 2 3", "6 3 4", "6 4 5", "6 5 2"]
            .iter()
            .map(|f| f.split_whitespace()),
    )
    .unwrap();
    let bowtie = Complex::from_facets([["1", "2", "3"], ["3", "4", "5"]]).unwrap();
    let cases = [
        ("octahedron", octahedron),
        ("bowtie", bowtie),
        ("blade", blade().complex),
        ("separated hemisphere", separated_hemisphere().complex),
        ("turbine:4", turbine(4).unwrap().complex),
    ];
    for (name, c) in cases {
        let rc = RelativeComplex::absolute(c);
        for parallel in [false, true] {
            let start = Instant::now();
            let out = find_shelling(&rc, &SearchOptions { parallel, ..SearchOptions::default() }).unwrap();
            println!(
                "{name:<22} {:<8} {:<17} {:>7} placements {:.2?}",
                if parallel { "parallel" } else { "serial" },
                out.verdict.label(),
                out.nodes,
                start.elapsed()
            );
        }
    }
    let t = turbine(3).unwrap();
    let rc = RelativeComplex::new(t.complex.clone(), t.marked("tree").unwrap().clone()).unwrap();
    let out = find_shelling(&rc, &SearchOptions::with_budget(50)).unwrap();
    println!("turbine:3 rel tree with 50 placements: {}", out.verdict.label());
}
