//! Builds n-turbines, prints their face numbers, free edges and gluing tree,
//! and verifies the composed shellings relative to every proper set of
//! glued free edges.
//!
//!     cargo run --release --example turbines [-- N]

use std::time::Instant;

use shellkit::gadgets::{turbine, turbine_shelling};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    for n in 1..=max {
        let start = Instant::now();
        let t = turbine(n).unwrap();
        let c = &t.complex;
        println!("T({n}): f = {}  h = {}", c.f_vector(), c.h_vector());
        let free: Vec<String> = t.free_edges.iter().map(|[a, b]| format!("{a}{b}")).collect();
        println!("  free edges {}", free.join(" "));
        println!("  gluing tree {}", t.marked("tree").unwrap());
        let abs = turbine_shelling(n, None).unwrap();
        println!("  absolute shelling of {} facets", abs.len());
        let mut count = 0;
        for mask in 0u32..(1 << n) - 1 {
            let e: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            turbine_shelling(n, Some(&e)).unwrap();
            count += 1;
        }
        println!("  {count} relative shellings verified in {:.2?}", start.elapsed());
    }
}
