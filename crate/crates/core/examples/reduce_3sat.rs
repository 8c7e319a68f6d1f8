//! Compiles a CNF formula to a 2-complex, turns every satisfying assignment
//! into a verified shelling and reads the assignment back off it.
//!
//!     cargo run --release --example reduce_3sat [-- formula.cnf]

use shellkit::certificates::{build_shelling, extract_assignment, homology_facet_pieces, satisfying_assignments};
use shellkit::homology::betti;
use shellkit::reduction::{normalize, parse_dimacs, reduce};

const DEFAULT: &str = "c (x1 or x2 or x3) and (not x1 or not x2) and (x2 or not x3)
p cnf 3 3
1 2 3 0
-1 -2 0
2 -3 0
";

fn main() {
    let text = match std::env::args().nth(1) {
        Some(p) => std::fs::read_to_string(p).unwrap(),
        None => DEFAULT.to_string(),
    };
    let inst = normalize(&parse_dimacs(&text).unwrap()).unwrap();
    let (c, meta) = reduce(&inst).unwrap();
    println!(
        "{} variables, {} clauses -> {} vertices, {} facets, Betti {}",
        inst.num_vars,
        inst.clauses.len(),
        c.num_vertices(),
        c.num_facets(),
        betti(&c)
    );
    let models = satisfying_assignments(&meta);
    if models.is_empty() {
        println!("unsatisfiable: no certificate to build");
    }
    for a in models {
        let s = build_shelling(&meta, &a).unwrap();
        let back = extract_assignment(&meta, &s).unwrap();
        println!("{a}: shelling of {} facets, homology facets in {:?} -> {back}", s.len(), homology_facet_pieces(&meta, &s));
    }
}
