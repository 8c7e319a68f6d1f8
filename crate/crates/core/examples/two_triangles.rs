//! Two triangles sharing an edge, shelled relative to trees by gluing a
//! relative shelling of each triangle, and a refused order with its
//! diagnostic.
//!
//!     cargo run --example two_triangles

use shellkit::complex::{Complex, RelativeComplex};
use shellkit::shelling::{check_shelling_named, concat_shellings, relative_from_absolute};

fn cx(faces: &[&str]) -> Complex {
    Complex::from_facets(faces.iter().map(|f| f.split_whitespace())).unwrap()
}

fn main() {
    let a = cx(&["1 2 3"]);
    let b = cx(&["2 3 4"]);
    for tree in [cx(&["1 2"]), cx(&["1 2", "2 4"]), cx(&["1 3", "3 4"]), cx(&["2 3"])] {
        let ga = a.intersection(&tree);
        let gb = tree.intersection(&b);
        // put the triangle holding more of the tree first
        let (first, second, g_first, g_second) =
            if ga.is_void() { (&b, &a, gb, a.intersection(&tree)) } else { (&a, &b, ga, gb) };
        let sa = check_shelling_named(
            &RelativeComplex::new(first.clone(), g_first).unwrap(),
            &first.facet_names(),
        )
        .unwrap();
        let attach = first.intersection(second).union(&g_second);
        let sb = check_shelling_named(
            &RelativeComplex::new(second.clone(), attach).unwrap(),
            &second.facet_names(),
        )
        .unwrap();
        let glued = concat_shellings(&sa, &sb, &g_second).unwrap();
        println!(
            "relative to {tree}: {:?}, {} homology facets",
            glued.order_names(),
            glued.homology_facets().len()
        );
    }

    let disc = cx(&["1 2 3", "2 3 4"]);
    let s = relative_from_absolute(&disc, &cx(&["1 2", "2 4"]), &disc.facets().to_vec()).unwrap();
    println!("from the absolute shelling: {:?}", s.order_names());

    let bowtie = cx(&["1 2 3", "3 4 5"]);
    let err = check_shelling_named(&RelativeComplex::absolute(bowtie), &[vec!["1", "2", "3"], vec!["3", "4", "5"]])
        .unwrap_err();
    println!("bowtie: {err}");
}
