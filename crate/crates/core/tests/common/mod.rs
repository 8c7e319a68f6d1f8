#![allow(dead_code)]

use shellkit::complex::{Complex, Face, RelativeComplex};
use shellkit::gadgets::*;
use shellkit::reduction::CnfInstance;

pub fn cx(faces: &[&str]) -> Complex {
    Complex::from_facets(faces.iter().map(|f| f.split_whitespace())).unwrap()
}

/// Calls `visit` on every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    visit(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            visit(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// All `k`-subsets of `0..n` in lex order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every pure complex whose facets are `size`-subsets of `n` vertices, with
/// between 1 and `max_facets` facets.
pub fn pure_complexes(n: usize, size: usize, max_facets: usize) -> Vec<Complex> {
    let cells: Vec<Vec<String>> = subsets(n, size)
        .into_iter()
        .map(|s| s.into_iter().map(|v| v.to_string()).collect())
        .collect();
    let mut out = Vec::new();
    for k in 1..=max_facets.min(cells.len()) {
        for pick in subsets(cells.len(), k) {
            out.push(Complex::from_facets(pick.iter().map(|&i| cells[i].iter().map(String::as_str))).unwrap());
        }
    }
    out
}

/// Proper subsets of `1..=n`.
pub fn proper_subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n) - 1)
        .map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect())
        .collect()
}

/// Relative complexes drawn from the gadgets and from small hand-made pairs.
pub fn relative_corpus() -> Vec<(String, RelativeComplex)> {
    let mut out = Vec::new();
    let mut add = |name: String, d: &Complex, g: Complex| {
        out.push((name, RelativeComplex::new(d.clone(), g).unwrap()));
    };
    let b = blade();
    for edges in BLADE_RELATIVE_SUBCOMPLEXES {
        let g = Complex::from_facets(edges.iter().map(|e| e.iter().copied())).unwrap();
        add(format!("blade rel {g}"), &b.complex, g);
    }
    for h in [hemisphere(), separated_hemisphere()] {
        let eq = h.marked("equator").unwrap().clone();
        add(format!("{} rel wx", h.name), &h.complex, cx(&["w x"]));
        add(format!("{} rel equator", h.name), &h.complex, eq.clone());
        add(format!("{} rel equator+xy", h.name), &h.complex, eq.union(&cx(&["x y"])));
    }
    for n in 1..=3 {
        let t = turbine(n).unwrap();
        for e in proper_subsets(n) {
            let g = turbine_subcomplex(&t, &e).unwrap();
            add(format!("turbine:{n} rel E={e:?}"), &t.complex, g);
        }
        add(format!("turbine:{n} rel tree"), &t.complex, t.marked("tree").unwrap().clone());
    }
    let two = cx(&["1 2 3", "2 3 4"]);
    for g in [cx(&["1 2"]), cx(&["1 2", "2 4"]), cx(&["1 3", "3 4"]), cx(&["2 3"]), cx(&["1"]), cx(&["1 2", "3 4"])] {
        add(format!("two triangles rel {g}"), &two, g);
    }
    let strip = cx(&["1 2 3", "2 3 4", "3 4 5", "4 5 6"]);
    for g in [cx(&["1 2", "5 6"]), cx(&["1 2"]), cx(&["3"]), cx(&["1 3", "3 5"])] {
        add(format!("strip rel {g}"), &strip, g);
    }
    let octa = cx(&["1 2 3", "1 3 4", "1 4 5", "1 5 2", "6 2 3", "6 3 4", "6 4 5", "6 5 2"]);
    add("octahedron rel 12".into(), &octa, cx(&["1 2"]));
    add("octahedron rel equator".into(), &octa, cx(&["2 3", "3 4", "4 5", "5 2"]));
    out
}

/// Absolute complexes for the search agreement checks.
pub fn absolute_corpus() -> Vec<(String, Complex)> {
    let mut out = vec![
        ("blade".to_string(), blade().complex),
        ("tricorne".to_string(), tricorne().complex),
        ("hemisphere".to_string(), hemisphere().complex),
        ("separated hemisphere".to_string(), separated_hemisphere().complex),
        ("bowtie".to_string(), cx(&["1 2 3", "3 4 5"])),
        ("two edges and a triangle".to_string(), cx(&["1 2 3", "3 4", "4 5"])),
        ("octahedron".to_string(), cx(&["1 2 3", "1 3 4", "1 4 5", "1 5 2", "6 2 3", "6 3 4", "6 4 5", "6 5 2"])),
    ];
    for n in 2..=3 {
        out.push((format!("turbine:{n}"), turbine(n).unwrap().complex));
    }
    out
}

/// A triangulated `rows × cols` grid of squares; each square is cut along its
/// diagonal. Returns the complex and its row-by-row facet order.
pub fn grid_disc(rows: usize, cols: usize) -> (Complex, Vec<Vec<String>>) {
    let v = |r: usize, c: usize| format!("{r}.{c}");
    let mut order = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            order.push(vec![v(r, c), v(r, c + 1), v(r + 1, c)]);
            order.push(vec![v(r, c + 1), v(r + 1, c), v(r + 1, c + 1)]);
        }
    }
    let c = Complex::from_facets(order.iter().map(|f| f.iter().map(String::as_str))).unwrap();
    (c, order)
}

/// Every instance of the restricted fragment with `num_vars ≤ max_vars` and
/// at most `max_clauses` clauses, clauses listed in non-decreasing order.
pub fn strict_instances(max_vars: usize, max_clauses: usize) -> Vec<CnfInstance> {
    let mut out = Vec::new();
    for nv in 1..=max_vars {
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        for size in 2..=3.min(nv) {
            for vars in subsets(nv, size) {
                for signs in 0u32..1 << size {
                    clauses.push(
                        vars.iter()
                            .enumerate()
                            .map(|(i, &v)| if signs >> i & 1 == 1 { -(v as i32 + 1) } else { v as i32 + 1 })
                            .collect(),
                    );
                }
            }
        }
        let mut pick: Vec<usize> = Vec::new();
        fn rec(
            start: usize,
            left: usize,
            pick: &mut Vec<usize>,
            clauses: &[Vec<i32>],
            nv: usize,
            out: &mut Vec<CnfInstance>,
        ) {
            let inst = CnfInstance::new(nv, pick.iter().map(|&i| clauses[i].clone()).collect());
            if inst.validate_strict().is_err() {
                return;
            }
            out.push(inst);
            if left == 0 {
                return;
            }
            for i in start..clauses.len() {
                pick.push(i);
                rec(i, left - 1, pick, clauses, nv, out);
                pick.pop();
            }
        }
        rec(0, max_clauses, &mut pick, &clauses, nv, &mut out);
    }
    out
}

/// The face ids of a named order.
pub fn faces(c: &Complex, order: &[Vec<String>]) -> Vec<Face> {
    order.iter().map(|f| c.face(f).unwrap()).collect()
}
