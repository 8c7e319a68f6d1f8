//! Enumeration oracles that produce the blade and tricorne triangulations.

use std::collections::{BTreeMap, HashSet};

use super::canon::{canonical_form, triangle_at, triangle_index, MAX_VERTICES};
use super::{find_shelling, SearchError, SearchOptions, Verdict};
use crate::complex::{Complex, RelativeComplex};
use crate::gadgets::{edges_complex, GadgetComplex, BLADE_RELATIVE_SUBCOMPLEXES};
use crate::shelling::{relative_from_absolute, Shelling};

/// Blade vertex roles, in enumeration order.
pub const BLADE_VERTICES: [&str; 6] = ["y", "a", "y'", "x", "p", "q"];

fn shellable(rc: &RelativeComplex) -> Option<Shelling> {
    match find_shelling(rc, &SearchOptions::default()).ok()?.verdict {
        Verdict::Shellable(s) => Some(s),
        _ => None,
    }
}

fn complex_of(names: &[&str], tris: &[[usize; 3]]) -> Complex {
    Complex::from_facets(tris.iter().map(|t| t.iter().map(|v| names[*v]))).expect("valid names")
}

/// Combinatorial filters on a 9-triangle subset, before any search.
fn blade_shape_ok(tris: &[[usize; 3]]) -> bool {
    let mut vdeg = [0u8; 6];
    let mut edeg = [[0u8; 6]; 6];
    for t in tris {
        for &v in t {
            vdeg[v] += 1;
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            edeg[t[i]][t[j]] += 1;
        }
    }
    // every vertex used and no vertex in only one triangle
    if vdeg.iter().any(|d| *d < 2) {
        return false;
    }
    let mut edges = 0;
    let mut free = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            if edeg[a][b] > 0 {
                edges += 1;
            }
            if edeg[a][b] == 1 {
                free.push((a, b));
            }
        }
    }
    // free edges exactly y–a, a–y', y'–x; edges a–x and y–y' present
    edges == 14 && free == [(0, 1), (1, 2), (2, 3)] && edeg[1][3] > 0 && edeg[0][2] == 2
}

/// Finds the first 9-triangle complex on the blade's six labelled vertices
/// that has the blade's face numbers and free edges and is shellable
/// absolutely and relative to each of [`BLADE_RELATIVE_SUBCOMPLEXES`].
pub fn derive_blade() -> Result<GadgetComplex, SearchError> {
    let all: Vec<[usize; 3]> = (0..6)
        .flat_map(|a| (a + 1..6).flat_map(move |b| (b + 1..6).map(move |c| [a, b, c])))
        .collect();
    let mut idx: Vec<usize> = (0..9).collect();
    loop {
        let tris: Vec<[usize; 3]> = idx.iter().map(|i| all[*i]).collect();
        if blade_shape_ok(&tris) {
            let c = complex_of(&BLADE_VERTICES, &tris);
            if c.is_connected() {
                if let Some(g) = blade_witness(c) {
                    return Ok(g);
                }
            }
        }
        if !next_combination(&mut idx, all.len()) {
            return Err(SearchError::NoWitness("no blade among 9-triangle subsets".into()));
        }
    }
}

fn blade_witness(c: Complex) -> Option<GadgetComplex> {
    let abs = shellable(&RelativeComplex::absolute(c.clone()))?;
    if !abs.homology_facets().is_empty() {
        return None;
    }
    for edges in BLADE_RELATIVE_SUBCOMPLEXES {
        let rc = RelativeComplex::new(c.clone(), edges_complex(edges)).ok()?;
        shellable(&rc)?;
    }
    let roles = BLADE_VERTICES.iter().map(|v| (v.to_string(), v.to_string())).collect();
    let mut marked = BTreeMap::new();
    marked.insert("free".into(), edges_complex(&[["y", "a"], ["a", "y'"], ["y'", "x"]]));
    Some(GadgetComplex {
        name: "blade".into(),
        complex: c,
        roles,
        marked,
        free_edges: Vec::new(),
        shelling: Some(abs.order_names()),
    })
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Counters from one tricorne enumeration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TricorneSearchStats {
    /// Isomorphism classes kept at each size, starting from one triangle.
    pub classes_per_level: Vec<usize>,
    /// Complexes of the final size with a single free face, by vertex count.
    pub witnesses_by_vertices: BTreeMap<usize, usize>,
}

struct Built {
    mask: u64,
    n: usize,
}

fn tris_of(mask: u64) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        out.push(triangle_at(i));
    }
    out
}

fn edge_degrees(tris: &[[usize; 3]]) -> [[u8; MAX_VERTICES]; MAX_VERTICES] {
    let mut e = [[0u8; MAX_VERTICES]; MAX_VERTICES];
    for t in tris {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            e[t[i]][t[j]] += 1;
            e[t[j]][t[i]] += 1;
        }
    }
    e
}

fn free_edge_count(n: usize, e: &[[u8; MAX_VERTICES]; MAX_VERTICES]) -> usize {
    let mut d = 0;
    for a in 0..n {
        for b in a + 1..n {
            if e[a][b] == 1 {
                d += 1;
            }
        }
    }
    d
}

/// Children of a complex under the two attaching moves: a triangle along one
/// edge through a new vertex, or a triangle along two edges whose third edge
/// is absent.
fn children(s: &Built, max_vertices: usize) -> Vec<Built> {
    let tris = tris_of(s.mask);
    let e = edge_degrees(&tris);
    let mut out = Vec::new();
    for a in 0..s.n {
        for b in a + 1..s.n {
            if e[a][b] == 0 {
                continue;
            }
            if s.n < max_vertices {
                out.push(Built {
                    mask: s.mask | 1 << triangle_index(a, b, s.n),
                    n: s.n + 1,
                });
            }
        }
    }
    for a in 0..s.n {
        for b in a + 1..s.n {
            for c in b + 1..s.n {
                let t = triangle_index(a, b, c);
                let present = [e[a][b] > 0, e[a][c] > 0, e[b][c] > 0];
                if s.mask >> t & 1 == 0 && present.iter().filter(|p| **p).count() == 2 {
                    out.push(Built {
                        mask: s.mask | 1 << t,
                        n: s.n,
                    });
                }
            }
        }
    }
    out
}

fn canonical(b: &Built) -> u64 {
    canonical_form(b.n, &tris_of(b.mask))
}

/// Runs the incremental build at the given bounds and returns the first
/// witness (by canonical code) with the requested vertex count.
pub fn derive_tricorne_with(
    max_vertices: usize,
    facets: usize,
) -> Result<(GadgetComplex, TricorneSearchStats), SearchError> {
    assert!(max_vertices <= MAX_VERTICES);
    let mut stats = TricorneSearchStats::default();
    let mut level: Vec<Built> = vec![Built {
        mask: 1 << triangle_index(0, 1, 2),
        n: 3,
    }];
    stats.classes_per_level.push(1);
    for size in 2..=facets {
        let remaining = facets - size;
        let mut seen: HashSet<u64> = HashSet::new();
        let mut next = Vec::new();
        for s in &level {
            for child in children(s, max_vertices) {
                if child.n + remaining < max_vertices {
                    continue;
                }
                let e = edge_degrees(&tris_of(child.mask));
                // each further triangle lowers the free-edge count by at most one
                if free_edge_count(child.n, &e) > remaining + 1 {
                    continue;
                }
                let code = canonical(&child);
                if seen.insert(code) {
                    next.push(Built { mask: code, n: child.n });
                }
            }
        }
        next.sort_by_key(|b| b.mask);
        stats.classes_per_level.push(next.len());
        level = next;
    }
    let mut witnesses: Vec<&Built> = Vec::new();
    for b in &level {
        let tris = tris_of(b.mask);
        let e = edge_degrees(&tris);
        let vertex_ok = (0..b.n).all(|v| tris.iter().filter(|t| t.contains(&v)).count() >= 2);
        if vertex_ok && free_edge_count(b.n, &e) == 1 {
            *stats.witnesses_by_vertices.entry(b.n).or_default() += 1;
            witnesses.push(b);
        }
    }
    for b in witnesses.into_iter().filter(|b| b.n == max_vertices) {
        if let Some(g) = tricorne_witness(b)? {
            return Ok((g, stats));
        }
    }
    Err(SearchError::NoWitness(format!(
        "no single-free-face complex with {max_vertices} vertices and {facets} triangles"
    )))
}

/// Tries each first facet meeting the free edge in one vertex, names the
/// roles and returns the complex with a shelling starting there.
fn tricorne_witness(b: &Built) -> Result<Option<GadgetComplex>, SearchError> {
    let tris = tris_of(b.mask);
    let e = edge_degrees(&tris);
    let (u, v) = (0..b.n)
        .flat_map(|a| (a + 1..b.n).map(move |c| (a, c)))
        .find(|(a, c)| e[*a][*c] == 1)
        .expect("one free edge");
    let labels: Vec<String> = (0..b.n).map(|i| i.to_string()).collect();
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let c = complex_of(&label_refs, &tris);
    for t in &tris {
        let (w, x) = match (t.contains(&u), t.contains(&v)) {
            (true, false) => (u, v),
            (false, true) => (v, u),
            _ => continue,
        };
        let start = c.face(&t.map(|i| labels[i].as_str())).expect("facet");
        let opts = SearchOptions {
            start_with: Some(start),
            ..SearchOptions::default()
        };
        let Verdict::Shellable(shelling) = find_shelling(&RelativeComplex::absolute(c.clone()), &opts)?.verdict else {
            continue;
        };
        for s in t.iter().copied().filter(|s| *s != w) {
            let sw = edges_complex(&[[labels[s].as_str(), labels[w].as_str()]]);
            if relative_from_absolute(&c, &sw, &shelling.order()).is_err() {
                continue;
            }
            // name the roles, then the remaining vertices in label order
            let mut perm = vec![usize::MAX; b.n];
            perm[w] = 0;
            perm[x] = 1;
            perm[s] = 2;
            let mut next = 3;
            for p in perm.iter_mut().filter(|p| **p == usize::MAX) {
                *p = next;
                next += 1;
            }
            let mut names = vec!["w".to_string(), "x".into(), "s".into()];
            names.extend((1..=b.n - 3).map(|i| format!("t{i}")));
            let rename = |old: &str| names[perm[old.parse::<usize>().unwrap()]].clone();
            let complex = c.renamed(rename).expect("bijective renaming");
            let order: Vec<Vec<String>> = shelling
                .order_names()
                .into_iter()
                .map(|f| {
                    let mut g: Vec<String> = f.iter().map(|v| rename(v)).collect();
                    g.sort();
                    g
                })
                .collect();
            let mut roles = BTreeMap::new();
            for r in ["w", "x", "s"] {
                roles.insert(r.to_string(), r.to_string());
            }
            let mut marked = BTreeMap::new();
            marked.insert("free".to_string(), edges_complex(&[["w", "x"]]));
            marked.insert("upsilon".to_string(), edges_complex(&[["s", "w"]]));
            return Ok(Some(GadgetComplex {
                name: "tricorne".into(),
                complex,
                roles,
                marked,
                free_edges: vec![["w".into(), "x".into()]],
                shelling: Some(order),
            }));
        }
    }
    Ok(None)
}

/// Runs the incremental build at 7 vertices and 13 triangles.
pub fn derive_tricorne() -> Result<GadgetComplex, SearchError> {
    derive_tricorne_with(7, 13).map(|(g, _)| g)
}
