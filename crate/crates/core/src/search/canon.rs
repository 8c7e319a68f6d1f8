//! Canonical labelling of small pure 2-complexes, for isomorph rejection.
//!
//! Vertices are first split into classes by iterated degree refinement. The
//! canonical code is then the smallest triangle bitmask over all labellings
//! that list the classes in order and permute freely inside each class.

/// Largest vertex count handled; `C(8,3) = 56` triangles fit in a `u64`.
pub const MAX_VERTICES: usize = 8;

/// Position of the triangle `a < b < c` in the lexicographic list of all
/// triangles on `MAX_VERTICES` vertices.
pub fn triangle_index(a: usize, b: usize, c: usize) -> usize {
    debug_assert!(a < b && b < c && c < MAX_VERTICES);
    TRIANGLE_INDEX.with(|t| t[a][b][c])
}

/// The triangle with the given index.
pub fn triangle_at(i: usize) -> [usize; 3] {
    TRIANGLES.with(|t| t[i])
}

thread_local! {
    static TRIANGLES: Vec<[usize; 3]> = {
        let mut v = Vec::new();
        for a in 0..MAX_VERTICES {
            for b in a + 1..MAX_VERTICES {
                for c in b + 1..MAX_VERTICES {
                    v.push([a, b, c]);
                }
            }
        }
        v
    };
    static TRIANGLE_INDEX: [[[usize; MAX_VERTICES]; MAX_VERTICES]; MAX_VERTICES] = {
        let mut t = [[[usize::MAX; MAX_VERTICES]; MAX_VERTICES]; MAX_VERTICES];
        let mut i = 0;
        for a in 0..MAX_VERTICES {
            for b in a + 1..MAX_VERTICES {
                for c in b + 1..MAX_VERTICES {
                    t[a][b][c] = i;
                    i += 1;
                }
            }
        }
        t
    };
}

fn sorted3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

/// Mask of the triangles after relabelling vertex `v` as `perm[v]`.
pub fn relabel(mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        let [a, b, c] = triangle_at(i);
        let [x, y, z] = sorted3([perm[a], perm[b], perm[c]]);
        out |= 1 << triangle_index(x, y, z);
    }
    out
}

fn refine(n: usize, tris: &[[usize; 3]]) -> Vec<usize> {
    let mut edge = [[false; MAX_VERTICES]; MAX_VERTICES];
    let mut tri_deg = vec![0usize; n];
    for t in tris {
        for &v in t {
            tri_deg[v] += 1;
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            edge[t[i]][t[j]] = true;
            edge[t[j]][t[i]] = true;
        }
    }
    let initial: Vec<(usize, usize)> = (0..n)
        .map(|v| (tri_deg[v], edge[v].iter().filter(|e| **e).count()))
        .collect();
    let mut color = rank(&initial);
    loop {
        let sigs: Vec<(usize, Vec<(usize, usize)>)> = (0..n)
            .map(|v| {
                let mut around: Vec<(usize, usize)> = tris
                    .iter()
                    .filter(|t| t.contains(&v))
                    .map(|t| {
                        let others: Vec<usize> =
                            t.iter().filter(|u| **u != v).map(|u| color[*u]).collect();
                        (others[0].min(others[1]), others[0].max(others[1]))
                    })
                    .collect();
                around.sort_unstable();
                (color[v], around)
            })
            .collect();
        let next = rank(&sigs);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&color) {
            return next;
        }
        color = next;
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    sigs.iter()
        .map(|s| distinct.binary_search(s).expect("present"))
        .collect()
}

/// Canonical code of the complex with the given triangles on vertices
/// `0..n`. Two complexes get the same code exactly when they are isomorphic.
pub fn canonical_form(n: usize, tris: &[[usize; 3]]) -> u64 {
    assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
    let mask = tris
        .iter()
        .fold(0u64, |m, t| {
            let [a, b, c] = sorted3(*t);
            m | 1 << triangle_index(a, b, c)
        });
    let color = refine(n, tris);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let classes = color.iter().max().map_or(0, |m| m + 1);
    for c in 0..classes {
        cells.push((0..n).filter(|v| color[*v] == c).collect());
    }
    let mut perm = vec![0usize; n];
    let mut best = u64::MAX;
    assign(&cells, 0, 0, &mut perm, mask, &mut best);
    best
}

/// Tries every ordering of the remaining cells' members.
fn assign(cells: &[Vec<usize>], cell: usize, offset: usize, perm: &mut [usize], mask: u64, best: &mut u64) {
    if cell == cells.len() {
        *best = (*best).min(relabel(mask, perm));
        return;
    }
    let mut members = cells[cell].clone();
    let k = members.len();
    // Heap's algorithm over the members of this cell
    let mut c = vec![0usize; k];
    place(&members, offset, perm);
    assign(cells, cell + 1, offset + k, perm, mask, best);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                members.swap(0, i);
            } else {
                members.swap(c[i], i);
            }
            place(&members, offset, perm);
            assign(cells, cell + 1, offset + k, perm, mask, best);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn place(members: &[usize], offset: usize, perm: &mut [usize]) {
    for (j, v) in members.iter().enumerate() {
        perm[*v] = offset + j;
    }
}
