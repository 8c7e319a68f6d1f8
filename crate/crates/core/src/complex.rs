//! Immutable abstract simplicial complexes over named vertices.
//!
//! A [`Complex`] keeps its vertex names in a sorted table and stores every
//! facet as a sorted list of indices into that table, so index order and
//! lexicographic name order coincide. The void complex (no faces at all) is
//! distinct from the complex `{∅}` whose only face is the empty face.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("empty vertex name")]
    EmptyVertexName,
    #[error("vertex name {0:?} contains whitespace")]
    WhitespaceInName(String),
    #[error("vertex {0:?} repeated inside one face")]
    RepeatedVertex(String),
    #[error("face {0:?} of the subcomplex is not a face of the complex")]
    NotSubcomplex(Vec<String>),
}

/// A face of some complex, as sorted indices into that complex's vertex table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(Vec<u32>);

impl Face {
    pub fn new(mut vertices: Vec<u32>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Face(vertices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension, i.e. cardinality minus one (`-1` for the empty face).
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn intersect(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    /// The subface selecting the positions set in `mask`.
    pub fn by_mask(&self, mask: u32) -> Face {
        Face(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, v)| *v)
                .collect(),
        )
    }

    /// All `2^len` subfaces, in mask order (empty face first, the face itself last).
    pub fn subfaces(&self) -> impl Iterator<Item = Face> + '_ {
        assert!(self.0.len() < 31, "face too large to enumerate");
        (0u32..(1 << self.0.len())).map(move |m| self.by_mask(m))
    }

    pub(crate) fn from_sorted(vertices: Vec<u32>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }
}

impl From<Vec<u32>> for Face {
    fn from(v: Vec<u32>) -> Self {
        Face::new(v)
    }
}

/// Face counts indexed by number of vertices; `entries[0]` counts the empty face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector(pub Vec<u64>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector(pub Vec<i64>);

fn fmt_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.0)
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.0)
    }
}

impl FVector {
    /// The h-vector defined by `Σ h_i x^(c-i) = Σ f_i (x-1)^(c-i)`, with `c = len - 1`.
    pub fn to_h(&self) -> HVector {
        let f = &self.0;
        if f.is_empty() {
            return HVector(Vec::new());
        }
        let c = f.len() - 1;
        let h = (0..=c)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial((c - i) as u64, (k - i) as u64) as i64 * f[i] as i64
                    })
                    .sum()
            })
            .collect();
        HVector(h)
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn validate_name(name: &str) -> Result<(), ComplexError> {
    if name.is_empty() {
        return Err(ComplexError::EmptyVertexName);
    }
    if name.chars().any(char::is_whitespace) {
        return Err(ComplexError::WhitespaceInName(name.to_string()));
    }
    Ok(())
}

/// An abstract simplicial complex given by its inclusion-maximal facets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Complex {
    vertices: Vec<String>,
    facets: Vec<Face>,
}

impl Complex {
    /// The complex with no faces at all.
    pub fn void() -> Self {
        Complex::default()
    }

    /// The complex `{∅}`.
    pub fn empty_face_only() -> Self {
        Complex {
            vertices: Vec::new(),
            facets: vec![Face::empty()],
        }
    }

    /// The complex generated by `faces`. Duplicate and non-maximal inputs are absorbed.
    pub fn from_facets<I, F, S>(faces: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut named: Vec<Vec<String>> = Vec::new();
        for face in faces {
            let mut names: Vec<String> = Vec::new();
            for v in face {
                let v = v.as_ref();
                validate_name(v)?;
                if names.iter().any(|n| n == v) {
                    return Err(ComplexError::RepeatedVertex(v.to_string()));
                }
                names.push(v.to_string());
            }
            named.push(names);
        }
        let mut vertices: Vec<String> = named.iter().flatten().cloned().collect();
        vertices.sort();
        vertices.dedup();
        let index: HashMap<&str, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i as u32))
            .collect();
        let faces = named
            .iter()
            .map(|f| Face::new(f.iter().map(|v| index[v.as_str()]).collect()))
            .collect();
        Ok(Self::from_indexed(vertices, faces))
    }

    /// Builds from a sorted, duplicate-free vertex table and faces over it.
    /// Vertices that end up in no facet are dropped.
    pub(crate) fn from_indexed(vertices: Vec<String>, mut faces: Vec<Face>) -> Self {
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
        for face in faces {
            let absorbed = if face.is_empty() {
                !kept.is_empty()
            } else {
                let pivot = face
                    .vertices()
                    .iter()
                    .min_by_key(|v| incidence[**v as usize].len())
                    .copied()
                    .unwrap();
                incidence[pivot as usize]
                    .iter()
                    .any(|&k| kept[k].len() > face.len() && face.is_subset(&kept[k]))
            };
            if !absorbed {
                for v in face.vertices() {
                    incidence[*v as usize].push(kept.len());
                }
                kept.push(face);
            }
        }
        // drop unused vertices and renumber
        let used: Vec<bool> = incidence.iter().map(|l| !l.is_empty()).collect();
        if used.iter().all(|u| *u) {
            kept.sort();
            return Complex {
                vertices,
                facets: kept,
            };
        }
        let mut remap = vec![u32::MAX; vertices.len()];
        let mut new_vertices = Vec::new();
        for (i, v) in vertices.into_iter().enumerate() {
            if used[i] {
                remap[i] = new_vertices.len() as u32;
                new_vertices.push(v);
            }
        }
        let mut facets: Vec<Face> = kept
            .into_iter()
            .map(|f| Face::from_sorted(f.vertices().iter().map(|v| remap[*v as usize]).collect()))
            .collect();
        facets.sort();
        Complex {
            vertices: new_vertices,
            facets,
        }
    }

    /// Builds from facets given as name lists taken from a valid complex.
    pub(crate) fn from_named_faces(faces: &[Vec<String>]) -> Self {
        Self::from_facets(faces.iter().map(|f| f.iter().map(String::as_str)))
            .expect("names taken from a valid complex")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, v: u32) -> &str {
        &self.vertices[v as usize]
    }

    pub fn vertex_index(&self, name: &str) -> Option<u32> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(name))
            .ok()
            .map(|i| i as u32)
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn names(&self, face: &Face) -> Vec<&str> {
        face.vertices().iter().map(|v| self.vertex_name(*v)).collect()
    }

    pub fn owned_names(&self, face: &Face) -> Vec<String> {
        face.vertices()
            .iter()
            .map(|v| self.vertex_name(*v).to_string())
            .collect()
    }

    pub fn facet_names(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| self.owned_names(f)).collect()
    }

    /// Looks up a vertex set in this complex's table. `None` if some name is
    /// unknown; the result need not be a face of the complex.
    pub fn face<S: AsRef<str>>(&self, names: &[S]) -> Option<Face> {
        names
            .iter()
            .map(|n| self.vertex_index(n.as_ref()))
            .collect::<Option<Vec<u32>>>()
            .map(Face::new)
    }

    /// Like [`Complex::face`] but also requires membership in the complex.
    pub fn find_face<S: AsRef<str>>(&self, names: &[S]) -> Option<Face> {
        self.face(names).filter(|f| self.contains_face(f))
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        self.facets.iter().any(|f| face.is_subset(f))
    }

    pub fn contains_names<S: AsRef<str>>(&self, names: &[S]) -> bool {
        self.find_face(names).is_some()
    }

    /// `max facet cardinality - 1`; `-1` for `{∅}` and `-2` for the void complex.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(Face::dim).max().unwrap_or(-2)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for f in &self.facets {
            let vs = f.vertices();
            for w in vs.windows(2) {
                let (a, b) = (find(&mut parent, w[0] as usize), find(&mut parent, w[1] as usize));
                parent[a] = b;
            }
        }
        let roots: HashSet<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
        roots.len() <= 1
    }

    /// Every face, including the empty face when the complex is not void.
    pub fn all_faces(&self) -> HashSet<Face> {
        let mut out = HashSet::new();
        for f in &self.facets {
            for s in f.subfaces() {
                out.insert(s);
            }
        }
        out
    }

    /// All faces sorted by cardinality, then lexicographically.
    pub fn sorted_faces(&self) -> Vec<Face> {
        let mut v: Vec<Face> = self.all_faces().into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    pub fn f_vector(&self) -> FVector {
        let top = self.facets.iter().map(Face::len).max();
        let Some(top) = top else {
            return FVector(Vec::new());
        };
        let mut f = vec![0u64; top + 1];
        for face in self.all_faces() {
            f[face.len()] += 1;
        }
        FVector(f)
    }

    pub fn h_vector(&self) -> HVector {
        self.f_vector().to_h()
    }

    /// `f_1 - f_2 + f_3 - ...` (vertices minus edges plus triangles ...).
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| if i % 2 == 1 { *c as i64 } else { -(*c as i64) })
            .sum()
    }

    /// Number of facets containing each nonempty proper subface of a facet.
    fn coface_counts(&self) -> HashMap<Face, usize> {
        let mut counts: HashMap<Face, usize> = HashMap::new();
        for f in &self.facets {
            let full = (1u32 << f.len()) - 1;
            for m in 1..full {
                *counts.entry(f.by_mask(m)).or_default() += 1;
            }
        }
        counts
    }

    /// Nonempty faces properly contained in exactly one facet, sorted.
    pub fn free_faces(&self) -> Vec<Face> {
        let mut out: Vec<Face> = self
            .coface_counts()
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(f, _)| f)
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Number of facets that contain `face`.
    pub fn facet_degree(&self, face: &Face) -> usize {
        self.facets.iter().filter(|f| face.is_subset(f)).count()
    }

    /// Re-expresses a face of `other` in this complex's vertex table.
    pub fn translate(&self, other: &Complex, face: &Face) -> Option<Face> {
        self.face(&other.names(face))
    }

    pub fn union(&self, other: &Complex) -> Complex {
        let faces = self.facet_names().into_iter().chain(other.facet_names());
        Complex::from_facets(faces).expect("names taken from valid complexes")
    }

    /// Faces lying in both complexes (compared by vertex names).
    pub fn intersection(&self, other: &Complex) -> Complex {
        if self.is_void() || other.is_void() {
            return Complex::void();
        }
        let theirs = other.all_faces();
        let mut common: Vec<Vec<String>> = Vec::new();
        for f in self.all_faces() {
            if let Some(g) = other.translate(self, &f) {
                if theirs.contains(&g) {
                    common.push(self.owned_names(&f));
                }
            }
        }
        Complex::from_named_faces(&common)
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.facets.iter().all(|f| {
            other
                .translate(self, f)
                .is_some_and(|g| other.contains_face(&g))
        })
    }

    /// The complex generated by the facets selected by `keep`.
    pub fn sub_by_facets(&self, keep: impl Fn(&Face) -> bool) -> Complex {
        let faces: Vec<Vec<String>> = self
            .facets
            .iter()
            .filter(|f| keep(f))
            .map(|f| self.owned_names(f))
            .collect();
        Complex::from_named_faces(&faces)
    }

    /// Subcomplex induced on a set of vertex names.
    pub fn induced<S: AsRef<str>>(&self, names: &[S]) -> Complex {
        let keep: HashSet<u32> = names
            .iter()
            .filter_map(|n| self.vertex_index(n.as_ref()))
            .collect();
        let faces: Vec<Vec<String>> = self
            .facets
            .iter()
            .map(|f| {
                f.vertices()
                    .iter()
                    .filter(|v| keep.contains(v))
                    .map(|v| self.vertex_name(*v).to_string())
                    .collect()
            })
            .collect();
        if keep.is_empty() && !self.is_void() {
            return Complex::empty_face_only();
        }
        Complex::from_named_faces(&faces)
    }

    /// Renames vertices through `f`. Fails if two vertices of one facet would merge.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<Complex, ComplexError> {
        let faces: Vec<Vec<String>> = self
            .facets
            .iter()
            .map(|face| face.vertices().iter().map(|v| f(self.vertex_name(*v))).collect())
            .collect();
        Complex::from_facets(faces.iter().map(|f| f.iter().map(String::as_str)))
    }

    /// Renames through a lookup table; names absent from the table are kept.
    pub fn renamed_by(&self, map: &HashMap<String, String>) -> Result<Complex, ComplexError> {
        self.renamed(|n| map.get(n).cloned().unwrap_or_else(|| n.to_string()))
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, face) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.names(face).join(" "))?;
        }
        write!(f, ">")
    }
}

/// A pair `(Δ, Γ)` with `Γ` a subcomplex of `Δ`. Its faces are the faces of
/// `Δ` that are not faces of `Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeComplex {
    delta: Complex,
    gamma: Complex,
    gamma_facets: Vec<Face>,
}

impl RelativeComplex {
    pub fn new(delta: Complex, gamma: Complex) -> Result<Self, ComplexError> {
        let mut gamma_facets = Vec::with_capacity(gamma.num_facets());
        for g in gamma.facets() {
            match delta.translate(&gamma, g) {
                Some(f) if delta.contains_face(&f) => gamma_facets.push(f),
                _ => return Err(ComplexError::NotSubcomplex(gamma.owned_names(g))),
            }
        }
        Ok(RelativeComplex {
            delta,
            gamma,
            gamma_facets,
        })
    }

    /// `(Δ, void)`.
    pub fn absolute(delta: Complex) -> Self {
        RelativeComplex {
            delta,
            gamma: Complex::void(),
            gamma_facets: Vec::new(),
        }
    }

    pub fn delta(&self) -> &Complex {
        &self.delta
    }

    pub fn gamma(&self) -> &Complex {
        &self.gamma
    }

    /// Facets of `Γ` expressed in `Δ`'s vertex table.
    pub fn gamma_facets(&self) -> &[Face] {
        &self.gamma_facets
    }

    pub fn in_gamma(&self, face: &Face) -> bool {
        self.gamma_facets.iter().any(|g| face.is_subset(g))
    }

    /// Facets of `Δ` that are not faces of `Γ`.
    pub fn facets(&self) -> Vec<Face> {
        self.delta
            .facets()
            .iter()
            .filter(|f| !self.in_gamma(f))
            .cloned()
            .collect()
    }

    /// Per-cardinality counts of faces of `Δ` not in `Γ` (index 0 is the empty face).
    pub fn face_counts(&self) -> Vec<u64> {
        let mut counts = self.delta.f_vector().0;
        let gamma_faces: HashSet<Face> = self
            .gamma_facets
            .iter()
            .flat_map(|g| g.subfaces().collect::<Vec<_>>())
            .collect();
        for g in gamma_faces {
            counts[g.len()] -= 1;
        }
        counts
    }

    /// `Σ (-1)^dim` over faces of the relative complex (the empty face has dimension -1).
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { *c as i64 } else { -(*c as i64) })
            .sum()
    }
}
