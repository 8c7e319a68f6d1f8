//! Building complexes out of smaller ones.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::complex::{Complex, ComplexError, Face};

/// One way a vertex identification fails to produce the intended complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GluingViolation {
    /// A facet of each side became the same vertex set.
    DuplicateFacet { facet: Vec<String> },
    /// A facet of one side became a proper face of a facet of the other.
    Absorbed { facet: Vec<String>, into: Vec<String> },
    /// The sides share a face that is not part of the requested gluing region.
    ExtraSharedFace { face: Vec<String> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GluingError {
    #[error("gluing map is not a matching: {0:?} used twice")]
    NotAMatching(String),
    #[error("vertex {0:?} is not in the complex it is paired from")]
    UnknownVertex(String),
    #[error("unpaired vertex {0:?} occurs on both sides")]
    NameClash(String),
    #[error("gluing region is not a subcomplex of the first complex")]
    RegionOutside,
    #[error("gluing is not simplicial: {0:?}")]
    NonSimplicialGluing(Vec<GluingViolation>),
    #[error("face {0:?} is not a face of the complex")]
    NotAFace(Vec<String>),
    #[error("face to subdivide must have 2 or 3 vertices")]
    BadSubdivisionFace,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Pairs `(vertex of a, vertex of b)` to identify, and optionally the region
/// (in `a`'s names) along which the two sides are meant to meet.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GluingMap {
    pub pairs: Vec<(String, String)>,
    pub along: Option<Complex>,
}

impl GluingMap {
    pub fn new<A: Into<String>, B: Into<String>>(pairs: impl IntoIterator<Item = (A, B)>) -> Self {
        GluingMap {
            pairs: pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
            along: None,
        }
    }

    pub fn along(mut self, region: Complex) -> Self {
        self.along = Some(region);
        self
    }

    fn validate(&self) -> Result<HashMap<&str, &str>, GluingError> {
        let mut left = HashSet::new();
        let mut b_to_a = HashMap::new();
        for (a, b) in &self.pairs {
            if !left.insert(a.as_str()) {
                return Err(GluingError::NotAMatching(a.clone()));
            }
            if b_to_a.insert(b.as_str(), a.as_str()).is_some() {
                return Err(GluingError::NotAMatching(b.clone()));
            }
        }
        Ok(b_to_a)
    }
}

/// Identifies each paired vertex of `b` with its partner in `a` and returns
/// the union. Unpaired vertices of `b` keep their names and must not occur in
/// `a`. The result is validated: no facet may collapse, no facet of `b` may
/// coincide with or fall inside a facet of `a`, and when `m.along` is given,
/// the two sides may share no face outside it.
pub fn glue(a: &Complex, b: &Complex, m: &GluingMap) -> Result<Complex, GluingError> {
    let b_to_a = m.validate()?;
    for (va, vb) in &m.pairs {
        if a.vertex_index(va).is_none() {
            return Err(GluingError::UnknownVertex(va.clone()));
        }
        if b.vertex_index(vb).is_none() {
            return Err(GluingError::UnknownVertex(vb.clone()));
        }
    }
    for v in b.vertices() {
        if !b_to_a.contains_key(v.as_str()) && a.vertex_index(v).is_some() {
            return Err(GluingError::NameClash(v.clone()));
        }
    }
    if let Some(region) = &m.along {
        if !region.is_subcomplex_of(a) {
            return Err(GluingError::RegionOutside);
        }
    }

    let rename = |v: &str| b_to_a.get(v).map_or_else(|| v.to_string(), |x| x.to_string());
    let mut violations = Vec::new();
    // the renaming is injective, so facets of b stay distinct
    let b_renamed = b.renamed(rename)?;
    for g in b_renamed.facets() {
        if let Some(ga) = a.translate(&b_renamed, g) {
            for fa in a.facets() {
                if ga == *fa {
                    violations.push(GluingViolation::DuplicateFacet {
                        facet: a.owned_names(fa),
                    });
                } else if ga.is_subset(fa) {
                    violations.push(GluingViolation::Absorbed {
                        facet: b_renamed.owned_names(g),
                        into: a.owned_names(fa),
                    });
                }
            }
        }
    }
    for fa in a.facets() {
        if let Some(gb) = b_renamed.translate(a, fa) {
            if let Some(fb) = b_renamed.facets().iter().find(|fb| gb.is_subset(fb) && gb != **fb) {
                violations.push(GluingViolation::Absorbed {
                    facet: a.owned_names(fa),
                    into: b_renamed.owned_names(fb),
                });
            }
        }
    }
    if let Some(region) = &m.along {
        let shared = a.intersection(&b_renamed);
        for face in shared.sorted_faces() {
            let names = shared.owned_names(&face);
            if !region.contains_names(&names) {
                violations.push(GluingViolation::ExtraSharedFace { face: names });
            }
        }
    }
    if !violations.is_empty() {
        return Err(GluingError::NonSimplicialGluing(violations));
    }
    Ok(a.union(&b_renamed))
}

/// Union on disjoint vertex sets. If the names clash, every vertex of `a`
/// gets the suffix `.a` and every vertex of `b` the suffix `.b`.
pub fn disjoint_union(a: &Complex, b: &Complex) -> Complex {
    let clash = b.vertices().iter().any(|v| a.vertex_index(v).is_some());
    if !clash {
        return a.union(b);
    }
    let ra = a.renamed(|v| format!("{v}.a")).expect("suffix keeps names distinct");
    let rb = b.renamed(|v| format!("{v}.b")).expect("suffix keeps names distinct");
    ra.union(&rb)
}

/// The cone with the given apex: one facet `{apex} ∪ σ` per facet `σ` of `base`.
pub fn cone(apex: &str, base: &Complex) -> Result<Complex, GluingError> {
    if base.vertex_index(apex).is_some() {
        return Err(GluingError::NameClash(apex.to_string()));
    }
    let faces: Vec<Vec<String>> = base
        .facet_names()
        .into_iter()
        .map(|mut f| {
            f.push(apex.to_string());
            f
        })
        .collect();
    Ok(Complex::from_facets(faces.iter().map(|f| f.iter().map(String::as_str)))?)
}

/// Stellar subdivision of an edge or triangle: every facet containing `face`
/// is replaced by the facets obtained by swapping one vertex of `face` for
/// the new vertex.
pub fn stellar_subdivide<S: AsRef<str>>(
    c: &Complex,
    face: &[S],
    new_vertex: &str,
) -> Result<Complex, GluingError> {
    let names: Vec<String> = face.iter().map(|s| s.as_ref().to_string()).collect();
    if !(2..=3).contains(&names.len()) {
        return Err(GluingError::BadSubdivisionFace);
    }
    let f: Face = c
        .find_face(&names)
        .ok_or_else(|| GluingError::NotAFace(names.clone()))?;
    if f.len() != names.len() {
        return Err(GluingError::NotAFace(names));
    }
    if c.vertex_index(new_vertex).is_some() {
        return Err(GluingError::NameClash(new_vertex.to_string()));
    }
    let mut out: Vec<Vec<String>> = Vec::new();
    for sigma in c.facets() {
        let base = c.owned_names(sigma);
        if !f.is_subset(sigma) {
            out.push(base);
            continue;
        }
        for drop in &names {
            let replaced: Vec<String> = base
                .iter()
                .map(|v| if v == drop { new_vertex.to_string() } else { v.clone() })
                .collect();
            out.push(replaced);
        }
    }
    Ok(Complex::from_named_faces(&out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(faces: &[&str]) -> Complex {
        Complex::from_facets(faces.iter().map(|f| f.split_whitespace())).unwrap()
    }

    #[test]
    fn glue_two_triangles() {
        let a = cx(&["1 2 3"]);
        let b = cx(&["2' 3' 4"]);
        let m = GluingMap::new([("2", "2'"), ("3", "3'")]);
        let g = glue(&a, &b, &m).unwrap();
        assert_eq!(g, cx(&["1 2 3", "2 3 4"]));
    }

    #[test]
    fn glue_reports_duplicate_and_extra_faces() {
        let a = cx(&["1 2 3"]);
        let b = cx(&["p q r"]);
        let m = GluingMap::new([("1", "p"), ("2", "q"), ("3", "r")]);
        assert!(matches!(
            glue(&a, &b, &m),
            Err(GluingError::NonSimplicialGluing(v)) if v.iter().any(|x| matches!(x, GluingViolation::DuplicateFacet{..}))
        ));

        let a = cx(&["1 2 3"]);
        let b = cx(&["p q 4"]);
        let m = GluingMap::new([("1", "p"), ("2", "q")]).along(cx(&["1", "2"]));
        match glue(&a, &b, &m) {
            Err(GluingError::NonSimplicialGluing(v)) => assert_eq!(
                v,
                vec![GluingViolation::ExtraSharedFace {
                    face: vec!["1".into(), "2".into()]
                }]
            ),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn glue_requires_matching_and_fresh_names() {
        let a = cx(&["1 2 3"]);
        let b = cx(&["p q 3"]);
        assert!(matches!(
            glue(&a, &b, &GluingMap::new([("1", "p"), ("1", "q")])),
            Err(GluingError::NotAMatching(_))
        ));
        assert!(matches!(
            glue(&a, &b, &GluingMap::new([("1", "p")])),
            Err(GluingError::NameClash(_))
        ));
    }

    #[test]
    fn disjoint_union_renames_on_clash() {
        let t = cx(&["a b c"]);
        let u = disjoint_union(&t, &t);
        assert_eq!(u.num_facets(), 2);
        assert_eq!(u.num_vertices(), 6);
        assert!(u.vertex_index("a.a").is_some() && u.vertex_index("a.b").is_some());
        assert_eq!(disjoint_union(&Complex::void(), &t), t);
    }

    #[test]
    fn cone_over_hexagon() {
        let hex = cx(&["0 1", "1 2", "2 3", "3 4", "4 5", "5 0"]);
        let c = cone("w", &hex).unwrap();
        assert_eq!(c.num_facets(), 6);
        assert_eq!(c.euler_characteristic(), 1);
        assert!(cone("0", &hex).is_err());
    }

    #[test]
    fn hemisphere_by_two_subdivisions() {
        let t = cx(&["x w a"]);
        let once = stellar_subdivide(&t, &["x", "w", "a"], "y").unwrap();
        assert_eq!(once, cx(&["x w y", "w a y", "x a y"]));
        let twice = stellar_subdivide(&once, &["a", "y"], "y'").unwrap();
        assert_eq!(twice, cx(&["x w y", "w a y'", "w y' y", "a x y'", "x y' y"]));
        assert_eq!(twice.euler_characteristic(), 1);
    }

    #[test]
    fn subdivide_errors() {
        let t = cx(&["x w a"]);
        assert!(matches!(
            stellar_subdivide(&t, &["x", "q"], "n"),
            Err(GluingError::NotAFace(_))
        ));
        assert!(matches!(
            stellar_subdivide(&t, &["x", "w"], "a"),
            Err(GluingError::NameClash(_))
        ));
        assert!(matches!(
            stellar_subdivide(&t, &["x"], "n"),
            Err(GluingError::BadSubdivisionFace)
        ));
    }
}
