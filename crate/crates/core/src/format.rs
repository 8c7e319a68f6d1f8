//! Line formats for complexes and shellings, and the JSON metadata sidecar.
//!
//! A complex file holds `f v1 v2 …` lines (facets of Δ), `g v1 v2 …` lines
//! (faces generating Γ) and `#` comments. A shelling file holds one
//! `s v1 v2 …` line per facet, in order.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::complex::{Complex, ComplexError, RelativeComplex};
use crate::gadgets::GadgetComplex;
use crate::reduction::ReductionMeta;
use crate::shelling::Shelling;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: unknown directive {directive:?}")]
    UnknownDirective { line: usize, directive: String },
    #[error("line {line}: vertex {vertex:?} repeated in one face")]
    RepeatedVertex { line: usize, vertex: String },
    #[error("line {line}: {{{}}} is not a face of the complex", .face.join(" "))]
    NotAFace { line: usize, face: Vec<String> },
    #[error("no facets")]
    NoFacets,
    #[error("metadata: {0}")]
    Meta(#[from] serde_json::Error),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn parse_lines<'a>(
    text: &'a str,
    allowed: &[&str],
) -> Result<Vec<(usize, &'a str, Vec<String>)>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut toks = t.split_whitespace();
        let d = toks.next().unwrap_or_default();
        if !allowed.contains(&d) {
            return Err(FormatError::UnknownDirective { line, directive: d.to_string() });
        }
        let mut face: Vec<String> = Vec::new();
        for v in toks {
            if face.iter().any(|u| u == v) {
                return Err(FormatError::RepeatedVertex { line, vertex: v.to_string() });
            }
            face.push(v.to_string());
        }
        out.push((line, d, face));
    }
    Ok(out)
}

/// Parses a complex file. Without `g` lines the subcomplex is void; a bare
/// `g` line stands for the empty face alone.
pub fn parse_complex(text: &str) -> Result<RelativeComplex, FormatError> {
    let lines = parse_lines(text, &["f", "g"])?;
    let mut facets: BTreeSet<Vec<String>> = BTreeSet::new();
    for (_, d, f) in &lines {
        if *d == "f" {
            let mut f = f.clone();
            f.sort();
            facets.insert(f);
        }
    }
    if facets.is_empty() {
        return Err(FormatError::NoFacets);
    }
    let delta = Complex::from_facets(facets.iter().map(|f| f.iter().map(String::as_str)))?;
    let mut gamma_faces: Vec<&Vec<String>> = Vec::new();
    for (line, d, f) in &lines {
        if *d == "g" {
            if !delta.contains_names(f) {
                return Err(FormatError::NotAFace { line: *line, face: f.clone() });
            }
            gamma_faces.push(f);
        }
    }
    let gamma = if gamma_faces.is_empty() {
        Complex::void()
    } else {
        Complex::from_facets(gamma_faces.iter().map(|f| f.iter().map(String::as_str)))?
    };
    Ok(RelativeComplex::new(delta, gamma)?)
}

/// Writes a complex file. Each comment becomes a `#` line at the top.
pub fn write_complex(rc: &RelativeComplex, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for l in c.lines() {
            out.push_str("# ");
            out.push_str(l);
            out.push('\n');
        }
    }
    let face_line = |d: &str, names: Vec<String>| {
        let mut s = d.to_string();
        for n in names {
            s.push(' ');
            s.push_str(&n);
        }
        s.push('\n');
        s
    };
    let mut facets = rc.delta().facet_names();
    facets.sort();
    for f in facets {
        out.push_str(&face_line("f", f));
    }
    let mut gamma = rc.gamma().facet_names();
    gamma.sort();
    for g in gamma {
        out.push_str(&face_line("g", g));
    }
    out
}

/// Parses a shelling file into a facet order given by names.
pub fn parse_shelling(text: &str) -> Result<Vec<Vec<String>>, FormatError> {
    Ok(parse_lines(text, &["s"])?.into_iter().map(|(_, _, f)| f).collect())
}

pub fn write_order(order: &[Vec<String>]) -> String {
    let mut out = String::new();
    for f in order {
        out.push('s');
        for v in f {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
    }
    out
}

pub fn write_shelling(s: &Shelling) -> String {
    write_order(&s.order_names())
}

/// Complex file of a gadget, with its face numbers, roles and marked
/// subcomplexes as comments.
pub fn write_gadget(g: &GadgetComplex) -> String {
    let f = g.complex.f_vector().0;
    let h = g.complex.h_vector().0;
    let join = |v: Vec<String>| v.join(",");
    let mut comments = vec![
        format!("gadget {}", g.name),
        format!("f-vector ({})", join(f.iter().map(u64::to_string).collect())),
        format!("h-vector ({})", join(h.iter().map(i64::to_string).collect())),
    ];
    for (role, v) in &g.roles {
        if role != v {
            comments.push(format!("role {role} = {v}"));
        }
    }
    for (name, c) in &g.marked {
        comments.push(format!("marked {name} {c}"));
    }
    for [a, b] in &g.free_edges {
        comments.push(format!("free edge {a} {b}"));
    }
    write_complex(&RelativeComplex::absolute(g.complex.clone()), &comments)
}

pub fn parse_meta(text: &str) -> Result<ReductionMeta, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_meta(meta: &ReductionMeta) -> String {
    let mut s = serde_json::to_string_pretty(meta).expect("metadata serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_round_trip() {
        let text = "# two triangles\nf 1 2 3\nf 4 3 2\nf 1 2 3\ng 1 2\n";
        let rc = parse_complex(text).unwrap();
        assert_eq!(rc.delta().num_facets(), 2);
        let again = parse_complex(&write_complex(&rc, &[])).unwrap();
        assert_eq!(again, rc);
    }

    #[test]
    fn gamma_must_lie_in_delta() {
        assert!(matches!(
            parse_complex("f 1 2 3\ng 1 4\n"),
            Err(FormatError::NotAFace { line: 2, .. })
        ));
        assert!(matches!(parse_complex("x 1 2\n"), Err(FormatError::UnknownDirective { .. })));
        assert!(matches!(parse_complex("# nothing\n"), Err(FormatError::NoFacets)));
    }

    #[test]
    fn bare_g_is_the_empty_face() {
        let rc = parse_complex("f a b\ng\n").unwrap();
        assert!(!rc.gamma().is_void());
        assert_eq!(rc.gamma().num_facets(), 1);
    }
}
