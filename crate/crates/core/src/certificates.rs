//! Satisfying assignments to shellings of the reduced complex and back.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::complex::{Complex, RelativeComplex};
use crate::gadgets::{
    append_piece, hemisphere_styled, negated_role, shell_hemisphere, tricorne, turbine_shelling,
    GadgetError,
};
use crate::reduction::{Piece, ReductionMeta, VariableMeta};
use crate::shelling::{check_shelling_named, relative_from_absolute, Shelling, ShellingError};

/// Truth values of variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn literal(&self, lit: i32) -> bool {
        self.value(lit.unsigned_abs() as usize) == (lit > 0)
    }

    /// Parses `v 1 -2 … 0`; the `v` and the trailing `0` are optional, and
    /// every variable `1..=n` must appear exactly once.
    pub fn parse(text: &str, n: usize) -> Result<Self, AssignmentError> {
        let mut values: Vec<Option<bool>> = vec![None; n];
        for tok in text.split_whitespace() {
            if tok == "v" || tok == "0" {
                continue;
            }
            let lit: i64 = tok.parse().map_err(|_| AssignmentError::BadToken(tok.to_string()))?;
            let var = lit.unsigned_abs() as usize;
            if var == 0 || var > n {
                return Err(AssignmentError::OutOfRange(lit));
            }
            if values[var - 1].replace(lit > 0).is_some() {
                return Err(AssignmentError::Repeated(var));
            }
        }
        values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or(AssignmentError::Missing(i + 1)))
            .collect::<Result<Vec<_>, _>>()
            .map(Assignment)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v")?;
        for (i, b) in self.0.iter().enumerate() {
            write!(f, " {}{}", if *b { "" } else { "-" }, i + 1)?;
        }
        write!(f, " 0")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssignmentError {
    #[error("{0:?} is not a literal")]
    BadToken(String),
    #[error("literal {0} is out of range")]
    OutOfRange(i64),
    #[error("variable {0} is assigned twice")]
    Repeated(usize),
    #[error("variable {0} is not assigned")]
    Missing(usize),
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("assignment has {got} values for {want} variables")]
    WrongLength { got: usize, want: usize },
    #[error("clause {clause} {literals:?} is false under the assignment")]
    Unsatisfied { clause: usize, literals: Vec<i32> },
    #[error("the shelling is not an absolute shelling of the reduced complex")]
    WrongComplex,
    #[error("homology facet {{{}}} lies outside every literal hemisphere", .0.join(" "))]
    HomologyFacetOutsideHemispheres(Vec<String>),
    #[error("choice gadget of variable {var} has {count} homology facets; exactly one is forced")]
    HomologyCount { var: usize, count: usize },
    #[error("extracted assignment leaves clause {clause} false, contradicting the counting argument")]
    ExtractedUnsatisfied { clause: usize },
    #[error("internal composition failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Shelling(#[from] ShellingError),
}

fn rename_order(order: &[Vec<String>], map: &HashMap<String, String>) -> Vec<Vec<String>> {
    order
        .iter()
        .map(|f| f.iter().map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone())).collect())
        .collect()
}

/// Builds a shelling of the reduced complex from a satisfying assignment.
///
/// 1. For each variable, its tricorne and then its false hemisphere.
/// 2. For each clause, its turbine, relative to the gluing tree plus the free
///    edges already attached to false hemispheres; a satisfied clause leaves
///    at least one free edge out.
/// 3. For each variable, its true hemisphere, relative to its boundary and
///    the turbine edges attached inside it. Its homology facet comes last.
pub fn build_shelling(meta: &ReductionMeta, a: &Assignment) -> Result<Shelling, CertificateError> {
    let inst = &meta.instance;
    if a.0.len() != inst.num_vars {
        return Err(CertificateError::WrongLength { got: a.0.len(), want: inst.num_vars });
    }
    if let Some(j) = inst.first_unsatisfied(&a.0) {
        return Err(CertificateError::Unsatisfied {
            clause: j + 1,
            literals: inst.clauses[j].clone(),
        });
    }
    let void = Complex::void();
    let tri = tricorne();
    let tri_order = tri.shelling.clone().expect("tricorne has a pinned shelling");
    let mut acc: Option<Shelling> = None;

    for v in &meta.variables {
        let k = v.index;
        let piece = meta.piece(Piece::Tricorne(k));
        let map: HashMap<String, String> =
            ["w", "x", "s", "t1", "t2", "t3", "t4"].iter().map(|r| (r.to_string(), v.roles[*r].clone())).collect();
        let order = rename_order(&tri_order, &map);
        acc = Some(append_piece(acc, &piece, &void, |rc| {
            let abs = check_shelling_named(&RelativeComplex::absolute(piece.clone()), &order)?;
            if rc.gamma().is_void() {
                Ok(abs)
            } else {
                Ok(relative_from_absolute(&piece, rc.gamma(), &abs.order())?)
            }
        })?);
        let false_side = if a.value(k) { Piece::Negative(k) } else { Piece::Positive(k) };
        acc = Some(append_hemisphere(acc, meta, false_side, v)?);
    }

    for c in &meta.clauses {
        let piece = meta.piece(Piece::Turbine(c.index));
        let glued: Vec<usize> = c
            .branches
            .iter()
            .filter(|b| !a.literal(b.literal))
            .map(|b| b.branch)
            .collect();
        let n = c.literals.len();
        let local = turbine_shelling(n, Some(&glued))?;
        let map: HashMap<String, String> = c.vertex_map.clone().into_iter().collect();
        let order = rename_order(&local.order_names(), &map);
        let expected = local.gamma().renamed_by(&map).map_err(ShellingError::from)?;
        acc = Some(append_piece(acc, &piece, &void, |rc| {
            if rc.gamma() != &expected {
                return Err(GadgetError::NoShelling(format!(
                    "turbine of clause {} attaches along {} instead of {}",
                    c.index,
                    rc.gamma(),
                    expected
                )));
            }
            Ok(check_shelling_named(rc, &order)?)
        })?);
    }

    for v in &meta.variables {
        let true_side = if a.value(v.index) { Piece::Positive(v.index) } else { Piece::Negative(v.index) };
        acc = Some(append_hemisphere(acc, meta, true_side, v)?);
    }

    let s = acc.ok_or_else(|| CertificateError::Internal("no variables".into()))?;
    if s.delta() != &meta.complex() || !s.gamma().is_void() {
        return Err(CertificateError::Internal("assembled shelling covers the wrong complex".into()));
    }
    Ok(s)
}

fn append_hemisphere(
    acc: Option<Shelling>,
    meta: &ReductionMeta,
    side: Piece,
    v: &VariableMeta,
) -> Result<Shelling, CertificateError> {
    let piece = meta.piece(side);
    let template = hemisphere_styled(meta.style);
    let to_local: HashMap<String, String> = template
        .complex
        .vertices()
        .iter()
        .map(|r| {
            let role = match side {
                Piece::Negative(_) => negated_role(r),
                _ => r.clone(),
            };
            (v.roles[&role].clone(), r.clone())
        })
        .collect();
    Ok(append_piece(acc, &piece, &Complex::void(), |rc| {
        shell_hemisphere(meta.style, &piece, rc.gamma(), &to_local)
    })?)
}

/// Reads an assignment off a shelling of the reduced complex: each choice
/// gadget holds exactly one homology facet, in one of its hemispheres, and
/// the variable is true when that is the positive one.
pub fn extract_assignment(meta: &ReductionMeta, s: &Shelling) -> Result<Assignment, CertificateError> {
    if s.delta() != &meta.complex() || !s.gamma().is_void() {
        return Err(CertificateError::WrongComplex);
    }
    let owners = meta.owners();
    let mut found: Vec<Vec<bool>> = vec![Vec::new(); meta.variables.len()];
    for f in s.homology_facets() {
        let names = s.delta().owned_names(&f);
        match owners.get(&names) {
            Some(Piece::Positive(k)) => found[k - 1].push(true),
            Some(Piece::Negative(k)) => found[k - 1].push(false),
            _ => return Err(CertificateError::HomologyFacetOutsideHemispheres(names)),
        }
    }
    let mut values = Vec::with_capacity(found.len());
    for (i, f) in found.iter().enumerate() {
        if f.len() != 1 {
            return Err(CertificateError::HomologyCount { var: i + 1, count: f.len() });
        }
        values.push(f[0]);
    }
    if let Some(j) = meta.instance.first_unsatisfied(&values) {
        return Err(CertificateError::ExtractedUnsatisfied { clause: j + 1 });
    }
    Ok(Assignment(values))
}

/// The pieces holding each homology facet of a shelling of the reduced
/// complex, in shelling order.
pub fn homology_facet_pieces(meta: &ReductionMeta, s: &Shelling) -> Vec<Option<Piece>> {
    let owners = meta.owners();
    s.homology_facets()
        .iter()
        .map(|f| owners.get(&s.delta().owned_names(f)).copied())
        .collect()
}

/// Every satisfying assignment of a small instance.
pub fn satisfying_assignments(meta: &ReductionMeta) -> Vec<Assignment> {
    let n = meta.instance.num_vars;
    assert!(n <= 20, "too many variables to enumerate");
    (0u32..1 << n)
        .map(|m| (0..n).map(|i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|v| meta.instance.first_unsatisfied(v).is_none())
        .map(Assignment)
        .collect()
}
