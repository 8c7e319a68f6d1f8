//! Shelling certificates for absolute and relative complexes.
//!
//! A facet order of `(Δ, Γ)` is a shelling when, at every step, the faces of
//! the current facet that are neither in `Γ` nor in an earlier facet have a
//! unique minimal element. [`check_shelling`] implements exactly that test;
//! [`check_shelling_eq1`] and [`check_relative_purity`] are independent
//! formulations kept as oracles.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::complex::{Complex, ComplexError, Face, RelativeComplex};

/// Why a facet order was refused at some step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    /// Zero-based position in the order.
    pub step: usize,
    pub facet: Vec<String>,
    /// The minimal new faces at that step (at least two of them).
    pub candidates: Vec<Vec<String>>,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cands: Vec<String> = self
            .candidates
            .iter()
            .map(|c| format!("{{{}}}", c.join(" ")))
            .collect();
        write!(
            f,
            "step {} (facet {{{}}}): new faces have {} minimal elements: {}",
            self.step + 1,
            self.facet.join(" "),
            self.candidates.len(),
            cands.join(", ")
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShellingError {
    #[error("order is not a permutation of the facets: {0}")]
    NotAPermutation(String),
    #[error("the subcomplex contains the facet {{{}}}", .0.join(" "))]
    GammaContainsFacet(Vec<String>),
    #[error("{0}")]
    Rejected(Rejection),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("gluing hypothesis violated ({which}); witness face {{{}}}", .witness.join(" "))]
    GluingHypothesisViolated { which: String, witness: Vec<String> },
    #[error(
        "step {} (facet {{{}}}): subcomplex facet {{{}}} meets it in no larger subcomplex facet, no earlier facet, and is not contained in it",
        .step + 1, .sigma.join(" "), .tau.join(" ")
    )]
    RelativeConditionsFail {
        step: usize,
        tau: Vec<String>,
        sigma: Vec<String>,
    },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellingStep {
    pub facet: Face,
    pub minimal_new_face: Face,
    pub is_homology_facet: bool,
}

/// A verified shelling of a relative complex. Only [`check_shelling`] and the
/// functions built on it produce values of this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shelling {
    rc: RelativeComplex,
    steps: Vec<ShellingStep>,
}

impl Shelling {
    pub fn relative_complex(&self) -> &RelativeComplex {
        &self.rc
    }

    pub fn delta(&self) -> &Complex {
        self.rc.delta()
    }

    pub fn gamma(&self) -> &Complex {
        self.rc.gamma()
    }

    pub fn steps(&self) -> &[ShellingStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn order(&self) -> Vec<Face> {
        self.steps.iter().map(|s| s.facet.clone()).collect()
    }

    pub fn order_names(&self) -> Vec<Vec<String>> {
        self.steps
            .iter()
            .map(|s| self.rc.delta().owned_names(&s.facet))
            .collect()
    }

    pub fn homology_facets(&self) -> Vec<Face> {
        homology_facets(self)
    }
}

/// Checks that `order` lists every facet of the relative complex exactly once.
fn check_permutation(rc: &RelativeComplex, order: &[Face]) -> Result<(), ShellingError> {
    let delta = rc.delta();
    if let Some(g) = delta.facets().iter().find(|f| rc.in_gamma(f)) {
        return Err(ShellingError::GammaContainsFacet(delta.owned_names(g)));
    }
    let facets: HashSet<&Face> = delta.facets().iter().collect();
    let mut seen: HashSet<&Face> = HashSet::with_capacity(order.len());
    for f in order {
        if !facets.contains(f) {
            let names = f
                .vertices()
                .iter()
                .map(|v| {
                    delta
                        .vertices()
                        .get(*v as usize)
                        .cloned()
                        .unwrap_or_else(|| format!("#{v}"))
                })
                .collect::<Vec<_>>();
            return Err(ShellingError::NotAPermutation(format!(
                "{{{}}} is not a facet",
                names.join(" ")
            )));
        }
        if !seen.insert(f) {
            return Err(ShellingError::NotAPermutation(format!(
                "{{{}}} listed twice",
                delta.names(f).join(" ")
            )));
        }
    }
    if seen.len() != facets.len() {
        let missing = delta
            .facets()
            .iter()
            .find(|f| !seen.contains(f))
            .expect("some facet missing");
        return Err(ShellingError::NotAPermutation(format!(
            "{{{}}} is missing",
            delta.names(missing).join(" ")
        )));
    }
    Ok(())
}

/// Verifies `order` as a shelling of `rc` by the unique-minimal-new-face rule.
pub fn check_shelling(rc: &RelativeComplex, order: &[Face]) -> Result<Shelling, ShellingError> {
    check_permutation(rc, order)?;
    let delta = rc.delta();
    let mut present: HashSet<Face> = HashSet::new();
    for g in rc.gamma_facets() {
        present.extend(g.subfaces());
    }
    let mut steps = Vec::with_capacity(order.len());
    for (j, sigma) in order.iter().enumerate() {
        let k = sigma.len();
        assert!(k < 31, "facet too large");
        let full: u32 = (1 << k) - 1;
        let is_new: Vec<bool> = (0..=full)
            .map(|m| !present.contains(&sigma.by_mask(m)))
            .collect();
        debug_assert!(is_new[full as usize]);
        let meet = (0..=full)
            .filter(|m| is_new[*m as usize])
            .fold(full, |acc, m| acc & m);
        if !is_new[meet as usize] {
            let minimal: Vec<u32> = (0..=full)
                .filter(|m| is_new[*m as usize])
                .filter(|m| {
                    (0..=full).all(|n| n == *m || n & m != n || !is_new[n as usize])
                })
                .collect();
            return Err(ShellingError::Rejected(Rejection {
                step: j,
                facet: delta.owned_names(sigma),
                candidates: minimal
                    .into_iter()
                    .map(|m| delta.owned_names(&sigma.by_mask(m)))
                    .collect(),
            }));
        }
        steps.push(ShellingStep {
            facet: sigma.clone(),
            minimal_new_face: sigma.by_mask(meet),
            is_homology_facet: meet == full,
        });
        for m in 0..=full {
            if is_new[m as usize] {
                present.insert(sigma.by_mask(m));
            }
        }
    }
    Ok(Shelling {
        rc: rc.clone(),
        steps,
    })
}

/// Convenience: checks an order given by vertex names.
pub fn check_shelling_named<S: AsRef<str>>(
    rc: &RelativeComplex,
    order: &[Vec<S>],
) -> Result<Shelling, ShellingError> {
    let faces = faces_from_names(rc.delta(), order)?;
    check_shelling(rc, &faces)
}

pub(crate) fn faces_from_names<S: AsRef<str>>(
    delta: &Complex,
    order: &[Vec<S>],
) -> Result<Vec<Face>, ShellingError> {
    order
        .iter()
        .map(|names| {
            delta.face(names).ok_or_else(|| {
                ShellingError::NotAPermutation(format!(
                    "{{{}}} uses an unknown vertex",
                    names.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(" ")
                ))
            })
        })
        .collect()
}

/// The classical pairwise-intersection condition for absolute shellings:
/// for all `i < j` some `k < j` has `σ_i∩σ_j ⊆ σ_k∩σ_j = σ_j \ {x}`.
pub fn check_shelling_eq1(c: &Complex, order: &[Face]) -> Result<bool, ShellingError> {
    check_permutation(&RelativeComplex::absolute(c.clone()), order)?;
    for (j, sj) in order.iter().enumerate() {
        let ridges: Vec<Face> = order[..j]
            .iter()
            .map(|sk| sk.intersect(sj))
            .filter(|m| m.len() + 1 == sj.len())
            .collect();
        for si in &order[..j] {
            let m = si.intersect(sj);
            if !ridges.iter().any(|r| m.is_subset(r)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The purity formulation for `Γ` non-void and `Δ` pure: each facet meets
/// the complex generated by its predecessors together with `Γ` in a pure
/// complex of one lower dimension.
pub fn check_relative_purity(rc: &RelativeComplex, order: &[Face]) -> Result<bool, ShellingError> {
    if rc.gamma().is_void() {
        return Err(ShellingError::Hypothesis(
            "the purity formulation needs a non-void subcomplex".into(),
        ));
    }
    if !rc.delta().is_pure() {
        return Err(ShellingError::Hypothesis("the complex is not pure".into()));
    }
    check_permutation(rc, order)?;
    for (j, sj) in order.iter().enumerate() {
        let mut meets: Vec<Face> = order[..j]
            .iter()
            .chain(rc.gamma_facets())
            .map(|t| t.intersect(sj))
            .collect();
        meets.sort_by_key(|f| std::cmp::Reverse(f.len()));
        meets.dedup();
        let maximal: Vec<&Face> = meets
            .iter()
            .enumerate()
            .filter(|(i, f)| {
                !meets
                    .iter()
                    .enumerate()
                    .any(|(k, g)| k != *i && g.len() > f.len() && f.is_subset(g))
            })
            .map(|(_, f)| f)
            .collect();
        if maximal.iter().any(|f| f.len() + 1 != sj.len()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Facets whose minimal new face is the facet itself.
pub fn homology_facets(s: &Shelling) -> Vec<Face> {
    s.steps
        .iter()
        .filter(|st| st.is_homology_facet)
        .map(|st| st.facet.clone())
        .collect()
}

fn some_face_outside(a: &Complex, b: &Complex) -> Vec<String> {
    a.facets()
        .iter()
        .find(|f| b.translate(a, f).map_or(true, |g| !b.contains_face(&g)))
        .map(|f| a.owned_names(f))
        .unwrap_or_default()
}

/// Glues two relative shellings: a shelling of `(Δa, Γa)` followed by one of
/// `(Δb, (Δa∩Δb) ∪ Γb)` gives a shelling of `(Δa ∪ Δb, Γa ∪ Γb)`, provided
/// `Δa ∩ Γb ⊆ Γa` and `(Δa∩Δb) ∪ Γb` is not void.
pub fn concat_shellings(
    sa: &Shelling,
    sb: &Shelling,
    gamma_b: &Complex,
) -> Result<Shelling, ShellingError> {
    let (da, ga) = (sa.delta(), sa.gamma());
    let db = sb.delta();
    let leak = da.intersection(gamma_b);
    if !leak.is_subcomplex_of(ga) {
        return Err(ShellingError::GluingHypothesisViolated {
            which: "Δa ∩ Γb ⊄ Γa".into(),
            witness: some_face_outside(&leak, ga),
        });
    }
    let attach = da.intersection(db).union(gamma_b);
    if attach.is_void() {
        return Err(ShellingError::GluingHypothesisViolated {
            which: "(Δa ∩ Δb) ∪ Γb is void".into(),
            witness: Vec::new(),
        });
    }
    if &attach != sb.gamma() {
        let witness = if attach.is_subcomplex_of(sb.gamma()) {
            some_face_outside(sb.gamma(), &attach)
        } else {
            some_face_outside(&attach, sb.gamma())
        };
        return Err(ShellingError::GluingHypothesisViolated {
            which: "second shelling is not relative to (Δa ∩ Δb) ∪ Γb".into(),
            witness,
        });
    }
    let delta = da.union(db);
    let gamma = ga.union(gamma_b);
    let rc = RelativeComplex::new(delta, gamma)?;
    let order: Vec<Vec<String>> = sa.order_names().into_iter().chain(sb.order_names()).collect();
    check_shelling_named(&rc, &order)
        .map_err(|e| ShellingError::Internal(format!("glued order failed re-verification: {e}")))
}

/// Turns an absolute shelling of a pure `d`-complex into a shelling of
/// `(c, gamma)` for a pure `(d-1)`-dimensional `gamma`, after checking that
/// for every facet `τ` of `gamma` and every `σ_j` one of the following holds:
/// `τ∩σ_j ⊊ τ'∩σ_j` for a facet `τ'` of `gamma`; `τ∩σ_j ⊆ σ_i` for some
/// `i < j`; or `τ ⊆ σ_j`.
pub fn relative_from_absolute(
    c: &Complex,
    gamma: &Complex,
    order: &[Face],
) -> Result<Shelling, ShellingError> {
    if !c.is_pure() || c.is_void() {
        return Err(ShellingError::Hypothesis("the complex is not pure".into()));
    }
    let d = c.dimension();
    if !gamma.is_pure() || gamma.dimension() != d - 1 {
        return Err(ShellingError::Hypothesis(format!(
            "the subcomplex must be pure of dimension {}",
            d - 1
        )));
    }
    check_shelling(&RelativeComplex::absolute(c.clone()), order)?;
    let rc = RelativeComplex::new(c.clone(), gamma.clone())?;
    let taus = rc.gamma_facets();
    for (j, sj) in order.iter().enumerate() {
        for tau in taus {
            let m = tau.intersect(sj);
            let contained = tau.is_subset(sj);
            let earlier = order[..j].iter().any(|si| m.is_subset(si));
            let grows = taus.iter().any(|t2| {
                let m2 = t2.intersect(sj);
                m.len() < m2.len() && m.is_subset(&m2)
            });
            if !(contained || earlier || grows) {
                return Err(ShellingError::RelativeConditionsFail {
                    step: j,
                    tau: c.owned_names(tau),
                    sigma: c.owned_names(sj),
                });
            }
        }
    }
    check_shelling(&rc, order)
        .map_err(|e| ShellingError::Internal(format!("conditions held but check failed: {e}")))
}

/// Moves the homology facets to the end, keeping the relative order of both
/// groups, and re-verifies. A homology facet adds no new proper face, so the
/// facets after it see the same new faces once it is moved.
pub fn move_homology_facets_last(s: &Shelling) -> Result<Shelling, ShellingError> {
    let (homology, rest): (Vec<&ShellingStep>, Vec<&ShellingStep>) =
        s.steps.iter().partition(|st| st.is_homology_facet);
    let order: Vec<Face> = rest
        .into_iter()
        .chain(homology)
        .map(|st| st.facet.clone())
        .collect();
    check_shelling(&s.rc, &order)
        .map_err(|e| ShellingError::Internal(format!("rearranged order failed: {e}")))
}

/// Renames the vertices of a shelling's complex and order, then re-verifies.
pub fn rename_shelling(
    s: &Shelling,
    map: &HashMap<String, String>,
) -> Result<Shelling, ShellingError> {
    let delta = s.delta().renamed_by(map)?;
    let gamma = s.gamma().renamed_by(map)?;
    let rc = RelativeComplex::new(delta, gamma)?;
    let order: Vec<Vec<String>> = s
        .order_names()
        .into_iter()
        .map(|f| {
            f.into_iter()
                .map(|v| map.get(&v).cloned().unwrap_or(v))
                .collect()
        })
        .collect();
    check_shelling_named(&rc, &order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(faces: &[&str]) -> Complex {
        Complex::from_facets(faces.iter().map(|f| f.split_whitespace())).unwrap()
    }

    fn order(c: &Complex, faces: &[&str]) -> Vec<Face> {
        faces
            .iter()
            .map(|f| c.face(&f.split_whitespace().collect::<Vec<_>>()).unwrap())
            .collect()
    }

    #[test]
    fn two_triangles_relative_to_edge() {
        let d = cx(&["1 2 3", "2 3 4"]);
        let rc = RelativeComplex::new(d.clone(), cx(&["1 2"])).unwrap();
        let s = check_shelling(&rc, &order(&d, &["1 2 3", "2 3 4"])).unwrap();
        assert_eq!(d.names(&s.steps()[0].minimal_new_face), vec!["3"]);
        assert_eq!(d.names(&s.steps()[1].minimal_new_face), vec!["4"]);
        assert!(s.homology_facets().is_empty());
    }

    #[test]
    fn bowtie_rejected_at_second_step() {
        let d = cx(&["a b c", "c d e"]);
        let rc = RelativeComplex::absolute(d.clone());
        for o in [["a b c", "c d e"], ["c d e", "a b c"]] {
            match check_shelling(&rc, &order(&d, &o)) {
                Err(ShellingError::Rejected(r)) => {
                    assert_eq!(r.step, 1);
                    assert_eq!(r.candidates.len(), 2);
                }
                other => panic!("unexpected {other:?}"),
            }
            assert!(!check_shelling_eq1(&d, &order(&d, &o)).unwrap());
        }
    }

    #[test]
    fn first_facet_has_empty_minimal_face() {
        let d = cx(&["a b c"]);
        let s = check_shelling(&RelativeComplex::absolute(d.clone()), &d.facets().to_vec()).unwrap();
        assert!(s.steps()[0].minimal_new_face.is_empty());
    }

    #[test]
    fn permutation_errors() {
        let d = cx(&["1 2 3", "2 3 4"]);
        let rc = RelativeComplex::absolute(d.clone());
        assert!(matches!(
            check_shelling(&rc, &order(&d, &["1 2 3"])),
            Err(ShellingError::NotAPermutation(_))
        ));
        assert!(matches!(
            check_shelling(&rc, &order(&d, &["1 2 3", "1 2 3"])),
            Err(ShellingError::NotAPermutation(_))
        ));
        let rc = RelativeComplex::new(d.clone(), cx(&["1 2 3"])).unwrap();
        assert!(matches!(
            check_shelling(&rc, &order(&d, &["2 3 4"])),
            Err(ShellingError::GammaContainsFacet(_))
        ));
    }

    #[test]
    fn tetrahedron_boundary_has_one_homology_facet_last() {
        let d = cx(&["a b c", "a b d", "a c d", "b c d"]);
        let s = check_shelling(&RelativeComplex::absolute(d.clone()), d.facets()).unwrap();
        let h = s.homology_facets();
        assert_eq!(h, vec![d.facets()[3].clone()]);
        let moved = move_homology_facets_last(&s).unwrap();
        assert_eq!(moved.order(), s.order());
    }

    #[test]
    fn purity_needs_nonvoid_gamma() {
        let d = cx(&["a b c"]);
        let rc = RelativeComplex::absolute(d.clone());
        assert!(matches!(
            check_relative_purity(&rc, d.facets()),
            Err(ShellingError::Hypothesis(_))
        ));
    }

    #[test]
    fn concat_example_two_triangles() {
        let da = cx(&["1 2 3"]);
        let db = cx(&["2 3 4"]);
        let ga = cx(&["1 2"]);
        let sa = check_shelling(&RelativeComplex::new(da.clone(), ga).unwrap(), da.facets()).unwrap();
        let gb = Complex::void();
        let rb = RelativeComplex::new(db.clone(), da.intersection(&db).union(&gb)).unwrap();
        let sb = check_shelling(&rb, db.facets()).unwrap();
        let s = concat_shellings(&sa, &sb, &gb).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.gamma(), &cx(&["1 2"]));
    }

    #[test]
    fn concat_detects_leaking_gamma() {
        let da = cx(&["1 2 3"]);
        let db = cx(&["2 3 4"]);
        let sa = check_shelling(&RelativeComplex::absolute(da.clone()), da.facets()).unwrap();
        // Γb touches Δa in edge 23, but Γa is void
        let gb = cx(&["2 3"]);
        let rb = RelativeComplex::new(db.clone(), da.intersection(&db).union(&gb)).unwrap();
        let sb = check_shelling(&rb, db.facets()).unwrap();
        match concat_shellings(&sa, &sb, &gb) {
            Err(ShellingError::GluingHypothesisViolated { witness, .. }) => {
                assert!(!witness.is_empty())
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn concat_detects_wrong_attachment() {
        let da = cx(&["1 2 3"]);
        let db = cx(&["2 3 4"]);
        let sa = check_shelling(&RelativeComplex::absolute(da.clone()), da.facets()).unwrap();
        let rb = RelativeComplex::new(db.clone(), cx(&["2 3 4"]).intersection(&cx(&["3 4"]))).unwrap();
        let sb = check_shelling(&rb, db.facets()).unwrap();
        assert!(matches!(
            concat_shellings(&sa, &sb, &Complex::void()),
            Err(ShellingError::GluingHypothesisViolated { .. })
        ));
    }
}
