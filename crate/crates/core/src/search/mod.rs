//! Deciding shellability without a certificate.
//!
//! [`find_shelling`] is a complete backtracking search over facet orders.
//! A prefix can be extended by a facet exactly when that facet's new faces
//! have a unique minimal element, and whether that holds depends only on the
//! set of facets already placed. So a set from which no completion exists is
//! recorded once and never expanded again.

mod canon;
pub mod derive;

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use dashmap::DashSet;
use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{Face, RelativeComplex};
use crate::homology::{relative_betti, HomologyProfile};
use crate::shelling::{check_shelling, Shelling, ShellingError};

pub use canon::canonical_form;
pub use derive::{derive_blade, derive_tricorne, derive_tricorne_with, TricorneSearchStats};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("start facet {0:?} is not a facet of the relative complex")]
    BadStart(Vec<String>),
    #[error("no witness found: {0}")]
    NoWitness(String),
    #[error(transparent)]
    Shelling(#[from] ShellingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of facet placements before giving up.
    pub budget: Option<u64>,
    pub memoize: bool,
    /// Fan out over the choices of first facet.
    pub parallel: bool,
    /// Force the first facet of the order.
    pub start_with: Option<Face>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            memoize: true,
            parallel: false,
            start_with: None,
        }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: u64) -> Self {
        SearchOptions {
            budget: Some(budget),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Shellable(Shelling),
    Unshellable,
    BudgetExhausted,
}

impl Verdict {
    pub fn is_shellable(&self) -> bool {
        matches!(self, Verdict::Shellable(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Shellable(_) => "SHELLABLE",
            Verdict::Unshellable => "UNSHELLABLE",
            Verdict::BudgetExhausted => "BUDGET-EXHAUSTED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    /// Facet placements performed.
    pub nodes: u64,
}

const IN_GAMMA: u32 = u32::MAX;

/// Precomputed face tables for one relative complex.
struct Problem {
    facets: Vec<Face>,
    /// `subs[f][mask]` is the id of that subface of facet `f`, or `IN_GAMMA`.
    subs: Vec<Vec<u32>>,
    num_faces: usize,
    words: usize,
}

impl Problem {
    fn new(rc: &RelativeComplex) -> Result<Self, SearchError> {
        for f in rc.delta().facets() {
            if rc.in_gamma(f) {
                return Err(ShellingError::GammaContainsFacet(rc.delta().owned_names(f)).into());
            }
        }
        let facets = rc.facets();
        let mut ids: HashMap<Face, u32> = HashMap::new();
        let mut subs = Vec::with_capacity(facets.len());
        for f in &facets {
            assert!(f.len() < 25, "facet too large for subset tables");
            let table = f
                .subfaces()
                .map(|g| {
                    if rc.in_gamma(&g) {
                        IN_GAMMA
                    } else {
                        let next = ids.len() as u32;
                        *ids.entry(g).or_insert(next)
                    }
                })
                .collect();
            subs.push(table);
        }
        let words = facets.len().div_ceil(64).max(1);
        Ok(Problem {
            facets,
            subs,
            num_faces: ids.len(),
            words,
        })
    }
}

enum Memo<'a> {
    Off,
    Local(HashSet<Box<[u64]>>),
    Shared(&'a DashSet<Box<[u64]>>),
}

impl Memo<'_> {
    fn contains(&self, key: &[u64]) -> bool {
        match self {
            Memo::Off => false,
            Memo::Local(s) => s.contains(key),
            Memo::Shared(s) => s.contains(key),
        }
    }

    fn insert(&mut self, key: &[u64]) {
        match self {
            Memo::Off => {}
            Memo::Local(s) => {
                s.insert(key.into());
            }
            Memo::Shared(s) => {
                s.insert(key.into());
            }
        }
    }
}

/// Mutable state of one depth-first walk.
struct Walk<'p> {
    p: &'p Problem,
    counts: Vec<u32>,
    used: Vec<u64>,
    path: Vec<usize>,
}

impl<'p> Walk<'p> {
    fn new(p: &'p Problem) -> Self {
        Walk {
            p,
            counts: vec![0; p.num_faces],
            used: vec![0; p.words],
            path: Vec::with_capacity(p.facets.len()),
        }
    }

    fn is_used(&self, f: usize) -> bool {
        self.used[f / 64] >> (f % 64) & 1 == 1
    }

    fn is_new(&self, id: u32) -> bool {
        id != IN_GAMMA && self.counts[id as usize] == 0
    }

    fn admissible(&self, f: usize) -> bool {
        let table = &self.p.subs[f];
        let mut meet = table.len() - 1;
        for (mask, id) in table.iter().enumerate() {
            if self.is_new(*id) {
                meet &= mask;
            }
        }
        self.is_new(table[meet])
    }

    fn child_failed(&mut self, f: usize, memo: &Memo) -> bool {
        self.used[f / 64] ^= 1 << (f % 64);
        let hit = memo.contains(&self.used);
        self.used[f / 64] ^= 1 << (f % 64);
        hit
    }

    fn push(&mut self, f: usize) {
        for id in &self.p.subs[f] {
            if *id != IN_GAMMA {
                self.counts[*id as usize] += 1;
            }
        }
        self.used[f / 64] |= 1 << (f % 64);
        self.path.push(f);
    }

    fn pop(&mut self) {
        let f = self.path.pop().expect("pop on empty path");
        for id in &self.p.subs[f] {
            if *id != IN_GAMMA {
                self.counts[*id as usize] -= 1;
            }
        }
        self.used[f / 64] &= !(1 << (f % 64));
    }
}

enum WalkResult {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
    Cancelled,
}

/// Depth-first search below the walk's current prefix. The prefix itself is
/// never popped.
fn dfs(
    walk: &mut Walk,
    memo: &mut Memo,
    nodes: &AtomicU64,
    budget: Option<u64>,
    cancel: &dyn Fn() -> bool,
) -> WalkResult {
    let m = walk.p.facets.len();
    let base = walk.path.len();
    let mut next: Vec<usize> = vec![0];
    loop {
        if walk.path.len() == m {
            return WalkResult::Found(walk.path.clone());
        }
        let start = *next.last().expect("frame stack never empty here");
        let mut chosen = None;
        for f in start..m {
            if !walk.is_used(f) && walk.admissible(f) && !walk.child_failed(f, memo) {
                chosen = Some(f);
                break;
            }
        }
        match chosen {
            Some(f) => {
                *next.last_mut().unwrap() = f + 1;
                let n = nodes.fetch_add(1, Ordering::Relaxed) + 1;
                if budget.is_some_and(|b| n > b) {
                    return WalkResult::OutOfBudget;
                }
                if n % 4096 == 0 && cancel() {
                    return WalkResult::Cancelled;
                }
                walk.push(f);
                next.push(0);
            }
            None => {
                memo.insert(&walk.used);
                next.pop();
                if walk.path.len() == base {
                    return WalkResult::Exhausted;
                }
                walk.pop();
            }
        }
    }
}

/// Searches for a shelling of `rc`.
pub fn find_shelling(rc: &RelativeComplex, opts: &SearchOptions) -> Result<SearchOutcome, SearchError> {
    let p = Problem::new(rc)?;
    let start = match &opts.start_with {
        Some(face) => match p.facets.iter().position(|f| f == face) {
            Some(i) => Some(i),
            None => return Err(SearchError::BadStart(rc.delta().owned_names(face))),
        },
        None => None,
    };
    let nodes = AtomicU64::new(0);
    if p.facets.is_empty() {
        let s = check_shelling(rc, &[])?;
        return Ok(SearchOutcome {
            verdict: Verdict::Shellable(s),
            nodes: 0,
        });
    }

    let roots: Vec<usize> = {
        let walk = Walk::new(&p);
        (0..p.facets.len())
            .filter(|f| start.map_or(true, |s| s == *f))
            .filter(|f| walk.admissible(*f))
            .collect()
    };

    let found = if opts.parallel && roots.len() > 1 {
        search_parallel(&p, &roots, opts, &nodes)
    } else {
        search_serial(&p, &roots, opts, &nodes)
    };

    let verdict = match found {
        WalkResult::Found(path) => {
            let order: Vec<Face> = path.iter().map(|i| p.facets[*i].clone()).collect();
            let s = check_shelling(rc, &order).expect("search produced an order the checker refuses");
            Verdict::Shellable(s)
        }
        WalkResult::Exhausted => Verdict::Unshellable,
        WalkResult::OutOfBudget | WalkResult::Cancelled => Verdict::BudgetExhausted,
    };
    Ok(SearchOutcome {
        verdict,
        nodes: nodes.load(Ordering::Relaxed),
    })
}

fn search_serial(p: &Problem, roots: &[usize], opts: &SearchOptions, nodes: &AtomicU64) -> WalkResult {
    let mut memo = if opts.memoize {
        Memo::Local(HashSet::new())
    } else {
        Memo::Off
    };
    let mut walk = Walk::new(p);
    for &r in roots {
        if walk.child_failed(r, &memo) {
            continue;
        }
        let n = nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if opts.budget.is_some_and(|b| n > b) {
            return WalkResult::OutOfBudget;
        }
        walk.push(r);
        match dfs(&mut walk, &mut memo, nodes, opts.budget, &|| false) {
            WalkResult::Exhausted => walk.pop(),
            other => return other,
        }
    }
    WalkResult::Exhausted
}

fn search_parallel(p: &Problem, roots: &[usize], opts: &SearchOptions, nodes: &AtomicU64) -> WalkResult {
    let shared: DashSet<Box<[u64]>> = DashSet::new();
    // lowest root index that has produced a certificate so far
    let best = AtomicUsize::new(usize::MAX);
    let results: Vec<(usize, WalkResult)> = roots
        .par_iter()
        .enumerate()
        .map(|(i, &r)| {
            let mut memo = if opts.memoize {
                Memo::Shared(&shared)
            } else {
                Memo::Off
            };
            let mut walk = Walk::new(p);
            let n = nodes.fetch_add(1, Ordering::Relaxed) + 1;
            if opts.budget.is_some_and(|b| n > b) {
                return (i, WalkResult::OutOfBudget);
            }
            walk.push(r);
            let cancel = || best.load(Ordering::Relaxed) < i;
            let res = dfs(&mut walk, &mut memo, nodes, opts.budget, &cancel);
            if let WalkResult::Found(_) = res {
                best.fetch_min(i, Ordering::Relaxed);
            }
            (i, res)
        })
        .collect();
    let mut out_of_budget = false;
    for (_, res) in results {
        match res {
            WalkResult::Found(path) => return WalkResult::Found(path),
            WalkResult::OutOfBudget => out_of_budget = true,
            WalkResult::Exhausted | WalkResult::Cancelled => {}
        }
    }
    if out_of_budget {
        WalkResult::OutOfBudget
    } else {
        WalkResult::Exhausted
    }
}

/// Two-part unshellability argument for a pure complex relative to a
/// non-void subcomplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnshellabilityProof {
    /// Relative Betti numbers; the top one is zero, so a shelling would have
    /// no homology facet.
    pub relative_betti: HomologyProfile,
    /// Number of facets checked to admit no final step.
    pub facets_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuickVerdict {
    Unshellable(UnshellabilityProof),
    Inconclusive(String),
}

/// Fast sufficient test for unshellability.
///
/// If the top relative Betti number vanishes, every shelling has no homology
/// facet, so its last facet `σ` has a minimal new face `R ⊊ σ` with `R ≠ ∅`
/// (the empty face lies in `Γ`) such that `R` lies in `σ` only and not in
/// `Γ`. When no facet has such a face, no shelling exists.
pub fn prove_unshellable_quick(rc: &RelativeComplex) -> Result<QuickVerdict, SearchError> {
    let delta = rc.delta();
    if rc.gamma().is_void() {
        return Err(SearchError::Hypothesis("the subcomplex must not be void".into()));
    }
    if delta.is_void() || !delta.is_pure() || delta.dimension() < 1 {
        return Err(SearchError::Hypothesis(
            "the complex must be pure of dimension at least 1".into(),
        ));
    }
    let facets = rc.facets();
    if facets.is_empty() {
        return Ok(QuickVerdict::Inconclusive("nothing to shell".into()));
    }
    let top = delta.dimension() as usize;
    let betti = relative_betti(rc).map_err(|e| SearchError::Hypothesis(e.to_string()))?;
    if betti.get(top) != 0 {
        return Ok(QuickVerdict::Inconclusive(format!(
            "relative top Betti number is {}",
            betti.get(top)
        )));
    }
    let mut degree: HashMap<Face, usize> = HashMap::new();
    for f in delta.facets() {
        for g in f.subfaces() {
            *degree.entry(g).or_default() += 1;
        }
    }
    for sigma in &facets {
        let full = (1u32 << sigma.len()) - 1;
        for mask in 1..full {
            let r = sigma.by_mask(mask);
            if degree[&r] == 1 && !rc.in_gamma(&r) {
                return Ok(QuickVerdict::Inconclusive(format!(
                    "facet {{{}}} could come last, with minimal new face {{{}}}",
                    delta.names(sigma).join(" "),
                    delta.names(&r).join(" ")
                )));
            }
        }
    }
    Ok(QuickVerdict::Unshellable(UnshellabilityProof {
        relative_betti: betti,
        facets_checked: facets.len(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Complex;

    fn cx(faces: &[&str]) -> Complex {
        Complex::from_facets(faces.iter().map(|f| f.split_whitespace())).unwrap()
    }

    #[test]
    fn bowtie_is_unshellable() {
        let rc = RelativeComplex::absolute(cx(&["a b c", "c d e"]));
        let out = find_shelling(&rc, &SearchOptions::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Unshellable);
    }

    #[test]
    fn disc_is_shellable_and_certificate_checks() {
        let rc = RelativeComplex::absolute(cx(&["a b c", "b c d", "c d e", "d e f"]));
        match find_shelling(&rc, &SearchOptions::default()).unwrap().verdict {
            Verdict::Shellable(s) => assert_eq!(s.len(), 4),
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn budget_is_not_unshellable() {
        let rc = RelativeComplex::absolute(cx(&["a b c", "c d e", "e f g", "g h i"]));
        let out = find_shelling(&rc, &SearchOptions::with_budget(2)).unwrap();
        assert_eq!(out.verdict, Verdict::BudgetExhausted);
    }

    #[test]
    fn start_facet_is_respected() {
        let c = cx(&["a b c", "b c d"]);
        let start = c.face(&["b", "c", "d"]).unwrap();
        let opts = SearchOptions {
            start_with: Some(start.clone()),
            ..SearchOptions::default()
        };
        match find_shelling(&RelativeComplex::absolute(c), &opts).unwrap().verdict {
            Verdict::Shellable(s) => assert_eq!(s.order()[0], start),
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let c = cx(&["a b c", "b c d", "c d e", "a e f", "x y z", "a b g"]);
        let rc = RelativeComplex::absolute(c);
        let serial = find_shelling(&rc, &SearchOptions::default()).unwrap();
        let par = find_shelling(
            &rc,
            &SearchOptions {
                parallel: true,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(serial.verdict, par.verdict);
    }

    #[test]
    fn quick_prover_on_triangle_boundary_pair() {
        // two triangles sharing an edge, everything on the boundary in Γ
        let d = cx(&["a b c", "b c d"]);
        let g = cx(&["a b", "a c", "b d", "c d"]);
        let rc = RelativeComplex::new(d, g).unwrap();
        // β_2 of a disc relative to its boundary is 1
        assert!(matches!(prove_unshellable_quick(&rc).unwrap(), QuickVerdict::Inconclusive(_)));
        let rc = RelativeComplex::absolute(cx(&["a b c"]));
        assert!(prove_unshellable_quick(&rc).is_err());
    }
}
