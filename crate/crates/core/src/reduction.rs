//! From 3-SAT to shellability: DIMACS input, the restricted fragment, and
//! the compiler producing the complex together with its gadget metadata.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::{glue, GluingError, GluingMap};
use crate::complex::Complex;
use crate::gadgets::{choice_gadget, choice_vertex, turbine, GadgetError, HemisphereStyle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: malformed header {text:?}")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: {token:?} is not a literal")]
    BadLiteral { line: usize, token: String },
    #[error("line {line}: literal {literal} is out of range for {num_vars} variables")]
    LiteralOutOfRange { line: usize, literal: i64, num_vars: usize },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
    #[error("header declares {declared} clauses but {found} were read")]
    ClauseCount { declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    Unterminated,
    #[error("clause {clause} has {len} literals; at most 3 are allowed")]
    ClauseTooLong { clause: usize, len: usize },
}

/// Ways an instance can fall outside the restricted fragment the reduction
/// accepts. Clause numbers are 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrictViolation {
    #[error("clause {clause} has {len} literals; 2 or 3 are required")]
    ClauseSize { clause: usize, len: usize },
    #[error("clause {clause} mentions variable {var} twice")]
    RepeatedVariable { clause: usize, var: usize },
    #[error("literal {literal} occurs in {count} clauses; at most 2 are allowed")]
    LiteralOveruse { literal: i32, count: usize },
}

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("instance is not in the restricted fragment: {0}")]
    NotStrict(#[from] StrictViolation),
    #[error("variable name {0:?} cannot be used as a vertex prefix")]
    BadName(String),
    #[error("internal gluing failure: {0}")]
    Gluing(#[from] GluingError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

/// A CNF formula over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfInstance {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    /// Display names, one per variable.
    pub names: Vec<String>,
}

impl CnfInstance {
    /// Instance with default names `x1, x2, …`.
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Self {
        CnfInstance {
            num_vars,
            clauses,
            names: (1..=num_vars).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var - 1]
    }

    /// Index of the first clause (0-based) not satisfied by `values`, where
    /// `values[k - 1]` is the value of variable `k`.
    pub fn first_unsatisfied(&self, values: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| {
            !c.iter()
                .any(|l| values[l.unsigned_abs() as usize - 1] == (*l > 0))
        })
    }

    /// A satisfying assignment by exhaustive enumeration, if one exists.
    pub fn brute_force(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars <= 24, "too many variables to enumerate");
        (0u32..1 << self.num_vars)
            .map(|m| (0..self.num_vars).map(|i| m >> i & 1 == 1).collect::<Vec<_>>())
            .find(|v| self.first_unsatisfied(v).is_none())
    }

    pub fn validate_strict(&self) -> Result<(), StrictViolation> {
        let mut count: BTreeMap<i32, usize> = BTreeMap::new();
        for (j, c) in self.clauses.iter().enumerate() {
            if !(2..=3).contains(&c.len()) {
                return Err(StrictViolation::ClauseSize { clause: j + 1, len: c.len() });
            }
            for (i, l) in c.iter().enumerate() {
                if c[..i].iter().any(|m| m.abs() == l.abs()) {
                    return Err(StrictViolation::RepeatedVariable {
                        clause: j + 1,
                        var: l.unsigned_abs() as usize,
                    });
                }
                *count.entry(*l).or_default() += 1;
            }
        }
        match count.into_iter().find(|(_, n)| *n > 2) {
            Some((literal, count)) => Err(StrictViolation::LiteralOveruse { literal, count }),
            None => Ok(()),
        }
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for (i, n) in self.names.iter().enumerate() {
            if *n != format!("x{}", i + 1) {
                out.push_str(&format!("c var {} {}\n", i + 1, n));
            }
        }
        out.push_str(&format!("p cnf {} {}\n", self.num_vars, self.clauses.len()));
        for c in &self.clauses {
            for l in c {
                out.push_str(&format!("{l} "));
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Reads DIMACS CNF. Clauses may span lines; `c` lines are comments, and a
/// comment of the form `c var <k> <name>` names variable `k`.
pub fn parse_dimacs(text: &str) -> Result<CnfInstance, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut names: HashMap<usize, String> = HashMap::new();
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        if t == "%" {
            break;
        }
        if t.starts_with('c') {
            let parts: Vec<&str> = t.split_whitespace().collect();
            if parts.len() == 4 && parts[0] == "c" && parts[1] == "var" {
                if let Ok(k) = parts[2].parse() {
                    names.insert(k, parts[3].to_string());
                }
            }
            continue;
        }
        if t.starts_with('p') {
            let parts: Vec<&str> = t.split_whitespace().collect();
            let bad = || CnfError::BadHeader { line, text: t.to_string() };
            if header.is_some() || parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(bad());
            }
            let v = parts[2].parse().map_err(|_| bad())?;
            let c = parts[3].parse().map_err(|_| bad())?;
            header = Some((v, c));
            continue;
        }
        let (num_vars, _) = header.ok_or(CnfError::MissingHeader)?;
        for tok in t.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| CnfError::BadLiteral {
                line,
                token: tok.to_string(),
            })?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(CnfError::EmptyClause { line });
                }
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > num_vars {
                return Err(CnfError::LiteralOutOfRange { line, literal: lit, num_vars });
            } else {
                current.push(lit as i32);
            }
        }
    }
    let (num_vars, declared) = header.ok_or(CnfError::MissingHeader)?;
    if !current.is_empty() {
        return Err(CnfError::Unterminated);
    }
    if declared != clauses.len() {
        return Err(CnfError::ClauseCount { declared, found: clauses.len() });
    }
    let mut inst = CnfInstance::new(num_vars, clauses);
    for (k, n) in names {
        if (1..=num_vars).contains(&k) {
            inst.names[k - 1] = n;
        }
    }
    Ok(inst)
}

/// Rewrites any 3-CNF into an equisatisfiable instance of the restricted
/// fragment: repeated literals are merged, tautologies dropped, each unit
/// clause `(ℓ)` becomes `(ℓ ∨ z)(ℓ ∨ ¬z)` with a fresh `z@u`, and a variable
/// with a literal in more than two clauses is split into copies `x@1 … x@k`,
/// one per occurrence, tied by the implication cycle
/// `(¬x@1 ∨ x@2) … (¬x@k ∨ x@1)`. Instances already in the fragment come
/// back unchanged.
pub fn normalize(inst: &CnfInstance) -> Result<CnfInstance, CnfError> {
    let mut names = inst.names.clone();
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    for (j, c) in inst.clauses.iter().enumerate() {
        let mut d: Vec<i32> = Vec::new();
        for l in c {
            if !d.contains(l) {
                d.push(*l);
            }
        }
        if d.len() > 3 {
            return Err(CnfError::ClauseTooLong { clause: j + 1, len: d.len() });
        }
        if d.iter().any(|l| d.contains(&-l)) {
            continue;
        }
        clauses.push(d);
    }

    let mut units = 0;
    let mut padded = Vec::with_capacity(clauses.len());
    for c in clauses {
        if c.len() == 1 {
            units += 1;
            names.push(format!("z@{units}"));
            let z = names.len() as i32;
            padded.push(vec![c[0], z]);
            padded.push(vec![c[0], -z]);
        } else {
            padded.push(c);
        }
    }
    let mut clauses = padded;

    let mut lit_count: HashMap<i32, usize> = HashMap::new();
    for l in clauses.iter().flatten() {
        *lit_count.entry(*l).or_default() += 1;
    }
    let original_vars = names.len();
    let mut cycles: Vec<Vec<i32>> = Vec::new();
    for v in 1..=original_vars as i32 {
        if lit_count.get(&v).copied().unwrap_or(0) <= 2 && lit_count.get(&-v).copied().unwrap_or(0) <= 2 {
            continue;
        }
        let base = names[v as usize - 1].clone();
        let mut copies: Vec<i32> = Vec::new();
        for c in clauses.iter_mut() {
            for l in c.iter_mut() {
                if l.abs() == v {
                    let copy = if copies.is_empty() {
                        names[v as usize - 1] = format!("{base}@1");
                        v
                    } else {
                        names.push(format!("{base}@{}", copies.len() + 1));
                        names.len() as i32
                    };
                    copies.push(copy);
                    *l = copy * l.signum();
                }
            }
        }
        for i in 0..copies.len() {
            cycles.push(vec![-copies[i], copies[(i + 1) % copies.len()]]);
        }
    }
    clauses.extend(cycles);
    Ok(CnfInstance {
        num_vars: names.len(),
        clauses,
        names,
    })
}

/// Where one branch of a clause's turbine is attached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchMeta {
    /// 1-based branch index inside the turbine.
    pub branch: usize,
    pub literal: i32,
    pub variable: usize,
    /// Hemisphere role of the attachment vertex: `y`, `y'`, `ny` or `ny'`.
    pub target_role: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableMeta {
    pub index: usize,
    pub name: String,
    pub roles: BTreeMap<String, String>,
    pub tricorne: Vec<Vec<String>>,
    pub positive: Vec<Vec<String>>,
    pub negative: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseMeta {
    pub index: usize,
    pub literals: Vec<i32>,
    /// Turbine vertex name to vertex of the complex.
    pub vertex_map: BTreeMap<String, String>,
    pub turbine: Vec<Vec<String>>,
    pub branches: Vec<BranchMeta>,
}

/// Everything needed to translate between assignments and shellings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionMeta {
    pub instance: CnfInstance,
    pub style: HemisphereStyle,
    pub variables: Vec<VariableMeta>,
    pub clauses: Vec<ClauseMeta>,
}

/// The gadget a facet of the reduced complex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Piece {
    Tricorne(usize),
    Positive(usize),
    Negative(usize),
    Turbine(usize),
}

fn facets_complex(f: &[Vec<String>]) -> Complex {
    Complex::from_facets(f.iter().map(|x| x.iter().map(String::as_str))).expect("valid names")
}

fn sorted(mut f: Vec<String>) -> Vec<String> {
    f.sort();
    f
}

impl ReductionMeta {
    /// The complex assembled from the recorded facet sets.
    pub fn complex(&self) -> Complex {
        let all: Vec<Vec<String>> = self
            .variables
            .iter()
            .flat_map(|v| v.tricorne.iter().chain(&v.positive).chain(&v.negative).cloned())
            .chain(self.clauses.iter().flat_map(|c| c.turbine.iter().cloned()))
            .collect();
        facets_complex(&all)
    }

    pub fn piece(&self, p: Piece) -> Complex {
        facets_complex(match p {
            Piece::Tricorne(k) => &self.variables[k - 1].tricorne,
            Piece::Positive(k) => &self.variables[k - 1].positive,
            Piece::Negative(k) => &self.variables[k - 1].negative,
            Piece::Turbine(j) => &self.clauses[j - 1].turbine,
        })
    }

    /// Facet (as a sorted name list) to the gadget containing it.
    pub fn owners(&self) -> HashMap<Vec<String>, Piece> {
        let mut out = HashMap::new();
        for v in &self.variables {
            for f in &v.tricorne {
                out.insert(sorted(f.clone()), Piece::Tricorne(v.index));
            }
            for f in &v.positive {
                out.insert(sorted(f.clone()), Piece::Positive(v.index));
            }
            for f in &v.negative {
                out.insert(sorted(f.clone()), Piece::Negative(v.index));
            }
        }
        for c in &self.clauses {
            for f in &c.turbine {
                out.insert(sorted(f.clone()), Piece::Turbine(c.index));
            }
        }
        out
    }
}

/// Hemisphere role a literal's `occurrence`-th clause (0-based) attaches to.
pub fn target_role(literal: i32, occurrence: usize) -> String {
    let base = if occurrence == 0 { "y" } else { "y'" };
    if literal < 0 {
        format!("n{base}")
    } else {
        base.to_string()
    }
}

/// Expected facet count of the reduced complex.
pub fn expected_facets(inst: &CnfInstance, style: HemisphereStyle) -> usize {
    let per_var = match style {
        HemisphereStyle::Compact => 23,
        HemisphereStyle::Separated => 31,
    };
    per_var * inst.num_vars
        + inst
            .clauses
            .iter()
            .map(|c| if c.len() == 2 { 26 } else { 33 })
            .sum::<usize>()
}

/// Compiles a restricted instance: one choice gadget per variable, all
/// sharing the edge `sw`, and one turbine per clause whose gluing tree is
/// attached to the literal hemispheres.
pub fn reduce(inst: &CnfInstance) -> Result<(Complex, ReductionMeta), ReductionError> {
    inst.validate_strict()?;
    let style = HemisphereStyle::Separated;
    for n in &inst.names {
        if n.is_empty() || n.chars().any(char::is_whitespace) || n == "s" || n == "w" {
            return Err(ReductionError::BadName(n.clone()));
        }
    }
    let mut acc = Complex::void();
    let mut variables = Vec::new();
    let sw = Complex::from_facets([["s", "w"]]).expect("valid names");
    for k in 1..=inst.num_vars {
        let g = choice_gadget(inst.name(k), style)?;
        acc = if acc.is_void() {
            g.complex.clone()
        } else {
            glue(&acc, &g.complex, &GluingMap::new([("s", "s"), ("w", "w")]).along(sw.clone()))?
        };
        let pos = &g.marked["positive"];
        let neg = &g.marked["negative"];
        let tri = &g.marked["tricorne"];
        variables.push(VariableMeta {
            index: k,
            name: inst.name(k).to_string(),
            roles: g.roles.clone(),
            tricorne: tri.facet_names(),
            positive: pos.facet_names(),
            negative: neg.facet_names(),
        });
    }

    let mut seen: HashMap<i32, usize> = HashMap::new();
    let mut clauses = Vec::new();
    for (j0, c) in inst.clauses.iter().enumerate() {
        let j = j0 + 1;
        let n = c.len();
        let t = turbine(n)?;
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        map.insert("w".into(), "w".into());
        let mut branches = Vec::new();
        for (i0, lit) in c.iter().enumerate() {
            let i = i0 + 1;
            let var = lit.unsigned_abs() as usize;
            let name = inst.name(var);
            let occ = seen.entry(*lit).or_default();
            let role = target_role(*lit, *occ);
            *occ += 1;
            let target = choice_vertex(name, &role);
            map.insert(format!("a{i}"), choice_vertex(name, "a"));
            map.insert(format!("x{i}"), choice_vertex(name, "x"));
            map.insert(t.role(&format!("ytilde{i}")).to_string(), target.clone());
            for r in ["p", "q", "z"] {
                if let Some(v) = t.roles.get(&format!("{r}{i}")) {
                    map.insert(v.clone(), format!("c{j}.{r}{i}"));
                }
            }
            branches.push(BranchMeta {
                branch: i,
                literal: *lit,
                variable: var,
                target_role: role,
                target,
            });
        }
        let hmap: HashMap<String, String> = map.clone().into_iter().collect();
        let tg = t.complex.renamed_by(&hmap).expect("distinct targets");
        let along = t.marked["tree"].renamed_by(&hmap).expect("distinct targets");
        let pairs: Vec<(String, String)> = tg
            .vertices()
            .iter()
            .filter(|v| acc.vertex_index(v).is_some())
            .map(|v| (v.clone(), v.clone()))
            .collect();
        acc = glue(&acc, &tg, &GluingMap { pairs, along: Some(along) })?;
        clauses.push(ClauseMeta {
            index: j,
            literals: c.clone(),
            vertex_map: map,
            turbine: tg.facet_names(),
            branches,
        });
    }
    let meta = ReductionMeta {
        instance: inst.clone(),
        style,
        variables,
        clauses,
    };
    debug_assert_eq!(acc, meta.complex());
    Ok((acc, meta))
}
