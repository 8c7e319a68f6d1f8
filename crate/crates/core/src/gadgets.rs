//! Named complexes: hemispheres, tricorne, blade, turbines, choice gadgets.
//!
//! The blade and tricorne triangulations are pinned below; they are the
//! first witnesses found by [`crate::search::derive_blade`] and
//! [`crate::search::derive_tricorne`], and the test suite rederives them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::{glue, stellar_subdivide, GluingError, GluingMap};
use crate::complex::{Complex, RelativeComplex};
use crate::search::{find_shelling, SearchError, SearchOptions, Verdict};
use crate::shelling::{
    check_shelling_named, concat_shellings, move_homology_facets_last, relative_from_absolute, Shelling, ShellingError,
};

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("a turbine needs at least one branch")]
    ZeroTurbine,
    #[error("branch {branch} does not exist in a {n}-turbine")]
    BadBranch { branch: usize, n: usize },
    #[error(
        "every free edge of the {0}-turbine is in the subcomplex; that relative complex is not shellable"
    )]
    FullFreeSet(usize),
    #[error("no shelling of {0}")]
    NoShelling(String),
    #[error(transparent)]
    Gluing(#[from] GluingError),
    #[error(transparent)]
    Shelling(#[from] ShellingError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// A complex with named roles and marked subcomplexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetComplex {
    pub name: String,
    pub complex: Complex,
    /// Role name to vertex name.
    pub roles: BTreeMap<String, String>,
    pub marked: BTreeMap<String, Complex>,
    /// Free edges in branch order (turbines only).
    pub free_edges: Vec<[String; 2]>,
    /// A known absolute shelling, as vertex-name lists.
    pub shelling: Option<Vec<Vec<String>>>,
}

impl GadgetComplex {
    pub fn role(&self, r: &str) -> &str {
        self.roles
            .get(r)
            .unwrap_or_else(|| panic!("gadget {} has no role {r}", self.name))
    }

    pub fn marked(&self, key: &str) -> Option<&Complex> {
        self.marked.get(key)
    }

    /// Verifies and returns the stored absolute shelling.
    pub fn absolute_shelling(&self) -> Option<Result<Shelling, ShellingError>> {
        self.shelling
            .as_ref()
            .map(|o| check_shelling_named(&RelativeComplex::absolute(self.complex.clone()), o))
    }
}

/// The five subcomplexes of the blade relative to which it must be
/// shellable, in blade role names. The first two serve the last blade of a
/// turbine shelling, the other three every earlier blade.
pub const BLADE_RELATIVE_SUBCOMPLEXES: [&[[&str; 2]]; 5] = [
    &[["a", "y"], ["a", "y'"]],
    &[["a", "y"], ["a", "y'"], ["a", "x"]],
    &[["a", "y"]],
    &[["a", "y"], ["a", "x"]],
    &[["a", "y"], ["a", "x"], ["x", "y'"]],
];

pub const BLADE_FACETS: [[&str; 3]; 9] = [
    ["a", "p", "x"],
    ["a", "p", "y'"],
    ["a", "x", "y"],
    ["p", "q", "x"],
    ["p", "q", "y"],
    ["p", "x", "y"],
    ["p", "y", "y'"],
    ["q", "x", "y'"],
    ["q", "y", "y'"],
];

pub const BLADE_SHELLING: [[&str; 3]; 9] = [
    ["a", "p", "x"],
    ["a", "p", "y'"],
    ["a", "x", "y"],
    ["p", "q", "x"],
    ["p", "x", "y"],
    ["p", "q", "y"],
    ["p", "y", "y'"],
    ["q", "y", "y'"],
    ["q", "x", "y'"],
];

pub const TRICORNE_FACETS: [[&str; 3]; 13] = [
    ["s", "t3", "t4"],
    ["s", "t3", "w"],
    ["s", "t4", "x"],
    ["s", "w", "x"],
    ["t1", "t2", "w"],
    ["t1", "t2", "x"],
    ["t1", "t3", "t4"],
    ["t1", "t3", "x"],
    ["t1", "t4", "w"],
    ["t2", "t3", "w"],
    ["t2", "t3", "x"],
    ["t2", "t4", "w"],
    ["t2", "t4", "x"],
];

pub const TRICORNE_SHELLING: [[&str; 3]; 13] = [
    ["s", "t3", "w"],
    ["s", "t3", "t4"],
    ["t1", "t3", "t4"],
    ["t1", "t3", "x"],
    ["t1", "t2", "x"],
    ["t2", "t3", "x"],
    ["t2", "t3", "w"],
    ["t1", "t2", "w"],
    ["t1", "t4", "w"],
    ["t2", "t4", "w"],
    ["t2", "t4", "x"],
    ["s", "t4", "x"],
    ["s", "w", "x"],
];

/// The compact hemisphere: the triangle `xwa` subdivided at `y`, then the
/// edge `ay` subdivided at `y'`.
pub const HEMISPHERE_FACETS: [[&str; 3]; 5] = [
    ["x", "w", "y"],
    ["w", "a", "y'"],
    ["w", "y'", "y"],
    ["a", "x", "y'"],
    ["x", "y'", "y"],
];

/// A 9-triangle disc with the same boundary `xwa` and the same interior
/// edges `xy`, `xy'`, in which `y` and `y'` are adjacent to neither `w` nor
/// `a`.
pub const SEPARATED_HEMISPHERE_FACETS: [[&str; 3]; 9] = [
    ["x", "w", "u"],
    ["x", "u", "y"],
    ["x", "y", "y'"],
    ["x", "y'", "v"],
    ["x", "v", "a"],
    ["u", "y", "y'"],
    ["u", "y'", "v"],
    ["u", "v", "w"],
    ["w", "v", "a"],
];

/// Which hemisphere triangulation to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HemisphereStyle {
    /// Five triangles; `w` is adjacent to `y` and `y'`.
    Compact,
    /// Nine triangles; `y`, `y'` touch the boundary only at `x`.
    Separated,
}

pub(crate) fn edges_complex(edges: &[[&str; 2]]) -> Complex {
    Complex::from_facets(edges.iter().map(|e| e.iter().copied())).expect("valid edge names")
}

fn triangles(faces: &[[&str; 3]]) -> Complex {
    Complex::from_facets(faces.iter().map(|f| f.iter().copied())).expect("valid triangle names")
}

fn named_order(faces: &[[&str; 3]]) -> Vec<Vec<String>> {
    faces.iter().map(|f| f.iter().map(|v| v.to_string()).collect()).collect()
}

fn role_map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(r, v)| (r.to_string(), v.to_string())).collect()
}

/// The hemisphere `D` in the given style, with its boundary marked as
/// `equator`.
pub fn hemisphere_styled(style: HemisphereStyle) -> GadgetComplex {
    let (name, complex, mut roles) = match style {
        HemisphereStyle::Compact => ("hemisphere", triangles(&HEMISPHERE_FACETS), vec![]),
        HemisphereStyle::Separated => (
            "separated-hemisphere",
            triangles(&SEPARATED_HEMISPHERE_FACETS),
            vec![("u", "u"), ("v", "v")],
        ),
    };
    roles.extend([("x", "x"), ("w", "w"), ("a", "a"), ("y", "y"), ("y'", "y'")]);
    let mut marked = BTreeMap::new();
    marked.insert("equator".into(), edges_complex(&[["x", "w"], ["w", "a"], ["a", "x"]]));
    GadgetComplex {
        name: name.into(),
        complex,
        roles: role_map(&roles),
        marked,
        free_edges: Vec::new(),
        shelling: None,
    }
}

pub fn hemisphere() -> GadgetComplex {
    hemisphere_styled(HemisphereStyle::Compact)
}

pub fn separated_hemisphere() -> GadgetComplex {
    hemisphere_styled(HemisphereStyle::Separated)
}

pub fn tricorne() -> GadgetComplex {
    let mut marked = BTreeMap::new();
    marked.insert("free".into(), edges_complex(&[["w", "x"]]));
    marked.insert("upsilon".into(), edges_complex(&[["s", "w"]]));
    GadgetComplex {
        name: "tricorne".into(),
        complex: triangles(&TRICORNE_FACETS),
        roles: role_map(&[("w", "w"), ("x", "x"), ("s", "s")]),
        marked,
        free_edges: vec![["w".into(), "x".into()]],
        shelling: Some(named_order(&TRICORNE_SHELLING)),
    }
}

pub fn blade() -> GadgetComplex {
    let mut marked = BTreeMap::new();
    marked.insert("free".into(), edges_complex(&[["y", "a"], ["a", "y'"], ["y'", "x"]]));
    GadgetComplex {
        name: "blade".into(),
        complex: triangles(&BLADE_FACETS),
        roles: role_map(&[("y", "y"), ("a", "a"), ("y'", "y'"), ("x", "x"), ("p", "p"), ("q", "q")]),
        marked,
        free_edges: Vec::new(),
        shelling: Some(named_order(&BLADE_SHELLING)),
    }
}

/// The blade with its edge `yy'` subdivided at `z`, used when `n = 2`.
pub fn subdivided_blade() -> GadgetComplex {
    let mut g = blade();
    g.name = "subdivided-blade".into();
    g.complex = stellar_subdivide(&g.complex, &["y", "y'"], "z").expect("yy' is an edge of the blade");
    g.roles.insert("z".into(), "z".into());
    g.shelling = None;
    g
}

/// Relative shellings of the fixed templates, found by search once per
/// subcomplex.
fn template_order(
    key: &str,
    template: &Complex,
    gamma: &Complex,
) -> Result<Vec<Vec<String>>, GadgetError> {
    static CACHE: OnceLock<Mutex<HashMap<(String, String), Vec<Vec<String>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let k = (key.to_string(), gamma.to_string());
    if let Some(o) = cache.lock().unwrap().get(&k) {
        return Ok(o.clone());
    }
    let rc = RelativeComplex::new(template.clone(), gamma.clone()).map_err(ShellingError::from)?;
    let order = match find_shelling(&rc, &SearchOptions::default())?.verdict {
        Verdict::Shellable(s) => s.order_names(),
        _ => return Err(GadgetError::NoShelling(format!("({key}, {gamma})"))),
    };
    cache.lock().unwrap().insert(k, order.clone());
    Ok(order)
}

/// A shelling of `piece` relative to `gamma`, where `piece` is a renamed copy
/// of `template` under `to_local` (global name to template name).
pub(crate) fn shell_copy(
    key: &str,
    template: &Complex,
    piece: &Complex,
    gamma: &Complex,
    to_local: &HashMap<String, String>,
) -> Result<Shelling, GadgetError> {
    let local_gamma = gamma.renamed_by(to_local).map_err(ShellingError::from)?;
    let order = template_order(key, template, &local_gamma)?;
    let to_global: HashMap<&str, &str> =
        to_local.iter().map(|(g, l)| (l.as_str(), g.as_str())).collect();
    let global: Vec<Vec<String>> = order
        .into_iter()
        .map(|f| f.iter().map(|v| to_global.get(v.as_str()).map_or(v.clone(), |g| g.to_string())).collect())
        .collect();
    let rc = RelativeComplex::new(piece.clone(), gamma.clone()).map_err(ShellingError::from)?;
    Ok(check_shelling_named(&rc, &global)?)
}

/// A shelling of a hemisphere copy relative to `gamma`.
pub(crate) fn shell_hemisphere(
    style: HemisphereStyle,
    piece: &Complex,
    gamma: &Complex,
    to_local: &HashMap<String, String>,
) -> Result<Shelling, GadgetError> {
    let g = hemisphere_styled(style);
    let s = shell_copy(&g.name, &g.complex, piece, gamma, to_local)?;
    Ok(move_homology_facets_last(&s)?)
}

fn check_turbine_n(n: usize) -> Result<(), GadgetError> {
    if n == 0 {
        Err(GadgetError::ZeroTurbine)
    } else {
        Ok(())
    }
}

/// 1-based branch index arithmetic modulo `n`.
fn wrap(i: usize, n: usize) -> usize {
    (i + n - 1) % n + 1
}

fn blade_map(i: usize, n: usize) -> Vec<(String, String)> {
    let mut m = vec![
        ("y".to_string(), format!("y{i}")),
        ("a".to_string(), format!("a{i}")),
        ("y'".to_string(), format!("y{}", wrap(i + 1, n))),
        ("x".to_string(), format!("x{i}")),
        ("p".to_string(), format!("p{i}")),
        ("q".to_string(), format!("q{i}")),
    ];
    if n == 2 {
        m.push(("z".to_string(), format!("z{i}")));
    }
    m
}

fn blade_template(n: usize) -> GadgetComplex {
    if n == 2 {
        subdivided_blade()
    } else {
        blade()
    }
}

fn cone_pair(i: usize, n: usize) -> Complex {
    let prev = format!("a{}", wrap(i - 1, n));
    let (y, a) = (format!("y{i}"), format!("a{i}"));
    Complex::from_facets([[prev.as_str(), y.as_str(), "w"], [a.as_str(), y.as_str(), "w"]])
        .expect("valid names")
}

fn blade_copy(i: usize, n: usize) -> Complex {
    let map: HashMap<String, String> = blade_map(i, n).into_iter().collect();
    blade_template(n)
        .complex
        .renamed_by(&map)
        .expect("bijective renaming")
}

/// The `n`-turbine. For `n = 1` this is the tricorne; for `n ≥ 2` it is the
/// cone with apex `w` over the cycle `y1 a1 y2 a2 … yn an`, with a blade
/// glued along each path `y_i a_i y_{i+1}` (blades with `yy'` subdivided
/// when `n = 2`). Marks `upsilon` = ⟨a_i w, a_i x_i⟩, `free` = ⟨x_i y_{i+1}⟩
/// and `tree` = their union.
pub fn turbine(n: usize) -> Result<GadgetComplex, GadgetError> {
    check_turbine_n(n)?;
    if n == 1 {
        let mut g = tricorne();
        g.name = "turbine:1".into();
        g.marked.insert("tree".into(), edges_complex(&[["s", "w"], ["w", "x"]]));
        return Ok(g);
    }
    let mut acc = (1..=n).fold(Complex::void(), |c, i| c.union(&cone_pair(i, n)));
    for i in 1..=n {
        let b = blade_copy(i, n);
        let (y, a, y2) = (format!("y{i}"), format!("a{i}"), format!("y{}", wrap(i + 1, n)));
        let along = Complex::from_facets([[y.as_str(), a.as_str()], [a.as_str(), y2.as_str()]])
            .expect("valid names");
        let pairs: Vec<(String, String)> = b
            .vertices()
            .iter()
            .filter(|v| acc.vertex_index(v).is_some())
            .map(|v| (v.clone(), v.clone()))
            .collect();
        acc = glue(&acc, &b, &GluingMap { pairs, along: Some(along) })?;
    }
    let mut roles = BTreeMap::new();
    roles.insert("w".to_string(), "w".to_string());
    let mut upsilon = Vec::new();
    let mut free = Vec::new();
    let mut free_edges = Vec::new();
    for i in 1..=n {
        for (r, v) in blade_map(i, n) {
            if r != "y'" {
                roles.insert(format!("{}{i}", r), v);
            }
        }
        let yt = format!("y{}", wrap(i + 1, n));
        roles.insert(format!("ytilde{i}"), yt.clone());
        upsilon.push([format!("a{i}"), "w".to_string()]);
        upsilon.push([format!("a{i}"), format!("x{i}")]);
        free.push([format!("x{i}"), yt.clone()]);
        free_edges.push([format!("x{i}"), yt]);
    }
    let to_complex = |e: &[[String; 2]]| {
        Complex::from_facets(e.iter().map(|p| p.iter().map(String::as_str))).expect("valid names")
    };
    let mut marked = BTreeMap::new();
    let up = to_complex(&upsilon);
    let fr = to_complex(&free);
    marked.insert("tree".into(), up.union(&fr));
    marked.insert("upsilon".into(), up);
    marked.insert("free".into(), fr);
    Ok(GadgetComplex {
        name: format!("turbine:{n}"),
        complex: acc,
        roles,
        marked,
        free_edges,
        shelling: None,
    })
}

/// The subcomplex `Υ ∪ ⟨E⟩` of a turbine, for 1-based branch indices `e`.
pub fn turbine_subcomplex(g: &GadgetComplex, e: &[usize]) -> Result<Complex, GadgetError> {
    let n = g.free_edges.len();
    let mut out = g.marked["upsilon"].clone();
    for &i in e {
        if i == 0 || i > n {
            return Err(GadgetError::BadBranch { branch: i, n });
        }
        let [a, b] = &g.free_edges[i - 1];
        out = out.union(&Complex::from_facets([[a.as_str(), b.as_str()]]).expect("valid names"));
    }
    Ok(out)
}

/// A shelling of the `n`-turbine: absolute when `glued` is `None`, otherwise
/// relative to `Υ ∪ ⟨E⟩` for the branches listed in `glued`, which must
/// leave at least one free edge out.
///
/// The order is assembled from pieces: the pair of cone triangles at `y_i`,
/// then blade `B_i`, around the cycle, starting just after a branch whose
/// free edge is not in the subcomplex so that this branch's blade comes
/// last. Each piece is shelled relative to what precedes it together with
/// its part of the subcomplex, and the pieces are joined with
/// [`concat_shellings`].
pub fn turbine_shelling(n: usize, glued: Option<&[usize]>) -> Result<Shelling, GadgetError> {
    let g = turbine(n)?;
    let gamma = match glued {
        None => Complex::void(),
        Some(e) => {
            let sub = turbine_subcomplex(&g, e)?;
            if (1..=n).all(|i| e.contains(&i)) {
                return Err(GadgetError::FullFreeSet(n));
            }
            sub
        }
    };
    if n == 1 {
        let order = g.absolute_shelling().expect("tricorne has a shelling")?;
        return Ok(if glued.is_some() {
            relative_from_absolute(&g.complex, &gamma, &order.order())?
        } else {
            order
        });
    }
    let last = match glued {
        None => n,
        Some(e) => (1..=n).rev().find(|i| !e.contains(i)).expect("some branch is free"),
    };
    let template = blade_template(n);
    let mut acc: Option<Shelling> = None;
    for step in 1..=n {
        let i = wrap(last + step, n);
        let pair = cone_pair(i, n);
        // α_i = a_{i-1} y_i w, then β_i = a_i y_i w
        let order = vec![
            vec![format!("a{}", wrap(i - 1, n)), format!("y{i}"), "w".to_string()],
            vec![format!("a{i}"), format!("y{i}"), "w".to_string()],
        ];
        acc = Some(append_piece(acc, &pair, &gamma, |rc| {
            Ok(check_shelling_named(rc, &order)?)
        })?);
        let b = blade_copy(i, n);
        let to_local: HashMap<String, String> =
            blade_map(i, n).into_iter().map(|(l, g)| (g, l)).collect();
        acc = Some(append_piece(acc, &b, &gamma, |rc| {
            shell_copy(&template.name, &template.complex, &b, rc.gamma(), &to_local)
        })?);
    }
    let s = acc.expect("at least one piece");
    if s.delta() != &g.complex || s.gamma() != &gamma {
        return Err(GadgetError::NoShelling(format!("turbine:{n} assembled to the wrong pair")));
    }
    Ok(s)
}

/// Shells `piece` relative to its intersection with what is already shelled
/// plus its share of `gamma`, and appends it.
pub(crate) fn append_piece(
    acc: Option<Shelling>,
    piece: &Complex,
    gamma: &Complex,
    shell: impl FnOnce(&RelativeComplex) -> Result<Shelling, GadgetError>,
) -> Result<Shelling, GadgetError> {
    let own = gamma.intersection(piece);
    match acc {
        None => {
            let rc = RelativeComplex::new(piece.clone(), own).map_err(ShellingError::from)?;
            shell(&rc)
        }
        Some(a) => {
            let attach = a.delta().intersection(piece).union(&own);
            let rc = RelativeComplex::new(piece.clone(), attach).map_err(ShellingError::from)?;
            let s = shell(&rc)?;
            Ok(concat_shellings(&a, &s, &own)?)
        }
    }
}

/// Vertex names of a choice gadget. Names shared by every gadget (`s`, `w`)
/// are left alone; the others get the prefix `var.` when `var` is not empty.
pub fn choice_vertex(var: &str, role: &str) -> String {
    if var.is_empty() || role == "s" || role == "w" {
        role.to_string()
    } else {
        format!("{var}.{role}")
    }
}

/// Role renaming of the negative hemisphere.
pub fn negated_role(role: &str) -> String {
    match role {
        "x" | "w" | "a" => role.to_string(),
        other => format!("n{other}"),
    }
}

/// The choice gadget of a variable: the positive and negative hemispheres
/// glued along their common boundary into a sphere, and the tricorne glued
/// by its free edge to `wx`. Marks `positive`, `negative`, `tricorne`,
/// `equator` and the gluing edge `glue` = ⟨sw⟩.
pub fn choice_gadget(var: &str, style: HemisphereStyle) -> Result<GadgetComplex, GadgetError> {
    let h = hemisphere_styled(style);
    let name = |r: &str| choice_vertex(var, r);
    let pos = h.complex.renamed(|v| name(v)).expect("prefix keeps names distinct");
    let neg = h
        .complex
        .renamed(|v| name(&negated_role(v)))
        .expect("prefix keeps names distinct");
    let equator = h.marked["equator"].renamed(|v| name(v)).expect("valid names");
    let shared = |c: &Complex, other: &Complex| -> Vec<(String, String)> {
        other
            .vertices()
            .iter()
            .filter(|v| c.vertex_index(v).is_some())
            .map(|v| (v.clone(), v.clone()))
            .collect()
    };
    let sphere = glue(
        &pos,
        &neg,
        &GluingMap {
            pairs: shared(&pos, &neg),
            along: Some(equator.clone()),
        },
    )?;
    let tri = tricorne().complex.renamed(|v| name(v)).expect("valid names");
    let wx = Complex::from_facets([[name("w"), name("x")]]).expect("valid names");
    let complex = glue(
        &sphere,
        &tri,
        &GluingMap {
            pairs: shared(&sphere, &tri),
            along: Some(wx),
        },
    )?;
    let mut roles = BTreeMap::new();
    for r in h.roles.keys() {
        roles.insert(r.clone(), name(r));
        let nr = negated_role(r);
        if nr != *r {
            roles.insert(nr.clone(), name(&nr));
        }
    }
    for r in ["s", "t1", "t2", "t3", "t4"] {
        roles.insert(r.to_string(), name(r));
    }
    let mut marked = BTreeMap::new();
    marked.insert("positive".into(), pos);
    marked.insert("negative".into(), neg);
    marked.insert("tricorne".into(), tri);
    marked.insert("equator".into(), equator);
    marked.insert(
        "glue".into(),
        Complex::from_facets([["s", "w"]]).expect("valid names"),
    );
    Ok(GadgetComplex {
        name: if var.is_empty() { "choice".into() } else { format!("choice:{var}") },
        complex,
        roles,
        marked,
        free_edges: Vec::new(),
        shelling: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separated_hemisphere_is_a_disc_with_the_same_boundary() {
        let d = separated_hemisphere();
        assert_eq!(d.complex.euler_characteristic(), 1);
        let free: Vec<Vec<&str>> = d.complex.free_faces().iter().map(|f| d.complex.names(f)).collect();
        assert_eq!(free, vec![vec!["a", "w"], vec!["a", "x"], vec!["w", "x"]]);
        for v in ["y", "y'"] {
            for far in ["w", "a"] {
                assert!(!d.complex.contains_names(&[v, far]));
            }
        }
    }

    #[test]
    fn cycle_indices_wrap() {
        assert_eq!(wrap(0, 3), 3);
        assert_eq!(wrap(4, 3), 1);
        assert_eq!(wrap(2, 2), 2);
    }

    #[test]
    fn turbine_zero_refused() {
        assert!(matches!(turbine(0), Err(GadgetError::ZeroTurbine)));
    }
}
