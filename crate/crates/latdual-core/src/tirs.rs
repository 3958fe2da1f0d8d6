//! Reflexive digraphs, the TiRS axioms, the semidistributivity digraph
//! conditions, and digraph isomorphism.

use crate::error::{Error, Result};
use crate::subset::Subset;

/// A digraph on at most 64 vertices with adjacency stored both ways.
/// `out[v]` is the set `vE` of successors, `inn[v]` the set `Ev` of
/// predecessors; `inn` is maintained as the exact transpose of `out`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    labels: Vec<String>,
    out: Vec<Subset>,
    inn: Vec<Subset>,
}

impl Digraph {
    /// Builds a digraph from an explicit edge list; loops are kept as given.
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Digraph> {
        let n = labels.len();
        if n > 64 {
            return Err(Error::SizeLimitExceeded {
                what: "digraph vertex set".into(),
                size: n,
                cap: 64,
            });
        }
        let mut out = vec![Subset::EMPTY; n];
        let mut inn = vec![Subset::EMPTY; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parse {
                    detail: format!("edge ({u},{v}) references a vertex outside 0..{n}"),
                });
            }
            out[u] = out[u].with(v);
            inn[v] = inn[v].with(u);
        }
        Ok(Digraph {
            n,
            labels,
            out,
            inn,
        })
    }

    /// Same edge set plus a loop on every vertex.
    pub fn new_reflexive(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Digraph> {
        let n = labels.len();
        let mut all: Vec<(usize, usize)> = edges.to_vec();
        all.extend((0..n).map(|v| (v, v)));
        Digraph::new(labels, &all)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    /// Successor set `vE`.
    pub fn out(&self, v: usize) -> Subset {
        self.out[v]
    }

    /// Predecessor set `Ev`.
    pub fn inn(&self, v: usize) -> Subset {
        self.inn[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    pub fn full_vertex_set(&self) -> Subset {
        Subset::full(self.n)
    }

    /// All edges in lexicographic order, loops included.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for u in 0..self.n {
            for v in self.out[u].iter() {
                e.push((u, v));
            }
        }
        e
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|v| self.out[v].contains(v))
    }

    /// The digraph with every edge reversed.
    pub fn transpose(&self) -> Digraph {
        Digraph {
            n: self.n,
            labels: self.labels.clone(),
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }
}

/// Outcome of the TiRS axiom check. Each field holds the lexicographically
/// least witness of a violation, or `None` when the axiom holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TirsReport {
    /// Vertex without a loop.
    pub missing_loop: Option<usize>,
    /// Distinct pair with equal out-sets and equal in-sets.
    pub s_violation: Option<(usize, usize)>,
    /// Pair with `xE` a proper subset of `yE` yet an edge x -> y.
    pub r_out_violation: Option<(usize, usize)>,
    /// Pair with `Ex` a proper subset of `Ey` yet an edge y -> x.
    pub r_in_violation: Option<(usize, usize)>,
    /// Edge (x,y) admitting no z with `zE` in `xE` and `Ez` in `Ey`.
    pub ti_violation: Option<(usize, usize)>,
}

impl TirsReport {
    pub fn reflexive(&self) -> bool {
        self.missing_loop.is_none()
    }

    pub fn s_holds(&self) -> bool {
        self.s_violation.is_none()
    }

    pub fn r_holds(&self) -> bool {
        self.r_out_violation.is_none() && self.r_in_violation.is_none()
    }

    pub fn ti_holds(&self) -> bool {
        self.ti_violation.is_none()
    }

    pub fn is_tirs(&self) -> bool {
        self.reflexive() && self.s_holds() && self.r_holds() && self.ti_holds()
    }
}

/// Checks reflexivity and the three TiRS axioms by exhaustive scans.
pub fn check_tirs(g: &Digraph) -> TirsReport {
    let missing_loop = g.vertices().find(|&v| !g.has_edge(v, v));

    let mut s_violation = None;
    'outer_s: for x in g.vertices() {
        for y in x + 1..g.n() {
            if g.out(x) == g.out(y) && g.inn(x) == g.inn(y) {
                s_violation = Some((x, y));
                break 'outer_s;
            }
        }
    }

    let mut r_out_violation = None;
    let mut r_in_violation = None;
    'outer_r: for x in g.vertices() {
        for y in g.vertices() {
            if r_out_violation.is_none()
                && g.out(x).is_proper_subset_of(g.out(y))
                && g.has_edge(x, y)
            {
                r_out_violation = Some((x, y));
            }
            if r_in_violation.is_none()
                && g.inn(x).is_proper_subset_of(g.inn(y))
                && g.has_edge(y, x)
            {
                r_in_violation = Some((x, y));
            }
            if r_out_violation.is_some() && r_in_violation.is_some() {
                break 'outer_r;
            }
        }
    }

    let mut ti_violation = None;
    'outer_ti: for x in g.vertices() {
        for y in g.out(x).iter() {
            let ok = g
                .vertices()
                .any(|z| g.out(z).is_subset_of(g.out(x)) && g.inn(z).is_subset_of(g.inn(y)));
            if !ok {
                ti_violation = Some((x, y));
                break 'outer_ti;
            }
        }
    }

    TirsReport {
        missing_loop,
        s_violation,
        r_out_violation,
        r_in_violation,
        ti_violation,
    }
}

/// On a TiRS digraph, `xE` within `yE` and `Ex` within `Ey` forces x = y.
/// A violation on an input that passed `check_tirs` is an implementation
/// bug, reported as `InconsistentAxioms`.
pub fn check_antisymmetry_lemma(g: &Digraph) -> Result<()> {
    for x in g.vertices() {
        for y in g.vertices() {
            if x != y && g.out(x).is_subset_of(g.out(y)) && g.inn(x).is_subset_of(g.inn(y)) {
                return Err(Error::InconsistentAxioms {
                    detail: format!(
                        "antisymmetry lemma fails at ({x},{y}): out({x}) in out({y}) and in({x}) in in({y})"
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Distinct vertices must have distinct in-neighbourhoods; returns the
/// first offending pair otherwise.
pub fn check_djsd(g: &Digraph) -> Option<(usize, usize)> {
    for x in g.vertices() {
        for y in x + 1..g.n() {
            if g.inn(x) == g.inn(y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Distinct vertices must have distinct out-neighbourhoods.
pub fn check_dmsd(g: &Digraph) -> Option<(usize, usize)> {
    for x in g.vertices() {
        for y in x + 1..g.n() {
            if g.out(x) == g.out(y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Both neighbourhood conditions; `None, None` means the digraph passes.
#[allow(clippy::type_complexity)]
pub fn check_dsd(g: &Digraph) -> (Option<(usize, usize)>, Option<(usize, usize)>) {
    (check_djsd(g), check_dmsd(g))
}

/// Finds an edge-preserving-and-reflecting bijection between two digraphs,
/// or reports them non-isomorphic. Backtracking with degree-profile
/// pruning; fine for the vertex counts this crate works with.
pub fn digraph_isomorphic(g1: &Digraph, g2: &Digraph) -> Option<Vec<usize>> {
    if g1.n() != g2.n() {
        return None;
    }
    let n = g1.n();
    let profile = |g: &Digraph, v: usize| {
        (
            g.out(v).len(),
            g.inn(v).len(),
            g.has_edge(v, v),
            (g.out(v) & g.inn(v)).len(),
        )
    };
    let p1: Vec<_> = (0..n).map(|v| profile(g1, v)).collect();
    let p2: Vec<_> = (0..n).map(|v| profile(g2, v)).collect();
    let mut s1 = p1.clone();
    let mut s2 = p2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    let cands: Vec<Subset> = (0..n)
        .map(|v| Subset::from_elems((0..n).filter(|&w| p2[w] == p1[v])))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (cands[v].len(), v));
    let mut map = vec![usize::MAX; n];
    fn step(
        g1: &Digraph,
        g2: &Digraph,
        order: &[usize],
        cands: &[Subset],
        depth: usize,
        map: &mut Vec<usize>,
        used: Subset,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in cands[v].iter() {
            if used.contains(w) {
                continue;
            }
            let ok = order[..depth].iter().all(|&p| {
                g1.has_edge(v, p) == g2.has_edge(w, map[p])
                    && g1.has_edge(p, v) == g2.has_edge(map[p], w)
            }) && (g1.has_edge(v, v) == g2.has_edge(w, w));
            if !ok {
                continue;
            }
            map[v] = w;
            if step(g1, g2, order, cands, depth + 1, map, used.with(w)) {
                return true;
            }
            map[v] = usize::MAX;
        }
        false
    }
    if step(g1, g2, &order, &cands, 0, &mut map, Subset::EMPTY) {
        Some(map)
    } else {
        None
    }
}
