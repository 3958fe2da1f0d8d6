//! The dual digraph of a finite bounded lattice: vertices are the maximal
//! disjoint filter-ideal pairs, with an edge from one pair to another
//! exactly when the first filter misses the second ideal.

use crate::embed::require_distributive;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::subset::Subset;
use crate::tirs::Digraph;

/// A maximal disjoint filter-ideal pair. The sets are authoritative; the
/// generators are derived from them (in a finite lattice every filter and
/// ideal is principal).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mdfip {
    pub filter: Subset,
    pub ideal: Subset,
    pub f_min: usize,
    pub i_max: usize,
}

impl Mdfip {
    /// Wraps a filter/ideal pair, deriving the principal generators.
    /// Panics if either set lacks its extremum, which cannot happen for
    /// actual filters and ideals of a finite lattice.
    pub fn from_sets(l: &Lattice, filter: Subset, ideal: Subset) -> Mdfip {
        let f_min = l
            .filter_min(filter)
            .expect("filter of a finite lattice has a least element");
        let i_max = l
            .ideal_max(ideal)
            .expect("ideal of a finite lattice has a greatest element");
        Mdfip {
            filter,
            ideal,
            f_min,
            i_max,
        }
    }

    pub fn from_generators(l: &Lattice, f_min: usize, i_max: usize) -> Mdfip {
        Mdfip {
            filter: l.up_set(f_min),
            ideal: l.down_set(i_max),
            f_min,
            i_max,
        }
    }

    /// Two-letter style label built from the generators' labels.
    pub fn label(&self, l: &Lattice) -> String {
        format!("{}{}", l.label(self.f_min), l.label(self.i_max))
    }
}

/// The dual digraph together with the pairs backing each vertex.
/// Vertex order is lexicographic by `(f_min, i_max)`.
#[derive(Clone, Debug)]
pub struct DualDigraph {
    pub digraph: Digraph,
    pub pairs: Vec<Mdfip>,
}

/// Closes `s` upward and under pairwise meets.
pub fn filter_closure(l: &Lattice, s: Subset) -> Subset {
    let mut cur = s;
    loop {
        let mut next = l.up_closure(cur);
        for x in next.iter() {
            for y in next.iter() {
                next = next.with(l.meet(x, y));
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Closes `s` downward and under pairwise joins.
pub fn ideal_closure(l: &Lattice, s: Subset) -> Subset {
    let mut cur = s;
    loop {
        let mut next = l.down_closure(cur);
        for x in next.iter() {
            for y in next.iter() {
                next = next.with(l.join(x, y));
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Grows a disjoint filter/ideal pair to a maximal one by alternating
/// single-element extensions: on each round the smallest element whose
/// filter closure stays disjoint from the ideal is absorbed, then the
/// smallest element whose ideal closure stays disjoint from the filter,
/// until neither side can grow. Maximality of the result needs only
/// single-element tests, since any larger disjoint filter would already
/// absorb one new element's closure.
pub fn extend_to_maximal(l: &Lattice, f0: Subset, i0: Subset) -> Result<Mdfip> {
    if !l.is_filter(f0) {
        return Err(Error::PreconditionViolated {
            detail: format!("extend_to_maximal: {f0:?} is not a filter"),
        });
    }
    if !l.is_ideal(i0) {
        return Err(Error::PreconditionViolated {
            detail: format!("extend_to_maximal: {i0:?} is not an ideal"),
        });
    }
    if f0.intersects(i0) {
        return Err(Error::NotDisjoint {
            common: (f0 & i0).to_vec(),
        });
    }
    let mut f = f0;
    let mut i = i0;
    loop {
        let mut grew = false;
        for x in l.elements() {
            if !f.contains(x) {
                let bigger = filter_closure(l, f.with(x));
                if !bigger.intersects(i) {
                    f = bigger;
                    grew = true;
                    break;
                }
            }
        }
        for y in l.elements() {
            if !i.contains(y) {
                let bigger = ideal_closure(l, i.with(y));
                if !bigger.intersects(f) {
                    i = bigger;
                    grew = true;
                    break;
                }
            }
        }
        if !grew {
            return Ok(Mdfip::from_sets(l, f, i));
        }
    }
}

/// All maximal disjoint filter-ideal pairs, in `(f_min, i_max)` order.
///
/// A pair of generators (x, y) yields a maximal pair exactly when x is not
/// below y, every lower cover of x is below y, and every upper cover of y
/// is above x; checking covers suffices because any strictly smaller
/// element of the lattice sits below some lower cover, and dually.
pub fn enumerate_mdfips(l: &Lattice) -> Vec<Mdfip> {
    let mut out = Vec::new();
    for x in l.elements() {
        for y in l.elements() {
            if l.leq(x, y) {
                continue;
            }
            let filter_maximal = l.lower_covers(x).iter().all(|&c| l.leq(c, y));
            let ideal_maximal = l.upper_covers(y).iter().all(|&c| l.leq(x, c));
            if filter_maximal && ideal_maximal {
                out.push(Mdfip::from_generators(l, x, y));
            }
        }
    }
    out.sort_by_key(|p| (p.f_min, p.i_max));
    out
}

/// Builds the dual digraph: one vertex per maximal pair, an edge from u to
/// v exactly when u's filter generator is not below v's ideal generator
/// (equivalently, u's filter and v's ideal are disjoint). Reflexive by
/// construction since every pair is disjoint with itself.
pub fn dual_digraph(l: &Lattice) -> DualDigraph {
    let pairs = enumerate_mdfips(l);
    let labels: Vec<String> = pairs.iter().map(|p| p.label(l)).collect();
    let mut edges = Vec::new();
    for (u, pu) in pairs.iter().enumerate() {
        for (v, pv) in pairs.iter().enumerate() {
            if !l.leq(pu.f_min, pv.i_max) {
                edges.push((u, v));
            }
        }
    }
    let digraph = Digraph::new(labels, &edges).expect("vertex count bounded by carrier size");
    DualDigraph { digraph, pairs }
}

/// The poset of join-irreducible elements of a distributive lattice.
#[derive(Clone, Debug)]
pub struct BirkhoffPoset {
    /// Join-irreducible elements of the source lattice, ascending.
    pub irreducibles: Vec<usize>,
}

impl BirkhoffPoset {
    /// The lattice of downward-closed subsets of the poset, ordered by
    /// inclusion. Labels spell out the member sets.
    pub fn downset_lattice(&self, l: &Lattice) -> Result<Lattice> {
        let k = self.irreducibles.len();
        if k > 20 {
            return Err(Error::SizeLimitExceeded {
                what: "downset enumeration over join-irreducibles".into(),
                size: k,
                cap: 20,
            });
        }
        let mut downsets: Vec<Subset> = Vec::new();
        for bits in 0..(1u64 << k) {
            let s = Subset(bits);
            let closed = s.iter().all(|i| {
                (0..k).all(|j| !l.leq(self.irreducibles[j], self.irreducibles[i]) || s.contains(j))
            });
            if closed {
                downsets.push(s);
            }
        }
        downsets.sort_by_key(|s| (s.len(), s.0));
        let labels: Vec<String> = downsets
            .iter()
            .map(|s| {
                let names: Vec<&str> = s.iter().map(|i| l.label(self.irreducibles[i])).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        let mut covers = Vec::new();
        for (i, &a) in downsets.iter().enumerate() {
            for (j, &b) in downsets.iter().enumerate() {
                if i != j && a.is_proper_subset_of(b) {
                    covers.push((i, j));
                }
            }
        }
        Lattice::build_from_covers(format!("downsets({})", l.name()), labels, &covers)
    }
}

/// For a distributive lattice, the dual digraph is a partial order whose
/// vertices correspond to the join-irreducible elements through the filter
/// generators. Violations of either fact on a distributive input are
/// implementation bugs and come back as `InconsistentAxioms`; a
/// non-distributive input fails with `NotDistributive`.
pub fn birkhoff_poset(l: &Lattice) -> Result<BirkhoffPoset> {
    require_distributive(l)?;
    let dual = dual_digraph(l);
    let g = &dual.digraph;
    if let Some(v) = g.vertices().find(|&v| !g.has_edge(v, v)) {
        return Err(Error::InconsistentAxioms {
            detail: format!("dual of a distributive lattice lost the loop at vertex {v}"),
        });
    }
    for u in g.vertices() {
        for v in g.vertices() {
            if u != v && g.has_edge(u, v) && g.has_edge(v, u) {
                return Err(Error::InconsistentAxioms {
                    detail: format!(
                        "dual of a distributive lattice is not antisymmetric at ({u},{v})"
                    ),
                });
            }
            for w in g.vertices() {
                if g.has_edge(u, v) && g.has_edge(v, w) && !g.has_edge(u, w) {
                    return Err(Error::InconsistentAxioms {
                        detail: format!(
                            "dual of a distributive lattice is not transitive at ({u},{v},{w})"
                        ),
                    });
                }
            }
        }
    }
    let mut from_pairs: Vec<usize> = dual.pairs.iter().map(|p| p.f_min).collect();
    from_pairs.sort_unstable();
    from_pairs.dedup();
    let irreducibles = l.join_irreducibles();
    if from_pairs != irreducibles {
        return Err(Error::InconsistentAxioms {
            detail: format!(
                "filter generators {from_pairs:?} do not match join-irreducibles {irreducibles:?}"
            ),
        });
    }
    Ok(BirkhoffPoset { irreducibles })
}
