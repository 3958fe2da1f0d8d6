//! Rebuilding a lattice from a digraph.
//!
//! A stable pair is a maximal partial map from the vertices to {0, 1} that
//! never sends an edge from a 1-vertex to a 0-vertex. The set of stable
//! pairs, ordered by inclusion of their 1-sets, forms a lattice; for the
//! dual digraph of a finite lattice that lattice is isomorphic to the
//! original. This module enumerates stable pairs, builds the reconstructed
//! lattice, and checks both round trips together with the separation
//! properties the reconstruction relies on.

use std::collections::BTreeSet;

use crate::duality::{dual_digraph, DualDigraph};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::subset::Subset;
use crate::tirs::{check_tirs, Digraph};

/// A maximal partial map, stored as its preimages of 1 and 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StablePair {
    pub one_set: Subset,
    pub zero_set: Subset,
}

impl StablePair {
    /// The value at `v`: `Some(true)` for 1, `Some(false)` for 0, `None`
    /// where the map is undefined.
    pub fn value(&self, v: usize) -> Option<bool> {
        if self.one_set.contains(v) {
            Some(true)
        } else if self.zero_set.contains(v) {
            Some(false)
        } else {
            None
        }
    }

    pub fn domain(&self) -> Subset {
        self.one_set | self.zero_set
    }
}

/// Vertices receiving no edge from `ys`.
pub fn polar_right(g: &Digraph, ys: Subset) -> Subset {
    let mut hit = Subset::EMPTY;
    for y in ys.iter() {
        hit = hit | g.out(y);
    }
    hit.complement_in(g.n())
}

/// Vertices sending no edge into `ys`.
pub fn polar_left(g: &Digraph, ys: Subset) -> Subset {
    let mut hit = Subset::EMPTY;
    for y in ys.iter() {
        hit = hit | g.inn(y);
    }
    hit.complement_in(g.n())
}

/// All stable pairs of `g`, sorted by ascending one-set.
///
/// The one-sets are exactly the intersections of single-vertex left polars
/// (together with the full set, the empty intersection), so the enumeration
/// closes that family under pairwise intersection instead of scanning the
/// powerset. Candidates whose two sets overlap are dropped: they are not
/// partial maps. On a reflexive digraph no candidate is dropped.
pub fn enumerate_mpms(g: &Digraph) -> Vec<StablePair> {
    let mut closed: BTreeSet<Subset> = BTreeSet::new();
    closed.insert(g.full_vertex_set());
    for v in g.vertices() {
        closed.insert(polar_left(g, Subset::singleton(v)));
    }
    loop {
        let snapshot: Vec<Subset> = closed.iter().copied().collect();
        let before = closed.len();
        for (i, &a) in snapshot.iter().enumerate() {
            for &b in &snapshot[i + 1..] {
                closed.insert(a & b);
            }
        }
        if closed.len() == before {
            break;
        }
    }
    let mut pairs = Vec::new();
    for &one_set in &closed {
        let zero_set = polar_right(g, one_set);
        if polar_left(g, zero_set) != one_set {
            continue;
        }
        if !(one_set & zero_set).is_empty() {
            continue;
        }
        pairs.push(StablePair { one_set, zero_set });
    }
    pairs
}

/// The lattice of stable pairs of a digraph, ordered by one-set inclusion.
/// `pairs[i]` backs lattice element `i`.
#[derive(Clone, Debug)]
pub struct MpmLattice {
    pub lattice: Lattice,
    pub pairs: Vec<StablePair>,
}

/// Builds the stable-pair lattice of `g` and cross-checks the polar
/// formulas for meet and join against the order-theoretic tables.
pub fn mpm_lattice(g: &Digraph) -> Result<MpmLattice> {
    let pairs = enumerate_mpms(g);
    let labels: Vec<String> = pairs
        .iter()
        .map(|p| {
            let names: Vec<&str> = p.one_set.iter().map(|v| g.label(v)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    let mut covers = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        for (j, q) in pairs.iter().enumerate() {
            if i != j && p.one_set.is_proper_subset_of(q.one_set) {
                covers.push((i, j));
            }
        }
    }
    let lattice = Lattice::build_from_covers("mpm", labels, &covers)?;
    let index_of = |one: Subset| pairs.iter().position(|p| p.one_set == one);
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            let meet_one = pairs[i].one_set & pairs[j].one_set;
            let meet_zero = polar_right(g, meet_one);
            let table = lattice.meet(i, j);
            match index_of(meet_one) {
                Some(k) if k == table && pairs[k].zero_set == meet_zero => {}
                other => {
                    return Err(Error::NotALattice {
                        a: i,
                        b: j,
                        op: "meet",
                        candidates: other.map_or_else(|| vec![table], |k| vec![table, k]),
                    });
                }
            }
            let join_zero = pairs[i].zero_set & pairs[j].zero_set;
            let join_one = polar_left(g, join_zero);
            let table = lattice.join(i, j);
            match index_of(join_one) {
                Some(k) if k == table && pairs[k].zero_set == join_zero => {}
                other => {
                    return Err(Error::NotALattice {
                        a: i,
                        b: j,
                        op: "join",
                        candidates: other.map_or_else(|| vec![table], |k| vec![table, k]),
                    });
                }
            }
        }
    }
    Ok(MpmLattice { lattice, pairs })
}

/// The stable pair induced by element `a`: 1 on vertices whose filter
/// contains `a`, 0 on vertices whose ideal contains `a`.
pub fn evaluation_map(a: usize, d: &DualDigraph) -> StablePair {
    let mut one_set = Subset::EMPTY;
    let mut zero_set = Subset::EMPTY;
    for (v, pair) in d.pairs.iter().enumerate() {
        if pair.filter.contains(a) {
            one_set = one_set.with(v);
        }
        if pair.ideal.contains(a) {
            zero_set = zero_set.with(v);
        }
    }
    StablePair { one_set, zero_set }
}

/// Evidence that evaluation is an isomorphism onto the stable-pair lattice
/// of the dual digraph.
#[derive(Clone, Debug)]
pub struct FirstRoundTrip {
    pub dual: DualDigraph,
    pub mpm: MpmLattice,
    /// `element_to_mpm[a]` is the index of the stable pair equal to the
    /// evaluation of `a`.
    pub element_to_mpm: Vec<usize>,
}

/// Verifies that `a -> evaluation_map(a, dual)` is a bijection from the
/// elements of `l` onto the stable pairs of its dual digraph which both
/// preserves and reflects order.
pub fn check_first_roundtrip(l: &Lattice) -> Result<FirstRoundTrip> {
    let dual = dual_digraph(l);
    let mpm = mpm_lattice(&dual.digraph)?;
    let mut element_to_mpm = Vec::with_capacity(l.n());
    let mut images = vec![None; mpm.pairs.len()];
    for a in l.elements() {
        let e = evaluation_map(a, &dual);
        let k = mpm
            .pairs
            .iter()
            .position(|p| *p == e)
            .ok_or_else(|| Error::RoundTripFailure {
                detail: format!(
                    "evaluation of element {} ({}) is not a stable pair of the dual digraph",
                    a,
                    l.label(a)
                ),
            })?;
        if let Some(b) = images[k] {
            return Err(Error::RoundTripFailure {
                detail: format!("elements {b} and {a} evaluate to the same stable pair {k}"),
            });
        }
        images[k] = Some(a);
        element_to_mpm.push(k);
    }
    if mpm.pairs.len() != l.n() {
        return Err(Error::RoundTripFailure {
            detail: format!(
                "{} stable pairs but {} lattice elements: evaluation is not onto",
                mpm.pairs.len(),
                l.n()
            ),
        });
    }
    for a in l.elements() {
        for b in l.elements() {
            let image_leq = mpm.lattice.leq(element_to_mpm[a], element_to_mpm[b]);
            if l.leq(a, b) != image_leq {
                return Err(Error::RoundTripFailure {
                    detail: format!(
                        "order mismatch on ({a},{b}): lattice says {}, images say {image_leq}",
                        l.leq(a, b)
                    ),
                });
            }
        }
    }
    Ok(FirstRoundTrip {
        dual,
        mpm,
        element_to_mpm,
    })
}

/// Evidence that a TiRS digraph is isomorphic to the dual digraph of its
/// stable-pair lattice.
#[derive(Clone, Debug)]
pub struct SecondRoundTrip {
    pub mpm: MpmLattice,
    pub redual: DualDigraph,
    /// `vertex_to_mdfip[x]` is the index of the pair whose filter is the
    /// set of stable pairs sending `x` to 1 and whose ideal is the set
    /// sending `x` to 0.
    pub vertex_to_mdfip: Vec<usize>,
}

/// Verifies that `x -> ({phi | phi(x)=1}, {phi | phi(x)=0})` is an
/// edge-preserving and edge-reflecting bijection from the vertices of a
/// TiRS digraph onto the maximal pairs of its stable-pair lattice.
pub fn check_second_roundtrip(g: &Digraph) -> Result<SecondRoundTrip> {
    let report = check_tirs(g);
    if !report.is_tirs() {
        return Err(Error::PreconditionViolated {
            detail: format!("digraph is not TiRS: {report:?}"),
        });
    }
    let mpm = mpm_lattice(g)?;
    let redual = dual_digraph(&mpm.lattice);
    let mut vertex_to_mdfip = Vec::with_capacity(g.n());
    let mut images = vec![None; redual.pairs.len()];
    for x in g.vertices() {
        let mut filter = Subset::EMPTY;
        let mut ideal = Subset::EMPTY;
        for (i, p) in mpm.pairs.iter().enumerate() {
            if p.one_set.contains(x) {
                filter = filter.with(i);
            }
            if p.zero_set.contains(x) {
                ideal = ideal.with(i);
            }
        }
        let k = redual
            .pairs
            .iter()
            .position(|m| m.filter == filter && m.ideal == ideal)
            .ok_or_else(|| Error::RoundTripFailure {
                detail: format!(
                    "vertex {} ({}) does not induce a maximal filter-ideal pair of the rebuilt lattice",
                    x,
                    g.label(x)
                ),
            })?;
        if let Some(y) = images[k] {
            return Err(Error::RoundTripFailure {
                detail: format!("vertices {y} and {x} induce the same maximal pair {k}"),
            });
        }
        images[k] = Some(x);
        vertex_to_mdfip.push(k);
    }
    if redual.pairs.len() != g.n() {
        return Err(Error::RoundTripFailure {
            detail: format!(
                "{} maximal pairs but {} vertices: the map is not onto",
                redual.pairs.len(),
                g.n()
            ),
        });
    }
    for x in g.vertices() {
        for y in g.vertices() {
            let image_edge = redual
                .digraph
                .has_edge(vertex_to_mdfip[x], vertex_to_mdfip[y]);
            if g.has_edge(x, y) != image_edge {
                return Err(Error::RoundTripFailure {
                    detail: format!(
                        "edge mismatch on ({x},{y}): digraph says {}, images say {image_edge}",
                        g.has_edge(x, y)
                    ),
                });
            }
        }
    }
    Ok(SecondRoundTrip {
        mpm,
        redual,
        vertex_to_mdfip,
    })
}

/// Non-edges `(x, y)` with no stable pair sending `x` to 1 and `y` to 0.
/// Empty means every non-edge is separated.
pub fn check_separation(g: &Digraph) -> Vec<(usize, usize)> {
    let pairs = enumerate_mpms(g);
    let mut failures = Vec::new();
    for x in g.vertices() {
        for y in g.vertices() {
            if g.has_edge(x, y) {
                continue;
            }
            let separated = pairs
                .iter()
                .any(|p| p.one_set.contains(x) && p.zero_set.contains(y));
            if !separated {
                failures.push((x, y));
            }
        }
    }
    failures
}

/// Outcome of the two distinguishability conditions on ordered vertex
/// pairs: whenever the out-sets (respectively in-sets) are not nested,
/// some stable pair must tell the vertices apart on the matching side.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DoubleDisconnection {
    /// Pairs `(x, y)` with `out(y)` not a subset of `out(x)` but no stable
    /// pair with value 1 at `x` and a value other than 1 at `y`.
    pub one_side_failures: Vec<(usize, usize)>,
    /// Pairs `(x, y)` with `in(y)` not a subset of `in(x)` but no stable
    /// pair with value 0 at `x` and a value other than 0 at `y`.
    pub zero_side_failures: Vec<(usize, usize)>,
}

impl DoubleDisconnection {
    pub fn passed(&self) -> bool {
        self.one_side_failures.is_empty() && self.zero_side_failures.is_empty()
    }
}

/// Checks both distinguishability conditions on every ordered vertex pair.
pub fn check_doubly_disconnected(g: &Digraph) -> DoubleDisconnection {
    let pairs = enumerate_mpms(g);
    let mut report = DoubleDisconnection::default();
    for x in g.vertices() {
        for y in g.vertices() {
            if x == y {
                continue;
            }
            if !g.out(y).is_subset_of(g.out(x)) {
                let found = pairs
                    .iter()
                    .any(|p| p.one_set.contains(x) && !p.one_set.contains(y));
                if !found {
                    report.one_side_failures.push((x, y));
                }
            }
            if !g.inn(y).is_subset_of(g.inn(x)) {
                let found = pairs
                    .iter()
                    .any(|p| p.zero_set.contains(x) && !p.zero_set.contains(y));
                if !found {
                    report.zero_side_failures.push((x, y));
                }
            }
        }
    }
    report
}

/// A failure of the closure property that a stable pair's one-set is
/// closed downward under out-set inclusion (and its zero-set under in-set
/// inclusion).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonotoneViolation {
    /// True for the one-set side, false for the zero-set side.
    pub on_one_side: bool,
    pub pair_index: usize,
    /// The vertex known to be in the set.
    pub inside: usize,
    /// The vertex with nested neighborhood that should also be in the set.
    pub dominated: usize,
}

/// Exhaustively checks: if `x` is in the one-set of a stable pair and
/// `out(z)` is a subset of `out(x)`, then `z` is in the one-set too; dually
/// for zero-sets with in-sets. Returns the first violation.
pub fn check_monotone_closure(g: &Digraph) -> Option<MonotoneViolation> {
    let pairs = enumerate_mpms(g);
    for (pair_index, p) in pairs.iter().enumerate() {
        for x in p.one_set.iter() {
            for z in g.vertices() {
                if g.out(z).is_subset_of(g.out(x)) && !p.one_set.contains(z) {
                    return Some(MonotoneViolation {
                        on_one_side: true,
                        pair_index,
                        inside: x,
                        dominated: z,
                    });
                }
            }
        }
        for x in p.zero_set.iter() {
            for z in g.vertices() {
                if g.inn(z).is_subset_of(g.inn(x)) && !p.zero_set.contains(z) {
                    return Some(MonotoneViolation {
                        on_one_side: false,
                        pair_index,
                        inside: x,
                        dominated: z,
                    });
                }
            }
        }
    }
    None
}

/// A failure of one of the comparison laws between stable pairs that hold
/// on TiRS digraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComparisonLawViolation {
    pub law: &'static str,
    pub phi: usize,
    pub psi: usize,
}

/// Checks, for every ordered pair of stable pairs of `g`:
/// (i) a zero-set disjoint from the other's one-set is contained in the
/// other's zero-set; (ii) the same with the roles of one and zero swapped;
/// (iii) containment on both sides forces equality. Returns the first
/// violation; all three hold on TiRS digraphs.
pub fn check_comparison_laws(g: &Digraph) -> Option<ComparisonLawViolation> {
    let pairs = enumerate_mpms(g);
    for (i, p) in pairs.iter().enumerate() {
        for (j, q) in pairs.iter().enumerate() {
            if !p.zero_set.intersects(q.one_set) && !p.zero_set.is_subset_of(q.zero_set) {
                return Some(ComparisonLawViolation {
                    law: "zero-comparison",
                    phi: i,
                    psi: j,
                });
            }
            if !p.one_set.intersects(q.zero_set) && !p.one_set.is_subset_of(q.one_set) {
                return Some(ComparisonLawViolation {
                    law: "one-comparison",
                    phi: i,
                    psi: j,
                });
            }
            if i != j && p.one_set.is_subset_of(q.one_set) && p.zero_set.is_subset_of(q.zero_set) {
                return Some(ComparisonLawViolation {
                    law: "antisymmetry",
                    phi: i,
                    psi: j,
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::lattice_isomorphic;
    use crate::genlat::fixture;

    fn dual_of(name: &str) -> DualDigraph {
        dual_digraph(&fixture(name).unwrap())
    }

    #[test]
    fn polars_on_the_m3_dual() {
        let d = dual_of("M3");
        let g = &d.digraph;
        assert_eq!(polar_right(g, Subset::EMPTY), g.full_vertex_set());
        assert_eq!(polar_right(g, g.full_vertex_set()), Subset::EMPTY);
        assert_eq!(polar_left(g, Subset::EMPTY), g.full_vertex_set());
        // Vertices 0..6 are ab, ac, ba, bc, ca, cb; nothing in {ba, ca}
        // receives an edge from {ab, ac}.
        assert_eq!(
            polar_right(g, Subset::from_elems([0, 1])),
            Subset::from_elems([2, 4])
        );
    }

    #[test]
    fn single_loop_vertex_has_the_two_constant_maps() {
        let g = Digraph::new_reflexive(vec!["v".into()], &[]).unwrap();
        let pairs = enumerate_mpms(&g);
        assert_eq!(
            pairs,
            vec![
                StablePair {
                    one_set: Subset::EMPTY,
                    zero_set: Subset::singleton(0)
                },
                StablePair {
                    one_set: Subset::singleton(0),
                    zero_set: Subset::EMPTY
                },
            ]
        );
    }

    #[test]
    fn stable_pairs_of_the_m3_dual_form_m3() {
        let m3 = fixture("M3").unwrap();
        let mpm = mpm_lattice(&dual_digraph(&m3).digraph).unwrap();
        assert_eq!(mpm.pairs.len(), 5);
        assert!(lattice_isomorphic(&mpm.lattice, &m3).is_some());
    }

    #[test]
    fn stable_pairs_of_the_l5_dual_form_l5() {
        let l5 = fixture("L5").unwrap();
        let mpm = mpm_lattice(&dual_digraph(&l5).digraph).unwrap();
        assert_eq!(mpm.pairs.len(), 6);
        assert!(lattice_isomorphic(&mpm.lattice, &l5).is_some());
    }

    #[test]
    fn constants_are_the_bounds_of_the_stable_pair_lattice() {
        let d = dual_of("L2");
        let g = &d.digraph;
        let mpm = mpm_lattice(g).unwrap();
        let bottom = mpm.pairs[mpm.lattice.bottom()];
        let top = mpm.pairs[mpm.lattice.top()];
        assert_eq!(bottom.one_set, Subset::EMPTY);
        assert_eq!(bottom.zero_set, g.full_vertex_set());
        assert_eq!(top.one_set, g.full_vertex_set());
        assert_eq!(top.zero_set, Subset::EMPTY);
    }

    #[test]
    fn evaluation_of_an_m3_atom() {
        let m3 = fixture("M3").unwrap();
        let d = dual_digraph(&m3);
        // Element 1 is the atom a; vertices ab, ac carry it in their
        // filter, vertices ba, ca in their ideal.
        let e = evaluation_map(1, &d);
        assert_eq!(e.one_set, Subset::from_elems([0, 1]));
        assert_eq!(e.zero_set, Subset::from_elems([2, 4]));
        let top = evaluation_map(4, &d);
        assert_eq!(top.one_set, d.digraph.full_vertex_set());
        assert_eq!(top.zero_set, Subset::EMPTY);
        let bottom = evaluation_map(0, &d);
        assert_eq!(bottom.one_set, Subset::EMPTY);
        assert_eq!(bottom.zero_set, d.digraph.full_vertex_set());
    }

    #[test]
    fn first_roundtrip_on_the_drawn_fixtures() {
        for (name, size) in [
            ("M3", 5),
            ("L1", 7),
            ("L2", 7),
            ("L3", 7),
            ("L4", 6),
            ("L5", 6),
        ] {
            let l = fixture(name).unwrap();
            let trip = check_first_roundtrip(&l).unwrap();
            assert_eq!(trip.mpm.pairs.len(), size, "{name}");
        }
    }

    #[test]
    fn second_roundtrip_on_fixture_duals() {
        for name in ["M3", "L1", "L5", "N5", "B3"] {
            let d = dual_of(name);
            let trip = check_second_roundtrip(&d.digraph).unwrap();
            assert_eq!(trip.redual.pairs.len(), d.digraph.n(), "{name}");
        }
    }

    #[test]
    fn second_roundtrip_on_a_single_loop_vertex() {
        let g = Digraph::new_reflexive(vec!["v".into()], &[]).unwrap();
        let trip = check_second_roundtrip(&g).unwrap();
        assert_eq!(trip.mpm.lattice.n(), 2);
        assert_eq!(trip.redual.pairs.len(), 1);
    }

    #[test]
    fn second_roundtrip_rejects_non_tirs_input() {
        // Two loop-free vertices with a single edge: not even reflexive.
        let g = Digraph::new(vec!["x".into(), "y".into()], &[(0, 1)]).unwrap();
        assert!(matches!(
            check_second_roundtrip(&g),
            Err(Error::PreconditionViolated { .. })
        ));
    }

    #[test]
    fn separation_holds_on_fixture_duals() {
        for name in ["M3", "L2", "L4", "B2"] {
            let d = dual_of(name);
            assert!(check_separation(&d.digraph).is_empty(), "{name}");
        }
    }

    #[test]
    fn complete_reflexive_digraph_separates_vacuously() {
        let g = Digraph::new_reflexive(vec!["x".into(), "y".into()], &[(0, 1), (1, 0)]).unwrap();
        assert!(check_separation(&g).is_empty());
    }

    #[test]
    fn double_disconnection_holds_on_fixture_duals() {
        for name in ["M3", "L1", "L3", "N5"] {
            let d = dual_of(name);
            assert!(check_doubly_disconnected(&d.digraph).passed(), "{name}");
        }
    }

    #[test]
    fn loop_free_edge_fails_double_disconnection() {
        // With the single edge x -> y and no loops there is no stable pair
        // at all, so the pair (y, x) cannot be distinguished.
        let g = Digraph::new(vec!["x".into(), "y".into()], &[(0, 1)]).unwrap();
        assert!(enumerate_mpms(&g).is_empty());
        let report = check_doubly_disconnected(&g);
        assert_eq!(report.one_side_failures, vec![(1, 0)]);
        assert_eq!(report.zero_side_failures, vec![(0, 1)]);
    }

    #[test]
    fn closure_and_comparison_laws_on_fixture_duals() {
        for name in ["M3", "L2", "L5", "B3"] {
            let d = dual_of(name);
            assert_eq!(check_monotone_closure(&d.digraph), None, "{name}");
            assert_eq!(check_comparison_laws(&d.digraph), None, "{name}");
        }
    }
}
