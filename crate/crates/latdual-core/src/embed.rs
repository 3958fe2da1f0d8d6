//! Sublattice embeddings, lattice isomorphism, and distributivity tests.

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::subset::Subset;

/// Checks that `map` embeds `pattern` into `host` as a sublattice:
/// injective and preserving binary joins and meets (which forces it to
/// preserve and reflect the order).
pub fn verify_sublattice_embedding(host: &Lattice, pattern: &Lattice, map: &[usize]) -> bool {
    if map.len() != pattern.n() || map.iter().any(|&x| x >= host.n()) {
        return false;
    }
    if Subset::from_elems(map.iter().copied()).len() != map.len() {
        return false;
    }
    for a in pattern.elements() {
        for b in pattern.elements() {
            if host.join(map[a], map[b]) != map[pattern.join(a, b)]
                || host.meet(map[a], map[b]) != map[pattern.meet(a, b)]
            {
                return false;
            }
        }
    }
    true
}

/// Like `verify_sublattice_embedding`, additionally requiring that the
/// pattern's bounds land on the host's bounds.
pub fn verify_bounded_sublattice_embedding(
    host: &Lattice,
    pattern: &Lattice,
    map: &[usize],
) -> bool {
    verify_sublattice_embedding(host, pattern, map)
        && map[pattern.bottom()] == host.bottom()
        && map[pattern.top()] == host.top()
}

/// Searches for a sublattice embedding of `pattern` into `host`.
/// Deterministic: candidates are tried in ascending element order.
pub fn find_sublattice_embedding(host: &Lattice, pattern: &Lattice) -> Option<Vec<usize>> {
    embed_search(host, pattern, false)
}

/// Searches for an embedding sending bottom to bottom and top to top.
pub fn find_bounded_sublattice_embedding(host: &Lattice, pattern: &Lattice) -> Option<Vec<usize>> {
    embed_search(host, pattern, true)
}

/// How one pattern element gets its image during the search: either a free
/// choice or forced as the join/meet of two earlier elements.
#[derive(Clone, Copy)]
enum Placement {
    Free,
    Join(usize, usize),
    Meet(usize, usize),
}

/// Chooses the order in which pattern elements get mapped. After each free
/// choice, every element expressible as a join or meet of already-placed
/// elements is placed as forced, which keeps the branching factor at the
/// number of genuinely free elements (at most four for the patterns used
/// here).
fn plan_order(pattern: &Lattice, seed: &[usize]) -> Vec<(usize, Placement)> {
    let n = pattern.n();
    let mut placed = Subset::EMPTY;
    let mut plan = Vec::with_capacity(n);
    for &e in seed {
        if !placed.contains(e) {
            plan.push((e, Placement::Free));
            placed = placed.with(e);
        }
    }
    while placed.len() < n {
        let mut forced = None;
        'scan: for e in pattern.elements() {
            if placed.contains(e) {
                continue;
            }
            for a in placed.iter() {
                for b in placed.iter() {
                    if pattern.join(a, b) == e {
                        forced = Some((e, Placement::Join(a, b)));
                        break 'scan;
                    }
                    if pattern.meet(a, b) == e {
                        forced = Some((e, Placement::Meet(a, b)));
                        break 'scan;
                    }
                }
            }
        }
        let (e, how) = forced.unwrap_or_else(|| {
            let free = pattern.elements().find(|&e| !placed.contains(e)).unwrap();
            (free, Placement::Free)
        });
        plan.push((e, how));
        placed = placed.with(e);
    }
    plan
}

fn embed_search(host: &Lattice, pattern: &Lattice, bounded: bool) -> Option<Vec<usize>> {
    if pattern.n() > host.n() {
        return None;
    }
    let seed: Vec<usize> = if bounded {
        vec![pattern.bottom(), pattern.top()]
    } else {
        vec![]
    };
    let plan = plan_order(pattern, &seed);
    let mut map = vec![usize::MAX; pattern.n()];
    if step(host, pattern, bounded, &plan, 0, &mut map, Subset::EMPTY) {
        debug_assert!(verify_sublattice_embedding(host, pattern, &map));
        Some(map)
    } else {
        None
    }
}

fn step(
    host: &Lattice,
    pattern: &Lattice,
    bounded: bool,
    plan: &[(usize, Placement)],
    depth: usize,
    map: &mut Vec<usize>,
    used: Subset,
) -> bool {
    if depth == plan.len() {
        return true;
    }
    let (e, how) = plan[depth];
    let forced: Option<usize> = match how {
        Placement::Join(a, b) => Some(host.join(map[a], map[b])),
        Placement::Meet(a, b) => Some(host.meet(map[a], map[b])),
        Placement::Free => {
            if bounded && e == pattern.bottom() {
                Some(host.bottom())
            } else if bounded && e == pattern.top() {
                Some(host.top())
            } else {
                None
            }
        }
    };
    let try_candidate = |cand: usize, map: &mut Vec<usize>| -> bool {
        if used.contains(cand) || !consistent(host, pattern, plan, depth, map, e, cand) {
            return false;
        }
        map[e] = cand;
        if step(
            host,
            pattern,
            bounded,
            plan,
            depth + 1,
            map,
            used.with(cand),
        ) {
            return true;
        }
        map[e] = usize::MAX;
        false
    };
    match forced {
        Some(cand) => try_candidate(cand, map),
        None => (0..host.n()).any(|cand| try_candidate(cand, map)),
    }
}

/// Tests whether mapping `e` to `cand` keeps the partial map a partial
/// sublattice embedding: order is preserved and reflected against every
/// placed element, and every join/meet equation whose operands and result
/// are all placed holds in the host.
fn consistent(
    host: &Lattice,
    pattern: &Lattice,
    plan: &[(usize, Placement)],
    depth: usize,
    map: &[usize],
    e: usize,
    cand: usize,
) -> bool {
    for &(f, _) in &plan[..depth] {
        let i = map[f];
        if pattern.leq(e, f) != host.leq(cand, i) || pattern.leq(f, e) != host.leq(i, cand) {
            return false;
        }
    }
    let image = |x: usize| if x == e { cand } else { map[x] };
    let mut placed = Subset::singleton(e);
    for &(f, _) in &plan[..depth] {
        placed = placed.with(f);
    }
    for f in placed.iter() {
        for g in placed.iter() {
            if f > g {
                continue;
            }
            let j = pattern.join(f, g);
            if placed.contains(j) && host.join(image(f), image(g)) != image(j) {
                return false;
            }
            let m = pattern.meet(f, g);
            if placed.contains(m) && host.meet(image(f), image(g)) != image(m) {
                return false;
            }
        }
    }
    true
}

/// Finds an isomorphism from `a` to `b` as a map `a -> b`, or reports the
/// lattices non-isomorphic.
pub fn lattice_isomorphic(a: &Lattice, b: &Lattice) -> Option<Vec<usize>> {
    if a.n() != b.n() {
        return None;
    }
    let n = a.n();
    let ca = refine_classes(a);
    let cb = refine_classes(b);
    let mut sorted_a = ca.clone();
    let mut sorted_b = cb.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }
    let cands: Vec<Subset> = (0..n)
        .map(|x| Subset::from_elems((0..n).filter(|&y| cb[y] == ca[x])))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (cands[x].len(), x));
    let mut map = vec![usize::MAX; n];
    if iso_step(a, b, &order, &cands, 0, &mut map, Subset::EMPTY) {
        Some(map)
    } else {
        None
    }
}

fn iso_step(
    a: &Lattice,
    b: &Lattice,
    order: &[usize],
    cands: &[Subset],
    depth: usize,
    map: &mut Vec<usize>,
    used: Subset,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in cands[x].iter() {
        if used.contains(y) {
            continue;
        }
        let ok = order[..depth]
            .iter()
            .all(|&p| a.leq(x, p) == b.leq(y, map[p]) && a.leq(p, x) == b.leq(map[p], y));
        if !ok {
            continue;
        }
        map[x] = y;
        if iso_step(a, b, order, cands, depth + 1, map, used.with(y)) {
            return true;
        }
        map[x] = usize::MAX;
    }
    false
}

/// Stable colour refinement over order-theoretic invariants; a cheap
/// preprocessing step that cuts the isomorphism search space.
fn refine_classes(l: &Lattice) -> Vec<u64> {
    let n = l.n();
    let mut class: Vec<u64> = (0..n)
        .map(|x| {
            pack(&[
                l.down_set(x).len() as u64,
                l.up_set(x).len() as u64,
                l.lower_covers(x).len() as u64,
                l.upper_covers(x).len() as u64,
            ])
        })
        .collect();
    for _ in 0..n {
        let next: Vec<u64> = (0..n)
            .map(|x| {
                let mut lc: Vec<u64> = l.lower_covers(x).iter().map(|&p| class[p]).collect();
                let mut uc: Vec<u64> = l.upper_covers(x).iter().map(|&p| class[p]).collect();
                lc.sort_unstable();
                uc.sort_unstable();
                let mut parts = vec![class[x]];
                parts.extend(lc);
                parts.push(u64::MAX);
                parts.extend(uc);
                pack(&parts)
            })
            .collect();
        if canonical_partition(&next) == canonical_partition(&class) {
            break;
        }
        class = next;
    }
    class
}

fn pack(parts: &[u64]) -> u64 {
    // FNV-style fold; only equality of class codes matters.
    let mut h: u64 = 0xcbf29ce484222325;
    for &p in parts {
        h ^= p;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn canonical_partition(class: &[u64]) -> Vec<usize> {
    // Element -> index of first element with the same class code.
    class
        .iter()
        .map(|c| class.iter().position(|d| d == c).unwrap())
        .collect()
}

/// Direct check of the distributive law over all triples.
pub fn is_distributive(l: &Lattice) -> bool {
    distributive_law_witness(l).is_none()
}

/// First triple violating x meet (y join z) = (x meet y) join (x meet z).
pub fn distributive_law_witness(l: &Lattice) -> Option<(usize, usize, usize)> {
    for x in l.elements() {
        for y in l.elements() {
            for z in l.elements() {
                if l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Distributivity with an embedding witness on failure: a non-distributive
/// finite lattice contains a diamond or a pentagon, and this returns which
/// one together with the embedding.
pub fn distributivity_witness(l: &Lattice) -> Option<(String, Vec<usize>)> {
    if is_distributive(l) {
        return None;
    }
    for name in ["M3", "N5"] {
        let pattern = crate::genlat::fixture(name).expect("built-in fixture");
        if let Some(map) = find_sublattice_embedding(l, &pattern) {
            return Some((name.to_string(), map));
        }
    }
    unreachable!("a non-distributive lattice embeds a diamond or a pentagon");
}

/// Distributivity as a checked precondition.
pub fn require_distributive(l: &Lattice) -> Result<()> {
    match distributivity_witness(l) {
        None => Ok(()),
        Some((pattern, embedding)) => Err(Error::NotDistributive { pattern, embedding }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genlat::fixture;

    #[test]
    fn diamond_embeds_in_itself() {
        let m3 = fixture("M3").unwrap();
        let map = find_sublattice_embedding(&m3, &m3).unwrap();
        assert!(verify_sublattice_embedding(&m3, &m3, &map));
    }

    #[test]
    fn pentagon_does_not_embed_in_diamond() {
        let m3 = fixture("M3").unwrap();
        let n5 = fixture("N5").unwrap();
        assert!(find_sublattice_embedding(&m3, &n5).is_none());
        assert!(find_sublattice_embedding(&n5, &m3).is_none());
    }

    #[test]
    fn bounded_embedding_constrains_bounds() {
        let b3 = fixture("B3").unwrap();
        let b2 = fixture("B2").unwrap();
        let map = find_bounded_sublattice_embedding(&b3, &b2).unwrap();
        assert!(verify_bounded_sublattice_embedding(&b3, &b2, &map));
        assert_eq!(map[b2.bottom()], b3.bottom());
        assert_eq!(map[b2.top()], b3.top());
    }

    #[test]
    fn chain_embeds_in_boolean_cube() {
        let b3 = fixture("B3").unwrap();
        let c4 = crate::genlat::chain(4).unwrap();
        let map = find_sublattice_embedding(&b3, &c4).unwrap();
        assert!(verify_sublattice_embedding(&b3, &c4, &map));
    }

    #[test]
    fn isomorphism_finds_relabellings() {
        let l = fixture("L3").unwrap();
        // Rebuild with permuted indices and check isomorphism is found.
        let perm = [6usize, 4, 0, 1, 2, 3, 5];
        let mut labels = vec![String::new(); l.n()];
        for x in l.elements() {
            labels[perm[x]] = format!("p{}", l.label(x));
        }
        let covers: Vec<(usize, usize)> = l
            .covers()
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        let p = Lattice::build_from_covers("L3p", labels, &covers).unwrap();
        let map = lattice_isomorphic(&l, &p).unwrap();
        for x in l.elements() {
            for y in l.elements() {
                assert_eq!(l.leq(x, y), p.leq(map[x], map[y]));
            }
        }
        assert!(lattice_isomorphic(&l, &fixture("L2").unwrap()).is_none());
    }

    #[test]
    fn distributivity_verdicts() {
        assert!(is_distributive(&fixture("B3").unwrap()));
        assert!(!is_distributive(&fixture("M3").unwrap()));
        assert!(!is_distributive(&fixture("N5").unwrap()));
        let (pattern, map) = distributivity_witness(&fixture("M3").unwrap()).unwrap();
        assert_eq!(pattern, "M3");
        assert_eq!(map.len(), 5);
        let (pattern, _) = distributivity_witness(&fixture("N5").unwrap()).unwrap();
        assert_eq!(pattern, "N5");
    }
}
