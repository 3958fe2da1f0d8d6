//! Brute-force reference implementations for differential testing. Every
//! function here recomputes its answer from first definitions, usually by
//! powerset scan, and deliberately shares no code with the optimized
//! paths it is used to check.

use std::collections::HashSet;

use crate::lattice::Lattice;
use crate::reconstruct::StablePair;
use crate::subset::Subset;
use crate::tirs::Digraph;

const SCAN_CAP: usize = 20;

fn assert_scannable(n: usize) {
    assert!(
        n <= SCAN_CAP,
        "powerset scan limited to {SCAN_CAP} elements, got {n}"
    );
}

/// Every filter of `l`, found by scanning all non-empty subsets.
pub fn all_filters(l: &Lattice) -> Vec<Subset> {
    assert_scannable(l.n());
    (1..(1_u64 << l.n()))
        .map(Subset)
        .filter(|&s| l.is_filter(s))
        .collect()
}

/// Every ideal of `l`, found by scanning all non-empty subsets.
pub fn all_ideals(l: &Lattice) -> Vec<Subset> {
    assert_scannable(l.n());
    (1..(1_u64 << l.n()))
        .map(Subset)
        .filter(|&s| l.is_ideal(s))
        .collect()
}

/// All maximal disjoint filter-ideal pairs, by scanning every disjoint
/// combination and discarding those dominated by a larger one. Sorted by
/// the pair of raw set masks.
pub fn maximal_disjoint_pairs_bruteforce(l: &Lattice) -> Vec<(Subset, Subset)> {
    let filters = all_filters(l);
    let ideals = all_ideals(l);
    let mut disjoint = Vec::new();
    for &f in &filters {
        for &i in &ideals {
            if !f.intersects(i) {
                disjoint.push((f, i));
            }
        }
    }
    let mut maximal: Vec<(Subset, Subset)> = disjoint
        .iter()
        .filter(|&&(f, i)| {
            !disjoint
                .iter()
                .any(|&(f2, i2)| (f2, i2) != (f, i) && f.is_subset_of(f2) && i.is_subset_of(i2))
        })
        .copied()
        .collect();
    maximal.sort();
    maximal
}

/// All stable pairs of `g` by scanning the full powerset of candidate
/// one-sets, with the polars evaluated by their defining quantifiers.
pub fn stable_pairs_powerset(g: &Digraph) -> Vec<StablePair> {
    assert!(
        g.n() <= 15,
        "powerset stable-pair scan limited to 15 vertices"
    );
    let polar_r = |ys: Subset| {
        let mut out = Subset::EMPTY;
        for x in g.vertices() {
            if ys.iter().all(|y| !g.has_edge(y, x)) {
                out = out.with(x);
            }
        }
        out
    };
    let polar_l = |ys: Subset| {
        let mut out = Subset::EMPTY;
        for x in g.vertices() {
            if ys.iter().all(|y| !g.has_edge(x, y)) {
                out = out.with(x);
            }
        }
        out
    };
    let mut pairs = Vec::new();
    for mask in 0..(1_u64 << g.n()) {
        let one_set = Subset(mask);
        let zero_set = polar_r(one_set);
        if polar_l(zero_set) == one_set && !one_set.intersects(zero_set) {
            pairs.push(StablePair { one_set, zero_set });
        }
    }
    pairs
}

/// Checks the join and meet tables of `l` against least upper bounds and
/// greatest lower bounds recomputed from the order alone. Returns the
/// first offending pair and operation.
pub fn bound_table_mismatch(l: &Lattice) -> Option<(usize, usize, &'static str)> {
    for a in l.elements() {
        for b in l.elements() {
            let j = l.join(a, b);
            let ub: Vec<usize> = l
                .elements()
                .filter(|&x| l.leq(a, x) && l.leq(b, x))
                .collect();
            if !ub.contains(&j) || ub.iter().any(|&x| !l.leq(j, x)) {
                return Some((a, b, "join"));
            }
            let m = l.meet(a, b);
            let lb: Vec<usize> = l
                .elements()
                .filter(|&x| l.leq(x, a) && l.leq(x, b))
                .collect();
            if !lb.contains(&m) || lb.iter().any(|&x| !l.leq(x, m)) {
                return Some((a, b, "meet"));
            }
        }
    }
    None
}

/// Join irreducibles straight from the definition: non-bottom elements
/// that are not the join of two strictly smaller elements.
pub fn join_irreducibles_bruteforce(l: &Lattice) -> Vec<usize> {
    l.elements()
        .filter(|&x| {
            x != l.bottom()
                && l.elements()
                    .all(|a| l.elements().all(|b| l.join(a, b) != x || a == x || b == x))
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_lattice_order(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    for a in 0..n {
        for b in 0..n {
            let ub: Vec<usize> = (0..n).filter(|&x| leq[a][x] && leq[b][x]).collect();
            if !ub.iter().any(|&u| ub.iter().all(|&x| leq[u][x])) {
                return false;
            }
            let lb: Vec<usize> = (0..n).filter(|&x| leq[x][a] && leq[x][b]).collect();
            if !lb.iter().any(|&u| lb.iter().all(|&x| leq[x][u])) {
                return false;
            }
        }
    }
    true
}

/// Counts non-isomorphic lattices with `n` elements by filtering every
/// transitive upper-triangular relation on `n` labeled points down to the
/// lattice orders and deduplicating by the minimal permuted bit matrix.
/// Every finite poset admits a linear extension, so the upper-triangular
/// restriction loses nothing.
pub fn count_lattices_poset_filter(n: usize) -> usize {
    assert!(
        (1..=6).contains(&n),
        "poset-filter count limited to n in 1..=6"
    );
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let perms = permutations(n);
    let mut canon: HashSet<u64> = HashSet::new();
    for mask in 0..(1_u64 << pairs.len()) {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let transitive =
            (0..n).all(|i| (0..n).all(|j| !leq[i][j] || (0..n).all(|k| !leq[j][k] || leq[i][k])));
        if !transitive || !is_lattice_order(&leq) {
            continue;
        }
        let packed = perms
            .iter()
            .map(|p| {
                let mut bits = 0_u64;
                for i in 0..n {
                    for j in 0..n {
                        if leq[p[i]][p[j]] {
                            bits |= 1 << (i * n + j);
                        }
                    }
                }
                bits
            })
            .min()
            .expect("at least one permutation");
        canon.insert(packed);
    }
    canon.len()
}
