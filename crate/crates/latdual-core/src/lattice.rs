//! Finite bounded lattices represented by explicit cover lists.
//!
//! A lattice is built once from its cover relation; construction validates
//! that the covers generate a bounded partial order in which every pair of
//! elements has a unique least upper bound and greatest lower bound, and
//! precomputes the join and meet tables. All later queries are lookups.

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Largest supported carrier; element sets are stored as `u64` masks.
pub const MAX_N: usize = 64;

/// A finite bounded lattice on elements `0..n`.
#[derive(Clone, Debug)]
pub struct Lattice {
    name: String,
    labels: Vec<String>,
    n: usize,
    covers: Vec<(usize, usize)>,
    up: Vec<Subset>,
    down: Vec<Subset>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    join_tab: Vec<usize>,
    meet_tab: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Builds a lattice from its cover pairs `(lower, upper)`.
    ///
    /// The element count is `labels.len()`. Pairs that turn out to be
    /// transitively implied are dropped; the stored cover list is the
    /// canonical one recomputed from the generated order. Fails with
    /// `NotAPoset` on a cycle, `NoBounds` when the order lacks a unique
    /// minimum or maximum, and `NotALattice` when some pair has no unique
    /// least upper or greatest lower bound.
    pub fn build_from_covers(
        name: impl Into<String>,
        labels: Vec<String>,
        covers: &[(usize, usize)],
    ) -> Result<Lattice> {
        let name = name.into();
        let n = labels.len();
        if n == 0 {
            return Err(Error::NoBounds {
                which: "bottom",
                candidates: vec![],
            });
        }
        if n > MAX_N {
            return Err(Error::SizeLimitExceeded {
                what: format!("lattice carrier for {name:?}"),
                size: n,
                cap: MAX_N,
            });
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::Parse {
                    detail: format!("cover ({a},{b}) references an element outside 0..{n}"),
                });
            }
            if a == b {
                return Err(Error::NotAPoset { cycle: vec![a] });
            }
        }

        let mut succ = vec![Subset::EMPTY; n];
        let mut pred = vec![Subset::EMPTY; n];
        for &(a, b) in covers {
            succ[a] = succ[a].with(b);
            pred[b] = pred[b].with(a);
        }

        let topo = topo_sort(n, &succ, &pred)?;

        let mut up = vec![Subset::EMPTY; n];
        for &x in topo.iter().rev() {
            let mut m = Subset::singleton(x);
            for y in succ[x].iter() {
                m = m | up[y];
            }
            up[x] = m;
        }
        let mut down = vec![Subset::EMPTY; n];
        for &x in &topo {
            let mut m = Subset::singleton(x);
            for y in pred[x].iter() {
                m = m | down[y];
            }
            down[x] = m;
        }

        let minimals: Vec<usize> = (0..n).filter(|&x| down[x].len() == 1).collect();
        if minimals.len() != 1 {
            return Err(Error::NoBounds {
                which: "bottom",
                candidates: minimals,
            });
        }
        let maximals: Vec<usize> = (0..n).filter(|&x| up[x].len() == 1).collect();
        if maximals.len() != 1 {
            return Err(Error::NoBounds {
                which: "top",
                candidates: maximals,
            });
        }
        let bottom = minimals[0];
        let top = maximals[0];

        let mut join_tab = vec![0usize; n * n];
        let mut meet_tab = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..=x {
                let ub = up[x] & up[y];
                let j = unique_extremum(ub, &down).ok_or_else(|| Error::NotALattice {
                    a: y,
                    b: x,
                    op: "join",
                    candidates: extrema(ub, &down),
                })?;
                let lb = down[x] & down[y];
                let m = unique_extremum(lb, &up).ok_or_else(|| Error::NotALattice {
                    a: y,
                    b: x,
                    op: "meet",
                    candidates: extrema(lb, &up),
                })?;
                join_tab[x * n + y] = j;
                join_tab[y * n + x] = j;
                meet_tab[x * n + y] = m;
                meet_tab[y * n + x] = m;
            }
        }

        // Canonical covers: x < y with no element strictly between.
        let mut canonical = Vec::new();
        for (x, &upx) in up.iter().enumerate() {
            for y in upx.iter() {
                if y != x && (upx & down[y]).len() == 2 {
                    canonical.push((x, y));
                }
            }
        }
        canonical.sort_unstable();

        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for &(a, b) in &canonical {
            lower_covers[b].push(a);
            upper_covers[a].push(b);
        }

        Ok(Lattice {
            name,
            labels,
            n,
            covers: canonical,
            up,
            down,
            lower_covers,
            upper_covers,
            join_tab,
            meet_tab,
            bottom,
            top,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Canonical cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join_tab[x * self.n + y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet_tab[x * self.n + y]
    }

    /// Join over a set; the empty join is the bottom element.
    pub fn join_set(&self, s: Subset) -> usize {
        s.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet over a set; the empty meet is the top element.
    pub fn meet_set(&self, s: Subset) -> usize {
        s.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// The principal filter `{y : x <= y}` as a mask.
    pub fn up_set(&self, x: usize) -> Subset {
        self.up[x]
    }

    /// The principal ideal `{y : y <= x}` as a mask.
    pub fn down_set(&self, x: usize) -> Subset {
        self.down[x]
    }

    /// Upward closure of a set.
    pub fn up_closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, x| acc | self.up[x])
    }

    /// Downward closure of a set.
    pub fn down_closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, x| acc | self.down[x])
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.upper_covers[self.bottom].clone()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        self.lower_covers[self.top].clone()
    }

    /// True when `s` is a filter: non-empty, upward closed, meet closed.
    pub fn is_filter(&self, s: Subset) -> bool {
        !s.is_empty()
            && self.up_closure(s) == s
            && s.iter()
                .all(|x| s.iter().all(|y| s.contains(self.meet(x, y))))
    }

    /// True when `s` is an ideal: non-empty, downward closed, join closed.
    pub fn is_ideal(&self, s: Subset) -> bool {
        !s.is_empty()
            && self.down_closure(s) == s
            && s.iter()
                .all(|x| s.iter().all(|y| s.contains(self.join(x, y))))
    }

    /// Least element of a filter, i.e. the generator making it principal.
    /// Returns `None` when `f` has no minimum (so is not a filter).
    pub fn filter_min(&self, f: Subset) -> Option<usize> {
        f.iter().find(|&x| f.is_subset_of(self.up[x]))
    }

    /// Greatest element of an ideal.
    pub fn ideal_max(&self, i: Subset) -> Option<usize> {
        i.iter().find(|&x| i.is_subset_of(self.down[x]))
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        self.elements()
            .filter(|&x| self.lower_covers[x].len() == 1)
            .collect()
    }

    /// Elements with exactly one upper cover.
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        self.elements()
            .filter(|&x| self.upper_covers[x].len() == 1)
            .collect()
    }

    /// The same carrier with the order reversed; joins and meets swap.
    pub fn dual_lattice(&self) -> Lattice {
        let flipped: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        Lattice::build_from_covers(format!("{}^op", self.name), self.labels.clone(), &flipped)
            .expect("reversing a lattice order yields a lattice")
    }

    /// Smallest subset containing `s` that is closed under join and meet.
    pub fn sublattice_closure(&self, s: Subset) -> Subset {
        let mut cur = s;
        loop {
            let mut next = cur;
            for x in cur.iter() {
                for y in cur.iter() {
                    next = next.with(self.join(x, y)).with(self.meet(x, y));
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Length of a longest chain from the bottom to each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.n];
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by_key(|&x| self.down[x].len());
        for &x in &order {
            for &p in &self.lower_covers[x] {
                h[x] = h[x].max(h[p] + 1);
            }
        }
        h
    }
}

fn topo_sort(n: usize, succ: &[Subset], pred: &[Subset]) -> Result<Vec<usize>> {
    let mut indeg: Vec<usize> = (0..n).map(|x| pred[x].len()).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = queue.pop() {
        order.push(x);
        for y in succ[x].iter() {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                queue.push(y);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Some cycle remains among elements with positive in-degree; walk it.
    let stuck: Vec<usize> = (0..n).filter(|&x| indeg[x] > 0).collect();
    let start = stuck[0];
    let mut path = vec![start];
    let mut seen = Subset::singleton(start);
    let mut cur = start;
    loop {
        let next = succ[cur]
            .iter()
            .find(|&y| indeg[y] > 0)
            .expect("a stuck element has a stuck successor");
        if seen.contains(next) {
            let pos = path.iter().position(|&p| p == next).unwrap();
            return Err(Error::NotAPoset {
                cycle: path[pos..].to_vec(),
            });
        }
        seen = seen.with(next);
        path.push(next);
        cur = next;
    }
}

/// The unique extremal element of `s`, if there is exactly one.
/// Pass down-sets as `towards` to get the minimum, up-sets for the maximum;
/// in a finite poset a unique minimal (maximal) element is the minimum
/// (maximum) of the set.
fn unique_extremum(s: Subset, towards: &[Subset]) -> Option<usize> {
    let ex = extrema(s, towards);
    match ex.as_slice() {
        [only] => Some(*only),
        _ => None,
    }
}

/// Extremal elements of `s`: those with no other member of `s` in their
/// `towards` set. Down-sets yield minimal elements, up-sets maximal ones.
fn extrema(s: Subset, towards: &[Subset]) -> Vec<usize> {
    s.iter().filter(|&x| (towards[x] & s).len() == 1).collect()
}
