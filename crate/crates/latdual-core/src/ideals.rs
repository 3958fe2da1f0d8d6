//! Explicit ideal and filter lattices, built definitionally by subset
//! scan. For a finite lattice every ideal and filter is principal, so both
//! constructions are isomorphic to the input; they exist as independent
//! cross-checks, not as a fast representation.

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::subset::Subset;

/// Default cap on the input size for the subset-scan constructions; both
/// run a full powerset scan of the ground set.
pub const DEFAULT_IDEAL_CAP: usize = 12;

/// A lattice whose elements stand for subsets of some ground set;
/// `member_sets[i]` is the subset behind element `i`.
#[derive(Clone, Debug)]
pub struct SubsetLattice {
    pub lattice: Lattice,
    pub member_sets: Vec<Subset>,
}

impl SubsetLattice {
    /// Index of the element whose subset equals `s`.
    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.member_sets.iter().position(|&m| m == s)
    }
}

fn subset_label(members: Subset, name_of: impl Fn(usize) -> String) -> String {
    let names: Vec<String> = members.iter().map(name_of).collect();
    format!("{{{}}}", names.join(","))
}

/// The lattice of all ideals of `l`, ordered by inclusion. Scans the full
/// powerset of `l`, so `l` may have at most `cap` elements.
pub fn ideal_lattice(l: &Lattice, cap: usize) -> Result<SubsetLattice> {
    let cap = cap.min(24);
    if l.n() > cap {
        return Err(Error::SizeLimitExceeded {
            what: "ideal lattice ground set".into(),
            size: l.n(),
            cap,
        });
    }
    let mut member_sets = Vec::new();
    for mask in 1_u64..(1 << l.n()) {
        let s = Subset(mask);
        if l.is_ideal(s) {
            member_sets.push(s);
        }
    }
    member_sets.sort_by_key(|s| (s.len(), s.0));
    let labels: Vec<String> = member_sets
        .iter()
        .map(|&s| subset_label(s, |x| l.label(x).to_string()))
        .collect();
    let mut covers = Vec::new();
    for (i, &a) in member_sets.iter().enumerate() {
        for (j, &b) in member_sets.iter().enumerate() {
            if a.is_proper_subset_of(b) {
                covers.push((i, j));
            }
        }
    }
    let lattice = Lattice::build_from_covers(format!("ideals({})", l.name()), labels, &covers)?;
    Ok(SubsetLattice {
        lattice,
        member_sets,
    })
}

/// The lattice of filters of the ideal lattice of `l`, ordered by reverse
/// inclusion. `filter_sets[i]` collects the indices of the ideals in
/// filter `i`.
#[derive(Clone, Debug)]
pub struct FiltIdlLattice {
    pub ideals: SubsetLattice,
    pub lattice: Lattice,
    pub filter_sets: Vec<Subset>,
}

impl FiltIdlLattice {
    /// Index of the filter consisting of every ideal that contains `x`.
    /// This map is an isomorphism from the original lattice.
    pub fn element_filter(&self, x: usize) -> Option<usize> {
        let mut s = Subset::EMPTY;
        for (j, &ideal) in self.ideals.member_sets.iter().enumerate() {
            if ideal.contains(x) {
                s = s.with(j);
            }
        }
        self.filter_sets.iter().position(|&f| f == s)
    }
}

/// Builds the filter lattice of the ideal lattice under reverse inclusion.
pub fn filter_of_ideal_lattice(l: &Lattice, cap: usize) -> Result<FiltIdlLattice> {
    let ideals = ideal_lattice(l, cap)?;
    let m = ideals.lattice.n();
    if m > cap.min(24) {
        return Err(Error::SizeLimitExceeded {
            what: "filter lattice ground set".into(),
            size: m,
            cap: cap.min(24),
        });
    }
    let mut filter_sets = Vec::new();
    for mask in 1_u64..(1 << m) {
        let s = Subset(mask);
        if ideals.lattice.is_filter(s) {
            filter_sets.push(s);
        }
    }
    filter_sets.sort_by_key(|s| (std::cmp::Reverse(s.len()), s.0));
    let labels: Vec<String> = filter_sets
        .iter()
        .map(|&s| subset_label(s, |j| j.to_string()))
        .collect();
    let mut covers = Vec::new();
    for (i, &a) in filter_sets.iter().enumerate() {
        for (j, &b) in filter_sets.iter().enumerate() {
            if b.is_proper_subset_of(a) {
                covers.push((i, j));
            }
        }
    }
    let lattice =
        Lattice::build_from_covers(format!("filters-of-ideals({})", l.name()), labels, &covers)?;
    Ok(FiltIdlLattice {
        ideals,
        lattice,
        filter_sets,
    })
}
