//! Lattice generators: named fixtures, parametric chain families, seeded
//! random instances, and exhaustive enumeration at tiny sizes.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use std::collections::BTreeSet;

use crate::embed::lattice_isomorphic;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, MAX_N};
use crate::subset::Subset;

/// A reproducible description of a generated lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Fixture { name: String },
    Chain { n: usize },
    Boolean { k: usize },
    Grid { rows: usize, cols: usize },
    OFamily { k: usize },
    OHatFamily { k: usize },
    RocketFamily { k: usize },
    Random { seed: u64, m: usize, k: usize },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Lattice> {
        match self {
            GeneratorSpec::Fixture { name } => fixture(name),
            GeneratorSpec::Chain { n } => chain(*n),
            GeneratorSpec::Boolean { k } => boolean(*k),
            GeneratorSpec::Grid { rows, cols } => grid(*rows, *cols),
            GeneratorSpec::OFamily { k } => o_family(*k),
            GeneratorSpec::OHatFamily { k } => o_hat_family(*k),
            GeneratorSpec::RocketFamily { k } => rocket_family(*k),
            GeneratorSpec::Random { seed, m, k } => random_lattice(*seed, *m, *k),
        }
    }
}

fn labels_of(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Small named lattices used throughout the test corpus.
///
/// M3 is the diamond; L1 to L5 are the remaining five members of the
/// standard six-element family of semidistributivity-forbidden patterns;
/// N5 is the pentagon; B2 and B3 are Boolean cubes.
pub fn fixture(name: &str) -> Result<Lattice> {
    match name {
        "M3" => Lattice::build_from_covers(
            "M3",
            labels_of(&["0", "a", "b", "c", "1"]),
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        ),
        "L1" => Lattice::build_from_covers(
            "L1",
            labels_of(&["0", "c", "d", "e", "a", "b", "1"]),
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 4),
                (2, 4),
                (2, 5),
                (3, 5),
                (4, 6),
                (5, 6),
            ],
        ),
        "L2" => Lattice::build_from_covers(
            "L2",
            labels_of(&["0", "d", "e", "a", "b", "c", "1"]),
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (1, 4),
                (2, 4),
                (2, 5),
                (3, 6),
                (4, 6),
                (5, 6),
            ],
        ),
        "L3" => Lattice::build_from_covers(
            "L3",
            labels_of(&["0", "e", "d", "b", "c", "a", "1"]),
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (1, 4),
                (4, 5),
                (2, 5),
                (3, 6),
                (5, 6),
            ],
        ),
        "L4" => Lattice::build_from_covers(
            "L4",
            labels_of(&["0", "a", "b", "c", "d", "1"]),
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (4, 5), (3, 5)],
        ),
        "L5" => Lattice::build_from_covers(
            "L5",
            labels_of(&["0", "d", "c", "a", "b", "1"]),
            &[(0, 1), (0, 2), (1, 3), (1, 4), (3, 5), (4, 5), (2, 5)],
        ),
        "N5" => Lattice::build_from_covers(
            "N5",
            labels_of(&["0", "a", "c", "b", "1"]),
            &[(0, 1), (1, 2), (0, 3), (2, 4), (3, 4)],
        ),
        "B2" => boolean(2),
        "B3" => boolean(3),
        _ => Err(Error::UnknownFixture {
            name: name.to_string(),
        }),
    }
}

/// Names accepted by `fixture`, in the order used by the test corpus.
pub const FIXTURE_NAMES: [&str; 9] = ["M3", "L1", "L2", "L3", "L4", "L5", "N5", "B2", "B3"];

/// The n-element chain.
pub fn chain(n: usize) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: "0".into(),
            reason: "a chain needs at least one element".into(),
        });
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Lattice::build_from_covers(format!("chain{n}"), labels, &covers)
}

/// The Boolean cube with k atoms; elements are indexed by their atom masks.
pub fn boolean(k: usize) -> Result<Lattice> {
    if k > 6 {
        return Err(Error::SizeLimitExceeded {
            what: "boolean cube carrier".into(),
            size: 1usize << k,
            cap: MAX_N,
        });
    }
    let n = 1usize << k;
    let label = |mask: usize| -> String {
        if mask == 0 {
            "0".to_string()
        } else if mask == n - 1 && k > 0 {
            "1".to_string()
        } else {
            (0..k)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| (b'a' + b as u8) as char)
                .collect()
        }
    };
    let labels = (0..n).map(label).collect();
    let mut covers = Vec::new();
    for mask in 0..n {
        for b in 0..k {
            if mask >> b & 1 == 0 {
                covers.push((mask, mask | 1 << b));
            }
        }
    }
    Lattice::build_from_covers(format!("B{k}"), labels, &covers)
}

/// Product of two chains, elements labelled by coordinates.
pub fn grid(rows: usize, cols: usize) -> Result<Lattice> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter {
            name: "rows/cols",
            value: format!("{rows}x{cols}"),
            reason: "grid dimensions must be positive".into(),
        });
    }
    let idx = |i: usize, j: usize| i * cols + j;
    let labels = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| format!("({i},{j})")))
        .collect();
    let mut covers = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if i + 1 < rows {
                covers.push((idx(i, j), idx(i + 1, j)));
            }
            if j + 1 < cols {
                covers.push((idx(i, j), idx(i, j + 1)));
            }
        }
    }
    Lattice::build_from_covers(format!("grid{rows}x{cols}"), labels, &covers)
}

fn require_k_positive(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidParameter {
            name: "k",
            value: "0".into(),
            reason: "family truncations need chains of at least one element".into(),
        })
    } else {
        Ok(())
    }
}

/// Two disjoint k-element chains between bottom and top, each capped by a
/// chain-top element (labelled `aw`, `bw`) standing in for the limit of the
/// infinite version. 2k+4 elements.
pub fn o_family(k: usize) -> Result<Lattice> {
    require_k_positive(k)?;
    let mut labels = vec!["0".to_string()];
    labels.extend((0..k).map(|i| format!("a{i}")));
    labels.push("aw".into());
    labels.extend((0..k).map(|i| format!("b{i}")));
    labels.push("bw".into());
    labels.push("1".into());
    let a0 = 1;
    let aw = k + 1;
    let b0 = k + 2;
    let bw = 2 * k + 2;
    let top = 2 * k + 3;
    let mut covers = vec![(0, a0), (0, b0), (aw, top), (bw, top)];
    for i in 0..k {
        covers.push((a0 + i, a0 + i + 1));
        covers.push((b0 + i, b0 + i + 1));
    }
    Lattice::build_from_covers(format!("O{k}"), labels, &covers)
}

/// The o-family with three extra coatom-side elements a, b, c arranged so
/// that c is the join of the two chain tops while a, b, c are pairwise
/// incomparable. 2k+7 elements.
pub fn o_hat_family(k: usize) -> Result<Lattice> {
    require_k_positive(k)?;
    let mut labels = vec!["0".to_string()];
    labels.extend((0..k).map(|i| format!("a{i}")));
    labels.push("aw".into());
    labels.extend((0..k).map(|i| format!("b{i}")));
    labels.push("bw".into());
    labels.push("a".into());
    labels.push("b".into());
    labels.push("c".into());
    labels.push("1".into());
    let a0 = 1;
    let aw = k + 1;
    let b0 = k + 2;
    let bw = 2 * k + 2;
    let a = 2 * k + 3;
    let b = 2 * k + 4;
    let c = 2 * k + 5;
    let top = 2 * k + 6;
    let mut covers = vec![
        (0, a0),
        (0, b0),
        (aw, a),
        (aw, c),
        (bw, c),
        (bw, b),
        (a, top),
        (b, top),
        (c, top),
    ];
    for i in 0..k {
        covers.push((a0 + i, a0 + i + 1));
        covers.push((b0 + i, b0 + i + 1));
    }
    Lattice::build_from_covers(format!("Ohat{k}"), labels, &covers)
}

/// The rocket: a main chain b0 < .. < b(2k-1) < bw < 1 with two side
/// chains a1 < a3 < .. < a(2k-1) < 1 and c0 < c2 < .. < c(2k-2) < 1,
/// attached by b(2i+1) < a(2i+1) and b(2i) < c(2i). Cover structure
/// follows the drawn figure of the infinite version: both side chains
/// rejoin the order only at the top. 4k+2 elements.
pub fn rocket_family(k: usize) -> Result<Lattice> {
    require_k_positive(k)?;
    let mut labels: Vec<String> = (0..2 * k).map(|i| format!("b{i}")).collect();
    labels.push("bw".into());
    labels.extend((0..k).map(|i| format!("a{}", 2 * i + 1)));
    labels.extend((0..k).map(|i| format!("c{}", 2 * i)));
    labels.push("1".into());
    let bw = 2 * k;
    let a_idx = |i: usize| 2 * k + 1 + i; // a(2i+1)
    let c_idx = |i: usize| 3 * k + 1 + i; // c(2i)
    let top = 4 * k + 1;
    let mut covers = Vec::new();
    for i in 0..2 * k - 1 {
        covers.push((i, i + 1));
    }
    covers.push((2 * k - 1, bw));
    covers.push((bw, top));
    for i in 0..k {
        covers.push((2 * i + 1, a_idx(i)));
        covers.push((2 * i, c_idx(i)));
        if i + 1 < k {
            covers.push((a_idx(i), a_idx(i + 1)));
            covers.push((c_idx(i), c_idx(i + 1)));
        }
    }
    covers.push((a_idx(k - 1), top));
    covers.push((c_idx(k - 1), top));
    Lattice::build_from_covers(format!("R{k}"), labels, &covers)
}

/// Random lattice: k subsets of an m-dimensional cube's carrier are
/// sampled as characteristic vectors, the empty and full vectors are
/// added, and the family is closed under pointwise minimum. Ordered by
/// inclusion this is always a lattice: meets are intersections and joins
/// are meets of common upper bounds. Deterministic in the seed.
pub fn random_lattice(seed: u64, m: usize, k: usize) -> Result<Lattice> {
    if m == 0 || m > 16 {
        return Err(Error::InvalidParameter {
            name: "m",
            value: m.to_string(),
            reason: "ambient cube dimension must be in 1..=16".into(),
        });
    }
    let mask_all: u64 = (1u64 << m) - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family: BTreeSet<u64> = BTreeSet::new();
    family.insert(0);
    family.insert(mask_all);
    for _ in 0..k {
        family.insert(rng.next_u64() & mask_all);
    }
    loop {
        let snapshot: Vec<u64> = family.iter().copied().collect();
        let before = family.len();
        for (i, &x) in snapshot.iter().enumerate() {
            for &y in &snapshot[i + 1..] {
                family.insert(x & y);
            }
        }
        if family.len() == before {
            break;
        }
    }
    let elems: Vec<u64> = family.into_iter().collect();
    let labels = elems
        .iter()
        .map(|&v| format!("{v:0width$b}", width = m))
        .collect();
    let mut covers = Vec::new();
    for (i, &x) in elems.iter().enumerate() {
        for (j, &y) in elems.iter().enumerate() {
            if i != j && x & y == x {
                covers.push((i, j));
            }
        }
    }
    Lattice::build_from_covers(format!("random-s{seed}-m{m}-k{k}"), labels, &covers)
}

/// All bounded lattices with n elements up to isomorphism.
///
/// Elements are generated along a linear extension: each new element picks
/// a downward-closed strict down-set in the part built so far, meets are
/// checked as soon as they are determined, joins once the top is placed.
/// Results are deduplicated with `lattice_isomorphic`. Optional tooling:
/// hard-capped at n = 8.
pub fn enumerate_all_lattices(n: usize) -> Result<Vec<Lattice>> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: "0".into(),
            reason: "lattices are non-empty".into(),
        });
    }
    if n > 8 {
        return Err(Error::SizeLimitExceeded {
            what: "exhaustive lattice enumeration".into(),
            size: n,
            cap: 8,
        });
    }
    let mut found: Vec<Lattice> = Vec::new();
    let mut downs: Vec<Subset> = Vec::with_capacity(n);
    extend_enumeration(n, &mut downs, &mut found);
    Ok(found)
}

fn extend_enumeration(n: usize, downs: &mut Vec<Subset>, found: &mut Vec<Lattice>) {
    let i = downs.len();
    if i == n {
        if let Some(l) = finish_candidate(n, downs) {
            if !found.iter().any(|k| lattice_isomorphic(k, &l).is_some()) {
                found.push(l);
            }
        }
        return;
    }
    if i == 0 {
        downs.push(Subset::singleton(0));
        extend_enumeration(n, downs, found);
        downs.pop();
        return;
    }
    'candidates: for bits in 0..(1u64 << i) {
        let d = Subset(bits);
        if !d.contains(0) {
            continue;
        }
        // Downward closed within the order built so far.
        let closure = d.iter().fold(Subset::EMPTY, |acc, e| acc | downs[e]);
        if closure != d {
            continue;
        }
        // The last element must be the top.
        if i == n - 1 && d != Subset::full(i) {
            continue;
        }
        // Meets with every earlier element must already be determined:
        // the common lower bounds need a unique maximal element.
        let with_self = d.with(i);
        for j in 0..i {
            let common = downs[j] & with_self;
            let maximal = common
                .iter()
                .filter(|&x| common.iter().all(|y| y == x || !downs[y].contains(x)))
                .count();
            if maximal != 1 {
                continue 'candidates;
            }
        }
        downs.push(with_self);
        extend_enumeration(n, downs, found);
        downs.pop();
    }
}

fn finish_candidate(n: usize, downs: &[Subset]) -> Option<Lattice> {
    // Joins: every pair of elements needs a unique minimal upper bound.
    let ups: Vec<Subset> = (0..n)
        .map(|x| Subset::from_elems((0..n).filter(|&y| downs[y].contains(x))))
        .collect();
    for x in 0..n {
        for y in 0..x {
            let common = ups[x] & ups[y];
            let minimal = common
                .iter()
                .filter(|&u| common.iter().all(|v| v == u || !downs[u].contains(v)))
                .count();
            if minimal != 1 {
                return None;
            }
        }
    }
    let labels = (0..n).map(|i| format!("x{i}")).collect();
    let mut covers = Vec::new();
    for (y, d) in downs.iter().enumerate() {
        for x in d.without(y).iter() {
            covers.push((x, y));
        }
    }
    Lattice::build_from_covers(format!("enum{n}"), labels, &covers).ok()
}
