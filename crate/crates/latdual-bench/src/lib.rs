//! Shared corpus for the benchmarks.

use latdual_core::genlat::{o_hat_family, random_lattice, rocket_family};
use latdual_core::{fixture, Lattice};

/// Lattices the benchmarks run over, smallest first.
pub fn bench_corpus() -> Vec<Lattice> {
    let mut v = vec![
        fixture("M3").unwrap(),
        fixture("L4").unwrap(),
        fixture("B3").unwrap(),
    ];
    v.push(o_hat_family(3).unwrap());
    v.push(rocket_family(3).unwrap());
    v.push(random_lattice(11, 6, 12).unwrap());
    v
}
