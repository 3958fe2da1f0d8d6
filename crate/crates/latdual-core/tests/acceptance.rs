//! Acceptance suite. Each test is one numbered criterion and prints a
//! single PASS line with its elapsed time (visible with --nocapture).
//! The corpus is the nine drawn fixtures, the three generated families at
//! k = 1..4, and 200 seeded random lattices.

use std::time::Instant;

use latdual_core::duality::{birkhoff_poset, dual_digraph};
use latdual_core::embed::{lattice_isomorphic, verify_sublattice_embedding};
use latdual_core::genlat::{
    boolean, chain, fixture, o_family, o_hat_family, random_lattice, rocket_family, FIXTURE_NAMES,
};
use latdual_core::ideals::DEFAULT_IDEAL_CAP;
use latdual_core::io::dual_digraph_to_json;
use latdual_core::reconstruct::{
    check_doubly_disconnected, check_first_roundtrip, check_second_roundtrip, check_separation,
};
use latdual_core::semidist::{
    check_shared_ideal_laws, check_shared_ideal_laws_explicit, classify_jsd_failure,
    jsd_bruteforce, jsd_dual, jsd_forbidden, msd_bruteforce, msd_dual, msd_forbidden,
    sd_bruteforce, sd_dual, sd_forbidden, verify_sd_witness, SdProperty,
};
use latdual_core::tirs::check_tirs;
use latdual_core::{Error, Lattice, Mdfip};

fn corpus() -> Vec<Lattice> {
    let mut v: Vec<Lattice> = FIXTURE_NAMES
        .iter()
        .map(|n| fixture(n).expect("fixture names are valid"))
        .collect();
    for k in 1..=4 {
        v.push(o_family(k).expect("k in range"));
        v.push(o_hat_family(k).expect("k in range"));
        v.push(rocket_family(k).expect("k in range"));
    }
    for seed in 0..200 {
        v.push(random_lattice(seed, 6, 12).expect("parameters in range"));
    }
    v
}

fn line_diff(expected: &str, got: &str) -> String {
    let mut out = String::new();
    let e: Vec<&str> = expected.lines().collect();
    let g: Vec<&str> = got.lines().collect();
    for i in 0..e.len().max(g.len()) {
        let a = e.get(i).copied().unwrap_or("<missing>");
        let b = g.get(i).copied().unwrap_or("<missing>");
        if a != b {
            out.push_str(&format!("  line {}: expected {a:?}, got {b:?}\n", i + 1));
        }
    }
    out
}

/// All ordered pairs of distinct dual vertices sharing an ideal.
fn shared_ideal_pairs(l: &Lattice) -> Vec<(Mdfip, Mdfip)> {
    let d = dual_digraph(l);
    let mut pairs = Vec::new();
    for i in 0..d.pairs.len() {
        for j in 0..d.pairs.len() {
            if i != j && d.pairs[i].ideal == d.pairs[j].ideal {
                pairs.push((d.pairs[i], d.pairs[j]));
            }
        }
    }
    pairs
}

/// Independent rebuild of the case id and candidate map the classifier is
/// expected to produce for a shared-ideal pair, straight from the three
/// equalities (A) f&g = i&g, (B) f&g = i&f, (C) f|g = i|f.
fn expected_case(l: &Lattice, f: usize, g: usize, i: usize) -> (u8, &'static str, Vec<usize>) {
    let a = l.meet(f, g) == l.meet(i, g);
    let b = l.meet(f, g) == l.meet(i, f);
    let c = l.join(f, g) == l.join(i, f);
    match (a, b, c) {
        (true, true, true) => (1, "M3", vec![l.meet(f, g), f, i, g, l.join(f, g)]),
        (true, true, false) => (
            2,
            "L4",
            vec![l.meet(f, i), f, g, i, l.join(f, g), l.join(f, i)],
        ),
        (true, false, true) => (
            3,
            "L5",
            vec![l.meet(f, g), l.meet(f, i), g, f, i, l.join(f, g)],
        ),
        (false, true, true) => (
            4,
            "L5",
            vec![l.meet(f, g), l.meet(g, i), f, g, i, l.join(f, g)],
        ),
        (true, false, false) => (
            5,
            "L3",
            vec![
                l.meet(i, g),
                l.meet(i, f),
                g,
                i,
                f,
                l.join(g, f),
                l.join(g, i),
            ],
        ),
        (false, true, false) => (
            6,
            "L3",
            vec![
                l.meet(i, f),
                l.meet(i, g),
                f,
                i,
                g,
                l.join(f, g),
                l.join(f, i),
            ],
        ),
        (false, false, true) => (
            7,
            "L2",
            vec![
                l.meet(f, g),
                l.meet(f, i),
                l.meet(g, i),
                f,
                i,
                g,
                l.join(f, g),
            ],
        ),
        (false, false, false) => (
            8,
            "L2",
            vec![
                l.meet(f, g),
                f,
                g,
                l.join(f, l.meet(i, g)),
                l.join(f, g),
                l.join(g, l.meet(i, f)),
                l.join(i, f),
            ],
        ),
    }
}

#[test]
fn c01_golden_duals_of_the_drawn_fixtures() {
    let t = Instant::now();
    let cases = [
        ("M3", 6, include_str!("golden/dual_m3.json")),
        ("L1", 4, include_str!("golden/dual_l1.json")),
        ("L2", 4, include_str!("golden/dual_l2.json")),
        ("L3", 5, include_str!("golden/dual_l3.json")),
        ("L4", 5, include_str!("golden/dual_l4.json")),
        ("L5", 5, include_str!("golden/dual_l5.json")),
    ];
    for (name, want_vertices, golden) in cases {
        let l = fixture(name).unwrap();
        let d = dual_digraph(&l);
        assert_eq!(d.pairs.len(), want_vertices, "{name} vertex count");
        let got = dual_digraph_to_json(&format!("dual({name})"), &d, false);
        assert_eq!(
            got,
            golden,
            "{name} dual differs from its golden file:\n{}",
            line_diff(golden, &got)
        );

        let parsed: serde_json::Value = serde_json::from_str(golden).unwrap();
        let vertices = parsed["vertices"].as_array().unwrap();
        let golden_edges: Vec<(usize, usize)> = parsed["edges"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| {
                (
                    e[0].as_u64().unwrap() as usize,
                    e[1].as_u64().unwrap() as usize,
                )
            })
            .collect();
        let mut rederived = Vec::new();
        for (u, vu) in vertices.iter().enumerate() {
            let f_min = vu["f_min"].as_u64().unwrap() as usize;
            for (v, vv) in vertices.iter().enumerate() {
                let i_max = vv["i_max"].as_u64().unwrap() as usize;
                if u != v && !l.leq(f_min, i_max) {
                    rederived.push((u, v));
                }
            }
        }
        assert_eq!(
            rederived, golden_edges,
            "{name}: edges rederived from the generator rule disagree with the golden file\n\
             rederived: {rederived:?}\n    golden: {golden_edges:?}"
        );
    }
    println!("PASS c01 golden-duals ({:.2}s)", t.elapsed().as_secs_f64());
}

#[test]
fn c02_corpus_duals_satisfy_tirs() {
    let t = Instant::now();
    for l in corpus() {
        let d = dual_digraph(&l);
        let report = check_tirs(&d.digraph);
        assert!(report.is_tirs(), "{}: {report:?}", l.name());
    }
    println!("PASS c02 tirs-axioms ({:.2}s)", t.elapsed().as_secs_f64());
}

#[test]
fn c03_three_methods_agree_on_the_corpus() {
    let t = Instant::now();
    for l in corpus() {
        let jq = jsd_bruteforce(&l);
        let jd = jsd_dual(&l);
        let jf = jsd_forbidden(&l);
        assert_eq!(jq.verdict, jd.verdict, "JSD quasi vs dual on {}", l.name());
        assert_eq!(
            jq.verdict,
            jf.verdict,
            "JSD quasi vs forbidden on {}",
            l.name()
        );
        let mq = msd_bruteforce(&l);
        let md = msd_dual(&l);
        let mf = msd_forbidden(&l);
        assert_eq!(mq.verdict, md.verdict, "MSD quasi vs dual on {}", l.name());
        assert_eq!(
            mq.verdict,
            mf.verdict,
            "MSD quasi vs forbidden on {}",
            l.name()
        );
        assert_eq!(
            sd_bruteforce(&l).verdict,
            jq.verdict && mq.verdict,
            "{}",
            l.name()
        );
        assert_eq!(
            sd_dual(&l).verdict,
            jd.verdict && md.verdict,
            "{}",
            l.name()
        );
        assert_eq!(
            sd_forbidden(&l).verdict,
            jf.verdict && mf.verdict,
            "{}",
            l.name()
        );
        for r in [&jq, &jd, &jf] {
            if let Some(w) = &r.witness {
                assert!(verify_sd_witness(&l, SdProperty::Jsd, w), "{}", l.name());
            }
        }
        for r in [&mq, &md, &mf] {
            if let Some(w) = &r.witness {
                assert!(verify_sd_witness(&l, SdProperty::Msd, w), "{}", l.name());
            }
        }
    }
    println!(
        "PASS c03 three-method-agreement ({:.2}s)",
        t.elapsed().as_secs_f64()
    );
}

#[test]
fn c04_first_roundtrip_on_the_corpus() {
    let t = Instant::now();
    let expected_sizes = [
        ("M3", 5),
        ("L1", 7),
        ("L2", 7),
        ("L3", 7),
        ("L4", 6),
        ("L5", 6),
    ];
    for (name, size) in expected_sizes {
        let l = fixture(name).unwrap();
        let rt = check_first_roundtrip(&l).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(rt.mpm.lattice.n(), size, "{name} reconstruction size");
        assert!(
            lattice_isomorphic(&l, &rt.mpm.lattice).is_some(),
            "{name} not isomorphic to its reconstruction"
        );
    }
    for l in corpus() {
        check_first_roundtrip(&l).unwrap_or_else(|e| panic!("{}: {e}", l.name()));
    }
    println!(
        "PASS c04 first-roundtrip ({:.2}s)",
        t.elapsed().as_secs_f64()
    );
}

#[test]
fn c05_second_roundtrip_on_corpus_duals() {
    let t = Instant::now();
    for name in ["M3", "L1", "L2", "L3", "L4", "L5"] {
        let d = dual_digraph(&fixture(name).unwrap());
        check_second_roundtrip(&d.digraph).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    for l in corpus() {
        let d = dual_digraph(&l);
        check_second_roundtrip(&d.digraph).unwrap_or_else(|e| panic!("{}: {e}", l.name()));
    }
    println!(
        "PASS c05 second-roundtrip ({:.2}s)",
        t.elapsed().as_secs_f64()
    );
}

#[test]
fn c06_family_verdicts_and_drawn_witnesses() {
    let t = Instant::now();
    for k in 1..=3 {
        let o = o_family(k).unwrap();
        for r in [sd_bruteforce(&o), sd_dual(&o), sd_forbidden(&o)] {
            assert!(r.verdict, "O{k} must be semidistributive ({:?})", r.method);
        }

        let oh = o_hat_family(k).unwrap();
        for r in [jsd_bruteforce(&oh), jsd_dual(&oh), jsd_forbidden(&oh)] {
            assert!(!r.verdict, "Ohat{k} must fail JSD ({:?})", r.method);
        }
        for r in [msd_bruteforce(&oh), msd_dual(&oh), msd_forbidden(&oh)] {
            assert!(r.verdict, "Ohat{k} must satisfy MSD ({:?})", r.method);
        }
        let (a, b, c) = (2 * k + 3, 2 * k + 4, 2 * k + 5);
        assert_eq!(oh.join(c, a), oh.join(c, b), "Ohat{k}: c|a = c|b");
        assert_eq!(oh.join(c, oh.meet(a, b)), c, "Ohat{k}: c|(a&b) = c");
        assert_ne!(oh.join(c, a), c, "Ohat{k}: the two sides must differ");

        let r = rocket_family(k).unwrap();
        for rep in [jsd_bruteforce(&r), jsd_dual(&r), jsd_forbidden(&r)] {
            assert!(!rep.verdict, "R{k} must fail JSD ({:?})", rep.method);
        }
        for rep in [msd_bruteforce(&r), msd_dual(&r), msd_forbidden(&r)] {
            assert!(!rep.verdict, "R{k} must fail MSD ({:?})", rep.method);
        }
        let (bw, a1, c0) = (2 * k, 2 * k + 1, 3 * k + 1);
        assert_eq!(r.join(bw, a1), r.join(bw, c0), "R{k} join witness premise");
        assert_ne!(
            r.join(bw, r.meet(a1, c0)),
            r.join(bw, a1),
            "R{k} join witness"
        );
        let (x, y, z) = if k == 1 {
            (3 * k + 1, 2 * k, 2 * k + 1)
        } else {
            (2 * k + 1, 2 * k - 1, 4 * k)
        };
        assert_eq!(r.meet(x, y), r.meet(x, z), "R{k} meet witness premise");
        assert_eq!(r.meet(x, r.join(y, z)), x, "R{k}: x&(y|z) = x");
        assert_ne!(r.meet(x, y), x, "R{k}: the two sides must differ");
    }
    println!(
        "PASS c06 family-verdicts ({:.2}s)",
        t.elapsed().as_secs_f64()
    );
}

#[test]
fn c07_shared_ideal_laws_on_the_corpus() {
    let t = Instant::now();
    let mut checked = 0usize;
    let mut explicit = 0usize;
    for l in corpus() {
        for (x, y) in shared_ideal_pairs(&l) {
            let failures =
                check_shared_ideal_laws(&l, &x, &y).unwrap_or_else(|e| panic!("{}: {e}", l.name()));
            assert!(
                failures.is_empty(),
                "{}: laws failed: {failures:?}",
                l.name()
            );
            checked += 1;
            if l.n() <= 12 {
                let failures = check_shared_ideal_laws_explicit(&l, &x, &y, DEFAULT_IDEAL_CAP)
                    .unwrap_or_else(|e| panic!("{}: {e}", l.name()));
                assert!(
                    failures.is_empty(),
                    "{}: explicit laws failed: {failures:?}",
                    l.name()
                );
                explicit += 1;
            }
        }
    }
    assert!(checked > 0, "corpus must contain sharing pairs");
    assert!(
        explicit > 0,
        "corpus must contain small lattices with sharing pairs"
    );
    println!(
        "PASS c07 shared-ideal-laws ({checked} pairs, {explicit} explicit) ({:.2}s)",
        t.elapsed().as_secs_f64()
    );
}

#[test]
fn c08_classifier_soundness_on_the_corpus() {
    let t = Instant::now();
    let case_pattern = [
        (1u8, "M3"),
        (2, "L4"),
        (3, "L5"),
        (4, "L5"),
        (5, "L3"),
        (6, "L3"),
        (7, "L2"),
        (8, "L2"),
    ];
    // The candidate map a case dictates is not always meet/join closed in
    // the host (the rocket pair below is the smallest refusal), so the
    // classifier reports a mismatch error for exactly those pairs instead
    // of returning an unverified map. Both outcomes are pinned: a success
    // must equal the independently rebuilt candidate and pass
    // verification, a mismatch must be one the rebuilt candidate
    // reproduces, and the per-case split across the corpus is frozen.
    let mut ok_by_case = [0usize; 9];
    let mut mismatch_by_case = [0usize; 9];
    for l in corpus() {
        for (x, y) in shared_ideal_pairs(&l) {
            let (case_id, pattern_name, map) = expected_case(&l, x.f_min, y.f_min, x.i_max);
            let pattern = fixture(pattern_name).unwrap();
            let candidate_embeds = verify_sublattice_embedding(&l, &pattern, &map);
            match classify_jsd_failure(&l, &x, &y) {
                Ok(cls) => {
                    assert!(
                        candidate_embeds,
                        "{}: classifier accepted a non-embedding on ({}, {})",
                        l.name(),
                        x.label(&l),
                        y.label(&l)
                    );
                    assert_eq!((cls.case_id, cls.pattern.as_str()), (case_id, pattern_name));
                    assert_eq!(cls.embedding, map, "{}", l.name());
                    let expected_pattern = case_pattern
                        .iter()
                        .find(|(id, _)| *id == cls.case_id)
                        .map(|(_, p)| *p)
                        .unwrap();
                    assert_eq!(cls.pattern, expected_pattern, "{}", l.name());
                    ok_by_case[case_id as usize] += 1;
                }
                Err(Error::ClassifierMismatch { .. }) => {
                    assert!(
                        !candidate_embeds,
                        "{}: classifier rejected a valid embedding on ({}, {})",
                        l.name(),
                        x.label(&l),
                        y.label(&l)
                    );
                    mismatch_by_case[case_id as usize] += 1;
                }
                Err(e) => panic!("{}: unexpected error {e}", l.name()),
            }
        }
    }
    assert_eq!(ok_by_case[1..], [102, 1704, 16, 16, 41, 41, 10, 0]);
    assert_eq!(mismatch_by_case[1..], [0, 624, 22, 22, 115, 115, 2, 4]);

    let anchor = |name: &str, xl: &str, yl: &str| {
        let l = fixture(name).unwrap();
        let d = dual_digraph(&l);
        let x = *d.pairs.iter().find(|p| p.label(&l) == xl).unwrap();
        let y = *d.pairs.iter().find(|p| p.label(&l) == yl).unwrap();
        (l, x, y)
    };
    let expect = |name: &str, xl: &str, yl: &str, case_id: u8, pat: &str, map: &[usize]| {
        let (l, x, y) = anchor(name, xl, yl);
        let cls =
            classify_jsd_failure(&l, &x, &y).unwrap_or_else(|e| panic!("{name} ({xl}, {yl}): {e}"));
        assert_eq!(
            (cls.case_id, cls.pattern.as_str(), cls.embedding.as_slice()),
            (case_id, pat, map),
            "{name} ({xl}, {yl})"
        );
    };
    expect("M3", "ba", "ca", 1, "M3", &[0, 2, 1, 3, 4]);
    expect("L4", "ac", "bc", 2, "L4", &[0, 1, 2, 3, 4, 5]);
    expect("L5", "ab", "cb", 3, "L5", &[0, 1, 2, 3, 4, 5]);
    expect("L5", "ca", "ba", 4, "L5", &[0, 1, 2, 4, 3, 5]);
    expect("L3", "cb", "db", 5, "L3", &[0, 1, 2, 3, 4, 5, 6]);
    expect("L3", "db", "cb", 6, "L3", &[0, 1, 2, 3, 4, 5, 6]);
    expect("L2", "ab", "cb", 7, "L2", &[0, 1, 2, 3, 4, 5, 6]);
    let (r2, x, y) = {
        let l = rocket_family(2).unwrap();
        let d = dual_digraph(&l);
        let x = *d.pairs.iter().find(|p| p.label(&l) == "a1bw").unwrap();
        let y = *d.pairs.iter().find(|p| p.label(&l) == "c0bw").unwrap();
        (l, x, y)
    };
    match classify_jsd_failure(&r2, &x, &y) {
        Err(Error::ClassifierMismatch { detail }) => {
            assert!(detail.contains("case 3"), "{detail}");
        }
        other => panic!("R2 (a1bw, c0bw): expected a mismatch report, got {other:?}"),
    }
    let classified: usize = ok_by_case.iter().sum();
    let mismatched: usize = mismatch_by_case.iter().sum();
    println!(
        "PASS c08 classifier-soundness ({classified} verified, {mismatched} reported mismatches) ({:.2}s)",
        t.elapsed().as_secs_f64()
    );
}

#[test]
fn c09_separation_and_double_disconnection() {
    let t = Instant::now();
    for l in corpus() {
        let d = dual_digraph(&l);
        let unseparated = check_separation(&d.digraph);
        assert!(unseparated.is_empty(), "{}: {unseparated:?}", l.name());
        let dd = check_doubly_disconnected(&d.digraph);
        assert!(
            dd.passed(),
            "{}: one-side {:?}, zero-side {:?}",
            l.name(),
            dd.one_side_failures,
            dd.zero_side_failures
        );
    }
    println!("PASS c09 separation ({:.2}s)", t.elapsed().as_secs_f64());
}

#[test]
fn c10_distributive_lattices_recover_birkhoff_form() {
    let t = Instant::now();
    let mut inputs: Vec<Lattice> = (1..=6).map(|n| chain(n).unwrap()).collect();
    inputs.push(boolean(2).unwrap());
    inputs.push(boolean(3).unwrap());
    for l in inputs {
        let d = dual_digraph(&l);
        let g = &d.digraph;
        assert!(g.is_reflexive(), "{}", l.name());
        for u in g.vertices() {
            for v in g.vertices() {
                if u != v && g.has_edge(u, v) {
                    assert!(!g.has_edge(v, u), "{}: antisymmetry at ({u},{v})", l.name());
                }
                for w in g.vertices() {
                    if g.has_edge(u, v) && g.has_edge(v, w) {
                        assert!(
                            g.has_edge(u, w),
                            "{}: transitivity at ({u},{v},{w})",
                            l.name()
                        );
                    }
                }
            }
        }
        assert_eq!(
            d.pairs.len(),
            l.join_irreducibles().len(),
            "{}: one vertex per join-irreducible",
            l.name()
        );
        let poset = birkhoff_poset(&l).unwrap_or_else(|e| panic!("{}: {e}", l.name()));
        let downsets = poset.downset_lattice(&l).unwrap();
        let rt = check_first_roundtrip(&l).unwrap_or_else(|e| panic!("{}: {e}", l.name()));
        assert!(
            lattice_isomorphic(&rt.mpm.lattice, &downsets).is_some(),
            "{}: reconstruction is not the downset lattice",
            l.name()
        );
    }
    println!(
        "PASS c10 distributive-specialization ({:.2}s)",
        t.elapsed().as_secs_f64()
    );
}
