//! Exhaustive sweeps over enumerated graphs and matroids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zerofree::arith::{int, rat, Rational};
use zerofree::certify::small_matroids;
use zerofree::graph::{connected_multigraphs, MultiGraph, WeightAssignment};
use zerofree::matroid::Matroid;
use zerofree::tutte::{z_delcon, z_expansion, z_potts_coloring};

fn random_rational(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    rat(rng.gen_range(-span * 12..=span * 12), rng.gen_range(1..=12))
}

fn random_weights(g: &MultiGraph, rng: &mut ChaCha8Rng) -> WeightAssignment {
    WeightAssignment::from_pairs(g.edge_ids().into_iter().map(|e| (e, random_rational(rng, 3))))
}

/// Expansion and deletion-contraction agree on every connected multigraph with at
/// most 8 edges (loops included) under 50 seeded weight assignments; the coloring
/// route joins in for integer `q` on graphs small enough to enumerate spins.
#[test]
fn routes_agree_on_all_small_multigraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut graphs = 0;
    for level in connected_multigraphs(8, true) {
        for g in level {
            graphs += 1;
            for i in 0..50 {
                let w = random_weights(&g, &mut rng);
                let q = loop {
                    let q = random_rational(&mut rng, 4);
                    if q != int(0) {
                        break q;
                    }
                };
                let z = z_expansion(&g, &q, &w).unwrap();
                assert_eq!(z, z_delcon(&g, &q, &w).unwrap(), "q = {q} on {g:?}");
                if i < 2 && g.n() <= 6 {
                    for k in 1..=4u32 {
                        let qk = int(k as i64);
                        assert_eq!(z_potts_coloring(&g, k, &w).unwrap(), z_expansion(&g, &qk, &w).unwrap());
                    }
                }
            }
        }
    }
    assert_eq!(graphs, 1 + 2 + 4 + 11 + 30 + 95 + 328 + 1211 + 4779);
}

fn subsets(m: &Matroid) -> std::ops::RangeInclusive<u64> {
    0..=m.full_mask()
}

#[test]
fn rank_axioms_hold_on_all_small_matroids() {
    for spec in small_matroids(6) {
        let m = spec.build().unwrap();
        assert_eq!(m.rank(0), 0);
        for a in subsets(&m) {
            let ra = m.rank(a);
            assert!(ra <= a.count_ones() as usize, "{spec:?}");
            for b in subsets(&m) {
                let rb = m.rank(b);
                if a & b == a {
                    assert!(ra <= rb, "monotone: {spec:?}");
                }
                assert!(m.rank(a | b) + m.rank(a & b) <= ra + rb, "submodular: {spec:?}");
            }
        }
    }
}

#[test]
fn double_dual_has_the_same_ranks() {
    for spec in small_matroids(6) {
        let m = spec.build().unwrap();
        let dd = m.dual().dual();
        assert_eq!(dd.labels(), m.labels());
        for a in subsets(&m) {
            assert_eq!(dd.rank(a), m.rank(a), "{spec:?}");
        }
        // r*(A) = |A| - r(E) + r(E - A).
        let d = m.dual();
        for a in subsets(&m) {
            let expected = a.count_ones() as usize + m.rank(m.full_mask() & !a) - m.full_rank();
            assert_eq!(d.rank(a), expected);
        }
    }
}

#[test]
fn graphic_connectivity_matches_nonseparability() {
    let mut checked = 0;
    for level in connected_multigraphs(6, true).into_iter().skip(2) {
        for g in level {
            let m = Matroid::graphic(&g).unwrap();
            assert_eq!(m.is_2connected().unwrap(), g.is_nonseparable() && g.is_loopless(), "{g:?}");
            checked += 1;
        }
    }
    assert!(checked > 400);
}
