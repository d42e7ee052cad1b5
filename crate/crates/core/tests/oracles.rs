mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use zigzag::decompose::{barcode, decompose, multiplicities_from_dims};
use zigzag::filtration::{birth_time_index, death_time_index};
use zigzag::harness::{plant, random_module, random_module_low_rank, random_type, scramble, Rng};
use zigzag::localize::localize_at;
use zigzag::{interval_module, Barcode, Field, Interval, ZigzagModule, ZigzagType};

#[test]
fn cautionary_modules() {
    assert_eq!(barcode(&caution1()).unwrap(), Barcode::from_intervals(3, [(1, 2), (2, 3)]));
    for n in 2..=5 {
        let bc = barcode(&caution2(n)).unwrap();
        assert_eq!(bc, caution2_barcode(n));
        assert_eq!(bc.multiplicity(Interval::new(1, 2 * n + 1).unwrap(), None), 0);
    }
}

#[test]
fn caution2_contains_a_long_interval_submodule_anyway() {
    // the vectors (1,1) in each F^2 together with the F's form a copy of
    // I(1, 2n+1) inside the module, yet the barcode has no long interval
    let m = caution2(3);
    for (i, map) in m.maps().iter().enumerate() {
        assert_eq!(map.apply(&[1, 1]), vec![1], "arrow {}", i + 1);
    }
}

#[test]
fn birth_and_death_tables() {
    assert_eq!(birth_time_index(&ty("fgf")), vec![3, 1, 2, 4]);
    assert_eq!(death_time_index(&ty("ffg"), 2).unwrap(), vec![2, 4, 3]);
}

#[test]
fn difference_formula_on_caution1_tables() {
    let (_, trace) = decompose(&caution1()).unwrap();
    let r: Vec<Vec<usize>> = trace.steps.iter().map(|s| s.dims.clone()).collect();
    assert_eq!(r, vec![vec![1], vec![1, 1], vec![1, 0, 0]]);
    let c = multiplicities_from_dims(&r, &ty("gf")).unwrap();
    assert_eq!(c, vec![vec![0], vec![0, 1], vec![1, 0, 0]]);
    assert_eq!(c, intersection_multiplicities(&caution1()));
}

#[test]
fn dimension_accounting() {
    let mut rng = Rng::new(99);
    for _ in 0..100 {
        let t = random_type(&mut rng, 6);
        let m = random_module_low_rank(&mut rng, Field::new(5).unwrap(), &t, 4);
        let bc = barcode(&m).unwrap();
        let total: usize = bc.iter().map(|(iv, _, c)| iv.len() * c).sum();
        assert_eq!(total, m.total_dim());
    }
}

fn forward_through(bc: &Barcode, p: usize, q: usize) -> usize {
    bc.iter()
        .filter(|(iv, _, _)| iv.birth <= p && q <= iv.death)
        .map(|(_, _, c)| c)
        .sum()
}

#[test]
fn persistence_modules_rank_of_composites() {
    let mut rng = Rng::new(3);
    for _ in 0..200 {
        let n = rng.between(1, 6);
        let m = random_module_low_rank(&mut rng, Field::new(3).unwrap(), &ZigzagType::forward(n), 3);
        let bc = barcode(&m).unwrap();
        for p in 1..=n {
            for q in p..=n {
                assert_eq!(composite(&m, p, q).rank(), forward_through(&bc, p, q));
            }
        }
    }
}

proptest! {
    #[test]
    fn difference_formula_matches_intersection_formula(seed: u64, len in 1usize..=7, p in prop::sample::select(vec![2u64, 5])) {
        let mut rng = Rng::new(seed);
        let f = Field::new(p).unwrap();
        let t = random_type(&mut rng, len);
        let m = if rng.coin() { random_module(&mut rng, f, &t, 5) } else { random_module_low_rank(&mut rng, f, &t, 5) };
        let (bc, trace) = decompose(&m).unwrap();
        let c: Vec<Vec<usize>> = trace.steps.iter().map(|s| s.multiplicities.clone()).collect();
        prop_assert_eq!(c, intersection_multiplicities(&m));
        prop_assert_eq!(bc, intersection_barcode(&m));
    }

    #[test]
    fn planted_instances_decompose_and_localize(seed: u64, len in 1usize..=8, p in prop::sample::select(vec![2u64, 5])) {
        let f = Field::new(p).unwrap();
        let t = random_type(&mut Rng::new(seed.rotate_left(17)), len);
        let inst = plant(seed, &t, 6, f);
        prop_assert_eq!(barcode(&inst.module).unwrap(), inst.truth.clone());
        for k in 1..=len {
            prop_assert_eq!(localize_at(&inst.module, k).unwrap(), inst.truth.filter(|iv, _| iv.contains(k)));
        }
        prop_assert_eq!(barcode(&inst.module.reverse()).unwrap(), inst.truth.reflect());
    }

    #[test]
    fn invariance_under_isomorphism_restriction_and_reversal(seed: u64, len in 1usize..=7) {
        let mut rng = Rng::new(seed);
        let f = Field::new(5).unwrap();
        let t = random_type(&mut rng, len);
        let m = random_module_low_rank(&mut rng, f, &t, 4);
        let bc = barcode(&m).unwrap();
        prop_assert_eq!(barcode(&scramble(&mut rng, &m)).unwrap(), bc.clone());
        let p = rng.between(1, len);
        let q = rng.between(p, len);
        let window: BTreeSet<usize> = (p..=q).collect();
        let restricted = barcode(&m.restrict(p, q).unwrap()).unwrap();
        prop_assert_eq!(&restricted, &bc.restrict_window(p, q));
        // the same statement through the index-set restriction, shifted back
        let shifted = restricted.map_intervals(bc.grid(), |iv| Some(Interval::new(iv.birth + p - 1, iv.death + p - 1).unwrap()));
        prop_assert_eq!(shifted, bc.restrict(&window));
        prop_assert_eq!(barcode(&m.reverse()).unwrap(), bc.reflect());
    }

    #[test]
    fn krull_schmidt(seed: u64, len in 1usize..=6) {
        let mut rng = Rng::new(seed);
        let f = Field::gf2();
        let t = random_type(&mut rng, len);
        let parts: Vec<ZigzagModule> = (0..3).map(|_| random_module_low_rank(&mut rng, f, &t, 2)).collect();
        let mut sum = ZigzagModule::zero(f, t.clone());
        let mut expect = Barcode::from_intervals(len, []);
        for part in &parts {
            sum = sum.direct_sum(part).unwrap();
            expect.merge(&barcode(part).unwrap());
        }
        prop_assert_eq!(barcode(&scramble(&mut rng, &sum)).unwrap(), expect);
    }
}

#[test]
fn every_interval_of_every_short_type() {
    let f = Field::new(5).unwrap();
    for len in 1..=5 {
        for bits in 0..1u32 << (len - 1) {
            let t: ZigzagType = (0..len - 1)
                .map(|i| if bits >> i & 1 == 1 { 'g' } else { 'f' })
                .collect::<String>()
                .parse()
                .unwrap();
            for b in 1..=len {
                for d in b..=len {
                    let m = interval_module(f, &t, b, d).unwrap();
                    assert_eq!(intersection_barcode(&m), Barcode::from_intervals(len, [(b, d)]));
                }
            }
        }
    }
}
