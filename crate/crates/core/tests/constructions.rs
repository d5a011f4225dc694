use std::collections::HashMap;

use imprim_core::constructions::{
    affine_element_is_imprimitive, affine_group, agl_wreath_converse_check, catalog, cyclic_group,
    symmetric_group, wreath_imprimitive, wreath_product_action, AffineMap, FpMatrix,
};
use imprim_core::cycletype::{is_imprimitive_cycle_type, is_m_partition, Partition};
use imprim_core::group::{
    invariant_uniform_partition_search, is_primitive_group, minimal_block_closure, PermutationGroup,
};
use imprim_core::perm::Permutation;
use imprim_core::Budgets;
use rand::{Rng, SeedableRng};

fn agl1(p: usize, multiplier: i64) -> PermutationGroup {
    affine_group(
        p,
        1,
        &[FpMatrix::new(p, &[vec![multiplier]]).unwrap()],
        true,
    )
    .unwrap()
}

#[test]
fn imprimitive_wreath_has_its_block_system() {
    for (h, k) in [
        (symmetric_group(3), symmetric_group(2)),
        (cyclic_group(4), symmetric_group(3)),
        (symmetric_group(2), cyclic_group(5)),
    ] {
        let g = wreath_imprimitive(&h, &k).unwrap();
        let a = h.degree();
        assert!(!is_primitive_group(&g));
        assert_eq!(g.order(), h.order().pow(k.degree() as u32) * k.order());
        let sys = minimal_block_closure(&g, 0, 1).unwrap();
        let expected: Vec<Vec<usize>> = (0..k.degree())
            .map(|b| (b * a..(b + 1) * a).collect())
            .collect();
        assert_eq!(sys.blocks(), expected.as_slice());
    }
}

#[test]
fn imprimitive_wreath_contains_m_partition_types() {
    // S_{n/k} wr S_k holds every permutation whose type is an (n/k)-partition
    let (n, k) = (12, 3);
    let g = wreath_imprimitive(&symmetric_group(n / k), &symmetric_group(k)).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 40 {
        let images = {
            let mut v: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                v.swap(i, rng.gen_range(0..=i));
            }
            v
        };
        let a = Permutation::from_images(images).unwrap();
        let Some(c) = is_m_partition(&a.cycle_type(), n / k) else {
            continue;
        };
        checked += 1;
        // a conjugate of `a` lies in the wreath product: lay the clusters out block by block
        let mut laid_out = Vec::new();
        let mut next = 0;
        for cluster in c.clusters() {
            for &len in cluster.parts() {
                laid_out.push((next..next + len).collect::<Vec<_>>());
                next += len;
            }
        }
        let b = Permutation::from_cycles(
            n,
            &laid_out
                .into_iter()
                .filter(|c| c.len() > 1)
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(b.cycle_type(), a.cycle_type());
        assert!(g.contains(&b));
        assert!(
            invariant_uniform_partition_search(n, &[a], n / k, 1_000_000)
                .unwrap()
                .is_some()
        );
    }
}

#[test]
fn product_action_orders_on_catalog() {
    let cases: [(&str, PermutationGroup, PermutationGroup); 3] = [
        ("s3_wr_c2_product", symmetric_group(3), cyclic_group(2)),
        ("qr_agl15_wr_s2", agl1(5, 4), symmetric_group(2)),
        ("dp_wr_c4_p3", agl1(3, 2), cyclic_group(4)),
    ];
    for (name, h, k) in cases {
        let g = catalog(name).unwrap();
        assert_eq!(
            g.order(),
            h.order().pow(k.degree() as u32) * k.order(),
            "{name}"
        );
        assert_eq!(wreath_product_action(&h, &k).unwrap().order(), g.order());
    }
}

/// Lemma verdict of each element against the i-type verdict of its cycle type.
fn check_affine_consistency(name: &str, p: usize, k: usize) -> usize {
    let g = catalog(name).unwrap();
    let mut verdicts: HashMap<Partition, bool> = HashMap::new();
    let mut count = 0;
    for e in g.elements(1_000_000).unwrap() {
        let map = AffineMap::from_permutation(p, k, &e).unwrap();
        let t = e.cycle_type();
        let by_type = *verdicts
            .entry(t.clone())
            .or_insert_with(|| is_imprimitive_cycle_type(&t).unwrap());
        assert_eq!(
            affine_element_is_imprimitive(&map).unwrap(),
            by_type,
            "{name}: {map} of type {t}"
        );
        count += 1;
    }
    count
}

#[test]
fn affine_lemma_matches_cycle_types() {
    for (name, p, k) in [
        ("s3_wr_c2_product", 3, 2),
        ("affine_9_q8", 3, 2),
        ("affine_9_c4", 3, 2),
        ("affine_16_3sq_4", 2, 4),
        ("qr_agl15_wr_s2", 5, 2),
        ("affine_25_d8", 5, 2),
        ("affine_25_d8_ext", 5, 2),
        ("affine_25_sl23", 5, 2),
        ("affine_25_q12", 5, 2),
        ("dp_wr_c4_p3", 3, 4),
    ] {
        let n = catalog(name).unwrap().order() as usize;
        assert_eq!(check_affine_consistency(name, p, k), n);
    }
}

#[test]
fn converse_holds_for_q2() {
    let c2 = symmetric_group(2);
    for (p, multiplier, criterion) in [
        (5, 4, true),
        (5, 2, false),
        (7, 2, true),
        (7, 3, false),
        (3, 2, false),
    ] {
        let g = wreath_product_action(&agl1(p, multiplier), &c2).unwrap();
        let r = agl_wreath_converse_check(&g, p, 2, &Budgets::default()).unwrap();
        assert_eq!(r.criterion_holds, criterion, "p = {p}, a = {multiplier}");
        assert!(r.agrees(), "{r:?}");
    }
}

#[test]
fn converse_holds_for_q3() {
    let c3 = cyclic_group(3);
    // cubes mod 7 are {1, 6}; every element of F_5 is a cube
    for (p, multiplier, criterion) in [(7, 6, true), (7, 2, false), (5, 2, true)] {
        let g = wreath_product_action(&agl1(p, multiplier), &c3).unwrap();
        let r = agl_wreath_converse_check(&g, p, 3, &Budgets::default()).unwrap();
        assert_eq!(r.criterion_holds, criterion, "p = {p}, a = {multiplier}");
        assert!(r.agrees(), "{r:?}");
        assert!(!r.experimental);
    }
}

#[test]
fn dp_wr_c4_is_all_imprimitive() {
    let g = catalog("dp_wr_c4_p3").unwrap();
    let r = agl_wreath_converse_check(&g, 3, 4, &Budgets::default()).unwrap();
    assert!(r.experimental);
    assert!(r.every_element_imprimitive);
}
