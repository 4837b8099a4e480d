mod common;

use common::{bundled, orbit_stabilizer_holds};
use k3tk::f2::{build_o48, build_o48_2, AffineConstants};
use k3tk::perm::{mu_of_group, PermGroup, Permutation, DEFAULT_CAP};
use k3tk::Rational;
use num_bigint::BigUint;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

fn check_orbit_stabilizer(g: &PermGroup) {
    assert!(orbit_stabilizer_holds(g));
}

#[test]
fn m24_order_and_chain() {
    let m24 = bundled("m24.grp");
    assert_eq!(m24.order_u64(), Some(244_823_040));
    assert_eq!(
        m24.stabilizer_chain_orbits(&[0, 1, 2, 3, 4]).unwrap(),
        vec![24, 23, 22, 21, 20]
    );
    let chained = PermGroup::build_with_base(24, m24.generators(), &[0, 1, 2, 3, 4]).unwrap();
    assert_eq!(&chained.fundamental_orbit_sizes()[..5], &[24, 23, 22, 21, 20]);
    assert_eq!(chained.order(), m24.order());
    for g in m24.generators() {
        assert!(m24.contains(g).unwrap());
    }
    let m23 = m24.stabilizer(23).unwrap();
    assert_eq!(m23.order_u64(), Some(10_200_960));
    let mut sizes: Vec<usize> = m23.orbit_partition().iter().map(Vec::len).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 23]);
    // a transposition is not in M24 (minimal degree is 8)
    let t = Permutation::from_cycles(24, &[&[0, 1]]).unwrap();
    assert!(!m24.contains(&t).unwrap());
}

#[test]
fn m24_is_too_large_for_default_cap() {
    let m24 = bundled("m24.grp");
    assert!(m24.element_order_histogram(DEFAULT_CAP).is_err());
}

#[test]
fn small_catalog_orders() {
    let expect = [
        ("a5.grp", 60),
        ("a6.grp", 360),
        ("s6.grp", 720),
        ("l27.grp", 168),
        ("c2.grp", 2),
        ("c3.grp", 3),
        ("c4.grp", 4),
        ("c5.grp", 5),
        ("c6.grp", 6),
        ("c7.grp", 7),
        ("c8.grp", 8),
    ];
    for (name, order) in expect {
        let g = bundled(name);
        assert_eq!(g.order_u64(), Some(order), "{name}");
        check_orbit_stabilizer(&g);
    }
}

#[test]
fn histograms_and_mu() {
    let a6 = bundled("a6.grp");
    let h = a6.element_order_histogram(DEFAULT_CAP).unwrap();
    assert_eq!(h.iter().collect::<Vec<_>>(), vec![(1, 1), (2, 45), (3, 80), (4, 90), (5, 144)]);
    assert_eq!(mu_of_group(&a6, DEFAULT_CAP).unwrap(), Rational::from_integer(5));

    let l27 = bundled("l27.grp");
    let h = l27.element_order_histogram(DEFAULT_CAP).unwrap();
    assert_eq!(h.iter().collect::<Vec<_>>(), vec![(1, 1), (2, 21), (3, 56), (4, 42), (7, 48)]);
    assert_eq!(mu_of_group(&l27, DEFAULT_CAP).unwrap(), Rational::from_integer(5));

    // Mukai's bound: mu(A5) = (24 + 15*8 + 20*6 + 24*4) / 60 = 6
    assert_eq!(mu_of_group(&bundled("a5.grp"), DEFAULT_CAP).unwrap(), Rational::from_integer(6));

    let c2 = bundled("c2.grp");
    let h = c2.element_order_histogram(DEFAULT_CAP).unwrap();
    assert_eq!(h.iter().collect::<Vec<_>>(), vec![(1, 1), (2, 1)]);
}

#[test]
fn histogram_counts_divisible_by_totient() {
    let consts = AffineConstants::bundled();
    let groups = [
        bundled("a6.grp"),
        bundled("s6.grp"),
        bundled("l27.grp"),
        bundled("c8.grp"),
        build_o48(&consts).unwrap(),
        build_o48_2(&consts).unwrap(),
    ];
    for g in &groups {
        let h = g.element_order_histogram(DEFAULT_CAP).unwrap();
        assert_eq!(BigUint::from(h.total()), g.order());
        for (d, count) in h.iter() {
            assert_eq!(count % phi(d), 0, "order {d}");
        }
    }
}

#[test]
fn enumeration_visits_distinct_members() {
    let s6 = bundled("s6.grp");
    let elems = s6.elements(DEFAULT_CAP).unwrap();
    let distinct: std::collections::HashSet<_> = elems.iter().collect();
    assert_eq!(distinct.len(), 720);
    assert!(elems.iter().all(|e| s6.contains(e).unwrap()));
}

#[test]
fn rebuilding_from_random_elements_keeps_order() {
    let mut rng = StdRng::seed_from_u64(7);
    let consts = AffineConstants::bundled();
    let groups = [
        bundled("a6.grp"),
        bundled("s6.grp"),
        bundled("l27.grp"),
        build_o48(&consts).unwrap(),
        build_o48_2(&consts).unwrap(),
    ];
    for g in &groups {
        let elems = g.elements(10_000).unwrap();
        for _ in 0..5 {
            let mut gens: Vec<Permutation> = elems.choose_multiple(&mut rng, 4).copied().collect();
            // include the originals so the subset generates the whole group
            gens.extend_from_slice(g.generators());
            gens.shuffle(&mut rng);
            let h = PermGroup::build(g.degree(), &gens).unwrap();
            assert_eq!(h.order(), g.order());
        }
        // all elements as generators
        let all = PermGroup::build(g.degree(), &elems).unwrap();
        assert_eq!(all.order(), g.order());
    }
}

#[test]
fn subgroups_from_random_elements_have_dividing_orders() {
    let mut rng = StdRng::seed_from_u64(11);
    let s6 = bundled("s6.grp");
    let elems = s6.elements(DEFAULT_CAP).unwrap();
    for _ in 0..30 {
        let gens: Vec<Permutation> = elems.choose_multiple(&mut rng, 2).copied().collect();
        let h = PermGroup::build(6, &gens).unwrap();
        let n = h.order_u64().unwrap();
        assert_eq!(720 % n, 0);
        assert_eq!(h.elements(DEFAULT_CAP).unwrap().len() as u64, n);
        check_orbit_stabilizer(&h);
    }
}

#[test]
fn constructed_groups_satisfy_orbit_stabilizer() {
    let consts = AffineConstants::bundled();
    check_orbit_stabilizer(&build_o48(&consts).unwrap());
    check_orbit_stabilizer(&build_o48_2(&consts).unwrap());
    check_orbit_stabilizer(&bundled("m24.grp"));
}
