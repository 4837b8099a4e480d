mod common;

use std::collections::BTreeSet;

use common::{as_set, brute_force};
use k3tk::ade::{table1, StabilizerRecord};
use k3tk::enumerate::{
    check_constraints, enumerate_list, enumerate_over, parse_table2, verify_table2, EnumOptions,
};
use k3tk::mathieu::check_point_count_relation;
use k3tk::Rational;

#[test]
fn defaults_reproduce_bundled_table() {
    let entries = enumerate_list(&EnumOptions::default());
    assert_eq!(entries.len(), 56);
    let diff = verify_table2(&entries).unwrap();
    assert!(diff.is_empty(), "{diff:?}");
}

#[test]
fn output_is_canonically_sorted() {
    let entries = enumerate_list(&EnumOptions::default());
    let mut sorted = entries.clone();
    sorted.sort();
    assert_eq!(entries, sorted);
    assert!(entries.windows(2).all(|w| w[0].order >= w[1].order));
    assert_eq!(entries, enumerate_list(&EnumOptions::default()));
}

#[test]
fn every_entry_is_self_consistent() {
    for e in enumerate_list(&EnumOptions::default()) {
        let report = check_constraints(e.config.types(), e.order);
        assert!(report.all_pass(), "{e:?}: {report:?}");
        assert!(check_point_count_relation(
            &e.config.orders(),
            e.order,
            Rational::from_integer(4)
        ));
    }
}

#[test]
fn widened_k_range_only_hits_four_and_five() {
    let opts = EnumOptions {
        k_range: 1..=10,
        ..Default::default()
    };
    let ks: BTreeSet<usize> = enumerate_list(&opts).iter().map(|e| e.config.k()).collect();
    assert_eq!(ks, BTreeSet::from([4, 5]));
}

#[test]
fn square_filter_off_gives_strict_superset() {
    let with = as_set(&enumerate_list(&EnumOptions::default()));
    let without_entries = enumerate_list(&EnumOptions {
        require_nonsquare: false,
        ..Default::default()
    });
    let without = as_set(&without_entries);
    assert!(with.is_subset(&without));
    assert!(without.len() > with.len());
    let extra: Vec<_> = without_entries
        .iter()
        .filter(|e| !with.contains(&(e.order, e.config.types().iter().map(|t| t.to_string()).collect())))
        .collect();
    for e in &extra {
        assert!(k3tk::ade::is_square(e.config.disc_product()));
    }
    // e.g. A5A5D5D5 with N = 48: discriminant 6*6*4*4 = 576 = 24^2
    assert!(without.contains(&(48, vec!["A5".into(), "A5".into(), "D5".into(), "D5".into()])));
}

#[test]
fn pruned_search_matches_brute_force_on_small_alphabet() {
    let small: Vec<StabilizerRecord> = table1()[..3].to_vec();
    let opts = EnumOptions {
        k_range: 1..=10,
        require_rank20: false,
        require_nonsquare: false,
    };
    let pruned = as_set(&enumerate_over(&small, &opts));
    let brute = brute_force(&small, 1, 10, false, false);
    assert_eq!(pruned, brute);
    assert!(!pruned.is_empty());

    let opts = EnumOptions {
        k_range: 1..=10,
        require_rank20: false,
        require_nonsquare: true,
    };
    assert_eq!(
        as_set(&enumerate_over(&small, &opts)),
        brute_force(&small, 1, 10, false, true)
    );
}

#[test]
fn pruned_search_matches_brute_force_on_full_alphabet() {
    let opts = EnumOptions {
        k_range: 1..=8,
        ..Default::default()
    };
    assert_eq!(
        as_set(&enumerate_list(&opts)),
        brute_force(table1(), 1, 8, true, true)
    );
}

#[test]
fn small_k_range_is_empty() {
    let opts = EnumOptions {
        k_range: 1..=3,
        ..Default::default()
    };
    assert!(enumerate_list(&opts).is_empty());
    assert!(brute_force(table1(), 1, 3, true, true).is_empty());
}

#[test]
fn bundled_table_order_strings_match_orders() {
    let text = k3tk::data::TABLE2;
    let rows = parse_table2(text).unwrap();
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let order_str = line.split_whitespace().next().unwrap();
        let n = k3tk::ade::parse_factorization(order_str).unwrap();
        assert_eq!(k3tk::ade::format_factorization(n as u128), order_str);
    }
    assert_eq!(rows.len(), 56);
}
