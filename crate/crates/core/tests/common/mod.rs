#![allow(dead_code)]

use std::collections::BTreeSet;

use k3tk::ade::StabilizerRecord;
use k3tk::data::DataSource;
use k3tk::enumerate::ListEntry;
use k3tk::perm::{GroupFile, PermGroup};
use num_bigint::BigUint;
use num_rational::Ratio;

/// Plain nested loops over multiplicity vectors, no pruning, independent arithmetic.
pub fn brute_force(
    alphabet: &[StabilizerRecord],
    k_min: usize,
    k_max: usize,
    rank20: bool,
    nonsquare: bool,
) -> BTreeSet<(u64, Vec<String>)> {
    fn rec(
        alphabet: &[StabilizerRecord],
        idx: usize,
        counts: &mut Vec<usize>,
        k_max: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if idx == alphabet.len() {
            out.push(counts.clone());
            return;
        }
        let used: usize = counts.iter().sum();
        for c in 0..=(k_max - used) {
            counts.push(c);
            rec(alphabet, idx + 1, counts, k_max, out);
            counts.pop();
        }
    }
    let mut all = Vec::new();
    rec(alphabet, 0, &mut Vec::new(), k_max, &mut all);

    let mut found = BTreeSet::new();
    for counts in all {
        let k: usize = counts.iter().sum();
        if k < k_min || k > k_max || k == 0 {
            continue;
        }
        let members: Vec<&StabilizerRecord> = counts
            .iter()
            .zip(alphabet)
            .flat_map(|(&c, r)| std::iter::repeat_n(r, c))
            .collect();
        let rank: u32 = members.iter().map(|r| r.c_x).sum();
        if rank20 && rank != 20 {
            continue;
        }
        let lhs: Ratio<i64> = members.iter().map(|r| Ratio::new(1, r.o_x as i64)).sum();
        let s = lhs - Ratio::from_integer(k as i64 - 4);
        if s <= Ratio::from_integer(0) {
            continue;
        }
        let n = Ratio::from_integer(24) / s;
        if !n.is_integer() {
            continue;
        }
        let n = *n.numer() as u64;
        if members.iter().any(|r| !n.is_multiple_of(r.o_x)) {
            continue;
        }
        let d: u64 = members.iter().map(|r| r.d_x).product();
        let mut i = 0u64;
        while i * i < d {
            i += 1;
        }
        if nonsquare && i * i == d {
            continue;
        }
        found.insert((n, members.iter().map(|r| r.ade.to_string()).collect()));
    }
    found
}

pub fn as_set(entries: &[ListEntry]) -> BTreeSet<(u64, Vec<String>)> {
    entries
        .iter()
        .map(|e| {
            (
                e.order,
                e.config.types().iter().map(|t| t.to_string()).collect(),
            )
        })
        .collect()
}

pub fn bundled(name: &str) -> PermGroup {
    GroupFile::parse(&DataSource::Bundled.group(name).unwrap())
        .unwrap()
        .build()
        .unwrap()
}

/// Orbit lengths times point-stabilizer orders equal the group order, and the
/// order divides `degree!`.
pub fn orbit_stabilizer_holds(g: &PermGroup) -> bool {
    let zero = BigUint::from(0u32);
    let fact: BigUint = (1..=g.degree() as u64).map(BigUint::from).product();
    (fact % g.order()) == zero
        && g.orbit_partition().iter().all(|orbit| {
            let p = orbit[0];
            let stab = g.stabilizer(p).unwrap();
            stab.order() * BigUint::from(orbit.len()) == g.order() && stab.orbit_of(p) == vec![p]
        })
}
