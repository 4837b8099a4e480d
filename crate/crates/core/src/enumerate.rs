//! Exhaustive search over quotient singularity configurations.
//!
//! A configuration is a multiset of the twelve stabilizer types. It is
//! accepted with group order `N` when
//!
//! 1. the ranks sum to 20,
//! 2. `sum 1/o_i = k - 4 + 24/N` for a positive integer `N`,
//! 3. every `o_i` divides `N`,
//! 4. the product of discriminant orders is not a perfect square,
//! 5. `k` is 4 or 5.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use num_traits::Zero;

use crate::ade::{self, table1, AdeType, StabilizerRecord};
use crate::{Error, Rational, Result};

/// Rank of the quotient root lattice of an exceptional group.
pub const TARGET_RANK: u32 = 20;

fn record_for(t: AdeType) -> Option<&'static StabilizerRecord> {
    table1().iter().find(|r| r.ade == t)
}

/// Why a type is outside the twelve-letter alphabet.
fn alphabet_reason(t: AdeType) -> String {
    let o = t.stabilizer_order();
    let mut reason = format!(
        "stabilizer of order {o} contains an element of order {} > 8",
        max_element_order(t)
    );
    if t == AdeType::a(10) {
        reason.push_str("; two A10 points are the excluded order-11 case with square discriminant 121");
    } else if t == AdeType::a(14) {
        reason.push_str("; A14+A4+A2 is the excluded order-15 case with square discriminant 225");
    }
    reason
}

/// Largest element order in the stabilizer group of the given type.
fn max_element_order(t: AdeType) -> u64 {
    let n = t.rank() as u64;
    match t.family() {
        ade::Family::A => n + 1,
        // binary dihedral of order 4(n-2) has a cyclic subgroup of order 2(n-2)
        ade::Family::D => 2 * (n - 2),
        ade::Family::E => match n {
            6 => 6,
            7 => 8,
            _ => 10,
        },
    }
}

/// A canonically sorted multiset over the twelve stabilizer types.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingConfig {
    types: Vec<AdeType>,
}

impl SingConfig {
    pub fn new(mut types: Vec<AdeType>) -> Result<Self> {
        if let Some(&bad) = types.iter().find(|&&t| record_for(t).is_none()) {
            return Err(Error::OutsideAlphabet {
                ade: bad.to_string(),
                reason: alphabet_reason(bad),
            });
        }
        types.sort();
        Ok(Self { types })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(ade::parse_multiset(s)?)
    }

    pub fn types(&self) -> &[AdeType] {
        &self.types
    }

    pub fn k(&self) -> usize {
        self.types.len()
    }

    pub fn rank(&self) -> u32 {
        self.records().map(|r| r.c_x).sum()
    }

    pub fn orders(&self) -> Vec<u64> {
        self.records().map(|r| r.o_x).collect()
    }

    pub fn disc_product(&self) -> u128 {
        ade::disc_order(&self.types)
    }

    fn records(&self) -> impl Iterator<Item = &'static StabilizerRecord> + '_ {
        self.types
            .iter()
            .map(|&t| record_for(t).expect("validated on construction"))
    }

    /// `A_2A_4A_4A_6D_4`
    pub fn concat(&self) -> String {
        ade::concat_tokens(&self.types)
    }

    /// `A2,A4,A4,A6,D4`
    pub fn comma(&self) -> String {
        ade::comma_tokens(&self.types)
    }
}

impl fmt::Display for SingConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.concat())
    }
}

/// `sum 1/o_i - (k - 4)`.
fn slack(orders: &[u64]) -> Rational {
    orders
        .iter()
        .map(|&o| Rational::new(1, o as i128))
        .fold(Rational::zero(), |a, b| a + b)
        - Rational::from_integer(orders.len() as i128 - 4)
}

/// The group order forced by the stabilizer orders, if any: `24 / s` must be a
/// positive integer divisible by every `o_i`.
pub fn candidate_order_for(orders: &[u64]) -> Option<u64> {
    let s = slack(orders);
    if s <= Rational::zero() {
        return None;
    }
    let n = Rational::from_integer(24) / s;
    if !n.is_integer() {
        return None;
    }
    let n = u64::try_from(*n.numer()).ok()?;
    orders.iter().all(|&o| n % o == 0).then_some(n)
}

pub fn candidate_order(config: &SingConfig) -> Option<u64> {
    candidate_order_for(&config.orders())
}

/// Pass/fail of each constraint for a proposed (configuration, order) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintReport {
    /// Every type is one of the twelve stabilizer types.
    pub alphabet: bool,
    pub rank_sum: bool,
    pub rational_identity: bool,
    pub divisibility: bool,
    pub nonsquare_discriminant: bool,
    pub k_in_4_5: bool,
}

impl ConstraintReport {
    pub fn all_pass(&self) -> bool {
        self.alphabet
            && self.rank_sum
            && self.rational_identity
            && self.divisibility
            && self.nonsquare_discriminant
            && self.k_in_4_5
    }

    pub fn verdicts(&self) -> [(&'static str, bool); 6] {
        [
            ("alphabet", self.alphabet),
            ("(i) rank sum = 20", self.rank_sum),
            ("(ii) sum 1/o = k - 4 + 24/N", self.rational_identity),
            ("(iii) o_i | N", self.divisibility),
            ("(iv) discriminant not a square", self.nonsquare_discriminant),
            ("(v) k in {4, 5}", self.k_in_4_5),
        ]
    }
}

/// Evaluates every constraint independently.
///
/// The component counts `c_i` of (i) come from the stabilizer table, so a type
/// outside the alphabet fails (i) whatever its rank. The orders in (ii) and
/// (iii) use the general stabilizer order of each family.
pub fn check_constraints(types: &[AdeType], n: u64) -> ConstraintReport {
    let orders: Vec<u64> = types.iter().map(|t| t.stabilizer_order()).collect();
    let alphabet = types.iter().all(|&t| record_for(t).is_some());
    let rank: u32 = types.iter().map(|t| t.rank()).sum();
    let k = types.len();
    let identity = n > 0 && slack(&orders) == Rational::new(24, n as i128);
    ConstraintReport {
        alphabet,
        rank_sum: alphabet && rank == TARGET_RANK,
        rational_identity: identity,
        divisibility: n > 0 && orders.iter().all(|&o| n.is_multiple_of(o)),
        nonsquare_discriminant: !ade::is_square(ade::disc_order(types)),
        k_in_4_5: k == 4 || k == 5,
    }
}

/// One accepted (group order, configuration) pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListEntry {
    pub order: u64,
    pub config: SingConfig,
}

impl ListEntry {
    /// Descending order first, then the configuration.
    fn sort_key(&self) -> (std::cmp::Reverse<u64>, &SingConfig) {
        (std::cmp::Reverse(self.order), &self.config)
    }

    pub fn order_string(&self) -> String {
        ade::format_factorization(self.order as u128)
    }
}

impl PartialOrd for ListEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ListEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumOptions {
    pub k_range: RangeInclusive<usize>,
    pub require_rank20: bool,
    pub require_nonsquare: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            k_range: 4..=5,
            require_rank20: true,
            require_nonsquare: true,
        }
    }
}

/// Enumerates every accepted configuration with `k` in the requested range,
/// sorted by descending order and then by configuration.
pub fn enumerate_list(opts: &EnumOptions) -> Vec<ListEntry> {
    enumerate_over(table1(), opts)
}

/// Same search restricted to a sub-alphabet (used by tests).
pub fn enumerate_over(alphabet: &[StabilizerRecord], opts: &EnumOptions) -> Vec<ListEntry> {
    let k_max = (*opts.k_range.end()).min(20);
    let mut search = Search {
        alphabet,
        opts,
        k_max,
        stack: Vec::with_capacity(k_max),
        found: BTreeSet::new(),
    };
    search.descend(0, 0, Rational::zero());
    search.found.into_iter().collect()
}

struct Search<'a> {
    alphabet: &'a [StabilizerRecord],
    opts: &'a EnumOptions,
    k_max: usize,
    stack: Vec<usize>,
    found: BTreeSet<ListEntry>,
}

impl Search<'_> {
    fn descend(&mut self, start: usize, rank: u32, inv_sum: Rational) {
        let k = self.stack.len();
        // Each extra type adds 1/o - 1 < 0 to the slack, so a non-positive slack is final.
        let slack = inv_sum - Rational::from_integer(k as i128 - 4);
        if slack <= Rational::zero() {
            return;
        }
        if k >= 1 && self.opts.k_range.contains(&k) {
            self.consider(rank);
        }
        if k == self.k_max {
            return;
        }
        for i in start..self.alphabet.len() {
            let rec = &self.alphabet[i];
            let r = rank + rec.c_x;
            if self.opts.require_rank20 && r > TARGET_RANK {
                continue;
            }
            self.stack.push(i);
            self.descend(i, r, inv_sum + Rational::new(1, rec.o_x as i128));
            self.stack.pop();
        }
    }

    fn consider(&mut self, rank: u32) {
        if self.opts.require_rank20 && rank != TARGET_RANK {
            return;
        }
        let orders: Vec<u64> = self.stack.iter().map(|&i| self.alphabet[i].o_x).collect();
        let Some(order) = candidate_order_for(&orders) else {
            return;
        };
        if self.opts.require_nonsquare {
            let d: u128 = self.stack.iter().map(|&i| self.alphabet[i].d_x as u128).product();
            if ade::is_square(d) {
                return;
            }
        }
        let types = self.stack.iter().map(|&i| self.alphabet[i].ade).collect();
        let config = SingConfig::new(types).expect("alphabet types");
        self.found.insert(ListEntry { order, config });
    }
}

/// Parses the transcription: one `order lattice` pair per line, the order as a
/// prime-power product (`2^6.3^2.5.7`) and the lattice concatenated
/// (`A_2A_4A_4A_6D_4`). Several comma-separated lattices per line are accepted.
pub fn parse_table2(text: &str) -> Result<Vec<ListEntry>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = |reason: String| Error::Malformed {
            line: idx + 1,
            reason,
        };
        let (order_str, lattices) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| malformed("expected `order lattice`".into()))?;
        let order = ade::parse_factorization(order_str)
            .ok_or_else(|| malformed(format!("bad order {order_str:?}")))?;
        for lat in lattices.split(',').map(str::trim).filter(|l| !l.is_empty()) {
            let types = ade::parse_multiset(lat).map_err(|e| malformed(e.to_string()))?;
            let config = SingConfig::new(types).map_err(|e| malformed(e.to_string()))?;
            out.push(ListEntry { order, config });
        }
    }
    out.sort();
    Ok(out)
}

/// Entries of the reference missing from a result, and result entries absent
/// from the reference.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table2Diff {
    pub missing: Vec<ListEntry>,
    pub extra: Vec<ListEntry>,
}

impl Table2Diff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

pub fn diff_entries(entries: &[ListEntry], reference: &[ListEntry]) -> Table2Diff {
    let got: BTreeSet<&ListEntry> = entries.iter().collect();
    let want: BTreeSet<&ListEntry> = reference.iter().collect();
    Table2Diff {
        missing: want.difference(&got).map(|&e| e.clone()).collect(),
        extra: got.difference(&want).map(|&e| e.clone()).collect(),
    }
}

/// Diffs against a list transcription given as text.
pub fn verify_table2_text(entries: &[ListEntry], table2: &str) -> Result<Table2Diff> {
    Ok(diff_entries(entries, &parse_table2(table2)?))
}

/// Diffs against the bundled transcription.
pub fn verify_table2(entries: &[ListEntry]) -> Result<Table2Diff> {
    verify_table2_text(entries, crate::data::TABLE2)
}

/// Groups entries by order, preserving the canonical order.
pub fn group_by_order(entries: &[ListEntry]) -> Vec<(u64, Vec<&SingConfig>)> {
    let mut out: Vec<(u64, Vec<&SingConfig>)> = Vec::new();
    for e in entries {
        match out.last_mut() {
            Some((n, v)) if *n == e.order => v.push(&e.config),
            _ => out.push((e.order, vec![&e.config])),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> SingConfig {
        SingConfig::parse(s).unwrap()
    }

    #[test]
    fn candidate_order_examples() {
        assert_eq!(candidate_order(&cfg("A2,A4,A4,A6,D4")), Some(20160));
        assert_eq!(candidate_order(&cfg("A3,A3,A4,A4,A6")), Some(560));
        assert_eq!(candidate_order(&cfg("A2,D4,E7,E7")), Some(48));
        let c = cfg("A1,A1,A1,A3,E7,E7");
        assert_eq!(c.rank(), 20);
        assert_eq!(candidate_order(&c), None);
    }

    #[test]
    fn candidate_order_on_raw_orders() {
        for (orders, n) in [
            ([2, 2, 2, 2], 12),
            ([3, 3, 3, 3], 18),
            ([5, 5, 5, 5], 30),
            ([7, 7, 7, 7], 42),
            ([8, 8, 8, 8], 48),
            ([12, 12, 12, 12], 72),
            ([16, 16, 16, 16], 96),
        ] {
            assert_eq!(candidate_order_for(&orders), Some(n), "{orders:?}");
        }
        // s = 7/8: 24/s is not an integer
        assert_eq!(candidate_order_for(&[2, 8, 8, 8]), None);
        // s = 3/2 gives N = 16, but 3 does not divide 16
        assert_eq!(candidate_order_for(&[2, 3, 3, 3]), None);
        // k = 9 already has s < 0
        assert_eq!(candidate_order_for(&[2; 9]), None);
    }

    #[test]
    fn constraint_reports() {
        let r = check_constraints(cfg("A2,A4,A4,A6,D4").types(), 20160);
        assert!(r.all_pass());
        let r = check_constraints(cfg("A2,A4,A4,A4,A6").types(), 315);
        assert!(r.all_pass());
        let a10 = [AdeType::a(10), AdeType::a(10)];
        for n in [1, 11, 24, 121] {
            let r = check_constraints(&a10, n);
            assert!(!r.rank_sum);
            assert!(!r.alphabet);
            assert!(!r.nonsquare_discriminant);
        }
        let r = check_constraints(cfg("A2,A4,A4,A6,D4").types(), 20161);
        assert!(!r.rational_identity && !r.divisibility);
        assert!(r.rank_sum && r.nonsquare_discriminant && r.k_in_4_5);
    }

    #[test]
    fn alphabet_rejection() {
        let err = SingConfig::parse("A10,A10").unwrap_err();
        match err {
            Error::OutsideAlphabet { ade, reason } => {
                assert_eq!(ade, "A10");
                assert!(reason.contains("121"), "{reason}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(SingConfig::parse("E8").is_err());
        assert!(SingConfig::parse("D7").is_err());
        assert!(SingConfig::parse("A8").is_err());
    }

    #[test]
    fn small_k_is_empty() {
        let opts = EnumOptions {
            k_range: 1..=3,
            ..Default::default()
        };
        assert!(enumerate_list(&opts).is_empty());
    }

    #[test]
    fn table2_parsing() {
        let rows = parse_table2("2^4.3 A_2D_4E_7E_7, A_3A_5E_6E_6\n# c\n\n").unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|e| e.order == 48));
        assert!(parse_table2("2^x A_2").is_err());
        assert!(parse_table2("48").is_err());
        assert!(parse_table2("48 A_{10}A_{10}").is_err());
        assert!(parse_table2("48 B_2").is_err());
    }

    #[test]
    fn diff_detects_missing_and_extra() {
        let table = parse_table2(crate::data::TABLE2).unwrap();
        let mut fewer = table.clone();
        let dropped = fewer.remove(3);
        let d = diff_entries(&fewer, &table);
        assert_eq!(d.missing, vec![dropped]);
        assert!(d.extra.is_empty());

        let mut more = table.clone();
        let fake = ListEntry {
            order: 7,
            config: cfg("A1,A1,A1,A1"),
        };
        more.push(fake.clone());
        let d = diff_entries(&more, &table);
        assert_eq!(d.extra, vec![fake]);
        assert!(d.missing.is_empty());
        assert!(verify_table2_text(&table, "oops").is_err());
    }

    #[test]
    fn grouping_preserves_order() {
        let table = parse_table2(crate::data::TABLE2).unwrap();
        let groups = group_by_order(&table);
        assert_eq!(groups.len(), 24);
        assert_eq!(groups[0].0, 20160);
        assert_eq!(groups.last().unwrap().0, 48);
        assert!(groups.windows(2).all(|w| w[0].0 > w[1].0));
    }
}
