//! The Mathieu character `epsilon(n) = 24 / (n * prod_{q | n} (1 + 1/q))`,
//! the invariant dimension `mu(G)` obtained by averaging it over a group, and
//! the point-count identity relating stabilizer orders to `mu`.
//!
//! Everything is exact rational arithmetic.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::{Error, Rational, Result};

/// Orders up to this bound are admissible for tame symplectic automorphisms.
pub const MAX_TAME_ORDER: u64 = 8;

/// Number of group elements of each order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrderHistogram {
    entries: BTreeMap<u64, u64>,
}

impl OrderHistogram {
    /// Builds a histogram, checking that the identity appears exactly once and
    /// that no order or count is zero.
    pub fn new(entries: BTreeMap<u64, u64>) -> Result<Self> {
        let hist = Self { entries };
        hist.validate()?;
        Ok(hist)
    }

    /// Like [`OrderHistogram::new`], additionally checking the total against a
    /// known group order and that every element order divides it.
    pub fn with_group_order(entries: BTreeMap<u64, u64>, group_order: u64) -> Result<Self> {
        let hist = Self::new(entries)?;
        if hist.total() != group_order {
            return Err(Error::Histogram(format!(
                "total count {} differs from group order {group_order}",
                hist.total()
            )));
        }
        if let Some(bad) = hist.entries.keys().find(|&&d| !group_order.is_multiple_of(d)) {
            return Err(Error::Histogram(format!(
                "element order {bad} does not divide group order {group_order}"
            )));
        }
        Ok(hist)
    }

    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(order, count) in pairs {
            *map.entry(order).or_insert(0) += count;
        }
        Self::new(map)
    }

    fn validate(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::Histogram("empty histogram".into()));
        }
        match self.entries.get(&1) {
            Some(1) => {}
            Some(c) => {
                return Err(Error::Histogram(format!(
                    "identity must be counted once, found {c}"
                )))
            }
            None => return Err(Error::Histogram("missing identity entry".into())),
        }
        if self.entries.contains_key(&0) {
            return Err(Error::Histogram("element order 0".into()));
        }
        if self.entries.values().any(|&c| c == 0) {
            return Err(Error::Histogram("zero count".into()));
        }
        Ok(())
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn count(&self, order: u64) -> u64 {
        self.entries.get(&order).copied().unwrap_or(0)
    }

    pub fn max_order(&self) -> u64 {
        self.entries.keys().next_back().copied().unwrap_or(1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&o, &c)| (o, c))
    }

    pub fn entries(&self) -> &BTreeMap<u64, u64> {
        &self.entries
    }
}

impl std::fmt::Display for OrderHistogram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.iter().map(|(o, c)| format!("{o}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            primes.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// `epsilon(n)`: the value of the Mathieu character on an element of order `n`.
pub fn epsilon(n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    // n * prod (1 + 1/q) = prod over q^a || n of q^(a-1) * (q + 1)
    let mut denom = n as i128;
    for q in prime_divisors(n) {
        denom = denom / q as i128 * (q as i128 + 1);
    }
    Ok(Rational::new(24, denom))
}

/// Average of `epsilon` over the elements recorded in the histogram.
pub fn mu(hist: &OrderHistogram) -> Result<Rational> {
    hist.validate()?;
    let mut sum = Rational::zero();
    for (order, count) in hist.iter() {
        sum += epsilon(order)? * Rational::from_integer(count as i128);
    }
    Ok(sum / Rational::from_integer(hist.total() as i128))
}

pub fn is_tame_order(n: u64) -> bool {
    (1..=MAX_TAME_ORDER).contains(&n)
}

/// Tests `sum 1/o_i == 24/N + k - mu` where `k` is the number of orders.
pub fn check_point_count_relation(orders: &[u64], group_order: u64, mu_value: Rational) -> bool {
    if group_order == 0 || orders.contains(&0) {
        return false;
    }
    let lhs: Rational = orders
        .iter()
        .map(|&o| Rational::new(1, o as i128))
        .fold(Rational::zero(), |a, b| a + b);
    let rhs = Rational::new(24, group_order as i128)
        + Rational::from_integer(orders.len() as i128)
        - mu_value;
    lhs == rhs
}

/// `24 - rank`, the value of `mu` forced by a quotient root lattice of the given rank.
pub fn mu_from_rank(rank: u32) -> Rational {
    Rational::from_integer(24 - rank as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(1).unwrap(), q(24, 1));
        let expected = [(2, 8), (3, 6), (4, 4), (5, 4), (6, 2), (7, 3), (8, 2)];
        for (n, f) in expected {
            assert_eq!(epsilon(n).unwrap(), q(f, 1), "n = {n}");
        }
        assert_eq!(epsilon(12).unwrap(), q(1, 1));
        assert!(epsilon(0).is_err());
    }

    #[test]
    fn epsilon_non_integer_beyond_tame_range() {
        // 24 / (11 * 12/11) = 2, 24 / (9 * 4/3) = 2, 24 / (10 * 3/2 * 6/5) = 4/3
        assert_eq!(epsilon(11).unwrap(), q(2, 1));
        assert_eq!(epsilon(9).unwrap(), q(2, 1));
        assert_eq!(epsilon(10).unwrap(), q(4, 3));
    }

    #[test]
    fn mu_examples() {
        let trivial = OrderHistogram::from_pairs(&[(1, 1)]).unwrap();
        assert_eq!(mu(&trivial).unwrap(), q(24, 1));
        let a6 = OrderHistogram::from_pairs(&[(1, 1), (2, 45), (3, 80), (4, 90), (5, 144)]).unwrap();
        assert_eq!(mu(&a6).unwrap(), q(5, 1));
        let c2 = OrderHistogram::from_pairs(&[(1, 1), (2, 1)]).unwrap();
        assert_eq!(mu(&c2).unwrap(), q(16, 1));
    }

    #[test]
    fn histogram_validation() {
        assert!(OrderHistogram::from_pairs(&[(2, 1)]).is_err());
        assert!(OrderHistogram::from_pairs(&[(1, 2)]).is_err());
        assert!(OrderHistogram::new(BTreeMap::new()).is_err());
        let map: BTreeMap<u64, u64> = [(1, 1), (2, 1)].into_iter().collect();
        assert!(OrderHistogram::with_group_order(map.clone(), 2).is_ok());
        assert!(OrderHistogram::with_group_order(map.clone(), 3).is_err());
        let map: BTreeMap<u64, u64> = [(1, 1), (3, 2)].into_iter().collect();
        assert!(OrderHistogram::with_group_order(map, 3).is_ok());
        let map: BTreeMap<u64, u64> = [(1, 1), (3, 1), (2, 1)].into_iter().collect();
        assert!(OrderHistogram::with_group_order(map, 3).is_err());
    }

    #[test]
    fn tame_orders() {
        assert!(is_tame_order(1));
        assert!(is_tame_order(8));
        assert!(!is_tame_order(9));
        assert!(!is_tame_order(0));
    }

    #[test]
    fn point_count_relation() {
        assert!(check_point_count_relation(&[3, 5, 5, 7, 8], 20160, q(4, 1)));
        assert!(check_point_count_relation(&[2, 2, 7, 7, 7], 56, q(4, 1)));
        assert!(!check_point_count_relation(&[3, 8, 48, 48], 48, q(5, 1)));
        assert_eq!(mu_from_rank(20), q(4, 1));
    }
}
