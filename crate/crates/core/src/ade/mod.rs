//! ADE root lattices: Dynkin types, Gram matrices, discriminant groups and
//! the arithmetic used by the singularity constraints.

mod catalog;
mod smith;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive};

pub use catalog::{parse_table1, table1, AbelianInvariants, StabilizerRecord};
pub use smith::{smith_normal_form, IntMatrix, SmithForm};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

/// A simply-laced Dynkin type `A_n`, `D_n` or `E_n`.
///
/// Ordered by family, then rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdeType {
    family: Family,
    rank: u32,
}

impl AdeType {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let reason = match family {
            Family::A if rank < 1 => Some("A_n needs n >= 1"),
            Family::D if rank < 4 => Some("D_n needs n >= 4"),
            Family::E if !(6..=8).contains(&rank) => Some("E_n needs n in {6, 7, 8}"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(Error::InvalidAdeType {
                family: family.letter(),
                rank,
                reason,
            }),
            None => Ok(Self { family, rank }),
        }
    }

    pub fn a(rank: u32) -> Self {
        Self::new(Family::A, rank).expect("valid A_n")
    }

    pub fn d(rank: u32) -> Self {
        Self::new(Family::D, rank).expect("valid D_n")
    }

    pub fn e(rank: u32) -> Self {
        Self::new(Family::E, rank).expect("valid E_n")
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> u32 {
        self.rank
    }

    /// Order of the finite subgroup of SL2 whose quotient singularity has this type:
    /// cyclic `n+1`, binary dihedral `4(n-2)`, binary tetrahedral/octahedral/icosahedral.
    pub fn stabilizer_order(self) -> u64 {
        let n = self.rank as u64;
        match self.family {
            Family::A => n + 1,
            Family::D => 4 * (n - 2),
            Family::E => match n {
                6 => 24,
                7 => 48,
                _ => 120,
            },
        }
    }

    /// Pairs of adjacent Dynkin nodes, 0-based.
    ///
    /// `A_n` is a path; `D_n` is a path on the first `n-2` nodes with the last two
    /// nodes attached to node `n-2`; `E_n` is a path on the first `n-1` nodes with
    /// the last node attached to node 3 (1-based).
    pub fn edges(self) -> Vec<(usize, usize)> {
        let n = self.rank as usize;
        match self.family {
            Family::A => (1..n).map(|i| (i - 1, i)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..n - 2).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 2));
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((2, n - 1));
                e
            }
        }
    }

    /// Token in the concatenated style `A_2`, `A_{10}`.
    pub fn subscript_token(self) -> String {
        if self.rank >= 10 {
            format!("{}_{{{}}}", self.family.letter(), self.rank)
        } else {
            format!("{}_{}", self.family.letter(), self.rank)
        }
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for AdeType {
    type Err = Error;

    /// Accepts `A2`, `A_2` and `A_{10}`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::AdeParse(s.to_string());
        let mut chars = t.chars();
        let family = match chars.next().ok_or_else(bad)? {
            'A' | 'a' => Family::A,
            'D' | 'd' => Family::D,
            'E' | 'e' => Family::E,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        let digits = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(rest);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let rank: u32 = digits.parse().map_err(|_| bad())?;
        AdeType::new(family, rank)
    }
}

/// Splits a concatenated lattice string such as `A_2A_4A_4A_6D_4` or a
/// comma-separated list such as `A2,A4,A4,A6,D4`.
pub fn parse_multiset(s: &str) -> Result<Vec<AdeType>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let pieces: Vec<String> = if s.contains(',') || s.contains('+') {
        s.split([',', '+']).map(|p| p.trim().to_string()).collect()
    } else {
        let mut out: Vec<String> = Vec::new();
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            if matches!(ch, 'A' | 'D' | 'E' | 'a' | 'd' | 'e') {
                out.push(String::new());
            }
            match out.last_mut() {
                Some(cur) => cur.push(ch),
                None => return Err(Error::AdeParse(s.to_string())),
            }
        }
        out
    };
    let mut types = pieces
        .iter()
        .map(|p| p.parse())
        .collect::<Result<Vec<AdeType>>>()?;
    types.sort();
    Ok(types)
}

/// Concatenated display form, e.g. `A_2A_4A_4A_6D_4`.
pub fn concat_tokens(types: &[AdeType]) -> String {
    types.iter().map(|t| t.subscript_token()).collect()
}

/// Comma-separated form, e.g. `A2,A4,A4,A6,D4`.
pub fn comma_tokens(types: &[AdeType]) -> String {
    types
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Negative-definite Gram matrix: `-2` on the diagonal, `1` for adjacent nodes.
pub fn gram_matrix(t: AdeType) -> Vec<Vec<i64>> {
    let n = t.rank as usize;
    let mut g = vec![vec![0i64; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (i, j) in t.edges() {
        g[i][j] = 1;
        g[j][i] = 1;
    }
    g
}

/// Gram matrix of an orthogonal sum.
pub fn block_gram_matrix(types: &[AdeType]) -> IntMatrix {
    types.iter().fold(IntMatrix::zeros(0, 0), |acc, &t| {
        acc.direct_sum(&IntMatrix::from_rows(&gram_matrix(t)))
    })
}

/// Invariant factors of `L^* / L`, i.e. the non-unit Smith diagonal of the Gram matrix.
pub fn discriminant_group(t: AdeType) -> AbelianInvariants {
    let snf = smith_normal_form(&IntMatrix::from_rows(&gram_matrix(t)));
    let factors = snf
        .diagonal_entries()
        .into_iter()
        .map(|d| d.abs().to_u64().expect("discriminant factor fits in u64"))
        .filter(|&d| d > 1)
        .collect();
    AbelianInvariants::new(factors).expect("Smith diagonal forms a divisibility chain")
}

/// Order of the discriminant group of an orthogonal sum.
pub fn disc_order(types: &[AdeType]) -> u128 {
    types
        .iter()
        .map(|&t| discriminant_group(t).order() as u128)
        .product()
}

/// `|det|` of the block Gram matrix, an independent route to [`disc_order`].
pub fn gram_determinant_abs(types: &[AdeType]) -> BigInt {
    block_gram_matrix(types).determinant().abs()
}

pub fn is_square(n: u128) -> bool {
    let r = n.sqrt();
    r * r == n
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut q: u128 = 2;
    while q * q <= n {
        let mut e = 0;
        while n.is_multiple_of(q) {
            n /= q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `2^6.3^2.5.7` style rendering of a factorization.
pub fn format_factorization(n: u128) -> String {
    if n == 1 {
        return "1".into();
    }
    factorize(n)
        .into_iter()
        .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(".")
}

/// Parses `2^6.3^2.5.7` back into an integer.
pub fn parse_factorization(s: &str) -> Option<u64> {
    s.trim().split('.').try_fold(1u64, |acc, part| {
        let (base, exp) = match part.split_once('^') {
            Some((b, e)) => (b.parse::<u64>().ok()?, e.parse::<u32>().ok()?),
            None => (part.parse::<u64>().ok()?, 1),
        };
        acc.checked_mul(base.checked_pow(exp)?)
    })
}

/// Minimal number of generators of the `l`-primary part of the discriminant
/// group of the orthogonal sum.
pub fn l_part_generator_count(types: &[AdeType], l: u64) -> Result<usize> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    Ok(types
        .iter()
        .map(|&t| {
            discriminant_group(t)
                .factors()
                .iter()
                .filter(|&&d| d % l == 0)
                .count()
        })
        .sum())
}
