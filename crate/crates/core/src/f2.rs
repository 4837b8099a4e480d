//! Linear and affine algebra over F2 in dimension 4.
//!
//! A vector is a 4-bit mask with coordinate 1 in the least significant bit, so
//! the column vector `(b1, b2, b3, b4)` is `b1 | b2<<1 | b3<<2 | b4<<3` and the
//! string form `"0101"` lists `b1 b2 b3 b4` left to right. A matrix stores its
//! rows the same way: row `i` bit `j` is the entry in row `i+1`, column `j+1`.
//! Matrices act on column vectors: `(m v)_i = sum_j m_ij v_j`.
//!
//! Worked example: `x = 1100/0110/0011/0001` and `c = 0101` (that is
//! `(0,1,0,1)`) give `x c = (1, 1, 1, 1)`, since the rows `1100`, `0110`,
//! `0011`, `0001` each meet `0101` in exactly one position.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::perm::{PermGroup, Permutation};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct F2Vec4(u8);

impl F2Vec4 {
    pub const ZERO: F2Vec4 = F2Vec4(0);

    pub fn new(bits: u8) -> Self {
        assert!(bits < 16, "F2Vec4 holds 4 bits");
        F2Vec4(bits)
    }

    pub fn from_coords(c: [u8; 4]) -> Self {
        F2Vec4(c.iter().enumerate().fold(0, |acc, (i, &b)| acc | ((b & 1) << i)))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn coord(self, i: usize) -> u8 {
        (self.0 >> i) & 1
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn all() -> impl Iterator<Item = F2Vec4> {
        (0u8..16).map(F2Vec4)
    }

    pub fn nonzero() -> impl Iterator<Item = F2Vec4> {
        (1u8..16).map(F2Vec4)
    }
}

impl std::ops::Add for F2Vec4 {
    type Output = F2Vec4;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: F2Vec4) -> F2Vec4 {
        F2Vec4(self.0 ^ rhs.0)
    }
}

impl fmt::Display for F2Vec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..4 {
            write!(f, "{}", self.coord(i))?;
        }
        Ok(())
    }
}

impl FromStr for F2Vec4 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Malformed {
            line: 0,
            reason: format!("expected 4 bits, got {s:?}"),
        };
        if s.len() != 4 {
            return Err(bad());
        }
        let mut bits = 0u8;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(bad()),
            }
        }
        Ok(F2Vec4(bits))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F2Mat4 {
    rows: [u8; 4],
}

impl F2Mat4 {
    pub const IDENTITY: F2Mat4 = F2Mat4 {
        rows: [0b0001, 0b0010, 0b0100, 0b1000],
    };

    pub fn from_rows(rows: [u8; 4]) -> Self {
        assert!(rows.iter().all(|&r| r < 16), "rows hold 4 bits");
        F2Mat4 { rows }
    }

    /// Packs the 16 entries into one word, row 1 in the low nibble.
    pub fn to_u16(self) -> u16 {
        self.rows
            .iter()
            .enumerate()
            .fold(0u16, |acc, (i, &r)| acc | ((r as u16) << (4 * i)))
    }

    pub fn from_u16(w: u16) -> Self {
        F2Mat4 {
            rows: [0, 1, 2, 3].map(|i| ((w >> (4 * i)) & 0xf) as u8),
        }
    }

    pub fn rows(self) -> [u8; 4] {
        self.rows
    }

    pub fn entry(self, i: usize, j: usize) -> u8 {
        (self.rows[i] >> j) & 1
    }

    pub fn apply(self, v: F2Vec4) -> F2Vec4 {
        let mut out = 0u8;
        for (i, &r) in self.rows.iter().enumerate() {
            out |= (((r & v.0).count_ones() & 1) as u8) << i;
        }
        F2Vec4(out)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: F2Mat4) -> F2Mat4 {
        let mut rows = [0u8; 4];
        for (i, out) in rows.iter_mut().enumerate() {
            for k in 0..4 {
                if self.entry(i, k) == 1 {
                    *out ^= rhs.rows[k];
                }
            }
        }
        F2Mat4 { rows }
    }

    pub fn transpose(self) -> F2Mat4 {
        let mut rows = [0u8; 4];
        for (i, out) in rows.iter_mut().enumerate() {
            for j in 0..4 {
                *out |= self.entry(j, i) << j;
            }
        }
        F2Mat4 { rows }
    }

    pub fn pow(self, e: u32) -> F2Mat4 {
        (0..e).fold(F2Mat4::IDENTITY, |acc, _| acc.mul(self))
    }

    pub fn rank(self) -> u32 {
        let mut rows = self.rows;
        let mut rank = 0;
        for col in 0..4 {
            let Some(p) = (rank as usize..4).find(|&r| (rows[r] >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(rank as usize, p);
            let pivot = rows[rank as usize];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank as usize && (*row >> col) & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(self) -> bool {
        self.rank() == 4
    }

    /// Least `e >= 1` with `m^e = 1`, or `None` for a singular matrix.
    pub fn order(self) -> Option<u32> {
        if !self.is_invertible() {
            return None;
        }
        let mut acc = self;
        let mut e = 1;
        while acc != F2Mat4::IDENTITY {
            acc = acc.mul(self);
            e += 1;
        }
        Some(e)
    }

    pub fn inverse(self) -> Option<F2Mat4> {
        let e = self.order()?;
        Some(self.pow(e - 1))
    }

    /// Every invertible 4x4 matrix.
    pub fn general_linear_group() -> Vec<F2Mat4> {
        (0..=u16::MAX)
            .map(F2Mat4::from_u16)
            .filter(|m| m.is_invertible())
            .collect()
    }
}

impl fmt::Display for F2Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|&r| F2Vec4(r).to_string()).collect();
        write!(f, "{}", rows.join("/"))
    }
}

impl FromStr for F2Mat4 {
    type Err = Error;

    /// `"1100/0110/0011/0001"`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split('/').collect();
        if parts.len() != 4 {
            return Err(Error::Malformed {
                line: 0,
                reason: format!("expected 4 rows separated by '/', got {s:?}"),
            });
        }
        let mut rows = [0u8; 4];
        for (row, part) in rows.iter_mut().zip(parts) {
            *row = part.parse::<F2Vec4>()?.0;
        }
        Ok(F2Mat4 { rows })
    }
}

pub fn mat_mul(a: F2Mat4, b: F2Mat4) -> F2Mat4 {
    a.mul(b)
}

pub fn mat_apply(m: F2Mat4, v: F2Vec4) -> F2Vec4 {
    m.apply(v)
}

pub fn mat_order(m: F2Mat4) -> Option<u32> {
    m.order()
}

/// `v -> linear * v + translation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap4 {
    pub linear: F2Mat4,
    pub translation: F2Vec4,
}

impl AffineMap4 {
    pub const IDENTITY: AffineMap4 = AffineMap4 {
        linear: F2Mat4::IDENTITY,
        translation: F2Vec4::ZERO,
    };

    pub fn new(linear: F2Mat4, translation: F2Vec4) -> Result<Self> {
        if !linear.is_invertible() {
            return Err(Error::Relation(format!("linear part {linear} is singular")));
        }
        Ok(Self {
            linear,
            translation,
        })
    }

    pub fn linear(m: F2Mat4) -> Result<Self> {
        Self::new(m, F2Vec4::ZERO)
    }

    pub fn translation(a: F2Vec4) -> Self {
        Self {
            linear: F2Mat4::IDENTITY,
            translation: a,
        }
    }

    /// `t_b o m`: apply `m`, then translate by `b`.
    pub fn translate_after(b: F2Vec4, m: F2Mat4) -> Result<Self> {
        Self::new(m, b)
    }

    pub fn apply(&self, v: F2Vec4) -> F2Vec4 {
        self.linear.apply(v) + self.translation
    }

    /// `self o other`: apply `other` first.
    pub fn after(&self, other: &AffineMap4) -> AffineMap4 {
        AffineMap4 {
            linear: self.linear.mul(other.linear),
            translation: self.linear.apply(other.translation) + self.translation,
        }
    }

    pub fn pow(&self, e: u32) -> AffineMap4 {
        (0..e).fold(AffineMap4::IDENTITY, |acc, _| self.after(&acc))
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineMap4::IDENTITY
    }
}

/// The induced permutation of the 16 vectors, indexed by bit value.
pub fn to_permutation(m: &AffineMap4) -> Permutation {
    let images: Vec<usize> = F2Vec4::all().map(|v| m.apply(v).0 as usize).collect();
    Permutation::from_images(&images).expect("invertible affine map is a bijection")
}

/// All matrices in the group generated by `gens`, up to `cap` elements.
pub fn generate_linear(gens: &[F2Mat4], cap: usize) -> Vec<F2Mat4> {
    let mut seen: HashSet<F2Mat4> = HashSet::from([F2Mat4::IDENTITY]);
    let mut out = vec![F2Mat4::IDENTITY];
    let mut k = 0;
    while k < out.len() && out.len() < cap {
        let m = out[k];
        for &g in gens {
            let n = m.mul(g);
            if seen.insert(n) {
                out.push(n);
            }
        }
        k += 1;
    }
    out
}

/// `x^4 = y^2 = (xy)^3 = 1` and `<x, y>` has order 24.
pub fn verify_s4_presentation(x: F2Mat4, y: F2Mat4) -> bool {
    if !x.is_invertible() || !y.is_invertible() {
        return false;
    }
    let id = F2Mat4::IDENTITY;
    x.pow(4) == id
        && y.pow(2) == id
        && x.mul(y).pow(3) == id
        && generate_linear(&[x, y], 25).len() == 24
}

fn orbit_sizes<F: Fn(u8) -> Vec<u8>>(points: &[u8], step: F) -> Vec<usize> {
    let mut seen = [false; 16];
    let mut sizes = Vec::new();
    for &p in points {
        if seen[p as usize] {
            continue;
        }
        seen[p as usize] = true;
        let mut stack = vec![p];
        let mut size = 0;
        while let Some(q) = stack.pop() {
            size += 1;
            for r in step(q) {
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    stack.push(r);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

/// Orbit sizes of `<gens>` on the 15 nonzero vectors, ascending.
pub fn linear_orbit_shape(gens: &[F2Mat4]) -> Vec<usize> {
    let points: Vec<u8> = (1..16).collect();
    orbit_sizes(&points, |v| gens.iter().map(|g| g.apply(F2Vec4(v)).0).collect())
}

/// Orbit sizes of affine maps on all 16 vectors, ascending.
pub fn affine_orbit_shape(gens: &[AffineMap4]) -> Vec<usize> {
    let points: Vec<u8> = (0..16).collect();
    orbit_sizes(&points, |v| gens.iter().map(|g| g.apply(F2Vec4(v)).0).collect())
}

/// Named matrices and vectors for the two affine constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineConstants {
    pub o48_x: F2Mat4,
    pub o48_y: F2Mat4,
    pub o48_a: F2Vec4,
    pub o96_x: F2Mat4,
    pub o96_y: F2Mat4,
    pub o96_a: F2Vec4,
    pub a_prime: F2Vec4,
    pub b: F2Vec4,
    pub c: F2Vec4,
}

impl AffineConstants {
    /// Parses `name = value` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Malformed {
                line: idx + 1,
                reason: format!("expected `name = value`, got {line:?}"),
            })?;
            map.insert(k.trim().to_string(), (idx + 1, v.trim().to_string()));
        }
        let get = |k: &str| {
            map.get(k)
                .ok_or_else(|| Error::MissingEntry(k.to_string()))
        };
        let mat = |k: &str| -> Result<F2Mat4> {
            let (line, v) = get(k)?;
            v.parse().map_err(|e: Error| Error::Malformed {
                line: *line,
                reason: format!("{k}: {e}"),
            })
        };
        let vec = |k: &str| -> Result<F2Vec4> {
            let (line, v) = get(k)?;
            v.parse().map_err(|e: Error| Error::Malformed {
                line: *line,
                reason: format!("{k}: {e}"),
            })
        };
        Ok(Self {
            o48_x: mat("o48_x")?,
            o48_y: mat("o48_y")?,
            o48_a: vec("o48_a")?,
            o96_x: mat("o96_x")?,
            o96_y: mat("o96_y")?,
            o96_a: vec("o96_a")?,
            a_prime: vec("o96_a_prime")?,
            b: vec("b")?,
            c: vec("c")?,
        })
    }

    pub fn bundled() -> Self {
        Self::parse(crate::data::AFFINE).expect("bundled constants parse")
    }
}

/// Checks `t_b x = x t_c` and `(t_b x)^4 = (t_c y)^2 = t_a`, returning the
/// generators `t_b x` and `t_c y`.
pub fn twisted_generators(
    x: F2Mat4,
    y: F2Mat4,
    a: F2Vec4,
    b: F2Vec4,
    c: F2Vec4,
) -> Result<[AffineMap4; 2]> {
    let f = AffineMap4::translate_after(b, x)?;
    let g = AffineMap4::translate_after(c, y)?;
    let x_tc = AffineMap4::linear(x)?.after(&AffineMap4::translation(c));
    if f != x_tc {
        return Err(Error::Relation(format!(
            "t_b x != x t_c for x = {x}, b = {b}, c = {c}"
        )));
    }
    let ta = AffineMap4::translation(a);
    let f4 = f.pow(4);
    if f4 != ta {
        return Err(Error::Relation(format!(
            "(t_b x)^4 = {f4:?} is not the translation by a = {a}"
        )));
    }
    let g2 = g.pow(2);
    if g2 != ta {
        return Err(Error::Relation(format!(
            "(t_c y)^2 = {g2:?} is not the translation by a = {a}"
        )));
    }
    Ok([f, g])
}

fn perm_group(maps: &[AffineMap4]) -> Result<PermGroup> {
    let perms: Vec<Permutation> = maps.iter().map(to_permutation).collect();
    PermGroup::build(16, &perms)
}

/// The binary octahedral group generated by `t_b x` and `t_c y` on 16 points.
pub fn build_o48(consts: &AffineConstants) -> Result<PermGroup> {
    let gens = twisted_generators(consts.o48_x, consts.o48_y, consts.o48_a, consts.b, consts.c)?;
    perm_group(&gens)
}

/// `O48:2`, generated by `t_b x`, `t_c y` and `t_a'` with the second matrix pair.
pub fn build_o48_2(consts: &AffineConstants) -> Result<PermGroup> {
    let [f, g] = twisted_generators(consts.o96_x, consts.o96_y, consts.o96_a, consts.b, consts.c)?;
    let group = perm_group(&[f, g, AffineMap4::translation(consts.a_prime)])?;
    match group.order_u64() {
        Some(96) => Ok(group),
        other => Err(Error::Relation(format!(
            "generated group has order {other:?}, expected 96"
        ))),
    }
}

/// The index-two analogue of `O48` inside `O48:2`: `<t_b x, t_c y>` with the second matrix pair.
pub fn build_o48_in_o48_2(consts: &AffineConstants) -> Result<PermGroup> {
    let gens = twisted_generators(consts.o96_x, consts.o96_y, consts.o96_a, consts.b, consts.c)?;
    perm_group(&gens)
}

/// Orbit shapes of faithful `S4 = <x, y | x^4 = y^2 = (xy)^3 = 1>` actions on
/// the nonzero vectors, with the number of generating pairs giving each shape.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct S4Census {
    pub shapes: BTreeMap<Vec<usize>, usize>,
}

impl S4Census {
    pub fn contains(&self, shape: &[usize]) -> bool {
        self.shapes.contains_key(shape)
    }

    pub fn shape_set(&self) -> BTreeSet<Vec<usize>> {
        self.shapes.keys().cloned().collect()
    }
}

/// Runs through every `x` of order 4 and every involution `y` in GL(4, 2).
pub fn classify_s4_shapes() -> S4Census {
    let gl = F2Mat4::general_linear_group();
    let order4: Vec<F2Mat4> = gl.iter().copied().filter(|m| m.order() == Some(4)).collect();
    let involutions: Vec<F2Mat4> = gl.iter().copied().filter(|m| m.order() == Some(2)).collect();
    let mut census = S4Census::default();
    for &x in &order4 {
        for &y in &involutions {
            if x.mul(y).pow(3) != F2Mat4::IDENTITY {
                continue;
            }
            if generate_linear(&[x, y], 25).len() != 24 {
                continue;
            }
            *census.shapes.entry(linear_orbit_shape(&[x, y])).or_insert(0) += 1;
        }
    }
    census
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> F2Mat4 {
        s.parse().unwrap()
    }

    fn v(s: &str) -> F2Vec4 {
        s.parse().unwrap()
    }

    #[test]
    fn parsing_and_layout() {
        assert_eq!(v("1000"), F2Vec4::new(1));
        assert_eq!(v("0001"), F2Vec4::new(8));
        assert_eq!(v("0101").to_string(), "0101");
        let x = m("1100/0110/0011/0001");
        assert_eq!(x.to_string(), "1100/0110/0011/0001");
        assert_eq!(x.entry(0, 1), 1);
        assert_eq!(x.entry(1, 0), 0);
        assert!("110/0110/0011/0001".parse::<F2Mat4>().is_err());
        assert!("1100/0110/0011".parse::<F2Mat4>().is_err());
        assert!("1102".parse::<F2Vec4>().is_err());
        assert_eq!(F2Mat4::from_u16(x.to_u16()), x);
    }

    #[test]
    fn worked_multiplication() {
        let x = m("1100/0110/0011/0001");
        assert_eq!(x.apply(v("0101")), v("1111"));
        // first column of x is e1, so e1 is fixed
        assert_eq!(x.apply(v("1000")), v("1000"));
        assert_eq!(x.apply(v("0100")), v("1100"));
    }

    #[test]
    fn identity_behaviour() {
        assert_eq!(F2Mat4::IDENTITY.order(), Some(1));
        for w in F2Vec4::all() {
            assert_eq!(mat_apply(F2Mat4::IDENTITY, w), w);
        }
        assert!(to_permutation(&AffineMap4::IDENTITY).is_identity());
    }

    #[test]
    fn matrix_orders_of_the_printed_pairs() {
        let c = AffineConstants::bundled();
        for (x, y) in [(c.o48_x, c.o48_y), (c.o96_x, c.o96_y)] {
            assert_eq!(mat_order(x), Some(4));
            assert_eq!(mat_order(y), Some(2));
            assert_eq!(mat_order(mat_mul(x, y)), Some(3));
        }
        assert_eq!(mat_order(F2Mat4::from_rows([1, 1, 0, 0])), None);
    }

    #[test]
    fn multiplication_is_composition() {
        let gl = F2Mat4::general_linear_group();
        for (i, &a) in gl.iter().step_by(997).enumerate() {
            let b = gl[(i * 7919) % gl.len()];
            for w in F2Vec4::all() {
                assert_eq!(a.mul(b).apply(w), a.apply(b.apply(w)));
            }
            assert_eq!(a.mul(a.inverse().unwrap()), F2Mat4::IDENTITY);
            assert_eq!(a.mul(b).transpose(), b.transpose().mul(a.transpose()));
        }
    }

    #[test]
    fn presentation_checks() {
        let c = AffineConstants::bundled();
        assert!(verify_s4_presentation(c.o48_x, c.o48_y));
        assert!(verify_s4_presentation(c.o96_x, c.o96_y));
        assert!(!verify_s4_presentation(F2Mat4::IDENTITY, F2Mat4::IDENTITY));
        let x = c.o48_x;
        assert!(!verify_s4_presentation(x, x.pow(2)));
        assert_eq!(generate_linear(&[x, x.pow(2)], 100).len(), 4);
    }

    #[test]
    fn translations() {
        let ta = AffineMap4::translation(v("0001"));
        let p = to_permutation(&ta);
        assert_eq!(p.fixed_points(), 0);
        assert_eq!(p.order(), 2);
        assert_eq!(p.cycle_type(), vec![2; 8]);
    }

    #[test]
    fn orbit_shapes() {
        assert_eq!(linear_orbit_shape(&[]), vec![1; 15]);
        let c = AffineConstants::bundled();
        assert_eq!(linear_orbit_shape(&[c.o48_x, c.o48_y]), vec![1, 6, 8]);
        assert_eq!(linear_orbit_shape(&[c.o96_x, c.o96_y]), vec![1, 2, 12]);
    }

    #[test]
    fn printed_translation_for_the_first_pair_fails() {
        let c = AffineConstants::bundled();
        let err = twisted_generators(c.o48_x, c.o48_y, v("0001"), c.b, c.c).unwrap_err();
        assert!(matches!(err, Error::Relation(_)));
        // the translation actually produced is by the common fixed vector of x and y
        let f = AffineMap4::translate_after(c.b, c.o48_x).unwrap();
        assert_eq!(f.pow(4), AffineMap4::translation(v("1000")));
        assert_eq!(c.o48_x.apply(v("1000")), v("1000"));
        assert_eq!(c.o48_y.apply(v("1000")), v("1000"));
    }

    #[test]
    fn constants_parsing_errors() {
        assert!(matches!(
            AffineConstants::parse("b = 1111"),
            Err(Error::MissingEntry(_))
        ));
        let broken = crate::data::AFFINE.replace("o48_y = 1100/0100/0111/0001", "o48_y = 11x0/0100/0111/0001");
        assert!(matches!(AffineConstants::parse(&broken), Err(Error::Malformed { .. })));
        assert!(AffineConstants::parse("nonsense").is_err());
    }

    #[test]
    fn corrupted_matrix_fails_relations() {
        let mut c = AffineConstants::bundled();
        c.o48_y = m("1100/0100/0011/0001");
        assert!(build_o48(&c).is_err());
    }
}
