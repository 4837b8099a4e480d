use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use crate::{Error, Result};

pub const MAX_DEGREE: usize = 64;

/// A bijection of `{0, .., degree-1}` stored in a fixed 64-slot image table.
///
/// Products act on the right: `(p * q)(x) = q(p(x))`, i.e. apply `p` first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    degree: u8,
    images: [u8; MAX_DEGREE],
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        let mut images = [0u8; MAX_DEGREE];
        for (i, slot) in images.iter_mut().enumerate() {
            *slot = i as u8;
        }
        Self {
            degree: degree as u8,
            images,
        }
    }

    /// 0-based image list.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::Permutation(format!(
                "degree must be in 1..={MAX_DEGREE}, got {n}"
            )));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut p = Self::identity(n);
        for (i, &img) in images.iter().enumerate() {
            if img >= n || seen[img] {
                return Err(Error::Permutation(format!(
                    "not a bijection on {n} points: {images:?}"
                )));
            }
            seen[img] = true;
            p.images[i] = img as u8;
        }
        Ok(p)
    }

    /// 1-based image list, as in group files.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Permutation("1-based images cannot contain 0".into()));
        }
        let zero: Vec<usize> = images.iter().map(|&x| x - 1).collect();
        Self::from_images(&zero)
    }

    /// Product of 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return Err(Error::Permutation(format!("bad cycle {cycle:?}")));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images[..self.degree()].iter().map(|&x| x as usize).collect()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images().into_iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images[..self.degree()]
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = *self;
        for i in 0..self.degree() {
            inv.images[self.images[i] as usize] = i as u8;
        }
        inv
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.image(i) != i)
    }

    /// Cycle lengths, including fixed points, in descending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image(x);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycle_type().iter().map(|l| l - 1).sum();
        transpositions.is_multiple_of(2)
    }

    pub fn fixed_points(&self) -> usize {
        (0..self.degree()).filter(|&i| self.image(i) == i).count()
    }
}

impl Mul for Permutation {
    type Output = Permutation;

    /// Apply `self`, then `rhs`.
    fn mul(self, rhs: Permutation) -> Permutation {
        debug_assert_eq!(self.degree, rhs.degree);
        let mut out = self;
        for i in 0..self.degree() {
            out.images[i] = rhs.images[self.images[i] as usize];
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

impl fmt::Display for Permutation {
    /// Disjoint cycle notation with 1-based points, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            any = true;
            let mut pts = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                pts.push((x + 1).to_string());
                x = self.image(x);
            }
            write!(f, "({})", pts.join(","))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_acts_on_the_right() {
        let p = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -p-> 1 -q-> 2
        assert_eq!((p * q).image(0), 2);
        assert_eq!((q * p).image(0), 1);
    }

    #[test]
    fn validation() {
        assert!(Permutation::from_images(&[0, 0]).is_err());
        assert!(Permutation::from_images(&[1, 2]).is_err());
        assert!(Permutation::from_images(&[]).is_err());
        assert!(Permutation::from_images(&vec![0; 65]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_cycles(4, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn order_and_parity() {
        let p = Permutation::from_cycles(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]]).unwrap();
        assert_eq!(p.order(), 8);
        assert!(!p.is_even());
        assert!(p.pow(8).is_identity());
        assert!(!p.pow(4).is_identity());
        let q = Permutation::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.cycle_type(), vec![3, 2]);
        assert_eq!(q.to_string(), "(1,2)(3,4,5)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert!((q * q.inverse()).is_identity());
    }
}
