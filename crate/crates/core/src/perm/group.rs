//! Base and strong generating set via deterministic Schreier-Sims.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::Permutation;
use crate::mathieu::{self, OrderHistogram};
use crate::{Error, Rational, Result};

/// Default ceiling on the group order for full element enumeration.
pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
}

/// A permutation group with a verified stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong_gens: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// Group generated by `generators` on `degree` points.
    pub fn build(degree: usize, generators: &[Permutation]) -> Result<Self> {
        Self::build_with_base(degree, generators, &[])
    }

    /// Like [`PermGroup::build`], with the base starting at the given points.
    pub fn build_with_base(
        degree: usize,
        generators: &[Permutation],
        base_prefix: &[usize],
    ) -> Result<Self> {
        if degree == 0 || degree > super::MAX_DEGREE {
            return Err(Error::Permutation(format!("unsupported degree {degree}")));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        if let Some(&p) = base_prefix.iter().find(|&&p| p >= degree) {
            return Err(Error::Permutation(format!("base point {p} out of range")));
        }
        let mut group = PermGroup {
            degree,
            generators: generators.to_vec(),
            strong_gens: generators.iter().filter(|g| !g.is_identity()).copied().collect(),
            levels: Vec::new(),
        };
        group.schreier_sims(base_prefix);
        Ok(group)
    }

    /// Builds from 1-based image arrays as they appear in group files.
    pub fn from_one_based(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        let perms = generators
            .iter()
            .map(|g| {
                if g.len() != degree {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        found: g.len(),
                    });
                }
                Permutation::from_one_based(g)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::build(degree, &perms)
    }

    fn schreier_sims(&mut self, base_prefix: &[usize]) {
        let mut base: Vec<usize> = Vec::new();
        for &p in base_prefix {
            if !base.contains(&p) {
                base.push(p);
            }
        }
        for g in &self.strong_gens {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved_point().expect("non-identity"));
            }
        }
        self.levels = base.iter().map(|&b| self.make_level(b)).collect();
        for i in 0..self.levels.len() {
            self.rebuild_level(i);
        }

        // Work from the deepest level up; whenever a Schreier generator fails to
        // sift, add the residue and restart at the level where sifting stopped.
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let level = i as usize;
            let gens = self.gens_fixing(level);
            let orbit = self.levels[level].orbit.clone();
            for &b in &orbit {
                let u_b = self.levels[level].transversal[b].expect("orbit point");
                for s in &gens {
                    let bs = s.image(b);
                    let u_bs = self.levels[level].transversal[bs].expect("orbit closed");
                    let schreier = u_b * *s * u_bs.inverse();
                    let (residue, stop) = self.sift_from(schreier, level + 1);
                    if stop == self.levels.len() && residue.is_identity() {
                        continue;
                    }
                    if stop == self.levels.len() {
                        let pt = residue.first_moved_point().expect("non-identity");
                        self.levels.push(self.make_level(pt));
                    }
                    self.strong_gens.push(residue);
                    for l in level + 1..=stop {
                        self.rebuild_level(l);
                    }
                    i = stop as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    fn make_level(&self, base: usize) -> Level {
        let mut transversal = vec![None; self.degree];
        transversal[base] = Some(Permutation::identity(self.degree));
        Level {
            base,
            orbit: vec![base],
            transversal,
        }
    }

    /// Strong generators fixing the first `level` base points.
    fn gens_fixing(&self, level: usize) -> Vec<Permutation> {
        let bases: Vec<usize> = self.levels[..level].iter().map(|l| l.base).collect();
        self.strong_gens
            .iter()
            .filter(|g| bases.iter().all(|&b| g.image(b) == b))
            .copied()
            .collect()
    }

    fn rebuild_level(&mut self, level: usize) {
        let gens = self.gens_fixing(level);
        let base = self.levels[level].base;
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        transversal[base] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![base];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            let u = transversal[x].expect("orbit point");
            for g in &gens {
                let y = g.image(x);
                if transversal[y].is_none() {
                    transversal[y] = Some(u * *g);
                    orbit.push(y);
                }
            }
            k += 1;
        }
        self.levels[level].orbit = orbit;
        self.levels[level].transversal = transversal;
    }

    /// Strips `g` through levels `start..`; returns the residue and the level
    /// where stripping stopped (`levels.len()` if it went all the way).
    fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (idx, level) in self.levels.iter().enumerate().skip(start) {
            let b = g.image(level.base);
            match level.transversal[b] {
                Some(u) => g = g * u.inverse(),
                None => return (g, idx),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_gens
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Orbit sizes of the successive point stabilizers along the base.
    pub fn fundamental_orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order as a `u64`, if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        let (residue, stop) = self.sift_from(*p, 0);
        Ok(stop == self.levels.len() && residue.is_identity())
    }

    /// Orbits of the natural action, each sorted, ordered by smallest point.
    pub fn orbit_partition(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for g in &self.generators {
                    let y = g.image(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn orbit_of(&self, point: usize) -> Vec<usize> {
        self.orbit_partition()
            .into_iter()
            .find(|o| o.contains(&point))
            .unwrap_or_default()
    }

    /// The stabilizer of `point`.
    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        if point >= self.degree {
            return Err(Error::Permutation(format!("point {point} out of range")));
        }
        let chain = PermGroup::build_with_base(self.degree, &self.strong_gens, &[point])?;
        let gens = chain.gens_fixing(1.min(chain.levels.len()));
        PermGroup::build(self.degree, &gens)
    }

    /// Orbit sizes met when stabilizing the given points one after another.
    pub fn stabilizer_chain_orbits(&self, points: &[usize]) -> Result<Vec<usize>> {
        let mut sizes = Vec::with_capacity(points.len());
        let mut g = self.clone();
        for &p in points {
            sizes.push(g.orbit_of(p).len());
            g = g.stabilizer(p)?;
        }
        Ok(sizes)
    }

    /// Visits every element exactly once as a product of transversal elements.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        fn walk<F: FnMut(&Permutation)>(levels: &[Level], acc: Permutation, f: &mut F) {
            match levels.split_last() {
                None => f(&acc),
                Some((last, rest)) => {
                    for &b in &last.orbit {
                        let u = last.transversal[b].expect("orbit point");
                        walk(rest, acc * u, f);
                    }
                }
            }
        }
        walk(&self.levels, Permutation::identity(self.degree), &mut f);
    }

    /// All elements; refuses groups above `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        let n = self.checked_order(cap)?;
        let mut out = Vec::with_capacity(n as usize);
        self.for_each_element(|g| out.push(*g));
        Ok(out)
    }

    fn checked_order(&self, cap: u64) -> Result<u64> {
        match self.order_u64() {
            Some(n) if n <= cap => Ok(n),
            _ => Err(Error::GroupTooLarge {
                order: self.order().to_string(),
                cap,
            }),
        }
    }

    /// Counts elements by order.
    pub fn element_order_histogram(&self, cap: u64) -> Result<OrderHistogram> {
        let n = self.checked_order(cap)?;
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        self.for_each_element(|g| *counts.entry(g.order()).or_insert(0) += 1);
        OrderHistogram::with_group_order(counts, n)
    }

    /// `mu` of the group. Element orders above 8 are an error unless
    /// `allow_wild` is set, in which case they are reported alongside.
    pub fn mu(&self, cap: u64, allow_wild: bool) -> Result<MuReport> {
        let histogram = self.element_order_histogram(cap)?;
        let wild_orders: Vec<u64> = histogram
            .iter()
            .map(|(o, _)| o)
            .filter(|&o| !mathieu::is_tame_order(o))
            .collect();
        if !wild_orders.is_empty() && !allow_wild {
            return Err(Error::WildOrders(wild_orders));
        }
        let mu = mathieu::mu(&histogram)?;
        Ok(MuReport {
            mu,
            histogram,
            wild_orders,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuReport {
    pub mu: Rational,
    pub histogram: OrderHistogram,
    /// Element orders above 8 that were present.
    pub wild_orders: Vec<u64>,
}

pub fn mu_of_group(group: &PermGroup, cap: u64) -> Result<Rational> {
    Ok(group.mu(cap, false)?.mu)
}
