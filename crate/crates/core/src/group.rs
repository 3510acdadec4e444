//! Permutation groups with lazily built stabilizer chains.
//!
//! The chain uses the fixed base `0, 1, 2, ...` (every point, in natural
//! order; levels with a trivial orbit cost nothing), built by a
//! deterministic Schreier-Sims pass. Orders, membership tests and element
//! enumeration all read off the verified chain.

use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Orbit partition of `{0..degree}` under a generator set. Blocks are sorted
/// ascending and ordered by their least point.
pub fn orbits(gens: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
    let mut block_of: Vec<Option<usize>> = vec![None; degree];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for start in 0..degree {
        if block_of[start].is_some() {
            continue;
        }
        let id = blocks.len();
        let mut block = vec![start];
        block_of[start] = Some(id);
        let mut head = 0;
        while head < block.len() {
            let p = block[head];
            head += 1;
            for g in gens {
                let q = g.apply(p);
                if block_of[q].is_none() {
                    block_of[q] = Some(id);
                    block.push(q);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

pub fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    transversal: Vec<Option<Permutation>>,
    transversal_inv: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut transversal_inv = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        transversal_inv[base] = Some(Permutation::identity(degree));
        Level {
            base,
            transversal,
            transversal_inv,
            orbit: vec![base],
        }
    }

    fn recompute(&mut self, degree: usize, gens: &[Permutation]) {
        self.transversal = vec![None; degree];
        self.transversal_inv = vec![None; degree];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.transversal_inv[self.base] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base];
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            let up = self.transversal[p].clone().expect("orbit point has rep");
            for g in gens {
                let q = g.apply(p);
                if self.transversal[q].is_none() {
                    let uq = up.then(g);
                    self.transversal_inv[q] = Some(uq.inverse());
                    self.transversal[q] = Some(uq);
                    self.orbit.push(q);
                }
            }
        }
        self.orbit.sort_unstable();
    }
}

/// Base, strong generators and transversals for a permutation group.
/// The base is the full point sequence `0, 1, 2, ...` in natural order;
/// levels whose orbit is a single point contribute nothing.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    strong_gens: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

enum Sift {
    Clean,
    Fails { level: usize, residue: Permutation },
}

impl StabilizerChain {
    pub fn build(degree: usize, generators: &[Permutation]) -> StabilizerChain {
        let mut chain = StabilizerChain {
            degree,
            strong_gens: generators
                .iter()
                .filter(|g| !g.is_identity())
                .cloned()
                .collect(),
            levels: (0..degree).map(|b| Level::new(b, degree)).collect(),
            order: BigUint::from(1u32),
        };
        chain.recompute_level(0);
        chain.complete();
        chain.order = chain
            .levels
            .iter()
            .map(|lv| BigUint::from(lv.orbit.len()))
            .product();
        chain
    }

    /// Strong generators fixing the base prefix `0..level`, i.e. the
    /// generating set of the level's stabilizer group.
    fn level_gens(&self, level: usize) -> Vec<Permutation> {
        self.strong_gens
            .iter()
            .filter(|g| (0..level).all(|b| g.apply(b) == b))
            .cloned()
            .collect()
    }

    fn recompute_level(&mut self, level: usize) {
        let gens = self.level_gens(level);
        self.levels[level].recompute(self.degree, &gens);
    }

    /// Deterministic Schreier-Sims: verify levels deepest-first; a failed
    /// sift inserts the residue at the level it failed and re-verifies from
    /// there downward.
    fn complete(&mut self) {
        if self.degree == 0 {
            return;
        }
        let mut k = self.degree - 1;
        loop {
            match self.verify_level(k) {
                Some(level) => k = level,
                None => {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                }
            }
        }
    }

    /// Sifts every Schreier generator of level `k` through the deeper
    /// levels. Returns the level where a residue was inserted, or None if
    /// the level is complete.
    fn verify_level(&mut self, k: usize) -> Option<usize> {
        self.recompute_level(k);
        let gens = self.level_gens(k);
        let orbit = self.levels[k].orbit.clone();
        for &p in &orbit {
            for s in &gens {
                let q = s.apply(p);
                let up = self.levels[k].transversal[p].clone().expect("orbit rep");
                let uq_inv = self.levels[k].transversal_inv[q]
                    .clone()
                    .expect("orbit rep");
                let schreier = up.then(s).then(&uq_inv);
                if schreier.is_identity() {
                    continue;
                }
                if let Sift::Fails { level, residue } = self.sift_from(k + 1, schreier) {
                    self.strong_gens.push(residue);
                    self.recompute_level(level);
                    return Some(level);
                }
            }
        }
        None
    }

    fn sift_from(&self, start: usize, g: Permutation) -> Sift {
        let mut cur = g;
        for level in start..self.levels.len() {
            let lv = &self.levels[level];
            let p = cur.apply(lv.base);
            if p == lv.base {
                continue;
            }
            match &lv.transversal_inv[p] {
                None => return Sift::Fails { level, residue: cur },
                Some(uinv) => cur = cur.then(uinv),
            }
        }
        if cur.is_identity() {
            Sift::Clean
        } else {
            // Unreachable once the chain is complete: the base hits every point.
            Sift::Fails {
                level: self.levels.len(),
                residue: cur,
            }
        }
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        matches!(self.sift_from(0, g.clone()), Sift::Clean)
    }

    /// Allocation-free membership test against raw images.
    pub(crate) fn contains_raw(&self, g: &[u16], buf: &mut Vec<u16>) -> bool {
        buf.clear();
        buf.extend_from_slice(g);
        for lv in &self.levels {
            let p = buf[lv.base] as usize;
            if p == lv.base {
                continue;
            }
            match &lv.transversal_inv[p] {
                None => return false,
                Some(uinv) => {
                    let raw = uinv.raw();
                    for x in buf.iter_mut() {
                        *x = raw[*x as usize];
                    }
                }
            }
        }
        buf.iter().enumerate().all(|(k, &v)| k as u16 == v)
    }

    /// All group elements in chain-product order (not yet sorted).
    fn elements(&self) -> Vec<Permutation> {
        let mut acc = vec![Permutation::identity(self.degree)];
        for lv in self.levels.iter().rev() {
            if lv.orbit.len() == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(acc.len() * lv.orbit.len());
            for &p in &lv.orbit {
                let u = lv.transversal[p].as_ref().expect("orbit rep");
                for h in &acc {
                    next.push(h.then(u));
                }
            }
            acc = next;
        }
        acc
    }
}

/// A permutation group given by generators, with chain data built on demand.
///
/// Values are immutable once constructed; the chain is built at most once
/// (synchronized internally), so groups can be shared across threads.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    /// The trivial group, represented by a single identity generator.
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            generators: vec![Permutation::identity(degree)],
            chain: OnceLock::new(),
        }
    }

    pub fn symmetric(degree: usize) -> PermGroup {
        if degree < 2 {
            return PermGroup::trivial(degree.max(1));
        }
        let gens = (0..degree - 1)
            .map(|k| Permutation::transposition(degree, k, k + 1).expect("valid"))
            .collect();
        PermGroup::new(degree, gens).expect("nonempty")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.degree, &self.generators))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order().clone()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == BigUint::from(1u32)
    }

    /// True iff `p` sifts to the identity through the chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.chain().contains(p))
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(&self.generators, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// True iff the group is the full symmetric group on its points.
    pub fn is_symmetric(&self) -> bool {
        self.order() == factorial(self.degree)
    }

    /// All elements, sorted by image sequence. Errors when the order
    /// exceeds `cap`.
    pub fn enumerate_elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::EnumerationOverflow {
                order: order.to_string(),
                cap,
            });
        }
        let mut elems = self.chain().elements();
        elems.sort_unstable();
        Ok(elems)
    }

    /// The subgroup `{g : g in self and g in other}`, computed by
    /// enumerating the smaller group and filtering by membership in the
    /// larger. Requires `min(order, other.order) <= cap`.
    pub fn intersection(&self, other: &PermGroup, cap: u64) -> Result<PermGroup> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let (a, b) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        if a.order() > BigUint::from(cap) {
            return Err(Error::IntersectionOverflow {
                left: self.order().to_string(),
                right: other.order().to_string(),
                cap,
            });
        }
        let common = intersection_elements(a, b, cap)?;
        Ok(group_from_elements(self.degree, &common))
    }

    /// Equal orders and every generator of `self` a member of `other`.
    pub fn equals(&self, other: &PermGroup) -> Result<bool> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        if self.order() != other.order() {
            return Ok(false);
        }
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Right transversal of the subgroup `sub` in this group, as BFS coset
    /// representatives (identity first). Returns None once more than `cap`
    /// cosets appear. `sub` must be contained in this group.
    pub fn right_transversal_capped(
        &self,
        sub: &PermGroup,
        cap: usize,
    ) -> Option<Vec<Permutation>> {
        let sub_chain = sub.chain();
        let sub_orbits = sub.orbits();
        let coset_key = |x: &Permutation| -> Vec<u16> {
            let mut key = Vec::with_capacity(self.degree + sub_orbits.len());
            for orbit in &sub_orbits {
                let mut imgs: Vec<u16> = orbit.iter().map(|&p| x.apply(p) as u16).collect();
                imgs.sort_unstable();
                key.extend_from_slice(&imgs);
                key.push(u16::MAX);
            }
            key
        };
        let mut buckets: std::collections::HashMap<Vec<u16>, Vec<usize>> =
            std::collections::HashMap::new();
        let mut reps: Vec<Permutation> = vec![Permutation::identity(self.degree)];
        buckets.insert(coset_key(&reps[0]), vec![0]);
        let mut buf = Vec::new();
        let mut head = 0;
        while head < reps.len() {
            let x = reps[head].clone();
            head += 1;
            for g in &self.generators {
                let y = x.then(g);
                let key = coset_key(&y);
                let bucket = buckets.entry(key).or_default();
                let known = bucket.iter().any(|&ri| {
                    let diff = y.then(&reps[ri].inverse());
                    sub_chain.contains_raw(diff.raw(), &mut buf)
                });
                if !known {
                    if reps.len() >= cap {
                        return None;
                    }
                    bucket.push(reps.len());
                    reps.push(y);
                }
            }
        }
        Some(reps)
    }
}

/// Sorted elements of `a` that lie in `b`; `a` is the smaller group.
pub(crate) fn intersection_elements(
    a: &PermGroup,
    b: &PermGroup,
    cap: u64,
) -> Result<Vec<Permutation>> {
    let elems = a.enumerate_elements(cap)?;
    let b_chain = b.chain();
    let mut buf = Vec::new();
    Ok(elems
        .into_iter()
        .filter(|e| b_chain.contains_raw(e.raw(), &mut buf))
        .collect())
}

/// Group generated by the given elements, with a greedily reduced
/// generating set.
pub(crate) fn group_from_elements(degree: usize, elements: &[Permutation]) -> PermGroup {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::trivial(degree);
    let target = BigUint::from(elements.len().max(1));
    for e in elements {
        if e.is_identity() {
            continue;
        }
        if current.order() == target {
            break;
        }
        if !current.chain().contains(e) {
            gens.push(e.clone());
            current = PermGroup::new(degree, gens.clone()).expect("nonempty");
        }
    }
    if gens.is_empty() {
        PermGroup::trivial(degree)
    } else {
        current
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    fn group(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(degree, gens.iter().map(|s| perm(s, degree)).collect()).unwrap()
    }

    /// Independent oracle: closure under multiplication, no chain involved.
    fn brute_force_closure(gens: &[Permutation], degree: usize) -> Vec<Permutation> {
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(Permutation::identity(degree));
        loop {
            let mut fresh = Vec::new();
            for a in &seen {
                for g in gens {
                    let b = a.compose(g).unwrap();
                    if !seen.contains(&b) {
                        fresh.push(b);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            seen.extend(fresh);
        }
        seen.into_iter().collect()
    }

    #[test]
    fn orbit_examples() {
        let id = Permutation::identity(4);
        assert_eq!(orbits(&[id], 4).len(), 4);

        let path: Vec<Permutation> = (0..4)
            .map(|k| Permutation::transposition(5, k, k + 1).unwrap())
            .collect();
        assert_eq!(orbits(&path, 5), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn small_orders() {
        assert_eq!(group(2, &["(1 2)"]).order(), BigUint::from(2u32));
        assert_eq!(PermGroup::symmetric(7).order(), BigUint::from(5040u32));
        assert_eq!(PermGroup::trivial(5).order(), BigUint::from(1u32));
    }

    #[test]
    fn identity_only_generators_give_trivial_group() {
        let g = PermGroup::new(4, vec![Permutation::identity(4)]).unwrap();
        assert_eq!(g.order(), BigUint::from(1u32));
        assert!(g.contains(&Permutation::identity(4)).unwrap());
    }

    #[test]
    fn membership_examples() {
        let g = group(3, &["(1 2 3)"]);
        assert!(g.contains(&Permutation::identity(3)).unwrap());
        assert!(!g.contains(&perm("(1 2)", 3)).unwrap());
    }

    #[test]
    fn chain_order_matches_brute_force_closure() {
        // All 2-generator subgroups from a fixed pool, degrees 4..6.
        let pool = [
            "(1 2)",
            "(1 2)(3 4)",
            "(1 2 3)",
            "(2 3 4)",
            "(1 2 3 4)",
            "(1 3)",
        ];
        for degree in 4..=6 {
            for a in &pool {
                for b in &pool {
                    let gens = vec![perm(a, degree), perm(b, degree)];
                    let brute = brute_force_closure(&gens, degree);
                    let g = PermGroup::new(degree, gens).unwrap();
                    assert_eq!(
                        g.order(),
                        BigUint::from(brute.len()),
                        "order mismatch for <{a}, {b}> at degree {degree}"
                    );
                    for e in &brute {
                        assert!(g.contains(e).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_respects_cap_and_sorts() {
        let g = group(4, &["(1 2)"]);
        let elems = g.enumerate_elements(10).unwrap();
        assert_eq!(elems.len(), 2);
        assert!(elems[0].is_identity());

        let s4 = PermGroup::symmetric(4);
        assert!(matches!(
            s4.enumerate_elements(23),
            Err(Error::EnumerationOverflow { .. })
        ));
        let elems = s4.enumerate_elements(24).unwrap();
        assert_eq!(elems.len(), 24);
        let mut sorted = elems.clone();
        sorted.sort();
        assert_eq!(elems, sorted);
    }

    #[test]
    fn intersection_examples() {
        let a = group(4, &["(1 2)"]);
        let b = group(4, &["(3 4)"]);
        assert!(a.intersection(&b, 100).unwrap().is_trivial());

        let g = group(4, &["(1 2)", "(2 3 4)"]);
        let same = g.intersection(&g, 1000).unwrap();
        assert_eq!(same.order(), g.order());
        assert!(same.equals(&g).unwrap());
    }

    #[test]
    fn intersection_is_symmetric_in_its_arguments() {
        let a = group(5, &["(1 2)", "(1 2 3)"]);
        let b = group(5, &["(2 3)", "(3 4 5)"]);
        let ab = a.intersection(&b, 1000).unwrap();
        let ba = b.intersection(&a, 1000).unwrap();
        assert!(ab.equals(&ba).unwrap());
    }

    #[test]
    fn intersection_overflow_needs_both_sides_large() {
        let s5 = PermGroup::symmetric(5);
        let small = group(5, &["(1 2)"]);
        assert!(s5.intersection(&small, 10).is_ok());
        assert!(matches!(
            s5.intersection(&s5, 10),
            Err(Error::IntersectionOverflow { .. })
        ));
    }

    #[test]
    fn equals_examples() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let shuffled = group(4, &["(1 2 3 4)", "(1 2)"]);
        assert!(g.equals(&shuffled).unwrap());

        let s3 = PermGroup::symmetric(3);
        let a3 = group(3, &["(1 2 3)"]);
        assert!(!s3.equals(&a3).unwrap());
    }

    #[test]
    fn symmetric_detection() {
        assert!(group(3, &["(1 2)", "(1 2 3)"]).is_symmetric());
        assert!(!group(3, &["(1 2 3)"]).is_symmetric());
    }

    #[test]
    fn right_transversal_counts_cosets() {
        let s4 = PermGroup::symmetric(4);
        let s3 = group(4, &["(1 2)", "(2 3)"]); // fixes point 4
        let reps = s4.right_transversal_capped(&s3, 100).unwrap();
        assert_eq!(reps.len(), 4);
        assert!(reps[0].is_identity());
        let capped = s4.right_transversal_capped(&s3, 3);
        assert!(capped.is_none());
    }
}
