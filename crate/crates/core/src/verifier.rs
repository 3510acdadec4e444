//! Deciding the intersection property, comparing generator tuples up to
//! relabeling and duality, and re-deriving the accept/reject table for a
//! whole degree.
//!
//! Two independent methods decide whether an sggi is a string C-group:
//! the definitional oracle checks every pair of generator subsets, and the
//! fast method recurses on the two end intervals plus one intersection.
//! They are cross-checked against each other in the test suites.

use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::aut6::apply_outer;
use crate::error::{Error, Result};
use crate::families::{self, expected_verdict, FamilyId, RankClass};
use crate::group::{factorial, intersection_elements, PermGroup};
use crate::perm::Permutation;
use crate::sggi::Sggi;

/// Default element cap for intersection enumerations.
pub const DEFAULT_CAP: u64 = 2_000_000;

/// Largest subgroup index walked by the coset-transversal route.
const TRANSVERSAL_INDEX_CAP: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Generator index sets with the offending intersection.
    pub j: Vec<usize>,
    pub k: Vec<usize>,
    #[serde(serialize_with = "ser_perm")]
    pub element: Permutation,
}

fn ser_perm<S: serde::Serializer>(p: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_cycle_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    FullOracle,
    Recursive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub is_string_c_group: bool,
    pub witness: Option<Witness>,
    pub method: Method,
}

impl Verdict {
    fn positive(method: Method) -> Verdict {
        Verdict {
            is_string_c_group: true,
            witness: None,
            method,
        }
    }

    fn negative(method: Method, witness: Witness) -> Verdict {
        Verdict {
            is_string_c_group: false,
            witness: Some(witness),
            method,
        }
    }
}

/// Re-checks a witness by three membership tests.
pub fn validate_witness(s: &Sggi, w: &Witness) -> Result<bool> {
    let gj = subset_group(s, &w.j)?;
    let gk = subset_group(s, &w.k)?;
    let meet: Vec<usize> = w.j.iter().copied().filter(|x| w.k.contains(x)).collect();
    let gm = subset_group(s, &meet)?;
    Ok(gj.contains(&w.element)? && gk.contains(&w.element)? && !gm.contains(&w.element)?)
}

/// Group generated by the listed generator indices; empty list gives the
/// trivial group.
pub fn subset_group(s: &Sggi, indices: &[usize]) -> Result<PermGroup> {
    for &k in indices {
        if k >= s.rank() {
            return Err(Error::RankIndexOutOfRange {
                index: k,
                rank: s.rank(),
            });
        }
    }
    if indices.is_empty() {
        return Ok(PermGroup::trivial(s.degree()));
    }
    let gens: Vec<Permutation> = indices.iter().map(|&k| s.generator(k).clone()).collect();
    PermGroup::new(s.degree(), gens)
}

/// Looks for an element of `a . b` outside `y`, where `y` is contained in
/// both sides. Prefers the canonical enumeration witness when the smaller
/// side fits under `cap`; otherwise walks coset representatives of `y`.
fn intersection_exceeds(
    a: &PermGroup,
    b: &PermGroup,
    y: &PermGroup,
    cap: u64,
) -> Result<Option<Permutation>> {
    let (oa, ob, oy) = (a.order(), b.order(), y.order());
    if oa == oy || ob == oy {
        return Ok(None);
    }
    let enumerable = oa.clone().min(ob.clone()) <= BigUint::from(cap);
    let index_of = |o: &BigUint| -> u64 { u64::try_from(o / &oy).unwrap_or(u64::MAX) };
    let (ia, ib) = (index_of(&oa), index_of(&ob));
    let min_index = ia.min(ib);
    if min_index <= TRANSVERSAL_INDEX_CAP {
        let (side, other) = if ia <= ib { (a, b) } else { (b, a) };
        let reps = side
            .right_transversal_capped(y, min_index as usize + 1)
            .expect("index bound is exact");
        let hit = reps.iter().skip(1).find(|rep| {
            other.contains(rep).expect("equal degrees")
        });
        match hit {
            None => return Ok(None),
            Some(rep) if !enumerable => return Ok(Some(rep.clone())),
            Some(_) => {} // fall through for the canonical witness
        }
    }
    if enumerable {
        let (small, big) = if oa <= ob { (a, b) } else { (b, a) };
        for e in intersection_elements(small, big, cap)? {
            if !y.contains(&e)? {
                return Ok(Some(e));
            }
        }
        return Ok(None);
    }
    Err(Error::IntersectionOverflow {
        left: oa.to_string(),
        right: ob.to_string(),
        cap,
    })
}

/// The fast method: a rank-`r` sggi has the intersection property iff both
/// end intervals do and their intersection is the shared interval. Checked
/// bottom-up over all generator intervals, stopping at the first failure.
pub fn is_string_c_group(s: &Sggi, cap: u64) -> Result<Verdict> {
    let r = s.rank();
    if r <= 2 {
        return Ok(Verdict::positive(Method::Recursive));
    }
    let mut groups: HashMap<(usize, usize), PermGroup> = HashMap::new();
    let mut group_of = |a: usize, b: usize, s: &Sggi| -> PermGroup {
        groups
            .entry((a, b))
            .or_insert_with(|| {
                if a > b {
                    PermGroup::trivial(s.degree())
                } else {
                    let gens: Vec<Permutation> = s.generators()[a..=b].to_vec();
                    PermGroup::new(s.degree(), gens).expect("nonempty interval")
                }
            })
            .clone()
    };
    for len in 3..=r {
        for a in 0..=r - len {
            let b = a + len - 1;
            let left = group_of(a, b - 1, s);
            let right = group_of(a + 1, b, s);
            let shared = group_of(a + 1, b - 1, s);
            if let Some(element) = intersection_exceeds(&left, &right, &shared, cap)? {
                let witness = Witness {
                    j: (a..=b - 1).collect(),
                    k: (a + 1..=b).collect(),
                    element,
                };
                return Ok(Verdict::negative(Method::Recursive, witness));
            }
        }
    }
    Ok(Verdict::positive(Method::Recursive))
}

/// The definitional oracle: every pair of generator subsets must intersect
/// in the subset-meet group.
pub fn intersection_property_full(s: &Sggi, cap: u64) -> Result<Verdict> {
    let r = s.rank();
    if r > 22 {
        return Err(Error::RankTooLargeForOracle { rank: r });
    }
    let masks: u32 = 1 << r;
    let indices_of = |m: u32| -> Vec<usize> { (0..r).filter(|&k| m >> k & 1 == 1).collect() };
    let mut groups: Vec<Option<PermGroup>> = vec![None; masks as usize];
    // Small groups get their element lists cached and intersected by merge.
    let full_order = s.group().order();
    let cache_elements = full_order <= BigUint::from(20_000u32);
    let mut elements: Vec<Option<Vec<Permutation>>> = vec![None; masks as usize];
    for m in 0..masks {
        let g = subset_group(s, &indices_of(m))?;
        if cache_elements {
            elements[m as usize] = Some(g.enumerate_elements(20_000)?);
        }
        groups[m as usize] = Some(g);
    }
    for jm in 0..masks {
        for km in 0..jm {
            let meet = jm & km;
            if meet == jm || meet == km {
                continue; // one side contains the other
            }
            if let Some(element) = if cache_elements {
                let ja = elements[jm as usize].as_ref().expect("cached");
                let ka = elements[km as usize].as_ref().expect("cached");
                let ya = elements[meet as usize].as_ref().expect("cached");
                sorted_intersection_excess(ja, ka, ya)
            } else {
                let a = groups[jm as usize].as_ref().expect("built");
                let b = groups[km as usize].as_ref().expect("built");
                let y = groups[meet as usize].as_ref().expect("built");
                intersection_exceeds(a, b, y, cap)?
            } {
                let witness = Witness {
                    j: indices_of(jm),
                    k: indices_of(km),
                    element,
                };
                return Ok(Verdict::negative(Method::FullOracle, witness));
            }
        }
    }
    Ok(Verdict::positive(Method::FullOracle))
}

/// First element of `(a meet b) - y` for sorted element lists.
fn sorted_intersection_excess(
    a: &[Permutation],
    b: &[Permutation],
    y: &[Permutation],
) -> Option<Permutation> {
    let (mut ia, mut ib, mut iy) = (0, 0, 0);
    while ia < a.len() && ib < b.len() {
        match a[ia].cmp(&b[ib]) {
            std::cmp::Ordering::Less => ia += 1,
            std::cmp::Ordering::Greater => ib += 1,
            std::cmp::Ordering::Equal => {
                let e = &a[ia];
                while iy < y.len() && y[iy] < *e {
                    iy += 1;
                }
                if iy >= y.len() || y[iy] != *e {
                    return Some(e.clone());
                }
                ia += 1;
                ib += 1;
            }
        }
    }
    None
}

/// Relabeling-invariant separator for generator tuples.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub schlafli: Vec<u64>,
    /// Sorted multiset of the orbit-size partitions of the maximal
    /// parabolic subgroups.
    pub parabolic_orbit_shapes: Vec<Vec<usize>>,
    /// Sorted element orders of the products of generator triples.
    pub triple_product_orders: Vec<u64>,
}

pub fn fingerprint(s: &Sggi) -> Fingerprint {
    let r = s.rank();
    let mut shapes: Vec<Vec<usize>> = (0..r)
        .map(|i| {
            let gens: Vec<Permutation> = s
                .generators()
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, g)| g.clone())
                .collect();
            let mut sizes: Vec<usize> = crate::group::orbits(&gens, s.degree())
                .iter()
                .map(|b| b.len())
                .collect();
            sizes.sort_unstable();
            sizes
        })
        .collect();
    shapes.sort();
    let mut triples = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            for k in j + 1..r {
                triples.push(
                    s.generator(i)
                        .then(s.generator(j))
                        .then(s.generator(k))
                        .order(),
                );
            }
        }
    }
    triples.sort_unstable();
    Fingerprint {
        schlafli: s.schlafli_type().0,
        parabolic_orbit_shapes: shapes,
        triple_product_orders: triples,
    }
}

/// Finds a point relabeling carrying tuple `a` onto tuple `b` entrywise.
fn conjugator_exists(a: &Sggi, b: &Sggi, budget: &mut u64) -> Result<bool> {
    let n = a.degree();
    let r = a.rank();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    fn assign(
        x: usize,
        y: usize,
        a: &Sggi,
        b: &Sggi,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        trail: &mut Vec<usize>,
    ) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((p, q)) = queue.pop() {
            match map[p] {
                Some(existing) => {
                    if existing != q {
                        return false;
                    }
                }
                None => {
                    if used[q] {
                        return false;
                    }
                    map[p] = Some(q);
                    used[q] = true;
                    trail.push(p);
                    for k in 0..a.rank() {
                        queue.push((a.generator(k).apply(p), b.generator(k).apply(q)));
                    }
                }
            }
        }
        true
    }
    fn undo(trail: &[usize], map: &mut [Option<usize>], used: &mut [bool]) {
        for &p in trail {
            if let Some(q) = map[p].take() {
                used[q] = false;
            }
        }
    }
    fn search(
        a: &Sggi,
        b: &Sggi,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        budget: &mut u64,
    ) -> Result<bool> {
        let x = match (0..a.degree()).find(|&p| map[p].is_none()) {
            None => return Ok(true),
            Some(x) => x,
        };
        for y in 0..a.degree() {
            if used[y] {
                continue;
            }
            if *budget == 0 {
                return Err(Error::IsomorphismBudget { budget: 0 });
            }
            *budget -= 1;
            let mut trail = Vec::new();
            if assign(x, y, a, b, map, used, &mut trail) && search(a, b, map, used, budget)? {
                return Ok(true);
            }
            undo(&trail, map, used);
        }
        Ok(false)
    }
    let _ = r;
    search(a, b, &mut map, &mut used, budget)
}

/// Conjugacy of the generator tuples under a relabeling of the points; on
/// six points the exceptional outer automorphism is tried as well.
pub fn are_isomorphic(a: &Sggi, b: &Sggi) -> Result<bool> {
    are_isomorphic_budgeted(a, b, 10_000_000)
}

pub fn are_isomorphic_budgeted(a: &Sggi, b: &Sggi, budget: u64) -> Result<bool> {
    if a.degree() != b.degree() || a.rank() != b.rank() {
        return Ok(false);
    }
    if fingerprint(a) != fingerprint(b) {
        return Ok(false);
    }
    let mut budget = budget;
    if conjugator_exists(a, b, &mut budget)? {
        return Ok(true);
    }
    if a.degree() == 6 {
        let twisted = Sggi::new(
            6,
            a.generators().iter().map(apply_outer).collect(),
        )?;
        if conjugator_exists(&twisted, b, &mut budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Equal as sggis up to relabeling, duality, or both.
pub fn isomorphic_up_to_duality(a: &Sggi, b: &Sggi) -> Result<bool> {
    Ok(are_isomorphic(a, b)? || are_isomorphic(&a.dual(), b)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyCheck {
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    pub n: usize,
    pub rank: usize,
    pub built: bool,
    pub sggi_valid: bool,
    pub connected_diagram: bool,
    pub scg_verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<String>,
    pub expected: bool,
    #[serde(rename = "match")]
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub checks: Vec<FamilyCheck>,
    pub accepted_pairwise_distinct: bool,
    pub colliding_pairs: Vec<(String, String)>,
    pub all_match: bool,
}

fn check_family(id: &FamilyId, n: usize, cap: u64) -> FamilyCheck {
    let rank = id.tag.rank_class().rank_at(n);
    let expected = expected_verdict(id).accepted;
    let mut check = FamilyCheck {
        tag: id.tag.name().to_string(),
        i: id.i,
        n,
        rank,
        built: false,
        sggi_valid: false,
        connected_diagram: false,
        scg_verdict: None,
        group_order: None,
        expected,
        matches: false,
        witness: None,
        error: None,
    };
    let graph = match families::build_family(id, n) {
        Ok(g) => g,
        Err(e) => {
            check.error = Some(e.to_string());
            return check;
        }
    };
    check.built = true;
    let sggi = match graph.to_sggi() {
        Ok(s) => s,
        Err(e) => {
            check.error = Some(e.to_string());
            return check;
        }
    };
    check.sggi_valid = true;
    check.connected_diagram = sggi.diagram().connected;
    let order = sggi.group().order();
    check.group_order = Some(order.to_string());
    let verdict = match is_string_c_group(&sggi, cap) {
        Ok(v) => v,
        Err(e) => {
            check.error = Some(e.to_string());
            return check;
        }
    };
    check.scg_verdict = Some(verdict.is_string_c_group);
    check.witness = verdict.witness.clone();
    check.matches = if expected {
        verdict.is_string_c_group && order == factorial(n) && check.connected_diagram
    } else {
        !verdict.is_string_c_group
            && verdict
                .witness
                .as_ref()
                .map(|w| validate_witness(&sggi, w).unwrap_or(false))
                .unwrap_or(false)
    };
    check
}

/// Applicable rank classes at degree `n`.
pub fn theorem_rank_classes(n: usize) -> Vec<RankClass> {
    let mut classes = vec![RankClass::NMinus1, RankClass::NMinus2];
    if n >= 9 {
        classes.push(RankClass::NMinus3);
    }
    if n >= 11 {
        classes.push(RankClass::NMinus4);
    }
    classes
}

/// Checks every candidate family of the given rank classes at degree `n`
/// against its expected verdict, in parallel, and reports per-family
/// results in canonical order.
pub fn verify_theorem_classes(n: usize, classes: &[RankClass], cap: u64) -> Result<TheoremReport> {
    if n < 9 {
        return Err(Error::Family {
            family: "theorem".to_string(),
            detail: format!("verification needs degree >= 9, got {n}"),
        });
    }
    let mut ids: Vec<FamilyId> = Vec::new();
    for &class in classes {
        for tag in families::candidates(class) {
            ids.extend(families::ids_at(tag, n));
        }
    }
    let checks: Vec<FamilyCheck> = ids.par_iter().map(|id| check_family(id, n, cap)).collect();

    // Accepted families must be pairwise distinct even allowing duality.
    let accepted: Vec<(String, Sggi)> = ids
        .iter()
        .filter(|id| expected_verdict(id).accepted)
        .filter_map(|id| {
            families::build_family_sggi(id, n)
                .ok()
                .map(|s| (id.label(), s))
        })
        .collect();
    let mut colliding = Vec::new();
    for x in 0..accepted.len() {
        for y in x + 1..accepted.len() {
            if isomorphic_up_to_duality(&accepted[x].1, &accepted[y].1)? {
                colliding.push((accepted[x].0.clone(), accepted[y].0.clone()));
            }
        }
    }
    let all_match = checks.iter().all(|c| c.matches) && colliding.is_empty();
    Ok(TheoremReport {
        n,
        checks,
        accepted_pairwise_distinct: colliding.is_empty(),
        colliding_pairs: colliding,
        all_match,
    })
}

pub fn verify_theorem(n: usize, cap: u64) -> Result<TheoremReport> {
    verify_theorem_classes(n, &theorem_rank_classes(n), cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpr::CprGraph;
    use crate::families::FamilyTag;

    fn simplex(n: usize) -> Sggi {
        CprGraph::path(&(0..n - 1).collect::<Vec<_>>())
            .unwrap()
            .to_sggi()
            .unwrap()
    }

    fn family(tag: FamilyTag, i: Option<usize>, n: usize) -> Sggi {
        families::build_family_sggi(&FamilyId::new(tag, i).unwrap(), n).unwrap()
    }

    #[test]
    fn simplex_passes_both_methods() {
        let s = simplex(5);
        assert!(intersection_property_full(&s, DEFAULT_CAP)
            .unwrap()
            .is_string_c_group);
        assert!(is_string_c_group(&s, DEFAULT_CAP).unwrap().is_string_c_group);
    }

    #[test]
    fn rank_two_is_always_positive() {
        let s = CprGraph::path(&[0, 1]).unwrap().to_sggi().unwrap();
        assert!(intersection_property_full(&s, DEFAULT_CAP)
            .unwrap()
            .is_string_c_group);
    }

    #[test]
    fn m1_fails_with_the_cited_subgroup_pair_order() {
        let s = family(FamilyTag::M1, Some(0), 9);
        let verdict = is_string_c_group(&s, DEFAULT_CAP).unwrap();
        assert!(!verdict.is_string_c_group);
        let w = verdict.witness.unwrap();
        assert!(validate_witness(&s, &w).unwrap());

        // the recorded pair: J = {0..=i+2}, K = {i+1..=r-1}
        let pair = expected_verdict(&FamilyId::with_i(FamilyTag::M1, 0))
            .witness_pair
            .unwrap();
        let (j, k) = pair.resolve(s.rank());
        let gj = subset_group(&s, &j).unwrap();
        let gk = subset_group(&s, &k).unwrap();
        let meet = gj.intersection(&gk, DEFAULT_CAP).unwrap();
        assert_eq!(meet.order(), 120u32.into());
    }

    #[test]
    fn family_a_is_accepted_at_nine() {
        let s = family(FamilyTag::A, None, 9);
        let verdict = is_string_c_group(&s, DEFAULT_CAP).unwrap();
        assert!(verdict.is_string_c_group);
        assert_eq!(s.group().order(), factorial(9));
    }

    #[test]
    fn fingerprints_separate_l1_from_l2() {
        let l1 = family(FamilyTag::L1, None, 9);
        let l2 = family(FamilyTag::L2, None, 9);
        assert_ne!(fingerprint(&l1), fingerprint(&l2));
    }

    #[test]
    fn fingerprint_is_relabeling_invariant() {
        let s = family(FamilyTag::A, None, 9);
        let rel = Permutation::parse("(1 5 3)(2 9)(4 7 8 6)", 9).unwrap();
        let t = s.relabel(&rel).unwrap();
        assert_eq!(fingerprint(&s), fingerprint(&t));
        assert!(are_isomorphic(&s, &t).unwrap());
    }

    #[test]
    fn a_and_g_are_not_isomorphic() {
        let a = family(FamilyTag::A, None, 9);
        let g = family(FamilyTag::G, None, 9);
        assert!(!are_isomorphic(&a, &g).unwrap());
        assert!(!isomorphic_up_to_duality(&a, &g).unwrap());
    }

    #[test]
    fn v2_zero_is_isomorphic_to_s2() {
        let v2 = family(FamilyTag::V2, Some(0), 11);
        let s2 = family(FamilyTag::S2, None, 11);
        assert!(are_isomorphic(&v2, &s2).unwrap());
    }

    #[test]
    fn simplex_is_self_dual() {
        let s = simplex(6);
        assert_eq!(fingerprint(&s), fingerprint(&s.dual()));
        assert!(are_isomorphic(&s, &s.dual()).unwrap());
    }

    #[test]
    fn oracle_and_recursive_agree_on_family_fixtures() {
        for (tag, i, n) in [
            (FamilyTag::A, None, 9),
            (FamilyTag::M1, Some(0), 9),
            (FamilyTag::M2, Some(0), 9),
            (FamilyTag::M2, Some(1), 9),
            (FamilyTag::L3, None, 9),
        ] {
            let s = family(tag, i, n);
            let fast = is_string_c_group(&s, DEFAULT_CAP).unwrap();
            let slow = intersection_property_full(&s, DEFAULT_CAP).unwrap();
            assert_eq!(
                fast.is_string_c_group, slow.is_string_c_group,
                "{tag} i={i:?} n={n}"
            );
        }
    }

    #[test]
    fn dual_invariance_of_verdicts() {
        for (tag, i) in [
            (FamilyTag::A, None),
            (FamilyTag::K, None),
            (FamilyTag::M1, Some(1)),
            (FamilyTag::M2, Some(0)),
        ] {
            let s = family(tag, i, 9);
            let v = is_string_c_group(&s, DEFAULT_CAP).unwrap();
            let vd = is_string_c_group(&s.dual(), DEFAULT_CAP).unwrap();
            assert_eq!(v.is_string_c_group, vd.is_string_c_group);
        }
    }

    #[test]
    fn full_oracle_witness_revalidates() {
        let s = family(FamilyTag::M1, Some(1), 9);
        let verdict = intersection_property_full(&s, DEFAULT_CAP).unwrap();
        assert!(!verdict.is_string_c_group);
        assert!(validate_witness(&s, &verdict.witness.unwrap()).unwrap());
    }
}
