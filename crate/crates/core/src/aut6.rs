//! The exceptional outer automorphism of the symmetric group on six
//! points, shipped as an explicit image table for the five adjacent
//! transpositions and extended to arbitrary elements by word
//! decomposition.

use crate::perm::Permutation;

/// Images of the adjacent transpositions `(k k+1)` (1-based), k = 1..=5.
/// Each image is a triple transposition, so the map is not inner; the
/// images satisfy the defining relations, so it extends to an
/// automorphism.
pub const OUTER_IMAGES: [&str; 5] = [
    "(1 2)(3 4)(5 6)",
    "(1 3)(2 5)(4 6)",
    "(1 2)(3 6)(4 5)",
    "(1 3)(2 4)(5 6)",
    "(1 2)(3 5)(4 6)",
];

fn outer_images() -> [Permutation; 5] {
    OUTER_IMAGES.map(|s| Permutation::parse(s, 6).expect("fixture parses"))
}

/// Writes a degree-6 permutation as a word in adjacent transpositions,
/// 0-based adjacency indices, multiplying left to right.
fn adjacent_word(p: &Permutation) -> Vec<usize> {
    let mut word = Vec::new();
    for cycle in p.cycles() {
        // (c0 c1 ... ct) = (c0 c1)(c0 c2)...(c0 ct), applied left first
        for k in 1..cycle.len() {
            let (a, b) = (cycle[0].min(cycle[k]), cycle[0].max(cycle[k]));
            // (a b) = s_a s_{a+1} ... s_{b-1} ... s_{a+1} s_a
            word.extend(a..b);
            word.extend((a..b - 1).rev());
        }
    }
    word
}

/// Applies the outer automorphism to a degree-6 permutation.
pub fn apply_outer(p: &Permutation) -> Permutation {
    assert_eq!(p.degree(), 6, "outer automorphism lives on six points");
    let images = outer_images();
    let mut acc = Permutation::identity(6);
    for k in adjacent_word(p) {
        acc = acc.compose(&images[k]).expect("equal degrees");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_of_s6() -> Vec<Permutation> {
        crate::group::PermGroup::symmetric(6)
            .enumerate_elements(720)
            .unwrap()
    }

    #[test]
    fn word_decomposition_reproduces_the_element() {
        let gens: Vec<Permutation> = (0..5)
            .map(|k| Permutation::transposition(6, k, k + 1).unwrap())
            .collect();
        for p in all_of_s6() {
            let mut acc = Permutation::identity(6);
            for k in adjacent_word(&p) {
                acc = acc.compose(&gens[k]).unwrap();
            }
            assert_eq!(acc, p);
        }
    }

    #[test]
    fn outer_map_is_a_homomorphism() {
        let sample: Vec<Permutation> = all_of_s6().into_iter().step_by(17).collect();
        for p in &sample {
            for q in &sample {
                let lhs = apply_outer(&p.compose(q).unwrap());
                let rhs = apply_outer(p).compose(&apply_outer(q)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn outer_map_is_a_non_inner_bijection() {
        // bijective on S_6
        let mut images = std::collections::BTreeSet::new();
        for p in all_of_s6() {
            images.insert(apply_outer(&p));
        }
        assert_eq!(images.len(), 720);
        // not inner: a transposition maps to a triple transposition
        let t = Permutation::parse("(1 2)", 6).unwrap();
        assert_eq!(apply_outer(&t).cycles().len(), 3);
    }
}
