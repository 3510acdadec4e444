//! String groups generated by involutions.
//!
//! An [`Sggi`] is an ordered sequence of pairwise distinct non-identity
//! involutions acting on `{1..n}` in which generators at distance greater
//! than one commute. It is the group-with-distinguished-generators object
//! behind every graph this crate builds, and carries the Schlafli type,
//! duality and sesqui-extension operations.

use std::fmt;

use crate::cpr::CprGraph;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sggi {
    degree: usize,
    generators: Vec<Permutation>,
}

/// Orders of the products of consecutive generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchlafliType(pub Vec<u64>);

impl SchlafliType {
    pub fn reversed(&self) -> SchlafliType {
        let mut v = self.0.clone();
        v.reverse();
        SchlafliType(v)
    }
}

impl fmt::Display for SchlafliType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Coxeter-diagram data for the string: one entry per consecutive pair,
/// plus whether the string diagram is connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub entries: Vec<(usize, usize, u64)>,
    pub connected: bool,
}

impl Sggi {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Sggi> {
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        for (k, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
            if g.is_identity() {
                return Err(Error::IdentityGenerator { index: k });
            }
            if !g.is_involution() {
                return Err(Error::NotAnInvolution { index: k });
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if generators[i] == generators[j] {
                    return Err(Error::DuplicateGenerator {
                        first: i,
                        second: j,
                    });
                }
                if j - i > 1 && !generators[i].commutes_with(&generators[j]) {
                    return Err(Error::CommutingViolation { i, j });
                }
            }
        }
        Ok(Sggi { degree, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator(&self, k: usize) -> &Permutation {
        &self.generators[k]
    }

    /// The permutation group generated by the full sequence.
    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.generators.clone()).expect("sggi is nonempty")
    }

    pub fn schlafli_type(&self) -> SchlafliType {
        SchlafliType(
            self.generators
                .windows(2)
                .map(|w| w[0].then(&w[1]).order())
                .collect(),
        )
    }

    /// Entry `2` means the string diagram drops that edge; the diagram is
    /// connected exactly when no entry is `2`.
    pub fn diagram(&self) -> Diagram {
        let t = self.schlafli_type();
        let entries: Vec<(usize, usize, u64)> = t
            .0
            .iter()
            .enumerate()
            .map(|(i, &p)| (i, i + 1, p))
            .collect();
        let connected = entries.iter().all(|&(_, _, p)| p != 2);
        Diagram { entries, connected }
    }

    /// Generator sequence reversed.
    pub fn dual(&self) -> Sggi {
        let mut generators = self.generators.clone();
        generators.reverse();
        Sggi {
            degree: self.degree,
            generators,
        }
    }

    /// Extends the action by two fresh points carrying a transposition
    /// `tau`, and multiplies generator `k` by it. `tau` commutes with
    /// everything and lies outside the original group by construction.
    pub fn sesqui_extension(&self, k: usize) -> Result<Sggi> {
        if k >= self.rank() {
            return Err(Error::RankIndexOutOfRange {
                index: k,
                rank: self.rank(),
            });
        }
        let n = self.degree;
        let generators: Vec<Permutation> = self
            .generators
            .iter()
            .enumerate()
            .map(|(idx, g)| {
                let mut images: Vec<usize> = g.images().collect();
                images.push(n);
                images.push(n + 1);
                if idx == k {
                    images.swap(n, n + 1);
                }
                Permutation::from_images(images).expect("extension stays a bijection")
            })
            .collect();
        Sggi::new(n + 2, generators)
    }

    /// The permutation representation graph: one `i`-edge per 2-cycle of
    /// generator `i`.
    pub fn to_graph(&self) -> CprGraph {
        let mut edges = Vec::new();
        for (label, g) in self.generators.iter().enumerate() {
            for cycle in g.cycles() {
                edges.push((cycle[0], cycle[1], label));
            }
        }
        CprGraph::new(self.degree, self.rank(), &edges)
            .expect("involution cycles form matchings")
    }

    pub fn is_transitive(&self) -> bool {
        crate::group::orbits(&self.generators, self.degree).len() == 1
    }

    /// Applies a point relabeling to every generator.
    pub fn relabel(&self, relabeling: &Permutation) -> Result<Sggi> {
        if relabeling.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: relabeling.degree(),
            });
        }
        let generators = self
            .generators
            .iter()
            .map(|g| g.conjugate(relabeling))
            .collect();
        Sggi::new(self.degree, generators)
    }
}
