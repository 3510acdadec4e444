//! Permutations of the points `{1..n}`.
//!
//! Points are 0-based in the Rust API and 1-based in every text form
//! (cycle notation, image sequences, graph files, JSON), matching the
//! usual convention for permutation groups on `{1,...,n}`.
//!
//! Composition is left-to-right: `compose(p, q)` applies `p` first,
//! so `compose(p, q).apply(x) == q.apply(p.apply(x))`.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0..degree}` stored as an image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for (k, &img) in images.iter().enumerate() {
            if img >= degree {
                return Err(Error::NotABijection {
                    degree,
                    detail: format!("image {} of point {} out of range", img + 1, k + 1),
                });
            }
            if seen[img] {
                return Err(Error::NotABijection {
                    degree,
                    detail: format!("image {} repeated", img + 1),
                });
            }
            seen[img] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    /// Builds a permutation of the given degree from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::PointOutOfRange {
                        point: p + 1,
                        degree,
                    });
                }
                if moved[p] {
                    return Err(Error::PermParse {
                        text: String::new(),
                        detail: format!("point {} appears in two cycles", p + 1),
                    });
                }
                moved[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Convenience constructor for a single transposition.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        Permutation::from_cycles(degree, &[vec![a, b]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.images
    }

    pub(crate) fn from_raw(images: Vec<u16>) -> Self {
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &img)| k as u16 == img)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity()
            && self
                .images
                .iter()
                .enumerate()
                .all(|(k, &img)| self.images[img as usize] as usize == k)
    }

    /// Left-to-right composition: apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Same as [`compose`](Self::compose) for pre-checked equal degrees.
    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (k, &img) in self.images.iter().enumerate() {
            images[img as usize] = k as u16;
        }
        Permutation { images }
    }

    /// Conjugate of `self` by `by`: first undo `by`, apply `self`, redo `by`.
    pub fn conjugate(&self, by: &Permutation) -> Permutation {
        by.inverse().then(self).then(by)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.then(other) == other.then(self)
    }

    /// Least `m >= 1` with `self^m` the identity; the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, len| lcm(acc, len as u64))
    }

    /// True for odd permutations (odd number of transpositions).
    pub fn is_odd(&self) -> bool {
        self.cycle_lengths().iter().map(|len| len - 1).sum::<usize>() % 2 == 1
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.apply(p);
            }
            lengths.push(len);
        }
        lengths
    }

    /// Nontrivial cycles as 0-based points, each rotated to start at its
    /// least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// The points moved by this permutation.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&p| self.apply(p) != p).collect()
    }

    /// Parses either cycle notation `(1 2)(3 4)` or an image sequence
    /// `[2,1,4,3]`. Cycle notation needs the degree supplied; the image form
    /// must have exactly `degree` entries. Points are 1-based.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.starts_with('[') {
            let p = Self::parse_images(trimmed)?;
            if p.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: p.degree(),
                    right: degree,
                });
            }
            Ok(p)
        } else if trimmed.starts_with('(') {
            Self::parse_cycles(trimmed, degree)
        } else {
            Err(Error::PermParse {
                text: text.to_string(),
                detail: "expected '(' or '['".to_string(),
            })
        }
    }

    /// Parses the 1-based image sequence form `[2,1,4,3]`.
    pub fn parse_images(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::PermParse {
                text: text.to_string(),
                detail: "image form must be bracketed".to_string(),
            })?;
        let mut images = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let v: usize = part.parse().map_err(|_| Error::PermParse {
                text: text.to_string(),
                detail: format!("bad image {part:?}"),
            })?;
            if v == 0 {
                return Err(Error::PermParse {
                    text: text.to_string(),
                    detail: "points are 1-based".to_string(),
                });
            }
            images.push(v - 1);
        }
        Permutation::from_images(images)
    }

    /// Parses 1-based cycle notation `(1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut token = String::new();
        let flush =
            |token: &mut String, current: &mut Option<Vec<usize>>| -> Result<()> {
                if token.is_empty() {
                    return Ok(());
                }
                let v: usize = token.parse().map_err(|_| Error::PermParse {
                    text: text.to_string(),
                    detail: format!("bad point {token:?}"),
                })?;
                token.clear();
                if v == 0 {
                    return Err(Error::PermParse {
                        text: text.to_string(),
                        detail: "points are 1-based".to_string(),
                    });
                }
                current
                    .as_mut()
                    .ok_or_else(|| Error::PermParse {
                        text: text.to_string(),
                        detail: "point outside cycle".to_string(),
                    })?
                    .push(v - 1);
                Ok(())
            };
        for c in text.trim().chars() {
            match c {
                '(' => {
                    if current.is_some() {
                        return Err(Error::PermParse {
                            text: text.to_string(),
                            detail: "nested '('".to_string(),
                        });
                    }
                    current = Some(Vec::new());
                }
                ')' => {
                    flush(&mut token, &mut current)?;
                    let cycle = current.take().ok_or_else(|| Error::PermParse {
                        text: text.to_string(),
                        detail: "unmatched ')'".to_string(),
                    })?;
                    if cycle.len() >= 2 {
                        cycles.push(cycle);
                    }
                }
                ' ' | ',' => flush(&mut token, &mut current)?,
                d if d.is_ascii_digit() => token.push(d),
                other => {
                    return Err(Error::PermParse {
                        text: text.to_string(),
                        detail: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
        if current.is_some() || !token.is_empty() {
            return Err(Error::PermParse {
                text: text.to_string(),
                detail: "unterminated cycle".to_string(),
            });
        }
        Permutation::from_cycles(degree, &cycles)
    }

    /// 1-based cycle notation; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|cycle| {
                let pts: Vec<String> = cycle.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect()
    }

    /// 1-based image sequence form `[2,1,4,3]`.
    pub fn to_image_string(&self) -> String {
        let imgs: Vec<String> = self.images.iter().map(|&x| (x + 1).to_string()).collect();
        format!("[{}]", imgs.join(","))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.to_cycle_string())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    #[test]
    fn compose_identity() {
        let p = Permutation::identity(5);
        let q = perm("(1 2)", 5);
        assert_eq!(p.compose(&q).unwrap(), q);
        assert_eq!(q.compose(&p).unwrap(), q);
    }

    #[test]
    fn involution_squares_to_identity() {
        let q = perm("(1 2)", 5);
        assert!(q.compose(&q).unwrap().is_identity());
    }

    #[test]
    fn compose_matches_s3_multiplication_table() {
        // Independent oracle: enumerate S_3 by raw image triples and multiply
        // them with a local closure, never through Permutation::compose.
        let elements: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ];
        let table_mul = |p: &[usize], q: &[usize]| -> Vec<usize> {
            (0..3).map(|x| q[p[x]]).collect()
        };
        for p in &elements {
            for q in &elements {
                let expect = table_mul(p, q);
                let got = Permutation::from_images(p.clone())
                    .unwrap()
                    .compose(&Permutation::from_images(q.clone()).unwrap())
                    .unwrap();
                assert_eq!(got.images().collect::<Vec<_>>(), expect);
            }
        }
        // The spec's sample product, frozen from the table: (1 2 3) * (1 2) = (2 3).
        let got = perm("(1 2 3)", 3).compose(&perm("(1 2)", 3)).unwrap();
        assert_eq!(got, perm("(2 3)", 3));
    }

    #[test]
    fn compose_degree_mismatch() {
        let p = Permutation::identity(4);
        let q = Permutation::identity(5);
        assert!(matches!(
            p.compose(&q),
            Err(Error::DegreeMismatch { left: 4, right: 5 })
        ));
    }

    #[test]
    fn order_examples() {
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(perm("(1 2)(3 4 5)", 5).order(), 6);
    }

    #[test]
    fn inverse_cancels() {
        let p = perm("(1 4 2)(3 5)", 6);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert!(p.inverse().compose(&p).unwrap().is_identity());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Permutation::parse("(1 2", 4).is_err());
        assert!(Permutation::parse("[1,1,3]", 3).is_err());
        assert!(Permutation::parse("(0 1)", 4).is_err());
        assert!(Permutation::parse("x", 4).is_err());
        assert!(Permutation::parse("(1 9)", 4).is_err());
    }

    #[test]
    fn text_forms_round_trip() {
        let p = perm("(1 3)(2 5 4)", 6);
        assert_eq!(Permutation::parse(&p.to_cycle_string(), 6).unwrap(), p);
        assert_eq!(Permutation::parse(&p.to_image_string(), 6).unwrap(), p);
        let id = Permutation::identity(3);
        assert_eq!(id.to_cycle_string(), "()");
        assert_eq!(Permutation::parse("()", 3).unwrap(), id);
    }

    #[test]
    fn parity() {
        assert!(perm("(1 2)", 5).is_odd());
        assert!(!perm("(1 2)(3 4)", 5).is_odd());
        assert!(perm("(1 2 3 4)", 5).is_odd());
    }
}
