//! Parametric constructors for the candidate permutation representation
//! graphs of rank close to the degree, plus the wreath-product family.
//!
//! Linear families are paths described by their label sequence; a position
//! may carry two labels (a double edge). Two-row families attach a short
//! bottom row to a labeled top path. Vertices are numbered left-to-right
//! along the top row, then left-to-right along the bottom row.

use serde::Serialize;

use crate::cpr::CprGraph;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::sggi::Sggi;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyTag {
    Simplex,
    RankNminus2,
    A,
    G,
    K,
    L1,
    L2,
    L3,
    M1,
    M2,
    B,
    C,
    D,
    E,
    H1,
    H2,
    I,
    N1,
    N2,
    N3,
    O1,
    O2,
    P1,
    P2,
    P3,
    Q1,
    Q2,
    Q3,
    R1,
    R2,
    S1,
    S2,
    T1,
    T2,
    U1,
    U2,
    V1,
    V2,
    Wreath,
}

/// Rank of a family as a function of the degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RankClass {
    NMinus1,
    NMinus2,
    NMinus3,
    NMinus4,
    /// `n/2 + 1`, the wreath family.
    HalfPlusOne,
}

impl RankClass {
    pub fn rank_at(self, n: usize) -> usize {
        match self {
            RankClass::NMinus1 => n - 1,
            RankClass::NMinus2 => n - 2,
            RankClass::NMinus3 => n - 3,
            RankClass::NMinus4 => n - 4,
            RankClass::HalfPlusOne => n / 2 + 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RankClass::NMinus1 => "n-1",
            RankClass::NMinus2 => "n-2",
            RankClass::NMinus3 => "n-3",
            RankClass::NMinus4 => "n-4",
            RankClass::HalfPlusOne => "n/2+1",
        }
    }
}

pub const RANK_N_MINUS_3_TAGS: [FamilyTag; 8] = [
    FamilyTag::A,
    FamilyTag::G,
    FamilyTag::K,
    FamilyTag::L1,
    FamilyTag::L2,
    FamilyTag::L3,
    FamilyTag::M1,
    FamilyTag::M2,
];

pub const RANK_N_MINUS_4_TAGS: [FamilyTag; 28] = [
    FamilyTag::B,
    FamilyTag::C,
    FamilyTag::D,
    FamilyTag::E,
    FamilyTag::H1,
    FamilyTag::H2,
    FamilyTag::I,
    FamilyTag::N1,
    FamilyTag::N2,
    FamilyTag::N3,
    FamilyTag::O1,
    FamilyTag::O2,
    FamilyTag::P1,
    FamilyTag::P2,
    FamilyTag::P3,
    FamilyTag::Q1,
    FamilyTag::Q2,
    FamilyTag::Q3,
    FamilyTag::R1,
    FamilyTag::R2,
    FamilyTag::S1,
    FamilyTag::S2,
    FamilyTag::T1,
    FamilyTag::T2,
    FamilyTag::U1,
    FamilyTag::U2,
    FamilyTag::V1,
    FamilyTag::V2,
];

impl FamilyTag {
    pub const ALL: [FamilyTag; 39] = [
        FamilyTag::Simplex,
        FamilyTag::RankNminus2,
        FamilyTag::A,
        FamilyTag::G,
        FamilyTag::K,
        FamilyTag::L1,
        FamilyTag::L2,
        FamilyTag::L3,
        FamilyTag::M1,
        FamilyTag::M2,
        FamilyTag::B,
        FamilyTag::C,
        FamilyTag::D,
        FamilyTag::E,
        FamilyTag::H1,
        FamilyTag::H2,
        FamilyTag::I,
        FamilyTag::N1,
        FamilyTag::N2,
        FamilyTag::N3,
        FamilyTag::O1,
        FamilyTag::O2,
        FamilyTag::P1,
        FamilyTag::P2,
        FamilyTag::P3,
        FamilyTag::Q1,
        FamilyTag::Q2,
        FamilyTag::Q3,
        FamilyTag::R1,
        FamilyTag::R2,
        FamilyTag::S1,
        FamilyTag::S2,
        FamilyTag::T1,
        FamilyTag::T2,
        FamilyTag::U1,
        FamilyTag::U2,
        FamilyTag::V1,
        FamilyTag::V2,
        FamilyTag::Wreath,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Simplex => "Simplex",
            FamilyTag::RankNminus2 => "RankNminus2",
            FamilyTag::A => "A",
            FamilyTag::G => "G",
            FamilyTag::K => "K",
            FamilyTag::L1 => "L1",
            FamilyTag::L2 => "L2",
            FamilyTag::L3 => "L3",
            FamilyTag::M1 => "M1",
            FamilyTag::M2 => "M2",
            FamilyTag::B => "B",
            FamilyTag::C => "C",
            FamilyTag::D => "D",
            FamilyTag::E => "E",
            FamilyTag::H1 => "H1",
            FamilyTag::H2 => "H2",
            FamilyTag::I => "I",
            FamilyTag::N1 => "N1",
            FamilyTag::N2 => "N2",
            FamilyTag::N3 => "N3",
            FamilyTag::O1 => "O1",
            FamilyTag::O2 => "O2",
            FamilyTag::P1 => "P1",
            FamilyTag::P2 => "P2",
            FamilyTag::P3 => "P3",
            FamilyTag::Q1 => "Q1",
            FamilyTag::Q2 => "Q2",
            FamilyTag::Q3 => "Q3",
            FamilyTag::R1 => "R1",
            FamilyTag::R2 => "R2",
            FamilyTag::S1 => "S1",
            FamilyTag::S2 => "S2",
            FamilyTag::T1 => "T1",
            FamilyTag::T2 => "T2",
            FamilyTag::U1 => "U1",
            FamilyTag::U2 => "U2",
            FamilyTag::V1 => "V1",
            FamilyTag::V2 => "V2",
            FamilyTag::Wreath => "Wreath",
        }
    }

    pub fn rank_class(self) -> RankClass {
        use FamilyTag::*;
        match self {
            Simplex => RankClass::NMinus1,
            RankNminus2 => RankClass::NMinus2,
            A | G | K | L1 | L2 | L3 | M1 | M2 => RankClass::NMinus3,
            Wreath => RankClass::HalfPlusOne,
            _ => RankClass::NMinus4,
        }
    }

    /// Tags whose graph takes the extra offset parameter `i`.
    pub fn is_parametric(self) -> bool {
        use FamilyTag::*;
        matches!(self, M1 | M2 | O1 | O2 | V1 | V2)
    }

    /// Smallest degree the constructor accepts.
    pub fn min_degree(self) -> usize {
        match self.rank_class() {
            RankClass::NMinus1 => 2,
            RankClass::NMinus2 => 4,
            RankClass::NMinus3 => 9,
            RankClass::NMinus4 => 11,
            RankClass::HalfPlusOne => 6,
        }
    }
}

impl std::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilyTag> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Candidate tags for a rank class, in canonical order.
pub fn candidates(class: RankClass) -> Vec<FamilyTag> {
    match class {
        RankClass::NMinus1 => vec![FamilyTag::Simplex],
        RankClass::NMinus2 => vec![FamilyTag::RankNminus2],
        RankClass::NMinus3 => RANK_N_MINUS_3_TAGS.to_vec(),
        RankClass::NMinus4 => RANK_N_MINUS_4_TAGS.to_vec(),
        RankClass::HalfPlusOne => vec![FamilyTag::Wreath],
    }
}

/// A family tag with its offset parameter, present exactly for the
/// parametric tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FamilyId {
    pub tag: FamilyTag,
    pub i: Option<usize>,
}

impl FamilyId {
    pub fn new(tag: FamilyTag, i: Option<usize>) -> Result<FamilyId> {
        if tag.is_parametric() != i.is_some() {
            return Err(Error::Family {
                family: tag.name().to_string(),
                detail: if tag.is_parametric() {
                    "this family needs the parameter i".to_string()
                } else {
                    "this family takes no parameter".to_string()
                },
            });
        }
        Ok(FamilyId { tag, i })
    }

    pub fn plain(tag: FamilyTag) -> FamilyId {
        FamilyId::new(tag, None).expect("non-parametric tag")
    }

    pub fn with_i(tag: FamilyTag, i: usize) -> FamilyId {
        FamilyId::new(tag, Some(i)).expect("parametric tag")
    }

    pub fn label(&self) -> String {
        match self.i {
            Some(i) => format!("{}(i={})", self.tag, i),
            None => self.tag.to_string(),
        }
    }
}

impl std::fmt::Display for FamilyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

/// Every valid id for the tag at degree `n`: the parameter sweeps
/// `0..=rank-4`.
pub fn ids_at(tag: FamilyTag, n: usize) -> Vec<FamilyId> {
    if !tag.is_parametric() {
        return vec![FamilyId::plain(tag)];
    }
    let rank = tag.rank_class().rank_at(n);
    (0..=rank.saturating_sub(4))
        .map(|i| FamilyId::with_i(tag, i))
        .collect()
}

/// One path position: a single labeled edge or a double edge.
#[derive(Debug, Clone, Copy)]
enum Pos {
    S(usize),
    D(usize, usize),
}

fn asc(from: usize, to: usize) -> Vec<Pos> {
    (from..=to).map(Pos::S).collect()
}

fn path_graph(n: usize, rank: usize, positions: &[Pos]) -> Result<CprGraph> {
    assert_eq!(positions.len(), n - 1, "path template length");
    let mut edges = Vec::new();
    for (k, pos) in positions.iter().enumerate() {
        match *pos {
            Pos::S(l) => edges.push((k, k + 1, l)),
            Pos::D(l1, l2) => {
                edges.push((k, k + 1, l1));
                edges.push((k, k + 1, l2));
            }
        }
    }
    CprGraph::new(n, rank, &edges)
}

fn check_floor(tag: FamilyTag, n: usize) -> Result<()> {
    if n < tag.min_degree() {
        return Err(Error::Family {
            family: tag.name().to_string(),
            detail: format!("needs degree >= {}, got {}", tag.min_degree(), n),
        });
    }
    Ok(())
}

fn check_param(tag: FamilyTag, n: usize, i: usize) -> Result<()> {
    let rank = tag.rank_class().rank_at(n);
    if i + 4 > rank {
        return Err(Error::Family {
            family: tag.name().to_string(),
            detail: format!("parameter i={i} out of range 0..={}", rank - 4),
        });
    }
    Ok(())
}

/// The wreath-family generators: rank `n/2 + 1` on `n` points,
/// `n = 2 mod 4`. The block swap comes first and the remaining involutions
/// follow in the string order, giving type `[2,3,...,3,4]`.
pub fn wreath_sggi(n: usize) -> Result<Sggi> {
    if n < 6 || n % 4 != 2 {
        return Err(Error::Family {
            family: "Wreath".to_string(),
            detail: format!("needs degree = 2 mod 4 and >= 6, got {n}"),
        });
    }
    let half = n / 2;
    // (1, n/2+1)(2, n/2+2)...(n/2, n)
    let block_swap =
        Permutation::from_cycles(n, &(0..half).map(|k| vec![k, half + k]).collect::<Vec<_>>())
            .expect("matching");
    // (2, n/2+2)...(n/2, n)
    let tail = Permutation::from_cycles(
        n,
        &(1..half).map(|k| vec![k, half + k]).collect::<Vec<_>>(),
    )
    .expect("matching");
    // (i-1, i)(n/2+i-1, n/2+i) for 2 <= i <= n/2
    let pairs: Vec<Permutation> = (2..=half)
        .map(|k| {
            Permutation::from_cycles(n, &[vec![k - 2, k - 1], vec![half + k - 2, half + k - 1]])
                .expect("matching")
        })
        .collect();
    let mut gens = Vec::with_capacity(half + 1);
    gens.push(block_swap);
    gens.extend(pairs.into_iter().rev());
    gens.push(tail);
    Sggi::new(n, gens)
}

/// Builds the family graph at degree `n`.
pub fn build_family(id: &FamilyId, n: usize) -> Result<CprGraph> {
    use FamilyTag::*;
    let tag = id.tag;
    check_floor(tag, n)?;
    if let Some(i) = id.i {
        check_param(tag, n, i)?;
    }
    let rank = tag.rank_class().rank_at(n);

    // Linear families: the label sequence along the path.
    let linear: Option<Vec<Pos>> = match (tag, id.i) {
        (Simplex, _) => Some(asc(0, n - 2)),
        (RankNminus2, _) => Some([vec![Pos::S(1), Pos::S(0)], asc(1, n - 3)].concat()),
        (K, _) => Some([vec![Pos::S(1), Pos::S(0)], asc(1, n - 4), vec![Pos::S(n - 5)]].concat()),
        (L1, _) => Some([vec![Pos::S(0), Pos::S(1), Pos::S(0)], asc(1, n - 4)].concat()),
        (L2, _) => Some([vec![Pos::S(2), Pos::S(1), Pos::S(0)], asc(1, n - 4)].concat()),
        (L3, _) => Some([vec![Pos::D(0, 2), Pos::S(1), Pos::S(0)], asc(1, n - 4)].concat()),
        (M1, Some(i)) => Some(
            [
                asc(0, i),
                vec![Pos::S(i + 1), Pos::S(i + 2), Pos::S(i + 1)],
                asc(i + 2, n - 4),
            ]
            .concat(),
        ),
        (M2, Some(i)) => Some(
            [
                asc(0, i),
                vec![Pos::S(i + 1), Pos::D(i, i + 2), Pos::S(i + 1)],
                asc(i + 2, n - 4),
            ]
            .concat(),
        ),
        (N1, _) => Some(
            [
                vec![Pos::S(0), Pos::S(1), Pos::S(0)],
                asc(1, n - 5),
                vec![Pos::S(n - 6)],
            ]
            .concat(),
        ),
        (N2, _) => Some(
            [
                vec![Pos::S(2), Pos::S(1), Pos::S(0)],
                asc(1, n - 5),
                vec![Pos::S(n - 6)],
            ]
            .concat(),
        ),
        (N3, _) => Some(
            [
                vec![Pos::D(0, 2), Pos::S(1), Pos::S(0)],
                asc(1, n - 5),
                vec![Pos::S(n - 6)],
            ]
            .concat(),
        ),
        (O1, Some(i)) => Some(
            [
                asc(0, i),
                vec![Pos::S(i + 1), Pos::S(i + 2), Pos::S(i + 1)],
                asc(i + 2, n - 5),
                vec![Pos::S(n - 6)],
            ]
            .concat(),
        ),
        (O2, Some(i)) => Some(
            [
                asc(0, i),
                vec![Pos::S(i + 1), Pos::D(i, i + 2), Pos::S(i + 1)],
                asc(i + 2, n - 5),
                vec![Pos::S(n - 6)],
            ]
            .concat(),
        ),
        (P1, _) => Some([vec![Pos::S(1), Pos::S(0), Pos::S(1), Pos::S(0)], asc(1, n - 5)].concat()),
        (P2, _) | (Q1, _) => {
            Some([vec![Pos::S(1), Pos::S(2), Pos::S(1), Pos::S(0)], asc(1, n - 5)].concat())
        }
        (P3, _) => Some(
            [
                vec![Pos::S(1), Pos::D(0, 2), Pos::S(1), Pos::S(0)],
                asc(1, n - 5),
            ]
            .concat(),
        ),
        (Q2, _) => Some([vec![Pos::S(3), Pos::S(2), Pos::S(1), Pos::S(0)], asc(1, n - 5)].concat()),
        (Q3, _) => Some(
            [
                vec![Pos::D(1, 3), Pos::S(2), Pos::S(1), Pos::S(0)],
                asc(1, n - 5),
            ]
            .concat(),
        ),
        (R1, _) | (U1, _) => Some(
            [
                vec![Pos::S(1), Pos::S(0), Pos::S(1), Pos::S(2), Pos::S(3), Pos::S(2)],
                asc(3, n - 5),
            ]
            .concat(),
        ),
        (R2, _) | (U2, _) => Some(
            [
                vec![
                    Pos::S(1),
                    Pos::S(0),
                    Pos::S(1),
                    Pos::S(2),
                    Pos::D(1, 3),
                    Pos::S(2),
                ],
                asc(3, n - 5),
            ]
            .concat(),
        ),
        (S1, _) => Some(
            [
                vec![Pos::S(1), Pos::S(0), Pos::S(1), Pos::S(2), Pos::S(1)],
                asc(2, n - 5),
            ]
            .concat(),
        ),
        (S2, _) => Some(
            [
                vec![Pos::S(1), Pos::S(0), Pos::S(1), Pos::D(0, 2), Pos::S(1)],
                asc(2, n - 5),
            ]
            .concat(),
        ),
        (T1, _) => Some(
            [
                vec![
                    Pos::S(1),
                    Pos::S(0),
                    Pos::S(1),
                    Pos::S(2),
                    Pos::S(3),
                    Pos::S(4),
                    Pos::S(3),
                ],
                asc(4, n - 5),
            ]
            .concat(),
        ),
        (T2, _) => Some(
            [
                vec![
                    Pos::S(1),
                    Pos::S(0),
                    Pos::S(1),
                    Pos::S(2),
                    Pos::S(3),
                    Pos::D(2, 4),
                    Pos::S(3),
                ],
                asc(4, n - 5),
            ]
            .concat(),
        ),
        (V1, Some(i)) => Some(
            [
                vec![Pos::S(1)],
                asc(0, i),
                vec![Pos::S(i + 1), Pos::S(i + 2), Pos::S(i + 1)],
                asc(i + 2, n - 5),
            ]
            .concat(),
        ),
        (V2, Some(i)) => Some(
            [
                vec![Pos::S(1)],
                asc(0, i),
                vec![Pos::S(i + 1), Pos::D(i, i + 2), Pos::S(i + 1)],
                asc(i + 2, n - 5),
            ]
            .concat(),
        ),
        _ => None,
    };
    if let Some(positions) = linear {
        return path_graph(n, rank, &positions);
    }

    // Two-row families: a labeled top path plus a short bottom row.
    // Vertices: top row 0.., bottom row appended after it.
    let graph = match tag {
        A => {
            // top 0..n-4 labels, square 0/2 on the first two top vertices
            let top = n - 2;
            let mut edges: Vec<(usize, usize, usize)> =
                (0..=n - 4).map(|j| (j, j + 1, j)).collect();
            edges.push((0, top, 2));
            edges.push((1, top + 1, 2));
            edges.push((top, top + 1, 0));
            CprGraph::new(n, rank, &edges)?
        }
        G => {
            let top = n - 2;
            let mut edges: Vec<(usize, usize, usize)> =
                (0..=n - 4).map(|j| (j, j + 1, j)).collect();
            edges.push((0, top, 1));
            edges.push((0, top, 2));
            edges.push((1, top + 1, 2));
            edges.push((top, top + 1, 0));
            CprGraph::new(n, rank, &edges)?
        }
        B => {
            let top = n - 3;
            let mut edges: Vec<(usize, usize, usize)> =
                (0..=n - 5).map(|j| (j, j + 1, j)).collect();
            edges.push((0, top, 3));
            edges.push((1, top + 1, 3));
            edges.push((2, top + 2, 3));
            edges.push((top, top + 1, 0));
            edges.push((top + 1, top + 2, 1));
            CprGraph::new(n, rank, &edges)?
        }
        C => {
            let top = n - 3;
            let mut edges: Vec<(usize, usize, usize)> =
                (0..=n - 5).map(|j| (j, j + 1, j)).collect();
            edges.push((0, top + 1, 2));
            edges.push((1, top + 2, 2));
            edges.push((top, top + 1, 1));
            edges.push((top + 1, top + 2, 0));
            CprGraph::new(n, rank, &edges)?
        }
        D => {
            let top = n - 2;
            let mut edges: Vec<(usize, usize, usize)> = vec![(0, 1, 1), (1, 2, 0), (2, 3, 1)];
            edges.extend((3..=n - 4).map(|j| (j, j + 1, j - 1)));
            edges.push((1, top, 2));
            edges.push((2, top + 1, 2));
            edges.push((top, top + 1, 0));
            CprGraph::new(n, rank, &edges)?
        }
        E => {
            let top = n - 2;
            let mut edges: Vec<(usize, usize, usize)> =
                (0..=n - 5).map(|j| (j, j + 1, j)).collect();
            edges.push((n - 4, n - 3, n - 6));
            edges.push((0, top, 2));
            edges.push((1, top + 1, 2));
            edges.push((top, top + 1, 0));
            CprGraph::new(n, rank, &edges)?
        }
        H1 => {
            let top = n - 3;
            let mut edges: Vec<(usize, usize, usize)> =
                (0..=n - 5).map(|j| (j, j + 1, j)).collect();
            edges.push((0, top, 1));
            edges.push((0, top, 3));
            edges.push((1, top + 1, 3));
            edges.push((2, top + 2, 3));
            edges.push((top, top + 1, 0));
            edges.push((top + 1, top + 2, 1));
            CprGraph::new(n, rank, &edges)?
        }
        H2 => {
            let top = n - 3;
            let mut edges: Vec<(usize, usize, usize)> =
                (0..=n - 5).map(|j| (j, j + 1, j)).collect();
            edges.push((0, top, 2));
            edges.push((0, top, 3));
            edges.push((1, top + 1, 2));
            edges.push((1, top + 1, 3));
            edges.push((2, top + 2, 3));
            edges.push((top, top + 1, 0));
            edges.push((top + 1, top + 2, 1));
            CprGraph::new(n, rank, &edges)?
        }
        I => {
            let top = n - 2;
            let mut edges: Vec<(usize, usize, usize)> =
                (0..=n - 5).map(|j| (j, j + 1, j)).collect();
            edges.push((n - 4, n - 3, n - 6));
            edges.push((0, top, 1));
            edges.push((0, top, 2));
            edges.push((1, top + 1, 2));
            edges.push((top, top + 1, 0));
            CprGraph::new(n, rank, &edges)?
        }
        Wreath => wreath_sggi(n)?.to_graph(),
        other => unreachable!("{other} handled as a linear family"),
    };
    Ok(graph)
}

/// Builds the family and reads off its generator sequence.
pub fn build_family_sggi(id: &FamilyId, n: usize) -> Result<Sggi> {
    build_family(id, n)?.to_sggi()
}

/// Per-tag verdict metadata: some tags flip with the parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Acceptance {
    Yes,
    No,
    ConditionalOnI,
}

/// The rule that decides a family's verdict, with the subgroup pair that
/// witnesses the failure where one is pinned down.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyVerdict {
    pub id: FamilyId,
    pub accepted: bool,
    pub rule: &'static str,
    /// For middle-section rejections: `J = {0..=j_upto}`,
    /// `K = {k_from..=rank-1}`; the intersection exceeds the dihedral
    /// subgroup generated by the two shared generators.
    pub witness_pair: Option<SubgroupPair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubgroupPair {
    pub j_upto: usize,
    pub k_from: usize,
}

impl SubgroupPair {
    pub fn resolve(&self, rank: usize) -> (Vec<usize>, Vec<usize>) {
        ((0..=self.j_upto).collect(), (self.k_from..rank).collect())
    }
}

pub fn tag_acceptance(tag: FamilyTag) -> Acceptance {
    use FamilyTag::*;
    match tag {
        Simplex | RankNminus2 | Wreath => Acceptance::Yes,
        A | G | K | L1 | L2 | L3 => Acceptance::Yes,
        B | E | I | N1 | N2 | N3 | P1 | Q2 => Acceptance::Yes,
        M2 | O2 => Acceptance::ConditionalOnI,
        M1 | O1 | V1 | V2 => Acceptance::No,
        C | D | H1 | H2 | P2 | P3 | Q1 | Q3 | R1 | R2 | S1 | S2 | T1 | T2 | U1 | U2 => {
            Acceptance::No
        }
    }
}

pub fn expected_verdict(id: &FamilyId) -> FamilyVerdict {
    use FamilyTag::*;
    let make = |accepted, rule, witness_pair| FamilyVerdict {
        id: *id,
        accepted,
        rule,
        witness_pair,
    };
    match (id.tag, id.i) {
        (Simplex, _) | (RankNminus2, _) => make(true, "unique-high-rank", None),
        (Wreath, _) => make(true, "wreath-construction", None),
        (A | G | K | L1 | L2 | L3, _) => make(true, "inductive-c-group", None),
        (B | E | I | N1 | N2 | N3 | P1 | Q2, _) => make(true, "inductive-c-group", None),
        (M2 | O2, Some(0)) => make(true, "inductive-c-group", None),
        (M1 | O1, Some(i)) => make(
            false,
            "middle-section-intersection",
            Some(SubgroupPair {
                j_upto: i + 2,
                k_from: i + 1,
            }),
        ),
        (M2 | O2, Some(i)) => make(
            false,
            "middle-section-intersection",
            Some(SubgroupPair {
                j_upto: i + 1,
                k_from: i,
            }),
        ),
        (V2, Some(0)) => make(false, "same-graph-as-S2", None),
        (V2, Some(1)) => make(false, "same-graph-as-R2", None),
        (V1 | V2, Some(_)) => make(false, "middle-section-intersection", None),
        (C | D | H1 | H2 | P2 | P3 | Q1 | Q3 | R1 | R2 | S1 | S2 | T1 | T2 | U1 | U2, _) => {
            make(false, "degree-11-base-case", None)
        }
        (tag, i) => unreachable!("verdict for {tag} i={i:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracture;

    #[test]
    fn candidate_counts() {
        assert_eq!(candidates(RankClass::NMinus1), vec![FamilyTag::Simplex]);
        assert_eq!(candidates(RankClass::NMinus2).len(), 1);
        assert_eq!(candidates(RankClass::NMinus3).len(), 8);
        assert_eq!(candidates(RankClass::NMinus4).len(), 28);
    }

    #[test]
    fn simplex_is_the_labeled_path() {
        let g = build_family(&FamilyId::plain(FamilyTag::Simplex), 5).unwrap();
        assert_eq!(g, CprGraph::path(&[0, 1, 2, 3]).unwrap());
        assert_eq!(g.rank(), 4);
    }

    #[test]
    fn every_family_builds_with_right_shape() {
        for n in [9usize, 10, 12] {
            for tag in RANK_N_MINUS_3_TAGS {
                for id in ids_at(tag, n) {
                    let g = build_family(&id, n).unwrap();
                    assert_eq!(g.degree(), n, "{id} at n={n}");
                    assert_eq!(g.rank(), n - 3, "{id} at n={n}");
                    assert!(g.is_connected(), "{id} at n={n}");
                    let s = g.to_sggi().expect("valid sggi");
                    assert!(s.is_transitive());
                }
            }
        }
        for n in [11usize, 12, 13] {
            for tag in RANK_N_MINUS_4_TAGS {
                for id in ids_at(tag, n) {
                    let g = build_family(&id, n).unwrap();
                    assert_eq!(g.degree(), n, "{id} at n={n}");
                    assert_eq!(g.rank(), n - 4, "{id} at n={n}");
                    assert!(g.is_connected(), "{id} at n={n}");
                    g.to_sggi().expect("valid sggi");
                }
            }
        }
    }

    #[test]
    fn family_a_has_the_alternating_square() {
        let g = build_family(&FamilyId::plain(FamilyTag::A), 9).unwrap();
        assert_eq!(g.rank(), 6);
        // square vertices: top 1,2 and bottom 8,9 (1-based), labels 0/2
        let s = g.to_sggi().unwrap();
        let r0 = &s.generators()[0];
        let r2 = &s.generators()[2];
        assert_eq!(r0.then(r2).order(), 2);
        assert_eq!(s.group().order(), crate::group::factorial(9));
    }

    #[test]
    fn wreath_generators_match_the_fixed_form() {
        let s = wreath_sggi(6).unwrap();
        // The defining involutions, as a set.
        let want: std::collections::BTreeSet<Permutation> = [
            "(1 4)(2 5)(3 6)",
            "(2 5)(3 6)",
            "(1 2)(4 5)",
            "(2 3)(5 6)",
        ]
        .iter()
        .map(|w| Permutation::parse(w, 6).unwrap())
        .collect();
        let got: std::collections::BTreeSet<Permutation> =
            s.generators().iter().cloned().collect();
        assert_eq!(got, want);
        // The block swap leads; the first product has order 2.
        assert_eq!(
            s.generators()[0],
            Permutation::parse("(1 4)(2 5)(3 6)", 6).unwrap()
        );
        assert_eq!(s.generators()[0].then(s.generator(1)).order(), 2);
        assert_eq!(s.group().order(), 48u32.into());
        assert_eq!(s.schlafli_type().0, vec![2, 3, 4]);
        assert!(build_family(&FamilyId::plain(FamilyTag::Wreath), 8).is_err());
        assert!(build_family(&FamilyId::plain(FamilyTag::Wreath), 7).is_err());
    }

    #[test]
    fn wreath_order_and_type_scale() {
        for n in [6usize, 10] {
            let s = wreath_sggi(n).unwrap();
            let half = n / 2;
            let want = crate::group::factorial(half) * num_bigint::BigUint::from(2u32).pow(half as u32);
            assert_eq!(s.group().order(), want);
            let mut t = vec![2u64];
            t.extend(std::iter::repeat(3).take(half.saturating_sub(2)));
            t.push(4);
            assert_eq!(s.schlafli_type().0, t);
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilyId::new(FamilyTag::M1, None).is_err());
        assert!(FamilyId::new(FamilyTag::A, Some(0)).is_err());
        let id = FamilyId::with_i(FamilyTag::M1, 3);
        assert!(build_family(&id, 9).is_err()); // rank 6 allows i <= 2
        assert!(build_family(&FamilyId::plain(FamilyTag::A), 8).is_err());
        assert!(build_family(&FamilyId::plain(FamilyTag::B), 10).is_err());
    }

    #[test]
    fn v2_graphs_coincide_with_s2_and_r2() {
        for n in [11usize, 12, 13] {
            let v2_0 = build_family(&FamilyId::with_i(FamilyTag::V2, 0), n).unwrap();
            let s2 = build_family(&FamilyId::plain(FamilyTag::S2), n).unwrap();
            assert_eq!(v2_0, s2);
            let v2_1 = build_family(&FamilyId::with_i(FamilyTag::V2, 1), n).unwrap();
            let r2 = build_family(&FamilyId::plain(FamilyTag::R2), n).unwrap();
            assert_eq!(v2_1, r2);
        }
    }

    #[test]
    fn l2_parabolic_orbits() {
        let s = build_family_sggi(&FamilyId::plain(FamilyTag::L2), 9).unwrap();
        let g0 = fracture::maximal_parabolic(&s, 0).unwrap();
        let sizes: Vec<usize> = g0.orbits().iter().map(|b| b.len()).collect();
        assert_eq!(sizes, vec![3, 6]);
        assert_eq!(g0.order(), 4320u32.into());
    }

    #[test]
    fn expected_verdict_sets() {
        let accepted_n3: Vec<String> = RANK_N_MINUS_3_TAGS
            .iter()
            .flat_map(|&t| ids_at(t, 9))
            .filter(|id| expected_verdict(id).accepted)
            .map(|id| id.label())
            .collect();
        assert_eq!(
            accepted_n3,
            vec!["A", "G", "K", "L1", "L2", "L3", "M2(i=0)"]
        );
        let accepted_n4: Vec<String> = RANK_N_MINUS_4_TAGS
            .iter()
            .flat_map(|&t| ids_at(t, 11))
            .filter(|id| expected_verdict(id).accepted)
            .map(|id| id.label())
            .collect();
        assert_eq!(
            accepted_n4,
            vec!["B", "E", "I", "N1", "N2", "N3", "O2(i=0)", "P1", "Q2"]
        );
    }

    #[test]
    fn witness_pairs_recorded_for_middle_rejections() {
        let v = expected_verdict(&FamilyId::with_i(FamilyTag::M1, 0));
        assert!(!v.accepted);
        let pair = v.witness_pair.unwrap();
        assert_eq!(pair.resolve(6), (vec![0, 1, 2], vec![1, 2, 3, 4, 5]));
    }
}
