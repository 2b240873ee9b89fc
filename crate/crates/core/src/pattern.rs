//! Classical pattern containment and Billey–Postnikov (BP) containment for
//! type-A and type-B parabolic patterns.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{is_type_b_member, Family, Group};
use crate::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EmbeddingKind {
    AInA,
    AInB,
    BInB,
}

/// A parabolic subgroup given by an index set. For [`EmbeddingKind::BInB`]
/// the stored indices are already mirror-completed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolicEmbedding {
    kind: EmbeddingKind,
    host_degree: usize,
    indices: Vec<usize>,
}

impl ParabolicEmbedding {
    pub fn new(kind: EmbeddingKind, host_degree: usize, indices: Vec<usize>) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidEmbedding(msg.to_string()));
        if indices.is_empty() {
            return bad("empty index set");
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices[0] < 1 || *indices.last().unwrap() > host_degree {
            return bad("indices must be strictly increasing within the host degree");
        }
        if kind != EmbeddingKind::AInA && host_degree % 2 == 1 {
            return bad("type B host needs even degree");
        }
        let mirror = host_degree + 1;
        match kind {
            EmbeddingKind::AInA => {}
            EmbeddingKind::AInB => {
                if indices.iter().any(|&i| indices.contains(&(mirror - i))) {
                    return bad("two indices sum to 2n+1");
                }
            }
            EmbeddingKind::BInB => {
                let m2 = indices.len();
                if m2 % 2 == 1 || (0..m2).any(|j| indices[j] + indices[m2 - 1 - j] != mirror) {
                    return bad("index set is not closed under i -> 2n+1-i");
                }
            }
        }
        Ok(ParabolicEmbedding { kind, host_degree, indices })
    }

    /// B-in-B embedding from its members `<= n`.
    pub fn from_half(n: usize, half: &[usize]) -> Result<Self> {
        let mut indices = half.to_vec();
        indices.extend(half.iter().rev().map(|&i| 2 * n + 1 - i));
        Self::new(EmbeddingKind::BInB, 2 * n, indices)
    }

    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn host_degree(&self) -> usize {
        self.host_degree
    }

    /// Degree of the pattern's window (`m` for S_m, `2m` for B_m).
    pub fn pattern_degree(&self) -> usize {
        self.indices.len()
    }

    /// Images in the host of the pattern group's simple generators, in the
    /// order of [`Group::generators`] for the pattern group.
    pub fn generator_images(&self) -> Vec<Perm> {
        let big_n = self.host_degree;
        let t = |pairs: &[(usize, usize)]| {
            let mut window: Vec<u8> = (1..=big_n as u8).collect();
            for &(i, j) in pairs {
                window.swap(i - 1, j - 1);
            }
            Perm::new(window).expect("disjoint transpositions")
        };
        let ix = &self.indices;
        match self.kind {
            EmbeddingKind::AInA => (0..ix.len() - 1).map(|j| t(&[(ix[j], ix[j + 1])])).collect(),
            EmbeddingKind::AInB => (0..ix.len() - 1)
                .map(|j| t(&[(ix[j], ix[j + 1]), (big_n + 1 - ix[j + 1], big_n + 1 - ix[j])]))
                .collect(),
            EmbeddingKind::BInB => {
                let m = ix.len() / 2;
                let mut gens = vec![t(&[(ix[m - 1], ix[m])])];
                gens.extend((1..m).map(|j| t(&[(ix[m - j - 1], ix[m - j]), (ix[m + j - 1], ix[m + j])])));
                gens
            }
        }
    }
}

/// Relative order of `w` at `indices`.
pub fn flatten_at(w: &Perm, indices: &[usize]) -> Perm {
    let values: Vec<u8> = indices.iter().map(|&i| w.window()[i - 1]).collect();
    Perm::standardize(&values)
}

pub fn flatten(w: &Perm, embedding: &ParabolicEmbedding) -> Result<Perm> {
    if w.degree() != embedding.host_degree {
        return Err(Error::LengthMismatch { expected: embedding.host_degree, found: w.degree() });
    }
    Ok(flatten_at(w, &embedding.indices))
}

/// Lexicographically least `i_1 < ... < i_m` at which `w` has the relative
/// order of `v`.
pub fn classical_contains(w: &Perm, v: &Perm) -> Option<Vec<usize>> {
    Search::new(w, v.window(), |_, _| true).first()
}

/// Depth-first search over increasing index sets in lexicographic order,
/// pruning on pairwise order mismatches.
struct Search<'a, F> {
    host: &'a [u8],
    target: &'a [u8],
    allowed: F,
    chosen: Vec<usize>,
}

impl<'a, F: Fn(&[usize], usize) -> bool> Search<'a, F> {
    fn new(w: &'a Perm, target: &'a [u8], allowed: F) -> Self {
        Search { host: w.window(), target, allowed, chosen: Vec::with_capacity(target.len()) }
    }

    fn first(mut self) -> Option<Vec<usize>> {
        if self.target.len() > self.host.len() {
            return None;
        }
        self.go(1).then(|| self.chosen.iter().map(|&i| i + 1).collect())
    }

    fn go(&mut self, start: usize) -> bool {
        let k = self.chosen.len();
        if k == self.target.len() {
            return true;
        }
        let remaining = self.target.len() - k;
        for i in start - 1..=self.host.len() - remaining {
            if !(self.allowed)(&self.chosen, i) {
                continue;
            }
            let consistent = self
                .chosen
                .iter()
                .enumerate()
                .all(|(j, &c)| (self.host[c] < self.host[i]) == (self.target[j] < self.target[k]));
            if !consistent {
                continue;
            }
            self.chosen.push(i);
            if self.go(i + 2) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

/// A pattern together with the group it lives in; `4231` in S_4 and
/// `4231` in B_2 are different patterns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternSpec {
    pub element: Perm,
    pub family: Family,
}

impl PatternSpec {
    pub fn new(element: Perm, family: Family) -> Result<Self> {
        if family == Family::B {
            if element.degree() % 2 == 1 {
                return Err(Error::NotTypeB(element.degree()));
            }
            if !is_type_b_member(element.window(), element.degree() / 2) {
                return Err(Error::NotTypeB(element.degree() / 2));
            }
        }
        Ok(PatternSpec { element, family })
    }

    pub fn parse(family: Family, s: &str) -> Result<Self> {
        Self::new(s.parse()?, family)
    }

    pub fn rank(&self) -> usize {
        match self.family {
            Family::A => self.element.degree(),
            Family::B => self.element.degree() / 2,
        }
    }

    pub fn group(&self) -> Result<Group> {
        Group::new(self.family, self.rank())
    }
}

impl std::fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let g = match self.family {
            Family::A => "S",
            Family::B => "B",
        };
        write!(f, "{} in {}_{}", self.element, g, self.rank())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpMatch {
    pub embedding: ParabolicEmbedding,
    /// Whether the flattening equals `w_0 v w_0` rather than `v`.
    pub reversed: bool,
}

fn lex_min(a: Option<Vec<usize>>, b: Option<Vec<usize>>) -> Option<(Vec<usize>, bool)> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b < a { (b, true) } else { (a, false) }),
        (Some(a), None) => Some((a, false)),
        (None, Some(b)) => Some((b, true)),
        (None, None) => None,
    }
}

/// BP containment of `v` in `w`, where `w` lies in the group of the given
/// family. A type-A host never contains a type-B pattern.
pub fn bp_contains(w: &Perm, host: Family, v: &PatternSpec) -> Option<BpMatch> {
    let big_n = w.degree();
    let reversed = v.element.conjugate_by_longest();
    match (host, v.family) {
        (Family::A, Family::B) => None,
        (Family::A, Family::A) => {
            let direct = classical_contains(w, &v.element);
            let other = if reversed == v.element { None } else { classical_contains(w, &reversed) };
            lex_min(direct, other).map(|(indices, reversed)| BpMatch {
                embedding: ParabolicEmbedding::new(EmbeddingKind::AInA, big_n, indices).expect("valid"),
                reversed,
            })
        }
        (Family::B, Family::A) => {
            let sum_free = |chosen: &[usize], i: usize| chosen.iter().all(|&c| c + i + 1 != big_n);
            let direct = Search::new(w, v.element.window(), sum_free).first();
            let other = if reversed == v.element { None } else { Search::new(w, reversed.window(), sum_free).first() };
            lex_min(direct, other).map(|(indices, reversed)| BpMatch {
                embedding: ParabolicEmbedding::new(EmbeddingKind::AInB, big_n, indices).expect("valid"),
                reversed,
            })
        }
        (Family::B, Family::B) => {
            let n = big_n / 2;
            let m = v.rank();
            if m > n {
                return None;
            }
            let mut half = Vec::with_capacity(m);
            b_in_b(w.window(), v.element.window(), n, m, 1, &mut half).then(|| BpMatch {
                embedding: ParabolicEmbedding::from_half(n, &half).expect("valid"),
                reversed: false,
            })
        }
    }
}

/// Chooses `half[k] = a` in lexicographic order; slot `k` holds position
/// `a`, slot `2m-1-k` its mirror `2n+1-a`.
fn b_in_b(host: &[u8], target: &[u8], n: usize, m: usize, start: usize, half: &mut Vec<usize>) -> bool {
    let k = half.len();
    if k == m {
        return true;
    }
    let slot_pos = |slot: usize, half: &[usize]| if slot < m { half[slot] } else { 2 * n + 1 - half[2 * m - 1 - slot] };
    for a in start..=n - (m - k - 1) {
        half.push(a);
        let new_slots = [k, 2 * m - 1 - k];
        let old_slots = (0..k).chain(2 * m - k..2 * m);
        let check =
            |s: usize, t: usize| (host[slot_pos(s, half) - 1] < host[slot_pos(t, half) - 1]) == (target[s] < target[t]);
        let ok = check(new_slots[0], new_slots[1]) && old_slots.clone().all(|s| new_slots.iter().all(|&t| check(s, t)));
        if ok && b_in_b(host, target, n, m, a + 1, half) {
            return true;
        }
        half.pop();
    }
    false
}

/// The minimal non-Hultman patterns: (family, rank, window).
pub const CONDITION5_PATTERNS: [(Family, usize, &str); 31] = [
    (Family::A, 4, "4231"),
    (Family::A, 5, "35142"),
    (Family::A, 5, "42513"),
    (Family::A, 6, "351624"),
    (Family::B, 3, "563412"),
    (Family::B, 3, "653421"),
    (Family::B, 3, "645231"),
    (Family::B, 3, "635241"),
    (Family::B, 3, "624351"),
    (Family::B, 3, "642531"),
    (Family::B, 3, "536142"),
    (Family::B, 3, "426153"),
    (Family::B, 3, "462513"),
    (Family::B, 3, "623451"),
    (Family::B, 4, "47618325"),
    (Family::B, 4, "46718235"),
    (Family::B, 4, "57163824"),
    (Family::B, 4, "37581426"),
    (Family::B, 4, "47163825"),
    (Family::B, 4, "46172835"),
    (Family::B, 4, "37518426"),
    (Family::B, 4, "35718246"),
    (Family::B, 4, "37145826"),
    (Family::B, 4, "37154826"),
    (Family::B, 4, "52618374"),
    (Family::B, 4, "42681375"),
    (Family::B, 4, "42618375"),
    (Family::B, 4, "35172846"),
    (Family::B, 5, "3517294a68"),
    (Family::B, 5, "3517924a68"),
    (Family::B, 5, "3617294a58"),
];

pub fn condition5_patterns() -> Vec<PatternSpec> {
    CONDITION5_PATTERNS.iter().map(|&(family, _, s)| PatternSpec::parse(family, s).expect("listed pattern")).collect()
}

/// First listed pattern that `w` (in the group of `host`) BP contains.
pub fn first_listed_pattern(w: &Perm, host: Family) -> Option<(PatternSpec, BpMatch)> {
    condition5_patterns().into_iter().find_map(|v| bp_contains(w, host, &v).map(|m| (v, m)))
}

pub fn avoids_condition5_list(w: &Perm, host: Family) -> bool {
    first_listed_pattern(w, host).is_none()
}
