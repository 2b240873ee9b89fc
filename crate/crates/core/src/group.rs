//! Group contexts for types A and B.
//!
//! Type A of rank `n` is the symmetric group `S_n`. Type B of rank `n` is
//! the hyperoctahedral group realized inside `S_{2n}` as the permutations
//! with `w(i) + w(2n+1-i) = 2n+1`. Elements are always stored in this
//! embedded form; signed windows are a derived view.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{all_permutations, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => f.write_str("A"),
            Family::B => f.write_str("B"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            _ => Err(format!("unknown family {s:?}, expected A or B")),
        }
    }
}

/// A reflection together with the position pair that decides whether it is
/// an inversion: `t` is an inversion of `w` iff `w(first) > w(second)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub perm: Perm,
    pub first: usize,
    pub second: usize,
}

impl Reflection {
    fn from_perm(perm: Perm) -> Self {
        let first = (1..=perm.degree()).find(|&i| perm.get(i) != i).expect("reflections move at least one point");
        let second = perm.get(first);
        Reflection { perm, first, second }
    }

    #[inline]
    pub fn is_inversion_of(&self, w: &Perm) -> bool {
        w.get(self.first) > w.get(self.second)
    }
}

/// Ambient group descriptor with cached generators and reflections.
#[derive(Clone, Debug)]
pub struct Group {
    family: Family,
    rank: usize,
    generators: Vec<Perm>,
    reflections: Vec<Reflection>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.rank == other.rank
    }
}

impl Eq for Group {}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "S_{}", self.rank),
            Family::B => write!(f, "B_{}", self.rank),
        }
    }
}

impl Group {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidRank);
        }
        let degree = match family {
            Family::A => rank,
            Family::B => 2 * rank,
        };
        if degree > 40 {
            return Err(Error::RankTooLarge { rank, bound: if family == Family::A { 40 } else { 20 } });
        }
        let generators = match family {
            Family::A => (1..rank).map(|i| Perm::transposition(rank, i, i + 1)).collect(),
            Family::B => {
                let n = rank;
                let mut gens = vec![Perm::transposition(2 * n, n, n + 1)];
                for i in 1..n {
                    gens.push(Perm::transposition(2 * n, n - i, n - i + 1).swap_positions(n + i, n + i + 1));
                }
                gens
            }
        };
        let reflections = conjugacy_closure(&generators).into_iter().map(Reflection::from_perm).collect();
        Ok(Group { family, rank, generators, reflections })
    }

    pub fn a(rank: usize) -> Self {
        Group::new(Family::A, rank).expect("valid type A rank")
    }

    pub fn b(rank: usize) -> Self {
        Group::new(Family::B, rank).expect("valid type B rank")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Size `N` of the permutations representing elements.
    pub fn degree(&self) -> usize {
        match self.family {
            Family::A => self.rank,
            Family::B => 2 * self.rank,
        }
    }

    /// Simple generators; for type B index 0 is `s_0 = (n n+1)`.
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All reflections in window-lexicographic order.
    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    pub fn longest(&self) -> Perm {
        Perm::longest(self.degree())
    }

    pub fn order(&self) -> usize {
        let fact: usize = (1..=self.rank).product();
        match self.family {
            Family::A => fact,
            Family::B => fact << self.rank,
        }
    }

    pub fn contains(&self, w: &Perm) -> bool {
        w.degree() == self.degree() && (self.family == Family::A || is_type_b_member(w.window(), self.rank))
    }

    pub fn check(&self, w: &Perm) -> Result<()> {
        if w.degree() != self.degree() {
            return Err(Error::LengthMismatch { expected: self.degree(), found: w.degree() });
        }
        if !self.contains(w) {
            return Err(Error::NotTypeB(self.rank));
        }
        Ok(())
    }

    /// Parses an element. Type B also accepts a comma-separated signed
    /// window of length `n`, e.g. `-3,2,-1`.
    pub fn parse(&self, text: &str) -> Result<Perm> {
        let text = text.trim();
        let w = if self.family == Family::B && text.contains(',') {
            let entries = text
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    tok.parse::<i32>().map_err(|_| Error::InvalidEntry(tok.to_string()))
                })
                .collect::<Result<Vec<i32>>>()?;
            embed_signed(&entries, self.rank)?
        } else {
            text.parse::<Perm>().map_err(|e| match e {
                Error::NotBijection(found) if found != self.degree() => {
                    Error::LengthMismatch { expected: self.degree(), found }
                }
                e => e,
            })?
        };
        self.check(&w)?;
        Ok(w)
    }

    /// Coxeter length. Type A counts inversions; type B counts the
    /// reflections `t` with `wt < w`.
    pub fn length(&self, w: &Perm) -> usize {
        match self.family {
            Family::A => w.inversions(),
            Family::B => self.reflections.iter().filter(|t| t.is_inversion_of(w)).count(),
        }
    }

    /// Whether `ws < w` for `s = self.generators()[generator]`.
    pub fn is_right_descent(&self, w: &Perm, generator: usize) -> bool {
        match self.family {
            Family::A => w.get(generator + 1) > w.get(generator + 2),
            Family::B => {
                let n = self.rank;
                if generator == 0 {
                    w.get(n) > w.get(n + 1)
                } else {
                    w.get(n + generator) > w.get(n + generator + 1)
                }
            }
        }
    }

    /// Reflection length: `n - cyc(w)` in type A and `n - ecyc(w)` in type B.
    pub fn absolute_length(&self, w: &Perm) -> usize {
        match self.family {
            Family::A => self.rank - w.cycle_count(),
            Family::B => self.rank - CyclePairing::new(w, self.rank).even_count(),
        }
    }

    pub fn cycle_pairing(&self, w: &Perm) -> Result<CyclePairing> {
        if self.family != Family::B {
            return Err(Error::RequiresTypeB);
        }
        self.check(w)?;
        Ok(CyclePairing::new(w, self.rank))
    }

    pub fn signed_window(&self, w: &Perm) -> Result<SignedWindow> {
        if self.family != Family::B {
            return Err(Error::RequiresTypeB);
        }
        self.check(w)?;
        Ok(SignedWindow::of(w, self.rank))
    }

    /// Every element, in window-lexicographic order.
    pub fn elements(&self) -> Vec<Perm> {
        match self.family {
            Family::A => all_permutations(self.rank),
            Family::B => {
                let n = self.rank;
                let mut out = Vec::with_capacity(self.order());
                for abs in all_permutations(n) {
                    for signs in 0u32..(1 << n) {
                        let entries: Vec<i32> = (0..n)
                            .map(|k| {
                                let v = abs.window()[k] as i32;
                                if signs >> k & 1 == 1 {
                                    -v
                                } else {
                                    v
                                }
                            })
                            .collect();
                        out.push(embed_signed(&entries, n).expect("signed permutation"));
                    }
                }
                out.sort();
                out
            }
        }
    }
}

/// Closes a generating set of involutions under conjugation.
fn conjugacy_closure(generators: &[Perm]) -> BTreeSet<Perm> {
    let mut found: BTreeSet<Perm> = generators.iter().cloned().collect();
    let mut frontier: Vec<Perm> = found.iter().cloned().collect();
    while let Some(t) = frontier.pop() {
        for s in generators {
            let c = &(s * &t) * s;
            if found.insert(c.clone()) {
                frontier.push(c);
            }
        }
    }
    found
}

/// `w(i) + w(2n+1-i) = 2n+1` for all `i <= n`.
pub fn is_type_b_member(window: &[u8], n: usize) -> bool {
    window.len() == 2 * n && (0..n).all(|k| window[k] as usize + window[2 * n - 1 - k] as usize == 2 * n + 1)
}

/// A signed permutation `σ(1..n)`: position `n+k` of the embedded form
/// carries coordinate `k`, position `n+1-k` carries `-k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedWindow(pub Vec<i32>);

impl SignedWindow {
    fn of(w: &Perm, n: usize) -> Self {
        SignedWindow(
            (1..=n)
                .map(|k| {
                    let v = w.get(n + k) as i32;
                    let n = n as i32;
                    if v > n {
                        v - n
                    } else {
                        -(n + 1 - v)
                    }
                })
                .collect(),
        )
    }

    pub fn embed(&self) -> Result<Perm> {
        embed_signed(&self.0, self.0.len())
    }
}

impl fmt::Display for SignedWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn embed_signed(entries: &[i32], n: usize) -> Result<Perm> {
    if entries.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: entries.len() });
    }
    let mut window = vec![0u8; 2 * n];
    for (k, &s) in entries.iter().enumerate() {
        let a = s.unsigned_abs() as usize;
        if a == 0 || a > n {
            return Err(Error::InvalidEntry(s.to_string()));
        }
        let upper = if s > 0 { n + a } else { n + 1 - a };
        window[n + k] = upper as u8;
        window[n - 1 - k] = (2 * n + 1 - upper) as u8;
    }
    Perm::new(window)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// A cycle `c` with its mirror `w0 c w0`: an even unit pairs two distinct
/// cycles, an odd unit is a single self-mirrored cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleUnit {
    /// Indices into [`CyclePairing::cycles`]; one entry for odd units, two for even.
    pub members: Vec<usize>,
    pub parity: Parity,
    /// A pair of fixed points `{i, 2n+1-i}`.
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePairing {
    pub cycles: Vec<Vec<usize>>,
    pub units: Vec<CycleUnit>,
}

impl CyclePairing {
    fn new(w: &Perm, n: usize) -> Self {
        let cycles = w.cycles();
        let mut owner = vec![0usize; 2 * n + 1];
        for (idx, c) in cycles.iter().enumerate() {
            for &i in c {
                owner[i] = idx;
            }
        }
        let mut used = vec![false; cycles.len()];
        let mut units = Vec::new();
        for (idx, c) in cycles.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let mirror = owner[2 * n + 1 - c[0]];
            used[idx] = true;
            used[mirror] = true;
            if mirror == idx {
                units.push(CycleUnit { members: vec![idx], parity: Parity::Odd, trivial: false });
            } else {
                units.push(CycleUnit { members: vec![idx, mirror], parity: Parity::Even, trivial: c.len() == 1 });
            }
        }
        CyclePairing { cycles, units }
    }

    pub fn even_count(&self) -> usize {
        self.units.iter().filter(|u| u.parity == Parity::Even).count()
    }

    pub fn odd_count(&self) -> usize {
        self.units.len() - self.even_count()
    }
}
