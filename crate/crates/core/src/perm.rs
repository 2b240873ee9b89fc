//! Permutations in one-line notation.
//!
//! Windows are 1-indexed: `w.get(i)` is the value in position `i`, with
//! `1 <= i <= degree`. Composition follows `(u * v)(i) = u(v(i))`, so
//! right multiplication by a transposition `(i j)` swaps positions.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree whose elements still print in the compact digit notation.
const MAX_DIGIT_DEGREE: usize = 35;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn new(window: Vec<u8>) -> Result<Self> {
        let n = window.len();
        if n > u8::MAX as usize {
            return Err(Error::NotBijection(n));
        }
        let mut seen = vec![false; n + 1];
        for &v in &window {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotBijection(n));
            }
            seen[v] = true;
        }
        Ok(Perm(window))
    }

    /// Builds a permutation from 1-based values without validation.
    pub(crate) fn from_vec_unchecked(window: Vec<u8>) -> Self {
        debug_assert!(Perm::new(window.clone()).is_ok());
        Perm(window)
    }

    pub fn identity(n: usize) -> Self {
        Perm((1..=n as u8).collect())
    }

    /// The longest element `i -> n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Perm((1..=n as u8).rev().collect())
    }

    /// The transposition exchanging `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut w = Perm::identity(n);
        w.0.swap(i - 1, j - 1);
        w
    }

    /// Standardizes a sequence of distinct values to the permutation with
    /// the same relative order.
    pub fn standardize(values: &[u8]) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_unstable_by_key(|&k| values[k]);
        let mut out = vec![0u8; values.len()];
        for (rank, &k) in order.iter().enumerate() {
            out[k] = rank as u8 + 1;
        }
        Perm(out)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn window(&self) -> &[u8] {
        &self.0
    }

    /// Value at 1-based position `i`.
    #[inline]
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = k as u8 + 1;
        }
        Perm(inv)
    }

    pub fn compose(&self, v: &Perm) -> Result<Perm> {
        if self.degree() != v.degree() {
            return Err(Error::DegreeMismatch(self.degree(), v.degree()));
        }
        Ok(Perm(v.0.iter().map(|&k| self.0[k as usize - 1]).collect()))
    }

    /// Right multiplication by the transposition `(i j)`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Perm {
        let mut w = self.clone();
        w.0.swap(i - 1, j - 1);
        w
    }

    /// Number of pairs `i < j` with `w(i) > w(j)`.
    pub fn inversions(&self) -> usize {
        let w = &self.0;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Cycle decomposition including fixed points, each cycle starting at
    /// its least element, cycles ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut k = self.get(start);
            while k != start {
                seen[k] = true;
                cycle.push(k);
                k = self.get(k);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Conjugation by the longest element, `w0 w w0`.
    pub fn conjugate_by_longest(&self) -> Perm {
        let n = self.degree() as u8;
        Perm(self.0.iter().rev().map(|&v| n + 1 - v).collect())
    }

    /// Positions moved by the permutation.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&i| self.get(i) != i).collect()
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs).expect("degree mismatch in permutation product")
    }
}

fn digit_value(c: char) -> Result<u8> {
    match c {
        '1'..='9' => Ok(c as u8 - b'0'),
        'a'..='z' => Ok(c as u8 - b'a' + 10),
        'A'..='Z' => Ok(c as u8 - b'A' + 10),
        _ => Err(Error::InvalidChar(c)),
    }
}

fn digit_char(v: u8) -> char {
    match v {
        1..=9 => (b'0' + v) as char,
        _ => (b'a' + v - 10) as char,
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// Parses either the compact digit notation (`3517294a68`) or a
    /// comma-separated list of values.
    fn from_str(s: &str) -> Result<Perm> {
        let s = s.trim();
        let window = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    tok.parse::<u8>().map_err(|_| Error::InvalidEntry(tok.to_string()))
                })
                .collect::<Result<Vec<u8>>>()?
        } else {
            s.chars().map(digit_value).collect::<Result<Vec<u8>>>()?
        };
        Perm::new(window)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= MAX_DIGIT_DEGREE {
            for &v in &self.0 {
                write!(f, "{}", digit_char(v))?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

impl TryFrom<String> for Perm {
    type Error = Error;

    fn try_from(s: String) -> Result<Perm> {
        s.parse()
    }
}

impl From<Perm> for String {
    fn from(w: Perm) -> String {
        w.to_string()
    }
}

/// Calls `f` on every permutation of `1..=n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&Perm)) {
    let mut w = Perm::identity(n);
    loop {
        f(&w);
        if !next_permutation(&mut w.0) {
            break;
        }
    }
}

pub fn all_permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    for_each_permutation(n, |w| out.push(w.clone()));
    out
}

fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    #[test]
    fn parse_digit_notation() {
        assert_eq!(p("3517294a68").window(), &[3, 5, 1, 7, 2, 9, 4, 10, 6, 8]);
        assert_eq!(p("1,3,2").window(), &[1, 3, 2]);
        assert_eq!("4232".parse::<Perm>(), Err(Error::NotBijection(4)));
        assert_eq!("1204".parse::<Perm>(), Err(Error::InvalidChar('0')));
        assert_eq!(p("3517294a68").to_string(), "3517294a68");
    }

    #[test]
    fn compose_applies_right_factor_first() {
        assert_eq!(p("4231").compose(&p("2143")).unwrap(), p("2413"));
        let w = p("35142");
        assert!((&w * &w.inverse()).is_identity());
        assert_eq!(&w * &Perm::identity(5), w);
        assert!(p("12").compose(&p("123")).is_err());
    }

    #[test]
    fn inversions_and_cycles() {
        assert_eq!(p("4231").inversions(), 5);
        assert_eq!(p("4231").cycles(), vec![vec![1, 4], vec![2], vec![3]]);
        assert_eq!(p("4231").conjugate_by_longest(), p("4231"));
        assert_eq!(p("35142").conjugate_by_longest(), p("42513"));
    }

    #[test]
    fn standardize_keeps_relative_order() {
        assert_eq!(Perm::standardize(&[9, 2, 7]), p("312"));
    }

    #[test]
    fn enumerates_all() {
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_permutations(1).len(), 1);
        let all = all_permutations(3);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
