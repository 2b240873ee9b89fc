//! Inversion arrangements `A_w = {H_t : t in Inv(w)}` and exact chamber
//! counts via the intersection poset.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Family, Group, Reflection};
use crate::perm::Perm;

/// A reflecting hyperplane in `R^n`, coordinates 1-based, `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Hyperplane {
    /// `x_i - x_j = 0`
    Difference(usize, usize),
    /// `x_i + x_j = 0`
    Sum(usize, usize),
    /// `x_i = 0`
    Coordinate(usize),
}

impl Hyperplane {
    fn difference(i: usize, j: usize) -> Self {
        Hyperplane::Difference(i.min(j), i.max(j))
    }

    fn sum(i: usize, j: usize) -> Self {
        Hyperplane::Sum(i.min(j), i.max(j))
    }

    /// Value of the defining form at an integer point, reduced mod `p`.
    fn eval_mod(&self, x: &[u64], p: u64) -> u64 {
        match *self {
            Hyperplane::Difference(i, j) => (x[i - 1] + p - x[j - 1]) % p,
            Hyperplane::Sum(i, j) => (x[i - 1] + x[j - 1]) % p,
            Hyperplane::Coordinate(i) => x[i - 1],
        }
    }

    fn max_coordinate(&self) -> usize {
        match *self {
            Hyperplane::Difference(_, j) | Hyperplane::Sum(_, j) => j,
            Hyperplane::Coordinate(i) => i,
        }
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hyperplane::Difference(i, j) => write!(f, "x{i} - x{j} = 0"),
            Hyperplane::Sum(i, j) => write!(f, "x{i} + x{j} = 0"),
            Hyperplane::Coordinate(i) => write!(f, "x{i} = 0"),
        }
    }
}

/// Reflections `t` with `l(wt) < l(w)`, in the group's reflection order.
pub fn inversion_reflections<'g>(group: &'g Group, w: &Perm) -> Vec<&'g Reflection> {
    group.reflections().iter().filter(|t| t.is_inversion_of(w)).collect()
}

/// The fixed hyperplane of a reflection, in the coordinates of the signed
/// window for type B.
pub fn hyperplane_of(group: &Group, t: &Perm) -> Result<Hyperplane> {
    let t = group.reflections().iter().find(|r| &r.perm == t).ok_or(Error::NotReflection)?;
    Ok(reflection_hyperplane(group, t))
}

fn reflection_hyperplane(group: &Group, t: &Reflection) -> Hyperplane {
    let (i, j) = (t.first, t.second);
    match group.family() {
        Family::A => Hyperplane::difference(i, j),
        Family::B => {
            let n = group.rank();
            if i + j == 2 * n + 1 {
                return Hyperplane::Coordinate(n + 1 - i.min(j));
            }
            let signed = |p: usize| if p > n { (p - n, true) } else { (n + 1 - p, false) };
            let ((k, sk), (l, sl)) = (signed(i), signed(j));
            if sk == sl {
                Hyperplane::difference(k, l)
            } else {
                Hyperplane::sum(k, l)
            }
        }
    }
}

pub fn inversion_arrangement(group: &Group, w: &Perm) -> Vec<Hyperplane> {
    inversion_reflections(group, w).into_iter().map(|t| reflection_hyperplane(group, t)).collect()
}

/// An intersection of hyperplanes. `labels[k]` is `0` when `x_{k+1} = 0`,
/// otherwise `±(r+1)` where `r` is the least coordinate index of its block
/// and the sign is relative to that coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlatPartition {
    labels: Vec<i32>,
}

impl FlatPartition {
    pub fn ambient(n: usize) -> Self {
        FlatPartition { labels: (1..=n as i32).collect() }
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    pub fn dimension(&self) -> usize {
        self.labels.iter().enumerate().filter(|&(k, &l)| l == k as i32 + 1).count()
    }

    pub fn zero_block(&self) -> Vec<usize> {
        (1..=self.labels.len()).filter(|&k| self.labels[k - 1] == 0).collect()
    }

    pub fn lies_in(&self, h: &Hyperplane) -> bool {
        let l = |i: usize| self.labels[i - 1];
        match *h {
            Hyperplane::Difference(i, j) => l(i) == l(j),
            Hyperplane::Sum(i, j) => l(i) == -l(j),
            Hyperplane::Coordinate(i) => l(i) == 0,
        }
    }

    fn zero_out(&mut self, label: i32) {
        let block = label.abs();
        for l in &mut self.labels {
            if l.abs() == block {
                *l = 0;
            }
        }
    }

    /// Imposes `x_i = s x_j` with `s = ±1`.
    fn identify(&mut self, i: usize, j: usize, s: i32) {
        let (a, b) = (self.labels[i - 1], self.labels[j - 1]);
        match (a == 0, b == 0) {
            (true, true) => {}
            (true, false) => self.zero_out(b),
            (false, true) => self.zero_out(a),
            (false, false) => {
                // t_A = c t_B for the block parameters
                let c = s * a.signum() * b.signum();
                let (ba, bb) = (a.abs(), b.abs());
                if ba == bb {
                    if c == -1 {
                        self.zero_out(a);
                    }
                    return;
                }
                let (keep, drop) = (ba.min(bb), ba.max(bb));
                for l in &mut self.labels {
                    if l.abs() == drop {
                        *l = keep * l.signum() * c;
                    }
                }
            }
        }
    }

    pub fn meet(&self, h: &Hyperplane) -> FlatPartition {
        let mut out = self.clone();
        match *h {
            Hyperplane::Difference(i, j) => out.identify(i, j, 1),
            Hyperplane::Sum(i, j) => out.identify(i, j, -1),
            Hyperplane::Coordinate(i) => {
                let l = out.labels[i - 1];
                if l != 0 {
                    out.zero_out(l);
                }
            }
        }
        out
    }
}

/// Flats of an arrangement, ordered by reverse inclusion, with Möbius
/// values `μ(R^n, x)`.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    pub flats: Vec<FlatPartition>,
    pub mobius: Vec<i64>,
    ambient_dimension: usize,
}

fn bit_set(words: usize, members: impl Iterator<Item = usize>) -> Vec<u64> {
    let mut out = vec![0u64; words];
    for m in members {
        out[m / 64] |= 1 << (m % 64);
    }
    out
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

impl IntersectionPoset {
    pub fn new(planes: &[Hyperplane], n: usize) -> Self {
        let mut flats = vec![FlatPartition::ambient(n)];
        let mut seen: HashMap<FlatPartition, usize> = HashMap::from([(flats[0].clone(), 0)]);
        for h in planes {
            for k in 0..flats.len() {
                if flats[k].lies_in(h) {
                    continue;
                }
                let m = flats[k].meet(h);
                if !seen.contains_key(&m) {
                    seen.insert(m.clone(), flats.len());
                    flats.push(m);
                }
            }
        }
        // A flat is determined by the hyperplanes containing it, and
        // y ⊇ x exactly when planes(y) ⊆ planes(x).
        flats.sort_by_key(|f| std::cmp::Reverse(f.dimension()));
        let words = planes.len().div_ceil(64).max(1);
        let masks: Vec<Vec<u64>> =
            flats.iter().map(|f| bit_set(words, (0..planes.len()).filter(|&k| f.lies_in(&planes[k])))).collect();
        let mut mobius = vec![0i64; flats.len()];
        for x in 0..flats.len() {
            if x == 0 {
                mobius[0] = 1;
                continue;
            }
            let dx = flats[x].dimension();
            let mut sum = 0;
            for y in 0..x {
                if flats[y].dimension() > dx && is_subset(&masks[y], &masks[x]) {
                    sum += mobius[y];
                }
            }
            mobius[x] = -sum;
        }
        IntersectionPoset { flats, mobius, ambient_dimension: n }
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn region_count(&self) -> u64 {
        self.mobius.iter().map(|m| m.unsigned_abs()).sum()
    }

    /// Coefficients of `χ(t) = Σ μ(x) t^{dim x}`, index = power of `t`.
    pub fn characteristic_polynomial(&self) -> Vec<i64> {
        let mut coeffs = vec![0i64; self.ambient_dimension + 1];
        for (f, m) in self.flats.iter().zip(&self.mobius) {
            coeffs[f.dimension()] += m;
        }
        coeffs
    }
}

/// Ambient dimension of the reflection representation used for `group`.
pub fn ambient_dimension(group: &Group) -> usize {
    group.rank()
}

/// `c(w)`: the number of chambers of the inversion arrangement of `w`.
pub fn chamber_count(group: &Group, w: &Perm) -> u64 {
    IntersectionPoset::new(&inversion_arrangement(group, w), ambient_dimension(group)).region_count()
}

pub fn characteristic_polynomial(group: &Group, w: &Perm) -> Vec<i64> {
    IntersectionPoset::new(&inversion_arrangement(group, w), ambient_dimension(group)).characteristic_polynomial()
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The first `count` odd primes exceeding `bound`.
pub fn primes_above(bound: u64, count: usize) -> Vec<u64> {
    (bound + 1..).filter(|&p| p % 2 == 1 && is_prime(p)).take(count).collect()
}

/// Points of `F_p^n` lying on none of the hyperplanes.
pub fn complement_point_count(planes: &[Hyperplane], n: usize, p: u64) -> u64 {
    // planes grouped by the last coordinate they involve
    let mut by_last: Vec<Vec<Hyperplane>> = vec![Vec::new(); n + 1];
    for h in planes {
        by_last[h.max_coordinate()].push(*h);
    }
    fn go(k: usize, x: &mut Vec<u64>, by_last: &[Vec<Hyperplane>], p: u64) -> u64 {
        if k == x.len() {
            return 1;
        }
        let mut total = 0;
        for value in 0..p {
            x[k] = value;
            if by_last[k + 1].iter().all(|h| h.eval_mod(x, p) != 0) {
                total += go(k + 1, x, by_last, p);
            }
        }
        x[k] = 0;
        total
    }
    go(0, &mut vec![0; n], &by_last, p)
}

/// Chamber count from finite-field point counts: interpolates `χ` through
/// `(p, |F_p^n \ A|)` and returns `(-1)^n χ(-1)`. Needs at least `n+1`
/// odd primes above `2n`; any extra primes are used as consistency checks.
pub fn chamber_count_ff(planes: &[Hyperplane], n: usize, primes: &[u64]) -> Result<u64> {
    if primes.len() < n + 1 || primes.iter().any(|&p| p <= 2 * n as u64 || p % 2 == 0 || !is_prime(p)) {
        return Err(Error::NotEnoughPrimes { needed: n + 1, bound: 2 * n });
    }
    let xs: Vec<i128> = primes.iter().map(|&p| p as i128).collect();
    let ys: Vec<i128> = primes.iter().map(|&p| complement_point_count(planes, n, p) as i128).collect();
    let coeffs = newton_coefficients(&xs, &ys);
    // degree exactly n and monic; the top Newton coefficient is the
    // leading monomial coefficient once the higher ones vanish
    if coeffs[n] != Ratio::from_integer(1) || coeffs[n + 1..].iter().any(|c| *c != Ratio::from_integer(0)) {
        return Err(Error::Interpolation);
    }
    let value = newton_eval(&xs, &coeffs, -1);
    if !value.is_integer() {
        return Err(Error::Interpolation);
    }
    let signed = if n.is_multiple_of(2) { value.to_integer() } else { -value.to_integer() };
    u64::try_from(signed).map_err(|_| Error::Interpolation)
}

/// Divided differences; the returned vector holds the Newton-form
/// coefficients, which for a polynomial of degree `d` vanish beyond `d`.
fn newton_coefficients(xs: &[i128], ys: &[i128]) -> Vec<Ratio<i128>> {
    let mut table: Vec<Ratio<i128>> = ys.iter().map(|&y| Ratio::from_integer(y)).collect();
    let mut coeffs = vec![table[0]];
    for level in 1..xs.len() {
        for k in 0..xs.len() - level {
            table[k] = (table[k + 1] - table[k]) / Ratio::from_integer(xs[k + level] - xs[k]);
        }
        coeffs.push(table[0]);
    }
    coeffs
}

fn newton_eval(xs: &[i128], coeffs: &[Ratio<i128>], t: i128) -> Ratio<i128> {
    let mut acc = Ratio::from_integer(0);
    for k in (0..coeffs.len()).rev() {
        acc = acc * Ratio::from_integer(t - xs[k]) + coeffs[k];
    }
    acc
}

/// [`chamber_count_ff`] on the inversion arrangement of `w`, with `n+2`
/// primes.
pub fn chamber_count_oracle(group: &Group, w: &Perm) -> Result<u64> {
    let n = ambient_dimension(group);
    let primes = primes_above(2 * n as u64, n + 2);
    chamber_count_ff(&inversion_arrangement(group, w), n, &primes)
}
