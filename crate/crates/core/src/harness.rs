//! Five-condition classification, exhaustive equivalence runs, the
//! minimal-pattern search and the witness table.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::chamber_count;
use crate::bruhat::{bruhat_leq, distance_witnesses, BruhatGraph, DistanceWitness, GroupTable};
use crate::diagram::{
    coessential_set, inclusion_violations, pseudo_inclusion_violations, reduced_coessential,
    relaxed_right_hull_counterexample, right_hull_counterexample, CoessBox, DEFAULT_HULL_BUDGET,
};
use crate::error::{Error, Result};
use crate::group::{Family, Group};
use crate::pattern::{bp_contains, first_listed_pattern, PatternSpec};
use crate::perm::Perm;

/// `Instant::now` panics on `wasm32-unknown-unknown`; timings read zero
/// there.
fn start_timer() -> Option<Instant> {
    (!cfg!(all(target_arch = "wasm32", target_os = "unknown"))).then(Instant::now)
}

fn elapsed(start: Option<Instant>) -> Duration {
    start.map(|s| s.elapsed()).unwrap_or_default()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// `c(w) = s(w)`
    Chambers,
    /// `l_D(u,w) = l_T(u,w)` for all `u <= w`
    Distance,
    /// defined by inclusions (type A) or pseudo-inclusions (type B)
    PseudoInclusions,
    /// right hull (type A) or relaxed right hull (type B)
    RelaxedHull,
    /// BP avoidance of the listed patterns
    BpAvoidance,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::Chambers,
        Condition::Distance,
        Condition::PseudoInclusions,
        Condition::RelaxedHull,
        Condition::BpAvoidance,
    ];

    /// 1-based position in [`Condition::ALL`].
    pub fn number(self) -> usize {
        Condition::ALL.iter().position(|&c| c == self).unwrap() + 1
    }

    pub fn from_number(k: usize) -> Option<Condition> {
        k.checked_sub(1).and_then(|i| Condition::ALL.get(i).copied())
    }

    /// Parses a comma separated list of condition numbers such as `1,2,5`.
    pub fn parse_list(s: &str) -> Result<Vec<Condition>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let c = part
                .parse()
                .ok()
                .and_then(Condition::from_number)
                .ok_or_else(|| Error::InvalidEntry(part.to_string()))?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn label(self) -> &'static str {
        match self {
            Condition::Chambers => "chambers",
            Condition::Distance => "distance",
            Condition::PseudoInclusions => "pseudo_inclusions",
            Condition::RelaxedHull => "relaxed_hull",
            Condition::BpAvoidance => "bp_avoidance",
        }
    }
}

/// One entry per condition; `None` when not requested or not decided.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResults {
    pub chambers: Option<bool>,
    pub distance: Option<bool>,
    pub pseudo_inclusions: Option<bool>,
    pub relaxed_hull: Option<bool>,
    pub bp_avoidance: Option<bool>,
}

impl ConditionResults {
    pub fn get(&self, c: Condition) -> Option<bool> {
        match c {
            Condition::Chambers => self.chambers,
            Condition::Distance => self.distance,
            Condition::PseudoInclusions => self.pseudo_inclusions,
            Condition::RelaxedHull => self.relaxed_hull,
            Condition::BpAvoidance => self.bp_avoidance,
        }
    }

    fn set(&mut self, c: Condition, value: bool) {
        let slot = match c {
            Condition::Chambers => &mut self.chambers,
            Condition::Distance => &mut self.distance,
            Condition::PseudoInclusions => &mut self.pseudo_inclusions,
            Condition::RelaxedHull => &mut self.relaxed_hull,
            Condition::BpAvoidance => &mut self.bp_avoidance,
        };
        *slot = Some(value);
    }

    pub fn decided(&self) -> Vec<(Condition, bool)> {
        Condition::ALL.iter().filter_map(|&c| self.get(c).map(|v| (c, v))).collect()
    }

    /// Whether all decided conditions agree.
    pub fn consistent(&self) -> bool {
        let d = self.decided();
        d.windows(2).all(|p| p[0].1 == p[1].1)
    }

    /// The common value, if every decided condition agrees and at least one
    /// was decided.
    pub fn verdict(&self) -> Option<bool> {
        let d = self.decided();
        (self.consistent() && !d.is_empty()).then(|| d[0].1)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub element: Perm,
    pub family: Family,
    pub rank: usize,
    pub conditions: ConditionResults,
    pub c: Option<u64>,
    pub s: Option<usize>,
    pub witnesses: Vec<DistanceWitness>,
    pub violations: Vec<CoessBox>,
    pub matched_pattern: Option<String>,
    /// Element of the hull that is not below `w`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hull_counterexample: Option<Perm>,
    /// Conditions that could not be decided, with the reason.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub errors: Vec<String>,
    /// `E(w)` and `E'(w)`, filled in by [`Context::explain`].
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coessential: Option<Vec<CoessBox>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reduced_coessential: Option<Vec<CoessBox>>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ClassificationReport {
    pub fn consistent(&self) -> bool {
        self.conditions.consistent()
    }
}

/// Everything needed to classify elements of one group.
pub struct Context {
    pub table: GroupTable,
    pub graph: BruhatGraph,
    pub hull_budget: u64,
}

impl Context {
    pub fn new(group: &Group) -> Result<Self> {
        let table = GroupTable::new(group)?;
        let graph = BruhatGraph::new(&table);
        Ok(Context { table, graph, hull_budget: DEFAULT_HULL_BUDGET })
    }

    pub fn with_hull_budget(mut self, budget: u64) -> Self {
        self.hull_budget = budget;
        self
    }

    pub fn group(&self) -> &Group {
        self.table.group()
    }

    /// Computes each requested condition by its own method.
    pub fn classify(&self, w: &Perm, conditions: &[Condition]) -> Result<ClassificationReport> {
        let group = self.group();
        group.check(w)?;
        let start = start_timer();
        let n = group.rank();
        let mut report = ClassificationReport {
            element: w.clone(),
            family: group.family(),
            rank: n,
            conditions: ConditionResults::default(),
            c: None,
            s: None,
            witnesses: Vec::new(),
            violations: Vec::new(),
            matched_pattern: None,
            hull_counterexample: None,
            errors: Vec::new(),
            coessential: None,
            reduced_coessential: None,
            elapsed: Duration::ZERO,
        };
        for &cond in conditions {
            match cond {
                Condition::Chambers => {
                    let c = chamber_count(group, w);
                    let s = self.table.interval_size(w);
                    report.c = Some(c);
                    report.s = Some(s);
                    report.conditions.set(cond, c == s as u64);
                }
                Condition::Distance => {
                    report.witnesses = distance_witnesses(&self.table, &self.graph, w);
                    report.conditions.set(cond, report.witnesses.is_empty());
                }
                Condition::PseudoInclusions => {
                    report.violations = match group.family() {
                        Family::A => inclusion_violations(w),
                        Family::B => pseudo_inclusion_violations(w, n),
                    };
                    report.conditions.set(cond, report.violations.is_empty());
                }
                Condition::RelaxedHull => {
                    let found = match group.family() {
                        Family::A => right_hull_counterexample(w, self.hull_budget),
                        Family::B => relaxed_right_hull_counterexample(w, n, self.hull_budget),
                    };
                    match found {
                        Ok(u) => {
                            report.conditions.set(cond, u.is_none());
                            report.hull_counterexample = u;
                        }
                        Err(e) => report.errors.push(format!("{}: {e}", cond.label())),
                    }
                }
                Condition::BpAvoidance => {
                    let matched = first_listed_pattern(w, group.family());
                    report.conditions.set(cond, matched.is_none());
                    report.matched_pattern = matched.map(|(v, m)| {
                        format!("{v} at {:?}{}", m.embedding.indices(), if m.reversed { " (reversed)" } else { "" })
                    });
                }
            }
        }
        report.elapsed = elapsed(start);
        Ok(report)
    }

    /// Attaches `E(w)` and `E'(w)` to a report.
    pub fn explain(&self, report: &mut ClassificationReport) -> Result<()> {
        report.coessential = Some(coessential_set(&report.element));
        report.reduced_coessential = Some(reduced_coessential(&self.table, &report.element)?);
        Ok(())
    }
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

/// How the hull condition is scheduled in [`verify_equivalence`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullPlan {
    Exhaustive,
    /// A seeded random sample of this many elements.
    Sample(usize, u64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifySummary {
    pub group: String,
    pub elements: usize,
    /// Elements on which every decided condition holds.
    pub hultman: usize,
    /// Per-condition count of elements where the condition holds.
    pub holds: BTreeMap<String, usize>,
    /// Per-condition count of elements where it was decided.
    pub decided: BTreeMap<String, usize>,
    pub disagreements: Vec<ClassificationReport>,
    pub reports: Vec<ClassificationReport>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerifySummary {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Classifies every element of the group and collects disagreements.
/// Reports come back in the table's `(length, window)` order.
pub fn verify_equivalence(ctx: &Context, conditions: &[Condition], hull: HullPlan) -> Result<VerifySummary> {
    let start = start_timer();
    let elements = ctx.table.elements();
    let hull_indices: Option<Vec<bool>> = match hull {
        HullPlan::Exhaustive => None,
        HullPlan::Sample(k, seed) => {
            let mut mask = vec![false; elements.len()];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in sample(&mut rng, elements.len(), k.min(elements.len())) {
                mask[i] = true;
            }
            Some(mask)
        }
    };
    let indexed: Vec<usize> = (0..elements.len()).collect();
    let reports = par_map(&indexed, |&k| {
        let wanted: Vec<Condition> = conditions
            .iter()
            .copied()
            .filter(|&c| c != Condition::RelaxedHull || hull_indices.as_ref().is_none_or(|m| m[k]))
            .collect();
        ctx.classify(&elements[k], &wanted)
    });
    let reports: Vec<ClassificationReport> = reports.into_iter().collect::<Result<_>>()?;
    let mut holds = BTreeMap::new();
    let mut decided = BTreeMap::new();
    for c in conditions {
        let label = c.label().to_string();
        holds.insert(label.clone(), reports.iter().filter(|r| r.conditions.get(*c) == Some(true)).count());
        decided.insert(label, reports.iter().filter(|r| r.conditions.get(*c).is_some()).count());
    }
    Ok(VerifySummary {
        group: ctx.group().to_string(),
        elements: reports.len(),
        hultman: reports.iter().filter(|r| r.conditions.verdict() == Some(true)).count(),
        holds,
        decided,
        disagreements: reports.iter().filter(|r| !r.consistent()).cloned().collect(),
        reports,
        elapsed: elapsed(start),
    })
}

/// BP-containment-minimal elements among those not defined by
/// (pseudo-)inclusions, over `S_1..S_{max_a}` then `B_1..B_{max_b}`.
pub fn find_minimal_non_hultman(max_a: usize, max_b: usize) -> Result<Vec<PatternSpec>> {
    let mut found: Vec<PatternSpec> = Vec::new();
    let groups = (1..=max_a).map(|r| (Family::A, r)).chain((1..=max_b).map(|r| (Family::B, r)));
    for (family, rank) in groups {
        let group = Group::new(family, rank)?;
        let table = GroupTable::new(&group)?;
        let candidates: Vec<&Perm> = table
            .elements()
            .iter()
            .filter(|w| match family {
                Family::A => !inclusion_violations(w).is_empty(),
                Family::B => !pseudo_inclusion_violations(w, rank).is_empty(),
            })
            .collect();
        let previous = found.clone();
        let fresh = par_map(&candidates, |w| !previous.iter().any(|v| bp_contains(w, family, v).is_some()));
        // only patterns from smaller groups are tested: within one group,
        // containment means equality up to reversal, and the list keeps
        // both members of a reversed pair
        for (w, keep) in candidates.into_iter().zip(fresh) {
            if keep {
                found.push(PatternSpec::new(w.clone(), family)?);
            }
        }
    }
    Ok(found)
}

/// A row of the published witness table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub family: Family,
    pub rank: usize,
    pub w: Perm,
    pub u: Perm,
    #[serde(rename = "lD")]
    pub directed: u32,
    #[serde(rename = "lT")]
    pub undirected: u32,
}

/// `(family, rank, w, u, l_D, l_T)` as printed in the published table of
/// minimal non-Hultman elements.
pub const PUBLISHED_WITNESSES: [(Family, usize, &str, &str, u32, u32); 45] = [
    (Family::A, 4, "4231", "2143", 4, 2),
    (Family::A, 5, "35142", "12435", 5, 3),
    (Family::A, 5, "42513", "13245", 5, 3),
    (Family::A, 6, "351624", "423156", 6, 4),
    (Family::A, 6, "351624", "126543", 6, 4),
    (Family::B, 3, "426153", "132546", 4, 2),
    (Family::B, 3, "536142", "142536", 4, 2),
    (Family::B, 3, "563412", "124356", 4, 2),
    (Family::B, 3, "462513", "135246", 4, 2),
    (Family::B, 3, "635241", "153426", 4, 2),
    (Family::B, 3, "635241", "241635", 4, 2),
    (Family::B, 3, "642531", "315264", 4, 2),
    (Family::B, 3, "642531", "153426", 4, 2),
    (Family::B, 3, "645231", "154326", 4, 2),
    (Family::B, 3, "645231", "351624", 4, 2),
    (Family::B, 3, "623451", "132546", 4, 2),
    (Family::B, 3, "624351", "135246", 4, 2),
    (Family::B, 3, "624351", "142536", 4, 2),
    (Family::B, 3, "653421", "214365", 4, 2),
    (Family::B, 4, "35172846", "12436578", 5, 3),
    (Family::B, 4, "46172835", "12536478", 5, 3),
    (Family::B, 4, "57163824", "14627358", 5, 3),
    (Family::B, 4, "57163824", "12654378", 5, 3),
    (Family::B, 4, "47163825", "13527468", 5, 3),
    (Family::B, 4, "47163825", "12645378", 5, 3),
    (Family::B, 4, "52618374", "14236758", 5, 3),
    (Family::B, 4, "52618374", "13254768", 5, 3),
    (Family::B, 4, "47618325", "13254768", 5, 3),
    (Family::B, 4, "42681375", "13427568", 5, 3),
    (Family::B, 4, "42681375", "13254768", 5, 3),
    (Family::B, 4, "42618375", "13245768", 5, 3),
    (Family::B, 4, "37154826", "12536478", 5, 3),
    (Family::B, 4, "37154826", "12463578", 5, 3),
    (Family::B, 4, "37145826", "12436578", 5, 3),
    (Family::B, 4, "37581426", "14627358", 5, 3),
    (Family::B, 4, "37581426", "12654378", 5, 3),
    (Family::B, 4, "37518426", "12645378", 5, 3),
    (Family::B, 4, "37518426", "14263758", 5, 3),
    (Family::B, 4, "35718246", "12463578", 5, 3),
    (Family::B, 4, "46718235", "12354678", 5, 3),
    (Family::B, 5, "3617294a58", "124365879a", 6, 4),
    (Family::B, 5, "3617294a58", "125347869a", 6, 4),
    (Family::B, 5, "3517924a68", "124365879a", 6, 4),
    (Family::B, 5, "3517924a68", "124538679a", 6, 4),
    (Family::B, 5, "3517294a68", "124356879a", 6, 4),
];

pub fn published_witnesses() -> Vec<WitnessRow> {
    PUBLISHED_WITNESSES
        .iter()
        .map(|&(family, rank, w, u, directed, undirected)| WitnessRow {
            family,
            rank,
            w: w.parse().expect("table entry"),
            u: u.parse().expect("table entry"),
            directed,
            undirected,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowStatus {
    Match,
    /// The published distances disagree in parity with `l(w) - l(u)`, so
    /// they cannot be right; the recomputed values are attached.
    ParityInconsistent {
        computed: Option<DistanceWitness>,
        length_gap: usize,
    },
    /// The published `u` is not below `w`, so it cannot be a witness.
    NotBelow {
        computed: DistanceWitness,
    },
    Mismatch {
        computed: Option<DistanceWitness>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RowCheck {
    pub row: WitnessRow,
    pub status: RowStatus,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PatternWitnesses {
    pub pattern: PatternSpec,
    pub c: u64,
    pub s: usize,
    pub witnesses: Vec<DistanceWitness>,
    /// Recomputed witnesses absent from the published table.
    pub unlisted: Vec<DistanceWitness>,
}

impl PatternWitnesses {
    /// Non-Hultman by both the distance computation and `c(w) < s(w)`.
    pub fn confirmed_non_hultman(&self) -> bool {
        !self.witnesses.is_empty() && self.c < self.s as u64
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessTable {
    pub patterns: Vec<PatternWitnesses>,
    pub rows: Vec<RowCheck>,
}

impl WitnessTable {
    pub fn mismatches(&self) -> impl Iterator<Item = &RowCheck> {
        self.rows.iter().filter(|r| matches!(r.status, RowStatus::Mismatch { .. }))
    }

    pub fn parity_inconsistent(&self) -> impl Iterator<Item = &RowCheck> {
        self.rows.iter().filter(|r| matches!(r.status, RowStatus::ParityInconsistent { .. }))
    }

    pub fn not_below(&self) -> impl Iterator<Item = &RowCheck> {
        self.rows.iter().filter(|r| matches!(r.status, RowStatus::NotBelow { .. }))
    }
}

/// Recomputes every `u <= w` with `l_D(u,w) > l_T(u,w)` for the listed
/// patterns and compares against [`PUBLISHED_WITNESSES`].
pub fn witness_table(patterns: &[PatternSpec]) -> Result<WitnessTable> {
    let mut contexts: BTreeMap<(Family, usize), Context> = BTreeMap::new();
    let mut results = Vec::new();
    for v in patterns {
        let key = (v.family, v.rank());
        if let std::collections::btree_map::Entry::Vacant(e) = contexts.entry(key) {
            e.insert(Context::new(&v.group()?)?);
        }
        let ctx = &contexts[&key];
        let group = ctx.group();
        let witnesses = distance_witnesses(&ctx.table, &ctx.graph, &v.element);
        results.push((v.clone(), chamber_count(group, &v.element), ctx.table.interval_size(&v.element), witnesses));
    }
    let published = published_witnesses();
    let mut rows = Vec::new();
    for row in &published {
        let group = Group::new(row.family, row.rank)?;
        let computed = results
            .iter()
            .find(|(v, ..)| v.family == row.family && v.element == row.w)
            .and_then(|(_, _, _, ws)| ws.iter().find(|x| x.u == row.u).cloned());
        let gap = group.length(&row.w).abs_diff(group.length(&row.u));
        let parity_ok = (row.directed as usize) % 2 == gap % 2 && (row.undirected as usize) % 2 == gap % 2;
        let matches =
            computed.as_ref().is_some_and(|c| c.directed == Some(row.directed) && c.undirected == row.undirected);
        let status = if matches {
            RowStatus::Match
        } else if !parity_ok {
            RowStatus::ParityInconsistent {
                computed: computed.or_else(|| Some(recompute(&contexts, row))),
                length_gap: gap,
            }
        } else if !bruhat_leq(&row.u, &row.w) {
            RowStatus::NotBelow { computed: recompute(&contexts, row) }
        } else {
            RowStatus::Mismatch { computed }
        };
        rows.push(RowCheck { row: row.clone(), status });
    }
    let patterns = results
        .into_iter()
        .map(|(pattern, c, s, witnesses)| {
            let unlisted = witnesses
                .iter()
                .filter(|x| {
                    !published.iter().any(|r| r.family == pattern.family && r.w == pattern.element && r.u == x.u)
                })
                .cloned()
                .collect();
            PatternWitnesses { pattern, c, s, witnesses, unlisted }
        })
        .collect();
    Ok(WitnessTable { patterns, rows })
}

/// Distances for a published pair that is not a witness.
fn recompute(contexts: &BTreeMap<(Family, usize), Context>, row: &WitnessRow) -> DistanceWitness {
    let (directed, undirected) = match contexts.get(&(row.family, row.rank)) {
        Some(ctx) => {
            let (u, w) = (ctx.table.index_of(&row.u), ctx.table.index_of(&row.w));
            let directed = u.zip(w).and_then(|(u, w)| ctx.graph.directed_distance(u, w));
            (directed, crate::bruhat::undirected_distance(ctx.group(), &row.u, &row.w) as u32)
        }
        None => (None, 0),
    };
    DistanceWitness { u: row.u.clone(), directed, undirected }
}

fn fmt_bool(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

/// Human-readable rendering of a classification.
pub fn render_report(r: &ClassificationReport, explain: bool) -> String {
    let mut out = String::new();
    let group = if r.family == Family::A { format!("S_{}", r.rank) } else { format!("B_{}", r.rank) };
    let _ = writeln!(out, "{} in {group}", r.element);
    for c in Condition::ALL {
        let _ = writeln!(out, "  {}. {:<18} {}", c.number(), c.label(), fmt_bool(r.conditions.get(c)));
    }
    if let (Some(c), Some(s)) = (r.c, r.s) {
        let _ = writeln!(out, "  c(w) = {c}, s(w) = {s}");
    }
    if explain {
        let boxes =
            |v: &[CoessBox]| v.iter().map(|b| format!("({},{};{})", b.p, b.q, b.r)).collect::<Vec<_>>().join(" ");
        if let Some(e) = &r.coessential {
            let _ = writeln!(out, "  E(w)  = {}", boxes(e));
        }
        if let Some(e) = &r.reduced_coessential {
            let _ = writeln!(out, "  E'(w) = {}", boxes(e));
        }
        for x in r.witnesses.iter().take(10) {
            let d = x.directed.map_or("inf".to_string(), |d| d.to_string());
            let _ = writeln!(out, "  witness u = {}: lD = {d}, lT = {}", x.u, x.undirected);
        }
        if r.witnesses.len() > 10 {
            let _ = writeln!(out, "  ... {} witnesses in total", r.witnesses.len());
        }
        for b in &r.violations {
            let _ = writeln!(out, "  violated box (p,q) = ({},{}) with r = {}", b.p, b.q, b.r);
        }
        if let Some(u) = &r.hull_counterexample {
            let _ = writeln!(out, "  hull element not below w: {u}");
        }
        if let Some(m) = &r.matched_pattern {
            let _ = writeln!(out, "  contains {m}");
        }
    }
    for e in &r.errors {
        let _ = writeln!(out, "  undecided: {e}");
    }
    let verdict = match (r.consistent(), r.conditions.verdict()) {
        (false, _) => "CONDITIONS DISAGREE",
        (true, Some(true)) => "Hultman",
        (true, Some(false)) => "not Hultman",
        (true, None) => "undecided",
    };
    let _ = writeln!(out, "  => {verdict}");
    out
}

pub fn render_summary(s: &VerifySummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {} elements, {} Hultman, {:.2?}", s.group, s.elements, s.hultman, s.elapsed);
    for (label, holds) in &s.holds {
        let _ = writeln!(out, "  {:<18} holds {:>6} / decided {:>6}", label, holds, s.decided[label]);
    }
    if s.all_agree() {
        let _ = writeln!(out, "  all decided conditions agree");
    } else {
        let _ = writeln!(out, "  {} disagreements", s.disagreements.len());
        for r in s.disagreements.iter().take(20) {
            let _ = writeln!(out, "    {} {:?}", r.element, r.conditions);
        }
    }
    out
}

pub fn render_witness_table(t: &WitnessTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<6} {:<12} {:<12} {:>3} {:>3}  status", "group", "w", "u", "lD", "lT");
    for check in &t.rows {
        let r = &check.row;
        let g = if r.family == Family::A { format!("S{}", r.rank) } else { format!("B{}", r.rank) };
        let status = match &check.status {
            RowStatus::Match => "match".to_string(),
            RowStatus::ParityInconsistent { computed, length_gap } => format!(
                "parity-inconsistent (l(w)-l(u) = {length_gap}); recomputed {}",
                computed.as_ref().map_or("-".into(), describe)
            ),
            RowStatus::NotBelow { computed } => format!("u is not below w; recomputed {}", describe(computed)),
            RowStatus::Mismatch { computed } => {
                format!("MISMATCH; recomputed {}", computed.as_ref().map_or("not a witness".into(), describe))
            }
        };
        let (w, u) = (r.w.to_string(), r.u.to_string());
        let _ = writeln!(out, "{g:<6} {w:<12} {u:<12} {:>3} {:>3}  {status}", r.directed, r.undirected);
    }
    for p in &t.patterns {
        if !p.unlisted.is_empty() {
            let list: Vec<String> = p.unlisted.iter().map(|x| format!("{} ({})", x.u, describe(x))).collect();
            let _ = writeln!(out, "{}: further witnesses {}", p.pattern, list.join(", "));
        }
    }
    out
}

fn describe(x: &DistanceWitness) -> String {
    format!("lD = {}, lT = {}", x.directed.map_or("inf".into(), |d| d.to_string()), x.undirected)
}
