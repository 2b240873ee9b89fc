//! Acceptance suite: one line per criterion. Set `HULTMAN_B5=1` to add the
//! (slow) full B_5 equivalence run to criterion 3.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hultman::arrangement::{chamber_count, chamber_count_oracle};
use hultman::bruhat::{bruhat_leq, bruhat_leq_full, undirected_distance, BruhatGraph, GroupTable, LowerInterval};
use hultman::diagram::{
    basic_element, closed_form_disagreements, coessential_set, count_reduced_words, coxeter_coessential,
    has_unique_reduced_word, reduced_coessential, reduced_coessential_closed_form, CoessBox, RedundancyOffset,
};
use hultman::harness::{find_minimal_non_hultman, verify_equivalence, witness_table, Condition, Context, HullPlan};
use hultman::pattern::{bp_contains, condition5_patterns, flatten_at, PatternSpec};
use hultman::{Family, Group, Perm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed <= limit, format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn p(s: &str) -> Perm {
    s.parse().unwrap()
}

fn reference_values() -> Outcome {
    let start = Instant::now();
    let a4 = Group::a(4);
    let table = GroupTable::new(&a4).map_err(|e| e.to_string())?;
    let got = [
        chamber_count(&a4, &p("3412")),
        table.interval_size(&p("3412")) as u64,
        chamber_count(&a4, &p("4231")),
        table.interval_size(&p("4231")) as u64,
        chamber_count(&a4, &a4.longest()),
    ];
    check(got == [14, 14, 18, 20, 24], format!("got {got:?}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("c(3412)=14 s(3412)=14 c(4231)=18 s(4231)=20 c(4321)=24".into())
}

fn run_group(group: &Group, conditions: &[Condition], hull: HullPlan) -> Result<String, String> {
    let ctx = Context::new(group).map_err(|e| e.to_string())?;
    let s = verify_equivalence(&ctx, conditions, hull).map_err(|e| e.to_string())?;
    check(
        s.all_agree(),
        format!(
            "{}: {} disagreements, first {:?}",
            s.group,
            s.disagreements.len(),
            s.disagreements.first().map(|r| (&r.element, &r.conditions))
        ),
    )?;
    for c in conditions {
        let decided = s.decided[c.label()];
        let expected = if *c == Condition::RelaxedHull { decided.min(s.elements) } else { s.elements };
        check(decided == expected && decided > 0, format!("{}: {} decided on {decided} elements", s.group, c.label()))?;
    }
    Ok(format!("{} {}/{} Hultman", s.group, s.hultman, s.elements))
}

fn type_a_equivalence() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for n in 3..=6 {
        parts.push(run_group(&Group::a(n), &Condition::ALL, HullPlan::Exhaustive)?);
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(parts.join(", "))
}

fn type_b_equivalence() -> Outcome {
    let mut parts = Vec::new();
    let start = Instant::now();
    for n in 2..=3 {
        parts.push(run_group(&Group::b(n), &Condition::ALL, HullPlan::Exhaustive)?);
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    let start = Instant::now();
    parts.push(run_group(&Group::b(4), &Condition::ALL, HullPlan::Exhaustive)?);
    within(start.elapsed(), Duration::from_secs(1800))?;
    if std::env::var_os("HULTMAN_B5").is_some() {
        let start = Instant::now();
        parts.push(run_group(&Group::b(5), &Condition::ALL, HullPlan::Exhaustive)?);
        within(start.elapsed(), Duration::from_secs(4 * 3600))?;
    } else {
        parts.push("B_5 skipped (set HULTMAN_B5=1)".into());
    }
    Ok(parts.join(", "))
}

fn minimal_patterns() -> Outcome {
    let start = Instant::now();
    let found = find_minimal_non_hultman(6, 5).map_err(|e| e.to_string())?;
    let found_set: BTreeSet<(String, String)> =
        found.iter().map(|v| (v.family.to_string(), v.element.to_string())).collect();
    let listed: BTreeSet<(String, String)> =
        condition5_patterns().iter().map(|v| (v.family.to_string(), v.element.to_string())).collect();
    check(found.len() == found_set.len(), "duplicate patterns")?;
    check(
        found_set == listed,
        format!(
            "extra {:?}, missing {:?}",
            found_set.difference(&listed).collect::<Vec<_>>(),
            listed.difference(&found_set).collect::<Vec<_>>()
        ),
    )?;
    within(start.elapsed(), Duration::from_secs(7200))?;
    Ok(format!("{} patterns, equal to the listed set", found.len()))
}

fn witness_rows() -> Outcome {
    let table = witness_table(&condition5_patterns()).map_err(|e| e.to_string())?;
    let unconfirmed: Vec<String> =
        table.patterns.iter().filter(|p| !p.confirmed_non_hultman()).map(|p| p.pattern.to_string()).collect();
    check(unconfirmed.is_empty(), format!("not confirmed non-Hultman: {unconfirmed:?}"))?;
    let mismatches: Vec<String> =
        table.mismatches().map(|r| format!("{} {} {:?}", r.row.w, r.row.u, r.status)).collect();
    check(mismatches.is_empty(), format!("mismatched rows: {mismatches:?}"))?;
    let flagged: Vec<String> = table.parity_inconsistent().map(|r| format!("{}/{}", r.row.w, r.row.u)).collect();
    let outside: Vec<String> = table.not_below().map(|r| format!("{}/{}", r.row.w, r.row.u)).collect();
    let matched = table.rows.len() - flagged.len() - outside.len();
    let unlisted: Vec<String> = table
        .patterns
        .iter()
        .flat_map(|p| p.unlisted.iter().map(move |x| format!("{}/{}", p.pattern.element, x.u)))
        .collect();
    Ok(format!(
        "{matched}/{} rows match; reported discrepancies: parity-inconsistent {flagged:?}, u not below w {outside:?}; unlisted witnesses {unlisted:?}",
        table.rows.len()
    ))
}

fn coessential_machinery() -> Outcome {
    let start = Instant::now();
    let b3 = Group::b(3);
    let table = GroupTable::new(&b3).map_err(|e| e.to_string())?;
    let w = p("426153");
    let bx = |list: &[(usize, usize)]| -> BTreeSet<(usize, usize)> { list.iter().copied().collect() };
    let pq = |v: Vec<CoessBox>| -> BTreeSet<(usize, usize)> { v.into_iter().map(|b| (b.p, b.q)).collect() };
    check(pq(coessential_set(&w)) == bx(&[(3, 2), (5, 2), (5, 4), (3, 4)]), "E(w)")?;
    check(pq(reduced_coessential(&table, &w).map_err(|e| e.to_string())?) == bx(&[(5, 2), (3, 4)]), "E'(w)")?;
    check(
        pq(reduced_coessential_closed_form(&w, 3, RedundancyOffset::PMinusN)) == bx(&[(5, 2), (3, 4)]),
        "E'(w) closed form",
    )?;
    let mut offsets = Vec::new();
    for offset in RedundancyOffset::ALL {
        let bad = closed_form_disagreements(&table, offset).map_err(|e| e.to_string())?;
        offsets.push(format!("{offset:?} {}/{}", bad.len(), table.len()));
    }
    let v520 = basic_element(&b3, 5, 2, 0).map_err(|e| e.to_string())?;
    check(v520 == p("153426") && has_unique_reduced_word(&b3, &v520), "v(5,2,0)")?;
    let v321 = basic_element(&b3, 3, 2, 1).map_err(|e| e.to_string())?;
    let words = count_reduced_words(&b3, &v321);
    check(v321 == p("351624") && words >= 2u32.into(), "v(3,2,1)")?;
    check(coxeter_coessential(&table, &w) == vec![p("153426")], "coxeter coessential set")?;
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("E, E', v(5,2,0)=153426 (1 word), v(3,2,1)=351624 ({words} words), coxeter set {{153426}}; closed-form offsets differing from E' on B_3: {}",
        offsets.join(", ")
    ))
}

fn oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut ff = 0;
    for g in [Group::a(4), Group::b(3)] {
        for w in g.elements() {
            let oracle = chamber_count_oracle(&g, &w).map_err(|e| e.to_string())?;
            check(oracle == chamber_count(&g, &w), format!("chambers of {w} in {g}"))?;
            ff += 1;
        }
    }
    let b4 = Group::b(4);
    let b4_elements = b4.elements();
    for _ in 0..50 {
        let w = &b4_elements[rng.gen_range(0..b4_elements.len())];
        let oracle = chamber_count_oracle(&b4, w).map_err(|e| e.to_string())?;
        check(oracle == chamber_count(&b4, w), format!("chambers of {w} in B_4"))?;
        ff += 1;
    }
    let mut bfs = 0;
    for g in [Group::a(4), Group::b(3)] {
        let table = GroupTable::new(&g).map_err(|e| e.to_string())?;
        let graph = BruhatGraph::new(&table);
        for (i, u) in table.elements().iter().enumerate() {
            let dist = graph.undirected_distances_from(i);
            for (j, w) in table.elements().iter().enumerate() {
                check(dist[j] as usize == undirected_distance(&g, u, w), format!("l_T({u},{w})"))?;
                bfs += 1;
            }
        }
    }
    let mut leq = 0;
    for g in [Group::a(6), Group::b(4)] {
        let elements = g.elements();
        for w in &elements {
            let test = LowerInterval::new(w);
            for u in &elements {
                check(test.contains(u) == bruhat_leq_full(u, w), format!("{u} <= {w}"))?;
                leq += 1;
            }
        }
    }
    Ok(format!("{ff} chamber counts, {bfs} distance pairs, {leq} Bruhat comparisons"))
}

/// A random embedding of a `B_m` (or `S_m`) pattern inside `w`, flattened.
fn random_flattening(w: &PatternSpec, rng: &mut ChaCha8Rng) -> PatternSpec {
    let n = w.rank();
    let m = rng.gen_range(1..=n);
    let mut half: Vec<usize> = rand::seq::index::sample(rng, n, m).into_iter().map(|i| i + 1).collect();
    half.sort();
    let indices: Vec<usize> = match w.family {
        Family::A => half,
        Family::B => half.iter().copied().chain(half.iter().rev().map(|&i| 2 * n + 1 - i)).collect(),
    };
    PatternSpec::new(flatten_at(&w.element, &indices), w.family).unwrap()
}

fn theorem_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut groups: Vec<(Group, Vec<Perm>)> =
        vec![(Group::a(5), Group::a(5).elements()), (Group::b(3), Group::b(3).elements())];
    let b4 = Group::b(4).elements();
    let sampled: Vec<Perm> = (0..500).map(|_| b4[rng.gen_range(0..b4.len())].clone()).collect();
    groups.push((Group::b(4), sampled));
    for (g, sample) in &groups {
        let table = GroupTable::new(g).map_err(|e| e.to_string())?;
        for w in sample {
            let (c, s) = (chamber_count(g, w), table.interval_size(w) as u64);
            check(c <= s, format!("c({w}) = {c} > s = {s}"))?;
        }
    }
    for g in [Group::a(5), Group::b(3)] {
        let table = GroupTable::new(&g).map_err(|e| e.to_string())?;
        let graph = BruhatGraph::new(&table);
        let id = table.index_of(&g.identity()).unwrap();
        for (k, w) in table.elements().iter().enumerate() {
            let d = graph.directed_distance(id, k);
            check(d == Some(g.absolute_length(w) as u32), format!("Dyer fails at {w}"))?;
        }
    }
    let hosts: Vec<PatternSpec> = Group::b(4)
        .elements()
        .into_iter()
        .map(|w| PatternSpec::new(w, Family::B).unwrap())
        .chain(Group::a(6).elements().into_iter().map(|w| PatternSpec::new(w, Family::A).unwrap()))
        .collect();
    for _ in 0..10_000 {
        let w = &hosts[rng.gen_range(0..hosts.len())];
        let u = random_flattening(w, &mut rng);
        let v = random_flattening(&u, &mut rng);
        check(bp_contains(&w.element, w.family, &u).is_some(), format!("{w} should contain {u}"))?;
        check(bp_contains(&u.element, u.family, &v).is_some(), format!("{u} should contain {v}"))?;
        check(bp_contains(&w.element, w.family, &v).is_some(), format!("transitivity: {w} {u} {v}"))?;
    }
    // sanity for the sampler: a flattening is below nothing in particular,
    // but the identity pattern flattens to the identity
    check(bruhat_leq(&Perm::identity(3), &Perm::identity(3)), "identity")?;
    Ok("c <= s, Dyer, BP transitivity on 10000 triples".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 reference values", reference_values),
        ("2 type A equivalence", type_a_equivalence),
        ("3 type B equivalence", type_b_equivalence),
        ("4 minimal patterns", minimal_patterns),
        ("5 witness table", witness_rows),
        ("6 coessential machinery", coessential_machinery),
        ("7 oracle equivalence", oracles),
        ("8 theorem properties", theorem_properties),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|x| name.contains(x.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  [{name}] {detail} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL  [{name}] {why} ({elapsed:.2?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
