//! Browser bindings for the demo page in `www/`. Every export returns a
//! JSON document; the `api` functions do the work and are usable natively.

use wasm_bindgen::prelude::*;

pub mod api {
    use std::cell::RefCell;

    use hultman::arrangement::{chamber_count, characteristic_polynomial, inversion_arrangement};
    use hultman::bruhat::RankGrid;
    use hultman::diagram::{coessential_set, diagram, HullBounds};
    use hultman::harness::{ClassificationReport, Condition, Context};
    use hultman::pattern::{bp_contains, PatternSpec};
    use hultman::{Family, Group, Perm};
    use serde::Serialize;

    /// Keeps the demo responsive; the hull condition is reported as
    /// undecided past this many search nodes.
    pub const HULL_BUDGET: u64 = 2_000_000;

    thread_local! {
        static CONTEXT: RefCell<Option<Context>> = const { RefCell::new(None) };
    }

    fn group(family: &str, rank: usize) -> Result<Group, String> {
        let family: Family = family.parse()?;
        Group::new(family, rank).map_err(|e| e.to_string())
    }

    fn element(g: &Group, text: &str) -> Result<Perm, String> {
        g.parse(text).map_err(|e| e.to_string())
    }

    fn with_context<T>(g: &Group, f: impl FnOnce(&Context) -> T) -> Result<T, String> {
        CONTEXT.with(|cell| {
            let mut slot = cell.borrow_mut();
            if slot.as_ref().is_none_or(|c| c.group() != g) {
                *slot = Some(Context::new(g).map_err(|e| e.to_string())?.with_hull_budget(HULL_BUDGET));
            }
            Ok(f(slot.as_ref().unwrap()))
        })
    }

    #[derive(Serialize)]
    struct BoxOut {
        p: usize,
        q: usize,
        r: usize,
        tight: bool,
    }

    #[derive(Serialize)]
    struct Description {
        degree: usize,
        window: Vec<u8>,
        signed_window: Option<Vec<i32>>,
        length: usize,
        absolute_length: usize,
        rank_grid: Vec<Vec<usize>>,
        diagram: Vec<(usize, usize)>,
        coessential: Vec<BoxOut>,
        hull: HullBounds,
        report: ClassificationReport,
    }

    /// Diagram, coessential set, right hull and the five conditions.
    pub fn classify(family: &str, rank: usize, text: &str) -> Result<String, String> {
        let g = group(family, rank)?;
        let w = element(&g, text)?;
        let report = with_context(&g, |ctx| ctx.classify(&w, &Condition::ALL))?.map_err(|e| e.to_string())?;
        let out = Description {
            degree: w.degree(),
            window: w.window().to_vec(),
            signed_window: g.signed_window(&w).ok().map(|s| s.0),
            length: g.length(&w),
            absolute_length: g.absolute_length(&w),
            rank_grid: RankGrid::new(&w).rows(),
            diagram: diagram(&w),
            coessential: coessential_set(&w)
                .into_iter()
                .map(|b| BoxOut { p: b.p, q: b.q, r: b.r, tight: b.attains_identity_bound() })
                .collect(),
            hull: HullBounds::new(&w),
            report,
        };
        serde_json::to_string(&out).map_err(|e| e.to_string())
    }

    #[derive(Serialize)]
    struct Chambers {
        hyperplanes: Vec<String>,
        characteristic_polynomial: Vec<i64>,
        chambers: u64,
    }

    /// The inversion arrangement and its chamber count.
    pub fn chambers(family: &str, rank: usize, text: &str) -> Result<String, String> {
        let g = group(family, rank)?;
        let w = element(&g, text)?;
        let out = Chambers {
            hyperplanes: inversion_arrangement(&g, &w).iter().map(ToString::to_string).collect(),
            characteristic_polynomial: characteristic_polynomial(&g, &w),
            chambers: chamber_count(&g, &w),
        };
        serde_json::to_string(&out).map_err(|e| e.to_string())
    }

    #[derive(Serialize)]
    struct Containment {
        contains: bool,
        indices: Vec<usize>,
        reversed: bool,
        pattern: String,
    }

    /// BP containment of `pattern` (in the group of `pattern_family`) in
    /// `host` (in the group of `host_family`).
    pub fn contains(host_family: &str, host: &str, pattern_family: &str, pattern: &str) -> Result<String, String> {
        let host_family: Family = host_family.parse()?;
        let w: Perm = host.parse().map_err(|e: hultman::Error| e.to_string())?;
        if host_family == Family::B {
            let g = group("B", w.degree() / 2)?;
            if w.degree() % 2 == 1 || !g.contains(&w) {
                return Err(format!("{w} is not an element of a type B group"));
            }
        }
        let family: Family = pattern_family.parse()?;
        let v = PatternSpec::new(pattern.parse().map_err(|e: hultman::Error| e.to_string())?, family)
            .map_err(|e| e.to_string())?;
        let found = bp_contains(&w, host_family, &v);
        let out = Containment {
            contains: found.is_some(),
            indices: found.as_ref().map(|m| m.embedding.indices().to_vec()).unwrap_or_default(),
            reversed: found.is_some_and(|m| m.reversed),
            pattern: v.to_string(),
        };
        serde_json::to_string(&out).map_err(|e| e.to_string())
    }
}

#[wasm_bindgen]
pub fn classify(family: &str, rank: usize, element: &str) -> Result<String, JsError> {
    api::classify(family, rank, element).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn chambers(family: &str, rank: usize, element: &str) -> Result<String, JsError> {
    api::chambers(family, rank, element).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn contains(host_family: &str, host: &str, pattern_family: &str, pattern: &str) -> Result<String, JsError> {
    api::contains(host_family, host, pattern_family, pattern).map_err(|e| JsError::new(&e))
}
