//! Exact `k`-choosability of `K_p ∨ K_{a,b}`, least non-choosable `b`,
//! deficiency and `τ_s(a,b)` at desk scale.
//!
//! `K_p ∨ K_{a,b}` fails to be `k`-choosable iff some `k`-assignment `L` of
//! `W ∪ X` has every range in `𝓡(G[W ∪ X], L)` containing one of `b` chosen
//! `k`-sets, which then become the `Y`-lists. [`critical_b`] minimizes that
//! number of `k`-sets over canonical assignments of `W ∪ X`.

mod canonical;
mod cover;
mod naive;

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{OnceLock, RwLock};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{self, arith};
use crate::constructions::{ConstructionKind, ConstructionSpec, MAX_CONSTRUCTION_B};
use crate::engine::{core_range_masks, palette::bits, ColorMask, EngineError};
use crate::model::{Color, JoinGraph, ListAssignment, ModelError};

pub use naive::{is_k_choosable_naive, NaiveVerdict, NAIVE_MAX_K, NAIVE_MAX_VERTICES};

/// Largest `p + a` the search accepts.
pub const MAX_CORE_VERTICES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Canonical `W ∪ X` assignments; checked before any work starts.
    pub max_assignments: u64,
    /// Branch-and-bound nodes spent on covers, summed over all assignments.
    pub max_cover_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_assignments: 20_000_000, max_cover_nodes: 500_000_000 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChoosabilityError {
    #[error("{0}")]
    Precondition(String),
    #[error("refused: {what} needs {needed} but the budget allows {limit}{}", partial_note(.partial))]
    BudgetExceeded { what: &'static str, needed: String, limit: u64, partial: Option<u64> },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

fn partial_note(partial: &Option<u64>) -> String {
    match partial {
        Some(v) => format!(" (best cover found before stopping: {v})"),
        None => String::new(),
    }
}

impl From<ModelError> for ChoosabilityError {
    fn from(e: ModelError) -> Self {
        ChoosabilityError::Engine(e.into())
    }
}

/// A bad `k`-assignment: lists on `W ∪ X` (graph order), `k`-sets covering
/// every range, and the list given to any `y` beyond the cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadAssignment {
    pub p: usize,
    pub a: usize,
    pub k: usize,
    pub core: Vec<Vec<Color>>,
    pub cover: Vec<Vec<Color>>,
    pub pad: Vec<Color>,
}

impl BadAssignment {
    /// The full assignment on `K_p ∨ K_{a,b}`: `y_i` gets the `i`-th cover set, then `pad`.
    pub fn expand(&self, b: usize) -> Result<(JoinGraph, ListAssignment), ChoosabilityError> {
        if b < self.cover.len() {
            return Err(ChoosabilityError::Precondition(format!(
                "the witness needs b >= {} (got {b})",
                self.cover.len()
            )));
        }
        let g = JoinGraph::new(self.p, self.a, b)?;
        let mut lists = self.core.clone();
        lists.extend(self.cover.iter().cloned());
        lists.resize(self.p + self.a + b, self.pad.clone());
        Ok((g, ListAssignment::new(lists)?))
    }
}

fn colors_of(mask: ColorMask) -> Vec<Color> {
    bits(mask).map(|c| c as Color + 1).collect()
}

/// Outcome of [`critical_b`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CriticalB {
    /// `K_p ∨ K_{a,b}` is `k`-choosable exactly for `b < value`.
    Exact { value: u64, witness: BadAssignment, assignments: u64 },
    /// Every `b ≤ cap` is `k`-choosable.
    AboveCap { cap: u64, assignments: u64 },
    /// `k ≥ p + a + 1`: choosable for every `b`.
    Unbounded,
}

impl CriticalB {
    pub fn value(&self) -> Option<u64> {
        match self {
            CriticalB::Exact { value, .. } => Some(*value),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
enum Known {
    Exact { value: u64, witness: BadAssignment, assignments: u64 },
    Above { cap: u64, assignments: u64 },
}

type MemoKey = (usize, usize, usize);

fn memo() -> &'static RwLock<HashMap<MemoKey, Known>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, Known>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn recall(key: MemoKey, cap: u64) -> Option<CriticalB> {
    let guard = memo().read().expect("memo lock");
    match guard.get(&key)? {
        Known::Exact { value, witness, assignments } => Some(if *value <= cap {
            CriticalB::Exact { value: *value, witness: witness.clone(), assignments: *assignments }
        } else {
            CriticalB::AboveCap { cap, assignments: *assignments }
        }),
        Known::Above { cap: known, assignments } => {
            (cap <= *known).then_some(CriticalB::AboveCap { cap, assignments: *assignments })
        }
    }
}

fn remember(key: MemoKey, result: &CriticalB) {
    let known = match result {
        CriticalB::Exact { value, witness, assignments } => {
            Known::Exact { value: *value, witness: witness.clone(), assignments: *assignments }
        }
        CriticalB::AboveCap { cap, assignments } => Known::Above { cap: *cap, assignments: *assignments },
        CriticalB::Unbounded => return,
    };
    let mut guard = memo().write().expect("memo lock");
    let keep_old = matches!((guard.get(&key), &known), (Some(Known::Exact { .. }), _))
        || matches!((guard.get(&key), &known), (Some(Known::Above { cap: old, .. }), Known::Above { cap: new, .. }) if old >= new);
    if !keep_old {
        guard.insert(key, known);
    }
}

/// Number of canonical `W ∪ X` assignments [`critical_b`] would examine.
pub fn critical_b_assignments(p: usize, a: usize, k: usize) -> u128 {
    let plan = Plan::new(p, a, k);
    canonical::count(plan.free, k as u32, plan.start_used)
}

/// How the `W ∪ X` lists are enumerated.
struct Plan {
    p: usize,
    a: usize,
    k: usize,
    /// Lists fixed before enumeration (in enumeration order).
    fixed: Vec<ColorMask>,
    free: usize,
    start_used: u32,
    /// Whether enumeration runs over `X` first (then `W`) instead of `W` then `X`.
    x_first: bool,
}

impl Plan {
    fn new(p: usize, a: usize, k: usize) -> Self {
        if k == p + a && a >= 2 {
            // Two X-lists sharing a color give a range of size < k, which no k-set covers,
            // so only pairwise-disjoint X-lists matter; rename them to consecutive blocks.
            let fixed = (0..a).map(|j| ((1u128 << k) - 1) << (j * k)).collect();
            Plan { p, a, k, fixed, free: p, start_used: (a * k) as u32, x_first: true }
        } else {
            Plan { p, a, k, fixed: Vec::new(), free: p + a, start_used: 0, x_first: false }
        }
    }

    /// `(W masks, X masks)` from a full enumeration-order list.
    fn split<'l>(&self, lists: &'l [ColorMask]) -> (&'l [ColorMask], &'l [ColorMask]) {
        if self.x_first {
            let (x, w) = lists.split_at(self.a);
            (w, x)
        } else {
            lists.split_at(self.p)
        }
    }

    fn witness(&self, lists: &[ColorMask], cover: &[ColorMask]) -> BadAssignment {
        let (w, x) = self.split(lists);
        let core: Vec<Vec<Color>> = w.iter().chain(x).map(|&m| colors_of(m)).collect();
        let cover: Vec<Vec<Color>> = cover.iter().map(|&m| colors_of(m)).collect();
        let pad = cover.last().cloned().unwrap_or_default();
        BadAssignment { p: self.p, a: self.a, k: self.k, core, cover, pad }
    }
}

struct Found {
    value: u64,
    lists: Vec<ColorMask>,
    cover: Vec<ColorMask>,
}

/// The least `b` for which `K_p ∨ K_{a,b}` is not `k`-choosable, if it is at most `cap`.
///
/// Results are memoized per `(p, a, k)` for the life of the process.
pub fn critical_b(p: usize, a: usize, k: usize, cap: u64, budget: &SearchBudget) -> Result<CriticalB, ChoosabilityError> {
    if a == 0 {
        return Err(ChoosabilityError::Precondition("the small side needs a >= 1".into()));
    }
    if p + a > MAX_CORE_VERTICES {
        return Err(ChoosabilityError::Precondition(format!(
            "the search needs p + a <= {MAX_CORE_VERTICES} (got {})",
            p + a
        )));
    }
    if k < p + 2 {
        return Err(ChoosabilityError::Precondition(format!(
            "k = {k} is below the chromatic number p + 2 = {}; nothing is k-choosable there",
            p + 2
        )));
    }
    if k > p + a {
        return Ok(CriticalB::Unbounded);
    }
    let key = (p, a, k);
    if let Some(hit) = recall(key, cap) {
        return Ok(hit);
    }

    let plan = Plan::new(p, a, k);
    let total = canonical::count(plan.free, k as u32, plan.start_used);
    if total > budget.max_assignments as u128 {
        return Err(ChoosabilityError::BudgetExceeded {
            what: "the canonical W ∪ X enumeration",
            needed: format!("{total} assignments"),
            limit: budget.max_assignments,
            partial: None,
        });
    }

    let nodes = cover::NodeBudget::new(budget.max_cover_nodes);
    let global = AtomicU64::new(u64::MAX);
    let aborted = AtomicBool::new(false);
    let mut depth = 0;
    while depth < plan.free && canonical::count(depth, k as u32, plan.start_used) < 256 {
        depth += 1;
    }
    let units = canonical::prefixes(plan.fixed.clone(), plan.start_used, k as u32, depth);
    let n = plan.fixed.len() + plan.free;

    let results: Vec<Option<Found>> = units
        .into_par_iter()
        .map(|(prefix, used)| {
            let mut best: Option<Found> = None;
            let mut lists = prefix;
            canonical::for_each_completion(&mut lists, used, k as u32, n, &mut |lists| {
                if aborted.load(Ordering::Relaxed) {
                    return false;
                }
                let local = best.as_ref().map_or(u64::MAX, |f| f.value);
                let bound = local.min(global.load(Ordering::Relaxed).saturating_add(1)).min(cap.saturating_add(1));
                if bound == 0 {
                    return true;
                }
                let (w, x) = plan.split(lists);
                let ranges = core_range_masks(w, x);
                let cover = if plan.x_first {
                    // every range has size <= p + a = k, so each must be one of the Y-lists
                    (ranges.iter().all(|r| r.count_ones() as usize == k) && (ranges.len() as u64) < bound)
                        .then_some(ranges)
                } else {
                    match cover::min_cover(&ranges, k as u32, bound.min(usize::MAX as u64) as usize, &nodes) {
                        Ok(c) => c,
                        Err(cover::Exhausted) => {
                            aborted.store(true, Ordering::Relaxed);
                            return false;
                        }
                    }
                };
                if let Some(cover) = cover {
                    let value = cover.len() as u64;
                    global.fetch_min(value, Ordering::Relaxed);
                    best = Some(Found { value, lists: lists.to_vec(), cover });
                }
                true
            });
            best
        })
        .collect();

    if aborted.load(Ordering::Relaxed) {
        let partial = global.load(Ordering::Relaxed);
        return Err(ChoosabilityError::BudgetExceeded {
            what: "the minimum-cover search",
            needed: format!("more than {} nodes", nodes.used()),
            limit: budget.max_cover_nodes,
            partial: (partial != u64::MAX).then_some(partial),
        });
    }

    let assignments = total as u64;
    let best = results.into_iter().flatten().min_by_key(|f| f.value);
    let result = match best {
        Some(f) if f.value <= cap => {
            CriticalB::Exact { value: f.value, witness: plan.witness(&f.lists, &f.cover), assignments }
        }
        _ => CriticalB::AboveCap { cap, assignments },
    };
    remember(key, &result);
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessSource {
    /// `[k]` everywhere with `k < χ = p + 2`.
    ConstantLists,
    CoverSearch,
    Construction(ConstructionKind),
}

/// Why a verdict holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Certificate {
    /// Not choosable: these lists admit no proper coloring.
    BadAssignment { source: WitnessSource, witness: BadAssignment },
    /// Choosable: every canonical `W ∪ X` assignment needs more than `b` covering sets.
    Exhaustion { assignments: u64, least_cover: Option<u64> },
    /// Choosable: a closed-form range count exceeds `b`.
    RangeCount { rule: &'static str, threshold: u64 },
    /// Choosable: `k ≥ p + a + 1 ≥ χ_ℓ`.
    ListChromaticUpper { bound: usize },
    /// Choosable: `p ≥ a + b - 5` makes the graph chromatic-choosable.
    VertexCount { bound: u64 },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::BadAssignment { .. } => "bad-assignment",
            Certificate::Exhaustion { .. } => "exhaustion",
            Certificate::RangeCount { .. } => "range-count",
            Certificate::ListChromaticUpper { .. } => "list-chromatic-upper",
            Certificate::VertexCount { .. } => "vertex-count",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChoosabilityVerdict {
    pub p: usize,
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub choosable: bool,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecideOptions {
    /// Use closed-form thresholds and constructions before falling back to search.
    pub use_certificates: bool,
    pub budget: SearchBudget,
}

impl Default for DecideOptions {
    fn default() -> Self {
        Self { use_certificates: true, budget: SearchBudget::default() }
    }
}

impl DecideOptions {
    /// Exhaustive search only, apart from the `k < χ` and `k > p + a` cut-offs.
    pub fn search_only() -> Self {
        Self { use_certificates: false, budget: SearchBudget::default() }
    }
}

/// `b` below which a closed form certifies `(p + a)`-choosability, with its rule.
fn full_size_threshold(p: usize, a: usize) -> Option<(u64, &'static str)> {
    let k = (p + a) as u32;
    let count = arith::checked_pow(k as u128, a as u32).and_then(|v| u64::try_from(v).ok())?;
    if p == 1 && a >= 2 {
        let (_, hi) = bounds::tau_one_interval_by_side(a as u32);
        let t = u64::try_from(hi + 1u32).ok()?;
        return Some((t.max(count), "b < C(a+1, 2) (a+1)^(a-1)"));
    }
    Some((count, "b < (p+a)^a"))
}

/// A construction that applies to `(p, a, b, k)`, if any.
fn construction_for(p: usize, a: usize, b: usize, k: usize) -> Option<ConstructionSpec> {
    let (p32, a32, b64) = (p as u32, a as u32, b as u64);
    if b64 > MAX_CONSTRUCTION_B {
        return None;
    }
    let spec = if p == 0 && k == a {
        ConstructionSpec::folklore(a32, b64)
    } else if p >= 1 && k == p + a {
        ConstructionSpec::block_transversal(a32 - 2, p32 + 1, b64)
    } else if p >= 1 && k < p + a {
        ConstructionSpec::partition((k - p - 2) as u32, p32 + 1, a32, b64)
    } else {
        return None;
    };
    spec.derive().ok().map(|_| spec)
}

/// Whether `K_p ∨ K_{a,b}` is `k`-choosable, with a certificate.
pub fn decide(p: usize, a: usize, b: usize, k: usize, opts: &DecideOptions) -> Result<ChoosabilityVerdict, ChoosabilityError> {
    JoinGraph::new(p, a, b)?;
    let verdict = |choosable, certificate| Ok(ChoosabilityVerdict { p, a, b, k, choosable, certificate });
    if k < p + 2 {
        let list: Vec<Color> = (1..=k as Color).collect();
        let witness = BadAssignment { p, a, k, core: vec![list.clone(); p + a], cover: vec![list.clone()], pad: list };
        return verdict(false, Certificate::BadAssignment { source: WitnessSource::ConstantLists, witness });
    }
    if k > p + a {
        return verdict(true, Certificate::ListChromaticUpper { bound: p + a + 1 });
    }
    if opts.use_certificates {
        let vc = bounds::vertex_count_upper(a as u64, b as u64);
        if p as u64 >= vc {
            return verdict(true, Certificate::VertexCount { bound: vc });
        }
        if k == p + a {
            if let Some((threshold, rule)) = full_size_threshold(p, a) {
                if (b as u64) < threshold {
                    return verdict(true, Certificate::RangeCount { rule, threshold });
                }
            }
        }
        if let Some(spec) = construction_for(p, a, b, k) {
            let inst = crate::constructions::construct(&spec).map_err(|e| ChoosabilityError::Precondition(e.to_string()))?;
            let core = (0..p + a).map(|v| inst.lists.list(v).to_vec()).collect();
            let witness = BadAssignment {
                p,
                a,
                k,
                core,
                cover: inst.family.clone(),
                pad: (1..=k as Color).collect(),
            };
            return verdict(false, Certificate::BadAssignment { source: WitnessSource::Construction(spec.kind), witness });
        }
    }
    match critical_b(p, a, k, b as u64, &opts.budget)? {
        CriticalB::Exact { witness, .. } => {
            verdict(false, Certificate::BadAssignment { source: WitnessSource::CoverSearch, witness })
        }
        CriticalB::AboveCap { assignments, .. } => {
            verdict(true, Certificate::Exhaustion { assignments, least_cover: None })
        }
        CriticalB::Unbounded => verdict(true, Certificate::ListChromaticUpper { bound: p + a + 1 }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeficiencyReport {
    pub p: usize,
    pub a: usize,
    pub b: usize,
    pub list_chromatic: usize,
    pub deficiency: usize,
    /// One verdict per probed `k`, ascending from `p + 2`.
    pub probes: Vec<ChoosabilityVerdict>,
}

/// `χ_ℓ(K_p ∨ K_{a,b}) - (p + 2)`, probing `k = p+2, p+3, ...`; terminates by `k = p + a + 1`.
pub fn deficiency(p: usize, a: usize, b: usize, opts: &DecideOptions) -> Result<DeficiencyReport, ChoosabilityError> {
    let mut probes = Vec::new();
    for k in p + 2..=p + a + 1 {
        let v = decide(p, a, b, k, opts)?;
        let done = v.choosable;
        probes.push(v);
        if done {
            return Ok(DeficiencyReport { p, a, b, list_chromatic: k, deficiency: k - p - 2, probes });
        }
    }
    unreachable!("k = p + a + 1 is always choosable")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TauValue {
    Exact { value: u64 },
    /// The search was refused; bounds give `lo ≤ τ ≤ hi`.
    Interval { lo: u64, hi: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauReport {
    pub s: usize,
    pub a: usize,
    pub b: usize,
    pub value: TauValue,
    /// Decision at `k = p + 2 + s` for `p = 0, 1, ...` as far as the search got.
    pub probes: Vec<ChoosabilityVerdict>,
    pub refusal: Option<String>,
}

/// `τ_s(a,b)`: the least `p` with `K_p ∨ K_{a,b}` `(p + 2 + s)`-choosable.
///
/// Deficiency is non-increasing in `p`, so the first such `p` is the answer.
/// On a budget refusal the report falls back to the bounds interval.
pub fn tau_exact(s: usize, a: usize, b: usize, opts: &DecideOptions) -> Result<TauReport, ChoosabilityError> {
    if a == 0 || a > b {
        return Err(ChoosabilityError::Precondition(format!("need 1 <= a <= b (got a = {a}, b = {b})")));
    }
    let mut probes = Vec::new();
    for p in 0.. {
        match decide(p, a, b, p + 2 + s, opts) {
            Ok(v) => {
                let done = v.choosable;
                probes.push(v);
                if done {
                    return Ok(TauReport { s, a, b, value: TauValue::Exact { value: p as u64 }, probes, refusal: None });
                }
            }
            Err(e @ (ChoosabilityError::BudgetExceeded { .. } | ChoosabilityError::Precondition(_))) => {
                let w = bounds::sandwich(s as u32, a as u32, b as u64)
                    .map_err(|e| ChoosabilityError::Precondition(e.to_string()))?;
                let value = TauValue::Interval { lo: w.lower.max(p as u64), hi: w.upper };
                return Ok(TauReport { s, a, b, value, probes, refusal: Some(e.to_string()) });
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::find_proper_coloring;

    fn assert_uncolorable(w: &BadAssignment, b: usize) {
        let (g, la) = w.expand(b).unwrap();
        assert_eq!(la.uniform_size(), Some(w.k));
        assert_eq!(find_proper_coloring(&g, &la).unwrap(), None, "{w:?}");
    }

    #[test]
    fn critical_b_examples() {
        let budget = SearchBudget::default();
        for (p, a, k, cap, expect) in [(0, 2, 2, 10, 4), (0, 3, 3, 30, 27), (1, 2, 3, 20, 9), (0, 3, 2, 10, 3)] {
            let r = critical_b(p, a, k, cap, &budget).unwrap();
            assert_eq!(r.value(), Some(expect), "({p},{a},{k})");
            let CriticalB::Exact { witness, .. } = r else { unreachable!() };
            assert_eq!(witness.cover.len() as u64, expect);
            assert_uncolorable(&witness, expect as usize);
        }
    }

    #[test]
    fn critical_b_above_cap_and_unbounded() {
        let budget = SearchBudget::default();
        assert!(matches!(critical_b(1, 2, 3, 8, &budget).unwrap(), CriticalB::AboveCap { cap: 8, .. }));
        assert_eq!(critical_b(1, 2, 4, 100, &budget).unwrap(), CriticalB::Unbounded);
        assert!(critical_b(1, 2, 2, 100, &budget).is_err());
        assert!(critical_b(4, 5, 6, 100, &budget).is_err());
    }

    #[test]
    fn budget_refusal_is_explicit() {
        let tiny = SearchBudget { max_assignments: 10, max_cover_nodes: 10 };
        let err = critical_b(2, 3, 4, 100, &tiny).unwrap_err();
        assert!(matches!(err, ChoosabilityError::BudgetExceeded { partial: None, .. }), "{err}");
        assert!(err.to_string().starts_with("refused"));
    }

    #[test]
    fn decide_paths() {
        let opts = DecideOptions::default();
        let v = decide(0, 2, 3, 2, &opts).unwrap();
        assert!(v.choosable);
        let v = decide(0, 2, 4, 2, &opts).unwrap();
        assert!(!v.choosable);
        let Certificate::BadAssignment { witness, source } = v.certificate else { panic!() };
        assert_eq!(source, WitnessSource::Construction(ConstructionKind::Folklore));
        assert_uncolorable(&witness, 4);

        let v = decide(0, 2, 4, 2, &DecideOptions::search_only()).unwrap();
        let Certificate::BadAssignment { witness, source } = v.certificate else { panic!() };
        assert_eq!(source, WitnessSource::CoverSearch);
        assert_uncolorable(&witness, 4);

        let v = decide(1, 2, 8, 3, &opts).unwrap();
        assert!(v.choosable);
        assert_eq!(v.certificate.kind(), "range-count");
        let v = decide(1, 2, 8, 3, &DecideOptions::search_only()).unwrap();
        assert!(v.choosable);
        assert_eq!(v.certificate.kind(), "exhaustion");

        let v = decide(2, 2, 5, 1, &opts).unwrap();
        let Certificate::BadAssignment { witness, .. } = v.certificate else { panic!() };
        assert_uncolorable(&witness, 5);
    }

    #[test]
    fn deficiency_examples() {
        let opts = DecideOptions::default();
        assert_eq!(deficiency(0, 2, 4, &opts).unwrap().deficiency, 1);
        assert_eq!(deficiency(1, 2, 4, &opts).unwrap().deficiency, 0);
        assert_eq!(deficiency(0, 2, 3, &opts).unwrap().deficiency, 0);
    }

    #[test]
    fn tau_examples() {
        let opts = DecideOptions::search_only();
        for (s, a, b, expect) in [(0, 2, 3, 0), (0, 2, 5, 1), (0, 2, 9, 2)] {
            let r = tau_exact(s, a, b, &opts).unwrap();
            assert_eq!(r.value, TauValue::Exact { value: expect }, "({s},{a},{b})");
        }
    }

    #[test]
    fn tau_falls_back_to_bounds_on_refusal() {
        let tiny = DecideOptions { use_certificates: false, budget: SearchBudget { max_assignments: 1, max_cover_nodes: 1 } };
        let r = tau_exact(0, 4, 30, &tiny).unwrap();
        let TauValue::Interval { lo, hi } = r.value else { panic!("{r:?}") };
        assert!(lo <= hi);
        assert!(r.refusal.is_some());
    }
}
