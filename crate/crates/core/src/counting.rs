//! Brute-force checks of the counting inequalities behind the upper bounds:
//! the weighted product minimum, the range-count lower bound for disjoint
//! lists, and its sharper form on stars.
//!
//! Ranges are always counted exactly by enumerating proper colorings.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::engine::{enumerate_ranges, EngineError};
use crate::model::{Adjacency, Color, GenericGraph, ListAssignment, Vertex};

/// Seed used when a caller does not pick one.
pub const DEFAULT_SEED: u64 = 1729;

pub const LEMMA_WEIGHTED: &str = "weighted-product-minimum";
pub const LEMMA_DISJOINT: &str = "disjoint-lists-range-count";
pub const LEMMA_STAR: &str = "star-range-count";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountingError {
    #[error("precondition violated: {}", .0.join("; "))]
    Preconditions(Vec<String>),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

fn require(failures: Vec<String>) -> Result<(), CountingError> {
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CountingError::Preconditions(failures))
    }
}

/// One checked inequality `lhs relation rhs`; serializes as a JSON line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: &'static str,
    pub instance: Value,
    pub lhs: u64,
    pub relation: &'static str,
    pub rhs: u64,
    pub ok: bool,
    pub seed: Option<u64>,
}

impl LemmaReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// `d` with `d_1 ≤ d_i`, and `0 ≤ l ≤ d_1 - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedTuple {
    d: Vec<u64>,
    l: u64,
}

impl WeightedTuple {
    pub fn new(d: Vec<u64>, l: u64) -> Result<Self, CountingError> {
        let mut bad = Vec::new();
        if d.len() < 2 {
            bad.push(format!("need k >= 2 entries (got {})", d.len()));
        }
        if d.iter().any(|&x| x == 0) {
            bad.push("entries must be positive".into());
        }
        if let Some(&d1) = d.first() {
            if d.iter().any(|&x| x < d1) {
                bad.push("d_1 must be the smallest entry".into());
            }
            if l + 1 > d1 {
                bad.push(format!("need l <= d_1 - 1 = {} (got l = {l})", d1.saturating_sub(1)));
            }
        }
        require(bad)?;
        Ok(Self { d, l })
    }

    pub fn d(&self) -> &[u64] {
        &self.d
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// `(d_1 - l) ∏_{i ≥ 2} d_i`.
    pub fn closed_form(&self) -> u64 {
        (self.d[0] - self.l) * self.d[1..].iter().product::<u64>()
    }
}

/// Nonnegative integer vectors of length `k` summing to `l`.
fn compositions(l: u64, k: usize) -> Vec<Vec<u64>> {
    if k == 1 {
        return vec![vec![l]];
    }
    (0..=l)
        .flat_map(|first| {
            compositions(l - first, k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedMinimum {
    pub min: u64,
    pub argmin: Vec<u64>,
    pub closed_form: u64,
}

/// Exact minimum of `∏ (d_i - a_i)` over all `a ≥ 0` with `Σ a_i = l`.
pub fn min_weighted_product(t: &WeightedTuple) -> WeightedMinimum {
    let (min, argmin) = compositions(t.l, t.d.len())
        .into_iter()
        .map(|a| (t.d.iter().zip(&a).map(|(d, a)| d - a).product::<u64>(), a))
        .min_by(|x, y| x.0.cmp(&y.0))
        .expect("at least one composition");
    WeightedMinimum { min, argmin, closed_form: t.closed_form() }
}

pub fn check_weighted(t: &WeightedTuple) -> LemmaReport {
    let m = min_weighted_product(t);
    LemmaReport {
        lemma: LEMMA_WEIGHTED,
        instance: json!({ "d": t.d, "l": t.l, "argmin": m.argmin }),
        lhs: m.closed_form,
        relation: "<=",
        rhs: m.min,
        ok: m.closed_form <= m.min,
        seed: None,
    }
}

impl LemmaReport {
    fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }
}

/// Every tuple with `2 ≤ k ≤ max_k`, `1 ≤ d_i ≤ max_d`, `d_1` minimal, and every valid `l`.
pub fn weighted_sweep(max_k: usize, max_d: u64) -> Vec<LemmaReport> {
    let mut out = Vec::new();
    for k in 2..=max_k {
        for d in (0..k).map(|_| 1..=max_d).multi_cartesian_product() {
            if d.iter().any(|&x| x < d[0]) {
                continue;
            }
            for l in 0..d[0] {
                let t = WeightedTuple::new(d.clone(), l).expect("sweep stays within the invariants");
                out.push(check_weighted(&t));
            }
        }
    }
    out
}

/// `|𝓡(G, L)| ≥ ∏ |L(x_i)|` for pairwise-disjoint lists on an independent `x_set`.
pub fn check_disjoint_lists(g: &GenericGraph, x_set: &[Vertex], lists: &ListAssignment) -> Result<LemmaReport, CountingError> {
    let n = g.order();
    let s = x_set.len();
    let mut bad = Vec::new();
    if n < 2 {
        bad.push(format!("need n >= 2 vertices (got {n})"));
    }
    if n > 8 {
        bad.push(format!("exhaustive counting is limited to 8 vertices (got {n})"));
    }
    if s < 2 || s > n {
        bad.push(format!("need 2 <= s <= n (got s = {s}, n = {n})"));
    }
    if lists.len() != n {
        bad.push(format!("need one list per vertex ({} lists for {n} vertices)", lists.len()));
    }
    if x_set.iter().any(|&x| x >= n) || x_set.iter().duplicates().next().is_some() {
        bad.push("x_set must be distinct vertices of the graph".into());
    } else if x_set.iter().tuple_combinations().any(|(&u, &v)| g.adjacent(u, v)) {
        bad.push("x_set must be independent".into());
    }
    if lists.len() == n {
        if let Some(v) = (0..n).find(|&v| lists.list(v).len() < n) {
            bad.push(format!("every list needs at least n = {n} colors (vertex {v} has {})", lists.list(v).len()));
        }
        let xs_ok = x_set.iter().all(|&x| x < n);
        if xs_ok
            && x_set
                .iter()
                .tuple_combinations()
                .any(|(&u, &v)| lists.list(u).iter().any(|c| lists.list(v).binary_search(c).is_ok()))
        {
            bad.push("lists on x_set must be pairwise disjoint".into());
        }
    }
    require(bad)?;
    let count = enumerate_ranges(g, lists)?.len() as u64;
    let product: u64 = x_set.iter().map(|&x| lists.list(x).len() as u64).product();
    Ok(LemmaReport {
        lemma: LEMMA_DISJOINT,
        instance: json!({ "n": n, "edges": g.edges(), "x_set": x_set, "lists": lists.lists() }),
        lhs: count,
        relation: ">=",
        rhs: product,
        ok: count >= product,
        seed: None,
    })
}

/// `C(s+1, 2) (s+1)^{s-1}`.
pub fn star_bound(s: u32) -> u64 {
    let k = s as u64 + 1;
    k * s as u64 / 2 * k.pow(s - 1)
}

fn star(s: usize) -> GenericGraph {
    let edges: Vec<_> = (1..=s).map(|i| (0, i)).collect();
    GenericGraph::from_edges(s + 1, &edges).expect("stars are small")
}

/// `|𝓡(K_{1,s}, L)| ≥ C(s+1, 2)(s+1)^{s-1}` for an `(s+1)`-assignment with
/// pairwise-disjoint leaf lists. Vertex 0 is the center.
pub fn check_star(s: usize, lists: &ListAssignment) -> Result<LemmaReport, CountingError> {
    let mut bad = Vec::new();
    if !(2..=5).contains(&s) {
        bad.push(format!("need 2 <= s <= 5 (got {s})"));
    }
    if lists.len() != s + 1 {
        bad.push(format!("need s+1 = {} lists (got {})", s + 1, lists.len()));
    } else {
        if lists.uniform_size() != Some(s + 1) {
            bad.push(format!("lists must all have s+1 = {} colors", s + 1));
        }
        if (1..=s).tuple_combinations().any(|(u, v)| lists.list(u).iter().any(|c| lists.list(v).binary_search(c).is_ok())) {
            bad.push("leaf lists must be pairwise disjoint".into());
        }
    }
    require(bad)?;
    let count = enumerate_ranges(&star(s), lists)?.len() as u64;
    let bound = star_bound(s as u32);
    Ok(LemmaReport {
        lemma: LEMMA_STAR,
        instance: json!({ "s": s, "center": lists.list(0), "leaves": &lists.lists()[1..] }),
        lhs: count,
        relation: ">=",
        rhs: bound,
        ok: count >= bound,
        seed: None,
    })
}

fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_subset(rng: &mut ChaCha8Rng, universe: &[Color], size: usize) -> Vec<Color> {
    universe.choose_multiple(rng, size).copied().collect()
}

/// A random valid instance for [`check_disjoint_lists`] with `n ≤ max_n` and `|x_set| = s`.
pub fn random_disjoint_instance(rng: &mut ChaCha8Rng, s: usize, max_n: usize) -> (GenericGraph, Vec<Vertex>, ListAssignment) {
    let n = rng.gen_range(s.max(2)..=max_n);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut x_set: Vec<Vertex> = order[..s].to_vec();
    x_set.sort_unstable();
    let mut edges = Vec::new();
    for (u, v) in (0..n).tuple_combinations() {
        if !(x_set.contains(&u) && x_set.contains(&v)) && rng.gen_bool(0.5) {
            edges.push((u, v));
        }
    }
    let g = GenericGraph::from_edges(n, &edges).expect("n <= 8");
    // list sizes n or n + 1; one shared universe so non-x lists overlap the x lists
    let size = |rng: &mut ChaCha8Rng| n + usize::from(n <= 5 && rng.gen_bool(0.3));
    let universe: Vec<Color> = (1..=(s * (n + 1) + 3) as Color).collect();
    let mut pool = universe.clone();
    pool.shuffle(rng);
    let mut lists = vec![Vec::new(); n];
    for &x in &x_set {
        let m = size(rng);
        lists[x] = pool.drain(..m).collect();
    }
    for v in (0..n).filter(|v| !x_set.contains(v)) {
        let m = size(rng);
        lists[v] = random_subset(rng, &universe, m);
    }
    (g, x_set, ListAssignment::new(lists).expect("lists are nonempty"))
}

/// A random `(s+1)`-assignment on `K_{1,s}` with pairwise-disjoint leaf lists.
pub fn random_star_instance(rng: &mut ChaCha8Rng, s: usize) -> ListAssignment {
    let k = s + 1;
    let universe: Vec<Color> = (1..=(s * k + k) as Color).collect();
    let mut pool = universe.clone();
    pool.shuffle(rng);
    let mut lists = vec![random_subset(rng, &universe, k)];
    for _ in 0..s {
        lists.push(pool.drain(..k).collect());
    }
    ListAssignment::new(lists).expect("lists are nonempty")
}

/// `count` seeded instances of the disjoint-lists inequality, `|x_set|` alternating over `s_values`.
pub fn disjoint_lists_property(count: usize, s_values: &[usize], max_n: usize, seed: u64) -> Result<Vec<LemmaReport>, CountingError> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(seed, i as u64);
            let s = s_values[i % s_values.len()];
            let (g, xs, la) = random_disjoint_instance(&mut rng, s, max_n);
            let mut r = check_disjoint_lists(&g, &xs, &la)?;
            r.instance["index"] = json!(i);
            Ok(r.with_seed(Some(seed)))
        })
        .collect()
}

/// `count` seeded star instances for one `s`.
pub fn star_property(count: usize, s: usize, seed: u64) -> Result<Vec<LemmaReport>, CountingError> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(seed ^ (s as u64) << 32, i as u64);
            let la = random_star_instance(&mut rng, s);
            let mut r = check_star(s, &la)?;
            r.instance["index"] = json!(i);
            Ok(r.with_seed(Some(seed)))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightnessReport {
    pub s: usize,
    pub bound: u64,
    pub min_count: u64,
    pub attained: bool,
    /// Center list first, then the leaves.
    pub witness: Vec<Vec<Color>>,
    pub centers_tried: usize,
}

/// Smallest star range count over every center list, with leaves fixed to
/// the blocks `[1 : s+1], [s+2 : 2s+2], ...` (any disjoint leaves rename to these).
pub fn star_tightness(s: usize) -> Result<TightnessReport, CountingError> {
    let k = s + 1;
    let leaves: Vec<Vec<Color>> = (0..s).map(|j| ((j * k + 1) as Color..=((j + 1) * k) as Color).collect()).collect();
    // colors outside the leaves are interchangeable, so s+1 of them suffice
    let universe: Vec<Color> = (1..=(s * k + k) as Color).collect();
    let centers: Vec<Vec<Color>> = universe.iter().copied().combinations(k).collect();
    let counts: Vec<u64> = centers
        .par_iter()
        .map(|c| {
            let mut lists = vec![c.clone()];
            lists.extend(leaves.iter().cloned());
            let la = ListAssignment::new(lists).expect("nonempty");
            Ok(enumerate_ranges(&star(s), &la)?.len() as u64)
        })
        .collect::<Result<_, CountingError>>()?;
    let (i, &min_count) = counts.iter().enumerate().min_by_key(|(i, c)| (**c, *i)).expect("some center");
    let bound = star_bound(s as u32);
    let mut witness = vec![centers[i].clone()];
    witness.extend(leaves);
    Ok(TightnessReport { s, bound, min_count, attained: min_count == bound, witness, centers_tried: centers.len() })
}
