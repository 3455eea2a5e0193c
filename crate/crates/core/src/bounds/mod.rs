//! Integer-exact evaluation of the closed-form bounds on `τ_s(a,b)`.
//!
//! Parameterization is the one used throughout the crate: `s` is the allowed
//! deficiency and the interesting small side is `a = s + 2`. The
//! `*_by_side` functions accept the small side directly instead.
//!
//! Binomials follow `C(n, k) = 0` for `k > n`.

pub mod arith;

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use thiserror::Error;

use arith::{binomial, checked_binomial, factorial, int_root_ceil, int_root_floor, pow};

/// Provenance tags carried by every [`BoundReport`].
pub mod tags {
    pub const TRIVIAL: &str = "trivial";
    pub const BASE_CASE: &str = "small-side-base-case";
    pub const VERTEX_COUNT: &str = "vertex-count-upper";
    pub const LEGACY_A2: &str = "legacy-a2-interval";
    pub const TRANSVERSAL: &str = "block-transversal-lower";
    pub const TRANSVERSAL_ROOT: &str = "block-transversal-root-lower";
    pub const PARTITION: &str = "partition-cover-lower";
    pub const RANGE_COUNT: &str = "range-count-upper";
    pub const A2_EXACT: &str = "a2-staircase-exact";
    pub const TAU_ONE: &str = "tau-one-interval";
    pub const CONJECTURED: &str = "conjectured-staircase";
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("partite sizes must satisfy 1 <= a <= b (got a = {a}, b = {b})")]
    BadQuery { a: u64, b: u64 },
    #[error("{0}")]
    Precondition(String),
}

/// An arbitrary-precision value that serializes as a JSON number when it fits in `u64`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Big(pub BigUint);

impl Serialize for Big {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl fmt::Display for Big {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for Big {
    fn from(v: u64) -> Self {
        Big(BigUint::from(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
    Interval,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BoundValue {
    #[serde(rename = "value")]
    Single(Big),
    #[serde(rename = "interval")]
    Interval([Big; 2]),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub expr: String,
    pub ok: bool,
}

/// A named bound. `value` is present only when every condition holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub name: &'static str,
    pub kind: BoundKind,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub value: Option<BoundValue>,
    pub valid: bool,
    pub conditions: Vec<Condition>,
}

impl BoundReport {
    fn new(name: &'static str, kind: BoundKind, conditions: Vec<Condition>, value: impl FnOnce() -> BoundValue) -> Self {
        let valid = conditions.iter().all(|c| c.ok);
        Self { name, kind, value: valid.then(value), valid, conditions }
    }

    /// Lower end of what this report says about `τ`, if it says anything.
    pub fn lower(&self) -> Option<u64> {
        match (&self.value, self.kind) {
            (Some(BoundValue::Single(v)), BoundKind::Lower | BoundKind::Exact) => v.0.to_u64(),
            (Some(BoundValue::Interval([lo, _])), BoundKind::Interval) => lo.0.to_u64(),
            _ => None,
        }
    }

    /// Upper end of what this report says about `τ`, if it says anything.
    pub fn upper(&self) -> Option<u64> {
        match (&self.value, self.kind) {
            (Some(BoundValue::Single(v)), BoundKind::Upper | BoundKind::Exact) => v.0.to_u64(),
            (Some(BoundValue::Interval([_, hi])), BoundKind::Interval) => hi.0.to_u64(),
            _ => None,
        }
    }
}

fn cond(expr: impl Into<String>, ok: bool) -> Condition {
    Condition { expr: expr.into(), ok }
}

/// `max{0, a + b - 5}`, from `|V(G)| ≤ 2χ(G) + 1` forcing chromatic-choosability.
pub fn vertex_count_upper(a: u64, b: u64) -> u64 {
    (a + b).saturating_sub(5)
}

/// The older `⌊√b⌋ - 1 ≤ τ_0(2,b) ≤ ⌈(-7 + √(8b + 17)) / 2⌉`, valid for `b ≥ 5`.
pub fn legacy_a2_interval(b: u64) -> BoundReport {
    BoundReport::new(tags::LEGACY_A2, BoundKind::Interval, vec![cond("b >= 5", b >= 5)], || {
        let lo = int_root_floor(&BigUint::from(b), 2) - 1u32;
        // ⌈(√m - 7)/2⌉ = ⌈(⌈√m⌉ - 7)/2⌉ because 2t + 7 is an integer
        let r = int_root_ceil(&BigUint::from(8 * b + 17), 2);
        let hi = (r - 7u32 + 1u32) / 2u32;
        BoundValue::Interval([Big(lo), Big(hi)])
    })
}

/// `C(l+s+1, l) (l+s+1)^{s+1}`: from this many `y` onward, the block-transversal
/// lists force `τ_s(s+2, b) ≥ l`.
pub fn transversal_threshold(s: u32, l: u32) -> BigUint {
    let k = (l + s + 1) as u64;
    binomial(k, l as u64) * pow(k, s + 1)
}

fn transversal_threshold_u128(s: u32, l: u32) -> Option<u128> {
    let k = (l + s + 1) as u64;
    checked_binomial(k, l as u64)?.checked_mul((k as u128).checked_pow(s + 1)?)
}

/// Largest `l` with `transversal_threshold(s, l) ≤ b` (the threshold is increasing in `l`).
pub fn transversal_lower(s: u32, b: u64) -> u64 {
    let mut l = 0;
    while transversal_threshold_u128(s, l + 1).is_some_and(|t| t <= b as u128) {
        l += 1;
    }
    l as u64
}

/// `⌊((s+1)! b)^{1/(2s+2)}⌋ - s - 1`, valid when `b ≥ s + 2` and `b ≥ (s+1)^{2s+2} / (s+1)!`.
pub fn transversal_root_lower(s: u32, b: u64) -> BoundReport {
    let fact = factorial(s as u64 + 1);
    let scaled = &fact * b;
    let need = pow(s as u64 + 1, 2 * s + 2);
    let conditions = vec![
        cond(format!("b >= s+2 = {}", s + 2), b >= s as u64 + 2),
        cond(format!("(s+1)! * b >= (s+1)^(2s+2) = {need}"), scaled >= need),
    ];
    BoundReport::new(tags::TRANSVERSAL_ROOT, BoundKind::Lower, conditions, || {
        let root = int_root_floor(&scaled, 2 * s + 2);
        BoundValue::Single(Big(root - (s + 1)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionBranch {
    /// `(a - s - 1)` divides `(l + s + 1)`.
    Divisible,
    /// It does not; `r` is the remainder.
    Remainder,
}

/// Derived parameters and threshold of the partition-cover construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionThreshold {
    pub branch: PartitionBranch,
    /// List size `l + s + 1`.
    pub k: u64,
    /// Number of partition blocks `a - s - 1`.
    pub blocks: u64,
    pub q: u64,
    pub r: u64,
    pub u: u64,
    pub threshold: Big,
}

/// Threshold on `b` from which the partition-cover lists force `τ_s(a,b) ≥ l`
/// (together with `b ≥ a`). Requires `l ≥ 2` and `a > s + 2`.
pub fn partition_threshold(s: u32, l: u32, a: u32) -> Result<PartitionThreshold, BoundsError> {
    if l < 2 {
        return Err(BoundsError::Precondition(format!("partition thresholds need l >= 2 (got {l})")));
    }
    if a <= s + 2 {
        return Err(BoundsError::Precondition(format!(
            "partition thresholds need a > s+2 (got a = {a}, s = {s}); use the block-transversal threshold"
        )));
    }
    let k = (l + s + 1) as u64;
    let blocks = (a - s - 1) as u64;
    let (q, r) = (k / blocks, k % blocks);
    let lead = pow(k, s);
    let base = binomial(k, l as u64 + 1);
    let per = binomial(k, l as u64);
    if r == 0 {
        let threshold = lead * (base + per * q);
        Ok(PartitionThreshold { branch: PartitionBranch::Divisible, k, blocks, q, r, u: 0, threshold: Big(threshold) })
    } else {
        let u = ((1 + q) * blocks - k) * q;
        let threshold = lead * (base + per * (q + 1) - binomial(u, l as u64));
        Ok(PartitionThreshold { branch: PartitionBranch::Remainder, k, blocks, q, r, u, threshold: Big(threshold) })
    }
}

fn partition_threshold_u128(s: u32, l: u32, a: u32) -> Option<u128> {
    let k = (l + s + 1) as u64;
    let blocks = (a - s - 1) as u64;
    let (q, r) = ((k / blocks) as u128, k % blocks);
    let lead = (k as u128).checked_pow(s)?;
    let base = checked_binomial(k, l as u64 + 1)?;
    let per = checked_binomial(k, l as u64)?;
    let inner = if r == 0 {
        base.checked_add(per.checked_mul(q)?)?
    } else {
        let u = ((1 + q as u64) * blocks - k) * q as u64;
        base.checked_add(per.checked_mul(q + 1)?)? - checked_binomial(u, l as u64)?
    };
    lead.checked_mul(inner)
}

/// Largest `l ≥ 2` whose partition threshold is at most `b`, if any
/// (the threshold is non-decreasing in `l`). Requires `a > s + 2`.
pub fn partition_lower(s: u32, a: u32, b: u64) -> Option<u64> {
    if a <= s + 2 || b < a as u64 {
        return None;
    }
    let fits = |l| partition_threshold_u128(s, l, a).is_some_and(|t| t <= b as u128);
    let mut l = 1;
    while fits(l + 1) {
        l += 1;
    }
    (l >= 2).then_some(l as u64)
}

/// The best `l - 1` such that `b ≤ (l+s+1)^{s+2} - 1`, an upper bound on `τ_s(s+2, b)`.
pub fn range_count_upper(s: u32, b: u64) -> u64 {
    let root = int_root_ceil(&BigUint::from(b as u128 + 1), s + 2).to_u64().expect("root of a u64 fits");
    let l = root.saturating_sub(s as u64 + 1).max(1);
    l - 1
}

/// `τ_0(2, b) = ⌊√b⌋ - 1` for `b ≥ 2`.
pub fn a2_exact(b: u64) -> Result<u64, BoundsError> {
    if b < 2 {
        return Err(BoundsError::Precondition(format!("the a = 2 staircase needs b >= 2 (got {b})")));
    }
    Ok(int_root_floor(&BigUint::from(b), 2).to_u64().expect("fits") - 1)
}

/// `[(s+2)^{s+2}, C(s+3,2)(s+3)^{s+1} - 1]`: exactly the `b` with `τ_s(s+2,b) = 1`.
pub fn tau_one_interval(s: u32) -> (BigUint, BigUint) {
    let lo = pow(s as u64 + 2, s + 2);
    let hi = binomial(s as u64 + 3, 2) * pow(s as u64 + 3, s + 1) - 1u32;
    (lo, hi)
}

/// Conjectured `b`-interval on which `τ_s(s+2, b) = l`:
/// `[transversal_threshold(s, l), transversal_threshold(s, l+1) - 1]`.
pub fn conjectured_interval(s: u32, l: u32) -> Result<(BigUint, BigUint), BoundsError> {
    if l < 1 {
        return Err(BoundsError::Precondition("conjectured intervals start at l = 1".into()));
    }
    Ok((transversal_threshold(s, l), transversal_threshold(s, l + 1) - 1u32))
}

/// [`range_count_upper`] indexed by the small side `a = s + 2` (`a ≥ 2`).
pub fn range_count_upper_by_side(a: u32, b: u64) -> u64 {
    assert!(a >= 2, "small side must be at least 2");
    range_count_upper(a - 2, b)
}

/// [`tau_one_interval`] indexed by the small side `a = s + 2`: `[a^a, C(a+1,2)(a+1)^{a-1} - 1]`.
pub fn tau_one_interval_by_side(a: u32) -> (BigUint, BigUint) {
    assert!(a >= 2, "small side must be at least 2");
    tau_one_interval(a - 2)
}

/// Every bound applicable to one `(s, a, b)`, with the best interval they imply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sandwich {
    pub s: u32,
    pub a: u32,
    pub b: u64,
    pub lower: u64,
    pub lower_by: Vec<&'static str>,
    pub upper: u64,
    pub upper_by: Vec<&'static str>,
    pub reports: Vec<BoundReport>,
}

impl Sandwich {
    pub fn exact(&self) -> Option<u64> {
        (self.lower == self.upper).then_some(self.lower)
    }

    pub fn is_consistent(&self) -> bool {
        self.lower <= self.upper
    }
}

/// Evaluates all bounds on `τ_s(a, b)` and intersects them.
pub fn sandwich(s: u32, a: u32, b: u64) -> Result<Sandwich, BoundsError> {
    if a == 0 || a as u64 > b {
        return Err(BoundsError::BadQuery { a: a as u64, b });
    }
    let single = |v: u64| move || BoundValue::Single(Big::from(v));
    let side_is = |want: u32| cond(format!("a = s+2 = {want}"), a == want);
    let mut reports = vec![BoundReport::new(tags::TRIVIAL, BoundKind::Lower, vec![], single(0))];

    if a <= s + 1 {
        reports.push(BoundReport::new(tags::BASE_CASE, BoundKind::Exact, vec![cond("a <= s+1", true)], single(0)));
    } else if a == s + 2 {
        let cutoff = pow(s as u64 + 2, s + 2);
        let below = BigUint::from(b) < cutoff;
        let (kind, v) = if below { (BoundKind::Exact, 0) } else { (BoundKind::Lower, 1) };
        reports.push(BoundReport::new(tags::BASE_CASE, kind, vec![side_is(s + 2)], single(v)));
    }

    reports.push(BoundReport::new(tags::VERTEX_COUNT, BoundKind::Upper, vec![], single(vertex_count_upper(a as u64, b))));

    let on_diagonal = a == s + 2;
    reports.push(BoundReport::new(tags::TRANSVERSAL, BoundKind::Lower, vec![side_is(s + 2)], || {
        BoundValue::Single(Big::from(transversal_lower(s, b)))
    }));
    let mut root = transversal_root_lower(s, b);
    root.conditions.insert(0, side_is(s + 2));
    if !on_diagonal {
        root.valid = false;
        root.value = None;
    }
    reports.push(root);
    reports.push(BoundReport::new(tags::RANGE_COUNT, BoundKind::Upper, vec![side_is(s + 2)], || {
        BoundValue::Single(Big::from(range_count_upper(s, b)))
    }));
    let (lo1, hi1) = tau_one_interval(s);
    let inside = BigUint::from(b) >= lo1 && BigUint::from(b) <= hi1;
    reports.push(BoundReport::new(
        tags::TAU_ONE,
        BoundKind::Exact,
        vec![side_is(s + 2), cond(format!("{lo1} <= b <= {hi1}"), inside)],
        single(1),
    ));

    let partition = partition_lower(s, a, b);
    reports.push(BoundReport::new(
        tags::PARTITION,
        BoundKind::Lower,
        vec![
            cond(format!("a > s+2 = {}", s + 2), a > s + 2),
            cond(format!("b >= a = {a}"), b >= a as u64),
            cond("some l >= 2 has threshold <= b", partition.is_some()),
        ],
        || BoundValue::Single(Big::from(partition.expect("checked"))),
    ));

    if s == 0 && a == 2 {
        reports.push(legacy_a2_interval(b));
        let exact = a2_exact(b);
        reports.push(BoundReport::new(tags::A2_EXACT, BoundKind::Exact, vec![cond("b >= 2", exact.is_ok())], || {
            BoundValue::Single(Big::from(exact.clone().expect("checked")))
        }));
    }

    let lower = reports.iter().filter_map(BoundReport::lower).max().unwrap_or(0);
    let upper = reports.iter().filter_map(BoundReport::upper).min().expect("vertex-count bound always applies");
    let lower_by = reports.iter().filter(|r| r.lower() == Some(lower)).map(|r| r.name).collect();
    let upper_by = reports.iter().filter(|r| r.upper() == Some(upper)).map(|r| r.name).collect();
    Ok(Sandwich { s, a, b, lower, lower_by, upper, upper_by, reports })
}
