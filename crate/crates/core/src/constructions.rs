//! The adversarial list assignments that force `τ_s(a,b) ≥ l`, generated
//! verbatim with 1-based colors, and their verification.
//!
//! Every construction lives on `K_{l-1} ∨ K_{a,b}` with `k = l + s + 1`.
//! The family `C` of covering lists is materialized in lexicographic order
//! of its index tuples; `y_i` gets `C_i` and any `y` beyond `|C|` gets `[k]`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, arith};
use crate::engine::{is_colorable_join_fast, EngineError};
use crate::model::{Adjacency, Color, JoinGraph, ListAssignment};

/// Largest `b` a construction will materialize.
pub const MAX_CONSTRUCTION_B: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    /// `K_{k,t}` with `k` disjoint `X`-lists and every transversal on `Y`.
    Folklore,
    /// `K_{l-1} ∨ K_{s+2,b}`.
    BlockTransversal,
    /// `K_{l-1} ∨ K_{a,b}`, `a > s+2`, `(a-s-1) | (l+s+1)`.
    PartitionDivisible,
    /// `K_{l-1} ∨ K_{a,b}`, `a > s+2`, `(a-s-1) ∤ (l+s+1)`.
    PartitionRemainder,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 4] = [
        ConstructionKind::Folklore,
        ConstructionKind::BlockTransversal,
        ConstructionKind::PartitionDivisible,
        ConstructionKind::PartitionRemainder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::Folklore => "folklore",
            ConstructionKind::BlockTransversal => "block-transversal",
            ConstructionKind::PartitionDivisible => "partition-divisible",
            ConstructionKind::PartitionRemainder => "partition-remainder",
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = String;

    /// Accepts the kebab-case names and the short aliases `1`, `4`, `6`, `7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "folklore" | "1" => Ok(ConstructionKind::Folklore),
            "block-transversal" | "4" => Ok(ConstructionKind::BlockTransversal),
            "partition-divisible" | "6" => Ok(ConstructionKind::PartitionDivisible),
            "partition-remainder" | "7" => Ok(ConstructionKind::PartitionRemainder),
            _ => Err(format!(
                "unknown construction '{s}' (expected folklore, block-transversal, partition-divisible, partition-remainder or 1/4/6/7)"
            )),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("{0}")]
    Parameter(String),
    #[error("b = {b} is below the threshold {threshold} ({rule})")]
    BelowThreshold { b: u64, threshold: BigUint, rule: String },
    #[error("{0}")]
    WrongBranch(String),
    #[error("b = {b} exceeds the materialization limit {limit}")]
    TooLarge { b: u64, limit: u64 },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Parameters of one construction. The folklore instance `(k, t)` is stored
/// as `s = k - 2`, `l = 1`, `a = k`, `b = t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    pub s: u32,
    pub l: u32,
    pub a: u32,
    pub b: u64,
}

/// Quantities derived from a [`ConstructionSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derived {
    pub k: u32,
    /// Number of clique vertices, `l - 1`.
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub u: u32,
    pub h: u32,
    /// Closed-form `|C|`, which is also the least admissible `b`.
    #[serde(serialize_with = "big_as_number")]
    pub family_size: BigUint,
}

fn big_as_number<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    bounds::Big(v.clone()).serialize(s)
}

impl ConstructionSpec {
    pub fn folklore(k: u32, t: u64) -> Self {
        Self { kind: ConstructionKind::Folklore, s: k.saturating_sub(2), l: 1, a: k, b: t }
    }

    pub fn block_transversal(s: u32, l: u32, b: u64) -> Self {
        Self { kind: ConstructionKind::BlockTransversal, s, l, a: s + 2, b }
    }

    pub fn partition(s: u32, l: u32, a: u32, b: u64) -> Self {
        let kind = if a > s + 1 && (l + s + 1) % (a - s - 1) == 0 {
            ConstructionKind::PartitionDivisible
        } else {
            ConstructionKind::PartitionRemainder
        };
        Self { kind, s, l, a, b }
    }

    /// Checks every precondition and returns the derived quantities.
    pub fn derive(&self) -> Result<Derived, ConstructionError> {
        let &Self { kind, s, l, a, b } = self;
        let bad = |m: String| Err(ConstructionError::Parameter(m));
        let k = l + s + 1;
        let h = (s + 1) * k;
        let (q, r, u, family_size, rule) = match kind {
            ConstructionKind::Folklore => {
                if a < 2 {
                    return bad(format!("the folklore construction needs k >= 2 (got k = {a})"));
                }
                (0, 0, 0, arith::pow(a as u64, a), "t >= k^k".to_string())
            }
            ConstructionKind::BlockTransversal => {
                if l < 2 {
                    return bad(format!("block-transversal needs l >= 2 (got l = {l})"));
                }
                if a != s + 2 {
                    return bad(format!("block-transversal needs a = s+2 = {} (got a = {a})", s + 2));
                }
                (0, 0, 0, bounds::transversal_threshold(s, l), "b >= C(l+s+1, l) (l+s+1)^(s+1)".to_string())
            }
            ConstructionKind::PartitionDivisible | ConstructionKind::PartitionRemainder => {
                if l < 2 {
                    return bad(format!("partition constructions need l >= 2 (got l = {l})"));
                }
                if a <= s + 2 {
                    return bad(format!(
                        "partition constructions need a > s+2 = {} (got a = {a}); use block-transversal",
                        s + 2
                    ));
                }
                let m = a - s - 1;
                let divisible = k % m == 0;
                match (kind, divisible) {
                    (ConstructionKind::PartitionDivisible, false) => {
                        return Err(ConstructionError::WrongBranch(format!(
                            "a-s-1 = {m} does not divide l+s+1 = {k}; use partition-remainder"
                        )))
                    }
                    (ConstructionKind::PartitionRemainder, true) => {
                        return Err(ConstructionError::WrongBranch(format!(
                            "a-s-1 = {m} divides l+s+1 = {k}; use partition-divisible"
                        )))
                    }
                    _ => {}
                }
                if b < a as u64 {
                    return Err(ConstructionError::BelowThreshold {
                        b,
                        threshold: BigUint::from(a),
                        rule: "b >= a".into(),
                    });
                }
                let t = bounds::partition_threshold(s, l, a).map_err(|e| ConstructionError::Parameter(e.to_string()))?;
                let r = t.r as u32;
                if !divisible && !(0 < r && r <= a - s - 2) {
                    return bad(format!("remainder r = {r} outside 0 < r <= a-s-2 = {}", a - s - 2));
                }
                let rule = if divisible {
                    "b >= k^s (C(k, l+1) + C(k, l) q)"
                } else {
                    "b >= k^s (C(k, l+1) + C(k, l) (q+1) - C(u, l))"
                };
                (t.q as u32, r, t.u as u32, t.threshold.0, rule.to_string())
            }
        };
        check_b(b, &family_size, &rule)?;
        Ok(Derived { k, p: l - 1, q, r, u, h, family_size })
    }
}

fn check_b(b: u64, threshold: &BigUint, rule: &str) -> Result<(), ConstructionError> {
    if BigUint::from(b) < *threshold {
        return Err(ConstructionError::BelowThreshold { b, threshold: threshold.clone(), rule: rule.into() });
    }
    if b > MAX_CONSTRUCTION_B {
        return Err(ConstructionError::TooLarge { b, limit: MAX_CONSTRUCTION_B });
    }
    Ok(())
}

/// A generated instance: the graph, the full list assignment and the family `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub spec: ConstructionSpec,
    pub derived: Derived,
    pub graph: JoinGraph,
    pub lists: ListAssignment,
    /// `C_1, C_2, ...` in the order assigned to `y_1, y_2, ...`.
    pub family: Vec<Vec<Color>>,
}

/// `[lo : hi]`, inclusive.
fn span(lo: u32, hi: u32) -> Vec<Color> {
    (lo..=hi).collect()
}

fn union(parts: &[&[Color]]) -> Vec<Color> {
    let mut v: Vec<Color> = parts.concat();
    v.sort_unstable();
    v.dedup();
    v
}

/// `𝒥`: one color from each block `[jk+1 : (j+1)k]`, `j ∈ [s]`; `{∅}` when `s = 0`.
fn block_choices(s: u32, k: u32) -> Vec<Vec<Color>> {
    if s == 0 {
        return vec![Vec::new()];
    }
    (1..=s).map(|j| span(j * k + 1, (j + 1) * k)).multi_cartesian_product().collect()
}

pub fn construct(spec: &ConstructionSpec) -> Result<Instance, ConstructionError> {
    let d = spec.derive()?;
    let ConstructionSpec { kind, s, l, a, b } = *spec;
    let k = d.k;
    let base = span(1, k);

    let mut core: Vec<Vec<Color>> = Vec::new();
    let family: Vec<Vec<Color>> = match kind {
        ConstructionKind::Folklore => {
            let xs: Vec<Vec<Color>> = (0..a).map(|j| span(j * a + 1, (j + 1) * a)).collect();
            core.extend(xs.iter().cloned());
            xs.into_iter().multi_cartesian_product().collect()
        }
        ConstructionKind::BlockTransversal => {
            core.extend(std::iter::repeat(base.clone()).take(d.p as usize));
            let blocks: Vec<Vec<Color>> = (1..=s + 1).map(|j| span(j * k + 1, (j + 1) * k)).collect();
            core.extend(blocks.iter().cloned());
            core.push(base.clone());
            let mut family = Vec::new();
            for i in base.iter().copied().combinations(l as usize) {
                for cs in blocks.iter().cloned().multi_cartesian_product() {
                    family.push(union(&[&i, &cs]));
                }
            }
            family
        }
        ConstructionKind::PartitionDivisible | ConstructionKind::PartitionRemainder => {
            let m = a - s - 1;
            let (q, r, h) = (d.q, d.r, d.h);
            // r blocks of size q + 1, then m - r blocks of size q
            let mut parts: Vec<Vec<Color>> = Vec::with_capacity(m as usize);
            let mut next = 1;
            for i in 0..m {
                let size = if i < r { q + 1 } else { q };
                parts.push((next..next + size).collect());
                next += size;
            }
            debug_assert_eq!(next, k + 1);
            core.extend(std::iter::repeat(base.clone()).take(d.p as usize));
            for (i, part) in parts.iter().enumerate() {
                let tail_len = if (i as u32) < r { q + 1 } else { q };
                let rest: Vec<Color> = base.iter().copied().filter(|c| !part.contains(c)).collect();
                core.push(union(&[&rest, &span(h + 1, h + tail_len)]));
            }
            for j in 1..=s {
                core.push(span(j * k + 1, (j + 1) * k));
            }
            core.push(base.clone());

            let js = block_choices(s, k);
            let tail = span(h + 1, h + q + if kind == ConstructionKind::PartitionRemainder { 1 } else { 0 });
            let late: BTreeSet<Color> = parts[r as usize..].iter().flatten().copied().collect();
            let mut family = Vec::new();
            for i in base.iter().copied().combinations(l as usize) {
                let in_late = i.iter().all(|c| late.contains(c));
                for j in &js {
                    for &t in &tail {
                        // T_1 = {I ∪ {h+q+1} : I ⊆ late blocks} is excluded
                        if kind == ConstructionKind::PartitionRemainder && t == h + q + 1 && in_late {
                            continue;
                        }
                        family.push(union(&[&i, j, &[t]]));
                    }
                }
            }
            for i in base.iter().copied().combinations(l as usize + 1) {
                for j in &js {
                    family.push(union(&[&i, j]));
                }
            }
            family
        }
    };

    let graph = JoinGraph::new(d.p as usize, a as usize, b as usize).map_err(EngineError::from)?;
    let mut lists = core;
    lists.extend(family.iter().cloned());
    lists.truncate(graph.order());
    while lists.len() < graph.order() {
        lists.push(base.clone());
    }
    let lists = ListAssignment::new(lists).map_err(EngineError::from)?;
    Ok(Instance { spec: *spec, derived: d, graph, lists, family })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

/// Outcome of [`verify_construction`]; `passed` iff every clause holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub spec: ConstructionSpec,
    pub k: u32,
    pub family_size: usize,
    pub closed_form: String,
    pub core_ranges: usize,
    pub colorable: bool,
    pub clauses: Vec<Clause>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn failed(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.ok)
    }
}

/// Generates the instance, checks its structure and asks the fast path whether it is colorable.
pub fn verify_construction(spec: &ConstructionSpec) -> Result<VerificationReport, ConstructionError> {
    let inst = construct(spec)?;
    verify_instance(&inst)
}

pub fn verify_instance(inst: &Instance) -> Result<VerificationReport, ConstructionError> {
    let d = &inst.derived;
    let k = d.k as usize;
    let mut clauses = Vec::new();
    let mut clause = |name: &str, ok: bool, detail: String| clauses.push(Clause { name: name.into(), ok, detail });

    let distinct: BTreeSet<&Vec<Color>> = inst.family.iter().collect();
    let closed = d.family_size.to_usize();
    clause(
        "family size equals closed form",
        closed == Some(distinct.len()) && distinct.len() == inst.family.len(),
        format!("|C| = {} ({} listed), closed form {}", distinct.len(), inst.family.len(), d.family_size),
    );
    let sizes_ok = inst.lists.lists().iter().all(|l| l.len() == k) && inst.family.iter().all(|c| c.len() == k);
    clause("all lists have size k", sizes_ok, format!("k = {k}"));

    if matches!(inst.spec.kind, ConstructionKind::PartitionDivisible | ConstructionKind::PartitionRemainder) {
        let g = &inst.graph;
        let m = (inst.spec.a - inst.spec.s - 1) as usize;
        let xs: Vec<&[Color]> = g.small_side().take(m).map(|v| inst.lists.list(v)).collect();
        // [k] minus each list's low part gives the P_j, which must partition [k];
        // with q = 0 the last parts are empty and those lists coincide with [k]
        let mut seen: Vec<Color> =
            xs.iter().flat_map(|x| (1..=d.k).filter(|c| !x.contains(c)).collect_vec()).collect();
        seen.sort_unstable();
        let tails_ok = xs.iter().all(|x| x.iter().all(|&c| c <= d.k || (c > d.h && c <= d.h + d.q + 1)));
        clause(
            "partition structure",
            seen == (1..=d.k).collect_vec() && tails_ok,
            "complements in [k] partition [k]; extra colors lie in [h+1 : h+q+1]".into(),
        );
        if inst.spec.kind == ConstructionKind::PartitionRemainder {
            let range = 0 < d.r && d.r + inst.spec.s + 2 <= inst.spec.a;
            clause("0 < r <= a-s-2", range, format!("r = {}", d.r));
        }
    }

    let verdict = is_colorable_join_fast(&inst.graph, &inst.lists)?;
    clause(
        "engine confirms uncolorable",
        !verdict.colorable,
        format!("{} core ranges, {} y-vertices", verdict.core_ranges, inst.graph.b()),
    );
    let passed = clauses.iter().all(|c| c.ok);
    Ok(VerificationReport {
        spec: inst.spec,
        k: d.k,
        family_size: distinct.len(),
        closed_form: d.family_size.to_string(),
        core_ranges: verdict.core_ranges,
        colorable: verdict.colorable,
        clauses,
        passed,
    })
}

/// The instance with `y_{|C|}` (its last constructed list) dropped and no padding.
pub fn drop_last_family_member(inst: &Instance) -> Result<(JoinGraph, ListAssignment), ConstructionError> {
    let c = inst.family.len();
    let g = JoinGraph::new(inst.graph.p(), inst.graph.a(), c - 1).map_err(EngineError::from)?;
    let keep: Vec<usize> = (0..g.order()).collect();
    Ok((g, inst.lists.restrict(&keep)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify(spec: ConstructionSpec) -> VerificationReport {
        let r = verify_construction(&spec).unwrap();
        assert!(r.passed, "{:?}", r.failed().collect_vec());
        r
    }

    #[test]
    fn folklore_instances() {
        let inst = construct(&ConstructionSpec::folklore(2, 4)).unwrap();
        assert_eq!(inst.lists.list(0), &[1, 2]);
        assert_eq!(inst.lists.list(1), &[3, 4]);
        assert_eq!(inst.family, vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]);
        verify(ConstructionSpec::folklore(2, 4));
        let five = construct(&ConstructionSpec::folklore(2, 5)).unwrap();
        assert_eq!(five.lists.list(6), &[1, 2]);
        verify(ConstructionSpec::folklore(2, 5));
        assert_eq!(verify(ConstructionSpec::folklore(3, 27)).family_size, 27);
        assert!(matches!(
            construct(&ConstructionSpec::folklore(2, 3)),
            Err(ConstructionError::BelowThreshold { .. })
        ));
    }

    #[test]
    fn block_transversal_instances() {
        let inst = construct(&ConstructionSpec::block_transversal(0, 2, 9)).unwrap();
        assert_eq!(inst.graph.to_string(), "K_1 v K_{2,9}");
        assert_eq!(inst.lists.list(0), &[1, 2, 3]);
        assert_eq!(inst.lists.list(1), &[4, 5, 6]);
        assert_eq!(inst.lists.list(2), &[1, 2, 3]);
        assert_eq!(inst.family[0], vec![1, 2, 4]);
        assert_eq!(verify(ConstructionSpec::block_transversal(0, 2, 9)).family_size, 9);
        assert_eq!(verify(ConstructionSpec::block_transversal(1, 2, 96)).family_size, 96);
        assert_eq!(verify(ConstructionSpec::block_transversal(0, 3, 16)).family_size, 16);
        let err = construct(&ConstructionSpec::block_transversal(0, 2, 8)).unwrap_err();
        assert!(err.to_string().contains("C(l+s+1, l)"), "{err}");
    }

    #[test]
    fn partition_instances() {
        assert_eq!(verify(ConstructionSpec::partition(0, 2, 4, 4)).family_size, 4);
        assert_eq!(verify(ConstructionSpec::partition(0, 5, 4, 13)).family_size, 13);
        assert_eq!(verify(ConstructionSpec::partition(1, 2, 4, 64)).family_size, 64);
        let r = verify(ConstructionSpec::partition(0, 3, 4, 9));
        assert_eq!((r.spec.kind, r.family_size), (ConstructionKind::PartitionRemainder, 9));
        assert_eq!(verify(ConstructionSpec::partition(1, 2, 5, 60)).family_size, 60);
    }

    #[test]
    fn partition_lists_follow_the_blocks() {
        let inst = construct(&ConstructionSpec::partition(0, 3, 4, 9)).unwrap();
        // k = 4, m = 3, q = 1, r = 1: P = {1,2}, {3}, {4}; h = 4
        let g = &inst.graph;
        let xs: Vec<_> = g.small_side().map(|v| inst.lists.list(v).to_vec()).collect();
        assert_eq!(xs, vec![vec![3, 4, 5, 6], vec![1, 2, 4, 5], vec![1, 2, 3, 5], vec![1, 2, 3, 4]]);
    }

    #[test]
    fn wrong_branches_and_thresholds_are_named() {
        let err = construct(&ConstructionSpec { kind: ConstructionKind::PartitionDivisible, s: 0, l: 3, a: 4, b: 9 })
            .unwrap_err();
        assert!(matches!(err, ConstructionError::WrongBranch(_)));
        assert!(err.to_string().contains("partition-remainder"));
        let err = construct(&ConstructionSpec { kind: ConstructionKind::PartitionRemainder, s: 0, l: 2, a: 4, b: 9 })
            .unwrap_err();
        assert!(err.to_string().contains("partition-divisible"));
        let err = construct(&ConstructionSpec::partition(0, 3, 4, 8)).unwrap_err();
        assert!(matches!(err, ConstructionError::BelowThreshold { b: 8, .. }), "{err}");
        let err = construct(&ConstructionSpec::partition(0, 2, 4, 3)).unwrap_err();
        assert!(err.to_string().contains("b >= a"), "{err}");
    }

    #[test]
    fn dropping_the_last_list_makes_block_transversal_colorable() {
        let inst = construct(&ConstructionSpec::block_transversal(0, 2, 9)).unwrap();
        let (g, la) = drop_last_family_member(&inst).unwrap();
        let v = is_colorable_join_fast(&g, &la).unwrap();
        assert!(v.colorable);
        v.witness.unwrap().validate(&g, &la).unwrap();
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("4".parse(), Ok(ConstructionKind::BlockTransversal));
        assert_eq!("partition-remainder".parse(), Ok(ConstructionKind::PartitionRemainder));
        assert!("5".parse::<ConstructionKind>().is_err());
    }
}
