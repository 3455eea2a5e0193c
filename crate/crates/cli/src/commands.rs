use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use ohba_core::bounds::{self, Big, BoundValue, Sandwich};
use ohba_core::choosability::{
    self, Certificate, ChoosabilityError, ChoosabilityVerdict, CriticalB, DecideOptions, TauValue, WitnessSource,
    MAX_CORE_VERTICES,
};
use ohba_core::constructions::{self, ConstructionError, ConstructionKind, ConstructionSpec, Instance};
use ohba_core::counting::{self, LemmaReport};
use ohba_core::engine::{find_proper_coloring, is_colorable_join_fast, EngineError, MAX_RANGE_VERTICES};
use ohba_core::format::{self, GraphSpec};
use ohba_core::{Color, JoinGraph};

use crate::{BudgetArgs, Command, ConstructArgs, Format, LemmaSet, TauMethod};

pub struct Outcome {
    pub text: String,
    pub code: u8,
    /// Machine-readable form of the result, stored alongside the rendered text in the cache.
    pub result: Value,
}

impl Outcome {
    fn new(text: String, code: u8, result: Value) -> Self {
        Self { text, code, result }
    }
}

pub enum Failure {
    /// Exit 2.
    Usage(String),
    /// Exit 3.
    Refused(String),
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Model(_) => Failure::Usage(e.to_string()),
            EngineError::Oversize { .. } | EngineError::TooManyColors => Failure::Refused(format!("refused: {e}")),
        }
    }
}

impl From<ChoosabilityError> for Failure {
    fn from(e: ChoosabilityError) -> Self {
        match e {
            ChoosabilityError::BudgetExceeded { .. } => Failure::Refused(e.to_string()),
            ChoosabilityError::Precondition(m) => Failure::Usage(m),
            ChoosabilityError::Engine(e) => e.into(),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::TooLarge { .. } => Failure::Refused(format!("refused: {e}")),
            ConstructionError::Engine(e) => e.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage(format!("--format {f:?} is not available for this command").to_lowercase()))
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn run(cmd: &Command, format: Option<Format>) -> Result<Outcome, Failure> {
    match cmd {
        Command::Check { join, graph, lists } => check(join.as_deref(), graph.as_deref(), lists, format),
        Command::Choosable { p, a, b, k, search_only, budget } => {
            choosable(*p, *a, *b, *k, &options(*search_only, budget), format)
        }
        Command::Tau { s, a, b, method, budget } => tau(*s, *a, *b, *method, budget, format),
        Command::Scan { s, l_max, no_search, budget } => scan(*s, *l_max, !no_search, budget, format),
        Command::Construct(args) => construct(args, format),
        Command::Verify(args) => verify(args, format),
        Command::Bounds { a, s, from, to } => bounds_table(*a, *s, *from, *to, format),
        Command::Critical { p, a, k, cap, budget } => critical(*p, *a, *k, *cap, budget, format),
        Command::Deficiency { p, a, b, search_only, budget } => {
            deficiency(*p, *a, *b, &options(*search_only, budget), format)
        }
        Command::Lemmas { which, seed, count } => lemmas(*which, *seed, *count),
    }
}

fn options(search_only: bool, budget: &BudgetArgs) -> DecideOptions {
    DecideOptions { use_certificates: !search_only, budget: budget.budget() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn join_name(p: usize, a: usize, b: impl std::fmt::Display) -> String {
    format!("K_{p} ∨ K_{{{a},{b}}}")
}

fn set(colors: &[Color]) -> String {
    format!("{{{}}}", colors.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

fn check(join: Option<&[usize]>, graph: Option<&Path>, lists: &Path, format: Option<Format>) -> Result<Outcome, Failure> {
    let fmt = pick(format, Format::Json, &[Format::Json, Format::Pretty])?;
    let graph = match (join, graph) {
        (Some(&[p, a, b]), _) => GraphSpec::Join(JoinGraph::new(p, a, b).map_err(usage)?),
        (_, Some(path)) => format::parse_graph(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        _ => return Err(Failure::Usage("give --join P A B or --graph FILE".into())),
    };
    let la = format::parse_lists(&read(lists)?, &graph).map_err(|e| Failure::Usage(format!("{}: {e}", lists.display())))?;
    let (colorable, witness, method) = match &graph {
        GraphSpec::Join(g) if g.p() + g.a() <= MAX_RANGE_VERTICES => {
            let v = is_colorable_join_fast(g, &la)?;
            (v.colorable, v.witness, "join-ranges")
        }
        GraphSpec::Join(g) => {
            let c = find_proper_coloring(g, &la)?;
            (c.is_some(), c, "backtracking")
        }
        GraphSpec::Generic(g) => {
            let c = find_proper_coloring(g, &la)?;
            (c.is_some(), c, "backtracking")
        }
    };
    let mut result = json!({ "colorable": colorable, "method": method });
    if let Some(c) = &witness {
        let w: Vec<Value> =
            c.0.iter().enumerate().map(|(v, &col)| json!({ "vertex": graph.label(v), "color": col })).collect();
        result["witness"] = Value::Array(w);
    }
    let text = match fmt {
        Format::Pretty => {
            let mut t = format!("{} ({method})\n", if colorable { "colorable" } else { "uncolorable" });
            if let Some(c) = &witness {
                for (v, col) in c.0.iter().enumerate() {
                    let _ = writeln!(t, "  {}: {col}", graph.label(v));
                }
            }
            t
        }
        _ => json_text(&result),
    };
    Ok(Outcome::new(text, if colorable { 0 } else { 1 }, result))
}

fn describe_source(source: &WitnessSource) -> String {
    match source {
        WitnessSource::ConstantLists => "constant lists".into(),
        WitnessSource::CoverSearch => "cover search".into(),
        WitnessSource::Construction(kind) => format!("{kind} construction"),
    }
}

fn describe(cert: &Certificate) -> String {
    match cert {
        Certificate::BadAssignment { source, witness } => {
            format!("bad assignment from {} ({} covering sets)", describe_source(source), witness.cover.len())
        }
        Certificate::Exhaustion { assignments, .. } => format!("exhaustion over {assignments} canonical assignments"),
        Certificate::RangeCount { rule, threshold } => format!("range count, b < {threshold} by {rule}"),
        Certificate::ListChromaticUpper { bound } => format!("k >= p + a + 1 = {bound}"),
        Certificate::VertexCount { bound } => format!("p >= max(0, a + b - 5) = {bound}"),
    }
}

fn probe_json(v: &ChoosabilityVerdict) -> Value {
    let mut out = json!({
        "p": v.p,
        "k": v.k,
        "choosable": v.choosable,
        "certificate": v.certificate.kind(),
    });
    if let Certificate::BadAssignment { source, .. } = &v.certificate {
        out["source"] = serde_json::to_value(source).expect("sources serialize");
    }
    out
}

fn probe_line(v: &ChoosabilityVerdict) -> String {
    let verdict = if v.choosable { "choosable" } else { "not choosable" };
    format!("  p = {}, k = {}: {verdict} ({})\n", v.p, v.k, describe(&v.certificate))
}

fn choosable(p: usize, a: usize, b: usize, k: usize, opts: &DecideOptions, format: Option<Format>) -> Result<Outcome, Failure> {
    let fmt = pick(format, Format::Pretty, &[Format::Json, Format::Pretty])?;
    let v = choosability::decide(p, a, b, k, opts).map_err(|e| match e {
        ChoosabilityError::Precondition(m) if p + a > MAX_CORE_VERTICES => Failure::Refused(format!("refused: {m}")),
        e => e.into(),
    })?;
    let result = serde_json::to_value(&v).expect("verdicts serialize");
    let text = match fmt {
        Format::Json => json_text(&result),
        _ => {
            let verdict = if v.choosable { "" } else { "not " };
            let mut t = format!("{} is {verdict}{k}-choosable\n", join_name(p, a, b));
            let _ = writeln!(t, "  certificate: {}", describe(&v.certificate));
            if let Certificate::BadAssignment { witness, .. } = &v.certificate {
                let (g, _) = witness.expand(witness.cover.len()).map_err(Failure::from)?;
                for (v, list) in witness.core.iter().enumerate() {
                    let _ = writeln!(t, "  {}: {}", g.label(v), set(list));
                }
                let shown: Vec<String> = witness.cover.iter().take(12).map(|c| set(c)).collect();
                let more = if witness.cover.len() > 12 { " ..." } else { "" };
                let _ = writeln!(t, "  y lists: {}{more}", shown.join(" "));
            }
            t
        }
    };
    Ok(Outcome::new(text, if v.choosable { 0 } else { 1 }, result))
}

fn tau_name(s: impl std::fmt::Display, a: impl std::fmt::Display, b: impl std::fmt::Display) -> String {
    format!("tau_{s}({a},{b})")
}

fn sandwich_outcome(w: &Sandwich, method: &str, fmt: Format) -> Outcome {
    let result = json!({
        "s": w.s,
        "a": w.a,
        "b": w.b,
        "method": method,
        "exact": w.exact().is_some(),
        "value": w.exact(),
        "lower": w.lower,
        "upper": w.upper,
        "lower_by": w.lower_by,
        "upper_by": w.upper_by,
        "bounds": w.reports,
    });
    let text = match fmt {
        Format::Json => json_text(&result),
        _ => {
            let name = tau_name(w.s, w.a, w.b);
            let mut t = match w.exact() {
                Some(v) => format!("{name} = {v} (exact)\n"),
                None => format!("{name} in [{}, {}]\n", w.lower, w.upper),
            };
            let _ = writeln!(t, "  lower {}: {}", w.lower, w.lower_by.join(", "));
            let _ = writeln!(t, "  upper {}: {}", w.upper, w.upper_by.join(", "));
            t
        }
    };
    Outcome::new(text, 0, result)
}

fn tau(s: u32, a: u32, b: u64, method: TauMethod, budget: &BudgetArgs, format: Option<Format>) -> Result<Outcome, Failure> {
    let fmt = pick(format, Format::Pretty, &[Format::Json, Format::Pretty])?;
    let w = bounds::sandwich(s, a, b).map_err(usage)?;
    match method {
        TauMethod::Sandwich => Ok(sandwich_outcome(&w, "sandwich", fmt)),
        TauMethod::Formula => match w.exact() {
            Some(_) => Ok(sandwich_outcome(&w, "formula", fmt)),
            None => Err(Failure::Refused(format!(
                "refused: no closed form pins {}; the bounds give [{}, {}] (try --method search)",
                tau_name(s, a, b),
                w.lower,
                w.upper
            ))),
        },
        TauMethod::Search => {
            let r = choosability::tau_exact(s as usize, a as usize, b as usize, &options(false, budget))?;
            let (exact, lo, hi) = match r.value {
                TauValue::Exact { value } => (true, value, value),
                TauValue::Interval { lo, hi } => (false, lo, hi),
            };
            let result = json!({
                "s": s,
                "a": a,
                "b": b,
                "method": "search",
                "exact": exact,
                "value": exact.then_some(lo),
                "lower": lo,
                "upper": hi,
                "probes": r.probes.iter().map(probe_json).collect::<Vec<_>>(),
                "refusal": r.refusal,
            });
            let text = match fmt {
                Format::Json => json_text(&result),
                _ => {
                    let name = tau_name(s, a, b);
                    let mut t = if exact { format!("{name} = {lo} (exact)\n") } else { format!("{name} in [{lo}, {hi}] (not exact)\n") };
                    for v in &r.probes {
                        t.push_str(&probe_line(v));
                    }
                    if let Some(why) = &r.refusal {
                        let _ = writeln!(t, "  search stopped: {why}");
                    }
                    t
                }
            };
            Ok(Outcome::new(text, if exact { 0 } else { 3 }, result))
        }
    }
}

/// What the exhaustive search says about one endpoint of a conjectured interval.
fn endpoint_status(p: usize, a: usize, expected: Option<u64>, budget: &BudgetArgs) -> String {
    let Some(expected) = expected else {
        return "out of range".into();
    };
    if p + a > MAX_CORE_VERTICES {
        return "refused".into();
    }
    match choosability::critical_b(p, a, p + a, expected, &budget.budget()) {
        Ok(CriticalB::Exact { value, .. }) if value == expected => "confirmed".into(),
        Ok(CriticalB::Exact { value, .. }) => format!("differs ({value})"),
        Ok(_) => format!("differs (> {expected})"),
        Err(_) => "refused".into(),
    }
}

/// Largest `b` in `[lo, hi]` whose bounds pin `τ_s(s+2, b) = l`, given that they pin it at `lo`.
fn certified_end(s: u32, l: u64, lo: u64, hi: u64) -> Result<Option<u64>, Failure> {
    let pinned = |b: u64| -> Result<bool, Failure> { Ok(bounds::sandwich(s, s + 2, b).map_err(usage)?.exact() == Some(l)) };
    if !pinned(lo)? {
        return Ok(None);
    }
    // every upper bound is non-decreasing in b and the lower bound is l throughout
    let (mut good, mut bad) = (lo, hi.saturating_add(1));
    if pinned(hi)? {
        return Ok(Some(hi));
    }
    while bad - good > 1 {
        let mid = good + (bad - good) / 2;
        if pinned(mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(Some(good))
}

fn scan(s: u32, l_max: u32, search: bool, budget: &BudgetArgs, format: Option<Format>) -> Result<Outcome, Failure> {
    let fmt = pick(format, Format::Pretty, &[Format::Json, Format::Pretty, Format::Csv])?;
    let a = s + 2;
    let mut rows = Vec::new();
    for l in 1..=l_max {
        let (lo, hi) = bounds::conjectured_interval(s, l).map_err(usage)?;
        let (lo64, hi64) = (u64::try_from(&lo).ok(), u64::try_from(&hi).ok());
        let certified = match lo64 {
            Some(lo) => certified_end(s, l as u64, lo, hi64.unwrap_or(u64::MAX - 1))?.map(|end| [lo, end]),
            None => None,
        };
        let (lower, upper) = if search {
            (
                endpoint_status(l as usize - 1, a as usize, lo64, budget),
                endpoint_status(l as usize, a as usize, hi64.and_then(|h| h.checked_add(1)), budget),
            )
        } else {
            ("skipped".into(), "skipped".into())
        };
        rows.push(json!({
            "l": l,
            "conjectured": [Big(lo), Big(hi)],
            "conjectured_by": bounds::tags::CONJECTURED,
            "certified_exact": certified,
            "whole_interval_certified": certified.is_some() && certified.map(|c| c[1]) == hi64,
            "search_lower_endpoint": lower,
            "search_upper_endpoint": upper,
        }));
    }
    let result = json!({ "s": s, "a": a, "rows": rows });
    let text = match fmt {
        Format::Json => json_text(&result),
        Format::Csv => {
            let mut t = String::from("l,conjectured_lo,conjectured_hi,certified_lo,certified_hi,search_lower_endpoint,search_upper_endpoint\n");
            for r in &rows {
                let c = |i: usize| r["certified_exact"].get(i).map(|v| v.to_string()).unwrap_or_default();
                let _ = writeln!(
                    t,
                    "{},{},{},{},{},{},{}",
                    r["l"],
                    r["conjectured"][0],
                    r["conjectured"][1],
                    c(0),
                    c(1),
                    r["search_lower_endpoint"].as_str().unwrap_or_default(),
                    r["search_upper_endpoint"].as_str().unwrap_or_default()
                );
            }
            t
        }
        Format::Pretty => {
            let mut t = format!("conjectured b-intervals with tau_{s}({a},b) = l\n");
            let _ = writeln!(t, "{:>3}  {:<24} {:<24} search (lower, upper endpoint)", "l", "conjectured", "certified exact");
            for r in &rows {
                let iv = format!("[{}, {}]", r["conjectured"][0], r["conjectured"][1]);
                let cert = match (r["certified_exact"].get(0), r["certified_exact"].get(1)) {
                    (Some(x), Some(y)) if r["whole_interval_certified"] == true => format!("[{x}, {y}] whole"),
                    (Some(x), Some(y)) => format!("[{x}, {y}] partial"),
                    _ => "none".into(),
                };
                let _ = writeln!(
                    t,
                    "{:>3}  {:<24} {:<24} {}, {}",
                    r["l"].as_u64().unwrap_or_default(),
                    iv,
                    cert,
                    r["search_lower_endpoint"].as_str().unwrap_or_default(),
                    r["search_upper_endpoint"].as_str().unwrap_or_default()
                );
            }
            t
        }
    };
    Ok(Outcome::new(text, 0, result))
}

fn spec_from(args: &ConstructArgs) -> Result<ConstructionSpec, Failure> {
    let kind: ConstructionKind = args.thm.parse().map_err(Failure::Usage)?;
    let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| Failure::Usage(format!("{kind} needs --{flag}")));
    Ok(match kind {
        ConstructionKind::Folklore => ConstructionSpec::folklore(need(args.k.or(args.a), "k")?, args.b),
        ConstructionKind::BlockTransversal => {
            let s = need(args.s, "s")?;
            if let Some(a) = args.a.filter(|&a| a != s + 2) {
                return Err(Failure::Usage(format!("{kind} has a = s + 2 = {} (got --a {a})", s + 2)));
            }
            ConstructionSpec::block_transversal(s, need(args.l, "l")?, args.b)
        }
        ConstructionKind::PartitionDivisible | ConstructionKind::PartitionRemainder => {
            ConstructionSpec { kind, s: need(args.s, "s")?, l: need(args.l, "l")?, a: need(args.a, "a")?, b: args.b }
        }
    })
}

fn describe_spec(inst: &Instance) -> String {
    let ConstructionSpec { kind, s, l, a, b } = inst.spec;
    let g = &inst.graph;
    format!(
        "{kind} s={s} l={l} a={a} b={b}: {}, k = {}, |C| = {}",
        join_name(g.p(), g.a(), g.b()),
        inst.derived.k,
        inst.derived.family_size
    )
}

fn write_instance(inst: &Instance, dir: &Path) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Usage(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let g = GraphSpec::Join(inst.graph);
    fs::write(dir.join("graph.txt"), format::write_graph(&g)).map_err(io)?;
    fs::write(dir.join("lists.txt"), format::write_lists(&g, &inst.lists)).map_err(io)?;
    let spec = json!({ "spec": inst.spec, "derived": inst.derived });
    fs::write(dir.join("spec.json"), json_text(&spec)).map_err(io)?;
    Ok(())
}

fn construct(args: &ConstructArgs, format: Option<Format>) -> Result<Outcome, Failure> {
    let fmt = pick(format, Format::Pretty, &[Format::Json, Format::Pretty])?;
    let inst = constructions::construct(&spec_from(args)?)?;
    if let Some(dir) = &args.out {
        write_instance(&inst, dir)?;
    }
    let g = GraphSpec::Join(inst.graph);
    let result = json!({
        "spec": inst.spec,
        "derived": inst.derived,
        "graph": format::write_graph(&g).trim_end(),
        "lists": inst.lists,
    });
    let text = match fmt {
        Format::Json => json_text(&result),
        _ => match &args.out {
            Some(dir) => format!("{}\nwrote graph.txt, lists.txt, spec.json to {}\n", describe_spec(&inst), dir.display()),
            None => format!("# {}\n{}", describe_spec(&inst), format::write_lists(&g, &inst.lists)),
        },
    };
    Ok(Outcome::new(text, 0, result))
}

fn verify(args: &ConstructArgs, format: Option<Format>) -> Result<Outcome, Failure> {
    let fmt = pick(format, Format::Pretty, &[Format::Json, Format::Pretty])?;
    let inst = constructions::construct(&spec_from(args)?)?;
    if let Some(dir) = &args.out {
        write_instance(&inst, dir)?;
    }
    let report = constructions::verify_instance(&inst)?;
    let result = serde_json::to_value(&report).expect("reports serialize");
    let text = match fmt {
        Format::Json => json_text(&result),
        _ => {
            let mut t = format!(
                "{} {} ({} core ranges)\n",
                if report.passed { "PASS" } else { "FAIL" },
                describe_spec(&inst),
                report.core_ranges
            );
            for c in &report.clauses {
                let _ = writeln!(t, "  {:<4} {}: {}", if c.ok { "ok" } else { "FAIL" }, c.name, c.detail);
            }
            t
        }
    };
    Ok(Outcome::new(text, if report.passed { 0 } else { 1 }, result))
}

fn bound_value(v: &BoundValue) -> String {
    match v {
        BoundValue::Single(x) => x.to_string(),
        BoundValue::Interval([lo, hi]) => format!("{lo}..{hi}"),
    }
}

/// CSV columns: `b,lower,upper,exact,lower_by,upper_by,bounds`. Provenance
/// lists are `;`-separated; `bounds` holds `name=value` for every applicable
/// bound, intervals written `lo..hi`.
fn bounds_table(a: u32, s: u32, from: u64, to: u64, format: Option<Format>) -> Result<Outcome, Failure> {
    let fmt = pick(format, Format::Csv, &[Format::Json, Format::Pretty, Format::Csv])?;
    if from > to {
        return Err(Failure::Usage(format!("empty range {from}..{to}")));
    }
    let rows: Vec<Sandwich> = (from..=to).map(|b| bounds::sandwich(s, a, b).map_err(usage)).collect::<Result<_, _>>()?;
    let applicable = |w: &Sandwich| -> Vec<String> {
        w.reports.iter().filter_map(|r| r.value.as_ref().map(|v| format!("{}={}", r.name, bound_value(v)))).collect()
    };
    let result = Value::Array(
        rows.iter()
            .map(|w| {
                json!({
                    "b": w.b,
                    "lower": w.lower,
                    "upper": w.upper,
                    "exact": w.exact(),
                    "lower_by": w.lower_by,
                    "upper_by": w.upper_by,
                    "bounds": w.reports,
                })
            })
            .collect(),
    );
    let text = match fmt {
        Format::Json => json_text(&result),
        Format::Csv => {
            let mut t = String::from("b,lower,upper,exact,lower_by,upper_by,bounds\n");
            for w in &rows {
                let _ = writeln!(
                    t,
                    "{},{},{},{},{},{},{}",
                    w.b,
                    w.lower,
                    w.upper,
                    w.exact().map(|v| v.to_string()).unwrap_or_default(),
                    w.lower_by.join(";"),
                    w.upper_by.join(";"),
                    applicable(w).join(";")
                );
            }
            t
        }
        Format::Pretty => {
            let mut t = format!("bounds on tau_{s}({a},b)\n");
            let _ = writeln!(t, "{:>10}  {:<12} provenance", "b", "tau");
            for w in &rows {
                let v = match w.exact() {
                    Some(v) => format!("{v}"),
                    None => format!("[{}, {}]", w.lower, w.upper),
                };
                let _ = writeln!(t, "{:>10}  {:<12} lower: {}; upper: {}", w.b, v, w.lower_by.join(", "), w.upper_by.join(", "));
            }
            t
        }
    };
    Ok(Outcome::new(text, 0, result))
}

fn critical(p: usize, a: usize, k: usize, cap: u64, budget: &BudgetArgs, format: Option<Format>) -> Result<Outcome, Failure> {
    let fmt = pick(format, Format::Pretty, &[Format::Json, Format::Pretty])?;
    if p + a > MAX_CORE_VERTICES {
        return Err(Failure::Refused(format!("refused: the search needs p + a <= {MAX_CORE_VERTICES} (got {})", p + a)));
    }
    let r = choosability::critical_b(p, a, k, cap, &budget.budget())?;
    let mut result = serde_json::to_value(&r).expect("results serialize");
    result["p"] = json!(p);
    result["a"] = json!(a);
    result["k"] = json!(k);
    let text = match fmt {
        Format::Json => json_text(&result),
        _ => {
            let g = join_name(p, a, "b");
            match &r {
                CriticalB::Exact { value, witness, assignments } => {
                    let mut t = format!("{g} is {k}-choosable exactly for b < {value}\n");
                    let _ = writeln!(t, "  searched {assignments} canonical assignments of W ∪ X");
                    let (jg, _) = witness.expand(witness.cover.len()).map_err(Failure::from)?;
                    for (v, list) in witness.core.iter().enumerate() {
                        let _ = writeln!(t, "  {}: {}", jg.label(v), set(list));
                    }
                    let cover: Vec<String> = witness.cover.iter().map(|c| set(c)).collect();
                    let _ = writeln!(t, "  y lists: {}", cover.join(" "));
                    t
                }
                CriticalB::AboveCap { cap, assignments } => {
                    format!("{g} is {k}-choosable for every b <= {cap}\n  searched {assignments} canonical assignments of W ∪ X\n")
                }
                CriticalB::Unbounded => format!("{g} is {k}-choosable for every b (k >= p + a + 1)\n"),
            }
        }
    };
    Ok(Outcome::new(text, 0, result))
}

fn deficiency(p: usize, a: usize, b: usize, opts: &DecideOptions, format: Option<Format>) -> Result<Outcome, Failure> {
    let fmt = pick(format, Format::Pretty, &[Format::Json, Format::Pretty])?;
    let r = choosability::deficiency(p, a, b, opts).map_err(|e| match e {
        ChoosabilityError::Precondition(m) if p + a > MAX_CORE_VERTICES => Failure::Refused(format!("refused: {m}")),
        e => e.into(),
    })?;
    let result = json!({
        "p": p,
        "a": a,
        "b": b,
        "list_chromatic": r.list_chromatic,
        "deficiency": r.deficiency,
        "probes": r.probes.iter().map(probe_json).collect::<Vec<_>>(),
    });
    let text = match fmt {
        Format::Json => json_text(&result),
        _ => {
            let mut t = format!("list chromatic number of {} is {}, deficiency {}\n", join_name(p, a, b), r.list_chromatic, r.deficiency);
            for v in &r.probes {
                t.push_str(&probe_line(v));
            }
            t
        }
    };
    Ok(Outcome::new(text, 0, result))
}

fn lemmas(which: LemmaSet, seed: u64, count: usize) -> Result<Outcome, Failure> {
    let wants = |w: LemmaSet| which == LemmaSet::All || which == w;
    let err = |e: counting::CountingError| Failure::Usage(e.to_string());
    let mut reports: Vec<LemmaReport> = Vec::new();
    if wants(LemmaSet::Weighted) {
        reports.extend(counting::weighted_sweep(4, 6));
    }
    if wants(LemmaSet::Disjoint) {
        reports.extend(counting::disjoint_lists_property(count, &[2, 3], 7, seed).map_err(err)?);
    }
    if wants(LemmaSet::Star) {
        for s in 2..=4 {
            reports.extend(counting::star_property(count, s, seed).map_err(err)?);
        }
    }
    if wants(LemmaSet::Tightness) {
        let t = counting::star_tightness(2).map_err(err)?;
        reports.push(LemmaReport {
            lemma: "star-range-count-tightness",
            instance: json!({ "s": t.s, "lists": t.witness, "centers_tried": t.centers_tried }),
            lhs: t.min_count,
            relation: "=",
            rhs: t.bound,
            ok: t.attained,
            seed: None,
        });
    }
    let all_ok = reports.iter().all(|r| r.ok);
    let text: String = reports.iter().map(|r| r.to_json_line() + "\n").collect();
    let result = json!({ "reports": reports.len(), "ok": all_ok });
    Ok(Outcome::new(text, if all_ok { 0 } else { 1 }, result))
}
