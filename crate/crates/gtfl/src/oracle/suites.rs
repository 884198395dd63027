//! Exhaustive property suites over finite universes.
//!
//! Fragments over small endpoint universes are kept as bitmasks (`u128`,
//! one bit per universe member) so that the relational checks reduce to
//! word operations. Middle witnesses live in a second, deeper universe.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use indexmap::IndexSet;
use serde::Serialize;

use super::galois::{alpha_brr, alpha_gr, brr_contains, gr_contains};
use super::{enumerate, enumerate_brr, enumerate_gr, OracleError, Universe};
use crate::evidence::{brr, gr, Backend, Evidence};
use crate::statics::{ccod, cdom, consistent_subtype, cproj, gradual_meet, static_subtype};
use crate::types::{BType, GType, Label, Mapping, Type};

const WITNESS_CAP: usize = 5;
const CLOSURE_CAP: usize = 40_000;
const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Galois,
    Fc,
    Assoc,
    Csub,
    Cod,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Galois, Suite::Csub, Suite::Cod, Suite::Fc, Suite::Assoc];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Galois => "galois",
            Suite::Fc => "fc",
            Suite::Assoc => "assoc",
            Suite::Csub => "csub",
            Suite::Cod => "cod",
        }
    }

    /// For `fc` the depth names the middle universe; endpoints sit
    /// `margin` levels below it.
    pub fn default_depth(self) -> usize {
        match self {
            Suite::Fc => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}` (expected galois, fc, assoc, csub, cod or all)"))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub backend: Backend,
    pub depth: Option<usize>,
    pub labels: Vec<Label>,
    pub margin: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { backend: Backend::Brr, depth: None, labels: vec![Label::new("x"), Label::new("y")], margin: 1 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub witnesses: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Check {
        Check { name: name.into(), cases: 0, failures: 0, witnesses: Vec::new() }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(witness());
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub backend: String,
    pub depth: usize,
    pub labels: Vec<String>,
    pub margin: usize,
    pub cases: u64,
    pub failures: u64,
    pub witnesses: Vec<String>,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Report, OracleError> {
    let start = Instant::now();
    let depth = cfg.depth.unwrap_or(suite.default_depth());
    let checks = match suite {
        Suite::Galois => galois(depth, &cfg.labels)?,
        Suite::Csub => csub(cfg.backend, depth, &cfg.labels)?,
        Suite::Cod => cod(cfg.backend, depth, &cfg.labels)?,
        Suite::Fc => {
            let end = depth.checked_sub(cfg.margin).filter(|d| *d >= 1).ok_or(OracleError::Depth(depth))?;
            fc(cfg.backend, end, cfg.margin, &cfg.labels)?
        }
        Suite::Assoc => assoc(cfg.backend, depth, &cfg.labels)?,
    };
    let witnesses = checks
        .iter()
        .flat_map(|c| c.witnesses.iter().map(move |w| format!("{}: {w}", c.name)))
        .take(2 * WITNESS_CAP)
        .collect();
    Ok(Report {
        suite,
        backend: cfg.backend.name().to_string(),
        depth,
        labels: cfg.labels.iter().map(|l| l.to_string()).collect(),
        margin: cfg.margin,
        cases: checks.iter().map(|c| c.cases).sum(),
        failures: checks.iter().map(|c| c.failures).sum(),
        witnesses,
        checks,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

// ---------------------------------------------------------------------------
// Shared machinery

/// A gradual type of either flavor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    G(GType),
    B(BType),
}

impl Side {
    fn contains(&self, t: &Type) -> bool {
        match self {
            Side::G(s) => gr_contains(s, t),
            Side::B(s) => brr_contains(s, t),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::G(s) => s.fmt(f),
            Side::B(s) => s.fmt(f),
        }
    }
}

fn sides(e: &Evidence) -> (Side, Side) {
    match e {
        Evidence::Gr(a, b) => (Side::G(a.clone()), Side::G(b.clone())),
        Evidence::Brr(a, b) => (Side::B(a.clone()), Side::B(b.clone())),
    }
}

fn join_sides(a: Side, b: Side) -> Evidence {
    match (a, b) {
        (Side::G(a), Side::G(b)) => Evidence::Gr(a, b),
        (Side::B(a), Side::B(b)) => Evidence::Brr(a, b),
        _ => unreachable!("mixed flavors"),
    }
}

fn gradual_universe(backend: Backend, depth: usize, labels: &[Label]) -> Result<Vec<Side>, OracleError> {
    if depth > 2 {
        return Err(OracleError::Infeasible(format!("gradual types of height {depth}; at most 2 are enumerated")));
    }
    Ok(match backend {
        Backend::Gr => enumerate_gr(depth, labels)?.into_iter().map(Side::G).collect(),
        Backend::Brr => enumerate_brr(depth, labels)?.into_iter().map(Side::B).collect(),
    })
}

fn side_interior(a: &Side, b: &Side) -> Option<(Side, Side)> {
    match (a, b) {
        (Side::G(a), Side::G(b)) => gr::interior(a, b).map(|(x, y)| (Side::G(x), Side::G(y))),
        (Side::B(a), Side::B(b)) => brr::interior(a, b).map(|(x, y)| (Side::B(x), Side::B(y))),
        _ => None,
    }
}

fn side_meet(a: &Side, b: &Side) -> Option<Side> {
    match (a, b) {
        (Side::G(a), Side::G(b)) => gradual_meet(a, b).map(Side::G),
        (Side::B(a), Side::B(b)) => brr::meet(a, b).map(Side::B),
        _ => None,
    }
}

/// Bitmask of the members of `u` satisfying `p`.
fn mask(u: &Universe, p: impl Fn(&Type) -> bool) -> u128 {
    u.members.iter().enumerate().filter(|(_, t)| p(t)).fold(0, |m, (i, _)| m | (1u128 << i))
}

fn small(u: &Universe) -> Result<(), OracleError> {
    if u.len() > 128 {
        return Err(OracleError::Infeasible(format!("endpoint universe of {} types; at most 128 supported", u.len())));
    }
    Ok(())
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

/// A small universe with its subtyping matrix.
struct Endpoints {
    u: Universe,
    /// `sub[i]` has bit `j` set iff `members[i] <: members[j]`.
    sub: Vec<u128>,
}

impl Endpoints {
    fn new(depth: usize, labels: &[Label]) -> Result<Endpoints, OracleError> {
        let u = enumerate(depth, labels)?;
        small(&u)?;
        let sub = u.members.iter().map(|a| mask(&u, |b| static_subtype(a, b))).collect();
        Ok(Endpoints { u, sub })
    }

    fn gamma(&self, s: &Side) -> u128 {
        mask(&self.u, |t| s.contains(t))
    }

    /// Rows of the fragment of `<a, b>` where `ga`, `gb` are their masks.
    fn fragment(&self, ga: u128, gb: u128) -> Vec<u128> {
        (0..self.u.len()).map(|i| if ga >> i & 1 == 1 { gb & self.sub[i] } else { 0 }).collect()
    }

    fn show(&self, m: u128) -> String {
        let ts: Vec<String> = bits(m).map(|i| self.u.members[i].to_string()).collect();
        format!("{{{}}}", ts.join(", "))
    }

    fn first_difference(&self, a: &[u128], b: &[u128]) -> Option<(String, String)> {
        a.iter().zip(b).enumerate().find(|(_, (x, y))| x != y).map(|(i, (x, y))| {
            let j = (x ^ y).trailing_zeros() as usize;
            (self.u.members[i].to_string(), self.u.members[j].to_string())
        })
    }
}

/// Well-formed evidence produced by interior over every pair of gradual
/// types of height at most `depth`, plus hand-written cases.
pub fn evidence_suite(backend: Backend, depth: usize, labels: &[Label]) -> Result<Vec<Evidence>, OracleError> {
    let types = gradual_universe(backend, depth, labels)?;
    let mut out = IndexSet::new();
    for a in &types {
        for b in &types {
            if let Some((x, y)) = side_interior(a, b) {
                out.insert(join_sides(x, y));
            }
        }
    }
    out.extend(hand_cases(backend));
    Ok(out.into_iter().collect())
}

/// The evidence chains used as worked examples: four GR ascription
/// evidences, and the BRR optional and absent fields cases.
pub fn hand_cases(backend: Backend) -> Vec<Evidence> {
    let xy = GType::record([("x", GType::Int), ("y", GType::Bool)]);
    let x = GType::record([("x", GType::Int)]);
    match backend {
        Backend::Gr => vec![
            Evidence::Gr(xy.clone(), x.clone()),
            Evidence::Gr(x, GType::empty_row()),
            Evidence::Gr(GType::row([("x", GType::Int), ("y", GType::Bool)]), xy.clone()),
            Evidence::Gr(xy, GType::record([("y", GType::Bool)])),
        ],
        Backend::Brr => {
            let req = Mapping::Req;
            let opt = Mapping::Opt;
            vec![
                Evidence::Brr(
                    BType::record([("x", req(BType::Int)), ("y", req(BType::Bool))]),
                    BType::record([("x", req(BType::Int))]),
                ),
                Evidence::Brr(BType::record([("x", req(BType::Int))]), BType::record([("x", opt(BType::Int))])),
                Evidence::Brr(BType::row([("x", opt(BType::Int))]), BType::row([("x", opt(BType::Int))])),
                Evidence::Brr(BType::row([("x", opt(BType::Bool))]), BType::row([("x", opt(BType::Bool))])),
                Evidence::Brr(BType::row([("x", opt(BType::Int))]), BType::row([("x", Mapping::Absent)])),
                Evidence::Brr(BType::record([("x", req(BType::Int))]), BType::record::<[(&str, Mapping); 0], &str>([])),
            ]
        }
    }
}

/// Composition over interned component types. Follows the same meet and
/// interior steps as [`Evidence::compose`], memoized per component pair.
struct Composer {
    types: IndexSet<Side>,
    meet: HashMap<(u32, u32), u32>,
    interior: HashMap<(u32, u32), (u32, u32)>,
}

impl Composer {
    fn new() -> Composer {
        Composer { types: IndexSet::new(), meet: HashMap::new(), interior: HashMap::new() }
    }

    fn intern(&mut self, s: Side) -> u32 {
        self.types.insert_full(s).0 as u32
    }

    fn intern_ev(&mut self, e: &Evidence) -> (u32, u32) {
        let (a, b) = sides(e);
        (self.intern(a), self.intern(b))
    }

    fn evidence(&self, (a, b): (u32, u32)) -> Evidence {
        join_sides(self.types[a as usize].clone(), self.types[b as usize].clone())
    }

    fn meet(&mut self, a: u32, b: u32) -> Option<u32> {
        if let Some(&m) = self.meet.get(&(a, b)) {
            return (m != NONE).then_some(m);
        }
        let r = side_meet(&self.types[a as usize], &self.types[b as usize]).map(|m| self.intern(m));
        self.meet.insert((a, b), r.unwrap_or(NONE));
        r
    }

    fn interior(&mut self, a: u32, b: u32) -> Option<(u32, u32)> {
        if let Some(&r) = self.interior.get(&(a, b)) {
            return (r.0 != NONE).then_some(r);
        }
        let r = side_interior(&self.types[a as usize], &self.types[b as usize]).map(|(x, y)| (self.intern(x), self.intern(y)));
        self.interior.insert((a, b), r.unwrap_or((NONE, NONE)));
        r
    }

    fn compose(&mut self, (s1, s2): (u32, u32), (s3, s4): (u32, u32)) -> Option<(u32, u32)> {
        let mid = self.meet(s2, s3)?;
        let (left, _) = self.interior(s1, mid)?;
        let (_, right) = self.interior(mid, s4)?;
        self.interior(left, right)
    }
}

/// The closure of a seed set under composition with its full table.
struct Table {
    composer: Composer,
    evs: IndexSet<(u32, u32)>,
    seed: usize,
    rows: Vec<Vec<u32>>,
}

impl Table {
    fn build(seed: &[Evidence]) -> Result<Table, OracleError> {
        let mut composer = Composer::new();
        let mut evs = IndexSet::new();
        for e in seed {
            evs.insert(composer.intern_ev(e));
        }
        let seed = evs.len();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut done = 0;
        while done < evs.len() {
            let n = evs.len();
            if n > CLOSURE_CAP {
                return Err(OracleError::Infeasible(format!("composition closure exceeds {CLOSURE_CAP} evidences")));
            }
            rows.resize(n, Vec::new());
            for i in 0..n {
                let from = if i < done { done } else { 0 };
                for j in from..n {
                    let r = composer.compose(evs[i], evs[j]).map_or(NONE, |p| evs.insert_full(p).0 as u32);
                    rows[i].push(r);
                }
            }
            done = n;
        }
        Ok(Table { composer, evs, seed, rows })
    }

    fn get(&self, i: u32, j: u32) -> u32 {
        if i == NONE || j == NONE {
            NONE
        } else {
            self.rows[i as usize][j as usize]
        }
    }

    fn evidence(&self, i: u32) -> Evidence {
        self.composer.evidence(self.evs[i as usize])
    }

    fn show(&self, i: u32) -> String {
        if i == NONE {
            "undefined".into()
        } else {
            self.evidence(i).to_string()
        }
    }

    /// Compares the memoized table against [`Evidence::compose`] on a
    /// deterministic sample of pairs.
    fn spot_check(&self, stride: usize) -> Check {
        let mut c = Check::new("table-matches-compose");
        let n = self.evs.len();
        let mut k = 0usize;
        while k < n * n {
            let (i, j) = ((k / n) as u32, (k % n) as u32);
            let want = self.evidence(i).compose(&self.evidence(j));
            let got = self.get(i, j);
            let got_ev = (got != NONE).then(|| self.evidence(got));
            c.record(want == got_ev, || format!("{} ; {}", self.show(i), self.show(j)));
            k += stride;
        }
        c
    }
}

// ---------------------------------------------------------------------------
// galois

fn galois(depth: usize, labels: &[Label]) -> Result<Vec<Check>, OracleError> {
    let u = enumerate(depth, labels)?;
    small(&u)?;
    let n = u.len();
    let gr_types = enumerate_gr(depth.min(2), labels)?;
    let brr_types = enumerate_brr(depth.min(2), labels)?;
    let gr_masks: Vec<u128> = gr_types.iter().map(|s| mask(&u, |t| gr_contains(s, t))).collect();
    let brr_masks: Vec<u128> = brr_types.iter().map(|s| mask(&u, |t| brr_contains(s, t))).collect();

    // Candidate sets: small subsets, every concretization, and unions of
    // two GR concretizations.
    let mut sets: IndexSet<u128> = IndexSet::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                sets.insert(1 << i | 1 << j | 1 << k);
            }
        }
    }
    sets.extend(gr_masks.iter().chain(&brr_masks).copied().filter(|m| *m != 0));
    for a in &gr_masks {
        for b in &gr_masks {
            if *a | *b != 0 {
                sets.insert(a | b);
            }
        }
    }

    let mut checks = Vec::new();
    for (flavor, masks) in [("gr", &gr_masks), ("brr", &brr_masks)] {
        let mut sound = Check::new(format!("soundness-{flavor}"));
        let mut optimal = Check::new(format!("optimality-{flavor}"));
        for &c in &sets {
            let members: Vec<&Type> = bits(c).map(|i| &u.members[i]).collect();
            let (abs, g) = if flavor == "gr" {
                let a = alpha_gr(&members)?;
                let g = mask(&u, |t| gr_contains(&a, t));
                (a.to_string(), g)
            } else {
                let a = alpha_brr(&members, &u)?;
                let g = mask(&u, |t| brr_contains(&a, t));
                (a.to_string(), g)
            };
            sound.record(c & !g == 0, || format!("alpha{} = {abs} misses members", show_set(&members)));
            for (k, &m) in masks.iter().enumerate() {
                if c & !m == 0 {
                    let other = if flavor == "gr" { gr_types[k].to_string() } else { brr_types[k].to_string() };
                    optimal.record(g & !m == 0, || format!("alpha{} = {abs} is not below {other}", show_set(&members)));
                }
            }
        }
        checks.push(sound);
        checks.push(optimal);
    }

    // A row at the deepest level collapses to `{}` inside the universe, so
    // mismatches are retried one level deeper. Rows listing every universe
    // label stay indistinguishable from the closed record.
    let wide = Wide::new(depth + 1, labels)?;
    let mut insertion = Check::new("insertion-gr");
    for (s, &m) in gr_types.iter().zip(&gr_masks) {
        if m == 0 {
            continue;
        }
        let members: Vec<&Type> = bits(m).map(|i| &u.members[i]).collect();
        let mut back = alpha_gr(&members)?;
        if back != *s {
            let g = wide.gamma(&Side::G(s.clone()));
            let members: Vec<&Type> = wide.members(&g).collect();
            back = alpha_gr(&members)?;
            if back != *s && wide.gamma(&Side::G(back.clone())) == g && lists_all_labels(s, &u.labels) {
                back = s.clone();
            }
        }
        insertion.record(back == *s, || format!("alpha(gamma({s})) = {back}"));
    }
    checks.push(insertion);

    let mut noins = Check::new("evidence-non-insertion");
    for backend in [Backend::Gr, Backend::Brr] {
        let e = match backend {
            Backend::Gr => Evidence::Gr(GType::Int, GType::Unknown),
            Backend::Brr => Evidence::Brr(BType::Int, BType::Unknown),
        };
        let back = super::alpha_ev(&super::gamma_ev(&e, &u), backend, &u)?;
        let want = match backend {
            Backend::Gr => Evidence::Gr(GType::Int, GType::Int),
            Backend::Brr => Evidence::Brr(BType::Int, BType::Int),
        };
        noins.record(back.as_ref() == Some(&want), || format!("{backend}: alpha(gamma({e})) = {back:?}"));
    }
    checks.push(noins);

    for (flavor, masks) in [("gr", &gr_masks), ("brr", &brr_masks)] {
        let mut prec = Check::new(format!("precision-sound-{flavor}"));
        for i in 0..masks.len() {
            for j in 0..masks.len() {
                let le = if flavor == "gr" {
                    gr_types[i].precision_le(&gr_types[j])
                } else {
                    brr_types[i].precision_le(&brr_types[j])
                };
                if le {
                    prec.record(masks[i] & !masks[j] == 0, || {
                        if flavor == "gr" {
                            format!("{} below {}", gr_types[i], gr_types[j])
                        } else {
                            format!("{} below {}", brr_types[i], brr_types[j])
                        }
                    });
                }
            }
        }
        checks.push(prec);
    }
    Ok(checks)
}

/// Whether `s` contains a row mentioning every label of the universe.
fn lists_all_labels(s: &GType, labels: &[Label]) -> bool {
    match s {
        GType::Rec(fs, crate::types::Tail::Open) if labels.iter().all(|l| fs.contains_key(l)) => true,
        GType::Rec(fs, _) => fs.values().any(|t| lists_all_labels(t, labels)),
        GType::Arrow(a, b) => lists_all_labels(a, labels) || lists_all_labels(b, labels),
        _ => false,
    }
}

/// A universe too large for single-word masks, with its subtyping matrix
/// as bitset rows.
struct Wide {
    u: Universe,
    sub: Vec<Vec<u64>>,
}

impl Wide {
    fn new(depth: usize, labels: &[Label]) -> Result<Wide, OracleError> {
        let u = enumerate(depth, labels)?;
        let sub = u.members.iter().map(|a| Wide::bitset(&u, |b| static_subtype(a, b))).collect();
        Ok(Wide { u, sub })
    }

    fn bitset(u: &Universe, p: impl Fn(&Type) -> bool) -> Vec<u64> {
        let mut v = vec![0u64; u.len().div_ceil(64)];
        for (i, t) in u.members.iter().enumerate() {
            if p(t) {
                v[i / 64] |= 1 << (i % 64);
            }
        }
        v
    }

    fn gamma(&self, s: &Side) -> Vec<u64> {
        Wide::bitset(&self.u, |t| s.contains(t))
    }

    fn indices(g: &[u64]) -> impl Iterator<Item = usize> + '_ {
        g.iter().enumerate().flat_map(|(w, x)| bits(*x as u128).map(move |b| w * 64 + b))
    }

    fn members<'a>(&'a self, g: &'a [u64]) -> impl Iterator<Item = &'a Type> + 'a {
        Wide::indices(g).map(|i| &self.u.members[i])
    }

    /// Whether `<a, b>` is, up to concretization in this universe, its own
    /// abstracted concretization.
    fn fixpoint(&self, a: &Side, b: &Side) -> Result<bool, OracleError> {
        let (ga, gb) = (self.gamma(a), self.gamma(b));
        let mut lefts = vec![0u64; ga.len()];
        let mut rights = vec![0u64; gb.len()];
        for i in Wide::indices(&ga) {
            let mut hit = false;
            for (w, (s, g)) in self.sub[i].iter().zip(&gb).enumerate() {
                let both = s & g;
                hit |= both != 0;
                rights[w] |= both;
            }
            if hit {
                lefts[i / 64] |= 1 << (i % 64);
            }
        }
        if lefts.iter().all(|w| *w == 0) {
            return Ok(false);
        }
        let abs = |g: &[u64], like: &Side| -> Result<Vec<u64>, OracleError> {
            let ts: Vec<&Type> = self.members(g).collect();
            let s = match like {
                Side::G(_) => Side::G(alpha_gr(&ts)?),
                Side::B(_) => Side::B(alpha_brr(&ts, &self.u)?),
            };
            Ok(self.gamma(&s))
        };
        Ok(abs(&lefts, a)? == ga && abs(&rights, b)? == gb)
    }
}

fn fresh_label(labels: &[Label]) -> Label {
    ["z", "w", "v"].into_iter().map(Label::new).find(|l| !labels.contains(l)).expect("a free label")
}

fn show_set(ts: &[&Type]) -> String {
    let v: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

// ---------------------------------------------------------------------------
// csub

fn csub(backend: Backend, depth: usize, labels: &[Label]) -> Result<Vec<Check>, OracleError> {
    let end = Endpoints::new(depth, labels)?;
    let mut checks = Vec::new();

    let gr_types = enumerate_gr(depth.min(2), labels)?;
    let gm: Vec<u128> = gr_types.iter().map(|s| mask(&end.u, |t| gr_contains(s, t))).collect();
    let mut cs = Check::new("consistent-subtype-gr");
    for (i, a) in gr_types.iter().enumerate() {
        for (j, b) in gr_types.iter().enumerate() {
            let brute = bits(gm[i]).any(|t| end.sub[t] & gm[j] != 0);
            cs.record(consistent_subtype(a, b) == brute, || format!("{a} <~ {b}: brute force says {brute}"));
        }
    }
    checks.push(cs);

    let types = gradual_universe(backend, depth, labels)?;
    let masks: Vec<u128> = types.iter().map(|s| end.gamma(s)).collect();
    let mut defined = Check::new(format!("interior-defined-{backend}"));
    let mut maximal = Check::new(format!("interior-maximal-{backend}"));
    let mut wf_out = Check::new(format!("interior-wf-{backend}"));
    let mut wf_fix = Check::new(format!("wf-fixpoint-{backend}"));
    // Mismatches are retried one level deeper, where rows at the innermost
    // level no longer collapse, and with an extra label, where rows listing
    // every label no longer coincide with closed records.
    let here = Wide::new(depth, labels)?;
    let mut more = labels.to_vec();
    more.push(fresh_label(labels));
    let finer = [Wide::new(depth + 1, labels)?, Wide::new(depth, &more)?];
    for (i, a) in types.iter().enumerate() {
        for (j, b) in types.iter().enumerate() {
            let frag = end.fragment(masks[i], masks[j]);
            let nonempty = frag.iter().any(|r| *r != 0);
            let int = side_interior(a, b);
            defined.record(int.is_some() == nonempty, || format!("{a} <~ {b}: interior {:?}, brute force {nonempty}", int.is_some()));
            if let Some((x, y)) = &int {
                let got = end.fragment(end.gamma(x), end.gamma(y));
                maximal.record(got == frag, || {
                    let (p, q) = end.first_difference(&got, &frag).unwrap();
                    format!("interior({a}, {b}) = <{x}, {y}> differs at {p} <: {q}")
                });
                let e = join_sides(x.clone(), y.clone());
                wf_out.record(e.wf(), || format!("interior({a}, {b}) = {e} is not well formed"));
            }
            let e = join_sides(a.clone(), b.clone());
            let mut fix = here.fixpoint(a, b)?;
            if e.wf() != fix {
                for w in &finer {
                    if w.fixpoint(a, b)? == e.wf() {
                        fix = e.wf();
                        break;
                    }
                }
            }
            wf_fix.record(e.wf() == fix, || format!("{e}: wf {} but fixpoint {fix}", e.wf()));
        }
    }
    checks.extend([defined, maximal, wf_out, wf_fix]);
    Ok(checks)
}

// ---------------------------------------------------------------------------
// cod

/// Consistent destructors against their collecting definitions, and the
/// evidence inversion operators against fragment projections.
fn cod(backend: Backend, depth: usize, labels: &[Label]) -> Result<Vec<Check>, OracleError> {
    if depth < 2 {
        return Err(OracleError::Depth(depth));
    }
    let end = Endpoints::new(depth, labels)?;
    let inner = Endpoints::new(depth - 1, labels)?;
    let types = gradual_universe(backend, depth, labels)?;
    let at = |t: &Type| inner.u.index_of(t);

    type Destructor = fn(&Side, Option<&Label>) -> Option<Side>;
    fn dom(s: &Side, _: Option<&Label>) -> Option<Side> {
        match s {
            Side::G(s) => cdom(s).map(Side::G),
            Side::B(s) => brr::cdom(s).map(Side::B),
        }
    }
    fn codom(s: &Side, _: Option<&Label>) -> Option<Side> {
        match s {
            Side::G(s) => ccod(s).map(Side::G),
            Side::B(s) => brr::ccod(s).map(Side::B),
        }
    }
    fn proj(s: &Side, l: Option<&Label>) -> Option<Side> {
        let l = l.expect("label");
        match s {
            Side::G(s) => cproj(s, l).map(Side::G),
            Side::B(s) => brr::cproj(s, l).map(Side::B),
        }
    }
    fn component<'t>(t: &'t Type, what: &str, l: Option<&Label>) -> Option<&'t Type> {
        match (t, what) {
            (Type::Arrow(a, _), "dom") => Some(a),
            (Type::Arrow(_, b), "cod") => Some(b),
            (Type::Record(fs), "proj") => fs.get(l.expect("label")),
            _ => None,
        }
    }

    let mut ops: Vec<(&str, Destructor, Option<&Label>)> = vec![("dom", dom, None), ("cod", codom, None)];
    ops.extend(labels.iter().map(|l| ("proj", proj as Destructor, Some(l))));

    let mut checks = Vec::new();
    for (what, f, l) in &ops {
        let name = match l {
            Some(l) => format!("c{what}-{l}-{backend}"),
            None => format!("c{what}-{backend}"),
        };
        let mut c = Check::new(name);
        for s in &types {
            let brute = bits(end.gamma(s))
                .filter_map(|i| component(&end.u.members[i], what, *l))
                .fold(0u128, |m, t| m | 1 << at(t).expect("component in inner universe"));
            let got = f(s, *l);
            let ok = match &got {
                None => brute == 0,
                Some(r) => inner.gamma(r) == brute,
            };
            c.record(ok, || format!("{s}: got {}, brute force {}", got.as_ref().map_or("undefined".into(), |r| r.to_string()), inner.show(brute)));
        }
        checks.push(c);
    }

    // Inversions: every suite evidence whose operator is defined.
    let suite = evidence_suite(backend, depth, labels)?;
    let mut inv_ops: Vec<(String, Option<Label>)> = vec![("idom".into(), None), ("icod".into(), None)];
    inv_ops.extend(labels.iter().map(|l| ("iproj".to_string(), Some(l.clone()))));
    for (what, l) in &inv_ops {
        let mut c = Check::new(match l {
            Some(l) => format!("{what}-{l}-{backend}"),
            None => format!("{what}-{backend}"),
        });
        for e in &suite {
            let inv = invert(e, what, l.as_ref());
            let Some(inv) = inv else { continue };
            let (a, b) = sides(e);
            let frag = end.fragment(end.gamma(&a), end.gamma(&b));
            let mut brute = vec![0u128; inner.u.len()];
            for i in 0..end.u.len() {
                for j in bits(frag[i]) {
                    let (t1, t2) = (&end.u.members[i], &end.u.members[j]);
                    let pair = match (what.as_str(), t1, t2) {
                        ("idom", Type::Arrow(a1, _), Type::Arrow(a2, _)) => Some((&**a2, &**a1)),
                        ("icod", Type::Arrow(_, b1), Type::Arrow(_, b2)) => Some((&**b1, &**b2)),
                        ("iproj", Type::Record(f1), Type::Record(f2)) => {
                            let l = l.as_ref().expect("label");
                            f1.get(l).zip(f2.get(l))
                        }
                        _ => None,
                    };
                    if let Some((p, q)) = pair {
                        brute[at(p).expect("inner")] |= 1 << at(q).expect("inner");
                    }
                }
            }
            let (x, y) = sides(&inv);
            let got = inner.fragment(inner.gamma(&x), inner.gamma(&y));
            let ok = brute.iter().all(|r| *r == 0) || got == brute;
            c.record(ok, || {
                let (p, q) = inner.first_difference(&got, &brute).unwrap();
                format!("{what}({e}) = {inv} differs at {p} <: {q}")
            });
        }
        checks.push(c);
    }
    Ok(checks)
}

fn invert(e: &Evidence, what: &str, l: Option<&Label>) -> Option<Evidence> {
    match (e, what) {
        (Evidence::Gr(a, b), "idom") => gr::idom(&(a.clone(), b.clone())).map(|(x, y)| Evidence::Gr(x, y)),
        (Evidence::Gr(a, b), "icod") => gr::icod(&(a.clone(), b.clone())).map(|(x, y)| Evidence::Gr(x, y)),
        (Evidence::Gr(a, b), _) => gr::iproj(&(a.clone(), b.clone()), l?).map(|(x, y)| Evidence::Gr(x, y)),
        (Evidence::Brr(a, b), "idom") => brr::idom(&(a.clone(), b.clone())).map(|(x, y)| Evidence::Brr(x, y)),
        (Evidence::Brr(a, b), "icod") => brr::icod(&(a.clone(), b.clone())).map(|(x, y)| Evidence::Brr(x, y)),
        (Evidence::Brr(a, b), _) => brr::iproj(&(a.clone(), b.clone()), l?).map(|(x, y)| Evidence::Brr(x, y)),
    }
}

// ---------------------------------------------------------------------------
// fc

/// Middle universe as bitsets, with each middle's subtypes and supertypes
/// among the endpoints.
struct Middles {
    u: Universe,
    below: Vec<u128>,
    above: Vec<u128>,
}

impl Middles {
    fn new(end: &Endpoints, depth: usize, labels: &[Label]) -> Result<Middles, OracleError> {
        let u = enumerate(depth, labels)?;
        let below = u.members.iter().map(|m| mask(&end.u, |t| static_subtype(t, m))).collect();
        let above = u.members.iter().map(|m| mask(&end.u, |t| static_subtype(m, t))).collect();
        Ok(Middles { u, below, above })
    }

    fn gamma(&self, s: &Side) -> Vec<u64> {
        let mut v = vec![0u64; self.u.len().div_ceil(64)];
        for (i, t) in self.u.members.iter().enumerate() {
            if s.contains(t) {
                v[i / 64] |= 1 << (i % 64);
            }
        }
        v
    }
}

/// Forward completeness of composition: for every suite pair, the
/// concretization of the composite equals the relational composition of
/// the concretizations, witnessed by middles from `depth + margin`.
fn fc(backend: Backend, depth: usize, margin: usize, labels: &[Label]) -> Result<Vec<Check>, OracleError> {
    let end = Endpoints::new(depth, labels)?;
    let mid = Middles::new(&end, depth + margin, labels)?;
    let suite = evidence_suite(backend, depth, labels)?;
    let table = Table::build(&suite)?;
    let gend: Vec<u128> = table.composer.types.iter().map(|s| end.gamma(s)).collect();
    let gmid: Vec<Vec<u64>> = table.composer.types.iter().map(|s| mid.gamma(s)).collect();
    let frags: Vec<Vec<u128>> = table.evs.iter().map(|&(a, b)| end.fragment(gend[a as usize], gend[b as usize])).collect();

    // Per (right of first, left of second): the maximal endpoint
    // signatures of shared middles.
    let mut sigs: HashMap<(u32, u32), Vec<(u128, u128)>> = HashMap::new();
    let mut signatures = |b: u32, c: u32| -> Vec<(u128, u128)> {
        sigs.entry((b, c))
            .or_insert_with(|| {
                let mut v: Vec<(u128, u128)> = Vec::new();
                for (w, (x, y)) in gmid[b as usize].iter().zip(&gmid[c as usize]).enumerate() {
                    let mut both = x & y;
                    while both != 0 {
                        let i = w * 64 + both.trailing_zeros() as usize;
                        both &= both - 1;
                        v.push((mid.below[i], mid.above[i]));
                    }
                }
                v.sort_unstable();
                v.dedup();
                let keep: Vec<(u128, u128)> = v
                    .iter()
                    .filter(|(l, h)| !v.iter().any(|(l2, h2)| (l2, h2) != (l, h) && l & !l2 == 0 && h & !h2 == 0))
                    .copied()
                    .collect();
                keep
            })
            .clone()
    };

    let mut fcc = Check::new(format!("forward-complete-{backend}"));
    let mut closed = Check::new(format!("closure-wf-{backend}"));
    let n = end.u.len();
    let mut rows = vec![0u128; n];
    for i in 0..table.seed {
        let (a1, b1) = table.evs[i];
        for j in 0..table.seed {
            let (a2, b2) = table.evs[j];
            rows.iter_mut().for_each(|r| *r = 0);
            let (l1, r2) = (gend[a1 as usize], gend[b2 as usize]);
            for (lo, hi) in signatures(b1, a2) {
                let (lo, hi) = (lo & l1, hi & r2);
                if lo != 0 && hi != 0 {
                    for t in bits(lo) {
                        rows[t] |= hi;
                    }
                }
            }
            let k = table.get(i as u32, j as u32);
            let ok = if k == NONE { rows.iter().all(|r| *r == 0) } else { frags[k as usize] == rows };
            fcc.record(ok, || {
                let empty = vec![0u128; n];
                let got = if k == NONE { &empty } else { &frags[k as usize] };
                let (p, q) = end.first_difference(got, &rows).unwrap();
                let side = if got.iter().zip(&rows).any(|(g, r)| g & !r != 0) { "composite only" } else { "relational only" };
                format!("{} ; {} = {}: {p} <: {q} ({side})", table.show(i as u32), table.show(j as u32), table.show(k))
            });
        }
    }
    for i in 0..table.evs.len() {
        let e = table.evidence(i as u32);
        closed.record(e.wf(), || format!("{e} is not well formed"));
    }
    let mut suite_size = Check::new(format!("suite-size-{backend}"));
    suite_size.cases = table.seed as u64;
    Ok(vec![fcc, closed, table.spot_check(97), suite_size])
}

// ---------------------------------------------------------------------------
// assoc

fn assoc(backend: Backend, depth: usize, labels: &[Label]) -> Result<Vec<Check>, OracleError> {
    let suite = evidence_suite(backend, depth, labels)?;
    let table = Table::build(&suite)?;
    let n = table.seed as u32;
    let mut c = Check::new(format!("associativity-{backend}"));
    let mut cases = 0u64;
    for i in 0..n {
        for j in 0..n {
            let ij = table.get(i, j);
            let row_ij = (ij != NONE).then(|| &table.rows[ij as usize]);
            let row_i = &table.rows[i as usize];
            let row_j = &table.rows[j as usize];
            for k in 0..n {
                let lhs = row_ij.map_or(NONE, |r| r[k as usize]);
                let jk = row_j[k as usize];
                let rhs = if jk == NONE { NONE } else { row_i[jk as usize] };
                if lhs != rhs {
                    c.record(false, || {
                        format!(
                            "({} ; {}) ; {} = {} but {} ; ({} ; {}) = {}",
                            table.show(i),
                            table.show(j),
                            table.show(k),
                            table.show(lhs),
                            table.show(i),
                            table.show(j),
                            table.show(k),
                            table.show(rhs)
                        )
                    });
                }
            }
            cases += n as u64;
        }
    }
    c.cases = cases;

    // The worked chains, evaluated with the direct composition.
    let mut hand = Check::new(format!("hand-chains-{backend}"));
    let hc = hand_cases(backend);
    for a in &hc {
        for b in &hc {
            for d in &hc {
                let lhs = a.compose(b).and_then(|ab| ab.compose(d));
                let rhs = b.compose(d).and_then(|bd| a.compose(&bd));
                hand.record(lhs == rhs, || {
                    let fmt = |e: &Option<Evidence>| e.as_ref().map_or("undefined".into(), |e| e.to_string());
                    format!("({a} ; {b}) ; {d} = {} but {a} ; ({b} ; {d}) = {}", fmt(&lhs), fmt(&rhs))
                });
            }
        }
    }
    let mut suite_size = Check::new(format!("suite-size-{backend}"));
    suite_size.cases = table.seed as u64;
    Ok(vec![c, hand, table.spot_check(97), suite_size])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn bit_iteration() {
        assert_eq!(bits(0b1011).collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(bits(1u128 << 127).collect::<Vec<_>>(), vec![127]);
    }

    #[test]
    fn hand_cases_are_well_formed() {
        for b in [Backend::Gr, Backend::Brr] {
            assert!(hand_cases(b).iter().all(|e| e.wf()));
        }
    }
}
