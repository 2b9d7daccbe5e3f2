//! Thin families and fronts, the combinatorial forcing calculus
//! (accepts, rejects, strongly accepts, decides), front ranks, a bounded
//! Nash-Williams driver and brute-force finite partition checks.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seqcore::{Enumerator, Seq, SeqError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForcingError {
    #[error("exact strong acceptance is not available for rule fronts")]
    ExactOnRule,
    #[error("the trivial front has no derived fronts")]
    TrivialFront,
    #[error("{0} is not strongly accepted")]
    NotStronglyAccepted(Seq),
    #[error("horizon {horizon} too small: {detail}")]
    HorizonTooSmall { horizon: u64, detail: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("n = {n} exceeds the cap {cap}")]
    CapExceeded { n: u64, cap: u64 },
    #[error("bad front spec {0:?}")]
    FrontSpec(String),
    #[error("bad colouring {0:?}")]
    ColouringSpec(String),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StoppingRule {
    /// Members are the sets `s` with `|s| = min(s) + 1`.
    Schreier,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyDesc {
    Explicit(Vec<Seq>),
    /// `[ground]^k`
    Uniform { ground: Enumerator, k: usize },
    Rule { ground: Enumerator, rule: StoppingRule },
}

/// `s` is an initial segment of `t`.
pub fn init_segment(s: &[u64], t: &[u64]) -> bool {
    t.len() >= s.len() && t[..s.len()] == *s
}

fn all_in(s: &[u64], g: &Enumerator) -> bool {
    s.iter().all(|&x| g.contains(x))
}

impl FamilyDesc {
    pub fn trivial() -> Self {
        FamilyDesc::Explicit(vec![Seq::empty()])
    }

    pub fn is_member(&self, s: &[u64]) -> bool {
        match self {
            FamilyDesc::Explicit(ms) => ms.iter().any(|m| m.as_slice() == s),
            FamilyDesc::Uniform { ground, k } => s.len() == *k && all_in(s, ground),
            FamilyDesc::Rule { ground, .. } => !s.is_empty() && s.len() as u64 == s[0] + 1 && all_in(s, ground),
        }
    }

    /// Some member that is an initial segment of `s`.
    pub fn prefix_member(&self, s: &[u64]) -> Option<Seq> {
        let found = match self {
            FamilyDesc::Explicit(ms) => return ms.iter().find(|m| init_segment(m, s)).cloned(),
            FamilyDesc::Uniform { k, .. } => (s.len() >= *k).then(|| &s[..*k]),
            FamilyDesc::Rule { .. } => s
                .first()
                .map(|&m| m as usize + 1)
                .filter(|&l| l <= s.len())
                .map(|l| &s[..l]),
        };
        found
            .filter(|t| self.is_member(t))
            .map(|t| Seq::new(t.to_vec()).expect("prefix of a set"))
    }

    /// Number of further elements of the ground set, all above `max(s)`,
    /// that turn `s` into a member. `None` if `s` is not a proper initial
    /// segment of any member. For the Schreier rule at `s = []` the answer
    /// depends on the next element, reported as `Some(usize::MAX)`.
    fn missing(&self, s: &[u64]) -> Option<usize> {
        match self {
            FamilyDesc::Explicit(_) => None,
            FamilyDesc::Uniform { ground, k } => (s.len() < *k && all_in(s, ground)).then(|| k - s.len()),
            FamilyDesc::Rule { ground, .. } => {
                if s.is_empty() {
                    return Some(usize::MAX);
                }
                let need = s[0] as usize + 1;
                (s.len() < need && all_in(s, ground)).then(|| need - s.len())
            }
        }
    }

    fn ground(&self) -> Option<&Enumerator> {
        match self {
            FamilyDesc::Explicit(_) => None,
            FamilyDesc::Uniform { ground, .. } | FamilyDesc::Rule { ground, .. } => Some(ground),
        }
    }

    /// Members contained in `[0, h)`.
    pub fn members_below(&self, h: u64) -> Vec<Seq> {
        match self {
            FamilyDesc::Explicit(ms) => ms.iter().filter(|m| m.last().is_none_or(|&x| x < h)).cloned().collect(),
            _ => {
                let mut out = Vec::new();
                self.extensions(&[], &|_| true, h, &mut out);
                out
            }
        }
    }

    /// Members `t` with `s` a proper initial segment of `t`, `t \ s`
    /// drawn from elements accepted by `allow`, all below `h`.
    fn extensions(&self, s: &[u64], allow: &dyn Fn(u64) -> bool, h: u64, out: &mut Vec<Seq>) {
        if let FamilyDesc::Explicit(ms) = self {
            for m in ms {
                if m.len() > s.len() && init_segment(s, m) && m[s.len()..].iter().all(|&x| allow(x) && x < h) {
                    out.push(m.clone());
                }
            }
            return;
        }
        let Some(ground) = self.ground() else { return };
        if self.missing(s).is_none() {
            return;
        }
        let start = s.last().map_or(0, |&x| x + 1);
        let mut x = ground.next_at_least(start);
        while x < h {
            if allow(x) {
                let mut t = s.to_vec();
                t.push(x);
                if self.is_member(&t) {
                    out.push(Seq::new(t).expect("increasing"));
                } else {
                    self.extensions(&t, allow, h, out);
                }
            }
            x = ground.next_at_least(x + 1);
        }
    }

    /// Whether `s` is a node of the tree of initial segments of members
    /// lying inside `[0, h)`.
    fn is_node_below(&self, s: &[u64], h: u64) -> bool {
        if s.last().is_some_and(|&x| x >= h) {
            return false;
        }
        if self.is_member(s) {
            return true;
        }
        match self {
            FamilyDesc::Explicit(ms) => ms.iter().any(|m| init_segment(s, m) && m.last().is_none_or(|&x| x < h)),
            _ => match self.missing(s) {
                None => false,
                Some(_) => {
                    let mut out = Vec::new();
                    self.first_extension(s, h, &mut out);
                    !out.is_empty()
                }
            },
        }
    }

    fn first_extension(&self, s: &[u64], h: u64, out: &mut Vec<Seq>) {
        let Some(ground) = self.ground() else { return };
        let start = s.last().map_or(0, |&x| x + 1);
        let mut x = ground.next_at_least(start);
        while x < h && out.is_empty() {
            let mut t = s.to_vec();
            t.push(x);
            if self.is_member(&t) {
                out.push(Seq::new(t).expect("increasing"));
            } else if self.missing(&t).is_some() {
                self.first_extension(&t, h, out);
            }
            x = ground.next_at_least(x + 1);
        }
    }
}

impl fmt::Display for FamilyDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDesc::Explicit(ms) => {
                let items: Vec<String> = ms.iter().map(Seq::to_string).collect();
                write!(f, "explicit:{}", items.join(";"))
            }
            FamilyDesc::Uniform { ground, k } => write!(f, "uniform:{k} on {ground}"),
            FamilyDesc::Rule { ground, .. } => write!(f, "schreier on {ground}"),
        }
    }
}

/// Parses `uniform:<k> | schreier | trivial | explicit:[..];[..]` over `ground`.
pub fn parse_front(spec: &str, ground: &Enumerator) -> Result<FamilyDesc, ForcingError> {
    let spec = spec.trim();
    let err = || ForcingError::FrontSpec(spec.to_string());
    if spec == "trivial" {
        return Ok(FamilyDesc::trivial());
    }
    if spec == "schreier" {
        return Ok(FamilyDesc::Rule {
            ground: ground.clone(),
            rule: StoppingRule::Schreier,
        });
    }
    if let Some(k) = spec.strip_prefix("uniform:") {
        let k = k.trim().parse().map_err(|_| err())?;
        return Ok(FamilyDesc::Uniform {
            ground: ground.clone(),
            k,
        });
    }
    if let Some(rest) = spec.strip_prefix("explicit:") {
        let ms = rest
            .split(';')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.parse::<Seq>())
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(FamilyDesc::Explicit(ms));
    }
    Err(err())
}

/// No member is a proper initial segment of another.
pub fn is_thin(f: &FamilyDesc) -> bool {
    match f {
        FamilyDesc::Explicit(ms) => ms
            .iter()
            .all(|s| ms.iter().all(|t| s == t || !init_segment(s, t))),
        FamilyDesc::Uniform { .. } | FamilyDesc::Rule { .. } => true,
    }
}

/// Members `t` of `f` with `t` an initial segment of `s`, or `s` an
/// initial segment of `t` and `t \ s` inside `m`. Infinite answers are cut
/// off at `horizon`.
pub fn comparables(s: &[u64], m: &Enumerator, f: &FamilyDesc, horizon: u64) -> Vec<Seq> {
    let mut out = Vec::new();
    if let FamilyDesc::Explicit(ms) = f {
        for t in ms {
            if init_segment(t, s) || (init_segment(s, t) && t[s.len()..].iter().all(|&x| m.contains(x))) {
                out.push(t.clone());
            }
        }
        return out;
    }
    if let Some(t) = f.prefix_member(s) {
        out.push(t);
    }
    f.extensions(s, &|x| m.contains(x), horizon, &mut out);
    out
}

/// Whether no member of `f` is comparable with `s` relative to `m`. Exact
/// for every family kind.
pub fn rejects(f: &FamilyDesc, s: &[u64], m: &Enumerator) -> bool {
    if f.prefix_member(s).is_some() {
        return false;
    }
    match f {
        FamilyDesc::Explicit(_) => comparables(s, m, f, 0).is_empty(),
        _ => {
            let ground = f.ground().expect("rule family");
            let Some(need) = f.missing(s) else { return true };
            let above = s.last().map_or(0, |&x| x + 1);
            let tail = m.tail_above(above.saturating_sub(1));
            let tail = if s.is_empty() { m.clone() } else { tail };
            if tail.meets_infinitely(ground) {
                return false;
            }
            // finitely many usable elements: they all lie below the joint period threshold
            let (t1, _) = tail.eventual_period();
            let (t2, _) = ground.eventual_period();
            let usable: Vec<u64> = tail.below(t1.max(t2)).into_iter().filter(|&x| ground.contains(x)).collect();
            if need == usize::MAX {
                // Schreier at the root: need some n with n more usable elements above it
                !usable.iter().enumerate().any(|(i, &n)| (usable.len() - i - 1) as u64 >= n)
            } else {
                usable.len() < need
            }
        }
    }
}

pub fn accepts(f: &FamilyDesc, s: &[u64], m: &Enumerator) -> bool {
    !rejects(f, s, m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Exact,
    /// Quantify over subsets of `M ∩ [0, horizon)` of size at least `q`
    /// (default `ceil(horizon / 4)`).
    Bounded { horizon: u64, q: Option<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub value: bool,
    pub approximate: bool,
}

/// Size of a largest subset of `pool` containing none of `sets`.
fn max_avoiding(pool: &[u64], sets: &[Vec<u64>]) -> usize {
    fn min_hitting(sets: &[Vec<u64>], removed: &mut BTreeSet<u64>, best: &mut usize) {
        if removed.len() >= *best {
            return;
        }
        match sets.iter().find(|s| s.iter().all(|x| !removed.contains(x))) {
            None => *best = removed.len(),
            Some(s) => {
                for &x in s {
                    removed.insert(x);
                    min_hitting(sets, removed, best);
                    removed.remove(&x);
                }
            }
        }
    }
    let mut best = pool.len();
    min_hitting(sets, &mut BTreeSet::new(), &mut best);
    pool.len() - best
}

/// Largest subset `b` of the increasing list `g` containing no set `t`
/// with `|t| = min(t) + 1`. Built greedily from the top.
fn max_avoiding_schreier(g: &[u64]) -> usize {
    let mut count = 0u64;
    for &n in g.iter().rev() {
        if count < n {
            count += 1;
        }
    }
    count as usize
}

/// Whether every infinite subset of `m` accepts `s`.
pub fn strongly_accepts(f: &FamilyDesc, s: &[u64], m: &Enumerator, mode: Mode) -> Result<Verdict, ForcingError> {
    if f.prefix_member(s).is_some() {
        return Ok(Verdict {
            value: true,
            approximate: !matches!(mode, Mode::Exact),
        });
    }
    match mode {
        Mode::Exact => {
            let value = match f {
                // an infinite subset of m can dodge one element of each finite difference t \ s
                FamilyDesc::Explicit(_) => false,
                FamilyDesc::Uniform { ground, .. } => {
                    f.missing(s).is_some() && m.almost_subset(ground)
                }
                FamilyDesc::Rule { .. } => return Err(ForcingError::ExactOnRule),
            };
            Ok(Verdict {
                value,
                approximate: false,
            })
        }
        Mode::Bounded { horizon, q } => {
            let q = q.unwrap_or_else(|| horizon.div_ceil(4) as usize);
            let pool = m.below(horizon);
            let lo = s.last().map_or(0, |&x| x + 1);
            let low = pool.iter().filter(|&&x| x < lo).count();
            let high: Vec<u64> = pool.iter().copied().filter(|&x| x >= lo).collect();
            let largest_rejecting = match f {
                FamilyDesc::Explicit(_) => {
                    let sets: Vec<Vec<u64>> = comparables(s, m, f, horizon)
                        .into_iter()
                        .map(|t| t[s.len()..].to_vec())
                        .filter(|d| d.iter().all(|&x| x < horizon))
                        .collect();
                    low + max_avoiding(&high, &sets)
                }
                _ => {
                    let ground = f.ground().expect("rule family");
                    let (g, other): (Vec<u64>, Vec<u64>) = high.iter().partition(|&&x| ground.contains(x));
                    let base = low + other.len();
                    match f.missing(s) {
                        None => pool.len(),
                        Some(usize::MAX) => base + max_avoiding_schreier(&g),
                        Some(need) => base + g.len().min(need - 1),
                    }
                }
            };
            Ok(Verdict {
                value: largest_rejecting < q,
                approximate: true,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Rejects,
    StronglyAccepts,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub outcome: Outcome,
    pub approximate: bool,
}

pub fn decides(f: &FamilyDesc, s: &[u64], m: &Enumerator, mode: Mode) -> Result<Decision, ForcingError> {
    if rejects(f, s, m) {
        return Ok(Decision {
            outcome: Outcome::Rejects,
            approximate: false,
        });
    }
    let v = strongly_accepts(f, s, m, mode)?;
    Ok(Decision {
        outcome: if v.value { Outcome::StronglyAccepts } else { Outcome::Undecided },
        approximate: v.approximate,
    })
}

/// An infinite `N ⊆ M` deciding every finite subset of `N ∩ [0, horizon)`.
pub fn refine_decides_subsets(f: &FamilyDesc, m: &Enumerator, horizon: u64) -> Result<Enumerator, ForcingError> {
    match f {
        FamilyDesc::Explicit(ms) => {
            let mut removed: BTreeSet<u64> = BTreeSet::new();
            let mut chosen: Vec<u64> = Vec::new();
            let settle = |p: &[u64], removed: &mut BTreeSet<u64>| {
                if f.prefix_member(p).is_some() {
                    return;
                }
                // shrink so that p is rejected: drop every extension that still fits
                for t in ms {
                    if t.len() > p.len() && init_segment(p, t) {
                        let d = &t[p.len()..];
                        if d.iter().all(|x| m.contains(*x) && !removed.contains(x)) {
                            removed.extend(d.iter().copied());
                        }
                    }
                }
            };
            settle(&[], &mut removed);
            let mut x = m.next_at_least(0);
            while x < horizon {
                if !removed.contains(&x) {
                    chosen.push(x);
                    for t in ms {
                        for l in 1..t.len() {
                            let p = &t[..l];
                            if p[l - 1] == x && p.iter().all(|y| chosen.binary_search(y).is_ok()) {
                                settle(p, &mut removed);
                            }
                        }
                    }
                }
                x = m.next_at_least(x + 1);
            }
            let Some(&top) = removed.iter().next_back() else {
                return Ok(m.clone());
            };
            let prefix: Vec<u64> = m.below(top + 1).into_iter().filter(|x| !removed.contains(x)).collect();
            Ok(Enumerator::prefixed(prefix, m.tail_above(top))?)
        }
        FamilyDesc::Uniform { ground, .. } => {
            if m.almost_subset(ground) {
                return Ok(m.clone());
            }
            // M \ ground is infinite and eventually periodic: keep one residue class of it
            let (t1, p1) = m.eventual_period();
            let (t2, p2) = ground.eventual_period();
            let t = t1.max(t2);
            let p = p1 * p2;
            let r = (t..t + p)
                .find(|&n| m.contains(n) && !ground.contains(n))
                .expect("M is not almost inside the ground set");
            Ok(Enumerator::residue(m.tail_above(t.saturating_sub(1)), p, r % p)?)
        }
        FamilyDesc::Rule { .. } => Err(ForcingError::ExactOnRule),
    }
}

/// Members `n` of `m` with `max(s) < n < horizon` such that `s ∪ {n}` is
/// no longer strongly accepted.
pub fn exceptional_extensions(f: &FamilyDesc, s: &[u64], m: &Enumerator, horizon: u64) -> Result<Vec<u64>, ForcingError> {
    let seq = Seq::new(s.to_vec())?;
    if !strongly_accepts(f, s, m, Mode::Exact)?.value {
        return Err(ForcingError::NotStronglyAccepted(seq));
    }
    let lo = s.last().map_or(0, |&x| x + 1);
    let mut out = Vec::new();
    for n in m.below(horizon).into_iter().filter(|&n| n >= lo) {
        let t = seq.push(n)?;
        if !strongly_accepts(f, &t, m, Mode::Exact)?.value {
            out.push(n);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontTree {
    pub horizon: u64,
    /// Every node with its rank, in depth-first order.
    pub nodes: Vec<(Seq, u64)>,
    pub rank: u64,
    /// The rank is a lower bound cut off by the horizon.
    pub truncated: bool,
}

/// The tree of initial segments of members inside `[0, horizon)`, ranked
/// bottom-up: leaves get 0, inner nodes one more than their largest child.
pub fn front_tree(f: &FamilyDesc, horizon: u64) -> FrontTree {
    fn walk(f: &FamilyDesc, s: &mut Vec<u64>, h: u64, nodes: &mut Vec<(Seq, u64)>) -> u64 {
        let idx = nodes.len();
        nodes.push((Seq::new(s.clone()).expect("increasing"), 0));
        let mut rank = 0;
        if !f.is_member(s) {
            let start = s.last().map_or(0, |&x| x + 1);
            for x in start..h {
                s.push(x);
                if f.is_node_below(s, h) {
                    rank = rank.max(walk(f, s, h, nodes) + 1);
                }
                s.pop();
            }
        }
        nodes[idx].1 = rank;
        rank
    }
    let mut nodes = Vec::new();
    let rank = if f.is_node_below(&[], horizon) {
        walk(f, &mut Vec::new(), horizon, &mut nodes)
    } else {
        0
    };
    let truncated = match f {
        FamilyDesc::Explicit(ms) => ms.iter().any(|m| m.last().is_some_and(|&x| x >= horizon)),
        FamilyDesc::Uniform { k, .. } => rank < *k as u64,
        FamilyDesc::Rule { .. } => true,
    };
    FrontTree {
        horizon,
        nodes,
        rank,
        truncated,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontRank {
    pub rank: u64,
    pub truncated: bool,
}

pub fn front_rank(f: &FamilyDesc, horizon: u64) -> FrontRank {
    let t = front_tree(f, horizon);
    FrontRank {
        rank: t.rank,
        truncated: t.truncated,
    }
}

/// `F_n = { s ⊆ ω \ (n+1) : {n} ∪ s ∈ F }`.
pub fn derived_front(f: &FamilyDesc, n: u64) -> Result<FamilyDesc, ForcingError> {
    if f.is_member(&[]) {
        return Err(ForcingError::TrivialFront);
    }
    Ok(match f {
        FamilyDesc::Explicit(ms) => FamilyDesc::Explicit(
            ms.iter()
                .filter(|t| t.first() == Some(&n))
                .map(|t| Seq::new(t[1..].to_vec()).expect("suffix of a set"))
                .collect(),
        ),
        FamilyDesc::Uniform { ground, k } if ground.contains(n) => FamilyDesc::Uniform {
            ground: ground.tail_above(n),
            k: k - 1,
        },
        FamilyDesc::Rule { ground, .. } if ground.contains(n) => FamilyDesc::Uniform {
            ground: ground.tail_above(n),
            k: n as usize,
        },
        _ => FamilyDesc::Explicit(Vec::new()),
    })
}

/// A colouring of finite sets of naturals given by a named rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetColouring {
    /// `sum mod m`
    SumMod(u64),
    /// `min mod m`
    MinMod(u64),
    /// `max mod m`
    MaxMod(u64),
    /// 1 iff `m` divides the sum
    SumDiv(u64),
    /// 1 iff two consecutive elements are less than `g` apart
    GapLt(u64),
    /// 1 iff every element is below `t`
    Below(u64),
    Const(usize),
    /// Explicit table on pairs from `{0, ..., n-1}`; bit `pair_index(i, j)` set means colour 1.
    Table { n: u64, bits: u64 },
}

/// Position of the pair `{i, j}`, `i < j`, in colex order.
pub fn pair_index(i: u64, j: u64) -> u64 {
    j * (j - 1) / 2 + i
}

impl SetColouring {
    pub fn colours(&self) -> usize {
        match self {
            SetColouring::SumMod(m) | SetColouring::MinMod(m) | SetColouring::MaxMod(m) => *m as usize,
            SetColouring::Const(c) => c + 1,
            _ => 2,
        }
    }

    pub fn colour(&self, s: &[u64]) -> usize {
        let sum: u64 = s.iter().sum();
        match self {
            SetColouring::SumMod(m) => (sum % m) as usize,
            SetColouring::MinMod(m) => (s.first().copied().unwrap_or(0) % m) as usize,
            SetColouring::MaxMod(m) => (s.last().copied().unwrap_or(0) % m) as usize,
            SetColouring::SumDiv(m) => usize::from(sum.is_multiple_of(*m)),
            SetColouring::GapLt(g) => usize::from(s.windows(2).any(|w| w[1] - w[0] < *g)),
            SetColouring::Below(t) => usize::from(s.iter().all(|&x| x < *t)),
            SetColouring::Const(c) => *c,
            SetColouring::Table { bits, .. } => match s {
                [i, j] => ((bits >> pair_index(*i, *j)) & 1) as usize,
                _ => 0,
            },
        }
    }

    pub fn pair(&self, x: u64, y: u64) -> usize {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        self.colour(&[a, b])
    }
}

impl FromStr for SetColouring {
    type Err = ForcingError;

    /// `sum-mod:<m> | min-mod:<m> | max-mod:<m> | sum-div:<m> | gap-lt:<g> | below:<t> | const:<c>`
    fn from_str(s: &str) -> Result<Self, ForcingError> {
        let err = || ForcingError::ColouringSpec(s.to_string());
        let (name, arg) = s.trim().split_once(':').ok_or_else(err)?;
        let v: u64 = arg.trim().parse().map_err(|_| err())?;
        let positive = |v: u64| if v == 0 { Err(err()) } else { Ok(v) };
        Ok(match name {
            "sum-mod" => SetColouring::SumMod(positive(v)?),
            "min-mod" => SetColouring::MinMod(positive(v)?),
            "max-mod" => SetColouring::MaxMod(positive(v)?),
            "sum-div" => SetColouring::SumDiv(positive(v)?),
            "gap-lt" => SetColouring::GapLt(v),
            "below" => SetColouring::Below(v),
            "const" => SetColouring::Const(v as usize),
            _ => return Err(err()),
        })
    }
}

impl fmt::Display for SetColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetColouring::SumMod(m) => write!(f, "sum-mod:{m}"),
            SetColouring::MinMod(m) => write!(f, "min-mod:{m}"),
            SetColouring::MaxMod(m) => write!(f, "max-mod:{m}"),
            SetColouring::SumDiv(m) => write!(f, "sum-div:{m}"),
            SetColouring::GapLt(g) => write!(f, "gap-lt:{g}"),
            SetColouring::Below(t) => write!(f, "below:{t}"),
            SetColouring::Const(c) => write!(f, "const:{c}"),
            SetColouring::Table { n, bits } => write!(f, "table:{n}:{bits:#x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NwOutcome {
    pub colour: usize,
    /// The homogeneous set inside `[0, horizon)`.
    pub prefix: Vec<u64>,
    pub members_checked: usize,
    pub horizon: u64,
}

/// Shrinks `points` so that, for every `s` of size `k - 1` inside the
/// result, membership of `s ∪ {n}` in the target family is the same for
/// all larger `n` in the result; then recurses on that decision.
/// Returns the final set and whether the empty set is strongly accepted.
fn homogenise(points: Vec<u64>, k: usize, inside: &dyn Fn(&[u64]) -> bool) -> (Vec<u64>, bool) {
    if k == 0 {
        return (points, inside(&[]));
    }
    if k == 1 {
        let (acc, rej): (Vec<u64>, Vec<u64>) = points.iter().partition(|&&n| inside(&[n]));
        return if acc.len() >= rej.len() { (acc, true) } else { (rej, false) };
    }
    let mut chosen: Vec<u64> = Vec::new();
    let mut reservoir = points;
    let mut decided: HashMap<Vec<u64>, bool> = HashMap::new();
    while !reservoir.is_empty() {
        let n = reservoir.remove(0);
        chosen.push(n);
        let before = chosen.len() - 1;
        for mut s in subsets_of_size(&chosen[..before], k - 2) {
            s.push(n);
            let (acc, rej): (Vec<u64>, Vec<u64>) = reservoir.iter().partition(|&&m| {
                let mut t = s.clone();
                t.push(m);
                inside(&t)
            });
            let accepted = acc.len() >= rej.len();
            reservoir = if accepted { acc } else { rej };
            decided.insert(s, accepted);
        }
    }
    homogenise(chosen, k - 1, &|s: &[u64]| decided.get(s).copied().unwrap_or(false))
}

pub fn subsets_of_size(xs: &[u64], k: usize) -> Vec<Vec<u64>> {
    fn go(xs: &[u64], k: usize, start: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..xs.len() {
            if xs.len() - i < k - cur.len() {
                break;
            }
            cur.push(xs[i]);
            go(xs, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(xs, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Bounded Nash-Williams: a colour `i` and a set `N ⊆ M ∩ [0, horizon)`
/// such that every member of `f` inside `N` has colour `i`. Colours are
/// handled one at a time, splitting `c⁻¹(i)` from the rest.
pub fn nash_williams_bounded(
    f: &FamilyDesc,
    colouring: &dyn Fn(&[u64]) -> usize,
    colours: usize,
    m: &Enumerator,
    horizon: u64,
) -> Result<NwOutcome, ForcingError> {
    if colours == 0 {
        return Err(ForcingError::Unsupported("need at least one colour".into()));
    }
    let (mut n, colour) = match f {
        FamilyDesc::Uniform { ground, k } => {
            let mut pts: Vec<u64> = m.below(horizon).into_iter().filter(|&x| ground.contains(x)).collect();
            let mut colour = colours - 1;
            for i in 0..colours - 1 {
                let (next, accepted) = homogenise(pts, *k, &|t: &[u64]| colouring(t) == i);
                pts = next;
                if pts.len() < *k {
                    return Err(ForcingError::HorizonTooSmall {
                        horizon,
                        detail: format!("only {} points left while splitting off colour {i}", pts.len()),
                    });
                }
                if accepted {
                    colour = i;
                    break;
                }
            }
            (pts, colour)
        }
        FamilyDesc::Explicit(_) => {
            let mut cur = m.clone();
            let mut colour = colours - 1;
            for i in 0..colours - 1 {
                let fi = FamilyDesc::Explicit(f.members_below(u64::MAX).into_iter().filter(|t| colouring(t) == i).collect());
                cur = refine_decides_subsets(&fi, &cur, horizon)?;
                if !rejects(&fi, &[], &cur) {
                    colour = i;
                    break;
                }
            }
            (cur.below(horizon), colour)
        }
        FamilyDesc::Rule { .. } => {
            return Err(ForcingError::Unsupported("the driver handles uniform and explicit families".into()))
        }
    };
    n.sort_unstable();
    let mut checked = 0;
    for t in members_within(f, &n) {
        checked += 1;
        if colouring(&t) != colour {
            return Err(ForcingError::HorizonTooSmall {
                horizon,
                detail: format!("verification found {t} with colour {}", colouring(&t)),
            });
        }
    }
    Ok(NwOutcome {
        colour,
        prefix: n,
        members_checked: checked,
        horizon,
    })
}

/// Members of `f` all of whose elements lie in the finite set `n`.
pub fn members_within(f: &FamilyDesc, n: &[u64]) -> Vec<Seq> {
    match f {
        FamilyDesc::Explicit(ms) => ms
            .iter()
            .filter(|t| t.iter().all(|x| n.binary_search(x).is_ok()))
            .cloned()
            .collect(),
        _ => {
            let pool = Enumerator::prefixed(n.to_vec(), Enumerator::All).ok();
            let top = n.last().map_or(0, |&x| x + 1);
            let mut out = Vec::new();
            if f.is_member(&[]) {
                out.push(Seq::empty());
            }
            if let Some(pool) = pool {
                f.extensions(&[], &|x| pool.contains(x) && x < top, top, &mut out);
            }
            out
        }
    }
}

/// A 2-colouring of the pairs of `{0, ..., n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairTable {
    pub n: u64,
    pub bits: u64,
}

impl PairTable {
    pub fn colour(&self, i: u64, j: u64) -> u8 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        ((self.bits >> pair_index(a, b)) & 1) as u8
    }

    pub fn ones(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for j in 1..self.n {
            for i in 0..j {
                if self.colour(i, j) == 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyOutcome {
    pub holds: bool,
    pub witness: Option<PairTable>,
    pub colourings_checked: u64,
}

/// Edge masks of every `size`-subset of `{0, ..., n-1}`.
fn clique_masks(n: u64, size: u64) -> Vec<u64> {
    let pts: Vec<u64> = (0..n).collect();
    subsets_of_size(&pts, size as usize)
        .into_iter()
        .map(|s| {
            let mut mask = 0u64;
            for (x, &j) in s.iter().enumerate() {
                for &i in &s[..x] {
                    mask |= 1 << pair_index(i, j);
                }
            }
            mask
        })
        .collect()
}

/// Whether every 2-colouring of pairs from `n` points has a 0-homogeneous
/// `beta`-set or a 1-homogeneous `gamma`-set; on failure, the least
/// counterexample in enumeration order.
pub fn ramsey_bruteforce(n: u64, beta: u64, gamma: u64, cap: u64) -> Result<RamseyOutcome, ForcingError> {
    if n > cap || n > 11 {
        return Err(ForcingError::CapExceeded { n, cap: cap.min(11) });
    }
    let edges = n * n.saturating_sub(1) / 2;
    let full = if edges == 64 { u64::MAX } else { (1u64 << edges) - 1 };
    let zero_masks = clique_masks(n, beta);
    let one_masks = clique_masks(n, gamma);
    // with beta = gamma, swapping colours maps counterexamples to
    // counterexamples, so the colour of {0, 1} may be fixed to 0
    let symmetric = beta == gamma && edges > 0;
    let count = if symmetric { 1u64 << (edges - 1) } else { 1u64 << edges };
    let step = if symmetric { 2 } else { 1 };
    let fails = |idx: u64| {
        let bits = idx * step;
        !zero_masks.iter().any(|&mk| bits & mk == 0) && !one_masks.iter().any(|&mk| bits & mk == mk)
    };
    let workers = std::thread::available_parallelism().map_or(1, |w| w.get()) as u64;
    let chunk = count.div_ceil(workers).max(1 << 12);
    // each worker reports its first counterexample; the lowest index wins
    let first = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..count)
            .step_by(chunk as usize)
            .map(|lo| {
                let fails = &fails;
                scope.spawn(move || (lo..(lo + chunk).min(count)).find(|&i| fails(i)))
            })
            .collect();
        handles.into_iter().filter_map(|h| h.join().expect("worker panicked")).min()
    });
    Ok(match first {
        Some(idx) => RamseyOutcome {
            holds: false,
            witness: Some(PairTable { n, bits: (idx * step) & full }),
            colourings_checked: idx + 1,
        },
        None => RamseyOutcome {
            holds: true,
            witness: None,
            colourings_checked: count,
        },
    })
}

/// The lexicographically least `size`-subset of `universe` all of whose
/// pairs get `colour`.
pub fn find_monochromatic(
    colouring: &dyn Fn(u64, u64) -> usize,
    universe: &[u64],
    size: usize,
    colour: usize,
) -> Option<Vec<u64>> {
    fn go(c: &dyn Fn(u64, u64) -> usize, u: &[u64], size: usize, colour: usize, start: usize, cur: &mut Vec<u64>) -> bool {
        if cur.len() == size {
            return true;
        }
        for i in start..u.len() {
            if u.len() - i < size - cur.len() {
                return false;
            }
            let x = u[i];
            if cur.iter().all(|&y| c(y, x) == colour) {
                cur.push(x);
                if go(c, u, size, colour, i + 1, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut u = universe.to_vec();
    u.sort_unstable();
    u.dedup();
    let mut cur = Vec::new();
    go(colouring, &u, size, colour, 0, &mut cur).then_some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u64]) -> Seq {
        Seq::new(v.to_vec()).unwrap()
    }

    fn fam(ms: &[&[u64]]) -> FamilyDesc {
        FamilyDesc::Explicit(ms.iter().map(|m| s(m)).collect())
    }

    fn evens_from_2() -> Enumerator {
        "arith:2,2".parse().unwrap()
    }

    #[test]
    fn init_segment_examples() {
        assert!(init_segment(&[1, 2], &[1, 2, 5]));
        assert!(init_segment(&[], &[3, 4]));
        assert!(!init_segment(&[1, 3], &[1, 2, 3]));
    }

    #[test]
    fn thinness() {
        assert!(is_thin(&fam(&[&[0, 1], &[0, 2]])));
        assert!(!is_thin(&fam(&[&[0], &[0, 1]])));
        assert!(is_thin(&FamilyDesc::trivial()));
        assert!(!is_thin(&fam(&[&[], &[3]])));
        assert!(is_thin(&FamilyDesc::Uniform { ground: Enumerator::All, k: 3 }));
    }

    #[test]
    fn comparables_examples() {
        let f = fam(&[&[0, 1]]);
        assert!(comparables(&[0], &evens_from_2(), &f, 50).is_empty());
        assert_eq!(comparables(&[0], &Enumerator::odds(), &f, 50), vec![s(&[0, 1])]);
        assert_eq!(comparables(&[0, 3], &Enumerator::All, &fam(&[&[0]]), 50), vec![s(&[0])]);
        let u = FamilyDesc::Uniform { ground: Enumerator::All, k: 2 };
        assert_eq!(comparables(&[3], &Enumerator::evens(), &u, 9).len(), 3);
    }

    #[test]
    fn accept_reject_examples() {
        let f = fam(&[&[0, 1]]);
        assert!(rejects(&f, &[0], &evens_from_2()));
        assert!(accepts(&f, &[0], &Enumerator::odds()));
        assert!(accepts(&fam(&[&[0]]), &[0, 3], &Enumerator::evens()));
    }

    #[test]
    fn strong_acceptance_examples() {
        let sa = |f: &FamilyDesc, s: &[u64], m: &Enumerator| strongly_accepts(f, s, m, Mode::Exact).unwrap().value;
        assert!(sa(&fam(&[&[0]]), &[0, 3], &Enumerator::evens()));
        assert!(!sa(&fam(&[&[0, 1]]), &[0], &Enumerator::All));
        assert!(sa(&fam(&[&[0]]), &[0], &Enumerator::All));
        let schreier = FamilyDesc::Rule { ground: Enumerator::All, rule: StoppingRule::Schreier };
        assert_eq!(strongly_accepts(&schreier, &[2], &Enumerator::All, Mode::Exact), Err(ForcingError::ExactOnRule));
    }

    #[test]
    fn decides_examples() {
        let d = |f: &FamilyDesc, s: &[u64], m: &Enumerator, mode| decides(f, s, m, mode).unwrap();
        assert_eq!(d(&fam(&[&[0, 1]]), &[0], &evens_from_2(), Mode::Exact).outcome, Outcome::Rejects);
        assert_eq!(d(&fam(&[&[0]]), &[0, 3], &Enumerator::All, Mode::Exact).outcome, Outcome::StronglyAccepts);
        let b = d(&fam(&[&[0, 1]]), &[0], &Enumerator::All, Mode::Bounded { horizon: 4, q: None });
        assert_eq!(b, Decision { outcome: Outcome::Undecided, approximate: true });
    }

    #[test]
    fn bounded_schreier_greedy_matches_brute_force() {
        for h in 1..12u64 {
            let g: Vec<u64> = (0..h).collect();
            let best = (0u32..1 << h)
                .filter(|mask| {
                    let b: Vec<u64> = g.iter().copied().filter(|&x| mask >> x & 1 == 1).collect();
                    !b.iter().enumerate().any(|(i, &n)| (b.len() - i - 1) as u64 >= n)
                })
                .map(|mask| mask.count_ones() as usize)
                .max()
                .unwrap();
            assert_eq!(max_avoiding_schreier(&g), best, "h = {h}");
        }
    }

    #[test]
    fn refine_examples() {
        let n = refine_decides_subsets(&fam(&[&[0, 1]]), &Enumerator::All, 30).unwrap();
        assert_eq!(n.below(8), vec![2, 3, 4, 5, 6, 7]);
        let n = refine_decides_subsets(&FamilyDesc::trivial(), &Enumerator::All, 30).unwrap();
        assert_eq!(n, Enumerator::All);
        let u = FamilyDesc::Uniform { ground: Enumerator::All, k: 2 };
        let n = refine_decides_subsets(&u, &Enumerator::All, 30).unwrap();
        for a in 0..6u64 {
            for b in a + 1..6 {
                for sub in [vec![], vec![a], vec![a, b]] {
                    assert_ne!(decides(&u, &sub, &n, Mode::Exact).unwrap().outcome, Outcome::Undecided);
                }
            }
        }
        // ground misses infinitely many points of M: keep a part of M outside it
        let u = FamilyDesc::Uniform { ground: Enumerator::evens(), k: 2 };
        let n = refine_decides_subsets(&u, &Enumerator::All, 30).unwrap();
        assert!(n.below(30).iter().all(|x| x % 2 == 1));
        assert_eq!(decides(&u, &[], &n, Mode::Exact).unwrap().outcome, Outcome::Rejects);
    }

    #[test]
    fn exceptional_examples() {
        assert!(exceptional_extensions(&fam(&[&[0]]), &[0], &Enumerator::All, 40).unwrap().is_empty());
        assert!(exceptional_extensions(&FamilyDesc::trivial(), &[], &Enumerator::All, 40).unwrap().is_empty());
        let u = FamilyDesc::Uniform { ground: Enumerator::All, k: 2 };
        assert!(exceptional_extensions(&u, &[5], &Enumerator::All, 40).unwrap().is_empty());
        assert!(exceptional_extensions(&fam(&[&[0, 1]]), &[0], &Enumerator::All, 40).is_err());
    }

    #[test]
    fn front_rank_examples() {
        let u2 = FamilyDesc::Uniform { ground: Enumerator::evens(), k: 2 };
        assert_eq!(front_rank(&u2, 20), FrontRank { rank: 2, truncated: false });
        assert_eq!(front_rank(&FamilyDesc::trivial(), 7).rank, 0);
        let sch = FamilyDesc::Rule { ground: Enumerator::All, rule: StoppingRule::Schreier };
        let r: Vec<u64> = (4..=12).map(|h| front_rank(&sch, h).rank).collect();
        assert!(r.windows(2).all(|w| w[0] <= w[1]));
        assert!(r.last() > r.first());
        assert!(front_rank(&sch, 9).truncated);
        assert_eq!(front_rank(&fam(&[&[0, 1], &[0, 2], &[3]]), 10).rank, 2);
    }

    #[test]
    fn derived_front_examples() {
        let a = Enumerator::odds();
        let u2 = FamilyDesc::Uniform { ground: a.clone(), k: 2 };
        let d = derived_front(&u2, 1).unwrap();
        assert_eq!(d, FamilyDesc::Uniform { ground: a.tail_above(1), k: 1 });
        assert_eq!(front_rank(&d, 20).rank, 1);
        let sch = FamilyDesc::Rule { ground: Enumerator::All, rule: StoppingRule::Schreier };
        let d0 = derived_front(&sch, 0).unwrap();
        assert!(d0.is_member(&[]));
        assert_eq!(front_rank(&d0, 10).rank, 0);
        let u3 = FamilyDesc::Uniform { ground: a.clone(), k: 3 };
        assert_eq!(front_rank(&derived_front(&u3, 1).unwrap(), 30).rank, 2);
        assert_eq!(derived_front(&FamilyDesc::trivial(), 0), Err(ForcingError::TrivialFront));
        assert_eq!(derived_front(&fam(&[&[0, 1], &[0, 2], &[1, 5]]), 0).unwrap(), fam(&[&[1], &[2]]));
    }

    #[test]
    fn nash_williams_examples() {
        let u1 = FamilyDesc::Uniform { ground: Enumerator::All, k: 1 };
        let c = SetColouring::SumMod(2);
        let out = nash_williams_bounded(&u1, &|t| c.colour(t), 2, &Enumerator::All, 50).unwrap();
        assert_eq!(out.prefix.len(), 25);
        assert!(out.prefix.iter().all(|x| (x % 2) as usize == out.colour));

        let u2 = FamilyDesc::Uniform { ground: Enumerator::All, k: 2 };
        let out = nash_williams_bounded(&u2, &|t| c.colour(t), 2, &Enumerator::All, 60).unwrap();
        assert_eq!(out.colour, 0);
        assert!(out.prefix.len() >= 8);
        let parity = out.prefix[0] % 2;
        assert!(out.prefix.iter().all(|x| x % 2 == parity));

        let out = nash_williams_bounded(&FamilyDesc::trivial(), &|_| 0, 2, &Enumerator::All, 10).unwrap();
        assert_eq!(out.colour, 0);
        assert_eq!(out.prefix, (0..10).collect::<Vec<_>>());

        let c3 = SetColouring::MaxMod(3);
        let out = nash_williams_bounded(&u2, &|t| c3.colour(t), 3, &Enumerator::All, 60).unwrap();
        assert!(out.prefix.len() >= 8);

        assert!(matches!(
            nash_williams_bounded(&u2, &|t| c.colour(t), 2, &Enumerator::All, 2),
            Err(ForcingError::HorizonTooSmall { .. })
        ));
    }

    #[test]
    fn ramsey_examples() {
        assert!(ramsey_bruteforce(6, 3, 3, 8).unwrap().holds);
        let r = ramsey_bruteforce(5, 3, 3, 8).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        let mut deg = [0; 5];
        for (i, j) in w.ones() {
            deg[i as usize] += 1;
            deg[j as usize] += 1;
        }
        assert_eq!(deg, [2; 5]);
        for n in 2..=5 {
            assert!(ramsey_bruteforce(n, 2, 2, 8).unwrap().holds);
        }
        assert!(!ramsey_bruteforce(1, 2, 2, 8).unwrap().holds);
        assert!(ramsey_bruteforce(9, 3, 3, 8).is_err());
    }

    #[test]
    fn find_monochromatic_examples() {
        let u: Vec<u64> = (0..5).collect();
        assert_eq!(find_monochromatic(&|_, _| 0, &u, 3, 0), Some(vec![0, 1, 2]));
        let pent = ramsey_bruteforce(5, 3, 3, 8).unwrap().witness.unwrap();
        let c = |i, j| pent.colour(i, j) as usize;
        assert_eq!(find_monochromatic(&c, &u, 3, 0), None);
        assert_eq!(find_monochromatic(&c, &u, 3, 1), None);
        let u: Vec<u64> = (0..10).collect();
        let sum = SetColouring::SumMod(2);
        assert_eq!(find_monochromatic(&|i, j| sum.pair(i, j), &u, 4, 0), Some(vec![0, 2, 4, 6]));
    }

    #[test]
    fn colouring_specs() {
        for spec in ["sum-mod:2", "min-mod:3", "max-mod:3", "sum-div:3", "gap-lt:5", "below:30", "const:0"] {
            let c: SetColouring = spec.parse().unwrap();
            assert_eq!(c.to_string(), spec);
        }
        assert!("sum-mod:0".parse::<SetColouring>().is_err());
        assert!("weird:1".parse::<SetColouring>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn enumerator() -> impl Strategy<Value = Enumerator> {
            prop_oneof![
                Just(Enumerator::All),
                (0u64..6, 1u64..4).prop_map(|(a, d)| Enumerator::arith(a, d).unwrap()),
                (proptest::collection::btree_set(0u64..10, 1..4), 0u64..3).prop_map(|(p, d)| {
                    let p: Vec<u64> = p.into_iter().collect();
                    let top = *p.last().unwrap();
                    Enumerator::prefixed(p, Enumerator::arith(top + 1 + d, 2).unwrap()).unwrap()
                }),
            ]
        }

        fn thin_family() -> impl Strategy<Value = FamilyDesc> {
            proptest::collection::vec(proptest::collection::btree_set(0u64..10, 1..4), 0..7).prop_map(|sets| {
                let mut ms: Vec<Seq> = Vec::new();
                for t in sets {
                    let t = Seq::new(t.into_iter().collect()).unwrap();
                    if ms.iter().all(|m| !init_segment(m, &t) && !init_segment(&t, m)) {
                        ms.push(t);
                    }
                }
                FamilyDesc::Explicit(ms)
            })
        }

        fn finite_set() -> impl Strategy<Value = Vec<u64>> {
            proptest::collection::btree_set(0u64..10, 0..3).prop_map(|s| s.into_iter().collect())
        }

        proptest! {
            #[test]
            fn heredity(f in thin_family(), s in finite_set(), m in enumerator(), modulus in 1u64..4, r in 0u64..4) {
                let Ok(n) = Enumerator::residue(m.clone(), modulus, r % modulus) else { return Ok(()) };
                if rejects(&f, &s, &m) {
                    prop_assert!(rejects(&f, &s, &n));
                }
                if strongly_accepts(&f, &s, &m, Mode::Exact).unwrap().value {
                    prop_assert!(strongly_accepts(&f, &s, &n, Mode::Exact).unwrap().value);
                }
            }

            #[test]
            fn tail_invariance(f in thin_family(), s in finite_set(), m in enumerator()) {
                let cut = s.last().copied().unwrap_or(0);
                let tail = m.tail_above(cut);
                if !s.is_empty() {
                    prop_assert_eq!(rejects(&f, &s, &m), rejects(&f, &s, &tail));
                    prop_assert_eq!(
                        strongly_accepts(&f, &s, &m, Mode::Exact).unwrap(),
                        strongly_accepts(&f, &s, &tail, Mode::Exact).unwrap()
                    );
                }
            }

            #[test]
            fn refine_decides_everything(f in thin_family(), m in enumerator()) {
                let n = refine_decides_subsets(&f, &m, 30).unwrap();
                let pts = n.below(30);
                prop_assert!(pts.iter().all(|&x| m.contains(x)));
                for size in 0..=4 {
                    for sub in subsets_of_size(&pts, size) {
                        prop_assert_ne!(decides(&f, &sub, &n, Mode::Exact).unwrap().outcome, Outcome::Undecided);
                    }
                }
            }

            #[test]
            fn uniform_analytics_match_explicit(k in 1usize..4, g in enumerator(), s in finite_set(), m in enumerator()) {
                let u = FamilyDesc::Uniform { ground: g.clone(), k };
                let h = 40;
                let e = FamilyDesc::Explicit(u.members_below(h));
                let lim = m.below(h);
                let m_cut = Enumerator::prefixed(lim.clone(), Enumerator::arith(h + 1000, 1).unwrap())
                    .unwrap_or(Enumerator::arith(h + 1000, 1).unwrap());
                // below the cut the uniform family and its explicit slice agree
                prop_assert_eq!(
                    comparables(&s, &m, &u, h).len(),
                    comparables(&s, &m_cut, &e, h).iter().filter(|t| t.iter().all(|&x| x < h)).count()
                );
            }

            #[test]
            fn derived_rank_descends(k in 1usize..4, g in enumerator(), n in 0u64..12) {
                let u = FamilyDesc::Uniform { ground: g.clone(), k };
                if g.contains(n) {
                    let d = derived_front(&u, n).unwrap();
                    let h = 40;
                    prop_assert!(front_rank(&d, h).rank < front_rank(&u, h).rank);
                }
            }
        }
    }
}
