//! Negative partition witnesses on countable ordinals below ω^ω: the
//! colouring comparing ordinal order with an enumeration order, and the
//! colouring splitting a sum β+γ into its two parts. Both come with
//! exhaustive audits over a finite slice of the domain.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forcing::{find_monochromatic, subsets_of_size};
use crate::ordinals::{omega_pow, Ordinal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColouringError {
    #[error("{0} is not below w^w")]
    TooLarge(Ordinal),
    #[error("{0} is finite: no bijection onto the naturals")]
    Finite(Ordinal),
    #[error("{0} is zero")]
    Zero(&'static str),
    #[error("pairs must consist of distinct points, got {0} twice")]
    SamePoint(Ordinal),
    #[error("{0} lies outside the materialised domain")]
    NotInDomain(Ordinal),
    #[error("audit expects a {0} colouring")]
    WrongKind(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainPoint {
    pub ordinal: Ordinal,
    /// Position among the slice in ordinal order.
    pub position: usize,
    /// Index under the enumeration `π: α → ω`.
    pub pi: u64,
}

/// Finite ordinal exponent of each CNF term, highest first.
fn coefficients(a: &Ordinal) -> Vec<(u64, u64)> {
    a.terms()
        .iter()
        .map(|(e, c)| (e.as_nat().expect("exponent below w"), *c))
        .collect()
}

fn from_coeffs(cs: &[u64]) -> Ordinal {
    // cs[0] is the coefficient of w^(len-1)
    let d = cs.len() as u64;
    let terms = cs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| (Ordinal::nat(d - 1 - i as u64), c))
        .collect();
    Ordinal::normalise(terms)
}

/// Members of stratum `d` below `alpha` whose largest coefficient is `h`,
/// in ordinal order.
fn shell(alpha: &Ordinal, d: u64, h: u64) -> Vec<Ordinal> {
    let len = d as usize + 1;
    let mut out = Vec::new();
    let mut cs = vec![0u64; len];
    loop {
        let lead_ok = d == 0 || cs[0] >= 1;
        if lead_ok && cs.iter().copied().max() == Some(h) {
            let x = from_coeffs(&cs);
            if x < *alpha {
                out.push(x);
            }
        }
        // odometer in lex order
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cs[i] < h {
                cs[i] += 1;
                for c in cs.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

struct Stratum {
    d: u64,
    h: u64,
    pending: std::collections::VecDeque<Ordinal>,
    /// Largest height worth trying for a finite stratum.
    limit: Option<u64>,
}

impl Stratum {
    fn next(&mut self, alpha: &Ordinal) -> Option<Ordinal> {
        while self.pending.is_empty() {
            if self.limit.is_some_and(|l| self.h > l) {
                return None;
            }
            self.pending = shell(alpha, self.d, self.h).into();
            self.h += 1;
        }
        self.pending.pop_front()
    }
}

/// The first `horizon` ordinals below `alpha` under `π`, which visits the
/// degree strata round-robin and each stratum by increasing largest
/// coefficient.
pub fn materialise_domain(alpha: &Ordinal, horizon: usize) -> Result<Vec<DomainPoint>, ColouringError> {
    if *alpha >= omega_pow(&Ordinal::omega()) {
        return Err(ColouringError::TooLarge(alpha.clone()));
    }
    let cs = coefficients(alpha);
    let top = cs.first().map_or(0, |&(e, _)| e);
    let maxc = cs.iter().map(|&(_, c)| c).max().unwrap_or(0);
    // the top stratum is finite exactly when alpha = w^top + n
    let top_finite = matches!(cs.as_slice(), [] | [(0, _)] | [(_, 1)] | [(_, 1), (0, _)]);
    let mut strata: Vec<Stratum> = (0..=top)
        .map(|d| Stratum {
            d,
            h: 0,
            pending: Default::default(),
            limit: (d == top && top_finite).then_some(maxc + 1),
        })
        .collect();
    let mut live: Vec<bool> = vec![true; strata.len()];
    let mut seq: Vec<Ordinal> = Vec::new();
    while seq.len() < horizon && live.iter().any(|&l| l) {
        for (i, st) in strata.iter_mut().enumerate() {
            if seq.len() >= horizon {
                break;
            }
            if live[i] {
                match st.next(alpha) {
                    Some(x) => seq.push(x),
                    None => live[i] = false,
                }
            }
        }
    }
    let mut pts: Vec<DomainPoint> = seq
        .into_iter()
        .enumerate()
        .map(|(pi, ordinal)| DomainPoint {
            ordinal,
            position: 0,
            pi: pi as u64,
        })
        .collect();
    pts.sort_by(|a, b| a.ordinal.cmp(&b.ordinal));
    for (i, p) in pts.iter_mut().enumerate() {
        p.position = i;
    }
    Ok(pts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum ColouringKind {
    Sierpinski { alpha: Ordinal },
    Decomposable { beta: Ordinal, gamma: Ordinal },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairColouring {
    #[serde(flatten)]
    pub kind: ColouringKind,
    pub horizon: usize,
    /// The materialised slice in ordinal order.
    pub domain: Vec<DomainPoint>,
}

pub fn sierpinski_colouring(alpha: &Ordinal, horizon: usize) -> Result<PairColouring, ColouringError> {
    if alpha.is_finite() {
        return Err(ColouringError::Finite(alpha.clone()));
    }
    Ok(PairColouring {
        kind: ColouringKind::Sierpinski { alpha: alpha.clone() },
        horizon,
        domain: materialise_domain(alpha, horizon)?,
    })
}

pub fn decomposable_colouring(beta: &Ordinal, gamma: &Ordinal, horizon: usize) -> Result<PairColouring, ColouringError> {
    if beta.is_zero() {
        return Err(ColouringError::Zero("beta"));
    }
    if gamma.is_zero() {
        return Err(ColouringError::Zero("gamma"));
    }
    Ok(PairColouring {
        kind: ColouringKind::Decomposable {
            beta: beta.clone(),
            gamma: gamma.clone(),
        },
        horizon,
        domain: materialise_domain(&beta.add(gamma), horizon)?,
    })
}

impl PairColouring {
    fn point(&self, x: &Ordinal) -> Result<&DomainPoint, ColouringError> {
        self.domain
            .binary_search_by(|p| p.ordinal.cmp(x))
            .map(|i| &self.domain[i])
            .map_err(|_| ColouringError::NotInDomain(x.clone()))
    }

    pub fn colour(&self, x: &Ordinal, y: &Ordinal) -> Result<u8, ColouringError> {
        if x == y {
            return Err(ColouringError::SamePoint(x.clone()));
        }
        match &self.kind {
            ColouringKind::Sierpinski { .. } => {
                let (px, py) = (self.point(x)?, self.point(y)?);
                Ok(u8::from((x < y) != (px.pi < py.pi)))
            }
            ColouringKind::Decomposable { beta, gamma } => {
                let alpha = beta.add(gamma);
                for p in [x, y] {
                    if *p >= alpha {
                        return Err(ColouringError::NotInDomain(p.clone()));
                    }
                }
                Ok(u8::from((x < beta) != (y < beta)))
            }
        }
    }

    /// Colour of two slice positions.
    pub fn colour_at(&self, i: usize, j: usize) -> u8 {
        self.colour(&self.domain[i].ordinal, &self.domain[j].ordinal)
            .expect("distinct slice points")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub kind: String,
    pub horizon: usize,
    pub checks_run: u64,
    pub violations: Vec<String>,
    /// Longest 1-monochromatic set in the slice (Sierpiński kind only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub longest_one_chain: Option<Vec<Ordinal>>,
}

fn mono(col: &PairColouring, s: &[u64], colour: u8) -> bool {
    s.iter()
        .enumerate()
        .all(|(a, &i)| s[a + 1..].iter().all(|&j| col.colour_at(i as usize, j as usize) == colour))
}

fn show(col: &PairColouring, s: &[u64]) -> String {
    let items: Vec<String> = s.iter().map(|&i| col.domain[i as usize].ordinal.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn symmetry_violations(col: &PairColouring, checks: &mut u64, out: &mut Vec<String>) {
    let n = col.domain.len();
    for i in 0..n {
        for j in i + 1..n {
            *checks += 1;
            if col.colour_at(i, j) != col.colour_at(j, i) {
                out.push(format!("asymmetric on {}", show(col, &[i as u64, j as u64])));
            }
        }
    }
}

/// Checks, for every subset of the slice with 2 to `max_size` points,
/// that 1-monochromatic means `π` decreases along ordinal order and
/// 0-monochromatic means it increases.
pub fn audit_sierpinski(col: &PairColouring, max_size: usize) -> Result<AuditReport, ColouringError> {
    if !matches!(col.kind, ColouringKind::Sierpinski { .. }) {
        return Err(ColouringError::WrongKind("sierpinski"));
    }
    let n = col.domain.len();
    let idx: Vec<u64> = (0..n as u64).collect();
    let pi = |i: u64| col.domain[i as usize].pi;
    let mut checks = 0;
    let mut violations = Vec::new();
    symmetry_violations(col, &mut checks, &mut violations);
    for size in 2..=max_size {
        for s in subsets_of_size(&idx, size) {
            checks += 1;
            let dec = s.windows(2).all(|w| pi(w[0]) > pi(w[1]));
            let inc = s.windows(2).all(|w| pi(w[0]) < pi(w[1]));
            if mono(col, &s, 1) != dec {
                violations.push(format!("1-mono vs pi-decreasing disagree on {}", show(col, &s)));
            }
            if mono(col, &s, 0) != inc {
                violations.push(format!("0-mono vs pi-increasing disagree on {}", show(col, &s)));
            }
        }
    }
    // longest strictly decreasing run of pi in ordinal order
    let mut best: Vec<usize> = vec![1; n];
    let mut prev: Vec<Option<usize>> = vec![None; n];
    for j in 0..n {
        for i in 0..j {
            if pi(i as u64) > pi(j as u64) && best[i] + 1 > best[j] {
                best[j] = best[i] + 1;
                prev[j] = Some(i);
            }
        }
    }
    let mut chain = Vec::new();
    if let Some(end) = (0..n).max_by_key(|&j| (best[j], std::cmp::Reverse(j))) {
        let mut cur = Some(end);
        while let Some(c) = cur {
            chain.push(c as u64);
            cur = prev[c];
        }
        chain.reverse();
    }
    checks += 1;
    let colour = |i: u64, j: u64| col.colour_at(i as usize, j as usize) as usize;
    if n > 0 && find_monochromatic(&colour, &idx, chain.len() + 1, 1).is_some() {
        violations.push(format!("a 1-monochromatic set longer than {} exists", chain.len()));
    }
    Ok(AuditReport {
        kind: "sierpinski".into(),
        horizon: col.horizon,
        checks_run: checks,
        violations,
        longest_one_chain: Some(chain.iter().map(|&i| col.domain[i as usize].ordinal.clone()).collect()),
    })
}

/// Checks every triple of the slice for a 1-monochromatic one, and every
/// subset of 2 to `max_size` points that is 0-monochromatic for lying on
/// one side of `beta`.
pub fn audit_decomposable(col: &PairColouring, max_size: usize) -> Result<AuditReport, ColouringError> {
    let ColouringKind::Decomposable { beta, .. } = &col.kind else {
        return Err(ColouringError::WrongKind("decomposable"));
    };
    let n = col.domain.len();
    let idx: Vec<u64> = (0..n as u64).collect();
    let mut checks = 0;
    let mut violations = Vec::new();
    symmetry_violations(col, &mut checks, &mut violations);
    for s in subsets_of_size(&idx, 3) {
        checks += 1;
        if mono(col, &s, 1) {
            violations.push(format!("1-monochromatic triple {}", show(col, &s)));
        }
    }
    for size in 2..=max_size {
        for s in subsets_of_size(&idx, size) {
            checks += 1;
            let below = s.iter().filter(|&&i| col.domain[i as usize].ordinal < *beta).count();
            if mono(col, &s, 0) && below != 0 && below != s.len() {
                violations.push(format!("0-monochromatic set {} straddles beta", show(col, &s)));
            }
        }
    }
    checks += 1;
    let colour = |i: u64, j: u64| col.colour_at(i as usize, j as usize) as usize;
    if let Some(w) = find_monochromatic(&colour, &idx, 3, 1) {
        violations.push(format!("search found 1-monochromatic triple {}", show(col, &w)));
    }
    Ok(AuditReport {
        kind: "decomposable".into(),
        horizon: col.horizon,
        checks_run: checks,
        violations,
        longest_one_chain: None,
    })
}
