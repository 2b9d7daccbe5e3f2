//! Strictly increasing sequences of naturals, enumerators of infinite sets,
//! and the rank maps of W(n) onto w^n and of W onto w^w.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinals::{omega_pow, Ordinal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("sequence is not strictly increasing: {0:?}")]
    NotIncreasing(Vec<u64>),
    #[error("expected length {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("enumeration index must be at least {base}, got {k}")]
    Index { k: u64, base: u64 },
    #[error("bad set spec {spec:?}: {msg}")]
    SetSpec { spec: String, msg: String },
    #[error("bad sequence literal {0:?}")]
    SeqLiteral(String),
}

/// A strictly increasing finite sequence; also stands for a finite subset
/// of the naturals listed in increasing order.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Seq(Vec<u64>);

impl Seq {
    pub fn new(v: Vec<u64>) -> Result<Self, SeqError> {
        if is_strictly_increasing(&v) {
            Ok(Seq(v))
        } else {
            Err(SeqError::NotIncreasing(v))
        }
    }

    pub fn empty() -> Self {
        Seq(Vec::new())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    /// The sequence followed by `n`; fails unless `n` exceeds the last entry.
    pub fn push(&self, n: u64) -> Result<Seq, SeqError> {
        let mut v = self.0.clone();
        v.push(n);
        Seq::new(v)
    }

    /// Union with another finite set, listed increasingly.
    pub fn union(&self, other: &[u64]) -> Seq {
        let mut v: Vec<u64> = self.0.iter().chain(other).copied().collect();
        v.sort_unstable();
        v.dedup();
        Seq(v)
    }
}

impl Deref for Seq {
    type Target = [u64];
    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl AsRef<[u64]> for Seq {
    fn as_ref(&self) -> &[u64] {
        &self.0
    }
}

impl TryFrom<Vec<u64>> for Seq {
    type Error = SeqError;
    fn try_from(v: Vec<u64>) -> Result<Self, SeqError> {
        Seq::new(v)
    }
}

impl From<Seq> for Vec<u64> {
    fn from(s: Seq) -> Vec<u64> {
        s.0
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Seq {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, SeqError> {
        let bad = || SeqError::SeqLiteral(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Ok(Seq::empty());
        }
        let v = inner
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Seq::new(v)
    }
}

pub fn is_strictly_increasing(v: &[u64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

pub fn concat<T: AsRef<[u64]>>(blocks: &[T]) -> Vec<u64> {
    blocks.iter().flat_map(|b| b.as_ref().iter().copied()).collect()
}

/// `max(s) < min(t)`, vacuously true when either side is empty.
pub fn less_seq(s: &[u64], t: &[u64]) -> bool {
    match (s.last(), t.first()) {
        (Some(a), Some(b)) => a < b,
        _ => true,
    }
}

/// Shorter sequences first, then lexicographic.
pub fn lenlex_cmp(s: &[u64], t: &[u64]) -> Ordering {
    s.len().cmp(&t.len()).then_with(|| s.cmp(t))
}

/// Running totals of block lengths, starting from `acc`.
pub fn acc_lengths<T: AsRef<[u64]>>(acc: u64, blocks: &[T]) -> Vec<u64> {
    let mut total = acc;
    blocks
        .iter()
        .map(|b| {
            total += b.as_ref().len() as u64;
            total
        })
        .collect()
}

/// `x1 y1 x2 y2 ...` with whichever list is longer contributing its tail.
pub fn interact<T: AsRef<[u64]>, U: AsRef<[u64]>>(xss: &[T], yss: &[U]) -> Vec<u64> {
    let mut out = Vec::new();
    let n = xss.len().max(yss.len());
    for i in 0..n {
        if let Some(x) = xss.get(i) {
            out.extend_from_slice(x.as_ref());
        }
        if let Some(y) = yss.get(i) {
            out.extend_from_slice(y.as_ref());
        }
    }
    out
}

/// An infinite set of naturals given by a finitely describable rule.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Enumerator {
    All,
    Arith { start: u64, step: u64 },
    /// The listed elements, then the members of `tail` above the last of them.
    Prefixed { prefix: Vec<u64>, tail: Box<Enumerator> },
    /// Members of `base` congruent to `residue` modulo `modulus`.
    Residue { base: Box<Enumerator>, modulus: u64, residue: u64 },
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Enumerator {
    pub fn arith(start: u64, step: u64) -> Result<Self, SeqError> {
        if step == 0 {
            return Err(SeqError::SetSpec {
                spec: format!("arith:{start},{step}"),
                msg: "step must be positive".into(),
            });
        }
        Ok(Enumerator::Arith { start, step })
    }

    pub fn evens() -> Self {
        Enumerator::Arith { start: 0, step: 2 }
    }

    pub fn odds() -> Self {
        Enumerator::Arith { start: 1, step: 2 }
    }

    pub fn prefixed(prefix: Vec<u64>, tail: Enumerator) -> Result<Self, SeqError> {
        if !is_strictly_increasing(&prefix) {
            return Err(SeqError::NotIncreasing(prefix));
        }
        if prefix.is_empty() {
            return Ok(tail);
        }
        Ok(Enumerator::Prefixed {
            prefix,
            tail: Box::new(tail),
        })
    }

    pub fn residue(base: Enumerator, modulus: u64, residue: u64) -> Result<Self, SeqError> {
        let spec_text = format!("mod:{modulus},{residue};{base}");
        let spec = || spec_text.clone();
        if modulus == 0 || residue >= modulus {
            return Err(SeqError::SetSpec {
                spec: spec(),
                msg: "need 0 <= residue < modulus".into(),
            });
        }
        let e = Enumerator::Residue {
            base: Box::new(base),
            modulus,
            residue,
        };
        let (t, p) = e.eventual_period();
        if !(t..t + p).any(|n| e.contains(n)) {
            return Err(SeqError::SetSpec {
                spec: spec(),
                msg: "filter leaves only finitely many elements".into(),
            });
        }
        Ok(e)
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            Enumerator::All => true,
            Enumerator::Arith { start, step } => n >= *start && (n - start).is_multiple_of(*step),
            Enumerator::Prefixed { prefix, tail } => {
                prefix.binary_search(&n).is_ok()
                    || (n > *prefix.last().expect("nonempty prefix") && tail.contains(n))
            }
            Enumerator::Residue {
                base,
                modulus,
                residue,
            } => n % modulus == *residue && base.contains(n),
        }
    }

    /// Least member that is at least `n`.
    pub fn next_at_least(&self, n: u64) -> u64 {
        match self {
            Enumerator::All => n,
            Enumerator::Arith { start, step } => {
                if n <= *start {
                    *start
                } else {
                    start + (n - start).div_ceil(*step) * step
                }
            }
            Enumerator::Prefixed { prefix, tail } => {
                let last = *prefix.last().expect("nonempty prefix");
                match prefix.iter().find(|&&p| p >= n) {
                    Some(&p) => p,
                    None => tail.next_at_least(n.max(last + 1)),
                }
            }
            Enumerator::Residue {
                base,
                modulus,
                residue,
            } => {
                let mut x = base.next_at_least(n);
                while x % modulus != *residue {
                    x = base.next_at_least(x + 1);
                }
                x
            }
        }
    }

    /// Zero-based enumeration: `nth0(0)` is the least member.
    pub fn nth0(&self, k: u64) -> u64 {
        match self {
            Enumerator::All => k,
            Enumerator::Arith { start, step } => start + k * step,
            _ => self.iter().nth(k as usize).expect("infinite set"),
        }
    }

    pub fn iter(&self) -> EnumIter<'_> {
        EnumIter { e: self, next: 0 }
    }

    /// Members strictly below `h`.
    pub fn below(&self, h: u64) -> Vec<u64> {
        self.iter().take_while(|&n| n < h).collect()
    }

    /// Members strictly above `x`, as an enumerator of the same shape.
    pub fn tail_above(&self, x: u64) -> Enumerator {
        match self {
            Enumerator::All => Enumerator::Arith {
                start: x + 1,
                step: 1,
            },
            Enumerator::Arith { step, .. } => Enumerator::Arith {
                start: self.next_at_least(x + 1),
                step: *step,
            },
            Enumerator::Prefixed { prefix, tail } => {
                let rest: Vec<u64> = prefix.iter().copied().filter(|&p| p > x).collect();
                let last = *prefix.last().expect("nonempty prefix");
                let t = tail.tail_above(x.max(last));
                Enumerator::prefixed(rest, t).expect("sub-sequence stays increasing")
            }
            Enumerator::Residue {
                base,
                modulus,
                residue,
            } => Enumerator::Residue {
                base: Box::new(base.tail_above(x)),
                modulus: *modulus,
                residue: *residue,
            },
        }
    }

    /// `(t, p)` such that for every `n >= t`, `n` is a member iff `n + p` is.
    pub fn eventual_period(&self) -> (u64, u64) {
        match self {
            Enumerator::All => (0, 1),
            Enumerator::Arith { start, step } => (*start, *step),
            Enumerator::Prefixed { prefix, tail } => {
                let (t, p) = tail.eventual_period();
                (t.max(prefix.last().expect("nonempty prefix") + 1), p)
            }
            Enumerator::Residue { base, modulus, .. } => {
                let (t, p) = base.eventual_period();
                (t, lcm(p, *modulus))
            }
        }
    }

    /// Whether all but finitely many members of `self` lie in `other`.
    pub fn almost_subset(&self, other: &Enumerator) -> bool {
        let (t1, p1) = self.eventual_period();
        let (t2, p2) = other.eventual_period();
        let (t, p) = (t1.max(t2), lcm(p1, p2));
        (t..t + p).all(|n| !self.contains(n) || other.contains(n))
    }

    /// Whether `self` and `other` share infinitely many members.
    pub fn meets_infinitely(&self, other: &Enumerator) -> bool {
        let (t1, p1) = self.eventual_period();
        let (t2, p2) = other.eventual_period();
        let (t, p) = (t1.max(t2), lcm(p1, p2));
        (t..t + p).any(|n| self.contains(n) && other.contains(n))
    }
}

pub struct EnumIter<'a> {
    e: &'a Enumerator,
    next: u64,
}

impl Iterator for EnumIter<'_> {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        let x = self.e.next_at_least(self.next);
        self.next = x + 1;
        Some(x)
    }
}

/// The `k`-th member of `e`, counting from `base` (1 in the default convention).
pub fn enum_nth(e: &Enumerator, k: u64, base: u64) -> Result<u64, SeqError> {
    if k < base {
        return Err(SeqError::Index { k, base });
    }
    Ok(e.nth0(k - base))
}

impl fmt::Display for Enumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Enumerator::All => write!(f, "all"),
            Enumerator::Arith { start: 0, step: 2 } => write!(f, "evens"),
            Enumerator::Arith { start: 1, step: 2 } => write!(f, "odds"),
            Enumerator::Arith { start, step } => write!(f, "arith:{start},{step}"),
            Enumerator::Prefixed { prefix, tail } => {
                let items: Vec<String> = prefix.iter().map(u64::to_string).collect();
                write!(f, "list:{};{tail}", items.join(","))
            }
            Enumerator::Residue {
                base,
                modulus,
                residue,
            } => write!(f, "mod:{modulus},{residue};{base}"),
        }
    }
}

impl FromStr for Enumerator {
    type Err = SeqError;

    /// `all | evens | odds | arith:<start>,<step> | list:<a1>,...;<spec> | mod:<m>,<r>;<spec>`
    fn from_str(s: &str) -> Result<Self, SeqError> {
        let spec: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |msg: &str| SeqError::SetSpec {
            spec: s.to_string(),
            msg: msg.to_string(),
        };
        let nats = |t: &str| -> Result<Vec<u64>, SeqError> {
            t.split(',')
                .map(|x| x.parse::<u64>().map_err(|_| err("expected naturals")))
                .collect()
        };
        match spec.as_str() {
            "all" => return Ok(Enumerator::All),
            "evens" => return Ok(Enumerator::evens()),
            "odds" => return Ok(Enumerator::odds()),
            _ => {}
        }
        if let Some(rest) = spec.strip_prefix("arith:") {
            match nats(rest)?.as_slice() {
                [a, d] => return Enumerator::arith(*a, *d),
                _ => return Err(err("arith takes <start>,<step>")),
            }
        }
        if let Some(rest) = spec.strip_prefix("list:") {
            let (items, tail) = rest.split_once(';').ok_or_else(|| err("list needs ';<tail spec>'"))?;
            let prefix = if items.is_empty() { Vec::new() } else { nats(items)? };
            let tail: Enumerator = tail.parse()?;
            return Enumerator::prefixed(prefix, tail).map_err(|_| err("list must be increasing"));
        }
        if let Some(rest) = spec.strip_prefix("mod:") {
            let (mr, base) = rest.split_once(';').ok_or_else(|| err("mod needs ';<base spec>'"))?;
            match nats(mr)?.as_slice() {
                [m, r] => return Enumerator::residue(base.parse()?, *m, *r),
                _ => return Err(err("mod takes <modulus>,<residue>")),
            }
        }
        Err(err("unknown rule"))
    }
}

/// Rank of `s` in W(n) under the lexicographic order, as an ordinal below w^n.
pub fn w_rank(s: &[u64], n: usize) -> Result<Ordinal, SeqError> {
    if s.len() != n {
        return Err(SeqError::Length {
            expected: n,
            got: s.len(),
        });
    }
    if !is_strictly_increasing(s) {
        return Err(SeqError::NotIncreasing(s.to_vec()));
    }
    let terms = s
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = if i == 0 { x } else { x - s[i - 1] - 1 };
            (Ordinal::nat((n - 1 - i) as u64), f)
        })
        .collect();
    Ok(Ordinal::normalise(terms))
}

/// Rank of `s` in W ordered by length then lexicographically.
pub fn ww_rank(s: &[u64]) -> Result<Ordinal, SeqError> {
    let n = s.len();
    let offset = (0..n as u64).fold(Ordinal::zero(), |acc, i| acc.add(&omega_pow(&Ordinal::nat(i))));
    Ok(offset.add(&w_rank(s, n)?))
}
