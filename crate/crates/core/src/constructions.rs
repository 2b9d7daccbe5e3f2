//! Explicit witnesses: Specker's sets of pairs, Larson's construction of
//! `m` sequences pairwise of one form, and the block families whose
//! elements sit in order inside each length stratum.
//!
//! Every construction is checked by the classifiers in [`crate::forms`]
//! before it is returned.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::{classify_form, classify_form_u};
use crate::seqcore::{enum_nth, less_seq, lenlex_cmp, w_rank, Enumerator, Seq};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("verification failed: {}", .0.join("; "))]
    Verification(Vec<String>),
}

/// Draws consecutive positive members of `N`, each above everything drawn
/// before. Zero is never drawn: a drawn value may be used as a block length.
struct Drawer<'a> {
    n: &'a Enumerator,
    floor: u64,
}

impl<'a> Drawer<'a> {
    fn new(n: &'a Enumerator) -> Self {
        Drawer { n, floor: 1 }
    }

    fn take(&mut self, count: u64) -> Vec<u64> {
        (0..count)
            .map(|_| {
                let x = self.n.next_at_least(self.floor);
                self.floor = x + 1;
                x
            })
            .collect()
    }
}

fn subset_of(xs: &[u64], n: &Enumerator) -> bool {
    xs.iter().all(|&x| n.contains(x))
}

/// `m` pairs from `N` all of whose 2-subsets have form `k < 4`.
pub fn specker_mk(k: u8, m: usize, n: &Enumerator) -> Result<Vec<(u64, u64)>, ConstructionError> {
    let e = |i: usize| n.nth0(i as u64);
    let pairs: Vec<(u64, u64)> = match k {
        0 => (0..m).map(|i| (e(2 * i), e(2 * i + 1))).collect(),
        1 => (0..m).map(|i| (e(i), e(m + i))).collect(),
        2 => (0..m).map(|i| (e(i), e(2 * m - 1 - i))).collect(),
        3 => (0..m).map(|i| (e(0), e(i + 1))).collect(),
        _ => return Err(ConstructionError::Parameter(format!("form {k} is not below 4"))),
    };
    let mut bad = Vec::new();
    for (i, &x) in pairs.iter().enumerate() {
        for &y in &pairs[i + 1..] {
            match classify_form_u(x, y) {
                Ok(Some(f)) if f.form == k && subset_of(&f.scheme, n) => {}
                other => bad.push(format!("{x:?},{y:?}: {other:?}")),
            }
        }
    }
    if bad.is_empty() {
        Ok(pairs)
    } else {
        Err(ConstructionError::Verification(bad))
    }
}

/// Cantor pairing.
pub fn cantor_pair(i: u64, j: u64) -> u64 {
    (i + j) * (i + j + 1) / 2 + j
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeckerXAudit {
    pub pairs_checked: usize,
    pub forms: BTreeMap<u8, usize>,
    pub lex_matches_rank: bool,
}

/// The members of `X = {(n_{2i}, n_{2 pair(i,j) + 1})}` with Cantor index
/// below `count`, listed in lexicographic order, with the pair audit.
pub fn specker_x(n: &Enumerator, count: usize) -> Result<(Vec<(u64, u64)>, SpeckerXAudit), ConstructionError> {
    let mut pairs = Vec::with_capacity(count);
    'outer: for s in 0u64.. {
        for j in 0..=s {
            if pairs.len() == count {
                break 'outer;
            }
            let i = s - j;
            pairs.push((n.nth0(2 * i), n.nth0(2 * cantor_pair(i, j) + 1)));
        }
    }
    pairs.sort_unstable();

    let mut bad = Vec::new();
    let mut forms = BTreeMap::new();
    let mut checked = 0;
    for (a, &x) in pairs.iter().enumerate() {
        for &y in &pairs[a + 1..] {
            checked += 1;
            match classify_form_u(x, y) {
                Ok(Some(f)) if subset_of(&f.scheme, n) => *forms.entry(f.form).or_insert(0) += 1,
                other => bad.push(format!("{x:?},{y:?}: {other:?}")),
            }
        }
    }
    let mut seconds: Vec<u64> = pairs.iter().map(|p| p.1).collect();
    seconds.sort_unstable();
    seconds.dedup();
    if seconds.len() != pairs.len() {
        bad.push("second coordinates repeat".into());
    }
    if pairs.iter().any(|p| seconds.binary_search(&p.0).is_ok()) {
        bad.push("a first coordinate is also a second coordinate".into());
    }
    let ranks: Vec<_> = pairs
        .iter()
        .map(|&(a, b)| w_rank(&[a, b], 2).expect("increasing pair"))
        .collect();
    let lex_matches_rank = ranks.windows(2).all(|w| w[0] < w[1]);
    if !lex_matches_rank {
        bad.push("lexicographic order disagrees with rank".into());
    }
    if !bad.is_empty() {
        return Err(ConstructionError::Verification(bad));
    }
    Ok((
        pairs,
        SpeckerXAudit {
            pairs_checked: checked,
            forms,
            lex_matches_rank,
        },
    ))
}

/// Blocks of the single-form construction. `a[i][j]` is `a^{i+1}_{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma37State {
    pub k: usize,
    pub d: Vec<Seq>,
    pub a: Vec<Vec<Seq>>,
    /// Blocks as `(i, j, block)` in the order they were drawn (1-based indices).
    pub schedule: Vec<(usize, usize, Seq)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma37Output {
    pub l: usize,
    pub state: Lemma37State,
    pub m_set: Vec<Seq>,
    pub pairs_checked: usize,
    /// Whether every scheme starts above the `l`-th member of `N`.
    pub schemes_above_nth_l: bool,
}

fn seq(v: Vec<u64>) -> Seq {
    Seq::new(v).expect("drawn in increasing order")
}

/// Runs the single-form block schedule for `l = 2k-1` or `l = 2k`.
pub fn larson_37_state(n: &Enumerator, m: usize, k: usize) -> Lemma37State {
    let mut dr = Drawer::new(n);
    let mut d = Vec::with_capacity(m);
    let mut a: Vec<Vec<Seq>> = vec![Vec::with_capacity(k + 1); m];
    let mut schedule = Vec::new();
    for i in 0..m {
        let di = dr.take(k as u64 + 1);
        let a1 = seq(dr.take(di[0]));
        schedule.push((i + 1, 1, a1.clone()));
        a[i].push(a1);
        d.push(seq(di));
    }
    let len = |d: &Seq, j: usize| d[j] - d[j - 1];
    for j in 1..k {
        for i in 0..m {
            let b = seq(dr.take(len(&d[i], j)));
            schedule.push((i + 1, j + 1, b.clone()));
            a[i].push(b);
        }
    }
    for i in (0..m).rev() {
        let b = seq(dr.take(len(&d[i], k)));
        schedule.push((i + 1, k + 1, b.clone()));
        a[i].push(b);
    }
    Lemma37State { k, d, a, schedule }
}

/// An `m`-element set all of whose pairs have form `l` with schemes inside `N`.
pub fn larson_37(n: &Enumerator, m: usize, l: usize) -> Result<Lemma37Output, ConstructionError> {
    if l == 0 {
        return Err(ConstructionError::Parameter("l must be positive".into()));
    }
    let k = l.div_ceil(2);
    let state = larson_37_state(n, m, k);
    let width = if l % 2 == 1 { k } else { k + 1 };
    let m_set: Vec<Seq> = state
        .a
        .iter()
        .map(|row| seq(row[..width].iter().flat_map(|b| b.iter().copied()).collect()))
        .collect();
    verify_37(n, l, state, m_set)
}

fn verify_37(n: &Enumerator, l: usize, state: Lemma37State, m_set: Vec<Seq>) -> Result<Lemma37Output, ConstructionError> {
    let mut bad = Vec::new();
    for row in &state.a {
        if row.iter().any(|b| b.is_empty()) {
            bad.push("empty block".into());
        }
    }
    for (i, row) in state.a.iter().enumerate() {
        for (j, blk) in row.iter().enumerate().take(state.k) {
            for row2 in &state.a {
                for blk2 in row2.iter().take(j) {
                    if !less_seq(blk2, blk) {
                        bad.push(format!("block order fails below a^{}_{}", i + 1, j + 1));
                    }
                }
            }
        }
    }
    let nth_l = enum_nth(n, l as u64, 1).expect("l >= 1");
    let mut above = true;
    let mut checked = 0;
    for (i, x) in m_set.iter().enumerate() {
        for y in &m_set[i + 1..] {
            checked += 1;
            match classify_form(x, y) {
                Ok(Some(f)) if f.form == l => {
                    let z = f.scheme.expect("positive form has a scheme");
                    if !subset_of(&z, n) {
                        bad.push(format!("scheme of {x},{y} leaves N"));
                    }
                    above &= z[0] > nth_l;
                }
                other => bad.push(format!("{x},{y}: expected form {l}, got {:?}", other.map(|o| o.map(|f| f.form)))),
            }
        }
    }
    if !bad.is_empty() {
        return Err(ConstructionError::Verification(bad));
    }
    Ok(Lemma37Output {
        l,
        state,
        m_set,
        pairs_checked: checked,
        schemes_above_nth_l: above,
    })
}

/// Reruns the single-form checks on a possibly altered output.
pub fn reverify_37(n: &Enumerator, out: Lemma37Output) -> Result<Lemma37Output, ConstructionError> {
    verify_37(n, out.l, out.state, out.m_set)
}

pub const LEMMA38_ORDER: &str = "j-major, then k, then i";

/// The families `d^j`, `a_j`, `b(i,j,k)`. Here `d^j = (d^j_0, ..., d^j_j)`
/// with `|a_j| = d^j_0` and `|b(i,j,k)| = d^j_i - d^j_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma38Families {
    pub jmax: usize,
    pub kmax: usize,
    pub d: Vec<Seq>,
    pub a: Vec<Seq>,
    pub b: BTreeMap<(usize, usize, usize), Seq>,
    pub order: String,
}

pub fn larson_38_generate(n: &Enumerator, jmax: usize, kmax: usize) -> Result<Lemma38Families, ConstructionError> {
    if jmax > kmax {
        return Err(ConstructionError::Parameter(format!("jmax {jmax} exceeds kmax {kmax}")));
    }
    let mut dr = Drawer::new(n);
    let mut fam = Lemma38Families {
        jmax,
        kmax,
        d: Vec::new(),
        a: Vec::new(),
        b: BTreeMap::new(),
        order: LEMMA38_ORDER.into(),
    };
    for j in 1..=jmax {
        let dj = seq(dr.take(j as u64 + 1));
        fam.a.push(seq(dr.take(dj[0])));
        for k in j..=kmax {
            for i in 1..=j {
                fam.b.insert((i, j, k), seq(dr.take(dj[i] - dj[i - 1])));
            }
        }
        fam.d.push(dj);
    }
    Ok(fam)
}

/// Index tuples `j < k_1 < ... < k_j <= kmax` in lexicographic order.
fn tuples(j: usize, kmax: usize) -> Vec<Vec<usize>> {
    fn go(lo: usize, left: usize, kmax: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in lo..=kmax {
            cur.push(k);
            go(k + 1, left - 1, kmax, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(j + 1, j, kmax, &mut Vec::new(), &mut out);
    out
}

/// The elements `a_j * b(1,j,k_1) * ... * b(j,j,k_j)` keyed by their index tuple.
pub fn larson_38_elements(fam: &Lemma38Families, j: usize) -> Result<Vec<(Vec<usize>, Seq)>, ConstructionError> {
    if j == 0 || j > fam.jmax {
        return Err(ConstructionError::Parameter(format!("j must lie in 1..={}", fam.jmax)));
    }
    tuples(j, fam.kmax)
        .into_iter()
        .map(|t| {
            let mut v = fam.a[j - 1].to_vec();
            for (i, &k) in t.iter().enumerate() {
                v.extend_from_slice(&fam.b[&(i + 1, j, k)]);
            }
            Seq::new(v)
                .map(|s| (t, s))
                .map_err(|e| ConstructionError::Verification(vec![e.to_string()]))
        })
        .collect()
}

/// Whether index-tuple order and sequence order agree on every pair.
pub fn verify_order_embedding(elems: &[(Vec<usize>, Seq)]) -> bool {
    elems.iter().all(|(t, x)| {
        elems
            .iter()
            .all(|(u, y)| t.cmp(u) == lenlex_cmp(x, y))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossPair {
    pub j: usize,
    pub r: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub form: usize,
}

/// Classifies every pair drawn from two different families `j < r`.
pub fn larson_38_classify_pairs(fam: &Lemma38Families, n: &Enumerator) -> Result<Vec<CrossPair>, ConstructionError> {
    let elems: Vec<_> = (1..=fam.jmax)
        .map(|j| larson_38_elements(fam, j))
        .collect::<Result<_, _>>()?;
    let mut report = Vec::new();
    let mut bad = Vec::new();
    for j in 1..=fam.jmax {
        for r in j + 1..=fam.jmax {
            for (t, x) in &elems[j - 1] {
                for (u, y) in &elems[r - 1] {
                    match classify_form(x, y) {
                        Ok(Some(f)) if (1..=2 * j + 1).contains(&f.form) => {
                            if !subset_of(f.scheme.as_deref().unwrap_or(&[]), n) {
                                bad.push(format!("scheme of {x},{y} leaves N"));
                            }
                            report.push(CrossPair {
                                j,
                                r,
                                x: t.clone(),
                                y: u.clone(),
                                form: f.form,
                            });
                        }
                        other => bad.push(format!("{x},{y}: {:?}", other.map(|o| o.map(|f| f.form)))),
                    }
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(report)
    } else {
        Err(ConstructionError::Verification(bad))
    }
}
