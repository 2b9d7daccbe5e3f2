//! Forms of pairs and their interaction schemes: the four forms of pairs of
//! pairs, and the general forms of pairs of increasing sequences.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seqcore::{acc_lengths, concat, interact, is_strictly_increasing, Seq};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("a pair needs two distinct members")]
    SameMember,
    #[error("{0:?} is not an increasing pair")]
    NotAPair((u64, u64)),
    #[error("form 0 has no interaction scheme")]
    FormZero,
    #[error("pair has form {got:?}, not {expected}")]
    Mismatch { expected: usize, got: Option<usize> },
}

/// Form and scheme of a pair of increasing pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormU {
    pub form: u8,
    pub scheme: Vec<u64>,
}

/// Form of `{x, y}` for increasing pairs `x = (a, b)`, `y = (c, d)`.
/// Returns `None` for coincidences that match no pattern.
pub fn classify_form_u(x: (u64, u64), y: (u64, u64)) -> Result<Option<FormU>, FormError> {
    for p in [x, y] {
        if p.0 >= p.1 {
            return Err(FormError::NotAPair(p));
        }
    }
    if x == y {
        return Err(FormError::SameMember);
    }
    let ((a, b), (c, d)) = if x <= y { (x, y) } else { (y, x) };
    let form = if a == c {
        3
    } else if b < c {
        0
    } else if c < b && b < d {
        1
    } else if d < b {
        2
    } else {
        return Ok(None);
    };
    let mut scheme = vec![a, b, c, d];
    scheme.sort_unstable();
    scheme.dedup();
    Ok(Some(FormU { form, scheme }))
}

/// A classified pair. For positive forms, `a_blocks` split the shorter
/// member and `b_blocks` the longer one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormData {
    pub form: usize,
    pub k: usize,
    pub a_blocks: Vec<Seq>,
    pub b_blocks: Vec<Seq>,
    pub c: Seq,
    pub d: Seq,
    pub scheme: Option<Seq>,
}

type Blocks = Vec<Vec<u64>>;

fn first_of(blocks: &[Vec<u64>]) -> Option<u64> {
    blocks.iter().find_map(|b| b.first().copied())
}

fn last_of(blocks: &[Vec<u64>]) -> Option<u64> {
    blocks.iter().rev().find_map(|b| b.last().copied())
}

/// `concat(s) < concat(t)` in the sense of [`crate::seqcore::less_seq`].
fn blocks_less(s: &[Vec<u64>], t: &[Vec<u64>]) -> bool {
    match (last_of(s), first_of(t)) {
        (Some(a), Some(b)) => a < b,
        _ => true,
    }
}

/// Every `(us, vs)` derivable by the merge rules from `as_` and `bs`.
pub fn merge_all(as_: &[Vec<u64>], bs: &[Vec<u64>]) -> Vec<(Blocks, Blocks)> {
    let mut out = Vec::new();
    if bs.is_empty() {
        if as_.is_empty() {
            out.push((Vec::new(), Vec::new()));
        } else {
            out.push((vec![concat(as_)], Vec::new()));
        }
        return out;
    }
    if as_.is_empty() {
        return out;
    }
    for i in 1..=as_.len() {
        let (a1, a2) = as_.split_at(i);
        // a1 only grows with i, so once it reaches bs it stays there
        if !blocks_less(a1, bs) {
            break;
        }
        for j in 1..=bs.len() {
            let (b1, b2) = bs.split_at(j);
            if !blocks_less(a1, b1) {
                break;
            }
            if !blocks_less(b1, a2) {
                break;
            }
            for (mut us, mut vs) in merge_all(a2, b2) {
                us.insert(0, concat(a1));
                vs.insert(0, concat(b1));
                out.push((us, vs));
            }
        }
    }
    out
}

/// First solution of the merge rules, if any.
pub fn merge(as_: &[Vec<u64>], bs: &[Vec<u64>]) -> Option<(Blocks, Blocks)> {
    merge_all(as_, bs).into_iter().next()
}

/// The scheme `c * a1 * d * b1 * interact(rest of a, rest of b)` when it is
/// strictly increasing and all blocks are nonempty.
pub fn form_body_scheme(a_blocks: &[Vec<u64>], b_blocks: &[Vec<u64>]) -> Option<Vec<u64>> {
    if a_blocks.is_empty() || b_blocks.is_empty() || a_blocks.iter().chain(b_blocks).any(Vec::is_empty) {
        return None;
    }
    let c = acc_lengths(0, a_blocks);
    let d = acc_lengths(0, b_blocks);
    let mut z = c;
    z.extend_from_slice(&a_blocks[0]);
    z.extend_from_slice(&d);
    z.extend_from_slice(&b_blocks[0]);
    z.extend(interact(&a_blocks[1..], &b_blocks[1..]));
    is_strictly_increasing(&z).then_some(z)
}

fn seq(v: Vec<u64>) -> Seq {
    Seq::new(v).expect("blocks of increasing sequences are increasing")
}

/// Form of the unordered pair `{x, y}`, or `None` if it has no form.
pub fn classify_form(x: &Seq, y: &Seq) -> Result<Option<FormData>, FormError> {
    if x == y {
        return Err(FormError::SameMember);
    }
    if x.len() == y.len() {
        return Ok(Some(FormData {
            form: 0,
            k: 0,
            a_blocks: Vec::new(),
            b_blocks: Vec::new(),
            c: Seq::empty(),
            d: Seq::empty(),
            scheme: None,
        }));
    }
    let (x, y) = if x.len() < y.len() { (x, y) } else { (y, x) };
    let singles = |s: &Seq| s.iter().map(|&e| vec![e]).collect::<Vec<_>>();
    for (us, vs) in merge_all(&singles(x), &singles(y)) {
        let (ka, kb) = (us.len(), vs.len());
        let Some(z) = form_body_scheme(&us, &vs) else {
            continue;
        };
        let form = if ka == kb { 2 * kb - 1 } else { 2 * kb };
        return Ok(Some(FormData {
            form,
            k: kb,
            c: seq(acc_lengths(0, &us)),
            d: seq(acc_lengths(0, &vs)),
            a_blocks: us.into_iter().map(seq).collect(),
            b_blocks: vs.into_iter().map(seq).collect(),
            scheme: Some(seq(z)),
        }));
    }
    Ok(None)
}

/// Interaction scheme of `{x, y}`, which must have form `l > 0`.
pub fn inter_scheme(l: usize, x: &Seq, y: &Seq) -> Result<Seq, FormError> {
    if l == 0 {
        return Err(FormError::FormZero);
    }
    let fd = classify_form(x, y)?;
    match fd {
        Some(FormData {
            form,
            scheme: Some(z),
            ..
        }) if form == l => Ok(z),
        other => Err(FormError::Mismatch {
            expected: l,
            got: other.map(|f| f.form),
        }),
    }
}
