//! Slow reference implementations. They share no code with the library
//! beyond plain data types, so a disagreement points at the fast path.

use partcalc::forcing::FrontTree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleForm {
    pub form: usize,
    pub a_blocks: Vec<Vec<u64>>,
    pub b_blocks: Vec<Vec<u64>>,
    pub c: Vec<u64>,
    pub d: Vec<u64>,
    pub scheme: Vec<u64>,
}

/// Every way to cut `s` into nonempty consecutive blocks.
fn splits(s: &[u64]) -> Vec<Vec<Vec<u64>>> {
    if s.is_empty() {
        return vec![];
    }
    let cuts = s.len() - 1;
    (0u32..1 << cuts)
        .map(|mask| {
            let mut out = vec![vec![s[0]]];
            for i in 1..s.len() {
                if mask >> (i - 1) & 1 == 1 {
                    out.push(Vec::new());
                }
                out.last_mut().unwrap().push(s[i]);
            }
            out
        })
        .collect()
}

fn partial_sums(blocks: &[Vec<u64>]) -> Vec<u64> {
    blocks
        .iter()
        .scan(0u64, |acc, b| {
            *acc += b.len() as u64;
            Some(*acc)
        })
        .collect()
}

/// `u < v`: every entry of `u` is below every entry of `v`.
fn below(u: &[u64], v: &[u64]) -> bool {
    u.iter().all(|a| v.iter().all(|b| a < b))
}

/// Form of `{x, y}` by trying every block decomposition against the
/// definition. `Err` if the input is too large or several
/// decompositions succeed.
pub fn oracle_classify_form(x: &[u64], y: &[u64]) -> Result<Option<OracleForm>, String> {
    if x.len() + y.len() > 12 {
        return Err(format!("total length {} exceeds 12", x.len() + y.len()));
    }
    if x.len() == y.len() {
        return Ok(Some(OracleForm {
            form: 0,
            a_blocks: vec![],
            b_blocks: vec![],
            c: vec![],
            d: vec![],
            scheme: vec![],
        }));
    }
    let (x, y) = if x.len() < y.len() { (x, y) } else { (y, x) };
    let mut found: Vec<OracleForm> = Vec::new();
    for a in splits(x) {
        let c = partial_sums(&a);
        // clause 5 starts with c < a_1; it does not involve y
        if !below(&c, &a[0]) {
            continue;
        }
        for b in splits(y) {
            let k = b.len();
            if a.len() != k && a.len() != k + 1 {
                continue;
            }
            let d = partial_sums(&b);
            let mut chain: Vec<&[u64]> = vec![&c, &a[0], &d, &b[0]];
            for i in 1..k {
                chain.push(&a[i]);
                chain.push(&b[i]);
            }
            if a.len() == k + 1 {
                chain.push(&a[k]);
            }
            if chain.windows(2).all(|w| below(w[0], w[1])) {
                let scheme = chain.concat();
                found.push(OracleForm {
                    form: if a.len() == k { 2 * k - 1 } else { 2 * k },
                    a_blocks: a.clone(),
                    b_blocks: b.clone(),
                    c: c.clone(),
                    d,
                    scheme,
                });
            }
        }
    }
    match found.len() {
        0 => Ok(None),
        1 => Ok(found.pop()),
        n => Err(format!("{n} decompositions of {x:?}, {y:?}")),
    }
}

/// Rank of the root by plain recursion over the node list.
pub fn oracle_rank(tree: &FrontTree) -> u64 {
    fn rank(nodes: &[Vec<u64>], s: &[u64]) -> u64 {
        nodes
            .iter()
            .filter(|t| t.len() == s.len() + 1 && t.starts_with(s))
            .map(|t| rank(nodes, t) + 1)
            .max()
            .unwrap_or(0)
    }
    let nodes: Vec<Vec<u64>> = tree.nodes.iter().map(|(s, _)| s.to_vec()).collect();
    if nodes.is_empty() {
        return 0;
    }
    rank(&nodes, &[])
}

/// Number of increasing length-`n` sequences with entries below `bound`
/// that precede `s` lexicographically.
pub fn oracle_w_rank(s: &[u64], bound: u64) -> Result<u64, String> {
    if s.iter().any(|&x| x >= bound) {
        return Err(format!("{s:?} has an entry at or above {bound}"));
    }
    fn all(n: usize, lo: u64, bound: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in lo..bound {
            cur.push(x);
            all(n, x + 1, bound, cur, out);
            cur.pop();
        }
    }
    let mut seqs = Vec::new();
    all(s.len(), 0, bound, &mut Vec::new(), &mut seqs);
    Ok(seqs.iter().filter(|t| t.as_slice() < s).count() as u64)
}
