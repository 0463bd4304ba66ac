use super::{domain, Digest, Sym};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Salt-free Merkle tree over N = 2^D leaves in heap order. Leaves are hashed
/// with the leaf prefix, internal nodes as H(node ‖ left ‖ right).
#[derive(Debug, Clone)]
pub struct MerkleTree {
    n: usize,
    nodes: Vec<Digest>,
}

impl MerkleTree {
    pub fn build(sym: &Sym, leaves: &[Digest]) -> Result<Self> {
        let n = leaves.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        let mut nodes = vec![Vec::new(); 2 * n];
        for (i, v) in leaves.iter().enumerate() {
            nodes[n + i] = sym.hash(domain::MERKLE_LEAF, &[v]);
        }
        for k in (1..n).rev() {
            nodes[k] = sym.hash(domain::MERKLE_NODE, &[&nodes[2 * k], &nodes[2 * k + 1]]);
        }
        Ok(Self { n, nodes })
    }

    pub fn root(&self) -> &Digest {
        &self.nodes[1]
    }

    /// Authentication path for the (1-based) leaf set: bottom-up, ascending
    /// node index within a level.
    pub fn auth(&self, set: &[usize]) -> Result<Vec<Digest>> {
        Ok(auth_nodes(self.n, set)?.into_iter().map(|k| self.nodes[k].clone()).collect())
    }
}

fn auth_nodes(n: usize, set: &[usize]) -> Result<Vec<usize>> {
    if set.is_empty() || set.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::MalformedPath("leaf set out of range".into()));
    }
    let mut known: BTreeSet<usize> = set.iter().map(|&i| n + i - 1).collect();
    if known.len() != set.len() {
        return Err(Error::MalformedPath("duplicate leaf in set".into()));
    }
    let mut out = Vec::new();
    while !known.contains(&1) {
        let mut next = BTreeSet::new();
        for &k in &known {
            if !known.contains(&(k ^ 1)) {
                out.push(k ^ 1);
            }
            next.insert(k / 2);
        }
        known = next;
    }
    Ok(out)
}

/// Number of digests in the authentication path of `set`.
pub fn merkle_auth_len(n: usize, set: &[usize]) -> Result<usize> {
    Ok(auth_nodes(n, set)?.len())
}

/// Longest authentication path over all leaf sets of size `count`: reached
/// when the leaves spread into distinct subtrees as close to the root as
/// possible. With u_d = min(2^d, count) path nodes at depth d, depth d
/// contributes 2·u_{d−1} − u_d digests.
pub fn merkle_auth_max(n: usize, count: usize) -> Result<usize> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    if count == 0 || count > n {
        return Err(Error::MalformedPath(format!("leaf count {count} outside 1..={n}")));
    }
    let mut total = 0;
    let mut prev = 1usize;
    for d in 1..=n.trailing_zeros() {
        let u = (1usize << d).min(count);
        total += 2 * prev - u;
        prev = u;
    }
    Ok(total)
}

/// Recomputes the root from the leaves of `set` (same order as `set`) and an
/// authentication path. A wrong path gives a different root, not an error.
pub fn merkle_verify(sym: &Sym, n: usize, set: &[usize], leaves: &[Digest], path: &[Digest]) -> Result<Digest> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let order = auth_nodes(n, set)?;
    if order.len() != path.len() || leaves.len() != set.len() {
        return Err(Error::MalformedPath(format!("expected {} path digests, got {}", order.len(), path.len())));
    }
    let mut vals: std::collections::BTreeMap<usize, Digest> = std::collections::BTreeMap::new();
    for (&i, v) in set.iter().zip(leaves) {
        vals.insert(n + i - 1, sym.hash(domain::MERKLE_LEAF, &[v]));
    }
    for (&k, d) in order.iter().zip(path) {
        vals.insert(k, d.clone());
    }
    let mut level: BTreeSet<usize> = set.iter().map(|&i| n + i - 1).collect();
    while !level.contains(&1) {
        let mut next = BTreeSet::new();
        for &k in &level {
            let p = k / 2;
            if next.insert(p) {
                let h = sym.hash(domain::MERKLE_NODE, &[&vals[&(2 * p)], &vals[&(2 * p + 1)]]);
                vals.insert(p, h);
            }
        }
        level = next;
    }
    Ok(vals.remove(&1).unwrap())
}
