use super::{domain, Sym};
use crate::error::{Error, Result};

/// Output of one GGM leaf: the party seed and its commitment tape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaf {
    pub seed: Vec<u8>,
    pub rho: Vec<u8>,
}

/// Full binary tree of λ-bit seeds in heap order (root 1, children 2k, 2k+1).
/// Party i in 1..=N sits at node N + i - 1.
#[derive(Debug, Clone)]
pub struct SeedTree {
    n: usize,
    nodes: Vec<Vec<u8>>,
    leaves: Vec<Leaf>,
}

fn depth_of(n: usize) -> Result<usize> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(n.trailing_zeros() as usize)
}

/// XOF(7 ‖ salt ‖ node ‖ seed), 2λ bits, split into two λ-bit halves. For an
/// internal node these are the children; for a leaf node they are (seed, ρ).
fn expand_node(sym: &Sym, salt: &[u8], node: usize, seed: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let mut x = sym.xof(domain::GGM);
    x.absorb(salt).absorb_u32(node).absorb(seed);
    let mut out = x.output(2 * sym.seed_bytes());
    let right = out.split_off(sym.seed_bytes());
    (out, right)
}

fn fill_subtree(sym: &Sym, salt: &[u8], n: usize, nodes: &mut [Option<Vec<u8>>], top: usize) {
    let mut stack = vec![top];
    while let Some(k) = stack.pop() {
        if k >= n {
            continue;
        }
        let (l, r) = expand_node(sym, salt, k, nodes[k].as_ref().expect("parent known"));
        nodes[2 * k] = Some(l);
        nodes[2 * k + 1] = Some(r);
        stack.push(2 * k);
        stack.push(2 * k + 1);
    }
}

fn leaf_of(sym: &Sym, salt: &[u8], n: usize, i: usize, node_seed: &[u8]) -> Leaf {
    let (seed, rho) = expand_node(sym, salt, n + i - 1, node_seed);
    Leaf { seed, rho }
}

pub fn ggm_expand(sym: &Sym, root: &[u8], salt: &[u8], n: usize) -> Result<SeedTree> {
    depth_of(n)?;
    if root.len() != sym.seed_bytes() {
        return Err(Error::Length {
            expected: sym.seed_bytes(),
            got: root.len(),
        });
    }
    let mut nodes: Vec<Option<Vec<u8>>> = vec![None; 2 * n];
    nodes[1] = Some(root.to_vec());
    fill_subtree(sym, salt, n, &mut nodes, 1);
    let nodes: Vec<Vec<u8>> = nodes.into_iter().map(|x| x.unwrap_or_default()).collect();
    let leaves = (1..=n).map(|i| leaf_of(sym, salt, n, i, &nodes[n + i - 1])).collect();
    Ok(SeedTree { n, nodes, leaves })
}

impl SeedTree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn leaves(&self) -> &[Leaf] {
        &self.leaves
    }

    pub fn leaf(&self, i: usize) -> &Leaf {
        &self.leaves[i - 1]
    }

    /// Sibling seeds on the path from the root down to party `i_star`,
    /// shallowest first: log2 N seeds.
    pub fn open(&self, i_star: usize) -> Result<Vec<Vec<u8>>> {
        if i_star == 0 || i_star > self.n {
            return Err(Error::MalformedPath(format!("hidden index {i_star} outside 1..={}", self.n)));
        }
        Ok(sibling_nodes(self.n, i_star).into_iter().map(|k| self.nodes[k].clone()).collect())
    }
}

/// Heap indices of the siblings along the path to party `i_star`, shallowest first.
pub(crate) fn sibling_nodes(n: usize, i_star: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = n + i_star - 1;
    while k > 1 {
        out.push(k ^ 1);
        k /= 2;
    }
    out.reverse();
    out
}

/// Rebuilds every leaf except `i_star` from an opened path. Entry i-1 of the
/// result is party i; the hidden party maps to `None`.
pub fn ggm_recover(sym: &Sym, path: &[Vec<u8>], salt: &[u8], n: usize, i_star: usize) -> Result<Vec<Option<Leaf>>> {
    let d = depth_of(n)?;
    if i_star == 0 || i_star > n {
        return Err(Error::MalformedPath(format!("hidden index {i_star} outside 1..={n}")));
    }
    if path.len() != d {
        return Err(Error::MalformedPath(format!("expected {d} nodes, got {}", path.len())));
    }
    if path.iter().any(|s| s.len() != sym.seed_bytes()) {
        return Err(Error::MalformedPath("seed of wrong length".into()));
    }
    let mut nodes: Vec<Option<Vec<u8>>> = vec![None; 2 * n];
    for (k, seed) in sibling_nodes(n, i_star).into_iter().zip(path) {
        nodes[k] = Some(seed.clone());
        fill_subtree(sym, salt, n, &mut nodes, k);
    }
    Ok((1..=n)
        .map(|i| {
            if i == i_star {
                None
            } else {
                Some(leaf_of(sym, salt, n, i, nodes[n + i - 1].as_ref().unwrap()))
            }
        })
        .collect())
}
