//! Independence oracles and the augmenting-path matroid intersection.

use std::collections::VecDeque;

use crate::linalg::{self, Vector};

/// Independence oracle on the ground set `0..ground_size()`.
pub trait Matroid {
    fn ground_size(&self) -> usize;
    fn is_independent(&self, set: &[usize]) -> bool;
}

/// Linear independence of rational vectors, by exact rank.
#[derive(Clone, Debug)]
pub struct LinearMatroid {
    pub vectors: Vec<Vector>,
}

impl Matroid for LinearMatroid {
    fn ground_size(&self) -> usize {
        self.vectors.len()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let rows: Vec<Vector> = set.iter().map(|&i| self.vectors[i].clone()).collect();
        linalg::rank(&rows) == set.len()
    }
}

/// At most one element per block; `blocks[e]` is the block of element `e`.
#[derive(Clone, Debug)]
pub struct PartitionMatroid {
    pub blocks: Vec<usize>,
}

impl Matroid for PartitionMatroid {
    fn ground_size(&self) -> usize {
        self.blocks.len()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        set.iter().all(|&e| seen.insert(self.blocks[e]))
    }
}

fn exchange(set: &[usize], out: usize, inn: usize) -> Vec<usize> {
    let mut s: Vec<usize> = set.iter().copied().filter(|&e| e != out).collect();
    s.push(inn);
    s
}

fn with(set: &[usize], x: usize) -> Vec<usize> {
    let mut s = set.to_vec();
    s.push(x);
    s
}

/// One augmentation: a shortest path in the exchange graph from
/// `{x : I + x ∈ M1}` to `{x : I + x ∈ M2}`, arcs `y -> x` when
/// `I - y + x ∈ M1` and `x -> y` when `I - y + x ∈ M2`.
fn augment(m1: &dyn Matroid, m2: &dyn Matroid, current: &[usize]) -> Option<Vec<usize>> {
    let n = m1.ground_size();
    let mut inside = vec![false; n];
    for &e in current {
        inside[e] = true;
    }
    let outside: Vec<usize> = (0..n).filter(|&e| !inside[e]).collect();
    let sinks: Vec<bool> = (0..n).map(|e| !inside[e] && m2.is_independent(&with(current, e))).collect();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut queue = VecDeque::new();
    for &x in &outside {
        if m1.is_independent(&with(current, x)) {
            visited[x] = true;
            queue.push_back(x);
        }
    }
    while let Some(v) = queue.pop_front() {
        if sinks[v] {
            let mut path = vec![v];
            let mut cur = v;
            while let Some(p) = parent[cur] {
                path.push(p);
                cur = p;
            }
            let mut next: Vec<usize> = current.iter().copied().filter(|e| !path.contains(e)).collect();
            next.extend(path.iter().copied().filter(|&e| !inside[e]));
            next.sort_unstable();
            return Some(next);
        }
        let succ: Vec<usize> = if inside[v] {
            outside.iter().copied().filter(|&x| !visited[x] && m1.is_independent(&exchange(current, v, x))).collect()
        } else {
            current.iter().copied().filter(|&y| !visited[y] && m2.is_independent(&exchange(current, y, v))).collect()
        };
        for w in succ {
            visited[w] = true;
            parent[w] = Some(v);
            queue.push_back(w);
        }
    }
    None
}

/// A maximum common independent set of two matroids on the same ground set.
pub fn max_common_independent(m1: &dyn Matroid, m2: &dyn Matroid) -> Vec<usize> {
    assert_eq!(m1.ground_size(), m2.ground_size(), "matroids on different ground sets");
    let mut current = Vec::new();
    while let Some(next) = augment(m1, m2, &current) {
        current = next;
    }
    current
}

/// A common independent set of size `k`, if one exists.
pub fn matroid_intersection(m1: &dyn Matroid, m2: &dyn Matroid, k: usize) -> Option<Vec<usize>> {
    assert_eq!(m1.ground_size(), m2.ground_size(), "matroids on different ground sets");
    let mut current = Vec::new();
    while current.len() < k {
        current = augment(m1, m2, &current)?;
    }
    Some(current)
}
