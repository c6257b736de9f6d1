// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Brute-force reference implementations for cross-checking the kernels.
//!
//! Everything here works on full symmetric neighbor sets and plain set
//! intersection. It shares no code with the CSR kernels and is meant for
//! graphs of at most a few thousand vertices.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph_io::{canonicalize, EdgeList, GraphIoError};
use crate::truss::TrussError;

/// Symmetric neighbor sets indexed by vertex ID (slot 0 unused).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencySets {
    neighbors: Vec<BTreeSet<u32>>,
}

impl AdjacencySets {
    pub fn new<'a>(num_vertices: u32, edges: impl IntoIterator<Item = &'a (u32, u32)>) -> Self {
        let mut neighbors = vec![BTreeSet::new(); num_vertices as usize + 1];
        for &(u, v) in edges {
            if u != v {
                neighbors[u as usize].insert(v);
                neighbors[v as usize].insert(u);
            }
        }
        AdjacencySets { neighbors }
    }

    pub fn from_edge_list(list: &EdgeList) -> Self {
        Self::new(list.num_vertices(), list.edges())
    }

    pub fn neighbors(&self, v: u32) -> &BTreeSet<u32> {
        &self.neighbors[v as usize]
    }

    pub fn common_neighbors(&self, u: u32, v: u32) -> usize {
        self.neighbors(u).intersection(self.neighbors(v)).count()
    }
}

fn supports_of(num_vertices: u32, edges: &BTreeSet<(u32, u32)>) -> BTreeMap<(u32, u32), u32> {
    let adj = AdjacencySets::new(num_vertices, edges);
    edges
        .iter()
        .map(|&(u, v)| ((u, v), adj.common_neighbors(u, v) as u32))
        .collect()
}

/// Triangle count of every edge, keyed by `(u, v)` with `u < v`.
pub fn oracle_edge_supports(list: &EdgeList) -> BTreeMap<(u32, u32), u32> {
    supports_of(list.num_vertices(), &list.edges().iter().copied().collect())
}

/// Number of triangles, counting each vertex triple `u < v < w` once.
pub fn oracle_triangle_count(list: &EdgeList) -> u64 {
    let adj = AdjacencySets::from_edge_list(list);
    list.edges()
        .iter()
        .map(|&(u, v)| {
            adj.neighbors(u)
                .intersection(adj.neighbors(v))
                .filter(|&&w| w > v)
                .count() as u64
        })
        .sum()
}

/// Batch peeling to the maximal k-truss.
pub fn oracle_ktruss(list: &EdgeList, k: u32) -> Result<BTreeSet<(u32, u32)>, TrussError> {
    if k < 2 {
        return Err(TrussError::InvalidParameter(format!(
            "k must be >= 2, got {k}"
        )));
    }
    let threshold = k - 2;
    let mut alive: BTreeSet<(u32, u32)> = list.edges().iter().copied().collect();
    loop {
        let weak: Vec<(u32, u32)> = supports_of(list.num_vertices(), &alive)
            .into_iter()
            .filter(|&(_, s)| s < threshold)
            .map(|(e, _)| e)
            .collect();
        if weak.is_empty() {
            return Ok(alive);
        }
        for e in weak {
            alive.remove(&e);
        }
    }
}

/// Largest k whose k-truss is non-empty, by upward linear scan.
pub fn oracle_kmax(list: &EdgeList) -> u32 {
    let mut k = 2;
    while !oracle_ktruss(list, k + 1)
        .expect("k >= 3 is valid")
        .is_empty()
    {
        k += 1;
    }
    k
}

/// Seeded Erdős–Rényi `G(n, p)` sample over labels `1..=n`, canonicalized.
///
/// Vertices that draw no edges are dropped by canonicalization. Drawing no
/// edges at all is reported as [`GraphIoError::EmptyGraph`].
pub fn random_graph(n: u32, edge_probability: f64, seed: u64) -> Result<EdgeList, GraphIoError> {
    if n < 2 {
        return Err(GraphIoError::InvalidInput(format!("need n >= 2, got {n}")));
    }
    if !(0.0..=1.0).contains(&edge_probability) {
        return Err(GraphIoError::InvalidInput(format!(
            "edge probability {edge_probability} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for u in 1..=u64::from(n) {
        for v in u + 1..=u64::from(n) {
            if rng.random::<f64>() < edge_probability {
                pairs.push((u, v));
            }
        }
    }
    canonicalize(&pairs)
}
