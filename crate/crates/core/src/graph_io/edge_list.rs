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

use std::io::BufRead;

use super::GraphIoError;

/// Canonical undirected simple graph with dense 1-based vertex IDs.
///
/// Every edge `(u, v)` satisfies `1 <= u < v <= num_vertices`, and the edge
/// sequence is sorted and free of duplicates. `original_ids[v - 1]` is the
/// source-file label of relabeled vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    num_vertices: u32,
    edges: Vec<(u32, u32)>,
    original_ids: Vec<u64>,
}

impl EdgeList {
    /// Builds an edge list from already-canonical parts, checking every invariant.
    pub fn new(
        num_vertices: u32,
        edges: Vec<(u32, u32)>,
        original_ids: Vec<u64>,
    ) -> Result<Self, GraphIoError> {
        let list = EdgeList {
            num_vertices,
            edges,
            original_ids,
        };
        list.validate()?;
        Ok(list)
    }

    /// Edge list whose original labels equal the relabeled IDs `1..=n`.
    pub fn with_identity_labels(
        num_vertices: u32,
        edges: Vec<(u32, u32)>,
    ) -> Result<Self, GraphIoError> {
        let ids = (1..=u64::from(num_vertices)).collect();
        Self::new(num_vertices, edges, ids)
    }

    pub fn num_vertices(&self) -> u32 {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    /// Source-file label of relabeled vertex `v` (1-based).
    pub fn original_label(&self, v: u32) -> u64 {
        self.original_ids[v as usize - 1]
    }

    /// Edges as raw label pairs in relabeled space, suitable for re-canonicalizing.
    pub fn as_raw_pairs(&self) -> Vec<(u64, u64)> {
        self.edges
            .iter()
            .map(|&(u, v)| (u64::from(u), u64::from(v)))
            .collect()
    }

    pub fn validate(&self) -> Result<(), GraphIoError> {
        let n = self.num_vertices;
        if self.original_ids.len() != n as usize {
            return Err(GraphIoError::InvalidInput(format!(
                "{} original labels for {} vertices",
                self.original_ids.len(),
                n
            )));
        }
        let mut prev: Option<(u32, u32)> = None;
        for &(u, v) in &self.edges {
            if u == 0 || v > n {
                return Err(GraphIoError::InvalidInput(format!(
                    "edge ({u}, {v}) outside vertex range 1..={n}"
                )));
            }
            if u >= v {
                return Err(GraphIoError::InvalidInput(format!(
                    "edge ({u}, {v}) is not oriented u < v"
                )));
            }
            if let Some(p) = prev {
                if p >= (u, v) {
                    return Err(GraphIoError::InvalidInput(format!(
                        "edge ({u}, {v}) is duplicated or out of order"
                    )));
                }
            }
            prev = Some((u, v));
        }
        Ok(())
    }
}

/// Reads `#`/`%`-commented text with two whitespace-separated integer labels per line.
///
/// Pairs are returned in file order without any deduplication or orientation.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Vec<(u64, u64)>, GraphIoError> {
    let mut pairs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(GraphIoError::Parse {
                line: line_no,
                message: format!(
                    "expected 2 fields, found {}",
                    trimmed.split_whitespace().count()
                ),
            });
        };
        let parse = |tok: &str| {
            tok.parse::<u64>().map_err(|_| GraphIoError::Parse {
                line: line_no,
                message: format!("invalid vertex label {tok:?}"),
            })
        };
        pairs.push((parse(a)?, parse(b)?));
    }
    if pairs.is_empty() {
        return Err(GraphIoError::EmptyInput);
    }
    Ok(pairs)
}

pub fn parse_edge_list_str(text: &str) -> Result<Vec<(u64, u64)>, GraphIoError> {
    parse_edge_list(text.as_bytes())
}

/// Drops self-loops, merges both directions of each edge, and relabels the
/// remaining vertices to `1..=n` in ascending order of their original label.
pub fn canonicalize(raw: &[(u64, u64)]) -> Result<EdgeList, GraphIoError> {
    let mut labels: Vec<u64> = raw
        .iter()
        .filter(|(a, b)| a != b)
        .flat_map(|&(a, b)| [a, b])
        .collect();
    if labels.is_empty() {
        return Err(GraphIoError::EmptyGraph);
    }
    labels.sort_unstable();
    labels.dedup();
    // 0 is the sentinel, so the largest usable ID is u32::MAX.
    let num_vertices = u32::try_from(labels.len())
        .map_err(|_| GraphIoError::TooLarge(format!("{} vertices", labels.len())))?;

    let relabel = |x: u64| -> u32 {
        // Every label was collected above, so the search always succeeds.
        labels.binary_search(&x).expect("label collected") as u32 + 1
    };
    let mut edges: Vec<(u32, u32)> = raw
        .iter()
        .filter(|(a, b)| a != b)
        .map(|&(a, b)| {
            let (u, v) = (relabel(a), relabel(b));
            (u.min(v), u.max(v))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();

    Ok(EdgeList {
        num_vertices,
        edges,
        original_ids: labels,
    })
}
