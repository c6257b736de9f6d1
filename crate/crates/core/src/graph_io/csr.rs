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

use std::fmt;

use super::{EdgeList, GraphIoError};

/// Upper-triangular adjacency in CSR form where every row ends in zeros.
///
/// Real vertices are `1..=n`. Vertex 0 is a phantom with an empty row so that
/// `row_ptr[w]` is addressable by any column value `w`, and the value 0 in
/// `col_idx` marks either the row terminator or a pruned edge. Live entries
/// of a row always precede its zeros, so a scan can stop at the first 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroTerminatedCsr {
    num_vertices: u32,
    row_ptr: Vec<u32>,
    col_idx: Vec<u32>,
}

/// A broken [`ZeroTerminatedCsr`] invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsrViolation {
    pub vertex: Option<u32>,
    pub reason: String,
}

impl fmt::Display for CsrViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.vertex {
            Some(v) => write!(f, "row {v}: {}", self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

impl std::error::Error for CsrViolation {}

fn violation(vertex: Option<u32>, reason: impl Into<String>) -> CsrViolation {
    CsrViolation {
        vertex,
        reason: reason.into(),
    }
}

impl ZeroTerminatedCsr {
    /// Assembles a CSR from raw arrays, rejecting anything that breaks an invariant.
    pub fn from_parts(
        num_vertices: u32,
        row_ptr: Vec<u32>,
        col_idx: Vec<u32>,
    ) -> Result<Self, CsrViolation> {
        let csr = ZeroTerminatedCsr {
            num_vertices,
            row_ptr,
            col_idx,
        };
        csr.validate()?;
        Ok(csr)
    }

    pub fn num_vertices(&self) -> u32 {
        self.num_vertices
    }

    /// Length of `col_idx`: nonzeros plus one sentinel per real row.
    pub fn total_slots(&self) -> usize {
        self.col_idx.len()
    }

    pub fn row_ptr(&self) -> &[u32] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[u32] {
        &self.col_idx
    }

    #[inline]
    pub fn row_start(&self, v: u32) -> usize {
        self.row_ptr[v as usize] as usize
    }

    /// Every slot owned by vertex `v`, including trailing zeros.
    pub fn row_slots(&self, v: u32) -> &[u32] {
        let start = self.row_ptr[v as usize] as usize;
        let end = self.row_ptr[v as usize + 1] as usize;
        &self.col_idx[start..end]
    }

    /// The live out-neighbors of `v`: its slots up to the first zero.
    pub fn live_row(&self, v: u32) -> &[u32] {
        let row = self.row_slots(v);
        let len = row.iter().position(|&w| w == 0).unwrap_or(row.len());
        &row[..len]
    }

    pub fn live_edge_count(&self) -> usize {
        (1..=self.num_vertices)
            .map(|v| self.live_row(v).len())
            .sum()
    }

    /// Surviving edges `(u, v)` in lexicographic order.
    pub fn extract_edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.live_edge_count());
        for u in 1..=self.num_vertices {
            out.extend(self.live_row(u).iter().map(|&v| (u, v)));
        }
        out
    }

    /// Surviving edges paired with the per-slot value in `supports`.
    ///
    /// # Panics
    /// If `supports.len()` differs from [`total_slots`](Self::total_slots).
    pub fn extract_edges_with(&self, supports: &[u32]) -> Vec<(u32, u32, u32)> {
        assert_eq!(
            supports.len(),
            self.total_slots(),
            "support array does not match CSR slot count"
        );
        let mut out = Vec::with_capacity(self.live_edge_count());
        for u in 1..=self.num_vertices {
            let start = self.row_start(u);
            out.extend(
                self.live_row(u)
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (u, v, supports[start + i])),
            );
        }
        out
    }

    /// The surviving graph as an [`EdgeList`] with identity labels.
    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList::with_identity_labels(self.num_vertices, self.extract_edges())
            .expect("valid CSR yields a canonical edge list")
    }

    /// Disjoint mutable views of every real row, paired with their starting slot.
    pub(crate) fn rows_mut(&mut self) -> Vec<(usize, &mut [u32])> {
        let mut rows = Vec::with_capacity(self.num_vertices as usize);
        let mut rest = self.col_idx.as_mut_slice();
        for v in 1..=self.num_vertices as usize {
            let start = self.row_ptr[v] as usize;
            let len = self.row_ptr[v + 1] as usize - start;
            let (row, tail) = std::mem::take(&mut rest).split_at_mut(len);
            rows.push((start, row));
            rest = tail;
        }
        rows
    }

    pub fn validate(&self) -> Result<(), CsrViolation> {
        let n = self.num_vertices as usize;
        if self.row_ptr.len() != n + 2 {
            return Err(violation(
                None,
                format!(
                    "row_ptr has {} entries, expected {}",
                    self.row_ptr.len(),
                    n + 2
                ),
            ));
        }
        if self.row_ptr[0] != 0 || self.row_ptr[1] != 0 {
            return Err(violation(Some(0), "phantom vertex 0 must own no slots"));
        }
        if self.row_ptr[n + 1] as usize != self.col_idx.len() {
            return Err(violation(
                None,
                format!(
                    "row_ptr ends at {} but col_idx has {} slots",
                    self.row_ptr[n + 1],
                    self.col_idx.len()
                ),
            ));
        }
        for v in 1..=self.num_vertices {
            let (start, end) = (self.row_ptr[v as usize], self.row_ptr[v as usize + 1]);
            if start >= end {
                return Err(violation(Some(v), "row has no sentinel slot"));
            }
            let row = &self.col_idx[start as usize..end as usize];
            let live = row
                .iter()
                .position(|&w| w == 0)
                .ok_or_else(|| violation(Some(v), "last slot is nonzero (missing sentinel)"))?;
            if row[live..].iter().any(|&w| w != 0) {
                return Err(violation(Some(v), "nonzero entry after a zero slot"));
            }
            let mut prev = v;
            for &w in &row[..live] {
                if w <= prev {
                    return Err(violation(
                        Some(v),
                        format!("entry {w} is not strictly increasing and above {v}"),
                    ));
                }
                if w > self.num_vertices {
                    return Err(violation(
                        Some(v),
                        format!("entry {w} exceeds vertex count {n}"),
                    ));
                }
                prev = w;
            }
        }
        Ok(())
    }
}

/// Lays out a canonical edge list as a zero-terminated CSR.
///
/// Each row holds its ascending out-neighbors followed by one 0, so the slot
/// count is `|edges| + n`.
pub fn build_csr(edges: &EdgeList) -> Result<ZeroTerminatedCsr, GraphIoError> {
    edges.validate()?;
    let n = edges.num_vertices() as usize;
    let total = edges.num_edges() as u64 + n as u64;
    if total > u64::from(u32::MAX) {
        return Err(GraphIoError::TooLarge(format!(
            "{total} slots exceed 32-bit offsets"
        )));
    }

    let mut row_ptr = vec![0u32; n + 2];
    for &(u, _) in edges.edges() {
        row_ptr[u as usize + 1] += 1;
    }
    // Prefix-sum over real rows, one extra slot each for the sentinel.
    for v in 1..=n {
        row_ptr[v + 1] += row_ptr[v] + 1;
    }

    let mut col_idx = vec![0u32; total as usize];
    let mut cursor: Vec<u32> = row_ptr[..=n].to_vec();
    for &(u, v) in edges.edges() {
        let slot = &mut cursor[u as usize];
        col_idx[*slot as usize] = v;
        *slot += 1;
    }

    let csr = ZeroTerminatedCsr {
        num_vertices: edges.num_vertices(),
        row_ptr,
        col_idx,
    };
    debug_assert!(csr.validate().is_ok());
    Ok(csr)
}
