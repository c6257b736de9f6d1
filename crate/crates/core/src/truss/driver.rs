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

use std::sync::atomic::{AtomicU16, AtomicU32};

use super::support::{reset_supports, SupportArray, SupportCounter, SupportWidth};
use super::{check_k, compute_supports, prune_edges, Strategy, TrussError, TrussOptions, Workers};
use crate::graph_io::ZeroTerminatedCsr;

/// A surviving edge in relabeled vertex space and its final support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrussEdge {
    pub u: u32,
    pub v: u32,
    pub support: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrussResult {
    pub k: u32,
    /// Sorted by `(u, v)`.
    pub edges: Vec<TrussEdge>,
    /// Support-and-prune rounds executed, including the final one that removed nothing.
    pub iterations: usize,
    pub removed_per_iteration: Vec<u64>,
}

impl TrussResult {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_pairs(&self) -> Vec<(u32, u32)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }
}

/// The support/prune fixpoint on a private copy of the graph, one round at a time.
///
/// Allocation happens in [`new`](Self::new) and extraction in
/// [`into_result`](Self::into_result), so [`run`](Self::run) covers only the
/// loop itself.
pub struct TrussRun<'w, C: SupportCounter = AtomicU32> {
    csr: ZeroTerminatedCsr,
    supports: SupportArray<C>,
    k: u32,
    strategy: Strategy,
    workers: &'w Workers,
    removed_per_iteration: Vec<u64>,
    last_triangles: u64,
}

impl<'w, C: SupportCounter> TrussRun<'w, C> {
    pub fn new(
        csr: ZeroTerminatedCsr,
        k: u32,
        strategy: Strategy,
        workers: &'w Workers,
    ) -> Result<Self, TrussError> {
        check_k(k)?;
        let supports = SupportArray::new(csr.total_slots());
        Ok(TrussRun {
            csr,
            supports,
            k,
            strategy,
            workers,
            removed_per_iteration: Vec::new(),
            last_triangles: 0,
        })
    }

    /// One round: zero supports, recompute them, prune. Returns edges removed.
    pub fn step(&mut self) -> Result<u64, TrussError> {
        reset_supports(&self.supports, self.workers);
        self.last_triangles =
            compute_supports(&self.csr, &self.supports, self.strategy, self.workers)?;
        let removed = prune_edges(&mut self.csr, &self.supports, self.k, self.workers)?;
        self.removed_per_iteration.push(removed);
        Ok(removed)
    }

    pub fn run(&mut self) -> Result<(), TrussError> {
        while !self.is_converged() {
            self.step()?;
        }
        Ok(())
    }

    pub fn is_converged(&self) -> bool {
        self.removed_per_iteration.last() == Some(&0)
    }

    pub fn iterations(&self) -> usize {
        self.removed_per_iteration.len()
    }

    pub fn csr(&self) -> &ZeroTerminatedCsr {
        &self.csr
    }

    pub fn supports(&self) -> &SupportArray<C> {
        &self.supports
    }

    /// Triangles counted by the most recent support phase.
    pub fn last_triangle_count(&self) -> u64 {
        self.last_triangles
    }

    /// Packages the current state. Supports describe the returned edges
    /// exactly only once the run has converged.
    pub fn into_result(self) -> TrussResult {
        let edges = self
            .csr
            .extract_edges_with(&self.supports.to_vec())
            .into_iter()
            .map(|(u, v, support)| TrussEdge { u, v, support })
            .collect();
        TrussResult {
            k: self.k,
            edges,
            iterations: self.removed_per_iteration.len(),
            removed_per_iteration: self.removed_per_iteration,
        }
    }
}

fn ktruss_with<C: SupportCounter>(
    csr: &ZeroTerminatedCsr,
    k: u32,
    strategy: Strategy,
    workers: &Workers,
) -> Result<TrussResult, TrussError> {
    let mut run = TrussRun::<C>::new(csr.clone(), k, strategy, workers)?;
    run.run()?;
    Ok(run.into_result())
}

/// Computes the maximal k-truss of `csr` without mutating it.
pub fn ktruss(
    csr: &ZeroTerminatedCsr,
    k: u32,
    options: impl Into<TrussOptions>,
    workers: &Workers,
) -> Result<TrussResult, TrussError> {
    let options = options.into();
    match options.width {
        SupportWidth::Bits32 => ktruss_with::<AtomicU32>(csr, k, options.strategy, workers),
        SupportWidth::Bits16 => ktruss_with::<AtomicU16>(csr, k, options.strategy, workers),
    }
}

fn max_support<C: SupportCounter>(
    csr: &ZeroTerminatedCsr,
    strategy: Strategy,
    workers: &Workers,
) -> Result<u32, TrussError> {
    let supports = SupportArray::<C>::new(csr.total_slots());
    compute_supports(csr, &supports, strategy, workers)?;
    Ok(supports.max())
}

/// Finds the largest `k` with a non-empty k-truss, returning it with that truss.
///
/// Supports of the full graph bound the answer by `max support + 2`; the
/// search then bisects `[3, bound]`, each probe an independent run from the
/// original graph.
pub fn kmax_search(
    csr: &ZeroTerminatedCsr,
    options: impl Into<TrussOptions>,
    workers: &Workers,
) -> Result<(u32, TrussResult), TrussError> {
    let options = options.into();
    if csr.live_edge_count() == 0 {
        return Err(TrussError::InvalidParameter(
            "kmax search needs at least one edge".into(),
        ));
    }
    let top = match options.width {
        SupportWidth::Bits32 => max_support::<AtomicU32>(csr, options.strategy, workers)?,
        SupportWidth::Bits16 => max_support::<AtomicU16>(csr, options.strategy, workers)?,
    };
    let bound = top.saturating_add(2);

    // Invariant: the `lo`-truss is non-empty, nothing above `hi` is.
    let (mut lo, mut hi) = (2u32, bound);
    let mut best: Option<TrussResult> = None;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        let probe = ktruss(csr, mid, options, workers)?;
        if probe.is_empty() {
            hi = mid - 1;
        } else {
            lo = mid;
            best = Some(probe);
        }
    }
    let result = match best {
        Some(r) if r.k == lo => r,
        _ => ktruss(csr, lo, options, workers)?,
    };
    Ok((lo, result))
}
