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

use rayon::prelude::*;

use super::support::{SupportArray, SupportCounter};
use super::{Strategy, TrussError, Workers};
use crate::graph_io::ZeroTerminatedCsr;

/// Merges the tail of the pivot row after `pivot_slot` with the row of
/// `predecessor`, crediting every common neighbor `w` to both edges that
/// close the triangle.
///
/// `col_idx[pivot_slot]` must equal `predecessor`. Both scans stop at the
/// first zero slot. The return value is the number of triangles found; the
/// caller owns adding it to the pivot slot's support.
#[inline]
pub fn intersect_tails<C: SupportCounter>(
    csr: &ZeroTerminatedCsr,
    pivot_slot: usize,
    predecessor: u32,
    supports: &SupportArray<C>,
) -> u32 {
    let col = csr.col_idx();
    debug_assert_ne!(predecessor, 0);
    debug_assert_eq!(col[pivot_slot], predecessor);

    let mut tail = pivot_slot + 1;
    let mut other = csr.row_start(predecessor);
    let mut local = 0u32;
    loop {
        let (a, b) = (col[tail], col[other]);
        if a == 0 || b == 0 {
            break;
        }
        if a == b {
            supports.increment(tail);
            supports.increment(other);
            local += 1;
            tail += 1;
            other += 1;
        } else if b > a {
            tail += 1;
        } else {
            other += 1;
        }
    }
    local
}

/// Fine-grained task: one slot, skipped when it holds a sentinel or pruned edge.
#[inline]
fn slot_task<C: SupportCounter>(
    csr: &ZeroTerminatedCsr,
    supports: &SupportArray<C>,
    slot: usize,
) -> u64 {
    let predecessor = csr.col_idx()[slot];
    if predecessor == 0 {
        return 0;
    }
    let local = intersect_tails(csr, slot, predecessor, supports);
    if local > 0 {
        supports.add(slot, local);
    }
    u64::from(local)
}

/// Coarse-grained task: every live slot of row `v`.
fn row_task<C: SupportCounter>(csr: &ZeroTerminatedCsr, supports: &SupportArray<C>, v: u32) -> u64 {
    let col = csr.col_idx();
    let mut slot = csr.row_start(v);
    let mut found = 0;
    while col[slot] != 0 {
        found += slot_task(csr, supports, slot);
        slot += 1;
    }
    found
}

/// Fills `supports` with per-edge triangle counts for the current graph and
/// returns the total number of triangles.
///
/// `supports` must be zeroed and sized to the CSR.
pub fn compute_supports<C: SupportCounter>(
    csr: &ZeroTerminatedCsr,
    supports: &SupportArray<C>,
    strategy: Strategy,
    workers: &Workers,
) -> Result<u64, TrussError> {
    if supports.len() != csr.total_slots() {
        return Err(TrussError::InvalidParameter(format!(
            "support array has {} slots, CSR has {}",
            supports.len(),
            csr.total_slots()
        )));
    }
    let n = csr.num_vertices();
    let triangles = match strategy {
        Strategy::Serial => (1..=n).map(|v| row_task(csr, supports, v)).sum(),
        Strategy::Coarse => workers.install(|| {
            (1..=n)
                .into_par_iter()
                .map(|v| row_task(csr, supports, v))
                .sum()
        }),
        Strategy::Fine => workers.install(|| {
            (0..csr.total_slots())
                .into_par_iter()
                .map(|slot| slot_task(csr, supports, slot))
                .sum()
        }),
    };
    supports.check_overflow()?;
    Ok(triangles)
}
