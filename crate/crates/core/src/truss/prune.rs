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
use super::{check_k, TrussError, Workers};
use crate::graph_io::ZeroTerminatedCsr;

/// Drops every edge whose support is below `k - 2` and returns how many went.
///
/// Survivors are compacted to the front of their row in their original order
/// and the rest of the row is zero-filled, so rows stay sorted and free of
/// interior zeros. Supports are left untouched.
pub fn prune_edges<C: SupportCounter>(
    csr: &mut ZeroTerminatedCsr,
    supports: &SupportArray<C>,
    k: u32,
    workers: &Workers,
) -> Result<u64, TrussError> {
    check_k(k)?;
    if supports.len() != csr.total_slots() {
        return Err(TrussError::InvalidParameter(format!(
            "support array has {} slots, CSR has {}",
            supports.len(),
            csr.total_slots()
        )));
    }
    let threshold = k - 2;
    let rows = csr.rows_mut();
    let removed = if workers.threads() == 1 {
        rows.into_iter()
            .map(|(start, row)| compact_row(row, start, supports, threshold))
            .sum()
    } else {
        workers.install(|| {
            rows.into_par_iter()
                .map(|(start, row)| compact_row(row, start, supports, threshold))
                .sum()
        })
    };
    Ok(removed)
}

fn compact_row<C: SupportCounter>(
    row: &mut [u32],
    start: usize,
    supports: &SupportArray<C>,
    threshold: u32,
) -> u64 {
    let mut write = 0;
    let mut read = 0;
    while read < row.len() && row[read] != 0 {
        if supports.get(start + read) >= threshold {
            row[write] = row[read];
            write += 1;
        }
        read += 1;
    }
    row[write..read].fill(0);
    (read - write) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_io::{build_csr, EdgeList};
    use crate::truss::{compute_supports, Strategy};

    fn triangle() -> (ZeroTerminatedCsr, SupportArray) {
        let g =
            build_csr(&EdgeList::with_identity_labels(3, vec![(1, 2), (1, 3), (2, 3)]).unwrap())
                .unwrap();
        let s = SupportArray::new(g.total_slots());
        for slot in [0, 1, 3] {
            s.increment(slot);
        }
        (g, s)
    }

    #[test]
    fn threshold_met_exactly_keeps_everything() {
        let (mut g, s) = triangle();
        let before = g.clone();
        assert_eq!(prune_edges(&mut g, &s, 3, &Workers::new(1).unwrap()), Ok(0));
        assert_eq!(g, before);
    }

    #[test]
    fn nothing_survives_a_higher_threshold() {
        let (mut g, s) = triangle();
        assert_eq!(prune_edges(&mut g, &s, 4, &Workers::new(2).unwrap()), Ok(3));
        assert_eq!(g.col_idx(), &[0, 0, 0, 0, 0, 0]);
        g.validate().unwrap();
    }

    #[test]
    fn rejects_k_below_two() {
        let (mut g, s) = triangle();
        assert!(matches!(
            prune_edges(&mut g, &s, 1, &Workers::new(1).unwrap()),
            Err(TrussError::InvalidParameter(_))
        ));
    }

    #[test]
    fn bowtie_loses_all_edges_at_k4() {
        // triangles {1,2,3} and {1,4,5}
        let edges = vec![(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (4, 5)];
        let mut g = build_csr(&EdgeList::with_identity_labels(5, edges).unwrap()).unwrap();
        let workers = Workers::new(2).unwrap();
        let s: SupportArray = SupportArray::new(g.total_slots());
        compute_supports(&g, &s, Strategy::Fine, &workers).unwrap();
        assert_eq!(prune_edges(&mut g, &s, 4, &workers), Ok(6));
        assert_eq!(g.live_edge_count(), 0);
        g.validate().unwrap();
    }

    #[test]
    fn compaction_preserves_order_mid_row() {
        // row 1 = [2, 3, 4, 5, 0]; drop 3 and 5
        let edges = vec![(1, 2), (1, 3), (1, 4), (1, 5)];
        let mut g = build_csr(&EdgeList::with_identity_labels(5, edges).unwrap()).unwrap();
        let s: SupportArray = SupportArray::new(g.total_slots());
        s.add(0, 4);
        s.add(2, 1);
        let removed = prune_edges(&mut g, &s, 3, &Workers::new(1).unwrap()).unwrap();
        assert_eq!(removed, 2);
        assert_eq!(g.row_slots(1), &[2, 4, 0, 0, 0]);
        g.validate().unwrap();
    }
}
