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

//! Parallel K-truss decomposition with the Eager support-update scheme.
//!
//! Graphs are ingested from SNAP-style edge lists, canonicalized into an
//! upper-triangular [`ZeroTerminatedCsr`], and then repeatedly pruned until
//! every surviving edge sits in at least `k - 2` triangles. Support counts
//! can be computed serially, in parallel per adjacency row (coarse), or in
//! parallel per nonzero slot (fine).
//!
//! ```
//! use ktruss::{build_csr, canonicalize, ktruss, Strategy, Workers};
//!
//! let raw = [(1, 2), (2, 3), (1, 3), (3, 4)];
//! let edges = canonicalize(&raw).unwrap();
//! let csr = build_csr(&edges).unwrap();
//! let workers = Workers::new(2).unwrap();
//! let truss = ktruss(&csr, 3, Strategy::Fine, &workers).unwrap();
//! assert_eq!(truss.edges.len(), 3);
//! ```

pub mod bench;
pub mod cli;
pub mod graph_io;
pub mod oracle;
pub mod truss;

pub use graph_io::{
    build_csr, canonicalize, parse_edge_list, read_csr_cache, write_csr_cache, EdgeList,
    GraphIoError, ZeroTerminatedCsr,
};
pub use truss::{
    compute_supports, intersect_tails, kmax_search, ktruss, prune_edges, reset_supports, Strategy,
    SupportArray, SupportWidth, TrussEdge, TrussError, TrussOptions, TrussResult, TrussRun,
    Workers,
};
