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

//! Edge-list ingestion and the zero-terminated CSR representation.

mod cache;
mod csr;
mod edge_list;

pub use cache::{read_csr_cache, write_csr_cache, CACHE_MAGIC};
pub use csr::{build_csr, CsrViolation, ZeroTerminatedCsr};
pub use edge_list::{canonicalize, parse_edge_list, parse_edge_list_str, EdgeList};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphIoError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("input contains no data lines")]
    EmptyInput,
    #[error("graph has no edges after removing self-loops")]
    EmptyGraph,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("graph too large: {0}")]
    TooLarge(String),
    #[error("corrupt CSR cache: {0}")]
    CorruptCache(String),
}
