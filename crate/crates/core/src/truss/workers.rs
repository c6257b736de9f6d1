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

use rayon::{ThreadPool, ThreadPoolBuilder};

use super::TrussError;

/// A fixed-size pool that runs the parallel phases.
pub struct Workers {
    pool: ThreadPool,
}

impl Workers {
    pub fn new(threads: usize) -> Result<Self, TrussError> {
        if threads == 0 {
            return Err(TrussError::InvalidParameter(
                "worker count must be at least 1".into(),
            ));
        }
        let pool = ThreadPoolBuilder::new()
            .num_threads(threads)
            .thread_name(|i| format!("ktruss-worker-{i}"))
            .build()
            .map_err(|e| TrussError::WorkerPool(e.to_string()))?;
        Ok(Workers { pool })
    }

    /// Hardware parallelism, falling back to 1 when it cannot be queried.
    pub fn available() -> usize {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub(crate) fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        self.pool.install(op)
    }
}

impl std::fmt::Debug for Workers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Workers")
            .field("threads", &self.threads())
            .finish()
    }
}
