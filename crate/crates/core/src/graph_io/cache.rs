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

//! Little-endian binary snapshot of a [`ZeroTerminatedCsr`].
//!
//! Layout: 8-byte magic, `u32` vertex count, `u64` slot count, then
//! `(n + 2)` `u32` row offsets and `total_slots` `u32` column entries.

use std::io::{Read, Write};

use super::{GraphIoError, ZeroTerminatedCsr};

pub const CACHE_MAGIC: [u8; 8] = *b"ZTCSR1\0\0";

const HEADER_LEN: usize = 8 + 4 + 8;

pub fn write_csr_cache<W: Write>(csr: &ZeroTerminatedCsr, mut sink: W) -> std::io::Result<()> {
    let mut buf = Vec::with_capacity(HEADER_LEN + 4 * (csr.row_ptr().len() + csr.total_slots()));
    buf.extend_from_slice(&CACHE_MAGIC);
    buf.extend_from_slice(&csr.num_vertices().to_le_bytes());
    buf.extend_from_slice(&(csr.total_slots() as u64).to_le_bytes());
    for &x in csr.row_ptr().iter().chain(csr.col_idx()) {
        buf.extend_from_slice(&x.to_le_bytes());
    }
    sink.write_all(&buf)?;
    sink.flush()
}

pub fn read_csr_cache<R: Read>(mut source: R) -> Result<ZeroTerminatedCsr, GraphIoError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    decode(&bytes)
}

fn corrupt(msg: impl Into<String>) -> GraphIoError {
    GraphIoError::CorruptCache(msg.into())
}

fn decode(bytes: &[u8]) -> Result<ZeroTerminatedCsr, GraphIoError> {
    if bytes.len() < HEADER_LEN {
        return Err(corrupt(format!(
            "{} bytes is shorter than the header",
            bytes.len()
        )));
    }
    if bytes[..8] != CACHE_MAGIC {
        return Err(corrupt("bad magic"));
    }
    let num_vertices = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    let total_slots = u64::from_le_bytes(bytes[12..20].try_into().unwrap());

    let words = (u64::from(num_vertices) + 2)
        .checked_add(total_slots)
        .and_then(|w| w.checked_mul(4))
        .ok_or_else(|| corrupt("slot count overflows"))?;
    let payload = (bytes.len() - HEADER_LEN) as u64;
    if payload != words {
        return Err(corrupt(format!(
            "payload is {payload} bytes, header implies {words}"
        )));
    }

    let mut values = bytes[HEADER_LEN..]
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()));
    let row_ptr: Vec<u32> = values.by_ref().take(num_vertices as usize + 2).collect();
    let col_idx: Vec<u32> = values.collect();

    ZeroTerminatedCsr::from_parts(num_vertices, row_ptr, col_idx)
        .map_err(|v| corrupt(format!("invariant violated: {v}")))
}
