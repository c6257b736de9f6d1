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

use std::sync::atomic::{AtomicU16, AtomicU32, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{TrussError, Workers};

/// Counter bit width for [`SupportArray`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SupportWidth {
    /// Cannot overflow: a support never exceeds `n - 2 < u32::MAX`.
    #[default]
    Bits32,
    /// Half the memory traffic; compute reports an error on overflow.
    Bits16,
}

/// An atomic triangle counter.
pub trait SupportCounter: Send + Sync {
    const BITS: u32;

    fn zeroed() -> Self;

    /// Adds `delta`, returning `false` if the stored value wrapped.
    fn add(&self, delta: u32) -> bool;

    fn get(&self) -> u32;

    fn clear(&self);
}

impl SupportCounter for AtomicU32 {
    const BITS: u32 = 32;

    fn zeroed() -> Self {
        AtomicU32::new(0)
    }

    #[inline]
    fn add(&self, delta: u32) -> bool {
        self.fetch_add(delta, Ordering::Relaxed)
            .checked_add(delta)
            .is_some()
    }

    #[inline]
    fn get(&self) -> u32 {
        self.load(Ordering::Relaxed)
    }

    fn clear(&self) {
        self.store(0, Ordering::Relaxed)
    }
}

impl SupportCounter for AtomicU16 {
    const BITS: u32 = 16;

    fn zeroed() -> Self {
        AtomicU16::new(0)
    }

    #[inline]
    fn add(&self, delta: u32) -> bool {
        let prev = self.fetch_add(delta as u16, Ordering::Relaxed);
        u32::from(prev) + delta <= u32::from(u16::MAX)
    }

    #[inline]
    fn get(&self) -> u32 {
        u32::from(self.load(Ordering::Relaxed))
    }

    fn clear(&self) {
        self.store(0, Ordering::Relaxed)
    }
}

/// One atomic support counter per CSR slot.
///
/// Overflowing adds are recorded rather than panicking inside a worker; the
/// lowest overflowed slot is reported once the support phase has finished.
pub struct SupportArray<C: SupportCounter = AtomicU32> {
    counts: Box<[C]>,
    overflow: AtomicUsize,
}

impl<C: SupportCounter> SupportArray<C> {
    pub fn new(slots: usize) -> Self {
        SupportArray {
            counts: (0..slots).map(|_| C::zeroed()).collect(),
            overflow: AtomicUsize::new(usize::MAX),
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    #[inline]
    pub fn get(&self, slot: usize) -> u32 {
        self.counts[slot].get()
    }

    #[inline]
    pub fn increment(&self, slot: usize) {
        self.add(slot, 1);
    }

    #[inline]
    pub fn add(&self, slot: usize, delta: u32) {
        if !self.counts[slot].add(delta) {
            self.overflow.fetch_min(slot, Ordering::Relaxed);
        }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.counts.iter().map(SupportCounter::get).collect()
    }

    pub fn sum(&self) -> u64 {
        self.counts.iter().map(|c| u64::from(c.get())).sum()
    }

    pub fn max(&self) -> u32 {
        self.counts
            .iter()
            .map(SupportCounter::get)
            .max()
            .unwrap_or(0)
    }

    /// Returns an error naming the lowest slot that wrapped since the last reset.
    pub fn check_overflow(&self) -> Result<(), TrussError> {
        match self.overflow.load(Ordering::Relaxed) {
            usize::MAX => Ok(()),
            slot => Err(TrussError::SupportOverflow {
                slot,
                bits: C::BITS,
            }),
        }
    }

    fn clear_serial(&self) {
        self.counts.iter().for_each(SupportCounter::clear);
        self.overflow.store(usize::MAX, Ordering::Relaxed);
    }
}

impl<C: SupportCounter> std::fmt::Debug for SupportArray<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.to_vec()).finish()
    }
}

/// Zeroes every counter, spreading the work over `workers`.
pub fn reset_supports<C: SupportCounter>(supports: &SupportArray<C>, workers: &Workers) {
    if workers.threads() == 1 || supports.len() < 1 << 14 {
        supports.clear_serial();
        return;
    }
    workers.install(|| {
        supports
            .counts
            .par_iter()
            .with_min_len(1 << 12)
            .for_each(SupportCounter::clear)
    });
    supports.overflow.store(usize::MAX, Ordering::Relaxed);
}
