//! Data-parallel batch execution.
//!
//! With the `parallel` feature (on by default) batches are split into fixed
//! chunks and processed on the rayon pool; without it, or when
//! [`Execution::Sequential`] is requested, the same chunks run in order on
//! the calling thread. Chunk results are always returned in chunk order, so
//! every reduction over them is independent of the execution mode.

use crate::clip::{clip, AlgorithmId, ClipError, ClipOutcome};
use crate::geometry::{ClipWindow, Line};

/// Lines per work unit.
pub const CHUNK_LEN: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon when compiled with `parallel`, otherwise sequential.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Applies `f(chunk_start_index, chunk)` to each chunk of `items`.
pub fn map_chunks<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &[T]) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_chunks(CHUNK_LEN).enumerate().map(|(i, c)| f(i * CHUNK_LEN, c)).collect();
    }
    let _ = exec;
    items.chunks(CHUNK_LEN).enumerate().map(|(i, c)| f(i * CHUNK_LEN, c)).collect()
}

/// Clips every line of a batch with one algorithm.
pub fn clip_batch(
    algo: AlgorithmId,
    lines: &[Line],
    win: &ClipWindow,
    exec: Execution,
) -> Vec<Result<ClipOutcome, ClipError>> {
    map_chunks(lines, exec, |_, chunk| chunk.iter().map(|l| clip(algo, l, win)).collect::<Vec<_>>())
        .into_iter()
        .flatten()
        .collect()
}
