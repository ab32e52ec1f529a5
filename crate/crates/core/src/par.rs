//! Deterministic index-range parallelism.
//!
//! Work is split into a fixed number of chunks independent of the thread
//! count, each chunk is mapped on some thread, and the per-chunk results are
//! folded sequentially in chunk order. Floating-point reductions therefore
//! produce byte-identical results for any `--threads` setting.

/// Number of fixed work chunks; also the maximum useful thread count.
const CHUNKS: usize = 64;

/// Thread cap taken from `HEISLAB_THREADS` (defaults to 1 when unset or
/// unparseable). CLI flags override by passing an explicit count.
pub fn default_threads() -> usize {
    std::env::var("HEISLAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

/// Map disjoint subranges of `0..n` and fold the chunk results in order.
pub fn map_chunks<T, F>(n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(std::ops::Range<usize>) -> T + Sync,
{
    let threads = threads.max(1);
    let chunk_count = CHUNKS.min(n.max(1));
    let ranges: Vec<std::ops::Range<usize>> = (0..chunk_count)
        .map(|c| {
            let lo = c * n / chunk_count;
            let hi = (c + 1) * n / chunk_count;
            lo..hi
        })
        .collect();
    if threads == 1 || n < 2 {
        return ranges.into_iter().map(f).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: std::sync::Mutex<Vec<Option<T>>> =
        std::sync::Mutex::new((0..chunk_count).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..threads.min(chunk_count) {
            scope.spawn(|| loop {
                let c = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if c >= chunk_count {
                    break;
                }
                let out = f(ranges[c].clone());
                slots.lock().unwrap()[c] = Some(out);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|s| s.expect("chunk computed"))
        .collect()
}

/// Deterministic parallel sum of `f(i)` over `0..n`.
pub fn sum_indexed<F>(n: usize, threads: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    map_chunks(n, threads, |r| r.map(&f).sum::<f64>())
        .into_iter()
        .sum()
}

/// Deterministic parallel max of `f(i)` over `0..n` (NaN-free inputs).
pub fn max_indexed<F>(n: usize, threads: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    map_chunks(n, threads, |r| r.map(&f).fold(f64::NEG_INFINITY, f64::max))
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_is_thread_count_invariant() {
        let f = |i: usize| ((i as f64) * 0.7).sin() / (i as f64 + 1.0);
        let s1 = sum_indexed(10_000, 1, f);
        let s4 = sum_indexed(10_000, 4, f);
        assert_eq!(s1.to_bits(), s4.to_bits());
    }

    #[test]
    fn max_matches_sequential() {
        let f = |i: usize| ((i as f64) * 0.31).cos();
        let m1 = max_indexed(5_000, 1, f);
        let m3 = max_indexed(5_000, 3, f);
        assert_eq!(m1.to_bits(), m3.to_bits());
    }
}
