//! Thread pool honouring `FLOWPOLY_THREADS`.

use std::sync::OnceLock;

use rayon::ThreadPool;

fn pool() -> Option<&'static ThreadPool> {
    static POOL: OnceLock<Option<ThreadPool>> = OnceLock::new();
    POOL.get_or_init(|| {
        let n: usize = std::env::var("FLOWPOLY_THREADS").ok()?.trim().parse().ok()?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().ok()
    })
    .as_ref()
}

/// Run `f` inside the configured pool, or rayon's global pool when
/// `FLOWPOLY_THREADS` is unset.
pub fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    match pool() {
        Some(p) => p.install(f),
        None => f(),
    }
}
