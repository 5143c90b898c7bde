//! Worker pool handle passed to the enumerators.

use std::sync::Arc;

/// Runs closures on a dedicated rayon pool, or on the global pool when none was requested.
#[derive(Clone, Default)]
pub struct Exec {
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl Exec {
    pub fn new(threads: Option<usize>) -> Self {
        let pool = threads.map(|n| {
            Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .expect("thread pool"),
            )
        });
        Exec { pool }
    }

    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(p) => p.install(f),
            None => f(),
        }
    }
}
