//! Independent multi-walk engine: W isolated solver instances started from
//! distinct seeds, first winner publishes its solution and cancels the rest.
//!
//! Workers share exactly two objects: a monotone [`CancellationToken`] and a
//! first-writer-wins result slot. Everything else — model instance, random
//! generator, search state — is per worker.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex, OnceLock};
use std::thread;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::model::ProblemModel;
pub use crate::rng::derive;
use crate::solver::{solve_cancellable, SolveOutcome, SolverParams};

/// Monotone stop flag: once cancelled it stays cancelled, and a set flag
/// becomes visible to every polling solver within one iteration.
#[derive(Clone, Debug, Default)]
pub struct CancellationToken {
    flag: Arc<AtomicBool>,
}

impl CancellationToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.flag.store(true, Ordering::Release);
    }

    pub fn is_cancelled(&self) -> bool {
        self.flag.load(Ordering::Acquire)
    }
}

/// A fixed-size pool of independent walkers sharing one seed base.
#[derive(Clone, Copy, Debug)]
pub struct WalkPool {
    pub workers: usize,
    pub seed_base: u64,
}

impl WalkPool {
    pub fn new(workers: usize, seed_base: u64) -> Self {
        Self { workers, seed_base }
    }

    /// Runs the pool; see [`multi_walk_solve_cancellable`].
    pub fn run<F>(
        &self,
        model_factory: F,
        params: &SolverParams,
        cancel: &CancellationToken,
    ) -> Result<SolveOutcome>
    where
        F: Fn() -> Box<dyn ProblemModel>,
    {
        multi_walk_solve_cancellable(model_factory, params, self.workers, self.seed_base, cancel)
    }
}

/// Runs `workers` independent solvers on fresh model instances, worker `k`
/// seeded with `derive(seed_base, k)` (the seed in `params` is ignored).
/// The first worker to reach cost 0 wins: its outcome is returned with its
/// `worker_id`, and every other worker observes the cancellation within one
/// iteration. When nobody solves, the minimum-cost outcome is returned
/// (ties broken by lowest worker id) with `solved = false`.
pub fn multi_walk_solve<F>(
    model_factory: F,
    params: &SolverParams,
    workers: usize,
    seed_base: u64,
) -> Result<SolveOutcome>
where
    F: Fn() -> Box<dyn ProblemModel>,
{
    multi_walk_solve_cancellable(model_factory, params, workers, seed_base, &CancellationToken::new())
}

/// [`multi_walk_solve`] with an externally visible token. The pool cancels
/// `cancel` itself once a worker wins, so callers should pass a fresh token
/// per run; cancelling it from outside stops the whole pool.
pub fn multi_walk_solve_cancellable<F>(
    model_factory: F,
    params: &SolverParams,
    workers: usize,
    seed_base: u64,
    cancel: &CancellationToken,
) -> Result<SolveOutcome>
where
    F: Fn() -> Box<dyn ProblemModel>,
{
    if workers == 0 {
        return Err(Error::InvalidParams("worker count must be at least 1".into()));
    }
    params.validate()?;

    let started = Instant::now();
    let winner: OnceLock<SolveOutcome> = OnceLock::new();
    let leftovers: Mutex<Vec<SolveOutcome>> = Mutex::new(Vec::with_capacity(workers));

    thread::scope(|scope| {
        for worker_id in 0..workers {
            let worker_params = params.clone().with_seed(derive(seed_base, worker_id as u64));
            let model = model_factory();
            let winner = &winner;
            let leftovers = &leftovers;
            thread::Builder::new()
                .name(format!("walk-{worker_id}"))
                .spawn_scoped(scope, move || {
                    let mut outcome = solve_cancellable(model.as_ref(), &worker_params, cancel)
                        .expect("params were validated before spawning");
                    outcome.worker_id = Some(worker_id);
                    if outcome.solved {
                        // First writer wins; the token stops the others.
                        if winner.set(outcome).is_ok() {
                            cancel.cancel();
                        }
                    } else {
                        leftovers.lock().unwrap().push(outcome);
                    }
                })
                .expect("failed to spawn walker thread");
        }
    });

    let wall = started.elapsed();
    let mut outcome = match winner.into_inner() {
        Some(solved) => solved,
        None => leftovers
            .into_inner()
            .unwrap()
            .into_iter()
            .min_by_key(|o| (o.cost, o.worker_id))
            .expect("every worker publishes exactly one outcome"),
    };
    outcome.elapsed = wall;
    Ok(outcome)
}
