//! The adaptive-search main loop.
//!
//! Each inner iteration projects constraint errors onto variables, picks the
//! worst non-tabu variable (the culprit), and evaluates every swap involving
//! it. A strictly improving swap is applied; otherwise the culprit is marked
//! tabu for `T` iterations. When `RL` variables are frozen at once, part of
//! the configuration is reshuffled (partial reset); after `MI` iterations
//! without a solution the whole configuration is redrawn, up to `MR` passes.
//! The best configuration ever seen persists across resets and restarts and
//! is returned as a quasi-solution when the budget runs out.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Cost, ProblemModel};
use crate::parallel::CancellationToken;
use crate::perm::Configuration;
use crate::rng::RandomSource;

/// Search control parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    /// T: iterations a variable marked at a local minimum stays out of
    /// culprit selection (counting the marking iteration).
    pub tabu_tenure: u64,
    /// RL: number of simultaneously frozen variables that triggers a
    /// partial reset. Clamped to the variable count at solve time.
    pub reset_limit: usize,
    /// MI: iteration budget per pass; hitting it triggers a restart.
    pub max_iterations: u64,
    /// MR: total pass budget (the initial pass counts as the first).
    pub max_restarts: u64,
    /// Fraction of variables disturbed by a partial reset, in (0, 1].
    pub reset_fraction: f64,
    /// Seed for every stochastic choice of the run.
    pub seed: u64,
}

impl SolverParams {
    /// Defaults scaled to `n` variables: `T = 10`,
    /// `RL = max(2, ceil(n/10))`, `reset_fraction = 0.1`, `MI = 100·n²`,
    /// `MR = 100`, seed 1. The iteration budget grows quadratically so
    /// restarts stay rare on solvable instances.
    pub fn for_size(n: usize) -> Self {
        Self {
            tabu_tenure: 10,
            reset_limit: n.div_ceil(10).max(2).min(n.max(1)),
            max_iterations: 100u64.saturating_mul((n as u64).saturating_mul(n as u64)),
            max_restarts: 100,
            reset_fraction: 0.1,
            seed: 1,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.tabu_tenure < 1 {
            return Err(Error::InvalidParams("tabu tenure must be at least 1".into()));
        }
        if self.reset_limit < 1 {
            return Err(Error::InvalidParams("reset limit must be at least 1".into()));
        }
        if self.max_iterations < 1 {
            return Err(Error::InvalidParams("max iterations must be at least 1".into()));
        }
        if self.max_restarts < 1 {
            return Err(Error::InvalidParams("max restarts must be at least 1".into()));
        }
        if !(self.reset_fraction > 0.0 && self.reset_fraction <= 1.0) {
            return Err(Error::InvalidParams(
                "reset fraction must lie in (0, 1]".into(),
            ));
        }
        Ok(())
    }
}

/// Mutable search state, exposed so selection and reset operations can be
/// driven (and asserted on) outside the main loop.
#[derive(Clone, Debug)]
pub struct SolverState {
    /// Inner-loop counter; resets to 0 on every restart.
    pub iteration: u64,
    /// Pass counter; the initial pass is 1.
    pub restart: u64,
    /// Variable `i` is tabu while `iteration < tabu_until[i]`.
    pub tabu_until: Vec<u64>,
    /// Number of currently tabu variables (recounted on every selection).
    pub frozen_count: usize,
    /// Best configuration of the whole run.
    pub best_config: Configuration,
    /// Cost of `best_config`.
    pub best_cost: Cost,
    /// Cost of the configuration being mutated.
    pub current_cost: Cost,
}

impl SolverState {
    pub fn new(initial: Configuration, cost: Cost) -> Self {
        let n = initial.len();
        Self {
            iteration: 0,
            restart: 1,
            tabu_until: vec![0; n],
            frozen_count: 0,
            best_config: initial,
            best_cost: cost,
            current_cost: cost,
        }
    }

    pub fn is_tabu(&self, i: usize) -> bool {
        self.iteration < self.tabu_until[i]
    }

    /// Freezes variable `i` for `tenure` iterations starting now.
    pub fn mark_tabu(&mut self, i: usize, tenure: u64) {
        self.tabu_until[i] = self.iteration + tenure;
        self.frozen_count += 1;
    }

    pub fn clear_tabu(&mut self) {
        self.tabu_until.fill(0);
        self.frozen_count = 0;
    }
}

/// What one run produced: a solution when `solved`, otherwise the best
/// quasi-solution the budget allowed.
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub solution: Configuration,
    /// Cost of `solution`; 0 exactly when `solved`.
    pub cost: Cost,
    /// Inner iterations summed over all passes.
    pub iterations_total: u64,
    /// Fresh configurations drawn after the initial one.
    pub restarts: u64,
    pub elapsed: Duration,
    pub solved: bool,
    /// Which walker produced this outcome, when run in a pool.
    pub worker_id: Option<usize>,
}

/// One observable transition of the search. Configuration references are
/// only valid during the callback; observers needing history must copy.
#[derive(Clone, Copy, Debug)]
pub enum TraceEvent<'a> {
    /// A pass began with a freshly drawn configuration.
    PassStart {
        restart: u64,
        config: &'a Configuration,
        cost: Cost,
    },
    /// A culprit was selected and its best move evaluated (`best_move` is
    /// `None` only for single-variable problems).
    Step {
        iteration: u64,
        culprit: usize,
        error: Cost,
        best_move: Option<(usize, Cost)>,
    },
    /// The selected move strictly improved the cost and was applied.
    Swapped { i: usize, j: usize, cost: Cost },
    /// No improving move existed; the culprit was frozen.
    Frozen {
        variable: usize,
        until: u64,
        frozen_count: usize,
    },
    /// A partial reset reshuffled part of the configuration.
    Reset {
        transpositions: usize,
        config: &'a Configuration,
        cost: Cost,
    },
    /// A new global best was recorded.
    Improved { cost: Cost },
    /// A pass ended (solved, iteration budget, or cancellation).
    PassEnd {
        restart: u64,
        iterations: u64,
        best_cost: Cost,
    },
}

/// Receives every [`TraceEvent`] of an observed run.
pub trait SearchObserver {
    fn on_event(&mut self, event: TraceEvent<'_>);
}

/// Ignores all events; the plain entry points use it.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoopObserver;

impl SearchObserver for NoopObserver {
    fn on_event(&mut self, _event: TraceEvent<'_>) {}
}

impl<F: FnMut(TraceEvent<'_>)> SearchObserver for F {
    fn on_event(&mut self, event: TraceEvent<'_>) {
        self(event)
    }
}

/// Runs the search with a generator seeded from `params.seed`.
pub fn solve(model: &dyn ProblemModel, params: &SolverParams) -> Result<SolveOutcome> {
    solve_cancellable(model, params, &CancellationToken::new())
}

/// [`solve`] with cooperative cancellation: the token is polled once per
/// inner iteration, before variable selection.
pub fn solve_cancellable(
    model: &dyn ProblemModel,
    params: &SolverParams,
    cancel: &CancellationToken,
) -> Result<SolveOutcome> {
    solve_observed(model, params, cancel, &mut NoopObserver)
}

/// [`solve_cancellable`] with a trace observer.
pub fn solve_observed(
    model: &dyn ProblemModel,
    params: &SolverParams,
    cancel: &CancellationToken,
    observer: &mut dyn SearchObserver,
) -> Result<SolveOutcome> {
    let mut rng = RandomSource::new(params.seed);
    solve_with(model, params, &mut rng, cancel, observer)
}

/// The full-control entry point: caller supplies the generator. Identical
/// `(model, params, generator state)` without cancellation reproduce the
/// same outcome bit for bit (except `elapsed`).
pub fn solve_with(
    model: &dyn ProblemModel,
    params: &SolverParams,
    rng: &mut RandomSource,
    cancel: &CancellationToken,
    observer: &mut dyn SearchObserver,
) -> Result<SolveOutcome> {
    params.validate()?;
    let n = model.size();
    let domain = model.base_domain();
    debug_assert_eq!(domain.len(), n, "model domain must match its size");
    let reset_limit = params.reset_limit.min(n);
    let started = Instant::now();

    let mut errors: Vec<Cost> = Vec::with_capacity(n);
    let mut swap_costs: Vec<Cost> = Vec::with_capacity(n);

    let mut current = Configuration::shuffled(&domain, rng);
    let mut cost = model.cost_of_solution(&current);
    let mut state = SolverState::new(current.clone(), cost);
    let mut iterations_total: u64 = 0;
    let mut cancelled = false;

    observer.on_event(TraceEvent::PassStart {
        restart: state.restart,
        config: &current,
        cost,
    });

    loop {
        while cost > 0 && state.iteration < params.max_iterations {
            if cancel.is_cancelled() {
                cancelled = true;
                break;
            }
            state.iteration += 1;
            iterations_total += 1;

            model.project_errors(&current, &mut errors);
            let Some(culprit) = pick_high_cost(&errors, &mut state, rng) else {
                // Every variable is tabu; only a reset can make progress.
                apply_reset(model, &mut current, &mut cost, &mut state, params, rng, observer);
                continue;
            };
            model.project_swap_costs(&current, cost, culprit, &mut swap_costs);
            let best_move = pick_min_conflict(&swap_costs, culprit, rng);
            observer.on_event(TraceEvent::Step {
                iteration: state.iteration,
                culprit,
                error: errors[culprit],
                best_move,
            });

            match best_move {
                Some((j, projected)) if projected < cost => {
                    current.swap(culprit, j);
                    cost = projected;
                    state.current_cost = cost;
                    debug_assert_eq!(
                        cost,
                        model.cost_of_solution(&current),
                        "incremental swap cost diverged from full recompute"
                    );
                    observer.on_event(TraceEvent::Swapped { i: culprit, j, cost });
                    if cost < state.best_cost {
                        state.best_cost = cost;
                        state.best_config.clone_from(&current);
                        observer.on_event(TraceEvent::Improved { cost });
                    }
                }
                _ => {
                    // Local minimum for the culprit: freeze it, and reset
                    // once enough variables are stuck.
                    state.mark_tabu(culprit, params.tabu_tenure);
                    observer.on_event(TraceEvent::Frozen {
                        variable: culprit,
                        until: state.tabu_until[culprit],
                        frozen_count: state.frozen_count,
                    });
                    if state.frozen_count >= reset_limit {
                        apply_reset(model, &mut current, &mut cost, &mut state, params, rng, observer);
                    }
                }
            }
        }

        observer.on_event(TraceEvent::PassEnd {
            restart: state.restart,
            iterations: state.iteration,
            best_cost: state.best_cost,
        });

        if cost == 0 || cancelled || state.restart >= params.max_restarts {
            break;
        }

        // Restart: fresh configuration, fresh counters; the incumbent
        // persists.
        current = Configuration::shuffled(&domain, rng);
        cost = model.cost_of_solution(&current);
        state.restart += 1;
        state.iteration = 0;
        state.clear_tabu();
        state.current_cost = cost;
        if cost < state.best_cost {
            state.best_cost = cost;
            state.best_config.clone_from(&current);
            observer.on_event(TraceEvent::Improved { cost });
        }
        observer.on_event(TraceEvent::PassStart {
            restart: state.restart,
            config: &current,
            cost,
        });
    }

    Ok(SolveOutcome {
        solution: state.best_config,
        cost: state.best_cost,
        iterations_total,
        restarts: state.restart - 1,
        elapsed: started.elapsed(),
        solved: state.best_cost == 0,
        worker_id: None,
    })
}

fn apply_reset(
    model: &dyn ProblemModel,
    current: &mut Configuration,
    cost: &mut Cost,
    state: &mut SolverState,
    params: &SolverParams,
    rng: &mut RandomSource,
    observer: &mut dyn SearchObserver,
) {
    let transpositions = partial_reset(current, params.reset_fraction, state, rng);
    *cost = model.cost_of_solution(current);
    state.current_cost = *cost;
    observer.on_event(TraceEvent::Reset {
        transpositions,
        config: current,
        cost: *cost,
    });
    if *cost < state.best_cost {
        state.best_cost = *cost;
        state.best_config.clone_from(current);
        observer.on_event(TraceEvent::Improved { cost: *cost });
    }
}

/// Picks the non-tabu variable with the highest projected error, ties broken
/// uniformly at random. Returns `None` when every variable is tabu (the
/// caller must reset). Recounts `state.frozen_count` as a side effect.
pub fn select_var_high_cost(
    model: &dyn ProblemModel,
    c: &Configuration,
    state: &mut SolverState,
    rng: &mut RandomSource,
) -> Option<usize> {
    let mut errors = Vec::with_capacity(model.size());
    model.project_errors(c, &mut errors);
    pick_high_cost(&errors, state, rng)
}

fn pick_high_cost(errors: &[Cost], state: &mut SolverState, rng: &mut RandomSource) -> Option<usize> {
    let mut tabu_count = 0;
    let mut champion: Option<usize> = None;
    let mut best = Cost::MIN;
    let mut ties: u64 = 0;
    for (i, &error) in errors.iter().enumerate() {
        if state.is_tabu(i) {
            tabu_count += 1;
            continue;
        }
        if champion.is_none() || error > best {
            champion = Some(i);
            best = error;
            ties = 1;
        } else if error == best {
            ties += 1;
            if rng.next_below(ties) == 0 {
                champion = Some(i);
            }
        }
    }
    state.frozen_count = tabu_count;
    champion
}

/// Evaluates every swap of `max_i` with another position and returns the one
/// with the lowest projected total cost, ties broken uniformly at random.
/// Returns `None` when no other position exists. The caller detects a local
/// minimum by comparing the projected cost against the current cost.
pub fn select_var_min_conflict(
    model: &dyn ProblemModel,
    c: &Configuration,
    current_cost: Cost,
    max_i: usize,
    rng: &mut RandomSource,
) -> Option<(usize, Cost)> {
    let mut swap_costs = Vec::with_capacity(model.size());
    model.project_swap_costs(c, current_cost, max_i, &mut swap_costs);
    pick_min_conflict(&swap_costs, max_i, rng)
}

fn pick_min_conflict(
    swap_costs: &[Cost],
    max_i: usize,
    rng: &mut RandomSource,
) -> Option<(usize, Cost)> {
    let mut champion: Option<usize> = None;
    let mut best = Cost::MAX;
    let mut ties: u64 = 0;
    for (j, &projected) in swap_costs.iter().enumerate() {
        if j == max_i {
            continue;
        }
        if champion.is_none() || projected < best {
            champion = Some(j);
            best = projected;
            ties = 1;
        } else if projected == best {
            ties += 1;
            if rng.next_below(ties) == 0 {
                champion = Some(j);
            }
        }
    }
    champion.map(|j| (j, best))
}

/// Applies `ceil(fraction · n)` uniformly random transpositions to `c` and
/// clears every tabu mark. The caller recomputes the cost afterwards.
/// Returns the number of transpositions applied (0 for single-variable
/// configurations, where no transposition exists).
pub fn partial_reset(
    c: &mut Configuration,
    fraction: f64,
    state: &mut SolverState,
    rng: &mut RandomSource,
) -> usize {
    state.clear_tabu();
    let n = c.len();
    if n < 2 {
        return 0;
    }
    let transpositions = (fraction * n as f64).ceil() as usize;
    for _ in 0..transpositions {
        let i = rng.next_index(n);
        let j = (i + 1 + rng.next_index(n - 1)) % n;
        c.swap(i, j);
    }
    transpositions
}
