//! The deletion algorithm over represented valuations.
//!
//! A query for the marginal on one variable is answered by deleting every
//! other variable in turn. Deleting `k` touches only the valuations whose
//! scope mentions `k`: their pooled basics are split into the part that
//! mentions `k` (processed by the instance's deletion) and the rest, which
//! is carried over untouched. Subsumed basics are removed before every
//! deletion and from every freshly produced set.
//!
//! Lower representations pool basics by plain union; upper representations
//! must combine valuations before the (then easy) projection.

mod instances;
mod order;

pub use instances::{FiniteLower, FiniteUpper, PolytopeLower, PolytopeUpper};
pub use order::{choose_order, Heuristic, OrderError};

use std::collections::BTreeSet;

use crate::index_set::IndexSet;
use crate::rep::{Basic, CapacityError, DeleteOutcome, Production, Represented};
use crate::vars::{VarId, VarTable};

/// One instantiation's lower-representation callbacks.
pub trait LowerInstance {
    type Basic: Basic;

    /// May `other` be dropped from a pool that retains `keeper`?
    fn absorbs(&self, keeper: &Self::Basic, other: &Self::Basic) -> bool;

    /// Deletes `k` from basics that all mention it.
    fn delete_variable(&self, mentioning: &[Self::Basic], k: VarId) -> DeleteOutcome<Self::Basic>;
}

/// One instantiation's upper-representation callbacks.
pub trait UpperInstance {
    type Basic: Basic;

    /// May `other` be dropped from a disjunction that retains `keeper`?
    fn absorbs(&self, keeper: &Self::Basic, other: &Self::Basic) -> bool;

    /// Basics of the combination of two disjunctions, on the union scope.
    /// An empty result is the contradiction.
    fn combine(
        &self,
        a: &Represented<Self::Basic>,
        b: &Represented<Self::Basic>,
    ) -> Result<Vec<Self::Basic>, CapacityError>;

    /// Projects one basic onto `to ∩ scope(basic)`.
    fn project_basic(&self, basic: &Self::Basic, to: &IndexSet) -> Self::Basic;

    /// Minimizes a disjunction without changing its denotation.
    fn minimize(&self, basics: Vec<Self::Basic>) -> Vec<Self::Basic>;
}

/// Counters over a whole run. "Materialized" counts every basic valuation
/// the engine ever held: the initial pool plus everything produced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub initial_basics: usize,
    pub produced_basics: usize,
    pub steps: usize,
    pub subsumed: usize,
}

impl EngineStats {
    pub fn materialized(&self) -> usize {
        self.initial_basics + self.produced_basics
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EngineResult<B> {
    Answer(Represented<B>),
    Contradiction,
}

/// Structured record of one deletion step, including the provenance of
/// every basic the step added.
#[derive(Clone, Debug)]
pub struct StepRecord<B> {
    pub variable: VarId,
    pub mention: usize,
    pub carry: usize,
    pub subsumed: usize,
    pub produced: Vec<Production<B>>,
}

/// Everything a run leaves behind: the answer (or the contradiction), the
/// counters, the per-step records and one formatted trace line per step.
#[derive(Clone, Debug)]
pub struct EngineRun<B> {
    pub result: EngineResult<B>,
    pub stats: EngineStats,
    pub steps: Vec<StepRecord<B>>,
    pub trace: Vec<String>,
}

/// Removes every basic absorbed by another member, keeping the earliest of
/// semantically equal ones. Returns the survivors and the removal count.
pub fn remove_subsumed<B: Basic>(
    absorbs: impl Fn(&B, &B) -> bool,
    basics: impl IntoIterator<Item = B>,
) -> (Vec<B>, usize) {
    let mut removed = 0;
    let mut keep: Vec<B> = Vec::new();
    for b in basics {
        if keep.iter().any(|k| absorbs(k, &b)) {
            removed += 1;
            continue;
        }
        let before = keep.len();
        keep.retain(|k| !absorbs(&b, k));
        removed += before - keep.len();
        keep.push(b);
    }
    (keep, removed)
}

fn trace_line(
    vars: &VarTable,
    k: VarId,
    mention: usize,
    carry: usize,
    produce: usize,
    subsume: usize,
) -> String {
    format!(
        "delete {} mention={mention} carry={carry} produce={produce} subsume={subsume}",
        vars.name(k)
    )
}

/// Mutable deletion state for a lower representation.
pub struct LowerEngine<'a, I: LowerInstance> {
    instance: &'a I,
    vars: &'a VarTable,
    pool: Vec<Represented<I::Basic>>,
    remaining: IndexSet,
    query: VarId,
    stats: EngineStats,
    steps: Vec<StepRecord<I::Basic>>,
    trace: Vec<String>,
    contradicted: bool,
}

impl<'a, I: LowerInstance> LowerEngine<'a, I> {
    pub fn new(
        instance: &'a I,
        vars: &'a VarTable,
        reps: Vec<Represented<I::Basic>>,
        query: VarId,
        all_vars: IndexSet,
    ) -> Self {
        let mut stats = EngineStats::default();
        // Basics are sets: deduplicate within each valuation eagerly.
        let pool: Vec<Represented<I::Basic>> = reps
            .into_iter()
            .map(|r| {
                let basics: BTreeSet<I::Basic> = r.basics.into_iter().collect();
                Represented::new(r.scope, basics.into_iter().collect())
            })
            .collect();
        stats.initial_basics = pool.iter().map(|r| r.basics.len()).sum();
        Self {
            instance,
            vars,
            pool,
            remaining: all_vars,
            query,
            stats,
            steps: Vec::new(),
            trace: Vec::new(),
            contradicted: false,
        }
    }

    pub fn pool(&self) -> &[Represented<I::Basic>] {
        &self.pool
    }

    pub fn contradicted(&self) -> bool {
        self.contradicted
    }

    fn record_step(&mut self, record: StepRecord<I::Basic>) {
        self.trace.push(trace_line(
            self.vars,
            record.variable,
            record.mention,
            record.carry,
            record.produced.len(),
            record.subsumed,
        ));
        self.steps.push(record);
    }

    /// One deletion step. The touched valuations are replaced by a single
    /// one: carried basics plus whatever the variable deletion produced.
    pub fn delete_variable(&mut self, k: VarId) {
        assert!(k != self.query, "the query variable is never deleted");
        assert!(self.remaining.contains(k), "variable already deleted");
        self.remaining = self.remaining.without(k);
        if self.contradicted {
            return;
        }
        self.stats.steps += 1;

        let (touched, rest): (Vec<_>, Vec<_>) = std::mem::take(&mut self.pool)
            .into_iter()
            .partition(|r| r.scope.contains(k));
        self.pool = rest;
        if touched.is_empty() {
            self.record_step(StepRecord {
                variable: k,
                mention: 0,
                carry: 0,
                subsumed: 0,
                produced: Vec::new(),
            });
            return;
        }

        let merged_scope = touched
            .iter()
            .fold(IndexSet::empty(), |acc, r| acc.union(&r.scope));
        let pooled: BTreeSet<I::Basic> = touched.into_iter().flat_map(|r| r.basics).collect();
        let (pooled, removed_pre) = remove_subsumed(|a, b| self.instance.absorbs(a, b), pooled);

        let (mentioning, carried): (Vec<_>, Vec<_>) =
            pooled.into_iter().partition(|b| b.scope().contains(k));
        let mention = mentioning.len();
        let carry = carried.len();

        let produced = match self.instance.delete_variable(&mentioning, k) {
            DeleteOutcome::Contradiction => {
                self.contradicted = true;
                self.record_step(StepRecord {
                    variable: k,
                    mention,
                    carry,
                    subsumed: removed_pre,
                    produced: Vec::new(),
                });
                return;
            }
            DeleteOutcome::Produced(p) => p,
        };
        self.stats.produced_basics += produced.len();

        let merged: BTreeSet<I::Basic> = carried
            .into_iter()
            .chain(produced.iter().map(|p| p.basic.clone()))
            .collect();
        let (basics, removed_post) = remove_subsumed(|a, b| self.instance.absorbs(a, b), merged);
        let subsume = removed_pre + removed_post;
        self.stats.subsumed += subsume;
        self.record_step(StepRecord {
            variable: k,
            mention,
            carry,
            subsumed: subsume,
            produced,
        });

        if !basics.is_empty() {
            self.pool
                .push(Represented::new(merged_scope.without(k), basics));
        }
    }

    /// Pools what is left into the answer on the query variable.
    pub fn finish(mut self) -> EngineRun<I::Basic> {
        if self.contradicted {
            return EngineRun {
                result: EngineResult::Contradiction,
                stats: self.stats,
                steps: self.steps,
                trace: self.trace,
            };
        }
        let scope = IndexSet::singleton(self.query);
        let pooled: BTreeSet<I::Basic> = std::mem::take(&mut self.pool)
            .into_iter()
            .flat_map(|r| r.basics)
            .collect();
        debug_assert!(pooled.iter().all(|b| b.scope().is_subset(&scope)));
        let (basics, removed) = remove_subsumed(|a, b| self.instance.absorbs(a, b), pooled);
        self.stats.subsumed += removed;
        EngineRun {
            result: EngineResult::Answer(Represented::new(scope, basics)),
            stats: self.stats,
            steps: self.steps,
            trace: self.trace,
        }
    }
}

/// Mutable deletion state for an upper representation. Valuations touching
/// the deleted variable are combined first; projection then distributes over
/// the disjunction.
pub struct UpperEngine<'a, U: UpperInstance> {
    instance: &'a U,
    vars: &'a VarTable,
    pool: Vec<Represented<U::Basic>>,
    remaining: IndexSet,
    query: VarId,
    stats: EngineStats,
    steps: Vec<StepRecord<U::Basic>>,
    trace: Vec<String>,
    contradicted: bool,
}

impl<'a, U: UpperInstance> UpperEngine<'a, U> {
    pub fn new(
        instance: &'a U,
        vars: &'a VarTable,
        reps: Vec<Represented<U::Basic>>,
        query: VarId,
        all_vars: IndexSet,
    ) -> Self {
        let mut stats = EngineStats::default();
        let pool: Vec<Represented<U::Basic>> = reps
            .into_iter()
            .map(|r| Represented::new(r.scope, instance.minimize(r.basics)))
            .collect();
        stats.initial_basics = pool.iter().map(|r| r.basics.len()).sum();
        let contradicted = pool.iter().any(|r| r.basics.is_empty());
        Self {
            instance,
            vars,
            pool,
            remaining: all_vars,
            query,
            stats,
            steps: Vec::new(),
            trace: Vec::new(),
            contradicted,
        }
    }

    fn record_step(&mut self, record: StepRecord<U::Basic>) {
        self.trace.push(trace_line(
            self.vars,
            record.variable,
            record.mention,
            record.carry,
            record.produced.len(),
            record.subsumed,
        ));
        self.steps.push(record);
    }

    pub fn pool(&self) -> &[Represented<U::Basic>] {
        &self.pool
    }

    pub fn contradicted(&self) -> bool {
        self.contradicted
    }

    fn combine_all(
        &mut self,
        reps: Vec<Represented<U::Basic>>,
    ) -> Result<Option<Represented<U::Basic>>, CapacityError> {
        let mut iter = reps.into_iter();
        let mut acc = iter.next().expect("at least one valuation to combine");
        for rep in iter {
            let scope = acc.scope.union(&rep.scope);
            let basics = self.instance.combine(&acc, &rep)?;
            self.stats.produced_basics += basics.len();
            if basics.is_empty() {
                self.contradicted = true;
                return Ok(None);
            }
            acc = Represented::new(scope, basics);
        }
        Ok(Some(acc))
    }

    pub fn delete_variable(&mut self, k: VarId) -> Result<(), CapacityError> {
        assert!(k != self.query, "the query variable is never deleted");
        assert!(self.remaining.contains(k), "variable already deleted");
        self.remaining = self.remaining.without(k);
        if self.contradicted {
            return Ok(());
        }
        self.stats.steps += 1;

        let (touched, rest): (Vec<_>, Vec<_>) = std::mem::take(&mut self.pool)
            .into_iter()
            .partition(|r| r.scope.contains(k));
        self.pool = rest;
        if touched.is_empty() {
            self.record_step(StepRecord {
                variable: k,
                mention: 0,
                carry: 0,
                subsumed: 0,
                produced: Vec::new(),
            });
            return Ok(());
        }
        let mention: usize = touched.iter().map(|r| r.basics.len()).sum();

        let Some(combined) = self.combine_all(touched)? else {
            self.record_step(StepRecord {
                variable: k,
                mention,
                carry: 0,
                subsumed: 0,
                produced: Vec::new(),
            });
            return Ok(());
        };
        let target = combined.scope.without(k);
        let projected: Vec<U::Basic> = combined
            .basics
            .iter()
            .map(|b| self.instance.project_basic(b, &target))
            .collect();
        let before = projected.len();
        let basics = self.instance.minimize(projected);
        let subsume = before - basics.len();
        self.stats.subsumed += subsume;
        self.record_step(StepRecord {
            variable: k,
            mention,
            carry: 0,
            subsumed: subsume,
            produced: basics
                .iter()
                .map(|b| Production::new(b.clone(), Vec::new()))
                .collect(),
        });
        self.pool.push(Represented::new(target, basics));
        Ok(())
    }

    pub fn finish(mut self) -> Result<EngineRun<U::Basic>, CapacityError> {
        if self.contradicted {
            return Ok(EngineRun {
                result: EngineResult::Contradiction,
                stats: self.stats,
                steps: self.steps,
                trace: self.trace,
            });
        }
        let scope = IndexSet::singleton(self.query);
        let reps = std::mem::take(&mut self.pool);
        if reps.is_empty() {
            // Nothing was ever asserted: the neutral answer.
            return Ok(EngineRun {
                result: EngineResult::Answer(Represented::new(scope, Vec::new())),
                stats: self.stats,
                steps: self.steps,
                trace: self.trace,
            });
        }
        let result = match self.combine_all(reps)? {
            Some(answer) => {
                debug_assert!(answer.scope.is_subset(&scope));
                let basics = self.instance.minimize(answer.basics);
                EngineResult::Answer(Represented::new(scope, basics))
            }
            None => EngineResult::Contradiction,
        };
        Ok(EngineRun {
            result,
            stats: self.stats,
            steps: self.steps,
            trace: self.trace,
        })
    }
}

/// Runs the whole deletion sequence for a lower representation.
pub fn answer_query_lower<I: LowerInstance>(
    instance: &I,
    vars: &VarTable,
    reps: Vec<Represented<I::Basic>>,
    query: VarId,
    order: &[VarId],
) -> EngineRun<I::Basic> {
    let all = IndexSet::from_iter(order.iter().copied().chain([query]));
    let mut engine = LowerEngine::new(instance, vars, reps, query, all);
    for &k in order {
        engine.delete_variable(k);
    }
    engine.finish()
}

/// Runs the whole deletion sequence for an upper representation.
pub fn answer_query_upper<U: UpperInstance>(
    instance: &U,
    vars: &VarTable,
    reps: Vec<Represented<U::Basic>>,
    query: VarId,
    order: &[VarId],
) -> Result<EngineRun<U::Basic>, CapacityError> {
    let all = IndexSet::from_iter(order.iter().copied().chain([query]));
    let mut engine = UpperEngine::new(instance, vars, reps, query, all);
    for &k in order {
        engine.delete_variable(k)?;
    }
    engine.finish()
}
