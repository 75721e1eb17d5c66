//! Knowledge bases: the user-facing model tying the instances to the engine.
//!
//! A knowledge base declares its instance kind, its variables and a list of
//! represented valuations, all in one representation kind. Queries ask for
//! the marginal of the combination of everything on a single variable.
//!
//! The line-based text format lives in [`parse`] and [`serialize`].

mod parse;
mod serialize;

pub use parse::{parse_kb, ParseError};
pub use serialize::{serialize_kb, serialize_result, EmitMode};

use num::{BigRational, One, Signed, Zero};

use crate::engine::{
    answer_query_lower, answer_query_upper, choose_order, EngineResult, EngineRun, EngineStats,
    FiniteLower, FiniteUpper, Heuristic, OrderError, PolytopeLower, PolytopeUpper,
};
use crate::finite::{Clause, FrameSpec, Tuple};
use crate::index_set::IndexSet;
use crate::polytope::{HalfSpace, Vertex};
use crate::rep::{CapacityError, RepKind, Represented};
use crate::vars::{VarId, VarTable};

type Rat = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Finite,
    Polytope,
}

impl std::fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InstanceKind::Finite => write!(f, "finite"),
            InstanceKind::Polytope => write!(f, "polytope"),
        }
    }
}

/// All valuations of a knowledge base share one instance and one
/// representation kind.
#[derive(Clone, Debug, PartialEq)]
pub enum KbValuations {
    FiniteLower(Vec<Represented<Clause>>),
    FiniteUpper(Vec<Represented<Tuple>>),
    PolytopeLower(Vec<Represented<HalfSpace>>),
    PolytopeUpper(Vec<Represented<Vertex>>),
}

impl KbValuations {
    pub fn rep_kind(&self) -> RepKind {
        match self {
            KbValuations::FiniteLower(_) | KbValuations::PolytopeLower(_) => RepKind::Lower,
            KbValuations::FiniteUpper(_) | KbValuations::PolytopeUpper(_) => RepKind::Upper,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            KbValuations::FiniteLower(v) => v.len(),
            KbValuations::FiniteUpper(v) => v.len(),
            KbValuations::PolytopeLower(v) => v.len(),
            KbValuations::PolytopeUpper(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn basic_scopes(&self) -> Vec<IndexSet> {
        match self {
            KbValuations::FiniteLower(v) => v
                .iter()
                .flat_map(|r| r.basics.iter().map(|b| b.scope().clone()))
                .collect(),
            KbValuations::FiniteUpper(v) => v
                .iter()
                .flat_map(|r| r.basics.iter().map(|b| b.scope().clone()))
                .collect(),
            KbValuations::PolytopeLower(v) => v
                .iter()
                .flat_map(|r| r.basics.iter().map(|b| b.scope().clone()))
                .collect(),
            KbValuations::PolytopeUpper(v) => v
                .iter()
                .flat_map(|r| r.basics.iter().map(|b| b.scope().clone()))
                .collect(),
        }
    }
}

/// A query line from the knowledge base: target plus optional defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct QuerySpec {
    pub target: VarId,
    pub rep: Option<RepKind>,
    pub order: Option<Heuristic>,
}

#[derive(Clone, Debug)]
pub struct KnowledgeBase {
    pub vars: VarTable,
    pub kind: InstanceKind,
    /// Present exactly for the finite instance.
    pub frames: Option<FrameSpec>,
    pub valuations: KbValuations,
    /// Source line of each valuation, parallel to the valuation list.
    pub provenance: Vec<usize>,
    pub queries: Vec<QuerySpec>,
}

impl PartialEq for KnowledgeBase {
    fn eq(&self, other: &Self) -> bool {
        // Provenance is metadata; two bases with the same content are equal.
        self.vars == other.vars
            && self.kind == other.kind
            && self.frames == other.frames
            && self.valuations == other.valuations
            && self.queries == other.queries
    }
}

impl KnowledgeBase {
    pub fn frames(&self) -> &FrameSpec {
        self.frames.as_ref().expect("finite knowledge base")
    }

    pub fn all_vars(&self) -> IndexSet {
        IndexSet::from_iter(self.vars.ids())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Contradiction,
}

/// Basic valuations of an answer, in the representation that was requested.
#[derive(Clone, Debug, PartialEq)]
pub enum AnswerBasics {
    Clauses(Vec<Clause>),
    Tuples(Vec<Tuple>),
    HalfSpaces(Vec<HalfSpace>),
    Vertices(Vec<Vertex>),
}

/// Small materialized form of an answer on the query variable.
#[derive(Clone, Debug, PartialEq)]
pub enum ExplicitAnswer {
    /// Allowed frame values of the query variable.
    FiniteValues(Vec<u32>),
    /// Endpoints of the feasible interval clipped to the unit interval.
    Interval(Vec<Rat>),
}

#[derive(Clone, Debug)]
pub struct QueryResult {
    pub target: VarId,
    pub rep_kind: RepKind,
    pub status: Status,
    /// The answer carries no information in its representation's semantics.
    pub neutral: bool,
    pub basics: AnswerBasics,
    pub explicit: Option<ExplicitAnswer>,
    pub stats: EngineStats,
    pub trace: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum QueryError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
}

#[derive(Clone, Debug, Default)]
pub struct QueryOptions {
    /// Representation of the answer; defaults to the base's own kind.
    pub rep: Option<RepKind>,
    /// Elimination heuristic; defaults to the query line's, then min-degree.
    pub order: Option<Heuristic>,
    /// Cap on the explicit echo (frame values per variable).
    pub explicit_cap: Option<usize>,
}

pub const DEFAULT_EXPLICIT_CAP: usize = 1024;

/// Answers a single-variable marginal query against the knowledge base.
pub fn run_query(
    kb: &KnowledgeBase,
    target: &str,
    opts: &QueryOptions,
) -> Result<QueryResult, QueryError> {
    let Some(query) = kb.vars.lookup(target) else {
        return Err(QueryError::UnknownVariable(target.to_owned()));
    };
    let defaults = kb.queries.iter().find(|q| q.target == query);
    let heuristic = opts
        .order
        .clone()
        .or_else(|| defaults.and_then(|d| d.order.clone()))
        .unwrap_or(Heuristic::MinDegree);
    let requested = opts
        .rep
        .or_else(|| defaults.and_then(|d| d.rep))
        .unwrap_or_else(|| kb.valuations.rep_kind());
    let order = choose_order(
        &kb.vars,
        kb.valuations.basic_scopes().into_iter(),
        query,
        &heuristic,
    )?;
    let cap = opts.explicit_cap.unwrap_or(DEFAULT_EXPLICIT_CAP);

    match &kb.valuations {
        KbValuations::FiniteLower(reps) => {
            let frames = kb.frames();
            let instance = FiniteLower { frames };
            let run = answer_query_lower(&instance, &kb.vars, reps.clone(), query, &order);
            Ok(finish_finite(kb, query, requested, cap, run_to_allowed_lower(frames, query, &run), run))
        }
        KbValuations::FiniteUpper(reps) => {
            let frames = kb.frames();
            let instance = FiniteUpper { frames };
            let run = answer_query_upper(&instance, &kb.vars, reps.clone(), query, &order)?;
            Ok(finish_finite(kb, query, requested, cap, run_to_allowed_upper(frames, query, &run), run))
        }
        KbValuations::PolytopeLower(reps) => {
            let instance = PolytopeLower;
            let run = answer_query_lower(&instance, &kb.vars, reps.clone(), query, &order);
            Ok(finish_poly_lower(query, requested, run))
        }
        KbValuations::PolytopeUpper(reps) => {
            let instance = PolytopeUpper;
            let run = answer_query_upper(&instance, &kb.vars, reps.clone(), query, &order)?;
            Ok(finish_poly_upper(query, requested, run))
        }
    }
}

/// Allowed frame values of the query variable under a clause answer.
fn run_to_allowed_lower(frames: &FrameSpec, query: VarId, run: &EngineRun<Clause>) -> Option<Vec<u32>> {
    match &run.result {
        EngineResult::Contradiction => None,
        EngineResult::Answer(rep) => {
            let forbidden: Vec<u32> = rep
                .basics
                .iter()
                .filter_map(|c| c.forbidden_value(query))
                .collect();
            let allowed: Vec<u32> = (0..frames.cardinality(query))
                .filter(|v| !forbidden.contains(v))
                .collect();
            Some(allowed)
        }
    }
}

/// Allowed frame values of the query variable under a tuple answer.
fn run_to_allowed_upper(frames: &FrameSpec, query: VarId, run: &EngineRun<Tuple>) -> Option<Vec<u32>> {
    match &run.result {
        EngineResult::Contradiction => None,
        EngineResult::Answer(rep) => {
            if rep.basics.is_empty() {
                // No valuation at all: the neutral answer.
                return Some((0..frames.cardinality(query)).collect());
            }
            let mut allowed: Vec<u32> = Vec::new();
            for t in &rep.basics {
                match t.value(query) {
                    Some(v) => allowed.push(v),
                    // A tuple of empty scope covers the whole frame.
                    None => return Some((0..frames.cardinality(query)).collect()),
                }
            }
            allowed.sort_unstable();
            allowed.dedup();
            Some(allowed)
        }
    }
}

fn finish_finite<B>(
    kb: &KnowledgeBase,
    query: VarId,
    requested: RepKind,
    cap: usize,
    allowed: Option<Vec<u32>>,
    run: EngineRun<B>,
) -> QueryResult {
    let frames = kb.frames();
    let card = frames.cardinality(query);
    let scope = IndexSet::singleton(query);
    let (status, allowed) = match allowed {
        None => (Status::Contradiction, Vec::new()),
        Some(a) if a.is_empty() => (Status::Contradiction, a),
        Some(a) => (Status::Ok, a),
    };
    let basics = match requested {
        RepKind::Lower => AnswerBasics::Clauses(
            (0..card)
                .filter(|v| !allowed.contains(v))
                .map(|v| Clause::new(frames, scope.clone(), vec![v]))
                .collect(),
        ),
        RepKind::Upper => AnswerBasics::Tuples(
            allowed
                .iter()
                .map(|v| Tuple::new(frames, scope.clone(), vec![*v]))
                .collect(),
        ),
    };
    let neutral = status == Status::Ok && allowed.len() == card as usize;
    let explicit = (status == Status::Ok && (card as usize) <= cap)
        .then(|| ExplicitAnswer::FiniteValues(allowed));
    QueryResult {
        target: query,
        rep_kind: requested,
        status,
        neutral,
        basics,
        explicit,
        stats: run.stats,
        trace: run.trace,
    }
}

/// Feasible interval of a one-variable restriction set over the whole line:
/// `None` bound means unbounded on that side.
fn halfspace_interval(query: VarId, basics: &[HalfSpace]) -> (Option<Rat>, Option<Rat>) {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for h in basics {
        let c = h.coefficient(query).expect("answer restriction mentions the query");
        let bound = Rat::new(h.bound().clone(), c.clone());
        if c.is_positive() {
            hi = Some(match hi {
                Some(old) => old.min(bound),
                None => bound,
            });
        } else {
            lo = Some(match lo {
                Some(old) => old.max(bound),
                None => bound,
            });
        }
    }
    (lo, hi)
}

fn finish_poly_lower(query: VarId, requested: RepKind, run: EngineRun<HalfSpace>) -> QueryResult {
    let scope = IndexSet::singleton(query);
    let (status, basics, explicit) = match &run.result {
        EngineResult::Contradiction => (Status::Contradiction, Vec::new(), None),
        EngineResult::Answer(rep) => {
            let (lo, hi) = halfspace_interval(query, &rep.basics);
            let infeasible = matches!((&lo, &hi), (Some(l), Some(h)) if l > h);
            if infeasible {
                (Status::Contradiction, rep.basics.clone(), None)
            } else {
                let clipped = clip_interval(&lo, &hi);
                (Status::Ok, rep.basics.clone(), Some(clipped))
            }
        }
    };
    match requested {
        RepKind::Lower => QueryResult {
            target: query,
            rep_kind: requested,
            status,
            neutral: status == Status::Ok && basics.is_empty(),
            basics: AnswerBasics::HalfSpaces(basics),
            explicit: (status == Status::Ok)
                .then(|| ExplicitAnswer::Interval(explicit.clone().unwrap_or_default())),
            stats: run.stats,
            trace: run.trace,
        },
        RepKind::Upper => {
            // Within-hypercube semantics: clip, possibly emptying the answer.
            let endpoints = explicit.unwrap_or_default();
            let status = if status == Status::Contradiction || endpoints.is_empty() {
                Status::Contradiction
            } else {
                Status::Ok
            };
            let neutral = status == Status::Ok && full_interval(&endpoints);
            let vertices = endpoints
                .iter()
                .map(|e| Vertex::new(scope.clone(), vec![e.clone()]))
                .collect();
            QueryResult {
                target: query,
                rep_kind: requested,
                status,
                neutral,
                basics: AnswerBasics::Vertices(vertices),
                explicit: (status == Status::Ok).then(|| ExplicitAnswer::Interval(endpoints)),
                stats: run.stats,
                trace: run.trace,
            }
        }
    }
}

fn full_interval(endpoints: &[Rat]) -> bool {
    endpoints.len() == 2 && endpoints[0].is_zero() && endpoints[1].is_one()
}

/// Endpoints of `[lo, hi] ∩ [0, 1]`, deduplicated; empty when disjoint.
fn clip_interval(lo: &Option<Rat>, hi: &Option<Rat>) -> Vec<Rat> {
    let zero = Rat::zero();
    let one = Rat::one();
    let l = lo.clone().map_or(zero.clone(), |l| l.max(zero));
    let h = hi.clone().map_or(one.clone(), |h| h.min(one));
    if l > h {
        Vec::new()
    } else if l == h {
        vec![l]
    } else {
        vec![l, h]
    }
}

fn finish_poly_upper(query: VarId, requested: RepKind, run: EngineRun<Vertex>) -> QueryResult {
    let scope = IndexSet::singleton(query);
    let endpoints: Option<Vec<Rat>> = match &run.result {
        EngineResult::Contradiction => None,
        EngineResult::Answer(rep) => {
            if rep.basics.is_empty() {
                Some(vec![Rat::zero(), Rat::one()])
            } else if rep.basics.iter().any(|v| v.scope().is_empty()) {
                // A scopeless vertex extends to the whole interval.
                Some(vec![Rat::zero(), Rat::one()])
            } else {
                let mut coords: Vec<Rat> = rep
                    .basics
                    .iter()
                    .map(|v| v.coord(query).unwrap().clone())
                    .collect();
                coords.sort();
                coords.dedup();
                Some(coords)
            }
        }
    };
    let (status, endpoints) = match endpoints {
        None => (Status::Contradiction, Vec::new()),
        Some(e) if e.is_empty() => (Status::Contradiction, e),
        Some(e) => (Status::Ok, e),
    };
    let basics = match requested {
        RepKind::Upper => AnswerBasics::Vertices(
            endpoints
                .iter()
                .map(|e| Vertex::new(scope.clone(), vec![e.clone()]))
                .collect(),
        ),
        RepKind::Lower => {
            // An interval as two bounds; a point as a pinned equality pair.
            let mut out = Vec::new();
            if let (Some(first), Some(last)) = (endpoints.first(), endpoints.last()) {
                let lower = HalfSpace::new(&[(query, -Rat::one())], -first.clone());
                let upper = HalfSpace::new(&[(query, Rat::one())], last.clone());
                for form in [lower, upper] {
                    match form {
                        crate::polytope::LinearForm::HalfSpace(h) => out.push(h),
                        _ => unreachable!("unit coefficient never cancels"),
                    }
                }
                out.sort();
            }
            AnswerBasics::HalfSpaces(out)
        }
    };
    let neutral =
        status == Status::Ok && requested == RepKind::Upper && full_interval(&endpoints);
    QueryResult {
        target: query,
        rep_kind: requested,
        status,
        neutral,
        basics,
        explicit: (status == Status::Ok).then(|| ExplicitAnswer::Interval(endpoints)),
        stats: run.stats,
        trace: run.trace,
    }
}

#[cfg(test)]
mod tests;
