//! Canonical text output for knowledge bases and query results.
//!
//! The output re-parses to the same model: basics are sorted, coefficients
//! follow the canonical variable order, and valuation groups are separated
//! by blank lines. Identical inputs always serialize byte-identically.

use num::{BigInt, BigRational, Signed};

use crate::finite::{Clause, Tuple};
use crate::polytope::{HalfSpace, Vertex};
use crate::vars::VarTable;

use super::{
    AnswerBasics, ExplicitAnswer, InstanceKind, KbValuations, KnowledgeBase, QueryResult, Status,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitMode {
    /// Basic valuations of the answer, one statement per line.
    Basic,
    /// The small materialized form (frame values / interval endpoints).
    Explicit,
}

fn rat_text(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn clause_stmt(vars: &VarTable, c: &Clause) -> String {
    let body: Vec<String> = c
        .scope()
        .iter()
        .zip(c.forbidden())
        .map(|(v, val)| format!("{}={}", vars.name(v), val))
        .collect();
    format!("clause !({})", body.join(", "))
}

fn tuple_stmt(vars: &VarTable, t: &Tuple) -> String {
    let body: Vec<String> = t
        .scope()
        .iter()
        .zip(t.values())
        .map(|(v, val)| format!("{}={}", vars.name(v), val))
        .collect();
    format!("tuple ({})", body.join(", "))
}

fn linear_stmt(vars: &VarTable, h: &HalfSpace) -> String {
    let mut lhs = String::new();
    for (i, (v, c)) in h.coefficients().enumerate() {
        if i == 0 {
            lhs.push_str(&format!("{}*{}", c, vars.name(v)));
        } else if c.is_negative() {
            lhs.push_str(&format!(" - {}*{}", c.magnitude(), vars.name(v)));
        } else {
            lhs.push_str(&format!(" + {}*{}", c, vars.name(v)));
        }
    }
    format!("linear {} <= {}", lhs, h.bound())
}

fn vertex_stmt(vars: &VarTable, v: &Vertex) -> String {
    let body: Vec<String> = v
        .scope()
        .iter()
        .zip(v.coords())
        .map(|(var, c)| format!("{}={}", vars.name(var), rat_text(c)))
        .collect();
    format!("vertex ({})", body.join(", "))
}

/// Canonical text of a whole knowledge base.
pub fn serialize_kb(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    out.push_str(&format!("vbs {}\n", kb.kind));
    for v in kb.vars.ids() {
        match kb.kind {
            InstanceKind::Finite => out.push_str(&format!(
                "frame {} {}\n",
                kb.vars.name(v),
                kb.frames().cardinality(v)
            )),
            InstanceKind::Polytope => out.push_str(&format!("real {}\n", kb.vars.name(v))),
        }
    }
    match &kb.valuations {
        KbValuations::FiniteLower(reps) => {
            for rep in reps {
                let mut basics = rep.basics.clone();
                basics.sort();
                for c in &basics {
                    out.push_str(&clause_stmt(&kb.vars, c));
                    out.push('\n');
                }
            }
        }
        KbValuations::PolytopeLower(reps) => {
            for rep in reps {
                let mut basics = rep.basics.clone();
                basics.sort();
                for h in &basics {
                    out.push_str(&linear_stmt(&kb.vars, h));
                    out.push('\n');
                }
            }
        }
        KbValuations::FiniteUpper(reps) => {
            // A blank line separates disjunction groups.
            for (i, rep) in reps.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let mut basics = rep.basics.clone();
                basics.sort();
                for t in &basics {
                    out.push_str(&tuple_stmt(&kb.vars, t));
                    out.push('\n');
                }
            }
        }
        KbValuations::PolytopeUpper(reps) => {
            for (i, rep) in reps.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let mut basics = rep.basics.clone();
                basics.sort();
                for v in &basics {
                    out.push_str(&vertex_stmt(&kb.vars, v));
                    out.push('\n');
                }
            }
        }
    }
    for q in &kb.queries {
        out.push_str(&format!("query {}", kb.vars.name(q.target)));
        if let Some(rep) = q.rep {
            out.push_str(&format!(" rep={rep}"));
        }
        if let Some(order) = &q.order {
            match order {
                crate::engine::Heuristic::MinDegree => out.push_str(" order=mindegree"),
                crate::engine::Heuristic::MinFill => out.push_str(" order=minfill"),
                crate::engine::Heuristic::Given(vs) => {
                    let names: Vec<&str> = vs.iter().map(|v| kb.vars.name(*v)).collect();
                    out.push_str(&format!(" order=given:{}", names.join(",")));
                }
            }
        }
        out.push('\n');
    }
    out
}

/// Canonical text of a query result. Contradictions and neutral answers get
/// their status line; anything else lists its basic valuations (or the
/// explicit form, if asked and available).
pub fn serialize_result(vars: &VarTable, result: &QueryResult, mode: EmitMode) -> String {
    if result.status == Status::Contradiction {
        return "CONTRADICTION\n".to_owned();
    }
    if result.neutral {
        return format!("NEUTRAL on {}\n", vars.name(result.target));
    }
    let mut out = String::new();
    match mode {
        EmitMode::Basic => match &result.basics {
            AnswerBasics::Clauses(cs) => {
                let mut cs = cs.clone();
                cs.sort();
                for c in &cs {
                    out.push_str(&clause_stmt(vars, c));
                    out.push('\n');
                }
            }
            AnswerBasics::Tuples(ts) => {
                let mut ts = ts.clone();
                ts.sort();
                for t in &ts {
                    out.push_str(&tuple_stmt(vars, t));
                    out.push('\n');
                }
            }
            AnswerBasics::HalfSpaces(hs) => {
                let mut hs = hs.clone();
                hs.sort();
                for h in &hs {
                    out.push_str(&linear_stmt(vars, h));
                    out.push('\n');
                }
            }
            AnswerBasics::Vertices(vs) => {
                let mut vs = vs.clone();
                vs.sort();
                for v in &vs {
                    out.push_str(&vertex_stmt(vars, v));
                    out.push('\n');
                }
            }
        },
        EmitMode::Explicit => match &result.explicit {
            Some(ExplicitAnswer::FiniteValues(values)) => {
                for value in values {
                    out.push_str(&format!("tuple ({}={})\n", vars.name(result.target), value));
                }
            }
            Some(ExplicitAnswer::Interval(endpoints)) => {
                for e in endpoints {
                    out.push_str(&format!(
                        "vertex ({}={})\n",
                        vars.name(result.target),
                        rat_text(e)
                    ));
                }
            }
            None => out.push_str("# explicit form unavailable\n"),
        },
    }
    out
}
