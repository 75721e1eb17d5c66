//! Line-based knowledge-base text format.
//!
//! One statement per line, `#` starts a comment:
//!
//! ```text
//! vbs finite|polytope
//! frame <var> <cardinality>          # finite variables
//! real <var>                         # polytope variables
//! clause !(v1=a, v2=b, ...)          # finite, lower
//! tuple (v1=a, ...)                  # finite, upper
//! linear <rat>*<var> [+|-] ... <= <rat>   # polytope, lower
//! vertex (v1=<rat>, ...)             # polytope, upper
//! query <var> [rep=lower|upper] [order=mindegree|minfill|given:<v1,v2,...>]
//! ```
//!
//! Consecutive `tuple` (or `vertex`) lines form one disjunction; a blank
//! line or any other statement starts a new valuation. Rationals are
//! written `p` or `p/q`. Every error carries its source line.

use num::{BigInt, BigRational, One, Zero};

use crate::engine::Heuristic;
use crate::finite::{Clause, FrameSpec, Tuple};
use crate::index_set::IndexSet;
use crate::polytope::{HalfSpace, LinearForm, Vertex};
use crate::rep::{RepKind, Represented};
use crate::vars::{VarId, VarTable};

use super::{InstanceKind, KbValuations, KnowledgeBase, QuerySpec};

type Rat = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser {
    vars: VarTable,
    kind: Option<InstanceKind>,
    cards: Vec<u32>,
    rep_kind: Option<RepKind>,
    clauses: Vec<(Represented<Clause>, usize)>,
    halfspaces: Vec<(Represented<HalfSpace>, usize)>,
    tuple_group: Vec<Tuple>,
    tuple_groups: Vec<(Represented<Tuple>, usize)>,
    vertex_group: Vec<Vertex>,
    vertex_groups: Vec<(Represented<Vertex>, usize)>,
    group_line: usize,
    queries: Vec<QuerySpec>,
    errors: Vec<ParseError>,
}

impl Parser {
    fn new() -> Self {
        Self {
            vars: VarTable::new(),
            kind: None,
            cards: Vec::new(),
            rep_kind: None,
            clauses: Vec::new(),
            halfspaces: Vec::new(),
            tuple_group: Vec::new(),
            tuple_groups: Vec::new(),
            vertex_group: Vec::new(),
            vertex_groups: Vec::new(),
            group_line: 0,
            queries: Vec::new(),
            errors: Vec::new(),
        }
    }

    fn error(&mut self, line: usize, message: impl Into<String>) {
        self.errors.push(ParseError {
            line,
            message: message.into(),
        });
    }

    fn flush_group(&mut self) {
        if !self.tuple_group.is_empty() {
            let basics = std::mem::take(&mut self.tuple_group);
            let scope = basics
                .iter()
                .fold(IndexSet::empty(), |acc, t| acc.union(t.scope()));
            self.tuple_groups
                .push((Represented::new(scope, basics), self.group_line));
        }
        if !self.vertex_group.is_empty() {
            let basics = std::mem::take(&mut self.vertex_group);
            let scope = basics
                .iter()
                .fold(IndexSet::empty(), |acc, v| acc.union(v.scope()));
            self.vertex_groups
                .push((Represented::new(scope, basics), self.group_line));
        }
    }

    fn require_kind(&mut self, line: usize, want: InstanceKind, what: &str) -> bool {
        match self.kind {
            Some(k) if k == want => true,
            Some(k) => {
                self.error(line, format!("`{what}` needs a {want} base, this one is {k}"));
                false
            }
            None => {
                self.error(line, format!("`{what}` before the `vbs` declaration"));
                false
            }
        }
    }

    fn require_rep(&mut self, line: usize, want: RepKind, what: &str) -> bool {
        match self.rep_kind {
            None => {
                self.rep_kind = Some(want);
                true
            }
            Some(k) if k == want => true,
            Some(k) => {
                self.error(
                    line,
                    format!("`{what}` mixes representation kinds: base already uses {k} basics"),
                );
                false
            }
        }
    }

    fn lookup(&mut self, line: usize, name: &str) -> Option<VarId> {
        match self.vars.lookup(name) {
            Some(v) => Some(v),
            None => {
                self.error(line, format!("undeclared variable `{name}`"));
                None
            }
        }
    }

    fn frames(&self) -> FrameSpec {
        FrameSpec::new(self.cards.clone())
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_rat(text: &str) -> Option<Rat> {
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let n: BigInt = numer.parse().ok()?;
    let d: BigInt = match denom {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// Splits `(v1=a, v2=b)` into `(name, value-text)` pairs.
fn parse_bindings<'t>(body: &'t str) -> Option<Vec<(&'t str, &'t str)>> {
    let inner = body.strip_prefix('(')?.strip_suffix(')')?;
    let mut out = Vec::new();
    for part in inner.split(',') {
        let (name, value) = part.split_once('=')?;
        out.push((name.trim(), value.trim()));
    }
    Some(out)
}

/// Parses the knowledge-base text; returns every located error on failure.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, Vec<ParseError>> {
    let mut p = Parser::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            if raw.trim_start().starts_with('#') {
                continue; // comments do not break valuation groups
            }
            p.flush_group();
            continue;
        }
        let (word, rest) = match content.split_once(char::is_whitespace) {
            Some((w, r)) => (w, r.trim()),
            None => (content, ""),
        };
        if !matches!(word, "tuple" | "vertex") {
            p.flush_group();
        }
        match word {
            "vbs" => statement_vbs(&mut p, line, rest),
            "frame" => statement_frame(&mut p, line, rest),
            "real" => statement_real(&mut p, line, rest),
            "clause" => statement_clause(&mut p, line, rest),
            "tuple" => statement_tuple(&mut p, line, rest),
            "linear" => statement_linear(&mut p, line, rest),
            "vertex" => statement_vertex(&mut p, line, rest),
            "query" => statement_query(&mut p, line, rest),
            other => p.error(line, format!("unknown statement `{other}`")),
        }
    }
    p.flush_group();

    if p.kind.is_none() && p.errors.is_empty() {
        p.error(0, "missing `vbs finite|polytope` declaration");
    }
    if !p.errors.is_empty() {
        return Err(p.errors);
    }

    let kind = p.kind.unwrap();
    let frames = (kind == InstanceKind::Finite).then(|| p.frames());
    let rep_kind = p.rep_kind.unwrap_or(RepKind::Lower);
    let (valuations, provenance) = match (kind, rep_kind) {
        (InstanceKind::Finite, RepKind::Lower) => {
            let (reps, lines): (Vec<_>, Vec<_>) = p.clauses.into_iter().unzip();
            (KbValuations::FiniteLower(reps), lines)
        }
        (InstanceKind::Finite, RepKind::Upper) => {
            let (reps, lines): (Vec<_>, Vec<_>) = p.tuple_groups.into_iter().unzip();
            (KbValuations::FiniteUpper(reps), lines)
        }
        (InstanceKind::Polytope, RepKind::Lower) => {
            let (reps, lines): (Vec<_>, Vec<_>) = p.halfspaces.into_iter().unzip();
            (KbValuations::PolytopeLower(reps), lines)
        }
        (InstanceKind::Polytope, RepKind::Upper) => {
            let (reps, lines): (Vec<_>, Vec<_>) = p.vertex_groups.into_iter().unzip();
            (KbValuations::PolytopeUpper(reps), lines)
        }
    };
    Ok(KnowledgeBase {
        vars: p.vars,
        kind,
        frames,
        valuations,
        provenance,
        queries: p.queries,
    })
}

fn statement_vbs(p: &mut Parser, line: usize, rest: &str) {
    if p.kind.is_some() {
        p.error(line, "duplicate `vbs` declaration");
        return;
    }
    match rest {
        "finite" => p.kind = Some(InstanceKind::Finite),
        "polytope" => p.kind = Some(InstanceKind::Polytope),
        other => p.error(line, format!("expected `finite` or `polytope`, got `{other}`")),
    }
}

fn statement_frame(p: &mut Parser, line: usize, rest: &str) {
    if !p.require_kind(line, InstanceKind::Finite, "frame") {
        return;
    }
    let mut parts = rest.split_whitespace();
    let (Some(name), Some(card), None) = (parts.next(), parts.next(), parts.next()) else {
        p.error(line, "expected `frame <var> <cardinality>`");
        return;
    };
    if !valid_name(name) {
        p.error(line, format!("invalid variable name `{name}`"));
        return;
    }
    let Ok(card) = card.parse::<u32>() else {
        p.error(line, format!("invalid cardinality `{card}`"));
        return;
    };
    if card == 0 {
        p.error(line, "cardinality must be at least 1");
        return;
    }
    if p.vars.declare(name).is_none() {
        p.error(line, format!("variable `{name}` declared twice"));
        return;
    }
    p.cards.push(card);
}

fn statement_real(p: &mut Parser, line: usize, rest: &str) {
    if !p.require_kind(line, InstanceKind::Polytope, "real") {
        return;
    }
    let name = rest.trim();
    if !valid_name(name) {
        p.error(line, format!("invalid variable name `{name}`"));
        return;
    }
    if p.vars.declare(name).is_none() {
        p.error(line, format!("variable `{name}` declared twice"));
    }
}

/// Shared by `clause` and `tuple`: a full assignment over some scope.
fn parse_assignment(
    p: &mut Parser,
    line: usize,
    body: &str,
    what: &str,
) -> Option<(IndexSet, Vec<u32>)> {
    let Some(bindings) = parse_bindings(body) else {
        p.error(line, format!("expected `{what} (v1=a, ...)`"));
        return None;
    };
    let mut pairs: Vec<(VarId, u32)> = Vec::with_capacity(bindings.len());
    for (name, value) in bindings {
        let var = p.lookup(line, name)?;
        let Ok(value) = value.parse::<u32>() else {
            p.error(line, format!("invalid frame value `{value}`"));
            return None;
        };
        if value >= p.cards[var.index()] {
            p.error(
                line,
                format!("value {value} out of range for `{name}` (cardinality {})", p.cards[var.index()]),
            );
            return None;
        }
        if pairs.iter().any(|(v, _)| *v == var) {
            p.error(line, format!("variable `{name}` assigned twice"));
            return None;
        }
        pairs.push((var, value));
    }
    if pairs.is_empty() {
        p.error(line, format!("`{what}` needs at least one assignment"));
        return None;
    }
    pairs.sort_by_key(|(v, _)| *v);
    let scope = IndexSet::from_iter(pairs.iter().map(|(v, _)| *v));
    let values = pairs.into_iter().map(|(_, val)| val).collect();
    Some((scope, values))
}

fn statement_clause(p: &mut Parser, line: usize, rest: &str) {
    if !p.require_kind(line, InstanceKind::Finite, "clause")
        || !p.require_rep(line, RepKind::Lower, "clause")
    {
        return;
    }
    let Some(body) = rest.strip_prefix('!') else {
        p.error(line, "expected `clause !(v1=a, ...)`");
        return;
    };
    let Some((scope, values)) = parse_assignment(p, line, body.trim(), "clause !") else {
        return;
    };
    let clause = Clause::new(&p.frames(), scope.clone(), values);
    p.clauses.push((Represented::new(scope, vec![clause]), line));
}

fn statement_tuple(p: &mut Parser, line: usize, rest: &str) {
    if !p.require_kind(line, InstanceKind::Finite, "tuple")
        || !p.require_rep(line, RepKind::Upper, "tuple")
    {
        return;
    }
    let Some((scope, values)) = parse_assignment(p, line, rest, "tuple") else {
        return;
    };
    if p.tuple_group.is_empty() {
        p.group_line = line;
    }
    let tuple = Tuple::new(&p.frames(), scope, values);
    p.tuple_group.push(tuple);
}

fn statement_linear(p: &mut Parser, line: usize, rest: &str) {
    if !p.require_kind(line, InstanceKind::Polytope, "linear")
        || !p.require_rep(line, RepKind::Lower, "linear")
    {
        return;
    }
    let Some((lhs, rhs)) = rest.split_once("<=") else {
        p.error(line, "expected `linear <terms> <= <rational>`");
        return;
    };
    let Some(bound) = parse_rat(rhs.trim()) else {
        p.error(line, format!("invalid rational `{}`", rhs.trim()));
        return;
    };
    // Terms: `<rat>*<var>` joined by `+` or `-`.
    let mut terms: Vec<(VarId, Rat)> = Vec::new();
    let mut negate = false;
    let mut expect_term = true;
    for token in lhs.split_whitespace() {
        if !expect_term && (token == "+" || token == "-") {
            negate = token == "-";
            expect_term = true;
            continue;
        }
        if !expect_term {
            p.error(line, format!("expected `+` or `-` before `{token}`"));
            return;
        }
        let Some((coeff, var)) = token.split_once('*') else {
            p.error(line, format!("expected `<rational>*<var>`, got `{token}`"));
            return;
        };
        let Some(mut c) = parse_rat(coeff) else {
            p.error(line, format!("invalid rational `{coeff}`"));
            return;
        };
        if negate {
            c = -c;
        }
        let Some(v) = p.lookup(line, var) else {
            return;
        };
        terms.push((v, c));
        negate = false;
        expect_term = false;
    }
    if expect_term {
        p.error(line, "linear restriction has no terms");
        return;
    }
    match HalfSpace::new(&terms, bound) {
        LinearForm::HalfSpace(h) => {
            let scope = h.scope().clone();
            p.halfspaces.push((Represented::new(scope, vec![h]), line));
        }
        LinearForm::Trivial | LinearForm::Infeasible => {
            p.error(line, "restriction has no effective variable");
        }
    }
}

fn statement_vertex(p: &mut Parser, line: usize, rest: &str) {
    if !p.require_kind(line, InstanceKind::Polytope, "vertex")
        || !p.require_rep(line, RepKind::Upper, "vertex")
    {
        return;
    }
    let Some(bindings) = parse_bindings(rest) else {
        p.error(line, "expected `vertex (v1=<rat>, ...)`");
        return;
    };
    let mut pairs: Vec<(VarId, Rat)> = Vec::with_capacity(bindings.len());
    for (name, value) in bindings {
        let Some(var) = p.lookup(line, name) else {
            return;
        };
        let Some(value) = parse_rat(value) else {
            p.error(line, format!("invalid rational `{value}`"));
            return;
        };
        if value < Rat::zero() || value > Rat::one() {
            p.error(line, format!("coordinate for `{name}` outside [0, 1]"));
            return;
        }
        if pairs.iter().any(|(v, _)| *v == var) {
            p.error(line, format!("variable `{name}` assigned twice"));
            return;
        }
        pairs.push((var, value));
    }
    if pairs.is_empty() {
        p.error(line, "`vertex` needs at least one coordinate");
        return;
    }
    pairs.sort_by_key(|(v, _)| *v);
    let scope = IndexSet::from_iter(pairs.iter().map(|(v, _)| *v));
    let coords = pairs.into_iter().map(|(_, c)| c).collect();
    if p.vertex_group.is_empty() {
        p.group_line = line;
    }
    p.vertex_group.push(Vertex::new(scope, coords));
}

fn statement_query(p: &mut Parser, line: usize, rest: &str) {
    let mut parts = rest.split_whitespace();
    let Some(name) = parts.next() else {
        p.error(line, "expected `query <var> [rep=...] [order=...]`");
        return;
    };
    let Some(target) = p.lookup(line, name) else {
        return;
    };
    let mut rep = None;
    let mut order = None;
    for opt in parts {
        if let Some(value) = opt.strip_prefix("rep=") {
            rep = match value {
                "lower" => Some(RepKind::Lower),
                "upper" => Some(RepKind::Upper),
                other => {
                    p.error(line, format!("unknown representation `{other}`"));
                    return;
                }
            };
        } else if let Some(value) = opt.strip_prefix("order=") {
            order = if value == "mindegree" {
                Some(Heuristic::MinDegree)
            } else if value == "minfill" {
                Some(Heuristic::MinFill)
            } else if let Some(list) = value.strip_prefix("given:") {
                let mut vars = Vec::new();
                for v in list.split(',') {
                    let Some(id) = p.lookup(line, v.trim()) else {
                        return;
                    };
                    vars.push(id);
                }
                Some(Heuristic::Given(vars))
            } else {
                p.error(line, format!("unknown order heuristic `{value}`"));
                return;
            };
        } else {
            p.error(line, format!("unknown query option `{opt}`"));
            return;
        }
    }
    p.queries.push(QuerySpec { target, rep, order });
}
