use super::*;
use crate::engine::Heuristic;

fn parse(text: &str) -> KnowledgeBase {
    parse_kb(text).unwrap_or_else(|errs| {
        panic!(
            "parse failed: {}",
            errs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
        )
    })
}

/// The biconditional chain over n binary variables, plus the observation
/// that the second one is false.
fn chain_kb(n: usize) -> String {
    let mut text = String::from("vbs finite\n");
    for i in 1..=n {
        text.push_str(&format!("frame p{i} 2\n"));
    }
    for i in 1..n {
        text.push_str(&format!("clause !(p{i}=0, p{n}=1)\n"));
    }
    let big: Vec<String> = (1..n).map(|i| format!("p{i}=1")).collect();
    text.push_str(&format!("clause !({}, p{n}=0)\n", big.join(", ")));
    text.push_str("clause !(p2=1)\n");
    text.push_str(&format!("query p{n}\n"));
    text
}

#[test]
fn parse_unit_clause_kb() {
    let kb = parse("vbs finite\nframe p1 2\nclause !(p1=0)\n");
    assert_eq!(kb.kind, InstanceKind::Finite);
    assert_eq!(kb.valuations.len(), 1);
    assert_eq!(kb.provenance, vec![3]);
}

#[test]
fn parse_polytope_kb() {
    let kb = parse("vbs polytope\nreal y1\nlinear 1*y1 <= 1/2\n");
    assert_eq!(kb.kind, InstanceKind::Polytope);
    assert_eq!(kb.valuations.len(), 1);
    assert_eq!(kb.valuations.rep_kind(), RepKind::Lower);
}

#[test]
fn parse_errors_are_located() {
    let errs = parse_kb("vbs finite\nframe p1 2\nclause !(p2=0)\nclause !(p1=7)\n").unwrap_err();
    assert_eq!(errs.len(), 2);
    assert_eq!(errs[0].line, 3);
    assert!(errs[0].message.contains("undeclared"));
    assert_eq!(errs[1].line, 4);
    assert!(errs[1].message.contains("out of range"));
}

#[test]
fn mixed_representations_are_rejected() {
    let errs = parse_kb("vbs finite\nframe p1 2\nclause !(p1=0)\ntuple (p1=1)\n").unwrap_err();
    assert!(errs[0].message.contains("mixes representation kinds"));
}

#[test]
fn degenerate_linear_is_rejected() {
    let errs = parse_kb("vbs polytope\nreal y1\nlinear 0*y1 <= 1\n").unwrap_err();
    assert!(errs[0].message.contains("no effective variable"));
}

#[test]
fn chain_query_resolves_to_negated_unit() {
    let kb = parse(&chain_kb(4));
    let result = run_query(&kb, "p4", &QueryOptions::default()).unwrap();
    assert_eq!(result.status, Status::Ok);
    assert_eq!(
        serialize_result(&kb.vars, &result, EmitMode::Basic),
        "clause !(p4=1)\n"
    );
    assert_eq!(
        serialize_result(&kb.vars, &result, EmitMode::Explicit),
        "tuple (p4=0)\n"
    );
}

#[test]
fn chain_scales_linearly() {
    for n in [5usize, 12] {
        let kb = parse(&chain_kb(n));
        let result = run_query(&kb, &format!("p{n}"), &QueryOptions::default()).unwrap();
        assert_eq!(result.status, Status::Ok);
        assert!(
            result.stats.materialized() <= 4 * n,
            "materialized {} basics for n={n}",
            result.stats.materialized()
        );
        let expected = format!("clause !(p{n}=1)\n");
        assert_eq!(serialize_result(&kb.vars, &result, EmitMode::Basic), expected);
    }
}

#[test]
fn direct_contradiction_is_reported() {
    let kb = parse("vbs finite\nframe p1 2\nclause !(p1=0)\nclause !(p1=1)\n");
    let result = run_query(&kb, "p1", &QueryOptions::default()).unwrap();
    assert_eq!(result.status, Status::Contradiction);
    assert_eq!(
        serialize_result(&kb.vars, &result, EmitMode::Basic),
        "CONTRADICTION\n"
    );
}

#[test]
fn triangle_projection() {
    let text = "vbs polytope\nreal x1\nreal x2\n\
                linear 1*x1 + 1*x2 <= 1\nlinear -1*x1 <= 0\nlinear -1*x2 <= 0\n\
                linear 1*x1 <= 1\nlinear 1*x2 <= 1\n";
    let kb = parse(text);
    let result = run_query(&kb, "x2", &QueryOptions::default()).unwrap();
    assert_eq!(result.status, Status::Ok);
    assert_eq!(
        serialize_result(&kb.vars, &result, EmitMode::Basic),
        "linear -1*x2 <= 0\nlinear 1*x2 <= 1\n"
    );
    assert_eq!(
        result.explicit,
        Some(ExplicitAnswer::Interval(vec![
            Rat::zero(),
            Rat::one()
        ]))
    );
}

#[test]
fn neutral_answer() {
    let kb = parse("vbs finite\nframe p1 2\nframe p2 2\nclause !(p1=0)\n");
    let result = run_query(&kb, "p2", &QueryOptions::default()).unwrap();
    assert!(result.neutral);
    assert_eq!(
        serialize_result(&kb.vars, &result, EmitMode::Basic),
        "NEUTRAL on p2\n"
    );
}

#[test]
fn representation_override() {
    let kb = parse("vbs finite\nframe p1 2\nframe p2 3\nclause !(p2=1)\n");
    let opts = QueryOptions {
        rep: Some(RepKind::Upper),
        ..Default::default()
    };
    let result = run_query(&kb, "p2", &opts).unwrap();
    assert_eq!(result.rep_kind, RepKind::Upper);
    assert_eq!(
        serialize_result(&kb.vars, &result, EmitMode::Basic),
        "tuple (p2=0)\ntuple (p2=2)\n"
    );
}

#[test]
fn upper_representation_end_to_end() {
    // Two grouped disjunctions: {p1=0 or p1=1 with p2=1} and {p2=1}.
    let text = "vbs finite\nframe p1 2\nframe p2 2\n\
                tuple (p1=0, p2=0)\ntuple (p1=1, p2=1)\n\
                \n\
                tuple (p2=1)\n";
    let kb = parse(text);
    assert_eq!(kb.valuations.len(), 2);
    let result = run_query(&kb, "p1", &QueryOptions::default()).unwrap();
    assert_eq!(result.status, Status::Ok);
    assert_eq!(
        serialize_result(&kb.vars, &result, EmitMode::Basic),
        "tuple (p1=1)\n"
    );
}

#[test]
fn vertex_kb_roundtrip_and_query() {
    let text = "vbs polytope\nreal x1\nreal x2\n\
                vertex (x1=0, x2=0)\nvertex (x1=1, x2=1/2)\n\
                \n\
                vertex (x1=0, x2=0)\nvertex (x1=1, x2=0)\nvertex (x1=1, x2=1)\n";
    let kb = parse(text);
    assert_eq!(kb.valuations.len(), 2);
    let result = run_query(&kb, "x2", &QueryOptions::default()).unwrap();
    assert_eq!(result.status, Status::Ok);
    // The segment meets the triangle along a sub-segment from the origin.
    assert_eq!(
        serialize_result(&kb.vars, &result, EmitMode::Basic),
        "vertex (x2=0)\nvertex (x2=1/2)\n"
    );
}

#[test]
fn kb_round_trip_is_identity() {
    for text in [
        chain_kb(4),
        "vbs polytope\nreal x1\nreal x2\nlinear 1*x1 + 1*x2 <= 1\nquery x2 rep=upper order=given:x1\n".to_owned(),
        "vbs finite\nframe a 2\nframe b 3\ntuple (a=0)\ntuple (a=1, b=2)\n\ntuple (b=1)\nquery b order=minfill\n".to_owned(),
    ] {
        let once = parse(&text);
        let serialized = serialize_kb(&once);
        let twice = parse(&serialized);
        assert_eq!(once, twice, "round trip changed the model for:\n{text}");
        // Serialization is a fixed point from the first round on.
        assert_eq!(serialized, serialize_kb(&twice));
    }
}

#[test]
fn query_line_defaults_apply() {
    let mut text = chain_kb(4);
    text = text.replace("query p4\n", "query p4 rep=upper order=given:p3,p2,p1\n");
    let kb = parse(&text);
    assert_eq!(
        kb.queries[0].order,
        Some(Heuristic::Given(vec![VarId(2), VarId(1), VarId(0)]))
    );
    let result = run_query(&kb, "p4", &QueryOptions::default()).unwrap();
    assert_eq!(result.rep_kind, RepKind::Upper);
    assert_eq!(
        serialize_result(&kb.vars, &result, EmitMode::Basic),
        "tuple (p4=0)\n"
    );
}

#[test]
fn unknown_target_is_an_error() {
    let kb = parse("vbs finite\nframe p1 2\n");
    assert!(matches!(
        run_query(&kb, "zz", &QueryOptions::default()),
        Err(QueryError::UnknownVariable(_))
    ));
}
