use doublept::circle_maps::{classify_preimage, Angle, Endpoint, PLCircleMap, TransverseArc};
use doublept::double_points::sigma;
use doublept::unfolding::{
    eliminate_negative_arcs, pair_degree_check, BalancedPath, Direction, UnfoldError, UnfoldMode,
};
use doublept::Rational;
use serde_json::{json, Value};

use crate::report::{q, InputError, Outcome, Status};

fn arc_json(a: &TransverseArc<Rational>) -> Value {
    json!({
        "lo": q(a.lo()),
        "hi": q(a.hi()),
        "start": q(a.start().value()),
        "end": q(a.end().value()),
        "orientation": a.orientation(),
        "embedded": a.is_embedded(),
    })
}

fn path_json(p: &BalancedPath<Rational>) -> Value {
    json!({
        "start_arc": p.start_arc,
        "end_arc": p.end_arc,
        "direction": match p.direction {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        },
        "sheet": p.sheet,
        "from": q(&p.from),
        "to": q(&p.to),
        "start_level": q(&p.start_level),
        "end_level": q(&p.end_level),
        "min_level": q(&p.min_level),
        "max_level": q(&p.max_level),
        "passed_positive": p.passed_positive,
        "passed_negative": p.passed_negative,
    })
}

fn input_error(e: UnfoldError) -> InputError {
    match e {
        UnfoldError::Arc(a) => InputError::new("validation", a),
        UnfoldError::NegativeDegree(_) | UnfoldError::BadRegularValue(_) => {
            InputError::new("validation", e)
        }
        other => InputError::new("precondition", other),
    }
}

pub fn run(
    f: &PLCircleMap<Rational>,
    start: Rational,
    end: Rational,
    mode: &UnfoldMode<Rational>,
) -> Result<Outcome, InputError> {
    let arc = TransverseArc::new(Angle::new(start), Angle::new(end), 1)
        .map_err(|e| InputError::new("validation", e))?;
    let res = eliminate_negative_arcs(f, &arc, mode).map_err(input_error)?;

    let steps: Vec<Value> = res
        .trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "phase": s.phase.name(),
                "arc": arc_json(&s.arc),
                "m": s.m,
                "p": s.p,
                "identity_holds": s.identity_holds,
                "path": s.path.as_ref().map(path_json),
            })
        })
        .collect();

    let recheck = classify_preimage(f, &res.arc).map_err(|e| InputError::new("validation", e))?;
    let curve = sigma(f);
    let pair = pair_degree_check(f, &res.arc, &curve).map_err(input_error)?;
    let pair_rows: Vec<Value> = pair
        .rows
        .iter()
        .map(|r| json!({ "component": r.component, "p1_degree": r.p1_degree, "pair_count": r.pair_count }))
        .collect();

    let decreasing = res.trace.strictly_decreasing();
    let identity = res.trace.steps.iter().all(|s| s.identity_holds);
    let regular_ok = res.regular_value.as_ref().is_none_or(|(_, ok)| *ok);
    let unfolded = match mode {
        UnfoldMode::RegularValue(_) => regular_ok,
        _ => recheck.m() == 0 && recheck.p() as i64 == f.degree(),
    };
    let ok = decreasing && identity && unfolded && pair.all_equal();

    let mut summary = vec![
        format!(
            "final arc [{}, {}], {} steps, m sequence {:?}",
            res.arc.lo(),
            res.arc.hi(),
            res.trace.steps.len(),
            res.trace.steps.iter().map(|s| s.m).collect::<Vec<_>>()
        ),
        format!("reclassified: m = {}, p = {}", recheck.m(), recheck.p()),
        format!(
            "pair degree identity {}",
            if pair.all_equal() { "holds" } else { "fails" }
        ),
    ];
    if let Some((z, good)) = &res.regular_value {
        summary.push(format!(
            "regular value {z}: {}",
            if *good {
                "every meeting component is positive or a circle"
            } else {
                "violated"
            }
        ));
    }

    let mode_json = match mode {
        UnfoldMode::Plain => json!({ "mode": "plain" }),
        UnfoldMode::OpenSubset { keep } => json!({
            "mode": "open-subset",
            "keep": match keep { Endpoint::Lo => "lo", Endpoint::Hi => "hi" },
        }),
        UnfoldMode::RegularValue(z) => json!({ "mode": "regular-value", "z": q(z) }),
    };
    let result = json!({
        "mode": mode_json,
        "initial_arc": arc_json(&arc),
        "final_arc": arc_json(&res.arc),
        "trace": steps,
        "strictly_decreasing": decreasing,
        "regular_value": res.regular_value.as_ref().map(|(z, good)| json!({ "z": q(z), "ok": good })),
        "verification": {
            "m": recheck.m(),
            "p": recheck.p(),
            "components": recheck.components.iter().map(|c| json!({
                "kind": c.kind.name(),
                "sheet": c.sheet,
                "start": q(&c.start),
                "end": q(&c.end),
            })).collect::<Vec<_>>(),
            "pair_degree": {
                "all_equal": pair.all_equal(),
                "unlocated": pair.unlocated,
                "points": pair.points.iter().map(q).collect::<Vec<_>>(),
                "rows": pair_rows,
            },
        },
    });
    Ok(Outcome {
        status: Status::from_ok(ok),
        result,
        summary,
    })
}
