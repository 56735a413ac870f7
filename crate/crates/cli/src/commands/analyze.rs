use doublept::circle_maps::PLCircleMap;
use doublept::double_points::{
    closure_orientability, controlled_hopf, hopf_invariant, lift_obstruction_check,
    realizability_from_curve, sigma, CurveKind, DoublePointCurve,
};
use doublept::Rational;
use serde_json::{json, Value};

use crate::report::{q, qpair, Outcome, Status};

pub fn map_json(f: &PLCircleMap<Rational>) -> Value {
    json!({
        "breakpoints": f.breakpoints().iter().map(qpair).collect::<Vec<_>>(),
        "degree": f.degree(),
    })
}

fn components_json(curve: &DoublePointCurve<Rational>) -> Vec<Value> {
    curve
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let kind = match &c.kind {
                CurveKind::Circle => json!({ "type": "circle" }),
                CurveKind::OpenArc { from_fold, to_fold } => {
                    json!({ "type": "open_arc", "from_fold": from_fold, "to_fold": to_fold })
                }
            };
            json!({
                "index": i,
                "kind": kind,
                "tau_partner": c.tau_partner,
                "tau_invariant": curve.is_tau_invariant(i),
                "p1_degree": c.p1_degree,
                "p2_degree": c.p2_degree,
                "target_degree": c.target_degree,
                "pieces": c.pieces.len(),
            })
        })
        .collect()
}

pub fn run(f: &PLCircleMap<Rational>) -> Outcome {
    let curve = sigma(f);
    let quotient: Vec<Value> = curve
        .quotient()
        .iter()
        .enumerate()
        .map(|(i, qc)| {
            json!({
                "index": i,
                "members": qc.members,
                "compact": qc.compact,
                "orientable_cover": qc.cover_trivial,
                "lifts_through_arc": qc.lifts_through_arc,
            })
        })
        .collect();
    let closure: Vec<Value> = (0..curve.closure().len())
        .map(|i| {
            let r = closure_orientability(&curve, i);
            json!({
                "index": i,
                "members": curve.closure()[i].members,
                "diagonal_folds": curve.closure()[i].diagonal_folds,
                "orientable": r.orientable,
                "crossings": r.crossings,
                "sign_rule_holds": r.sign_rule_holds,
            })
        })
        .collect();
    let h = hopf_invariant(&curve);
    let bits: Vec<Value> = controlled_hopf(&curve)
        .into_iter()
        .map(|(c, b)| json!({ "quotient": c, "bit": b }))
        .collect();
    let real = realizability_from_curve(&curve);
    let lift = lift_obstruction_check(&curve);

    let mut summary = vec![
        format!("degree {}, {} folds", f.degree(), f.fold_count()),
        format!(
            "sigma: {} components ({} compact, {} tau-invariant)",
            curve.components().len(),
            curve.components().iter().filter(|c| c.is_compact()).count(),
            (0..curve.components().len())
                .filter(|&c| curve.is_tau_invariant(c))
                .count()
        ),
        format!("hopf invariant h = {h}"),
        format!(
            "criterion {}, classical verdict {}, {}",
            if real.criterion_pass { "pass" } else { "fail" },
            if real.classical_dim1_verdict {
                "pass"
            } else {
                "fail"
            },
            if real.agreement { "agree" } else { "disagree" }
        ),
    ];
    summary.extend(real.notes.iter().map(|n| format!("note: {n}")));
    if lift.violation {
        summary.push("lift obstruction violated".into());
    }

    let result = json!({
        "map": map_json(f),
        "folds": {
            "count": f.fold_count(),
            "indices": f.fold_indices(),
            "critical_values": f.critical_values().iter().map(q).collect::<Vec<_>>(),
        },
        "sigma": {
            "components": components_json(&curve),
            "quotient": quotient,
            "closure": closure,
        },
        "hopf": { "h": h, "controlled": bits },
        "realizability": {
            "criterion_pass": real.criterion_pass,
            "witness": real.witness,
            "classical_dim1_verdict": real.classical_dim1_verdict,
            "agreement": real.agreement,
            "notes": real.notes,
        },
        "lift_obstruction_violation": lift.violation,
    });
    Outcome {
        status: Status::from_ok(!lift.violation),
        result,
        summary,
    }
}
