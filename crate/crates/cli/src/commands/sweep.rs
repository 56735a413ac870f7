use doublept::sweeps::{
    assign_disks, census, embedding_certificate, Disk, DiskPlacement, SweepMovie, EXPECTED_CENSUS,
};
use doublept::Rational;
use serde_json::{json, Value};

use crate::report::{q, qpair, Outcome, Status};

fn disk_json(d: &Disk<Rational>) -> Value {
    json!({ "center": qpair(&d.center), "radius": q(&d.radius) })
}

fn placement_json(movie: &SweepMovie<Rational>, p: &DiskPlacement<Rational>) -> Value {
    let name = |l: usize| movie.names()[l].clone();
    json!({
        "slots": p.slots.iter().enumerate().map(|(l, s)| json!({ "label": name(l), "slot": s })).collect::<Vec<_>>(),
        "intervals": p.intervals.iter().map(|iv| json!({
            "start": q(&iv.start),
            "end": q(&iv.end),
            "tracks": iv.tracks.iter().map(|tr| json!({
                "label": name(tr.label),
                "keys": tr.keys.iter().map(|k| json!({ "t": q(&k.t), "disk": disk_json(&k.disk) })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "points": p.points.iter().map(|(e, l, d)| json!({ "event": e, "label": name(*l), "disk": disk_json(d) })).collect::<Vec<_>>(),
    })
}

pub fn run(movie: &SweepMovie<Rational>, samples: usize, bundled: bool) -> Outcome {
    let placement = assign_disks(movie);
    let cert = embedding_certificate(movie, &placement, samples);
    let c = census(movie);
    let mut summary = vec![
        format!(
            "census: {} initial circles, {} surgeries (merges {}, splits {}, bands {}), {} final circles",
            c.initial_circles, c.surgeries, c.merges, c.splits, c.bands, c.final_circles
        ),
        match &c.parity {
            Some(p) => format!(
                "parity: orientable-only feasible = {}, at least {} non-orientable",
                p.orientable_only_feasible, p.min_nonorientable
            ),
            None => "parity: the surgery count cannot reach the final count".into(),
        },
    ];
    if bundled {
        summary.push(format!(
            "bundled census {}",
            if c.matches_expected() {
                "matches"
            } else {
                "deviates"
            }
        ));
    }
    let certificate = match &cert {
        Ok(r) => {
            summary.push(format!(
                "certificate passed: {} times, {} pair checks, {} tangencies",
                r.checked_times.len(),
                r.pair_checks,
                r.tangencies
            ));
            json!({
                "passed": true,
                "checked_times": r.checked_times.iter().map(q).collect::<Vec<_>>(),
                "pair_checks": r.pair_checks,
                "tangencies": r.tangencies,
                "continuity_checks": r.continuity_checks,
            })
        }
        Err(e) => {
            summary.push(format!("certificate failed: {e}"));
            json!({ "passed": false, "error": e.to_string() })
        }
    };
    let (ei, es, ef) = EXPECTED_CENSUS;
    let result = json!({
        "labels": movie.names(),
        "events": movie.events().len(),
        "samples": samples,
        "census": {
            "initial_circles": c.initial_circles,
            "surgeries": c.surgeries,
            "final_circles": c.final_circles,
            "merges": c.merges,
            "splits": c.splits,
            "bands": c.bands,
            "slice_counts": c.slice_counts,
            "parity": c.parity.map(|p| json!({
                "orientable_only_feasible": p.orientable_only_feasible,
                "min_nonorientable": p.min_nonorientable,
            })),
            "expected": [ei, es, ef],
            "bundled": bundled,
            "deviations": c.deviations,
        },
        "certificate": certificate,
        "placement": placement_json(movie, &placement),
    });
    Outcome {
        status: Status::from_ok(cert.is_ok() && (!bundled || c.matches_expected())),
        result,
        summary,
    }
}
