use doublept::circle_maps::PLCircleMap;
use doublept::double_points::{
    controlled_hopf, hopf_invariant, planar_curve_hopf, self_intersections, sigma,
};
use doublept::Rational;
use serde_json::json;

use crate::report::{qpair, InputError, Outcome, Status};

pub fn of_map(f: &PLCircleMap<Rational>) -> Outcome {
    let curve = sigma(f);
    let h = hopf_invariant(&curve);
    let bits = controlled_hopf(&curve);
    let summary = vec![
        format!("h = {h}"),
        format!(
            "controlled bits {:?}",
            bits.iter().map(|&(_, b)| b).collect::<Vec<_>>()
        ),
    ];
    Outcome {
        status: Status::Ok,
        result: json!({
            "source": "map",
            "h": h,
            "controlled": bits.iter().map(|&(c, b)| json!({ "quotient": c, "bit": b })).collect::<Vec<_>>(),
        }),
        summary,
    }
}

pub fn of_polygon(vertices: &[(Rational, Rational)]) -> Result<Outcome, InputError> {
    let points = self_intersections(vertices).map_err(|e| InputError::new("validation", e))?;
    let h = planar_curve_hopf(vertices).map_err(|e| InputError::new("validation", e))?;
    let crossings: Vec<_> = points
        .iter()
        .map(|(p, i, j)| json!({ "point": qpair(p), "edges": [i, j] }))
        .collect();
    Ok(Outcome {
        status: Status::Ok,
        result: json!({
            "source": "polygon",
            "h": h,
            "double_points": crossings,
        }),
        summary: vec![format!("{} double points, h = {h}", points.len())],
    })
}
