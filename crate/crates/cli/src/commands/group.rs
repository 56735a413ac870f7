use doublept::space_forms::{
    cover_realizable_in_dimension, cover_sigma_model, dcover_consistency, hopf_of_cover,
    involution_count, nonrealizable_map_exists, FiniteSubgroupS3, Pi1,
};
use serde_json::{json, Value};

use crate::report::{InputError, Outcome, Status};

pub fn run(g: &FiniteSubgroupS3, dimension: u32) -> Result<Outcome, InputError> {
    let realizable = cover_realizable_in_dimension(g, dimension)
        .map_err(|e| InputError::new("unsupported", e))?;
    let model = cover_sigma_model(g);
    let hopf = hopf_of_cover(g);
    let involutions = involution_count(g);
    let exists = nonrealizable_map_exists(Pi1::Finite(g));
    let consistent = realizable == (hopf == 0) && exists == !realizable && involutions <= 1;
    let family = g.family();
    let summary = vec![
        format!(
            "{}{}: order {}, {} involution{}",
            family.name(),
            family
                .parameter()
                .map(|p| format!("({p})"))
                .unwrap_or_default(),
            g.order(),
            involutions,
            if involutions == 1 { "" } else { "s" }
        ),
        format!("cover realizable = {realizable}, hopf = {hopf}"),
        format!("nonrealizable map exists = {exists}"),
    ];
    let components: Vec<Value> = model
        .components
        .iter()
        .map(|c| {
            json!({
                "element": c.element,
                "tau_invariant": c.tau_invariant,
                "projection_degree": c.projection_degree,
            })
        })
        .collect();
    Ok(Outcome {
        status: Status::from_ok(consistent),
        result: json!({
            "family": family.name(),
            "parameter": family.parameter(),
            "order": g.order(),
            "dimension": dimension,
            "involutions": g.involutions(),
            "involution_count": involutions,
            "sigma_model": {
                "components": components,
                "invariant_count": model.invariant_count(),
            },
            "realizable": realizable,
            "hopf": hopf,
            "nonrealizable_map_exists": exists,
            "consistent": consistent,
        }),
        summary,
    })
}

pub fn dcover(from: u32, to: u32) -> Result<Outcome, InputError> {
    if from < 2 || from > to {
        return Err(InputError::new(
            "validation",
            format!("need 2 <= from <= to, got {from}..{to}"),
        ));
    }
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    let mut all = true;
    for d in from..=to {
        let r = dcover_consistency(d).map_err(|e| InputError::new("validation", e))?;
        all &= r.agree;
        summary.push(format!(
            "d = {d}: {} components, {} invariant, h = {} ({})",
            r.sigma_components,
            r.sigma_invariant,
            r.sigma_hopf,
            if r.agree { "agree" } else { "disagree" }
        ));
        rows.push(json!({
            "d": r.d,
            "sigma_components": r.sigma_components,
            "sigma_invariant": r.sigma_invariant,
            "sigma_all_circles": r.sigma_all_circles,
            "sigma_projection_degrees": r.sigma_projection_degrees,
            "sigma_hopf": r.sigma_hopf,
            "model_components": r.model_components,
            "model_invariant": r.model_invariant,
            "model_hopf": r.model_hopf,
            "agree": r.agree,
        }));
    }
    Ok(Outcome {
        status: Status::from_ok(all),
        result: json!({ "rows": rows, "all_agree": all }),
        summary,
    })
}
