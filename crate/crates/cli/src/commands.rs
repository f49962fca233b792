use std::path::PathBuf;

use serde_json::{json, Value};
use tql_core::episearch::{
    classify, extended_hurwitz_survey, find_quadruples, find_subgroups_of_order, find_triples, g7_quadruple_search,
    handles_bookkeeping, hurwitz_survey_psl2, index_seven_check, induced_quadruples, inverting_involution_exists,
    irreducible_subgroups, quadruple_braid_orbits, smallest_index_found, GeneratingTriple, QuadrupleSearch,
    WordBounds, DEFAULT_SURVEY_LIMIT,
};
use tql_core::fuchsian::{
    abelianization, enumerate_subgroup_signatures, surface_genus_from_order, triangle_subgroup_candidates, Signature,
};
use tql_core::zoo::GroupSpec;
use tql_core::GroupHandle;

use crate::args::{Command, SigOp, SurveyFamily};
use crate::{CliError, Context};

/// Ordered generating quadruples counted for braid orbits at most.
const ORBIT_CAP: usize = 200_000;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports always serialize")
}

/// The group a command runs on and the data files it reads.
pub fn group_spec(cmd: &Command) -> (Option<GroupSpec>, Vec<PathBuf>) {
    let spec = match cmd {
        Command::Hurwitz { spec, .. }
        | Command::Quad { spec, .. }
        | Command::Classify { spec }
        | Command::D7 { spec, .. }
        | Command::Ext237 { spec }
        | Command::Theorem1 { spec, .. }
        | Command::Irreducible { spec, .. }
        | Command::Induced { spec, .. } => Some(spec.clone()),
        _ => None,
    };
    let files = spec.as_ref().map(|s| s.files()).unwrap_or_default();
    (spec, files)
}

fn with(mut v: Value, key: &str, extra: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert(key.to_string(), extra);
    }
    v
}

/// First Hurwitz triple of `g`, or a precondition error.
pub fn hurwitz_triple(g: &GroupHandle, ctx: &Context) -> Result<GeneratingTriple, CliError> {
    find_triples(g, [2, 3, 7], &ctx.cfg)?
        .witnesses
        .into_iter()
        .next()
        .ok_or_else(|| CliError::Usage(format!("{} has no (2,3,7) generating triple", g.name())))
}

pub fn execute(cmd: &Command, ctx: &Context) -> Result<Value, CliError> {
    let cfg = &ctx.cfg;
    let build = |spec: &GroupSpec| spec.build().map_err(CliError::from);
    Ok(match cmd {
        Command::Sig { op } => sig(op)?,
        Command::Hurwitz { spec, orders } => {
            let g = build(spec)?;
            let orders: [u64; 3] = orders
                .as_slice()
                .try_into()
                .map_err(|_| CliError::Usage("exactly three orders are required".into()))?;
            let report = find_triples(&g, orders, cfg)?;
            let genus = match (report.total, Signature::sphere(&orders)) {
                (Some(t), Ok(s)) if t > 0 && s.is_hyperbolic() => Some(surface_genus_from_order(g.order(), &s)?),
                _ => None,
            };
            with(to_value(&report), "genus", json!(genus))
        }
        Command::Quad {
            spec,
            nmax,
            nset,
            orbits,
        } => {
            let g = build(spec)?;
            let mut search = if *nset {
                QuadrupleSearch::existence()
            } else {
                QuadrupleSearch::counting()
            };
            if let Some(k) = nmax {
                search = search.only(1..=*k);
            }
            let report = to_value(&find_quadruples(&g, &search, cfg)?);
            if *orbits {
                with(report, "braid_orbits", to_value(&quadruple_braid_orbits(&g, cfg, ORBIT_CAP)?))
            } else {
                report
            }
        }
        Command::Classify { spec } => to_value(&classify(&build(spec)?, cfg)?),
        Command::Survey { family, qmax } => match family {
            SurveyFamily::Psl2 => {
                let rows = hurwitz_survey_psl2(*qmax, DEFAULT_SURVEY_LIMIT, cfg)?;
                let hurwitz: Vec<u64> = rows.iter().filter(|r| r.hurwitz).map(|r| r.q).collect();
                json!({ "family": "psl2", "qmax": qmax, "hurwitz": hurwitz, "rows": rows })
            }
        },
        Command::D7 { spec, k } => {
            let g = build(spec)?;
            let witness = inverting_involution_exists(&g, *k, cfg)?;
            let mut v = json!({ "group": g.name(), "k": k, "exists": witness.is_some(), "witness": witness });
            if *k == 7 && witness.is_some() {
                let triple = find_triples(&g, [2, 3, 7], cfg)?.witnesses.into_iter().next();
                if let Some(t) = triple {
                    v = with(v, "g7_quadruple", to_value(&g7_quadruple_search(&g, &t, cfg)?));
                }
            }
            v
        }
        Command::Ext237 { spec } => {
            let g = build(spec)?;
            with(to_value(&extended_hurwitz_survey(&g, cfg)?), "group", json!(g.name()))
        }
        Command::Theorem1 { spec, subgroup_order } => {
            let g = build(spec)?;
            let triple = hurwitz_triple(&g, ctx)?;
            to_value(&index_seven_check(&g, &triple, *subgroup_order, ctx.attempts, ctx.seed, cfg)?)
        }
        Command::Irreducible { spec, smallest_index_up_to } => {
            let g = build(spec)?;
            let triple = hurwitz_triple(&g, ctx)?;
            let report = to_value(&irreducible_subgroups(&g, &triple, ctx.attempts, ctx.seed, cfg)?);
            match smallest_index_up_to {
                Some(d) => {
                    let found = smallest_index_found(&g, *d, ctx.attempts, ctx.seed, cfg)?;
                    with(report, "smallest_index_found", json!(found))
                }
                None => report,
            }
        }
        Command::Induced { spec, subgroup_order } => {
            let g = build(spec)?;
            let triple = hurwitz_triple(&g, ctx)?;
            let subgroups = find_subgroups_of_order(&g, *subgroup_order, ctx.attempts, ctx.seed, cfg)?;
            let u = subgroups
                .into_iter()
                .next()
                .ok_or_else(|| CliError::Usage(format!("no subgroup of order {subgroup_order} found")))?;
            let report = induced_quadruples(&g, &triple, &u, WordBounds::default())?;
            json!({ "group": g.name(), "subgroup_generators": u.generators(), "report": report })
        }
        Command::Handles { order, triangle_image } => to_value(&handles_bookkeeping(*order, *triangle_image)?),
        Command::Repro { .. } => unreachable!("handled by the dispatcher"),
    })
}

fn sig(op: &SigOp) -> Result<Value, CliError> {
    Ok(match op {
        SigOp::Chi { sig } => json!({
            "signature": sig,
            "chi": sig.euler_characteristic().to_string(),
            "hyperbolic": sig.is_hyperbolic(),
        }),
        SigOp::Genus { order, sig } => json!({
            "order": order,
            "signature": sig,
            "genus": surface_genus_from_order(*order, sig)?,
        }),
        SigOp::Ab { sig } => {
            let ab = abelianization(sig);
            json!({
                "signature": sig,
                "abelianization": ab.to_string(),
                "torsion": ab.torsion,
                "free_rank": ab.free_rank,
            })
        }
        SigOp::Subcands { index, parent } => json!({
            "parent": parent,
            "index": index,
            "candidates": enumerate_subgroup_signatures(parent, *index)?,
        }),
        SigOp::Triangles { parent } => {
            let rows: Vec<Value> = triangle_subgroup_candidates(parent)?
                .into_iter()
                .map(|(d, s)| json!({ "index": d, "signature": s }))
                .collect();
            json!({ "parent": parent, "candidates": rows })
        }
    })
}
