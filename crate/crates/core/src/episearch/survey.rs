use serde::Serialize;

use super::search::{find_triples, SearchConfig};
use crate::error::{Error, Result};
use crate::zoo::{make_psl2, prime_power};

pub const DEFAULT_SURVEY_LIMIT: u64 = 50;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub q: u64,
    pub p: u64,
    pub f: u32,
    pub order: u64,
    pub hurwitz: bool,
    pub predicted: bool,
    pub triples: u64,
    pub class_count: Option<u64>,
    pub inner_class_count: Option<u64>,
    pub genus: Option<u64>,
}

/// `PSL2(q)` is a Hurwitz group exactly when `q = 7`, `q = p` with
/// `p = ±1 mod 7`, or `q = p^3` with `p = ±2, ±3 mod 7`.
pub fn psl2_hurwitz_predicted(q: u64) -> bool {
    let Ok((p, f)) = prime_power(q) else {
        return false;
    };
    match f {
        1 => p == 7 || matches!(p % 7, 1 | 6),
        3 => matches!(p % 7, 2..=5),
        _ => false,
    }
}

/// Searches `PSL2(q)` for Hurwitz triples for every prime power
/// `4 <= q <= q_max` and checks the verdicts against the arithmetic
/// criterion; a disagreement is an error.
pub fn hurwitz_survey_psl2(q_max: u64, limit: u64, cfg: &SearchConfig) -> Result<Vec<SurveyRow>> {
    if q_max > limit {
        return Err(Error::CapExceeded {
            what: "survey bound",
            cap: limit,
            actual: q_max,
        });
    }
    let mut rows = Vec::new();
    for q in 4..=q_max {
        let Ok((p, f)) = prime_power(q) else {
            continue;
        };
        let g = make_psl2(q)?;
        let r = find_triples(&g, [2, 3, 7], cfg)?;
        let triples = r.total.unwrap_or(0);
        let hurwitz = triples > 0;
        let predicted = psl2_hurwitz_predicted(q);
        if hurwitz != predicted {
            return Err(Error::Integrity(format!(
                "PSL2({q}): search says hurwitz = {hurwitz}, criterion says {predicted}"
            )));
        }
        rows.push(SurveyRow {
            q,
            p,
            f,
            order: g.order(),
            hurwitz,
            predicted,
            triples,
            class_count: r.class_count,
            inner_class_count: r.inner_class_count,
            genus: hurwitz.then(|| 1 + g.order() / 84),
        });
    }
    Ok(rows)
}
