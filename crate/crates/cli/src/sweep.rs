//! Batch reports over ranges of characters, emitted as NDJSON.

use rayon::prelude::*;
use serde::Serialize;

use p2walls_core::chern::disc_lattice;
use p2walls_core::exceptional::delta;
use p2walls_core::{ample_cone, ChernChar, Int, Rat};

use crate::error::{core_kind, CliResult};
use crate::render::{AmpleView, CharView};

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub min_rank: i64,
    pub max_rank: i64,
    /// Slopes to visit; `None` means every `c/r` with `0 < c/r ≤ 1`.
    pub slopes: Option<Vec<Rat>>,
    /// Lattice points per `(r, μ)`, counted up from the first positive-height one.
    pub steps: usize,
}

/// Characters visited by the sweep, ordered by rank, slope, then discriminant.
pub fn sweep_characters(spec: &SweepSpec) -> CliResult<Vec<ChernChar>> {
    let mut out = Vec::new();
    for r in spec.min_rank.max(1)..=spec.max_rank {
        let rank = Int::from(r);
        let rank_rat = Rat::from_integer(rank.clone());
        let slopes: Vec<Rat> = match &spec.slopes {
            Some(list) => {
                let mut list: Vec<Rat> = list.iter().filter(|m| (*m * &rank_rat).is_integer()).cloned().collect();
                list.sort();
                list.dedup();
                list
            }
            None => (1..=r).map(|c| Rat::new(Int::from(c), rank.clone())).collect(),
        };
        for mu in slopes {
            let c1 = (&mu * &rank_rat).to_integer();
            let lattice = disc_lattice(&rank, &c1)?;
            let mut disc = lattice.first_above(&delta(&mu)?);
            for _ in 0..spec.steps {
                out.push(ChernChar::from_invariants(rank.clone(), mu.clone(), disc.clone())?);
                disc = lattice.offset(&disc, 1);
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct ErrorView {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct Item {
    input: CharView,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<AmpleView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorView>,
}

/// One JSON line per character, in input order; failures are embedded.
pub fn sweep_lines(spec: &SweepSpec, decimals: usize) -> CliResult<Vec<String>> {
    let characters = sweep_characters(spec)?;
    Ok(characters
        .par_iter()
        .map(|xi| {
            let item = match ample_cone(xi) {
                Ok(report) => Item {
                    input: CharView::new(xi),
                    report: Some(AmpleView::new(&report, decimals)),
                    error: None,
                },
                Err(e) => Item {
                    input: CharView::new(xi),
                    report: None,
                    error: Some(ErrorView {
                        kind: core_kind(&e),
                        message: e.to_string(),
                    }),
                },
            };
            serde_json::to_string(&item).expect("items serialize")
        })
        .collect())
}
