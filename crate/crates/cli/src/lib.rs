//! Library side of the `p2walls` executable: argument parsing, rendering and
//! the table and sweep drivers, usable without spawning the binary.

pub mod error;
pub mod parse;
pub mod render;
pub mod svg;
pub mod sweep;
pub mod tables;

use serde::Serialize;

use p2walls_core::exceptional::{containing_exceptional, delta};
use p2walls_core::exactmath::fmt_rat;
use p2walls_core::extremal::min_stable_disc;
use p2walls_core::walls::{delta_one, exclusion_search_with_budget, search_budget_from_env};
use p2walls_core::{ample_cone, classify, extremal_triple, gieseker_wall, Int, Rat};

use crate::error::{CliError, CliResult};
use crate::parse::{parse_character, parse_rational};
use crate::render::{
    AmpleView, CharView, ClassifyView, DecompositionView, ExceptionalView, GiesekerView, QuadView, WallView,
};

pub const SCHEMA: &str = include_str!("../schema/ample.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn emit(view: &impl Serialize, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = render::to_json(view);
            s.push('\n');
            s
        }
        Format::Text => render::to_text(view),
    }
}

pub fn classify_cmd(text: &str, format: Format) -> CliResult<String> {
    let xi = parse_character(text)?;
    let class = classify(&xi)?;
    Ok(emit(&ClassifyView::new(&xi, &class), format))
}

#[derive(Serialize)]
struct RankView {
    rank: String,
    min_stable_disc: String,
    min_stable_rank: String,
    delta_one: Option<QuadView>,
}

#[derive(Serialize)]
struct DeltaView {
    slope: String,
    delta: String,
    exceptional: bool,
    home: ExceptionalView,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<RankView>,
}

/// `δ(μ)` and its exceptional slope; with a rank, also `Δ′` and `Δ₁`.
pub fn delta_cmd(slope: &str, rank: Option<u64>, format: Format, decimals: usize) -> CliResult<String> {
    let mu: Rat = parse_rational(slope)?;
    let home = containing_exceptional(&mu)?;
    let rank = match rank {
        Some(r) => {
            let r = Int::from(r);
            let (disc, r_min) = min_stable_disc(&mu, &r)?;
            Some(RankView {
                rank: r.to_string(),
                min_stable_disc: fmt_rat(&disc),
                min_stable_rank: r_min.to_string(),
                delta_one: delta_one(&r, &mu)?.map(|d| QuadView::new(&d, decimals)),
            })
        }
        None => None,
    };
    let view = DeltaView {
        slope: fmt_rat(&mu),
        delta: fmt_rat(&delta(&mu)?),
        exceptional: home.alpha() == &mu,
        home: ExceptionalView::new(&home, decimals),
        rank,
    };
    Ok(emit(&view, format))
}

pub fn extremal_cmd(text: &str, format: Format) -> CliResult<String> {
    let xi = parse_character(text)?;
    let d = extremal_triple(&xi)?;
    Ok(emit(&DecompositionView::new(&d), format))
}

/// Gieseker wall report; the SVG, if requested, is returned alongside.
pub fn wall_cmd(text: &str, format: Format, decimals: usize, nested: usize) -> CliResult<(String, String)> {
    let xi = parse_character(text)?;
    let report = gieseker_wall(&xi)?;
    let svg = svg::wall_svg(&xi, &report, nested);
    Ok((emit(&GiesekerView::new(&xi, &report, decimals), format), svg))
}

#[derive(Serialize)]
struct ExcludeView {
    character: CharView,
    wall: WallView,
    budget: String,
    violations: Vec<CharView>,
}

/// Runs the exclusion oracle; a nonempty result is an internal assertion.
pub fn exclude_cmd(text: &str, budget: Option<usize>, format: Format, decimals: usize) -> CliResult<String> {
    let xi = parse_character(text)?;
    let report = gieseker_wall(&xi)?;
    let budget = budget.unwrap_or_else(search_budget_from_env);
    let violations = exclusion_search_with_budget(&xi, &report.wall, &Rat::from_integer(Int::from(0)), budget)?;
    let view = ExcludeView {
        character: CharView::new(&xi),
        wall: WallView::new(&report.wall, decimals),
        budget: budget.to_string(),
        violations: violations.iter().map(CharView::new).collect(),
    };
    let out = emit(&view, format);
    if violations.is_empty() {
        Ok(out)
    } else {
        Err(CliError::Assertion(format!(
            "{} larger wall(s) found for {}:\n{out}",
            violations.len(),
            xi.to_invariant_string()
        )))
    }
}

pub fn ample_cmd(text: &str, format: Format, decimals: usize) -> CliResult<String> {
    let xi = parse_character(text)?;
    let report = ample_cone(&xi)?;
    Ok(emit(&AmpleView::new(&report, decimals), format))
}

/// Table diff text; a mismatch becomes [`CliError::TableMismatch`] after printing.
pub fn tables_cmd(which: u8) -> CliResult<(String, bool)> {
    let report = tables::verify_table(which)?;
    Ok((report.render(), report.passed()))
}
