//! JSON views of core results. Every number is an exact string; decimal
//! companions are display-only.

use serde::Serialize;
use serde_json::Value;

use p2walls_core::ample::AmpleReport;
use p2walls_core::exactmath::{fmt_rat, rat_decimal};
use p2walls_core::exceptional::ExcSlope;
use p2walls_core::walls::{CheckStatus, WallChecks};
use p2walls_core::{ChernChar, Classification, Decomposition, GiesekerReport, QuadVal, Rat, Wall};

#[derive(Serialize)]
pub struct CharView {
    pub r: String,
    pub c1: String,
    pub ch2: String,
    pub slope: Option<String>,
    pub disc: Option<String>,
    pub invariant: String,
}

impl CharView {
    pub fn new(xi: &ChernChar) -> Self {
        let (slope, disc) = match xi.invariants() {
            Ok((mu, d)) => (Some(fmt_rat(&mu)), Some(fmt_rat(&d))),
            Err(_) => (None, None),
        };
        CharView {
            r: xi.rank().to_string(),
            c1: xi.c1().to_string(),
            ch2: fmt_rat(xi.ch2()),
            slope,
            disc,
            invariant: xi.to_invariant_string(),
        }
    }
}

#[derive(Serialize)]
pub struct QuadView {
    pub exact: String,
    pub decimal: String,
}

/// Exact text for `a ± √q`, collapsing perfect squares to a rational.
pub fn quad_exact(x: &QuadVal) -> String {
    match x.to_rat() {
        Some(r) => fmt_rat(&r),
        None => x.to_string(),
    }
}

impl QuadView {
    pub fn new(x: &QuadVal, decimals: usize) -> Self {
        QuadView {
            exact: quad_exact(x),
            decimal: x.to_decimal(decimals),
        }
    }
}

#[derive(Serialize)]
pub struct RatView {
    pub exact: String,
    pub decimal: String,
}

impl RatView {
    pub fn new(x: &Rat, decimals: usize) -> Self {
        RatView {
            exact: fmt_rat(x),
            decimal: rat_decimal(x, decimals),
        }
    }
}

#[derive(Serialize)]
pub struct ClassifyView {
    pub character: CharView,
    pub kind: &'static str,
    pub stable: bool,
    pub slope: String,
    pub disc: String,
    pub delta: String,
    pub height: String,
}

impl ClassifyView {
    pub fn new(xi: &ChernChar, class: &Classification) -> Self {
        ClassifyView {
            character: CharView::new(xi),
            kind: class.kind.as_str(),
            stable: class.is_stable(),
            slope: fmt_rat(&class.slope),
            disc: fmt_rat(&class.disc),
            delta: fmt_rat(&class.delta),
            height: fmt_rat(&(&class.disc - &class.delta)),
        }
    }
}

#[derive(Serialize)]
pub struct ExceptionalView {
    pub slope: String,
    pub rank: String,
    pub disc: String,
    pub half_width: QuadView,
}

impl ExceptionalView {
    pub fn new(e: &ExcSlope, decimals: usize) -> Self {
        ExceptionalView {
            slope: fmt_rat(e.alpha()),
            rank: e.rank().to_string(),
            disc: fmt_rat(e.disc()),
            half_width: QuadView::new(e.half_width(), decimals),
        }
    }
}

#[derive(Serialize)]
pub struct DecompositionView {
    pub sub: CharView,
    pub whole: CharView,
    pub quotient: CharView,
    pub chi: String,
    pub admissible: bool,
    pub failing: Vec<String>,
    pub extremal: bool,
    pub minimal: bool,
    pub torsion: bool,
    pub coprime: bool,
}

impl DecompositionView {
    pub fn new(d: &Decomposition) -> Self {
        DecompositionView {
            sub: CharView::new(d.sub()),
            whole: CharView::new(d.whole()),
            quotient: CharView::new(d.quotient()),
            chi: fmt_rat(&d.chi()),
            admissible: d.is_admissible(),
            failing: d.failing().iter().map(|c| format!("{c:?}")).collect(),
            extremal: d.is_extremal(),
            minimal: d.is_minimal(),
            torsion: d.is_torsion(),
            coprime: d.is_coprime(),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WallView {
    Vertical {
        s: String,
    },
    Semicircle {
        center: String,
        radius_sq: String,
        x_plus: QuadView,
        x_minus: QuadView,
    },
    Empty {
        center: String,
        radius_sq: String,
    },
    Nowhere,
}

impl WallView {
    pub fn new(wall: &Wall, decimals: usize) -> Self {
        match wall {
            Wall::Vertical { s } => WallView::Vertical { s: fmt_rat(s) },
            Wall::Semicircle { center, radius_sq } => WallView::Semicircle {
                center: fmt_rat(center),
                radius_sq: fmt_rat(radius_sq),
                x_plus: QuadView::new(&wall.x_plus().expect("semicircle"), decimals),
                x_minus: QuadView::new(&wall.x_minus().expect("semicircle"), decimals),
            },
            Wall::Empty { center, radius_sq } => WallView::Empty {
                center: fmt_rat(center),
                radius_sq: fmt_rat(radius_sq),
            },
            Wall::Nowhere => WallView::Nowhere,
        }
    }
}

#[derive(Serialize)]
pub struct ChecksView {
    pub quotient_stable: &'static str,
    pub hom_vanishing: &'static str,
    pub beats_rank_bound: &'static str,
    pub no_small_denominator: &'static str,
}

impl ChecksView {
    pub fn new(c: &WallChecks) -> Self {
        let s = |x: CheckStatus| x.as_str();
        ChecksView {
            quotient_stable: s(c.quotient_stable),
            hom_vanishing: s(c.hom_vanishing),
            beats_rank_bound: s(c.beats_rank_bound),
            no_small_denominator: s(c.no_small_denominator),
        }
    }
}

#[derive(Serialize)]
pub struct GiesekerView {
    pub character: CharView,
    pub destabilizer: CharView,
    pub wall: WallView,
    pub certificate: &'static str,
    pub checks: ChecksView,
    pub decomposition: DecompositionView,
}

impl GiesekerView {
    pub fn new(xi: &ChernChar, g: &GiesekerReport, decimals: usize) -> Self {
        GiesekerView {
            character: CharView::new(xi),
            destabilizer: CharView::new(&g.destabilizer),
            wall: WallView::new(&g.wall, decimals),
            certificate: g.certificate.as_str(),
            checks: ChecksView::new(&g.checks),
            decomposition: DecompositionView::new(&g.decomposition),
        }
    }
}

#[derive(Serialize)]
pub struct CurveView {
    pub kind: &'static str,
    pub decomposition: DecompositionView,
}

#[derive(Serialize)]
pub struct AmpleView {
    pub character: CharView,
    pub u1_ray: CharView,
    pub primary_ray: CharView,
    pub gieseker: GiesekerView,
    pub curve_witness: CurveView,
    pub singular_locus_empty: bool,
    pub duy_edge: bool,
    pub moduli_dim: String,
}

impl AmpleView {
    pub fn new(a: &AmpleReport, decimals: usize) -> Self {
        AmpleView {
            character: CharView::new(&a.xi),
            u1_ray: CharView::new(&a.u1_ray),
            primary_ray: CharView::new(&a.primary_ray),
            gieseker: GiesekerView::new(&a.xi, &a.gieseker, decimals),
            curve_witness: CurveView {
                kind: a.curve_kind.as_str(),
                decomposition: DecompositionView::new(&a.curve_witness),
            },
            singular_locus_empty: a.singular_locus_empty,
            duy_edge: a.duy_edge,
            moduli_dim: a.moduli_dim.to_string(),
        }
    }
}

pub fn to_value(view: &impl Serialize) -> Value {
    serde_json::to_value(view).expect("views serialize")
}

pub fn to_json(view: &impl Serialize) -> String {
    serde_json::to_string_pretty(view).expect("views serialize")
}

/// Indented `key: value` lines in field order.
pub fn to_text(view: &impl Serialize) -> String {
    let mut out = String::new();
    write_text(&to_value(view), 0, &mut out);
    out
}

fn write_text(value: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match v {
                    Value::Object(inner) if !inner.is_empty() => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        write_text(v, depth + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        for item in items {
                            out.push_str(&format!("{pad}  -\n"));
                            write_text(item, depth + 2, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{key}: {}\n", scalar(v))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(_) => "{}".to_string(),
        other => other.to_string(),
    }
}
