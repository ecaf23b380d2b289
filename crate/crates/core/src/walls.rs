//! Potential walls in the `(s, t)` half-plane, the Gieseker wall and the
//! brute-force search for larger walls.
//!
//! For characters `A = (r₁, c₁, d₁)` and `B = (r₂, c₂, d₂)` the central
//! charges `Z_{s,t}` have equal slope exactly when
//!
//! ```text
//! a(s² + t²)/2 + b·s + c = 0,   (a, b, c) = (r₁c₂ − r₂c₁, d₁r₂ − d₂r₁, d₂c₁ − d₁c₂)
//! ```
//!
//! so a wall is a semicircle centred at `−b/a` when `a ≠ 0` and the vertical
//! line `s = −c/b` otherwise. Radii are kept squared and rational; endpoints
//! are [`QuadVal`]s.

use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::chern::{disc_lattice, ChernChar};
use crate::error::{Error, Result};
use crate::exactmath::{farey_pred, rat, Int, QuadVal, Rat};
use crate::exceptional::{containing_exceptional, delta};
use crate::extremal::{
    classify, curve_decomposition, extremal_sub, extremal_triple, special_five_shift, Decomposition, Stability,
};

/// Candidate budget when `P2WALLS_SEARCH_BUDGET` is unset.
pub const DEFAULT_SEARCH_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Wall {
    Vertical { s: Rat },
    Semicircle { center: Rat, radius_sq: Rat },
    /// The circle equation has no points with `t > 0`.
    Empty { center: Rat, radius_sq: Rat },
    /// Both characters are torsion with proportional `c1`; the slopes never agree.
    Nowhere,
}

impl Wall {
    pub fn center(&self) -> Option<&Rat> {
        match self {
            Wall::Semicircle { center, .. } | Wall::Empty { center, .. } => Some(center),
            _ => None,
        }
    }

    pub fn radius_sq(&self) -> Option<&Rat> {
        match self {
            Wall::Semicircle { radius_sq, .. } | Wall::Empty { radius_sq, .. } => Some(radius_sq),
            _ => None,
        }
    }

    pub fn is_semicircle(&self) -> bool {
        matches!(self, Wall::Semicircle { .. })
    }

    /// Right endpoint `center + √ρ²` of a semicircle.
    pub fn x_plus(&self) -> Option<QuadVal> {
        match self {
            Wall::Semicircle { center, radius_sq } => Some(QuadVal::plus(center.clone(), radius_sq.clone())),
            _ => None,
        }
    }

    pub fn x_minus(&self) -> Option<QuadVal> {
        match self {
            Wall::Semicircle { center, radius_sq } => Some(QuadVal::minus(center.clone(), radius_sq.clone())),
            _ => None,
        }
    }

    /// The same wall after twisting both characters by `O(n)`.
    pub fn shifted(&self, n: &Rat) -> Wall {
        match self {
            Wall::Vertical { s } => Wall::Vertical { s: s + n },
            Wall::Semicircle { center, radius_sq } => Wall::Semicircle {
                center: center + n,
                radius_sq: radius_sq.clone(),
            },
            Wall::Empty { center, radius_sq } => Wall::Empty {
                center: center + n,
                radius_sq: radius_sq.clone(),
            },
            Wall::Nowhere => Wall::Nowhere,
        }
    }
}

fn wall_coefficients(x: &ChernChar, y: &ChernChar) -> (Rat, Rat, Rat) {
    let [r1, c1, d1] = x.coords();
    let [r2, c2, d2] = y.coords();
    let a = &r1 * &c2 - &r2 * &c1;
    let b = &d1 * &r2 - &d2 * &r1;
    let c = &d2 * &c1 - &d1 * &c2;
    (a, b, c)
}

/// The locus where `ξ₁` and `ξ₂` have equal Bridgeland slope.
pub fn potential_wall(xi1: &ChernChar, xi2: &ChernChar) -> Result<Wall> {
    let (a, b, c) = wall_coefficients(xi1, xi2);
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::DependentCharacters);
    }
    if a.is_zero() {
        if b.is_zero() {
            return Ok(Wall::Nowhere);
        }
        return Ok(Wall::Vertical { s: -c / b });
    }
    let center = -(&b / &a);
    let radius_sq = &center * &center - rat(2, 1) * &c / &a;
    if radius_sq.is_positive() {
        Ok(Wall::Semicircle { center, radius_sq })
    } else {
        Ok(Wall::Empty { center, radius_sq })
    }
}

/// Whether `Z_{s,t}(ξ)` and `Z_{s,t}(ζ)` are real multiples at `t² = t_sq`.
pub fn on_wall(xi: &ChernChar, zeta: &ChernChar, s: &Rat, t_sq: &Rat) -> bool {
    let re = |x: &ChernChar| {
        let [r, c1, d] = x.coords();
        -(d - s * c1 + (s * s - t_sq) * r * rat(1, 2))
    };
    let im = |x: &ChernChar| {
        let [r, c1, _] = x.coords();
        c1 - s * r
    };
    re(xi) * im(zeta) == re(zeta) * im(xi)
}

/// Upper bound `r²Δ/(2(r + 1))` on `ρ²` for walls of subobjects of rank above `r`.
pub fn rank_bound_radius_sq(xi: &ChernChar) -> Result<Rat> {
    let (_, disc) = xi.invariants()?;
    let r = Rat::from_integer(xi.rank().clone());
    Ok(&r * &r * disc / (rat(2, 1) * (r + Rat::one())))
}

/// Larger root `Δ₁(r, μ)` of `ρ²(Δ) = r²Δ/(2(r + 1))`, where `ρ²(Δ)` is the
/// squared radius of the extremal wall of `(r, μ, Δ)`. `None` if no real root.
pub fn delta_one(r: &Int, mu: &Rat) -> Result<Option<QuadVal>> {
    let sub = extremal_sub(r, mu)?;
    let (mu_sub, disc_sub) = sub.invariants()?;
    let gap = mu - &mu_sub;
    let gap_sq = &gap * &gap;
    let r = Rat::from_integer(r.clone());
    let k = &r * &r / (rat(2, 1) * (&r + Rat::one()));
    let m = &disc_sub - &gap_sq * rat(1, 2);
    // Δ² − BΔ + m² = 0
    let b = rat(2, 1) * &m + &gap_sq * (rat(2, 1) + k);
    let half_b = b * rat(1, 2);
    let radicand = &half_b * &half_b - &m * &m;
    if radicand.is_negative() {
        return Ok(None);
    }
    Ok(Some(QuadVal::plus(half_b, radicand)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    ProvedSmallRank,
    ProvedSpecial,
    UpperBoundPlusHomAssumption,
    Heuristic,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::ProvedSmallRank => "proved-small-rank",
            Certificate::ProvedSpecial => "proved-special",
            Certificate::UpperBoundPlusHomAssumption => "upper-bound-plus-hom-assumption",
            Certificate::Heuristic => "heuristic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    Assumed,
}

impl CheckStatus {
    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Assumed => "assumed",
        }
    }
}

/// Sufficient conditions for the wall to be the Gieseker wall at large rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WallChecks {
    /// `ξ″` is stable.
    pub quotient_stable: CheckStatus,
    /// Generic vanishing of the relevant Hom; never verified here.
    pub hom_vanishing: CheckStatus,
    /// `ρ² ≥ r²Δ/(2(r + 1))`.
    pub beats_rank_bound: CheckStatus,
    /// No rational in `[x⁺, μ(ξ′))` has denominator `≤ r`.
    pub no_small_denominator: CheckStatus,
}

impl WallChecks {
    fn all_verified(&self) -> bool {
        [self.quotient_stable, self.beats_rank_bound, self.no_small_denominator]
            .iter()
            .all(|c| *c == CheckStatus::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GiesekerReport {
    pub wall: Wall,
    pub destabilizer: ChernChar,
    pub decomposition: Decomposition,
    pub certificate: Certificate,
    pub checks: WallChecks,
}

impl GiesekerReport {
    pub fn center(&self) -> &Rat {
        self.wall.center().expect("Gieseker wall is a semicircle")
    }

    pub fn radius_sq(&self) -> &Rat {
        self.wall.radius_sq().expect("Gieseker wall is a semicircle")
    }

    pub fn x_plus(&self) -> QuadVal {
        self.wall.x_plus().expect("Gieseker wall is a semicircle")
    }
}

/// Rejects everything except positive-height characters.
pub(crate) fn require_positive_height(xi: &ChernChar) -> Result<()> {
    match classify(xi)?.kind {
        Stability::PositiveHeight => Ok(()),
        Stability::HeightZero => Err(Error::HeightZeroInput),
        Stability::NotSemistable => Err(Error::NotSemistableInput),
        Stability::Exceptional | Stability::SemiExceptional => Err(Error::ExceptionalInput),
    }
}

/// The largest wall destabilizing a positive-height character.
pub fn gieseker_wall(xi: &ChernChar) -> Result<GiesekerReport> {
    require_positive_height(xi)?;
    let special = special_five_shift(xi)?.is_some();
    let decomposition = if special {
        curve_decomposition(xi)?.0
    } else {
        extremal_triple(xi)?
    };
    let destabilizer = decomposition.sub().clone();
    let wall = potential_wall(&destabilizer, xi)?;
    let Wall::Semicircle { radius_sq, .. } = &wall else {
        return Err(Error::EmptyWall(Box::new(xi.clone())));
    };
    let x_plus = wall.x_plus().expect("semicircle");

    let quotient = decomposition.quotient();
    let quotient_stable = if quotient.rank().is_zero() {
        quotient.c1().is_positive()
    } else {
        classify(quotient)?.is_stable()
    };
    let (mu_sub, _) = destabilizer.invariants()?;
    let checks = WallChecks {
        quotient_stable: CheckStatus::from_bool(quotient_stable),
        hom_vanishing: CheckStatus::Assumed,
        beats_rank_bound: CheckStatus::from_bool(*radius_sq >= rank_bound_radius_sq(xi)?),
        no_small_denominator: CheckStatus::from_bool(x_plus > farey_pred(&mu_sub, xi.rank())),
    };
    let certificate = if special {
        Certificate::ProvedSpecial
    } else if xi.rank() <= &Int::from(6) {
        Certificate::ProvedSmallRank
    } else if xi.is_coprime() && checks.all_verified() {
        Certificate::UpperBoundPlusHomAssumption
    } else {
        Certificate::Heuristic
    };
    Ok(GiesekerReport {
        wall,
        destabilizer,
        decomposition,
        certificate,
        checks,
    })
}

/// Budget from `P2WALLS_SEARCH_BUDGET`, or [`DEFAULT_SEARCH_BUDGET`].
pub fn search_budget_from_env() -> usize {
    std::env::var("P2WALLS_SEARCH_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SEARCH_BUDGET)
}

/// [`exclusion_search_with_budget`] with the environment budget.
pub fn exclusion_search(xi: &ChernChar, wall: &Wall, disc_floor: &Rat) -> Result<Vec<ChernChar>> {
    exclusion_search_with_budget(xi, wall, disc_floor, search_budget_from_env())
}

/// Semistable `θ′` of rank `1..=rk ξ` with `x⁺ < μ(θ′) < μ(ξ)` and
/// `Δ(θ′) ≥ disc_floor` whose wall with `ξ` lies left of `μ(ξ)` and is
/// strictly larger than `wall`. Sorted by `(r, c1, ch2)`.
pub fn exclusion_search_with_budget(
    xi: &ChernChar,
    wall: &Wall,
    disc_floor: &Rat,
    budget: usize,
) -> Result<Vec<ChernChar>> {
    let (Some(x_plus), Some(threshold)) = (wall.x_plus(), wall.radius_sq()) else {
        return Err(Error::NotSemicircle);
    };
    let (mu, _) = xi.invariants()?;
    let mut cells = Vec::new();
    let mut rank = Int::one();
    while &rank <= xi.rank() {
        let r = Rat::from_integer(rank.clone());
        // c1 ranges over the open interval (r·x⁺, r·μ).
        let low = QuadVal::plus(
            x_plus.rational_part() * &r,
            x_plus.radicand() * &r * &r,
        );
        let mut c1 = low.floor_int();
        loop {
            let c = Rat::from_integer(c1.clone());
            if c >= &mu * &r {
                break;
            }
            if low < c {
                cells.push((rank.clone(), c1.clone()));
            }
            c1 += 1;
        }
        rank += 1;
    }

    let spent = AtomicUsize::new(0);
    let exhausted = Mutex::new(false);
    let found: Vec<Vec<ChernChar>> = cells
        .par_iter()
        .map(|(rank, c1)| {
            scan_cell(xi, &mu, rank, c1, threshold, disc_floor, budget, &spent).unwrap_or_else(|partial| {
                *exhausted.lock().expect("flag lock") = true;
                partial
            })
        })
        .collect::<Vec<_>>();
    let mut violations: Vec<ChernChar> = found.into_iter().flatten().collect();
    violations.sort_by(|p, q| {
        (p.rank(), p.c1(), p.ch2()).cmp(&(q.rank(), q.c1(), q.ch2()))
    });
    if *exhausted.lock().expect("flag lock") {
        return Err(Error::SearchBudgetExceeded {
            budget,
            partial: violations,
        });
    }
    Ok(violations)
}

/// Scans one `(rk, c1)` cell upward in `Δ`. `Err` carries partial results
/// when the shared budget runs out.
#[allow(clippy::too_many_arguments)]
fn scan_cell(
    xi: &ChernChar,
    mu: &Rat,
    rank: &Int,
    c1: &Int,
    threshold: &Rat,
    disc_floor: &Rat,
    budget: usize,
    spent: &AtomicUsize,
) -> std::result::Result<Vec<ChernChar>, Vec<ChernChar>> {
    let mut found = Vec::new();
    let slope = Rat::new(c1.clone(), rank.clone());
    let Ok(home) = containing_exceptional(&slope) else {
        return Ok(found);
    };
    let Ok(delta_mu) = delta(&slope) else {
        return Ok(found);
    };
    let Ok(lattice) = disc_lattice(rank, c1) else {
        return Ok(found);
    };
    let mut discs = Vec::new();
    // Exceptional and semi-exceptional points below the curve.
    if home.alpha() == &slope && home.disc() >= disc_floor {
        discs.push(home.disc().clone());
    }
    let start = if &delta_mu > disc_floor { delta_mu } else { disc_floor.clone() };
    let mut next = lattice.first_at_least(&start);
    loop {
        let disc = if discs.is_empty() {
            let d = next.clone();
            next = lattice.offset(&next, 1);
            d
        } else {
            discs.remove(0)
        };
        if spent.fetch_add(1, AtomicOrdering::Relaxed) >= budget {
            return Err(found);
        }
        let Ok(theta) = ChernChar::from_invariants(rank.clone(), slope.clone(), disc) else {
            continue;
        };
        match potential_wall(&theta, xi) {
            Ok(Wall::Semicircle { center, radius_sq }) => {
                // Larger Δ(θ′) pushes the center right and shrinks the radius.
                if &center >= mu || &radius_sq <= threshold {
                    break;
                }
                found.push(theta);
            }
            _ => break,
        }
    }
    Ok(found)
}
