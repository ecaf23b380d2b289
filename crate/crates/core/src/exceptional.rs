//! Exceptional slopes and the Drézet–Le Potier curve `δ(μ)`.
//!
//! Exceptional slopes in `[0, 1]` form a binary tree under the mutation
//! product [`dot`], rooted at the pair `(0, 1)`. Each exceptional slope `α`
//! owns the open interval `I_α = (α − x_α, α + x_α)`; these intervals are
//! disjoint and cover every rational, so the tree walk below always lands.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_traits::{One, Signed};

use crate::chern::{hilbert_p, ChernChar};
use crate::error::{Error, Result};
use crate::exactmath::{rat, Int, QuadVal, Rat};

/// Maximum number of mutation steps in [`containing_exceptional`].
pub const TREE_DEPTH_LIMIT: usize = 64;

const CACHE_LIMIT: usize = 1 << 16;

/// An exceptional slope with its rank, discriminant and interval half-width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcSlope {
    alpha: Rat,
    rank: Int,
    disc: Rat,
    half_width: QuadVal,
}

/// Invariants of the exceptional bundle of slope `alpha`.
///
/// Membership of `alpha` in the exceptional set is not checked; the rank is
/// the reduced denominator and the rest follows from it.
pub fn exc_slope(alpha: &Rat) -> ExcSlope {
    let rank = alpha.denom().clone();
    let r = Rat::from_integer(rank.clone());
    let disc = (Rat::one() - (&r * &r).recip()) * rat(1, 2);
    // x = (3 − √(5 + 8Δ))/2 = 3/2 − √((5 + 8Δ)/4)
    let radicand = (Rat::from_integer(Int::from(5)) + Rat::from_integer(Int::from(8)) * &disc) * rat(1, 4);
    let half_width = QuadVal::minus(rat(3, 2), radicand);
    ExcSlope {
        alpha: alpha.clone(),
        rank,
        disc,
        half_width,
    }
}

impl ExcSlope {
    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn rank(&self) -> &Int {
        &self.rank
    }

    pub fn disc(&self) -> &Rat {
        &self.disc
    }

    pub fn half_width(&self) -> &QuadVal {
        &self.half_width
    }

    /// Endpoints of `I_α`.
    pub fn interval(&self) -> (QuadVal, QuadVal) {
        let left = self.half_width.neg().shift(&self.alpha);
        let right = self.half_width.shift(&self.alpha);
        (left, right)
    }

    /// Strict membership `μ ∈ I_α`.
    pub fn contains(&self, mu: &Rat) -> bool {
        let (left, right) = self.interval();
        left < *mu && right > *mu
    }

    /// Character of the exceptional bundle `E_α`.
    pub fn character(&self) -> ChernChar {
        ChernChar::from_invariants(self.rank.clone(), self.alpha.clone(), self.disc.clone())
            .expect("exceptional invariants are integral")
    }

    fn shifted(&self, n: &Int) -> ExcSlope {
        ExcSlope {
            alpha: &self.alpha + Rat::from_integer(n.clone()),
            rank: self.rank.clone(),
            disc: self.disc.clone(),
            half_width: self.half_width.clone(),
        }
    }
}

/// Mutation product of two adjacent exceptional slopes `α < β`:
/// `α.β = (α + β)/2 + (Δ_β − Δ_α)/(3 + α − β)`.
pub fn dot(alpha: &ExcSlope, beta: &ExcSlope) -> ExcSlope {
    let three = Rat::from_integer(Int::from(3));
    let slope = (&alpha.alpha + &beta.alpha) * rat(1, 2)
        + (&beta.disc - &alpha.disc) / (three + &alpha.alpha - &beta.alpha);
    exc_slope(&slope)
}

static CACHE: LazyLock<RwLock<HashMap<Rat, ExcSlope>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// The exceptional slope `α` with `μ ∈ I_α` (or `α = μ`).
pub fn containing_exceptional(mu: &Rat) -> Result<ExcSlope> {
    let n = mu.floor().to_integer();
    let frac = mu - Rat::from_integer(n.clone());
    if let Some(hit) = CACHE.read().ok().and_then(|c| c.get(&frac).cloned()) {
        return Ok(hit.shifted(&n));
    }
    let found = walk_tree(&frac)?;
    if let Ok(mut cache) = CACHE.write() {
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(frac, found.clone());
    }
    Ok(found.shifted(&n))
}

fn walk_tree(frac: &Rat) -> Result<ExcSlope> {
    let mut lo = exc_slope(&Rat::from_integer(Int::from(0)));
    let mut hi = exc_slope(&Rat::one());
    if lo.alpha == *frac || lo.contains(frac) {
        return Ok(lo);
    }
    if hi.contains(frac) {
        return Ok(hi);
    }
    for _ in 0..TREE_DEPTH_LIMIT {
        let mid = dot(&lo, &hi);
        if mid.alpha == *frac || mid.contains(frac) {
            return Ok(mid);
        }
        if *frac < mid.alpha {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::TreeDepthExceeded(TREE_DEPTH_LIMIT))
}

pub fn is_exceptional_slope(mu: &Rat) -> Result<bool> {
    Ok(containing_exceptional(mu)?.alpha == *mu)
}

/// The Drézet–Le Potier curve: `δ(μ) = P(−|μ − α|) − Δ_α` for `μ ∈ I_α`.
pub fn delta(mu: &Rat) -> Result<Rat> {
    let home = containing_exceptional(mu)?;
    Ok(hilbert_p(&-(mu - &home.alpha).abs()) - &home.disc)
}

/// All exceptional slopes in `[0, 1]` of rank at most `max_rank`, sorted.
pub fn exceptional_slopes_up_to(max_rank: &Int) -> Vec<ExcSlope> {
    fn descend(lo: &ExcSlope, hi: &ExcSlope, max_rank: &Int, out: &mut Vec<ExcSlope>) {
        let mid = dot(lo, hi);
        // Ranks strictly grow along the tree, so pruning here is safe.
        if &mid.rank > max_rank {
            return;
        }
        descend(lo, &mid, max_rank, out);
        out.push(mid.clone());
        descend(&mid, hi, max_rank, out);
    }
    let lo = exc_slope(&Rat::from_integer(Int::from(0)));
    let hi = exc_slope(&Rat::one());
    let mut out = vec![lo.clone()];
    descend(&lo, &hi, max_rank, &mut out);
    out.push(hi);
    out
}
