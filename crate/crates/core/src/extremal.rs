//! Stability classification and the decompositions `ξ′ → ξ → ξ″` that
//! produce the destabilizing walls.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::chern::{disc_lattice, euler_pair, hilbert_p, ChernChar};
use crate::error::{Condition, Error, Result};
use crate::exactmath::{farey_pred, fmt_rat, rat, Int, Rat};
use crate::exceptional::{containing_exceptional, delta};

/// Lattice steps [`minimal_triple`] will take before giving up.
pub const MINIMAL_SCAN_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stability {
    NotSemistable,
    Exceptional,
    SemiExceptional,
    HeightZero,
    PositiveHeight,
}

impl Stability {
    pub fn as_str(self) -> &'static str {
        match self {
            Stability::NotSemistable => "not-semistable",
            Stability::Exceptional => "exceptional",
            Stability::SemiExceptional => "semi-exceptional",
            Stability::HeightZero => "height-zero",
            Stability::PositiveHeight => "positive-height",
        }
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classification of a positive-rank character with its `(μ, Δ, δ(μ))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: Stability,
    pub slope: Rat,
    pub disc: Rat,
    pub delta: Rat,
}

impl Classification {
    /// Stable characters: exceptional ones and everything on or above `δ`.
    pub fn is_stable(&self) -> bool {
        matches!(
            self.kind,
            Stability::Exceptional | Stability::HeightZero | Stability::PositiveHeight
        )
    }

    pub fn is_semistable(&self) -> bool {
        self.kind != Stability::NotSemistable
    }
}

pub fn classify(xi: &ChernChar) -> Result<Classification> {
    let (mu, disc) = xi.invariants()?;
    let home = containing_exceptional(&mu)?;
    let delta_mu = delta(&mu)?;
    let kind = if home.alpha() == &mu && home.disc() == &disc {
        if home.rank() == xi.rank() {
            Stability::Exceptional
        } else {
            Stability::SemiExceptional
        }
    } else if disc > delta_mu {
        Stability::PositiveHeight
    } else if disc == delta_mu {
        Stability::HeightZero
    } else {
        Stability::NotSemistable
    };
    Ok(Classification {
        kind,
        slope: mu,
        disc,
        delta: delta_mu,
    })
}

/// Stability of a possibly torsion quotient. Rank zero is stable iff `c1 > 0`.
fn quotient_stable(xi: &ChernChar) -> Result<bool> {
    if xi.rank().is_zero() {
        return Ok(xi.c1().is_positive());
    }
    if xi.rank().is_negative() {
        return Ok(false);
    }
    Ok(classify(xi)?.is_stable())
}

/// Smallest discriminant `Δ′` of a stable character of slope `mu` and rank at
/// most `rmax`, with the smallest rank `r′` realizing it.
pub fn min_stable_disc(mu: &Rat, rmax: &Int) -> Result<(Rat, Int)> {
    let no_stable = || Error::NoStableCharacter {
        slope: fmt_rat(mu),
        max_rank: rmax.to_string(),
    };
    let base_rank = mu.denom().clone();
    if &base_rank > rmax {
        return Err(no_stable());
    }
    let home = containing_exceptional(mu)?;
    let mut best: Option<(Rat, Int)> = None;
    if home.alpha() == mu {
        best = Some((home.disc().clone(), home.rank().clone()));
    }
    let delta_mu = delta(mu)?;
    let mut r2 = base_rank.clone();
    while &r2 <= rmax {
        let c1 = (mu * Rat::from_integer(r2.clone())).to_integer();
        let candidate = disc_lattice(&r2, &c1)?.first_at_least(&delta_mu);
        // Ranks increase, so only a strictly smaller value replaces the best.
        if best.as_ref().is_none_or(|(d, _)| candidate < *d) {
            best = Some((candidate, r2.clone()));
        }
        r2 += &base_rank;
    }
    best.ok_or_else(no_stable)
}

/// The triple `ξ′ → ξ → ξ″` with `ξ = ξ′ + ξ″` and its flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    sub: ChernChar,
    whole: ChernChar,
    quotient: ChernChar,
    failing: Vec<Condition>,
    extremal: bool,
    minimal: bool,
}

impl Decomposition {
    /// Builds `(sub, whole, whole − sub)` and evaluates D1–D5 and minimality.
    pub fn new(sub: ChernChar, whole: ChernChar, extremal: bool) -> Result<Self> {
        let quotient = &whole - &sub;
        let failing = failing_conditions(&sub, &whole, &quotient)?;
        let minimal = failing.is_empty() && !predecessor_admissible(&sub, &whole)?;
        Ok(Decomposition {
            sub,
            whole,
            quotient,
            failing,
            extremal,
            minimal,
        })
    }

    /// `ξ′`
    pub fn sub(&self) -> &ChernChar {
        &self.sub
    }

    /// `ξ`
    pub fn whole(&self) -> &ChernChar {
        &self.whole
    }

    /// `ξ″`
    pub fn quotient(&self) -> &ChernChar {
        &self.quotient
    }

    pub fn failing(&self) -> &[Condition] {
        &self.failing
    }

    pub fn is_admissible(&self) -> bool {
        self.failing.is_empty()
    }

    pub fn is_extremal(&self) -> bool {
        self.extremal
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_torsion(&self) -> bool {
        self.quotient.rank().is_zero()
    }

    pub fn is_coprime(&self) -> bool {
        self.whole.is_coprime()
    }

    /// `χ(ξ′, ξ″)`
    pub fn chi(&self) -> Rat {
        euler_pair(&self.sub, &self.quotient)
    }

    /// Twist all three characters by `O(n)`.
    pub fn twist(&self, n: &Int) -> Result<Self> {
        Decomposition::new(self.sub.twist(n.clone()), self.whole.twist(n.clone()), self.extremal)
    }

    /// Same `ξ′`, with `ξ` (and so `ξ″`) modified `k` times.
    pub fn elem_mod(&self, k: u64) -> Result<Self> {
        Decomposition::new(self.sub.clone(), self.whole.elem_mod(k)?, self.extremal)
    }
}

fn failing_conditions(sub: &ChernChar, whole: &ChernChar, quotient: &ChernChar) -> Result<Vec<Condition>> {
    let mut failing = Vec::new();
    let rank_ok = sub.rank().is_positive() && sub.rank() <= whole.rank();
    if !rank_ok {
        failing.push(Condition::D3);
    }
    if !sub.rank().is_positive() || !classify(sub)?.is_semistable() {
        failing.push(Condition::D1);
    }
    if !quotient_stable(quotient)? {
        failing.push(Condition::D2);
    }
    if sub.rank().is_positive() && whole.rank().is_positive() {
        if sub.slope_unchecked() >= whole.slope_unchecked() {
            failing.push(Condition::D4);
        }
        if quotient.rank().is_positive()
            && quotient.slope_unchecked() - sub.slope_unchecked() >= Rat::from_integer(Int::from(3))
        {
            failing.push(Condition::D5);
        }
    } else {
        failing.push(Condition::D4);
    }
    failing.sort();
    Ok(failing)
}

/// Whether `ξ` one lattice step lower is still stable with an admissible
/// decomposition through the same `ξ′`.
fn predecessor_admissible(sub: &ChernChar, whole: &ChernChar) -> Result<bool> {
    let lower = ChernChar::new(
        whole.rank().clone(),
        whole.c1().clone(),
        whole.ch2() + Rat::one(),
    )?;
    if !classify(&lower)?.is_stable() {
        return Ok(false);
    }
    let quotient = &lower - sub;
    Ok(failing_conditions(sub, &lower, &quotient)?.is_empty())
}

/// The destabilizing subobject of the extremal triple; depends on `(r, μ)` only.
pub fn extremal_sub(r: &Int, mu: &Rat) -> Result<ChernChar> {
    let mu_sub = farey_pred(mu, r);
    let (disc_sub, rank_sub) = min_stable_disc(&mu_sub, r)?;
    ChernChar::from_invariants(rank_sub, mu_sub, disc_sub)
}

/// The extremal decomposition, flags evaluated, without failing on D1–D5.
pub fn extremal_decomposition(xi: &ChernChar) -> Result<Decomposition> {
    let (mu, _) = xi.invariants()?;
    let sub = extremal_sub(xi.rank(), &mu)?;
    Decomposition::new(sub, xi.clone(), true)
}

/// The unique extremal triple of `ξ`.
pub fn extremal_triple(xi: &ChernChar) -> Result<Decomposition> {
    let decomposition = extremal_decomposition(xi)?;
    if !decomposition.is_admissible() {
        return Err(Error::AdmissibilityFailed(decomposition.failing.clone()));
    }
    Ok(decomposition)
}

/// The admissible extremal decomposition of rank `r` and slope `mu` with the
/// smallest possible discriminant of `ξ`.
pub fn minimal_triple(r: &Int, mu: &Rat) -> Result<Decomposition> {
    if !r.is_positive() {
        return Err(Error::NonPositiveRank);
    }
    let c1 = mu * Rat::from_integer(r.clone());
    if !c1.is_integer() {
        return Err(Error::NotIntegral(format!("{} * {} is not an integer", r, fmt_rat(mu))));
    }
    let c1 = c1.to_integer();
    let sub = extremal_sub(r, mu)?;
    let home = containing_exceptional(mu)?;
    let lattice = disc_lattice(r, &c1)?;
    let mut candidates: Vec<Rat> = Vec::new();
    if home.alpha() == mu && home.rank() == r {
        candidates.push(home.disc().clone());
    }
    let start = lattice.first_at_least(&delta(mu)?);
    for step in 0..MINIMAL_SCAN_LIMIT {
        let disc = if step < candidates.len() {
            candidates[step].clone()
        } else {
            lattice.offset(&start, (step - candidates.len()) as i64)
        };
        let xi = ChernChar::from_invariants(r.clone(), mu.clone(), disc)?;
        if !classify(&xi)?.is_stable() {
            continue;
        }
        let decomposition = Decomposition::new(sub.clone(), xi, true)?;
        if decomposition.is_admissible() {
            return Ok(decomposition);
        }
    }
    Err(Error::NoAdmissible(MINIMAL_SCAN_LIMIT))
}

/// Starting from [`minimal_triple`], modify `ξ` until `χ(ξ′, ξ″) ≤ 0`.
pub fn chi_chain(r: &Int, mu: &Rat) -> Result<(Decomposition, Int)> {
    let mut decomposition = minimal_triple(r, mu)?;
    let chi = decomposition.chi();
    if chi.is_positive() {
        // Each modification lowers χ(ξ′, ξ″) by rk ξ′.
        let rank_sub = Rat::from_integer(decomposition.sub().rank().clone());
        let steps = (chi / rank_sub).ceil().to_integer();
        let steps: u64 = steps.try_into().expect("step count fits in u64");
        decomposition = decomposition.elem_mod(steps)?;
    }
    let chi = decomposition.chi().to_integer();
    Ok((decomposition, chi))
}

/// Which decomposition carries the curve class of the ample cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    Standard,
    Sporadic2,
    Special5,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::Standard => "standard",
            CurveKind::Sporadic2 => "sporadic-2",
            CurveKind::Special5 => "special-5",
        }
    }
}

/// Twist of `(6, 1/3, 13/18)`, returning the shift `n`.
pub fn special_five_shift(xi: &ChernChar) -> Result<Option<Int>> {
    normalized_match(xi, |r, frac, disc| {
        r == &Int::from(6) && frac == &rat(1, 3) && disc == &rat(13, 18)
    })
}

/// Twist of `(r, 1/r, P(−1/r) + 1/r)` with `2 ≤ r ≤ 6`, returning the shift.
pub fn sporadic_shift(xi: &ChernChar) -> Result<Option<Int>> {
    normalized_match(xi, |r, frac, disc| {
        if r < &Int::from(2) || r > &Int::from(6) {
            return false;
        }
        let inv = Rat::from_integer(r.clone()).recip();
        frac == &inv && disc == &(hilbert_p(&-inv.clone()) + &inv)
    })
}

fn normalized_match(
    xi: &ChernChar,
    test: impl Fn(&Int, &Rat, &Rat) -> bool,
) -> Result<Option<Int>> {
    let (mu, disc) = xi.invariants()?;
    let n = mu.floor().to_integer();
    let frac = &mu - Rat::from_integer(n.clone());
    Ok(test(xi.rank(), &frac, &disc).then_some(n))
}

/// The decomposition whose `ξ′`-side curve bounds the ample cone.
pub fn curve_decomposition(xi: &ChernChar) -> Result<(Decomposition, CurveKind)> {
    if let Some(n) = special_five_shift(xi)? {
        let sub = ChernChar::new(5, 0, Rat::zero())?.twist(n);
        return Ok((Decomposition::new(sub, xi.clone(), false)?, CurveKind::Special5));
    }
    let extremal = extremal_triple(xi)?;
    if !extremal.chi().is_positive() {
        return Ok((extremal, CurveKind::Standard));
    }
    match sporadic_shift(xi)? {
        Some(n) => {
            let sub = ChernChar::new(2, 0, Rat::zero())?.twist(n);
            Ok((Decomposition::new(sub, xi.clone(), false)?, CurveKind::Sporadic2))
        }
        None => Err(Error::UnexpectedPositiveChi(Box::new(xi.clone()))),
    }
}
