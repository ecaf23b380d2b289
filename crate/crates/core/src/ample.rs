//! Boundary rays of the ample cone.
//!
//! Divisor classes are represented by characters `ζ` with `(ξ, ζ) = 0`, where
//! `(ξ, ζ) = χ(ξ ⊗ ζ)` is the symmetric pairing. The cone is spanned by the
//! rank-zero class `u₁` and a negative-rank class orthogonal to the Gieseker
//! destabilizer.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chern::{sym_pair_functional, ChernChar};
use crate::error::{Error, Result};
use crate::exactmath::{rat, Int, Rat};
use crate::extremal::{classify, curve_decomposition, CurveKind, Decomposition, Stability};
use crate::walls::{gieseker_wall, require_positive_height, GiesekerReport};

/// `(0, −r, 3r/2 + c1)`, the rank-zero class orthogonal to `ξ` with `c1 = −r`.
pub fn u1(xi: &ChernChar) -> Result<ChernChar> {
    require_positive_height(xi)?;
    Ok(u1_unchecked(xi))
}

fn u1_unchecked(xi: &ChernChar) -> ChernChar {
    let r = Rat::from_integer(xi.rank().clone());
    let ch2 = r * rat(3, 2) + Rat::from_integer(xi.c1().clone());
    ChernChar::new(0, -xi.rank().clone(), ch2).expect("u1 is integral")
}

/// The class orthogonal to both `ξ` and `sub`, primitive in `K(P²)` with
/// negative rank. `None` when `ξ` and `sub` have proportional functionals.
pub fn orthogonal_ray(xi: &ChernChar, sub: &ChernChar) -> Option<ChernChar> {
    let [a0, a1, a2] = sym_pair_functional(xi);
    let [b0, b1, b2] = sym_pair_functional(sub);
    let cross = [
        &a1 * &b2 - &a2 * &b1,
        &a2 * &b0 - &a0 * &b2,
        &a0 * &b1 - &a1 * &b0,
    ];
    if cross.iter().all(Zero::is_zero) {
        return None;
    }
    Some(primitive(&cross))
}

/// Scales `(r, c1, ch2)` to the primitive integral character on its ray,
/// working in the basis `(r, c1, χ)` of `K(P²) ≅ ℤ³`; rank made negative
/// (or, at rank zero, `c1` negative).
fn primitive(v: &[Rat; 3]) -> ChernChar {
    let [r, c1, ch2] = v;
    let chi = r + c1 * rat(3, 2) + ch2;
    let coords = [r.clone(), c1.clone(), chi];
    let lcm = coords.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Int> = coords.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    let leading = ints.iter().find(|x| !x.is_zero()).expect("nonzero vector");
    let sign = if leading.is_positive() { -Int::one() } else { Int::one() };
    let scaled: Vec<Int> = ints.iter().map(|x| x / &content * &sign).collect();
    let [r, c1, chi] = [scaled[0].clone(), scaled[1].clone(), scaled[2].clone()];
    let ch2 = Rat::from_integer(chi - &r) - Rat::from_integer(c1.clone()) * rat(3, 2);
    ChernChar::new(r, c1, ch2).expect("integral in the (r, c1, χ) basis")
}

/// Negative-rank edge of the ample cone, orthogonal to `ξ` and its
/// Gieseker destabilizer.
pub fn primary_ray(xi: &ChernChar) -> Result<ChernChar> {
    let report = gieseker_wall(xi)?;
    Ok(orthogonal_ray(xi, &report.destabilizer).expect("destabilizer is independent of ξ"))
}

fn height_data(xi: &ChernChar) -> Result<(Rat, bool)> {
    let class = classify(xi)?;
    match class.kind {
        Stability::NotSemistable => Err(Error::NotSemistableInput),
        Stability::Exceptional | Stability::SemiExceptional => Err(Error::ExceptionalInput),
        Stability::HeightZero | Stability::PositiveHeight => {
            let exceptional = crate::exceptional::is_exceptional_slope(&class.slope)?;
            Ok((class.disc - class.delta, exceptional))
        }
    }
}

/// Whether every sheaf of character `ξ` is locally free.
pub fn singular_locus_empty(xi: &ChernChar) -> Result<bool> {
    let (height, exceptional) = height_data(xi)?;
    let step = Rat::from_integer(xi.rank().clone()).recip();
    Ok(height < step && !exceptional)
}

/// Whether `u₁` spans an edge of the ample cone.
pub fn duy_edge(xi: &ChernChar) -> Result<bool> {
    require_positive_height(xi)?;
    Ok(!singular_locus_empty(xi)?)
}

/// `r²(2Δ − 1) + 1`
pub fn moduli_dim(xi: &ChernChar) -> Result<Int> {
    let (_, disc) = xi.invariants()?;
    let r = Rat::from_integer(xi.rank().clone());
    let dim = &r * &r * (disc * rat(2, 1) - Rat::one()) + Rat::one();
    Ok(dim.to_integer())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpleReport {
    pub xi: ChernChar,
    pub u1_ray: ChernChar,
    pub primary_ray: ChernChar,
    pub gieseker: GiesekerReport,
    pub curve_witness: Decomposition,
    pub curve_kind: CurveKind,
    pub singular_locus_empty: bool,
    pub duy_edge: bool,
    pub moduli_dim: Int,
}

pub fn ample_cone(xi: &ChernChar) -> Result<AmpleReport> {
    let gieseker = gieseker_wall(xi)?;
    let primary_ray = orthogonal_ray(xi, &gieseker.destabilizer).expect("destabilizer is independent of ξ");
    let (curve_witness, curve_kind) = curve_decomposition(xi)?;
    let singular_locus_empty = singular_locus_empty(xi)?;
    Ok(AmpleReport {
        xi: xi.clone(),
        u1_ray: u1_unchecked(xi),
        primary_ray,
        gieseker,
        curve_witness,
        curve_kind,
        singular_locus_empty,
        duy_edge: !singular_locus_empty,
        moduli_dim: moduli_dim(xi)?,
    })
}
