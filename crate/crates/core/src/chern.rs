//! Chern characters on the projective plane.
//!
//! A character is stored as `(r, c1, ch2)` with `r`, `c1` integers and
//! `ch2 ∈ c1²/2 + ℤ`. Slope and discriminant are derived:
//! `μ = c1/r`, `Δ = μ²/2 − ch2/r`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{fmt_rat, rat, Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernChar {
    r: Int,
    c1: Int,
    ch2: Rat,
}

/// Hilbert polynomial of the structure sheaf, `P(m) = (m² + 3m + 2)/2`.
pub fn hilbert_p(m: &Rat) -> Rat {
    (m * m + Rat::from_integer(Int::from(3)) * m + Rat::from_integer(Int::from(2))) * rat(1, 2)
}

fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

impl ChernChar {
    pub fn new(r: impl Into<Int>, c1: impl Into<Int>, ch2: Rat) -> Result<Self> {
        let (r, c1) = (r.into(), c1.into());
        let c1_sq_half = Rat::new(&c1 * &c1, Int::from(2));
        if !is_integer(&(&ch2 - &c1_sq_half)) {
            return Err(Error::NotIntegral(format!(
                "ch2 - c1^2/2 = {} is not an integer",
                fmt_rat(&(&ch2 - c1_sq_half))
            )));
        }
        if r.is_zero() && c1.is_zero() && ch2.is_zero() {
            return Err(Error::ZeroCharacter);
        }
        Ok(ChernChar { r, c1, ch2 })
    }

    /// The character with rank `r`, slope `mu` and discriminant `delta`.
    pub fn from_invariants(r: impl Into<Int>, mu: Rat, delta: Rat) -> Result<Self> {
        let r = r.into();
        if !r.is_positive() {
            return Err(Error::NonPositiveRank);
        }
        let r_rat = Rat::from_integer(r.clone());
        let c1 = &r_rat * &mu;
        if !is_integer(&c1) {
            return Err(Error::NotIntegral(format!(
                "r*mu = {} is not an integer",
                fmt_rat(&c1)
            )));
        }
        let ch2 = r_rat * (&mu * &mu * rat(1, 2) - delta);
        ChernChar::new(r, c1.to_integer(), ch2)
    }

    /// Structure sheaf `O`.
    pub fn structure_sheaf() -> Self {
        ChernChar {
            r: Int::one(),
            c1: Int::zero(),
            ch2: Rat::zero(),
        }
    }

    pub fn rank(&self) -> &Int {
        &self.r
    }

    pub fn c1(&self) -> &Int {
        &self.c1
    }

    pub fn ch2(&self) -> &Rat {
        &self.ch2
    }

    /// `(μ, Δ)` for positive rank.
    pub fn invariants(&self) -> Result<(Rat, Rat)> {
        if !self.r.is_positive() {
            return Err(Error::NonPositiveRank);
        }
        Ok((self.slope_unchecked(), self.discriminant_unchecked()))
    }

    /// Slope for any nonzero rank, including negative.
    pub(crate) fn slope_unchecked(&self) -> Rat {
        Rat::new(self.c1.clone(), self.r.clone())
    }

    pub(crate) fn discriminant_unchecked(&self) -> Rat {
        let mu = self.slope_unchecked();
        &mu * &mu * rat(1, 2) - &self.ch2 / Rat::from_integer(self.r.clone())
    }

    /// Slope `μ = c1/r`, or `None` for rank zero.
    pub fn slope(&self) -> Option<Rat> {
        (!self.r.is_zero()).then(|| self.slope_unchecked())
    }

    /// Discriminant `Δ`, or `None` for rank zero.
    pub fn discriminant(&self) -> Option<Rat> {
        (!self.r.is_zero()).then(|| self.discriminant_unchecked())
    }

    /// `c2 = c1²/2 − ch2`.
    pub fn c2(&self) -> Int {
        (Rat::new(&self.c1 * &self.c1, Int::from(2)) - &self.ch2).to_integer()
    }

    /// `χ = r + (3/2)c1 + ch2`.
    pub fn euler_char(&self) -> Rat {
        Rat::from_integer(self.r.clone())
            + Rat::new(Int::from(3) * &self.c1, Int::from(2))
            + &self.ch2
    }

    pub(crate) fn dual(&self) -> ChernChar {
        ChernChar {
            r: self.r.clone(),
            c1: -&self.c1,
            ch2: self.ch2.clone(),
        }
    }

    /// Character of a tensor product:
    /// `(r₁,c₁,d₁)·(r₂,c₂,d₂) = (r₁r₂, r₁c₂ + r₂c₁, r₁d₂ + c₁c₂ + r₂d₁)`.
    ///
    /// The product of two nonzero characters can vanish only for two
    /// rank-zero, `c1 = 0` inputs; callers only take its Euler characteristic.
    pub fn product(&self, other: &ChernChar) -> (Int, Int, Rat) {
        let r = &self.r * &other.r;
        let c1 = &self.r * &other.c1 + &other.r * &self.c1;
        let ch2 = Rat::from_integer(self.r.clone()) * &other.ch2
            + Rat::from_integer(&self.c1 * &other.c1)
            + Rat::from_integer(other.r.clone()) * &self.ch2;
        (r, c1, ch2)
    }

    /// Shift by `O(n)`: slope moves by `n`, discriminant is unchanged.
    pub fn twist(&self, n: impl Into<Int>) -> ChernChar {
        let n = n.into();
        let r_rat = Rat::from_integer(self.r.clone());
        let n_rat = Rat::from_integer(n.clone());
        ChernChar {
            c1: &self.c1 + &n * &self.r,
            ch2: &self.ch2 + &n_rat * Rat::from_integer(self.c1.clone()) + &n_rat * &n_rat * r_rat * rat(1, 2),
            r: self.r.clone(),
        }
    }

    /// `k` elementary modifications: Δ grows by `k/r`, χ drops by `k`.
    pub fn elem_mod(&self, k: u64) -> Result<ChernChar> {
        if !self.r.is_positive() {
            return Err(Error::NonPositiveRank);
        }
        Ok(ChernChar {
            r: self.r.clone(),
            c1: self.c1.clone(),
            ch2: &self.ch2 - Rat::from_integer(Int::from(k)),
        })
    }

    /// Integer `n` with `μ − n ∈ (0, 1]`, i.e. `twist(-n)` normalizes the slope.
    pub fn normalizing_shift(&self) -> Result<Int> {
        let (mu, _) = self.invariants()?;
        Ok(mu.ceil().to_integer() - 1)
    }

    pub fn scale(&self, k: impl Into<Int>) -> ChernChar {
        let k = k.into();
        ChernChar {
            r: &self.r * &k,
            c1: &self.c1 * &k,
            ch2: &self.ch2 * Rat::from_integer(k),
        }
    }

    /// `(r, c1, ch2)` as three rationals.
    pub fn coords(&self) -> [Rat; 3] {
        [
            Rat::from_integer(self.r.clone()),
            Rat::from_integer(self.c1.clone()),
            self.ch2.clone(),
        ]
    }

    /// Invariant form `r:μ:Δ`; falls back to `r,c1,ch2` for rank ≤ 0.
    pub fn to_invariant_string(&self) -> String {
        match self.invariants() {
            Ok((mu, delta)) => format!("{}:{}:{}", self.r, fmt_rat(&mu), fmt_rat(&delta)),
            Err(_) => self.to_string(),
        }
    }

    /// `rk(ξ)` and `c1(ξ)` coprime.
    pub fn is_coprime(&self) -> bool {
        self.r.gcd(&self.c1).is_one()
    }
}

impl fmt::Display for ChernChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.r, self.c1, fmt_rat(&self.ch2))
    }
}

// Sums and differences of lattice vectors stay integral; only the zero
// vector is excluded, and that is the caller's concern when subtracting
// equal characters.
impl Add for &ChernChar {
    type Output = ChernChar;
    fn add(self, rhs: &ChernChar) -> ChernChar {
        ChernChar {
            r: &self.r + &rhs.r,
            c1: &self.c1 + &rhs.c1,
            ch2: &self.ch2 + &rhs.ch2,
        }
    }
}

impl Sub for &ChernChar {
    type Output = ChernChar;
    fn sub(self, rhs: &ChernChar) -> ChernChar {
        ChernChar {
            r: &self.r - &rhs.r,
            c1: &self.c1 - &rhs.c1,
            ch2: &self.ch2 - &rhs.ch2,
        }
    }
}

impl Neg for &ChernChar {
    type Output = ChernChar;
    fn neg(self) -> ChernChar {
        ChernChar {
            r: -&self.r,
            c1: -&self.c1,
            ch2: -&self.ch2,
        }
    }
}

fn euler_of(prod: (Int, Int, Rat)) -> Rat {
    let (r, c1, ch2) = prod;
    Rat::from_integer(r) + Rat::new(Int::from(3) * c1, Int::from(2)) + ch2
}

/// `χ(ξ, ζ) = χ(ξ* ⊗ ζ)`.
pub fn euler_pair(xi: &ChernChar, zeta: &ChernChar) -> Rat {
    euler_of(xi.dual().product(zeta))
}

/// Symmetric form `(ξ, ζ) = χ(ξ ⊗ ζ)`.
pub fn sym_pair(xi: &ChernChar, zeta: &ChernChar) -> Rat {
    euler_of(xi.product(zeta))
}

/// Coefficients `L` with `sym_pair(ξ, ζ) = L · (r, c1, ch2)(ζ)`.
pub(crate) fn sym_pair_functional(xi: &ChernChar) -> [Rat; 3] {
    let r = Rat::from_integer(xi.r.clone());
    let c1 = Rat::from_integer(xi.c1.clone());
    [xi.euler_char(), &r * rat(3, 2) + c1, r]
}

/// Discriminants of integral characters with fixed `(r, c1)`: the coset
/// `base + (1/r)ℤ` with `base ∈ [0, 1/r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscLattice {
    base: Rat,
    step: Rat,
}

/// The discriminant lattice for rank `r > 0` and first Chern class `c1`.
pub fn disc_lattice(r: &Int, c1: &Int) -> Result<DiscLattice> {
    if !r.is_positive() {
        return Err(Error::NonPositiveRank);
    }
    let r_rat = Rat::from_integer(r.clone());
    let step = r_rat.recip();
    // Δ at ch2 = c1²/2.
    let offset = Rat::new(c1 * c1, Int::from(2) * r) * (&step - Rat::one());
    let k = (&offset * &r_rat).floor();
    let base = offset - k * &step;
    Ok(DiscLattice { base, step })
}

impl DiscLattice {
    pub fn base(&self) -> &Rat {
        &self.base
    }

    pub fn step(&self) -> &Rat {
        &self.step
    }

    pub fn contains(&self, x: &Rat) -> bool {
        ((x - &self.base) / &self.step).denom().is_one()
    }

    /// Smallest lattice element `≥ x`.
    pub fn first_at_least(&self, x: &Rat) -> Rat {
        let k = ((x - &self.base) / &self.step).ceil();
        &self.base + k * &self.step
    }

    /// Smallest lattice element `> x`.
    pub fn first_above(&self, x: &Rat) -> Rat {
        let k = ((x - &self.base) / &self.step).floor() + Rat::one();
        &self.base + k * &self.step
    }

    /// The element `k` steps above `x` (which must lie on the lattice).
    pub fn offset(&self, x: &Rat, k: i64) -> Rat {
        x + Rat::from_integer(Int::from(k)) * &self.step
    }
}
