//! Exact rationals, numbers of the form `a ± √q`, and Farey neighbours.
//!
//! Nothing in here touches floating point except the display helpers, which
//! round an exact value at the very end.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision integer.
pub type Int = BigInt;

/// Reduced arbitrary precision rational with positive denominator.
pub type Rat = BigRational;

/// Builds `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Parses `"p"`, `"p/q"` or `"-p/q"` (surrounding whitespace allowed).
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: Int = num.parse().ok()?;
    let den: Int = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

/// Renders `p/q`, or just `p` for integers.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal rendering of a rational rounded half away from zero.
pub fn rat_decimal(x: &Rat, places: usize) -> String {
    QuadVal::from(x.clone()).to_decimal(places)
}

fn sign_of(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn ord_of(sign: i8) -> Ordering {
    sign.cmp(&0)
}

/// Sign of `u + b·√w` for `w ≥ 0`, squaring at most once.
fn sign_linear(u: &Rat, b: &Rat, w: &Rat) -> i8 {
    let su = sign_of(u);
    if w.is_zero() || b.is_zero() {
        return su;
    }
    let sb = sign_of(b);
    if su == 0 || su == sb {
        return sb;
    }
    // Opposite signs: the larger magnitude wins.
    match (u * u).cmp(&(b * b * w)) {
        Ordering::Greater => su,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

/// The real number `a + √q` or `a − √q`, with `q ≥ 0` rational.
///
/// Wall endpoints `s ± ρ` and the half-widths `x_α` of the Drézet–Le Potier
/// intervals all have this shape. Ordering is decided exactly:
///
/// Comparing `x = a + σ√q` with `y = c + τ√p` reduces to the sign of
/// `u + σ√q − τ√p` with `u = a − c`. Write `A = u + σ√q` and `B = τ√p`.
///
/// | sign A | sign B | result                                  |
/// |--------|--------|-----------------------------------------|
/// | sA ≠ sB         || sign(sA − sB)                           |
/// | 0      | 0      | equal                                   |
/// | +      | +      | sign(A² − B²) = sign(u²+q−p + 2uσ√q)    |
/// | −      | −      | −sign(A² − B²)                          |
///
/// `sign A` and the final `sign(A² − B²)` each cost one squaring, so at most
/// two squarings happen per comparison.
#[derive(Clone, Debug)]
pub struct QuadVal {
    a: Rat,
    q: Rat,
    negative_root: bool,
}

impl QuadVal {
    /// `a + √q`. Panics if `q < 0`.
    pub fn plus(a: Rat, q: Rat) -> Self {
        assert!(!q.is_negative(), "negative radicand");
        let negative_root = false;
        QuadVal { a, q, negative_root }
    }

    /// `a − √q`. Panics if `q < 0`.
    pub fn minus(a: Rat, q: Rat) -> Self {
        assert!(!q.is_negative(), "negative radicand");
        let negative_root = !q.is_zero();
        QuadVal { a, q, negative_root }
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn radicand(&self) -> &Rat {
        &self.q
    }

    /// `+1` for `a + √q`, `-1` for `a − √q`.
    pub fn root_sign(&self) -> i8 {
        if self.negative_root {
            -1
        } else {
            1
        }
    }

    fn signed_one(&self) -> Rat {
        if self.negative_root {
            -Rat::one()
        } else {
            Rat::one()
        }
    }

    /// Returns the value as a rational when `q` is a perfect square.
    pub fn to_rat(&self) -> Option<Rat> {
        let root = rat_sqrt(&self.q)?;
        Some(&self.a + self.signed_one() * root)
    }

    pub fn shift(&self, by: &Rat) -> Self {
        QuadVal {
            a: &self.a + by,
            q: self.q.clone(),
            negative_root: self.negative_root,
        }
    }

    pub fn neg(&self) -> Self {
        QuadVal {
            a: -&self.a,
            q: self.q.clone(),
            negative_root: !self.negative_root && !self.q.is_zero(),
        }
    }

    /// Sign of the denoted number.
    pub fn signum(&self) -> Ordering {
        ord_of(sign_linear(&self.a, &self.signed_one(), &self.q))
    }

    /// Approximation for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let r = self.q.to_f64().unwrap_or(f64::NAN).sqrt();
        if self.negative_root {
            a - r
        } else {
            a + r
        }
    }

    /// Decimal string rounded half away from zero, computed exactly.
    pub fn to_decimal(&self, places: usize) -> String {
        let negative = self.signum() == Ordering::Less;
        let magnitude = if negative { self.neg() } else { self.clone() };
        let scale = Int::from(10u32).pow(places as u32);
        let scale_rat = Rat::from_integer(scale.clone());
        // t = |x|·10^places + 1/2, and the rounded digits are floor(t).
        let t = QuadVal {
            a: &magnitude.a * &scale_rat + rat(1, 2),
            q: &magnitude.q * &scale_rat * &scale_rat,
            negative_root: magnitude.negative_root,
        };
        let n = t.floor_int();
        let digits = n.to_string();
        let body = if places == 0 {
            digits
        } else {
            let padded = format!("{:0>width$}", digits, width = places + 1);
            let (int_part, frac_part) = padded.split_at(padded.len() - places);
            format!("{int_part}.{frac_part}")
        };
        if negative && !n.is_zero() {
            format!("-{body}")
        } else {
            body
        }
    }

    /// Exact `⌊self⌋`.
    pub fn floor_int(&self) -> Int {
        let mut n = self.floor_estimate();
        while *self < Rat::from_integer(n.clone()) {
            n -= 1;
        }
        while *self >= Rat::from_integer(&n + 1) {
            n += 1;
        }
        n
    }

    fn floor_estimate(&self) -> Int {
        // floor(√q) for a rational q is isqrt(floor(q)) up to the final
        // correction loops in the caller.
        let root = self.q.floor().to_integer().sqrt();
        let root = Rat::from_integer(root);
        (&self.a + self.signed_one() * root).floor().to_integer()
    }
}

impl From<Rat> for QuadVal {
    fn from(a: Rat) -> Self {
        QuadVal {
            a,
            q: Rat::zero(),
            negative_root: false,
        }
    }
}

impl fmt::Display for QuadVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let op = if self.negative_root { "-" } else { "+" };
        write!(f, "{} {} sqrt({})", fmt_rat(&self.a), op, fmt_rat(&self.q))
    }
}

/// Exact order of two [`QuadVal`]s; see the case table on [`QuadVal`].
pub fn quad_cmp(x: &QuadVal, y: &QuadVal) -> Ordering {
    let u = &x.a - &y.a;
    let sx = x.signed_one();
    let sy = y.signed_one();
    if y.q.is_zero() {
        return ord_of(sign_linear(&u, &sx, &x.q));
    }
    if x.q.is_zero() {
        return ord_of(sign_linear(&u, &(-sy), &y.q));
    }
    let sign_a = sign_linear(&u, &sx, &x.q);
    let sign_b = if y.negative_root { -1 } else { 1 };
    if sign_a != sign_b {
        return ord_of(sign_a - sign_b);
    }
    // A and B share a nonzero sign; compare squares.
    let rational = &u * &u + &x.q - &y.q;
    let coeff = Rat::from_integer(Int::from(2)) * &u * &sx;
    let squares = sign_linear(&rational, &coeff, &x.q);
    if sign_a > 0 {
        ord_of(squares)
    } else {
        ord_of(-squares)
    }
}

impl PartialEq for QuadVal {
    fn eq(&self, other: &Self) -> bool {
        quad_cmp(self, other) == Ordering::Equal
    }
}

impl Eq for QuadVal {}

impl PartialOrd for QuadVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadVal {
    fn cmp(&self, other: &Self) -> Ordering {
        quad_cmp(self, other)
    }
}

impl PartialEq<Rat> for QuadVal {
    fn eq(&self, other: &Rat) -> bool {
        quad_cmp(self, &QuadVal::from(other.clone())) == Ordering::Equal
    }
}

impl PartialOrd<Rat> for QuadVal {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(quad_cmp(self, &QuadVal::from(other.clone())))
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Largest rational strictly below `mu` whose reduced denominator is at most `n`.
///
/// When `den(mu) ≤ n` this is the left Farey neighbour `a/b`, characterised by
/// `p·b − q·a = 1` with `b ≤ n` maximal; `b` comes from the modular inverse of
/// `p` mod `q` via extended Euclid. Otherwise a Stern–Brocot descent with
/// run-length steps brackets `mu` between denominators `≤ n`.
pub fn farey_pred(mu: &Rat, n: &Int) -> Rat {
    assert!(n.is_positive(), "Farey order must be positive");
    let p = mu.numer();
    let q = mu.denom();
    if q <= n {
        // p·b ≡ 1 (mod q), b in [1, q].
        let inverse = p.extended_gcd(q).x.mod_floor(q);
        let b0 = if inverse.is_zero() { q.clone() } else { inverse };
        let b = &b0 + q * ((n - &b0).div_floor(q));
        let a = (p * &b - Int::one()) / q;
        return Rat::new(a, b);
    }
    stern_brocot_bracket(mu, n).0
}

/// Neighbours `(left, right)` of `mu` among rationals with denominator `≤ n`,
/// for `mu` whose own denominator exceeds `n`.
fn stern_brocot_bracket(mu: &Rat, n: &Int) -> (Rat, Rat) {
    let base = mu.floor().to_integer();
    let (mut la, mut lb) = (base.clone(), Int::one());
    let (mut ra, mut rb) = (base + 1, Int::one());
    loop {
        let ma = &la + &ra;
        let mb = &lb + &rb;
        if &mb > n {
            return (Rat::new(la, lb), Rat::new(ra, rb));
        }
        if Rat::new(ma, mb) < *mu {
            // Largest k with (la + k·ra)/(lb + k·rb) < mu and lb + k·rb ≤ n.
            // (la + k ra) < mu (lb + k rb)  ⇔  k (ra − mu rb) < mu lb − la
            let lhs = Rat::from_integer(ra.clone()) - mu * Rat::from_integer(rb.clone());
            let rhs = mu * Rat::from_integer(lb.clone()) - Rat::from_integer(la.clone());
            let by_value: Int = (rhs / lhs).ceil().to_integer() - 1;
            let by_den = (n - &lb).div_floor(&rb);
            let k = by_value.min(by_den).max(Int::one());
            la += &k * &ra;
            lb += &k * &rb;
        } else {
            let lhs = mu * Rat::from_integer(lb.clone()) - Rat::from_integer(la.clone());
            let rhs = Rat::from_integer(ra.clone()) - mu * Rat::from_integer(rb.clone());
            // (ra + k la)/(rb + k lb) > mu  ⇔  k (mu lb − la) < ra − mu rb
            let by_value: Int = (rhs / lhs).ceil().to_integer() - 1;
            let by_den = (n - &rb).div_floor(&lb);
            let k = by_value.min(by_den).max(Int::one());
            ra += &k * &la;
            rb += &k * &lb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(a: Rat, q: Rat) -> QuadVal {
        QuadVal::plus(a, q)
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(quad_cmp(&qv(int(0), int(4)), &qv(int(2), int(0))), Ordering::Equal);
        // (3 − √5)/2 written as 3/2 − √(5/4)
        let golden = QuadVal::minus(rat(3, 2), rat(5, 4));
        assert_eq!(quad_cmp(&golden, &int(1).into()), Ordering::Less);
        assert_eq!(quad_cmp(&golden, &rat(1, 3).into()), Ordering::Greater);
        assert_eq!(quad_cmp(&qv(rat(3, 2), rat(5, 4)), &rat(1, 3).into()), Ordering::Greater);
        assert_eq!(quad_cmp(&qv(int(-2), int(4)), &int(1).into()), Ordering::Less);
    }

    #[test]
    fn cmp_two_radicals() {
        let lhs = qv(int(0), int(2));
        let x = QuadVal::plus(int(1), int(3));
        let y = QuadVal::plus(int(1), int(2));
        assert_eq!(quad_cmp(&x, &y), Ordering::Greater);
        assert_eq!(quad_cmp(&lhs, &QuadVal::minus(int(3), int(2))), Ordering::Less);
        let a = QuadVal::minus(int(1), int(2));
        let b = QuadVal::minus(int(3), int(8)); // 3 − 2√2 = (√2 − 1)²
        assert_eq!(quad_cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(QuadVal::minus(rat(3, 2), rat(5, 4)).to_decimal(4), "0.3820");
        assert_eq!(QuadVal::plus(int(-11).clone() / int(6), rat(145, 36)).to_decimal(4), "0.1736");
        assert_eq!(QuadVal::minus(int(0), int(2)).to_decimal(3), "-1.414");
        assert_eq!(rat_decimal(&rat(9, 8), 2), "1.13");
        assert_eq!(rat_decimal(&int(0), 2), "0.00");
        assert_eq!(rat_decimal(&rat(-1, 1000), 2), "0.00");
        assert_eq!(QuadVal::plus(int(0), int(2)).to_decimal(0), "1");
    }

    #[test]
    fn display() {
        assert_eq!(fmt_rat(&rat(-8, 2)), "-4");
        assert_eq!(fmt_rat(&rat(13, 18)), "13/18");
        assert_eq!(QuadVal::plus(rat(-11, 6), rat(145, 36)).to_string(), "-11/6 + sqrt(145/36)");
        assert_eq!(QuadVal::minus(rat(3, 2), rat(5, 4)).to_string(), "3/2 - sqrt(5/4)");
    }

    #[test]
    fn parse() {
        assert_eq!(parse_rat(" -7/2 "), Some(rat(-7, 2)));
        assert_eq!(parse_rat("4/6"), Some(rat(2, 3)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }

    #[test]
    fn farey_examples() {
        assert_eq!(farey_pred(&rat(1, 3), &Int::from(6)), rat(1, 4));
        assert_eq!(farey_pred(&int(1), &Int::from(1)), int(0));
        assert_eq!(farey_pred(&rat(3, 5), &Int::from(5)), rat(1, 2));
        assert_eq!(farey_pred(&int(1), &Int::from(4)), rat(3, 4));
        assert_eq!(farey_pred(&rat(-1, 2), &Int::from(6)), rat(-3, 5));
    }

    #[test]
    fn farey_beyond_order() {
        // den(μ) > n: bracket from the Stern–Brocot descent
        assert_eq!(farey_pred(&rat(2, 7), &Int::from(6)), rat(1, 4));
        assert_eq!(farey_pred(&rat(17, 20), &Int::from(3)), rat(2, 3));
        assert_eq!(farey_pred(&rat(-1, 100), &Int::from(5)), rat(-1, 5));
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(rat_sqrt(&rat(145, 36)), None);
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(QuadVal::plus(rat(-5, 2), rat(9, 4)).to_rat(), Some(int(-1)));
    }
}
