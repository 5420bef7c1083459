//! Rational exponent parameters shared by the norm evaluators and the exact
//! embedding logic.
//!
//! All embedding verdicts are decided in exact rational arithmetic; floating
//! point only enters when a norm is actually evaluated on a grid. Infinity is
//! a distinguished exponent value with `1/inf = 0`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact rational scalar used for exponents and weights.
pub type Rational = num_rational::Rational64;

/// A Lebesgue-type exponent: a positive rational or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(Rational),
    Infinity,
}

impl Exponent {
    /// A finite exponent; must be strictly positive.
    pub fn finite(value: Rational) -> Result<Self> {
        if value <= Rational::zero() {
            return Err(Error::NonPositiveExponent(value.to_string()));
        }
        Ok(Exponent::Finite(value))
    }

    /// Shorthand for small integer exponents.
    pub fn int(value: i64) -> Result<Self> {
        Self::finite(Rational::from_integer(value))
    }

    /// Shorthand for a rational exponent `num/den`.
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        Self::finite(Rational::new(num, den))
    }

    pub fn infinity() -> Self {
        Exponent::Infinity
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    /// Exact reciprocal, with `1/inf = 0`.
    pub fn reciprocal(&self) -> Rational {
        match self {
            Exponent::Finite(v) => Rational::one_over(*v),
            Exponent::Infinity => Rational::zero(),
        }
    }

    /// Floating-point value for numerical work; infinity maps to `f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        match self {
            Exponent::Finite(v) => rational_to_f64(*v),
            Exponent::Infinity => f64::INFINITY,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Exponent::Finite(v) => Some(*v),
            Exponent::Infinity => None,
        }
    }
}

trait OneOver {
    fn one_over(v: Rational) -> Rational;
}

impl OneOver for Rational {
    fn one_over(v: Rational) -> Rational {
        Rational::new(*v.denom(), *v.numer())
    }
}

pub fn rational_to_f64(v: Rational) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

/// Parses "a/b", a plain integer, or "inf".
impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Exponent::Infinity);
        }
        let value = parse_rational(t)?;
        Exponent::finite(value)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(v) => write!(f, "{v}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// Parses a rational from "a/b" or integer form. Never goes through floats.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    Rational::from_str(t).map_err(|_| Error::Parse {
        what: "rational",
        input: s.to_string(),
    })
}

/// The exponent tuple (n, p, q, r, s) shared by every norm and every
/// embedding condition evaluator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceParams {
    pub n: u32,
    pub p: Exponent,
    pub q: Exponent,
    pub r: Exponent,
    pub s: Rational,
}

impl SpaceParams {
    pub fn new(n: u32, p: Exponent, q: Exponent, r: Exponent, s: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::config("n", "dimension must be a positive integer"));
        }
        Ok(SpaceParams { n, p, q, r, s })
    }

    /// Convenience constructor from string fields (as the CLI sees them).
    pub fn parse_fields(n: &str, p: &str, q: &str, r: &str, s: &str) -> Result<Self> {
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| Error::config("n", format!("not a positive integer: {n:?}")))?;
        Self::new(n, p.parse()?, q.parse()?, r.parse()?, parse_rational(s)?)
    }

    pub fn n_rational(&self) -> Rational {
        Rational::from_integer(self.n as i64)
    }

    pub fn s_f64(&self) -> f64 {
        rational_to_f64(self.s)
    }
}

impl fmt::Display for SpaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={},p={},q={},r={},s={}",
            self.n, self.p, self.q, self.r, self.s
        )
    }
}

/// Weighted Lebesgue norm parameters: exponent p and weight power s in <x>^s.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LpParams {
    pub p: Exponent,
    pub s: Rational,
}

impl LpParams {
    pub fn new(p: Exponent, s: Rational) -> Self {
        LpParams { p, s }
    }

    /// Unweighted L_p.
    pub fn plain(p: Exponent) -> Self {
        LpParams {
            p,
            s: Rational::zero(),
        }
    }
}
