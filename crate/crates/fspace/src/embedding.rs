//! Exact decision procedures for the embedding conditions between the
//! modulation scale and the Triebel-Lizorkin / Besov / local Hardy scales,
//! plus the sequence-space embedding tests that drive the sharpness
//! experiments.
//!
//! Everything here is evaluated in rational arithmetic. Strict and
//! non-strict inequalities at a boundary are exactly what separates the
//! scales, so no verdict may depend on floating point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::params::{Exponent, Rational, SpaceParams};

/// Which stated condition produced a positive verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    None,
    Cond1,
    Cond2,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::None => write!(f, "none"),
            Branch::Cond1 => write!(f, "cond1"),
            Branch::Cond2 => write!(f, "cond2"),
        }
    }
}

/// Outcome of one embedding decision. `boundary` is set when any of the
/// comparisons defining the condition held with equality; those cells sit on
/// the critical lines of the parameter atlas and cannot be resolved by a
/// finite numerical experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingVerdict {
    pub holds: bool,
    pub branch: Branch,
    pub boundary: bool,
}

impl EmbeddingVerdict {
    fn new(holds: bool, branch: Branch, boundary: bool) -> Self {
        debug_assert_eq!(branch == Branch::None, !holds);
        EmbeddingVerdict {
            holds,
            branch,
            boundary,
        }
    }
}

fn ensure_p_at_most_one(p: &Exponent) -> Result<Rational> {
    match p {
        Exponent::Finite(v) if *v <= Rational::from_integer(1) => Ok(*v),
        _ => Err(Error::OutOfTheoremDomain(format!(
            "conditions are stated for 0 < p <= 1, got p = {p}"
        ))),
    }
}

fn any_eq(orderings: &[Ordering]) -> bool {
    orderings.iter().any(|o| *o == Ordering::Equal)
}

/// M^s_{p,q} into F_{p,r}: holds iff
/// (1) 1/p <= 1/q, s >= 0, 1/r <= 1/q; or (2) 1/p > 1/q, s > n(1/p - 1/q).
pub fn modulation_into_triebel(params: &SpaceParams) -> Result<EmbeddingVerdict> {
    ensure_p_at_most_one(&params.p)?;
    let ip = params.p.reciprocal();
    let iq = params.q.reciprocal();
    let ir = params.r.reciprocal();
    let n = params.n_rational();
    let threshold = n * (ip - iq);

    let o_pq = ip.cmp(&iq);
    let o_s0 = params.s.cmp(&Rational::zero());
    let o_rq = ir.cmp(&iq);
    let o_st = params.s.cmp(&threshold);
    let boundary = any_eq(&[o_pq, o_s0, o_rq, o_st]);

    let cond1 = o_pq != Ordering::Greater && o_s0 != Ordering::Less && o_rq != Ordering::Greater;
    let cond2 = o_pq == Ordering::Greater && o_st == Ordering::Greater;
    let branch = if cond1 {
        Branch::Cond1
    } else if cond2 {
        Branch::Cond2
    } else {
        Branch::None
    };
    Ok(EmbeddingVerdict::new(cond1 || cond2, branch, boundary))
}

/// F_{p,r} into M^s_{p,q}: holds iff
/// (1) 1/q <= 1/p, s <= n(1 - 1/p - 1/q); or (2) 1/q > 1/p, s < n(1 - 1/p - 1/q).
/// The inner exponent r does not enter the stated condition.
pub fn triebel_into_modulation(params: &SpaceParams) -> Result<EmbeddingVerdict> {
    ensure_p_at_most_one(&params.p)?;
    hardy_style_condition(params.n, &params.p, &params.q, params.s)
}

/// M^s_{p,q} into the local Hardy space h_p.
pub fn modulation_into_hardy(
    n: u32,
    p: &Exponent,
    q: &Exponent,
    s: Rational,
) -> Result<EmbeddingVerdict> {
    ensure_p_at_most_one(p)?;
    let ip = p.reciprocal();
    let iq = q.reciprocal();
    let nr = Rational::from_integer(n as i64);
    let threshold = nr * (ip - iq);

    let o_pq = ip.cmp(&iq);
    let o_s0 = s.cmp(&Rational::zero());
    let o_st = s.cmp(&threshold);
    let boundary = any_eq(&[o_pq, o_s0, o_st]);

    let cond1 = o_pq != Ordering::Greater && o_s0 != Ordering::Less;
    let cond2 = o_pq == Ordering::Greater && o_st == Ordering::Greater;
    let branch = if cond1 {
        Branch::Cond1
    } else if cond2 {
        Branch::Cond2
    } else {
        Branch::None
    };
    Ok(EmbeddingVerdict::new(cond1 || cond2, branch, boundary))
}

/// h_p into M^s_{p,q}; identical condition shape to
/// [`triebel_into_modulation`], which specializes it at r = 2.
pub fn hardy_into_modulation(
    n: u32,
    p: &Exponent,
    q: &Exponent,
    s: Rational,
) -> Result<EmbeddingVerdict> {
    ensure_p_at_most_one(p)?;
    hardy_style_condition(n, p, q, s)
}

fn hardy_style_condition(
    n: u32,
    p: &Exponent,
    q: &Exponent,
    s: Rational,
) -> Result<EmbeddingVerdict> {
    let ip = p.reciprocal();
    let iq = q.reciprocal();
    let nr = Rational::from_integer(n as i64);
    let threshold = nr * (Rational::from_integer(1) - ip - iq);

    let o_qp = iq.cmp(&ip);
    let o_st = s.cmp(&threshold);
    let boundary = any_eq(&[o_qp, o_st]);

    let cond1 = o_qp != Ordering::Greater && o_st != Ordering::Greater;
    let cond2 = o_qp == Ordering::Greater && o_st == Ordering::Less;
    let branch = if cond1 {
        Branch::Cond1
    } else if cond2 {
        Branch::Cond2
    } else {
        Branch::None
    };
    Ok(EmbeddingVerdict::new(cond1 || cond2, branch, boundary))
}

/// Direction selector for the modulation / Besov comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesovDirection {
    ModulationIntoBesov,
    BesovIntoModulation,
}

/// M^s_{p,q} vs B_{p,q}: s compared against the max (respectively min) of
/// {0, n(1/p - 1/q), n(1 - 1/p - 1/q)}. The three-way alternation is read as
/// grouping (max/min of three reals), not as integer floors.
pub fn besov_embedding(
    n: u32,
    p: &Exponent,
    q: &Exponent,
    s: Rational,
    direction: BesovDirection,
) -> EmbeddingVerdict {
    let ip = p.reciprocal();
    let iq = q.reciprocal();
    let nr = Rational::from_integer(n as i64);
    let a = Rational::zero();
    let b = nr * (ip - iq);
    let c = nr * (Rational::from_integer(1) - ip - iq);
    let (threshold, holds, o_st) = match direction {
        BesovDirection::ModulationIntoBesov => {
            let t = a.max(b).max(c);
            let o = s.cmp(&t);
            (t, o != Ordering::Less, o)
        }
        BesovDirection::BesovIntoModulation => {
            let t = a.min(b).min(c);
            let o = s.cmp(&t);
            (t, o != Ordering::Greater, o)
        }
    };
    let _ = threshold;
    EmbeddingVerdict::new(
        holds,
        if holds { Branch::Cond1 } else { Branch::None },
        o_st == Ordering::Equal,
    )
}

/// l^{s1,0}_{q1} into l^{s2,0}_{q2} on the lattice Z^n: holds iff
/// (s2 <= s1 and 1/q2 + s2/n < 1/q1 + s1/n) or (s2 = s1 and q2 = q1).
pub fn uniform_seq_embedding(
    q1: &Exponent,
    s1: Rational,
    q2: &Exponent,
    s2: Rational,
    n: u32,
) -> EmbeddingVerdict {
    let nr = Rational::from_integer(n as i64);
    let lhs = q2.reciprocal() + s2 / nr;
    let rhs = q1.reciprocal() + s1 / nr;
    let o_s = s2.cmp(&s1);
    let o_sum = lhs.cmp(&rhs);
    let boundary = any_eq(&[o_s, o_sum]);
    let branch1 = o_s != Ordering::Greater && o_sum == Ordering::Less;
    let branch2 = o_s == Ordering::Equal && q1 == q2;
    let branch = if branch1 {
        Branch::Cond1
    } else if branch2 {
        Branch::Cond2
    } else {
        Branch::None
    };
    EmbeddingVerdict::new(branch1 || branch2, branch, boundary)
}

/// l^{s1,1}_{q1} into l^{s2,1}_{q2} on shell indices: holds iff
/// s2 < s1, or (s2 = s1 and 1/q2 <= 1/q1).
pub fn dyadic_seq_embedding(
    q1: &Exponent,
    s1: Rational,
    q2: &Exponent,
    s2: Rational,
) -> EmbeddingVerdict {
    let o_s = s2.cmp(&s1);
    let o_q = q2.reciprocal().cmp(&q1.reciprocal());
    let boundary = any_eq(&[o_s, o_q]);
    let branch1 = o_s == Ordering::Less;
    let branch2 = o_s == Ordering::Equal && o_q != Ordering::Greater;
    let branch = if branch1 {
        Branch::Cond1
    } else if branch2 {
        Branch::Cond2
    } else {
        Branch::None
    };
    EmbeddingVerdict::new(branch1 || branch2, branch, boundary)
}

/// Minimal derivative / moment orders for the atom classes:
/// K >= ([s] + 1)_+ and L >= max([n (1/p - 1)_+ - s], 1), with [.] the floor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AtomOrders {
    pub k_min: u32,
    pub l_min: u32,
}

pub fn atom_orders(s: Rational, p: &Exponent, n: u32) -> AtomOrders {
    let k = (s.floor().to_integer() + 1).max(0) as u32;
    let nr = Rational::from_integer(n as i64);
    let pos = (p.reciprocal() - Rational::from_integer(1)).max(Rational::zero());
    let l = (nr * pos - s).floor().to_integer().max(1) as u32;
    AtomOrders { k_min: k, l_min: l }
}

/// Identifier for one decision procedure, used by scans and the CLI.
/// String forms accept both the descriptive names and the short labels
/// "1.1", "1.2", "A", "B" commonly used for these inclusions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremId {
    ModulationIntoTriebel,
    TriebelIntoModulation,
    ModulationIntoHardy,
    HardyIntoModulation,
    ModulationIntoBesov,
    BesovIntoModulation,
}

impl TheoremId {
    pub fn label(&self) -> &'static str {
        match self {
            TheoremId::ModulationIntoTriebel => "m-into-f",
            TheoremId::TriebelIntoModulation => "f-into-m",
            TheoremId::ModulationIntoHardy => "m-into-h",
            TheoremId::HardyIntoModulation => "h-into-m",
            TheoremId::ModulationIntoBesov => "m-into-b",
            TheoremId::BesovIntoModulation => "b-into-m",
        }
    }

    pub fn evaluate(&self, params: &SpaceParams) -> Result<EmbeddingVerdict> {
        match self {
            TheoremId::ModulationIntoTriebel => modulation_into_triebel(params),
            TheoremId::TriebelIntoModulation => triebel_into_modulation(params),
            TheoremId::ModulationIntoHardy => {
                modulation_into_hardy(params.n, &params.p, &params.q, params.s)
            }
            TheoremId::HardyIntoModulation => {
                hardy_into_modulation(params.n, &params.p, &params.q, params.s)
            }
            TheoremId::ModulationIntoBesov => Ok(besov_embedding(
                params.n,
                &params.p,
                &params.q,
                params.s,
                BesovDirection::ModulationIntoBesov,
            )),
            TheoremId::BesovIntoModulation => Ok(besov_embedding(
                params.n,
                &params.p,
                &params.q,
                params.s,
                BesovDirection::BesovIntoModulation,
            )),
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1.1" | "m-into-f" | "mf" => Ok(TheoremId::ModulationIntoTriebel),
            "1.2" | "f-into-m" | "fm" => Ok(TheoremId::TriebelIntoModulation),
            "a" | "m-into-h" | "mh" => Ok(TheoremId::ModulationIntoHardy),
            "b" | "h-into-m" | "hm" => Ok(TheoremId::HardyIntoModulation),
            "m-into-b" | "mb" => Ok(TheoremId::ModulationIntoBesov),
            "b-into-m" | "bm" => Ok(TheoremId::BesovIntoModulation),
            _ => Err(Error::Parse {
                what: "theorem id",
                input: s.to_string(),
            }),
        }
    }
}

/// A parameter axis for a region scan. Reciprocal axes (`InvQ` etc.) sweep
/// 1/q directly, with 0 mapping to q = infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisVar {
    P,
    Q,
    R,
    S,
    InvP,
    InvQ,
    InvR,
}

impl FromStr for AxisVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "p" => Ok(AxisVar::P),
            "q" => Ok(AxisVar::Q),
            "r" => Ok(AxisVar::R),
            "s" => Ok(AxisVar::S),
            "ip" | "1/p" => Ok(AxisVar::InvP),
            "iq" | "1/q" => Ok(AxisVar::InvQ),
            "ir" | "1/r" => Ok(AxisVar::InvR),
            _ => Err(Error::Parse {
                what: "axis variable",
                input: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for AxisVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AxisVar::P => "p",
            AxisVar::Q => "q",
            AxisVar::R => "r",
            AxisVar::S => "s",
            AxisVar::InvP => "1/p",
            AxisVar::InvQ => "1/q",
            AxisVar::InvR => "1/r",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxisSpec {
    pub var: AxisVar,
    pub start: Rational,
    pub end: Rational,
    pub step: Rational,
}

impl AxisSpec {
    pub fn new(var: AxisVar, start: Rational, end: Rational, step: Rational) -> Result<Self> {
        if end < start {
            return Err(Error::config("axes", "axis end must be >= start"));
        }
        if start != end && step <= Rational::zero() {
            return Err(Error::config("axes", "axis step must be positive"));
        }
        Ok(AxisSpec {
            var,
            start,
            end,
            step,
        })
    }

    pub fn values(&self) -> Vec<Rational> {
        if self.start == self.end {
            return vec![self.start];
        }
        let mut out = Vec::new();
        let mut v = self.start;
        while v <= self.end {
            out.push(v);
            v += self.step;
        }
        out
    }

    fn assign(&self, params: &mut SpaceParams, value: Rational) -> Result<()> {
        let one = Rational::from_integer(1);
        let as_exp = |v: Rational| -> Result<Exponent> { Exponent::finite(v) };
        let inv_exp = |v: Rational| -> Result<Exponent> {
            if v.is_zero() {
                Ok(Exponent::Infinity)
            } else if v > Rational::zero() {
                Exponent::finite(one / v)
            } else {
                Err(Error::config("axes", "reciprocal axis values must be >= 0"))
            }
        };
        match self.var {
            AxisVar::P => params.p = as_exp(value)?,
            AxisVar::Q => params.q = as_exp(value)?,
            AxisVar::R => params.r = as_exp(value)?,
            AxisVar::S => params.s = value,
            AxisVar::InvP => params.p = inv_exp(value)?,
            AxisVar::InvQ => params.q = inv_exp(value)?,
            AxisVar::InvR => params.r = inv_exp(value)?,
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionCell {
    pub x: Rational,
    pub y: Rational,
    pub params: SpaceParams,
    pub verdict: EmbeddingVerdict,
}

#[derive(Clone, Debug)]
pub struct RegionTable {
    pub theorem: TheoremId,
    pub x_axis: AxisSpec,
    pub y_axis: AxisSpec,
    pub cells: Vec<RegionCell>,
}

/// Tabulates one decision procedure over a two-axis rational grid; cells on
/// critical lines carry the boundary flag.
pub fn region_scan(
    base: &SpaceParams,
    theorem: TheoremId,
    x_axis: &AxisSpec,
    y_axis: &AxisSpec,
) -> Result<RegionTable> {
    let mut cells = Vec::new();
    for y in y_axis.values() {
        for x in x_axis.values() {
            let mut params = *base;
            x_axis.assign(&mut params, x)?;
            y_axis.assign(&mut params, y)?;
            let verdict = theorem.evaluate(&params)?;
            cells.push(RegionCell {
                x,
                y,
                params,
                verdict,
            });
        }
    }
    Ok(RegionTable {
        theorem,
        x_axis: *x_axis,
        y_axis: *y_axis,
        cells,
    })
}
