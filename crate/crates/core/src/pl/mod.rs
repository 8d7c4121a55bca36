//! Exact piecewise-linear homeomorphisms of `[0, 1]` and `R/Z` with dyadic
//! breakpoints and power-of-two slopes.
//!
//! A circle map is stored as its lift `H: [0, 1] -> [H(0), H(0) + 1]` with
//! `0 <= H(0) < 1`, so interval and circle maps share one chart engine.
//! Products follow function composition: `(f g)(x) = f(g(x))`.

mod chart;
mod membership;
mod omega;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dyadic::{CirclePoint, Dyadic};

pub(crate) use chart::Chart;
pub use chart::Piece;
pub use membership::{membership, Membership, MembershipReport, Violation};
pub use omega::OmegaPLMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlError {
    #[error("point {0} outside [0, 1]")]
    OutOfDomain(Dyadic),
    #[error("not a valid piecewise-linear homeomorphism: {0}")]
    Invalid(String),
    #[error("map is not an element of F: {0}")]
    NotInF(String),
    #[error("slope between breakpoints {0} and {1} is not a power of 2")]
    SlopeNotPowerOfTwo(Dyadic, Dyadic),
    #[error("truncation exceeded: {x} lies beyond the known window [0, {cutoff}) and before the identity tail at {accumulation}")]
    TruncationExceeded { x: Dyadic, cutoff: Dyadic, accumulation: Dyadic },
    #[error("accumulation points differ ({0} vs {1})")]
    AccumulationMismatch(Dyadic, Dyadic),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Interval,
    Circle,
}

/// Unvalidated wire form of a PL map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseSpec {
    pub domain: Domain,
    pub pieces: Vec<Piece>,
}

/// A validated, normalized PL homeomorphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLMap {
    domain: Domain,
    chart: Chart,
}

/// Result of [`PLMap::commutator`], carrying the convention used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commutator {
    pub map: PLMap,
    pub convention: &'static str,
}

pub const COMMUTATOR_CONVENTION: &str = "[a,b] = a^-1 b^-1 a b, (ab)(x) = a(b(x))";

impl PLMap {
    pub fn identity(domain: Domain) -> Self {
        PLMap { domain, chart: Chart::identity(Dyadic::one()) }
    }

    /// Rigid rotation `x ↦ x + r (mod 1)`.
    pub fn rotation(r: &Dyadic) -> Self {
        let r = CirclePoint::reduce(r).into_rep();
        PLMap { domain: Domain::Circle, chart: Chart { pieces: vec![Piece::new(Dyadic::zero(), 0, r)], end: Dyadic::one() } }
    }

    pub fn from_pieces(domain: Domain, pieces: Vec<Piece>) -> Result<Self, PlError> {
        let spec = PiecewiseSpec { domain, pieces };
        let report = membership::validate(&spec);
        if let Some(v) = report.first() {
            return Err(PlError::Invalid(v.to_string()));
        }
        let mut chart = Chart { pieces: spec.pieces, end: Dyadic::one() };
        chart.normalize();
        Ok(PLMap { domain, chart })
    }

    /// Builds the map through the given graph points `(x, y)`; the points must
    /// start at `x = 0` and end at `x = 1`, and every slope must be a power of 2.
    pub fn from_graph(domain: Domain, points: &[(Dyadic, Dyadic)]) -> Result<Self, PlError> {
        if points.len() < 2 {
            return Err(PlError::Invalid("need at least two graph points".into()));
        }
        let pieces = points
            .windows(2)
            .map(|w| {
                let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
                let dx = x1 - x0;
                let dy = y1 - y0;
                let s = if dx.is_positive() && dy.is_positive() {
                    slope_exp_of(&dx, &dy)
                } else {
                    None
                }
                .ok_or_else(|| PlError::SlopeNotPowerOfTwo(x0.clone(), x1.clone()))?;
                Ok(Piece::new(x0.clone(), s, y0 - &x0.mul_pow2(s)))
            })
            .collect::<Result<Vec<_>, PlError>>()?;
        let last = points.last().expect("len >= 2");
        if last.0 != Dyadic::one() {
            return Err(PlError::Invalid(format!("last graph point has x = {}, expected 1", last.0)));
        }
        PLMap::from_pieces(domain, pieces)
    }

    pub(crate) fn from_chart(domain: Domain, mut chart: Chart) -> Self {
        chart.normalize();
        PLMap { domain, chart }
    }

    pub(crate) fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.chart.pieces
    }

    pub fn breakpoints(&self) -> Vec<Dyadic> {
        self.chart.breakpoints().cloned().collect()
    }

    pub fn to_spec(&self) -> PiecewiseSpec {
        PiecewiseSpec { domain: self.domain, pieces: self.chart.pieces.clone() }
    }

    /// Value of the lift at `x in [0, 1]`.
    pub fn lift(&self, x: &Dyadic) -> Dyadic {
        self.chart.eval(x)
    }

    pub fn is_identity(&self) -> bool {
        self.chart.pieces.len() == 1
            && self.chart.pieces[0].slope_exp == 0
            && self.chart.pieces[0].offset.is_zero()
    }

    /// `pl_eval`. Interval maps require `x in [0, 1]`; circle maps reduce `x`
    /// modulo 1 and return the representative in `[0, 1)`.
    pub fn eval(&self, x: &Dyadic) -> Result<Dyadic, PlError> {
        match self.domain {
            Domain::Interval => {
                if x.is_negative() || x > &Dyadic::one() {
                    return Err(PlError::OutOfDomain(x.clone()));
                }
                Ok(self.chart.eval(x))
            }
            Domain::Circle => Ok(self.act(&CirclePoint::reduce(x)).into_rep()),
        }
    }

    /// Action on the circle; interval maps act fixing `0`.
    pub fn act(&self, p: &CirclePoint) -> CirclePoint {
        CirclePoint::reduce(&self.chart.eval(p.rep()))
    }

    /// `pl_compose`: `x ↦ self(other(x))`. Mixing an interval map with a circle
    /// map yields a circle map (F sits in T as the stabilizer of 0).
    pub fn compose(&self, other: &PLMap) -> PLMap {
        match (self.domain, other.domain) {
            (Domain::Interval, Domain::Interval) => {
                PLMap::from_chart(Domain::Interval, Chart::compose(&self.chart, false, &other.chart))
            }
            _ => {
                let mut chart = Chart::compose(&self.chart, true, &other.chart);
                let h0 = chart.start_value();
                if h0 >= Dyadic::one() {
                    chart.map_offsets(&Dyadic::new(-h0.floor(), 0));
                }
                PLMap::from_chart(Domain::Circle, chart)
            }
        }
    }

    /// `pl_invert`.
    pub fn inverse(&self) -> PLMap {
        let h0 = self.chart.start_value();
        if h0.is_zero() {
            return PLMap::from_chart(self.domain, self.chart.invert());
        }
        let one = Dyadic::one();
        let mut chart = self.chart.clone();
        let cut = chart.preimage(&one).expect("degree-one lift crosses 1");
        chart.split_at(&cut);
        let mut pieces: Vec<Piece> = chart
            .pieces
            .iter()
            .map(|p| {
                let y = p.apply(&p.left);
                let s = -p.slope_exp;
                if y >= one {
                    Piece::new(&y - &one, s, (&one - &p.offset).mul_pow2(s))
                } else {
                    Piece::new(y, s, (-&p.offset).mul_pow2(s) + &one)
                }
            })
            .collect();
        pieces.sort_by(|a, b| a.left.cmp(&b.left));
        PLMap::from_chart(Domain::Circle, Chart { pieces, end: one })
    }

    /// `pl_commutator`: `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &PLMap) -> Commutator {
        let map = self.inverse().compose(&other.inverse()).compose(self).compose(other);
        Commutator { map, convention: COMMUTATOR_CONVENTION }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> PLMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(PLMap::identity(self.domain), |acc, _| acc.compose(&base))
    }

    /// Conjugate `c^-1 self c`.
    pub fn conjugate_by(&self, c: &PLMap) -> PLMap {
        c.inverse().compose(self).compose(c)
    }

    /// Whether the lift fixes 0, i.e. the map lies in the copy of F inside T.
    pub fn fixes_zero(&self) -> bool {
        self.chart.start_value().is_zero()
    }

    /// `pl_germ`: log2 of the slope at 0 (`end_one = false`) or at 1.
    pub fn germ(&self, end_one: bool) -> Result<i64, PlError> {
        if !self.fixes_zero() {
            return Err(PlError::NotInF(format!("lift moves 0 to {}", self.chart.start_value())));
        }
        let p = if end_one { self.chart.pieces.last() } else { self.chart.pieces.first() };
        Ok(p.expect("nonempty").slope_exp)
    }

    /// `pl_support`: the maximal open intervals on which `f(x) != x`, with exact
    /// rational endpoints. For circle maps an arc crossing 0 is reported as
    /// `(l, r)` with `r > 1`.
    pub fn support(&self) -> Vec<(BigRational, BigRational)> {
        // fixed set as a union of closed rational intervals (points allowed)
        let mut fixed: Vec<(BigRational, BigRational)> = Vec::new();
        let shifts: &[i64] = match self.domain {
            Domain::Interval => &[0],
            Domain::Circle => &[-1, 0, 1],
        };
        for (p, r) in self.chart.spans() {
            let (l, r) = (p.left.to_rational(), r.to_rational());
            let slope = Dyadic::pow2(p.slope_exp).to_rational();
            for &m in shifts {
                // H(x) - x - m = (slope - 1) x + offset - m
                let c = p.offset.to_rational() - BigRational::from_integer(m.into());
                let a = &slope - BigRational::one();
                if a.is_zero() {
                    if c.is_zero() {
                        fixed.push((l.clone(), r.clone()));
                    }
                } else {
                    let x = -c / a;
                    if x >= l && x <= r {
                        fixed.push((x.clone(), x));
                    }
                }
            }
        }
        fixed.sort();
        let one = BigRational::one();
        let mut merged: Vec<(BigRational, BigRational)> = Vec::new();
        for (a, b) in fixed {
            match merged.last_mut() {
                Some((_, e)) if a <= *e => {
                    if b > *e {
                        *e = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        let mut out = Vec::new();
        let mut cursor = BigRational::zero();
        for (a, b) in &merged {
            if *a > cursor {
                out.push((cursor.clone(), a.clone()));
            }
            cursor = cursor.max(b.clone());
        }
        if cursor < one {
            out.push((cursor, one.clone()));
        }
        if self.domain == Domain::Circle {
            if merged.is_empty() {
                return vec![(BigRational::zero(), one)];
            }
            // 0 and 1 are the same point: join the arcs on either side of it
            if !merged[0].0.is_zero() && out.len() > 1 {
                let (_, b0) = out.remove(0);
                out.last_mut().expect("len > 1").1 = b0 + &one;
            }
        }
        out
    }
}

fn slope_exp_of(dx: &Dyadic, dy: &Dyadic) -> Option<i64> {
    let ratio = dy.to_rational() / dx.to_rational();
    Dyadic::from_rational(&ratio).and_then(|q| q.log2_exact())
}

impl fmt::Debug for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PLMap[{:?}](", self.domain)?;
        for (i, p) in self.chart.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "[{}): 2^{}x+{}", p.left, p.slope_exp, p.offset)?;
        }
        write!(f, ")")
    }
}

impl Serialize for PLMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PLMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let spec = PiecewiseSpec::deserialize(d)?;
        PLMap::from_pieces(spec.domain, spec.pieces).map_err(serde::de::Error::custom)
    }
}

/// The standard generator `x_n` of F: identity on `[0, 1 - 2^-n]`, then the
/// copy of `x_0` rescaled into `[1 - 2^-n, 1]`.
pub fn standard_generator(n: u32) -> PLMap {
    let n = i64::from(n);
    let one = Dyadic::one();
    let a = &one - &Dyadic::pow2(-n);
    let w = Dyadic::pow2(-n);
    let at = |fx: &str, fy: &str| {
        let fx: Dyadic = fx.parse().expect("literal");
        let fy: Dyadic = fy.parse().expect("literal");
        (&a + &(&w * &fx), &a + &(&w * &fy))
    };
    let mut pts = vec![(Dyadic::zero(), Dyadic::zero())];
    if n > 0 {
        pts.push((a.clone(), a.clone()));
    }
    pts.extend([at("1/2^1", "1/2^2"), at("3/2^2", "1/2^1"), (one.clone(), one)]);
    PLMap::from_graph(Domain::Interval, &pts).expect("standard generator is valid")
}

#[cfg(test)]
mod tests;
