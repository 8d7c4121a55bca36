use serde::Serialize;

use super::{Chart, Domain, PLMap, Piece, PlError};
use crate::dyadic::Dyadic;

/// A homeomorphism of `[0, 1]` whose breakpoints may accumulate at a single
/// dyadic point, stored up to a truncation.
///
/// The map is known exactly on `[0, cutoff)` (finitely many pieces) and is the
/// identity on `[accumulation, 1]`. Points in `[cutoff, accumulation)` are
/// outside the stored truncation and every query there fails with
/// [`PlError::TruncationExceeded`]. When `cutoff == accumulation` the map has
/// finitely many breakpoints and is known everywhere.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct OmegaPLMap {
    #[serde(rename = "prefixPieces")]
    prefix: Vec<Piece>,
    cutoff: Dyadic,
    accumulation: Dyadic,
    depth: u32,
}

impl OmegaPLMap {
    pub(crate) fn from_chart(chart: Chart, accumulation: Dyadic, depth: u32) -> Self {
        debug_assert!(chart.end <= accumulation);
        let mut chart = chart;
        chart.normalize();
        OmegaPLMap { prefix: chart.pieces, cutoff: chart.end, accumulation, depth }
    }

    /// Validated constructor: `prefix` must be a continuous increasing chart on
    /// `[0, cutoff)` fixing 0 and mapping into `[0, accumulation]`.
    pub fn new(prefix: Vec<Piece>, cutoff: Dyadic, accumulation: Dyadic, depth: u32) -> Result<Self, PlError> {
        if !(cutoff.is_positive() && cutoff <= accumulation && accumulation <= Dyadic::one()) {
            return Err(PlError::Invalid(format!(
                "need 0 < cutoff <= accumulation <= 1, got cutoff {cutoff}, accumulation {accumulation}"
            )));
        }
        let spec_ok = prefix.first().is_some_and(|p| p.left.is_zero())
            && prefix.windows(2).all(|w| w[0].left < w[1].left && w[0].apply(&w[1].left) == w[1].apply(&w[1].left))
            && prefix.last().is_some_and(|p| p.left < cutoff);
        if !spec_ok {
            return Err(PlError::Invalid("prefix pieces must be increasing, continuous and start at 0".into()));
        }
        let chart = Chart { pieces: prefix, end: cutoff };
        if !chart.start_value().is_zero() || chart.end_value() > accumulation {
            return Err(PlError::Invalid("prefix must fix 0 and map into [0, accumulation]".into()));
        }
        if chart.end == accumulation && chart.end_value() != accumulation {
            return Err(PlError::Invalid("complete map must be continuous at the accumulation point".into()));
        }
        Ok(OmegaPLMap::from_chart(chart, accumulation, depth))
    }

    pub fn identity(accumulation: Dyadic) -> Self {
        OmegaPLMap::from_chart(Chart::identity(accumulation.clone()), accumulation, 0)
    }

    /// Embeds a finite interval map that is the identity on `[accumulation, 1]`.
    pub fn from_finite(f: &PLMap, accumulation: &Dyadic) -> Result<Self, PlError> {
        if f.domain() != Domain::Interval {
            return Err(PlError::NotInF("circle map".into()));
        }
        let tail = f.chart().piece_at(accumulation);
        let tail_identity = f
            .chart()
            .pieces
            .iter()
            .filter(|p| &p.left >= accumulation)
            .chain(std::iter::once(tail))
            .all(|p| p.slope_exp == 0 && p.offset.is_zero());
        if !tail_identity {
            return Err(PlError::Invalid(format!("map is not the identity on [{accumulation}, 1]")));
        }
        Ok(OmegaPLMap::from_chart(f.chart().restrict(accumulation), accumulation.clone(), 0))
    }

    pub(crate) fn chart(&self) -> Chart {
        Chart { pieces: self.prefix.clone(), end: self.cutoff.clone() }
    }

    pub fn prefix_pieces(&self) -> &[Piece] {
        &self.prefix
    }

    pub fn cutoff(&self) -> &Dyadic {
        &self.cutoff
    }

    pub fn accumulation(&self) -> &Dyadic {
        &self.accumulation
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn with_depth(mut self, depth: u32) -> Self {
        self.depth = depth;
        self
    }

    pub fn is_complete(&self) -> bool {
        self.cutoff == self.accumulation
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &Dyadic> {
        self.prefix.iter().skip(1).map(|p| &p.left)
    }

    fn truncation(&self, x: &Dyadic) -> PlError {
        PlError::TruncationExceeded {
            x: x.clone(),
            cutoff: self.cutoff.clone(),
            accumulation: self.accumulation.clone(),
        }
    }

    pub fn eval(&self, x: &Dyadic) -> Result<Dyadic, PlError> {
        if x.is_negative() || x > &Dyadic::one() {
            return Err(PlError::OutOfDomain(x.clone()));
        }
        if x >= &self.accumulation {
            Ok(x.clone())
        } else if x < &self.cutoff {
            Ok(self.chart().eval(x))
        } else {
            Err(self.truncation(x))
        }
    }

    /// `x ↦ self(other(x))`, known wherever both factors are known.
    pub fn compose(&self, other: &OmegaPLMap) -> Result<OmegaPLMap, PlError> {
        if self.accumulation != other.accumulation {
            return Err(PlError::AccumulationMismatch(self.accumulation.clone(), other.accumulation.clone()));
        }
        let chart = Chart::compose(&self.chart(), false, &other.chart());
        Ok(OmegaPLMap::from_chart(chart, self.accumulation.clone(), self.depth.min(other.depth)))
    }

    pub fn compose_finite(&self, f: &PLMap) -> Result<OmegaPLMap, PlError> {
        self.compose(&OmegaPLMap::from_finite(f, &self.accumulation)?)
    }

    pub fn inverse(&self) -> OmegaPLMap {
        OmegaPLMap::from_chart(self.chart().invert(), self.accumulation.clone(), self.depth)
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Result<OmegaPLMap, PlError> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = OmegaPLMap::identity(self.accumulation.clone());
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }

    /// Conjugate `c^-1 self c`.
    pub fn conjugate_by(&self, c: &OmegaPLMap) -> Result<OmegaPLMap, PlError> {
        c.inverse().compose(self)?.compose(c)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, other: &OmegaPLMap) -> Result<OmegaPLMap, PlError> {
        self.inverse().compose(&other.inverse())?.compose(self)?.compose(other)
    }

    /// Restriction of the known part to `[0, w)`.
    pub fn truncate(&self, w: &Dyadic) -> OmegaPLMap {
        OmegaPLMap::from_chart(self.chart().restrict(w), self.accumulation.clone(), self.depth)
    }

    /// Compares on the common known window `[0, w) ∪ [accumulation, 1]` and
    /// returns `w` together with the first disagreement point, if any.
    pub fn compare(&self, other: &OmegaPLMap) -> Result<(Dyadic, Option<Dyadic>), PlError> {
        if self.accumulation != other.accumulation {
            return Err(PlError::AccumulationMismatch(self.accumulation.clone(), other.accumulation.clone()));
        }
        let w = self.cutoff.clone().min(other.cutoff.clone());
        Ok((w, Chart::first_difference(&self.chart(), &other.chart())))
    }

    pub fn is_identity_on_window(&self) -> bool {
        self.prefix.iter().all(|p| p.slope_exp == 0 && p.offset.is_zero())
    }
}

impl std::fmt::Debug for OmegaPLMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "OmegaPLMap(acc {}, known [0,{}), {} pieces)", self.accumulation, self.cutoff, self.prefix.len())
    }
}
