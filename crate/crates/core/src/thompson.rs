//! Explicit elements of F and T carrying one (circularly) ordered dyadic tuple
//! onto another.
//!
//! Each gap between consecutive tuple points is cut into standard dyadic
//! intervals `[a/2^n, (a+1)/2^n]`; an affine bijection between two standard
//! intervals has power-of-two slope and dyadic offset, so matching the pieces
//! one by one yields an element of F.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dyadic::{CirclePoint, Dyadic};
use crate::pl::{Domain, PLMap, Piece};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("tuples have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("source tuple is not strictly increasing inside (0, 1): {0}")]
    BadSource(String),
    #[error("target tuple is not strictly increasing inside (0, 1): {0}")]
    BadTarget(String),
    #[error("tuple is not circularly ordered: {0}")]
    NotCircularlyOrdered(String),
    #[error("empty tuple")]
    Empty,
}

/// A tuple of circle points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CircTuple {
    pub points: Vec<CirclePoint>,
}

impl CircTuple {
    pub fn new(points: Vec<CirclePoint>) -> Self {
        CircTuple { points }
    }

    pub fn from_dyadics(points: &[Dyadic]) -> Self {
        CircTuple { points: points.iter().map(CirclePoint::reduce).collect() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_nondegenerate(&self) -> bool {
        let mut v: Vec<_> = self.points.iter().collect();
        v.sort();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// Positions after cutting the circle at the first point: `(t_i - t_0) mod 1`.
    fn cut_at_first(&self) -> Vec<Dyadic> {
        let base = self.points[0].rep();
        self.points.iter().map(|p| CirclePoint::reduce(&(p.rep() - base)).into_rep()).collect()
    }

    pub fn apply(&self, f: &PLMap) -> CircTuple {
        CircTuple { points: self.points.iter().map(|p| f.act(p)).collect() }
    }
}

impl std::fmt::Display for CircTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.points.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `circ_ordered`: true iff the entries are distinct and some cut point of the
/// circle makes them increasing. The empty tuple is not ordered.
pub fn circ_ordered(t: &CircTuple) -> bool {
    if t.is_empty() {
        return false;
    }
    // cutting just before t_0 is always admissible when the tuple is ordered
    let cut = t.cut_at_first();
    cut.windows(2).all(|w| w[0] < w[1])
}

/// Minimal left-to-right decomposition of `[p, q]` into standard dyadic
/// intervals, each taken as long as alignment at its left end permits.
pub fn standard_decomposition(p: &Dyadic, q: &Dyadic) -> Vec<(Dyadic, Dyadic)> {
    let mut out = Vec::new();
    let mut a = p.clone();
    while &a < q {
        let mut n = i64::from(a.exp());
        while &(&a + &Dyadic::pow2(-n)) > q {
            n += 1;
        }
        let b = &a + &Dyadic::pow2(-n);
        out.push((a, b.clone()));
        a = b;
    }
    out
}

/// Halves the (first) longest interval until `parts` has `len` entries.
fn refine_to(parts: &mut Vec<(Dyadic, Dyadic)>, len: usize) {
    while parts.len() < len {
        let (i, _) = parts
            .iter()
            .enumerate()
            .max_by(|(i, x), (j, y)| (&x.1 - &x.0).cmp(&(&y.1 - &y.0)).then(j.cmp(i)))
            .expect("nonempty");
        let (a, b) = parts[i].clone();
        let m = a.midpoint(&b);
        parts[i] = (a, m.clone());
        parts.insert(i + 1, (m, b));
    }
}

/// Affine pieces carrying `[p, q]` onto `[r, s]`.
fn match_gap(p: &Dyadic, q: &Dyadic, r: &Dyadic, s: &Dyadic) -> Vec<Piece> {
    let mut src = standard_decomposition(p, q);
    let mut dst = standard_decomposition(r, s);
    let n = src.len().max(dst.len());
    refine_to(&mut src, n);
    refine_to(&mut dst, n);
    src.iter()
        .zip(&dst)
        .map(|((a, b), (c, e))| {
            let ls = (b - a).log2_exact().expect("standard interval");
            let lt = (e - c).log2_exact().expect("standard interval");
            let s = lt - ls;
            Piece::new(a.clone(), s, c - &a.mul_pow2(s))
        })
        .collect()
}

fn check_increasing(t: &[Dyadic]) -> Result<(), String> {
    let (zero, one) = (Dyadic::zero(), Dyadic::one());
    if let Some(x) = t.iter().find(|x| **x <= zero || **x >= one) {
        return Err(format!("{x} not in (0, 1)"));
    }
    if let Some(w) = t.windows(2).find(|w| w[0] >= w[1]) {
        return Err(format!("{} >= {}", w[0], w[1]));
    }
    Ok(())
}

/// `interval_witness`: an element of F with `f(u_i) = v_i`.
pub fn interval_witness(u: &[Dyadic], v: &[Dyadic]) -> Result<PLMap, WitnessError> {
    if u.len() != v.len() {
        return Err(WitnessError::LengthMismatch(u.len(), v.len()));
    }
    check_increasing(u).map_err(WitnessError::BadSource)?;
    check_increasing(v).map_err(WitnessError::BadTarget)?;
    let with_ends = |t: &[Dyadic]| {
        let mut w = vec![Dyadic::zero()];
        w.extend_from_slice(t);
        w.push(Dyadic::one());
        w
    };
    let (us, vs) = (with_ends(u), with_ends(v));
    let pieces: Vec<Piece> = us
        .windows(2)
        .zip(vs.windows(2))
        .flat_map(|(a, b)| match_gap(&a[0], &a[1], &b[0], &b[1]))
        .collect();
    Ok(PLMap::from_pieces(Domain::Interval, pieces).expect("matched standard intervals form an F element"))
}

/// `circle_witness`: an element of T with `f(u_i) = v_i`, built as
/// `rotation(v_0) ∘ (interval witness) ∘ rotation(-u_0)`.
pub fn circle_witness(u: &CircTuple, v: &CircTuple) -> Result<PLMap, WitnessError> {
    if u.len() != v.len() {
        return Err(WitnessError::LengthMismatch(u.len(), v.len()));
    }
    if u.is_empty() {
        return Err(WitnessError::Empty);
    }
    for t in [u, v] {
        if !circ_ordered(t) {
            return Err(WitnessError::NotCircularlyOrdered(t.to_string()));
        }
    }
    let (cu, cv) = (u.cut_at_first(), v.cut_at_first());
    let middle = interval_witness(&cu[1..], &cv[1..])?;
    let into = PLMap::rotation(&-u.points[0].rep());
    let out = PLMap::rotation(v.points[0].rep());
    Ok(out.compose(&middle).compose(&into))
}

/// `stabilizer_check`: whether `f` fixes every point of `t`.
pub fn stabilizer_check(f: &PLMap, t: &CircTuple) -> bool {
    t.points.iter().all(|p| &f.act(p) == p)
}
