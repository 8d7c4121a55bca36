//! Partial piecewise-affine maps `[0, end) -> R` with power-of-two slopes.
//!
//! This is the shared engine behind [`super::PLMap`] and [`super::OmegaPLMap`]:
//! both store an increasing chart and add domain semantics on top.

use crate::dyadic::Dyadic;
use serde::{Deserialize, Serialize};

/// `x ↦ 2^slope_exp · x + offset` on `[left, next_left)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Piece {
    pub left: Dyadic,
    #[serde(rename = "slopeExp")]
    pub slope_exp: i64,
    pub offset: Dyadic,
}

impl Piece {
    pub fn new(left: Dyadic, slope_exp: i64, offset: Dyadic) -> Self {
        Piece { left, slope_exp, offset }
    }

    pub fn apply(&self, x: &Dyadic) -> Dyadic {
        x.mul_pow2(self.slope_exp) + &self.offset
    }

    /// The unique `x` with `apply(x) = y`.
    pub fn solve(&self, y: &Dyadic) -> Dyadic {
        (y - &self.offset).mul_pow2(-self.slope_exp)
    }

    fn same_affine(&self, other: &Piece) -> bool {
        self.slope_exp == other.slope_exp && self.offset == other.offset
    }
}

/// Strictly increasing, continuous chart on `[0, end)`; pieces sorted by `left`,
/// first `left` is 0, every `left < end`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Chart {
    pub pieces: Vec<Piece>,
    pub end: Dyadic,
}

impl Chart {
    pub fn identity(end: Dyadic) -> Self {
        Chart { pieces: vec![Piece::new(Dyadic::zero(), 0, Dyadic::zero())], end }
    }

    pub fn piece_index(&self, x: &Dyadic) -> usize {
        self.pieces.partition_point(|p| &p.left <= x).saturating_sub(1)
    }

    pub fn piece_at(&self, x: &Dyadic) -> &Piece {
        &self.pieces[self.piece_index(x)]
    }

    /// Value at `x` for `0 <= x <= end` (the closing point uses the last piece).
    pub fn eval(&self, x: &Dyadic) -> Dyadic {
        self.piece_at(x).apply(x)
    }

    pub fn start_value(&self) -> Dyadic {
        self.pieces[0].apply(&Dyadic::zero())
    }

    pub fn end_value(&self) -> Dyadic {
        self.pieces.last().expect("chart has pieces").apply(&self.end)
    }

    fn piece_end(&self, i: usize) -> &Dyadic {
        self.pieces.get(i + 1).map_or(&self.end, |p| &p.left)
    }

    /// The unique `x in [0, end)` with `eval(x) = y`, if `y` lies in the image.
    pub fn preimage(&self, y: &Dyadic) -> Option<Dyadic> {
        if y < &self.start_value() || y >= &self.end_value() {
            return None;
        }
        let i = self.pieces.partition_point(|p| &p.apply(&p.left) <= y).saturating_sub(1);
        Some(self.pieces[i].solve(y))
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &Dyadic> {
        self.pieces.iter().skip(1).map(|p| &p.left)
    }

    /// Merges adjacent pieces carrying the same affine map.
    pub fn normalize(&mut self) {
        let mut out: Vec<Piece> = Vec::with_capacity(self.pieces.len());
        for p in self.pieces.drain(..) {
            match out.last() {
                Some(q) if q.same_affine(&p) => {}
                _ => out.push(p),
            }
        }
        self.pieces = out;
    }

    pub fn restrict(&self, end: &Dyadic) -> Chart {
        let end = end.min(&self.end).clone();
        let pieces = self.pieces.iter().filter(|p| p.left < end).cloned().collect();
        Chart { pieces, end }
    }

    pub fn map_offsets(&mut self, delta: &Dyadic) {
        for p in &mut self.pieces {
            p.offset = &p.offset + delta;
        }
    }

    /// `outer ∘ inner`. With `periodic`, `outer` is extended by
    /// `outer(y + m) = outer(y) + m` for integers `m`; otherwise the result is
    /// cut where `inner` leaves `[0, outer.end)`.
    pub fn compose(outer: &Chart, periodic: bool, inner: &Chart) -> Chart {
        let mut end = inner.end.clone();
        let mut cuts: Vec<Dyadic> = inner.pieces.iter().map(|p| p.left.clone()).collect();
        let (lo, hi) = (inner.start_value(), inner.end_value());
        let shifts: Vec<Dyadic> = if periodic {
            let (a, b) = (lo.floor(), hi.floor());
            num_iter(a, b).collect()
        } else {
            vec![Dyadic::zero()]
        };
        for m in &shifts {
            for t in outer.pieces.iter().map(|p| &p.left) {
                if let Some(x) = inner.preimage(&(t + m)) {
                    cuts.push(x);
                }
            }
        }
        if !periodic {
            if let Some(x) = inner.preimage(&outer.end) {
                end = end.min(x);
            }
        }
        cuts.retain(|c| c < &end);
        cuts.sort();
        cuts.dedup();
        let pieces = cuts
            .into_iter()
            .map(|x| {
                let q = inner.piece_at(&x);
                let y = q.apply(&x);
                let m = if periodic { Dyadic::new(y.floor(), 0) } else { Dyadic::zero() };
                let p = outer.piece_at(&(&y - &m));
                let offset = (&q.offset - &m).mul_pow2(p.slope_exp) + &p.offset + &m;
                Piece::new(x, p.slope_exp + q.slope_exp, offset)
            })
            .collect();
        let mut c = Chart { pieces, end };
        c.normalize();
        c
    }

    /// Inverse of a chart with `eval(0) = 0`, defined on `[0, end_value)`.
    pub fn invert(&self) -> Chart {
        debug_assert!(self.start_value().is_zero());
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                Piece::new(p.apply(&p.left), -p.slope_exp, (-&p.offset).mul_pow2(-p.slope_exp))
            })
            .collect();
        Chart { pieces, end: self.end_value() }
    }

    /// Splits the piece containing `x` so that `x` becomes a piece boundary.
    pub fn split_at(&mut self, x: &Dyadic) {
        if x <= &Dyadic::zero() || x >= &self.end {
            return;
        }
        let i = self.piece_index(x);
        if &self.pieces[i].left != x {
            let mut p = self.pieces[i].clone();
            p.left = x.clone();
            self.pieces.insert(i + 1, p);
        }
    }

    /// First point of `[0, min(ends))` where the two charts differ.
    pub fn first_difference(a: &Chart, b: &Chart) -> Option<Dyadic> {
        let end = a.end.clone().min(b.end.clone());
        let mut cuts: Vec<&Dyadic> =
            a.pieces.iter().chain(b.pieces.iter()).map(|p| &p.left).filter(|l| *l < &end).collect();
        cuts.sort();
        cuts.dedup();
        cuts.into_iter()
            .find(|x| !a.piece_at(x).same_affine(b.piece_at(x)))
            .cloned()
    }

    /// Iterates `(piece, right end)`.
    pub fn spans(&self) -> impl Iterator<Item = (&Piece, &Dyadic)> {
        (0..self.pieces.len()).map(move |i| (&self.pieces[i], self.piece_end(i)))
    }
}

fn num_iter(
    a: num_bigint::BigInt,
    b: num_bigint::BigInt,
) -> impl Iterator<Item = Dyadic> {
    let mut cur = a;
    std::iter::from_fn(move || {
        if cur > b {
            None
        } else {
            let d = Dyadic::new(cur.clone(), 0);
            cur += 1;
            Some(d)
        }
    })
}
