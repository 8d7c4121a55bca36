//! Minimal ℓ¹ primitives of boundaries and minimal ℓ∞ primitives of
//! invariant cocycles over finite groups, by linear programming.
//!
//! The solver is a dense two-phase simplex with Bland's rule, generic over
//! the scalar: `f64` with tolerance `1e-9`, or exact `BigRational`. Every
//! solve returns primal and dual solutions, and the certificate is recomputed
//! from the original data rather than read off the tableau.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::group::{
    boundary, coboundary, index_tuple, random_invariant_cochain, to_inhomogeneous, tuple_index, Chain, Cochain,
    FiniteGroup, GroupError,
};
use crate::rng::SplitMix64;

/// Float tolerance for pivoting, feasibility and certification.
pub const TOLERANCE: f64 = 1e-9;
/// Largest LP (in variables) solved in exact arithmetic.
pub const MAX_EXACT_VARIABLES: usize = 10_000;
/// Largest dense tableau (rows × columns) we allocate.
pub const MAX_TABLEAU_CELLS: usize = 40_000_000;
const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("pivot limit reached")]
    PivotLimit,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("input chain is not a boundary: {0}")]
    NotABoundary(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Arithmetic the simplex needs.
pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;
    fn from_rational(r: &BigRational) -> Self;
    fn as_f64(&self) -> f64;
    /// The exact value, for exact scalars.
    fn to_exact(&self) -> Option<BigRational>;
    /// Greater than zero beyond tolerance.
    fn is_pos(&self) -> bool;
    /// Less than zero beyond tolerance.
    fn is_neg(&self) -> bool;
    fn near_zero(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
    /// Snaps round-off to zero.
    fn clean(&mut self) {}
    fn abs_val(&self) -> Self {
        if self.is_neg() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn to_exact(&self) -> Option<BigRational> {
        None
    }

    fn is_pos(&self) -> bool {
        *self > TOLERANCE
    }

    fn is_neg(&self) -> bool {
        *self < -TOLERANCE
    }

    fn clean(&mut self) {
        if self.abs() < 1e-13 {
            *self = 0.0;
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_exact(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn is_pos(&self) -> bool {
        self.is_positive()
    }

    fn is_neg(&self) -> bool {
        self.is_negative()
    }
}

/// `min c·x  s.t.  A x = b, x ≥ 0`.
#[derive(Debug, Clone)]
pub struct StandardLp<S> {
    pub a: Vec<Vec<S>>,
    pub b: Vec<S>,
    pub c: Vec<S>,
}

/// Optimal primal `x`, dual `y` (with `yᵀA ≤ c`) and objective value.
#[derive(Debug, Clone)]
pub struct LpOutcome<S> {
    pub x: Vec<S>,
    pub y: Vec<S>,
    pub value: S,
    pub pivots: usize,
}

struct Tableau<S> {
    rows: Vec<Vec<S>>,
    basis: Vec<usize>,
    n: usize,
    pivots: usize,
}

impl<S: Scalar> Tableau<S> {
    fn rhs(&self) -> usize {
        self.rows[0].len() - 1
    }

    fn pivot(&mut self, r: usize, k: usize) {
        let p = self.rows[r][k].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[k].is_zero() {
                continue;
            }
            let f = row[k].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                    v.clean();
                }
            }
            row[k] = S::zero();
        }
        self.basis[r] = k;
        self.pivots += 1;
    }

    /// Runs Bland's rule with columns `0..allowed` eligible to enter.
    fn optimize(&mut self, cost: &dyn Fn(usize) -> S, allowed: usize) -> Result<(), LpError> {
        let rhs = self.rhs();
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(LpError::PivotLimit);
            }
            let cb: Vec<S> = self.basis.iter().map(|&j| cost(j)).collect();
            let mut is_basic = vec![false; rhs];
            for &j in &self.basis {
                is_basic[j] = true;
            }
            let entering = (0..allowed).find(|&k| {
                if is_basic[k] {
                    return false;
                }
                let mut d = cost(k);
                for (row, c) in self.rows.iter().zip(&cb) {
                    if !row[k].is_zero() && !c.is_zero() {
                        d = d - c.clone() * row[k].clone();
                    }
                }
                d.is_neg()
            });
            let Some(k) = entering else { return Ok(()) };
            let mut leave: Option<(usize, S)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[k].is_pos() {
                    continue;
                }
                let ratio = row[rhs].clone() / row[k].clone();
                let better = match &leave {
                    None => true,
                    Some((best_r, best)) => {
                        let diff = best.clone() - ratio.clone();
                        diff.is_pos() || (diff.near_zero() && self.basis[r] < self.basis[*best_r])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else { return Err(LpError::Unbounded) };
            self.pivot(r, k);
        }
    }
}

/// Two-phase simplex. Rows are sign-normalized so `b ≥ 0`; phase one uses one
/// artificial per row, which are kept (never re-entering) so the dual can be
/// read off their columns. Redundant rows are dropped after phase one.
pub fn solve<S: Scalar>(lp: &StandardLp<S>) -> Result<LpOutcome<S>, LpError> {
    let m = lp.b.len();
    let n = lp.c.len();
    if m == 0 {
        // no constraints: x = 0 is optimal iff c ≥ 0
        if lp.c.iter().any(Scalar::is_neg) {
            return Err(LpError::Unbounded);
        }
        return Ok(LpOutcome { x: vec![S::zero(); n], y: vec![], value: S::zero(), pivots: 0 });
    }
    if m.saturating_mul(n + m + 1) > MAX_TABLEAU_CELLS {
        return Err(LpError::TooLarge(format!("{m} x {} tableau", n + m + 1)));
    }
    let signs: Vec<S> = lp.b.iter().map(|v| if v.is_neg() { -S::one() } else { S::one() }).collect();
    let rows: Vec<Vec<S>> = (0..m)
        .map(|i| {
            let s = &signs[i];
            let mut row: Vec<S> = lp.a[i].iter().map(|v| v.clone() * s.clone()).collect();
            row.extend((0..m).map(|j| if i == j { S::one() } else { S::zero() }));
            row.push(lp.b[i].clone() * s.clone());
            row
        })
        .collect();
    let mut t = Tableau { rows, basis: (n..n + m).collect(), n, pivots: 0 };

    t.optimize(&|j| if j >= n { S::one() } else { S::zero() }, n)?;
    let rhs = t.rhs();
    let infeasibility = t
        .basis
        .iter()
        .zip(&t.rows)
        .filter(|(&j, _)| j >= n)
        .fold(S::zero(), |acc, (_, row)| acc + row[rhs].clone());
    if infeasibility.is_pos() {
        return Err(LpError::Infeasible);
    }
    for r in (0..t.rows.len()).rev() {
        if t.basis[r] < n {
            continue;
        }
        match (0..n).find(|&k| !t.rows[r][k].near_zero() && !t.basis.contains(&k)) {
            Some(k) => t.pivot(r, k),
            None => {
                t.rows.remove(r);
                t.basis.remove(r);
            }
        }
    }
    if t.rows.is_empty() {
        // every row redundant (e.g. A = 0, b = 0)
        if lp.c.iter().any(Scalar::is_neg) {
            return Err(LpError::Unbounded);
        }
        return Ok(LpOutcome { x: vec![S::zero(); n], y: vec![S::zero(); m], value: S::zero(), pivots: t.pivots });
    }
    let cost = |j: usize| if j < n { lp.c[j].clone() } else { S::zero() };
    t.optimize(&cost, n)?;

    let mut x = vec![S::zero(); n];
    for (row, &j) in t.rows.iter().zip(&t.basis) {
        if j < n {
            x[j] = row[rhs].clone();
        }
    }
    let y = (0..m)
        .map(|i| {
            let v = t
                .rows
                .iter()
                .zip(&t.basis)
                .fold(S::zero(), |acc, (row, &j)| acc + cost(j) * row[t.n + i].clone());
            v * signs[i].clone()
        })
        .collect();
    let value = x.iter().zip(&lp.c).fold(S::zero(), |acc, (xi, ci)| acc + xi.clone() * ci.clone());
    Ok(LpOutcome { x, y, value, pivots: t.pivots })
}

/// Optimality evidence recomputed from the original LP data.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LpCertificate {
    pub primal_value: f64,
    pub dual_value: f64,
    pub gap: f64,
    pub feasibility_residual: f64,
    /// Largest violation of `yᵀA ≤ c`.
    pub dual_residual: f64,
    pub exact: bool,
    pub certified: bool,
}

impl LpCertificate {
    pub fn compute<S: Scalar>(lp: &StandardLp<S>, out: &LpOutcome<S>) -> Self {
        let mut residual = S::zero();
        for (row, bi) in lp.a.iter().zip(&lp.b) {
            let ax = row.iter().zip(&out.x).fold(S::zero(), |acc, (a, x)| acc + a.clone() * x.clone());
            let r = (ax - bi.clone()).abs_val();
            if r > residual {
                residual = r;
            }
        }
        let neg_x = out.x.iter().filter(|v| v.is_neg()).map(Scalar::abs_val).fold(S::zero(), |a, b| if b > a { b } else { a });
        if neg_x > residual {
            residual = neg_x;
        }
        let mut dual_residual = S::zero();
        for (k, ck) in lp.c.iter().enumerate() {
            let ya = lp.a.iter().zip(&out.y).fold(S::zero(), |acc, (row, y)| acc + row[k].clone() * y.clone());
            let v = ya - ck.clone();
            if v > dual_residual {
                dual_residual = v;
            }
        }
        let primal = out.x.iter().zip(&lp.c).fold(S::zero(), |acc, (x, c)| acc + x.clone() * c.clone());
        let dual = out.y.iter().zip(&lp.b).fold(S::zero(), |acc, (y, b)| acc + y.clone() * b.clone());
        let gap = (primal.clone() - dual.clone()).abs_val();
        let certified = if S::EXACT {
            gap.is_zero() && residual.is_zero() && dual_residual.is_zero()
        } else {
            gap.as_f64() <= TOLERANCE && residual.as_f64() <= TOLERANCE && dual_residual.as_f64() <= TOLERANCE
        };
        LpCertificate {
            primal_value: primal.as_f64(),
            dual_value: dual.as_f64(),
            gap: gap.as_f64(),
            feasibility_residual: residual.as_f64(),
            dual_residual: dual_residual.as_f64(),
            exact: S::EXACT,
            certified,
        }
    }

    /// Folds in a residual measured on the problem's own terms.
    fn with_residual(mut self, r: f64) -> Self {
        self.feasibility_residual = self.feasibility_residual.max(r);
        if self.exact {
            self.certified &= r == 0.0;
        } else {
            self.certified &= r <= TOLERANCE;
        }
        self
    }
}

/// Sparse integer matrix of `∂_{n}`: column `j` is the boundary of the
/// `j`-th degree-`n` tuple, as `(row, coefficient)` pairs over degree-`n-1`
/// tuples.
pub fn boundary_columns(group: &FiniteGroup, n: usize) -> Result<Vec<Vec<(usize, BigRational)>>, LpError> {
    let order = group.order();
    let cols = checked_pow(order, n)?;
    Ok((0..cols)
        .map(|j| {
            let z = boundary(group, &Chain::basis(index_tuple(order, n, j)));
            z.terms().map(|(t, v)| (tuple_index(order, t), v.clone())).collect()
        })
        .collect())
}

fn checked_pow(order: usize, n: usize) -> Result<usize, LpError> {
    let mut v = 1usize;
    for _ in 0..n {
        v = v
            .checked_mul(order)
            .filter(|&v| v <= MAX_TABLEAU_CELLS)
            .ok_or_else(|| LpError::TooLarge(format!("{order}^{n} tuples")))?;
    }
    Ok(v)
}

fn check_exact_size<S: Scalar>(vars: usize) -> Result<(), LpError> {
    if S::EXACT && vars > MAX_EXACT_VARIABLES {
        return Err(LpError::TooLarge(format!(
            "{vars} variables exceed the exact-mode cap of {MAX_EXACT_VARIABLES}; use float mode"
        )));
    }
    Ok(())
}

/// A minimal ℓ¹ primitive `c` with `∂c = z`.
#[derive(Debug, Clone)]
pub struct L1Primitive<S> {
    /// Nonzero coefficients of `c` by degree-`(n+1)` tuple.
    pub coefficients: Vec<(Vec<usize>, S)>,
    /// `‖c‖₁`.
    pub value: S,
    pub certificate: LpCertificate,
}

/// Solves `min ‖c‖₁  s.t.  ∂_{n+1} c = z`, splitting `c = c⁺ − c⁻`.
pub fn min_l1_primitive<S: Scalar>(group: &FiniteGroup, z: &Chain) -> Result<L1Primitive<S>, LpError> {
    let n = z.degree();
    if n >= 1 && !boundary(group, z).is_zero() {
        return Err(LpError::NotABoundary("∂z ≠ 0".into()));
    }
    let order = group.order();
    let rows = checked_pow(order, n)?;
    let cols = boundary_columns(group, n + 1)?;
    check_exact_size::<S>(2 * cols.len())?;
    let mut a = vec![vec![S::zero(); 2 * cols.len()]; rows];
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col {
            let v = S::from_rational(v);
            a[*i][j] = v.clone();
            a[*i][cols.len() + j] = -v;
        }
    }
    let mut b = vec![S::zero(); rows];
    for (t, v) in z.terms() {
        b[tuple_index(order, t)] = S::from_rational(v);
    }
    let lp = StandardLp { a, b, c: vec![S::one(); 2 * cols.len()] };
    let out = solve(&lp).map_err(|e| match e {
        LpError::Infeasible => LpError::NotABoundary("no chain has this boundary".into()),
        e => e,
    })?;
    let m = cols.len();
    let values: Vec<S> = (0..m).map(|j| out.x[j].clone() - out.x[m + j].clone()).collect();
    // independent residual ‖∂c − z‖∞ through the column lists
    let mut dc = vec![S::zero(); rows];
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col {
            dc[*i] = dc[*i].clone() + S::from_rational(v) * values[j].clone();
        }
    }
    let residual = dc.iter().zip(&lp.b).map(|(x, y)| (x.clone() - y.clone()).abs_val().as_f64()).fold(0.0, f64::max);
    let value = values.iter().fold(S::zero(), |acc, v| acc + v.abs_val());
    let certificate = LpCertificate::compute(&lp, &out).with_residual(residual);
    let coefficients = values
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.near_zero())
        .map(|(j, v)| (index_tuple(order, n + 1, j), v))
        .collect();
    Ok(L1Primitive { coefficients, value, certificate })
}

/// A minimal ℓ∞ primitive of an invariant cocycle, in inhomogeneous form.
#[derive(Debug, Clone)]
pub struct LinfPrimitive<S> {
    /// Values over `Γ^{n-1}` (inhomogeneous coordinates).
    pub values: Vec<S>,
    /// `‖b‖∞`.
    pub value: S,
    pub certificate: LpCertificate,
}

/// Solves `min ‖b‖∞  s.t.  δb = c` over invariant `(n-1)`-cochains, as
/// `min t` subject to `D(p − q) = c`, `p_i + q_i + s_i = t`, all variables
/// nonnegative. In inhomogeneous coordinates `δ^{n-1}` is the transpose of
/// `∂_n`.
pub fn min_linf_primitive<S: Scalar>(group: &FiniteGroup, c: &Cochain) -> Result<LinfPrimitive<S>, LpError> {
    let n = c.degree();
    if n == 0 {
        return Err(GroupError::DegreeMismatch { expected: 1, got: 0 }.into());
    }
    if !coboundary(group, c)?.is_zero() {
        return Err(GroupError::NotCocycle.into());
    }
    let target = to_inhomogeneous(group, c)?;
    let cols = boundary_columns(group, n)?; // one per degree-n tuple = constraint row
    let nb = checked_pow(group.order(), n - 1)?;
    let vars = 3 * nb + 1;
    check_exact_size::<S>(vars)?;
    let rows = cols.len() + nb;
    let tcol = 3 * nb;
    let mut a = vec![vec![S::zero(); vars]; rows];
    let mut b = vec![S::zero(); rows];
    for (r, col) in cols.iter().enumerate() {
        for (i, v) in col {
            let v = S::from_rational(v);
            a[r][*i] = a[r][*i].clone() + v.clone();
            a[r][nb + *i] = a[r][nb + *i].clone() - v;
        }
        b[r] = S::from_rational(&target.values[r]);
    }
    for i in 0..nb {
        let row = &mut a[cols.len() + i];
        row[i] = S::one();
        row[nb + i] = S::one();
        row[2 * nb + i] = S::one();
        row[tcol] = -S::one();
    }
    let mut cost = vec![S::zero(); vars];
    cost[tcol] = S::one();
    let lp = StandardLp { a, b, c: cost };
    let out = solve(&lp)?;
    let values: Vec<S> = (0..nb).map(|i| out.x[i].clone() - out.x[nb + i].clone()).collect();
    let mut residual = 0.0f64;
    for (r, col) in cols.iter().enumerate() {
        let db = col.iter().fold(S::zero(), |acc, (i, v)| acc + S::from_rational(v) * values[*i].clone());
        residual = residual.max((db - S::from_rational(&target.values[r])).abs_val().as_f64());
    }
    let value = values.iter().fold(S::zero(), |acc, v| {
        let a = v.abs_val();
        if a > acc {
            a
        } else {
            acc
        }
    });
    let certificate = LpCertificate::compute(&lp, &out).with_residual(residual);
    Ok(LinfPrimitive { values, value, certificate })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// A sampled lower bound, never the constant itself.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Estimate {
    pub group: String,
    pub degree: usize,
    pub mode: Mode,
    pub bound: f64,
    /// Exact value of the bound in exact mode, as `p/q`.
    pub bound_exact: Option<String>,
    pub certified: bool,
    /// Largest duality gap over the samples.
    pub gap: f64,
    pub samples: usize,
    pub nonzero_samples: usize,
    pub note: Option<String>,
}

struct Running {
    best: Option<BigRational>,
    best_f: f64,
    certified: bool,
    gap: f64,
    nonzero: usize,
}

impl Running {
    fn new() -> Self {
        Running { best: None, best_f: 0.0, certified: true, gap: 0.0, nonzero: 0 }
    }

    fn push<S: Scalar>(&mut self, numerator: &S, denominator: &BigRational, cert: &LpCertificate) {
        self.nonzero += 1;
        self.certified &= cert.certified;
        self.gap = self.gap.max(cert.gap);
        let ratio_f = numerator.as_f64() / ToPrimitive::to_f64(denominator).unwrap_or(f64::NAN);
        if ratio_f > self.best_f {
            self.best_f = ratio_f;
        }
        if let Some(num) = numerator.to_exact() {
            let r = num / denominator;
            if self.best.as_ref().is_none_or(|b| &r > b) {
                self.best = Some(r);
            }
        }
    }

    fn finish(self, group: &FiniteGroup, degree: usize, mode: Mode, samples: usize, note: Option<String>) -> Estimate {
        let bound = match &self.best {
            Some(b) => ToPrimitive::to_f64(b).unwrap_or(f64::NAN),
            None => self.best_f,
        };
        let bound_exact = match mode {
            Mode::Exact => Some(self.best.unwrap_or_else(BigRational::zero).to_string()),
            Mode::Float => None,
        };
        Estimate {
            group: group.name().to_string(),
            degree,
            mode,
            bound,
            bound_exact,
            certified: self.certified,
            gap: self.gap,
            samples,
            nonzero_samples: self.nonzero,
            note,
        }
    }
}

/// Sample `i` of a run with seed `seed`; samples are independent streams so a
/// longer run extends a shorter one.
fn sample_rng(seed: u64, i: usize) -> SplitMix64 {
    SplitMix64::new(seed).fork(i as u64)
}

/// Random boundary `z = ∂w` of a chain `w` with coefficients in `{-1, 0, 1}`
/// on every degree-`(n+1)` tuple.
pub fn random_boundary(group: &FiniteGroup, n: usize, rng: &mut SplitMix64) -> Result<Chain, LpError> {
    let order = group.order();
    let count = checked_pow(order, n + 1)?;
    let mut w = Chain::zero(n + 1);
    for j in 0..count {
        let v = rng.trit();
        if v != 0 {
            w.add_term(index_tuple(order, n + 1, j), BigRational::from_integer(v.into()));
        }
    }
    Ok(boundary(group, &w))
}

/// Lower bound for the `(n, κ)`-UBC constant: the largest `min‖c‖₁ / ‖z‖₁`
/// over sampled nonzero boundaries `z`.
pub fn ubc_estimate(group: &FiniteGroup, n: usize, samples: usize, seed: u64, mode: Mode) -> Result<Estimate, LpError> {
    if n == 0 {
        return Err(GroupError::DegreeMismatch { expected: 1, got: 0 }.into());
    }
    let mut run = Running::new();
    for i in 0..samples {
        let z = random_boundary(group, n, &mut sample_rng(seed, i))?;
        if z.is_zero() {
            continue;
        }
        let norm = z.l1_norm();
        match mode {
            Mode::Exact => {
                let p = min_l1_primitive::<BigRational>(group, &z)?;
                run.push(&p.value, &norm, &p.certificate);
            }
            Mode::Float => {
                let p = min_l1_primitive::<f64>(group, &z)?;
                run.push(&p.value, &norm, &p.certificate);
            }
        }
    }
    Ok(run.finish(group, n, mode, samples, None))
}

/// Lower bound for the `n`-th vanishing modulus: the largest
/// `min‖b‖∞ / ‖c‖∞` over sampled nonzero invariant cocycles `c = δb₀`, `b₀`
/// with inhomogeneous values in `{-1, 0, 1}`.
pub fn modulus_estimate(group: &FiniteGroup, n: usize, samples: usize, seed: u64, mode: Mode) -> Result<Estimate, LpError> {
    if n == 0 {
        return Err(GroupError::DegreeMismatch { expected: 1, got: 0 }.into());
    }
    let mut run = Running::new();
    for i in 0..samples {
        let b0 = random_invariant_cochain(group, n - 1, &mut sample_rng(seed, i))?;
        let c = coboundary(group, &b0)?;
        if c.is_zero() {
            continue;
        }
        let norm = c.linf_norm();
        match mode {
            Mode::Exact => {
                let p = min_linf_primitive::<BigRational>(group, &c)?;
                run.push(&p.value, &norm, &p.certificate);
            }
            Mode::Float => {
                let p = min_linf_primitive::<f64>(group, &c)?;
                run.push(&p.value, &norm, &p.certificate);
            }
        }
    }
    let note = (n == 1).then(|| "every invariant 1-cocycle of a finite group is zero; no nonzero samples exist".to_string());
    Ok(run.finish(group, n, mode, samples, note))
}

/// The constant 2-cocycle `1 = δ(constant 1-cochain)`; its minimal primitive
/// is the constant itself, so it realizes ratio exactly 1.
pub fn constant_witness(group: &FiniteGroup) -> Result<(Cochain, LinfPrimitive<BigRational>), LpError> {
    let c = Cochain::constant(group, 2, BigRational::one())?;
    let p = min_linf_primitive::<BigRational>(group, &c)?;
    Ok((c, p))
}

#[cfg(test)]
mod tests;
