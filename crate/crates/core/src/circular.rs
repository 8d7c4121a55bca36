//! Cochains on tuples of circle points, evaluated pointwise.
//!
//! The circle orbit is infinite, so a cochain is an expression tree built from
//! the orientation functions `f_k` and a few operations, not a stored table.
//! Every value is an exact rational.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::dyadic::{CirclePoint, Dyadic};
use crate::pl::{membership, Domain, Membership, PLMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("orientation sign ill-defined in odd degree {0}: a {1}-cycle is an odd permutation")]
    OddDegree(usize, usize),
    #[error("cochain of degree {degree} expects {} points, got {got}", degree + 1)]
    Arity { degree: usize, got: usize },
    #[error("cup of degrees {0} and {1} needs both factors evaluated on overlapping faces")]
    CupDegree(usize, usize),
    #[error("pullback element {index} is not in T: {reason}")]
    NotInT { index: usize, reason: String },
    #[error("degree {0} not supported here")]
    Degree(usize),
}

type Evaluator = Arc<dyn Fn(&[CirclePoint]) -> BigRational + Send + Sync>;

/// The expression tree of a [`TupleCochain`].
#[derive(Clone)]
pub enum Rule {
    /// The orientation function `f_k` (`k` even).
    OrientFk(usize),
    /// Constant value on every tuple of the given degree.
    Constant { degree: usize, value: BigRational },
    /// Degree 1: `1` if `s_0 < s_1` as representatives in `[0, 1)`, else `0`.
    LessIndicator,
    Cup(Box<TupleCochain>, Box<TupleCochain>),
    Alt(Box<TupleCochain>),
    Delta(Box<TupleCochain>),
    /// `Σ λ_i c_i` over cochains of one degree.
    Linear(Vec<(BigRational, TupleCochain)>),
    Custom { degree: usize, name: String, eval: Evaluator },
}

#[derive(Clone)]
pub struct TupleCochain {
    degree: usize,
    rule: Rule,
}

impl fmt::Debug for TupleCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for TupleCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            Rule::OrientFk(k) => write!(f, "f{k}"),
            Rule::Constant { degree, value } => write!(f, "const{degree}({value})"),
            Rule::LessIndicator => write!(f, "less"),
            Rule::Cup(a, b) => write!(f, "({a} ∪ {b})"),
            Rule::Alt(a) => write!(f, "alt({a})"),
            Rule::Delta(a) => write!(f, "δ({a})"),
            Rule::Linear(terms) => {
                let parts: Vec<String> = terms.iter().map(|(l, c)| format!("{l}·{c}")).collect();
                write!(f, "[{}]", parts.join(" + "))
            }
            Rule::Custom { name, .. } => write!(f, "{name}"),
        }
    }
}

impl TupleCochain {
    pub fn orient(k: usize) -> Result<Self, CochainError> {
        if k % 2 == 1 {
            return Err(CochainError::OddDegree(k, k + 1));
        }
        Ok(TupleCochain { degree: k, rule: Rule::OrientFk(k) })
    }

    pub fn constant(degree: usize, value: BigRational) -> Self {
        TupleCochain { degree, rule: Rule::Constant { degree, value } }
    }

    pub fn zero(degree: usize) -> Self {
        TupleCochain::constant(degree, BigRational::zero())
    }

    pub fn less_indicator() -> Self {
        TupleCochain { degree: 1, rule: Rule::LessIndicator }
    }

    pub fn custom(
        degree: usize,
        name: impl Into<String>,
        eval: impl Fn(&[CirclePoint]) -> BigRational + Send + Sync + 'static,
    ) -> Self {
        TupleCochain { degree, rule: Rule::Custom { degree, name: name.into(), eval: Arc::new(eval) } }
    }

    pub fn linear(terms: Vec<(BigRational, TupleCochain)>) -> Result<Self, CochainError> {
        let degree = terms.first().map(|t| t.1.degree).ok_or(CochainError::Degree(0))?;
        if let Some((_, c)) = terms.iter().find(|t| t.1.degree != degree) {
            return Err(CochainError::Degree(c.degree));
        }
        Ok(TupleCochain { degree, rule: Rule::Linear(terms) })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn eval(&self, t: &[CirclePoint]) -> Result<BigRational, CochainError> {
        if t.len() != self.degree + 1 {
            return Err(CochainError::Arity { degree: self.degree, got: t.len() });
        }
        Ok(self.eval_unchecked(t))
    }

    fn eval_unchecked(&self, t: &[CirclePoint]) -> BigRational {
        match &self.rule {
            Rule::OrientFk(_) => BigRational::from_integer(orientation_sign(t).into()),
            Rule::Constant { value, .. } => value.clone(),
            Rule::LessIndicator => {
                if t[0] < t[1] {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }
            Rule::Cup(a, b) => {
                let front = a.eval_unchecked(&t[..=a.degree]);
                if front.is_zero() {
                    return front;
                }
                front * b.eval_unchecked(&t[a.degree..])
            }
            Rule::Alt(a) => {
                let n = t.len();
                let mut buf = t.to_vec();
                let mut total = BigRational::zero();
                for (perm, sign) in signed_permutations(n) {
                    for (slot, &i) in buf.iter_mut().zip(&perm) {
                        *slot = t[i].clone();
                    }
                    let v = a.eval_unchecked(&buf);
                    if sign > 0 {
                        total += v;
                    } else {
                        total -= v;
                    }
                }
                total / BigRational::from_integer(factorial(n))
            }
            Rule::Delta(a) => {
                let mut total = BigRational::zero();
                let mut face = Vec::with_capacity(t.len() - 1);
                for i in 0..t.len() {
                    face.clear();
                    face.extend(t.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()));
                    let v = a.eval_unchecked(&face);
                    if i % 2 == 0 {
                        total += v;
                    } else {
                        total -= v;
                    }
                }
                total
            }
            Rule::Linear(terms) => terms.iter().map(|(l, c)| l * c.eval_unchecked(t)).sum(),
            Rule::Custom { eval, .. } => eval(t),
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// All permutations of `0..n` with their signs, generated by Heap's algorithm
/// (consecutive permutations differ by one transposition).
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(factorial(n).try_into().unwrap_or(0));
    let mut sign = 1i8;
    let mut c = vec![0usize; n];
    out.push((perm.clone(), sign));
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            out.push((perm.clone(), sign));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Sign of the permutation sorting `t`, or 0 on a repetition.
fn orientation_sign(t: &[CirclePoint]) -> i32 {
    let mut sign = 1;
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            match t[i].cmp(&t[j]) {
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

/// `f_k(t)`: the sign of a permutation putting `t` in circular order, 0 on
/// tuples with a repetition. Only defined for even `k`, where the rotations of
/// a circular order differ by even `(k+1)`-cycles.
pub fn orient_fk(k: usize, t: &[CirclePoint]) -> Result<BigRational, CochainError> {
    TupleCochain::orient(k)?.eval(t)
}

/// Projection onto alternating cochains, with the `1/(k+1)!` normalization.
pub fn alt(c: &TupleCochain) -> TupleCochain {
    TupleCochain { degree: c.degree, rule: Rule::Alt(Box::new(c.clone())) }
}

/// Front-face/back-face cup product.
pub fn cup(a: &TupleCochain, b: &TupleCochain) -> TupleCochain {
    TupleCochain { degree: a.degree + b.degree, rule: Rule::Cup(Box::new(a.clone()), Box::new(b.clone())) }
}

/// Simplicial coboundary: alternating sum over omitted faces.
pub fn delta_tuple(c: &TupleCochain) -> TupleCochain {
    TupleCochain { degree: c.degree + 1, rule: Rule::Delta(Box::new(c.clone())) }
}

/// `k`-fold cup power of `c` (`k >= 1`).
pub fn cup_power(c: &TupleCochain, k: usize) -> TupleCochain {
    assert!(k >= 1);
    (1..k).fold(c.clone(), |acc, _| cup(c, &acc))
}

/// The tuple `(0, 1/2^m, 2/2^m, …)` of `n` points, circularly ordered.
fn standard_ordered_tuple(n: usize) -> Vec<CirclePoint> {
    let m = usize::BITS - n.leading_zeros();
    (0..n).map(|i| CirclePoint::reduce(&Dyadic::new(i as i64, m))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltCupIdentity {
    pub k: usize,
    /// `alt(f_2^{∪k}) / f_{2k}`, measured by enumeration.
    pub coefficient: BigRational,
    /// `2^k k! / (2k)!`.
    pub expected: BigRational,
    /// `alt(f_2 ∪ f_{2k-2}) / f_{2k}` (only for `k >= 2`).
    pub step_coefficient: Option<BigRational>,
    /// `1 / (2k - 1)` (only for `k >= 2`).
    pub step_expected: Option<BigRational>,
    /// Proportionality checked on every tuple of the test family.
    pub proportional: bool,
}

impl AltCupIdentity {
    pub fn pass(&self) -> bool {
        self.proportional && self.coefficient == self.expected && self.step_coefficient == self.step_expected
    }
}

/// Brute-force check of `alt(f_2^{∪k}) = (2^k k!/(2k)!)·f_{2k}` and of the
/// inductive step `alt(f_2 ∪ f_{2k-2}) = f_{2k}/(2k-1)`, by full permutation
/// enumeration on circularly ordered tuples and on a few shuffled ones.
pub fn verify_alt_cup_identity(k: usize) -> Result<AltCupIdentity, CochainError> {
    if !(1..=3).contains(&k) {
        return Err(CochainError::Degree(k));
    }
    let f2 = TupleCochain::orient(2)?;
    let f2k = TupleCochain::orient(2 * k)?;
    let lhs = alt(&cup_power(&f2, k));
    let base = standard_ordered_tuple(2 * k + 1);
    let coefficient = lhs.eval(&base)? / f2k.eval(&base)?;
    let expected = BigRational::new(
        BigInt::from(2).pow(k as u32) * factorial(k),
        factorial(2 * k),
    );
    let (step_coefficient, step_expected, step) = if k >= 2 {
        let step = alt(&cup(&f2, &TupleCochain::orient(2 * k - 2)?));
        let c = step.eval(&base)? / f2k.eval(&base)?;
        (Some(c.clone()), Some(BigRational::new(1.into(), BigInt::from(2 * k - 1))), Some((step, c)))
    } else {
        (None, None, None)
    };
    // proportionality on rotated, reflected and transposed variants, and on a
    // tuple with a repetition
    let mut family = vec![base.clone()];
    let mut rotated = base.clone();
    rotated.rotate_left(1);
    family.push(rotated);
    family.push(base.iter().rev().cloned().collect());
    let mut swapped = base.clone();
    swapped.swap(0, 2);
    family.push(swapped);
    let mut repeated = base.clone();
    repeated[1] = repeated[0].clone();
    family.push(repeated);
    let mut proportional = true;
    for t in &family {
        let f = f2k.eval(t)?;
        proportional &= lhs.eval(t)? == &coefficient * &f;
        if let Some((step, c)) = &step {
            proportional &= step.eval(t)? == c * &f;
        }
    }
    Ok(AltCupIdentity { k, coefficient, expected, step_coefficient, step_expected, proportional })
}

/// `(γ_0, …, γ_k) ↦ c(γ_0 x_0, …, γ_k x_0)`.
pub fn pullback(c: &TupleCochain, x0: &CirclePoint, gammas: &[PLMap]) -> Result<BigRational, CochainError> {
    for (index, g) in gammas.iter().enumerate() {
        if g.domain() != Domain::Circle {
            return Err(CochainError::NotInT { index, reason: "interval map".into() });
        }
        let report = membership(&g.to_spec(), Membership::T);
        if let Some(v) = report.violations.first() {
            return Err(CochainError::NotInT { index, reason: v.to_string() });
        }
    }
    let points: Vec<CirclePoint> = gammas.iter().map(|g| g.act(x0)).collect();
    c.eval(&points)
}

/// The orientation cocycle `orc(γ_0, γ_1, γ_2) = f_2(γ_0 x_0, γ_1 x_0, γ_2 x_0)`.
pub fn orientation_cocycle(x0: &CirclePoint, gammas: &[PLMap; 3]) -> Result<BigRational, CochainError> {
    pullback(&TupleCochain::orient(2)?, x0, gammas)
}

/// Coboundary of the orientation cocycle at the homogeneous tuple
/// `(1, g_1, g_1 g_2, g_1 g_2 g_3)`.
pub fn orc_coboundary(x0: &CirclePoint, g: &[PLMap; 3]) -> Result<BigRational, CochainError> {
    let id = PLMap::identity(Domain::Circle);
    let h1 = g[0].clone();
    let h2 = h1.compose(&g[1]);
    let h3 = h2.compose(&g[2]);
    let homog = [id, h1, h2, h3];
    let mut total = BigRational::zero();
    for i in 0..4 {
        let face: Vec<PLMap> = homog.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, m)| m.clone()).collect();
        let v = pullback(&TupleCochain::orient(2)?, x0, &face)?;
        total += if i % 2 == 0 { v } else { -v };
    }
    Ok(total)
}

/// Largest absolute value of `c` over a list of tuples.
pub fn sup_on(c: &TupleCochain, tuples: &[Vec<CirclePoint>]) -> Result<BigRational, CochainError> {
    let mut best = BigRational::zero();
    for t in tuples {
        let v = c.eval(t)?.abs();
        if v > best {
            best = v;
        }
    }
    Ok(best)
}
