//! Bar complexes of finite groups.
//!
//! Chains are inhomogeneous: a basis element of degree `n` is a tuple
//! `(g_1, …, g_n)` and
//!
//! ```text
//! ∂(g_1..g_n) = (g_2..g_n) + Σ_{i=1}^{n-1} (-1)^i (.., g_i g_{i+1}, ..) + (-1)^n (g_1..g_{n-1})
//! ```
//!
//! Cochains are homogeneous: dense arrays over `Γ^{n+1}`, with the coboundary
//! given by omitting faces. An invariant homogeneous cochain corresponds to the
//! inhomogeneous function `(g_1..g_n) ↦ c(1, g_1, g_1 g_2, …, g_1⋯g_n)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rng::SplitMix64;

/// Largest group table we build.
pub const MAX_GROUP_ORDER: usize = 10_000;
/// Largest dense cochain array we allocate.
pub const MAX_COCHAIN_ENTRIES: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order {0} exceeds the cap of {MAX_GROUP_ORDER}")]
    TooLarge(usize),
    #[error("unknown group name {0:?} (expected C<n>, S<n> with n <= 5, or products like C2xC2)")]
    BadName(String),
    #[error("invalid group table: {0}")]
    Invalid(String),
    #[error("cochain of degree {degree} over a group of order {order} needs {order}^{} entries, over the cap of {MAX_COCHAIN_ENTRIES}", degree + 1)]
    CochainTooLarge { order: usize, degree: usize },
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("cochain is not invariant under the diagonal action")]
    NotInvariant,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
}

/// A finite group given by its multiplication table; elements are indices.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Builds a group from a multiplication table, checking the axioms.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Invalid("empty group".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        if table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(GroupError::Invalid("table has wrong shape".into()));
        }
        let m = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| GroupError::Invalid("no two-sided identity".into()))?;
        let mut inverse = vec![0; order];
        for (a, slot) in inverse.iter_mut().enumerate() {
            *slot = (0..order)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| GroupError::Invalid(format!("element {a} has no inverse")))?;
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(GroupError::Invalid(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.into(), order, table, identity, inverse })
    }

    /// `C_n`; element `i` is the `i`-th power of a generator.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Invalid("C0".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteGroup::from_table(format!("C{n}"), n, table)
    }

    /// `S_n` for `n <= 5`; elements are permutations in lexicographic order,
    /// multiplied as functions: `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > 5 {
            return Err(GroupError::BadName(format!("S{n}")));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            perms.push(p.clone());
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
            p.swap(i, j);
            p[i + 1..].reverse();
        }
        let index: BTreeMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let order = perms.len();
        let mut table = Vec::with_capacity(order * order);
        for s in &perms {
            for t in &perms {
                let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                table.push(index[&st]);
            }
        }
        FiniteGroup::from_table(format!("S{n}"), order, table)
    }

    /// `G × H`; the pair `(a, b)` has index `a·|H| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self, GroupError> {
        let order = g.order * h.order;
        if order > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let (a1, b1) = (x / h.order, x % h.order);
                let (a2, b2) = (y / h.order, y % h.order);
                table.push(g.mul(a1, a2) * h.order + h.mul(b1, b2));
            }
        }
        FiniteGroup::from_table(format!("{}x{}", g.name, h.name), order, table)
    }

    /// Parses `C<n>`, `S<n>` and `x`-separated products such as `C2xC2`.
    pub fn from_name(name: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::BadName(name.to_string());
        let factors: Vec<&str> = name.split('x').collect();
        let mut groups = Vec::with_capacity(factors.len());
        for f in &factors {
            let (kind, digits) = f.split_at(f.len().min(1));
            let n: usize = digits.parse().map_err(|_| bad())?;
            groups.push(match kind {
                "C" => FiniteGroup::cyclic(n).map_err(|e| if n == 0 { bad() } else { e })?,
                "S" => FiniteGroup::symmetric(n).map_err(|_| bad())?,
                _ => return Err(bad()),
            });
        }
        let mut it = groups.into_iter();
        let first = it.next().ok_or_else(bad)?;
        it.try_fold(first, |acc, g| FiniteGroup::product(&acc, &g))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let (mut base, mut k, mut acc) = (a, k, self.identity);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `g^-1 x g`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.inv(g), self.mul(x, g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }
}

/// Finitely supported rational combination of inhomogeneous `n`-tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    terms: BTreeMap<Vec<usize>, BigRational>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, terms: BTreeMap::new() }
    }

    pub fn basis(tuple: Vec<usize>) -> Self {
        let mut c = Chain::zero(tuple.len());
        c.add_term(tuple, BigRational::one());
        c
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Vec<usize>, BigRational)>) -> Self {
        let mut c = Chain::zero(degree);
        for (t, v) in terms {
            c.add_term(t, v);
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_term(&mut self, tuple: Vec<usize>, coeff: BigRational) {
        assert_eq!(tuple.len(), self.degree, "tuple length must equal the chain degree");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(tuple);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, tuple: &[usize]) -> BigRational {
        self.terms.get(tuple).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn l1_norm(&self) -> BigRational {
        self.terms.values().map(|v| v.abs()).sum()
    }

    pub fn scale(&self, s: &BigRational) -> Chain {
        Chain::from_terms(self.degree, self.terms.iter().map(|(t, v)| (t.clone(), v * s)))
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (t, v) in &other.terms {
            out.add_term(t.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Applies a map to every entry of every tuple.
    pub fn map_entries(&self, f: impl Fn(usize) -> usize) -> Chain {
        Chain::from_terms(self.degree, self.terms.iter().map(|(t, v)| (t.iter().map(|&x| f(x)).collect(), v.clone())))
    }

    /// Homogeneous form `(1, g_1, g_1 g_2, …)` of each basis tuple.
    pub fn to_homogeneous(&self, g: &FiniteGroup) -> Chain {
        Chain::from_terms(
            self.degree + 1,
            self.terms.iter().map(|(t, v)| {
                let mut h = vec![g.identity()];
                for &x in t {
                    h.push(g.mul(*h.last().expect("nonempty"), x));
                }
                (h, v.clone())
            }),
        )
    }

    /// Inverse of [`Chain::to_homogeneous`] on the coinvariants:
    /// `(t_0, …, t_n) ↦ (t_0^-1 t_1, …, t_{n-1}^-1 t_n)`.
    pub fn from_homogeneous(g: &FiniteGroup, homog: &Chain) -> Chain {
        assert!(homog.degree >= 1);
        Chain::from_terms(
            homog.degree - 1,
            homog.terms.iter().map(|(t, v)| (t.windows(2).map(|w| g.mul(g.inv(w[0]), w[1])).collect(), v.clone())),
        )
    }
}

/// The bar differential. `∂_1` and `∂_0` are zero.
pub fn boundary(g: &FiniteGroup, z: &Chain) -> Chain {
    let n = z.degree;
    let mut out = Chain::zero(n.saturating_sub(1));
    if n == 0 {
        return out;
    }
    for (t, v) in &z.terms {
        out.add_term(t[1..].to_vec(), v.clone());
        for i in 1..n {
            let mut face = Vec::with_capacity(n - 1);
            face.extend_from_slice(&t[..i - 1]);
            face.push(g.mul(t[i - 1], t[i]));
            face.extend_from_slice(&t[i + 1..]);
            out.add_term(face, if i % 2 == 0 { v.clone() } else { -v });
        }
        out.add_term(t[..n - 1].to_vec(), if n % 2 == 0 { v.clone() } else { -v });
    }
    out
}

/// Pushforward along `x ↦ g^-1 x g`.
pub fn conjugate_chain(group: &FiniteGroup, g: usize, z: &Chain) -> Chain {
    z.map_entries(|x| group.conj(g, x))
}

/// The conjugation homotopy
///
/// ```text
/// Θ(g_1..g_n) = Σ_{j=1}^{n+1} (-1)^{j+1} (g_1, …, g_{j-1}, g, g^-1 g_j g, …, g^-1 g_n g)
/// ```
///
/// satisfying `∂Θ + Θ∂ = γ_* - id` for `γ(x) = g^-1 x g`.
pub fn theta(group: &FiniteGroup, g: usize, z: &Chain) -> Chain {
    let n = z.degree;
    let mut out = Chain::zero(n + 1);
    for (t, v) in &z.terms {
        for j in 1..=n + 1 {
            let mut u = Vec::with_capacity(n + 1);
            u.extend_from_slice(&t[..j - 1]);
            u.push(g);
            u.extend(t[j - 1..].iter().map(|&x| group.conj(g, x)));
            out.add_term(u, if j % 2 == 1 { v.clone() } else { -v });
        }
    }
    out
}

/// `(preperiod, cycle)` of the sequence `k ↦ g^(2^k)`, `k = 0, 1, …`.
pub fn pow2_orbit(group: &FiniteGroup, g: usize) -> (Vec<usize>, Vec<usize>) {
    let mut seq = Vec::new();
    let mut seen = BTreeMap::new();
    let mut x = g;
    loop {
        if let Some(&start) = seen.get(&x) {
            let cycle = seq.split_off(start);
            return (seq, cycle);
        }
        seen.insert(x, seq.len());
        seq.push(x);
        x = group.mul(x, x);
    }
}

/// Dense homogeneous cochain on `Γ^{degree+1}`. Tuples are indexed in base
/// `|Γ|` with the first coordinate most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    order: usize,
    values: Vec<BigRational>,
    invariant: bool,
}

fn entries(order: usize, arity: usize) -> Option<usize> {
    let mut n = 1usize;
    for _ in 0..arity {
        n = n.checked_mul(order)?;
        if n > MAX_COCHAIN_ENTRIES {
            return None;
        }
    }
    Some(n)
}

/// Index of a tuple in a dense array over `Γ^len`.
pub fn tuple_index(order: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * order + x)
}

/// Inverse of [`tuple_index`].
pub fn index_tuple(order: usize, len: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; len];
    for slot in t.iter_mut().rev() {
        *slot = idx % order;
        idx /= order;
    }
    t
}

impl Cochain {
    pub fn from_fn(group: &FiniteGroup, degree: usize, mut f: impl FnMut(&[usize]) -> BigRational) -> Result<Self, GroupError> {
        let order = group.order();
        let n = entries(order, degree + 1).ok_or(GroupError::CochainTooLarge { order, degree })?;
        let values = (0..n).map(|i| f(&index_tuple(order, degree + 1, i))).collect();
        let mut c = Cochain { degree, order, values, invariant: false };
        c.invariant = c.check_invariant(group);
        Ok(c)
    }

    pub fn zero(group: &FiniteGroup, degree: usize) -> Result<Self, GroupError> {
        Cochain::from_fn(group, degree, |_| BigRational::zero())
    }

    pub fn constant(group: &FiniteGroup, degree: usize, value: BigRational) -> Result<Self, GroupError> {
        Cochain::from_fn(group, degree, |_| value.clone())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_invariant(&self) -> bool {
        self.invariant
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, t: &[usize]) -> &BigRational {
        &self.values[tuple_index(self.order, t)]
    }

    pub fn linf_norm(&self) -> BigRational {
        self.values.iter().map(|v| v.abs()).max().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Scans every tuple and every translate.
    pub fn check_invariant(&self, group: &FiniteGroup) -> bool {
        let len = self.degree + 1;
        (0..self.values.len()).all(|i| {
            let t = index_tuple(self.order, len, i);
            group.elements().all(|g| {
                let gt: Vec<usize> = t.iter().map(|&x| group.mul(g, x)).collect();
                self.values[tuple_index(self.order, &gt)] == self.values[i]
            })
        })
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.degree, self.order), (other.degree, other.order));
        Cochain {
            degree: self.degree,
            order: self.order,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
            invariant: self.invariant && other.invariant,
        }
    }

    pub fn scale(&self, s: &BigRational) -> Cochain {
        Cochain { values: self.values.iter().map(|v| v * s).collect(), ..self.clone() }
    }

    /// Evaluation on a chain of homogeneous tuples.
    pub fn pair(&self, z: &Chain) -> BigRational {
        assert_eq!(z.degree(), self.degree + 1);
        z.terms().map(|(t, v)| self.get(t) * v).sum()
    }
}

/// `(δc)(t_0..t_{n+1}) = Σ_i (-1)^i c(t_0..t̂_i..t_{n+1})`.
pub fn coboundary(group: &FiniteGroup, c: &Cochain) -> Result<Cochain, GroupError> {
    let order = c.order;
    let len = c.degree + 2;
    let n = entries(order, len).ok_or(GroupError::CochainTooLarge { order, degree: c.degree + 1 })?;
    let mut values = Vec::with_capacity(n);
    let mut face = Vec::with_capacity(len - 1);
    for idx in 0..n {
        let t = index_tuple(order, len, idx);
        let mut sum = BigRational::zero();
        for i in 0..len {
            face.clear();
            face.extend(t.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x));
            let v = &c.values[tuple_index(order, &face)];
            if i % 2 == 0 {
                sum += v;
            } else {
                sum -= v;
            }
        }
        values.push(sum);
    }
    debug_assert_eq!(order, group.order());
    Ok(Cochain { degree: c.degree + 1, order, values, invariant: c.invariant })
}

/// Inhomogeneous form of an invariant cochain: a dense array over `Γ^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InhomCochain {
    pub degree: usize,
    pub values: Vec<BigRational>,
}

impl InhomCochain {
    pub fn linf_norm(&self) -> BigRational {
        self.values.iter().map(|v| v.abs()).max().unwrap_or_else(BigRational::zero)
    }
}

/// `φ(g_1..g_n) = c(1, g_1, g_1 g_2, …)`.
pub fn to_inhomogeneous(group: &FiniteGroup, c: &Cochain) -> Result<InhomCochain, GroupError> {
    if !c.invariant {
        return Err(GroupError::NotInvariant);
    }
    let order = group.order();
    let n = entries(order, c.degree).ok_or(GroupError::CochainTooLarge { order, degree: c.degree })?;
    let values = (0..n)
        .map(|i| {
            let t = index_tuple(order, c.degree, i);
            let mut h = vec![group.identity()];
            for &x in &t {
                h.push(group.mul(*h.last().expect("nonempty"), x));
            }
            c.get(&h).clone()
        })
        .collect();
    Ok(InhomCochain { degree: c.degree, values })
}

/// `c(t_0..t_n) = φ(t_0^-1 t_1, …, t_{n-1}^-1 t_n)`; always invariant.
pub fn from_inhomogeneous(group: &FiniteGroup, phi: &InhomCochain) -> Result<Cochain, GroupError> {
    let order = group.order();
    let c = Cochain::from_fn(group, phi.degree, |t| {
        let g: Vec<usize> = t.windows(2).map(|w| group.mul(group.inv(w[0]), w[1])).collect();
        phi.values[tuple_index(order, &g)].clone()
    })?;
    debug_assert!(c.invariant);
    Ok(c)
}

/// Random invariant cochain with inhomogeneous values drawn from `{-1, 0, 1}`.
pub fn random_invariant_cochain(group: &FiniteGroup, degree: usize, rng: &mut SplitMix64) -> Result<Cochain, GroupError> {
    let order = group.order();
    let n = entries(order, degree).ok_or(GroupError::CochainTooLarge { order, degree })?;
    let values = (0..n).map(|_| BigRational::from_integer(rng.trit().into())).collect();
    from_inhomogeneous(group, &InhomCochain { degree, values })
}

/// Random chain supported on `terms` tuples with coefficients in `{-1, 1}`.
pub fn random_chain(group: &FiniteGroup, degree: usize, terms: usize, rng: &mut SplitMix64) -> Chain {
    let mut c = Chain::zero(degree);
    for _ in 0..terms {
        let t: Vec<usize> = (0..degree).map(|_| rng.below_usize(group.order())).collect();
        let s = if rng.coin() { 1 } else { -1 };
        c.add_term(t, BigRational::from_integer(s.into()));
    }
    c
}

/// The degree-2 primitive
///
/// ```text
/// ψ(c)(g_0, g_1) = Σ_{k≥0} 2^{-(k+1)} c(1, h^{2^k}, h^{2^{k+1}}),   h = g_0^-1 g_1,
/// ```
///
/// summed exactly: the terms are eventually periodic along the squaring orbit
/// of `h`, so the tail is a geometric series with ratio `2^{-L}`.
pub fn psi2(group: &FiniteGroup, c: &Cochain) -> Result<Cochain, GroupError> {
    if c.degree != 2 {
        return Err(GroupError::DegreeMismatch { expected: 2, got: c.degree });
    }
    if !c.invariant {
        return Err(GroupError::NotInvariant);
    }
    if !coboundary(group, c)?.is_zero() {
        return Err(GroupError::NotCocycle);
    }
    let e = group.identity();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let per_h: Vec<BigRational> = group
        .elements()
        .map(|h| {
            let (pre, cycle) = pow2_orbit(group, h);
            let seq = |k: usize| if k < pre.len() { pre[k] } else { cycle[(k - pre.len()) % cycle.len()] };
            let term = |k: usize| c.get(&[e, seq(k), seq(k + 1)]).clone();
            let mut weight = half.clone();
            let mut prefix = BigRational::zero();
            for k in 0..pre.len() {
                prefix += &weight * term(k);
                weight = &weight * &half;
            }
            let mut period = BigRational::zero();
            for k in pre.len()..pre.len() + cycle.len() {
                period += &weight * term(k);
                weight = &weight * &half;
            }
            let ratio = BigRational::new(BigInt::one(), BigInt::one() << cycle.len());
            prefix + period / (BigRational::one() - ratio)
        })
        .collect();
    Cochain::from_fn(group, 1, |t| per_h[group.mul(group.inv(t[0]), t[1])].clone())
}

/// Cone contraction `τc(t_0..t_{n-1}) = |Γ|^-1 Σ_g c(g, t_0, …, t_{n-1})`.
///
/// `δτ + τδ = id`, `τ` preserves invariance and `‖τc‖∞ ≤ ‖c‖∞`, so on
/// cocycles it yields a primitive of norm at most that of the cocycle.
pub fn average_primitive(group: &FiniteGroup, c: &Cochain) -> Result<Cochain, GroupError> {
    if c.degree == 0 {
        return Err(GroupError::DegreeMismatch { expected: 1, got: 0 });
    }
    let order = BigRational::from_integer(group.order().into());
    Cochain::from_fn(group, c.degree - 1, |t| {
        let mut u = Vec::with_capacity(t.len() + 1);
        let mut sum = BigRational::zero();
        for g in group.elements() {
            u.clear();
            u.push(g);
            u.extend_from_slice(t);
            sum += c.get(&u);
        }
        sum / &order
    })
}
