//! Verification suites behind each subcommand.

use std::path::Path;

use bclab_core::binate::{
    binate_commutator_check, build_dissipator, default_generators, ladder, make_witness, pairwise_disjoint,
    verify_witness, BinateError, Word, CONDITION_1, CONDITION_2, CONDITION_3, MU_CHECK,
};
use bclab_core::circular::{delta_tuple, orc_coboundary, signed_permutations, verify_alt_cup_identity, TupleCochain};
use bclab_core::group::{
    boundary, coboundary, conjugate_chain, psi2, random_chain, random_invariant_cochain, theta, Chain, FiniteGroup,
};
use bclab_core::lp::{constant_witness, modulus_estimate, ubc_estimate, Mode, TOLERANCE};
use bclab_core::pl::{membership, Membership};
use bclab_core::rng::SplitMix64;
use bclab_core::sample::{random_circ_ordered, random_increasing, random_t};
use bclab_core::thompson::{circ_ordered, circle_witness, interval_witness, CircTuple};
use bclab_core::{CirclePoint, Dyadic, PLMap};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;
use thiserror::Error;

use crate::report::Outcome;

pub const REF_ALT: &str = "alternating cup-power identity";
pub const REF_LAST: &str = "closedness of the top orientation cochain";
pub const REF_EULER: &str = "orientation cocycle of T";
pub const REF_PSI: &str = "explicit coboundary inverse for finite groups";
pub const REF_MODULUS: &str = "vanishing modulus";
pub const REF_THETA: &str = "conjugation chain homotopy";
pub const REF_UBC: &str = "uniform boundary condition";
pub const REF_TRANS: &str = "transitivity of F and T on ordered tuples";
pub const REF_LADDER: &str = "dissipator ladder";
pub const REF_WITNESS: &str = "pseudo-mitosis witness";
pub const REF_COMM: &str = "commutator expression from a pseudo-mitosis";

pub const ALT_RANGE: std::ops::RangeInclusive<usize> = 1..=3;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A computation aborted; reported as a failed check.
    #[error("{0}")]
    Failed(String),
}

macro_rules! failed_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Failed(e.to_string())
            }
        }
    )*};
}

failed_from!(
    BinateError,
    bclab_core::circular::CochainError,
    bclab_core::group::GroupError,
    bclab_core::lp::LpError,
    bclab_core::pl::PlError,
    bclab_core::thompson::WitnessError
);

pub fn parse_group(name: &str) -> Result<FiniteGroup, CliError> {
    FiniteGroup::from_name(name).map_err(|e| CliError::Usage(format!("bad --group `{name}`: {e}")))
}

pub fn parse_dyadic(flag: &str, s: &str) -> Result<Dyadic, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("bad {flag} `{s}`: {e} (write p/2^e)")))
}

pub fn parse_dyadic_list(flag: &str, s: &str) -> Result<Vec<Dyadic>, CliError> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| parse_dyadic(flag, t)).collect()
}

fn ratio(count: usize, total: usize) -> String {
    format!("{count}/{total}")
}

pub fn alt_identity(k: usize) -> Result<Outcome, CliError> {
    if !ALT_RANGE.contains(&k) {
        return Err(CliError::Usage(format!(
            "k out of supported range: got {k}, supported {}..={}",
            ALT_RANGE.start(),
            ALT_RANGE.end()
        )));
    }
    let id = verify_alt_cup_identity(k)?;
    let mut o = Outcome::default();
    o.check(
        format!("alt(f2^k) = c_k f_2k, k={k}"),
        REF_ALT,
        &id.expected,
        &id.coefficient,
        id.coefficient == id.expected && id.proportional,
    );
    if let (Some(step), Some(want)) = (&id.step_coefficient, &id.step_expected) {
        o.check(format!("alt(f2 ∪ f_2k-2) = A f_2k, k={k}"), REF_ALT, want, step, step == want);
    }
    o.detail("coefficient", id.coefficient.to_string());
    o.detail("expected", id.expected.to_string());
    o.detail("stepCoefficient", id.step_coefficient.as_ref().map(ToString::to_string));
    o.detail("stepExpected", id.step_expected.as_ref().map(ToString::to_string));
    o.detail("proportional", id.proportional);
    o.detail("pass", id.pass());
    Ok(o)
}

fn point(s: &str) -> CirclePoint {
    CirclePoint::reduce(&s.parse().expect("literal dyadic"))
}

pub fn euler_cocycle(samples: usize, seed: u64) -> Result<Outcome, CliError> {
    let mut o = Outcome::default();
    let x0 = point("0");
    let mut rng = SplitMix64::new(seed);
    let mut zero = 0;
    for _ in 0..samples {
        let g = [random_t(&mut rng, 3), random_t(&mut rng, 3), random_t(&mut rng, 3)];
        if orc_coboundary(&x0, &g)?.is_zero() {
            zero += 1;
        }
    }
    o.check("δ(orientation pullback) = 0 on random T triples", REF_EULER, ratio(samples, samples), ratio(zero, samples), zero == samples);

    let fixed = ["0", "1/2^2", "1/2^1", "3/2^2"].map(point);
    let d2 = delta_tuple(&TupleCochain::orient(2)?);
    let perms = signed_permutations(4);
    let mut closed = 0;
    for (perm, _) in &perms {
        let t: Vec<CirclePoint> = perm.iter().map(|&i| fixed[i].clone()).collect();
        if d2.eval(&t)?.is_zero() {
            closed += 1;
        }
    }
    o.check("δf2 = 0 on all orderings of 4 points", REF_EULER, ratio(perms.len(), perms.len()), ratio(closed, perms.len()), closed == perms.len());

    for k in [1usize, 2] {
        let d = delta_tuple(&TupleCochain::orient(2 * k)?);
        let mut rng = SplitMix64::new(seed).fork(k as u64);
        let mut closed = 0;
        for _ in 0..samples {
            let t = random_circ_ordered(&mut rng, 2 * k + 2, 10);
            if d.eval(&t)?.is_zero() {
                closed += 1;
            }
        }
        o.check(format!("δf{} = 0 on circularly ordered tuples", 2 * k), REF_LAST, ratio(samples, samples), ratio(closed, samples), closed == samples);
    }
    o.detail("triples", samples);
    Ok(o)
}

pub fn psi(groups: &[FiniteGroup], trials: usize, seed: u64) -> Result<Outcome, CliError> {
    let mut o = Outcome::default();
    for g in groups {
        let mut rng = SplitMix64::new(seed);
        let (mut exact, mut bounded) = (0, 0);
        let mut worst = BigRational::zero();
        for _ in 0..trials {
            let b = random_invariant_cochain(g, 1, &mut rng)?;
            let c = coboundary(g, &b)?;
            let p = psi2(g, &c)?;
            if coboundary(g, &p)? == c {
                exact += 1;
            }
            let (pn, cn) = (p.linf_norm(), c.linf_norm());
            if pn <= cn {
                bounded += 1;
            }
            if !cn.is_zero() {
                worst = worst.max(pn / cn);
            }
        }
        o.check(format!("δψ(c) = c, {}", g.name()), REF_PSI, ratio(trials, trials), ratio(exact, trials), exact == trials);
        o.check(
            format!("‖ψ(c)‖∞ ≤ ‖c‖∞, {}", g.name()),
            REF_PSI,
            "max ratio ≤ 1",
            format!("{bounded}/{trials}, max ratio {worst}"),
            bounded == trials,
        );
        o.detail(format!("{}.maxRatio", g.name()), worst.to_string());
    }
    Ok(o)
}

/// `∂Θ + Θ∂ - (γ_* - id)`, which must vanish.
fn homotopy_defect(g: &FiniteGroup, x: usize, z: &Chain) -> Chain {
    let lhs = boundary(g, &theta(g, x, z));
    let lhs = if z.degree() >= 1 { lhs.add(&theta(g, x, &boundary(g, z))) } else { lhs };
    lhs.sub(&conjugate_chain(g, x, z).sub(z))
}

pub fn theta_suite(groups: &[FiniteGroup], max_degree: usize, trials: usize, seed: u64) -> Result<Outcome, CliError> {
    let mut o = Outcome::default();
    for g in groups {
        for n in 0..=max_degree {
            let mut rng = SplitMix64::new(seed).fork(n as u64);
            let (mut homotopy, mut bounded, mut total) = (0, 0, 0);
            let bound = BigRational::from_integer((n + 1).into());
            for x in g.elements() {
                for _ in 0..trials {
                    let z = random_chain(g, n, 6, &mut rng);
                    total += 1;
                    if homotopy_defect(g, x, &z).is_zero() {
                        homotopy += 1;
                    }
                    if theta(g, x, &z).l1_norm() <= &bound * z.l1_norm() {
                        bounded += 1;
                    }
                }
            }
            o.check(format!("∂Θ + Θ∂ = γ_* - id, {} n={n}", g.name()), REF_THETA, ratio(total, total), ratio(homotopy, total), homotopy == total);
            o.check(format!("‖Θz‖₁ ≤ {}‖z‖₁, {} n={n}", n + 1, g.name()), REF_THETA, ratio(total, total), ratio(bounded, total), bounded == total);
        }
    }
    Ok(o)
}

pub fn ubc(g: &FiniteGroup, degree: usize, samples: usize, seed: u64, mode: Mode) -> Result<Outcome, CliError> {
    if degree == 0 {
        return Err(CliError::Usage("--degree must be at least 1".into()));
    }
    let e = ubc_estimate(g, degree, samples, seed, mode)?;
    let mut o = Outcome::default();
    let gap_ok = match mode {
        Mode::Exact => e.gap == 0.0,
        Mode::Float => e.gap <= TOLERANCE,
    };
    o.check(
        format!("min ℓ¹ primitives certified, {} n={degree}", g.name()),
        REF_UBC,
        format!("feasible, gap ≤ {}", if mode == Mode::Exact { "0".to_string() } else { TOLERANCE.to_string() }),
        format!("certified {}, gap {:e}, lower bound {}", e.certified, e.gap, e.bound),
        e.certified && gap_ok,
    );
    o.detail(format!("{}.{degree}", g.name()), &e);
    Ok(o)
}

pub fn modulus(g: &FiniteGroup, degree: usize, samples: usize, seed: u64, mode: Mode) -> Result<Outcome, CliError> {
    if degree == 0 {
        return Err(CliError::Usage("--degree must be at least 1".into()));
    }
    let e = modulus_estimate(g, degree, samples, seed, mode)?;
    let mut o = Outcome::default();
    o.check(
        format!("modulus lower bound ≤ 1, {} n={degree}", g.name()),
        REF_MODULUS,
        format!("≤ 1 + {TOLERANCE}"),
        format!("{} ({} nonzero of {} samples, certified {})", e.bound_exact.clone().unwrap_or_else(|| e.bound.to_string()), e.nonzero_samples, e.samples, e.certified),
        e.bound <= 1.0 + TOLERANCE && e.certified,
    );
    o.detail(format!("{}.{degree}", g.name()), &e);
    Ok(o)
}

pub fn constant_witness_check(g: &FiniteGroup) -> Result<Outcome, CliError> {
    let (c, p) = constant_witness(g)?;
    let ratio = p.value.clone() / c.linf_norm();
    let mut o = Outcome::default();
    o.check(format!("constant 2-cocycle attains ratio 1, {}", g.name()), REF_MODULUS, "1", &ratio, ratio.is_one() && p.certificate.certified);
    Ok(o)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThompsonGroup {
    F,
    T,
}

pub fn map_tuple(group: ThompsonGroup, from: &[Dyadic], to: &[Dyadic]) -> Result<Outcome, CliError> {
    let mut o = Outcome::default();
    let (f, class) = match group {
        ThompsonGroup::F => (interval_witness(from, to), Membership::F),
        ThompsonGroup::T => (circle_witness(&CircTuple::from_dyadics(from), &CircTuple::from_dyadics(to)), Membership::T),
    };
    let f = f.map_err(|e| CliError::Usage(e.to_string()))?;
    let report = membership(&f.to_spec(), class);
    o.check(format!("witness in {class:?}"), REF_TRANS, "member", if report.member { "member" } else { "not a member" }, report.member);
    let images: Vec<Dyadic> = match group {
        ThompsonGroup::F => from.iter().map(|x| f.eval(x)).collect::<Result<_, _>>()?,
        ThompsonGroup::T => from.iter().map(|x| f.act(&CirclePoint::reduce(x)).into_rep()).collect(),
    };
    let want: Vec<Dyadic> = match group {
        ThompsonGroup::F => to.to_vec(),
        ThompsonGroup::T => to.iter().map(|x| CirclePoint::reduce(x).into_rep()).collect(),
    };
    let show = |v: &[Dyadic]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    o.check("exact images", REF_TRANS, show(&want), show(&images), images == want);
    o.detail("witness", &f);
    o.detail("membership", &report);
    o.detail("images", &images);
    Ok(o)
}

pub fn transitivity(samples: usize, seed: u64) -> Result<Outcome, CliError> {
    let mut o = Outcome::default();
    let mut rng = SplitMix64::new(seed);
    let (mut t_ok, mut f_ok) = (0, 0);
    for _ in 0..samples {
        let u = CircTuple::new(random_circ_ordered(&mut rng, 4, 10));
        let v = CircTuple::new(random_circ_ordered(&mut rng, 4, 10));
        let f = circle_witness(&u, &v)?;
        if membership(&f.to_spec(), Membership::T).member && u.apply(&f) == v && circ_ordered(&u) {
            t_ok += 1;
        }
        let a = random_increasing(&mut rng, 4, 10);
        let b = random_increasing(&mut rng, 4, 10);
        let h = interval_witness(&a, &b)?;
        let images: Vec<Dyadic> = a.iter().map(|x| h.eval(x)).collect::<Result<_, _>>()?;
        if membership(&h.to_spec(), Membership::F).member && images == b {
            f_ok += 1;
        }
    }
    o.check("circle_witness in T with exact images", REF_TRANS, ratio(samples, samples), ratio(t_ok, samples), t_ok == samples);
    o.check("interval_witness in F with exact images", REF_TRANS, ratio(samples, samples), ratio(f_ok, samples), f_ok == samples);
    Ok(o)
}

pub fn dissipator(a: &Dyadic, b: &Dyadic, depth: u32) -> Result<Outcome, CliError> {
    let d = build_dissipator(a, b, depth).map_err(|e| match e {
        BinateError::Precondition(m) => CliError::Usage(m),
        e => e.into(),
    })?;
    let rungs = ladder(&d)?;
    let mut o = Outcome::default();
    let disjoint = pairwise_disjoint(&rungs);
    o.check(format!("ρ^k((a,b)) pairwise disjoint, k ≤ {depth}"), REF_LADDER, "disjoint", if disjoint { "disjoint" } else { "overlapping" }, disjoint);
    let closed = rungs.iter().enumerate().all(|(k, r)| r == &d.spec.rung(k as u32));
    o.check("ladder matches closed-form points", REF_LADDER, "x_k, x_k+1", if closed { "match" } else { "mismatch" }, closed);
    let inside = rungs.iter().all(|(_, r)| r < &d.spec.accumulation);
    o.check("ladder below the accumulation point", REF_LADDER, format!("< {}", d.spec.accumulation), if inside { "inside" } else { "outside" }, inside);
    o.detail("spec", &d.spec);
    o.detail("ladder", rungs.iter().map(|(l, r)| [l.to_string(), r.to_string()]).collect::<Vec<_>>());
    o.detail("rho", &d.rho);
    Ok(o)
}

pub fn load_generators(path: &Path) -> Result<Vec<PLMap>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad generators in {}: {e}", path.display())))
}

pub fn witness(a: &Dyadic, b: &Dyadic, depth: u32, gens: Option<Vec<PLMap>>, mu_samples: usize, seed: u64, full: bool) -> Result<Outcome, CliError> {
    let d = build_dissipator(a, b, depth).map_err(|e| match e {
        BinateError::Precondition(m) => CliError::Usage(m),
        e => e.into(),
    })?;
    let gens = match gens {
        Some(g) => g,
        None => default_generators(a, b)?,
    };
    let w = make_witness(&gens, &d).map_err(|e| match e {
        BinateError::Support { .. } => CliError::Usage(e.to_string()),
        e => e.into(),
    })?;
    let mut o = Outcome::default();
    let report = verify_witness(&w, mu_samples, seed);
    for cond in [CONDITION_1, CONDITION_2, CONDITION_3, MU_CHECK] {
        let checks: Vec<_> = report.checks.iter().filter(|c| c.condition == cond).collect();
        let passed = checks.iter().filter(|c| c.pass).count();
        let first = checks.iter().find(|c| !c.pass).map(|c| {
            format!(
                ", first failure {} at {}",
                c.subject,
                c.first_disagreement.as_ref().map_or_else(|| c.error.clone().unwrap_or_default(), ToString::to_string)
            )
        });
        o.check(
            format!("{cond} on [0, {})", w.window),
            REF_WITNESS,
            ratio(checks.len(), checks.len()),
            format!("{}{}", ratio(passed, checks.len()), first.unwrap_or_default()),
            passed == checks.len(),
        );
    }

    let mut words: Vec<Word> = (1..=gens.len() as i32).map(|i| vec![i]).collect();
    if gens.len() >= 2 {
        words.push(vec![1, -2, 1]);
        words.push(vec![-1, 2, 2]);
    }
    let mut comm = Vec::new();
    let mut ok = 0;
    for word in &words {
        let r = binate_commutator_check(word, &w)?;
        ok += usize::from(r.conventions[0].equals_h);
        comm.push(r);
    }
    o.check(
        "h = [ψ0(h)^-1, g] with [a,b] = a^-1 b^-1 a b",
        REF_COMM,
        ratio(words.len(), words.len()),
        ratio(ok, words.len()),
        ok == words.len(),
    );
    let binate_ok = comm.iter().filter(|r| r.conventions[2].equals_h).count();
    o.check("h = [g, ψ0(h)]", REF_COMM, ratio(words.len(), words.len()), ratio(binate_ok, words.len()), binate_ok == words.len());

    let control = verify_witness(&w.with_identity_g(), 0, seed);
    let failed3 = !control.condition_passes(CONDITION_3);
    o.check("corrupted witness (g = id) fails condition (3)", REF_WITNESS, "fails", if failed3 { "fails" } else { "passes" }, failed3);

    o.detail("window", &w.window);
    o.detail("dissipator", &w.dissipator);
    o.detail("note", &report.note);
    o.detail("checks", &report.checks);
    o.detail("commutators", &comm);
    o.detail("control", json!({"checks": control.checks.iter().filter(|c| c.condition == CONDITION_3).collect::<Vec<_>>()}));
    if full {
        o.detail("witness", &w);
    }
    Ok(o)
}

pub fn standard_groups() -> Vec<FiniteGroup> {
    ["C2", "C3", "C4", "C5", "C6", "S3", "C2xC2"]
        .iter()
        .map(|n| FiniteGroup::from_name(n).expect("known group"))
        .collect()
}

/// Every acceptance suite with fixed sizes; only the seed varies.
pub fn all(seed: u64) -> Result<Outcome, CliError> {
    let mut o = Outcome::default();
    for k in ALT_RANGE {
        o.extend(&format!("alt{k}"), alt_identity(k)?);
    }
    o.extend("euler", euler_cocycle(100, seed)?);
    let groups = standard_groups();
    o.extend("psi", psi(&groups, 50, seed)?);
    for g in &groups {
        for n in 1..=3 {
            o.extend("modulus", modulus(g, n, 8, seed, Mode::Float)?);
        }
        o.extend("constant", constant_witness_check(g)?);
    }
    let c3 = FiniteGroup::cyclic(3)?;
    o.extend("modulusExact", modulus(&c3, 2, 100, seed, Mode::Exact)?);
    let theta_groups = [FiniteGroup::symmetric(3)?, FiniteGroup::cyclic(6)?];
    o.extend("theta", theta_suite(&theta_groups, 3, 50, seed)?);
    for (name, n) in [("C2", 1), ("C2", 2), ("C3", 1), ("C4", 1), ("C2xC2", 1), ("C3", 2)] {
        let g = FiniteGroup::from_name(name)?;
        o.extend("ubc", ubc(&g, n, 5, seed, Mode::Exact)?);
    }
    o.extend("thompson", transitivity(100, seed)?);
    let (a, b) = (Dyadic::new(3, 3), Dyadic::new(1, 1));
    o.extend("dissipator", dissipator(&a, &b, 16)?);
    o.extend("witness", witness(&a, &b, 16, None, 8, seed, false)?);
    Ok(o)
}
