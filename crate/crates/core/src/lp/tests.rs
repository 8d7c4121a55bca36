use super::*;
use crate::group::{average_primitive, from_inhomogeneous, psi2, InhomCochain};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| r(x, 1)).collect()
}

// ---------------------------------------------------------------------------
// solver

#[test]
fn small_lp_exact_and_float() {
    let lp = StandardLp { a: vec![q(&[1, 2])], b: q(&[4]), c: q(&[1, 1]) };
    let out = solve(&lp).unwrap();
    assert_eq!(out.value, r(2, 1));
    assert_eq!(out.x, q(&[0, 2]));
    assert_eq!(out.y, vec![r(1, 2)]);
    let cert = LpCertificate::compute(&lp, &out);
    assert!(cert.certified && cert.exact);
    let lpf = StandardLp { a: vec![vec![1.0, 2.0]], b: vec![4.0], c: vec![1.0, 1.0] };
    let out = solve(&lpf).unwrap();
    assert!((out.value - 2.0).abs() < 1e-12);
    assert!(LpCertificate::compute(&lpf, &out).certified);
}

#[test]
fn infeasible_and_unbounded() {
    let lp = StandardLp { a: vec![q(&[1, 1])], b: q(&[-1]), c: q(&[1, 1]) };
    assert_eq!(solve(&lp).unwrap_err(), LpError::Infeasible);
    let lp = StandardLp { a: vec![q(&[1, -1])], b: q(&[0]), c: q(&[-1, 0]) };
    assert_eq!(solve(&lp).unwrap_err(), LpError::Unbounded);
}

#[test]
fn redundant_rows_are_dropped() {
    let lp = StandardLp {
        a: vec![q(&[1, 1, 0]), q(&[2, 2, 0]), q(&[0, 0, 0]), q(&[0, 1, 1])],
        b: q(&[2, 4, 0, 3]),
        c: q(&[1, 2, 1]),
    };
    let out = solve(&lp).unwrap();
    // x = (2, 0, 3): value 5; x = (0, 2, 1): value 5; the optimum is 5
    assert_eq!(out.value, r(5, 1));
    assert!(LpCertificate::compute(&lp, &out).certified);
}

#[test]
fn bland_rule_survives_beale_cycling_example() {
    // a classical degenerate LP on which the largest-coefficient rule cycles
    let a = vec![
        vec![r(1, 1), r(0, 1), r(0, 1), r(1, 4), r(-60, 1), r(-1, 25), r(9, 1)],
        vec![r(0, 1), r(1, 1), r(0, 1), r(1, 2), r(-90, 1), r(-1, 50), r(3, 1)],
        vec![r(0, 1), r(0, 1), r(1, 1), r(0, 1), r(0, 1), r(1, 1), r(0, 1)],
    ];
    let c = vec![r(0, 1), r(0, 1), r(0, 1), r(-3, 4), r(150, 1), r(-1, 50), r(6, 1)];
    let lp = StandardLp { a, b: q(&[0, 0, 1]), c };
    let out = solve(&lp).unwrap();
    assert_eq!(out.value, r(-1, 20));
    assert!(LpCertificate::compute(&lp, &out).certified);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_feasible_lps_certify(seed in any::<u64>(), m in 1usize..5, extra in 1usize..5) {
        let n = m + extra;
        let mut rng = SplitMix64::new(seed);
        let a: Vec<Vec<BigRational>> = (0..m).map(|_| (0..n).map(|_| r(rng.below(7) as i64 - 3, 1)).collect()).collect();
        let x0: Vec<BigRational> = (0..n).map(|_| r(rng.below(3) as i64, 1)).collect();
        let b: Vec<BigRational> = a.iter().map(|row| row.iter().zip(&x0).map(|(p, q)| p * q).sum()).collect();
        let c: Vec<BigRational> = (0..n).map(|_| r(rng.below(5) as i64, 1)).collect();
        let lp = StandardLp { a: a.clone(), b: b.clone(), c: c.clone() };
        let out = solve(&lp).unwrap();
        let cert = LpCertificate::compute(&lp, &out);
        prop_assert!(cert.certified, "{:?}", cert);
        let v0: BigRational = x0.iter().zip(&c).map(|(p, q)| p * q).sum();
        prop_assert!(out.value <= v0);
        let to_f = |v: &Vec<BigRational>| v.iter().map(Scalar::as_f64).collect::<Vec<f64>>();
        let lpf = StandardLp { a: a.iter().map(to_f).collect(), b: to_f(&b), c: to_f(&c) };
        let outf = solve(&lpf).unwrap();
        prop_assert!((outf.value - out.value.as_f64()).abs() < 1e-7);
        prop_assert!(LpCertificate::compute(&lpf, &outf).certified);
    }
}

// ---------------------------------------------------------------------------
// rational linear algebra for the oracles

/// Reduced row echelon form; returns pivot columns.
fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pr = m[row].clone();
                for (v, pv) in m[i].iter_mut().zip(&pr) {
                    *v = &*v - &f * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Solves a square system, `None` if singular.
fn solve_square(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = b.len();
    let mut aug: Vec<Vec<BigRational>> = a.iter().zip(b).map(|(row, v)| {
        let mut r = row.clone();
        r.push(v.clone());
        r
    }).collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(aug.iter().map(|row| row[n].clone()).collect())
}

fn combinations(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

/// Dense matrix of `∂_n` from the textbook face formula, written out here
/// independently of the library's boundary.
fn boundary_dense(g: &FiniteGroup, n: usize) -> Vec<Vec<BigRational>> {
    let o = g.order();
    let rows = o.pow(n as u32 - 1);
    let cols = o.pow(n as u32);
    let mut m = vec![vec![r(0, 1); cols]; rows];
    for j in 0..cols {
        let t = index_tuple(o, n, j);
        let mut add = |face: Vec<usize>, s: i64| {
            let i = tuple_index(o, &face);
            m[i][j] += r(s, 1);
        };
        add(t[1..].to_vec(), 1);
        for i in 1..n {
            let mut f = t[..i - 1].to_vec();
            f.push(g.mul(t[i - 1], t[i]));
            f.extend_from_slice(&t[i + 1..]);
            add(f, if i % 2 == 0 { 1 } else { -1 });
        }
        add(t[..n - 1].to_vec(), if n % 2 == 0 { 1 } else { -1 });
    }
    m
}

/// `min ‖c‖₁` over `Dc = z` by enumerating bases: some optimal `c` is a basic
/// solution supported on linearly independent columns.
fn l1_oracle(d: &[Vec<BigRational>], z: &[BigRational]) -> BigRational {
    let mut red = d.to_vec();
    let rank = rref(&mut red).len();
    // independent rows of D
    let mut rows_idx = Vec::new();
    let mut acc: Vec<Vec<BigRational>> = Vec::new();
    for (i, row) in d.iter().enumerate() {
        let mut trial = acc.clone();
        trial.push(row.clone());
        if rref(&mut trial.clone()).len() > acc.len() {
            acc.push(row.clone());
            rows_idx.push(i);
        }
        if acc.len() == rank {
            break;
        }
    }
    let zr: Vec<BigRational> = rows_idx.iter().map(|&i| z[i].clone()).collect();
    let mut best: Option<BigRational> = None;
    if rank == 0 {
        return r(0, 1);
    }
    combinations(d[0].len(), rank, &mut |s| {
        let sub: Vec<Vec<BigRational>> = rows_idx.iter().map(|&i| s.iter().map(|&j| d[i][j].clone()).collect()).collect();
        if let Some(x) = solve_square(&sub, &zr) {
            let v: BigRational = x.iter().map(|v| v.abs()).sum();
            if best.as_ref().is_none_or(|b| &v < b) {
                best = Some(v);
            }
        }
    });
    best.expect("z is in the column space")
}

fn chain_vector(g: &FiniteGroup, z: &Chain) -> Vec<BigRational> {
    let mut v = vec![r(0, 1); g.order().pow(z.degree() as u32)];
    for (t, c) in z.terms() {
        v[tuple_index(g.order(), t)] = c.clone();
    }
    v
}

// ---------------------------------------------------------------------------
// ℓ¹

#[test]
fn l1_zero_and_single_boundary() {
    let g = FiniteGroup::symmetric(3).unwrap();
    let p = min_l1_primitive::<BigRational>(&g, &Chain::zero(1)).unwrap();
    assert_eq!(p.value, r(0, 1));
    assert!(p.coefficients.is_empty());
    for (a, b) in [(1, 2), (3, 5), (0, 4)] {
        let z = boundary(&g, &Chain::basis(vec![a, b]));
        let p = min_l1_primitive::<BigRational>(&g, &z).unwrap();
        assert!(p.value <= r(1, 1));
        assert!(p.certificate.certified);
        let c = Chain::from_terms(2, p.coefficients.clone());
        assert_eq!(boundary(&g, &c), z);
    }
}

#[test]
fn l1_rejects_non_cycles() {
    let g = FiniteGroup::cyclic(3).unwrap();
    let z = Chain::basis(vec![1, 1]);
    assert!(matches!(min_l1_primitive::<BigRational>(&g, &z), Err(LpError::NotABoundary(_))));
}

#[test]
fn l1_matches_basis_enumeration() {
    let cases: [(&str, usize, usize); 7] =
        [("C2", 1, 20), ("C2", 2, 10), ("C2", 3, 2), ("C3", 1, 10), ("C4", 1, 6), ("C3", 2, 1), ("C2xC2", 1, 6)];
    let mut rng = SplitMix64::new(99);
    for (name, n, trials) in cases {
        let g = FiniteGroup::from_name(name).unwrap();
        let d = boundary_dense(&g, n + 1);
        for _ in 0..trials {
            let z = random_boundary(&g, n, &mut rng).unwrap();
            let want = l1_oracle(&d, &chain_vector(&g, &z));
            let exact = min_l1_primitive::<BigRational>(&g, &z).unwrap();
            assert_eq!(exact.value, want, "{name} n={n}");
            assert!(exact.certificate.certified);
            let float = min_l1_primitive::<f64>(&g, &z).unwrap();
            assert!((float.value - want.as_f64()).abs() < 1e-9);
            assert!(float.certificate.certified);
        }
    }
}

#[test]
fn l1_optimum_below_generating_chain() {
    let g = FiniteGroup::symmetric(3).unwrap();
    let mut rng = SplitMix64::new(8);
    for _ in 0..10 {
        let w = crate::group::random_chain(&g, 3, 5, &mut rng);
        let z = boundary(&g, &w);
        let p = min_l1_primitive::<f64>(&g, &z).unwrap();
        assert!(p.value <= w.l1_norm().as_f64() + 1e-9);
        assert!(p.certificate.certified);
    }
}

// ---------------------------------------------------------------------------
// ℓ∞

/// `min ‖b‖∞` over `Mb = c` by vertex enumeration in `(λ, t)` where
/// `b = b₀ + Nλ` parametrizes the solution space.
fn linf_oracle(m: &[Vec<BigRational>], c: &[BigRational]) -> BigRational {
    let vars = m[0].len();
    let mut aug: Vec<Vec<BigRational>> = m.iter().zip(c).map(|(row, v)| {
        let mut r = row.clone();
        r.push(v.clone());
        r
    }).collect();
    let piv = rref(&mut aug);
    assert!(!piv.contains(&vars), "system must be consistent");
    let free: Vec<usize> = (0..vars).filter(|j| !piv.contains(j)).collect();
    // b_j = b0_j + Σ_f N[j][f] λ_f
    let mut b0 = vec![r(0, 1); vars];
    let mut nmat = vec![vec![r(0, 1); free.len()]; vars];
    for (i, &p) in piv.iter().enumerate() {
        b0[p] = aug[i][vars].clone();
        for (fi, &f) in free.iter().enumerate() {
            nmat[p][fi] = -aug[i][f].clone();
        }
    }
    for (fi, &f) in free.iter().enumerate() {
        nmat[f][fi] = r(1, 1);
    }
    let k = free.len();
    if k == 0 {
        return b0.iter().map(|v| v.abs()).max().unwrap();
    }
    // constraints s·b_j ≤ t for s = ±1; a vertex has k+1 of them tight
    let cons: Vec<(usize, i64)> = (0..vars).flat_map(|j| [(j, 1), (j, -1)]).collect();
    let mut best: Option<BigRational> = None;
    combinations(cons.len(), k + 1, &mut |s| {
        // s·(b0_j + N_j λ) − t = 0  →  s N_j λ − t = −s b0_j
        let a: Vec<Vec<BigRational>> = s
            .iter()
            .map(|&ci| {
                let (j, sg) = cons[ci];
                let mut row: Vec<BigRational> = nmat[j].iter().map(|v| v * r(sg, 1)).collect();
                row.push(r(-1, 1));
                row
            })
            .collect();
        let rhs: Vec<BigRational> = s.iter().map(|&ci| -(&b0[cons[ci].0] * r(cons[ci].1, 1))).collect();
        if let Some(sol) = solve_square(&a, &rhs) {
            let t = sol[k].clone();
            let feasible = (0..vars).all(|j| {
                let bj: BigRational = &b0[j] + nmat[j].iter().zip(&sol[..k]).map(|(p, q)| p * q).sum::<BigRational>();
                bj.abs() <= t
            });
            if feasible && best.as_ref().is_none_or(|b| &t < b) {
                best = Some(t);
            }
        }
    });
    best.expect("bounded LP has a vertex")
}

fn coboundary_matrix(g: &FiniteGroup, n: usize) -> Vec<Vec<BigRational>> {
    // inhomogeneous δ^{n-1}: rows Γ^n, columns Γ^{n-1}, via the homogeneous
    // coboundary of indicator cochains
    let o = g.order();
    let cols = o.pow(n as u32 - 1);
    let rows = o.pow(n as u32);
    let mut m = vec![vec![r(0, 1); cols]; rows];
    for j in 0..cols {
        let mut values = vec![r(0, 1); cols];
        values[j] = r(1, 1);
        let b = from_inhomogeneous(g, &InhomCochain { degree: n - 1, values }).unwrap();
        let db = to_inhomogeneous(g, &coboundary(g, &b).unwrap()).unwrap();
        for (i, v) in db.values.into_iter().enumerate() {
            m[i][j] = v;
        }
    }
    m
}

#[test]
fn inhomogeneous_coboundary_is_boundary_transpose() {
    for name in ["C3", "S3"] {
        let g = FiniteGroup::from_name(name).unwrap();
        for n in 1..=3 {
            let m = coboundary_matrix(&g, n);
            let d = boundary_dense(&g, n);
            for (i, row) in m.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    assert_eq!(v, &d[j][i]);
                }
            }
        }
    }
}

#[test]
fn linf_zero_cocycle() {
    let g = FiniteGroup::cyclic(4).unwrap();
    for n in 1..=3 {
        let c = Cochain::zero(&g, n).unwrap();
        let p = min_linf_primitive::<BigRational>(&g, &c).unwrap();
        assert_eq!(p.value, r(0, 1));
        assert!(p.certificate.certified);
    }
}

#[test]
fn linf_matches_vertex_enumeration() {
    let mut rng = SplitMix64::new(5);
    for (name, n, trials) in [("C3", 2, 10), ("C2", 2, 5), ("C2", 3, 8), ("C3", 3, 4), ("S3", 2, 5)] {
        let g = FiniteGroup::from_name(name).unwrap();
        let m = coboundary_matrix(&g, n);
        for _ in 0..trials {
            let b = random_invariant_cochain(&g, n - 1, &mut rng).unwrap();
            let c = coboundary(&g, &b).unwrap();
            let target = to_inhomogeneous(&g, &c).unwrap().values;
            let want = linf_oracle(&m, &target);
            let exact = min_linf_primitive::<BigRational>(&g, &c).unwrap();
            assert_eq!(exact.value, want, "{name} n={n}");
            assert!(exact.certificate.certified);
            let float = min_linf_primitive::<f64>(&g, &c).unwrap();
            assert!((float.value - want.as_f64()).abs() < 1e-9);
            assert!(float.certificate.certified, "{:?}", float.certificate);
        }
    }
}

#[test]
fn linf_below_psi_and_averaging_candidates() {
    let mut rng = SplitMix64::new(70);
    for name in ["C3", "C4", "S3", "C2xC2"] {
        let g = FiniteGroup::from_name(name).unwrap();
        for _ in 0..5 {
            let b = random_invariant_cochain(&g, 1, &mut rng).unwrap();
            let c = coboundary(&g, &b).unwrap();
            let lp = min_linf_primitive::<BigRational>(&g, &c).unwrap();
            let psi = psi2(&g, &c).unwrap();
            let tau = average_primitive(&g, &c).unwrap();
            assert!(lp.value <= psi.linf_norm());
            assert!(lp.value <= tau.linf_norm());
            assert!(psi.linf_norm() <= c.linf_norm());
        }
    }
}

#[test]
fn linf_rejects_non_cocycles() {
    let g = FiniteGroup::cyclic(3).unwrap();
    let c = Cochain::from_fn(&g, 2, |t| if t[1] == t[0] && t[2] != t[0] { r(1, 1) } else { r(0, 1) }).unwrap();
    assert!(c.is_invariant());
    assert_eq!(min_linf_primitive::<BigRational>(&g, &c).unwrap_err(), LpError::Group(GroupError::NotCocycle));
}

#[test]
fn constant_witness_has_ratio_one() {
    for name in ["C2", "C3", "C6", "S3", "C2xC2"] {
        let g = FiniteGroup::from_name(name).unwrap();
        let (c, p) = constant_witness(&g).unwrap();
        assert_eq!(c.linf_norm(), r(1, 1));
        assert_eq!(p.value, r(1, 1));
        assert!(p.certificate.certified);
    }
}

// ---------------------------------------------------------------------------
// estimates

#[test]
fn estimates_with_no_samples_are_zero() {
    let g = FiniteGroup::cyclic(2).unwrap();
    assert_eq!(ubc_estimate(&g, 1, 0, 1, Mode::Exact).unwrap().bound, 0.0);
    assert_eq!(modulus_estimate(&g, 2, 0, 1, Mode::Exact).unwrap().bound, 0.0);
}

#[test]
fn ubc_estimate_is_reproducible_and_monotone() {
    let g = FiniteGroup::cyclic(2).unwrap();
    let a = ubc_estimate(&g, 1, 100, 7, Mode::Exact).unwrap();
    let b = ubc_estimate(&g, 1, 100, 7, Mode::Exact).unwrap();
    assert_eq!(a, b);
    assert!(a.certified);
    let mut last = 0.0;
    for s in [0, 5, 20, 60, 100] {
        let e = ubc_estimate(&g, 1, s, 7, Mode::Exact).unwrap();
        assert!(e.bound >= last);
        last = e.bound;
    }
    assert_eq!(last, a.bound);
    // the bound dominates the ratio of every sample, recomputed here
    for i in 0..100 {
        let z = random_boundary(&g, 1, &mut SplitMix64::new(7).fork(i)).unwrap();
        if z.is_zero() {
            continue;
        }
        let p = min_l1_primitive::<BigRational>(&g, &z).unwrap();
        assert!((p.value / z.l1_norm()).as_f64() <= a.bound + 1e-12);
    }
}

#[test]
fn modulus_bounded_by_one() {
    for name in ["C2", "C3", "C4", "C5", "C6"] {
        let g = FiniteGroup::from_name(name).unwrap();
        for n in 1..=3 {
            let e = modulus_estimate(&g, n, 8, 42, Mode::Float).unwrap();
            assert!(e.bound <= 1.0 + 1e-9, "{name} n={n}: {}", e.bound);
            assert!(e.certified);
            if n == 1 {
                assert_eq!(e.nonzero_samples, 0);
                assert!(e.note.is_some());
            } else {
                assert!(e.bound > 0.0);
            }
        }
    }
    let c3 = FiniteGroup::cyclic(3).unwrap();
    let e = modulus_estimate(&c3, 2, 100, 42, Mode::Exact).unwrap();
    assert!(e.bound > 0.0 && e.bound <= 1.0 + 1e-9);
    assert!(e.certified);
}
