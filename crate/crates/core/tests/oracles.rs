//! Worked values checked against independent computations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use tetrablock::domains::*;
use tetrablock::feasibility::*;
use tetrablock::hardy::{inner_outer_factorize, outer_sqrt, EvaluableFunction, OuterFunction, QuadratureConfig, RationalFunction};
use tetrablock::linalg::{c, mat2, max_abs, spectral_norm, CMat, CVec};
use tetrablock::realization::*;
use tetrablock::saltire::*;
use tetrablock::synthesis::*;
use tetrablock::testgen::*;
use tetrablock::C64;

fn zero() -> C64 {
    c(0.0, 0.0)
}

fn half_w() -> CMat {
    mat2(zero(), c(-FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0), zero())
}

fn constant_f(w: CMat) -> SchurMatrixFunction {
    let m = 0;
    SchurMatrixFunction::Realized(RealizedSchurFunction::new(BlockContraction::new(m, w).unwrap()))
}

fn lam() -> EvaluableFunction {
    EvaluableFunction::Rational(RationalFunction::identity())
}

fn probes() -> Vec<C64> {
    default_probes().to_vec()
}

/// For 2 × 2 with two scalar blocks μ equals inf over d > 0 of
/// ‖diag(d, 1) A diag(1/d, 1)‖, which is quasiconvex in log d.
fn mu_by_scaling(a: &CMat) -> f64 {
    let cost = |t: f64| {
        let d = t.exp();
        let s = mat2(a[(0, 0)], a[(0, 1)] * d, a[(1, 0)] / d, a[(1, 1)]);
        spectral_norm(&s)
    };
    let (mut lo, mut hi) = (-30.0_f64, 30.0_f64);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..200 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if cost(m1) < cost(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    cost(0.5 * (lo + hi))
}

#[test]
fn mu_matches_diagonal_scaling() {
    let id = CMat::identity(2, 2);
    assert!((mu_diag(&id).unwrap() - 1.0).abs() < 1e-12);
    assert!((mu_by_scaling(&id) - 1.0).abs() < 1e-12);
    let d = mat2(c(2.0, 0.0), zero(), zero(), zero());
    // Only z is constrained: 1 − 2z = 0.
    assert!((mu_diag(&d).unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(mu_diag(&CMat::zeros(2, 2)).unwrap(), 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let a = gaussian_matrix(2, 2, &mut rng) * c(0.5, 0.0);
        let (m, s) = (mu_diag(&a).unwrap(), mu_by_scaling(&a));
        assert!((m - s).abs() < 1e-7 * s.max(1.0), "{m} vs {s} for {a}");
    }
}

#[test]
fn phi_psi_values() {
    assert!((phi(c(0.5, 0.0), &GammaPoint::new(zero(), c(1.0, 0.0))).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
    let a = c(0.3, -0.4);
    for z in [zero(), c(0.2, 0.7), c(-0.9, 0.1)] {
        assert!((phi(z, &GammaPoint::new(a * 2.0, a * a)).unwrap() + a).norm() < 1e-15);
    }
    assert!((psi(c(0.5, 0.0), &TetraPoint::new(zero(), zero(), c(1.0, 0.0))).unwrap() + c(0.5, 0.0)).norm() < 1e-15);
    let (x1, x2) = (c(0.2, 0.1), c(-0.4, 0.3));
    for z in [zero(), c(0.5, 0.5), c(-0.3, 0.0)] {
        assert!((psi(z, &TetraPoint::new(x1, x2, x1 * x2)).unwrap() - x1).norm() < 1e-15);
    }
}

/// Both roots of t² − s t + p in the closed disc.
fn gamma_by_roots(s: C64, p: C64) -> (f64, f64) {
    let disc = (s * s - p * 4.0).sqrt();
    (((s + disc) / 2.0).norm(), ((s - disc) / 2.0).norm())
}

#[test]
fn gamma_membership_against_roots() {
    let tol = Tolerance::default();
    assert!(in_closed_gamma(&GammaPoint::new(zero(), c(1.0, 0.0)), &tol));
    assert!(in_gamma_distinguished_boundary(&GammaPoint::new(zero(), c(1.0, 0.0)), &tol));
    assert!(!in_gamma_distinguished_boundary(&GammaPoint::new(c(1.0, 0.0), zero()), &tol));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for _ in 0..2000 {
        let s = random_point_in_disc(2.2, &mut rng);
        let p = random_point_in_disc(1.1, &mut rng);
        let (r1, r2) = gamma_by_roots(s, p);
        let worst = r1.max(r2);
        if (worst - 1.0).abs() < 1e-4 {
            continue;
        }
        checked += 1;
        assert_eq!(in_closed_gamma(&GammaPoint::new(s, p), &tol), worst <= 1.0, "s = {s}, p = {p}");
    }
    assert!(checked > 1000);
}

#[test]
fn tetra_pinned_points() {
    let tol = Tolerance::default();
    // |x1|² + |x2|² − |x3|² + 2|x1x2 − x3| ≤ 1 with |x3| ≤ 1.
    assert!(!in_closed_tetrablock(&TetraPoint::new(c(0.9, 0.0), c(0.9, 0.0), zero()), &tol));
    assert!(in_closed_tetrablock(&TetraPoint::new(zero(), zero(), c(0.5, 0.0)), &tol));
    assert!(in_tetra_distinguished_boundary(&TetraPoint::new(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)), &tol));
    assert!(in_tetra_distinguished_boundary(&TetraPoint::new(zero(), zero(), c(1.0, 0.0)), &tol));
    assert!(in_closed_tetrablock(&TetraPoint::new(zero(), zero(), zero()), &tol));
}

#[test]
fn target_reductions() {
    let tol = Tolerance::default();
    let x = tetra_targets(&half_w(), &tol).unwrap();
    assert!(x.dist(&TetraPoint::new(zero(), zero(), c(0.5, 0.0))) < 1e-15);
    let w = mat2(c(0.3, 0.0), c(0.1, 0.0), c(0.2, 0.0), c(0.4, 0.0));
    assert!(tetra_targets(&w, &tol).unwrap().dist(&TetraPoint::new(c(0.3, 0.0), c(0.4, 0.0), c(0.1, 0.0))) < 1e-15);
    let g = gamma_targets(&mat2(c(0.5, 0.0), zero(), zero(), c(0.2, 0.0)), &tol).unwrap();
    assert!((g.s - c(0.7, 0.0)).norm() < 1e-15 && (g.p - c(0.1, 0.0)).norm() < 1e-15);
}

#[test]
fn inner_outer_examples() {
    let cfg = QuadratureConfig::default();
    let (inner, outer) = inner_outer_factorize(&RationalFunction::constant(c(-0.5, 0.0)), &cfg).unwrap();
    assert!((inner.eval(c(0.3, 0.2)) + c(1.0, 0.0)).norm() < 1e-12);
    assert!((outer.eval(c(0.3, 0.2)).unwrap() - c(0.5, 0.0)).norm() < 1e-12);

    // 3(λ − ½)/(1 − λ/2): |f| = 3 on T, so outer ≡ 3 and inner is the Blaschke factor.
    let f = RationalFunction::new(vec![c(-1.5, 0.0), c(3.0, 0.0)], vec![c(1.0, 0.0), c(-0.5, 0.0)]).unwrap();
    let (inner, outer) = inner_outer_factorize(&f, &cfg).unwrap();
    for z in [zero(), c(0.4, -0.3), c(-0.7, 0.1)] {
        assert!((outer.eval(z).unwrap() - c(3.0, 0.0)).norm() < 1e-10);
        let b = (z - 0.5) / (c(1.0, 0.0) - z * 0.5);
        assert!((inner.eval(z) - b).norm() < 1e-10);
    }
    for k in 0..16 {
        let zeta = C64::from_polar(1.0, TAU * k as f64 / 16.0);
        assert!((inner.eval(zeta).norm() - 1.0).abs() < 1e-10);
    }

    let half = OuterFunction::positive_constant(0.5, 4096).unwrap();
    assert!((outer_sqrt(&half).eval(c(0.2, 0.1)).unwrap() - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-12);

    // |g| = |1 − e^{iθ}|: the outer square root is the principal √(1 − λ).
    let g = RationalFunction::polynomial(vec![c(1.0, 0.0), c(-1.0, 0.0)]);
    let (_, og) = inner_outer_factorize(&g, &cfg).unwrap();
    let h = outer_sqrt(&og);
    for z in [zero(), c(0.5, 0.5), c(0.9, 0.0), c(-0.95, 0.2)] {
        let want = (c(1.0, 0.0) - z).sqrt();
        assert!((h.eval(z).unwrap() - want).norm() < 1e-6, "{z}");
    }
}

#[test]
fn lft_and_gamma_eta_examples() {
    let p = BlockOperator::new(mat2(zero(), c(1.0, 0.0), c(1.0, 0.0), zero()), 1, 1).unwrap();
    let x = CMat::from_element(1, 1, c(0.3, -0.2));
    assert!(max_abs(&(lft(&p, &x).unwrap() - &x)) < 1e-15);

    let f = mat2(c(0.4, 0.0), c(0.3, 0.0), zero(), c(0.2, 0.0));
    let (g, eta) = gamma_eta(&f, c(0.5, 0.1)).unwrap();
    assert_eq!(g, zero());
    assert_eq!(eta, CVec::from_vec(vec![c(1.0, 0.0), zero()]));

    let z = c(0.3, -0.6);
    let (g, eta) = gamma_eta(&half_w(), z).unwrap();
    assert!((g - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    assert!((eta[1] - z * FRAC_1_SQRT_2).norm() < 1e-15);
}

#[test]
fn se_examples() {
    // F21 = 0: SE(F)(z, λ) = −F11(λ), independent of z.
    let zero_f = EvaluableFunction::constant(zero());
    let f = SchurMatrixFunction::Entries(Box::new([
        lam().scale(c(0.5, 0.0)),
        EvaluableFunction::constant(c(0.3, 0.0)),
        zero_f,
        EvaluableFunction::constant(c(0.2, 0.0)),
    ]));
    let se = se_map(&f);
    for l in [zero(), c(0.4, 0.3)] {
        for z in [zero(), c(0.5, 0.0), c(-0.2, 0.7)] {
            assert!((se.eval(z, l).unwrap() + l * 0.5).norm() < 1e-15);
        }
    }
    // LN_E((0, 0, ½)): Ψ(z) = −z/2, so SE = z/2.
    let x = HolFunctionTetra::constant(TetraPoint::new(zero(), zero(), c(0.5, 0.0)));
    let se = se_map(&ln_tetra(&x, &Tolerance::default()).unwrap());
    for z in [c(0.2, 0.0), c(-0.6, 0.3)] {
        assert!((se.eval(z, c(0.1, 0.1)).unwrap() - z / 2.0).norm() < 1e-12);
    }
    // |SE| ≤ 1 for a random realized F.
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = SchurMatrixFunction::Realized(random_realized(3, LKind::Strict(0.99), &mut rng));
    let se = se_map(&f);
    for l in sunflower(50, 0.95) {
        for z in sunflower(20, 0.95) {
            assert!(se.eval(z, l).unwrap().norm() <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn completion_single_vector() {
    let u = vec![CVec::from_vec(vec![c(1.0, 0.0), zero()])];
    let w = vec![CVec::from_vec(vec![c(0.5, 0.0), zero()])];
    let (l, rep) = contraction_completion(&u, &w, 1e-9, false).unwrap();
    assert!(max_abs(&(l.clone() - mat2(c(0.5, 0.0), zero(), zero(), zero()))) < 1e-15);
    assert!((spectral_norm(&l) - 0.5).abs() < 1e-15);
    assert_eq!(rep.rank, 1);
}

#[test]
fn lift_examples() {
    let tol = Tolerance::default();
    let h = HolFunctionGamma::constant(GammaPoint::new(zero(), c(-0.25, 0.0)));
    let f = ln_gamma(&h, &tol).unwrap();
    let want = mat2(zero(), c(0.5, 0.0), c(0.5, 0.0), zero());
    assert!(max_abs(&(f.eval(c(0.3, 0.3)).unwrap() - &want)) < 1e-12);
    assert!((det2_of(&want) - c(-0.25, 0.0)).norm() < 1e-15);

    // diag(λ², λ) ↦ (λ² + λ, λ³).
    let diag = SchurMatrixFunction::Entries(Box::new([
        lam().mul(&lam()),
        EvaluableFunction::constant(zero()),
        EvaluableFunction::constant(zero()),
        lam(),
    ]));
    let h = ls_gamma(&diag);
    for l in [c(0.5, 0.0), c(-0.3, 0.4)] {
        let v = h.eval(l).unwrap();
        assert!((v.s - (l * l + l)).norm() < 1e-15 && (v.p - l * l * l).norm() < 1e-15);
    }
    // LS_Γ∘LN_Γ = id here, LN_Γ∘LS_Γ is not.
    let back = ln_gamma(&h, &tol).unwrap();
    for l in polar_grid(16, 0.9) {
        let v = ls_gamma(&back).eval(l).unwrap();
        let w = h.eval(l).unwrap();
        assert!((v.s - w.s).norm() < 1e-8 && (v.p - w.p).norm() < 1e-8);
    }
    let half = c(0.5, 0.0);
    assert!(max_abs(&(back.eval(half).unwrap() - diag.eval(half).unwrap())) > 0.1);

    // x = (0, 0, ½) ↦ [[0, −1/√2], [1/√2, 0]], and back.
    let x = HolFunctionTetra::constant(TetraPoint::new(zero(), zero(), c(0.5, 0.0)));
    let f = ln_tetra(&x, &tol).unwrap();
    assert!(max_abs(&(f.eval(c(0.2, -0.5)).unwrap() - half_w())) < 1e-12);
    assert!(ls_tetra(&constant_f(half_w())).eval(zero()).unwrap().dist(&TetraPoint::new(zero(), zero(), half)) < 1e-15);

    // F(λ) = λ/√2 [[1, 0], [1, 0]] has LS_E(F) = (λ/√2, 0, 0); LN_E gives
    // diag(λ/√2, 0) instead.
    let s = lam().scale(c(FRAC_1_SQRT_2, 0.0));
    let z0 = EvaluableFunction::constant(zero());
    let f = SchurMatrixFunction::Entries(Box::new([s.clone(), z0.clone(), s, z0]));
    let x = ls_tetra(&f);
    let g = ln_tetra(&x, &tol).unwrap();
    assert!(max_abs(&(g.eval(half).unwrap() - mat2(half * FRAC_1_SQRT_2, zero(), zero(), zero()))) < 1e-15);
    assert!(max_abs(&(g.eval(half).unwrap() - f.eval(half).unwrap())) > 0.1);

    // Random realized F lands in Ē.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = SchurMatrixFunction::Realized(random_realized(3, LKind::Strict(0.97), &mut rng));
    assert!(ls_tetra(&f).membership_residual(&sunflower(200, 0.99)).unwrap() <= 1e-12);
}

fn det2_of(a: &CMat) -> C64 {
    a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)]
}

#[test]
fn linear_fractional_examples() {
    let tol = Tolerance::default();
    let f = le_tetra(&HolFunctionTetra::constant(TetraPoint::new(zero(), zero(), c(1.0, 0.0))));
    for z in [c(0.3, 0.1), c(-0.5, 0.5)] {
        assert!((f.eval(z, c(0.2, 0.0)).unwrap() + z).norm() < 1e-15);
    }
    // (a z + b)/(c z + 1) ↦ (b, −c, −a).
    let (a, b, cc) = (c(0.1, 0.05), c(0.2, 0.0), c(-0.3, 0.1));
    let fam = LinearFractionalFamily {
        a: EvaluableFunction::constant(a),
        b: EvaluableFunction::constant(b),
        c: EvaluableFunction::constant(cc),
        d: EvaluableFunction::constant(c(1.0, 0.0)),
        class: LfClass::Lf,
    };
    let out = lw_tetra(&fam, &tol).unwrap();
    assert!(!out.degenerate);
    assert!(out.x.eval(c(0.4, 0.0)).unwrap().dist(&TetraPoint::new(b, -cc, -a)) < 1e-15);
    // φ = z ↦ h = (0, 1).
    let one = EvaluableFunction::constant(c(1.0, 0.0));
    let zf = EvaluableFunction::constant(zero());
    let fam = LinearFractionalFamily { a: one.clone(), b: zf.clone(), c: zf, d: one, class: LfClass::BEqualsC };
    let h = lw_gamma(&fam, &tol).unwrap().eval(c(0.3, 0.0)).unwrap();
    assert!(h.s.norm() < 1e-15 && (h.p - c(1.0, 0.0)).norm() < 1e-15);
    // Two independent recoveries of h agree exactly.
    let g = HolFunctionGamma::constant(GammaPoint::new(c(0.4, 0.1), c(-0.2, 0.3)));
    let h1 = lw_gamma(&le_gamma(&g), &tol).unwrap();
    let h2 = lw_gamma(&le_gamma(&g), &tol).unwrap();
    for l in sunflower(20, 0.9) {
        assert_eq!(h1.eval(l).unwrap(), h2.eval(l).unwrap());
    }
}

#[test]
fn ue_examples() {
    let nodes = [c(0.0, 0.0), c(0.3, -0.2)];
    // F21 ≡ 0: N = 0, M = (1 − conj(F11_i) F11_j)/(1 − λ̄_iλ_j).
    let f = SchurMatrixFunction::Entries(Box::new([
        lam().scale(c(0.6, 0.0)),
        EvaluableFunction::constant(c(0.2, 0.0)),
        EvaluableFunction::constant(zero()),
        EvaluableFunction::constant(c(0.3, 0.0)),
    ]));
    let pair = ue(&f, &nodes, &probes()).unwrap();
    assert_eq!(max_abs(&pair.n), 0.0);
    for r in 0..6 {
        for q in 0..6 {
            let (li, lj) = (nodes[r / 3], nodes[q / 3]);
            let want = (c(1.0, 0.0) - (li * 0.6).conj() * (lj * 0.6)) / (c(1.0, 0.0) - li.conj() * lj);
            assert!((pair.m[(r, q)] - want).norm() < 1e-15);
        }
    }

    // Constant F = half_w: γ ≡ 1/√2, I − F*F = ½ I.
    let pair = ue(&constant_f(half_w()), &nodes, &probes()).unwrap();
    let p = probes();
    for r in 0..6 {
        for q in 0..6 {
            assert!((pair.n[(r, q)] - c(0.5, 0.0)).norm() < 1e-15);
            let (li, lj) = (nodes[r / 3], nodes[q / 3]);
            let (zl, zk) = (p[r % 3], p[q % 3]);
            let want = (c(1.0, 0.0) + zl.conj() * zk * 0.5) * 0.5 / (c(1.0, 0.0) - li.conj() * lj);
            assert!((pair.m[(r, q)] - want).norm() < 1e-15);
        }
    }

    // K = [conj(lft_i) lft_j] for a random F.
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let f = SchurMatrixFunction::Realized(random_realized(2, LKind::Strict(0.9), &mut rng));
    let pair = ue(&f, &nodes, &probes()).unwrap();
    let lf: Vec<C64> = (0..6).map(|r| lft_scalar(&f.eval(nodes[r / 3]).unwrap(), p[r % 3]).unwrap()).collect();
    let k = pair.k_matrix();
    for r in 0..6 {
        for q in 0..6 {
            assert!((k[(r, q)] - lf[r].conj() * lf[q]).norm() < 1e-13);
        }
    }
}

/// The unimodular ζ with a ≈ ζ b, checked to hold for every sample.
fn common_phase(a: &[C64], b: &[C64], tol: f64) -> Option<C64> {
    let (i, _) = b.iter().enumerate().max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))?;
    let zeta = a[i] / b[i];
    if (zeta.norm() - 1.0).abs() > tol {
        return None;
    }
    a.iter().zip(b).all(|(x, y)| (x - zeta * y).norm() < tol).then_some(zeta)
}

#[test]
fn uw_rs_gauge() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let f = SchurMatrixFunction::Realized(random_realized(2, LKind::Strict(0.9), &mut rng));
    let nodes = random_nodes(3, 0.7, 0.1, &mut rng);
    let pair = ue(&f, &nodes, &probes()).unwrap();
    let out = uw(&pair, &tol, false).unwrap();
    let se_f = se_samples(&f, &nodes, &probes()).unwrap();
    let se_xi = se_samples(&SchurMatrixFunction::Realized(out.xi.clone()), &nodes, &probes()).unwrap();
    assert!(common_phase(se_xi.as_slice(), se_f.as_slice(), 1e-8).is_some());
    for &l in &nodes {
        assert!(modulus_gap(&out.xi.eval(l).unwrap(), &f.eval(l).unwrap()) < 1e-8);
    }
    let fr = rs(&pair, &tol).unwrap();
    assert!(common_phase(fr.as_slice(), se_f.as_slice(), 1e-8).is_some());
    // Flipping the sign of the factor of N moves Ξ along the T² gauge.
    let flipped = SampledKernelPair::new(pair.nodes.clone(), pair.probes.clone(), pair.n.clone(), pair.m.clone()).unwrap();
    let again = uw(&flipped, &tol, false).unwrap();
    for &l in &nodes {
        assert!(modulus_gap(&again.xi.eval(l).unwrap(), &f.eval(l).unwrap()) < 1e-8);
    }
}

#[test]
fn sw_examples() {
    let tol = Tolerance::default();
    let nodes = [c(0.0, 0.0), c(0.4, 0.1)];
    let x = HolFunctionTetra::constant(TetraPoint::new(zero(), zero(), c(0.5, 0.0)));
    let pair = ue(&ln_tetra(&x, &tol).unwrap(), &nodes, &probes()).unwrap();
    let (canon, out) = sw_tetra(&pair, &tol).unwrap();
    // Some member of the gauge orbit is x.
    let xi0 = out.xi.eval(zero()).unwrap();
    let zeta = c(0.5, 0.0) / det2_of(&xi0);
    for l in sunflower(30, 0.9) {
        let v = sw_tetra_member(&out.xi.eval(l).unwrap(), zeta);
        assert!(v.dist(&TetraPoint::new(zero(), zero(), c(0.5, 0.0))) < 1e-8);
        assert!(canon.eval(l).unwrap().x1.norm() < 1e-8);
    }
    // ζ = −1 member.
    let m = sw_tetra_member(&xi0, c(-1.0, 0.0));
    assert!(m.dist(&TetraPoint::new(-xi0[(0, 0)], xi0[(1, 1)], -det2_of(&xi0))) < 1e-15);

    // Γ side: at the nodes h is in the SW_Γ orbit (UW only reproduces F there).
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let h = ls_gamma(&SchurMatrixFunction::Realized(random_realized(1, LKind::Strict(0.8), &mut rng)));
    let pair = ue(&ln_gamma(&h, &tol).unwrap(), &nodes, &probes()).unwrap();
    let (_, out) = sw_gamma(&pair, &tol).unwrap();
    for &l in &nodes {
        let xi = out.xi.eval(l).unwrap();
        let zeta = h.eval(l).unwrap().p / det2_of(&xi);
        assert!((zeta.norm() - 1.0).abs() < 1e-8);
        let v = sw_gamma_member(&xi, zeta);
        let w = h.eval(l).unwrap();
        assert!((v.s - w.s).norm() < 1e-7 && (v.p - w.p).norm() < 1e-7, "{l}");
    }
}

#[test]
fn lhs_values() {
    let x = TetraPoint::new(zero(), zero(), c(0.5, 0.0));
    let tol = Tolerance::default();
    let p = InterpolationProblem::new(vec![zero()], vec![x], [zero(), c(0.3, 0.0), c(-0.3, 0.0)], tol).unwrap();
    let psi = p.psi_values().unwrap();
    for (got, want) in psi.iter().zip([0.0, -0.15, 0.15]) {
        assert!((got - c(want, 0.0)).norm() < 1e-15);
    }
    let lhs = build_lhs(&p).unwrap();
    for (k, want) in [1.0, 0.9775, 0.9775].into_iter().enumerate() {
        assert!((lhs[(k, k)].re - want).abs() < 1e-15 && lhs[(k, k)].im == 0.0);
    }
    // Target on the distinguished boundary: Ψ(·, x) is an automorphism.
    let b = TetraPoint::new(c(0.3, 0.0), c(0.3, 0.0), c(1.0, 0.0));
    assert!(in_tetra_distinguished_boundary(&b, &tol));
    let p = InterpolationProblem::with_default_probes(vec![zero()], vec![b], tol).unwrap();
    let lhs = build_lhs(&p).unwrap();
    assert!((0..3).all(|k| lhs[(k, k)].re > 0.0));
}

#[test]
fn forward_certificates_verify() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..5 {
        let f = SchurMatrixFunction::Realized(random_realized(3, LKind::Strict(0.95), &mut rng));
        let nodes = random_nodes(3, 0.8, 0.1, &mut rng);
        let p = problem_from_interpolant(&f, &nodes, default_probes(), tol).unwrap();
        let cert = certificate_from_interpolant(&p, &f).unwrap();
        let rep = verify_certificate(&p, &cert, &tol).unwrap();
        assert!(rep.verdict && rep.slab_min_eig >= -1e-8 && rep.equality_residual <= 1e-8);
        let other = second_triple_check(&p, &f, [c(0.1, 0.1), c(-0.2, 0.4), c(0.6, -0.3)]).unwrap();
        assert!(other.verdict);
    }
    // F21 ≡ 0 is rejected.
    let f = SchurMatrixFunction::Entries(Box::new([
        EvaluableFunction::constant(c(0.1, 0.0)),
        EvaluableFunction::constant(c(0.2, 0.0)),
        EvaluableFunction::constant(zero()),
        EvaluableFunction::constant(c(0.3, 0.0)),
    ]));
    let p = InterpolationProblem::with_default_probes(
        vec![zero()],
        vec![TetraPoint::new(c(0.1, 0.0), c(0.3, 0.0), c(0.5, 0.0))],
        tol,
    )
    .unwrap();
    assert!(matches!(certificate_from_interpolant(&p, &f), Err(tetrablock::Error::InterpolantMismatch { .. })));
    let p = InterpolationProblem::with_default_probes(
        vec![zero()],
        vec![TetraPoint::new(c(0.1, 0.0), c(0.3, 0.0), c(0.03 + 1e-6, 0.0))],
        tol,
    )
    .unwrap();
    let f = SchurMatrixFunction::Entries(Box::new([
        EvaluableFunction::constant(c(0.1, 0.0)),
        EvaluableFunction::constant(c(-1.0, 0.0)),
        EvaluableFunction::constant(c(1e-6, 0.0)),
        EvaluableFunction::constant(c(0.3, 0.0)),
    ]));
    assert!(certificate_from_interpolant(&p, &f).is_ok());
}

#[test]
fn searched_certificates_synthesize() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for i in 0..5u64 {
        let f = SchurMatrixFunction::Realized(random_realized(2, LKind::Strict(0.9), &mut rng));
        let nodes = random_nodes(2, 0.8, 0.1, &mut rng);
        let p = problem_from_interpolant(&f, &nodes, default_probes(), tol).unwrap();
        let cfg = SearchConfig { seed: i, ..SearchConfig::default() };
        let cert = search_certificate(&p, &cfg).unwrap().expect("feasible by construction");
        assert_eq!(cert.provenance, Provenance::Searched);
        let out = procedure_sw(&p, &cert, &tol).unwrap();
        assert!(out.max_node_error() < 1e-6);
        let rep = verify_realized(&out.theta, &p, 1000);
        assert!(rep.membership_sup <= 1e-8 && rep.theta_norm_excess.unwrap() <= 1e-8);
        assert!(out.lft_residual < 1e-8);
    }
}

#[test]
fn inner_problems_give_inner_solutions() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let f = SchurMatrixFunction::Realized(random_realized(2, LKind::Unitary, &mut rng));
    let nodes = random_nodes(2, 0.7, 0.1, &mut rng);
    let p = problem_from_interpolant(&f, &nodes, default_probes(), tol).unwrap();
    let cert = certificate_from_interpolant(&p, &f).unwrap();
    let opts = SwOptions { unitary_extension: true, ..SwOptions::default() };
    let out = procedure_sw_with(&p, &cert, &tol, &opts).unwrap();
    assert!(out.theta.l.m <= 3 * p.n());
    let rep = verify_realized(&out.theta, &p, 512);
    assert!(rep.boundary_x3_defect < 1e-8, "{}", rep.boundary_x3_defect);

    // The solve pipeline also returns a finite realization.
    let solved = solve(&p, &SolveConfig::default()).unwrap().expect("feasible");
    assert!(solved.theta.l.m <= 3 * p.n());
}

#[test]
fn single_node_solve() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    for i in 0..10u64 {
        let f = SchurMatrixFunction::Realized(random_realized(1, LKind::Strict(0.99), &mut rng));
        let p = problem_from_interpolant(&f, &[random_point_in_disc(0.9, &mut rng)], default_probes(), tol).unwrap();
        let out = search_certificate_with_stats(&p, &SearchConfig { seed: i, ..SearchConfig::default() }).unwrap();
        assert!(out.certificate.is_some() && out.restarts_used <= 5);
        let r = solve(&p, &SolveConfig::default()).unwrap().unwrap();
        assert!(r.max_node_error() < 1e-6);
    }
}

#[test]
fn matrix_interpolant_check() {
    let tol = Tolerance::default();
    let p = reduce_mu_problem(&[zero()], &[half_w()], default_probes(), tol).unwrap();
    assert!(p.targets()[0].dist(&TetraPoint::new(zero(), zero(), c(0.5, 0.0))) < 1e-15);
    let rep = verify_matrix_interpolant(&constant_f(half_w()), &[zero()], &[half_w()], 64, &tol).unwrap();
    assert!((rep.mu_sup - mu_diag(&half_w()).unwrap()).abs() < 1e-15 && rep.passed);
}
