//! Algebraic laws and invariants, checked on random inputs.

use std::collections::BTreeMap;

use ellstab_core::charges::{weight_s, z_omega_b};
use ellstab_core::glaction::{act_on_charge, GLLift, Matrix2};
use ellstab_core::lattice::{ChernClass, Divisor, DivisorRF, SurfaceGeometry};
use ellstab_core::patching::{solve_u_series, solve_uv_exact, solve_uv_numeric, u_residual, PatchConstants};
use ellstab_core::series::{
    compare_order, compare_phase, int, phase_of, rat, Complex, LaurentSeries, OrderComparison, PhaseFunction,
    PhaseInterval, PhaseOrdering, Rational, Scalar,
};
use ellstab_core::transform::{curve_phi, phi, phi_hat, CurveClass};
use ellstab_core::walls::{find_walls, StabilityFamily, WallFamily};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn class() -> impl Strategy<Value = ChernClass> {
    (rational(), rational(), rational(), rational(), rational()).prop_map(|(n, x, y, xi2, s)| ChernClass::new(n, x, y, xi2, s))
}

fn flat_class() -> impl Strategy<Value = ChernClass> {
    class().prop_map(|c| c.with_xi2(int(0)))
}

fn divisor() -> impl Strategy<Value = DivisorRF> {
    (rational(), rational()).prop_map(|(p, q)| DivisorRF::rational(p, q))
}

fn geom() -> impl Strategy<Value = SurfaceGeometry> {
    (0i64..=3).prop_map(|e| SurfaceGeometry::with_e(int(e)).unwrap())
}

fn exact_series() -> impl Strategy<Value = LaurentSeries> {
    (-3i64..=3, prop::collection::vec(rational(), 0..5)).prop_map(|(low, c)| LaurentSeries::from_rationals(low, &c, None))
}

fn series() -> impl Strategy<Value = LaurentSeries> {
    (-3i64..=3, prop::collection::vec(rational(), 0..5), prop::option::of(0i64..=6))
        .prop_map(|(low, c, order)| LaurentSeries::from_rationals(low, &c, order.map(|n| n.max(low))))
}

fn flip(o: OrderComparison) -> OrderComparison {
    match o {
        OrderComparison::Lt => OrderComparison::Gt,
        OrderComparison::Gt => OrderComparison::Lt,
        other => other,
    }
}

fn nonzero_charge() -> impl Strategy<Value = Complex<LaurentSeries>> {
    (exact_series(), exact_series())
        .prop_filter("nonzero", |(a, b)| !(a.is_exact_zero() && b.is_exact_zero()))
        .prop_map(|(re, im)| Complex::new(re, im))
}

fn phase() -> impl Strategy<Value = PhaseFunction> {
    let branch = PhaseInterval::from_quarters(&int(-1), &int(1)).unwrap();
    (nonzero_charge(), -2i64..=2).prop_map(move |(z, k)| phase_of(&z, &branch).unwrap().add_integer(k))
}

fn lift() -> impl Strategy<Value = GLLift> {
    (prop::array::uniform4(-4i64..=4), -2i64..=2)
        .prop_filter("det > 0", |(m, _)| m[0] * m[3] - m[1] * m[2] > 0)
        .prop_map(|(m, k)| {
            let t = Matrix2::from_ints(m[0], m[1], m[2], m[3]);
            let anchor = GLLift::principal(t.clone()).unwrap().anchor().add_integer(2 * k);
            GLLift::new(t, anchor).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn series_ring_laws(f in exact_series(), g in exact_series(), h in exact_series()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_exact_zero());
    }

    #[test]
    fn order_laws(f in series(), g in series(), h in series(), k in 1i64..5) {
        let fg = compare_order(&f, &g);
        prop_assert_eq!(compare_order(&g, &f), flip(fg));
        let shifted = compare_order(&(&f + &h), &(&g + &h));
        if fg != OrderComparison::Indeterminate && shifted != OrderComparison::Indeterminate {
            prop_assert_eq!(shifted, fg);
        }
        let scaled = compare_order(&f.scale(&Scalar::from_int(k)), &g.scale(&Scalar::from_int(k)));
        if fg != OrderComparison::Indeterminate {
            prop_assert_eq!(scaled, fg);
        }
    }

    #[test]
    fn order_transitive(f in exact_series(), g in exact_series(), h in exact_series()) {
        if compare_order(&f, &g) == OrderComparison::Lt && compare_order(&g, &h) == OrderComparison::Lt {
            prop_assert_eq!(compare_order(&f, &h), OrderComparison::Lt);
        }
    }

    #[test]
    fn quadratic_field(a in rational(), b in rational(), d in prop::sample::select(vec![2i64, 3, 5, 7])) {
        let x = Scalar::with_surd(a, b, &BigInt::from(d));
        if let Some(inv) = x.recip() {
            prop_assert!((&x * &inv).is_one());
        } else {
            prop_assert!(x.is_zero());
        }
        prop_assert!((&x * &x.conjugate()).is_rational());
        let f = x.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.is_positive(), f > 0.0);
        }
        let back: Scalar = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn phi_is_linear_on_flat_classes(a in flat_class(), b in flat_class(), k in rational(), g in geom()) {
        let sum = a.checked_add(&b).unwrap();
        prop_assert_eq!(phi(&sum, &g), phi(&a, &g).checked_add(&phi(&b, &g)).unwrap());
        prop_assert_eq!(phi(&a.scale(&k), &g), phi(&a, &g).scale(&k));
    }

    #[test]
    fn transform_relations(c in class(), g in geom()) {
        prop_assert_eq!(phi_hat(&phi(&c, &g), &g), c.shift());
        prop_assert_eq!(phi(&phi_hat(&c, &g), &g), c.shift());
        let pc = phi(&c, &g);
        prop_assert_eq!(pc.d(), -c.n.clone());
        // Δ + e(f·ch₁)² is preserved
        let e = g.e().clone();
        let lhs = pc.discriminant(&g) + &e * pc.d() * pc.d();
        let rhs = c.discriminant(&g) + &e * c.d() * c.d();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twists_compose(c in class(), b1 in divisor(), b2 in divisor(), g in geom()) {
        prop_assert_eq!(c.twist(&b1, &g).twist(&b2, &g), c.twist(&b1.plus(&b2), &g));
        prop_assert_eq!(c.twist(&b1, &g).twist(&b1.negated(), &g), c.clone());
        prop_assert_eq!(c.twist(&b1, &g).discriminant(&g), c.discriminant(&g));
    }

    #[test]
    fn charge_under_tensoring(c in class(), b in divisor(), l in divisor(), p in 1i64..6, q in 1i64..12, g in geom()) {
        let omega: Divisor<Rational> = Divisor::new(int(p), int(q) + g.e() * int(p) + int(1));
        // Z_{ω,B}(γ·e^{−c₁(L)}) = Z_{ω,B+c₁(L)}(γ)
        let left = z_omega_b(&c.twist(&l, &g), &omega, &b, &g);
        let right = z_omega_b(&c, &omega, &b.plus(&l), &g);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn charge_linear_and_weight_antisymmetric(a in flat_class(), m in flat_class(), b in divisor(), g in geom()) {
        let omega: Divisor<Rational> = Divisor::new(int(1), g.e() + int(2));
        let za = z_omega_b(&a, &omega, &b, &g);
        let zm = z_omega_b(&m, &omega, &b, &g);
        let zsum = z_omega_b(&a.checked_add(&m).unwrap(), &omega, &b, &g);
        prop_assert_eq!(zsum, za.plus(&zm));
        prop_assert_eq!(weight_s(&za, &zm), -weight_s(&zm, &za));
        prop_assert_eq!(weight_s(&za, &za), int(0));
    }

    #[test]
    fn lift_relabels_integer_shifts(p in phase(), l in lift(), k in -3i64..=3) {
        let gp = l.apply_phase(&p).unwrap();
        let gpk = l.apply_phase(&p.add_integer(k)).unwrap();
        prop_assert_eq!(gpk.limit_value().clone(), gp.add_integer(k).limit_value().clone());
    }

    #[test]
    fn lift_preserves_order(a in phase(), b in phase(), l in lift()) {
        let before = compare_phase(&a, &b).unwrap();
        let after = compare_phase(&l.apply_phase(&a).unwrap(), &l.apply_phase(&b).unwrap()).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn act_then_undo(ps in prop::collection::vec(phase(), 1..5), l in lift()) {
        let values: BTreeMap<usize, PhaseFunction> = ps.into_iter().enumerate().collect();
        let moved = act_on_charge(&values, &l).unwrap();
        let back = act_on_charge(&moved, &l.inverse().unwrap()).unwrap();
        for (k, p) in &values {
            let q = &back[k];
            prop_assert_eq!(q.limit_value(), p.limit_value());
            prop_assert_eq!(compare_phase(p, q).unwrap(), PhaseOrdering::Eq);
        }
    }

    #[test]
    fn lift_composition(a in phase(), l1 in lift(), l2 in lift()) {
        let both = l1.compose(&l2).unwrap();
        let stepwise = l1.apply_phase(&l2.apply_phase(&a).unwrap()).unwrap();
        prop_assert_eq!(both.apply_phase(&a).unwrap().limit_value().clone(), stepwise.limit_value().clone());
    }

    #[test]
    fn numeric_patching_residuals(m in 1i64..8, alpha in 1i64..5, e in 0i64..4, v in 0.01f64..1e4) {
        prop_assume!(m > e);
        let c = PatchConstants::new(int(m), int(alpha), int(e)).unwrap();
        let s = solve_uv_numeric(&c, v).unwrap();
        prop_assert!(s.u > 0.0 && s.beta > 0.0);
        prop_assert!(s.u_relation <= 1e-12, "u relation {}", s.u_relation);
        prop_assert!(s.beta_relation <= 1e-12, "β relation {}", s.beta_relation);
    }

    #[test]
    fn exact_patching_agrees_with_numeric(m in 1i64..8, alpha in 1i64..5, e in 0i64..4, vn in 1i64..200, vd in 1i64..5) {
        prop_assume!(m > e);
        let c = PatchConstants::new(int(m), int(alpha), int(e)).unwrap();
        let v = rat(vn, vd);
        let exact = solve_uv_exact(&c, &v).unwrap();
        let num = solve_uv_numeric(&c, vn as f64 / vd as f64).unwrap();
        prop_assert!((exact.u.to_f64() - num.u).abs() <= 1e-12 * num.u);
        prop_assert!((exact.beta_sq.to_f64().sqrt() - num.beta).abs() <= 1e-10 * num.beta);
        // B·u² + v·u = A exactly
        let res = &(&(&exact.u * &exact.u).scale(&c.b()) + &exact.u.scale(&v)) - &Scalar::from_rational(c.a());
        prop_assert!(res.is_zero());
    }

    #[test]
    fn series_patching_residual_vanishes(m in 1i64..6, alpha in 1i64..4, e in 0i64..3, n in 1i64..10) {
        prop_assume!(m > e);
        let c = PatchConstants::new(int(m), int(alpha), int(e)).unwrap();
        let res = u_residual(&c, &solve_u_series(&c, n));
        prop_assert!(res.truncation_order().unwrap() >= n);
        prop_assert!(res.coefficients().iter().all(Scalar::is_zero));
        prop_assert!(res.is_known_zero());
    }

    #[test]
    fn ray_walls_ignore_positive_scaling(sub in flat_class(), k in 2i64..6) {
        let target = ChernClass::from_ints(1, 0, 2, 0, -4);
        let c = PatchConstants::new(int(2), int(1), int(0)).unwrap();
        let fam = StabilityFamily::from_q(WallFamily::Ray, c, &int(0)).unwrap();
        let one = find_walls(&target, &fam, std::slice::from_ref(&sub), (0.01, 100.0), 10).unwrap();
        let many = find_walls(&target, &fam, &[sub.scale(&int(k))], (0.01, 100.0), 10).unwrap();
        prop_assert_eq!(one.len(), many.len());
        for (a, b) in one.iter().zip(&many) {
            prop_assert_eq!(&a.param_exact, &b.param_exact);
        }
    }

    #[test]
    fn curve_rotation(r in -1000i64..1000, d in -1000i64..1000) {
        let k = CurveClass::new(r, d);
        let z: Complex<Rational> = k.charge();
        let rotated: Complex<Rational> = curve_phi(&k).charge();
        prop_assert_eq!(rotated, Complex::new(z.im.clone(), -z.re.clone()));
        prop_assert_eq!(curve_phi(&curve_phi(&curve_phi(&curve_phi(&k)))), k);
    }
}
