use proptest::prelude::*;
use reebscope::algebra::{chain_check, evaluate, parse, BaseSpace, Count, InvariantRecord, SpaceExpr};
use reebscope::approx::{
    bound_ratio, distortion, gh_delta_bounds, morse_bound, DistortionBound, MorseBoundParams, Pairs,
};
use reebscope::complex::{betti_numbers, generate_space, random_field, Generator, SpaceSpec};
use reebscope::exec::Exec;
use reebscope::reeb::{build_reeb, reeb_oracle};
use reebscope::width::{
    reeb_width_global, reeb_width_local, simplified_bounds, sphere_chord, Geometry, GlobalGeometry, LocalGeometry,
};
use std::f64::consts::PI;

fn params() -> impl Strategy<Value = MorseBoundParams> {
    (0usize..20, 0.1f64..5.0, 2usize..6, 0.1f64..50.0, 0.05f64..3.0, 0.1f64..10.0, 0.0f64..0.5).prop_map(
        |(b, lipschitz, dim, volume, thickness, diameter, eps)| MorseBoundParams {
            b,
            lipschitz,
            dim,
            volume,
            thickness,
            diameter,
            eps,
        },
    )
}

fn bound(p: &MorseBoundParams) -> f64 {
    let DistortionBound { distortion, .. } = morse_bound(p).unwrap();
    distortion
}

proptest! {
    #[test]
    fn morse_bound_is_monotone(p in params(), bump in 0.0f64..2.0) {
        let slack = 1e-12 * bound(&p);
        let up = |q: MorseBoundParams| bound(&q) + slack >= bound(&p);
        prop_assert!(up(MorseBoundParams { b: p.b + 1, ..p }), "{:?}", p);
        prop_assert!(up(MorseBoundParams { volume: p.volume + bump, ..p }), "{:?}", p);
        prop_assert!(up(MorseBoundParams { diameter: p.diameter + bump, ..p }), "{:?}", p);
        prop_assert!(up(MorseBoundParams { eps: p.eps + bump, ..p }), "{:?}", p);
        prop_assert!(bound(&MorseBoundParams { thickness: p.thickness + bump, ..p }) <= bound(&p) + slack, "{:?}", p);
        if p.lipschitz >= 1.0 {
            prop_assert!(up(MorseBoundParams { lipschitz: p.lipschitz + bump, ..p }), "{:?}", p);
        }
    }

    #[test]
    fn bound_ratio_shape(b in 0usize..30, n in 2usize..8) {
        prop_assert_eq!(bound_ratio(b, b, n).unwrap(), 1.0);
        if b > 0 {
            prop_assert!(bound_ratio(b, b - 1, n).unwrap() > bound_ratio(b, b, n).unwrap());
        }
        prop_assert!(bound_ratio(b, b + 1, n).is_err());
    }

    #[test]
    fn gh_lower_below_upper(i in 0usize..10, b in 0usize..10, rho in 0.0f64..100.0, a in 0.0f64..10.0) {
        let (lo, hi) = gh_delta_bounds(i, b, rho, Some(a)).unwrap();
        prop_assert!(lo <= hi);
        if i < b {
            prop_assert!(gh_delta_bounds(i, b, rho, None).is_err());
        }
    }

    #[test]
    fn global_is_local_at_the_convexity_radius(inj in 1e-6f64..8.0, k in -4.0f64..4.0, dim in 2u32..7) {
        let r = if k > 0.0 { (0.5 * inj).min(PI / (2.0 * k.sqrt())) } else { 0.5 * inj };
        let g = GlobalGeometry { inj, curvature: k, dim, volume: None, diameter: None };
        let l = LocalGeometry { r, curvature: k, dim };
        let gv = reeb_width_global(&g).unwrap().value;
        prop_assert!((gv - reeb_width_local(&l).unwrap()).abs() <= 1e-12);
        prop_assert!(simplified_bounds(&Geometry::Global(g)).unwrap().value <= gv);
        prop_assert!(simplified_bounds(&Geometry::Local(l)).unwrap().value <= reeb_width_local(&l).unwrap());
    }

    #[test]
    fn chord_at_two_thirds_pi_is_the_planar_bound(k in 1e-3f64..9.0, t in 0.0f64..1.0) {
        let r = t * PI / (2.0 * k.sqrt());
        let chord = sphere_chord(2.0 * PI / 3.0, r, k).unwrap();
        let local = reeb_width_local(&LocalGeometry { r: r.max(1e-300), curvature: k, dim: 2 }).unwrap();
        prop_assert!((chord - local).abs() <= 1e-12 * local.max(1.0));
    }

    #[test]
    fn sweep_matches_oracle(seed in any::<u64>(), quantize in prop::bool::ANY, which in 0usize..4) {
        let (gen, h) = [(Generator::Torus, 0.9), (Generator::Sphere, 0.6), (Generator::Disk, 0.5), (Generator::Wedge(2), 0.4)][which];
        let fx = generate_space(&SpaceSpec::new(gen, h)).unwrap();
        let f = random_field(fx.complex.n_vertices(), seed);
        let f = if quantize { f.map(|v| (v * 5.0).floor()).unwrap() } else { f };
        let (g, map) = build_reeb(&fx.complex, &f).unwrap();
        prop_assert_eq!(g.canonical(), reeb_oracle(&fx.complex, &f).0.canonical());
        prop_assert!(g.cycle_rank() <= betti_numbers(&fx.complex).b1);
        for v in 0..fx.complex.n_vertices() {
            prop_assert_eq!(g.level_of(map.get(v)), f.value(v));
        }
    }

    #[test]
    fn distortion_ignores_constant_shifts(seed in any::<u64>(), c in -50.0f64..50.0) {
        let fx = generate_space(&SpaceSpec::new(Generator::Torus, 0.9)).unwrap();
        let f = random_field(fx.complex.n_vertices(), seed);
        let (g, m) = build_reeb(&fx.complex, &f).unwrap();
        let shifted = f.shifted(c);
        let (gs, ms) = build_reeb(&fx.complex, &shifted).unwrap();
        let a = distortion(&fx.complex, &g, &m, Pairs::All, Exec::Sequential).unwrap().value;
        let b = distortion(&fx.complex, &gs, &ms, Pairs::All, Exec::Sequential).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + c.abs()));
    }
}

fn leaf() -> impl Strategy<Value = SpaceExpr> {
    prop_oneof![
        Just(BaseSpace::Point),
        Just(BaseSpace::Circle),
        (1u32..5).prop_map(BaseSpace::Sphere),
        (1u32..5).prop_map(BaseSpace::Torus),
        (0u32..4).prop_map(|genus| BaseSpace::Orientable { genus, boundary: 0 }),
        (1u32..4).prop_map(|genus| BaseSpace::Nonorientable { genus, boundary: 0 }),
        (0u32..3, 1u32..3).prop_map(|(genus, boundary)| BaseSpace::Orientable { genus, boundary }),
        Just(BaseSpace::ProjectivePlane),
        (0u32..4).prop_map(BaseSpace::Bouquet),
    ]
    .prop_map(SpaceExpr::base)
}

fn expr() -> impl Strategy<Value = SpaceExpr> {
    leaf().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SpaceExpr::product(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SpaceExpr::wedge(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| SpaceExpr::connsum(a, b)),
        ]
    })
}

fn counts(r: &InvariantRecord) -> [Count; 5] {
    [r.b1, r.b1_prime, r.h, r.b2, r.k]
}

fn same(a: &SpaceExpr, b: &SpaceExpr) -> Result<(), TestCaseError> {
    match (evaluate(a), evaluate(b)) {
        (Ok(x), Ok(y)) => prop_assert_eq!(counts(&x), counts(&y), "{} vs {}", a, b),
        (Err(_), Err(_)) => {}
        (x, y) => prop_assert!(false, "{a}: {x:?} vs {b}: {y:?}"),
    }
    Ok(())
}

proptest! {
    #[test]
    fn operations_are_symmetric(e in expr()) {
        same(&e, &e.swapped())?;
    }

    #[test]
    fn products_and_wedges_associate(a in leaf(), b in leaf(), c in leaf()) {
        let p = SpaceExpr::product;
        same(&p(p(a.clone(), b.clone()), c.clone()), &p(a.clone(), p(b.clone(), c.clone())))?;
        let w = SpaceExpr::wedge;
        same(&w(w(a.clone(), b.clone()), c.clone()), &w(a, w(b, c)))?;
    }

    #[test]
    fn chain_holds_when_known(e in expr()) {
        if let Ok(r) = evaluate(&e) {
            if let Ok(report) = chain_check(&e.to_string(), &r) {
                prop_assert!(report.pass, "{}", report);
            }
            if let (Some(x), Some(y)) = (r.b1_prime.known(), r.b1.known()) {
                prop_assert!(x <= y);
            }
        }
    }

    #[test]
    fn display_round_trips(e in expr()) {
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
    }
}

#[test]
fn global_bound_vanishes_with_injectivity_radius() {
    let local = reeb_width_local(&LocalGeometry { r: 0.5, curvature: 1.0, dim: 2 }).unwrap();
    let mut last = f64::INFINITY;
    for inj in [1.0, 1e-2, 1e-4, 1e-8] {
        let g = reeb_width_global(&GlobalGeometry { inj, curvature: 1.0, dim: 2, volume: None, diameter: None })
            .unwrap()
            .value;
        assert!(g < last && g <= local);
        last = g;
    }
    assert!(last < 1e-7);
    assert_eq!(reeb_width_local(&LocalGeometry { r: 0.5, curvature: 1.0, dim: 2 }).unwrap(), local);
}
