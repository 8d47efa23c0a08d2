use std::sync::Arc;

use proptest::prelude::*;
use swancalc_core::chow_surface::{
    catalog_configurations, complement_euler_characteristic, kato_class_degree, log_euler_number,
    log_lefschetz_divisorial, BoundaryDivisor, SurfaceModel,
};
use swancalc_core::curve_cover::{CoverLayer, CoverSpec, SheafSpec};
use swancalc_core::exact_arith::{make_field, FieldDescriptor, FieldElement, Point, Poly, RationalFunction};
use swancalc_core::group_rep::BrauerRep;
use swancalc_core::rank1_kato::{
    cleanness, kato_c_class, laumon_decomposition, swan_divisor, theorem_5_check, AxisBoundary, AxisWindow, Chart,
    ChartFunction, Fiber, RankOneData,
};

fn surfaces() -> Vec<SurfaceModel> {
    let mut out: Vec<SurfaceModel> = catalog_configurations().unwrap().into_iter().map(|c| c.1).collect();
    out.push(SurfaceModel::curve_times_line(1));
    out.dedup_by(|a, b| a.name() == b.name());
    out
}

#[test]
fn intersection_pairing_and_blow_up_relations() {
    for x in surfaces() {
        let m = x.matrix();
        for i in 0..x.rank() {
            for j in 0..x.rank() {
                assert_eq!(m[i][j], m[j][i], "{}", x.name());
            }
        }
        assert!(x.is_consistent());
        if x.dim() != 2 {
            continue;
        }
        let Ok(up) = x.blow_up() else { continue };
        let e: Vec<i64> = (0..up.rank()).map(|i| i64::from(i == up.rank() - 1)).collect();
        assert_eq!(up.intersect(&e, &e), -1);
        for i in 0..x.rank() {
            let mut a = vec![0; x.rank()];
            a[i] = 1;
            let pa = up.pullback_class(&a).unwrap();
            assert_eq!(up.intersect(&pa, &e), 0);
            for j in 0..x.rank() {
                let mut b = vec![0; x.rank()];
                b[j] = 1;
                assert_eq!(up.intersect(&pa, &up.pullback_class(&b).unwrap()), x.intersect(&a, &b));
            }
        }
        let mut k = up.pullback_class(x.canonical()).unwrap();
        *k.last_mut().unwrap() += 1;
        assert_eq!(up.canonical(), &k[..]);
        assert_eq!(up.euler_characteristic(), x.euler_characteristic() + 1);
    }
}

#[test]
fn log_top_chern_number_is_the_complement_euler_characteristic() {
    let configs = catalog_configurations().unwrap();
    assert!(configs.len() >= 8);
    for (name, x, d) in configs {
        assert_eq!(log_euler_number(&x, &d).unwrap(), complement_euler_characteristic(&x, &d), "{name}");
    }
}

fn config_and_multiplicities() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    let n = catalog_configurations().unwrap().len();
    (0..n, prop::collection::vec(0i64..6, 3), prop::collection::vec(0i64..6, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kato_degree_forms_agree((which, a, _) in config_and_multiplicities()) {
        let (name, x, d) = catalog_configurations().unwrap().swap_remove(which);
        let sw = &a[..d.components().len()];
        let r = kato_class_degree(&x, &d, sw, None).unwrap();
        prop_assert!(r.equal, "{}: {:?}", name, r);
    }

    #[test]
    fn divisorial_lefschetz_forms_agree((which, a, _) in config_and_multiplicities()) {
        let (name, x, d) = catalog_configurations().unwrap().swap_remove(which);
        let r = log_lefschetz_divisorial(&x, &d, &a[..d.components().len()]).unwrap();
        prop_assert!(r.equal, "{}: {:?}", name, r);
    }

    #[test]
    fn kato_degree_is_quadratic_in_the_swan_divisor((which, a, b) in config_and_multiplicities()) {
        let (_, x, d) = catalog_configurations().unwrap().swap_remove(which);
        let n = d.components().len();
        let (a, b) = (&a[..n], &b[..n]);
        let sum: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
        let deg = |m: &[i64]| kato_class_degree(&x, &d, m, None).unwrap().first;
        let cross = if x.dim() == 2 {
            x.intersect(&d.combination(&x, a).unwrap(), &d.combination(&x, b).unwrap())
        } else {
            0
        };
        prop_assert_eq!(deg(&sum), deg(a) + deg(b) - 2 * cross);
    }
}

/// `P^1 x P^1` with `D = {t = 0} + {s = inf}` and `f` given in the chart `(s, t)`.
fn crossing_data(field: &FieldDescriptor, f: &ChartFunction) -> RankOneData {
    let x = SurfaceModel::quadric();
    let d = BoundaryDivisor::rational(&x, &[vec![0, 1], vec![1, 0]]).unwrap();
    let axis = |component, window| Some(AxisBoundary { component, window });
    let charts = vec![
        Chart { label: "st".into(), function: f.clone(), x_zero: None, y_zero: axis(0, AxisWindow::everywhere()) },
        Chart {
            label: "ut".into(),
            function: f.monomial_substitution((-1, 0), (0, 1)),
            x_zero: axis(1, AxisWindow::everywhere()),
            y_zero: axis(0, AxisWindow::OriginOnly),
        },
        Chart {
            label: "uw".into(),
            function: f.monomial_substitution((-1, 0), (0, -1)),
            x_zero: axis(1, AxisWindow::OriginOnly),
            y_zero: None,
        },
    ];
    RankOneData::new(field, x, d, charts, 1).unwrap()
}

/// Random `sum c_ij s^i t^-j` with `0 <= i <= 3`, `0 <= j <= 4`.
fn chart_function() -> impl Strategy<Value = (u64, Vec<(i64, i64, u64)>)> {
    (
        prop::sample::select(vec![2u64, 3, 5]),
        prop::collection::vec((0i64..4, 0i64..5, any::<u64>()), 1..6),
    )
}

fn function(f: &FieldDescriptor, terms: &[(i64, i64, u64)]) -> ChartFunction {
    let t: Vec<_> = terms.iter().map(|&(i, j, c)| ((i, -j), FieldElement(c % f.q()))).collect();
    ChartFunction::new(f, &t)
}

/// `f(a s + b, c t)`.
fn affine_change(f: &ChartFunction, a: FieldElement, b: FieldElement, c: FieldElement) -> ChartFunction {
    let field = f.field();
    let mut out = Vec::new();
    for ((i, j), k) in f.terms() {
        let scale = field.mul(k, field.powi(c, j).unwrap());
        let lin = Poly::new(field, vec![b, a]).pow(i as u32);
        for (e, &ce) in lin.coeffs().iter().enumerate() {
            out.push(((e as i64, j), field.mul(scale, ce)));
        }
    }
    ChartFunction::new(field, &out)
}

fn verdicts(data: &RankOneData) -> Vec<(bool, bool, Vec<usize>, Vec<usize>)> {
    (0..data.boundary().components().len())
        .filter(|&i| swan_divisor(data)[i] > 0)
        .map(|i| {
            let c = cleanness(data, i).unwrap();
            let mut bad: Vec<usize> = c.non_s_clean_points.iter().map(|p| p.degree()).collect();
            let mut worse: Vec<usize> = c.not_clean_points.iter().map(|p| p.degree()).collect();
            bad.sort();
            worse.sort();
            (c.clean, c.s_clean, bad, worse)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn swan_divisor_ignores_coboundaries(
        (p, terms) in chart_function(),
        g in prop::collection::vec((0i64..2, 0i64..3, any::<u64>()), 1..3),
    ) {
        let f = make_field(p, 1).unwrap();
        let base = function(&f, &terms);
        let shifted = base.add(&function(&f, &g).artin_schreier_coboundary());
        prop_assert_eq!(swan_divisor(&crossing_data(&f, &base)), swan_divisor(&crossing_data(&f, &shifted)));
    }

    #[test]
    fn cleanness_is_invariant_under_affine_coordinate_changes(
        (p, terms) in chart_function(),
        a in 1u64..5,
        b in 0u64..5,
        c in 1u64..5,
    ) {
        let f = make_field(p, 1).unwrap();
        let (a, b, c) = (FieldElement(a % p), FieldElement(b % p), FieldElement(c % p));
        prop_assume!(!a.is_zero() && !c.is_zero());
        let base = function(&f, &terms);
        let moved = affine_change(&base, a, b, c);
        let (before, after) = (crossing_data(&f, &base), crossing_data(&f, &moved));
        prop_assert_eq!(swan_divisor(&before), swan_divisor(&after));
        prop_assert_eq!(verdicts(&before), verdicts(&after));
    }

    #[test]
    fn kato_forms_agree_on_clean_data((p, terms) in chart_function()) {
        let f = make_field(p, 1).unwrap();
        let data = crossing_data(&f, &function(&f, &terms));
        if let Ok(k) = kato_c_class(&data) {
            prop_assert!(k.equal, "{:?}", k);
        }
    }

    #[test]
    fn kato_degree_survives_blowing_up_an_s_clean_point((p, terms) in chart_function(), a in any::<u64>()) {
        let f = make_field(p, 1).unwrap();
        let data = crossing_data(&f, &function(&f, &terms));
        let before = kato_c_class(&data);
        prop_assume!(before.is_ok());
        let a = FieldElement(a % p);
        let bad = cleanness(&data, 0).map(|c| c.non_s_clean_points).unwrap_or_default();
        prop_assume!(bad.iter().all(|pt| pt.rational() != Some(a)));
        let blown = data.blow_up("st", (a, f.zero())).unwrap();
        prop_assert_eq!(blown.surface().rank(), 3);
        let after = kato_c_class(&blown).unwrap();
        prop_assert_eq!(after.degree, before.unwrap().degree);
        prop_assert!(after.equal);
    }
}

fn artin_schreier_character(p: u64, g: &[u64]) -> Option<(CoverSpec, SheafSpec)> {
    let f = make_field(p, 1).unwrap();
    let g = Poly::new(&f, g.iter().map(|&c| FieldElement(c % p)).collect());
    if g.degree().unwrap_or(0) == 0 {
        return None;
    }
    let cover = CoverSpec::new(&f, &[Point::Infinity], vec![CoverLayer::ArtinSchreier { g: RationalFunction::polynomial(g) }], 32)
        .ok()?;
    let ell = if p == 2 { 3 } else { 7 };
    let lf = make_field(ell, 1).unwrap();
    let zeta = lf.exp((lf.q() - 1) / p);
    let group = cover.group().clone();
    let images: Vec<_> = (0..p).map(|el| lf.pow(zeta, el)).collect();
    let rep = BrauerRep::linear(Arc::clone(&group), &lf, &images).unwrap();
    Some((cover, SheafSpec::from_rep(rep)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fibration_swan_class_matches_kato_class(p in prop::sample::select(vec![2u64, 3]), g in prop::collection::vec(any::<u64>(), 2..6)) {
        let built = artin_schreier_character(p, &g);
        prop_assume!(built.is_some());
        let (cover, sheaf) = built.unwrap();
        for fiber in [Fiber::ProjectiveLine, Fiber::MultiplicativeGroup] {
            let r = theorem_5_check(&cover, &sheaf, fiber).unwrap();
            prop_assert!(r.holds, "{:?}", r);
            let l = laumon_decomposition(&cover, &sheaf, fiber).unwrap();
            prop_assert!(l.equal, "{:?}", l);
        }
    }
}
