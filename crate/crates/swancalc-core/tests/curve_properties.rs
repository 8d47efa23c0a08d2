use std::sync::Arc;

use proptest::prelude::*;
use swancalc_core::curve_cover::{
    decompose_places, swan_character_class, swan_class, CoverLayer, CoverSpec, SheafSpec, ZeroCycle,
};
use swancalc_core::exact_arith::{make_field, FieldDescriptor, FieldElement, Point, Poly, RationalFunction};
use swancalc_core::group_rep::{BrauerRep, FiniteGroup};
use swancalc_core::Rational;

fn poly(f: &FieldDescriptor, raw: &[u64]) -> Poly {
    Poly::new(f, raw.iter().map(|&c| FieldElement(c % f.q())).collect())
}

/// A random abelian cover: a wild layer at infinity, optionally a wild layer at a finite point
/// and a Kummer layer ramified over `0` and infinity.
#[derive(Debug, Clone)]
struct CoverShape {
    field: (u64, u32),
    polynomial: Vec<u64>,
    finite_pole: Option<(u64, u64, u32)>,
    kummer: Option<u64>,
}

fn cover_shape() -> impl Strategy<Value = CoverShape> {
    (
        prop::sample::select(vec![(2u64, 1u32), (3, 1), (5, 1), (2, 2), (7, 1)]),
        prop::collection::vec(any::<u64>(), 2..6),
        prop::option::of((any::<u64>(), 1u64..64, 1u32..4)),
        prop::option::of(prop::sample::select(vec![2u64, 3, 4])),
    )
        .prop_map(|(field, polynomial, finite_pole, kummer)| CoverShape { field, polynomial, finite_pole, kummer })
}

fn build(shape: &CoverShape) -> Option<CoverSpec> {
    let f = make_field(shape.field.0, shape.field.1).ok()?;
    let mut layers = Vec::new();
    let mut boundary = vec![Point::Infinity];
    let g = poly(&f, &shape.polynomial);
    if g.degree().unwrap_or(0) == 0 {
        return None;
    }
    layers.push(CoverLayer::ArtinSchreier { g: RationalFunction::polynomial(g) });
    if let Some((a, c, m)) = shape.finite_pole {
        let a = FieldElement(a % f.q());
        let c = FieldElement(c % f.q());
        if c.is_zero() {
            return None;
        }
        let den = Poly::linear(&f, a).pow(m);
        layers.push(CoverLayer::ArtinSchreier { g: RationalFunction::new(Poly::constant(&f, c), den).ok()? });
        boundary.push(Point::Finite(a));
    }
    if let Some(e) = shape.kummer {
        let t = RationalFunction::polynomial(Poly::monomial(&f, f.one(), 1));
        layers.push(CoverLayer::Kummer { e, g: t });
        boundary.push(Point::Finite(f.zero()));
    }
    CoverSpec::new(&f, &boundary, layers, 48).ok()
}

/// Every linear character of the cover group, over the smallest `F_{ell^r}` holding the values.
fn characters(cover: &CoverSpec) -> Vec<SheafSpec> {
    let g: &Arc<FiniteGroup> = cover.group();
    let factors = g.factors().unwrap().to_vec();
    let n = g.exponent();
    let ell = [2u64, 3, 5, 7].into_iter().find(|&l| l != cover.field().p() && !n.is_multiple_of(l)).unwrap();
    let mut r = 1;
    while (ell.pow(r) - 1) % n != 0 {
        r += 1;
    }
    let lf = make_field(ell, r).unwrap();
    let zeta = lf.exp((lf.q() - 1) / n);
    let mut out = Vec::new();
    for idx in 0..g.order() {
        let ks = g.coordinates(idx).unwrap();
        let images: Vec<_> = (0..g.order())
            .map(|el| {
                let c = g.coordinates(el).unwrap();
                let e: u64 = (0..factors.len()).map(|i| ks[i] * c[i] * (n / factors[i])).sum();
                lf.pow(zeta, e % n)
            })
            .collect();
        out.push(SheafSpec::from_rep(BrauerRep::linear(g.clone(), &lf, &images).unwrap()));
    }
    out
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn swan_character_classes_sum_to_zero(shape in cover_shape()) {
        let cover = build(&shape);
        prop_assume!(cover.is_some());
        let cover = cover.unwrap();
        let mut total = ZeroCycle::new();
        for sigma in 0..cover.group().order() {
            total = total.add(&swan_character_class(&cover, sigma).unwrap());
        }
        prop_assert!(total.is_zero());
    }

    #[test]
    fn swan_character_class_vanishes_off_the_p_part(shape in cover_shape()) {
        let cover = build(&shape);
        prop_assume!(cover.is_some());
        let cover = cover.unwrap();
        let g = cover.group();
        for sigma in (0..g.order()).filter(|&s| !is_p_power(g.element_order(s), cover.field().p())) {
            prop_assert!(swan_character_class(&cover, sigma).unwrap().is_zero());
        }
    }

    #[test]
    fn swan_character_classes_are_galois_equivariant(shape in cover_shape()) {
        let cover = build(&shape);
        prop_assume!(cover.is_some());
        let cover = cover.unwrap();
        let g = cover.group();
        for sigma in 0..g.order() {
            let s = swan_character_class(&cover, sigma).unwrap();
            for tau in 0..g.order() {
                let moved = cover.act_on_cycle(tau, &s).unwrap();
                prop_assert_eq!(&moved, &swan_character_class(&cover, g.conjugate(tau, sigma)).unwrap());
            }
        }
    }

    #[test]
    fn swan_classes_are_integral_and_constant_on_fibres(shape in cover_shape()) {
        let cover = build(&shape);
        prop_assume!(cover.is_some());
        let cover = cover.unwrap();
        let order = Rational::from_integer(cover.group().order() as i64);
        for sheaf in characters(&cover) {
            let sw = swan_class(&cover, &sheaf).unwrap();
            prop_assert!(sw.downstairs.is_integral() && sw.downstairs.is_nonnegative());
            prop_assert_eq!(sw.upstairs.degree(), order * sw.downstairs.degree());
            prop_assert_eq!(&sw.upstairs, &cover.pullback(&sw.downstairs).unwrap());
            for &x in cover.boundary() {
                let places = decompose_places(&cover, x).unwrap();
                let first = sw.upstairs.coeff(&places[0].place);
                for pd in &places {
                    prop_assert_eq!(sw.upstairs.coeff(&pd.place), first);
                }
            }
        }
    }

    #[test]
    fn coboundary_shift_keeps_every_swan_class(shape in cover_shape(), h in prop::collection::vec(any::<u64>(), 1..3)) {
        let cover = build(&shape);
        prop_assume!(cover.is_some());
        let cover = cover.unwrap();
        let f = cover.field().clone();
        let h = poly(&f, &h);
        let shift = h.pow(f.p() as u32).sub(&h);
        let mut layers = cover.layers().to_vec();
        if let CoverLayer::ArtinSchreier { g } = &layers[0] {
            layers[0] = CoverLayer::ArtinSchreier { g: RationalFunction::polynomial(g.numerator().add(&shift)) };
        }
        let shifted = CoverSpec::new(&f, cover.boundary(), layers, 48).unwrap();
        for sigma in 0..cover.group().order() {
            prop_assert_eq!(swan_character_class(&cover, sigma).unwrap(), swan_character_class(&shifted, sigma).unwrap());
        }
        for (a, b) in characters(&cover).iter().zip(characters(&shifted).iter()) {
            prop_assert_eq!(swan_class(&cover, a).unwrap().downstairs, swan_class(&shifted, b).unwrap().downstairs);
        }
    }
}

