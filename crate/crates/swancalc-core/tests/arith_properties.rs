use proptest::prelude::*;
use swancalc_core::exact_arith::{make_field, teichmuller_lift, FieldDescriptor, FieldElement, Poly, Series};

const FIELDS: &[(u64, u32)] = &[(2, 1), (2, 3), (2, 6), (3, 1), (3, 4), (5, 2), (7, 1), (11, 2), (101, 1)];

fn element(f: &FieldDescriptor, raw: u64) -> FieldElement {
    FieldElement(raw % f.q())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(which in 0..FIELDS.len(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (p, k) = FIELDS[which];
        let f = make_field(p, k).unwrap();
        let (a, b, c) = (element(&f, a), element(&f, b), element(&f, c));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        } else {
            prop_assert!(f.inv(a).is_err());
        }
    }
}

/// No monic divisor of degree 1..=d/2, by enumerating all of them.
fn irreducible_by_trial_division(f: &FieldDescriptor, g: &Poly) -> bool {
    let d = g.degree().unwrap();
    for e in 1..=d / 2 {
        for idx in 0..f.q().pow(e as u32) {
            let mut coeffs = Vec::with_capacity(e + 1);
            let mut rest = idx;
            for _ in 0..e {
                coeffs.push(FieldElement(rest % f.q()));
                rest /= f.q();
            }
            coeffs.push(f.one());
            if g.divrem(&Poly::new(f, coeffs)).unwrap().1.is_zero() {
                return false;
            }
        }
    }
    true
}

fn series_strategy() -> impl Strategy<Value = (usize, i64, Vec<u64>, i64, Vec<u64>)> {
    (0..FIELDS.len(), -4i64..4, prop::collection::vec(any::<u64>(), 1..10), -4i64..4, prop::collection::vec(any::<u64>(), 1..10))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn series_product_divides_back((which, va, ca, vb, cb) in series_strategy()) {
        let (p, k) = FIELDS[which];
        let f = make_field(p, k).unwrap();
        let mut ca: Vec<FieldElement> = ca.iter().map(|&c| element(&f, c)).collect();
        let mut cb: Vec<FieldElement> = cb.iter().map(|&c| element(&f, c)).collect();
        if ca[0].is_zero() { ca[0] = f.one(); }
        if cb[0].is_zero() { cb[0] = f.one(); }
        let a = Series::from_coeffs(&f, va, &ca, va + ca.len() as i64);
        let b = Series::from_coeffs(&f, vb, &cb, vb + cb.len() as i64);
        let back = a.mul(&b).unwrap().div(&b).unwrap();
        prop_assert!(back.abs_precision() <= a.abs_precision());
        prop_assert!(back.abs_precision() > va);
        for i in va..back.abs_precision() {
            prop_assert_eq!(back.coeff(i), a.coeff(i));
        }
    }

    #[test]
    fn factors_multiply_back(which in 0..4usize, coeffs in prop::collection::vec(any::<u64>(), 2..9)) {
        let (p, k) = [(2, 1), (3, 1), (2, 2), (5, 1)][which];
        let f = make_field(p, k).unwrap();
        let poly = Poly::new(&f, coeffs.iter().map(|&c| element(&f, c)).collect());
        prop_assume!(poly.degree().unwrap_or(0) > 0);
        let mut product = Poly::constant(&f, poly.leading());
        for (g, m) in poly.factor() {
            prop_assert_eq!(g.leading(), f.one());
            prop_assert!(irreducible_by_trial_division(&f, &g));
            product = product.mul(&g.pow(m));
        }
        prop_assert_eq!(product, poly);
    }
}

#[test]
fn teichmuller_lift_is_multiplicative() {
    for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4), (17, 1), (19, 1), (23, 1), (5, 2), (3, 3), (29, 1), (31, 1), (2, 5), (37, 1), (41, 1), (43, 1), (47, 1), (7, 2), (53, 1), (59, 1), (61, 1), (2, 6), (67, 1), (71, 1), (73, 1), (79, 1), (3, 4), (83, 1), (89, 1), (97, 1), (101, 1), (103, 1), (107, 1), (109, 1), (113, 1), (11, 2)] {
        let f = make_field(p, k).unwrap();
        assert!(f.q() <= 121);
        let lifts: Vec<_> = f.elements().filter(|a| !a.is_zero()).map(|a| (a, teichmuller_lift(&f, a).unwrap())).collect();
        for (a, la) in &lifts {
            for (b, lb) in &lifts {
                assert_eq!(teichmuller_lift(&f, f.mul(*a, *b)).unwrap(), la.mul(lb), "q = {}", f.q());
            }
        }
        assert!(teichmuller_lift(&f, f.zero()).is_err());
    }
}
