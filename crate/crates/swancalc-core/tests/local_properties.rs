use num_integer::Integer;
use proptest::prelude::*;
use swancalc_core::exact_arith::{make_field, FieldDescriptor, FieldElement, LocalFunction};
use swancalc_core::local_ram::{
    log_fixed_length, swan_pole_order, wild_different_local, ExtensionKind, Layer, LayerRhs, LocalExtension,
};

/// A Laurent polynomial `sum c_k t^k` for `k` in `low..=high`, leading pole forced nonzero.
fn laurent(f: &FieldDescriptor, low: i64, raw: &[u64]) -> LocalFunction {
    let mut coeffs: Vec<FieldElement> = raw.iter().map(|&c| FieldElement(c % f.q())).collect();
    if coeffs[0].is_zero() {
        coeffs[0] = f.one();
    }
    LocalFunction::laurent(f, low, &coeffs)
}

fn pow(g: &LocalFunction, e: u64) -> LocalFunction {
    let mut acc = g.clone();
    for _ in 1..e {
        acc = acc.mul(g).unwrap();
    }
    acc
}

fn field_strategy() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(vec![(2u64, 1u32), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)])
}

/// Wild extensions: one Artin-Schreier layer, optionally followed by a tame Kummer layer over `t`.
fn wild_extension() -> impl Strategy<Value = (FieldDescriptor, ExtensionKind, usize)> {
    (field_strategy(), 1i64..7, prop::collection::vec(any::<u64>(), 1..4), 0usize..3).prop_filter_map(
        "pole order prime to p, Kummer degree dividing q - 1 and prime to the pole order",
        |((p, k), n, raw, tame)| {
            let f = make_field(p, k).ok()?;
            if n % p as i64 == 0 {
                return None;
            }
            let as_layer = Layer::ArtinSchreier { f: laurent(&f, -n, &raw) };
            if tame == 0 {
                return Some((f.clone(), ExtensionKind::ArtinSchreier(laurent(&f, -n, &raw)), precision(p, n, 1)));
            }
            let e = [2u64, 3][tame - 1];
            if (f.q() - 1) % e != 0 || e.is_multiple_of(p) || (n as u64).gcd(&e) != 1 {
                return None;
            }
            let kummer = Layer::Kummer { e, rhs: LayerRhs::Function(LocalFunction::monomial(&f, f.one(), 1)) };
            Some((f, ExtensionKind::Tower(vec![as_layer, kummer]), precision(p, n, e)))
        },
    )
}

/// Enough uniformizer coefficients to see `dt` for pole order `n` and tame degree `e`.
fn precision(p: u64, n: i64, e: u64) -> usize {
    2 * (p * e) as usize * (n as usize + 1) + 8
}

fn j_values(ext: &LocalExtension) -> Vec<u64> {
    let g = ext.galois_group().unwrap();
    (0..g.order())
        .filter(|&el| el != g.identity())
        .map(|el| log_fixed_length(ext, &ext.automorphism(el).unwrap()).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fixed_lengths_sum_to_the_wild_different((f, kind, prec) in wild_extension()) {
        let ext = LocalExtension::new(&f, kind, prec).unwrap();
        prop_assert_eq!(j_values(&ext).iter().sum::<u64>(), wild_different_local(&ext).unwrap());
    }

    #[test]
    fn fixed_length_is_constant_on_generators((f, kind, prec) in wild_extension()) {
        let ext = LocalExtension::new(&f, kind, prec).unwrap();
        let g = ext.galois_group().unwrap();
        for el in (0..g.order()).filter(|&el| el != g.identity()) {
            let j = log_fixed_length(&ext, &ext.automorphism(el).unwrap()).unwrap();
            let ord = g.element_order(el);
            for a in (2..ord).filter(|a| a.gcd(&ord) == 1) {
                let conj = ext.automorphism(g.pow(el, a as i64)).unwrap();
                prop_assert_eq!(log_fixed_length(&ext, &conj).unwrap(), j);
            }
        }
    }

    #[test]
    fn artin_schreier_coboundaries_do_not_change_ramification(
        (p, k) in field_strategy(),
        n in 1i64..6,
        raw in prop::collection::vec(any::<u64>(), 1..4),
        m in 1i64..3,
        graw in prop::collection::vec(any::<u64>(), 1..3),
    ) {
        let f = make_field(p, k).unwrap();
        prop_assume!(n % p as i64 != 0);
        let base = laurent(&f, -n, &raw);
        let g = laurent(&f, -m, &graw);
        let shifted = base.add(&pow(&g, p)).unwrap().add(&g.neg()).unwrap();
        prop_assert_eq!(swan_pole_order(&shifted).unwrap(), n as u64);
        let prec = precision(p, n, 1);
        let a = LocalExtension::new(&f, ExtensionKind::ArtinSchreier(base), prec).unwrap();
        let b = LocalExtension::new(&f, ExtensionKind::ArtinSchreier(shifted), prec).unwrap();
        prop_assert_eq!(wild_different_local(&a).unwrap(), wild_different_local(&b).unwrap());
        prop_assert_eq!(j_values(&a), j_values(&b));
    }
}

proptest! {
    // each case builds the tower at four precisions
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn doubling_precision_changes_nothing((f, kind, prec) in wild_extension()) {
        let lo = LocalExtension::new(&f, kind.clone(), prec).unwrap();
        let hi = LocalExtension::new(&f, kind, 2 * prec).unwrap();
        prop_assert_eq!(wild_different_local(&lo).unwrap(), wild_different_local(&hi).unwrap());
        prop_assert_eq!(j_values(&lo), j_values(&hi));
        prop_assert_eq!(lo.ramification_index(), hi.ramification_index());
    }
}

#[test]
fn kummer_extensions_are_tame() {
    for (p, k) in [(3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (11, 1), (13, 1)] {
        let f = make_field(p, k).unwrap();
        let n = f.q() - 1;
        for e in (2..=n).filter(|e| n.is_multiple_of(*e)) {
            let ext = LocalExtension::new(&f, ExtensionKind::Kummer(e), 16).unwrap();
            assert_eq!(ext.ramification_index(), e);
            assert_eq!(wild_different_local(&ext).unwrap(), 0);
            assert!(j_values(&ext).iter().all(|&j| j == 0), "q = {}, e = {e}", f.q());
        }
    }
}
