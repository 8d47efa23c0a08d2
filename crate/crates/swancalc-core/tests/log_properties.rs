use proptest::prelude::*;
use swancalc_core::exact_arith::make_field;
use swancalc_core::log_charts::{
    barycentric_admissibility, exceptional_roots, log_diagonal, log_self_product, mu_torsor_group, MonomialChart,
    MonomialMorphism,
};

#[test]
fn torsor_group_is_cyclic_of_the_exceptional_order() {
    for p in [2, 3, 5, 7] {
        let f = make_field(p, 1).unwrap();
        for n in (1..=20u64).filter(|n| n % p != 0) {
            let g = mu_torsor_group(&f, n).unwrap();
            let power = MonomialMorphism::power_map(&f, n).unwrap();
            assert_eq!(g.order() as u64, exceptional_roots(&power, 0).unwrap());
            assert_eq!(g.order() as u64, n);
            assert!((0..g.order()).any(|x| g.element_order(x) == n), "p = {p}, n = {n}");
        }
        assert!(mu_torsor_group(&f, p).is_err());
    }
}

/// Heap's algorithm; every permutation of `0..m` once.
fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..m).collect();
    let mut c = vec![0; m];
    let mut out = vec![a.clone()];
    let mut i = 1;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

#[test]
fn every_permutation_is_admissible_up_to_five() {
    for m in 1..=5 {
        let perms = all_permutations(m);
        assert_eq!(perms.len(), (1..=m).product::<usize>());
        for sigma in perms {
            let r = barycentric_admissibility(m, &sigma).unwrap();
            assert!(r.admissible, "m = {m}, sigma = {sigma:?}: {:?}", r.witness);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn diagonal_satisfies_the_product_relations(n in 1usize..6, mask in any::<u8>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let f = make_field(p, 1).unwrap();
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let vars: Vec<&str> = names.iter().map(String::as_str).collect();
        let divisor: Vec<&str> = vars.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).collect();
        let chart = MonomialChart::new(&f, &vars, &divisor).unwrap();
        let product = log_self_product(&chart).unwrap();
        prop_assert_eq!(product.units.len(), divisor.len());
        prop_assert!(log_diagonal(&chart).satisfies(&product));
    }
}
