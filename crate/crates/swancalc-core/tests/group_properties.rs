use std::sync::Arc;

use proptest::prelude::*;
use swancalc_core::exact_arith::{make_field, CyclotomicInt};
use swancalc_core::group_rep::{
    brauer_identity_check, fixed_dim, induced_fixed_dim, p_part, swan_coeff, BrauerRep, FiniteGroup,
};
use swancalc_core::Rational;

/// `(p, ell)` with `p^3 | ell - 1`, so every character of `Z/p^e`, `e <= 3`, is defined over `F_ell`.
const COEFFICIENTS: &[(u64, u64)] = &[(2, 17), (3, 109), (5, 251)];

/// Sum of linear characters `g -> zeta^(k g)` of `Z/p^e`.
fn cyclic_rep(p: u64, ell: u64, e: u32, ks: &[u64]) -> BrauerRep {
    let n = p.pow(e);
    let f = make_field(ell, 1).unwrap();
    let zeta = f.exp((f.q() - 1) / n);
    let g = Arc::new(FiniteGroup::cyclic(n));
    let linear = |k: u64| {
        let images: Vec<_> = (0..n).map(|i| f.pow(zeta, (i * k) % n)).collect();
        BrauerRep::linear(g.clone(), &f, &images).unwrap()
    };
    ks.iter().skip(1).fold(linear(ks[0]), |acc, &k| acc.sum(&linear(k)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn brauer_identity_on_cyclic_p_groups(
        which in 0..COEFFICIENTS.len(),
        e in 1u32..=3,
        ks in prop::collection::vec(any::<u64>(), 1..5),
    ) {
        let (p, ell) = COEFFICIENTS[which];
        let ks: Vec<u64> = ks.iter().map(|k| k % p.pow(e)).collect();
        let rep = cyclic_rep(p, ell, e, &ks);
        for sigma in 1..rep.group().order() {
            prop_assert!(brauer_identity_check(&rep, sigma, p).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn swan_coefficient_is_constant_on_generators(
        which in 0..COEFFICIENTS.len(),
        e in 1u32..=3,
        ks in prop::collection::vec(any::<u64>(), 1..5),
    ) {
        let (p, ell) = COEFFICIENTS[which];
        let n = p.pow(e);
        let ks: Vec<u64> = ks.iter().map(|k| k % n).collect();
        let rep = cyclic_rep(p, ell, e, &ks);
        let g = rep.group().clone();
        for sigma in 1..g.order() {
            let c = swan_coeff(&rep, sigma, p).unwrap();
            for a in (2..n).filter(|a| a % p != 0) {
                prop_assert_eq!(swan_coeff(&rep, g.pow(sigma, a as i64), p).unwrap(), c);
            }
        }
    }
}

fn small_groups() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = (1..=24).map(|n| (format!("Z/{n}"), FiniteGroup::cyclic(n))).collect();
    for f in [&[2u64, 2][..], &[2, 4], &[2, 2, 2], &[3, 3], &[2, 6], &[2, 8], &[4, 4], &[2, 2, 4], &[2, 10], &[2, 12], &[2, 2, 6]] {
        out.push((format!("{f:?}"), FiniteGroup::abelian(f)));
    }
    out.push((String::from("S3"), FiniteGroup::symmetric(3).unwrap()));
    out.push((String::from("S4"), FiniteGroup::symmetric(4).unwrap()));
    for n in 3..=12 {
        out.push((format!("D{n}"), FiniteGroup::dihedral(n).unwrap()));
    }
    out
}

#[test]
fn trivial_representation_has_swan_coefficient_its_rank() {
    for (name, g) in small_groups() {
        let g = Arc::new(g);
        for p in [2, 3, 5] {
            let ell = if p == 2 { 3 } else { 2 };
            for dim in 1..=3 {
                let triv = BrauerRep::trivial(g.clone(), ell, dim).unwrap();
                for sigma in p_part(&g, p) {
                    assert_eq!(swan_coeff(&triv, sigma, p).unwrap(), Rational::from_integer(dim as i64), "{name}");
                }
            }
        }
    }
}

/// Permutation character of `H` on the right cosets of `K`, as a Brauer representation.
fn coset_rep(h: &Arc<FiniteGroup>, k: &[usize], ell: u64) -> BrauerRep {
    let modulus = BrauerRep::trivial(h.clone(), ell, 1).unwrap().modulus();
    let cosets: Vec<Vec<usize>> = {
        let mut seen = vec![false; h.order()];
        let mut out = Vec::new();
        for x in 0..h.order() {
            if !seen[x] {
                let c: Vec<usize> = k.iter().map(|&a| h.mul(a, x)).collect();
                c.iter().for_each(|&y| seen[y] = true);
                out.push(c);
            }
        }
        out
    };
    let values = (0..h.order())
        .map(|g| {
            (h.element_order(g) % ell != 0).then(|| {
                let fixed = cosets.iter().filter(|c| c.contains(&h.mul(c[0], g))).count();
                CyclotomicInt::from_int(modulus, fixed as i64)
            })
        })
        .collect();
    BrauerRep::new(h.clone(), ell, values).unwrap()
}

/// `dim (Ind M)^sigma` from the induced character `(1/|H|) sum_x chi(x^-1 g x)` averaged over `<sigma>`.
fn induced_fixed_dim_brute(group: &FiniteGroup, emb: &[usize], rep: &BrauerRep, sigma: usize) -> u64 {
    let ord = group.element_order(sigma);
    let mut total = CyclotomicInt::zero(rep.modulus());
    let mut g = group.identity();
    for _ in 0..ord {
        for x in 0..group.order() {
            let c = group.mul(group.inv(x), group.mul(g, x));
            if let Some(i) = emb.iter().position(|&y| y == c) {
                total = total.add(rep.value(i).unwrap());
            }
        }
        g = group.mul(g, sigma);
    }
    let n = total.as_integer().expect("rational character sum");
    let denom = (ord as i64) * emb.len() as i64;
    assert_eq!(n % denom, 0);
    (n / denom) as u64
}

#[test]
fn induced_fixed_dimension_matches_the_induced_character() {
    let mut checked = 0;
    for (name, group) in small_groups() {
        for h in group.subgroups() {
            let (table, emb) = group.subgroup(&h).unwrap();
            let table = Arc::new(table);
            for ell in [2, 3, 5, 7] {
                let mut reps = vec![BrauerRep::regular(table.clone(), ell).unwrap()];
                for k in table.subgroups() {
                    reps.push(coset_rep(&table, &k, ell));
                }
                for rep in &reps {
                    for sigma in (0..group.order()).filter(|&s| group.element_order(s) % ell != 0) {
                        let fast = induced_fixed_dim(&group, &h, rep, sigma).unwrap();
                        assert_eq!(fast, induced_fixed_dim_brute(&group, &emb, rep, sigma), "{name}, H = {h:?}, ell = {ell}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn fixed_dimension_of_induced_trivial_counts_fixed_cosets() {
    let s4 = FiniteGroup::symmetric(4).unwrap();
    for h in s4.subgroups() {
        let (table, _) = s4.subgroup(&h).unwrap();
        let triv = BrauerRep::trivial(Arc::new(table), 5, 1).unwrap();
        assert_eq!(induced_fixed_dim(&s4, &h, &triv, s4.identity()).unwrap(), (24 / h.len()) as u64);
        assert_eq!(fixed_dim(&triv, triv.group().identity()).unwrap(), 1);
    }
}
