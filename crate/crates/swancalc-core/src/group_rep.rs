//! Finite groups given by multiplication tables, and representations recorded
//! by their Brauer characters.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact_arith::{teichmuller_lift_into, CyclotomicInt, FieldDescriptor, FieldElement};
use crate::Rational;

/// Largest group order accepted from a table.
pub const MAX_GROUP_ORDER: usize = 64;

/// A finite group as a multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    orders: Vec<u64>,
    /// Orders of the cyclic factors when built by [`FiniteGroup::abelian`].
    factors: Option<Vec<u64>>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 || n > MAX_GROUP_ORDER {
            return Err(Error::InvalidInput(format!("group order {n} outside 1..={MAX_GROUP_ORDER}")));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidInput("multiplication table is not square over 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidInput("no identity element".into()))?;
        let mut inverses = vec![0; n];
        for (a, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidInput(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidInput(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let orders = (0..n)
            .map(|a| {
                let mut x = a;
                let mut k = 1u64;
                while x != identity {
                    x = table[x][a];
                    k += 1;
                }
                k
            })
            .collect();
        Ok(FiniteGroup { table, identity, inverses, orders, factors: None })
    }

    pub fn cyclic(n: u64) -> FiniteGroup {
        FiniteGroup::abelian(&[n])
    }

    /// `Z/n_1 x ... x Z/n_r`; element index is mixed radix with the first factor least significant.
    pub fn abelian(factors: &[u64]) -> FiniteGroup {
        let n: u64 = factors.iter().product();
        let n = n as usize;
        let coords = |mut i: usize| -> Vec<u64> {
            factors
                .iter()
                .map(|&m| {
                    let c = (i as u64) % m;
                    i /= m as usize;
                    c
                })
                .collect()
        };
        let index = |c: &[u64]| -> usize {
            let mut idx = 0usize;
            for (k, &m) in factors.iter().enumerate().rev() {
                idx = idx * m as usize + c[k] as usize;
            }
            idx
        };
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                let ca = coords(a);
                (0..n)
                    .map(|b| {
                        let cb = coords(b);
                        let s: Vec<u64> = factors.iter().enumerate().map(|(k, &m)| (ca[k] + cb[k]) % m).collect();
                        index(&s)
                    })
                    .collect()
            })
            .collect();
        let inverses = (0..n)
            .map(|a| {
                let c: Vec<u64> = coords(a).iter().zip(factors).map(|(&x, &m)| (m - x) % m).collect();
                index(&c)
            })
            .collect();
        let orders = (0..n)
            .map(|a| coords(a).iter().zip(factors).fold(1u64, |acc, (&x, &m)| acc.lcm(&(m / m.gcd(&x)))))
            .collect();
        FiniteGroup { table, identity: 0, inverses, orders, factors: Some(factors.to_vec()) }
    }

    /// The symmetric group on `n <= 4` letters; elements in lexicographic order of one-line notation.
    pub fn symmetric(n: usize) -> Result<FiniteGroup> {
        if !(1..=4).contains(&n) {
            return Err(Error::OutOfRange(format!("symmetric group degree {n}")));
        }
        let perms = permutations(n);
        let idx = |p: &[usize]| perms.iter().position(|q| q.as_slice() == p).expect("closed");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // (a*b)(i) = a(b(i))
                        let c: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                        idx(&c)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table)
    }

    /// Dihedral group of order `2n`: element `r^i s^j` has index `i + n j`.
    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        let table = (0..2 * n)
            .map(|a| {
                let (i, j) = (a % n, a / n);
                (0..2 * n)
                    .map(|b| {
                        let (k, l) = (b % n, b / n);
                        // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
                        let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                        rot + n * ((j + l) % 2)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let m = k.unsigned_abs() % self.orders[a];
        (0..m).fold(self.identity, |x, _| self.mul(x, base))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    pub fn conjugate(&self, tau: usize, sigma: usize) -> usize {
        self.mul(self.mul(tau, sigma), self.inv(tau))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Orders of the cyclic factors, for groups built by [`FiniteGroup::abelian`].
    pub fn factors(&self) -> Option<&[u64]> {
        self.factors.as_deref()
    }

    /// Coordinates of an element of an abelian product group.
    pub fn coordinates(&self, mut a: usize) -> Option<Vec<u64>> {
        let f = self.factors.as_ref()?;
        Some(
            f.iter()
                .map(|&m| {
                    let c = (a as u64) % m;
                    a /= m as usize;
                    c
                })
                .collect(),
        )
    }

    /// Index of the element with the given coordinates in an abelian product group.
    pub fn from_coordinates(&self, c: &[u64]) -> Option<usize> {
        let f = self.factors.as_ref()?;
        let mut idx = 0usize;
        for (k, &m) in f.iter().enumerate().rev() {
            idx = idx * m as usize + (c.get(k).copied().unwrap_or(0) % m) as usize;
        }
        Some(idx)
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, o| acc.lcm(o))
    }

    /// Sorted subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(self.identity);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        !set.is_empty()
            && set.iter().all(|&a| a < self.order())
            && set.contains(&self.identity)
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    /// Table of a subgroup, with its elements in ascending order; returns the embedding.
    pub fn subgroup(&self, elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(elems) {
            return Err(Error::NotSubgroup);
        }
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        let emb: Vec<usize> = set.into_iter().collect();
        let pos = |g: usize| emb.iter().position(|&x| x == g).expect("closed");
        let table = emb.iter().map(|&a| emb.iter().map(|&b| pos(self.mul(a, b))).collect()).collect();
        Ok((FiniteGroup::from_table(table)?, emb))
    }

    /// All subgroups, each sorted, in ascending lexicographic order.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let cyclic: BTreeSet<Vec<usize>> = (0..self.order()).map(|g| self.generated(&[g])).collect();
        let mut frontier: Vec<Vec<usize>> = cyclic.iter().cloned().collect();
        found.extend(cyclic.iter().cloned());
        while let Some(h) = frontier.pop() {
            for c in &cyclic {
                let mut gens = h.clone();
                gens.extend(c.iter().copied());
                let j = self.generated(&gens);
                if found.insert(j.clone()) {
                    frontier.push(j);
                }
            }
        }
        found.into_iter().collect()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

/// Elements whose order is a power of `p`; empty when `p = 0`.
pub fn p_part(group: &FiniteGroup, p: u64) -> Vec<usize> {
    if p == 0 {
        return Vec::new();
    }
    (0..group.order()).filter(|&g| is_power_of(group.element_order(g), p)).collect()
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if p < 2 {
        return n == 1;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A representation of a finite group over `F_l-bar`, stored as its Brauer character.
///
/// Values live in `Z[zeta_m]` with `m` the prime-to-`l` part of the group exponent;
/// `l`-singular elements carry no value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerRep {
    group: Arc<FiniteGroup>,
    ell: u64,
    dim: u64,
    modulus: u64,
    values: Vec<Option<CyclotomicInt>>,
}

/// Prime-to-`l` part of `n`.
fn prime_to(mut n: u64, ell: u64) -> u64 {
    while ell > 1 && n % ell == 0 {
        n /= ell;
    }
    n
}

impl BrauerRep {
    /// Checks: value at 1 is the dimension, class-function property, values only on `l`-regular elements.
    pub fn new(group: Arc<FiniteGroup>, ell: u64, values: Vec<Option<CyclotomicInt>>) -> Result<BrauerRep> {
        if !crate::exact_arith::is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        let n = group.order();
        if values.len() != n {
            return Err(Error::InvalidInput("one Brauer value per group element required".into()));
        }
        let modulus = prime_to(group.exponent(), ell);
        let mut vals = Vec::with_capacity(n);
        for (g, v) in values.into_iter().enumerate() {
            let regular = group.element_order(g) % ell != 0;
            match (regular, v) {
                (true, Some(v)) => {
                    let v = if v.modulus() == modulus { v } else { v.embed(modulus)? };
                    vals.push(Some(v));
                }
                (false, None) => vals.push(None),
                (true, None) => return Err(Error::InvalidInput(format!("missing Brauer value at element {g}"))),
                (false, Some(_)) => {
                    return Err(Error::InvalidInput(format!("element {g} is l-singular; no Brauer value")))
                }
            }
        }
        let dim = vals[group.identity()]
            .as_ref()
            .and_then(|v| v.as_integer())
            .filter(|&d| d >= 0)
            .ok_or_else(|| Error::InvalidInput("value at the identity must be the dimension".into()))?
            as u64;
        for a in 0..n {
            for t in 0..n {
                if vals[group.conjugate(t, a)] != vals[a] {
                    return Err(Error::InvalidInput("Brauer character is not a class function".into()));
                }
            }
        }
        Ok(BrauerRep { group, ell, dim, modulus, values: vals })
    }

    pub fn trivial(group: Arc<FiniteGroup>, ell: u64, dim: u64) -> Result<BrauerRep> {
        let m = prime_to(group.exponent(), ell);
        let values = (0..group.order())
            .map(|g| (group.element_order(g) % ell != 0).then(|| CyclotomicInt::from_int(m, dim as i64)))
            .collect();
        BrauerRep::new(group, ell, values)
    }

    /// Regular representation: `|G|` at the identity, zero elsewhere.
    pub fn regular(group: Arc<FiniteGroup>, ell: u64) -> Result<BrauerRep> {
        let m = prime_to(group.exponent(), ell);
        let n = group.order() as i64;
        let values = (0..group.order())
            .map(|g| {
                (group.element_order(g) % ell != 0)
                    .then(|| CyclotomicInt::from_int(m, if g == group.identity() { n } else { 0 }))
            })
            .collect();
        BrauerRep::new(group, ell, values)
    }

    /// One-dimensional representation given by a homomorphism into `F_{l^r}^x`;
    /// values are Teichmuller lifts of `images[g]`.
    pub fn linear(group: Arc<FiniteGroup>, field: &FieldDescriptor, images: &[FieldElement]) -> Result<BrauerRep> {
        let ell = field.p();
        if images.len() != group.order() {
            return Err(Error::InvalidInput("one image per group element required".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if images[group.mul(a, b)] != field.mul(images[a], images[b]) {
                    return Err(Error::InvalidInput("images do not form a homomorphism".into()));
                }
            }
        }
        let m = prime_to(group.exponent(), ell);
        let values = (0..group.order())
            .map(|g| {
                if group.element_order(g) % ell == 0 {
                    Ok(None)
                } else {
                    teichmuller_lift_into(field, images[g], m).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        BrauerRep::new(group, ell, values)
    }

    /// Direct sum.
    pub fn sum(&self, other: &BrauerRep) -> Result<BrauerRep> {
        if self.group != other.group || self.ell != other.ell {
            return Err(Error::InvalidInput("direct sum of representations of different groups".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a.add(b)),
                _ => None,
            })
            .collect();
        BrauerRep::new(self.group.clone(), self.ell, values)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn ell(&self) -> u64 {
        self.ell
    }
    pub fn dim(&self) -> u64 {
        self.dim
    }
    /// Index `m` of the cyclotomic ring holding the values.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Brauer trace `Tr^Br(g : M)`.
    pub fn value(&self, g: usize) -> Result<&CyclotomicInt> {
        self.values[g].as_ref().ok_or(Error::EllDividesOrder)
    }
}

/// `dim M^sigma = (1/ord sigma) sum_k Tr^Br(sigma^k)`.
pub fn fixed_dim(rep: &BrauerRep, sigma: usize) -> Result<u64> {
    let g = &rep.group;
    let ord = g.element_order(sigma);
    if ord % rep.ell == 0 {
        return Err(Error::EllDividesOrder);
    }
    let mut acc = CyclotomicInt::zero(rep.modulus);
    let mut x = g.identity();
    for _ in 0..ord {
        acc = acc.add(rep.value(x)?);
        x = g.mul(x, sigma);
    }
    let total = acc
        .as_integer()
        .ok_or_else(|| Error::NonIntegral("character average is irrational".into()))?;
    if total < 0 || total % ord as i64 != 0 {
        return Err(Error::NonIntegral(format!("fixed dimension {total}/{ord}")));
    }
    Ok((total / ord as i64) as u64)
}

/// `dim M^sigma - (dim M^(sigma^p) - dim M^sigma)/(p - 1)` for `sigma` of `p`-power order.
pub fn swan_coeff(rep: &BrauerRep, sigma: usize, p: u64) -> Result<Rational> {
    let g = &rep.group;
    if p < 2 || !is_power_of(g.element_order(sigma), p) {
        return Err(Error::NotInPPart);
    }
    let d = fixed_dim(rep, sigma)? as i64;
    let dp = fixed_dim(rep, g.pow(sigma, p as i64))? as i64;
    Ok(Rational::from_integer(d) - Rational::new(dp - d, p as i64 - 1))
}

/// Checks `|(Z/p^e)^x| * swan_coeff = sum over i in (Z/p^e)^x of Tr^Br(sigma^i)` exactly.
pub fn brauer_identity_check(rep: &BrauerRep, sigma: usize, p: u64) -> Result<bool> {
    let g = &rep.group;
    let ord = g.element_order(sigma);
    if ord == 1 || !is_power_of(ord, p) {
        return Err(Error::NotInPPart);
    }
    let units: Vec<u64> = (1..ord).filter(|i| i.gcd(&ord) == 1).collect();
    let coeff = swan_coeff(rep, sigma, p)? * Rational::from_integer(units.len() as i64);
    let mut rhs = CyclotomicInt::zero(rep.modulus);
    for &i in &units {
        rhs = rhs.add(rep.value(g.pow(sigma, i as i64))?);
    }
    // coeff = num/den; compare den * rhs with num
    let lhs = CyclotomicInt::from_int(rep.modulus, *coeff.numer());
    Ok(rhs.scale(*coeff.denom()) == lhs)
}

/// Right-coset transversal of `h` in `g`: lowest-index representative of each `H tau`.
pub fn right_transversal(group: &FiniteGroup, h: &[usize]) -> Result<Vec<usize>> {
    if !group.is_subgroup(h) {
        return Err(Error::NotSubgroup);
    }
    let mut seen = vec![false; group.order()];
    let mut reps = Vec::new();
    for tau in 0..group.order() {
        if seen[tau] {
            continue;
        }
        reps.push(tau);
        for &x in h {
            seen[group.mul(x, tau)] = true;
        }
    }
    Ok(reps)
}

/// `dim (Ind_H^G M)^sigma = sum_tau dim M^(<tau sigma tau^-1> cap H) / [<tau sigma tau^-1> : <tau sigma tau^-1> cap H]`.
///
/// `h` lists the elements of `H` in `g`; `rep` is a representation of the table
/// returned by [`FiniteGroup::subgroup`] for `h`.
pub fn induced_fixed_dim(group: &FiniteGroup, h: &[usize], rep: &BrauerRep, sigma: usize) -> Result<u64> {
    let (hg, emb) = group.subgroup(h)?;
    if hg != **rep.group() {
        return Err(Error::InvalidInput("representation is not defined on the subgroup table".into()));
    }
    let pos = |x: usize| emb.iter().position(|&y| y == x);
    let mut total = Rational::from_integer(0);
    for tau in right_transversal(group, h)? {
        let x = group.conjugate(tau, sigma);
        let mut d = 1i64;
        let mut y = x;
        while pos(y).is_none() {
            y = group.mul(y, x);
            d += 1;
        }
        let fixed = fixed_dim(rep, pos(y).expect("in H"))? as i64;
        total += Rational::new(fixed, d);
    }
    if !total.is_integer() || total < Rational::from_integer(0) {
        return Err(Error::NonIntegral(format!("induced fixed dimension {total}")));
    }
    Ok(total.to_integer() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::make_field;

    fn faithful_cyclic(n: u64, ell: u64) -> BrauerRep {
        // a faithful character of Z/n with values in F_{l^r}, r = order of l mod n
        let mut r = 1;
        while (ell.pow(r) - 1) % n != 0 {
            r += 1;
        }
        let f = make_field(ell, r).unwrap();
        let zeta = f.exp((f.q() - 1) / n);
        let g = Arc::new(FiniteGroup::cyclic(n));
        let images: Vec<FieldElement> = (0..n).map(|i| f.pow(zeta, i)).collect();
        BrauerRep::linear(g, &f, &images).unwrap()
    }

    #[test]
    fn p_parts() {
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(p_part(&z6, 2), vec![0, 3]);
        assert_eq!(p_part(&z6, 5), vec![0]);
        assert!(p_part(&z6, 0).is_empty());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let three: Vec<usize> = (0..6).filter(|&g| s3.element_order(g) == 3).collect();
        let mut expect = vec![s3.identity()];
        expect.extend(three);
        expect.sort();
        assert_eq!(p_part(&s3, 3), expect);
        assert_eq!(expect.len(), 3);
    }

    #[test]
    fn fixed_dims_of_basic_reps() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let triv = BrauerRep::trivial(g.clone(), 7, 2).unwrap();
        assert_eq!(fixed_dim(&triv, 1).unwrap(), 2);
        let reg = BrauerRep::regular(g, 7).unwrap();
        assert_eq!(fixed_dim(&reg, 1).unwrap(), 1);
        let psi = faithful_cyclic(3, 7);
        assert_eq!(fixed_dim(&psi, 1).unwrap(), 0);
    }

    #[test]
    fn swan_coefficients() {
        let psi = faithful_cyclic(5, 11);
        assert_eq!(swan_coeff(&psi, 1, 5).unwrap(), Rational::new(-1, 4));
        let reg = BrauerRep::regular(Arc::new(FiniteGroup::cyclic(5)), 11).unwrap();
        assert_eq!(swan_coeff(&reg, 1, 5).unwrap(), Rational::from_integer(0));
        let triv = BrauerRep::trivial(Arc::new(FiniteGroup::cyclic(5)), 11, 3).unwrap();
        assert_eq!(swan_coeff(&triv, 2, 5).unwrap(), Rational::from_integer(3));
        assert_eq!(swan_coeff(&triv, 0, 5).unwrap(), Rational::from_integer(3));
    }

    #[test]
    fn swan_coeff_rejects_non_p_elements() {
        let triv = BrauerRep::trivial(Arc::new(FiniteGroup::cyclic(6)), 5, 1).unwrap();
        assert_eq!(swan_coeff(&triv, 1, 2).unwrap_err(), Error::NotInPPart);
    }

    #[test]
    fn brauer_identity_examples() {
        let psi = faithful_cyclic(3, 7);
        assert_eq!(swan_coeff(&psi, 1, 3).unwrap(), Rational::new(-1, 2));
        assert!(brauer_identity_check(&psi, 1, 3).unwrap());
        let triv = BrauerRep::trivial(Arc::new(FiniteGroup::cyclic(3)), 7, 4).unwrap();
        assert!(brauer_identity_check(&triv, 1, 3).unwrap());
        let reg = BrauerRep::regular(Arc::new(FiniteGroup::cyclic(2)), 3).unwrap();
        assert_eq!(reg.value(1).unwrap().as_integer(), Some(0));
        assert!(brauer_identity_check(&reg, 1, 2).unwrap());
    }

    #[test]
    fn regular_rep_of_z2_is_sum_of_lifted_eigenvalues() {
        // eigenvalues 1 and -1 in F_3 lift to 1 and -1
        let f = make_field(3, 1).unwrap();
        let g = Arc::new(FiniteGroup::cyclic(2));
        let triv = BrauerRep::linear(g.clone(), &f, &[f.one(), f.one()]).unwrap();
        let sign = BrauerRep::linear(g.clone(), &f, &[f.one(), f.from_int(-1)]).unwrap();
        assert_eq!(triv.sum(&sign).unwrap(), BrauerRep::regular(g, 3).unwrap());
    }

    #[test]
    fn induction_trivial_cases() {
        let g = FiniteGroup::cyclic(4);
        let all: Vec<usize> = (0..4).collect();
        let (hg, _) = g.subgroup(&all).unwrap();
        let psi = BrauerRep::regular(Arc::new(hg), 3).unwrap();
        assert_eq!(induced_fixed_dim(&g, &all, &psi, 1).unwrap(), fixed_dim(&psi, 1).unwrap());
        let h = [0usize, 2];
        let (hg, _) = g.subgroup(&h).unwrap();
        let triv = BrauerRep::trivial(Arc::new(hg), 3, 3).unwrap();
        assert_eq!(induced_fixed_dim(&g, &h, &triv, 0).unwrap(), 6);
    }

    #[test]
    fn induction_of_faithful_character_from_z2_to_z4() {
        let g = FiniteGroup::cyclic(4);
        let h = [0usize, 2];
        let (hg, _) = g.subgroup(&h).unwrap();
        let f = make_field(3, 1).unwrap();
        let psi = BrauerRep::linear(Arc::new(hg), &f, &[f.one(), f.from_int(-1)]).unwrap();
        assert_eq!(induced_fixed_dim(&g, &h, &psi, 1).unwrap(), 0);
    }

    #[test]
    fn rejects_non_subgroups_and_bad_tables() {
        let g = FiniteGroup::cyclic(4);
        assert_eq!(right_transversal(&g, &[0, 1]).unwrap_err(), Error::NotSubgroup);
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn subgroup_lattice_of_s3() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.subgroups().len(), 6);
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.subgroups().len(), 10);
    }
}
