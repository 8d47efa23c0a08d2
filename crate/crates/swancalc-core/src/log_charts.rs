//! Logarithmic products of monomial charts, their diagonals and torsor structure, and the
//! combinatorics of the barycentric blow-up.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact_arith::FieldDescriptor;
use crate::group_rep::FiniteGroup;

/// An affine chart `Spec A` with named coordinates, some of which cut out boundary components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialChart {
    field: FieldDescriptor,
    variables: Vec<String>,
    /// Indices into `variables` of the boundary equations `t_i`, in order.
    divisor: Vec<usize>,
}

impl MonomialChart {
    pub fn new(field: &FieldDescriptor, variables: &[&str], divisor: &[&str]) -> Result<MonomialChart> {
        let mut vars: Vec<String> = Vec::with_capacity(variables.len());
        for &v in variables {
            if vars.iter().any(|w| w == v) {
                return Err(Error::InvalidInput(format!("variable {v} repeated")));
            }
            vars.push(v.into());
        }
        let mut idx = Vec::with_capacity(divisor.len());
        for &d in divisor {
            let i = vars
                .iter()
                .position(|w| w == d)
                .ok_or_else(|| Error::InvalidInput(format!("divisor variable {d} is not a chart variable")))?;
            if idx.contains(&i) {
                return Err(Error::InvalidInput(format!("divisor variable {d} repeated")));
            }
            idx.push(i);
        }
        Ok(MonomialChart { field: field.clone(), variables: vars, divisor: idx })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }
    pub fn variables(&self) -> &[String] {
        &self.variables
    }
    pub fn divisor_variables(&self) -> Vec<&str> {
        self.divisor.iter().map(|&i| self.variables[i].as_str()).collect()
    }
}

/// A monomial map of charts: `f^* s_j = (unit) prod_i t_i^(e_ij)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMorphism {
    source: MonomialChart,
    target: MonomialChart,
    /// `exponents[i][j] = e_ij`, rows indexed by source divisors, columns by target divisors.
    exponents: Vec<Vec<u64>>,
    /// Names of the unit factors, one per target divisor, kept symbolic.
    units: Vec<String>,
}

impl MonomialMorphism {
    pub fn new(source: MonomialChart, target: MonomialChart, exponents: Vec<Vec<u64>>) -> Result<MonomialMorphism> {
        if source.field != target.field {
            return Err(Error::FieldMismatch);
        }
        if exponents.len() != source.divisor.len() || exponents.iter().any(|r| r.len() != target.divisor.len()) {
            return Err(Error::InvalidInput("exponent matrix must be source divisors by target divisors".into()));
        }
        let units = target.divisor_variables().iter().map(|s| format!("v_{s}")).collect();
        Ok(MonomialMorphism { source, target, exponents, units })
    }

    /// `A^1 -> A^1`, `T -> S^n`, the boundary being the origin on both sides.
    pub fn power_map(field: &FieldDescriptor, n: u64) -> Result<MonomialMorphism> {
        let x = MonomialChart::new(field, &["S"], &["S"])?;
        let y = MonomialChart::new(field, &["T"], &["T"])?;
        MonomialMorphism::new(x, y, vec![vec![n]])
    }

    pub fn source(&self) -> &MonomialChart {
        &self.source
    }
    pub fn target(&self) -> &MonomialChart {
        &self.target
    }
    pub fn exponents(&self) -> &[Vec<u64>] {
        &self.exponents
    }
    pub fn units(&self) -> &[String] {
        &self.units
    }
}

/// A Laurent monomial in named generators; the empty monomial is `1`.
pub type Monomial = BTreeMap<String, i64>;

fn monomial(factors: &[(&str, i64)]) -> Monomial {
    let mut m = Monomial::new();
    for &(g, e) in factors {
        *m.entry(g.into()).or_insert(0) += e;
    }
    m.retain(|_, e| *e != 0);
    m
}

/// A binomial relation `left = right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub left: Monomial,
    pub right: Monomial,
}

/// `A (x) B [units^(+-1)] / (relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedAlgebra {
    /// Generators of `A (x) B`, written `a(x)1` and `1(x)b`.
    pub generators: Vec<String>,
    /// Invertible adjoined generators `U_i`.
    pub units: Vec<String>,
    pub relations: Vec<Relation>,
}

fn left_name(v: &str) -> String {
    format!("{v}(x)1")
}

fn right_name(v: &str) -> String {
    format!("1(x){v}")
}

/// The log product along paired boundary equations: one unit `U_i` and one relation
/// `t_i (x) 1 = U_i (1 (x) s_i)` for each pair.
pub fn log_product_chart(x: &MonomialChart, y: &MonomialChart, pairing: &[(usize, usize)]) -> Result<PresentedAlgebra> {
    if x.field != y.field {
        return Err(Error::FieldMismatch);
    }
    let mut left: Vec<usize> = pairing.iter().map(|p| p.0).collect();
    let mut right: Vec<usize> = pairing.iter().map(|p| p.1).collect();
    left.sort();
    right.sort();
    let full = |v: &[usize], n: usize| v.len() == n && v.iter().enumerate().all(|(i, &k)| i == k);
    if !full(&left, x.divisor.len()) || !full(&right, y.divisor.len()) {
        return Err(Error::MismatchedIndexSets);
    }
    let mut generators: Vec<String> = x.variables.iter().map(|v| left_name(v)).collect();
    generators.extend(y.variables.iter().map(|v| right_name(v)));
    let mut units = Vec::with_capacity(pairing.len());
    let mut relations = Vec::with_capacity(pairing.len());
    for (k, &(i, j)) in pairing.iter().enumerate() {
        let u = format!("U{}", k + 1);
        let t = left_name(&x.variables[x.divisor[i]]);
        let s = right_name(&y.variables[y.divisor[j]]);
        relations.push(Relation { left: monomial(&[(&t, 1)]), right: monomial(&[(&u, 1), (&s, 1)]) });
        units.push(u);
    }
    Ok(PresentedAlgebra { generators, units, relations })
}

/// A ring map out of a presented algebra, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalMap {
    pub images: BTreeMap<String, Monomial>,
}

impl DiagonalMap {
    fn image(&self, m: &Monomial) -> Option<Monomial> {
        let mut out = Monomial::new();
        for (g, &e) in m {
            for (h, &f) in self.images.get(g)? {
                *out.entry(h.clone()).or_insert(0) += e * f;
            }
        }
        out.retain(|_, e| *e != 0);
        Some(out)
    }

    /// Every relation maps to an identity; false if a generator has no image.
    pub fn satisfies(&self, algebra: &PresentedAlgebra) -> bool {
        algebra.relations.iter().all(|r| match (self.image(&r.left), self.image(&r.right)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        })
    }
}

/// The log diagonal `(X x X)~ <- X`: `a (x) 1` and `1 (x) a` go to `a`, each `U_i` to `1`.
pub fn log_diagonal(chart: &MonomialChart) -> DiagonalMap {
    let mut images = BTreeMap::new();
    for v in &chart.variables {
        images.insert(left_name(v), monomial(&[(v, 1)]));
        images.insert(right_name(v), monomial(&[(v, 1)]));
    }
    for k in 0..chart.divisor.len() {
        images.insert(format!("U{}", k + 1), Monomial::new());
    }
    DiagonalMap { images }
}

/// The self log product of a chart, boundary equations paired with themselves.
pub fn log_self_product(chart: &MonomialChart) -> Result<PresentedAlgebra> {
    let pairing: Vec<(usize, usize)> = (0..chart.divisor.len()).map(|i| (i, i)).collect();
    log_product_chart(chart, chart, &pairing)
}

/// Diagonal entries of the Smith normal form of an integer matrix (nonzero ones only).
fn smith_diagonal(mut a: Vec<Vec<i64>>) -> Vec<i64> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        let mut done = true;
        for i in t + 1..rows {
            let q = a[i][t] / a[t][t];
            for j in t..cols {
                a[i][j] -= q * a[t][j];
            }
            done &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / a[t][t];
            for i in t..rows {
                a[i][j] -= q * a[i][t];
            }
            done &= a[t][j] == 0;
        }
        if !done {
            continue;
        }
        // the pivot must divide the rest of the block
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % a[t][t] != 0)) {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Fibre group of `(X x_Y X)~ -> X`: the solutions in `G_m^I` of the unit equations
/// `prod_i V_i^(e_ij) = 1` left after restricting to the diagonal of `(Y x Y)~`.
///
/// Returns the invariant factors `d_k > 1` of the finite group `prod Z/d_k`.
pub fn unit_kernel(f: &MonomialMorphism) -> Result<Vec<u64>> {
    let p = f.source.field.p();
    let rows = f.exponents.len();
    // the equation for U_j = prod_i V_i^(e_ij) is column j; transpose to get one row per equation
    let a: Vec<Vec<i64>> =
        (0..f.target.divisor.len()).map(|j| (0..rows).map(|i| f.exponents[i][j] as i64).collect()).collect();
    let diag = smith_diagonal(a);
    if diag.len() < rows {
        return Err(Error::InvalidInput("unit equations leave a torus; the fibre group is not finite".into()));
    }
    let mut out = Vec::new();
    for d in diag {
        if d as u64 % p == 0 {
            return Err(Error::InvalidInput(format!("exponent {d} is not invertible in the field")));
        }
        if d > 1 {
            out.push(d as u64);
        }
    }
    Ok(out)
}

/// `Z/n`, the group of the torsor `(X x_Y X)~` for the `n`-th power map.
pub fn mu_torsor_group(field: &FieldDescriptor, n: u64) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidInput("power map needs n >= 1".into()));
    }
    if n % field.p() == 0 {
        return Err(Error::InvalidInput(format!("{n} is not invertible in characteristic {}", field.p())));
    }
    let factors = unit_kernel(&MonomialMorphism::power_map(field, n)?)?;
    Ok(FiniteGroup::abelian(&factors))
}

/// The bound `mu_(e_i)` on the exceptional fibre over `D_i`, for each target divisor equation.
///
/// On the log diagonal of `D_i` the unit ratio `v (x) 1 / 1 (x) v` and every `U_k` with `k != i`
/// become `1`, leaving `U_i^(e_i) = 1`. With several target divisors the bounds combine by gcd.
pub fn exceptional_roots(f: &MonomialMorphism, i: usize) -> Result<u64> {
    let row = f.exponents.get(i).ok_or_else(|| Error::OutOfRange(format!("source divisor {i}")))?;
    let mut bound = 0u64;
    for (j, unit) in f.units.iter().enumerate() {
        let mut eq = monomial(&[(&left_name(unit), 1), (&right_name(unit), -1)]);
        for (k, r) in f.exponents.iter().enumerate() {
            eq.insert(format!("U{}", k + 1), r[j] as i64);
        }
        eq.retain(|g, e| *e != 0 && *g == format!("U{}", i + 1));
        let e = eq.values().next().map_or(0, |&e| e.unsigned_abs());
        debug_assert_eq!(e, row[j]);
        bound = bound.gcd(&e);
    }
    if bound == 0 {
        return Err(Error::InvalidInput(format!("source divisor {i} does not lie over the target boundary")));
    }
    Ok(bound)
}

/// Verdict of the admissibility check on the barycentric blow-up of `T_1 ... T_m = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Number of boundary components of the blow-up, one per nonempty subset.
    pub components: usize,
    /// Components moved by the permutation.
    pub moved: usize,
    /// On failure, a component `J`, its image, and a chart (flag) containing both.
    pub witness: Option<(Vec<usize>, Vec<usize>, Vec<usize>)>,
}

fn mask_to_set(mask: u32, m: usize) -> Vec<usize> {
    (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Heap's algorithm: every permutation of `0..m`.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..m).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; m];
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Admissibility of the action of a permutation of the components on the barycentric blow-up.
///
/// The blow-up is covered by charts `A_phi` for orderings `phi` of the components; in `A_phi`
/// the boundary is the coordinate hyperplanes `T_phi(k) / T_phi(k-1) = 0`, lying over the suffix
/// `{phi(k), ..., phi(m)}`. Two components meet exactly when some chart contains both. The check
/// asks that every component be fixed or disjoint from its image, exhaustively over the charts.
/// `sigma` is one-line notation on `0..m`.
pub fn barycentric_admissibility(m: usize, sigma: &[usize]) -> Result<AdmissibilityReport> {
    if !(1..=6).contains(&m) {
        return Err(Error::OutOfRange(format!("{m} components")));
    }
    let mut seen = vec![false; m];
    if sigma.len() != m || sigma.iter().any(|&s| s >= m || core::mem::replace(&mut seen[s], true)) {
        return Err(Error::InvalidInput("sigma is not a permutation of the components".into()));
    }
    let full = (1u32 << m) - 1;
    let act = |mask: u32| (0..m).filter(|&i| mask >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << sigma[i]);
    let charts: Vec<(Vec<usize>, Vec<u32>)> = permutations(m)
        .into_iter()
        .map(|phi| {
            let suffixes = (0..m).map(|k| phi[k..].iter().fold(0u32, |acc, &i| acc | 1 << i)).collect();
            (phi, suffixes)
        })
        .collect();
    let mut moved = 0;
    let mut witness = None;
    for mask in 1..=full {
        let image = act(mask);
        if image == mask {
            continue;
        }
        moved += 1;
        if witness.is_none() {
            if let Some((phi, _)) = charts.iter().find(|(_, s)| s.contains(&mask) && s.contains(&image)) {
                witness = Some((mask_to_set(mask, m), mask_to_set(image, m), phi.iter().map(|i| i + 1).collect()));
            }
        }
    }
    Ok(AdmissibilityReport { admissible: witness.is_none(), components: full as usize, moved, witness })
}
