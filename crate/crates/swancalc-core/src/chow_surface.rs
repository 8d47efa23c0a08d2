//! Numerical intersection rings of small rational and ruled surfaces and the
//! logarithmic Chern calculus on them.
//!
//! A model stores a basis of divisor classes, the intersection matrix and the
//! canonical class. `c_2(X)` comes from Noether's formula; the topological Euler
//! number is tracked separately through the construction, so the identity
//! `int c_2(Omega^1(log D)) = chi_top(X \ D)` is a genuine cross-check.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact_arith::{stable, FieldDescriptor, FieldElement, Poly};

/// Intersection data of a smooth projective curve or surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    name: String,
    dim: usize,
    basis: Vec<String>,
    /// Intersection matrix on surfaces; degrees of the basis points on curves (stored as a 1x1 matrix).
    matrix: Vec<Vec<i64>>,
    canonical: Vec<i64>,
    /// `chi(O_X)`.
    chi_structure: i64,
    /// Topological Euler number, tracked through the construction.
    euler: i64,
}

impl SurfaceModel {
    /// `P^1`, dimension one, basis the point class.
    pub fn projective_line() -> SurfaceModel {
        SurfaceModel {
            name: "P1".into(),
            dim: 1,
            basis: vec!["pt".into()],
            matrix: vec![vec![1]],
            canonical: vec![-2],
            chi_structure: 1,
            euler: 2,
        }
    }

    /// `P^2` with the line class `h`.
    pub fn projective_plane() -> SurfaceModel {
        SurfaceModel {
            name: "P2".into(),
            dim: 2,
            basis: vec!["h".into()],
            matrix: vec![vec![1]],
            canonical: vec![-3],
            chi_structure: 1,
            euler: 3,
        }
    }

    /// `P^1 x P^1` with fibre classes `f1 = pt x P^1` and `f2 = P^1 x pt`.
    pub fn quadric() -> SurfaceModel {
        SurfaceModel::curve_times_line(0).renamed("P1xP1")
    }

    /// `C x P^1` for a smooth curve of the given genus, basis `f1 = pt x P^1`, `f2 = C x pt`.
    pub fn curve_times_line(genus: u64) -> SurfaceModel {
        let g = genus as i64;
        SurfaceModel {
            name: format!("C{genus}xP1"),
            dim: 2,
            basis: vec!["f1".into(), "f2".into()],
            matrix: vec![vec![0, 1], vec![1, 0]],
            canonical: vec![2 * g - 2, -2],
            chi_structure: 1 - g,
            euler: 2 * (2 - 2 * g),
        }
    }

    fn renamed(mut self, name: &str) -> SurfaceModel {
        self.name = name.into();
        self
    }

    /// Blow-up at a point: appends `E` with `E^2 = -1`, orthogonal to pulled-back classes, `K' = K + E`.
    pub fn blow_up(&self) -> Result<SurfaceModel> {
        if self.dim != 2 {
            return Err(Error::InvalidInput("only surfaces are blown up".into()));
        }
        if self.basis.iter().filter(|b| b.starts_with('E')).count() >= 3 {
            return Err(Error::OutOfRange("at most three blow-ups".into()));
        }
        Ok(self.blow_up_point())
    }

    /// Blow-up without the catalog bound; used by iterated cleaning.
    pub(crate) fn blow_up_point(&self) -> SurfaceModel {
        let k = self.basis.len();
        let n = self.basis.iter().filter(|b| b.starts_with('E')).count();
        let mut matrix: Vec<Vec<i64>> = self.matrix.iter().map(|r| r.iter().copied().chain([0]).collect()).collect();
        let mut last = vec![0; k + 1];
        last[k] = -1;
        matrix.push(last);
        let mut basis = self.basis.clone();
        basis.push(format!("E{}", n + 1));
        let mut canonical = self.canonical.clone();
        canonical.push(1);
        SurfaceModel {
            name: format!("{}+E{}", self.name, n + 1),
            dim: 2,
            basis,
            matrix,
            canonical,
            chi_structure: self.chi_structure,
            euler: self.euler + 1,
        }
    }

    /// Pullback of a class from before the last `k` blow-ups (pads with zeros).
    pub fn pullback_class(&self, class: &[i64]) -> Result<Vec<i64>> {
        if class.len() > self.basis.len() {
            return Err(Error::InvalidInput("class has too many coordinates".into()));
        }
        let mut v = class.to_vec();
        v.resize(self.basis.len(), 0);
        Ok(v)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn basis(&self) -> &[String] {
        &self.basis
    }
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }
    pub fn canonical(&self) -> &[i64] {
        &self.canonical
    }
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Topological Euler number of `X`.
    pub fn euler_characteristic(&self) -> i64 {
        self.euler
    }

    /// `int c_2(X) = 12 chi(O) - K^2` on surfaces, `deg c_1 = -deg K` on curves.
    pub fn top_chern_number(&self) -> i64 {
        match self.dim {
            1 => -self.degree(&self.canonical),
            _ => 12 * self.chi_structure - self.intersect(&self.canonical, &self.canonical),
        }
    }

    /// `a . b` on surfaces.
    pub fn intersect(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                s += x * self.matrix[i][j] * y;
            }
        }
        s
    }

    /// Degree of a divisor class on a curve.
    fn degree(&self, a: &[i64]) -> i64 {
        a.iter().zip(&self.matrix[0]).map(|(x, d)| x * d).sum()
    }

    fn check_class(&self, a: &[i64]) -> Result<()> {
        if a.len() != self.rank() {
            return Err(Error::InvalidInput(format!("class {a:?} does not match the basis of {}", self.name)));
        }
        Ok(())
    }

    /// Symmetry and blow-up relations of the stored data.
    pub fn is_consistent(&self) -> bool {
        let n = self.rank();
        let symmetric = (0..n).all(|i| (0..n).all(|j| self.matrix[i][j] == self.matrix[j][i]));
        let exceptional = self.basis.iter().enumerate().filter(|(_, b)| b.starts_with('E')).all(|(i, _)| {
            (0..n).all(|j| self.matrix[i][j] == if i == j { -1 } else { 0 }) && self.canonical[i] == 1
        });
        symmetric && exceptional
    }
}

/// A class `c_0 + c_1 + c_2` in the numerical ring, truncated beyond the dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClass {
    pub c0: i64,
    pub c1: Vec<i64>,
    /// Degree of the codimension-2 part; always 0 on curves, where `c1` is already top-dimensional.
    pub c2: i64,
}

impl GradedClass {
    pub fn one(x: &SurfaceModel) -> GradedClass {
        GradedClass { c0: 1, c1: vec![0; x.rank()], c2: 0 }
    }

    pub fn divisor(d: &[i64]) -> GradedClass {
        GradedClass { c0: 0, c1: d.to_vec(), c2: 0 }
    }

    fn top_of(x: &SurfaceModel, a: &[i64], b: &[i64]) -> i64 {
        if x.dim == 1 {
            0
        } else {
            x.intersect(a, b)
        }
    }

    pub fn add(&self, o: &GradedClass) -> GradedClass {
        GradedClass {
            c0: self.c0 + o.c0,
            c1: self.c1.iter().zip(&o.c1).map(|(a, b)| a + b).collect(),
            c2: self.c2 + o.c2,
        }
    }

    pub fn scale(&self, k: i64) -> GradedClass {
        GradedClass { c0: self.c0 * k, c1: self.c1.iter().map(|a| a * k).collect(), c2: self.c2 * k }
    }

    pub fn mul(&self, x: &SurfaceModel, o: &GradedClass) -> GradedClass {
        let c1 = self.c1.iter().zip(&o.c1).map(|(a, b)| self.c0 * b + o.c0 * a).collect();
        let c2 = self.c0 * o.c2 + o.c0 * self.c2 + Self::top_of(x, &self.c1, &o.c1);
        GradedClass { c0: self.c0 * o.c0, c1, c2 }
    }

    /// Inverse of a class with `c0 = 1`.
    pub fn inverse(&self, x: &SurfaceModel) -> Result<GradedClass> {
        if self.c0 != 1 {
            return Err(Error::InvalidInput("only classes with constant term 1 are inverted".into()));
        }
        // (1 + a)^-1 = 1 - a + a^2
        let a = GradedClass { c0: 0, c1: self.c1.clone(), c2: self.c2 };
        Ok(GradedClass::one(x).add(&a.scale(-1)).add(&a.mul(x, &a)))
    }

    /// `c^*`: the class of the dual bundle, `sum (-1)^i c_i`.
    pub fn dual(&self) -> GradedClass {
        GradedClass { c0: self.c0, c1: self.c1.iter().map(|a| -a).collect(), c2: self.c2 }
    }

    /// Degree of the dimension-0 part.
    pub fn degree(&self, x: &SurfaceModel) -> i64 {
        if x.dim == 1 {
            self.c1.iter().zip(&x.matrix[0]).map(|(a, d)| a * d).sum()
        } else {
            self.c2
        }
    }
}

/// A component of a boundary divisor: its class and the genus of its normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub class: Vec<i64>,
    pub genus: u64,
}

/// A simple normal crossings divisor `D = sum D_i` with smooth components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryDivisor {
    components: Vec<BoundaryComponent>,
}

impl BoundaryDivisor {
    /// Checks pairwise intersections and smoothness (adjunction genus equals the declared genus).
    pub fn new(x: &SurfaceModel, components: Vec<BoundaryComponent>) -> Result<BoundaryDivisor> {
        for (i, c) in components.iter().enumerate() {
            x.check_class(&c.class)?;
            if x.dim == 1 {
                if c.genus != 0 || c.class.iter().sum::<i64>() != 1 {
                    return Err(Error::InvalidInput("curve boundary components are single points".into()));
                }
                continue;
            }
            let arithmetic = x.intersect(&c.class, &c.class) + x.intersect(&x.canonical, &c.class);
            if arithmetic != 2 * c.genus as i64 - 2 {
                return Err(Error::InvalidInput(format!("component {i} is not a smooth curve of genus {}", c.genus)));
            }
            for d in &components[..i] {
                if x.intersect(&c.class, &d.class) < 0 {
                    return Err(Error::InvalidInput("negative intersection between boundary components".into()));
                }
            }
        }
        Ok(BoundaryDivisor { components })
    }

    pub fn empty() -> BoundaryDivisor {
        BoundaryDivisor { components: Vec::new() }
    }

    /// Rational smooth components from classes.
    pub fn rational(x: &SurfaceModel, classes: &[Vec<i64>]) -> Result<BoundaryDivisor> {
        BoundaryDivisor::new(x, classes.iter().map(|c| BoundaryComponent { class: c.clone(), genus: 0 }).collect())
    }

    pub fn components(&self) -> &[BoundaryComponent] {
        &self.components
    }

    /// `sum m_i D_i`.
    pub fn combination(&self, x: &SurfaceModel, mult: &[i64]) -> Result<Vec<i64>> {
        if mult.len() != self.components.len() {
            return Err(Error::InvalidInput("one multiplicity per boundary component".into()));
        }
        let mut v = vec![0; x.rank()];
        for (c, &m) in self.components.iter().zip(mult) {
            for (a, b) in v.iter_mut().zip(&c.class) {
                *a += m * b;
            }
        }
        Ok(v)
    }

    /// Number of points of `D_i` on the other components.
    fn crossings(&self, x: &SurfaceModel, i: usize) -> i64 {
        if x.dim == 1 {
            return 0;
        }
        let ci = &self.components[i].class;
        (0..self.components.len()).filter(|&j| j != i).map(|j| x.intersect(ci, &self.components[j].class)).sum()
    }
}

/// `c(Omega^1_X(log D)) = c(Omega^1_X) prod (1 - D_i)^-1`.
pub fn chern_log(x: &SurfaceModel, d: &BoundaryDivisor) -> Result<GradedClass> {
    let mut c = GradedClass { c0: 1, c1: x.canonical.clone(), c2: if x.dim == 2 { x.top_chern_number() } else { 0 } };
    for comp in &d.components {
        let minus = GradedClass::one(x).add(&GradedClass::divisor(&comp.class).scale(-1));
        c = c.mul(x, &minus.inverse(x)?);
    }
    Ok(c)
}

/// `int c_dim(Omega^1_X(log D))`, with the sign `(-1)^dim` that makes it `chi_top(X \ D)`.
pub fn log_euler_number(x: &SurfaceModel, d: &BoundaryDivisor) -> Result<i64> {
    let c = chern_log(x, d)?;
    Ok(match x.dim {
        1 => -c.degree(x),
        _ => c.c2,
    })
}

/// `chi_top(X \ D)` by inclusion-exclusion over the components and their crossings.
pub fn complement_euler_characteristic(x: &SurfaceModel, d: &BoundaryDivisor) -> i64 {
    let mut chi_d = 0;
    for (i, c) in d.components.iter().enumerate() {
        chi_d += 2 - 2 * c.genus as i64;
        if x.dim == 2 {
            for e in &d.components[..i] {
                chi_d -= x.intersect(&c.class, &e.class);
            }
        } else {
            chi_d -= 1;
        }
    }
    x.euler_characteristic() - chi_d
}

/// Both forms of the degree of `{c(Omega^1(log D))^* (1 + Z)^-1 Z}_0` for `Z = sum m_i D_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KatoReport {
    /// Degree of the Chern-class expression.
    pub first: i64,
    /// `(-1)^(d-1) sum m_i deg c_(d-1)(Coker_i) cap [D_i]`.
    pub second: i64,
    pub equal: bool,
}

fn check_multiplicities(mult: &[i64]) -> Result<()> {
    if mult.iter().any(|&m| m < 0) {
        return Err(Error::NegativeMultiplicity);
    }
    Ok(())
}

fn chern_expression(x: &SurfaceModel, d: &BoundaryDivisor, z: &[i64]) -> Result<i64> {
    let c = chern_log(x, d)?;
    let zc = GradedClass::divisor(z);
    let plus = GradedClass::one(x).add(&zc);
    Ok(c.dual().mul(x, &plus.inverse(x)?).mul(x, &zc).degree(x))
}

/// Degree of the Kato class for the Swan divisor `sum sw_i D_i`.
///
/// `coker` gives `deg c_1(Coker rsw_i)` on `D_i` for components with `sw_i > 0`; when absent it is
/// read from the residue sequence on `D_i`: `2g_i - 2 + #(D_i meets the rest) + D_chi . D_i`.
pub fn kato_class_degree(
    x: &SurfaceModel,
    d: &BoundaryDivisor,
    sw: &[i64],
    coker: Option<&[i64]>,
) -> Result<KatoReport> {
    check_multiplicities(sw)?;
    let dchi = d.combination(x, sw)?;
    let first = chern_expression(x, d, &dchi)?;
    let second = if x.dim == 1 {
        sw.iter().sum()
    } else {
        let mut acc = 0;
        for (i, &m) in sw.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let deg = match coker {
                Some(c) => *c.get(i).ok_or_else(|| Error::InvalidInput("missing cokernel degree".into()))?,
                None => {
                    let comp = &d.components[i];
                    2 * comp.genus as i64 - 2 + d.crossings(x, i) + x.intersect(&dchi, &comp.class)
                }
            };
            acc -= m * deg;
        }
        acc
    };
    Ok(KatoReport { first, second, equal: first == second })
}

/// The divisorial log Lefschetz number in three forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LefschetzReport {
    /// `{c^* (1 + D_sigma)^-1 D_sigma}_0`.
    pub dual_form: i64,
    /// `(-1)^(d-1) {c (1 - D_sigma)^-1 D_sigma}_0`.
    pub direct_form: i64,
    /// `{c^* s(D_sigma / Y)}_0` with the Segre class of the Cartier divisor.
    pub segre_form: i64,
    pub equal: bool,
}

/// Log Lefschetz number of an admissible automorphism whose log fixed part is `sum m_i D_i`.
pub fn log_lefschetz_divisorial(y: &SurfaceModel, d: &BoundaryDivisor, mult: &[i64]) -> Result<LefschetzReport> {
    check_multiplicities(mult)?;
    let z = d.combination(y, mult)?;
    let c = chern_log(y, d)?;
    let zc = GradedClass::divisor(&z);
    let dual_form = chern_expression(y, d, &z)?;
    let minus = GradedClass::one(y).add(&zc.scale(-1));
    let sign = if y.dim % 2 == 0 { -1 } else { 1 };
    let direct_form = sign * c.mul(y, &minus.inverse(y)?).mul(y, &zc).degree(y);
    // s(Z/Y) = sum_k (-1)^k Z^(k+1), computed by repeated multiplication
    let mut segre = GradedClass { c0: 0, c1: vec![0; y.rank()], c2: 0 };
    let mut power = zc.clone();
    for k in 0..y.dim {
        segre = segre.add(&power.scale(if k % 2 == 0 { 1 } else { -1 }));
        power = power.mul(y, &zc);
    }
    let segre_form = c.dual().mul(y, &segre).degree(y);
    Ok(LefschetzReport {
        dual_form,
        direct_form,
        segre_form,
        equal: dual_form == direct_form && direct_form == segre_form,
    })
}

/// A finite morphism of models: its degree and the pullback of each basis class of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackData {
    pub degree: i64,
    pub images: Vec<Vec<i64>>,
}

/// `deg D^log = (-1)^(d-1) [int c_d(Omega^1_Y(log D)) - int c_d(f^* Omega^1_X(log B))]`.
pub fn localized_chern_different_degree(
    y: &SurfaceModel,
    d: &BoundaryDivisor,
    x: &SurfaceModel,
    b: &BoundaryDivisor,
    f: &PullbackData,
) -> Result<i64> {
    if y.dim != x.dim || f.images.len() != x.rank() || f.degree < 1 {
        return Err(Error::InvalidInput("pullback data has the wrong shape".into()));
    }
    for img in &f.images {
        y.check_class(img)?;
    }
    if x.dim == 2 {
        for i in 0..x.rank() {
            for j in 0..x.rank() {
                if y.intersect(&f.images[i], &f.images[j]) != f.degree * x.matrix[i][j] {
                    return Err(Error::InvalidInput("pullback is incompatible with the intersection pairing".into()));
                }
            }
        }
    }
    let top = |m: &SurfaceModel, dd: &BoundaryDivisor| -> Result<i64> {
        let c = chern_log(m, dd)?;
        Ok(if m.dim == 1 { c.degree(m) } else { c.c2 })
    };
    let sign = if y.dim % 2 == 0 { -1 } else { 1 };
    Ok(sign * (top(y, d)? - f.degree * top(x, b)?))
}

/// A polynomial in two variables, used as a truncated power series at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    field: FieldDescriptor,
    terms: BTreeMap<(u32, u32), FieldElement>,
}

impl BivariatePoly {
    pub fn new(field: &FieldDescriptor, terms: &[((u32, u32), FieldElement)]) -> BivariatePoly {
        let mut out = BivariatePoly { field: field.clone(), terms: BTreeMap::new() };
        for &(k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// Terms `(i, j, c)` for `c x^i y^j` with integer coefficients.
    pub fn from_ints(field: &FieldDescriptor, terms: &[(u32, u32, i64)]) -> BivariatePoly {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| ((i, j), field.from_int(c))).collect();
        BivariatePoly::new(field, &t)
    }

    pub fn x(field: &FieldDescriptor) -> BivariatePoly {
        BivariatePoly::new(field, &[((1, 0), FieldElement::ONE)])
    }

    pub fn y(field: &FieldDescriptor) -> BivariatePoly {
        BivariatePoly::new(field, &[((0, 1), FieldElement::ONE)])
    }

    fn add_term(&mut self, k: (u32, u32), c: FieldElement) {
        let f = &self.field;
        let v = f.add(self.terms.get(&k).copied().unwrap_or(FieldElement::ZERO), c);
        if v.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, o: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&k, &c) in &o.terms {
            out.add_term(k, self.field.neg(c));
        }
        out
    }

    pub fn mul(&self, o: &BivariatePoly) -> BivariatePoly {
        let f = &self.field;
        let mut out = BivariatePoly { field: f.clone(), terms: BTreeMap::new() };
        for (&(a, b), &c) in &self.terms {
            for (&(d, e), &g) in &o.terms {
                out.add_term((a + d, b + e), f.mul(c, g));
            }
        }
        out
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    /// `p(x, x v)` in the variables `(x, v)`.
    fn chart_substitute(&self) -> BivariatePoly {
        let mut out = BivariatePoly { field: self.field.clone(), terms: BTreeMap::new() };
        for (&(i, j), &c) in &self.terms {
            out.add_term((i + j, j), c);
        }
        out
    }

    fn swap(&self) -> BivariatePoly {
        let mut out = BivariatePoly { field: self.field.clone(), terms: BTreeMap::new() };
        for (&(i, j), &c) in &self.terms {
            out.add_term((j, i), c);
        }
        out
    }

    /// Exact division by `x`.
    fn div_x(&self) -> Option<BivariatePoly> {
        let mut out = BivariatePoly { field: self.field.clone(), terms: BTreeMap::new() };
        for (&(i, j), &c) in &self.terms {
            out.add_term((i.checked_sub(1)?, j), c);
        }
        Some(out)
    }

    /// `p(x, c + w)` in the variables `(x, w)`.
    fn translate_y(&self, c: FieldElement) -> BivariatePoly {
        let f = &self.field;
        let shift = BivariatePoly::new(f, &[((0, 0), c), ((0, 1), FieldElement::ONE)]);
        let mut out = BivariatePoly { field: f.clone(), terms: BTreeMap::new() };
        for (&(i, j), &a) in &self.terms {
            let mut t = BivariatePoly::new(f, &[((i, 0), a)]);
            for _ in 0..j {
                t = t.mul(&shift);
            }
            for (&k, &v) in &t.terms {
                out.add_term(k, v);
            }
        }
        out
    }

    /// `p(0, v)` as a univariate polynomial.
    fn restrict_x0(&self) -> Poly {
        let f = &self.field;
        let deg = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
        let mut c = vec![FieldElement::ZERO; deg + 1];
        for (&(i, j), &a) in &self.terms {
            if i == 0 {
                c[j as usize] = a;
            }
        }
        Poly::new(f, c)
    }
}

/// `dim F[x,y] / (I + m^n)` by elimination on the monomials of degree below `n`.
fn truncated_colength(field: &FieldDescriptor, gens: &[BivariatePoly], n: u32) -> u64 {
    let monomials: Vec<(u32, u32)> = (0..n).flat_map(|d| (0..=d).map(move |j| (d - j, j))).collect();
    let index: BTreeMap<(u32, u32), usize> = monomials.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let cols = monomials.len();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for g in gens {
        let Some(order) = g.order() else { continue };
        for &(a, b) in &monomials {
            if a + b + order >= n {
                continue;
            }
            let mut row = vec![FieldElement::ZERO; cols];
            for (&(i, j), &c) in &g.terms {
                if let Some(&k) = index.get(&(i + a, j + b)) {
                    row[k] = c;
                }
            }
            rows.push(row);
        }
    }
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, piv);
        let inv = field.inv(rows[rank][col]).expect("nonzero pivot");
        let pivot_row: Vec<FieldElement> = rows[rank].iter().map(|&x| field.mul(x, inv)).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col];
                for c in col..cols {
                    rows[r][c] = field.sub(rows[r][c], field.mul(factor, pivot_row[c]));
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    (cols - rank) as u64
}

/// Colength of the ideal in the completed local ring at the origin, stable under doubling of `n`.
pub fn local_colength(field: &FieldDescriptor, gens: &[BivariatePoly], n: usize) -> Result<u64> {
    if gens.iter().any(|g| g.terms.contains_key(&(0, 0))) {
        return Ok(0);
    }
    stable(n, |m| Ok(truncated_colength(field, gens, m as u32))).map_err(|e| match e {
        Error::UnstablePrecision => Error::NonIsolated,
        other => other,
    })
}

/// Isolated fixed point of `sigma` at the origin of `A^2` and its blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsolatedFixedReport {
    /// `length O_{Y^sigma, y}`.
    pub length: u64,
    /// Intersection of the proper transform of the graph with the log diagonal: `length - 1`.
    pub predicted: i64,
    /// The same intersection computed from the log fixed points of the lifted automorphism on the
    /// exceptional curve, when those are rational and isolated.
    pub proper_transform: Option<i64>,
    /// `Some(true)` when the exceptional term `d = 2`, the excess term `-(d - 1)` and the proper
    /// transform reproduce the length; `None` when the proper transform is not computable.
    pub reproduces: Option<bool>,
}

/// `sigma = (sigma(x), sigma(y))` given as polynomials; the fixed ideal is `(sigma(x) - x, sigma(y) - y)`.
pub fn isolated_fixed_report(sigma: (&BivariatePoly, &BivariatePoly), precision: usize) -> Result<IsolatedFixedReport> {
    let field = sigma.0.field.clone();
    let a = sigma.0.sub(&BivariatePoly::x(&field));
    let b = sigma.1.sub(&BivariatePoly::y(&field));
    if a.terms.contains_key(&(0, 0)) || b.terms.contains_key(&(0, 0)) {
        return Err(Error::InvalidInput("the origin is not fixed".into()));
    }
    let length = local_colength(&field, &[a.clone(), b.clone()], precision)?;
    let predicted = length as i64 - 1;
    let proper_transform = blown_up_fixed_length(&field, &a, &b, precision);
    let reproduces = proper_transform.map(|pt| pt + 2 - 1 == length as i64);
    Ok(IsolatedFixedReport { length, predicted, proper_transform, reproduces })
}

/// Sum over the exceptional curve of the log fixed lengths of the lifted automorphism.
fn blown_up_fixed_length(field: &FieldDescriptor, a: &BivariatePoly, b: &BivariatePoly, n: usize) -> Option<i64> {
    // chart (x, v = y/x): sigma(x)/x - 1 = a(x, xv)/x and sigma(v) - v = (b - v a)(x, xv)/x up to a unit
    let chart = |a: &BivariatePoly, b: &BivariatePoly| -> Option<(BivariatePoly, BivariatePoly)> {
        let v = BivariatePoly::y(field);
        let a1 = a.chart_substitute();
        let b1 = b.chart_substitute();
        Some((a1.div_x()?, b1.sub(&v.mul(&a1)).div_x()?))
    };
    let (a1, b1) = chart(a, b)?;
    let g = a1.restrict_x0().gcd(&b1.restrict_x0());
    if g.is_zero() {
        return None;
    }
    let roots = g.roots_with_multiplicity();
    if roots.iter().map(|r| r.1 as usize).sum::<usize>() != g.degree().unwrap_or(0) {
        return None;
    }
    let mut total = 0i64;
    for (c, _) in roots {
        let gens = [a1.translate_y(c), b1.translate_y(c)];
        total += local_colength(field, &gens, n).ok()? as i64;
    }
    // second chart (u = x/y, y) contributes only at u = 0
    let (a2, b2) = chart(&b.swap(), &a.swap())?;
    if !a2.terms.contains_key(&(0, 0)) && !b2.terms.contains_key(&(0, 0)) {
        total += local_colength(field, &[a2, b2], n).ok()? as i64;
    }
    Some(total)
}

/// The built-in `(X, D)` configurations used for the Euler characteristic sanity sweep.
pub fn catalog_configurations() -> Result<Vec<(String, SurfaceModel, BoundaryDivisor)>> {
    let p2 = SurfaceModel::projective_plane();
    let q = SurfaceModel::quadric();
    let bl1 = p2.blow_up()?;
    let bl2 = bl1.blow_up()?;
    let bl3 = bl2.blow_up()?;
    let c2 = SurfaceModel::curve_times_line(2);
    let mut out = Vec::new();
    let mut push = |name: &str, x: &SurfaceModel, d: BoundaryDivisor| out.push((String::from(name), x.clone(), d));
    push("P2, empty", &p2, BoundaryDivisor::empty());
    push("P2, line", &p2, BoundaryDivisor::rational(&p2, &[vec![1]])?);
    push("P2, two lines", &p2, BoundaryDivisor::rational(&p2, &[vec![1], vec![1]])?);
    push("P2, triangle", &p2, BoundaryDivisor::rational(&p2, &[vec![1], vec![1], vec![1]])?);
    push("P2, conic", &p2, BoundaryDivisor::rational(&p2, &[vec![2]])?);
    push("P2, smooth cubic", &p2, BoundaryDivisor::new(&p2, vec![BoundaryComponent { class: vec![3], genus: 1 }])?);
    push("P1xP1, fibre", &q, BoundaryDivisor::rational(&q, &[vec![1, 0]])?);
    push("P1xP1, two crossing fibres", &q, BoundaryDivisor::rational(&q, &[vec![1, 0], vec![0, 1]])?);
    push("P1xP1, diagonal", &q, BoundaryDivisor::rational(&q, &[vec![1, 1]])?);
    push("Bl1 P2, exceptional", &bl1, BoundaryDivisor::rational(&bl1, &[vec![0, 1]])?);
    push("Bl1 P2, line through the point and E", &bl1, BoundaryDivisor::rational(&bl1, &[vec![1, -1], vec![0, 1]])?);
    push(
        "Bl2 P2, two exceptional curves and the line through both points",
        &bl2,
        BoundaryDivisor::rational(&bl2, &[vec![1, -1, -1], vec![0, 1, 0], vec![0, 0, 1]])?,
    );
    push(
        "Bl3 P2, proper transform of a triangle through its vertices",
        &bl3,
        BoundaryDivisor::rational(&bl3, &[vec![1, -1, -1, 0], vec![1, -1, 0, -1], vec![1, 0, -1, -1]])?,
    );
    push("C2xP1, fibre", &c2, BoundaryDivisor::rational(&c2, &[vec![1, 0]])?);
    push(
        "C2xP1, section and fibre",
        &c2,
        BoundaryDivisor::new(
            &c2,
            vec![BoundaryComponent { class: vec![0, 1], genus: 2 }, BoundaryComponent { class: vec![1, 0], genus: 0 }],
        )?,
    );
    let p1 = SurfaceModel::projective_line();
    push("P1, two points", &p1, BoundaryDivisor::rational(&p1, &[vec![1], vec![1]])?);
    Ok(out)
}
