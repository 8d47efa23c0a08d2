//! Abelian covers of `P^1` built from Kummer and Artin-Schreier layers.
//!
//! The smooth compactification `Y` of the cover is never built; only its
//! boundary places over the finite set `S` and their local completions are.
//! Places over a boundary point `x` are indexed by the cosets of the
//! decomposition group `D_x` in `G`, ordered by their smallest element.
//!
//! Two oracles are independent of the local series machinery:
//! character sums over `U(F_{p^m})` give every `L`-function `L(U, F_chi, T)`
//! (prime base fields only), and root counting over a splitting field gives
//! the Frobenius-correspondence intersection numbers.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact_arith::{
    make_field, CyclotomicInt, FieldDescriptor, FieldElement, Point, Poly, RationalFunction,
};
use crate::group_rep::{induced_fixed_dim, p_part, swan_coeff, BrauerRep, FiniteGroup};
use crate::local_ram::{
    layer_shape, local_swan_conductor_on, log_fixed_length, relative_wild_different, wild_different_local,
    ExtensionKind, Layer, LayerRhs, LayerShape, LocalExtension,
};
use crate::Rational;

/// Largest field enumerated by the point-count oracle.
pub const POINT_COUNT_LIMIT: u64 = 1 << 21;

/// One layer of a cover, with `g` a rational function of the base parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverLayer {
    /// `x^e = g`, needs `e | q - 1` and `p` not dividing `e`.
    Kummer { e: u64, g: RationalFunction },
    /// `y^p - y = g`.
    ArtinSchreier { g: RationalFunction },
}

impl CoverLayer {
    fn degree(&self, p: u64) -> u64 {
        match self {
            CoverLayer::Kummer { e, .. } => *e,
            CoverLayer::ArtinSchreier { .. } => p,
        }
    }

    fn function(&self) -> &RationalFunction {
        match self {
            CoverLayer::Kummer { g, .. } | CoverLayer::ArtinSchreier { g } => g,
        }
    }

    fn local(&self, at: Point) -> Layer {
        match self {
            CoverLayer::Kummer { e, g } => Layer::Kummer { e: *e, rhs: LayerRhs::Function(g.local(at)) },
            CoverLayer::ArtinSchreier { g } => Layer::ArtinSchreier { f: g.local(at) },
        }
    }
}

/// A closed point of `Y` over a boundary point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Place {
    pub point: Point,
    pub index: u64,
}

impl Place {
    /// The single place of the base curve at `point`.
    pub fn base(point: Point) -> Place {
        Place { point, index: 0 }
    }
}

/// A 0-cycle with rational coefficients; places with zero coefficient are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZeroCycle {
    terms: BTreeMap<Place, (u64, Rational)>,
}

impl ZeroCycle {
    pub fn new() -> ZeroCycle {
        ZeroCycle::default()
    }

    /// Adds `coeff * [place]`; `residue_degree` must agree with earlier terms at the place.
    pub fn add_term(&mut self, place: Place, residue_degree: u64, coeff: Rational) {
        let entry = self.terms.entry(place).or_insert((residue_degree, Rational::from_integer(0)));
        debug_assert_eq!(entry.0, residue_degree);
        entry.1 += coeff;
        if entry.1 == Rational::from_integer(0) {
            self.terms.remove(&place);
        }
    }

    pub fn coeff(&self, place: &Place) -> Rational {
        self.terms.get(place).map_or(Rational::from_integer(0), |t| t.1)
    }

    /// `(place, residue degree, coefficient)` in place order.
    pub fn terms(&self) -> impl Iterator<Item = (Place, u64, Rational)> + '_ {
        self.terms.iter().map(|(p, &(f, c))| (*p, f, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum coeff * residue degree`.
    pub fn degree(&self) -> Rational {
        self.terms.values().fold(Rational::from_integer(0), |acc, &(f, c)| acc + c * Rational::from_integer(f as i64))
    }

    pub fn add(&self, other: &ZeroCycle) -> ZeroCycle {
        let mut out = self.clone();
        for (p, f, c) in other.terms() {
            out.add_term(p, f, c);
        }
        out
    }

    pub fn neg(&self) -> ZeroCycle {
        self.scale(Rational::from_integer(-1))
    }

    pub fn sub(&self, other: &ZeroCycle) -> ZeroCycle {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: Rational) -> ZeroCycle {
        let mut out = ZeroCycle::new();
        for (p, f, c) in self.terms() {
            out.add_term(p, f, c * k);
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|t| t.1.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|t| t.1 >= Rational::from_integer(0))
    }
}

/// Local data of the cover over one boundary point.
#[derive(Clone, Debug)]
struct PointData {
    point: Point,
    e: u64,
    f_res: u64,
    /// Layers ramified here, wild layer first; the local extension uses this order.
    ramified: Vec<usize>,
    /// Frobenius coordinates on unramified layers (zero on ramified ones).
    frobenius: Vec<u64>,
    inertia: Vec<usize>,
    in_decomposition: Vec<bool>,
    /// Smallest element of each coset of the decomposition group, ascending.
    coset_reps: Vec<usize>,
    local: Option<Arc<LocalExtension>>,
    /// Local group element -> element of `G`.
    embedding: Vec<usize>,
    d_log: u64,
    /// `j(sigma)` for `sigma` in the inertia group, zero elsewhere.
    j: Vec<u64>,
    /// `ord(sigma(rho) - rho)` for `sigma` in the inertia group minus the identity.
    fixed_mult: Vec<u64>,
}

impl PointData {
    fn places(&self) -> u64 {
        self.coset_reps.len() as u64
    }

    fn place_of(&self, group: &FiniteGroup, g: usize) -> u64 {
        self.coset_reps
            .iter()
            .position(|&r| self.in_decomposition[group.mul(g, group.inv(r))])
            .expect("cosets cover the group") as u64
    }
}

/// The place decomposition of the cover over a boundary point, one record per place.
#[derive(Clone, Debug)]
pub struct PlaceData {
    pub place: Place,
    pub e: u64,
    pub f_res: u64,
    /// Totally ramified part of the local extension; `None` when unramified.
    pub local: Option<Arc<LocalExtension>>,
    /// Inertia subgroup as sorted elements of `G` (the same at every place: `G` is abelian).
    pub inertia: Vec<usize>,
}

/// A finite etale abelian cover of `P^1 \ S`.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    field: FieldDescriptor,
    boundary: Vec<Point>,
    layers: Vec<CoverLayer>,
    group: Arc<FiniteGroup>,
    precision: usize,
    points: Vec<PointData>,
    /// Frobenius coordinates at infinity when it lies in `U`.
    frobenius_at_infinity: Option<Vec<u64>>,
}

fn split_roots(poly: &Poly) -> Option<Vec<(FieldElement, u32)>> {
    let roots = poly.roots_with_multiplicity();
    let total: u32 = roots.iter().map(|r| r.1).sum();
    (total as usize == poly.degree().unwrap_or(0)).then_some(roots)
}

fn reduced(g: &RationalFunction) -> Result<RationalFunction> {
    let d = g.numerator().gcd(g.denominator());
    let num = g.numerator().divrem(&d)?.0;
    let den = g.denominator().divrem(&d)?.0;
    RationalFunction::new(num, den)
}

impl CoverSpec {
    /// Validates the cover and computes the local data over every boundary point.
    pub fn new(
        field: &FieldDescriptor,
        boundary: &[Point],
        layers: Vec<CoverLayer>,
        precision: usize,
    ) -> Result<CoverSpec> {
        let p = field.p();
        let mut boundary = boundary.to_vec();
        boundary.sort();
        boundary.dedup();
        let layers = layers
            .into_iter()
            .map(|l| {
                Ok(match l {
                    CoverLayer::Kummer { e, g } => CoverLayer::Kummer { e, g: reduced(&g)? },
                    CoverLayer::ArtinSchreier { g } => CoverLayer::ArtinSchreier { g: reduced(&g)? },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for layer in &layers {
            if let CoverLayer::Kummer { e, .. } = layer {
                if *e < 2 || e % p == 0 {
                    return Err(Error::InvalidInput(format!("Kummer degree {e} must be at least 2 and prime to p")));
                }
                if (field.q() - 1) % e != 0 {
                    return Err(Error::MissingRootsOfUnity(*e));
                }
            }
            if layer.function().numerator().is_zero() {
                return Err(Error::InvalidInput("layer function must be nonzero".into()));
            }
            check_finite_support(layer, &boundary)?;
        }
        let orders: Vec<u64> = layers.iter().map(|l| l.degree(p)).collect();
        let group = Arc::new(FiniteGroup::abelian(&orders));
        let frobenius_at_infinity = if boundary.contains(&Point::Infinity) {
            None
        } else {
            let mut frob = Vec::with_capacity(layers.len());
            for l in &layers {
                match layer_shape(field, &l.local(Point::Infinity))? {
                    LayerShape::Unramified { frobenius } => frob.push(frobenius),
                    _ => return Err(Error::NotEtale("ramified at infinity, which is not a boundary point".into())),
                }
            }
            Some(frob)
        };
        let points = boundary
            .iter()
            .map(|&x| point_data(field, &layers, &group, x, precision))
            .collect::<Result<Vec<_>>>()?;
        let mut gens: Vec<usize> = Vec::new();
        for pd in &points {
            gens.extend(pd.inertia.iter().copied());
        }
        if group.generated(&gens).len() != group.order() {
            return Err(Error::InvalidInput("inertia groups do not generate the Galois group".into()));
        }
        Ok(CoverSpec { field: field.clone(), boundary, layers, group, precision, points, frobenius_at_infinity })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }
    pub fn boundary(&self) -> &[Point] {
        &self.boundary
    }
    pub fn layers(&self) -> &[CoverLayer] {
        &self.layers
    }
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn precision(&self) -> usize {
        self.precision
    }

    /// `chi_c(U) = 2 - |S|`.
    pub fn base_euler_characteristic(&self) -> i64 {
        2 - self.boundary.len() as i64
    }

    fn point(&self, x: Point) -> Result<&PointData> {
        self.points
            .iter()
            .find(|pd| pd.point == x)
            .ok_or_else(|| Error::InvalidInput(format!("{x:?} is not a boundary point")))
    }

    /// Elements of `G` supported on the given layers, with the subgroup table and embedding.
    pub fn layer_subgroup(&self, layers: &[usize]) -> Result<(Arc<FiniteGroup>, Vec<usize>)> {
        if layers.iter().any(|&i| i >= self.layers.len()) {
            return Err(Error::OutOfRange(format!("layer indices {layers:?}")));
        }
        let elems: Vec<usize> = (0..self.group.order())
            .filter(|&g| {
                let c = self.group.coordinates(g).expect("product group");
                c.iter().enumerate().all(|(i, &x)| x == 0 || layers.contains(&i))
            })
            .collect();
        let (h, emb) = self.group.subgroup(&elems)?;
        Ok((Arc::new(h), emb))
    }

    /// The intermediate cover `V / H` where `H` is supported on `layers`: the remaining layers.
    pub fn quotient(&self, layers: &[usize]) -> Result<CoverSpec> {
        let rest: Vec<CoverLayer> = self
            .layers
            .iter()
            .enumerate()
            .filter(|(i, _)| !layers.contains(i))
            .map(|(_, l)| l.clone())
            .collect();
        CoverSpec::new(&self.field, &self.boundary, rest, self.precision)
    }

    /// `sigma(y)` for a place of the cover.
    pub fn act_on_place(&self, sigma: usize, place: Place) -> Result<Place> {
        let pd = self.point(place.point)?;
        let rep = pd.coset_reps[place.index as usize];
        Ok(Place { point: place.point, index: pd.place_of(&self.group, self.group.mul(sigma, rep)) })
    }

    /// Translate of a cycle on `Y \ V` by `sigma`.
    pub fn act_on_cycle(&self, sigma: usize, cycle: &ZeroCycle) -> Result<ZeroCycle> {
        let mut out = ZeroCycle::new();
        for (pl, f, c) in cycle.terms() {
            out.add_term(self.act_on_place(sigma, pl)?, f, c);
        }
        Ok(out)
    }

    /// `f_*` from `Y \ V` to `X \ U`.
    pub fn pushforward(&self, cycle: &ZeroCycle) -> ZeroCycle {
        let mut out = ZeroCycle::new();
        for (pl, f, c) in cycle.terms() {
            out.add_term(Place::base(pl.point), 1, c * Rational::from_integer(f as i64));
        }
        out
    }

    /// `f^*` from `X \ U` to `Y \ V`: `[x]` goes to `sum_y e_y [y]`.
    pub fn pullback(&self, cycle: &ZeroCycle) -> Result<ZeroCycle> {
        let mut out = ZeroCycle::new();
        for (pl, _, c) in cycle.terms() {
            let pd = self.point(pl.point)?;
            for i in 0..pd.places() {
                out.add_term(Place { point: pl.point, index: i }, pd.f_res, c * Rational::from_integer(pd.e as i64));
            }
        }
        Ok(out)
    }

    /// Pullback along `V -> V'` for the quotient `V' = self.quotient(layers)`.
    pub fn pullback_from_quotient(&self, quotient: &CoverSpec, layers: &[usize], cycle: &ZeroCycle) -> Result<ZeroCycle> {
        let keep: Vec<usize> = (0..self.layers.len()).filter(|i| !layers.contains(i)).collect();
        let mut out = ZeroCycle::new();
        for pd in &self.points {
            let qd = quotient.point(pd.point)?;
            let rel_e = pd.e / qd.e;
            for (i, &rep) in pd.coset_reps.iter().enumerate() {
                let c = self.group.coordinates(rep).expect("product group");
                let image: Vec<u64> = keep.iter().map(|&k| c[k]).collect();
                let g2 = quotient.group.from_coordinates(&image).expect("product group");
                let below = Place { point: pd.point, index: qd.place_of(&quotient.group, g2) };
                let coeff = cycle.coeff(&below);
                out.add_term(
                    Place { point: pd.point, index: i as u64 },
                    pd.f_res,
                    coeff * Rational::from_integer(rel_e as i64),
                );
            }
        }
        Ok(out)
    }

    fn each_place(&self, mut value: impl FnMut(&PointData) -> Result<Rational>) -> Result<ZeroCycle> {
        let mut out = ZeroCycle::new();
        for pd in &self.points {
            let c = value(pd)?;
            for i in 0..pd.places() {
                out.add_term(Place { point: pd.point, index: i }, pd.f_res, c);
            }
        }
        Ok(out)
    }
}

fn check_finite_support(layer: &CoverLayer, boundary: &[Point]) -> Result<()> {
    let g = layer.function();
    let polys: Vec<&Poly> = match layer {
        CoverLayer::ArtinSchreier { .. } => vec![g.denominator()],
        CoverLayer::Kummer { .. } => vec![g.numerator(), g.denominator()],
    };
    for poly in polys {
        let roots = split_roots(poly)
            .ok_or_else(|| Error::InvalidInput("zeros and poles must be rational points".into()))?;
        for (a, _) in roots {
            if !boundary.contains(&Point::Finite(a)) {
                return Err(Error::NotEtale(format!("layer function degenerates at {a:?}, outside the boundary")));
            }
        }
    }
    Ok(())
}

fn point_data(
    field: &FieldDescriptor,
    layers: &[CoverLayer],
    group: &Arc<FiniteGroup>,
    x: Point,
    precision: usize,
) -> Result<PointData> {
    let mut wild = Vec::new();
    let mut tame = Vec::new();
    let mut frobenius = vec![0u64; layers.len()];
    for (i, l) in layers.iter().enumerate() {
        match layer_shape(field, &l.local(x))? {
            LayerShape::Wild { .. } => wild.push(i),
            LayerShape::Tame { .. } => tame.push(i),
            LayerShape::Unramified { frobenius: k } => frobenius[i] = k,
        }
    }
    if wild.len() > 1 {
        return Err(Error::UnsupportedRamification(format!("two wild layers at {x:?}")));
    }
    let ramified: Vec<usize> = wild.into_iter().chain(tame).collect();
    let local = if ramified.is_empty() {
        None
    } else {
        let local_layers = ramified.iter().map(|&i| layers[i].local(x)).collect();
        Some(Arc::new(LocalExtension::new(field, ExtensionKind::Tower(local_layers), precision)?))
    };
    let n = group.order();
    let mut embedding = vec![group.identity()];
    let mut j = vec![0u64; n];
    let mut fixed_mult = vec![0u64; n];
    let mut d_log = 0;
    let mut e = 1;
    if let Some(ext) = &local {
        let lg = ext.galois_group()?;
        embedding = (0..lg.order())
            .map(|el| {
                let lc = lg.coordinates(el).expect("product group");
                let mut c = vec![0u64; layers.len()];
                for (k, &i) in ramified.iter().enumerate() {
                    c[i] = lc[k];
                }
                group.from_coordinates(&c).expect("product group")
            })
            .collect();
        for el in 1..lg.order() {
            let s = ext.automorphism(el)?;
            j[embedding[el]] = log_fixed_length(ext, &s)?;
            fixed_mult[embedding[el]] = ext.fixed_point_multiplicity(&s)?;
        }
        d_log = wild_different_local(ext)?;
        e = ext.ramification_index();
    }
    let mut inertia = embedding.clone();
    inertia.sort_unstable();
    let frob_el = group.from_coordinates(&frobenius).expect("product group");
    let f_res = group.element_order(frob_el);
    let mut gens = inertia.clone();
    gens.push(frob_el);
    let dec = group.generated(&gens);
    if dec.len() as u64 != e * f_res {
        return Err(Error::UnsupportedRamification(format!("Frobenius meets inertia at {x:?}")));
    }
    let mut in_decomposition = vec![false; n];
    for &d in &dec {
        in_decomposition[d] = true;
    }
    let mut coset_reps = Vec::new();
    let mut seen = vec![false; n];
    for g in 0..n {
        if seen[g] {
            continue;
        }
        coset_reps.push(g);
        for &d in &dec {
            seen[group.mul(g, d)] = true;
        }
    }
    Ok(PointData {
        point: x,
        e,
        f_res,
        ramified,
        frobenius,
        inertia,
        in_decomposition,
        coset_reps,
        local,
        embedding,
        d_log,
        j,
        fixed_mult,
    })
}

/// Places of `Y` over a boundary point.
pub fn decompose_places(cover: &CoverSpec, x: Point) -> Result<Vec<PlaceData>> {
    let pd = cover.point(x)?;
    Ok((0..pd.places())
        .map(|i| PlaceData {
            place: Place { point: x, index: i },
            e: pd.e,
            f_res: pd.f_res,
            local: pd.local.clone(),
            inertia: pd.inertia.clone(),
        })
        .collect())
}

/// Layers ramified at a boundary point, wild layer first.
pub fn ramified_layers(cover: &CoverSpec, x: Point) -> Result<Vec<usize>> {
    Ok(cover.point(x)?.ramified.clone())
}

/// `s(1) = sum_y D^log_y [y]` and `s(sigma) = -sum_{sigma y = y} j_y(sigma) [y]`.
pub fn swan_character_class(cover: &CoverSpec, sigma: usize) -> Result<ZeroCycle> {
    if sigma >= cover.group.order() {
        return Err(Error::OutOfRange(format!("group element {sigma}")));
    }
    cover.each_place(|pd| {
        Ok(if sigma == cover.group.identity() {
            Rational::from_integer(pd.d_log as i64)
        } else {
            Rational::from_integer(-(pd.j[sigma] as i64))
        })
    })
}

/// The wild different `D^log_{V/U}` as a cycle on `Y \ V`.
pub fn wild_different(cover: &CoverSpec) -> Result<ZeroCycle> {
    swan_character_class(cover, cover.group.identity())
}

/// `D^log_{V/V'}` for the quotient `V' = cover.quotient(layers)`, from uniformizer lengths.
pub fn relative_different(cover: &CoverSpec, quotient: &CoverSpec, layers: &[usize]) -> Result<ZeroCycle> {
    cover.each_place(|pd| {
        let qd = quotient.point(pd.point)?;
        let Some(upper) = &pd.local else { return Ok(Rational::from_integer(0)) };
        // positions in the local extension of the quotient's ramified layers
        let keep: Vec<usize> = (0..cover.layers.len()).filter(|i| !layers.contains(i)).collect();
        let sub: Vec<usize> = qd
            .ramified
            .iter()
            .map(|&qi| {
                let global = keep[qi];
                pd.ramified.iter().position(|&r| r == global).expect("ramified below implies ramified above")
            })
            .collect();
        let d = relative_wild_different(upper, qd.local.as_deref(), &sub)?;
        Ok(Rational::from_integer(d as i64))
    })
}

/// A smooth sheaf on `U` trivialized by the cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafSpec {
    rep: BrauerRep,
    rank: u64,
}

impl SheafSpec {
    pub fn new(rep: BrauerRep, rank: u64) -> Result<SheafSpec> {
        if rep.dim() != rank {
            return Err(Error::InvalidInput(format!("rank {rank} differs from dimension {}", rep.dim())));
        }
        Ok(SheafSpec { rep, rank })
    }

    pub fn from_rep(rep: BrauerRep) -> SheafSpec {
        let rank = rep.dim();
        SheafSpec { rep, rank }
    }

    pub fn rep(&self) -> &BrauerRep {
        &self.rep
    }
    pub fn rank(&self) -> u64 {
        self.rank
    }
}

/// Swan classes of a sheaf; all upstairs variants are checked equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwanClasses {
    /// `Sw(F)` on `X \ U`.
    pub downstairs: ZeroCycle,
    /// `Sw_{V/U}(F)` on `Y \ V`.
    pub upstairs: ZeroCycle,
    /// `sum_{sigma in G_(p)} s(sigma) Tr^Br(sigma)`.
    pub naive: ZeroCycle,
    /// Sum over cyclic `p`-subgroups `C` of the coefficient times `|C^x| s(sigma_C)`.
    pub integral: ZeroCycle,
}

fn check_sheaf(cover: &CoverSpec, sheaf: &SheafSpec) -> Result<()> {
    if **sheaf.rep.group() != *cover.group {
        return Err(Error::InvalidInput("sheaf is not a representation of the cover group".into()));
    }
    if sheaf.rep.ell() == cover.field.p() {
        return Err(Error::InvalidInput("coefficient characteristic equals p".into()));
    }
    Ok(())
}

/// `sum_{sigma in G_(p)} c(sigma) s(sigma)` for coefficients `c`.
fn weighted_class(
    elements: &[usize],
    mut weight: impl FnMut(usize) -> Result<Rational>,
    s: impl Fn(usize) -> Result<ZeroCycle>,
) -> Result<ZeroCycle> {
    let mut acc = ZeroCycle::new();
    for &sigma in elements {
        let w = weight(sigma)?;
        if w != Rational::from_integer(0) {
            acc = acc.add(&s(sigma)?.scale(w));
        }
    }
    Ok(acc)
}

/// Swan class of a sheaf, with the naive and integral variants and Hasse-Arf checks.
pub fn swan_class(cover: &CoverSpec, sheaf: &SheafSpec) -> Result<SwanClasses> {
    check_sheaf(cover, sheaf)?;
    let g = &cover.group;
    let p = cover.field.p();
    let rep = &sheaf.rep;
    let gp = p_part(g, p);
    let s = |sigma: usize| swan_character_class(cover, sigma);
    let upstairs = weighted_class(&gp, |sigma| swan_coeff(rep, sigma, p), s)?;

    let mut naive = ZeroCycle::new();
    for pd in &cover.points {
        let m = rep.modulus();
        let mut acc = CyclotomicInt::from_int(m, pd.d_log as i64).mul(rep.value(g.identity())?);
        for &sigma in &gp {
            if sigma != g.identity() && pd.j[sigma] != 0 {
                acc = acc.sub(&rep.value(sigma)?.scale(pd.j[sigma] as i64));
            }
        }
        let c = acc.as_integer().ok_or_else(|| Error::NonIntegral("naive Swan class is irrational".into()))?;
        for i in 0..pd.places() {
            naive.add_term(Place { point: pd.point, index: i }, pd.f_res, Rational::from_integer(c));
        }
    }

    let mut cyclic: Vec<Vec<usize>> = gp.iter().map(|&sigma| g.generated(&[sigma])).collect();
    cyclic.sort();
    cyclic.dedup();
    let mut integral = ZeroCycle::new();
    for c in &cyclic {
        let generators: Vec<usize> = c.iter().copied().filter(|&x| g.generated(&[x]) == *c).collect();
        let sigma_c = generators[0];
        let w = swan_coeff(rep, sigma_c, p)? * Rational::from_integer(generators.len() as i64);
        if !w.is_integer() {
            return Err(Error::NonIntegral(format!("integral Swan weight {w}")));
        }
        integral = integral.add(&s(sigma_c)?.scale(w));
    }

    if upstairs != naive || upstairs != integral {
        return Err(Error::NonIntegral("Swan class variants disagree".into()));
    }
    let order = Rational::from_integer(g.order() as i64);
    let downstairs = cover.pushforward(&upstairs).scale(order.recip());
    if !downstairs.is_integral() || !downstairs.is_nonnegative() {
        return Err(Error::NonIntegral("Swan class is not a non-negative integral cycle".into()));
    }
    if cover.pullback(&cover.pushforward(&upstairs))?.scale(order.recip()) != upstairs {
        return Err(Error::NonIntegral("upstairs Swan class is not a pullback".into()));
    }
    if upstairs.degree() != order * downstairs.degree() {
        return Err(Error::NonIntegral("Swan class degrees are inconsistent".into()));
    }
    Ok(SwanClasses { downstairs, upstairs, naive, integral })
}

/// Downstairs Swan conductors from the local formula at each boundary point.
pub fn local_swan_cycle(cover: &CoverSpec, sheaf: &SheafSpec) -> Result<ZeroCycle> {
    check_sheaf(cover, sheaf)?;
    let mut out = ZeroCycle::new();
    for pd in &cover.points {
        if let Some(ext) = &pd.local {
            let sw = local_swan_conductor_on(ext, &sheaf.rep, &pd.embedding)?;
            out.add_term(Place::base(pd.point), 1, Rational::from_integer(sw as i64));
        }
    }
    Ok(out)
}

/// Characters of `G` with values in `Z[zeta_m]`, as exponent vectors: `chi(g) = zeta_m^(sum r_i g_i)`.
fn characters(group: &FiniteGroup, m: u64) -> Vec<Vec<u64>> {
    let factors = group.factors().expect("product group").to_vec();
    let mut out = vec![Vec::new()];
    for &n in &factors {
        let step = m / m.gcd(&n);
        let count = m.gcd(&n);
        let mut next = Vec::new();
        for prefix in &out {
            for k in 0..count {
                let mut v: Vec<u64> = prefix.clone();
                v.push(k * step);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn character_value(group: &FiniteGroup, m: u64, chi: &[u64], g: usize) -> CyclotomicInt {
    let c = group.coordinates(g).expect("product group");
    let e: u64 = chi.iter().zip(&c).map(|(a, b)| a * b).sum();
    CyclotomicInt::zeta_pow(m, (e % m) as i64)
}

/// Histogram of Frobenius elements over `U(F_{p^m})`, indexed by elements of `G`.
fn frobenius_histogram(cover: &CoverSpec, m: u32) -> Result<Vec<u64>> {
    let base = &cover.field;
    let p = base.p();
    let big = make_field(p, m)?;
    let q_big = big.q();
    let embed = |c: FieldElement| big.from_int(base.prime_value(c).expect("prime field") as i64);
    let embed_poly = |poly: &Poly| -> Vec<FieldElement> { poly.coeffs().iter().map(|&c| embed(c)).collect() };
    let eval = |coeffs: &[FieldElement], u: FieldElement| {
        coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| big.add(big.mul(acc, u), c))
    };
    struct Prepared {
        num: Vec<FieldElement>,
        den: Vec<FieldElement>,
        kummer: Option<(u64, Vec<FieldElement>)>,
    }
    let prepared: Vec<Prepared> = cover
        .layers
        .iter()
        .map(|l| {
            let g = l.function();
            let kummer = match l {
                CoverLayer::Kummer { e, .. } => {
                    let zeta = base.exp((base.q() - 1) / e);
                    Some((*e, (0..*e).map(|k| embed(base.pow(zeta, k))).collect()))
                }
                CoverLayer::ArtinSchreier { .. } => None,
            };
            Prepared { num: embed_poly(g.numerator()), den: embed_poly(g.denominator()), kummer }
        })
        .collect();
    let excluded: Vec<u64> = cover
        .boundary
        .iter()
        .filter_map(|pt| match pt {
            Point::Finite(a) => base.prime_value(*a),
            Point::Infinity => None,
        })
        .collect();
    let group = &cover.group;
    let mut hist = vec![0u64; group.order()];
    let mut coords = vec![0u64; prepared.len()];
    for u in big.elements() {
        if big.prime_value(u).is_some_and(|v| excluded.contains(&v)) {
            continue;
        }
        for (i, pr) in prepared.iter().enumerate() {
            let val = big.div(eval(&pr.num, u), eval(&pr.den, u))?;
            coords[i] = match &pr.kummer {
                None => big.trace(val),
                Some((e, zetas)) => {
                    let w = big.pow(val, (q_big - 1) / e);
                    zetas.iter().position(|&z| z == w).ok_or(Error::ZeroInput)? as u64
                }
            };
        }
        hist[group.from_coordinates(&coords).expect("product group")] += 1;
    }
    if let Some(frob) = &cover.frobenius_at_infinity {
        let c: Vec<u64> = frob.iter().map(|&k| k * m as u64).collect();
        hist[group.from_coordinates(&c).expect("product group")] += 1;
    }
    Ok(hist)
}

/// Frobenius histograms for `m = 1..=m_max`.
struct PointCounts {
    hist: Vec<Vec<u64>>,
}

impl PointCounts {
    fn new(cover: &CoverSpec, m_max: u32) -> Result<PointCounts> {
        if cover.field.k() != 1 {
            return Err(Error::OracleInapplicable("point counts need a prime base field".into()));
        }
        if m_max > 12 || cover.field.p().checked_pow(m_max).is_none_or(|q| q > POINT_COUNT_LIMIT) {
            return Err(Error::OracleInapplicable(format!("F_{}^{m_max} exceeds the point-count budget", cover.field.p())));
        }
        let hist = (1..=m_max).map(|m| frobenius_histogram(cover, m)).collect::<Result<Vec<_>>>()?;
        Ok(PointCounts { hist })
    }

    fn character_sum(&self, cover: &CoverSpec, m_ring: u64, chi: &[u64], m: usize) -> CyclotomicInt {
        let mut acc = CyclotomicInt::zero(m_ring);
        for (g, &n) in self.hist[m - 1].iter().enumerate() {
            if n != 0 {
                acc = acc.add(&character_value(&cover.group, m_ring, chi, g).scale(n as i64));
            }
        }
        acc
    }
}

/// Degrees of `L(U, F_chi, T)` and of its pure part (the factor left after removing
/// the boundary points where `chi` is unramified).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LDegrees {
    pub total: u64,
    pub pure: u64,
}

fn character_is_trivial(chi: &[u64]) -> bool {
    chi.iter().all(|&a| a == 0)
}

/// A priori bound on `deg L(U, F_chi, T)` from the pole orders of the layer equations.
fn degree_bound(cover: &CoverSpec, chi: &[u64]) -> u64 {
    let mut b = cover.boundary.len() as i64 - 2;
    for &x in &cover.boundary {
        let mut sw = 0i64;
        for (i, l) in cover.layers.iter().enumerate() {
            if let CoverLayer::ArtinSchreier { g } = l {
                if chi[i] != 0 {
                    sw = sw.max(-g.local(x).valuation().unwrap_or(0));
                }
            }
        }
        b += sw;
    }
    b.max(0) as u64
}

fn l_degrees(cover: &CoverSpec, counts: &PointCounts, m_ring: u64, chi: &[u64]) -> Result<LDegrees> {
    let m_max = counts.hist.len();
    let sums: Vec<CyclotomicInt> = (1..=m_max).map(|m| counts.character_sum(cover, m_ring, chi, m)).collect();
    let mut c = vec![CyclotomicInt::one(m_ring)];
    for k in 1..=m_max {
        let mut acc = CyclotomicInt::zero(m_ring);
        for i in 1..=k {
            acc = acc.add(&sums[i - 1].mul(&c[k - i]));
        }
        c.push(acc.div_exact(k as i64).ok_or_else(|| Error::NonIntegral("L-function coefficient".into()))?);
    }
    let total = c.iter().rposition(|x| !x.is_zero()).expect("constant term") as u64;
    if total > degree_bound(cover, chi) {
        return Err(Error::OracleInapplicable(format!("L-function degree {total} exceeds its a priori bound")));
    }
    // divide out (1 - chi(Frob_x) T) for boundary points where chi is unramified
    let mut pure = c;
    let mut removed = 0u64;
    for pd in &cover.points {
        let unramified = pd.inertia.iter().all(|&s| character_is_trivial(&[character_exponent(cover, chi, s)]));
        if !unramified {
            continue;
        }
        let frob = cover.group.from_coordinates(&pd.frobenius).expect("product group");
        let a = character_value(&cover.group, m_ring, chi, frob);
        // multiply by 1 / (1 - a T) = sum a^k T^k
        for k in 1..pure.len() {
            let prev = pure[k - 1].mul(&a);
            pure[k] = pure[k].add(&prev);
        }
        removed += 1;
    }
    let pure_deg = total
        .checked_sub(removed)
        .ok_or_else(|| Error::OracleInapplicable("boundary factor larger than the L-function".into()))?;
    if pure.iter().skip(pure_deg as usize + 1).any(|x| !x.is_zero()) {
        return Err(Error::OracleInapplicable("boundary factors do not divide the L-function".into()));
    }
    // functional equation of a pure weight-one polynomial: c_d conj(c_k) = q^k c_{d-k}
    let q = cover.field.q() as i64;
    let d = pure_deg as usize;
    let top = &pure[d];
    for k in 0..=d {
        if top.mul(&pure[k].conj()) != pure[d - k].scale(q.pow(k as u32)) {
            return Err(Error::OracleInapplicable("L-function fails the functional equation".into()));
        }
    }
    Ok(LDegrees { total, pure: pure_deg })
}

fn character_exponent(cover: &CoverSpec, chi: &[u64], g: usize) -> u64 {
    let c = cover.group.coordinates(g).expect("product group");
    chi.iter().zip(&c).map(|(a, b)| a * b).sum()
}

/// Euler characteristics `chi_c(U, F_chi)` for the characters of `G` with values in `Z[zeta_m]`.
fn character_euler_characteristics(cover: &CoverSpec, m_ring: u64, chars: &[Vec<u64>]) -> Result<Vec<i64>> {
    let m_max = chars
        .iter()
        .filter(|c| !character_is_trivial(c))
        .map(|c| degree_bound(cover, c))
        .max()
        .unwrap_or(0)
        .max(2) as u32;
    let counts = PointCounts::new(cover, m_max)?;
    let q = cover.field.q();
    let mut out = Vec::with_capacity(chars.len());
    for chi in chars {
        if character_is_trivial(chi) {
            for (m, h) in counts.hist.iter().enumerate() {
                let n: u64 = h.iter().sum();
                let expect = q.pow(m as u32 + 1) as i64 + cover.base_euler_characteristic() - 1;
                if n as i64 != expect {
                    return Err(Error::OracleInapplicable(format!("#U(F_q^{}) = {n}, expected {expect}", m + 1)));
                }
            }
            out.push(cover.base_euler_characteristic());
        } else {
            let c = chi.iter().map(|&a| a % m_ring).collect::<Vec<_>>();
            out.push(-(l_degrees(cover, &counts, m_ring, &c)?.total as i64));
        }
    }
    Ok(out)
}

/// Predicted and point-count values of `chi_c(U, F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GosReport {
    pub predicted: i64,
    pub oracle: i64,
    pub equal: bool,
}

/// `chi_c(U, F) = rank chi_c(U) - deg Sw(F)` against character sums over `U(F_{p^m})`.
pub fn gos_check(cover: &CoverSpec, sheaf: &SheafSpec) -> Result<GosReport> {
    let sw = swan_class(cover, sheaf)?.downstairs.degree();
    let predicted = sheaf.rank as i64 * cover.base_euler_characteristic() - sw.to_integer();
    let rep = &sheaf.rep;
    let m_ring = rep.modulus();
    let g = &cover.group;
    let regular: Vec<usize> = (0..g.order()).filter(|&x| g.element_order(x) % rep.ell() != 0).collect();
    let chars = characters(g, m_ring);
    // multiplicity of chi in the semisimplification: (1/|G_l'|) sum Tr^Br(g) conj(chi(g))
    let mut mults = Vec::with_capacity(chars.len());
    for chi in &chars {
        let mut acc = CyclotomicInt::zero(m_ring);
        for &x in &regular {
            acc = acc.add(&rep.value(x)?.mul(&character_value(g, m_ring, chi, x).conj()));
        }
        let total = acc.as_integer().ok_or_else(|| Error::NonIntegral("character multiplicity".into()))?;
        if total < 0 || total % regular.len() as i64 != 0 {
            return Err(Error::NonIntegral(format!("character multiplicity {total}/{}", regular.len())));
        }
        mults.push(total / regular.len() as i64);
    }
    let used: Vec<Vec<u64>> = chars.iter().zip(&mults).filter(|(_, &m)| m != 0).map(|(c, _)| c.clone()).collect();
    let chis = character_euler_characteristics(cover, m_ring, &used)?;
    let oracle = mults.iter().filter(|&&m| m != 0).zip(&chis).map(|(m, c)| m * c).sum();
    Ok(GosReport { predicted, oracle, equal: predicted == oracle })
}

/// Genus of `Y` by Riemann-Hurwitz against the pure parts of the character `L`-functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub riemann_hurwitz: i64,
    pub oracle: i64,
    pub equal: bool,
}

/// `2g(Y)` two ways.
pub fn genus_check(cover: &CoverSpec) -> Result<GenusReport> {
    let order = cover.group.order() as i64;
    let mut ram = 0i64;
    for pd in &cover.points {
        ram += (pd.places() * pd.f_res) as i64 * (pd.d_log + pd.e - 1) as i64;
    }
    let riemann_hurwitz = 2 - 2 * order + ram;
    let m = cover.group.exponent();
    let chars: Vec<Vec<u64>> = characters(&cover.group, m).into_iter().filter(|c| !character_is_trivial(c)).collect();
    let m_max = chars.iter().map(|c| degree_bound(cover, c)).max().unwrap_or(0).max(2) as u32;
    let counts = PointCounts::new(cover, m_max)?;
    let mut oracle = 0i64;
    for chi in &chars {
        oracle += l_degrees(cover, &counts, m, chi)?.pure as i64;
    }
    Ok(GenusReport { riemann_hurwitz, oracle, equal: riemann_hurwitz == oracle })
}

/// `Tr(sigma^* : H^*_c(V))` against `-deg s(sigma)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceReport {
    /// From the character decomposition `sum_chi chi(sigma) chi_c(U, F_chi)`.
    pub lhs: i64,
    /// `-deg s(sigma)`.
    pub rhs: i64,
    /// Lefschetz number on `Y` minus the fixed geometric boundary points.
    pub lefschetz: i64,
    pub equal: bool,
}

pub fn trace_formula_check(cover: &CoverSpec, sigma: usize) -> Result<TraceReport> {
    let g = &cover.group;
    if sigma >= g.order() {
        return Err(Error::OutOfRange(format!("group element {sigma}")));
    }
    if sigma == g.identity() {
        return Err(Error::IdentityAutomorphism);
    }
    let m = g.exponent();
    let chars = characters(g, m);
    let chis = character_euler_characteristics(cover, m, &chars).map_err(|e| match e {
        Error::OracleInapplicable(s) => Error::OutsideTraceCatalog(s),
        other => other,
    })?;
    let mut acc = CyclotomicInt::zero(m);
    for (chi, &c) in chars.iter().zip(&chis) {
        acc = acc.add(&character_value(g, m, chi, sigma).scale(c));
    }
    let lhs = acc.as_integer().ok_or_else(|| Error::NonIntegral("trace of an automorphism is irrational".into()))?;
    let rhs = -swan_character_class(cover, sigma)?.degree().to_integer();
    let mut lefschetz = 0i64;
    for pd in &cover.points {
        if pd.inertia.binary_search(&sigma).is_ok() {
            lefschetz += (pd.places() * pd.f_res) as i64 * (pd.fixed_mult[sigma] as i64 - 1);
        }
    }
    Ok(TraceReport { lhs, rhs, lefschetz, equal: lhs == rhs && rhs == lefschetz })
}

/// Both chain-rule identities for `V -> V' -> U`, `V' = cover.quotient(layers)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRuleReport {
    pub different_total: ZeroCycle,
    pub different_upper: ZeroCycle,
    pub different_lower_pulled: ZeroCycle,
    pub discriminant_total: ZeroCycle,
    pub discriminant_sum: ZeroCycle,
    pub holds: bool,
}

pub fn chain_rule_check(cover: &CoverSpec, layers: &[usize]) -> Result<ChainRuleReport> {
    let quotient = cover.quotient(layers)?;
    let total = wild_different(cover)?;
    let upper = relative_different(cover, &quotient, layers)?;
    let lower = wild_different(&quotient)?;
    let pulled = cover.pullback_from_quotient(&quotient, layers, &lower)?;
    let degree_upper = (cover.group.order() / quotient.group.order()) as i64;
    let d_total = cover.pushforward(&total);
    let d_sum = quotient.pushforward(&lower).scale(Rational::from_integer(degree_upper)).add(&cover.pushforward(&upper));
    let holds = total == upper.add(&pulled) && d_total == d_sum;
    Ok(ChainRuleReport {
        different_total: total,
        different_upper: upper,
        different_lower_pulled: pulled,
        discriminant_total: d_total,
        discriminant_sum: d_sum,
        holds,
    })
}

/// `Sw(h_* F)` against `h_* Sw(F) + rank d^log_{U'/U}`, downstairs and upstairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionReport {
    pub induced: ZeroCycle,
    pub predicted: ZeroCycle,
    pub upstairs_holds: bool,
    pub holds: bool,
}

/// `layers` generate `H = Gal(V/U')`; `rep` is a representation of the table returned by
/// [`CoverSpec::layer_subgroup`] for the same layers.
pub fn induction_check(cover: &CoverSpec, layers: &[usize], rep: &BrauerRep) -> Result<InductionReport> {
    let g = &cover.group;
    let p = cover.field.p();
    if rep.ell() == p {
        return Err(Error::InvalidInput("coefficient characteristic equals p".into()));
    }
    let (h, emb) = cover.layer_subgroup(layers)?;
    if **rep.group() != *h {
        return Err(Error::InvalidInput("representation is not defined on the layer subgroup".into()));
    }
    let quotient = cover.quotient(layers)?;
    let rank = Rational::from_integer(rep.dim() as i64);
    let s = |sigma: usize| swan_character_class(cover, sigma);

    // Sw_{V/U}(Ind M) with fixed dimensions of the induced module
    let ind_dim = |sigma: usize| induced_fixed_dim(g, &emb, rep, sigma).map(|d| d as i64);
    let gp = p_part(g, p);
    let induced_up = weighted_class(
        &gp,
        |sigma| {
            let d = ind_dim(sigma)?;
            let dp = ind_dim(g.pow(sigma, p as i64))?;
            Ok(Rational::from_integer(d) - Rational::new(dp - d, p as i64 - 1))
        },
        s,
    )?;
    let order = Rational::from_integer(g.order() as i64);
    let induced = cover.pushforward(&induced_up).scale(order.recip());

    // Sw_{V/U'}(F): s_{V/U'}(1) = D_{V/U'}, s_{V/U'}(sigma) = s_{V/U}(sigma) otherwise
    let d_upper = relative_different(cover, &quotient, layers)?;
    let hp = p_part(&h, p);
    let mut sw_vu1 = ZeroCycle::new();
    for &tau in &hp {
        let w = swan_coeff(rep, tau, p)?;
        if w == Rational::from_integer(0) {
            continue;
        }
        let class = if tau == h.identity() { d_upper.clone() } else { s(emb[tau])? };
        sw_vu1 = sw_vu1.add(&class.scale(w));
    }
    let h_order = Rational::from_integer(h.order() as i64);
    let lower = wild_different(&quotient)?;
    let d_lower = quotient.pushforward(&lower);
    let predicted = cover.pushforward(&sw_vu1).scale(h_order.recip()).add(&d_lower.scale(rank));

    let index = Rational::from_integer((g.order() / h.order()) as i64);
    let pulled = cover.pullback_from_quotient(&quotient, layers, &lower)?;
    let upstairs_rhs = sw_vu1.add(&pulled.scale(rank)).scale(index);
    let upstairs_holds = induced_up == upstairs_rhs;
    Ok(InductionReport { holds: induced == predicted, induced, predicted, upstairs_holds })
}

/// `Tr(Fr^n Gamma^* : H^*_c(A^1))` against the intersection number of `x = y^N` with Frobenius.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeligneReport {
    pub lhs: u64,
    pub rhs: u64,
    pub equal: bool,
}

/// `Gamma = {x = y^N}` on `A^1` over `F_q`; counts roots of `y^(q^n) = y^N` with multiplicity.
pub fn deligne_check(power: u64, q: u64, n: u32) -> Result<DeligneReport> {
    let p = prime_power(q).ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
    // p | N is allowed: f^* on H^2_c multiplies by the full degree, inseparable part included
    if power == 0 {
        return Err(Error::InvalidInput("N must be positive".into()));
    }
    let qn = q.checked_pow(n).ok_or_else(|| Error::OutOfRange("q^n".into()))?;
    if qn <= power {
        return Err(Error::InvalidInput(format!("q^n = {qn} must exceed N = {power}")));
    }
    // y^(q^n) - y^N = y^N (y^(q^n - N) - 1); the second factor splits over F_{p^r}, r = ord of p mod its p'-part
    let diff = qn - power;
    let mut m = diff;
    while m % p == 0 {
        m /= p;
    }
    let mut r = 1u32;
    while (p.pow(r) - 1) % m != 0 {
        r += 1;
        if r > 12 || p.checked_pow(r).is_none_or(|x| x > POINT_COUNT_LIMIT) {
            return Err(Error::OracleInapplicable("splitting field too large".into()));
        }
    }
    let field = make_field(p, r)?;
    let mut coeffs = vec![FieldElement::ZERO; qn as usize + 1];
    coeffs[qn as usize] = field.one();
    coeffs[power as usize] = field.neg(field.one());
    let poly = Poly::new(&field, coeffs);
    let rhs: u64 = poly.roots_with_multiplicity().iter().map(|r| r.1 as u64).sum();
    // H^2_c(A^1) is the only nonzero group; Gamma^* = f_* there, and f_* = deg f / deg f = 1
    let lhs = qn;
    Ok(DeligneReport { lhs, rhs, equal: lhs == rhs })
}

fn prime_power(q: u64) -> Option<u64> {
    let p = crate::exact_arith::field::prime_factors(q);
    (q >= 2 && p.len() == 1).then(|| p[0])
}

/// Human-readable form of a place, used in reports.
pub fn place_label(field: &FieldDescriptor, place: &Place) -> String {
    match place.point {
        Point::Infinity => format!("inf#{}", place.index),
        Point::Finite(a) => {
            let d = field.digits(a);
            let digits: Vec<String> = d[..field.k() as usize].iter().map(|x| format!("{x}")).collect();
            format!("{}#{}", digits.join(":"), place.index)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &FieldDescriptor, c: &[i64]) -> Poly {
        Poly::from_ints(f, c)
    }

    fn as_cover(p: u64, n: usize) -> CoverSpec {
        let f = make_field(p, 1).unwrap();
        let mut c = vec![0i64; n + 1];
        c[n] = 1;
        let g = RationalFunction::polynomial(poly(&f, &c));
        CoverSpec::new(&f, &[Point::Infinity], vec![CoverLayer::ArtinSchreier { g }], 32).unwrap()
    }

    fn psi(cover: &CoverSpec, ell: u64, r: u32) -> SheafSpec {
        let lf = make_field(ell, r).unwrap();
        let g = cover.group().clone();
        let n = g.order() as u64;
        let zeta = lf.exp((lf.q() - 1) / n);
        let images: Vec<_> = (0..g.order()).map(|el| lf.pow(zeta, el as u64)).collect();
        SheafSpec::from_rep(BrauerRep::linear(g, &lf, &images).unwrap())
    }

    #[test]
    fn artin_schreier_place_at_infinity() {
        let c = as_cover(3, 1);
        let places = decompose_places(&c, Point::Infinity).unwrap();
        assert_eq!(places.len(), 1);
        assert_eq!((places[0].e, places[0].f_res), (3, 1));
        assert_eq!(places[0].inertia, vec![0, 1, 2]);
    }

    #[test]
    fn pole_order_two_at_infinity() {
        let f = make_field(3, 1).unwrap();
        let g = RationalFunction::polynomial(poly(&f, &[0, -1, 1]));
        let c = CoverSpec::new(&f, &[Point::Infinity], vec![CoverLayer::ArtinSchreier { g }], 32).unwrap();
        let places = decompose_places(&c, Point::Infinity).unwrap();
        assert_eq!(places.len(), 1);
        assert_eq!(places[0].e, 3);
        let s = swan_character_class(&c, 1).unwrap();
        assert_eq!(s.coeff(&Place::base(Point::Infinity)), Rational::from_integer(-2));
    }

    #[test]
    fn swan_characters_sum_to_zero() {
        let c = as_cover(3, 2);
        let mut total = ZeroCycle::new();
        for s in 0..3 {
            total = total.add(&swan_character_class(&c, s).unwrap());
        }
        assert!(total.is_zero());
    }

    #[test]
    fn swan_class_of_artin_schreier_character() {
        for n in [1, 2, 4] {
            let c = as_cover(3, n);
            let sw = swan_class(&c, &psi(&c, 2, 2)).unwrap();
            assert_eq!(sw.downstairs.coeff(&Place::base(Point::Infinity)), Rational::from_integer(n as i64));
            assert_eq!(sw.downstairs, local_swan_cycle(&c, &psi(&c, 2, 2)).unwrap());
        }
        let c = as_cover(3, 2);
        let triv = SheafSpec::from_rep(BrauerRep::trivial(c.group().clone(), 2, 1).unwrap());
        assert!(swan_class(&c, &triv).unwrap().downstairs.is_zero());
    }

    #[test]
    fn kummer_cover_is_tame() {
        let f = make_field(5, 1).unwrap();
        let g = RationalFunction::polynomial(poly(&f, &[0, 1]));
        let c = CoverSpec::new(
            &f,
            &[Point::Finite(f.zero()), Point::Infinity],
            vec![CoverLayer::Kummer { e: 4, g }],
            16,
        )
        .unwrap();
        assert_eq!(decompose_places(&c, Point::Finite(f.zero())).unwrap()[0].e, 4);
        for s in 0..4 {
            let cl = swan_character_class(&c, s).unwrap();
            assert!(cl.is_zero());
        }
        let t = trace_formula_check(&c, 1).unwrap();
        assert_eq!((t.lhs, t.rhs, t.equal), (0, 0, true));
    }

    #[test]
    fn non_etale_cover_is_rejected() {
        let f = make_field(3, 1).unwrap();
        let g = RationalFunction::new(poly(&f, &[1]), poly(&f, &[-1, 1])).unwrap();
        let err = CoverSpec::new(&f, &[Point::Infinity], vec![CoverLayer::ArtinSchreier { g }], 16).unwrap_err();
        assert!(matches!(err, Error::NotEtale(_)));
    }

    fn two_layer_covers() -> Vec<CoverSpec> {
        let f = make_field(3, 1).unwrap();
        let t = RationalFunction::polynomial(poly(&f, &[0, 1]));
        let inv_t = RationalFunction::new(poly(&f, &[1]), poly(&f, &[0, 1])).unwrap();
        let s = [Point::Finite(f.zero()), Point::Infinity];
        vec![
            CoverSpec::new(
                &f,
                &s,
                vec![CoverLayer::ArtinSchreier { g: t.clone() }, CoverLayer::Kummer { e: 2, g: t.clone() }],
                32,
            )
            .unwrap(),
            CoverSpec::new(&f, &s, vec![CoverLayer::ArtinSchreier { g: t }, CoverLayer::ArtinSchreier { g: inv_t }], 32)
                .unwrap(),
        ]
    }

    #[test]
    fn compositum_places() {
        let covers = two_layer_covers();
        let inf = decompose_places(&covers[0], Point::Infinity).unwrap();
        assert_eq!((inf.len(), inf[0].e), (1, 6));
        let zero = decompose_places(&covers[0], Point::Finite(covers[0].field().zero())).unwrap();
        // AS layer unramified and split at 0 (trace of the constant term is 0)
        assert_eq!((zero.len(), zero[0].e, zero[0].f_res), (3, 2, 1));
        let both = decompose_places(&covers[1], Point::Infinity).unwrap();
        assert_eq!((both.len(), both[0].e), (3, 3));
        assert_eq!(wild_different(&covers[0]).unwrap().degree(), Rational::from_integer(4));
    }

    #[test]
    fn chain_rule_on_towers() {
        for c in two_layer_covers() {
            for h in [vec![0], vec![1], vec![], vec![0, 1]] {
                let r = chain_rule_check(&c, &h).unwrap();
                assert!(r.holds, "{h:?} {r:?}");
            }
        }
    }

    #[test]
    fn induction_of_trivial_sheaf_is_the_discriminant() {
        for c in two_layer_covers() {
            for h in [vec![0], vec![1]] {
                let (hg, _) = c.layer_subgroup(&h).unwrap();
                let triv = BrauerRep::trivial(hg, 2, 1).unwrap();
                let r = induction_check(&c, &h, &triv).unwrap();
                assert!(r.holds && r.upstairs_holds, "{h:?} {r:?}");
                let d = c.quotient(&h).unwrap();
                assert_eq!(r.induced, d.pushforward(&wild_different(&d).unwrap()));
            }
        }
    }

    #[test]
    fn induction_of_a_character() {
        let c = &two_layer_covers()[1];
        let (hg, _) = c.layer_subgroup(&[0]).unwrap();
        let lf = make_field(2, 2).unwrap();
        let zeta = lf.exp(1);
        let images: Vec<_> = (0..3).map(|i| lf.pow(zeta, i)).collect();
        let rep = BrauerRep::linear(hg, &lf, &images).unwrap();
        let r = induction_check(c, &[0], &rep).unwrap();
        assert!(r.holds && r.upstairs_holds, "{r:?}");
    }

    #[test]
    fn gos_for_artin_schreier() {
        for (p, n) in [(3u64, 1usize), (3, 2), (2, 3), (5, 3)] {
            let c = as_cover(p, n);
            let rep = if p == 2 { psi(&c, 3, 1) } else { psi(&c, 2, if p == 3 { 2 } else { 4 }) };
            let report = gos_check(&c, &rep).unwrap();
            assert_eq!(report.predicted, 1 - n as i64);
            assert!(report.equal, "{p} {n} {report:?}");
        }
    }

    #[test]
    fn compositum_oracles() {
        for c in two_layer_covers() {
            assert!(genus_check(&c).unwrap().equal);
            for ell in [2, 5] {
                let reg = SheafSpec::from_rep(BrauerRep::regular(c.group().clone(), ell).unwrap());
                let r = gos_check(&c, &reg).unwrap();
                assert!(r.equal, "{ell} {r:?}");
            }
            for sigma in 1..c.group().order() {
                let t = trace_formula_check(&c, sigma).unwrap();
                assert!(t.equal, "{sigma} {t:?}");
            }
        }
    }

    #[test]
    fn genus_two_ways() {
        let c = as_cover(3, 4);
        let g = genus_check(&c).unwrap();
        assert_eq!(g.oracle, 2 * 3);
        assert!(g.equal);
    }

    #[test]
    fn trace_formula_on_artin_schreier() {
        for n in [1, 2, 4] {
            let c = as_cover(3, n);
            let t = trace_formula_check(&c, 1).unwrap();
            assert_eq!(t.lhs, n as i64);
            assert!(t.equal);
        }
    }

    #[test]
    fn deligne_examples() {
        for (nn, q, n) in [(2, 3, 1), (3, 2, 2), (2, 2, 2), (4, 3, 2), (1, 5, 1)] {
            let r = deligne_check(nn, q, n).unwrap();
            assert_eq!(r.lhs, q.pow(n));
            assert!(r.equal);
        }
        assert!(deligne_check(5, 2, 2).is_err());
        assert!(deligne_check(4, 2, 2).is_err());
    }
}
