//! Local ramification over `K = F_q((t))`.
//!
//! Extensions are built from Kummer layers `z^e = h` and Artin-Schreier layers
//! `y^p - y = f`. A ramified extension is parametrized by a uniformizer `rho`
//! that is a monomial in `t` and the layer generators (`w = 1/y` for
//! Artin-Schreier, `z` for Kummer); `t` and every generator are computed as
//! series in `rho` by fixed-point iteration. The ring of integers is then
//! `F_q[[rho]]`, monogenic over `F_q[[t]]`, so
//!
//! - `length Omega_{B/A} = ord_rho(dt/drho)`,
//! - `j(sigma) = ord_rho(sigma(rho)/rho - 1)`.
//!
//! Every invariant is computed at precision `N` and `2N` and must agree.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact_arith::{FieldDescriptor, FieldElement, LocalFunction, Series};
use crate::group_rep::{BrauerRep, FiniteGroup};

/// Right-hand side of a Kummer equation `z^e = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LayerRhs {
    /// A function of the base parameter `t`.
    Function(LocalFunction),
    /// The generator of an earlier layer (`y` for Artin-Schreier, `z` for Kummer).
    Generator(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layer {
    Kummer { e: u64, rhs: LayerRhs },
    ArtinSchreier { f: LocalFunction },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionKind {
    /// `x^e = t`.
    Kummer(u64),
    /// `y^p - y = f`.
    ArtinSchreier(LocalFunction),
    /// Successive layers; an Artin-Schreier layer may only come first.
    Tower(Vec<Layer>),
}

/// Replaces `f` by `f - (g^p - g)` until the pole order is prime to `p` or the pole is gone.
pub fn reduce_artin_schreier(f: &LocalFunction) -> Result<LocalFunction> {
    let field = f.field().clone();
    let p = field.p() as i64;
    let mut cur = f.clone();
    while let Some(v) = cur.valuation() {
        if v >= 0 || (-v) % p != 0 {
            break;
        }
        let c = cur.leading();
        let g = LocalFunction::monomial(&field, field.pth_root(c), v / p);
        let gp = LocalFunction::monomial(&field, c, v);
        cur = cur.add(&gp.neg())?.add(&g)?;
    }
    Ok(cur)
}

/// Pole order of the reduced representative, zero when there is no pole.
pub fn swan_pole_order(f: &LocalFunction) -> Result<u64> {
    Ok(reduce_artin_schreier(f)?.valuation().map_or(0, |v| (-v).max(0) as u64))
}

/// Integers `(a, b)` with `a x + b y = 1`.
fn bezout(x: i64, y: i64) -> Result<(i64, i64)> {
    let eg = x.extended_gcd(&y);
    match eg.gcd {
        1 => Ok((eg.x, eg.y)),
        -1 => Ok((-eg.x, -eg.y)),
        _ => Err(Error::UnsupportedRamification(format!("gcd({x},{y}) != 1"))),
    }
}

/// How one layer behaves over `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerShape {
    /// Artin-Schreier with reduced pole order `n`, prime to `p`.
    Wild { n: u64 },
    /// Kummer `z^e = h` with `ord h = m` prime to `e`.
    Tame { m: i64 },
    /// Unramified; `frobenius` is the Frobenius image in the layer group `Z/d`.
    Unramified { frobenius: u64 },
}

/// Classifies a layer whose data are functions of `t`.
pub fn layer_shape(field: &FieldDescriptor, layer: &Layer) -> Result<LayerShape> {
    match layer {
        Layer::ArtinSchreier { f } => {
            let r = reduce_artin_schreier(f)?;
            match r.valuation() {
                Some(v) if v < 0 => Ok(LayerShape::Wild { n: (-v) as u64 }),
                Some(0) => Ok(LayerShape::Unramified { frobenius: field.trace(r.leading()) }),
                _ => Ok(LayerShape::Unramified { frobenius: 0 }),
            }
        }
        Layer::Kummer { e, rhs } => {
            let h = match rhs {
                LayerRhs::Function(h) => h,
                LayerRhs::Generator(_) => {
                    return Err(Error::InvalidInput("layer shape over K needs a function of t".into()))
                }
            };
            let m = h.valuation().ok_or(Error::DivisionByZero)?;
            let e = *e as i64;
            if m.gcd(&e) == 1 {
                Ok(LayerShape::Tame { m })
            } else if m % e == 0 {
                if (field.q() - 1) % e as u64 != 0 {
                    return Err(Error::MissingRootsOfUnity(e as u64));
                }
                let k = field.log(h.leading())? % e as u64;
                Ok(LayerShape::Unramified { frobenius: k })
            } else {
                Err(Error::UnsupportedRamification(format!("Kummer degree {e} with valuation {m}")))
            }
        }
    }
}

/// Series data of a totally ramified extension at one precision.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Param {
    /// Exponents of `rho` as a monomial in `[t, g_0, g_1, ...]`.
    rho_exps: Vec<i64>,
    t: Series,
    /// `w = 1/y` for Artin-Schreier layers, `z` for Kummer layers.
    gens: Vec<Series>,
    /// Uniformizer of each intermediate field, `steps[0] = t`.
    steps: Vec<Series>,
    step_e: Vec<u64>,
    rho: Series,
}

fn mono(field: &FieldDescriptor, c: FieldElement, k: i64, n: usize) -> Series {
    Series::monomial(field, c, k, k + n as i64)
}

fn agree(a: &Series, b: &Series) -> bool {
    a.sub(b).map(|d| d.is_zero()).unwrap_or(false)
}

fn iterate(max: usize, init: Series, step: impl Fn(&Series) -> Result<Series>) -> Result<Series> {
    let mut cur = init;
    for _ in 0..max {
        let next = step(&cur)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::UnstablePrecision)
}

fn build_param(field: &FieldDescriptor, layers: &[Layer], n: usize) -> Result<Param> {
    let p = field.p() as i64;
    let one = Series::one(field, n as i64);
    let max_iter = 4 * n + 16;
    let mut param = Param {
        rho_exps: vec![0; layers.len() + 1],
        t: Series::t(field, 1 + n as i64),
        gens: Vec::new(),
        steps: Vec::new(),
        step_e: Vec::new(),
        rho: Series::t(field, 1 + n as i64),
    };
    param.rho_exps[0] = 1;
    for (idx, layer) in layers.iter().enumerate() {
        match layer {
            Layer::ArtinSchreier { f } => {
                if idx != 0 {
                    return Err(Error::UnsupportedRamification("Artin-Schreier layer must come first".into()));
                }
                let f = reduce_artin_schreier(f)?;
                let v = f.valuation().ok_or(Error::DivisionByZero)?;
                if v >= 0 {
                    return Err(Error::UnsupportedRamification("unramified Artin-Schreier layer".into()));
                }
                let pole = -v;
                if pole % p == 0 {
                    return Err(Error::PoleOrderNotPrimeToP);
                }
                let unit = f.mul(&LocalFunction::monomial(field, FieldElement::ONE, pole))?.expand(n);
                let u0 = unit.leading().expect("unit");
                let (a, b) = bezout(pole, p)?;
                let t0 = mono(field, field.powi(u0, a)?, p, n);
                let w0 = mono(field, field.powi(u0, -b)?, pole, n);
                // t = rho^p V^a, w = rho^n V^-b with V = U(t) / (1 - w^(p-1))
                let mut t = t0;
                let mut w = w0;
                let mut done = false;
                for _ in 0..max_iter {
                    let v_ser = unit.compose(&t)?.div(&one.sub(&w.pow(p - 1)?)?)?;
                    let t_next = mono(field, FieldElement::ONE, p, n).mul(&v_ser.pow(a)?)?;
                    let w_next = mono(field, FieldElement::ONE, pole, n).mul(&v_ser.pow(-b)?)?;
                    if t_next == t && w_next == w {
                        done = true;
                        break;
                    }
                    t = t_next;
                    w = w_next;
                }
                if !done {
                    return Err(Error::UnstablePrecision);
                }
                param.steps.push(t.clone());
                param.step_e.push(p as u64);
                param.t = t;
                param.gens.push(w);
                let mut exps: Vec<i64> = param.rho_exps.iter().map(|x| b * x).collect();
                exps[idx + 1] += a;
                param.rho_exps = exps;
            }
            Layer::Kummer { e, rhs } => {
                let e = *e as i64;
                if e < 1 || (e as u64) % field.p() == 0 {
                    return Err(Error::InvalidInput(format!("Kummer degree {e} must be prime to p")));
                }
                let h = match rhs {
                    LayerRhs::Function(h) => {
                        if h.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        h.expand(n).compose(&param.t)?
                    }
                    LayerRhs::Generator(j) => match layers.get(*j) {
                        Some(Layer::ArtinSchreier { .. }) if *j < idx => param.gens[*j].inv()?,
                        Some(Layer::Kummer { .. }) if *j < idx => param.gens[*j].clone(),
                        _ => return Err(Error::InvalidInput(format!("layer {idx} refers to layer {j}"))),
                    },
                };
                let m = h.valuation().ok_or(Error::UnstablePrecision)?;
                if m.gcd(&e) != 1 {
                    return Err(Error::UnsupportedRamification(format!(
                        "Kummer layer of degree {e} over valuation {m} is not totally ramified"
                    )));
                }
                let unit = h.shift(-m);
                let w0 = unit.leading().expect("unit");
                let (a, b) = bezout(m, e)?;
                let r = iterate(max_iter, mono(field, field.powi(w0, -a)?, e, n), |r| {
                    mono(field, FieldElement::ONE, e, n).mul(&unit.compose(r)?.pow(-a)?)
                })?;
                let z = mono(field, FieldElement::ONE, m, n).mul(&unit.compose(&r)?.pow(b)?)?;
                param.t = param.t.compose(&r)?;
                param.gens = param.gens.iter().map(|g| g.compose(&r)).collect::<Result<Vec<_>>>()?;
                param.steps = param.steps.iter().map(|s| s.compose(&r)).collect::<Result<Vec<_>>>()?;
                if param.steps.is_empty() {
                    param.steps.push(param.t.clone());
                } else {
                    param.steps.push(r);
                }
                param.step_e.push(e as u64);
                param.gens.push(z);
                let mut exps: Vec<i64> = param.rho_exps.iter().map(|x| b * x).collect();
                exps[idx + 1] += a;
                param.rho_exps = exps;
            }
        }
    }
    param.rho = Series::t(field, 1 + param.t.precision() as i64);
    Ok(param)
}

#[derive(Clone, Debug)]
struct GaloisData {
    group: Arc<FiniteGroup>,
    /// Per layer: `None` for Artin-Schreier, `Some(zeta_e)` for Kummer.
    zetas: Vec<Option<FieldElement>>,
}

/// A finite extension of `F_q((t))` built from Kummer and Artin-Schreier layers.
#[derive(Clone, Debug)]
pub struct LocalExtension {
    field: FieldDescriptor,
    kind: ExtensionKind,
    precision: usize,
    e: u64,
    f_res: u64,
    factors: u64,
    layers: Vec<Layer>,
    galois: Option<GaloisData>,
    params: Option<[Param; 2]>,
}

/// An element of the Galois group of a [`LocalExtension`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalAutomorphism {
    element: usize,
    coords: Vec<u64>,
}

impl LocalAutomorphism {
    pub fn element(&self) -> usize {
        self.element
    }
    /// Per layer: shift `y -> y + k` or twist `z -> zeta^k z`.
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl LocalExtension {
    /// Builds the extension at precision `n` (and `2n` for the stability check).
    pub fn new(field: &FieldDescriptor, kind: ExtensionKind, n: usize) -> Result<LocalExtension> {
        let layers = match &kind {
            ExtensionKind::Kummer(e) => vec![Layer::Kummer {
                e: *e,
                rhs: LayerRhs::Function(LocalFunction::monomial(field, FieldElement::ONE, 1)),
            }],
            ExtensionKind::ArtinSchreier(f) => vec![Layer::ArtinSchreier { f: f.clone() }],
            ExtensionKind::Tower(l) => l.clone(),
        };
        if layers.is_empty() {
            return Err(Error::InvalidInput("extension needs at least one layer".into()));
        }
        if n < 4 {
            return Err(Error::OutOfRange(format!("precision {n}")));
        }
        let compositum = layers.iter().all(|l| !matches!(l, Layer::Kummer { rhs: LayerRhs::Generator(_), .. }));
        // single unramified layer
        if layers.len() == 1 {
            if let LayerShape::Unramified { frobenius } = layer_shape(field, &layers[0])? {
                let d = layer_degree(field, &layers[0]);
                let f_res = d / d.gcd(&frobenius);
                let galois = Some(galois_data(field, &layers)?);
                return Ok(LocalExtension {
                    field: field.clone(),
                    kind,
                    precision: n,
                    e: 1,
                    f_res: if frobenius == 0 { 1 } else { f_res },
                    factors: if frobenius == 0 { d } else { d / f_res },
                    layers,
                    galois,
                    params: None,
                });
            }
        }
        let lo = build_param(field, &layers, n)?;
        let hi = build_param(field, &layers, 2 * n)?;
        let e = lo.step_e.iter().product();
        let galois = if compositum { Some(galois_data(field, &layers)?) } else { None };
        Ok(LocalExtension {
            field: field.clone(),
            kind,
            precision: n,
            e,
            f_res: 1,
            factors: 1,
            layers,
            galois,
            params: Some([lo, hi]),
        })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }
    pub fn kind(&self) -> &ExtensionKind {
        &self.kind
    }
    pub fn precision(&self) -> usize {
        self.precision
    }
    pub fn ramification_index(&self) -> u64 {
        self.e
    }
    pub fn residue_degree(&self) -> u64 {
        self.f_res
    }
    /// Number of field factors of the extension algebra.
    pub fn factors(&self) -> u64 {
        self.factors
    }
    pub fn degree(&self) -> u64 {
        self.layers.iter().map(|l| layer_degree(&self.field, l)).product()
    }
    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }
    pub fn is_totally_ramified(&self) -> bool {
        self.params.is_some()
    }

    /// Galois group, available when every layer is defined over `K`.
    pub fn galois_group(&self) -> Result<Arc<FiniteGroup>> {
        self.galois
            .as_ref()
            .map(|g| g.group.clone())
            .ok_or_else(|| Error::InvalidInput("tower is not Galois over the base".into()))
    }

    pub fn automorphism(&self, element: usize) -> Result<LocalAutomorphism> {
        let g = self.galois_group()?;
        if element >= g.order() {
            return Err(Error::OutOfRange(format!("group element {element}")));
        }
        let coords = g.coordinates(element).expect("abelian product");
        Ok(LocalAutomorphism { element, coords })
    }

    /// Base parameter `t` as a series in the uniformizer, at precision `N`.
    pub fn t_series(&self) -> Result<&Series> {
        Ok(&self.param(0)?.t)
    }

    /// Exponents of the uniformizer as a monomial in `t` and the layer generators.
    pub fn uniformizer_exponents(&self) -> Result<&[i64]> {
        Ok(&self.param(0)?.rho_exps)
    }

    fn param(&self, i: usize) -> Result<&Param> {
        self.params
            .as_ref()
            .map(|p| &p[i])
            .ok_or_else(|| Error::InvalidInput("extension is unramified".into()))
    }

    fn both<T: PartialEq>(&self, f: impl Fn(&Param) -> Result<T>) -> Result<T> {
        let lo = f(self.param(0)?)?;
        let hi = f(self.param(1)?)?;
        if lo == hi {
            Ok(lo)
        } else {
            Err(Error::UnstablePrecision)
        }
    }

    /// `sigma(rho) / rho` as a series in `rho`.
    fn ratio(&self, param: &Param, sigma: &LocalAutomorphism) -> Result<Series> {
        let g = self.galois.as_ref().ok_or_else(|| Error::InvalidInput("no Galois action".into()))?;
        let f = &self.field;
        let n = param.t.precision();
        let mut r = Series::one(f, n as i64);
        for (i, (&k, zeta)) in sigma.coords.iter().zip(&g.zetas).enumerate() {
            if k == 0 {
                continue;
            }
            let c = param.rho_exps[i + 1];
            match zeta {
                None => {
                    // w -> w / (1 + k w)
                    let w = &param.gens[i];
                    let shifted = Series::one(f, n as i64).add(&w.scale(f.from_int(k as i64)))?;
                    r = r.mul(&shifted.pow(-c)?)?;
                }
                Some(z) => {
                    let e = layer_degree(f, &self.layers[i]) as i64;
                    let zk = f.pow(*z, (k as i64 * c).rem_euclid(e) as u64);
                    r = r.scale(zk);
                }
            }
        }
        Ok(r)
    }

    /// `sigma(rho)` as a series in `rho`, at precision `N`.
    pub fn action(&self, sigma: &LocalAutomorphism) -> Result<Series> {
        let param = self.param(0)?;
        param.rho.mul(&self.ratio(param, sigma)?)
    }

    /// Checks that `sigma` fixes `t` and has the declared order, to precision.
    pub fn verify_automorphism(&self, sigma: &LocalAutomorphism) -> Result<bool> {
        let param = self.param(0)?;
        let s = param.rho.mul(&self.ratio(param, sigma)?)?;
        if !agree(&param.t.compose(&s)?, &param.t) {
            return Ok(false);
        }
        let order = self.galois_group()?.element_order(sigma.element);
        let mut it = s.clone();
        for _ in 1..order {
            it = it.compose(&s)?;
        }
        Ok(agree(&it, &param.rho))
    }

    /// `ord_rho(sigma(rho) - rho)`, the fixed-point multiplicity of `sigma` on the uniformizer.
    pub fn fixed_point_multiplicity(&self, sigma: &LocalAutomorphism) -> Result<u64> {
        if sigma.is_identity() {
            return Err(Error::IdentityAutomorphism);
        }
        if !self.is_totally_ramified() {
            return Ok(1);
        }
        self.both(|param| {
            let s = param.rho.mul(&self.ratio(param, sigma)?)?;
            let d = s.sub(&param.rho)?;
            d.valuation().map(|v| v as u64).ok_or(Error::UnstablePrecision)
        })
    }

    /// `sum_{sigma != 1} ord(sigma(rho) - rho)`, which is `ord g'(rho)` for the minimal polynomial `g` of `rho`.
    pub fn different_via_conjugates(&self) -> Result<u64> {
        let g = self.galois_group()?;
        let mut total = 0;
        for el in 0..g.order() {
            let s = self.automorphism(el)?;
            if !s.is_identity() {
                total += self.fixed_point_multiplicity(&s)?;
            }
        }
        Ok(total)
    }

    /// `(e_i, D^log)` for each layer step `L_i < L_{i+1}` of the tower.
    pub fn step_differents(&self) -> Result<Vec<(u64, u64)>> {
        self.both(|param| {
            let r = param.steps.len();
            let mut out = Vec::with_capacity(r);
            let dv = |s: &Series| s.derivative().valuation().ok_or(Error::UnstablePrecision);
            for i in 0..r {
                let upper = if i + 1 < r { dv(&param.steps[i + 1])? } else { 0 };
                let lower = dv(&param.steps[i])?;
                let above: u64 = param.step_e[i + 1..].iter().product();
                let diff = lower - upper;
                if diff < 0 || diff % above as i64 != 0 {
                    return Err(Error::NonIntegral(format!("step different {diff}/{above}")));
                }
                let len = (diff / above as i64) as u64;
                out.push((param.step_e[i], len + 1 - param.step_e[i]));
            }
            Ok(out)
        })
    }
}

/// `D^log` of `upper` over the subextension generated by the layers `sub` of `upper`.
///
/// `lower` is that subextension built on its own (the same layers, in the same order),
/// or `None` when it is unramified; its uniformizer is rewritten in `upper`'s.
pub fn relative_wild_different(upper: &LocalExtension, lower: Option<&LocalExtension>, sub: &[usize]) -> Result<u64> {
    if !upper.is_totally_ramified() {
        return Ok(0);
    }
    let (lower_e, lower_exps) = match lower {
        Some(l) if l.is_totally_ramified() => {
            if l.layers.len() != sub.len() || l.layers.iter().zip(sub).any(|(a, &i)| upper.layers.get(i) != Some(a)) {
                return Err(Error::InvalidInput("subextension layers do not match".into()));
            }
            (l.e, l.param(0)?.rho_exps.clone())
        }
        _ => (1, vec![1]),
    };
    if upper.e % lower_e != 0 {
        return Err(Error::InvalidInput("subextension is not contained in the extension".into()));
    }
    let rel_e = (upper.e / lower_e) as i64;
    upper.both(|param| {
        let mut u = param.t.pow(lower_exps[0])?;
        for (k, &i) in sub.iter().enumerate().take(lower_exps.len() - 1) {
            u = u.mul(&param.gens[i].pow(lower_exps[k + 1])?)?;
        }
        if u.valuation() != Some(rel_e) {
            return Err(Error::InvalidInput("subextension uniformizer has the wrong valuation".into()));
        }
        let v = u.derivative().valuation().ok_or(Error::UnstablePrecision)?;
        let d = v - (rel_e - 1);
        if d < 0 {
            return Err(Error::NonIntegral(format!("negative relative different {d}")));
        }
        Ok(d as u64)
    })
}

/// Checks `D_{L/K} = sum_i e_{L/L_(i+1)} D_{L_(i+1)/L_i}` along the layer steps.
pub fn local_chain_rule_check(ext: &LocalExtension) -> Result<bool> {
    if !ext.is_totally_ramified() {
        return Ok(true);
    }
    let total = wild_different_local(ext)?;
    let steps = ext.step_differents()?;
    let mut sum = 0u64;
    for (i, &(_, d)) in steps.iter().enumerate() {
        let above: u64 = steps[i + 1..].iter().map(|s| s.0).product();
        sum += above * d;
    }
    Ok(sum == total)
}

fn layer_degree(field: &FieldDescriptor, layer: &Layer) -> u64 {
    match layer {
        Layer::ArtinSchreier { .. } => field.p(),
        Layer::Kummer { e, .. } => *e,
    }
}

fn galois_data(field: &FieldDescriptor, layers: &[Layer]) -> Result<GaloisData> {
    let mut orders = Vec::new();
    let mut zetas = Vec::new();
    for l in layers {
        match l {
            Layer::ArtinSchreier { .. } => {
                orders.push(field.p());
                zetas.push(None);
            }
            Layer::Kummer { e, .. } => {
                if (field.q() - 1) % e != 0 {
                    return Err(Error::MissingRootsOfUnity(*e));
                }
                orders.push(*e);
                zetas.push(Some(field.exp((field.q() - 1) / e)));
            }
        }
    }
    Ok(GaloisData { group: Arc::new(FiniteGroup::abelian(&orders)), zetas })
}

/// `D^log_{B/A} = length_B Omega_{B/A} - (e - 1)`, with the length read from `ord(dt/drho)`.
pub fn wild_different_local(ext: &LocalExtension) -> Result<u64> {
    if !ext.is_totally_ramified() {
        return Ok(0);
    }
    ext.both(|param| {
        let v = param.t.derivative().valuation().ok_or(Error::UnstablePrecision)?;
        let d = v - (ext.e as i64 - 1);
        if d < 0 {
            return Err(Error::NonIntegral(format!("negative wild different {d}")));
        }
        Ok(d as u64)
    })
}

/// `j_B(sigma) = ord_rho(sigma(rho)/rho - 1)` for `sigma != 1`.
///
/// For an unramified extension `sigma` moves the residue field, so `j = 0`;
/// in the split case `sigma` fixes no factor and an error is returned.
pub fn log_fixed_length(ext: &LocalExtension, sigma: &LocalAutomorphism) -> Result<u64> {
    if sigma.is_identity() {
        return Err(Error::IdentityAutomorphism);
    }
    if !ext.is_totally_ramified() {
        return if ext.factors == 1 {
            Ok(0)
        } else {
            Err(Error::InvalidInput("automorphism permutes the factors of a split extension".into()))
        };
    }
    ext.both(|param| {
        let d = ext.ratio(param, sigma)?.sub(&Series::one(&ext.field, param.t.precision() as i64))?;
        d.valuation().map(|v| v as u64).ok_or(Error::UnstablePrecision)
    })
}

/// `Sw = (1/|I|) [D^log Tr(1) - sum_{sigma != 1} j(sigma) Tr(sigma)]`, a non-negative integer.
pub fn local_swan_conductor(ext: &LocalExtension, rep: &BrauerRep) -> Result<u64> {
    let g = ext.galois_group()?;
    if **rep.group() != *g {
        return Err(Error::InvalidInput("representation is not defined on the inertia group".into()));
    }
    let identity: Vec<usize> = (0..g.order()).collect();
    local_swan_conductor_on(ext, rep, &identity)
}

/// As [`local_swan_conductor`], for a representation of a larger group containing
/// the local Galois group through `embedding` (local element -> element of `rep.group()`).
pub fn local_swan_conductor_on(ext: &LocalExtension, rep: &BrauerRep, embedding: &[usize]) -> Result<u64> {
    if !ext.is_totally_ramified() {
        return Ok(0);
    }
    let g = ext.galois_group()?;
    if embedding.len() != g.order() || embedding.iter().any(|&x| x >= rep.group().order()) {
        return Err(Error::InvalidInput("embedding does not match the local Galois group".into()));
    }
    let d = wild_different_local(ext)?;
    let mut acc = rep.value(embedding[g.identity()])?.scale(d as i64);
    for el in 0..g.order() {
        if el == g.identity() {
            continue;
        }
        let j = log_fixed_length(ext, &ext.automorphism(el)?)?;
        if j != 0 {
            acc = acc.sub(&rep.value(embedding[el])?.scale(j as i64));
        }
    }
    let total = acc.as_integer().ok_or_else(|| Error::NonIntegral("irrational Swan conductor".into()))?;
    let n = g.order() as i64;
    if total < 0 || total % n != 0 {
        return Err(Error::NonIntegral(format!("Swan conductor {total}/{n}")));
    }
    Ok((total / n) as u64)
}
