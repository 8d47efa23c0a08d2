//! Kind-specific entry parameters and their conversion into core objects.
//!
//! Field elements are written as their packed index in `0..q`; a negative integer `-c`
//! stands for the additive inverse of element `c`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use swancalc_core::curve_cover::{CoverLayer, CoverSpec, SheafSpec};
use swancalc_core::exact_arith::{
    make_field, FieldDescriptor, FieldElement, LocalFunction, Point, Poly, RationalFunction,
};
use swancalc_core::group_rep::{BrauerRep, FiniteGroup};
use swancalc_core::local_ram::{ExtensionKind, Layer, LayerRhs};
use swancalc_core::rank1_kato::{ChartFunction, Fiber};

use crate::catalog::Kind;

/// `"p"` or `"p^k"`.
pub fn parse_field(spec: &str) -> Result<FieldDescriptor, String> {
    let (p, k) = match spec.split_once('^') {
        Some((p, k)) => (p.trim(), k.trim()),
        None => (spec.trim(), "1"),
    };
    let p: u64 = p.parse().map_err(|_| format!("field '{spec}': characteristic is not an integer"))?;
    let k: u32 = k.parse().map_err(|_| format!("field '{spec}': degree is not an integer"))?;
    make_field(p, k).map_err(|e| format!("field '{spec}': {e}"))
}

pub fn element(f: &FieldDescriptor, c: i64) -> Result<FieldElement, String> {
    let a = c.unsigned_abs();
    if a >= f.q() {
        return Err(format!("element {c} outside 0..{}", f.q()));
    }
    let x = FieldElement(a);
    Ok(if c < 0 { f.neg(x) } else { x })
}

fn poly(f: &FieldDescriptor, coeffs: &[i64]) -> Result<Poly, String> {
    let c = coeffs.iter().map(|&c| element(f, c)).collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(f, c))
}

/// A boundary point: `"inf"` or a field element.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum PointSpec {
    Finite(i64),
    Named(String),
}

impl PointSpec {
    fn point(&self, f: &FieldDescriptor) -> Result<Point, String> {
        match self {
            PointSpec::Finite(c) => Ok(Point::Finite(element(f, *c)?)),
            PointSpec::Named(s) if s == "inf" => Ok(Point::Infinity),
            PointSpec::Named(s) => Err(format!("unknown point '{s}'")),
        }
    }
}

fn one() -> Vec<i64> {
    vec![1]
}

/// `num / den`, coefficients from the constant term up.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    pub num: Vec<i64>,
    #[serde(default = "one")]
    pub den: Vec<i64>,
}

impl FunctionSpec {
    pub fn function(&self, f: &FieldDescriptor) -> Result<RationalFunction, String> {
        RationalFunction::new(poly(f, &self.num)?, poly(f, &self.den)?).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum LayerSpec {
    ArtinSchreier(FunctionSpec),
    Kummer {
        e: u64,
        #[serde(flatten)]
        g: FunctionSpec,
    },
}

/// An abelian cover of the projective line and the data its checks need.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoverParams {
    pub field: String,
    pub boundary: Vec<PointSpec>,
    pub layers: Vec<LayerSpec>,
    /// Coordinates of the character defining the sheaf, one per layer; default `(1, 0, ..)`.
    #[serde(default)]
    pub character: Option<Vec<u64>>,
    /// Coordinates of the automorphism for the trace check; default `(1, 0, ..)`.
    #[serde(default)]
    pub sigma: Option<Vec<u64>>,
    /// Layers generating the subgroup `H` of a tower `V -> V/H -> U`.
    #[serde(default)]
    pub tower: Option<Vec<usize>>,
}

impl CoverParams {
    pub fn cover(&self, precision: usize) -> Result<CoverSpec, String> {
        let f = parse_field(&self.field)?;
        let boundary = self.boundary.iter().map(|p| p.point(&f)).collect::<Result<Vec<_>, _>>()?;
        let mut layers = Vec::with_capacity(self.layers.len());
        for l in &self.layers {
            layers.push(match l {
                LayerSpec::ArtinSchreier(g) => CoverLayer::ArtinSchreier { g: g.function(&f)? },
                LayerSpec::Kummer { e, g } => CoverLayer::Kummer { e: *e, g: g.function(&f)? },
            });
        }
        CoverSpec::new(&f, &boundary, layers, precision).map_err(|e| e.to_string())
    }

    /// Largest pole order of each Artin-Schreier layer that is divisible by `p`, with its point.
    pub fn inseparable_poles(&self) -> Result<Vec<(usize, String, i64)>, String> {
        let f = parse_field(&self.field)?;
        let p = f.p() as i64;
        let mut out = Vec::new();
        for (i, l) in self.layers.iter().enumerate() {
            let LayerSpec::ArtinSchreier(g) = l else { continue };
            let g = g.function(&f)?;
            for (pt, ord) in g.divisor() {
                if ord < 0 && (-ord) % p == 0 {
                    let at = match pt {
                        Point::Infinity => String::from("inf"),
                        Point::Finite(a) => format!("{}", a.0),
                    };
                    out.push((i, at, -ord));
                }
            }
        }
        Ok(out)
    }

    pub fn character_coordinates(&self) -> Vec<u64> {
        self.character.clone().unwrap_or_else(|| unit_vector(self.layers.len()))
    }

    pub fn sigma_coordinates(&self) -> Vec<u64> {
        self.sigma.clone().unwrap_or_else(|| unit_vector(self.layers.len()))
    }
}

fn unit_vector(n: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    if let Some(x) = v.first_mut() {
        *x = 1;
    }
    v
}

/// The smallest field `F_(l^r)`, `l != p` prime, whose unit group has order divisible by `n`.
pub fn coefficient_field(p: u64, n: u64) -> Result<FieldDescriptor, String> {
    // a prime l = 1 mod n lies below 50n + 100 for every n in reach of the catalog
    let mut best: Option<(u64, u64, u32)> = None;
    for ell in (2..=50 * n + 100).filter(|&l| swancalc_core::exact_arith::is_prime(l) && l != p && !n.is_multiple_of(l)) {
        let mut r = 1;
        let mut q = ell;
        while (q - 1) % n != 0 {
            r += 1;
            match q.checked_mul(ell).filter(|&q| q < 1 << 40) {
                Some(next) => q = next,
                None => break,
            }
        }
        if (q - 1) % n == 0 && best.is_none_or(|b| q < b.0) {
            best = Some((q, ell, r));
        }
    }
    let (_, ell, r) = best.ok_or_else(|| format!("no small coefficient field holds the {n}-th roots of unity"))?;
    make_field(ell, r).map_err(|e| e.to_string())
}

/// The linear character `g -> prod_i zeta_(n_i)^(k_i c_i(g))` of an abelian group, given on the
/// elements `emb` of a subgroup when `sub` is set.
pub fn linear_character(
    group: &FiniteGroup,
    ks: &[u64],
    lf: &FieldDescriptor,
    sub: Option<(&Arc<FiniteGroup>, &[usize])>,
) -> Result<BrauerRep, String> {
    let factors = group.factors().ok_or("group is not a product of cyclic factors")?.to_vec();
    if ks.len() != factors.len() {
        return Err(format!("character needs {} coordinates", factors.len()));
    }
    let n = group.exponent();
    let zeta = lf.exp((lf.q() - 1) / n);
    let value = |el: usize| {
        let c = group.coordinates(el).expect("product group");
        let e: u64 = (0..factors.len()).map(|i| (ks[i] % factors[i]) * c[i] * (n / factors[i])).sum();
        lf.pow(zeta, e % n)
    };
    match sub {
        None => {
            let images: Vec<_> = (0..group.order()).map(value).collect();
            BrauerRep::linear(Arc::new(group.clone()), lf, &images).map_err(|e| e.to_string())
        }
        Some((h, emb)) => {
            let images: Vec<_> = emb.iter().map(|&el| value(el)).collect();
            BrauerRep::linear(h.clone(), lf, &images).map_err(|e| e.to_string())
        }
    }
}

/// The rank-one sheaf of the declared character.
pub fn character_sheaf(cover: &CoverSpec, ks: &[u64]) -> Result<SheafSpec, String> {
    let g = cover.group();
    let lf = coefficient_field(cover.field().p(), g.exponent())?;
    Ok(SheafSpec::from_rep(linear_character(g, ks, &lf, None)?))
}

pub fn element_from_coordinates(group: &FiniteGroup, c: &[u64]) -> Result<usize, String> {
    let factors = group.factors().ok_or("group is not a product of cyclic factors")?;
    if c.len() != factors.len() {
        return Err(format!("automorphism needs {} coordinates", factors.len()));
    }
    let reduced: Vec<u64> = c.iter().zip(factors).map(|(x, n)| x % n).collect();
    group.from_coordinates(&reduced).ok_or_else(|| String::from("coordinates outside the group"))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LaurentSpec {
    /// Exponent of the first coefficient.
    pub low: i64,
    pub coeffs: Vec<i64>,
}

impl LaurentSpec {
    fn function(&self, f: &FieldDescriptor) -> Result<LocalFunction, String> {
        let c = self.coeffs.iter().map(|&c| element(f, c)).collect::<Result<Vec<_>, _>>()?;
        Ok(LocalFunction::laurent(f, self.low, &c))
    }

    /// Pole order as written, when the leading coefficient is nonzero.
    pub fn pole_order(&self) -> i64 {
        match self.coeffs.iter().position(|&c| c != 0) {
            Some(i) => (-(self.low + i as i64)).max(0),
            None => 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum LocalLayerSpec {
    ArtinSchreier(LaurentSpec),
    /// `z^e = t`.
    Kummer { e: u64 },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum LocalParams {
    ArtinSchreier {
        field: String,
        #[serde(flatten)]
        f: LaurentSpec,
    },
    Kummer { field: String, e: u64 },
    Tower { field: String, layers: Vec<LocalLayerSpec> },
}

impl LocalParams {
    pub fn field(&self) -> &str {
        match self {
            LocalParams::ArtinSchreier { field, .. } | LocalParams::Kummer { field, .. } | LocalParams::Tower { field, .. } => {
                field
            }
        }
    }

    pub fn extension(&self) -> Result<(FieldDescriptor, ExtensionKind), String> {
        let f = parse_field(self.field())?;
        let kind = match self {
            LocalParams::ArtinSchreier { f: spec, .. } => ExtensionKind::ArtinSchreier(spec.function(&f)?),
            LocalParams::Kummer { e, .. } => ExtensionKind::Kummer(*e),
            LocalParams::Tower { layers, .. } => {
                let mut out = Vec::with_capacity(layers.len());
                for l in layers {
                    out.push(match l {
                        LocalLayerSpec::ArtinSchreier(spec) => Layer::ArtinSchreier { f: spec.function(&f)? },
                        LocalLayerSpec::Kummer { e } => Layer::Kummer {
                            e: *e,
                            rhs: LayerRhs::Function(LocalFunction::monomial(&f, f.one(), 1)),
                        },
                    });
                }
                ExtensionKind::Tower(out)
            }
        };
        Ok((f, kind))
    }

    /// Pole orders of the Artin-Schreier layers as written.
    pub fn pole_orders(&self) -> Vec<i64> {
        match self {
            LocalParams::ArtinSchreier { f, .. } => vec![f.pole_order()],
            LocalParams::Kummer { .. } => Vec::new(),
            LocalParams::Tower { layers, .. } => layers
                .iter()
                .filter_map(|l| match l {
                    LocalLayerSpec::ArtinSchreier(s) => Some(s.pole_order()),
                    LocalLayerSpec::Kummer { .. } => None,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveParams {
    Cover(CoverParams),
    /// The graph of `x = y^N` on the affine line over `F_q`, against `Fr^n`.
    Deligne { power: u64, q: u64, n: u32 },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub enum FiberSpec {
    #[serde(rename = "P1")]
    ProjectiveLine,
    #[serde(rename = "Gm")]
    MultiplicativeGroup,
}

impl From<FiberSpec> for Fiber {
    fn from(f: FiberSpec) -> Fiber {
        match f {
            FiberSpec::ProjectiveLine => Fiber::ProjectiveLine,
            FiberSpec::MultiplicativeGroup => Fiber::MultiplicativeGroup,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceParams {
    /// The sheaf of a curve cover pulled back to `U x F`.
    Fibration { cover: CoverParams, fiber: FiberSpec },
    /// `P^2` with one line `t = 0`; terms `[i, j, c]` of `f` in the affine chart `(s, t)`.
    PlaneLine { field: String, terms: Vec<(i64, i64, i64)> },
}

impl SurfaceParams {
    pub fn chart_function(field: &FieldDescriptor, terms: &[(i64, i64, i64)]) -> Result<ChartFunction, String> {
        let t = terms
            .iter()
            .map(|&(i, j, c)| Ok(((i, j), element(field, c)?)))
            .collect::<Result<Vec<_>, String>>()?;
        Ok(ChartFunction::new(field, &t))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChowParams {
    Configuration {
        name: String,
        #[serde(default)]
        swan_multiplicities: Option<Vec<i64>>,
        #[serde(default)]
        fixed_multiplicities: Option<Vec<i64>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum LogParams {
    /// `mu_n`-torsor of the power map against its exceptional bound, `n <= max_n` prime to `p`.
    MuTorsor { field: String, max_n: u64 },
    /// Every permutation of `m` letters, `m <= max_m`.
    Admissibility { max_m: usize },
    SelfProduct { field: String, variables: Vec<String>, divisor: Vec<String> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupParams {
    /// Random sums of linear characters of `Z/p^e`.
    RandomCyclic { primes: Vec<u64>, max_exponent: u32, count: usize, seed: u64 },
}

/// Parameters of any entry, by kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Parameters {
    Local(LocalParams),
    Curve(CurveParams),
    Surface(SurfaceParams),
    Chow(ChowParams),
    Log(LogParams),
    Group(GroupParams),
}

impl Parameters {
    pub fn parse(kind: Kind, value: &serde_json::Value) -> Result<Parameters, String> {
        let v = value.clone();
        let r = match kind {
            Kind::Local => serde_json::from_value(v).map(Parameters::Local),
            Kind::CurveCover => serde_json::from_value(v).map(Parameters::Curve),
            Kind::SurfaceRank1 => serde_json::from_value(v).map(Parameters::Surface),
            Kind::Chow => serde_json::from_value(v).map(Parameters::Chow),
            Kind::LogChart => serde_json::from_value(v).map(Parameters::Log),
            Kind::GroupRep => serde_json::from_value(v).map(Parameters::Group),
        };
        r.map_err(|e| e.to_string())
    }

    /// Base field of the entry, when it has one.
    pub fn field(&self) -> Option<String> {
        match self {
            Parameters::Local(l) => Some(l.field().to_string()),
            Parameters::Curve(CurveParams::Cover(c)) => Some(c.field.clone()),
            Parameters::Surface(SurfaceParams::Fibration { cover, .. }) => Some(cover.field.clone()),
            Parameters::Surface(SurfaceParams::PlaneLine { field, .. }) => Some(field.clone()),
            Parameters::Log(LogParams::MuTorsor { field, .. } | LogParams::SelfProduct { field, .. }) => {
                Some(field.clone())
            }
            _ => None,
        }
    }

    /// Checks this entry can run.
    pub fn supported_checks(&self) -> &'static [&'static str] {
        match self {
            Parameters::Local(_) => &["different", "swan"],
            Parameters::Curve(CurveParams::Cover(_)) => &["different", "gos", "swan", "trace"],
            Parameters::Curve(CurveParams::Deligne { .. }) => &["trace"],
            Parameters::Surface(SurfaceParams::Fibration { .. }) => &["kato", "laumon"],
            Parameters::Surface(SurfaceParams::PlaneLine { .. }) => &["kato"],
            Parameters::Chow(_) => &["kato", "log"],
            Parameters::Log(_) => &["log"],
            Parameters::Group(_) => &["group"],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_strings() {
        let f = parse_field("2^3").unwrap();
        assert_eq!((f.p(), f.k(), f.q()), (2, 3, 8));
        assert_eq!(parse_field("7").unwrap().q(), 7);
        assert!(parse_field("6").is_err());
        assert!(parse_field("x^2").is_err());
    }

    #[test]
    fn negative_integers_negate() {
        let f = parse_field("5").unwrap();
        assert_eq!(element(&f, -1).unwrap(), f.neg(f.one()));
        assert!(element(&f, 5).is_err());
    }

    #[test]
    fn coefficient_fields_hold_the_roots_of_unity() {
        for (p, n) in [(2, 3), (3, 4), (5, 125), (3, 12), (2, 15), (7, 6)] {
            let f = coefficient_field(p, n).unwrap();
            assert_ne!(f.p(), p);
            assert_eq!((f.q() - 1) % n, 0, "p = {p}, n = {n}");
        }
        // 2 has order 100 mod 125; a prime field is far smaller
        assert_eq!(coefficient_field(5, 125).unwrap().q(), 251);
    }
}
