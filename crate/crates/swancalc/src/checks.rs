//! Per-entry check runners.
//!
//! Each runner returns the values computed by the main route and, under the same keys, the
//! values of an independent route. A check passes when every oracle value equals the computed
//! value under its key.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use swancalc_core::chow_surface::{
    catalog_configurations, complement_euler_characteristic, kato_class_degree, log_euler_number,
    log_lefschetz_divisorial, BoundaryDivisor, SurfaceModel,
};
use swancalc_core::curve_cover::{
    chain_rule_check, decompose_places, deligne_check, gos_check, genus_check, induction_check, local_swan_cycle,
    place_label, swan_character_class, swan_class, trace_formula_check, wild_different, CoverSpec, ZeroCycle,
};
use swancalc_core::exact_arith::FieldDescriptor;
use swancalc_core::group_rep::{brauer_identity_check, p_part, BrauerRep, FiniteGroup};
use swancalc_core::local_ram::{
    log_fixed_length, local_swan_conductor, swan_pole_order, wild_different_local, ExtensionKind, Layer,
    LocalExtension,
};
use swancalc_core::log_charts::{
    barycentric_admissibility, exceptional_roots, log_diagonal, log_self_product, mu_torsor_group, MonomialChart,
    MonomialMorphism,
};
use swancalc_core::rank1_kato::{
    blowup_clean, cleanness, fibration_data, kato_c_class, laumon_decomposition, swan_divisor, theorem_5_check,
    AxisBoundary, AxisWindow, Chart, Fiber, RankOneData,
};
use swancalc_core::Rational;

use crate::params::{
    character_sheaf, coefficient_field, element_from_coordinates, linear_character, parse_field, ChowParams,
    CoverParams, CurveParams, GroupParams, LogParams, Parameters, SurfaceParams,
};

/// Values of one check; `oracle` keys are a subset of `computed` keys.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub computed: Map<String, Value>,
    pub oracle: Map<String, Value>,
}

impl Outcome {
    fn both(&mut self, key: &str, computed: Value, oracle: Value) {
        self.computed.insert(key.into(), computed);
        self.oracle.insert(key.into(), oracle);
    }

    fn value(&mut self, key: &str, v: Value) {
        self.computed.insert(key.into(), v);
    }

    /// Keys whose oracle value differs from the computed one.
    pub fn disagreements(&self) -> Vec<String> {
        self.oracle
            .iter()
            .filter(|(k, v)| self.computed.get(*k) != Some(v))
            .map(|(k, _)| k.clone())
            .collect()
    }
}

type CheckResult = Result<Outcome, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn rational(r: Rational) -> Value {
    if r.is_integer() {
        json!(r.to_integer())
    } else {
        json!(format!("{}/{}", r.numer(), r.denom()))
    }
}

/// A 0-cycle as `{place label: coefficient}`.
pub fn cycle(field: &FieldDescriptor, z: &ZeroCycle) -> Value {
    let mut m = Map::new();
    for (place, _, c) in z.terms() {
        m.insert(place_label(field, &place), rational(c));
    }
    Value::Object(m)
}

/// Coordinates of every element of an abelian group, in element order.
fn all_coordinates(group: &FiniteGroup) -> Result<Vec<Vec<u64>>, String> {
    (0..group.order())
        .map(|el| group.coordinates(el).ok_or_else(|| String::from("group is not a product of cyclic factors")))
        .collect()
}

pub fn run(params: &Parameters, check: &str, precision: usize) -> CheckResult {
    match (params, check) {
        (Parameters::Local(l), "different") => {
            let (f, kind) = l.extension()?;
            local_different(&LocalExtension::new(&f, kind, precision).map_err(err)?)
        }
        (Parameters::Local(l), "swan") => {
            let (f, kind) = l.extension()?;
            local_swan(&LocalExtension::new(&f, kind, precision).map_err(err)?)
        }
        (Parameters::Curve(CurveParams::Cover(c)), _) => {
            let cover = c.cover(precision)?;
            match check {
                "swan" => cover_swan(c, &cover),
                "different" => cover_different(c, &cover),
                "gos" => cover_gos(c, &cover),
                "trace" => cover_trace(c, &cover),
                _ => Err(format!("check '{check}' does not apply")),
            }
        }
        (Parameters::Curve(CurveParams::Deligne { power, q, n }), "trace") => {
            let r = deligne_check(*power, *q, *n).map_err(err)?;
            let mut out = Outcome::default();
            out.both("trace", json!(r.lhs), json!(r.rhs));
            Ok(out)
        }
        (Parameters::Surface(SurfaceParams::Fibration { cover, fiber }), _) => {
            let built = cover.cover(precision)?;
            let sheaf = character_sheaf(&built, &cover.character_coordinates())?;
            let fiber = Fiber::from(*fiber);
            match check {
                "kato" => fibration_kato(&built, &sheaf, fiber),
                "laumon" => fibration_laumon(&built, &sheaf, fiber),
                _ => Err(format!("check '{check}' does not apply")),
            }
        }
        (Parameters::Surface(SurfaceParams::PlaneLine { field, terms }), "kato") => plane_line_kato(field, terms),
        (Parameters::Chow(c), "log") => chow_log(c),
        (Parameters::Chow(c), "kato") => chow_kato(c),
        (Parameters::Log(l), "log") => log_chart(l),
        (Parameters::Group(g), "group") => group_identity(g),
        _ => Err(format!("check '{check}' does not apply")),
    }
}

fn local_different(ext: &LocalExtension) -> CheckResult {
    let mut out = Outcome::default();
    let e = ext.ramification_index();
    let d = wild_different_local(ext).map_err(err)?;
    // conjugates give the full different; the tame part e - 1 is removed
    let conj = ext.different_via_conjugates().map_err(err)? - (e - 1);
    let g = ext.galois_group().map_err(err)?;
    let mut j_sum = 0;
    for el in (0..g.order()).filter(|&el| el != g.identity()) {
        j_sum += log_fixed_length(ext, &ext.automorphism(el).map_err(err)?).map_err(err)?;
    }
    out.value("ramification_index", json!(e));
    out.both("wild_different", json!(d), json!(conj));
    out.both("fixed_length_sum", json!(j_sum), json!(d));
    Ok(out)
}

/// Pole order of the reduced Artin-Schreier layer, if the extension has one.
fn artin_schreier_pole(ext: &LocalExtension) -> Result<Option<(usize, u64)>, String> {
    let layer = match ext.kind() {
        ExtensionKind::ArtinSchreier(f) => Some((0, f)),
        ExtensionKind::Kummer(_) => None,
        ExtensionKind::Tower(layers) => layers.iter().enumerate().find_map(|(i, l)| match l {
            Layer::ArtinSchreier { f } => Some((i, f)),
            Layer::Kummer { .. } => None,
        }),
    };
    layer.map(|(i, f)| swan_pole_order(f).map(|n| (i, n)).map_err(err)).transpose()
}

fn local_swan(ext: &LocalExtension) -> CheckResult {
    let g = ext.galois_group().map_err(err)?;
    let lf = coefficient_field(ext.field().p(), g.exponent())?;
    let wild = artin_schreier_pole(ext)?;
    let mut computed = Vec::new();
    let mut oracle = Vec::new();
    for ks in all_coordinates(&g)? {
        let rep = linear_character(&g, &ks, &lf, None)?;
        computed.push(local_swan_conductor(ext, &rep).map_err(err)?);
        // a character sees the wild layer iff its coordinate there is nonzero; tame twists do not move Sw
        oracle.push(match wild {
            Some((i, n)) if ks[i] % ext.field().p() != 0 => n,
            _ => 0,
        });
    }
    let mut out = Outcome::default();
    out.both("swan_conductor", json!(computed.iter().max()), json!(oracle.iter().max()));
    out.both("swan_conductors", json!(computed), json!(oracle));
    Ok(out)
}

/// Every linear character of the cover group, as coordinate vectors.
fn character_coordinates(cover: &CoverSpec) -> Result<Vec<Vec<u64>>, String> {
    all_coordinates(cover.group())
}

fn cover_swan(params: &CoverParams, cover: &CoverSpec) -> CheckResult {
    let f = cover.field();
    let g = cover.group();
    let sheaf = character_sheaf(cover, &params.character_coordinates())?;
    let classes = swan_class(cover, &sheaf).map_err(err)?;
    let local = local_swan_cycle(cover, &sheaf).map_err(err)?;
    let mut out = Outcome::default();
    out.both("swan_class", cycle(f, &classes.downstairs), cycle(f, &local));
    out.both("swan_degree", rational(classes.downstairs.degree()), rational(local.degree()));
    out.value("upstairs_degree", rational(classes.upstairs.degree()));

    let mut sum = ZeroCycle::new();
    let mut nonzero = 0;
    for sigma in 0..g.order() {
        let s = swan_character_class(cover, sigma).map_err(err)?;
        if !s.is_zero() {
            nonzero += 1;
        }
        sum = sum.add(&s);
    }
    out.both("character_class_sum", cycle(f, &sum), json!({}));
    out.value("nonzero_character_classes", json!(nonzero));

    // Hasse-Arf: every character gives a non-negative integral class, constant on fibres upstairs
    let mut hasse_arf = true;
    for ks in character_coordinates(cover)? {
        let sw = swan_class(cover, &character_sheaf(cover, &ks)?).map_err(err)?;
        let pulled = cover.pullback(&sw.downstairs).map_err(err)?;
        hasse_arf &= sw.downstairs.is_integral() && sw.downstairs.is_nonnegative() && sw.upstairs == pulled;
    }
    out.both("hasse_arf", json!(hasse_arf), json!(true));

    if let Some(layers) = &params.tower {
        let (h, emb) = cover.layer_subgroup(layers).map_err(err)?;
        let quotient = cover.quotient(layers).map_err(err)?;
        let lf = coefficient_field(f.p(), g.exponent())?;
        let trivial = BrauerRep::trivial(h.clone(), lf.p(), 1).map_err(err)?;
        let special = induction_check(cover, layers, &trivial).map_err(err)?;
        let d_log = quotient.pushforward(&wild_different(&quotient).map_err(err)?);
        out.both("induced_trivial", cycle(f, &special.induced), cycle(f, &d_log));
        let mut holds = true;
        for ks in character_coordinates(cover)? {
            let rep = linear_character(g, &ks, &lf, Some((&h, &emb)))?;
            let r = induction_check(cover, layers, &rep).map_err(err)?;
            holds &= r.holds && r.upstairs_holds;
        }
        out.both("induction", json!(holds), json!(true));
    }
    Ok(out)
}

fn cover_different(params: &CoverParams, cover: &CoverSpec) -> CheckResult {
    let f = cover.field();
    let d = wild_different(cover).map_err(err)?;
    // place by place from the conjugates of a uniformizer
    let mut conj = ZeroCycle::new();
    for &x in cover.boundary() {
        for pd in decompose_places(cover, x).map_err(err)? {
            if let Some(local) = &pd.local {
                let v = local.different_via_conjugates().map_err(err)? - (pd.e - 1);
                conj.add_term(pd.place, pd.f_res, Rational::from_integer(v as i64));
            }
        }
    }
    let mut out = Outcome::default();
    out.both("wild_different", cycle(f, &d), cycle(f, &conj));
    out.both("wild_different_degree", rational(d.degree()), rational(conj.degree()));
    if let Some(layers) = &params.tower {
        let r = chain_rule_check(cover, layers).map_err(err)?;
        out.both("chain_rule", json!(r.holds), json!(true));
    }
    Ok(out)
}

fn cover_gos(params: &CoverParams, cover: &CoverSpec) -> CheckResult {
    let sheaf = character_sheaf(cover, &params.character_coordinates())?;
    let r = gos_check(cover, &sheaf).map_err(err)?;
    let genus = genus_check(cover).map_err(err)?;
    let mut out = Outcome::default();
    out.both("chi_c", json!(r.predicted), json!(r.oracle));
    out.both("two_genus", json!(genus.riemann_hurwitz), json!(genus.oracle));
    Ok(out)
}

fn cover_trace(params: &CoverParams, cover: &CoverSpec) -> CheckResult {
    let sigma = element_from_coordinates(cover.group(), &params.sigma_coordinates())?;
    let r = trace_formula_check(cover, sigma).map_err(err)?;
    let mut out = Outcome::default();
    out.both("trace", json!(r.rhs), json!(r.lhs));
    out.both("lefschetz", json!(r.lefschetz), json!(r.lhs));
    Ok(out)
}

fn fibration_kato(
    cover: &CoverSpec,
    sheaf: &swancalc_core::curve_cover::SheafSpec,
    fiber: Fiber,
) -> CheckResult {
    let r = theorem_5_check(cover, sheaf, fiber).map_err(err)?;
    let kato = kato_c_class(&fibration_data(cover, sheaf, fiber).map_err(err)?).map_err(err)?;
    let mut out = Outcome::default();
    out.both("kato_degree", json!(kato.degree), json!(r.swan_degree));
    out.both("residue_form", json!(kato.residue_form), json!(r.swan_degree));
    out.both("cokernel_form", json!(kato.cokernel_form), json!(r.swan_degree));
    out.both("per_component", json!(r.kato_side), json!(r.swan_side));
    out.both("pulled_back_degree", json!(r.pulled_back_degree), json!(r.upstairs_degree));
    Ok(out)
}

fn fibration_laumon(
    cover: &CoverSpec,
    sheaf: &swancalc_core::curve_cover::SheafSpec,
    fiber: Fiber,
) -> CheckResult {
    let r = laumon_decomposition(cover, sheaf, fiber).map_err(err)?;
    let mut out = Outcome::default();
    out.both("chi_c", json!(r.chi_formula), json!(r.chi_oracle));
    out.value("swan_conductors", json!(r.swan_conductors));
    out.value("s_cycle_degree", json!(r.s_cycle.iter().map(|t| t.2).sum::<i64>()));
    Ok(out)
}

/// `P^2` with the line `t = 0`, charts `(s, t)` and the chart at `[1:0:0]`.
fn plane_line(field: &FieldDescriptor, terms: &[(i64, i64, i64)]) -> Result<RankOneData, String> {
    let x = SurfaceModel::projective_plane();
    let d = BoundaryDivisor::rational(&x, &[vec![1]]).map_err(err)?;
    let near = SurfaceParams::chart_function(field, terms)?;
    let far = near.monomial_substitution((-1, 0), (-1, 1));
    let charts = vec![
        Chart {
            label: "st".into(),
            function: near,
            x_zero: None,
            y_zero: Some(AxisBoundary { component: 0, window: AxisWindow::everywhere() }),
        },
        Chart {
            label: "zt".into(),
            function: far,
            x_zero: None,
            y_zero: Some(AxisBoundary { component: 0, window: AxisWindow::OriginOnly }),
        },
    ];
    RankOneData::new(field, x, d, charts, 1).map_err(err)
}

fn plane_line_kato(field: &str, terms: &[(i64, i64, i64)]) -> CheckResult {
    let f = parse_field(field)?;
    let data = plane_line(&f, terms)?;
    let before = kato_c_class(&data).ok();
    let cleaned = blowup_clean(&data).map_err(err)?;
    let after = kato_c_class(&cleaned).map_err(err)?;
    let mut s_clean = true;
    for (i, &m) in swan_divisor(&cleaned).iter().enumerate() {
        if m > 0 {
            s_clean &= cleanness(&cleaned, i).map_err(err)?.s_clean;
        }
    }
    let mut out = Outcome::default();
    out.value("kato_degree", json!(after.degree));
    if let Some(b) = before {
        // blowing up leaves the degree alone
        out.oracle.insert("kato_degree".into(), json!(b.degree));
    }
    out.both("residue_form", json!(after.residue_form), json!(after.degree));
    out.both("cokernel_form", json!(after.cokernel_form), json!(after.degree));
    out.both("s_clean", json!(s_clean), json!(true));
    out.value("blow_ups", json!(cleaned.transcript().len()));
    out.value("swan_divisor", json!(swan_divisor(&cleaned)));
    Ok(out)
}

fn configuration(name: &str) -> Result<(SurfaceModel, BoundaryDivisor), String> {
    catalog_configurations()
        .map_err(err)?
        .into_iter()
        .find(|(n, _, _)| n == name)
        .map(|(_, x, d)| (x, d))
        .ok_or_else(|| format!("unknown configuration '{name}'"))
}

fn chow_log(params: &ChowParams) -> CheckResult {
    let ChowParams::Configuration { name, fixed_multiplicities, .. } = params;
    let (x, d) = configuration(name)?;
    let mut out = Outcome::default();
    out.both(
        "log_c2",
        json!(log_euler_number(&x, &d).map_err(err)?),
        json!(complement_euler_characteristic(&x, &d)),
    );
    if let Some(m) = fixed_multiplicities {
        let r = log_lefschetz_divisorial(&x, &d, m).map_err(err)?;
        out.both("lefschetz_dual", json!(r.dual_form), json!(r.segre_form));
        out.both("lefschetz_direct", json!(r.direct_form), json!(r.segre_form));
    }
    Ok(out)
}

fn chow_kato(params: &ChowParams) -> CheckResult {
    let ChowParams::Configuration { name, swan_multiplicities, .. } = params;
    let (x, d) = configuration(name)?;
    let sw = swan_multiplicities.clone().unwrap_or_else(|| vec![1; d.components().len()]);
    let r = kato_class_degree(&x, &d, &sw, None).map_err(err)?;
    let mut out = Outcome::default();
    out.both("kato_degree", json!(r.first), json!(r.second));
    Ok(out)
}

/// Every permutation of `0..m`, by Heap's algorithm.
fn permutations(m: usize) -> Vec<Vec<usize>> {
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

fn log_chart(params: &LogParams) -> CheckResult {
    let mut out = Outcome::default();
    match params {
        LogParams::MuTorsor { field, max_n } => {
            let f = parse_field(field)?;
            let ns: Vec<u64> = (1..=*max_n).filter(|n| n % f.p() != 0).collect();
            let mut orders = Vec::new();
            let mut exceptional = Vec::new();
            let mut cyclic = true;
            for &n in &ns {
                let g = mu_torsor_group(&f, n).map_err(err)?;
                cyclic &= (0..g.order()).any(|x| g.element_order(x) == n);
                orders.push(g.order() as u64);
                let power = MonomialMorphism::power_map(&f, n).map_err(err)?;
                exceptional.push(exceptional_roots(&power, 0).map_err(err)?);
            }
            out.value("n", json!(ns));
            out.both("torsor_orders", json!(orders), json!(exceptional));
            out.both("cyclic_of_order_n", json!(cyclic && orders == ns), json!(true));
        }
        LogParams::Admissibility { max_m } => {
            let mut total = 0usize;
            let mut admissible = 0usize;
            for m in 1..=*max_m {
                for sigma in permutations(m) {
                    total += 1;
                    if barycentric_admissibility(m, &sigma).map_err(err)?.admissible {
                        admissible += 1;
                    }
                }
            }
            out.both("admissible", json!(admissible), json!(total));
        }
        LogParams::SelfProduct { field, variables, divisor } => {
            let f = parse_field(field)?;
            let vars: Vec<&str> = variables.iter().map(String::as_str).collect();
            let div: Vec<&str> = divisor.iter().map(String::as_str).collect();
            let chart = MonomialChart::new(&f, &vars, &div).map_err(err)?;
            let product = log_self_product(&chart).map_err(err)?;
            out.both("units", json!(product.units.len()), json!(div.len()));
            out.both("diagonal_satisfies", json!(log_diagonal(&chart).satisfies(&product)), json!(true));
        }
    }
    Ok(out)
}

fn group_identity(params: &GroupParams) -> CheckResult {
    let GroupParams::RandomCyclic { primes, max_exponent, count, seed } = params;
    if primes.is_empty() || *max_exponent == 0 {
        return Err("random_cyclic needs primes and a positive exponent bound".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
    let mut holds = 0usize;
    let mut pairs = 0usize;
    for _ in 0..*count {
        let p = primes[rng.gen_range(0..primes.len())];
        let e = rng.gen_range(1..=*max_exponent);
        let n = p.pow(e);
        let group = FiniteGroup::cyclic(n);
        let lf = coefficient_field(p, n)?;
        let summands = rng.gen_range(1..=4);
        let mut rep: Option<BrauerRep> = None;
        for _ in 0..summands {
            let k = rng.gen_range(0..n);
            let chi = linear_character(&group, &[k], &lf, None)?;
            rep = Some(match rep {
                None => chi,
                Some(r) => r.sum(&chi).map_err(err)?,
            });
        }
        let rep = rep.expect("at least one summand");
        let mut ok = true;
        for sigma in p_part(&group, p).into_iter().filter(|&s| s != group.identity()) {
            pairs += 1;
            ok &= brauer_identity_check(&rep, sigma, p).map_err(err)?;
        }
        holds += ok as usize;
    }
    let mut out = Outcome::default();
    out.both("identity_holds", json!(holds), json!(*count));
    out.value("elements_checked", json!(pairs));
    Ok(out)
}
