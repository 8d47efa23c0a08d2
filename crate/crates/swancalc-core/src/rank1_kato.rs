//! Rank-one sheaves on surfaces, given by an Artin-Schreier representative in local charts.
//!
//! A chart is an affine open with coordinates `(x, y)` in which the boundary is contained in
//! the coordinate axes. The representative is a Laurent polynomial in `x, y` with poles only
//! along boundary axes. Each axis carries a window: the closed points of that component the
//! chart is responsible for, so that every point is examined in exactly one chart.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::chow_surface::{kato_class_degree, BoundaryComponent, BoundaryDivisor, SurfaceModel};
use crate::curve_cover::{gos_check, swan_class, CoverLayer, CoverSpec, Place, SheafSpec};
use crate::error::{Error, Result};
use crate::exact_arith::{CyclotomicInt, FieldDescriptor, FieldElement, LocalFunction, Point, Poly};
use crate::Rational;

/// A Laurent polynomial `sum c_ij x^i y^j` in two chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartFunction {
    field: FieldDescriptor,
    terms: BTreeMap<(i64, i64), FieldElement>,
}

impl ChartFunction {
    /// Sums repeated exponents and drops zero coefficients.
    pub fn new(field: &FieldDescriptor, terms: &[((i64, i64), FieldElement)]) -> ChartFunction {
        let mut out = ChartFunction { field: field.clone(), terms: BTreeMap::new() };
        for &(e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// Terms `(i, j, c)` with integer coefficients.
    pub fn from_ints(field: &FieldDescriptor, terms: &[(i64, i64, i64)]) -> ChartFunction {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| ((i, j), field.from_int(c))).collect();
        ChartFunction::new(field, &t)
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), FieldElement)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: (i64, i64), c: FieldElement) {
        let f = &self.field;
        let v = f.add(self.terms.get(&e).copied().unwrap_or(FieldElement::ZERO), c);
        if v.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn add(&self, o: &ChartFunction) -> ChartFunction {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn scale(&self, k: FieldElement) -> ChartFunction {
        let t: Vec<_> = self.terms().map(|(e, c)| (e, self.field.mul(k, c))).collect();
        ChartFunction::new(&self.field, &t)
    }

    /// `g^p - g`.
    pub fn artin_schreier_coboundary(&self) -> ChartFunction {
        let f = &self.field;
        let p = f.p() as i64;
        let mut t: Vec<_> = self.terms().map(|((i, j), c)| ((p * i, p * j), f.frobenius(c))).collect();
        t.extend(self.terms().map(|(e, c)| (e, f.neg(c))));
        ChartFunction::new(f, &t)
    }

    /// Smallest exponent of `x` (axis 0) or `y` (axis 1); `None` for zero.
    pub fn min_exponent(&self, axis: usize) -> Option<i64> {
        self.terms.keys().map(|&(i, j)| if axis == 0 { i } else { j }).min()
    }

    /// Exchanges the two coordinates.
    pub fn swap(&self) -> ChartFunction {
        let t: Vec<_> = self.terms().map(|((i, j), c)| ((j, i), c)).collect();
        ChartFunction::new(&self.field, &t)
    }

    /// Substitutes `x = X^a Y^b`, `y = X^c Y^d` for `x_image = (a, b)`, `y_image = (c, d)`.
    pub fn monomial_substitution(&self, x_image: (i64, i64), y_image: (i64, i64)) -> ChartFunction {
        let t: Vec<_> = self
            .terms()
            .map(|((i, j), c)| ((x_image.0 * i + y_image.0 * j, x_image.1 * i + y_image.1 * j), c))
            .collect();
        ChartFunction::new(&self.field, &t)
    }

    /// Substitutes `x -> x + a`, `y -> y + b`; the shifted coordinate must carry no pole.
    fn translate(&self, a: FieldElement, b: FieldElement) -> Option<ChartFunction> {
        let f = &self.field;
        if (!a.is_zero() && self.min_exponent(0).is_some_and(|m| m < 0))
            || (!b.is_zero() && self.min_exponent(1).is_some_and(|m| m < 0))
        {
            return None;
        }
        let mut out = ChartFunction::new(f, &[]);
        for ((i, j), c) in self.terms() {
            let xs = shifted_powers(f, a, i);
            let ys = shifted_powers(f, b, j);
            for &(ei, ci) in &xs {
                for &(ej, cj) in &ys {
                    out.add_term((ei, ej), f.mul(c, f.mul(ci, cj)));
                }
            }
        }
        Some(out)
    }

    /// Removes polar terms `c x^(pi) y^(pj)` by subtracting `g^p - g` with `g = c^(1/p) x^i y^j`.
    fn reduce(&self) -> (ChartFunction, usize) {
        let f = &self.field;
        let p = f.p() as i64;
        let mut cur = self.clone();
        let mut steps = 0;
        loop {
            let hit = cur
                .terms()
                .find(|&((i, j), _)| (i < 0 || j < 0) && i % p == 0 && j % p == 0);
            let Some(((i, j), c)) = hit else { return (cur, steps) };
            cur.terms.remove(&(i, j));
            cur.add_term((i / p, j / p), f.pth_root(c));
            steps += 1;
        }
    }
}

/// `(x + a)^k` as a list of `(exponent, coefficient)` for `k >= 0`, or `x^k` when `a = 0`.
fn shifted_powers(f: &FieldDescriptor, a: FieldElement, k: i64) -> Vec<(i64, FieldElement)> {
    if a.is_zero() || k < 0 {
        return vec![(k, f.one())];
    }
    let lin = Poly::new(f, vec![a, f.one()]).pow(k as u32);
    lin.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, &c)| (e as i64, c)).collect()
}

/// Closed points of a boundary axis a chart is responsible for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxisWindow {
    /// Every closed point except the listed rational ones.
    Everywhere { excluded: Vec<FieldElement> },
    /// Only the origin of the axis.
    OriginOnly,
    Nowhere,
}

impl AxisWindow {
    pub fn everywhere() -> AxisWindow {
        AxisWindow::Everywhere { excluded: Vec::new() }
    }

    /// Whether the closed point cut out by a monic irreducible factor lies in the window.
    fn contains(&self, factor: &Poly) -> bool {
        let root = (factor.degree() == Some(1)).then(|| factor.field().neg(factor.coeff(0)));
        match self {
            AxisWindow::Everywhere { excluded } => root.is_none_or(|r| !excluded.contains(&r)),
            AxisWindow::OriginOnly => root == Some(FieldElement::ZERO),
            AxisWindow::Nowhere => false,
        }
    }

    fn without(&self, a: FieldElement) -> AxisWindow {
        match self {
            AxisWindow::Everywhere { excluded } => {
                let mut excluded = excluded.clone();
                excluded.push(a);
                excluded.sort();
                excluded.dedup();
                AxisWindow::Everywhere { excluded }
            }
            AxisWindow::OriginOnly if a.is_zero() => AxisWindow::Nowhere,
            w => w.clone(),
        }
    }
}

/// A boundary component lying along a coordinate axis of a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisBoundary {
    pub component: usize,
    pub window: AxisWindow,
}

/// An affine chart with coordinates `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub label: String,
    pub function: ChartFunction,
    /// The component `{x = 0}`, whose points are parametrized by `y`.
    pub x_zero: Option<AxisBoundary>,
    /// The component `{y = 0}`, whose points are parametrized by `x`.
    pub y_zero: Option<AxisBoundary>,
}

/// One blow-up performed while cleaning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowUpStep {
    pub round: usize,
    pub chart: String,
    /// The centre in the chart coordinates `(x, y)`.
    pub point: (FieldElement, FieldElement),
    /// Index of the exceptional curve among the boundary components.
    pub exceptional: usize,
    /// Swan multiplicities of all components after the blow-up.
    pub multiplicities: Vec<u64>,
}

/// A rank-one sheaf with character of order `p` times a prime-to-`p` order on `X \ D`.
#[derive(Clone, Debug)]
pub struct RankOneData {
    field: FieldDescriptor,
    surface: SurfaceModel,
    boundary: BoundaryDivisor,
    charts: Vec<Chart>,
    prime_to_p_order: u64,
    reductions: usize,
    transcript: Vec<BlowUpStep>,
}

impl RankOneData {
    /// Validates the charts and reduces every representative.
    ///
    /// Poles are allowed only along boundary axes. Every component must lie in some chart,
    /// and all charts containing a component must agree on its pole order after reduction.
    pub fn new(
        field: &FieldDescriptor,
        surface: SurfaceModel,
        boundary: BoundaryDivisor,
        charts: Vec<Chart>,
        prime_to_p_order: u64,
    ) -> Result<RankOneData> {
        if surface.dim() != 2 {
            return Err(Error::InvalidInput("rank-one data lives on a surface".into()));
        }
        if prime_to_p_order == 0 || prime_to_p_order % field.p() == 0 {
            return Err(Error::InvalidInput("prime-to-p order must be positive and prime to p".into()));
        }
        let n = boundary.components().len();
        let mut labels: Vec<&str> = charts.iter().map(|c| c.label.as_str()).collect();
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("chart labels must be distinct".into()));
        }
        let mut seen = vec![false; n];
        let mut reductions = 0;
        let mut reduced = Vec::with_capacity(charts.len());
        for mut c in charts {
            if c.function.field() != field {
                return Err(Error::FieldMismatch);
            }
            for (axis, b) in [(0, &c.x_zero), (1, &c.y_zero)] {
                match b {
                    Some(b) if b.component >= n => {
                        return Err(Error::OutOfRange(format!("component {} in chart {}", b.component, c.label)))
                    }
                    Some(b) => seen[b.component] = true,
                    None if c.function.min_exponent(axis).is_some_and(|m| m < 0) => {
                        return Err(Error::InvalidInput(format!(
                            "representative outside standard form: pole off the boundary in chart {}",
                            c.label
                        )))
                    }
                    None => {}
                }
            }
            if let (Some(a), Some(b)) = (&c.x_zero, &c.y_zero) {
                if a.component == b.component {
                    return Err(Error::InvalidInput("a component cannot meet itself in a chart".into()));
                }
            }
            let (g, k) = c.function.reduce();
            c.function = g;
            reductions += k;
            reduced.push(c);
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidInput(format!("component {i} lies in no chart")));
        }
        let data = RankOneData {
            field: field.clone(),
            surface,
            boundary,
            charts: reduced,
            prime_to_p_order,
            reductions,
            transcript: Vec::new(),
        };
        for i in 0..n {
            let orders: Vec<u64> = data.views(i).iter().map(|v| v.pole_order()).collect();
            if orders.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::InvalidInput(format!("charts disagree on the pole order along component {i}")));
            }
        }
        Ok(data)
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }
    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }
    pub fn boundary(&self) -> &BoundaryDivisor {
        &self.boundary
    }
    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }
    pub fn prime_to_p_order(&self) -> u64 {
        self.prime_to_p_order
    }
    /// Number of `g^p - g` subtractions performed when the data was built.
    pub fn reductions(&self) -> usize {
        self.reductions
    }
    /// Blow-ups performed by [`blowup_clean`], in order.
    pub fn transcript(&self) -> &[BlowUpStep] {
        &self.transcript
    }

    /// Every chart containing the component, oriented so that it is `{y = 0}`.
    fn views(&self, component: usize) -> Vec<AxisView<'_>> {
        let mut out = Vec::new();
        for (k, c) in self.charts.iter().enumerate() {
            if let Some(b) = c.y_zero.as_ref().filter(|b| b.component == component) {
                out.push(AxisView { chart: k, swapped: false, function: c.function.clone(), other: c.x_zero.is_some(), window: &b.window });
            }
            if let Some(b) = c.x_zero.as_ref().filter(|b| b.component == component) {
                out.push(AxisView { chart: k, swapped: true, function: c.function.swap(), other: c.y_zero.is_some(), window: &b.window });
            }
        }
        out
    }

    /// Blow-up of a rational boundary point `(x, y)` of the labelled chart.
    pub fn blow_up(&self, chart: &str, point: (FieldElement, FieldElement)) -> Result<RankOneData> {
        let k = self
            .charts
            .iter()
            .position(|c| c.label == chart)
            .ok_or_else(|| Error::InvalidInput(format!("no chart {chart}")))?;
        self.blow_up_at(k, point, 0)
    }

    /// Blow-up of a rational point of a chart, recomputing the representative in the two new charts.
    fn blow_up_at(&self, chart: usize, point: (FieldElement, FieldElement), round: usize) -> Result<RankOneData> {
        let f = &self.field;
        let c = &self.charts[chart];
        let moved = c.function.translate(point.0, point.1).ok_or(Error::CleaningFailed)?;
        let on_y_zero = c.y_zero.as_ref().filter(|_| point.1.is_zero()).map(|b| b.component);
        let on_x_zero = c.x_zero.as_ref().filter(|_| point.0.is_zero()).map(|b| b.component);
        if on_y_zero.is_none() && on_x_zero.is_none() {
            return Err(Error::InvalidInput("blow-up centre is not on the boundary".into()));
        }
        let surface = self.surface.blow_up_point();
        let e = self.boundary.components().len();
        let new_index = surface.rank() - 1;
        let mut comps = Vec::with_capacity(e + 1);
        for (i, comp) in self.boundary.components().iter().enumerate() {
            let mut class = surface.pullback_class(&comp.class)?;
            if Some(i) == on_y_zero || Some(i) == on_x_zero {
                class[new_index] = -1;
            }
            comps.push(BoundaryComponent { class, genus: comp.genus });
        }
        let mut ex = vec![0; surface.rank()];
        ex[new_index] = 1;
        comps.push(BoundaryComponent { class: ex, genus: 0 });
        let boundary = BoundaryDivisor::new(&surface, comps)?;

        let origin = |b: Option<usize>| b.map(|component| AxisBoundary { component, window: AxisWindow::OriginOnly });
        // x = x1, y = x1 y1: E = {x1 = 0}
        let first = Chart {
            label: format!("{}/E{}a", c.label, e),
            function: moved.monomial_substitution((1, 0), (1, 1)),
            x_zero: Some(AxisBoundary { component: e, window: AxisWindow::everywhere() }),
            y_zero: origin(on_y_zero),
        };
        // x = x2 y2, y = y2: E = {y2 = 0}, only its point x2 = 0 is new
        let second = Chart {
            label: format!("{}/E{}b", c.label, e),
            function: moved.monomial_substitution((1, 1), (0, 1)),
            x_zero: origin(on_x_zero),
            y_zero: Some(AxisBoundary { component: e, window: AxisWindow::OriginOnly }),
        };
        let mut charts = self.charts.clone();
        let old = &mut charts[chart];
        if let (Some(b), true) = (old.y_zero.as_mut(), on_y_zero.is_some()) {
            b.window = b.window.without(point.0);
        }
        if let (Some(b), true) = (old.x_zero.as_mut(), on_x_zero.is_some()) {
            b.window = b.window.without(point.1);
        }
        charts.push(first);
        charts.push(second);
        let mut out = RankOneData::new(f, surface, boundary, charts, self.prime_to_p_order)?;
        out.reductions += self.reductions;
        out.transcript = self.transcript.clone();
        out.transcript.push(BlowUpStep {
            round,
            chart: self.charts[chart].label.clone(),
            point,
            exceptional: e,
            multiplicities: swan_divisor(&out),
        });
        Ok(out)
    }
}

/// A chart seen from one of its boundary axes, turned so that the axis is `{y = 0}`.
struct AxisView<'a> {
    chart: usize,
    swapped: bool,
    function: ChartFunction,
    /// Whether `{x = 0}` is also boundary.
    other: bool,
    window: &'a AxisWindow,
}

impl AxisView<'_> {
    fn pole_order(&self) -> u64 {
        self.function.min_exponent(1).map_or(0, |m| (-m).max(0) as u64)
    }

    /// `x^a L(x)` for the leading coefficient `L` along `y = 0`, with `a` the pole order along `x = 0`.
    fn twisted_leading(&self) -> (Poly, i64) {
        let f = self.function.field();
        let b = self.pole_order() as i64;
        let a = if self.other { self.function.min_exponent(0).map_or(0, |m| (-m).max(0)) } else { 0 };
        let mut coeffs = Vec::new();
        for ((i, j), c) in self.function.terms() {
            if j == -b {
                let k = (i + a) as usize;
                if coeffs.len() <= k {
                    coeffs.resize(k + 1, FieldElement::ZERO);
                }
                coeffs[k] = c;
            }
        }
        (Poly::new(f, coeffs), a)
    }

    fn refined(&self, component: usize, label: &str) -> RefinedSwanData {
        let f = self.function.field();
        let b = self.pole_order() as i64;
        let (m, a) = self.twisted_leading();
        let residue = m.scale(f.from_int(-b));
        // on the log form dx/x at a crossing: x M' - a M, otherwise M'
        let transverse = if self.other {
            Poly::monomial(f, f.one(), 1).mul(&m.derivative()).sub(&m.scale(f.from_int(a)))
        } else {
            m.derivative()
        };
        RefinedSwanData {
            component,
            chart: label.into(),
            sw: b as u64,
            residue,
            transverse,
            logarithmic: self.other,
        }
    }

    /// Distinct closed points of the window where `poly` vanishes.
    fn zeros(&self, poly: &Poly, component: usize, label: &str) -> Vec<ClosedPoint> {
        poly.factor()
            .into_iter()
            .filter(|(g, _)| self.window.contains(g))
            .map(|(g, _)| ClosedPoint { component, chart: label.into(), minimal_polynomial: g })
            .collect()
    }
}

/// `D_chi = sum sw_i D_i`, pole orders of the reduced representative.
pub fn swan_divisor(data: &RankOneData) -> Vec<u64> {
    (0..data.boundary.components().len())
        .map(|i| data.views(i).first().map_or(0, |v| v.pole_order()))
        .collect()
}

/// The refined Swan character along one component, seen in one chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedSwanData {
    pub component: usize,
    pub chart: String,
    pub sw: u64,
    /// Coefficient of the log form of the boundary equation, as a polynomial along the component.
    pub residue: Poly,
    /// Coefficient of the form along the component.
    pub transverse: Poly,
    /// The chart coordinate along the component is itself a boundary equation, so the transverse
    /// part is the coefficient of its log form.
    pub logarithmic: bool,
}

fn positive_swan(data: &RankOneData, component: usize) -> Result<Vec<AxisView<'_>>> {
    if component >= data.boundary.components().len() {
        return Err(Error::OutOfRange(format!("component {component}")));
    }
    let views = data.views(component);
    if views.first().is_none_or(|v| v.pole_order() == 0) {
        return Err(Error::InvalidInput(format!("component {component} has Swan multiplicity zero")));
    }
    Ok(views)
}

/// The refined Swan character along `D_i`, one entry per chart containing `D_i`.
pub fn refined_swan(data: &RankOneData, component: usize) -> Result<Vec<RefinedSwanData>> {
    let views = positive_swan(data, component)?;
    Ok(views.iter().map(|v| v.refined(component, &data.charts[v.chart].label)).collect())
}

/// A closed point of a boundary component, cut out in a chart by a monic irreducible polynomial
/// in the coordinate along the component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPoint {
    pub component: usize,
    pub chart: String,
    pub minimal_polynomial: Poly,
}

impl ClosedPoint {
    pub fn degree(&self) -> usize {
        self.minimal_polynomial.degree().unwrap_or(0)
    }

    pub fn rational(&self) -> Option<FieldElement> {
        (self.degree() == 1).then(|| self.minimal_polynomial.field().neg(self.minimal_polynomial.coeff(0)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cleanness {
    pub clean: bool,
    pub s_clean: bool,
    pub non_s_clean_points: Vec<ClosedPoint>,
    pub not_clean_points: Vec<ClosedPoint>,
}

/// Clean: residue and transverse parts have no common zero. `s`-clean: the residue part is
/// nowhere zero or identically zero.
pub fn cleanness(data: &RankOneData, component: usize) -> Result<Cleanness> {
    let views = positive_swan(data, component)?;
    let mut non_s_clean_points = Vec::new();
    let mut not_clean_points = Vec::new();
    for v in &views {
        let label = &data.charts[v.chart].label;
        let r = v.refined(component, label);
        if !r.residue.is_zero() {
            non_s_clean_points.extend(v.zeros(&r.residue, component, label));
        }
        not_clean_points.extend(v.zeros(&r.residue.gcd(&r.transverse), component, label));
    }
    Ok(Cleanness {
        clean: not_clean_points.is_empty(),
        s_clean: non_s_clean_points.is_empty(),
        non_s_clean_points,
        not_clean_points,
    })
}

/// Largest number of cleaning rounds.
pub const CLEANING_ROUNDS: usize = 3;

/// Blows up the rational non-`s`-clean points, all of a round in sorted order, until the data is
/// `s`-clean. Non-rational bad points, or centres where a pole would have to be translated, fail.
pub fn blowup_clean(data: &RankOneData) -> Result<RankOneData> {
    let mut cur = data.clone();
    for round in 1..=CLEANING_ROUNDS + 1 {
        let mut centres: Vec<(usize, (FieldElement, FieldElement))> = Vec::new();
        for (i, &sw) in swan_divisor(&cur).iter().enumerate() {
            if sw == 0 {
                continue;
            }
            for v in positive_swan(&cur, i)? {
                let label = &cur.charts[v.chart].label;
                let r = v.refined(i, label);
                if r.residue.is_zero() {
                    continue;
                }
                for pt in v.zeros(&r.residue, i, label) {
                    let a = pt.rational().ok_or(Error::CleaningFailed)?;
                    let centre = if v.swapped { (FieldElement::ZERO, a) } else { (a, FieldElement::ZERO) };
                    centres.push((v.chart, centre));
                }
            }
        }
        centres.sort();
        centres.dedup();
        if centres.is_empty() {
            return Ok(cur);
        }
        if round > CLEANING_ROUNDS {
            break;
        }
        // charts keep their indices under blow-ups, so the centres stay valid through the round
        for (chart, point) in centres {
            cur = cur.blow_up_at(chart, point, round)?;
        }
    }
    Err(Error::CleaningFailed)
}

/// Degree of the Kato class `c_F` and its decomposition over the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatoClass {
    pub degree: i64,
    /// From the residue sequence on each component.
    pub residue_form: i64,
    /// From `c_1(Coker rsw_i) = c_1(Omega^1(log D)|D_i) + D_chi . D_i`.
    pub cokernel_form: i64,
    /// `-sw_i deg c_1(Coker rsw_i)`.
    pub per_component: Vec<i64>,
    pub equal: bool,
}

/// `c_F` for data clean along every component of positive Swan multiplicity.
pub fn kato_c_class(data: &RankOneData) -> Result<KatoClass> {
    let sw: Vec<i64> = swan_divisor(data).iter().map(|&m| m as i64).collect();
    for (i, &m) in sw.iter().enumerate() {
        if m > 0 && !cleanness(data, i)?.clean {
            return Err(Error::NotClean(format!("along component {i}")));
        }
    }
    let x = &data.surface;
    let d = &data.boundary;
    let all = d.combination(x, &vec![1; sw.len()])?;
    let dchi = d.combination(x, &sw)?;
    let log_canonical: Vec<i64> = x.canonical().iter().zip(&all).map(|(k, b)| k + b).collect();
    let coker: Vec<i64> = d
        .components()
        .iter()
        .map(|c| x.intersect(&log_canonical, &c.class) + x.intersect(&dchi, &c.class))
        .collect();
    let residue = kato_class_degree(x, d, &sw, None)?;
    let cokernel = kato_class_degree(x, d, &sw, Some(&coker))?;
    let per_component: Vec<i64> = sw.iter().zip(&coker).map(|(m, c)| -m * c).collect();
    let total: i64 = per_component.iter().sum();
    Ok(KatoClass {
        degree: residue.first,
        residue_form: residue.second,
        cokernel_form: cokernel.second,
        equal: residue.equal && cokernel.equal && total == residue.first,
        per_component,
    })
}

/// Fibre of the product fibration `P^1 x F -> P^1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fiber {
    ProjectiveLine,
    MultiplicativeGroup,
}

impl Fiber {
    pub fn compact_euler_characteristic(self) -> i64 {
        match self {
            Fiber::ProjectiveLine => 2,
            Fiber::MultiplicativeGroup => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberEnd {
    Zero,
    Infinity,
}

/// A boundary component of the product `P^1 x P^1 \ (S x P^1 + P^1 x {0, inf})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FibrationComponent {
    /// `{x} x P^1`.
    Vertical(Point),
    /// `P^1 x {0}` or `P^1 x {inf}`.
    Horizontal(FiberEnd),
}

/// `P^1 x P^1` with the boundary of `U x F`, vertical components first.
pub fn fibration_surface(
    cover: &CoverSpec,
    fiber: Fiber,
) -> Result<(SurfaceModel, BoundaryDivisor, Vec<FibrationComponent>)> {
    let x = SurfaceModel::quadric();
    let mut labels: Vec<FibrationComponent> = cover.boundary().iter().map(|&p| FibrationComponent::Vertical(p)).collect();
    let mut classes: Vec<Vec<i64>> = vec![vec![1, 0]; labels.len()];
    if fiber == Fiber::MultiplicativeGroup {
        labels.extend([FibrationComponent::Horizontal(FiberEnd::Zero), FibrationComponent::Horizontal(FiberEnd::Infinity)]);
        classes.extend([vec![0, 1], vec![0, 1]]);
    }
    let d = BoundaryDivisor::rational(&x, &classes)?;
    Ok((x, d, labels))
}

/// Coefficients `k_i in F_p` with `chi = psi(sum k_i g_i)` on the Artin-Schreier layers, and the
/// order of `chi` on the Kummer layers.
fn character_coordinates(cover: &CoverSpec, sheaf: &SheafSpec) -> Result<(Vec<(usize, i64)>, u64)> {
    if sheaf.rank() != 1 {
        return Err(Error::InvalidInput("the fibration catalog holds rank-one sheaves".into()));
    }
    let g = cover.group();
    let rep = sheaf.rep();
    let m = rep.modulus();
    let p = cover.field().p();
    let one = CyclotomicInt::one(m);
    let mut reference: Option<CyclotomicInt> = None;
    let mut as_coeffs = Vec::new();
    let mut tame_order = 1u64;
    for (i, layer) in cover.layers().iter().enumerate() {
        let mut c = vec![0u64; cover.layers().len()];
        c[i] = 1;
        let el = g.from_coordinates(&c).ok_or_else(|| Error::InvalidInput("layer generator".into()))?;
        let v = rep.value(el)?.clone();
        match layer {
            CoverLayer::ArtinSchreier { .. } => {
                if v == one {
                    continue;
                }
                let zeta = reference.get_or_insert_with(|| v.clone()).clone();
                let k = (1..p as i64)
                    .find(|&k| zeta.pow(k as u64) == v)
                    .ok_or_else(|| Error::InvalidInput("character values on the p-part are not p-th roots of unity".into()))?;
                as_coeffs.push((i, k));
            }
            CoverLayer::Kummer { e, .. } => {
                let order = (1..=*e).find(|&k| v.pow(k) == one).unwrap_or(*e);
                tame_order = tame_order.lcm(&order);
            }
        }
    }
    Ok((as_coeffs, tame_order))
}

/// The pullback of a rank-one curve sheaf to `P^1 x F`, with charts `(s, t)` and `(1/s, t)` along
/// each vertical component, `t` the local parameter of the base point and `s` the fibre coordinate.
pub fn fibration_data(cover: &CoverSpec, sheaf: &SheafSpec, fiber: Fiber) -> Result<RankOneData> {
    let f = cover.field();
    let (as_coeffs, tame_order) = character_coordinates(cover, sheaf)?;
    let (x, d, labels) = fibration_surface(cover, fiber)?;
    let horizontal = |end: FiberEnd| labels.iter().position(|&l| l == FibrationComponent::Horizontal(end));
    let mut charts = Vec::new();
    for (ix, &pt) in cover.boundary().iter().enumerate() {
        let mut germ = LocalFunction::laurent(f, 0, &[]);
        for &(i, k) in &as_coeffs {
            let g = match &cover.layers()[i] {
                CoverLayer::ArtinSchreier { g } => g,
                CoverLayer::Kummer { .. } => unreachable!("coefficients are read on Artin-Schreier layers"),
            };
            germ = germ.add(&g.local(pt).scale(f.from_int(k)))?;
        }
        let mut terms = Vec::new();
        if let Some(v) = germ.valuation().filter(|&v| v < 0) {
            let series = germ.expand((-v) as usize);
            for j in v..0 {
                if let Some(c) = series.coeff(j).filter(|c| !c.is_zero()) {
                    terms.push(((0, j), c));
                }
            }
        }
        let polar = ChartFunction::new(f, &terms);
        let label = format!("{pt:?}");
        for (suffix, end, window) in [
            ("s", FiberEnd::Zero, AxisWindow::everywhere()),
            ("1/s", FiberEnd::Infinity, AxisWindow::OriginOnly),
        ] {
            charts.push(Chart {
                label: format!("{label}:{suffix}"),
                function: polar.clone(),
                x_zero: horizontal(end).map(|component| AxisBoundary { component, window: AxisWindow::OriginOnly }),
                y_zero: Some(AxisBoundary { component: ix, window }),
            });
        }
    }
    RankOneData::new(f, x, d, charts, tame_order)
}

fn integral(r: Rational, what: &str) -> Result<i64> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegral(what.into()))
    }
}

/// The Swan class of the pulled-back sheaf against the Kato class, per component and in degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationComparison {
    pub components: Vec<FibrationComponent>,
    /// `chi_c(F) Sw_x` from the curve Swan class.
    pub swan_side: Vec<i64>,
    /// Per-component Kato contributions.
    pub kato_side: Vec<i64>,
    pub swan_degree: i64,
    pub kato_degree: i64,
    /// `chi_c(F)` times the degree of the Swan class upstairs.
    pub upstairs_degree: i64,
    /// `|G| deg c_F`.
    pub pulled_back_degree: i64,
    pub holds: bool,
}

/// Swan class of the pulled-back sheaf equals the pullback of `c_F`, checked on product fibrations.
pub fn theorem_5_check(cover: &CoverSpec, sheaf: &SheafSpec, fiber: Fiber) -> Result<FibrationComparison> {
    let data = fibration_data(cover, sheaf, fiber)?;
    let kato = kato_c_class(&data)?;
    let classes = swan_class(cover, sheaf)?;
    let (_, _, components) = fibration_surface(cover, fiber)?;
    let chi = fiber.compact_euler_characteristic();
    let mut swan_side = Vec::with_capacity(components.len());
    for c in &components {
        swan_side.push(match c {
            FibrationComponent::Vertical(x) => chi * integral(classes.downstairs.coeff(&Place::base(*x)), "Swan conductor")?,
            FibrationComponent::Horizontal(_) => 0,
        });
    }
    let swan_degree = swan_side.iter().sum();
    let upstairs_degree = chi * integral(classes.upstairs.degree(), "upstairs Swan degree")?;
    let pulled_back_degree = cover.group().order() as i64 * kato.degree;
    let holds = kato.equal
        && swan_side == kato.per_component
        && swan_degree == kato.degree
        && upstairs_degree == pulled_back_degree;
    Ok(FibrationComparison {
        components,
        swan_side,
        kato_side: kato.per_component,
        swan_degree,
        kato_degree: kato.degree,
        upstairs_degree,
        pulled_back_degree,
        holds,
    })
}

/// Terms of the Laumon-type Euler characteristic formula on `U x F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaumonReport {
    pub components: Vec<FibrationComponent>,
    /// Classical Swan conductor along each component.
    pub swan_conductors: Vec<i64>,
    /// `S_F` on the crossings of the boundary, as `(base point, fibre end, coefficient)`.
    pub s_cycle: Vec<(Point, FiberEnd, i64)>,
    pub chi_formula: i64,
    /// `chi_c(U_C, G) chi_c(F)` from the curve point-count oracle.
    pub chi_oracle: i64,
    pub equal: bool,
}

/// `chi_c(U, F) = rank chi_c(U) - (sum_i Sw_i chi(B_i) + deg S_F)` for `F` pulled back from a curve.
///
/// `Sw(F)` is `Sw_x` times `-c_1` of the log cotangent bundle of the fibre on each vertical
/// component, and `c_1(Omega^1)` of each closure `B_i = P^1`; both are represented by the divisor
/// of `ds/s`, so `S_F` is supported on the crossings.
pub fn laumon_decomposition(cover: &CoverSpec, sheaf: &SheafSpec, fiber: Fiber) -> Result<LaumonReport> {
    let (_, _, components) = fibration_surface(cover, fiber)?;
    let classes = swan_class(cover, sheaf)?;
    let chi_fiber = fiber.compact_euler_characteristic();
    let mut swan_conductors = Vec::with_capacity(components.len());
    let mut s_cycle = Vec::new();
    let mut correction = 0;
    for c in &components {
        let sw = match c {
            FibrationComponent::Vertical(x) => integral(classes.downstairs.coeff(&Place::base(*x)), "Swan conductor")?,
            FibrationComponent::Horizontal(_) => 0,
        };
        swan_conductors.push(sw);
        // chi(B_i) for the closure, a projective line
        correction += 2 * sw;
        if let FibrationComponent::Vertical(x) = c {
            for end in [FiberEnd::Zero, FiberEnd::Infinity] {
                // Sw(F) puts sw at each end of a proper fibre and nothing on a G_m fibre;
                // c_1(Omega^1_{B_i}) contributes -sw at each end
                let from_swan = if fiber == Fiber::ProjectiveLine { sw } else { 0 };
                let coeff = from_swan - sw;
                if coeff != 0 {
                    s_cycle.push((*x, end, coeff));
                }
            }
        }
    }
    let s_degree: i64 = s_cycle.iter().map(|t| t.2).sum();
    let chi_u = cover.base_euler_characteristic() * chi_fiber;
    let chi_formula = sheaf.rank() as i64 * chi_u - (correction + s_degree);
    let chi_oracle = gos_check(cover, sheaf)?.oracle * chi_fiber;
    Ok(LaumonReport {
        components,
        swan_conductors,
        s_cycle,
        chi_formula,
        chi_oracle,
        equal: chi_formula == chi_oracle,
    })
}
