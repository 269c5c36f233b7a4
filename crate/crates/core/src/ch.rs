//! Primary decomposable subspaces of `O(X)` and the correspondence
//! `V ↦ M_V = {D : D.O(X) ⊆ V}`, `M ↦ M.O(X)`.
//!
//! A primary component at `x` is stored as jet conditions: covectors on the
//! Taylor coefficients `a₀ … a_{N−1}` of `f` in the local parameter at `x`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::curve::{ser_mul, ser_zero, CurveModel, LocalChart, LocalParam, PointQ, Series};
use crate::dop::{dop_apply, dop_mul, format_dop, DOp, RightIdealD};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rref, Row, Span};
use crate::oideal::OIdeal;
use crate::pic::Divisor;
use crate::poly::{Mono, Poly, Q};

/// The local component `V_x = {f : C·jet(f) = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryData {
    pub point: PointQ,
    pub jet_order: usize,
    pub conditions: Vec<Row>,
}

impl PrimaryData {
    /// Normalizes the conditions to reduced echelon form and trims the jet
    /// order to the last coordinate that any condition involves.
    pub fn new(curve: &CurveModel, point: PointQ, jet_order: usize, conditions: Vec<Row>) -> Result<PrimaryData> {
        curve.check_point(&point)?;
        if conditions.iter().any(|r| r.len() != jet_order) {
            return Err(Error::Invalid(format!("condition length differs from jet order {}", jet_order)));
        }
        let mut rows = conditions;
        rref(&mut rows);
        let n = rows.iter().filter_map(|r| r.iter().rposition(|c| !c.is_zero())).max().map_or(0, |i| i + 1);
        for r in rows.iter_mut() {
            r.truncate(n);
        }
        Ok(PrimaryData { point, jet_order: n, conditions: rows })
    }

    /// The codimension `n_x`.
    pub fn rank(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.conditions.is_empty()
    }

    fn padded(&self, n: usize) -> Vec<Row> {
        self.conditions
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.resize(n, Q::zero());
                r
            })
            .collect()
    }

    pub fn accepts_jet(&self, jet: &[Q]) -> bool {
        self.conditions.iter().all(|r| r.iter().zip(jet).map(|(a, b)| a * b).sum::<Q>().is_zero())
    }
}

/// A finite intersection of primary subspaces at distinct rational points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDSubspace {
    curve: CurveModel,
    points: Vec<PrimaryData>,
}

impl PDSubspace {
    pub fn new(curve: &CurveModel, data: Vec<PrimaryData>) -> Result<PDSubspace> {
        let mut map = BTreeMap::new();
        for d in data {
            curve.check_point(&d.point)?;
            if map.contains_key(&d.point) {
                return Err(Error::Invalid(format!("two components at {}", d.point)));
            }
            if !d.is_trivial() {
                map.insert(d.point.clone(), d);
            }
        }
        Ok(PDSubspace { curve: curve.clone(), points: map.into_values().collect() })
    }

    pub fn whole(curve: &CurveModel) -> PDSubspace {
        PDSubspace { curve: curve.clone(), points: Vec::new() }
    }

    /// `m_x^n` as a subspace.
    pub fn maximal_power(curve: &CurveModel, p: &PointQ, n: usize) -> Result<PDSubspace> {
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
        PDSubspace::new(curve, vec![PrimaryData::new(curve, p.clone(), n, rows)?])
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn points(&self) -> &[PrimaryData] {
        &self.points
    }

    pub fn component(&self, p: &PointQ) -> Option<&PrimaryData> {
        self.points.iter().find(|d| &d.point == p)
    }

    pub fn codim(&self) -> usize {
        self.points.iter().map(|d| d.rank()).sum()
    }

    /// `Div(V) = −Σ n_x [x]`
    pub fn div_of(&self) -> Divisor {
        Divisor::new(self.points.iter().map(|d| (d.point.clone(), -(d.rank() as i64))).collect())
    }

    /// `∏ m_x^{n_x}`
    pub fn i_v_formula(&self) -> Result<OIdeal> {
        let mut i = OIdeal::unit(&self.curve);
        for d in &self.points {
            let m = OIdeal::maximal(&self.curve, &d.point)?.power(d.rank() as u32)?;
            i = i.product(&m)?;
        }
        Ok(i)
    }

    /// `∏ m_x^{N_x}`, an ideal contained in `V`.
    pub fn conductor(&self) -> Result<OIdeal> {
        let mut i = OIdeal::unit(&self.curve);
        for d in &self.points {
            i = i.product(&OIdeal::maximal(&self.curve, &d.point)?.power(d.jet_order as u32)?)?;
        }
        Ok(i)
    }

    pub fn contains_function(&self, f: &Poly) -> Result<bool> {
        for d in &self.points {
            let chart = LocalChart::new(&self.curve, &d.point, d.jet_order)?;
            if !d.accepts_jet(&chart.expand(f)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `self ⊆ other`.
    pub fn is_subset(&self, other: &PDSubspace) -> bool {
        other.points.iter().all(|w| {
            let Some(v) = self.component(&w.point) else {
                return false;
            };
            let n = v.jet_order.max(w.jet_order);
            let jets = nullspace(&v.padded(n), n);
            let cw = w.padded(n);
            jets.iter().all(|j| cw.iter().all(|r| r.iter().zip(j).map(|(a, b)| a * b).sum::<Q>().is_zero()))
        })
    }

    /// The subspace `fV`.
    pub fn scale(&self, f: &Poly) -> Result<PDSubspace> {
        let curve = &self.curve;
        let f = curve.reduce(f);
        if f.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let zeros = OIdeal::new(curve, vec![f.clone()])?.support()?;
        let mut pts: BTreeMap<PointQ, usize> = zeros.into_iter().collect();
        for d in &self.points {
            pts.entry(d.point.clone()).or_insert(0);
        }
        let mut out = Vec::new();
        for (p, m) in pts {
            let (n, conds) = match self.component(&p) {
                Some(d) => (d.jet_order, d.conditions.clone()),
                None => (0, Vec::new()),
            };
            let total = n + m;
            let mut rows: Vec<Row> =
                (0..m).map(|i| (0..total).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
            if n > 0 {
                let chart = LocalChart::new(curve, &p, total)?;
                let fs = chart.expand(&f);
                let w = ser_inverse(&fs[m..].to_vec(), n);
                for lam in &conds {
                    let mut row = vec![Q::zero(); total];
                    for a in 0..n {
                        let mut c = Q::zero();
                        for i in a..n {
                            c += &lam[i] * &w[i - a];
                        }
                        row[m + a] = c;
                    }
                    rows.push(row);
                }
            }
            out.push(PrimaryData::new(curve, p, total, rows)?);
        }
        PDSubspace::new(curve, out)
    }
}

impl fmt::Display for PDSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return write!(f, "O(X)");
        }
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|d| {
                let rows: Vec<String> = d
                    .conditions
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
                    .collect();
                format!("{} N={} {}", d.point, d.jet_order, rows.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn ser_inverse(s: &Series, n: usize) -> Series {
    let mut w = ser_zero(n);
    if n == 0 {
        return w;
    }
    let inv0 = s[0].recip();
    w[0] = inv0.clone();
    for k in 1..n {
        let mut acc = Q::zero();
        for i in 1..=k.min(s.len() - 1) {
            acc += &s[i] * &w[k - i];
        }
        w[k] = -acc * &inv0;
    }
    w
}

/// The global function used as local parameter at the chart's point.
fn local_parameter(chart: &LocalChart) -> Poly {
    match chart.param {
        LocalParam::X => &Poly::x() - &Poly::constant(chart.point.x.clone()),
        LocalParam::Y => Poly::y(),
    }
}

/// `M.O(X) = Σ g_i.O(X)` as a primary decomposable subspace.
pub fn ideal_to_subspace(m: &RightIdealD) -> Result<PDSubspace> {
    let curve = m.curve().clone();
    let i = m.intersect_o()?.ok_or(Error::NotFat)?;
    let mut data = Vec::new();
    for (p, n) in i.support()? {
        let chart = LocalChart::new(&curve, &p, n)?;
        let t = local_parameter(&chart);
        let mut span = Span::new();
        for g in m.generators() {
            let k = g.max_xi() as usize;
            let mut te = Poly::one();
            for _ in 0..n + k {
                span.insert(&chart.expand(&dop_apply(&curve, g, &te)));
                te = curve.reduce(&(&te * &t));
            }
        }
        let conds = nullspace(&span.basis(), n);
        data.push(PrimaryData::new(&curve, p, n, conds)?);
    }
    PDSubspace::new(&curve, data)
}

/// `M_V = {D ∈ D : D.O(X) ⊆ V}`. The generators found up to order `k` span a
/// fat ideal `M ⊆ M_V`; once `M.O(X) = V` the correspondence forces `M = M_V`.
pub fn subspace_to_ideal(v: &PDSubspace) -> Result<RightIdealD> {
    let curve = v.curve();
    if v.codim() == 0 {
        return Ok(RightIdealD::unit(curve));
    }
    let cap = 4 * (v.codim() + 1);
    let mut k = 1;
    loop {
        let m = ideal_up_to_order(v, k)?;
        if &ideal_to_subspace(&m)? == v {
            return Ok(m);
        }
        if k >= cap {
            return Err(Error::OrderBoundExceeded {
                bound: cap,
                partial: m.generators().iter().map(format_dop).collect(),
            });
        }
        k = (2 * k).min(cap);
    }
}

struct Layout {
    conductor: OIdeal,
    std: Vec<Poly>,
    kmax: usize,
}

impl Layout {
    fn dim(&self) -> usize {
        (self.kmax + 1) * self.std.len()
    }

    /// Coordinates of `D` modulo operators with coefficients in the conductor.
    fn vector(&self, d: &DOp) -> Result<Row> {
        let r = self.std.len();
        let mut v = vec![Q::zero(); self.dim()];
        let ext = self.conductor.extend();
        for j in 0..=d.max_xi() as usize {
            let c = ext.normal_form(&d.xi_coeff(j as u32))?;
            for (m, a) in c.terms() {
                let i = self
                    .std
                    .iter()
                    .position(|s| s.lm() == Some(*m))
                    .ok_or_else(|| Error::Internal("normal form outside standard monomials".into()))?;
                v[j * r + i] = a.clone();
            }
        }
        Ok(v)
    }

    fn operator(&self, v: &[Q]) -> DOp {
        let r = self.std.len();
        let mut d = Poly::zero();
        for (idx, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (j, i) = (idx / r, idx % r);
                let m = self.std[i].lm().unwrap_or(Mono::ONE).mul(&Mono::new(0, 0, j as u32));
                d.add_term(m, c.clone());
            }
        }
        d.monic()
    }
}

/// Generators of `M_V` in `∂`-order at most `kmax`, together with the
/// conductor `∏ m_x^{N_x}`.
fn ideal_up_to_order(v: &PDSubspace, kmax: usize) -> Result<RightIdealD> {
    let curve = v.curve();
    let conductor = v.conductor()?;
    let std = conductor.standard_monomials()?;
    let layout = Layout { conductor: conductor.clone(), std, kmax };
    let r = layout.std.len();
    let charts: Vec<LocalChart> =
        v.points().iter().map(|d| LocalChart::new(curve, &d.point, d.jet_order)).collect::<Result<_>>()?;
    let std_jets: Vec<Vec<Series>> = charts.iter().map(|c| layout.std.iter().map(|s| c.expand(s)).collect()).collect();

    let mut span = Span::new();
    let mut extra: Vec<DOp> = Vec::new();
    for level in 0..=kmax {
        let mut big = OIdeal::unit(curve);
        for d in v.points() {
            big = big.product(&OIdeal::maximal(curve, &d.point)?.power((d.jet_order + level) as u32)?)?;
        }
        let test_fns = big.standard_monomials()?;

        for g in &extra {
            let shift = level - g.max_xi() as usize;
            let dk = Poly::mono(Mono::new(0, 0, shift as u32));
            for f in &test_fns {
                let p = dop_mul(curve, &dop_mul(curve, g, f), &dk);
                span.insert(&layout.vector(&p)?);
            }
        }

        let ncols = (level + 1) * r;
        let mut rows: Vec<Row> = Vec::new();
        for f in &test_fns {
            let mut ders = vec![curve.reduce(f)];
            for _ in 0..level {
                let next = curve.apply_derivation(ders.last().unwrap());
                ders.push(next);
            }
            for (pi, d) in v.points().iter().enumerate() {
                let n = d.jet_order;
                let der_jets: Vec<Series> = ders.iter().map(|g| charts[pi].expand(g)).collect();
                for lam in &d.conditions {
                    let mut row = vec![Q::zero(); ncols];
                    for (j, dj) in der_jets.iter().enumerate() {
                        for i in 0..r {
                            let prod = ser_mul(&std_jets[pi][i], dj, n);
                            row[j * r + i] = lam.iter().zip(&prod).map(|(a, b)| a * b).sum();
                        }
                    }
                    rows.push(row);
                }
            }
        }
        for sol in nullspace(&rows, ncols) {
            let mut full = sol;
            full.resize(layout.dim(), Q::zero());
            if span.contains(&full) {
                continue;
            }
            let g = layout.operator(&full);
            for f in &test_fns {
                span.insert(&layout.vector(&dop_mul(curve, &g, f))?);
            }
            extra.push(g);
        }
    }
    let mut gens = conductor.basis()?;
    gens.extend(extra);
    RightIdealD::new(curve, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dop::parse_dop;
    use crate::pic::{class_of_ideal, DivisorClass};
    use crate::poly::q;

    fn row(v: &[i64]) -> Row {
        v.iter().map(|&x| q(x)).collect()
    }

    fn fprime_zero() -> PDSubspace {
        let l = CurveModel::Line;
        PDSubspace::new(&l, vec![PrimaryData::new(&l, PointQ::line(q(0)), 2, vec![row(&[0, 1])]).unwrap()]).unwrap()
    }

    #[test]
    fn normalization() {
        let l = CurveModel::Line;
        let d = PrimaryData::new(&l, PointQ::line(q(0)), 4, vec![row(&[0, 2, 0, 0]), row(&[0, 4, 0, 0])]).unwrap();
        assert_eq!(d.jet_order, 2);
        assert_eq!(d.conditions, vec![row(&[0, 1])]);
        let w = PDSubspace::new(&l, vec![PrimaryData::new(&l, PointQ::line(q(1)), 3, vec![]).unwrap()]).unwrap();
        assert_eq!(w, PDSubspace::whole(&l));
    }

    #[test]
    fn div_codim_and_formula() {
        let l = CurveModel::Line;
        assert_eq!(PDSubspace::whole(&l).codim(), 0);
        assert_eq!(PDSubspace::whole(&l).div_of().degree(), 0);
        let v = fprime_zero();
        assert_eq!(v.codim(), 1);
        assert_eq!(v.div_of(), Divisor::new(vec![(PointQ::line(q(0)), -1)]));
        assert_eq!(v.i_v_formula().unwrap(), OIdeal::new(&l, vec![Poly::x()]).unwrap());
        let v2 = PDSubspace::maximal_power(&l, &PointQ::line(q(0)), 2).unwrap();
        assert_eq!(v2.i_v_formula().unwrap(), OIdeal::new(&l, vec![Poly::x().pow(2)]).unwrap());
        let e = CurveModel::standard_elliptic();
        let p = PointQ::ints(0, 1);
        let q2 = PointQ::ints(2, 3);
        let two = PDSubspace::new(
            &e,
            vec![
                PrimaryData::new(&e, p.clone(), 1, vec![row(&[1])]).unwrap(),
                PrimaryData::new(&e, q2.clone(), 2, vec![row(&[1, 0]), row(&[2, 0]), row(&[0, 1])]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(two.codim(), 3);
        assert_eq!(two.i_v_formula().unwrap().colength().unwrap(), 3);
    }

    #[test]
    fn fprime_zero_ideal() {
        let l = CurveModel::Line;
        let v = fprime_zero();
        let m = subspace_to_ideal(&v).unwrap();
        let expect = RightIdealD::parse(&l, &["x^2", "x*d - 1"]).unwrap();
        assert!(m.equals(&expect).unwrap());
        assert_eq!(ideal_to_subspace(&expect).unwrap(), v);
        for g in m.generators() {
            for e in 0..5 {
                assert!(v.contains_function(&dop_apply(&l, g, &Poly::x().pow(e))).unwrap());
            }
        }
    }

    #[test]
    fn maximal_ideal_on_elliptic() {
        let e = CurveModel::standard_elliptic();
        let p = PointQ::ints(0, 1);
        let v = PDSubspace::maximal_power(&e, &p, 1).unwrap();
        let m = subspace_to_ideal(&v).unwrap();
        let expect = RightIdealD::parse(&e, &["x", "y - 1"]).unwrap();
        assert!(m.equals(&expect).unwrap());
        assert_eq!(ideal_to_subspace(&expect).unwrap(), v);
        assert_eq!(class_of_ideal(&v.i_v_formula().unwrap()).unwrap(), DivisorClass::Point(PointQ::ints(0, -1)));
    }

    #[test]
    fn whole_space() {
        let l = CurveModel::Line;
        assert!(subspace_to_ideal(&PDSubspace::whole(&l)).unwrap().is_unit().unwrap());
        assert_eq!(ideal_to_subspace(&RightIdealD::unit(&l)).unwrap(), PDSubspace::whole(&l));
    }

    #[test]
    fn second_order_condition() {
        let l = CurveModel::Line;
        let v = PDSubspace::new(&l, vec![PrimaryData::new(&l, PointQ::line(q(1)), 3, vec![row(&[0, 0, 1])]).unwrap()])
            .unwrap();
        let m = subspace_to_ideal(&v).unwrap();
        assert!(m.is_fat().unwrap());
        assert_eq!(ideal_to_subspace(&m).unwrap(), v);
        let op = parse_dop(&l, "(x-1)^3").unwrap();
        assert!(m.member(&op).unwrap());
    }

    #[test]
    fn scaling_and_inclusion() {
        let l = CurveModel::Line;
        let v = fprime_zero();
        let fv = v.scale(&Poly::x()).unwrap();
        assert_eq!(fv.codim(), 2);
        assert!(fv.contains_function(&Poly::x()).unwrap());
        assert!(!fv.contains_function(&Poly::x().pow(2)).unwrap());
        let m0 = PDSubspace::maximal_power(&l, &PointQ::line(q(0)), 1).unwrap();
        let m02 = PDSubspace::maximal_power(&l, &PointQ::line(q(0)), 2).unwrap();
        assert!(m02.is_subset(&v));
        assert!(m02.is_subset(&m0));
        assert!(!v.is_subset(&m0));
        assert!(v.is_subset(&PDSubspace::whole(&l)));
    }
}
