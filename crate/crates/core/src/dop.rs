//! Differential operators `D = O(X)[∂; δ]` and their right ideals.
//!
//! Operators are `Poly` values in PBW form: the `xi` slot holds the exponent
//! of `∂` and every function stands to the left. Gröbner computations run in
//! the free cover `Q[x, y]⟨∂⟩` (just `Q[x]⟨∂⟩` on the line) with the central
//! element `y² − f(x)` adjoined. With `homogenized` set, each commutator picks
//! up a factor `h`, giving the Rees algebra of the order filtration.

use std::fmt;
use std::sync::OnceLock;

use num_traits::One;

use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::field::{KElem, KField, KSkewPoly};
use crate::groebner::{groebner, normal_form, Algebra, GbOptions};
use crate::ideal::CIdeal;
use crate::oideal::OIdeal;
use crate::parse::{format_with, parse_expr, Expr, Var};
use crate::poly::{Mono, Poly, Q};
use crate::upoly::UPoly;

pub type DOp = Poly;

#[derive(Clone, Debug)]
pub struct OreAlg {
    pub curve: CurveModel,
    pub homogenized: bool,
}

fn binom(n: u32, k: u32) -> Q {
    let mut r = Q::one();
    for i in 0..k {
        r = r * Q::from_integer((n - i).into()) / Q::from_integer((i + 1).into());
    }
    r
}

impl OreAlg {
    pub fn new(curve: &CurveModel) -> OreAlg {
        OreAlg { curve: curve.clone(), homogenized: false }
    }

    pub fn homogenized(curve: &CurveModel) -> OreAlg {
        OreAlg { curve: curve.clone(), homogenized: true }
    }

    /// `∂^l · g` for a function monomial `g`, as `Σ_r C(l,r) δ^r(g) ∂^{l−r}`.
    fn d_pow_times(&self, l: u32, g: &Poly) -> Poly {
        let mut out = Poly::zero();
        let mut der = g.clone();
        for r in 0..=l {
            if der.is_zero() {
                break;
            }
            let shift = Mono { xi: l - r, h: if self.homogenized { r } else { 0 }, ..Mono::ONE };
            out.add_scaled_mono(&binom(l, r), &shift, &der);
            der = self.curve.delta_raw(&der);
        }
        out
    }

    /// Product in the cover.
    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in b.terms() {
            let p = self.mul_mono_right(a, m);
            out.add_scaled_mono(c, &Mono::ONE, &p);
        }
        out
    }
}

impl Algebra for OreAlg {
    fn mul_mono_right(&self, p: &Poly, m: &Mono) -> Poly {
        let g = Poly::mono(Mono { x: m.x, y: m.y, ..Mono::ONE });
        let tail = Mono { xi: m.xi, h: m.h, t: m.t, ..Mono::ONE };
        let mut cache: Vec<Option<Poly>> = Vec::new();
        let mut out = Poly::zero();
        for (pm, c) in p.terms() {
            let l = pm.xi as usize;
            if cache.len() <= l {
                cache.resize(l + 1, None);
            }
            if cache[l].is_none() {
                cache[l] = Some(self.d_pow_times(pm.xi, &g).mul_mono(&tail));
            }
            let head = Mono { xi: 0, ..*pm };
            out.add_scaled_mono(c, &head, cache[l].as_ref().unwrap());
        }
        out
    }

    fn is_commutative(&self) -> bool {
        false
    }
}

/// PBW normal form of `AB`, with the curve relation applied.
pub fn dop_mul(curve: &CurveModel, a: &DOp, b: &DOp) -> DOp {
    curve.reduce(&OreAlg::new(curve).mul(a, b))
}

/// `Σ_j c_j δ^j(f)`
pub fn dop_apply(curve: &CurveModel, d: &DOp, f: &Poly) -> Poly {
    let mut out = Poly::zero();
    let mut der = curve.reduce(f);
    for j in 0..=d.max_xi() {
        let c = d.xi_coeff(j);
        if !c.is_zero() {
            out = &out + &(&c * &der);
        }
        der = curve.apply_derivation(&der);
    }
    curve.reduce(&out)
}

pub fn order(d: &DOp) -> Option<u32> {
    if d.is_zero() {
        None
    } else {
        Some(d.max_xi())
    }
}

/// Principal symbol: the top-order part, read as an element of `Ō`.
pub fn symbol(curve: &CurveModel, d: &DOp) -> Poly {
    curve.reduce(&d.top_xi_part())
}

pub fn parse_dop(curve: &CurveModel, s: &str) -> Result<DOp> {
    let e = parse_expr(s)?;
    if e.uses(Var::Xi) {
        return Err(Error::Parse("use 'd' for the derivation in an operator".into()));
    }
    if !curve.is_elliptic() && e.uses(Var::Y) {
        return Err(Error::Parse("'y' is not a coordinate on the line".into()));
    }
    let leaf = |e: &Expr| -> Result<Poly> {
        Ok(match e {
            Expr::Num(c) => Poly::constant(c.clone()),
            Expr::Var(Var::X) => Poly::x(),
            Expr::Var(Var::Y) => Poly::y(),
            Expr::Var(Var::D) => Poly::xi(),
            _ => unreachable!(),
        })
    };
    let alg = OreAlg::new(curve);
    let p = e.eval(&leaf, &|a: &Poly, b: &Poly| a + b, &|a: &Poly, b: &Poly| alg.mul(a, b))?;
    Ok(curve.reduce(&p))
}

pub fn format_dop(d: &DOp) -> String {
    format_with(d, "d")
}

/// A finitely generated right ideal of `D`.
pub struct RightIdealD {
    curve: CurveModel,
    gens: Vec<DOp>,
    gb: OnceLock<Vec<Poly>>,
}

impl Clone for RightIdealD {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        RightIdealD { curve: self.curve.clone(), gens: self.gens.clone(), gb }
    }
}

impl fmt::Debug for RightIdealD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(format_dop).collect();
        f.debug_struct("RightIdealD").field("curve", &self.curve).field("gens", &g).finish()
    }
}

impl RightIdealD {
    pub fn new(curve: &CurveModel, gens: Vec<DOp>) -> Result<RightIdealD> {
        let gens: Vec<DOp> = gens.iter().map(|g| curve.reduce(g)).filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        if gens.iter().any(|g| g.has_t() || g.max_h() > 0) {
            return Err(Error::Invalid("operator with auxiliary variables".into()));
        }
        Ok(RightIdealD { curve: curve.clone(), gens, gb: OnceLock::new() })
    }

    pub fn unit(curve: &CurveModel) -> RightIdealD {
        RightIdealD::new(curve, vec![Poly::one()]).unwrap()
    }

    /// `I·D` for an ideal of functions.
    pub fn extended(i: &OIdeal) -> RightIdealD {
        RightIdealD::new(i.curve(), i.generators().to_vec()).unwrap()
    }

    pub fn parse(curve: &CurveModel, gens: &[&str]) -> Result<RightIdealD> {
        let g = gens.iter().map(|s| parse_dop(curve, s)).collect::<Result<Vec<_>>>()?;
        RightIdealD::new(curve, g)
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn generators(&self) -> &[DOp] {
        &self.gens
    }

    pub fn full_basis(&self) -> Result<&[Poly]> {
        self.full_basis_with(&GbOptions::default())
    }

    pub fn full_basis_with(&self, opts: &GbOptions) -> Result<&[Poly]> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let mut all = self.gens.clone();
        if let Some(r) = self.curve.relation() {
            all.push(r);
        }
        let g = groebner(&OreAlg::new(&self.curve), &all, opts)?;
        let _ = self.gb.set(g);
        Ok(self.gb.get().unwrap())
    }

    /// Reduced right Gröbner basis without the curve relation.
    pub fn right_groebner(&self) -> Result<Vec<DOp>> {
        let fb = self.full_basis()?;
        Ok(fb.iter().filter(|g| g.lm() != Some(Mono::new(0, 2, 0))).cloned().collect())
    }

    pub fn normal_form(&self, d: &DOp) -> Result<DOp> {
        let nf = normal_form(&OreAlg::new(&self.curve), d, self.full_basis()?);
        Ok(self.curve.reduce(&nf))
    }

    pub fn member(&self, d: &DOp) -> Result<bool> {
        Ok(self.normal_form(d)?.is_zero())
    }

    pub fn contains(&self, o: &RightIdealD) -> Result<bool> {
        for g in &o.gens {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, o: &RightIdealD) -> Result<bool> {
        Ok(self.full_basis()? == o.full_basis()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        self.member(&Poly::one())
    }

    /// `gr M`, generated by the symbols of the Gröbner basis.
    pub fn gr_ideal(&self) -> Result<CIdeal> {
        let syms: Vec<Poly> = self.full_basis()?.iter().map(|g| g.top_xi_part()).collect();
        CIdeal::new(&self.curve, syms)
    }

    /// `M ∩ O(X)`, or `None` when `M` is not fat.
    pub fn intersect_o(&self) -> Result<Option<OIdeal>> {
        let v: Vec<Poly> = self.right_groebner()?.into_iter().filter(|g| g.max_xi() == 0).collect();
        if v.is_empty() {
            Ok(None)
        } else {
            Ok(Some(OIdeal::new(&self.curve, v)?))
        }
    }

    pub fn is_fat(&self) -> Result<bool> {
        Ok(self.intersect_o()?.is_some())
    }

    /// The right ideal generated by `f·g` for `f ∈ I`, `g` a generator.
    pub fn left_multiply(&self, i: &OIdeal) -> Result<RightIdealD> {
        let mut g = Vec::new();
        for f in i.generators() {
            for m in &self.gens {
                g.push(dop_mul(&self.curve, f, m));
            }
        }
        RightIdealD::new(&self.curve, g)
    }

    /// Right ideal generated by the products of generators.
    pub fn product(&self, o: &RightIdealD) -> Result<RightIdealD> {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &o.gens {
                g.push(dop_mul(&self.curve, a, b));
            }
        }
        RightIdealD::new(&self.curve, g)
    }

    pub fn sum(&self, o: &RightIdealD) -> Result<RightIdealD> {
        let mut g = self.gens.clone();
        g.extend(o.gens.iter().cloned());
        RightIdealD::new(&self.curve, g)
    }

    /// Replaces `M` by an isomorphic fat ideal: with `a` the monic generator of
    /// `M·K[∂]`, returns `d·a⁻¹M` for a common denominator `d`, with any
    /// common factor in `Q[x]` of the coefficients removed.
    pub fn fat_normalize(&self) -> Result<RightIdealD> {
        if self.is_fat()? {
            return Ok(self.clone());
        }
        let gens = self.right_groebner()?;
        let parts: Vec<Poly> = normalize_over_k(&KField::new(&self.curve), &gens)?;
        let out = RightIdealD::new(&self.curve, parts)?;
        if !out.is_fat()? {
            return Err(Error::Internal("normalization did not produce a fat ideal".into()));
        }
        Ok(out)
    }
}

impl PartialEq for RightIdealD {
    fn eq(&self, other: &Self) -> bool {
        self.curve == other.curve && self.equals(other).unwrap_or(false)
    }
}

/// Shared by the operator and the commutative cases: divides the generators
/// on the left by their gcd in `K[∂]` and clears denominators.
pub fn normalize_over_k(k: &KField, gens: &[Poly]) -> Result<Vec<Poly>> {
    let ks: Vec<KSkewPoly> = gens.iter().map(KSkewPoly::from_dop).collect();
    let mut a = KSkewPoly::zero();
    for g in &ks {
        a = if a.is_zero() { k.make_monic(g) } else { k.right_ideal_gcd(&a, g) };
    }
    let mut qs = Vec::with_capacity(ks.len());
    for g in &ks {
        let (q, r) = k.skew_left_divide(g, &a);
        if !r.is_zero() {
            return Err(Error::Internal("generator not divisible by the gcd".into()));
        }
        qs.push(q);
    }
    let mut den = UPoly::one();
    for q in &qs {
        let d = q.denominator();
        let g = den.gcd(&d);
        den = den.mul(&d.div_rem(&g).0);
    }
    let dk = KElem::from_poly(den.to_poly());
    let mut out: Vec<Poly> = Vec::new();
    for q in &qs {
        let p = k.skew_lmul(&dk, q).to_dop().ok_or_else(|| Error::Internal("denominator not cleared".into()))?;
        out.push(k.curve.reduce(&p));
    }
    // common content in Q[x]
    let mut content = UPoly::zero();
    for p in &out {
        for j in 0..=p.max_xi() {
            let (c0, c1) = p.xi_coeff(j).split_y();
            for c in [c0, c1] {
                if let Some(u) = UPoly::from_poly(&c) {
                    if !u.is_zero() {
                        content = if content.is_zero() { u.monic() } else { content.gcd(&u) };
                    }
                }
            }
        }
    }
    if !content.is_zero() && !content.is_one() {
        let cp = content.to_poly();
        out = out
            .into_iter()
            .map(|p| {
                let mut r = Poly::zero();
                for j in 0..=p.max_xi() {
                    let (c0, c1) = p.xi_coeff(j).split_y();
                    let c = &c0.exact_div(&cp).unwrap() + &(&c1.exact_div(&cp).unwrap() * &Poly::y());
                    r.add_scaled_mono(&Q::one(), &Mono::new(0, 0, j), &c);
                }
                r
            })
            .collect();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn line() -> CurveModel {
        CurveModel::Line
    }
    fn e() -> CurveModel {
        CurveModel::standard_elliptic()
    }
    fn p(c: &CurveModel, s: &str) -> DOp {
        parse_dop(c, s).unwrap()
    }

    #[test]
    fn mul_examples() {
        assert_eq!(format_dop(&p(&line(), "d*x")), "x*d + 1");
        assert_eq!(format_dop(&p(&e(), "d*y")), "y*d + 3*x^2");
        assert_eq!(format_dop(&p(&line(), "(x*d)*(x*d)")), "x^2*d^2 + x*d");
        assert_eq!(format_dop(&p(&e(), "d*x")), "x*d + 2*y");
    }

    #[test]
    fn apply_examples() {
        let l = line();
        assert_eq!(dop_apply(&l, &p(&l, "x*d - 1"), &Poly::x().pow(2)), Poly::x().pow(2));
        assert!(dop_apply(&l, &p(&l, "d"), &Poly::one()).is_zero());
        let f = &Poly::x() + &Poly::int(3);
        assert_eq!(dop_apply(&l, &p(&l, "x^2"), &f), &Poly::x().pow(2) * &f);
        let c = e();
        assert_eq!(dop_apply(&c, &p(&c, "d"), &Poly::y()), Poly::x().pow(2).scale(&q(3)));
    }

    #[test]
    fn right_groebner_examples() {
        let l = line();
        let m1 = RightIdealD::parse(&l, &["x^2", "x*d - 1"]).unwrap();
        assert_eq!(m1.right_groebner().unwrap(), vec![p(&l, "x^2"), p(&l, "x*d - 1")]);
        let dd = RightIdealD::parse(&l, &["d"]).unwrap();
        assert_eq!(dd.right_groebner().unwrap(), vec![p(&l, "d")]);
        let c = e();
        let mp = RightIdealD::parse(&c, &["x", "y - 1"]).unwrap();
        assert_eq!(mp.right_groebner().unwrap(), vec![p(&c, "x"), p(&c, "y - 1")]);
    }

    #[test]
    fn gr_examples() {
        let l = line();
        let m1 = RightIdealD::parse(&l, &["x^2", "x*d - 1"]).unwrap();
        let f = CIdeal::new(&l, vec![Poly::x().pow(2), &Poly::x() * &Poly::xi()]).unwrap();
        assert_eq!(m1.gr_ideal().unwrap(), f);
        assert_eq!(RightIdealD::unit(&l).gr_ideal().unwrap(), CIdeal::unit(&l));
        let c = e();
        let mp = RightIdealD::parse(&c, &["x", "y - 1"]).unwrap();
        assert_eq!(mp.gr_ideal().unwrap(), CIdeal::new(&c, vec![Poly::x(), &Poly::y() - &Poly::one()]).unwrap());
    }

    #[test]
    fn intersect_o_examples() {
        let l = line();
        let m1 = RightIdealD::parse(&l, &["x^2", "x*d - 1"]).unwrap();
        assert_eq!(m1.intersect_o().unwrap().unwrap().basis().unwrap(), vec![Poly::x().pow(2)]);
        assert!(RightIdealD::unit(&l).intersect_o().unwrap().unwrap().is_unit().unwrap());
        assert!(RightIdealD::parse(&l, &["d"]).unwrap().intersect_o().unwrap().is_none());
    }

    #[test]
    fn fat_normalize_examples() {
        let l = line();
        let unit = RightIdealD::unit(&l);
        assert_eq!(RightIdealD::parse(&l, &["d"]).unwrap().fat_normalize().unwrap(), unit);
        assert_eq!(RightIdealD::parse(&l, &["x*d"]).unwrap().fat_normalize().unwrap(), unit);
        let m1 = RightIdealD::parse(&l, &["x^2", "x*d - 1"]).unwrap();
        assert_eq!(m1.fat_normalize().unwrap(), m1);
        let c = e();
        let m = RightIdealD::parse(&c, &["y*d^2 + x", "d^2"]).unwrap();
        assert!(m.fat_normalize().unwrap().is_fat().unwrap());
    }

    #[test]
    fn relation_is_central() {
        let c = e();
        let alg = OreAlg::new(&c);
        let r = c.relation().unwrap();
        let d = Poly::xi();
        assert_eq!(alg.mul(&d, &r), alg.mul(&r, &d));
    }
}
