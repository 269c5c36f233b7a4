//! Ideals of the coordinate ring `O(X)`, valuations and supports.

use std::fmt;

use num_traits::Zero;

use crate::curve::{CurveModel, LocalChart, PointQ};
use crate::error::{Error, Result};
use crate::ideal::{count_standard, CIdeal};
use crate::poly::{Mono, Poly};
use crate::upoly::UPoly;

/// Jets are expanded at most this far when computing an order of vanishing.
pub const VALUATION_CUTOFF: usize = 64;

/// A nonzero ideal of `O(X)`; stored via its extension to `Ō`, which has the
/// same Gröbner basis.
#[derive(Clone, Debug)]
pub struct OIdeal {
    inner: CIdeal,
}

impl OIdeal {
    pub fn new(curve: &CurveModel, gens: Vec<Poly>) -> Result<OIdeal> {
        if gens.iter().any(|g| g.max_xi() > 0 || g.has_t() || g.max_h() > 0) {
            return Err(Error::Invalid("ideal of O(X) with a non-function generator".into()));
        }
        Ok(OIdeal { inner: CIdeal::new(curve, gens)? })
    }

    pub fn unit(curve: &CurveModel) -> OIdeal {
        OIdeal { inner: CIdeal::unit(curve) }
    }

    pub fn maximal(curve: &CurveModel, p: &PointQ) -> Result<OIdeal> {
        curve.check_point(p)?;
        let mut g = vec![&Poly::x() - &Poly::constant(p.x.clone())];
        if let Some(y) = &p.y {
            g.push(&Poly::y() - &Poly::constant(y.clone()));
        }
        OIdeal::new(curve, g)
    }

    pub fn curve(&self) -> &CurveModel {
        self.inner.curve()
    }

    pub fn generators(&self) -> &[Poly] {
        self.inner.generators()
    }

    pub fn basis(&self) -> Result<Vec<Poly>> {
        self.inner.basis()
    }

    /// `I·Ō`
    pub fn extend(&self) -> CIdeal {
        self.inner.clone()
    }

    pub fn member(&self, f: &Poly) -> Result<bool> {
        self.inner.member(f)
    }

    pub fn equals(&self, o: &OIdeal) -> Result<bool> {
        self.inner.equals(&o.inner)
    }

    pub fn contains(&self, o: &OIdeal) -> Result<bool> {
        self.inner.contains(&o.inner)
    }

    pub fn is_unit(&self) -> Result<bool> {
        self.inner.is_unit()
    }

    pub fn product(&self, o: &OIdeal) -> Result<OIdeal> {
        Ok(OIdeal { inner: self.inner.product(&o.inner)? })
    }

    pub fn power(&self, e: u32) -> Result<OIdeal> {
        let mut r = OIdeal::unit(self.curve());
        for _ in 0..e {
            r = r.product(self)?;
        }
        Ok(r)
    }

    pub fn sum(&self, o: &OIdeal) -> Result<OIdeal> {
        Ok(OIdeal { inner: self.inner.sum(&o.inner)? })
    }

    pub fn intersection(&self, o: &OIdeal) -> Result<OIdeal> {
        Ok(OIdeal { inner: self.inner.intersection(&o.inner)? })
    }

    /// `dim O(X)/I` (always finite for a nonzero ideal of a curve).
    pub fn colength(&self) -> Result<usize> {
        let lms: Vec<Mono> = self.inner.full_basis()?.iter().filter_map(|p| p.lm()).collect();
        count_standard(self.curve(), &lms, false).ok_or_else(|| Error::Internal("infinite colength in O(X)".into()))
    }

    /// The monomials `x^a y^b` outside the leading-monomial ideal; they form a
    /// basis of `O(X)/I`.
    pub fn standard_monomials(&self) -> Result<Vec<Poly>> {
        let lms: Vec<Mono> = self.inner.full_basis()?.iter().filter_map(|g| g.lm()).collect();
        let bound = |f: &dyn Fn(&Mono) -> Option<u32>| lms.iter().filter_map(f).min();
        let bx = bound(&|m: &Mono| if m.y == 0 { Some(m.x) } else { None })
            .ok_or_else(|| Error::Internal("infinite colength in O(X)".into()))?;
        let by = if self.curve().is_elliptic() { 2 } else { 1 };
        let mut out = Vec::new();
        for y in 0..by {
            for x in 0..bx {
                let m = Mono::new(x, y, 0);
                if !lms.iter().any(|l| l.divides(&m)) {
                    out.push(Poly::mono(m));
                }
            }
        }
        Ok(out)
    }

    /// Applies `x ↦ sx, y ↦ sy` to the generators.
    pub fn substitute(&self, sx: &Poly, sy: &Poly) -> Result<OIdeal> {
        OIdeal::new(self.curve(), self.generators().iter().map(|g| g.substitute(sx, sy, &Poly::xi())).collect())
    }

    pub fn valuation(&self, p: &PointQ) -> Result<usize> {
        let mut best: Option<usize> = None;
        for g in self.generators() {
            let v = order_at(self.curve(), g, p)?;
            best = Some(best.map_or(v, |b: usize| b.min(v)));
            if v == 0 {
                break;
            }
        }
        best.ok_or(Error::ZeroIdeal)
    }

    /// The points of `V(I)` with multiplicities; errors when some point of the
    /// support is not rational.
    pub fn support(&self) -> Result<Vec<(PointQ, usize)>> {
        let curve = self.curve().clone();
        let mut g = UPoly::zero();
        for p in self.basis()? {
            let n = norm_x(&curve, &p)?;
            g = if g.is_zero() { n } else { g.gcd(&n) };
            if g.is_one() {
                break;
            }
        }
        let mut out = Vec::new();
        let mut total = 0usize;
        for r in g.rational_roots() {
            for pt in curve.points_over(&r) {
                let v = self.valuation(&pt)?;
                if v > 0 {
                    total += v;
                    out.push((pt, v));
                }
            }
        }
        if total != self.colength()? {
            return Err(Error::NonRationalSupport);
        }
        Ok(out)
    }
}

impl PartialEq for OIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

impl fmt::Display for OIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.basis().unwrap_or_else(|_| self.generators().to_vec());
        let s: Vec<String> = b.iter().map(crate::parse::format_poly).collect();
        write!(f, "({})", s.join(", "))
    }
}

/// The norm `g₀² − g₁² f ∈ Q[x]` of a function `g₀ + g₁ y`.
pub fn norm_x(curve: &CurveModel, g: &Poly) -> Result<UPoly> {
    let g = curve.reduce(g);
    let n = if curve.is_elliptic() {
        let (g0, g1) = g.split_y();
        &(&g0 * &g0) - &(&(&g1 * &g1) * &curve.cubic().to_poly())
    } else {
        g
    };
    UPoly::from_poly(&n).ok_or_else(|| Error::Invalid("norm of a non-function".into()))
}

/// Order of vanishing of a nonzero function at a point.
pub fn order_at(curve: &CurveModel, f: &Poly, p: &PointQ) -> Result<usize> {
    let f = curve.reduce(f);
    if f.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let mut prec = 8;
    loop {
        let s = LocalChart::new(curve, p, prec)?.expand(&f);
        if let Some(i) = s.iter().position(|c| !c.is_zero()) {
            return Ok(i);
        }
        if prec >= VALUATION_CUTOFF {
            return Err(Error::ValuationOverflow { cutoff: VALUATION_CUTOFF });
        }
        prec = (prec * 2).min(VALUATION_CUTOFF);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn e() -> CurveModel {
        CurveModel::standard_elliptic()
    }

    #[test]
    fn maximal_ideals() {
        let m0 = OIdeal::maximal(&CurveModel::Line, &PointQ::line(q(0))).unwrap();
        assert_eq!(m0.basis().unwrap(), vec![Poly::x()]);
        let mp = OIdeal::maximal(&e(), &PointQ::ints(0, 1)).unwrap();
        assert_eq!(mp.basis().unwrap(), vec![Poly::x(), &Poly::y() - &Poly::one()]);
        let ram = PointQ::ints(-1, 0);
        assert_eq!(order_at(&e(), &(&Poly::x() + &Poly::one()), &ram).unwrap(), 2);
        assert!(OIdeal::maximal(&e(), &PointQ::ints(1, 1)).is_err());
    }

    #[test]
    fn valuation_examples() {
        let c = e();
        assert_eq!(OIdeal::new(&c, vec![Poly::x()]).unwrap().valuation(&PointQ::ints(0, 1)).unwrap(), 1);
        let l = OIdeal::new(&CurveModel::Line, vec![Poly::x().pow(2)]).unwrap();
        assert_eq!(l.valuation(&PointQ::line(q(0))).unwrap(), 2);
        let r = OIdeal::new(&c, vec![&Poly::x() + &Poly::one()]).unwrap();
        assert_eq!(r.valuation(&PointQ::ints(-1, 0)).unwrap(), 2);
        // y² − x³ − 1 vanishes identically, so it is the zero function
        assert_eq!(order_at(&c, &c.relation().unwrap(), &PointQ::ints(0, 1)).unwrap_err(), Error::ZeroIdeal);
    }

    #[test]
    fn support_and_colength() {
        let c = e();
        let i = OIdeal::new(&c, vec![Poly::x()]).unwrap();
        assert_eq!(i.colength().unwrap(), 2);
        assert_eq!(i.support().unwrap(), vec![(PointQ::ints(0, -1), 1), (PointQ::ints(0, 1), 1)]);
        let mp = OIdeal::maximal(&c, &PointQ::ints(0, 1)).unwrap();
        assert_eq!(mp.power(2).unwrap().colength().unwrap(), 2);
        // x − 1: f(1) = 2 is not a square
        let bad = OIdeal::new(&c, vec![&Poly::x() - &Poly::one()]).unwrap();
        assert_eq!(bad.support().unwrap_err(), Error::NonRationalSupport);
        let bad_line = OIdeal::new(&CurveModel::Line, vec![&Poly::x().pow(2) + &Poly::one()]).unwrap();
        assert_eq!(bad_line.support().unwrap_err(), Error::NonRationalSupport);
    }
}
