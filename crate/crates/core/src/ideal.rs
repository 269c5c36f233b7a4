//! Ideals of the cotangent ring `Ō = O(X)[ξ]`.
//!
//! Every Gröbner computation adjoins the curve relation, so normal forms are
//! canonical functions with `y`-exponent at most one.

use std::fmt;
use std::sync::OnceLock;

use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::groebner::{groebner, normal_form, Commutative, GbOptions};
use crate::poly::{Mono, Poly};

pub struct CIdeal {
    curve: CurveModel,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Clone for CIdeal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        CIdeal { curve: self.curve.clone(), gens: self.gens.clone(), gb }
    }
}

impl fmt::Debug for CIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CIdeal").field("curve", &self.curve).field("gens", &self.gens).finish()
    }
}

/// Gröbner basis of `gens` together with the curve relation.
pub fn curve_groebner(curve: &CurveModel, gens: &[Poly], opts: &GbOptions) -> Result<Vec<Poly>> {
    let mut all: Vec<Poly> = gens.iter().map(|g| curve.reduce(g)).filter(|g| !g.is_zero()).collect();
    if let Some(r) = curve.relation() {
        all.push(r);
    }
    groebner(&Commutative, &all, opts)
}

fn is_relation_lm(m: &Mono) -> bool {
    *m == Mono::new(0, 2, 0)
}

/// Counts the monomials outside the ideal generated by `lms`, in `x, y` and,
/// when `with_xi`, also `ξ`. `None` when the count is infinite.
pub fn count_standard(curve: &CurveModel, lms: &[Mono], with_xi: bool) -> Option<usize> {
    let pure = |f: &dyn Fn(&Mono) -> Option<u32>| lms.iter().filter_map(f).min();
    let bx = pure(&|m: &Mono| if m.y == 0 && m.xi == 0 && m.t == 0 && m.h == 0 { Some(m.x) } else { None })?;
    let by = if curve.is_elliptic() {
        pure(&|m: &Mono| if m.x == 0 && m.xi == 0 && m.t == 0 && m.h == 0 { Some(m.y) } else { None })?
    } else {
        1
    };
    let bxi = if with_xi {
        pure(&|m: &Mono| if m.x == 0 && m.y == 0 && m.t == 0 && m.h == 0 { Some(m.xi) } else { None })?
    } else {
        1
    };
    let mut n = 0;
    for xi in 0..bxi {
        for y in 0..by {
            for x in 0..bx {
                let m = Mono::new(x, y, xi);
                if !lms.iter().any(|l| l.divides(&m)) {
                    n += 1;
                }
            }
        }
    }
    Some(n)
}

/// Exact quotient `p / g` in `O(X)[ξ]`, or `None` when `g` does not divide `p`.
pub fn divide_exact(curve: &CurveModel, p: &Poly, g: &Poly) -> Option<Poly> {
    let p = curve.reduce(p);
    let g = curve.reduce(g);
    if g.is_zero() {
        return None;
    }
    if !curve.is_elliptic() || !g.has_y() {
        if !p.has_y() {
            return p.exact_div(&g);
        }
        let (p0, p1) = p.split_y();
        let h0 = p0.exact_div(&g)?;
        let h1 = p1.exact_div(&g)?;
        return Some(&h0 + &(&h1 * &Poly::y()));
    }
    // multiply by the conjugate and divide by the norm
    let (g0, g1) = g.split_y();
    let f = curve.cubic().to_poly();
    let norm = &(&g0 * &g0) - &(&(&g1 * &g1) * &f);
    let conj = &g0 - &(&g1 * &Poly::y());
    let num = curve.reduce(&(&p * &conj));
    let (a0, a1) = num.split_y();
    let h0 = a0.exact_div(&norm)?;
    let h1 = a1.exact_div(&norm)?;
    let h = &h0 + &(&h1 * &Poly::y());
    if curve.reduce(&(&h * &g)) == p {
        Some(h)
    } else {
        None
    }
}

impl CIdeal {
    pub fn new(curve: &CurveModel, gens: Vec<Poly>) -> Result<CIdeal> {
        let gens: Vec<Poly> = gens.iter().map(|g| curve.reduce(g)).filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        Ok(CIdeal { curve: curve.clone(), gens, gb: OnceLock::new() })
    }

    pub fn unit(curve: &CurveModel) -> CIdeal {
        CIdeal::new(curve, vec![Poly::one()]).unwrap()
    }

    pub fn principal(curve: &CurveModel, g: Poly) -> Result<CIdeal> {
        CIdeal::new(curve, vec![g])
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced Gröbner basis including the curve relation (when it survives).
    pub fn full_basis(&self) -> Result<&[Poly]> {
        self.full_basis_with(&GbOptions::default())
    }

    pub fn full_basis_with(&self, opts: &GbOptions) -> Result<&[Poly]> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = curve_groebner(&self.curve, &self.gens, opts)?;
        let _ = self.gb.set(g);
        Ok(self.gb.get().unwrap())
    }

    /// The reduced basis as shown to users: the curve relation is dropped.
    pub fn basis(&self) -> Result<Vec<Poly>> {
        let fb = self.full_basis()?;
        if !self.curve.is_elliptic() {
            return Ok(fb.to_vec());
        }
        Ok(fb.iter().filter(|g| !g.lm().is_some_and(|m| is_relation_lm(&m))).cloned().collect())
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        Ok(normal_form(&Commutative, &self.curve.reduce(f), self.full_basis()?))
    }

    pub fn member(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        self.member(&Poly::one())
    }

    /// `other ⊆ self`
    pub fn contains(&self, other: &CIdeal) -> Result<bool> {
        for g in &other.gens {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &CIdeal) -> Result<bool> {
        Ok(self.full_basis()? == other.full_basis()?)
    }

    pub fn product(&self, other: &CIdeal) -> Result<CIdeal> {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        CIdeal::new(&self.curve, g)
    }

    pub fn sum(&self, other: &CIdeal) -> Result<CIdeal> {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        CIdeal::new(&self.curve, g)
    }

    pub fn scale(&self, f: &Poly) -> Result<CIdeal> {
        CIdeal::new(&self.curve, self.gens.iter().map(|g| g * f).collect())
    }

    /// `I ∩ J` by eliminating `t` from `tI + (1 − t)J`.
    pub fn intersection(&self, other: &CIdeal) -> Result<CIdeal> {
        let t = Poly::t();
        let one_t = &Poly::one() - &t;
        let mut g: Vec<Poly> = self.gens.iter().map(|a| a * &t).collect();
        g.extend(other.gens.iter().map(|b| b * &one_t));
        let gb = curve_groebner(&self.curve, &g, &GbOptions::default())?;
        let kept: Vec<Poly> = gb.into_iter().filter(|p| !p.has_t()).collect();
        CIdeal::new(&self.curve, kept)
    }

    /// `(I : g) = g⁻¹ (I ∩ (g))`.
    pub fn colon_elem(&self, g: &Poly) -> Result<CIdeal> {
        let g = self.curve.reduce(g);
        if g.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let inter = self.intersection(&CIdeal::principal(&self.curve, g.clone())?)?;
        let mut out = Vec::new();
        for p in inter.basis()? {
            match divide_exact(&self.curve, &p, &g) {
                Some(h) => out.push(h),
                None => return Err(Error::Internal("colon: element of I ∩ (g) not divisible by g".into())),
            }
        }
        CIdeal::new(&self.curve, out)
    }

    /// `(I : J) = ⋂ (I : g_j)`.
    pub fn colon(&self, j: &CIdeal) -> Result<CIdeal> {
        let mut acc: Option<CIdeal> = None;
        for g in j.basis()? {
            let c = self.colon_elem(&g)?;
            acc = Some(match acc {
                None => c,
                Some(a) => {
                    if a.contains(&c)? {
                        c
                    } else if c.contains(&a)? {
                        a
                    } else {
                        a.intersection(&c)?
                    }
                }
            });
        }
        acc.ok_or(Error::ZeroIdeal)
    }

    /// `dim Ō/I`, or `None` when infinite.
    pub fn colength(&self) -> Result<Option<usize>> {
        let lms: Vec<Mono> = self.full_basis()?.iter().filter_map(|p| p.lm()).collect();
        Ok(count_standard(&self.curve, &lms, true))
    }

    /// A nonzero element of small leading monomial, preferring functions.
    pub fn small_element(&self) -> Result<Poly> {
        let b = self.basis()?;
        b.into_iter().next().ok_or_else(|| Error::Internal("empty basis".into()))
    }

    /// `F** = (u) : ((u) : F)` for a nonzero `u ∈ F`.
    pub fn divisorial_hull(&self) -> Result<CIdeal> {
        let u = self.small_element()?;
        self.hull_with(&u)
    }

    pub fn hull_with(&self, u: &Poly) -> Result<CIdeal> {
        let pu = CIdeal::principal(&self.curve, u.clone())?;
        let inner = pu.colon(self)?;
        pu.colon(&inner)
    }

    /// Generators of `F ∩ O(X)` (the `ξ`-free part of the basis); `None` when
    /// the intersection is zero.
    pub fn intersect_ring(&self) -> Result<Option<Vec<Poly>>> {
        let v: Vec<Poly> = self.basis()?.into_iter().filter(|p| p.max_xi() == 0).collect();
        Ok(if v.is_empty() { None } else { Some(v) })
    }

    /// Top-`ξ` homogeneity: every basis element is homogeneous in `ξ`.
    pub fn is_xi_homogeneous(&self) -> Result<bool> {
        Ok(self.basis()?.iter().all(|p| p.terms().all(|(m, _)| m.xi == p.max_xi())))
    }

    /// Applies a substitution of `x, y, ξ` to every generator.
    pub fn substitute(&self, sx: &Poly, sy: &Poly, sxi: &Poly) -> Result<CIdeal> {
        CIdeal::new(&self.curve, self.gens.iter().map(|g| g.substitute(sx, sy, sxi)).collect())
    }
}

impl PartialEq for CIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.curve == other.curve && self.equals(other).unwrap_or(false)
    }
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
    fn x() -> Poly {
        Poly::x()
    }
    fn y() -> Poly {
        Poly::y()
    }
    fn xi() -> Poly {
        Poly::xi()
    }
    fn one() -> Poly {
        Poly::one()
    }
    fn ci(c: &CurveModel, g: Vec<Poly>) -> CIdeal {
        CIdeal::new(c, g).unwrap()
    }

    #[test]
    fn groebner_examples() {
        let i = ci(&line(), vec![&x() * &x(), &x() * &xi()]);
        assert_eq!(i.basis().unwrap(), vec![&x() * &x(), &x() * &xi()]);
        let m = ci(&e(), vec![x(), &y() - &one()]);
        assert_eq!(m.basis().unwrap(), vec![x(), &y() - &one()]);
        assert_eq!(CIdeal::new(&line(), vec![]).unwrap_err(), Error::ZeroIdeal);
        assert_eq!(CIdeal::new(&line(), vec![Poly::zero()]).unwrap_err(), Error::ZeroIdeal);
    }

    #[test]
    fn member_examples() {
        let i = ci(&line(), vec![&x() * &x(), &x() * &xi()]);
        assert!(i.member(&(&x() * &xi())).unwrap());
        assert!(!i.member(&x()).unwrap());
        let m = ci(&e(), vec![x(), &y() - &one()]);
        assert!(!m.member(&(&y() + &one())).unwrap());
        assert!(m.member(&(&y().pow(2) - &one())).unwrap());
    }

    #[test]
    fn colon_examples() {
        let i = ci(&line(), vec![&x() * &x(), &x() * &xi()]);
        assert_eq!(i.colon(&ci(&line(), vec![x()])).unwrap(), ci(&line(), vec![x(), xi()]));
        assert_eq!(i.colon(&CIdeal::unit(&line())).unwrap(), i);
        let px = ci(&line(), vec![x()]);
        assert_eq!(px.colon(&ci(&line(), vec![x(), xi()])).unwrap(), px);
    }

    #[test]
    fn colength_examples() {
        assert_eq!(ci(&line(), vec![x(), xi()]).colength().unwrap(), Some(1));
        assert_eq!(ci(&line(), vec![&x() * &x(), &x() * &xi(), &xi() * &xi()]).colength().unwrap(), Some(3));
        assert_eq!(ci(&line(), vec![x()]).colength().unwrap(), None);
        assert_eq!(ci(&e(), vec![x(), &y() - &one(), xi()]).colength().unwrap(), Some(1));
        // (x, ξ) on E contains two points
        assert_eq!(ci(&e(), vec![x(), xi()]).colength().unwrap(), Some(2));
    }

    #[test]
    fn hull_examples() {
        let f = ci(&line(), vec![&x() * &x(), &x() * &xi()]);
        assert_eq!(f.divisorial_hull().unwrap(), ci(&line(), vec![x()]));
        assert_eq!(CIdeal::unit(&line()).divisorial_hull().unwrap(), CIdeal::unit(&line()));
        let m = ci(&e(), vec![x(), &y() - &one()]);
        assert_eq!(m.divisorial_hull().unwrap(), m);
        // independent of u
        assert_eq!(f.hull_with(&(&x() * &xi())).unwrap(), ci(&line(), vec![x()]));
    }

    #[test]
    fn intersect_ring_examples() {
        assert_eq!(ci(&line(), vec![x()]).intersect_ring().unwrap(), Some(vec![x()]));
        let f = ci(&line(), vec![&x() * &x(), &x() * &xi()]);
        assert_eq!(f.intersect_ring().unwrap(), Some(vec![&x() * &x()]));
        let m = ci(&e(), vec![x(), &y() - &one()]);
        assert_eq!(m.intersect_ring().unwrap(), Some(vec![x(), &y() - &one()]));
        assert_eq!(ci(&line(), vec![xi()]).intersect_ring().unwrap(), None);
    }

    #[test]
    fn exact_division_in_quotient_ring() {
        let c = e();
        // (y − 1)(y + 1) = x³
        let p = x().pow(3);
        assert_eq!(divide_exact(&c, &p, &(&y() - &one())).unwrap(), &y() + &one());
        assert!(divide_exact(&c, &x(), &(&y() - &one())).is_none());
        assert_eq!(divide_exact(&line(), &(&x() * &xi()), &x()).unwrap(), xi());
        let _ = q(0);
    }

    #[test]
    fn intersection_of_points() {
        let c = e();
        let a = ci(&c, vec![x(), &y() - &one()]);
        let b = ci(&c, vec![x(), &y() + &one()]);
        assert_eq!(a.intersection(&b).unwrap(), ci(&c, vec![x()]));
    }
}
