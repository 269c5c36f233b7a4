//! Divisors and the Picard group.
//!
//! On the affine elliptic curve `Pic X` is the group of rational points of
//! the projective curve, so a class is either the identity or one point.
//! The ideal `I` has the class of `−Σ v_P(I)[P]`.

use std::fmt;

use num_traits::Zero;

use crate::curve::{CurveModel, PointQ};
use crate::error::{Error, Result};
use crate::oideal::OIdeal;
use crate::poly::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorClass {
    Identity,
    Point(PointQ),
}

impl DivisorClass {
    pub fn is_identity(&self) -> bool {
        matches!(self, DivisorClass::Identity)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorClass::Identity => write!(f, "identity"),
            DivisorClass::Point(p) => write!(f, "{}", p),
        }
    }
}

/// A formal sum of points; zero multiplicities are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Divisor {
    pub entries: Vec<(PointQ, i64)>,
}

impl Divisor {
    pub fn new(entries: Vec<(PointQ, i64)>) -> Divisor {
        let mut d = Divisor::default();
        for (p, n) in entries {
            d.add(p, n);
        }
        d
    }

    pub fn add(&mut self, p: PointQ, n: i64) {
        if let Some(e) = self.entries.iter_mut().find(|(q, _)| *q == p) {
            e.1 += n;
        } else {
            self.entries.push((p, n));
        }
        self.entries.retain(|(_, n)| *n != 0);
        self.entries.sort();
    }

    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|(_, n)| n).sum()
    }

    pub fn negate(&self) -> Divisor {
        Divisor { entries: self.entries.iter().map(|(p, n)| (p.clone(), -n)).collect() }
    }

    pub fn class(&self, curve: &CurveModel) -> DivisorClass {
        let mut acc = DivisorClass::Identity;
        for (p, n) in &self.entries {
            acc = pic_add(curve, &acc, &pic_mul(curve, &DivisorClass::Point(p.clone()), *n));
        }
        acc
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.entries.iter().map(|(p, n)| format!("{}[{}]", n, p)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The class of a point, `Identity` on the line.
pub fn point_class(curve: &CurveModel, p: &PointQ) -> DivisorClass {
    if curve.is_elliptic() {
        DivisorClass::Point(p.clone())
    } else {
        DivisorClass::Identity
    }
}

pub fn pic_neg(curve: &CurveModel, c: &DivisorClass) -> DivisorClass {
    match (curve, c) {
        (CurveModel::Line, _) | (_, DivisorClass::Identity) => DivisorClass::Identity,
        (_, DivisorClass::Point(p)) => DivisorClass::Point(PointQ::affine(p.x.clone(), -p.y_or_zero())),
    }
}

/// Chord-tangent addition.
pub fn pic_add(curve: &CurveModel, c1: &DivisorClass, c2: &DivisorClass) -> DivisorClass {
    let a = match curve {
        CurveModel::Line => return DivisorClass::Identity,
        CurveModel::Elliptic { a, .. } => a,
    };
    let (p, r) = match (c1, c2) {
        (DivisorClass::Identity, c) | (c, DivisorClass::Identity) => return c.clone(),
        (DivisorClass::Point(p), DivisorClass::Point(r)) => (p, r),
    };
    let (x1, y1) = (&p.x, p.y_or_zero());
    let (x2, y2) = (&r.x, r.y_or_zero());
    let lambda = if x1 == x2 {
        if (&y1 + &y2).is_zero() {
            return DivisorClass::Identity;
        }
        (q(3) * x1 * x1 + a) / (q(2) * &y1)
    } else {
        (&y2 - &y1) / (x2 - x1)
    };
    let x3: Q = &lambda * &lambda - x1 - x2;
    let y3: Q = &lambda * (x1 - &x3) - &y1;
    DivisorClass::Point(PointQ::affine(x3, y3))
}

pub fn pic_sub(curve: &CurveModel, c1: &DivisorClass, c2: &DivisorClass) -> DivisorClass {
    pic_add(curve, c1, &pic_neg(curve, c2))
}

pub fn pic_mul(curve: &CurveModel, c: &DivisorClass, n: i64) -> DivisorClass {
    let base = if n < 0 { pic_neg(curve, c) } else { c.clone() };
    let mut k = n.unsigned_abs();
    let mut acc = DivisorClass::Identity;
    let mut pow = base;
    while k > 0 {
        if k & 1 == 1 {
            acc = pic_add(curve, &acc, &pow);
        }
        pow = pic_add(curve, &pow, &pow);
        k >>= 1;
    }
    acc
}

pub fn pic_eq(c1: &DivisorClass, c2: &DivisorClass) -> bool {
    c1 == c2
}

/// `−Σ v_P(I)[P]` as a divisor.
pub fn divisor_of_ideal(i: &OIdeal) -> Result<Divisor> {
    let sup = i.support()?;
    Ok(Divisor::new(sup.into_iter().map(|(p, v)| (p, -(v as i64))).collect()))
}

pub fn class_of_ideal(i: &OIdeal) -> Result<DivisorClass> {
    Ok(divisor_of_ideal(i)?.class(i.curve()))
}

/// The class of any nonzero ideal, with no condition on its support. A least
/// element `g` of `I` has pole order `colength(I)` or one more, so
/// `(g) : I` is `O(X)` or `m_P` with `P` rational, and `[I] = −[(g) : I]`.
pub fn class_by_reduction(i: &OIdeal) -> Result<DivisorClass> {
    let curve = i.curve();
    if !curve.is_elliptic() || i.is_unit()? {
        return Ok(DivisorClass::Identity);
    }
    let g = i.basis()?.into_iter().min_by_key(|p| p.lm()).ok_or_else(|| Error::Internal("empty basis".into()))?;
    let pg = OIdeal::new(curve, vec![g])?.extend();
    let gens = pg.colon(&i.extend())?.intersect_ring()?.ok_or_else(|| Error::Internal("zero colon ideal".into()))?;
    let residual = OIdeal::new(curve, gens)?;
    if residual.colength()? > 1 {
        return Err(Error::Internal("least element of an ideal has too large a pole".into()));
    }
    Ok(pic_neg(curve, &class_of_ideal(&residual)?))
}

/// An ideal whose class is `c`: `O(X)` for the identity, and `m_{⊖Q}` for the
/// class of the point `Q`.
pub fn ideal_of_class(curve: &CurveModel, c: &DivisorClass) -> Result<OIdeal> {
    match c {
        DivisorClass::Identity => Ok(OIdeal::unit(curve)),
        DivisorClass::Point(p) => match pic_neg(curve, c) {
            DivisorClass::Point(np) => OIdeal::maximal(curve, &np),
            DivisorClass::Identity => OIdeal::maximal(curve, p),
        },
    }
}

/// The affine rational points of `y² = x³ + 1`, used by the batteries.
pub fn sample_points_elliptic() -> Vec<PointQ> {
    vec![PointQ::ints(0, 1), PointQ::ints(0, -1), PointQ::ints(2, 3), PointQ::ints(2, -3), PointQ::ints(-1, 0)]
}

pub fn sample_points_line() -> Vec<PointQ> {
    [0, 1, -1, 2].iter().map(|&x| PointQ::line(q(x))).collect()
}

/// `Identity` together with the classes of the sample points, which is the
/// whole group of `y² = x³ + 1` (cyclic of order six).
pub fn sample_classes_elliptic(curve: &CurveModel) -> Vec<DivisorClass> {
    let mut v = vec![DivisorClass::Identity];
    v.extend(sample_points_elliptic().iter().map(|p| point_class(curve, p)));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn e() -> CurveModel {
        CurveModel::standard_elliptic()
    }
    fn pt(x: i64, y: i64) -> DivisorClass {
        DivisorClass::Point(PointQ::ints(x, y))
    }

    #[test]
    fn group_law_examples() {
        let c = e();
        assert_eq!(pic_add(&c, &pt(0, 1), &pt(2, 3)), pt(-1, 0));
        assert_eq!(pic_add(&c, &pt(2, 3), &DivisorClass::Identity), pt(2, 3));
        assert!(pic_add(&c, &pt(0, 1), &pt(0, -1)).is_identity());
        // tangent at (0,1) is y = 1, which meets the cubic triply
        assert_eq!(pic_add(&c, &pt(0, 1), &pt(0, 1)), pt(0, -1));
        assert!(pic_mul(&c, &pt(0, 1), 3).is_identity());
        assert!(pic_mul(&c, &pt(2, 3), 6).is_identity());
        assert!(!pic_mul(&c, &pt(2, 3), 3).is_identity());
    }

    #[test]
    fn reduction_matches_point_route() {
        let c = e();
        let pts = sample_points_elliptic();
        for a in &pts {
            for b in &pts {
                let i = OIdeal::maximal(&c, a).unwrap().product(&OIdeal::maximal(&c, b).unwrap()).unwrap();
                assert_eq!(class_by_reduction(&i).unwrap(), class_of_ideal(&i).unwrap());
            }
        }
        // y vanishes at (-1, 0) and at the conjugate pair over x^2 - x + 1
        let z = OIdeal::new(&c, vec![Poly::y(), &(&Poly::x().pow(2) - &Poly::x()) + &Poly::one()]).unwrap();
        assert!(class_of_ideal(&z).is_err());
        assert_eq!(class_by_reduction(&z).unwrap(), pt(-1, 0));
        assert!(class_by_reduction(&OIdeal::new(&c, vec![Poly::y()]).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn group_axioms_on_samples() {
        let c = e();
        let s = sample_classes_elliptic(&c);
        for a in &s {
            assert!(pic_add(&c, a, &pic_neg(&c, a)).is_identity());
            for b in &s {
                assert_eq!(pic_add(&c, a, b), pic_add(&c, b, a));
                assert!(s.contains(&pic_add(&c, a, b)));
                for d in &s {
                    let l = pic_add(&c, &pic_add(&c, a, b), d);
                    let r = pic_add(&c, a, &pic_add(&c, b, d));
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn class_of_ideal_examples() {
        let c = e();
        let p = PointQ::ints(0, 1);
        let mp = OIdeal::maximal(&c, &p).unwrap();
        assert!(class_of_ideal(&OIdeal::new(&c, vec![Poly::x()]).unwrap()).unwrap().is_identity());
        assert_eq!(class_of_ideal(&mp).unwrap(), pt(0, -1));
        let mq = OIdeal::maximal(&c, &PointQ::ints(0, -1)).unwrap();
        assert_eq!(class_of_ideal(&mp.power(2).unwrap()).unwrap(), class_of_ideal(&mq).unwrap());
        assert!(class_of_ideal(&mp.product(&mq).unwrap()).unwrap().is_identity());
        let l = OIdeal::new(&CurveModel::Line, vec![Poly::x().pow(2)]).unwrap();
        assert!(class_of_ideal(&l).unwrap().is_identity());
        for g in [&Poly::y() - &Poly::one(), &Poly::x() + &Poly::one()] {
            assert!(class_of_ideal(&OIdeal::new(&c, vec![g]).unwrap()).unwrap().is_identity());
        }
    }

    #[test]
    fn ideal_of_class_round_trip() {
        let c = e();
        for cl in sample_classes_elliptic(&c) {
            assert_eq!(class_of_ideal(&ideal_of_class(&c, &cl).unwrap()).unwrap(), cl);
        }
    }
}
