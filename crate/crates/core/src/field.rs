//! The function field `K = Frac O(X)` and skew polynomials `K[∂]`.
//!
//! An element of `K` is `n / d` with `n ∈ O(X)` canonical and `d ∈ Q[x]`
//! monic, with no common factor of `d` and both `y`-components of `n`.
//! Inversion multiplies by the conjugate over the norm, which lies in `Q[x]`.

use num_traits::One;

use crate::curve::CurveModel;
use crate::oideal::norm_x;
use crate::poly::{Mono, Poly, Q};
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KElem {
    pub num: Poly,
    pub den: UPoly,
}

fn upoly_of(p: &Poly) -> UPoly {
    UPoly::from_poly(p).expect("function component in Q[x]")
}

impl KElem {
    pub fn zero() -> KElem {
        KElem { num: Poly::zero(), den: UPoly::one() }
    }

    pub fn one() -> KElem {
        KElem::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> KElem {
        KElem { num: p, den: UPoly::one() }
    }

    pub fn constant(c: Q) -> KElem {
        KElem::from_poly(Poly::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(f)` when the element lies in `O(X)`.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }
}

/// Arithmetic in `K` for a fixed curve; `commutative` turns off the
/// derivation so that `K[∂]` becomes the ordinary polynomial ring `K[ξ]`.
#[derive(Clone, Debug)]
pub struct KField {
    pub curve: CurveModel,
    pub commutative: bool,
}

impl KField {
    pub fn new(curve: &CurveModel) -> KField {
        KField { curve: curve.clone(), commutative: false }
    }

    pub fn commutative(curve: &CurveModel) -> KField {
        KField { curve: curve.clone(), commutative: true }
    }

    fn normalize(&self, num: Poly, den: UPoly) -> KElem {
        let num = self.curve.reduce(&num);
        if num.is_zero() {
            return KElem::zero();
        }
        let (n0, n1) = num.split_y();
        let mut g = den.gcd(&upoly_of(&n0));
        if !n1.is_zero() {
            g = g.gcd(&upoly_of(&n1));
        }
        let (mut num, mut den) = (num, den);
        if !g.is_one() {
            let gp = g.to_poly();
            let (a0, a1) = num.split_y();
            let a0 = a0.exact_div(&gp).unwrap_or_else(Poly::zero);
            let a1 = a1.exact_div(&gp).unwrap_or_else(Poly::zero);
            num = &a0 + &(&a1 * &Poly::y());
            den = den.div_rem(&g).0;
        }
        let lc = den.lc();
        KElem { num: num.scale(&lc.recip()), den: den.monic() }
    }

    pub fn elem(&self, num: Poly, den: UPoly) -> KElem {
        assert!(!den.is_zero(), "zero denominator");
        self.normalize(num, den)
    }

    pub fn add(&self, a: &KElem, b: &KElem) -> KElem {
        if a.den == b.den {
            return self.normalize(&a.num + &b.num, a.den.clone());
        }
        let num = &(&a.num * &b.den.to_poly()) + &(&b.num * &a.den.to_poly());
        self.normalize(num, a.den.mul(&b.den))
    }

    pub fn neg(&self, a: &KElem) -> KElem {
        KElem { num: -&a.num, den: a.den.clone() }
    }

    pub fn sub(&self, a: &KElem, b: &KElem) -> KElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        if a.is_zero() || b.is_zero() {
            return KElem::zero();
        }
        self.normalize(&a.num * &b.num, a.den.mul(&b.den))
    }

    pub fn inv(&self, a: &KElem) -> KElem {
        assert!(!a.is_zero(), "inverse of zero");
        if !self.curve.is_elliptic() {
            return self.normalize(a.den.to_poly(), upoly_of(&a.num));
        }
        let (n0, n1) = self.curve.reduce(&a.num).split_y();
        let conj = &n0 - &(&n1 * &Poly::y());
        let norm = norm_x(&self.curve, &a.num).expect("norm");
        self.normalize(&conj * &a.den.to_poly(), norm)
    }

    pub fn div(&self, a: &KElem, b: &KElem) -> KElem {
        self.mul(a, &self.inv(b))
    }

    /// `δ(n/d) = (δ(n)·d − n·δ(d)) / d²`
    pub fn derive(&self, a: &KElem) -> KElem {
        if self.commutative || a.is_zero() {
            return KElem::zero();
        }
        let dn = self.curve.apply_derivation(&a.num);
        let dd = self.curve.apply_derivation(&a.den.to_poly());
        let num = &(&dn * &a.den.to_poly()) - &(&a.num * &dd);
        self.normalize(num, a.den.mul(&a.den))
    }

    pub fn derive_n(&self, a: &KElem, n: usize) -> KElem {
        let mut r = a.clone();
        for _ in 0..n {
            r = self.derive(&r);
        }
        r
    }
}

/// `Σ c_i ∂^i` with coefficients in `K` to the left.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KSkewPoly {
    pub coeffs: Vec<KElem>,
}

fn binom(n: usize, k: usize) -> Q {
    let mut r = Q::one();
    for i in 0..k {
        r = r * Q::from_integer(((n - i) as i64).into()) / Q::from_integer(((i + 1) as i64).into());
    }
    r
}

impl KSkewPoly {
    pub fn new(mut coeffs: Vec<KElem>) -> KSkewPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        KSkewPoly { coeffs }
    }

    pub fn zero() -> KSkewPoly {
        KSkewPoly { coeffs: Vec::new() }
    }

    pub fn one() -> KSkewPoly {
        KSkewPoly { coeffs: vec![KElem::one()] }
    }

    /// `c ∂^k`
    pub fn term(c: KElem, k: usize) -> KSkewPoly {
        let mut v = vec![KElem::zero(); k + 1];
        v[k] = c;
        KSkewPoly::new(v)
    }

    /// Reads an operator in PBW form (the `ξ` slot holds the `∂` exponent).
    pub fn from_dop(p: &Poly) -> KSkewPoly {
        let n = p.max_xi() as usize;
        KSkewPoly::new((0..=n).map(|k| KElem::from_poly(p.xi_coeff(k as u32))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lc(&self) -> KElem {
        self.coeffs.last().cloned().unwrap_or_else(KElem::zero)
    }

    /// Back to an operator with coefficients in `O(X)`, if no denominators
    /// remain.
    pub fn to_dop(&self) -> Option<Poly> {
        let mut p = Poly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let f = c.as_poly()?;
            p.add_scaled_mono(&Q::one(), &Mono::new(0, 0, k as u32), f);
        }
        Some(p)
    }

    /// Monic common denominator of the coefficients.
    pub fn denominator(&self) -> UPoly {
        let mut d = UPoly::one();
        for c in &self.coeffs {
            let g = d.gcd(&c.den);
            d = d.mul(&c.den.div_rem(&g).0);
        }
        d
    }
}

impl KField {
    pub fn skew_add(&self, a: &KSkewPoly, b: &KSkewPoly) -> KSkewPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = KElem::zero();
        KSkewPoly::new((0..n).map(|i| self.add(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z))).collect())
    }

    pub fn skew_sub(&self, a: &KSkewPoly, b: &KSkewPoly) -> KSkewPoly {
        let nb = KSkewPoly { coeffs: b.coeffs.iter().map(|c| self.neg(c)).collect() };
        self.skew_add(a, &nb)
    }

    /// `c · A` (multiplication on the left by a function).
    pub fn skew_lmul(&self, c: &KElem, a: &KSkewPoly) -> KSkewPoly {
        KSkewPoly::new(a.coeffs.iter().map(|x| self.mul(c, x)).collect())
    }

    pub fn skew_mul(&self, a: &KSkewPoly, b: &KSkewPoly) -> KSkewPoly {
        if a.is_zero() || b.is_zero() {
            return KSkewPoly::zero();
        }
        let n = a.coeffs.len() + b.coeffs.len() - 1;
        let mut out = vec![KElem::zero(); n];
        for (j, bj) in b.coeffs.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            // ∂^i · b_j = Σ_l C(i,l) δ^l(b_j) ∂^{i−l}
            let mut ders = vec![bj.clone()];
            for (i, ai) in a.coeffs.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                let top = if self.commutative { 0 } else { i };
                while ders.len() <= top {
                    let d = self.derive(ders.last().unwrap());
                    ders.push(d);
                }
                for (l, dl) in ders.iter().enumerate().take(top + 1) {
                    if dl.is_zero() {
                        continue;
                    }
                    let c = self.mul(ai, &self.mul(&KElem::constant(binom(i, l)), dl));
                    let k = i - l + j;
                    out[k] = self.add(&out[k], &c);
                }
            }
        }
        KSkewPoly::new(out)
    }

    /// `A = q·B + r` with `order(r) < order(B)`.
    pub fn skew_right_divide(&self, a: &KSkewPoly, b: &KSkewPoly) -> (KSkewPoly, KSkewPoly) {
        let nb = b.order().expect("division by zero operator");
        let binv = self.inv(&b.lc());
        let mut r = a.clone();
        let mut q = KSkewPoly::zero();
        while let Some(nr) = r.order() {
            if nr < nb {
                break;
            }
            let t = KSkewPoly::term(self.mul(&r.lc(), &binv), nr - nb);
            r = self.skew_sub(&r, &self.skew_mul(&t, b));
            q = self.skew_add(&q, &t);
        }
        (q, r)
    }

    /// `A = B·q + r` with `order(r) < order(B)`.
    pub fn skew_left_divide(&self, a: &KSkewPoly, b: &KSkewPoly) -> (KSkewPoly, KSkewPoly) {
        let nb = b.order().expect("division by zero operator");
        let binv = self.inv(&b.lc());
        let mut r = a.clone();
        let mut q = KSkewPoly::zero();
        while let Some(nr) = r.order() {
            if nr < nb {
                break;
            }
            let t = KSkewPoly::term(self.mul(&binv, &r.lc()), nr - nb);
            r = self.skew_sub(&r, &self.skew_mul(b, &t));
            q = self.skew_add(&q, &t);
        }
        (q, r)
    }

    /// `A · lc(A)⁻¹`, the generator of `A·K[∂]` with leading coefficient 1.
    pub fn make_monic(&self, a: &KSkewPoly) -> KSkewPoly {
        if a.is_zero() {
            return KSkewPoly::zero();
        }
        let u = KSkewPoly::term(self.inv(&a.lc()), 0);
        self.skew_mul(a, &u)
    }

    /// Monic generator of the right ideal `A·K[∂] + B·K[∂]`.
    pub fn right_ideal_gcd(&self, a: &KSkewPoly, b: &KSkewPoly) -> KSkewPoly {
        let (mut u, mut v) = (a.clone(), b.clone());
        if u.order() < v.order() {
            std::mem::swap(&mut u, &mut v);
        }
        while !v.is_zero() {
            let (_, r) = self.skew_left_divide(&u, &v);
            u = v;
            v = r;
        }
        self.make_monic(&u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn line() -> KField {
        KField::new(&CurveModel::Line)
    }
    fn xk() -> KElem {
        KElem::from_poly(Poly::x())
    }
    fn d() -> KSkewPoly {
        KSkewPoly::term(KElem::one(), 1)
    }

    #[test]
    fn field_arithmetic() {
        let k = KField::new(&CurveModel::standard_elliptic());
        let a = KElem::from_poly(&Poly::y() - &Poly::one());
        let ia = k.inv(&a);
        assert_eq!(k.mul(&a, &ia), KElem::one());
        // 1/(y−1) = (y+1)/x³
        assert_eq!(ia, KElem { num: &Poly::y() + &Poly::one(), den: UPoly::linear(&q(0)).pow(3) });
        let s = k.add(&ia, &k.neg(&ia));
        assert!(s.is_zero());
    }

    #[test]
    fn right_division_examples() {
        let k = line();
        let a = KSkewPoly::new(vec![KElem::one(), xk()]);
        let (qq, r) = k.skew_right_divide(&a, &d());
        assert_eq!(qq, KSkewPoly::term(xk(), 0));
        assert_eq!(r, KSkewPoly::one());
        let (qq, r) = k.skew_right_divide(&a, &a);
        assert_eq!(qq, KSkewPoly::one());
        assert!(r.is_zero());
        // ∂² = ((1/x)∂ − 1/x²)·x∂
        let d2 = KSkewPoly::term(KElem::one(), 2);
        let b = KSkewPoly::term(xk(), 1);
        let (qq, r) = k.skew_right_divide(&d2, &b);
        let inv_x = k.inv(&xk());
        let inv_x2 = k.mul(&inv_x, &inv_x);
        assert_eq!(qq, KSkewPoly::new(vec![k.neg(&inv_x2), inv_x]));
        assert!(r.is_zero());
    }

    #[test]
    fn left_division_reassembles() {
        let k = KField::new(&CurveModel::standard_elliptic());
        let a = KSkewPoly::from_dop(&(&(&Poly::y() * &Poly::xi().pow(3)) + &Poly::x()));
        let b = KSkewPoly::from_dop(&(&(&Poly::x() * &Poly::xi()) - &Poly::one()));
        let (qq, r) = k.skew_left_divide(&a, &b);
        assert_eq!(k.skew_add(&k.skew_mul(&b, &qq), &r), a);
        assert!(r.order().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_of_right_ideals() {
        let k = line();
        // x∂·K[∂] is generated by ∂ − 1/x
        let g = k.right_ideal_gcd(&KSkewPoly::term(xk(), 1), &KSkewPoly::term(xk(), 1));
        let inv_x = k.inv(&xk());
        assert_eq!(g, KSkewPoly::new(vec![k.neg(&inv_x), KElem::one()]));
        let m1 = KSkewPoly::from_dop(&(&(&Poly::x() * &Poly::xi()) - &Poly::one()));
        let g = k.right_ideal_gcd(&KSkewPoly::term(k.mul(&xk(), &xk()), 0), &m1);
        assert_eq!(g, KSkewPoly::one());
    }
}
