//! Dense univariate polynomials over the rationals, in `x`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{Mono, Poly, Q};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn new(mut c: Vec<Q>) -> UPoly {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn zero() -> UPoly {
        UPoly(Vec::new())
    }

    pub fn one() -> UPoly {
        UPoly(vec![Q::one()])
    }

    pub fn constant(c: Q) -> UPoly {
        UPoly::new(vec![c])
    }

    /// `x - r`
    pub fn linear(r: &Q) -> UPoly {
        UPoly(vec![-r.clone(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn lc(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let inv = self.lc().recip();
        UPoly(self.0.iter().map(|c| c * &inv).collect())
    }

    pub fn scale(&self, s: &Q) -> UPoly {
        UPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let mut r = vec![Q::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            r[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            r[i] += c;
        }
        UPoly::new(r)
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut r = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        UPoly::new(r)
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.0.len() - 1;
        let lc_inv = d.lc().recip();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = &rem[i] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                rem[i - dd + j] -= &c * dc;
            }
            quo[i - dd] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quo), UPoly::new(rem))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer(BigInt::from(i))).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut r = UPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(g).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    /// Reads a polynomial in `x` alone; `None` if other variables occur.
    pub fn from_poly(p: &Poly) -> Option<UPoly> {
        let mut c = Vec::new();
        for (m, v) in p.terms() {
            if m.y != 0 || m.xi != 0 || m.t != 0 || m.h != 0 {
                return None;
            }
            let i = m.x as usize;
            if c.len() <= i {
                c.resize(i + 1, Q::zero());
            }
            c[i] = v.clone();
        }
        Some(UPoly::new(c))
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(self.0.iter().enumerate().map(|(i, c)| (Mono::new(i as u32, 0, 0), c.clone())))
    }

    /// Distinct rational roots, in increasing order.
    pub fn rational_roots(&self) -> Vec<Q> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sf = {
            let g = self.gcd(&self.derivative());
            self.div_rem(&g).0
        };
        let mut roots = Vec::new();
        let mut p = sf;
        if p.0[0].is_zero() {
            roots.push(Q::zero());
            p = p.div_rem(&UPoly::linear(&Q::zero())).0;
        }
        // clear denominators to a primitive integer polynomial
        let den = p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.0.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
        if ints.len() > 1 {
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            let ps = divisors(&a0);
            let qs = divisors(&an);
            for pn in &ps {
                for qd in &qs {
                    for s in [1i64, -1] {
                        let r = Q::new(pn * BigInt::from(s), qd.clone());
                        if !roots.contains(&r) && p.eval(&r).is_zero() {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let root = n.sqrt();
    let mut d = BigInt::one();
    // trial division; inputs here have small height
    let limit = root.to_u64().unwrap_or(u64::MAX).min(50_000_000);
    let mut i = 1u64;
    while i <= limit {
        if (n % &d).is_zero() {
            let co = n / &d;
            if co != d {
                large.push(co);
            }
            small.push(d.clone());
        }
        d += 1;
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{q, qf};

    #[test]
    fn gcd_and_roots() {
        let a = UPoly::linear(&q(2)).mul(&UPoly::linear(&qf(-1, 3)));
        let b = UPoly::linear(&q(2)).mul(&UPoly::new(vec![q(1), q(0), q(1)]));
        assert_eq!(a.gcd(&b), UPoly::linear(&q(2)));
        assert_eq!(a.rational_roots(), vec![qf(-1, 3), q(2)]);
        assert!(UPoly::new(vec![q(1), q(0), q(1)]).rational_roots().is_empty());
        let c = UPoly::linear(&q(0)).pow(3).mul(&UPoly::linear(&q(-1)));
        assert_eq!(c.rational_roots(), vec![q(-1), q(0)]);
    }

    #[test]
    fn div_rem_reassembles() {
        let a = UPoly::new(vec![q(3), q(-1), q(0), q(5)]);
        let d = UPoly::new(vec![q(1), q(2)]);
        let (qq, r) = a.div_rem(&d);
        assert_eq!(qq.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }
}
