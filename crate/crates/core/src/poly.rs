//! Sparse polynomials over the rationals in the variables `t, xi, h, x, y`.
//!
//! One representation serves three rings. Commutative elements of the
//! cotangent ring use `x, y, xi` (plus `t` during eliminations). Operators in
//! PBW normal form reuse the `xi` slot for the exponent of `d`, with every
//! function written to the left. The homogenized operator algebra adds `h`.
//!
//! The monomial order is fixed: `t` exponent, then `xi`, then `h`, then the
//! weighted degree `2·deg x + 3·deg y`, then the `y` exponent. With these
//! weights the curve relation `y² − x³ − ax − b` has leading monomial `y²`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono {
    pub t: u32,
    pub xi: u32,
    pub h: u32,
    pub x: u32,
    pub y: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { t: 0, xi: 0, h: 0, x: 0, y: 0 };

    pub fn new(x: u32, y: u32, xi: u32) -> Mono {
        Mono { t: 0, xi, h: 0, x, y }
    }

    pub fn weight(&self) -> u64 {
        2 * self.x as u64 + 3 * self.y as u64
    }

    pub fn is_one(&self) -> bool {
        *self == Mono::ONE
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono { t: self.t + o.t, xi: self.xi + o.xi, h: self.h + o.h, x: self.x + o.x, y: self.y + o.y }
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.t <= o.t && self.xi <= o.xi && self.h <= o.h && self.x <= o.x && self.y <= o.y
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient(&self, o: &Mono) -> Mono {
        debug_assert!(self.divides(o));
        Mono { t: o.t - self.t, xi: o.xi - self.xi, h: o.h - self.h, x: o.x - self.x, y: o.y - self.y }
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        Mono { t: self.t.max(o.t), xi: self.xi.max(o.xi), h: self.h.max(o.h), x: self.x.max(o.x), y: self.y.max(o.y) }
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        (self.t == 0 || o.t == 0)
            && (self.xi == 0 || o.xi == 0)
            && (self.h == 0 || o.h == 0)
            && (self.x == 0 || o.x == 0)
            && (self.y == 0 || o.y == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.t
            .cmp(&o.t)
            .then(self.xi.cmp(&o.xi))
            .then(self.h.cmp(&o.h))
            .then(self.weight().cmp(&o.weight()))
            .then(self.y.cmp(&o.y))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Poly {
        Poly::term(Mono::ONE, c)
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(q(n))
    }

    pub fn term(m: Mono, c: Q) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn mono(m: Mono) -> Poly {
        Poly::term(m, Q::one())
    }

    pub fn x() -> Poly {
        Poly::mono(Mono::new(1, 0, 0))
    }

    pub fn y() -> Poly {
        Poly::mono(Mono::new(0, 1, 0))
    }

    pub fn xi() -> Poly {
        Poly::mono(Mono::new(0, 0, 1))
    }

    pub fn t() -> Poly {
        Poly::mono(Mono { t: 1, ..Mono::ONE })
    }

    pub fn h() -> Poly {
        Poly::mono(Mono { h: 1, ..Mono::ONE })
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Q)>>(it: I) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn lm(&self) -> Option<Mono> {
        self.terms.keys().next_back().copied()
    }

    pub fn lt(&self) -> Option<(Mono, Q)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))
    }

    pub fn lc(&self) -> Q {
        self.terms.values().next_back().cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn pop_lt(&mut self) -> Option<(Mono, Q)> {
        self.terms.pop_last()
    }

    pub fn add_assign_ref(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }

    /// `self += c · m · o`
    pub fn add_scaled_mono(&mut self, c: &Q, m: &Mono, o: &Poly) {
        if c.is_zero() {
            return;
        }
        for (om, oc) in &o.terms {
            self.add_term(m.mul(om), c * oc);
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn max_xi(&self) -> u32 {
        self.terms.keys().map(|m| m.xi).max().unwrap_or(0)
    }

    pub fn max_h(&self) -> u32 {
        self.terms.keys().map(|m| m.h).max().unwrap_or(0)
    }

    pub fn min_h(&self) -> u32 {
        self.terms.keys().map(|m| m.h).min().unwrap_or(0)
    }

    pub fn has_t(&self) -> bool {
        self.terms.keys().any(|m| m.t > 0)
    }

    pub fn has_y(&self) -> bool {
        self.terms.keys().any(|m| m.y > 0)
    }

    pub fn max_y(&self) -> u32 {
        self.terms.keys().map(|m| m.y).max().unwrap_or(0)
    }

    /// Part of top `xi` degree, keeping the `xi` exponent.
    pub fn top_xi_part(&self) -> Poly {
        let d = self.max_xi();
        Poly { terms: self.terms.iter().filter(|(m, _)| m.xi == d).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// Coefficient of `xi^k` as a polynomial in the remaining variables.
    pub fn xi_coeff(&self, k: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.xi == k)
                .map(|(m, c)| (Mono { xi: 0, ..*m }, c.clone()))
                .collect(),
        }
    }

    /// Splits `p = p0 + p1·y` assuming `y`-exponents are at most one.
    pub fn split_y(&self) -> (Poly, Poly) {
        let mut p0 = Poly::zero();
        let mut p1 = Poly::zero();
        for (m, c) in &self.terms {
            match m.y {
                0 => p0.add_term(*m, c.clone()),
                1 => p1.add_term(Mono { y: 0, ..*m }, c.clone()),
                _ => panic!("split_y on a polynomial with y-exponent > 1"),
            }
        }
        (p0, p1)
    }

    pub fn map_monos<F: Fn(&Mono) -> Mono>(&self, f: F) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Substitutes polynomials for `x`, `y` and `xi` (commutatively). `t` and
    /// `h` are kept.
    pub fn substitute(&self, sx: &Poly, sy: &Poly, sxi: &Poly) -> Poly {
        let mut out = Poly::zero();
        let mut px: Vec<Poly> = vec![Poly::one()];
        let mut py: Vec<Poly> = vec![Poly::one()];
        let mut pxi: Vec<Poly> = vec![Poly::one()];
        for (m, c) in &self.terms {
            while px.len() <= m.x as usize {
                let n = px.last().unwrap() * sx;
                px.push(n);
            }
            while py.len() <= m.y as usize {
                let n = py.last().unwrap() * sy;
                py.push(n);
            }
            while pxi.len() <= m.xi as usize {
                let n = pxi.last().unwrap() * sxi;
                pxi.push(n);
            }
            let rest = Mono { t: m.t, h: m.h, ..Mono::ONE };
            let prod = &(&px[m.x as usize] * &py[m.y as usize]) * &pxi[m.xi as usize];
            out.add_scaled_mono(c, &rest, &prod);
        }
        out
    }

    /// Evaluates at rational `x`, `y` (only for polynomials in `x`, `y`).
    pub fn eval_xy(&self, x: &Q, y: &Q) -> Q {
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            s += c * pow_q(x, m.x) * pow_q(y, m.y);
        }
        s
    }

    /// Exact division in the polynomial ring (no curve relation). Returns
    /// `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.lt()?;
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while let Some((m, c)) = rem.lt() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.quotient(&m);
            let qc = &c / &dc;
            rem.add_scaled_mono(&(-&qc), &qm, d);
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    pub fn content_is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn max_abs_coeff(&self) -> Q {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
    }
}

pub fn pow_q(b: &Q, e: u32) -> Q {
    let mut r = Q::one();
    for _ in 0..e {
        r *= b;
    }
    r
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign_ref(o);
        r
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c);
        }
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            r.add_scaled_mono(c, m, o);
        }
        r
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_puts_y_squared_above_x_cubed() {
        let y2 = Mono::new(0, 2, 0);
        let x3 = Mono::new(3, 0, 0);
        assert!(y2 > x3);
        assert!(Mono::new(0, 0, 1) > Mono::new(40, 7, 0));
        assert!(Mono { t: 1, ..Mono::ONE } > Mono::new(3, 3, 9));
    }

    #[test]
    fn order_is_multiplicative_on_samples() {
        let ms = [Mono::new(1, 0, 0), Mono::new(0, 1, 0), Mono::new(3, 0, 1), Mono::new(0, 2, 0), Mono::new(2, 1, 2)];
        for a in &ms {
            for b in &ms {
                for c in &ms {
                    assert_eq!(a.cmp(b), a.mul(c).cmp(&b.mul(c)));
                }
            }
        }
    }

    #[test]
    fn exact_division() {
        let x = Poly::x();
        let xi = Poly::xi();
        let p = &(&x + &xi) * &(&x - &Poly::one());
        assert_eq!(p.exact_div(&(&x + &xi)).unwrap(), &x - &Poly::one());
        assert!(p.exact_div(&(&x + &Poly::int(2))).is_none());
    }
}
