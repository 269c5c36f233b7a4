//! Supported curves, rational points, the derivation generating `Der O(X)`,
//! and jets in a local parameter.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{q, Mono, Poly, Q};
use crate::upoly::UPoly;

/// The affine line, or the affine elliptic curve `y² = x³ + ax + b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurveModel {
    Line,
    Elliptic { a: Q, b: Q },
}

impl CurveModel {
    pub fn line() -> CurveModel {
        CurveModel::Line
    }

    pub fn elliptic(a: Q, b: Q) -> Result<CurveModel> {
        let c = CurveModel::Elliptic { a, b };
        c.validate()?;
        Ok(c)
    }

    /// `y² = x³ + 1`, the curve the batteries run on.
    pub fn standard_elliptic() -> CurveModel {
        CurveModel::Elliptic { a: Q::zero(), b: Q::one() }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CurveModel::Line => Ok(()),
            CurveModel::Elliptic { .. } => {
                if self.discriminant().is_zero() {
                    Err(Error::SingularCurve)
                } else {
                    Ok(())
                }
            }
        }
    }

    /// `−16(4a³ + 27b²)`; zero for the line by convention.
    pub fn discriminant(&self) -> Q {
        match self {
            CurveModel::Line => Q::zero(),
            CurveModel::Elliptic { a, b } => -q(16) * (q(4) * a * a * a + q(27) * b * b),
        }
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, CurveModel::Elliptic { .. })
    }

    /// `x³ + ax + b`.
    pub fn cubic(&self) -> UPoly {
        match self {
            CurveModel::Line => UPoly::zero(),
            CurveModel::Elliptic { a, b } => UPoly::new(vec![b.clone(), a.clone(), Q::zero(), Q::one()]),
        }
    }

    /// The curve element `y² − x³ − ax − b` of the ambient polynomial ring.
    pub fn relation(&self) -> Option<Poly> {
        match self {
            CurveModel::Line => None,
            CurveModel::Elliptic { .. } => Some(&Poly::y().pow(2) - &self.cubic().to_poly()),
        }
    }

    /// Canonical form: replaces `y²` by `x³ + ax + b` until every `y`-exponent
    /// is at most one.
    pub fn reduce(&self, p: &Poly) -> Poly {
        if !self.is_elliptic() || p.max_y() < 2 {
            return p.clone();
        }
        let f = self.cubic().to_poly();
        let mut fpow = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let k = (m.y / 2) as usize;
            while fpow.len() <= k {
                let n = fpow.last().unwrap() * &f;
                fpow.push(n);
            }
            let rest = Mono { y: m.y % 2, ..*m };
            out.add_scaled_mono(c, &rest, &fpow[k]);
        }
        out
    }

    /// `δ(x)`: 1 on the line, `2y` on elliptic models.
    pub fn delta_x(&self) -> Poly {
        match self {
            CurveModel::Line => Poly::one(),
            CurveModel::Elliptic { .. } => Poly::y().scale(&q(2)),
        }
    }

    /// `δ(y) = f′(x)` on elliptic models, zero on the line.
    pub fn delta_y(&self) -> Poly {
        match self {
            CurveModel::Line => Poly::zero(),
            CurveModel::Elliptic { .. } => self.cubic().derivative().to_poly(),
        }
    }

    /// The derivation on the ambient polynomial ring in `x, y` (no curve
    /// reduction); other variables are treated as constants.
    pub fn delta_raw(&self, p: &Poly) -> Poly {
        let dx = self.delta_x();
        let dy = self.delta_y();
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            if m.x > 0 {
                let mm = Mono { x: m.x - 1, ..*m };
                out.add_scaled_mono(&(c * q(m.x as i64)), &mm, &dx);
            }
            if m.y > 0 {
                let mm = Mono { y: m.y - 1, ..*m };
                out.add_scaled_mono(&(c * q(m.y as i64)), &mm, &dy);
            }
        }
        out
    }

    /// `δ(f)` for a function on the curve, in canonical form.
    pub fn apply_derivation(&self, f: &Poly) -> Poly {
        self.reduce(&self.delta_raw(f))
    }

    pub fn contains(&self, p: &PointQ) -> bool {
        match (self, &p.y) {
            (CurveModel::Line, None) => true,
            (CurveModel::Elliptic { .. }, Some(y)) => y * y == self.cubic().eval(&p.x),
            _ => false,
        }
    }

    pub fn check_point(&self, p: &PointQ) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::PointNotOnCurve(p.to_string()))
        }
    }

    /// Rational points with the given `x`-coordinate.
    pub fn points_over(&self, x: &Q) -> Vec<PointQ> {
        match self {
            CurveModel::Line => vec![PointQ::line(x.clone())],
            CurveModel::Elliptic { .. } => {
                let v = self.cubic().eval(x);
                match rational_sqrt(&v) {
                    None => Vec::new(),
                    Some(r) if r.is_zero() => vec![PointQ::affine(x.clone(), r)],
                    Some(r) => vec![PointQ::affine(x.clone(), -r.clone()), PointQ::affine(x.clone(), r)],
                }
            }
        }
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveModel::Line => write!(f, "line"),
            CurveModel::Elliptic { a, b } => write!(f, "y^2 = x^3 + {}*x + {}", a, b),
        }
    }
}

pub fn rational_sqrt(v: &Q) -> Option<Q> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().sqrt();
    let d = v.denom().sqrt();
    if &(&n * &n) == v.numer() && &(&d * &d) == v.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// A rational point; `y` is absent on the line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointQ {
    pub x: Q,
    pub y: Option<Q>,
}

impl PointQ {
    pub fn line(x: Q) -> PointQ {
        PointQ { x, y: None }
    }

    pub fn affine(x: Q, y: Q) -> PointQ {
        PointQ { x, y: Some(y) }
    }

    pub fn ints(x: i64, y: i64) -> PointQ {
        PointQ::affine(q(x), q(y))
    }

    pub fn y_or_zero(&self) -> Q {
        self.y.clone().unwrap_or_else(Q::zero)
    }

    /// Evaluates a function `f(x, y)` at the point.
    pub fn eval(&self, f: &Poly) -> Q {
        f.eval_xy(&self.x, &self.y_or_zero())
    }
}

impl fmt::Display for PointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.y {
            None => write!(f, "({})", self.x),
            Some(y) => write!(f, "({}, {})", self.x, y),
        }
    }
}

/// Truncated power series `Σ c_i t^i`, stored with a fixed length.
pub type Series = Vec<Q>;

pub fn ser_zero(n: usize) -> Series {
    vec![Q::zero(); n]
}

pub fn ser_mul(a: &Series, b: &Series, n: usize) -> Series {
    let mut r = ser_zero(n);
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            r[i + j] += ai * bj;
        }
    }
    r
}

pub fn ser_add(a: &Series, b: &Series) -> Series {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) + b.get(i).cloned().unwrap_or_else(Q::zero)).collect()
}

pub fn ser_scale(a: &Series, c: &Q) -> Series {
    a.iter().map(|v| v * c).collect()
}

/// `t^e` truncated to length `n`.
pub fn ser_monomial(e: usize, n: usize) -> Series {
    let mut s = ser_zero(n);
    if e < n {
        s[e] = Q::one();
    }
    s
}

/// Which function serves as local parameter at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalParam {
    /// `t = x − x_P`
    X,
    /// `t = y − y_P` (ramification points of `x`, where `y_P = 0`)
    Y,
}

/// Expansions of `x`, `y` and of `δ(t)` in the local parameter at a point,
/// modulo `t^prec`.
#[derive(Clone, Debug)]
pub struct LocalChart {
    pub point: PointQ,
    pub param: LocalParam,
    pub prec: usize,
    pub xs: Series,
    pub ys: Series,
    /// `δ(t)` as a series.
    pub dt: Series,
}

impl LocalChart {
    pub fn new(curve: &CurveModel, point: &PointQ, prec: usize) -> Result<LocalChart> {
        curve.check_point(point)?;
        let n = prec.max(1);
        match curve {
            CurveModel::Line => {
                let mut xs = ser_zero(n);
                xs[0] = point.x.clone();
                if n > 1 {
                    xs[1] = Q::one();
                }
                let mut dt = ser_zero(n);
                dt[0] = Q::one();
                Ok(LocalChart { point: point.clone(), param: LocalParam::X, prec: n, xs, ys: ser_zero(n), dt })
            }
            CurveModel::Elliptic { .. } => {
                let f = curve.cubic();
                let yp = point.y_or_zero();
                let (param, xs, ys) = if !yp.is_zero() {
                    let mut xs = ser_zero(n);
                    xs[0] = point.x.clone();
                    if n > 1 {
                        xs[1] = Q::one();
                    }
                    // F(t) = f(x_P + t) as a series
                    let shifted = f.compose(&UPoly::new(vec![point.x.clone(), Q::one()]));
                    let mut fs = ser_zero(n);
                    for (i, c) in shifted.coeffs().iter().enumerate() {
                        if i < n {
                            fs[i] = c.clone();
                        }
                    }
                    let mut ys = ser_zero(n);
                    ys[0] = yp.clone();
                    let two_y0 = &yp * q(2);
                    for k in 1..n {
                        let mut s = fs[k].clone();
                        for i in 1..k {
                            s -= &ys[i] * &ys[k - i];
                        }
                        ys[k] = s / &two_y0;
                    }
                    (LocalParam::X, xs, ys)
                } else {
                    // f(x_P + u) = f′(x_P) u + 3 x_P u² + u³ = t²
                    let fp = f.derivative().eval(&point.x);
                    let c2 = q(3) * &point.x;
                    let t2 = ser_monomial(2, n);
                    let mut u = ser_zero(n);
                    for _ in 0..n {
                        let u2 = ser_mul(&u, &u, n);
                        let u3 = ser_mul(&u2, &u, n);
                        let rhs = ser_add(&ser_add(&t2, &ser_scale(&u2, &-c2.clone())), &ser_scale(&u3, &-Q::one()));
                        u = ser_scale(&rhs, &fp.recip());
                    }
                    let mut xs = u;
                    xs[0] += &point.x;
                    let ys = ser_monomial(1, n);
                    (LocalParam::Y, xs, ys)
                };
                let mut chart = LocalChart { point: point.clone(), param, prec: n, xs, ys, dt: ser_zero(n) };
                let dpar = match param {
                    LocalParam::X => curve.delta_x(),
                    LocalParam::Y => curve.delta_y(),
                };
                chart.dt = chart.expand(&dpar);
                Ok(chart)
            }
        }
    }

    /// Expansion of a function of `x, y` modulo `t^prec`.
    pub fn expand(&self, f: &Poly) -> Series {
        let n = self.prec;
        let mut px: Vec<Series> = vec![ser_monomial(0, n)];
        let mut py: Vec<Series> = vec![ser_monomial(0, n)];
        let mut out = ser_zero(n);
        for (m, c) in f.terms() {
            while px.len() <= m.x as usize {
                let s = ser_mul(px.last().unwrap(), &self.xs, n);
                px.push(s);
            }
            while py.len() <= m.y as usize {
                let s = ser_mul(py.last().unwrap(), &self.ys, n);
                py.push(s);
            }
            let term = ser_mul(&px[m.x as usize], &py[m.y as usize], n);
            for i in 0..n {
                out[i] += c * &term[i];
            }
        }
        out
    }

    /// `δ` acting on a series: `δ(F) = δ(t) · dF/dt`. The top coefficient of
    /// the result is not determined by the input and is set to zero.
    pub fn derive(&self, s: &Series) -> Series {
        let n = s.len();
        let mut d = ser_zero(n);
        for i in 1..n {
            d[i - 1] = &s[i] * q(i as i64);
        }
        let mut r = ser_mul(&d, &self.dt, n);
        if n > 0 {
            r[n - 1] = Q::zero();
        }
        r
    }
}

/// Coefficients of `t⁰ … t^k` of `f` at `p`.
pub fn jet(curve: &CurveModel, f: &Poly, p: &PointQ, k: usize) -> Result<Vec<Q>> {
    let chart = LocalChart::new(curve, p, k + 1)?;
    Ok(chart.expand(f))
}

pub fn int_q(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qf;

    fn e() -> CurveModel {
        CurveModel::standard_elliptic()
    }

    #[test]
    fn validate_examples() {
        assert!(CurveModel::elliptic(q(0), q(1)).is_ok());
        assert_eq!(e().discriminant(), q(-432));
        assert_eq!(CurveModel::elliptic(q(0), q(0)).unwrap_err(), Error::SingularCurve);
        assert!(CurveModel::line().validate().is_ok());
    }

    #[test]
    fn jet_examples() {
        let x = Poly::x();
        let y = Poly::y();
        assert_eq!(jet(&CurveModel::Line, &(&x * &x), &PointQ::line(q(0)), 2).unwrap(), vec![q(0), q(0), q(1)]);
        assert_eq!(jet(&e(), &y, &PointQ::ints(0, 1), 3).unwrap(), vec![q(1), q(0), q(0), qf(1, 2)]);
        assert_eq!(jet(&e(), &x, &PointQ::ints(-1, 0), 1).unwrap(), vec![q(-1), q(0)]);
        // x + 1 = t²/3 + … at the ramification point
        let j = jet(&e(), &(&x + &Poly::one()), &PointQ::ints(-1, 0), 3).unwrap();
        assert_eq!(j[..3], [q(0), q(0), qf(1, 3)]);
    }

    #[test]
    fn derivation_examples() {
        let x = Poly::x();
        let y = Poly::y();
        assert_eq!(CurveModel::Line.apply_derivation(&(&x * &x)), x.scale(&q(2)));
        assert_eq!(e().apply_derivation(&x), y.scale(&q(2)));
        assert_eq!(e().apply_derivation(&y), (&x * &x).scale(&q(3)));
        assert!(e().delta_raw(&e().relation().unwrap()).is_zero());
    }

    #[test]
    fn points_over_x() {
        assert_eq!(e().points_over(&q(2)), vec![PointQ::ints(2, -3), PointQ::ints(2, 3)]);
        assert_eq!(e().points_over(&q(-1)), vec![PointQ::ints(-1, 0)]);
        assert!(e().points_over(&q(1)).is_empty());
    }

    #[test]
    fn chart_derivation_matches_global() {
        // jets of δ(f) equal δ applied to the jets of f (up to the lost order)
        let c = e();
        let f = &(&Poly::x() * &Poly::y()) + &Poly::x().pow(2);
        for p in [PointQ::ints(0, 1), PointQ::ints(-1, 0), PointQ::ints(2, -3)] {
            let ch = LocalChart::new(&c, &p, 6).unwrap();
            let lhs = ch.derive(&ch.expand(&f));
            let rhs = ch.expand(&c.apply_derivation(&f));
            assert_eq!(lhs[..5], rhs[..5]);
        }
    }
}
