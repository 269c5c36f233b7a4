//! The group `Pic X ⋊ Aut O(X)` of bimodule data `(I, σ)` and its actions on
//! `Pic X`, on graded ideals of `Ō` and, through automorphisms of `D`, on
//! right ideals.

use std::fmt;

use num_traits::{One, Zero};

use crate::curve::CurveModel;
use crate::dop::{dop_mul, format_dop, DOp, RightIdealD};
use crate::error::{Error, Result};
use crate::ideal::{divide_exact, CIdeal};
use crate::linalg::{solve_left, Row};
use crate::oideal::OIdeal;
use crate::pic::{class_of_ideal, ideal_of_class, DivisorClass};
use crate::poly::{Poly, Q};

/// A supported automorphism of `O(X)`, given by the images of the
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveAut {
    Identity,
    /// `x ↦ αx + β` on the line.
    Affine {
        alpha: Q,
        beta: Q,
    },
    /// `(x, y) ↦ (x, −y)` on an elliptic curve.
    Inversion,
}

impl CurveAut {
    pub fn affine(alpha: Q, beta: Q) -> Result<CurveAut> {
        if alpha.is_zero() {
            return Err(Error::NotAutomorphism("x ↦ β is not invertible".into()));
        }
        if alpha.is_one() && beta.is_zero() {
            return Ok(CurveAut::Identity);
        }
        Ok(CurveAut::Affine { alpha, beta })
    }

    pub fn check(&self, curve: &CurveModel) -> Result<()> {
        match (self, curve.is_elliptic()) {
            (CurveAut::Identity, _) | (CurveAut::Affine { .. }, false) | (CurveAut::Inversion, true) => Ok(()),
            (CurveAut::Affine { .. }, true) => {
                Err(Error::NotAutomorphism("affine maps of x are not supported on an elliptic curve".into()))
            }
            (CurveAut::Inversion, false) => Err(Error::NotAutomorphism("inversion needs an elliptic curve".into())),
        }
    }

    fn coefficients(&self) -> (Q, Q) {
        match self {
            CurveAut::Affine { alpha, beta } => (alpha.clone(), beta.clone()),
            _ => (Q::one(), Q::zero()),
        }
    }

    pub fn image_x(&self) -> Poly {
        let (a, b) = self.coefficients();
        &Poly::x().scale(&a) + &Poly::constant(b)
    }

    pub fn image_y(&self) -> Poly {
        match self {
            CurveAut::Inversion => -&Poly::y(),
            _ => Poly::y(),
        }
    }

    /// `σ ∘ τ`, i.e. `f ↦ σ(τ(f))`.
    pub fn compose(&self, tau: &CurveAut) -> CurveAut {
        match (self, tau) {
            (CurveAut::Identity, t) => t.clone(),
            (s, CurveAut::Identity) => s.clone(),
            (CurveAut::Inversion, CurveAut::Inversion) => CurveAut::Identity,
            _ => {
                let (a, b) = self.coefficients();
                let (c, d) = tau.coefficients();
                CurveAut::affine(&c * &a, &c * &b + d).expect("nonzero product")
            }
        }
    }

    pub fn inverse(&self) -> CurveAut {
        match self {
            CurveAut::Affine { alpha, beta } => {
                CurveAut::affine(alpha.recip(), -(beta / alpha)).expect("nonzero inverse")
            }
            s => s.clone(),
        }
    }

    /// `σ(f) = f(σ(x), σ(y))`
    pub fn apply(&self, curve: &CurveModel, f: &Poly) -> Poly {
        if *self == CurveAut::Identity {
            return curve.reduce(f);
        }
        curve.reduce(&f.substitute(&self.image_x(), &self.image_y(), &Poly::xi()))
    }

    pub fn apply_ideal(&self, i: &OIdeal) -> Result<OIdeal> {
        let c = i.curve();
        OIdeal::new(c, i.generators().iter().map(|g| self.apply(c, g)).collect())
    }

    /// The scalar `c` with `σ∂σ⁻¹ = c∂`: `1/α` on the line and `−1` for the
    /// inversion.
    pub fn xi_scale(&self) -> Q {
        match self {
            CurveAut::Identity => Q::one(),
            CurveAut::Affine { alpha, .. } => alpha.recip(),
            CurveAut::Inversion => -Q::one(),
        }
    }

    /// The lift `σ̂` to `Ō`.
    pub fn lift(&self) -> GradedAut {
        GradedAut { sigma: self.clone() }
    }
}

impl fmt::Display for CurveAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveAut::Identity => write!(f, "id"),
            CurveAut::Inversion => write!(f, "nu"),
            CurveAut::Affine { alpha, beta } => write!(f, "x -> {}*x + {}", alpha, beta),
        }
    }
}

/// `σ̂`: `σ` on `O(X)` and `ξ ↦ cξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAut {
    pub sigma: CurveAut,
}

impl GradedAut {
    pub fn apply(&self, curve: &CurveModel, f: &Poly) -> Poly {
        let s = &self.sigma;
        let xi = Poly::xi().scale(&s.xi_scale());
        curve.reduce(&f.substitute(&s.image_x(), &s.image_y(), &xi))
    }

    pub fn inverse(&self) -> GradedAut {
        GradedAut { sigma: self.sigma.inverse() }
    }

    pub fn apply_ideal(&self, f: &CIdeal) -> Result<CIdeal> {
        let c = f.curve();
        CIdeal::new(c, f.generators().iter().map(|g| self.apply(c, g)).collect())
    }
}

pub fn lift_sigma(sigma: &CurveAut) -> GradedAut {
    sigma.lift()
}

/// An invertible bimodule through its image `(I, σ)`.
#[derive(Clone, Debug)]
pub struct BimoduleDatum {
    pub ideal: OIdeal,
    pub sigma: CurveAut,
}

impl BimoduleDatum {
    pub fn new(ideal: OIdeal, sigma: CurveAut) -> Result<BimoduleDatum> {
        sigma.check(ideal.curve())?;
        Ok(BimoduleDatum { ideal, sigma })
    }

    pub fn identity(curve: &CurveModel) -> BimoduleDatum {
        BimoduleDatum { ideal: OIdeal::unit(curve), sigma: CurveAut::Identity }
    }

    pub fn curve(&self) -> &CurveModel {
        self.ideal.curve()
    }

    pub fn equals(&self, o: &BimoduleDatum) -> Result<bool> {
        Ok(self.sigma == o.sigma && self.ideal.equals(&o.ideal)?)
    }
}

impl fmt::Display for BimoduleDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.ideal, self.sigma)
    }
}

/// `(I, σ)(J, τ) = (I σ(J), στ)`
pub fn sd_mul(p: &BimoduleDatum, q: &BimoduleDatum) -> Result<BimoduleDatum> {
    let ideal = p.ideal.product(&p.sigma.apply_ideal(&q.ideal)?)?;
    Ok(BimoduleDatum { ideal, sigma: p.sigma.compose(&q.sigma) })
}

/// The right action on `Pic X`: `[J].(I, σ) = [σ⁻¹(JI)]`.
pub fn act_pic(p: &BimoduleDatum, c: &DivisorClass) -> Result<DivisorClass> {
    let j = ideal_of_class(p.curve(), c)?;
    act_pic_via(p, &j)
}

/// As [`act_pic`], with the representative `J` supplied.
pub fn act_pic_via(p: &BimoduleDatum, j: &OIdeal) -> Result<DivisorClass> {
    let ji = j.product(&p.ideal)?;
    class_of_ideal(&p.sigma.inverse().apply_ideal(&ji)?)
}

/// `F.(I, σ) = σ̂⁻¹(F·IŌ)`
pub fn act_graded(p: &BimoduleDatum, f: &CIdeal) -> Result<CIdeal> {
    let fi = f.product(&p.ideal.extend())?;
    p.sigma.lift().inverse().apply_ideal(&fi)
}

/// A datum moving the identity class to `c`.
pub fn pic_preimage(curve: &CurveModel, c: &DivisorClass) -> Result<BimoduleDatum> {
    Ok(BimoduleDatum { ideal: ideal_of_class(curve, c)?, sigma: CurveAut::Identity })
}

/// An automorphism `Φ` of `D` restricting to `σ` on `O(X)`, with
/// `Φ(∂) = c∂ + g` and `c` fixed by `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DAut {
    curve: CurveModel,
    sigma: CurveAut,
    d_image: DOp,
}

impl DAut {
    pub fn identity(curve: &CurveModel) -> DAut {
        DAut { curve: curve.clone(), sigma: CurveAut::Identity, d_image: Poly::xi() }
    }

    /// Checks that `[Φ(∂), σ(u)] = σ(δu)` for the coordinates `u`.
    pub fn new(curve: &CurveModel, sigma: CurveAut, d_image: DOp) -> Result<DAut> {
        sigma.check(curve)?;
        let d_image = curve.reduce(&d_image);
        if d_image.max_xi() != 1 || !d_image.xi_coeff(1).is_constant() {
            return Err(Error::NotAutomorphism(format!(
                "image of d must be c*d + g with c constant, got {}",
                format_dop(&d_image)
            )));
        }
        let mut coords = vec![Poly::x()];
        if curve.is_elliptic() {
            coords.push(Poly::y());
        }
        for u in coords {
            let su = sigma.apply(curve, &u);
            let comm = &dop_mul(curve, &d_image, &su) - &dop_mul(curve, &su, &d_image);
            let want = sigma.apply(curve, &curve.apply_derivation(&u));
            if curve.reduce(&comm) != want {
                return Err(Error::NotAutomorphism(format!(
                    "the image {} of d does not satisfy the commutation relations",
                    format_dop(&d_image)
                )));
            }
        }
        Ok(DAut { curve: curve.clone(), sigma, d_image })
    }

    /// `Φ` with `Φ(∂) = σ∂σ⁻¹ + g`.
    pub fn twisted(curve: &CurveModel, sigma: CurveAut, g: &Poly) -> Result<DAut> {
        let d = &Poly::xi().scale(&sigma.xi_scale()) + &curve.reduce(g);
        DAut::new(curve, sigma, d)
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn sigma(&self) -> &CurveAut {
        &self.sigma
    }

    pub fn d_image(&self) -> &DOp {
        &self.d_image
    }

    /// `Φ⁻¹(∂) = c⁻¹∂ − c⁻¹σ⁻¹(g)`
    pub fn inverse(&self) -> DAut {
        let c = self.d_image.xi_coeff(1).coeff(&crate::poly::Mono::ONE);
        let g = self.d_image.xi_coeff(0);
        let si = self.sigma.inverse();
        let cinv = c.recip();
        let d = &Poly::xi().scale(&cinv) - &si.apply(&self.curve, &g).scale(&cinv);
        DAut { curve: self.curve.clone(), sigma: si, d_image: self.curve.reduce(&d) }
    }

    pub fn apply(&self, p: &DOp) -> DOp {
        let curve = &self.curve;
        let mut out = Poly::zero();
        let mut dpow = Poly::one();
        for j in 0..=p.max_xi() {
            let c = self.sigma.apply(curve, &p.xi_coeff(j));
            if !c.is_zero() {
                out = &out + &dop_mul(curve, &c, &dpow);
            }
            dpow = dop_mul(curve, &dpow, &self.d_image);
        }
        curve.reduce(&out)
    }

    pub fn apply_ideal(&self, m: &RightIdealD) -> Result<RightIdealD> {
        RightIdealD::new(&self.curve, m.generators().iter().map(|g| self.apply(g)).collect())
    }
}

/// The isomorphism `φ : D → I*DI` fixing `O(X)`, with `φ(∂) = ∂ + p/h`.
///
/// Here `h ∈ I` with `hO = IJ`, `J` prime to `I`, and `p = δ(h)·j` for some
/// `j ∈ J` with `1 − j ∈ I`, so `p/h − δ(t)/t` is regular for each local
/// generator `t` of `I`.
#[derive(Clone, Debug)]
pub struct IdealTwist {
    curve: CurveModel,
    ideal: OIdeal,
    h: Poly,
    p: Poly,
}

/// `h^{-e}·op`, an operator with coefficients in `O(X)[1/h]`.
struct Fraction {
    op: DOp,
    e: u32,
}

impl IdealTwist {
    pub fn new(i: &OIdeal) -> Result<IdealTwist> {
        let curve = i.curve().clone();
        if i.is_unit()? {
            return Ok(IdealTwist { curve, ideal: i.clone(), h: Poly::one(), p: Poly::zero() });
        }
        let (h, j_ideal) = coprime_cofactor(i)?;
        let j = unit_mod(i, &j_ideal)?;
        let p = curve.reduce(&(&curve.apply_derivation(&h) * &j));
        Ok(IdealTwist { curve, ideal: i.clone(), h, p })
    }

    pub fn ideal(&self) -> &OIdeal {
        &self.ideal
    }

    /// The numerator and denominator of `φ(∂) − ∂`.
    pub fn connection(&self) -> (&Poly, &Poly) {
        (&self.p, &self.h)
    }

    /// `A·h^{-b} = h^{-(b+k)}·C` with `k` the order of `A`; returns `C`.
    fn pass_denominator(&self, a: &DOp, b: u32) -> DOp {
        let curve = &self.curve;
        let k = a.max_xi();
        let dh = curve.apply_derivation(&self.h);
        // P_i with δ^i(h^{-b}) = h^{-b-i} P_i
        let mut ps = vec![Poly::one()];
        for i in 0..k {
            let last = &ps[i as usize];
            let next =
                &(&self.h * &curve.apply_derivation(last)) - &(&dh * last).scale(&Q::from_integer((b + i).into()));
            ps.push(curve.reduce(&next));
        }
        let hpow: Vec<Poly> = (0..=k).map(|e| curve.reduce(&self.h.pow(e))).collect();
        let mut out = Poly::zero();
        for j in 0..=k {
            let aj = a.xi_coeff(j);
            if aj.is_zero() {
                continue;
            }
            let mut binom = Q::one();
            for i in 0..=j {
                let coeff = &(&(&aj * &hpow[(k - j) as usize]) * &hpow[(j - i) as usize]) * &ps[i as usize];
                out = &out + &(&coeff.scale(&binom) * &Poly::xi().pow(j - i));
                binom = binom * Q::from_integer((j - i).into()) / Q::from_integer((i + 1).into());
            }
        }
        curve.reduce(&out)
    }

    fn mul(&self, a: &Fraction, b: &Fraction) -> Fraction {
        let k = a.op.max_xi();
        let c = self.pass_denominator(&a.op, b.e);
        Fraction { op: dop_mul(&self.curve, &c, &b.op), e: a.e + b.e + k }
    }

    /// `φ⁻¹(θ)` for `θ ∈ DI`; the result lies in `D`.
    pub fn pull_back(&self, theta: &DOp) -> Result<DOp> {
        let curve = &self.curve;
        if self.p.is_zero() {
            return Ok(curve.reduce(theta));
        }
        // φ⁻¹(∂) = h^{-1}(h∂ − p)
        let step = Fraction { op: &(&self.h * &Poly::xi()) - &self.p, e: 1 };
        let mut powers = vec![Fraction { op: Poly::one(), e: 0 }];
        for j in 0..theta.max_xi() {
            let next = self.mul(&powers[j as usize], &step);
            powers.push(next);
        }
        let top = powers.iter().map(|f| f.e).max().unwrap_or(0);
        let mut num = Poly::zero();
        for (j, f) in powers.iter().enumerate() {
            let aj = theta.xi_coeff(j as u32);
            if !aj.is_zero() {
                num = &num + &(&(&aj * &self.h.pow(top - f.e)) * &f.op);
            }
        }
        let num = curve.reduce(&num);
        let den = curve.reduce(&self.h.pow(top));
        let mut out = Poly::zero();
        for j in 0..=num.max_xi() {
            let c = num.xi_coeff(j);
            if c.is_zero() {
                continue;
            }
            let q = divide_exact(curve, &c, &den)
                .ok_or_else(|| Error::Internal(format!("{} does not lie in DI", format_dop(theta))))?;
            out = &out + &(&q * &Poly::xi().pow(j));
        }
        Ok(curve.reduce(&out))
    }

    /// `φ⁻¹(M·I)`, the right ideal isomorphic to `M ⊗ (DI)_φ`.
    pub fn apply_to(&self, m: &RightIdealD) -> Result<RightIdealD> {
        let mut gens = Vec::new();
        for g in m.generators() {
            for f in self.ideal.generators() {
                gens.push(self.pull_back(&dop_mul(&self.curve, g, f))?);
            }
        }
        RightIdealD::new(&self.curve, gens)
    }
}

/// Some `h ∈ I` with `hO = IJ` and `I + J = O(X)`, together with `J`.
fn coprime_cofactor(i: &OIdeal) -> Result<(Poly, OIdeal)> {
    let curve = i.curve();
    let basis = i.basis()?;
    let mut candidates: Vec<Poly> = basis.clone();
    for a in 0..basis.len() {
        for b in 0..basis.len() {
            if a != b {
                for c in 1..=3 {
                    candidates.push(&basis[a] + &basis[b].scale(&Q::from_integer(c.into())));
                }
                candidates.push(curve.reduce(&(&basis[a] + &(&basis[b] * &Poly::x()))));
            }
        }
    }
    for h in candidates {
        let gens = CIdeal::principal(curve, h.clone())?
            .colon(&i.extend())?
            .intersect_ring()?
            .ok_or_else(|| Error::Internal("zero colon ideal".into()))?;
        let j = OIdeal::new(curve, gens)?;
        if i.sum(&j)?.is_unit()? {
            return Ok((h, j));
        }
    }
    Err(Error::Internal(format!("no element of {} with cofactor prime to it", i)))
}

/// Some `j ∈ J` with `j ≡ 1 mod I`, for coprime `I` and `J`.
fn unit_mod(i: &OIdeal, j: &OIdeal) -> Result<Poly> {
    let curve = i.curve();
    let std = i.standard_monomials()?;
    let coords = |f: &Poly| -> Result<Row> {
        let nf = i.extend().normal_form(f)?;
        Ok(std.iter().map(|s| nf.coeff(&s.lm().unwrap())).collect())
    };
    let target = coords(&Poly::one())?;
    let jb = j.basis()?;
    for weight in (0..).step_by(2).take(16) {
        let mut span = Vec::new();
        let mut rows = Vec::new();
        for g in &jb {
            for b in 0..=u32::from(curve.is_elliptic()) {
                for a in 0..=weight / 2 {
                    if 2 * a + 3 * b <= weight {
                        let s = curve.reduce(&(g * &Poly::mono(crate::poly::Mono::new(a, b, 0))));
                        rows.push(coords(&s)?);
                        span.push(s);
                    }
                }
            }
        }
        if let Some(c) = solve_left(&rows, &target) {
            let mut out = Poly::zero();
            for (ci, s) in c.iter().zip(&span) {
                out = &out + &s.scale(ci);
            }
            return Ok(curve.reduce(&out));
        }
    }
    Err(Error::Internal("ideals are not coprime".into()))
}

/// `Φ⁻¹(φ_I⁻¹(M·I))`: the right ideal isomorphic to `M ⊗ (DI)_{φ_I ∘ Φ}`,
/// a bimodule with datum `(I, σ_Φ)`.
pub fn act_dideal(phi: &DAut, i: &OIdeal, m: &RightIdealD) -> Result<RightIdealD> {
    phi.inverse().apply_ideal(&IdealTwist::new(i)?.apply_to(m)?)
}
