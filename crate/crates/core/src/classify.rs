//! The classification invariants: the ideal `I` with `F** = IŌ`, the integer
//! `n`, the Hilbert-point ideal `F·I⁻¹`, and the class maps `γ̄`, `γ`.

use crate::dop::{normalize_over_k, RightIdealD};
use crate::error::{Error, Result};
use crate::field::KField;
use crate::ideal::CIdeal;
use crate::oideal::OIdeal;
use crate::pic::{class_of_ideal, DivisorClass};
use crate::poly::Mono;

/// The commutative analogue of fat normalization: an isomorphic ideal of
/// `Ō` meeting `O(X)`.
pub fn fat_normalize_graded(f: &CIdeal) -> Result<CIdeal> {
    if f.intersect_ring()?.is_some() {
        return Ok(f.clone());
    }
    let k = KField::commutative(f.curve());
    let g = CIdeal::new(f.curve(), normalize_over_k(&k, &f.basis()?)?)?;
    if g.intersect_ring()?.is_none() {
        return Err(Error::Internal("graded normalization did not produce a fat ideal".into()));
    }
    Ok(g)
}

/// `I = F** ∩ O(X)`, checked against `F** = IŌ`.
pub fn extract_i(f: &CIdeal) -> Result<OIdeal> {
    let f = fat_normalize_graded(f)?;
    let hull = f.divisorial_hull()?;
    let gens = hull.intersect_ring()?.ok_or_else(|| Error::Internal("hull of a fat ideal is not fat".into()))?;
    let i = OIdeal::new(f.curve(), gens)?;
    if !hull.equals(&i.extend())? {
        return Err(Error::Internal("divisorial hull is not extended from O(X)".into()));
    }
    Ok(i)
}

/// `F·I⁻¹`, computed as `(F : IŌ)` and checked by multiplying back.
pub fn hilb_point(f: &CIdeal) -> Result<CIdeal> {
    let f = fat_normalize_graded(f)?;
    let i = extract_i(&f)?.extend();
    let g = f.colon(&i)?;
    if !g.product(&i)?.equals(&f)? {
        return Err(Error::Internal("F is not divisible by its hull".into()));
    }
    Ok(g)
}

pub fn n_of_graded(f: &CIdeal) -> Result<usize> {
    hilb_point(f)?.colength()?.ok_or_else(|| Error::Internal("Hilbert-point ideal of infinite colength".into()))
}

pub fn gamma_bar(f: &CIdeal) -> Result<DivisorClass> {
    class_of_ideal(&extract_i(f)?)
}

pub fn graded_of(m: &RightIdealD) -> Result<CIdeal> {
    m.fat_normalize()?.gr_ideal()
}

pub fn n_invariant(m: &RightIdealD) -> Result<usize> {
    n_of_graded(&graded_of(m)?)
}

pub fn gamma(m: &RightIdealD) -> Result<DivisorClass> {
    gamma_bar(&graded_of(m)?)
}

/// `dim F**/F`, counted from the staircases of the two leading-monomial
/// ideals instead of through `F·I⁻¹`.
pub fn hull_codimension(f: &CIdeal) -> Result<usize> {
    let f = fat_normalize_graded(f)?;
    let hull = f.divisorial_hull()?;
    let lf: Vec<Mono> = f.full_basis()?.iter().filter_map(|g| g.lm()).collect();
    let lh: Vec<Mono> = hull.full_basis()?.iter().filter_map(|g| g.lm()).collect();
    let top = lf.iter().chain(&lh).map(|m| m.xi).max().unwrap_or(0);
    let ymax = if f.curve().is_elliptic() { 1 } else { 0 };
    let corner = |l: &[Mono], j: u32, b: u32| l.iter().filter(|m| m.xi <= j && m.y <= b).map(|m| m.x).min();
    let mut n = 0usize;
    for j in 0..=top {
        for b in 0..=ymax {
            let step = match (corner(&lf, j, b), corner(&lh, j, b)) {
                (Some(a), Some(c)) => {
                    a.checked_sub(c).ok_or_else(|| Error::Internal("F is not inside its hull".into()))?
                }
                (None, None) => 0,
                _ => return Err(Error::Internal("F has infinite codimension in its hull".into())),
            };
            if j == top && step > 0 {
                return Err(Error::Internal("F has infinite codimension in its hull".into()));
            }
            n += step as usize;
        }
    }
    Ok(n)
}

/// Everything the CLI reports about a graded ideal.
#[derive(Clone, Debug)]
pub struct Classification {
    pub class: DivisorClass,
    pub n: usize,
    pub i: OIdeal,
    pub hilb: CIdeal,
}

pub fn classify_graded(f: &CIdeal) -> Result<Classification> {
    let i = extract_i(f)?;
    let hilb = hilb_point(f)?;
    let n = hilb.colength()?.ok_or_else(|| Error::Internal("infinite colength".into()))?;
    Ok(Classification { class: class_of_ideal(&i)?, n, i, hilb })
}
