//! Good filtrations `M_k = Σ g_i D_{≤k−s_i}` and the image of the class of
//! `gr M` under `rk ⊕ det`.
//!
//! The Rees module `R' = ⊕ M_k h^k` lives in the homogenized operator algebra.
//! `N = R'/hR'` sits in `0 → T → N → N̄ → 0` with `N̄` its image in `Ō` and
//! `T ≅ (R' : h)/R'` shifted by one, so `det N = γ̄(N̄) + det T`. The torsion
//! part is read off the `O(X)`-module `T_K` in a large degree `K`.

use num_traits::Zero;

use crate::classify::{extract_i, gamma_bar};
use crate::curve::{CurveModel, PointQ};
use crate::dop::{OreAlg, RightIdealD};
use crate::error::{Error, Result};
use crate::groebner::{groebner, normal_form, GbOptions};
use crate::ideal::CIdeal;
use crate::linalg::{charpoly, mat_pow, mat_sub_scalar, nullspace, rank, solve_left, Row};
use crate::oideal::OIdeal;
use crate::pic::{class_by_reduction, pic_add, pic_sub, DivisorClass};
use crate::poly::{Mono, Poly, Q};
use crate::upoly::UPoly;

/// `(rk, det)` of a graded module of rank one. `torsion` lists the lengths of
/// the torsion part at rational points; `torsion_length` is its total length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G0Image {
    pub rank: usize,
    pub det: DivisorClass,
    pub torsion: Vec<(PointQ, usize)>,
    pub torsion_length: usize,
}

/// Homogeneous generators `h^{e_i}·hom(g_i)` of the Rees module, placed in
/// degrees `s_i + c` with `c` the least shift making every `e_i ≥ 0`.
pub fn rees_generators(m: &RightIdealD, shifts: &[i64]) -> Result<Vec<Poly>> {
    let gens = m.generators();
    if gens.len() != shifts.len() {
        return Err(Error::Invalid(format!("{} shifts for {} generators", shifts.len(), gens.len())));
    }
    let c = gens.iter().zip(shifts).map(|(g, s)| g.max_xi() as i64 - s).max().unwrap_or(0);
    Ok(gens
        .iter()
        .zip(shifts)
        .map(|(g, s)| {
            let o = g.max_xi();
            let e = (s + c - o as i64) as u32;
            g.map_monos(|mm| Mono { h: o - mm.xi + e, ..*mm })
        })
        .collect())
}

fn degree(p: &Poly) -> u32 {
    p.lm().map_or(0, |m| m.xi + m.h)
}

/// The `O(X)`-module `T_n = (R' : h)_n / R'_n` with matrices for `x` and `y`.
struct TorsionPiece {
    x: Vec<Row>,
    y: Vec<Row>,
}

fn torsion_piece(curve: &CurveModel, alg: &OreAlg, g1: &[Poly], g2: &[Poly], n: u32) -> Result<TorsionPiece> {
    let ymax = if curve.is_elliptic() { 1 } else { 0 };
    let alpha = |g: &[Poly], j: u32, b: u32| -> Option<u32> {
        g.iter().filter_map(|p| p.lm()).filter(|m| m.t == 0 && m.xi <= j && m.h <= n - j && m.y <= b).map(|m| m.x).min()
    };
    let mut monos = Vec::new();
    for j in 0..=n {
        for b in 0..=ymax {
            let a2 = alpha(g2, j, b);
            let a1 = alpha(g1, j, b);
            match (a1, a2) {
                (_, None) => {}
                (None, Some(_)) => {
                    return Err(Error::Internal("torsion of the Rees quotient is not of finite length".into()))
                }
                (Some(a1), Some(a2)) => {
                    for a in a2..a1 {
                        monos.push(Mono { x: a, y: b, xi: j, h: n - j, t: 0 });
                    }
                }
            }
        }
    }
    let reps: Vec<Poly> = monos
        .iter()
        .map(|mu| {
            let g = g2.iter().find(|g| g.lm().is_some_and(|l| l.divides(mu))).expect("monomial in lm(R':h)");
            let v = crate::groebner::Algebra::mul_mono_right(alg, g, &g.lm().unwrap().quotient(mu));
            curve.reduce(&normal_form(alg, &v, g1))
        })
        .collect();
    let mut cols: Vec<Mono> = Vec::new();
    let coords = |p: &Poly, cols: &mut Vec<Mono>| -> Vec<(usize, Q)> {
        p.terms()
            .map(|(m, c)| {
                let i = cols.iter().position(|x| x == m).unwrap_or_else(|| {
                    cols.push(*m);
                    cols.len() - 1
                });
                (i, c.clone())
            })
            .collect()
    };
    let rep_coords: Vec<Vec<(usize, Q)>> = reps.iter().map(|r| coords(r, &mut cols)).collect();
    let images = |u: &Poly, cols: &mut Vec<Mono>| -> Vec<Vec<(usize, Q)>> {
        reps.iter()
            .map(|r| {
                let p = curve.reduce(&normal_form(alg, &alg.mul(r, u), g1));
                coords(&p, cols)
            })
            .collect()
    };
    let ximg = images(&Poly::x(), &mut cols);
    let yimg = if curve.is_elliptic() { images(&Poly::y(), &mut cols) } else { Vec::new() };
    let dense = |v: &[(usize, Q)]| -> Row {
        let mut r = vec![Q::zero(); cols.len()];
        for (i, c) in v {
            r[*i] = c.clone();
        }
        r
    };
    let basis: Vec<Row> = rep_coords.iter().map(|v| dense(v)).collect();
    if rank(&basis) != basis.len() {
        return Err(Error::Internal("torsion representatives are dependent".into()));
    }
    let matrix = |img: &[Vec<(usize, Q)>]| -> Result<Vec<Row>> {
        img.iter()
            .map(|v| {
                solve_left(&basis, &dense(v)).ok_or_else(|| Error::Internal("torsion not stable under O(X)".into()))
            })
            .collect()
    };
    let x = matrix(&ximg)?;
    let y = if curve.is_elliptic() { matrix(&yimg)? } else { Vec::new() };
    Ok(TorsionPiece { x, y })
}

/// Lengths of a finite-length `O(X)`-module at its rational points, from the
/// commuting matrices of `x` and `y` (acting on row vectors).
fn point_lengths(curve: &CurveModel, t: &TorsionPiece) -> Vec<(PointQ, usize)> {
    let n = t.x.len();
    if n == 0 {
        return Vec::new();
    }
    let roots = UPoly::new(charpoly(&t.x)).rational_roots();
    let mut out = Vec::new();
    for r in roots {
        let kx = mat_pow(&mat_sub_scalar(&t.x, &r), n);
        for p in curve.points_over(&r) {
            let mut stack: Vec<Row> = transpose(&kx);
            if let Some(y0) = &p.y {
                stack.extend(transpose(&mat_pow(&mat_sub_scalar(&t.y, y0), n)));
            }
            let len = nullspace(&stack, n).len();
            if len > 0 {
                out.push((p, len));
            }
        }
    }
    out
}

fn reduce(v: &mut Row, echelon: &[Row], pivots: &[usize]) {
    for (r, &p) in echelon.iter().zip(pivots) {
        if !v[p].is_zero() {
            let c = v[p].clone();
            for (a, b) in v.iter_mut().zip(r) {
                *a -= &c * b;
            }
        }
    }
}

fn act(v: &Row, m: &[Row]) -> Row {
    (0..m.len()).map(|j| v.iter().zip(m).map(|(a, r)| a * &r[j]).sum()).collect()
}

/// The annihilator of `v`, an ideal of colength `dim O(X)·v`.
fn annihilator(curve: &CurveModel, t: &TorsionPiece, v: &Row, dim: usize) -> Result<OIdeal> {
    let mut weight = 2 * dim as u32 + 3;
    loop {
        let mut monos = Vec::new();
        let mut images = Vec::new();
        let mut w = v.clone();
        for a in 0..=weight / 2 {
            monos.push(Mono::new(a, 0, 0));
            images.push(w.clone());
            if 2 * a + 3 <= weight {
                monos.push(Mono::new(a, 1, 0));
                images.push(act(&w, &t.y));
            }
            w = act(&w, &t.x);
        }
        // columns are monomials; kernel of the transpose gives relations
        let rows: Vec<Row> = (0..v.len()).map(|i| images.iter().map(|im| im[i].clone()).collect()).collect();
        let gens: Vec<Poly> = nullspace(&rows, monos.len())
            .into_iter()
            .map(|k| Poly::from_terms(monos.iter().zip(k).map(|(m, c)| (*m, c))))
            .collect();
        if !gens.is_empty() {
            let ann = OIdeal::new(curve, gens)?;
            if ann.colength()? == dim {
                return Ok(ann);
            }
        }
        weight += 2;
    }
}

/// `det T = −Σ [ann(v_k)]` along a filtration of `T` with cyclic quotients.
fn torsion_det(curve: &CurveModel, t: &TorsionPiece) -> Result<DivisorClass> {
    let mut det = DivisorClass::Identity;
    if !curve.is_elliptic() {
        return Ok(det);
    }
    let mut cur = TorsionPiece { x: t.x.clone(), y: t.y.clone() };
    while !cur.x.is_empty() {
        let n = cur.x.len();
        let mut v = vec![Q::zero(); n];
        v[0] = Q::from_integer(1.into());
        let mut orbit = vec![v.clone()];
        let mut w = v.clone();
        for _ in 0..n {
            orbit.push(act(&w, &cur.y));
            w = act(&w, &cur.x);
            orbit.push(w.clone());
        }
        let pivots = crate::linalg::rref(&mut orbit);
        let dim = orbit.len();
        let ann = annihilator(curve, &cur, &v, dim)?;
        det = pic_sub(curve, &det, &class_by_reduction(&ann)?);
        let rest: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let induced = |m: &[Row]| -> Vec<Row> {
            rest.iter()
                .map(|&j| {
                    let mut r = m[j].clone();
                    reduce(&mut r, &orbit, &pivots);
                    rest.iter().map(|&k| r[k].clone()).collect()
                })
                .collect()
        };
        cur = TorsionPiece { x: induced(&cur.x), y: induced(&cur.y) };
    }
    Ok(det)
}

fn transpose(a: &[Row]) -> Vec<Row> {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// `(rk, det)` of `gr M` for the filtration with generator shifts `shifts`.
pub fn g0_image(m: &RightIdealD, shifts: &[i64]) -> Result<G0Image> {
    g0_image_with(m, shifts, &GbOptions::default())
}

pub fn g0_image_with(m: &RightIdealD, shifts: &[i64], opts: &GbOptions) -> Result<G0Image> {
    let curve = m.curve().clone();
    let alg = OreAlg::homogenized(&curve);
    let rees = rees_generators(m, shifts)?;
    let mut all = rees.clone();
    if let Some(r) = curve.relation() {
        all.push(r);
    }
    let g1 = groebner(&alg, &all, opts)?;
    let g2: Vec<Poly> = g1
        .iter()
        .map(|g| if g.min_h() > 0 { g.map_monos(|mm| Mono { h: mm.h - 1, ..*mm }) } else { g.clone() })
        .collect();

    let image: Vec<Poly> = rees.iter().filter(|g| g.min_h() == 0).map(|g| curve.reduce(&top_h_free(g))).collect();
    let nbar = CIdeal::new(&curve, image)?;
    let nbar_class = class_by_reduction(&extract_i(&nbar)?)?;

    let base = g1.iter().chain(&g2).map(degree).max().unwrap_or(0) + 1;
    let pieces = [base, base + 1].map(|n| torsion_piece(&curve, &alg, &g1, &g2, n));
    let mut dets = Vec::new();
    for p in &pieces {
        let p = p.as_ref().map_err(Clone::clone)?;
        dets.push((p.x.len(), torsion_det(&curve, p)?));
    }
    if dets[0] != dets[1] {
        return Err(Error::Internal("torsion of the Rees quotient did not stabilize".into()));
    }
    let piece = pieces[0].as_ref().map_err(Clone::clone)?;
    let (torsion_length, tdet) = dets.swap_remove(0);
    Ok(G0Image {
        rank: 1,
        det: pic_add(&curve, &nbar_class, &tdet),
        torsion: point_lengths(&curve, piece),
        torsion_length,
    })
}

/// The `h`-free part of a homogeneous element, i.e. its image in `Ō`.
fn top_h_free(g: &Poly) -> Poly {
    Poly::from_terms(g.terms().filter(|(m, _)| m.h == 0).map(|(m, c)| (*m, c.clone())))
}

/// `(rk, det)` for the filtration induced from the order filtration of `D`.
pub fn induced_g0_image(m: &RightIdealD) -> Result<G0Image> {
    Ok(G0Image { rank: 1, det: gamma_bar(&m.gr_ideal()?)?, torsion: Vec::new(), torsion_length: 0 })
}

/// Both images, for comparison.
pub fn compare_filtrations(m: &RightIdealD, s1: &[i64], s2: &[i64]) -> Result<(G0Image, G0Image)> {
    Ok((g0_image(m, s1)?, g0_image(m, s2)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn same(a: &G0Image, b: &G0Image) -> bool {
        a.rank == b.rank && a.det == b.det
    }

    #[test]
    fn m1_shifts() {
        let l = CurveModel::Line;
        let m1 = RightIdealD::parse(&l, &["x^2", "x*d - 1"]).unwrap();
        let a = g0_image(&m1, &[0, 0]).unwrap();
        let b = g0_image(&m1, &[0, 1]).unwrap();
        assert!(same(&a, &b));
        assert!(same(&a, &induced_g0_image(&m1).unwrap()));
        assert!(a.torsion.is_empty() && b.torsion.is_empty());
    }

    #[test]
    fn maximal_ideal_shifts() {
        let l = CurveModel::Line;
        let m = RightIdealD::parse(&l, &["x"]).unwrap();
        let a = g0_image(&m, &[0]).unwrap();
        let b = g0_image(&m, &[2]).unwrap();
        assert!(same(&a, &b));
        assert!(a.torsion.is_empty());

        let e = CurveModel::standard_elliptic();
        let mp = RightIdealD::parse(&e, &["x", "y - 1"]).unwrap();
        let a = g0_image(&mp, &[0, 0]).unwrap();
        let b = g0_image(&mp, &[0, 1]).unwrap();
        let c = induced_g0_image(&mp).unwrap();
        assert!(same(&a, &b) && same(&a, &c));
        assert_eq!(a.det, DivisorClass::Point(PointQ::ints(0, -1)));
        // N̄ = (x) has class zero; the torsion sits at the second zero of x
        assert!(a.torsion.is_empty());
        assert_eq!(b.torsion, vec![(PointQ::ints(0, -1), 1)]);
    }

    #[test]
    fn shift_count_checked() {
        let l = CurveModel::Line;
        let m = RightIdealD::parse(&l, &["x"]).unwrap();
        assert!(g0_image(&m, &[0, 1]).is_err());
    }
}
