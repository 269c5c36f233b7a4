//! Buchberger's algorithm for one-sided ideals.
//!
//! The same engine runs in the commutative rings and in the operator algebras:
//! an [`Algebra`] only has to say how a polynomial is multiplied on the right
//! by a monomial. For the operator algebras used here the leading monomial of
//! `p · m` is `lm(p) · m` and its leading coefficient is `lc(p)`, which is all
//! the reduction step relies on.

use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly};

pub const DEFAULT_PAIR_BUDGET: usize = 10_000;

pub trait Algebra {
    fn mul_mono_right(&self, p: &Poly, m: &Mono) -> Poly;
    fn is_commutative(&self) -> bool;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Commutative;

impl Algebra for Commutative {
    fn mul_mono_right(&self, p: &Poly, m: &Mono) -> Poly {
        p.mul_mono(m)
    }
    fn is_commutative(&self) -> bool {
        true
    }
}

/// Cooperative cancellation flag for long runs.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> CancelToken {
        CancelToken::default()
    }
    pub fn cancel(&self) {
        self.0.store(true, AtomicOrdering::Relaxed);
    }
    pub fn is_cancelled(&self) -> bool {
        self.0.load(AtomicOrdering::Relaxed)
    }
}

#[derive(Clone, Debug)]
pub struct GbOptions {
    pub pair_budget: usize,
    pub cancel: Option<CancelToken>,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { pair_budget: DEFAULT_PAIR_BUDGET, cancel: None }
    }
}

/// Full normal form of `f` modulo `basis` (right reduction).
pub fn normal_form<A: Algebra>(alg: &A, f: &Poly, basis: &[Poly]) -> Poly {
    let mut p = f.clone();
    let mut rem = Poly::zero();
    while let Some((m, c)) = p.lt() {
        let div = basis.iter().find(|g| g.lm().is_some_and(|gm| gm.divides(&m)));
        match div {
            Some(g) => {
                let gm = g.lm().unwrap();
                let prod = alg.mul_mono_right(g, &gm.quotient(&m));
                let coef = &c / &g.lc();
                p = &p - &prod.scale(&coef);
            }
            None => {
                p.pop_lt();
                rem.add_term(m, c);
            }
        }
    }
    rem
}

fn s_poly<A: Algebra>(alg: &A, f: &Poly, g: &Poly) -> Poly {
    let fm = f.lm().unwrap();
    let gm = g.lm().unwrap();
    let l = fm.lcm(&gm);
    let a = alg.mul_mono_right(f, &fm.quotient(&l)).scale(&f.lc().recip());
    let b = alg.mul_mono_right(g, &gm.quotient(&l)).scale(&g.lc().recip());
    &a - &b
}

/// Reduced Gröbner basis of the one-sided ideal generated by `gens`, sorted by
/// increasing leading monomial. An empty result means the zero ideal.
pub fn groebner<A: Algebra>(alg: &A, gens: &[Poly], opts: &GbOptions) -> Result<Vec<Poly>> {
    let mut basis: Vec<Poly> = Vec::new();
    let mut pairs: Vec<(usize, usize, Mono)> = Vec::new();

    let insert = |basis: &mut Vec<Poly>, pairs: &mut Vec<(usize, usize, Mono)>, p: Poly| {
        let p = p.monic();
        let pm = p.lm().unwrap();
        let idx = basis.len();
        for (i, b) in basis.iter().enumerate() {
            pairs.push((i, idx, b.lm().unwrap().lcm(&pm)));
        }
        basis.push(p);
    };

    let mut sorted: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    sorted.sort_by_key(|a| a.lm());
    for g in sorted {
        let r = normal_form(alg, &g, &basis);
        if !r.is_zero() {
            insert(&mut basis, &mut pairs, r);
        }
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        if let Some(tok) = &opts.cancel {
            if tok.is_cancelled() {
                return Err(Error::Cancelled);
            }
        }
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.2.cmp(&b.2).then(a.1.cmp(&b.1)).then(a.0.cmp(&b.0)))
            .unwrap();
        let (i, j, _) = pairs.swap_remove(k);
        let (fm, gm) = (basis[i].lm().unwrap(), basis[j].lm().unwrap());
        if alg.is_commutative() && fm.coprime(&gm) {
            continue;
        }
        processed += 1;
        if processed > opts.pair_budget {
            return Err(Error::BudgetExhausted { budget: opts.pair_budget });
        }
        let s = s_poly(alg, &basis[i], &basis[j]);
        let r = normal_form(alg, &s, &basis);
        if !r.is_zero() {
            insert(&mut basis, &mut pairs, r);
        }
    }
    Ok(reduce_basis(alg, basis))
}

/// Turns a Gröbner basis into the reduced one.
pub fn reduce_basis<A: Algebra>(alg: &A, basis: Vec<Poly>) -> Vec<Poly> {
    let mut minimal: Vec<Poly> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by_key(|a| a.lm());
    for g in sorted {
        let gm = g.lm().unwrap();
        if minimal.iter().any(|h| h.lm().unwrap().divides(&gm)) {
            continue;
        }
        minimal.push(g.monic());
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let r = normal_form(alg, &minimal[i], &others);
        debug_assert!(!r.is_zero());
        out.push(r.monic());
    }
    out.sort_by_key(|a| a.lm());
    out
}

/// True when every S-polynomial of `basis` reduces to zero.
pub fn is_groebner<A: Algebra>(alg: &A, basis: &[Poly]) -> bool {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let s = s_poly(alg, &basis[i], &basis[j]);
            if !normal_form(alg, &s, basis).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn leading_monomials(basis: &[Poly]) -> Vec<Mono> {
    basis.iter().filter_map(|p| p.lm()).collect()
}

pub fn all_coefficients_nonzero(p: &Poly) -> bool {
    p.terms().all(|(_, c)| !c.is_zero())
}
