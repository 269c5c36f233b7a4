//! Seeded instance batteries and the checks run on them. Every check compares
//! two values computed along different code paths and records the outcome
//! as a [`VerifyReport`].

use std::fmt::Display;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ch::{ideal_to_subspace, subspace_to_ideal, PDSubspace, PrimaryData};
use crate::classify::{extract_i, gamma, gamma_bar, hilb_point, hull_codimension, n_invariant, n_of_graded};
use crate::curve::{CurveModel, PointQ};
use crate::dop::{dop_apply, format_dop, parse_dop, RightIdealD};
use crate::error::Result;
use crate::filtration::{g0_image, induced_g0_image, G0Image};
use crate::ideal::CIdeal;
use crate::linalg::{rank, Row};
use crate::oideal::OIdeal;
use crate::parse::format_poly;
use crate::pic::{
    class_of_ideal, ideal_of_class, pic_add, pic_mul, pic_neg, pic_sub, point_class, sample_classes_elliptic,
    sample_points_elliptic, sample_points_line, Divisor, DivisorClass,
};
use crate::picd::{act_dideal, act_graded, act_pic, act_pic_via, pic_preimage, sd_mul, BimoduleDatum, CurveAut, DAut};
use crate::poly::{q, qf, Poly, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl VerifyReport {
    fn new(theorem: &str, instance: String, lhs: String, rhs: String, pass: bool) -> VerifyReport {
        VerifyReport { theorem: theorem.into(), instance, lhs, rhs, pass }
    }

    fn failed(theorem: &str, instance: String, err: &crate::Error) -> VerifyReport {
        VerifyReport::new(theorem, instance, format!("error: {}", err), String::new(), false)
    }

    fn check<T: PartialEq + Display>(theorem: &str, instance: String, lhs: T, rhs: T) -> VerifyReport {
        let pass = lhs == rhs;
        VerifyReport::new(theorem, instance, lhs.to_string(), rhs.to_string(), pass)
    }
}

/// Runs `f`, turning an error into a failed report.
fn guarded(theorem: &str, instance: String, f: impl FnOnce() -> Result<VerifyReport>) -> VerifyReport {
    match f() {
        Ok(r) => r,
        Err(e) => VerifyReport::failed(theorem, instance, &e),
    }
}

pub fn describe_dideal(m: &RightIdealD) -> String {
    let g: Vec<String> = m.generators().iter().map(format_dop).collect();
    format!("({})D", g.join(", "))
}

pub fn describe_cideal(f: &CIdeal) -> String {
    let g: Vec<String> = f.generators().iter().map(format_poly).collect();
    format!("({})", g.join(", "))
}

fn describe_g0(g: &G0Image) -> String {
    format!("rank {}, det {}", g.rank, g.det)
}

pub const COMM: &str = "gamma-via-gr";
pub const DIV_ROUTE: &str = "gamma-via-div";
pub const CH_ROUNDTRIP: &str = "ch-roundtrip-subspace";
pub const CH_ROUNDTRIP_IDEAL: &str = "ch-roundtrip-ideal";
pub const CH_CODIM: &str = "ch-codim-colength";
pub const CH_PRODUCT: &str = "ch-product-formula";
pub const CH_MONOTONE: &str = "ch-monotone";
pub const CH_SCALING: &str = "ch-scaling";
pub const GR_EXTENDED: &str = "gr-of-extended";
pub const EQUIVARIANCE: &str = "gr-equivariance";
pub const GAMMA_EQUIVARIANCE: &str = "gamma-bar-equivariance";
pub const N_INVARIANCE: &str = "n-invariance";
pub const ACTION_LAW: &str = "action-law";
pub const REPRESENTATIVE: &str = "action-representative";
pub const TRANSITIVITY: &str = "transitivity";
pub const FILTRATION: &str = "filtration-independence";
pub const FILTRATION_INDUCED: &str = "filtration-vs-induced";
pub const DET_TRIVIAL: &str = "det-triviality";
pub const HILB_COLENGTH: &str = "hilb-colength";
pub const GOLDEN: &str = "golden-weyl";
pub const PIC_ORACLE: &str = "pic-arithmetic";

/// `γ(M)` against `γ̄(gr M)`, the latter normalized only at the graded level.
pub fn verify_comm(m: &RightIdealD) -> VerifyReport {
    let inst = describe_dideal(m);
    guarded(COMM, inst.clone(), || Ok(VerifyReport::check(COMM, inst, gamma(m)?, gamma_bar(&m.gr_ideal()?)?)))
}

/// The class of `Div(M.O(X))` against `γ(M)`.
pub fn verify_t3(m: &RightIdealD) -> VerifyReport {
    let inst = describe_dideal(m);
    guarded(DIV_ROUTE, inst.clone(), || {
        let v = ideal_to_subspace(&m.fat_normalize()?)?;
        Ok(VerifyReport::check(DIV_ROUTE, inst, v.div_of().class(m.curve()), gamma(m)?))
    })
}

/// `(rk, det)` of `gr M` for two generator shift vectors.
pub fn verify_ginzburg(m: &RightIdealD, s1: &[i64], s2: &[i64]) -> VerifyReport {
    let inst = format!("{} shifts {:?} vs {:?}", describe_dideal(m), s1, s2);
    guarded(FILTRATION, inst.clone(), || {
        let (a, b) = (g0_image(m, s1)?, g0_image(m, s2)?);
        let pass = a.rank == b.rank && a.det == b.det;
        Ok(VerifyReport::new(FILTRATION, inst, describe_g0(&a), describe_g0(&b), pass))
    })
}

/// `γ̄(F) = γ̄(F**)`.
pub fn verify_app_a(f: &CIdeal) -> VerifyReport {
    let inst = describe_cideal(f);
    guarded(DET_TRIVIAL, inst.clone(), || {
        let hull = crate::classify::fat_normalize_graded(f)?.divisorial_hull()?;
        Ok(VerifyReport::check(DET_TRIVIAL, inst, gamma_bar(f)?, gamma_bar(&hull)?))
    })
}

/// `colength(F·I⁻¹) = dim F**/F`.
pub fn verify_hilb_colength(f: &CIdeal) -> VerifyReport {
    let inst = describe_cideal(f);
    guarded(HILB_COLENGTH, inst.clone(), || {
        let c = hilb_point(f)?.colength()?.unwrap_or(usize::MAX);
        Ok(VerifyReport::check(HILB_COLENGTH, inst, c, hull_codimension(f)?))
    })
}

/// `M_V.O(X) = V`, and independently that every generator of `M_V` maps a
/// spanning set of `O(X)` modulo the relevant conductor into `V`.
pub fn verify_roundtrip_subspace(v: &PDSubspace) -> VerifyReport {
    let inst = v.to_string();
    guarded(CH_ROUNDTRIP, inst.clone(), || {
        let curve = v.curve();
        let m = subspace_to_ideal(v)?;
        let back = ideal_to_subspace(&m)?;
        let total: usize = v.points().iter().map(|d| d.jet_order).sum();
        let mut maps_in = true;
        'outer: for g in m.generators() {
            let bound = total + v.points().len() * g.max_xi() as usize + 1;
            for b in 0..=u32::from(curve.is_elliptic()) {
                for a in 0..=bound as u32 {
                    let f = Poly::mono(crate::poly::Mono::new(a, b, 0));
                    if !v.contains_function(&dop_apply(curve, g, &f))? {
                        maps_in = false;
                        break 'outer;
                    }
                }
            }
        }
        let pass = &back == v && maps_in;
        let lhs = if maps_in { back.to_string() } else { format!("{} (a generator leaves V)", back) };
        Ok(VerifyReport::new(CH_ROUNDTRIP, inst, lhs, v.to_string(), pass))
    })
}

pub fn verify_roundtrip_ideal(m: &RightIdealD) -> VerifyReport {
    let inst = describe_dideal(m);
    guarded(CH_ROUNDTRIP_IDEAL, inst.clone(), || {
        let back = subspace_to_ideal(&ideal_to_subspace(m)?)?;
        let pass = back.equals(m)?;
        Ok(VerifyReport::new(CH_ROUNDTRIP_IDEAL, inst, describe_dideal(&back), describe_dideal(m), pass))
    })
}

/// Codimension of `V` by linear algebra on `O/∏ m_x^{N_x}` against the
/// colength of `∏ m_x^{n_x}`.
pub fn verify_codim(v: &PDSubspace) -> VerifyReport {
    let inst = v.to_string();
    guarded(CH_CODIM, inst.clone(), || {
        let cond = v.conductor()?;
        let std = cond.standard_monomials()?;
        let mut rows: Vec<Row> = Vec::new();
        for d in v.points() {
            let chart = crate::curve::LocalChart::new(v.curve(), &d.point, d.jet_order)?;
            let jets: Vec<Vec<Q>> = std.iter().map(|s| chart.expand(s)).collect();
            for lam in &d.conditions {
                rows.push(jets.iter().map(|j| lam.iter().zip(j).map(|(a, b)| a * b).sum()).collect());
            }
        }
        let codim = if rows.is_empty() { 0 } else { rank(&rows) };
        Ok(VerifyReport::check(CH_CODIM, inst, codim, v.i_v_formula()?.colength()?))
    })
}

pub fn verify_product_formula(v: &PDSubspace) -> VerifyReport {
    let inst = v.to_string();
    guarded(CH_PRODUCT, inst.clone(), || {
        let i = extract_i(&subspace_to_ideal(v)?.gr_ideal()?)?;
        let f = v.i_v_formula()?;
        let pass = i.equals(&f)?;
        Ok(VerifyReport::new(CH_PRODUCT, inst, i.to_string(), f.to_string(), pass))
    })
}

pub fn verify_monotone(v: &PDSubspace, w: &PDSubspace) -> VerifyReport {
    let inst = format!("{} inside {}", v, w);
    guarded(CH_MONOTONE, inst.clone(), || {
        let (mv, mw) = (subspace_to_ideal(v)?, subspace_to_ideal(w)?);
        Ok(VerifyReport::check(CH_MONOTONE, inst, v.is_subset(w), mw.contains(&mv)?))
    })
}

pub fn verify_scaling(v: &PDSubspace, f: &Poly) -> VerifyReport {
    let inst = format!("f = {}, V = {}", format_poly(f), v);
    guarded(CH_SCALING, inst.clone(), || {
        let curve = v.curve();
        let fv = v.scale(f)?;
        let div_f = OIdeal::new(curve, vec![f.clone()])?.support()?;
        let df = Divisor::new(div_f.into_iter().map(|(p, n)| (p, n as i64)).collect()).class(curve);
        let rhs = pic_sub(curve, &v.div_of().class(curve), &df);
        Ok(VerifyReport::check(CH_SCALING, inst, fv.div_of().class(curve), rhs))
    })
}

pub fn verify_gr_extended(i: &OIdeal) -> VerifyReport {
    let inst = i.to_string();
    guarded(GR_EXTENDED, inst.clone(), || {
        let g = RightIdealD::extended(i).gr_ideal()?;
        let pass = g.equals(&i.extend())?;
        Ok(VerifyReport::new(GR_EXTENDED, inst, describe_cideal(&g), i.to_string(), pass))
    })
}

pub fn verify_equivariance(phi: &DAut, i: &OIdeal, m: &RightIdealD) -> VerifyReport {
    let inst = format!("phi(d) = {}, I = {}, M = {}", format_dop(phi.d_image()), i, describe_dideal(m));
    guarded(EQUIVARIANCE, inst.clone(), || {
        let lhs = act_dideal(phi, i, m)?.gr_ideal()?;
        let datum = BimoduleDatum::new(i.clone(), phi.sigma().clone())?;
        let rhs = act_graded(&datum, &m.gr_ideal()?)?;
        let pass = lhs.equals(&rhs)?;
        Ok(VerifyReport::new(EQUIVARIANCE, inst, describe_cideal(&lhs), describe_cideal(&rhs), pass))
    })
}

pub fn verify_n_graded(p: &BimoduleDatum, f: &CIdeal) -> VerifyReport {
    let inst = format!("{} acting on {}", p, describe_cideal(f));
    guarded(N_INVARIANCE, inst.clone(), || {
        Ok(VerifyReport::check(N_INVARIANCE, inst, n_of_graded(&act_graded(p, f)?)?, n_of_graded(f)?))
    })
}

pub fn verify_n_dideal(phi: &DAut, i: &OIdeal, m: &RightIdealD) -> VerifyReport {
    let inst = format!("phi(d) = {}, I = {}, M = {}", format_dop(phi.d_image()), i, describe_dideal(m));
    guarded(N_INVARIANCE, inst.clone(), || {
        Ok(VerifyReport::check(N_INVARIANCE, inst, n_invariant(&act_dideal(phi, i, m)?)?, n_invariant(m)?))
    })
}

pub fn verify_gamma_equivariance(p: &BimoduleDatum, f: &CIdeal) -> VerifyReport {
    let inst = format!("{} acting on {}", p, describe_cideal(f));
    guarded(GAMMA_EQUIVARIANCE, inst.clone(), || {
        let lhs = gamma_bar(&act_graded(p, f)?)?;
        Ok(VerifyReport::check(GAMMA_EQUIVARIANCE, inst, lhs, act_pic(p, &gamma_bar(f)?)?))
    })
}

pub fn verify_action_law(p: &BimoduleDatum, r: &BimoduleDatum, c: &DivisorClass) -> VerifyReport {
    let inst = format!("p = {}, q = {}, c = {}", p, r, c);
    guarded(ACTION_LAW, inst.clone(), || {
        let lhs = act_pic(&sd_mul(p, r)?, c)?;
        Ok(VerifyReport::check(ACTION_LAW, inst, lhs, act_pic(r, &act_pic(p, c)?)?))
    })
}

/// The action computed through a second representative of `c`.
pub fn verify_representative(p: &BimoduleDatum, c: &DivisorClass, j: &OIdeal) -> VerifyReport {
    let inst = format!("p = {}, c = {}, J = {}", p, c, j);
    guarded(REPRESENTATIVE, inst.clone(), || {
        Ok(VerifyReport::check(REPRESENTATIVE, inst, act_pic_via(p, j)?, act_pic(p, c)?))
    })
}

pub fn verify_preimage(curve: &CurveModel, c: &DivisorClass) -> VerifyReport {
    let inst = c.to_string();
    guarded(TRANSITIVITY, inst.clone(), || {
        let p = pic_preimage(curve, c)?;
        Ok(VerifyReport::check(TRANSITIVITY, inst, act_pic(&p, &DivisorClass::Identity)?, c.clone()))
    })
}

pub fn verify_filtration_induced(m: &RightIdealD, s: &[i64]) -> VerifyReport {
    let inst = format!("{} shifts {:?}", describe_dideal(m), s);
    guarded(FILTRATION_INDUCED, inst.clone(), || {
        let (a, b) = (g0_image(m, s)?, induced_g0_image(m)?);
        let pass = a.rank == b.rank && a.det == b.det;
        Ok(VerifyReport::new(FILTRATION_INDUCED, inst, describe_g0(&a), describe_g0(&b), pass))
    })
}

/// The worked example of the Weyl algebra: `M₁ = x²D + (x∂ − 1)D`.
pub fn golden_weyl() -> Vec<VerifyReport> {
    let l = CurveModel::Line;
    let inst = || "M1 = (x^2, x*d - 1)D".to_string();
    let mut out = Vec::new();
    let mut push = |what: &str, r: Result<(String, String)>| {
        out.push(match r {
            Ok((a, b)) => VerifyReport::new(GOLDEN, format!("{}: {}", inst(), what), a.clone(), b.clone(), a == b),
            Err(e) => VerifyReport::failed(GOLDEN, format!("{}: {}", inst(), what), &e),
        })
    };
    let m1 = match RightIdealD::parse(&l, &["x^2", "x*d - 1"]) {
        Ok(m) => m,
        Err(e) => return vec![VerifyReport::failed(GOLDEN, inst(), &e)],
    };
    let strs = |v: Vec<String>| format!("{{{}}}", v.join(", "));
    push(
        "right basis",
        m1.right_groebner().map(|g| (strs(g.iter().map(format_dop).collect()), "{x^2, x*d - 1}".to_string())),
    );
    push(
        "gr",
        m1.gr_ideal().and_then(|g| {
            let want = CIdeal::new(&l, vec![Poly::x().pow(2), &Poly::x() * &Poly::xi()])?;
            Ok((describe_cideal(&g), if g.equals(&want)? { describe_cideal(&g) } else { describe_cideal(&want) }))
        }),
    );
    push("I", m1.gr_ideal().and_then(|g| extract_i(&g)).map(|i| (i.to_string(), "(x)".to_string())));
    push("n", n_invariant(&m1).map(|n| (n.to_string(), "1".to_string())));
    push(
        "hilb",
        m1.gr_ideal().and_then(|g| hilb_point(&g)).and_then(|h| {
            let c = h.colength()?.unwrap_or(usize::MAX);
            let want = CIdeal::new(&l, vec![Poly::x(), Poly::xi()])?;
            Ok((format!("{} colength {}", h.equals(&want)?, c), "true colength 1".to_string()))
        }),
    );
    let fprime = PDSubspace::new(
        &l,
        vec![PrimaryData::new(&l, PointQ::line(q(0)), 2, vec![vec![q(0), q(1)]]).expect("valid jet data")],
    )
    .expect("valid subspace");
    push("subspace", ideal_to_subspace(&m1).map(|v| (v.to_string(), fprime.to_string())));
    push("I_V", fprime.i_v_formula().map(|i| (i.to_string(), "(x)".to_string())));
    out
}

/// Group-law facts on `y² = x³ + 1`.
pub fn pic_oracle() -> Vec<VerifyReport> {
    let e = CurveModel::standard_elliptic();
    let p = PointQ::ints(0, 1);
    let pm = PointQ::ints(0, -1);
    let r = (|| -> Result<Vec<VerifyReport>> {
        let mp = OIdeal::maximal(&e, &p)?;
        let mpm = OIdeal::maximal(&e, &pm)?;
        let sq = class_of_ideal(&mp.power(2)?)?;
        let v1 = VerifyReport::check(
            PIC_ORACLE,
            "class(m_P^2) vs class(m_(0,-1)), P = (0, 1)".into(),
            sq,
            class_of_ideal(&mpm)?,
        );
        let prod = class_of_ideal(&mp.product(&mpm)?)?;
        let v2 = VerifyReport::check(PIC_ORACLE, "class(m_P m_(0,-1))".into(), prod, DivisorClass::Identity);
        let sum = pic_add(&e, &point_class(&e, &p), &point_class(&e, &PointQ::ints(2, 3)));
        let v3 = VerifyReport::check(
            PIC_ORACLE,
            "[(0, 1)] + [(2, 3)]".into(),
            sum,
            DivisorClass::Point(PointQ::ints(-1, 0)),
        );
        let v4 = VerifyReport::check(
            PIC_ORACLE,
            "3[(0, 1)]".into(),
            pic_mul(&e, &point_class(&e, &p), 3),
            DivisorClass::Identity,
        );
        Ok(vec![v1, v2, v3, v4])
    })();
    r.unwrap_or_else(|e| vec![VerifyReport::failed(PIC_ORACLE, "pic oracle".into(), &e)])
}

fn points(curve: &CurveModel) -> Vec<PointQ> {
    if curve.is_elliptic() {
        sample_points_elliptic()
    } else {
        sample_points_line()
    }
}

fn classes(curve: &CurveModel) -> Vec<DivisorClass> {
    if curve.is_elliptic() {
        sample_classes_elliptic(curve)
    } else {
        vec![DivisorClass::Identity]
    }
}

/// Random primary decomposable subspaces of codimension 1 to `max_codim`.
pub fn random_subspace(rng: &mut ChaCha8Rng, curve: &CurveModel, max_codim: usize) -> PDSubspace {
    let pts = points(curve);
    loop {
        let k = rng.gen_range(1..=2usize);
        let chosen: Vec<PointQ> = pts.choose_multiple(rng, k).cloned().collect();
        let mut data = Vec::new();
        for p in chosen {
            let n = rng.gen_range(1..=3usize);
            let c = rng.gen_range(1..=n);
            let rows: Vec<Row> = (0..c).map(|_| (0..n).map(|_| q(rng.gen_range(-2..=2))).collect()).collect();
            data.push(PrimaryData::new(curve, p, n, rows).expect("sample point"));
        }
        let v = PDSubspace::new(curve, data).expect("distinct points");
        if (1..=max_codim).contains(&v.codim()) {
            return v;
        }
    }
}

/// A random subspace containing `v`, obtained by dropping conditions.
pub fn random_superspace(rng: &mut ChaCha8Rng, v: &PDSubspace) -> PDSubspace {
    let curve = v.curve();
    let data = v
        .points()
        .iter()
        .map(|d| {
            let keep: Vec<Row> = d.conditions.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
            PrimaryData::new(curve, d.point.clone(), d.jet_order, keep).expect("sub-conditions")
        })
        .collect();
    PDSubspace::new(curve, data).expect("same points")
}

/// Products of lines whose zeros on the curve are all rational: verticals
/// through sample points, the tangents `y = ±1` and the chords `y = ±(x + 1)`.
pub fn random_function(rng: &mut ChaCha8Rng, curve: &CurveModel) -> Poly {
    let mut lines: Vec<Poly> = points(curve).iter().map(|p| &Poly::x() - &Poly::constant(p.x.clone())).collect();
    if curve.is_elliptic() {
        let one = Poly::one();
        let xp1 = &Poly::x() + &one;
        lines.extend([&Poly::y() - &one, &Poly::y() + &one, &Poly::y() - &xp1, &Poly::y() + &xp1]);
    }
    let mut f = Poly::constant(q(rng.gen_range(1..=3)));
    for _ in 0..rng.gen_range(1..=2) {
        f = curve.reduce(&(&f * lines.choose(rng).unwrap()));
    }
    f
}

pub fn random_oideal(rng: &mut ChaCha8Rng, curve: &CurveModel, max_points: usize) -> OIdeal {
    let pts = points(curve);
    let mut i = OIdeal::unit(curve);
    for _ in 0..rng.gen_range(0..=max_points) {
        let p = pts.choose(rng).unwrap();
        i = i.product(&OIdeal::maximal(curve, p).unwrap()).unwrap();
    }
    i
}

pub fn random_sigma(rng: &mut ChaCha8Rng, curve: &CurveModel) -> CurveAut {
    if curve.is_elliptic() {
        if rng.gen_bool(0.5) {
            CurveAut::Inversion
        } else {
            CurveAut::Identity
        }
    } else {
        let alphas = [q(1), q(2), q(-1), qf(1, 2)];
        let betas = [q(0), q(1), q(-1)];
        CurveAut::affine(alphas.choose(rng).unwrap().clone(), betas.choose(rng).unwrap().clone()).unwrap()
    }
}

pub fn random_daut(rng: &mut ChaCha8Rng, curve: &CurveModel, sigma: CurveAut) -> DAut {
    let shifts: Vec<Poly> = if curve.is_elliptic() {
        vec![Poly::zero(), Poly::x(), Poly::y(), Poly::constant(q(1))]
    } else {
        vec![Poly::zero(), Poly::x(), Poly::x().pow(2), Poly::constant(q(1))]
    };
    DAut::twisted(curve, sigma, shifts.choose(rng).unwrap()).expect("twists are automorphisms")
}

pub fn random_datum(rng: &mut ChaCha8Rng, curve: &CurveModel) -> BimoduleDatum {
    let i = random_oideal(rng, curve, 2);
    BimoduleDatum::new(i, random_sigma(rng, curve)).unwrap()
}

/// Fat ideals: products of extended maximal ideals, small Cannings–Holland
/// ideals, and twists of both by automorphisms of `D`.
pub fn random_fat_ideal(rng: &mut ChaCha8Rng, curve: &CurveModel) -> Result<RightIdealD> {
    let base = if rng.gen_bool(0.5) {
        let mut i = random_oideal(rng, curve, 2);
        if i.is_unit()? {
            i = OIdeal::maximal(curve, points(curve).choose(rng).unwrap())?;
        }
        RightIdealD::extended(&i)
    } else {
        subspace_to_ideal(&random_subspace(rng, curve, 2))?
    };
    if rng.gen_bool(0.4) {
        let sigma = random_sigma(rng, curve);
        let phi = random_daut(rng, curve, sigma);
        return act_dideal(&phi, &OIdeal::unit(curve), &base);
    }
    Ok(base)
}

/// Graded ideals `IŌ·(J + ξ)^k`, graded pieces of Cannings–Holland ideals,
/// and invertible ideals.
pub fn random_graded(rng: &mut ChaCha8Rng, curve: &CurveModel) -> Result<CIdeal> {
    let pts = points(curve);
    match rng.gen_range(0..3) {
        0 => {
            let i = random_oideal(rng, curve, 1).extend();
            let j = OIdeal::maximal(curve, pts.choose(rng).unwrap())?.extend();
            let k = rng.gen_range(1..=2);
            let mut h = CIdeal::unit(curve);
            let jx = j.sum(&CIdeal::principal(curve, Poly::xi())?)?;
            for _ in 0..k {
                h = h.product(&jx)?;
            }
            i.product(&h)
        }
        1 => subspace_to_ideal(&random_subspace(rng, curve, 2))?.gr_ideal(),
        _ => {
            let mut i = random_oideal(rng, curve, 2);
            if i.is_unit()? {
                i = OIdeal::maximal(curve, pts.choose(rng).unwrap())?;
            }
            Ok(i.extend())
        }
    }
}

fn instance_error(theorem: &str, e: crate::Error) -> VerifyReport {
    VerifyReport::failed(theorem, "instance generation".into(), &e)
}

/// Cannings–Holland checks on `count` random subspaces and `count` fat
/// ideals built without reference to subspaces.
pub fn battery_ch(seed: u64, curve: &CurveModel, count: usize) -> Vec<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..count {
        let v = random_subspace(&mut rng, curve, 4);
        out.push(verify_roundtrip_subspace(&v));
        out.push(verify_codim(&v));
        match random_fat_ideal(&mut rng, curve) {
            Ok(m) => out.push(verify_roundtrip_ideal(&m)),
            Err(e) => out.push(instance_error(CH_ROUNDTRIP_IDEAL, e)),
        }
    }
    out
}

/// Product formula, monotonicity and scaling on smaller subspaces.
pub fn battery_ch_extra(seed: u64, curve: &CurveModel, count: usize) -> Vec<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5ca1e);
    let mut out = Vec::new();
    for _ in 0..count {
        let v = random_subspace(&mut rng, curve, 3);
        out.push(verify_product_formula(&v));
        let w = random_superspace(&mut rng, &v);
        out.push(verify_monotone(&v, &w));
        let f = random_function(&mut rng, curve);
        out.push(verify_scaling(&v, &f));
    }
    out
}

/// The three routes to `γ` and the round trip through subspaces.
pub fn battery_gamma(seed: u64, curve: &CurveModel, count: usize) -> Vec<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9a77a);
    let mut out = Vec::new();
    for _ in 0..count {
        match random_fat_ideal(&mut rng, curve) {
            Ok(m) => {
                out.push(verify_comm(&m));
                out.push(verify_t3(&m));
            }
            Err(e) => out.push(instance_error(COMM, e)),
        }
    }
    out
}

/// The action of bimodule data and of automorphisms of `D`.
pub fn battery_action(seed: u64, curve: &CurveModel, count: usize) -> Vec<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xac7);
    let mut out = Vec::new();
    let cls = classes(curve);
    for _ in 0..count {
        let p = random_datum(&mut rng, curve);
        let r = random_datum(&mut rng, curve);
        let c = cls.choose(&mut rng).unwrap().clone();
        out.push(verify_action_law(&p, &r, &c));
        let second = ideal_of_class(curve, &c).and_then(|j| {
            let extra = OIdeal::maximal(curve, points(curve).choose(&mut rng).unwrap())?;
            let neg = OIdeal::maximal(curve, &neg_point(curve, &extra)?)?;
            j.product(&extra)?.product(&neg)
        });
        match second {
            Ok(j) => out.push(verify_representative(&p, &c, &j)),
            Err(e) => out.push(instance_error(REPRESENTATIVE, e)),
        }
        match random_graded(&mut rng, curve) {
            Ok(f) => {
                out.push(verify_n_graded(&p, &f));
                out.push(verify_gamma_equivariance(&p, &f));
            }
            Err(e) => out.push(instance_error(N_INVARIANCE, e)),
        }
        let phi = random_daut(&mut rng, curve, p.sigma.clone());
        match random_fat_ideal(&mut rng, curve) {
            Ok(m) => {
                out.push(verify_equivariance(&phi, &p.ideal, &m));
                out.push(verify_n_dideal(&phi, &p.ideal, &m));
            }
            Err(e) => out.push(instance_error(EQUIVARIANCE, e)),
        }
        let i = random_oideal(&mut rng, curve, 2);
        out.push(verify_gr_extended(&i));
    }
    for c in &cls {
        out.push(verify_preimage(curve, c));
    }
    out
}

/// The point `⊖P` for the single point of a maximal ideal, so that
/// `m_P m_{⊖P}` is principal.
fn neg_point(curve: &CurveModel, m: &OIdeal) -> Result<PointQ> {
    let (p, _) = m.support()?.into_iter().next().ok_or(crate::Error::ZeroIdeal)?;
    Ok(match pic_neg(curve, &point_class(curve, &p)) {
        DivisorClass::Point(np) => np,
        DivisorClass::Identity => p,
    })
}

/// Shifted generator filtrations.
pub fn battery_ginzburg(seed: u64, curve: &CurveModel, count: usize) -> Vec<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x61b2);
    let mut out = Vec::new();
    for _ in 0..count {
        match random_fat_ideal(&mut rng, curve) {
            Ok(m) => {
                let n = m.generators().len();
                let s1 = vec![0i64; n];
                let s2: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                out.push(verify_ginzburg(&m, &s1, &s2));
                out.push(verify_filtration_induced(&m, &s2));
            }
            Err(e) => out.push(instance_error(FILTRATION, e)),
        }
    }
    out
}

/// Determinant triviality and the Hilbert-point colength.
pub fn battery_app_a(seed: u64, curve: &CurveModel, count: usize) -> Vec<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa99a);
    let mut out = Vec::new();
    for _ in 0..count {
        match random_graded(&mut rng, curve) {
            Ok(f) => {
                out.push(verify_app_a(&f));
                out.push(verify_hilb_colength(&f));
            }
            Err(e) => out.push(instance_error(DET_TRIVIAL, e)),
        }
    }
    out
}

/// Instance counts per battery group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatterySizes {
    pub subspaces: usize,
    pub subspace_extras: usize,
    pub fat_ideals: usize,
    pub actions: usize,
    pub filtrations: usize,
    pub graded: usize,
}

impl Default for BatterySizes {
    fn default() -> Self {
        BatterySizes { subspaces: 20, subspace_extras: 10, fat_ideals: 20, actions: 10, filtrations: 10, graded: 10 }
    }
}

impl BatterySizes {
    pub fn empty() -> BatterySizes {
        BatterySizes { subspaces: 0, subspace_extras: 0, fat_ideals: 0, actions: 0, filtrations: 0, graded: 0 }
    }
}

/// Groups that `verify` accepts by name.
pub const GROUPS: &[&str] = &["golden", "pic", "ch", "ch-extra", "gamma", "action", "filtration", "det"];

pub fn run_group(name: &str, seed: u64, curve: &CurveModel, sizes: &BatterySizes) -> Option<Vec<VerifyReport>> {
    let fixed = matches!(name, "golden" | "pic");
    if GROUPS.contains(&name) && !fixed && curve.is_elliptic() && *curve != CurveModel::standard_elliptic() {
        return Some(vec![VerifyReport::new(
            name,
            format!("battery on {}", curve),
            "error: sample points are only available on y^2 = x^3 + 1".into(),
            String::new(),
            false,
        )]);
    }
    Some(match name {
        "golden" => golden_weyl(),
        "pic" => pic_oracle(),
        "ch" => battery_ch(seed, curve, sizes.subspaces),
        "ch-extra" => battery_ch_extra(seed, curve, sizes.subspace_extras),
        "gamma" => battery_gamma(seed, curve, sizes.fat_ideals),
        "action" => {
            if sizes.actions == 0 {
                Vec::new()
            } else {
                battery_action(seed, curve, sizes.actions)
            }
        }
        "filtration" => battery_ginzburg(seed, curve, sizes.filtrations),
        "det" => battery_app_a(seed, curve, sizes.graded),
        _ => return None,
    })
}

/// All randomized groups on `curve`.
pub fn verify_battery(seed: u64, curve: &CurveModel, sizes: &BatterySizes) -> Vec<VerifyReport> {
    ["ch", "ch-extra", "gamma", "action", "filtration", "det"]
        .iter()
        .flat_map(|g| run_group(g, seed, curve, sizes).unwrap_or_default())
        .collect()
}

/// Parses an operator, for callers assembling instances by hand.
pub fn dop(curve: &CurveModel, s: &str) -> Result<crate::dop::DOp> {
    parse_dop(curve, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_examples_pass() {
        let l = CurveModel::Line;
        let e = CurveModel::standard_elliptic();
        let m1 = RightIdealD::parse(&l, &["x^2", "x*d - 1"]).unwrap();
        let mp = RightIdealD::parse(&e, &["x", "y - 1"]).unwrap();
        for m in [&RightIdealD::unit(&l), &m1, &mp] {
            assert!(verify_comm(m).pass);
            assert!(verify_t3(m).pass);
        }
        assert!(verify_ginzburg(&m1, &[0, 0], &[0, 1]).pass);
        assert!(verify_ginzburg(&RightIdealD::parse(&l, &["x"]).unwrap(), &[0], &[2]).pass);
        let f = CIdeal::new(&l, vec![Poly::x().pow(2), &Poly::x() * &Poly::xi()]).unwrap();
        assert!(verify_app_a(&f).pass && verify_hilb_colength(&f).pass);
        let p = OIdeal::maximal(&e, &PointQ::ints(0, 1)).unwrap().extend();
        let qx = OIdeal::maximal(&e, &PointQ::ints(2, 3)).unwrap().extend();
        let g = p.product(&qx.sum(&CIdeal::principal(&e, Poly::xi()).unwrap()).unwrap()).unwrap();
        assert!(verify_app_a(&g).pass);
        assert_eq!(n_of_graded(&g).unwrap(), 1);
        assert_eq!(gamma_bar(&g).unwrap(), DivisorClass::Point(PointQ::ints(0, -1)));
        assert!(golden_weyl().iter().all(|r| r.pass), "{:?}", golden_weyl());
        assert!(pic_oracle().iter().all(|r| r.pass));
    }

    #[test]
    fn empty_battery() {
        assert!(verify_battery(1, &CurveModel::Line, &BatterySizes::empty()).is_empty());
    }

    #[test]
    fn deterministic() {
        let l = CurveModel::Line;
        let a = battery_ch(7, &l, 2);
        let b = battery_ch(7, &l, 2);
        assert_eq!(a, b);
    }
}
