use dixcurve::curve::{jet, ser_add, ser_mul, CurveModel, PointQ};
use dixcurve::dop::{dop_apply, dop_mul, symbol, DOp, RightIdealD};
use dixcurve::harness::{random_daut, random_fat_ideal, random_sigma};
use dixcurve::oideal::OIdeal;
use dixcurve::pic::{
    class_by_reduction, class_of_ideal, pic_add, pic_eq, pic_neg, sample_classes_elliptic, sample_points_elliptic,
    sample_points_line, DivisorClass,
};
use dixcurve::poly::{q, Poly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn curve(elliptic: bool) -> CurveModel {
    if elliptic {
        CurveModel::standard_elliptic()
    } else {
        CurveModel::Line
    }
}

type Term = (i64, u32, u32, u32);

/// `Σ c x^a y^b ∂^j` as an element of the PBW basis.
fn build(curve: &CurveModel, terms: &[Term]) -> DOp {
    let mut p = Poly::zero();
    for &(c, a, b, j) in terms {
        let b = if curve.is_elliptic() { b } else { 0 };
        let m = &(&Poly::x().pow(a) * &Poly::y().pow(b)) * &Poly::xi().pow(j);
        p = &p + &m.scale(&q(c));
    }
    curve.reduce(&p)
}

fn terms(max_xi: u32) -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec((-3i64..=3, 0u32..=3, 0u32..=1, 0u32..=max_xi), 1..4)
}

fn function_terms() -> impl Strategy<Value = Vec<Term>> {
    terms(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(e in any::<bool>(), a in terms(2), b in terms(2), c in terms(1)) {
        let k = curve(e);
        let (a, b, c) = (build(&k, &a), build(&k, &b), build(&k, &c));
        let left = dop_mul(&k, &dop_mul(&k, &a, &b), &c);
        let right = dop_mul(&k, &a, &dop_mul(&k, &b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn derivation_obeys_leibniz(e in any::<bool>(), f in function_terms(), g in function_terms()) {
        let k = curve(e);
        let (f, g) = (build(&k, &f), build(&k, &g));
        let d = Poly::xi();
        let lhs = dop_apply(&k, &d, &(&f * &g));
        let rhs = k.reduce(&(&(&dop_apply(&k, &d, &f) * &g) + &(&f * &dop_apply(&k, &d, &g))));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn functions_form_a_module(e in any::<bool>(), a in terms(2), b in terms(2), f in function_terms()) {
        let k = curve(e);
        let (a, b, f) = (build(&k, &a), build(&k, &b), build(&k, &f));
        let lhs = dop_apply(&k, &dop_mul(&k, &a, &b), &f);
        let rhs = dop_apply(&k, &a, &dop_apply(&k, &b, &f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_with_a_function_is_its_derivative(e in any::<bool>(), f in function_terms()) {
        let k = curve(e);
        let f = build(&k, &f);
        let d = Poly::xi();
        let comm = &dop_mul(&k, &d, &f) - &dop_mul(&k, &f, &d);
        prop_assert_eq!(comm, dop_apply(&k, &d, &f));
    }

    #[test]
    fn symbol_is_multiplicative(e in any::<bool>(), a in terms(2), b in terms(2)) {
        let k = curve(e);
        let (a, b) = (build(&k, &a), build(&k, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let lhs = symbol(&k, &dop_mul(&k, &a, &b));
        let rhs = k.reduce(&(&symbol(&k, &a) * &symbol(&k, &b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jets_are_ring_maps(e in any::<bool>(), f in function_terms(), g in function_terms(), i in 0usize..4, n in 1usize..5) {
        let k = curve(e);
        let p = if e { sample_points_elliptic()[i].clone() } else { sample_points_line()[i].clone() };
        let (f, g) = (build(&k, &f), build(&k, &g));
        let jf = jet(&k, &f, &p, n).unwrap();
        let jg = jet(&k, &g, &p, n).unwrap();
        let prod = jet(&k, &k.reduce(&(&f * &g)), &p, n).unwrap();
        let sum = jet(&k, &(&f + &g), &p, n).unwrap();
        prop_assert_eq!(prod, ser_mul(&jf, &jg, jf.len()));
        prop_assert_eq!(sum, ser_add(&jf, &jg));
    }

    #[test]
    fn automorphisms_preserve_products(e in any::<bool>(), seed in any::<u64>(), a in terms(2), b in terms(2)) {
        let k = curve(e);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = random_sigma(&mut rng, &k);
        let phi = random_daut(&mut rng, &k, sigma);
        let (a, b) = (build(&k, &a), build(&k, &b));
        let lhs = phi.apply(&dop_mul(&k, &a, &b));
        let rhs = dop_mul(&k, &phi.apply(&a), &phi.apply(&b));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(phi.inverse().apply(&lhs), dop_mul(&k, &a, &b));
    }
}

fn classes() -> Vec<DivisorClass> {
    sample_classes_elliptic(&CurveModel::standard_elliptic())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn picard_group_laws(i in 0usize..6, j in 0usize..6, l in 0usize..6) {
        let k = CurveModel::standard_elliptic();
        let c = classes();
        let (a, b, d) = (&c[i], &c[j], &c[l]);
        prop_assert!(pic_eq(&pic_add(&k, a, b), &pic_add(&k, b, a)));
        prop_assert!(pic_eq(&pic_add(&k, &pic_add(&k, a, b), d), &pic_add(&k, a, &pic_add(&k, b, d))));
        prop_assert!(pic_eq(&pic_add(&k, a, &DivisorClass::Identity), a));
        prop_assert!(pic_add(&k, a, &pic_neg(&k, a)).is_identity());
    }

    #[test]
    fn ideal_classes_add(i in 0usize..5, j in 0usize..5) {
        let k = CurveModel::standard_elliptic();
        let pts = sample_points_elliptic();
        let mi = OIdeal::maximal(&k, &pts[i]).unwrap();
        let mj = OIdeal::maximal(&k, &pts[j]).unwrap();
        let prod = mi.product(&mj).unwrap();
        let sum = pic_add(&k, &class_of_ideal(&mi).unwrap(), &class_of_ideal(&mj).unwrap());
        prop_assert!(pic_eq(&class_of_ideal(&prod).unwrap(), &sum));
        prop_assert!(pic_eq(&class_by_reduction(&prod).unwrap(), &sum));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn right_ideals_absorb_right_multiples(e in any::<bool>(), seed in any::<u64>(), a in terms(1)) {
        let k = curve(e);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_fat_ideal(&mut rng, &k).unwrap();
        let a = build(&k, &a);
        for g in m.generators() {
            prop_assert!(m.member(&dop_mul(&k, g, &a)).unwrap());
            prop_assert!(m.normal_form(&dop_mul(&k, g, &a)).unwrap().is_zero());
        }
        let n = RightIdealD::new(&k, m.right_groebner().unwrap()).unwrap();
        prop_assert!(n.equals(&m).unwrap());
    }
}

#[test]
fn non_rational_support_has_a_class_by_reduction() {
    let k = CurveModel::standard_elliptic();
    // y = 0 meets the curve at the root -1 of x^3 + 1 and at two conjugate points
    let z = OIdeal::new(&k, vec![Poly::y(), &(&Poly::x().pow(2) - &Poly::x()) + &Poly::constant(q(1))]).unwrap();
    assert!(class_of_ideal(&z).is_err());
    let c = class_by_reduction(&z).unwrap();
    let p = OIdeal::maximal(&k, &PointQ::ints(-1, 0)).unwrap();
    // (y) = z · m_(-1,0) is principal
    assert!(pic_eq(&pic_add(&k, &c, &class_of_ideal(&p).unwrap()), &DivisorClass::Identity));
}
