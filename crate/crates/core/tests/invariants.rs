use std::sync::{Arc, OnceLock};

use confkit::conformal::{adjoint, build_w, ConformalAlgebra, ConformalModule};
use confkit::grassmann::{all_monos, mono_parity};
use confkit::poly::Poly;
use confkit::repn::{build_bar_forms, tens};
use confkit::scalar::rat;
use confkit::{GrassmannElement, ModuleVector, Parity, Rational};
use proptest::prelude::*;

type G = GrassmannElement<Rational>;
type MV = ModuleVector<Rational>;

fn q(p: i64) -> Rational {
    rat(p, 1)
}

fn w2() -> &'static Arc<ConformalAlgebra<Rational>> {
    static W: OnceLock<Arc<ConformalAlgebra<Rational>>> = OnceLock::new();
    W.get_or_init(|| Arc::new(build_w(2)))
}

fn tens_bar1() -> &'static ConformalModule<Rational> {
    static M: OnceLock<ConformalModule<Rational>> = OnceLock::new();
    M.get_or_init(|| tens(&build_bar_forms(1, 2), w2()).unwrap())
}

fn grassmann(n: usize, coeffs: &[i64], parity: Option<bool>) -> G {
    let mut g = G::zero(n);
    for (m, c) in all_monos(n).zip(coeffs) {
        if parity.is_none_or(|odd| mono_parity(m).is_odd() == odd) {
            g.add_term(m, q(*c));
        }
    }
    g
}

fn arb_coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..4, len)
}

/// A homogeneous element of `W_2` of the given parity.
fn element(parity: Parity, terms: &[(usize, u32, i64)]) -> MV {
    let alg = w2();
    let ids: Vec<usize> = (0..alg.rank()).filter(|&g| alg.parity(g) == parity).collect();
    let mut v = MV::zero();
    for &(i, k, c) in terms {
        v.add_term(k, ids[i % ids.len()], q(c));
    }
    v
}

fn arb_terms() -> impl Strategy<Value = Vec<(usize, u32, i64)>> {
    prop::collection::vec((0usize..32, 0u32..3, -3i64..4), 1..4)
}

fn arb_parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

fn arb_module_vector(dim: usize) -> impl Strategy<Value = MV> {
    prop::collection::vec((0..dim, 0u32..3, -3i64..4), 1..4).prop_map(|ts| {
        let mut v = MV::zero();
        for (id, k, c) in ts {
            v.add_term(k, id, q(c));
        }
        v
    })
}

fn poly(c: &[i64]) -> Poly<Rational> {
    Poly::from_coeffs(c.iter().map(|&x| q(x)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grassmann_product_is_associative(a in arb_coeffs(8), b in arb_coeffs(8), c in arb_coeffs(8)) {
        let (a, b, c) = (grassmann(3, &a, None), grassmann(3, &b, None), grassmann(3, &c, None));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn grassmann_product_is_supercommutative(a in arb_coeffs(8), b in arb_coeffs(8), pa: bool, pb: bool) {
        let (x, y) = (grassmann(3, &a, Some(pa)), grassmann(3, &b, Some(pb)));
        let swapped = y.mul(&x).unwrap();
        let want = if pa && pb { swapped.neg() } else { swapped };
        prop_assert_eq!(x.mul(&y).unwrap(), want);
    }

    #[test]
    fn odd_derivations_obey_leibniz(a in arb_coeffs(8), b in arb_coeffs(8), pa: bool, i in 1usize..4) {
        let (x, y) = (grassmann(3, &a, Some(pa)), grassmann(3, &b, None));
        let lhs = x.mul(&y).unwrap().deriv(i).unwrap();
        let tail = x.mul(&y.deriv(i).unwrap()).unwrap();
        let rhs = x.deriv(i).unwrap().mul(&y).unwrap().add(&if pa { tail.neg() } else { tail });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poly_division(a in arb_coeffs(6), d in arb_coeffs(3)) {
        let (a, d) = (poly(&a), poly(&d));
        prop_assume!(!d.is_zero());
        let (quo, r) = a.divrem(&d);
        prop_assert_eq!(quo.mul(&d).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn poly_shift_and_reflect_are_ring_maps(a in arb_coeffs(4), b in arb_coeffs(4), s in -3i64..4) {
        let (a, b) = (poly(&a), poly(&b));
        prop_assert_eq!(a.mul(&b).shift(&q(s)), a.shift(&q(s)).mul(&b.shift(&q(s))));
        prop_assert_eq!(a.mul(&b).reflect(), a.reflect().mul(&b.reflect()));
        prop_assert_eq!(a.reflect().reflect(), a);
    }

    #[test]
    fn w2_bracket_is_skew(pa in arb_parity(), pb in arb_parity(), ta in arb_terms(), tb in arb_terms()) {
        let (a, b) = (element(pa, &ta), element(pb, &tb));
        let alg = w2();
        let lhs = alg.bracket(&b, &a);
        let rhs = alg.bracket(&a, &b).subst_skew();
        let want = if pa.both_odd(pb) { rhs } else { rhs.neg() };
        prop_assert_eq!(lhs, want);
    }

    #[test]
    fn w2_bracket_is_sesquilinear(pa in arb_parity(), pb in arb_parity(), ta in arb_terms(), tb in arb_terms()) {
        let (a, b) = (element(pa, &ta), element(pb, &tb));
        let alg = w2();
        let base = alg.bracket(&a, &b);
        prop_assert_eq!(alg.bracket(&a.d_pow(1), &b), base.mul_lambda_pow(1).neg());
        prop_assert_eq!(alg.bracket(&a, &b.d_pow(1)), base.mul_lambda_plus_d_pow(1));
    }

    #[test]
    fn adjoint_action_satisfies_jacobi(a in 0usize..12, b in 0usize..12, v in arb_module_vector(12)) {
        let ad = adjoint(w2());
        prop_assert!(ad.m2_defect(a, b, &v).is_zero());
    }

    #[test]
    fn tensor_module_action_satisfies_m2(a in 0usize..12, b in 0usize..12, v in arb_module_vector(12)) {
        let m = tens_bar1();
        let v = v.map_basis(|id| MV::basis(id % m.dim()));
        prop_assert!(m.m2_defect(a, b, &v).is_zero());
    }
}
