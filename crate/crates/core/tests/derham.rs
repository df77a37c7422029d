use confkit::annihilation::VectorField;
use confkit::conformal::WittIndex;
use confkit::derham::*;
use confkit::scalar::rat;
use confkit::{LambdaValued, ModuleVector, Rational};
use proptest::prelude::*;

fn q(p: i64) -> Rational {
    rat(p, 1)
}

fn mono(n: usize, xi: u32, beta: &[u32], dt: bool) -> FormMono {
    let mut b = beta.to_vec();
    b.resize(n, 0);
    FormMono::new(0, xi, b, dt)
}

fn vec_of(basis: &FormBasis, terms: &[(u32, FormMono, i64)]) -> ModuleVector<Rational> {
    let mut v = ModuleVector::zero();
    for (k, m, c) in terms {
        v.add_term(*k, basis.id(m).unwrap(), q(*c));
    }
    v
}

#[test]
fn tilde_d_examples() {
    let n = 2;
    let b = FormBasis::new(n, 3);
    let dt = mono(n, 0, &[], true);
    assert!(tilde_d(&b, &vec_of(&b, &[(0, dt.clone(), 1)])).unwrap().is_zero());
    let xi1 = mono(n, 1, &[], false);
    let want = vec_of(&b, &[(0, mono(n, 0, &[1], false), 1), (1, mono(n, 1, &[], true), 1)]);
    assert_eq!(tilde_d(&b, &vec_of(&b, &[(0, xi1, 1)])).unwrap(), want);
    let xi12 = vec_of(&b, &[(0, mono(n, 3, &[], false), 1)]);
    assert!(tilde_d(&b, &tilde_d(&b, &xi12).unwrap()).unwrap().is_zero());
    assert_eq!(tilde_d(&b, &vec_of(&b, &[(0, mono(n, 0, &[], false), 1)])).unwrap(), vec_of(&b, &[(1, dt, -1)]));
}

#[test]
fn tilde_d_squares_to_zero() {
    for n in 0..=3 {
        let b = FormBasis::new(n, 4);
        assert_eq!(d_tilde_squared_failures::<Rational>(&b).unwrap(), vec![], "n={n}");
    }
}

#[test]
fn degree_overflow_is_an_error() {
    let b = FormBasis::new(1, 1);
    let v = vec_of(&b, &[(0, mono(1, 0, &[1], false), 1)]);
    assert!(matches!(tilde_d(&b, &v), Err(confkit::Error::DegreeOverflow(2, 1))));
}

fn lam(terms: &[(u32, u32, usize, i64)]) -> LambdaValued<Rational> {
    let mut out = LambdaValued::zero();
    for (l, k, id, c) in terms {
        out.add_coeff(*l, &ModuleVector::term(*k, *id, q(*c)), &q(1));
    }
    out
}

#[test]
fn lie_derivative_examples() {
    let n = 1;
    let w = WittIndex::new(n);
    let b = FormBasis::new(n, 2);
    let one = b.id(&mono(n, 0, &[], false)).unwrap();
    let xi = b.id(&mono(n, 1, &[], false)).unwrap();
    let dxi = b.id(&mono(n, 0, &[1], false)).unwrap();
    let dt = b.id(&mono(n, 0, &[], true)).unwrap();
    let xi_dt = b.id(&mono(n, 1, &[], true)).unwrap();
    let rule = FieldRule::Full;
    let act = |g: usize, id: usize| lie_derivative(&b, &w, g, &ModuleVector::basis(id), rule).unwrap();
    assert_eq!(act(w.function(0), one), lam(&[(0, 1, one, -1), (1, 0, one, -1)]));
    assert_eq!(act(w.field(1, 1), dxi), lam(&[(0, 0, dxi, 1), (1, 0, xi_dt, -1)]));
    assert_eq!(act(w.function(1), dt), lam(&[(0, 0, dxi, -1), (0, 1, xi_dt, -1)]));
    assert_eq!(act(w.field(0, 1), dxi), lam(&[(1, 0, dt, -1)]));
    let plain = lie_derivative(&b, &w, w.field(1, 1), &ModuleVector::basis(dxi), FieldRule::NoLambda).unwrap();
    assert_eq!(plain, lam(&[(0, 0, dxi, 1)]));
    assert_eq!(act(w.field(0, 1), xi), lam(&[(0, 0, one, 1)]));
}

#[test]
fn forms_are_modules_only_with_the_lambda_term() {
    for n in 1..=2 {
        for j in 0..=2 {
            let m = forms_module::<Rational>(n, j, FieldRule::Full).unwrap();
            assert!(m.check_m2().is_empty(), "n={n} j={j}");
            let plain = forms_module::<Rational>(n, j, FieldRule::NoLambda).unwrap();
            assert_eq!(plain.check_m2().is_empty(), j == 0, "n={n} j={j}");
        }
    }
}

#[test]
fn tilde_d_supercommutes_with_lie_derivatives() {
    for n in 1..=2 {
        for j in 0..=2 {
            assert!(d_tilde_morphism::<Rational>(n, j, FieldRule::Full).unwrap().is_morphism(), "n={n} j={j}");
            assert!(!d_tilde_morphism::<Rational>(n, j, FieldRule::NoLambda).unwrap().is_morphism(), "n={n} j={j}");
        }
    }
}

#[test]
fn cartan_formula_pins_the_contraction_signs() {
    for n in 1..=2 {
        let b = FormBasis::new(n, 3);
        let mut passing = Vec::new();
        for fa in [false, true] {
            for fb in [false, true] {
                for ga in [false, true] {
                    for gb in [false, true] {
                        let signs = ContractionSigns { field: (fa, fb), function: (ga, gb) };
                        if cartan_failures::<Rational>(&b, FieldRule::Full, signs).unwrap().is_empty() {
                            passing.push(signs);
                        }
                        assert!(!cartan_failures::<Rational>(&b, FieldRule::NoLambda, signs).unwrap().is_empty());
                    }
                }
            }
        }
        assert_eq!(passing, vec![ContractionSigns::CARTAN], "n={n}");
    }
}

#[test]
fn contraction_examples_and_anticommutation() {
    let n = 2;
    let w = WittIndex::new(n);
    let b = FormBasis::new(n, 3);
    let c = |g: usize, m: FormMono| contraction::<Rational>(&b, &w, g, &vec_of(&b, &[(0, m, 1)]), ContractionSigns::CARTAN).unwrap();
    let one = b.id(&mono(n, 0, &[], false)).unwrap();
    assert_eq!(c(w.field(0, 1), mono(n, 0, &[1], false)), lam(&[(0, 0, one, -1)]));
    assert!(c(w.field(0, 1), mono(n, 2, &[], false)).is_zero());
    assert_eq!(c(w.function(0), mono(n, 0, &[], true)), lam(&[(0, 0, one, 1)]));
    for n in 1..=2 {
        let b = FormBasis::new(n, 3);
        assert!(contraction_anticommutation_failures::<Rational>(&b, ContractionSigns::CARTAN).unwrap().is_empty());
    }
}

#[test]
fn homotopy_examples_and_identity() {
    let n = 2;
    let b = FormBasis::new(n, 3);
    let dxi2 = vec_of(&b, &[(0, mono(n, 0, &[0, 1], false), 1)]);
    let xi2 = vec_of(&b, &[(0, mono(n, 2, &[], false), 1)]);
    let dt = vec_of(&b, &[(0, mono(n, 0, &[], true), 1)]);
    assert_eq!(homotopy_k(&b, &dxi2).unwrap(), xi2);
    assert_eq!(epsilon(&b, &dt).unwrap(), dt);
    assert!(epsilon(&b, &xi2).unwrap().is_zero());
    let lhs = homotopy_k(&b, &tilde_d(&b, &xi2).unwrap()).unwrap().add(&tilde_d(&b, &homotopy_k(&b, &xi2).unwrap()).unwrap());
    assert_eq!(lhs, xi2);
    for n in 1..=3 {
        assert_eq!(homotopy_failures::<Rational>(&FormBasis::new(n, 4)).unwrap(), vec![], "n={n}");
    }
}

#[test]
fn exactness_of_the_conformal_complex() {
    for n in 1..=2 {
        let r = exactness_report::<Rational>(n, 4).unwrap();
        assert_eq!(r.degrees[0].kernel_rank, 0);
        let d1 = &r.degrees[1];
        assert_eq!(d1.kernel_rank, d1.image_rank);
        assert_eq!(d1.torsion, vec![confkit::poly::Poly::d()]);
        assert!(!d1.exact);
        for j in 2..4 {
            assert!(r.degrees[j].exact, "n={n} j={j}");
        }
        assert!(r.dt_closed && !r.dt_exact && r.d_dt_exact);
    }
}

#[test]
fn laurent_minus_side() {
    let n = 2;
    let c = LaurentComplex::new(n, Side::Minus, 4, 2);
    let t_inv = Form::<Rational>::mono(FormMono::new(-1, 0, vec![0; n], false));
    let want = Form::term(FormMono::new(-2, 0, vec![0; n], true), q(-1));
    assert_eq!(c.d(&t_inv), want);
    assert_eq!(c.cohomology::<Rational>(0).kernel_dim, 0);
    let h1 = c.cohomology::<Rational>(1);
    assert_eq!(h1.quotient_dim(), 1);
    assert!(h1.flagged > 0);
    let tdt = Form::<Rational>::mono(FormMono::new(-1, 0, vec![0; n], true));
    assert!(c.kernel_is_image_plus(1, &tdt));
    let t2dt = Form::<Rational>::mono(FormMono::new(-2, 0, vec![0; n], true));
    assert!(!c.kernel_is_image_plus(1, &t2dt));
    assert_eq!(c.cohomology::<Rational>(2).quotient_dim(), 0);
}

#[test]
fn laurent_plus_side_and_restricted_dual() {
    let n = 2;
    let c = LaurentComplex::new(n, Side::Plus, 4, 3);
    assert_eq!(c.cohomology::<Rational>(0).quotient_dim(), 1);
    assert_eq!(c.cohomology::<Rational>(1).quotient_dim(), 0);
    assert_eq!(c.cohomology::<Rational>(2).quotient_dim(), 0);
    // rows of d^#_k are indexed like the columns of d^#_{k+1} here (no flags on Ω_+)
    for k in 0..2 {
        let a = c.d_sharp::<Rational>(k);
        let b = c.d_sharp::<Rational>(k + 1);
        for row in &a {
            let col: Vec<Rational> = (0..b[0].len())
                .map(|t| row.iter().zip(&b).map(|(x, r)| x.clone() * r[t].clone()).fold(q(0), |s, v| s + v))
                .collect();
            assert!(col.iter().all(|x| *x == q(0)));
        }
    }
    let d0 = c.d_sharp::<Rational>(0);
    let coker = d0.len() - confkit::linalg::rank(&d0, d0[0].len());
    assert_eq!(coker, 1);
}

const N: usize = 2;

fn field() -> impl Strategy<Value = VectorField<Rational>> {
    (0u32..3, 0u32..4, 0usize..=N, -3i64..=3)
        .prop_filter("nonzero", |x| x.3 != 0)
        .prop_map(|(j, m, k, c)| VectorField::monomial(N, j, m, k, q(c)))
}

fn laurent_mono(side: Side) -> impl Strategy<Value = FormMono> {
    let t = match side {
        Side::Plus => 0i64..4,
        Side::Minus => -4i64..0,
    };
    (t, 0u32..4, prop::collection::vec(0u32..2, N), any::<bool>()).prop_map(|(t, xi, b, dt)| FormMono::new(t, xi, b, dt))
}

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Plus), Just(Side::Minus)]
}

proptest! {
    #[test]
    fn laurent_action_supercommutes_with_d((s, m) in side().prop_flat_map(|s| (Just(s), laurent_mono(s))), x in field()) {
        let c = LaurentComplex::new(N, s, 8, 4);
        let f = Form::mono(m);
        let sign = if x.parity().unwrap().is_odd() { q(-1) } else { q(1) };
        let lhs = c.act(&x, &c.d(&f)).unwrap();
        let rhs = c.d(&c.act(&x, &f).unwrap()).scale(&sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn laurent_action_is_a_representation(
        (s, m) in side().prop_flat_map(|s| (Just(s), laurent_mono(s))),
        x in field(),
        y in field(),
    ) {
        let c = LaurentComplex::new(N, s, 8, 4);
        let f = Form::mono(m);
        let sign = if x.parity().unwrap().both_odd(y.parity().unwrap()) { q(-1) } else { q(1) };
        let xy = c.act(&x, &c.act(&y, &f).unwrap()).unwrap();
        let yx = c.act(&y, &c.act(&x, &f).unwrap()).unwrap();
        let bracket = c.act(&x.bracket(&y).unwrap(), &f).unwrap();
        prop_assert_eq!(xy.add(&yx.scale(&-sign)), bracket);
    }

    #[test]
    fn exterior_d_is_an_odd_derivation(a in laurent_mono(Side::Plus), b in laurent_mono(Side::Minus)) {
        let fa = Form::<Rational>::mono(a.clone());
        let fb = Form::<Rational>::mono(b);
        let sign = if a.parity().is_odd() { q(-1) } else { q(1) };
        let lhs = exterior_d_form(&fa.mul(&fb));
        let rhs = exterior_d_form(&fa).mul(&fb).add(&fa.mul(&exterior_d_form(&fb)).scale(&sign));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(exterior_d_form(&exterior_d_form(&fa)).is_zero());
    }

    #[test]
    fn form_product_is_associative(a in laurent_mono(Side::Plus), b in laurent_mono(Side::Plus), c in laurent_mono(Side::Minus)) {
        let (fa, fb, fc) = (Form::<Rational>::mono(a), Form::mono(b), Form::mono(c));
        prop_assert_eq!(fa.mul(&fb).mul(&fc), fa.mul(&fb.mul(&fc)));
    }
}
