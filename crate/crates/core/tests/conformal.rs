use std::sync::Arc;

use confkit::conformal::{
    adjoint, build_s, build_sb, build_stilde, build_vir, build_w, check_div_identity, cur_lambda_module, div,
    div_b, div_matrix, s_generator, stilde_matches_twisted_s, ConformalAlgebra, WittIndex,
};
use confkit::grassmann::all_monos;
use confkit::poly::{kernel_free_basis, Hermite, Poly, PolyMatrix};
use confkit::scalar::rat;
use confkit::{LambdaValued, ModuleVector, Rational};

type MV = ModuleVector<Rational>;
type LV = LambdaValued<Rational>;

fn q(p: i64) -> Rational {
    rat(p, 1)
}

fn w_alg(n: usize) -> Arc<ConformalAlgebra<Rational>> {
    Arc::new(build_w(n))
}

#[test]
fn w_ranks() {
    for n in 0..=3 {
        assert_eq!(build_w::<Rational>(n).rank(), (n + 1) << n);
    }
}

#[test]
fn w0_is_virasoro_with_opposite_sign() {
    let w = build_w::<Rational>(0);
    let one = MV::basis(0);
    let mut expected = LV::constant(one.d_pow(1).neg());
    expected.add_coeff(1, &one, &q(-2));
    assert_eq!(w.bracket(&one, &one), expected);
}

#[test]
fn sesquilinearity_on_w2() {
    let w = build_w::<Rational>(2);
    let idx = WittIndex::new(2);
    let a = MV::basis(idx.field(0b01, 1));
    let b = MV::basis(idx.function(0b10));
    let c = w.bracket(&a, &b);
    assert_eq!(w.bracket(&a.d_pow(1), &b), c.mul_neg_lambda_pow(1));
    assert_eq!(w.bracket(&a, &b.d_pow(1)), c.mul_lambda_plus_d_pow(1));
}

#[test]
fn sample_brackets() {
    let w2 = build_w::<Rational>(2);
    let i2 = WittIndex::new(2);
    // [(ξ1∂1)_λ ξ1] = ξ1
    let got = w2.bracket(&MV::basis(i2.field(0b01, 1)), &MV::basis(i2.function(0b01)));
    assert_eq!(got, LV::constant(MV::basis(i2.function(0b01))));

    let w1 = build_w::<Rational>(1);
    let i1 = WittIndex::new(1);
    // [∂1_λ ξ1] = 1 + λ ξ1∂1
    let got = w1.bracket(&MV::basis(i1.field(0, 1)), &MV::basis(i1.function(0b1)));
    let mut expected = LV::constant(MV::basis(i1.function(0)));
    expected.add_coeff(1, &MV::basis(i1.field(0b1, 1)), &q(1));
    assert_eq!(got, expected);
}

#[test]
fn axioms_hold_for_w_and_vir() {
    for n in 0..=2 {
        let w = w_alg(n);
        assert!(w.check_skew().is_empty(), "skew W_{n}");
        assert!(w.check_jacobi().is_empty(), "jacobi W_{n}");
    }
    let vir = Arc::new(build_vir::<Rational>());
    assert!(vir.check_skew().is_empty());
    assert!(vir.check_jacobi().is_empty());
    assert_eq!(vir.rank(), 1);
}

#[test]
fn skew_detects_asymmetric_table() {
    let basis = confkit::GradedBasis::untagged(vec![
        ("a".to_string(), confkit::Parity::Even),
        ("b".to_string(), confkit::Parity::Even),
    ])
    .unwrap();
    let a = MV::basis(0);
    let b = MV::basis(1);
    let table = vec![LV::zero(), LV::monomial(1, b), LV::monomial(1, a), LV::zero()];
    let alg = ConformalAlgebra::new("bad", basis, table).unwrap();
    assert!(alg.check_skew().contains(&(0, 1)));
}

#[test]
fn sign_flip_breaks_jacobi() {
    let w = w_alg(2);
    let i = WittIndex::new(2);
    let a = i.field(0b01, 1);
    let b = i.function(0b10);
    let flipped = Arc::new(w.with_entry(a, b, w.entry(a, b).neg()));
    assert!(!flipped.check_skew().is_empty() || !flipped.check_jacobi().is_empty());
}

#[test]
fn divergence_examples() {
    let i = WittIndex::new(2);
    assert_eq!(div(&i, &MV::basis(i.field(0b01, 1))), MV::basis(0).neg());
    assert_eq!(div(&i, &MV::basis(i.function(0))), MV::term(1, 0, q(-1)));
    assert_eq!(
        div_b(&i, &MV::basis(i.function(0)), &q(1)),
        MV::term(1, 0, q(-1)).add(&MV::basis(0))
    );
    assert!(div_b(&i, &MV::basis(i.field(0b01, 2)), &q(1)).is_zero());
    // -∂(ξ1∂1) + 1
    let x = MV::term(1, i.field(0b01, 1), q(-1)).add(&MV::basis(i.function(0)));
    assert!(div(&i, &x).is_zero());
}

#[test]
fn s_generators_lie_in_the_kernel_with_torsion_quotient() {
    for n in 1..=3 {
        let i = WittIndex::new(n);
        let gens: Vec<MV> =
            all_monos(n).flat_map(|f| (1..=n).map(move |k| (f, k))).map(|(f, k)| s_generator(&i, f, k)).collect();
        for g in &gens {
            assert!(div(&i, g).is_zero());
        }
        let (ker, _, _) = kernel_free_basis(&div_matrix(&i, &q(0)));
        assert_eq!(ker.len(), n << n);
        let span = Hermite::from_generators(i.rank(), &gens);
        assert_eq!(span.module_rank(), n << n);
        // the span is proper: ∂_1 lies in the kernel but not in the span
        assert!(!span.contains(&MV::basis(i.field(0, 1))));
        for v in &ker {
            assert!(span.contains(&v.d_pow(1)));
        }
    }
}

#[test]
fn s_family_ranks_and_closure() {
    for n in 2..=3 {
        assert_eq!(build_s::<Rational>(n).unwrap().rank(), n << n);
        for b in [rat(1, 1), rat(-1, 1), rat(1, 2)] {
            let sb = build_sb::<Rational>(n, &b).unwrap();
            assert_eq!(sb.rank(), n << n);
            let i = WittIndex::new(n);
            for x in sb.generators() {
                for y in sb.generators() {
                    for (_, v) in sb.parent().bracket(x, y).coeffs() {
                        assert!(div_b(&i, v, &b).is_zero());
                    }
                }
            }
        }
    }
    assert_eq!(build_stilde::<Rational>(2).unwrap().rank(), 8);
    assert!(build_stilde::<Rational>(3).is_err());
    assert!(stilde_matches_twisted_s::<Rational>(2).unwrap());
}

#[test]
fn s_family_axioms_n2() {
    let s = build_s::<Rational>(2).unwrap();
    assert!(s.algebra().check_skew().is_empty());
    assert!(s.algebra().check_jacobi().is_empty());
    let sb = build_sb::<Rational>(2, &rat(1, 2)).unwrap();
    assert!(sb.algebra().check_skew().is_empty());
    assert!(sb.algebra().check_jacobi().is_empty());
    let st = build_stilde::<Rational>(2).unwrap();
    assert!(st.algebra().check_skew().is_empty());
    assert!(st.algebra().check_jacobi().is_empty());
}

#[test]
fn divergence_identity_on_w2() {
    let w = w_alg(2);
    let cur = cur_lambda_module(&w).unwrap();
    assert!(cur.check_m2().is_empty());
    for b in [q(0), q(1)] {
        for x in 0..w.rank() {
            for y in 0..w.rank() {
                assert!(
                    check_div_identity(&cur, &MV::basis(x), &MV::basis(y), &b).unwrap(),
                    "pair {x} {y} b={b}"
                );
            }
        }
    }
}

#[test]
fn adjoint_module_matches_bracket() {
    let w = w_alg(1);
    let ad = adjoint(&w);
    let x = MV::term(2, 1, q(3));
    let y = MV::term(1, 2, q(-1));
    assert_eq!(ad.act(&x, &y), w.bracket(&x, &y));
}

#[test]
fn kernel_of_unit_and_derivative() {
    let (ker, _, s) = kernel_free_basis(&PolyMatrix::from_rows(vec![vec![Poly::<Rational>::d()]]).unwrap());
    assert!(ker.is_empty());
    assert_eq!(s.diagonal, vec![Poly::d()]);
}
