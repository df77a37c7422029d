use std::sync::Arc;

use confkit::annihilation::weight_of;
use confkit::conformal::build_w;
use confkit::repn::{
    build_bar_forms, build_dual_rep, build_forms_const, build_standard, tens, tens_index, GlRep,
};
use confkit::scalar::rat;
use confkit::{Error, ModuleVector, Rational};

fn q(p: i64) -> Rational {
    rat(p, 1)
}

fn built_reps(n: usize, kmax: u32) -> Vec<(String, GlRep<Rational>)> {
    let mut out = vec![("standard".to_string(), build_standard(n))];
    for k in 0..=kmax {
        out.push((format!("Ω^{k}_c"), build_forms_const(k, n)));
        out.push((format!("Θ^{k}_c"), build_dual_rep(&build_forms_const(k, n))));
        out.push((format!("Ω̄^{k}_c"), build_bar_forms(k, n)));
    }
    out
}

#[test]
fn built_reps_validate() {
    for n in 0..=3 {
        for (name, v) in built_reps(n, 3) {
            assert_eq!(v.validate(), Ok(()), "{name} n={n}");
        }
    }
}

#[test]
fn mutation_of_odd_unit_parity_is_rejected() {
    let v = build_standard::<Rational>(2);
    let mut m = v.unit(0, 1).clone();
    m[0][0] = q(1);
    assert!(matches!(v.with_unit(0, 1, m).validate(), Err(Error::ParityViolation { i: 0, j: 1 })));
}

#[test]
fn tens_satisfies_m2_small() {
    for n in 0..=2 {
        let w = Arc::new(build_w::<Rational>(n));
        for (name, v) in built_reps(n, 2) {
            let m = tens(&v, &w).unwrap();
            let bad = m.check_m2();
            assert!(bad.is_empty(), "{name} n={n}: {:?}", &bad[..bad.len().min(4)]);
        }
    }
}

#[test]
fn tens_weights_match_cartan() {
    for n in 0..=2 {
        let w = Arc::new(build_w::<Rational>(n));
        for (name, v) in built_reps(n, 2) {
            let m = tens(&v, &w).unwrap();
            for id in 0..m.dim() {
                for k in 0..=2u32 {
                    let x = ModuleVector::term(k, id, q(1));
                    let got = weight_of(&m, &x).unwrap().as_vec();
                    let mut want = m.basis().weight(id).unwrap().to_vec();
                    want.iter_mut().for_each(|c| *c = c.clone() - q(k as i64));
                    assert_eq!(got, want, "{name} n={n} id={id} k={k}");
                }
            }
            let _ = tens_index(v.dim(), 0, 0);
        }
    }
}

#[test]
fn highest_weights_of_built_reps() {
    for n in 1..=3 {
        for k in 0..=3u32 {
            let theta = build_dual_rep(&build_forms_const::<Rational>(k, n));
            let hv = theta.highest_vectors();
            assert_eq!(hv.len(), 1, "Θ^{k} n={n}");
            let mut want = vec![q(0); n + 1];
            want[n] = q(-(k as i64));
            assert_eq!(theta.weight(hv[0]), &want[..]);
            if k > 0 {
                let bar = build_bar_forms::<Rational>(k, n);
                let hv = bar.highest_vectors();
                assert_eq!(hv.len(), 1);
                let mut want = vec![q(0), q(k as i64)];
                want.extend(std::iter::repeat_n(q(1), n - 1));
                assert_eq!(bar.weight(hv[0]), &want[..], "Ω̄^{k} n={n}");
            }
        }
        assert_eq!(build_forms_const::<Rational>(0, n).dim(), 1);
    }
}

mod w1_and_duals {
    use std::sync::Arc;

    use confkit::conformal::build_w;
    use confkit::repn::{
        build_l0b, build_la_minus_a, build_m_ab, build_standard, build_submodule_n, conformal_dual,
        double_dual_matches, tens, virasoro_d,
    };
    use confkit::scalar::rat;
    use confkit::Rational;

    fn grid() -> Vec<Rational> {
        [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)].iter().map(|&(p, q)| rat(p, q)).collect()
    }

    #[test]
    fn m_ab_tables_m2() {
        let mut bad = Vec::new();
        for a in grid() {
            for b in grid() {
                let f = build_m_ab(&a, &b).check_m2();
                if !f.is_empty() {
                    bad.push((a.clone(), b.clone(), f[0]));
                }
            }
        }
        assert!(bad.is_empty(), "{} failing points, first {:?}", bad.len(), bad.first());
    }

    #[test]
    fn quotient_tables_m2() {
        for x in grid() {
            assert!(build_l0b(&x).check_m2().is_empty(), "L(0,{x})");
            assert!(build_la_minus_a(&x).check_m2().is_empty(), "M({x},-{x})");
        }
    }

    #[test]
    fn n_is_a_submodule() {
        for b in grid() {
            let n = build_submodule_n(&b).unwrap();
            assert!(n.is_morphism());
            assert!(n.is_injective());
            assert!(n.cokernel().torsion().is_empty());
            assert!(n.transpose().is_surjective(), "b={b}");
        }
    }

    #[test]
    fn double_dual() {
        let w = Arc::new(build_w::<Rational>(2));
        let m = tens(&build_standard(2), &w).unwrap();
        let mab = build_m_ab(&rat(1, 2), &rat(1, 3));
        for x in [&m, &mab] {
            assert!(conformal_dual(x).check_m2().is_empty());
            assert!(double_dual_matches(x, true));
            assert!(!double_dual_matches(x, false));
        }
    }

    #[test]
    fn virasoro_transpose() {
        let d = virasoro_d::<Rational>();
        assert!(d.is_morphism());
        let t = d.transpose();
        assert!(t.is_morphism());
        assert!(!t.is_surjective());
    }
}

#[test]
fn virasoro_inside_w1_and_dictionary() {
    use confkit::repn::{cl_params, virasoro_element};
    let w = build_w::<Rational>(1);
    let l = virasoro_element::<Rational>();
    let mut want = confkit::LambdaValued::constant(l.d_pow(1));
    want.add_coeff(1, &l, &q(2));
    assert_eq!(w.bracket(&l, &l), want);
    assert_eq!(cl_params(&q(0), &q(0)), (q(0), q(0)));
    assert_eq!(cl_params(&q(1), &q(0)), (q(-1), q(0)));
    assert_eq!(cl_params(&q(0), &q(2)), (q(-1), q(2)));
}
