//! Exhaustive sweeps over small systems and coweight boxes.

use mwf_core::{cg, dl, AlgebraElement, Coweight, MetaplecticData, RationalElement, RootSystem};

const LABELS: [&str; 5] = ["A1", "A2", "B2", "G2", "A3"];

fn md(label: &str, n: u32, kappa: i64) -> MetaplecticData {
    MetaplecticData::new(RootSystem::from_label(label).unwrap(), n, kappa).unwrap()
}

fn monomial(x: Coweight, n: u32) -> RationalElement {
    RationalElement::from_poly(AlgebraElement::exp(x, n))
}

#[test]
fn reduced_words_multiply_to_the_element() {
    for label in LABELS {
        let rs = RootSystem::from_label(label).unwrap();
        for w in rs.weyl() {
            for word in rs.reduced_words(w) {
                assert_eq!(word.len(), w.length);
                assert_eq!(rs.from_word(&word).unwrap().matrix, w.matrix, "{label} {word:?}");
            }
        }
    }
}

#[test]
fn simple_reflections_change_length_by_one() {
    for label in LABELS {
        let rs = RootSystem::from_label(label).unwrap();
        for w in rs.weyl() {
            assert_eq!(rs.inversions(w).len(), w.length);
            for i in 0..rs.rank() {
                let l = rs.left_mul(i, w).length as i64;
                assert_eq!((l - w.length as i64).abs(), 1);
            }
        }
    }
}

#[test]
fn weyl_action_is_a_group_action() {
    for label in ["A1", "A2", "B2", "G2"] {
        let rs = RootSystem::from_label(label).unwrap();
        for x in cg::lambda_box(rs.rank(), 3) {
            for w in rs.weyl() {
                for u in rs.weyl() {
                    assert_eq!(rs.apply(w, &rs.apply(u, &x)), rs.apply(rs.compose(w, u), &x));
                }
            }
        }
    }
}

#[test]
fn quadratic_form_data() {
    for label in LABELS {
        for n in 1..=6 {
            for kappa in [1, 2] {
                let m = md(label, n, kappa);
                let rs = m.root_system();
                for i in 0..rs.rank() {
                    for j in 0..rs.rank() {
                        assert_eq!(
                            rs.cartan(i, j) as i64 * m.q_simple(j),
                            rs.cartan(j, i) as i64 * m.q_simple(i),
                            "{label} n={n}"
                        );
                    }
                }
                for g in rs.positive_coroots() {
                    let ng = m.n_of(g);
                    assert!(m.in_lambda0(&g.scale(ng as i32)), "{label} n={n} κ={kappa} γ={g}");
                    for w in rs.weyl() {
                        assert_eq!(m.n_of(&rs.apply(w, g)), ng);
                    }
                    for k in -20..=20i64 {
                        assert_eq!((k * m.q(g)).rem_euclid(n as i64) == 0, k.rem_euclid(ng as i64) == 0);
                    }
                }
            }
        }
    }
}

#[test]
fn cg_involution_on_monomials() {
    for label in ["A1", "A2", "B2", "G2"] {
        for n in 1..=4 {
            for kappa in [1, 2] {
                let m = md(label, n, kappa);
                let r = if m.rank() == 1 { 3 } else { 2 };
                for x in cg::lambda_box(m.rank(), r) {
                    let f = monomial(x, n);
                    for i in 0..m.rank() {
                        let back = cg::cg_word(&m, &[i as u8, i as u8], &f).unwrap();
                        assert!(back.rat_equal(&f), "{label} n={n} κ={kappa} λ={x}");
                    }
                }
            }
        }
    }
}

#[test]
fn cg_action_at_n_one_is_the_weyl_action() {
    for label in ["A1", "A2", "B2", "G2"] {
        let m = md(label, 1, 1);
        for x in cg::lambda_box(m.rank(), 3) {
            for i in 0..m.rank() {
                let got = cg::cg_simple(&m, i, &monomial(x, 1)).unwrap();
                assert!(got.rat_equal(&monomial(m.root_system().reflect(i, &x), 1)));
            }
        }
    }
}

#[test]
fn semilinearity_on_lambda0_basis() {
    for label in ["A2", "B2", "G2"] {
        for n in 2..=4 {
            let m = md(label, n, 1);
            for x in cg::lambda_box(2, 1) {
                for h in m.lambda0_basis() {
                    for i in 0..2 {
                        assert!(cg::verify_h_linearity(&m, i, &AlgebraElement::exp(*h, n), &monomial(x, n)).unwrap());
                    }
                }
            }
        }
    }
    let m = md("A2", 2, 1);
    let outside = AlgebraElement::exp(Coweight::new(&[1, 0]), 2);
    assert!(!m.in_lambda0(&Coweight::new(&[1, 0])));
    assert!(cg::verify_h_linearity(&m, 0, &outside, &monomial(Coweight::new(&[0, 0]), 2)).is_err());
}

#[test]
fn dl_closed_form_on_box() {
    for label in ["A1", "A2", "B2", "G2"] {
        for n in 1..=4 {
            let m = md(label, n, 1);
            let rs = m.root_system();
            for x in cg::lambda_box(m.rank(), 3) {
                for i in 0..m.rank() {
                    let t = dl::dl_simple(&m, i, &monomial(x, n)).unwrap();
                    if rs.pairing(&x, i) > 0 {
                        assert_eq!(Some(t), dl::ta_closed_form(&m, i, &x), "{label} n={n} λ={x}");
                    }
                }
            }
        }
    }
}

#[test]
fn reduced_words_agree_at_dominant_points() {
    for label in ["A2", "B2", "G2"] {
        for n in 1..=3 {
            let m = md(label, n, 1);
            for x in cg::lambda_box(2, 2).into_iter().filter(|x| m.root_system().is_dominant(x)) {
                assert!(dl::reduced_words_agree(&m, &x).unwrap(), "{label} n={n} λ={x}");
            }
        }
    }
}

#[test]
fn metaplectic_quadratic_relation() {
    for label in ["A2", "B2"] {
        for n in 1..=4 {
            let m = md(label, n, 1);
            for x in cg::lambda_box(2, 2) {
                for i in 0..2 {
                    assert!(dl::quadratic_relation_at(&m, i, &x).unwrap(), "{label} n={n} λ={x}");
                }
            }
        }
    }
}
