use proptest::prelude::*;
use qkahler::su2::{laplacian0_cp1, z, Generator, Pbw, SU2Element, Tensor};
use qkahler::Scalar;

fn gen() -> impl Strategy<Value = Generator> {
    prop_oneof![Just(Generator::A), Just(Generator::B), Just(Generator::C), Just(Generator::D)]
}

fn element(max_len: usize) -> impl Strategy<Value = SU2Element> {
    prop::collection::vec((prop::collection::vec(gen(), 0..=max_len), -3i64..=3, -2i64..=2), 1..3).prop_map(|terms| {
        terms.into_iter().fold(SU2Element::zero(), |acc, (w, c, k)| {
            &acc + &SU2Element::from_word(&w).scale(&Scalar::monomial(c, k))
        })
    })
}

fn monomial(max_deg: u32) -> impl Strategy<Value = SU2Element> {
    (0..=max_deg, 0..=max_deg, 0..=max_deg, 0..=max_deg, any::<bool>()).prop_filter_map("degree", move |(a, b, c, d, keep_a)| {
        let (a, d) = if keep_a { (a, 0) } else { (0, d) };
        let m = Pbw::new(a, b, c, d)?;
        (m.degree() <= max_deg).then(|| SU2Element::monomial(m, Scalar::one()))
    })
}

fn eps_tensor(x: &SU2Element) -> Tensor {
    Tensor::pure(&[SU2Element::scalar(x.counit())])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(x in monomial(4), y in monomial(4), w in monomial(4)) {
        prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
    }

    #[test]
    fn counit_is_multiplicative(x in element(3), y in element(3)) {
        prop_assert_eq!((&x * &y).counit(), &x.counit() * &y.counit());
    }

    #[test]
    fn hopf_axioms(x in element(3)) {
        let d = x.coproduct();
        prop_assert_eq!(d.apply_coproduct_at(0), d.apply_coproduct_at(1));
        prop_assert_eq!(d.apply_counit_at(0).into_element(), x.clone());
        prop_assert_eq!(d.apply_counit_at(1).into_element(), x.clone());
        prop_assert_eq!(d.apply_antipode_at(0).multiply_out(), eps_tensor(&x).into_element());
        prop_assert_eq!(d.apply_antipode_at(1).multiply_out(), eps_tensor(&x).into_element());
    }

    #[test]
    fn antipode_is_antimultiplicative(x in element(2), y in element(2)) {
        prop_assert_eq!((&x * &y).antipode(), &y.antipode() * &x.antipode());
    }

    #[test]
    fn coproduct_is_multiplicative(x in element(2), y in element(2)) {
        prop_assert_eq!((&x * &y).coproduct(), x.coproduct().multiply(&y.coproduct()));
    }
}

#[test]
fn normal_monomials_match_the_classical_count() {
    for max in 0..=6u32 {
        // span of matrix coefficients of the spin-m/2 representations, m <= max
        let classical: usize = (0..=max as usize).map(|m| (m + 1) * (m + 1)).sum();
        assert_eq!(Pbw::all_up_to(max).len(), classical, "D={max}");
    }
}

#[test]
fn words_reduce_into_the_filtration_and_span_it() {
    let gens = [Generator::A, Generator::B, Generator::C, Generator::D];
    let mut reached = std::collections::BTreeSet::new();
    let mut words: Vec<Vec<Generator>> = vec![vec![]];
    for len in 0..=4usize {
        for w in &words {
            for (m, _) in SU2Element::from_word(w).terms() {
                assert!(m.degree() as usize <= len);
                assert!(m.a == 0 || m.d == 0);
                reached.insert(*m);
            }
        }
        words = words.iter().flat_map(|w| gens.iter().map(move |g| [w.as_slice(), &[*g]].concat())).collect();
    }
    assert_eq!(reached.len(), Pbw::all_up_to(4).len());
}

#[test]
fn antipode_axiom_on_matrix_coefficients() {
    for i in 1..=2 {
        for j in 1..=2 {
            let s: SU2Element = (1..=2).fold(SU2Element::zero(), |acc, k| &acc + &(&SU2Element::u(i, k) * &SU2Element::u(k, j).antipode()));
            let expected = if i == j { SU2Element::one() } else { SU2Element::zero() };
            assert_eq!(s, expected, "i={i} j={j}");
        }
    }
}

#[test]
fn coproduct_of_z12_is_coassociative() {
    let d = z(1, 2).coproduct();
    assert_eq!(d.apply_coproduct_at(0), d.apply_coproduct_at(1));
    assert_eq!(z(1, 2).coproduct2(), d.apply_coproduct_at(1));
}

#[test]
fn laplacian_eigenvalue() {
    let q2 = Scalar::q_pow(2);
    let two_q = &Scalar::q() * &(&Scalar::q() + &Scalar::q_pow(-1));
    for (i, j) in [(1, 2), (2, 1)] {
        let lap = laplacian0_cp1(i, j);
        let intermediate = &(&SU2Element::u(i, 1) * &SU2Element::u(1, j).antipode()).scale(&q2)
            - &(&SU2Element::u(i, 2) * &SU2Element::u(2, j).antipode());
        assert_eq!(lap, intermediate);
        assert_eq!(lap, z(i, j).scale(&two_q));
    }
}
