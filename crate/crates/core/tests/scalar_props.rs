use num_rational::BigRational;
use proptest::prelude::*;
use qkahler::scalar::{qbinom, qfact, qint};
use qkahler::{HodgeMode, Scalar};

fn small_scalar() -> impl Strategy<Value = Scalar> {
    // sums of a few c * i^e * q^k terms, optionally divided by (1 + t q^m)
    let term = (-4i64..=4, 0i64..4, -3i64..=3).prop_map(|(c, e, k)| &Scalar::from_int(c) * &(&Scalar::i_pow(e) * &Scalar::q_pow(k)));
    (prop::collection::vec(term, 1..4), -3i64..=3, 1i64..3).prop_map(|(terms, t, m)| {
        let num: Scalar = terms.into_iter().sum();
        let den = &Scalar::one() + &(&Scalar::from_int(t) * &Scalar::q_pow(m));
        if den.is_zero() {
            num
        } else {
            &num / &den
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(x in small_scalar(), y in small_scalar(), z in small_scalar()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(x in small_scalar(), y in small_scalar()) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(x in small_scalar(), y in small_scalar(), p in 1i64..20, d in 1i64..20) {
        let q0 = BigRational::new(p.into(), d.into());
        let (Ok(ex), Ok(ey)) = (x.evaluate(&q0), y.evaluate(&q0)) else { return Ok(()) };
        prop_assert_eq!((&x * &y).evaluate(&q0).unwrap(), &ex * &ey);
        prop_assert_eq!((&x + &y).evaluate(&q0).unwrap(), &ex + &ey);
    }

    #[test]
    fn canonical_strings_round_trip(x in small_scalar()) {
        let back: Scalar = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn gaussian_binomials_are_symmetric() {
    for mode in [HodgeMode::HEqQ, HodgeMode::HEqOne] {
        for a in 0..=8 {
            for b in 0..=a {
                let x = qbinom(a, b, &mode).unwrap();
                assert_eq!(x, qbinom(a, a - b, &mode).unwrap(), "a={a} b={b}");
                assert!(x.is_laurent());
            }
        }
    }
}

/// Integer polynomials in `t = q^2`, lowest degree first.
fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let mut quot = vec![0; num.len() - dl + 1];
    for s in (0..quot.len()).rev() {
        let c = rem[s + dl - 1] / den[dl - 1];
        assert_eq!(c * den[dl - 1], rem[s + dl - 1]);
        quot[s] = c;
        for (j, d) in den.iter().enumerate() {
            rem[s + j] -= c * d;
        }
    }
    assert!(rem.iter().all(|&r| r == 0));
    quot
}

#[test]
fn qbinom_4_2_matches_division_oracle() {
    // [m] = q^(1-m) (1 + t + ... + t^(m-1)); the q-power prefactors cancel in
    // [4]!/([2]![2]!) up to q^(-(0+1+2+3) + 2(0+1)) = q^-4.
    let qi = |m: usize| vec![1i64; m];
    let fact = |m: usize| (1..=m).fold(vec![1i64], |acc, j| poly_mul(&acc, &qi(j)));
    let num = fact(4);
    let den = poly_mul(&fact(2), &fact(2));
    let quot = poly_div_exact(&num, &den);
    let expected: Scalar = quot.iter().enumerate().map(|(e, &c)| &Scalar::from_int(c) * &Scalar::q_pow(2 * e as i64 - 4)).sum();
    let got = qbinom(4, 2, &HodgeMode::HEqQ).unwrap();
    assert_eq!(got, expected);
    assert_eq!(got.to_string(), "q^4 + q^2 + 2 + q^-2 + q^-4");
}

#[test]
fn spec_level_examples() {
    let hq = HodgeMode::HEqQ;
    assert_eq!(qfact(2, &hq).unwrap().to_string(), "q + q^-1");
    assert_eq!(qint(3, &hq).unwrap().evaluate(&BigRational::from_integer(2.into())).unwrap().to_string(), "21/4");
    let pole = Scalar::one().checked_div(&(&Scalar::q() - &Scalar::one())).unwrap();
    assert!(matches!(pole.evaluate(&BigRational::from_integer(1.into())), Err(qkahler::Error::Pole(_))));
    assert!(matches!(pole.evaluate(&BigRational::from_integer(0.into())), Err(qkahler::Error::NonPositivePoint(_))));
    let iq2 = &Scalar::i() * &Scalar::q_pow(2);
    assert_eq!(iq2.conj(), -iq2.clone());
}
