use qkahler::fiber::{basis_bidegree, basis_degree, bidegrees_of_degree};
use qkahler::lefschetz::*;
use qkahler::scalar::qfact;
use qkahler::sl2::{decompose_via_lambda, verify_lambda_lj};
use qkahler::{FiberForm, HodgeMode, Scalar};

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

fn subsets(n: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == l {
            out.push((1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect());
        }
    }
    out
}

#[test]
fn kappa_powers() {
    for n in 1..=4 {
        for l in 0..=n {
            let mut expected = FiberForm::zero(n);
            for idx in subsets(n, l) {
                expected = &expected + &FiberForm::basis(n, &idx, &idx).unwrap();
            }
            let c = &Scalar::i_pow((l % 2) as i64) * &qfact(l as i64, &HodgeMode::HEqQ).unwrap();
            assert_eq!(lefschetz_pow(&FiberForm::one(n), l), expected.scale(&c), "n={n} l={l}");
        }
    }
}

#[test]
fn lefschetz_raises_bidegree() {
    for n in 1..=3 {
        for m in qkahler::fiber::basis_all(n) {
            let (a, b) = m.bidegree();
            let img = lefschetz(&FiberForm::monomial(n, m, Scalar::one()));
            assert!(img.is_zero() || img.homogeneous_bidegree() == Some((a + 1, b + 1)));
        }
    }
}

#[test]
fn primitive_dimensions() {
    for n in 1..=3 {
        for k in 0..=n {
            let dim: usize = bidegrees_of_degree(n, k).iter().map(|(a, b)| primitive_basis(n, *a, *b).unwrap().len()).sum();
            let lower = if k >= 2 { binom(2 * n, k - 2) } else { 0 };
            assert_eq!(dim, binom(2 * n, k) - lower, "n={n} k={k}");
        }
        for k in 0..=2 * n {
            let total: usize = bidegrees_of_degree(n, k)
                .iter()
                .flat_map(|(a, b)| lefschetz_levels(n, *a, *b))
                .map(|(_, (pa, pb))| primitive_basis(n, pa, pb).unwrap().len())
                .sum();
            assert_eq!(total, binom(2 * n, k), "n={n} k={k}");
        }
    }
    // dim V^(1,1) - dim V^(0,0) for n = 3
    assert_eq!(primitive_basis(3, 1, 1).unwrap().len(), 9 - 1);
    for n in 1..=3 {
        for a in 0..=n {
            for b in (n - a + 1)..=n {
                assert!(primitive_basis(n, a, b).unwrap().is_empty(), "n={n} ({a},{b})");
            }
        }
    }
}

#[test]
fn primitive_vectors_are_killed_and_independent() {
    for n in 1..=3 {
        for k in 0..=n {
            for (a, b) in bidegrees_of_degree(n, k) {
                let prim = primitive_basis(n, a, b).unwrap();
                for p in prim.iter() {
                    assert!(lefschetz_pow(p, n - k + 1).is_zero());
                }
                let basis = basis_bidegree(n, a, b);
                let cols: Vec<Vec<Scalar>> = prim.iter().map(|p| p.coords(&basis)).collect();
                assert_eq!(qkahler::linalg::Matrix::from_columns(basis.len(), &cols).rank(), prim.len());
            }
        }
    }
}

#[test]
fn cp2_decomposition_against_hand_solution() {
    // e+1 e-1 = L(c) + x (e+1 e-1 - q^-2 e+2 e-2) with c i + x = 1 and
    // c i - x q^-2 = 0, so x = q^2/(1+q^2) and c = -i/(1+q^2).
    let n = 2;
    let u = FiberForm::parse(n, "e+[1]^e-[1]").unwrap();
    let one_q2 = &Scalar::one() + &Scalar::q_pow(2);
    let c = &-Scalar::i() / &one_q2;
    let x = &Scalar::q_pow(2) / &one_q2;
    let alpha0 = FiberForm::parse(n, "e+[1]^e-[1] + (-q^-2)*e+[2]^e-[2]").unwrap().scale(&x);
    let alpha1 = FiberForm::one(n).scale(&c);
    let d = lefschetz_decompose(&u).unwrap();
    assert_eq!(d.parts, vec![(0, alpha0), (1, alpha1)]);
    assert_eq!(d.recombine(), u);
}

#[test]
fn decomposition_is_idempotent_on_primitives_and_routes_agree() {
    for mode in [HodgeMode::HEqQ, HodgeMode::HEqOne] {
        for n in 1..=3 {
            for k in 0..=n {
                for p in primitive_basis_degree(n, k).unwrap() {
                    assert_eq!(lefschetz_decompose(&p).unwrap().parts, vec![(0, p.clone())]);
                }
            }
            for k in 0..=2 * n {
                for m in basis_degree(n, k) {
                    let u = FiberForm::monomial(n, m, Scalar::one());
                    let a = lefschetz_decompose(&u).unwrap();
                    assert_eq!(a.recombine(), u);
                    assert_eq!(decompose_via_lambda(&u, &mode).unwrap(), a, "n={n} {m}");
                }
            }
        }
    }
}

#[test]
fn lambda_on_lefschetz_powers() {
    for mode in [HodgeMode::HEqQ, HodgeMode::HEqOne, "numeric:9/10:3/2".parse().unwrap()] {
        for n in 1..=3 {
            let (count, failures) = verify_lambda_lj(n, &mode).unwrap();
            assert!(count > 0);
            assert!(failures.is_empty(), "n={n} mode={mode}: {:?}", failures.first());
        }
    }
}

#[test]
fn lefschetz_isomorphisms() {
    let r = verify_lefschetz_iso(2, 0).unwrap();
    assert_eq!(r.rank, 1);
    let two = qfact(2, &HodgeMode::HEqQ).unwrap();
    assert!((&r.determinant / &two).is_laurent_unit());
    assert_eq!(verify_lefschetz_iso(2, 1).unwrap().rank, 4);
    assert_eq!(verify_lefschetz_iso(3, 2).unwrap().rank, 15);
    for n in 1..=3 {
        for k in 0..n {
            assert!(verify_lefschetz_iso(n, k).unwrap().full_rank(), "n={n} k={k}");
        }
    }
    assert!(verify_lefschetz_iso(2, 2).is_err());
}
