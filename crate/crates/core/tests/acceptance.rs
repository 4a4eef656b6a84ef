//! Acceptance criteria. Prints one PASS/FAIL line per criterion. Exits
//! nonzero on any failure except those listed in `KNOWN_FAILURES`, which are
//! still printed as FAIL; a known failure that starts passing also exits
//! nonzero so the list cannot go stale.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qkahler::fiber::{basis_all, basis_bidegree, basis_degree};
use qkahler::hodge::{certify_posdef, gram, hodge_operator, metric};
use qkahler::lefschetz::{lefschetz_pow, primitive_basis, verify_lefschetz_iso};
use qkahler::linalg::Matrix;
use qkahler::scalar::parse_sample_point;
use qkahler::sl2::{primitive_kernel_table, verify_lambda_lj, verify_lefschetz_identities, RelationKind};
use qkahler::su2::{laplacian0_cp1, z, SU2Element};
use qkahler::verify::{gaussbin_flag, run, Status, Suite, VerifyConfig};
use qkahler::{FiberForm, HodgeMode, Scalar};

/// Criteria that cannot hold as stated, with the reason.
const KNOWN_FAILURES: [(&str, &str); 1] = [(
    "7",
    "the stated [H,Lambda]_{h^2} = -[2]_{h^2} K Lambda is false for h != 1 (already at n = 1); \
     the exact identity is -h^2 [2]_h K Lambda",
)];

type Criterion = (&'static str, fn() -> Outcome, u64);

struct Outcome {
    ok: bool,
    note: String,
}

fn outcome(ok: bool, note: impl Into<String>) -> Outcome {
    Outcome { ok, note: note.into() }
}

fn modes() -> [HodgeMode; 2] {
    [HodgeMode::HEqQ, HodgeMode::HEqOne]
}

fn f(n: usize, s: &str) -> FiberForm {
    FiberForm::parse(n, s).unwrap()
}

fn mono(n: usize, m: qkahler::BasisMonomial) -> FiberForm {
    FiberForm::monomial(n, m, Scalar::one())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

// q-numbers recomputed from the definition, independent of the library's tables
fn oracle_qint(m: usize, mode: &HodgeMode) -> Scalar {
    (0..m).map(|t| mode.h_pow(m as i64 - 1 - 2 * t as i64)).sum()
}

fn oracle_qfact(m: usize, mode: &HodgeMode) -> Scalar {
    (1..=m).map(|t| oracle_qint(t, mode)).product()
}

fn c1_dimensions() -> Outcome {
    for n in 1..=4 {
        for k in 0..=2 * n {
            let dim = basis_degree(n, k).len();
            if dim != binomial(2 * n, k) {
                return outcome(false, format!("n={n} k={k}: {dim}"));
            }
        }
    }
    outcome(true, "n = 1..4, every k")
}

fn c2_kappa_powers() -> Outcome {
    for n in 1..=4 {
        for l in 0..=n {
            let mut sum = FiberForm::zero(n);
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize == l {
                    let idx: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                    sum = &sum + &FiberForm::basis(n, &idx, &idx).unwrap();
                }
            }
            let c = &Scalar::i_pow((l % 2) as i64) * &oracle_qfact(l, &HodgeMode::HEqQ);
            if lefschetz_pow(&FiberForm::one(n), l) != sum.scale(&c) {
                return outcome(false, format!("n={n} l={l}"));
            }
        }
    }
    outcome(true, "n <= 4, l <= n")
}

fn c3_hodge_tables() -> Outcome {
    let hq = HodgeMode::HEqQ;
    let cases = [
        (1, "e+[]^e-[]", "(i)*e+[1]^e-[1]"),
        (1, "e+[1]^e-[]", "(-i)*e+[1]^e-[]"),
        (1, "e+[]^e-[1]", "(i)*e+[]^e-[1]"),
        (2, "e+[1]^e-[]", "e+[1,2]^e-[2]"),
        (2, "e+[2]^e-[]", "(-q)*e+[1,2]^e-[1]"),
        (2, "e+[]^e-[1]", "(q^-1)*e+[2]^e-[1,2]"),
        (2, "e+[]^e-[2]", "(-1)*e+[1]^e-[1,2]"),
    ];
    for (n, u, v) in cases {
        let got = hodge_operator(n, &hq).unwrap().apply(&f(n, u)).unwrap();
        if got != f(n, v) {
            return outcome(false, format!("*({u}) = {got}"));
        }
    }
    assert_eq!(FiberForm::kappa(1), f(1, "(i)*e+[1]^e-[1]"));
    let star = hodge_operator(2, &hq).unwrap();
    for ((a, b), sign) in [((2, 0), 1), ((1, 1), -1), ((0, 2), 1)] {
        for p in primitive_basis(2, a, b).unwrap().iter() {
            if star.apply(p).unwrap() != p.scale(&Scalar::from_int(sign)) {
                return outcome(false, format!("P^({a},{b}) sign at {p}"));
            }
        }
    }
    outcome(true, "CP^1 three lines, CP^2 four images and three primitive signs")
}

fn c4_primitive_span() -> Outcome {
    let n = 2;
    let basis = basis_bidegree(n, 1, 1);
    let expected = ["e+[1]^e-[2]", "e+[2]^e-[1]", "e+[1]^e-[1] + (-q^-2)*e+[2]^e-[2]"].map(|s| f(n, s).coords(&basis));
    let got: Vec<Vec<Scalar>> = primitive_basis(n, 1, 1).unwrap().iter().map(|p| p.coords(&basis)).collect();
    let mut both = expected.to_vec();
    both.extend(got.iter().cloned());
    let r_exp = Matrix::from_columns(4, &expected).rank();
    let r_got = Matrix::from_columns(4, &got).rank();
    let r_both = Matrix::from_columns(4, &both).rank();
    outcome(
        got.len() == 3 && r_exp == 3 && r_got == 3 && r_both == 3,
        format!("ranks: expected {r_exp}, computed {r_got}, joint {r_both}"),
    )
}

fn c5_metric_table() -> Outcome {
    let hq = HodgeMode::HEqQ;
    let two = &Scalar::q() + &Scalar::q_pow(-1);
    let cases = [
        (2, "e+[1]^e-[]", Scalar::q_pow(-5)),
        (2, "e+[2]^e-[]", Scalar::q_pow(-5)),
        (2, "e+[]^e-[1]", Scalar::q_pow(7)),
        (2, "e+[]^e-[2]", Scalar::q_pow(9)),
        (2, "e+[1,2]^e-[]", Scalar::q_pow(-11)),
        (2, "e+[]^e-[1,2]", Scalar::q_pow(17)),
        (2, "e+[1]^e-[2]", Scalar::q_pow(3)),
        (2, "e+[2]^e-[1]", Scalar::q()),
        (2, "e+[1]^e-[1] + (-q^-2)*e+[2]^e-[2]", two),
        (1, "e+[]^e-[1]", Scalar::q_pow(6)),
        (1, "e+[1]^e-[]", Scalar::q_pow(-4)),
    ];
    for (n, u, v) in cases {
        let u = f(n, u);
        let got = metric(&u, &u, &hq).unwrap();
        if got != v {
            return outcome(false, format!("<{u},{u}> = {got}, expected {v}"));
        }
    }
    let cfg = VerifyConfig::new(1, hq, vec![parse_sample_point("1").unwrap()]).unwrap();
    let report = run(&cfg, &[Suite::Metric]).unwrap();
    let flagged = report.flags().any(|c| c.name.contains("q^4") && c.details["computed"] == "q^-4");
    outcome(flagged, "eleven values; report flags the stated CP^1 value q^4 (computed q^-4)")
}

fn c6_hodge_properties() -> Outcome {
    for mode in modes() {
        for n in 1..=3 {
            let star = hodge_operator(n, &mode).unwrap();
            for m in basis_all(n) {
                let u = mono(n, m);
                let (a, b) = m.bidegree();
                let v = star.apply(&u).unwrap();
                let sign = Scalar::from_int(if (a + b) % 2 == 0 { 1 } else { -1 });
                if star.apply(&v).unwrap() != u.scale(&sign) {
                    return outcome(false, format!("{mode} n={n}: *^2 at {m}"));
                }
                if v.homogeneous_bidegree() != Some((n - b, n - a)) {
                    return outcome(false, format!("{mode} n={n}: bidegree of *{m}"));
                }
                if star.apply(&u.star()).unwrap() != v.star() {
                    return outcome(false, format!("{mode} n={n}: star compatibility at {m}"));
                }
            }
            for a in 0..=n {
                for b in 0..=n {
                    let tgt = (n - b, n - a);
                    let src_basis = basis_bidegree(n, a, b);
                    let images: Vec<FiberForm> = src_basis.iter().map(|m| star.apply(&mono(n, *m)).unwrap()).collect();
                    let gs = gram(n, a, b, &mode).unwrap();
                    let gt = gram(n, tgt.0, tgt.1, &mode).unwrap();
                    for (r, x) in images.iter().enumerate() {
                        for (s, y) in images.iter().enumerate() {
                            let xc = x.coords(&gt.basis);
                            let yc = y.coords(&gt.basis);
                            let mut val = Scalar::zero();
                            for (i, xi) in xc.iter().enumerate() {
                                for (j, yj) in yc.iter().enumerate() {
                                    val = &val + &(&(xi * gt.matrix.get(i, j)) * &yj.conj());
                                }
                            }
                            if &val != gs.matrix.get(r, s) {
                                return outcome(false, format!("{mode} n={n}: unitarity on ({a},{b})"));
                            }
                        }
                    }
                }
            }
        }
    }
    outcome(true, "n <= 3, h=q and h=1")
}

fn c7_lefschetz_identities() -> Outcome {
    let mut broken = Vec::new();
    let mut corrected_ok = true;
    for mode in modes() {
        for n in 1..=3 {
            for r in verify_lefschetz_identities(n, &mode).unwrap() {
                match r.kind {
                    RelationKind::Stated if !r.holds => {
                        let tag = format!("{mode} n={n}: {}", r.relation);
                        if !broken.contains(&tag) {
                            broken.push(tag);
                        }
                    }
                    RelationKind::Corrected => corrected_ok &= r.holds,
                    _ => {}
                }
            }
        }
    }
    if broken.is_empty() {
        return outcome(true, "n <= 3, both modes");
    }
    let tail = if corrected_ok { "; the form -h^2 [2]_h K Lambda holds everywhere" } else { "" };
    outcome(false, format!("violated: {}{}", broken.join(" | "), tail))
}

fn c8_lambda_on_strings() -> Outcome {
    for mode in modes() {
        for n in 1..=3 {
            let (count, failures) = verify_lambda_lj(n, &mode).unwrap();
            if count == 0 && n > 1 || !failures.is_empty() {
                return outcome(false, format!("{mode} n={n}: {} failures", failures.len()));
            }
            for (k, ker, prim, killed) in primitive_kernel_table(n, &mode).unwrap() {
                if ker != prim || !killed {
                    return outcome(false, format!("{mode} n={n} k={k}: ker {ker} vs P {prim}"));
                }
                let expected = if k <= n {
                    binomial(2 * n, k) - if k >= 2 { binomial(2 * n, k - 2) } else { 0 }
                } else {
                    0
                };
                if prim != expected {
                    return outcome(false, format!("{mode} n={n} k={k}: dim P = {prim}"));
                }
            }
        }
    }
    outcome(true, "n <= 3, both modes")
}

fn c9_positive_definite() -> Outcome {
    let points = ["9/10", "1", "11/10"].map(|s| parse_sample_point(s).unwrap());
    let mut blocks = 0;
    for mode in modes() {
        for n in 1..=3 {
            for a in 0..=n {
                for b in 0..=n {
                    let g = gram(n, a, b, &mode).unwrap();
                    for q0 in &points {
                        let c = certify_posdef(&g, q0).unwrap();
                        if !c.verdict() {
                            return outcome(false, format!("{mode} n={n} ({a},{b}) q0={q0}"));
                        }
                        blocks += 1;
                    }
                }
            }
        }
    }
    outcome(true, format!("{blocks} exact LDL certificates"))
}

fn c10_lefschetz_iso() -> Outcome {
    for n in 1..=3 {
        for k in 0..n {
            let r = verify_lefschetz_iso(n, k).unwrap();
            if !r.full_rank() || r.dim != binomial(2 * n, k) {
                return outcome(false, format!("n={n} k={k}: rank {} of {}", r.rank, r.dim));
            }
        }
    }
    outcome(true, "n <= 3, k < n")
}

fn c11_cp1_laplacian() -> Outcome {
    let eigen = &Scalar::q() * &oracle_qint(2, &HodgeMode::HEqQ);
    for (i, j) in [(1, 2), (2, 1)] {
        let lap = laplacian0_cp1(i, j);
        let inter = &SU2Element::u(i, 1).multiply(&SU2Element::u(1, j).antipode()).scale(&Scalar::q_pow(2))
            - &SU2Element::u(i, 2).multiply(&SU2Element::u(2, j).antipode());
        if lap != inter || lap != z(i, j).scale(&eigen) {
            return outcome(false, format!("z{i}{j}: {lap}"));
        }
    }
    outcome(true, "Δ(z12) = q[2]_q z12 and Δ(z21) = q[2]_q z21, via the intermediate line")
}

fn c12_rescaling() -> Outcome {
    let n = 2;
    for mode in modes() {
        for k in 0..=n {
            for a in 0..=k {
                let b = k - a;
                if a > n || b > n {
                    continue;
                }
                let prim = primitive_basis(n, a, b).unwrap();
                for j in 0..=n - k {
                    let c = (&oracle_qfact(j, &mode) * &oracle_qfact(n - k, &mode))
                        .checked_div(&oracle_qfact(n - j - k, &mode))
                        .unwrap();
                    for x in prim.iter() {
                        for y in prim.iter() {
                            let lhs = metric(&lefschetz_pow(x, j), &lefschetz_pow(y, j), &mode).unwrap();
                            let rhs = &c * &metric(x, y, &mode).unwrap();
                            if lhs != rhs {
                                return outcome(false, format!("{mode} j={j} at {x}, {y}"));
                            }
                        }
                    }
                }
            }
        }
    }
    let flag = gaussbin_flag(n, &HodgeMode::HEqQ).unwrap();
    outcome(
        flag.status == Status::Flagged,
        "exhaustive on n = 2 primitive bases; report flags the stated binomial constant",
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("1 dimension table", c1_dimensions, 5),
        ("2 powers of kappa", c2_kappa_powers, 30),
        ("3 Hodge tables", c3_hodge_tables, 5),
        ("4 CP^2 primitive (1,1) span", c4_primitive_span, 5),
        ("5 metric table", c5_metric_table, 10),
        ("6 Hodge properties", c6_hodge_properties, 120),
        ("7 deformed Lefschetz identities", c7_lefschetz_identities, 120),
        ("8 Lambda L^j and P^k = ker Lambda", c8_lambda_on_strings, 60),
        ("9 positive definiteness", c9_positive_definite, 120),
        ("10 Lefschetz isomorphism", c10_lefschetz_iso, 60),
        ("11 CP^1 Laplacian", c11_cp1_laplacian, 5),
        ("12 rescaling constant", c12_rescaling, 30),
    ];
    let mut failed = 0;
    let mut unexpected = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let ok = out.ok && in_time;
        let id = name.split_whitespace().next().unwrap();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id);
        if !ok {
            failed += 1;
        }
        if ok == known.is_some() {
            unexpected += 1;
        }
        let verdict = if ok { "PASS" } else { "FAIL" };
        let slow = if in_time { String::new() } else { format!(" (over the {budget} s budget)") };
        println!("{verdict} criterion {name}: {} [{:.2?}]{slow}", out.note, elapsed);
        match (known, ok) {
            (Some((_, why)), false) => println!("    known failure: {why}"),
            (Some(_), true) => println!("    listed as a known failure but now passes; update KNOWN_FAILURES"),
            _ => {}
        }
    }
    println!("{} of 12 criteria passed, {} unexpected outcome(s)", 12 - failed, unexpected);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
