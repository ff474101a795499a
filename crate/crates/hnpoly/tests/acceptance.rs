//! Acceptance gate: one line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test -p hnpoly --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hnpoly::suites::{self, Suite, SuiteParams};
use hnpoly_core::bundles::{
    fixed_det_poly, ss_series_closed, ss_series_recursive, stable_poly, BundleProblem, CurveParams,
};
use hnpoly_core::glroot::Genus;
use num_bigint::BigInt;
use num_traits::Zero;

const SEED: u64 = 7;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Result<String, String>,
}

fn suite(suite: Suite, n_max: usize, samples: usize, g: i64, order: usize) -> Result<String, String> {
    let params = SuiteParams {
        n_max,
        samples,
        seed: SEED,
        genus: Genus::new(g).unwrap(),
        order,
    };
    let report = suites::run(suite, &params).map_err(|e| e.to_string())?;
    match report.counterexample {
        None => Ok(format!("{} cases, {} checks", report.cases, report.checks)),
        Some(c) => Err(c),
    }
}

fn problem(n: usize, d: i64, g: i64, order: usize) -> BundleProblem {
    BundleProblem::new(n, d, CurveParams::new(g).unwrap(), order).unwrap()
}

fn langlands() -> Result<String, String> {
    suite(Suite::Langlands, 5, 1000, 2, 0)
}

fn arthur_boxes() -> Result<String, String> {
    suite(Suite::Gamma, 4, 500, 2, 0)
}

fn lattice_sums() -> Result<String, String> {
    suite(Suite::LatticeSum, 4, 1, 2, 40)
}

fn round_trip() -> Result<String, String> {
    let mut detail = Vec::new();
    for g in [2, 3] {
        detail.push(format!("g={g}: {}", suite(Suite::Inversion, 3, 20, g, 40)?));
    }
    Ok(detail.join("; "))
}

fn dual_algorithms() -> Result<String, String> {
    let mut count = 0;
    for g in [2, 3] {
        for n in 1..=3 {
            for d in -3..=3 {
                let p = problem(n, d, g, 40);
                let closed = ss_series_closed(&p).map_err(|e| e.to_string())?;
                let recursive = ss_series_recursive(&p).map_err(|e| e.to_string())?;
                if closed != recursive {
                    return Err(format!("n={n} d={d} g={g}: closed {closed} vs recursive {recursive}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} (n, d, g) triples"))
}

/// `Σ_{j <= k, j ≡ k (2)} C(2g, j)`: the coefficients of `(1 + t)^{2g} / (1 - t^2)`.
fn rank_one_oracle(g: u64, order: usize) -> Vec<BigInt> {
    let binom = |j: u64| -> BigInt {
        if j > 2 * g {
            BigInt::zero()
        } else {
            (0..j).fold(BigInt::from(1), |acc, i| acc * (2 * g - i) / (i + 1))
        }
    };
    (0..=order as u64)
        .map(|k| (0..=k).filter(|j| (k - j) % 2 == 0).map(binom).sum())
        .collect()
}

fn rank_one() -> Result<String, String> {
    let g2 = rank_one_oracle(2, 80);
    let head: Vec<BigInt> = [1, 4, 7, 8, 8, 8].iter().map(|&c| BigInt::from(c)).collect();
    if g2[..6] != head[..] || g2[4..].iter().any(|c| *c != BigInt::from(8)) {
        return Err("oracle for g=2 does not stabilize at 8".into());
    }
    for g in [2, 3, 4] {
        for d in [-1, 0, 1, 3] {
            let s = ss_series_closed(&problem(1, d, g, 80)).map_err(|e| e.to_string())?;
            let r = ss_series_recursive(&problem(1, d, g, 80)).map_err(|e| e.to_string())?;
            let want = rank_one_oracle(g as u64, 80);
            if s.coeffs() != want.as_slice() || r.coeffs() != want.as_slice() {
                return Err(format!("g={g} d={d}: {s}"));
            }
        }
    }
    Ok("g in {2,3,4}, order 80".into())
}

const COPRIME: [(usize, i64); 3] = [(2, 1), (3, 1), (3, 2)];

fn zero_tail(c: &[BigInt]) -> Option<usize> {
    let last = c.iter().rposition(|x| !x.is_zero())?;
    (last < c.len() - 1).then_some(last)
}

fn polynomiality() -> Result<String, String> {
    let mut degrees = Vec::new();
    for g in [2, 3] {
        for (n, d) in COPRIME {
            let p = problem(n, d, g, 80);
            let stable = stable_poly(&p).map_err(|e| e.to_string())?;
            let fixed = fixed_det_poly(&p).map_err(|e| e.to_string())?;
            for (what, poly) in [("stable", &stable), ("fixed", &fixed)] {
                let last = zero_tail(poly.series().coeffs())
                    .ok_or_else(|| format!("{what} n={n} d={d} g={g}: no zero tail through 80"))?;
                if last != poly.degree() {
                    return Err(format!("{what} n={n} d={d} g={g}: degree mismatch"));
                }
            }
            degrees.push(format!("({n},{d},g{g}):{}/{}", stable.degree(), fixed.degree()));
        }
    }
    Ok(format!("degrees stable/fixed {}", degrees.join(" ")))
}

/// Largest `k` with `(1 + t)^k` dividing `c`, by repeated synthetic division.
fn divisibility_oracle(c: &[BigInt]) -> usize {
    let mut c: Vec<BigInt> = c.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let mut k = 0;
    while c.len() > 1 {
        // c(t) = (1 + t) q(t) + r, q built from the top.
        let mut q = vec![BigInt::zero(); c.len() - 1];
        let mut carry = BigInt::zero();
        for i in (1..c.len()).rev() {
            carry = &c[i] - &carry;
            q[i - 1] = carry.clone();
        }
        if &c[0] - &carry != BigInt::zero() {
            break;
        }
        c = q;
        k += 1;
    }
    k
}

fn vanishing_at_minus_one() -> Result<String, String> {
    let mut orders = Vec::new();
    for g in [2, 3] {
        for (n, d) in COPRIME {
            let fixed = fixed_det_poly(&problem(n, d, g, 80)).map_err(|e| e.to_string())?;
            let chi: BigInt = fixed
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c })
                .sum();
            if !chi.is_zero() {
                return Err(format!("n={n} d={d} g={g}: value {chi} at t=-1"));
            }
            let need = (n - 1) * (2 * g as usize - 2);
            let k = divisibility_oracle(fixed.coeffs());
            if k < need || fixed.vanishing_order_at_minus_one().map_err(|e| e.to_string())? != k {
                return Err(format!("n={n} d={d} g={g}: (1+t)^{k} divides, need {need}"));
            }
            orders.push(format!("({n},{d},g{g}):{k}>={need}"));
        }
    }
    Ok(format!("vanishing orders {}", orders.join(" ")))
}

fn translation() -> Result<String, String> {
    for n in [2usize, 3] {
        for d in 0..=2 {
            let a = ss_series_recursive(&problem(n, d, 2, 60)).map_err(|e| e.to_string())?;
            let b = ss_series_recursive(&problem(n, d + n as i64, 2, 60)).map_err(|e| e.to_string())?;
            let c = ss_series_closed(&problem(n, d + n as i64, 2, 60)).map_err(|e| e.to_string())?;
            if a != b || a != c {
                return Err(format!("n={n} d={d}: ss(n,d) != ss(n,d+n)"));
            }
        }
    }
    Ok("n in {2,3}, d in {0,1,2}, order 60".into())
}

fn weyl() -> Result<String, String> {
    suite(Suite::Weyl, 6, 1, 2, 0)
}

fn cli(args: &[&str]) -> Result<(Vec<u8>, Option<i32>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hnpoly"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run hnpoly: {e}"))?;
    Ok((out.stdout, out.status.code()))
}

fn determinism() -> Result<String, String> {
    let commands: &[&[&str]] = &[
        &["stack", "--n", "3", "--g", "2"],
        &[
            "ss", "--n", "2", "--d", "1", "--g", "2", "--order", "40", "--method", "both",
        ],
        &[
            "ss",
            "--n",
            "3",
            "--d",
            "-2",
            "--g",
            "3",
            "--order",
            "30",
            "--method",
            "recursive",
        ],
        &["stable", "--n", "3", "--d", "1", "--g", "2"],
        &["stable", "--n", "2", "--d", "1", "--g", "3", "--fixed-det"],
        &["verify", "langlands", "--n-max", "4", "--samples", "50", "--seed", "11"],
        &["verify", "gamma", "--n-max", "3", "--samples", "50", "--seed", "11"],
        &["verify", "lemma23", "--n-max", "3", "--order", "20"],
        &["verify", "inversion", "--n-max", "2", "--samples", "3", "--order", "20"],
        &["verify", "weyl", "--n-max", "5"],
        &["stable", "--n", "2", "--d", "0"],
    ];
    let mut runs = 0;
    for cmd in commands {
        for format in ["plain", "json", "latex"] {
            let mut outputs = Vec::new();
            for threads in ["1", "4", "1", "4"] {
                let mut args = cmd.to_vec();
                args.extend(["--format", format, "--threads", threads]);
                outputs.push(cli(&args)?);
                runs += 1;
            }
            if outputs.windows(2).any(|w| w[0] != w[1]) {
                return Err(format!(
                    "{} --format {format}: output differs between runs",
                    cmd.join(" ")
                ));
            }
        }
    }
    Ok(format!("{runs} runs, thread counts 1 and 4"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "Langlands identities, n <= 5, 1000 points per pair",
            limit: Some(Duration::from_secs(60)),
            run: langlands,
        },
        Criterion {
            id: 2,
            name: "Gamma boxes and Gamma inversion, n <= 4, 500 points per pair",
            limit: Some(Duration::from_secs(60)),
            run: arthur_boxes,
        },
        Criterion {
            id: 3,
            name: "lattice sum closed form vs enumeration, n <= 4, order 40",
            limit: Some(Duration::from_secs(120)),
            run: lattice_sums,
        },
        Criterion {
            id: 4,
            name: "forward_sum after invert is the identity, n <= 3, order 40",
            limit: Some(Duration::from_secs(120)),
            run: round_trip,
        },
        Criterion {
            id: 5,
            name: "closed form = HN recursion, n <= 3, |d| <= 3, order 40",
            limit: Some(Duration::from_secs(300)),
            run: dual_algorithms,
        },
        Criterion {
            id: 6,
            name: "rank one is (1+t)^{2g}/(1-t^2) to order 80",
            limit: None,
            run: rank_one,
        },
        Criterion {
            id: 7,
            name: "coprime series are polynomials through order 80",
            limit: None,
            run: polynomiality,
        },
        Criterion {
            id: 8,
            name: "fixed determinant vanishes at t=-1 to order (n-1)(2g-2)",
            limit: None,
            run: vanishing_at_minus_one,
        },
        Criterion {
            id: 9,
            name: "ss(n,d) = ss(n,d+n) to order 60",
            limit: None,
            run: translation,
        },
        Criterion {
            id: 10,
            name: "Weyl product formula = inversion counts, rank <= 6",
            limit: None,
            run: weyl,
        },
        Criterion {
            id: 11,
            name: "CLI output byte-identical across runs and threads",
            limit: None,
            run: determinism,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if took > limit => Err(format!("took {took:.1?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("[PASS] {:>2} {} ({detail}; {took:.1?})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {} ({why}; {took:.1?})", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
