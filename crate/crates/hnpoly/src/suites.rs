//! Identity suites behind `hnpoly verify`.
//!
//! Each suite expands into an ordered list of cases, checks them in
//! parallel and reports the first failing case in that order. Cases are
//! listed by increasing rank, so the reported counterexample is also one
//! of the smallest.

use std::fmt::Write;

use hnpoly_core::bundles::{stack_seed, CurveParams};
use hnpoly_core::chambers::{
    gamma, gamma_box, gamma_hat, gamma_hat_box, gamma_hat_reflected, gamma_inversion_first, gamma_inversion_second,
    kronecker, langlands_sum_first, langlands_sum_second, tau, tau_hat,
};
use hnpoly_core::glroot::{
    compositions, pair_fundamental_weight, pair_simple_root, refinements, weyl_poly, ChamberPoint, Composition,
    DegreeVector, Genus, ParabolicPair,
};
use hnpoly_core::inversion::{
    forward_sum, invert, lattice_sum, lattice_sum_bruteforce, SeedFunction, WeightModel, WeightedPair,
};
use hnpoly_core::pseries::TruncatedSeries;
use hnpoly_core::Result;
use itertools::Itertools;
use num_traits::Signed;
use rand::Rng;
use rayon::prelude::*;

use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Suite {
    Langlands,
    Gamma,
    /// Closed-form lattice sums against direct enumeration; CLI name `lemma23`.
    #[value(name = "lemma23", alias = "lattice")]
    LatticeSum,
    Inversion,
    Weyl,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Langlands => "langlands",
            Suite::Gamma => "gamma",
            Suite::LatticeSum => "lemma23",
            Suite::Inversion => "inversion",
            Suite::Weyl => "weyl",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub n_max: usize,
    /// Random points per pair (`langlands`, `gamma`) or random seed
    /// functions (`inversion`); unused by the exhaustive suites.
    pub samples: usize,
    pub seed: u64,
    pub genus: Genus,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: u64,
    pub checks: u64,
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Highest `|d|` per block in the lattice-sum suite.
pub const LATTICE_DEGREE_BOUND: i64 = 3;

/// Degrees placed on the first block in the `inversion` suite.
pub const ROUND_TRIP_DEGREES: [i64; 3] = [0, 1, 2];

/// Spread of the random chamber points.
const SPAN: i64 = 3;

#[derive(Default)]
struct Outcome {
    checks: u64,
    failure: Option<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(msg());
        }
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }
}

fn run_cases<C: Sync>(suite: Suite, cases: &[C], f: impl Fn(u64, &C) -> Result<Outcome> + Sync) -> Result<SuiteReport> {
    let outcomes: Vec<Outcome> = cases
        .par_iter()
        .enumerate()
        .map(|(i, c)| f(i as u64, c))
        .collect::<Result<_>>()?;
    Ok(SuiteReport {
        suite,
        cases: cases.len() as u64,
        checks: outcomes.iter().map(|o| o.checks).sum(),
        counterexample: outcomes.into_iter().find_map(|o| o.failure),
    })
}

pub fn run(suite: Suite, params: &SuiteParams) -> Result<SuiteReport> {
    match suite {
        Suite::Langlands => langlands(params),
        Suite::Gamma => gamma_suite(params),
        Suite::LatticeSum => lattice_sums(params),
        Suite::Inversion => inversion(params),
        Suite::Weyl => weyl(params),
    }
}

/// Every `P ⊆ R` in `GL_n` for `n <= n_max`, by rank then `R`.
pub fn all_pairs(n_max: usize) -> Vec<ParabolicPair> {
    (1..=n_max)
        .flat_map(compositions)
        .flat_map(|r| refinements(&r))
        .collect()
}

fn show_point(x: &ChamberPoint) -> String {
    format!("({})", x.values().iter().join(", "))
}

fn show_pair(p: &ParabolicPair) -> String {
    format!("P={} R={}", p.fine(), p.coarse())
}

fn langlands(params: &SuiteParams) -> Result<SuiteReport> {
    let pairs = all_pairs(params.n_max);
    run_cases(Suite::Langlands, &pairs, |i, pair| {
        let mut rng = rng::case_rng(params.seed, i);
        let mut out = Outcome::default();
        let delta = kronecker(pair);
        for _ in 0..params.samples {
            let h = rng::point(&mut rng, pair.fine().len(), SPAN);
            let first = langlands_sum_first(pair, &h)?;
            out.check(first == delta, || {
                format!(
                    "{} H={}: first sum {first}, expected {delta}",
                    show_pair(pair),
                    show_point(&h)
                )
            });
            let second = langlands_sum_second(pair, &h)?;
            out.check(second == delta, || {
                format!(
                    "{} H={}: second sum {second}, expected {delta}",
                    show_pair(pair),
                    show_point(&h)
                )
            });
            // Positivity of each root or each weight forces the obtuse chamber.
            let mut either = true;
            for j in pair.walls() {
                either &=
                    pair_simple_root(pair, &h, j)?.is_positive() || pair_fundamental_weight(pair, &h, j)?.is_positive();
            }
            let obtuse = tau_hat(pair, &h)?;
            out.check(!either || obtuse, || {
                format!(
                    "{} H={}: root-or-weight positive but not obtuse",
                    show_pair(pair),
                    show_point(&h)
                )
            });
            out.check(!tau(pair, &h)? || obtuse, || {
                format!("{} H={}: acute but not obtuse", show_pair(pair), show_point(&h))
            });
            if out.failed() {
                break;
            }
        }
        Ok(out)
    })
}

fn gamma_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let pairs = all_pairs(params.n_max);
    run_cases(Suite::Gamma, &pairs, |i, pair| {
        let mut rng = rng::case_rng(params.seed, i);
        let mut out = Outcome::default();
        let delta = kronecker(pair);
        for _ in 0..params.samples {
            let t = rng::dominant_point(&mut rng, pair, SPAN);
            let h = rng::point(&mut rng, pair.fine().len(), SPAN + 1);
            let at = || format!("{} H={} T={}", show_pair(pair), show_point(&h), show_point(&t));
            let g = gamma(pair, &h, &t)?;
            let gb = i32::from(gamma_box(pair, &h, &t)?);
            out.check(g == gb, || format!("{}: gamma {g}, box {gb}", at()));
            let gh = gamma_hat(pair, &h, &t)?;
            let ghb = i32::from(gamma_hat_box(pair, &h, &t)?);
            out.check(gh == ghb, || format!("{}: gamma_hat {gh}, box {ghb}", at()));
            let refl = gamma_hat_reflected(pair, &h, &t)?;
            out.check(gh == refl, || format!("{}: gamma_hat {gh}, reflected {refl}", at()));
            let first = gamma_inversion_first(pair, &h, &t)?;
            out.check(first == delta, || {
                format!("{}: first inversion sum {first}, expected {delta}", at())
            });
            let second = gamma_inversion_second(pair, &h, &t)?;
            out.check(second == delta, || {
                format!("{}: second inversion sum {second}, expected {delta}", at())
            });
            if out.failed() {
                break;
            }
        }
        Ok(out)
    })
}

fn lattice_sums(params: &SuiteParams) -> Result<SuiteReport> {
    let b = LATTICE_DEGREE_BOUND;
    let cases: Vec<(ParabolicPair, DegreeVector)> = all_pairs(params.n_max)
        .into_iter()
        .flat_map(|pair| {
            (0..pair.coarse().len())
                .map(|_| -b..=b)
                .multi_cartesian_product()
                .map(move |d| (pair.clone(), DegreeVector(d)))
        })
        .collect();
    run_cases(Suite::LatticeSum, &cases, |_, (pair, dq)| {
        let closed = lattice_sum(pair, dq, WeightModel::chamber_only(), params.order)?;
        let brute = lattice_sum_bruteforce(pair, dq, params.order)?;
        let mut out = Outcome::default();
        out.check(closed == brute, || {
            format!("{} dQ=({dq}): closed {closed}, enumerated {brute}", show_pair(pair))
        });
        Ok(out)
    })
}

/// A seed function with coefficients uniform in `-3..=3`.
pub fn random_seed_function(rng: &mut impl Rng, n: usize, order: usize) -> SeedFunction {
    SeedFunction::tabulate(n, |_| {
        let c: Vec<i64> = (0..=order).map(|_| rng.random_range(-3..=3)).collect();
        TruncatedSeries::from_i64s(&c, order)
    })
}

struct RoundTrip {
    seed_index: usize,
    q: Composition,
    dq: DegreeVector,
}

fn inversion(params: &SuiteParams) -> Result<SuiteReport> {
    let order = params.order;
    let model = WeightModel::curve(params.genus);
    let curve = CurveParams::from(params.genus);
    let mut seeds: Vec<Vec<SeedFunction>> = Vec::new();
    let mut cases = Vec::new();
    for n in 1..=params.n_max {
        // Index 0 is the stack seed; random seeds use their own streams.
        let mut per_rank = vec![stack_seed(n, curve, order)];
        for k in 0..params.samples {
            let mut rng = rng::case_rng(params.seed, ((n as u64) << 32) | k as u64);
            per_rank.push(random_seed_function(&mut rng, n, order));
        }
        for seed_index in 0..per_rank.len() {
            for q in compositions(n) {
                for &d in &ROUND_TRIP_DEGREES {
                    let mut dq = vec![0; q.len()];
                    dq[0] = d;
                    cases.push(RoundTrip {
                        seed_index,
                        q: q.clone(),
                        dq: DegreeVector(dq),
                    });
                }
            }
        }
        seeds.push(per_rank);
    }
    run_cases(Suite::Inversion, &cases, |_, case| {
        let a0 = &seeds[case.q.rank() - 1][case.seed_index];
        let b0 = |wp: &WeightedPair| invert(&wp.parabolic, &wp.degrees, a0, model, order);
        let got = forward_sum(&case.q, &case.dq, b0, model, order)?;
        let want = a0.get(&case.q)?;
        let mut out = Outcome::default();
        out.check(&got == want, || {
            let which = match case.seed_index {
                0 => "stack seed".to_string(),
                k => format!("random seed #{k}"),
            };
            let first = (0..=order).find(|&k| got.coeff(k) != want.coeff(k)).unwrap_or(0);
            let mut s = format!("Q={} dQ=({}) with {which}: ", case.q, case.dq);
            write!(s, "round trip differs first at t^{first}").unwrap();
            s
        });
        Ok(out)
    })
}

/// Number of permutations of `0..n` with each inversion count.
pub fn inversion_counts(n: usize) -> Vec<i64> {
    let mut counts = vec![0i64; n * n.saturating_sub(1) / 2 + 1];
    for p in (0..n).permutations(n) {
        let inv = p.iter().tuple_combinations().filter(|(a, b)| a > b).count();
        counts[inv] += 1;
    }
    counts
}

fn weyl(params: &SuiteParams) -> Result<SuiteReport> {
    let ranks: Vec<usize> = (1..=params.n_max).collect();
    run_cases(Suite::Weyl, &ranks, |_, &n| {
        let counts = inversion_counts(n);
        let order = counts.len() - 1;
        let product = weyl_poly(n, order);
        let brute = TruncatedSeries::from_i64s(&counts, order);
        let mut out = Outcome::default();
        out.check(product == brute, || {
            format!("S_{n}: product {product}, enumerated {brute}")
        });
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n_max: usize, samples: usize) -> SuiteParams {
        SuiteParams {
            n_max,
            samples,
            seed: 7,
            genus: Genus::new(2).unwrap(),
            order: 12,
        }
    }

    #[test]
    fn inversion_counts_are_mahonian() {
        assert_eq!(inversion_counts(1), [1]);
        assert_eq!(inversion_counts(3), [1, 2, 2, 1]);
        assert_eq!(inversion_counts(4), [1, 3, 5, 6, 5, 3, 1]);
    }

    #[test]
    fn small_suites_pass() {
        for suite in [
            Suite::Langlands,
            Suite::Gamma,
            Suite::LatticeSum,
            Suite::Inversion,
            Suite::Weyl,
        ] {
            let report = run(suite, &params(3, 5)).unwrap();
            assert!(report.passed(), "{}: {:?}", suite.name(), report.counterexample);
            assert!(report.checks >= report.cases);
        }
    }

    #[test]
    fn first_failure_in_case_order_is_reported() {
        let cases: Vec<u32> = (0..50).collect();
        let report = run_cases(Suite::Weyl, &cases, |_, &c| {
            let mut out = Outcome::default();
            out.check(c % 7 != 3, || format!("case {c}"));
            out.check(c % 7 != 3, || "second".into());
            Ok(out)
        })
        .unwrap();
        assert_eq!(report.counterexample.as_deref(), Some("case 3"));
        assert_eq!((report.cases, report.checks), (50, 100));
    }

    #[test]
    fn reports_do_not_depend_on_thread_count() {
        let p = params(3, 20);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        for suite in [Suite::Langlands, Suite::Gamma] {
            assert_eq!(
                one.install(|| run(suite, &p)).unwrap(),
                four.install(|| run(suite, &p)).unwrap()
            );
        }
    }
}
