//! Composition sums evaluated in parallel and added in a fixed order.

use hnpoly_core::bundles::{closed_form_term, fixed_det_term, AttestedPolynomial, BundleProblem};
use hnpoly_core::glroot::{compositions, Composition};
use hnpoly_core::pseries::TruncatedSeries;
use hnpoly_core::{Error, Result};
use rayon::prelude::*;

fn sum_terms(
    problem: &BundleProblem,
    term: fn(&BundleProblem, &Composition) -> Result<TruncatedSeries>,
) -> Result<TruncatedSeries> {
    let terms: Vec<TruncatedSeries> = compositions(problem.rank)
        .par_iter()
        .map(|c| term(problem, c))
        .collect::<Result<_>>()?;
    let mut acc = TruncatedSeries::zero(problem.order);
    for t in &terms {
        acc.add_assign(t)?;
    }
    Ok(acc)
}

fn require_coprime(problem: &BundleProblem) -> Result<()> {
    if problem.is_coprime() {
        Ok(())
    } else {
        Err(Error::NotCoprime {
            rank: problem.rank,
            degree: problem.degree,
        })
    }
}

pub fn ss_closed(problem: &BundleProblem) -> Result<TruncatedSeries> {
    sum_terms(problem, closed_form_term)
}

pub fn stable(problem: &BundleProblem) -> Result<AttestedPolynomial> {
    require_coprime(problem)?;
    let ss = ss_closed(problem)?;
    AttestedPolynomial::attest(ss.mul(&TruncatedSeries::one_minus_t_pow(2, problem.order))?)
}

pub fn fixed_det(problem: &BundleProblem) -> Result<AttestedPolynomial> {
    require_coprime(problem)?;
    AttestedPolynomial::attest(sum_terms(problem, fixed_det_term)?)
}
