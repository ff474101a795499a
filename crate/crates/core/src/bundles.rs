//! Poincaré series for bundles of rank `n` and degree `d` on a curve of genus `g`.
//!
//! * [`stack_series`]: the stack of all bundles with a given Levi type,
//! * [`ss_series_closed`]: the semistable part from the alternating sum over compositions,
//! * [`ss_series_recursive`]: the same series by subtracting Harder–Narasimhan strata,
//! * [`stable_poly`], [`fixed_det_poly`]: the coprime-degree moduli polynomials.
//!
//! Every block of size `m` contributes the invariant degrees `2, ..., m`,
//! i.e. `m - 1` factors.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::glroot::{as_integer, compositions, frac_repr, Composition, DegreeVector, Genus};
use crate::inversion::{enumerate_tau_strata, SeedFunction};
use crate::pseries::TruncatedSeries;
use crate::{Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveParams {
    genus: Genus,
}

impl CurveParams {
    pub fn new(g: i64) -> Result<Self> {
        Ok(Self { genus: Genus::new(g)? })
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    fn g(&self) -> u64 {
        u64::from(self.genus.get())
    }
}

impl From<Genus> for CurveParams {
    fn from(genus: Genus) -> Self {
        Self { genus }
    }
}

/// Rank, degree, curve and truncation order of one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BundleProblem {
    pub rank: usize,
    pub degree: i64,
    pub curve: CurveParams,
    pub order: usize,
}

impl BundleProblem {
    pub fn new(rank: usize, degree: i64, curve: CurveParams, order: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Self {
            rank,
            degree,
            curve,
            order,
        })
    }

    pub fn is_coprime(&self) -> bool {
        (self.rank as i64).gcd(&self.degree) == 1
    }

    fn require_coprime(&self) -> Result<()> {
        if self.is_coprime() {
            Ok(())
        } else {
            Err(Error::NotCoprime {
                rank: self.rank,
                degree: self.degree,
            })
        }
    }
}

/// `(1 + t)^{2g} / (1 - t^2)`, the contribution of one `GL_1` factor.
pub fn jacobian_factor(curve: CurveParams, order: usize) -> TruncatedSeries {
    TruncatedSeries::binom_pow(2 * curve.g(), order)
        .geom_div(2)
        .expect("positive step")
}

/// `Π_{i=2}^{m} (1 + t^{2i-1})^{2g} / ((1 - t^{2i-2})(1 - t^{2i}))`.
fn block_factor(m: usize, curve: CurveParams, order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for i in 2..=m {
        let num = TruncatedSeries::binom_pow_step(2 * curve.g(), 2 * i - 1, order);
        acc = acc
            .mul(&num)
            .and_then(|s| s.geom_div(2 * i as i64 - 2))
            .and_then(|s| s.geom_div(2 * i as i64))
            .expect("same order, positive steps");
    }
    acc
}

fn levi_factor(levi: &Composition, curve: CurveParams, order: usize) -> TruncatedSeries {
    levi.parts().iter().fold(TruncatedSeries::one(order), |acc, &m| {
        acc.mul(&block_factor(m, curve, order)).expect("same order")
    })
}

/// Poincaré series of the stack of bundles with Levi type `levi`; independent of the degree.
pub fn stack_series(levi: &Composition, curve: CurveParams, order: usize) -> TruncatedSeries {
    let j = jacobian_factor(curve, order).pow(levi.len() as u32);
    j.mul(&levi_factor(levi, curve, order)).expect("same order")
}

/// The seed `P ↦ stack_series(M_P)` on all compositions of `n`.
pub fn stack_seed(n: usize, curve: CurveParams, order: usize) -> SeedFunction {
    SeedFunction::tabulate(n, |c| stack_series(c, curve, order))
}

/// `2 Σ_{i<j} n_i n_j (g - 1)`.
fn codim_exponent(comp: &Composition, curve: CurveParams) -> u64 {
    let n = comp.parts();
    let mut pairs = 0u64;
    let mut seen = 0u64;
    for &m in n {
        pairs += seen * m as u64;
        seen += m as u64;
    }
    2 * pairs * (curve.g() - 1)
}

/// `2 Σ_{j=1}^{s-1} (n_j + n_{j+1}) <-(n_1 + ... + n_j) d / n>`, checked to be an integer.
fn fractional_exponent(comp: &Composition, degree: i64) -> Result<i64> {
    let n = comp.parts();
    let rank = BigInt::from(comp.rank());
    let mut acc = Rational::from_integer(0.into());
    let mut partial = 0usize;
    for j in 0..n.len() - 1 {
        partial += n[j];
        let x = Rational::new(-BigInt::from(partial) * degree, rank.clone());
        acc += Rational::from_integer(BigInt::from(2 * (n[j] + n[j + 1]))) * frac_repr(&x);
    }
    as_integer(&acc)
}

/// Everything in one composition's summand except the Jacobian power and the sign.
fn summand_tail(problem: &BundleProblem, comp: &Composition) -> Result<TruncatedSeries> {
    let order = problem.order;
    let shift = codim_exponent(comp, problem.curve) as usize + fractional_exponent(comp, problem.degree)? as usize;
    let mut acc = levi_factor(comp, problem.curve, order).shift(shift);
    let n = comp.parts();
    for j in 0..n.len() - 1 {
        acc = acc.geom_div(2 * (n[j] + n[j + 1]) as i64)?;
    }
    Ok(acc)
}

fn signed(s: TruncatedSeries, parts: usize) -> TruncatedSeries {
    if parts % 2 == 1 {
        s
    } else {
        s.negate()
    }
}

fn check_rank(problem: &BundleProblem, comp: &Composition) -> Result<()> {
    if comp.rank() != problem.rank {
        return Err(Error::Misaligned {
            expected: problem.rank,
            got: comp.rank(),
        });
    }
    Ok(())
}

/// The summand of [`ss_series_closed`] for one composition of `n`.
pub fn closed_form_term(problem: &BundleProblem, comp: &Composition) -> Result<TruncatedSeries> {
    check_rank(problem, comp)?;
    let j = jacobian_factor(problem.curve, problem.order).pow(comp.len() as u32);
    Ok(signed(j.mul(&summand_tail(problem, comp)?)?, comp.len()))
}

/// The summand of [`fixed_det_poly`] for one composition of `n`.
pub fn fixed_det_term(problem: &BundleProblem, comp: &Composition) -> Result<TruncatedSeries> {
    check_rank(problem, comp)?;
    let j = jacobian_factor(problem.curve, problem.order).pow(comp.len() as u32 - 1);
    Ok(signed(j.mul(&summand_tail(problem, comp)?)?, comp.len()))
}

fn sum_terms(
    problem: &BundleProblem,
    term: fn(&BundleProblem, &Composition) -> Result<TruncatedSeries>,
) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::zero(problem.order);
    for comp in compositions(problem.rank) {
        acc.add_assign(&term(problem, &comp)?)?;
    }
    Ok(acc)
}

/// Semistable series as the alternating sum over compositions of `n`.
pub fn ss_series_closed(problem: &BundleProblem) -> Result<TruncatedSeries> {
    sum_terms(problem, closed_form_term)
}

/// Semistable series of `GL_m` bundles by stratum subtraction, memoized on `(m, d)`.
#[derive(Debug)]
pub struct SemistableOracle {
    curve: CurveParams,
    order: usize,
    memo: BTreeMap<(usize, i64), TruncatedSeries>,
}

impl SemistableOracle {
    pub fn new(curve: CurveParams, order: usize) -> Self {
        Self {
            curve,
            order,
            memo: BTreeMap::new(),
        }
    }

    /// `P^ss(GL_m, d) = P(GL_m) - Σ_{proper τ-strata} t^{m(P, d)} Π_j P^ss(GL_{n_j}, d_j)`.
    pub fn semistable(&mut self, rank: usize, degree: i64) -> Result<TruncatedSeries> {
        if let Some(s) = self.memo.get(&(rank, degree)) {
            return Ok(s.clone());
        }
        let whole = Composition::whole(rank)?;
        let mut acc = stack_series(&whole, self.curve, self.order);
        let strata = enumerate_tau_strata(
            &whole,
            &DegreeVector(Vec::from([degree])),
            self.curve.genus(),
            self.order as u64,
        )?;
        for stratum in strata.into_iter().filter(|s| s.pair.parabolic != whole) {
            let mut term = TruncatedSeries::monomial_or_zero(stratum.weight as usize, self.order);
            let blocks = stratum
                .pair
                .parabolic
                .parts()
                .iter()
                .zip(stratum.pair.degrees.as_slice());
            for (&m, &d) in blocks {
                term = term.mul(&self.semistable(m, d)?)?;
            }
            acc.sub_assign(&term)?;
        }
        self.memo.insert((rank, degree), acc.clone());
        Ok(acc)
    }

    pub fn cached(&self) -> usize {
        self.memo.len()
    }
}

/// Semistable series by the Harder–Narasimhan recursion.
pub fn ss_series_recursive(problem: &BundleProblem) -> Result<TruncatedSeries> {
    SemistableOracle::new(problem.curve, problem.order).semistable(problem.rank, problem.degree)
}

/// A series whose coefficients vanish from `degree + 1` through its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttestedPolynomial {
    series: TruncatedSeries,
    degree: usize,
}

impl AttestedPolynomial {
    /// Attests `series` as a polynomial; fails unless at least one trailing
    /// coefficient (the one at the order) is zero.
    pub fn attest(series: TruncatedSeries) -> Result<Self> {
        let degree = series.last_nonzero().unwrap_or(0);
        if degree >= series.order() {
            return Err(Error::NotAttested(series.order()));
        }
        Ok(Self { series, degree })
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients `0..=degree`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.series.coeffs()[..=self.degree]
    }

    /// Inclusive range of exponents known to vanish.
    pub fn zero_window(&self) -> (usize, usize) {
        (self.degree + 1, self.series.order())
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.series
            .eval_at_minus_one(self.degree)
            .expect("attested by construction")
    }

    pub fn vanishing_order_at_minus_one(&self) -> Result<usize> {
        self.series.divisibility_order_at_minus_one(self.degree)
    }
}

/// `(1 - t^2) P^ss(GL_n, d)` for `d` prime to `n`.
pub fn stable_poly(problem: &BundleProblem) -> Result<AttestedPolynomial> {
    problem.require_coprime()?;
    let ss = ss_series_closed(problem)?;
    AttestedPolynomial::attest(ss.mul(&TruncatedSeries::one_minus_t_pow(2, problem.order))?)
}

/// The fixed-determinant moduli polynomial for `d` prime to `n`.
pub fn fixed_det_poly(problem: &BundleProblem) -> Result<AttestedPolynomial> {
    problem.require_coprime()?;
    AttestedPolynomial::attest(sum_terms(problem, fixed_det_term)?)
}

/// Value at `t = -1` of a series attested as a polynomial of degree `<= deg`.
pub fn euler_characteristic(poly: &TruncatedSeries, deg: usize) -> Result<BigInt> {
    poly.eval_at_minus_one(deg)
}
