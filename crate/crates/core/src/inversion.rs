//! Inverting τ-weighted stratum sums.
//!
//! Fix a weight `m(P, d) = c · dim N_P + <4ρ_P, d>` (for a curve of genus
//! `g`, `c = 2(g - 1)`). Given a seed `a0` on Levi types, [`invert`] produces
//! the unique `b0` with
//!
//! ```text
//! a0(Q) = Σ_{P ⊆ Q} Σ_{[d]_Q = dQ} τ_P^Q(d) b0(P, d) t^{m(P, d) - m(Q, dQ)}
//! ```
//!
//! and [`forward_sum`] evaluates the right-hand side, so the two can be
//! checked against each other. The inner obtuse-chamber lattice sums are
//! computed in closed form by [`lattice_sum`] and by brute-force enumeration
//! in [`lattice_sum_bruteforce`].
//!
//! Relative weights only depend on `P ⊆ Q`: `m(P, d) - m(Q, [d]_Q)` is the
//! weight of `d` for the pair itself, which is what [`WeightModel::weight`]
//! computes.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::chambers;
use crate::glroot::{
    as_integer, delta_pairing, dim_nilradical, frac_repr, fundamental_weight_on, project, refinements, rho_pair_coroot,
    Composition, Coweight, DegreeVector, Genus, ParabolicPair,
};
use crate::pseries::TruncatedSeries;
use crate::{Error, Rational, Result};

/// A Levi type together with a cocharacter: an element `(P, ν'_P)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedPair {
    pub parabolic: Composition,
    pub degrees: DegreeVector,
}

impl WeightedPair {
    pub fn new(parabolic: Composition, degrees: DegreeVector) -> Result<Self> {
        if parabolic.len() != degrees.len() {
            return Err(Error::Misaligned {
                expected: parabolic.len(),
                got: degrees.len(),
            });
        }
        Ok(Self { parabolic, degrees })
    }
}

/// One τ-supported stratum and its weight relative to the ambient Levi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub pair: WeightedPair,
    pub weight: u64,
}

/// The codimension part of the stratum weight: `c · dim N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightModel {
    codim_unit: u64,
}

impl WeightModel {
    /// `c = 2(g - 1)`.
    pub fn curve(g: Genus) -> Self {
        Self {
            codim_unit: 2 * (u64::from(g.get()) - 1),
        }
    }

    /// `c = 0`: only the chamber pairing `<4ρ, d>` contributes.
    pub fn chamber_only() -> Self {
        Self { codim_unit: 0 }
    }

    pub fn codim_unit(&self) -> u64 {
        self.codim_unit
    }

    /// `n_P - n_Q` for the pair.
    pub fn codim(&self, pair: &ParabolicPair) -> u64 {
        self.codim_unit * dim_nilradical(pair)
    }

    pub fn weight(&self, pair: &ParabolicPair, d: &DegreeVector) -> Result<i64> {
        Ok(self.codim(pair) as i64 + delta_pairing(pair, d)?)
    }
}

impl From<Genus> for WeightModel {
    fn from(g: Genus) -> Self {
        Self::curve(g)
    }
}

/// A function from Levi types (compositions of a fixed `n`) to series.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeedFunction {
    values: BTreeMap<Composition, TruncatedSeries>,
}

impl SeedFunction {
    pub fn new() -> Self {
        Self::default()
    }

    /// Evaluates `f` on every composition of `n`.
    pub fn tabulate(n: usize, mut f: impl FnMut(&Composition) -> TruncatedSeries) -> Self {
        let values = crate::glroot::compositions(n)
            .into_iter()
            .map(|c| {
                let v = f(&c);
                (c, v)
            })
            .collect();
        Self { values }
    }

    pub fn insert(&mut self, levi: Composition, value: TruncatedSeries) {
        self.values.insert(levi, value);
    }

    pub fn get(&self, levi: &Composition) -> Result<&TruncatedSeries> {
        self.values
            .get(levi)
            .ok_or_else(|| Error::MissingSeed(levi.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Composition, &TruncatedSeries)> {
        self.values.iter()
    }
}

/// Walls of one coarse block, with bounds on the partial sums `S_j` of the
/// fine degrees that keep `0 < ϖ_j <= budget / c_j`.
struct BlockWalls {
    start: usize,
    len: usize,
    total: i64,
    ranges: Vec<(i64, i64)>,
}

fn block_walls(pair: &ParabolicPair, dq: &DegreeVector, budget: i64) -> Vec<BlockWalls> {
    let n = pair.fine().parts();
    (0..pair.coarse().len())
        .map(|b| {
            let r = pair.block_range(b);
            let size = pair.coarse().parts()[b] as i64;
            let total = dq.as_slice()[b];
            let mut ranges = Vec::new();
            let mut partial = 0i64;
            for j in r.start..r.end - 1 {
                partial += n[j] as i64;
                let coroot = 2 * (n[j] + n[j + 1]) as i64;
                // S > partial * total / size
                let lo = Integer::div_floor(&(partial * total), &size) + 1;
                // S <= partial * total / size + budget / coroot
                let hi = Integer::div_floor(&(partial * total * coroot + size * budget), &(size * coroot));
                ranges.push((lo, hi));
            }
            BlockWalls {
                start: r.start,
                len: r.len(),
                total,
                ranges,
            }
        })
        .collect()
}

/// All `d` with `[d]_Q = dQ`, `τ̂_P^Q(d) = 1` and `<4ρ_P^Q, d> <= budget`.
///
/// Since every `ϖ_j(d) > 0` and `<4ρ, d> = Σ 2(n_j + n_{j+1}) ϖ_j(d)`, each
/// partial sum is confined to a bounded interval, so this always terminates.
pub fn obtuse_fiber(pair: &ParabolicPair, dq: &DegreeVector, budget: i64) -> Result<Vec<DegreeVector>> {
    if dq.len() != pair.coarse().len() {
        return Err(Error::Misaligned {
            expected: pair.coarse().len(),
            got: dq.len(),
        });
    }
    if budget < 0 {
        return Ok(Vec::new());
    }
    let blocks = block_walls(pair, dq, budget);
    let ranges: Vec<(i64, i64)> = blocks.iter().flat_map(|b| b.ranges.iter().copied()).collect();
    if ranges.iter().any(|&(lo, hi)| lo > hi) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut sums: Vec<i64> = ranges.iter().map(|&(lo, _)| lo).collect();
    loop {
        let mut d = vec![0i64; pair.fine().len()];
        let mut k = 0;
        for b in &blocks {
            let mut prev = 0;
            for i in 0..b.len - 1 {
                d[b.start + i] = sums[k] - prev;
                prev = sums[k];
                k += 1;
            }
            d[b.start + b.len - 1] = b.total - prev;
        }
        let d = DegreeVector(d);
        debug_assert_eq!(&project(pair, &d)?, dq);
        if delta_pairing(pair, &d)? <= budget && chambers::tau_hat(pair, &d)? {
            out.push(d);
        }
        // Odometer, last wall fastest.
        let mut w = sums.len();
        loop {
            if w == 0 {
                return Ok(out);
            }
            w -= 1;
            if sums[w] < ranges[w].1 {
                sums[w] += 1;
                break;
            }
            sums[w] = ranges[w].0;
        }
    }
}

/// All τ-supported `(P, d)` above `(Q, dQ)` with relative weight at most `bound`.
pub fn enumerate_tau_strata(
    q: &Composition,
    dq: &DegreeVector,
    model: impl Into<WeightModel>,
    bound: u64,
) -> Result<Vec<Stratum>> {
    let model = model.into();
    let bound = i64::try_from(bound).unwrap_or(i64::MAX);
    let mut out = Vec::new();
    for pair in refinements(q) {
        let budget = bound - model.codim(&pair) as i64;
        for d in obtuse_fiber(&pair, dq, budget)? {
            if !chambers::tau(&pair, &d)? {
                continue;
            }
            let weight = model.weight(&pair, &d)?;
            let weight = u64::try_from(weight).expect("obtuse-supported weights are nonnegative");
            out.push(Stratum {
                pair: WeightedPair {
                    parabolic: pair.fine().clone(),
                    degrees: d,
                },
                weight,
            });
        }
    }
    Ok(out)
}

/// `Σ_{(P, d)} τ_P^Q(d) b0(P, d) t^{m(P, d) - m(Q, dQ)}` truncated at `order`.
pub fn forward_sum<F>(
    q: &Composition,
    dq: &DegreeVector,
    mut b0: F,
    model: impl Into<WeightModel>,
    order: usize,
) -> Result<TruncatedSeries>
where
    F: FnMut(&WeightedPair) -> Result<TruncatedSeries>,
{
    let mut acc = TruncatedSeries::zero(order);
    for stratum in enumerate_tau_strata(q, dq, model, order as u64)? {
        let term = b0(&stratum.pair)?;
        acc.add_assign(&term.shift(stratum.weight as usize))?;
    }
    Ok(acc)
}

/// `Σ_α <4ρ, α^∨> <ϖ_α(λ)>` for the unique `λ ∈ Λ_P^Q` above `dQ`.
///
/// The representative puts each block's whole degree on its last fine part.
pub fn lattice_exponent(pair: &ParabolicPair, dq: &DegreeVector) -> Result<i64> {
    let mut rep = vec![0i64; pair.fine().len()];
    for (b, &total) in dq.as_slice().iter().enumerate() {
        rep[pair.block_range(b).end - 1] = total;
    }
    let rep = DegreeVector(rep);
    if &project(pair, &rep)? != dq {
        return Err(Error::Misaligned {
            expected: pair.coarse().len(),
            got: dq.len(),
        });
    }
    let masses = rep.masses(pair.fine())?;
    let four = Rational::from_integer(4.into());
    let mut exponent = Rational::from_integer(0.into());
    for j in pair.walls() {
        exponent += &four * rho_pair_coroot(pair, j)? * frac_repr(&fundamental_weight_on(pair, &masses, j));
    }
    as_integer(&exponent)
}

/// The closed form of the obtuse lattice sum:
/// `Π_α 1 / (1 - t^{<4ρ, α^∨>}) · t^{lattice_exponent}`.
pub fn chamber_lattice_sum(pair: &ParabolicPair, dq: &DegreeVector, order: usize) -> Result<TruncatedSeries> {
    let exponent = lattice_exponent(pair, dq)?;
    let mut acc = TruncatedSeries::monomial_or_zero(exponent as usize, order);
    let n = pair.fine().parts();
    for j in pair.walls() {
        acc = acc.geom_div(2 * (n[j] + n[j + 1]) as i64)?;
    }
    Ok(acc)
}

/// `t^{n_P - n_Q}` times [`chamber_lattice_sum`].
pub fn lattice_sum(
    pair: &ParabolicPair,
    dq: &DegreeVector,
    model: impl Into<WeightModel>,
    order: usize,
) -> Result<TruncatedSeries> {
    let codim = model.into().codim(pair);
    Ok(chamber_lattice_sum(pair, dq, order)?.shift(usize::try_from(codim).unwrap_or(usize::MAX)))
}

/// `Σ_{[d]_Q = dQ} τ̂_P^Q(d) t^{<4ρ_P^Q, d>}` by direct enumeration.
///
/// Scans, per block, every fine degree within `order / 4 + 1` of its
/// balanced share `n_i T / N` (a box that contains the whole support up to
/// `order`), and filters by the chamber condition.
pub fn lattice_sum_bruteforce(pair: &ParabolicPair, dq: &DegreeVector, order: usize) -> Result<TruncatedSeries> {
    if dq.len() != pair.coarse().len() {
        return Err(Error::Misaligned {
            expected: pair.coarse().len(),
            got: dq.len(),
        });
    }
    let n = pair.fine().parts();
    let radius = (order / 4 + 1) as i64;
    // (index, lo, hi) for each free coordinate; the last part of each block is determined.
    let mut free = Vec::new();
    for b in 0..pair.coarse().len() {
        let r = pair.block_range(b);
        let size = pair.coarse().parts()[b] as i64;
        let total = dq.as_slice()[b];
        for (i, &m) in n.iter().enumerate().take(r.end - 1).skip(r.start) {
            let share_floor = Integer::div_floor(&(m as i64 * total), &size);
            free.push((i, share_floor - radius, share_floor + 1 + radius));
        }
    }
    let mut acc = TruncatedSeries::zero(order);
    let mut d: Vec<i64> = vec![0; n.len()];
    let mut cur: Vec<i64> = free.iter().map(|&(_, lo, _)| lo).collect();
    loop {
        for (k, &(i, _, _)) in free.iter().enumerate() {
            d[i] = cur[k];
        }
        for b in 0..pair.coarse().len() {
            let r = pair.block_range(b);
            let rest: i64 = d[r.start..r.end - 1].iter().sum();
            d[r.end - 1] = dq.as_slice()[b] - rest;
        }
        let dv = DegreeVector(d.clone());
        if chambers::tau_hat(pair, &dv)? {
            let e = delta_pairing(pair, &dv)?;
            if e >= 0 && (e as usize) <= order {
                acc.add_assign(&TruncatedSeries::monomial_or_zero(e as usize, order))?;
            }
        }
        let mut w = cur.len();
        loop {
            if w == 0 {
                return Ok(acc);
            }
            w -= 1;
            if cur[w] < free[w].2 {
                cur[w] += 1;
                break;
            }
            cur[w] = free[w].1;
        }
    }
}

/// The closed-form `b0(Q, dQ)`:
/// `Σ_{P ⊆ Q} (-1)^{dim a_P^Q} a0(P) · lattice_sum(P ⊆ Q, dQ)`.
pub fn invert(
    q: &Composition,
    dq: &DegreeVector,
    a0: &SeedFunction,
    model: impl Into<WeightModel>,
    order: usize,
) -> Result<TruncatedSeries> {
    let model = model.into();
    let mut acc = TruncatedSeries::zero(order);
    for pair in refinements(q) {
        let term = a0.get(pair.fine())?.mul(&lattice_sum(&pair, dq, model, order)?)?;
        if pair.sign() > 0 {
            acc.add_assign(&term)?;
        } else {
            acc.sub_assign(&term)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn pair(q: &str, p: &str) -> ParabolicPair {
        ParabolicPair::new(comp(q), comp(p)).unwrap()
    }

    fn dv(d: &[i64]) -> DegreeVector {
        DegreeVector(d.to_vec())
    }

    fn g2() -> WeightModel {
        Genus::new(2).unwrap().into()
    }

    fn strata_names(v: &[Stratum]) -> Vec<(alloc::string::String, alloc::string::String, u64)> {
        v.iter()
            .map(|s| (s.pair.parabolic.to_string(), s.pair.degrees.to_string(), s.weight))
            .collect()
    }

    #[test]
    fn tau_strata_of_gl2() {
        let s = enumerate_tau_strata(&comp("2"), &dv(&[1]), g2(), 4).unwrap();
        assert_eq!(
            strata_names(&s),
            [("2".into(), "1".into(), 0), ("1+1".into(), "1,0".into(), 4)]
        );
        let s = enumerate_tau_strata(&comp("2"), &dv(&[1]), g2(), 8).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[2].pair.degrees, dv(&[2, -1]));
        assert_eq!(s[2].weight, 8);
        // m((1,1),(1,-1)) = 2 + 2*2 = 6, so only the open stratum fits below 5.
        let s = enumerate_tau_strata(&comp("2"), &dv(&[0]), g2(), 5).unwrap();
        assert_eq!(strata_names(&s), [("2".into(), "0".into(), 0)]);
        let s = enumerate_tau_strata(&comp("3"), &dv(&[2]), g2(), 0).unwrap();
        assert_eq!(strata_names(&s), [("3".into(), "2".into(), 0)]);
    }

    #[test]
    fn forward_sum_examples() {
        let one = |order| move |_: &WeightedPair| Ok(TruncatedSeries::one(order));
        let s = forward_sum(&comp("1"), &dv(&[7]), one(6), g2(), 6).unwrap();
        assert_eq!(s, TruncatedSeries::one(6));
        let s = forward_sum(&comp("2"), &dv(&[1]), one(9), g2(), 9).unwrap();
        assert_eq!(s, TruncatedSeries::from_i64s(&[1, 0, 0, 0, 1, 0, 0, 0, 1], 9));
        let b0 = |_: &WeightedPair| Ok(TruncatedSeries::from_i64s(&[5], 0));
        assert_eq!(
            forward_sum(&comp("3"), &dv(&[1]), b0, g2(), 0).unwrap(),
            TruncatedSeries::from_i64s(&[5], 0)
        );
    }

    #[test]
    fn lattice_sums_gl2() {
        let b = pair("2", "1+1");
        let pure = WeightModel::chamber_only();
        let expect = TruncatedSeries::from_i64s(&[0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1], 10);
        assert_eq!(lattice_sum(&b, &dv(&[1]), pure, 10).unwrap(), expect);
        let expect = TruncatedSeries::from_i64s(&[0, 0, 0, 0, 1, 0, 0, 0, 1], 10);
        assert_eq!(lattice_sum(&b, &dv(&[0]), pure, 10).unwrap(), expect);
        let id = pair("2", "2");
        assert_eq!(lattice_sum(&id, &dv(&[5]), g2(), 10).unwrap(), TruncatedSeries::one(10));
        // With genus 2 the whole thing moves up by n_P - n_Q = 2.
        assert_eq!(
            lattice_sum(&b, &dv(&[1]), g2(), 10).unwrap(),
            TruncatedSeries::from_i64s(&[0, 0, 0, 0, 1, 0, 0, 0, 1], 10)
        );
    }

    #[test]
    fn bruteforce_matches_closed_form_on_examples() {
        for (q, p, d, order) in [
            ("2", "1+1", vec![1], 10),
            ("2", "2", vec![3], 6),
            ("3", "1+1+1", vec![0], 12),
        ] {
            let pr = pair(q, p);
            let d = dv(&d);
            assert_eq!(
                lattice_sum_bruteforce(&pr, &d, order).unwrap(),
                chamber_lattice_sum(&pr, &d, order).unwrap(),
                "{p} in {q}"
            );
        }
    }

    #[test]
    fn lattice_exponents_are_integral() {
        for q in crate::glroot::compositions(4) {
            for pr in refinements(&q) {
                for t in -3..=3 {
                    let d = dv(&alloc::vec![t; q.len()]);
                    assert!(lattice_exponent(&pr, &d).is_ok());
                }
            }
        }
    }

    #[test]
    fn inversion_gl2_pure() {
        let a0 = SeedFunction::tabulate(2, |_| TruncatedSeries::one(10));
        let b0 = invert(&comp("2"), &dv(&[1]), &a0, WeightModel::chamber_only(), 10).unwrap();
        // 1 - t^2 / (1 - t^4)
        assert_eq!(
            b0,
            TruncatedSeries::from_i64s(&[1, 0, -1, 0, 0, 0, -1, 0, 0, 0, -1], 10)
        );
        let a0 = SeedFunction::tabulate(3, |c| TruncatedSeries::from_i64s(&[c.len() as i64, 1], 4));
        let b0 = invert(&comp("1+1+1"), &dv(&[0, 2, 1]), &a0, g2(), 4).unwrap();
        assert_eq!(b0, TruncatedSeries::from_i64s(&[3, 1], 4));
    }

    #[test]
    fn missing_seed_is_reported() {
        let mut a0 = SeedFunction::new();
        a0.insert(comp("2"), TruncatedSeries::one(3));
        let err = invert(&comp("2"), &dv(&[1]), &a0, g2(), 3).unwrap_err();
        assert_eq!(err, Error::MissingSeed("1+1".into()));
    }
}
