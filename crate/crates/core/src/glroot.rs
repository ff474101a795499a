//! Standard parabolic combinatorics of GL_n.
//!
//! A standard parabolic `P` is a [`Composition`] `(n_1, ..., n_s)` of `n`.
//! Points of `a_P` are written in block coordinates `(h_1, ..., h_s)`; the
//! cocharacter lattice `X_*(A'_P)` is `(1/n_1)Z ⊕ ... ⊕ (1/n_s)Z`, which we
//! store as integer degrees `d_j = n_j h_j` ([`DegreeVector`]).
//!
//! Every pairing used here is expressed through block *masses* `n_j h_j`
//! (which equal `d_j` for degree vectors). In mass coordinates the canonical
//! retraction `[.]_Q` is a plain block sum, and the simple root and
//! fundamental weight of the `j`-th wall are
//!
//! ```text
//! α_j = e_j / n_j - e_{j+1} / n_{j+1}
//! ϖ_j = (e_1 + ... + e_j) - (N_j / N) (e_1 + ... + e_r)
//! ```
//!
//! with partial sums taken inside the enclosing block of size `N`.
//!
//! Wall indices `j` are 0-based: wall `j` separates fine parts `j` and `j + 1`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::pseries::TruncatedSeries;
use crate::{Error, Rational, Result};

/// An ordered tuple of positive integers; the standard parabolic of GL_n
/// with those diagonal block sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidComposition);
        }
        Ok(Self { parts })
    }

    /// The one-block composition `(n)`, i.e. `G = GL_n` itself.
    pub fn whole(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `(1, ..., 1)`, the Borel subgroup.
    pub fn minimal(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts `s`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `n`, the sum of the parts.
    pub fn rank(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses `"n1+n2+...+ns"`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "composition",
            input: s.to_string(),
        };
        let parts = s
            .split('+')
            .map(|p| p.trim().parse::<usize>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts).map_err(|_| err())
    }
}

/// All compositions of `n`, ordered by number of parts and then lexicographically.
pub fn compositions(n: usize) -> Vec<Composition> {
    if n == 0 {
        return Vec::new();
    }
    let mut out: Vec<Composition> = (0u64..1 << (n - 1))
        .map(|cuts| {
            let mut parts = Vec::new();
            let mut run = 1;
            for i in 0..n - 1 {
                if cuts >> (n - 2 - i) & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            Composition { parts }
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.parts.cmp(&b.parts)));
    out
}

/// Integer degrees `(d_1, ..., d_s)`, one per block; block `j` has slope `d_j / n_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeVector(pub Vec<i64>);

impl DegreeVector {
    pub fn new(degrees: Vec<i64>) -> Self {
        Self(degrees)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DegreeVector {
    type Err = Error;

    /// Parses comma-separated integers, e.g. `"2,-1,5"`.
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|p| {
                p.trim().parse::<i64>().map_err(|_| Error::Parse {
                    what: "degree vector",
                    input: s.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(DegreeVector)
    }
}

/// A point `(h_1, ..., h_s)` of `a_P` in block coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChamberPoint(pub Vec<Rational>);

impl ChamberPoint {
    pub fn new(values: Vec<Rational>) -> Self {
        Self(values)
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self(values.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn negate(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }
}

/// Anything that can be written in block masses `n_j h_j` for a given composition.
pub trait Coweight {
    fn masses(&self, parts: &Composition) -> Result<Vec<Rational>>;
}

impl Coweight for DegreeVector {
    fn masses(&self, parts: &Composition) -> Result<Vec<Rational>> {
        check_len(parts, self.len())?;
        Ok(self.0.iter().map(|&d| Rational::from_integer(d.into())).collect())
    }
}

impl Coweight for ChamberPoint {
    fn masses(&self, parts: &Composition) -> Result<Vec<Rational>> {
        check_len(parts, self.0.len())?;
        Ok(self
            .0
            .iter()
            .zip(parts.parts())
            .map(|(h, &n)| h * Rational::from_integer(n.into()))
            .collect())
    }
}

fn check_len(parts: &Composition, got: usize) -> Result<()> {
    if parts.len() != got {
        return Err(Error::Misaligned {
            expected: parts.len(),
            got,
        });
    }
    Ok(())
}

/// `P ⊆ Q`: a composition `fine` refining `coarse`, with each fine part
/// assigned to the coarse block containing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParabolicPair {
    coarse: Composition,
    fine: Composition,
    block_of: Vec<usize>,
    block_starts: Vec<usize>,
}

impl ParabolicPair {
    pub fn new(coarse: Composition, fine: Composition) -> Result<Self> {
        let not_refinement = || Error::NotRefinement {
            fine: fine.to_string(),
            coarse: coarse.to_string(),
        };
        let mut block_of = Vec::with_capacity(fine.len());
        let mut block_starts = Vec::with_capacity(coarse.len() + 1);
        let mut fine_iter = fine.parts().iter().enumerate().peekable();
        for (b, &size) in coarse.parts().iter().enumerate() {
            block_starts.push(block_of.len());
            let mut filled = 0;
            while filled < size {
                let (_, &p) = fine_iter.next().ok_or_else(not_refinement)?;
                filled += p;
                block_of.push(b);
            }
            if filled != size {
                return Err(not_refinement());
            }
        }
        if fine_iter.peek().is_some() {
            return Err(not_refinement());
        }
        block_starts.push(block_of.len());
        Ok(Self {
            coarse,
            fine,
            block_of,
            block_starts,
        })
    }

    /// `P ⊆ GL_n`.
    pub fn in_group(fine: Composition) -> Self {
        let whole = Composition {
            parts: vec![fine.rank()],
        };
        Self::new(whole, fine).expect("every composition refines (n)")
    }

    /// `P = Q`.
    pub fn identity(comp: Composition) -> Self {
        Self::new(comp.clone(), comp).expect("a composition refines itself")
    }

    pub fn coarse(&self) -> &Composition {
        &self.coarse
    }

    pub fn fine(&self) -> &Composition {
        &self.fine
    }

    /// Coarse block containing fine part `j`.
    pub fn block_of(&self, j: usize) -> usize {
        self.block_of[j]
    }

    /// Fine-part indices inside coarse block `b`.
    pub fn block_range(&self, b: usize) -> Range<usize> {
        self.block_starts[b]..self.block_starts[b + 1]
    }

    /// `dim a_P^Q`, the number of walls.
    pub fn relative_dim(&self) -> usize {
        self.fine.len() - self.coarse.len()
    }

    /// `(-1)^{dim a_P^Q}`.
    pub fn sign(&self) -> i32 {
        if self.relative_dim().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.fine == self.coarse
    }

    /// Walls `j` (fine parts `j`, `j + 1` share a coarse block); these index `Δ_P^Q`.
    pub fn walls(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.fine.len().saturating_sub(1)).filter(|&j| self.block_of[j] == self.block_of[j + 1])
    }

    pub fn check_wall(&self, j: usize) -> Result<()> {
        if j + 1 < self.fine.len() && self.block_of[j] == self.block_of[j + 1] {
            Ok(())
        } else {
            Err(Error::CrossesBlock(j))
        }
    }
}

/// All `P ⊆ Q`, ordered by block (first block slowest) and, inside a block,
/// by number of parts and then lexicographically.
pub fn refinements(q: &Composition) -> Vec<ParabolicPair> {
    let per_block: Vec<Vec<Composition>> = q.parts().iter().map(|&m| compositions(m)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_block.len()];
    loop {
        let parts: Vec<usize> = idx
            .iter()
            .zip(&per_block)
            .flat_map(|(&i, comps)| comps[i].parts().iter().copied())
            .collect();
        let fine = Composition { parts };
        out.push(ParabolicPair::new(q.clone(), fine).expect("blockwise refinement"));
        // Odometer with the last block fastest.
        let mut k = per_block.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per_block[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Every `Q` with `P ⊆ Q ⊆ R` for the pair `P ⊆ R`, as the composition of `Q`.
///
/// Ordered from `P` upwards: the first entry is `P` itself and the last is `R`.
pub fn intermediates(pair: &ParabolicPair) -> Vec<Composition> {
    let walls: Vec<usize> = pair.walls().collect();
    let k = walls.len();
    let fine = pair.fine.parts();
    let mut out: Vec<Composition> = (0u64..1 << k)
        .map(|kept_mask| {
            // Bit i set: wall i is kept as a boundary of Q.
            let mut parts = Vec::with_capacity(fine.len());
            let mut run = fine[0];
            for j in 0..fine.len() - 1 {
                let crossing = pair.block_of[j] != pair.block_of[j + 1];
                let kept = walls
                    .iter()
                    .position(|&w| w == j)
                    .is_some_and(|i| kept_mask >> (k - 1 - i) & 1 == 1);
                if crossing || kept {
                    parts.push(run);
                    run = fine[j + 1];
                } else {
                    run += fine[j + 1];
                }
            }
            parts.push(run);
            Composition { parts }
        })
        .collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.parts.cmp(&b.parts)));
    out
}

/// `[x]_Q` in mass coordinates: blockwise sums.
pub fn project_masses(pair: &ParabolicPair, masses: &[Rational]) -> Vec<Rational> {
    (0..pair.coarse.len())
        .map(|b| pair.block_range(b).map(|j| &masses[j]).sum())
        .collect()
}

/// `[d]_Q`: blockwise sums of degrees.
pub fn project(pair: &ParabolicPair, d: &DegreeVector) -> Result<DegreeVector> {
    check_len(&pair.fine, d.len())?;
    Ok(DegreeVector(
        (0..pair.coarse.len())
            .map(|b| pair.block_range(b).map(|j| d.0[j]).sum())
            .collect(),
    ))
}

fn rat(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn simple_root_on(pair: &ParabolicPair, masses: &[Rational], j: usize) -> Rational {
    let n = pair.fine.parts();
    &masses[j] / rat(n[j]) - &masses[j + 1] / rat(n[j + 1])
}

pub(crate) fn fundamental_weight_on(pair: &ParabolicPair, masses: &[Rational], j: usize) -> Rational {
    let n = pair.fine.parts();
    let block = pair.block_range(pair.block_of[j]);
    let mut partial_mass = Rational::zero();
    let mut partial_size = 0usize;
    let mut total_mass = Rational::zero();
    let mut total_size = 0usize;
    for i in block {
        total_mass += &masses[i];
        total_size += n[i];
        if i <= j {
            partial_mass += &masses[i];
            partial_size += n[i];
        }
    }
    partial_mass - Rational::new(BigInt::from(partial_size), BigInt::from(total_size)) * total_mass
}

/// `<α_j, [x]^Q>` for the wall `j` of `P ⊆ Q`.
pub fn pair_simple_root<X: Coweight + ?Sized>(pair: &ParabolicPair, x: &X, j: usize) -> Result<Rational> {
    let masses = x.masses(&pair.fine)?;
    pair.check_wall(j)?;
    Ok(simple_root_on(pair, &masses, j))
}

/// `<ϖ_j^Q, [x]^Q>` for the wall `j` of `P ⊆ Q`.
pub fn pair_fundamental_weight<X: Coweight + ?Sized>(pair: &ParabolicPair, x: &X, j: usize) -> Result<Rational> {
    let masses = x.masses(&pair.fine)?;
    pair.check_wall(j)?;
    Ok(fundamental_weight_on(pair, &masses, j))
}

/// `<ρ_P^Q, α_j^∨> = (n_j + n_{j+1}) / 2`.
pub fn rho_pair_coroot(pair: &ParabolicPair, j: usize) -> Result<Rational> {
    pair.check_wall(j)?;
    let n = pair.fine.parts();
    Ok(Rational::new(BigInt::from(n[j] + n[j + 1]), BigInt::from(2)))
}

/// `dim N_{P ∩ M_Q}`: sum of `m_i m_j` over pairs of fine parts `i < j` in a common block.
pub fn dim_nilradical(pair: &ParabolicPair) -> u64 {
    let n = pair.fine.parts();
    (0..pair.coarse.len())
        .map(|b| {
            let r = pair.block_range(b);
            let mut acc = 0u64;
            let mut seen = 0u64;
            for j in r {
                acc += seen * n[j] as u64;
                seen += n[j] as u64;
            }
            acc
        })
        .sum()
}

/// `<4ρ_P^Q, d> = 2 Σ (n_j d_i - n_i d_j)` over fine parts `i < j` in a common block.
pub fn delta_pairing(pair: &ParabolicPair, d: &DegreeVector) -> Result<i64> {
    check_len(&pair.fine, d.len())?;
    let n = pair.fine.parts();
    let mut acc = 0i64;
    for b in 0..pair.coarse.len() {
        let r = pair.block_range(b);
        for i in r.clone() {
            for j in i + 1..r.end {
                acc += n[j] as i64 * d.0[i] - n[i] as i64 * d.0[j];
            }
        }
    }
    Ok(2 * acc)
}

/// Genus of the base curve; every formula here assumes `g >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Genus(u32);

impl Genus {
    pub fn new(g: i64) -> Result<Self> {
        if g < 2 {
            return Err(Error::UnsupportedGenus(g));
        }
        u32::try_from(g).map(Genus).map_err(|_| Error::UnsupportedGenus(g))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// `m(P, d) = 2 dim(N) (g - 1) + 4 <ρ_P^Q, d>` relative to `Q`.
pub fn stratum_weight(pair: &ParabolicPair, d: &DegreeVector, g: Genus) -> Result<i64> {
    let codim = 2 * dim_nilradical(pair) as i64 * (i64::from(g.get()) - 1);
    Ok(codim + delta_pairing(pair, d)?)
}

/// Length generating polynomial of the symmetric group `S_n`:
/// `Π_{i=2}^{n} (1 + t + ... + t^{i-1})`.
pub fn weyl_poly(n: usize, order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for i in 2..=n {
        let factor = TruncatedSeries::from_coeffs_at(core::iter::repeat_n(BigInt::one(), i), order);
        acc = acc.mul(&factor).expect("same order");
    }
    acc
}

/// The representative of `x mod 1` in the half-open interval `(0, 1]`.
pub fn frac_repr(x: &Rational) -> Rational {
    let num = x.numer();
    let den = x.denom();
    let r = num.mod_floor(den);
    if r.is_zero() {
        Rational::one()
    } else {
        Rational::new(r, den.clone())
    }
}

/// Integer value of an exact rational, when it is one.
pub(crate) fn as_integer(x: &Rational) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::NonIntegralExponent(x.to_string()));
    }
    i64::try_from(x.to_integer()).map_err(|_| Error::NonIntegralExponent(x.to_string()))
}
