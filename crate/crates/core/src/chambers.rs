//! Characteristic functions of Weyl chambers on `a_P^Q` and Arthur's
//! alternating combinations Γ and Γ̂.
//!
//! All comparisons are exact; a point on a wall (pairing exactly zero) is
//! outside both the acute and the obtuse chamber.
//!
//! Sums over `P ⊆ Q ⊆ R` run over [`intermediates`] and take the sign
//! `(-1)^{dim a}` from the number of parts: `dim a_Q^R = #Q - #R`.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::glroot::{
    fundamental_weight_on, intermediates, project_masses, simple_root_on, ChamberPoint, Coweight, ParabolicPair,
};
use crate::{Error, Rational, Result};

fn tau_on(pair: &ParabolicPair, masses: &[Rational]) -> bool {
    pair.walls().all(|j| simple_root_on(pair, masses, j).is_positive())
}

fn tau_hat_on(pair: &ParabolicPair, masses: &[Rational]) -> bool {
    pair.walls()
        .all(|j| fundamental_weight_on(pair, masses, j).is_positive())
}

/// `τ_P^Q(x)`: every simple root of `Δ_P^Q` is strictly positive on `x`.
pub fn tau<X: Coweight + ?Sized>(pair: &ParabolicPair, x: &X) -> Result<bool> {
    Ok(tau_on(pair, &x.masses(pair.fine())?))
}

/// `τ̂_P^Q(x)`: every fundamental weight `ϖ_α^Q` is strictly positive on `x`.
pub fn tau_hat<X: Coweight + ?Sized>(pair: &ParabolicPair, x: &X) -> Result<bool> {
    Ok(tau_hat_on(pair, &x.masses(pair.fine())?))
}

/// The chain `P ⊆ Q ⊆ R` split into its two halves.
struct Link {
    lower: ParabolicPair,
    upper: ParabolicPair,
}

fn links(pair: &ParabolicPair) -> Vec<Link> {
    intermediates(pair)
        .into_iter()
        .map(|q| Link {
            lower: ParabolicPair::new(q.clone(), pair.fine().clone()).expect("P refines Q"),
            upper: ParabolicPair::new(pair.coarse().clone(), q).expect("Q refines R"),
        })
        .collect()
}

fn ind(b: bool) -> i32 {
    i32::from(b)
}

fn sub_masses(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Σ_Q (-1)^{dim a_Q^R} τ_P^Q(h) τ̂_Q^R([h - t]_Q), in masses.
fn gamma_on(pair: &ParabolicPair, h: &[Rational], t: &[Rational]) -> i32 {
    let diff = sub_masses(h, t);
    links(pair)
        .iter()
        .map(|l| l.upper.sign() * ind(tau_on(&l.lower, h) && tau_hat_on(&l.upper, &project_masses(&l.lower, &diff))))
        .sum()
}

/// Σ_Q (-1)^{dim a_P^Q} τ_P^Q(h - t) τ̂_Q^R([h]_Q), in masses.
fn gamma_hat_on(pair: &ParabolicPair, h: &[Rational], t: &[Rational]) -> i32 {
    let diff = sub_masses(h, t);
    links(pair)
        .iter()
        .map(|l| l.lower.sign() * ind(tau_on(&l.lower, &diff) && tau_hat_on(&l.upper, &project_masses(&l.lower, h))))
        .sum()
}

/// `Γ_P^R(H, T)` evaluated literally as its alternating sum.
pub fn gamma(pair: &ParabolicPair, h: &ChamberPoint, t: &ChamberPoint) -> Result<i32> {
    let fine = pair.fine();
    Ok(gamma_on(pair, &h.masses(fine)?, &t.masses(fine)?))
}

/// `Γ̂_P^R(H, T)` evaluated literally as its alternating sum.
pub fn gamma_hat(pair: &ParabolicPair, h: &ChamberPoint, t: &ChamberPoint) -> Result<i32> {
    let fine = pair.fine();
    Ok(gamma_hat_on(pair, &h.masses(fine)?, &t.masses(fine)?))
}

/// `Γ̂_P^R(H, T)` through the reflection `(-1)^{dim a_P^R} Γ_P^R(H - T, -T)`.
pub fn gamma_hat_reflected(pair: &ParabolicPair, h: &ChamberPoint, t: &ChamberPoint) -> Result<i32> {
    Ok(pair.sign() * gamma(pair, &h.sub(t), &t.negate())?)
}

fn require_dominant(pair: &ParabolicPair, t: &[Rational]) -> Result<()> {
    if tau_on(pair, t) {
        Ok(())
    } else {
        Err(Error::NotDominant)
    }
}

/// Indicator of `{α(H) > 0, ϖ_α(H) <= ϖ_α(T) for all α ∈ Δ_P^R}`; `T` must be strictly dominant.
pub fn gamma_box(pair: &ParabolicPair, h: &ChamberPoint, t: &ChamberPoint) -> Result<bool> {
    let fine = pair.fine();
    let (h, t) = (h.masses(fine)?, t.masses(fine)?);
    require_dominant(pair, &t)?;
    Ok(pair.walls().all(|j| {
        simple_root_on(pair, &h, j).is_positive()
            && fundamental_weight_on(pair, &h, j) <= fundamental_weight_on(pair, &t, j)
    }))
}

/// Indicator of `{ϖ_α(H) > 0, α(H) <= α(T) for all α ∈ Δ_P^R}`; `T` must be strictly dominant.
pub fn gamma_hat_box(pair: &ParabolicPair, h: &ChamberPoint, t: &ChamberPoint) -> Result<bool> {
    let fine = pair.fine();
    let (h, t) = (h.masses(fine)?, t.masses(fine)?);
    require_dominant(pair, &t)?;
    Ok(pair.walls().all(|j| {
        fundamental_weight_on(pair, &h, j).is_positive() && simple_root_on(pair, &h, j) <= simple_root_on(pair, &t, j)
    }))
}

/// Σ_Q (-1)^{dim a_Q^R} τ_P^Q([H]^Q) τ̂_Q^R([H]_Q).
pub fn langlands_sum_first<X: Coweight + ?Sized>(pair: &ParabolicPair, h: &X) -> Result<i32> {
    let h = h.masses(pair.fine())?;
    Ok(links(pair)
        .iter()
        .map(|l| l.upper.sign() * ind(tau_on(&l.lower, &h) && tau_hat_on(&l.upper, &project_masses(&l.lower, &h))))
        .sum())
}

/// Σ_Q (-1)^{dim a_P^Q} τ̂_P^Q([H]^Q) τ_Q^R([H]_Q).
pub fn langlands_sum_second<X: Coweight + ?Sized>(pair: &ParabolicPair, h: &X) -> Result<i32> {
    let h = h.masses(pair.fine())?;
    Ok(links(pair)
        .iter()
        .map(|l| l.lower.sign() * ind(tau_hat_on(&l.lower, &h) && tau_on(&l.upper, &project_masses(&l.lower, &h))))
        .sum())
}

/// Σ_Q (-1)^{dim a_Q^R} Γ_P^Q(H, T) Γ̂_Q^R([H]_Q, [T]_Q); equals `δ_P^R`.
pub fn gamma_inversion_first(pair: &ParabolicPair, h: &ChamberPoint, t: &ChamberPoint) -> Result<i32> {
    let fine = pair.fine();
    let (h, t) = (h.masses(fine)?, t.masses(fine)?);
    Ok(links(pair)
        .iter()
        .map(|l| {
            let lower = gamma_on(&l.lower, &h, &t);
            if lower.is_zero() {
                return 0;
            }
            let upper = gamma_hat_on(&l.upper, &project_masses(&l.lower, &h), &project_masses(&l.lower, &t));
            l.upper.sign() * lower * upper
        })
        .sum())
}

/// Σ_Q (-1)^{dim a_P^Q} Γ̂_P^Q(H, T) Γ_Q^R([H]_Q, [T]_Q); equals `δ_P^R`.
pub fn gamma_inversion_second(pair: &ParabolicPair, h: &ChamberPoint, t: &ChamberPoint) -> Result<i32> {
    let fine = pair.fine();
    let (h, t) = (h.masses(fine)?, t.masses(fine)?);
    Ok(links(pair)
        .iter()
        .map(|l| {
            let lower = gamma_hat_on(&l.lower, &h, &t);
            if lower.is_zero() {
                return 0;
            }
            let upper = gamma_on(&l.upper, &project_masses(&l.lower, &h), &project_masses(&l.lower, &t));
            l.lower.sign() * lower * upper
        })
        .sum())
}

/// `δ_P^R` as an integer.
pub fn kronecker(pair: &ParabolicPair) -> i32 {
    ind(pair.is_identity())
}
