//! Plain and LaTeX renderings of series.

use std::fmt::Write;

use hnpoly_core::pseries::TruncatedSeries;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Comma-separated coefficients `c0,c1,...,cD`.
pub fn plain(s: &TruncatedSeries) -> String {
    s.coeffs().iter().map(BigInt::to_string).collect::<Vec<_>>().join(",")
}

/// Sum of monomials. Unattested series end in `+ O(t^{D+1})`.
pub fn latex(s: &TruncatedSeries, attested: bool) -> String {
    let mut out = String::new();
    for (k, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if k == 0 || !mag.is_one() {
            write!(out, "{mag}").unwrap();
        }
        match k {
            0 => {}
            1 => out.push('t'),
            _ => write!(out, "t^{{{k}}}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    if !attested {
        write!(out, " + O(t^{{{}}})", s.order() + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings() {
        let s = TruncatedSeries::from_i64s(&[1, -1, 0, 7, -2], 4);
        assert_eq!(plain(&s), "1,-1,0,7,-2");
        assert_eq!(latex(&s, false), "1 - t + 7t^{3} - 2t^{4} + O(t^{5})");
        assert_eq!(latex(&TruncatedSeries::from_i64s(&[0, 0, 1], 3), true), "t^{2}");
        assert_eq!(latex(&TruncatedSeries::from_i64s(&[0, -1], 3), true), "-t");
        assert_eq!(latex(&TruncatedSeries::zero(2), false), "0 + O(t^{3})");
        assert_eq!(plain(&TruncatedSeries::one(0)), "1");
    }
}
