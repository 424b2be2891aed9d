//! Rational helpers shared by every module: parsing, formatting, float
//! conversion and continued-fraction rounding.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p`, `p/q` (whitespace tolerated around the slash).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).ok()?;
            let d = BigInt::from_str(d).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => BigInt::from_str(&s).ok().map(Rational::from_integer),
    }
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // huge numerators/denominators: fall back to a scaled division
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// found by walking the continued-fraction convergents and finishing with the
/// best semiconvergent.
pub fn round_to_denominator(x: f64, max_den: u64) -> Rational {
    assert!(x.is_finite(), "cannot round a non-finite value");
    if max_den == 0 {
        return q(x.round() as i64);
    }
    let neg = x < 0.0;
    let ax = x.abs();
    let a0 = ax.floor();
    // convergents h/k
    let (mut h_prev, mut k_prev) = (1u128, 0u128);
    let (mut h, mut k) = (a0 as u128, 1u128);
    let mut frac = ax - a0;
    let max_den = max_den as u128;
    for _ in 0..64 {
        if frac < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        if !a.is_finite() || a > 1e18 {
            break;
        }
        let a = a as u128;
        let k_next = a * k + k_prev;
        if k_next > max_den {
            // semiconvergent with the largest admissible partial quotient
            let t = (max_den - k_prev) / k;
            if 2 * t >= a {
                let hs = t * h + h_prev;
                let ks = t * k + k_prev;
                let cand_s = hs as f64 / ks as f64;
                let cand_c = h as f64 / k as f64;
                if (cand_s - ax).abs() < (cand_c - ax).abs() {
                    h = hs;
                    k = ks;
                }
            }
            break;
        }
        let h_next = a * h + h_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        frac = inv - inv.floor();
    }
    let r = Rational::new(BigInt::from(h), BigInt::from(k));
    if neg {
        -r
    } else {
        r
    }
}

/// Greatest common divisor of numerators over lcm of denominators, positive.
pub fn content<'a, I: IntoIterator<Item = &'a Rational>>(coefs: I) -> Rational {
    use num::Integer;
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for c in coefs {
        g = g.gcd(c.numer());
        l = l.lcm(c.denom());
    }
    if g.is_zero() {
        return Rational::one();
    }
    Rational::new(g.abs(), l)
}
