//! Exact rational scalars and their canonical text form.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Canonical form: "num/den" with the denominator omitted when it is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<Int> {
        t.trim()
            .parse::<Int>()
            .map_err(|_| Error::Parse(format!("bad integer `{t}`")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
    }
}

/// Exact k-th root of a rational, when it exists (sign-aware).
pub fn rat_nth_root(r: &Rat, k: u32) -> Option<Rat> {
    if k == 0 {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    if r.is_negative() && k % 2 == 0 {
        return None;
    }
    let root = |i: &Int| -> Option<Int> {
        let neg = i.is_negative();
        let a = i.abs();
        let r = a.nth_root(k);
        if num::pow(r.clone(), k as usize) == a {
            Some(if neg { -r } else { r })
        } else {
            None
        }
    };
    Some(Rat::new(root(r.numer())?, root(r.denom())?))
}

pub fn is_rational_square(r: &Rat) -> bool {
    rat_nth_root(r, 2).is_some()
}
