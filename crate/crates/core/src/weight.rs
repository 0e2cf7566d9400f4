//! Exact edge weights.
//!
//! Weights are parsed from decimal strings into rationals. Every algorithm
//! runs on integer "units": all weights of an instance are multiplied by the
//! least common multiple of their denominators, so comparisons stay exact and
//! invariant under uniform scaling.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A nonnegative exact rational weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(pub Ratio<i64>);

impl Weight {
    pub const ZERO: Weight = Weight(Ratio::new_raw(0, 1));

    pub fn from_int(v: i64) -> Self {
        Weight(Ratio::from_integer(v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Exact value as a JSON-friendly decimal string when the denominator is
    /// a product of 2s and 5s, otherwise `p/q`.
    pub fn to_decimal_string(&self) -> String {
        let (n, d) = (*self.0.numer(), *self.0.denom());
        if d == 1 {
            return n.to_string();
        }
        let mut dd = d;
        let mut twos = 0u32;
        let mut fives = 0u32;
        while dd % 2 == 0 {
            dd /= 2;
            twos += 1;
        }
        while dd % 5 == 0 {
            dd /= 5;
            fives += 1;
        }
        if dd != 1 {
            return format!("{n}/{d}");
        }
        let digits = twos.max(fives);
        let scale = 10i128.pow(digits);
        let scaled = n as i128 * scale / d as i128;
        let neg = scaled < 0;
        let abs = scaled.abs();
        let int = abs / scale;
        let frac = abs % scale;
        let mut s = format!("{}{}.{:0width$}", if neg { "-" } else { "" }, int, frac, width = digits as usize);
        while s.ends_with('0') {
            s.pop();
        }
        s
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl std::ops::Mul<i64> for Weight {
    type Output = Weight;
    fn mul(self, rhs: i64) -> Weight {
        Weight(self.0 * rhs)
    }
}

impl std::iter::Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_decimal(s).map(Weight).ok_or_else(|| Error::Parse(format!("bad weight {s:?}")))
    }
}

fn parse_decimal(s: &str) -> Option<Ratio<i64>> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Ratio::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    if frac.len() > 12 {
        return None;
    }
    let den = 10i64.checked_pow(frac.len() as u32)?;
    let int_v: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let frac_v: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    let num = int_v.checked_mul(den)?.checked_add(frac_v)?;
    Some(Ratio::new(if neg { -num } else { num }, den))
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(Weight::from_int(i)),
        }
    }
}

/// Common integer scale for a set of weights: `units(w) = w * scale`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scale {
    pub lcm: i64,
}

impl Scale {
    pub fn for_weights<'a, I: IntoIterator<Item = &'a Weight>>(ws: I) -> Self {
        let lcm = ws.into_iter().fold(1i64, |acc, w| acc.lcm(w.0.denom()));
        Scale { lcm }
    }

    pub fn units(&self, w: Weight) -> i64 {
        let r = w.0 * self.lcm;
        debug_assert!(r.is_integer());
        r.to_integer()
    }

    pub fn weight(&self, units: i64) -> Weight {
        Weight(Ratio::new(units, self.lcm))
    }
}
