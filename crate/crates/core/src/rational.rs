//! Exact positive rationals for expansion parameters.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error("expansion parameter must be positive, got {0}")]
    NotPositive(String),
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}

/// A strictly positive reduced fraction `num/den`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lambda(Rational);

impl Lambda {
    pub fn new(num: i64, den: i64) -> Result<Self, LambdaError> {
        if den == 0 {
            return Err(LambdaError::Parse(format!("{num}/{den}")));
        }
        Self::from_ratio(Rational::new(num, den))
    }

    pub fn from_ratio(r: Rational) -> Result<Self, LambdaError> {
        if *r.numer() <= 0 {
            return Err(LambdaError::NotPositive(format_ratio(&r)));
        }
        Ok(Lambda(r))
    }

    pub fn integer(k: u32) -> Self {
        Lambda::new(k as i64, 1).expect("positive integer")
    }

    pub fn num(self) -> i64 {
        *self.0.numer()
    }

    pub fn den(self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(self) -> Rational {
        self.0
    }

    /// `λ·size ≤ bound`, compared by cross-multiplication.
    pub fn times_at_most(self, size: usize, bound: usize) -> bool {
        (self.num() as i128) * (size as i128) <= (self.den() as i128) * (bound as i128)
    }
}

pub fn format_ratio(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ratio(&self.0))
    }
}

impl fmt::Debug for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lambda({self})")
    }
}

impl FromStr for Lambda {
    type Err = LambdaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r: Rational = s
            .trim()
            .parse()
            .map_err(|_| LambdaError::Parse(s.to_string()))?;
        Lambda::from_ratio(r)
    }
}

impl Serialize for Lambda {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Serializes a rational as `"p/q"`, or `"p"` when integral.
pub(crate) fn serialize_ratio<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let l: Lambda = "3/2".parse().unwrap();
        assert_eq!((l.num(), l.den()), (3, 2));
        assert_eq!(l.to_string(), "3/2");
        assert_eq!("4/2".parse::<Lambda>().unwrap().to_string(), "2");
        assert!(matches!(
            "0".parse::<Lambda>(),
            Err(LambdaError::NotPositive(_))
        ));
        assert!(matches!(
            "-1/2".parse::<Lambda>(),
            Err(LambdaError::NotPositive(_))
        ));
        assert!(matches!("x".parse::<Lambda>(), Err(LambdaError::Parse(_))));
    }

    #[test]
    fn cross_multiplied_comparison() {
        let two = Lambda::integer(2);
        assert!(two.times_at_most(2, 4));
        assert!(!two.times_at_most(2, 3));
        let three_halves: Lambda = "3/2".parse().unwrap();
        assert!(three_halves.times_at_most(2, 3));
        assert!(!three_halves.times_at_most(4, 5));
    }
}
