//! Labels for pulled-back classes: `0`, `1`, or `c · x_{d1}^{e1} x_{d2}^{e2} ...`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fplinalg::{residue, FpVector};

/// A monomial in the generators `x_d`; factors are `(d, e)` sorted by `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn power(degree: u32, exponent: u32) -> Self {
        if exponent == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(degree, exponent)])
        }
    }

    pub fn from_factors(mut factors: Vec<(u32, u32)>) -> Self {
        factors.retain(|&(_, e)| e > 0);
        factors.sort_unstable();
        Monomial(factors)
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree in the doubled grading.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(d, e)| d * e).sum()
    }

    /// The single `(d, e)` when this is a power of one generator.
    pub fn as_power(&self) -> Option<(u32, u32)> {
        match self.0.as_slice() {
            [f] => Some(*f),
            _ => None,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (d, e) in &self.0 {
            write!(f, "x{d}^{e}")?;
        }
        Ok(())
    }
}

/// `coeff · monomial` with `coeff ∈ 1..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedMonomial {
    pub coeff: u32,
    pub p: u32,
    pub monomial: Monomial,
}

impl SignedMonomial {
    pub fn one(p: u32) -> Self {
        SignedMonomial {
            coeff: 1,
            p,
            monomial: Monomial::one(),
        }
    }

    /// Symmetric representative of the coefficient, in `-(p-1)/2 ..= (p-1)/2`
    /// (just `1` when `p = 2`).
    pub fn signed_coeff(&self) -> i64 {
        let c = self.coeff as i64;
        if c * 2 > self.p as i64 {
            c - self.p as i64
        } else {
            c
        }
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomial.is_one() {
            return write!(f, "{}", self.signed_coeff());
        }
        let c = self.signed_coeff();
        let sign = if c < 0 { '-' } else { '+' };
        if c.abs() == 1 {
            write!(f, "{sign}{}", self.monomial)
        } else {
            write!(f, "{sign}{}{}", c.abs(), self.monomial)
        }
    }
}

/// What `π*[Σ_w]` is known to be.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Label {
    Zero,
    Term(SignedMonomial),
    /// Nonzero, but the degree is not one the labeling handles; carries the
    /// raw quotient coordinates.
    Unlabeled(FpVector),
}

impl Label {
    pub fn is_zero(&self) -> bool {
        matches!(self, Label::Zero)
    }

    pub fn term(&self) -> Option<&SignedMonomial> {
        match self {
            Label::Term(t) => Some(t),
            _ => None,
        }
    }

    /// Coefficient of `m` in this class, if the class is labeled.
    pub fn coefficient_of(&self, m: &Monomial) -> Option<u32> {
        match self {
            Label::Zero => Some(0),
            Label::Term(t) => Some(if &t.monomial == m { t.coeff } else { 0 }),
            Label::Unlabeled(_) => None,
        }
    }

    /// Parse `0`, `1`, `x6`, `+x8`, `-x8^2`, `2x12`, `x2x6` modulo `p`.
    pub fn parse(s: &str, p: u32) -> Result<Label> {
        let s = s.trim();
        let bad = || Error::invalid(format!("bad label {s:?}"));
        if s == "0" {
            return Ok(Label::Zero);
        }
        let (neg, rest) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let digits = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        let (num, mut rest) = rest.split_at(digits);
        let mag: i64 = if num.is_empty() {
            1
        } else {
            num.parse().map_err(|_| bad())?
        };
        let mut factors = Vec::new();
        while !rest.is_empty() {
            rest = rest.strip_prefix('x').ok_or_else(bad)?;
            let n = rest.chars().take_while(|c| c.is_ascii_digit()).count();
            let d: u32 = rest[..n].parse().map_err(|_| bad())?;
            rest = &rest[n..];
            let mut e = 1;
            if let Some(r) = rest.strip_prefix('^') {
                let n = r.chars().take_while(|c| c.is_ascii_digit()).count();
                e = r[..n].parse().map_err(|_| bad())?;
                rest = &r[n..];
            }
            factors.push((d, e));
        }
        if factors.is_empty() && num.is_empty() {
            return Err(bad());
        }
        let coeff = residue(if neg { -mag } else { mag }, p);
        if coeff == 0 {
            return Ok(Label::Zero);
        }
        Ok(Label::Term(SignedMonomial {
            coeff,
            p,
            monomial: Monomial::from_factors(factors),
        }))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Zero => write!(f, "0"),
            Label::Term(t) => write!(f, "{t}"),
            Label::Unlabeled(v) => write!(f, "unlabeled{v}"),
        }
    }
}
