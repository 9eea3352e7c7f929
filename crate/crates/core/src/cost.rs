//! Backward-cost functions and exact cost arithmetic.
//!
//! A [`CostFunction`] prices a jump of `δ` instants into the past. Forward
//! spans (waiting) are free. Every representable function is non-decreasing
//! beyond a known span (see [`CostFunction::settles_after`]), which is what
//! makes minima over unbounded intervals computable.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostError {
    #[error("invalid cost value `{0}`")]
    InvalidValue(String),
    #[error("negative cost value {0}")]
    Negative(String),
    #[error("invalid cost spec `{0}`")]
    InvalidSpec(String),
    #[error("span {span} lies beyond the table (length {len}) and no tail is given")]
    Unrepresentable { span: u64, len: usize },
}

/// An exact, non-negative backward cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cost(Rational64);

impl Cost {
    pub const ZERO: Cost = Cost(Rational64::new_raw(0, 1));

    pub fn new(value: Rational64) -> Result<Self, CostError> {
        if value.is_negative() {
            return Err(CostError::Negative(value.to_string()));
        }
        Ok(Cost(value))
    }

    pub fn from_int(value: u64) -> Self {
        Cost(Rational64::from_integer(value as i64))
    }

    pub fn ratio(&self) -> Rational64 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn mul_int(self, k: u64) -> Self {
        Cost(self.0 * Rational64::from_integer(k as i64))
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0 + rhs.0)
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, Add::add)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Accepts integers (`7`), decimals (`2.5`) and fractions (`3/4`).
impl FromStr for Cost {
    type Err = CostError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CostError::InvalidValue(s.to_string());
        let s = s.trim();
        if s.starts_with('-') {
            return Err(CostError::Negative(s.to_string()));
        }
        let value = if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            Rational64::new(num, den)
        } else if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 12 {
                return Err(bad());
            }
            let int: i64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let scale = 10i64.pow(frac.len() as u32);
            let frac: i64 = frac.parse().map_err(|_| bad())?;
            Rational64::new(int * scale + frac, scale)
        } else {
            Rational64::from_integer(s.parse().map_err(|_| bad())?)
        };
        Cost::new(value)
    }
}

/// A total-cost budget; `Unbounded` is a first-class value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Finite(Cost),
    Unbounded,
}

impl Budget {
    pub fn admits(&self, cost: Cost) -> bool {
        match self {
            Budget::Finite(limit) => cost <= *limit,
            Budget::Unbounded => true,
        }
    }
}

impl From<Cost> for Budget {
    fn from(c: Cost) -> Self {
        Budget::Finite(c)
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Budget::Finite(c) => write!(f, "{c}"),
            Budget::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for Budget {
    type Err = CostError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Budget::Unbounded),
            other => other.parse().map(Budget::Finite),
        }
    }
}

/// Behaviour of a table-driven cost function past its last entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableTail {
    Constant(Cost),
    /// Repeat the last table value.
    HoldLast,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CostFunction {
    Identity,
    /// `slope * δ + offset`.
    Affine {
        slope: Cost,
        offset: Cost,
    },
    /// `δ²`.
    Quadratic,
    Constant(Cost),
    /// `values[δ - 1]` for `1 <= δ <= values.len()`, then the tail.
    Table {
        values: Vec<Cost>,
        tail: Option<TableTail>,
    },
}

impl CostFunction {
    pub fn table(values: Vec<Cost>, tail: Option<TableTail>) -> Self {
        CostFunction::Table { values, tail }
    }

    /// Price of moving `delta` instants into the past; zero for `delta <= 0`.
    pub fn eval(&self, delta: i64) -> Result<Cost, CostError> {
        if delta <= 0 {
            return Ok(Cost::ZERO);
        }
        let d = delta as u64;
        Ok(match self {
            CostFunction::Identity => Cost::from_int(d),
            CostFunction::Affine { slope, offset } => slope.mul_int(d) + *offset,
            CostFunction::Quadratic => Cost::from_int(d * d),
            CostFunction::Constant(c) => *c,
            CostFunction::Table { values, tail } => match values.get(d as usize - 1) {
                Some(v) => *v,
                None => match tail {
                    Some(TableTail::Constant(c)) => *c,
                    Some(TableTail::HoldLast) if !values.is_empty() => *values.last().unwrap(),
                    _ => {
                        return Err(CostError::Unrepresentable {
                            span: d,
                            len: values.len(),
                        })
                    }
                },
            },
        })
    }

    /// Span from which on the function is known to be non-decreasing.
    pub fn settles_after(&self) -> u64 {
        match self {
            CostFunction::Table { values, .. } => values.len() as u64,
            _ => 0,
        }
    }

    /// True when the function can be evaluated at every positive span.
    pub fn is_total(&self) -> bool {
        match self {
            CostFunction::Table { values, tail } => match tail {
                Some(TableTail::Constant(_)) => true,
                Some(TableTail::HoldLast) => !values.is_empty(),
                None => false,
            },
            _ => true,
        }
    }

    /// Tabulates `eval` on spans `0..=horizon`.
    pub fn tabulate(&self, horizon: u64) -> Result<PriceTable, CostError> {
        let values = (0..=horizon)
            .map(|d| self.eval(d as i64))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PriceTable { values })
    }

    /// Non-negative, and attains its minimum on every `[C, ∞)`.
    ///
    /// Beyond [`settles_after`](Self::settles_after) every representable
    /// function is non-decreasing, so the minimum on `[C, ∞)` is attained
    /// within `[C, max(C, settles_after) + 1]`; what remains is totality and
    /// the sign of the parameters.
    pub fn is_user_optimizable(&self) -> bool {
        // Cost values are non-negative by construction.
        self.is_total()
    }

    /// User optimizable, non-decreasing and sub-additive on `[1, horizon]`.
    pub fn is_user_friendly(&self, horizon: u64) -> bool {
        if !self.is_user_optimizable() {
            return false;
        }
        let Ok(prices) = self.tabulate(horizon.max(1)) else {
            return false;
        };
        prices.is_non_decreasing() && prices.is_subadditive()
    }

    /// Exact parser for the `--cost` grammar:
    /// `identity | affine:<a>,<b> | quadratic | constant:<c> |
    /// table:<v1>,...[;tail=const:<c>|;tail=hold]`.
    pub fn parse(spec: &str) -> Result<Self, CostError> {
        let bad = || CostError::InvalidSpec(spec.to_string());
        let spec = spec.trim();
        let (kind, args) = match spec.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (spec, None),
        };
        match (kind, args) {
            ("identity", None) => Ok(CostFunction::Identity),
            ("quadratic", None) => Ok(CostFunction::Quadratic),
            ("constant", Some(c)) => Ok(CostFunction::Constant(c.parse()?)),
            ("affine", Some(args)) => {
                let (a, b) = args.split_once(',').ok_or_else(bad)?;
                Ok(CostFunction::Affine {
                    slope: a.parse()?,
                    offset: b.parse()?,
                })
            }
            ("table", Some(args)) => {
                let (values, tail) = match args.split_once(';') {
                    Some((v, t)) => (v, Some(t.trim())),
                    None => (args, None),
                };
                let values = values
                    .split(',')
                    .map(str::parse)
                    .collect::<Result<Vec<Cost>, _>>()?;
                let tail = match tail {
                    None => None,
                    Some("tail=hold") => Some(TableTail::HoldLast),
                    Some(t) => {
                        let c = t.strip_prefix("tail=const:").ok_or_else(bad)?;
                        Some(TableTail::Constant(c.parse()?))
                    }
                };
                Ok(CostFunction::Table { values, tail })
            }
            _ => Err(bad()),
        }
    }
}

impl FromStr for CostFunction {
    type Err = CostError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CostFunction::parse(s)
    }
}

impl fmt::Display for CostFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostFunction::Identity => f.write_str("identity"),
            CostFunction::Quadratic => f.write_str("quadratic"),
            CostFunction::Constant(c) => write!(f, "constant:{c}"),
            CostFunction::Affine { slope, offset } => write!(f, "affine:{slope},{offset}"),
            CostFunction::Table { values, tail } => {
                f.write_str("table:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                match tail {
                    Some(TableTail::Constant(c)) => write!(f, ";tail=const:{c}"),
                    Some(TableTail::HoldLast) => f.write_str(";tail=hold"),
                    None => Ok(()),
                }
            }
        }
    }
}

/// A cost function evaluated once on spans `0..=horizon`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceTable {
    values: Vec<Cost>,
}

impl PriceTable {
    pub fn horizon(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    /// Panics when `delta` exceeds the tabulated horizon.
    pub fn price(&self, delta: i64) -> Cost {
        if delta <= 0 {
            Cost::ZERO
        } else {
            self.values[delta as usize]
        }
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.values[1..].windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_subadditive(&self) -> bool {
        let h = self.values.len() - 1;
        (1..=h).all(|a| (1..=h - a).all(|b| self.values[a + b] <= self.values[a] + self.values[b]))
    }
}
