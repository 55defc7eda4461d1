//! Ring configurations, differential variables and the orderly ranking.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Coefficient field of a differential polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    Rationals,
    /// ℚ(t_1..t_k); the names are the symbols `t_i` as written in expressions.
    RationalFunctions(Vec<String>),
    PrimeField(u64),
}

impl CoefficientField {
    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn function_params(&self) -> &[String] {
        match self {
            CoefficientField::RationalFunctions(names) => names,
            _ => &[],
        }
    }
}

/// Configuration of `K{u_1..u_r}{y_1..y_m}` with `N` commuting derivations.
///
/// The `parameters` `u_i` are differential indeterminates of the coefficient
/// ring: they are differentiated like any variable but never ranked, so a
/// polynomial mentioning only parameters is a constant of `R{y}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingConfig {
    n_derivations: usize,
    variables: Vec<String>,
    parameters: Vec<String>,
    field: CoefficientField,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !(first.is_ascii_alphabetic() || first == '_') {
        return false;
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return false;
    }
    // `d<digits>` is the derivation operator syntax.
    !(s.len() > 1 && s.starts_with('d') && s[1..].chars().all(|c| c.is_ascii_digit()))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl RingConfig {
    pub fn new(
        n_derivations: usize,
        variables: Vec<String>,
        parameters: Vec<String>,
        field: CoefficientField,
    ) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for name in variables
            .iter()
            .chain(&parameters)
            .chain(field.function_params())
        {
            if !valid_name(name) {
                return Err(Error::InvalidRing(format!("invalid name `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate name `{name}`")));
            }
        }
        if let CoefficientField::PrimeField(p) = field {
            if !is_prime(p) {
                return Err(Error::InvalidRing(format!("{p} is not prime")));
            }
            if p > u32::MAX as u64 {
                return Err(Error::InvalidRing(format!("prime {p} too large")));
            }
        }
        Ok(RingConfig {
            n_derivations,
            variables,
            parameters,
            field,
        })
    }

    /// ℚ{y_1..y_m} with `n` derivations.
    pub fn rational(n: usize, variables: &[&str]) -> Result<Self> {
        Self::new(
            n,
            variables.iter().map(|s| s.to_string()).collect(),
            vec![],
            CoefficientField::Rationals,
        )
    }

    pub fn n_derivations(&self) -> usize {
        self.n_derivations
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn field(&self) -> &CoefficientField {
        &self.field
    }

    pub fn base_name(&self, base: Base) -> &str {
        match base {
            Base::Param(i) => &self.parameters[i],
            Base::Unknown(j) => &self.variables[j],
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Base> {
        if let Some(j) = self.variables.iter().position(|v| v == name) {
            return Some(Base::Unknown(j));
        }
        self.parameters
            .iter()
            .position(|v| v == name)
            .map(Base::Param)
    }

    pub fn require_char_zero(&self) -> Result<()> {
        if self.field.characteristic() == 0 {
            Ok(())
        } else {
            Err(Error::UnsupportedCharacteristic)
        }
    }
}

impl fmt::Display for RingConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={},vars={}", self.n_derivations, self.variables.join(","))?;
        if !self.parameters.is_empty() {
            write!(f, ",params={}", self.parameters.join(","))?;
        }
        match &self.field {
            CoefficientField::Rationals => Ok(()),
            CoefficientField::PrimeField(p) => write!(f, ",p={p}"),
            CoefficientField::RationalFunctions(t) => write!(f, ",tparams={}", t.join(",")),
        }
    }
}

/// A base variable: a parameter of the coefficient ring or a differential unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Param(usize),
    Unknown(usize),
}

impl Base {
    pub fn index(self) -> usize {
        match self {
            Base::Param(i) | Base::Unknown(i) => i,
        }
    }

    pub fn is_unknown(self) -> bool {
        matches!(self, Base::Unknown(_))
    }
}

/// `∂_1^{e_1}…∂_N^{e_N}` applied to a base variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffVariable {
    base: Base,
    exponents: Vec<u32>,
}

/// Rank tuple `(Σe_i, j, e_1, …, e_N)`, compared lexicographically.
///
/// `var_index` is 1-based within its family (unknowns or parameters).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rank {
    pub total_order: u32,
    pub var_index: usize,
    pub exponents: Vec<u32>,
}

impl DiffVariable {
    pub fn new(base: Base, exponents: Vec<u32>) -> Self {
        DiffVariable { base, exponents }
    }

    pub fn unknown(j: usize, exponents: Vec<u32>) -> Self {
        Self::new(Base::Unknown(j), exponents)
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn order(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn rank(&self) -> Rank {
        Rank {
            total_order: self.order(),
            var_index: self.base.index() + 1,
            exponents: self.exponents.clone(),
        }
    }

    /// `∂_{i+1}` applied to this variable.
    pub fn derived(&self, i: usize) -> Self {
        let mut e = self.exponents.clone();
        e[i] += 1;
        DiffVariable::new(self.base, e)
    }

    pub fn apply(&self, theta: &[u32]) -> Self {
        DiffVariable::new(
            self.base,
            self.exponents.iter().zip(theta).map(|(a, b)| a + b).collect(),
        )
    }

    /// `Some(θ)` with `self = θ(other)` when `self` is a derivative (possibly trivial) of `other`.
    pub fn derivative_of(&self, other: &DiffVariable) -> Option<Vec<u32>> {
        if self.base != other.base {
            return None;
        }
        self.exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a.checked_sub(*b))
            .collect()
    }

    pub fn is_proper_derivative_of(&self, other: &DiffVariable) -> bool {
        self.derivative_of(other)
            .is_some_and(|t| t.iter().any(|&e| e > 0))
    }

    pub fn with_base(&self, base: Base) -> Self {
        DiffVariable::new(base, self.exponents.clone())
    }
}

// Parameters sit below every unknown; within a family the orderly ranking applies.
impl Ord for DiffVariable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .is_unknown()
            .cmp(&other.base.is_unknown())
            .then_with(|| self.rank().cmp(&other.rank()))
    }
}

impl PartialOrd for DiffVariable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rank of a differential variable.
pub fn rank_of(v: &DiffVariable) -> Rank {
    v.rank()
}
