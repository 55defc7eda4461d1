//! Coefficients: ℚ, ℚ(t̄) or 𝔽_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::funcfield::RationalFunction;
use crate::mpoly::fmt_rational;
use crate::ring::CoefficientField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Rational(BigRational),
    Function(RationalFunction),
    Modular { value: u64, modulus: u64 },
}

fn mismatch() -> ! {
    panic!("coefficient fields differ; ring equality is checked before arithmetic")
}

impl Coeff {
    pub fn zero(field: &CoefficientField) -> Self {
        Self::from_integer(field, &BigInt::zero())
    }

    pub fn one(field: &CoefficientField) -> Self {
        Self::from_integer(field, &BigInt::one())
    }

    pub fn from_integer(field: &CoefficientField, n: &BigInt) -> Self {
        match field {
            CoefficientField::Rationals => Coeff::Rational(BigRational::from_integer(n.clone())),
            CoefficientField::RationalFunctions(t) => {
                Coeff::Function(RationalFunction::constant(t.len(), BigRational::from_integer(n.clone())))
            }
            CoefficientField::PrimeField(p) => Coeff::Modular {
                value: n.mod_floor(&BigInt::from(*p)).to_u64().unwrap(),
                modulus: *p,
            },
        }
    }

    pub fn from_rational(field: &CoefficientField, q: &BigRational) -> Result<Self> {
        match field {
            CoefficientField::Rationals => Ok(Coeff::Rational(q.clone())),
            CoefficientField::RationalFunctions(t) => {
                Ok(Coeff::Function(RationalFunction::constant(t.len(), q.clone())))
            }
            CoefficientField::PrimeField(_) => {
                let n = Self::from_integer(field, q.numer());
                let d = Self::from_integer(field, q.denom());
                n.div(&d)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_zero(),
            Coeff::Function(r) => r.is_zero(),
            Coeff::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_one(),
            Coeff::Function(r) => r.is_one(),
            Coeff::Modular { value, .. } => *value == 1,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Coeff::Rational(q) => Coeff::Rational(-q),
            Coeff::Function(r) => Coeff::Function(r.neg()),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a + b),
            (Coeff::Function(a), Coeff::Function(b)) => Coeff::Function(a.add(b)),
            (Coeff::Modular { value: a, modulus }, Coeff::Modular { value: b, .. }) => {
                Coeff::Modular {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => mismatch(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a * b),
            (Coeff::Function(a), Coeff::Function(b)) => Coeff::Function(a.mul(b)),
            (Coeff::Modular { value: a, modulus }, Coeff::Modular { value: b, .. }) => {
                Coeff::Modular {
                    value: a * b % modulus,
                    modulus: *modulus,
                }
            }
            _ => mismatch(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Coeff::Rational(q) => Coeff::Rational(q.recip()),
            Coeff::Function(r) => Coeff::Function(r.inv()?),
            Coeff::Modular { value, modulus } => {
                // Fermat: a^(p-2)
                let mut acc = 1u64;
                let mut base = *value;
                let mut e = modulus - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % modulus;
                    }
                    base = base * base % modulus;
                    e >>= 1;
                }
                Coeff::Modular {
                    value: acc,
                    modulus: *modulus,
                }
            }
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale_int(&self, k: u32) -> Self {
        match self {
            Coeff::Rational(q) => Coeff::Rational(q * BigRational::from_integer(k.into())),
            Coeff::Function(r) => Coeff::Function(
                r.mul(&RationalFunction::constant(r.nparams(), BigRational::from_integer(k.into()))),
            ),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: value * (k as u64 % modulus) % modulus,
                modulus: *modulus,
            },
        }
    }

    /// Action of `∂_{i+1}` on the coefficient field.
    pub fn derive(&self, i: usize) -> Option<Self> {
        match self {
            Coeff::Function(r) => {
                let d = r.derive(i);
                (!d.is_zero()).then_some(Coeff::Function(d))
            }
            _ => None,
        }
    }

    pub fn to_rational_function(&self, k: usize) -> RationalFunction {
        match self {
            Coeff::Rational(q) => RationalFunction::constant(k, q.clone()),
            Coeff::Function(r) => r.clone(),
            Coeff::Modular { .. } => panic!("no embedding of F_p into Q(t)"),
        }
    }

    /// The coefficient as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Coeff::Rational(q) => Some(q.clone()),
            Coeff::Function(r) => r.constant_value(),
            Coeff::Modular { .. } => None,
        }
    }

    /// `(negative, magnitude text, magnitude is one)` for printing.
    pub(crate) fn render(&self, field: &CoefficientField) -> (bool, String, bool) {
        match self {
            Coeff::Rational(q) => (q.is_negative(), fmt_rational(&q.abs()), q.abs().is_one()),
            Coeff::Modular { value, .. } => (false, value.to_string(), *value == 1),
            Coeff::Function(r) => match r.constant_value() {
                Some(q) => (q.is_negative(), fmt_rational(&q.abs()), q.abs().is_one()),
                None => {
                    let neg = r.numerator().leading_coefficient().is_negative();
                    let r = if neg { r.neg() } else { r.clone() };
                    let names = field.function_params();
                    let text = if !r.denominator().is_one() || r.numerator().num_terms() == 1 {
                        r.display_with(names).to_string()
                    } else {
                        format!("({})", r.display_with(names))
                    };
                    (neg, text, false)
                }
            },
        }
    }
}
