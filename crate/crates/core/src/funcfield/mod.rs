//! The differential field ℚ(t_1, …, t_k) with derivations ∂/∂t_i.
//!
//! Elements are kept as reduced fractions `num/den` with `den` normalized to
//! leading coefficient 1 under the graded lexicographic order, so equality is
//! structural. The derivation `∂_i` acts as `∂/∂t_i` for `i ≤ k` and as zero
//! beyond that, which keeps all derivations commuting.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::poly::DiffPolynomial;
use crate::ring::{Base, CoefficientField, RingConfig};

mod wronskian;

pub use wronskian::wronskian;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: MPoly,
    den: MPoly,
}

impl RationalFunction {
    pub fn zero(k: usize) -> Self {
        RationalFunction {
            num: MPoly::zero(k),
            den: MPoly::one(k),
        }
    }

    pub fn one(k: usize) -> Self {
        Self::constant(k, BigRational::one())
    }

    pub fn constant(k: usize, c: BigRational) -> Self {
        RationalFunction {
            num: MPoly::constant(k, c),
            den: MPoly::one(k),
        }
    }

    /// The generator `t_{i+1}`.
    pub fn param(k: usize, i: usize) -> Self {
        RationalFunction {
            num: MPoly::var(k, i),
            den: MPoly::one(k),
        }
    }

    pub fn from_poly(num: MPoly) -> Self {
        let k = num.nvars();
        RationalFunction {
            num,
            den: MPoly::one(k),
        }
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        let k = num.nvars();
        if num.is_zero() {
            return Self::zero(k);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coefficient();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn nparams(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(q)` when the element is the rational constant `q`.
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nparams());
        }
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: u32) -> Self {
        RationalFunction {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    /// `∂_{i+1}` on the field: `∂/∂t_{i+1}` when that parameter exists, zero otherwise.
    pub fn derive(&self, i: usize) -> Self {
        if i >= self.nparams() {
            return Self::zero(self.nparams());
        }
        let dn = self.num.derive(i);
        let dd = self.den.derive(i);
        Self::normalized(
            dn.mul(&self.den).sub(&self.num.mul(&dd)),
            self.den.mul(&self.den),
        )
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        RfDisplay { r: self, names }
    }
}

struct RfDisplay<'a> {
    r: &'a RationalFunction,
    names: &'a [String],
}

impl fmt::Display for RfDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r.den.is_one() {
            write!(f, "{}", self.r.num.display_with(self.names))
        } else {
            write!(
                f,
                "({})/({})",
                self.r.num.display_with(self.names),
                self.r.den.display_with(self.names)
            )
        }
    }
}

/// A coefficient homomorphism from the parameters of a ring into ℚ(t_1..t_k).
///
/// Images are given on the differential generators of the coefficient ring; the
/// image of a derivative `θu` is `θ` applied to the image of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    field_params: Vec<String>,
    images: BTreeMap<String, RationalFunction>,
}

impl Specialization {
    pub fn new(field_params: Vec<String>) -> Self {
        Specialization {
            field_params,
            images: BTreeMap::new(),
        }
    }

    pub fn with(mut self, param: &str, image: RationalFunction) -> Self {
        self.insert(param, image);
        self
    }

    pub fn insert(&mut self, param: &str, image: RationalFunction) {
        assert_eq!(image.nparams(), self.field_params.len());
        self.images.insert(param.to_string(), image);
    }

    pub fn field_params(&self) -> &[String] {
        &self.field_params
    }

    pub fn image(&self, param: &str) -> Option<&RationalFunction> {
        self.images.get(param)
    }

    pub fn images(&self) -> impl Iterator<Item = (&String, &RationalFunction)> {
        self.images.iter()
    }

    /// The ring that specialized polynomials land in: the same unknowns and
    /// derivations, no parameters, coefficients in ℚ(t̄).
    pub fn target_ring(&self, source: &RingConfig) -> Result<RingConfig> {
        RingConfig::new(
            source.n_derivations(),
            source.variables().to_vec(),
            vec![],
            CoefficientField::RationalFunctions(self.field_params.clone()),
        )
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, img) in &self.images {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{name} -> {}", img.display_with(&self.field_params))?;
        }
        Ok(())
    }
}

/// Apply `φ` to every coefficient of `f`, producing `f^φ` over ℚ(t̄).
pub fn apply_specialization(phi: &Specialization, f: &DiffPolynomial) -> Result<DiffPolynomial> {
    let source = f.ring();
    let target = std::sync::Arc::new(phi.target_ring(source)?);
    let k = phi.field_params.len();
    if let CoefficientField::RationalFunctions(p) = source.field() {
        if p.len() != k {
            return Err(Error::MismatchedRing);
        }
    } else if source.field().characteristic() != 0 {
        return Err(Error::UnsupportedCharacteristic);
    }
    let mut cache: BTreeMap<(usize, Vec<u32>), RationalFunction> = BTreeMap::new();
    let mut out = DiffPolynomial::zero(&target);
    for (mono, coeff) in f.terms() {
        let mut c = coeff.to_rational_function(k);
        let mut rest = Vec::new();
        for (v, e) in mono.factors() {
            match v.base() {
                Base::Param(p) => {
                    let key = (p, v.exponents().to_vec());
                    let img = match cache.get(&key) {
                        Some(img) => img.clone(),
                        None => {
                            let name = &source.parameters()[p];
                            let base = phi
                                .image(name)
                                .ok_or_else(|| Error::SpecializationDomain(name.clone()))?;
                            let mut img = base.clone();
                            for (i, &n) in v.exponents().iter().enumerate() {
                                for _ in 0..n {
                                    img = img.derive(i);
                                }
                            }
                            cache.insert(key, img.clone());
                            img
                        }
                    };
                    c = c.mul(&img.pow(*e));
                }
                Base::Unknown(_) => rest.push((v.clone(), *e)),
            }
        }
        if c.is_zero() {
            continue;
        }
        let term = DiffPolynomial::from_factors(
            &target,
            crate::coeff::Coeff::Function(c),
            rest,
        );
        out = out.add(&term)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> RationalFunction {
        RationalFunction::param(1, 0)
    }

    fn c(n: i64) -> RationalFunction {
        RationalFunction::constant(1, BigRational::from_integer(n.into()))
    }

    #[test]
    fn derive_square() {
        assert_eq!(t().pow(2).derive(0), c(2).mul(&t()));
    }

    #[test]
    fn derive_reciprocal() {
        let r = t().inv().unwrap().derive(0);
        assert_eq!(r, t().pow(2).inv().unwrap().neg());
    }

    #[test]
    fn cancellation() {
        let t1 = RationalFunction::param(2, 0);
        let t2 = RationalFunction::param(2, 1);
        let a = t1.div(&t2).unwrap();
        let b = t2.div(&t1).unwrap();
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(t().div(&c(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn denominator_is_normalized() {
        let r = RationalFunction::new(
            MPoly::var(1, 0).scale(&BigRational::from_integer(2.into())),
            MPoly::var(1, 0).scale(&BigRational::from_integer((-4).into())).add(&MPoly::one(1)),
        )
        .unwrap();
        assert!(r.denominator().leading_coefficient().is_one());
        let names = vec!["t".to_string()];
        assert_eq!(r.display_with(&names).to_string(), "(-1/2*t)/(t - 1/4)");
    }

    #[test]
    fn derivation_beyond_params_is_zero() {
        assert!(t().derive(1).is_zero());
    }

    fn spec_ring() -> std::sync::Arc<RingConfig> {
        std::sync::Arc::new(
            RingConfig::new(1, vec!["y".into()], vec!["c".into()], CoefficientField::Rationals).unwrap(),
        )
    }

    #[test]
    fn specialization_on_generator() {
        let r = spec_ring();
        let phi = Specialization::new(vec!["t1".into()]).with("c", RationalFunction::param(1, 0));
        let f = crate::parse::parse_expression("c*y", &r).unwrap();
        assert_eq!(apply_specialization(&phi, &f).unwrap().to_string(), "t1*y");
    }

    #[test]
    fn specialization_commutes_with_derivation() {
        let r = spec_ring();
        let phi = Specialization::new(vec!["t1".into()]).with("c", RationalFunction::param(1, 0));
        let f = crate::parse::parse_expression("c'*y", &r).unwrap();
        assert_eq!(apply_specialization(&phi, &f).unwrap().to_string(), "y");
        let g = crate::parse::parse_expression("c^2*y' + y", &r).unwrap();
        let lhs = apply_specialization(&phi, &g.derive(1).unwrap()).unwrap();
        let rhs = apply_specialization(&phi, &g).unwrap().derive(1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialization_undefined() {
        let r = spec_ring();
        let phi = Specialization::new(vec!["t1".into()]);
        let f = crate::parse::parse_expression("c*y", &r).unwrap();
        assert_eq!(
            apply_specialization(&phi, &f),
            Err(Error::SpecializationDomain("c".into()))
        );
    }
}
