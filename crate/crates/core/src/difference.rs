//! The difference ring `(ℚ[x], σ)` with `σ(x) = −x`.
//!
//! Principal ideals `(q)` are transformally prime when `q` is irreducible and
//! `σ(q)` is an associate of `q`. Pulling back along `φ: x ↦ x²` gives the
//! fiber dichotomy implemented by [`fiber_nonempty`], and [`lift_obstruction`]
//! checks the degree-parity argument showing `x² ↦ y` has no lift into ℚ(y).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcfield::RationalFunction;
use crate::mpoly::{fmt_rational, write_signed_term};
use crate::parse::parse_rational_function;

/// Dense univariate polynomial over ℚ; `coeffs[i]` multiplies `x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaPoly {
    coeffs: Vec<BigRational>,
}

impl SigmaPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SigmaPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        SigmaPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `x − r`.
    pub fn linear(r: &BigRational) -> Self {
        Self::new(vec![-r.clone(), BigRational::one()])
    }

    /// Parse a polynomial in `x` written in the expression grammar.
    pub fn parse(src: &str) -> Result<Self> {
        let f = parse_rational_function(src, &["x".to_string()])?;
        if !f.denominator().is_one() {
            return Err(Error::Syntax {
                line: 1,
                column: 1,
                message: "expected a polynomial in x".into(),
            });
        }
        let mut coeffs = Vec::new();
        for (e, c) in f.numerator().terms() {
            let i = e.0[0] as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, BigRational::zero());
            }
            coeffs[i] = c.clone();
        }
        Ok(Self::new(coeffs))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        SigmaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading_coefficient().recip())
    }

    pub fn eval(&self, r: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * r + c)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading_coefficient();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &lc;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    /// Integer multiple with coprime integer coefficients and positive leading coefficient.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }
}

impl fmt::Display for SigmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let first = out.is_empty();
            write_signed_term(&mut out, first, c, &mono);
        }
        f.write_str(&out)
    }
}

/// `x ↦ −x`.
pub fn sigma_apply(f: &SigmaPoly) -> SigmaPoly {
    SigmaPoly::new(
        f.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect(),
    )
}

/// `σ(q)` is a nonzero rational multiple of `q`.
pub fn is_sigma_associate(q: &SigmaPoly) -> bool {
    let s = sigma_apply(q);
    s.scale(&q.leading_coefficient()) == q.scale(&s.leading_coefficient())
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn signed_divisors(n: &BigInt) -> Vec<BigInt> {
    divisors(n)
        .into_iter()
        .flat_map(|d| [d.clone(), -d])
        .collect()
}

/// Rational roots of a nonzero polynomial, by the rational root theorem.
pub fn rational_roots(f: &SigmaPoly) -> Vec<BigRational> {
    let a = f.primitive_integer();
    let mut roots = Vec::new();
    let Some(lead) = a.last() else {
        return roots;
    };
    let low = a.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let trimmed = SigmaPoly::new(
        a[low..]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    );
    if trimmed.degree() == Some(0) {
        return roots;
    }
    for p in signed_divisors(&a[low]) {
        for q in divisors(lead) {
            let r = BigRational::new(p.clone(), q);
            if !roots.contains(&r) && trimmed.eval(&r).is_zero() {
                roots.push(r);
            }
        }
    }
    roots.sort();
    roots
}

/// Quartic with integer coefficients `a[0..=4]` splitting as two integer quadratics.
fn has_quadratic_factor(a: &[BigInt]) -> bool {
    let check = |b: [&BigInt; 3], c: [&BigInt; 3]| {
        let [b0, b1, b2] = b;
        let [c0, c1, c2] = c;
        b0 * c0 == a[0]
            && b1 * c0 + b0 * c1 == a[1]
            && b2 * c0 + b1 * c1 + b0 * c2 == a[2]
            && b2 * c1 + b1 * c2 == a[3]
            && b2 * c2 == a[4]
    };
    for b2 in divisors(&a[4]) {
        let c2 = &a[4] / &b2;
        for b0 in signed_divisors(&a[0]) {
            let c0 = &a[0] / &b0;
            // b1, c1 solve c2*b1 + b2*c1 = a3 and c0*b1 + b0*c1 = a1, with b1*c1 = k.
            let k = &a[2] - &b2 * &c0 - &b0 * &c2;
            let det = &c2 * &b0 - &b2 * &c0;
            let mut candidates: Vec<(BigInt, BigInt)> = Vec::new();
            if !det.is_zero() {
                let nb = &a[3] * &b0 - &b2 * &a[1];
                let nc = &c2 * &a[1] - &c0 * &a[3];
                if (&nb % &det).is_zero() && (&nc % &det).is_zero() {
                    candidates.push((nb / &det, nc / &det));
                }
            } else if !k.is_zero() {
                for b1 in signed_divisors(&k) {
                    let c1 = &k / &b1;
                    candidates.push((b1, c1));
                }
            } else {
                if (&a[3] % &b2).is_zero() {
                    candidates.push((BigInt::zero(), &a[3] / &b2));
                }
                if (&a[3] % &c2).is_zero() {
                    candidates.push((&a[3] / &c2, BigInt::zero()));
                }
            }
            if candidates
                .iter()
                .any(|(b1, c1)| check([&b0, b1, &b2], [&c0, c1, &c2]))
            {
                return true;
            }
        }
    }
    false
}

/// Irreducibility over ℚ for degree at most 4.
pub fn is_irreducible(q: &SigmaPoly) -> Result<bool> {
    let d = match q.degree() {
        None | Some(0) => return Err(Error::UnitOrZeroInput),
        Some(d) if d > 4 => {
            return Err(Error::Unsupported(format!(
                "irreducibility test is limited to degree 4, got {d}"
            )))
        }
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    if !rational_roots(q).is_empty() {
        return Ok(false);
    }
    if d < 4 {
        return Ok(true);
    }
    Ok(!has_quadratic_factor(&q.primitive_integer()))
}

/// Whether `(q)` is a transformally prime ideal of `(ℚ[x], σ)`.
pub fn is_transformally_prime_principal(q: &SigmaPoly) -> Result<bool> {
    Ok(is_irreducible(q)? && is_sigma_associate(q))
}

/// Exact square root of a nonnegative rational, if it is a square.
pub fn rational_sqrt(n: &BigRational) -> Option<BigRational> {
    if n.is_negative() {
        return None;
    }
    let (p, q) = (n.numer(), n.denom());
    let (sp, sq) = (p.sqrt(), q.sqrt());
    (&sp * &sp == *p && &sq * &sq == *q).then(|| BigRational::new(sp, sq))
}

/// A monic factor `x − r` of `x² − n` and whether its ideal is σ-stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorCheck {
    pub divisor: SigmaPoly,
    pub sigma_image: SigmaPoly,
    pub sigma_stable: bool,
}

/// Outcome of [`fiber_nonempty`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub n: BigRational,
    pub nonempty: bool,
    /// Generator of a transformally prime ideal in the fiber.
    pub witness: Option<SigmaPoly>,
    /// The nontrivial monic divisors of `x² − n` examined in a refutation.
    pub divisors: Vec<DivisorCheck>,
    pub trace: Vec<String>,
}

#[derive(Serialize)]
struct DivisorRecord {
    divisor: String,
    sigma: String,
    sigma_stable: bool,
}

#[derive(Serialize)]
struct FiberRecord {
    n: String,
    nonempty: bool,
    witness: Option<String>,
    divisors: Vec<DivisorRecord>,
    trace: Vec<String>,
}

impl FiberReport {
    pub fn to_json(&self) -> serde_json::Value {
        let rec = FiberRecord {
            n: fmt_rational(&self.n),
            nonempty: self.nonempty,
            witness: self.witness.as_ref().map(|w| w.to_string()),
            divisors: self
                .divisors
                .iter()
                .map(|d| DivisorRecord {
                    divisor: d.divisor.to_string(),
                    sigma: d.sigma_image.to_string(),
                    sigma_stable: d.sigma_stable,
                })
                .collect(),
            trace: self.trace.clone(),
        };
        serde_json::to_value(rec).expect("fiber report serializes")
    }
}

/// Is there a transformally prime `𝔮 ⊆ (ℚ[x], σ)` with `φ⁻¹(𝔮) = (x − n)` for
/// `φ: x ↦ x²` (trivial σ on the source)?
///
/// Any such `𝔮` contains `φ(x − n) = x² − n`, so it is generated by an
/// irreducible factor of `x² − n`; conversely a σ-stable irreducible factor
/// pulls back to `(x − n)`.
pub fn fiber_nonempty(n: &BigRational) -> FiberReport {
    let pulled = SigmaPoly::new(vec![-n.clone(), BigRational::zero(), BigRational::one()]);
    let ns = fmt_rational(n);
    let base = SigmaPoly::linear(n);
    let mut trace = vec![format!("phi({base}) = {pulled}")];
    if n.is_zero() {
        let w = SigmaPoly::x();
        trace.push(format!("x^2 = x*x and sigma(x) = {}", sigma_apply(&w)));
        trace.push("(x) is transformally prime and its preimage is (x)".into());
        return FiberReport {
            n: n.clone(),
            nonempty: true,
            witness: Some(w),
            divisors: vec![],
            trace,
        };
    }
    match rational_sqrt(n) {
        None => {
            trace.push(format!("{ns} is not a rational square, so {pulled} is irreducible"));
            trace.push(format!(
                "sigma({pulled}) = {}, so ({pulled}) is transformally prime",
                sigma_apply(&pulled)
            ));
            trace.push(format!("its preimage under phi is ({base})"));
            FiberReport {
                n: n.clone(),
                nonempty: true,
                witness: Some(pulled),
                divisors: vec![],
                trace,
            }
        }
        Some(m) => {
            let ms = fmt_rational(&m);
            let lo = SigmaPoly::linear(&m);
            let hi = SigmaPoly::linear(&-m.clone());
            trace.push(format!("{ns} = ({ms})^2, so {pulled} = ({lo})*({hi})"));
            trace.push("a prime containing it is generated by one of these factors".into());
            let divisors: Vec<DivisorCheck> = [lo, hi]
                .into_iter()
                .map(|d| {
                    let s = sigma_apply(&d);
                    let stable = is_sigma_associate(&d);
                    trace.push(format!(
                        "sigma({d}) = {s}, {} an associate of {d}",
                        if stable { "which is" } else { "not" }
                    ));
                    DivisorCheck {
                        divisor: d,
                        sigma_image: s,
                        sigma_stable: stable,
                    }
                })
                .collect();
            trace.push("no candidate is transformally prime: the fiber is empty".into());
            FiberReport {
                n: n.clone(),
                nonempty: false,
                witness: None,
                divisors,
                trace,
            }
        }
    }
}

/// Outcome of [`lift_obstruction`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftObstruction {
    pub target: String,
    pub numerator_degree: u32,
    pub denominator_degree: u32,
    pub obstructed: bool,
    pub facts: Vec<String>,
    pub conclusion: String,
}

/// Can `x² ↦ target` (into ℚ(y) with trivial σ) extend to `x`? Any extension
/// sends `x` to a square root of `target`; an odd difference of numerator and
/// denominator degrees rules that out.
pub fn lift_obstruction(target: &RationalFunction) -> Result<LiftObstruction> {
    if target.nparams() != 1 {
        return Err(Error::Unsupported("target must be a function of one variable".into()));
    }
    if target.is_zero() {
        return Err(Error::ZeroTarget);
    }
    let names = ["y".to_string()];
    let shown = target.display_with(&names).to_string();
    let dn = target.numerator().total_degree().unwrap_or(0);
    let dd = target.denominator().total_degree().unwrap_or(0);
    let x2 = SigmaPoly::from_ints(&[0, 0, 1]);
    let sx2 = sigma_apply(&x2);
    let mut facts = vec![
        format!("sigma(x^2) = {sx2} in Q[x] with sigma(x) = -x"),
        format!("phi sends x^2 to {shown}, so a lift sends x to some f with f^2 = {shown}"),
        "for f = p/q in Q(y), deg(numerator of f^2) - deg(denominator of f^2) = 2*(deg p - deg q) is even".into(),
        format!("deg(numerator) - deg(denominator) of {shown} is {dn} - {dd}"),
    ];
    let diff = dn as i64 - dd as i64;
    let obstructed = diff % 2 != 0 && sx2 == x2;
    let conclusion = if obstructed {
        facts.push(format!("{diff} is odd"));
        format!("{shown} has no square root in Q(y)")
    } else {
        facts.push(format!("{diff} is even"));
        "degree parity gives no obstruction".to_string()
    };
    Ok(LiftObstruction {
        target: shown,
        numerator_degree: dn,
        denominator_degree: dd,
        obstructed,
        facts,
        conclusion,
    })
}

/// The obstruction for `x² ↦ y`.
pub fn lift_obstruction_demo() -> LiftObstruction {
    lift_obstruction(&RationalFunction::param(1, 0)).expect("y is a valid target")
}
