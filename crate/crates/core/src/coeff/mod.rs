//! Exact scalars.
//!
//! Every coefficient that appears in a morphism lives in one of four rings:
//! the rationals, polynomials in `t`, rational functions in `t`, or a number
//! field `Q[d]/(m(d))` used for loop values `d = q + 1/q` at roots of unity.
//! All arithmetic is exact and every element has a unique canonical form, so
//! structural equality is ring equality.

mod chebyshev;
mod parse;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use chebyshev::{chebyshev_minpoly, quantum_integer_poly, MAX_CHEBYSHEV_L};
pub use parse::{parse_coefficient, parse_polynomial};
pub use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("ring mismatch: {left} vs {right}")]
    TagMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("no inverse in {0}")]
    NotInvertible(String),
    #[error("pole at t = {0}")]
    Pole(String),
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("indeterminate '{var}' not allowed in {ring} (position {pos})")]
    IndeterminateNotAllowed { var: char, ring: String, pos: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid minimal polynomial: {0}")]
    InvalidModulus(String),
    #[error("{0}")]
    OutOfRange(String),
}

/// Which ring a scalar belongs to.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RingTag {
    Q,
    PolyT,
    RatFunT,
    /// `Q[d]/(m)`; `m` is monic, nonconstant and squarefree.
    NumberFieldDelta(Arc<Poly>),
}

impl RingTag {
    /// Validates `m` and returns the number-field tag for `Q[d]/(m)`.
    pub fn number_field(m: Poly) -> Result<Self, CoeffError> {
        if m.is_constant() {
            return Err(CoeffError::InvalidModulus("constant polynomial".into()));
        }
        if m.squarefree().degree() != m.degree() {
            return Err(CoeffError::InvalidModulus("not squarefree".into()));
        }
        Ok(RingTag::NumberFieldDelta(Arc::new(m.monic())))
    }

    /// The short name used in JSON and on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            RingTag::Q => "Q",
            RingTag::PolyT => "Qt",
            RingTag::RatFunT => "Qratfun",
            RingTag::NumberFieldDelta(_) => "Qdelta",
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingTag::PolyT)
    }

    /// Name of the indeterminate, if the ring has one.
    pub fn variable(&self) -> Option<char> {
        match self {
            RingTag::Q => None,
            RingTag::PolyT | RingTag::RatFunT => Some('t'),
            RingTag::NumberFieldDelta(_) => Some('d'),
        }
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::NumberFieldDelta(m) => write!(f, "Q[d]/({})", m.render('d')),
            other => f.write_str(other.name()),
        }
    }
}

/// A reduced fraction of polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun { num, den: Poly::one() });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFun { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }
}

/// An element of `Q[d]/(m)`, stored as its reduced representative.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Residue {
    value: Poly,
    modulus: Arc<Poly>,
}

impl Residue {
    pub fn new(value: Poly, modulus: Arc<Poly>) -> Self {
        let value = value.rem(&modulus);
        Residue { value, modulus }
    }

    pub fn value(&self) -> &Poly {
        &self.value
    }

    pub fn modulus(&self) -> &Arc<Poly> {
        &self.modulus
    }
}

/// An exact scalar together with the ring it belongs to.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RingElement {
    Rational(BigRational),
    Poly(Poly),
    RatFun(RatFun),
    Delta(Residue),
}

fn mismatch(a: &RingElement, b: &RingElement) -> CoeffError {
    CoeffError::TagMismatch {
        left: a.tag().to_string(),
        right: b.tag().to_string(),
    }
}

impl RingElement {
    pub fn tag(&self) -> RingTag {
        match self {
            RingElement::Rational(_) => RingTag::Q,
            RingElement::Poly(_) => RingTag::PolyT,
            RingElement::RatFun(_) => RingTag::RatFunT,
            RingElement::Delta(r) => RingTag::NumberFieldDelta(r.modulus.clone()),
        }
    }

    pub fn from_rational(tag: &RingTag, q: BigRational) -> Self {
        match tag {
            RingTag::Q => RingElement::Rational(q),
            RingTag::PolyT => RingElement::Poly(Poly::constant(q)),
            RingTag::RatFunT => RingElement::RatFun(RatFun::from_poly(Poly::constant(q))),
            RingTag::NumberFieldDelta(m) => {
                RingElement::Delta(Residue::new(Poly::constant(q), m.clone()))
            }
        }
    }

    pub fn from_int(tag: &RingTag, n: i64) -> Self {
        Self::from_rational(tag, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero(tag: &RingTag) -> Self {
        Self::from_rational(tag, BigRational::zero())
    }

    pub fn one(tag: &RingTag) -> Self {
        Self::from_rational(tag, BigRational::one())
    }

    /// The indeterminate of the ring (`t` or `d`).
    pub fn variable(tag: &RingTag) -> Option<Self> {
        match tag {
            RingTag::Q => None,
            RingTag::PolyT => Some(RingElement::Poly(Poly::x())),
            RingTag::RatFunT => Some(RingElement::RatFun(RatFun::from_poly(Poly::x()))),
            RingTag::NumberFieldDelta(m) => {
                Some(RingElement::Delta(Residue::new(Poly::x(), m.clone())))
            }
        }
    }

    /// Embeds a polynomial in the indeterminate into the ring.
    pub fn from_poly(tag: &RingTag, p: Poly) -> Option<Self> {
        match tag {
            RingTag::Q => p.is_constant().then(|| RingElement::Rational(p.coeff(0))),
            RingTag::PolyT => Some(RingElement::Poly(p)),
            RingTag::RatFunT => Some(RingElement::RatFun(RatFun::from_poly(p))),
            RingTag::NumberFieldDelta(m) => Some(RingElement::Delta(Residue::new(p, m.clone()))),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Rational(q) => q.is_zero(),
            RingElement::Poly(p) => p.is_zero(),
            RingElement::RatFun(r) => r.num.is_zero(),
            RingElement::Delta(r) => r.value.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingElement::Rational(q) => q.is_one(),
            RingElement::Poly(p) => p.is_one(),
            RingElement::RatFun(r) => r.num.is_one() && r.den.is_one(),
            RingElement::Delta(r) => r.value.is_one(),
        }
    }

    /// The value as a rational number, when it is a constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            RingElement::Rational(q) => Some(q.clone()),
            RingElement::Poly(p) => p.is_constant().then(|| p.coeff(0)),
            RingElement::RatFun(r) => {
                (r.num.is_constant() && r.den.is_one()).then(|| r.num.coeff(0))
            }
            RingElement::Delta(r) => r.value.is_constant().then(|| r.value.coeff(0)),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, CoeffError> {
        use RingElement::*;
        Ok(match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(a + b),
            (Poly(a), Poly(b)) => Poly(a + b),
            (RatFun(a), RatFun(b)) => {
                if a.den == b.den {
                    RatFun(self::RatFun::new(&a.num + &b.num, a.den.clone())?)
                } else {
                    RatFun(self::RatFun::new(
                        &(&a.num * &b.den) + &(&b.num * &a.den),
                        &a.den * &b.den,
                    )?)
                }
            }
            (Delta(a), Delta(b)) if a.modulus == b.modulus => Delta(Residue {
                value: &a.value + &b.value,
                modulus: a.modulus.clone(),
            }),
            _ => return Err(mismatch(self, rhs)),
        })
    }

    pub fn checked_neg(&self) -> Self {
        use RingElement::*;
        match self {
            Rational(a) => Rational(-a),
            Poly(a) => Poly(-a),
            RatFun(a) => RatFun(self::RatFun {
                num: -&a.num,
                den: a.den.clone(),
            }),
            Delta(a) => Delta(Residue {
                value: -&a.value,
                modulus: a.modulus.clone(),
            }),
        }
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, CoeffError> {
        self.checked_add(&rhs.checked_neg())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, CoeffError> {
        use RingElement::*;
        Ok(match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (Poly(a), Poly(b)) => Poly(a * b),
            (RatFun(a), RatFun(b)) => {
                RatFun(self::RatFun::new(&a.num * &b.num, &a.den * &b.den)?)
            }
            (Delta(a), Delta(b)) if a.modulus == b.modulus => {
                Delta(Residue::new(&a.value * &b.value, a.modulus.clone()))
            }
            _ => return Err(mismatch(self, rhs)),
        })
    }

    /// Multiplicative inverse in a field tag.
    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        use RingElement::*;
        Ok(match self {
            Rational(a) => Rational(a.recip()),
            Poly(p) if p.is_constant() => Poly(self::Poly::constant(p.coeff(0).recip())),
            Poly(_) => return Err(CoeffError::NotInvertible(RingTag::PolyT.to_string())),
            RatFun(a) => RatFun(self::RatFun::new(a.den.clone(), a.num.clone())?),
            Delta(a) => {
                let (g, s, _) = a.value.ext_gcd(&a.modulus);
                if !g.is_one() {
                    return Err(CoeffError::NotInvertible(self.tag().to_string()));
                }
                Delta(Residue::new(s, a.modulus.clone()))
            }
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        self.checked_mul(&rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.tag());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes a rational value for `t`.
    pub fn eval_at(&self, t0: &BigRational) -> Result<BigRational, CoeffError> {
        match self {
            RingElement::Rational(q) => Ok(q.clone()),
            RingElement::Poly(p) => Ok(p.eval(t0)),
            RingElement::RatFun(r) => {
                let den = r.den.eval(t0);
                if den.is_zero() {
                    return Err(CoeffError::Pole(t0.to_string()));
                }
                Ok(r.num.eval(t0) / den)
            }
            RingElement::Delta(_) => Err(CoeffError::TagMismatch {
                left: self.tag().to_string(),
                right: "Qt".into(),
            }),
        }
    }

    /// Reinterprets the element in another ring when that makes sense
    /// (`Q` into anything, `Qt` into `Qratfun`).
    pub fn coerce(&self, tag: &RingTag) -> Result<Self, CoeffError> {
        if &self.tag() == tag {
            return Ok(self.clone());
        }
        match (self, tag) {
            (RingElement::Rational(q), _) => Ok(Self::from_rational(tag, q.clone())),
            (RingElement::Poly(p), RingTag::RatFunT) => {
                Ok(RingElement::RatFun(RatFun::from_poly(p.clone())))
            }
            (RingElement::Poly(p), RingTag::NumberFieldDelta(m)) => {
                Ok(RingElement::Delta(Residue::new(p.clone(), m.clone())))
            }
            _ => Err(CoeffError::TagMismatch {
                left: self.tag().to_string(),
                right: tag.to_string(),
            }),
        }
    }

    /// Renders in the coefficient grammar accepted by [`parse_coefficient`].
    pub fn render(&self) -> String {
        match self {
            RingElement::Rational(q) => q.to_string(),
            RingElement::Poly(p) => p.render('t'),
            RingElement::RatFun(r) => {
                if r.den.is_one() {
                    r.num.render('t')
                } else {
                    let single = |p: &Poly| p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
                    let num = r.num.render('t');
                    let den = r.den.render('t');
                    let num = if single(&r.num) { num } else { format!("({num})") };
                    let bare = single(&r.den) && r.den.leading().is_some_and(|c| c.is_one());
                    let den = if bare { den } else { format!("({den})") };
                    format!("{num}/{den}")
                }
            }
            RingElement::Delta(r) => r.value.render('d'),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// Operator forms panic on a ring mismatch; use the `checked_*` methods when
// the operands may come from different rings.
impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.checked_neg()
    }
}

/// Binary operations accepted by [`ring_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Applies `op` to `a` (and `b` for binary operations).
pub fn ring_arith(
    a: &RingElement,
    b: Option<&RingElement>,
    op: ArithOp,
) -> Result<RingElement, CoeffError> {
    let need_b = || {
        b.ok_or_else(|| CoeffError::OutOfRange("binary operation needs two operands".into()))
    };
    match op {
        ArithOp::Add => a.checked_add(need_b()?),
        ArithOp::Mul => a.checked_mul(need_b()?),
        ArithOp::Neg => Ok(a.checked_neg()),
        ArithOp::Inv => a.inv(),
    }
}

/// A coefficient ring together with the value of the loop parameter.
///
/// Closing a loop in a diagram multiplies by this parameter: `t` in the
/// partition category and `d = q + 1/q` in the Temperley-Lieb category. In
/// `Q` the parameter is a bound rational number; in the other rings it is
/// the indeterminate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ring {
    tag: RingTag,
    param: RingElement,
}

impl Ring {
    /// `Q` with the parameter specialised to `t0`.
    pub fn rational(t0: BigRational) -> Self {
        Ring {
            tag: RingTag::Q,
            param: RingElement::Rational(t0),
        }
    }

    pub fn rational_int(t0: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(t0)))
    }

    /// `Q[t]` with symbolic parameter.
    pub fn poly() -> Self {
        Ring {
            tag: RingTag::PolyT,
            param: RingElement::Poly(Poly::x()),
        }
    }

    /// `Q(t)` with symbolic parameter.
    pub fn ratfun() -> Self {
        Ring {
            tag: RingTag::RatFunT,
            param: RingElement::RatFun(RatFun::from_poly(Poly::x())),
        }
    }

    /// `Q[d]/(m)` with the parameter equal to the class of `d`.
    pub fn number_field(m: Poly) -> Result<Self, CoeffError> {
        let tag = RingTag::number_field(m)?;
        let param = RingElement::variable(&tag).expect("number field has a generator");
        Ok(Ring { tag, param })
    }

    /// Builds a ring from a tag, supplying `t0` when the tag is `Q`.
    pub fn from_tag(tag: RingTag, t0: Option<BigRational>) -> Result<Self, CoeffError> {
        match tag {
            RingTag::Q => t0
                .map(Ring::rational)
                .ok_or_else(|| CoeffError::OutOfRange("ring Q needs a value for t".into())),
            RingTag::PolyT => Ok(Ring::poly()),
            RingTag::RatFunT => Ok(Ring::ratfun()),
            RingTag::NumberFieldDelta(m) => {
                let param = RingElement::variable(&RingTag::NumberFieldDelta(m.clone()))
                    .expect("number field has a generator");
                Ok(Ring {
                    tag: RingTag::NumberFieldDelta(m),
                    param,
                })
            }
        }
    }

    pub fn tag(&self) -> &RingTag {
        &self.tag
    }

    pub fn param(&self) -> &RingElement {
        &self.param
    }

    /// The bound value of `t` for `Q`.
    pub fn t_value(&self) -> Option<&BigRational> {
        match (&self.tag, &self.param) {
            (RingTag::Q, RingElement::Rational(q)) => Some(q),
            _ => None,
        }
    }

    pub fn zero(&self) -> RingElement {
        RingElement::zero(&self.tag)
    }

    pub fn one(&self) -> RingElement {
        RingElement::one(&self.tag)
    }

    pub fn int(&self, n: i64) -> RingElement {
        RingElement::from_int(&self.tag, n)
    }

    pub fn rat(&self, q: BigRational) -> RingElement {
        RingElement::from_rational(&self.tag, q)
    }

    pub fn is_field(&self) -> bool {
        self.tag.is_field()
    }

    /// `c * param^k`, shifting coefficients directly for polynomial rings.
    pub fn scale_by_param_pow(&self, c: &RingElement, k: u32) -> RingElement {
        if k == 0 {
            return c.clone();
        }
        match c {
            RingElement::Poly(p) => RingElement::Poly(p.shift(k as usize)),
            RingElement::RatFun(r) if matches!(self.tag, RingTag::RatFunT) => {
                RingElement::RatFun(
                    RatFun::new(r.num.shift(k as usize), r.den.clone()).expect("nonzero den"),
                )
            }
            _ => c * &self.param.pow(k),
        }
    }

    /// The same ring with fractions allowed (`Qt` becomes `Qratfun`).
    pub fn fraction_field(&self) -> Ring {
        match self.tag {
            RingTag::PolyT => Ring::ratfun(),
            _ => self.clone(),
        }
    }

    pub fn parse(&self, text: &str) -> Result<RingElement, CoeffError> {
        parse_coefficient(text, &self.tag)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tag {
            RingTag::Q => write!(f, "Q (t = {})", self.param),
            other => write!(f, "{other}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> RingElement {
        RingElement::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn poly_product() {
        let r = Ring::poly();
        let t = r.param().clone();
        let a = &t - &r.one();
        let b = &t + &r.one();
        assert_eq!((&a * &b).render(), "t^2 - 1");
    }

    #[test]
    fn ratfun_inverse() {
        let r = Ring::ratfun();
        let inv = r.param().inv().unwrap();
        assert_eq!(inv.render(), "1/t");
        assert!((&inv * r.param()).is_one());
    }

    #[test]
    fn errors() {
        let r = Ring::poly();
        assert!(matches!(r.param().inv(), Err(CoeffError::NotInvertible(_))));
        assert_eq!(q(0, 1).inv(), Err(CoeffError::DivisionByZero));
        assert!(matches!(
            ring_arith(&q(1, 1), Some(r.param()), ArithOp::Add),
            Err(CoeffError::TagMismatch { .. })
        ));
    }

    #[test]
    fn number_field_inverse() {
        let r = Ring::number_field(Poly::from_ints(&[-2, 0, 1])).unwrap();
        let d = r.param().clone();
        let inv = d.inv().unwrap();
        // 1/d = d/2 when d^2 = 2
        assert_eq!(inv.render(), "1/2*d");
        assert!(Ring::number_field(Poly::from_ints(&[1, 2, 1])).is_err());
    }

    #[test]
    fn pole_detected() {
        let r = Ring::ratfun();
        let x = (&r.param().clone() - &r.one()).inv().unwrap();
        let one = BigRational::one();
        assert!(matches!(x.eval_at(&one), Err(CoeffError::Pole(_))));
    }
}
