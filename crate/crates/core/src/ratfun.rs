//! The fraction field Q(t) and canonical representatives of classes in
//! Q(t)/Q[t^{±1}], the value module of the Blanchfield pairing.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::Error;
use crate::laurent::{laurent_mod, LaurentPoly, Poly, Rat};
use crate::matrix::{field_inverse, Mat};

/// Element of Q(t), stored as a reduced fraction of ordinary polynomials
/// with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.divrem(&g).0;
        let den = den.divrem(&g).0;
        let lc = den.leading();
        RatFun {
            num: num.scale(&(Rat::one() / lc.clone())),
            den: den.scale(&(Rat::one() / lc)),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_laurent(l: &LaurentPoly) -> Self {
        if l.is_zero() {
            return RatFun::zero();
        }
        let low = l.low_exp();
        let body = l.body().clone();
        if low >= 0 {
            RatFun::from_poly(Poly::monomial(Rat::one(), low as usize) * body)
        } else {
            RatFun::new(body, Poly::monomial(Rat::one(), (-low) as usize))
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn inv(&self) -> Option<RatFun> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFun::new(self.den.clone(), self.num.clone()))
        }
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        RatFun::new(
            self.num.clone() * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        self + (-rhs)
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        RatFun::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Div for RatFun {
    type Output = RatFun;
    fn div(self, rhs: RatFun) -> RatFun {
        let inv = rhs.inv().expect("division by zero rational function");
        self * inv
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        // display with primitive integer denominator
        let dints = self.den.primitive_int_coeffs();
        let den_int = Poly::new(dints.iter().map(|c| Rat::from_integer(c.clone())).collect());
        let factor = self.den.leading() / den_int.leading();
        let num = self.num.scale(&(Rat::one() / factor));
        write!(f, "({})/({})", num, den_int)
    }
}

/// Inverse of a square matrix over Q[t^{±1}], computed in Q(t).
pub fn invert_over_fraction_field(m: &Mat<LaurentPoly>) -> Result<Mat<RatFun>, Error> {
    assert_eq!(m.rows(), m.cols(), "inverse of non-square matrix");
    let mf = m.map(RatFun::from_laurent);
    field_inverse(&mf).ok_or(Error::SingularMatrix)
}

/// Canonical representative of a class in Q(t)/Q[t^{±1}]: a Laurent
/// numerator supported on [0, deg den) over a monic denominator with
/// nonzero constant term. Equal classes have identical representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RfClass {
    num: Poly,
    den: Poly,
}

impl RfClass {
    pub fn zero() -> Self {
        RfClass {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn from_ratfun(f: &RatFun) -> Self {
        RfClass::from_parts(LaurentPoly::from_poly(f.num().clone()), {
            LaurentPoly::from_poly(f.den().clone())
        })
    }

    /// Canonicalises num/den as a class modulo Laurent polynomials.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RfClass::zero();
        }
        // Clear the denominator's unit: den = c * t^k * d0 with d0(0) != 0.
        let mut d0 = den.body().monic();
        let unit = LaurentPoly::monomial(
            Rat::one() / den.body().leading(),
            -den.low_exp(),
        );
        let mut n = num * unit;
        loop {
            if n.is_zero() || d0.degree() == Some(0) {
                return RfClass::zero();
            }
            let g = n.body().gcd(&d0);
            if g.degree().unwrap_or(0) > 0 {
                d0 = d0.divrem(&g).0.monic();
                n = LaurentPoly::from_poly_shifted(n.low_exp(), n.body().divrem(&g).0);
                continue;
            }
            if d0.degree() == Some(0) {
                return RfClass::zero();
            }
            let reduced = laurent_mod(&n, &d0);
            if reduced.is_zero() {
                return RfClass::zero();
            }
            let g2 = reduced.gcd(&d0);
            if g2.degree().unwrap_or(0) > 0 {
                n = LaurentPoly::from_poly(reduced);
                continue;
            }
            return RfClass {
                num: reduced,
                den: d0,
            };
        }
    }

    pub fn add(&self, other: &RfClass) -> RfClass {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = self.den.gcd(&other.den);
        let lcm = self.den.clone() * other.den.divrem(&g).0;
        let n = self.num.clone() * lcm.divrem(&self.den).0
            + other.num.clone() * lcm.divrem(&other.den).0;
        RfClass::from_parts(LaurentPoly::from_poly(n), LaurentPoly::from_poly(lcm))
    }

    /// Module action of Q[t^{±1}].
    pub fn mul_laurent(&self, p: &LaurentPoly) -> RfClass {
        if self.is_zero() || p.is_zero() {
            return RfClass::zero();
        }
        RfClass::from_parts(
            LaurentPoly::from_poly(self.num.clone()) * p.clone(),
            LaurentPoly::from_poly(self.den.clone()),
        )
    }

    pub fn scale(&self, c: &Rat) -> RfClass {
        self.mul_laurent(&LaurentPoly::constant(c.clone()))
    }

    /// The involution t -> t^{-1} applied to the class.
    pub fn conj(&self) -> RfClass {
        if self.is_zero() {
            return RfClass::zero();
        }
        let n = LaurentPoly::from_poly(self.num.clone()).conj();
        let d = LaurentPoly::from_poly(self.den.clone()).conj();
        RfClass::from_parts(n, d)
    }

    /// Numerator lifted to a fixed denominator `big` (which the canonical
    /// denominator must divide); coefficients index a Q-basis of the span
    /// of classes with denominator dividing `big`.
    pub fn numerator_mod(&self, big: &Poly) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (q, r) = big.divrem(&self.den);
        if !r.is_zero() {
            return None;
        }
        Some(self.num.clone() * q)
    }
}

impl fmt::Display for RfClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "[({})/({})]", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rat;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_int_coeffs(coeffs)
    }

    fn l(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(coeffs)
    }

    #[test]
    fn invert_presentation_matrix() {
        // [[0, 2t-1],[t-2, 0]] -> [[0, 1/(t-2)],[1/(2t-1), 0]]
        let m = Mat::from_rows(vec![
            vec![LaurentPoly::zero(), l(&[-1, 2])],
            vec![l(&[-2, 1]), LaurentPoly::zero()],
        ]);
        let inv = invert_over_fraction_field(&m).unwrap();
        assert_eq!(inv[(0, 0)], RatFun::zero());
        assert_eq!(inv[(0, 1)], RatFun::new(p(&[1]), p(&[-2, 1])));
        assert_eq!(inv[(1, 0)], RatFun::new(p(&[1]), p(&[-1, 2])));
        let mf = m.map(RatFun::from_laurent);
        assert_eq!(mf.mul(&inv), Mat::identity(2));
    }

    #[test]
    fn invert_identity_and_singular() {
        let id: Mat<LaurentPoly> = Mat::identity(3);
        let inv = invert_over_fraction_field(&id).unwrap();
        assert_eq!(inv, Mat::identity(3));

        let sing = Mat::from_rows(vec![
            vec![l(&[-1, 1]), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), LaurentPoly::zero()],
        ]);
        assert!(matches!(
            invert_over_fraction_field(&sing),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn class_canonicalisation() {
        // (t-1)/(t-2) reduces to 1/(t-2) as a class
        let c = RfClass::from_parts(l(&[-1, 1]), l(&[-2, 1]));
        assert_eq!(c.num(), &p(&[1]));
        assert_eq!(c.den(), &p(&[-2, 1]));
        // a Laurent polynomial is the zero class
        let z = RfClass::from_parts(l(&[3, -1, 4]), l(&[1]));
        assert!(z.is_zero());
        let z2 = RfClass::from_parts(
            LaurentPoly::from_terms(vec![(-2, rat(1, 1)), (1, rat(5, 1))]),
            l(&[2]),
        );
        assert!(z2.is_zero());
        // adding a Laurent multiple of the denominator does not change the class
        let a = RfClass::from_parts(l(&[0, 0, 7]), l(&[1, -3, 1]));
        let b = RfClass::from_parts(
            LaurentPoly::from_poly(p(&[0, 0, 7]))
                + LaurentPoly::from_poly(p(&[1, -3, 1]))
                    * LaurentPoly::monomial(rat(1, 1), -1),
            l(&[1, -3, 1]),
        );
        assert_eq!(a, b);
    }

    #[test]
    fn class_conj_involution() {
        let c = RfClass::from_parts(l(&[0, 1]), l(&[1, -3, 1]));
        assert_eq!(c.conj().conj(), c);
    }

    #[test]
    fn class_sesquilinear_action() {
        let c = RfClass::from_parts(l(&[1]), l(&[-2, 1]));
        // (t-2) annihilates 1/(t-2)
        assert!(c.mul_laurent(&l(&[-2, 1])).is_zero());
        // t acts invertibly
        let tc = c.mul_laurent(&LaurentPoly::t());
        assert!(!tc.is_zero());
        assert_eq!(tc.mul_laurent(&LaurentPoly::monomial(rat(1, 1), -1)), c);
    }

    #[test]
    fn numerator_mod_lifting() {
        let big = p(&[2, -5, 2]); // (t-2)(2t-1)
        let c = RfClass::from_parts(l(&[1]), l(&[-2, 1]));
        let lifted = c.numerator_mod(&big).unwrap();
        // 1/(t-2) = (2t-1)/big up to the scale of big
        let back = RfClass::from_parts(LaurentPoly::from_poly(lifted), LaurentPoly::from_poly(big));
        assert_eq!(back, c);
    }
}
