//! Exact polynomial arithmetic over Q: ordinary polynomials, Laurent
//! polynomials with integer exponents, and the Sylvester resultant.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Ordinary polynomial over Q. Coefficients are stored in ascending order
/// with no trailing zeros; the zero polynomial has an empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rat::from_integer(int(c))).collect())
    }

    pub fn monomial(c: Rat, exp: usize) -> Self {
        let mut v = vec![Rat::zero(); exp + 1];
        v[exp] = c;
        Poly::new(v)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, exp: usize) -> Rat {
        self.coeffs.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * Rat::from_integer(Int::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading();
        self.scale(&(Rat::one() / lc))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        let lc = d.leading();
        let mut top = rem.len();
        while top >= dd + 1 {
            let k = top - 1;
            if !rem[k].is_zero() {
                let q = rem[k].clone() / lc.clone();
                let shift = k - dd;
                for (i, c) in d.coeffs.iter().enumerate() {
                    let v = rem[shift + i].clone() - q.clone() * c.clone();
                    rem[shift + i] = v;
                }
                quot[shift] = q;
            }
            top -= 1;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divrem(self).1.is_zero()
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplies out denominators and divides by the integer content,
    /// returning primitive integer coefficients (empty for zero).
    pub fn primitive_int_coeffs(&self) -> Vec<Int> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = Int::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| (c.clone() * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = Int::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        ints.into_iter().map(|c| c / g.clone()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rat::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = out[i + j].clone() + a.clone() * b.clone();
                out[i + j] = v;
            }
        }
        Poly::new(out)
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, c: &Rat, exp: i64, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if exp == 0 {
        write!(f, "{}", abs)
    } else {
        if !abs.is_one() {
            write!(f, "{}", abs)?;
        }
        if exp == 1 {
            write!(f, "t")
        } else {
            write!(f, "t^{}", exp)
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            fmt_term(f, c, i as i64, first)?;
            first = false;
        }
        Ok(())
    }
}

/// Laurent polynomial over Q: `t^low * body` with `body(0) != 0` unless
/// the whole polynomial is zero (then `low = 0` and `body = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    low: i64,
    body: Poly,
}

impl LaurentPoly {
    pub fn from_poly_shifted(low: i64, body: Poly) -> Self {
        if body.is_zero() {
            return LaurentPoly::zero();
        }
        let mut shift = 0usize;
        while body.coeff(shift).is_zero() {
            shift += 1;
        }
        if shift == 0 {
            LaurentPoly { low, body }
        } else {
            let trimmed = Poly::new(body.coeffs()[shift..].to_vec());
            LaurentPoly {
                low: low + shift as i64,
                body: trimmed,
            }
        }
    }

    pub fn from_poly(body: Poly) -> Self {
        LaurentPoly::from_poly_shifted(0, body)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for (e, c) in terms {
            acc = acc + LaurentPoly::monomial(c, e);
        }
        acc
    }

    pub fn monomial(c: Rat, exp: i64) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            low: exp,
            body: Poly::constant(c),
        }
    }

    pub fn constant(c: Rat) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn t() -> Self {
        LaurentPoly::monomial(Rat::one(), 1)
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        LaurentPoly::from_poly(Poly::from_int_coeffs(coeffs))
    }

    pub fn low_exp(&self) -> i64 {
        self.low
    }

    pub fn high_exp(&self) -> i64 {
        match self.body.degree() {
            None => 0,
            Some(d) => self.low + d as i64,
        }
    }

    /// Degree span of the nonzero support; None for zero. This is the
    /// Euclidean size function of Q[t^{±1}].
    pub fn span(&self) -> Option<usize> {
        self.body.degree()
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        if self.body.is_zero() || exp < self.low {
            return Rat::zero();
        }
        self.body.coeff((exp - self.low) as usize)
    }

    pub fn terms(&self) -> Vec<(i64, Rat)> {
        self.body
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.low + i as i64, c.clone()))
            .collect()
    }

    pub fn mul_pow(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            low: self.low + k,
            body: self.body.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            low: self.low,
            body: self.body.scale(c),
        }
    }

    /// Evaluation at a nonzero rational point.
    pub fn eval(&self, x: &Rat) -> Rat {
        assert!(!x.is_zero(), "Laurent evaluation requires x != 0");
        let base = self.body.eval(x);
        let mut unit = Rat::one();
        if self.low >= 0 {
            for _ in 0..self.low {
                unit = unit * x.clone();
            }
        } else {
            for _ in 0..(-self.low) {
                unit = unit / x.clone();
            }
        }
        base * unit
    }

    /// The substitution t -> t^{-1}.
    pub fn conj(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = self.body.coeffs().to_vec();
        coeffs.reverse();
        LaurentPoly::from_poly_shifted(-self.high_exp(), Poly::new(coeffs))
    }

    /// Multiplies by ±t^k so that the lowest exponent is 0 and the leading
    /// coefficient positive. Equality of these forms is equality up to units
    /// ±t^k, the ambiguity of Alexander-type invariants.
    pub fn unit_normal(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let body = if self.body.leading().is_negative() {
            -self.body.clone()
        } else {
            self.body.clone()
        };
        LaurentPoly { low: 0, body }
    }

    /// Scales by a unit c·t^k to a monic ordinary polynomial with nonzero
    /// constant term.
    pub fn monic_normal(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            low: 0,
            body: self.body.monic(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.body.degree() == Some(0)
    }

    pub fn is_integral(&self) -> bool {
        self.body.is_integral()
    }

    /// Laurent division: remainder has strictly smaller span than `d`.
    pub fn divrem(&self, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return (LaurentPoly::zero(), LaurentPoly::zero());
        }
        let (q0, r0) = self.body.divrem(&d.body);
        (
            LaurentPoly::from_poly_shifted(self.low - d.low, q0),
            LaurentPoly::from_poly_shifted(self.low, r0),
        )
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly {
            low: 0,
            body: Poly::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.body.is_zero()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::constant(Rat::one())
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let low = self.low.min(rhs.low);
        let a = Poly::new(
            std::iter::repeat(Rat::zero())
                .take((self.low - low) as usize)
                .chain(self.body.coeffs().iter().cloned())
                .collect(),
        );
        let b = Poly::new(
            std::iter::repeat(Rat::zero())
                .take((rhs.low - low) as usize)
                .chain(rhs.body.coeffs().iter().cloned())
                .collect(),
        );
        LaurentPoly::from_poly_shifted(low, a + b)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            body: -self.body,
        }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_poly_shifted(self.low + rhs.low, self.body * rhs.body)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().into_iter().rev() {
            fmt_term(f, &c, e, first)?;
            first = false;
        }
        Ok(())
    }
}

/// Reduces a Laurent polynomial modulo the Laurent-span of an ordinary
/// polynomial `f` with nonzero constant term: the unique representative
/// with exponents in `[0, deg f)`.
pub fn laurent_mod(n: &LaurentPoly, f: &Poly) -> Poly {
    let d = f.degree().expect("modulus must be nonzero") as i64;
    assert!(
        !f.coeff(0).is_zero(),
        "modulus must have nonzero constant term"
    );
    if d == 0 {
        return Poly::zero();
    }
    let mut n = n.clone();
    // Clear exponents >= deg f from the top.
    while !n.is_zero() && n.high_exp() >= d {
        let h = n.high_exp();
        let c = n.coeff(h) / f.leading();
        n = n - LaurentPoly::monomial(c, h - d) * LaurentPoly::from_poly(f.clone());
    }
    // Clear negative exponents from the bottom; f(0) != 0 keeps the support
    // inside [low+1, deg f) at each step.
    while !n.is_zero() && n.low_exp() < 0 {
        let l = n.low_exp();
        let c = n.coeff(l) / f.coeff(0);
        n = n - LaurentPoly::monomial(c, l) * LaurentPoly::from_poly(f.clone());
    }
    debug_assert!(n.is_zero() || (n.low_exp() >= 0 && n.high_exp() < d));
    let mut coeffs = vec![Rat::zero(); d as usize];
    for (e, c) in n.terms() {
        coeffs[e as usize] = c;
    }
    Poly::new(coeffs)
}

/// Sylvester resultant of two integral Laurent polynomials, taken after
/// clearing units so both are ordinary polynomials. Rows of the Sylvester
/// matrix list the coefficients of `f` first (deg g rows), then of `g`.
pub fn resultant(f: &LaurentPoly, g: &LaurentPoly) -> Result<Int, Error> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroResultant);
    }
    let f0 = f.unit_normal();
    let g0 = g.unit_normal();
    if !f0.is_integral() || !g0.is_integral() {
        return Err(Error::InvalidParameter(
            "resultant requires integer coefficients".into(),
        ));
    }
    let m = f0.span().unwrap();
    let n = g0.span().unwrap();
    let size = m + n;
    if size == 0 {
        return Ok(Int::one());
    }
    let fi: Vec<Int> = (0..=m)
        .map(|i| f0.coeff(i as i64).to_integer())
        .collect();
    let gi: Vec<Int> = (0..=n)
        .map(|i| g0.coeff(i as i64).to_integer())
        .collect();
    let mut sylv = crate::matrix::Mat::zeros(size, size);
    for row in 0..n {
        for (k, c) in fi.iter().enumerate() {
            // descending coefficients, shifted right by `row`
            sylv[(row, row + m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in gi.iter().enumerate() {
            sylv[(n + row, row + n - k)] = c.clone();
        }
    }
    Ok(crate::matrix::det_int(&sylv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(coeffs)
    }

    #[test]
    fn poly_divrem_roundtrip() {
        let a = Poly::from_int_coeffs(&[1, 0, -3, 2, 5]);
        let b = Poly::from_int_coeffs(&[2, -1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q * b.clone() + r.clone(), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn laurent_divrem_span_drops() {
        let a = LaurentPoly::from_terms(vec![(-2, rat(3, 1)), (0, rat(1, 2)), (3, rat(-1, 1))]);
        let b = LaurentPoly::from_terms(vec![(-1, rat(2, 1)), (1, rat(1, 1))]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q * b.clone() + r.clone(), a);
        assert!(r.is_zero() || r.span().unwrap() < b.span().unwrap());
    }

    #[test]
    fn conj_and_unit_normal() {
        // 2t^2 - 5t + 2 is symmetric under t -> 1/t up to units.
        let d = lp(&[2, -5, 2]);
        assert_eq!(d.conj().unit_normal(), d.unit_normal());
        let skew = lp(&[1, 1, -3]);
        assert_ne!(skew.conj().unit_normal(), skew.unit_normal());
    }

    #[test]
    fn laurent_mod_reduces_range() {
        let f = Poly::from_int_coeffs(&[1, -3, 1]); // t^2 - 3t + 1
        let n = LaurentPoly::from_terms(vec![(-2, rat(1, 1)), (4, rat(2, 1))]);
        let r = laurent_mod(&n, &f);
        assert!(r.degree().map_or(true, |d| d < 2));
        // difference is a Laurent multiple of f
        let diff = n - LaurentPoly::from_poly(r);
        let (_, rem) = diff.divrem(&LaurentPoly::from_poly(f));
        assert!(rem.is_zero());
    }

    #[test]
    fn resultant_examples() {
        // Res(t^2 - 1, t - 3) = 8
        let r = resultant(&lp(&[-1, 0, 1]), &lp(&[-3, 1])).unwrap();
        assert_eq!(r, int(8));
        // Res(f, 1) = 1
        let r = resultant(&lp(&[7, -2, 5]), &lp(&[1])).unwrap();
        assert_eq!(r, int(1));
        // Res(t^2 - t + 1, t^2 + t + 1) = 4
        let r = resultant(&lp(&[1, -1, 1]), &lp(&[1, 1, 1])).unwrap();
        assert_eq!(r, int(4));
    }

    #[test]
    fn resultant_zero_input_errors() {
        assert!(matches!(
            resultant(&LaurentPoly::zero(), &lp(&[1, 1])),
            Err(Error::ZeroResultant)
        ));
    }

    #[test]
    fn display_conventions() {
        assert_eq!(lp(&[2, -5, 2]).to_string(), "2t^2 - 5t + 2");
        assert_eq!(lp(&[1, -1, 1]).to_string(), "t^2 - t + 1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let half = LaurentPoly::from_terms(vec![(0, rat(-1, 2)), (1, rat(1, 1))]);
        assert_eq!(half.to_string(), "t - 1/2");
    }
}
