//! Partial factorisation over Q: squarefree split, rational root
//! extraction, and quadratic irreducibility by discriminant. Rootless
//! factors of degree three or more are reported unresolved.

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::laurent::{Int, LaurentPoly, Poly, Rat};

/// Result of `factor_over_rationals`: `input = unit * prod(factors) * prod(unresolved)`
/// with every factor monic and the unit of the form c*t^k.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorisation {
    pub unit: LaurentPoly,
    pub factors: Vec<(LaurentPoly, u32)>,
    pub unresolved: Vec<(LaurentPoly, u32)>,
}

impl Factorisation {
    pub fn is_resolved(&self) -> bool {
        self.unresolved.is_empty()
    }

    pub fn product(&self) -> LaurentPoly {
        let mut acc = self.unit.clone();
        for (f, mult) in self.factors.iter().chain(self.unresolved.iter()) {
            for _ in 0..*mult {
                acc = acc * f.clone();
            }
        }
        acc
    }
}

fn divisors(n: &Int) -> Option<Vec<Int>> {
    let n: u64 = n.abs().try_into().ok()?;
    if n == 0 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(Int::from(d));
            if d != n / d {
                large.push(Int::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// All rational roots of a polynomial with the given primitive integer
/// coefficients; None if the coefficient bounds are too large to search.
fn rational_roots(p: &Poly) -> Option<Vec<Rat>> {
    let ints = p.primitive_int_coeffs();
    let a0 = ints.first()?.clone();
    let an = ints.last()?.clone();
    let ps = divisors(&a0)?;
    let qs = divisors(&an)?;
    let mut roots = Vec::new();
    let mut rem = p.clone();
    for pi in &ps {
        for qi in &qs {
            for sign in [1i64, -1] {
                let cand = Rat::new(pi.clone() * Int::from(sign), qi.clone());
                while rem.eval(&cand).is_zero() {
                    roots.push(cand.clone());
                    let lin = Poly::new(vec![-cand.clone(), Rat::one()]);
                    rem = rem.divrem(&lin).0;
                }
            }
        }
    }
    Some(roots)
}

fn is_rational_square(r: &Rat) -> bool {
    if r.is_negative() {
        return false;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    &(&n * &n) == r.numer() && &(&d * &d) == r.denom()
}

/// Squarefree decomposition (Yun): returns (part, multiplicity) pairs with
/// the parts monic, squarefree and pairwise coprime.
fn squarefree_split(f: &Poly) -> Vec<(Poly, u32)> {
    let f = f.monic();
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let df = f.derivative();
    let mut g = f.gcd(&df);
    let mut w = f.divrem(&g).0;
    let mut mult = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&g);
        let z = w.divrem(&y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, mult));
        }
        w = y.clone();
        g = g.divrem(&y).0;
        mult += 1;
    }
    out
}

pub fn factor_over_rationals(f: &LaurentPoly) -> Result<Factorisation, Error> {
    if f.is_zero() {
        return Err(Error::InvalidParameter(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let body = f.body();
    let unit_scalar = body.leading();
    let mut factors: Vec<(LaurentPoly, u32)> = Vec::new();
    let mut unresolved: Vec<(LaurentPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_split(body) {
        let mut rem = part.clone();
        match rational_roots(&part) {
            Some(roots) => {
                for r in roots {
                    factors.push((
                        LaurentPoly::from_poly(Poly::new(vec![-r.clone(), Rat::one()])),
                        mult,
                    ));
                    let lin = Poly::new(vec![-r, Rat::one()]);
                    rem = rem.divrem(&lin).0;
                }
            }
            None => {
                // coefficient bounds beyond the root search; leave whole part
            }
        }
        match rem.degree().unwrap_or(0) {
            0 => {}
            2 => {
                let disc = rem.coeff(1).clone() * rem.coeff(1).clone()
                    - Rat::from_integer(Int::from(4)) * rem.coeff(0).clone() * rem.coeff(2).clone();
                debug_assert!(!is_rational_square(&disc), "rational roots missed");
                factors.push((LaurentPoly::from_poly(rem), mult));
            }
            _ => unresolved.push((LaurentPoly::from_poly(rem), mult)),
        }
    }
    factors.sort_by(|a, b| cmp_factor(&a.0, &b.0));
    unresolved.sort_by(|a, b| cmp_factor(&a.0, &b.0));
    Ok(Factorisation {
        unit: LaurentPoly::monomial(unit_scalar, f.low_exp()),
        factors,
        unresolved,
    })
}

fn cmp_factor(a: &LaurentPoly, b: &LaurentPoly) -> std::cmp::Ordering {
    a.span()
        .cmp(&b.span())
        .then_with(|| a.to_string().cmp(&b.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rat;

    fn l(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(coeffs)
    }

    #[test]
    fn splits_family_polynomial() {
        // 2t^2 - 5t + 2 = 2 (t - 2)(t - 1/2)
        let f = factor_over_rationals(&l(&[2, -5, 2])).unwrap();
        assert!(f.is_resolved());
        assert_eq!(f.unit, LaurentPoly::constant(rat(2, 1)));
        let strs: Vec<String> = f.factors.iter().map(|(p, m)| format!("{p}^{m}")).collect();
        assert_eq!(strs, vec!["t - 1/2^1", "t - 2^1"]);
        assert_eq!(f.product().unit_normal(), l(&[2, -5, 2]));
    }

    #[test]
    fn quadratic_irreducible_by_discriminant() {
        let f = factor_over_rationals(&l(&[1, -1, 1])).unwrap();
        assert!(f.is_resolved());
        assert_eq!(f.factors, vec![(l(&[1, -1, 1]), 1)]);
    }

    #[test]
    fn repeated_root() {
        // (t-1)^2
        let f = factor_over_rationals(&l(&[1, -2, 1])).unwrap();
        assert_eq!(f.factors, vec![(l(&[-1, 1]), 2)]);
        assert_eq!(f.product(), l(&[1, -2, 1]));
    }

    #[test]
    fn unresolved_cubic_flagged() {
        // t^3 - t - 1 has no rational roots
        let f = factor_over_rationals(&l(&[-1, -1, 0, 1])).unwrap();
        assert!(!f.is_resolved());
        assert_eq!(f.unresolved, vec![(l(&[-1, -1, 0, 1]), 1)]);
    }

    #[test]
    fn laurent_unit_is_preserved() {
        let f = LaurentPoly::from_terms(vec![(-1, rat(3, 1)), (0, rat(-3, 1))]); // 3t^{-1}(t... )
        let fac = factor_over_rationals(&f).unwrap();
        assert_eq!(fac.product(), f);
    }
}
