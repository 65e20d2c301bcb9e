//! The rational Alexander module presented by tV - V^T, its Blanchfield
//! pairing, and the submodule/metaboliser analysis.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::factor::{factor_over_rationals, Factorisation};
use crate::laurent::{laurent_mod, LaurentPoly, Poly, Rat};
use crate::matrix::{field_nullspace, rref, Mat};
use crate::ratfun::{invert_over_fraction_field, RfClass};
use crate::seifert::{alexander_polynomial, SeifertMatrix};
use crate::snf::smith;

/// One p-primary piece of the torsion module: annihilated by prime^multiplicity,
/// generated by `generator` in module coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimaryComponent {
    pub prime: LaurentPoly,
    pub multiplicity: u32,
    pub generator: Vec<Rat>,
    pub summand: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrimaryDecomposition {
    pub components: Vec<PrimaryComponent>,
    /// False when the factorisation left an unresolved factor; submodule
    /// enumeration refuses to run in that case.
    pub resolved: bool,
}

/// H_1(M_K; Q[t^{±1}]) as a finite-dimensional Q-vector space with exact
/// t-action, built from the Smith form of the presentation tV - V^T.
#[derive(Clone, Debug)]
pub struct RationalAlexanderModule {
    seifert: SeifertMatrix,
    pub q_dimension: usize,
    /// Nonunit invariant factors, monic with nonzero constant term.
    pub invariant_factors: Vec<LaurentPoly>,
    factor_polys: Vec<Poly>,
    offsets: Vec<usize>,
    pub t_action: Mat<Rat>,
    /// Images of the presentation generators e_1..e_2g in module coordinates.
    pub generator_classes: Vec<Vec<Rat>>,
    /// Per summand: the lift of its cyclic generator back to presentation
    /// generator coordinates (a column of U^{-1} from the Smith form).
    class_lifts: Vec<Vec<LaurentPoly>>,
    pub primary: PrimaryDecomposition,
    pub alexander: LaurentPoly,
}

pub fn build_module(v: &SeifertMatrix) -> RationalAlexanderModule {
    let n = v.size();
    let presentation = v.presentation();
    let s = smith(&presentation);
    let diag = s.diagonal();

    let mut invariant_factors = Vec::new();
    let mut factor_polys = Vec::new();
    let mut offsets = Vec::new();
    let mut class_lifts = Vec::new();
    let mut dim = 0usize;
    for (i, f) in diag.iter().enumerate() {
        debug_assert!(!f.is_zero(), "presentation of a knot module is nonsingular");
        if f.is_unit() {
            continue;
        }
        offsets.push(dim);
        dim += f.span().unwrap();
        invariant_factors.push(f.clone());
        factor_polys.push(f.body().clone());
        class_lifts.push(s.u_inv.col(i));
    }

    // block companion t-action
    let mut t_action: Mat<Rat> = Mat::zeros(dim, dim);
    for (idx, f) in factor_polys.iter().enumerate() {
        let o = offsets[idx];
        let d = f.degree().unwrap();
        for k in 0..d - 1 {
            t_action[(o + k + 1, o + k)] = Rat::one();
        }
        for k in 0..d {
            t_action[(o + k, o + d - 1)] = -f.coeff(k);
        }
    }

    // generator classes: e_j -> (U e_j) reduced per nonunit summand
    let mut generator_classes = Vec::new();
    for j in 0..n {
        let mut coords = vec![Rat::zero(); dim];
        let mut summand = 0usize;
        for (i, f) in diag.iter().enumerate() {
            if f.is_unit() {
                continue;
            }
            let reduced = laurent_mod(&s.u[(i, j)], &factor_polys[summand]);
            for (k, c) in reduced.coeffs().iter().enumerate() {
                coords[offsets[summand] + k] = c.clone();
            }
            summand += 1;
        }
        generator_classes.push(coords);
    }

    // primary decomposition: per invariant factor, per prime power, the
    // cofactor class generates the p-primary piece of that summand
    let mut components = Vec::new();
    let mut resolved = true;
    for (idx, f) in invariant_factors.iter().enumerate() {
        let fac: Factorisation =
            factor_over_rationals(f).expect("invariant factors are nonzero");
        if !fac.is_resolved() {
            resolved = false;
        }
        for (p, mult) in &fac.factors {
            let mut power = Poly::one();
            for _ in 0..*mult {
                power = power * p.body().clone();
            }
            let cofactor = factor_polys[idx].divrem(&power).0;
            let mut generator = vec![Rat::zero(); dim];
            for (k, c) in cofactor.coeffs().iter().enumerate() {
                generator[offsets[idx] + k] = c.clone();
            }
            components.push(PrimaryComponent {
                prime: p.clone(),
                multiplicity: *mult,
                generator,
                summand: idx,
            });
        }
    }

    let alexander = alexander_polynomial(v);
    debug_assert_eq!(dim, alexander.span().unwrap_or(0));

    RationalAlexanderModule {
        seifert: v.clone(),
        q_dimension: dim,
        invariant_factors,
        factor_polys,
        offsets,
        t_action,
        generator_classes,
        class_lifts,
        primary: PrimaryDecomposition {
            components,
            resolved,
        },
        alexander,
    }
}

impl RationalAlexanderModule {
    pub fn seifert(&self) -> &SeifertMatrix {
        &self.seifert
    }

    /// The module is cyclic iff a single nonunit invariant factor remains,
    /// i.e. minimal polynomial = characteristic polynomial of the t-action.
    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    pub fn basis_labels(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (idx, f) in self.factor_polys.iter().enumerate() {
            for k in 0..f.degree().unwrap() {
                out.push(format!("s{idx}·t^{k}"));
            }
        }
        out
    }

    /// Lifts a coordinate vector back to Q[t^{±1}]-combinations of the
    /// presentation generators e_1..e_2g.
    pub fn lift_to_generators(&self, x: &[Rat]) -> Vec<LaurentPoly> {
        assert_eq!(x.len(), self.q_dimension);
        let n = self.seifert.size();
        let mut out = vec![LaurentPoly::zero(); n];
        for (idx, f) in self.factor_polys.iter().enumerate() {
            let o = self.offsets[idx];
            let d = f.degree().unwrap();
            let p = LaurentPoly::from_poly(Poly::new(x[o..o + d].to_vec()));
            if p.is_zero() {
                continue;
            }
            for (a, lift) in self.class_lifts[idx].iter().enumerate() {
                out[a] = out[a].clone() + p.clone() * lift.clone();
            }
        }
        out
    }

    /// Applies the t-action to a coordinate vector.
    pub fn t_apply(&self, x: &[Rat]) -> Vec<Rat> {
        self.t_action.mul_vec(x)
    }

    /// The smallest t-invariant subspace containing x.
    pub fn cyclic_span(&self, x: &[Rat]) -> Submodule {
        let mut vecs = vec![x.to_vec()];
        loop {
            let next = self.t_apply(vecs.last().unwrap());
            let sub = Submodule::from_spanning(vecs.clone(), self.q_dimension);
            if sub.contains(&next) {
                return sub;
            }
            vecs.push(next);
        }
    }

    pub fn whole(&self) -> Submodule {
        let id: Mat<Rat> = Mat::identity(self.q_dimension);
        Submodule::from_spanning((0..self.q_dimension).map(|i| id.row(i)).collect(), self.q_dimension)
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule::from_spanning(Vec::new(), self.q_dimension)
    }
}

/// A t-invariant Q-subspace in module coordinates, stored as a canonical
/// reduced-echelon basis so equality is plain data comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct Submodule {
    pub basis: Vec<Vec<Rat>>,
    pub ambient: usize,
    /// Cyclic generator, when the submodule was produced from a divisor.
    pub generator: Option<Vec<Rat>>,
}

impl Submodule {
    pub fn from_spanning(vecs: Vec<Vec<Rat>>, ambient: usize) -> Self {
        if vecs.is_empty() {
            return Submodule {
                basis: Vec::new(),
                ambient,
                generator: None,
            };
        }
        let m = Mat::from_rows(vecs);
        let (r, pivots) = rref(&m);
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Submodule {
            basis,
            ambient,
            generator: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.ambient);
        let mut v = x.to_vec();
        for b in &self.basis {
            let lead = b.iter().position(|c| !c.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let f = v[lead].clone();
                for (vi, bi) in v.iter_mut().zip(b.iter()) {
                    *vi = vi.clone() - f.clone() * bi.clone();
                }
            }
        }
        v.iter().all(|c| c.is_zero())
    }

    pub fn same_space(&self, other: &Submodule) -> bool {
        self.basis == other.basis
    }
}

/// The Blanchfield form on the presentation generators: the canonical
/// classes of (t-1)(tV - V^T)^{-1} in Q(t)/Q[t^{±1}]. Hermitian by
/// construction; verified when built.
#[derive(Clone, Debug, PartialEq)]
pub struct BlanchfieldPairing {
    pub gram: Mat<RfClass>,
    /// Common denominator bound for all pairing values: the monic form of Δ.
    pub denominator: Poly,
}

pub fn blanchfield_gram(v: &SeifertMatrix) -> Result<BlanchfieldPairing, Error> {
    let n = v.size();
    let denominator = if n == 0 {
        Poly::one()
    } else {
        alexander_polynomial(v).monic_normal().body().clone()
    };
    let inv = invert_over_fraction_field(&v.presentation())?;
    let t_minus_1 = LaurentPoly::from_int_coeffs(&[-1, 1]);
    let gram = Mat::from_fn(n, n, |i, j| {
        let rf = inv[(i, j)].clone();
        let c = RfClass::from_parts(
            LaurentPoly::from_poly(rf.num().clone()) * t_minus_1.clone(),
            LaurentPoly::from_poly(rf.den().clone()),
        );
        c
    });
    for i in 0..n {
        for j in 0..n {
            assert_eq!(
                gram[(i, j)],
                gram[(j, i)].conj(),
                "Blanchfield gram failed the Hermitian check"
            );
        }
    }
    Ok(BlanchfieldPairing { gram, denominator })
}

/// Sesquilinear extension of the gram to module elements:
/// Bl(p·x, y) = conj(p)·Bl(x, y) and Bl(x, p·y) = p·Bl(x, y). With the
/// gram read off (t-1)(tV - V^T)^{-1} by row index = first argument,
/// this is the unique conjugation side for which both slots kill the
/// relation columns, so the pairing descends to the cokernel.
pub fn bl_pair(
    module: &RationalAlexanderModule,
    pairing: &BlanchfieldPairing,
    x: &[Rat],
    y: &[Rat],
) -> Result<RfClass, Error> {
    if x.len() != module.q_dimension || y.len() != module.q_dimension {
        return Err(Error::DimensionMismatch);
    }
    let w = module.lift_to_generators(x);
    let z = module.lift_to_generators(y);
    let mut acc = RfClass::zero();
    for (a, wa) in w.iter().enumerate() {
        if wa.is_zero() {
            continue;
        }
        for (b, zb) in z.iter().enumerate() {
            if zb.is_zero() {
                continue;
            }
            let g = &pairing.gram[(a, b)];
            if g.is_zero() {
                continue;
            }
            acc = acc.add(&g.mul_laurent(&(wa.conj() * zb.clone())));
        }
    }
    Ok(acc)
}

impl RationalAlexanderModule {
    /// All t-invariant submodules, one per monic divisor of the single
    /// invariant factor. Requires a cyclic module with fully resolved
    /// factorisation; otherwise the lattice may be infinite or unknown.
    pub fn submodules(&self) -> Result<Vec<Submodule>, Error> {
        if self.q_dimension == 0 {
            return Ok(vec![self.zero_submodule()]);
        }
        if !self.is_cyclic() {
            return Err(Error::NonCyclicModule);
        }
        if !self.primary.resolved {
            return Err(Error::UnresolvedFactorisation);
        }
        let f = &self.factor_polys[0];
        let deg_f = f.degree().unwrap();
        let primes: Vec<(Poly, u32)> = self
            .primary
            .components
            .iter()
            .map(|c| (c.prime.body().clone(), c.multiplicity))
            .collect();
        // all exponent tuples
        let mut divisors = vec![Poly::one()];
        for (p, e) in &primes {
            let mut next = Vec::new();
            for d in &divisors {
                let mut acc = d.clone();
                next.push(acc.clone());
                for _ in 0..*e {
                    acc = acc * p.clone();
                    next.push(acc.clone());
                }
            }
            divisors = next;
        }
        divisors.sort_by_key(|d| d.degree().unwrap_or(0));
        let mut out = Vec::new();
        for d in divisors {
            let deg_d = d.degree().unwrap();
            let mut vecs = Vec::new();
            for k in 0..deg_f.saturating_sub(deg_d) {
                let elt = LaurentPoly::from_poly(d.clone() * Poly::monomial(Rat::one(), k));
                let reduced = laurent_mod(&elt, f);
                let mut coords = vec![Rat::zero(); deg_f];
                for (i, c) in reduced.coeffs().iter().enumerate() {
                    coords[i] = c.clone();
                }
                vecs.push(coords);
            }
            let mut sub = Submodule::from_spanning(vecs, deg_f);
            let mut gen = vec![Rat::zero(); deg_f];
            if deg_d < deg_f {
                for (i, c) in d.coeffs().iter().enumerate() {
                    gen[i] = c.clone();
                }
            }
            sub.generator = Some(gen);
            out.push(sub);
        }
        Ok(out)
    }

    /// P^⊥ = {x : Bl(x, p) = 0 for all p in P}, as an exact nullspace over Q.
    pub fn orthogonal_complement(
        &self,
        pairing: &BlanchfieldPairing,
        p: &Submodule,
    ) -> Result<Submodule, Error> {
        let dim = self.q_dimension;
        if dim == 0 || p.dim() == 0 {
            return Ok(self.whole());
        }
        let big = &pairing.denominator;
        let deg_big = big.degree().unwrap_or(0);
        let basis: Vec<Vec<Rat>> = {
            let id: Mat<Rat> = Mat::identity(dim);
            (0..dim).map(|i| id.row(i)).collect()
        };
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for pv in &p.basis {
            // numerators of Bl(b_k, p) over the common denominator
            let mut numerators = Vec::with_capacity(dim);
            for b in &basis {
                let cls = bl_pair(self, pairing, b, pv)?;
                let num = cls
                    .numerator_mod(big)
                    .expect("pairing denominators divide Δ");
                numerators.push(num);
            }
            for c in 0..deg_big {
                rows.push(numerators.iter().map(|n| n.coeff(c)).collect());
            }
        }
        let m = Mat::from_rows(rows);
        let null = field_nullspace(&m);
        let sub = Submodule::from_spanning(null, dim);
        debug_assert!(sub
            .basis
            .iter()
            .all(|b| sub.contains(&self.t_apply(b))));
        Ok(sub)
    }

    /// The radical {x : Bl(x, y) = 0 for all y}; zero certifies that the
    /// pairing is nonsingular.
    pub fn radical(&self, pairing: &BlanchfieldPairing) -> Result<Submodule, Error> {
        self.orthogonal_complement(pairing, &self.whole())
    }

    /// All submodules P with P = P^⊥.
    pub fn metabolisers(&self, pairing: &BlanchfieldPairing) -> Result<Vec<Submodule>, Error> {
        if self.q_dimension % 2 != 0 {
            return Ok(Vec::new());
        }
        let subs = self.submodules()?;
        let mut out = Vec::new();
        for p in subs {
            let perp = self.orthogonal_complement(pairing, &p)?;
            if p.same_space(&perp) {
                out.push(p);
            }
        }
        debug_assert!(out.iter().all(|p| p.dim() * 2 == self.q_dimension));
        Ok(out)
    }

    /// The unique metaboliser whose span contains x; errors when none or
    /// several contain it.
    pub fn unique_metaboliser_containing(
        &self,
        pairing: &BlanchfieldPairing,
        x: &[Rat],
    ) -> Result<Submodule, Error> {
        if x.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidParameter(
                "element must be nonzero".into(),
            ));
        }
        let hits: Vec<Submodule> = self
            .metabolisers(pairing)?
            .into_iter()
            .filter(|p| p.contains(x))
            .collect();
        match hits.len() {
            0 => Err(Error::NoMetaboliserContains),
            1 => Ok(hits.into_iter().next().unwrap()),
            _ => Err(Error::MetaboliserNotUnique),
        }
    }
}
