//! Homology of cyclic branched covers: the integer cokernel of
//! P⊗V - I⊗V^T, deck actions, generator lifts, and subgroup checks.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::group::AbelianGroup;
use crate::laurent::{Int, LaurentPoly, Poly, Rat};
use crate::linkform::double_cover_linking_form;
use crate::matrix::Mat;
use crate::seifert::{alexander_polynomial, SeifertMatrix};
use crate::snf::{smith, Snf};

/// The r-fold cover presentation. Basis element e_i ⊗ t^k sits at index
/// k·2g + i, so the t^0 block comes first; the deck transformation is
/// multiplication by t, realised as P ⊗ I.
#[derive(Clone, Debug)]
pub struct CoverPresentation {
    seifert: SeifertMatrix,
    pub r: usize,
    pub presentation: Mat<Int>,
    pub deck: Mat<Int>,
    pub group: AbelianGroup,
    snf: Snf<Int>,
    /// Deck transformation in SNF coordinates: U · deck · U^{-1}.
    deck_snf: Mat<Int>,
    /// Indices of SNF coordinates with invariant factor ≠ 1, in order.
    coords: Vec<usize>,
    /// The invariant factor at each retained coordinate (0 means free).
    moduli: Vec<Int>,
}

/// An element of the cover homology in the retained SNF coordinates,
/// reduced modulo the per-coordinate invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverElement {
    pub coords: Vec<Int>,
}

/// The r×r matrix of the cycle sending sheet k to sheet k+1.
fn cyclic_permutation(r: usize) -> Mat<Int> {
    Mat::from_fn(r, r, |i, j| {
        if i == (j + 1) % r {
            Int::one()
        } else {
            Int::zero()
        }
    })
}

pub fn cover_presentation(v: &SeifertMatrix, r: usize) -> Result<CoverPresentation, Error> {
    if r < 1 {
        return Err(Error::InvalidParameter("cover degree must be >= 1".into()));
    }
    let n = v.size();
    let p = cyclic_permutation(r);
    let id_r: Mat<Int> = Mat::identity(r);
    let id_n: Mat<Int> = Mat::identity(n);
    let presentation = p.kron(v.matrix()).sub(&id_r.kron(&v.matrix().transpose()));
    let deck = p.kron(&id_n);
    debug_assert_eq!(deck.mul(&presentation), presentation.mul(&deck));
    let snf = smith(&presentation);
    let diag = snf.diagonal();
    let group = AbelianGroup::from_smith_diagonal(&diag, n * r);
    let mut coords = Vec::new();
    let mut moduli = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if !d.is_one() {
            coords.push(i);
            moduli.push(d.abs());
        }
    }
    let deck_snf = snf.u.mul(&deck).mul(&snf.u_inv);
    Ok(CoverPresentation {
        seifert: v.clone(),
        r,
        presentation,
        deck,
        group,
        snf,
        deck_snf,
        coords,
        moduli,
    })
}

pub fn cover_homology(v: &SeifertMatrix, r: usize) -> Result<AbelianGroup, Error> {
    Ok(cover_presentation(v, r)?.group.clone())
}

/// Order of the cover homology computed independently of any Smith
/// reduction, as |Res(Δ(t), 1 + t + ... + t^{r-1})|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverOrder {
    Finite(Int),
    Infinite,
}

pub fn cover_order_resultant(v: &SeifertMatrix, r: usize) -> Result<CoverOrder, Error> {
    if r < 1 {
        return Err(Error::InvalidParameter("cover degree must be >= 1".into()));
    }
    if r == 1 {
        return Ok(CoverOrder::Finite(Int::one()));
    }
    let delta = alexander_polynomial(v);
    let q = LaurentPoly::from_poly(Poly::new(vec![Rat::one(); r]));
    let res = crate::laurent::resultant(&delta, &q)?;
    if res.is_zero() {
        Ok(CoverOrder::Infinite)
    } else {
        Ok(CoverOrder::Finite(res.abs()))
    }
}

impl CoverPresentation {
    pub fn seifert(&self) -> &SeifertMatrix {
        &self.seifert
    }

    pub fn is_finite(&self) -> bool {
        self.group.is_finite()
    }

    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    fn require_finite(&self) -> Result<(), Error> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::InfiniteCoverHomology)
        }
    }

    fn reduce(&self, full: &[Int]) -> CoverElement {
        let coords = self
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(&i, d)| full[i].mod_floor(d))
            .collect();
        CoverElement { coords }
    }

    pub fn zero_element(&self) -> CoverElement {
        CoverElement {
            coords: vec![Int::zero(); self.coords.len()],
        }
    }

    /// The class of e_i ⊗ t^0 (i is 1-based) in SNF coordinates.
    pub fn lifted_generator(&self, i: usize) -> Result<CoverElement, Error> {
        self.require_finite()?;
        let n = self.seifert.size();
        if i < 1 || i > n {
            return Err(Error::InvalidParameter(format!(
                "generator index {i} out of range 1..={n}"
            )));
        }
        Ok(self.reduce(&self.snf.u.col(i - 1)))
    }

    pub fn scale_element(&self, c: &Int, x: &CoverElement) -> CoverElement {
        let coords = x
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(a, d)| (a * c).mod_floor(d))
            .collect();
        CoverElement { coords }
    }

    pub fn add_elements(&self, x: &CoverElement, y: &CoverElement) -> CoverElement {
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&self.moduli)
            .map(|((a, b), d)| (a + b).mod_floor(d))
            .collect();
        CoverElement { coords }
    }

    pub fn element_order(&self, x: &CoverElement) -> Int {
        let mut ord = Int::one();
        for (c, d) in x.coords.iter().zip(&self.moduli) {
            let g = c.gcd(d);
            ord = ord.lcm(&(d / g));
        }
        ord
    }

    pub fn deck_image(&self, x: &CoverElement) -> Result<CoverElement, Error> {
        self.require_finite()?;
        let n = self.presentation.rows();
        let mut full = vec![Int::zero(); n];
        for (&i, c) in self.coords.iter().zip(&x.coords) {
            full[i] = c.clone();
        }
        Ok(self.reduce(&self.deck_snf.mul_vec(&full)))
    }

    /// Order of the subgroup generated by the given elements:
    /// |G| divided by the index of the lattice spanned by the generators
    /// together with the coordinate moduli.
    pub fn subgroup_order(&self, gens: &[CoverElement]) -> Int {
        let k = self.coords.len();
        let total: Int = self.moduli.iter().product();
        if k == 0 {
            return Int::one();
        }
        let m = self.augmented_lattice(gens);
        let s = smith(&m);
        let index: Int = s.diagonal().iter().map(|d| d.abs()).product();
        debug_assert!((&total % &index).is_zero());
        total / index
    }

    fn augmented_lattice(&self, gens: &[CoverElement]) -> Mat<Int> {
        let k = self.coords.len();
        Mat::from_fn(k, gens.len() + k, |i, j| {
            if j < gens.len() {
                gens[j].coords[i].clone()
            } else if j - gens.len() == i {
                self.moduli[i].clone()
            } else {
                Int::zero()
            }
        })
    }

    /// Membership of x in the subgroup generated by gens, decided by
    /// lattice inclusion over the integers.
    pub fn subgroup_contains(&self, gens: &[CoverElement], x: &CoverElement) -> bool {
        let m = self.augmented_lattice(gens);
        lattice_contains(&m, &x.coords)
    }
}

/// Whether x lies in the column span of m over the integers.
pub fn lattice_contains(m: &Mat<Int>, x: &[Int]) -> bool {
    assert_eq!(m.rows(), x.len());
    if x.iter().all(|c| c.is_zero()) {
        return true;
    }
    let s = smith(m);
    let y = s.u.mul_vec(x);
    let diag = s.diagonal();
    for (i, yi) in y.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_else(Int::zero);
        if d.is_zero() {
            if !yi.is_zero() {
                return false;
            }
        } else if !(yi % &d).is_zero() {
            return false;
        }
    }
    true
}

pub fn is_z2_homology_sphere(v: &SeifertMatrix, r: usize) -> Result<bool, Error> {
    Ok(cover_homology(v, r)?.has_odd_order())
}

/// Necessary-condition report for a candidate kernel subgroup of the
/// cover homology, generated by the listed t^0-block generators.
#[derive(Clone, Debug)]
pub struct SubgroupReport {
    pub r: usize,
    pub order: Int,
    pub group_order: Int,
    pub square_order: bool,
    pub deck_invariant: bool,
    /// Only decided at r = 2, via the double-cover linking form.
    pub self_annihilating: Option<bool>,
    pub note: &'static str,
}

impl SubgroupReport {
    pub fn passes(&self) -> bool {
        self.square_order && self.deck_invariant && self.self_annihilating.unwrap_or(true)
    }
}

pub fn invariant_subgroup_check(
    v: &SeifertMatrix,
    r: usize,
    generator_indices: &[usize],
) -> Result<SubgroupReport, Error> {
    let cover = cover_presentation(v, r)?;
    cover.require_finite()?;
    let gens: Vec<CoverElement> = generator_indices
        .iter()
        .map(|&i| cover.lifted_generator(i))
        .collect::<Result<_, _>>()?;
    let order = cover.subgroup_order(&gens);
    let group_order = cover.group.order().expect("finite by check above");
    let square_order = &order * &order == group_order;
    let deck_invariant = gens
        .iter()
        .map(|g| cover.deck_image(g))
        .collect::<Result<Vec<_>, _>>()?
        .iter()
        .all(|img| cover.subgroup_contains(&gens, img));
    let self_annihilating = if r == 2 {
        let form = double_cover_linking_form(v)?;
        let classes: Vec<Vec<Int>> = generator_indices
            .iter()
            .map(|&i| form.generator_class(i))
            .collect();
        Some(classes.iter().all(|a| {
            classes
                .iter()
                .all(|b| form.pair(a, b).is_integer())
        }))
    } else {
        None
    };
    Ok(SubgroupReport {
        r,
        order,
        group_order,
        square_order,
        deck_invariant,
        self_annihilating,
        note: "necessary conditions only; linking-form self-annihilation verified only at r = 2",
    })
}
