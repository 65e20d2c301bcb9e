//! The linking form of the double branched cover, presented by
//! (V + V^T)^{-1} mod 1, and brute-force metaboliser search on finite
//! linking forms.

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::group::AbelianGroup;
use crate::laurent::{Int, Rat};
use crate::matrix::{det_int, field_inverse, Mat};
use crate::seifert::SeifertMatrix;
use crate::snf::smith;

const BRUTE_FORCE_BOUND: u64 = 1_000_000;

fn mod1(r: &Rat) -> Rat {
    r - r.floor()
}

/// A finite symmetric Q/Z-valued pairing on the cokernel generators of
/// the symmetrised Seifert matrix.
#[derive(Clone, Debug)]
pub struct LinkingForm {
    pub group: AbelianGroup,
    /// gram(i, j) = λ(g_i, g_j) reduced into [0, 1).
    pub gram: Mat<Rat>,
    moduli: Vec<Int>,
    u: Mat<Int>,
    coords: Vec<usize>,
}

pub fn double_cover_linking_form(v: &SeifertMatrix) -> Result<LinkingForm, Error> {
    let s = v.symmetrised();
    let n = s.rows();
    if n > 0 && det_int(&s).is_zero() {
        return Err(Error::DegenerateDoubleCover);
    }
    let snf = smith(&s);
    let diag = snf.diagonal();
    let group = AbelianGroup::from_smith_diagonal(&diag, n);
    let mut coords = Vec::new();
    let mut moduli = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if !d.abs().is_one() {
            coords.push(i);
            moduli.push(d.abs());
        }
    }
    let inv = if n == 0 {
        Mat::zeros(0, 0)
    } else {
        field_inverse(&s.map(|x| Rat::from_integer(x.clone())))
            .expect("nonzero determinant")
    };
    let k = coords.len();
    let gram = Mat::from_fn(k, k, |a, b| {
        let ga = snf.u_inv.col(coords[a]);
        let gb = snf.u_inv.col(coords[b]);
        let mut acc = Rat::zero();
        for i in 0..n {
            for j in 0..n {
                acc = acc
                    + Rat::from_integer(ga[i].clone())
                        * inv[(i, j)].clone()
                        * Rat::from_integer(gb[j].clone());
            }
        }
        mod1(&acc)
    });
    for a in 0..k {
        for b in 0..k {
            debug_assert_eq!(gram[(a, b)], gram[(b, a)]);
            debug_assert!(
                (gram[(a, b)].clone() * Rat::from_integer(moduli[a].clone())).is_integer(),
                "linking values must have denominators dividing the coordinate order"
            );
        }
    }
    Ok(LinkingForm {
        group,
        gram,
        moduli,
        u: snf.u,
        coords,
    })
}

impl LinkingForm {
    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    /// Class of the i-th surface generator (1-based) in form coordinates.
    pub fn generator_class(&self, i: usize) -> Vec<Int> {
        let col = self.u.col(i - 1);
        self.coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, d)| col[c].mod_floor(d))
            .collect()
    }

    /// λ(x, y) mod 1 for coordinate vectors.
    pub fn pair(&self, x: &[Int], y: &[Int]) -> Rat {
        let mut acc = Rat::zero();
        for (a, xa) in x.iter().enumerate() {
            for (b, yb) in y.iter().enumerate() {
                acc = acc
                    + Rat::from_integer(xa.clone())
                        * self.gram[(a, b)].clone()
                        * Rat::from_integer(yb.clone());
            }
        }
        mod1(&acc)
    }
}

/// A subgroup of the linking-form group, listed in full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingSubgroup {
    pub elements: Vec<Vec<Int>>,
    pub order: u64,
    /// Filled when a deck action was supplied to the search.
    pub deck_invariant: Option<bool>,
}

impl LinkingSubgroup {
    pub fn contains(&self, x: &[Int]) -> bool {
        self.elements.iter().any(|e| e == x)
    }
}

type Elem = Vec<i64>;

fn closure(moduli: &[i64], seed: &BTreeSet<Elem>) -> BTreeSet<Elem> {
    let mut set = seed.clone();
    let mut queue: VecDeque<Elem> = set.iter().cloned().collect();
    while let Some(a) = queue.pop_front() {
        for b in set.clone() {
            let sum: Elem = a
                .iter()
                .zip(&b)
                .zip(moduli)
                .map(|((x, y), d)| (x + y).rem_euclid(*d))
                .collect();
            if set.insert(sum.clone()) {
                queue.push_back(sum);
            }
        }
    }
    set
}

/// All metabolisers of a finite linking form: subgroups P of square-root
/// order with λ identically integral on P and P = P^⊥. Supplying a deck
/// action annotates each subgroup with its invariance.
pub fn linking_metabolisers(
    form: &LinkingForm,
    deck: Option<&Mat<Int>>,
) -> Result<Vec<LinkingSubgroup>, Error> {
    let order = form.group.order().expect("finite by construction");
    let order_u64: u64 = order
        .clone()
        .try_into()
        .map_err(|_| Error::BruteForceBound {
            order: order.to_string(),
            bound: BRUTE_FORCE_BOUND,
        })?;
    if order_u64 > BRUTE_FORCE_BOUND {
        return Err(Error::BruteForceBound {
            order: order.to_string(),
            bound: BRUTE_FORCE_BOUND,
        });
    }
    let root = order.sqrt();
    if &root * &root != order {
        return Ok(Vec::new());
    }
    let target: u64 = root.try_into().expect("bounded above");

    let moduli: Vec<i64> = form
        .moduli
        .iter()
        .map(|d| i64::try_from(d).expect("bounded order"))
        .collect();
    let k = moduli.len();
    let mut elements: Vec<Elem> = vec![vec![0; k]];
    for (i, &d) in moduli.iter().enumerate() {
        let mut next = Vec::new();
        for e in &elements {
            for c in 0..d {
                let mut e2 = e.clone();
                e2[i] = c;
                next.push(e2);
            }
        }
        elements = next;
    }

    let pair = |a: &Elem, b: &Elem| -> Rat {
        let ai: Vec<Int> = a.iter().map(|&c| Int::from(c)).collect();
        let bi: Vec<Int> = b.iter().map(|&c| Int::from(c)).collect();
        form.pair(&ai, &bi)
    };

    // full subgroup lattice by closure search
    let zero: Elem = vec![0; k];
    let trivial: BTreeSet<Elem> = [zero].into_iter().collect();
    let mut lattice: BTreeSet<BTreeSet<Elem>> = [trivial.clone()].into_iter().collect();
    let mut queue: VecDeque<BTreeSet<Elem>> = lattice.iter().cloned().collect();
    while let Some(h) = queue.pop_front() {
        for g in &elements {
            if h.contains(g) {
                continue;
            }
            let mut seed = h.clone();
            seed.insert(g.clone());
            let bigger = closure(&moduli, &seed);
            if lattice.insert(bigger.clone()) {
                queue.push_back(bigger);
            }
        }
    }

    let mut out = Vec::new();
    for h in &lattice {
        if h.len() as u64 != target {
            continue;
        }
        if !h
            .iter()
            .all(|a| h.iter().all(|b| pair(a, b).is_zero()))
        {
            continue;
        }
        // independent re-check that P = P^⊥, not just P ⊆ P^⊥
        let perp: Vec<&Elem> = elements
            .iter()
            .filter(|x| h.iter().all(|p| pair(x, p).is_zero()))
            .collect();
        if perp.len() != h.len() {
            continue;
        }
        let deck_invariant = deck.map(|d| {
            h.iter().all(|e| {
                let ei: Vec<Int> = e.iter().map(|&c| Int::from(c)).collect();
                let img = d.mul_vec(&ei);
                let img: Elem = img
                    .iter()
                    .zip(&moduli)
                    .map(|(c, &m)| i64::try_from(c.mod_floor(&Int::from(m))).unwrap())
                    .collect();
                h.contains(&img)
            })
        });
        out.push(LinkingSubgroup {
            elements: h.iter().map(|e| e.iter().map(|&c| Int::from(c)).collect()).collect(),
            order: h.len() as u64,
            deck_invariant,
        });
    }
    Ok(out)
}

/// The deck involution of the double cover acts on its homology by
/// negation; returned in form coordinates for `linking_metabolisers`.
pub fn double_cover_deck(form: &LinkingForm) -> Mat<Int> {
    let k = form.moduli.len();
    Mat::from_fn(k, k, |i, j| if i == j { -Int::one() } else { Int::zero() })
}
