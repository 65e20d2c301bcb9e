//! End-to-end acceptance suite. Each test prints a single pass line once
//! its assertions have run; a failure panics before the line is printed.

use std::process::Command;
use std::time::Instant;

use num_traits::{One, Signed, Zero};

use sliceobs::alexmod::{blanchfield_gram, build_module};
use sliceobs::cover::{
    cover_homology, cover_order_resultant, cover_presentation, is_z2_homology_sphere, CoverOrder,
};
use sliceobs::error::Error;
use sliceobs::family::{distinctness_check, family_expected, family_seifert, ObstructionReport, Status};
use sliceobs::laurent::{int, LaurentPoly, Rat};
use sliceobs::linkform::{double_cover_deck, double_cover_linking_form, linking_metabolisers};
use sliceobs::seifert::{alexander_polynomial, classical_invariants, random_seifert};

fn family_members(ms: &[i64]) -> Vec<(i64, sliceobs::seifert::SeifertMatrix)> {
    ms.iter().map(|&m| (m, family_seifert(m).unwrap())).collect()
}

#[test]
fn criterion_01_alexander_closed_form() {
    for m in 1..=20i64 {
        let v = family_seifert(m).unwrap();
        let computed = alexander_polynomial(&v).unit_normal();
        let expected = family_expected(m as u64, 1).delta;
        assert_eq!(computed, expected, "m = {m}");
    }
    println!("criterion 1 (Alexander closed form for m = 1..20): pass");
}

#[test]
fn criterion_02_distinctness() {
    let ms: Vec<i64> = (1..=20).collect();
    assert!(distinctness_check(&ms).unwrap());
    println!("criterion 2 (Alexander polynomials pairwise distinct for m = 1..20): pass");
}

#[test]
fn criterion_03_module_decomposition() {
    for (m, v) in family_members(&[1, 3, 5, 7, 9]) {
        let module = build_module(&v);
        assert_eq!(module.q_dimension, 2, "m = {m}");
        let mut primes: Vec<LaurentPoly> = module
            .primary
            .components
            .iter()
            .map(|c| c.prime.monic_normal())
            .collect();
        primes.sort_by_key(|p| p.to_string());
        let mut expected = vec![
            // mt - (m+1) and (m+1)t - m, made monic
            LaurentPoly::from_terms(vec![(1, Rat::one()), (0, -sliceobs::laurent::rat(m + 1, m))]),
            LaurentPoly::from_terms(vec![(1, Rat::one()), (0, -sliceobs::laurent::rat(m, m + 1))]),
        ];
        expected.sort_by_key(|p| p.to_string());
        assert_eq!(primes, expected, "m = {m}");
    }
    println!("criterion 3 (module decomposition Q ⊕ Q with the stated factors): pass");
}

#[test]
fn criterion_04_metaboliser_classification() {
    for (m, v) in family_members(&[1, 3, 5, 7, 9]) {
        let module = build_module(&v);
        let pairing = blanchfield_gram(&v).unwrap();
        assert_eq!(module.radical(&pairing).unwrap().dim(), 0, "m = {m}");

        // α_i = generator of the i-th primary piece; α_1 is the one
        // annihilated by mt - (m+1), i.e. prime t - (m+1)/m
        let target = LaurentPoly::from_terms(vec![
            (1, Rat::one()),
            (0, -sliceobs::laurent::rat(m + 1, m)),
        ]);
        let comp1 = module
            .primary
            .components
            .iter()
            .find(|c| c.prime.monic_normal() == target)
            .unwrap();
        let comp2 = module
            .primary
            .components
            .iter()
            .find(|c| c.prime.monic_normal() != target)
            .unwrap();
        let alpha1 = comp1.generator.clone();
        let alpha2 = comp2.generator.clone();
        let span1 = module.cyclic_span(&alpha1);
        let span2 = module.cyclic_span(&alpha2);

        let mets = module.metabolisers(&pairing).unwrap();
        assert_eq!(mets.len(), 2, "m = {m}");
        assert!(mets.iter().any(|p| p.same_space(&span1)), "m = {m}");
        assert!(mets.iter().any(|p| p.same_space(&span2)), "m = {m}");

        let unique = module
            .unique_metaboliser_containing(&pairing, &alpha1)
            .unwrap();
        assert!(unique.same_space(&span1), "m = {m}");

        let sum: Vec<Rat> = alpha1
            .iter()
            .zip(&alpha2)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        assert!(
            matches!(
                module.unique_metaboliser_containing(&pairing, &sum),
                Err(Error::NoMetaboliserContains)
            ),
            "m = {m}"
        );
    }
    println!("criterion 4 (metabolisers exactly {{⟨α_1⟩, ⟨α_2⟩}} with unique containment): pass");
}

#[test]
fn criterion_05_branched_covers() {
    for (m, v) in family_members(&[1, 3, 5]) {
        for r in [2usize, 3, 5, 7, 11, 13] {
            let expected = family_expected(m as u64, r as u32);
            let cover = cover_presentation(&v, r).unwrap();
            assert_eq!(cover.group, expected.cover_group, "m = {m}, r = {r}");
            let x1 = cover.lifted_generator(1).unwrap();
            let x2 = cover.lifted_generator(2).unwrap();
            assert_eq!(cover.element_order(&x1), expected.n_r, "m = {m}, r = {r}");
            assert_eq!(cover.element_order(&x2), expected.n_r, "m = {m}, r = {r}");
            for x in [&x1, &x2] {
                let img = cover.deck_image(x).unwrap();
                assert!(
                    cover.subgroup_contains(std::slice::from_ref(x), &img),
                    "m = {m}, r = {r}: deck image left the cyclic subgroup"
                );
            }
            assert!(cover.group.has_odd_order(), "m = {m}, r = {r}");
        }
    }
    println!("criterion 5 (branched covers (Z/N_r)² with deck-invariant generator lifts): pass");
}

#[test]
fn criterion_06_order_oracle() {
    let mut checked = 0;
    for genus in 1..=3usize {
        for seed in 0..34u64 {
            let v = random_seifert(genus, 5, seed ^ (genus as u64) << 32);
            for r in 2..=7usize {
                let group = cover_homology(&v, r).unwrap();
                let oracle = cover_order_resultant(&v, r).unwrap();
                match oracle {
                    CoverOrder::Finite(n) => {
                        assert_eq!(group.order(), Some(n), "genus {genus} seed {seed} r {r}")
                    }
                    CoverOrder::Infinite => {
                        assert!(group.free_rank > 0, "genus {genus} seed {seed} r {r}")
                    }
                }
            }
            checked += 1;
        }
    }
    assert!(checked >= 100);

    let trefoil =
        sliceobs::seifert::SeifertMatrix::from_int_rows(&[&[-1, 1], &[0, -1]]).unwrap();
    assert_eq!(cover_order_resultant(&trefoil, 6).unwrap(), CoverOrder::Infinite);
    assert!(cover_homology(&trefoil, 6).unwrap().free_rank > 0);
    assert_eq!(
        cover_homology(&trefoil, 3).unwrap().order(),
        Some(int(4))
    );
    assert!(!is_z2_homology_sphere(&trefoil, 3).unwrap());
    println!("criterion 6 (cover order matches the resultant oracle on {checked} random knots): pass");
}

#[test]
fn criterion_07_polynomial_properties() {
    let mut checked = 0;
    for genus in 1..=3usize {
        for seed in 0..170u64 {
            let v = random_seifert(genus, 4, seed.wrapping_mul(2654435761) + genus as u64);
            let delta = alexander_polynomial(&v);
            assert_eq!(delta.unit_normal(), delta.conj().unit_normal(), "symmetry");
            assert!(delta.eval(&Rat::one()).abs().is_one(), "Δ(1) = ±1");
            let inv = classical_invariants(&v);
            let at_minus_one = delta.eval(&-Rat::one());
            assert!(at_minus_one.is_integer());
            assert_eq!(
                inv.determinant,
                at_minus_one.numer().abs(),
                "determinant = |Δ(-1)|"
            );
            checked += 1;
        }
    }
    assert!(checked >= 500);
    println!("criterion 7 (Δ symmetry, Δ(1) = ±1, |Δ(-1)| = determinant on {checked} random knots): pass");
}

#[test]
fn criterion_08_blanchfield_properties() {
    let mut checked = 0;
    let mut enumerable = 0;
    for genus in 1..=3usize {
        for seed in 0..34u64 {
            let v = random_seifert(genus, 3, seed.wrapping_add((genus as u64) * 1000));
            // the constructor asserts the Hermitian property
            let pairing = blanchfield_gram(&v).unwrap();
            let module = build_module(&v);
            if let Ok(subs) = module.submodules() {
                enumerable += 1;
                for p in subs {
                    let perp = module.orthogonal_complement(&pairing, &p).unwrap();
                    assert_eq!(p.dim() + perp.dim(), module.q_dimension);
                    let back = module.orthogonal_complement(&pairing, &perp).unwrap();
                    assert!(back.same_space(&p));
                }
            }
            checked += 1;
        }
    }
    assert!(checked >= 100);
    assert!(enumerable > 0, "the sample must include enumerable modules");
    println!(
        "criterion 8 (Hermitian gram on {checked} random knots; complement involution on {enumerable} enumerable modules): pass"
    );
}

#[test]
fn criterion_09_double_cover_linking_form() {
    for (m, v) in family_members(&[1, 3, 5]) {
        let n = 2 * m + 1; // N_2 = (m+1)² - m²
        let form = double_cover_linking_form(&v).unwrap();
        assert_eq!(
            form.group.invariant_factors,
            vec![int(n), int(n)],
            "m = {m}"
        );
        let deck = double_cover_deck(&form);
        let mets = linking_metabolisers(&form, Some(&deck)).unwrap();
        assert_eq!(mets.len(), 2, "m = {m}");
        let x1 = form.generator_class(1);
        let x2 = form.generator_class(2);
        assert!(mets.iter().any(|p| p.contains(&x1)), "m = {m}");
        assert!(mets.iter().any(|p| p.contains(&x2)), "m = {m}");

        // independent brute force over all n + 1 lines of (Z/n)²
        let lines: Vec<Vec<(sliceobs::laurent::Int, sliceobs::laurent::Int)>> = {
            let mut gens = vec![(int(1), int(0))];
            for k in 0..n {
                gens.push((int(k), int(1)));
            }
            gens.iter()
                .map(|(a, b)| {
                    (0..n)
                        .map(|c| ((int(c) * a) % int(n), (int(c) * b) % int(n)))
                        .collect()
                })
                .collect()
        };
        assert_eq!(lines.len() as i64, n + 1);
        let self_annihilating: Vec<_> = lines
            .iter()
            .filter(|line| {
                line.iter().all(|(a, b)| {
                    line.iter().all(|(c, d)| {
                        form.pair(
                            &[a.clone(), b.clone()],
                            &[c.clone(), d.clone()],
                        )
                        .is_zero()
                    })
                })
            })
            .collect();
        assert_eq!(self_annihilating.len(), 2, "m = {m}");
        for line in self_annihilating {
            let mut elems: Vec<Vec<sliceobs::laurent::Int>> =
                line.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect();
            elems.sort();
            assert!(
                mets.iter().any(|p| {
                    let mut q = p.elements.clone();
                    q.sort();
                    q == elems
                }),
                "m = {m}: brute-force line missing from the enumerated metabolisers"
            );
        }
    }
    println!("criterion 9 (double-cover linking form has exactly the two lines ⟨x_1⟩, ⟨x_2⟩): pass");
}

#[test]
fn criterion_10_end_to_end_report() {
    let exe = env!("CARGO_BIN_EXE_sliceobs");
    let run = || {
        Command::new(exe)
            .args(["report", "--m", "1", "--r", "2,3,5,7,11,13", "--format", "machine"])
            .output()
            .expect("binary runs")
    };
    let start = Instant::now();
    let first = run();
    let elapsed = start.elapsed();
    assert!(first.status.success(), "exit status: {:?}", first.status);
    assert!(
        elapsed.as_secs() < 10,
        "report took {elapsed:?}, budget is 10 s"
    );
    let second = run();
    assert_eq!(first.stdout, second.stdout, "output must be byte-identical");

    let report: ObstructionReport =
        serde_json::from_slice(&first.stdout).expect("machine output parses");
    assert!(report.all_verified());
    let computational = report
        .checks
        .iter()
        .chain(report.covers.iter().flat_map(|c| c.steps.iter()))
        .count();
    assert!(computational >= 3 + 6 * 4);
    assert_eq!(report.external_assumptions.len(), 4);
    assert!(report
        .external_assumptions
        .iter()
        .all(|s| s.status == Status::ExternalAssumption));
    println!("criterion 10 (end-to-end report verified, deterministic, 4 external assumptions): pass");
}

#[test]
fn criterion_11_slice_sanity() {
    for m in 1..=20i64 {
        let v = family_seifert(m).unwrap();
        let inv = classical_invariants(&v);
        assert_eq!(inv.signature, 0, "m = {m}");
        assert_eq!(inv.determinant, int((2 * m + 1) * (2 * m + 1)), "m = {m}");
        let root = inv.determinant.sqrt();
        assert_eq!(&root * &root, inv.determinant, "perfect square");
    }
    println!("criterion 11 (signature 0 and square determinant (2m+1)² for m = 1..20): pass");
}
