//! Text and machine (JSON) rendering for the CLI. Both formats carry the
//! same content; all ordering is fixed so repeated runs are byte-identical.

use serde_json::json;

use crate::alexmod::{BlanchfieldPairing, RationalAlexanderModule, Submodule};
use crate::cover::CoverPresentation;
use crate::family::{FamilyExpected, ObstructionReport, Status, Step};
use crate::laurent::LaurentPoly;
use crate::linkform::{LinkingForm, LinkingSubgroup};
use crate::seifert::ClassicalInvariants;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

pub fn render_alex(delta: &LaurentPoly, format: Format) -> String {
    match format {
        Format::Text => delta.to_string(),
        Format::Machine => json!({ "alexander": delta.to_string() }).to_string(),
    }
}

pub fn render_invariants(inv: &ClassicalInvariants, format: Format) -> String {
    match format {
        Format::Text => format!(
            "determinant: {}\nsignature: {}",
            inv.determinant, inv.signature
        ),
        Format::Machine => json!({
            "determinant": inv.determinant.to_string(),
            "signature": inv.signature,
        })
        .to_string(),
    }
}

pub fn render_module(module: &RationalAlexanderModule, format: Format) -> String {
    let factors: Vec<String> = module
        .invariant_factors
        .iter()
        .map(|f| f.to_string())
        .collect();
    let primary: Vec<String> = module
        .primary
        .components
        .iter()
        .map(|c| format!("({})^{}", c.prime, c.multiplicity))
        .collect();
    match format {
        Format::Text => {
            let mut out = format!("q_dimension: {}\n", module.q_dimension);
            out += &format!("invariant factors: [{}]\n", factors.join(", "));
            out += &format!("primary components: [{}]\n", primary.join(", "));
            out += &format!("cyclic: {}", module.is_cyclic());
            out
        }
        Format::Machine => json!({
            "q_dimension": module.q_dimension,
            "invariant_factors": factors,
            "primary_components": primary,
            "cyclic": module.is_cyclic(),
        })
        .to_string(),
    }
}

pub fn render_blanchfield(pairing: &BlanchfieldPairing, format: Format) -> String {
    let n = pairing.gram.rows();
    let rows: Vec<Vec<String>> = (0..n)
        .map(|i| (0..n).map(|j| pairing.gram[(i, j)].to_string()).collect())
        .collect();
    match format {
        Format::Text => {
            let mut out = String::from("Blanchfield pairing on e_1..e_n, values in Q(t)/Q[t^±1]:");
            for row in &rows {
                out += &format!("\n  [{}]", row.join(", "));
            }
            out
        }
        Format::Machine => json!({ "gram": rows }).to_string(),
    }
}

fn submodule_summary(p: &Submodule) -> String {
    let basis: Vec<String> = p
        .basis
        .iter()
        .map(|b| {
            let coords: Vec<String> = b.iter().map(|c| c.to_string()).collect();
            format!("({})", coords.join(", "))
        })
        .collect();
    format!("dim {} span {{{}}}", p.dim(), basis.join(", "))
}

pub fn render_metabolisers(mets: &[Submodule], format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("{} metaboliser(s)", mets.len());
            for (i, p) in mets.iter().enumerate() {
                out += &format!("\n  P_{}: {}", i + 1, submodule_summary(p));
            }
            out
        }
        Format::Machine => {
            let list: Vec<Vec<Vec<String>>> = mets
                .iter()
                .map(|p| {
                    p.basis
                        .iter()
                        .map(|b| b.iter().map(|c| c.to_string()).collect())
                        .collect()
                })
                .collect();
            json!({ "metabolisers": list }).to_string()
        }
    }
}

pub fn render_unique_metaboliser(p: &Submodule, format: Format) -> String {
    match format {
        Format::Text => format!("unique metaboliser: {}", submodule_summary(p)),
        Format::Machine => {
            let basis: Vec<Vec<String>> = p
                .basis
                .iter()
                .map(|b| b.iter().map(|c| c.to_string()).collect())
                .collect();
            json!({ "unique_metaboliser": basis }).to_string()
        }
    }
}

pub fn render_cover(covers: &[(usize, CoverPresentation)], format: Format) -> String {
    let mut text = String::new();
    let mut machine = Vec::new();
    for (idx, (r, cover)) in covers.iter().enumerate() {
        let n = cover.seifert().size();
        let mut orders = Vec::new();
        let mut decks = Vec::new();
        for i in 1..=n {
            let x = cover.lifted_generator(i).expect("finite cover");
            orders.push(cover.element_order(&x).to_string());
            let img = cover.deck_image(&x).expect("finite cover");
            let coords: Vec<String> = img.coords.iter().map(|c| c.to_string()).collect();
            decks.push(format!("({})", coords.join(", ")));
        }
        if idx > 0 {
            text += "\n";
        }
        text += &format!("r = {}: H_1 = {}", r, cover.group);
        for i in 0..n {
            text += &format!(
                "\n  x_{}: order {}, deck image {}",
                i + 1,
                orders[i],
                decks[i]
            );
        }
        machine.push(json!({
            "r": r,
            "group": cover.group,
            "generator_orders": orders,
            "deck_images": decks,
        }));
    }
    match format {
        Format::Text => text,
        Format::Machine => json!({ "covers": machine }).to_string(),
    }
}

pub fn render_linkform(
    form: &LinkingForm,
    mets: &[LinkingSubgroup],
    format: Format,
) -> String {
    let n = form.gram.rows();
    let rows: Vec<Vec<String>> = (0..n)
        .map(|i| (0..n).map(|j| form.gram[(i, j)].to_string()).collect())
        .collect();
    match format {
        Format::Text => {
            let mut out = format!("double cover group: {}", form.group);
            out += "\nlinking form (mod 1):";
            for row in &rows {
                out += &format!("\n  [{}]", row.join(", "));
            }
            out += &format!("\n{} metaboliser(s)", mets.len());
            for (i, m) in mets.iter().enumerate() {
                let inv = match m.deck_invariant {
                    Some(true) => ", deck-invariant",
                    Some(false) => ", not deck-invariant",
                    None => "",
                };
                out += &format!("\n  P_{}: order {}{}", i + 1, m.order, inv);
            }
            out
        }
        Format::Machine => {
            let list: Vec<_> = mets
                .iter()
                .map(|m| {
                    json!({
                        "order": m.order,
                        "deck_invariant": m.deck_invariant,
                        "elements": m
                            .elements
                            .iter()
                            .map(|e| e.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({
                "group": form.group,
                "gram": rows,
                "metabolisers": list,
            })
            .to_string()
        }
    }
}

pub fn render_family(m: u64, expectations: &[(u32, FamilyExpected)], format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("K_{m} closed-form expectations:");
            if let Some((_, first)) = expectations.first() {
                out += &format!("\nΔ = {}", first.delta);
            }
            for (r, e) in expectations {
                out += &format!("\nr = {}: N_r = {}, H_1(Σ_r) = {}", r, e.n_r, e.cover_group);
            }
            out
        }
        Format::Machine => {
            let list: Vec<_> = expectations
                .iter()
                .map(|(r, e)| {
                    json!({
                        "r": r,
                        "n_r": e.n_r.to_string(),
                        "cover_group": e.cover_group,
                    })
                })
                .collect();
            json!({
                "m": m,
                "delta": expectations.first().map(|(_, e)| e.delta.to_string()),
                "expectations": list,
            })
            .to_string()
        }
    }
}

fn render_step(step: &Step) -> String {
    let tag = match step.status {
        Status::Verified => "verified",
        Status::Failed => "FAILED",
        Status::ExternalAssumption => "external-assumption",
    };
    format!("[{tag}] {}: {}", step.name, step.detail)
}

pub fn render_report(report: &ObstructionReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("obstruction report for K_{}", report.m);
            if let Some(w) = &report.warning {
                out += &format!("\nwarning: {w}");
            }
            for s in &report.checks {
                out += &format!("\n{}", render_step(s));
            }
            for c in &report.covers {
                out += &format!("\nr = {}:", c.r);
                for s in &c.steps {
                    out += &format!("\n  {}", render_step(s));
                }
            }
            for s in &report.external_assumptions {
                out += &format!("\n{}", render_step(s));
            }
            out += &format!("\nconclusion: {}", report.conclusion);
            out
        }
        Format::Machine => {
            serde_json::to_string_pretty(report).expect("report serialises")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::obstruction_report;
    use crate::group::AbelianGroup;
    use crate::laurent::int;

    #[test]
    fn machine_report_roundtrips() {
        let rep = obstruction_report(1, &[2]).unwrap();
        let s = render_report(&rep, Format::Machine);
        let back: ObstructionReport = serde_json::from_str(&s).unwrap();
        assert_eq!(rep, back);
    }

    #[test]
    fn machine_group_roundtrips() {
        let g = AbelianGroup {
            invariant_factors: vec![int(7), int(7)],
            free_rank: 0,
        };
        let s = serde_json::to_string(&g).unwrap();
        let back: AbelianGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn alex_text_is_bare_polynomial() {
        let delta = LaurentPoly::from_int_coeffs(&[1, -1, 1]);
        assert_eq!(render_alex(&delta, Format::Text), "t^2 - t + 1");
    }
}
