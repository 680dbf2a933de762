//! Display names for group elements and verdicts.

use std::collections::BTreeMap;

use bicanon::covers::BranchDataSurface;
use bicanon::group::GroupElement;
use bicanon::verdict::BicanonicalVerdict;

fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

/// Names elements as sums of generators `γ₁, γ₂, ...`, with overrides for
/// groups that come with their own labels.
pub struct Namer {
    overrides: BTreeMap<GroupElement, String>,
}

impl Namer {
    pub fn generic() -> Self {
        Namer {
            overrides: BTreeMap::new(),
        }
    }

    /// `Z_2^2` with its three nonzero elements called `γ₁, γ₂, γ₃`.
    pub fn surface() -> Self {
        let overrides = (1..=3)
            .map(|i| (BranchDataSurface::element(i), format!("γ{}", subscript(i))))
            .collect();
        Namer { overrides }
    }

    pub fn name(&self, g: &GroupElement) -> String {
        if let Some(n) = self.overrides.get(g) {
            return n.clone();
        }
        let terms: Vec<String> = g
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    format!("γ{}", subscript(i + 1))
                } else {
                    format!("{c}γ{}", subscript(i + 1))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

pub fn element_set(elements: &[GroupElement], namer: &Namer) -> String {
    let names: Vec<String> = elements.iter().map(|g| namer.name(g)).collect();
    format!("{{{}}}", names.join(", "))
}

pub fn eigentable_tuple(dims: &[usize]) -> String {
    let parts: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn verdict_phrase(verdict: &BicanonicalVerdict, namer: &Namer) -> String {
    match verdict {
        BicanonicalVerdict::Birational { .. } => "bicanonical birational".into(),
        BicanonicalVerdict::ComposedWith {
            order,
            generators,
            degree,
            ..
        } => {
            let gens: Vec<String> = generators.iter().map(|g| namer.name(g)).collect();
            let what = if gens.len() == 1 {
                gens[0].clone()
            } else {
                format!("the subgroup of order {order} generated by {}", gens.join(", "))
            };
            match degree {
                Some(d) => format!("bicanonical composed with {what}, degree {d}"),
                None => format!("bicanonical composed with {what}, degree a multiple of {order}"),
            }
        }
        BicanonicalVerdict::Undetermined { .. } => "bicanonical degree undetermined".into(),
    }
}
