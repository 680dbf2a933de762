//! Degree verdicts for the bicanonical map of a Galois cover, read off
//! from the subgroup acting trivially on `H^0(2K)`.

use serde::Serialize;

use crate::group::{GroupElement, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum BicanonicalVerdict {
    Birational {
        reason: String,
    },
    /// The map factors through the quotient by a subgroup of order `order`.
    /// `degree` is filled in only when the known bound pins it down.
    ComposedWith {
        order: usize,
        generators: Vec<GroupElement>,
        degree: Option<u32>,
        reason: String,
    },
    Undetermined {
        reason: String,
    },
}

impl BicanonicalVerdict {
    pub fn degree(&self) -> Option<u32> {
        match self {
            BicanonicalVerdict::Birational { .. } => Some(1),
            BicanonicalVerdict::ComposedWith { degree, .. } => *degree,
            BicanonicalVerdict::Undetermined { .. } => None,
        }
    }

    pub fn is_birational(&self) -> bool {
        matches!(self, BicanonicalVerdict::Birational { .. })
    }
}

/// Verdict from the kernel of the action on bicanonical sections.
///
/// `invariant_birational` says whether the invariant summand alone already
/// maps the base birationally (e.g. a very ample bidegree on `P^1 x P^1`).
pub fn degree_verdict(kernel: &Subgroup<GroupElement>, k2: i64, invariant_birational: bool) -> BicanonicalVerdict {
    let order = kernel.order();
    if order == 1 {
        if invariant_birational {
            return BicanonicalVerdict::Birational {
                reason: "no nonzero group element acts trivially on H^0(2K) and the invariant sections embed the base \
                         birationally"
                    .into(),
            };
        }
        return BicanonicalVerdict::Undetermined {
            reason: "kernel is trivial but the invariant sections are not known to be birational on the base".into(),
        };
    }
    let degree = if order == 2 && (k2 == 7 || k2 == 8) {
        Some(2)
    } else {
        None
    };
    let reason = match degree {
        Some(_) => {
            "composed with an involution, so the degree is even; the degree is at most 2 when K^2 = 7 or 8".into()
        }
        None => format!("composed with a subgroup of order {order}; the degree is a multiple of {order}"),
    };
    BicanonicalVerdict::ComposedWith {
        order,
        generators: kernel.reduced_generators(),
        degree,
        reason,
    }
}
