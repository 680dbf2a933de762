//! Product-quotient surfaces `S = (C_1 x C_2)/Γ`, where `C_i -> P^1` are
//! `G`-covers and `Γ ⊂ G x G` is the graph of an automorphism `ψ` of `G`
//! acting freely.
//!
//! `(G x G)/Γ` is identified with `G` through `(a, b) ↦ b - ψ(a)`.
//! A character `(χ1, χ2) ∈ Γ^⊥` then induces `χ2` on `G`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::covers::{eigensheaf_degrees, rh_genus, validate_building_data, BranchDataP1, CoverInvariants};
use crate::group::{
    common_kernel, orthogonal_complement, AbelianGroup, Automorphism, Character, GroupElement, Subgroup,
};
use crate::verdict::{degree_verdict, BicanonicalVerdict};
use crate::{Error, Result};

/// Elements of `G` with a fixed point on the cover: the nonzero elements of
/// the inertia subgroups `<γ>` for every `γ` with `D_γ != 0`.
pub fn fixed_point_elements(data: &BranchDataP1) -> BTreeSet<GroupElement> {
    let g = data.group();
    let mut out = BTreeSet::new();
    for gamma in data.branch_elements() {
        let o = g.order_of(gamma) as i64;
        for k in 1..o {
            out.insert(g.scale(k, gamma));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessCheck {
    pub free: bool,
    pub witness: Option<GroupElement>,
}

/// `Γ_ψ` acts freely on `C_1 x C_2` iff no `g != 0` has `g ∈ fix1` and `ψ(g) ∈ fix2`.
pub fn is_free(
    psi: &Automorphism,
    fix1: &BTreeSet<GroupElement>,
    fix2: &BTreeSet<GroupElement>,
) -> Result<FreenessCheck> {
    for g in fix1 {
        if g.is_zero() {
            continue;
        }
        if fix2.contains(&psi.apply(g)?) {
            return Ok(FreenessCheck {
                free: false,
                witness: Some(g.clone()),
            });
        }
    }
    Ok(FreenessCheck {
        free: true,
        witness: None,
    })
}

/// `chi(O_S) = (g1-1)(g2-1)/|G| = 1`, `K_S^2 = 8 chi`, `q = p_g = 0`.
pub fn beauville_invariants(g1: i64, g2: i64, order: usize) -> Result<CoverInvariants> {
    let product = (g1 - 1) * (g2 - 1);
    if product != order as i64 {
        return Err(Error::InvalidArgument(format!(
            "(g1-1)(g2-1) = {product} differs from |G| = {order}"
        )));
    }
    // both quotients C_i/G are rational, so no invariant 1-forms survive
    CoverInvariants::new(8, 1, 0)
}

/// Bidegree of `2K_S` on `P^1 x P^1`: `2K = π*(2K_{P1xP1} + branch)` with all
/// inertia of order 2, so `b_i = deg(branch_i) - 4`.
pub fn two_k_bidegree(branch1: &BranchDataP1, branch2: &BranchDataP1) -> Result<(i64, i64)> {
    for data in [branch1, branch2] {
        let g = data.group();
        if let Some(bad) = data.branch_elements().find(|x| g.order_of(x) != 2) {
            return Err(Error::Unsupported(format!(
                "inertia generated by {bad} is not of order 2"
            )));
        }
    }
    Ok((branch1.total_degree() as i64 - 4, branch2.total_degree() as i64 - 4))
}

/// The isomorphism `(G x G)/Γ_ψ -> G`, `(a, b) ↦ b - ψ(a)`.
#[derive(Clone, Debug)]
pub struct QuotientIso {
    psi: Automorphism,
}

pub fn quotient_iso(psi: &Automorphism) -> QuotientIso {
    QuotientIso { psi: psi.clone() }
}

impl QuotientIso {
    pub fn map(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let g = self.psi.group();
        Ok(g.sub(b, &self.psi.apply(a)?))
    }

    /// Image of an element of `G x G` given in joined coordinates.
    pub fn map_joined(&self, x: &GroupElement) -> Result<GroupElement> {
        let (a, b) = self.psi.group().split(x);
        self.map(&a, &b)
    }

    /// The representative `(0, h)` of the class mapping to `h`.
    pub fn representative(&self, h: &GroupElement) -> GroupElement {
        AbelianGroup::join(&self.psi.group().zero(), h)
    }

    /// Character of `G` induced by `χ ∈ Γ^⊥`, read off on representatives `(0, h)`.
    pub fn induced_character(&self, chi: &Character) -> Character {
        self.psi.group().split_character(chi).1
    }
}

#[derive(Clone, Debug)]
pub struct ProductQuotientSpec {
    pub group: AbelianGroup,
    pub psi: Automorphism,
    pub branch1: BranchDataP1,
    pub branch2: BranchDataP1,
}

impl ProductQuotientSpec {
    pub fn new(psi: Automorphism, branch1: BranchDataP1, branch2: BranchDataP1) -> Result<Self> {
        let group = psi.group().clone();
        if branch1.group() != &group || branch2.group() != &group {
            return Err(Error::InvalidArgument(
                "branch data and automorphism use different groups".into(),
            ));
        }
        Ok(ProductQuotientSpec {
            group,
            psi,
            branch1,
            branch2,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenEntry {
    /// Character of `G x G` in `Γ^⊥`.
    pub character: Character,
    /// The character of `G ≅ (G x G)/Γ` it induces.
    pub induced: Character,
    pub m_bidegree: (i64, i64),
    pub dimension: usize,
}

/// `H^0(2K_S) = ⊕_{χ ∈ Γ^⊥} H^0(P^1 x P^1, O(b1,b2) ⊗ M_χ^{-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eigentable {
    entries: Vec<EigenEntry>,
}

impl Eigentable {
    pub fn entries(&self) -> &[EigenEntry] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.dimension).sum()
    }

    /// Dimension of the `χ`-eigenspace; characters outside `Γ^⊥` are an error.
    pub fn dimension(&self, chi: &Character) -> Result<usize> {
        self.entries
            .iter()
            .find(|e| &e.character == chi)
            .map(|e| e.dimension)
            .ok_or_else(|| Error::InvalidArgument(format!("character {chi} is not in the orthogonal of Γ")))
    }

    pub fn contributing(&self) -> impl Iterator<Item = &EigenEntry> {
        self.entries.iter().filter(|e| e.dimension > 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicanonicalReport {
    pub genera: (i64, i64),
    pub fixed1: Vec<GroupElement>,
    pub fixed2: Vec<GroupElement>,
    pub freeness: FreenessCheck,
    pub invariants: CoverInvariants,
    pub bidegree: (i64, i64),
    pub eigentable: Eigentable,
    pub p2: usize,
    pub kernel: Vec<GroupElement>,
    pub verdict: BicanonicalVerdict,
}

/// `h0(O_{P1xP1}(a, b))`.
pub fn h0_bidegree(a: i64, b: i64) -> usize {
    if a < 0 || b < 0 {
        0
    } else {
        ((a + 1) * (b + 1)) as usize
    }
}

/// The kernel of the action of `(G x G)/Γ ≅ G` on `H^0(2K_S)`.
pub fn eigentable_kernel(table: &Eigentable, group: &AbelianGroup) -> Result<Subgroup<GroupElement>> {
    let chars: Vec<Character> = table.contributing().map(|e| e.induced.clone()).collect();
    common_kernel(group, &chars)
}

pub fn bicanonical_report(spec: &ProductQuotientSpec) -> Result<BicanonicalReport> {
    for (i, data) in [&spec.branch1, &spec.branch2].into_iter().enumerate() {
        let report = validate_building_data(data);
        if let Some(f) = report.first_failure() {
            return Err(Error::InvalidBranchData(format!(
                "curve {}: {} fails: {}",
                i + 1,
                f.relation,
                f.detail
            )));
        }
    }
    let g1 = rh_genus(&spec.branch1)?;
    let g2 = rh_genus(&spec.branch2)?;
    let invariants = beauville_invariants(g1, g2, spec.group.order())?;
    let fix1 = fixed_point_elements(&spec.branch1);
    let fix2 = fixed_point_elements(&spec.branch2);
    let freeness = is_free(&spec.psi, &fix1, &fix2)?;
    if let Some(w) = &freeness.witness {
        return Err(Error::NotFree(format!("(g, ψ(g)) has fixed points for g = {w}")));
    }
    let bidegree = two_k_bidegree(&spec.branch1, &spec.branch2)?;
    let t1 = eigensheaf_degrees(&spec.branch1)?;
    let t2 = eigensheaf_degrees(&spec.branch2)?;
    let iso = quotient_iso(&spec.psi);
    let perp = orthogonal_complement(&spec.psi.graph_subgroup());
    let entries: Vec<EigenEntry> = perp
        .elements()
        .iter()
        .map(|chi| {
            let (c1, c2) = spec.group.split_character(chi);
            let d1 = t1.degree(&c1).expect("table covers every character");
            let d2 = t2.degree(&c2).expect("table covers every character");
            EigenEntry {
                character: chi.clone(),
                induced: iso.induced_character(chi),
                m_bidegree: (d1, d2),
                dimension: h0_bidegree(bidegree.0 - d1, bidegree.1 - d2),
            }
        })
        .collect();
    let eigentable = Eigentable { entries };
    let p2 = eigentable.total();
    let expected = invariants.k2 + invariants.chi;
    if p2 as i64 != expected {
        return Err(Error::Inconsistent(format!(
            "eigenspace dimensions sum to {p2}, expected K^2 + chi = {expected}"
        )));
    }
    let kernel = eigentable_kernel(&eigentable, &spec.group)?;
    let very_ample = bidegree.0 >= 1 && bidegree.1 >= 1;
    let verdict = degree_verdict(&kernel, invariants.k2, very_ample);
    Ok(BicanonicalReport {
        genera: (g1, g2),
        fixed1: fix1.into_iter().collect(),
        fixed2: fix2.into_iter().collect(),
        freeness,
        invariants,
        bidegree,
        eigentable,
        p2,
        kernel: kernel.elements().iter().cloned().collect(),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{BranchEntry, BranchLocus};

    fn z2(n: usize) -> AbelianGroup {
        AbelianGroup::elementary_two(n)
    }

    fn ex2() -> ProductQuotientSpec {
        let g = z2(3);
        let c1 = BranchDataP1::from_degrees(
            &g,
            &[(vec![1, 0, 0], 2), (vec![0, 1, 0], 2), (vec![0, 0, 1], 2)],
            vec![1, 1, 1],
        )
        .unwrap();
        let c2 = BranchDataP1::from_degrees(
            &g,
            &[
                (vec![1, 0, 0], 1),
                (vec![0, 1, 0], 1),
                (vec![1, 1, 0], 1),
                (vec![0, 0, 1], 2),
            ],
            vec![1, 1, 1],
        )
        .unwrap();
        let psi = Automorphism::from_images(&g, &[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]).unwrap();
        ProductQuotientSpec::new(psi, c1, c2).unwrap()
    }

    #[test]
    fn fixed_sets() {
        let s = ex2();
        let g = &s.group;
        let fix1 = fixed_point_elements(&s.branch1);
        let expected: BTreeSet<_> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            .iter()
            .map(|c| g.element(c).unwrap())
            .collect();
        assert_eq!(fix1, expected);
        let unramified = BranchDataP1::new(g.clone(), vec![], vec![0, 0, 0]).unwrap();
        assert!(fixed_point_elements(&unramified).is_empty());
    }

    #[test]
    fn freeness() {
        let s = ex2();
        let fix1 = fixed_point_elements(&s.branch1);
        let fix2 = fixed_point_elements(&s.branch2);
        assert!(is_free(&s.psi, &fix1, &fix2).unwrap().free);
        let id = Automorphism::identity(&s.group);
        let r = is_free(&id, &fix1, &fix2).unwrap();
        assert!(!r.free);
        assert_eq!(r.witness, Some(s.group.element(&[0, 0, 1]).unwrap()));
    }

    #[test]
    fn invariants_and_bidegree() {
        assert_eq!(beauville_invariants(5, 3, 8).unwrap().as_tuple(), (8, 1, 0, 0));
        assert_eq!(beauville_invariants(5, 5, 16).unwrap().as_tuple(), (8, 1, 0, 0));
        assert_eq!(beauville_invariants(6, 6, 25).unwrap().as_tuple(), (8, 1, 0, 0));
        assert!(beauville_invariants(5, 4, 8).is_err());
        let s = ex2();
        assert_eq!(two_k_bidegree(&s.branch1, &s.branch2).unwrap(), (2, 1));
        let g = z2(2);
        let four = BranchDataP1::from_degrees(&g, &[(vec![1, 0], 2), (vec![0, 1], 2)], vec![1, 1]).unwrap();
        assert_eq!(two_k_bidegree(&four, &four).unwrap(), (0, 0));
    }

    #[test]
    fn quotient_map() {
        let s = ex2();
        let g = &s.group;
        let iso = quotient_iso(&s.psi);
        for x in g.elements() {
            assert!(iso.map(&x, &s.psi.apply(&x).unwrap()).unwrap().is_zero());
            assert_eq!(iso.map(&x, &g.zero()).unwrap(), g.neg(&s.psi.apply(&x).unwrap()));
        }
        let gamma3 = g.element(&[0, 0, 1]).unwrap();
        assert_eq!(iso.map(&g.zero(), &gamma3).unwrap(), gamma3);
    }

    #[test]
    fn ex2_report() {
        let r = bicanonical_report(&ex2()).unwrap();
        assert_eq!(r.genera, (5, 3));
        assert_eq!(r.p2, 9);
        let mut dims: Vec<usize> = r.eigentable.contributing().map(|e| e.dimension).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 1, 6]);
        assert_eq!(r.kernel.len(), 2);
        assert_eq!(r.verdict.degree(), Some(2));
        let outside = AbelianGroup::join(&z2(3).character(&[1, 0, 0]).unwrap(), &z2(3).trivial_character());
        assert!(r.eigentable.dimension(&outside).is_err());
    }

    #[test]
    fn unramified_spec_rejected() {
        let g = z2(3);
        let empty = BranchDataP1::new(g.clone(), vec![], vec![0, 0, 0]).unwrap();
        let psi = Automorphism::identity(&g);
        let spec = ProductQuotientSpec::new(psi, empty.clone(), empty).unwrap();
        assert!(bicanonical_report(&spec).is_err());
    }

    #[test]
    fn non_involution_inertia_is_unsupported() {
        let g = AbelianGroup::new(&[5]).unwrap();
        let data = BranchDataP1::new(
            g.clone(),
            vec![BranchEntry {
                element: g.element(&[1]).unwrap(),
                locus: BranchLocus::Degree(3),
            }],
            vec![],
        )
        .unwrap();
        assert!(matches!(two_k_bidegree(&data, &data), Err(Error::Unsupported(_))));
    }
}
