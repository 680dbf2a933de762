//! Invariants of double covers and building data of `Z_2^n` covers, over
//! `P^1` (by degrees) and over rational surfaces (by divisor classes).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::group::{common_kernel, AbelianGroup, Character, Coords, GroupElement};
use crate::picard::DivisorClass;
use crate::verdict::{degree_verdict, BicanonicalVerdict};
use crate::{Error, Result};

/// Source of `h0` values for divisor classes.
pub trait H0Oracle {
    fn h0(&self, class: &DivisorClass) -> Result<usize>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverInvariants {
    pub k2: i64,
    pub chi: i64,
    pub pg: i64,
    pub q: i64,
}

impl CoverInvariants {
    /// Fills in `q = p_g + 1 - chi`.
    pub fn new(k2: i64, chi: i64, pg: i64) -> Result<Self> {
        if pg < 0 {
            return Err(Error::InvalidArgument(format!("p_g = {pg} is negative")));
        }
        let q = pg + 1 - chi;
        if q < 0 {
            return Err(Error::InvalidArgument(format!(
                "irregularity q = {q} is negative (chi = {chi}, p_g = {pg})"
            )));
        }
        Ok(CoverInvariants { k2, chi, pg, q })
    }

    pub fn as_tuple(&self) -> (i64, i64, i64, i64) {
        (self.k2, self.chi, self.pg, self.q)
    }
}

/// Data of the double cover `Y -> S` defined by `2M ≡ D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCoverInput {
    pub chi_base: i64,
    pub pg_base: i64,
    pub k2_base: i64,
    pub m_squared: i64,
    pub m_dot_k: i64,
    pub h0_k_plus_m: i64,
}

impl DoubleCoverInput {
    /// Numbers read off a class `M` on a lattice with known canonical class.
    pub fn from_class(chi_base: i64, pg_base: i64, m: &DivisorClass, h0_k_plus_m: i64) -> Result<Self> {
        let lat = m.lattice();
        let k = lat.canonical_class()?;
        Ok(DoubleCoverInput {
            chi_base,
            pg_base,
            k2_base: lat.intersect(&k, &k)?,
            m_squared: lat.intersect(m, m)?,
            m_dot_k: lat.intersect(m, &k)?,
            h0_k_plus_m,
        })
    }
}

/// `K_Y^2 = 2(K+M)^2`, `chi(O_Y) = 2 chi(O_S) + M(K+M)/2`, `p_g(Y) = p_g(S) + h0(K+M)`.
pub fn double_cover_invariants(input: &DoubleCoverInput) -> Result<CoverInvariants> {
    if input.h0_k_plus_m < 0 {
        return Err(Error::InvalidArgument("h0(K+M) is negative".into()));
    }
    let k_plus_m_sq = input.k2_base + 2 * input.m_dot_k + input.m_squared;
    let m_k_plus_m = input.m_dot_k + input.m_squared;
    if m_k_plus_m % 2 != 0 {
        return Err(Error::InvalidBranchData(format!(
            "M(K+M) = {m_k_plus_m} is odd, so chi(O_Y) is not an integer"
        )));
    }
    CoverInvariants::new(
        2 * k_plus_m_sq,
        2 * input.chi_base + m_k_plus_m / 2,
        input.pg_base + input.h0_k_plus_m,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchLocus {
    Points(Vec<String>),
    Degree(u32),
}

impl BranchLocus {
    pub fn degree(&self) -> u32 {
        match self {
            BranchLocus::Points(p) => p.len() as u32,
            BranchLocus::Degree(d) => *d,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchEntry {
    pub element: GroupElement,
    pub locus: BranchLocus,
}

/// Building data of a `G`-cover of `P^1`: a branch divisor `D_γ` for some
/// nonzero `γ`, and the degrees of `L_i` for the dual basis characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchDataP1 {
    group: AbelianGroup,
    entries: Vec<BranchEntry>,
    line_bundles: Vec<i64>,
}

impl BranchDataP1 {
    pub fn new(group: AbelianGroup, mut entries: Vec<BranchEntry>, line_bundles: Vec<i64>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for e in &entries {
            if !group.contains(&e.element) {
                return Err(Error::InvalidBranchData(format!(
                    "{} is not an element of the group",
                    e.element
                )));
            }
            if e.element.is_zero() {
                return Err(Error::InvalidBranchData(
                    "branch divisor attached to the zero element".into(),
                ));
            }
            if !seen.insert(e.element.clone()) {
                return Err(Error::InvalidBranchData(format!("element {} listed twice", e.element)));
            }
        }
        entries.sort_by(|a, b| a.element.cmp(&b.element));
        Ok(BranchDataP1 {
            group,
            entries,
            line_bundles,
        })
    }

    /// Convenience constructor from `(coords, degree)` pairs.
    pub fn from_degrees(group: &AbelianGroup, entries: &[(Vec<i64>, u32)], line_bundles: Vec<i64>) -> Result<Self> {
        let entries = entries
            .iter()
            .map(|(c, d)| {
                Ok(BranchEntry {
                    element: group.element(c)?,
                    locus: BranchLocus::Degree(*d),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        BranchDataP1::new(group.clone(), entries, line_bundles)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn entries(&self) -> &[BranchEntry] {
        &self.entries
    }

    pub fn line_bundles(&self) -> &[i64] {
        &self.line_bundles
    }

    pub fn with_line_bundle(&self, i: usize, degree: i64) -> Self {
        let mut out = self.clone();
        out.line_bundles[i] = degree;
        out
    }

    pub fn degree_of(&self, g: &GroupElement) -> u32 {
        self.entries
            .iter()
            .find(|e| &e.element == g)
            .map_or(0, |e| e.locus.degree())
    }

    /// Number of branch points.
    pub fn total_degree(&self) -> u32 {
        self.entries.iter().map(|e| e.locus.degree()).sum()
    }

    /// Elements with nonzero branch divisor.
    pub fn branch_elements(&self) -> impl Iterator<Item = &GroupElement> {
        self.entries.iter().filter(|e| e.locus.degree() > 0).map(|e| &e.element)
    }

    /// Whether the branch elements generate the group, i.e. the cover is connected.
    pub fn is_connected(&self) -> bool {
        let gens: Vec<GroupElement> = self.branch_elements().cloned().collect();
        self.group.subgroup(gens).expect("validated elements").order() == self.group.order()
    }

    /// `sum_{γ : χ(γ) != 0} deg D_γ`.
    pub fn branch_weight(&self, chi: &Character) -> u32 {
        self.entries
            .iter()
            .filter(|e| self.group.pair(chi, &e.element) != 0)
            .map(|e| e.locus.degree())
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<RelationCheck>,
}

impl ValidationReport {
    fn push(&mut self, relation: impl Into<String>, holds: bool, detail: impl Into<String>) {
        self.checks.push(RelationCheck {
            relation: relation.into(),
            holds,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn first_failure(&self) -> Option<&RelationCheck> {
        self.failures().next()
    }
}

/// Building data whose defining relations can be checked.
pub trait BuildingData {
    fn validate(&self) -> ValidationReport;
}

/// Check the relations `2L_i ≡ sum_γ ε_i(γ) D_γ` and support disjointness.
/// Failures are reported, never thrown.
pub fn validate_building_data<D: BuildingData + ?Sized>(data: &D) -> ValidationReport {
    data.validate()
}

impl BuildingData for BranchDataP1 {
    fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut owner: BTreeMap<&str, &GroupElement> = BTreeMap::new();
        let mut clash = Vec::new();
        for e in &self.entries {
            if let BranchLocus::Points(pts) = &e.locus {
                for p in pts {
                    if let Some(prev) = owner.insert(p.as_str(), &e.element) {
                        clash.push(format!("{p} appears in D_{prev} and D_{}", e.element));
                    }
                }
            }
        }
        report.push(
            "branch supports are disjoint",
            clash.is_empty(),
            if clash.is_empty() {
                "ok".to_string()
            } else {
                clash.join("; ")
            },
        );
        report.push(
            "branch elements generate G",
            self.is_connected(),
            format!("{} branch elements", self.branch_elements().count()),
        );
        if !self.group.is_two_elementary() {
            report.push(
                "group is Z_2^n",
                false,
                "the relation 2L_i = sum eps_i(γ) D_γ needs a 2-elementary group",
            );
            return report;
        }
        if self.line_bundles.len() != self.group.rank() {
            report.push(
                "one line bundle per dual basis character",
                false,
                format!("expected {}, got {}", self.group.rank(), self.line_bundles.len()),
            );
            return report;
        }
        for (i, &deg) in self.line_bundles.iter().enumerate() {
            let rhs = self.branch_weight(&self.group.dual_generator(i)) as i64;
            report.push(
                format!("2L_{} = sum eps_{}(γ) D_γ", i + 1, i + 1),
                2 * deg == rhs,
                format!("2*{deg} vs {rhs}"),
            );
        }
        report
    }
}

/// Genus of a connected `G`-cover of `P^1` by Riemann-Hurwitz: each branch
/// point over `D_γ` has cyclic inertia `<γ>`.
pub fn rh_genus(data: &BranchDataP1) -> Result<i64> {
    if !data.is_connected() {
        return Err(Error::InvalidBranchData(
            "branch elements do not generate G; the cover is disconnected".into(),
        ));
    }
    let n = data.group.order() as i64;
    // 2g - 2 = -2|G| + sum_P |G| (1 - 1/ord γ_P)
    let ramification: i64 = data
        .entries
        .iter()
        .map(|e| {
            let o = data.group.order_of(&e.element) as i64;
            e.locus.degree() as i64 * (n / o) * (o - 1)
        })
        .sum();
    let twice = -2 * n + ramification;
    if twice % 2 != 0 {
        return Err(Error::InvalidBranchData(
            "Riemann-Hurwitz gives a non-integral genus".into(),
        ));
    }
    Ok(twice / 2 + 1)
}

/// `deg L_χ` for every character `χ` of a `Z_2^n`-cover, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigensheafTable {
    group: AbelianGroup,
    degrees: BTreeMap<Character, i64>,
}

impl EigensheafTable {
    pub fn from_degrees(group: AbelianGroup, degrees: BTreeMap<Character, i64>) -> Self {
        EigensheafTable { group, degrees }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn degree(&self, chi: &Character) -> Option<i64> {
        self.degrees.get(chi).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Character, i64)> {
        self.degrees.iter().map(|(c, &d)| (c, d))
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

/// `deg L_χ = (1/2) sum_{γ ∉ ker χ} deg D_γ`.
pub fn eigensheaf_degrees(data: &BranchDataP1) -> Result<EigensheafTable> {
    if !data.group.is_two_elementary() {
        return Err(Error::Unsupported(
            "eigensheaf degrees are implemented for Z_2^n covers only".into(),
        ));
    }
    let mut degrees = BTreeMap::new();
    for chi in data.group.characters() {
        let w = data.branch_weight(&chi);
        if !w.is_multiple_of(2) {
            return Err(Error::InvalidBranchData(format!(
                "branch weight {w} of character {chi} is odd"
            )));
        }
        degrees.insert(chi, (w / 2) as i64);
    }
    Ok(EigensheafTable {
        group: data.group.clone(),
        degrees,
    })
}

/// `g = 1 - sum_χ (1 - deg L_χ)`, from `chi(O_C) = sum_χ chi(L_χ^{-1})`.
pub fn genus_from_eigensheaves(table: &EigensheafTable) -> i64 {
    1 - table.degrees.values().map(|d| 1 - d).sum::<i64>()
}

/// Building data of a `Z_2^2`-cover of a rational surface.
///
/// `γ1 = (1,0)`, `γ2 = (0,1)`, `γ3 = (1,1)`, and `χ_i` is the nontrivial
/// character vanishing on `γ_i`; `D_i` is attached to `γ_i` and `L_i` to `χ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchDataSurface {
    d: [DivisorClass; 3],
    l1: DivisorClass,
    l2: DivisorClass,
}

impl BranchDataSurface {
    pub fn new(d: [DivisorClass; 3], l1: DivisorClass, l2: DivisorClass) -> Result<Self> {
        for c in d.iter().chain([&l1, &l2]) {
            if c.kind() != d[0].kind() {
                return Err(Error::LatticeMismatch {
                    left: d[0].kind().to_string(),
                    right: c.kind().to_string(),
                });
            }
        }
        Ok(BranchDataSurface { d, l1, l2 })
    }

    pub fn group() -> AbelianGroup {
        AbelianGroup::elementary_two(2)
    }

    pub fn element(i: usize) -> GroupElement {
        let g = Self::group();
        match i {
            1 => g.element(&[1, 0]),
            2 => g.element(&[0, 1]),
            3 => g.element(&[1, 1]),
            _ => panic!("element index {i} out of range 1..=3"),
        }
        .expect("Z_2^2 coordinates")
    }

    pub fn character(i: usize) -> Character {
        let g = Self::group();
        match i {
            1 => g.character(&[0, 1]),
            2 => g.character(&[1, 0]),
            3 => g.character(&[1, 1]),
            _ => panic!("character index {i} out of range 1..=3"),
        }
        .expect("Z_2^2 coordinates")
    }

    pub fn branch(&self, i: usize) -> &DivisorClass {
        &self.d[i - 1]
    }

    pub fn branch_total(&self) -> DivisorClass {
        &(&self.d[0] + &self.d[1]) + &self.d[2]
    }

    /// `L3 = L1 + L2 - D3`.
    pub fn l3(&self) -> DivisorClass {
        &(&self.l1 + &self.l2) - &self.d[2]
    }

    pub fn line_bundles(&self) -> [DivisorClass; 3] {
        [self.l1.clone(), self.l2.clone(), self.l3()]
    }

    pub fn with_branch(&self, i: usize, class: DivisorClass) -> Result<Self> {
        let mut d = self.d.clone();
        d[i - 1] = class;
        BranchDataSurface::new(d, self.l1.clone(), self.l2.clone())
    }

    pub fn with_line_bundles(&self, l1: DivisorClass, l2: DivisorClass) -> Result<Self> {
        BranchDataSurface::new(self.d.clone(), l1, l2)
    }
}

impl BuildingData for BranchDataSurface {
    fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let g = Self::group();
        let ls = self.line_bundles();
        for i in 1..=3 {
            let chi = Self::character(i);
            let rhs = (1..=3)
                .filter(|&j| g.pair(&chi, &Self::element(j)) != 0)
                .fold(self.d[0].lattice().zero(), |acc, j| &acc + &self.d[j - 1]);
            let lhs = ls[i - 1].scaled(2);
            let terms: Vec<String> = (1..=3)
                .filter(|&j| g.pair(&chi, &Self::element(j)) != 0)
                .map(|j| format!("D{j}"))
                .collect();
            report.push(
                format!("2L{i} = {}", terms.join("+")),
                lhs == rhs,
                format!("{lhs} vs {rhs}"),
            );
        }
        report
    }
}

/// Invariants of the `Z_2^2`-cover `X` of a rational surface `Σ`
/// (`p_g(Σ) = q(Σ) = 0`, `chi(O_Σ) = 1`).
pub fn z22_surface_cover_invariants(data: &BranchDataSurface, oracle: &dyn H0Oracle) -> Result<CoverInvariants> {
    let report = data.validate();
    if let Some(f) = report.first_failure() {
        return Err(Error::InvalidBranchData(format!("{} fails: {}", f.relation, f.detail)));
    }
    let lat = data.d[0].lattice();
    let k = lat.canonical_class()?;
    let mut pg = 0i64;
    let mut half_sum = 0i64;
    for l in data.line_bundles() {
        let kl = &k + &l;
        pg += oracle.h0(&kl)? as i64;
        half_sum += lat.intersect(&l, &kl)?;
    }
    if half_sum % 2 != 0 {
        return Err(Error::InvalidBranchData(format!("sum L_i(K+L_i) = {half_sum} is odd")));
    }
    let chi = 4 + half_sum / 2;
    // 2K_X = π*(2K + D) with deg π = 4
    let two_k_plus_d = &k.scaled(2) + &data.branch_total();
    let k2 = lat.intersect(&two_k_plus_d, &two_k_plus_d)?;
    CoverInvariants::new(k2, chi, pg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterDimension {
    pub label: String,
    pub character: Character,
    pub class: String,
    pub dimension: usize,
}

/// `h0(total - L_χ)` for the trivial character (`L = 0`) and each listed `(χ, L_χ)`.
pub fn projection_decomposition(
    total: &DivisorClass,
    line_bundles: &[(String, Character, DivisorClass)],
    oracle: &dyn H0Oracle,
) -> Result<Vec<CharacterDimension>> {
    let trivial = line_bundles
        .first()
        .map(|(_, c, _)| Character::from_coords(vec![0; c.coords().len()]))
        .unwrap_or_else(|| AbelianGroup::trivial().trivial_character());
    let mut out = vec![CharacterDimension {
        label: "1".into(),
        character: trivial,
        class: total.to_string(),
        dimension: oracle.h0(total)?,
    }];
    for (label, chi, l) in line_bundles {
        let c = total.try_sub(l)?;
        out.push(CharacterDimension {
            label: label.clone(),
            character: chi.clone(),
            class: c.to_string(),
            dimension: oracle.h0(&c)?,
        });
    }
    Ok(out)
}

/// Everything computed for a `Z_2^2`-cover of a rational surface, through the
/// bicanonical map of its minimal model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Z22CoverReport {
    pub validation: ValidationReport,
    pub adjoint_dimensions: Vec<(String, usize)>,
    pub cover: CoverInvariants,
    pub blowdowns: i64,
    pub minimal: CoverInvariants,
    pub bicanonical_class: String,
    pub eigentable: Vec<CharacterDimension>,
    pub p2: usize,
    pub kernel: Vec<GroupElement>,
    pub verdict: BicanonicalVerdict,
}

/// Full computation for a `Z_2^2`-cover `X -> Σ`: invariants, the minimal
/// model after `blowdowns` contractions of `(-1)`-curves, the character
/// decomposition of `H^0(2K_X)` and the kernel of the action on it.
pub fn z22_bicanonical_report(
    data: &BranchDataSurface,
    oracle: &dyn H0Oracle,
    blowdowns: i64,
) -> Result<Z22CoverReport> {
    let validation = data.validate();
    let cover = z22_surface_cover_invariants(data, oracle)?;
    let lat = data.d[0].lattice();
    let k = lat.canonical_class()?;
    let adjoint_dimensions = data
        .line_bundles()
        .iter()
        .map(|l| {
            let c = &k + l;
            Ok((c.to_string(), oracle.h0(&c)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let minimal = CoverInvariants::new(cover.k2 + blowdowns, cover.chi, cover.pg)?;
    let total = &k.scaled(2) + &data.branch_total();
    let labelled: Vec<(String, Character, DivisorClass)> = data
        .line_bundles()
        .into_iter()
        .enumerate()
        .map(|(i, l)| (format!("χ{}", i + 1), BranchDataSurface::character(i + 1), l))
        .collect();
    let eigentable = projection_decomposition(&total, &labelled, oracle)?;
    let p2: usize = eigentable.iter().map(|e| e.dimension).sum();
    let expected = minimal.chi + minimal.k2;
    if p2 as i64 != expected {
        return Err(Error::Inconsistent(format!(
            "sum of eigenspace dimensions is {p2}, but chi + K^2 = {expected} on the minimal model"
        )));
    }
    let contributing: Vec<Character> = eigentable
        .iter()
        .filter(|e| e.dimension > 0)
        .map(|e| e.character.clone())
        .collect();
    let kernel = common_kernel(&BranchDataSurface::group(), &contributing)?;
    let verdict = degree_verdict(&kernel, minimal.k2, false);
    Ok(Z22CoverReport {
        validation,
        adjoint_dimensions,
        cover,
        blowdowns,
        minimal,
        bicanonical_class: total.to_string(),
        eigentable,
        p2,
        kernel: kernel.elements().iter().cloned().collect(),
        verdict,
    })
}
