use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use bicanon::beauville::{self, BicanonicalReport};
use bicanon::covers::{
    double_cover_invariants, validate_building_data, BranchDataP1, BranchDataSurface, BranchEntry, BranchLocus,
    CoverInvariants, DoubleCoverInput, Z22CoverReport,
};
use bicanon::exact::leading_minors;
use bicanon::fermat::{self, FermatReport};
use bicanon::group::{AbelianGroup, Automorphism};
use bicanon::linsys::{h0_class, h0_fat_points, FatPointSystem, H0Report, Incidence, PointConfig};
use bicanon::picard::{self, quadrilateral, DivisorClass, Lattice, LatticeKind};
use bicanon::proofcheck::{self, CaseRecord, Lemma32Report};
use serde::Serialize;

use crate::names::{eigentable_tuple, element_set, verdict_phrase, Namer};
use crate::scenario::{
    ClassExpr, CurveSpec, DoubleCoverSpec, LatticeRef, LatticeSpec, LinsysSpec, Payload, PointsSpec,
    ProductQuotientSpec, ProofPart, ProofcheckSpec, Scenario, SurfaceCoverSpec,
};

#[derive(Debug, Serialize)]
pub struct Output {
    pub scenario: String,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub result: Body,
    pub summary: String,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Body {
    DoubleCover(DoubleCoverResult),
    SurfaceCover(Box<Z22CoverReport>),
    ProductQuotient(Box<ProductQuotientResult>),
    Fermat(Box<FermatReport>),
    Proofcheck(ProofcheckResult),
    Linsys(LinsysResult),
    Lattice(LatticeResult),
}

#[derive(Debug, Serialize)]
pub struct DoubleCoverResult {
    pub input: DoubleCoverInput,
    pub invariants: CoverInvariants,
    pub corollary_holds: bool,
}

#[derive(Debug, Serialize)]
pub struct ProductQuotientResult {
    pub group: Vec<u32>,
    pub line_bundles: [Vec<i64>; 2],
    pub line_bundles_derived: [bool; 2],
    pub report: BicanonicalReport,
}

#[derive(Debug, Default, Serialize)]
pub struct ProofcheckResult {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cases: Option<Vec<CaseRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reider: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma: Option<Lemma32Report>,
}

#[derive(Debug, Serialize)]
pub struct ClassDimension {
    pub class: String,
    pub h0: H0Report,
}

#[derive(Debug, Serialize)]
pub struct SystemDimension {
    pub degree: u32,
    pub multiplicities: Vec<u32>,
    pub expected: i64,
    pub h0: usize,
}

#[derive(Debug, Serialize)]
pub struct LinsysResult {
    pub points: usize,
    pub classes: BTreeMap<String, ClassDimension>,
    pub systems: Vec<SystemDimension>,
}

#[derive(Debug, Serialize)]
pub struct ClassSummary {
    pub class: String,
    pub square: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_degree: Option<i64>,
}

#[derive(Debug, Serialize)]
pub struct PairProduct {
    pub left: String,
    pub right: String,
    pub product: i64,
}

#[derive(Debug, Serialize)]
pub struct DivisibilityResult {
    pub class: String,
    pub by: i64,
    pub holds: bool,
}

#[derive(Debug, Serialize)]
pub struct DefinitenessResult {
    pub matrix: Vec<Vec<i64>>,
    pub leading_minors: Vec<String>,
    pub negative_definite: bool,
}

#[derive(Debug, Serialize)]
pub struct LatticeResult {
    pub lattice: String,
    pub classes: BTreeMap<String, ClassSummary>,
    pub pairs: Vec<PairProduct>,
    pub divisible: Vec<DivisibilityResult>,
    pub negative_definite: Vec<DefinitenessResult>,
}

/// How class expressions are resolved: basis labels always, the named
/// quadrilateral classes only on that configuration.
struct Resolver {
    lattice: Lattice,
    catalog: bool,
}

impl Resolver {
    fn name(&self, name: &str) -> Result<DivisorClass> {
        if let Ok(i) = self.lattice.index_of(name) {
            return Ok(self.lattice.basis(i));
        }
        if self.catalog {
            if let Ok(c) = quadrilateral::class(name) {
                return Ok(c);
            }
        }
        let mut known: Vec<String> = self.lattice.labels().to_vec();
        if self.catalog {
            known = quadrilateral::NAMES.iter().map(|s| s.to_string()).collect();
        }
        bail!("unknown class name `{name}` (known: {})", known.join(", "))
    }

    fn term(&self, term: &str) -> Result<DivisorClass> {
        let t = term.trim();
        let (sign, rest) = match t.strip_prefix('-') {
            Some(r) => (-1, r.trim_start()),
            None => (1, t.strip_prefix('+').unwrap_or(t).trim_start()),
        };
        let split = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let (digits, name) = rest.split_at(split);
        let k: i64 = if digits.is_empty() {
            1
        } else {
            digits.parse().with_context(|| format!("bad coefficient in `{term}`"))?
        };
        if name.is_empty() {
            bail!("term `{term}` has no class name");
        }
        Ok(self.name(name.trim())?.scaled(sign * k))
    }

    fn resolve(&self, expr: &ClassExpr) -> Result<DivisorClass> {
        let mut acc = self.lattice.zero();
        match expr {
            ClassExpr::Terms(terms) => {
                for t in terms {
                    acc = &acc + &self.term(t)?;
                }
            }
            ClassExpr::Coefficients(map) => {
                for (name, k) in map {
                    acc = &acc + &self.name(name)?.scaled(*k);
                }
            }
        }
        Ok(acc)
    }
}

fn lattice_of(r: &LatticeRef) -> Result<Resolver> {
    match r {
        LatticeRef::Named(n) => match n.as_str() {
            "quadrilateral" => Ok(Resolver {
                lattice: quadrilateral::lattice(),
                catalog: true,
            }),
            "quadric" => Ok(Resolver {
                lattice: Lattice::quadric(),
                catalog: false,
            }),
            "plane" => Ok(Resolver {
                lattice: Lattice::blowup(0),
                catalog: false,
            }),
            other => bail!("unknown lattice `{other}` (expected quadrilateral, quadric, plane or an explicit lattice)"),
        },
        LatticeRef::Explicit(kind) => Ok(Resolver {
            lattice: Lattice::from_kind(kind)?,
            catalog: false,
        }),
    }
}

/// The configuration and whether the quadrilateral names apply to it.
fn config(points: &Option<PointsSpec>) -> Result<(PointConfig, bool)> {
    match points {
        None => Ok((PointConfig::quadrilateral(), true)),
        Some(p) => {
            let n = p.coordinates.len();
            let incidences = p
                .incidences
                .iter()
                .map(|i| {
                    let idx = |k: usize| {
                        if k == 0 || k > n {
                            Err(anyhow!("incidence refers to point {k}, but there are {n} points"))
                        } else {
                            Ok(k - 1)
                        }
                    };
                    Ok(Incidence {
                        line: (idx(i.line[0])?, idx(i.line[1])?),
                        point: idx(i.point)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((PointConfig::from_integers(&p.coordinates, incidences)?, false))
        }
    }
}

fn double_cover(spec: &DoubleCoverSpec) -> Result<(DoubleCoverResult, String)> {
    let input = match (&spec.m, &spec.lattice) {
        (Some(m), Some(lat)) => {
            if spec.k2_base.is_some() || spec.m_squared.is_some() || spec.m_dot_k.is_some() {
                bail!("give either `lattice` and `m` or the numbers `k2_base`, `m_squared`, `m_dot_k`, not both");
            }
            let r = lattice_of(lat)?;
            let m = r.resolve(m).context("in `m`")?;
            DoubleCoverInput::from_class(spec.chi_base, spec.pg_base, &m, spec.h0_k_plus_m)?
        }
        (None, None) => match (spec.k2_base, spec.m_squared, spec.m_dot_k) {
            (Some(k2), Some(m2), Some(mk)) => DoubleCoverInput {
                chi_base: spec.chi_base,
                pg_base: spec.pg_base,
                k2_base: k2,
                m_squared: m2,
                m_dot_k: mk,
                h0_k_plus_m: spec.h0_k_plus_m,
            },
            _ => bail!("missing `k2_base`, `m_squared` or `m_dot_k` (or give `lattice` and `m`)"),
        },
        _ => bail!("`lattice` and `m` must be given together"),
    };
    let invariants = double_cover_invariants(&input)?;
    let corollary_holds = proofcheck::check_corollary(invariants.k2, invariants.q)?;
    let summary = format!(
        "K_Y²={}, χ={}, p_g={}, q={}; K_Y² ≥ 16(q−1) {}",
        invariants.k2,
        invariants.chi,
        invariants.pg,
        invariants.q,
        if corollary_holds { "holds" } else { "fails" }
    );
    Ok((
        DoubleCoverResult {
            input,
            invariants,
            corollary_holds,
        },
        summary,
    ))
}

fn surface_cover(spec: &SurfaceCoverSpec) -> Result<(Z22CoverReport, String)> {
    let (cfg, catalog) = config(&spec.points)?;
    let r = Resolver {
        lattice: Lattice::blowup(cfg.len()),
        catalog,
    };
    let d = [
        r.resolve(&spec.branch[0]).context("in `branch[0]`")?,
        r.resolve(&spec.branch[1]).context("in `branch[1]`")?,
        r.resolve(&spec.branch[2]).context("in `branch[2]`")?,
    ];
    let l1 = r.resolve(&spec.line_bundles[0]).context("in `line_bundles[0]`")?;
    let l2 = r.resolve(&spec.line_bundles[1]).context("in `line_bundles[1]`")?;
    let data = BranchDataSurface::new(d, l1, l2)?;
    let validation = validate_building_data(&data);
    if let Some(f) = validation.first_failure() {
        bail!("building data validation failed: {} ({})", f.relation, f.detail);
    }
    let report = bicanon::covers::z22_bicanonical_report(&data, &cfg, spec.blowdowns)?;
    let namer = Namer::surface();
    let dims: Vec<usize> = report.eigentable.iter().map(|e| e.dimension).collect();
    let summary = format!(
        "K²={}, p_g={}, p₂={}, eigentable {}, {}",
        report.minimal.k2,
        report.minimal.pg,
        report.p2,
        eigentable_tuple(&dims),
        verdict_phrase(&report.verdict, &namer)
    );
    Ok((report, summary))
}

fn curve(group: &AbelianGroup, spec: &CurveSpec, which: &str) -> Result<(BranchDataP1, bool)> {
    let entries = spec
        .branch
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let element = group
                .element(&e.element)
                .with_context(|| format!("in `{which}.branch[{k}].element`"))?;
            let locus = match (&e.points, e.degree) {
                (Some(p), None) => BranchLocus::Points(p.clone()),
                (None, Some(d)) => BranchLocus::Degree(d),
                _ => bail!("`{which}.branch[{k}]` needs exactly one of `points` or `degree`"),
            };
            Ok(BranchEntry { element, locus })
        })
        .collect::<Result<Vec<_>>>()?;
    let (line_bundles, derived) = match &spec.line_bundles {
        Some(l) => (l.clone(), false),
        None => {
            let mut out = Vec::new();
            for i in 0..group.rank() {
                let chi = group.dual_generator(i);
                let w: u32 = entries
                    .iter()
                    .filter(|e| group.pair(&chi, &e.element) != 0)
                    .map(|e| e.locus.degree())
                    .sum();
                if !w.is_multiple_of(2) {
                    bail!("{which}: cannot derive L{}: branch weight {w} is odd", i + 1);
                }
                out.push(w as i64 / 2);
            }
            (out, true)
        }
    };
    let data = BranchDataP1::new(group.clone(), entries, line_bundles).with_context(|| format!("in `{which}`"))?;
    Ok((data, derived))
}

fn product_quotient(spec: &ProductQuotientSpec) -> Result<(ProductQuotientResult, String)> {
    let group = AbelianGroup::new(&spec.group).context("in `group`")?;
    let psi = Automorphism::from_images(&group, &spec.psi).context("in `psi`")?;
    let (c1, d1) = curve(&group, &spec.curve1, "curve1")?;
    let (c2, d2) = curve(&group, &spec.curve2, "curve2")?;
    let line_bundles = [c1.line_bundles().to_vec(), c2.line_bundles().to_vec()];
    let pq = beauville::ProductQuotientSpec::new(psi, c1, c2)?;
    let report = beauville::bicanonical_report(&pq)?;
    let namer = Namer::generic();
    let dims: Vec<usize> = report.eigentable.contributing().map(|e| e.dimension).collect();
    let tail = match report.verdict.degree() {
        Some(1) => "degree 1 (birational)".to_string(),
        Some(d) => format!("degree {d}"),
        None => verdict_phrase(&report.verdict, &namer),
    };
    let summary = format!(
        "K²={}, p_g={}, p₂={}, eigentable {}, kernel {}, {}",
        report.invariants.k2,
        report.invariants.pg,
        report.p2,
        eigentable_tuple(&dims),
        element_set(&report.kernel, &namer),
        tail
    );
    Ok((
        ProductQuotientResult {
            group: spec.group.clone(),
            line_bundles,
            line_bundles_derived: [d1, d2],
            report,
        },
        summary,
    ))
}

fn fermat_example() -> Result<(FermatReport, String)> {
    let report = fermat::fermat_report()?;
    let namer = Namer::generic();
    let summary = format!(
        "K²={}, p_g={}, {} invariant monomials, residual kernel {}, {}",
        report.invariants.k2,
        report.invariants.pg,
        report.invariant_monomials.len(),
        element_set(&report.residual_kernel, &namer),
        verdict_phrase(&report.verdict, &namer)
    );
    Ok((report, summary))
}

fn proof(spec: &ProofcheckSpec) -> Result<(ProofcheckResult, String)> {
    let mut out = ProofcheckResult::default();
    let mut parts = Vec::new();
    let mut wanted = spec.parts.clone();
    wanted.sort();
    wanted.dedup();
    for part in wanted {
        match part {
            ProofPart::Cases => {
                let cases = proofcheck::run_case_table()?;
                let n = cases.iter().filter(|c| c.is_contradiction()).count();
                parts.push(format!("{} double-cover cases, {n} contradictions", cases.len()));
                out.cases = Some(cases);
            }
            ProofPart::Reider => {
                let ms = proofcheck::reider_enumeration(9)?;
                let list: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                parts.push(format!("Reider multiples {{{}}}", list.join(", ")));
                out.reider = Some(ms);
            }
            ProofPart::Lemma => {
                let lemma = proofcheck::lemma32_cases()?;
                parts.push(format!(
                    "K·L0={}, L0²={}, excluded A,B,θ matrix {}",
                    lemma.k_dot_l0,
                    lemma.l0_squared,
                    if lemma.excluded_negative_definite {
                        "negative definite"
                    } else {
                        "not negative definite"
                    }
                ));
                out.lemma = Some(lemma);
            }
        }
    }
    Ok((out, parts.join("; ")))
}

fn linsys(spec: &LinsysSpec) -> Result<(LinsysResult, String)> {
    let (cfg, catalog) = config(&spec.points)?;
    let r = Resolver {
        lattice: Lattice::blowup(cfg.len()),
        catalog,
    };
    let mut classes = BTreeMap::new();
    for (name, expr) in &spec.classes {
        let c = r.resolve(expr).with_context(|| format!("in `classes.{name}`"))?;
        let h0 = h0_class(&cfg, &c)?;
        classes.insert(
            name.clone(),
            ClassDimension {
                class: c.to_string(),
                h0,
            },
        );
    }
    let mut systems = Vec::new();
    for (k, s) in spec.systems.iter().enumerate() {
        if s.multiplicities.len() != cfg.len() {
            bail!(
                "`systems[{k}].multiplicities` has {} entries for {} points",
                s.multiplicities.len(),
                cfg.len()
            );
        }
        let sys = FatPointSystem::new(s.degree, s.multiplicities.clone());
        systems.push(SystemDimension {
            degree: s.degree,
            multiplicities: s.multiplicities.clone(),
            expected: sys.expected_dimension(),
            h0: h0_fat_points(&cfg, &sys)?,
        });
    }
    let mut parts: Vec<String> = classes.iter().map(|(n, c)| format!("h⁰({n})={}", c.h0.value)).collect();
    parts.extend(
        systems
            .iter()
            .map(|s| format!("h⁰(d={}; {:?})={}", s.degree, s.multiplicities, s.h0)),
    );
    Ok((
        LinsysResult {
            points: cfg.len(),
            classes,
            systems,
        },
        parts.join(", "),
    ))
}

fn lattice(spec: &LatticeSpec) -> Result<(LatticeResult, String)> {
    let r = lattice_of(&spec.lattice)?;
    let lat = &r.lattice;
    let k = match lat.kind() {
        LatticeKind::Custom { .. } => None,
        _ => Some(lat.canonical_class()?),
    };
    let mut resolved = BTreeMap::new();
    let mut classes = BTreeMap::new();
    for (name, expr) in &spec.classes {
        let c = r.resolve(expr).with_context(|| format!("in `classes.{name}`"))?;
        let canonical_degree = k.as_ref().map(|k| lat.intersect(k, &c)).transpose()?;
        classes.insert(
            name.clone(),
            ClassSummary {
                class: c.to_string(),
                square: lat.intersect(&c, &c)?,
                canonical_degree,
            },
        );
        resolved.insert(name.clone(), c);
    }
    let lookup = |n: &str| -> Result<&DivisorClass> {
        resolved
            .get(n)
            .ok_or_else(|| anyhow!("`{n}` is not one of the named classes"))
    };
    let pairs = spec
        .pairs
        .iter()
        .map(|[a, b]| {
            Ok(PairProduct {
                left: a.clone(),
                right: b.clone(),
                product: lat.intersect(lookup(a)?, lookup(b)?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let divisible = spec
        .divisible
        .iter()
        .map(|d| {
            Ok(DivisibilityResult {
                class: d.class.clone(),
                by: d.by,
                holds: picard::is_divisible_by(lookup(&d.class)?, d.by)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let negative_definite = spec
        .negative_definite
        .iter()
        .map(|m| {
            Ok(DefinitenessResult {
                matrix: m.clone(),
                negative_definite: picard::is_negative_definite(m)?,
                leading_minors: leading_minors(m).iter().map(|x| x.to_string()).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = format!(
        "{} classes on {}, {} products, {} divisibility checks, {} definiteness checks",
        classes.len(),
        lat.kind(),
        pairs.len(),
        divisible.len(),
        negative_definite.len()
    );
    Ok((
        LatticeResult {
            lattice: lat.kind().to_string(),
            classes,
            pairs,
            divisible,
            negative_definite,
        },
        summary,
    ))
}

pub fn execute(scenario: Scenario) -> Result<Output> {
    let kind = scenario.payload.kind();
    let (result, summary) = match &scenario.payload {
        Payload::DoubleCover(s) => double_cover(s).map(|(r, s)| (Body::DoubleCover(r), s))?,
        Payload::SurfaceCover(s) => surface_cover(s).map(|(r, s)| (Body::SurfaceCover(Box::new(r)), s))?,
        Payload::ProductQuotient(s) => product_quotient(s).map(|(r, s)| (Body::ProductQuotient(Box::new(r)), s))?,
        Payload::Fermat(_) => fermat_example().map(|(r, s)| (Body::Fermat(Box::new(r)), s))?,
        Payload::Proofcheck(s) => proof(s).map(|(r, s)| (Body::Proofcheck(r), s))?,
        Payload::Linsys(s) => linsys(s).map(|(r, s)| (Body::Linsys(r), s))?,
        Payload::Lattice(s) => lattice(s).map(|(r, s)| (Body::Lattice(r), s))?,
    };
    Ok(Output {
        scenario: scenario.name,
        kind,
        description: scenario.description,
        result,
        summary,
    })
}
