//! Dimensions of linear systems of plane curves with assigned
//! multiplicities at explicit rational points.
//!
//! `h0` of a class `d l - sum m_i e_i` on the blowup of the plane is the
//! number of degree-`d` forms minus the rank of the interpolation matrix
//! whose rows are all partial derivatives of order `< m_i` at `P_i`. The
//! rank is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::covers::H0Oracle;
use crate::exact::rank;
use crate::picard::{DivisorClass, LatticeKind};
use crate::{Error, Result};

pub type ProjectivePoint = [BigRational; 3];

/// The point `R` lies on the line through `P` and `Q` (indices into the configuration).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Incidence {
    pub line: (usize, usize),
    pub point: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointConfig {
    points: Vec<ProjectivePoint>,
    incidences: Vec<Incidence>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn det3(a: &ProjectivePoint, b: &ProjectivePoint, c: &ProjectivePoint) -> BigRational {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn proportional(a: &ProjectivePoint, b: &ProjectivePoint) -> bool {
    (0..3).all(|i| (i + 1..3).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

impl PointConfig {
    /// Points must be nonzero and pairwise distinct; every declared incidence
    /// is verified exactly.
    pub fn new(points: Vec<ProjectivePoint>, incidences: Vec<Incidence>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if p.iter().all(Zero::is_zero) {
                return Err(Error::InvalidConfiguration(format!("point {} is (0:0:0)", i + 1)));
            }
            for (j, q) in points.iter().enumerate().take(i) {
                if proportional(p, q) {
                    return Err(Error::InvalidConfiguration(format!(
                        "points {} and {} coincide",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let cfg = PointConfig { points, incidences };
        for inc in &cfg.incidences {
            let n = cfg.points.len();
            if inc.line.0 >= n || inc.line.1 >= n || inc.point >= n {
                return Err(Error::InvalidConfiguration(
                    "incidence refers to a missing point".into(),
                ));
            }
            if !cfg.collinear(inc.line.0, inc.line.1, inc.point) {
                return Err(Error::InvalidConfiguration(format!(
                    "P{} is not on the line P{}P{}",
                    inc.point + 1,
                    inc.line.0 + 1,
                    inc.line.1 + 1
                )));
            }
        }
        Ok(cfg)
    }

    pub fn from_integers(points: &[[i64; 3]], incidences: Vec<Incidence>) -> Result<Self> {
        let pts = points.iter().map(|p| [rat(p[0]), rat(p[1]), rat(p[2])]).collect();
        PointConfig::new(pts, incidences)
    }

    /// The vertices `P1..P4` of a complete quadrilateral together with the
    /// two diagonal points `P5 = P1P2 ∩ P3P4` and `P6 = P1P4 ∩ P2P3`.
    pub fn quadrilateral() -> Self {
        PointConfig::from_integers(
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 1, 0], [0, 1, 1]],
            vec![
                Incidence { line: (0, 1), point: 4 },
                Incidence { line: (2, 3), point: 4 },
                Incidence { line: (0, 3), point: 5 },
                Incidence { line: (1, 2), point: 5 },
            ],
        )
        .expect("quadrilateral configuration is valid")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn incidences(&self) -> &[Incidence] {
        &self.incidences
    }

    pub fn collinear(&self, i: usize, j: usize, k: usize) -> bool {
        det3(&self.points[i], &self.points[j], &self.points[k]).is_zero()
    }

    /// Image of the configuration under the projectivity `x ↦ M x`.
    pub fn transformed(&self, m: &[[BigRational; 3]; 3]) -> Result<PointConfig> {
        let rows: [ProjectivePoint; 3] = [m[0].clone(), m[1].clone(), m[2].clone()];
        if det3(&rows[0], &rows[1], &rows[2]).is_zero() {
            return Err(Error::InvalidArgument("projectivity is singular".into()));
        }
        let points = self
            .points
            .iter()
            .map(|p| std::array::from_fn(|i| (0..3).map(|j| &m[i][j] * &p[j]).fold(BigRational::zero(), |a, b| a + b)))
            .collect();
        PointConfig::new(points, self.incidences.clone())
    }

    /// Primitive integer representative of point `i`.
    fn integral_point(&self, i: usize) -> [BigInt; 3] {
        let p = &self.points[i];
        let lcm = p.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = p
            .iter()
            .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        [&ints[0] / &g, &ints[1] / &g, &ints[2] / &g]
    }
}

/// Plane curves of degree `degree` with multiplicity at least
/// `multiplicities[i]` at point `i` of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FatPointSystem {
    pub degree: u32,
    pub multiplicities: Vec<u32>,
}

impl FatPointSystem {
    pub fn new(degree: u32, multiplicities: Vec<u32>) -> Self {
        FatPointSystem { degree, multiplicities }
    }

    /// Dimension expected for points in general position (may be negative).
    pub fn expected_dimension(&self) -> i64 {
        let d = self.degree as i64;
        (d + 1) * (d + 2) / 2
            - self
                .multiplicities
                .iter()
                .map(|&m| (m as i64) * (m as i64 + 1) / 2)
                .sum::<i64>()
    }
}

fn falling(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (n - k + 1..=n).fold(BigInt::one(), |acc, x| acc * x)
}

fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Exact `h0` of a fat-point system.
pub fn h0_fat_points(cfg: &PointConfig, sys: &FatPointSystem) -> Result<usize> {
    if sys.multiplicities.len() > cfg.len() {
        return Err(Error::DimensionMismatch {
            expected: cfg.len(),
            got: sys.multiplicities.len(),
        });
    }
    let mons = monomials(sys.degree);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (idx, &m) in sys.multiplicities.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let p = cfg.integral_point(idx);
        for order in 0..m.min(sys.degree + 1) {
            for dx in (0..=order).rev() {
                for dy in (0..=order - dx).rev() {
                    let dz = order - dx - dy;
                    let row = mons
                        .iter()
                        .map(|&[a, b, c]| {
                            let coeff = falling(a, dx) * falling(b, dy) * falling(c, dz);
                            if coeff.is_zero() {
                                return coeff;
                            }
                            coeff * p[0].pow(a - dx) * p[1].pow(b - dy) * p[2].pow(c - dz)
                        })
                        .collect::<Vec<_>>();
                    rows.push(row);
                }
            }
        }
    }
    // a point of multiplicity > d forces the zero form; the loop above
    // already includes every derivative of order <= d in that case
    Ok(mons.len() - rank(rows))
}

/// One fixed-component removal: `e_i` was split off because `class . e_i < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedComponentStep {
    pub removed: String,
    pub intersection: i64,
    pub remaining: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H0Report {
    pub value: usize,
    pub removals: Vec<FixedComponentStep>,
    pub note: Option<String>,
}

/// `h0` of a class `d l - sum m_i e_i` on the blowup at the configuration's
/// points. Exceptional curves with `class . e_i < 0` are removed as fixed
/// components first; each removal is recorded.
pub fn h0_class(cfg: &PointConfig, cls: &DivisorClass) -> Result<H0Report> {
    let n = match cls.kind() {
        LatticeKind::Blowup { points } => *points,
        other => {
            return Err(Error::LatticeMismatch {
                left: "blowup of P2".into(),
                right: other.to_string(),
            })
        }
    };
    if n != cfg.len() {
        return Err(Error::DimensionMismatch {
            expected: cfg.len(),
            got: n,
        });
    }
    let lat = cls.lattice();
    let mut cur = cls.clone();
    let mut removals = Vec::new();
    while let Some(i) = (1..=n).find(|&i| cur.coeffs()[i] > 0) {
        let e = lat.basis(i);
        let dot = lat.intersect(&cur, &e)?;
        if dot >= 0 {
            return Err(Error::Inconsistent(format!(
                "cannot split off e{i}: class·e{i} = {dot} is not negative"
            )));
        }
        cur = &cur - &e;
        removals.push(FixedComponentStep {
            removed: format!("e{i}"),
            intersection: dot,
            remaining: cur.to_string(),
        });
    }
    let d = cur.coeffs()[0];
    if d < 0 {
        return Ok(H0Report {
            value: 0,
            removals,
            note: Some("negative degree".into()),
        });
    }
    let sys = FatPointSystem::new(d as u32, cur.coeffs()[1..].iter().map(|&c| (-c) as u32).collect());
    Ok(H0Report {
        value: h0_fat_points(cfg, &sys)?,
        removals,
        note: None,
    })
}

impl H0Oracle for PointConfig {
    fn h0(&self, class: &DivisorClass) -> Result<usize> {
        h0_class(self, class).map(|r| r.value)
    }
}

/// Projectivity with integer entries.
pub fn integer_projectivity(m: [[i64; 3]; 3]) -> [[BigRational; 3]; 3] {
    m.map(|row| row.map(rat))
}

/// Indices of the points on each line spanned by two configuration points.
pub fn lines_with_points(cfg: &PointConfig) -> BTreeMap<(usize, usize), Vec<usize>> {
    let mut out = BTreeMap::new();
    for i in 0..cfg.len() {
        for j in i + 1..cfg.len() {
            let on: Vec<usize> = (0..cfg.len())
                .filter(|&k| k == i || k == j || cfg.collinear(i, j, k))
                .collect();
            if on[0] == i && on[1] == j {
                out.insert((i, j), on);
            }
        }
    }
    out
}
