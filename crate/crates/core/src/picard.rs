//! Divisor classes on Picard lattices: blowups of the plane, the quadric
//! `P^1 x P^1`, and small custom lattices given by a Gram matrix.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::exact::leading_minors;
use crate::{Error, Result};

/// Which lattice a class lives on. Two classes are compatible exactly when
/// their kinds are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum LatticeKind {
    /// `P^2` blown up at `points` distinct points; basis `l, e1, ..., en`.
    Blowup {
        points: usize,
    },
    /// `P^1 x P^1`; basis `h1, h2` (the two rulings).
    Quadric,
    Custom {
        labels: Vec<String>,
        gram: Vec<Vec<i64>>,
    },
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeKind::Blowup { points } => write!(f, "Bl_{points}(P2)"),
            LatticeKind::Quadric => write!(f, "P1xP1"),
            LatticeKind::Custom { labels, .. } => write!(f, "custom[{}]", labels.join(",")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lattice {
    kind: LatticeKind,
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn blowup(n: usize) -> Lattice {
        let mut labels = vec!["l".to_string()];
        labels.extend((1..=n).map(|i| format!("e{i}")));
        let gram = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| {
                        if i != j {
                            0
                        } else if i == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect();
        Lattice {
            kind: LatticeKind::Blowup { points: n },
            labels,
            gram,
        }
    }

    pub fn quadric() -> Lattice {
        Lattice {
            kind: LatticeKind::Quadric,
            labels: vec!["h1".into(), "h2".into()],
            gram: vec![vec![0, 1], vec![1, 0]],
        }
    }

    pub fn custom(labels: &[&str], gram: Vec<Vec<i64>>) -> Result<Lattice> {
        let n = labels.len();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidLattice("Gram matrix shape does not match labels".into()));
        }
        check_symmetric(&gram)?;
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        Ok(Lattice {
            kind: LatticeKind::Custom {
                labels: labels.clone(),
                gram: gram.clone(),
            },
            labels,
            gram,
        })
    }

    pub fn from_kind(kind: &LatticeKind) -> Result<Lattice> {
        match kind {
            LatticeKind::Blowup { points } => Ok(Lattice::blowup(*points)),
            LatticeKind::Quadric => Ok(Lattice::quadric()),
            LatticeKind::Custom { labels, gram } => {
                let l: Vec<&str> = labels.iter().map(String::as_str).collect();
                Lattice::custom(&l, gram.clone())
            }
        }
    }

    pub fn kind(&self) -> &LatticeKind {
        &self.kind
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn class(&self, coeffs: &[i64]) -> Result<DivisorClass> {
        if coeffs.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: coeffs.len(),
            });
        }
        Ok(DivisorClass {
            kind: self.kind.clone(),
            coeffs: coeffs.to_vec(),
        })
    }

    /// Class from `(label, coefficient)` pairs; repeated labels accumulate.
    pub fn class_from_terms(&self, terms: &[(&str, i64)]) -> Result<DivisorClass> {
        let mut coeffs = vec![0; self.rank()];
        for (label, c) in terms {
            let i = self.index_of(label)?;
            coeffs[i] += c;
        }
        self.class(&coeffs)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn basis(&self, i: usize) -> DivisorClass {
        let mut coeffs = vec![0; self.rank()];
        coeffs[i] = 1;
        DivisorClass {
            kind: self.kind.clone(),
            coeffs,
        }
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass {
            kind: self.kind.clone(),
            coeffs: vec![0; self.rank()],
        }
    }

    /// `-3l + e1 + ... + en` on a blowup, `-2h1 - 2h2` on the quadric.
    pub fn canonical_class(&self) -> Result<DivisorClass> {
        match &self.kind {
            LatticeKind::Blowup { points } => {
                let mut c = vec![1; points + 1];
                c[0] = -3;
                self.class(&c)
            }
            LatticeKind::Quadric => self.class(&[-2, -2]),
            LatticeKind::Custom { .. } => Err(Error::InvalidLattice(
                "canonical class is only known for blowups and the quadric".into(),
            )),
        }
    }

    fn check(&self, a: &DivisorClass) -> Result<()> {
        if a.kind != self.kind {
            return Err(Error::LatticeMismatch {
                left: self.kind.to_string(),
                right: a.kind.to_string(),
            });
        }
        Ok(())
    }

    /// `a^T * gram * b`.
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        Ok(bilinear(&self.gram, &a.coeffs, &b.coeffs))
    }

    /// Intersection of the pullbacks of `a` and `b` along a finite map of degree `deg`.
    pub fn pullback_numerics(&self, deg: i64, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        if deg < 1 {
            return Err(Error::InvalidArgument(format!("map degree {deg} must be at least 1")));
        }
        Ok(deg * self.intersect(a, b)?)
    }

    pub fn format_class(&self, a: &DivisorClass) -> String {
        format_terms(&self.labels, &a.coeffs)
    }
}

fn bilinear(gram: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    gram.iter()
        .zip(a)
        .map(|(row, &ai)| ai * row.iter().zip(b).map(|(&g, &bj)| g * bj).sum::<i64>())
        .sum()
}

fn check_symmetric(gram: &[Vec<i64>]) -> Result<()> {
    let n = gram.len();
    for (i, row) in gram.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        for (j, &x) in row.iter().enumerate() {
            if x != gram[j][i] {
                return Err(Error::InvalidArgument(format!("matrix is not symmetric at ({i},{j})")));
            }
        }
    }
    Ok(())
}

fn format_terms(labels: &[String], coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (label, &c) in labels.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = c.abs();
        if mag == 1 {
            out.push_str(&format!("{sign}{label}"));
        } else {
            out.push_str(&format!("{sign}{mag}{label}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A divisor class: integer coordinates in the fixed basis of its lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DivisorClass {
    kind: LatticeKind,
    coeffs: Vec<i64>,
}

impl DivisorClass {
    pub fn kind(&self) -> &LatticeKind {
        &self.kind
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::from_kind(&self.kind).expect("kind was validated on construction")
    }

    fn same_lattice(&self, other: &DivisorClass) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::LatticeMismatch {
                left: self.kind.to_string(),
                right: other.kind.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.same_lattice(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(DivisorClass {
            kind: self.kind.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.try_add(&-other)
    }

    pub fn scaled(&self, k: i64) -> DivisorClass {
        DivisorClass {
            kind: self.kind.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn dot(&self, other: &DivisorClass) -> Result<i64> {
        self.lattice().intersect(self, other)
    }

    pub fn square(&self) -> i64 {
        self.dot(self).expect("a class is compatible with itself")
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = match &self.kind {
            LatticeKind::Custom { labels, .. } => labels.clone(),
            _ => self.lattice().labels,
        };
        f.write_str(&format_terms(&labels, &self.coeffs))
    }
}

// Operators panic on a lattice mismatch; use `try_add`/`try_sub` where the
// inputs are not known to share a lattice.
impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Add<&DivisorClass> for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        &self + rhs
    }
}

impl Sub<&DivisorClass> for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        &self - rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scaled(-1)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scaled(-1)
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scaled(self)
    }
}

/// Negative definiteness by the signs of the leading principal minors
/// (`(-1)^k det_k > 0` for every `k`).
pub fn is_negative_definite(gram: &[Vec<i64>]) -> Result<bool> {
    check_symmetric(gram)?;
    Ok(leading_minors(gram)
        .iter()
        .enumerate()
        .all(|(k, d)| if k % 2 == 0 { d.is_negative() } else { d.is_positive() }))
}

/// Whether every coefficient of `a` is divisible by `k`.
pub fn is_divisible_by(a: &DivisorClass, k: i64) -> Result<bool> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("divisor {k} must be at least 2")));
    }
    Ok(a.coeffs.iter().all(|c| c % k == 0))
}

/// Named classes on the blowup of the plane at the six points of the
/// complete quadrilateral: `P1..P4` the vertices, `P5 = P1P2 ∩ P3P4`,
/// `P6 = P1P4 ∩ P2P3`.
pub mod quadrilateral {
    use super::{DivisorClass, Lattice};
    use crate::{Error, Result};

    /// Names resolvable by [`class`].
    pub const NAMES: [&str; 18] = [
        "l", "e1", "e2", "e3", "e4", "e5", "e6", "K", "S1", "S2", "S3", "S4", "Delta1", "Delta2", "Delta3", "f1", "f2",
        "f3",
    ];

    pub fn lattice() -> Lattice {
        Lattice::blowup(6)
    }

    fn line_through(pts: &[usize]) -> DivisorClass {
        let mut c = vec![0; 7];
        c[0] = 1;
        for &p in pts {
            c[p] = -1;
        }
        lattice().class(&c).expect("rank 7")
    }

    fn conic_through(pts: &[usize]) -> DivisorClass {
        let mut c = vec![0; 7];
        c[0] = 2;
        for &p in pts {
            c[p] = -1;
        }
        lattice().class(&c).expect("rank 7")
    }

    /// Side `S_i`: strict transform of the line `P_i P_{i+1}` (indices mod 4).
    pub fn side(i: usize) -> DivisorClass {
        match i {
            1 => line_through(&[1, 2, 5]),
            2 => line_through(&[2, 3, 6]),
            3 => line_through(&[3, 4, 5]),
            4 => line_through(&[4, 1, 6]),
            _ => panic!("side index {i} out of range 1..=4"),
        }
    }

    /// Diagonal `Delta_i`: strict transforms of `P1P3`, `P2P4`, `P5P6`.
    pub fn diagonal(i: usize) -> DivisorClass {
        match i {
            1 => line_through(&[1, 3]),
            2 => line_through(&[2, 4]),
            3 => line_through(&[5, 6]),
            _ => panic!("diagonal index {i} out of range 1..=3"),
        }
    }

    /// Conic pencil `f_i` through four points, no three collinear.
    pub fn pencil(i: usize) -> DivisorClass {
        match i {
            1 => conic_through(&[2, 4, 5, 6]),
            2 => conic_through(&[1, 3, 5, 6]),
            3 => conic_through(&[1, 2, 3, 4]),
            _ => panic!("pencil index {i} out of range 1..=3"),
        }
    }

    pub fn canonical() -> DivisorClass {
        lattice().canonical_class().expect("blowup lattice")
    }

    pub fn class(name: &str) -> Result<DivisorClass> {
        let lat = lattice();
        if let Ok(i) = lat.index_of(name) {
            return Ok(lat.basis(i));
        }
        let idx = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
        match name {
            "K" => Ok(canonical()),
            _ if idx("S").is_some_and(|i| (1..=4).contains(&i)) => Ok(side(idx("S").unwrap())),
            _ if idx("Delta").is_some_and(|i| (1..=3).contains(&i)) => Ok(diagonal(idx("Delta").unwrap())),
            _ if idx("f").is_some_and(|i| (1..=3).contains(&i)) => Ok(pencil(idx("f").unwrap())),
            _ => Err(Error::UnknownLabel(name.to_string())),
        }
    }

    /// Sum of the four sides.
    pub fn sides_sum() -> DivisorClass {
        (1..=4).map(side).fold(lattice().zero(), |acc, s| &acc + &s)
    }
}

#[cfg(test)]
mod tests {
    use super::quadrilateral as q;
    use super::*;

    #[test]
    fn lattice_shapes() {
        assert_eq!(Lattice::blowup(6).rank(), 7);
        let p2 = Lattice::blowup(0);
        assert_eq!(p2.rank(), 1);
        assert_eq!(p2.intersect(&p2.basis(0), &p2.basis(0)).unwrap(), 1);
        assert_eq!(Lattice::blowup(2).rank(), 3);
        assert!(Lattice::custom(&["a", "b"], vec![vec![0, 1], vec![2, 0]]).is_err());
    }

    #[test]
    fn intersect_examples() {
        let lat = Lattice::blowup(6);
        let a = lat.class(&[5, -1, -2, -1, -2, -2, -2]).unwrap();
        assert_eq!(lat.intersect(&a, &a).unwrap(), 7);
        assert_eq!(lat.intersect(&lat.basis(0), &lat.basis(1)).unwrap(), 0);
        let b = lat.class(&[9, -3, -4, -3, -4, -4, -4]).unwrap();
        assert_eq!(lat.intersect(&b, &b).unwrap(), -1);
    }

    #[test]
    fn mixing_lattices_is_an_error() {
        let a = Lattice::blowup(2).basis(0);
        let b = Lattice::blowup(3).basis(0);
        assert!(matches!(a.try_add(&b), Err(Error::LatticeMismatch { .. })));
        assert!(Lattice::blowup(2).intersect(&a, &b).is_err());
    }

    #[test]
    #[should_panic]
    fn operator_mix_panics() {
        let _ = &Lattice::blowup(2).basis(0) + &Lattice::quadric().basis(0);
    }

    #[test]
    fn canonical_classes() {
        assert_eq!(
            Lattice::blowup(6).canonical_class().unwrap().coeffs(),
            &[-3, 1, 1, 1, 1, 1, 1]
        );
        assert_eq!(Lattice::quadric().canonical_class().unwrap().coeffs(), &[-2, -2]);
        assert_eq!(Lattice::blowup(0).canonical_class().unwrap().coeffs(), &[-3]);
        let custom = Lattice::custom(&["x"], vec![vec![-2]]).unwrap();
        assert!(custom.canonical_class().is_err());
    }

    #[test]
    fn pullback_examples() {
        let lat = Lattice::blowup(2);
        let l0 = lat.class(&[1, -1, -1]).unwrap();
        assert_eq!(lat.pullback_numerics(4, &l0, &l0).unwrap(), -4);
        let h = lat.class(&[3, -1, -1]).unwrap();
        assert_eq!(lat.pullback_numerics(4, &h, &h).unwrap(), 28);
        assert_eq!(
            lat.pullback_numerics(1, &h, &l0).unwrap(),
            lat.intersect(&h, &l0).unwrap()
        );
        assert!(lat.pullback_numerics(0, &h, &h).is_err());
    }

    #[test]
    fn negative_definite_examples() {
        assert!(is_negative_definite(&[vec![-3, 0, 1], vec![0, -3, 1], vec![1, 1, -2]]).unwrap());
        assert!(!is_negative_definite(&[vec![1]]).unwrap());
        assert!(is_negative_definite(&[vec![-2]]).unwrap());
        assert!(is_negative_definite(&[vec![-1, 2], vec![1, -1]]).is_err());
    }

    #[test]
    fn divisibility_examples() {
        let lat = q::lattice();
        assert!(is_divisible_by(&lat.class(&[10, -2, -4, -2, -6, -4, -4]).unwrap(), 2).unwrap());
        assert!(!is_divisible_by(&lat.class(&[1, -1, 0, 0, 0, 0, 0]).unwrap(), 2).unwrap());
        assert!(is_divisible_by(&lat.zero(), 1).is_err());
    }

    #[test]
    fn catalog_relations() {
        let k = q::canonical();
        let d: Vec<_> = (1..=3).map(q::diagonal).collect();
        assert_eq!(-&k, &(&d[0] + &d[1]) + &d[2]);
        for i in 1..=3 {
            let f = q::pencil(i);
            assert_eq!(f, &d[i % 3] + &d[(i + 1) % 3]);
            for j in 1..=4 {
                assert_eq!(d[i - 1].dot(&q::side(j)).unwrap(), 0);
            }
            for j in 1..=3 {
                let expected = if i == j { 2 } else { 0 };
                assert_eq!(d[i - 1].dot(&q::pencil(j)).unwrap(), expected);
            }
        }
        for j in 1..=4 {
            assert_eq!(q::side(j).square(), -2);
        }
        assert_eq!(q::class("Delta3").unwrap(), q::diagonal(3));
        assert!(q::class("S5").is_err());
        for name in q::NAMES {
            assert!(q::class(name).is_ok(), "{name}");
        }
    }

    #[test]
    fn display() {
        let lat = Lattice::blowup(3);
        assert_eq!(lat.class(&[4, -2, 0, 1]).unwrap().to_string(), "4l-2e1+e3");
        assert_eq!(lat.zero().to_string(), "0");
    }
}
