//! Finite abelian groups `Z_{n_1} x ... x Z_{n_k}`, their characters,
//! automorphisms, graph subgroups and orthogonality.
//!
//! Elements and characters are stored as reduced residue vectors. A character
//! with coordinates `c` pairs with an element `g` to the exponent
//! `sum_i c_i g_i (e / n_i) mod e`, where `e` is the group exponent; the value
//! of the character is `exp(2 pi i * pairing / e)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::Serialize;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianGroup {
    moduli: Vec<u32>,
}

/// Element of an [`AbelianGroup`] in reduced coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u32>);

/// Element of the dual group, in the dual basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Character(Vec<u32>);

/// Anything stored as a residue vector over the moduli of a group.
pub trait Coords: Clone + Ord {
    fn from_coords(coords: Vec<u32>) -> Self;
    fn coords(&self) -> &[u32];
}

impl Coords for GroupElement {
    fn from_coords(coords: Vec<u32>) -> Self {
        GroupElement(coords)
    }
    fn coords(&self) -> &[u32] {
        &self.0
    }
}

impl Coords for Character {
    fn from_coords(coords: Vec<u32>) -> Self {
        Character(coords)
    }
    fn coords(&self) -> &[u32] {
        &self.0
    }
}

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl Character {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, xs: &[u32]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl AbelianGroup {
    /// The group `prod_i Z_{moduli[i]}`.
    pub fn new(moduli: &[u32]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup("at least one modulus is required".into()));
        }
        if let Some(m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidGroup(format!("modulus {m} is smaller than 2")));
        }
        Ok(AbelianGroup {
            moduli: moduli.to_vec(),
        })
    }

    /// The group with one element (no factors).
    pub fn trivial() -> Self {
        AbelianGroup { moduli: Vec::new() }
    }

    /// `Z_2^n`; `n = 0` gives the trivial group.
    pub fn elementary_two(n: usize) -> Self {
        AbelianGroup { moduli: vec![2; n] }
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize).product()
    }

    /// Least common multiple of the moduli.
    pub fn exponent(&self) -> u32 {
        self.moduli.iter().fold(1, |acc, &m| acc.lcm(&m))
    }

    pub fn is_two_elementary(&self) -> bool {
        self.moduli.iter().all(|&m| m == 2)
    }

    /// The direct product `self x other`; coordinates are concatenated.
    pub fn product(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        AbelianGroup { moduli }
    }

    fn reduce(&self, coords: &[i64]) -> Result<Vec<u32>> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        Ok(coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| c.rem_euclid(m as i64) as u32)
            .collect())
    }

    /// Element with the given coordinates, reduced modulo the moduli.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.reduce(coords).map(GroupElement)
    }

    pub fn character(&self, coords: &[i64]) -> Result<Character> {
        self.reduce(coords).map(Character)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.rank()])
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        GroupElement(c)
    }

    /// The `i`-th element of the dual basis.
    pub fn dual_generator(&self, i: usize) -> Character {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        Character(c)
    }

    pub fn contains<T: Coords>(&self, x: &T) -> bool {
        x.coords().len() == self.rank() && x.coords().iter().zip(&self.moduli).all(|(&c, &m)| c < m)
    }

    fn check<T: Coords>(&self, x: &T) -> Result<()> {
        if x.coords().len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: x.coords().len(),
            });
        }
        if !self.contains(x) {
            return Err(Error::InvalidArgument("coordinates are not reduced".into()));
        }
        Ok(())
    }

    /// All elements (or characters), in lexicographic order of coordinates.
    pub fn enumerate<T: Coords>(&self) -> impl Iterator<Item = T> + '_ {
        let total = self.order();
        (0..total).map(move |mut idx| {
            let mut coords = vec![0u32; self.rank()];
            for k in (0..self.rank()).rev() {
                let m = self.moduli[k] as usize;
                coords[k] = (idx % m) as u32;
                idx /= m;
            }
            T::from_coords(coords)
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.enumerate()
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        self.enumerate()
    }

    pub fn add<T: Coords>(&self, a: &T, b: &T) -> T {
        T::from_coords(
            a.coords()
                .iter()
                .zip(b.coords())
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        )
    }

    pub fn neg<T: Coords>(&self, a: &T) -> T {
        T::from_coords(
            a.coords()
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        )
    }

    pub fn sub<T: Coords>(&self, a: &T, b: &T) -> T {
        self.add(a, &self.neg(b))
    }

    pub fn scale<T: Coords>(&self, k: i64, a: &T) -> T {
        T::from_coords(
            a.coords()
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| ((x as i64 * k).rem_euclid(m as i64)) as u32)
                .collect(),
        )
    }

    /// Order of an element.
    pub fn order_of(&self, g: &GroupElement) -> u32 {
        g.0.iter()
            .zip(&self.moduli)
            .fold(1, |acc, (&x, &m)| acc.lcm(&(m / x.gcd(&m))))
    }

    /// Pairing `chi(g)` as an exponent modulo [`exponent`](Self::exponent).
    pub fn pair(&self, chi: &Character, g: &GroupElement) -> u32 {
        let e = self.exponent() as u64;
        let s: u64 = chi
            .0
            .iter()
            .zip(&g.0)
            .zip(&self.moduli)
            .map(|((&c, &x), &m)| (c as u64 * x as u64 % m as u64) * (e / m as u64))
            .sum();
        (s % e) as u32
    }

    /// Checked pairing: both arguments must belong to this group.
    pub fn try_pair(&self, chi: &Character, g: &GroupElement) -> Result<u32> {
        self.check(chi)?;
        self.check(g)?;
        Ok(self.pair(chi, g))
    }

    /// Split an element of `self x other` into its two components.
    pub fn split(&self, g: &GroupElement) -> (GroupElement, GroupElement) {
        let (a, b) = g.0.split_at(self.rank());
        (GroupElement(a.to_vec()), GroupElement(b.to_vec()))
    }

    pub fn split_character(&self, chi: &Character) -> (Character, Character) {
        let (a, b) = chi.0.split_at(self.rank());
        (Character(a.to_vec()), Character(b.to_vec()))
    }

    pub fn join<T: Coords>(a: &T, b: &T) -> T {
        let mut c = a.coords().to_vec();
        c.extend_from_slice(b.coords());
        T::from_coords(c)
    }

    /// Subgroup generated by `generators`.
    pub fn subgroup<T: Coords>(&self, generators: Vec<T>) -> Result<Subgroup<T>> {
        for g in &generators {
            self.check(g)?;
        }
        Ok(Subgroup {
            ambient: self.clone(),
            generators,
            closure: OnceLock::new(),
        })
    }

    pub fn full_subgroup(&self) -> Subgroup<GroupElement> {
        let gens = (0..self.rank()).map(|i| self.generator(i)).collect();
        Subgroup {
            ambient: self.clone(),
            generators: gens,
            closure: OnceLock::new(),
        }
    }
}

/// Subgroup of an abelian group (or of its dual), given by generators.
/// The closure is computed by breadth-first saturation on first use.
#[derive(Debug, Clone)]
pub struct Subgroup<T: Coords> {
    ambient: AbelianGroup,
    generators: Vec<T>,
    closure: OnceLock<BTreeSet<T>>,
}

impl<T: Coords> Subgroup<T> {
    pub fn ambient(&self) -> &AbelianGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[T] {
        &self.generators
    }

    pub fn elements(&self) -> &BTreeSet<T> {
        self.closure.get_or_init(|| {
            let zero = T::from_coords(vec![0; self.ambient.rank()]);
            let mut seen = BTreeSet::from([zero.clone()]);
            let mut queue = VecDeque::from([zero]);
            while let Some(x) = queue.pop_front() {
                for g in &self.generators {
                    let y = self.ambient.add(&x, g);
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
            seen
        })
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.elements().contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// A generating set chosen greedily in lexicographic order.
    pub fn reduced_generators(&self) -> Vec<T> {
        let mut gens: Vec<T> = Vec::new();
        let mut span = BTreeSet::from([T::from_coords(vec![0; self.ambient.rank()])]);
        for x in self.elements() {
            if span.contains(x) {
                continue;
            }
            gens.push(x.clone());
            span = self
                .ambient
                .subgroup(gens.clone())
                .expect("members of ambient")
                .elements()
                .clone();
        }
        gens
    }
}

impl<T: Coords> PartialEq for Subgroup<T> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.elements() == other.elements()
    }
}

/// Automorphism of an abelian group; column `j` of the matrix is the image
/// of the `j`-th standard generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Automorphism {
    group: AbelianGroup,
    images: Vec<GroupElement>,
}

impl Automorphism {
    /// Build from the images of the standard generators. The map must be a
    /// well-defined bijective homomorphism.
    pub fn from_images(group: &AbelianGroup, images: &[Vec<i64>]) -> Result<Self> {
        if images.len() != group.rank() {
            return Err(Error::DimensionMismatch {
                expected: group.rank(),
                got: images.len(),
            });
        }
        let images = images.iter().map(|c| group.element(c)).collect::<Result<Vec<_>>>()?;
        for (j, img) in images.iter().enumerate() {
            let m = group.moduli[j] as i64;
            if !group.scale(m, img).is_zero() {
                return Err(Error::NotAutomorphism(format!(
                    "image {img} of generator {} has order not dividing {m}",
                    j + 1
                )));
            }
        }
        let psi = Automorphism {
            group: group.clone(),
            images,
        };
        let hit: BTreeSet<GroupElement> = group.elements().map(|g| psi.apply_unchecked(&g)).collect();
        if hit.len() != group.order() {
            return Err(Error::NotAutomorphism("map is not injective".into()));
        }
        Ok(psi)
    }

    pub fn identity(group: &AbelianGroup) -> Self {
        let images = (0..group.rank()).map(|i| group.generator(i)).collect();
        Automorphism {
            group: group.clone(),
            images,
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    /// Matrix entries, row-major: `matrix[i][j]` is coordinate `i` of the image of generator `j`.
    pub fn matrix(&self) -> Vec<Vec<u32>> {
        (0..self.group.rank())
            .map(|i| self.images.iter().map(|img| img.0[i]).collect())
            .collect()
    }

    fn apply_unchecked(&self, g: &GroupElement) -> GroupElement {
        g.0.iter().zip(&self.images).fold(self.group.zero(), |acc, (&c, img)| {
            self.group.add(&acc, &self.group.scale(c as i64, img))
        })
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        self.group.check(g)?;
        Ok(self.apply_unchecked(g))
    }

    pub fn inverse(&self) -> Automorphism {
        let mut images = vec![self.group.zero(); self.group.rank()];
        for g in self.group.elements() {
            let img = self.apply_unchecked(&g);
            if let Some(j) = (0..self.group.rank()).find(|&j| img == self.group.generator(j)) {
                images[j] = g;
            }
        }
        Automorphism {
            group: self.group.clone(),
            images,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let images = other.images.iter().map(|img| self.apply_unchecked(img)).collect();
        Automorphism {
            group: self.group.clone(),
            images,
        }
    }

    /// Pull a character back along the automorphism: `(chi ∘ psi)`.
    pub fn pull_back(&self, chi: &Character) -> Character {
        let e = self.group.exponent();
        let coords = (0..self.group.rank())
            .map(|j| {
                let v = self.group.pair(chi, &self.images[j]);
                // pairing value on generator j, expressed in units of e / n_j
                v / (e / self.group.moduli[j])
            })
            .collect();
        Character(coords)
    }

    /// The graph `{(g, psi(g))}` inside `G x G`.
    pub fn graph_subgroup(&self) -> Subgroup<GroupElement> {
        let gg = self.group.product(&self.group);
        let gens = (0..self.group.rank())
            .map(|j| AbelianGroup::join(&self.group.generator(j), &self.images[j]))
            .collect();
        gg.subgroup(gens).expect("graph generators lie in G x G")
    }
}

/// All characters of the ambient group vanishing on every element of `h`.
pub fn orthogonal_complement(h: &Subgroup<GroupElement>) -> Subgroup<Character> {
    let g = h.ambient();
    let members: Vec<Character> = g
        .characters()
        .filter(|chi| h.generators().iter().all(|x| g.pair(chi, x) == 0))
        .collect();
    let full = g.subgroup(members).expect("characters of the ambient group");
    let gens = full.reduced_generators();
    g.subgroup(gens).expect("characters of the ambient group")
}

/// Intersection of the kernels of `chars`.
pub fn common_kernel(group: &AbelianGroup, chars: &[Character]) -> Result<Subgroup<GroupElement>> {
    for chi in chars {
        group.check(chi)?;
    }
    let members: Vec<GroupElement> = group
        .elements()
        .filter(|g| chars.iter().all(|chi| group.pair(chi, g) == 0))
        .collect();
    let full = group.subgroup(members)?;
    let gens = full.reduced_generators();
    group.subgroup(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex2() -> (AbelianGroup, Automorphism) {
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        let psi = Automorphism::from_images(&g, &[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]).unwrap();
        (g, psi)
    }

    #[test]
    fn make_group_orders() {
        assert_eq!(AbelianGroup::new(&[2, 2, 2]).unwrap().order(), 8);
        assert_eq!(AbelianGroup::new(&[5, 5]).unwrap().order(), 25);
        assert_eq!(AbelianGroup::new(&[2, 2, 2, 2]).unwrap().order(), 16);
        assert!(AbelianGroup::new(&[2, 1]).is_err());
        assert!(AbelianGroup::new(&[]).is_err());
        assert_eq!(AbelianGroup::trivial().order(), 1);
    }

    #[test]
    fn apply_automorphism_examples() {
        let (g, psi) = ex2();
        let gamma3 = g.element(&[0, 0, 1]).unwrap();
        assert_eq!(psi.apply(&gamma3).unwrap(), g.element(&[1, 1, 1]).unwrap());
        let id = Automorphism::identity(&g);
        for x in g.elements() {
            assert_eq!(id.apply(&x).unwrap(), x);
        }
        let z5 = AbelianGroup::new(&[5, 5]).unwrap();
        let phi = Automorphism::from_images(&z5, &[vec![1, -1], vec![1, 2]]).unwrap();
        assert_eq!(
            phi.apply(&z5.element(&[0, 1]).unwrap()).unwrap(),
            z5.element(&[1, 2]).unwrap()
        );
        assert!(phi.apply(&g.zero()).is_err());
    }

    #[test]
    fn rejects_non_automorphisms() {
        let g = AbelianGroup::new(&[2, 2]).unwrap();
        assert!(Automorphism::from_images(&g, &[vec![1, 1], vec![1, 1]]).is_err());
        let mixed = AbelianGroup::new(&[2, 4]).unwrap();
        // generator of Z_2 cannot map to an element of order 4
        assert!(Automorphism::from_images(&mixed, &[vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn graph_orders() {
        let (g, psi) = ex2();
        assert_eq!(psi.graph_subgroup().order(), 8);
        let diag = Automorphism::identity(&g).graph_subgroup();
        assert!(diag.elements().iter().all(|x| {
            let (a, b) = g.split(x);
            a == b
        }));
        let z5 = AbelianGroup::new(&[5, 5]).unwrap();
        let phi = Automorphism::from_images(&z5, &[vec![1, -1], vec![1, 2]]).unwrap();
        assert_eq!(phi.graph_subgroup().order(), 25);
    }

    #[test]
    fn orthogonal_complement_of_graph() {
        let (g, psi) = ex2();
        let gamma = psi.graph_subgroup();
        let perp = orthogonal_complement(&gamma);
        assert_eq!(perp.order(), 8);
        let gg = g.product(&g);
        let chi = gg.character(&[1, 0, 1, 1, 0, 0]).unwrap();
        assert!(perp.contains(&chi));
        // the pairing vanishes on all of Gamma, checked element by element
        for x in g.elements() {
            let (c1, c2) = g.split_character(&chi);
            assert_eq!((g.pair(&c1, &x) + g.pair(&c2, &psi.apply(&x).unwrap())) % 2, 0);
        }
        let full = gg.full_subgroup();
        assert!(orthogonal_complement(&full).is_trivial());
    }

    #[test]
    fn common_kernel_examples() {
        let (g, _) = ex2();
        assert_eq!(common_kernel(&g, &[]).unwrap().order(), 8);
        let all: Vec<Character> = g.characters().collect();
        assert!(common_kernel(&g, &all).unwrap().is_trivial());
        let chis = [
            g.character(&[1, 0, 0]).unwrap(),
            g.character(&[0, 1, 0]).unwrap(),
            g.character(&[1, 1, 0]).unwrap(),
        ];
        let k = common_kernel(&g, &chis).unwrap();
        assert_eq!(k.order(), 2);
        assert!(k.contains(&g.element(&[0, 0, 1]).unwrap()));
    }

    #[test]
    fn mixed_moduli_pairing() {
        let g = AbelianGroup::new(&[2, 3]).unwrap();
        assert_eq!(g.exponent(), 6);
        let chi = g.character(&[1, 1]).unwrap();
        assert_eq!(g.pair(&chi, &g.element(&[1, 0]).unwrap()), 3);
        assert_eq!(g.pair(&chi, &g.element(&[0, 1]).unwrap()), 2);
        assert_eq!(g.order_of(&g.element(&[1, 1]).unwrap()), 6);
    }

    #[test]
    fn pull_back_matches_pairing() {
        let z5 = AbelianGroup::new(&[5, 5]).unwrap();
        let phi = Automorphism::from_images(&z5, &[vec![1, -1], vec![1, 2]]).unwrap();
        for chi in z5.characters() {
            let pulled = phi.pull_back(&chi);
            for x in z5.elements() {
                assert_eq!(z5.pair(&pulled, &x), z5.pair(&chi, &phi.apply(&x).unwrap()));
            }
        }
    }
}
