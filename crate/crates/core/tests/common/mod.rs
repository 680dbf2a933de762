#![allow(dead_code)]

use bicanon::beauville::ProductQuotientSpec;
use bicanon::covers::{BranchDataP1, BranchDataSurface, BranchEntry, BranchLocus};
use bicanon::group::{AbelianGroup, Automorphism, GroupElement};
use bicanon::picard::quadrilateral as q;
use bicanon::picard::DivisorClass;

pub fn cls(name: &str) -> DivisorClass {
    q::class(name).unwrap()
}

pub fn sum(names: &[&str]) -> DivisorClass {
    names.iter().fold(q::lattice().zero(), |acc, n| &acc + &cls(n))
}

pub fn ex1() -> BranchDataSurface {
    let d1 = sum(&["Delta1", "f2", "S1", "S2"]);
    let d2 = sum(&["Delta2", "f3"]);
    let d3 = sum(&["Delta3", "f1", "f1", "S3", "S4"]);
    let lat = q::lattice();
    let l1 = lat.class(&[5, -1, -2, -1, -3, -2, -2]).unwrap();
    let l2 = lat.class(&[6, -2, -2, -2, -2, -3, -3]).unwrap();
    BranchDataSurface::new([d1, d2, d3], l1, l2).unwrap()
}

/// Line bundle degrees forced by `2L_i = Σ_{χ_i(γ)≠0} deg D_γ`.
pub fn forced_line_bundles(group: &AbelianGroup, entries: &[BranchEntry]) -> Vec<i64> {
    (0..group.rank())
        .map(|i| {
            let chi = group.dual_generator(i);
            let w: u32 = entries
                .iter()
                .filter(|e| group.pair(&chi, &e.element) != 0)
                .map(|e| e.locus.degree())
                .sum();
            w as i64 / 2
        })
        .collect()
}

/// Branch data with one point on each listed element (repetitions merge into degrees).
pub fn data_from_points(group: &AbelianGroup, points: &[GroupElement]) -> BranchDataP1 {
    let mut merged: Vec<(GroupElement, u32)> = Vec::new();
    for p in points {
        match merged.iter_mut().find(|(g, _)| g == p) {
            Some((_, d)) => *d += 1,
            None => merged.push((p.clone(), 1)),
        }
    }
    let entries: Vec<BranchEntry> = merged
        .into_iter()
        .map(|(element, d)| BranchEntry {
            element,
            locus: BranchLocus::Degree(d),
        })
        .collect();
    let lb = forced_line_bundles(group, &entries);
    BranchDataP1::new(group.clone(), entries, lb).unwrap()
}

pub fn ex2() -> ProductQuotientSpec {
    let g = AbelianGroup::elementary_two(3);
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

pub fn ex3_curve() -> BranchDataP1 {
    let g = AbelianGroup::elementary_two(4);
    BranchDataP1::from_degrees(
        &g,
        &[
            (vec![1, 1, 1, 1], 1),
            (vec![1, 0, 0, 0], 1),
            (vec![0, 1, 0, 0], 1),
            (vec![0, 0, 1, 0], 1),
            (vec![0, 0, 0, 1], 1),
        ],
        vec![1, 1, 1, 1],
    )
    .unwrap()
}

pub fn ex3() -> ProductQuotientSpec {
    let g = AbelianGroup::elementary_two(4);
    let psi = Automorphism::from_images(
        &g,
        &[vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![1, 0, 0, 1], vec![1, 0, 1, 1]],
    )
    .unwrap();
    ProductQuotientSpec::new(psi, ex3_curve(), ex3_curve()).unwrap()
}
