//! Brute-force helpers shared by the integration tests.
#![allow(dead_code)]

use classalg::{ColumnSet, Config, FamilyDescriptor, GroupElement, LocalBijAlgebraElement, LocalBijection, Permutation};
use classalg::oracle::injections;
use itertools::Itertools;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn s1() -> FamilyDescriptor {
    FamilyDescriptor::product(1).unwrap()
}

pub fn s2() -> FamilyDescriptor {
    FamilyDescriptor::product(2).unwrap()
}

pub fn full1() -> FamilyDescriptor {
    FamilyDescriptor::full(&["x"]).unwrap()
}

pub fn families() -> [FamilyDescriptor; 3] {
    [s1(), s2(), full1()]
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn symmetric_group(n: usize) -> Vec<Permutation> {
    (0..n as u32).permutations(n).map(|v| Permutation::from_images(v).unwrap()).collect()
}

/// Minimal body over every column relabeling.
pub fn brute_canonical_body(g: &GroupElement) -> Vec<u32> {
    symmetric_group(g.ambient())
        .iter()
        .map(|t| g.conjugate_columns(t).unwrap().body().to_vec())
        .min()
        .unwrap_or_else(|| g.body().to_vec())
}

pub fn random_element(family: &FamilyDescriptor, n: usize, rng: &mut StdRng) -> GroupElement {
    GroupElement::enumerate(family, n).choose(rng).unwrap().clone()
}

pub fn random_perm(n: usize, rng: &mut StdRng) -> Permutation {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.shuffle(rng);
    Permutation::from_images(v).unwrap()
}

/// A local bijection of `V_N` whose support has at most `max_support` columns.
pub fn random_local(family: &FamilyDescriptor, big_n: usize, max_support: usize, rng: &mut StdRng) -> LocalBijection {
    let k = rng.gen_range(0..=max_support.min(big_n));
    let sigma = injections(k, big_n).choose(rng).unwrap().clone();
    let g = random_element(family, k, rng).transport(&sigma, big_n).unwrap();
    LocalBijection::new(ColumnSet::from_columns(sigma.iter().copied()), g).unwrap()
}

pub fn random_local_element(
    family: &FamilyDescriptor,
    big_n: usize,
    terms: usize,
    rng: &mut StdRng,
) -> LocalBijAlgebraElement {
    let mut out = LocalBijAlgebraElement::zero(family, big_n);
    for _ in 0..terms {
        let a = random_local(family, big_n, 3, rng);
        out.add(&a, rng.gen_range(-3i64..=3).into()).unwrap();
    }
    out
}

pub fn cfg() -> Config {
    Config::default()
}
