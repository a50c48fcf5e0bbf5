#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use orbitkit::rational::qf;
use orbitkit::{RootSystem, Weight};
use rand::Rng;

/// Random rational weight with small numerators and denominators, projected
/// onto the A-series hyperplanes. Roughly a third of the coordinates repeat
/// so that singular weights show up often.
pub fn random_weight(rs: &RootSystem, rng: &mut impl Rng) -> Weight {
    let d = rs.dim();
    let den = rng.random_range(1..=3);
    let mut coords: Vec<orbitkit::Q> = Vec::with_capacity(d);
    for i in 0..d {
        let repeat = i > 0 && rng.random_bool(0.3);
        let x = if repeat { coords[rng.random_range(0..i)].clone() } else { qf(rng.random_range(-4..=4), den) };
        coords.push(x);
    }
    rs.normalize_weight(&Weight::ambient(coords)).unwrap().0
}

/// Order of the group generated by signed permutations, by breadth-first
/// closure over images of `(1, 2, …, n)`.
fn closure_size(n: usize, gens: &[Box<dyn Fn(&[i32]) -> Vec<i32>>]) -> usize {
    let start: Vec<i32> = (1..=n as i32).collect();
    let mut seen = HashSet::new();
    let mut q = VecDeque::new();
    seen.insert(start.clone());
    q.push_back(start);
    while let Some(p) = q.pop_front() {
        for g in gens {
            let r = g(&p);
            if seen.insert(r.clone()) {
                q.push_back(r);
            }
        }
    }
    seen.len()
}

fn swaps(n: usize) -> Vec<Box<dyn Fn(&[i32]) -> Vec<i32>>> {
    (0..n - 1)
        .map(|i| {
            Box::new(move |p: &[i32]| {
                let mut v = p.to_vec();
                v.swap(i, i + 1);
                v
            }) as Box<dyn Fn(&[i32]) -> Vec<i32>>
        })
        .collect()
}

/// Symmetric group on `n` letters.
pub fn permutation_model_order(n: usize) -> usize {
    if n == 1 {
        return 1;
    }
    closure_size(n, &swaps(n))
}

/// All signed permutations (types B and C).
pub fn signed_permutation_model_order(n: usize) -> usize {
    let mut g = if n > 1 { swaps(n) } else { Vec::new() };
    g.push(Box::new(move |p: &[i32]| {
        let mut v = p.to_vec();
        v[n - 1] = -v[n - 1];
        v
    }));
    closure_size(n, &g)
}

/// Signed permutations with an even number of sign changes (type D).
pub fn even_signed_permutation_model_order(n: usize) -> usize {
    let mut g = swaps(n);
    g.push(Box::new(move |p: &[i32]| {
        let mut v = p.to_vec();
        v.swap(n - 2, n - 1);
        v[n - 2] = -v[n - 2];
        v[n - 1] = -v[n - 1];
        v
    }));
    closure_size(n, &g)
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
