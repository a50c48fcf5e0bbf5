mod common;

use common::*;
use orbitkit::weyl::{dominant_representative, weyl_orbit, WeylGroup, DEFAULT_CAP};
use orbitkit::RootSystem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn order_of(s: &str) -> usize {
    let rs = RootSystem::from_str_spec(s).unwrap();
    WeylGroup::generate(&rs, DEFAULT_CAP).unwrap().order()
}

#[test]
fn models_agree_with_closed_forms() {
    for n in 1..=5 {
        assert_eq!(permutation_model_order(n), factorial(n));
        assert_eq!(signed_permutation_model_order(n), (1 << n) * factorial(n));
    }
    for n in 2..=5 {
        assert_eq!(even_signed_permutation_model_order(n), (1 << (n - 1)) * factorial(n));
    }
}

#[test]
fn orders_match_permutation_models() {
    for n in 1..=4 {
        assert_eq!(order_of(&format!("A{n}")), permutation_model_order(n + 1), "A{n}");
    }
    for n in 1..=3 {
        assert_eq!(order_of(&format!("B{n}")), signed_permutation_model_order(n), "B{n}");
        assert_eq!(order_of(&format!("C{n}")), signed_permutation_model_order(n), "C{n}");
    }
    for n in 2..=4 {
        assert_eq!(order_of(&format!("D{n}")), even_signed_permutation_model_order(n), "D{n}");
    }
    assert_eq!(order_of("D3"), order_of("A3"));
}

#[test]
fn every_element_permutes_the_roots() {
    for s in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "B4", "A1xB2xT1"] {
        let rs = RootSystem::from_str_spec(s).unwrap();
        let w = WeylGroup::generate(&rs, DEFAULT_CAP).unwrap();
        for e in w.elements() {
            let mut image: Vec<_> = rs.roots().iter().map(|a| w.apply(&e.matrix, a)).collect();
            image.sort();
            assert_eq!(image, rs.roots().to_vec(), "{s}");
        }
    }
}

#[test]
fn group_is_closed_under_products_and_inverses() {
    let rs = RootSystem::from_str_spec("B3").unwrap();
    let w = WeylGroup::generate(&rs, DEFAULT_CAP).unwrap();
    for a in w.elements() {
        // orthogonal, so the inverse is the transpose
        assert!(w.contains(&w.transpose(&a.matrix)));
        for b in w.elements().iter().step_by(5) {
            assert!(w.contains(&w.multiply(&a.matrix, &b.matrix)));
        }
    }
}

#[test]
fn pairing_is_weyl_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in ["A3", "B3", "C2", "D4"] {
        let rs = RootSystem::from_str_spec(s).unwrap();
        let w = WeylGroup::generate(&rs, DEFAULT_CAP).unwrap();
        for _ in 0..10 {
            let x = random_weight(&rs, &mut rng);
            let y = random_weight(&rs, &mut rng);
            let p = rs.pairing(&x, &y).unwrap();
            for g in w.generators() {
                assert_eq!(rs.pairing(&w.apply(g, &x), &w.apply(g, &y)).unwrap(), p);
            }
        }
    }
}

#[test]
fn exactly_one_dominant_point_per_orbit() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for s in ["A2", "A3", "B2", "B3", "C3", "D4"] {
        let rs = RootSystem::from_str_spec(s).unwrap();
        let w = WeylGroup::generate(&rs, DEFAULT_CAP).unwrap();
        let order = rs.default_order();
        for _ in 0..100 {
            let l = random_weight(&rs, &mut rng);
            let orbit = weyl_orbit(&l, &w).unwrap();
            assert_eq!(orbit.points.len() * orbit.stabilizer_order, w.order());
            let dominant: Vec<_> = orbit.points.iter().filter(|p| order.is_dominant(p).unwrap()).collect();
            assert_eq!(dominant.len(), 1, "{s} {l}");
            let (d, word) = dominant_representative(&l, &order, &w).unwrap();
            assert_eq!(&d, dominant[0]);
            let (again, empty) = dominant_representative(&d, &order, &w).unwrap();
            assert_eq!((again, empty.len()), (d.clone(), 0));
            // replay the word
            let mut mu = l.clone();
            for i in word {
                mu = orbitkit::weyl::reflect(&order.simple[i], &mu);
            }
            assert_eq!(mu, d);
        }
    }
}
