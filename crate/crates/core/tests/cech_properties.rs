use orbitkit::cech::{chern_class, coboundary, cohomology, Cochain, Nerve, Ring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random complex on up to 6 vertices from a handful of random maximal faces.
fn random_nerve(rng: &mut impl Rng) -> Nerve {
    let n = rng.random_range(1..=6);
    let faces = rng.random_range(1..=5);
    let mut list = Vec::new();
    for _ in 0..faces {
        let mut s: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        if s.is_empty() {
            s.push(rng.random_range(0..n));
        }
        list.push(s);
    }
    Nerve::build(Some(n), &list).unwrap()
}

fn random_cochain(nerve: &Nerve, k: usize, rng: &mut impl Rng) -> Cochain {
    let vals: Vec<i64> = (0..nerve.count(k)).map(|_| rng.random_range(-5..=5)).collect();
    Cochain::from_ints(nerve, k, &vals).unwrap()
}

#[test]
fn coboundary_squares_to_zero_on_random_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..150 {
        let nerve = random_nerve(&mut rng);
        for k in 0..=nerve.dim() {
            let c = random_cochain(&nerve, k, &mut rng);
            let dd = coboundary(&coboundary(&c, &nerve), &nerve);
            assert!(dd.is_zero());
            assert_eq!(dd.degree, k + 2);
        }
    }
}

#[test]
fn euler_characteristic_matches_betti_numbers() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..120 {
        let nerve = random_nerve(&mut rng);
        let betti: i64 = (0..=nerve.dim())
            .map(|k| {
                let r = cohomology(&nerve, k, Ring::Q).free_rank as i64;
                if k % 2 == 0 { r } else { -r }
            })
            .sum();
        assert_eq!(betti, nerve.euler_characteristic());
        for k in 0..=nerve.dim() {
            let z = cohomology(&nerve, k, Ring::Z);
            assert_eq!(z.free_rank, cohomology(&nerve, k, Ring::Q).free_rank);
            assert!(cohomology(&nerve, k, Ring::Q).torsion.is_empty());
        }
    }
}

fn tetra_boundary() -> Nerve {
    Nerve::parse("0 1 2\n0 1 3\n0 2 3\n1 2 3\n").unwrap()
}

/// Octahedron: another triangulated 2-sphere, 8 faces.
fn octahedron() -> Nerve {
    let mut text = String::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                text.push_str(&format!("{a} {b} {c}\n"));
            }
        }
    }
    Nerve::parse(&text).unwrap()
}

proptest! {
    #[test]
    fn chern_class_is_additive(a in proptest::collection::vec(-4i64..=4, 8), b in proptest::collection::vec(-4i64..=4, 8)) {
        let nerve = octahedron();
        let ca = Cochain::from_ints(&nerve, 2, &a).unwrap();
        let cb = Cochain::from_ints(&nerve, 2, &b).unwrap();
        let x = chern_class(&nerve, &ca).unwrap();
        let y = chern_class(&nerve, &cb).unwrap();
        let s = chern_class(&nerve, &ca.add(&cb)).unwrap();
        prop_assert!(x.valid && y.valid && s.valid);
        prop_assert_eq!(s.coordinates.len(), 1);
        prop_assert_eq!(&s.coordinates[0].value, &(&x.coordinates[0].value + &y.coordinates[0].value));
    }

    #[test]
    fn chern_class_ignores_coboundaries(a in proptest::collection::vec(-4i64..=4, 4), b in proptest::collection::vec(-6i64..=6, 6)) {
        let nerve = tetra_boundary();
        let ca = Cochain::from_ints(&nerve, 2, &a).unwrap();
        let db = coboundary(&Cochain::from_ints(&nerve, 1, &b).unwrap(), &nerve);
        prop_assert_eq!(chern_class(&nerve, &ca.add(&db)).unwrap(), chern_class(&nerve, &ca).unwrap());
    }
}

#[test]
fn every_face_indicator_generates_sphere_h2() {
    let nerve = octahedron();
    for f in 0..8 {
        let mut vals = vec![0i64; 8];
        vals[f] = 1;
        let c = chern_class(&nerve, &Cochain::from_ints(&nerve, 2, &vals).unwrap()).unwrap();
        assert_eq!(c.coordinates.len(), 1);
        assert!(c.coordinates[0].value == 1.into() || c.coordinates[0].value == (-1).into());
    }
}

#[test]
fn torsion_classes_reduce_modulo() {
    // RP²: H² = Z/2, each face indicator is the generator
    let rp2 = Nerve::parse("0 1 2\n0 2 3\n0 3 4\n0 4 5\n0 1 5\n1 2 4\n2 3 5\n1 3 4\n1 3 5\n2 4 5\n").unwrap();
    let mut vals = vec![0i64; rp2.count(2)];
    vals[0] = 1;
    let one = chern_class(&rp2, &Cochain::from_ints(&rp2, 2, &vals).unwrap()).unwrap();
    assert_eq!(one.coordinates.len(), 1);
    assert_eq!(one.coordinates[0].modulus, Some(2.into()));
    assert_eq!(one.coordinates[0].value, 1.into());
    vals[0] = 2;
    let two = chern_class(&rp2, &Cochain::from_ints(&rp2, 2, &vals).unwrap()).unwrap();
    assert!(two.is_trivial());
}
