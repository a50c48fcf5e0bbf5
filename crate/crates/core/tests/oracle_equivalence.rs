mod common;

use common::random_weight;
use orbitkit::oracle::{
    match_roots, numeric_kks_check, numeric_root_decomposition, numeric_stabilizer_rank, root_property_audit,
    special_unitary_basis, SPECTRAL_TOL,
};
use orbitkit::orbit::orbit_dimension;
use orbitkit::RootSystem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn a(n: usize) -> RootSystem {
    RootSystem::from_str_spec(&format!("A{}", n - 1)).unwrap()
}

#[test]
fn numeric_stabilizer_rank_matches_orbit_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for n in 2..=4 {
        let alg = special_unitary_basis(n).unwrap();
        let rs = a(n);
        for _ in 0..20 {
            let l = random_weight(&rs, &mut rng);
            assert_eq!(numeric_stabilizer_rank(&l, &alg), orbit_dimension(&l, &rs).unwrap(), "su({n}) at {l}");
        }
    }
}

#[test]
fn root_matching_is_perfect_up_to_su4() {
    for n in 2..=4 {
        let alg = special_unitary_basis(n).unwrap();
        let m = match_roots(&numeric_root_decomposition(&alg).unwrap(), &a(n));
        assert!(m.perfect);
        assert!(m.max_residual < SPECTRAL_TOL);
        assert!(m.max_eigen_residual < SPECTRAL_TOL);
    }
}

#[test]
fn form_is_ad_invariant() {
    for n in 2..=4 {
        let alg = special_unitary_basis(n).unwrap();
        assert!(alg.invariance_residual(100, n as u64) < 1e-10);
        assert!(alg.jacobi_residual() < 1e-12);
    }
}

#[test]
fn su4_kks_and_audit() {
    let alg = special_unitary_basis(4).unwrap();
    let rs = a(4);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..5 {
        let l = random_weight(&rs, &mut rng);
        let rep = numeric_kks_check(&l, &alg, 20, 9).unwrap();
        assert!(rep.passes(1e-9), "{rep:?}");
    }
    let audit = root_property_audit(&alg).unwrap();
    assert!(audit.passes(), "{:?}", audit.failures());
}

#[test]
fn su2_audit_and_su3_bracket_lands_in_sum_space() {
    let rep = root_property_audit(&special_unitary_basis(2).unwrap()).unwrap();
    assert!(rep.passes());
    assert_eq!(rep.entries.len(), 2 + 4);
    let rep3 = root_property_audit(&special_unitary_basis(3).unwrap()).unwrap();
    assert!(rep3.entries.iter().any(|e| e.check == "[g^[1, -1, 0], g^[0, 1, -1]]" && e.pass));
}
