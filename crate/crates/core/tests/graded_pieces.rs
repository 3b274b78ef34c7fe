use smc_core::exactmath::FieldSpec;
use smc_core::lattice::{denumerant, enumerate_points, interior_points, point_to_monomial};
use smc_core::linalg::SolverRegistry;
use smc_core::peeling::{certify_dim, Conclusion, RowsStrategy};
use smc_core::poly::Monomial;
use smc_core::presentation::herzog_present;
use smc_core::qadic::{genus_check, graded_basis, graded_dim, graded_dim_with, h1_dim, membership};

fn q() -> FieldSpec {
    FieldSpec::rationals()
}

#[test]
fn negative_curve_piece_is_one_dimensional() {
    let pres = herzog_present(5, 103, 169).unwrap();
    assert_eq!(graded_dim(&pres, q(), 7, 2065).unwrap(), 1);
    let basis = graded_basis(&pres, q(), 7, 2065).unwrap();
    assert_eq!(basis.dimension, 1);
    let f = &basis.basis[0];
    assert!(!q().is_zero(&f.coeff(&Monomial::new(413, 0, 0))));
    assert!(!q().is_zero(&f.coeff(&Monomial::new(0, 2, 11))));
    assert!(membership(&pres, q(), f, 7).unwrap());
    assert!(!membership(&pres, q(), f, 8).unwrap());
}

#[test]
fn vanishing_pieces_of_5_103_169() {
    let pres = herzog_present(5, 103, 169).unwrap();
    assert_eq!(graded_dim(&pres, q(), 6, 1788).unwrap(), 0);
    assert_eq!(graded_dim(&pres, q(), 3, 887).unwrap(), 0);
    assert_eq!(denumerant(5, 103, 169, 887), 6);
    assert_eq!(h1_dim(&pres, q(), 887, 3).unwrap(), 0);
    assert_eq!(h1_dim(&pres, q(), 2065, 7).unwrap(), 0);
    assert!(genus_check(&pres, q(), 7, 2065).unwrap());
}

#[test]
fn pieces_of_5_11_18() {
    let pres = herzog_present(5, 11, 18).unwrap();
    assert_eq!(graded_dim(&pres, q(), 7, 220).unwrap(), 1);
    assert_eq!(graded_dim(&pres, q(), 4, 126).unwrap(), 1);
}

#[test]
fn solvers_agree_on_char_zero_instances() {
    let reg = SolverRegistry::builtin();
    let pres = herzog_present(5, 103, 169).unwrap();
    for (m, d) in [(7, 2065), (6, 1788), (3, 887), (8, 2360), (5, 1500)] {
        let a = graded_dim_with(reg.get("rational-bareiss").unwrap(), &pres, q(), m, d).unwrap();
        let b = graded_dim_with(reg.get("modular-screen").unwrap(), &pres, q(), m, d).unwrap();
        assert_eq!(a, b, "m={m} d={d}");
    }
}

#[test]
fn lemma_instance_over_gf2() {
    let pres = herzog_present(5, 103, 169).unwrap();
    let region = enumerate_points(&pres, 17407).unwrap();
    assert_eq!(region.len() as u64, denumerant(5, 103, 169, 17407));
    assert_eq!(graded_dim(&pres, FieldSpec::gf2(), 59, 17407).unwrap(), 0);
}

#[test]
fn generator_a01_lies_in_p() {
    let pres = herzog_present(5, 103, 169).unwrap();
    let f2 = FieldSpec::gf2();
    let a01 = smc_core::poly::SparsePoly::from_terms(
        f2,
        [(Monomial::new(0, 3, 0), f2.one()), (Monomial::new(28, 0, 1), f2.one())],
    );
    assert!(membership(&pres, f2, &a01, 1).unwrap());
    let basis = graded_basis(&pres, f2, 1, 309).unwrap();
    assert_eq!(basis.dimension, 1);
    assert_eq!(basis.basis[0], a01);
}

#[test]
fn peeling_matches_linear_algebra() {
    let pres = herzog_present(5, 103, 169).unwrap();
    let full = enumerate_points(&pres, 2065).unwrap();
    let c = certify_dim(&full.points, 7, &RowsStrategy, q()).unwrap();
    assert_eq!(c.conclusion, Conclusion::Exact(1));
    let hits: Vec<usize> = c.steps.iter().map(|s| s.hits).collect();
    assert_eq!(hits, vec![7, 6, 5, 4, 3, 2]);
    let tracked: Vec<_> = c
        .tracked_points
        .iter()
        .map(|p| point_to_monomial(&pres, *p, 2065).unwrap())
        .collect();
    assert!(tracked.contains(&(413, 0, 0)));
    assert!(tracked.contains(&(0, 2, 11)));
    // the echelon basis vector is nonzero at every tracked point
    let f = &graded_basis(&pres, q(), 7, 2065).unwrap().basis[0];
    for (i, j, k) in tracked {
        assert!(!q().is_zero(&f.coeff(&Monomial::new(i as u32, j as u32, k as u32))));
    }

    let inner = interior_points(&pres, 2065).unwrap();
    let c = certify_dim(&inner.points, 6, &RowsStrategy, q()).unwrap();
    assert_eq!(c.conclusion, Conclusion::Exact(0));
    assert_eq!(c.steps.iter().map(|s| s.hits).collect::<Vec<_>>(), vec![6, 5, 4, 3, 2]);
    assert_eq!(graded_dim(&pres, q(), 6, 1788).unwrap(), 0);

    let small = enumerate_points(&pres, 887).unwrap();
    let c = certify_dim(&small.points, 3, &RowsStrategy, q()).unwrap();
    assert_eq!(c.conclusion, Conclusion::Exact(0));
}
