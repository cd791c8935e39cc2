mod common;

use dynres_core::graded_res::examples::{
    generic_skew, koszul3, maximal_ideal_square, non_perfect_example, pfaffian, pfaffian_complex, specialized_skew,
};
use dynres_core::graded_res::*;
use dynres_core::polyalg::matrix::rank;
use dynres_core::polyalg::{combinations, Budget, Coeff, Ideal, MultiPoly, PolyMatrix, TermOrder};
use dynres_core::{Error, Format};
use num_traits::{One, Zero};
use common::{random_u1, scaled, wedge_matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn budget() -> Budget {
    Budget::default()
}

fn constants(m: &PolyMatrix) -> Vec<Vec<Coeff>> {
    assert!(m.entries().iter().all(MultiPoly::is_constant));
    m.constant_part()
}

#[test]
fn koszul_multipliers_and_products() {
    let c = koszul3();
    let (m, s) = structure_maps(&c, &budget()).unwrap();
    let a1 = m.a1_scalar().unwrap().clone();
    assert!(a1.is_constant() && !a1.is_zero(), "a1 = {a1}");
    let inv = Coeff::one() / a1.constant_term();

    // F1 = Λ¹, F2 = Λ² with columns e1∧e2, e1∧e3, e2∧e3, F3 = Λ³.
    let singles: Vec<Vec<usize>> = (0..3).map(|i| vec![i]).collect();
    let pairs: Vec<(Vec<usize>, Vec<usize>)> =
        product_pairs(3).into_iter().map(|(i, j)| (singles[i].clone(), singles[j].clone())).collect();
    assert_eq!(constants(&s.w3_1), scaled(&wedge_matrix(3, 2, &pairs), &inv));

    let doubles = combinations(3, 2);
    let mixed: Vec<(Vec<usize>, Vec<usize>)> =
        (0..3).flat_map(|i| doubles.iter().map(move |d| (vec![i], d.clone()))).collect();
    assert_eq!(constants(&s.w2_1), scaled(&wedge_matrix(3, 3, &mixed), &inv));

    assert!(check_lifting_identities(&c, &m, &s).unwrap());
    assert_eq!(rank(&tor_m11(&c, &s).unwrap()), 3);
}

#[test]
fn koszul_d1_factors_through_beta() {
    let c = koszul3();
    let m = be_multipliers(&c, &budget()).unwrap();
    let b = beta(&c, &m).unwrap();
    let a1 = m.a1_scalar().unwrap();
    for k in 0..3 {
        assert_eq!(&(a1 * b.get(0, k)), c.d1().get(0, k));
    }
}

#[test]
fn split_complex_maps_are_inclusions() {
    for f in [[1, 3, 3, 1], [1, 5, 6, 2], [1, 4, 6, 3]] {
        let format = Format::new(f).unwrap();
        let s = split_structure_maps(&format).unwrap();
        let r2 = f[1] - 1;
        let w31 = s.w3_1.constant_part();
        let w21 = s.w2_1.constant_part();
        for k in 0..r2 {
            // column of e0 ∧ z_k is (0, k+1) = index k
            for row in 0..f[2] {
                let expect = if row == k { Coeff::one() } else { Coeff::zero() };
                assert_eq!(w31[row][k], expect, "format {f:?}");
            }
        }
        for mm in 0..f[3] {
            let col = r2 + mm;
            for row in 0..f[3] {
                let expect = if row == mm { Coeff::one() } else { Coeff::zero() };
                assert_eq!(w21[row][col], expect, "format {f:?}");
            }
        }
    }
}

#[test]
fn split_maps_need_dynkin_format() {
    let bad = Format::new([1, 6, 8, 3]).unwrap();
    assert!(matches!(split_structure_maps(&bad), Err(Error::NonDynkinFormat(_))));
}

#[test]
fn square_of_maximal_ideal_has_no_linear_products() {
    let c = maximal_ideal_square().unwrap();
    assert_eq!(c.format(), [1, 6, 8, 3]);
    let report = validate_complex(&c, &budget()).unwrap();
    assert_eq!(report.perfect(), Verdict::Yes);
    let (_, s) = structure_maps(&c, &budget()).unwrap();
    assert!(s.w3_1.entries().iter().all(|p| p.is_zero() || p.total_degree() == Some(1)));
    assert!(is_zero_matrix(&tor_m11(&c, &s).unwrap()));
    assert!(matches!(classify_family(&c, &budget()), Err(Error::NonDynkinFormat(_))));
}

#[test]
fn non_perfect_example_is_rejected() {
    let c = non_perfect_example();
    let report = validate_complex(&c, &budget()).unwrap();
    assert!(report.is_complex);
    assert_eq!(report.dual_acyclic, Verdict::No);
    assert!(matches!(classify_family(&c, &budget()), Err(Error::NotPerfect(_))));
}

#[test]
fn pfaffian_multipliers_are_pfaffians() {
    let a = generic_skew(5);
    let c = pfaffian_complex(&a).unwrap();
    let m = be_multipliers(&c, &budget()).unwrap();
    // a2 is indexed by 4-subsets of F1; each entry is ± the Pfaffian on that subset, up to one scalar.
    let subsets = combinations(5, 4);
    let mut ratio: Option<Coeff> = None;
    for (k, s) in subsets.iter().enumerate() {
        let pf = pfaffian(&a, s);
        let entry = m.a2.get(k, 0);
        let (mono, coef) = pf.terms().next().unwrap();
        let r = entry.coeff(mono) / coef;
        let r = r.clone() * r;
        assert_eq!(&pf.scale(&(entry.coeff(mono) / coef)), entry);
        match &ratio {
            None => ratio = Some(r),
            Some(x) => assert_eq!(*x, r),
        }
    }
}

#[test]
fn gorenstein_pairing_has_full_rank() {
    let c = pfaffian_complex(&generic_skew(5)).unwrap();
    let (m, s) = structure_maps(&c, &budget()).unwrap();
    assert!(check_lifting_identities(&c, &m, &s).unwrap());
    // As a pairing F1 × F2 → F3 = R, the constant part is a perfect 5 × 5 form.
    let flat = s.w2_1.constant_part();
    let pairing: Vec<Vec<Coeff>> = (0..5).map(|i| flat[0][5 * i..5 * i + 5].to_vec()).collect();
    assert_eq!(rank(&pairing), 5);
    assert!(is_zero_matrix(&tor_m11(&c, &s).unwrap()));
}

fn assert_gauge_invariant(c: &GradedComplex, seed: u64) {
    let (m, s) = structure_maps(c, &budget()).unwrap();
    let reference = format!("{:?}", tor_m11(c, &s).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let [_, f1, _, f3] = c.format();
    for _ in 0..20 {
        let u1 = random_u1(&mut rng, c.nvars(), f3, f1 * (f1 - 1) / 2);
        let moved = gauge_action(c, &m, &s, &u1).unwrap();
        assert_ne!(moved.w3_1, s.w3_1);
        assert_eq!(format!("{:?}", tor_m11(c, &moved).unwrap()), reference);
    }
}

#[test]
fn m11_is_gauge_invariant_for_koszul() {
    assert_gauge_invariant(&koszul3(), 7);
}

#[test]
fn m11_is_gauge_invariant_for_gorenstein() {
    assert_gauge_invariant(&pfaffian_complex(&generic_skew(5)).unwrap(), 11);
}

#[test]
fn classify_known_examples() {
    let k = classify_family(&koszul3(), &budget()).unwrap();
    assert!(matches!(&k, FamilyLabel::Coset { betti: [1, 3, 3, 1], .. }), "{k:?}");
    let c = pfaffian_complex(&specialized_skew(5, 3, 4)).unwrap();
    if validate_complex(&c, &budget()).unwrap().perfect() == Verdict::Yes {
        let p = classify_family(&c, &budget()).unwrap();
        assert!(matches!(&p, FamilyLabel::Coset { betti: [1, 5, 5, 1], .. }), "{p:?}");
    }
}

#[test]
fn specialized_pfaffians_have_grade_three() {
    let a = specialized_skew(5, 3, 4);
    let c = pfaffian_complex(&a).unwrap();
    let ideal = Ideal::new(3, c.d1().entries().to_vec()).unwrap().with_order(TermOrder::Grevlex);
    assert_eq!(ideal.codimension().unwrap(), Some(3));
}

#[test]
fn json_round_trip() {
    for c in [koszul3(), pfaffian_complex(&generic_skew(5)).unwrap(), non_perfect_example()] {
        let v = c.to_json();
        let back = GradedComplex::from_json(&v).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), v);
    }
}

#[test]
fn dual_of_dual_is_identity() {
    let c = koszul3();
    assert_eq!(c.dual().dual(), c);
}
