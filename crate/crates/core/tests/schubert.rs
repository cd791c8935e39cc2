use dynres_core::betti_check::{admissibility_report, BettiTable};
use dynres_core::graded_res::examples::submaximal_pfaffians;
use dynres_core::graded_res::{
    classify_family, is_zero_matrix, structure_maps, tor_m11, validate_complex, FamilyLabel, Verdict,
};
use dynres_core::polyalg::{ideal_equal, Budget, Coeff, Ideal, MultiPoly, PolyMatrix};
use dynres_core::schubert::*;
use dynres_core::weyl::{format_double_cosets, WeylGroup};
use dynres_core::{Format, Node, RootSystem, TShape};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn shape_of(f: [usize; 4]) -> TShape {
    Format::new(f).unwrap().shape()
}

#[test]
fn minuscule_dimensions() {
    let d5 = shape_of([1, 5, 5, 1]);
    let x1 = d5.node_index(Node::X(1)).unwrap();
    assert_eq!(fundamental_rep(&d5, x1).unwrap().dim(), 16);

    let e6 = shape_of([1, 5, 6, 2]);
    let y2 = e6.node_index(Node::Y(2)).unwrap();
    let rep = minuscule_rep(&e6, y2).unwrap();
    assert_eq!(rep.dim(), 27);
    rep.check_relations().unwrap();

    let a3 = TShape::new(1, 2, 2).unwrap();
    let u = a3.node_index(Node::U).unwrap();
    let rep = minuscule_rep(&a3, u).unwrap();
    assert_eq!(rep.dim(), 6);
    rep.check_relations().unwrap();
}

#[test]
fn adjoint_is_not_minuscule() {
    let e6 = shape_of([1, 5, 6, 2]);
    let roots = RootSystem::new(&e6).unwrap();
    let x1 = e6.node_index(Node::X(1)).unwrap();
    assert!(!is_minuscule(&roots, x1).unwrap());
    assert!(minuscule_rep(&e6, x1).is_err());
}

#[test]
fn e6_adjoint_representation() {
    let e6 = shape_of([1, 5, 6, 2]);
    let roots = RootSystem::new(&e6).unwrap();
    let rep = adjoint_rep(&e6).unwrap();
    assert_eq!(rep.kind(), RepKind::Adjoint);
    assert_eq!(rep.dim(), 78);
    rep.check_relations().unwrap();
    AdjointAlgebra::new(&e6).unwrap().check_jacobi().unwrap();

    let zero = vec![0; 6];
    assert_eq!(rep.weights().iter().filter(|w| **w == zero).count(), 6);

    let x1 = e6.node_index(Node::X(1)).unwrap();
    let mut grades = [0usize; 5];
    for w in rep.weights() {
        let coords = roots.weight_to_root_coords(w);
        assert!(coords[x1].is_integer());
        grades[(coords[x1].to_integer() + 2) as usize] += 1;
    }
    assert_eq!(grades, [1, 20, 36, 20, 1]);
}

fn negated_vars(n: usize) -> Vec<MultiPoly> {
    (0..n).map(|i| -&MultiPoly::var(n, i)).collect()
}

fn assert_unipotent(m: &PolyMatrix) {
    let n = m.rows();
    let one = MultiPoly::one(m.nvars());
    let (mut upper, mut lower) = (true, true);
    for i in 0..n {
        assert_eq!(m.get(i, i), &one);
        for j in 0..n {
            if !m.get(i, j).is_zero() {
                upper &= i <= j;
                lower &= i >= j;
            }
        }
    }
    assert!(upper || lower, "not triangular");
    let inverse = m.substitute(&negated_vars(m.nvars())).unwrap();
    assert_eq!(m.try_mul(&inverse).unwrap(), PolyMatrix::identity(m.nvars(), n));
}

#[test]
fn generic_exponentials_are_unipotent() {
    let d4 = shape_of([1, 4, 4, 1]);
    let x1 = d4.node_index(Node::X(1)).unwrap();
    let rep = fundamental_rep(&d4, x1).unwrap();
    let g = generic_exp(&rep, Nilradical::X1).unwrap();
    assert_unipotent(&g);
    assert_eq!(g.determinant().unwrap(), MultiPoly::one(g.nvars()));

    let e6 = shape_of([1, 5, 6, 2]);
    let rep = fundamental_rep(&e6, e6.node_index(Node::X(1)).unwrap()).unwrap();
    let g = generic_exp(&rep, Nilradical::X1).unwrap();
    assert_eq!(g.nvars(), 21);
    assert!(g.entries().iter().filter_map(MultiPoly::total_degree).all(|d| d <= 4));
    assert!(g.entries().iter().any(|p| p.total_degree() == Some(4)));
    assert_unipotent(&g);
}

#[test]
fn sigma_parsing() {
    let format = Format::new([1, 5, 5, 1]).unwrap();
    assert_eq!("e".parse::<Sigma>().unwrap(), Sigma::Identity);
    assert_eq!("w0".parse::<Sigma>().unwrap(), Sigma::Longest);
    assert_eq!(
        "s:z1,u,x1".parse::<Sigma>().unwrap(),
        Sigma::Word(vec![Node::Z(1), Node::U, Node::X(1)])
    );
    assert!("q7".parse::<Sigma>().is_err());
    assert!("s:z1,w".parse::<Sigma>().is_err());
    assert!(Sigma::Identity.resolve(&format).unwrap().is_identity());
    assert!("s:u".parse::<Sigma>().unwrap().resolve(&format).unwrap().is_identity());
    assert_eq!("s:x1,u".parse::<Sigma>().unwrap().resolve(&format).unwrap().length(), 1);
    assert_eq!("w0".parse::<Sigma>().unwrap().resolve(&format).unwrap().length(), 10);
}

#[test]
fn identity_chart_is_the_unit_ideal() {
    let format = Format::new([1, 4, 4, 1]).unwrap();
    let chart = patch_parametrization(&format, &Sigma::Identity.resolve(&format).unwrap()).unwrap();
    assert!(schubert_ideal(&chart).unwrap().is_unit().unwrap());
}

#[test]
fn charts_need_a_dn_or_en_shape() {
    let a = Format::new([1, 3, 3, 1]).unwrap();
    assert!(patch_parametrization(&a, &Sigma::Longest.resolve(&a).unwrap()).is_err());
}

#[test]
fn pfaffian_oracle_for_d5() {
    let format = Format::new([1, 5, 5, 1]).unwrap();
    let chart = patch_parametrization(&format, &Sigma::Longest.resolve(&format).unwrap()).unwrap();
    assert_eq!(chart.nvars(), 10);
    let a = pfaffian_identification(&chart).unwrap();
    assert_eq!(a.transpose(), a.scale(&-Coeff::one()));
    let pf = submaximal_pfaffians(&a);
    for (g, p) in chart.generators().iter().zip(&pf) {
        assert!(g == p || *g == -p, "{g} vs {p}");
    }
    let schubert = schubert_ideal(&chart).unwrap();
    let pfaffians = Ideal::new(10, pf).unwrap();
    assert!(ideal_equal(&schubert, &pfaffians).unwrap());
}

#[test]
fn plucker_support_follows_bruhat_order() {
    let d4 = shape_of([1, 4, 4, 1]);
    let x1 = d4.node_index(Node::X(1)).unwrap();
    let group = WeylGroup::new(&d4).unwrap();
    let rep = fundamental_rep(&d4, x1).unwrap();
    let quotient = group.parabolic_quotient(x1);
    let hw = rep.index_of(rep.highest_weight()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for w in quotient.points() {
        let mut z = dynres_core::schubert::RepMatrix::zero(rep.dim());
        for k in 0..rep.roots().positive_roots().len() {
            let c = Coeff::new(rng.gen_range(1..50).into(), rng.gen_range(1..7).into());
            z = z.add(&rep.e_root(k).scale(&c));
        }
        let mut v = vec![Coeff::zero(); rep.dim()];
        v[hw] = Coeff::one();
        let v = z.exp_nilpotent().unwrap().apply(&rep.lift(&w.representative).unwrap().apply(&v));
        for other in quotient.points() {
            let slot = rep.index_of(&other.weight).unwrap();
            assert_eq!(
                !v[slot].is_zero(),
                group.bruhat_leq(&other.representative, &w.representative),
                "{} vs {}",
                other.representative.word_labels(&d4),
                w.representative.word_labels(&d4)
            );
        }
    }
}

fn e6_resolutions() -> Vec<(Vec<String>, SchubertChart)> {
    let format = Format::new([1, 5, 6, 2]).unwrap();
    let shape = format.shape();
    let (_, table) = format_double_cosets(&format).unwrap();
    table
        .cosets()
        .iter()
        .map(|co| &co.representative)
        .filter(|w| dynres_core::repdecomp::coset_betti_numbers(&shape, w.word()) == [1, 5, 6, 2])
        .map(|w| {
            let names = w.word().iter().map(|&i| shape.node(i).to_string()).collect();
            (names, patch_parametrization(&format, w).unwrap())
        })
        .collect()
}

#[test]
fn e6_generic_examples() {
    let budget = Budget::default();
    let cosets = e6_resolutions();
    assert_eq!(cosets.len(), 2);
    let mut m11 = Vec::new();
    for (word, chart) in &cosets {
        let c = schubert_resolution(chart).unwrap();
        assert_eq!(c.format(), [1, 5, 6, 2]);
        assert!(c.is_minimal());
        assert!(c.d1().try_mul(c.d2()).unwrap().is_zero());
        assert!(c.d2().try_mul(c.d3()).unwrap().is_zero());
        assert_eq!(schubert_ideal(chart).unwrap().codimension().unwrap(), Some(3));
        assert_eq!(validate_complex(&c, &budget).unwrap().perfect(), Verdict::Yes);

        let (_, s) = structure_maps(&c, &budget).unwrap();
        let zero = is_zero_matrix(&tor_m11(&c, &s).unwrap());
        m11.push(zero);
        match classify_family(&c, &budget).unwrap() {
            FamilyLabel::Coset { word: found, m11_zero, .. } => {
                assert_eq!(&found, word);
                assert_eq!(m11_zero, Some(zero));
            }
            other => panic!("{other:?}"),
        }

        let table = BettiTable::from_twist_vectors(c.format(), &height_twists(&c)).unwrap();
        assert!(admissibility_report(&table).unwrap().passes(), "{table:?}");
    }
    m11.sort();
    assert_eq!(m11, [false, true]);
}

#[test]
fn chart_json_lists_generators() {
    let format = Format::new([1, 4, 4, 1]).unwrap();
    let chart = patch_parametrization(&format, &Sigma::Longest.resolve(&format).unwrap()).unwrap();
    let json = serde_json::to_value(chart.to_json()).unwrap();
    assert_eq!(json["generators"].as_array().unwrap().len(), chart.generators().len());
    assert_eq!(json["variables"].as_array().unwrap().len(), chart.nvars());
}
