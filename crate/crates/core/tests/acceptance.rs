//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{all_elements, is_unipotent, random_u1, scaled, subword_order, wedge_matrix, Freudenthal};
use dynres_core::betti_check::{admissibility_report, BettiTable};
use dynres_core::graded_res::examples::{
    generic_skew, koszul3, maximal_ideal_square, non_perfect_example, pfaffian_complex, submaximal_pfaffians,
};
use dynres_core::graded_res::*;
use dynres_core::polyalg::{combinations, ideal_equal, Budget, Coeff, Ideal, MultiPoly};
use dynres_core::repdecomp::{coset_betti_numbers, weight_multiplicities, z1_decomposition, Partition};
use dynres_core::schubert::*;
use dynres_core::weyl::{count_table, family_count, format_double_cosets, table_grid, WeylGroup};
use dynres_core::{Format, Node, RootSystem};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn fmt(f: [usize; 4]) -> Format {
    Format::new(f).expect("valid format")
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let grid = ok(table_grid(5, 5))?;
    let expected: [&[usize]; 6] = [&[2, 2, 2, 2, 2], &[2, 3, 4, 5, 6], &[3, 6, 18, 109], &[3, 13], &[4, 63], &[4]];
    for (d, row) in expected.iter().enumerate() {
        for t in 0..5 {
            let want = row.get(t).copied();
            ensure!(grid[d][t] == want, "#({d},{}) = {:?}, expected {want:?}", t + 1, grid[d][t]);
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("all printed entries match, {elapsed:.1?}"))
}

fn family_counts() -> Outcome {
    let start = Instant::now();
    let cases = [([1, 5, 6, 2], 2), ([1, 6, 7, 2], 7), ([1, 5, 7, 3], 11), ([1, 7, 8, 2], 49), ([1, 5, 8, 4], 90)];
    let mut got = Vec::new();
    for (f, want) in cases {
        let n = ok(family_count(&fmt(f)))?;
        ensure!(n == want, "{f:?}: {n} families, expected {want}");
        got.push(n);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!("{got:?}, {elapsed:.1?}"))
}

fn part(p: &[u32]) -> Partition {
    Partition::new(p.to_vec()).expect("partition")
}

/// `2j+1` spread over four rows as evenly as possible.
fn balanced(j: u32) -> Partition {
    let total = 2 * j + 1;
    part(&(0..4).map(|k| total / 4 + u32::from(k < total % 4)).collect::<Vec<_>>())
}

fn decomposition_fidelity() -> Outcome {
    let e6 = ok(z1_decomposition(&fmt([1, 5, 6, 2])))?;
    let expected = [
        (0, part(&[]), part(&[1]), true),
        (1, part(&[1]), part(&[1, 1, 1]), true),
        (2, part(&[2]), part(&[1, 1, 1, 1, 1]), true),
        (2, part(&[1, 1]), part(&[2, 1, 1, 1]), true),
        (2, part(&[1, 1]), part(&[1, 1, 1, 1, 1]), false),
        (3, part(&[2, 1]), part(&[2, 2, 1, 1, 1]), true),
        (4, part(&[2, 2]), part(&[2, 2, 2, 2, 1]), true),
    ];
    ensure!(e6.components.len() == expected.len(), "E6 has {} components", e6.components.len());
    for (deg, a, b, ext) in &expected {
        ensure!(
            e6.components.iter().any(|c| c.degree == *deg && &c.f3_dual == a && &c.f1 == b && c.extremal == *ext),
            "E6 lacks {a:?} ⊗ {b:?} in degree {deg}"
        );
    }
    ensure!(e6.total_dimension() == 78, "E6 dimension {}", e6.total_dimension());

    for n in [5usize, 7, 9] {
        let d = ok(z1_decomposition(&fmt([1, n, n, 1])))?;
        let top = (n - 1) / 2;
        ensure!(d.components.len() == top + 1, "(1,{n},{n},1) has {} components", d.components.len());
        for (j, c) in d.components.iter().enumerate() {
            let j32 = j as u32;
            let want_a = if j == 0 { part(&[]) } else { Partition::row(j32) };
            ensure!(
                c.degree == j && c.f3_dual == want_a && c.f1 == Partition::column(2 * j32 + 1) && c.extremal,
                "(1,{n},{n},1) component {j}: {}",
                c.label()
            );
        }
    }

    for n in [5usize, 6, 7] {
        let d = ok(z1_decomposition(&fmt([1, 4, n, n - 3])))?;
        ensure!(d.components.len() == n - 2, "(1,4,{n},{}) has {} components", n - 3, d.components.len());
        for (j, c) in d.components.iter().enumerate() {
            let j32 = j as u32;
            let want_a = if j == 0 { part(&[]) } else { Partition::column(j32) };
            ensure!(
                c.degree == j && c.f3_dual == want_a && c.f1 == balanced(j32) && c.extremal,
                "(1,4,{n},{}) component {j}: {}",
                n - 3,
                c.label()
            );
        }
        let a = ((n - 3) / 2) as u32;
        let b = if n % 2 == 0 { 3 } else { 1 };
        let last: Vec<u32> = (0..4).map(|k| if k < b { a + 1 } else { a }).collect();
        ensure!(d.components.last().map(|c| c.f1.clone()) == Some(part(&last)), "(1,4,{n},{}) top component", n - 3);
    }
    Ok("E6 list, (1,n,n,1) for n=5,7,9 and (1,4,n,n-3) for n=5,6,7 match".into())
}

fn extremal_equals_cosets() -> Outcome {
    let mut checked = 0;
    for d in 0..=6 {
        for t in 1..=7 {
            let Ok(format) = Format::from_deviation_type(d, t) else { continue };
            let shape = format.shape();
            if !shape.is_finite() || shape.rank() > 8 {
                continue;
            }
            let decomposition = ok(z1_decomposition(&format))?;
            let (_, table) = ok(format_double_cosets(&format))?;
            let extremal = decomposition.extremal().count();
            ensure!(extremal == table.len(), "{:?}: {extremal} extremal vs {} cosets", format.f(), table.len());
            ensure!(count_table(d, t).ok() == Some(table.len()), "count_table disagrees at ({d},{t})");
            checked += 1;
        }
    }
    Ok(format!("{checked} Dynkin formats of rank ≤ 8"))
}

fn koszul_structure() -> Outcome {
    let c = koszul3();
    let (m, s) = ok(structure_maps(&c, &Budget::default()))?;
    let a1 = m.a1_scalar().ok_or("a1 is not a scalar")?.clone();
    ensure!(a1.is_constant() && !a1.is_zero(), "a1 = {a1} is not a unit");
    let inv = Coeff::one() / a1.constant_term();
    let singles: Vec<Vec<usize>> = (0..3).map(|i| vec![i]).collect();
    let pairs: Vec<(Vec<usize>, Vec<usize>)> =
        product_pairs(3).into_iter().map(|(i, j)| (singles[i].clone(), singles[j].clone())).collect();
    ensure!(s.w3_1.constant_part() == scaled(&wedge_matrix(3, 2, &pairs), &inv), "w3_1 is not the wedge product");
    let doubles = combinations(3, 2);
    let mixed: Vec<(Vec<usize>, Vec<usize>)> =
        (0..3).flat_map(|i| doubles.iter().map(move |d| (vec![i], d.clone()))).collect();
    ensure!(s.w2_1.constant_part() == scaled(&wedge_matrix(3, 3, &mixed), &inv), "w2_1 is not the wedge product");
    ensure!(
        s.w3_1.entries().iter().chain(s.w2_1.entries()).all(MultiPoly::is_constant),
        "structure maps have non-constant entries"
    );
    ensure!(ok(check_lifting_identities(&c, &m, &s))?, "lifting identities fail");
    Ok(format!("a1 = {a1}, products equal the exterior algebra"))
}

fn gauge_invariance() -> Outcome {
    let cases = [("Koszul", koszul3(), 7u64), ("(1,5,5,1)", ok(pfaffian_complex(&generic_skew(5)))?, 11)];
    for (name, c, seed) in cases {
        let (m, s) = ok(structure_maps(&c, &Budget::default()))?;
        let reference = format!("{:?}", ok(tor_m11(&c, &s))?);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [_, f1, _, f3] = c.format();
        for k in 0..20 {
            let u1 = random_u1(&mut rng, c.nvars(), f3, f1 * (f1 - 1) / 2);
            let moved = ok(gauge_action(&c, &m, &s, &u1))?;
            ensure!(format!("{:?}", ok(tor_m11(&c, &moved))?) == reference, "{name}: m11 changed at draw {k}");
        }
    }
    Ok("m11 byte-identical under 20 perturbations each".into())
}

fn betti_restrictions() -> Outcome {
    let affine = ok(BettiTable::from_complex(&ok(maximal_ideal_square())?))?;
    let r = ok(admissibility_report(&affine))?;
    ensure!(!r.dynkin && r.degree_zero_generator.is_none(), "(1,6,8,3) not flagged: {r:?}");

    let non_perfect = ok(BettiTable::from_complex(&non_perfect_example()))?;
    ensure!(non_perfect.s1 == [2, 2, 2, 2] && non_perfect.s3 == [4], "unexpected twists {non_perfect:?}");
    let r = ok(admissibility_report(&non_perfect))?;
    ensure!(r.degree_zero_generator == Some(false) && !r.passes(), "non-perfect table passes: {r:?}");

    let koszul = ok(BettiTable::from_complex(&koszul3()))?;
    ensure!(ok(admissibility_report(&koszul))?.passes(), "Koszul table rejected");

    let mut schubert = 0;
    for chart in e6_charts()? {
        let c = ok(schubert_resolution(&chart))?;
        let t = ok(BettiTable::from_twist_vectors(c.format(), &height_twists(&c)))?;
        let r = ok(admissibility_report(&t))?;
        ensure!(r.passes(), "Schubert table {t:?} rejected: {r:?}");
        schubert += 1;
    }
    ensure!(schubert == 2, "found {schubert} Schubert tables");

    let parity = ok(BettiTable::new([1, 5, 5, 1], vec![3; 5], vec![5; 5], vec![8]))?;
    let r = ok(admissibility_report(&parity))?;
    ensure!(!r.parity_ok && r.degree_zero_generator == Some(false), "parity table not flagged: {r:?}");
    Ok("non-Dynkin, degree-zero and parity flags as expected".into())
}

fn pfaffian_oracle() -> Outcome {
    let start = Instant::now();
    let format = fmt([1, 5, 5, 1]);
    let chart = ok(patch_parametrization(&format, &ok(Sigma::Longest.resolve(&format))?))?;
    let a = ok(pfaffian_identification(&chart))?;
    let schubert = ok(schubert_ideal(&chart))?;
    let pfaffians = ok(Ideal::new(chart.nvars(), submaximal_pfaffians(&a)))?;
    ensure!(ok(ideal_equal(&schubert, &pfaffians))?, "ideals differ");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!("equal ideals in {} variables, {elapsed:.1?}", chart.nvars()))
}

fn e6_charts() -> Result<Vec<SchubertChart>, String> {
    let format = fmt([1, 5, 6, 2]);
    let shape = format.shape();
    let (_, table) = ok(format_double_cosets(&format))?;
    table
        .cosets()
        .iter()
        .map(|co| &co.representative)
        .filter(|w| coset_betti_numbers(&shape, w.word()) == [1, 5, 6, 2])
        .map(|w| ok(patch_parametrization(&format, w)))
        .collect()
}

fn e6_examples() -> Outcome {
    let budget = Budget::default();
    let charts = e6_charts()?;
    ensure!(charts.len() == 2, "{} cosets with Betti numbers (1,5,6,2)", charts.len());
    let shape = fmt([1, 5, 6, 2]).shape();
    let mut m11 = Vec::new();
    for chart in &charts {
        let word: Vec<String> = chart.sigma().word().iter().map(|&i| shape.node(i).to_string()).collect();
        let c = ok(schubert_resolution(chart))?;
        ensure!(c.is_minimal(), "{word:?}: not minimal");
        ensure!(ok(c.d1().try_mul(c.d2()))?.is_zero() && ok(c.d2().try_mul(c.d3()))?.is_zero(), "{word:?}: d∘d ≠ 0");
        ensure!(ok(ok(schubert_ideal(chart))?.codimension())? == Some(3), "{word:?}: codimension is not 3");
        let (_, s) = ok(structure_maps(&c, &budget))?;
        let zero = is_zero_matrix(&ok(tor_m11(&c, &s))?);
        match ok(classify_family(&c, &budget))? {
            FamilyLabel::Coset { word: found, .. } if found == word => {}
            other => return Err(format!("{word:?} classified as {other:?}")),
        }
        m11.push(zero);
    }
    ensure!(m11.iter().filter(|z| **z).count() == 1, "m11 vanishing pattern {m11:?}");
    Ok(format!("m11 = 0 on exactly one coset (pattern {m11:?}); both round-trip"))
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut samples = 0;
    let reps: [([usize; 4], &[Node]); 2] =
        [([1, 5, 5, 1], &[Node::X(1), Node::U, Node::Y(2)]), ([1, 5, 6, 2], &[Node::Y(2), Node::X(1), Node::Z(2)])];
    for (f, nodes) in reps {
        let shape = fmt(f).shape();
        let roots = ok(RootSystem::new(&shape))?;
        for &node in nodes {
            let mut highest = vec![0; shape.rank()];
            highest[ok(shape.node_index(node))?] = 1;
            let oracle = Freudenthal::new(&roots, &highest);
            let library = ok(weight_multiplicities(&roots, &highest))?;
            for _ in 0..(500 / nodes.len() + 1) {
                let mu = &oracle.support()[rng.gen_range(0..oracle.support().len())];
                let mut nu = mu.clone();
                for _ in 0..rng.gen_range(0..16) {
                    nu = oracle.reflect(rng.gen_range(0..shape.rank()), &nu);
                }
                let m = oracle.get(mu);
                ensure!(oracle.get(&nu) == m, "oracle not invariant at {nu:?}");
                ensure!(library.multiplicity(roots.cartan(), &nu) == m, "multiplicity differs at {nu:?}");
                samples += 1;
            }
        }
    }
    ensure!(samples >= 1000, "only {samples} samples");

    let group = ok(WeylGroup::new(&fmt([1, 4, 4, 1]).shape()))?;
    let elements = all_elements(&group);
    ensure!(elements.len() == 192, "|W(D4)| = {}", elements.len());
    let below = subword_order(&group, &elements);
    let n = elements.len();
    for a in 0..n {
        for b in 0..n {
            ensure!(group.bruhat_leq(&elements[a], &elements[b]) == below[a][b], "Bruhat differs from subword order");
            ensure!(a == b || !(below[a][b] && below[b][a]), "antisymmetry fails");
            if below[a][b] {
                ensure!((0..n).all(|c| !below[b][c] || below[a][c]), "transitivity fails");
            }
        }
    }

    let mut charts = 0;
    for f in [[1, 4, 4, 1], [1, 5, 5, 1], [1, 4, 5, 2], [1, 6, 6, 1], [1, 4, 6, 3], [1, 5, 6, 2]] {
        let format = fmt(f);
        let shape = format.shape();
        for node in [Node::X(1), Node::Y(shape.q() - 1), Node::Z(shape.r() - 1)] {
            let rep = ok(fundamental_rep(&shape, ok(shape.node_index(node))?))?;
            for which in [Nilradical::X1, Nilradical::Z1] {
                ensure!(is_unipotent(&ok(generic_exp(&rep, which))?), "{f:?} {node}: exp not unipotent");
            }
        }
        let (_, table) = ok(format_double_cosets(&format))?;
        for co in table.cosets() {
            let c = ok(schubert_resolution(&ok(patch_parametrization(&format, &co.representative))?))?;
            ensure!(ok(c.d1().try_mul(c.d2()))?.is_zero() && ok(c.d2().try_mul(c.d3()))?.is_zero(), "{f:?}: d∘d ≠ 0");
            charts += 1;
        }
    }
    Ok(format!("{samples} weights, {n}^3 Bruhat triples, {charts} charts"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("double-coset table", table_reproduction),
        ("family counts", family_counts),
        ("decomposition fidelity", decomposition_fidelity),
        ("extremal components = double cosets", extremal_equals_cosets),
        ("Koszul structure maps", koszul_structure),
        ("gauge invariance of m11", gauge_invariance),
        ("Betti restrictions", betti_restrictions),
        ("Schubert/Pfaffian oracle", pfaffian_oracle),
        ("E6 generic examples", e6_examples),
        ("property suites", property_suites),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.1?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.1?}]", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
