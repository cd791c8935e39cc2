//! Branching of `L(ω_{x1})^∨` to the Levi factor `gl(F3) × gl(F1)` of the
//! parabolic attached to `z1`, layer by layer in the `z1`-grading.
//!
//! Components are labelled by a pair of partitions `(λ, μ)` standing for
//! `S_λF3* ⊗ S_μF1`, normalised so that the degree-`j` component has
//! `|λ| = j` and `|μ| = 2j + 1`.

pub mod schur;
pub mod weights;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_core::{CartanMatrix, Format, Node, RootSystem, TShape};
use crate::weyl::{format_double_cosets, DoubleCosetTable, WeylGroup};

pub use schur::{schur_degrees, schur_dimension, schur_functor_name, KostkaTable, Partition};
pub use weights::{dominant_conjugate, weight_multiplicities, weyl_dimension, weyl_orbit, WeightMultiplicities};

/// One Levi-irreducible summand `S_λF3* ⊗ S_μF1` of `L(ω_{x1})^∨`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviComponent {
    /// `z1`-degree counted from the bottom component `F1`.
    pub degree: usize,
    pub f3_dual: Partition,
    pub f1: Partition,
    pub multiplicity: u64,
    pub extremal: bool,
    /// Levi-highest weight of the matching summand of `L(ω_{x1})`, as
    /// Dynkin labels.
    pub source_weight: Vec<i64>,
    /// `dim S_λF3* · dim S_μF1`.
    pub dimension: u64,
}

impl LeviComponent {
    pub fn label(&self) -> String {
        let a = schur_functor_name(&self.f3_dual, "F3*");
        let b = schur_functor_name(&self.f1, "F1");
        match (self.f3_dual.is_empty(), self.f1.is_empty()) {
            (true, _) => b,
            (_, true) => a,
            _ => format!("{a}⊗{b}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LeviDecomposition {
    pub format: Format,
    pub dimension: u64,
    pub components: Vec<LeviComponent>,
}

impl LeviDecomposition {
    pub fn extremal(&self) -> impl Iterator<Item = &LeviComponent> {
        self.components.iter().filter(|c| c.extremal)
    }

    pub fn at_degree(&self, j: usize) -> impl Iterator<Item = &LeviComponent> {
        self.components.iter().filter(move |c| c.degree == j)
    }

    pub fn total_dimension(&self) -> u64 {
        self.components.iter().map(|c| c.multiplicity * c.dimension).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.components.iter().map(|c| c.degree).max().unwrap_or(0)
    }
}

/// Node chains of the two Levi factors, ordered so that partition parts
/// are read off consecutively.
struct LeviChains {
    f1: Vec<usize>,
    f3: Vec<usize>,
}

impl LeviChains {
    fn new(shape: &TShape) -> Result<Self> {
        let mut f1 = Vec::new();
        for k in (1..shape.q()).rev() {
            f1.push(shape.node_index(Node::Y(k))?);
        }
        f1.push(shape.node_index(Node::U)?);
        for k in 1..shape.p() {
            f1.push(shape.node_index(Node::X(k))?);
        }
        let f3 = (2..shape.r()).map(|k| shape.node_index(Node::Z(k))).collect::<Result<Vec<_>>>()?;
        Ok(LeviChains { f1, f3 })
    }
}

/// Partition of a given size with prescribed consecutive differences
/// `λ_k − λ_{k+1} = labels[k]`, if one exists.
fn partition_from_labels(labels: &[i64], size: i64) -> Option<Partition> {
    let rows = labels.len() as i64 + 1;
    let weighted: i64 = labels.iter().enumerate().map(|(k, &l)| (k as i64 + 1) * l).sum();
    let rest = size - weighted;
    if rest % rows != 0 {
        return None;
    }
    let s = rest / rows;
    let mut parts = Vec::with_capacity(rows as usize);
    let mut acc = s;
    parts.push(acc);
    for &l in labels.iter().rev() {
        acc += l;
        parts.push(acc);
    }
    parts.reverse();
    if parts.iter().any(|&x| x < 0) {
        return None;
    }
    Partition::new(parts.into_iter().map(|x| x as u32).collect()).ok()
}

/// Reads a partition off the labels along a chain, in the given direction.
fn chain_partition(labels: &[i64], chain: &[usize], reversed: bool, size: i64) -> Option<Partition> {
    let mut l: Vec<i64> = chain.iter().map(|&i| labels[i]).collect();
    if reversed {
        l.reverse();
    }
    partition_from_labels(&l, size)
}

/// Levi-dominant weights (labels `≥ 0` away from `j`) in the `W`-orbit of a
/// weight.
pub fn levi_dominant_orbit_points(cartan: &CartanMatrix, weight: &[i64], j: usize) -> Vec<Vec<i64>> {
    weyl_orbit(cartan, weight)
        .into_iter()
        .filter(|v| v.iter().enumerate().all(|(i, &x)| i == j || x >= 0))
        .collect()
}

/// The `z1`-graded decomposition of `L(ω_{x1})^∨` for a cyclic Dynkin
/// format, with extremal components marked.
pub fn z1_decomposition(format: &Format) -> Result<LeviDecomposition> {
    let shape = format.require_cyclic_dynkin()?;
    let roots = RootSystem::new(&shape)?;
    let cartan = roots.cartan();
    let z1 = shape.node_index(Node::Z(1))?;
    let x1 = shape.node_index(Node::X(1))?;
    let chains = LeviChains::new(&shape)?;
    let f1_rank = format.f()[1];
    let f3_rank = format.f()[3];

    let top = roots.fundamental_labels(x1);
    let wm = weight_multiplicities(&roots, &top)?;
    let det = roots.det();
    let top_coords = roots.scaled_root_coords(&top);
    let layer_of = |labels: &[i64]| -> i64 { (top_coords[z1] - roots.scaled_root_coords(labels)[z1]) / det };

    // Levi-dominant weights of L(ω_{x1}), grouped by z1-layer.
    let mut layers: BTreeMap<i64, Vec<(Vec<i64>, u64)>> = BTreeMap::new();
    for (w, &m) in wm.dominant() {
        for v in levi_dominant_orbit_points(cartan, w, z1) {
            layers.entry(layer_of(&v)).or_default().push((v, m));
        }
    }

    // Orientation of the partition read-off, fixed by the bottom component
    // being F1 and the F3* factor in degree one being F3*.
    let f1_reversed = orientation(layers[&0].iter().map(|(v, _)| v), &chains.f1, 1)?;
    let f3_reversed = match layers.get(&1) {
        Some(layer) => orientation(layer.iter().map(|(v, _)| v), &chains.f3, 1)?,
        None => false,
    };

    let extremal_point = dominant_conjugate(cartan, &top);
    let mut kostka = KostkaTable::new();
    let mut components = Vec::new();
    for (&c, points) in &layers {
        let j = c as usize;
        let (size3, size1) = (j as i64, 2 * j as i64 + 1);
        let mut pool: BTreeMap<(Partition, Partition), (u64, Vec<i64>)> = BTreeMap::new();
        for (v, m) in points {
            let lam = chain_partition(v, &chains.f3, f3_reversed, size3);
            let mu = chain_partition(v, &chains.f1, f1_reversed, size1);
            let (Some(lam), Some(mu)) = (lam, mu) else {
                return Err(Error::Inconsistent(format!(
                    "weight {v:?} in degree {j} does not match the |λ| = j, |μ| = 2j+1 normalisation"
                )));
            };
            let entry = pool.entry((lam, mu)).or_insert((0, v.clone()));
            entry.0 += m;
        }
        let mut layer_components = Vec::new();
        while let Some(((lam, mu), (mult, weight))) = pool.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
            if mult == 0 {
                pool.remove(&(lam, mu));
                continue;
            }
            for ((nu, kappa), (m, _)) in pool.iter_mut() {
                let k = kostka.kostka(&lam, nu.parts()) * kostka.kostka(&mu, kappa.parts());
                if k > 0 {
                    let sub = mult * k;
                    if *m < sub {
                        return Err(Error::Inconsistent(format!(
                            "negative multiplicity while branching degree {j}"
                        )));
                    }
                    *m -= sub;
                }
            }
            let extremal = dominant_conjugate(cartan, &weight) == extremal_point;
            let dimension = schur_dimension(&lam, f3_rank)? * schur_dimension(&mu, f1_rank)?;
            layer_components.push(LeviComponent {
                degree: j,
                f3_dual: lam,
                f1: mu,
                multiplicity: mult,
                extremal,
                source_weight: weight,
                dimension,
            });
        }
        components.extend(layer_components);
    }
    let out = LeviDecomposition { format: *format, dimension: wm.dimension(), components };
    if out.total_dimension() != out.dimension {
        return Err(Error::Inconsistent(format!(
            "components add up to {} but the module has dimension {}",
            out.total_dimension(),
            out.dimension
        )));
    }
    Ok(out)
}

fn orientation<'a>(points: impl Iterator<Item = &'a Vec<i64>>, chain: &[usize], size: i64) -> Result<bool> {
    if chain.is_empty() {
        return Ok(false);
    }
    let pts: Vec<&Vec<i64>> = points.collect();
    let target = Partition::row(size as u32);
    for reversed in [false, true] {
        if pts.iter().any(|v| chain_partition(v, chain, reversed, size).as_ref() == Some(&target)) {
            return Ok(reversed);
        }
    }
    Err(Error::Inconsistent("no orientation gives the standard bottom component".into()))
}

/// Flags components whose source weight is `W`-conjugate to `ω_{x1}`.
pub fn mark_extremal(decomp: &LeviDecomposition) -> Result<LeviDecomposition> {
    let shape = decomp.format.require_dynkin()?;
    let roots = RootSystem::new(&shape)?;
    let x1 = shape.node_index(Node::X(1))?;
    let target = roots.fundamental_labels(x1);
    let mut out = decomp.clone();
    for c in &mut out.components {
        c.extremal = dominant_conjugate(roots.cartan(), &c.source_weight) == target;
    }
    Ok(out)
}

/// Pairing of double cosets with extremal components: entry `k` is the
/// index (into `decomp.components`) of the component labelled by coset `k`.
pub fn coset_component_correspondence(decomp: &LeviDecomposition, table: &DoubleCosetTable) -> Result<Vec<usize>> {
    table
        .cosets()
        .iter()
        .map(|c| {
            decomp
                .components
                .iter()
                .position(|comp| comp.extremal && comp.source_weight == c.levi_dominant_weight)
                .ok_or_else(|| Error::Inconsistent(format!("no component for coset {:?}", c.representative.word())))
        })
        .collect()
}

/// Betti numbers `(1, b1, b2, b3)` of the family labelled by a double
/// coset, read from the `y`- and `z`-arm nodes used by its minimal
/// representative.
pub fn coset_betti_numbers(shape: &TShape, word: &[usize]) -> [usize; 4] {
    let mut d = 0;
    let mut t = 0;
    for &i in word {
        match shape.node(i) {
            Node::Y(k) => d = d.max(k),
            Node::Z(k) => t = t.max(k),
            _ => {}
        }
    }
    [1, 3 + d, 2 + d + t, t]
}

/// Betti numbers of the families labelled by the nontrivial double cosets,
/// in coset order.
pub fn betti_options(format: &Format) -> Result<Vec<[usize; 4]>> {
    let shape = format.require_cyclic_dynkin()?;
    let (_, table) = format_double_cosets(format)?;
    Ok(table
        .cosets()
        .iter()
        .filter(|c| !c.representative.is_identity())
        .map(|c| coset_betti_numbers(&shape, c.representative.word()))
        .collect())
}

/// Convenience: the Weyl group and double cosets together with the
/// decomposition for one format.
pub struct FormatData {
    pub group: WeylGroup,
    pub cosets: DoubleCosetTable,
    pub decomposition: LeviDecomposition,
}

pub fn format_data(format: &Format) -> Result<FormatData> {
    let (group, cosets) = format_double_cosets(format)?;
    let decomposition = z1_decomposition(format)?;
    Ok(FormatData { group, cosets, decomposition })
}
