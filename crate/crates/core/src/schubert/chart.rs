//! Affine patches `σ·exp(Z)·v` of `G/P_{x1}` and the complexes built on them.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::Serialize;

use super::rep::{adjoint_rep, is_e6, is_minuscule, minuscule_rep, RepMatrices, RepMatrix};
use crate::error::{Error, Result};
use crate::graded_res::GradedComplex;
use crate::lie_core::{Format, Node, RootSystem, TShape};
use crate::polyalg::solve::kernel_basis;
use crate::polyalg::{int, Coeff, Grading, Ideal, Monomial, MultiPoly, PolyMatrix};
use crate::weyl::{WeylElement, WeylGroup};

/// Which unipotent radical the generic element `Z` ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilradical {
    /// `n_{x1}^−`, spanned by `f_α` with `α` involving `α_{x1}`.
    X1,
    /// `n_{z1}^−`.
    Z1,
}

/// Positive roots with a positive coefficient at `node`, as indices into
/// [`RootSystem::positive_roots`].
pub fn nilradical_roots(roots: &RootSystem, node: usize) -> Vec<usize> {
    (0..roots.positive_roots().len()).filter(|&k| roots.positive_roots()[k][node] > 0).collect()
}

/// `exp(Z)·v` for `Z = Σ ξ_a f_{α_a}`, with `ξ_a` the `a`-th variable.
fn exp_apply(rep: &RepMatrices, chart: &[usize], v: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let nvars = chart.len();
    let mut total = v.clone();
    let mut term = v;
    for k in 1.. {
        let inv_k = Coeff::new(1.into(), (k as i64).into());
        let mut next = vec![MultiPoly::zero(nvars); rep.dim()];
        for (a, &root) in chart.iter().enumerate() {
            let var = Monomial::var(nvars, a);
            for (i, j, c) in rep.f_root(root).entries() {
                for (m, coef) in term[j].terms() {
                    next[i].add_term(m.mul(&var), coef * c * &inv_k);
                }
            }
        }
        if next.iter().all(MultiPoly::is_zero) {
            break;
        }
        for (t, n) in total.iter_mut().zip(&next) {
            for (m, c) in n.terms() {
                t.add_term(m.clone(), c.clone());
            }
        }
        term = next;
    }
    total
}

fn basis_vector(dim: usize, nvars: usize, k: usize) -> Vec<MultiPoly> {
    let mut v = vec![MultiPoly::zero(nvars); dim];
    v[k] = MultiPoly::one(nvars);
    v
}

/// `exp(Z)` as a polynomial matrix, `Z` generic in the chosen nilradical
/// with one variable per root (in root-system order).
pub fn generic_exp(rep: &RepMatrices, which: Nilradical) -> Result<PolyMatrix> {
    let node = match which {
        Nilradical::X1 => rep.shape().node_index(Node::X(1))?,
        Nilradical::Z1 => rep.shape().node_index(Node::Z(1))?,
    };
    let chart = nilradical_roots(rep.roots(), node);
    let nvars = chart.len();
    let dim = rep.dim();
    let mut out = PolyMatrix::zeros(nvars, dim, dim);
    for j in 0..dim {
        let col = exp_apply(rep, &chart, basis_vector(dim, nvars, j));
        for (i, p) in col.into_iter().enumerate() {
            out.set(i, j, p);
        }
    }
    Ok(out)
}

type RepKey = (usize, usize, usize, usize);

fn rep_cache() -> &'static Mutex<HashMap<RepKey, Arc<RepMatrices>>> {
    static CACHE: OnceLock<Mutex<HashMap<RepKey, Arc<RepMatrices>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `L(ω_node)` when it is minuscule, or the adjoint module of `E6` at
/// `x1`; memoised per shape.
pub fn fundamental_rep(shape: &TShape, node: usize) -> Result<Arc<RepMatrices>> {
    let key = (shape.p(), shape.q(), shape.r(), node);
    if let Some(rep) = rep_cache().lock().expect("cache lock").get(&key) {
        return Ok(rep.clone());
    }
    let roots = RootSystem::new(shape).map_err(|_| Error::UnsupportedShape(shape.to_string()))?;
    let rep = if node < roots.rank() && is_minuscule(&roots, node)? {
        minuscule_rep(shape, node)?
    } else if is_e6(shape) && Some(node) == shape.index(Node::X(1)) {
        adjoint_rep(shape)?
    } else {
        return Err(Error::NotMinuscule(format!("no explicit model of L(ω_{}) for {shape}", shape.node(node))));
    };
    let rep = Arc::new(rep);
    rep_cache().lock().expect("cache lock").insert(key, rep.clone());
    Ok(rep)
}

/// A choice of `σ`: the identity, the longest element, or an explicit word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sigma {
    Identity,
    Longest,
    Word(Vec<Node>),
}

impl FromStr for Sigma {
    type Err = Error;

    /// Accepts `e`, `w0`, or `s:` followed by comma-separated node names.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "e" => Ok(Sigma::Identity),
            "w0" => Ok(Sigma::Longest),
            other => {
                let body = other
                    .strip_prefix("s:")
                    .ok_or_else(|| Error::Parse(format!("sigma `{other}`: expected e, w0 or s:<nodes>")))?;
                let nodes = body.split(',').filter(|t| !t.trim().is_empty()).map(Node::from_str).collect::<Result<_>>()?;
                Ok(Sigma::Word(nodes))
            }
        }
    }
}

impl Sigma {
    /// The minimal-length representative of `σ·W_{P_{x1}}`.
    pub fn resolve(&self, format: &Format) -> Result<WeylElement> {
        let shape = format.require_dynkin()?;
        let group = WeylGroup::new(&shape)?;
        let w = match self {
            Sigma::Identity => group.identity(),
            Sigma::Longest => group.longest_element(),
            Sigma::Word(nodes) => group.element_from_nodes(nodes)?,
        };
        minimal_in_coset(&group, &w)
    }
}

fn minimal_in_coset(group: &WeylGroup, w: &WeylElement) -> Result<WeylElement> {
    let t = group.shape().node_index(Node::X(1))?;
    let quotient = group.parabolic_quotient(t);
    let image = group.act_weight(w, &group.roots().fundamental_labels(t));
    let k = quotient.position(&image).ok_or_else(|| Error::Inconsistent("weight outside the orbit".into()))?;
    Ok(quotient.points()[k].representative.clone())
}

/// Shared data for the charts of one format.
struct Setup {
    format: Format,
    roots: RootSystem,
    group: WeylGroup,
    x1: usize,
    z1: usize,
    rep_x: Arc<RepMatrices>,
    rep_y: Arc<RepMatrices>,
    rep_z: Arc<RepMatrices>,
    chart: Vec<usize>,
    grading: Grading,
}

impl Setup {
    fn new(format: &Format) -> Result<Self> {
        let shape = format.require_cyclic_dynkin()?;
        let unsupported = || Error::UnsupportedFormat(format.f());
        if shape.q() < 2 {
            return Err(unsupported());
        }
        let x1 = shape.node_index(Node::X(1))?;
        let z1 = shape.node_index(Node::Z(1))?;
        let yd = shape.node_index(Node::Y(shape.q() - 1))?;
        let zt = shape.node_index(Node::Z(shape.r() - 1))?;
        let rep = |node| match fundamental_rep(&shape, node) {
            Err(Error::NotMinuscule(_)) => Err(unsupported()),
            other => other,
        };
        let (rep_x, rep_y, rep_z) = (rep(x1)?, rep(yd)?, rep(zt)?);
        let roots = RootSystem::new(&shape)?;
        let chart = nilradical_roots(&roots, x1);
        let grading = Grading::new(chart.iter().map(|&k| roots.positive_roots()[k].clone()).collect())?;
        let group = WeylGroup::from_roots(roots.clone());
        Ok(Setup { format: *format, roots, group, x1, z1, rep_x, rep_y, rep_z, chart, grading })
    }

    fn nvars(&self) -> usize {
        self.chart.len()
    }

    /// `det ×` simple-root coordinates of a weight.
    fn degree(&self, labels: &[i64]) -> Vec<i64> {
        self.roots.scaled_root_coords(labels)
    }

    /// Basis indices of the component of `rep` on which the coefficient of
    /// `α_node` in `λ − μ` vanishes.
    fn top_component(&self, rep: &RepMatrices, node: usize) -> Vec<usize> {
        let hw = rep.highest_weight();
        (0..rep.dim())
            .filter(|&k| {
                let diff: Vec<i64> = hw.iter().zip(&rep.weights()[k]).map(|(a, b)| a - b).collect();
                self.degree(&diff)[node] == 0
            })
            .collect()
    }

    /// `σ·exp(Z)·e_k` in `rep`.
    fn image(&self, rep: &RepMatrices, lift: &RepMatrix, k: usize) -> Vec<MultiPoly> {
        let v = exp_apply(rep, &self.chart, basis_vector(rep.dim(), self.nvars(), k));
        lift.apply_poly(&v)
    }
}

/// Pairs each basis vector in `a` with the one in `b` whose weight is its
/// negative away from `skip`.
fn match_dual(a: &[Vec<i64>], b: &[Vec<i64>], skip: usize) -> Result<Vec<usize>> {
    let key = |w: &[i64], sign: i64| -> Vec<i64> {
        w.iter().enumerate().map(|(i, &x)| if i == skip { 0 } else { sign * x }).collect()
    };
    let lookup: HashMap<Vec<i64>, usize> = b.iter().enumerate().map(|(k, w)| (key(w, -1), k)).collect();
    if lookup.len() != b.len() || a.len() != b.len() {
        return Err(Error::Inconsistent("Levi components are not dual".into()));
    }
    a.iter()
        .map(|w| lookup.get(&key(w, 1)).copied().ok_or_else(|| Error::Inconsistent("Levi components are not dual".into())))
        .collect()
}

/// The patch `σC^e` of `G/P_{x1}` for a cyclic format.
#[derive(Debug, Clone)]
pub struct SchubertChart {
    format: Format,
    sigma: WeylElement,
    roots: Vec<Vec<i64>>,
    grading: Grading,
    weights: Vec<Vec<i64>>,
    plucker: Vec<MultiPoly>,
    top_z1: Vec<usize>,
}

impl SchubertChart {
    pub fn format(&self) -> &Format {
        &self.format
    }

    /// The minimal coset representative `σ`.
    pub fn sigma(&self) -> &WeylElement {
        &self.sigma
    }

    pub fn nvars(&self) -> usize {
        self.roots.len()
    }

    /// The root `α` (simple-root coordinates) dual to each variable.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    /// `ξ_α` has degree `α`, in simple-root coordinates.
    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn variable_names(&self) -> Vec<String> {
        self.roots.iter().map(|r| format!("t{}", r.iter().map(i64::to_string).collect::<String>())).collect()
    }

    /// Weights of the basis of `L(ω_{x1})` indexing [`Self::plucker`].
    pub fn basis_weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    /// All Plücker coordinates of `σ·exp(Z)·v`, scaled so that the one at
    /// `σω_{x1}` equals 1.
    pub fn plucker(&self) -> &[MultiPoly] {
        &self.plucker
    }

    /// Indices of the coordinates that cut out the Schubert variety.
    pub fn generator_indices(&self) -> &[usize] {
        &self.top_z1
    }

    pub fn generators(&self) -> Vec<MultiPoly> {
        self.top_z1.iter().map(|&k| self.plucker[k].clone()).collect()
    }
}

/// Parametrizes `σC^e` for a `D`-family format or `(1,5,6,2)`.
pub fn patch_parametrization(format: &Format, sigma: &WeylElement) -> Result<SchubertChart> {
    let setup = Setup::new(format)?;
    build_chart(&setup, sigma)
}

fn build_chart(setup: &Setup, sigma: &WeylElement) -> Result<SchubertChart> {
    let sigma = minimal_in_coset(&setup.group, sigma)?;
    let rep = &setup.rep_x;
    let hw = rep.index_of(rep.highest_weight()).expect("highest weight is simple");
    let lift = rep.lift(&sigma)?;
    let mut plucker = setup.image(rep, &lift, hw);
    let pivot_weight = setup.group.act_weight(&sigma, rep.highest_weight());
    let pivot = rep.index_of(&pivot_weight).expect("extremal weights are simple");
    let scale = plucker[pivot].constant_term();
    if scale.is_zero() || !plucker[pivot].is_constant() {
        return Err(Error::Inconsistent("patch coordinate p_σ is not a unit".into()));
    }
    let inv = Coeff::one() / scale;
    plucker = plucker.iter().map(|p| p.scale(&inv)).collect();
    Ok(SchubertChart {
        format: setup.format,
        sigma,
        roots: setup.chart.iter().map(|&k| setup.roots.positive_roots()[k].clone()).collect(),
        grading: setup.grading.clone(),
        weights: rep.weights().to_vec(),
        plucker,
        top_z1: setup.top_component(rep, setup.z1),
    })
}

/// The ideal `I_σ` of the Schubert variety `X^w` in the chart.
pub fn schubert_ideal(chart: &SchubertChart) -> Result<Ideal> {
    Ideal::new(chart.nvars(), chart.generators())
}

/// Basis indices of the Levi components carrying `F1`, `F2`, `F3` and their
/// duals, paired up.
struct Layout {
    /// `F1*` inside `L(ω_{x1})`.
    nu: Vec<usize>,
    /// `F1` inside `L(ω_{y_d})`, aligned with `nu`.
    nu_y: Vec<usize>,
    /// `F2` inside `L(ω_{y_d})`.
    rho: Vec<usize>,
    /// `F2*` inside `L(ω_{z_t})`, aligned with `rho`.
    tau: Vec<usize>,
    /// `F3*` inside `L(ω_{z_t})`.
    kappa: Vec<usize>,
}

fn layout(setup: &Setup) -> Result<Layout> {
    let [_, f1, f2, f3] = setup.format.f();
    let (rx, ry, rz) = (&setup.rep_x, &setup.rep_y, &setup.rep_z);
    let nu = setup.top_component(rx, setup.z1);
    let nu_y = setup.top_component(ry, setup.z1);
    let rho = setup.top_component(ry, setup.x1);
    let tau = setup.top_component(rz, setup.x1);
    let kappa = setup.top_component(rz, setup.z1);
    if [nu.len(), rho.len(), kappa.len()] != [f1, f2, f3] {
        return Err(Error::Inconsistent(format!(
            "component sizes {:?} do not match the format",
            [nu.len(), rho.len(), kappa.len()]
        )));
    }
    let weights_of = |rep: &RepMatrices, idx: &[usize]| idx.iter().map(|&k| rep.weights()[k].clone()).collect::<Vec<_>>();
    let pair_y = match_dual(&weights_of(rx, &nu), &weights_of(ry, &nu_y), setup.z1)?;
    let pair_z = match_dual(&weights_of(ry, &rho), &weights_of(rz, &tau), setup.x1)?;
    Ok(Layout {
        nu_y: pair_y.iter().map(|&k| nu_y[k]).collect(),
        tau: pair_z.iter().map(|&k| tau[k]).collect(),
        nu,
        rho,
        kappa,
    })
}

/// Uncalibrated differentials on a chart, with their twists.
struct RawMaps {
    p: Vec<MultiPoly>,
    m2: Vec<Vec<MultiPoly>>,
    m3: Vec<Vec<MultiPoly>>,
    s1: Vec<Vec<i64>>,
    s2: Vec<Vec<i64>>,
    s3: Vec<Vec<i64>>,
}

fn raw_maps(setup: &Setup, lay: &Layout, chart: &SchubertChart) -> Result<RawMaps> {
    let [_, f1, f2, f3] = setup.format.f();
    let sigma = chart.sigma();
    let sigma_inv = setup.group.inverse(sigma);
    let pull = |w: &[i64]| setup.degree(&setup.group.act_weight(&sigma_inv, w));
    let (rx, ry, rz) = (&setup.rep_x, &setup.rep_y, &setup.rep_z);

    let p: Vec<MultiPoly> = lay.nu.iter().map(|&k| chart.plucker[k].clone()).collect();
    let lift_y = ry.lift(sigma)?;
    let lift_z = rz.lift(sigma)?;
    let mut m2 = vec![Vec::with_capacity(f2); f1];
    for &col in &lay.rho {
        let v = setup.image(ry, &lift_y, col);
        for (k, &row) in lay.nu_y.iter().enumerate() {
            m2[k].push(v[row].clone());
        }
    }
    let mut m3 = vec![Vec::with_capacity(f2); f3];
    for &col in &lay.tau {
        let v = setup.image(rz, &lift_z, col);
        for (l, &row) in lay.kappa.iter().enumerate() {
            m3[l].push(v[row].clone());
        }
    }

    let omega = setup.degree(rx.highest_weight());
    let s1: Vec<Vec<i64>> = lay.nu.iter().map(|&k| vsub(&omega, &pull(&rx.weights()[k]))).collect();
    let shift_a = constant((0..f1).map(|k| vsub(&s1[k], &pull(&ry.weights()[lay.nu_y[k]]))), "F1 twists")?;
    let s2: Vec<Vec<i64>> = lay.rho.iter().map(|&k| vadd(&setup.degree(&ry.weights()[k]), &shift_a)).collect();
    let shift_b = constant((0..f2).map(|m| vadd(&s2[m], &setup.degree(&rz.weights()[lay.tau[m]]))), "F2 twists")?;
    let s3: Vec<Vec<i64>> = lay.kappa.iter().map(|&k| vsub(&shift_b, &pull(&rz.weights()[k]))).collect();
    let det = setup.roots.det();
    let unscale = |v: Vec<Vec<i64>>| -> Result<Vec<Vec<i64>>> {
        v.into_iter()
            .map(|t| {
                if t.iter().all(|x| x % det == 0) {
                    Ok(t.iter().map(|x| x / det).collect())
                } else {
                    Err(Error::Inconsistent("twist outside the root lattice".into()))
                }
            })
            .collect()
    };
    Ok(RawMaps { p, m2, m3, s1: unscale(s1)?, s2: unscale(s2)?, s3: unscale(s3)? })
}

fn vsub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vadd(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn constant(mut values: impl Iterator<Item = Vec<i64>>, what: &str) -> Result<Vec<i64>> {
    let first = values.next().ok_or_else(|| Error::Inconsistent(format!("{what}: empty")))?;
    if values.all(|v| v == first) {
        Ok(first)
    } else {
        Err(Error::Inconsistent(format!("{what} are not homogeneous")))
    }
}

/// Diagonal scalars making the uncalibrated maps compose to zero.
#[derive(Debug, Clone)]
struct Calibration {
    f1: Vec<Coeff>,
    f2: Vec<Coeff>,
}

fn calibration_cache() -> &'static Mutex<HashMap<[usize; 4], Arc<Calibration>>> {
    static CACHE: OnceLock<Mutex<HashMap<[usize; 4], Arc<Calibration>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `exp(Σ a_α e_α)·exp(Σ b_α f_α)` with small integer coefficients that
/// depend only on `seed`, so the same group element acts on every module.
fn sample_group_element(rep: &RepMatrices, seed: usize) -> Result<RepMatrix> {
    let npos = rep.roots().positive_roots().len();
    let coeff = |k: usize, salt: usize| int(((k * 7 + seed * 13 + k * k * (seed + salt)) % 11) as i64 - 5);
    let mut upper = RepMatrix::zero(rep.dim());
    let mut lower = RepMatrix::zero(rep.dim());
    for k in 0..npos {
        upper = upper.add(&rep.e_root(k).scale(&coeff(k, 1)));
        lower = lower.add(&rep.f_root(k).scale(&coeff(k, 5)));
    }
    Ok(upper.exp_nilpotent()?.mul(&lower.exp_nilpotent()?))
}

/// Solves for the one-dimensional kernel of a growing family of linear
/// constraints, normalising the first entry to 1.
fn one_dim_kernel(unknowns: usize, mut rows_for: impl FnMut(usize) -> Result<Vec<Vec<Coeff>>>) -> Result<Vec<Coeff>> {
    let mut rows = Vec::new();
    for seed in 1..=12 {
        rows.extend(rows_for(seed)?);
        let kernel = kernel_basis(&rows, unknowns);
        if kernel.is_empty() {
            return Err(Error::Inconsistent("no pairing scalars make the maps compose to zero".into()));
        }
        if kernel.len() == 1 && seed >= 2 {
            let v = kernel.into_iter().next().expect("one vector");
            if v.iter().any(Zero::is_zero) {
                return Err(Error::Inconsistent("degenerate pairing scalars".into()));
            }
            let lead = v[0].clone();
            return Ok(v.iter().map(|x| x / &lead).collect());
        }
    }
    Err(Error::Inconsistent("pairing scalars are not determined".into()))
}

fn calibrate(setup: &Setup, lay: &Layout) -> Result<Arc<Calibration>> {
    let key = setup.format.f();
    if let Some(c) = calibration_cache().lock().expect("cache lock").get(&key) {
        return Ok(c.clone());
    }
    let [_, f1, f2, _] = setup.format.f();
    let (rx, ry, rz) = (&setup.rep_x, &setup.rep_y, &setup.rep_z);
    let hw = rx.index_of(rx.highest_weight()).expect("highest weight is simple");
    let samples = |seed: usize| -> Result<(Vec<Vec<Coeff>>, Vec<Vec<Coeff>>)> {
        let (gx, gy, gz) =
            (sample_group_element(rx, seed)?, sample_group_element(ry, seed)?, sample_group_element(rz, seed)?);
        let mut m2 = vec![vec![Coeff::zero(); f2 + 1]; f1];
        for k in 0..f1 {
            m2[k][f2] = gx.get(lay.nu[k], hw);
            for (m, &col) in lay.rho.iter().enumerate() {
                m2[k][m] = gy.get(lay.nu_y[k], col);
            }
        }
        let m3 = lay.kappa.iter().map(|&row| lay.tau.iter().map(|&col| gz.get(row, col)).collect()).collect();
        Ok((m2, m3))
    };
    let c1 = one_dim_kernel(f1, |seed| {
        let (m2, _) = samples(seed)?;
        Ok((0..f2).map(|m| (0..f1).map(|k| &m2[k][f2] * &m2[k][m]).collect()).collect())
    })?;
    let c2 = one_dim_kernel(f2, |seed| {
        let (m2, m3) = samples(seed)?;
        let mut rows: Vec<Vec<Coeff>> = Vec::new();
        for row2 in &m2 {
            for row3 in &m3 {
                rows.push((0..f2).map(|m| &row2[m] * &row3[m]).collect());
            }
        }
        Ok(rows)
    })?;
    let cal = Arc::new(Calibration { f1: c1, f2: c2 });
    calibration_cache().lock().expect("cache lock").insert(key, cal.clone());
    Ok(cal)
}

/// The length-three complex `F3 → F2 → F1 → R` on the chart, built from
/// `L(ω_{x1})`, `L(ω_{y_d})` and `L(ω_{z_t})`, multigraded by the root
/// lattice. Checks `d∘d = 0` exactly.
pub fn schubert_resolution(chart: &SchubertChart) -> Result<GradedComplex> {
    let setup = Setup::new(chart.format())?;
    let lay = layout(&setup)?;
    let cal = calibrate(&setup, &lay)?;
    let raw = raw_maps(&setup, &lay, chart)?;
    let [_, f1, f2, f3] = setup.format.f();
    let nvars = setup.nvars();
    let zero_twist = vec![0; setup.roots.rank()];

    let d1 = PolyMatrix::from_rows(nvars, vec![raw.p.clone()])?.with_twists(vec![zero_twist], raw.s1.clone())?;
    let mut d2 = PolyMatrix::zeros(nvars, f1, f2);
    for k in 0..f1 {
        for m in 0..f2 {
            d2.set(k, m, raw.m2[k][m].scale(&cal.f1[k]));
        }
    }
    let d2 = d2.with_twists(raw.s1.clone(), raw.s2.clone())?;
    let mut d3 = PolyMatrix::zeros(nvars, f2, f3);
    for m in 0..f2 {
        for l in 0..f3 {
            d3.set(m, l, raw.m3[l][m].scale(&cal.f2[m]));
        }
    }
    let d3 = d3.with_twists(raw.s2.clone(), raw.s3.clone())?;
    if !d1.try_mul(&d2)?.is_zero() || !d2.try_mul(&d3)?.is_zero() {
        return Err(Error::Inconsistent(format!(
            "chart complex for {} at σ = {} does not compose to zero",
            setup.format,
            chart.sigma().word_labels(setup.roots.shape())
        )));
    }
    GradedComplex::new(setup.grading.clone(), d1, d2, d3)
}

/// Scalar twists `s_i` under the height functional, so that every chart
/// variable has degree equal to the height of its root.
pub fn height_twists(c: &GradedComplex) -> [Vec<i64>; 4] {
    let mut out: [Vec<i64>; 4] = Default::default();
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = c.twists(i).iter().map(|v| v.iter().sum()).collect();
    }
    out
}

fn m11_cache() -> &'static Mutex<HashMap<([usize; 4], Vec<usize>), bool>> {
    static CACHE: OnceLock<Mutex<HashMap<([usize; 4], Vec<usize>), bool>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Whether `Tor_1 ⊗ Tor_1 → Tor_2` vanishes for the chart complex at `σ`
/// given by a word in node indices. Requires the complex to be minimal.
pub fn coset_m11_vanishes(format: &Format, word: &[usize]) -> Result<bool> {
    let key = (format.f(), word.to_vec());
    if let Some(&v) = m11_cache().lock().expect("cache lock").get(&key) {
        return Ok(v);
    }
    let setup = Setup::new(format)?;
    let sigma = setup.group.element(word)?;
    let chart = build_chart(&setup, &sigma)?;
    let complex = schubert_resolution(&chart)?;
    let (_, maps) = crate::graded_res::structure_maps(&complex, &crate::polyalg::Budget::default())?;
    let value = crate::graded_res::is_zero_matrix(&crate::graded_res::tor_m11(&complex, &maps)?);
    m11_cache().lock().expect("cache lock").insert(key, value);
    Ok(value)
}

/// JSON summary of a chart: variables with their roots, `σ`, generators.
#[derive(Debug, Clone, Serialize)]
pub struct ChartJson {
    pub format: [usize; 4],
    pub sigma: Vec<String>,
    pub variables: Vec<String>,
    pub roots: Vec<Vec<i64>>,
    pub generators: Vec<serde_json::Value>,
}

impl SchubertChart {
    pub fn to_json(&self) -> ChartJson {
        let shape = self.format.shape();
        ChartJson {
            format: self.format.f(),
            sigma: self.sigma.word().iter().map(|&i| shape.node(i).to_string()).collect(),
            variables: self.variable_names(),
            roots: self.roots.clone(),
            generators: self.generators().iter().map(crate::polyalg::json::poly_to_json).collect(),
        }
    }
}
