//! Weyl-group combinatorics on simply-laced root systems.
//!
//! A group element is identified by where it sends `ρ` (a regular dominant
//! weight), which is a faithful and compact encoding. Reduced words are
//! recovered from that image by greedy descent.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_core::{reflect_root, reflect_weight, Format, Node, RootSystem, TShape};

/// An element of the Weyl group, stored as a reduced word together with the
/// image of `ρ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeylElement {
    word: Vec<usize>,
    rho_image: Vec<i64>,
}

impl WeylElement {
    /// Reduced word as node indices; the element is `s_{w[0]} s_{w[1]} ⋯`.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn rho_image(&self) -> &[i64] {
        &self.rho_image
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Word rendered with node labels, e.g. `z1,u,x1`.
    pub fn word_labels(&self, shape: &TShape) -> String {
        self.word.iter().map(|&i| shape.node(i).to_string()).collect::<Vec<_>>().join(",")
    }
}

/// A Weyl group together with its root system.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    roots: RootSystem,
}

impl WeylGroup {
    pub fn new(shape: &TShape) -> Result<Self> {
        Ok(WeylGroup { roots: RootSystem::new(shape)? })
    }

    pub fn from_roots(roots: RootSystem) -> Self {
        WeylGroup { roots }
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn shape(&self) -> &TShape {
        self.roots.shape()
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement { word: Vec::new(), rho_image: self.roots.rho() }
    }

    /// Applies the word right to left to a weight.
    pub fn act_on_word(&self, word: &[usize], labels: &[i64]) -> Vec<i64> {
        let a = self.roots.cartan();
        word.iter().rev().fold(labels.to_vec(), |v, &i| reflect_weight(a, &v, i))
    }

    /// The element with a given `ρ`-image; the image must lie in the
    /// `W`-orbit of `ρ`.
    pub fn from_rho_image(&self, image: Vec<i64>) -> WeylElement {
        let word = descent_word(self, &image);
        WeylElement { word, rho_image: image }
    }

    /// Any (not necessarily reduced) word; the stored word is reduced.
    pub fn element(&self, word: &[usize]) -> Result<WeylElement> {
        if let Some(&bad) = word.iter().find(|&&i| i >= self.rank()) {
            return Err(Error::UnknownNode(format!("index {bad}")));
        }
        let image = self.act_on_word(word, &self.roots.rho());
        Ok(self.from_rho_image(image))
    }

    pub fn element_from_nodes(&self, nodes: &[Node]) -> Result<WeylElement> {
        let idx = nodes
            .iter()
            .map(|&n| self.shape().node_index(n))
            .collect::<Result<Vec<_>>>()?;
        self.element(&idx)
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        self.element(&[i]).expect("valid node index")
    }

    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let image = self.act_on_word(&a.word, &b.rho_image);
        self.from_rho_image(image)
    }

    pub fn inverse(&self, a: &WeylElement) -> WeylElement {
        let w: Vec<usize> = a.word.iter().rev().copied().collect();
        self.element(&w).expect("valid word")
    }

    pub fn act_weight(&self, w: &WeylElement, labels: &[i64]) -> Vec<i64> {
        self.act_on_word(&w.word, labels)
    }

    pub fn act_root(&self, w: &WeylElement, root: &[i64]) -> Vec<i64> {
        let a = self.roots.cartan();
        w.word.iter().rev().fold(root.to_vec(), |v, &i| reflect_root(a, &v, i))
    }

    /// Images of all roots `±β` as a permutation of the index set
    /// `0..N` (positive roots) and `N..2N` (their negatives).
    pub fn root_permutation(&self, w: &WeylElement) -> Vec<usize> {
        let pos = self.roots.positive_roots();
        let n = pos.len();
        let lookup = |v: &[i64]| -> usize {
            if let Some(i) = self.roots.positive_root_index(v) {
                i
            } else {
                let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                n + self.roots.positive_root_index(&neg).expect("roots map to roots")
            }
        };
        let mut perm = Vec::with_capacity(2 * n);
        for sign in [1i64, -1] {
            for r in pos {
                let v: Vec<i64> = r.iter().map(|x| sign * x).collect();
                perm.push(lookup(&self.act_root(w, &v)));
            }
        }
        perm
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        let n = self.roots.positive_roots().len();
        self.root_permutation(w)[..n].iter().filter(|&&j| j >= n).count()
    }

    pub fn longest_element(&self) -> WeylElement {
        self.from_rho_image(self.roots.rho().iter().map(|x| -x).collect())
    }

    /// Is `s_i w < w`?
    pub fn is_left_descent(&self, w: &WeylElement, i: usize) -> bool {
        w.rho_image[i] < 0
    }

    /// Bruhat order, decided by the lifting property along left descents.
    pub fn bruhat_leq(&self, u: &WeylElement, w: &WeylElement) -> bool {
        let a = self.roots.cartan();
        let mut u_img = u.rho_image.clone();
        let mut w_img = w.rho_image.clone();
        let mut u_len = u.length();
        let mut w_len = w.length();
        loop {
            if u_len > w_len {
                return false;
            }
            if w_len == 0 {
                return u_len == 0;
            }
            let s = w_img.iter().position(|&x| x < 0).expect("nonidentity has a descent");
            w_img = reflect_weight(a, &w_img, s);
            w_len -= 1;
            if u_img[s] < 0 {
                u_img = reflect_weight(a, &u_img, s);
                u_len -= 1;
            }
        }
    }

    /// Orbit of `ω_t` with minimal coset representatives.
    pub fn parabolic_quotient(&self, t: usize) -> ParabolicQuotient {
        let a = self.roots.cartan();
        let start = self.roots.fundamental_labels(t);
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut points = vec![start.clone()];
        index.insert(start, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            let lam = points[k].clone();
            for i in 0..self.rank() {
                if lam[i] > 0 {
                    let img = reflect_weight(a, &lam, i);
                    if !index.contains_key(&img) {
                        index.insert(img.clone(), points.len());
                        queue.push_back(points.len());
                        points.push(img);
                    }
                }
            }
        }
        let mut entries: Vec<QuotientPoint> = points
            .into_iter()
            .map(|weight| {
                let word = descent_word(self, &weight);
                let rho_image = self.act_on_word(&word, &self.roots.rho());
                QuotientPoint { weight, representative: WeylElement { word, rho_image } }
            })
            .collect();
        entries.sort_by(|x, y| {
            x.representative
                .length()
                .cmp(&y.representative.length())
                .then_with(|| x.representative.word.cmp(&y.representative.word))
        });
        let index = entries.iter().enumerate().map(|(i, e)| (e.weight.clone(), i)).collect();
        ParabolicQuotient { node: t, points: entries, index }
    }

    /// Double cosets `W_{P_j} \ W / W_{P_t}`.
    pub fn double_cosets(&self, j: usize, t: usize) -> DoubleCosetTable {
        let quotient = self.parabolic_quotient(t);
        let a = self.roots.cartan();
        let mut class_of = vec![usize::MAX; quotient.len()];
        let mut cosets = Vec::new();
        for start in 0..quotient.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = cosets.len();
            let mut members = vec![start];
            class_of[start] = cid;
            let mut queue = VecDeque::from([start]);
            while let Some(k) = queue.pop_front() {
                let lam = &quotient.points[k].weight;
                for i in (0..self.rank()).filter(|&i| i != j) {
                    if lam[i] == 0 {
                        continue;
                    }
                    let img = reflect_weight(a, lam, i);
                    let m = quotient.index[&img];
                    if class_of[m] == usize::MAX {
                        class_of[m] = cid;
                        members.push(m);
                        queue.push_back(m);
                    }
                }
            }
            members.sort_unstable();
            let rep = members[0];
            cosets.push(DoubleCoset {
                representative: quotient.points[rep].representative.clone(),
                levi_dominant_weight: quotient.points[rep].weight.clone(),
                members,
            });
        }
        DoubleCosetTable { left_node: j, right_node: t, quotient, cosets }
    }
}

/// Reduced word of the minimal element sending a dominant weight to `image`
/// (for `ρ` this is the unique element with that image).
fn descent_word(group: &WeylGroup, image: &[i64]) -> Vec<usize> {
    let a = group.roots.cartan();
    let mut v = image.to_vec();
    let mut word = Vec::new();
    while let Some(i) = v.iter().position(|&x| x < 0) {
        v = reflect_weight(a, &v, i);
        word.push(i);
    }
    word
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientPoint {
    pub weight: Vec<i64>,
    pub representative: WeylElement,
}

/// The `W`-orbit of `ω_t`, one minimal coset representative per point,
/// ordered by length and then by word.
#[derive(Debug, Clone)]
pub struct ParabolicQuotient {
    node: usize,
    points: Vec<QuotientPoint>,
    index: HashMap<Vec<i64>, usize>,
}

impl ParabolicQuotient {
    pub fn node(&self) -> usize {
        self.node
    }
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
    pub fn points(&self) -> &[QuotientPoint] {
        &self.points
    }
    pub fn position(&self, weight: &[i64]) -> Option<usize> {
        self.index.get(weight).copied()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DoubleCoset {
    /// Minimal-length element of the double coset.
    pub representative: WeylElement,
    /// Image of `ω_t` under the representative; dominant away from `j`.
    pub levi_dominant_weight: Vec<i64>,
    /// Indices into the parabolic quotient.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct DoubleCosetTable {
    left_node: usize,
    right_node: usize,
    quotient: ParabolicQuotient,
    cosets: Vec<DoubleCoset>,
}

impl DoubleCosetTable {
    pub fn left_node(&self) -> usize {
        self.left_node
    }
    pub fn right_node(&self) -> usize {
        self.right_node
    }
    pub fn quotient(&self) -> &ParabolicQuotient {
        &self.quotient
    }
    pub fn cosets(&self) -> &[DoubleCoset] {
        &self.cosets
    }
    pub fn len(&self) -> usize {
        self.cosets.len()
    }
    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// The coset containing a given orbit point of `ω_t`.
    pub fn coset_of_weight(&self, weight: &[i64]) -> Option<usize> {
        let k = self.quotient.position(weight)?;
        self.cosets.iter().position(|c| c.members.binary_search(&k).is_ok())
    }
}

/// Double cosets `W_{P_{z1}} \ W / W_{P_{x1}}` attached to a format.
pub fn format_double_cosets(format: &Format) -> Result<(WeylGroup, DoubleCosetTable)> {
    let shape = format.require_dynkin()?;
    let group = WeylGroup::new(&shape)?;
    let j = shape.node_index(Node::Z(1))?;
    let t = shape.node_index(Node::X(1))?;
    let table = group.double_cosets(j, t);
    Ok((group, table))
}

/// `#(d,t)`: number of double cosets for `T_{2,d+1,t+1}`.
pub fn count_table(d: usize, t: usize) -> Result<usize> {
    if t == 0 {
        return Err(Error::MalformedFormat(format!("type t = {t} must be at least 1")));
    }
    let format = Format::from_deviation_type(d, t)?;
    let shape = format.shape();
    if !shape.is_finite() {
        return Err(Error::NonFiniteType { p: shape.p(), q: shape.q(), r: shape.r() });
    }
    Ok(format_double_cosets(&format)?.1.len())
}

/// `#(d,t)` extended by `1` on the boundary `d = -1` or `t = 0`.
fn extended_count(d: i64, t: i64) -> Result<i64> {
    if d < 0 || t <= 0 {
        Ok(1)
    } else {
        Ok(count_table(d as usize, t as usize)? as i64)
    }
}

/// Number of families with Betti numbers exactly `(1, 3+d, 2+d+t, t)`.
pub fn family_count(format: &Format) -> Result<usize> {
    format.require_cyclic_dynkin()?;
    let (d, t) = format.deviation_type().expect("cyclic format");
    let (d, t) = (d as i64, t as i64);
    let n = extended_count(d, t)? - extended_count(d - 1, t)? - extended_count(d, t - 1)?
        + extended_count(d - 1, t - 1)?;
    usize::try_from(n).map_err(|_| Error::Inconsistent(format!("negative family count {n}")))
}

/// Rows of the double-coset table for `d = 0..=max_d`, `t = 1..=max_t`;
/// `None` marks non-Dynkin entries.
pub fn table_grid(max_d: usize, max_t: usize) -> Result<Vec<Vec<Option<usize>>>> {
    (0..=max_d)
        .map(|d| {
            (1..=max_t)
                .map(|t| match count_table(d, t) {
                    Ok(c) => Ok(Some(c)),
                    Err(Error::NonFiniteType { .. }) => Ok(None),
                    Err(e) => Err(e),
                })
                .collect()
        })
        .collect()
}
