use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Coeff, Monomial, MultiPoly};
use crate::error::{Error, Result};

/// Monomial orders available to the Gröbner engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TermOrder {
    #[default]
    Grlex,
    Grevlex,
}

impl TermOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| match self {
            TermOrder::Grlex => a.cmp(b),
            TermOrder::Grevlex => {
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        })
    }
}

/// Caps for the Gröbner engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerBudget {
    /// Maximum number of S-polynomial reductions.
    pub max_steps: usize,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget { max_steps: 20_000 }
    }
}

/// Integer polynomial with terms sorted decreasingly in a term order.
#[derive(Debug, Clone)]
struct IPoly {
    terms: Vec<(Vec<u32>, BigInt)>,
}

impl IPoly {
    fn from_poly(p: &MultiPoly, order: TermOrder) -> IPoly {
        let lcm_den = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<(Vec<u32>, BigInt)> = p
            .terms()
            .map(|(m, c)| (m.0.clone(), (c * Coeff::from_integer(lcm_den.clone())).to_integer()))
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out = IPoly { terms };
        out.make_primitive();
        out
    }

    fn to_poly(&self, nvars: usize) -> MultiPoly {
        let lc = Coeff::from_integer(self.terms[0].1.clone());
        MultiPoly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| (Monomial(m.clone()), Coeff::from_integer(c.clone()) / &lc)),
        )
    }

    fn lm(&self) -> &[u32] {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
    }

    /// `s·self − t·x^m·g`, merged in order.
    fn combine(&self, s: &BigInt, t: &BigInt, m: &[u32], g: &IPoly, order: TermOrder) -> IPoly {
        let shifted = g.terms.iter().map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect::<Vec<u32>>(), c * t));
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = shifted.peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => {
                    let (e, c) = a.next().expect("peeked");
                    out.push((e.clone(), c * s));
                }
                Ordering::Less => {
                    let (e, c) = b.next().expect("peeked");
                    out.push((e, -c));
                }
                Ordering::Equal => {
                    let (e, c) = a.next().expect("peeked");
                    let (_, d) = b.next().expect("peeked");
                    let v = c * s - d;
                    if !v.is_zero() {
                        out.push((e.clone(), v));
                    }
                }
            }
        }
        IPoly { terms: out }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Divides the pending polynomial and the collected remainder by their
/// common content.
fn shrink_content(f: &mut IPoly, rem: &mut [(Vec<u32>, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, c) in f.terms.iter().chain(rem.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for (_, c) in f.terms.iter_mut().chain(rem.iter_mut()) {
        *c /= &g;
    }
}

/// Full reduction of `f` modulo `basis`; the result is primitive.
fn reduce(mut f: IPoly, basis: &[&IPoly], order: TermOrder) -> IPoly {
    let mut rem: Vec<(Vec<u32>, BigInt)> = Vec::new();
    let mut steps = 0usize;
    while !f.is_zero() {
        let (lm, lc) = f.terms[0].clone();
        if let Some(g) = basis.iter().find(|g| divides(g.lm(), &lm)) {
            let glc = &g.terms[0].1;
            let d = glc.gcd(&lc);
            let s = glc / &d;
            let t = &lc / &d;
            let m: Vec<u32> = lm.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
            f = f.combine(&s, &t, &m, g, order);
            if !s.is_one() {
                for (_, c) in &mut rem {
                    *c *= &s;
                }
            }
        } else {
            rem.push(f.terms.remove(0));
        }
        steps += 1;
        if steps % 32 == 0 {
            shrink_content(&mut f, &mut rem);
        }
    }
    let mut out = IPoly { terms: rem };
    out.make_primitive();
    out
}

/// A reduced Gröbner basis, monic, sorted by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: TermOrder,
    nvars: usize,
    polys: Vec<MultiPoly>,
    leading: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> TermOrder {
        self.order
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }
    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }

    fn as_ipolys(&self) -> Vec<IPoly> {
        self.polys.iter().map(|p| IPoly::from_poly(p, self.order)).collect()
    }

    /// Normal form of `f`, scaled to be monic in the basis order.
    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        let basis = self.as_ipolys();
        let refs: Vec<&IPoly> = basis.iter().collect();
        let r = reduce(IPoly::from_poly(f, self.order), &refs, self.order);
        if r.is_zero() {
            MultiPoly::zero(self.nvars)
        } else {
            r.to_poly(self.nvars)
        }
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Krull dimension of `R/I`, or `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let supports: Vec<u64> = self
            .leading
            .iter()
            .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        Some(self.nvars - min_hitting_set(&supports, self.nvars))
    }

    /// Codimension (height) of `I`; `None` for the unit ideal.
    pub fn codimension(&self) -> Option<usize> {
        self.dimension().map(|d| self.nvars - d)
    }
}

/// Size of a smallest set of variables meeting every support.
fn min_hitting_set(supports: &[u64], nvars: usize) -> usize {
    let mut sets: Vec<u64> = supports.to_vec();
    sets.sort_by_key(|s| s.count_ones());
    let mut minimal: Vec<u64> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|m| m & s == *m) {
            minimal.push(s);
        }
    }
    let mut best = nvars;
    hit(&minimal, 0, 0, &mut best);
    best
}

fn hit(sets: &[u64], chosen: u64, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    let uncovered: Vec<u64> = sets.iter().copied().filter(|s| s & chosen == 0).collect();
    let Some(&smallest) = uncovered.iter().min_by_key(|s| s.count_ones()) else {
        *best = size;
        return;
    };
    // lower bound: greedy disjoint packing of uncovered sets
    let mut used = 0u64;
    let mut packing = 0;
    for s in &uncovered {
        if s & used == 0 {
            used |= s;
            packing += 1;
        }
    }
    if size + packing >= *best {
        return;
    }
    let mut bits = smallest;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        hit(&uncovered, chosen | b, size + 1, best);
        bits &= bits - 1;
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u32>,
}

/// Buchberger's algorithm with the Gebauer–Möller pair criteria.
pub fn buchberger(gens: &[MultiPoly], order: TermOrder, budget: &GroebnerBudget) -> Result<GroebnerBasis> {
    let nvars = gens.first().map_or(0, MultiPoly::nvars);
    if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::VariableMismatch(nvars, bad.nvars()));
    }
    let mut polys: Vec<IPoly> = Vec::new();
    let mut basis: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<IPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| IPoly::from_poly(g, order)).collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for f in inputs {
        let refs: Vec<&IPoly> = basis.iter().map(|&k| &polys[k]).collect();
        let h = reduce(f, &refs, order);
        if !h.is_zero() {
            update(&mut polys, &mut basis, &mut pairs, h);
        }
    }

    let mut steps = 0;
    while !pairs.is_empty() {
        steps += 1;
        if steps > budget.max_steps {
            return Err(Error::ResourceBudgetExceeded(format!(
                "Gröbner basis needs more than {} S-pair reductions",
                budget.max_steps
            )));
        }
        let k = (0..pairs.len())
            .min_by(|&a, &b| order.cmp(&pairs[a].lcm, &pairs[b].lcm))
            .expect("nonempty");
        let pair = pairs.swap_remove(k);
        let s = spoly(&polys[pair.i], &polys[pair.j], &pair.lcm, order);
        let refs: Vec<&IPoly> = basis.iter().map(|&k| &polys[k]).collect();
        let h = reduce(s, &refs, order);
        if !h.is_zero() {
            if h.lm().iter().all(|&e| e == 0) {
                let one = IPoly { terms: vec![(vec![0; nvars], BigInt::one())] };
                return Ok(finish(vec![one], nvars, order));
            }
            update(&mut polys, &mut basis, &mut pairs, h);
        }
    }
    let members: Vec<IPoly> = basis.iter().map(|&k| polys[k].clone()).collect();
    Ok(finish(members, nvars, order))
}

fn spoly(f: &IPoly, g: &IPoly, l: &[u32], order: TermOrder) -> IPoly {
    let mf: Vec<u32> = l.iter().zip(f.lm()).map(|(a, b)| a - b).collect();
    let mg: Vec<u32> = l.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
    let (cf, cg) = (&f.terms[0].1, &g.terms[0].1);
    let d = cf.gcd(cg);
    let f_shift = IPoly { terms: f.terms.iter().map(|(e, c)| (e.iter().zip(&mf).map(|(a, b)| a + b).collect(), c.clone())).collect() };
    let mut s = f_shift.combine(&(cg / &d), &(cf / &d), &mg, g, order);
    s.make_primitive();
    s
}

fn update(polys: &mut Vec<IPoly>, basis: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: IPoly) {
    let hi = polys.len();
    let hlm = h.lm().to_vec();
    polys.push(h);

    let candidates: Vec<Pair> = basis.iter().map(|&g| Pair { i: g, j: hi, lcm: lcm(polys[g].lm(), &hlm) }).collect();
    let mut kept: Vec<Pair> = Vec::new();
    for (idx, p) in candidates.iter().enumerate() {
        let co = coprime(polys[p.i].lm(), &hlm);
        let dominated = candidates.iter().enumerate().any(|(o, q)| {
            o != idx && divides(&q.lcm, &p.lcm) && (q.lcm != p.lcm || o < idx)
        });
        if co || !dominated {
            kept.push(p.clone());
        }
    }
    kept.retain(|p| !coprime(polys[p.i].lm(), &hlm));

    pairs.retain(|p| {
        let l = &p.lcm;
        !(divides(&hlm, l) && lcm(polys[p.i].lm(), &hlm) != *l && lcm(polys[p.j].lm(), &hlm) != *l)
    });
    pairs.extend(kept);

    basis.retain(|&g| !divides(&hlm, polys[g].lm()));
    basis.push(hi);
}

fn finish(members: Vec<IPoly>, nvars: usize, order: TermOrder) -> GroebnerBasis {
    let mut minimal: Vec<IPoly> = Vec::new();
    let mut sorted = members;
    sorted.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for f in sorted {
        if !minimal.iter().any(|g| divides(g.lm(), f.lm())) {
            minimal.push(f);
        }
    }
    let reduced: Vec<IPoly> = (0..minimal.len())
        .map(|k| {
            let others: Vec<&IPoly> = minimal.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, g)| g).collect();
            reduce_tail(&minimal[k], &others, order)
        })
        .collect();
    let polys: Vec<MultiPoly> = reduced.iter().map(|p| p.to_poly(nvars)).collect();
    let leading = reduced.iter().map(|p| Monomial(p.lm().to_vec())).collect();
    GroebnerBasis { order, nvars, polys, leading }
}

/// Interreduces the tail of `original` while keeping its leading term.
fn reduce_tail(original: &IPoly, others: &[&IPoly], order: TermOrder) -> IPoly {
    let mut f = original.clone();
    let mut head = vec![f.terms.remove(0)];
    let mut rem: Vec<(Vec<u32>, BigInt)> = Vec::new();
    while !f.is_zero() {
        let (lm, lc) = f.terms[0].clone();
        if let Some(g) = others.iter().find(|g| divides(g.lm(), &lm)) {
            let glc = &g.terms[0].1;
            let d = glc.gcd(&lc);
            let s = glc / &d;
            let t = &lc / &d;
            let m: Vec<u32> = lm.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
            f = f.combine(&s, &t, &m, g, order);
            if !s.is_one() {
                for (_, c) in head.iter_mut().chain(rem.iter_mut()) {
                    *c *= &s;
                }
            }
        } else {
            rem.push(f.terms.remove(0));
        }
    }
    head.extend(rem);
    let mut out = IPoly { terms: head };
    out.make_primitive();
    out
}

/// Ideal given by generators, with a lazily computed Gröbner basis.
#[derive(Debug)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<MultiPoly>,
    order: TermOrder,
    budget: GroebnerBudget,
    basis: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal { nvars: self.nvars, gens: self.gens.clone(), order: self.order, budget: self.budget, basis }
    }
}

impl Ideal {
    pub fn new(nvars: usize, gens: Vec<MultiPoly>) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::VariableMismatch(nvars, bad.nvars()));
        }
        Ok(Ideal { nvars, gens, order: TermOrder::Grlex, budget: GroebnerBudget::default(), basis: OnceLock::new() })
    }

    pub fn with_order(mut self, order: TermOrder) -> Self {
        self.order = order;
        self.basis = OnceLock::new();
        self
    }

    pub fn with_budget(mut self, budget: GroebnerBudget) -> Self {
        self.budget = budget;
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let gb = if self.gens.iter().all(MultiPoly::is_zero) {
            GroebnerBasis { order: self.order, nvars: self.nvars, polys: Vec::new(), leading: Vec::new() }
        } else {
            buchberger(&self.gens, self.order, &self.budget)?
        };
        Ok(self.basis.get_or_init(|| gb))
    }

    /// Krull dimension of the quotient; `None` for the unit ideal.
    pub fn dimension(&self) -> Result<Option<usize>> {
        Ok(self.groebner()?.dimension())
    }

    /// Height of the ideal, which equals its grade in a polynomial ring;
    /// `None` for the unit ideal.
    pub fn codimension(&self) -> Result<Option<usize>> {
        Ok(self.groebner()?.codimension())
    }

    pub fn contains(&self, f: &MultiPoly) -> Result<bool> {
        Ok(self.groebner()?.contains(f))
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }
}

/// Whether `grade I ≥ k`, growing the generator set until the bound is
/// reached so that large ideals are rarely needed in full.
pub fn grade_at_least(gens: &[MultiPoly], k: usize, order: TermOrder, budget: &GroebnerBudget) -> Result<bool> {
    let nonzero: Vec<&MultiPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    if k == 0 {
        return Ok(true);
    }
    if nonzero.is_empty() {
        return Ok(false);
    }
    if nonzero.iter().any(|g| !g.constant_term().is_zero()) {
        let unit_const = nonzero.iter().any(|g| g.is_constant());
        if unit_const {
            return Ok(true);
        }
    }
    if leading_term_bound(&nonzero, k) {
        return Ok(true);
    }
    let mut current: Vec<MultiPoly> = Vec::new();
    let mut next = 0;
    let mut batch = k.max(1);
    loop {
        while current.len() < batch && next < nonzero.len() {
            current.push(nonzero[next].clone());
            next += 1;
        }
        let gb = buchberger(&current, order, budget)?;
        match gb.codimension() {
            None => return Ok(true),
            Some(c) if c >= k => return Ok(true),
            _ => {}
        }
        if next >= nonzero.len() {
            return Ok(false);
        }
        current = gb.polys().to_vec();
        batch = current.len() + batch.max(1);
    }
}

/// The leading terms of generators span a monomial ideal contained in the
/// initial ideal, so its height bounds `grade I` from below. Several
/// monomial orders are tried.
fn leading_term_bound(gens: &[&MultiPoly], k: usize) -> bool {
    let lex = |a: &[u32], b: &[u32]| a.cmp(b);
    let revlex_vars = |a: &[u32], b: &[u32]| a.iter().rev().cmp(b.iter().rev());
    let by_degree = |inner: fn(&[u32], &[u32]) -> Ordering| {
        move |a: &[u32], b: &[u32]| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| inner(a, b))
        }
    };
    let orders: [&dyn Fn(&[u32], &[u32]) -> Ordering; 5] = [
        &|a, b| TermOrder::Grlex.cmp(a, b),
        &|a, b| TermOrder::Grevlex.cmp(a, b),
        &lex,
        &revlex_vars,
        &by_degree(|a, b| a.iter().rev().cmp(b.iter().rev())),
    ];
    orders.iter().any(|order| {
        let supports: Vec<Vec<usize>> = gens
            .iter()
            .filter_map(|g| g.terms().map(|(m, _)| m).max_by(|a, b| order(&a.0, &b.0)))
            .map(|m| m.support().collect())
            .collect();
        !has_small_cover(&supports, &mut Vec::new(), k - 1)
    })
}

/// Whether at most `room` further variables, added to `chosen`, meet every
/// support set.
fn has_small_cover(supports: &[Vec<usize>], chosen: &mut Vec<usize>, room: usize) -> bool {
    let Some(open) = supports.iter().find(|s| !s.iter().any(|v| chosen.contains(v))) else {
        return true;
    };
    if room == 0 {
        return false;
    }
    for &v in open {
        chosen.push(v);
        let found = has_small_cover(supports, chosen, room - 1);
        chosen.pop();
        if found {
            return true;
        }
    }
    false
}

/// Equality of ideals by mutual reduction of generators.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    if a.nvars() != b.nvars() {
        return Err(Error::VariableMismatch(a.nvars(), b.nvars()));
    }
    let ga = a.groebner()?;
    let gb = b.groebner()?;
    Ok(b.generators().iter().all(|f| ga.contains(f)) && a.generators().iter().all(|f| gb.contains(f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &["x", "y", "z"]).unwrap()
    }

    fn gb(gens: &[&str]) -> GroebnerBasis {
        let g: Vec<MultiPoly> = gens.iter().map(|s| p(s)).collect();
        buchberger(&g, TermOrder::Grlex, &GroebnerBudget::default()).unwrap()
    }

    #[test]
    fn variables() {
        let b = gb(&["x", "y"]);
        assert_eq!(b.polys(), &[p("y"), p("x")]);
        assert_eq!(b.dimension(), Some(1));
    }

    #[test]
    fn principal_is_monic() {
        let b = gb(&["3*x*y - 6*z^2"]);
        assert_eq!(b.polys(), &[p("x*y - 2*z^2")]);
    }

    #[test]
    fn twisted_pair_codim_two() {
        let b = gb(&["x^2 - y", "y^2 - x"]);
        assert_eq!(b.codimension(), Some(2));
        assert!(b.contains(&p("x^3 - x*y")));
    }

    #[test]
    fn unit_ideal() {
        let b = gb(&["x + 1", "x"]);
        assert!(b.is_unit());
        assert_eq!(b.dimension(), None);
    }

    #[test]
    fn equality() {
        let i = Ideal::new(3, vec![p("x"), p("y")]).unwrap();
        let j = Ideal::new(3, vec![p("x+y"), p("y")]).unwrap();
        assert!(ideal_equal(&i, &j).unwrap());
        let k = Ideal::new(3, vec![p("x^2")]).unwrap();
        let l = Ideal::new(3, vec![p("x")]).unwrap();
        assert!(!ideal_equal(&k, &l).unwrap());
    }

    #[test]
    fn grevlex_agrees_on_dimension() {
        let g = vec![p("x*y - z^2"), p("y^3 - x*z")];
        let a = buchberger(&g, TermOrder::Grlex, &GroebnerBudget::default()).unwrap();
        let b = buchberger(&g, TermOrder::Grevlex, &GroebnerBudget::default()).unwrap();
        assert_eq!(a.dimension(), b.dimension());
    }

    #[test]
    fn hitting_set() {
        assert_eq!(min_hitting_set(&[0b011, 0b110], 3), 1);
        assert_eq!(min_hitting_set(&[0b001, 0b010, 0b100], 3), 3);
    }
}
