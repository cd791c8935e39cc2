use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Coeff = BigRational;

/// Exponent vector ordered by graded-lex: total degree first, then the
/// first differing exponent (larger exponent of an earlier variable wins).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn degree_in(&self, grading: &Grading) -> Vec<i64> {
        let mut d = vec![0; grading.dim()];
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                for (k, w) in grading.weight(i).iter().enumerate() {
                    d[k] += w * e as i64;
                }
            }
        }
        d
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree vectors for the variables of a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    weights: Vec<Vec<i64>>,
}

impl Grading {
    pub fn new(weights: Vec<Vec<i64>>) -> Result<Self> {
        let dim = weights.first().map_or(1, Vec::len);
        if weights.iter().any(|w| w.len() != dim) {
            return Err(Error::DimensionMismatch("grading vectors of unequal length".into()));
        }
        Ok(Grading { weights })
    }

    /// Every variable in degree one.
    pub fn standard(nvars: usize) -> Self {
        Grading { weights: vec![vec![1]; nvars] }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn dim(&self) -> usize {
        self.weights.first().map_or(1, Vec::len)
    }

    pub fn weight(&self, i: usize) -> &[i64] {
        &self.weights[i]
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }
}

/// Homogeneity status of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(Vec<i64>),
    Mixed,
}

/// Sparse polynomial with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Coeff::one())
    }

    pub fn constant(nvars: usize, c: Coeff) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Coeff::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, i), Coeff::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.0.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(self.nvars));
        }
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Coeff::zero) += ca * cb;
            }
        }
        Ok(MultiPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Coeff) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Coeff) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Replaces variable `i` by `images[i]`; images may live in another ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::VariableMismatch(self.nvars, images.len()));
        }
        let target = images.first().map_or(0, MultiPoly::nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::VariableMismatch(target, bad.nvars));
        }
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(target), p.clone()]).collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Replaces a single variable, keeping the ring.
    pub fn substitute_var(&self, i: usize, image: &MultiPoly) -> Result<MultiPoly> {
        let images: Vec<MultiPoly> = (0..self.nvars)
            .map(|k| if k == i { image.clone() } else { MultiPoly::var(self.nvars, k) })
            .collect();
        self.substitute(&images)
    }

    pub fn eval(&self, point: &[Coeff]) -> Result<Coeff> {
        if point.len() != self.nvars {
            return Err(Error::VariableMismatch(self.nvars, point.len()));
        }
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn homogeneity(&self, grading: &Grading) -> Homogeneity {
        let mut degs = self.terms.keys().map(|m| m.degree_in(grading));
        let Some(first) = degs.next() else {
            return Homogeneity::Zero;
        };
        if degs.all(|d| d == first) {
            Homogeneity::Homogeneous(first)
        } else {
            Homogeneity::Mixed
        }
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Rescales so the grlex-leading coefficient is one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Image in a ring with `nvars` variables under `x_i ↦ x_{map[i]}`.
    pub fn reembed(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            (Monomial(e), c.clone())
        });
        MultiPoly::from_terms(nvars, terms)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
                .collect();
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }

    /// Parses expressions like `x1^2*x3 - 3/2*x2 + 1` with the given
    /// variable names.
    pub fn parse(input: &str, names: &[&str]) -> Result<MultiPoly> {
        let n = names.len();
        let err = |m: &str| Error::Parse(format!("polynomial `{input}`: {m}"));
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = MultiPoly::zero(n);
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut sign = false;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !current.is_empty() && !current.ends_with('^') {
                chunks.push((sign, std::mem::take(&mut current)));
                sign = ch == '-';
            } else if (ch == '+' || ch == '-') && current.is_empty() {
                if ch == '-' {
                    sign = !sign;
                }
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            if chunks.is_empty() {
                return Err(err("empty expression"));
            }
            return Err(err("dangling sign"));
        }
        chunks.push((sign, current));
        for (neg, chunk) in chunks {
            let mut coeff = Coeff::one();
            let mut expo = vec![0u32; n];
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    let value = match factor.split_once('/') {
                        Some((a, b)) => {
                            let a: BigInt = a.parse().map_err(|_| err(factor))?;
                            let b: BigInt = b.parse().map_err(|_| err(factor))?;
                            if b.is_zero() {
                                return Err(err("division by zero"));
                            }
                            Coeff::new(a, b)
                        }
                        None => Coeff::from_integer(factor.parse().map_err(|_| err(factor))?),
                    };
                    coeff *= value;
                } else {
                    let (name, e) = match factor.split_once('^') {
                        Some((v, e)) => (v, e.parse::<u32>().map_err(|_| err(factor))?),
                        None => (factor, 1),
                    };
                    let i = names.iter().position(|&v| v == name).ok_or_else(|| err(&format!("unknown variable {name}")))?;
                    expo[i] += e;
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(Monomial(expo), coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&MultiPoly::default_names(self.nvars)))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("variable count mismatch")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

pub fn rat(n: i64, d: i64) -> Coeff {
    Coeff::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2-y^2"));
    }

    #[test]
    fn substitution() {
        let f = p("x^2+y");
        assert_eq!(f.substitute_var(0, &MultiPoly::zero(3)).unwrap(), p("y"));
        let g = p("x*y - 2*z^3");
        let images = [p("y+z"), p("x"), p("x-y")];
        let lhs = (&f * &g).substitute(&images).unwrap();
        let rhs = &f.substitute(&images).unwrap() * &g.substitute(&images).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn grlex_order() {
        let f = p("x*z + y^2 + x^3 + 1");
        let lead = f.leading().unwrap().0.clone();
        assert_eq!(lead, Monomial(vec![3, 0, 0]));
        assert!(Monomial(vec![0, 2, 0]) > Monomial(vec![0, 1, 1]));
        assert!(Monomial(vec![1, 0, 1]) > Monomial(vec![0, 2, 0]));
    }

    #[test]
    fn homogeneous_degree_adds() {
        let g = Grading::standard(3);
        let a = p("x^2 + y*z");
        let b = p("x - 3*z");
        assert_eq!((&a * &b).homogeneity(&g), Homogeneity::Homogeneous(vec![3]));
        assert_eq!(p("x + 1").homogeneity(&g), Homogeneity::Mixed);
    }

    #[test]
    fn mismatch_errors() {
        let a = MultiPoly::var(2, 0);
        let b = MultiPoly::var(3, 0);
        assert_eq!(a.try_add(&b), Err(Error::VariableMismatch(2, 3)));
    }

    #[test]
    fn display_round_trip() {
        let f = p("-3/2*x^2*y + z - 7");
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let s = f.fmt_with(&names);
        assert_eq!(MultiPoly::parse(&s, &["x", "y", "z"]).unwrap(), f);
    }
}
