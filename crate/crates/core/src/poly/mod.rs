//! Exact sparse multivariate (Laurent) polynomials over the rationals.
//!
//! A [`Poly`] owns a fixed number of ambient variables and stores its terms in
//! a map keyed by dense exponent vectors, so equal polynomials always have
//! identical term maps. Negative exponents are only accepted when the
//! polynomial carries the `laurent` flag.

mod groebner;
mod json;
mod order;
mod parse;

pub use groebner::{buchberger, buchberger_with, rewrite_in_generators, Budget, Ideal, SubalgebraRewriter};
pub use json::{PolyJson, TermJson};
pub use order::MonomialOrder;
pub use parse::{ParseError, VarNames};

use crate::rational::{content, format_rational, q, Rational};
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable-count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("negative exponent in a polynomial not flagged as Laurent")]
    UnexpectedLaurent,
    #[error("operation is not defined for Laurent input")]
    LaurentRejected,
    #[error("substitution needs {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("polynomial is not in the subalgebra generated by the given generators")]
    NotInSubalgebra,
    #[error("resource budget exhausted after {0} steps")]
    Budget(usize),
    #[error("cannot evaluate x^{exp} at zero")]
    PoleAtZero { exp: i32 },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Dense exponent vector. Degree is the plain sum of exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exps: Vec<i32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All monomials in `nvars` variables of total degree exactly `d`,
    /// in descending graded-lex order (`x1^d` first).
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(i: usize, nvars: usize, left: u32, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                cur[i] = left as i32;
                out.push(Monomial(cur.clone()));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as i32;
                rec(i + 1, nvars, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(0, nvars, d, &mut vec![0; nvars], &mut out);
        out
    }

    /// All monomials of degree `<= d`, by ascending degree.
    pub fn all_up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Monomial::all_of_degree(nvars, k)).collect()
    }

    pub fn embed(&self, nvars: usize, offset: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[offset..offset + self.0.len()].copy_from_slice(&self.0);
        Monomial(e)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone)]
pub struct Poly {
    nvars: usize,
    laurent: bool,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}
impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, laurent: false, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero(m.nvars());
        p.laurent = m.has_negative();
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs; like terms
    /// are merged.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Rational, Vec<i32>)>,
    {
        let mut p = Poly::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(PolyError::VarMismatch(nvars, e.len()));
            }
            let m = Monomial(e);
            if m.has_negative() {
                p.laurent = true;
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Same terms, flagged as Laurent.
    pub fn into_laurent(mut self) -> Self {
        self.laurent = true;
        self
    }

    pub fn laurent(&self) -> bool {
        self.laurent
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        if m.has_negative() {
            self.laurent = true;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(Monomial::has_negative)
    }

    /// The value when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly { laurent: self.laurent, ..Poly::zero(self.nvars) };
        }
        Poly {
            nvars: self.nvars,
            laurent: self.laurent,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        let terms: BTreeMap<_, _> = self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect();
        Poly { nvars: self.nvars, laurent: self.laurent || m.has_negative(), terms }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        acc.laurent = self.laurent;
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check_same(&self, other: &Poly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            Err(PolyError::VarMismatch(self.nvars, other.nvars))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.laurent |= other.laurent;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.laurent |= other.laurent;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_same(other)?;
        let mut out = Poly::zero(self.nvars);
        out.laurent = self.laurent || other.laurent;
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Formal partial derivative; Laurent input is rejected.
    pub fn partial_derivative(&self, var: usize) -> Result<Poly, PolyError> {
        if self.has_negative_exponents() {
            return Err(PolyError::LaurentRejected);
        }
        if var >= self.nvars {
            return Err(PolyError::VarMismatch(self.nvars, var + 1));
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, c * q(e as i64));
        }
        Ok(out)
    }

    /// Composition `f(images[0], ..., images[n-1])`. All images share one
    /// variable count, which becomes the variable count of the result.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::ImageCount { expected: self.nvars, got: images.len() });
        }
        if self.has_negative_exponents() {
            return Err(PolyError::LaurentRejected);
        }
        let target_nvars = match images.first() {
            Some(p) => p.nvars,
            // no variables: the polynomial is a constant
            None => 0,
        };
        for p in images {
            if p.nvars != target_nvars {
                return Err(PolyError::VarMismatch(target_nvars, p.nvars));
            }
        }
        // power caches per variable, grown lazily
        let mut max_exp = vec![0usize; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                max_exp[i] = max_exp[i].max(e as usize);
            }
        }
        let powers: Vec<Vec<Poly>> = images
            .iter()
            .zip(&max_exp)
            .map(|(img, &k)| {
                let mut v = Vec::with_capacity(k + 1);
                v.push(Poly::one(target_nvars));
                for j in 1..=k {
                    let next = &v[j - 1] * img;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::VarMismatch(self.nvars, point.len()));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e == 0 {
                    continue;
                }
                if e < 0 {
                    if x.is_zero() {
                        return Err(PolyError::PoleAtZero { exp: e });
                    }
                    t *= num::pow(x.recip(), (-e) as usize);
                } else {
                    t *= num::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(point).fold(crate::rational::to_f64(c), |acc, (&e, &x)| acc * x.powi(e))
            })
            .sum()
    }

    /// Re-indexes the polynomial into a larger variable set, placing its
    /// variables starting at `offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Poly {
        assert!(offset + self.nvars <= nvars, "embedding does not fit");
        let terms = self.terms.iter().map(|(m, c)| (m.embed(nvars, offset), c.clone())).collect();
        Poly { nvars, laurent: self.laurent, terms }
    }

    /// Drops variables `range`, assuming they do not occur; `None` otherwise.
    pub fn restrict(&self, keep: std::ops::Range<usize>) -> Option<Poly> {
        let n = keep.len();
        let mut out = Poly::zero(n);
        for (m, c) in &self.terms {
            let outside = m.0.iter().enumerate().any(|(i, &e)| e != 0 && !keep.contains(&i));
            if outside {
                return None;
            }
            out.add_term(Monomial(m.0[keep.clone()].to_vec()), c.clone());
        }
        out.laurent = self.laurent;
        Some(out)
    }

    /// True when some variable in `vars` occurs.
    pub fn involves_any(&self, vars: std::ops::Range<usize>) -> bool {
        self.terms.keys().any(|m| vars.clone().any(|i| m.0[i] != 0))
    }

    /// Divides by the positive rational content so that the coefficients
    /// become coprime integers; the sign is preserved.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let c = content(self.terms.values());
        self.scale(&c.recip())
    }

    /// Leading monomial and coefficient for the given order.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted descending in `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn display<'a>(&'a self, names: &'a VarNames) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    pub fn map_coefficients(&self, f: impl Fn(&Rational) -> Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        out.laurent = self.laurent;
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

/// `poly_arith` in function form, for callers that want the error instead of
/// a panic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly, PolyError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial operands over different variable sets")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a VarNames,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        if p.is_zero() {
            return write!(f, "0");
        }
        let order = MonomialOrder::GrevLex;
        for (k, (m, c)) in p.sorted_terms(&order).into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names.name(i)),
                    _ => factors.push(format!("{}^{}", self.names.name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&a), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = VarNames::x(self.nvars);
        write!(f, "{}", self.display(&names))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

/// Compares polynomials first by degree, then term by term, for stable
/// listings.
pub fn cmp_polys(a: &Poly, b: &Poly) -> Ordering {
    let order = MonomialOrder::GrevLex;
    a.degree().cmp(&b.degree()).then_with(|| {
        let ta = a.sorted_terms(&order);
        let tb = b.sorted_terms(&order);
        for (x, y) in ta.iter().zip(&tb) {
            let c = order.cmp(x.0, y.0).then_with(|| x.1.cmp(y.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        ta.len().cmp(&tb.len())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, &VarNames::x(n)).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("1+x1", 1) * &p("1-x1", 1), p("1-x1^2", 1));
        assert_eq!(&p("x1+x2", 2) * &p("x1+x2", 2), p("x1^2+2*x1*x2+x2^2", 2));
    }

    #[test]
    fn fr_integrand_with_symbolic_parameter() {
        // x1, x2 are x, y; x3 plays the parameter r
        let a = p("(1-x3*x2)^2", 3);
        let got = &a * &p("x1", 3);
        assert_eq!(got, p("x1 - 2*x3*x1*x2 + x3^2*x1*x2^2", 3));
    }

    #[test]
    fn arith_mismatch_is_an_error() {
        let e = poly_arith(&p("x1", 1), &p("x1", 2), ArithOp::Add).unwrap_err();
        assert_eq!(e, PolyError::VarMismatch(1, 2));
    }

    #[test]
    fn degree_of_product() {
        let a = p("x1^2 + x2", 2);
        let b = p("x1*x2^3 - 1", 2);
        assert_eq!((&a * &b).degree(), Some(6));
        assert_eq!(Poly::zero(2).degree(), None);
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x1^2*x2^2", 2).partial_derivative(0).unwrap(), p("2*x1*x2^2", 2));
        assert!(p("5", 2).partial_derivative(0).unwrap().is_zero());
        assert_eq!(p("x1^2+x2^2", 2).partial_derivative(0).unwrap(), p("2*x1", 2));
        let l = p("x1^-1", 1);
        assert_eq!(l.partial_derivative(0), Err(PolyError::LaurentRejected));
    }

    #[test]
    fn substitution() {
        assert_eq!(p("x1^2", 1).substitute(&[p("-x1", 1)]).unwrap(), p("x1^2", 1));
        assert_eq!(p("x1+x2", 2).substitute(&[p("x2", 2), p("x1", 2)]).unwrap(), p("x1+x2", 2));
        // u^2 - 2v at u = x+y, v = xy
        let f = p("x1^2 - 2*x2", 2);
        assert_eq!(f.substitute(&[p("x1+x2", 2), p("x1*x2", 2)]).unwrap(), p("x1^2+x2^2", 2));
        assert_eq!(
            f.substitute(&[p("x1", 2)]).unwrap_err(),
            PolyError::ImageCount { expected: 2, got: 1 }
        );
    }

    #[test]
    fn evaluation() {
        let f = p("x1^2*x2 - 1/2", 2);
        assert_eq!(f.eval(&[q(2), qf(1, 4)]).unwrap(), qf(1, 2));
        let l = p("x1 - x1^-1", 1);
        assert_eq!(l.eval(&[q(2)]).unwrap(), qf(3, 2));
        assert!(l.eval(&[q(0)]).is_err());
    }

    #[test]
    fn primitive_part_keeps_sign() {
        assert_eq!(p("4*x2 - 8/3", 2).primitive(), p("3*x2 - 2", 2));
        assert_eq!(p("-2*x1", 1).primitive(), p("-x1", 1));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(Monomial::all_of_degree(2, 2).len(), 3);
        assert_eq!(Monomial::all_up_to_degree(2, 3).len(), 10);
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(2, 2)[0].exps(), &[2, 0]);
    }

    #[test]
    fn display_round_trips_through_parser() {
        let f = p("-3/2*x1^2*x2 + x2 - 7", 2);
        let s = f.to_string();
        assert_eq!(p(&s, 2), f);
    }
}
