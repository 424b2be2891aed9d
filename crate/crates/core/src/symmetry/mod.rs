//! Finite matrix groups acting linearly on polynomial rings.
//!
//! An element `g` acts on polynomials by `f^g(x) = f(g·x)`. With this side
//! convention `act(act(f, g), h) = act(f, g·h)`, so the matrices of the
//! induced action on a polynomial space satisfy `R(g·h) = R(h)·R(g)`.

mod isotypic;
mod json;

pub use isotypic::{
    decompose_representation, form_basis, isotypical_decompose, representation_on_basis, representation_on_forms, Component,
    FormRepresentation, IsotypicalDecomposition,
};
pub use json::GroupJson;

use crate::linalg::QMatrix;
use crate::poly::{Monomial, Poly, PolyError};
use crate::rational::{q, Rational};
use num::{One, Zero};
use std::collections::HashMap;

pub const DEFAULT_ORDER_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetryError {
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("generator {index} is not a square {nvars}x{nvars} matrix")]
    BadShape { index: usize, nvars: usize },
    #[error("group closure exceeded {0} elements")]
    OrderBound(usize),
    #[error("dimension mismatch: group acts on {group} variables, polynomial has {poly}")]
    Dimension { group: usize, poly: usize },
    #[error("class sum has eigenvalues outside the rationals: {0}")]
    RationalSplitFailure(String),
    #[error("decomposition check failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A finite group of invertible rational matrices, closed under products.
/// Element 0 is always the identity.
#[derive(Debug, Clone)]
pub struct GroupAction {
    nvars: usize,
    generators: Vec<QMatrix>,
    elements: Vec<QMatrix>,
    index: HashMap<QMatrix, usize>,
}

impl GroupAction {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[QMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[QMatrix] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> &QMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &QMatrix) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Index of `a·b`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.index[&(&self.elements[a] * &self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.product(a, b) == 0).expect("finite group element has an inverse")
    }

    /// True when every element satisfies `gᵀg = I`.
    pub fn is_orthogonal(&self) -> bool {
        let id = QMatrix::identity(self.nvars);
        self.elements.iter().all(|g| &g.transpose() * g == id)
    }

    /// Conjugacy classes as sorted index lists; the class of the identity
    /// comes first and classes are ordered by their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let inv: Vec<usize> = (0..n).map(|a| self.inverse(a)).collect();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|h| self.product(self.product(h, g), inv[h])).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// The trivial group on `nvars` variables.
    pub fn trivial(nvars: usize) -> Self {
        make_group(&[QMatrix::identity(nvars)]).expect("identity generates a group")
    }

    /// Linear images `(g·x)_i = Σ_j g_ij x_j`.
    fn images(&self, g: &QMatrix) -> Vec<Poly> {
        let n = self.nvars;
        (0..n)
            .map(|i| {
                let mut p = Poly::zero(n);
                for j in 0..n {
                    p.add_term(Monomial::var(n, j), g[(i, j)].clone());
                }
                p
            })
            .collect()
    }
}

/// Closes the generators under multiplication.
pub fn make_group(generators: &[QMatrix]) -> Result<GroupAction, SymmetryError> {
    make_group_bounded(generators, DEFAULT_ORDER_BOUND)
}

pub fn make_group_bounded(generators: &[QMatrix], bound: usize) -> Result<GroupAction, SymmetryError> {
    let nvars = generators.first().map_or(0, QMatrix::nrows);
    for (i, g) in generators.iter().enumerate() {
        if !g.is_square() || g.nrows() != nvars {
            return Err(SymmetryError::BadShape { index: i, nvars });
        }
        if g.determinant().is_zero() {
            return Err(SymmetryError::NotInvertible(i));
        }
    }
    let id = QMatrix::identity(nvars);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut frontier = 0;
    while frontier < elements.len() {
        let e = elements[frontier].clone();
        frontier += 1;
        for s in generators {
            let p = &e * s;
            if !index.contains_key(&p) {
                if elements.len() >= bound {
                    return Err(SymmetryError::OrderBound(bound));
                }
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
    }
    Ok(GroupAction { nvars, generators: generators.to_vec(), elements, index })
}

fn check_dims(f: &Poly, group: &GroupAction) -> Result<(), SymmetryError> {
    if f.nvars() != group.nvars {
        return Err(SymmetryError::Dimension { group: group.nvars, poly: f.nvars() });
    }
    Ok(())
}

/// `f^g(x) = f(g·x)`.
pub fn act(f: &Poly, g: &QMatrix, group: &GroupAction) -> Result<Poly, SymmetryError> {
    check_dims(f, group)?;
    if g.nrows() != group.nvars || !g.is_square() {
        return Err(SymmetryError::Dimension { group: group.nvars, poly: g.nrows() });
    }
    Ok(f.substitute(&group.images(g))?)
}

/// The orbit `[f^g for g in G]`, in element order (with repetitions).
pub fn orbit(f: &Poly, group: &GroupAction) -> Result<Vec<Poly>, SymmetryError> {
    group.elements.iter().map(|g| act(f, g, group)).collect()
}

/// Averaging over the group: `(1/|G|) Σ_g f^g`.
pub fn reynolds(f: &Poly, group: &GroupAction) -> Result<Poly, SymmetryError> {
    let mut acc = Poly::zero(f.nvars());
    for p in orbit(f, group)? {
        acc = &acc + &p;
    }
    Ok(acc.scale(&Rational::new(1.into(), (group.order() as i64).into())))
}

pub fn is_invariant(f: &Poly, group: &GroupAction) -> Result<bool, SymmetryError> {
    check_dims(f, group)?;
    for g in &group.generators {
        if &act(f, g, group)? != f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Isotypic type of a semi-invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemiInvariantType {
    Trivial,
    /// One-dimensional non-trivial character with values ±1.
    Sign,
    /// Any other isotypic type, identified by its central character.
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiInvariance {
    pub semi_invariant: bool,
    /// Scalar by which each class sum acts on the orbit span, class by class
    /// in [`GroupAction::conjugacy_classes`] order.
    pub central_character: Option<Vec<Rational>>,
    /// `χ(g)` per group element, when the orbit span is one-dimensional.
    pub character: Option<Vec<Rational>>,
    pub kind: Option<SemiInvariantType>,
}

/// Basis of the span of `polys` (reduced echelon over their monomials).
pub(crate) fn span_basis(polys: &[Poly]) -> Vec<Poly> {
    let Some(first) = polys.first() else { return vec![] };
    let n = first.nvars();
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<Rational>> = polys.iter().map(|p| monos.iter().map(|m| p.coefficient(m)).collect()).collect();
    let (r, pivots) = QMatrix::from_rows(rows).rref();
    (0..pivots.len())
        .map(|i| {
            let mut p = Poly::zero(n);
            for (j, m) in monos.iter().enumerate() {
                p.add_term(m.clone(), r[(i, j)].clone());
            }
            p
        })
        .collect()
}

/// Scalar `λ` with `a = λ·b`, if any (`b` nonzero).
fn scalar_ratio(a: &Poly, b: &Poly) -> Option<Rational> {
    let (m, c) = b.terms().next()?;
    let lambda = a.coefficient(m) / c;
    (a == &b.scale(&lambda)).then_some(lambda)
}

/// Decides whether the G-module spanned by the orbit of `f` is isotypic:
/// every class sum must act on it as a scalar.
pub fn is_semi_invariant(f: &Poly, group: &GroupAction) -> Result<SemiInvariance, SymmetryError> {
    check_dims(f, group)?;
    if f.is_zero() {
        return Ok(SemiInvariance {
            semi_invariant: true,
            central_character: None,
            character: None,
            kind: Some(SemiInvariantType::Trivial),
        });
    }
    let orb = orbit(f, group)?;
    let basis = span_basis(&orb);
    let classes = group.conjugacy_classes();
    let mut central = Vec::with_capacity(classes.len());
    for class in &classes {
        let mut lambda: Option<Rational> = None;
        for w in &basis {
            let mut s = Poly::zero(f.nvars());
            for &g in class {
                s = &s + &act(w, group.element(g), group)?;
            }
            let Some(l) = scalar_ratio(&s, w) else {
                return Ok(SemiInvariance { semi_invariant: false, central_character: None, character: None, kind: None });
            };
            match &lambda {
                Some(prev) if prev != &l => {
                    return Ok(SemiInvariance { semi_invariant: false, central_character: None, character: None, kind: None });
                }
                _ => lambda = Some(l),
            }
        }
        central.push(lambda.unwrap_or_else(Rational::zero));
    }
    let character = if basis.len() == 1 {
        Some(orb.iter().map(|p| scalar_ratio(p, f).expect("one-dimensional orbit span")).collect::<Vec<_>>())
    } else {
        None
    };
    let kind = classify(&central, &classes, basis.len());
    Ok(SemiInvariance { semi_invariant: true, central_character: Some(central), character, kind: Some(kind) })
}

pub(crate) fn classify(central: &[Rational], classes: &[Vec<usize>], dim: usize) -> SemiInvariantType {
    let sizes: Vec<Rational> = classes.iter().map(|c| q(c.len() as i64)).collect();
    let normalized: Vec<Rational> = central.iter().zip(&sizes).map(|(l, s)| l / s).collect();
    if normalized.iter().all(One::is_one) {
        SemiInvariantType::Trivial
    } else if normalized.iter().all(|v| v.is_one() || v == &-Rational::one()) && dim >= 1 && is_linear_type(central, classes) {
        SemiInvariantType::Sign
    } else {
        SemiInvariantType::Other
    }
}

/// A central character with all normalized values ±1 belongs to a
/// one-dimensional representation exactly when `Σ_C |C|·χ(C)^2 = |G|`.
fn is_linear_type(central: &[Rational], classes: &[Vec<usize>]) -> bool {
    let order: usize = classes.iter().map(Vec::len).sum();
    let s = central
        .iter()
        .zip(classes)
        .fold(Rational::zero(), |acc, (l, c)| {
            let chi = l / q(c.len() as i64);
            acc + q(c.len() as i64) * &chi * &chi
        });
    s == q(order as i64)
}

/// Projection onto total weight zero for a diagonal torus acting with the
/// given integer weights: keeps exactly the terms `x^e` with `Σ w_i e_i = 0`.
pub fn torus_reynolds(f: &Poly, weights: &[i64]) -> Result<Poly, SymmetryError> {
    if weights.len() != f.nvars() {
        return Err(SymmetryError::Dimension { group: weights.len(), poly: f.nvars() });
    }
    let mut out = Poly::zero(f.nvars());
    for (m, c) in f.terms() {
        let w: i64 = m.exps().iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum();
        if w == 0 {
            out.add_term(m.clone(), c.clone());
        }
    }
    Ok(if f.laurent() { out.into_laurent() } else { out })
}

/// `reynolds(f)` written as an explicit convex combination of orbit points.
#[derive(Debug, Clone)]
pub struct ConvexCertificate {
    /// One entry per group element, in element order.
    pub weights: Vec<Rational>,
    pub points: Vec<Poly>,
}

impl ConvexCertificate {
    pub fn combination(&self) -> Poly {
        let n = self.points.first().map_or(0, Poly::nvars);
        self.weights.iter().zip(&self.points).fold(Poly::zero(n), |acc, (w, p)| &acc + &p.scale(w))
    }

    /// Merges equal orbit points, summing their weights.
    pub fn merged(&self) -> Vec<(Rational, Poly)> {
        let mut out: Vec<(Rational, Poly)> = Vec::new();
        for (w, p) in self.weights.iter().zip(&self.points) {
            match out.iter_mut().find(|(_, x)| x == p) {
                Some(entry) => entry.0 += w,
                None => out.push((w.clone(), p.clone())),
            }
        }
        out
    }

    pub fn is_valid_for(&self, target: &Poly) -> bool {
        let total = self.weights.iter().fold(Rational::zero(), |a, w| a + w);
        total.is_one() && self.weights.iter().all(|w| w >= &Rational::zero()) && &self.combination() == target
    }
}

pub fn reynolds_convexity_check(f: &Poly, group: &GroupAction) -> Result<ConvexCertificate, SymmetryError> {
    let points = orbit(f, group)?;
    let w = Rational::new(1.into(), (group.order() as i64).into());
    let cert = ConvexCertificate { weights: vec![w; points.len()], points };
    debug_assert!(cert.is_valid_for(&reynolds(f, group)?));
    Ok(cert)
}

/// Hand-picked generator sets used throughout tests and scenarios.
pub mod groups {
    use super::*;

    /// `x ↦ -x` on the line.
    pub fn sign_line() -> GroupAction {
        make_group(&[QMatrix::from_i64(&[&[-1]])]).unwrap()
    }

    /// `x ↦ -x` on `R^n`.
    pub fn antipodal(n: usize) -> GroupAction {
        make_group(&[QMatrix::identity(n).scale(&-Rational::one())]).unwrap()
    }

    /// Negates the last coordinate of `R^n`.
    pub fn reflect_last(n: usize) -> GroupAction {
        let mut m = QMatrix::identity(n);
        m[(n - 1, n - 1)] = -Rational::one();
        make_group(&[m]).unwrap()
    }

    /// `(x, y) ↦ (y, x)`.
    pub fn swap() -> GroupAction {
        make_group(&[QMatrix::from_i64(&[&[0, 1], &[1, 0]])]).unwrap()
    }

    /// Symmetries of the square centred at the origin, order 8.
    pub fn dihedral4() -> GroupAction {
        // rotation (x, y) ↦ (-y, x) and the swap
        make_group(&[QMatrix::from_i64(&[&[0, -1], &[1, 0]]), QMatrix::from_i64(&[&[0, 1], &[1, 0]])]).unwrap()
    }

    /// `(x, y) ↦ (x, -y)`.
    pub fn reflect_y() -> GroupAction {
        reflect_last(2)
    }
}

#[cfg(test)]
mod tests {
    use super::groups::*;
    use super::*;
    use crate::poly::VarNames;
    use crate::rational::qf;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, &VarNames::x(n)).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(sign_line().order(), 2);
        assert_eq!(dihedral4().order(), 8);
        assert_eq!(GroupAction::trivial(3).order(), 1);
        assert!(dihedral4().is_orthogonal());
    }

    #[test]
    fn closure_errors() {
        let singular = QMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(make_group(&[singular]).unwrap_err(), SymmetryError::NotInvertible(0));
        // infinite order element
        let shear = QMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(make_group_bounded(&[shear], 50).unwrap_err(), SymmetryError::OrderBound(50));
    }

    #[test]
    fn actions() {
        let g = sign_line();
        let neg = g.element(1).clone();
        assert_eq!(act(&p("x1", 1), &neg, &g).unwrap(), p("-x1", 1));
        assert_eq!(act(&p("1+x1", 1), &neg, &g).unwrap(), p("1-x1", 1));
        let d4 = dihedral4();
        let rot = QMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert_eq!(act(&p("x1^4", 2), &rot, &d4).unwrap(), p("x2^4", 2));
        assert!(act(&p("x1", 1), &rot, &d4).is_err());
    }

    #[test]
    fn action_side_convention() {
        let d4 = dihedral4();
        let f = p("x1^3 + 2*x1*x2 - x2", 2);
        for a in 0..d4.order() {
            for b in 0..d4.order() {
                let lhs = act(&act(&f, d4.element(a), &d4).unwrap(), d4.element(b), &d4).unwrap();
                let rhs = act(&f, d4.element(d4.product(a, b)), &d4).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn reynolds_examples() {
        assert_eq!(reynolds(&p("1+x1", 1), &sign_line()).unwrap(), p("1", 1));
        assert_eq!(reynolds(&p("x1+x2", 2), &swap()).unwrap(), p("x1+x2", 2));
        assert_eq!(reynolds(&p("x1^4", 2), &dihedral4()).unwrap(), p("1/2*x1^4 + 1/2*x2^4", 2));
    }

    #[test]
    fn invariance() {
        assert!(is_invariant(&p("x1^2*x2^2", 2), &dihedral4()).unwrap());
        assert!(!is_invariant(&p("x1", 1), &sign_line()).unwrap());
        assert!(is_invariant(&p("x1*x2*(x1+x2)", 2), &swap()).unwrap());
    }

    #[test]
    fn semi_invariants() {
        let s = is_semi_invariant(&p("x1-x2", 2), &swap()).unwrap();
        assert!(s.semi_invariant);
        assert_eq!(s.character, Some(vec![q(1), q(-1)]));
        assert_eq!(s.kind, Some(SemiInvariantType::Sign));
        let s = is_semi_invariant(&p("x1+2*x2", 2), &swap()).unwrap();
        assert!(!s.semi_invariant);
        let s = is_semi_invariant(&p("x1^2+x2^2", 2), &dihedral4()).unwrap();
        assert_eq!(s.kind, Some(SemiInvariantType::Trivial));
        // x, y span the 2-dimensional irreducible of D4
        let s = is_semi_invariant(&p("x1", 2), &dihedral4()).unwrap();
        assert!(s.semi_invariant);
        assert_eq!(s.kind, Some(SemiInvariantType::Other));
        assert!(s.character.is_none());
        // x^2 - y^2 and xy are different sign-type characters
        let a = is_semi_invariant(&p("x1^2-x2^2", 2), &dihedral4()).unwrap();
        let b = is_semi_invariant(&p("x1*x2", 2), &dihedral4()).unwrap();
        assert_eq!(a.kind, Some(SemiInvariantType::Sign));
        assert_eq!(b.kind, Some(SemiInvariantType::Sign));
        assert_ne!(a.central_character, b.central_character);
        // their sum mixes two types
        assert!(!is_semi_invariant(&p("x1^2-x2^2+x1*x2", 2), &dihedral4()).unwrap().semi_invariant);
    }

    #[test]
    fn torus_projection() {
        let f = p("(x1 - x1^-1)^2", 1);
        assert_eq!(torus_reynolds(&f, &[1]).unwrap(), p("-2", 1));
        let b2 = p("(x1^2 - x2^2)^2", 2);
        assert_eq!(torus_reynolds(&b2, &[1, -1]).unwrap(), p("-2*x1^2*x2^2", 2));
        assert_eq!(torus_reynolds(&p("7", 3), &[4, -1, 2]).unwrap(), p("7", 3));
        assert!(torus_reynolds(&f, &[1, 1]).is_err());
    }

    #[test]
    fn convexity_certificates() {
        let c = reynolds_convexity_check(&p("1+x1", 1), &sign_line()).unwrap();
        assert_eq!(c.weights, vec![qf(1, 2), qf(1, 2)]);
        assert_eq!(c.combination(), p("1", 1));
        let c = reynolds_convexity_check(&p("x1^2", 1), &sign_line()).unwrap();
        assert_eq!(c.merged(), vec![(q(1), p("x1^2", 1))]);
        let c = reynolds_convexity_check(&p("x1^4", 2), &dihedral4()).unwrap();
        assert_eq!(c.weights.len(), 8);
        assert!(c.weights.iter().all(|w| w == &qf(1, 8)));
        assert!(c.is_valid_for(&p("1/2*x1^4+1/2*x2^4", 2)));
    }

    #[test]
    fn classes_of_d4() {
        let sizes: Vec<usize> = dihedral4().conjugacy_classes().iter().map(Vec::len).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 2, 2, 2]);
        assert_eq!(sizes[0], 1);
    }
}
