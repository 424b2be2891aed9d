//! Gram-matrix sums of squares: the affine space of Gram forms, a numeric
//! PSD search, rational rounding with exact LDLᵀ certificates, and the
//! symmetry-adapted block decomposition.

mod equivariant;
mod psd;

pub use equivariant::{average_gram, equivariant_sos_decompose, SquareAnnotation};
pub use psd::{psd_feasible_point, FloatGram, PsdOptions, PsdOutcome};

use crate::linalg::{ldl_psd, LdlFailure, QMatrix};
use crate::poly::{Monomial, Poly};
use crate::rational::{format_rational, round_to_denominator, Rational};
use crate::symmetry::SymmetryError;
use num::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SosError {
    #[error("no Gram form exists: monomial {0:?} cannot be produced by the basis")]
    InfeasibleLinear(Vec<i32>),
    #[error("target must be a form of degree {expected}, got degree {got:?}")]
    NotHomogeneous { expected: u32, got: Option<i32> },
    #[error("target degree {got} exceeds 2*{d}")]
    DegreeTooHigh { d: u32, got: i32 },
    #[error("Laurent polynomials have no Gram forms")]
    Laurent,
    #[error("no PSD Gram form found; best minimum eigenvalue {0:.3e}")]
    Infeasible(f64),
    #[error("rounding failed: no rational PSD point up to denominator 2^{max_exp}")]
    RoundingFailed { max_exp: u32 },
    #[error("time budget exhausted after {0} iterations")]
    Budget(usize),
    #[error("target is not invariant under the group")]
    NotInvariant,
    #[error("basis is not stable under the group")]
    UnstableBasis,
    #[error("averaged Gram form couples components {0} and {1}")]
    BlockLeakage(usize, usize),
    #[error("block {0} of the averaged Gram form is not PSD")]
    BlockNotPsd(usize),
    #[error("Gram form does not match the space")]
    Mismatch,
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// `expand(basis, Q) = Σ_ij Q_ij·b_i·b_j`.
pub fn expand(basis: &[Monomial], q: &QMatrix) -> Poly {
    let n = basis.first().map_or(0, Monomial::nvars);
    let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if q[(i, j)].is_zero() {
                continue;
            }
            *acc.entry(basis[i].mul(&basis[j])).or_insert_with(Rational::zero) += &q[(i, j)];
        }
    }
    let mut p = Poly::zero(n);
    for (m, c) in acc {
        p.add_term(m, c);
    }
    p
}

/// An exact Gram form of `target`.
#[derive(Debug, Clone)]
pub struct GramForm {
    pub basis: Vec<Monomial>,
    pub matrix: QMatrix,
    pub target: Poly,
}

impl GramForm {
    pub fn is_valid(&self) -> bool {
        self.matrix.is_symmetric() && expand(&self.basis, &self.matrix) == self.target
    }
}

/// Affine space `particular + span(kernel)` of all Gram forms of `target`.
#[derive(Debug, Clone)]
pub struct GramSpace {
    pub particular: GramForm,
    pub kernel: Vec<QMatrix>,
    /// Positions `(i, j)`, `i ≤ j`, of the free unknowns; `kernel[k]` has a
    /// 1 at `free[k]` and the particular solution has 0 there.
    pub free: Vec<(usize, usize)>,
    /// Monomials dropped because every PSD Gram form vanishes on them.
    pub pruned: Vec<Monomial>,
}

impl GramSpace {
    pub fn basis(&self) -> &[Monomial] {
        &self.particular.basis
    }

    pub fn target(&self) -> &Poly {
        &self.particular.target
    }

    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    /// `particular + Σ_k t_k·kernel_k`.
    pub fn point(&self, t: &[Rational]) -> QMatrix {
        let mut m = self.particular.matrix.clone();
        for (k, c) in self.kernel.iter().zip(t) {
            if !c.is_zero() {
                m = &m + &k.scale(c);
            }
        }
        m
    }

    /// The kernel parameters of a matrix near the space, read off the free positions.
    pub fn free_values_f64(&self, m: &nalgebra::DMatrix<f64>) -> Vec<f64> {
        self.free.iter().map(|&(i, j)| m[(i, j)]).collect()
    }

    /// Whether `m` lies in the space exactly.
    pub fn contains(&self, m: &QMatrix) -> bool {
        m.nrows() == self.basis().len() && m.is_symmetric() && expand(self.basis(), m) == *self.target()
    }
}

/// Upper-triangle unknowns, diagonal first.
fn unknowns(n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// Default basis for `f` at half-degree `d`: forms of degree `d` when `f`
/// is a form of degree `2d`, all monomials of degree `≤ d` otherwise.
pub fn default_basis(f: &Poly, d: u32) -> (Vec<Monomial>, bool) {
    let homogeneous = f.is_zero() || (f.is_homogeneous() && f.degree() == Some(2 * d as i32));
    let basis = if homogeneous { Monomial::all_of_degree(f.nvars(), d) } else { Monomial::all_up_to_degree(f.nvars(), d) };
    (basis, homogeneous)
}

/// Gram space over the default basis (no pruning).
pub fn gram_space(f: &Poly, d: u32) -> Result<GramSpace, SosError> {
    let (basis, _) = default_basis(f, d);
    check_degree(f, d)?;
    gram_space_on(f, basis)
}

/// Gram space over the default basis with zero-forced monomials pruned.
pub fn gram_space_pruned(f: &Poly, d: u32) -> Result<GramSpace, SosError> {
    let (basis, _) = default_basis(f, d);
    check_degree(f, d)?;
    let (kept, pruned) = prune_basis(f, basis);
    let mut space = gram_space_on(f, kept)?;
    space.pruned = pruned;
    Ok(space)
}

/// Homogeneous Gram space over forms of degree `d`; `f` must be a form of degree `2d`.
pub fn gram_space_homogeneous(f: &Poly, d: u32) -> Result<GramSpace, SosError> {
    if !(f.is_zero() || (f.is_homogeneous() && f.degree() == Some(2 * d as i32))) {
        return Err(SosError::NotHomogeneous { expected: 2 * d, got: f.degree() });
    }
    gram_space_on(f, Monomial::all_of_degree(f.nvars(), d))
}

fn check_degree(f: &Poly, d: u32) -> Result<(), SosError> {
    if f.laurent() && f.has_negative_exponents() {
        return Err(SosError::Laurent);
    }
    match f.degree() {
        Some(g) if g > 2 * d as i32 => Err(SosError::DegreeTooHigh { d, got: g }),
        _ => Ok(()),
    }
}

/// Drops `m` when `m²` is absent from `f` and no other pair of basis
/// monomials multiplies to `m²`: the diagonal entry is forced to zero, so a
/// PSD Gram form vanishes on that row. Repeats until stable.
pub fn prune_basis(f: &Poly, mut basis: Vec<Monomial>) -> (Vec<Monomial>, Vec<Monomial>) {
    let mut pruned = Vec::new();
    loop {
        let mut drop = None;
        'outer: for (i, m) in basis.iter().enumerate() {
            let sq = m.mul(m);
            if !f.coefficient(&sq).is_zero() {
                continue;
            }
            for (a, ma) in basis.iter().enumerate() {
                for (b, mb) in basis.iter().enumerate().skip(a + 1) {
                    if (a != i || b != i) && ma.mul(mb) == sq {
                        continue 'outer;
                    }
                }
            }
            drop = Some(i);
            break;
        }
        match drop {
            Some(i) => pruned.push(basis.remove(i)),
            None => return (basis, pruned),
        }
    }
}

/// Solves the linear conditions `expand(basis, Q) = f` exactly.
pub fn gram_space_on(f: &Poly, basis: Vec<Monomial>) -> Result<GramSpace, SosError> {
    let n = basis.len();
    let vars = unknowns(n);
    let mut row_of: BTreeMap<Monomial, usize> = BTreeMap::new();
    for &(i, j) in &vars {
        let m = basis[i].mul(&basis[j]);
        let next = row_of.len();
        row_of.entry(m).or_insert(next);
    }
    for (m, _) in f.terms() {
        if !row_of.contains_key(m) {
            return Err(SosError::InfeasibleLinear(m.exps().to_vec()));
        }
    }
    let mut a = QMatrix::zeros(row_of.len(), vars.len());
    for (c, &(i, j)) in vars.iter().enumerate() {
        let r = row_of[&basis[i].mul(&basis[j])];
        a[(r, c)] = if i == j { Rational::from_integer(1.into()) } else { Rational::from_integer(2.into()) };
    }
    let mut rhs = vec![Rational::zero(); row_of.len()];
    for (m, r) in &row_of {
        rhs[*r] = f.coefficient(m);
    }
    let (x, pivots) = a.solve_particular(&rhs).ok_or_else(|| SosError::InfeasibleLinear(vec![]))?;
    let to_matrix = |v: &[Rational]| {
        let mut m = QMatrix::zeros(n, n);
        for (c, &(i, j)) in vars.iter().enumerate() {
            m[(i, j)] = v[c].clone();
            m[(j, i)] = v[c].clone();
        }
        m
    };
    let kernel: Vec<QMatrix> = a.nullspace().iter().map(|v| to_matrix(v)).collect();
    let free: Vec<(usize, usize)> = (0..vars.len()).filter(|c| !pivots.contains(c)).map(|c| vars[c]).collect();
    let particular = GramForm { matrix: to_matrix(&x), basis, target: f.clone() };
    debug_assert!(particular.is_valid());
    Ok(GramSpace { particular, kernel, free, pruned: vec![] })
}

/// `Σ c_k·q_k² + residual = target`.
#[derive(Debug, Clone)]
pub struct SosCertificate {
    pub squares: Vec<(Rational, Poly)>,
    pub residual: Poly,
    pub target: Poly,
    /// The exact PSD Gram form the squares came from.
    pub gram: Option<GramForm>,
    /// Per-square semi-invariance information (equivariant pipeline only).
    pub annotations: Option<Vec<SquareAnnotation>>,
    /// Seed of the numeric search, when one was run.
    pub seed: Option<u64>,
}

impl SosCertificate {
    pub fn sum(&self) -> Poly {
        let n = self.target.nvars();
        self.squares.iter().fold(Poly::zero(n), |acc, (c, p)| &acc + &(p * p).scale(c))
    }

    /// Exact identity check with nonnegative coefficients.
    pub fn verify(&self) -> bool {
        self.squares.iter().all(|(c, _)| c >= &Rational::zero()) && &self.sum() + &self.residual == self.target
    }

    pub fn residual_zero(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn to_json(&self) -> CertificateJson {
        let squares = self
            .squares
            .iter()
            .enumerate()
            .map(|(k, (c, p))| SquareJson {
                coef: format_rational(c),
                poly: p.clone(),
                semi_invariant_type: self.annotations.as_ref().map(|a| a[k].type_label.clone()),
            })
            .collect();
        CertificateJson { squares, residual_zero: self.residual_zero() && self.verify() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SquareJson {
    pub coef: String,
    pub poly: Poly,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semi_invariant_type: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub squares: Vec<SquareJson>,
    pub residual_zero: bool,
}

/// Squares from an exact PSD matrix over `polys`: with `P A Pᵀ = L D Lᵀ`,
/// `c_k = D_kk` and `q_k = Σ_i L_ik·polys[perm_i]`.
pub fn squares_from_psd(a: &QMatrix, polys: &[Poly]) -> Result<Vec<(Rational, Poly)>, LdlFailure> {
    let ldl = ldl_psd(a)?;
    let n = a.nrows();
    let nv = polys.first().map_or(0, Poly::nvars);
    let mut out = Vec::new();
    for k in 0..n {
        if ldl.d[k].is_zero() {
            continue;
        }
        let mut qk = Poly::zero(nv);
        for i in k..n {
            if !ldl.l[(i, k)].is_zero() {
                qk = &qk + &polys[ldl.perm[i]].scale(&ldl.l[(i, k)]);
            }
        }
        out.push((ldl.d[k].clone(), qk));
    }
    Ok(out)
}

pub fn monomial_polys(basis: &[Monomial]) -> Vec<Poly> {
    basis.iter().map(|m| Poly::term(m.clone(), Rational::from_integer(1.into()))).collect()
}

/// Certificate from an exact PSD Gram form.
pub fn certificate_from_gram(gram: GramForm) -> Result<SosCertificate, LdlFailure> {
    let squares = squares_from_psd(&gram.matrix, &monomial_polys(&gram.basis))?;
    let target = gram.target.clone();
    let cert = SosCertificate { squares, residual: Poly::zero(target.nvars()), target, gram: Some(gram), annotations: None, seed: None };
    debug_assert!(cert.verify());
    Ok(cert)
}

pub const ROUNDING_MIN_EXP: u32 = 6;
pub const ROUNDING_MAX_EXP: u32 = 30;

/// Tries the particular solution first (the simplest exact point), then
/// rounds the free entries of `approx` with denominator caps 2⁶, 2⁷, …, 2³⁰,
/// recomputes the rest exactly from the space, and accepts the first point
/// that passes the exact LDLᵀ test.
pub fn rationalize_and_certify(space: &GramSpace, approx: &FloatGram) -> Result<SosCertificate, SosError> {
    if approx.matrix.nrows() != space.basis().len() {
        return Err(SosError::Mismatch);
    }
    let vals = space.free_values_f64(&approx.matrix);
    let mut last: Option<Vec<Rational>> = None;
    let zero = vec![Rational::zero(); vals.len()];
    let rounded = (ROUNDING_MIN_EXP..=ROUNDING_MAX_EXP).map(|e| vals.iter().map(|&v| round_to_denominator(v, 1u64 << e)).collect());
    for t in std::iter::once(zero).chain(rounded) {
        if last.as_ref() == Some(&t) {
            continue;
        }
        let m = space.point(&t);
        last = Some(t);
        if ldl_psd(&m).is_ok() {
            let gram = GramForm { basis: space.basis().to_vec(), matrix: m, target: space.target().clone() };
            let mut cert = certificate_from_gram(gram).expect("LDL already succeeded");
            cert.seed = approx.seed;
            return Ok(cert);
        }
    }
    Err(SosError::RoundingFailed { max_exp: ROUNDING_MAX_EXP })
}

/// The non-equivariant pipeline: pruned Gram space, PSD search, rounding.
pub fn sos_certificate(f: &Poly, d: u32, opts: &PsdOptions) -> Result<SosCertificate, SosError> {
    let space = gram_space_pruned(f, d)?;
    match psd_feasible_point(&space, opts)? {
        PsdOutcome::Feasible(g) => rationalize_and_certify(&space, &g),
        PsdOutcome::Infeasible { max_min_eigenvalue, .. } => Err(SosError::Infeasible(max_min_eigenvalue)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarNames;
    use crate::rational::q;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, &VarNames::x(n)).unwrap()
    }

    #[test]
    fn gram_space_examples() {
        let s = gram_space(&p("x1^2", 1), 1).unwrap();
        assert_eq!(s.particular.matrix, QMatrix::from_i64(&[&[1]]));
        assert!(s.kernel.is_empty());

        let s = gram_space(&p("x1^2+2*x1*x2+x2^2", 2), 1).unwrap();
        assert_eq!(s.particular.matrix, QMatrix::from_i64(&[&[1, 1], &[1, 1]]));
        assert!(s.kernel.is_empty());

        let s = gram_space(&p("x1^2*x2^2", 2), 2).unwrap();
        assert_eq!(s.basis().len(), 3);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.particular.matrix[(1, 1)], q(1));
        assert!(s.contains(&s.point(&[q(5)])));
    }

    #[test]
    fn infeasible_linear() {
        let basis = vec![Monomial::new(vec![1])];
        assert!(matches!(gram_space_on(&p("x1^3", 1), basis), Err(SosError::InfeasibleLinear(e)) if e == vec![3]));
        assert!(matches!(gram_space(&p("x1^5", 1), 2), Err(SosError::DegreeTooHigh { .. })));
    }

    #[test]
    fn pruning() {
        let (kept, pruned) = prune_basis(&p("x1^2*x2^2", 2), Monomial::all_of_degree(2, 2));
        assert_eq!(kept, vec![Monomial::new(vec![1, 1])]);
        assert_eq!(pruned.len(), 2);
        let (kept, _) = prune_basis(&p("1+x1^4", 1), Monomial::all_up_to_degree(1, 2));
        assert_eq!(kept.len(), 3);
    }

    #[test]
    fn certificates() {
        let opts = PsdOptions::default();
        let c = sos_certificate(&p("x1^2+2*x1*x2+x2^2", 2), 1, &opts).unwrap();
        assert_eq!(c.squares, vec![(q(1), p("x1+x2", 2))]);
        let c = sos_certificate(&p("x1^4+x2^4", 2), 2, &opts).unwrap();
        assert!(c.verify() && c.residual_zero());
        let mut sq: Vec<_> = c.squares.iter().map(|(c, p)| (c.clone(), p.clone())).collect();
        sq.sort_by(|a, b| crate::poly::cmp_polys(&a.1, &b.1));
        let mut expected = vec![(q(1), p("x1^2", 2)), (q(1), p("x2^2", 2))];
        expected.sort_by(|a, b| crate::poly::cmp_polys(&a.1, &b.1));
        assert_eq!(sq, expected);
        let c = sos_certificate(&p("x1^2*x2^2", 2), 2, &opts).unwrap();
        assert_eq!(c.squares, vec![(q(1), p("x1*x2", 2))]);
    }

    #[test]
    fn reynolds_square_is_certified() {
        let g = crate::symmetry::groups::sign_line();
        let f = crate::symmetry::reynolds(&p("(1+x1+x1^2)^2", 1), &g).unwrap();
        assert_eq!(f, p("1+3*x1^2+x1^4", 1));
        let c = sos_certificate(&f, 2, &PsdOptions::default()).unwrap();
        assert!(c.verify() && c.residual_zero());
    }

    #[test]
    fn non_sos_is_infeasible() {
        assert!(matches!(sos_certificate(&p("x1^2-x2^2", 2), 1, &PsdOptions::default()), Err(SosError::Infeasible(v)) if (v + 1.0).abs() < 1e-6));
    }
}
