//! Invariant generators, the Procesi–Schwarz matrix `M = J·Jᵀ` of their
//! gradients, Binet–Cauchy certificates for its principal minors, and the
//! resulting description of the orbit space.

mod identities;
mod sets;

pub use identities::{example_identity_suite, example_identity_suite_seeded, fr_identity, random_psd_binary_quadratic};
pub use sets::{
    elementary_symmetric_description, rational_grid, reynolds_module, reynolds_module_with_multiplier, Ambient,
    ElementarySymmetric, ModuleFlavor, QuadraticModuleDesc, SemialgDescription,
};

use crate::linalg::QMatrix;
use crate::poly::{Budget, Monomial, Poly, PolyError, SubalgebraRewriter};
use crate::rational::{q, Rational};
use crate::sosgram::SosCertificate;
use crate::symmetry::{is_invariant, reynolds, GroupAction, SymmetryError};
use num::{One, Signed};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OrbitError {
    #[error("group matrices are not orthogonal; conjugate the action to orthogonal form first")]
    NonOrthogonal,
    #[error("entry ({0}, {1}) of M is not invariant")]
    NonInvariantEntry(usize, usize),
    #[error("generator {0} is not invariant")]
    NonInvariantGenerator(usize),
    #[error("M could not be rewritten in the generators")]
    MissingRewrite,
    #[error("combinatorial budget of {0} products exceeded")]
    Budget(usize),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Homogeneous invariants `p_1..p_m` generating the invariant ring.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantGenerators {
    pub gens: Vec<Poly>,
    pub degrees: Vec<u32>,
    pub minimal: bool,
}

impl InvariantGenerators {
    /// Caller-supplied generators; checks invariance only.
    pub fn from_polys(gens: Vec<Poly>, group: &GroupAction) -> Result<Self, OrbitError> {
        for (i, g) in gens.iter().enumerate() {
            if !is_invariant(g, group)? {
                return Err(OrbitError::NonInvariantGenerator(i));
            }
        }
        let degrees = gens.iter().map(|g| g.degree().unwrap_or(0).max(0) as u32).collect();
        Ok(InvariantGenerators { gens, degrees, minimal: false })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.gens.first().map_or(0, Poly::nvars)
    }

    /// `q(p_1, …, p_m)` for a polynomial `q` in the generator variables.
    pub fn compose(&self, q: &Poly) -> Result<Poly, PolyError> {
        q.substitute(&self.gens)
    }

    /// Values `(p_1(x), …, p_m(x))`.
    pub fn image(&self, x: &[Rational]) -> Result<Vec<Rational>, PolyError> {
        self.gens.iter().map(|g| g.eval(x)).collect()
    }

    /// Exact minimality test: no generator is a polynomial in the others.
    pub fn verify_minimality(&self, budget: &Budget) -> Result<bool, PolyError> {
        for i in 0..self.gens.len() {
            let others: Vec<Poly> = self.gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            let rw = SubalgebraRewriter::with_budget(self.nvars(), &others, budget)?;
            match rw.rewrite(&self.gens[i]) {
                Ok(_) => return Ok(false),
                Err(PolyError::NotInSubalgebra) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(true)
    }
}

/// Exponent vectors `e` with `Σ e_i·deg_i = k`.
fn weighted_exponents(degrees: &[u32], k: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, degrees: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let d = degrees[i].max(1);
        for e in 0..=left / d {
            cur[i] = e;
            rec(i + 1, degrees, left - e * d, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, degrees, k, &mut vec![0; degrees.len()], &mut out);
    out
}

/// Whether the form `f` of degree `k` is a linear combination of products
/// of the homogeneous `gens` of total degree `k`.
fn in_graded_span(f: &Poly, gens: &[Poly], degrees: &[u32], k: u32) -> bool {
    let n = f.nvars();
    let products: Vec<Poly> = weighted_exponents(degrees, k)
        .into_iter()
        .map(|e| e.iter().zip(gens).fold(Poly::one(n), |acc, (&ei, g)| &acc * &g.pow(ei)))
        .filter(|p| !p.is_zero())
        .collect();
    if products.is_empty() {
        return f.is_zero();
    }
    let mut monos: Vec<Monomial> = products.iter().chain(std::iter::once(f)).flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let cols: Vec<Vec<Rational>> = products.iter().map(|p| monos.iter().map(|m| p.coefficient(m)).collect()).collect();
    let a = QMatrix::from_columns(&cols, monos.len());
    let b: Vec<Rational> = monos.iter().map(|m| f.coefficient(m)).collect();
    a.solve_particular(&b).is_some()
}

/// Orders candidates of one degree: fewest terms first, then by the
/// descending term list.
fn candidate_order(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.nterms().cmp(&b.nterms()).then_with(|| crate::poly::cmp_polys(b, a))
}

/// Reynolds images of every monomial of degree `≤ |G|` (the Noether bound),
/// reduced greedily by ascending degree to a minimal generating set.
pub fn invariant_generators(group: &GroupAction) -> Result<InvariantGenerators, OrbitError> {
    let n = group.nvars();
    let bound = group.order() as u32;
    let mut gens: Vec<Poly> = Vec::new();
    let mut degrees: Vec<u32> = Vec::new();
    for k in 1..=bound {
        let mut cands: Vec<Poly> = Vec::new();
        for m in Monomial::all_of_degree(n, k) {
            let r = reynolds(&Poly::term(m, q(1)), group)?;
            if r.is_zero() {
                continue;
            }
            let r = r.primitive();
            if !cands.contains(&r) {
                cands.push(r);
            }
        }
        cands.sort_by(candidate_order);
        for c in cands {
            if !in_graded_span(&c, &gens, &degrees, k) {
                gens.push(c);
                degrees.push(k);
            }
        }
    }
    Ok(InvariantGenerators { gens, degrees, minimal: true })
}

/// The Jacobian `J`, `M = J·Jᵀ`, and `M` written in the generator variables.
#[derive(Debug, Clone)]
pub struct PSMatrix {
    pub gens: InvariantGenerators,
    pub j: Vec<Vec<Poly>>,
    pub m: Vec<Vec<Poly>>,
    pub m_in_generators: Option<Vec<Vec<Poly>>>,
}

impl PSMatrix {
    pub fn size(&self) -> usize {
        self.m.len()
    }

    /// `M_in_generators` evaluated at a point of the generator space.
    pub fn eval_w(&self, z: &[Rational]) -> Option<Vec<Vec<Rational>>> {
        let mw = self.m_in_generators.as_ref()?;
        mw.iter().map(|row| row.iter().map(|e| e.eval(z).ok()).collect()).collect()
    }
}

pub fn procesi_schwarz_matrix(gens: &InvariantGenerators, group: &GroupAction) -> Result<PSMatrix, OrbitError> {
    if !group.is_orthogonal() {
        return Err(OrbitError::NonOrthogonal);
    }
    let n = group.nvars();
    let m = gens.len();
    let j: Vec<Vec<Poly>> =
        gens.gens.iter().map(|p| (0..n).map(|k| p.partial_derivative(k)).collect::<Result<Vec<_>, _>>()).collect::<Result<_, _>>()?;
    let mut mm = vec![vec![Poly::zero(n); m]; m];
    for a in 0..m {
        for b in a..m {
            let e = (0..n).fold(Poly::zero(n), |acc, k| &acc + &(&j[a][k] * &j[b][k]));
            if !is_invariant(&e, group)? {
                return Err(OrbitError::NonInvariantEntry(a, b));
            }
            mm[a][b] = e.clone();
            mm[b][a] = e;
        }
    }
    let m_in_generators = rewrite_matrix(&mm, gens);
    Ok(PSMatrix { gens: gens.clone(), j, m: mm, m_in_generators })
}

fn rewrite_matrix(mm: &[Vec<Poly>], gens: &InvariantGenerators) -> Option<Vec<Vec<Poly>>> {
    let m = mm.len();
    if m == 0 {
        return Some(vec![]);
    }
    let rw = SubalgebraRewriter::new(gens.nvars(), &gens.gens).ok()?;
    let mut out = vec![vec![Poly::zero(m); m]; m];
    for a in 0..m {
        for b in a..m {
            let r = rw.rewrite(&mm[a][b]).ok()?;
            out[a][b] = r.clone();
            out[b][a] = r;
        }
    }
    Some(out)
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn poly_det(mat: &[Vec<Poly>], nvars: usize) -> Poly {
    let k = mat.len();
    match k {
        0 => Poly::one(nvars),
        1 => mat[0][0].clone(),
        2 => &(&mat[0][0] * &mat[1][1]) - &(&mat[0][1] * &mat[1][0]),
        _ => {
            let mut acc = Poly::zero(nvars);
            for c in 0..k {
                if mat[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = mat[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, p)| p.clone()).collect()).collect();
                let term = &mat[0][c] * &poly_det(&minor, nvars);
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn submatrix(mat: &[Vec<Poly>], rows: &[usize], cols: &[usize]) -> Vec<Vec<Poly>> {
    rows.iter().map(|&r| cols.iter().map(|&c| mat[r][c].clone()).collect()).collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Nonempty index sets ordered by size, then lexicographically.
pub fn principal_index_sets(m: usize) -> Vec<Vec<usize>> {
    (1..=m).flat_map(|k| subsets_of_size(m, k)).collect()
}

/// Binet–Cauchy: `det M[I,I] = Σ_{|K|=|I|} det(J[I,K])²`. One certificate
/// per principal index set, the empty set included (constant `1`).
pub fn minor_sos_certificates(ps: &PSMatrix) -> BTreeMap<Vec<usize>, SosCertificate> {
    let n = ps.gens.nvars();
    let cols = ps.j.first().map_or(0, Vec::len);
    let mut out = BTreeMap::new();
    let mut sets = vec![vec![]];
    sets.extend(principal_index_sets(ps.size()));
    for idx in sets {
        let target = poly_det(&submatrix(&ps.m, &idx, &idx), n);
        let mut squares = Vec::new();
        if idx.is_empty() {
            squares.push((Rational::one(), Poly::one(n)));
        } else {
            for k in subsets_of_size(cols, idx.len()) {
                let d = poly_det(&submatrix(&ps.j, &idx, &k), n);
                if !d.is_zero() {
                    squares.push((Rational::one(), d));
                }
            }
        }
        let mut cert = SosCertificate { squares, residual: Poly::zero(n), target, gram: None, annotations: None, seed: None };
        cert.residual = &cert.target - &cert.sum();
        out.insert(idx, cert);
    }
    out
}

/// The principal minors of `M_in_generators`, keyed by index set.
pub fn principal_minors_in_generators(ps: &PSMatrix) -> Result<Vec<(Vec<usize>, Poly)>, OrbitError> {
    let mw = ps.m_in_generators.as_ref().ok_or(OrbitError::MissingRewrite)?;
    let m = ps.size();
    Ok(principal_index_sets(m).into_iter().map(|idx| {
        let d = poly_det(&submatrix(mw, &idx, &idx), m);
        (idx, d)
    }).collect())
}

/// `{z : all principal minors of M(z) ≥ 0}`, with positive constants dropped
/// and each minor scaled to its primitive form (duplicates removed).
pub fn orbit_image_description(ps: &PSMatrix) -> Result<SemialgDescription, OrbitError> {
    let mut ineqs: Vec<Poly> = Vec::new();
    for (_, d) in principal_minors_in_generators(ps)? {
        if let Some(c) = d.as_constant() {
            if !c.is_negative() {
                continue;
            }
        }
        let p = d.primitive();
        if !ineqs.contains(&p) {
            ineqs.push(p);
        }
    }
    Ok(SemialgDescription { inequalities: ineqs, ambient: Ambient::W, nvars: ps.size() })
}

/// Checks that the image of each sample point satisfies the description.
pub fn image_samples_satisfy(gens: &InvariantGenerators, desc: &SemialgDescription, points: &[Vec<Rational>]) -> Result<bool, PolyError> {
    for x in points {
        if !desc.contains(&gens.image(x)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluation of a rational matrix of the rewritten `M` — used to test PSD of `M(z)`.
pub fn m_at(ps: &PSMatrix, z: &[Rational]) -> Option<QMatrix> {
    ps.eval_w(z).map(QMatrix::from_rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarNames;
    use crate::rational::qf;
    use crate::symmetry::groups::*;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, &VarNames::x(n)).unwrap()
    }

    fn w(s: &str, m: usize) -> Poly {
        Poly::parse(s, &VarNames::u(m)).unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(invariant_generators(&sign_line()).unwrap().gens, vec![p("x1^2", 1)]);
        assert_eq!(invariant_generators(&reflect_y()).unwrap().gens, vec![p("x1", 2), p("x2^2", 2)]);
        assert_eq!(invariant_generators(&swap()).unwrap().gens, vec![p("x1+x2", 2), p("x1*x2", 2)]);
        let d4 = invariant_generators(&dihedral4()).unwrap();
        assert_eq!(d4.gens, vec![p("x1^2+x2^2", 2), p("x1^2*x2^2", 2)]);
        assert_eq!(d4.degrees, vec![2, 4]);
        assert!(d4.verify_minimality(&Budget::default()).unwrap());
        assert_eq!(invariant_generators(&GroupAction::trivial(2)).unwrap().gens, vec![p("x1", 2), p("x2", 2)]);
    }

    #[test]
    fn non_minimal_sets_are_detected() {
        let g = InvariantGenerators::from_polys(vec![p("x1+x2", 2), p("x1*x2", 2), p("x1^2+x2^2", 2)], &swap()).unwrap();
        assert!(!g.verify_minimality(&Budget::default()).unwrap());
        assert!(InvariantGenerators::from_polys(vec![p("x1", 2)], &swap()).is_err());
    }

    #[test]
    fn ps_matrices() {
        let g = reflect_last(3);
        let ps = procesi_schwarz_matrix(&invariant_generators(&g).unwrap(), &g).unwrap();
        let mw = ps.m_in_generators.clone().unwrap();
        assert_eq!(mw[2][2], w("4*u3", 3));
        assert_eq!(mw[0][0], w("1", 3));
        assert!(mw[0][2].is_zero());
        assert_eq!(orbit_image_description(&ps).unwrap().inequalities, vec![w("u3", 3)]);

        let d4 = dihedral4();
        let ps = procesi_schwarz_matrix(&invariant_generators(&d4).unwrap(), &d4).unwrap();
        let mw = ps.m_in_generators.clone().unwrap();
        assert_eq!(mw, vec![vec![w("4*u1", 2), w("8*u2", 2)], vec![w("8*u2", 2), w("4*u1*u2", 2)]]);
        assert_eq!(poly_det(&mw, 2), w("16*u2*(u1^2-4*u2)", 2));
        let desc = orbit_image_description(&ps).unwrap();
        assert_eq!(desc.inequalities, vec![w("u1", 2), w("u1*u2", 2), w("u1^2*u2-4*u2^2", 2)]);

        let sw = swap();
        let ps = procesi_schwarz_matrix(&invariant_generators(&sw).unwrap(), &sw).unwrap();
        assert_eq!(orbit_image_description(&ps).unwrap().inequalities, vec![w("u1^2-2*u2", 2), w("u1^2-4*u2", 2)]);

        let t = GroupAction::trivial(1);
        let ps = procesi_schwarz_matrix(&invariant_generators(&t).unwrap(), &t).unwrap();
        assert_eq!(ps.m, vec![vec![p("1", 1)]]);
    }

    #[test]
    fn binet_cauchy() {
        let d4 = dihedral4();
        let ps = procesi_schwarz_matrix(&invariant_generators(&d4).unwrap(), &d4).unwrap();
        let certs = minor_sos_certificates(&ps);
        assert_eq!(certs.len(), 4);
        for c in certs.values() {
            assert!(c.verify() && c.residual_zero());
        }
        let full = &certs[&vec![0, 1]];
        assert_eq!(full.squares.len(), 1);
        assert_eq!(&full.squares[0].1 * &full.squares[0].1, p("16*x1^2*x2^2*(x1^2-x2^2)^2", 2));
        assert_eq!(certs[&vec![]].target, p("1", 2));

        let g = reflect_last(3);
        let ps = procesi_schwarz_matrix(&invariant_generators(&g).unwrap(), &g).unwrap();
        let c = &minor_sos_certificates(&ps)[&vec![2]];
        assert_eq!(c.squares, vec![(q(1), p("2*x3", 3))]);
    }

    #[test]
    fn non_orthogonal_rejected() {
        let g = crate::symmetry::make_group(&[QMatrix::from_rows(vec![vec![q(-1), q(0)], vec![q(1), q(1)]])]).unwrap();
        assert_eq!(g.order(), 2);
        let gens = invariant_generators(&g).unwrap();
        assert_eq!(procesi_schwarz_matrix(&gens, &g).unwrap_err(), OrbitError::NonOrthogonal);
    }

    #[test]
    fn image_samples() {
        let d4 = dihedral4();
        let gens = invariant_generators(&d4).unwrap();
        let ps = procesi_schwarz_matrix(&gens, &d4).unwrap();
        let desc = orbit_image_description(&ps).unwrap();
        let pts: Vec<Vec<Rational>> = (-3..=3).flat_map(|a| (-3..=3).map(move |b| vec![qf(a, 2), qf(b, 3)])).collect();
        assert!(image_samples_satisfy(&gens, &desc, &pts).unwrap());
        // u^2 < 4v is outside the image
        assert!(!desc.contains(&[q(1), q(1)]).unwrap());
    }
}
