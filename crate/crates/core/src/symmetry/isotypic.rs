//! The representation of a finite group on a space of forms and its
//! splitting into isotypic components via class sums.

use super::{act, classify, GroupAction, SemiInvariantType, SymmetryError};
use crate::linalg::QMatrix;
use crate::poly::{Monomial, Poly};
use crate::rational::{format_rational, q, Rational};
use num::{Signed, ToPrimitive, Zero};

/// Matrices `R(g)` of the action on a monomial basis. Column `j` of `R(g)`
/// holds the coefficients of `act(b_j, g)`, so `R(g·h) = R(h)·R(g)`.
#[derive(Debug, Clone)]
pub struct FormRepresentation {
    pub degree: u32,
    pub homogeneous: bool,
    pub basis: Vec<Monomial>,
    /// Indexed like `GroupAction::elements`.
    pub matrices: Vec<QMatrix>,
}

impl FormRepresentation {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_poly(&self, coords: &[Rational]) -> Poly {
        let n = self.basis.first().map_or(0, Monomial::nvars);
        let mut p = Poly::zero(n);
        for (m, c) in self.basis.iter().zip(coords) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// Coordinates of `f` in the basis, or `None` if `f` leaves the span.
    pub fn coordinates(&self, f: &Poly) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self.basis.iter().map(|m| f.coefficient(m)).collect();
        (self.to_poly(&coords) == *f).then_some(coords)
    }
}

/// Forms of degree `d` (or all polynomials of degree `≤ d`).
pub fn form_basis(nvars: usize, d: u32, homogeneous: bool) -> Vec<Monomial> {
    if homogeneous {
        Monomial::all_of_degree(nvars, d)
    } else {
        Monomial::all_up_to_degree(nvars, d)
    }
}

pub fn representation_on_forms(group: &GroupAction, d: u32, homogeneous: bool) -> Result<FormRepresentation, SymmetryError> {
    representation_on_basis(group, form_basis(group.nvars(), d, homogeneous), d, homogeneous)
}

/// Representation on an arbitrary monomial basis; fails when the span is
/// not stable under the group.
pub fn representation_on_basis(
    group: &GroupAction,
    basis: Vec<Monomial>,
    degree: u32,
    homogeneous: bool,
) -> Result<FormRepresentation, SymmetryError> {
    let n = group.nvars();
    let dim = basis.len();
    let mut rep = FormRepresentation { degree, homogeneous, basis, matrices: Vec::with_capacity(group.order()) };
    for g in group.elements() {
        let mut r = QMatrix::zeros(dim, dim);
        for j in 0..dim {
            let img = act(&Poly::term(rep.basis[j].clone(), q(1)), g, group)?;
            let coords = rep
                .coordinates(&img)
                .ok_or_else(|| SymmetryError::Verification(format!("basis span is not stable under the group (nvars {n})")))?;
            for (i, c) in coords.into_iter().enumerate() {
                r[(i, j)] = c;
            }
        }
        rep.matrices.push(r);
    }
    Ok(rep)
}

/// One isotypic component (or a finer invariant piece of it).
#[derive(Debug, Clone)]
pub struct Component {
    /// `dim × k` matrix whose columns span the component (reduced echelon).
    pub span: QMatrix,
    /// Scalar by which each class sum acts, in conjugacy-class order.
    pub central_character: Vec<Rational>,
    pub kind: SemiInvariantType,
    /// Dimension of the irreducible constituent.
    pub irrep_dim: usize,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.span.ncols()
    }

    pub fn multiplicity(&self) -> usize {
        self.dim() / self.irrep_dim.max(1)
    }

    pub fn label(&self) -> String {
        let cc: Vec<String> = self.central_character.iter().map(format_rational).collect();
        format!("{:?}[{}]", self.kind, cc.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct IsotypicalDecomposition {
    pub rep: FormRepresentation,
    pub classes: Vec<Vec<usize>>,
    pub components: Vec<Component>,
    /// Change of basis whose columns are the component spans side by side.
    pub change: QMatrix,
    /// `change⁻¹`.
    pub change_inv: QMatrix,
    pub projectors: Vec<QMatrix>,
}

impl IsotypicalDecomposition {
    pub fn degree(&self) -> u32 {
        self.rep.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.rep.basis
    }

    /// Column offsets of each component within `change`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.components.len() + 1);
        let mut acc = 0;
        out.push(0);
        for c in &self.components {
            acc += c.dim();
            out.push(acc);
        }
        out
    }

    /// Basis polynomials of component `i`.
    pub fn component_polys(&self, i: usize) -> Vec<Poly> {
        let s = &self.components[i].span;
        (0..s.ncols()).map(|j| self.rep.to_poly(&s.column(j))).collect()
    }

    /// Index of the component containing the coordinate vector `v`, if it
    /// lies in exactly one.
    pub fn component_of(&self, v: &[Rational]) -> Option<usize> {
        let mut hit = None;
        for (i, p) in self.projectors.iter().enumerate() {
            let w = p.mul_vec(v);
            if w.iter().all(Zero::is_zero) {
                continue;
            }
            if hit.is_some() || w != v {
                return None;
            }
            hit = Some(i);
        }
        hit
    }

    /// Exact check of every structural invariant.
    pub fn verify(&self, group: &GroupAction) -> Result<(), SymmetryError> {
        let dim = self.rep.dim();
        let id = QMatrix::identity(dim);
        let mut sum = QMatrix::zeros(dim, dim);
        for (i, p) in self.projectors.iter().enumerate() {
            if &(p * p) != p {
                return Err(SymmetryError::Verification(format!("projector {i} is not idempotent")));
            }
            for (j, p2) in self.projectors.iter().enumerate() {
                if i != j && !(p * p2).is_zero() {
                    return Err(SymmetryError::Verification(format!("projectors {i} and {j} do not annihilate")));
                }
            }
            sum = &sum + p;
        }
        if sum != id {
            return Err(SymmetryError::Verification("projectors do not sum to the identity".into()));
        }
        let restricted: Vec<Vec<QMatrix>> = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                group
                    .generators()
                    .iter()
                    .map(|g| {
                        let r = &self.rep.matrices[group.index_of(g).expect("generator is an element")];
                        restrict_to(r, &c.span)
                            .ok_or_else(|| SymmetryError::Verification(format!("component {i} is not stable")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        for i in 0..self.components.len() {
            for j in 0..self.components.len() {
                if i != j && hom_dimension(&restricted[i], &restricted[j]) != 0 {
                    return Err(SymmetryError::Verification(format!("nonzero equivariant map between components {j} and {i}")));
                }
            }
        }
        Ok(())
    }
}

/// Matrix of `r` restricted to the invariant column span of `b`:
/// the unique `x` with `r·b = b·x`.
fn restrict_to(r: &QMatrix, b: &QMatrix) -> Option<QMatrix> {
    let rb = r * b;
    let k = b.ncols();
    let mut x = QMatrix::zeros(k, k);
    for j in 0..k {
        let (sol, _) = b.solve_particular(&rb.column(j))?;
        for i in 0..k {
            x[(i, j)] = sol[i].clone();
        }
    }
    Some(x)
}

/// Dimension of `{X : A_i(g)·X = X·A_j(g) for all generators}`.
fn hom_dimension(ai: &[QMatrix], aj: &[QMatrix]) -> usize {
    let (n, m) = (ai[0].nrows(), aj[0].nrows());
    let unknowns = n * m;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (a, b) in ai.iter().zip(aj) {
        for r in 0..n {
            for c in 0..m {
                // (A X)_{rc} - (X B)_{rc}
                let mut row = vec![Rational::zero(); unknowns];
                for k in 0..n {
                    row[k * m + c] += &a[(r, k)];
                }
                for k in 0..m {
                    row[r * m + k] -= &b[(k, c)];
                }
                rows.push(row);
            }
        }
    }
    unknowns - QMatrix::from_rows(rows).rank()
}

/// Integer roots of a monic integer-valued polynomial with `|root| ≤ bound`.
fn integer_roots(coeffs: &[Rational], bound: i64) -> Vec<i64> {
    (-bound..=bound)
        .filter(|&t| {
            let t = q(t);
            coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &t + c).is_zero()
        })
        .collect()
}

pub fn isotypical_decompose(group: &GroupAction, d: u32, homogeneous: bool) -> Result<IsotypicalDecomposition, SymmetryError> {
    decompose_representation(group, representation_on_forms(group, d, homogeneous)?)
}

/// Joint eigenspaces of all class sums. Each class sum acts on an isotypic
/// component by `|C|·χ(C)/χ(1)`, an integer of absolute value `≤ |C|`.
pub fn decompose_representation(group: &GroupAction, rep: FormRepresentation) -> Result<IsotypicalDecomposition, SymmetryError> {
    let dim = rep.dim();
    let classes = group.conjugacy_classes();
    let sums: Vec<QMatrix> = classes
        .iter()
        .map(|c| c.iter().fold(QMatrix::zeros(dim, dim), |acc, &g| &acc + &rep.matrices[g]))
        .collect();
    // (span, eigenvalues so far)
    let mut pieces: Vec<(QMatrix, Vec<Rational>)> = if dim == 0 { vec![] } else { vec![(QMatrix::identity(dim), vec![])] };
    for (k, s) in sums.iter().enumerate() {
        let mut next = Vec::new();
        for (b, eig) in pieces {
            let x = restrict_to(s, &b).ok_or_else(|| SymmetryError::Verification("class sum leaves a subspace".into()))?;
            let roots = integer_roots(&x.char_poly(), classes[k].len() as i64);
            let k_dim = b.ncols();
            let mut covered = 0;
            for lambda in roots {
                let mut shifted = x.clone();
                for i in 0..k_dim {
                    shifted[(i, i)] -= q(lambda);
                }
                let ns = shifted.nullspace();
                if ns.is_empty() {
                    continue;
                }
                covered += ns.len();
                let local = QMatrix::from_columns(&ns, k_dim);
                let mut e = eig.clone();
                e.push(q(lambda));
                next.push((&b * &local, e));
            }
            if covered < k_dim {
                return Err(SymmetryError::RationalSplitFailure(format!(
                    "class {k} sum has characteristic polynomial [{}] with non-integral roots",
                    x.char_poly().iter().map(format_rational).collect::<Vec<_>>().join(", ")
                )));
            }
        }
        pieces = next;
    }
    let sizes: Vec<Rational> = classes.iter().map(|c| q(c.len() as i64)).collect();
    let mut components: Vec<Component> = pieces
        .into_iter()
        .map(|(b, cc)| {
            let kind = classify(&cc, &classes, b.ncols());
            let irrep_dim = irrep_dimension(&cc, &sizes, group.order());
            Component { span: canonical_span(&b), central_character: cc, kind, irrep_dim }
        })
        .collect();
    components.sort_by(|a, b| {
        let ta = a.kind != SemiInvariantType::Trivial;
        let tb = b.kind != SemiInvariantType::Trivial;
        ta.cmp(&tb).then_with(|| b.central_character.cmp(&a.central_character))
    });
    let cols: Vec<Vec<Rational>> = components.iter().flat_map(|c| (0..c.dim()).map(move |j| c.span.column(j))).collect();
    let change = QMatrix::from_columns(&cols, dim);
    let change_inv = change.inverse().ok_or_else(|| SymmetryError::Verification("components do not span".into()))?;
    let mut projectors = Vec::with_capacity(components.len());
    let mut offset = 0;
    for c in &components {
        let mut e = QMatrix::zeros(dim, dim);
        for i in offset..offset + c.dim() {
            e[(i, i)] = q(1);
        }
        offset += c.dim();
        projectors.push(&(&change * &e) * &change_inv);
    }
    let out = IsotypicalDecomposition { rep, classes, components, change, change_inv, projectors };
    out.verify(group)?;
    Ok(out)
}

/// `χ(1)² = |G| / Σ_C ω_C²/|C|` for a real character with central values `ω`.
fn irrep_dimension(cc: &[Rational], sizes: &[Rational], order: usize) -> usize {
    let s = cc.iter().zip(sizes).fold(Rational::zero(), |acc, (w, n)| acc + w * w / n);
    if !s.is_positive() {
        return 1;
    }
    let sq = (q(order as i64) / s).to_f64().unwrap_or(1.0);
    sq.sqrt().round().max(1.0) as usize
}

/// Reduced row echelon basis of the column span, as columns.
fn canonical_span(b: &QMatrix) -> QMatrix {
    let (r, pivots) = b.transpose().rref();
    let rows: Vec<Vec<Rational>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
    QMatrix::from_rows(rows).transpose()
}

#[cfg(test)]
mod tests {
    use super::super::groups::*;
    use super::*;
    use crate::poly::VarNames;

    fn polys(s: &[&str], n: usize) -> Vec<Poly> {
        s.iter().map(|t| Poly::parse(t, &VarNames::x(n)).unwrap()).collect()
    }

    #[test]
    fn representation_examples() {
        let r = representation_on_forms(&sign_line(), 1, true).unwrap();
        assert_eq!(r.matrices, vec![QMatrix::from_i64(&[&[1]]), QMatrix::from_i64(&[&[-1]])]);
        let r = representation_on_forms(&swap(), 1, true).unwrap();
        assert_eq!(r.matrices[1], QMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        let r = representation_on_forms(&swap(), 2, true).unwrap();
        // basis x^2, xy, y^2
        assert_eq!(r.matrices[1], QMatrix::from_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]));
    }

    #[test]
    fn anti_homomorphism() {
        let g = dihedral4();
        let r = representation_on_forms(&g, 3, false).unwrap();
        assert_eq!(r.matrices[0], QMatrix::identity(r.dim()));
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(r.matrices[g.product(a, b)], &r.matrices[b] * &r.matrices[a]);
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let d = isotypical_decompose(&sign_line(), 2, true).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].kind, SemiInvariantType::Trivial);

        let d = isotypical_decompose(&swap(), 1, true).unwrap();
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.component_polys(0), polys(&["x1+x2"], 2));
        assert_eq!(d.component_polys(1), polys(&["x1-x2"], 2));

        let d = isotypical_decompose(&dihedral4(), 2, true).unwrap();
        let mut spans: Vec<Vec<Poly>> = (0..3).map(|i| d.component_polys(i)).collect();
        assert_eq!(spans.remove(0), polys(&["x1^2+x2^2"], 2));
        spans.sort_by(|a, b| crate::poly::cmp_polys(&a[0], &b[0]));
        let mut expected = vec![polys(&["x1^2-x2^2"], 2), polys(&["x1*x2"], 2)];
        expected.sort_by(|a, b| crate::poly::cmp_polys(&a[0], &b[0]));
        assert_eq!(spans, expected);
    }

    #[test]
    fn two_dimensional_irreducible() {
        let g = dihedral4();
        let d = isotypical_decompose(&g, 3, false).unwrap();
        let total: usize = d.components.iter().map(Component::dim).sum();
        assert_eq!(total, 10);
        let linear = d.components.iter().find(|c| c.irrep_dim == 2).unwrap();
        // x, y, and the cubic pairs
        assert_eq!(linear.dim(), 6);
        assert_eq!(linear.multiplicity(), 3);
    }

    #[test]
    fn irrational_characters_are_reported() {
        // rotation by 2π/3 in a rational basis: eigenvalues of the class sum are not integers
        let r3 = QMatrix::from_i64(&[&[0, -1], &[1, -1]]);
        let g = crate::symmetry::make_group(&[r3]).unwrap();
        assert_eq!(g.order(), 3);
        assert!(matches!(isotypical_decompose(&g, 1, true), Err(SymmetryError::RationalSplitFailure(_))));
    }
}
