//! Group-averaged Gram forms and the symmetry-adapted block decomposition.

use super::{
    default_basis, gram_space_on, prune_basis, psd_feasible_point, rationalize_and_certify, squares_from_psd, GramForm,
    GramSpace, PsdOptions, PsdOutcome, SosCertificate, SosError,
};
use crate::linalg::{ldl_psd, QMatrix};
use crate::poly::{Monomial, Poly};
use crate::rational::Rational;
use crate::symmetry::{
    is_invariant, is_semi_invariant, representation_on_basis, FormRepresentation, GroupAction, IsotypicalDecomposition,
    SemiInvariantType,
};
use num::Zero;

#[derive(Debug, Clone, PartialEq)]
pub struct SquareAnnotation {
    /// Index of the component the square lies in.
    pub component: usize,
    pub semi_invariant: bool,
    pub kind: Option<SemiInvariantType>,
    /// `trivial`, `sign` or `component-k`.
    pub type_label: String,
    /// `χ(g)` per element when the square spans a one-dimensional module.
    pub character: Option<Vec<Rational>>,
}

/// Reynolds average of a Gram form under the induced action. The Gram
/// form of `f^g` is `R(g)·Q·R(g)ᵀ`, so the average is
/// `(1/|G|)·Σ_g R(g)·Q·R(g)ᵀ`.
pub fn average_gram(space: &GramSpace, gamma: &GramForm, group: &GroupAction) -> Result<GramForm, SosError> {
    if gamma.basis != space.basis() || gamma.target != *space.target() || !space.contains(&gamma.matrix) {
        return Err(SosError::Mismatch);
    }
    if !is_invariant(&gamma.target, group)? {
        return Err(SosError::NotInvariant);
    }
    let rep = representation_on_basis(group, gamma.basis.clone(), 0, false).map_err(|_| SosError::UnstableBasis)?;
    Ok(average_with(&rep, gamma))
}

fn average_with(rep: &FormRepresentation, gamma: &GramForm) -> GramForm {
    let n = gamma.basis.len();
    let mut acc = QMatrix::zeros(n, n);
    for r in &rep.matrices {
        acc = &acc + &(&(r * &gamma.matrix) * &r.transpose());
    }
    let matrix = acc.scale(&Rational::new(1.into(), (rep.matrices.len() as i64).into()));
    GramForm { basis: gamma.basis.clone(), matrix, target: gamma.target.clone() }
}

/// Basis for the equivariant pipeline: the pruned default basis when it is
/// stable under the group, the full default basis otherwise.
fn stable_basis(f: &Poly, d: u32, group: &GroupAction) -> Result<(Vec<Monomial>, FormRepresentation), SosError> {
    let (full, homogeneous) = default_basis(f, d);
    let (kept, _) = prune_basis(f, full.clone());
    if let Ok(rep) = representation_on_basis(group, kept.clone(), d, homogeneous) {
        return Ok((kept, rep));
    }
    let rep = representation_on_basis(group, full.clone(), d, homogeneous).map_err(|_| SosError::UnstableBasis)?;
    Ok((full, rep))
}

/// Gram space, PSD search, rounding, averaging, isotypic change of basis,
/// exact block check and one LDLᵀ per block. Every square lies in a single
/// component and is annotated with its semi-invariance type.
pub fn equivariant_sos_decompose(f: &Poly, group: &GroupAction, d: u32, opts: &PsdOptions) -> Result<SosCertificate, SosError> {
    if !is_invariant(f, group)? {
        return Err(SosError::NotInvariant);
    }
    super::check_degree(f, d)?;
    let (basis, rep) = stable_basis(f, d, group)?;
    let space = gram_space_on(f, basis)?;
    let approx = match psd_feasible_point(&space, opts)? {
        PsdOutcome::Feasible(g) => g,
        PsdOutcome::Infeasible { max_min_eigenvalue, .. } => return Err(SosError::Infeasible(max_min_eigenvalue)),
    };
    let plain = rationalize_and_certify(&space, &approx)?;
    let gram = plain.gram.expect("certificate carries its Gram form");
    let avg = average_with(&rep, &gram);
    debug_assert!(avg.is_valid());
    let dec = crate::symmetry::decompose_representation(group, rep)?;
    let mut cert = blockwise_certificate(&avg, &dec, group)?;
    cert.seed = Some(opts.seed);
    Ok(cert)
}

/// `Q' = P⁻¹·Q·P⁻ᵀ` in the component coordinates; cross blocks must vanish.
pub fn blockwise_certificate(avg: &GramForm, dec: &IsotypicalDecomposition, group: &GroupAction) -> Result<SosCertificate, SosError> {
    let pinv = &dec.change_inv;
    let qp = &(pinv * &avg.matrix) * &pinv.transpose();
    let off = dec.offsets();
    let r = dec.components.len();
    for a in 0..r {
        for b in 0..r {
            if a == b {
                continue;
            }
            for i in off[a]..off[a + 1] {
                for j in off[b]..off[b + 1] {
                    if !qp[(i, j)].is_zero() {
                        return Err(SosError::BlockLeakage(a, b));
                    }
                }
            }
        }
    }
    let mut squares = Vec::new();
    let mut annotations = Vec::new();
    for c in 0..r {
        let idx: Vec<usize> = (off[c]..off[c + 1]).collect();
        let block = qp.select(&idx, &idx);
        if block.is_zero() {
            continue;
        }
        ldl_psd(&block).map_err(|_| SosError::BlockNotPsd(c))?;
        let polys = dec.component_polys(c);
        for (coef, sq) in squares_from_psd(&block, &polys).map_err(|_| SosError::BlockNotPsd(c))? {
            let s = is_semi_invariant(&sq, group)?;
            let type_label = match s.kind {
                Some(SemiInvariantType::Trivial) => "trivial".to_string(),
                Some(SemiInvariantType::Sign) => "sign".to_string(),
                _ => format!("component-{c}"),
            };
            annotations.push(SquareAnnotation {
                component: c,
                semi_invariant: s.semi_invariant,
                kind: s.kind,
                type_label,
                character: s.character,
            });
            squares.push((coef, sq));
        }
    }
    let target = avg.target.clone();
    let cert = SosCertificate {
        squares,
        residual: Poly::zero(target.nvars()),
        target,
        gram: Some(avg.clone()),
        annotations: Some(annotations),
        seed: None,
    };
    if !cert.verify() {
        return Err(SosError::Mismatch);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarNames;
    use crate::rational::{q, qf};
    use crate::sosgram::gram_space;
    use crate::symmetry::groups::*;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, &VarNames::x(n)).unwrap()
    }

    #[test]
    fn averaging_examples() {
        let g = swap();
        let s = gram_space(&p("(x1+x2)^2", 2), 1).unwrap();
        let a = average_gram(&s, &s.particular, &g).unwrap();
        assert_eq!(a.matrix, s.particular.matrix);

        let s = gram_space(&p("x1^2", 2), 1).unwrap();
        assert_eq!(average_gram(&s, &s.particular, &g).unwrap_err(), SosError::NotInvariant);

        // x^4 + y^4 has a one-parameter family; a non-invariant point averages back
        let s = gram_space(&p("x1^4+x2^4", 2), 2).unwrap();
        let gamma = GramForm { basis: s.basis().to_vec(), matrix: s.point(&[qf(1, 3)]), target: s.target().clone() };
        let a = average_gram(&s, &gamma, &g).unwrap();
        assert!(a.is_valid());
        let r = representation_on_basis(&g, s.basis().to_vec(), 2, true).unwrap();
        assert_eq!(&r.matrices[1] * &a.matrix, &a.matrix * &r.matrices[1]);
    }

    #[test]
    fn swap_split() {
        let c = equivariant_sos_decompose(&p("x1^2+x2^2", 2), &swap(), 1, &PsdOptions::default()).unwrap();
        assert!(c.verify());
        assert_eq!(c.squares, vec![(qf(1, 2), p("x1+x2", 2)), (qf(1, 2), p("x1-x2", 2))]);
        let labels: Vec<_> = c.annotations.unwrap().iter().map(|a| a.type_label.clone()).collect();
        assert_eq!(labels, vec!["trivial", "sign"]);
    }

    #[test]
    fn dihedral_quartic() {
        let g = dihedral4();
        let c = equivariant_sos_decompose(&p("x1^4+x2^4", 2), &g, 2, &PsdOptions::default()).unwrap();
        assert!(c.verify() && c.residual_zero());
        for (a, (_, sq)) in c.annotations.as_ref().unwrap().iter().zip(&c.squares) {
            assert!(a.semi_invariant, "{sq}");
        }
        let c = equivariant_sos_decompose(&p("x1^2*x2^2", 2), &g, 2, &PsdOptions::default()).unwrap();
        assert_eq!(c.squares, vec![(q(1), p("x1*x2", 2))]);
    }

    #[test]
    fn rejects_non_invariant() {
        assert_eq!(
            equivariant_sos_decompose(&p("x1^2", 2), &swap(), 1, &PsdOptions::default()).unwrap_err(),
            SosError::NotInvariant
        );
    }
}
