//! Hankel and localizing matrices and the fixed-degree PSD conditions of
//! the invariant and averaged moment problems.

use super::{apply, is_invariant_functional, pushforward_moments, MomentError, MomentVector};
use crate::linalg::{ldl_psd, min_eigenvalue, LdlFailure, QMatrix};
use crate::orbitspace::{reynolds_module, InvariantGenerators, QuadraticModuleDesc};
use crate::poly::{Monomial, Poly, VarNames};
use crate::rational::{format_rational, Rational};
use crate::symmetry::GroupAction;
use serde::Serialize;

/// `L(g·m_i·m_j)` over the monomials `m_i` of degree `≤ d − ⌈deg g / 2⌉`.
#[derive(Debug, Clone)]
pub struct LocalizingMatrix {
    pub generator: Poly,
    pub basis: Vec<Monomial>,
    pub matrix: QMatrix,
}

pub fn hankel_matrix(l: &MomentVector, d: u32) -> Result<LocalizingMatrix, MomentError> {
    localizing_matrix(l, &Poly::one(l.nvars), d)
}

pub fn localizing_matrix(l: &MomentVector, g: &Poly, d: u32) -> Result<LocalizingMatrix, MomentError> {
    let dg = g.degree().unwrap_or(0).max(0) as u32;
    let half = dg.div_ceil(2);
    let basis = if d >= half { Monomial::all_up_to_degree(l.nvars, d - half) } else { vec![] };
    let n = basis.len();
    let mut matrix = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = apply(l, &g.mul_monomial(&basis[i].mul(&basis[j])))?;
            matrix[(i, j)] = v.clone();
            matrix[(j, i)] = v;
        }
    }
    Ok(LocalizingMatrix { generator: g.clone(), basis, matrix })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PsdMode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixCheck {
    pub label: String,
    pub generator: String,
    pub size: usize,
    pub mode: PsdMode,
    /// Smallest LDLᵀ pivot (or the first negative one) in exact mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_pivot: Option<String>,
    pub min_eigenvalue: f64,
    pub pass: bool,
}

/// Exact LDLᵀ decides; the float eigenvalue is reported alongside.
pub fn check_psd(label: impl Into<String>, lm: &LocalizingMatrix, names: &VarNames) -> MatrixCheck {
    let n = lm.matrix.nrows();
    let ev = min_eigenvalue(&lm.matrix.to_f64());
    let (pass, min_pivot) = match ldl_psd(&lm.matrix) {
        Ok(ldl) => (true, ldl.d.iter().min().cloned()),
        Err(LdlFailure::NegativePivot { value, .. }) => (false, Some(value)),
        Err(LdlFailure::ZeroPivotWithCoupling { .. }) => (false, Some(Rational::from_integer(0.into()))),
    };
    MatrixCheck {
        label: label.into(),
        generator: lm.generator.display(names).to_string(),
        size: n,
        mode: PsdMode::Exact,
        min_pivot: min_pivot.as_ref().map(format_rational),
        min_eigenvalue: if ev.is_finite() { ev } else { 0.0 },
        pass,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentReport {
    pub checks: Vec<MatrixCheck>,
    pub pass: bool,
    /// Generators of the module not visible at the requested degree.
    pub skipped: Vec<String>,
}

impl MomentReport {
    fn from_checks(checks: Vec<MatrixCheck>, skipped: Vec<String>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        MomentReport { checks, pass, skipped }
    }
}

fn degree(g: &Poly) -> u32 {
    g.degree().unwrap_or(0).max(0) as u32
}

/// Pushes `L` to the generator space and checks the Hankel matrix and one
/// localizing matrix per generator of `module_n`, all at degree `d`.
pub fn invariant_moment_check(
    l: &MomentVector,
    group: &GroupAction,
    gens: &InvariantGenerators,
    module_n: &QuadraticModuleDesc,
    d: u32,
) -> Result<MomentReport, MomentError> {
    if !is_invariant_functional(l, group)? {
        return Err(MomentError::NotInvariant);
    }
    let cap_w = module_n.generators.iter().map(|g| 2 * (d.saturating_sub(degree(g).div_ceil(2))) + degree(g)).fold(2 * d, u32::max);
    let lw = pushforward_moments(l, gens, cap_w)?;
    let names = VarNames::u(gens.len());
    let mut checks = vec![check_psd("hankel", &hankel_matrix(&lw, d)?, &names)];
    let mut skipped = Vec::new();
    for (i, g) in module_n.generators.iter().enumerate() {
        if degree(g).div_ceil(2) > d {
            skipped.push(g.display(&names).to_string());
            continue;
        }
        checks.push(check_psd(format!("localizing[{i}]"), &localizing_matrix(&lw, g, d)?, &names));
    }
    Ok(MomentReport::from_checks(checks, skipped))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AveragedCaps {
    /// Degree cap for the multipliers `a` in `ρ(a²·∏ f_i^{e_i})`.
    pub module_degree: u32,
    /// Degree of the Hankel and localizing matrices.
    pub localizing_degree: u32,
}

/// Materializes the generators of `ρ(M)` and checks a localizing matrix
/// for each against the invariant functional `L`.
pub fn averaged_module_moment_check(
    l: &MomentVector,
    group: &GroupAction,
    module_m: &QuadraticModuleDesc,
    caps: AveragedCaps,
) -> Result<MomentReport, MomentError> {
    if !is_invariant_functional(l, group)? {
        return Err(MomentError::NotInvariant);
    }
    let names = VarNames::x(l.nvars);
    let d = caps.localizing_degree;
    let gens = reynolds_module(module_m, group, caps.module_degree)?;
    let mut checks = vec![check_psd("hankel", &hankel_matrix(l, d)?, &names)];
    let mut skipped = Vec::new();
    for (i, h) in gens.iter().enumerate() {
        let k = degree(h).div_ceil(2);
        if k > d || 2 * (d - k) + degree(h) > l.degree_cap {
            skipped.push(h.display(&names).to_string());
            continue;
        }
        checks.push(check_psd(format!("rho-generator[{i}]"), &localizing_matrix(l, h, d)?, &names));
    }
    Ok(MomentReport::from_checks(checks, skipped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{moments_of, AtomicMeasure};
    use crate::orbitspace::{invariant_generators, Ambient, ModuleFlavor};
    use crate::rational::{q, qf};
    use crate::symmetry::groups::*;

    fn w(s: &str) -> Poly {
        Poly::parse(s, &VarNames::u(2)).unwrap()
    }

    fn x(s: &str) -> Poly {
        Poly::parse(s, &VarNames::x(2)).unwrap()
    }

    #[test]
    fn hankel_examples() {
        let l = moments_of(&AtomicMeasure::uniform(vec![vec![q(0)]]), 1, 2).unwrap();
        assert_eq!(hankel_matrix(&l, 1).unwrap().matrix, QMatrix::from_i64(&[&[1, 0], &[0, 0]]));
        let l = moments_of(&AtomicMeasure::uniform(vec![vec![q(-1)], vec![q(1)]]), 1, 2).unwrap();
        assert_eq!(hankel_matrix(&l, 1).unwrap().matrix, QMatrix::identity(2));
        let mut bad = l.clone();
        bad.set(Monomial::new(vec![2]), q(-1));
        assert!(!check_psd("hankel", &hankel_matrix(&bad, 1).unwrap(), &VarNames::x(1)).pass);
    }

    #[test]
    fn localizing_examples() {
        let nu = moments_of(&AtomicMeasure::uniform(vec![vec![qf(3, 2), qf(1, 4)]]), 2, 2).unwrap();
        let v = |g: &str| localizing_matrix(&nu, &w(g), 1).unwrap().matrix[(0, 0)].clone();
        assert_eq!(v("u2"), qf(1, 4));
        assert_eq!(v("u1-u2-1"), qf(1, 4));
        assert_eq!(v("2-u1+u2"), qf(3, 4));
    }

    fn strip() -> QuadraticModuleDesc {
        QuadraticModuleDesc::new(vec![w("u2"), w("u1-u2-1"), w("2-u1+u2")], ModuleFlavor::QuadraticModule, Ambient::W)
    }

    #[test]
    fn d4_strip() {
        let d4 = dihedral4();
        let gens = invariant_generators(&d4).unwrap();
        let inside = AtomicMeasure::uniform(vec![vec![q(1), qf(1, 2)]]).symmetrize(&d4);
        assert_eq!(inside.atoms.len(), 8);
        let l = moments_of(&inside, 2, 12).unwrap();
        let r = invariant_moment_check(&l, &d4, &gens, &strip(), 1).unwrap();
        assert!(r.pass, "{r:?}");

        let outside = AtomicMeasure::uniform(vec![vec![q(2), q(2)]]).symmetrize(&d4);
        let l = moments_of(&outside, 2, 12).unwrap();
        let r = invariant_moment_check(&l, &d4, &gens, &strip(), 1).unwrap();
        assert!(!r.pass);
        assert!(!r.checks[2].pass);

        let zero = moments_of(&AtomicMeasure::default(), 2, 12).unwrap();
        assert!(invariant_moment_check(&zero, &d4, &gens, &strip(), 1).unwrap().pass);

        let asym = moments_of(&AtomicMeasure::uniform(vec![vec![q(1), q(2)]]), 2, 12).unwrap();
        assert_eq!(invariant_moment_check(&asym, &d4, &gens, &strip(), 1).unwrap_err(), MomentError::NotInvariant);
    }

    #[test]
    fn swap_quadrant_averaged() {
        let sw = swap();
        let po = QuadraticModuleDesc::new(vec![x("x1"), x("x2")], ModuleFlavor::Preordering, Ambient::V);
        let caps = AveragedCaps { module_degree: 2, localizing_degree: 2 };
        let quad = AtomicMeasure::new(vec![(vec![q(1), q(2)], q(1)), (vec![qf(1, 3), q(0)], qf(1, 2))]).unwrap().symmetrize(&sw);
        let l = moments_of(&quad, 2, 12).unwrap();
        assert!(averaged_module_moment_check(&l, &sw, &po, caps).unwrap().pass);

        let neg = AtomicMeasure::uniform(vec![vec![q(-1), q(-1)]]).symmetrize(&sw);
        let l = moments_of(&neg, 2, 12).unwrap();
        assert!(!averaged_module_moment_check(&l, &sw, &po, caps).unwrap().pass);

        let empty = QuadraticModuleDesc::new(vec![], ModuleFlavor::QuadraticModule, Ambient::V);
        assert!(averaged_module_moment_check(&l, &sw, &empty, caps).unwrap().pass);
    }
}
