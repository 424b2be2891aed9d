//! Semialgebraic descriptions, elementary-symmetric invariant descriptions
//! of invariant sets, and Reynolds images of quadratic modules.

use super::OrbitError;
use crate::poly::{Monomial, Poly, PolyError};
use crate::rational::{q, Rational};
use crate::symmetry::{is_invariant, orbit, reynolds, GroupAction};
use num::Signed;
use serde::{Deserialize, Serialize};

/// Which coordinate ring a description lives in: the original variables
/// `x` or the generator variables `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ambient {
    #[serde(rename = "V-ring")]
    V,
    #[serde(rename = "W-ring")]
    W,
}

/// `{z : g(z) ≥ 0 for every listed g}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SemialgDescription {
    pub inequalities: Vec<Poly>,
    pub ambient: Ambient,
    pub nvars: usize,
}

impl SemialgDescription {
    pub fn contains(&self, z: &[Rational]) -> Result<bool, PolyError> {
        for g in &self.inequalities {
            if g.eval(z)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleFlavor {
    /// `Σ σ_0 + Σ σ_i·f_i`.
    QuadraticModule,
    /// `Σ σ_e·f^e` over all products of distinct generators.
    Preordering,
    /// Generated over the invariant sums of squares by the listed elements.
    S0Module,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticModuleDesc {
    pub generators: Vec<Poly>,
    pub flavor: ModuleFlavor,
    pub ambient: Ambient,
}

impl QuadraticModuleDesc {
    pub fn new(generators: Vec<Poly>, flavor: ModuleFlavor, ambient: Ambient) -> Self {
        QuadraticModuleDesc { generators, flavor, ambient }
    }

    /// Exponent patterns `e ∈ {0,1}^r` of the products `∏ f_i^{e_i}` that
    /// multiply squares: all subsets for a preordering, the empty set and
    /// singletons otherwise.
    pub fn patterns(&self) -> Vec<Vec<bool>> {
        let r = self.generators.len();
        match self.flavor {
            ModuleFlavor::Preordering => (0..1u64 << r).map(|b| (0..r).map(|i| b >> i & 1 == 1).collect()).collect(),
            ModuleFlavor::QuadraticModule | ModuleFlavor::S0Module => {
                let mut out = vec![vec![false; r]];
                out.extend((0..r).map(|i| (0..r).map(|j| j == i).collect()));
                out
            }
        }
    }

    /// The products `∏ f_i^{e_i}`, one per pattern.
    pub fn products(&self, nvars: usize) -> Vec<Poly> {
        self.patterns()
            .iter()
            .map(|e| self.generators.iter().zip(e).filter(|(_, &b)| b).fold(Poly::one(nvars), |acc, (g, _)| &acc * g))
            .collect()
    }
}

pub const MODULE_PRODUCT_BUDGET: usize = 200_000;

/// Generators `ρ(a²·∏ f_i^{e_i})` of the S₀-module `ρ(M)`, over monomials
/// `a` of degree `≤ d`; zero and repeated elements are dropped.
pub fn reynolds_module(module: &QuadraticModuleDesc, group: &GroupAction, d: u32) -> Result<Vec<Poly>, OrbitError> {
    let n = group.nvars();
    let products = module.products(n);
    let monos = Monomial::all_up_to_degree(n, d);
    if products.len().saturating_mul(monos.len()) > MODULE_PRODUCT_BUDGET {
        return Err(OrbitError::Budget(MODULE_PRODUCT_BUDGET));
    }
    let mut out: Vec<Poly> = Vec::new();
    for prod in &products {
        for a in &monos {
            let r = reynolds(&prod.mul_monomial(&a.mul(a)), group)?;
            debug_assert!(is_invariant(&r, group)?);
            if !r.is_zero() && !out.contains(&r) {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// `ρ(a²·f)` for an arbitrary multiplier `a`.
pub fn reynolds_module_with_multiplier(f: &Poly, a: &Poly, group: &GroupAction) -> Result<Poly, OrbitError> {
    Ok(reynolds(&(&(a * a) * f), group)?)
}

/// `s_ij`: the `j`-th elementary symmetric function of the `|G|` orbit
/// elements `f_i^g` (with repetition).
#[derive(Debug, Clone)]
pub struct ElementarySymmetric {
    pub fs: Vec<Poly>,
    pub s: Vec<Vec<Poly>>,
}

impl ElementarySymmetric {
    pub fn description(&self) -> SemialgDescription {
        let nvars = self.fs.first().map_or(0, Poly::nvars);
        SemialgDescription { inequalities: self.s.iter().flatten().cloned().collect(), ambient: Ambient::V, nvars }
    }

    pub fn original(&self) -> SemialgDescription {
        let nvars = self.fs.first().map_or(0, Poly::nvars);
        SemialgDescription { inequalities: self.fs.clone(), ambient: Ambient::V, nvars }
    }

    /// Points where `{f_i ≥ 0}` and `{s_ij ≥ 0}` disagree.
    pub fn disagreements(&self, points: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, PolyError> {
        let (a, b) = (self.original(), self.description());
        let mut out = Vec::new();
        for x in points {
            if a.contains(x)? != b.contains(x)? {
                out.push(x.clone());
            }
        }
        Ok(out)
    }

    /// Sampled check that the set `{f_i ≥ 0}` is mapped to itself.
    pub fn set_invariant_on(&self, group: &GroupAction, points: &[Vec<Rational>]) -> Result<bool, PolyError> {
        let a = self.original();
        for x in points {
            let inside = a.contains(x)?;
            for g in group.elements() {
                let gx = g.mul_vec(x);
                if a.contains(&gx)? != inside {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn elementary_symmetric_description(fs: &[Poly], group: &GroupAction) -> Result<ElementarySymmetric, OrbitError> {
    let n = group.nvars();
    let mut s = Vec::with_capacity(fs.len());
    for (i, f) in fs.iter().enumerate() {
        // coefficients of ∏_g (1 + t·f^g)
        let mut e = vec![Poly::one(n)];
        for fg in orbit(f, group)? {
            let mut next = e.clone();
            next.push(Poly::zero(n));
            for j in 1..next.len() {
                next[j] = &next[j] + &(&e[j - 1] * &fg);
            }
            e = next;
        }
        let row: Vec<Poly> = e.into_iter().skip(1).collect();
        for p in &row {
            if !is_invariant(p, group)? {
                return Err(OrbitError::NonInvariantGenerator(i));
            }
        }
        s.push(row);
    }
    Ok(ElementarySymmetric { fs: fs.to_vec(), s })
}

/// Rational grid `lo, lo + step, …, hi` in one variable.
pub fn rational_grid(lo: Rational, hi: Rational, points: usize) -> Vec<Rational> {
    if points < 2 {
        return vec![lo];
    }
    let step = (&hi - &lo) / q(points as i64 - 1);
    (0..points).map(|i| &lo + &step * q(i as i64)).collect()
}
