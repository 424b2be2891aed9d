//! Truncated moment functionals of finite atomic measures: invariance,
//! pushforward along the quotient map, and Hankel / localizing PSD checks.

mod checks;

pub use checks::{
    averaged_module_moment_check, check_psd, hankel_matrix, invariant_moment_check, localizing_matrix, AveragedCaps,
    LocalizingMatrix, MatrixCheck, MomentReport, PsdMode,
};

use crate::orbitspace::InvariantGenerators;
use crate::poly::{Monomial, Poly, PolyError};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::symmetry::{act, reynolds, GroupAction, SymmetryError};
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MomentError {
    #[error("degree {needed} exceeds the moment cap {cap}")]
    DegreeOverflow { needed: i32, cap: u32 },
    #[error("atom weights must be positive")]
    NonPositiveWeight,
    #[error("atom has {got} coordinates, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("functional is not invariant")]
    NotInvariant,
    #[error("bad measure file: {0}")]
    Parse(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Orbit(#[from] crate::orbitspace::OrbitError),
}

/// Finitely many weighted points `Σ w_a·δ_{x_a}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AtomicMeasure {
    pub atoms: Vec<(Vec<Rational>, Rational)>,
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<(Vec<Rational>, Rational)>) -> Result<Self, MomentError> {
        if atoms.iter().any(|(_, w)| !w.is_positive()) {
            return Err(MomentError::NonPositiveWeight);
        }
        if let Some((p0, _)) = atoms.first() {
            if let Some((p, _)) = atoms.iter().find(|(p, _)| p.len() != p0.len()) {
                return Err(MomentError::Dimension { expected: p0.len(), got: p.len() });
            }
        }
        Ok(AtomicMeasure { atoms })
    }

    /// Equal weights `1/k` on `k` points.
    pub fn uniform(points: Vec<Vec<Rational>>) -> Self {
        let w = Rational::new(1.into(), (points.len().max(1) as i64).into());
        AtomicMeasure { atoms: points.into_iter().map(|p| (p, w.clone())).collect() }
    }

    pub fn mass(&self) -> Rational {
        self.atoms.iter().fold(Rational::zero(), |a, (_, w)| a + w)
    }

    /// Same-point atoms combined, sorted by point.
    pub fn merged(&self) -> AtomicMeasure {
        let mut map: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
        for (p, w) in &self.atoms {
            *map.entry(p.clone()).or_insert_with(Rational::zero) += w;
        }
        AtomicMeasure { atoms: map.into_iter().collect() }
    }

    /// Each atom replaced by its orbit with weight `w/|G|`.
    pub fn symmetrize(&self, group: &GroupAction) -> AtomicMeasure {
        let k = &Rational::new(1.into(), (group.order() as i64).into());
        let atoms = self
            .atoms
            .iter()
            .flat_map(|(p, w)| group.elements().iter().map(move |g| (g.mul_vec(p), w * k)))
            .collect();
        AtomicMeasure { atoms }.merged()
    }

    /// Image measure under `x ↦ (p_1(x), …, p_m(x))`.
    pub fn image(&self, gens: &InvariantGenerators) -> Result<AtomicMeasure, MomentError> {
        let atoms = self.atoms.iter().map(|(p, w)| Ok((gens.image(p)?, w.clone()))).collect::<Result<Vec<_>, MomentError>>()?;
        Ok(AtomicMeasure { atoms }.merged())
    }

    pub fn to_json(&self) -> MeasureJson {
        MeasureJson {
            atoms: self
                .atoms
                .iter()
                .map(|(p, w)| AtomJson { point: p.iter().map(format_rational).collect(), weight: format_rational(w) })
                .collect(),
        }
    }
}

/// `{"atoms": [{"point": ["p/q", ...], "weight": "p/q"}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureJson {
    pub atoms: Vec<AtomJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomJson {
    pub point: Vec<String>,
    pub weight: String,
}

impl TryFrom<&MeasureJson> for AtomicMeasure {
    type Error = MomentError;

    fn try_from(j: &MeasureJson) -> Result<Self, MomentError> {
        let parse = |s: &String| parse_rational(s).ok_or_else(|| MomentError::Parse(format!("bad rational {s:?}")));
        let atoms = j
            .atoms
            .iter()
            .map(|a| Ok((a.point.iter().map(parse).collect::<Result<Vec<_>, _>>()?, parse(&a.weight)?)))
            .collect::<Result<Vec<_>, MomentError>>()?;
        AtomicMeasure::new(atoms)
    }
}

/// Values `L(m)` for every monomial of degree `≤ degree_cap`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentVector {
    pub nvars: usize,
    pub degree_cap: u32,
    pub values: BTreeMap<Monomial, Rational>,
    pub provenance: Option<AtomicMeasure>,
}

impl MomentVector {
    pub fn zero(nvars: usize, degree_cap: u32) -> Self {
        Self::from_fn(nvars, degree_cap, |_| Rational::zero())
    }

    pub fn from_fn(nvars: usize, degree_cap: u32, f: impl Fn(&Monomial) -> Rational) -> Self {
        let values = Monomial::all_up_to_degree(nvars, degree_cap).into_iter().map(|m| {
            let v = f(&m);
            (m, v)
        }).collect();
        MomentVector { nvars, degree_cap, values, provenance: None }
    }

    pub fn mass(&self) -> Rational {
        self.get(&Monomial::one(self.nvars)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn get(&self, m: &Monomial) -> Option<&Rational> {
        self.values.get(m)
    }

    pub fn set(&mut self, m: Monomial, v: Rational) {
        self.values.insert(m, v);
    }
}

pub fn moments_of(measure: &AtomicMeasure, nvars: usize, degree_cap: u32) -> Result<MomentVector, MomentError> {
    for (p, _) in &measure.atoms {
        if p.len() != nvars {
            return Err(MomentError::Dimension { expected: nvars, got: p.len() });
        }
    }
    let mut mv = MomentVector::zero(nvars, degree_cap);
    for (m, v) in mv.values.iter_mut() {
        for (p, w) in &measure.atoms {
            let mut t = w.clone();
            for (x, &e) in p.iter().zip(m.exps()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            *v += t;
        }
    }
    mv.provenance = Some(measure.clone());
    Ok(mv)
}

/// Linear extension `L(f) = Σ c_m·L(m)`.
pub fn apply(l: &MomentVector, f: &Poly) -> Result<Rational, MomentError> {
    if f.nvars() != l.nvars {
        return Err(MomentError::Dimension { expected: l.nvars, got: f.nvars() });
    }
    let mut acc = Rational::zero();
    for (m, c) in f.terms() {
        let v = l.get(m).ok_or(MomentError::DegreeOverflow { needed: m.degree(), cap: l.degree_cap })?;
        acc += c * v;
    }
    Ok(acc)
}

/// `L(m^g) = L(m)` for every monomial within the cap and every generator `g`.
pub fn is_invariant_functional(l: &MomentVector, group: &GroupAction) -> Result<bool, MomentError> {
    for m in l.values.keys() {
        let f = Poly::term(m.clone(), Rational::from_integer(1.into()));
        for g in group.generators() {
            if apply(l, &act(&f, g, group)?)? != l.values[m] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `L(m) = L(ρ(m))` for every monomial within the cap.
pub fn factors_through_reynolds(l: &MomentVector, group: &GroupAction) -> Result<bool, MomentError> {
    for (m, v) in &l.values {
        let r = reynolds(&Poly::term(m.clone(), Rational::from_integer(1.into())), group)?;
        if &apply(l, &r)? != v {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest V-degree needed to push forward up to W-degree `cap_w`.
pub fn required_v_degree(gens: &InvariantGenerators, cap_w: u32) -> u32 {
    cap_w * gens.degrees.iter().copied().max().unwrap_or(1)
}

/// `L_W(m) = L(m(p_1, …, p_m))` for W-monomials of degree `≤ cap_w`. With
/// atomic provenance the image measure is recorded and cross-checked.
pub fn pushforward_moments(l: &MomentVector, gens: &InvariantGenerators, cap_w: u32) -> Result<MomentVector, MomentError> {
    let m = gens.len();
    let mut out = MomentVector::zero(m, cap_w);
    for (mono, v) in out.values.iter_mut() {
        let w = Poly::term(mono.clone(), Rational::from_integer(1.into()));
        *v = apply(l, &gens.compose(&w)?)?;
    }
    if let Some(mu) = &l.provenance {
        let nu = mu.image(gens)?;
        debug_assert_eq!(moments_of(&nu, m, cap_w)?.values, out.values);
        out.provenance = Some(nu);
    }
    Ok(out)
}
