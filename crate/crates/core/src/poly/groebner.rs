//! Buchberger's algorithm with the product and chain criteria, plus
//! subalgebra membership by elimination.

use super::{Monomial, MonomialOrder, Poly, PolyError};
use crate::rational::Rational;
use num::{One, Zero};
use std::collections::BTreeMap;
use std::time::Instant;

/// Step budget for the Gröbner engine. One step is one reduction step or one
/// processed pair.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_steps: usize,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_steps: 2_000_000, deadline: None }
    }
}

impl Budget {
    pub fn steps(max_steps: usize) -> Self {
        Budget { max_steps, deadline: None }
    }

    fn check(&self, steps: usize) -> Result<(), PolyError> {
        if steps > self.max_steps {
            return Err(PolyError::Budget(steps));
        }
        if steps.is_multiple_of(256) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(PolyError::Budget(steps));
                }
            }
        }
        Ok(())
    }
}

/// Polynomial keyed by order keys, so the leading term is the last entry.
#[derive(Clone)]
struct OPoly {
    terms: BTreeMap<Vec<i64>, (Monomial, Rational)>,
}

fn add_keys(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl OPoly {
    fn from_poly(p: &Poly, order: &MonomialOrder) -> Self {
        let terms = p.terms().map(|(m, c)| (order.key(m), (m.clone(), c.clone()))).collect();
        OPoly { terms }
    }

    fn to_poly(&self, nvars: usize) -> Poly {
        let mut p = Poly::zero(nvars);
        for (m, c) in self.terms.values() {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<(&Vec<i64>, &Monomial, &Rational)> {
        self.terms.iter().next_back().map(|(k, (m, c))| (k, m, c))
    }

    fn make_monic(&mut self) {
        if let Some((_, _, c)) = self.lead() {
            let inv = c.recip();
            for v in self.terms.values_mut() {
                v.1 *= &inv;
            }
        }
    }

    /// `self += coef * shift * tail(other)` where `tail` drops the leading
    /// term of `other`.
    fn add_shifted_tail(&mut self, coef: &Rational, shift: &Monomial, shift_key: &[i64], other: &OPoly) {
        let n = other.terms.len();
        for (k, (m, c)) in other.terms.iter().take(n.saturating_sub(1)) {
            let key = add_keys(k, shift_key);
            let val = coef * c;
            match self.terms.entry(key) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert((m.mul(shift), val));
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    o.get_mut().1 += val;
                    if o.get().1.is_zero() {
                        o.remove();
                    }
                }
            }
        }
    }
}

/// Full reduction of `p` modulo the monic polynomials in `basis`.
fn reduce(mut p: OPoly, basis: &[&OPoly], order: &MonomialOrder, budget: &Budget, steps: &mut usize) -> Result<OPoly, PolyError> {
    let mut rem = OPoly { terms: BTreeMap::new() };
    while let Some((key, (m, c))) = p.terms.pop_last() {
        let divisor = basis.iter().find(|g| g.lead().map(|(_, lm, _)| lm.divides(&m)).unwrap_or(false));
        match divisor {
            Some(g) => {
                *steps += 1;
                budget.check(*steps)?;
                let (_, lm, _) = g.lead().unwrap();
                let shift = lm.quotient_of(&m);
                let shift_key = order.key(&shift);
                p.add_shifted_tail(&-c, &shift, &shift_key, g);
            }
            None => {
                rem.terms.insert(key, (m, c));
            }
        }
    }
    Ok(rem)
}

fn s_polynomial(f: &OPoly, g: &OPoly, order: &MonomialOrder) -> OPoly {
    let (_, mf, _) = f.lead().unwrap();
    let (_, mg, _) = g.lead().unwrap();
    let l = mf.lcm(mg);
    let sf = mf.quotient_of(&l);
    let sg = mg.quotient_of(&l);
    let mut out = OPoly { terms: BTreeMap::new() };
    out.add_shifted_tail(&Rational::one(), &sf, &order.key(&sf), f);
    out.add_shifted_tail(&-Rational::one(), &sg, &order.key(&sg), g);
    out
}

/// Polynomial ideal with an optional cached reduced Gröbner basis.
#[derive(Debug, Clone)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Poly>,
    order: MonomialOrder,
    groebner_basis: Option<Vec<Poly>>,
}

impl Ideal {
    pub fn new(nvars: usize, generators: Vec<Poly>, order: MonomialOrder) -> Result<Self, PolyError> {
        for g in &generators {
            if g.nvars() != nvars {
                return Err(PolyError::VarMismatch(nvars, g.nvars()));
            }
            if g.has_negative_exponents() {
                return Err(PolyError::LaurentRejected);
            }
        }
        Ok(Ideal { nvars, generators, order, groebner_basis: None })
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The cached reduced basis, sorted by descending leading monomial.
    pub fn basis(&self) -> Option<&[Poly]> {
        self.groebner_basis.as_deref()
    }

    /// Normal form with respect to the cached basis.
    ///
    /// Panics if [`buchberger`] has not been run on this ideal.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly, PolyError> {
        let basis = self.groebner_basis.as_ref().expect("normal_form needs a Gröbner basis");
        if f.nvars() != self.nvars {
            return Err(PolyError::VarMismatch(self.nvars, f.nvars()));
        }
        if f.has_negative_exponents() {
            return Err(PolyError::LaurentRejected);
        }
        let ob: Vec<OPoly> = basis.iter().map(|g| OPoly::from_poly(g, &self.order)).collect();
        let refs: Vec<&OPoly> = ob.iter().collect();
        let mut steps = 0;
        let r = reduce(OPoly::from_poly(f, &self.order), &refs, &self.order, &Budget::default(), &mut steps)?;
        Ok(r.to_poly(self.nvars))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

pub fn buchberger(ideal: Ideal) -> Result<Ideal, PolyError> {
    buchberger_with(ideal, &Budget::default())
}

/// Computes the reduced Gröbner basis of `ideal` and caches it.
pub fn buchberger_with(mut ideal: Ideal, budget: &Budget) -> Result<Ideal, PolyError> {
    let order = ideal.order;
    let mut basis: Vec<OPoly> = Vec::new();
    let mut steps = 0usize;
    for g in &ideal.generators {
        let mut o = OPoly::from_poly(g, &order);
        if o.is_zero() {
            continue;
        }
        o.make_monic();
        basis.push(o);
    }
    let mut pending: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.push((i, j));
        }
    }
    let lcm_key = |basis: &[OPoly], i: usize, j: usize| {
        let (_, a, _) = basis[i].lead().unwrap();
        let (_, b, _) = basis[j].lead().unwrap();
        order.key(&a.lcm(b))
    };
    while !pending.is_empty() {
        steps += 1;
        budget.check(steps)?;
        // normal selection strategy: smallest lcm first
        let (idx, _) = pending
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| lcm_key(&basis, a.0, a.1).cmp(&lcm_key(&basis, b.0, b.1)).then(a.cmp(b)))
            .unwrap();
        let (i, j) = pending.swap_remove(idx);
        let li = basis[i].lead().unwrap().1.clone();
        let lj = basis[j].lead().unwrap().1.clone();
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let is_pending = |a: usize, b: usize| pending.contains(&(a.min(b), a.max(b)));
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && basis[k].lead().unwrap().1.divides(&l) && !is_pending(i, k) && !is_pending(j, k)
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], &order);
        let refs: Vec<&OPoly> = basis.iter().collect();
        let mut r = reduce(s, &refs, &order, budget, &mut steps)?;
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        let new = basis.len();
        basis.push(r);
        for k in 0..new {
            pending.push((k, new));
        }
    }

    // minimal basis: drop elements whose leading monomial is a multiple of
    // another one (keep the first of equal leading monomials)
    let mut keep = vec![true; basis.len()];
    for a in 0..basis.len() {
        let la = basis[a].lead().unwrap().1;
        for b in 0..basis.len() {
            if a == b || !keep[b] {
                continue;
            }
            let lb = basis[b].lead().unwrap().1;
            if lb.divides(la) && (lb != la || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    let minimal: Vec<OPoly> = basis.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (a, g) in minimal.iter().enumerate() {
        let others: Vec<&OPoly> = minimal.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, h)| h).collect();
        let mut r = reduce(g.clone(), &others, &order, budget, &mut steps)?;
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| b.lead().unwrap().0.cmp(a.lead().unwrap().0));
    ideal.groebner_basis = Some(reduced.iter().map(|g| g.to_poly(ideal.nvars)).collect());
    Ok(ideal)
}

/// Rewrites polynomials in terms of fixed generators `p_1..p_m`, using the
/// elimination basis of `(u_i - p_i)` with `x1..xn` ≫ `u1..um`.
#[derive(Debug, Clone)]
pub struct SubalgebraRewriter {
    n: usize,
    m: usize,
    ideal: Ideal,
}

impl SubalgebraRewriter {
    pub fn new(nvars: usize, gens: &[Poly]) -> Result<Self, PolyError> {
        Self::with_budget(nvars, gens, &Budget::default())
    }

    pub fn with_budget(nvars: usize, gens: &[Poly], budget: &Budget) -> Result<Self, PolyError> {
        let m = gens.len();
        let total = nvars + m;
        let mut ideal_gens = Vec::with_capacity(m);
        for (i, g) in gens.iter().enumerate() {
            if g.nvars() != nvars {
                return Err(PolyError::VarMismatch(nvars, g.nvars()));
            }
            if g.has_negative_exponents() {
                return Err(PolyError::LaurentRejected);
            }
            ideal_gens.push(&Poly::var(total, nvars + i) - &g.embed(total, 0));
        }
        let ideal = Ideal::new(total, ideal_gens, MonomialOrder::BlockElim { boundary: nvars })?;
        let ideal = buchberger_with(ideal, budget)?;
        Ok(SubalgebraRewriter { n: nvars, m, ideal })
    }

    pub fn ngens(&self) -> usize {
        self.m
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `q` over `u1..um` with `q(p_1..p_m) = f`, or `NotInSubalgebra`.
    pub fn rewrite(&self, f: &Poly) -> Result<Poly, PolyError> {
        if f.nvars() != self.n {
            return Err(PolyError::VarMismatch(self.n, f.nvars()));
        }
        let nf = self.ideal.normal_form(&f.embed(self.n + self.m, 0))?;
        if nf.involves_any(0..self.n) {
            return Err(PolyError::NotInSubalgebra);
        }
        Ok(nf.restrict(self.n..self.n + self.m).expect("checked above"))
    }
}

pub fn rewrite_in_generators(f: &Poly, gens: &[Poly]) -> Result<Poly, PolyError> {
    SubalgebraRewriter::new(f.nvars(), gens)?.rewrite(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarNames;

    fn p(s: &str, names: &VarNames) -> Poly {
        Poly::parse(s, names).unwrap()
    }

    #[test]
    fn already_reduced_basis() {
        // variables ordered (y, x) so lex has y > x
        let v = VarNames::custom(vec!["y".into(), "x".into()]);
        let i = Ideal::new(2, vec![p("y - x^2", &v)], MonomialOrder::Lex).unwrap();
        let i = buchberger(i).unwrap();
        assert_eq!(i.basis().unwrap(), &[p("y - x^2", &v)]);
    }

    #[test]
    fn containment_collapses() {
        let v = VarNames::x(1);
        let i = Ideal::new(1, vec![p("x1", &v), p("x1^2", &v)], MonomialOrder::GrevLex).unwrap();
        let i = buchberger(i).unwrap();
        assert_eq!(i.basis().unwrap(), &[p("x1", &v)]);
    }

    #[test]
    fn elimination_basis_for_symmetric_functions() {
        // x1, x2 are x, y; u1 = x + y, u2 = x y
        let v = VarNames::xu(2, 2);
        let i = Ideal::new(
            4,
            vec![p("u1 - x1 - x2", &v), p("u2 - x1*x2", &v)],
            MonomialOrder::BlockElim { boundary: 2 },
        )
        .unwrap();
        let i = buchberger(i).unwrap();
        let basis = i.basis().unwrap();
        assert_eq!(basis, &[p("x2^2 - u1*x2 + u2", &v), p("x1 + x2 - u1", &v)]);
        for f in ["x1 + x2 - u1", "x1*x2 - u2", "x1^2 - u1*x1 + u2"] {
            assert!(i.contains(&p(f, &v)).unwrap(), "{f}");
        }
        assert!(!i.contains(&p("x1 - u1", &v)).unwrap());
    }

    #[test]
    fn idempotent_on_its_own_output() {
        let v = VarNames::x(3);
        let gens = vec![p("x1^2 + x2*x3 - 1", &v), p("x1*x2 - x3^2", &v), p("x2^3 - x1", &v)];
        let once = buchberger(Ideal::new(3, gens, MonomialOrder::GrevLex).unwrap()).unwrap();
        let again = buchberger(Ideal::new(3, once.basis().unwrap().to_vec(), MonomialOrder::GrevLex).unwrap()).unwrap();
        assert_eq!(once.basis(), again.basis());
    }

    #[test]
    fn budget_is_enforced() {
        let v = VarNames::x(3);
        let gens = vec![p("x1^3 + x2*x3 - 1", &v), p("x1*x2^2 - x3^2", &v), p("x2^3 - x1*x3", &v)];
        let i = Ideal::new(3, gens, MonomialOrder::GrevLex).unwrap();
        assert!(matches!(buchberger_with(i, &Budget::steps(3)), Err(PolyError::Budget(_))));
    }

    #[test]
    fn rewrites() {
        let x = VarNames::x(2);
        let u = VarNames::u(2);
        let q = rewrite_in_generators(&p("x1^2 + x2^2", &x), &[p("x1+x2", &x), p("x1*x2", &x)]).unwrap();
        assert_eq!(q, p("u1^2 - 2*u2", &u));
        let q = rewrite_in_generators(&p("x1^2*x2^2", &x), &[p("x1^2+x2^2", &x), p("x1^2*x2^2", &x)]).unwrap();
        assert_eq!(q, p("u2", &u));
        let one = VarNames::x(1);
        assert_eq!(
            rewrite_in_generators(&p("x1", &one), &[p("x1^2", &one)]),
            Err(PolyError::NotInSubalgebra)
        );
    }

    #[test]
    fn rewrite_with_no_generators() {
        let x = VarNames::x(2);
        let c = rewrite_in_generators(&p("7/2", &x), &[]).unwrap();
        assert_eq!(c.as_constant(), Some(crate::rational::qf(7, 2)));
        assert!(rewrite_in_generators(&p("x1", &x), &[]).is_err());
    }
}
