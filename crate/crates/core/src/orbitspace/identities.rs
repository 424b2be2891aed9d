//! Exact forward computations for the worked examples: invariant PSD
//! quadratic forms under the antipodal map, the `(1 − r·y)²·x` averaging
//! identity, and the two-generator preordering under the swap.

use super::sets::reynolds_module_with_multiplier;
use crate::poly::{Poly, VarNames};
use crate::rational::{format_rational, q, qf, Rational};
use crate::report::{Check, CheckList};
use crate::sosgram::{sos_certificate, PsdOptions};
use crate::symmetry::{groups, is_invariant, reynolds};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> Poly {
    Poly::parse(s, &VarNames::x(2)).expect("fixed polynomial text")
}

/// Random PSD binary quadratic form `Σ_i (a_i·x + b_i·y)²` with small rational coefficients.
pub fn random_psd_binary_quadratic(rng: &mut impl Rng) -> Poly {
    let terms = rng.gen_range(1..=3);
    let mut f = Poly::zero(2);
    for _ in 0..terms {
        let a = qf(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let b = qf(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let l = &p("x1").scale(&a) + &p("x2").scale(&b);
        f = &f + &(&l * &l);
    }
    f
}

/// `2·ρ((1 − r·y)²·x)` under the swap and its closed form.
pub fn fr_identity(r: &Rational) -> (Poly, Poly) {
    let sw = groups::swap();
    let a = &Poly::one(2) - &p("x2").scale(r);
    let lhs = reynolds_module_with_multiplier(&p("x1"), &a, &sw).expect("swap acts on two variables").scale(&q(2));
    let rhs = &(&p("x1+x2") - &p("4*x1*x2").scale(r)) + &p("x1*x2*(x1+x2)").scale(&(r * r));
    (lhs, rhs)
}

pub fn example_identity_suite() -> CheckList {
    example_identity_suite_seeded(0, 10)
}

pub fn example_identity_suite_seeded(seed: u64, forms: usize) -> CheckList {
    let mut out = CheckList::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // invariant PSD quadratic forms are invariant sums of squares
    let anti = groups::antipodal(2);
    let mut certified = 0;
    for _ in 0..forms {
        let f = random_psd_binary_quadratic(&mut rng);
        let inv = is_invariant(&f, &anti).unwrap_or(false);
        let ok = inv && sos_certificate(&f, 1, &PsdOptions::with_seed(seed)).map(|c| c.verify() && c.residual_zero()).unwrap_or(false);
        certified += ok as usize;
    }
    out.push(Check::new("antipodal-psd-forms-certified", certified == forms, format!("{certified}/{forms} forms certified")));

    for r in [q(0), q(1), q(2), q(-1), qf(1, 2)] {
        let (lhs, rhs) = fr_identity(&r);
        out.push(Check::eq(format!("fr-identity r={}", format_rational(&r)), &lhs, &rhs));
    }

    let sw = groups::swap();
    let g = p("1+x1");
    let h = p("x2^2+x1");
    let rg = reynolds(&g, &sw).expect("swap");
    let rh = reynolds(&h, &sw).expect("swap");
    out.push(Check::eq("rho(g)", &rg, &p("1+1/2*x1+1/2*x2")));
    out.push(Check::eq("rho(h)", &rh, &p("1/2*(x1^2+x2^2+x1+x2)")));
    let m = [q(-1), q(0)];
    let m2 = [q(0), q(-1)];
    let ev = |f: &Poly, x: &[Rational]| f.eval(x).expect("two coordinates");
    out.push(Check::eq("g(M)", &ev(&g, &m), &q(0)));
    out.push(Check::eq("g(M')", &ev(&g, &m2), &q(1)));
    out.push(Check::eq("h(M)", &ev(&h, &m), &q(-1)));
    out.push(Check::eq("h(M')", &ev(&h, &m2), &q(1)));
    out.push(Check::eq("4*rho(g)*rho(h)", &(&rg * &rh).scale(&q(4)), &p("(2+x1+x2)*(x1^2+x2^2+x1+x2)")));
    for a in [q(1), qf(-3, 2), q(5)] {
        let qa = p("x1^2").scale(&a);
        let lhs = reynolds(&(&qa * &g), &sw).expect("swap").scale(&q(2));
        let rhs = p("x1^2+x2^2+x1^3+x2^3").scale(&a);
        out.push(Check::eq(format!("2*rho(q*g) a={}", format_rational(&a)), &lhs, &rhs));
    }
    out
}
