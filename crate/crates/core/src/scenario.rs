//! Registry of named end-to-end scenarios. Each one wires several modules
//! together and compares against exact expected outputs.

use crate::moments::{
    averaged_module_moment_check, invariant_moment_check, moments_of, pushforward_moments, AtomicMeasure, AveragedCaps,
    MomentVector,
};
use crate::orbitspace::{
    elementary_symmetric_description, example_identity_suite_seeded, fr_identity, invariant_generators,
    minor_sos_certificates, orbit_image_description, procesi_schwarz_matrix, rational_grid, Ambient, InvariantGenerators,
    ModuleFlavor, QuadraticModuleDesc,
};
use crate::poly::{Monomial, Poly, VarNames};
use crate::rational::{format_rational, q, qf, Rational};
use crate::report::{Check, CheckList};
use crate::sosgram::{equivariant_sos_decompose, PsdOptions};
use crate::symmetry::{groups, is_invariant, reynolds, reynolds_convexity_check, torus_reynolds, GroupAction};
use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

/// Settings shared by every scenario run.
#[derive(Debug, Clone)]
pub struct RunContext {
    pub seed: u64,
    pub deadline: Option<Instant>,
    /// Record wall time in the report.
    pub timing: bool,
}

impl RunContext {
    pub fn new(seed: u64) -> Self {
        RunContext { seed, deadline: None, timing: false }
    }

    fn psd(&self) -> PsdOptions {
        PsdOptions { seed: self.seed, deadline: self.deadline, ..Default::default() }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub struct Scenario {
    pub name: &'static str,
    pub summary: &'static str,
    run: fn(&RunContext) -> CheckList,
}

/// Outcome of one scenario; deterministic given the seed.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Wall time; left out unless requested so reports stay byte-identical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    /// Files written for this run.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub artifacts: Vec<String>,
}

impl RunReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("scenario {} (seed {}): {}\n", self.scenario, self.seed, if self.pass { "PASS" } else { "FAIL" });
        for c in &self.checks {
            s.push_str(&format!("  {} {}: {}\n", c.status(), c.name, c.detail));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown scenario {name:?}; available: {}", suggestions.join(", "))]
pub struct UnknownScenario {
    pub name: String,
    pub suggestions: Vec<String>,
}

pub fn registry() -> &'static [Scenario] {
    &[
        Scenario { name: "gm-noncompact", summary: "weight-zero projection of a square can be negative for the multiplicative group", run: gm_noncompact },
        Scenario { name: "d4-strip", summary: "dihedral orbit space description and localizing checks on an invariant strip", run: d4_strip },
        Scenario { name: "swap-quadrant", summary: "averaged preordering of the quadrant under the swap, moment checks and image points", run: swap_quadrant },
        Scenario { name: "hyperelliptic", summary: "moments on y^2 = x^3 - x pushed to the x-line, checked against supplied generators", run: hyperelliptic },
        Scenario { name: "antipodal-psd", summary: "invariant quadratic forms under x -> -x are certified sums of squares", run: antipodal_psd },
        Scenario { name: "reflection-preordering", summary: "orbit image of a single reflection in three variables", run: reflection_preordering },
        Scenario { name: "rho-not-po", summary: "averaging a preordering under the swap: generator images and evaluations", run: rho_not_po },
        Scenario { name: "fr-identity", summary: "closed form of 2*rho((1 - r*y)^2 * x) under the swap", run: fr_scenario },
        Scenario { name: "interval-mu2", summary: "[-1, 1] under x -> -x via elementary symmetric functions of orbits", run: interval_mu2 },
        Scenario { name: "trivial-group", summary: "every construction degenerates correctly for the trivial group", run: trivial_group },
        Scenario { name: "equivariant-sos", summary: "symmetry-adapted certificates for invariant quartics", run: equivariant_sos },
    ]
}

pub fn list_scenarios() -> Vec<&'static str> {
    registry().iter().map(|s| s.name).collect()
}

pub fn run_scenario(name: &str, ctx: &RunContext) -> Result<RunReport, UnknownScenario> {
    let s = registry().iter().find(|s| s.name == name).ok_or_else(|| UnknownScenario {
        name: name.to_string(),
        suggestions: suggest(name),
    })?;
    let start = Instant::now();
    let checks = (s.run)(ctx);
    let timing_ms = ctx.timing.then(|| start.elapsed().as_millis() as u64);
    Ok(RunReport {
        scenario: s.name.to_string(),
        seed: ctx.seed,
        pass: checks.all_pass(),
        checks: checks.checks,
        timing_ms,
        artifacts: vec![],
    })
}

/// Registered names sharing a word with `name`, or all names if none do.
fn suggest(name: &str) -> Vec<String> {
    let words: Vec<&str> = name.split(|c: char| !c.is_alphanumeric()).filter(|w| !w.is_empty()).collect();
    let hits: Vec<String> =
        list_scenarios().into_iter().filter(|n| words.iter().any(|w| n.contains(w))).map(String::from).collect();
    if hits.is_empty() {
        list_scenarios().into_iter().map(String::from).collect()
    } else {
        hits
    }
}

fn xp(s: &str, n: usize) -> Poly {
    Poly::parse(s, &VarNames::x(n)).expect("scenario polynomial")
}

fn up(s: &str, m: usize) -> Poly {
    Poly::parse(s, &VarNames::u(m)).expect("scenario polynomial")
}

fn err_check(name: &str, e: impl std::fmt::Display) -> Check {
    Check::new(name, false, format!("error: {e}"))
}

fn gm_noncompact(_: &RunContext) -> CheckList {
    let mut out = CheckList::default();
    let f = Poly::parse("(x1 - x1^-1)^2", &VarNames::x(1)).expect("Laurent text");
    match torus_reynolds(&f, &[1]) {
        Ok(r) => {
            out.push(Check::eq("rho((x - 1/x)^2)", &r, &xp("-2", 1)));
            let neg = r.as_constant().is_some_and(|c| c.is_negative());
            out.push(Check::new("average of a square is negative", neg, "projection of a square is -2 < 0"));
        }
        Err(e) => out.push(err_check("rho((x - 1/x)^2)", e)),
    }
    match torus_reynolds(&xp("(x1^2 - x2^2)^2", 2), &[1, -1]) {
        Ok(r) => out.push(Check::eq("rho((x^2 - y^2)^2) with weights (1, -1)", &r, &xp("-2*x1^2*x2^2", 2))),
        Err(e) => out.push(err_check("rho((x^2 - y^2)^2)", e)),
    }
    out
}

/// Image points `(p_1(x), …)` of an atomic measure.
fn image_points(mu: &AtomicMeasure, gens: &InvariantGenerators) -> Vec<Vec<Rational>> {
    mu.atoms.iter().filter_map(|(p, _)| gens.image(p).ok()).collect()
}

fn strip_module() -> QuadraticModuleDesc {
    QuadraticModuleDesc::new(vec![up("u2", 2), up("u1-u2-1", 2), up("2-u1+u2", 2)], ModuleFlavor::QuadraticModule, Ambient::W)
}

fn d4_strip(_: &RunContext) -> CheckList {
    let mut out = CheckList::default();
    let d4 = groups::dihedral4();
    out.push(Check::eq("group order", &d4.order(), &8));
    let gens = match invariant_generators(&d4) {
        Ok(g) => g,
        Err(e) => {
            out.push(err_check("invariant generators", e));
            return out;
        }
    };
    out.push(Check::new("generators", gens.gens == vec![xp("x1^2+x2^2", 2), xp("x1^2*x2^2", 2)], poly_list(&gens.gens, false)));
    match procesi_schwarz_matrix(&gens, &d4) {
        Ok(ps) => {
            let expected = vec![vec![up("4*u1", 2), up("8*u2", 2)], vec![up("8*u2", 2), up("4*u1*u2", 2)]];
            out.push(Check::new("M in generators", ps.m_in_generators.as_ref() == Some(&expected), "[[4u1, 8u2], [8u2, 4u1*u2]]"));
            let certs = minor_sos_certificates(&ps);
            let ok = certs.values().all(|c| c.verify() && c.residual_zero());
            out.push(Check::new("Binet-Cauchy certificates", ok, format!("{} principal minors", certs.len())));
            match orbit_image_description(&ps) {
                Ok(desc) => {
                    let expected = vec![up("u1", 2), up("u1*u2", 2), up("u1^2*u2-4*u2^2", 2)];
                    out.push(Check::new("orbit space description", desc.inequalities == expected, poly_list(&desc.inequalities, true)));
                }
                Err(e) => out.push(err_check("orbit space description", e)),
            }
        }
        Err(e) => out.push(err_check("Procesi-Schwarz matrix", e)),
    }
    // strip K = {v ≥ 0, 1 ≤ u − v ≤ 2} in orbit-space coordinates
    let n = strip_module();
    let inside = AtomicMeasure::uniform(vec![vec![q(1), qf(1, 2)]]).symmetrize(&d4);
    let images = image_points(&inside, &gens);
    out.push(Check::new(
        "orbit of (1, 1/2) maps to (5/4, 1/4)",
        images.iter().all(|z| z == &vec![qf(5, 4), qf(1, 4)]),
        format!("{} atoms", inside.atoms.len()),
    ));
    let run = |mu: &AtomicMeasure| -> Result<bool, String> {
        let l = moments_of(mu, 2, 12).map_err(|e| e.to_string())?;
        Ok(invariant_moment_check(&l, &d4, &gens, &n, 1).map_err(|e| e.to_string())?.pass)
    };
    match run(&inside) {
        Ok(p) => out.push(Check::new("invariant measure on K passes", p, "Hankel and 3 localizing matrices PSD")),
        Err(e) => out.push(err_check("invariant measure on K passes", e)),
    }
    let outside = AtomicMeasure::uniform(vec![vec![q(2), q(2)]]).symmetrize(&d4);
    match run(&outside) {
        Ok(p) => out.push(Check::new("measure off K fails", !p, "u - v - 1 = -9 at (8, 16)")),
        Err(e) => out.push(err_check("measure off K fails", e)),
    }
    match run(&AtomicMeasure::default()) {
        Ok(p) => out.push(Check::new("zero measure passes", p, "all matrices zero")),
        Err(e) => out.push(err_check("zero measure passes", e)),
    }
    out
}

/// Generator-space polynomials (`in_u`) print with u-names, others with x-names.
fn poly_list(ps: &[Poly], in_u: bool) -> String {
    let n = ps.first().map_or(0, Poly::nvars);
    let names = if in_u { VarNames::u(n) } else { VarNames::x(n) };
    let items: Vec<String> = ps.iter().map(|p| p.display(&names).to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn random_point(rng: &mut impl Rng, lo: i64, hi: i64, den: i64) -> Rational {
    qf(rng.gen_range(lo * den..=hi * den), den)
}

fn swap_quadrant(ctx: &RunContext) -> CheckList {
    let mut out = CheckList::default();
    let sw = groups::swap();
    let po = QuadraticModuleDesc::new(vec![xp("x1", 2), xp("x2", 2)], ModuleFlavor::Preordering, Ambient::V);
    let caps = AveragedCaps { module_degree: 2, localizing_degree: 2 };
    let mut rng = ctx.rng();
    let pts: Vec<(Vec<Rational>, Rational)> = (0..4)
        .map(|_| (vec![random_point(&mut rng, 0, 2, 8), random_point(&mut rng, 0, 2, 8)], qf(rng.gen_range(1..=4), 4)))
        .collect();
    let quadrant = AtomicMeasure::new(pts).expect("positive weights").symmetrize(&sw);
    let check = |mu: &AtomicMeasure| -> Result<bool, String> {
        let l = moments_of(mu, 2, 8).map_err(|e| e.to_string())?;
        Ok(averaged_module_moment_check(&l, &sw, &po, caps).map_err(|e| e.to_string())?.pass)
    };
    match check(&quadrant) {
        Ok(p) => out.push(Check::new("invariant quadrant measure passes", p, "all rho-generators PSD-localized")),
        Err(e) => out.push(err_check("invariant quadrant measure passes", e)),
    }
    let neg = AtomicMeasure::uniform(vec![vec![q(-1), q(-1)]]).symmetrize(&sw);
    match check(&neg) {
        Ok(p) => out.push(Check::new("atom at (-1, -1) fails", !p, "L(rho(x)) = -1")),
        Err(e) => out.push(err_check("atom at (-1, -1) fails", e)),
    }
    let gens = match invariant_generators(&sw) {
        Ok(g) => g,
        Err(e) => {
            out.push(err_check("invariant generators", e));
            return out;
        }
    };
    out.push(Check::new("generators u = x + y, v = xy", gens.gens == vec![xp("x1+x2", 2), xp("x1*x2", 2)], poly_list(&gens.gens, false)));
    match procesi_schwarz_matrix(&gens, &sw).map_err(|e| e.to_string()).and_then(|ps| orbit_image_description(&ps).map_err(|e| e.to_string())) {
        Ok(desc) => out.push(Check::new(
            "orbit space description",
            desc.inequalities == vec![up("u1^2-2*u2", 2), up("u1^2-4*u2", 2)],
            poly_list(&desc.inequalities, true),
        )),
        Err(e) => out.push(err_check("orbit space description", e)),
    }
    // image points of [0,1]^2 and of arbitrary points
    let mut ok_k = true;
    let mut ok_all = true;
    for _ in 0..200 {
        let x = vec![random_point(&mut rng, -2, 2, 16), random_point(&mut rng, -2, 2, 16)];
        let z = gens.image(&x).expect("two coordinates");
        let (u, v) = (&z[0], &z[1]);
        ok_all &= u * u >= q(4) * v;
        let in_k = x.iter().all(|c| c >= &q(0) && c <= &q(1));
        if in_k {
            ok_k &= u >= &q(0) && v >= &q(0) && v <= &q(1);
        }
    }
    out.push(Check::new("u^2 >= 4v on all image points", ok_all, "200 random points"));
    out.push(Check::new("u >= 0 and 0 <= v <= 1 on images of [0,1]^2", ok_k, "random points inside the square"));
    let l = moments_of(&quadrant, 2, 8).expect("two coordinates");
    match pushforward_moments(&l, &gens, 4) {
        Ok(lw) => {
            let direct = lw.provenance.as_ref().and_then(|nu| moments_of(nu, 2, 4).ok());
            out.push(Check::new("pushforward equals moments of image atoms", direct.is_some_and(|d| d.values == lw.values), "degree 4"));
        }
        Err(e) => out.push(err_check("pushforward", e)),
    }
    out
}

/// Symmetric pairs of atoms at `(x0, ±√f(x0))` on `y² = f(x)`, recorded by
/// their moments: `L(x^a·y^b) = Σ w·x0^a·f(x0)^{b/2}` for even `b`, `0` otherwise.
pub fn curve_moments(f: &Poly, atoms: &[(Rational, Rational)], cap: u32) -> MomentVector {
    MomentVector::from_fn(2, cap, |m| {
        let (a, b) = (m.exps()[0], m.exps()[1]);
        if b % 2 == 1 {
            return Rational::zero();
        }
        atoms.iter().fold(Rational::zero(), |acc, (x0, w)| {
            let fx = f.eval(std::slice::from_ref(x0)).expect("one variable");
            acc + w * pow(x0, a) * pow(&fx, b / 2)
        })
    })
}

fn pow(x: &Rational, e: i32) -> Rational {
    (0..e).fold(Rational::from_integer(1.into()), |acc, _| acc * x)
}

fn hyperelliptic(_: &RunContext) -> CheckList {
    let mut out = CheckList::default();
    let f = xp("x1^3-x1", 1);
    // y -> -y on the curve; x and y^2 generate the invariants
    let g = groups::reflect_y();
    let gens = InvariantGenerators::from_polys(vec![xp("x1", 2), xp("x2^2", 2)], &g).expect("invariant generators");
    // generators of {f ≥ 0} = [-1, 0] ∪ [1, ∞) on the u1-line, supplied as data
    let n = QuadraticModuleDesc::new(vec![up("u1+1", 2), up("u1^2-u1", 2)], ModuleFlavor::Preordering, Ambient::W);
    let run = |atoms: &[(Rational, Rational)]| -> Result<bool, String> {
        let l = curve_moments(&f, atoms, 8);
        Ok(invariant_moment_check(&l, &g, &gens, &n, 1).map_err(|e| e.to_string())?.pass)
    };
    let on_curve = [(qf(-1, 2), qf(1, 3)), (q(2), qf(1, 3)), (q(-1), qf(1, 3))];
    match run(&on_curve) {
        Ok(p) => out.push(Check::new("atoms on the real curve pass", p, "x0 in {-1/2, 2, -1}")),
        Err(e) => out.push(err_check("atoms on the real curve pass", e)),
    }
    match run(&[(qf(1, 2), q(1))]) {
        Ok(p) => out.push(Check::new("atom over x0 = 1/2 fails", !p, "f(1/2) = -3/8 < 0")),
        Err(e) => out.push(err_check("atom over x0 = 1/2 fails", e)),
    }
    let real = |x: &Rational| !f.eval(std::slice::from_ref(x)).expect("one variable").is_negative();
    let grid = rational_grid(q(-3), q(3), 121);
    let agree = grid.iter().all(|x| {
        let z = [x.clone(), Rational::zero()];
        let in_n = n.generators.iter().all(|g| !g.eval(&z).expect("two coordinates").is_negative());
        in_n == real(x)
    });
    out.push(Check::new("supplied generators cut out {f >= 0}", agree, "121-point grid on [-3, 3]"));
    out
}

fn antipodal_psd(ctx: &RunContext) -> CheckList {
    let mut out = example_identity_suite_seeded(ctx.seed, 25);
    out.checks.retain(|c| c.name.starts_with("antipodal"));
    let anti = groups::antipodal(2);
    match invariant_generators(&anti) {
        Ok(g) => out.push(Check::new(
            "quadratic monomials generate",
            g.gens.len() == 3 && g.degrees == vec![2, 2, 2],
            poly_list(&g.gens, false),
        )),
        Err(e) => out.push(err_check("quadratic monomials generate", e)),
    }
    out
}

fn reflection_preordering(_: &RunContext) -> CheckList {
    let mut out = CheckList::default();
    let g = groups::reflect_last(3);
    let res = invariant_generators(&g).map_err(|e| e.to_string()).and_then(|gens| {
        let ps = procesi_schwarz_matrix(&gens, &g).map_err(|e| e.to_string())?;
        let d = orbit_image_description(&ps).map_err(|e| e.to_string())?;
        Ok((gens, d))
    });
    match res {
        Ok((gens, d)) => {
            out.push(Check::new("generators x1, x2, x3^2", gens.gens == vec![xp("x1", 3), xp("x2", 3), xp("x3^2", 3)], poly_list(&gens.gens, false)));
            out.push(Check::new("image is {u3 >= 0}", d.inequalities == vec![up("u3", 3)], poly_list(&d.inequalities, true)));
        }
        Err(e) => out.push(err_check("orbit image", e)),
    }
    out
}

fn rho_not_po(ctx: &RunContext) -> CheckList {
    let mut out = example_identity_suite_seeded(ctx.seed, 0);
    out.checks.retain(|c| !c.name.starts_with("antipodal") && !c.name.starts_with("fr-identity"));
    out
}

fn fr_scenario(_: &RunContext) -> CheckList {
    let mut out = CheckList::default();
    for r in [q(0), q(1), q(2), q(-1), qf(1, 2), qf(-7, 3)] {
        let (lhs, rhs) = fr_identity(&r);
        out.push(Check::eq(format!("r = {}", format_rational(&r)), &lhs, &rhs));
    }
    out
}

fn interval_mu2(_: &RunContext) -> CheckList {
    let mut out = CheckList::default();
    let g = groups::sign_line();
    let fs = [xp("1+x1", 1), xp("1-x1", 1)];
    match reynolds(&fs[0], &g) {
        Ok(r) => out.push(Check::eq("rho(1 + x)", &r, &xp("1", 1))),
        Err(e) => out.push(err_check("rho(1 + x)", e)),
    }
    match reynolds_convexity_check(&fs[0], &g) {
        Ok(c) => out.push(Check::new("convex combination of the orbit", c.is_valid_for(&xp("1", 1)), "1/2 (1 + x) + 1/2 (1 - x)")),
        Err(e) => out.push(err_check("convex combination", e)),
    }
    match elementary_symmetric_description(&fs, &g) {
        Ok(es) => {
            let expected = vec![vec![xp("2", 1), xp("1-x1^2", 1)], vec![xp("2", 1), xp("1-x1^2", 1)]];
            out.push(Check::new("s-polynomials {2, 1 - x^2}", es.s == expected, "per inequality"));
            let grid: Vec<Vec<Rational>> = rational_grid(q(-2), q(2), 201).into_iter().map(|x| vec![x]).collect();
            match es.disagreements(&grid) {
                Ok(d) => out.push(Check::new("descriptions agree on the grid", d.is_empty(), format!("{} disagreements of 201", d.len()))),
                Err(e) => out.push(err_check("descriptions agree", e)),
            }
        }
        Err(e) => out.push(err_check("s-polynomials", e)),
    }
    out
}

fn trivial_group(ctx: &RunContext) -> CheckList {
    let mut out = CheckList::default();
    let t = GroupAction::trivial(2);
    let mut rng = ctx.rng();
    let mut same = true;
    for _ in 0..20 {
        let mut f = Poly::zero(2);
        for _ in 0..4 {
            let m = Monomial::new(vec![rng.gen_range(0..4), rng.gen_range(0..4)]);
            f.add_term(m, q(rng.gen_range(-5..=5)));
        }
        same &= reynolds(&f, &t).map(|r| r == f).unwrap_or(false);
    }
    out.push(Check::new("Reynolds is the identity", same, "20 random polynomials"));
    match invariant_generators(&t).map_err(|e| e.to_string()).and_then(|gens| {
        let ps = procesi_schwarz_matrix(&gens, &t).map_err(|e| e.to_string())?;
        let d = orbit_image_description(&ps).map_err(|e| e.to_string())?;
        Ok((gens, ps, d))
    }) {
        Ok((gens, ps, d)) => {
            out.push(Check::new("coordinates generate", gens.gens == vec![xp("x1", 2), xp("x2", 2)], poly_list(&gens.gens, false)));
            let id = vec![vec![up("1", 2), up("0", 2)], vec![up("0", 2), up("1", 2)]];
            out.push(Check::new("M is the identity", ps.m_in_generators == Some(id), "2x2"));
            out.push(Check::new("no inequalities", d.inequalities.is_empty(), "all minors are positive constants"));
        }
        Err(e) => out.push(err_check("orbit space", e)),
    }
    let l = moments_of(&AtomicMeasure::uniform(vec![vec![q(1), q(2)]]), 2, 4).expect("two coordinates");
    out.push(Check::new(
        "every functional is invariant",
        crate::moments::is_invariant_functional(&l, &t).unwrap_or(false),
        "single atom",
    ));
    out
}

fn equivariant_sos(ctx: &RunContext) -> CheckList {
    let mut out = CheckList::default();
    let cases = [
        ("x1^2+x2^2 under swap", xp("x1^2+x2^2", 2), groups::swap(), 1),
        ("x1^4+x2^4 under D4", xp("x1^4+x2^4", 2), groups::dihedral4(), 2),
        ("(x1*x2)^2 under D4", xp("x1^2*x2^2", 2), groups::dihedral4(), 2),
        ("1+x1^2+x1^4 under sign", xp("1+x1^2+x1^4", 1), groups::sign_line(), 2),
    ];
    for (name, f, g, d) in cases {
        debug_assert!(is_invariant(&f, &g).unwrap_or(false));
        match equivariant_sos_decompose(&f, &g, d, &ctx.psd()) {
            Ok(c) => {
                let semi = c.annotations.as_ref().is_some_and(|a| a.iter().all(|s| s.semi_invariant));
                out.push(Check::new(name, c.verify() && c.residual_zero() && semi, format!("{} semi-invariant squares", c.squares.len())));
            }
            Err(e) => out.push(err_check(name, e)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_scenarios_pass() {
        let ctx = RunContext::new(0);
        for name in list_scenarios() {
            let r = run_scenario(name, &ctx).unwrap();
            assert!(r.pass, "{}", r.to_text());
        }
    }

    #[test]
    fn registry_contents() {
        let names = list_scenarios();
        for n in ["gm-noncompact", "d4-strip", "swap-quadrant", "hyperelliptic", "antipodal-psd", "rho-not-po", "fr-identity", "interval-mu2", "trivial-group"] {
            assert!(names.contains(&n), "{n}");
        }
        let e = run_scenario("d4", &RunContext::new(0)).unwrap_err();
        assert_eq!(e.suggestions, vec!["d4-strip"]);
        assert!(run_scenario("zzz", &RunContext::new(0)).unwrap_err().suggestions.len() >= 9);
    }

    #[test]
    fn deterministic_reports() {
        let a = serde_json::to_string(&run_scenario("swap-quadrant", &RunContext::new(3)).unwrap()).unwrap();
        let b = serde_json::to_string(&run_scenario("swap-quadrant", &RunContext::new(3)).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
