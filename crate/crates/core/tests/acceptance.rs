//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the run
//! fails if any criterion fails.

use equisos::linalg::QMatrix;
use equisos::moments::{
    apply, factors_through_reynolds, hankel_matrix, check_psd, invariant_moment_check, is_invariant_functional, moments_of,
    pushforward_moments, AtomicMeasure, MomentVector,
};
use equisos::orbitspace::{
    elementary_symmetric_description, example_identity_suite, fr_identity, invariant_generators, minor_sos_certificates,
    orbit_image_description, poly_det, procesi_schwarz_matrix, random_psd_binary_quadratic, rational_grid, Ambient,
    ModuleFlavor, QuadraticModuleDesc,
};
use equisos::poly::{Monomial, Poly, VarNames};
use equisos::rational::{q, qf, Rational};
use equisos::scenario::{run_scenario, RunContext};
use equisos::sosgram::{default_basis, equivariant_sos_decompose, gram_space_pruned, psd_feasible_point, sos_certificate, PsdOptions, PsdOutcome};
use equisos::symmetry::{act, decompose_representation, groups, is_invariant, is_semi_invariant, reynolds, representation_on_basis, torus_reynolds};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn x(s: &str, n: usize) -> Poly {
    Poly::parse(s, &VarNames::x(n)).unwrap()
}

fn u(s: &str, m: usize) -> Poly {
    Poly::parse(s, &VarNames::u(m)).unwrap()
}

fn random_poly(rng: &mut impl Rng, n: usize, max_deg: u32, terms: usize) -> Poly {
    let monos = Monomial::all_up_to_degree(n, max_deg);
    let mut f = Poly::zero(n);
    for _ in 0..terms {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        f.add_term(m, qf(rng.gen_range(-6..=6), rng.gen_range(1..=3)));
    }
    f
}

fn c1_reynolds_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let groups = [("mu2", groups::antipodal(2)), ("swap", groups::swap()), ("D4", groups::dihedral4())];
    let per_group = 200;
    for (name, g) in &groups {
        for t in 0..per_group {
            let f = random_poly(&mut rng, 2, 5, 5);
            let a = reynolds(&random_poly(&mut rng, 2, 4, 4), g).unwrap();
            let h = g.element(rng.gen_range(0..g.order())).clone();
            let rf = reynolds(&f, g).unwrap();
            ensure(reynolds(&rf, g).unwrap() == rf, format!("{name} #{t}: not idempotent"))?;
            ensure(reynolds(&act(&f, &h, g).unwrap(), g).unwrap() == rf, format!("{name} #{t}: not translation invariant"))?;
            ensure(reynolds(&(&a * &f), g).unwrap() == &a * &rf, format!("{name} #{t}: not linear over invariants"))?;
        }
    }
    Ok(format!("{} (f, a, g) triples per group for mu2, swap, D4", per_group))
}

fn c2_equivariant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut count = 0;
    let mut squares = 0;
    for (name, g) in [("swap", groups::swap()), ("D4", groups::dihedral4())] {
        for t in 0..25 {
            let d = 1 + (t % 3) as u32;
            let nq = Monomial::all_up_to_degree(2, d).len();
            let mut s = Poly::zero(2);
            for _ in 0..nq {
                let mut qi = random_poly(&mut rng, 2, d, 4);
                // keep the exact degree
                qi.add_term(Monomial::new(vec![d as i32, 0]), q(rng.gen_range(1..=3)));
                s = &s + &(&qi * &qi);
            }
            let f = reynolds(&s, &g).unwrap();
            ensure(f.degree() == Some(2 * d as i32), format!("{name} #{t}: degree"))?;
            let cert = equivariant_sos_decompose(&f, &g, d, &PsdOptions::with_seed(t)).map_err(|e| format!("{name} #{t}: {e}"))?;
            ensure(cert.verify() && cert.residual_zero(), format!("{name} #{t}: residual"))?;
            for (_, sq) in &cert.squares {
                ensure(is_semi_invariant(sq, &g).unwrap().semi_invariant, format!("{name} #{t}: square not semi-invariant"))?;
            }
            // cross blocks of the averaged Gram form in component coordinates
            let gram = cert.gram.as_ref().ok_or("no Gram form")?;
            let (_, homog) = default_basis(&f, d);
            let rep = representation_on_basis(&g, gram.basis.clone(), d, homog).unwrap();
            let dec = decompose_representation(&g, rep).unwrap();
            let qp: QMatrix = &(&dec.change_inv * &gram.matrix) * &dec.change_inv.transpose();
            let off = dec.offsets();
            let blk = |i: usize| (0..dec.components.len()).find(|&c| i >= off[c] && i < off[c + 1]).unwrap();
            for i in 0..qp.nrows() {
                for j in 0..qp.ncols() {
                    if blk(i) != blk(j) {
                        ensure(qp[(i, j)].is_zero(), format!("{name} #{t}: cross-block entry ({i}, {j})"))?;
                    }
                }
            }
            ensure(is_invariant(&f, &g).unwrap(), "target not invariant")?;
            count += 1;
            squares += cert.squares.len();
        }
    }
    Ok(format!("{count} invariant targets of degree <= 6, {squares} semi-invariant squares, zero cross blocks"))
}

fn c3_procesi_schwarz() -> Outcome {
    let d4 = groups::dihedral4();
    let gens = invariant_generators(&d4).unwrap();
    ensure(gens.gens == vec![x("x1^2+x2^2", 2), x("x1^2*x2^2", 2)], "generators")?;
    let ps = procesi_schwarz_matrix(&gens, &d4).unwrap();
    let mw = ps.m_in_generators.clone().ok_or("M not rewritten")?;
    ensure(mw == vec![vec![u("4*u1", 2), u("8*u2", 2)], vec![u("8*u2", 2), u("4*u1*u2", 2)]], "M")?;
    ensure(poly_det(&mw, 2) == u("16*u2*(u1^2-4*u2)", 2), "det M")?;
    let certs = minor_sos_certificates(&ps);
    ensure(certs.len() == 4 && certs.values().all(|c| c.verify() && c.residual_zero()), "minor certificates")?;
    let desc = orbit_image_description(&ps).unwrap();
    let target = |z: &[Rational]| z[0] >= q(0) && z[1] >= q(0) && &z[0] * &z[0] >= q(4) * &z[1];
    let grid = rational_grid(q(-2), q(2), 41);
    for a in &grid {
        for b in &grid {
            let z = gens.image(&[a.clone(), b.clone()]).unwrap();
            ensure(target(&z) && desc.contains(&z).unwrap(), format!("image of ({a}, {b})"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut off = 0;
    while off < 1000 {
        let z = [qf(rng.gen_range(-400..=400), 40), qf(rng.gen_range(-400..=400), 40)];
        if target(&z) {
            continue;
        }
        ensure(!desc.contains(&z).unwrap(), format!("off-image point ({}, {}) accepted", z[0], z[1]))?;
        off += 1;
    }
    Ok("M = [[4u, 8v], [8v, 4uv]], det = 16v(u^2-4v), 4 certified minors, 41x41 grid + 1000 off-image points".into())
}

fn c4_reflection_antipodal() -> Outcome {
    let g = groups::reflect_last(3);
    let gens = invariant_generators(&g).unwrap();
    let desc = orbit_image_description(&procesi_schwarz_matrix(&gens, &g).unwrap()).unwrap();
    ensure(desc.inequalities == vec![u("u3", 3)], "description is not {u3}")?;
    let anti = groups::antipodal(2);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for t in 0..25 {
        let f = random_psd_binary_quadratic(&mut rng);
        ensure(is_invariant(&f, &anti).unwrap(), "form not invariant")?;
        let c = sos_certificate(&f, 1, &PsdOptions::with_seed(t)).map_err(|e| format!("form #{t}: {e}"))?;
        ensure(c.verify() && c.residual_zero(), format!("form #{t}: certificate"))?;
    }
    Ok("image {u3 >= 0}; 25 antipodal PSD forms certified at degree 1".into())
}

fn c5_fr_identity() -> Outcome {
    for r in [q(0), q(1), q(2), q(-1), qf(1, 2)] {
        let (lhs, rhs) = fr_identity(&r);
        ensure(lhs == rhs, format!("r = {r}"))?;
    }
    Ok("r in {0, 1, 2, -1, 1/2}".into())
}

fn c6_preordering_evaluations() -> Outcome {
    let suite = example_identity_suite();
    let names = ["rho(g)", "rho(h)", "g(M)", "g(M')", "h(M)", "h(M')", "4*rho(g)*rho(h)"];
    for n in names {
        let c = suite.checks.iter().find(|c| c.name == n).ok_or(format!("missing {n}"))?;
        ensure(c.pass, format!("{n}: {}", c.detail))?;
    }
    Ok("rho(g), rho(h), four evaluations, 4*rho(g)*rho(h)".into())
}

fn c7_noncompact() -> Outcome {
    let f = Poly::parse("(x1 - x1^-1)^2", &VarNames::x(1)).unwrap();
    ensure(torus_reynolds(&f, &[1]).unwrap() == x("-2", 1), "(x - 1/x)^2")?;
    ensure(torus_reynolds(&x("(x1^2-x2^2)^2", 2), &[1, -1]).unwrap() == x("-2*x1^2*x2^2", 2), "(x^2 - y^2)^2")?;
    Ok("-2 and -2x^2y^2".into())
}

fn random_atoms(rng: &mut impl Rng, n: usize, k: usize) -> AtomicMeasure {
    let atoms = (0..k).map(|_| ((0..n).map(|_| qf(rng.gen_range(-8..=8), 4)).collect(), qf(rng.gen_range(1..=5), 5))).collect();
    AtomicMeasure::new(atoms).unwrap()
}

fn c8_moments() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pairs = 0;
    for g in [groups::swap(), groups::dihedral4()] {
        let gens = invariant_generators(&g).unwrap();
        let m = gens.len();
        let maxg = *gens.degrees.iter().max().unwrap();
        for t in 0..60 {
            let mu = random_atoms(&mut rng, 2, 3);
            let l = moments_of(&mu, 2, 3 * maxg).unwrap();
            let lw = pushforward_moments(&l, &gens, 3).unwrap();
            let qw = random_poly(&mut rng, m, 3, 4);
            let lhs = apply(&lw, &qw).unwrap();
            let rhs = apply(&l, &gens.compose(&qw).unwrap()).unwrap();
            ensure(lhs == rhs, format!("pushforward pair #{t}"))?;
            pairs += 1;
            // invariance and factorization through rho agree, both ways
            let sym = moments_of(&mu.symmetrize(&g), 2, 6).unwrap();
            ensure(is_invariant_functional(&sym, &g).unwrap() && factors_through_reynolds(&sym, &g).unwrap(), "symmetrized")?;
            let raw = moments_of(&mu, 2, 6).unwrap();
            ensure(is_invariant_functional(&raw, &g).unwrap() == factors_through_reynolds(&raw, &g).unwrap(), "raw")?;
        }
    }
    // a non-invariant functional fails both
    let raw = moments_of(&AtomicMeasure::uniform(vec![vec![q(1), q(2)]]), 2, 6).unwrap();
    ensure(!is_invariant_functional(&raw, &groups::swap()).unwrap() && !factors_through_reynolds(&raw, &groups::swap()).unwrap(), "asymmetric atom")?;

    // invariant strip for D4
    let d4 = groups::dihedral4();
    let gens = invariant_generators(&d4).unwrap();
    let strip = QuadraticModuleDesc::new(vec![u("u2", 2), u("u1-u2-1", 2), u("2-u1+u2", 2)], ModuleFlavor::QuadraticModule, Ambient::W);
    let check = |p: [Rational; 2]| {
        let l = moments_of(&AtomicMeasure::uniform(vec![p.to_vec()]).symmetrize(&d4), 2, 12).unwrap();
        invariant_moment_check(&l, &d4, &gens, &strip, 1).unwrap()
    };
    ensure(check([q(1), qf(1, 2)]).pass, "measure on the strip fails")?;
    let outside = check([q(2), q(2)]);
    ensure(!outside.pass && !outside.checks[2].pass, "measure off the strip passes")?;

    // swap with K = [0, 1]^2: image points
    let sw = groups::swap();
    let sg = invariant_generators(&sw).unwrap();
    for _ in 0..500 {
        let p = [qf(rng.gen_range(-20..=20), 10), qf(rng.gen_range(-20..=20), 10)];
        let z = sg.image(&p).unwrap();
        ensure(&z[0] * &z[0] >= q(4) * &z[1], "u^2 < 4v")?;
        if p.iter().all(|c| c >= &q(0) && c <= &q(1)) {
            ensure(z[0] >= q(0) && z[1] >= q(0) && z[1] <= q(1), "image of K")?;
        }
    }
    let quadrant = run_scenario("swap-quadrant", &RunContext::new(0)).unwrap();
    ensure(quadrant.pass, "swap-quadrant scenario")?;
    Ok(format!("{pairs} pushforward pairs, invariance <=> factorization, strip PASS/FAIL, swap image points"))
}

fn c9_interval() -> Outcome {
    let es = elementary_symmetric_description(&[x("1+x1", 1), x("1-x1", 1)], &groups::sign_line()).unwrap();
    ensure(es.s.iter().all(|r| r == &vec![x("2", 1), x("1-x1^2", 1)]), "s-polynomials")?;
    let grid: Vec<Vec<Rational>> = rational_grid(q(-2), q(2), 201).into_iter().map(|t| vec![t]).collect();
    let bad = es.disagreements(&grid).unwrap();
    ensure(bad.is_empty(), format!("{} disagreements", bad.len()))?;
    ensure(es.set_invariant_on(&groups::sign_line(), &grid).unwrap(), "set not invariant")?;
    Ok("{2, 1 - x^2} agrees with {1 + x, 1 - x} on 201 grid points".into())
}

fn c10_negative() -> Outcome {
    let space = gram_space_pruned(&x("x1^2-x2^2", 2), 1).unwrap();
    match psd_feasible_point(&space, &PsdOptions::with_seed(0)).unwrap() {
        PsdOutcome::Infeasible { max_min_eigenvalue, .. } => {
            ensure(max_min_eigenvalue <= -0.9 && (max_min_eigenvalue + 1.0).abs() <= 0.05, format!("maximin {max_min_eigenvalue}"))?;
        }
        PsdOutcome::Feasible(_) => return Err("x^2 - y^2 reported feasible".into()),
    }
    let mut l = MomentVector::zero(1, 2);
    l.set(Monomial::new(vec![0]), q(1));
    l.set(Monomial::new(vec![2]), q(-1));
    let c = check_psd("hankel", &hankel_matrix(&l, 1).unwrap(), &VarNames::x(1));
    ensure(!c.pass && c.min_pivot.as_deref().is_some_and(|p| p.starts_with('-')), "Hankel with L(x^2) = -1 passes")?;
    ensure(c.min_eigenvalue < 0.0, "float eigenvalue not negative")?;
    Ok("x^2 - y^2 infeasible with maximin about -1; Hankel with L(x^2) = -1 FAIL".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Reynolds suite", c1_reynolds_suite),
        ("equivariant sums of squares", c2_equivariant),
        ("Procesi-Schwarz matrix for D4", c3_procesi_schwarz),
        ("reflection image and antipodal PSD forms", c4_reflection_antipodal),
        ("averaging identity for (1 - r*y)^2 * x", c5_fr_identity),
        ("preordering evaluations under the swap", c6_preordering_evaluations),
        ("non-compact torus", c7_noncompact),
        ("moment suite", c8_moments),
        ("interval under x -> -x", c9_interval),
        ("negative-space checks", c10_negative),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let ms = t.elapsed().as_millis();
        match r {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed in {} ms", criteria.len() - failed, criteria.len(), start.elapsed().as_millis());
    if failed > 0 {
        std::process::exit(1);
    }
}
