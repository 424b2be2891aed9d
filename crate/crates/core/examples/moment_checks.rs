//! Moment functionals: measures, pushforward to the orbit space, and the
//! Hankel and localizing checks for an invariant strip.

use equisos::moments::{factors_through_reynolds, invariant_moment_check, moments_of, pushforward_moments, AtomicMeasure};
use equisos::orbitspace::{invariant_generators, Ambient, ModuleFlavor, QuadraticModuleDesc};
use equisos::poly::{Poly, VarNames};
use equisos::rational::{q, qf};
use equisos::symmetry::groups;

fn main() -> anyhow::Result<()> {
    let d4 = groups::dihedral4();
    let gens = invariant_generators(&d4)?;
    let u = VarNames::u(2);
    // {v >= 0, 1 <= u - v <= 2} in orbit-space coordinates
    let strip = QuadraticModuleDesc::new(
        vec![Poly::parse("u2", &u)?, Poly::parse("u1 - u2 - 1", &u)?, Poly::parse("2 - u1 + u2", &u)?],
        ModuleFlavor::QuadraticModule,
        Ambient::W,
    );
    for point in [[q(1), qf(1, 2)], [q(2), q(2)]] {
        let mu = AtomicMeasure::uniform(vec![point.to_vec()]).symmetrize(&d4);
        let l = moments_of(&mu, 2, 16)?;
        println!("orbit of ({}, {}): {} atoms, invariant functional: {}", point[0], point[1], mu.atoms.len(), factors_through_reynolds(&l, &d4)?);
        let lw = pushforward_moments(&l, &gens, 4)?;
        println!("  pushforward mass {}, L(u1) = {}", lw.mass(), equisos::moments::apply(&lw, &Poly::parse("u1", &u)?)?);
        let report = invariant_moment_check(&l, &d4, &gens, &strip, 1)?;
        for c in &report.checks {
            println!("  {} {} [{}] min pivot {}", if c.pass { "PASS" } else { "FAIL" }, c.label, c.generator, c.min_pivot.as_deref().unwrap_or("-"));
        }
    }
    Ok(())
}
