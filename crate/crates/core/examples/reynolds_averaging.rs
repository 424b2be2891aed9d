//! Reynolds averages, orbits, semi-invariants and the weight-zero projection
//! for a torus, which is where averaging stops preserving nonnegativity.

use equisos::poly::{Poly, VarNames};
use equisos::symmetry::{groups, is_semi_invariant, orbit, reynolds, reynolds_convexity_check, torus_reynolds};

fn main() -> anyhow::Result<()> {
    let names = VarNames::x(2);
    let d4 = groups::dihedral4();
    println!("D4 has {} elements and {} conjugacy classes", d4.order(), d4.conjugacy_classes().len());

    let f = Poly::parse("x1^4 + x1*x2 + x2", &names)?;
    let r = reynolds(&f, &d4)?;
    println!("rho({}) = {}", f.display(&names), r.display(&names));
    println!("orbit of x1^3*x2: {} distinct images", orbit(&Poly::parse("x1^3*x2", &names)?, &d4)?.len());

    for s in ["x1^2 - x2^2", "x1*x2", "x1*x2*(x1^2 - x2^2)"] {
        let p = Poly::parse(s, &names)?;
        let si = is_semi_invariant(&p, &d4)?;
        println!("{s}: semi-invariant {} ({:?})", si.semi_invariant, si.kind);
    }

    // rho(f) is a convex combination of the orbit
    let line = groups::sign_line();
    let g = Poly::parse("1 + x1", &VarNames::x(1))?;
    let cert = reynolds_convexity_check(&g, &line)?;
    println!("rho(1 + x) = {} with weights {:?}", cert.combination().display(&VarNames::x(1)), cert.weights.iter().map(ToString::to_string).collect::<Vec<_>>());

    // the multiplicative group: projecting onto weight zero
    let sq = Poly::parse("(x1 - x1^-1)^2", &VarNames::x(1))?;
    println!("rho_torus((x - 1/x)^2) = {}", torus_reynolds(&sq, &[1])?.display(&VarNames::x(1)));
    let sq2 = Poly::parse("(x1^2 - x2^2)^2", &names)?;
    println!("rho_torus((x^2 - y^2)^2) with weights (1, -1) = {}", torus_reynolds(&sq2, &[1, -1])?.display(&names));
    Ok(())
}
