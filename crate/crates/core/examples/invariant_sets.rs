//! Invariant semialgebraic sets: elementary symmetric descriptions and
//! Reynolds images of quadratic modules and preorderings.

use equisos::orbitspace::{elementary_symmetric_description, fr_identity, rational_grid, reynolds_module, Ambient, ModuleFlavor, QuadraticModuleDesc};
use equisos::poly::{Poly, VarNames};
use equisos::rational::{q, qf};
use equisos::symmetry::groups;

fn main() -> anyhow::Result<()> {
    let x1 = VarNames::x(1);
    let fs = [Poly::parse("1 + x1", &x1)?, Poly::parse("1 - x1", &x1)?];
    let es = elementary_symmetric_description(&fs, &groups::sign_line())?;
    for (f, row) in fs.iter().zip(&es.s) {
        println!("{}: s = [{}]", f.display(&x1), row.iter().map(|p| p.display(&x1).to_string()).collect::<Vec<_>>().join(", "));
    }
    let grid: Vec<_> = rational_grid(q(-2), q(2), 201).into_iter().map(|x| vec![x]).collect();
    println!("disagreements on 201 grid points: {}", es.disagreements(&grid)?.len());

    let names = VarNames::x(2);
    let po = QuadraticModuleDesc::new(vec![Poly::parse("x1", &names)?, Poly::parse("x2", &names)?], ModuleFlavor::Preordering, Ambient::V);
    let gens = reynolds_module(&po, &groups::swap(), 1)?;
    println!("rho(PO(x, y)) has {} generators up to multiplier degree 1:", gens.len());
    for g in &gens {
        println!("  {}", g.display(&names));
    }
    for r in [q(1), qf(1, 2)] {
        let (lhs, rhs) = fr_identity(&r);
        println!("r = {r}: 2*rho((1 - r*y)^2 * x) = {} (closed form matches: {})", lhs.display(&names), lhs == rhs);
    }
    Ok(())
}
