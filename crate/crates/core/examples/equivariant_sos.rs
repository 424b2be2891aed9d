//! Symmetry-adapted sums of squares: isotypic decomposition of the forms,
//! the averaged Gram form, and squares labelled by semi-invariance type.

use equisos::poly::{Poly, VarNames};
use equisos::rational::format_rational;
use equisos::sosgram::{equivariant_sos_decompose, PsdOptions};
use equisos::symmetry::{groups, isotypical_decompose, reynolds};

fn main() -> anyhow::Result<()> {
    let names = VarNames::x(2);
    let d4 = groups::dihedral4();
    let dec = isotypical_decompose(&d4, 2, true)?;
    dec.verify(&d4)?;
    for (i, c) in dec.components.iter().enumerate() {
        println!("component {i}: {} dim {} multiplicity {}", c.label(), c.dim(), c.multiplicity());
    }

    let f = reynolds(&Poly::parse("(x1^2 + 2*x1*x2 - x2^2)^2 + (x1*x2 - 1)^2", &names)?, &d4)?;
    println!("f = {}", f.display(&names));
    let cert = equivariant_sos_decompose(&f, &d4, 2, &PsdOptions::with_seed(1))?;
    for ((c, q), a) in cert.squares.iter().zip(cert.annotations.as_deref().unwrap_or_default()) {
        println!("  {} * ({})^2   [{}]", format_rational(c), q.display(&names), a.type_label);
    }
    println!("exact: {}", cert.verify() && cert.residual_zero());
    Ok(())
}
