//! Gram-matrix sums of squares: the affine space of Gram forms, the numeric
//! PSD search, exact rounding, and an infeasible target.

use equisos::poly::{Poly, VarNames};
use equisos::rational::format_rational;
use equisos::sosgram::{gram_space_pruned, psd_feasible_point, rationalize_and_certify, PsdOptions, PsdOutcome};

fn main() -> anyhow::Result<()> {
    let names = VarNames::x(2);
    let opts = PsdOptions::with_seed(7);
    for s in ["x1^4 + x2^4 - x1^2*x2^2 + 1", "2*x1^2 - 2*x1*x2 + x2^2 + 4*x1 + 5", "x1^2 - x2^2"] {
        let f = Poly::parse(s, &names)?;
        let space = gram_space_pruned(&f, 2)?;
        println!("{s}: basis of {} monomials, {} free Gram entries", space.basis().len(), space.dim());
        match psd_feasible_point(&space, &opts)? {
            PsdOutcome::Feasible(approx) => {
                let cert = rationalize_and_certify(&space, &approx)?;
                for (c, q) in &cert.squares {
                    println!("  {} * ({})^2", format_rational(c), q.display(&names));
                }
                println!("  exact: {}", cert.verify() && cert.residual_zero());
            }
            PsdOutcome::Infeasible { max_min_eigenvalue, .. } => {
                println!("  no PSD Gram form; best minimum eigenvalue {max_min_eigenvalue:.4}");
            }
        }
    }
    Ok(())
}
