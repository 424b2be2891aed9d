//! Orbit spaces: invariant generators, the Procesi–Schwarz matrix in the
//! generators, certified principal minors and the image description.

use equisos::orbitspace::{invariant_generators, minor_sos_certificates, orbit_image_description, procesi_schwarz_matrix};
use equisos::poly::VarNames;
use equisos::symmetry::groups;

fn main() -> anyhow::Result<()> {
    for (name, g) in [("D4", groups::dihedral4()), ("swap", groups::swap()), ("reflection in R^3", groups::reflect_last(3))] {
        let n = g.nvars();
        let gens = invariant_generators(&g)?;
        let m = gens.len();
        println!("{name}:");
        for (i, p) in gens.gens.iter().enumerate() {
            println!("  u{} = {}", i + 1, p.display(&VarNames::x(n)));
        }
        let ps = procesi_schwarz_matrix(&gens, &g)?;
        if let Some(mw) = &ps.m_in_generators {
            for row in mw {
                println!("  M: [{}]", row.iter().map(|e| e.display(&VarNames::u(m)).to_string()).collect::<Vec<_>>().join(", "));
            }
        }
        let certs = minor_sos_certificates(&ps);
        println!("  {} principal minors, all certified: {}", certs.len(), certs.values().all(|c| c.verify()));
        let desc = orbit_image_description(&ps)?;
        let ineqs: Vec<String> = desc.inequalities.iter().map(|p| format!("{} >= 0", p.display(&VarNames::u(m)))).collect();
        println!("  image: {{ {} }}", ineqs.join(", "));
    }
    Ok(())
}
