//! Cross-module pipelines: JSON round trips and certificate reuse.

use equisos::moments::{AtomicMeasure, MeasureJson};
use equisos::orbitspace::{invariant_generators, orbit_image_description, procesi_schwarz_matrix, InvariantGenerators};
use equisos::poly::{Poly, VarNames};
use equisos::rational::{q, qf};
use equisos::sosgram::{equivariant_sos_decompose, sos_certificate, PsdOptions};
use equisos::symmetry::{groups, GroupJson};

fn x(s: &str) -> Poly {
    Poly::parse(s, &VarNames::x(2)).unwrap()
}

#[test]
fn group_and_measure_json_round_trip() {
    let d4 = groups::dihedral4();
    let text = serde_json::to_string(&GroupJson::from_group(&d4)).unwrap();
    let back = serde_json::from_str::<GroupJson>(&text).unwrap().build().unwrap();
    assert_eq!(back.order(), 8);
    let mu = AtomicMeasure::new(vec![(vec![q(1), qf(-2, 3)], qf(1, 7))]).unwrap();
    let mj: MeasureJson = serde_json::from_str(&serde_json::to_string(&mu.to_json()).unwrap()).unwrap();
    assert_eq!(AtomicMeasure::try_from(&mj).unwrap(), mu);
}

#[test]
fn certificate_json_shape() {
    let c = equivariant_sos_decompose(&x("x1^2+x2^2"), &groups::swap(), 1, &PsdOptions::default()).unwrap();
    let v = serde_json::to_value(c.to_json()).unwrap();
    assert_eq!(v["residual_zero"], true);
    for s in v["squares"].as_array().unwrap() {
        let p: Poly = serde_json::from_value(s["poly"].clone()).unwrap();
        assert_eq!(p.nvars(), 2);
        assert!(s["semi_invariant_type"].is_string());
    }
    let plain = sos_certificate(&x("x1^2+x2^2"), 1, &PsdOptions::default()).unwrap();
    assert!(serde_json::to_value(plain.to_json()).unwrap()["squares"][0].get("semi_invariant_type").is_none());
}

#[test]
fn supplied_generators_give_the_same_image() {
    let sw = groups::swap();
    // power sums instead of elementary symmetric functions
    let gens = InvariantGenerators::from_polys(vec![x("x1+x2"), x("x1^2+x2^2")], &sw).unwrap();
    let desc = orbit_image_description(&procesi_schwarz_matrix(&gens, &sw).unwrap()).unwrap();
    let computed = invariant_generators(&sw).unwrap();
    let grid = [q(-2), qf(-1, 2), q(0), qf(1, 3), q(3)];
    for a in &grid {
        for b in &grid {
            let z = gens.image(&[a.clone(), b.clone()]).unwrap();
            assert!(desc.contains(&z).unwrap());
            assert!(computed.image(&[a.clone(), b.clone()]).is_ok());
        }
    }
    // p2 < p1^2 / 2 is not attained
    assert!(!desc.contains(&[q(2), q(1)]).unwrap());
}
