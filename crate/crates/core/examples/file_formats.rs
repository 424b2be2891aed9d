//! Round-trips the JSON file formats and prints the schema for measures.

use equisos::moments::{AtomicMeasure, MeasureJson};
use equisos::poly::{Poly, VarNames};
use equisos::rational::{q, qf};
use equisos::symmetry::{groups, GroupJson};

fn main() -> anyhow::Result<()> {
    let f = Poly::parse("1/2*x1^2 - 3*x1*x2 + 1", &VarNames::x(2))?;
    let text = serde_json::to_string(&f)?;
    println!("poly: {text}");
    assert_eq!(serde_json::from_str::<Poly>(&text)?, f);

    let g = GroupJson::from_group(&groups::dihedral4());
    println!("group: {}", serde_json::to_string(&g)?);
    assert_eq!(g.build()?.order(), 8);

    let mu = AtomicMeasure::new(vec![(vec![q(1), qf(-1, 3)], qf(2, 5))])?;
    let mj = mu.to_json();
    println!("measure: {}", serde_json::to_string(&mj)?);
    assert_eq!(AtomicMeasure::try_from(&serde_json::from_str::<MeasureJson>(&serde_json::to_string(&mj)?)?)?, mu);

    println!("{}", serde_json::to_string_pretty(&equisos::schema::schema("measure").expect("known schema"))?);
    Ok(())
}
