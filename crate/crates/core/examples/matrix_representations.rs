//! The same expectation value from the 4-, 3- and 1-dimensional representations.

use spin_compound::matrix::{representation_3d, representation_4d};
use spin_compound::{
    correlation_values, observable_matrix_3d, scalar_representation, CompoundState, Direction,
    TripletProjection,
};

fn main() -> spin_compound::Result<()> {
    let c1 = Direction::new(0.6, 0.2)?;
    let c2 = Direction::new(1.7, 2.9)?;
    let r = correlation_values();

    let op = observable_matrix_3d(&r, c1, c2);
    println!("3x3 correlation operator:");
    for row in op.rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
            .collect();
        println!("  {}", cells.join("  "));
    }

    let state = CompoundState::triplet(TripletProjection::Zero, Direction::new(0.8, 1.0)?);
    let four = representation_4d(state, &r, c1, c2);
    let three = representation_3d(state, &r, c1, c2).expect("triplet has a 3-dim form");
    let scalar = scalar_representation(state, &r, c1, c2);
    println!("{state}");
    println!("  4-dim  {:.15}", four.expectation()?);
    println!("  3-dim  {:.15}", three.expectation()?);
    println!("  scalar {:.15}", scalar.expectation()?);
    println!(
        "state vector JSON: {}",
        serde_json::to_string(&three.state).unwrap()
    );
    Ok(())
}
