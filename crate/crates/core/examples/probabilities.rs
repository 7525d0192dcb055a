//! Joint and marginal probabilities for every compound state.

use spin_compound::{joint_probabilities, CompoundState, Direction, SpinHalf, Subsystem};

fn main() -> spin_compound::Result<()> {
    let axis = Direction::new(1.1, 0.3)?;
    let c1 = Direction::new(0.5, 1.0)?;
    let c2 = Direction::new(2.4, 4.0)?;

    for state in CompoundState::all(axis) {
        let q = joint_probabilities(state, c1, c2)?;
        let joint: Vec<String> = q.iter().map(|(o, p)| format!("P({o}) = {p:.6}")).collect();
        println!("{state}\n  {}", joint.join("  "));
        for sub in [Subsystem::First, Subsystem::Second] {
            println!("  {sub:?} up: {:.6}", q.marginal(sub, SpinHalf::Up));
        }
    }

    let parallel = joint_probabilities(CompoundState::singlet(axis), c1, c1)?;
    println!(
        "singlet with parallel detectors: {}",
        serde_json::to_string(&parallel).unwrap()
    );
    Ok(())
}
