//! Singlet and triplet amplitudes from the closed forms, checked against the
//! two-stage expansion through the z-axis.

use spin_compound::{
    compound_amplitude, compound_amplitude_oracle, CompoundState, Direction, JointOutcome,
};

fn main() -> spin_compound::Result<()> {
    let axis = Direction::new(0.9, 0.4)?;
    let c1 = Direction::new(1.3, 2.2)?;
    let c2 = Direction::new(2.0, 5.1)?;

    for state in CompoundState::all(axis) {
        println!("{state}");
        let mut worst = 0.0f64;
        for out in JointOutcome::ALL {
            let closed = compound_amplitude(state, out, c1, c2);
            let chain = compound_amplitude_oracle(state, out, c1, c2);
            worst = worst.max((closed - chain).norm());
            println!(
                "  {out}  {:+.9}{:+.9}i  |psi|^2 = {:.9}",
                closed.re,
                closed.im,
                closed.norm_sqr()
            );
        }
        println!("  closed form vs expansion chain: max difference {worst:.2e}");
    }
    Ok(())
}
