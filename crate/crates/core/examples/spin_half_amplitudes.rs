//! Single spin-1/2 transition amplitudes between two directions, under both
//! phase conventions.

use spin_compound::{spin_half_amplitude, Direction, PhaseConvention, SpinHalf};

fn main() -> spin_compound::Result<()> {
    let d = Direction::from_degrees(90.0, 0.0)?;
    let e = Direction::from_degrees(90.0, 90.0)?;
    println!("from {d} to {e}");
    for conv in PhaseConvention::ALL {
        println!("{} convention:", conv.name());
        for from in SpinHalf::ALL {
            for to in SpinHalf::ALL {
                let a = spin_half_amplitude(conv, from, d, to, e);
                println!(
                    "  {} -> {}  amplitude {:+.6}{:+.6}i  probability {:.6}",
                    from.symbol(),
                    to.symbol(),
                    a.re,
                    a.im,
                    a.norm_sqr()
                );
            }
        }
    }
    Ok(())
}
