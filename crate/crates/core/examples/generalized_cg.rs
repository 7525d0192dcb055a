//! Generalized Clebsch-Gordan coefficients along an arbitrary axis, and why only
//! one phase convention produces them.

use spin_compound::compounding::{cg_reduction_deviation, generalized_cg_deviation};
use spin_compound::{clebsch_gordan, generalized_cg, CgTable, Direction, PhaseConvention};

fn main() -> spin_compound::Result<()> {
    let a = Direction::new(0.7, 1.3)?;
    println!("axis {a}");
    println!(" s  M  out   generalized                 |gen|     standard");
    for (spin, m, out, _) in CgTable.entries() {
        let (s, mv) = (spin.value(), m.value());
        let g = generalized_cg(s, mv, out.m1, out.m2, a)?;
        let cg = clebsch_gordan(s, mv, out.m1, out.m2)?;
        println!(
            "{s:>2} {mv:>2}  {out}   {:+.6}{:+.6}i   {:.6}  {cg:+.6}",
            g.re,
            g.im,
            g.norm()
        );
    }

    println!();
    for conv in PhaseConvention::ALL {
        println!(
            "{:>8}: deviation along z = {:.1e}, along {a} = {:.3}",
            conv.name(),
            cg_reduction_deviation(conv),
            generalized_cg_deviation(conv, a)
        );
    }
    Ok(())
}
