//! Singlet correlations and the CHSH combination, at the textbook settings and by
//! grid search.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

use spin_compound::{chsh, chsh_scan, singlet_correlation, CompoundState, Direction};

fn main() -> spin_compound::Result<()> {
    let singlet = CompoundState::singlet(Direction::Z);
    let d = Direction::coplanar;

    for deg in [0.0, 45.0, 90.0, 135.0, 180.0] {
        let e = singlet_correlation(d(0.0)?, d(f64::to_radians(deg))?).value;
        println!("E(0, {deg:>5.1} deg) = {e:+.6}");
    }

    let s = chsh(
        singlet,
        d(FRAC_PI_2)?,
        d(0.0)?,
        d(FRAC_PI_4)?,
        d(3.0 * FRAC_PI_4)?,
    );
    println!(
        "S at (90, 0; 45, 135) deg = {s:+.12}  (2*sqrt(2) = {:.12})",
        2.0 * SQRT_2
    );

    let scan = chsh_scan(singlet, 32)?;
    let deg = scan.settings.map(f64::to_degrees);
    println!(
        "grid of 32 angles per setting: best S = {:+.12} at {deg:?} deg",
        scan.value
    );
    Ok(())
}
