//! Seeded sampling of joint outcomes, compared with the analytic values.

use spin_compound::{
    correlation, joint_probabilities, sample_batches, CompoundState, Direction, JointOutcome,
    TripletProjection,
};

fn main() -> spin_compound::Result<()> {
    let state = CompoundState::triplet(TripletProjection::Plus, Direction::new(0.5, 0.0)?);
    let c1 = Direction::new(1.0, 0.3)?;
    let c2 = Direction::new(2.0, 3.5)?;
    let n = 100_000;

    let q = joint_probabilities(state, c1, c2)?;
    let batches = sample_batches(state, c1, c2, n, 42, 4)?;
    for b in &batches {
        let freqs: Vec<String> = JointOutcome::ALL
            .iter()
            .map(|&o| format!("{o} {:.4}", b.frequency(o)))
            .collect();
        println!(
            "seed {:>2}: {}  E = {:+.4}",
            b.seed,
            freqs.join("  "),
            b.empirical_correlation
        );
    }
    let exact: Vec<String> = q.iter().map(|(o, p)| format!("{o} {p:.4}")).collect();
    println!(
        "exact:   {}  E = {:+.4}",
        exact.join("  "),
        correlation(state, c1, c2).value
    );
    println!("{}", serde_json::to_string_pretty(&batches[0]).unwrap());
    Ok(())
}
