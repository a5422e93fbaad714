//! Preference models: evaluate the link function, invert it, and sample
//! comparison outcomes.
//!
//! ```bash
//! cargo run --example preference_models
//! ```

use pairrank::models::PreferenceModel;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() -> pairrank::Result<()> {
    let thurstone = PreferenceModel::thurstone(0.4)?;
    let btl = PreferenceModel::btl();

    println!("P(prefer first | quality gap d):");
    println!("{:>6}  {:>10}  {:>10}", "d", "thurstone", "btl");
    for k in 0..=8 {
        let d = k as f64 * 0.25;
        println!(
            "{:>6.2}  {:>10.6}  {:>10.6}",
            d,
            thurstone.preference_prob(d)?,
            btl.preference_prob(d)?
        );
    }

    // The inverse link turns an empirical preference rate back into a
    // quality-difference estimate.
    let p = 0.75;
    println!("\ninverse link at p = {p}:");
    println!("  thurstone: {:+.6}", thurstone.inverse_preference(p)?);
    println!("  btl:       {:+.6} (= ln 3)", btl.inverse_preference(p)?);

    // Simulated workers: K ~ Bin(W, F(d)), deterministic under a seed.
    let mut rng = ChaCha12Rng::seed_from_u64(42);
    let (d, workers) = (0.3, 200);
    let wins = thurstone.sample_comparisons(d, workers, &mut rng)?;
    println!(
        "\n{workers} workers compared a pair with gap {d}: {wins} preferred the better object \
         (expected {:.1})",
        workers as f64 * thurstone.preference_prob(d)?
    );
    Ok(())
}
