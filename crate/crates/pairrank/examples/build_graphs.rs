//! Comparison-graph families and their gauge-fixed system matrices.
//!
//! ```bash
//! cargo run --example build_graphs
//! ```

use pairrank::graphs::{build_graph, system_matrices, unit_weights, GraphSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() -> pairrank::Result<()> {
    let mut rng = ChaCha12Rng::seed_from_u64(7);

    for spec in [
        GraphSpec::Complete { n: 8 },
        GraphSpec::Star { n: 8, center: 7 },
        GraphSpec::RandomRegular { n: 8, degree: 3 },
        GraphSpec::Wheel { n: 8 },
        GraphSpec::Hub {
            n: 8,
            hubs: 2,
            max_degree: 3,
        },
    ] {
        let g = build_graph(&spec, &mut rng)?;
        let degrees = g.degrees();
        println!(
            "{spec:?}\n  edges: {}, connected: {}, degrees: {degrees:?}",
            g.edge_count(),
            g.is_connected()
        );
    }

    // The row-stochastic matrices behind the least-squares solver, shown
    // on a 3-node path with the last object as reference.
    let path = build_graph(
        &GraphSpec::FromEdges {
            n: 3,
            edges: vec![
                pairrank::graphs::Edge::new(0, 1)?,
                pairrank::graphs::Edge::new(1, 2)?,
            ],
        },
        &mut rng,
    )?;
    let sm = system_matrices(&path, &unit_weights(&path), 2)?;
    println!("\npath 1-2-3, reference 3:");
    println!("M = {}", sm.m);
    println!("rows of M~ sum to zero: {:?}", {
        let ones = nalgebra::DVector::from_element(3, 1.0);
        (sm.m_tilde.clone() * ones).amax() < 1e-14
    });
    Ok(())
}
