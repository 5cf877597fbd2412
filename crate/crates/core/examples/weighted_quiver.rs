//! Full collections on weighted projective stacks, and the Hom table shared by
//! `P(1,1,4)` and the Hirzebruch surface `F4`.

use gentime::presets;
use gentime::tilting::{generation_time_report, hom_matrix, AnalysisOptions};

fn main() {
    for w in [vec![1, 1, 4], vec![1, 2, 3], vec![1, 1, 1, 5]] {
        let c = presets::weighted_full(&w).unwrap();
        let r = generation_time_report(&c, &AnalysisOptions::default()).unwrap();
        println!("P{w:?}: {} members, i0 = {}, generation time {}", c.len(), r.i0, r.hochschild_dim);
    }

    let weighted = hom_matrix(&presets::weighted_embedding(4, 1).unwrap()).unwrap();
    let surface = hom_matrix(&presets::hirzebruch(4, 1).unwrap()).unwrap();
    println!("Hom on P(1,1,4):  {weighted:?}");
    println!("Hom on F4:        {surface:?}");
    assert_eq!(weighted, surface);
}
