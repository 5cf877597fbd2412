//! Generation time of the standard collection on `P(O + O(m))` over `P^n`.

use gentime::presets;
use gentime::tilting::{anticanonical_diagnostics, generation_time_report, AnalysisOptions};

fn main() {
    let opts = AnalysisOptions::default();
    println!("   m  n | i0  gen  h^n(-K)");
    for n in 1..=3 {
        for m in 1..=6 {
            let c = presets::hirzebruch(m, n).unwrap();
            let r = generation_time_report(&c, &opts).unwrap();
            let d = anticanonical_diagnostics(c.space()).unwrap();
            println!(
                "  {m:>2} {n:>2} | {:>2} {:>4} {:>8}",
                r.i0,
                r.hochschild_dim,
                d.h_anticanonical.get(n as usize)
            );
        }
    }
}
