//! The two standard collections on blow-ups of P^2 at up to five points.

use gentime::presets::{blowup_for, t1, t2};
use gentime::tilting::{generation_time_report, AnalysisOptions, CollectionReport};

fn line(name: &str, r: &CollectionReport) {
    println!(
        "{name:<16} strong exceptional {:<5} i0 {}  generation time {}  pullback {}",
        r.strong_exceptional,
        r.i0,
        r.hochschild_dim,
        serde_json::to_string(&r.pullback).unwrap()
    );
}

fn main() {
    let opts = AnalysisOptions { anticanonical_smooth_member: true, ..Default::default() };
    for t in 0..=5 {
        line(&format!("T1, t={t}"), &generation_time_report(&t1(blowup_for(t, false)).unwrap(), &opts).unwrap());
    }
    line("T1, collinear", &generation_time_report(&t1(blowup_for(3, true)).unwrap(), &opts).unwrap());
    for t in 1..=5 {
        line(&format!("T2, t={t}"), &generation_time_report(&t2(blowup_for(t, false)).unwrap(), &opts).unwrap());
    }
}
