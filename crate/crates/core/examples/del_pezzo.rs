//! A pullback tilting collection on the cubic surface and its canonical
//! diagnostics.

use gentime::presets;
use gentime::tilting::{
    generation_time_report, rational_antieffective_check, zero_degree_classes, AnalysisOptions,
};

fn main() {
    let c = presets::del_pezzo().unwrap();
    let opts = AnalysisOptions { anticanonical_smooth_member: true, ..Default::default() };
    let r = generation_time_report(&c, &opts).unwrap();
    println!("members: {}", r.members.join(", "));
    println!("strongly cyclic {}  generation time {}", r.strongly_cyclic, r.hochschild_dim);
    println!("pullback {}", serde_json::to_string(&r.pullback).unwrap());

    let zero: Vec<String> = zero_degree_classes(&c).unwrap().iter().map(|d| c.space().format_class(d)).collect();
    println!("differences of anticanonical degree zero: {}", zero.join(", "));

    let lat = c.space().surface_lattice().unwrap();
    for label in ["E1-H", "-H", "E1+E2-2H"] {
        let d = lat.parse_class(label).unwrap();
        let v = rational_antieffective_check(c.engine(), &d, true).unwrap();
        println!("  D = {label:<10} {v:?}");
    }
}
