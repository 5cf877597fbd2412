//! Ext groups between line bundles and twists of exceptional curves.

use gentime::cohomology::CohomologyEngine;
use gentime::geometry::{general_blowup, Space};
use gentime::sheaves::{ext_dims, SheafDescriptor};

fn main() {
    let s = general_blowup(2);
    let lat = s.lattice().clone();
    let engine = CohomologyEngine::new(Space::Blowup(s));
    let sheaves = [
        SheafDescriptor::LineBundle(lat.parse_class("0").unwrap()),
        SheafDescriptor::LineBundle(lat.parse_class("H").unwrap()),
        SheafDescriptor::LineBundle(lat.parse_class("E1").unwrap()),
        SheafDescriptor::ExceptionalTwist { curve: 0, k: 0 },
        SheafDescriptor::ExceptionalTwist { curve: 0, k: -1 },
        SheafDescriptor::ExceptionalTwist { curve: 1, k: 0 },
    ];
    for a in &sheaves {
        for b in &sheaves {
            let e = ext_dims(&engine, a, b).unwrap();
            println!(
                "Ext({}, {}) = {:?}",
                a.describe(engine.space()),
                b.describe(engine.space()),
                e.dims
            );
        }
    }
}
