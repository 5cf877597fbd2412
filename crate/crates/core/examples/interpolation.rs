//! Cohomology of line bundles on blow-ups of P^2 by exact interpolation.
//!
//! Compares general, collinear and infinitely near configurations of three
//! points on the class `H - E1 - E2 - E3`.

use gentime::cohomology::{h0_interpolation, h_line_bundle_surface};
use gentime::geometry::{collinear_b3, general_blowup, BlowupSurface, Center, PointConfiguration};

fn show(name: &str, s: &BlowupSurface) {
    let rep = s.config().genericity_report();
    println!("{name}: generic = {}", rep.all());
    for label in ["H-E1-E2-E3", "2H-E1-E2-E3", "-3H+E1", "3H-2E1-E2-E3"] {
        let d = s.lattice().parse_class(label).unwrap();
        println!("  h({label}) = {}", h_line_bundle_surface(s, &d).unwrap());
    }
}

fn main() {
    show("three general points", &general_blowup(3));
    show("three collinear points", &collinear_b3());

    let tower = PointConfiguration::new(vec![
        Center::proper(1, 0, 0),
        Center::infinitesimal(0, 1, 0),
        Center::proper(0, 1, 0),
    ])
    .unwrap();
    show("a point with a tangent direction", &BlowupSurface::new(tower));

    // Conics through five points of a general configuration.
    let five = general_blowup(5);
    println!("conics through five points: {}", h0_interpolation(five.config(), 2, &[1; 5]).unwrap());
}
