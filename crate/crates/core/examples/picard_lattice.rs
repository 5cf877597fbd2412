//! Intersection form, canonical class and Riemann-Roch on blow-ups of the plane.
//!
//! ```text
//! cargo run --example picard_lattice
//! ```

use gentime::lattice::SurfaceLattice;

fn main() {
    let lat = SurfaceLattice::blowup(6);
    let k = lat.canonical().clone();
    println!("basis: {}", lat.labels().join(", "));
    println!("K = {}   K^2 = {}", lat.format_class(&k), lat.self_intersection(&k).unwrap());

    for label in ["E1", "H-E1-E2", "2H-E1-E2-E3-E4-E5", "-K", "H"] {
        let d = if label == "-K" { lat.anticanonical() } else { lat.parse_class(label).unwrap() };
        let d2 = lat.self_intersection(&d).unwrap();
        let kd = lat.intersect(&k, &d).unwrap();
        let chi = lat.euler_char(&d).unwrap();
        let dual = lat.serre_dual(&d).unwrap();
        println!(
            "{:<20} D^2 = {d2:>2}  K.D = {kd:>2}  chi = {chi:>2}  K-D = {}",
            lat.format_class(&d),
            lat.format_class(&dual)
        );
    }
}
