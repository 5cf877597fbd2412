//! Line bundle cohomology on smooth complete toric surfaces by counting
//! characters, checked against interpolation on a blow-up model.

use gentime::cohomology::{h_toric_oracle, InterpolationEngine};
use gentime::geometry::{rank7_toric_preset, ToricSurfaceFan};
use gentime::lattice::DivisorClass;

fn main() {
    let f2 = ToricSurfaceFan::hirzebruch(2);
    println!("F2 rays {:?}", f2.rays());
    for a in [[0, 0, 0, 0], [0, 0, 0, -2], [-1, 0, -1, 0], [1, 1, 1, -3]] {
        println!("  D = sum {a:?} D_i  ->  {}", h_toric_oracle(&f2, &a).unwrap());
    }

    let model = rank7_toric_preset();
    let blowup = model.blowup.clone().unwrap();
    let interp = InterpolationEngine::new(blowup.config());
    println!("rank {} toric surface, basis {}", model.lattice.rank(), model.lattice.labels().join(" "));
    for i in 0..model.lattice.rank() {
        let class = DivisorClass::basis(7, i).scale(-2).unwrap();
        let oracle = h_toric_oracle(&model.fan, &model.lift(&class)).unwrap();
        let direct = interp.cohomology(&model.lattice, &class).unwrap();
        println!("  {:<8} oracle {oracle}  interpolation {direct}", model.lattice.format_class(&class));
        assert_eq!(oracle, direct);
    }
}
