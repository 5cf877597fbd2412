//! Named spaces and collections.

use crate::geometry::{
    collinear_b3, general_blowup, rank7_toric_preset, BlowupSurface, ProjectiveBundleSpace, Space,
    WeightedProjectiveSpace,
};
use crate::lattice::DivisorClass;
use crate::sheaves::SheafDescriptor;
use crate::tilting::{Collection, TiltingError};

fn parse(surface: &BlowupSurface, labels: &[&str]) -> Vec<DivisorClass> {
    labels
        .iter()
        .map(|l| surface.lattice().parse_class(l).unwrap_or_else(|| panic!("bad preset label {l}")))
        .collect()
}

/// `O, O(E_1), ..., O(E_t), O(H), O(2H)`.
pub fn t1(surface: BlowupSurface) -> Result<Collection, TiltingError> {
    let t = surface.num_centers();
    let mut labels = vec!["0".to_string()];
    labels.extend((1..=t).map(|i| format!("E{i}")));
    labels.push("H".into());
    labels.push("2H".into());
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let classes = parse(&surface, &refs);
    Collection::line_bundles(Space::Blowup(surface), classes)
}

/// `O, O(H), O(2H), O_{E_1}, ..., O_{E_t}`.
pub fn t2(surface: BlowupSurface) -> Result<Collection, TiltingError> {
    let mut members: Vec<SheafDescriptor> =
        parse(&surface, &["0", "H", "2H"]).into_iter().map(SheafDescriptor::LineBundle).collect();
    members.extend((0..surface.num_centers()).map(|curve| SheafDescriptor::ExceptionalTwist { curve, k: 0 }));
    Collection::new(Space::Blowup(surface), members)
}

pub const DEL_PEZZO_COLLECTION: [&str; 9] = [
    "0",
    "E2",
    "E1",
    "H-E3-E4",
    "H-E3",
    "H-E4",
    "2H-E3-E4-E5-E6",
    "2H-E3-E4-E5",
    "2H-E3-E4-E6",
];

/// The nine-term collection on the blow-up at six general points.
pub fn del_pezzo() -> Result<Collection, TiltingError> {
    let s = general_blowup(6);
    let classes = parse(&s, &DEL_PEZZO_COLLECTION);
    Collection::line_bundles(Space::Blowup(s), classes)
}

pub const RANK7_COLLECTION: [&str; 9] = [
    "0",
    "E4",
    "E2",
    "H-E3-E5",
    "H-E3",
    "H-E5",
    "2H-E1-E3-E5-E6",
    "2H-E1-E3-E5",
    "2H-E3-E5-E6",
];

/// The nine-term collection on the Picard-rank-seven toric surface, computed
/// through interpolation on the blow-up model.
pub fn rank7() -> Result<Collection, TiltingError> {
    let model = rank7_toric_preset();
    let s = model.blowup.expect("blow-up model");
    let classes = parse(&s, &RANK7_COLLECTION);
    Collection::line_bundles(Space::Blowup(s), classes)
}

/// The same collection with cohomology from the toric oracle.
pub fn rank7_toric() -> Result<Collection, TiltingError> {
    let model = rank7_toric_preset();
    let s = model.blowup.clone().expect("blow-up model");
    let classes = parse(&s, &RANK7_COLLECTION);
    Collection::line_bundles(Space::Toric(model), classes)
}

/// `O, O(H), ..., O(nH), O(S+mH), ..., O(S+(m+n)H)` on `X_{m,n}`.
pub fn hirzebruch(m: u32, n: u32) -> Result<Collection, TiltingError> {
    let space = ProjectiveBundleSpace::new(m, n).map_err(|e| TiltingError::Precondition(e.to_string()))?;
    let (mi, ni) = (i64::from(m), i64::from(n));
    let mut classes: Vec<DivisorClass> = (0..=ni).map(|b| DivisorClass(vec![0, b])).collect();
    classes.extend((0..=ni).map(|b| DivisorClass(vec![1, mi + b])));
    Collection::line_bundles(Space::ProjBundle(space), classes)
}

/// `O, O(1), ..., O(sum a_i - 1)` on `P(a_0, ..., a_n)`.
pub fn weighted_full(weights: &[u32]) -> Result<Collection, TiltingError> {
    let space =
        WeightedProjectiveSpace::new(weights.to_vec()).map_err(|e| TiltingError::Precondition(e.to_string()))?;
    let classes = (0..space.weight_sum()).map(|k| DivisorClass(vec![k])).collect();
    Collection::line_bundles(Space::Weighted(space), classes)
}

/// `O, O(1), ..., O(n), O(m), ..., O(m+n)` on `P(1, ..., 1, m)` with `n+1` ones.
pub fn weighted_embedding(m: u32, n: u32) -> Result<Collection, TiltingError> {
    let mut weights = vec![1; n as usize + 1];
    weights.push(m);
    let space = WeightedProjectiveSpace::new(weights).map_err(|e| TiltingError::Precondition(e.to_string()))?;
    let (mi, ni) = (i64::from(m), i64::from(n));
    let mut classes: Vec<DivisorClass> = (0..=ni).map(|k| DivisorClass(vec![k])).collect();
    classes.extend((0..=ni).map(|k| DivisorClass(vec![mi + k])));
    Collection::line_bundles(Space::Weighted(space), classes)
}

/// Blow-up used for the `T_1`/`T_2` tables: general points, or three collinear ones.
pub fn blowup_for(t: usize, collinear: bool) -> BlowupSurface {
    if collinear {
        assert_eq!(t, 3, "the collinear preset has three points");
        collinear_b3()
    } else {
        general_blowup(t)
    }
}
