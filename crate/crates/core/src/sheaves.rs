//! Ext groups between line bundles and twisted structure sheaves of
//! exceptional curves on blow-ups of `P^2`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{h_projective_space, CohomologyEngine, CohomologyError, CohomologyVector};
use crate::geometry::Space;
use crate::lattice::{DivisorClass, LatticeError, SurfaceLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SheafError {
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("torsion sheaves are only supported on blow-ups of P^2")]
    TorsionOffBlowup,
    #[error("curve index {0} is out of range")]
    BadCurve(usize),
    #[error("E{0} has an infinitely near point on it, so it is not a (-1)-curve")]
    NotLeaf(usize),
    #[error("supports E{0} and E{1} meet")]
    IntersectingSupports(usize, usize),
}

/// `O(D)` or `O_{E_i}(k)`; curve indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafDescriptor {
    LineBundle(DivisorClass),
    ExceptionalTwist { curve: usize, k: i64 },
}

impl SheafDescriptor {
    pub fn line_bundle(coeffs: Vec<i64>) -> Self {
        SheafDescriptor::LineBundle(DivisorClass(coeffs))
    }

    pub fn as_line_bundle(&self) -> Option<&DivisorClass> {
        match self {
            SheafDescriptor::LineBundle(d) => Some(d),
            SheafDescriptor::ExceptionalTwist { .. } => None,
        }
    }

    pub fn describe(&self, space: &Space) -> String {
        match self {
            SheafDescriptor::LineBundle(d) => format!("O({})", space.format_class(d)),
            SheafDescriptor::ExceptionalTwist { curve, k } if *k == 0 => format!("O_E{}", curve + 1),
            SheafDescriptor::ExceptionalTwist { curve, k } => format!("O_E{}({k})", curve + 1),
        }
    }
}

/// `dim Ext^i(A, B)` for `i = 0..=dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExtVector {
    pub dims: Vec<u64>,
}

impl ExtVector {
    pub fn get(&self, i: usize) -> u64 {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn euler(&self) -> i64 {
        CohomologyVector::new(self.dims.clone()).euler()
    }

    pub fn top_positive_degree(&self) -> Option<usize> {
        (1..self.dims.len()).rev().find(|&i| self.dims[i] != 0)
    }
}

impl From<CohomologyVector> for ExtVector {
    fn from(v: CohomologyVector) -> Self {
        ExtVector { dims: v.h }
    }
}

pub fn restriction_degree(lattice: &SurfaceLattice, d: &DivisorClass, c: &DivisorClass) -> Result<i64, LatticeError> {
    lattice.intersect(d, c)
}

fn curve_class(lattice: &SurfaceLattice, curve: usize) -> Result<DivisorClass, SheafError> {
    if curve + 1 >= lattice.rank() {
        return Err(SheafError::BadCurve(curve));
    }
    Ok(DivisorClass::basis(lattice.rank(), curve + 1))
}

/// `A (x) O(D)`, using `O(D)|_E = O_{P^1}(D.E)`.
pub fn twist(lattice: &SurfaceLattice, a: &SheafDescriptor, d: &DivisorClass) -> Result<SheafDescriptor, SheafError> {
    Ok(match a {
        SheafDescriptor::LineBundle(l) => SheafDescriptor::LineBundle(l.add(d)?),
        SheafDescriptor::ExceptionalTwist { curve, k } => {
            let e = curve_class(lattice, *curve)?;
            SheafDescriptor::ExceptionalTwist { curve: *curve, k: k + lattice.intersect(d, &e)? }
        }
    })
}

/// Twist of any descriptor on any space by a line bundle.
pub fn twist_on(space: &Space, a: &SheafDescriptor, d: &DivisorClass) -> Result<SheafDescriptor, SheafError> {
    match (a, space) {
        (SheafDescriptor::LineBundle(l), _) => Ok(SheafDescriptor::LineBundle(l.add(d)?)),
        (_, Space::Blowup(s)) => twist(s.lattice(), a, d),
        _ => Err(SheafError::TorsionOffBlowup),
    }
}

fn p1(d: i64) -> [u64; 2] {
    let h = h_projective_space(1, d);
    [h.h[0], h.h[1]]
}

fn check_curve(space: &Space, curve: usize) -> Result<(), SheafError> {
    let Space::Blowup(s) = space else { return Err(SheafError::TorsionOffBlowup) };
    if curve >= s.num_centers() {
        return Err(SheafError::BadCurve(curve));
    }
    if s.config().has_children(curve) {
        return Err(SheafError::NotLeaf(curve));
    }
    Ok(())
}

pub fn ext_dims(engine: &CohomologyEngine, a: &SheafDescriptor, b: &SheafDescriptor) -> Result<ExtVector, SheafError> {
    use SheafDescriptor::*;
    let space = engine.space();
    match (a, b) {
        (LineBundle(l1), LineBundle(l2)) => Ok(engine.h(&l2.sub(l1)?)?.into()),
        (LineBundle(l), ExceptionalTwist { curve, k }) => {
            check_curve(space, *curve)?;
            let lat = space.surface_lattice().expect("blow-up");
            let e = curve_class(&lat, *curve)?;
            let [h0, h1] = p1(k - lat.intersect(l, &e)?);
            Ok(ExtVector { dims: vec![h0, h1, 0] })
        }
        (ExceptionalTwist { curve, k }, LineBundle(l)) => {
            check_curve(space, *curve)?;
            let lat = space.surface_lattice().expect("blow-up");
            let e = curve_class(&lat, *curve)?;
            let deg = k - lat.intersect(l, &e)? + lat.intersect(lat.canonical(), &e)?;
            let [h0, h1] = p1(deg);
            Ok(ExtVector { dims: vec![0, h1, h0] })
        }
        (ExceptionalTwist { curve: c1, k: a1 }, ExceptionalTwist { curve: c2, k: b2 }) => {
            check_curve(space, *c1)?;
            check_curve(space, *c2)?;
            if c1 != c2 {
                let lat = space.surface_lattice().expect("blow-up");
                let (e1, e2) = (curve_class(&lat, *c1)?, curve_class(&lat, *c2)?);
                if lat.intersect(&e1, &e2)? != 0 {
                    return Err(SheafError::IntersectingSupports(*c1, *c2));
                }
                return Ok(ExtVector { dims: vec![0, 0, 0] });
            }
            let [x0, x1] = p1(b2 - a1);
            let [y0, y1] = p1(b2 - a1 - 1);
            Ok(ExtVector { dims: vec![x0, x1 + y0, y1] })
        }
    }
}
