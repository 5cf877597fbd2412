//! Collection-level analysis.
//!
//! For a collection `E_0, ..., E_n` on a space `X` of dimension `d`:
//! * `i0` is the largest `i` with `Ext^i(E_a, E_b (x) w^v) != 0` for some pair,
//! * the Hochschild dimension of the endomorphism algebra is `d + i0`, which is
//!   the generation time when `X` is proper over a perfect field,
//! * pullback means `Ext^l(E_a, E_b (x) w^p) = 0` for all `l != 0`, `p <= 0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{CohomologyEngine, CohomologyError, CohomologyVector};
use crate::geometry::Space;
use crate::lattice::{DivisorClass, LatticeError, SurfaceLattice};
use crate::sheaves::{ext_dims, twist_on, ExtVector, SheafDescriptor, SheafError};

pub const DEFAULT_P_CAP: u32 = 25;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TiltingError {
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("collection is empty")]
    Empty,
    #[error("member {index}: class has {got} coefficients, expected {expected}")]
    ClassLength { index: usize, expected: usize, got: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("integrity check failed: {0}")]
    Integrity(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub p_cap: u32,
    /// The anticanonical system contains a smooth connected curve.
    pub anticanonical_smooth_member: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { p_cap: DEFAULT_P_CAP, anticanonical_smooth_member: false }
    }
}

/// An ordered list of sheaves on one space, with a cohomology cache.
pub struct Collection {
    engine: CohomologyEngine,
    members: Vec<SheafDescriptor>,
}

impl Clone for Collection {
    fn clone(&self) -> Self {
        Collection { engine: CohomologyEngine::new(self.space().clone()), members: self.members.clone() }
    }
}

impl std::fmt::Debug for Collection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Collection").field("space", &self.space().kind()).field("members", &self.members).finish()
    }
}

impl Collection {
    pub fn new(space: Space, members: Vec<SheafDescriptor>) -> Result<Self, TiltingError> {
        if members.is_empty() {
            return Err(TiltingError::Empty);
        }
        let rank = space.class_rank();
        for (index, m) in members.iter().enumerate() {
            match m {
                SheafDescriptor::LineBundle(d) if d.len() != rank => {
                    return Err(TiltingError::ClassLength { index, expected: rank, got: d.len() })
                }
                SheafDescriptor::ExceptionalTwist { curve, .. } => match &space {
                    Space::Blowup(s) => {
                        if *curve >= s.num_centers() {
                            return Err(SheafError::BadCurve(*curve).into());
                        }
                        if s.config().has_children(*curve) {
                            return Err(SheafError::NotLeaf(*curve).into());
                        }
                    }
                    _ => return Err(SheafError::TorsionOffBlowup.into()),
                },
                _ => {}
            }
        }
        Ok(Collection { engine: CohomologyEngine::new(space), members })
    }

    /// Collection of line bundles given by coefficient vectors.
    pub fn line_bundles(space: Space, classes: Vec<DivisorClass>) -> Result<Self, TiltingError> {
        Collection::new(space, classes.into_iter().map(SheafDescriptor::LineBundle).collect())
    }

    pub fn space(&self) -> &Space {
        self.engine.space()
    }

    pub fn engine(&self) -> &CohomologyEngine {
        &self.engine
    }

    pub fn members(&self) -> &[SheafDescriptor] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_line_bundles(&self) -> bool {
        self.members.iter().all(|m| m.as_line_bundle().is_some())
    }

    pub fn member_names(&self) -> Vec<String> {
        self.members.iter().map(|m| m.describe(self.space())).collect()
    }

    /// The same members on the same space, in a new order.
    pub fn permuted(&self, order: &[usize]) -> Result<Self, TiltingError> {
        Collection::new(self.space().clone(), order.iter().map(|&i| self.members[i].clone()).collect())
    }

    /// Every member tensored with `O(d)`.
    pub fn twisted(&self, d: &DivisorClass) -> Result<Self, TiltingError> {
        let members = self
            .members
            .iter()
            .map(|m| twist_on(self.space(), m, d))
            .collect::<Result<Vec<_>, _>>()?;
        Collection::new(self.space().clone(), members)
    }

    pub fn anticanonical(&self) -> Result<DivisorClass, TiltingError> {
        Ok(self.space().canonical().neg()?)
    }

    pub fn ext(&self, a: &SheafDescriptor, b: &SheafDescriptor) -> Result<ExtVector, TiltingError> {
        Ok(ext_dims(&self.engine, a, b)?)
    }

    /// `Ext^*(E_a, E_b (x) (w^v)^q)`.
    pub fn ext_twisted(&self, a: usize, b: usize, q: i64) -> Result<ExtVector, TiltingError> {
        let shift = self.anticanonical()?.scale(q)?;
        let target = twist_on(self.space(), &self.members[b], &shift)?;
        self.ext(&self.members[a], &target)
    }
}

/// A nonzero group that should vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub from: usize,
    pub to: usize,
    pub degree: usize,
    pub dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Violation>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    fn fail(from: usize, to: usize, degree: usize, dim: u64) -> Self {
        Verdict { holds: false, witness: Some(Violation { from, to, degree, dim }) }
    }
}

pub fn check_strong_exceptional(c: &Collection) -> Result<Verdict, TiltingError> {
    let n = c.len();
    for i in 0..n {
        let e = c.ext_twisted(i, i, 0)?;
        if e.get(0) != 1 {
            return Ok(Verdict::fail(i, i, 0, e.get(0)));
        }
        if let Some(l) = e.top_positive_degree() {
            return Ok(Verdict::fail(i, i, l, e.get(l)));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let back = c.ext_twisted(j, i, 0)?;
            if let Some(l) = (0..back.dims.len()).find(|&l| back.dims[l] != 0) {
                return Ok(Verdict::fail(j, i, l, back.get(l)));
            }
            let fwd = c.ext_twisted(i, j, 0)?;
            if let Some(l) = fwd.top_positive_degree() {
                return Ok(Verdict::fail(i, j, l, fwd.get(l)));
            }
        }
    }
    Ok(Verdict::pass())
}

pub fn compute_i0(c: &Collection) -> Result<usize, TiltingError> {
    let n = c.len();
    let mut i0 = 0;
    for a in 0..n {
        for b in 0..n {
            if let Some(l) = c.ext_twisted(a, b, 1)?.top_positive_degree() {
                i0 = i0.max(l);
            }
        }
    }
    Ok(i0)
}

pub fn check_strongly_cyclic(c: &Collection) -> Result<Verdict, TiltingError> {
    let strong = check_strong_exceptional(c)?;
    if !strong.holds {
        return Ok(strong);
    }
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let e = c.ext_twisted(j, i, 1)?;
            if let Some(l) = e.top_positive_degree() {
                return Ok(Verdict::fail(j, i, l, e.get(l)));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Outcome of the sweep over `p = 0, -1, -2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PullbackVerdict {
    /// Vanishing checked through `p = certified_at`, and certified for all smaller `p`.
    True { certified_at: i64, certificate: String },
    False { p: i64, violation: Violation },
    Unresolved { p_reached: i64 },
}

impl PullbackVerdict {
    pub fn is_true(&self) -> bool {
        matches!(self, PullbackVerdict::True { .. })
    }
}

fn pair_differences(c: &Collection) -> Option<Vec<DivisorClass>> {
    let classes: Vec<&DivisorClass> = c.members.iter().map(|m| m.as_line_bundle()).collect::<Option<_>>()?;
    let mut out = Vec::new();
    for a in &classes {
        for b in &classes {
            out.push(b.sub(a).ok()?);
        }
    }
    Some(out)
}

fn persistence_certificate(c: &Collection, q: i64, surface_ok: bool) -> Result<Option<String>, TiltingError> {
    let Some(diffs) = pair_differences(c) else { return Ok(None) };
    let anti = c.anticanonical()?;
    match c.space() {
        Space::ProjBundle(p) => {
            if i64::from(p.m) <= i64::from(p.n) + 1 {
                return Ok(Some(format!(
                    "m <= n + 1: the smallest twist b - a m of every pushforward summand is nondecreasing in -p (here m = {}, n = {})",
                    p.m, p.n
                )));
            }
            Ok(None)
        }
        Space::Weighted(w) => {
            let shift = q * w.weight_sum();
            if diffs.iter().all(|d| d.0[0] + shift > -w.weight_sum()) {
                return Ok(Some("all twisted degrees exceed -sum(a_i), so top cohomology vanishes from here on".into()));
            }
            Ok(None)
        }
        Space::Blowup(_) | Space::Toric(_) => {
            if !surface_ok {
                return Ok(None);
            }
            let lat = c.space().surface_lattice().expect("surface");
            let k = lat.canonical().clone();
            for d in &diffs {
                let dq = d.add(&anti.scale(q)?)?;
                if !c.engine.h(&dq)?.higher_vanishes() {
                    return Ok(None);
                }
                if lat.intersect(&k.sub(&dq)?, &k)? <= 0 {
                    return Ok(None);
                }
            }
            Ok(Some(
                "every difference D has no higher cohomology and (K - D).K > 0 with K^2 >= 1 and a smooth anticanonical curve".into(),
            ))
        }
    }
}

/// On a toric surface the boundary curves span the cone of curves, so `-K`
/// is nef exactly when it meets each of them nonnegatively. A smooth
/// anticanonical curve forces this.
fn anticanonical_meets_boundary(space: &Space, lat: &SurfaceLattice, anti: &DivisorClass) -> Result<bool, TiltingError> {
    if let Space::Toric(model) = space {
        for ray in &model.ray_classes {
            if lat.intersect(anti, ray)? < 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn check_pullback(c: &Collection, options: &AnalysisOptions) -> Result<PullbackVerdict, TiltingError> {
    let n = c.len();
    let surface_ok = match c.space() {
        Space::Blowup(_) | Space::Toric(_) => {
            let lat = c.space().surface_lattice().expect("surface");
            let anti = c.anticanonical()?;
            options.anticanonical_smooth_member
                && c.engine.h(&anti)?.get(0) > 0
                && lat.self_intersection(&anti)? >= 1
                && anticanonical_meets_boundary(c.space(), &lat, &anti)?
        }
        _ => false,
    };
    for q in 0..=i64::from(options.p_cap) {
        for a in 0..n {
            for b in 0..n {
                let e = c.ext_twisted(a, b, q)?;
                if let Some(l) = e.top_positive_degree() {
                    return Ok(PullbackVerdict::False {
                        p: -q,
                        violation: Violation { from: a, to: b, degree: l, dim: e.get(l) },
                    });
                }
            }
        }
        if let Some(certificate) = persistence_certificate(c, q, surface_ok)? {
            return Ok(PullbackVerdict::True { certified_at: -q, certificate });
        }
    }
    Ok(PullbackVerdict::Unresolved { p_reached: -i64::from(options.p_cap) })
}

pub fn ext_table(c: &Collection) -> Result<Vec<Vec<ExtVector>>, TiltingError> {
    (0..c.len())
        .map(|i| (0..c.len()).map(|j| c.ext_twisted(i, j, 0)).collect())
        .collect()
}

pub fn euler_matrix(c: &Collection) -> Result<Vec<Vec<i64>>, TiltingError> {
    Ok(ext_table(c)?.iter().map(|row| row.iter().map(ExtVector::euler).collect()).collect())
}

pub fn hom_matrix(c: &Collection) -> Result<Vec<Vec<u64>>, TiltingError> {
    Ok(ext_table(c)?.iter().map(|row| row.iter().map(|e| e.get(0)).collect()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: usize,
    pub upper: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionReport {
    pub space: String,
    pub members: Vec<String>,
    pub strong_exceptional: bool,
    pub strong_exceptional_witness: Option<Violation>,
    pub i0: usize,
    pub dim_space: usize,
    pub hochschild_dim: usize,
    /// Generation time equals `hochschild_dim`; every built-in space is proper
    /// over a field of characteristic zero.
    pub equality_claim: bool,
    pub generation_time_bounds: Bounds,
    pub strongly_cyclic: bool,
    pub pullback: PullbackVerdict,
    pub ext_table: Vec<Vec<ExtVector>>,
    pub hom_matrix: Vec<Vec<u64>>,
    pub euler_matrix: Vec<Vec<i64>>,
}

impl CollectionReport {
    /// Generation time, when the equality claim applies.
    pub fn generation_time(&self) -> Option<usize> {
        self.equality_claim.then_some(self.hochschild_dim)
    }
}

pub fn generation_time_report(c: &Collection, options: &AnalysisOptions) -> Result<CollectionReport, TiltingError> {
    let strong = check_strong_exceptional(c)?;
    let i0 = compute_i0(c)?;
    let dim = c.space().dim();
    let table = ext_table(c)?;
    let cyclic = check_strongly_cyclic(c)?;
    let pullback = check_pullback(c, options)?;
    let report = CollectionReport {
        space: c.space().kind().to_string(),
        members: c.member_names(),
        strong_exceptional: strong.holds,
        strong_exceptional_witness: strong.witness,
        i0,
        dim_space: dim,
        hochschild_dim: dim + i0,
        equality_claim: true,
        generation_time_bounds: Bounds { lower: dim, upper: 2 * dim },
        strongly_cyclic: cyclic.holds,
        pullback,
        hom_matrix: table.iter().map(|r| r.iter().map(|e| e.get(0)).collect()).collect(),
        euler_matrix: table.iter().map(|r| r.iter().map(ExtVector::euler).collect()).collect(),
        ext_table: table,
    };
    if report.hochschild_dim > report.generation_time_bounds.upper {
        return Err(TiltingError::Integrity(format!("i0 = {i0} exceeds dim = {dim}")));
    }
    if report.i0 == 0 && report.strong_exceptional && !report.strongly_cyclic {
        return Err(TiltingError::Integrity("i0 = 0 but the collection is not strongly cyclic".into()));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnticanonicalDiagnostics {
    pub h_anticanonical: CohomologyVector,
    pub effective: bool,
    /// `2 dim - 1` when `w^v` has a section.
    pub upper_cap: Option<usize>,
    /// `dim + max{ i > 0 : h^i(w^v) != 0 }`, or `dim` when no such `i`; valid for
    /// tilting bundles.
    pub lower_bound: usize,
}

pub fn anticanonical_diagnostics(space: &Space) -> Result<AnticanonicalDiagnostics, TiltingError> {
    let engine = CohomologyEngine::new(space.clone());
    anticanonical_diagnostics_with(&engine)
}

pub fn anticanonical_diagnostics_with(engine: &CohomologyEngine) -> Result<AnticanonicalDiagnostics, TiltingError> {
    let space = engine.space();
    let anti = space.canonical().neg()?;
    let h = engine.h(&anti)?;
    let dim = space.dim();
    let effective = h.get(0) > 0;
    Ok(AnticanonicalDiagnostics {
        effective,
        upper_cap: effective.then_some(2 * dim - 1),
        lower_bound: dim + h.top_positive_degree().unwrap_or(0),
        h_anticanonical: h,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AntieffectiveVerdict {
    /// `O(D - K)` has no higher cohomology.
    VanishingCertified,
    NonvanishingCertified,
    Indeterminate,
}

/// Decides vanishing of `H^{>0}(O(D - K))` on a surface with an effective
/// anticanonical class containing a smooth connected curve `C`, assuming
/// `H^{>0}(O(D)) = 0`: it vanishes iff `(K - D).K >= 0` and `(K - D)|_C` is
/// nontrivial. The verdict is compared with a direct computation.
pub fn rational_antieffective_check(
    engine: &CohomologyEngine,
    d: &DivisorClass,
    smooth_member: bool,
) -> Result<AntieffectiveVerdict, TiltingError> {
    let space = engine.space();
    let lat = space
        .surface_lattice()
        .ok_or_else(|| TiltingError::Precondition("not a surface".into()))?;
    let k = lat.canonical().clone();
    let anti = k.neg()?;
    if engine.h(&anti)?.get(0) == 0 {
        return Err(TiltingError::Precondition("h0(-K) = 0".into()));
    }
    let verdict = if !smooth_member || !engine.h(d)?.higher_vanishes() {
        AntieffectiveVerdict::Indeterminate
    } else {
        let kd = k.sub(d)?;
        let kk = lat.intersect(&kd, &k)?;
        if kk < 0 {
            AntieffectiveVerdict::NonvanishingCertified
        } else if kk > 0 {
            // degree -(K - D).K on C is nonzero
            AntieffectiveVerdict::VanishingCertified
        } else {
            let trivial = if engine.h(&kd)?.get(0) > engine.h(&kd.add(&k)?)?.get(0) {
                true
            } else {
                // H^0(O_C(D - K)) = h0(D - K) - h0(D) since H^1(D) = 0
                let dk = d.sub(&k)?;
                engine.h(&dk)?.get(0) > engine.h(d)?.get(0)
            };
            if trivial {
                AntieffectiveVerdict::NonvanishingCertified
            } else {
                AntieffectiveVerdict::VanishingCertified
            }
        }
    };
    let direct = engine.h(&d.sub(&k)?)?.higher_vanishes();
    let consistent = match verdict {
        AntieffectiveVerdict::VanishingCertified => direct,
        AntieffectiveVerdict::NonvanishingCertified => !direct,
        AntieffectiveVerdict::Indeterminate => true,
    };
    if !consistent {
        return Err(TiltingError::Integrity(format!(
            "criterion says {:?} for D = {} but direct computation disagrees",
            verdict,
            lat.format_class(d)
        )));
    }
    Ok(verdict)
}

/// Distinct classes `D - K`, over differences `D = L_i - L_j` (`i != j`) of
/// line-bundle members, whose anticanonical degree is zero.
pub fn zero_degree_classes(c: &Collection) -> Result<Vec<DivisorClass>, TiltingError> {
    let lat = c
        .space()
        .surface_lattice()
        .ok_or_else(|| TiltingError::Precondition("not a surface".into()))?;
    let anti = lat.anticanonical();
    let classes: Vec<&DivisorClass> = c
        .members()
        .iter()
        .map(|m| m.as_line_bundle())
        .collect::<Option<_>>()
        .ok_or_else(|| TiltingError::Precondition("members must be line bundles".into()))?;
    let mut out: Vec<DivisorClass> = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate() {
            if i == j {
                continue;
            }
            let shifted = a.sub(b)?.add(&anti)?;
            if lat.intersect(&shifted, &anti)? == 0 && !out.contains(&shifted) {
                out.push(shifted);
            }
        }
    }
    out.sort();
    Ok(out)
}
