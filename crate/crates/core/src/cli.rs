//! Configuration documents, command dispatch and report rendering.
//!
//! Exit codes: 0 success, 1 verified mismatch or failed check, 2 usage or
//! configuration error, 3 internal integrity error.

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cohomology::{h_hirzebruch, h_toric_oracle, CohomologyEngine, CohomologyError, InterpolationEngine};
use crate::geometry::{
    general_blowup, hirzebruch_toric, rank7_toric_preset, torus_fixed_b3, Center, GeometryError,
    PointConfiguration, ProjectiveBundleSpace, Rational, Space, ToricModel, ToricSurfaceFan,
    WeightedProjectiveSpace,
};
use crate::lattice::DivisorClass;
use crate::presets;
use crate::sheaves::{SheafDescriptor, SheafError};
use crate::tilting::{
    anticanonical_diagnostics, check_pullback, check_strong_exceptional, check_strongly_cyclic, ext_table,
    generation_time_report, zero_degree_classes, AnalysisOptions, Collection, TiltingError, DEFAULT_P_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTEGRITY: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}", .0.join("\n"))]
    Config(Vec<String>),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Integrity(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Integrity(_) | CliError::Io(_) => EXIT_INTEGRITY,
        }
    }
}

impl From<TiltingError> for CliError {
    fn from(e: TiltingError) -> Self {
        match e {
            TiltingError::Integrity(_)
            | TiltingError::Cohomology(CohomologyError::NegativeH1 { .. })
            | TiltingError::Cohomology(CohomologyError::OracleBoundary(..))
            | TiltingError::Cohomology(CohomologyError::Overflow) => CliError::Integrity(e.to_string()),
            TiltingError::Sheaf(SheafError::Cohomology(ref c))
                if matches!(c, CohomologyError::NegativeH1 { .. } | CohomologyError::OracleBoundary(..)) =>
            {
                CliError::Integrity(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        TiltingError::from(e).into()
    }
}

// ---------------------------------------------------------------------------
// configuration

/// Exact rational written as `"p/q"` (or `"p"`), `q > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatString(pub Rational);

impl Serialize for RatString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if *self.0.denom() == 1 {
            s.serialize_str(&self.0.numer().to_string())
        } else {
            s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl<'de> Deserialize<'de> for RatString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map(RatString).map_err(serde::de::Error::custom)
    }
}

pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let bad = || format!("invalid rational {text:?}, expected \"p/q\" with q > 0");
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
        None => (text.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if q <= 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<[RatString; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tangent: Option<[RatString; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    BlowupP2 { centers: Vec<CenterSpec> },
    ProjBundle { m: u32, n: u32 },
    Weighted { weights: Vec<u32> },
    Toric { rays: Vec<[i64; 2]> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MemberSpec {
    LineBundle(Vec<i64>),
    ExceptionalTwist { curve: usize, k: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default = "default_p_cap")]
    pub p_cap: u32,
    #[serde(default)]
    pub anticanonical_smooth_member: bool,
}

fn default_p_cap() -> u32 {
    DEFAULT_P_CAP
}

impl Default for OptionsSpec {
    fn default() -> Self {
        OptionsSpec { p_cap: DEFAULT_P_CAP, anticanonical_smooth_member: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub space: SpaceSpec,
    #[serde(default)]
    pub collection: Vec<MemberSpec>,
    #[serde(default)]
    pub options: OptionsSpec,
    /// Extra classes for the `cohomology` command.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<Vec<i64>>,
}

fn geometry_path(e: &GeometryError) -> String {
    match e {
        GeometryError::ZeroPoint(i)
        | GeometryError::ZeroTangent(i)
        | GeometryError::Overflow(i)
        | GeometryError::DuplicatePoint(_, i)
        | GeometryError::BadParent { index: i, .. }
        | GeometryError::DeepTower { index: i, .. } => format!("space.blowup_p2.centers[{i}]"),
        GeometryError::NonPrimitive { index: i, .. }
        | GeometryError::DuplicateRay(_, i)
        | GeometryError::NotSmooth { index: i, .. } => format!("space.toric.rays[{i}]"),
        GeometryError::TooFewRays(_) | GeometryError::Orientation(_) | GeometryError::NoLift(_) => {
            "space.toric.rays".into()
        }
        GeometryError::BundleBase => "space.proj_bundle.n".into(),
        GeometryError::BadWeights => "space.weighted.weights".into(),
    }
}

impl ConfigDocument {
    pub fn build_space(&self) -> Result<Space, CliError> {
        let err = |e: GeometryError| CliError::Config(vec![format!("{}: {e}", geometry_path(&e))]);
        Ok(match &self.space {
            SpaceSpec::BlowupP2 { centers } => {
                let mut out = Vec::with_capacity(centers.len());
                for (i, c) in centers.iter().enumerate() {
                    let path = format!("space.blowup_p2.centers[{i}]");
                    let center = match (&c.coords, c.parent, &c.tangent) {
                        (Some(x), None, None) => Center::Proper([x[0].0, x[1].0, x[2].0]),
                        (None, Some(parent), Some(t)) => Center::Infinitesimal { parent, tangent: [t[0].0, t[1].0] },
                        (Some(_), _, Some(_)) => {
                            return Err(CliError::Config(vec![format!("{path}: a proper point takes no tangent")]))
                        }
                        (Some(_), Some(_), None) => {
                            return Err(CliError::Config(vec![format!("{path}: a proper point takes no parent")]))
                        }
                        _ => {
                            return Err(CliError::Config(vec![format!(
                                "{path}: expected either coords, or parent together with tangent"
                            )]))
                        }
                    };
                    out.push(center);
                }
                Space::Blowup(crate::geometry::build_blowup_surface(PointConfiguration::new(out).map_err(err)?))
            }
            SpaceSpec::ProjBundle { m, n } => Space::ProjBundle(ProjectiveBundleSpace::new(*m, *n).map_err(err)?),
            SpaceSpec::Weighted { weights } => {
                Space::Weighted(WeightedProjectiveSpace::new(weights.clone()).map_err(err)?)
            }
            SpaceSpec::Toric { rays } => {
                let fan = ToricSurfaceFan::new(rays.clone()).map_err(err)?;
                let lattice = fan.ray_lattice();
                let r = fan.num_rays();
                let classes = (0..r).map(|i| DivisorClass::basis(r, i)).collect();
                Space::Toric(ToricModel::new(fan, lattice, classes, None).map_err(err)?)
            }
        })
    }

    pub fn members(&self) -> Vec<SheafDescriptor> {
        self.collection
            .iter()
            .map(|m| match m {
                MemberSpec::LineBundle(v) => SheafDescriptor::LineBundle(DivisorClass(v.clone())),
                MemberSpec::ExceptionalTwist { curve, k } => SheafDescriptor::ExceptionalTwist { curve: *curve, k: *k },
            })
            .collect()
    }

    pub fn analysis_options(&self) -> AnalysisOptions {
        AnalysisOptions {
            p_cap: self.options.p_cap,
            anticanonical_smooth_member: self.options.anticanonical_smooth_member,
        }
    }

    pub fn build_collection(&self) -> Result<Collection, CliError> {
        let space = self.build_space()?;
        let rank = space.class_rank();
        for (i, m) in self.collection.iter().enumerate() {
            if let MemberSpec::LineBundle(v) = m {
                if v.len() != rank {
                    return Err(CliError::Config(vec![format!(
                        "collection[{i}].line_bundle: expected {rank} coefficients, got {}",
                        v.len()
                    )]));
                }
            }
        }
        Collection::new(space, self.members()).map_err(|e| match e {
            TiltingError::Empty => CliError::Config(vec!["collection: must not be empty".into()]),
            TiltingError::Sheaf(s) => CliError::Config(vec![format!("collection: {s}")]),
            other => other.into(),
        })
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<ConfigDocument, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: ConfigDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let msg = if path == "." || path.is_empty() {
            inner.to_string()
        } else {
            format!("{path}: {inner}")
        };
        CliError::Config(vec![msg])
    })?;
    let space = doc.build_space()?;
    let rank = space.class_rank();
    let mut errors = Vec::new();
    for (i, m) in doc.collection.iter().enumerate() {
        match m {
            MemberSpec::LineBundle(v) if v.len() != rank => {
                errors.push(format!("collection[{i}].line_bundle: expected {rank} coefficients, got {}", v.len()))
            }
            MemberSpec::ExceptionalTwist { curve, .. } => match &space {
                Space::Blowup(s) if *curve < s.num_centers() => {
                    if s.config().has_children(*curve) {
                        errors.push(format!("collection[{i}].exceptional_twist.curve: {}", SheafError::NotLeaf(*curve)));
                    }
                }
                Space::Blowup(_) => errors.push(format!(
                    "collection[{i}].exceptional_twist.curve: index {curve} out of range"
                )),
                _ => errors.push(format!("collection[{i}].exceptional_twist: {}", SheafError::TorsionOffBlowup)),
            },
            _ => {}
        }
    }
    for (i, c) in doc.classes.iter().enumerate() {
        if c.len() != rank {
            errors.push(format!("classes[{i}]: expected {rank} coefficients, got {}", c.len()));
        }
    }
    if errors.is_empty() {
        Ok(doc)
    } else {
        Err(CliError::Config(errors))
    }
}

// ---------------------------------------------------------------------------
// reports

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub config_sha256: Option<String>,
    pub engine_version: String,
    pub engines: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    pub result: Value,
    pub provenance: Provenance,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn provenance(config_text: Option<&str>, machine: bool) -> Provenance {
    let mut engines = BTreeMap::new();
    engines.insert("blowup".into(), "interpolation, Serre duality, Riemann-Roch".into());
    engines.insert("toric".into(), "character arc counting".into());
    engines.insert("proj_bundle".into(), "pushforward to P^n".into());
    engines.insert("weighted".into(), "weighted monomial count".into());
    let timestamp = if machine {
        None
    } else {
        std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).ok().map(|d| d.as_secs())
    };
    Provenance {
        config_sha256: config_text.map(|t| sha256_hex(t.as_bytes())),
        engine_version: env!("CARGO_PKG_VERSION").to_string(),
        engines,
        timestamp,
    }
}

// ---------------------------------------------------------------------------
// oracle comparison

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub space: String,
    pub range: i64,
    pub classes: u64,
    pub discrepancies: u64,
    pub first_discrepancy: Option<String>,
}

/// Odometer over integer vectors in `[-range, range]^len`.
pub fn for_each_in_box(len: usize, range: i64, mut f: impl FnMut(&[i64]) -> bool) {
    let mut v = vec![-range; len];
    loop {
        if !f(&v) {
            return;
        }
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            if v[i] < range {
                v[i] += 1;
                break;
            }
            v[i] = -range;
            i += 1;
        }
    }
}

/// Every engine that can evaluate classes on a toric surface, paired with the
/// character-counting oracle.
pub struct OracleComparator {
    pub label: String,
    pub model: ToricModel,
    interp: Option<InterpolationEngine>,
    hirzebruch: Option<u32>,
    f1_blowup: Option<InterpolationEngine>,
}

impl OracleComparator {
    /// `space` is `f<m>`, `rank7` or `b3`.
    pub fn new(space: &str) -> Result<Self, CliError> {
        let (model, label) = oracle_model(space)?;
        let interp = model.blowup.as_ref().map(|s| InterpolationEngine::new(s.config()));
        let hirzebruch = label.strip_prefix('F').and_then(|m| m.parse::<u32>().ok());
        // F1 is also the blow-up of P^2 at one point, with S = E1 and H = H - E1.
        let f1_blowup = (hirzebruch == Some(1)).then(|| InterpolationEngine::new(general_blowup(1).config()));
        Ok(OracleComparator { label, model, interp, hirzebruch, f1_blowup })
    }

    pub fn rank(&self) -> usize {
        self.model.lattice.rank()
    }

    /// Returns a description of the first disagreement on `class`, if any.
    pub fn check(&self, class: &DivisorClass) -> Result<Option<String>, CliError> {
        let lat = &self.model.lattice;
        let name = lat.format_class(class);
        let oracle = h_toric_oracle(&self.model.fan, &self.model.lift(class))?;
        let dual_class = lat.serre_dual(class).map_err(CohomologyError::from)?;
        let dual = h_toric_oracle(&self.model.fan, &self.model.lift(&dual_class))?;
        let chi = lat.euler_char(class).map_err(CohomologyError::from)?;
        if oracle.reversed() != dual {
            return Ok(Some(format!("{name}: Serre duality {oracle} vs {dual}")));
        }
        if oracle.euler() != chi {
            return Ok(Some(format!("{name}: Euler characteristic {} vs {chi}", oracle.euler())));
        }
        if let Some(engine) = &self.interp {
            let v = engine.cohomology(lat, class)?;
            if v != oracle {
                return Ok(Some(format!("{name}: interpolation {v} vs oracle {oracle}")));
            }
        }
        if let Some(m) = self.hirzebruch {
            let v = h_hirzebruch(m, class.0[0], class.0[1]);
            if v != oracle {
                return Ok(Some(format!("{name}: pushforward {v} vs oracle {oracle}")));
            }
        }
        if let Some(engine) = &self.f1_blowup {
            let (a, b) = (class.0[0], class.0[1]);
            let v = engine.cohomology(&crate::lattice::SurfaceLattice::blowup(1), &DivisorClass(vec![b, a - b]))?;
            if v != oracle {
                return Ok(Some(format!("{name}: blow-up model {v} vs oracle {oracle}")));
            }
        }
        Ok(None)
    }
}

/// Compares every available engine with the toric oracle on all classes with
/// coefficients in `[-range, range]`, together with Serre duality and the
/// Euler characteristic on the oracle side.
pub fn oracle_compare(space: &str, range: i64) -> Result<OracleSummary, CliError> {
    let cmp = OracleComparator::new(space)?;
    let mut summary =
        OracleSummary { space: cmp.label.clone(), range, classes: 0, discrepancies: 0, first_discrepancy: None };
    let mut failure: Option<CliError> = None;
    for_each_in_box(cmp.rank(), range, |coeffs| match cmp.check(&DivisorClass(coeffs.to_vec())) {
        Ok(found) => {
            summary.classes += 1;
            if let Some(msg) = found {
                summary.discrepancies += 1;
                summary.first_discrepancy.get_or_insert(msg);
            }
            true
        }
        Err(e) => {
            failure = Some(e);
            false
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(summary),
    }
}

fn oracle_model(space: &str) -> Result<(ToricModel, String), CliError> {
    let s = space.to_ascii_lowercase();
    if let Some(m) = s.strip_prefix('f').and_then(|m| m.parse::<u32>().ok()) {
        return Ok((hirzebruch_toric(m), format!("F{m}")));
    }
    match s.as_str() {
        "rank7" | "rank7-toric" => Ok((rank7_toric_preset(), "rank7".into())),
        "b3" | "torus-fixed-b3" => Ok((torus_fixed_b3(), "b3".into())),
        _ => Err(CliError::Usage(format!("unknown oracle space {space:?}; expected f<m>, rank7 or b3"))),
    }
}

// ---------------------------------------------------------------------------
// presets

pub const PRESET_NAMES: [&str; 7] = ["t1", "t2", "delpezzo7", "rank7-toric", "hirzebruch", "weighted", "quiver-f4"];

fn expected_table(name: &str) -> Option<&'static str> {
    Some(match name {
        "t1" => include_str!("../presets/t1.json"),
        "t2" => include_str!("../presets/t2.json"),
        "delpezzo7" => include_str!("../presets/delpezzo7.json"),
        "rank7-toric" => include_str!("../presets/rank7-toric.json"),
        "hirzebruch" => include_str!("../presets/hirzebruch.json"),
        "weighted" => include_str!("../presets/weighted.json"),
        "quiver-f4" => include_str!("../presets/quiver-f4.json"),
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresetRow {
    pub key: String,
    pub expected: Value,
    pub computed: Value,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresetOutcome {
    pub preset: String,
    pub claim: String,
    pub rows: Vec<PresetRow>,
    pub all_match: bool,
}

fn smooth() -> AnalysisOptions {
    AnalysisOptions { anticanonical_smooth_member: true, ..Default::default() }
}

fn assert_generic(c: &Collection) -> Result<(), CliError> {
    if let Space::Blowup(s) = c.space() {
        let rep = s.config().genericity_report();
        if !rep.all() {
            return Err(CliError::Integrity(format!("preset points fail genericity: {rep:?}")));
        }
    }
    Ok(())
}

fn class_labels(c: &Collection, classes: &[DivisorClass]) -> Value {
    json!(classes.iter().map(|d| c.space().format_class(d)).collect::<Vec<_>>())
}

/// Computes the rows of a named experiment without comparing them.
pub fn compute_preset(name: &str) -> Result<BTreeMap<String, Value>, CliError> {
    let mut rows = BTreeMap::new();
    match name {
        "t1" => {
            for t in 0..=5usize {
                let c = presets::t1(presets::blowup_for(t, false))?;
                assert_generic(&c)?;
                let r = generation_time_report(&c, &smooth())?;
                rows.insert(
                    format!("t={t}"),
                    json!({"strong_exceptional": r.strong_exceptional, "i0": r.i0, "generation_time": r.hochschild_dim}),
                );
            }
            let c = presets::t1(presets::blowup_for(3, true))?;
            let r = generation_time_report(&c, &smooth())?;
            rows.insert(
                "t=3 collinear".into(),
                json!({"strong_exceptional": r.strong_exceptional, "i0": r.i0, "generation_time": r.hochschild_dim}),
            );
            let b11 = general_blowup(11);
            if !b11.config().genericity_report().all() {
                return Err(CliError::Integrity("eleven preset points fail genericity".into()));
            }
            let d = anticanonical_diagnostics(&Space::Blowup(b11))?;
            rows.insert(
                "t=11 anticanonical".into(),
                json!({"h1_anticanonical_nonzero": d.h_anticanonical.get(1) > 0, "lower_bound": d.lower_bound}),
            );
        }
        "t2" => {
            for t in 1..=5usize {
                let c = presets::t2(presets::blowup_for(t, false))?;
                assert_generic(&c)?;
                let r = generation_time_report(&c, &smooth())?;
                rows.insert(
                    format!("t={t}"),
                    json!({"strong_exceptional": r.strong_exceptional, "generation_time": r.hochschild_dim}),
                );
            }
        }
        "delpezzo7" => {
            let c = presets::del_pezzo()?;
            assert_generic(&c)?;
            let r = generation_time_report(&c, &smooth())?;
            rows.insert(
                "T3".into(),
                json!({
                    "strong_exceptional": r.strong_exceptional,
                    "generation_time": r.hochschild_dim,
                    "pullback": r.pullback.is_true(),
                    "zero_degree_classes": class_labels(&c, &zero_degree_classes(&c)?),
                }),
            );
        }
        "rank7-toric" => {
            for (key, c) in [("interpolation", presets::rank7()?), ("toric oracle", presets::rank7_toric()?)] {
                let r = generation_time_report(&c, &smooth())?;
                rows.insert(
                    key.into(),
                    json!({
                        "strong_exceptional": r.strong_exceptional,
                        "i0": r.i0,
                        "generation_time": r.hochschild_dim,
                        "strongly_cyclic": r.strongly_cyclic,
                        "pullback": r.pullback.is_true(),
                        "zero_degree_classes": class_labels(&c, &zero_degree_classes(&c)?),
                    }),
                );
            }
        }
        "hirzebruch" => {
            for m in 1..=6u32 {
                for n in 1..=3u32 {
                    let c = presets::hirzebruch(m, n)?;
                    let r = generation_time_report(&c, &smooth())?;
                    let d = anticanonical_diagnostics(c.space())?;
                    rows.insert(
                        format!("m={m},n={n}"),
                        json!({
                            "strong_exceptional": r.strong_exceptional,
                            "generation_time": r.hochschild_dim,
                            "top_anticanonical_nonzero": d.h_anticanonical.get(n as usize) > 0,
                        }),
                    );
                }
            }
        }
        "weighted" => {
            for w in [vec![1u32, 1, 4], vec![1, 2, 3], vec![1, 1, 1, 5]] {
                let c = presets::weighted_full(&w)?;
                let r = generation_time_report(&c, &smooth())?;
                let key = format!("P({})", w.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
                rows.insert(
                    key,
                    json!({"strong_exceptional": r.strong_exceptional, "i0": r.i0, "generation_time": r.hochschild_dim}),
                );
            }
        }
        "quiver-f4" => {
            let w = presets::weighted_embedding(4, 1)?;
            rows.insert("P(1,1,4)".into(), json!({"hom_matrix": crate::tilting::hom_matrix(&w)?}));
            let x = presets::hirzebruch(4, 1)?;
            rows.insert("X_{4,1}".into(), json!({"hom_matrix": crate::tilting::hom_matrix(&x)?}));
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown preset {other:?}; expected one of {}",
                PRESET_NAMES.join(", ")
            )))
        }
    }
    Ok(rows)
}

/// Runs a named experiment and compares it with its committed expected table.
pub fn reproduce_preset(name: &str) -> Result<PresetOutcome, CliError> {
    let text = expected_table(name)
        .ok_or_else(|| CliError::Usage(format!("unknown preset {name:?}; expected one of {}", PRESET_NAMES.join(", "))))?;
    let table: Value = serde_json::from_str(text).map_err(|e| CliError::Integrity(format!("preset table: {e}")))?;
    let computed = compute_preset(name)?;
    let expected_rows = table["rows"].as_object().cloned().unwrap_or_default();
    let mut rows = Vec::new();
    for (key, expected) in expected_rows {
        let got = computed.get(&key).cloned().unwrap_or(Value::Null);
        let mut shown = serde_json::Map::new();
        let mut matches = true;
        if let Some(fields) = expected.as_object() {
            for (field, want) in fields {
                let have = got.get(field).cloned().unwrap_or(Value::Null);
                matches &= &have == want;
                shown.insert(field.clone(), have);
            }
        }
        rows.push(PresetRow { key, expected, computed: Value::Object(shown), matches });
    }
    let all_match = rows.iter().all(|r| r.matches);
    Ok(PresetOutcome {
        preset: name.into(),
        claim: table["claim"].as_str().unwrap_or_default().to_string(),
        rows,
        all_match,
    })
}

// ---------------------------------------------------------------------------
// command line

#[derive(Debug, Parser)]
#[command(name = "gentime", version, about = "Exact line-bundle cohomology and generation time of tilting collections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON configuration document.
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    /// Emit a machine-readable report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Coefficient range for oracle sweeps.
    #[arg(long, global = true, default_value_t = 3)]
    pub range: i64,
    /// Number of canonical twists examined by the pullback sweep.
    #[arg(long = "p-cap", global = true)]
    pub p_cap: Option<u32>,
    #[arg(long, global = true)]
    pub verbose: bool,
    /// Space for oracle sweeps: f1..f6, rank7 or b3.
    #[arg(long, global = true)]
    pub space: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology vectors of the listed classes (or of the collection members).
    Cohomology,
    /// Full Ext table of the collection.
    Ext,
    /// Strong exceptional, strongly cyclic and pullback checks.
    Check,
    /// Generation-time report.
    Gentime,
    /// Compare the engines with the toric oracle.
    OracleCompare,
    /// Run a named experiment and compare with its expected table.
    Reproduce { preset: String },
}

struct Loaded {
    doc: ConfigDocument,
    text: String,
}

fn load(cli: &Cli) -> Result<Loaded, CliError> {
    let path = cli.config.as_ref().ok_or_else(|| CliError::Usage("--config <path> is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut doc = parse_config(&text)?;
    if let Some(cap) = cli.p_cap {
        doc.options.p_cap = cap;
    }
    Ok(Loaded { doc, text })
}

fn emit(out: &mut dyn Write, cli: &Cli, command: &str, config: Option<&str>, result: Value, human: String) -> Result<(), CliError> {
    if cli.json {
        let doc = ReportDocument { command: command.into(), result, provenance: provenance(config, true) };
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("report serializes"))?;
    } else {
        write!(out, "{human}")?;
        if cli.verbose {
            let p = provenance(config, false);
            writeln!(out, "engine {} config {}", p.engine_version, p.config_sha256.unwrap_or_else(|| "-".into()))?;
        }
    }
    Ok(())
}

fn fmt_matrix<T: std::fmt::Display>(m: &[Vec<T>]) -> String {
    m.iter()
        .map(|r| r.iter().map(|x| format!("{x:>4}")).collect::<Vec<_>>().join(""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Cohomology => {
            let Loaded { doc, text } = load(cli)?;
            let space = doc.build_space()?;
            let engine = CohomologyEngine::new(space);
            let classes: Vec<DivisorClass> = if doc.classes.is_empty() {
                doc.members().iter().filter_map(|m| m.as_line_bundle().cloned()).collect()
            } else {
                doc.classes.iter().map(|c| DivisorClass(c.clone())).collect()
            };
            let mut rows = Vec::new();
            let mut human = String::new();
            for c in &classes {
                let h = engine.h(c)?;
                let label = engine.space().format_class(c);
                human.push_str(&format!("{label:<24} {h}\n"));
                rows.push(json!({"class": c, "label": label, "h": h}));
            }
            emit(out, cli, "cohomology", Some(&text), json!(rows), human)?;
            Ok(EXIT_OK)
        }
        Command::Ext => {
            let Loaded { doc, text } = load(cli)?;
            let c = doc.build_collection()?;
            let table = ext_table(&c)?;
            let names = c.member_names();
            let mut human = String::new();
            for (i, row) in table.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    human.push_str(&format!("Ext({}, {}) = {:?}\n", names[i], names[j], e.dims));
                }
            }
            emit(out, cli, "ext", Some(&text), json!({"members": names, "ext_table": table}), human)?;
            Ok(EXIT_OK)
        }
        Command::Check => {
            let Loaded { doc, text } = load(cli)?;
            let c = doc.build_collection()?;
            let strong = check_strong_exceptional(&c)?;
            let cyclic = check_strongly_cyclic(&c)?;
            let pullback = check_pullback(&c, &doc.analysis_options())?;
            let human = format!(
                "strong exceptional: {}\nstrongly cyclic:    {}\npullback:           {}\n",
                strong.holds,
                cyclic.holds,
                serde_json::to_string(&pullback).expect("serializes")
            );
            let failed = !strong.holds || !cyclic.holds || matches!(pullback, crate::tilting::PullbackVerdict::False { .. });
            emit(
                out,
                cli,
                "check",
                Some(&text),
                json!({"strong_exceptional": strong, "strongly_cyclic": cyclic, "pullback": pullback}),
                human,
            )?;
            Ok(if failed { EXIT_MISMATCH } else { EXIT_OK })
        }
        Command::Gentime => {
            let Loaded { doc, text } = load(cli)?;
            let c = doc.build_collection()?;
            if !c.is_line_bundles() && cli.verbose {
                writeln!(err, "note: collection contains torsion sheaves")?;
            }
            let r = generation_time_report(&c, &doc.analysis_options())?;
            if !r.strong_exceptional {
                writeln!(err, "warning: collection is not strong exceptional: {:?}", r.strong_exceptional_witness)?;
            }
            let human = format!(
                "members: {}\nstrong exceptional: {}\ni0: {}\ndim: {}\nhochschild dimension: {} (equals generation time: {})\nbounds: {} <= generation time <= {}\nstrongly cyclic: {}\npullback: {}\nhom matrix:\n{}\neuler matrix:\n{}\n",
                r.members.join(", "),
                r.strong_exceptional,
                r.i0,
                r.dim_space,
                r.hochschild_dim,
                r.equality_claim,
                r.generation_time_bounds.lower,
                r.generation_time_bounds.upper,
                r.strongly_cyclic,
                serde_json::to_string(&r.pullback).expect("serializes"),
                fmt_matrix(&r.hom_matrix),
                fmt_matrix(&r.euler_matrix),
            );
            emit(out, cli, "gentime", Some(&text), serde_json::to_value(&r).expect("serializes"), human)?;
            Ok(EXIT_OK)
        }
        Command::OracleCompare => {
            let space = cli.space.as_deref().ok_or_else(|| CliError::Usage("--space is required".into()))?;
            let s = oracle_compare(space, cli.range)?;
            let mut human = format!("{}: {} classes in [-{r},{r}], {} discrepancies\n", s.space, s.classes, s.discrepancies, r = s.range);
            if let Some(d) = &s.first_discrepancy {
                human.push_str(&format!("first: {d}\n"));
            }
            let code = if s.discrepancies == 0 { EXIT_OK } else { EXIT_MISMATCH };
            emit(out, cli, "oracle-compare", None, serde_json::to_value(&s).expect("serializes"), human)?;
            Ok(code)
        }
        Command::Reproduce { preset } => {
            let o = reproduce_preset(preset)?;
            let mut human = format!("{}: {}\n", o.preset, o.claim);
            for r in &o.rows {
                human.push_str(&format!(
                    "  [{}] {:<20} expected {} computed {}\n",
                    if r.matches { "ok" } else { "MISMATCH" },
                    r.key,
                    r.expected,
                    r.computed
                ));
            }
            let code = if o.all_match { EXIT_OK } else { EXIT_MISMATCH };
            emit(out, cli, "reproduce", None, serde_json::to_value(&o).expect("serializes"), human)?;
            Ok(code)
        }
    }
}

/// Parses `argv` (including the program name) and runs one command.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
