//! The spaces: iterated blow-ups of `P^2` with explicit rational centers,
//! projective bundles `P(O + O(-m))` over `P^n`, weighted projective stacks and
//! smooth complete toric surfaces.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

use crate::lattice::{BidegreeClass, DivisorClass, SurfaceLattice, WeightedClass};
use crate::linalg::{rank, solve_integer, IntRow};

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("center {0}: homogeneous coordinates are all zero")]
    ZeroPoint(usize),
    #[error("centers {0} and {1} are the same point")]
    DuplicatePoint(usize, usize),
    #[error("center {index}: parent {parent} must be an earlier center")]
    BadParent { index: usize, parent: usize },
    #[error("center {index}: parent {parent} is itself infinitely near; only first-order points are supported")]
    DeepTower { index: usize, parent: usize },
    #[error("center {0}: tangent direction is zero")]
    ZeroTangent(usize),
    #[error("coordinate overflow at center {0}")]
    Overflow(usize),
    #[error("fan needs at least three rays, got {0}")]
    TooFewRays(usize),
    #[error("ray {index} = ({x}, {y}) is not primitive")]
    NonPrimitive { index: usize, x: i64, y: i64 },
    #[error("rays {0} and {1} coincide")]
    DuplicateRay(usize, usize),
    #[error("cone ({index}, {next}) has determinant {det}, expected 1")]
    NotSmooth { index: usize, next: usize, det: i64 },
    #[error("rays wind {0} times around the origin; expected one counterclockwise turn")]
    Orientation(i64),
    #[error("projective bundle needs n >= 1")]
    BundleBase,
    #[error("weights must be positive and at least two are needed")]
    BadWeights,
    #[error("class of ray {0} is not an integer combination of ray classes")]
    NoLift(usize),
}

/// A blow-up center: a proper point of `P^2`, or a point on the exceptional
/// curve of an earlier proper center.
///
/// For an infinitesimal center the tangent `[alpha : beta]` is read in the affine
/// chart `x_k = 1` of the parent, where `k` is the first nonzero coordinate of the
/// parent, and the two remaining coordinates are taken in increasing index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Center {
    Proper([Rational; 3]),
    Infinitesimal { parent: usize, tangent: [Rational; 2] },
}

impl Center {
    pub fn proper(x: i64, y: i64, z: i64) -> Self {
        Center::Proper([Rational::from(x), Rational::from(y), Rational::from(z)])
    }

    pub fn infinitesimal(parent: usize, alpha: i64, beta: i64) -> Self {
        Center::Infinitesimal { parent, tangent: [Rational::from(alpha), Rational::from(beta)] }
    }
}

fn primitive(values: &[Rational]) -> Option<Vec<i64>> {
    let mut lcm: i64 = 1;
    for v in values {
        lcm = lcm.checked_mul(*v.denom() / lcm.gcd(v.denom()))?;
    }
    let mut ints = Vec::with_capacity(values.len());
    for v in values {
        ints.push(v.numer().checked_mul(lcm / v.denom())?);
    }
    let g = ints.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return Some(ints);
    }
    Some(ints.into_iter().map(|x| x / g).collect())
}

/// Integer data of a validated center, used by the interpolation engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum IntCenter {
    Proper { point: [i64; 3], chart: usize },
    Infinitesimal { parent: usize, point: [i64; 3], chart: usize, tangent: [i64; 2] },
}

/// Ordered list of blow-up centers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    centers: Vec<Center>,
    resolved: Vec<IntCenter>,
}

impl PointConfiguration {
    pub fn new(centers: Vec<Center>) -> Result<Self, GeometryError> {
        let mut resolved: Vec<IntCenter> = Vec::with_capacity(centers.len());
        for (index, c) in centers.iter().enumerate() {
            match c {
                Center::Proper(coords) => {
                    if coords.iter().all(|x| x.is_zero()) {
                        return Err(GeometryError::ZeroPoint(index));
                    }
                    let p = primitive(coords).ok_or(GeometryError::Overflow(index))?;
                    let point = [p[0], p[1], p[2]];
                    for (other, rc) in resolved.iter().enumerate() {
                        if let IntCenter::Proper { point: q, .. } = rc {
                            if same_projective_point(&point, q) {
                                return Err(GeometryError::DuplicatePoint(other, index));
                            }
                        }
                    }
                    let chart = point.iter().position(|&x| x != 0).unwrap();
                    resolved.push(IntCenter::Proper { point, chart });
                }
                Center::Infinitesimal { parent, tangent } => {
                    let parent = *parent;
                    if parent >= index {
                        return Err(GeometryError::BadParent { index, parent });
                    }
                    let (point, chart) = match &resolved[parent] {
                        IntCenter::Proper { point, chart } => (*point, *chart),
                        IntCenter::Infinitesimal { .. } => {
                            return Err(GeometryError::DeepTower { index, parent })
                        }
                    };
                    if tangent.iter().all(|x| x.is_zero()) {
                        return Err(GeometryError::ZeroTangent(index));
                    }
                    let t = primitive(tangent).ok_or(GeometryError::Overflow(index))?;
                    let tangent = [t[0], t[1]];
                    for (other, rc) in resolved.iter().enumerate() {
                        if let IntCenter::Infinitesimal { parent: p2, tangent: t2, .. } = rc {
                            if *p2 == parent && tangent[0] * t2[1] == tangent[1] * t2[0] {
                                return Err(GeometryError::DuplicatePoint(other, index));
                            }
                        }
                    }
                    resolved.push(IntCenter::Infinitesimal { parent, point, chart, tangent });
                }
            }
        }
        Ok(PointConfiguration { centers, resolved })
    }

    pub fn centers(&self) -> &[Center] {
        &self.centers
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub(crate) fn resolved(&self) -> &[IntCenter] {
        &self.resolved
    }

    /// Parent index of an infinitesimal center.
    pub fn parent(&self, index: usize) -> Option<usize> {
        match self.centers[index] {
            Center::Infinitesimal { parent, .. } => Some(parent),
            Center::Proper(_) => None,
        }
    }

    /// Whether some later center lies on the exceptional curve of `index`.
    pub fn has_children(&self, index: usize) -> bool {
        (0..self.len()).any(|j| self.parent(j) == Some(index))
    }

    fn proper_points(&self) -> Vec<[i64; 3]> {
        self.resolved
            .iter()
            .filter_map(|c| match c {
                IntCenter::Proper { point, .. } => Some(*point),
                IntCenter::Infinitesimal { .. } => None,
            })
            .collect()
    }

    pub fn genericity_report(&self) -> GenericityReport {
        let pts = self.proper_points();
        let distinct = pts
            .iter()
            .enumerate()
            .all(|(i, p)| pts[..i].iter().all(|q| !same_projective_point(p, q)));
        let mut no_three_collinear = true;
        'outer: for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    if det3(&pts[i], &pts[j], &pts[k]) == 0 {
                        no_three_collinear = false;
                        break 'outer;
                    }
                }
            }
        }
        let mut no_six_on_conic = true;
        if pts.len() >= 6 {
            let rows: Vec<IntRow> = pts
                .iter()
                .map(|p| {
                    let [x, y, z] = p.map(i128::from);
                    vec![x * x, y * y, z * z, x * y, x * z, y * z]
                })
                .collect();
            for subset in combinations(pts.len(), 6) {
                let m: Vec<IntRow> = subset.iter().map(|&i| rows[i].clone()).collect();
                if rank(m) < 6 {
                    no_six_on_conic = false;
                    break;
                }
            }
        }
        GenericityReport {
            distinct,
            no_three_collinear,
            no_six_on_conic,
            infinitesimal: self.len() - pts.len(),
        }
    }
}

fn same_projective_point(p: &[i64; 3], q: &[i64; 3]) -> bool {
    let (p, q) = (p.map(i128::from), q.map(i128::from));
    p[0] * q[1] == p[1] * q[0] && p[0] * q[2] == p[2] * q[0] && p[1] * q[2] == p[2] * q[1]
}

fn det3(a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]) -> i128 {
    let (a, b, c) = (a.map(i128::from), b.map(i128::from), c.map(i128::from));
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Checkable stand-ins for "general position".
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct GenericityReport {
    pub distinct: bool,
    pub no_three_collinear: bool,
    pub no_six_on_conic: bool,
    /// Number of infinitely near centers. General position requires none.
    pub infinitesimal: usize,
}

impl GenericityReport {
    pub fn all(&self) -> bool {
        self.distinct && self.no_three_collinear && self.no_six_on_conic && self.infinitesimal == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupSurface {
    config: PointConfiguration,
    lattice: SurfaceLattice,
}

impl BlowupSurface {
    pub fn new(config: PointConfiguration) -> Self {
        let lattice = SurfaceLattice::blowup(config.len());
        BlowupSurface { config, lattice }
    }

    pub fn config(&self) -> &PointConfiguration {
        &self.config
    }

    pub fn lattice(&self) -> &SurfaceLattice {
        &self.lattice
    }

    pub fn num_centers(&self) -> usize {
        self.config.len()
    }

    /// Class `dH - sum m_i E_i`.
    pub fn class(&self, d: i64, mults: &[i64]) -> DivisorClass {
        let mut v = vec![0; self.num_centers() + 1];
        v[0] = d;
        for (i, m) in mults.iter().enumerate() {
            v[i + 1] = -m;
        }
        DivisorClass(v)
    }
}

pub fn build_blowup_surface(config: PointConfiguration) -> BlowupSurface {
    BlowupSurface::new(config)
}

/// `X_{m,n} = P(O + O(-m))` over `P^n`, of dimension `n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectiveBundleSpace {
    pub m: u32,
    pub n: u32,
}

impl ProjectiveBundleSpace {
    pub fn new(m: u32, n: u32) -> Result<Self, GeometryError> {
        if n == 0 {
            return Err(GeometryError::BundleBase);
        }
        Ok(ProjectiveBundleSpace { m, n })
    }

    pub fn dim(&self) -> usize {
        self.n as usize + 1
    }
}

/// Stacky weighted projective space `P(a_0, ..., a_n)`, of dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedProjectiveSpace {
    weights: Vec<u32>,
}

impl WeightedProjectiveSpace {
    pub fn new(weights: Vec<u32>) -> Result<Self, GeometryError> {
        if weights.len() < 2 || weights.contains(&0) {
            return Err(GeometryError::BadWeights);
        }
        Ok(WeightedProjectiveSpace { weights })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().map(|&w| i64::from(w)).sum()
    }
}

/// Complete fan of a smooth toric surface, rays in counterclockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricSurfaceFan {
    rays: Vec<[i64; 2]>,
}

fn cross(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

impl ToricSurfaceFan {
    pub fn new(rays: Vec<[i64; 2]>) -> Result<Self, GeometryError> {
        let fan = ToricSurfaceFan { rays };
        validate_fan(&fan)?;
        Ok(fan)
    }

    pub fn rays(&self) -> &[[i64; 2]] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn picard_rank(&self) -> usize {
        self.rays.len() - 2
    }

    pub fn ray(&self, i: usize) -> [i64; 2] {
        let r = self.rays.len();
        self.rays[i % r]
    }

    /// `b_i` with `v_{i-1} + v_{i+1} = b_i v_i`; the self-intersection of `D_i` is `-b_i`.
    pub fn wrap_numbers(&self) -> Vec<i64> {
        let r = self.rays.len();
        (0..r)
            .map(|i| {
                let prev = self.rays[(i + r - 1) % r];
                let next = self.rays[(i + 1) % r];
                let v = self.rays[i];
                let sum = [prev[0] + next[0], prev[1] + next[1]];
                if v[0] != 0 {
                    sum[0] / v[0]
                } else {
                    sum[1] / v[1]
                }
            })
            .collect()
    }

    /// Intersection lattice in the basis of torus-invariant prime divisors.
    /// The form is degenerate (rank `r - 2`); classes are Weil-divisor coefficient vectors.
    pub fn ray_lattice(&self) -> SurfaceLattice {
        let r = self.rays.len();
        let b = self.wrap_numbers();
        let mut gram = vec![vec![0i64; r]; r];
        for i in 0..r {
            gram[i][i] = -b[i];
            gram[i][(i + 1) % r] = 1;
            gram[(i + 1) % r][i] = 1;
        }
        let labels = (0..r).map(|i| format!("D{}", i + 1)).collect();
        SurfaceLattice::new(labels, gram, DivisorClass(vec![-1; r]))
            .expect("ray lattice is well formed")
    }

    /// Coefficient vector of `div(chi^u)`.
    pub fn principal(&self, u: [i64; 2]) -> Vec<i64> {
        self.rays.iter().map(|v| u[0] * v[0] + u[1] * v[1]).collect()
    }

    pub fn hirzebruch(m: u32) -> Self {
        let m = i64::from(m);
        ToricSurfaceFan::new(vec![[1, 0], [0, 1], [-1, m], [0, -1]])
            .expect("Hirzebruch fan is smooth")
    }
}

fn half(v: [i64; 2]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

fn angle_less(a: [i64; 2], b: [i64; 2]) -> bool {
    let (ha, hb) = (half(a), half(b));
    ha < hb || (ha == hb && cross(a, b) > 0)
}

pub fn validate_fan(fan: &ToricSurfaceFan) -> Result<(), GeometryError> {
    let rays = &fan.rays;
    let r = rays.len();
    for (index, v) in rays.iter().enumerate() {
        if v[0].gcd(&v[1]) != 1 {
            return Err(GeometryError::NonPrimitive { index, x: v[0], y: v[1] });
        }
        for (j, w) in rays[..index].iter().enumerate() {
            if v == w {
                return Err(GeometryError::DuplicateRay(j, index));
            }
        }
    }
    if r < 3 {
        // a two-ray fan can still be rejected for its singular cone first
        if r == 2 {
            let det = cross(rays[0], rays[1]);
            if det != 1 {
                return Err(GeometryError::NotSmooth { index: 0, next: 1, det });
            }
        }
        return Err(GeometryError::TooFewRays(r));
    }
    for i in 0..r {
        let det = cross(rays[i], rays[(i + 1) % r]);
        if det != 1 {
            return Err(GeometryError::NotSmooth { index: i, next: (i + 1) % r, det });
        }
    }
    let wraps = (0..r).filter(|&i| !angle_less(rays[i], rays[(i + 1) % r])).count() as i64;
    if wraps != 1 {
        return Err(GeometryError::Orientation(wraps));
    }
    Ok(())
}

/// A toric surface together with a Picard lattice basis and the class of each
/// torus-invariant prime divisor in that basis.
#[derive(Debug, Clone)]
pub struct ToricModel {
    pub fan: ToricSurfaceFan,
    pub lattice: SurfaceLattice,
    pub ray_classes: Vec<DivisorClass>,
    pub blowup: Option<BlowupSurface>,
    preimages: Vec<Vec<i64>>,
}

impl ToricModel {
    pub fn new(
        fan: ToricSurfaceFan,
        lattice: SurfaceLattice,
        ray_classes: Vec<DivisorClass>,
        blowup: Option<BlowupSurface>,
    ) -> Result<Self, GeometryError> {
        let rank = lattice.rank();
        let mut preimages = Vec::with_capacity(rank);
        for k in 0..rank {
            let target = DivisorClass::basis(rank, k);
            let found = small_preimage(&ray_classes, &target)
                .ok_or(GeometryError::NoLift(k))?;
            preimages.push(found);
        }
        Ok(ToricModel { fan, lattice, ray_classes, blowup, preimages })
    }

    /// Class of the Weil divisor `sum a_i D_i`.
    pub fn class_of(&self, ray_coeffs: &[i64]) -> DivisorClass {
        let rank = self.lattice.rank();
        let mut v = vec![0; rank];
        for (a, c) in ray_coeffs.iter().zip(&self.ray_classes) {
            for (slot, x) in v.iter_mut().zip(&c.0) {
                *slot += a * x;
            }
        }
        DivisorClass(v)
    }

    /// A torus-invariant representative of `class`, shifted by characters to keep
    /// the coefficients small.
    pub fn lift(&self, class: &DivisorClass) -> Vec<i64> {
        let r = self.fan.num_rays();
        let mut a = vec![0i64; r];
        for (c, pre) in class.0.iter().zip(&self.preimages) {
            for (slot, x) in a.iter_mut().zip(pre) {
                *slot += c * x;
            }
        }
        let cost = |a: &[i64], u: [i64; 2]| -> i64 {
            a.iter()
                .zip(self.fan.rays())
                .map(|(x, v)| (x + u[0] * v[0] + u[1] * v[1]).abs())
                .max()
                .unwrap_or(0)
        };
        let mut u = [0i64, 0];
        let mut best = cost(&a, u);
        loop {
            let mut improved = false;
            for du in [[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1], [1, -1], [-1, 1]] {
                let cand = [u[0] + du[0], u[1] + du[1]];
                let c = cost(&a, cand);
                if c < best {
                    best = c;
                    u = cand;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        let shift = self.fan.principal(u);
        a.iter().zip(shift).map(|(x, s)| x + s).collect()
    }
}

fn small_preimage(ray_classes: &[DivisorClass], target: &DivisorClass) -> Option<Vec<i64>> {
    let rows: Vec<Vec<i64>> = (0..target.len())
        .map(|k| ray_classes.iter().map(|c| c.0[k]).collect())
        .collect();
    solve_integer(&rows, &target.0)
}

/// Explicit rational points with no three collinear and no six on a conic; the
/// first eleven also impose independent conditions on cubics.
pub const GENERAL_POINTS: [[i64; 3]; 11] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, 1, 1],
    [1, 2, 3],
    [2, -1, 1],
    [3, 1, -2],
    [1, -3, 2],
    [1, 5, -1],
    [2, 3, -4],
    [5, 2, -3],
];

/// Blow-up of `P^2` at the first `t` points of [`GENERAL_POINTS`].
pub fn general_blowup(t: usize) -> BlowupSurface {
    assert!(t <= GENERAL_POINTS.len(), "at most {} preset points", GENERAL_POINTS.len());
    let centers = GENERAL_POINTS[..t].iter().map(|p| Center::proper(p[0], p[1], p[2])).collect();
    BlowupSurface::new(PointConfiguration::new(centers).expect("preset points are distinct"))
}

/// Three points on the line `x_0 = 0`.
pub fn collinear_b3() -> BlowupSurface {
    let centers = vec![Center::proper(0, 0, 1), Center::proper(0, 1, 1), Center::proper(0, 1, 0)];
    BlowupSurface::new(PointConfiguration::new(centers).expect("distinct"))
}

/// Blow-up at the three torus-fixed points, as a blow-up and as a hexagonal fan.
pub fn torus_fixed_b3() -> ToricModel {
    let centers = vec![Center::proper(1, 0, 0), Center::proper(0, 1, 0), Center::proper(0, 0, 1)];
    let surface = BlowupSurface::new(PointConfiguration::new(centers).expect("distinct"));
    let fan = ToricSurfaceFan::new(vec![[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]])
        .expect("hexagon fan is smooth");
    let lat = surface.lattice().clone();
    let c = |s: &str| lat.parse_class(s).expect("label");
    let ray_classes = vec![c("H-E1-E2"), c("E1"), c("H-E1-E3"), c("E3"), c("H-E2-E3"), c("E2")];
    ToricModel::new(fan, lat.clone(), ray_classes, Some(surface)).expect("classes lift")
}

/// The Picard-rank-seven toric surface: three torus-fixed points blown up, then
/// one point on each exceptional curve, cyclically. `E4` lies on `E1` in the
/// direction of the line through the first and third points, `E5` on `E2`
/// toward the first point, `E6` on `E3` toward the second.
pub fn rank7_toric_preset() -> ToricModel {
    let centers = vec![
        Center::proper(1, 0, 0),
        Center::proper(0, 1, 0),
        Center::proper(0, 0, 1),
        // chart x0 = 1, coordinates (x1, x2): the line x1 = 0 points along x2
        Center::infinitesimal(0, 0, 1),
        // chart x1 = 1, coordinates (x0, x2): the line x2 = 0 points along x0
        Center::infinitesimal(1, 1, 0),
        // chart x2 = 1, coordinates (x0, x1): the line x0 = 0 points along x1
        Center::infinitesimal(2, 0, 1),
    ];
    let surface = BlowupSurface::new(PointConfiguration::new(centers).expect("valid tower"));
    let fan = ToricSurfaceFan::new(vec![
        [1, 0],
        [1, 1],
        [1, 2],
        [0, 1],
        [-1, 0],
        [-2, -1],
        [-1, -1],
        [0, -1],
        [1, -1],
    ])
    .expect("rank seven fan is smooth");
    let lat = surface.lattice().clone();
    let c = |s: &str| lat.parse_class(s).expect("label");
    let ray_classes = vec![
        c("H-E1-E2-E5"),
        c("E1-E4"),
        c("E4"),
        c("H-E1-E3-E4"),
        c("E3-E6"),
        c("E6"),
        c("H-E2-E3-E6"),
        c("E2-E5"),
        c("E5"),
    ];
    ToricModel::new(fan, lat.clone(), ray_classes, Some(surface)).expect("classes lift")
}

/// `F_m` with ray classes `H, S, H, S + mH` in the `(S, H)` basis.
pub fn hirzebruch_toric(m: u32) -> ToricModel {
    let fan = ToricSurfaceFan::hirzebruch(m);
    let lat = SurfaceLattice::hirzebruch(m);
    let m = i64::from(m);
    let ray_classes = vec![
        DivisorClass(vec![0, 1]),
        DivisorClass(vec![1, 0]),
        DivisorClass(vec![0, 1]),
        DivisorClass(vec![1, m]),
    ];
    ToricModel::new(fan, lat, ray_classes, None).expect("classes lift")
}

/// Every space the engine knows how to compute on. Line-bundle classes are
/// integer vectors in the basis of [`Space::class_labels`].
#[derive(Debug, Clone)]
pub enum Space {
    Blowup(BlowupSurface),
    Toric(ToricModel),
    ProjBundle(ProjectiveBundleSpace),
    Weighted(WeightedProjectiveSpace),
}

/// The canonical class in the natural bookkeeping of each space kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalClass {
    Surface(DivisorClass),
    Bidegree(BidegreeClass),
    Weighted(WeightedClass),
}

pub fn canonical_class(space: &Space) -> CanonicalClass {
    match space {
        Space::Blowup(s) => CanonicalClass::Surface(s.lattice().canonical().clone()),
        Space::Toric(t) => CanonicalClass::Surface(t.lattice.canonical().clone()),
        Space::ProjBundle(p) => {
            CanonicalClass::Bidegree(BidegreeClass::new(-2, -(i64::from(p.n) + 1 + i64::from(p.m))))
        }
        Space::Weighted(w) => CanonicalClass::Weighted(WeightedClass::new(-w.weight_sum())),
    }
}

impl Space {
    pub fn dim(&self) -> usize {
        match self {
            Space::Blowup(_) | Space::Toric(_) => 2,
            Space::ProjBundle(p) => p.dim(),
            Space::Weighted(w) => w.dim(),
        }
    }

    pub fn class_rank(&self) -> usize {
        match self {
            Space::Blowup(s) => s.lattice().rank(),
            Space::Toric(t) => t.lattice.rank(),
            Space::ProjBundle(_) => 2,
            Space::Weighted(_) => 1,
        }
    }

    pub fn class_labels(&self) -> Vec<String> {
        match self {
            Space::Blowup(s) => s.lattice().labels().to_vec(),
            Space::Toric(t) => t.lattice.labels().to_vec(),
            Space::ProjBundle(_) => vec!["S".into(), "H".into()],
            Space::Weighted(_) => vec!["k".into()],
        }
    }

    pub fn canonical(&self) -> DivisorClass {
        match canonical_class(self) {
            CanonicalClass::Surface(k) => k,
            CanonicalClass::Bidegree(b) => DivisorClass(vec![b.a, b.b]),
            CanonicalClass::Weighted(w) => DivisorClass(vec![w.k]),
        }
    }

    /// Intersection lattice when the space is a surface; `X_{m,1}` is the
    /// Hirzebruch surface `F_m`.
    pub fn surface_lattice(&self) -> Option<SurfaceLattice> {
        match self {
            Space::Blowup(s) => Some(s.lattice().clone()),
            Space::Toric(t) => Some(t.lattice.clone()),
            Space::ProjBundle(p) if p.n == 1 => Some(SurfaceLattice::hirzebruch(p.m)),
            _ => None,
        }
    }

    pub fn format_class(&self, d: &DivisorClass) -> String {
        match self {
            Space::Blowup(s) => s.lattice().format_class(d),
            Space::Toric(t) => t.lattice.format_class(d),
            Space::ProjBundle(_) => BidegreeClass::new(d.0[0], d.0[1]).to_string(),
            Space::Weighted(_) => format!("O({})", d.0[0]),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Space::Blowup(_) => "blowup_p2",
            Space::Toric(_) => "toric",
            Space::ProjBundle(_) => "proj_bundle",
            Space::Weighted(_) => "weighted",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_fixed_b3_canonical() {
        let m = torus_fixed_b3();
        let s = m.blowup.unwrap();
        assert_eq!(s.lattice().canonical(), &DivisorClass(vec![-3, 1, 1, 1]));
    }

    #[test]
    fn collinear_points_are_accepted() {
        let s = collinear_b3();
        assert_eq!(s.num_centers(), 3);
        let rep = s.config().genericity_report();
        assert!(rep.distinct);
        assert!(!rep.no_three_collinear);
    }

    #[test]
    fn validation_errors() {
        let dup = PointConfiguration::new(vec![Center::proper(1, 2, 3), Center::proper(2, 4, 6)]);
        assert_eq!(dup.unwrap_err(), GeometryError::DuplicatePoint(0, 1));
        let zero = PointConfiguration::new(vec![Center::proper(0, 0, 0)]);
        assert_eq!(zero.unwrap_err(), GeometryError::ZeroPoint(0));
        let forward = PointConfiguration::new(vec![Center::infinitesimal(0, 1, 0)]);
        assert!(matches!(forward, Err(GeometryError::BadParent { .. })));
        let deep = PointConfiguration::new(vec![
            Center::proper(1, 0, 0),
            Center::infinitesimal(0, 1, 0),
            Center::infinitesimal(1, 1, 0),
        ]);
        assert!(matches!(deep, Err(GeometryError::DeepTower { index: 2, parent: 1 })));
        let same_dir = PointConfiguration::new(vec![
            Center::proper(1, 0, 0),
            Center::infinitesimal(0, 1, 2),
            Center::infinitesimal(0, 2, 4),
        ]);
        assert_eq!(same_dir.unwrap_err(), GeometryError::DuplicatePoint(1, 2));
        let zt = PointConfiguration::new(vec![Center::proper(1, 0, 0), Center::infinitesimal(0, 0, 0)]);
        assert_eq!(zt.unwrap_err(), GeometryError::ZeroTangent(1));
    }

    #[test]
    fn rational_coordinates_are_normalised() {
        let half = Rational::new(1, 2);
        let cfg = PointConfiguration::new(vec![
            Center::Proper([half, Rational::from(1), Rational::from(0)]),
            Center::proper(1, 2, 0),
        ]);
        assert_eq!(cfg.unwrap_err(), GeometryError::DuplicatePoint(0, 1));
    }

    #[test]
    fn genericity_flags() {
        let tf = PointConfiguration::new(vec![
            Center::proper(1, 0, 0),
            Center::proper(0, 1, 0),
            Center::proper(0, 0, 1),
        ])
        .unwrap();
        assert!(tf.genericity_report().no_three_collinear);
        let six = general_blowup(6);
        assert!(six.config().genericity_report().all());
        let eleven = general_blowup(11);
        assert!(eleven.config().genericity_report().all());
        // six points on the conic xy = z^2 ... (t^2 : 1 : t)
        let on_conic: Vec<Center> = [(0, 1, 0), (1, 1, 1), (4, 1, 2), (9, 1, 3), (1, 1, -1), (4, 1, -2)]
            .iter()
            .map(|&(x, y, z)| Center::proper(x, y, z))
            .collect();
        let rep = PointConfiguration::new(on_conic).unwrap().genericity_report();
        assert!(rep.no_three_collinear);
        assert!(!rep.no_six_on_conic);
    }

    #[test]
    fn fan_validation() {
        assert!(ToricSurfaceFan::new(vec![[1, 0], [0, 1], [-1, 4], [0, -1]]).is_ok());
        assert!(matches!(
            ToricSurfaceFan::new(vec![[1, 0], [-1, 0]]),
            Err(GeometryError::NotSmooth { .. })
        ));
        assert!(matches!(
            ToricSurfaceFan::new(vec![[2, 0], [0, 1], [-1, -1]]),
            Err(GeometryError::NonPrimitive { index: 0, .. })
        ));
        assert!(matches!(
            ToricSurfaceFan::new(vec![[1, 0], [-1, -1], [0, 1]]),
            Err(GeometryError::NotSmooth { .. })
        ));
        // P^2 fan traversed twice
        let twice = vec![[1, 0], [0, 1], [-1, -1], [1, 0], [0, 1], [-1, -1]];
        assert!(matches!(ToricSurfaceFan::new(twice), Err(GeometryError::DuplicateRay(..))));
    }

    #[test]
    fn rank7_preset_matches_fan_labels() {
        let m = rank7_toric_preset();
        assert_eq!(m.fan.num_rays(), 9);
        assert_eq!(m.fan.picard_rank(), 7);
        let lat = &m.lattice;
        let wraps = m.fan.wrap_numbers();
        for (i, c) in m.ray_classes.iter().enumerate() {
            // self-intersection from the fan agrees with the blow-up lattice
            assert_eq!(lat.self_intersection(c).unwrap(), -wraps[i], "ray {i}");
            // consecutive rays meet once, others are disjoint
            for (j, d) in m.ray_classes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let r = m.fan.num_rays();
                let adjacent = (i + 1) % r == j || (j + 1) % r == i;
                assert_eq!(lat.intersect(c, d).unwrap(), i64::from(adjacent));
            }
        }
        let e4 = lat.parse_class("E4").unwrap();
        assert_eq!(m.ray_classes[2], e4);
        assert_eq!(lat.self_intersection(&e4).unwrap(), -1);
        // the boundary is an anticanonical cycle
        let total = m.class_of(&[1; 9]);
        assert_eq!(total, lat.anticanonical());
        // principal divisors are trivial in the lattice
        for u in [[1, 0], [0, 1]] {
            assert!(m.class_of(&m.fan.principal(u)).is_zero());
        }
    }

    #[test]
    fn lift_round_trips() {
        for model in [rank7_toric_preset(), torus_fixed_b3(), hirzebruch_toric(3)] {
            let rank = model.lattice.rank();
            for k in 0..rank {
                for scale in [-3, 1, 4] {
                    let cls = DivisorClass::basis(rank, k).scale(scale).unwrap();
                    assert_eq!(model.class_of(&model.lift(&cls)), cls);
                }
            }
        }
    }

    #[test]
    fn hirzebruch_fan_classes() {
        for m in 0..=6u32 {
            let model = hirzebruch_toric(m);
            let wraps = model.fan.wrap_numbers();
            for (i, c) in model.ray_classes.iter().enumerate() {
                assert_eq!(model.lattice.self_intersection(c).unwrap(), -wraps[i]);
            }
            assert_eq!(model.class_of(&[1, 1, 1, 1]), model.lattice.anticanonical());
        }
    }

    #[test]
    fn ray_lattice_agrees_with_picard_lattice() {
        let m = rank7_toric_preset();
        let rl = m.fan.ray_lattice();
        let r = m.fan.num_rays();
        for i in 0..r {
            for j in 0..r {
                let a = DivisorClass::basis(r, i);
                let b = DivisorClass::basis(r, j);
                assert_eq!(
                    rl.intersect(&a, &b).unwrap(),
                    m.lattice.intersect(&m.ray_classes[i], &m.ray_classes[j]).unwrap()
                );
            }
        }
    }
}
