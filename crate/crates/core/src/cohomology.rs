//! Line-bundle cohomology.
//!
//! Engines:
//! * closed forms on `P^n` and on `X_{m,n}` (pushforward to `P^n`),
//! * weighted monomial counting on `P(a_0, ..., a_n)`,
//! * polynomial interpolation on blow-ups of `P^2`, with `h^2` from Serre
//!   duality and `h^1` from Riemann-Roch,
//! * a character-by-character Čech computation on smooth toric surfaces, used as
//!   an independent oracle.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{BlowupSurface, IntCenter, PointConfiguration, Space, ToricSurfaceFan};
use crate::lattice::{DivisorClass, LatticeError, SurfaceLattice};
use crate::linalg::{binomial, rank, IntRow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("negative h^1 for {class}: h0 = {h0}, h2 = {h2}, chi = {chi}")]
    NegativeH1 { class: String, h0: u64, h2: u64, chi: i64 },
    #[error("S-degree {a} is outside the supported range a >= -1")]
    UnsupportedRange { a: i64 },
    #[error("integer overflow while building interpolation conditions")]
    Overflow,
    #[error("character ({0}, {1}) outside the search region contributes to cohomology")]
    OracleBoundary(i64, i64),
    #[error("class has {got} coefficients, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// `(h^0, ..., h^dim)` of one sheaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CohomologyVector {
    pub h: Vec<u64>,
}

impl CohomologyVector {
    pub fn new(h: Vec<u64>) -> Self {
        CohomologyVector { h }
    }

    pub fn zeros(len: usize) -> Self {
        CohomologyVector { h: vec![0; len] }
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.h.get(i).copied().unwrap_or(0)
    }

    pub fn euler(&self) -> i64 {
        self.h
            .iter()
            .enumerate()
            .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum()
    }

    pub fn reversed(&self) -> Self {
        CohomologyVector { h: self.h.iter().rev().copied().collect() }
    }

    /// Largest `i > 0` with `h^i != 0`.
    pub fn top_positive_degree(&self) -> Option<usize> {
        (1..self.h.len()).rev().find(|&i| self.h[i] != 0)
    }

    pub fn higher_vanishes(&self) -> bool {
        self.top_positive_degree().is_none()
    }

    fn add_assign(&mut self, other: &CohomologyVector) {
        for (a, b) in self.h.iter_mut().zip(&other.h) {
            *a += b;
        }
    }
}

impl fmt::Display for CohomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.h.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

fn binom_u64(n: i64, k: i64) -> u64 {
    let v = binomial(n, k).expect("binomial coefficient exceeds 128 bits");
    u64::try_from(v).expect("binomial coefficient exceeds 64 bits")
}

pub fn h_projective_space(n: u32, d: i64) -> CohomologyVector {
    let n = n as usize;
    let mut h = vec![0u64; n + 1];
    let ni = n as i64;
    if d >= 0 {
        h[0] = binom_u64(ni + d, ni);
    }
    if d <= -ni - 1 {
        h[n] = binom_u64(-d - 1, ni);
    }
    CohomologyVector { h }
}

/// Cohomology of `O(aS + bH)` on `X_{m,n}` via `pi_* = Sym^a(O + O(-m)) (b)`.
pub fn h_proj_bundle(m: u32, n: u32, a: i64, b: i64) -> Result<CohomologyVector, CohomologyError> {
    if a < -1 {
        return Err(CohomologyError::UnsupportedRange { a });
    }
    let mut total = CohomologyVector::zeros(n as usize + 2);
    for j in 0..=a {
        let piece = h_projective_space(n, b - j * i64::from(m));
        for (slot, x) in total.h.iter_mut().zip(&piece.h) {
            *slot += x;
        }
    }
    Ok(total)
}

/// Cohomology of `O(aS + bH)` on the Hirzebruch surface `F_m`, for every `a`:
/// classes with `a <= -2` go through Serre duality with `K = -2S - (m+2)H`.
pub fn h_hirzebruch(m: u32, a: i64, b: i64) -> CohomologyVector {
    if a >= -1 {
        h_proj_bundle(m, 1, a, b).expect("a >= -1")
    } else {
        let dual = h_proj_bundle(m, 1, -2 - a, -(i64::from(m)) - 2 - b).expect("dual a >= 0");
        dual.reversed()
    }
}

/// Number of monomials of weighted degree `k`.
pub fn denumerant(weights: &[u32], k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    let k = k as usize;
    let mut ways = vec![0u64; k + 1];
    ways[0] = 1;
    for &w in weights {
        let w = w as usize;
        for s in w..=k {
            ways[s] += ways[s - w];
        }
    }
    ways[k]
}

pub fn h_weighted(weights: &[u32], k: i64) -> CohomologyVector {
    let n = weights.len() - 1;
    let sum: i64 = weights.iter().map(|&w| i64::from(w)).sum();
    let mut h = vec![0u64; n + 1];
    h[0] += denumerant(weights, k);
    h[n] += denumerant(weights, -k - sum);
    CohomologyVector { h }
}

// ---------------------------------------------------------------------------
// interpolation

fn ipow(x: i64, e: i64) -> Option<i128> {
    i128::from(x).checked_pow(u32::try_from(e).ok()?)
}

fn monomials(d: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for e0 in (0..=d).rev() {
        for e1 in (0..=d - e0).rev() {
            out.push([e0, e1, d - e0 - e1]);
        }
    }
    out
}

fn chart_axes(chart: usize) -> (usize, usize) {
    match chart {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Coefficient of `X^a Y^b` in `x^e` after `x = p + X e_i + Y e_j`.
fn local_coeff(e: &[i64; 3], p: &[i64; 3], chart: usize, a: i64, b: i64) -> Option<i128> {
    let (i, j) = chart_axes(chart);
    if a > e[i] || b > e[j] {
        return Some(0);
    }
    ipow(p[chart], e[chart])?
        .checked_mul(binomial(e[i], a)?)?
        .checked_mul(ipow(p[i], e[i] - a)?)?
        .checked_mul(binomial(e[j], b)?)?
        .checked_mul(ipow(p[j], e[j] - b)?)
}

/// Coefficient of `L1^a L2^b` where `X = alpha L1`, `Y = beta L1 + L2` (or
/// `X = L2`, `Y = L1` when `alpha = 0`).
fn tangent_coeff(
    e: &[i64; 3],
    p: &[i64; 3],
    chart: usize,
    t: [i64; 2],
    big_a: i64,
    big_b: i64,
) -> Option<i128> {
    let [alpha, beta] = t;
    if alpha == 0 {
        return local_coeff(e, p, chart, big_b, big_a);
    }
    let mut acc: i128 = 0;
    for b in big_b..=big_a + big_b {
        let a = big_a + big_b - b;
        let c = local_coeff(e, p, chart, a, b)?;
        if c == 0 {
            continue;
        }
        let term = c
            .checked_mul(ipow(alpha, a)?)?
            .checked_mul(binomial(b, big_b)?)?
            .checked_mul(ipow(beta, b - big_b)?)?;
        acc = acc.checked_add(term)?;
    }
    Some(acc)
}

/// Center index, degree and vanishing order.
type RowKey = (usize, i64, i64);

/// Sections of `dH - sum m_i E_i` on a blow-up, as the nullity of explicit
/// linear conditions on degree-`d` forms. Results and condition rows are cached.
pub struct InterpolationEngine {
    centers: Vec<IntCenter>,
    rows: Mutex<HashMap<RowKey, Arc<Vec<IntRow>>>>,
    values: Mutex<HashMap<(i64, Vec<i64>), u64>>,
}

impl InterpolationEngine {
    pub fn new(config: &PointConfiguration) -> Self {
        InterpolationEngine {
            centers: config.resolved().to_vec(),
            rows: Mutex::new(HashMap::new()),
            values: Mutex::new(HashMap::new()),
        }
    }

    pub fn num_centers(&self) -> usize {
        self.centers.len()
    }

    /// Required order of vanishing of the pulled-back form along each prime
    /// exceptional divisor. For a first-order point `q` on the exceptional curve
    /// of `p` this is `m_p + m_q`, because the total transform of `E_p` contains
    /// the prime divisor of `q` once.
    pub fn valuations(&self, mults: &[i64]) -> Vec<i64> {
        self.centers
            .iter()
            .enumerate()
            .map(|(i, c)| match c {
                IntCenter::Proper { .. } => mults[i],
                IntCenter::Infinitesimal { parent, .. } => mults[*parent] + mults[i],
            })
            .collect()
    }

    fn center_rows(&self, index: usize, d: i64, c: i64) -> Result<Arc<Vec<IntRow>>, CohomologyError> {
        if let Some(r) = self.rows.lock().unwrap().get(&(index, d, c)) {
            return Ok(r.clone());
        }
        let monos = monomials(d);
        let mut rows = Vec::new();
        match &self.centers[index] {
            IntCenter::Proper { point, chart } => {
                for a in 0..c {
                    for b in 0..c - a {
                        let row = monos
                            .iter()
                            .map(|e| local_coeff(e, point, *chart, a, b))
                            .collect::<Option<IntRow>>()
                            .ok_or(CohomologyError::Overflow)?;
                        rows.push(row);
                    }
                }
            }
            IntCenter::Infinitesimal { point, chart, tangent, .. } => {
                for big_b in 0..=(c - 1) / 2 {
                    for big_a in 0..c - 2 * big_b {
                        let row = monos
                            .iter()
                            .map(|e| tangent_coeff(e, point, *chart, *tangent, big_a, big_b))
                            .collect::<Option<IntRow>>()
                            .ok_or(CohomologyError::Overflow)?;
                        rows.push(row);
                    }
                }
            }
        }
        let rows = Arc::new(rows);
        self.rows.lock().unwrap().insert((index, d, c), rows.clone());
        Ok(rows)
    }

    /// `h^0(dH - sum m_i E_i)`.
    pub fn h0(&self, d: i64, mults: &[i64]) -> Result<u64, CohomologyError> {
        if mults.len() != self.centers.len() {
            return Err(CohomologyError::DimensionMismatch { expected: self.centers.len(), got: mults.len() });
        }
        if d < 0 {
            return Ok(0);
        }
        let vals: Vec<i64> = self.valuations(mults).into_iter().map(|c| c.max(0)).collect();
        let key = (d, vals);
        if let Some(&v) = self.values.lock().unwrap().get(&key) {
            return Ok(v);
        }
        let mut all = Vec::new();
        for (i, &c) in key.1.iter().enumerate() {
            if c > 0 {
                all.extend(self.center_rows(i, d, c)?.iter().cloned());
            }
        }
        let dim = binom_u64(d + 2, 2);
        let result = dim - rank(all) as u64;
        self.values.lock().unwrap().insert(key, result);
        Ok(result)
    }

    /// `h^0` of a class written in the basis `H, E_1, ..., E_t`.
    pub fn h0_class(&self, class: &DivisorClass) -> Result<u64, CohomologyError> {
        let expected = self.centers.len() + 1;
        if class.len() != expected {
            return Err(CohomologyError::DimensionMismatch { expected, got: class.len() });
        }
        let mults: Vec<i64> = class.0[1..].iter().map(|x| -x).collect();
        self.h0(class.0[0], &mults)
    }

    /// Full cohomology vector from `h^0(D)`, `h^0(K - D)` and Riemann-Roch.
    pub fn cohomology(&self, lattice: &SurfaceLattice, class: &DivisorClass) -> Result<CohomologyVector, CohomologyError> {
        let h0 = self.h0_class(class)?;
        let h2 = self.h0_class(&lattice.serre_dual(class)?)?;
        let chi = lattice.euler_char(class)?;
        let h1 = h0 as i64 + h2 as i64 - chi;
        if h1 < 0 {
            return Err(CohomologyError::NegativeH1 { class: lattice.format_class(class), h0, h2, chi });
        }
        Ok(CohomologyVector::new(vec![h0, h1 as u64, h2]))
    }
}

pub fn h0_interpolation(config: &PointConfiguration, d: i64, mults: &[i64]) -> Result<u64, CohomologyError> {
    InterpolationEngine::new(config).h0(d, mults)
}

pub fn h_line_bundle_surface(x: &BlowupSurface, d: &DivisorClass) -> Result<CohomologyVector, CohomologyError> {
    InterpolationEngine::new(x.config()).cohomology(x.lattice(), d)
}

// ---------------------------------------------------------------------------
// toric oracle

fn count_arcs(neg: &[bool]) -> usize {
    let r = neg.len();
    (0..r).filter(|&i| neg[i] && !neg[(i + r - 1) % r]).count()
}

fn character_contribution(fan: &ToricSurfaceFan, a: &[i64], u: [i64; 2], out: &mut [u64; 3]) {
    let neg: Vec<bool> = fan
        .rays()
        .iter()
        .zip(a)
        .map(|(v, ai)| u[0] * v[0] + u[1] * v[1] < -ai)
        .collect();
    let count = neg.iter().filter(|&&x| x).count();
    if count == 0 {
        out[0] += 1;
    } else if count == neg.len() {
        out[2] += 1;
    } else {
        out[1] += count_arcs(&neg) as u64 - 1;
    }
}

/// Cohomology of `O(sum a_i D_i)` on a smooth complete toric surface, summed
/// over characters `u` by counting arcs of `Neg(u) = { i : <u, v_i> < -a_i }`.
///
/// Search region. Write `s_i = <u, v_i>`. Ray `i` is *ambiguous* at `u` when
/// its membership in `Neg(u)` differs from membership in `{ s_i < 0 }`, which
/// forces `|s_i| <= |a_i|`. For `u != 0` the set `{ s_i < 0 }` is a single
/// proper arc. Toggling isolated rays whose two neighbours lie on opposite
/// sides only moves an end of that arc, so a contributing `u` has either two
/// adjacent ambiguous rays `i, i+1`, or an ambiguous ray `i` whose neighbours
/// lie on the same side. In the second case `s_{i-1} + s_{i+1} = b_i s_i` with
/// both summands of one sign gives `|s_{i+1}| <= |b_i a_i|`. Either way `u`
/// lies in the box `|s_i| <= |a_i|`, `|s_{i+1}| <= max(|a_{i+1}|, |b_i a_i|)`
/// of the cone `(v_i, v_{i+1})`, written in its dual basis. The ring just
/// outside each box is evaluated as a runtime check of this bound.
pub fn h_toric_oracle(fan: &ToricSurfaceFan, a: &[i64]) -> Result<CohomologyVector, CohomologyError> {
    let r = fan.num_rays();
    if a.len() != r {
        return Err(CohomologyError::DimensionMismatch { expected: r, got: a.len() });
    }
    let b = fan.wrap_numbers();
    let mut seen: HashSet<[i64; 2]> = HashSet::new();
    let mut boundary: Vec<[i64; 2]> = Vec::new();
    let mut totals = [0u64; 3];
    for i in 0..r {
        let vi = fan.ray(i);
        let vj = fan.ray(i + 1);
        let s_max = a[i].abs();
        let t_max = a[(i + 1) % r].abs().max((b[i] * a[i]).abs());
        let to_u = |s: i64, t: i64| [vj[1] * s - vi[1] * t, -vj[0] * s + vi[0] * t];
        for s in -s_max - 1..=s_max + 1 {
            for t in -t_max - 1..=t_max + 1 {
                let u = to_u(s, t);
                if s.abs() > s_max || t.abs() > t_max {
                    boundary.push(u);
                } else if seen.insert(u) {
                    character_contribution(fan, a, u, &mut totals);
                }
            }
        }
    }
    for u in boundary {
        if seen.contains(&u) {
            continue;
        }
        let mut probe = [0u64; 3];
        character_contribution(fan, a, u, &mut probe);
        if probe != [0, 0, 0] {
            return Err(CohomologyError::OracleBoundary(u[0], u[1]));
        }
    }
    Ok(CohomologyVector::new(totals.to_vec()))
}

// ---------------------------------------------------------------------------
// dispatch

/// Cached line-bundle cohomology on one space.
pub struct CohomologyEngine {
    space: Space,
    interp: Option<InterpolationEngine>,
    cache: Mutex<HashMap<DivisorClass, CohomologyVector>>,
}

impl CohomologyEngine {
    pub fn new(space: Space) -> Self {
        let interp = match &space {
            Space::Blowup(s) => Some(InterpolationEngine::new(s.config())),
            _ => None,
        };
        CohomologyEngine { space, interp, cache: Mutex::new(HashMap::new()) }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn h(&self, class: &DivisorClass) -> Result<CohomologyVector, CohomologyError> {
        let expected = self.space.class_rank();
        if class.len() != expected {
            return Err(CohomologyError::DimensionMismatch { expected, got: class.len() });
        }
        if let Some(v) = self.cache.lock().unwrap().get(class) {
            return Ok(v.clone());
        }
        let v = match &self.space {
            Space::Blowup(s) => self.interp.as_ref().expect("engine").cohomology(s.lattice(), class)?,
            Space::Toric(t) => {
                let v = h_toric_oracle(&t.fan, &t.lift(class))?;
                let chi = t.lattice.euler_char(class)?;
                if v.euler() != chi {
                    return Err(CohomologyError::NegativeH1 {
                        class: t.lattice.format_class(class),
                        h0: v.get(0),
                        h2: v.get(2),
                        chi,
                    });
                }
                v
            }
            Space::ProjBundle(p) => h_proj_bundle(p.m, p.n, class.0[0], class.0[1])?,
            Space::Weighted(w) => h_weighted(w.weights(), class.0[0]),
        };
        self.cache.lock().unwrap().insert(class.clone(), v.clone());
        Ok(v)
    }
}

/// Sum of two cohomology vectors of equal length.
pub fn sum(a: &CohomologyVector, b: &CohomologyVector) -> CohomologyVector {
    let mut out = a.clone();
    out.add_assign(b);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{collinear_b3, general_blowup, hirzebruch_toric, rank7_toric_preset, torus_fixed_b3};

    #[test]
    fn projective_space_closed_form() {
        assert_eq!(h_projective_space(2, 2).h, vec![6, 0, 0]);
        assert_eq!(h_projective_space(1, -4).h, vec![0, 3]);
        assert_eq!(h_projective_space(2, -3).h, vec![0, 0, 1]);
        assert_eq!(h_projective_space(2, -1).h, vec![0, 0, 0]);
    }

    #[test]
    fn proj_bundle_values() {
        assert_eq!(h_proj_bundle(4, 1, 2, 5).unwrap().h, vec![8, 2, 0]);
        assert_eq!(h_proj_bundle(4, 1, 2, 6).unwrap().h, vec![10, 1, 0]);
        assert_eq!(h_proj_bundle(4, 1, 2, 8).unwrap().h, vec![15, 0, 0]);
        assert_eq!(h_proj_bundle(3, 2, -1, 7).unwrap().h, vec![0, 0, 0, 0]);
        assert_eq!(h_proj_bundle(3, 2, -2, 7), Err(CohomologyError::UnsupportedRange { a: -2 }));
        for d in -6..6 {
            let mut padded = h_projective_space(2, d).h;
            padded.push(0);
            assert_eq!(h_proj_bundle(5, 2, 0, d).unwrap().h, padded);
        }
    }

    #[test]
    fn weighted_values() {
        assert_eq!(h_weighted(&[1, 1, 4], 4).h, vec![6, 0, 0]);
        assert_eq!(h_weighted(&[1, 1, 4], -6).h, vec![0, 0, 1]);
        for d in -20..=20 {
            assert_eq!(h_weighted(&[1, 1, 1], d), h_projective_space(2, d));
        }
    }

    #[test]
    fn interpolation_examples() {
        let col = collinear_b3();
        assert_eq!(h0_interpolation(col.config(), 1, &[1, 1, 1]).unwrap(), 1);
        let gen = general_blowup(3);
        assert_eq!(h0_interpolation(gen.config(), 1, &[1, 1, 1]).unwrap(), 0);
        let six = general_blowup(6);
        assert_eq!(h0_interpolation(six.config(), 3, &[1; 6]).unwrap(), 4);
        assert_eq!(h0_interpolation(six.config(), -1, &[0; 6]).unwrap(), 0);
        assert_eq!(h0_interpolation(six.config(), 2, &[-3; 6]).unwrap(), 6);
    }

    #[test]
    fn surface_examples() {
        let six = general_blowup(6);
        let o = DivisorClass::zero(7);
        assert_eq!(h_line_bundle_surface(&six, &o).unwrap().h, vec![1, 0, 0]);
        let col = collinear_b3();
        let c = col.lattice().parse_class("H-E1-E2-E3").unwrap();
        assert_eq!(h_line_bundle_surface(&col, &c).unwrap().h, vec![1, 1, 0]);
        let four = general_blowup(4);
        let c = four.lattice().parse_class("H-E1-E2-E3-E4").unwrap();
        assert_eq!(h_line_bundle_surface(&four, &c).unwrap().h, vec![0, 1, 0]);
    }

    #[test]
    fn hirzebruch_oracle_examples() {
        let f4 = hirzebruch_toric(4);
        assert_eq!(h_toric_oracle(&f4.fan, &[0, 0, 0, 0]).unwrap().h, vec![1, 0, 0]);
        assert_eq!(h_toric_oracle(&f4.fan, &[-1, -1, -1, -1]).unwrap().h, vec![0, 0, 1]);
        let cls = DivisorClass(vec![2, 6]);
        assert_eq!(h_toric_oracle(&f4.fan, &f4.lift(&cls)).unwrap().h, vec![10, 1, 0]);
        assert_eq!(h_hirzebruch(4, 2, 6).h, vec![10, 1, 0]);
    }

    #[test]
    fn infinitesimal_points_match_toric_oracle() {
        let model = rank7_toric_preset();
        let surface = model.blowup.clone().unwrap();
        let engine = InterpolationEngine::new(surface.config());
        for label in ["H-E1-E2-E4", "H-E2-E4-E6", "E1-E4", "H-E1", "2H-E1-E4", "H-E1-E4", "H-E1-E2-E5"] {
            let c = model.lattice.parse_class(label).unwrap();
            let interp = engine.cohomology(&model.lattice, &c).unwrap();
            let oracle = h_toric_oracle(&model.fan, &model.lift(&c)).unwrap();
            assert_eq!(interp, oracle, "{label}");
        }
    }

    #[test]
    fn torus_fixed_b3_small_box() {
        let model = torus_fixed_b3();
        let surface = model.blowup.clone().unwrap();
        let engine = InterpolationEngine::new(surface.config());
        for d in -3..=3 {
            for e1 in -2..=2 {
                for e2 in -2..=2 {
                    for e3 in -2..=2 {
                        let c = DivisorClass(vec![d, e1, e2, e3]);
                        let interp = engine.cohomology(&model.lattice, &c).unwrap();
                        let oracle = h_toric_oracle(&model.fan, &model.lift(&c)).unwrap();
                        assert_eq!(interp, oracle, "{c}");
                    }
                }
            }
        }
    }
}
