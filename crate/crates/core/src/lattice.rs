//! Picard-lattice arithmetic.
//!
//! A [`SurfaceLattice`] carries an ordered basis, the intersection pairing as a
//! symmetric integer Gram matrix, and the class of the canonical divisor. All
//! arithmetic is checked 64-bit; overflow is reported as an error.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("class has {got} coefficients, lattice rank is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("Riemann-Roch parity violated for {class}: D.D - D.K = {value} is odd")]
    Parity { class: String, value: i64 },
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
}

/// Integer coefficient vector in a fixed lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        DivisorClass(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![0; rank])
    }

    pub fn basis(rank: usize, index: usize) -> Self {
        let mut v = vec![0; rank];
        v[index] = 1;
        DivisorClass(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    fn zip_with(
        &self,
        other: &DivisorClass,
        f: impl Fn(i64, i64) -> Option<i64>,
    ) -> Result<DivisorClass, LatticeError> {
        if self.len() != other.len() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| f(a, b).ok_or(LatticeError::Overflow))
            .collect::<Result<Vec<_>, _>>()
            .map(DivisorClass)
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn sub(&self, other: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.zip_with(other, i64::checked_sub)
    }

    pub fn scale(&self, k: i64) -> Result<DivisorClass, LatticeError> {
        self.0
            .iter()
            .map(|&a| a.checked_mul(k).ok_or(LatticeError::Overflow))
            .collect::<Result<Vec<_>, _>>()
            .map(DivisorClass)
    }

    pub fn neg(&self) -> Result<DivisorClass, LatticeError> {
        self.scale(-1)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `aS + bH` on a projective bundle `P(O + O(-m))` over `P^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BidegreeClass {
    pub a: i64,
    pub b: i64,
}

impl BidegreeClass {
    pub fn new(a: i64, b: i64) -> Self {
        BidegreeClass { a, b }
    }

    pub fn checked_add(self, other: Self) -> Result<Self, LatticeError> {
        Ok(BidegreeClass {
            a: self.a.checked_add(other.a).ok_or(LatticeError::Overflow)?,
            b: self.b.checked_add(other.b).ok_or(LatticeError::Overflow)?,
        })
    }

    pub fn checked_sub(self, other: Self) -> Result<Self, LatticeError> {
        Ok(BidegreeClass {
            a: self.a.checked_sub(other.a).ok_or(LatticeError::Overflow)?,
            b: self.b.checked_sub(other.b).ok_or(LatticeError::Overflow)?,
        })
    }

    pub fn checked_scale(self, k: i64) -> Result<Self, LatticeError> {
        Ok(BidegreeClass {
            a: self.a.checked_mul(k).ok_or(LatticeError::Overflow)?,
            b: self.b.checked_mul(k).ok_or(LatticeError::Overflow)?,
        })
    }
}

impl fmt::Display for BidegreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}S{:+}H", self.a, self.b)
    }
}

/// Degree `k` of `O(k)` on a weighted projective stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightedClass {
    pub k: i64,
}

impl WeightedClass {
    pub fn new(k: i64) -> Self {
        WeightedClass { k }
    }
}

impl fmt::Display for WeightedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({})", self.k)
    }
}

/// Intersection lattice of a smooth projective surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceLattice {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
    canonical: DivisorClass,
}

impl SurfaceLattice {
    pub fn new(
        labels: Vec<String>,
        gram: Vec<Vec<i64>>,
        canonical: DivisorClass,
    ) -> Result<Self, LatticeError> {
        let rank = labels.len();
        if gram.len() != rank {
            return Err(LatticeError::DimensionMismatch { expected: rank, got: gram.len() });
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != rank {
                return Err(LatticeError::DimensionMismatch { expected: rank, got: row.len() });
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        if canonical.len() != rank {
            return Err(LatticeError::DimensionMismatch { expected: rank, got: canonical.len() });
        }
        Ok(SurfaceLattice { labels, gram, canonical })
    }

    /// Blow-up of `P^2` at `t` points, basis `H, E_1, ..., E_t` of total transforms.
    pub fn blowup(t: usize) -> Self {
        let rank = t + 1;
        let mut gram = vec![vec![0; rank]; rank];
        gram[0][0] = 1;
        for (i, row) in gram.iter_mut().enumerate().skip(1) {
            row[i] = -1;
        }
        let mut labels = vec!["H".to_string()];
        labels.extend((1..=t).map(|i| format!("E{i}")));
        let mut canonical = vec![1; rank];
        canonical[0] = -3;
        SurfaceLattice { labels, gram, canonical: DivisorClass(canonical) }
    }

    /// `P(O + O(-m))` over `P^1` in the basis `S, H`, with `S^2 = -m`, `S.H = 1`,
    /// `H^2 = 0` and `K = -2S - (m+2)H`.
    pub fn hirzebruch(m: u32) -> Self {
        let m = i64::from(m);
        SurfaceLattice {
            labels: vec!["S".into(), "H".into()],
            gram: vec![vec![-m, 1], vec![1, 0]],
            canonical: DivisorClass(vec![-2, -(m + 2)]),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn anticanonical(&self) -> DivisorClass {
        DivisorClass(self.canonical.0.iter().map(|c| -c).collect())
    }

    fn check(&self, d: &DivisorClass) -> Result<(), LatticeError> {
        if d.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch { expected: self.rank(), got: d.len() });
        }
        Ok(())
    }

    pub fn intersect(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<i64, LatticeError> {
        self.check(d1)?;
        self.check(d2)?;
        let mut total: i64 = 0;
        for (i, &x) in d1.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in d2.0.iter().enumerate() {
                let g = self.gram[i][j];
                if g == 0 || y == 0 {
                    continue;
                }
                let term = x
                    .checked_mul(g)
                    .and_then(|v| v.checked_mul(y))
                    .ok_or(LatticeError::Overflow)?;
                total = total.checked_add(term).ok_or(LatticeError::Overflow)?;
            }
        }
        Ok(total)
    }

    pub fn self_intersection(&self, d: &DivisorClass) -> Result<i64, LatticeError> {
        self.intersect(d, d)
    }

    /// `chi(O(D)) = 1 + (D.D - D.K)/2` on a rational surface.
    pub fn euler_char(&self, d: &DivisorClass) -> Result<i64, LatticeError> {
        let dd = self.intersect(d, d)?;
        let dk = self.intersect(d, &self.canonical)?;
        let num = dd.checked_sub(dk).ok_or(LatticeError::Overflow)?;
        if num % 2 != 0 {
            return Err(LatticeError::Parity { class: d.to_string(), value: num });
        }
        Ok(1 + num / 2)
    }

    /// `K - D`.
    pub fn serre_dual(&self, d: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.check(d)?;
        self.canonical.sub(d)
    }

    /// Human-readable form like `2H-E1-E3`.
    pub fn format_class(&self, d: &DivisorClass) -> String {
        let mut out = String::new();
        for (c, label) in d.0.iter().zip(&self.labels) {
            match *c {
                0 => continue,
                1 if out.is_empty() => out.push_str(label),
                1 => {
                    out.push('+');
                    out.push_str(label);
                }
                -1 => {
                    out.push('-');
                    out.push_str(label);
                }
                c if out.is_empty() || c < 0 => out.push_str(&format!("{c}{label}")),
                c => out.push_str(&format!("+{c}{label}")),
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    /// Parse a class written like `2H-E1-E3` against this lattice's labels.
    pub fn parse_class(&self, text: &str) -> Option<DivisorClass> {
        let mut coeffs = vec![0i64; self.rank()];
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" || s == "O" {
            return Some(DivisorClass(coeffs));
        }
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mult: i64 = if start == pos { 1 } else { s[start..pos].parse().ok()? };
            let lstart = pos;
            while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                pos += 1;
            }
            let label = &s[lstart..pos];
            let idx = self.labels.iter().position(|l| l == label)?;
            coeffs[idx] += sign * mult;
        }
        Some(DivisorClass(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(v: &[i64]) -> DivisorClass {
        DivisorClass(v.to_vec())
    }

    #[test]
    fn blowup_gram_is_diagonal() {
        let l = SurfaceLattice::blowup(3);
        let h = DivisorClass::basis(4, 0);
        assert_eq!(l.intersect(&h, &h).unwrap(), 1);
        for i in 1..4 {
            let e = DivisorClass::basis(4, i);
            assert_eq!(l.intersect(&e, &e).unwrap(), -1);
            assert_eq!(l.intersect(&h, &e).unwrap(), 0);
            for j in 1..4 {
                if i != j {
                    assert_eq!(l.intersect(&e, &DivisorClass::basis(4, j)).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn line_through_three_points_is_orthogonal_to_k() {
        let l = SurfaceLattice::blowup(3);
        let d = class(&[1, -1, -1, -1]);
        assert_eq!(l.intersect(&d, l.canonical()).unwrap(), 0);
        assert_eq!(l.self_intersection(&d).unwrap(), -2);
        assert_eq!(l.euler_char(&d).unwrap(), 0);
    }

    #[test]
    fn line_through_t_points() {
        for t in 0..12usize {
            let l = SurfaceLattice::blowup(t);
            let mut v = vec![-1; t + 1];
            v[0] = 1;
            let d = DivisorClass(v);
            assert_eq!(l.self_intersection(&d).unwrap(), 1 - t as i64);
            assert_eq!(l.intersect(&d, l.canonical()).unwrap(), t as i64 - 3);
            let chi = l.euler_char(&d).unwrap();
            assert_eq!(chi, 1 + ((1 - t as i64) - (t as i64 - 3)) / 2);
        }
        let l = SurfaceLattice::blowup(4);
        assert_eq!(l.euler_char(&class(&[1, -1, -1, -1, -1])).unwrap(), -1);
    }

    #[test]
    fn anticanonical_euler_characteristic() {
        for t in 0..=11usize {
            let l = SurfaceLattice::blowup(t);
            assert_eq!(l.euler_char(&l.anticanonical()).unwrap(), 10 - t as i64);
        }
    }

    #[test]
    fn hirzebruch_section_and_adjunction() {
        let l = SurfaceLattice::hirzebruch(4);
        let s = class(&[1, 0]);
        let h = class(&[0, 1]);
        assert_eq!(l.intersect(&s, &s).unwrap(), -4);
        assert_eq!(l.canonical(), &class(&[-2, -6]));
        // rational curves: K.C + C^2 = -2
        for c in [&s, &h] {
            let kc = l.intersect(l.canonical(), c).unwrap();
            assert_eq!(kc + l.self_intersection(c).unwrap(), -2);
        }
        assert_eq!(l.self_intersection(l.canonical()).unwrap(), 8);
    }

    #[test]
    fn serre_dual_examples() {
        let l0 = SurfaceLattice::blowup(0);
        assert_eq!(l0.serre_dual(&class(&[0])).unwrap(), class(&[-3]));
        let l3 = SurfaceLattice::blowup(3);
        assert_eq!(
            l3.serre_dual(&class(&[1, -1, -1, -1])).unwrap(),
            class(&[-4, 2, 2, 2])
        );
        let l1 = SurfaceLattice::blowup(1);
        let d = class(&[2, -1]);
        assert_eq!(l1.serre_dual(&l1.serre_dual(&d).unwrap()).unwrap(), d);
    }

    #[test]
    fn errors() {
        let l = SurfaceLattice::blowup(2);
        assert!(matches!(
            l.intersect(&class(&[1, 0]), &class(&[1, 0, 0])),
            Err(LatticeError::DimensionMismatch { .. })
        ));
        assert_eq!(
            l.intersect(&class(&[i64::MAX, 0, 0]), &class(&[2, 0, 0])),
            Err(LatticeError::Overflow)
        );
        // a lattice with an odd canonical pairing breaks Riemann-Roch parity
        let bad = SurfaceLattice::new(
            vec!["A".into()],
            vec![vec![1]],
            class(&[0]),
        )
        .unwrap();
        assert!(matches!(bad.euler_char(&class(&[1])), Err(LatticeError::Parity { .. })));
        assert!(matches!(
            SurfaceLattice::new(vec!["A".into(), "B".into()], vec![vec![0, 1], vec![2, 0]], class(&[0, 0])),
            Err(LatticeError::NotSymmetric(1, 0))
        ));
    }

    #[test]
    fn format_and_parse() {
        let l = SurfaceLattice::blowup(6);
        let d = class(&[2, 0, 0, -1, -1, -1, 0]);
        let s = l.format_class(&d);
        assert_eq!(s, "2H-E3-E4-E5");
        assert_eq!(l.parse_class(&s), Some(d));
        assert_eq!(l.parse_class("O"), Some(DivisorClass::zero(7)));
        assert_eq!(l.parse_class("E2"), Some(DivisorClass::basis(7, 2)));
        assert_eq!(l.parse_class("3X"), None);
    }
}
