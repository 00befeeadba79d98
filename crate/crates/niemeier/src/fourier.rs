//! Truncated Fourier expansions of Siegel modular forms: half-integral
//! index matrices, Sturm boxes, the Siegel and theta operators, truncated
//! multiplication, congruence comparison and diagonal restriction.
//!
//! Expansions carry an explicit coverage box; querying outside it is an
//! error rather than a silent zero, so a congruence verdict can never rest
//! on indices that were never computed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{int, rat, residue_mod, Rational};

/// Half-integral symmetric n x n matrix T (n <= 3), stored integrally:
/// `diag` holds t_ii and `off` holds b_ij = 2 t_ij in the order
/// (b12, b13, b23). Unused slots are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IndexMatrix {
    pub degree: u8,
    pub diag: [i64; 3],
    pub off: [i64; 3],
}

impl IndexMatrix {
    pub fn zero(degree: u8) -> Self {
        assert!((1..=3).contains(&degree));
        IndexMatrix { degree, diag: [0; 3], off: [0; 3] }
    }

    pub fn d1(t: i64) -> Self {
        IndexMatrix { degree: 1, diag: [t, 0, 0], off: [0; 3] }
    }

    /// Degree-2 abbreviation [a,b,c] = (a, b/2; b/2, c).
    pub fn d2(a: i64, b: i64, c: i64) -> Self {
        IndexMatrix { degree: 2, diag: [a, c, 0], off: [b, 0, 0] }
    }

    /// Degree-3 abbreviation [a,b,c;d,e,f]: diagonal (a,b,c), with
    /// 2t_12 = f, 2t_13 = e, 2t_23 = d.
    pub fn d3(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Self {
        IndexMatrix { degree: 3, diag: [a, b, c], off: [f, e, d] }
    }

    pub fn from_parts(degree: u8, diag: [i64; 3], off: [i64; 3]) -> Self {
        IndexMatrix { degree, diag, off }
    }

    /// The integral matrix 2T.
    pub fn two_t(&self) -> Vec<Vec<i64>> {
        let n = self.degree as usize;
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            m[i][i] = 2 * self.diag[i];
        }
        if n >= 2 {
            m[0][1] = self.off[0];
            m[1][0] = self.off[0];
        }
        if n == 3 {
            m[0][2] = self.off[1];
            m[2][0] = self.off[1];
            m[1][2] = self.off[2];
            m[2][1] = self.off[2];
        }
        m
    }

    /// Rebuild from an integral 2T matrix; fails if the diagonal is odd.
    pub fn from_two_t(m: &[Vec<i64>]) -> Option<Self> {
        let n = m.len();
        if !(1..=3).contains(&n) {
            return None;
        }
        let mut diag = [0i64; 3];
        for i in 0..n {
            if m[i][i] % 2 != 0 {
                return None;
            }
            diag[i] = m[i][i] / 2;
        }
        let mut off = [0i64; 3];
        if n >= 2 {
            off[0] = m[0][1];
        }
        if n == 3 {
            off[1] = m[0][2];
            off[2] = m[1][2];
        }
        Some(IndexMatrix { degree: n as u8, diag, off })
    }

    /// det(2T) as an exact integer.
    pub fn det_two_t(&self) -> i64 {
        let m = self.two_t();
        match self.degree {
            1 => m[0][0],
            2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
            3 => {
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            }
            _ => unreachable!(),
        }
    }

    /// det(T) = det(2T) / 2^n as an exact rational.
    pub fn det_t(&self) -> Rational {
        rat(self.det_two_t(), 1 << self.degree)
    }

    /// Positive semidefiniteness of the half-integral matrix, via
    /// nonnegativity of all principal minors of 2T.
    pub fn is_psd(&self) -> bool {
        let m = self.two_t();
        let n = self.degree as usize;
        for i in 0..n {
            if m[i][i] < 0 {
                return false;
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if m[i][i] * m[j][j] - m[i][j] * m[i][j] < 0 {
                    return false;
                }
            }
        }
        if n == 3 && self.det_two_t() < 0 {
            return false;
        }
        true
    }

    /// Rank of T (assumes psd).
    pub fn rank(&self) -> u8 {
        let m = self.two_t();
        let n = self.degree as usize;
        let any_nonzero = (0..n).any(|i| (0..n).any(|j| m[i][j] != 0));
        if !any_nonzero {
            return 0;
        }
        let mut rank = 1u8;
        for i in 0..n {
            for j in i + 1..n {
                if m[i][i] * m[j][j] - m[i][j] * m[i][j] > 0 {
                    rank = 2;
                }
            }
        }
        if n == 3 && self.det_two_t() > 0 {
            rank = 3;
        }
        rank
    }

    /// T extended by a zero row and column (degree + 1).
    pub fn extend_zero(&self) -> Self {
        assert!(self.degree < 3);
        match self.degree {
            1 => IndexMatrix::from_parts(2, [self.diag[0], 0, 0], [0; 3]),
            2 => IndexMatrix::from_parts(3, [self.diag[0], self.diag[1], 0], [self.off[0], 0, 0]),
            _ => unreachable!(),
        }
    }

    /// Componentwise difference, if still a valid psd index.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if self.degree != other.degree {
            return None;
        }
        let t = IndexMatrix {
            degree: self.degree,
            diag: [
                self.diag[0] - other.diag[0],
                self.diag[1] - other.diag[1],
                self.diag[2] - other.diag[2],
            ],
            off: [
                self.off[0] - other.off[0],
                self.off[1] - other.off[1],
                self.off[2] - other.off[2],
            ],
        };
        t.is_psd().then_some(t)
    }

    /// Conjugation by a permutation of the n coordinates.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.degree as usize;
        let m = self.two_t();
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = m[perm[i]][perm[j]];
            }
        }
        IndexMatrix::from_two_t(&out).expect("permutation preserves integrality")
    }

    /// Simultaneous sign flips of the coordinates.
    pub fn sign_flipped(&self, signs: &[i64]) -> Self {
        let n = self.degree as usize;
        let m = self.two_t();
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = m[i][j] * signs[i] * signs[j];
            }
        }
        IndexMatrix::from_two_t(&out).expect("sign flips preserve integrality")
    }

    /// Canonical 6-slot encoding (t11, t22, t33, b12, b13, b23).
    pub fn encode6(&self) -> [i64; 6] {
        [
            self.diag[0], self.diag[1], self.diag[2],
            self.off[0], self.off[1], self.off[2],
        ]
    }

    pub fn decode6(degree: u8, e: [i64; 6]) -> Self {
        IndexMatrix {
            degree,
            diag: [e[0], e[1], e[2]],
            off: [e[3], e[4], e[5]],
        }
    }

    /// Per-degree compact encoding used in JSON exports.
    pub fn encode_compact(&self) -> Vec<i64> {
        match self.degree {
            1 => vec![self.diag[0]],
            2 => vec![self.diag[0], self.diag[1], self.off[0]],
            _ => self.encode6().to_vec(),
        }
    }
}

impl fmt::Display for IndexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            1 => write!(f, "[{}]", self.diag[0]),
            2 => write!(f, "[{},{},{}]", self.diag[0], self.off[0], self.diag[1]),
            _ => write!(
                f,
                "[{},{},{};{},{},{}]",
                self.diag[0], self.diag[1], self.diag[2],
                self.off[2], self.off[1], self.off[0]
            ),
        }
    }
}

/// All psd indices of the given degree with the given diagonal.
pub fn psd_with_diagonal(degree: u8, diag: &[i64]) -> Vec<IndexMatrix> {
    let n = degree as usize;
    assert_eq!(diag.len(), n);
    let mut d = [0i64; 3];
    d[..n].copy_from_slice(diag);
    let bound = |i: usize, j: usize| -> i64 {
        // |b_ij| <= 2 sqrt(t_ii t_jj)
        let p = d[i] * d[j];
        let mut b = 0i64;
        while (b + 1) * (b + 1) <= 4 * p {
            b += 1;
        }
        b
    };
    let mut out = Vec::new();
    match n {
        1 => out.push(IndexMatrix::from_parts(1, d, [0; 3])),
        2 => {
            let m = bound(0, 1);
            for b12 in -m..=m {
                let t = IndexMatrix::from_parts(2, d, [b12, 0, 0]);
                if t.is_psd() {
                    out.push(t);
                }
            }
        }
        3 => {
            let (m12, m13, m23) = (bound(0, 1), bound(0, 2), bound(1, 2));
            for b12 in -m12..=m12 {
                for b13 in -m13..=m13 {
                    for b23 in -m23..=m23 {
                        let t = IndexMatrix::from_parts(3, d, [b12, b13, b23]);
                        if t.is_psd() {
                            out.push(t);
                        }
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    out
}

/// All psd indices with diagonal entries bounded by `max_tii`.
pub fn diag_box(degree: u8, max_tii: i64) -> Vec<IndexMatrix> {
    let n = degree as usize;
    let mut out = Vec::new();
    let mut diag = vec![0i64; n];
    loop {
        out.extend(psd_with_diagonal(degree, &diag));
        // Odometer over the diagonal.
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            diag[i] += 1;
            if diag[i] <= max_tii {
                break;
            }
            diag[i] = 0;
            i += 1;
        }
    }
}

/// Diagonal bound of the Sturm box: floor((4/3)^n * k / 16).
pub fn sturm_diagonal_bound(degree: u8, weight: i64) -> i64 {
    let n = degree as u32;
    let b = rat(4, 3).pow(n as i32) * rat(weight, 16);
    num::ToPrimitive::to_i64(&b.floor().to_integer()).expect("small bound")
}

/// The Sturm box for (degree, weight): every psd half-integral T with all
/// diagonal entries at most (4/3)^n k/16.
pub fn sturm_box(degree: u8, weight: i64) -> Vec<IndexMatrix> {
    diag_box(degree, sturm_diagonal_bound(degree, weight))
}

/// Finite Fourier expansion with an explicit coverage box.
#[derive(Debug, Clone)]
pub struct FourierExpansion {
    degree: u8,
    weight: i64,
    coeffs: BTreeMap<IndexMatrix, Rational>,
}

impl FourierExpansion {
    /// Build from explicit entries; the box is exactly the key set.
    pub fn from_entries(
        degree: u8,
        weight: i64,
        entries: impl IntoIterator<Item = (IndexMatrix, Rational)>,
    ) -> Self {
        let coeffs: BTreeMap<_, _> = entries.into_iter().collect();
        for t in coeffs.keys() {
            assert_eq!(t.degree, degree, "index degree mismatch");
        }
        FourierExpansion { degree, weight, coeffs }
    }

    /// Zero expansion covering `box_`.
    pub fn zeros(degree: u8, weight: i64, box_: &[IndexMatrix]) -> Self {
        Self::from_entries(degree, weight, box_.iter().map(|t| (*t, Rational::zero())))
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// Same coefficients, re-tagged weight. Used when a congruence theorem
    /// licenses treating a form as one of different weight mod p.
    pub fn with_weight(&self, weight: i64) -> Self {
        let mut f = self.clone();
        f.weight = weight;
        f
    }

    pub fn covered(&self) -> impl Iterator<Item = &IndexMatrix> {
        self.coeffs.keys()
    }

    pub fn covers(&self, t: &IndexMatrix) -> bool {
        self.coeffs.contains_key(t)
    }

    pub fn covered_set(&self) -> BTreeSet<IndexMatrix> {
        self.coeffs.keys().copied().collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&IndexMatrix, &Rational)> {
        self.coeffs.iter()
    }

    /// Coefficient at T; out-of-box queries are hard errors.
    pub fn get(&self, t: &IndexMatrix) -> Result<&Rational> {
        self.coeffs.get(t).ok_or(Error::OutOfBox(*t))
    }

    pub fn set(&mut self, t: IndexMatrix, v: Rational) {
        assert_eq!(t.degree, self.degree);
        self.coeffs.insert(t, v);
    }

    /// True if every covered coefficient is an integer.
    pub fn all_integral(&self) -> std::result::Result<(), (IndexMatrix, Rational)> {
        for (t, v) in &self.coeffs {
            if !v.denom().is_one() {
                return Err((*t, v.clone()));
            }
        }
        Ok(())
    }

    /// Restriction to a sub-box.
    pub fn restrict(&self, box_: &[IndexMatrix]) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for t in box_ {
            entries.insert(*t, self.get(t)?.clone());
        }
        Ok(FourierExpansion { degree: self.degree, weight: self.weight, coeffs: entries })
    }

    /// Exact linear combination; box is the intersection of all boxes,
    /// weight is taken from the first term (all must agree).
    pub fn linear_combination(terms: &[(Rational, &FourierExpansion)]) -> Result<Self> {
        assert!(!terms.is_empty());
        let degree = terms[0].1.degree;
        let weight = terms[0].1.weight;
        for (_, f) in terms {
            if f.degree != degree {
                return Err(Error::DegreeMismatch(degree, f.degree));
            }
            if f.weight != weight {
                return Err(Error::WeightMismatch(weight, f.weight));
            }
        }
        let mut box_: BTreeSet<IndexMatrix> = terms[0].1.covered_set();
        for (_, f) in &terms[1..] {
            box_ = box_.intersection(&f.covered_set()).copied().collect();
        }
        let mut coeffs = BTreeMap::new();
        for t in box_ {
            let mut acc = Rational::zero();
            for (c, f) in terms {
                acc += c * f.get(&t)?;
            }
            coeffs.insert(t, acc);
        }
        Ok(FourierExpansion { degree, weight, coeffs })
    }

    /// Siegel operator: a(PhiF; T') = a(F; T' extended by a zero row/column).
    pub fn siegel_operator(&self) -> Result<Self> {
        assert!(self.degree >= 2, "degree-1 Siegel operator is evaluation at infinity");
        let out_degree = self.degree - 1;
        let mut coeffs = BTreeMap::new();
        for (t, v) in &self.coeffs {
            // Keep T whose last row/column vanishes; it is the extension of
            // a unique lower-degree index.
            let keep = match self.degree {
                2 => t.diag[1] == 0 && t.off[0] == 0,
                3 => t.diag[2] == 0 && t.off[1] == 0 && t.off[2] == 0,
                _ => unreachable!(),
            };
            if keep {
                let reduced = match out_degree {
                    1 => IndexMatrix::d1(t.diag[0]),
                    2 => IndexMatrix::from_parts(2, [t.diag[0], t.diag[1], 0], [t.off[0], 0, 0]),
                    _ => unreachable!(),
                };
                coeffs.insert(reduced, v.clone());
            }
        }
        Ok(FourierExpansion { degree: out_degree, weight: self.weight, coeffs })
    }

    /// Theta operator: coefficient at T becomes a(F;T) * det(T).
    pub fn theta_operator(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(t, v)| (*t, v * t.det_t()))
            .collect();
        FourierExpansion { degree: self.degree, weight: self.weight, coeffs }
    }

    /// Truncated product on `box_`. Errors when the factor boxes do not
    /// dominate the convolution needs of some target index.
    pub fn multiply(&self, other: &Self, box_: &[IndexMatrix]) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut coeffs = BTreeMap::new();
        for t in box_ {
            let mut acc = Rational::zero();
            for t1 in decompositions(t) {
                let t2 = t.checked_sub(&t1).expect("decomposition is psd");
                let a = self.get(&t1).map_err(|_| {
                    Error::InsufficientCoverage(format!(
                        "left factor misses {t1} needed for {t}"
                    ))
                })?;
                let b = other.get(&t2).map_err(|_| {
                    Error::InsufficientCoverage(format!(
                        "right factor misses {t2} needed for {t}"
                    ))
                })?;
                acc += a * b;
            }
            coeffs.insert(*t, acc);
        }
        Ok(FourierExpansion {
            degree: self.degree,
            weight: self.weight + other.weight,
            coeffs,
        })
    }

    /// Coefficient of prod q_ii^{d_i} in the diagonal restriction: the sum
    /// of a(F;T) over all psd T with the given diagonal.
    pub fn diagonal_restriction_coeff(&self, diag: &[i64]) -> Result<Rational> {
        let mut acc = Rational::zero();
        for t in psd_with_diagonal(self.degree, diag) {
            acc += self.get(&t).map_err(|_| {
                Error::InsufficientCoverage(format!("diagonal restriction needs {t}"))
            })?;
        }
        Ok(acc)
    }
}

/// All psd T1 with T - T1 psd, for a psd target T.
fn decompositions(t: &IndexMatrix) -> Vec<IndexMatrix> {
    let n = t.degree as usize;
    let mut out = Vec::new();
    let mut diag = vec![0i64; n];
    loop {
        for t1 in psd_with_diagonal(t.degree, &diag) {
            if t.checked_sub(&t1).is_some() {
                out.push(t1);
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            diag[i] += 1;
            if diag[i] <= t.diag[i] {
                break;
            }
            diag[i] = 0;
            i += 1;
        }
    }
}

/// Per-index congruence comparison on a box. Returns the list of indices
/// where the residues differ, with the difference in [0, m).
pub fn congruent_mod(
    f: &FourierExpansion,
    g: &FourierExpansion,
    m: u64,
    box_: &[IndexMatrix],
) -> Result<Vec<(IndexMatrix, u64)>> {
    assert!(m >= 2);
    if f.degree != g.degree {
        return Err(Error::DegreeMismatch(f.degree, g.degree));
    }
    let mut bad = Vec::new();
    for t in box_ {
        let a = f.get(t)?;
        let b = g.get(t)?;
        let ra = residue_mod(a, m).ok_or(Error::NotIntegralMod { t: *t, modulus: m })?;
        let rb = residue_mod(b, m).ok_or(Error::NotIntegralMod { t: *t, modulus: m })?;
        if ra != rb {
            bad.push((*t, (ra + m - rb) % m));
        }
    }
    Ok(bad)
}

/// Scale by 2^degree-dependent factor and reduce mod p: used by theta-kernel
/// checks to clear half-integral determinant denominators.
pub fn scaled_residue(v: &Rational, scale: i64, m: u64) -> Option<u64> {
    residue_mod(&(v * int(scale)), m)
}

pub fn big_residue(v: &BigInt, m: u64) -> u64 {
    let r = v % BigInt::from(m);
    let r = if r.is_negative() { r + BigInt::from(m) } else { r };
    num::ToPrimitive::to_u64(&r).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    #[test]
    fn sturm_bounds() {
        assert_eq!(sturm_diagonal_bound(1, 12), 1);
        assert_eq!(sturm_diagonal_bound(2, 12), 1);
        assert_eq!(sturm_diagonal_bound(3, 12), 1); // (4/3)^3 * 12/16 = 16/9
        assert_eq!(sturm_diagonal_bound(1, 4), 0);
    }

    #[test]
    fn sturm_box_degree1() {
        let b = sturm_box(1, 12);
        assert_eq!(b, vec![IndexMatrix::d1(0), IndexMatrix::d1(1)]);
    }

    #[test]
    fn psd_and_rank() {
        assert!(IndexMatrix::d2(1, 1, 1).is_psd());
        assert!(IndexMatrix::d2(1, 2, 1).is_psd()); // det 0, rank 1
        assert!(!IndexMatrix::d2(1, 3, 1).is_psd());
        assert_eq!(IndexMatrix::d2(1, 2, 1).rank(), 1);
        assert_eq!(IndexMatrix::d2(1, 1, 1).rank(), 2);
        assert_eq!(IndexMatrix::zero(3).rank(), 0);
        assert_eq!(IndexMatrix::d3(1, 1, 1, 1, 1, 1).rank(), 3);
        assert_eq!(IndexMatrix::d3(1, 1, 1, 2, 2, 2).rank(), 1);
    }

    #[test]
    fn det_values() {
        // [4,2,6] and [2,2,12] both have det(2T) = 4 * 23.
        assert_eq!(IndexMatrix::d2(4, 2, 6).det_two_t(), 92);
        assert_eq!(IndexMatrix::d2(4, 2, 6).det_t(), int(23));
        assert_eq!(IndexMatrix::d2(2, 2, 12).det_t(), int(23));
        assert_eq!(IndexMatrix::d2(1, 1, 1).det_t(), rat(3, 4));
    }

    #[test]
    fn degree3_sturm_box_contains_paper_indices() {
        let b = sturm_box(3, 12);
        assert!(b.contains(&IndexMatrix::d3(1, 1, 1, 1, 1, 1)));
        assert!(b.contains(&IndexMatrix::d3(1, 1, 1, 0, 0, 1)));
        assert!(b.contains(&IndexMatrix::d3(1, 1, 1, 0, 0, 0)));
        // every element psd with t_ii <= 1
        for t in &b {
            assert!(t.is_psd());
            assert!(t.diag.iter().all(|&x| x <= 1));
        }
    }

    #[test]
    fn multiply_by_one_is_identity() {
        let box_ = sturm_box(2, 12);
        let mut f = FourierExpansion::zeros(2, 12, &box_);
        f.set(IndexMatrix::d2(1, 1, 1), int(7));
        f.set(IndexMatrix::zero(2), int(1));
        let mut one = FourierExpansion::zeros(2, 0, &box_);
        one.set(IndexMatrix::zero(2), int(1));
        let prod = f.multiply(&one, &box_).unwrap();
        for t in &box_ {
            assert_eq!(prod.get(t).unwrap(), f.get(t).unwrap());
        }
        assert_eq!(prod.weight(), 12);
    }

    #[test]
    fn out_of_box_is_error() {
        let f = FourierExpansion::zeros(2, 12, &sturm_box(2, 12));
        assert!(matches!(
            f.get(&IndexMatrix::d2(5, 0, 5)),
            Err(Error::OutOfBox(_))
        ));
    }

    #[test]
    fn siegel_of_constant_one() {
        let box_ = sturm_box(2, 12);
        let mut one = FourierExpansion::zeros(2, 12, &box_);
        one.set(IndexMatrix::zero(2), int(1));
        let phi = one.siegel_operator().unwrap();
        assert_eq!(phi.degree(), 1);
        assert_eq!(*phi.get(&IndexMatrix::zero(1)).unwrap(), int(1));
        assert_eq!(*phi.get(&IndexMatrix::d1(1)).unwrap(), int(0));
    }

    #[test]
    fn theta_operator_kills_rank_deficient() {
        let box_ = sturm_box(2, 12);
        let mut f = FourierExpansion::zeros(2, 12, &box_);
        for t in &box_ {
            f.set(*t, int(5));
        }
        let th = f.theta_operator();
        for t in &box_ {
            if t.rank() < 2 {
                assert!(th.get(t).unwrap().is_zero(), "nonzero at {t}");
            }
        }
        assert_eq!(*th.get(&IndexMatrix::d2(1, 1, 1)).unwrap(), int(5) * rat(3, 4));
    }

    #[test]
    fn congruence_reflexive() {
        let box_ = sturm_box(2, 12);
        let mut f = FourierExpansion::zeros(2, 12, &box_);
        f.set(IndexMatrix::d2(1, 1, 1), int(97152));
        let bad = congruent_mod(&f, &f, 23, &box_).unwrap();
        assert!(bad.is_empty());
    }

    #[test]
    fn non_integral_mod_rejected() {
        let box_ = vec![IndexMatrix::zero(1)];
        let mut f = FourierExpansion::zeros(1, 12, &box_);
        f.set(IndexMatrix::zero(1), rat(1, 23));
        let g = FourierExpansion::zeros(1, 12, &box_);
        assert!(matches!(
            congruent_mod(&f, &g, 23, &box_),
            Err(Error::NotIntegralMod { .. })
        ));
    }

    #[test]
    fn permutation_and_sign_transforms() {
        let t = IndexMatrix::d3(1, 1, 1, 0, 1, 1); // b12=1, b13=1, b23=0
        let p = t.permuted(&[1, 0, 2]);
        assert_eq!(p.off, [1, 0, 1]);
        let s = t.sign_flipped(&[-1, 1, 1]);
        assert_eq!(s.off, [-1, -1, 0]);
    }
}
