//! Fixed points of complex conjugation on the Jacobian torus `ℂ^g / (ℤ^g + Pℤ^g)`.
//!
//! A point is written `z = x + P y` with real `x, y`, so the torus is
//! `ℝ^{2g} / ℤ^{2g}` in `(x, y)`. When the invariant half of the homology
//! basis is fixed by σ, the lift of the involution is plain conjugation and
//! `z̄ = x + P̄ y = (x + 2·Re P·y) + P(-y)`. Everything below is decided in
//! exact rationals from the integer matrix `2·Re P`; only
//! [`brute_force_fixed_scan`] touches floating point.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::gf2::{gf2_kernel, span};
use crate::homology::{a_matrix, HomologyError};
use crate::matrix::IntegerMatrix;
use crate::{check_genus, GenusError, Parity};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TorusError {
    #[error(transparent)]
    Genus(#[from] GenusError),
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("real part must be symmetric")]
    NotSymmetric,
    #[error("real part is not half-integral: entry ({row}, {col}) = {value}")]
    NotHalfIntegral { row: usize, col: usize, value: BigRational },
    #[error("point has dimensions ({x}, {y}), torus has genus {genus}")]
    PointDimension { genus: usize, x: usize, y: usize },
    #[error("imaginary part is not positive definite: leading minor {index} = {minor}")]
    NotPositiveDefinite { index: usize, minor: f64 },
    #[error("scan grid must be even and at least 4, got {0}")]
    BadGrid(usize),
    #[error("scan tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("lattice search bound must be positive")]
    BadBound,
}

impl From<HomologyError> for TorusError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Genus(g) => TorusError::Genus(g),
            other => unreachable!("a_matrix only fails on genus validation: {other}"),
        }
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// The real part of the period matrix, stored doubled so it stays integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RealPartJson")]
pub struct RealPartMatrix {
    genus: usize,
    parity: Parity,
    re2: IntegerMatrix,
}

#[derive(Deserialize)]
struct RealPartJson {
    genus: usize,
    parity: Parity,
    re2: IntegerMatrix,
}

impl TryFrom<RealPartJson> for RealPartMatrix {
    type Error = TorusError;

    fn try_from(j: RealPartJson) -> Result<Self, TorusError> {
        RealPartMatrix::from_doubled(j.genus, j.parity, j.re2)
    }
}

impl RealPartMatrix {
    /// Builds `Re P` from the integer matrix `2·Re P`.
    pub fn from_doubled(genus: usize, parity: Parity, re2: IntegerMatrix) -> Result<Self, TorusError> {
        check_genus(genus, parity)?;
        if re2.shape() != (genus, genus) {
            return Err(TorusError::Shape { expected: genus, rows: re2.rows(), cols: re2.cols() });
        }
        if !re2.is_symmetric() {
            return Err(TorusError::NotSymmetric);
        }
        Ok(RealPartMatrix { genus, parity, re2 })
    }

    /// Builds `Re P` from rational entries, rejecting anything outside `½ℤ`.
    pub fn from_rational(genus: usize, parity: Parity, entries: &[Vec<BigRational>]) -> Result<Self, TorusError> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if rows != genus || entries.iter().any(|r| r.len() != genus) {
            return Err(TorusError::Shape { expected: genus, rows, cols });
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let mut re2 = IntegerMatrix::zeros(genus, genus);
        for (i, row) in entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let d = v * &two;
                if !d.is_integer() {
                    return Err(TorusError::NotHalfIntegral { row: i, col: j, value: v.clone() });
                }
                re2[(i, j)] = d.to_integer();
            }
        }
        Self::from_doubled(genus, parity, re2)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `2·Re P`.
    pub fn doubled(&self) -> &IntegerMatrix {
        &self.re2
    }

    /// `Re P` as exact rationals.
    pub fn entries(&self) -> Vec<Vec<BigRational>> {
        (0..self.genus)
            .map(|i| self.re2.row(i).iter().map(|e| BigRational::new(e.clone(), BigInt::from(2))).collect())
            .collect()
    }

    fn entries_f64(&self) -> Vec<Vec<f64>> {
        (0..self.genus)
            .map(|i| self.re2.row(i).iter().map(|e| e.to_f64().unwrap_or(f64::NAN) / 2.0).collect())
            .collect()
    }
}

/// `Re P` for the period matrix in the basis where every `γ_j` is fixed.
/// Both parities give `Re P = ½A`; for even genus that is `-I - ½K`.
pub fn canonical_real_part(genus: usize, parity: Parity) -> Result<RealPartMatrix, TorusError> {
    let a = a_matrix(genus, parity)?;
    RealPartMatrix::from_doubled(genus, parity, a)
}

/// `Im P`: symmetric and positive definite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImagPartMatrix {
    entries: Vec<Vec<f64>>,
}

impl ImagPartMatrix {
    pub fn new(entries: Vec<Vec<f64>>) -> Result<Self, TorusError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) || n == 0 {
            return Err(TorusError::Shape {
                expected: n,
                rows: n,
                cols: entries.first().map_or(0, Vec::len),
            });
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(TorusError::NotSymmetric);
                }
            }
        }
        let im = ImagPartMatrix { entries };
        im.check_minors(0.0)?;
        Ok(im)
    }

    pub fn identity(genus: usize) -> Self {
        let entries = (0..genus).map(|i| (0..genus).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        ImagPartMatrix { entries }
    }

    pub fn genus(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    /// Leading principal minors, by Gaussian elimination without pivoting
    /// (the k-th minor is the product of the first k pivots).
    pub fn leading_minors(&self) -> Vec<f64> {
        let n = self.entries.len();
        let mut a = self.entries.clone();
        let mut minors = Vec::with_capacity(n);
        let mut acc = 1.0;
        for k in 0..n {
            acc *= a[k][k];
            minors.push(acc);
            if a[k][k] == 0.0 {
                minors.extend(std::iter::repeat(0.0).take(n - k - 1));
                break;
            }
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
        minors
    }

    fn check_minors(&self, tol: f64) -> Result<(), TorusError> {
        for (index, minor) in self.leading_minors().into_iter().enumerate() {
            if minor.is_nan() || minor <= tol {
                return Err(TorusError::NotPositiveDefinite { index: index + 1, minor });
            }
        }
        Ok(())
    }
}

/// A point of `ℝ^{2g} / ℤ^{2g}`, meaning `z = x + P y`. Coordinates are kept
/// reduced into `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPointXY {
    x: Vec<BigRational>,
    y: Vec<BigRational>,
}

impl TorusPointXY {
    pub fn new(x: Vec<BigRational>, y: Vec<BigRational>) -> Self {
        TorusPointXY { x: x.iter().map(frac).collect(), y: y.iter().map(frac).collect() }
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_ratios(x: &[(i64, i64)], y: &[(i64, i64)]) -> Self {
        let conv = |v: &[(i64, i64)]| {
            v.iter().map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d))).collect()
        };
        Self::new(conv(x), conv(y))
    }

    pub fn origin(genus: usize) -> Self {
        TorusPointXY { x: vec![BigRational::zero(); genus], y: vec![BigRational::zero(); genus] }
    }

    pub fn x(&self) -> &[BigRational] {
        &self.x
    }

    pub fn y(&self) -> &[BigRational] {
        &self.y
    }

    /// Translates by the lattice vector `(n, m)`; the result is the same class.
    pub fn translate(&self, n: &[i64], m: &[i64]) -> Self {
        let shift = |v: &[BigRational], s: &[i64]| {
            v.iter().zip(s).map(|(a, b)| a + BigRational::from_integer(BigInt::from(*b))).collect()
        };
        // construct unreduced, then reduce
        Self::new(shift(&self.x, n), shift(&self.y, m))
    }

    fn check_dim(&self, genus: usize) -> Result<(), TorusError> {
        if self.x.len() != genus || self.y.len() != genus {
            return Err(TorusError::PointDimension { genus, x: self.x.len(), y: self.y.len() });
        }
        Ok(())
    }
}

impl fmt::Display for TorusPointXY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigRational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        write!(f, "x=({}) y=({})", join(&self.x), join(&self.y))
    }
}

/// `(x, y) ↦ (x + 2·Re P·y, -y)` modulo 1: the conjugation `z ↦ z̄`.
pub fn involution_xy(rp: &RealPartMatrix, p: &TorusPointXY) -> Result<TorusPointXY, TorusError> {
    p.check_dim(rp.genus)?;
    let g = rp.genus;
    let x = (0..g)
        .map(|i| {
            let shift: BigRational = (0..g)
                .map(|j| BigRational::from_integer(rp.re2[(i, j)].clone()) * &p.y[j])
                .sum();
            &p.x[i] + shift
        })
        .collect();
    let y = p.y.iter().map(|v| -v).collect();
    Ok(TorusPointXY::new(x, y))
}

/// Connected components of the fixed locus. Component `i` is the real
/// `g`-torus `{(x, offset_i)}`; offset 0 always comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedLocus {
    pub genus: usize,
    pub component_offsets: Vec<Vec<BigRational>>,
}

impl FixedLocus {
    pub fn count(&self) -> usize {
        self.component_offsets.len()
    }
}

impl Serialize for FixedLocus {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Report {
            count: usize,
            offsets: Vec<Vec<String>>,
        }
        Report {
            count: self.count(),
            offsets: self
                .component_offsets
                .iter()
                .map(|o| o.iter().map(ToString::to_string).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

/// Solves `z̄ ≡ z` on the torus. Fixed points are the `(x, y)` with `2y ∈ ℤ^g`
/// and `2·Re P·y ∈ ℤ^g`; writing `y = k/2` the second condition is
/// `(2·Re P)·k ≡ 0 (mod 2)`, so components correspond to that GF(2) kernel.
pub fn fixed_components(rp: &RealPartMatrix) -> FixedLocus {
    let g = rp.genus;
    let basis = gf2_kernel(&rp.re2);
    let mut offsets: Vec<Vec<BigRational>> = span(&basis, g)
        .into_iter()
        .map(|k| k.into_iter().map(|b| if b { half() } else { BigRational::zero() }).collect())
        .collect();
    offsets.sort();
    FixedLocus { genus: g, component_offsets: offsets }
}

/// The half-period offset `(x = 0, y = (½, 0, …, 0))` separating the second
/// component from the first when there are exactly two components, else `None`.
pub fn second_component_offset(rp: &RealPartMatrix) -> Option<TorusPointXY> {
    let locus = fixed_components(rp);
    if locus.count() != 2 {
        return None;
    }
    let offset = locus.component_offsets.into_iter().find(|o| o.iter().any(|v| !v.is_zero()))?;
    Some(TorusPointXY { x: vec![BigRational::zero(); rp.genus], y: offset })
}

/// Whether `p` is fixed by the involution. Points of the wrong dimension are
/// never fixed.
pub fn is_fixed_point(rp: &RealPartMatrix, p: &TorusPointXY) -> bool {
    involution_xy(rp, p).map(|q| &q == p).unwrap_or(false)
}

/// Index into [`FixedLocus::component_offsets`] of the component through `p`.
pub fn component_of(rp: &RealPartMatrix, p: &TorusPointXY) -> Option<usize> {
    if !is_fixed_point(rp, p) {
        return None;
    }
    fixed_components(rp).component_offsets.iter().position(|o| o.as_slice() == p.y.as_slice())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanParams {
    pub grid: usize,
    pub lattice_bound: i64,
    pub tol: f64,
}

impl Default for ScanParams {
    fn default() -> Self {
        ScanParams { grid: 8, lattice_bound: 2, tol: 1e-9 }
    }
}

/// Smallest lattice bound (at least 2) with which the scan sees every
/// component of `rp`: the needed `|n_i|` is at most the `i`-th absolute row
/// sum of `Re P`.
pub fn required_lattice_bound(rp: &RealPartMatrix) -> i64 {
    let re2 = rp.doubled();
    let doubled_row_sum = (0..re2.rows())
        .map(|i| re2.row(i).iter().map(|e| e.abs().to_i64().unwrap_or(i64::MAX / 4)).sum::<i64>())
        .max()
        .unwrap_or(0);
    2.max((doubled_row_sum + 1) / 2 + 1)
}

/// A grid point `(x, y) = (x_num, y_num) / grid`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridPoint {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub params: ScanParams,
    pub points_scanned: usize,
    pub accepted: Vec<GridPoint>,
    /// Distinct `y` offsets among accepted points, each coordinate rounded to
    /// the nearest half and reduced mod 1.
    pub offsets: Vec<Vec<f64>>,
    pub count: usize,
}

/// Numerical oracle for [`fixed_components`]: evaluates
/// `min_{n,m} ‖z̄ − z − n − Pm‖∞` on every grid point with `P = Re P + i·Im P`
/// and `|n_i|, |m_i| ≤ lattice_bound`, then clusters accepted points by `y`.
///
/// Grid points satisfy `y ∈ [0, 1)`, so a fixed point needs `m = -2y` and
/// `n = -Re P·m`. The bound must cover the absolute row sums of `Re P`
/// (2 suffices for the canonical real parts) or components are missed.
pub fn brute_force_fixed_scan(
    rp: &RealPartMatrix,
    im: &ImagPartMatrix,
    params: ScanParams,
) -> Result<ScanResult, TorusError> {
    let g = rp.genus;
    if im.genus() != g {
        return Err(TorusError::Shape { expected: g, rows: im.genus(), cols: im.genus() });
    }
    if params.grid < 4 || params.grid % 2 != 0 {
        return Err(TorusError::BadGrid(params.grid));
    }
    if !(params.tol > 0.0) {
        return Err(TorusError::BadTolerance(params.tol));
    }
    if params.lattice_bound < 1 {
        return Err(TorusError::BadBound);
    }
    im.check_minors(params.tol)?;

    let re = rp.entries_f64();
    let period: Vec<Vec<Complex64>> = (0..g)
        .map(|i| (0..g).map(|j| Complex64::new(re[i][j], im.entries[i][j])).collect())
        .collect();
    let apply = |v: &[f64]| -> Vec<Complex64> {
        (0..g).map(|i| (0..g).map(|j| period[i][j] * v[j]).sum()).collect()
    };

    let b = params.lattice_bound;
    let side = (2 * b + 1) as usize;
    let lattice_translates: Vec<Vec<Complex64>> = (0..side.pow(g as u32))
        .map(|idx| {
            let m: Vec<f64> = digits(idx, side, g).into_iter().map(|d| d as f64 - b as f64).collect();
            apply(&m)
        })
        .collect();

    let grid = params.grid;
    let cells = grid.pow(g as u32);
    let step = 1.0 / grid as f64;
    let accepted: Vec<GridPoint> = (0..cells)
        .into_par_iter()
        .flat_map_iter(|yi| {
            let y_num = digits(yi, grid, g);
            let y: Vec<f64> = y_num.iter().map(|&k| k as f64 * step).collect();
            let py = apply(&y);
            let lattice_translates = &lattice_translates;
            (0..cells).filter_map(move |xi| {
                let x_num = digits(xi, grid, g);
                let z: Vec<Complex64> =
                    (0..g).map(|i| Complex64::new(x_num[i] as f64 * step, 0.0) + py[i]).collect();
                let fixed = lattice_translates.iter().any(|pm| {
                    let resid = (0..g)
                        .map(|i| {
                            let w = z[i].conj() - z[i] - pm[i];
                            let n = w.re.round().clamp(-(b as f64), b as f64);
                            (w - n).norm()
                        })
                        .fold(0.0, f64::max);
                    resid < params.tol
                });
                fixed.then(|| GridPoint { x: x_num, y: y_num.clone() })
            })
        })
        .collect();

    let mut clusters: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
    for p in &accepted {
        let key = p.y.iter().map(|&k| ((2.0 * k as f64 * step).round() as i64).rem_euclid(2)).collect();
        clusters.insert(key, ());
    }
    let offsets: Vec<Vec<f64>> =
        clusters.keys().map(|k| k.iter().map(|&h| h as f64 / 2.0).collect()).collect();
    Ok(ScanResult {
        params,
        points_scanned: cells * cells,
        count: offsets.len(),
        accepted,
        offsets,
    })
}

/// Base-`base` digits of `idx`, least significant first, padded to `len`.
fn digits(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(idx % base);
        idx /= base;
    }
    out
}
