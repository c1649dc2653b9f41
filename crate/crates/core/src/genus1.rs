//! A genus-one double cover with a free anti-holomorphic involution.
//!
//! `X = ℂ / (ℤ + τℤ)` with `τ` purely imaginary, and `σ(z) = z̄ + ½`. In the
//! coordinates `z = x + τy` conjugation is `(x, y) ↦ (x, -y)`, so
//! `σ(x, y) = (x + ½, -y)`, which has no fixed points. By Abel's theorem a
//! degree-zero divisor is principal iff its point sum vanishes in the group
//! law, so linear equivalence is exact rational arithmetic.
//!
//! Degree-zero classes fixed by σ split into two cosets:
//! `T1` (point sum on the circle `y = 0`, classes with a σ-invariant
//! representative) and `T2` (point sum on `y = ½`, no invariant representative).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::torus::TorusPointXY;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisorError {
    #[error("divisor has degree {0}, expected 0")]
    NonzeroDegree(i64),
    #[error("class is not fixed by the involution (label {0:?})")]
    NotFixed(ClassLabel),
    #[error("torsion order must be even and positive, got {0}")]
    OddTorsion(i64),
    #[error("invalid rational {0:?}")]
    BadRational(String),
}

fn frac(r: Rational64) -> Rational64 {
    r - r.floor()
}

fn half() -> Rational64 {
    Rational64::new(1, 2)
}

/// The point `x + τy` of the curve, with both coordinates reduced into `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelPoint {
    x: Rational64,
    y: Rational64,
}

impl ModelPoint {
    pub fn new(x: Rational64, y: Rational64) -> Self {
        ModelPoint { x: frac(x), y: frac(y) }
    }

    /// `(x_num / x_den, y_num / y_den)`.
    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        Self::new(Rational64::new(x.0, x.1), Rational64::new(y.0, y.1))
    }

    /// The base point `O = (0, 0)`, the identity of the group law.
    pub fn origin() -> Self {
        ModelPoint { x: Rational64::zero(), y: Rational64::zero() }
    }

    pub fn x(&self) -> Rational64 {
        self.x
    }

    pub fn y(&self) -> Rational64 {
        self.y
    }

    /// The same point as a genus-one torus point, for comparison with
    /// [`crate::torus`].
    pub fn to_torus(&self) -> TorusPointXY {
        TorusPointXY::from_ratios(&[(*self.x.numer(), *self.x.denom())], &[(*self.y.numer(), *self.y.denom())])
    }
}

impl Add for ModelPoint {
    type Output = ModelPoint;

    fn add(self, rhs: ModelPoint) -> ModelPoint {
        ModelPoint::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for ModelPoint {
    type Output = ModelPoint;

    fn sub(self, rhs: ModelPoint) -> ModelPoint {
        ModelPoint::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for ModelPoint {
    type Output = ModelPoint;

    fn neg(self) -> ModelPoint {
        ModelPoint::new(-self.x, -self.y)
    }
}

impl fmt::Display for ModelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `σ(x, y) = (x + ½, -y)`.
pub fn sigma_point(p: ModelPoint) -> ModelPoint {
    ModelPoint::new(p.x + half(), -p.y)
}

/// A finite formal sum of points; zero multiplicities are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    support: BTreeMap<ModelPoint, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn point(p: ModelPoint) -> Self {
        Divisor::from_terms([(p, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ModelPoint, i64)>) -> Self {
        let mut d = Divisor::zero();
        for (p, m) in terms {
            d.add_term(p, m);
        }
        d
    }

    pub fn add_term(&mut self, p: ModelPoint, mult: i64) {
        let e = self.support.entry(p).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.support.remove(&p);
        }
    }

    pub fn degree(&self) -> i64 {
        self.support.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (ModelPoint, i64)> + '_ {
        self.support.iter().map(|(p, m)| (*p, *m))
    }

    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.terms().map(|(p, m)| (p, m * k)))
    }

    /// Point sum in the group law, ignoring the degree.
    fn point_sum(&self) -> ModelPoint {
        let (x, y) = self
            .terms()
            .fold((Rational64::zero(), Rational64::zero()), |(x, y), (p, m)| {
                (frac(x + p.x * m), frac(y + p.y * m))
            });
        ModelPoint::new(x, y)
    }
}

impl Add<&Divisor> for &Divisor {
    type Output = Divisor;

    fn add(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, m) in rhs.terms() {
            out.add_term(p, m);
        }
        out
    }
}

impl Sub<&Divisor> for &Divisor {
    type Output = Divisor;

    fn sub(self, rhs: &Divisor) -> Divisor {
        self + &(-rhs)
    }
}

impl Neg for &Divisor {
    type Output = Divisor;

    fn neg(self) -> Divisor {
        self.scale(-1)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, m)) in self.terms().enumerate() {
            match (i, m) {
                (0, 1) => write!(f, "{p}")?,
                (0, -1) => write!(f, "-{p}")?,
                (0, m) => write!(f, "{m}{p}")?,
                (_, 1) => write!(f, " + {p}")?,
                (_, -1) => write!(f, " - {p}")?,
                (_, m) if m < 0 => write!(f, " - {}{p}", -m)?,
                (_, m) => write!(f, " + {m}{p}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct DivisorJson {
    points: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    x: String,
    y: String,
    mult: i64,
}

fn parse_rational(s: &str) -> Result<Rational64, DivisorError> {
    s.trim().parse::<Rational64>().map_err(|_| DivisorError::BadRational(s.to_string()))
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DivisorJson {
            points: self
                .terms()
                .map(|(p, mult)| TermJson { x: p.x.to_string(), y: p.y.to_string(), mult })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Divisor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = DivisorJson::deserialize(deserializer)?;
        let mut d = Divisor::zero();
        for t in json.points {
            let x = parse_rational(&t.x).map_err(serde::de::Error::custom)?;
            let y = parse_rational(&t.y).map_err(serde::de::Error::custom)?;
            d.add_term(ModelPoint::new(x, y), t.mult);
        }
        Ok(d)
    }
}

/// `σ*D`: every point pushed through σ, multiplicities kept.
pub fn sigma_divisor(d: &Divisor) -> Divisor {
    Divisor::from_terms(d.terms().map(|(p, m)| (sigma_point(p), m)))
}

/// The orbit pair `(p) + (σp)`, an invariant divisor of degree 2.
pub fn orbit_pair(p: ModelPoint) -> Divisor {
    Divisor::from_terms([(p, 1), (sigma_point(p), 1)])
}

/// Abel–Jacobi image of a degree-zero divisor: the multiplicity-weighted
/// point sum, mod the lattice.
pub fn abel_jacobi(d: &Divisor) -> Result<ModelPoint, DivisorError> {
    match d.degree() {
        0 => Ok(d.point_sum()),
        deg => Err(DivisorError::NonzeroDegree(deg)),
    }
}

/// Equal degree and equal point sum.
pub fn linearly_equivalent(d: &Divisor, e: &Divisor) -> bool {
    d.degree() == e.degree() && abel_jacobi(&(d - e)).map_or(false, |a| a == ModelPoint::origin())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassLabel {
    T1,
    T2,
    NotFixed,
    NonzeroDegree,
}

impl ClassLabel {
    pub fn is_fixed(self) -> bool {
        matches!(self, ClassLabel::T1 | ClassLabel::T2)
    }
}

/// Classifies `[D]`. With `a = AJ(D)` and `AJ(σ*D) = (a_x, -a_y)`, the class
/// is fixed iff `2·a_y ∈ ℤ`; `a_y = 0` is `T1`, `a_y = ½` is `T2`.
pub fn classify_fixed_class(d: &Divisor) -> ClassLabel {
    let Ok(a) = abel_jacobi(d) else {
        return ClassLabel::NonzeroDegree;
    };
    if a.y.is_zero() {
        ClassLabel::T1
    } else if a.y == half() {
        ClassLabel::T2
    } else {
        ClassLabel::NotFixed
    }
}

/// A σ-invariant divisor linearly equivalent to `D`, if one exists.
///
/// For `T1` with `AJ(D) = (a, 0)` this is `(p) + (σp) - (O) - (σO)` with
/// `p = (a/2, 0)`. `T2` classes have none: every invariant degree-zero
/// divisor is a difference of orbit pairs, whose point sum has `y = 0`.
pub fn invariant_representative(d: &Divisor) -> Result<Option<Divisor>, DivisorError> {
    match classify_fixed_class(d) {
        ClassLabel::T1 => {
            let a = abel_jacobi(d)?;
            let p = ModelPoint::new(a.x / 2, Rational64::zero());
            Ok(Some(&orbit_pair(p) - &orbit_pair(ModelPoint::origin())))
        }
        ClassLabel::T2 => Ok(None),
        other => Err(DivisorError::NotFixed(other)),
    }
}

/// The translation class `(0, ½) - (0, 0)`. It lies in `T2`, and adding it
/// swaps `T1` and `T2`.
pub fn translation_class_x() -> Divisor {
    Divisor::from_terms([(ModelPoint::from_ratios((0, 1), (1, 2)), 1), (ModelPoint::origin(), -1)])
}

/// Result of moving a divisor to degree 0 or 1 by invariant divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReduction {
    pub reduced: Divisor,
    /// The invariant divisor that was subtracted (`D = reduced + removed`).
    pub removed: Divisor,
}

/// Subtracts (or adds) copies of the orbit pair `(O) + (σO)` until the degree
/// is 0 or 1.
pub fn reduce_degree_invariant(d: &Divisor) -> DegreeReduction {
    let k = d.degree().div_euclid(2);
    let removed = orbit_pair(ModelPoint::origin()).scale(k);
    DegreeReduction { reduced: d - &removed, removed }
}

/// Exhaustive search for invariant representatives among divisors supported
/// on `N`-torsion points with total absolute multiplicity bounded.
///
/// Invariant divisors are integer combinations of orbit pairs (σ is free), so
/// the candidates are enumerated as a positive and a negative multiset of
/// orbits of equal size.
#[derive(Debug, Clone)]
pub struct InvariantSearch {
    pub torsion: i64,
    pub max_total_mult: i64,
    candidates: Vec<(ModelPoint, Divisor)>,
}

impl InvariantSearch {
    pub fn new(torsion: i64, max_total_mult: i64) -> Result<Self, DivisorError> {
        if torsion <= 0 || torsion % 2 != 0 {
            return Err(DivisorError::OddTorsion(torsion));
        }
        let orbits = torsion_orbits(torsion);
        // each orbit pair contributes 2 to the total multiplicity on each side
        let per_side = (max_total_mult / 4) as usize;
        let mut candidates = Vec::new();
        let mut seen = BTreeSet::new();
        for k in 0..=per_side {
            for pos in multisets(orbits.len(), k) {
                for neg in multisets(orbits.len(), k) {
                    let mut e = Divisor::zero();
                    for &i in &pos {
                        e = &e + &orbit_pair(orbits[i]);
                    }
                    for &i in &neg {
                        e = &e - &orbit_pair(orbits[i]);
                    }
                    if seen.insert(e.clone()) {
                        let a = abel_jacobi(&e).expect("degree zero by construction");
                        candidates.push((a, e));
                    }
                }
            }
        }
        Ok(InvariantSearch { torsion, max_total_mult, candidates })
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    pub fn candidates(&self) -> impl Iterator<Item = &Divisor> {
        self.candidates.iter().map(|(_, e)| e)
    }

    /// First invariant candidate linearly equivalent to `d`.
    pub fn find(&self, d: &Divisor) -> Option<&Divisor> {
        self.candidates.iter().map(|(_, e)| e).find(|e| linearly_equivalent(d, e))
    }
}

/// One representative per σ-orbit of the `N`-torsion points (`N` even).
fn torsion_orbits(n: i64) -> Vec<ModelPoint> {
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for p in torsion_points(n) {
        if seen.insert(p) {
            seen.insert(sigma_point(p));
            reps.push(p);
        }
    }
    reps
}

/// All `(i/N, j/N)` in row-major order.
pub fn torsion_points(n: i64) -> Vec<ModelPoint> {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| ModelPoint::from_ratios((i, n), (j, n))))
        .collect()
}

/// Non-decreasing index sequences of length `k` from `0..n`.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Enumeration of degree-zero divisors on `N`-torsion points.
#[derive(Debug, Clone)]
pub struct TorsionCensus {
    pub torsion: i64,
    pub max_support: usize,
    /// Every enumerated divisor: support size at most `max_support`,
    /// multiplicities in `[-max_support, max_support]`, degree 0.
    pub divisors: Vec<Divisor>,
    /// Distinct Abel–Jacobi values per label.
    pub classes: BTreeMap<ClassLabel, BTreeSet<ModelPoint>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CensusCounts {
    pub divisors: usize,
    pub t1: usize,
    pub t2: usize,
    pub not_fixed: usize,
}

impl TorsionCensus {
    pub fn counts(&self) -> CensusCounts {
        let n = |l| self.classes.get(&l).map_or(0, BTreeSet::len);
        CensusCounts {
            divisors: self.divisors.len(),
            t1: n(ClassLabel::T1),
            t2: n(ClassLabel::T2),
            not_fixed: n(ClassLabel::NotFixed),
        }
    }

    pub fn class_values(&self, label: ClassLabel) -> impl Iterator<Item = &ModelPoint> {
        self.classes.get(&label).into_iter().flatten()
    }

    /// Fixed values lie on `y ∈ {0, ½}` and each circle has exactly `N`
    /// sampled values.
    pub fn circles_complete(&self) -> bool {
        let n = self.torsion as usize;
        let on_circle = |label, y: Rational64| {
            let vals: Vec<_> = self.class_values(label).collect();
            vals.len() == n && vals.iter().all(|p| p.y == y)
        };
        on_circle(ClassLabel::T1, Rational64::zero()) && on_circle(ClassLabel::T2, half())
    }

    /// `T1` values are closed under addition and negation and contain `O`.
    pub fn t1_is_subgroup(&self) -> bool {
        let t1: BTreeSet<_> = self.class_values(ClassLabel::T1).copied().collect();
        t1.contains(&ModelPoint::origin())
            && t1.iter().all(|a| t1.contains(&-*a) && t1.iter().all(|b| t1.contains(&(*a + *b))))
    }

    /// `T2 = T1 + AJ(X)` as sets.
    pub fn t2_is_translate(&self) -> bool {
        let shift = abel_jacobi(&translation_class_x()).expect("degree zero");
        let moved: BTreeSet<_> = self.class_values(ClassLabel::T1).map(|a| *a + shift).collect();
        let t2: BTreeSet<_> = self.class_values(ClassLabel::T2).copied().collect();
        moved == t2
    }
}

/// Enumerates degree-zero divisors on the `N`-torsion points and records the
/// Abel–Jacobi value of each by class label.
pub fn enumerate_torsion_suite(torsion: i64, max_support: usize) -> Result<TorsionCensus, DivisorError> {
    if torsion <= 0 || torsion % 2 != 0 {
        return Err(DivisorError::OddTorsion(torsion));
    }
    let points = torsion_points(torsion);
    let bound = max_support as i64;
    let mults: Vec<i64> = (-bound..=bound).filter(|m| *m != 0).collect();

    let mut divisors = vec![Divisor::zero()];
    let mut stack: Vec<(usize, Vec<(ModelPoint, i64)>)> = vec![(0, Vec::new())];
    while let Some((start, terms)) = stack.pop() {
        if terms.len() == max_support {
            continue;
        }
        for (i, p) in points.iter().enumerate().skip(start) {
            for &m in &mults {
                let mut next = terms.clone();
                next.push((*p, m));
                if next.iter().map(|t| t.1).sum::<i64>() == 0 {
                    divisors.push(Divisor::from_terms(next.iter().copied()));
                }
                stack.push((i + 1, next));
            }
        }
    }

    let mut classes: BTreeMap<ClassLabel, BTreeSet<ModelPoint>> = BTreeMap::new();
    for d in &divisors {
        let a = abel_jacobi(d)?;
        classes.entry(classify_fixed_class(d)).or_default().insert(a);
    }
    Ok(TorsionCensus { torsion, max_support, divisors, classes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: (i64, i64), y: (i64, i64)) -> ModelPoint {
        ModelPoint::from_ratios(x, y)
    }

    fn diff(p: ModelPoint, q: ModelPoint) -> Divisor {
        Divisor::from_terms([(p, 1), (q, -1)])
    }

    #[test]
    fn sigma_point_examples() {
        assert_eq!(sigma_point(ModelPoint::origin()), pt((1, 2), (0, 1)));
        assert_eq!(sigma_point(pt((1, 4), (1, 3))), pt((3, 4), (2, 3)));
        let p = pt((1, 5), (1, 7));
        assert_eq!(sigma_point(sigma_point(p)), p);
    }

    #[test]
    fn sigma_is_free_on_torsion() {
        for n in [2, 4, 6, 12] {
            assert!(torsion_points(n).into_iter().all(|p| sigma_point(p) != p));
        }
    }

    #[test]
    fn sigma_divisor_examples() {
        assert_eq!(sigma_divisor(&Divisor::zero()), Divisor::zero());
        let pair = orbit_pair(pt((1, 4), (1, 3)));
        assert_eq!(sigma_divisor(&pair), pair);
        let d = diff(ModelPoint::origin(), pt((0, 1), (1, 2)));
        assert_eq!(sigma_divisor(&d), diff(pt((1, 2), (0, 1)), pt((1, 2), (1, 2))));
    }

    #[test]
    fn abel_jacobi_examples() {
        let p = pt((1, 4), (1, 3));
        assert_eq!(abel_jacobi(&diff(p, p)).unwrap(), ModelPoint::origin());
        assert_eq!(abel_jacobi(&diff(p, pt((3, 4), (2, 3)))).unwrap(), pt((1, 2), (2, 3)));
        let d = &orbit_pair(p) - &Divisor::from_terms([(ModelPoint::origin(), 2)]);
        assert_eq!(abel_jacobi(&d).unwrap(), ModelPoint::origin());
        assert_eq!(abel_jacobi(&Divisor::point(p)), Err(DivisorError::NonzeroDegree(1)));
    }

    #[test]
    fn linear_equivalence_examples() {
        let p = pt((1, 4), (1, 3));
        let q = pt((2, 5), (0, 1));
        let d = &(&diff(p, q) + &Divisor::point(q)) - &Divisor::point(p);
        assert!(d.is_zero());
        assert!(linearly_equivalent(&d, &Divisor::zero()));

        let o2 = Divisor::from_terms([(ModelPoint::origin(), -2)]);
        let a = &Divisor::from_terms([(pt((1, 4), (0, 1)), 1), (pt((3, 4), (0, 1)), 1)]) + &o2;
        let b = &Divisor::from_terms([(pt((1, 2), (0, 1)), 2)]) + &o2;
        assert!(linearly_equivalent(&a, &b));

        assert!(!linearly_equivalent(&diff(pt((0, 1), (1, 2)), ModelPoint::origin()), &Divisor::zero()));
        assert!(!linearly_equivalent(&Divisor::point(p), &Divisor::zero()));
    }

    #[test]
    fn classification_examples() {
        let o = ModelPoint::origin();
        assert_eq!(classify_fixed_class(&diff(pt((1, 2), (0, 1)), o)), ClassLabel::T1);
        assert_eq!(classify_fixed_class(&diff(pt((0, 1), (1, 2)), o)), ClassLabel::T2);
        assert_eq!(classify_fixed_class(&diff(pt((1, 4), (1, 3)), pt((3, 4), (2, 3)))), ClassLabel::NotFixed);
        assert_eq!(classify_fixed_class(&Divisor::point(o)), ClassLabel::NonzeroDegree);
    }

    #[test]
    fn sigma_acts_as_conjugation_on_abel_jacobi() {
        for p in torsion_points(6) {
            for q in torsion_points(6) {
                let d = diff(p, q);
                let a = abel_jacobi(&d).unwrap();
                assert_eq!(abel_jacobi(&sigma_divisor(&d)).unwrap(), ModelPoint::new(a.x, -a.y));
            }
        }
    }

    #[test]
    fn invariant_representative_examples() {
        let o = ModelPoint::origin();
        let d = diff(pt((1, 2), (0, 1)), o);
        let e = invariant_representative(&d).unwrap().unwrap();
        let expected = Divisor::from_terms([
            (pt((1, 4), (0, 1)), 1),
            (pt((3, 4), (0, 1)), 1),
            (o, -1),
            (pt((1, 2), (0, 1)), -1),
        ]);
        assert_eq!(e, expected);
        assert_eq!(sigma_divisor(&e), e);
        assert_eq!(abel_jacobi(&e).unwrap(), pt((1, 2), (0, 1)));
        assert!(linearly_equivalent(&d, &e));

        assert_eq!(invariant_representative(&Divisor::zero()).unwrap(), Some(Divisor::zero()));

        let t2 = diff(pt((0, 1), (1, 2)), o);
        assert_eq!(invariant_representative(&t2).unwrap(), None);
        let search = InvariantSearch::new(12, 6).unwrap();
        assert!(search.find(&t2).is_none());
        assert!(search.find(&d).is_some());

        assert!(matches!(invariant_representative(&Divisor::point(o)), Err(DivisorError::NotFixed(_))));
    }

    #[test]
    fn invariant_search_candidates_are_invariant() {
        let search = InvariantSearch::new(4, 8).unwrap();
        // 8 orbits: zero, k=1 gives 8*8 - 8 (diagonal collapses to zero), k=2 adds more
        assert!(search.candidate_count() > 57);
        for e in search.candidates() {
            assert_eq!(sigma_divisor(e), *e);
            assert_eq!(e.degree(), 0);
            assert!(e.terms().map(|(_, m)| m.abs()).sum::<i64>() <= 8);
            assert!(abel_jacobi(e).unwrap().y().is_zero());
        }
        assert_eq!(InvariantSearch::new(12, 6).unwrap().candidate_count(), 1 + 72 * 71);
        assert!(matches!(InvariantSearch::new(3, 6), Err(DivisorError::OddTorsion(3))));
    }

    #[test]
    fn translation_class() {
        let x = translation_class_x();
        assert_eq!(classify_fixed_class(&x), ClassLabel::T2);
        let d = diff(pt((1, 2), (0, 1)), ModelPoint::origin());
        assert_eq!(classify_fixed_class(&(&d + &x)), ClassLabel::T2);
        assert_eq!(classify_fixed_class(&(&x + &x)), ClassLabel::T1);
    }

    #[test]
    fn degree_reduction() {
        let p = pt((1, 3), (1, 5));
        let q = pt((2, 7), (0, 1));
        let d4 = Divisor::from_terms([(p, 3), (q, 1)]);
        let r = reduce_degree_invariant(&d4);
        assert_eq!(r.reduced.degree(), 0);
        assert_eq!(sigma_divisor(&r.removed), r.removed);
        assert_eq!(&r.reduced + &r.removed, d4);

        let d1 = Divisor::point(p);
        assert_eq!(reduce_degree_invariant(&d1).reduced, d1);

        let d3 = Divisor::from_terms([(p, 2), (q, 1)]);
        assert_eq!(reduce_degree_invariant(&d3).reduced.degree(), 1);

        let neg = Divisor::from_terms([(p, -3)]);
        let r = reduce_degree_invariant(&neg);
        assert_eq!(r.reduced.degree(), 1);
        assert_eq!(sigma_divisor(&r.removed), r.removed);
    }

    #[test]
    fn census_small() {
        let c4 = enumerate_torsion_suite(4, 2).unwrap();
        let counts = c4.counts();
        assert_eq!((counts.t1, counts.t2), (4, 4));
        assert_eq!(counts.not_fixed, 16 - 8);
        // empty + unordered pairs {p, q} times multiplicities (a, -a), a ∈ {±1, ±2}
        assert_eq!(counts.divisors, 1 + 120 * 4);
        assert!(c4.circles_complete());
        assert!(c4.t1_is_subgroup());
        assert!(c4.t2_is_translate());

        let c2 = enumerate_torsion_suite(2, 2).unwrap();
        assert_eq!((c2.counts().t1, c2.counts().t2), (2, 2));
        assert!(matches!(enumerate_torsion_suite(3, 2), Err(DivisorError::OddTorsion(3))));
    }

    #[test]
    fn divisor_json() {
        let d = diff(pt((1, 4), (1, 3)), ModelPoint::origin());
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"points":[{"x":"0","y":"0","mult":-1},{"x":"1/4","y":"1/3","mult":1}]}"#);
        let back: Divisor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        let unreduced: Divisor = serde_json::from_str(r#"{"points":[{"x":"5/4","y":"-2/3","mult":2}]}"#).unwrap();
        assert_eq!(unreduced, Divisor::from_terms([(pt((1, 4), (1, 3)), 2)]));
        assert!(serde_json::from_str::<Divisor>(r#"{"points":[{"x":"a","y":"0","mult":1}]}"#).is_err());
    }
}
