//! Exact model of products of elliptic curves and their quotients by finite
//! subgroups, in lattice coordinates.
//!
//! A point of `E^{2n} x E'` is stored in real lattice coordinates: complex
//! coordinate `i` (0-based) owns the real slots `2i` (the `1`-part) and
//! `2i + 1` (the `tau`-part). The periods `tau` and `tau'` are never
//! evaluated, so every statement proven here holds for all choices of the two
//! elliptic curves at once.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{common_denominator, hnf, scale_to_integers, HermiteDecomposition, IntMatrix, RatMatrix};

/// Which elliptic curve a complex coordinate lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    E,
    EPrime,
}

/// Shape of `A' = E^{2n} x E'`: `2n` coordinates on `E` followed by a single
/// coordinate on `E'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusShape {
    n: usize,
}

impl TorusShape {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        Ok(TorusShape { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn complex_dim(&self) -> usize {
        2 * self.n + 1
    }

    pub fn real_dim(&self) -> usize {
        2 * self.complex_dim()
    }

    pub fn factor(&self, coordinate: usize) -> Factor {
        assert!(coordinate < self.complex_dim(), "coordinate out of range");
        if coordinate == 2 * self.n {
            Factor::EPrime
        } else {
            Factor::E
        }
    }
}

/// A rational point in real lattice coordinates. Every point the construction
/// needs is torsion, so rational coordinates suffice.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionPoint(Vec<BigRational>);

impl TorsionPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        TorsionPoint(coords)
    }

    pub fn zero(m: usize) -> Self {
        TorsionPoint(vec![BigRational::zero(); m])
    }

    /// Builds a point from `(numerator, denominator)` pairs.
    pub fn from_ratios(values: &[(i64, i64)]) -> Self {
        TorsionPoint(
            values
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The `(1-part, tau-part)` pair of complex coordinate `i`.
    pub fn complex_coord(&self, i: usize) -> (&BigRational, &BigRational) {
        (&self.0[2 * i], &self.0[2 * i + 1])
    }

    pub fn add(&self, other: &TorsionPoint) -> TorsionPoint {
        assert_eq!(self.dim(), other.dim());
        TorsionPoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &TorsionPoint) -> TorsionPoint {
        assert_eq!(self.dim(), other.dim());
        TorsionPoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> TorsionPoint {
        TorsionPoint(self.0.iter().map(|a| -a.clone()).collect())
    }

    pub fn scale(&self, k: i64) -> TorsionPoint {
        let k = BigRational::from_integer(k.into());
        TorsionPoint(self.0.iter().map(|a| a * &k).collect())
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The lattice `Z^m + sum Z*g` for finitely many rational extra generators
/// `g`, i.e. the period lattice of `A'` modulo the finite subgroup they span.
#[derive(Clone, PartialEq, Eq)]
pub struct EnlargedLattice {
    m: usize,
    extra: Vec<TorsionPoint>,
    denom: BigInt,
    basis: HermiteDecomposition,
}

impl EnlargedLattice {
    /// The standard lattice `Z^m`.
    pub fn standard(m: usize) -> Self {
        Self::with_extra(m, Vec::new()).expect("standard lattice")
    }

    pub fn with_extra(m: usize, extra: Vec<TorsionPoint>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("lattice dimension must be positive".into()));
        }
        for g in &extra {
            if g.dim() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    actual: g.dim(),
                });
            }
        }
        let denom = common_denominator(extra.iter().flat_map(|g| g.coords()));
        let mut rows: Vec<Vec<BigInt>> = (0..m)
            .map(|i| {
                let mut r = vec![BigInt::zero(); m];
                r[i] = denom.clone();
                r
            })
            .collect();
        rows.extend(extra.iter().map(|g| scale_to_integers(g.coords(), &denom)));
        let basis = hnf(&IntMatrix::from_rows_with_cols(&rows, m));
        debug_assert_eq!(basis.rank, m);
        Ok(EnlargedLattice {
            m,
            extra,
            denom,
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn extra_generators(&self) -> &[TorsionPoint] {
        &self.extra
    }

    pub fn is_standard(&self) -> bool {
        self.index_over_standard() == BigInt::one()
    }

    /// All generators: the standard basis followed by the extra generators.
    pub fn generators(&self) -> Vec<TorsionPoint> {
        let mut out: Vec<TorsionPoint> = (0..self.m)
            .map(|i| {
                let mut v = vec![BigRational::zero(); self.m];
                v[i] = BigRational::one();
                TorsionPoint(v)
            })
            .collect();
        out.extend(self.extra.iter().cloned());
        out
    }

    /// Rows of the canonical basis, as rational vectors.
    pub fn canonical_basis(&self) -> Vec<TorsionPoint> {
        let d = BigRational::from_integer(self.denom.clone());
        (0..self.m)
            .map(|i| {
                TorsionPoint(
                    self.basis
                        .h
                        .row(i)
                        .iter()
                        .map(|x| BigRational::from_integer(x.clone()) / &d)
                        .collect(),
                )
            })
            .collect()
    }

    /// `[L : Z^m]`, the ratio of the covolumes of `Z^m` and `L`.
    pub fn index_over_standard(&self) -> BigInt {
        let diag = (0..self.m).fold(BigInt::one(), |acc, i| acc * &self.basis.h[(i, i)]);
        num_traits::pow(self.denom.clone(), self.m) / diag
    }

    pub fn contains(&self, p: &[BigRational]) -> bool {
        assert_eq!(p.len(), self.m, "point dimension mismatch");
        let d = BigRational::from_integer(self.denom.clone());
        let mut scaled = Vec::with_capacity(self.m);
        for x in p {
            let s = x * &d;
            if !s.is_integer() {
                return false;
            }
            scaled.push(s.to_integer());
        }
        self.basis.contains(&scaled)
    }

    /// Canonical representative of `p` modulo the lattice: the unique point
    /// congruent to `p` whose coordinates with respect to the canonical basis
    /// all lie in `[0, 1)`.
    pub fn reduce(&self, p: &[BigRational]) -> TorsionPoint {
        assert_eq!(p.len(), self.m, "point dimension mismatch");
        let d = BigRational::from_integer(self.denom.clone());
        let mut rest: Vec<BigRational> = p.iter().map(|x| x * &d).collect();
        // The canonical basis is square upper triangular with positive diagonal.
        for i in 0..self.m {
            let pivot = BigRational::from_integer(self.basis.h[(i, i)].clone());
            let k = (&rest[i] / &pivot).floor();
            if k.is_zero() {
                continue;
            }
            for (j, x) in rest.iter_mut().enumerate().skip(i) {
                let h = &self.basis.h[(i, j)];
                if !h.is_zero() {
                    *x -= &k * BigRational::from_integer(h.clone());
                }
            }
        }
        TorsionPoint(rest.into_iter().map(|x| x / &d).collect())
    }

    /// Representatives in `[0,1)^m` of the finite group `L / Z^m`.
    pub fn cosets_over_standard(&self) -> Vec<TorsionPoint> {
        let frac = |v: &TorsionPoint| TorsionPoint(v.0.iter().map(|x| x - x.floor()).collect());
        let mut seen = BTreeSet::new();
        let mut order = vec![TorsionPoint::zero(self.m)];
        seen.insert(order[0].clone());
        let mut i = 0;
        while i < order.len() {
            for g in &self.extra {
                let next = frac(&order[i].add(g));
                if seen.insert(next.clone()) {
                    order.push(next);
                }
            }
            i += 1;
        }
        order
    }
}

impl fmt::Debug for EnlargedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnlargedLattice")
            .field("m", &self.m)
            .field("extra", &self.extra)
            .finish()
    }
}

pub fn reduce(p: &[BigRational], lattice: &EnlargedLattice) -> TorsionPoint {
    lattice.reduce(p)
}

/// A holomorphic automorphism of `A'` whose linear part is a signed
/// permutation of complex coordinates: `out_j = signs[j] * z[perm[j]] + t_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComplexMonomialMap {
    perm: Vec<usize>,
    signs: Vec<i8>,
    translation: TorsionPoint,
}

impl ComplexMonomialMap {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>, translation: TorsionPoint) -> Result<Self> {
        let k = perm.len();
        if signs.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                actual: signs.len(),
            });
        }
        if translation.dim() != 2 * k {
            return Err(Error::DimensionMismatch {
                expected: 2 * k,
                actual: translation.dim(),
            });
        }
        let mut seen = vec![false; k];
        for &p in &perm {
            if p >= k || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidMap(format!("{perm:?} is not a permutation")));
            }
        }
        if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::InvalidMap(format!("sign {s} is not +1 or -1")));
        }
        Ok(ComplexMonomialMap {
            perm,
            signs,
            translation,
        })
    }

    pub fn identity(shape: TorusShape) -> Self {
        let k = shape.complex_dim();
        ComplexMonomialMap {
            perm: (0..k).collect(),
            signs: vec![1; k],
            translation: TorsionPoint::zero(2 * k),
        }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn translation(&self) -> &TorsionPoint {
        &self.translation
    }

    pub fn complex_dim(&self) -> usize {
        self.perm.len()
    }

    pub fn with_translation(&self, translation: TorsionPoint) -> Self {
        assert_eq!(translation.dim(), self.translation.dim());
        ComplexMonomialMap {
            translation,
            ..self.clone()
        }
    }

    /// `self o other` computed on complex coordinates, translations kept
    /// unreduced.
    pub fn compose(&self, other: &ComplexMonomialMap) -> ComplexMonomialMap {
        assert_eq!(self.complex_dim(), other.complex_dim());
        let k = self.complex_dim();
        let mut perm = Vec::with_capacity(k);
        let mut signs = Vec::with_capacity(k);
        let mut t = Vec::with_capacity(2 * k);
        for j in 0..k {
            let via = self.perm[j];
            let sign = self.signs[j];
            perm.push(other.perm[via]);
            signs.push(sign * other.signs[via]);
            let (p, q) = other.translation.complex_coord(via);
            let (tp, tq) = self.translation.complex_coord(j);
            let s = BigRational::from_integer(sign.into());
            t.push(&s * p + tp);
            t.push(&s * q + tq);
        }
        ComplexMonomialMap {
            perm,
            signs,
            translation: TorsionPoint(t),
        }
    }
}

/// Affine map `z -> M z + t` on real lattice coordinates.
///
/// Instances produced by [`AffineAuto::new`], [`compose`] and [`inverse`]
/// keep `t` in canonical form for the lattice they were built against, so
/// structural equality is equality of automorphisms of the torus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineAuto {
    linear: RatMatrix,
    translation: TorsionPoint,
}

impl AffineAuto {
    /// Checks that `linear` maps the lattice onto itself and reduces the
    /// translation.
    pub fn new(linear: RatMatrix, translation: TorsionPoint, lattice: &EnlargedLattice) -> Result<Self> {
        let m = lattice.dim();
        if linear.rows() != m || linear.cols() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                actual: linear.rows().max(linear.cols()),
            });
        }
        if translation.dim() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                actual: translation.dim(),
            });
        }
        if !preserves_lattice(&linear, lattice) {
            return Err(Error::InvalidMap("linear part does not preserve the lattice".into()));
        }
        let translation = lattice.reduce(translation.coords());
        Ok(AffineAuto { linear, translation })
    }

    /// Builds without any lattice check or reduction.
    pub fn from_parts_unchecked(linear: RatMatrix, translation: TorsionPoint) -> Self {
        AffineAuto { linear, translation }
    }

    pub fn identity(m: usize) -> Self {
        AffineAuto {
            linear: RatMatrix::identity(m),
            translation: TorsionPoint::zero(m),
        }
    }

    pub fn translation_by(p: TorsionPoint) -> Self {
        AffineAuto {
            linear: RatMatrix::identity(p.dim()),
            translation: p,
        }
    }

    pub fn linear(&self) -> &RatMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &TorsionPoint {
        &self.translation
    }

    pub fn dim(&self) -> usize {
        self.translation.dim()
    }

    /// Same map with its translation reduced modulo `lattice`.
    pub fn reduced(&self, lattice: &EnlargedLattice) -> AffineAuto {
        AffineAuto {
            linear: self.linear.clone(),
            translation: lattice.reduce(self.translation.coords()),
        }
    }

    pub fn apply(&self, p: &[BigRational]) -> Vec<BigRational> {
        self.linear
            .mul_vec(p)
            .into_iter()
            .zip(self.translation.coords())
            .map(|(a, b)| a + b)
            .collect()
    }

    pub fn is_identity_linear(&self) -> bool {
        self.linear.is_identity()
    }

    pub fn is_identity(&self, lattice: &EnlargedLattice) -> bool {
        self.is_identity_linear() && lattice.contains(self.translation.coords())
    }
}

impl fmt::Debug for AffineAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineAuto {{ linear:\n{}translation: {} }}", self.linear, self.translation)
    }
}

fn preserves_lattice(m: &RatMatrix, lattice: &EnlargedLattice) -> bool {
    let det = m.determinant();
    if det.abs() != BigRational::one() {
        return false;
    }
    lattice
        .generators()
        .iter()
        .all(|g| lattice.contains(&m.mul_vec(g.coords())))
}

/// Realification of a monomial map: block `(j, perm[j])` is `signs[j] * I_2`,
/// since negating `p + q*tau` negates both lattice coordinates. The
/// translation is copied through unreduced.
pub fn realify(map: &ComplexMonomialMap, shape: TorusShape) -> Result<AffineAuto> {
    let k = shape.complex_dim();
    if map.complex_dim() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            actual: map.complex_dim(),
        });
    }
    for (j, &src) in map.perm.iter().enumerate() {
        if shape.factor(j) != shape.factor(src) {
            return Err(Error::InvalidMap(format!(
                "coordinate {} is fed from coordinate {} on a different elliptic curve",
                j + 1,
                src + 1
            )));
        }
    }
    let m = shape.real_dim();
    let mut linear = RatMatrix::zeros(m, m);
    for (j, (&src, &sign)) in map.perm.iter().zip(&map.signs).enumerate() {
        let s = BigRational::from_integer(sign.into());
        linear[(2 * j, 2 * src)] = s.clone();
        linear[(2 * j + 1, 2 * src + 1)] = s;
    }
    Ok(AffineAuto {
        linear,
        translation: map.translation.clone(),
    })
}

/// `g o h`, with the translation reduced modulo `lattice`.
pub fn compose(g: &AffineAuto, h: &AffineAuto, lattice: &EnlargedLattice) -> AffineAuto {
    assert_eq!(g.dim(), h.dim(), "composing maps of different dimension");
    let linear = g.linear.mul(&h.linear);
    let t = g.apply(h.translation.coords());
    AffineAuto {
        linear,
        translation: lattice.reduce(&t),
    }
}

fn signed_permutation_inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.rows();
    let mut col_hits = vec![0usize; n];
    for i in 0..n {
        let mut hits = 0;
        for j in 0..n {
            let e = &m[(i, j)];
            if e.is_zero() {
                continue;
            }
            if e.abs() != BigRational::one() {
                return None;
            }
            hits += 1;
            col_hits[j] += 1;
        }
        if hits != 1 {
            return None;
        }
    }
    col_hits.iter().all(|&c| c == 1).then(|| m.transpose())
}

pub fn inverse(g: &AffineAuto, lattice: &EnlargedLattice) -> AffineAuto {
    let inv = signed_permutation_inverse(&g.linear)
        .or_else(|| g.linear.inverse())
        .expect("automorphism with singular linear part");
    let t: Vec<BigRational> = inv
        .mul_vec(g.translation.coords())
        .into_iter()
        .map(|x| -x)
        .collect();
    AffineAuto {
        linear: inv,
        translation: lattice.reduce(&t),
    }
}

pub fn equal_mod_lattice(g: &AffineAuto, h: &AffineAuto, lattice: &EnlargedLattice) -> bool {
    g.linear == h.linear && lattice.contains(g.translation.sub(&h.translation).coords())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn w1() -> TorsionPoint {
        TorsionPoint::from_ratios(&[(1, 2), (0, 1), (1, 2), (0, 1), (0, 1), (0, 1)])
    }

    fn r1() -> ComplexMonomialMap {
        let t = TorsionPoint::from_ratios(&[(0, 1), (0, 1), (0, 1), (0, 1), (1, 4), (0, 1)]);
        ComplexMonomialMap::new(vec![1, 0, 2], vec![-1, 1, 1], t).unwrap()
    }

    fn s1() -> ComplexMonomialMap {
        let t = TorsionPoint::from_ratios(&[(1, 2), (1, 2), (0, 1), (1, 2), (0, 1), (0, 1)]);
        ComplexMonomialMap::new(vec![1, 0, 2], vec![-1, -1, -1], t).unwrap()
    }

    fn block(m: &RatMatrix, bi: usize, bj: usize) -> [BigRational; 4] {
        [
            m[(2 * bi, 2 * bj)].clone(),
            m[(2 * bi, 2 * bj + 1)].clone(),
            m[(2 * bi + 1, 2 * bj)].clone(),
            m[(2 * bi + 1, 2 * bj + 1)].clone(),
        ]
    }

    fn scalar_block(s: i64) -> [BigRational; 4] {
        [q(s, 1), q(0, 1), q(0, 1), q(s, 1)]
    }

    #[test]
    fn shape_layout() {
        let s = TorusShape::new(2).unwrap();
        assert_eq!(s.complex_dim(), 5);
        assert_eq!(s.real_dim(), 10);
        assert_eq!(s.factor(4), Factor::EPrime);
        assert!((0..4).all(|i| s.factor(i) == Factor::E));
        assert!(TorusShape::new(0).is_err());
    }

    #[test]
    fn realify_identity() {
        let shape = TorusShape::new(1).unwrap();
        let a = realify(&ComplexMonomialMap::identity(shape), shape).unwrap();
        assert!(a.linear().is_identity());
        assert!(a.translation().is_zero());
    }

    #[test]
    fn realify_rotation_blocks() {
        let shape = TorusShape::new(1).unwrap();
        let a = realify(&r1(), shape).unwrap();
        assert_eq!(block(a.linear(), 0, 1), scalar_block(-1));
        assert_eq!(block(a.linear(), 1, 0), scalar_block(1));
        assert_eq!(block(a.linear(), 2, 2), scalar_block(1));
        assert_eq!(block(a.linear(), 0, 0), scalar_block(0));
        assert_eq!(
            a.translation(),
            &TorsionPoint::from_ratios(&[(0, 1), (0, 1), (0, 1), (0, 1), (1, 4), (0, 1)])
        );
    }

    #[test]
    fn realify_reflection_blocks() {
        let shape = TorusShape::new(1).unwrap();
        let a = realify(&s1(), shape).unwrap();
        assert_eq!(block(a.linear(), 0, 1), scalar_block(-1));
        assert_eq!(block(a.linear(), 1, 0), scalar_block(-1));
        assert_eq!(block(a.linear(), 2, 2), scalar_block(-1));
        assert_eq!(
            a.translation(),
            &TorsionPoint::from_ratios(&[(1, 2), (1, 2), (0, 1), (1, 2), (0, 1), (0, 1)])
        );
    }

    #[test]
    fn realify_rejects_mixed_factors() {
        let shape = TorusShape::new(1).unwrap();
        let bad = ComplexMonomialMap::new(vec![2, 1, 0], vec![1, 1, 1], TorsionPoint::zero(6)).unwrap();
        assert!(matches!(realify(&bad, shape), Err(Error::InvalidMap(_))));
        assert!(ComplexMonomialMap::new(vec![0, 0, 1], vec![1, 1, 1], TorsionPoint::zero(6)).is_err());
        assert!(ComplexMonomialMap::new(vec![0, 1, 2], vec![1, 2, 1], TorsionPoint::zero(6)).is_err());
    }

    #[test]
    fn reduce_mod_standard() {
        let l = EnlargedLattice::standard(6);
        let p = TorsionPoint::from_ratios(&[(3, 2), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(
            l.reduce(p.coords()),
            TorsionPoint::from_ratios(&[(1, 2), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)])
        );
        let neg = TorsionPoint::from_ratios(&[(-1, 3), (0, 1), (7, 3), (0, 1), (0, 1), (-5, 1)]);
        assert_eq!(
            l.reduce(neg.coords()),
            TorsionPoint::from_ratios(&[(2, 3), (0, 1), (1, 3), (0, 1), (0, 1), (0, 1)])
        );
    }

    #[test]
    fn reduce_mod_quotient_lattice() {
        let l = EnlargedLattice::with_extra(6, vec![w1()]).unwrap();
        assert!(l.reduce(w1().coords()).is_zero());
        let half = TorsionPoint::from_ratios(&[(1, 2), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]);
        let red = l.reduce(half.coords());
        assert!(!red.is_zero());
        assert!(!l.contains(half.coords()));
        assert!(l.contains(red.sub(&half).coords()));
        assert_eq!(l.reduce(red.coords()), red);
        assert_eq!(l.index_over_standard(), BigInt::from(2));
        assert_eq!(EnlargedLattice::standard(6).index_over_standard(), BigInt::from(1));
    }

    #[test]
    fn cosets_of_quotient_lattice() {
        let l = EnlargedLattice::with_extra(6, vec![w1()]).unwrap();
        let c = l.cosets_over_standard();
        assert_eq!(c.len(), 2);
        assert!(c[0].is_zero());
        assert_eq!(c[1], w1());
    }

    #[test]
    fn s_squared_is_w_on_standard_lattice() {
        let shape = TorusShape::new(1).unwrap();
        let l = EnlargedLattice::standard(6);
        let s = realify(&s1(), shape).unwrap().reduced(&l);
        let ss = compose(&s, &s, &l);
        assert!(ss.linear().is_identity());
        assert_eq!(ss.translation(), &w1());
        assert!(!equal_mod_lattice(&ss, &AffineAuto::identity(6), &l));

        let la = EnlargedLattice::with_extra(6, vec![w1()]).unwrap();
        let s = s.reduced(&la);
        assert!(equal_mod_lattice(&compose(&s, &s, &la), &AffineAuto::identity(6), &la));
    }

    #[test]
    fn rs_first_coordinate() {
        // rs(z)_1 = z_1 - b_2 with b_2 = tau/2
        let shape = TorusShape::new(1).unwrap();
        let l = EnlargedLattice::standard(6);
        let r = realify(&r1(), shape).unwrap();
        let s = realify(&s1(), shape).unwrap();
        let rs = compose(&r, &s, &l);
        assert_eq!(block(rs.linear(), 0, 0), scalar_block(1));
        assert_eq!(block(rs.linear(), 0, 1), scalar_block(0));
        let (p, qq) = rs.translation().complex_coord(0);
        assert_eq!((p.clone(), qq.clone()), (q(0, 1), q(1, 2)));
    }

    #[test]
    fn inverse_examples() {
        let shape = TorusShape::new(1).unwrap();
        let l = EnlargedLattice::with_extra(6, vec![w1()]).unwrap();
        let id = AffineAuto::identity(6);
        assert_eq!(inverse(&id, &l), id);

        let std = EnlargedLattice::standard(6);
        let tw = AffineAuto::new(RatMatrix::identity(6), w1(), &std).unwrap();
        assert!(equal_mod_lattice(&inverse(&tw, &std), &tw, &std));

        let r = AffineAuto::new(realify(&r1(), shape).unwrap().linear().clone(), r1().translation().clone(), &l).unwrap();
        let mut r3 = r.clone();
        for _ in 0..2 {
            r3 = compose(&r3, &r, &l);
        }
        assert!(equal_mod_lattice(&inverse(&r, &l), &r3, &l));
        assert!(compose(&r, &inverse(&r, &l), &l).is_identity(&l));
    }

    #[test]
    fn affine_auto_rejects_non_preserving_linear_part() {
        let l = EnlargedLattice::standard(2);
        let mut m = RatMatrix::identity(2);
        m[(0, 0)] = q(2, 1);
        assert!(AffineAuto::new(m, TorsionPoint::zero(2), &l).is_err());
        let mut half = RatMatrix::identity(2);
        half[(0, 1)] = q(1, 2);
        assert!(AffineAuto::new(half, TorsionPoint::zero(2), &l).is_err());
    }

    #[test]
    fn complex_compose_matches_real_compose() {
        let shape = TorusShape::new(1).unwrap();
        let l = EnlargedLattice::standard(6);
        let lhs = realify(&r1().compose(&s1()), shape).unwrap().reduced(&l);
        let rhs = compose(&realify(&r1(), shape).unwrap(), &realify(&s1(), shape).unwrap(), &l);
        assert_eq!(lhs, rhs);
    }
}
