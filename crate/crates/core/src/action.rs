//! Exact decision procedures for finite groups of torus automorphisms:
//! element orders, translations, fixed points, closure and conjugacy.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{left_nullspace, subgroup_membership, RatMatrix};
use crate::torus::{compose, equal_mod_lattice, inverse, AffineAuto, EnlargedLattice, TorsionPoint};

/// Default cap on the number of search nodes the torsion oracle may visit.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub closure: usize,
    pub order: usize,
}

impl Caps {
    /// Caps sized for a dihedral group of order `8n` with rotations of order
    /// `4n`, leaving a factor of four (closure) and eight (order) of slack.
    pub fn for_rotation_order(rotation_order: usize) -> Self {
        Caps {
            closure: 4 * 2 * rotation_order,
            order: 8 * rotation_order,
        }
    }
}

/// Normal-form label `r^rotation s^reflection`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WordLabel {
    pub rotation: usize,
    pub reflection: u8,
}

impl fmt::Display for WordLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rotation {
            0 => {}
            1 => parts.push("r".to_string()),
            a => parts.push(format!("r^{a}")),
        }
        if self.reflection == 1 {
            parts.push("s".to_string());
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub auto: AffineAuto,
    pub label: Option<WordLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementReport {
    /// Normal-form word, or the BFS discovery index rendered as `#i` when the
    /// group was not recognised as dihedral.
    pub word: String,
    #[serde(skip)]
    pub label: Option<WordLabel>,
    pub order: usize,
    pub is_translation: bool,
    pub has_fixed_point: bool,
}

/// `g^k`, by repeated squaring.
pub fn power(g: &AffineAuto, k: usize, lattice: &EnlargedLattice) -> AffineAuto {
    let mut result = AffineAuto::identity(g.dim());
    let mut base = g.reduced(lattice);
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = compose(&result, &base, lattice);
        }
        k >>= 1;
        if k > 0 {
            base = compose(&base, &base, lattice);
        }
    }
    result
}

/// Smallest `k >= 1` with `g^k` the identity modulo the lattice.
pub fn order(g: &AffineAuto, lattice: &EnlargedLattice, cap: usize) -> Result<usize> {
    let g = g.reduced(lattice);
    let mut acc = g.clone();
    for k in 1..=cap {
        if acc.is_identity(lattice) {
            return Ok(k);
        }
        acc = compose(&acc, &g, lattice);
    }
    Err(Error::OrderCapExceeded { cap })
}

/// A translation is a non-identity element whose linear part is the identity.
pub fn is_translation(g: &AffineAuto, lattice: &EnlargedLattice) -> bool {
    g.is_identity_linear() && !lattice.contains(g.translation().coords())
}

/// Decides whether `g(x) = x` has a solution on the torus `R^m / L`.
///
/// `g(x) = x` means `(M - I)x + t` lies in `L`. Let `N` span the left
/// nullspace of `M - I`. The image of `M - I` over the reals is exactly the
/// kernel of `N`, so a solution exists iff `N(t - l) = 0` for some `l` in `L`,
/// i.e. iff `N t` lies in the subgroup generated by the `N g_i` over the
/// lattice generators `g_i`. `M - I` is rational, so its real image is cut out
/// by rational equations and real solvability coincides with rational
/// solvability; the whole decision stays exact.
pub fn exists_fixed_point(g: &AffineAuto, lattice: &EnlargedLattice) -> bool {
    let c = g.linear().sub(&RatMatrix::identity(g.dim()));
    let n = left_nullspace(&c);
    let target = n.mul_vec(g.translation().coords());
    let gens: Vec<Vec<BigRational>> = lattice
        .generators()
        .iter()
        .map(|l| n.mul_vec(l.coords()))
        .collect();
    subgroup_membership(&target, &gens)
}

/// Breadth-first closure of `gens` under composition, starting from the
/// identity. The result is in discovery order with the identity first.
pub fn closure(gens: &[AffineAuto], lattice: &EnlargedLattice, cap: usize) -> Result<Vec<AffineAuto>> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidParameter("closure needs at least one generator".into()));
    };
    let m = first.dim();
    let gens: Vec<AffineAuto> = gens.iter().map(|g| g.reduced(lattice)).collect();
    let mut elements = vec![AffineAuto::identity(m)];
    let mut index: HashMap<AffineAuto, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut i = 0;
    while i < elements.len() {
        for g in &gens {
            let next = compose(&elements[i], g, lattice);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() == cap {
                return Err(Error::ClosureCapExceeded { cap });
            }
            index.insert(next.clone(), elements.len());
            elements.push(next);
        }
        i += 1;
    }
    Ok(elements)
}

/// Partition of `group` (given closed under composition and inversion) into
/// conjugacy classes, as lists of indices into `group`. Classes are ordered
/// by their smallest index.
pub fn conjugacy_classes(group: &[AffineAuto], lattice: &EnlargedLattice) -> Vec<Vec<usize>> {
    let index: HashMap<&AffineAuto, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let inverses: Vec<AffineAuto> = group.iter().map(|h| inverse(h, lattice)).collect();
    let mut class_of = vec![usize::MAX; group.len()];
    let mut classes = Vec::new();
    for (i, g) in group.iter().enumerate() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = BTreeSet::new();
        for (h, h_inv) in group.iter().zip(&inverses) {
            let conj = compose(&compose(h, g, lattice), h_inv, lattice);
            let j = *index
                .get(&conj)
                .expect("conjugacy classes need a group closed under composition");
            class_of[j] = id;
            members.insert(j);
        }
        classes.push(members.into_iter().collect());
    }
    classes
}

/// Integer form of the condition `g(p) - p - c` in `Z^m` for `p` in
/// `(1/D) Z^m`: row `i` holds when `sum_k coeff_k * a_k + constant` is divisible
/// by `modulus`, where `p_k = a_k / D`.
struct RowCheck {
    terms: Vec<(usize, i128)>,
    constant: i128,
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128()
        .ok_or_else(|| Error::InvalidParameter("torsion oracle input too large".into()))
}

struct TorsionSearch {
    denominator: i128,
    modulus: i128,
    order: Vec<usize>,
    // rows checked right after assigning order[level]; index m-th slot holds
    // constant rows checked before the search starts
    fire: Vec<Vec<usize>>,
    coset_rows: Vec<Vec<RowCheck>>,
}

impl TorsionSearch {
    fn new(g: &AffineAuto, lattice: &EnlargedLattice, denominator: usize) -> Result<Self> {
        let m = g.dim();
        let c = g.linear().sub(&RatMatrix::identity(m));
        let cosets = lattice.cosets_over_standard();
        let d = BigInt::from(denominator);
        let mut modulus = d.clone();
        for i in 0..m {
            for j in 0..m {
                modulus = modulus.lcm(&(c[(i, j)].denom() * &d));
            }
            modulus = modulus.lcm(g.translation().coords()[i].denom());
        }
        for coset in &cosets {
            for x in coset.coords() {
                modulus = modulus.lcm(x.denom());
            }
        }
        let modulus_q = BigRational::from_integer(modulus.clone());
        let step = BigRational::new(modulus.clone(), d);

        let support: Vec<Vec<usize>> = (0..m)
            .map(|i| (0..m).filter(|&j| !c[(i, j)].is_zero()).collect())
            .collect();
        let order = variable_order(&support, m);
        let mut position = vec![0; m];
        for (level, &v) in order.iter().enumerate() {
            position[v] = level;
        }
        let mut fire = vec![Vec::new(); m + 1];
        for (i, s) in support.iter().enumerate() {
            match s.iter().map(|&v| position[v]).max() {
                Some(level) => fire[level].push(i),
                None => fire[m].push(i),
            }
        }

        let mut coset_rows = Vec::with_capacity(cosets.len());
        for coset in &cosets {
            let mut rows = Vec::with_capacity(m);
            for i in 0..m {
                let terms = support[i]
                    .iter()
                    .map(|&j| {
                        let v = &c[(i, j)] * &step;
                        Ok((j, to_i128(&v.to_integer())?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let k = (&g.translation().coords()[i] - &coset.coords()[i]) * &modulus_q;
                rows.push(RowCheck {
                    terms,
                    constant: to_i128(&k.to_integer())?,
                });
            }
            coset_rows.push(rows);
        }
        Ok(TorsionSearch {
            denominator: denominator as i128,
            modulus: to_i128(&modulus)?,
            order,
            fire,
            coset_rows,
        })
    }

    /// Depth-first enumeration of all `a` in `{0..D-1}^m`, abandoning a
    /// partial assignment only once one of its fully assigned rows fails.
    /// `visit` returns `false` to stop early.
    fn run(&self, budget: u64, visit: &mut dyn FnMut(&[i128]) -> bool) -> Result<()> {
        let m = self.order.len();
        let mut nodes = 0u64;
        for rows in &self.coset_rows {
            if !self.fire[m].iter().all(|&i| self.holds(&rows[i], &[])) {
                continue;
            }
            let mut a = vec![0i128; m];
            if !self.descend(rows, 0, &mut a, &mut nodes, budget, visit)? {
                return Ok(());
            }
        }
        Ok(())
    }

    fn holds(&self, row: &RowCheck, a: &[i128]) -> bool {
        let v = row
            .terms
            .iter()
            .fold(row.constant, |acc, &(j, c)| acc + c * a[j]);
        v.rem_euclid(self.modulus) == 0
    }

    fn descend(
        &self,
        rows: &[RowCheck],
        level: usize,
        a: &mut Vec<i128>,
        nodes: &mut u64,
        budget: u64,
        visit: &mut dyn FnMut(&[i128]) -> bool,
    ) -> Result<bool> {
        if level == self.order.len() {
            return Ok(visit(a));
        }
        let var = self.order[level];
        for value in 0..self.denominator {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::OracleBudgetExceeded { budget });
            }
            a[var] = value;
            if self.fire[level].iter().all(|&i| self.holds(&rows[i], a)) && !self.descend(rows, level + 1, a, nodes, budget, visit)? {
                return Ok(false);
            }
        }
        a[var] = 0;
        Ok(true)
    }
}

/// Greedy variable order: prefer the variable that completes the most rows,
/// then the one sharing rows with already placed variables. Only affects how
/// early failing assignments are abandoned, never which points are visited.
fn variable_order(support: &[Vec<usize>], m: usize) -> Vec<usize> {
    let mut placed = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in (0..m).filter(|&v| !placed[v]) {
            let mut completes = 0;
            let mut touches = 0;
            for s in support.iter().filter(|s| s.contains(&v)) {
                if s.iter().all(|&u| u == v || placed[u]) {
                    completes += 1;
                }
                if s.iter().any(|&u| placed[u]) {
                    touches += 1;
                }
            }
            if best.is_none_or(|(c, t, _)| (completes, touches) > (c, t)) {
                best = Some((completes, touches, v));
            }
        }
        let (_, _, v) = best.expect("unplaced variable");
        placed[v] = true;
        order.push(v);
    }
    order
}

fn grid_point(a: &[i128], denominator: usize) -> Vec<BigRational> {
    let d = BigInt::from(denominator);
    a.iter()
        .map(|&x| BigRational::new(BigInt::from(x), d.clone()))
        .collect()
}

fn check_denominator(denominator: usize) -> Result<()> {
    if denominator == 0 {
        return Err(Error::InvalidParameter("oracle denominator must be at least 1".into()));
    }
    Ok(())
}

/// All points of `(1/D) Z^m` fixed by `g` modulo the lattice, as canonical
/// representatives in ascending order. Independent of
/// [`exists_fixed_point`]: it enumerates the grid and tests `g(p) - p` for
/// lattice membership coordinate by coordinate.
pub fn torsion_fixed_points_bruteforce(
    g: &AffineAuto,
    lattice: &EnlargedLattice,
    denominator: usize,
    budget: u64,
) -> Result<Vec<TorsionPoint>> {
    check_denominator(denominator)?;
    let search = TorsionSearch::new(g, lattice, denominator)?;
    let mut found = BTreeSet::new();
    search.run(budget, &mut |a| {
        found.insert(lattice.reduce(&grid_point(a, denominator)));
        true
    })?;
    Ok(found.into_iter().collect())
}

/// Like [`torsion_fixed_points_bruteforce`] but stops at the first hit.
pub fn find_torsion_fixed_point(
    g: &AffineAuto,
    lattice: &EnlargedLattice,
    denominator: usize,
    budget: u64,
) -> Result<Option<TorsionPoint>> {
    check_denominator(denominator)?;
    let search = TorsionSearch::new(g, lattice, denominator)?;
    let mut hit = None;
    search.run(budget, &mut |a| {
        hit = Some(lattice.reduce(&grid_point(a, denominator)));
        false
    })?;
    Ok(hit)
}

/// Labels every element of `group` as `rotation^a reflection^b` if the group
/// is exactly `{rotation^a reflection^b : 0 <= a < ord(rotation), b in {0,1}}`
/// with all these words distinct.
pub fn label_dihedral(
    group: &[AffineAuto],
    rotation: &AffineAuto,
    reflection: &AffineAuto,
    lattice: &EnlargedLattice,
    order_cap: usize,
) -> Result<Option<Vec<WordLabel>>> {
    let k = order(rotation, lattice, order_cap)?;
    if group.len() != 2 * k {
        return Ok(None);
    }
    let index: HashMap<&AffineAuto, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut labels: Vec<Option<WordLabel>> = vec![None; group.len()];
    let reflection = reflection.reduced(lattice);
    let mut rot = AffineAuto::identity(rotation.dim());
    let rotation = rotation.reduced(lattice);
    for a in 0..k {
        for (b, el) in [(0u8, rot.clone()), (1u8, compose(&rot, &reflection, lattice))] {
            let Some(&i) = index.get(&el) else {
                return Ok(None);
            };
            if labels[i].is_some() {
                return Ok(None);
            }
            labels[i] = Some(WordLabel {
                rotation: a,
                reflection: b,
            });
        }
        rot = compose(&rot, &rotation, lattice);
    }
    Ok(labels.into_iter().collect())
}

/// Whether `rotation^k = reflection^2 = (rotation reflection)^2 = 1` holds.
pub fn dihedral_relations_hold(
    rotation: &AffineAuto,
    reflection: &AffineAuto,
    k: usize,
    lattice: &EnlargedLattice,
) -> bool {
    let rs = compose(rotation, reflection, lattice);
    power(rotation, k, lattice).is_identity(lattice)
        && power(reflection, 2, lattice).is_identity(lattice)
        && power(&rs, 2, lattice).is_identity(lattice)
}

#[derive(Debug, Clone)]
pub struct GroupAnalysis {
    /// Closed group in BFS order, or in `(rotation, reflection)` label order
    /// once labelled.
    pub elements: Vec<GroupElement>,
    /// One report per element, aligned with `elements`.
    pub reports: Vec<ElementReport>,
    pub group_size: usize,
    pub is_free: bool,
    pub has_no_translations: bool,
    pub dihedral_shape: bool,
    pub conjugacy_classes: Vec<Vec<usize>>,
}

impl GroupAnalysis {
    /// Number of conjugacy classes made up of labelled reflections `r^a s`.
    pub fn symmetry_class_count(&self) -> usize {
        self.conjugacy_classes
            .iter()
            .filter(|c| {
                c.iter()
                    .all(|&i| self.elements[i].label.is_some_and(|l| l.reflection == 1))
            })
            .count()
    }

    pub fn find(&self, label: WordLabel) -> Option<usize> {
        self.elements.iter().position(|e| e.label == Some(label))
    }
}

/// Closure plus per-element order, translation and fixed-point analysis.
///
/// When exactly two generators are given they are treated as `(r, s)`; if the
/// closure is dihedral on them, elements are labelled `r^a s^b` and sorted by
/// label.
pub fn analyze_group(gens: &[AffineAuto], lattice: &EnlargedLattice, caps: Caps) -> Result<GroupAnalysis> {
    let group = closure(gens, lattice, caps.closure)?;
    let labels = if gens.len() == 2 {
        label_dihedral(&group, &gens[0], &gens[1], lattice, caps.order)?
    } else {
        None
    };
    let mut elements: Vec<GroupElement> = match labels {
        Some(labels) => group
            .into_iter()
            .zip(labels)
            .map(|(auto, l)| GroupElement { auto, label: Some(l) })
            .collect(),
        None => group
            .into_iter()
            .map(|auto| GroupElement { auto, label: None })
            .collect(),
    };
    elements.sort_by_key(|e| e.label);

    let mut reports = Vec::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        let identity = e.auto.is_identity(lattice);
        reports.push(ElementReport {
            word: match e.label {
                Some(l) => l.to_string(),
                None => format!("#{i}"),
            },
            label: e.label,
            order: order(&e.auto, lattice, caps.order)?,
            is_translation: is_translation(&e.auto, lattice),
            has_fixed_point: identity || exists_fixed_point(&e.auto, lattice),
        });
    }
    let group_size = elements.len();
    let is_free = elements
        .iter()
        .zip(&reports)
        .all(|(e, r)| e.auto.is_identity(lattice) || !r.has_fixed_point);
    let has_no_translations = reports.iter().all(|r| !r.is_translation);
    let dihedral_shape = gens.len() == 2
        && group_size.is_multiple_of(2)
        && dihedral_relations_hold(&gens[0], &gens[1], group_size / 2, lattice);
    let autos: Vec<AffineAuto> = elements.iter().map(|e| e.auto.clone()).collect();
    let conjugacy_classes = conjugacy_classes(&autos, lattice);
    Ok(GroupAnalysis {
        elements,
        reports,
        group_size,
        is_free,
        has_no_translations,
        dihedral_shape,
        conjugacy_classes,
    })
}

/// Convenience for callers holding a [`GroupElement`].
pub fn same_element(a: &GroupElement, b: &GroupElement, lattice: &EnlargedLattice) -> bool {
    equal_mod_lattice(&a.auto, &b.auto, lattice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::TorsionPoint;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn neg_identity(m: usize) -> RatMatrix {
        let mut a = RatMatrix::identity(m);
        for i in 0..m {
            a[(i, i)] = q(-1, 1);
        }
        a
    }

    #[test]
    fn identity_basics() {
        let l = EnlargedLattice::standard(2);
        let id = AffineAuto::identity(2);
        assert_eq!(order(&id, &l, 1).unwrap(), 1);
        assert!(!is_translation(&id, &l));
        assert!(exists_fixed_point(&id, &l));
        assert_eq!(closure(std::slice::from_ref(&id), &l, 4).unwrap().len(), 1);
        assert_eq!(conjugacy_classes(&[id], &l), vec![vec![0]]);
    }

    #[test]
    fn half_translation_on_circle_pair() {
        let l = EnlargedLattice::standard(2);
        let t = AffineAuto::new(RatMatrix::identity(2), TorsionPoint::from_ratios(&[(1, 2), (0, 1)]), &l).unwrap();
        assert_eq!(order(&t, &l, 10).unwrap(), 2);
        assert!(is_translation(&t, &l));
        assert!(!exists_fixed_point(&t, &l));
        assert!(torsion_fixed_points_bruteforce(&t, &l, 4, 1000).unwrap().is_empty());
    }

    #[test]
    fn negation_fixes_two_torsion() {
        // z -> -z on R^2/Z^2 fixes exactly the four 2-torsion points
        let l = EnlargedLattice::standard(2);
        let g = AffineAuto::new(neg_identity(2), TorsionPoint::zero(2), &l).unwrap();
        assert!(exists_fixed_point(&g, &l));
        let pts = torsion_fixed_points_bruteforce(&g, &l, 4, 1000).unwrap();
        assert_eq!(pts.len(), 4);
        let odd = torsion_fixed_points_bruteforce(&g, &l, 3, 1000).unwrap();
        assert_eq!(odd, vec![TorsionPoint::zero(2)]);
    }

    #[test]
    fn negation_plus_shift_still_has_fixed_points() {
        // -z + 1/2 = z has z = 1/4
        let l = EnlargedLattice::standard(1);
        let g = AffineAuto::new(neg_identity(1), TorsionPoint::from_ratios(&[(1, 2)]), &l).unwrap();
        assert!(exists_fixed_point(&g, &l));
        assert!(torsion_fixed_points_bruteforce(&g, &l, 2, 100).unwrap().is_empty());
        assert_eq!(
            torsion_fixed_points_bruteforce(&g, &l, 4, 100).unwrap(),
            vec![TorsionPoint::from_ratios(&[(1, 4)]), TorsionPoint::from_ratios(&[(3, 4)])]
        );
    }

    #[test]
    fn order_cap_is_reported() {
        let l = EnlargedLattice::standard(1);
        let t = AffineAuto::new(RatMatrix::identity(1), TorsionPoint::from_ratios(&[(1, 7)]), &l).unwrap();
        assert_eq!(order(&t, &l, 7).unwrap(), 7);
        assert_eq!(order(&t, &l, 6), Err(Error::OrderCapExceeded { cap: 6 }));
        assert_eq!(closure(&[t], &l, 5), Err(Error::ClosureCapExceeded { cap: 5 }));
    }

    #[test]
    fn oracle_budget_is_enforced() {
        let l = EnlargedLattice::standard(3);
        let id = AffineAuto::identity(3);
        assert_eq!(
            torsion_fixed_points_bruteforce(&id, &l, 10, 500),
            Err(Error::OracleBudgetExceeded { budget: 500 })
        );
        assert!(find_torsion_fixed_point(&id, &l, 10, 500).unwrap().is_some());
        assert!(torsion_fixed_points_bruteforce(&id, &l, 0, 500).is_err());
    }

    #[test]
    fn word_label_rendering() {
        let l = |rotation, reflection| WordLabel { rotation, reflection };
        assert_eq!(l(0, 0).to_string(), "");
        assert_eq!(l(1, 0).to_string(), "r");
        assert_eq!(l(3, 1).to_string(), "r^3 s");
        assert_eq!(l(0, 1).to_string(), "s");
    }
}
