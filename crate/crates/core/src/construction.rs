//! The dihedral action of order `8n` on `A = (E^{2n} x E') / <w>` and its
//! rotation-power subgroups.
//!
//! With `z = (z_1, ..., z_{2n+1})`:
//!
//! ```text
//! r(z) = (-z_{2n}, z_1, ..., z_{2n-1}, z_{2n+1} + 1/4n)
//! s(z) = (-z_{2n} + b_1, -z_{2n-1} + b_2, ..., -z_1 + b_{2n}, -z_{2n+1})
//! w    = (1/2, ..., 1/2, 0)
//! b_{2i-1} = 1/2 + tau/2,  b_{2i} = tau/2
//! ```
//!
//! Every check below is carried out with exact arithmetic by the generic
//! machinery in [`crate::action`]; nothing is special-cased per `n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::action::{self, analyze_group, dihedral_relations_hold, power, Caps, GroupAnalysis, WordLabel};
use crate::error::{Error, Result};
use crate::torus::{compose, equal_mod_lattice, realify, AffineAuto, ComplexMonomialMap, EnlargedLattice, TorsionPoint, TorusShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    pub n: usize,
}

impl ConstructionParams {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        Ok(ConstructionParams { n })
    }

    pub fn shape(&self) -> TorusShape {
        TorusShape::new(self.n).expect("n >= 1")
    }

    pub fn dimension(&self) -> usize {
        2 * self.n + 1
    }

    pub fn rotation_order(&self) -> usize {
        4 * self.n
    }
}

/// Deliberate breakages of the construction, used as negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    #[default]
    None,
    /// `r` without its `1/4n` shift on the last coordinate.
    DropRotationShift,
    /// `s` with every `b_i = 0`.
    ZeroB,
    /// Work on `A'` itself instead of `A' / <w>`.
    SkipQuotient,
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// `w = (1/2, ..., 1/2, 0)`, i.e. `(1/2, 0)` in each `E` block.
pub fn build_w(n: usize) -> TorsionPoint {
    let shape = TorusShape::new(n).expect("n >= 1");
    let mut v = vec![BigRational::zero(); shape.real_dim()];
    for i in 0..2 * n {
        v[2 * i] = half();
    }
    TorsionPoint::new(v)
}

/// `b_1, ..., b_{2n}` as `(1-part, tau-part)` pairs.
pub fn build_b(n: usize) -> Vec<(BigRational, BigRational)> {
    (1..=2 * n)
        .map(|i| {
            if i % 2 == 1 {
                (half(), half())
            } else {
                (BigRational::zero(), half())
            }
        })
        .collect()
}

pub fn build_r(n: usize) -> ComplexMonomialMap {
    build_r_mutated(n, Mutation::None)
}

pub fn build_s(n: usize) -> ComplexMonomialMap {
    build_s_mutated(n, Mutation::None)
}

fn build_r_mutated(n: usize, mutation: Mutation) -> ComplexMonomialMap {
    let k = 2 * n + 1;
    let mut perm = Vec::with_capacity(k);
    let mut signs = Vec::with_capacity(k);
    perm.push(2 * n - 1);
    signs.push(-1);
    for j in 1..2 * n {
        perm.push(j - 1);
        signs.push(1);
    }
    perm.push(2 * n);
    signs.push(1);
    let mut t = vec![BigRational::zero(); 2 * k];
    if mutation != Mutation::DropRotationShift {
        t[2 * (2 * n)] = BigRational::new(BigInt::one(), BigInt::from(4 * n));
    }
    ComplexMonomialMap::new(perm, signs, TorsionPoint::new(t)).expect("valid rotation")
}

fn build_s_mutated(n: usize, mutation: Mutation) -> ComplexMonomialMap {
    let k = 2 * n + 1;
    let mut perm: Vec<usize> = (0..2 * n).rev().collect();
    perm.push(2 * n);
    let signs = vec![-1; k];
    let mut t = vec![BigRational::zero(); 2 * k];
    if mutation != Mutation::ZeroB {
        for (i, (p, q)) in build_b(n).into_iter().enumerate() {
            t[2 * i] = p;
            t[2 * i + 1] = q;
        }
    }
    ComplexMonomialMap::new(perm, signs, TorsionPoint::new(t)).expect("valid reflection")
}

/// Period lattice of `A = A' / <w>`: `Z^m` plus the lift of `w`.
pub fn quotient_lattice(n: usize) -> EnlargedLattice {
    let shape = TorusShape::new(n).expect("n >= 1");
    EnlargedLattice::with_extra(shape.real_dim(), vec![build_w(n)]).expect("valid lattice")
}

/// Period lattice of `A'`.
pub fn product_lattice(n: usize) -> EnlargedLattice {
    EnlargedLattice::standard(TorusShape::new(n).expect("n >= 1").real_dim())
}

/// Realified generators and lattices for one (possibly mutated) build.
#[derive(Debug, Clone)]
pub struct Construction {
    pub params: ConstructionParams,
    pub mutation: Mutation,
    pub w: TorsionPoint,
    pub r: AffineAuto,
    pub s: AffineAuto,
    /// `r` and `s` reduced modulo `Z^m` only, i.e. as automorphisms of `A'`.
    pub r_product: AffineAuto,
    pub s_product: AffineAuto,
    /// Lattice of the torus acted on: `A` normally, `A'` under `SkipQuotient`.
    pub lattice: EnlargedLattice,
    pub product_lattice: EnlargedLattice,
}

impl Construction {
    pub fn new(params: ConstructionParams, mutation: Mutation) -> Self {
        let n = params.n;
        let shape = params.shape();
        let lattice = if mutation == Mutation::SkipQuotient {
            product_lattice(n)
        } else {
            quotient_lattice(n)
        };
        let product = product_lattice(n);
        let r_product = realify(&build_r_mutated(n, mutation), shape)
            .expect("rotation respects the factor partition")
            .reduced(&product);
        let s_product = realify(&build_s_mutated(n, mutation), shape)
            .expect("reflection respects the factor partition")
            .reduced(&product);
        Construction {
            params,
            mutation,
            w: build_w(n),
            r: r_product.reduced(&lattice),
            s: s_product.reduced(&lattice),
            r_product,
            s_product,
            lattice,
            product_lattice: product,
        }
    }

    pub fn rs(&self) -> AffineAuto {
        compose(&self.r, &self.s, &self.lattice)
    }

    pub fn caps(&self) -> Caps {
        Caps::for_rotation_order(self.params.rotation_order())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step1 {
    pub r_order: Option<usize>,
    pub r_order_on_product: Option<usize>,
    pub linear_order: Option<usize>,
    pub linear_fixes_w: bool,
    /// Every `r^j`, `0 < j < 4n`, is fixed-point-free on the acted torus.
    pub rotation_powers_free: bool,
    pub rotation_powers_not_translations: bool,
    /// Last coordinate of `r^j(z) - z` is `j/4n` (1-part) for `0 < j < 4n`.
    pub last_coordinate_shift: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step2 {
    /// `b_i - b_{2n+1-i} = 1/2` (mod 1) for every `i`.
    pub b_differences: bool,
    /// `s^2` is the translation by `w` on `A'`.
    pub s_squared_is_w: bool,
    pub linear_fixes_w: bool,
    pub s_order: Option<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step3 {
    pub rs_order: Option<usize>,
    pub relations_hold: bool,
    pub closure_size: Option<usize>,
    pub dihedral_shape: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step4 {
    /// Conjugacy classes among the `r^a s`. Recorded, not gating.
    pub symmetry_class_count: Option<usize>,
    pub s_not_translation: bool,
    pub rs_not_translation: bool,
    pub symmetries_not_translations: bool,
    pub symmetries_free: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step5 {
    pub s_free: bool,
    pub rs_free: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremCertificate {
    pub n: usize,
    pub mutation: Mutation,
    pub dimension: usize,
    pub group_order_expected: usize,
    pub group_order_actual: Option<usize>,
    pub is_free: bool,
    pub has_no_translations: bool,
    pub step1: Step1,
    pub step2: Step2,
    pub step3: Step3,
    pub step4: Step4,
    pub step5: Step5,
    /// Failure raised by closure or order computations, if any.
    pub failure: Option<String>,
    pub theorem_verified: bool,
    #[serde(skip)]
    pub analysis: Option<GroupAnalysis>,
}

fn order_opt(g: &AffineAuto, lattice: &EnlargedLattice, cap: usize, failure: &mut Option<String>) -> Option<usize> {
    match action::order(g, lattice, cap) {
        Ok(k) => Some(k),
        Err(e) => {
            failure.get_or_insert_with(|| e.to_string());
            None
        }
    }
}

pub fn verify_theorem(params: ConstructionParams) -> TheoremCertificate {
    verify_construction(&Construction::new(params, Mutation::None))
}

pub fn verify_theorem_mutated(params: ConstructionParams, mutation: Mutation) -> TheoremCertificate {
    verify_construction(&Construction::new(params, mutation))
}

/// Runs all five step checks on `c`. Cap violations are recorded as failures
/// in the certificate and make every dependent check fail.
pub fn verify_construction(c: &Construction) -> TheoremCertificate {
    verify_construction_with_caps(c, c.caps())
}

pub fn verify_construction_with_caps(c: &Construction, caps: Caps) -> TheoremCertificate {
    let n = c.params.n;
    let k = c.params.rotation_order();
    let lattice = &c.lattice;
    let m = c.params.shape().real_dim();
    let mut failure = None;

    let analysis = match analyze_group(&[c.r.clone(), c.s.clone()], lattice, caps) {
        Ok(a) => Some(a),
        Err(e) => {
            failure = Some(e.to_string());
            None
        }
    };

    // Step 1
    let r_order = order_opt(&c.r, lattice, caps.order, &mut failure);
    let r_order_on_product = order_opt(&c.r_product, &c.product_lattice, caps.order, &mut failure);
    let big_r = AffineAuto::from_parts_unchecked(c.r.linear().clone(), TorsionPoint::zero(m));
    let linear_order = order_opt(&big_r, &c.product_lattice, caps.order, &mut failure);
    let fixes_w = |g: &AffineAuto| {
        let image = TorsionPoint::new(g.linear().mul_vec(c.w.coords()));
        c.product_lattice.contains(image.sub(&c.w).coords())
    };
    let r_linear_fixes_w = fixes_w(&c.r);
    let mut rotation_powers_free = true;
    let mut rotation_powers_not_translations = true;
    let mut last_coordinate_shift = true;
    let mut rj = c.r.clone();
    for j in 1..k {
        rotation_powers_free &= !action::exists_fixed_point(&rj, lattice);
        rotation_powers_not_translations &= !action::is_translation(&rj, lattice);
        let unreduced = power(&c.r_product, j, &c.product_lattice);
        let last = &unreduced.translation().coords()[2 * (2 * n)];
        let expected = BigRational::new(BigInt::from(j), BigInt::from(k));
        last_coordinate_shift &= *last == expected;
        rj = compose(&rj, &c.r, lattice);
    }
    let step1 = Step1 {
        r_order,
        r_order_on_product,
        linear_order,
        linear_fixes_w: r_linear_fixes_w,
        rotation_powers_free,
        rotation_powers_not_translations,
        last_coordinate_shift,
        passed: r_order == Some(k)
            && r_order_on_product == Some(k)
            && linear_order == Some(k)
            && r_linear_fixes_w
            && rotation_powers_free
            && rotation_powers_not_translations
            && last_coordinate_shift,
    };

    // Step 2
    let b = c.s_product.translation();
    let b_differences = (0..2 * n).all(|i| {
        let (p1, q1) = b.complex_coord(i);
        let (p2, q2) = b.complex_coord(2 * n - 1 - i);
        (p1 - p2 - half()).is_integer() && (q1 - q2).is_integer()
    });
    let s_squared = compose(&c.s_product, &c.s_product, &c.product_lattice);
    let w_translation = AffineAuto::translation_by(c.w.clone());
    let s_squared_is_w = equal_mod_lattice(&s_squared, &w_translation, &c.product_lattice);
    let s_linear_fixes_w = fixes_w(&c.s);
    let s_order = order_opt(&c.s, lattice, caps.order, &mut failure);
    let step2 = Step2 {
        b_differences,
        s_squared_is_w,
        linear_fixes_w: s_linear_fixes_w,
        s_order,
        passed: b_differences && s_squared_is_w && s_linear_fixes_w && s_order == Some(2),
    };

    // Step 3
    let rs = c.rs();
    let rs_order = order_opt(&rs, lattice, caps.order, &mut failure);
    let relations_hold = dihedral_relations_hold(&c.r, &c.s, k, lattice);
    let closure_size = analysis.as_ref().map(|a| a.group_size);
    let dihedral_shape = analysis.as_ref().is_some_and(|a| a.dihedral_shape);
    let step3 = Step3 {
        rs_order,
        relations_hold,
        closure_size,
        dihedral_shape,
        passed: r_order == Some(k)
            && s_order == Some(2)
            && rs_order == Some(2)
            && relations_hold
            && closure_size == Some(2 * k)
            && dihedral_shape,
    };

    // Step 4
    let symmetries: Vec<_> = analysis
        .as_ref()
        .map(|a| {
            a.reports
                .iter()
                .filter(|r| r.label.is_some_and(|l| l.reflection == 1))
                .cloned()
                .collect()
        })
        .unwrap_or_default();
    let labelled = analysis
        .as_ref()
        .is_some_and(|a| a.elements.iter().all(|e| e.label.is_some()));
    let s_not_translation = !action::is_translation(&c.s, lattice);
    let rs_not_translation = !action::is_translation(&rs, lattice);
    let symmetries_not_translations = labelled && symmetries.iter().all(|r| !r.is_translation);
    let symmetries_free = labelled && symmetries.iter().all(|r| !r.has_fixed_point);
    let step4 = Step4 {
        symmetry_class_count: analysis
            .as_ref()
            .filter(|_| labelled)
            .map(|a| a.symmetry_class_count()),
        s_not_translation,
        rs_not_translation,
        symmetries_not_translations,
        symmetries_free,
        passed: s_not_translation
            && rs_not_translation
            && symmetries_not_translations
            && symmetries_free
            && symmetries.len() == k,
    };

    // Step 5
    let s_free = !action::exists_fixed_point(&c.s, lattice);
    let rs_free = !action::exists_fixed_point(&rs, lattice);
    let step5 = Step5 {
        s_free,
        rs_free,
        passed: s_free && rs_free,
    };

    let is_free = analysis.as_ref().is_some_and(|a| a.is_free);
    let has_no_translations = analysis.as_ref().is_some_and(|a| a.has_no_translations);
    let theorem_verified = failure.is_none()
        && step1.passed
        && step2.passed
        && step3.passed
        && step4.passed
        && step5.passed
        && is_free
        && has_no_translations;
    TheoremCertificate {
        n,
        mutation: c.mutation,
        dimension: c.params.dimension(),
        group_order_expected: 2 * k,
        group_order_actual: closure_size,
        is_free,
        has_no_translations,
        step1,
        step2,
        step3,
        step4,
        step5,
        failure,
        theorem_verified,
        analysis,
    }
}

/// How `D_k` sits inside the order-`8n` action with `4n = lcm(4, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorollaryPlan {
    pub k: usize,
    pub params: ConstructionParams,
    /// The subgroup's rotation is `r^rotation_power`.
    pub rotation_power: usize,
    pub expected_dimension: usize,
    pub expected_order: usize,
}

pub fn build_corollary(k: usize) -> Result<CorollaryPlan> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let l = 4usize.lcm(&k);
    let params = ConstructionParams::new(l / 4)?;
    Ok(CorollaryPlan {
        k,
        params,
        rotation_power: l / k,
        expected_dimension: l / 2 + 1,
        expected_order: 2 * k,
    })
}

impl CorollaryPlan {
    /// Subgroup generators `(r^{4n/k}, s)`, realified on `A`.
    pub fn generators(&self, c: &Construction) -> (AffineAuto, AffineAuto) {
        (power(&c.r, self.rotation_power, &c.lattice), c.s.clone())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorollaryCertificate {
    pub plan: CorollaryPlan,
    pub dimension: usize,
    pub subgroup_order: Option<usize>,
    pub rotation_order: Option<usize>,
    pub relations_hold: bool,
    pub is_free: bool,
    pub has_no_translations: bool,
    pub failure: Option<String>,
    pub verified: bool,
    #[serde(skip)]
    pub analysis: Option<GroupAnalysis>,
}

pub fn verify_corollary(k: usize) -> Result<CorollaryCertificate> {
    let plan = build_corollary(k)?;
    let c = Construction::new(plan.params, Mutation::None);
    let (rho, s) = plan.generators(&c);
    let lattice = &c.lattice;
    let caps = Caps::for_rotation_order(k.max(2));
    let mut failure = None;
    let analysis = match analyze_group(&[rho.clone(), s.clone()], lattice, caps) {
        Ok(a) => Some(a),
        Err(e) => {
            failure = Some(e.to_string());
            None
        }
    };
    let rotation_order = order_opt(&rho, lattice, caps.order, &mut failure);
    let relations_hold = dihedral_relations_hold(&rho, &s, k, lattice);
    let subgroup_order = analysis.as_ref().map(|a| a.group_size);
    let is_free = analysis.as_ref().is_some_and(|a| a.is_free);
    let has_no_translations = analysis.as_ref().is_some_and(|a| a.has_no_translations);
    let dimension = c.params.dimension();
    let verified = failure.is_none()
        && subgroup_order == Some(plan.expected_order)
        && rotation_order == Some(k)
        && relations_hold
        && is_free
        && has_no_translations
        && dimension == plan.expected_dimension;
    Ok(CorollaryCertificate {
        plan,
        dimension,
        subgroup_order,
        rotation_order,
        relations_hold,
        is_free,
        has_no_translations,
        failure,
        verified,
        analysis,
    })
}

/// Label of `r^a s^b` in the order-`8n` action.
pub fn label(rotation: usize, reflection: u8) -> WordLabel {
    WordLabel { rotation, reflection }
}
