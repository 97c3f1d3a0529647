//! Flat tori `C / (Z + wZ)` with `q = dz^2`: the one family where every
//! finite-time quantity has a closed form, used to check the limit
//! formulas independently.
//!
//! Curve classes `(p, q)` stand for `p + q w`. Extremal length is
//! `|p + q w|^2 / Im w`, the vertical ray moves `w = x + iy` to
//! `x + i e^{-2t} y`, and the Teichmüller distance is half the hyperbolic
//! distance in the upper half-plane.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::foliation::{
    self, BasisFoliation, Component, ComponentKind, ExtendedValue, IntersectionVector,
    RayDecomposition,
};
use crate::rational::{self, Rational};

/// Absolute tolerance for floating-point comparisons in this module.
pub const TOLERANCE: f64 = 1e-9;

/// Largest denominator recognized when deciding whether `Re w` is rational.
pub const MAX_SLOPE_DENOMINATOR: i64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    re: f64,
    im: f64,
}

impl TorusPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() || im <= 0.0 {
            return Err(Error::InvalidTorus);
        }
        Ok(TorusPoint { re, im })
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }
}

/// Primitive homology class `(p, q)`, sign-normalized so that `q > 0`, or
/// `q = 0, p = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    p: i64,
    q: i64,
}

impl CurveClass {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p.gcd(&q) != 1 {
            return Err(Error::NonPrimitiveCurve { p, q });
        }
        if q < 0 || (q == 0 && p < 0) {
            // (p, q) and (-p, -q) are the same unoriented curve
            return Ok(CurveClass { p: -p, q: -q });
        }
        Ok(CurveClass { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

/// Geometric intersection number `|ps - qr|`.
pub fn intersection(a: CurveClass, b: CurveClass) -> u64 {
    (a.p as i128 * b.q as i128 - a.q as i128 * b.p as i128).unsigned_abs() as u64
}

/// `Ext_w(p, q) = |p + q w|^2 / Im w`.
pub fn ext_torus(w: TorusPoint, c: CurveClass) -> f64 {
    let (p, q) = (c.p as f64, c.q as f64);
    let re = p + q * w.re;
    let im = q * w.im;
    (re * re + im * im) / w.im
}

/// Torus with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactTorus {
    pub re: Rational,
    pub im: Rational,
}

impl ExactTorus {
    pub fn new(re: Rational, im: Rational) -> Result<Self> {
        if !im.is_positive() {
            return Err(Error::InvalidTorus);
        }
        Ok(ExactTorus { re, im })
    }

    /// Exact value of the binary64 coordinates, with `Re w` snapped to a
    /// small-denominator fraction when it is the rounding of one.
    pub fn from_point(w: TorusPoint) -> Self {
        let re = match rational_slope(w.re) {
            Some((s, r)) => rational::ratio(s, r),
            None => rational::from_f64(w.re).expect("finite"),
        };
        let im = rational::from_f64(w.im).expect("finite");
        ExactTorus { re, im }
    }
}

pub fn ext_torus_exact(w: &ExactTorus, c: CurveClass) -> Rational {
    let p = rational::int(c.p);
    let q = rational::int(c.q);
    let re = &p + &q * &w.re;
    let im = &q * &w.im;
    (&re * &re + &im * &im) / &w.im
}

/// `w = x + iy  ->  x + i e^{-2t} y`.
pub fn vertical_ray(w: TorusPoint, t: f64) -> TorusPoint {
    TorusPoint { re: w.re, im: (-2.0 * t).exp() * w.im }
}

/// Horizontal ray: the vertical ray of `-q`, i.e. `x + i e^{2t} y`.
pub fn horizontal_ray(w: TorusPoint, t: f64) -> TorusPoint {
    vertical_ray(w, -t)
}

/// Vertical ray at `t = log(e_t)`, exactly.
pub fn vertical_ray_exact(w: &ExactTorus, e_t: &Rational) -> ExactTorus {
    ExactTorus { re: w.re.clone(), im: &w.im / (e_t * e_t) }
}

/// `(s, r)` with `r > 0` small and `s / r` rounding to `x`, if any.
pub fn rational_slope(x: f64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > MAX_SLOPE_DENOMINATOR {
            return None;
        }
        if h2 as f64 / k2 as f64 == x {
            return Some((h2, k2));
        }
        let frac = rest - a;
        if frac == 0.0 {
            return None;
        }
        rest = 1.0 / frac;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Vertical,
    Horizontal,
}

/// Single-component ray data of a torus.
///
/// The component `G` is normalized by `i(G, (1,0)) = 1` for the vertical
/// direction (so `m = 1/y`) and is the curve `(1,0)` for the horizontal one
/// (so `m = y`). The raw pair is `(1, y)` resp. `(y, 1)` with area `y`; the
/// unit-norm view has `a h = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusRayData {
    pub direction: Direction,
    pub torus: ExactTorus,
    pub decomposition: RayDecomposition,
    /// Core curve of the cylinder, when the leaves are closed.
    pub core: Option<CurveClass>,
    /// `k` with `core = k G`.
    pub core_multiple: u64,
}

impl TorusRayData {
    /// `i(G, c)` for the normalized component `G`.
    pub fn pairing(&self, c: CurveClass) -> Rational {
        let (p, q) = (rational::int(c.p), rational::int(c.q));
        match self.direction {
            Direction::Vertical => (p + q * &self.torus.re).abs(),
            Direction::Horizontal => q.abs(),
        }
    }

    /// True when `c` is a multiple of `G`, i.e. does not cross the leaves.
    pub fn is_parallel(&self, c: CurveClass) -> bool {
        self.pairing(c).is_zero()
    }

    /// Coefficient of `c = coeff * G` for parallel curves.
    pub fn basis_coefficient(&self, c: CurveClass) -> Option<Rational> {
        if !self.is_parallel(c) {
            return None;
        }
        Some(match self.direction {
            Direction::Vertical => rational::int(c.q.abs()),
            Direction::Horizontal => rational::int(c.p.abs()),
        })
    }

    pub fn shrink_limit(&self, c: CurveClass) -> Rational {
        let u = IntersectionVector::new(vec![self.pairing(c)]).expect("nonnegative");
        foliation::shrink_limit(&self.decomposition, &u).expect("one component")
    }

    /// Exact grow limit: finite for curves parallel to the leaves, `+inf`
    /// for curves crossing them.
    pub fn grow_limit(&self, c: CurveClass) -> ExtendedValue {
        match self.basis_coefficient(c) {
            Some(coeff) => {
                let basis = BasisFoliation::new(vec![coeff]).expect("positive");
                ExtendedValue::Finite(
                    foliation::grow_limit_basis(&self.decomposition, &basis).expect("one component"),
                )
            }
            None => ExtendedValue::Infinite,
        }
    }
}

pub fn ray_data_torus(w: TorusPoint, direction: Direction) -> TorusRayData {
    let torus = ExactTorus::from_point(w);
    let y = torus.im.clone();
    let one = rational::int(1);
    let (component, core, core_multiple) = match direction {
        Direction::Vertical => match rational_slope(w.re) {
            Some((s, r)) => {
                let core = CurveClass::new(-s, r).expect("reduced fraction");
                (Component::new("V", ComponentKind::Cylinder, one, y), Some(core), r as u64)
            }
            None => (Component::new("V", ComponentKind::MinimalErgodic, one, y), None, 0),
        },
        Direction::Horizontal => {
            let core = CurveClass::new(1, 0).expect("primitive");
            (Component::new("H", ComponentKind::Cylinder, y, one), Some(core), 1)
        }
    };
    let decomposition = foliation::normalize(vec![component]).expect("positive data");
    TorusRayData { direction, torus, decomposition, core, core_multiple }
}

/// `d_T = 1/2 d_H = 1/2 arccosh(1 + |w - w'|^2 / (2 y y'))`, evaluated as
/// `asinh(|w - w'| / (2 sqrt(y y')))` to keep precision near the diagonal.
pub fn teich_dist_exact(w1: TorusPoint, w2: TorusPoint) -> f64 {
    let d = (w1.re - w2.re).hypot(w1.im - w2.im);
    (d / (2.0 * (w1.im * w2.im).sqrt())).asinh()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerckhoffSup {
    pub distance: f64,
    pub ratio: f64,
    pub argmax: CurveClass,
    pub bound: u32,
}

/// `1/2 log max Ext_{w'}(c) / Ext_w(c)` over primitive classes with
/// `|p|, |q| <= bound`. Ties go to the lexicographically smallest `(p, q)`.
pub fn kerckhoff_sup(w1: TorusPoint, w2: TorusPoint, bound: u32) -> Result<KerckhoffSup> {
    if bound == 0 {
        return Err(Error::InvalidParameter("enumeration bound must be at least 1".into()));
    }
    let b = bound as i64;
    let mut best: Option<(f64, CurveClass)> = None;
    for p in -b..=b {
        for q in 0..=b {
            if (q == 0 && p != 1) || p.gcd(&q) != 1 {
                continue;
            }
            let c = CurveClass { p, q };
            let r = ext_torus(w2, c) / ext_torus(w1, c);
            if best.map_or(true, |(v, _)| r > v) {
                best = Some((r, c));
            }
        }
    }
    let (ratio, argmax) = best.expect("(1,0) is always enumerated");
    Ok(KerckhoffSup { distance: 0.5 * ratio.ln(), ratio, argmax, bound })
}

/// One curve at one time of [`verify_limits`].
#[derive(Debug, Clone, PartialEq)]
pub struct LimitRow {
    pub curve: CurveClass,
    pub t: f64,
    /// `e^{-2t} Ext_{X_t}(c)`.
    pub shrink_value: f64,
    pub shrink_limit: Rational,
    pub residual: f64,
    /// `e^{-4t} q^2 y` for the vertical ray.
    pub closed_form_residual: f64,
    /// Exact comparison of the residual with its closed form at `t = log e_t`.
    pub residual_exact: bool,
    /// `e^{-2t} Ext >= shrink limit`, exactly.
    pub walsh_holds: bool,
    /// `e^{2t} Ext_{X_t}(c)`.
    pub grow_value: f64,
    pub grow_limit: ExtendedValue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport {
    pub ray: TorusRayData,
    pub rows: Vec<LimitRow>,
    pub pairs_checked: usize,
    /// Pairs where `Ext(F) Ext(G) = i(F,G)^2` holds with equality.
    pub pairs_equal: usize,
    pub failures: Vec<String>,
}

impl LimitReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn max_residual_error(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| (r.residual - r.closed_form_residual).abs())
            .fold(0.0, f64::max)
    }
}

/// Checks the shrink and grow limits of the vertical ray from `w` against
/// closed-form extremal lengths along the ray.
///
/// Every `t` is replaced by `log(e_t)` with `e_t` the binary64 value of
/// `exp(t)`, which makes the Walsh inequality, the residual identity and the
/// product inequality `Ext(F) Ext(G) >= i(F,G)^2` exact rational checks.
/// Failures are collected, never panicked on.
pub fn verify_limits(w: TorusPoint, curves: &[CurveClass], t_grid: &[f64]) -> Result<LimitReport> {
    let ray = ray_data_torus(w, Direction::Vertical);
    let x = Frac::from(&ray.torus.re);
    let y = Frac::from(&ray.torus.im);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    let mut pairs_equal = 0;

    struct PerCurve {
        limit: Rational,
        limit_frac: Frac,
        a_squared: Frac,
        q_squared: Frac,
        grow_limit: ExtendedValue,
    }
    let per_curve: Vec<PerCurve> = curves
        .iter()
        .map(|&c| {
            let a = Frac::int(c.p).add(&Frac::int(c.q).mul(&x));
            let limit = ray.shrink_limit(c);
            PerCurve {
                limit_frac: Frac::from(&limit),
                limit,
                a_squared: a.mul(&a),
                q_squared: Frac::int(c.q * c.q),
                grow_limit: ray.grow_limit(c),
            }
        })
        .collect();

    for &t in t_grid {
        let e = Frac::from(&foliation::FlowTime::Real(t).exp_factor()?);
        let e2 = e.mul(&e);
        let e4 = e2.mul(&e2);
        let y_t = y.div(&e2);
        let wt = vertical_ray(w, t);
        // Ext_{X_t}(p, q) = (p + q x)^2 / y_t + q^2 y_t
        let exts: Vec<Frac> = per_curve
            .iter()
            .map(|pc| pc.a_squared.div(&y_t).add(&pc.q_squared.mul(&y_t)))
            .collect();

        for ((&c, pc), ext) in curves.iter().zip(&per_curve).zip(&exts) {
            let shrink_exact = ext.div(&e2);
            let closed_exact = pc.q_squared.mul(&y).div(&e4);
            let residual_exact = shrink_exact.sub(&pc.limit_frac) == closed_exact;
            let walsh_holds = shrink_exact >= pc.limit_frac;

            let ext_f = ext_torus(wt, c);
            let shrink_value = (-2.0 * t).exp() * ext_f;
            let residual = shrink_value - rational::to_f64(&pc.limit);
            let closed_form_residual = (-4.0 * t).exp() * (c.q * c.q) as f64 * w.im;
            let grow_value = (2.0 * t).exp() * ext_f;

            if !walsh_holds {
                failures.push(format!("Walsh inequality fails for ({}, {}) at t = {t}", c.p, c.q));
            }
            if !residual_exact {
                failures.push(format!("shrink residual differs from closed form for ({}, {}) at t = {t}", c.p, c.q));
            }
            if (residual - closed_form_residual).abs() > TOLERANCE {
                failures.push(format!("floating residual off by {} for ({}, {}) at t = {t}",
                    (residual - closed_form_residual).abs(), c.p, c.q));
            }
            if let ExtendedValue::Finite(g) = &pc.grow_limit {
                if ext.mul(&e2) != Frac::from(g) {
                    failures.push(format!("grow limit not attained for ({}, {}) at t = {t}", c.p, c.q));
                }
                if (grow_value - rational::to_f64(g)).abs() > TOLERANCE {
                    failures.push(format!("floating grow value off for ({}, {}) at t = {t}", c.p, c.q));
                }
            }
            rows.push(LimitRow {
                curve: c,
                t,
                shrink_value,
                shrink_limit: pc.limit.clone(),
                residual,
                closed_form_residual,
                residual_exact,
                walsh_holds,
                grow_value,
                grow_limit: pc.grow_limit.clone(),
            });
        }

        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                let n = Frac::int(intersection(curves[i], curves[j]) as i64);
                let lhs = exts[i].mul(&exts[j]);
                let rhs = n.mul(&n);
                pairs_checked += 1;
                match lhs.cmp(&rhs) {
                    Ordering::Less => failures.push(format!(
                        "Ext product below squared intersection for ({}, {}), ({}, {}) at t = {t}",
                        curves[i].p, curves[i].q, curves[j].p, curves[j].q
                    )),
                    Ordering::Equal => pairs_equal += 1,
                    Ordering::Greater => {}
                }
            }
        }
    }
    Ok(LimitReport { ray, rows, pairs_checked, pairs_equal, failures })
}

/// Unreduced fraction with positive denominator. Skipping the gcd after
/// every operation keeps the exact checks of [`verify_limits`] cheap.
#[derive(Debug, Clone)]
struct Frac {
    n: BigInt,
    d: BigInt,
}

impl Frac {
    fn int(k: i64) -> Self {
        Frac { n: BigInt::from(k), d: BigInt::from(1) }
    }

    fn from(r: &Rational) -> Self {
        Frac { n: r.numer().clone(), d: r.denom().clone() }
    }

    fn add(&self, o: &Frac) -> Frac {
        Frac { n: &self.n * &o.d + &o.n * &self.d, d: &self.d * &o.d }
    }

    fn sub(&self, o: &Frac) -> Frac {
        Frac { n: &self.n * &o.d - &o.n * &self.d, d: &self.d * &o.d }
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac { n: &self.n * &o.n, d: &self.d * &o.d }
    }

    /// `o` must be positive.
    fn div(&self, o: &Frac) -> Frac {
        debug_assert!(o.n.is_positive());
        Frac { n: &self.n * &o.d, d: &self.d * &o.n }
    }
}

impl PartialEq for Frac {
    fn eq(&self, o: &Frac) -> bool {
        &self.n * &o.d == &o.n * &self.d
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, o: &Frac) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Eq for Frac {}

impl Ord for Frac {
    fn cmp(&self, o: &Frac) -> Ordering {
        (&self.n * &o.d).cmp(&(&o.n * &self.d))
    }
}

/// All primitive classes with `|p|, |q| <= bound`, one per unoriented curve.
pub fn primitive_curves(bound: u32) -> Vec<CurveClass> {
    let b = bound as i64;
    let mut out = Vec::new();
    for p in -b..=b {
        for q in 0..=b {
            if (q == 0 && p != 1) || p.gcd(&q) != 1 {
                continue;
            }
            out.push(CurveClass { p, q });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::moduli;
    use crate::rational::{int, ratio};

    fn pt(x: f64, y: f64) -> TorusPoint {
        TorusPoint::new(x, y).unwrap()
    }

    fn cc(p: i64, q: i64) -> CurveClass {
        CurveClass::new(p, q).unwrap()
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(TorusPoint::new(0.0, 0.0).is_err());
        assert!(TorusPoint::new(f64::NAN, 1.0).is_err());
        assert!(CurveClass::new(2, 4).is_err());
        assert!(CurveClass::new(0, 0).is_err());
        assert_eq!(cc(-1, -1), cc(1, 1));
        assert_eq!(cc(-1, 0), cc(1, 0));
    }

    #[test]
    fn ext_examples() {
        let i = pt(0.0, 1.0);
        assert_eq!(ext_torus(i, cc(1, 0)), 1.0);
        assert_eq!(ext_torus(i, cc(0, 1)), 1.0);
        assert_eq!(ext_torus(i, cc(1, 1)), 2.0);
    }

    #[test]
    fn vertical_ray_examples() {
        let i = pt(0.0, 1.0);
        assert_eq!(vertical_ray(i, 0.0), i);
        for t in [0.5, 1.0, 3.0] {
            let wt = vertical_ray(i, t);
            assert!((ext_torus(wt, cc(1, 0)) / (2.0 * t).exp() - 1.0).abs() < 1e-14);
            assert!((ext_torus(wt, cc(0, 1)) / (-2.0 * t).exp() - 1.0).abs() < 1e-14);
        }
        let w = pt(0.3, 1.7);
        let a = vertical_ray(vertical_ray(w, 0.4), 1.1);
        let b = vertical_ray(w, 1.5);
        assert_eq!(a.re, b.re);
        assert!((a.im - b.im).abs() < 1e-15);
    }

    #[test]
    fn sl2z_covariance() {
        let w = pt(0.37, 1.3);
        let (x, y) = (w.re, w.im);
        let t_w = pt(x + 1.0, y);
        let n = x * x + y * y;
        let s_w = pt(-x / n, y / n);
        for c in primitive_curves(4) {
            let e = ext_torus(w, c);
            // w -> w + 1 sends p + q w to (p - q) + q (w + 1)
            let et = ext_torus(t_w, cc(c.p - c.q, c.q));
            // w -> -1/w sends p + q w to w (q - p w')
            let es = ext_torus(s_w, cc(c.q, -c.p));
            assert!((e - et).abs() < 1e-12 * e, "{c:?}");
            assert!((e - es).abs() < 1e-12 * e, "{c:?}");
        }
    }

    #[test]
    fn slope_detection() {
        assert_eq!(rational_slope(0.0), Some((0, 1)));
        assert_eq!(rational_slope(1.0 / 3.0), Some((1, 3)));
        assert_eq!(rational_slope(-0.75), Some((-3, 4)));
        assert_eq!(rational_slope(0.3), Some((3, 10)));
        assert_eq!(rational_slope(std::f64::consts::FRAC_1_SQRT_2), None);
    }

    #[test]
    fn ray_data_examples() {
        let d = ray_data_torus(pt(0.0, 1.0), Direction::Vertical);
        assert_eq!(d.decomposition.unit_pairs().unwrap(), vec![(int(1), int(1))]);
        assert_eq!(moduli(&d.decomposition).0, vec![int(1)]);
        assert_eq!(d.core, Some(cc(0, 1)));

        // w = iy: m = 1/y and the grow limit of (0,1) is y
        let d = ray_data_torus(pt(0.0, 2.5), Direction::Vertical);
        assert_eq!(moduli(&d.decomposition).0, vec![ratio(2, 5)]);
        assert_eq!(d.grow_limit(cc(0, 1)), ExtendedValue::Finite(ratio(5, 2)));
        for t in [0.0, 1.0, 4.0] {
            let wt = vertical_ray(pt(0.0, 2.5), t);
            assert!(((2.0 * t).exp() * ext_torus(wt, cc(0, 1)) - 2.5).abs() < 1e-12);
        }

        // rational slope: cylinder with core (-1, 3), G = core / 3
        let d = ray_data_torus(pt(1.0 / 3.0, 2.0), Direction::Vertical);
        assert_eq!(d.decomposition.components()[0].kind, ComponentKind::Cylinder);
        assert_eq!(d.core, Some(cc(-1, 3)));
        assert_eq!(d.core_multiple, 3);
        assert_eq!(moduli(&d.decomposition).0, vec![ratio(1, 2)]);
        assert_eq!(d.pairing(cc(1, 0)), int(1));
        assert_eq!(d.grow_limit(cc(-1, 3)), ExtendedValue::Finite(int(18)));

        let d = ray_data_torus(pt(0.1234567891, 1.0), Direction::Vertical);
        assert_eq!(d.decomposition.components()[0].kind, ComponentKind::MinimalErgodic);
        assert_eq!(d.core, None);

        let d = ray_data_torus(pt(0.2, 3.0), Direction::Horizontal);
        assert_eq!(moduli(&d.decomposition).0, vec![int(3)]);
        assert_eq!(d.grow_limit(cc(1, 0)), ExtendedValue::Finite(ratio(1, 3)));
        assert!(d.grow_limit(cc(0, 1)).is_infinite());
    }

    #[test]
    fn horizontal_ray_limits() {
        let w = pt(0.2, 3.0);
        let d = ray_data_torus(w, Direction::Horizontal);
        let c = cc(2, 1);
        let lim = rational::to_f64(&d.shrink_limit(c));
        let t: f64 = 6.0;
        let v = (-2.0 * t).exp() * ext_torus(horizontal_ray(w, t), c);
        assert!((v - lim).abs() < 1e-9);
        let v = (2.0 * t).exp() * ext_torus(horizontal_ray(w, t), cc(1, 0));
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn teich_distance_examples() {
        let i = pt(0.0, 1.0);
        assert_eq!(teich_dist_exact(i, i), 0.0);
        assert!((teich_dist_exact(i, pt(0.0, 4.0)) - 0.5 * 4f64.ln()).abs() < 1e-15);
        let (a, b) = (pt(0.3, 0.7), pt(-0.4, 2.2));
        assert_eq!(teich_dist_exact(a, b), teich_dist_exact(b, a));
        // against the arccosh form
        let d = (a.re - b.re).powi(2) + (a.im - b.im).powi(2);
        let acosh = 0.5 * (1.0 + d / (2.0 * a.im * b.im)).acosh();
        assert!((teich_dist_exact(a, b) - acosh).abs() < 1e-14);
    }

    #[test]
    fn kerckhoff_examples() {
        let i = pt(0.0, 1.0);
        for b in [1, 5, 20] {
            assert_eq!(kerckhoff_sup(i, i, b).unwrap().distance, 0.0);
        }
        // classes (1,0), (0,1), (1,1), (-1,1): ratios 1/4, 4, 17/8, 17/8
        let k = kerckhoff_sup(i, pt(0.0, 4.0), 1).unwrap();
        assert_eq!(k.ratio, 4.0);
        assert_eq!(k.argmax, cc(0, 1));
        assert!((k.distance - teich_dist_exact(i, pt(0.0, 4.0))).abs() < 1e-15);
        assert!(kerckhoff_sup(i, i, 0).is_err());
    }

    #[test]
    fn kerckhoff_is_monotone_and_bounded() {
        let (a, b) = (pt(0.31, 0.9), pt(-0.2, 1.6));
        let exact = teich_dist_exact(a, b);
        let mut prev = f64::NEG_INFINITY;
        for bound in [1, 2, 4, 8, 16, 64] {
            let k = kerckhoff_sup(a, b, bound).unwrap().distance;
            assert!(k >= prev);
            assert!(k <= exact + 1e-12);
            prev = k;
        }
        assert!(exact - prev < 1e-3);
    }

    #[test]
    fn verify_limits_examples() {
        let i = pt(0.0, 1.0);
        let rep = verify_limits(i, &[cc(1, 0), cc(0, 1)], &[0.0, 1.0, 2.0]).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        for row in rep.rows.iter().filter(|r| r.curve == cc(1, 0)) {
            assert_eq!(row.shrink_limit, int(1));
            assert!(row.residual.abs() < 1e-15);
        }
        // (1,0) and (0,1) on w = i realize equality in Ext(F) Ext(G) >= i^2
        assert_eq!(rep.pairs_equal, rep.pairs_checked);

        let w = pt(0.0, 1.8);
        let rep = verify_limits(w, &[cc(0, 1)], &[0.0, 2.0, 5.0]).unwrap();
        assert!(rep.passed());
        for row in &rep.rows {
            // y is the binary64 value of 1.8
            assert_eq!(row.grow_limit, ExtendedValue::Finite(rational::from_f64(1.8).unwrap()));
            assert!((row.grow_value - 1.8).abs() < 1e-12);
        }

        let w = pt(0.3, 1.7);
        let rep = verify_limits(w, &[cc(1, 1)], &[5.0]).unwrap();
        assert!(rep.passed());
        let r = &rep.rows[0];
        assert!((r.closed_form_residual - (-20f64).exp() * 1.7).abs() < 1e-20);
        assert!(r.residual.abs() <= 4e-9);
        assert!(r.grow_limit.is_infinite());
    }
}
