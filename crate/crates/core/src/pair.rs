//! Two-ray invariants: limiting distance, detour distance, optimal shift
//! and the modular-equivalence dichotomy.
//!
//! Everything reduces to the aligned modulus ratios `m_j / m'_j`. The two
//! one-sided maxima
//!
//! ```text
//! r1 = max_j m_j / m'_j        r2 = max_j m'_j / m_j
//! ```
//!
//! are exact rationals with `r1 * r2 >= 1`, and every distance is a
//! logarithm of a rational built from them.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::{One, Pow, Signed};

use crate::error::{Error, Result};
use crate::foliation::{moduli, RayDecomposition};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairAlignment {
    /// `matched[k] = (i, j)`: component `i` of the first ray is component
    /// `j` of the second. Ordered by `i`.
    AbsolutelyContinuous { matched: Vec<(usize, usize)> },
    NotComparable,
}

impl PairAlignment {
    pub fn is_comparable(&self) -> bool {
        matches!(self, PairAlignment::AbsolutelyContinuous { .. })
    }
}

/// Matches components by id. Components sharing an id but not a kind are
/// treated as topologically different.
pub fn align(d1: &RayDecomposition, d2: &RayDecomposition) -> PairAlignment {
    if d1.len() != d2.len() {
        return PairAlignment::NotComparable;
    }
    let index: HashMap<_, _> = d2
        .components()
        .iter()
        .enumerate()
        .map(|(j, c)| (&c.id, (j, c.kind)))
        .collect();
    let mut matched = Vec::with_capacity(d1.len());
    for (i, c) in d1.components().iter().enumerate() {
        match index.get(&c.id) {
            Some(&(j, kind)) if kind == c.kind => matched.push((i, j)),
            _ => return PairAlignment::NotComparable,
        }
    }
    PairAlignment::AbsolutelyContinuous { matched }
}

/// `+inf` or a positive rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogArgument {
    Finite(Rational),
    Infinite,
}

/// A distance of the form `log(argument) / (2 * root)`.
///
/// `root` is 1 for plain limiting distances and 2 for quantities that are
/// halves of them (shifted distances at quarter-log shifts, `delta / 2`).
/// Zero tests and comparisons are exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogDistance {
    pub argument: LogArgument,
    pub root: u32,
}

impl LogDistance {
    pub fn finite(argument: Rational, root: u32) -> Self {
        debug_assert!(argument.is_positive() && root > 0);
        LogDistance { argument: LogArgument::Finite(argument), root }
    }

    pub fn infinite() -> Self {
        LogDistance { argument: LogArgument::Infinite, root: 1 }
    }

    pub fn value(&self) -> f64 {
        match &self.argument {
            LogArgument::Finite(r) => rational::ln(r) / (2.0 * self.root as f64),
            LogArgument::Infinite => f64::INFINITY,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.argument, LogArgument::Finite(r) if r.is_one())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.argument, LogArgument::Infinite)
    }

    /// Exact comparison: `arg1^(1/root1)` against `arg2^(1/root2)`.
    pub fn exact_cmp(&self, other: &LogDistance) -> Ordering {
        match (&self.argument, &other.argument) {
            (LogArgument::Infinite, LogArgument::Infinite) => Ordering::Equal,
            (LogArgument::Infinite, _) => Ordering::Greater,
            (_, LogArgument::Infinite) => Ordering::Less,
            (LogArgument::Finite(x), LogArgument::Finite(y)) => {
                let lhs = Pow::pow(x, other.root);
                let rhs = Pow::pow(y, self.root);
                lhs.cmp(&rhs)
            }
        }
    }

    pub fn exact_eq(&self, other: &LogDistance) -> bool {
        self.exact_cmp(other) == Ordering::Equal
    }
}

/// A one-sided maximum with the smallest index attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxRatio {
    pub value: Rational,
    pub index: usize,
}

/// `r1 = max m_j/m'_j` and `r2 = max m'_j/m_j` over aligned components,
/// indexed by the first ray's components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioMaxima {
    pub forward: MaxRatio,
    pub backward: MaxRatio,
}

fn max_ratio(ratios: impl Iterator<Item = (usize, Rational)>) -> MaxRatio {
    let mut best: Option<MaxRatio> = None;
    for (index, value) in ratios {
        if best.as_ref().map_or(true, |b| value > b.value) {
            best = Some(MaxRatio { value, index });
        }
    }
    best.expect("decompositions are nonempty")
}

pub fn ratio_maxima(d1: &RayDecomposition, d2: &RayDecomposition) -> Option<RatioMaxima> {
    let PairAlignment::AbsolutelyContinuous { matched } = align(d1, d2) else {
        return None;
    };
    let m1 = moduli(d1).0;
    let m2 = moduli(d2).0;
    let ratios: Vec<Rational> = matched.iter().map(|&(i, j)| &m1[i] / &m2[j]).collect();
    let forward = max_ratio(ratios.iter().cloned().enumerate());
    let backward = max_ratio(ratios.iter().map(|r| r.recip()).enumerate());
    Some(RatioMaxima { forward, backward })
}

/// `lim d_T(X_t, Y_t) = 1/2 log max_j max(m_j/m'_j, m'_j/m_j)`, or `+inf`
/// when the vertical foliations are not absolutely continuous.
pub fn limiting_distance(d1: &RayDecomposition, d2: &RayDecomposition) -> LogDistance {
    match ratio_maxima(d1, d2) {
        Some(RatioMaxima { forward, backward }) => {
            LogDistance::finite(std::cmp::max(forward.value, backward.value), 1)
        }
        None => LogDistance::infinite(),
    }
}

/// Detour distance `1/2 log r1 + 1/2 log r2` between the Busemann points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DetourDistance {
    Finite { forward: Rational, backward: Rational },
    Infinite,
}

impl DetourDistance {
    pub fn value(&self) -> f64 {
        match self {
            DetourDistance::Finite { forward, backward } => {
                0.5 * rational::ln(forward) + 0.5 * rational::ln(backward)
            }
            DetourDistance::Infinite => f64::INFINITY,
        }
    }

    /// The same distance as `1/2 log(r1 r2)`.
    pub fn as_log_distance(&self) -> LogDistance {
        match self {
            DetourDistance::Finite { forward, backward } => {
                LogDistance::finite(forward * backward, 1)
            }
            DetourDistance::Infinite => LogDistance::infinite(),
        }
    }

    /// `delta / 2 = 1/4 log(r1 r2)`.
    pub fn half(&self) -> LogDistance {
        match self {
            DetourDistance::Finite { forward, backward } => {
                LogDistance::finite(forward * backward, 2)
            }
            DetourDistance::Infinite => LogDistance::infinite(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_log_distance().is_zero()
    }
}

pub fn detour_distance(d1: &RayDecomposition, d2: &RayDecomposition) -> DetourDistance {
    match ratio_maxima(d1, d2) {
        Some(RatioMaxima { forward, backward }) => DetourDistance::Finite {
            forward: forward.value,
            backward: backward.value,
        },
        None => DetourDistance::Infinite,
    }
}

/// A shift `sigma` of the second ray's base point, stored exactly as
/// `e^{4 sigma}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shift {
    pub exp4: Rational,
}

impl Shift {
    pub fn zero() -> Self {
        Shift { exp4: Rational::one() }
    }

    /// `sigma = 1/2 log r`.
    pub fn half_log(r: Rational) -> Self {
        Shift { exp4: &r * &r }
    }

    /// `sigma = 1/4 log r`.
    pub fn quarter_log(r: Rational) -> Self {
        Shift { exp4: r }
    }

    /// `sigma = log r`, the flow time `FlowTime::ExpOf(r)`.
    pub fn log(r: Rational) -> Self {
        Shift { exp4: Pow::pow(&r, 4u32) }
    }

    pub fn sigma(&self) -> f64 {
        rational::ln(&self.exp4) / 4.0
    }
}

/// `sigma* = 1/4 log(r1 / r2)`, the shift realizing the minimum of the
/// limiting distance.
pub fn optimal_shift(d1: &RayDecomposition, d2: &RayDecomposition) -> Result<Shift> {
    let RatioMaxima { forward, backward } = ratio_maxima(d1, d2).ok_or(Error::NotComparable)?;
    Ok(Shift::quarter_log(forward.value / backward.value))
}

/// Limiting distance after replacing `m'_j` by `e^{2 sigma} m'_j`.
///
/// With `rho = e^{4 sigma}` the squared argument is
/// `max(r1^2 / rho, r2^2 rho)`, so the result carries `root = 2`.
pub fn shifted_limiting_distance(
    d1: &RayDecomposition,
    d2: &RayDecomposition,
    shift: &Shift,
) -> Result<LogDistance> {
    let RatioMaxima { forward, backward } = ratio_maxima(d1, d2).ok_or(Error::NotComparable)?;
    if !shift.exp4.is_positive() {
        return Err(Error::InvalidParameter("e^(4 sigma) must be positive".into()));
    }
    let f = &forward.value * &forward.value / &shift.exp4;
    let b = &backward.value * &backward.value * &shift.exp4;
    Ok(LogDistance::finite(std::cmp::max(f, b), 2))
}

/// Floating-point form of [`shifted_limiting_distance`] for arbitrary real
/// `sigma`.
pub fn shifted_limiting_distance_real(
    d1: &RayDecomposition,
    d2: &RayDecomposition,
    sigma: f64,
) -> Result<f64> {
    let RatioMaxima { forward, backward } = ratio_maxima(d1, d2).ok_or(Error::NotComparable)?;
    Ok(shifted_value(rational::ln(&forward.value), rational::ln(&backward.value), sigma))
}

fn shifted_value(ln_forward: f64, ln_backward: f64, sigma: f64) -> f64 {
    0.5 * f64::max(ln_forward - 2.0 * sigma, ln_backward + 2.0 * sigma)
}

/// Inclusive grid `lo, lo + step, ..., <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaGrid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl SigmaGrid {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 || hi < lo {
            return Err(Error::InvalidParameter(format!("bad sigma grid {lo}:{hi}:{step}")));
        }
        if (hi - lo) / step > 1e8 {
            return Err(Error::InvalidParameter("sigma grid has too many points".into()));
        }
        Ok(SigmaGrid { lo, hi, step })
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n).map(move |k| self.lo + k as f64 * self.step)
    }
}

/// Grid scan of the shifted limiting distance: `(argmin sigma, min value)`.
pub fn sigma_scan(
    d1: &RayDecomposition,
    d2: &RayDecomposition,
    grid: &SigmaGrid,
) -> Result<(f64, f64)> {
    let RatioMaxima { forward, backward } = ratio_maxima(d1, d2).ok_or(Error::NotComparable)?;
    let (lf, lb) = (rational::ln(&forward.value), rational::ln(&backward.value));
    let mut best = (f64::NAN, f64::INFINITY);
    for sigma in grid.points() {
        let v = shifted_value(lf, lb, sigma);
        if v < best.1 {
            best = (sigma, v);
        }
    }
    Ok(best)
}

/// Minimum over shifts of the limiting distance, which is `delta / 2`.
pub fn min_limiting_distance(d1: &RayDecomposition, d2: &RayDecomposition) -> LogDistance {
    detour_distance(d1, d2).half()
}

/// The constant `C` with `m_j = C m'_j` for every aligned component.
pub fn modular_equivalence(d1: &RayDecomposition, d2: &RayDecomposition) -> Option<Rational> {
    let PairAlignment::AbsolutelyContinuous { matched } = align(d1, d2) else {
        return None;
    };
    let m1 = moduli(d1).0;
    let m2 = moduli(d2).0;
    let (i0, j0) = matched[0];
    let c = &m1[i0] / &m2[j0];
    matched
        .iter()
        .all(|&(i, j)| m1[i] == &c * &m2[j])
        .then_some(c)
}

pub fn is_asymptotic(d1: &RayDecomposition, d2: &RayDecomposition) -> bool {
    modular_equivalence(d1, d2).is_some()
}

pub fn busemann_equal(d1: &RayDecomposition, d2: &RayDecomposition) -> bool {
    modular_equivalence(d1, d2).is_some()
}

/// Everything the pair operations produce, in one place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub alignment: PairAlignment,
    pub maxima: Option<RatioMaxima>,
    pub limiting: LogDistance,
    pub detour: DetourDistance,
    pub shift: Option<Shift>,
    pub min_limiting: LogDistance,
    pub modular_constant: Option<Rational>,
}

impl PairReport {
    pub fn asymptotic(&self) -> bool {
        self.modular_constant.is_some()
    }
}

pub fn analyze(d1: &RayDecomposition, d2: &RayDecomposition) -> PairReport {
    PairReport {
        alignment: align(d1, d2),
        maxima: ratio_maxima(d1, d2),
        limiting: limiting_distance(d1, d2),
        detour: detour_distance(d1, d2),
        shift: optimal_shift(d1, d2).ok(),
        min_limiting: min_limiting_distance(d1, d2),
        modular_constant: modular_equivalence(d1, d2),
    }
}
