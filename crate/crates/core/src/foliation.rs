//! Single-ray data and limit formulas.
//!
//! A ray is described by the indecomposable components `G_j` of its vertical
//! foliation, each carrying a transverse weight `a_j` and its pairing `h_j`
//! with the horizontal foliation. The raw pairs are kept exactly as given;
//! the unit-norm view divides every pair by `sqrt(area)` symbolically, where
//! `area = sum a_j h_j`. Every limit below is a ratio of homogeneous
//! expressions in which that factor cancels, so nothing irrational ever
//! enters the data.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentId(pub String);

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ComponentId {
    fn from(s: &str) -> Self {
        ComponentId(s.to_owned())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Cylinder,
    MinimalErgodic,
}

impl ComponentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ComponentKind::Cylinder => "cylinder",
            ComponentKind::MinimalErgodic => "minimal-ergodic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: ComponentId,
    pub kind: ComponentKind,
    /// Transverse weight of the component in the vertical foliation.
    pub a: Rational,
    /// Pairing of the component with the horizontal foliation.
    pub h: Rational,
}

impl Component {
    pub fn new(id: impl Into<ComponentId>, kind: ComponentKind, a: Rational, h: Rational) -> Self {
        Component { id: id.into(), kind, a, h }
    }

    pub fn cylinder(id: &str, a: Rational, h: Rational) -> Self {
        Self::new(id, ComponentKind::Cylinder, a, h)
    }

    pub fn modulus(&self) -> Rational {
        &self.a / &self.h
    }
}

/// Vertical-foliation decomposition of a Teichmüller ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayDecomposition {
    components: Vec<Component>,
    area: Rational,
    normalized: bool,
}

impl RayDecomposition {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        Self::with_flag(components, false)
    }

    pub(crate) fn with_flag(components: Vec<Component>, normalized: bool) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyDecomposition);
        }
        let mut seen = HashSet::new();
        for (index, c) in components.iter().enumerate() {
            if !c.a.is_positive() {
                return Err(Error::NonPositive { index, field: "a" });
            }
            if !c.h.is_positive() {
                return Err(Error::NonPositive { index, field: "h" });
            }
            if !seen.insert(&c.id) {
                return Err(Error::DuplicateId(c.id.0.clone()));
            }
        }
        let area = components.iter().map(|c| &c.a * &c.h).sum();
        Ok(RayDecomposition { components, area, normalized })
    }

    /// Cylinders with ids `C1, C2, ...` from `(a, h)` pairs.
    pub fn from_pairs(pairs: &[(Rational, Rational)]) -> Result<Self> {
        let components = pairs
            .iter()
            .enumerate()
            .map(|(j, (a, h))| Component::cylinder(&format!("C{}", j + 1), a.clone(), h.clone()))
            .collect();
        Self::new(components)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `sum a_j h_j` of the raw data; the norm of the differential.
    pub fn area(&self) -> &Rational {
        &self.area
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Marks the decomposition as read in its unit-norm view. The raw pairs
    /// and the moduli are untouched.
    pub fn normalize(&self) -> RayDecomposition {
        RayDecomposition { normalized: true, ..self.clone() }
    }

    /// Unit-norm `(a_j, h_j)` pairs, when `sqrt(area)` is rational.
    pub fn unit_pairs(&self) -> Option<Vec<(Rational, Rational)>> {
        let s = rational::sqrt_exact(&self.area)?;
        Some(
            self.components
                .iter()
                .map(|c| (&c.a / &s, &c.h / &s))
                .collect(),
        )
    }

    /// Square of the unit-norm pairing `h_j`; always rational.
    pub fn unit_h_squared(&self, j: usize) -> Result<Rational> {
        let c = self.component(j)?;
        Ok(&c.h * &c.h / &self.area)
    }

    /// Unit-norm `(a_j, h_j)` in floating point.
    pub fn unit_pairs_f64(&self) -> Vec<(f64, f64)> {
        let s = rational::to_f64(&self.area).sqrt();
        self.components
            .iter()
            .map(|c| (rational::to_f64(&c.a) / s, rational::to_f64(&c.h) / s))
            .collect()
    }

    pub fn component(&self, j: usize) -> Result<&Component> {
        self.components
            .get(j)
            .ok_or(Error::IndexOutOfRange { index: j, len: self.len() })
    }

    pub fn position(&self, id: &ComponentId) -> Option<usize> {
        self.components.iter().position(|c| &c.id == id)
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found });
        }
        Ok(())
    }
}

/// Validating wrapper for the raw-constructor path used by decoders.
pub fn normalize(raw: Vec<Component>) -> Result<RayDecomposition> {
    RayDecomposition::with_flag(raw, true)
}

/// Moduli `m_j = a_j / h_j`, index-aligned with the components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusVector(pub Vec<Rational>);

impl ModulusVector {
    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }
}

pub fn moduli(d: &RayDecomposition) -> ModulusVector {
    ModulusVector(d.components.iter().map(Component::modulus).collect())
}

/// Coefficients `c_j` of a foliation `F = sum c_j G_j` supported on the
/// components of the ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisFoliation(Vec<Rational>);

impl BasisFoliation {
    pub fn new(c: Vec<Rational>) -> Result<Self> {
        if let Some(i) = c.iter().position(Signed::is_negative) {
            return Err(Error::NegativeEntry(i));
        }
        if c.iter().all(Zero::is_zero) {
            return Err(Error::ZeroFoliation);
        }
        Ok(BasisFoliation(c))
    }

    /// Indicator of a single component.
    pub fn indicator(len: usize, j: usize) -> Result<Self> {
        if j >= len {
            return Err(Error::IndexOutOfRange { index: j, len });
        }
        let mut c = vec![Rational::zero(); len];
        c[j] = Rational::one();
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }
}

/// Pairings `u_j = i(G_j, F)` of a foliation with the ray's components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionVector(Vec<Rational>);

impl IntersectionVector {
    pub fn new(u: Vec<Rational>) -> Result<Self> {
        if let Some(i) = u.iter().position(Signed::is_negative) {
            return Err(Error::NegativeEntry(i));
        }
        Ok(IntersectionVector(u))
    }

    pub fn zeros(len: usize) -> Self {
        IntersectionVector(vec![Rational::zero(); len])
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> IntersectionVector {
        IntersectionVector(self.0.iter().map(|x| x * k).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    CertificateOnly,
}

/// A value on `[0, +inf]` that may only be known from below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendedValue {
    Finite(Rational),
    Infinite,
    LowerBound { value: Rational, exactness: Exactness },
}

impl ExtendedValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedValue::Infinite)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedValue::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedValue::Finite(v) | ExtendedValue::LowerBound { value: v, .. } => {
                rational::to_f64(v)
            }
            ExtendedValue::Infinite => f64::INFINITY,
        }
    }
}

/// Flow time. `ExpOf(r)` means `t = log r` and keeps every transform exact.
#[derive(Debug, Clone, PartialEq)]
pub enum FlowTime {
    ExpOf(Rational),
    Real(f64),
}

impl FlowTime {
    /// `e^t` as an exact rational. For real `t` this is the binary64 value
    /// of `exp(t)`, so the flow is exact for a time within an ulp of `t`.
    pub fn exp_factor(&self) -> Result<Rational> {
        match self {
            FlowTime::ExpOf(r) if r.is_positive() => Ok(r.clone()),
            FlowTime::ExpOf(_) => Err(Error::InvalidParameter("e^t must be positive".into())),
            FlowTime::Real(t) => {
                let e = t.exp();
                if !e.is_finite() || e == 0.0 {
                    return Err(Error::NonFiniteFlow(*t));
                }
                rational::from_f64(e).ok_or(Error::NonFiniteFlow(*t))
            }
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            FlowTime::ExpOf(r) => rational::ln(r),
            FlowTime::Real(t) => *t,
        }
    }
}

/// Moves the base point along the ray: `a_j -> e^t a_j`, `h_j -> e^{-t} h_j`.
pub fn flow(d: &RayDecomposition, t: &FlowTime) -> Result<RayDecomposition> {
    let k = t.exp_factor()?;
    let components = d
        .components
        .iter()
        .map(|c| Component { a: &c.a * &k, h: &c.h / &k, ..c.clone() })
        .collect();
    Ok(RayDecomposition { components, area: d.area.clone(), normalized: d.normalized })
}

/// `lim e^{-2t} Ext(F) = sum a_j u_j^2 / h_j`, with `u_j = i(G_j, F)`.
pub fn shrink_limit(d: &RayDecomposition, u: &IntersectionVector) -> Result<Rational> {
    d.check_len(u.0.len())?;
    Ok(d.components
        .iter()
        .zip(&u.0)
        .map(|(c, x)| c.modulus() * x * x)
        .sum())
}

/// Square root of [`shrink_limit`], kept alongside its exact square.
#[derive(Debug, Clone, PartialEq)]
pub struct RootValue {
    pub square: Rational,
    pub root: f64,
}

pub fn e_q(d: &RayDecomposition, u: &IntersectionVector) -> Result<RootValue> {
    let square = shrink_limit(d, u)?;
    let root = rational::to_f64(&square).sqrt();
    Ok(RootValue { square, root })
}

/// `lim e^{2t} Ext(F) = sum c_j^2 h_j / a_j` for `F = sum c_j G_j`.
pub fn grow_limit_basis(d: &RayDecomposition, c: &BasisFoliation) -> Result<Rational> {
    d.check_len(c.0.len())?;
    Ok(d.components
        .iter()
        .zip(&c.0)
        .map(|(comp, x)| x * x / comp.modulus())
        .sum())
}

/// The foliation `F'` with `a_j i(G_j, F') = c_j h_j`, which attains the
/// supremum for basis foliations.
pub fn optimal_witness(d: &RayDecomposition, c: &BasisFoliation) -> Result<IntersectionVector> {
    d.check_len(c.0.len())?;
    Ok(IntersectionVector(
        d.components
            .iter()
            .zip(&c.0)
            .map(|(comp, x)| x / comp.modulus())
            .collect(),
    ))
}

/// `i(F, F') = sum c_j i(G_j, F')` for `F` in the component basis.
pub fn basis_pairing(c: &BasisFoliation, u: &IntersectionVector) -> Result<Rational> {
    if c.0.len() != u.0.len() {
        return Err(Error::LengthMismatch { expected: c.0.len(), found: u.0.len() });
    }
    Ok(c.0.iter().zip(&u.0).map(|(x, y)| x * y).sum())
}

/// One term `i(F,F')^2 / sum a_j i(G_j,F')^2 / h_j` of the supremum that
/// gives the grow limit. `c/0` is `+inf` for `c > 0`; `0/0` is an error.
pub fn grow_certificate(
    d: &RayDecomposition,
    pairing: &Rational,
    witness: &IntersectionVector,
) -> Result<ExtendedValue> {
    if pairing.is_negative() {
        return Err(Error::NegativeEntry(0));
    }
    let denom = shrink_limit(d, witness)?;
    if denom.is_zero() {
        return if pairing.is_zero() {
            Err(Error::IndeterminateCertificate)
        } else {
            Ok(ExtendedValue::Infinite)
        };
    }
    Ok(ExtendedValue::Finite(pairing * pairing / denom))
}

/// A concrete `F'` for the grow-limit supremum: `i(F, F')` and the
/// pairings `i(G_j, F')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub pairing: Rational,
    pub witness: IntersectionVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoliationInput {
    Basis(BasisFoliation),
    General { crossing: IntersectionVector, certificates: Vec<Certificate> },
}

/// `lim e^{2t} Ext(F)`.
///
/// Exact when `F` crosses the vertical foliation (infinite) or lies in the
/// component basis. Otherwise only the best supplied certificate is known,
/// and it is reported as a lower bound.
pub fn grow_limit(d: &RayDecomposition, f: &FoliationInput) -> Result<ExtendedValue> {
    match f {
        FoliationInput::Basis(c) => grow_limit_basis(d, c).map(ExtendedValue::Finite),
        FoliationInput::General { crossing, certificates } => {
            d.check_len(crossing.0.len())?;
            if !crossing.is_zero() {
                return Ok(ExtendedValue::Infinite);
            }
            if certificates.is_empty() {
                return Err(Error::NoCertificates);
            }
            let mut best: Option<Rational> = None;
            for cert in certificates {
                match grow_certificate(d, &cert.pairing, &cert.witness) {
                    Ok(ExtendedValue::Infinite) => return Ok(ExtendedValue::Infinite),
                    Ok(ExtendedValue::Finite(v)) => {
                        if best.as_ref().map_or(true, |b| v > *b) {
                            best = Some(v);
                        }
                    }
                    Ok(ExtendedValue::LowerBound { .. }) => unreachable!(),
                    Err(Error::IndeterminateCertificate) => {}
                    Err(e) => return Err(e),
                }
            }
            best.map(|value| ExtendedValue::LowerBound {
                value,
                exactness: Exactness::CertificateOnly,
            })
            .ok_or(Error::NoCertificates)
        }
    }
}
