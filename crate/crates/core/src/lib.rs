//! Asymptotic invariants of Teichmüller rays.
//!
//! A ray is given by the decomposition of its vertical foliation into
//! indecomposable components ([`RayDecomposition`]). From that data the
//! crate computes the limits of `e^{-2t} Ext` and `e^{2t} Ext` along the
//! ray, and for pairs of rays the limiting Teichmüller distance, the detour
//! distance between the endpoints on the horofunction boundary, the optimal
//! base-point shift and the asymptoticity verdict. All decisions are exact
//! rational comparisons.
//!
//! Two independent models check the formulas: flat tori ([`torus`]), where
//! extremal length has a closed form at every time, and square-tiled
//! surfaces ([`origami`]), which supply higher-genus decompositions.

pub mod error;
pub mod foliation;
pub mod origami;
pub mod pair;
pub mod rational;
pub mod torus;
pub mod wire;

pub use error::{Error, Result};
pub use foliation::{
    BasisFoliation, Component, ComponentId, ComponentKind, ExtendedValue, FlowTime,
    FoliationInput, IntersectionVector, ModulusVector, RayDecomposition,
};
pub use origami::Origami;
pub use pair::{DetourDistance, LogDistance, PairAlignment, PairReport, Shift};
pub use rational::Rational;
pub use torus::{CurveClass, TorusPoint};
