//! JSON forms of the inputs and outputs.
//!
//! Rationals travel as `"p/q"` strings. Decoders are strict: unknown keys,
//! zero denominators and invalid domain data are rejected. Every decoder
//! here takes untrusted bytes and must never panic.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::foliation::{
    self, BasisFoliation, Certificate, Component, ComponentKind, ExtendedValue, Exactness,
    FoliationInput, IntersectionVector, RayDecomposition,
};
use crate::origami::Origami;
use crate::pair::{DetourDistance, LogArgument, LogDistance, PairReport, Shift};
use crate::rational::{format_rational, serde_str, Rational};

/// Largest origami accepted from JSON.
pub const MAX_SQUARES: usize = 1 << 16;

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum KindJson {
    Cylinder,
    MinimalErgodic,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentJson {
    id: String,
    kind: KindJson,
    #[serde(with = "serde_str")]
    a: Rational,
    #[serde(with = "serde_str")]
    h: Rational,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RayJson {
    components: Vec<ComponentJson>,
    #[serde(default)]
    normalized: bool,
}

impl RayJson {
    fn into_ray(self) -> Result<RayDecomposition> {
        let comps = self
            .components
            .into_iter()
            .map(|c| {
                let kind = match c.kind {
                    KindJson::Cylinder => ComponentKind::Cylinder,
                    KindJson::MinimalErgodic => ComponentKind::MinimalErgodic,
                };
                Component::new(c.id.as_str(), kind, c.a, c.h)
            })
            .collect();
        if self.normalized {
            foliation::normalize(comps)
        } else {
            RayDecomposition::new(comps)
        }
    }

    fn from_ray(d: &RayDecomposition) -> Self {
        RayJson {
            components: d
                .components()
                .iter()
                .map(|c| ComponentJson {
                    id: c.id.0.clone(),
                    kind: match c.kind {
                        ComponentKind::Cylinder => KindJson::Cylinder,
                        ComponentKind::MinimalErgodic => KindJson::MinimalErgodic,
                    },
                    a: c.a.clone(),
                    h: c.h.clone(),
                })
                .collect(),
            normalized: d.is_normalized(),
        }
    }
}

pub fn parse_ray(input: &[u8]) -> Result<RayDecomposition> {
    serde_json::from_slice::<RayJson>(input)?.into_ray()
}

pub fn ray_to_value(d: &RayDecomposition) -> Value {
    serde_json::to_value(RayJson::from_ray(d)).expect("plain data")
}

/// Compact, key-ordered JSON; re-parses to an identical value.
pub fn ray_to_string(d: &RayDecomposition) -> String {
    serde_json::to_string(&RayJson::from_ray(d)).expect("plain data")
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairJson {
    ray1: RayJson,
    ray2: RayJson,
}

pub fn parse_pair(input: &[u8]) -> Result<(RayDecomposition, RayDecomposition)> {
    let p: PairJson = serde_json::from_slice(input)?;
    Ok((p.ray1.into_ray()?, p.ray2.into_ray()?))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrigamiJson {
    n: usize,
    r: Vec<usize>,
    u: Vec<usize>,
}

/// `{"n":3, "r":[2,1,3], "u":[3,2,1]}` with one-indexed images.
pub fn parse_origami(input: &[u8]) -> Result<Origami> {
    let o: OrigamiJson = serde_json::from_slice(input)?;
    if o.n > MAX_SQUARES {
        return Err(Error::MalformedPermutation { name: "r", reason: format!("{} squares is too many", o.n) });
    }
    for (name, v) in [("r", &o.r), ("u", &o.u)] {
        if v.len() != o.n {
            return Err(Error::MalformedPermutation {
                name,
                reason: format!("has {} entries, n = {}", v.len(), o.n),
            });
        }
    }
    Origami::from_one_indexed(&o.r, &o.u)
}

pub fn origami_to_value(o: &Origami) -> Value {
    let one = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
    json!({ "n": o.n(), "r": one(o.r().images()), "u": one(o.u().images()) })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateJson {
    #[serde(with = "serde_str")]
    pairing: Rational,
    #[serde(with = "serde_str::vec")]
    witness: Vec<Rational>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FoliationJson {
    #[serde(default, with = "opt_vec")]
    basis: Option<Vec<Rational>>,
    #[serde(default, with = "opt_vec")]
    intersections: Option<Vec<Rational>>,
    #[serde(default)]
    certificates: Vec<CertificateJson>,
}

mod opt_vec {
    use super::*;
    use serde::Deserializer;

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
        serde_str::vec::deserialize(d).map(Some)
    }
}

/// `{"basis": [...]}` for `F = sum c_j G_j`, or
/// `{"intersections": [...], "certificates": [{"pairing": .., "witness": [..]}]}`
/// for a foliation known through its pairings with the components.
pub fn parse_foliation(input: &[u8]) -> Result<FoliationInput> {
    let f: FoliationJson = serde_json::from_slice(input)?;
    match (f.basis, f.intersections) {
        (Some(c), None) if f.certificates.is_empty() => Ok(FoliationInput::Basis(BasisFoliation::new(c)?)),
        (None, Some(u)) => {
            let certificates = f
                .certificates
                .into_iter()
                .map(|c| {
                    Ok(Certificate { pairing: c.pairing, witness: IntersectionVector::new(c.witness)? })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FoliationInput::General { crossing: IntersectionVector::new(u)?, certificates })
        }
        _ => Err(Error::Json(serde::de::Error::custom(
            "foliation needs exactly one of \"basis\" or \"intersections\"; certificates only go with intersections",
        ))),
    }
}

/// `lo:hi:step`.
pub fn parse_sigma_grid(s: &str) -> Result<crate::pair::SigmaGrid> {
    let bad = || Error::InvalidParameter(format!("sigma grid {s:?} is not lo:hi:step"));
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(bad());
    };
    let num = |x: &str| x.parse::<f64>().map_err(|_| bad());
    crate::pair::SigmaGrid::new(num(lo)?, num(hi)?, num(step)?)
}

/// JSON number for a float, with integral values written without a
/// fractional part and infinities as `"+inf"`.
pub fn number(x: f64) -> Value {
    if x == f64::INFINITY {
        return Value::String("+inf".into());
    }
    if x == f64::NEG_INFINITY {
        return Value::String("-inf".into());
    }
    if x.fract() == 0.0 && x.abs() < 9.0e15 {
        return Value::from(x as i64);
    }
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn rational_value(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn extended_value(v: &ExtendedValue) -> Value {
    match v {
        ExtendedValue::Finite(r) => rational_value(r),
        ExtendedValue::Infinite => Value::String("+inf".into()),
        ExtendedValue::LowerBound { value, exactness } => json!({
            "lower_bound": format_rational(value),
            "exactness": match exactness {
                Exactness::Exact => "exact",
                Exactness::CertificateOnly => "certificate-only",
            },
        }),
    }
}

fn log_argument(a: &LogArgument) -> Value {
    match a {
        LogArgument::Finite(r) => rational_value(r),
        LogArgument::Infinite => Value::String("+inf".into()),
    }
}

/// `{"value": .., "log_argument": ..}` plus `"root"` when it is not 1.
pub fn log_distance(d: &LogDistance) -> Value {
    let mut m = Map::new();
    m.insert("value".into(), number(d.value()));
    m.insert("log_argument".into(), log_argument(&d.argument));
    if d.root != 1 {
        m.insert("root".into(), Value::from(d.root));
    }
    Value::Object(m)
}

pub fn detour(d: &DetourDistance) -> Value {
    match d {
        DetourDistance::Finite { forward, backward } => json!({
            "value": number(d.value()),
            "forward_max": format_rational(forward),
            "backward_max": format_rational(backward),
        }),
        DetourDistance::Infinite => json!({ "value": "+inf" }),
    }
}

pub fn shift(s: &Shift) -> Value {
    json!({ "sigma": number(s.sigma()), "exp_4sigma": format_rational(&s.exp4) })
}

pub fn pair_report(rep: &PairReport) -> Value {
    let mut m = Map::new();
    m.insert("comparable".into(), Value::Bool(rep.alignment.is_comparable()));
    m.insert("limiting_distance".into(), log_distance(&rep.limiting));
    m.insert("detour_distance".into(), detour(&rep.detour));
    m.insert("min_limiting_distance".into(), log_distance(&rep.min_limiting));
    m.insert("optimal_shift".into(), rep.shift.as_ref().map_or(Value::Null, shift));
    if let Some(mx) = &rep.maxima {
        m.insert("forward_argmax".into(), Value::from(mx.forward.index));
        m.insert("backward_argmax".into(), Value::from(mx.backward.index));
    }
    m.insert(
        "modular_constant".into(),
        rep.modular_constant.as_ref().map_or(Value::Null, rational_value),
    );
    m.insert("asymptotic".into(), Value::Bool(rep.asymptotic()));
    m.insert("busemann_equal".into(), Value::Bool(rep.asymptotic()));
    Value::Object(m)
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_value).collect())
}
