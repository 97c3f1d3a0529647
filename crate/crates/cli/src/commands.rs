use std::io::{self, Read, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use teichray::foliation::{self, BasisFoliation, FoliationInput, IntersectionVector, RayDecomposition};
use teichray::origami::{self, CylinderDirection, Origami};
use teichray::pair::{self, SigmaGrid};
use teichray::rational;
use teichray::torus::{self, CurveClass, TorusPoint};
use teichray::wire::{self, number, rational_value};

use crate::{Command, PairArgs, Quantity, TraceArgs};

pub enum Failure {
    Malformed(String),
    Invalid(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Malformed(_) => 1,
            Failure::Invalid(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Malformed(m) | Failure::Invalid(m) => m,
        }
    }
}

impl From<teichray::Error> for Failure {
    fn from(e: teichray::Error) -> Self {
        if e.is_malformed() {
            Failure::Malformed(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Limit { ray, foliation } => limit(&ray, &foliation),
        Command::Distance(args) => distance(&args),
        Command::Detour(args) => detour(&args),
        Command::Shift { pair, sigma_grid } => shift(&pair, sigma_grid.as_deref()),
        Command::Equiv(args) => equiv(&args),
        Command::TorusVerify { omega, curve, t_grid, other, bound } => {
            torus_verify(&omega, &curve, &t_grid, other.as_deref(), bound)
        }
        Command::OrigamiAnalyze { origami, compare, matching } => {
            origami_analyze(&origami, compare.as_deref(), matching.as_deref())
        }
        Command::Trace(args) => trace(&args),
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_end(&mut buf).map(|_| ())
    } else {
        std::fs::read(path).map(|b| buf = b)
    };
    res.map_err(|e| Failure::Malformed(format!("cannot read {}: {e}", path.display())))?;
    Ok(buf)
}

fn emit(v: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{v}").map_err(|e| Failure::Invalid(format!("cannot write output: {e}")))
}

/// `a,b` as two floats.
fn float_pair(s: &str, what: &str) -> Result<(f64, f64)> {
    let bad = || Failure::Malformed(format!("{what} {s:?} is not two comma-separated numbers"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn int_pair(s: &str, what: &str) -> Result<(i64, i64)> {
    let bad = || Failure::Malformed(format!("{what} {s:?} is not two comma-separated integers"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn torus_point(s: &str) -> Result<TorusPoint> {
    let (x, y) = float_pair(s, "torus parameter")?;
    Ok(TorusPoint::new(x, y)?)
}

fn curve(s: &str) -> Result<CurveClass> {
    let (p, q) = int_pair(s, "curve")?;
    Ok(CurveClass::new(p, q)?)
}

/// `lo:hi:step`, checked for shape here and for sense by `SigmaGrid`.
fn grid(s: &str) -> Result<SigmaGrid> {
    let bad = || Failure::Malformed(format!("grid {s:?} is not lo:hi:step"));
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(bad());
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| bad());
    Ok(SigmaGrid::new(num(lo)?, num(hi)?, num(step)?)?)
}

fn curve_json(c: CurveClass) -> Value {
    json!([c.p(), c.q()])
}

fn limit(ray_path: &Path, foliation_path: &Path) -> Result<()> {
    let d = wire::parse_ray(&read_input(ray_path)?)?;
    let f = wire::parse_foliation(&read_input(foliation_path)?)?;
    let mut m = Map::new();
    m.insert("moduli".into(), wire::rationals(&foliation::moduli(&d).0));
    let crossing = match &f {
        // components of the vertical foliation cross none of it
        FoliationInput::Basis(_) => IntersectionVector::zeros(d.len()),
        FoliationInput::General { crossing, .. } => crossing.clone(),
    };
    let root = foliation::e_q(&d, &crossing)?;
    m.insert("shrink_limit".into(), rational_value(&root.square));
    m.insert("shrink_limit_root".into(), number(root.root));
    let grow = foliation::grow_limit(&d, &f)?;
    m.insert("grow_limit".into(), wire::extended_value(&grow));
    m.insert("grow_limit_value".into(), number(grow.to_f64()));
    if let FoliationInput::Basis(c) = &f {
        let w = foliation::optimal_witness(&d, c)?;
        m.insert("optimal_witness".into(), wire::rationals(w.entries()));
    }
    emit(&Value::Object(m))
}

fn read_pair(args: &PairArgs) -> Result<(RayDecomposition, RayDecomposition)> {
    let (d1, d2) = wire::parse_pair(&read_input(&args.pair)?)?;
    if args.require_finite && !pair::align(&d1, &d2).is_comparable() {
        return Err(Failure::Invalid(
            "rays are not comparable: the vertical foliations are not absolutely continuous".into(),
        ));
    }
    Ok((d1, d2))
}

fn distance(args: &PairArgs) -> Result<()> {
    let (d1, d2) = read_pair(args)?;
    emit(&wire::log_distance(&pair::limiting_distance(&d1, &d2)))
}

fn detour(args: &PairArgs) -> Result<()> {
    let (d1, d2) = read_pair(args)?;
    emit(&wire::detour(&pair::detour_distance(&d1, &d2)))
}

fn shift(args: &PairArgs, sigma_grid: Option<&str>) -> Result<()> {
    let scan_grid = sigma_grid.map(grid).transpose()?;
    let (d1, d2) = read_pair(args)?;
    let mut m = Map::new();
    m.insert("comparable".into(), Value::Bool(pair::align(&d1, &d2).is_comparable()));
    m.insert("min_limiting_distance".into(), wire::log_distance(&pair::min_limiting_distance(&d1, &d2)));
    match pair::optimal_shift(&d1, &d2) {
        Ok(s) => {
            let at = pair::shifted_limiting_distance(&d1, &d2, &s)?;
            m.insert("optimal_shift".into(), wire::shift(&s));
            m.insert("distance_at_optimal_shift".into(), wire::log_distance(&at));
            if let Some(g) = scan_grid {
                let (sigma, min) = pair::sigma_scan(&d1, &d2, &g)?;
                m.insert(
                    "scan".into(),
                    json!({
                        "lo": number(g.lo),
                        "hi": number(g.hi),
                        "step": number(g.step),
                        "argmin": number(sigma),
                        "min": number(min),
                    }),
                );
            }
        }
        Err(teichray::Error::NotComparable) => {
            m.insert("optimal_shift".into(), Value::Null);
        }
        Err(e) => return Err(e.into()),
    }
    emit(&Value::Object(m))
}

fn equiv(args: &PairArgs) -> Result<()> {
    let (d1, d2) = read_pair(args)?;
    let rep = pair::analyze(&d1, &d2);
    emit(&json!({
        "comparable": rep.alignment.is_comparable(),
        "modular_constant": rep.modular_constant.as_ref().map_or(Value::Null, rational_value),
        "detour_distance": wire::detour(&rep.detour),
        "asymptotic": pair::is_asymptotic(&d1, &d2),
        "busemann_equal": pair::busemann_equal(&d1, &d2),
    }))
}

fn torus_verify(
    omega: &str,
    curves: &[String],
    t_grid: &str,
    other: Option<&str>,
    bound: u32,
) -> Result<()> {
    let w = torus_point(omega)?;
    let curves: Vec<CurveClass> = if curves.is_empty() {
        torus::primitive_curves(2)
    } else {
        curves.iter().map(|s| curve(s)).collect::<Result<_>>()?
    };
    let ts: Vec<f64> = grid(t_grid)?.points().collect();
    let other = other.map(torus_point).transpose()?;
    let report = torus::verify_limits(w, &curves, &ts)?;

    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "curve": curve_json(r.curve),
                "t": number(r.t),
                "shrink_value": number(r.shrink_value),
                "shrink_limit": rational_value(&r.shrink_limit),
                "residual": number(r.residual),
                "closed_form_residual": number(r.closed_form_residual),
                "residual_exact": r.residual_exact,
                "walsh_holds": r.walsh_holds,
                "grow_value": number(r.grow_value),
                "grow_limit": wire::extended_value(&r.grow_limit),
            })
        })
        .collect();
    let ray = &report.ray;
    let mut m = Map::new();
    m.insert("omega".into(), json!([number(w.re()), number(w.im())]));
    m.insert("ray".into(), wire::ray_to_value(&ray.decomposition));
    m.insert("core".into(), ray.core.map_or(Value::Null, curve_json));
    // for a minimal vertical foliation the scale of G is a choice, not data
    m.insert("normalization".into(), Value::from("i(G,(1,0)) = 1"));
    m.insert("normalization_is_convention".into(), Value::Bool(ray.core.is_none()));
    m.insert("rows".into(), Value::Array(rows));
    m.insert("product_pairs_checked".into(), Value::from(report.pairs_checked));
    m.insert("product_pairs_equal".into(), Value::from(report.pairs_equal));
    m.insert("max_residual_error".into(), number(report.max_residual_error()));
    m.insert("failures".into(), json!(report.failures));
    m.insert("passed".into(), Value::Bool(report.passed()));
    if let Some(w2) = other {
        let k = torus::kerckhoff_sup(w, w2, bound)?;
        let exact = torus::teich_dist_exact(w, w2);
        m.insert(
            "kerckhoff".into(),
            json!({
                "other": [number(w2.re()), number(w2.im())],
                "bound": k.bound,
                "distance": number(k.distance),
                "argmax": curve_json(k.argmax),
                "exact_distance": number(exact),
                "deficit": number(exact - k.distance),
            }),
        );
    }
    for f in &report.failures {
        eprintln!("check failed: {f}");
    }
    emit(&Value::Object(m))
}

fn cylinders_json(cyls: &[origami::Cylinder], prefix: &str) -> Value {
    Value::Array(
        cyls.iter()
            .enumerate()
            .map(|(j, c)| {
                json!({
                    "id": format!("{prefix}{}", j + 1),
                    "cells": c.cells.iter().map(|x| x + 1).collect::<Vec<_>>(),
                    "width": c.width,
                    "circumference": c.circumference,
                    "modulus": rational_value(&c.modulus()),
                })
            })
            .collect(),
    )
}

/// `i:j,...`, one-indexed.
fn matching(s: &str) -> Result<Vec<(usize, usize)>> {
    let bad = || Failure::Malformed(format!("matching {s:?} is not a list i:j,..."));
    s.split(',')
        .map(|item| {
            let (i, j) = item.split_once(':').ok_or_else(bad)?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            if i == 0 || j == 0 {
                return Err(Failure::Invalid("cylinders are numbered from 1".into()));
            }
            Ok((i - 1, j - 1))
        })
        .collect()
}

fn origami_analyze(path: &Path, compare: Option<&Path>, matching_arg: Option<&str>) -> Result<()> {
    let o = wire::parse_origami(&read_input(path)?)?;
    let vertical = o.cylinders(CylinderDirection::Vertical);
    let horizontal = o.cylinders(CylinderDirection::Horizontal);
    let d = origami::ray_data(&o, CylinderDirection::Vertical);
    let dh = origami::ray_data(&o, CylinderDirection::Horizontal);
    let cone = o.cone_data();

    let mut limits = Vec::new();
    for j in 0..vertical.len() {
        let basis = BasisFoliation::indicator(vertical.len(), j)?;
        let (lo, hi) = origami::scaled_bounds(&o, j)?;
        limits.push(json!({
            "id": format!("V{}", j + 1),
            "grow_limit": rational_value(&foliation::grow_limit_basis(&d, &basis)?),
            "scaled_lower_bound": rational_value(&lo),
            "scaled_upper_bound": rational_value(&hi),
        }));
    }

    let mut m = Map::new();
    m.insert("n".into(), Value::from(o.n()));
    m.insert("genus".into(), Value::from(cone.genus));
    m.insert("cone_angles".into(), json!(cone.angles));
    m.insert("moduli".into(), wire::rationals(&foliation::moduli(&d).0));
    m.insert("horizontal_moduli".into(), wire::rationals(&foliation::moduli(&dh).0));
    m.insert("vertical_cylinders".into(), cylinders_json(&vertical, "V"));
    m.insert("horizontal_cylinders".into(), cylinders_json(&horizontal, "H"));
    m.insert("ray".into(), wire::ray_to_value(&d));
    m.insert("core_intersections".into(), json!(origami::core_intersections(&o)));
    m.insert("core_limits".into(), Value::Array(limits));

    if let Some(other) = compare {
        let o2: Origami = wire::parse_origami(&read_input(other)?)?;
        let pairs = match matching_arg {
            Some(s) => matching(s)?,
            None => (0..vertical.len()).map(|j| (j, j)).collect(),
        };
        let rep = origami::compare_rays(&o, &o2, &pairs)?;
        m.insert("comparison".into(), wire::pair_report(&rep));
    }
    emit(&Value::Object(m))
}

fn csv_error(e: csv::Error) -> Failure {
    Failure::Invalid(format!("cannot write CSV: {e}"))
}

fn trace(args: &TraceArgs) -> Result<()> {
    let ts: Vec<f64> = grid(&args.t_grid)?.points().collect();
    let mut rows: Vec<[String; 6]> = Vec::new();
    let fmt = |x: f64| {
        if x == f64::INFINITY {
            "+inf".to_string()
        } else {
            format!("{x}")
        }
    };

    if let Some(path) = &args.origami {
        let o = wire::parse_origami(&read_input(path)?)?;
        let j = args
            .cylinder
            .checked_sub(1)
            .ok_or_else(|| Failure::Invalid("cylinders are numbered from 1".into()))?;
        let (lo, hi) = origami::scaled_bounds(&o, j)?;
        for &t in &ts {
            // only bounds are known at finite t; checks t >= 0
            origami::finite_t_bounds(&o, j, t)?;
            rows.push([
                fmt(t),
                "grow".into(),
                String::new(),
                fmt(rational::to_f64(&lo)),
                fmt(rational::to_f64(&hi)),
                fmt(rational::to_f64(&hi)),
            ]);
        }
    } else {
        let w = torus_point(args.omega.as_deref().expect("clap requires omega"))?;
        let c = match &args.curve {
            Some(s) => curve(s)?,
            None => CurveClass::new(0, 1)?,
        };
        let ray = torus::ray_data_torus(w, torus::Direction::Vertical);
        for &t in &ts {
            let ext = torus::ext_torus(torus::vertical_ray(w, t), c);
            let row = match args.quantity {
                Quantity::Shrink => {
                    let limit = rational::to_f64(&ray.shrink_limit(c));
                    // the limit is also a lower bound at every t
                    [fmt(t), "shrink".into(), fmt((-2.0 * t).exp() * ext), fmt(limit), String::new(), fmt(limit)]
                }
                Quantity::Grow => {
                    let limit = ray.grow_limit(c).to_f64();
                    [fmt(t), "grow".into(), fmt((2.0 * t).exp() * ext), String::new(), String::new(), fmt(limit)]
                }
            };
            rows.push(row);
        }
    }

    let mut out = csv::Writer::from_writer(io::stdout().lock());
    out.write_record(["t", "quantity", "value", "bound_low", "bound_high", "limit"])
        .map_err(csv_error)?;
    for r in &rows {
        out.write_record(r).map_err(csv_error)?;
    }
    out.flush().map_err(|e| Failure::Invalid(format!("cannot write CSV: {e}")))
}
