//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use teichray::foliation::{
    basis_pairing, grow_certificate, grow_limit_basis, moduli, optimal_witness, BasisFoliation,
    ExtendedValue, IntersectionVector, RayDecomposition,
};
use teichray::origami::{
    compare_rays, finite_t_bounds, ray_data, scaled_bounds, CylinderDirection, Origami,
};
use teichray::pair::{
    busemann_equal, detour_distance, limiting_distance, min_limiting_distance, optimal_shift,
    shifted_limiting_distance, sigma_scan, LogArgument, SigmaGrid,
};
use teichray::rational::{self, int, ratio, Rational};
use teichray::torus::{
    ext_torus, kerckhoff_sup, primitive_curves, ray_data_torus, teich_dist_exact, verify_limits,
    vertical_ray, Direction, TorusPoint,
};

type Outcome = Result<String, String>;

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x7e1c_4a00 + criterion)
}

fn random_torus(rng: &mut ChaCha8Rng) -> TorusPoint {
    TorusPoint::new(rng.gen_range(-1.0..=1.0), rng.gen_range(0.5..=3.0)).unwrap()
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(1..=16), rng.gen_range(1..=16))
}

/// Cylinders `C1..Cn` with the given moduli.
fn with_moduli(m: &[Rational]) -> RayDecomposition {
    let pairs: Vec<_> = m.iter().map(|x| (x.clone(), int(1))).collect();
    RayDecomposition::from_pairs(&pairs).unwrap()
}

fn random_moduli(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

fn integer_grid(hi: u32) -> Vec<f64> {
    (0..=hi).map(f64::from).collect()
}

fn walsh_shrink() -> Outcome {
    let mut rng = rng(1);
    let tori: Vec<TorusPoint> = (0..50).map(|_| random_torus(&mut rng)).collect();
    let curves = primitive_curves(5);
    let grid = integer_grid(8);

    let start = Instant::now();
    let mut reports = Vec::new();
    for &w in &tori {
        reports.push(verify_limits(w, &curves, &grid).map_err(|e| e.to_string())?);
    }
    let elapsed = start.elapsed();

    let mut worst_match = 0.0f64;
    let mut worst_at_4 = 0.0f64;
    let mut inexact = 0;
    for rep in &reports {
        worst_match = worst_match.max(rep.max_residual_error());
        for row in &rep.rows {
            if !row.residual_exact {
                inexact += 1;
            }
            if row.t == 4.0 {
                worst_at_4 = worst_at_4.max(row.residual.abs());
            }
        }
    }
    let verdict = |ok: bool| if ok { "ok" } else { "violated" };
    let matched = worst_match <= 1e-12 && inexact == 0;
    let small = worst_at_4 <= 1e-6;
    let fast = elapsed < Duration::from_secs(1);
    let detail = format!(
        "closed-form match {} (max mismatch {worst_match:.2e} <= 1e-12, {inexact} inexact rows); \
         t=4 bound {} (max residual {worst_at_4:.2e} <= 1e-6); runtime {} ({:.3}s < 1s)",
        verdict(matched),
        verdict(small),
        verdict(fast),
        elapsed.as_secs_f64()
    );
    if matched && small && fast {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn grow_limit_rational() -> Outcome {
    let mut rng = rng(2);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for _ in 0..50 {
        let r = rng.gen_range(1..=8i64);
        let s = rng.gen_range(-r..=r);
        let w = TorusPoint::new(s as f64 / r as f64, rng.gen_range(0.5..=3.0)).unwrap();
        let ray = ray_data_torus(w, Direction::Vertical);
        let core = ray.core.ok_or("rational slope not detected")?;
        let limit = match ray.grow_limit(core) {
            ExtendedValue::Finite(v) => v,
            other => return Err(format!("grow limit of the core is {other:?}")),
        };
        let report = verify_limits(w, &[core], &integer_grid(8)).map_err(|e| e.to_string())?;
        if !report.passed() {
            return Err(report.failures.join("; "));
        }
        for t in integer_grid(8) {
            let value = (2.0 * t).exp() * ext_torus(vertical_ray(w, t), core);
            worst = worst.max((value - rational::to_f64(&limit)).abs());
            cases += 1;
        }
    }
    let detail = format!("{cases} samples, max |e^(2t) Ext - limit| {worst:.2e} (<= 1e-12)");
    if worst <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn walsh_inequality() -> Outcome {
    let mut rng = rng(3);
    let curves = primitive_curves(5);
    let grid: Vec<f64> = (0..=32).map(|k| k as f64 * 0.25).collect();
    let mut rows = 0;
    let mut violations = 0;
    for _ in 0..50 {
        let report = verify_limits(random_torus(&mut rng), &curves, &grid).map_err(|e| e.to_string())?;
        rows += report.rows.len();
        violations += report.rows.iter().filter(|r| !r.walsh_holds).count();
    }
    let detail = format!("{violations} violations over {rows} exact checks");
    if violations == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rectangular_distance() -> Outcome {
    let mut rng = rng(4);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let w1 = TorusPoint::new(0.0, rng.gen_range(0.25..=4.0)).unwrap();
        let w2 = TorusPoint::new(0.0, rng.gen_range(0.25..=4.0)).unwrap();
        let lim = limiting_distance(
            &ray_data_torus(w1, Direction::Vertical).decomposition,
            &ray_data_torus(w2, Direction::Vertical).decomposition,
        )
        .value();
        for t in integer_grid(8) {
            let d = teich_dist_exact(vertical_ray(w1, t), vertical_ray(w2, t));
            worst = worst.max((d - lim).abs());
        }
    }
    let detail = format!("20 pairs, t in 0..8, max |d_T - limit| {worst:.2e} (<= 1e-12)");
    if worst <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn kerckhoff() -> Outcome {
    let mut rng = rng(5);
    let mut pairs = Vec::new();
    while pairs.len() < 20 {
        let (w1, w2) = (random_torus(&mut rng), random_torus(&mut rng));
        // d_H = 2 d_T
        if 2.0 * teich_dist_exact(w1, w2) <= 2.0 {
            pairs.push((w1, w2));
        }
    }
    let start = Instant::now();
    let mut worst = 0.0f64;
    for &(w1, w2) in &pairs {
        let k = kerckhoff_sup(w1, w2, 200).map_err(|e| e.to_string())?;
        worst = worst.max((k.distance - teich_dist_exact(w1, w2)).abs());
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "max |sup - d_T| {worst:.2e} (<= 1e-3), runtime {:.3}s (< 5s)",
        elapsed.as_secs_f64()
    );
    if worst <= 1e-3 && elapsed < Duration::from_secs(5) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn minimum_and_shift() -> Outcome {
    let mut rng = rng(6);
    let grid = SigmaGrid::new(-3.0, 3.0, 1e-3).unwrap();
    let mut worst_excess = 0.0f64;
    let mut below = 0;
    let mut inexact = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let d1 = with_moduli(&random_moduli(&mut rng, n));
        let d2 = with_moduli(&random_moduli(&mut rng, n));
        let half = min_limiting_distance(&d1, &d2);
        let (_, scanned) = sigma_scan(&d1, &d2, &grid).map_err(|e| e.to_string())?;
        let excess = scanned - half.value();
        worst_excess = worst_excess.max(excess);
        if excess < -1e-12 {
            below += 1;
        }
        let star = optimal_shift(&d1, &d2).map_err(|e| e.to_string())?;
        if !shifted_limiting_distance(&d1, &d2, &star).unwrap().exact_eq(&half) {
            inexact += 1;
        }
    }
    let detail = format!(
        "max grid excess over delta/2 {worst_excess:.2e} (<= 5e-3), {below} below, \
         {inexact} inexact optimal shifts"
    );
    if worst_excess <= 5e-3 && below == 0 && inexact == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn equivalence_dichotomy() -> Outcome {
    let mut rng = rng(7);
    let mut bad = Vec::new();
    for i in 0..1000 {
        let n = rng.gen_range(2..=6);
        let m = random_moduli(&mut rng, n);
        let c = small_rational(&mut rng);
        let scaled: Vec<Rational> = m.iter().map(|x| x * &c).collect();
        let (d1, d2) = (with_moduli(&scaled), with_moduli(&m));

        let star = optimal_shift(&d1, &d2).map_err(|e| e.to_string())?;
        let shifted = shifted_limiting_distance(&d1, &d2, &star).unwrap();
        if !(detour_distance(&d1, &d2).is_zero() && shifted.is_zero() && busemann_equal(&d1, &d2)) {
            bad.push(format!("instance {i}: equivalent pair not recognized"));
        }

        let k = rng.gen_range(0..n);
        let mut eps = small_rational(&mut rng);
        if rng.gen_bool(0.5) && eps < m[k] {
            eps = -eps;
        }
        let mut perturbed = m.clone();
        perturbed[k] = &perturbed[k] + &eps;
        let d3 = with_moduli(&perturbed);
        if detour_distance(&d1, &d3).is_zero() || busemann_equal(&d1, &d3) {
            bad.push(format!("instance {i}: perturbed pair still equivalent"));
        }
    }
    if bad.is_empty() {
        Ok("1000 equivalent pairs and 1000 perturbations decided exactly".into())
    } else {
        Err(format!("{} failures, first: {}", bad.len(), bad[0]))
    }
}

fn finite_argument(d: &RayDecomposition, e: &RayDecomposition) -> Rational {
    match detour_distance(d, e).as_log_distance().argument {
        LogArgument::Finite(r) => r,
        LogArgument::Infinite => panic!("aligned rays"),
    }
}

fn metric_axioms() -> Outcome {
    let mut rng = rng(8);
    let mut asym = 0;
    let mut triangle = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let d: Vec<RayDecomposition> =
            (0..3).map(|_| with_moduli(&random_moduli(&mut rng, n))).collect();
        if finite_argument(&d[0], &d[1]) != finite_argument(&d[1], &d[0]) {
            asym += 1;
        }
        let direct = finite_argument(&d[0], &d[2]);
        let detour = finite_argument(&d[0], &d[1]) * finite_argument(&d[1], &d[2]);
        if direct > detour {
            triangle += 1;
        }
    }
    let detail = format!("{asym} symmetry and {triangle} triangle failures over 1000 triples");
    if asym == 0 && triangle == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn origami_ground_truth() -> Outcome {
    let check = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
    // squares A, B, C: r = (A B)(C), u = (A C)(B)
    let l = Origami::from_one_indexed(&[2, 1, 3], &[3, 2, 1]).map_err(|e| e.to_string())?;
    let cyl: Vec<(usize, usize)> = l
        .cylinders(CylinderDirection::Vertical)
        .iter()
        .map(|c| (c.width, c.circumference))
        .collect();
    check(cyl == [(1, 2), (1, 1)], "L cylinders")?;
    let d = ray_data(&l, CylinderDirection::Vertical);
    check(moduli(&d).0 == [ratio(1, 2), int(1)], "L moduli")?;
    for (j, expected) in [int(2), int(1)].iter().enumerate() {
        let basis = BasisFoliation::indicator(2, j).unwrap();
        check(&grow_limit_basis(&d, &basis).unwrap() == expected, "L core grow limits")?;
    }
    check(scaled_bounds(&l, 0).unwrap() == (ratio(4, 3), int(2)), "L scaled bounds")?;
    for j in 0..2 {
        let (lo, hi) = scaled_bounds(&l, j).unwrap();
        check(lo <= hi, "exact sandwich")?;
        for t in [0.0, 1.0, 2.0, 4.0] {
            let (flo, fhi) = finite_t_bounds(&l, j, t).unwrap();
            check(flo <= fhi, "finite-t sandwich")?;
        }
    }

    let square = Origami::new(vec![0], vec![0]).unwrap();
    let sq = ray_data(&square, CylinderDirection::Vertical);
    let torus = ray_data_torus(TorusPoint::new(0.0, 1.0).unwrap(), Direction::Vertical).decomposition;
    let (a, b) = (&sq.components()[0], &torus.components()[0]);
    check(
        sq.len() == 1 && torus.len() == 1 && (&a.a, &a.h, a.kind) == (&b.a, &b.h, b.kind),
        "one square vs square torus",
    )?;

    // the L with its long column doubled: widths (2, 1), circumferences (2, 1)
    let doubled = Origami::new(vec![2, 3, 4, 1, 0], vec![1, 0, 3, 2, 4]).map_err(|e| e.to_string())?;
    let rep = compare_rays(&doubled, &l, &[(0, 0), (1, 1)]).map_err(|e| e.to_string())?;
    let two = LogArgument::Finite(int(2));
    check(rep.limiting.argument == two && rep.limiting.root == 1, "limiting distance 1/2 log 2")?;
    check(rep.detour.as_log_distance().exact_eq(&limiting_distance(&with_moduli(&[int(2)]), &with_moduli(&[int(1)]))), "detour 1/2 log 2")?;
    check(rep.shift.as_ref().map(|s| s.exp4.clone()) == Some(int(2)), "optimal shift 1/4 log 2")?;

    Ok("L-origami, one-square torus and doubled L all exact".into())
}

fn cauchy_schwarz() -> Outcome {
    let mut rng = rng(10);
    let mut above = 0;
    let mut equality_mismatch = 0;
    let mut equalities = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let pairs: Vec<_> = (0..n).map(|_| (small_rational(&mut rng), small_rational(&mut rng))).collect();
        let d = RayDecomposition::from_pairs(&pairs).unwrap();
        let mut c: Vec<Rational> = (0..n).map(|_| ratio(rng.gen_range(0..=16), rng.gen_range(1..=16))).collect();
        if c.iter().all(Zero::is_zero) {
            c[0] = int(1);
        }
        let basis = BasisFoliation::new(c).unwrap();
        let ceiling = grow_limit_basis(&d, &basis).unwrap();
        let best = optimal_witness(&d, &basis).unwrap();

        // half the witnesses are rescaled optimal ones
        let witness = if rng.gen_bool(0.5) {
            best.scale(&small_rational(&mut rng))
        } else {
            let w: Vec<Rational> = (0..n).map(|_| ratio(rng.gen_range(0..=16), rng.gen_range(1..=16))).collect();
            if w.iter().all(Zero::is_zero) {
                continue;
            }
            IntersectionVector::new(w).unwrap()
        };
        let pairing = basis_pairing(&basis, &witness).unwrap();
        let cert = match grow_certificate(&d, &pairing, &witness).map_err(|e| e.to_string())? {
            ExtendedValue::Finite(v) => v,
            other => return Err(format!("unexpected certificate {other:?}")),
        };
        if cert > ceiling {
            above += 1;
        }
        let proportional = proportional(witness.entries(), best.entries());
        if (cert == ceiling) != proportional {
            equality_mismatch += 1;
        }
        if cert == ceiling {
            equalities += 1;
        }
    }
    let detail = format!(
        "{above} certificates above the ceiling, {equality_mismatch} equality mismatches, \
         {equalities} equalities all at rescaled optimal witnesses"
    );
    if above == 0 && equality_mismatch == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn proportional(u: &[Rational], v: &[Rational]) -> bool {
    let Some(k) = u.iter().zip(v).find(|(_, b)| !b.is_zero()).map(|(a, b)| a / b) else {
        return u.iter().all(Zero::is_zero);
    };
    k.is_positive() && u.iter().zip(v).all(|(a, b)| a == &(&k * b))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("walsh shrink limit", walsh_shrink),
        ("grow limit on rational tori", grow_limit_rational),
        ("walsh inequality", walsh_inequality),
        ("limiting distance on rectangular tori", rectangular_distance),
        ("kerckhoff supremum", kerckhoff),
        ("minimum over shifts", minimum_and_shift),
        ("equivalence dichotomy", equivalence_dichotomy),
        ("detour metric axioms", metric_axioms),
        ("origami ground truth", origami_ground_truth),
        ("certificate ceiling", cauchy_schwarz),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
