//! Acceptance suite: one PASS/FAIL line per criterion, exact integer checks.

use std::collections::{BTreeMap, HashMap};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use kummer_core::constructions::{enumerate_splittings, prop13_prediction, LinPoly};
use kummer_core::divisors::Point;
use kummer_core::{arith, Error, Fe, Field, KummerCurve, Poly, RatFun};
use kummer_forge::verify::verify_paper;

const VERIFY_BUDGET: Duration = Duration::from_secs(60);

type Check = Result<String, String>;
type Suite = (&'static str, fn() -> Check);

fn gf(p: u32, m: u32) -> Arc<Field> {
    Arc::new(Field::new(p, m, None).unwrap())
}

fn prime_powers_upto(bound: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for p in 2..=bound {
        if !arith::is_prime(p) {
            continue;
        }
        let mut m = 1;
        while p.pow(m) <= bound {
            out.push((p as u32, m));
            m += 1;
        }
    }
    out
}

/// Fields `p^m <= 243` with `p` in {2, 3, 5}.
fn small_char_fields() -> Vec<(u32, u32)> {
    prime_powers_upto(243)
        .into_iter()
        .filter(|(p, _)| [2, 3, 5].contains(p))
        .collect()
}

fn criterion_11() -> Check {
    let mut instances = 0;
    for (p, m) in small_char_fields() {
        let f = gf(p, m);
        for r in [LinPoly::full_space(&f), LinPoly::trace(&f)] {
            let specs = enumerate_splittings(&r, &f).specs;
            let failures: Vec<String> = specs
                .par_iter()
                .filter_map(|spec| {
                    let pred = prop13_prediction(spec, &f);
                    let curve = match spec.function(&f).and_then(|func| {
                        KummerCurve::new(f.clone(), f.q() as u64 - 1, func)
                    }) {
                        Ok(c) => c,
                        Err(e) => return Some(format!("q={} s={}: {e}", f.q(), spec.s)),
                    };
                    let (g, n) = match (curve.genus(), curve.count_points()) {
                        (Ok(g), Ok(n)) => (g, n),
                        (Err(e), _) | (_, Err(e)) => return Some(format!("q={}: {e}", f.q())),
                    };
                    if g as i64 != pred.genus || n < pred.point_lower_bound {
                        Some(format!(
                            "q={} s={} c_s={}: engine ({g}, {n}), closed form genus {} and at least {}",
                            f.q(),
                            spec.s,
                            spec.c_s.enc(),
                            pred.genus,
                            pred.point_lower_bound
                        ))
                    } else {
                        None
                    }
                })
                .collect();
            if let Some(first) = failures.first() {
                return Err(format!("{} mismatches, first: {first}", failures.len()));
            }
            instances += specs.len();
        }
    }
    Ok(format!("{instances} splittings agree"))
}

fn random_poly(rng: &mut ChaCha8Rng, field: &Field, max_deg: usize) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    let coeffs = (0..=d)
        .map(|_| field.element(rng.gen_range(0..field.q() as u64)).unwrap())
        .collect();
    Poly::from_coeffs(coeffs)
}

fn criterion_12() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0u64;
    for (p, m) in prime_powers_upto(81) {
        let f = gf(p, m);
        let q = f.q() as u64;
        let units: Vec<Fe> = f.units().collect();
        for n in arith::divisors(q - 1).into_iter().filter(|&n| n >= 2) {
            // y -> y^n over F_q^*, counted once per (field, n)
            let mut nth: HashMap<Fe, u64> = HashMap::new();
            for &y in &units {
                *nth.entry(f.pow(y, n)).or_default() += 1;
            }
            let mut accepted = 0;
            let mut attempts = 0;
            while accepted < 25 {
                attempts += 1;
                if attempts > 10_000 {
                    return Err(format!(
                        "q={q} n={n}: could not draw 25 admissible functions"
                    ));
                }
                let num = random_poly(&mut rng, &f, 8);
                let mut den = random_poly(&mut rng, &f, 8);
                if num.is_zero() || den.is_zero() {
                    continue;
                }
                den = den.monic(&f).unwrap();
                let Ok(func) = RatFun::new(num, den, &f) else {
                    continue;
                };
                let Ok(curve) = KummerCurve::new(f.clone(), n, func.clone()) else {
                    continue;
                };
                accepted += 1;
                let finite = f.elements().filter_map(|x| {
                    let v = func.den().evaluate(x, &f);
                    if v.is_zero() {
                        return None;
                    }
                    let val = f.div(func.num().evaluate(x, &f), v).unwrap();
                    (!val.is_zero()).then_some((Point::Finite(x), val))
                });
                let at_inf = {
                    let (dn, dd) = (func.num().degree().unwrap(), func.den().degree().unwrap());
                    (dn == dd).then(|| {
                        let val = f
                            .div(func.num().leading().unwrap(), func.den().leading().unwrap())
                            .unwrap();
                        (Point::Infinity, val)
                    })
                };
                for (pt, val) in finite.chain(at_inf) {
                    let brute = nth.get(&val).copied().unwrap_or(0);
                    let rule = curve.fiber(pt).map_err(|e| e.to_string())?.points;
                    if rule != brute {
                        return Err(format!(
                            "q={q} n={n} f={}/{} at {pt:?}: rule {rule}, brute force {brute}",
                            func.num().to_power_form(),
                            func.den().to_power_form()
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} unramified fibers agree"))
}

fn criterion_13() -> Check {
    let mut checked = 0u64;
    for (p, m) in prime_powers_upto(81) {
        let f = gf(p, m);
        let q = f.q() as u64;
        let units: Vec<Fe> = f.units().collect();
        for d in 1..=q {
            let mut powers = vec![false; q as usize];
            for &y in &units {
                powers[f.pow(y, d).enc() as usize] = true;
            }
            for &a in &units {
                let got = f.is_dth_power(a, d).map_err(|e| e.to_string())?;
                if got != powers[a.enc() as usize] {
                    return Err(format!("q={q} d={d} a={}: got {got}", a.enc()));
                }
                checked += 1;
            }
            if f.is_dth_power(Fe::ZERO, d) != Err(Error::ZeroInput) {
                return Err(format!("q={q} d={d}: zero input accepted"));
            }
        }
    }
    Ok(format!("{checked} membership tests agree"))
}

/// Monic of degree 1..=3 without roots in the field, hence irreducible.
fn random_irreducible(rng: &mut ChaCha8Rng, f: &Field) -> Poly {
    loop {
        let d = rng.gen_range(1..=3);
        let mut coeffs: Vec<Fe> = (0..d)
            .map(|_| f.element(rng.gen_range(0..f.q() as u64)).unwrap())
            .collect();
        coeffs.push(Fe::ONE);
        let g = Poly::from_coeffs(coeffs);
        if d == 1 || f.elements().all(|x| !g.evaluate(x, f).is_zero()) {
            return g;
        }
    }
}

fn criterion_14() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut fields = small_char_fields();
    fields.extend([(7, 1), (7, 2)]);
    let mut total = 0;
    for (p, m) in fields {
        let f = gf(p, m);
        let pp = p as u64;
        let exponents = [1, 2, 3, pp, pp + 1, 2 * pp, pp * pp];
        for _ in 0..200 {
            let k = rng.gen_range(1..=4);
            let mut factors: Vec<Poly> = Vec::new();
            while factors.len() < k {
                let g = random_irreducible(&mut rng, &f);
                if !factors.contains(&g) {
                    factors.push(g);
                }
            }
            let unit = f.element(rng.gen_range(1..f.q() as u64)).unwrap();
            let mut bands: BTreeMap<u64, Poly> = BTreeMap::new();
            let mut product = Poly::constant(unit);
            for g in &factors {
                let e = exponents[rng.gen_range(0..exponents.len())];
                product = product.mul(&g.pow(e, &f), &f);
                let slot = bands.entry(e).or_insert_with(Poly::one);
                *slot = slot.mul(g, &f);
            }
            let expected: Vec<(Poly, u64)> = bands.into_iter().map(|(e, g)| (g, e)).collect();
            let dec = product
                .squarefree_decomposition(&f)
                .map_err(|e| e.to_string())?;
            if dec.reconstruct(&f) != product || dec.unit != unit || dec.parts != expected {
                return Err(format!(
                    "q={} product {}: got {:?}",
                    f.q(),
                    product.to_power_form(),
                    dec.parts
                        .iter()
                        .map(|(g, e)| (g.to_power_form(), *e))
                        .collect::<Vec<_>>()
                ));
            }
            total += 1;
        }
    }
    Ok(format!("{total} products decomposed exactly"))
}

fn criterion_15() -> Check {
    let mut instances = 0;
    for (p, m) in small_char_fields() {
        let f = gf(p, m);
        let r = m as usize;
        let half = r / 2;
        if half == 0 {
            continue;
        }
        let pp = p as u128;
        for spec in enumerate_splittings(&LinPoly::full_space(&f), &f).specs {
            if spec.s != half || spec.t != half {
                continue;
            }
            let curve = KummerCurve::new(f.clone(), f.q() as u64 - 1, spec.function(&f).unwrap())
                .map_err(|e| e.to_string())?;
            let g = curve.genus().unwrap() as u128;
            let n = curve.count_points().unwrap() as u128;
            let pr = pp.pow(r as u32);
            // N/g > 2 p^r / (p^(r-s) + p^t)
            let general = n * (pp.pow((r - spec.s) as u32) + pp.pow(spec.t as u32)) > 2 * pr * g;
            let sharp = if r.is_multiple_of(2) {
                n * n > pr * g * g
            } else {
                n * n * (pp + 1) * (pp + 1) > 4 * g * g * pp.pow(r as u32 + 1)
            };
            if !(g > 0 && general && sharp) {
                return Err(format!("q={} c_s={}: N={n} g={g}", f.q(), spec.c_s.enc()));
            }
            instances += 1;
        }
    }
    if instances == 0 {
        return Err("no instances generated".into());
    }
    Ok(format!("{instances} instances satisfy both bounds"))
}

fn main() -> ExitCode {
    let mut lines: Vec<(String, Check)> = Vec::new();

    let start = Instant::now();
    let report = verify_paper(None);
    let elapsed = start.elapsed();
    let names = [
        "split cover over F16",
        "full-space family, power class",
        "full-space family, non-power class",
        "full-space family, even degree",
        "trace-zero family",
        "trace-zero cover over F64 with fibers",
        "x f(x)^p variant",
        "quotient curves",
        "maximal family",
        "reference tables",
    ];
    for (i, name) in names.iter().enumerate() {
        let criterion = i as u32 + 1;
        let cases: Vec<_> = report
            .results
            .iter()
            .filter(|r| r.criterion == criterion)
            .collect();
        let failed: Vec<String> = cases
            .iter()
            .filter(|r| !r.passed)
            .map(|r| format!("{}: {}", r.id, r.detail))
            .collect();
        let check = if cases.is_empty() {
            Err("no cases".to_string())
        } else if failed.is_empty() {
            Ok(format!("{} cases", cases.len()))
        } else {
            Err(failed.join("; "))
        };
        lines.push((format!("{criterion:>2} {name}"), check));
    }
    let suites: [Suite; 5] = [
        ("11 closed form vs engine", criterion_11),
        ("12 fiber oracle", criterion_12),
        ("13 power residue oracle", criterion_13),
        ("14 squarefree reconstruction", criterion_14),
        ("15 ratio bounds", criterion_15),
    ];
    for (name, run) in suites {
        lines.push((name.to_string(), run()));
    }
    let budget = if elapsed < VERIFY_BUDGET {
        Ok(format!("{:.2}s", elapsed.as_secs_f64()))
    } else {
        Err(format!(
            "{:.2}s exceeds {}s",
            elapsed.as_secs_f64(),
            VERIFY_BUDGET.as_secs()
        ))
    };
    lines.push((" - verify runtime budget".into(), budget));

    let mut ok = true;
    for (name, check) in &lines {
        match check {
            Ok(msg) => println!("PASS {name}: {msg}"),
            Err(msg) => {
                ok = false;
                println!("FAIL {name}: {msg}");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
