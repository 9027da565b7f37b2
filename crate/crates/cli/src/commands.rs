use std::path::Path;

use markoff_core::{
    apply_word, class_number, equivalent, orbit_bfs, parabolic_lines_11, reduce_compact, reduce_compact_with_cap,
    reduce_min_complex_04, reduce_min_complex_11, AConfig, AnyPoint, AnySurface, BigInt, Caps, Complex64, Coord,
    DescentResult, DescentStatus, Equivalence, GeneratorSet, ParabolicLine, Point3, Scalar, Surface,
};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cache::{self, Cache};
use crate::error::CliError;
use crate::output::{self, cell, emit, Status};
use crate::parse::{format_complex, parse_int, parse_list, parse_range, parse_scalar};
use crate::{verify as suites, AwayMode, CapArgs, Format, Gens, Method, SurfaceArgs, SurfaceType};

fn input(what: &'static str, msg: impl Into<String>) -> CliError {
    CliError::Input { what, msg: msg.into() }
}

fn generator_set(g: Gens) -> GeneratorSet {
    match g {
        Gens::GammaPrime => GeneratorSet::GammaPrime,
        Gens::GammaPoly => GeneratorSet::GammaPoly,
    }
}

fn build_surface(args: &SurfaceArgs) -> Result<AnySurface, CliError> {
    let k = args.k.as_deref().ok_or_else(|| input("surface", "--k is required"))?;
    match args.kind {
        SurfaceType::Markoff => Ok(AnySurface::markoff(parse_scalar("k", k, args.complex)?)),
        SurfaceType::Cubic => {
            let ks = parse_list("k", k, 4, args.complex)?;
            let ks: [Scalar; 4] = ks.try_into().expect("four values");
            Ok(AnySurface::cubic04(ks)?)
        }
    }
}

fn build_point(text: &str, complex: bool) -> Result<AnyPoint, CliError> {
    let [x, y, z]: [Scalar; 3] = parse_list("point", text, 3, complex)?.try_into().expect("three values");
    Ok(AnyPoint::new(x, y, z)?)
}

fn exact_surface(args: &SurfaceArgs) -> Result<Surface<BigInt>, CliError> {
    match build_surface(args)? {
        AnySurface::Exact(s) => Ok(s),
        AnySurface::Approx(_) => Err(input("surface", "this command needs integer traces (drop --complex)")),
    }
}

fn exact_point_on(surface: &Surface<BigInt>, text: &str) -> Result<Point3<BigInt>, CliError> {
    let AnyPoint::Exact(p) = build_point(text, false)? else {
        unreachable!("integer parse")
    };
    let r = surface.residual(&p);
    if !Zero::is_zero(&r) {
        return Err(CliError::OffSurface {
            point: p.to_string(),
            residual: r.to_string(),
        });
    }
    Ok(p)
}

fn surface_params(surface: &Surface<BigInt>) -> Value {
    match surface {
        Surface::Markoff11(s) => output::big(&s.k),
        Surface::Cubic04(s) => Value::Array(s.k().iter().map(output::big).collect()),
    }
}

fn approx_surface_params(surface: &Surface<Complex64>) -> Value {
    match surface {
        Surface::Markoff11(s) => output::complex(&s.k),
        Surface::Cubic04(s) => Value::Array(s.k().iter().map(output::complex).collect()),
    }
}

fn close(a: &Point3<Complex64>, b: &Point3<Complex64>) -> bool {
    let n = |p: &Point3<Complex64>| p.coords().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let diff = (a.x - b.x).norm() + (a.y - b.y).norm() + (a.z - b.z).norm();
    diff <= 1e-6 * (1.0 + n(a).max(n(b)))
}

fn status_json<T>(status: &DescentStatus<T>, value: impl Fn(&T) -> Value) -> (Value, Status) {
    match status {
        DescentStatus::Reduced => (Value::Null, Status::Ok),
        DescentStatus::CapHit => (Value::Null, Status::CapsHit),
        DescentStatus::ExceptionalHit { axis, value: v } => (
            json!({"axis": axis.letter().to_string(), "value": value(v)}),
            Status::Ok,
        ),
    }
}

fn descent_json<T>(
    surface: Value,
    kind: markoff_core::SurfaceKind,
    input_point: Value,
    r: &DescentResult<T>,
    point: impl Fn(&Point3<T>) -> Value,
    value: impl Fn(&T) -> Value,
) -> (Value, Status) {
    let (exceptional, status) = status_json(&r.status, value);
    let doc = json!({
        "surface": kind.to_string(),
        "k": surface,
        "input": input_point,
        "reduced": point(&r.reduced),
        "word": r.word.to_string(),
        "steps": r.steps,
        "status": r.status.name(),
        "exceptional": exceptional,
        "condition": r.condition.map(|c| c.number()),
    });
    (doc, status)
}

const REDUCE_HEADER: [&str; 8] = [
    "surface",
    "k",
    "input",
    "reduced",
    "word",
    "steps",
    "status",
    "condition",
];

fn reduce_row(doc: &Value) -> Vec<String> {
    REDUCE_HEADER.iter().map(|h| cell(&doc[*h])).collect()
}

pub fn reduce(
    args: &SurfaceArgs,
    point: &str,
    method: Method,
    away: AwayMode,
    delta: f64,
    step_cap: usize,
    format: Format,
) -> Result<Status, CliError> {
    let surface = build_surface(args)?;
    let p = build_point(point, args.complex)?;
    let (doc, status) = match (surface, p) {
        (AnySurface::Exact(s), AnyPoint::Exact(p)) => {
            let r = s.residual(&p);
            if !Zero::is_zero(&r) {
                return Err(CliError::OffSurface {
                    point: p.to_string(),
                    residual: r.to_string(),
                });
            }
            let r = match method {
                Method::Auto | Method::Compact => reduce_compact(&s, &AConfig::integer_star(), &p)?,
                Method::Min => return Err(input("method", "min descent runs on complex input (add --complex)")),
            };
            if apply_word(&s, &r.word, &p)? != r.reduced {
                return Err(CliError::Certificate(p.to_string()));
            }
            descent_json(
                surface_params(&s),
                s.kind(),
                output::point(&p),
                &r,
                output::point,
                output::big,
            )
        }
        (AnySurface::Approx(s), AnyPoint::Approx(p)) => {
            if !s.contains(&p) {
                return Err(CliError::OffSurface {
                    point: p.coords().map(format_complex).join(", "),
                    residual: format_complex(&s.residual(&p)),
                });
            }
            let r = match (method, &s) {
                (Method::Auto | Method::Min, Surface::Markoff11(m)) => reduce_min_complex_11(m, &p, step_cap)?,
                (Method::Auto | Method::Min, Surface::Cubic04(c)) => reduce_min_complex_04(c, &p, step_cap)?,
                (Method::Compact, _) => {
                    let cfg = match away {
                        AwayMode::RealAway2 => AConfig::real_away_2(delta),
                        AwayMode::ComplexAwayInterval => AConfig::complex_away_interval(delta),
                    }
                    .ok_or_else(|| input("delta", "must be positive and finite"))?;
                    reduce_compact_with_cap(&s, &cfg, &p, step_cap)?
                }
            };
            if !close(&apply_word(&s, &r.word, &p)?, &r.reduced) {
                return Err(CliError::Certificate(format!("{p:?}")));
            }
            descent_json(
                approx_surface_params(&s),
                s.kind(),
                output::complex_point(&p),
                &r,
                output::complex_point,
                output::complex,
            )
        }
        _ => unreachable!("surface and point share the --complex flag"),
    };
    emit(format, &doc, &REDUCE_HEADER, &[reduce_row(&doc)])?;
    Ok(status)
}

fn scan_row(surface: &Surface<BigInt>, bound: u64, gens: GeneratorSet, caps: &Caps) -> Value {
    let prime = class_number(surface, GeneratorSet::GammaPrime, bound, caps);
    let poly = class_number(surface, GeneratorSet::GammaPoly, bound, caps);
    let listed = match gens {
        GeneratorSet::GammaPrime => &prime,
        GeneratorSet::GammaPoly => &poly,
    };
    json!({
        "k": surface_params(surface),
        "h_star_gamma_poly": poly.class_number_star,
        "h_star_gamma_prime": prime.class_number_star,
        "exceptional": prime.exceptional.len(),
        "caps_hit": prime.caps_hit || poly.caps_hit,
        "representatives": listed.representatives.iter().map(|(p, _)| output::point(p)).collect::<Vec<_>>(),
    })
}

pub fn scan(
    args: &SurfaceArgs,
    k_range: Option<&str>,
    bound: u64,
    gens: Gens,
    caps: &CapArgs,
    format: Format,
    cache_path: Option<&Path>,
) -> Result<Status, CliError> {
    let gens = generator_set(gens);
    let surfaces: Vec<Surface<BigInt>> = match (args.kind, k_range) {
        (SurfaceType::Markoff, Some(range)) => {
            if args.complex {
                return Err(input("surface", "scan needs integer traces"));
            }
            let (a, b) = parse_range(range)?;
            (a..=b).map(|k| Surface::markoff(BigInt::from(k))).collect()
        }
        (SurfaceType::Cubic, Some(_)) => return Err(input("k range", "type 04 takes --k k1,k2,k3,k4")),
        (_, None) => vec![exact_surface(args)?],
    };
    let caps = Caps::new(caps.cap_height.unwrap_or(bound), caps.cap_count);
    let kind = match args.kind {
        SurfaceType::Markoff => markoff_core::SurfaceKind::Markoff11,
        SurfaceType::Cubic => markoff_core::SurfaceKind::Cubic04,
    };
    let key = |s: &Surface<BigInt>| {
        cache::key(
            &kind.to_string(),
            &surface_params(s).to_string(),
            gens.name(),
            bound,
            caps.height,
            caps.count,
        )
    };

    let mut cache = cache_path.map(Cache::open).transpose()?;
    let cached: Vec<Option<Value>> = surfaces
        .iter()
        .map(|s| cache.as_ref().and_then(|c| c.get(&key(s)).cloned()))
        .collect();
    let rows: Vec<Value> = surfaces
        .par_iter()
        .zip(cached.into_par_iter())
        .map(|(s, hit)| hit.unwrap_or_else(|| scan_row(s, bound, gens, &caps)))
        .collect();
    if let Some(c) = cache.as_mut() {
        for (s, row) in surfaces.iter().zip(&rows) {
            c.insert(key(s), row.clone());
        }
        c.save()?;
    }

    let caps_hit = rows.iter().any(|r| r["caps_hit"] == Value::Bool(true));
    let header = [
        "k",
        "h_star_gamma_poly",
        "h_star_gamma_prime",
        "exceptional",
        "caps_hit",
    ];
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| header.iter().map(|h| cell(&r[*h])).collect())
        .collect();
    let doc = json!({
        "surface": kind.to_string(),
        "generators": gens.name(),
        "box": bound,
        "rows": rows,
    });
    emit(format, &doc, &header, &table)?;
    Ok(if caps_hit { Status::CapsHit } else { Status::Ok })
}

pub fn verify(seed: u64, trials: usize, format: Format, fault: bool) -> Result<Status, CliError> {
    let results = suites::run(seed, trials, fault);
    let ok = results.iter().all(suites::SuiteResult::ok);
    let doc = json!({"seed": seed, "trials": trials, "ok": ok, "suites": results});
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|r| vec![r.name.to_string(), r.passed.to_string(), r.total.to_string()])
        .collect();
    emit(format, &doc, &["suite", "passed", "total"], &rows)?;
    let failed = results.iter().filter(|r| !r.ok()).count();
    if failed == 0 {
        Ok(Status::Ok)
    } else {
        Err(CliError::SuitesFailed {
            failed,
            total: results.len(),
        })
    }
}

fn affine(b: &BigInt, d: &BigInt) -> String {
    let t = match d.to_string().as_str() {
        "0" => return b.to_string(),
        "1" => "t".to_string(),
        "-1" => "-t".to_string(),
        other => format!("{other}t"),
    };
    if Zero::is_zero(b) {
        t
    } else if b.is_negative() {
        format!("{t} - {}", -b)
    } else {
        format!("{t} + {b}")
    }
}

fn line_json(l: &ParabolicLine) -> Value {
    let formula = format!(
        "({}, {}, {})",
        affine(&l.base.x, &l.direction.x),
        affine(&l.base.y, &l.direction.y),
        affine(&l.base.z, &l.direction.z)
    );
    json!({
        "axis": l.axis.letter().to_string(),
        "value": output::big(&l.value),
        "base": output::point(&l.base),
        "direction": output::point(&l.direction),
        "integral": l.integral,
        "line": formula,
    })
}

pub fn lines(k: &str, format: Format) -> Result<Status, CliError> {
    let k = parse_int("k", k)?;
    let lines = parabolic_lines_11(&k);
    let note = lines.is_empty().then_some(
        "k - 2 is not a perfect square: no integral lines; complex lines with x = +-2 exist with s = sqrt(k - 2)",
    );
    let docs: Vec<Value> = lines.iter().map(line_json).collect();
    let doc = json!({"k": output::big(&k), "lines": docs, "note": note});
    let header = ["axis", "value", "line", "integral"];
    let rows: Vec<Vec<String>> = docs
        .iter()
        .map(|d| header.iter().map(|h| cell(&d[*h])).collect())
        .collect();
    emit(format, &doc, &header, &rows)?;
    Ok(Status::Ok)
}

pub fn orbit(args: &SurfaceArgs, point: &str, gens: Gens, caps: &CapArgs, format: Format) -> Result<Status, CliError> {
    let s = exact_surface(args)?;
    let p = exact_point_on(&s, point)?;
    let gens = generator_set(gens);
    let caps = Caps::new(caps.cap_height.unwrap_or(1000), caps.cap_count);
    let o = orbit_bfs(&s, gens, &p, &caps);
    let mut docs = Vec::with_capacity(o.len());
    let mut rows = Vec::with_capacity(o.len());
    for q in o.points() {
        let w = o.word(q).expect("visited point has a word");
        if apply_word(&s, &w, &p)? != *q {
            return Err(CliError::Certificate(q.to_string()));
        }
        rows.push(vec![q.to_string(), w.to_string()]);
        docs.push(json!({"point": output::point(q), "word": w.to_string()}));
    }
    let doc = json!({
        "surface": s.kind().to_string(),
        "k": surface_params(&s),
        "start": output::point(&p),
        "generators": gens.name(),
        "caps": {"height": caps.height, "count": caps.count},
        "caps_hit": o.caps_hit,
        "size": o.len(),
        "points": docs,
    });
    emit(format, &doc, &["point", "word"], &rows)?;
    Ok(if o.caps_hit { Status::CapsHit } else { Status::Ok })
}

pub fn equiv(
    args: &SurfaceArgs,
    point: &str,
    to: &str,
    gens: Gens,
    caps: &CapArgs,
    format: Format,
) -> Result<Status, CliError> {
    let s = exact_surface(args)?;
    let p = exact_point_on(&s, point)?;
    let q = exact_point_on(&s, to)?;
    let gens = generator_set(gens);
    let caps = Caps::new(caps.cap_height.unwrap_or(1000), caps.cap_count);
    let (result, word, caps_hit) = match equivalent(&s, gens, &p, &q, &caps) {
        Equivalence::Yes(w) => {
            if apply_word(&s, &w, &p)? != q {
                return Err(CliError::Certificate(format!("{p} -> {q}")));
            }
            ("yes", Some(w.to_string()), false)
        }
        Equivalence::NoWithinCaps { caps_hit } => ("no_within_caps", None, caps_hit),
    };
    let doc = json!({
        "surface": s.kind().to_string(),
        "k": surface_params(&s),
        "p": output::point(&p),
        "q": output::point(&q),
        "generators": gens.name(),
        "caps": {"height": caps.height, "count": caps.count},
        "result": result,
        "word": word,
        "caps_hit": caps_hit,
    });
    let row = vec![
        p.to_string(),
        q.to_string(),
        result.to_string(),
        word.clone().unwrap_or_default(),
        caps_hit.to_string(),
    ];
    emit(format, &doc, &["p", "q", "result", "word", "caps_hit"], &[row])?;
    Ok(if caps_hit { Status::CapsHit } else { Status::Ok })
}
