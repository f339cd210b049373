use std::str::FromStr;

use anyhow::Result;
use num_bigint::BigInt;
use num_complex::Complex64;
use serde_json::{json, Map, Value};
use superapollonian::gaussian::{GaussianInt, ProjectivePoint};
use superapollonian::geometry::{partition_elements, render_svg, Viewport};
use superapollonian::measure::experiments::{experiment_bounded_quadruples, experiment_random_points, FrequencyReport};
use superapollonian::measure::{density_grid, first_digit_distribution, predicted_frequencies};
use superapollonian::measure::regions::{region_measure_with, TOTAL_MEASURE};
use superapollonian::planar::{expand_exact, expand_float, ExpansionResult, RegionLabel, Side};
use superapollonian::quadruple::{t_d_reduce, t_i_reduce, t_l_reduce, t_s_reduce, Quad};
use superapollonian::real_line::{
    euclid_reduce, expand_rational, mediant_convergents, romik_euclid, word_string, RatPair,
};
use superapollonian::geometry::fmt12;

use crate::output::{csv_text, emit, int, json_text, num};
use crate::{Command, DensityArgs, ExpandArgs, Format, GcdArgs, GcdFormat, MeasureArgs, RealArgs, ReduceArgs, ReduceKind, RenderArgs, StatsCommand};

/// Bad command-line values that clap cannot catch; exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).or_else(|_| usage(format!("not an integer: {s:?}")))
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::A => "A",
        Side::B => "B",
    }
}

pub fn run(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Expand(a) => expand(a),
        Command::Reduce(a) => reduce(a),
        Command::Stats { which } => stats(which),
        Command::Render(a) => render(a),
        Command::Density(a) => density(a),
        Command::Measure(a) => measure(a),
        Command::Gcd(a) => gcd(a),
        Command::Real(a) => real(a),
    }
}

fn expansion_json(r: &ExpansionResult) -> Value {
    json!({
        "word": r.word.to_string(),
        "length": r.word.len(),
        "terminal": r.terminal.map(|t| t.label()),
        "truncated": r.truncated,
        "boundary_step": r.boundary_step,
    })
}

fn expand(a: &ExpandArgs) -> Result<()> {
    let side: Side = a.side.into();
    let (config, result) = match (&a.rational, &a.point) {
        (Some(pq), _) => {
            let p = GaussianInt::from_str(&pq[0])?;
            let q = GaussianInt::from_str(&pq[1])?;
            let z = ProjectivePoint::new(p, q)?;
            let cap = a.steps.unwrap_or(1_000_000);
            let config = json!({"command": "expand", "rational": [pq[0], pq[1]], "point": z.to_string(), "side": side_name(side), "max_steps": cap});
            (config, expand_exact(side, &z, cap)?)
        }
        (None, Some(xy)) => {
            let steps = a.steps.unwrap_or(superapollonian::planar::DEFAULT_FLOAT_STEPS);
            let config = json!({"command": "expand", "point": [num(xy[0]), num(xy[1])], "side": side_name(side), "steps": steps, "eps": a.eps});
            (config, expand_float(side, Complex64::new(xy[0], xy[1]), a.eps, steps))
        }
        (None, None) => return usage("give --rational P Q or --point X Y"),
    };
    let mut out = expansion_json(&result);
    out["config"] = config;
    emit(&json_text(out), None)
}

fn reduce(a: &ReduceArgs) -> Result<()> {
    let v: Vec<BigInt> = a.quadruple.iter().map(|s| parse_int(s)).collect::<Result<_>>()?;
    let q: Quad = [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()];
    let (name, mut out) = match a.kind {
        ReduceKind::Lorentz => ("lorentz", trace_json(t_l_reduce(&q)?.to_json(), None)),
        ReduceKind::DescartesSwap => ("descartes-swap", trace_json(t_s_reduce(&q)?.to_json(), None)),
        ReduceKind::DescartesInvert => ("descartes-invert", trace_json(t_i_reduce(&q)?.to_json(), None)),
        ReduceKind::Height => {
            let t = t_d_reduce(&q)?;
            let len = t.len();
            ("height", trace_json(t.to_json(), Some(len)))
        }
    };
    out["config"] = json!({"command": "reduce", "kind": name, "quadruple": q.iter().map(int).collect::<Vec<_>>()});
    emit(&json_text(out), None)
}

/// Adds `length` and flattens the word to one string.
fn trace_json(mut v: Value, path_length: Option<usize>) -> Value {
    let tokens: Vec<String> = v["word"].as_array().map(|w| w.iter().filter_map(|t| t.as_str().map(String::from)).collect()).unwrap_or_default();
    v["length"] = json!(tokens.len());
    v["word"] = json!(tokens.join(" "));
    if let Some(n) = path_length {
        v["path_length"] = json!(n);
    }
    v
}

fn report_output(config: Value, report: &FrequencyReport, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(json_text(json!({"config": config, "report": report}))),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .observed
                .iter()
                .map(|(k, v)| {
                    vec![
                        k.clone(),
                        fmt12(*v),
                        report.predicted.get(k).map(|p| fmt12(*p)).unwrap_or_default(),
                        report.basis.get(k).cloned().unwrap_or_default(),
                    ]
                })
                .collect();
            csv_text(&config, &["key", "observed", "predicted", "basis"], &rows)
        }
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
    }
}

fn stats(which: &StatsCommand) -> Result<()> {
    match which {
        StatsCommand::Quadruples { max_a, format, out } => {
            if *max_a < 1 {
                return usage("--max-a must be at least 1");
            }
            let report = experiment_bounded_quadruples(*max_a)?;
            let config = json!({"command": "stats quadruples", "max_a": max_a, "format": format_name(*format)});
            emit(&report_output(config, &report, *format)?, out.as_deref())
        }
        StatsCommand::Random { count, steps, seed, side, format, out } => {
            let side: Side = (*side).into();
            let report = experiment_random_points(side, *count, *steps, *seed)?;
            let config = json!({"command": "stats random", "count": count, "steps": steps, "seed": seed, "side": side_name(side), "format": format_name(*format)});
            emit(&report_output(config, &report, *format)?, out.as_deref())
        }
        StatsCommand::Predict { format } => {
            let mut values = predicted_frequencies();
            let (inv, swap) = first_digit_distribution();
            values.insert("first_inversion".into(), inv);
            values.insert("first_swap".into(), swap);
            let config = json!({"command": "stats predict", "format": format_name(*format)});
            match format {
                Format::Json => {
                    let m: Map<String, Value> = values.iter().map(|(k, v)| (k.clone(), num(*v))).collect();
                    emit(&json_text(json!({"config": config, "status": "conjectural", "predicted": m})), None)
                }
                Format::Csv => {
                    let rows: Vec<Vec<String>> = values.iter().map(|(k, v)| vec![k.clone(), fmt12(*v)]).collect();
                    emit(&csv_text(&config, &["key", "predicted"], &rows)?, None)
                }
            }
        }
    }
}

fn render(a: &RenderArgs) -> Result<()> {
    let side: Side = a.side.into();
    let vp = Viewport::new(a.clip[0], a.clip[1], a.clip[2], a.clip[3])?;
    if !(a.pixels > 0.0) {
        return usage("--pixels must be positive");
    }
    let elements = partition_elements(side, a.depth, &vp)?;
    let svg = render_svg(&elements, &vp, a.pixels);
    let config = json!({"command": "render", "side": side_name(side), "depth": a.depth, "clip": a.clip.iter().map(|x| num(*x)).collect::<Vec<_>>(), "pixels": num(a.pixels), "elements": elements.len()});
    // the config goes in a comment right after the opening tag
    let comment = format!("<!-- config: {} -->\n", serde_json::to_string(&config)?);
    let text = match svg.find('\n') {
        Some(k) => format!("{}\n{}{}", &svg[..k], comment, &svg[k + 1..]),
        None => format!("{svg}\n{comment}"),
    };
    emit(&text, a.out.as_deref())
}

fn density(a: &DensityArgs) -> Result<()> {
    let side: Side = a.side.into();
    let (nx, ny) = (a.grid[0], a.grid[1]);
    if nx == 0 || ny == 0 {
        return usage("--grid needs positive sizes");
    }
    let vp = Viewport::new(a.clip[0], a.clip[1], a.clip[2], a.clip[3])?;
    let grid = density_grid(side, (vp.x0, vp.x1), (vp.y0, vp.y1), nx, ny);
    let rows: Vec<Vec<String>> = grid.iter().map(|(x, y, f)| vec![fmt12(*x), fmt12(*y), fmt12(*f)]).collect();
    let config = json!({"command": "density", "side": side_name(side), "grid": [nx, ny], "clip": a.clip.iter().map(|x| num(*x)).collect::<Vec<_>>()});
    let f_name = match side {
        Side::A => "f_A",
        Side::B => "f_B",
    };
    emit(&csv_text(&config, &["x", "y", f_name], &rows)?, a.out.as_deref())
}

fn measure(a: &MeasureArgs) -> Result<()> {
    let side: Side = a.side.into();
    let mut regions = Vec::new();
    let mut total = 0.0;
    for label in RegionLabel::all(side) {
        let r = region_measure_with(label, a.tol)?;
        total += r.value;
        regions.push(json!({"region": label.name(), "measure": num(r.value), "error": r.error}));
    }
    let out = json!({
        "config": {"command": "measure", "side": side_name(side), "tol": a.tol},
        "regions": regions,
        "total": num(total),
        "expected_total": num(TOTAL_MEASURE),
    });
    emit(&json_text(out), None)
}

fn pair_json(p: &BigInt, q: &BigInt) -> Value {
    json!([int(p), int(q)])
}

fn gcd(a: &GcdArgs) -> Result<()> {
    let (p, q) = (parse_int(&a.p)?, parse_int(&a.q)?);
    let ours = euclid_reduce(p.clone(), q.clone())?;
    let romik = romik_euclid(p.clone(), q.clone()).ok();
    let config = json!({"command": "gcd", "p": int(&p), "q": int(&q)});
    let ours_pairs = ours.pairs();
    match a.format {
        GcdFormat::Json => {
            let out = json!({
                "config": config,
                "reflective": {
                    "trace": ours_pairs.iter().map(|(x, y)| pair_json(x, y)).collect::<Vec<_>>(),
                    "letters": ours.steps.iter().map(|s| s.0.to_string()).collect::<String>(),
                    "steps": ours.steps.len(),
                    "gcd": int(&ours.gcd),
                    "bezout": [int(&ours.bezout.0), int(&ours.bezout.1)],
                },
                "romik": romik.as_ref().map(|t| json!({
                    "trace": t.iter().map(|(x, y)| pair_json(x, y)).collect::<Vec<_>>(),
                    "steps": t.len() - 1,
                })),
            });
            emit(&json_text(out), None)
        }
        GcdFormat::Jsonl => {
            let mut text = serde_json::to_string(&json!({"config": config}))? + "\n";
            for (k, (x, y)) in ours_pairs.iter().enumerate() {
                let letter = k.checked_sub(1).map(|i| ours.steps[i].0.to_string());
                text += &serde_json::to_string(&json!({"algorithm": "reflective", "step": k, "letter": letter, "p": int(x), "q": int(y)}))?;
                text.push('\n');
            }
            for (k, (x, y)) in romik.iter().flatten().enumerate() {
                text += &serde_json::to_string(&json!({"algorithm": "romik", "step": k, "p": int(x), "q": int(y)}))?;
                text.push('\n');
            }
            emit(&text, None)
        }
        GcdFormat::Csv => {
            let romik = romik.unwrap_or_default();
            let n = ours_pairs.len().max(romik.len());
            let cell = |v: Option<&(BigInt, BigInt)>, first: bool| {
                v.map(|(x, y)| if first { x.to_string() } else { y.to_string() }).unwrap_or_default()
            };
            let rows: Vec<Vec<String>> = (0..n)
                .map(|k| {
                    vec![
                        k.to_string(),
                        cell(ours_pairs.get(k), true),
                        cell(ours_pairs.get(k), false),
                        cell(romik.get(k), true),
                        cell(romik.get(k), false),
                    ]
                })
                .collect();
            emit(&csv_text(&config, &["step", "reflective_p", "reflective_q", "romik_p", "romik_q"], &rows)?, None)
        }
    }
}

/// Decimal strings and fractions become exact rationals.
fn parse_real(s: &str) -> Result<RatPair> {
    if let Some((p, q)) = s.split_once('/') {
        return Ok(RatPair::new(parse_int(p.trim())?, parse_int(q.trim())?)?);
    }
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() || !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return usage(format!("not a decimal or fraction: {s:?}"));
    }
    let digits = format!("{whole}{frac}");
    let mut p = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })?;
    if neg {
        p = -p;
    }
    Ok(RatPair::new(p, BigInt::from(10u32).pow(frac.len() as u32))?)
}

fn real(a: &RealArgs) -> Result<()> {
    let x = parse_real(&a.x)?;
    let (mut word, end) = expand_rational(&x);
    let finished = a.steps.is_none_or(|n| word.len() <= n);
    if let Some(n) = a.steps {
        word.truncate(n);
    }
    let triples = mediant_convergents(&word, x.p < BigInt::from(0))?;
    let out = json!({
        "config": {"command": "real", "x": a.x, "steps": a.steps},
        "x": x.to_string(),
        "word": word_string(&word),
        "length": word.len(),
        "terminal": if finished { Value::String(end.to_string()) } else { Value::Null },
        "convergents": triples.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    });
    emit(&json_text(out), None)
}
