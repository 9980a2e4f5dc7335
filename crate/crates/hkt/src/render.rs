//! Text and JSON renderings of a [`Report`]. Both are exact and both parse
//! back to the same `Report`.

use std::fmt::Write as _;

use hkt_core::geometry::Report;
use hkt_core::KForm;
use serde::{Deserialize, Serialize};

const FLAGS: [&str; 13] = [
    "hypercomplex",
    "abelian_hypercomplex",
    "hermitian",
    "kahler",
    "hyper_hermitian",
    "hkt",
    "strong",
    "weak",
    "balanced",
    "conformally_balanced",
    "hyper_kahler",
    "torsion_coclosed",
    "omega_power_closed",
];

/// Forms with their degrees, in rendering order.
const FORMS: [(&str, usize); 5] = [
    ("c", 3),
    ("dc", 4),
    ("theta", 1),
    ("dtheta", 2),
    ("dstar_c", 2),
];

pub fn flag(r: &Report, key: &str) -> Option<Option<bool>> {
    Some(match key {
        "hypercomplex" => r.hypercomplex,
        "abelian_hypercomplex" => r.abelian_hypercomplex,
        "hermitian" => r.hermitian,
        "kahler" => r.kahler,
        "hyper_hermitian" => r.hyper_hermitian,
        "hkt" => r.hkt,
        "strong" => r.strong,
        "weak" => r.weak,
        "balanced" => r.balanced,
        "conformally_balanced" => r.conformally_balanced,
        "hyper_kahler" => r.hyper_kahler,
        "torsion_coclosed" => r.torsion_coclosed,
        "omega_power_closed" => r.omega_power_closed,
        _ => return None,
    })
}

fn flag_mut<'a>(r: &'a mut Report, key: &str) -> Option<&'a mut Option<bool>> {
    Some(match key {
        "hypercomplex" => &mut r.hypercomplex,
        "abelian_hypercomplex" => &mut r.abelian_hypercomplex,
        "hermitian" => &mut r.hermitian,
        "kahler" => &mut r.kahler,
        "hyper_hermitian" => &mut r.hyper_hermitian,
        "hkt" => &mut r.hkt,
        "strong" => &mut r.strong,
        "weak" => &mut r.weak,
        "balanced" => &mut r.balanced,
        "conformally_balanced" => &mut r.conformally_balanced,
        "hyper_kahler" => &mut r.hyper_kahler,
        "torsion_coclosed" => &mut r.torsion_coclosed,
        "omega_power_closed" => &mut r.omega_power_closed,
        _ => return None,
    })
}

/// Form artifacts by key: `c`, `dc`, `theta`, `dtheta`, `dstar_c`,
/// `omega1` .. `omega3`.
pub fn form<'a>(r: &'a Report, key: &str) -> Option<&'a KForm> {
    match key {
        "c" => r.c.as_ref(),
        "dc" => r.dc.as_ref(),
        "theta" => r.theta.as_ref(),
        "dtheta" => r.dtheta.as_ref(),
        "dstar_c" => r.dstar_c.as_ref(),
        _ => {
            let a: usize = key.strip_prefix("omega")?.parse().ok()?;
            r.omega.get(a.checked_sub(1)?)
        }
    }
}

fn form_mut<'a>(r: &'a mut Report, key: &str) -> Option<&'a mut Option<KForm>> {
    Some(match key {
        "c" => &mut r.c,
        "dc" => &mut r.dc,
        "theta" => &mut r.theta,
        "dtheta" => &mut r.dtheta,
        "dstar_c" => &mut r.dstar_c,
        _ => return None,
    })
}

fn opt(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "n/a",
    }
}

pub fn to_text(name: &str, r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "name: {name}");
    let _ = writeln!(s, "dim: {}", r.dim);
    let ints: Vec<&str> = r.complex_integrable.iter().map(|b| opt(Some(*b))).collect();
    let _ = writeln!(s, "complex_integrable: [{}]", ints.join(", "));
    for key in FLAGS {
        let _ = writeln!(s, "{key}: {}", opt(flag(r, key).flatten()));
    }
    for (a, w) in r.omega.iter().enumerate() {
        let _ = writeln!(s, "omega{}: {w}", a + 1);
    }
    for (key, _) in FORMS {
        match form(r, key) {
            Some(f) => {
                let _ = writeln!(s, "{key}: {f}");
            }
            None => {
                let _ = writeln!(s, "{key}: n/a");
            }
        }
    }
    s
}

#[derive(Debug, thiserror::Error)]
#[error("report line {line}: {message}")]
pub struct ReportParseError {
    pub line: usize,
    pub message: String,
}

/// Inverse of [`to_text`]; returns the entry name and the report.
pub fn from_text(text: &str) -> Result<(String, Report), ReportParseError> {
    let mut r = Report::default();
    let mut name = String::new();
    for (ln, line) in text.lines().enumerate() {
        let err = |m: String| ReportParseError {
            line: ln + 1,
            message: m,
        };
        let Some((key, value)) = line.split_once(": ") else {
            return Err(err(format!("expected `key: value`, found {line:?}")));
        };
        let parse_bool = |v: &str| match v {
            "true" => Ok(Some(true)),
            "false" => Ok(Some(false)),
            "n/a" => Ok(None),
            _ => Err(err(format!("bad flag value {v:?}"))),
        };
        match key {
            "name" => name = value.to_string(),
            "dim" => {
                r.dim = value
                    .parse()
                    .map_err(|_| err(format!("bad dim {value:?}")))?
            }
            "complex_integrable" => {
                let inner = value
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| err("expected a bracketed list".into()))?;
                r.complex_integrable = inner
                    .split(", ")
                    .filter(|t| !t.is_empty())
                    .map(|t| parse_bool(t)?.ok_or_else(|| err("n/a in list".into())))
                    .collect::<Result<_, _>>()?;
            }
            k if k.starts_with("omega") && k != "omega_power_closed" => {
                r.omega
                    .push(KForm::parse(value, r.dim, 2).map_err(|e| err(e.to_string()))?);
            }
            k => {
                if let Some(slot) = flag_mut(&mut r, k) {
                    *slot = parse_bool(value)?;
                } else if let Some(&(_, degree)) = FORMS.iter().find(|(f, _)| *f == k) {
                    let v = if value == "n/a" {
                        None
                    } else {
                        Some(KForm::parse(value, r.dim, degree).map_err(|e| err(e.to_string()))?)
                    };
                    *form_mut(&mut r, k).expect("listed form") = v;
                } else {
                    return Err(err(format!("unknown key {k:?}")));
                }
            }
        }
    }
    Ok((name, r))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportRecord {
    name: String,
    dim: usize,
    complex_integrable: Vec<bool>,
    flags: serde_json::Map<String, serde_json::Value>,
    omega: Vec<String>,
    forms: serde_json::Map<String, serde_json::Value>,
}

pub fn to_json(name: &str, r: &Report) -> String {
    let flags = FLAGS
        .iter()
        .map(|k| {
            (
                k.to_string(),
                flag(r, k)
                    .flatten()
                    .map_or(serde_json::Value::Null, serde_json::Value::Bool),
            )
        })
        .collect();
    let forms = FORMS
        .iter()
        .map(|(k, _)| {
            let v = form(r, k).map_or(serde_json::Value::Null, |f| {
                serde_json::Value::String(f.to_string())
            });
            (k.to_string(), v)
        })
        .collect();
    let rec = ReportRecord {
        name: name.to_string(),
        dim: r.dim,
        complex_integrable: r.complex_integrable.clone(),
        flags,
        omega: r.omega.iter().map(ToString::to_string).collect(),
        forms,
    };
    let mut s = serde_json::to_string_pretty(&rec).expect("plain data");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<(String, Report), String> {
    let rec: ReportRecord = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let mut r = Report {
        dim: rec.dim,
        complex_integrable: rec.complex_integrable,
        ..Report::default()
    };
    for (k, v) in rec.flags {
        let slot = flag_mut(&mut r, &k).ok_or_else(|| format!("unknown flag {k:?}"))?;
        *slot = match v {
            serde_json::Value::Null => None,
            serde_json::Value::Bool(b) => Some(b),
            other => return Err(format!("flag {k:?}: expected bool or null, found {other}")),
        };
    }
    r.omega = rec
        .omega
        .iter()
        .map(|w| KForm::parse(w, rec.dim, 2).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    for (k, v) in rec.forms {
        let &(_, degree) = FORMS
            .iter()
            .find(|(f, _)| *f == k)
            .ok_or_else(|| format!("unknown form {k:?}"))?;
        let parsed = match v {
            serde_json::Value::Null => None,
            serde_json::Value::String(s) => {
                Some(KForm::parse(&s, rec.dim, degree).map_err(|e| e.to_string())?)
            }
            other => {
                return Err(format!(
                    "form {k:?}: expected string or null, found {other}"
                ))
            }
        };
        *form_mut(&mut r, &k).expect("listed form") = parsed;
    }
    Ok((rec.name, r))
}
