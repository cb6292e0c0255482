//! Plain-text field files.
//!
//! ```text
//! # comment
//! hamiltonian: true
//! chart: lower
//! component 3 symbolic
//! component 2:
//! p[0,1] = 2
//! p[-1,2] = 1+1*i
//! ```
//!
//! Assignment lines belong to the nearest preceding `component r:` header.
//! `hamiltonian` defaults to `true` and `chart` to `lower`. The parsed spec
//! is passed through [`validate_assignment`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::arith::GaussRat;
use crate::constraints::{validate_assignment, Chart, Component, FieldSpec};
use crate::error::{Error, FieldParseError, Result};
use crate::poly::CoeffVar;

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    FieldParseError {
        line,
        column,
        message: message.into(),
    }
    .into()
}

/// 1-based column of `part` inside `line`; `part` must be a subslice.
fn col(line: &str, part: &str) -> usize {
    part.as_ptr() as usize - line.as_ptr() as usize + 1
}

pub fn parse_field(text: &str) -> Result<FieldSpec> {
    let mut hamiltonian: Option<bool> = None;
    let mut chart: Option<Chart> = None;
    let mut components: BTreeMap<u32, Component> = BTreeMap::new();
    let mut current: Option<u32> = None;

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let line = content.trim();
        if line.is_empty() {
            continue;
        }
        let at = col(raw, line);

        if let Some(rest) = line.strip_prefix("component") {
            let body = rest.trim();
            let body_col = col(raw, body);
            let (num, kind) = if let Some(n) = body.strip_suffix("symbolic") {
                (n.trim(), "symbolic")
            } else if let Some(n) = body.strip_suffix(':') {
                (n.trim(), "assigned")
            } else {
                return Err(err(
                    ln,
                    body_col,
                    "expected `component <r>:` or `component <r> symbolic`",
                ));
            };
            let r: u32 = num
                .parse()
                .map_err(|_| err(ln, body_col, format!("invalid component degree {num:?}")))?;
            if r < 2 {
                return Err(err(
                    ln,
                    body_col,
                    format!("component degree must be at least 2, got {r}"),
                ));
            }
            if components.contains_key(&r) {
                return Err(err(ln, at, format!("component {r} declared twice")));
            }
            if kind == "symbolic" {
                components.insert(r, Component::Symbolic);
                current = None;
            } else {
                components.insert(r, Component::Assigned(BTreeMap::new()));
                current = Some(r);
            }
            continue;
        }

        if let Some((lhs, rhs)) = line.split_once('=') {
            let lhs_t = lhs.trim();
            let rhs_t = rhs.trim();
            let Some(r) = current else {
                return Err(err(ln, at, "assignment outside a `component <r>:` block"));
            };
            let var: CoeffVar = lhs_t
                .parse()
                .map_err(|e| err(ln, col(raw, lhs_t), format!("{e}")))?;
            if rhs_t.is_empty() {
                return Err(err(ln, col(raw, rhs) + rhs.len(), "missing value"));
            }
            let value: GaussRat = rhs_t
                .parse()
                .map_err(|e| err(ln, col(raw, rhs_t), format!("{e}")))?;
            let Some(Component::Assigned(m)) = components.get_mut(&r) else {
                unreachable!("current block is always an assigned component")
            };
            if m.contains_key(&var) {
                return Err(err(ln, col(raw, lhs_t), format!("{var} assigned twice")));
            }
            m.insert(var, value);
            continue;
        }

        if let Some((key, value)) = line.split_once(':') {
            let key_t = key.trim();
            let value_t = value.trim();
            let vcol = if value_t.is_empty() {
                col(raw, value)
            } else {
                col(raw, value_t)
            };
            match key_t {
                "hamiltonian" => {
                    if hamiltonian.is_some() {
                        return Err(err(ln, at, "hamiltonian declared twice"));
                    }
                    hamiltonian = Some(match value_t {
                        "true" => true,
                        "false" => false,
                        _ => {
                            return Err(err(
                                ln,
                                vcol,
                                format!("expected true or false, got {value_t:?}"),
                            ))
                        }
                    });
                }
                "chart" => {
                    if chart.is_some() {
                        return Err(err(ln, at, "chart declared twice"));
                    }
                    chart = Some(value_t.parse().map_err(|e: String| err(ln, vcol, e))?);
                }
                _ => return Err(err(ln, at, format!("unknown key {key_t:?}"))),
            }
            continue;
        }

        return Err(err(ln, at, format!("cannot parse line {line:?}")));
    }

    let spec = FieldSpec {
        hamiltonian: hamiltonian.unwrap_or(true),
        chart: chart.unwrap_or_default(),
        components,
    };
    Ok(validate_assignment(&spec)?)
}

/// Canonical text form; `parse_field(&print_field(s)) == s` for validated specs.
pub fn print_field(spec: &FieldSpec) -> String {
    let mut out = String::new();
    writeln!(out, "hamiltonian: {}", spec.hamiltonian).unwrap();
    writeln!(out, "chart: {}", spec.chart).unwrap();
    for (r, c) in &spec.components {
        match c {
            Component::Symbolic => writeln!(out, "component {r} symbolic").unwrap(),
            Component::Assigned(m) => {
                writeln!(out, "component {r}:").unwrap();
                for (v, z) in m {
                    writeln!(out, "{v} = {z}").unwrap();
                }
            }
        }
    }
    out
}
