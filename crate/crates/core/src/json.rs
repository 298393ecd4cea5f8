//! JSON encodings of algebras, points, families, groups and bouquets.
//!
//! Objects are `serde_json` maps, which keep keys sorted, and rationals are
//! strings `"p/q"` (`"p"` when `q = 1`), so encodings are byte-stable.
//! Decoders accept rationals either as such strings or as JSON integers.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::algebraicity::HullResult;
use crate::bouquet::{
    Bouquet, ClosedSubset, Component, ComponentKind, GluingPattern, Locus, PointMap, ValidationReport,
};
use crate::error::{Error, Result};
use crate::families::{InvariantValue, SemicontinuityReport, SubalgebraFamily};
use crate::grassmann::{LimitPoint, PolynomialPath, SubspacePoint};
use crate::integration::{GroupCheckReport, GroupFactor, ParametrizedGroup};
use crate::lie::{BracketEntry, LeviDecomposition, LieAlgebra, Subalgebra};
use crate::linalg::{Matrix, Poly};
use crate::rational::{self, Rational};

/// Pretty-printed with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn rational(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

pub fn rows(rows: &[Vec<Rational>]) -> Value {
    Value::Array(rows.iter().map(|r| vector(r)).collect())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::input(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::input(format!("{what} must be an array")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::input(format!("{what} must be a string")))
}

fn index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|u| u as usize).ok_or_else(|| Error::input(format!("{what} must be a non-negative integer")))
}

pub fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) => n
            .as_i64()
            .map(rational::int)
            .ok_or_else(|| Error::input(format!("{n} is not an integer; write rationals as \"p/q\""))),
        other => Err(Error::input(format!("expected a rational, got {other}"))),
    }
}

pub fn parse_vector(v: &Value) -> Result<Vec<Rational>> {
    array(v, "vector")?.iter().map(parse_rational).collect()
}

pub fn parse_rows(v: &Value) -> Result<Vec<Vec<Rational>>> {
    array(v, "row list")?.iter().map(parse_vector).collect()
}

pub fn parse_matrix(v: &Value) -> Result<Matrix> {
    let rows = parse_rows(v)?;
    if rows.is_empty() {
        return Err(Error::input("empty matrix"));
    }
    Matrix::from_rows(rows)
}

pub fn algebra(l: &LieAlgebra) -> Value {
    let brackets: Vec<Value> = l
        .bracket_entries()
        .into_iter()
        .map(|(i, j, terms)| {
            let terms: Vec<Value> = terms.iter().map(|(k, c)| json!([k, rational(c)])).collect();
            json!([i, j, terms])
        })
        .collect();
    let mut out = Map::new();
    out.insert("name".into(), json!(l.name()));
    out.insert("dim".into(), json!(l.dim()));
    out.insert("basis".into(), json!(l.basis_names()));
    out.insert("brackets".into(), Value::Array(brackets));
    if let Some(ms) = l.basis_matrices() {
        out.insert("matrices".into(), Value::Array(ms.iter().map(matrix).collect()));
    }
    Value::Object(out)
}

pub fn parse_algebra(v: &Value) -> Result<LieAlgebra> {
    let name = string(field(v, "name")?, "name")?;
    let basis: Vec<String> = array(field(v, "basis")?, "basis")?
        .iter()
        .map(|b| string(b, "basis name").map(str::to_string))
        .collect::<Result<_>>()?;
    let dim = index(field(v, "dim")?, "dim")?;
    if dim != basis.len() {
        return Err(Error::DimensionMismatch { expected: dim, got: basis.len() });
    }
    let mut brackets: Vec<BracketEntry> = Vec::new();
    for entry in array(field(v, "brackets")?, "brackets")? {
        let parts = array(entry, "bracket entry")?;
        if parts.len() != 3 {
            return Err(Error::input("bracket entries are [i, j, [[k, c], ...]]"));
        }
        let terms = array(&parts[2], "bracket terms")?
            .iter()
            .map(|t| {
                let kc = array(t, "bracket term")?;
                if kc.len() != 2 {
                    return Err(Error::input("bracket terms are [k, c]"));
                }
                Ok((index(&kc[0], "k")?, parse_rational(&kc[1])?))
            })
            .collect::<Result<Vec<_>>>()?;
        brackets.push((index(&parts[0], "i")?, index(&parts[1], "j")?, terms));
    }
    let matrices = match v.get("matrices") {
        None | Some(Value::Null) => None,
        Some(ms) => Some(array(ms, "matrices")?.iter().map(parse_matrix).collect::<Result<Vec<_>>>()?),
    };
    LieAlgebra::new(name, basis, brackets, matrices)
}

/// `{"rows": [...]}` in the algebra's coordinates or `{"matrices": [...]}`
/// in its realization.
pub fn parse_span(l: &LieAlgebra, v: &Value) -> Result<Vec<Vec<Rational>>> {
    if let Some(r) = v.get("rows") {
        let rows = parse_rows(r)?;
        for row in &rows {
            if row.len() != l.dim() {
                return Err(Error::DimensionMismatch { expected: l.dim(), got: row.len() });
            }
        }
        return Ok(rows);
    }
    if let Some(ms) = v.get("matrices") {
        return array(ms, "matrices")?
            .iter()
            .map(|m| {
                let m = parse_matrix(m)?;
                l.require_realization()?;
                l.coordinates_of(&m).ok_or_else(|| Error::input(format!("matrix {m} is not in {}", l.name())))
            })
            .collect();
    }
    Err(Error::input("a span needs \"rows\" or \"matrices\""))
}

pub fn point(p: &SubspacePoint) -> Value {
    json!({ "ambient_dim": p.ambient_dim(), "k": p.k(), "basis": rows(&p.rows()) })
}

pub fn parse_point(v: &Value) -> Result<SubspacePoint> {
    let n = index(field(v, "ambient_dim")?, "ambient_dim")?;
    let k = index(field(v, "k")?, "k")?;
    let basis = parse_rows(field(v, "basis")?)?;
    if basis.len() != k {
        return Err(Error::DimensionMismatch { expected: k, got: basis.len() });
    }
    SubspacePoint::from_rows(&basis, n)
}

pub fn subalgebra(h: &Subalgebra) -> Value {
    json!({ "dim": h.dim(), "basis": rows(&h.basis_rows()) })
}

pub fn path(p: &PolynomialPath) -> Value {
    let entries: Vec<Value> = p.entries().iter().map(|e| vector(e.coeffs())).collect();
    json!({ "parameter": p.parameter(), "rows": p.rows(), "cols": p.cols(), "entries": entries })
}

/// Either a path `{"parameter", "rows", "cols", "entries"}` with ascending
/// coefficient lists per row-major entry, or
/// `{"adjoint_orbit": {"rows": [...], "nilpotent": matrix}}`.
pub fn parse_path(l: &LieAlgebra, v: &Value) -> Result<PolynomialPath> {
    if let Some(orbit) = v.get("adjoint_orbit") {
        let rows = parse_rows(field(orbit, "rows")?)?;
        let nil = parse_matrix(field(orbit, "nilpotent")?)?;
        return PolynomialPath::adjoint_orbit(l, &rows, &nil);
    }
    let parameter = v.get("parameter").and_then(Value::as_str).unwrap_or("t");
    let r = index(field(v, "rows")?, "rows")?;
    let c = index(field(v, "cols")?, "cols")?;
    let entries = array(field(v, "entries")?, "entries")?
        .iter()
        .map(|e| parse_vector(e).map(Poly::new))
        .collect::<Result<Vec<_>>>()?;
    PolynomialPath::new(parameter, r, c, entries)
}

pub fn limit_point(at: &LimitPoint) -> Value {
    Value::String(at.to_string())
}

pub fn parse_limit_point(v: &Value) -> Result<LimitPoint> {
    match v {
        Value::String(s) => s.parse(),
        other => parse_rational(other).map(LimitPoint::Finite),
    }
}

pub fn family(f: &SubalgebraFamily) -> Value {
    json!({
        "path": path(f.path()),
        "samples": vector(f.samples()),
        "limits": f.limits().iter().map(limit_point).collect::<Vec<_>>(),
    })
}

pub fn parse_family(l: &Arc<LieAlgebra>, v: &Value) -> Result<SubalgebraFamily> {
    let p = parse_path(l, field(v, "path")?)?;
    let samples = parse_vector(field(v, "samples")?)?;
    let limits = match v.get("limits") {
        None => Vec::new(),
        Some(ls) => array(ls, "limits")?.iter().map(parse_limit_point).collect::<Result<_>>()?,
    };
    SubalgebraFamily::new(p, l.clone(), samples, limits)
}

pub fn invariant_value(v: &InvariantValue) -> Value {
    match v {
        InvariantValue::Int(n) => json!(n),
        InvariantValue::Class(c) => json!(c.label()),
    }
}

pub fn semicontinuity_report(r: &SemicontinuityReport) -> Value {
    let samples: Vec<Value> =
        r.sample_values.iter().map(|(t, v)| json!({ "t": rational(t), "value": invariant_value(v) })).collect();
    let limits: Vec<Value> =
        r.limit_values.iter().map(|(at, v)| json!({ "at": limit_point(at), "value": invariant_value(v) })).collect();
    json!({
        "invariant": r.invariant,
        "samples": samples,
        "limits": limits,
        "generic": invariant_value(&r.generic),
        "verdict": r.verdict,
    })
}

pub fn hull(r: &HullResult) -> Value {
    json!({
        "is_algebraic": r.is_algebraic,
        "hull_dim": r.hull.dim(),
        "hull": subalgebra(&r.hull),
        "witness": r.witness,
    })
}

pub fn levi(d: &LeviDecomposition) -> Value {
    json!({
        "class": d.class.label(),
        "radical": subalgebra(&d.radical),
        "complement": d.complement.as_ref().map(subalgebra),
        "triple": d.triple.as_ref().map(|t| rows(t)),
    })
}

pub fn group_factor(f: &GroupFactor) -> Value {
    let mut out = match f {
        GroupFactor::Unipotent { generator } => json!({ "generator": matrix(generator) }),
        GroupFactor::Torus { weights, basis } => json!({ "weights": weights.weights(), "basis": matrix(basis) }),
        GroupFactor::Sl2 { e, h, f, h_basis, h_weights } => json!({
            "class": "A1",
            "e": matrix(e),
            "h": matrix(h),
            "f": matrix(f),
            "h_basis": matrix(h_basis),
            "h_weights": h_weights,
        }),
        GroupFactor::SpecialLinear { size } => json!({ "size": size }),
    };
    out["kind"] = json!(f.kind());
    out["arity"] = json!(f.arity());
    out
}

pub fn group(g: &ParametrizedGroup) -> Value {
    json!({
        "size": g.size(),
        "arity": g.arity(),
        "factors": g.factors().iter().map(group_factor).collect::<Vec<_>>(),
    })
}

pub fn group_check(r: &GroupCheckReport) -> Value {
    json!({
        "trials": r.trials,
        "seed": r.seed,
        "checks": r.checks,
        "passed": r.passed,
        "counterexample": r.counterexample,
    })
}

fn locus(l: &Locus) -> Value {
    match l {
        Locus::Nilpotent { order } => json!({ "type": "nilpotent", "order": order }),
        Locus::SemisimpleClosure { eigenvalues } => {
            json!({ "type": "semisimple-closure", "eigenvalues": vector(eigenvalues) })
        }
        Locus::Points(ps) => json!({ "type": "points", "points": ps.iter().map(point).collect::<Vec<_>>() }),
    }
}

fn parse_points(v: &Value) -> Result<BTreeSet<SubspacePoint>> {
    array(v, "points")?.iter().map(parse_point).collect()
}

fn parse_locus(v: &Value) -> Result<Locus> {
    match string(field(v, "type")?, "locus type")? {
        "nilpotent" => Ok(Locus::Nilpotent { order: index(field(v, "order")?, "order")? }),
        "semisimple-closure" => Ok(Locus::SemisimpleClosure { eigenvalues: parse_vector(field(v, "eigenvalues")?)? }),
        "points" => Ok(Locus::Points(parse_points(field(v, "points")?)?)),
        other => Err(Error::input(format!("unknown locus type {other:?}"))),
    }
}

fn parse_kind(s: &str) -> Result<ComponentKind> {
    [ComponentKind::NilpotentOrbitClosure, ComponentKind::SemisimpleOrbitClosure, ComponentKind::ExplicitSubvariety]
        .into_iter()
        .find(|k| k.label() == s)
        .ok_or_else(|| Error::input(format!("unknown component kind {s:?}")))
}

pub fn component(c: &Component) -> Value {
    json!({
        "id": c.id,
        "kind": c.kind.label(),
        "representative": point(&c.representative),
        "signature": c.signature,
        "dim": c.dim,
        "locus": locus(&c.locus),
        "samples": c.samples.iter().map(point).collect::<Vec<_>>(),
    })
}

fn parse_component(v: &Value) -> Result<Component> {
    let mut c = Component::new(
        string(field(v, "id")?, "id")?,
        parse_kind(string(field(v, "kind")?, "kind")?)?,
        parse_point(field(v, "representative")?)?,
        string(field(v, "signature")?, "signature")?,
        index(field(v, "dim")?, "dim")?,
        parse_locus(field(v, "locus")?)?,
    );
    if let Some(samples) = v.get("samples") {
        for p in array(samples, "samples")? {
            c.add_sample(parse_point(p)?);
        }
    }
    Ok(c)
}

fn overlap_entry(x: &str, y: &str, subset: &ClosedSubset, map: &PointMap) -> Value {
    let subset = match subset {
        ClosedSubset::Whole => json!({ "type": "whole" }),
        ClosedSubset::Meet => json!({ "type": "meet" }),
        ClosedSubset::Points(ps) => json!({ "type": "points", "points": ps.iter().map(point).collect::<Vec<_>>() }),
    };
    let map = match map {
        PointMap::Identity => json!({ "type": "identity" }),
        PointMap::Table(t) => json!({
            "type": "table",
            "pairs": t.iter().map(|(a, b)| json!([point(a), point(b)])).collect::<Vec<_>>(),
        }),
    };
    json!({ "from": x, "to": y, "subset": subset, "map": map })
}

pub fn pattern(p: &GluingPattern) -> Value {
    json!({
        "ambient": algebra(p.ambient()),
        "components": p.components().map(component).collect::<Vec<_>>(),
        "overlaps": p.overlaps().map(|((x, y), o)| overlap_entry(x, y, &o.subset, &o.map)).collect::<Vec<_>>(),
    })
}

pub fn parse_pattern(v: &Value) -> Result<GluingPattern> {
    let ambient = Arc::new(parse_algebra(field(v, "ambient")?)?);
    let mut p = GluingPattern::new(ambient);
    for c in array(field(v, "components")?, "components")? {
        p.add_component(parse_component(c)?)?;
    }
    for o in array(field(v, "overlaps")?, "overlaps")? {
        let x = string(field(o, "from")?, "from")?;
        let y = string(field(o, "to")?, "to")?;
        let s = field(o, "subset")?;
        let subset = match string(field(s, "type")?, "subset type")? {
            "whole" => ClosedSubset::Whole,
            "meet" => ClosedSubset::Meet,
            "points" => ClosedSubset::Points(parse_points(field(s, "points")?)?),
            other => return Err(Error::input(format!("unknown subset type {other:?}"))),
        };
        let m = field(o, "map")?;
        let map = match string(field(m, "type")?, "map type")? {
            "identity" => PointMap::Identity,
            "table" => {
                let mut t = BTreeMap::new();
                for pair in array(field(m, "pairs")?, "pairs")? {
                    let ab = array(pair, "pair")?;
                    if ab.len() != 2 {
                        return Err(Error::input("table pairs are [point, image]"));
                    }
                    t.insert(parse_point(&ab[0])?, parse_point(&ab[1])?);
                }
                PointMap::Table(t)
            }
            other => return Err(Error::input(format!("unknown map type {other:?}"))),
        };
        p.set_overlap(x, y, subset, map)?;
    }
    Ok(p)
}

/// The pattern plus every class of registered points with more than one
/// member.
pub fn bouquet(b: &Bouquet) -> Value {
    let mut out = pattern(b.pattern());
    let classes: Vec<Value> = b
        .classes()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| Value::Array(c.iter().map(|(id, p)| json!({ "component": id, "point": point(p) })).collect()))
        .collect();
    out["registered"] = json!(b.registered().len());
    out["identifications"] = Value::Array(classes);
    out
}

/// Identifications are recomputed from the pattern.
pub fn parse_bouquet(v: &Value) -> Result<Bouquet> {
    Bouquet::new(parse_pattern(v)?)
}

pub fn validation_report(r: &ValidationReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "axiom": c.axiom.label(),
                "components": c.components,
                "points_checked": c.points_checked,
                "passed": c.passed(),
                "failure": c.failure,
            })
        })
        .collect();
    json!({
        "samples_per_overlap": r.samples_per_overlap,
        "seed": r.seed,
        "passed": r.passed(),
        "failures": r.failures().count(),
        "checks": checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bouquet::assemble_sl3_slice;
    use crate::lie::builtins::{self, sl};
    use crate::rational::{frac, int};

    #[test]
    fn rationals_are_canonical_strings() {
        assert_eq!(rational(&frac(4, -6)), json!("-2/3"));
        assert_eq!(rational(&int(5)), json!("5"));
        assert_eq!(parse_rational(&json!("6/4")).unwrap(), frac(3, 2));
        assert_eq!(parse_rational(&json!(-3)).unwrap(), int(-3));
        assert!(parse_rational(&json!(0.5)).is_err());
        assert!(parse_rational(&json!("1/0")).is_err());
    }

    #[test]
    fn algebras_round_trip() {
        for name in ["sl2", "sl3", "gl3"] {
            let l = builtins::by_name(name).unwrap();
            let v = algebra(&l);
            let back = parse_algebra(&v).unwrap();
            assert_eq!(algebra(&back), v);
            assert_eq!(back.dim(), l.dim());
        }
    }

    #[test]
    fn broken_algebras_are_rejected() {
        let mut v = algebra(&sl(2).unwrap());
        v["dim"] = json!(4);
        assert!(parse_algebra(&v).is_err());
        let mut v = algebra(&sl(2).unwrap());
        v["brackets"] = json!([[1, 0, [[0, "1"]]]]);
        assert!(matches!(parse_algebra(&v), Err(Error::InvalidStructure(_))));
    }

    #[test]
    fn keys_are_sorted() {
        let s = to_string(&point(&SubspacePoint::from_rows(&[vec![int(2), int(4)]], 2).unwrap()));
        let keys: Vec<usize> = ["ambient_dim", "basis", "k"].iter().map(|k| s.find(k).unwrap()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{s}");
        assert!(s.contains("\"1\"") && s.contains("\"2\""));
    }

    #[test]
    fn spans_from_matrices() {
        let l = sl(2).unwrap();
        let v = json!({ "matrices": [[["0", "1"], ["0", "0"]]] });
        let rows = parse_span(&l, &v).unwrap();
        assert_eq!(l.realize(&rows[0]), Matrix::unit(2, 0, 1));
        assert!(parse_span(&l, &json!({ "matrices": [[["1", "0"], ["0", "0"]]] })).is_err());
        assert!(parse_span(&l, &json!({ "rows": [["1", "0"]] })).is_err());
    }

    #[test]
    fn families_round_trip() {
        let l = sl(2).unwrap();
        let h = builtins::element(&l, &Matrix::diagonal(&[int(1), int(-1)])).unwrap();
        let e = builtins::element(&l, &Matrix::unit(2, 0, 1)).unwrap();
        let entries: Vec<Value> = (0..3).map(|i| json!([rational(&h[i]), rational(&(-&e[i] * int(2)))])).collect();
        let v = json!({ "path": { "rows": 1, "cols": 3, "entries": entries }, "samples": ["1", "2", 3], "limits": ["inf"] });
        let f = parse_family(&l, &v).unwrap();
        let again = family(&f);
        assert_eq!(family(&parse_family(&l, &again).unwrap()), again);
        assert_eq!(again["limits"], json!(["inf"]));
    }

    #[test]
    fn bouquets_round_trip() {
        let b = assemble_sl3_slice(1).unwrap();
        let v = bouquet(&b);
        let back = parse_bouquet(&v).unwrap();
        assert_eq!(bouquet(&back), v);
        assert_eq!(v["components"].as_array().unwrap().len(), 3);
    }
}
