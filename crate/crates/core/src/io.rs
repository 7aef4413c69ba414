//! JSON input formats and table output.
//!
//! Integers may be written as JSON numbers or as decimal strings; rationals
//! additionally as `"p/q"` strings. Error messages carry the JSON path of
//! the offending value.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::cones::Cone;
use crate::derived::{FinitePosetDiagram, RoosResult};
use crate::error::{Error, Result};
use crate::fan::{ClassGroupData, FanData};
use crate::graded::{
    Constraint, ConstraintOp, FiltrationData, FinitelyPresentedData, GradedModule, IndicatorData, IndicatorStyle, Relation,
};
use crate::lifting::{LiftComponent, LiftTable};
use crate::linalg::Subspace;
use crate::matrix::{IntMatrix, IntVector, QMatrix};

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    object(v, path)?
        .get(key)
        .ok_or_else(|| err(path, format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a [Value]> {
    v.as_array().map(Vec::as_slice).ok_or_else(|| err(path, "expected an array"))
}

fn integer(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| err(path, format!("{n} is not an integer"))),
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| err(path, format!("{s:?} is not an integer"))),
        _ => Err(err(path, "expected an integer")),
    }
}

fn index(v: &Value, path: &str) -> Result<usize> {
    usize::try_from(integer(v, path)?).map_err(|_| err(path, "expected a nonnegative index"))
}

fn rational(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            let parsed = match s.split_once('/') {
                Some((p, q)) => {
                    let p = BigInt::from_str(p.trim()).ok();
                    let q = BigInt::from_str(q.trim()).ok().filter(|q| !q.is_zero());
                    p.zip(q).map(|(p, q)| BigRational::new(p, q))
                }
                None => BigInt::from_str(s).ok().map(BigRational::from_integer),
            };
            parsed.ok_or_else(|| err(path, format!("{s:?} is not a rational number")))
        }
        _ => integer(v, path).map(BigRational::from_integer),
    }
}

fn int_vector(v: &Value, path: &str) -> Result<IntVector> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| integer(x, &format!("{path}[{i}]")))
        .collect()
}

fn int_vector_of_len(v: &Value, len: usize, path: &str) -> Result<IntVector> {
    let out = int_vector(v, path)?;
    if out.len() != len {
        return Err(err(path, format!("expected {len} entries, found {}", out.len())));
    }
    Ok(out)
}

fn rational_rows(v: &Value, cols: usize, path: &str) -> Result<QMatrix> {
    let rows = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let p = format!("{path}[{i}]");
            let entries: Vec<BigRational> = array(row, &p)?
                .iter()
                .enumerate()
                .map(|(j, x)| rational(x, &format!("{p}[{j}]")))
                .collect::<Result<_>>()?;
            if entries.len() != cols {
                return Err(err(&p, format!("expected {cols} entries, found {}", entries.len())));
            }
            Ok(entries)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QMatrix::from_rows(rows, cols))
}

/// `{"lattice_rank": d, "rays": [[...], ...]}`.
pub fn parse_cone(text: &str) -> Result<Cone> {
    cone_from_value(&parse_json(text)?, "cone")
}

pub fn cone_from_value(v: &Value, path: &str) -> Result<Cone> {
    let d = index(field(v, "lattice_rank", path)?, &format!("{path}.lattice_rank"))?;
    let rays = ray_matrix(field(v, "rays", path)?, d, &format!("{path}.rays"))?;
    Cone::new(d, rays).map_err(|e| err(path, e))
}

fn ray_matrix(v: &Value, d: usize, path: &str) -> Result<IntMatrix> {
    let rows = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, r)| int_vector_of_len(r, d, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_rows(rows, d))
}

/// Parses a module and validates it against the cone.
pub fn parse_module(text: &str, cone: &Cone) -> Result<GradedModule> {
    let m = module_from_value(&parse_json(text)?, cone, "module")?;
    m.validate(cone).map_err(|e| err("module", e))?;
    Ok(m)
}

pub fn module_from_value(v: &Value, cone: &Cone, path: &str) -> Result<GradedModule> {
    let d = cone.lattice_rank();
    let kind = field(v, "type", path)?
        .as_str()
        .ok_or_else(|| err(&format!("{path}.type"), "expected a string"))?;
    match kind {
        "finitely_presented" => {
            let gp = format!("{path}.generators");
            let generators: Vec<IntVector> = array(field(v, "generators", path)?, &gp)?
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let p = format!("{gp}[{i}]");
                    int_vector_of_len(field(g, "degree", &p)?, d, &format!("{p}.degree"))
                })
                .collect::<Result<_>>()?;
            let rp = format!("{path}.relations");
            let relations = match object(v, path)?.get("relations") {
                None => Vec::new(),
                Some(rs) => array(rs, &rp)?
                    .iter()
                    .enumerate()
                    .map(|(j, r)| {
                        let p = format!("{rp}[{j}]");
                        let degree = int_vector_of_len(field(r, "degree", &p)?, d, &format!("{p}.degree"))?;
                        let cp = format!("{p}.coeffs");
                        let coeffs = array(field(r, "coeffs", &p)?, &cp)?
                            .iter()
                            .enumerate()
                            .map(|(i, x)| rational(x, &format!("{cp}[{i}]")))
                            .collect::<Result<Vec<_>>>()?;
                        Ok(Relation { degree, coeffs })
                    })
                    .collect::<Result<_>>()?,
            };
            Ok(GradedModule::FinitelyPresented(FinitelyPresentedData { generators, relations }))
        }
        "indicator" => {
            let sp = format!("{path}.style");
            let style = match field(v, "style", path)?.as_str() {
                Some("quotient") => IndicatorStyle::Quotient,
                Some("submodule") => IndicatorStyle::Submodule,
                _ => return Err(err(&sp, "expected \"quotient\" or \"submodule\"")),
            };
            let cp = format!("{path}.constraints");
            let constraints = array(field(v, "constraints", path)?, &cp)?
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let p = format!("{cp}[{i}]");
                    let ray = index(field(c, "ray", &p)?, &format!("{p}.ray"))?;
                    if ray >= cone.ray_count() {
                        return Err(err(&format!("{p}.ray"), format!("ray {ray} out of range")));
                    }
                    let op = match field(c, "op", &p)?.as_str() {
                        Some("<=") => ConstraintOp::Leq,
                        Some(">=") => ConstraintOp::Geq,
                        _ => return Err(err(&format!("{p}.op"), "expected \"<=\" or \">=\"")),
                    };
                    let bound = integer(field(c, "bound", &p)?, &format!("{p}.bound"))?;
                    Ok(Constraint { ray, op, bound })
                })
                .collect::<Result<_>>()?;
            let ep = format!("{path}.exclude");
            let exclude = match object(v, path)?.get("exclude") {
                None => Vec::new(),
                Some(e) => array(e, &ep)?
                    .iter()
                    .enumerate()
                    .map(|(i, m)| int_vector_of_len(m, d, &format!("{ep}[{i}]")))
                    .collect::<Result<_>>()?,
            };
            Ok(GradedModule::Indicator(IndicatorData {
                style,
                constraints,
                exclude,
            }))
        }
        "filtration" => Ok(GradedModule::Filtration(filtration_from_value(v, cone.ray_count(), path)?)),
        "shift" => {
            let base = module_from_value(field(v, "base", path)?, cone, &format!("{path}.base"))?;
            let by = int_vector_of_len(field(v, "by", path)?, d, &format!("{path}.by"))?;
            Ok(GradedModule::Shift {
                base: Box::new(base),
                by,
            })
        }
        "direct_sum" => {
            let sp = format!("{path}.summands");
            let parts = array(field(v, "summands", path)?, &sp)?
                .iter()
                .enumerate()
                .map(|(i, m)| module_from_value(m, cone, &format!("{sp}[{i}]")))
                .collect::<Result<_>>()?;
            Ok(GradedModule::DirectSum(parts))
        }
        other => Err(err(&format!("{path}.type"), format!("unknown module type {other:?}"))),
    }
}

/// `{"ambient_dim": r, "filtrations": {"rho": [{"level": l, "basis": [[...]]}]}}`.
/// Rays without an entry are full from level 0.
pub fn filtration_from_value(v: &Value, ray_count: usize, path: &str) -> Result<FiltrationData> {
    let r = index(field(v, "ambient_dim", path)?, &format!("{path}.ambient_dim"))?;
    let fp = format!("{path}.filtrations");
    let given = object(field(v, "filtrations", path)?, &fp)?;
    let mut filtrations = vec![vec![(BigInt::zero(), Subspace::full(r))]; ray_count];
    for (key, jumps) in given {
        let p = format!("{fp}.{key:?}");
        let rho: usize = key.parse().map_err(|_| err(&p, "keys must be ray indices"))?;
        if rho >= ray_count {
            return Err(err(&p, format!("ray {rho} out of range")));
        }
        filtrations[rho] = array(jumps, &p)?
            .iter()
            .enumerate()
            .map(|(i, j)| {
                let jp = format!("{p}[{i}]");
                let level = integer(field(j, "level", &jp)?, &format!("{jp}.level"))?;
                let basis = rational_rows(field(j, "basis", &jp)?, r, &format!("{jp}.basis"))?;
                Ok((level, Subspace::span(&basis)))
            })
            .collect::<Result<_>>()?;
    }
    FiltrationData::new(r, filtrations).map_err(|e| err(&fp, e))
}

/// A filtration module over a fan, keyed by the fan's ray indices.
pub fn parse_fan_filtration(text: &str, fan: &FanData) -> Result<FiltrationData> {
    let v = parse_json(text)?;
    let kind = field(&v, "type", "module")?.as_str();
    if kind != Some("filtration") {
        return Err(err("module.type", "a global lift needs a \"filtration\" module"));
    }
    filtration_from_value(&v, fan.ray_count(), "module")
}

fn id_string(v: &Value, path: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(err(path, "expected a string or number id")),
    }
}

/// `{"elements": [ids], "leq": [[i, j]], "dims": {id: n}, "maps": {"i->j": [[...]]}}`.
/// Map matrices have `dims[j]` rows and `dims[i]` columns.
pub fn parse_diagram(text: &str) -> Result<FinitePosetDiagram> {
    let v = parse_json(text)?;
    let path = "diagram";
    let ids: Vec<String> = array(field(&v, "elements", path)?, "diagram.elements")?
        .iter()
        .enumerate()
        .map(|(i, x)| id_string(x, &format!("diagram.elements[{i}]")))
        .collect::<Result<_>>()?;
    let position: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if position.len() != ids.len() {
        return Err(err("diagram.elements", "element ids must be distinct"));
    }
    let lookup = |id: &str, p: &str| -> Result<usize> {
        position
            .get(id)
            .copied()
            .ok_or_else(|| err(p, format!("unknown element {id:?}")))
    };
    let dims_obj = object(field(&v, "dims", path)?, "diagram.dims")?;
    let dims: Vec<usize> = ids
        .iter()
        .map(|id| {
            let p = format!("diagram.dims.{id:?}");
            index(dims_obj.get(id).ok_or_else(|| err(&p, "missing"))?, &p)
        })
        .collect::<Result<_>>()?;
    let mut maps: BTreeMap<(usize, usize), QMatrix> = BTreeMap::new();
    if let Some(m) = object(&v, path)?.get("maps") {
        for (key, matrix) in object(m, "diagram.maps")? {
            let p = format!("diagram.maps.{key:?}");
            let (a, b) = key
                .split_once("->")
                .ok_or_else(|| err(&p, "keys must look like \"i->j\""))?;
            let (i, j) = (lookup(a.trim(), &p)?, lookup(b.trim(), &p)?);
            let t = rational_rows(matrix, dims[i], &p)?;
            if t.rows() != dims[j] {
                return Err(err(&p, format!("expected {} rows, found {}", dims[j], t.rows())));
            }
            maps.insert((i, j), t);
        }
    }
    let relations = array(field(&v, "leq", path)?, "diagram.leq")?
        .iter()
        .enumerate()
        .map(|(k, pair)| {
            let p = format!("diagram.leq[{k}]");
            let pair = array(pair, &p)?;
            if pair.len() != 2 {
                return Err(err(&p, "expected a pair"));
            }
            let i = lookup(&id_string(&pair[0], &p)?, &p)?;
            let j = lookup(&id_string(&pair[1], &p)?, &p)?;
            Ok((i, j, maps.remove(&(i, j))))
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(((i, j), _)) = maps.into_iter().next() {
        return Err(err("diagram.maps", format!("map {}->{} has no matching leq entry", ids[i], ids[j])));
    }
    FinitePosetDiagram::new(ids, dims, relations)
}

/// `{"lattice_rank": d, "rays": [[...]], "max_cones": [[ray indices]]}`.
pub fn parse_fan(text: &str) -> Result<FanData> {
    let v = parse_json(text)?;
    let d = index(field(&v, "lattice_rank", "fan")?, "fan.lattice_rank")?;
    let rays = ray_matrix(field(&v, "rays", "fan")?, d, "fan.rays")?;
    let cones = array(field(&v, "max_cones", "fan")?, "fan.max_cones")?
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let p = format!("fan.max_cones[{k}]");
            array(c, &p)?
                .iter()
                .enumerate()
                .map(|(i, x)| index(x, &format!("{p}[{i}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    FanData::new(d, rays, cones)
}

fn int_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

/// Integers as numbers, other rationals as `"p/q"` strings.
pub fn rational_json(x: &BigRational) -> Value {
    if x.denom().is_one() {
        int_json(x.numer())
    } else {
        json!(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn int_vector_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn matrix_json(m: &QMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(rational_json).collect()))
            .collect(),
    )
}

/// `{"degree", "dim", "minimal_elements", "basis"}`; basis rows are tuples
/// over the minimal elements in order.
pub fn lift_component_json(lc: &LiftComponent) -> Value {
    json!({
        "degree": int_vector_json(&lc.degree),
        "dim": lc.dim(),
        "minimal_elements": Value::Array(lc.minimal_elements.iter().map(|m| int_vector_json(m)).collect()),
        "basis": matrix_json(lc.basis()),
    })
}

pub fn table_json(table: &LiftTable) -> Value {
    Value::Array(table.components.iter().map(lift_component_json).collect())
}

/// Header `c1 … cn dim`, one row per degree in lexicographic order.
pub fn table_tsv(table: &LiftTable) -> String {
    let n = table.degree_box.dim();
    let mut out = String::new();
    let header: Vec<String> = (1..=n).map(|i| format!("c{i}")).chain(["dim".to_string()]).collect();
    out.push_str(&header.join("\t"));
    out.push('\n');
    for lc in &table.components {
        for x in &lc.degree {
            let _ = write!(out, "{x}\t");
        }
        let _ = writeln!(out, "{}", lc.dim());
    }
    out
}

pub fn roos_json(result: &RoosResult) -> Value {
    json!({
        "lim": result.dims,
        "cochain_dims": result.cochain_dims,
        "ranks": result.ranks,
    })
}

pub fn class_group_json(cg: &ClassGroupData) -> Value {
    json!({
        "free_rank": cg.free_rank,
        "torsion": int_vector_json(&cg.torsion),
        "degree_map": Value::Array(cg.degree_map.to_rows().iter().map(|r| int_vector_json(r)).collect()),
    })
}
