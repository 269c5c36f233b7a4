//! JSON encodings of curves, points, ideals, subspaces, classes and bimodule
//! data.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::ch::{PDSubspace, PrimaryData};
use crate::curve::{CurveModel, PointQ};
use crate::dop::{format_dop, parse_dop, DOp, RightIdealD};
use crate::error::{Error, Result};
use crate::ideal::CIdeal;
use crate::oideal::OIdeal;
use crate::parse::{format_poly, parse_function, parse_poly};
use crate::pic::{point_class, DivisorClass};
use crate::picd::{BimoduleDatum, CurveAut, DAut};
use crate::poly::{Mono, Poly, Q};

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {}, got {}", what, v))
}

pub fn rational_from_json(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => {
            let p = parse_poly(&CurveModel::Line, s)?;
            if !p.is_constant() {
                return Err(Error::Parse(format!("'{}' is not a rational number", s)));
            }
            Ok(p.coeff(&Mono::ONE))
        }
        Value::Number(n) => n.as_i64().map(|i| Q::from_integer(i.into())).ok_or_else(|| bad("an integer", v)),
        _ => Err(bad("a rational", v)),
    }
}

pub fn rational_to_json(q: &Q) -> Value {
    Value::String(q.to_string())
}

pub fn curve_from_json(v: &Value) -> Result<CurveModel> {
    match v.get("model").and_then(Value::as_str) {
        Some("line") => Ok(CurveModel::Line),
        Some("elliptic") => {
            let a = rational_from_json(v.get("a").ok_or_else(|| bad("field a", v))?)?;
            let b = rational_from_json(v.get("b").ok_or_else(|| bad("field b", v))?)?;
            CurveModel::elliptic(a, b)
        }
        _ => Err(bad("a curve {\"model\": \"line\" | \"elliptic\"}", v)),
    }
}

pub fn curve_to_json(c: &CurveModel) -> Value {
    match c {
        CurveModel::Line => json!({"model": "line"}),
        CurveModel::Elliptic { a, b } => json!({"model": "elliptic", "a": a.to_string(), "b": b.to_string()}),
    }
}

pub fn point_from_json(curve: &CurveModel, v: &Value) -> Result<PointQ> {
    let arr = v.as_array().ok_or_else(|| bad("a point as a list of rationals", v))?;
    let p = match (curve.is_elliptic(), arr.len()) {
        (false, 1) => PointQ::line(rational_from_json(&arr[0])?),
        (true, 2) => PointQ::affine(rational_from_json(&arr[0])?, rational_from_json(&arr[1])?),
        _ => return Err(bad("a point with one coordinate on the line and two on an elliptic curve", v)),
    };
    curve.check_point(&p)?;
    Ok(p)
}

pub fn point_to_json(p: &PointQ) -> Value {
    let mut v = vec![rational_to_json(&p.x)];
    if let Some(y) = &p.y {
        v.push(rational_to_json(y));
    }
    Value::Array(v)
}

fn strings(v: &Value) -> Result<Vec<String>> {
    let arr = v.as_array().ok_or_else(|| bad("a list of strings", v))?;
    arr.iter().map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad("a string", s))).collect()
}

pub fn oideal_from_json(curve: &CurveModel, v: &Value) -> Result<OIdeal> {
    let gens = strings(v)?.iter().map(|s| parse_function(curve, s)).collect::<Result<Vec<_>>>()?;
    OIdeal::new(curve, gens)
}

pub fn cideal_from_json(curve: &CurveModel, v: &Value) -> Result<CIdeal> {
    let gens = strings(v)?.iter().map(|s| parse_poly(curve, s)).collect::<Result<Vec<_>>>()?;
    CIdeal::new(curve, gens)
}

pub fn dideal_from_json(curve: &CurveModel, v: &Value) -> Result<RightIdealD> {
    let gens = strings(v)?.iter().map(|s| parse_dop(curve, s)).collect::<Result<Vec<_>>>()?;
    RightIdealD::new(curve, gens)
}

pub fn polys_to_json(ps: &[Poly]) -> Value {
    Value::Array(ps.iter().map(|p| Value::String(format_poly(p))).collect())
}

pub fn dops_to_json(ps: &[DOp]) -> Value {
    Value::Array(ps.iter().map(|p| Value::String(format_dop(p))).collect())
}

pub fn oideal_to_json(i: &OIdeal) -> Result<Value> {
    Ok(polys_to_json(&i.basis()?))
}

pub fn cideal_to_json(i: &CIdeal) -> Result<Value> {
    Ok(polys_to_json(&i.basis()?))
}

pub fn dideal_to_json(m: &RightIdealD) -> Result<Value> {
    Ok(dops_to_json(&m.right_groebner()?))
}

pub fn class_to_json(c: &DivisorClass) -> Value {
    match c {
        DivisorClass::Identity => Value::String("identity".into()),
        DivisorClass::Point(p) => point_to_json(p),
    }
}

pub fn class_from_json(curve: &CurveModel, v: &Value) -> Result<DivisorClass> {
    if v.as_str() == Some("identity") {
        return Ok(DivisorClass::Identity);
    }
    Ok(point_class(curve, &point_from_json(curve, v)?))
}

pub fn subspace_from_json(curve: &CurveModel, v: &Value) -> Result<PDSubspace> {
    let pts = v.get("points").and_then(Value::as_array).ok_or_else(|| bad("a subspace {\"points\": [...]}", v))?;
    let mut data = Vec::new();
    for d in pts {
        let p = point_from_json(curve, d.get("point").ok_or_else(|| bad("field point", d))?)?;
        let n = d.get("jet_order").and_then(Value::as_u64).ok_or_else(|| bad("field jet_order", d))? as usize;
        let rows = d
            .get("conditions")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("field conditions", d))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| bad("a covector", r))?
                    .iter()
                    .map(rational_from_json)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        data.push(PrimaryData::new(curve, p, n, rows)?);
    }
    PDSubspace::new(curve, data)
}

pub fn subspace_to_json(v: &PDSubspace) -> Value {
    let pts: Vec<Value> = v
        .points()
        .iter()
        .map(|d| {
            let rows: Vec<Value> =
                d.conditions.iter().map(|r| Value::Array(r.iter().map(rational_to_json).collect())).collect();
            json!({"point": point_to_json(&d.point), "jet_order": d.jet_order, "conditions": rows})
        })
        .collect();
    json!({ "points": pts })
}

pub fn sigma_from_json(curve: &CurveModel, v: &Value) -> Result<CurveAut> {
    let s = match v {
        Value::String(s) if s == "id" => CurveAut::Identity,
        Value::String(s) if s == "nu" => CurveAut::Inversion,
        Value::Object(_) => {
            let a = rational_from_json(v.get("alpha").ok_or_else(|| bad("field alpha", v))?)?;
            let b = rational_from_json(v.get("beta").ok_or_else(|| bad("field beta", v))?)?;
            CurveAut::affine(a, b)?
        }
        _ => return Err(bad("\"id\", \"nu\" or {\"alpha\", \"beta\"}", v)),
    };
    s.check(curve)?;
    Ok(s)
}

pub fn sigma_to_json(s: &CurveAut) -> Value {
    match s {
        CurveAut::Identity => Value::String("id".into()),
        CurveAut::Inversion => Value::String("nu".into()),
        CurveAut::Affine { alpha, beta } => json!({"alpha": alpha.to_string(), "beta": beta.to_string()}),
    }
}

pub fn datum_from_json(curve: &CurveModel, v: &Value) -> Result<BimoduleDatum> {
    let ideal = match v.get("ideal") {
        Some(i) => oideal_from_json(curve, i)?,
        None => OIdeal::unit(curve),
    };
    let sigma = match v.get("sigma") {
        Some(s) => sigma_from_json(curve, s)?,
        None => CurveAut::Identity,
    };
    BimoduleDatum::new(ideal, sigma)
}

pub fn datum_to_json(d: &BimoduleDatum) -> Result<Value> {
    Ok(json!({"ideal": oideal_to_json(&d.ideal)?, "sigma": sigma_to_json(&d.sigma)}))
}

/// `{"x": "...", "y": "...", "d": "..."}`; the images of `x` and `y` must
/// define a supported automorphism of `O(X)`.
pub fn daut_from_json(curve: &CurveModel, v: &Value) -> Result<DAut> {
    let get = |k: &str, default: &str| -> String { v.get(k).and_then(Value::as_str).unwrap_or(default).to_string() };
    let sx = parse_function(curve, &get("x", "x"))?;
    let d = parse_dop(curve, &get("d", "d"))?;
    let (alpha, beta) = (sx.coeff(&Mono::new(1, 0, 0)), sx.coeff(&Mono::ONE));
    let affine = &Poly::x().scale(&alpha) + &Poly::constant(beta.clone());
    if alpha.is_zero() || affine != sx {
        return Err(Error::NotAutomorphism(format!("x ↦ {} is not affine", format_poly(&sx))));
    }
    let sigma = if curve.is_elliptic() {
        let sy = parse_function(curve, &get("y", "y"))?;
        match (sx == Poly::x(), sy.clone()) {
            (true, p) if p == Poly::y() => CurveAut::Identity,
            (true, p) if p == -&Poly::y() => CurveAut::Inversion,
            _ => {
                return Err(Error::NotAutomorphism(format!(
                    "(x, y) ↦ ({}, {}) is not a supported automorphism",
                    format_poly(&sx),
                    format_poly(&sy)
                )))
            }
        }
    } else {
        CurveAut::affine(alpha, beta)?
    };
    DAut::new(curve, sigma, d)
}

pub fn daut_to_json(phi: &DAut) -> Value {
    let s = phi.sigma();
    let mut v = json!({"x": format_poly(&s.image_x()), "d": format_dop(phi.d_image())});
    if phi.curve().is_elliptic() {
        v["y"] = Value::String(format_poly(&s.image_y()));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    #[test]
    fn curves_and_points() {
        let e = curve_from_json(&json!({"model": "elliptic", "a": "0", "b": "1"})).unwrap();
        assert_eq!(e, CurveModel::standard_elliptic());
        assert_eq!(curve_to_json(&e), json!({"model": "elliptic", "a": "0", "b": "1"}));
        assert!(curve_from_json(&json!({"model": "elliptic", "a": "0", "b": "0"})).is_err());
        let p = point_from_json(&e, &json!(["0", "1"])).unwrap();
        assert_eq!(p, PointQ::ints(0, 1));
        assert!(point_from_json(&e, &json!(["0", "2"])).is_err());
        assert_eq!(point_to_json(&PointQ::line(q(1) / q(2))), json!(["1/2"]));
    }

    #[test]
    fn subspace_example() {
        let l = CurveModel::Line;
        let v = json!({"points": [{"point": ["0"], "jet_order": 2, "conditions": [["0", "1"]]}]});
        let s = subspace_from_json(&l, &v).unwrap();
        assert_eq!(s.codim(), 1);
        assert_eq!(subspace_to_json(&s), v);
    }

    #[test]
    fn data_and_automorphisms() {
        let e = CurveModel::standard_elliptic();
        let d = datum_from_json(&e, &json!({"ideal": ["x", "y - 1"], "sigma": "nu"})).unwrap();
        assert_eq!(d.sigma, CurveAut::Inversion);
        assert_eq!(datum_to_json(&d).unwrap()["sigma"], json!("nu"));
        let phi = daut_from_json(&e, &json!({"y": "-y", "d": "-d + x"})).unwrap();
        assert_eq!(phi.sigma(), &CurveAut::Inversion);
        assert!(daut_from_json(&e, &json!({"d": "-d"})).is_err());
        let l = CurveModel::Line;
        let phi = daut_from_json(&l, &json!({"x": "2*x + 1", "d": "1/2*d + x"})).unwrap();
        assert_eq!(daut_to_json(&phi), json!({"x": "2*x + 1", "d": "1/2*d + x"}));
        assert!(class_from_json(&e, &json!("identity")).unwrap().is_identity());
    }
}
