//! Text and JSON formats for bodies, lattices and matrices.
//!
//! Rationals are strings `"p/q"` (integers are also accepted as JSON
//! numbers). A lattice object is `{"basis": A, "name": ...}` with `A` the
//! row-major matrix whose columns generate the lattice. A body object is
//! `{"vertices": [...], "halfspaces": [{"a": [...], "b": "p/q"}], "flags": {...}}`
//! where either list may be omitted.

use serde_json::{json, Map, Value};

use crate::body::special::{cross_polytope, cube, makai_simplex, pni, polar_zonotope, q_body, standard_simplex, weighted_simplex, zonotope};
use crate::body::{Halfspace, Polytope};
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational, Rational};
use crate::exact::RatMatrix;
use crate::lattice::{special_lattice, Lattice};

/// Largest dimension accepted from text input.
pub const MAX_DIM: usize = 12;

/// Largest number of points or halfspaces accepted in a JSON body.
pub const MAX_ITEMS: usize = 4_096;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_dim(s: &str) -> Result<usize> {
    let n: usize = s.trim().parse().map_err(|_| parse_err(format!("bad dimension {s:?}")))?;
    if n == 0 || n > MAX_DIM {
        return Err(parse_err(format!("dimension {n} outside 1..={MAX_DIM}")));
    }
    Ok(n)
}

fn parse_list(s: &str) -> Result<Vec<Rational>> {
    let v: Vec<Rational> = s.split(',').map(parse_rational).collect::<Result<_>>()?;
    if v.len() > MAX_DIM {
        return Err(parse_err(format!("more than {MAX_DIM} entries")));
    }
    Ok(v)
}

/// Splits `T3`, `T:3` or `T` into the name and an optional dimension.
fn name_and_dim<'a>(spec: &'a str, prefix: &str) -> Option<&'a str> {
    let rest = spec.strip_prefix(prefix)?;
    let rest = rest.strip_prefix(':').unwrap_or(rest);
    (!rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit() || b.is_ascii_whitespace())).then_some(rest)
}

/// A body from a name or an inline JSON object.
///
/// Names: `cube:n`, `cross:n`, `pni:n,i`, `Tn`, `S1:n`, `Sv:v1,...,vn`,
/// `Zn`, `Zn-polar`, `q:mu1,...,mun` (with `n` a number, so `T3` or `T:3`).
pub fn parse_body_spec(spec: &str) -> Result<Polytope> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return body_from_json(spec);
    }
    let (head, tail) = spec.split_once(':').unwrap_or((spec, ""));
    match head {
        "cube" | "C" => return cube(parse_dim(tail)?),
        "cross" | "C*" => return cross_polytope(parse_dim(tail)?),
        "pni" | "P" => {
            let (n, i) = tail.split_once(',').ok_or_else(|| parse_err("pni needs n,i"))?;
            let n = parse_dim(n)?;
            let i: usize = i.trim().parse().map_err(|_| parse_err(format!("bad index {i:?}")))?;
            return pni(n, i);
        }
        "S1" => return standard_simplex(parse_dim(tail)?),
        "Sv" => return weighted_simplex(&parse_list(tail)?),
        "q" => return q_body(&parse_list(tail)?),
        _ => {}
    }
    if let Some(base) = spec.strip_suffix("-polar") {
        if let Some(d) = name_and_dim(base, "Z") {
            return polar_zonotope(parse_dim(d)?);
        }
    }
    if let Some(d) = name_and_dim(spec, "Z") {
        return zonotope(parse_dim(d)?);
    }
    if let Some(d) = name_and_dim(spec, "T") {
        return makai_simplex(parse_dim(d)?);
    }
    Err(parse_err(format!("unknown body {spec:?}")))
}

/// A lattice from `Zn`, `checkerboard:n`, `makai:n` (also `Z3`, `Z:3`) or
/// an inline JSON object.
pub fn parse_lattice_spec(spec: &str) -> Result<Lattice> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return lattice_from_json(spec);
    }
    if let Some((name, n)) = spec.split_once(':') {
        let name = if name == "Z" { "Zn" } else { name };
        return special_lattice(name, parse_dim(n)?);
    }
    if let Some(d) = name_and_dim(spec, "Z") {
        return special_lattice("Zn", parse_dim(d)?);
    }
    Err(parse_err(format!("unknown lattice {spec:?}; expected e.g. Z3, checkerboard:3, makai:3")))
}

fn rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("checked").into())),
        _ => Err(parse_err(format!("expected a rational string, got {v}"))),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    let a = v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))?;
    if a.len() > MAX_ITEMS {
        return Err(parse_err(format!("{what} has more than {MAX_ITEMS} entries")));
    }
    Ok(a)
}

fn vector_value(v: &Value) -> Result<Vec<Rational>> {
    let a = array(v, "vector")?;
    if a.is_empty() || a.len() > MAX_DIM {
        return Err(parse_err(format!("vector length must be in 1..={MAX_DIM}")));
    }
    a.iter().map(rational_value).collect()
}

fn rows_value(v: &Value) -> Result<Vec<Vec<Rational>>> {
    let rows: Vec<Vec<Rational>> = array(v, "matrix")?.iter().map(vector_value).collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(parse_err("matrix has no rows"));
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(parse_err("matrix rows differ in length"));
    }
    Ok(rows)
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

/// A row-major matrix of rational strings.
pub fn matrix_from_json(text: &str) -> Result<RatMatrix> {
    RatMatrix::from_rows(rows_value(&parse_json(text)?)?)
}

pub fn matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vec_json(r)).collect())
}

pub fn lattice_from_json(text: &str) -> Result<Lattice> {
    let v = parse_json(text)?;
    let obj = v.as_object().ok_or_else(|| parse_err("lattice must be an object"))?;
    let basis = obj.get("basis").ok_or_else(|| parse_err("lattice needs a basis"))?;
    let l = Lattice::new(RatMatrix::from_rows(rows_value(basis)?)?)?;
    match obj.get("name") {
        None | Some(Value::Null) => Ok(l),
        Some(Value::String(s)) => Ok(l.with_name(s)),
        Some(other) => Err(parse_err(format!("lattice name must be a string, got {other}"))),
    }
}

pub fn lattice_to_json(l: &Lattice) -> Value {
    let mut m = Map::new();
    m.insert("basis".into(), matrix_to_json(l.basis()));
    if let Some(name) = l.name() {
        m.insert("name".into(), Value::String(name.into()));
    }
    Value::Object(m)
}

fn halfspace_value(v: &Value) -> Result<Halfspace> {
    let a = v.get("a").ok_or_else(|| parse_err("halfspace needs a"))?;
    let b = v.get("b").ok_or_else(|| parse_err("halfspace needs b"))?;
    Halfspace::new(vector_value(a)?, rational_value(b)?)
}

fn check_flags(k: &Polytope, flags: &Value) -> Result<()> {
    let obj = flags.as_object().ok_or_else(|| parse_err("flags must be an object"))?;
    let have = k.flags();
    for (key, got) in obj {
        let actual = match key.as_str() {
            "origin_interior" => have.origin_interior,
            "o_symmetric" => have.o_symmetric,
            "unconditional" => have.unconditional,
            _ => return Err(parse_err(format!("unknown flag {key:?}"))),
        };
        let claimed = got.as_bool().ok_or_else(|| parse_err(format!("flag {key:?} must be a boolean")))?;
        if claimed != actual {
            return Err(Error::InvalidArgument(format!("flag {key:?} is {actual}, not {claimed}")));
        }
    }
    Ok(())
}

pub fn body_from_json(text: &str) -> Result<Polytope> {
    let v = parse_json(text)?;
    let obj = v.as_object().ok_or_else(|| parse_err("body must be an object"))?;
    let verts = obj.get("vertices").map(rows_value).transpose()?;
    let hs = obj
        .get("halfspaces")
        .map(|h| array(h, "halfspaces")?.iter().map(halfspace_value).collect::<Result<Vec<_>>>())
        .transpose()?;
    let k = match (&verts, &hs) {
        (Some(p), _) => Polytope::from_points(p)?,
        (None, Some(h)) => {
            let d = h.first().map(|h| h.a.len()).ok_or_else(|| parse_err("no halfspaces"))?;
            if h.iter().any(|h| h.a.len() != d) {
                return Err(Error::Dimension("halfspace normals differ in length".into()));
            }
            Polytope::from_halfspaces(h, d)?
        }
        (None, None) => return Err(parse_err("body needs vertices or halfspaces")),
    };
    if let (Some(_), Some(h)) = (&verts, &hs) {
        let d = k.dim();
        if h.iter().any(|h| h.a.len() != d) || !Polytope::from_halfspaces(h, d)?.same_set(&k) {
            return Err(Error::InvalidArgument("vertices and halfspaces describe different bodies".into()));
        }
    }
    if let Some(f) = obj.get("flags") {
        check_flags(&k, f)?;
    }
    Ok(k)
}

fn vec_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rational(x))).collect())
}

pub fn body_to_json(k: &Polytope) -> Value {
    let f = k.flags();
    json!({
        "vertices": k.vertices().iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
        "halfspaces": k.halfspaces().iter().map(|h| json!({"a": vec_json(&h.a), "b": format_rational(&h.b)})).collect::<Vec<_>>(),
        "flags": {"origin_interior": f.origin_interior, "o_symmetric": f.o_symmetric, "unconditional": f.unconditional},
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn named_bodies() {
        assert!(parse_body_spec("cube:3").unwrap().same_set(&cube(3).unwrap()));
        assert!(parse_body_spec("T3").unwrap().same_set(&makai_simplex(3).unwrap()));
        assert!(parse_body_spec("T:2").unwrap().same_set(&makai_simplex(2).unwrap()));
        assert_eq!(parse_body_spec("Z2").unwrap().volume(), int(12));
        assert!(parse_body_spec("Z2-polar").unwrap().origin_interior());
        assert_eq!(parse_body_spec("pni:3,2").unwrap().volume(), rat(20, 3));
        assert_eq!(parse_body_spec("Sv:1,2").unwrap().volume(), rat(1, 4));
        assert_eq!(parse_body_spec("S1:3").unwrap().volume(), rat(1, 6));
        assert!(parse_body_spec("q:1/2,1").is_ok());
        for bad in ["", "cube", "cube:0", "cube:99", "T", "pni:3", "pni:3,4", "Sv:0,1", "q:1,1/2", "Zx", "sphere:3"] {
            assert!(parse_body_spec(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn named_lattices() {
        assert_eq!(parse_lattice_spec("Z3").unwrap(), Lattice::integer(3));
        assert_eq!(parse_lattice_spec("Zn:2").unwrap(), Lattice::integer(2));
        assert_eq!(parse_lattice_spec("checkerboard:3").unwrap().det_abs(), &int(2));
        assert_eq!(parse_lattice_spec("makai:3").unwrap().det_abs(), &int(16));
        for bad in ["", "Z", "Z0", "checkerboard", "leech:24", "makai:1"] {
            assert!(parse_lattice_spec(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn json_round_trips() {
        let k = parse_body_spec("pni:3,2").unwrap();
        let text = body_to_json(&k).to_string();
        assert!(body_from_json(&text).unwrap().same_set(&k));
        let l = parse_lattice_spec("checkerboard:3").unwrap();
        let back = lattice_from_json(&lattice_to_json(&l).to_string()).unwrap();
        assert_eq!(back, l);
        assert_eq!(back.name(), Some("checkerboard"));
        let m = matrix_from_json(r#"[["1","-2"],[1,"1/3"]]"#).unwrap();
        assert_eq!(m[(1, 1)], rat(1, 3));
        assert_eq!(matrix_from_json(&matrix_to_json(&m).to_string()).unwrap(), m);
    }

    #[test]
    fn json_bodies_from_either_side() {
        let tri = body_from_json(r#"{"vertices": [["0","0"],["1","0"],["0","1"]]}"#).unwrap();
        assert_eq!(tri.volume(), rat(1, 2));
        let sq = body_from_json(r#"{"halfspaces": [{"a":[1,0],"b":"1"},{"a":[-1,0],"b":"1"},{"a":[0,1],"b":"1"},{"a":[0,-1],"b":"1"}]}"#)
            .unwrap();
        assert!(sq.same_set(&cube(2).unwrap()));
        assert!(body_from_json(r#"{"vertices": [[0,0],[1,0],[0,1]], "flags": {"o_symmetric": true}}"#).is_err());
        assert!(body_from_json(r#"{"vertices": [[0,0],[1,0],[0,1]], "halfspaces": [{"a":[1,0],"b":"1"}]}"#).is_err());
        assert!(body_from_json(r#"{"vertices": [[0,0],[1,1]]}"#).is_err());
        assert!(body_from_json(r#"{"vertices": [[0,0],[1]]}"#).is_err());
        assert!(lattice_from_json(r#"{"basis": [[1,2],[2,4]]}"#).is_err());
        assert!(matrix_from_json(r#"[[1.5]]"#).is_err());
    }
}
