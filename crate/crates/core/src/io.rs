//! JSON formats for modules, maps and chains, and human-readable labels.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{reduce, Mat};
use crate::morcat::{assemble_checked, branches, chain_len, phis};
use crate::repmod::{decompose, direct_sum, radical, ModMap, Rep};

// ---------------------------------------------------------------------------
// parsing

fn matrix_from_value(v: &Value, rows: usize, cols: usize, p: u32, what: &str) -> Result<Mat> {
    match v {
        Value::String(s) if s == "0" || s == "zero" => Ok(Mat::zeros(p, rows, cols)),
        Value::String(s) if s == "id" || s == "1" => {
            if rows != cols {
                return Err(Error::Input(format!("{what}: identity needs a square shape, have {rows}x{cols}")));
            }
            Ok(Mat::identity(p, rows))
        }
        Value::Number(n) if rows == 1 && cols == 1 => {
            let x = n.as_i64().ok_or_else(|| Error::Input(format!("{what}: entries must be integers")))?;
            Ok(Mat::from_rows(p, &[vec![x]]))
        }
        Value::Array(rs) => {
            if rs.is_empty() || rs.iter().all(|r| r.as_array().is_some_and(Vec::is_empty)) {
                if rows == 0 || cols == 0 || rs.is_empty() {
                    return Ok(Mat::zeros(p, rows, cols));
                }
            }
            if rs.len() != rows {
                return Err(Error::Dimension(format!("{what}: expected {rows} rows, got {}", rs.len())));
            }
            let mut m = Mat::zeros(p, rows, cols);
            for (i, r) in rs.iter().enumerate() {
                let r = r.as_array().ok_or_else(|| Error::Input(format!("{what}: row {i} is not a list")))?;
                if r.len() != cols {
                    return Err(Error::Dimension(format!("{what}: row {i} has {} entries, expected {cols}", r.len())));
                }
                for (j, x) in r.iter().enumerate() {
                    let x = x.as_i64().ok_or_else(|| Error::Input(format!("{what}: entries must be integers")))?;
                    m.set(i, j, reduce(x, p));
                }
            }
            Ok(m)
        }
        _ => Err(Error::Input(format!("{what}: expected a matrix"))),
    }
}

fn vertex_index(alg: &Algebra, name: &str) -> Result<usize> {
    alg.quiver
        .vertices
        .iter()
        .position(|v| v == name)
        .ok_or_else(|| Error::Input(format!("unknown vertex {name}")))
}

/// Parse a module: `{"dims": .., "arrows": {name: matrix}}` or a symbolic sum such as `"U(1,2)+U(1,1)"`.
pub fn module_from_json(alg: &Arc<Algebra>, v: &Value) -> Result<Rep> {
    match v {
        Value::String(s) => module_from_symbol(alg, s),
        Value::Object(o) => {
            let nv = alg.nverts();
            let dims: Vec<usize> = match o.get("dims") {
                Some(Value::Array(a)) => a
                    .iter()
                    .map(|x| x.as_u64().map(|d| d as usize).ok_or_else(|| Error::Input("dims must be integers".into())))
                    .collect::<Result<_>>()?,
                Some(Value::Object(m)) => {
                    let mut d = vec![0; nv];
                    for (k, x) in m {
                        d[vertex_index(alg, k)?] =
                            x.as_u64().ok_or_else(|| Error::Input("dims must be integers".into()))? as usize;
                    }
                    d
                }
                Some(Value::Number(n)) if nv == 1 => vec![n.as_u64().unwrap_or(0) as usize],
                _ => return Err(Error::Input("module needs a \"dims\" field".into())),
            };
            if dims.len() != nv {
                return Err(Error::Dimension(format!("{} dimensions for {nv} vertices", dims.len())));
            }
            let arrows = o.get("arrows").and_then(Value::as_object);
            let mut mats = Vec::with_capacity(alg.narrows());
            for a in &alg.quiver.arrows {
                let (r, c) = (dims[a.to], dims[a.from]);
                let m = match arrows.and_then(|m| m.get(&a.name)) {
                    Some(x) => matrix_from_value(x, r, c, alg.p(), &format!("arrow {}", a.name))?,
                    None => Mat::zeros(alg.p(), r, c),
                };
                mats.push(m);
            }
            if let Some(m) = arrows {
                for k in m.keys() {
                    if !alg.quiver.arrows.iter().any(|a| &a.name == k) {
                        return Err(Error::Input(format!("unknown arrow {k}")));
                    }
                }
            }
            Rep::new(&alg.frame(), dims, mats)
        }
        _ => Err(Error::Input("a module is an object or a symbolic string".into())),
    }
}

/// One symbolic summand: `U(v,l)`, `U(l)`, `S`, `A`, `M`, `S<v>`, `P<v>` or `0`.
fn summand_from_symbol(alg: &Arc<Algebra>, s: &str) -> Result<Option<Rep>> {
    let (m, t) = alg
        .nakayama_params()
        .ok_or_else(|| Error::Input(format!("symbolic modules need a Nakayama algebra, not {}", alg.name)))?;
    let bad = || Error::Input(format!("cannot parse module symbol {s}"));
    let vtx = |x: &str| -> Result<usize> {
        let v: usize = x.trim().parse().map_err(|_| bad())?;
        if v == 0 || v > m {
            return Err(bad());
        }
        Ok(v - 1)
    };
    let s = s.trim();
    let (v, l) = if s == "0" {
        return Ok(None);
    } else if let Some(inner) = s.strip_prefix("U(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = inner.split(',').collect();
        match parts.as_slice() {
            [l] if m == 1 => (0, l.trim().parse().map_err(|_| bad())?),
            [v, l] => (vtx(v)?, l.trim().parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    } else if m == 1 && s == "S" {
        (0, 1)
    } else if m == 1 && s == "A" {
        (0, t)
    } else if m == 1 && s == "M" && t == 3 {
        (0, 2)
    } else if let Some(v) = s.strip_prefix('S') {
        (vtx(v)?, 1)
    } else if let Some(v) = s.strip_prefix('P') {
        (vtx(v)?, t)
    } else {
        return Err(bad());
    };
    Ok(Some(alg.uniserial(v, l)?))
}

pub fn module_from_symbol(alg: &Arc<Algebra>, s: &str) -> Result<Rep> {
    let mut parts = Vec::new();
    for tok in s.split(['+', '⊕']) {
        if let Some(r) = summand_from_symbol(alg, tok)? {
            parts.push(r);
        }
    }
    Ok(direct_sum(&alg.frame(), &parts).sum)
}

/// Parse a map between modules: a matrix (one-vertex algebras), `{vertex: matrix}`, `"id"` or `"0"`.
pub fn map_from_json(alg: &Algebra, v: &Value, src: &Rep, tgt: &Rep) -> Result<ModMap> {
    let p = alg.p();
    let nv = alg.nverts();
    let blocks = match v {
        Value::Object(o) => {
            let mut b: Vec<Mat> = (0..nv).map(|z| Mat::zeros(p, tgt.dims[z], src.dims[z])).collect();
            for (k, x) in o {
                let z = vertex_index(alg, k)?;
                b[z] = matrix_from_value(x, tgt.dims[z], src.dims[z], p, &format!("map at vertex {k}"))?;
            }
            b
        }
        Value::String(_) => (0..nv)
            .map(|z| matrix_from_value(v, tgt.dims[z], src.dims[z], p, "map"))
            .collect::<Result<_>>()?,
        Value::Array(_) | Value::Number(_) if nv == 1 => vec![matrix_from_value(v, tgt.dims[0], src.dims[0], p, "map")?],
        _ => return Err(Error::Input("a map is a matrix, an object keyed by vertex, \"id\" or \"0\"".into())),
    };
    ModMap::new(src, tgt, blocks)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ChainJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// `X_1` first.
    pub branches: Vec<Value>,
    /// `maps[i]` goes from `X_{i+2}` to `X_{i+1}`.
    #[serde(default)]
    pub maps: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

pub fn chain_from_json(alg: &Arc<Algebra>, j: &ChainJson) -> Result<Rep> {
    let bs = j.branches.iter().map(|b| module_from_json(alg, b)).collect::<Result<Vec<_>>>()?;
    if bs.is_empty() {
        return Err(Error::Input("a chain needs at least one branch".into()));
    }
    if j.n.is_some_and(|n| n != bs.len()) {
        return Err(Error::Input(format!("n = {} but {} branches given", j.n.unwrap_or(0), bs.len())));
    }
    if j.maps.len() + 1 != bs.len() {
        return Err(Error::Input(format!("{} branches need {} maps, got {}", bs.len(), bs.len() - 1, j.maps.len())));
    }
    let maps = j
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| map_from_json(alg, m, &bs[i + 1], &bs[i]))
        .collect::<Result<Vec<_>>>()?;
    assemble_checked(alg, &bs, &maps)
}

pub fn chain_from_str(alg: &Arc<Algebra>, text: &str) -> Result<Rep> {
    let j: ChainJson = serde_json::from_str(text).map_err(|e| Error::Input(format!("chain JSON: {e}")))?;
    chain_from_json(alg, &j)
}

// ---------------------------------------------------------------------------
// writing

fn matrix_value(m: &Mat) -> Value {
    Value::Array((0..m.rows).map(|i| Value::Array(m.row(i).iter().map(|&x| Value::from(x)).collect())).collect())
}

pub fn module_to_json(alg: &Algebra, m: &Rep) -> Value {
    let arrows: BTreeMap<String, Value> =
        alg.quiver.arrows.iter().enumerate().map(|(a, ar)| (ar.name.clone(), matrix_value(&m.mats[a]))).collect();
    serde_json::json!({ "dims": m.dims, "arrows": arrows })
}

pub fn map_to_json(alg: &Algebra, f: &ModMap) -> Value {
    if alg.nverts() == 1 {
        return matrix_value(&f.blocks[0]);
    }
    let o: BTreeMap<String, Value> =
        alg.quiver.vertices.iter().enumerate().map(|(z, v)| (v.clone(), matrix_value(&f.blocks[z]))).collect();
    serde_json::to_value(o).expect("plain map")
}

pub fn chain_to_json(alg: &Algebra, x: &Rep, seed: u64) -> Result<ChainJson> {
    let bs = branches(x);
    let labels = bs.iter().map(|b| module_label(alg, b, seed)).collect::<Result<Vec<_>>>()?;
    Ok(ChainJson {
        algebra: Some(alg.name.clone()),
        n: Some(bs.len()),
        branches: bs.iter().map(|b| module_to_json(alg, b)).collect(),
        maps: phis(x).iter().map(|f| map_to_json(alg, f)).collect(),
        labels: Some(labels),
    })
}

// ---------------------------------------------------------------------------
// labels

/// Dimension vectors of the radical layers.
pub fn radical_layers(m: &Rep) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = m.clone();
    while !cur.is_zero() {
        let (r, _) = radical(&cur);
        out.push(cur.dims.iter().zip(&r.dims).map(|(a, b)| a - b).collect());
        cur = r;
    }
    out
}

/// Label of an indecomposable module.
pub fn indecomposable_label(alg: &Algebra, m: &Rep) -> String {
    let l = m.total_dim();
    if let Some((nm, t)) = alg.nakayama_params() {
        let v = m.top_dims().iter().position(|&d| d > 0).unwrap_or(0);
        let name = &alg.quiver.vertices[v];
        return if nm == 1 {
            match l {
                1 => "S".into(),
                _ if l == t => "A".into(),
                2 if t == 3 => "M".into(),
                _ => format!("U({l})"),
            }
        } else if l == 1 {
            format!("S{name}")
        } else if l == t {
            format!("P{name}")
        } else {
            format!("U({name},{l})")
        };
    }
    radical_layers(m)
        .iter()
        .map(|layer| {
            layer
                .iter()
                .enumerate()
                .flat_map(|(v, &d)| std::iter::repeat(alg.quiver.vertices[v].as_str()).take(d))
                .collect::<Vec<_>>()
                .concat()
        })
        .collect::<Vec<_>>()
        .join("/")
}

pub fn module_label(alg: &Algebra, m: &Rep, seed: u64) -> Result<String> {
    if m.is_zero() {
        return Ok("0".into());
    }
    let mut parts: Vec<(usize, String)> = decompose(m, seed)?
        .iter()
        .map(|s| (s.rep.total_dim(), indecomposable_label(alg, &s.rep)))
        .collect();
    parts.sort();
    Ok(parts.into_iter().map(|p| p.1).collect::<Vec<_>>().join("⊕"))
}

/// `(X_1,...,X_n)` with each branch labelled by its summands.
pub fn chain_label(alg: &Algebra, x: &Rep, seed: u64) -> Result<String> {
    let n = chain_len(x);
    let mut parts = Vec::with_capacity(n);
    for b in branches(x) {
        parts.push(module_label(alg, &b, seed)?);
    }
    Ok(format!("({})", parts.join(",")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;

    #[test]
    fn parse_symbolic_chain() {
        let a = Algebra::nakayama(1, 2, FieldSpec::default()).unwrap();
        let text = r#"{"branches":["A","S"],"maps":[[[0],[1]]]}"#;
        let x = chain_from_str(&a, text).unwrap();
        assert_eq!(chain_label(&a, &x, 0).unwrap(), "(A,S)");
        let j = chain_to_json(&a, &x, 0).unwrap();
        let back = chain_from_json(&a, &serde_json::from_value(serde_json::to_value(&j).unwrap()).unwrap()).unwrap();
        assert_eq!(back.dims, x.dims);
        assert_eq!(back.mats, x.mats);
    }

    #[test]
    fn non_module_maps_are_rejected() {
        let a = Algebra::nakayama(1, 2, FieldSpec::default()).unwrap();
        let text = r#"{"branches":["A","S"],"maps":[[[1],[0]]]}"#;
        assert!(matches!(chain_from_str(&a, text), Err(Error::Domain(_))));
        let text = r#"{"branches":["A","S"],"maps":[[[1,0]]]}"#;
        assert!(matches!(chain_from_str(&a, text), Err(Error::Dimension(_))));
    }

    #[test]
    fn layer_labels_for_three_vertex_algebra() {
        let a = Algebra::three_vertex_selfinjective(FieldSpec::default()).unwrap();
        let f = a.frame();
        assert_eq!(indecomposable_label(&a, &f.proj(0)), "1/23/1");
        assert_eq!(indecomposable_label(&a, &f.proj(1)), "2/1/3");
    }

    #[test]
    fn symbols_for_two_vertex_nakayama() {
        let a = Algebra::nakayama(2, 2, FieldSpec::default()).unwrap();
        let m = module_from_symbol(&a, "P1+S2").unwrap();
        assert_eq!(module_label(&a, &m, 0).unwrap(), "S2⊕P1");
    }
}
