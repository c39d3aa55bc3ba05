//! JSON form of a Lie-Rinehart bundle:
//! `{name?, algebra, lie, action: [[i, j, v]], anchor: [[j, i, v]], module?}`.
//! `action` lists e_i . x_j as an element of L, `anchor` lists rho(x_j)(e_i) as an
//! element of A, and `module` gives `{basis, a_action, phi}` with entries
//! `[op, k, v]` meaning op applied to the k-th module basis vector.
//! Omitted entries are zero.

use serde::{Deserialize, Serialize};

use super::{LRData, Representation};
use crate::algebra::linalg::{zero_vec, Mat, Vector};
use crate::algebra::schema::{from_sparse, to_sparse, AlgebraJson, Entry};
use crate::algebra::BasisElem;
use crate::error::{Error, Result};
use crate::scalar::Prime;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub basis: Vec<BasisElem>,
    pub a_action: Vec<Entry>,
    pub phi: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LrJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub algebra: AlgebraJson,
    pub lie: AlgebraJson,
    pub action: Vec<Entry>,
    pub anchor: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleJson>,
}

fn nonzero_entries(cols: impl Iterator<Item = (usize, usize, Vector)>) -> Vec<Entry> {
    cols.filter_map(|(i, j, v)| {
        let s = to_sparse(&v);
        (!s.is_empty()).then_some((i, j, s))
    })
    .collect()
}

/// Operators from `[op, k, v]` entries: column k of operator op is v.
fn operators(p: Prime, count: usize, dim: usize, list: &[Entry]) -> Result<Vec<Mat>> {
    let mut cols = vec![vec![zero_vec(dim); dim]; count];
    for (op, k, s) in list {
        if *op >= count || *k >= dim {
            return Err(Error::Parse(format!("entry ({op}, {k}) out of range")));
        }
        cols[*op][*k] = from_sparse(p, dim, s)?;
    }
    Ok(cols.iter().map(|c| Mat::from_columns(p, dim, c)).collect())
}

fn operator_entries(ops: &[Mat]) -> Vec<Entry> {
    nonzero_entries(ops.iter().enumerate().flat_map(|(i, m)| (0..m.cols()).map(move |k| (i, k, m.column(k)))))
}

impl LrJson {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_data(d: &LRData, m: Option<&Representation>) -> Self {
        let (na, nl) = (d.a.dim(), d.l.dim());
        let action = nonzero_entries((0..na).flat_map(|i| (0..nl).map(move |j| (i, j, d.action[i][j].clone()))));
        LrJson {
            name: Some(d.name.clone()),
            algebra: AlgebraJson::from_superalgebra(&d.a),
            lie: AlgebraJson::from_lie(&d.l, d.pmap.as_ref()),
            action,
            anchor: operator_entries(&d.anchor),
            module: m.map(|m| ModuleJson {
                basis: m.basis.clone(),
                a_action: operator_entries(&m.a_action),
                phi: operator_entries(&m.phi),
            }),
        }
    }

    pub fn to_data(&self) -> Result<(LRData, Option<Representation>)> {
        let a = self.algebra.to_superalgebra()?;
        let (l, pm) = self.lie.to_lie()?;
        let p = a.prime();
        let (na, nl) = (a.dim(), l.dim());
        let mut action = vec![vec![zero_vec(nl); nl]; na];
        for (i, j, s) in &self.action {
            if *i >= na || *j >= nl {
                return Err(Error::Parse(format!("action entry ({i}, {j}) out of range")));
            }
            action[*i][*j] = from_sparse(p, nl, s)?;
        }
        let anchor = operators(p, nl, na, &self.anchor)?;
        let name = self.name.clone().unwrap_or_else(|| "input".into());
        let d = LRData::new(name, a, l, pm, action, anchor)?;
        let m = match &self.module {
            None => None,
            Some(mj) => {
                let n = mj.basis.len();
                Some(Representation {
                    basis: mj.basis.clone(),
                    a_action: operators(p, na, n, &mj.a_action)?,
                    phi: operators(p, nl, n, &mj.phi)?,
                })
            }
        };
        Ok((d, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lierinehart::{builtin, BuiltinParams};

    #[test]
    fn round_trip_builtins() {
        let p = Prime::new(3).unwrap();
        for name in ["example-2-1", "example-2-2", "witt(2)"] {
            let (d, m) = builtin(name, p, BuiltinParams::default()).unwrap();
            let j = LrJson::from_data(&d, m.as_ref());
            let text = j.to_json();
            let back = LrJson::parse(&text).unwrap();
            assert_eq!(back, j);
            let (d2, m2) = back.to_data().unwrap();
            assert_eq!(d2, d);
            assert_eq!(m2, m);
            assert_eq!(LrJson::from_data(&d2, m2.as_ref()).to_json(), text);
        }
    }

    #[test]
    fn rejects_out_of_range_action() {
        let p = Prime::new(3).unwrap();
        let (d, _) = builtin("example-2-1", p, BuiltinParams::default()).unwrap();
        let mut j = LrJson::from_data(&d, None);
        j.action.push((5, 0, vec![(0, 1)]));
        assert!(matches!(j.to_data(), Err(Error::Parse(_))));
    }
}
