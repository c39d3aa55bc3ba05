//! JSON form of structure-constant algebras:
//! `{p, basis: [{name, parity}], product|bracket: [[i, j, [[k, c], ...]], ...], unit?, pmap?}`.
//! Coefficients are written as residues in [0, p); only nonzero entries appear,
//! and brackets are listed for i <= j.

use serde::{Deserialize, Serialize};

use super::lie::{LieSuperalgebra, PMap};
use super::linalg::{zero_vec, Vector};
use super::superalg::{BasisElem, SuperAlgebra};
use crate::error::{Error, Result};
use crate::scalar::Prime;

/// Sparse vector as (index, coefficient) pairs.
pub type Sparse = Vec<(usize, i64)>;
pub type Entry = (usize, usize, Sparse);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub p: u64,
    pub basis: Vec<BasisElem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmap: Option<Vec<(String, Sparse)>>,
}

pub fn to_sparse(v: &[u64]) -> Sparse {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c as i64)).collect()
}

pub fn from_sparse(p: Prime, n: usize, s: &Sparse) -> Result<Vector> {
    let mut v = zero_vec(n);
    for &(k, c) in s {
        if k >= n {
            return Err(Error::Parse(format!("index {k} out of range for dimension {n}")));
        }
        v[k] = p.add(v[k], p.from_i64(c));
    }
    Ok(v)
}

fn entries(p: Prime, n: usize, list: &[Entry]) -> Result<Vec<(usize, usize, Vector)>> {
    list.iter()
        .map(|(i, j, s)| {
            if *i >= n || *j >= n {
                return Err(Error::Parse(format!("entry ({i}, {j}) out of range")));
            }
            Ok((*i, *j, from_sparse(p, n, s)?))
        })
        .collect()
}

impl AlgebraJson {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_superalgebra(a: &SuperAlgebra) -> Self {
        let n = a.dim();
        let mut product = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let s = to_sparse(&a.table()[i][j]);
                if !s.is_empty() {
                    product.push((i, j, s));
                }
            }
        }
        AlgebraJson {
            p: a.prime().get(),
            basis: a.basis().to_vec(),
            product: Some(product),
            bracket: None,
            unit: a.unit_index().map(|u| a.basis()[u].name.clone()),
            pmap: None,
        }
    }

    pub fn to_superalgebra(&self) -> Result<SuperAlgebra> {
        let p = Prime::new(self.p)?;
        let n = self.basis.len();
        let list = self.product.as_ref().ok_or_else(|| Error::Parse("missing \"product\"".into()))?;
        let mut table = vec![vec![zero_vec(n); n]; n];
        for (i, j, v) in entries(p, n, list)? {
            table[i][j] = v;
        }
        let unit = match &self.unit {
            None => None,
            Some(u) => Some(
                self.basis.iter().position(|b| &b.name == u).ok_or_else(|| Error::Parse(format!("unknown unit {u}")))?,
            ),
        };
        SuperAlgebra::new(p, self.basis.clone(), table, unit)
    }

    pub fn from_lie(l: &LieSuperalgebra, pm: Option<&PMap>) -> Self {
        let n = l.dim();
        let mut bracket = Vec::new();
        for i in 0..n {
            for j in i..n {
                let s = to_sparse(&l.table()[i][j]);
                if !s.is_empty() {
                    bracket.push((i, j, s));
                }
            }
        }
        AlgebraJson {
            p: l.prime().get(),
            basis: l.basis().to_vec(),
            product: None,
            bracket: Some(bracket),
            unit: None,
            pmap: pm.map(|m| m.images().into_iter().map(|(j, v)| (l.basis()[j].name.clone(), to_sparse(&v))).collect()),
        }
    }

    pub fn to_lie(&self) -> Result<(LieSuperalgebra, Option<PMap>)> {
        let p = Prime::new(self.p)?;
        let n = self.basis.len();
        let list = self.bracket.as_ref().ok_or_else(|| Error::Parse("missing \"bracket\"".into()))?;
        let l = LieSuperalgebra::from_upper(p, self.basis.clone(), &entries(p, n, list)?)?;
        let pm = match &self.pmap {
            None => None,
            Some(list) => {
                let mut images = Vec::new();
                for (name, s) in list {
                    let j = l.index_of(name).ok_or_else(|| Error::Parse(format!("unknown basis name {name}")))?;
                    images.push((j, from_sparse(p, n, s)?));
                }
                Some(PMap::new(&l, images)?)
            }
        };
        Ok((l, pm))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lie::jacobson_solve;
    use crate::algebra::superalg::build_grassmann;

    #[test]
    fn grassmann_round_trip_is_bit_exact() {
        let a = build_grassmann(3, Prime::new(5).unwrap()).unwrap();
        let s = AlgebraJson::from_superalgebra(&a).to_json();
        let parsed = AlgebraJson::parse(&s).unwrap();
        assert_eq!(parsed.to_json(), s);
        assert_eq!(parsed.to_superalgebra().unwrap(), a);
    }

    #[test]
    fn lie_with_pmap_round_trip() {
        let s = r#"{"p":3,"basis":[{"name":"x1","parity":"even"},{"name":"x2","parity":"even"},{"name":"x3","parity":"odd"}],"bracket":[[0,2,[[2,1]]],[1,2,[[2,2]]]],"pmap":[["x1",[[0,1]]],["x2",[[0,2]]]]}"#;
        let j = AlgebraJson::parse(s).unwrap();
        assert_eq!(j.to_json(), s);
        let (l, pm) = j.to_lie().unwrap();
        assert_eq!(pm.as_ref(), Some(&jacobson_solve(&l).unwrap().particular));
        assert_eq!(AlgebraJson::from_lie(&l, pm.as_ref()).to_json(), s);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(AlgebraJson::parse("{"), Err(Error::Json(_))));
        let s = r#"{"p":3,"basis":[{"name":"x","parity":"even"}],"bracket":[[0,4,[]]]}"#;
        assert!(matches!(AlgebraJson::parse(s).unwrap().to_lie(), Err(Error::Parse(_))));
        let s = r#"{"p":4,"basis":[],"bracket":[]}"#;
        assert!(matches!(AlgebraJson::parse(s).unwrap().to_lie(), Err(Error::NotPrime(4))));
    }
}
