//! The mu_{k,i} coefficients of Gamma_{k,2}, their closed forms, and the
//! reduced coefficients lambda_i modulo p.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{binom, rat, rat_mod_p, Fp, Prime, Rat};
use crate::smash::{gamma_recursive, y_chain};
use crate::superpoly::{ParityCase, SuperPoly};

fn sign(e: usize) -> Rat {
    if e % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Rows mu_{k,0..=k-2} for 3 <= k <= k_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuTable {
    k_max: usize,
    rows: Vec<Vec<Rat>>,
}

impl MuTable {
    pub fn build(k_max: usize) -> Self {
        let half = rat(1, 2);
        let mut rows: Vec<Vec<Rat>> = vec![vec![half.clone(), half.clone()]];
        for k in 4..=k_max {
            let prev = rows.last().unwrap();
            let mut row = Vec::with_capacity(k - 1);
            row.push(&prev[0] + sign(k));
            for i in 1..=k - 3 {
                row.push(&prev[i - 1] + sign(i) * &prev[i]);
            }
            row.push(half.clone());
            rows.push(row);
        }
        MuTable { k_max: k_max.max(3), rows }
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn row(&self, k: usize) -> Option<&[Rat]> {
        if k < 3 {
            return None;
        }
        self.rows.get(k - 3).map(|r| r.as_slice())
    }

    pub fn get(&self, k: usize, i: usize) -> Result<Rat> {
        self.row(k)
            .and_then(|r| r.get(i))
            .cloned()
            .ok_or_else(|| Error::IndexOutOfRange(format!("mu({k},{i})")))
    }
}

pub fn mu(k: usize, i: usize) -> Result<Rat> {
    if k < 3 || i + 2 > k {
        return Err(Error::IndexOutOfRange(format!("mu({k},{i})")));
    }
    MuTable::build(k).get(k, i)
}

pub fn mu_row(k: usize) -> Result<Vec<Rat>> {
    if k < 3 {
        return Err(Error::IndexOutOfRange(format!("mu row {k}")));
    }
    Ok(MuTable::build(k).row(k).unwrap().to_vec())
}

fn b(n: i64, k: i64) -> Rat {
    if n < 0 {
        return Rat::zero();
    }
    Rat::from_integer(binom(n as u64, k))
}

/// Binomial closed forms, split by the parities of k and i.
pub fn mu_closed(k: usize, i: usize) -> Result<Rat> {
    if k < 4 || i + 2 > k {
        return Err(Error::IndexOutOfRange(format!("mu_closed({k},{i})")));
    }
    let half = rat(1, 2);
    let j = (i / 2) as i64;
    let v = if k % 2 == 0 {
        let r = (k as i64 - 2) / 2;
        if i % 2 == 0 {
            &half * b(r, j) + b(r - 1, j)
        } else {
            -b(r - 1, j + 1)
        }
    } else {
        let r = (k as i64 - 3) / 2;
        if i % 2 == 0 {
            &half * b(r, j)
        } else {
            &half * b(r, j) + b(r, j + 1)
        }
    };
    Ok(v)
}

/// Coefficients after merging Y_i Y_{n-i} with Y_{n-i} Y_i, n = k - 2,
/// using Y_i Y_j = (-1)^{ij} Y_j Y_i. Index i runs over 0..=n/2.
pub fn simplified_mu(k: usize) -> Result<Vec<Rat>> {
    let row = mu_row(k)?;
    let n = k - 2;
    let mut out = Vec::new();
    for i in 0..=n / 2 {
        if 2 * i == n {
            out.push(row[i].clone());
        } else {
            out.push(&row[i] + sign(i * (n - i)) * &row[n - i]);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaVector {
    pub p: u64,
    pub entries: Vec<Fp>,
    /// Entries from the closed form; equal to `entries` when the closed form holds.
    pub closed_form: Vec<Fp>,
}

impl LambdaVector {
    pub fn routes_agree(&self) -> bool {
        self.entries == self.closed_form
    }

    pub fn values(&self) -> Vec<u64> {
        self.entries.iter().map(|f| f.value()).collect()
    }
}

pub fn lambda_closed(p: Prime) -> Vec<Fp> {
    let pv = p.get() as usize;
    (0..pv)
        .map(|i| {
            let v: i64 = if i == pv - 1 {
                if ((pv - 1) / 2) % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else if i % 2 == 0 {
                if (i / 2) % 2 == 0 {
                    2
                } else {
                    -2
                }
            } else if ((i - 1) / 2) % 2 == 0 {
                2
            } else {
                -2
            };
            p.elem(p.from_i64(v))
        })
        .collect()
}

pub fn lambda_vector(p: Prime) -> LambdaVector {
    let pv = p.get() as usize;
    let row = mu_row(2 * pv).expect("2p >= 6");
    let entries = (0..pv)
        .map(|i| {
            let r = if i == pv - 1 {
                row[i].clone()
            } else {
                &row[i] + sign(i) * &row[2 * pv - 2 - i]
            };
            rat_mod_p(&r, p.get()).expect("denominators are powers of 2")
        })
        .collect();
    LambdaVector { p: p.get(), entries, closed_form: lambda_closed(p) }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gamma2Decomposition {
    pub k: usize,
    pub mu: Vec<Rat>,
    pub simplified: Vec<Rat>,
    pub verified: bool,
}

/// Checks Gamma_{k,2} = sum_i mu_{k,i} Y_i Y_{k-2-i} in the free model, Y_i = (x0 delta)^i (x0).
pub fn gamma2_decompose(k: usize) -> Result<Gamma2Decomposition> {
    let case = ParityCase::EVEN_ODD;
    let mu = mu_row(k)?;
    let ys: Vec<SuperPoly<Rat>> = y_chain(k - 2, case).iter().map(|y| y.to_rat()).collect();
    let mut rhs = SuperPoly::<Rat>::zero(case);
    for (i, c) in mu.iter().enumerate() {
        rhs = &rhs + &(&ys[i] * &ys[k - 2 - i]).scale(c);
    }
    let lhs = gamma_recursive(k as u32, 2, case).to_rat();
    Ok(Gamma2Decomposition { k, simplified: simplified_mu(k)?, mu, verified: lhs == rhs })
}

/// mu_{2p,i} reduced by the mod-p closed form.
pub fn mu_mod_p_closed(p: Prime, i: usize) -> Result<Fp> {
    let j = (i / 2) as i64;
    let sj: i64 = if j % 2 == 0 { 1 } else { -1 };
    let v = if i % 2 == 0 {
        rat(2 * j + 3, 2) * Rat::from_integer(BigInt::from(sj))
    } else {
        Rat::from_integer(BigInt::from((j + 2) * sj))
    };
    rat_mod_p(&v, p.get())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rats(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn base_values() {
        assert_eq!(mu(3, 0).unwrap(), rat(1, 2));
        assert_eq!(mu(3, 1).unwrap(), rat(1, 2));
        for k in 4..=12 {
            assert_eq!(mu(k, k - 2).unwrap(), rat(1, 2));
        }
        assert!(matches!(mu(2, 0), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(mu(5, 4), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn rows_by_hand() {
        assert_eq!(mu_row(5).unwrap(), rats(&[(1, 2), (3, 2), (1, 2), (1, 2)]));
        assert_eq!(mu_row(6).unwrap(), rats(&[(3, 2), (-1, 1), (2, 1), (0, 1), (1, 2)]));
    }

    #[test]
    fn simplified_matches_displays() {
        assert_eq!(simplified_mu(5).unwrap(), rats(&[(1, 1), (2, 1)]));
        assert_eq!(simplified_mu(6).unwrap(), rats(&[(2, 1), (-1, 1), (2, 1)]));
        assert_eq!(
            simplified_mu(10).unwrap(),
            rats(&[(2, 1), (-3, 1), (8, 1), (-2, 1), (6, 1)])
        );
    }

    #[test]
    fn closed_forms() {
        assert_eq!(mu_closed(5, 0).unwrap(), rat(1, 2));
        assert_eq!(mu_closed(6, 1).unwrap(), rat(-1, 1));
        let t = MuTable::build(16);
        for k in 4..=16 {
            for i in 0..=k - 2 {
                assert_eq!(mu_closed(k, i).unwrap(), t.get(k, i).unwrap(), "k={k} i={i}");
            }
        }
        assert!(mu_closed(3, 0).is_err());
    }

    #[test]
    fn lambda_tables() {
        let want: [(u64, &[u64]); 3] =
            [(3, &[2, 2, 2]), (5, &[2, 2, 3, 3, 1]), (7, &[2, 2, 5, 5, 2, 2, 6])];
        for (p, w) in want {
            let l = lambda_vector(Prime::new(p).unwrap());
            assert_eq!(l.values(), w);
            assert!(l.routes_agree());
        }
        for p in [11, 13, 17, 19] {
            assert!(lambda_vector(Prime::new(p).unwrap()).routes_agree());
        }
    }

    #[test]
    fn reduced_mu_mod_p() {
        for p in [3u64, 5, 7] {
            let pr = Prime::new(p).unwrap();
            let row = mu_row(2 * p as usize).unwrap();
            for (i, m) in row.iter().enumerate() {
                assert_eq!(rat_mod_p(m, p).unwrap(), mu_mod_p_closed(pr, i).unwrap(), "p={p} i={i}");
            }
        }
    }

    #[test]
    fn gamma2_in_free_model() {
        for k in 3..=14 {
            let d = gamma2_decompose(k).unwrap();
            assert!(d.verified, "k={k}");
        }
        let d = gamma2_decompose(3).unwrap();
        assert_eq!(gamma_recursive(3, 2, ParityCase::EVEN_ODD).to_string(), "x0^2*x1");
        assert_eq!(d.mu, rats(&[(1, 2), (1, 2)]));
    }
}
