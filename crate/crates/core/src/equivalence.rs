//! Equivalence of linearized Reed-Solomon codes through their norm sets.

use serde::Serialize;

use crate::codes::{distinct_norms, LrsParams};
use crate::error::{Error, Result};
use crate::ff::{Elt, FieldTower};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reason {
    NormSetMatch,
    NormSetMismatch,
    TwistMismatch,
    CrossTwistHighK,
}

/// `xi` scales the first norm set onto the second; `sigma[i]` is the index `j`
/// with `N(beta_j) = xi N(alpha_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub xi: Elt,
    pub sigma: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivDecision {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub reason: Reason,
    /// Twists after normalization, in the order (P, Q).
    pub twists: (u32, u32),
}

/// `{N_s(alpha_i)}` in input order; errors on a zero entry or repeated norm.
pub fn norm_set(tower: &FieldTower, alpha: &[Elt], s: i64) -> Result<Vec<Elt>> {
    for &a in alpha {
        tower.check(a)?;
    }
    distinct_norms(tower, alpha, s)
}

/// The `xi` in F_q^* with `xi A = B` as sets and the smallest polynomial encoding
/// (the smallest residue when q is prime).
pub fn scaled_match(tower: &FieldTower, a: &[Elt], b: &[Elt]) -> Result<Option<Elt>> {
    if a.len() != b.len() {
        return Err(Error::InvalidParameter(format!(
            "norm sets have different sizes ({} and {})",
            a.len(),
            b.len()
        )));
    }
    for &x in a.iter().chain(b) {
        if x.is_zero() || !tower.in_subfield(x) {
            return Err(Error::InvalidParameter(format!(
                "{} is not an element of F_q^*",
                tower.format(x)
            )));
        }
    }
    let mut target = b.to_vec();
    target.sort_unstable();
    let mut candidates = tower.subfield_elements();
    candidates.sort_by_key(|&x| tower.poly_int(x));
    Ok(candidates.into_iter().find(|&xi| {
        let mut scaled: Vec<Elt> = a.iter().map(|&x| tower.mul(xi, x)).collect();
        scaled.sort_unstable();
        scaled == target
    }))
}

/// Rewrites a twist `s > m/2` as `-s'` with `s' < m/2`, mapping
/// `alpha -> (alpha^-1)^(q^(-s'(k-2)))` and `beta -> beta^(q^(-s'(k-1)))`.
pub fn normalize_twist(tower: &FieldTower, params: &LrsParams) -> Result<LrsParams> {
    let m = tower.m();
    let r = tower.reduce_twist(params.s)?;
    if m <= 2 || 2 * r < m {
        return Ok(LrsParams {
            s: if m <= 2 { 1 } else { r as i64 },
            ..params.clone()
        });
    }
    let s = (m - r) as i64;
    let k = params.k as i64;
    let alpha = params
        .alpha
        .iter()
        .map(|&a| {
            let inv = tower.inv(a).ok_or(Error::ZeroElement("alpha"))?;
            Ok(frobenius_signed(tower, inv, -s * (k - 2)))
        })
        .collect::<Result<Vec<_>>>()?;
    let beta = params
        .beta
        .iter()
        .map(|&b| frobenius_signed(tower, b, -s * (k - 1)))
        .collect();
    Ok(LrsParams {
        k: params.k,
        s,
        alpha,
        beta,
    })
}

/// `x^(q^e)` for any integer `e`.
fn frobenius_signed(tower: &FieldTower, x: Elt, e: i64) -> Elt {
    tower.frobenius(x, e, 1)
}

/// Decides equivalence of two LRS codes with blocks of length m over the same tower.
pub fn lrs_equivalent(tower: &FieldTower, p: &LrsParams, q: &LrsParams) -> Result<EquivDecision> {
    p.validate(tower)?;
    q.validate(tower)?;
    let m = tower.m() as usize;
    if p.t() != q.t() {
        return Err(Error::InvalidParameter(format!(
            "codes have different numbers of blocks ({} and {})",
            p.t(),
            q.t()
        )));
    }
    if p.k != q.k {
        return Err(Error::InvalidParameter(format!(
            "codes have different dimensions ({} and {})",
            p.k, q.k
        )));
    }
    let k = p.k;
    if k < 2 || k > m {
        return Err(Error::InvalidParameter(format!(
            "the norm-set criterion needs 1 < k <= m (got k = {k}, m = {m})"
        )));
    }
    if p.n() != m || q.n() != m {
        return Err(Error::InvalidParameter(format!(
            "the norm-set criterion needs blocks of full length m = {m}"
        )));
    }
    let np = normalize_twist(tower, p)?;
    let nq = normalize_twist(tower, q)?;
    let twists = (np.s as u32, nq.s as u32);
    if np.s != nq.s {
        let (verdict, reason) = if k + 2 <= m {
            (Verdict::NotEquivalent, Reason::TwistMismatch)
        } else {
            (Verdict::Undetermined, Reason::CrossTwistHighK)
        };
        return Ok(EquivDecision {
            verdict,
            witness: None,
            reason,
            twists,
        });
    }
    let a = norm_set(tower, &np.alpha, np.s)?;
    let b = norm_set(tower, &nq.alpha, nq.s)?;
    Ok(match scaled_match(tower, &a, &b)? {
        Some(xi) => {
            let sigma = a
                .iter()
                .map(|&x| {
                    let y = tower.mul(xi, x);
                    b.iter().position(|&z| z == y).expect("matched sets")
                })
                .collect();
            EquivDecision {
                verdict: Verdict::Equivalent,
                witness: Some(Witness { xi, sigma }),
                reason: Reason::NormSetMatch,
                twists,
            }
        }
        None => EquivDecision {
            verdict: Verdict::NotEquivalent,
            witness: None,
            reason: Reason::NormSetMismatch,
            twists,
        },
    })
}
