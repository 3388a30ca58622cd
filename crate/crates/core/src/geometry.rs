//! q-systems: the geometric view of non-degenerate codes, hyperplane distance
//! formulas and brute-force searches over isometries and stabilizers.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::codes::BlockCode;
use crate::error::{Error, Result};
use crate::ff::{fq_dim, fq_dim_vectors, Elt, FieldTower};
use crate::matrix::{dot, Matrix, RowSpace};

/// Largest subspace (in elements) whose element list is materialized.
pub const DEFAULT_SPACE_CAP: u128 = 1 << 16;

/// Default bound on the size of brute-force searches.
pub const DEFAULT_SEARCH_LIMIT: u128 = 1 << 24;

/// A tuple of F_q-subspaces `U_1, ..., U_t` of `F_{q^m}^k`.
#[derive(Clone, Debug)]
pub struct QSystem {
    tower: Arc<FieldTower>,
    k: usize,
    bases: Vec<Vec<Vec<Elt>>>,
    elements: Vec<Option<Vec<Vec<Elt>>>>,
}

impl QSystem {
    pub fn new(tower: Arc<FieldTower>, k: usize, bases: Vec<Vec<Vec<Elt>>>) -> Result<Self> {
        if bases.is_empty() || bases.iter().any(Vec::is_empty) || k == 0 {
            return Err(Error::InvalidParameter(
                "a system needs k >= 1 and at least one nonzero subspace".into(),
            ));
        }
        for basis in &bases {
            for v in basis {
                if v.len() != k {
                    return Err(Error::InvalidParameter(format!(
                        "system vectors must have length {k}"
                    )));
                }
                for &x in v {
                    tower.check(x)?;
                }
            }
        }
        for (block, basis) in bases.iter().enumerate() {
            if fq_dim_vectors(&tower, k, basis.iter().map(Vec::as_slice)) != basis.len() {
                return Err(Error::Degenerate { block });
            }
        }
        let all = Matrix::from_rows(bases.iter().flatten().cloned().collect());
        let rank = all.rank(&tower);
        if rank != k {
            return Err(Error::RankDeficient { rank, k });
        }
        let elements = bases
            .iter()
            .map(|b| {
                let size = (tower.q() as u128).saturating_pow(b.len() as u32);
                (size <= DEFAULT_SPACE_CAP).then(|| span_elements(&tower, b))
            })
            .collect();
        Ok(QSystem {
            tower,
            k,
            bases,
            elements,
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.bases.len()
    }

    /// `n_i = dim U_i`.
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, i: usize) -> &[Vec<Elt>] {
        &self.bases[i]
    }

    /// Every element of `U_i`, when it was small enough to list.
    pub fn elements(&self, i: usize) -> Option<&[Vec<Elt>]> {
        self.elements[i].as_deref()
    }

    /// `dim_{F_q}(U_i ∩ v^⊥)`, where `v^⊥ = { u : sum v_j u_j = 0 }`.
    pub fn intersection_dim(&self, i: usize, v: &[Elt]) -> usize {
        let t = &*self.tower;
        match &self.elements[i] {
            Some(elems) => {
                let zeros = elems.iter().filter(|u| dot(v, u, t).is_zero()).count() as u64;
                log_q(zeros, t.q())
            }
            None => {
                let images: Vec<Elt> = self.bases[i].iter().map(|b| dot(v, b, t)).collect();
                self.bases[i].len() - fq_dim(t, &images)
            }
        }
    }

    /// Generator matrix whose block `i` has the basis of `U_i` as columns.
    pub fn to_code(&self) -> Result<BlockCode> {
        let n: usize = self.bases.iter().map(Vec::len).sum();
        let cols: Vec<&Vec<Elt>> = self.bases.iter().flatten().collect();
        let g = Matrix::from_fn(self.k, n, |r, c| cols[c][r]);
        BlockCode::new(self.tower.clone(), self.dims(), g)
    }
}

fn log_q(mut n: u64, q: u64) -> usize {
    let mut d = 0;
    while n > 1 {
        debug_assert_eq!(n % q, 0, "subspace sizes are powers of q");
        n /= q;
        d += 1;
    }
    d
}

/// All F_q-linear combinations of the basis vectors.
pub fn span_elements(tower: &FieldTower, basis: &[Vec<Elt>]) -> Vec<Vec<Elt>> {
    let len = basis.first().map_or(0, Vec::len);
    let base = tower.subfield_with_zero();
    let mut out = vec![vec![Elt::ZERO; len]];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * base.len());
        for &c in &base {
            for u in &out {
                next.push(
                    u.iter()
                        .zip(b)
                        .map(|(&x, &y)| tower.add(x, tower.mul(c, y)))
                        .collect(),
                );
            }
        }
        out = next;
    }
    out
}

/// The system spanned by the block columns of a non-degenerate code.
pub fn system_from_code(code: &BlockCode) -> Result<QSystem> {
    code.require_non_degenerate()?;
    let bases = (0..code.t())
        .map(|i| {
            let g = code.block(i);
            (0..g.cols()).map(|j| g.col(j)).collect()
        })
        .collect();
    QSystem::new(code.tower().clone(), code.k(), bases)
}

/// `N - sum_i dim(U_i ∩ v^⊥)`, the weight of the codeword `vG`.
pub fn weight_geometric(system: &QSystem, v: &[Elt]) -> Result<usize> {
    if v.len() != system.k {
        return Err(Error::InvalidParameter(format!(
            "message must have length {}",
            system.k
        )));
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroElement("message vector"));
    }
    let n: usize = system.dims().iter().sum();
    let meet: usize = (0..system.t()).map(|i| system.intersection_dim(i, v)).sum();
    Ok(n - meet)
}

/// Number of hyperplanes of `F_{q^m}^k`, `(q^(mk) - 1) / (q^m - 1)`.
pub fn hyperplane_count(tower: &FieldTower, k: usize) -> u128 {
    let qm = tower.size() as u128;
    (0..k as u32).map(|i| qm.saturating_pow(i)).fold(0u128, u128::saturating_add)
}

/// Calls `f` with one normal vector per hyperplane, normalized so that the first
/// nonzero coordinate is 1.
pub fn for_each_hyperplane(tower: &FieldTower, k: usize, mut f: impl FnMut(&[Elt])) {
    let size = tower.size();
    for lead in 0..k {
        let mut v = vec![Elt::ZERO; k];
        v[lead] = Elt::ONE;
        let free = k - lead - 1;
        let mut digits = vec![0u32; free];
        loop {
            f(&v);
            let mut i = 0;
            loop {
                if i == free {
                    break;
                }
                digits[i] = (digits[i] + 1) % size;
                v[lead + 1 + i] = tower.from_index(digits[i]).expect("index in range");
                if digits[i] != 0 {
                    break;
                }
                i += 1;
            }
            if i == free {
                break;
            }
        }
    }
}

/// `d = N - max_H sum_i dim(U_i ∩ H)` over all F_{q^m}-hyperplanes H.
pub fn min_distance_geometric(system: &QSystem, cap: u128) -> Result<usize> {
    let count = hyperplane_count(&system.tower, system.k);
    if count > cap {
        return Err(Error::cap("hyperplanes to sweep", count, cap));
    }
    let n: usize = system.dims().iter().sum();
    if system.k == 1 {
        // the only hyperplane of F_{q^m} is {0}
        return Ok(n);
    }
    let mut best = 0;
    for_each_hyperplane(&system.tower, system.k, |v| {
        let meet: usize = (0..system.t()).map(|i| system.intersection_dim(i, v)).sum();
        best = best.max(meet);
    });
    Ok(n - best)
}

/// Search-space bound for brute-force routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchLimits {
    pub total: u128,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            total: DEFAULT_SEARCH_LIMIT,
        }
    }
}

/// The sum-rank isometry `x -> (gamma_i x_{sigma(i)} A_i)_i`, with row-vector blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isometry {
    pub gamma: Vec<Elt>,
    pub a: Vec<Matrix>,
    pub sigma: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Equivalence {
    Equivalent(Isometry),
    NotEquivalent,
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_))
    }
}

/// `|GL(n, q)|`.
pub fn gl_order(q: u128, n: u32) -> u128 {
    let qn = q.saturating_pow(n);
    (0..n).fold(1u128, |acc, i| acc.saturating_mul(qn - q.saturating_pow(i)))
}

/// Invertible n x n matrices over F_q whose first nonzero entry is 1, i.e. one
/// representative per F_q^*-scalar class.
pub fn gl_mod_scalars(tower: &FieldTower, n: usize, limits: SearchLimits) -> Result<Vec<Matrix>> {
    let base = tower.subfield_with_zero();
    let q = base.len() as u128;
    let total = q.saturating_pow((n * n) as u32);
    if total > limits.total {
        return Err(Error::cap(format!("{n}x{n} matrices over F_q"), total, limits.total));
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; n * n];
    loop {
        if let Some(first) = digits.iter().position(|&d| d != 0) {
            // base[1] is 1
            if digits[first] == 1 {
                let a = Matrix::from_fn(n, n, |i, j| base[digits[i * n + j]]);
                if a.is_invertible(tower) {
                    out.push(a);
                }
            }
        }
        let mut i = 0;
        while i < digits.len() {
            digits[i] = (digits[i] + 1) % base.len();
            if digits[i] != 0 {
                break;
            }
            i += 1;
        }
        if i == digits.len() {
            return Ok(out);
        }
    }
}

/// Generator of the image of `code` under `iso`.
pub fn apply_isometry(code: &BlockCode, iso: &Isometry) -> Result<Matrix> {
    let t = &**code.tower();
    if iso.gamma.len() != code.t() || iso.a.len() != code.t() || iso.sigma.len() != code.t() {
        return Err(Error::InvalidParameter("isometry does not match the block count".into()));
    }
    let mut blocks = Vec::with_capacity(code.t());
    for i in 0..code.t() {
        let src = code.block(iso.sigma[i]);
        if iso.a[i].rows() != src.cols() || !iso.a[i].is_invertible(t) {
            return Err(Error::InvalidParameter(format!(
                "A_{i} is not an invertible matrix of the right size"
            )));
        }
        if iso.a[i].entries().iter().any(|&x| !x.is_zero() && !t.in_subfield(x)) {
            return Err(Error::InvalidParameter(format!("A_{i} has entries outside F_q")));
        }
        if iso.gamma[i].is_zero() {
            return Err(Error::ZeroElement("gamma"));
        }
        blocks.push(src.mul(&iso.a[i], t).scale(iso.gamma[i], t));
    }
    Ok(concat_blocks(&blocks))
}

fn concat_blocks(blocks: &[Matrix]) -> Matrix {
    let rows = blocks[0].rows();
    let rows_vec = (0..rows)
        .map(|r| blocks.iter().flat_map(|b| b.row(r).to_vec()).collect())
        .collect();
    Matrix::from_rows(rows_vec)
}

/// Whether `iso` maps the row space of `c` onto the row space of `d`.
pub fn verify_isometry(c: &BlockCode, d: &BlockCode, iso: &Isometry) -> bool {
    if c.k() != d.k() || c.length() != d.length() {
        return false;
    }
    match apply_isometry(c, iso) {
        Ok(image) => RowSpace::new(d.generator(), d.tower()).equals_span_of(&image, d.tower()),
        Err(_) => false,
    }
}

/// Exhaustive search for a sum-rank isometry mapping `c` onto `d`.
///
/// Without loss of generality `gamma_1 = 1` (the codes are F_{q^m}-linear) and
/// each `A_i` is taken up to an F_q^* scalar (absorbed into `gamma_i`).
pub fn brute_force_equivalent(c: &BlockCode, d: &BlockCode, limits: SearchLimits) -> Result<Equivalence> {
    let tower = c.tower();
    if **tower != **d.tower() {
        return Err(Error::InvalidParameter("codes live over different towers".into()));
    }
    let t = c.t();
    let mut profile_c = c.blocks().to_vec();
    let mut profile_d = d.blocks().to_vec();
    profile_c.sort_unstable();
    profile_d.sort_unstable();
    if c.k() != d.k() || profile_c != profile_d {
        return Ok(Equivalence::NotEquivalent);
    }
    let sigmas: Vec<Vec<usize>> = (0..t)
        .permutations(t)
        .filter(|p| (0..t).all(|i| c.blocks()[p[i]] == d.blocks()[i]))
        .collect();

    let mut reps: Vec<Vec<Matrix>> = Vec::new();
    let mut distinct: Vec<usize> = d.blocks().to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for &n in &distinct {
        reps.push(gl_mod_scalars(tower, n, limits)?);
    }
    let reps_for = |n: usize| &reps[distinct.binary_search(&n).unwrap()];

    let units = tower.group_order() as u128;
    let mut needed = sigmas.len() as u128;
    for (i, &n) in d.blocks().iter().enumerate() {
        needed = needed.saturating_mul(reps_for(n).len() as u128);
        if i > 0 {
            needed = needed.saturating_mul(units);
        }
    }
    if needed > limits.total {
        return Err(Error::cap("isometries to search", needed, limits.total));
    }

    let target = RowSpace::new(d.generator(), tower);
    let gammas: Vec<Elt> = tower.nonzero_elements().collect();
    for sigma in &sigmas {
        // products G_{sigma(i)} A for every candidate A
        let products: Vec<Vec<Matrix>> = (0..t)
            .map(|i| {
                let src = c.block(sigma[i]);
                reps_for(d.blocks()[i])
                    .iter()
                    .map(|a| src.mul(a, tower))
                    .collect()
            })
            .collect();
        let mut choice = vec![(0usize, 0usize); t];
        if let Some(found) = search_blocks(tower, &target, &products, &gammas, &mut choice, 0, c.k()) {
            let iso = Isometry {
                gamma: found.iter().map(|&(g, _)| if g == usize::MAX { Elt::ONE } else { gammas[g] }).collect(),
                a: found
                    .iter()
                    .enumerate()
                    .map(|(i, &(_, a))| reps_for(d.blocks()[i])[a].clone())
                    .collect(),
                sigma: sigma.clone(),
            };
            if !verify_isometry(c, d, &iso) {
                return Err(Error::InvariantViolation(
                    "isometry found by search failed verification".into(),
                ));
            }
            return Ok(Equivalence::Equivalent(iso));
        }
    }
    Ok(Equivalence::NotEquivalent)
}

/// Depth-first over blocks; `choice[i] = (gamma index, A index)`, where block 0
/// uses `usize::MAX` for gamma = 1.
fn search_blocks(
    tower: &FieldTower,
    target: &RowSpace,
    products: &[Vec<Matrix>],
    gammas: &[Elt],
    choice: &mut Vec<(usize, usize)>,
    depth: usize,
    k: usize,
) -> Option<Vec<(usize, usize)>> {
    if depth == products.len() {
        let rows: Vec<Vec<Elt>> = (0..k)
            .map(|r| {
                choice
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &(g, a))| {
                        let gamma = if g == usize::MAX { Elt::ONE } else { gammas[g] };
                        products[i][a].row(r).iter().map(move |&x| tower.mul(gamma, x)).collect::<Vec<_>>()
                    })
                    .collect()
            })
            .collect();
        return rows
            .iter()
            .all(|row| target.contains(row, tower))
            .then(|| choice.clone());
    }
    let gamma_range: Vec<usize> = if depth == 0 {
        vec![usize::MAX]
    } else {
        (0..gammas.len()).collect()
    };
    for g in gamma_range {
        for a in 0..products[depth].len() {
            choice[depth] = (g, a);
            if let Some(found) = search_blocks(tower, target, products, gammas, choice, depth + 1, k) {
                return Some(found);
            }
        }
    }
    None
}

/// `(x, x^(q^s), ..., x^(q^(s(k-1))))`.
pub fn gabidulin_point(tower: &FieldTower, x: Elt, k: usize, s: i64) -> Vec<Elt> {
    (0..k as u64).map(|j| tower.frobenius(x, s, j)).collect()
}

fn in_gabidulin_set(tower: &FieldTower, w: &[Elt], s: i64) -> bool {
    w.iter()
        .enumerate()
        .all(|(j, &x)| x == tower.frobenius(w[0], s, j as u64))
}

/// All `A` in GL(k, q^m) mapping the set `G_{k,s,m}` onto itself, in odometer
/// order of their entries.
pub fn stabilizer_enumerate(
    tower: &FieldTower,
    k: usize,
    s: i64,
    limits: SearchLimits,
) -> Result<Vec<Matrix>> {
    let s = tower.reduce_twist(s)? as i64;
    if k == 0 || k > tower.m() as usize {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= m (got k = {k}, m = {})",
            tower.m()
        )));
    }
    let size = tower.size();
    let total = (size as u128).saturating_pow((k * k) as u32);
    if total > limits.total {
        return Err(Error::cap(format!("{k}x{k} matrices over F_q^m"), total, limits.total));
    }
    let points: Vec<Vec<Elt>> = tower
        .elements()
        .map(|x| gabidulin_point(tower, x, k, s))
        .collect();
    let mut out = Vec::new();
    let mut digits = vec![0u32; k * k];
    loop {
        let a = Matrix::from_fn(k, k, |i, j| tower.from_index(digits[i * k + j]).expect("index in range"));
        if points.iter().all(|p| in_gabidulin_set(tower, &a.apply(p, tower), s)) && a.is_invertible(tower) {
            out.push(a);
        }
        let mut i = 0;
        while i < digits.len() {
            digits[i] = (digits[i] + 1) % size;
            if digits[i] != 0 {
                break;
            }
            i += 1;
        }
        if i == digits.len() {
            return Ok(out);
        }
    }
}

/// `diag(d, d^(q^s), ..., d^(q^(s(k-1))))` for every `d != 0`.
pub fn diagonal_stabilizer(tower: &FieldTower, k: usize, s: i64) -> Vec<Matrix> {
    tower
        .nonzero_elements()
        .map(|d| Matrix::diagonal(&gabidulin_point(tower, d, k, s)))
        .collect()
}

/// Dickson matrices of all invertible q^s-polynomials with m coefficients.
pub fn dickson_stabilizer(tower: &Arc<FieldTower>, s: i64, limits: SearchLimits) -> Result<Vec<Matrix>> {
    let m = tower.m() as usize;
    let total = (tower.size() as u128).saturating_pow(m as u32);
    if total > limits.total {
        return Err(Error::cap("linearized polynomials", total, limits.total));
    }
    let elems: Vec<Elt> = tower.elements().collect();
    let mut out = Vec::new();
    for coeffs in (0..m).map(|_| elems.iter().copied()).multi_cartesian_product() {
        let f = crate::linpoly::LinearizedPoly::new(tower.clone(), &coeffs, s)?;
        let d = f.dickson();
        if d.rank() == m {
            out.push(d.entries);
        }
    }
    Ok(out)
}

/// Checks `G_{k,-s,m}[T] = J G_{k,s,m}[T^(q^(-s(k-1)))]` for the F_q-span `T`
/// of `t_basis`, where `J` is the antidiagonal permutation matrix.
pub fn gabidulin_minus_s_relation(tower: &FieldTower, k: usize, s: i64, t_basis: &[Elt]) -> Result<bool> {
    tower.reduce_twist(s)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let basis: Vec<Vec<Elt>> = t_basis.iter().map(|&x| vec![x]).collect();
    let space: Vec<Elt> = span_elements(tower, &basis).into_iter().map(|v| v[0]).collect();
    let j = Matrix::antidiagonal(k);
    let exp = -s * (k as i64 - 1);
    let mut pointwise = true;
    let mut lhs = BTreeSet::new();
    let mut rhs = BTreeSet::new();
    for &x in &space {
        let left = gabidulin_point(tower, x, k, -s);
        let u = tower.frobenius(x, exp, 1);
        let right = j.apply(&gabidulin_point(tower, u, k, s), tower);
        pointwise &= left == right;
        lhs.insert(left);
        rhs.insert(right);
    }
    Ok(pointwise && lhs == rhs)
}
