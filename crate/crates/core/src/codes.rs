//! Rank- and sum-rank-metric block codes over F_{q^m}, with the Gabidulin and
//! linearized Reed-Solomon constructions.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{fq_dim, Elt, FieldTower};
use crate::matrix::Matrix;

/// Default cap on the number of codewords `q^(mk)` visited by exhaustive search.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 22;

/// Dimension over F_q of the span of the coordinates.
pub fn rank_weight(tower: &FieldTower, v: &[Elt]) -> usize {
    fq_dim(tower, v)
}

/// A vector split into blocks `x_1, ..., x_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockVector {
    pub blocks: Vec<Vec<Elt>>,
}

impl BlockVector {
    pub fn new(blocks: Vec<Vec<Elt>>) -> Result<Self> {
        if blocks.is_empty() || blocks.iter().any(Vec::is_empty) {
            return Err(Error::InvalidParameter(
                "a block vector needs at least one block and no empty blocks".into(),
            ));
        }
        Ok(BlockVector { blocks })
    }

    /// Splits a flat vector according to the block lengths.
    pub fn split(v: &[Elt], lengths: &[usize]) -> Self {
        let mut blocks = Vec::with_capacity(lengths.len());
        let mut start = 0;
        for &n in lengths {
            blocks.push(v[start..start + n].to_vec());
            start += n;
        }
        BlockVector { blocks }
    }
}

pub fn sum_rank_weight(tower: &FieldTower, v: &BlockVector) -> usize {
    v.blocks.iter().map(|b| rank_weight(tower, b)).sum()
}

/// An F_{q^m}-linear code with generator `G = (G_1 | ... | G_t)`.
#[derive(Clone, Debug)]
pub struct BlockCode {
    tower: Arc<FieldTower>,
    blocks: Vec<usize>,
    generator: Matrix,
    non_degenerate: bool,
}

impl BlockCode {
    pub fn new(tower: Arc<FieldTower>, blocks: Vec<usize>, generator: Matrix) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::InvalidParameter(
                "block lengths must be positive and there must be at least one block".into(),
            ));
        }
        let n: usize = blocks.iter().sum();
        if generator.cols() != n {
            return Err(Error::InvalidParameter(format!(
                "generator has {} columns but the blocks sum to {n}",
                generator.cols()
            )));
        }
        for &x in generator.entries() {
            tower.check(x)?;
        }
        let k = generator.rows();
        if k > n {
            return Err(Error::DimensionTooLarge { k, n });
        }
        let rank = generator.rank(&tower);
        if rank != k {
            return Err(Error::RankDeficient { rank, k });
        }
        let mut code = BlockCode {
            tower,
            blocks,
            generator,
            non_degenerate: true,
        };
        code.non_degenerate = code.degenerate_block().is_none();
        Ok(code)
    }

    fn degenerate_block(&self) -> Option<usize> {
        let t = &*self.tower;
        (0..self.blocks.len()).find(|&i| {
            let g = self.block(i);
            let cols: Vec<Vec<Elt>> = (0..g.cols()).map(|j| g.col(j)).collect();
            crate::ff::fq_dim_vectors(t, g.rows(), cols.iter().map(Vec::as_slice)) != g.cols()
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn t(&self) -> usize {
        self.blocks.len()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    /// Total length `N = n_1 + ... + n_t`.
    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn is_non_degenerate(&self) -> bool {
        self.non_degenerate
    }

    /// Errors with the first degenerate block, if any.
    pub fn require_non_degenerate(&self) -> Result<()> {
        match self.degenerate_block() {
            Some(block) => Err(Error::Degenerate { block }),
            None => Ok(()),
        }
    }

    pub fn block_offset(&self, i: usize) -> usize {
        self.blocks[..i].iter().sum()
    }

    /// The submatrix `G_i`.
    pub fn block(&self, i: usize) -> Matrix {
        self.generator
            .column_block(self.block_offset(i), self.blocks[i])
    }

    /// `m G`.
    pub fn encode(&self, message: &[Elt]) -> Vec<Elt> {
        self.generator.apply_row(message, &self.tower)
    }

    pub fn weight(&self, codeword: &[Elt]) -> usize {
        sum_rank_weight(&self.tower, &BlockVector::split(codeword, &self.blocks))
    }

    /// Number of codewords, `q^(mk)`.
    pub fn size(&self) -> u128 {
        (self.tower.size() as u128).saturating_pow(self.k() as u32)
    }

    /// Visits every nonzero codeword once, in odometer order of the message.
    pub fn for_each_nonzero_codeword(&self, cap: u128, mut f: impl FnMut(&[Elt], &[Elt])) -> Result<()> {
        let size = self.size();
        if size > cap {
            return Err(Error::cap("codewords to enumerate", size, cap));
        }
        let t = &*self.tower;
        let k = self.k();
        let q = t.size();
        let mut digits = vec![0u32; k];
        let mut msg = vec![Elt::ZERO; k];
        let mut word = vec![Elt::ZERO; self.length()];
        loop {
            // increment the odometer and patch the codeword by the changed rows
            let mut i = 0;
            loop {
                if i == k {
                    return Ok(());
                }
                let old = msg[i];
                digits[i] = (digits[i] + 1) % q;
                let new = t.from_index(digits[i]).expect("index in range");
                msg[i] = new;
                let delta = t.sub(new, old);
                for (w, &g) in word.iter_mut().zip(self.generator.row(i)) {
                    *w = t.add(*w, t.mul(delta, g));
                }
                if digits[i] != 0 {
                    break;
                }
                i += 1;
            }
            f(&msg, &word);
        }
    }
}

/// Minimum sum-rank weight over all nonzero codewords.
pub fn min_distance_exhaustive(code: &BlockCode, cap: u128) -> Result<usize> {
    let mut best = usize::MAX;
    code.for_each_nonzero_codeword(cap, |_, w| {
        best = best.min(code.weight(w));
    })?;
    if best == usize::MAX {
        return Err(Error::InvalidParameter("the zero code has no minimum distance".into()));
    }
    Ok(best)
}

/// The sum-rank Singleton bound `N - k + 1`.
pub fn singleton_bound(code: &BlockCode) -> usize {
    code.length() - code.k() + 1
}

pub fn is_msrd(code: &BlockCode, cap: u128) -> Result<bool> {
    Ok(min_distance_exhaustive(code, cap)? == singleton_bound(code))
}

/// Whether `m k = max(m, n) (min(m, n) - d + 1)` for a single-block code.
pub fn is_mrd(code: &BlockCode, cap: u128) -> Result<bool> {
    if code.t() != 1 {
        return Err(Error::InvalidParameter(
            "the rank-metric bound applies to single-block codes".into(),
        ));
    }
    let d = min_distance_exhaustive(code, cap)?;
    Ok(mrd_equality(code.tower.m() as usize, code.length(), code.k(), d))
}

pub(crate) fn mrd_equality(m: usize, n: usize, k: usize, d: usize) -> bool {
    let (lo, hi) = (m.min(n), m.max(n));
    d <= lo && m * k == hi * (lo - d + 1)
}

/// Moore matrix with rows `(alpha_j^(q^(s i)))_j`, `i < k`.
pub fn gabidulin_generator(
    tower: Arc<FieldTower>,
    alpha: &[Elt],
    k: usize,
    s: i64,
) -> Result<BlockCode> {
    let s = tower.reduce_twist(s)? as i64;
    for &a in alpha {
        tower.check(a)?;
    }
    let n = alpha.len();
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter("need k >= 1 and at least one point".into()));
    }
    if k > n {
        return Err(Error::DimensionTooLarge { k, n });
    }
    if n > tower.m() as usize || fq_dim(&tower, alpha) != n {
        return Err(Error::DependentPoints);
    }
    let g = Matrix::from_fn(k, n, |i, j| tower.frobenius(alpha[j], s, i as u64));
    BlockCode::new(tower, vec![n], g)
}

/// Parameters of a linearized Reed-Solomon code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LrsParams {
    pub k: usize,
    pub s: i64,
    pub alpha: Vec<Elt>,
    pub beta: Vec<Elt>,
}

impl LrsParams {
    pub fn t(&self) -> usize {
        self.alpha.len()
    }

    pub fn n(&self) -> usize {
        self.beta.len()
    }

    pub fn validate(&self, tower: &FieldTower) -> Result<()> {
        tower.reduce_twist(self.s)?;
        for &x in self.alpha.iter().chain(&self.beta) {
            tower.check(x)?;
        }
        if self.alpha.is_empty() || self.beta.is_empty() || self.k == 0 {
            return Err(Error::InvalidParameter(
                "need k >= 1, at least one alpha and at least one beta".into(),
            ));
        }
        let big_n = self.t() * self.n();
        if self.k > big_n {
            return Err(Error::DimensionTooLarge { k: self.k, n: big_n });
        }
        if self.n() > tower.m() as usize || fq_dim(tower, &self.beta) != self.n() {
            return Err(Error::DependentPoints);
        }
        distinct_norms(tower, &self.alpha, self.s)?;
        Ok(())
    }
}

/// Norms of the `alpha_i`, failing on zero entries or a repeated norm.
pub(crate) fn distinct_norms(tower: &FieldTower, alpha: &[Elt], s: i64) -> Result<Vec<Elt>> {
    let mut norms: Vec<Elt> = Vec::with_capacity(alpha.len());
    for (i, &a) in alpha.iter().enumerate() {
        if a.is_zero() {
            return Err(Error::ZeroElement("alpha"));
        }
        let n = tower.norm(a, s)?;
        if let Some(first) = norms.iter().position(|&x| x == n) {
            return Err(Error::NormCollision {
                first,
                second: i,
                norm: tower.format(n),
            });
        }
        norms.push(n);
    }
    Ok(norms)
}

/// Block `i` has entry `N_s^r(alpha_i) beta_j^(q^(s r))` in row `r`, column `j`.
pub fn lrs_generator(tower: Arc<FieldTower>, params: &LrsParams) -> Result<BlockCode> {
    params.validate(&tower)?;
    let s = params.s;
    let n = params.n();
    let t = &*tower;
    let g = Matrix::from_fn(params.k, params.t() * n, |r, c| {
        let (i, j) = (c / n, c % n);
        let tn = t
            .truncated_norm(params.alpha[i], s, r as i64)
            .expect("twist validated");
        t.mul(tn, t.frobenius(params.beta[j], s, r as u64))
    });
    BlockCode::new(tower, vec![n; params.t()], g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{build_tower, FieldSpec};
    use proptest::prelude::*;

    fn tower(p: u64, a: u32, m: u32) -> Arc<FieldTower> {
        Arc::new(build_tower(FieldSpec::new(p, a, m)).unwrap())
    }

    /// alpha_i = g^i has norm g^(i * step), so these are distinct for i < q - 1.
    fn lrs_q3() -> (Arc<FieldTower>, LrsParams) {
        let t = tower(3, 1, 2);
        let params = LrsParams {
            k: 2,
            s: 1,
            alpha: vec![t.from_log(0), t.from_log(1)],
            beta: t.top_basis(),
        };
        (t, params)
    }

    #[test]
    fn rank_weight_examples() {
        let t = tower(2, 1, 2);
        let w = t.generator();
        assert_eq!(rank_weight(&t, &[Elt::ZERO; 3]), 0);
        assert_eq!(rank_weight(&t, &[Elt::ONE; 3]), 1);
        assert_eq!(rank_weight(&t, &[Elt::ONE, w, t.add(Elt::ONE, w)]), 2);
    }

    #[test]
    fn sum_rank_weight_examples() {
        let t = tower(3, 1, 2);
        let g = t.generator();
        let v = BlockVector::new(vec![vec![Elt::ONE, Elt::ONE], vec![Elt::ZERO, g]]).unwrap();
        assert_eq!(sum_rank_weight(&t, &v), 2);
        let single = BlockVector::new(vec![vec![Elt::ONE, g]]).unwrap();
        assert_eq!(sum_rank_weight(&t, &single), rank_weight(&t, &[Elt::ONE, g]));
        let hamming = BlockVector::new(vec![vec![g], vec![Elt::ZERO], vec![Elt::ONE]]).unwrap();
        assert_eq!(sum_rank_weight(&t, &hamming), 2);
        assert!(BlockVector::new(vec![]).is_err());
    }

    #[test]
    fn identity_code_has_distance_one() {
        let t = tower(2, 1, 2);
        let code = BlockCode::new(t, vec![1, 1, 1], Matrix::identity(3)).unwrap();
        assert_eq!(min_distance_exhaustive(&code, DEFAULT_ENUMERATION_CAP).unwrap(), 1);
        assert!(code.is_non_degenerate());
    }

    #[test]
    fn gabidulin_q2_m3_k2() {
        let t = tower(2, 1, 3);
        let code = gabidulin_generator(t.clone(), &t.top_basis(), 2, 1).unwrap();
        let mut count = 0;
        code.for_each_nonzero_codeword(DEFAULT_ENUMERATION_CAP, |_, _| count += 1)
            .unwrap();
        assert_eq!(count, 63);
        assert_eq!(min_distance_exhaustive(&code, DEFAULT_ENUMERATION_CAP).unwrap(), 2);
        assert!(is_mrd(&code, DEFAULT_ENUMERATION_CAP).unwrap());
        assert!(is_msrd(&code, DEFAULT_ENUMERATION_CAP).unwrap());
    }

    #[test]
    fn moore_matrix_rows() {
        let t = tower(2, 1, 3);
        let basis = t.top_basis();
        let one_row = gabidulin_generator(t.clone(), &basis, 1, 1).unwrap();
        assert_eq!(one_row.generator().row(0), &basis[..]);
        let full = gabidulin_generator(t.clone(), &basis, 3, 1).unwrap();
        assert!(full.generator().is_invertible(&t));
        assert!(matches!(
            gabidulin_generator(t.clone(), &[Elt::ONE, Elt::ONE], 1, 1),
            Err(Error::DependentPoints)
        ));
        assert!(matches!(
            gabidulin_generator(t, &basis[..2], 3, 1),
            Err(Error::DimensionTooLarge { k: 3, n: 2 })
        ));
    }

    #[test]
    fn repetition_code_is_mrd() {
        let t = tower(2, 1, 3);
        let g = Matrix::from_rows(vec![vec![Elt::ONE; 2]]);
        let code = BlockCode::new(t, vec![2], g).unwrap();
        // (1, 1) spans a one-dimensional space, so this code is degenerate
        assert!(!code.is_non_degenerate());
        assert!(matches!(code.require_non_degenerate(), Err(Error::Degenerate { block: 0 })));
        assert_eq!(min_distance_exhaustive(&code, DEFAULT_ENUMERATION_CAP).unwrap(), 1);

        let t = tower(2, 1, 3);
        let pts = t.top_basis();
        let code = BlockCode::new(t, vec![2], Matrix::from_rows(vec![pts[..2].to_vec()])).unwrap();
        assert_eq!(min_distance_exhaustive(&code, DEFAULT_ENUMERATION_CAP).unwrap(), 2);
        assert!(is_mrd(&code, DEFAULT_ENUMERATION_CAP).unwrap());
    }

    #[test]
    fn lrs_q3_m2_is_msrd() {
        let (t, params) = lrs_q3();
        let code = lrs_generator(t, &params).unwrap();
        assert!(code.is_non_degenerate());
        assert_eq!(code.length(), 4);
        let mut count = 0;
        code.for_each_nonzero_codeword(DEFAULT_ENUMERATION_CAP, |_, _| count += 1)
            .unwrap();
        assert_eq!(count, 80);
        assert_eq!(min_distance_exhaustive(&code, DEFAULT_ENUMERATION_CAP).unwrap(), 3);
        assert!(is_msrd(&code, DEFAULT_ENUMERATION_CAP).unwrap());
        assert!(is_mrd(&code, DEFAULT_ENUMERATION_CAP).is_err());
    }

    #[test]
    fn lrs_single_block_is_gabidulin() {
        let t = tower(2, 1, 3);
        let beta = t.top_basis();
        let params = LrsParams { k: 2, s: 1, alpha: vec![Elt::ONE], beta: beta.clone() };
        let lrs = lrs_generator(t.clone(), &params).unwrap();
        let gab = gabidulin_generator(t, &beta, 2, 1).unwrap();
        assert_eq!(lrs.generator(), gab.generator());
    }

    #[test]
    fn lrs_norm_collision_over_f49() {
        let t = tower(7, 1, 2);
        // any preimage of the requested residue under the norm map
        let pick = |r: u64| {
            let target = t.from_residue(r).unwrap();
            t.nonzero_elements().find(|&x| t.norm(x, 1).unwrap() == target).unwrap()
        };
        let ok = LrsParams {
            k: 2,
            s: 1,
            alpha: vec![pick(1), pick(2), pick(4)],
            beta: t.top_basis(),
        };
        assert!(lrs_generator(t.clone(), &ok).is_ok());
        let bad = LrsParams { alpha: vec![pick(1), pick(2), pick(2)], ..ok };
        match lrs_generator(t, &bad) {
            Err(Error::NormCollision { first: 1, second: 2, .. }) => {}
            other => panic!("expected a collision, got {other:?}"),
        }
    }

    #[test]
    fn zero_alpha_rejected() {
        let (t, mut params) = lrs_q3();
        params.alpha[1] = Elt::ZERO;
        assert!(matches!(lrs_generator(t, &params), Err(Error::ZeroElement(_))));
    }

    #[test]
    fn cap_is_enforced() {
        let (t, params) = lrs_q3();
        let code = lrs_generator(t, &params).unwrap();
        assert!(matches!(
            min_distance_exhaustive(&code, 10),
            Err(Error::CapExceeded { needed: 81, .. })
        ));
    }

    #[test]
    fn encode_matches_enumeration() {
        let (t, params) = lrs_q3();
        let code = lrs_generator(t, &params).unwrap();
        code.for_each_nonzero_codeword(DEFAULT_ENUMERATION_CAP, |msg, w| {
            assert_eq!(code.encode(msg), w);
        })
        .unwrap();
    }

    fn gl_sample(t: &FieldTower, n: usize, seed: &[u32]) -> Option<Matrix> {
        let base = t.subfield_with_zero();
        let a = Matrix::from_fn(n, n, |i, j| base[seed[i * n + j] as usize % base.len()]);
        a.is_invertible(t).then_some(a)
    }

    proptest! {
        #[test]
        fn rank_weight_invariant_under_gl_n_q(
            (ti, raw, seed) in (0usize..3, prop::collection::vec(0u32..u32::MAX, 3), prop::collection::vec(0u32..100, 9))
        ) {
            let t = [tower(2, 1, 3), tower(3, 1, 2), tower(2, 2, 2)][ti].clone();
            let v: Vec<Elt> = raw.iter().map(|&r| t.from_index(r % t.size()).unwrap()).collect();
            if let Some(a) = gl_sample(&t, 3, &seed) {
                prop_assert_eq!(rank_weight(&t, &a.apply_row(&v, &t)), rank_weight(&t, &v));
            }
        }

        #[test]
        fn sum_rank_weight_invariant_under_isometries(
            raw in prop::collection::vec(0u32..u32::MAX, 4),
            gammas in prop::collection::vec(1u32..9, 2),
            seeds in prop::collection::vec(prop::collection::vec(0u32..100, 4), 2),
            swap in any::<bool>(),
        ) {
            let t = tower(3, 1, 2);
            let flat: Vec<Elt> = raw.iter().map(|&r| t.from_index(r % t.size()).unwrap()).collect();
            let x = BlockVector::split(&flat, &[2, 2]);
            let sigma = if swap { [1, 0] } else { [0, 1] };
            let mut image = Vec::new();
            for i in 0..2 {
                let Some(a) = gl_sample(&t, 2, &seeds[i]) else { return Ok(()) };
                let gamma = t.from_index(gammas[i]).unwrap();
                let y = a.apply(&x.blocks[sigma[i]], &t);
                image.push(y.iter().map(|&e| t.mul(gamma, e)).collect());
            }
            let y = BlockVector::new(image).unwrap();
            prop_assert_eq!(sum_rank_weight(&t, &y), sum_rank_weight(&t, &x));
        }
    }
}
