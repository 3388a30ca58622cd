//! Linearized (q^s-)polynomials over F_{q^m}, viewed as F_q-linear maps of
//! the top field, reduced modulo `x^(q^(sm)) - x`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::{fq_dim, Elt, FieldTower};
use crate::matrix::Matrix;

/// `L(x) = sum_i coeffs[i] x^(q^(s i))`, always stored with exactly m coefficients.
#[derive(Clone, Debug)]
pub struct LinearizedPoly {
    tower: Arc<FieldTower>,
    coeffs: Vec<Elt>,
    s: u32,
}

impl PartialEq for LinearizedPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.tower == *other.tower && self.s == other.s && self.coeffs == other.coeffs
    }
}

impl LinearizedPoly {
    /// Coefficients past position m-1 are folded back, since `x^(q^(sm)) = x` on F_{q^m}.
    pub fn new(tower: Arc<FieldTower>, coeffs: &[Elt], s: i64) -> Result<Self> {
        let s = tower.reduce_twist(s)?;
        let m = tower.m() as usize;
        let mut reduced = vec![Elt::ZERO; m];
        for (i, &c) in coeffs.iter().enumerate() {
            tower.check(c)?;
            reduced[i % m] = tower.add(reduced[i % m], c);
        }
        Ok(LinearizedPoly {
            tower,
            coeffs: reduced,
            s,
        })
    }

    pub fn identity(tower: Arc<FieldTower>, s: i64) -> Result<Self> {
        LinearizedPoly::new(tower, &[Elt::ONE], s)
    }

    pub fn zero(tower: Arc<FieldTower>, s: i64) -> Result<Self> {
        LinearizedPoly::new(tower, &[], s)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    pub fn twist(&self) -> u32 {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Largest i with a nonzero coefficient; `None` for the zero polynomial.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, x: Elt) -> Result<Elt> {
        self.tower.check(x)?;
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: Elt) -> Elt {
        let t = &*self.tower;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Elt::ZERO, |acc, (i, &c)| {
                t.add(acc, t.mul(c, t.frobenius(x, self.s as i64, i as u64)))
            })
    }

    /// F_q-dimension of the kernel, by counting roots over the whole field.
    pub fn kernel_dim(&self) -> usize {
        let roots = self
            .tower
            .elements()
            .filter(|&x| self.eval_unchecked(x).is_zero())
            .count() as u64;
        let q = self.tower.q();
        let mut dim = 0;
        let mut n = 1u64;
        while n < roots {
            n *= q;
            dim += 1;
        }
        debug_assert_eq!(n, roots, "kernel size is a power of q");
        dim
    }

    /// F_q-dimension of the image, as the span of the images of an F_q-basis.
    pub fn image_dim(&self) -> usize {
        let t = &*self.tower;
        let images: Vec<Elt> = t
            .top_basis()
            .into_iter()
            .map(|b| self.eval_unchecked(b))
            .collect();
        fq_dim(t, &images)
    }

    pub fn dickson(&self) -> DicksonMatrix {
        let t = &*self.tower;
        let m = self.coeffs.len();
        // row i is row i-1 shifted right by one, raised to q^s
        let entries = Matrix::from_fn(m, m, |i, j| {
            t.frobenius(self.coeffs[(j + m - i) % m], self.s as i64, i as u64)
        });
        DicksonMatrix {
            entries,
            source: self.clone(),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.dickson().rank() == self.coeffs.len()
    }
}

/// The m x m Dickson matrix of a linearized polynomial.
#[derive(Clone, Debug)]
pub struct DicksonMatrix {
    pub entries: Matrix,
    pub source: LinearizedPoly,
}

impl DicksonMatrix {
    pub fn rank(&self) -> usize {
        self.entries.rank(&self.source.tower)
    }
}

/// `F_alpha`: coefficient i of the result is `coeffs[i] * N_s^i(alpha)`.
pub fn twist_by_alpha(
    tower: Arc<FieldTower>,
    coeffs: &[Elt],
    alpha: Elt,
    s: i64,
) -> Result<LinearizedPoly> {
    tower.check(alpha)?;
    if alpha.is_zero() {
        return Err(Error::ZeroElement("alpha"));
    }
    let twisted = coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| Ok(tower.mul(c, tower.truncated_norm(alpha, s, i as i64)?)))
        .collect::<Result<Vec<_>>>()?;
    LinearizedPoly::new(tower, &twisted, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{build_tower, FieldSpec};
    use proptest::prelude::*;

    fn tower(p: u64, a: u32, m: u32) -> Arc<FieldTower> {
        Arc::new(build_tower(FieldSpec::new(p, a, m)).unwrap())
    }

    fn trace8() -> LinearizedPoly {
        let t = tower(2, 1, 3);
        LinearizedPoly::new(t, &[Elt::ONE; 3], 1).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let t = tower(3, 1, 2);
        let id = LinearizedPoly::identity(t.clone(), 1).unwrap();
        let z = LinearizedPoly::zero(t.clone(), 1).unwrap();
        for x in t.elements() {
            assert_eq!(id.eval(x).unwrap(), x);
            assert_eq!(z.eval(x).unwrap(), Elt::ZERO);
        }
        assert_eq!((id.kernel_dim(), id.image_dim()), (0, 2));
        assert_eq!((z.kernel_dim(), z.image_dim()), (2, 0));
        assert_eq!(id.dickson().entries, Matrix::identity(2));
        assert!(z.dickson().entries.is_zero());
        assert_eq!(z.dickson().rank(), 0);
        assert!(id.is_invertible());
        assert!(!z.is_invertible());
        assert_eq!(z.q_degree(), None);
    }

    #[test]
    fn trace_over_f8() {
        let tr = trace8();
        let t = tr.tower().clone();
        let g = t.generator();
        let expected = t.add(t.add(g, t.pow(g, 2)), t.pow(g, 4));
        assert_eq!(tr.eval(g).unwrap(), expected);
        assert!(t.in_subfield(expected));
        assert_eq!((tr.kernel_dim(), tr.image_dim()), (2, 1));
        let d = tr.dickson();
        assert!(d.entries.entries().iter().all(|&x| x == Elt::ONE));
        assert_eq!(d.rank(), 1);
        assert!(!tr.is_invertible());
    }

    #[test]
    fn artin_schreier_kernel_is_base_field() {
        // x^3 - x over F_9
        let t = tower(3, 1, 2);
        let l = LinearizedPoly::new(t.clone(), &[t.neg(Elt::ONE), Elt::ONE], 1).unwrap();
        assert_eq!(l.kernel_dim(), 1);
        for x in t.subfield_with_zero() {
            assert!(l.eval(x).unwrap().is_zero());
        }
    }

    #[test]
    fn scalar_map_is_invertible() {
        for (p, a, m) in [(2, 1, 3), (3, 1, 2), (2, 2, 2)] {
            let t = tower(p, a, m);
            let l = LinearizedPoly::new(t.clone(), &[t.generator()], 1).unwrap();
            assert!(l.is_invertible());
        }
    }

    #[test]
    fn reduction_folds_high_terms() {
        let t = tower(2, 1, 3);
        let l = LinearizedPoly::new(t.clone(), &[Elt::ONE, Elt::ZERO, Elt::ZERO, Elt::ONE], 1)
            .unwrap();
        // x + x^(q^3) = 2x = 0 in characteristic 2
        assert!(l.is_zero());
    }

    #[test]
    fn mixed_tower_rejected() {
        let tr = trace8();
        let big = tower(2, 1, 5);
        assert!(matches!(
            tr.eval(big.from_log(20)),
            Err(Error::MixedTowers { .. })
        ));
    }

    #[test]
    fn twist_examples() {
        let t = tower(3, 1, 2);
        let g = t.generator();
        let base = [Elt::ONE, Elt::ONE];
        let same = twist_by_alpha(t.clone(), &base, Elt::ONE, 1).unwrap();
        assert_eq!(same.coeffs(), &base);
        let single = twist_by_alpha(t.clone(), &[g], t.from_log(5), 1).unwrap();
        assert_eq!(single.coeffs()[0], g);
        let tw = twist_by_alpha(t.clone(), &base, g, 1).unwrap();
        assert_eq!(tw.coeffs(), &[Elt::ONE, g]);
        assert!(matches!(
            twist_by_alpha(t, &base, Elt::ZERO, 1),
            Err(Error::ZeroElement(_))
        ));
    }

    fn poly_strategy() -> impl Strategy<Value = (usize, Vec<u32>, i64)> {
        // (tower choice, raw coefficient indices, twist)
        (0usize..4, prop::collection::vec(0u32..u32::MAX, 1..6), 1i64..8)
    }

    fn towers() -> Vec<Arc<FieldTower>> {
        vec![tower(2, 1, 3), tower(3, 1, 2), tower(2, 2, 2), tower(2, 1, 5)]
    }

    proptest! {
        #[test]
        fn eval_is_fq_linear((ti, raw, s) in poly_strategy()) {
            let t = towers()[ti].clone();
            let m = t.m() as i64;
            let s = if (s % m) == 0 || num_integer::gcd(s, m) != 1 { 1 } else { s };
            let coeffs: Vec<Elt> = raw.iter().map(|&r| t.from_index(r % t.size()).unwrap()).collect();
            let l = LinearizedPoly::new(t.clone(), &coeffs, s).unwrap();
            let xs: Vec<Elt> = t.elements().step_by(3).collect();
            for &x in &xs {
                for &y in &xs {
                    prop_assert_eq!(l.eval(t.add(x, y)).unwrap(),
                        t.add(l.eval(x).unwrap(), l.eval(y).unwrap()));
                }
                for c in t.subfield_with_zero() {
                    prop_assert_eq!(l.eval(t.mul(c, x)).unwrap(), t.mul(c, l.eval(x).unwrap()));
                }
            }
        }

        #[test]
        fn dickson_rank_matches_image_and_bijectivity((ti, raw, s) in poly_strategy()) {
            let t = towers()[ti].clone();
            let m = t.m() as i64;
            let s = if num_integer::gcd(s, m) != 1 { 1 } else { s };
            let coeffs: Vec<Elt> = raw.iter().map(|&r| t.from_index(r % t.size()).unwrap()).collect();
            let l = LinearizedPoly::new(t.clone(), &coeffs, s).unwrap();
            prop_assert_eq!(l.dickson().rank(), l.image_dim());
            prop_assert_eq!(l.kernel_dim() + l.image_dim(), t.m() as usize);
            let mut seen = std::collections::HashSet::new();
            let bijective = t.elements().all(|x| seen.insert(l.eval(x).unwrap()));
            prop_assert_eq!(l.is_invertible(), bijective);
            if let Some(deg) = l.q_degree() {
                prop_assert!(l.kernel_dim() <= deg);
            }
        }

        #[test]
        fn twist_matches_iterated_operator((ti, raw, s, ai) in (0usize..4, prop::collection::vec(0u32..u32::MAX, 1..5), 1i64..8, 0u32..u32::MAX)) {
            // F_alpha(x) = sum f_i D^i(x) with D(x) = alpha x^(q^s)
            let t = towers()[ti].clone();
            let m = t.m() as i64;
            let s = if num_integer::gcd(s, m) != 1 { 1 } else { s };
            let alpha = t.from_log(ai as u64);
            let coeffs: Vec<Elt> = raw.iter().map(|&r| t.from_index(r % t.size()).unwrap()).collect();
            let tw = twist_by_alpha(t.clone(), &coeffs, alpha, s).unwrap();
            for x in t.elements() {
                let mut y = x;
                let mut acc = Elt::ZERO;
                for &f in &coeffs {
                    acc = t.add(acc, t.mul(f, y));
                    y = t.mul(alpha, t.frobenius(y, s, 1));
                }
                prop_assert_eq!(tw.eval(x).unwrap(), acc);
            }
        }
    }
}
