//! The field tower F_q ⊂ F_{q^m} with q = p^a, implemented with discrete-log
//! (Zech) tables over the top field.
//!
//! Every element is an [`Elt`]: index 0 is zero and index `i >= 1` is `g^(i-1)`
//! for the fixed primitive element `g`. Multiplication is addition of logs;
//! addition goes through the Zech table `1 + g^e = g^zech(e)`. The base field
//! F_q is the subgroup `{ g^(j * step) }` with `step = (q^m - 1)/(q - 1)`, plus zero.

mod prime_poly;
pub mod span;

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

pub use span::{fq_dim, fq_dim_vectors, FqSpan};

/// Default cap on the number of elements of the top field.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 24;

/// Parameters of a tower F_q ⊂ F_{q^m}, q = p^a.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub p: u64,
    pub a: u32,
    pub m: u32,
    /// Monic irreducible of degree a*m over F_p, lowest degree first.
    pub modulus: Option<Vec<u64>>,
    #[serde(skip)]
    pub cap: u64,
}

impl FieldSpec {
    pub fn new(p: u64, a: u32, m: u32) -> Self {
        FieldSpec {
            p,
            a,
            m,
            modulus: None,
            cap: DEFAULT_FIELD_CAP,
        }
    }

    /// Splits a prime power `q` into `p^a`.
    pub fn from_q(q: u64, m: u32) -> Result<Self> {
        let (p, a) = prime_power(q).ok_or_else(|| {
            Error::InvalidParameter(format!("q must be a prime power (got {q})"))
        })?;
        Ok(FieldSpec::new(p, a, m))
    }

    pub fn with_modulus(mut self, modulus: Vec<u64>) -> Self {
        self.modulus = Some(modulus);
        self
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }
}

/// Returns `(p, a)` with `q = p^a` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_poly::prime_factors(q);
    if p.len() != 1 {
        return None;
    }
    let p = p[0];
    let mut a = 0;
    let mut n = q;
    while n > 1 {
        n /= p;
        a += 1;
    }
    Some((p, a))
}

pub fn is_prime(n: u64) -> bool {
    prime_poly::is_prime(n)
}

/// An element of the top field, as an index into the tower's exponent tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Elt(u32);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete log with respect to the tower's primitive element.
    pub fn log(self) -> Option<u32> {
        self.0.checked_sub(1)
    }
}

/// Immutable arithmetic tables for F_q ⊂ F_{q^m}.
pub struct FieldTower {
    spec: FieldSpec,
    q: u64,
    size: u32,
    /// q^m - 1
    group_order: u32,
    subfield_step: u32,
    /// `exp_poly[e]` = F_p-polynomial encoding of g^e
    exp_poly: Vec<u32>,
    /// inverse of `exp_poly`; entry 0 is unused
    log_of_poly: Vec<u32>,
    /// `zech[e]` = index of 1 + g^e
    zech: Vec<u32>,
    /// `q_pow[i]` = q^i mod (q^m - 1), i < m
    q_pow: Vec<u64>,
    generator_poly: u64,
    fq_basis: Vec<Elt>,
    minus_one: Elt,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.spec.p)
            .field("a", &self.spec.a)
            .field("m", &self.spec.m)
            .field("modulus", &self.spec.modulus)
            .finish()
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.spec.p == other.spec.p
            && self.spec.a == other.spec.a
            && self.spec.m == other.spec.m
            && self.spec.modulus == other.spec.modulus
            && self.generator_poly == other.generator_poly
    }
}

/// Builds the tower described by `spec`.
///
/// Without a supplied modulus, the lowest monic irreducible of degree `a*m`
/// (ordered by the integer `sum c_i p^i` of its lower coefficients) is used.
/// The primitive element is the one with the smallest such encoding.
pub fn build_tower(spec: FieldSpec) -> Result<FieldTower> {
    FieldTower::new(spec)
}

impl FieldTower {
    pub fn new(mut spec: FieldSpec) -> Result<Self> {
        let p = spec.p;
        if !prime_poly::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if spec.a == 0 || spec.m == 0 {
            return Err(Error::InvalidDegree {
                a: spec.a,
                m: spec.m,
            });
        }
        let d = (spec.a * spec.m) as usize;
        let size = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        let cap = spec.cap.min(1 << 31);
        if size > cap as u128 {
            return Err(Error::FieldTooLarge {
                size,
                cap: spec.cap,
            });
        }
        let size = size as u64;

        let modulus = match &spec.modulus {
            Some(f) => {
                if f.len() != d + 1 || f[d] != 1 || f.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus {
                        expected: d,
                        got: f.clone(),
                    });
                }
                if !prime_poly::is_irreducible(f, p) {
                    return Err(Error::ReducibleModulus(f.clone()));
                }
                f.clone()
            }
            None => (0..size)
                .map(|n| {
                    let mut f = prime_poly::decode(n, p, d);
                    f.resize(d, 0);
                    f.push(1);
                    f
                })
                .find(|f| prime_poly::is_irreducible(f, p))
                .expect("an irreducible polynomial exists in every degree"),
        };
        spec.modulus = Some(modulus.clone());

        let group_order = size - 1;
        let factors = prime_poly::prime_factors(group_order);
        let generator_poly = (1..size)
            .find(|&n| {
                let g = prime_poly::decode(n, p, d);
                factors
                    .iter()
                    .all(|&r| prime_poly::pow_poly_mod(&g, group_order / r, &modulus, p) != [1])
            })
            .expect("the multiplicative group is cyclic");

        let g = prime_poly::decode(generator_poly, p, d);
        let mut exp_poly = Vec::with_capacity(group_order as usize);
        let mut log_of_poly = vec![u32::MAX; size as usize];
        let mut cur = vec![1u64];
        for e in 0..group_order {
            let enc = prime_poly::encode(&cur, p);
            exp_poly.push(enc as u32);
            log_of_poly[enc as usize] = e as u32;
            cur = prime_poly::mul_mod(&cur, &g, &modulus, p);
        }

        let zech = exp_poly
            .iter()
            .map(|&enc| {
                let enc = enc as u64;
                // add 1 to the constant coefficient
                let plus_one = if enc % p == p - 1 { enc - (p - 1) } else { enc + 1 };
                if plus_one == 0 {
                    0
                } else {
                    log_of_poly[plus_one as usize] + 1
                }
            })
            .collect();

        let q = p.pow(spec.a);
        let m = spec.m as usize;
        let mut q_pow = Vec::with_capacity(m);
        let mut acc = 1u64 % group_order.max(1);
        for _ in 0..m {
            q_pow.push(acc);
            acc = (acc as u128 * q as u128 % group_order.max(1) as u128) as u64;
        }

        let subfield_step = (group_order / (q - 1)) as u32;
        let mut tower = FieldTower {
            spec,
            q,
            size: size as u32,
            group_order: group_order as u32,
            subfield_step,
            exp_poly,
            log_of_poly,
            zech,
            q_pow,
            generator_poly,
            fq_basis: Vec::new(),
            minus_one: Elt::ONE,
        };
        let w = tower.from_log(subfield_step as u64);
        tower.fq_basis = (0..tower.spec.a as u64).map(|l| tower.pow(w, l as i64)).collect();
        tower.minus_one = if p == 2 {
            Elt::ONE
        } else {
            tower.from_log(group_order / 2)
        };
        Ok(tower)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn a(&self) -> u32 {
        self.spec.a
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    /// Size of the base field.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Size of the top field, q^m.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// q^m - 1.
    pub fn group_order(&self) -> u32 {
        self.group_order
    }

    /// Degree of the top field over F_p.
    pub fn prime_degree(&self) -> usize {
        (self.spec.a * self.spec.m) as usize
    }

    pub fn subfield_step(&self) -> u32 {
        self.subfield_step
    }

    pub fn modulus(&self) -> &[u64] {
        self.spec.modulus.as_deref().unwrap_or(&[])
    }

    /// F_p-encoding (`sum c_i p^i`) of the primitive element.
    pub fn generator_encoding(&self) -> u64 {
        self.generator_poly
    }

    pub fn generator(&self) -> Elt {
        self.from_log(1)
    }

    /// F_q-basis `1, g, ..., g^(m-1)` of the top field.
    pub fn top_basis(&self) -> Vec<Elt> {
        (0..self.spec.m as u64).map(|i| self.from_log(i)).collect()
    }

    /// F_p-basis `1, w, ..., w^(a-1)` of F_q where `w = g^step`.
    pub fn fq_basis(&self) -> &[Elt] {
        &self.fq_basis
    }

    pub fn contains(&self, x: Elt) -> bool {
        x.0 < self.size
    }

    pub fn check(&self, x: Elt) -> Result<Elt> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::MixedTowers {
                index: x.0,
                size: self.size,
            })
        }
    }

    /// `g^k`, with `k` reduced modulo q^m - 1.
    pub fn from_log(&self, k: u64) -> Elt {
        Elt((k % self.group_order as u64) as u32 + 1)
    }

    pub fn from_index(&self, index: u32) -> Result<Elt> {
        self.check(Elt(index))
    }

    /// All elements, zero first, then `g^0, g^1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        (0..self.size).map(Elt)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elt> + '_ {
        (1..self.size).map(Elt)
    }

    /// F_p-polynomial encoding of `x`.
    pub fn poly_int(&self, x: Elt) -> u64 {
        match x.log() {
            None => 0,
            Some(e) => self.exp_poly[e as usize] as u64,
        }
    }

    pub fn from_poly_int(&self, n: u64) -> Result<Elt> {
        if n >= self.size as u64 {
            return Err(Error::ParseElement(format!("encoding {n} out of range")));
        }
        Ok(if n == 0 {
            Elt::ZERO
        } else {
            Elt(self.log_of_poly[n as usize] + 1)
        })
    }

    /// Coordinates of `x` in the basis `1, X, ..., X^(am-1)` over F_p.
    pub fn fp_coords(&self, x: Elt) -> Vec<u64> {
        let p = self.spec.p;
        let mut n = self.poly_int(x);
        (0..self.prime_degree())
            .map(|_| {
                let c = n % p;
                n /= p;
                c
            })
            .collect()
    }

    /// The prime-field element with residue `r`.
    pub fn from_residue(&self, r: u64) -> Result<Elt> {
        if r >= self.spec.p {
            return Err(Error::ParseElement(format!(
                "residue {r} is not in F_{}",
                self.spec.p
            )));
        }
        self.from_poly_int(r)
    }

    /// Residue of `x` when it lies in the prime field.
    pub fn as_residue(&self, x: Elt) -> Option<u64> {
        let n = self.poly_int(x);
        (n < self.spec.p).then_some(n)
    }

    pub fn add(&self, x: Elt, y: Elt) -> Elt {
        if x.0 == 0 {
            return y;
        }
        if y.0 == 0 {
            return x;
        }
        let n = self.group_order as u64;
        let (i, j) = ((x.0 - 1) as u64, (y.0 - 1) as u64);
        let z = self.zech[((j + n - i) % n) as usize];
        if z == 0 {
            Elt::ZERO
        } else {
            Elt(((i + z as u64 - 1) % n) as u32 + 1)
        }
    }

    pub fn neg(&self, x: Elt) -> Elt {
        self.mul(self.minus_one, x)
    }

    pub fn sub(&self, x: Elt, y: Elt) -> Elt {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elt, y: Elt) -> Elt {
        if x.0 == 0 || y.0 == 0 {
            return Elt::ZERO;
        }
        let n = self.group_order as u64;
        Elt((((x.0 - 1) as u64 + (y.0 - 1) as u64) % n) as u32 + 1)
    }

    pub fn inv(&self, x: Elt) -> Option<Elt> {
        let e = x.log()? as u64;
        let n = self.group_order as u64;
        Some(Elt(((n - e) % n) as u32 + 1))
    }

    pub fn div(&self, x: Elt, y: Elt) -> Option<Elt> {
        Some(self.mul(x, self.inv(y)?))
    }

    /// `x^e`; negative exponents require `x != 0`.
    pub fn pow(&self, x: Elt, e: i64) -> Elt {
        match x.log() {
            None => {
                assert!(e >= 0, "zero has no negative powers");
                if e == 0 {
                    Elt::ONE
                } else {
                    Elt::ZERO
                }
            }
            Some(l) => {
                let n = self.group_order as i128;
                let k = (l as i128 * e as i128).rem_euclid(n);
                Elt(k as u32 + 1)
            }
        }
    }

    fn raise_log(&self, x: Elt, exponent: u64) -> Elt {
        match x.log() {
            None => Elt::ZERO,
            Some(l) => {
                let n = self.group_order as u128;
                Elt((l as u128 * exponent as u128 % n) as u32 + 1)
            }
        }
    }

    /// Canonical twist in `1..=m` with `gcd(s, m) = 1`.
    pub fn reduce_twist(&self, s: i64) -> Result<u32> {
        let m = self.spec.m as i64;
        let r = s.rem_euclid(m);
        if r.gcd(&m) != 1 {
            return Err(Error::TwistNotCoprime {
                s,
                m: self.spec.m,
            });
        }
        Ok(if r == 0 { m as u32 } else { r as u32 })
    }

    /// `q^(e mod m) mod (q^m - 1)` for any integer `e`.
    fn q_power(&self, e: i64) -> u64 {
        self.q_pow[e.rem_euclid(self.spec.m as i64) as usize]
    }

    /// `x^(q^(s*j))`, with the exponent `s*j` read modulo m.
    pub fn frobenius(&self, x: Elt, s: i64, j: u64) -> Elt {
        let m = self.spec.m as i128;
        let e = (s as i128 * j as i128).rem_euclid(m) as i64;
        self.raise_log(x, self.q_power(e))
    }

    fn conjugate_sum(&self, s: i64, terms: u64) -> u64 {
        let n = self.group_order as u64;
        let m = self.spec.m as u64;
        // the summand repeats with period m
        let period: u64 = (0..m).map(|i| self.q_power(s * i as i64)).sum::<u64>() % n.max(1);
        let full = terms / m;
        let rest: u64 = (0..terms % m).map(|i| self.q_power(s * i as i64)).sum();
        ((full % n.max(1)) * period + rest) % n.max(1)
    }

    /// `N_s(x) = prod_{i<m} x^(q^(s i))`.
    pub fn norm(&self, x: Elt, s: i64) -> Result<Elt> {
        self.reduce_twist(s)?;
        Ok(self.raise_log(x, self.conjugate_sum(s, self.spec.m as u64)))
    }

    /// `N_s^j(x) = prod_{i<j} x^(q^(s i))`, with `N_s^0 = 1`.
    pub fn truncated_norm(&self, x: Elt, s: i64, j: i64) -> Result<Elt> {
        self.reduce_twist(s)?;
        if j < 0 {
            return Err(Error::NegativeIndex(j));
        }
        if j == 0 {
            return Ok(Elt::ONE);
        }
        Ok(self.raise_log(x, self.conjugate_sum(s, j as u64)))
    }

    /// F_q^* in the order `g^0, g^step, g^(2 step), ...`.
    pub fn subfield_elements(&self) -> Vec<Elt> {
        (0..self.q - 1)
            .map(|j| self.from_log(j * self.subfield_step as u64))
            .collect()
    }

    /// F_q including zero, zero first.
    pub fn subfield_with_zero(&self) -> Vec<Elt> {
        std::iter::once(Elt::ZERO)
            .chain(self.subfield_elements())
            .collect()
    }

    pub fn in_subfield(&self, x: Elt) -> bool {
        match x.log() {
            None => true,
            Some(l) => l % self.subfield_step == 0,
        }
    }

    /// Position of a nonzero base-field element in [`subfield_elements`](Self::subfield_elements),
    /// i.e. its discrete log with respect to `g^step`.
    pub fn subfield_log(&self, x: Elt) -> Option<u32> {
        let l = x.log()?;
        (l % self.subfield_step == 0).then(|| l / self.subfield_step)
    }

    /// Text form: `0` or `g^k`.
    pub fn format(&self, x: Elt) -> String {
        match x.log() {
            None => "0".to_string(),
            Some(l) => format!("g^{l}"),
        }
    }

    /// Parses `0`, `g^k` (any integer k, reduced) or a prime-field residue.
    pub fn parse(&self, s: &str) -> Result<Elt> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix("g^") {
            let k: i64 = k
                .trim()
                .parse()
                .map_err(|_| Error::ParseElement(s.to_string()))?;
            return Ok(self.from_log(k.rem_euclid(self.group_order as i64) as u64));
        }
        if s == "g" {
            return Ok(self.generator());
        }
        let r: u64 = s.parse().map_err(|_| Error::ParseElement(s.to_string()))?;
        self.from_residue(r)
    }
}
