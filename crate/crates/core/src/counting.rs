//! Orbits of F_q^* acting by multiplication on t-subsets of F_q^*, modelled as
//! translations of exponent sets in Z_{q-1}.

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on `C(q-1, t)` for explicit enumeration.
pub const DEFAULT_ORBIT_CAP: u128 = 1 << 20;

pub fn euler_phi(n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::InvalidParameter("euler_phi needs n >= 1".into()));
    }
    let mut result = n;
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    Ok(result)
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n < 1 {
        return Err(Error::InvalidParameter("divisors needs n >= 1".into()));
    }
    Ok((1..=n).filter(|d| n % d == 0).collect())
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// The factor `Psi(k, m)` as an exact fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Psi {
    pub numerator: u64,
    pub denominator: u64,
}

/// `phi(m)/2` when `k <= m - 2`, and 1 when `k` is `m - 1` or `m`.
pub fn psi(k: u64, m: u64) -> Result<Psi> {
    if k <= 1 || k > m {
        return Err(Error::InvalidParameter(format!(
            "Psi(k, m) needs 1 < k <= m (got k = {k}, m = {m})"
        )));
    }
    let (num, den) = if k + 2 <= m {
        (euler_phi(m)?, 2)
    } else {
        (1, 1)
    };
    let g = num.gcd(&den);
    Ok(Psi {
        numerator: num / g,
        denominator: den / g,
    })
}

fn check_qt(q: u64, t: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q must be at least 2 (got {q})")));
    }
    if t < 1 || t > q - 1 {
        return Err(Error::InvalidParameter(format!(
            "t must satisfy 1 <= t <= q - 1 = {} (got {t})",
            q - 1
        )));
    }
    Ok(())
}

/// `f_d`: the number of t-subsets whose stabilizer is exactly the subgroup of
/// order d, for every `d | gcd(q - 1, t)`.
pub fn f_table(q: u64, t: u64) -> Result<BTreeMap<u64, BigUint>> {
    check_qt(q, t)?;
    let n = q - 1;
    let ds = divisors(n.gcd(&t))?;
    let mut f: BTreeMap<u64, BigUint> = BTreeMap::new();
    for &d in ds.iter().rev() {
        let above: BigUint = f
            .iter()
            .filter(|(&e, _)| e != d && e % d == 0)
            .map(|(_, v)| v.clone())
            .sum();
        let total = binomial(n / d, t / d);
        if total < above {
            return Err(Error::InvariantViolation(format!("f_{d} would be negative")));
        }
        f.insert(d, total - above);
    }
    Ok(f)
}

/// Total number of orbits, `sum_d f_d / ((q - 1)/d)`.
pub fn count_orbits(q: u64, t: u64) -> Result<BigUint> {
    let f = f_table(q, t)?;
    orbits_from_f(q - 1, &f).map(|per| per.values().sum())
}

fn orbits_from_f(n: u64, f: &BTreeMap<u64, BigUint>) -> Result<BTreeMap<u64, BigUint>> {
    f.iter()
        .map(|(&d, fd)| {
            let size = BigUint::from(n / d);
            let (quo, rem) = fd.div_rem(&size);
            if !rem.is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "f_{d} = {fd} is not divisible by the orbit size {size}"
                )));
            }
            Ok((d, quo))
        })
        .collect()
}

/// Burnside count `(1/(q-1)) sum_{d | gcd(q-1,t)} phi(d) C((q-1)/d, t/d)`.
pub fn burnside_orbits(q: u64, t: u64) -> Result<BigUint> {
    check_qt(q, t)?;
    let n = q - 1;
    let mut sum = BigUint::zero();
    for d in divisors(n.gcd(&t))? {
        sum += binomial(n / d, t / d) * euler_phi(d)?;
    }
    let (quo, rem) = sum.div_rem(&BigUint::from(n));
    if !rem.is_zero() {
        return Err(Error::InvariantViolation(
            "Burnside sum is not divisible by the group order".into(),
        ));
    }
    Ok(quo)
}

fn big<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    let n: serde_json::Number = x.to_string().parse().map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}

fn big_map<S: Serializer>(m: &BTreeMap<u64, BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (d, v) in m {
        let n: serde_json::Number = v.to_string().parse().map_err(serde::ser::Error::custom)?;
        map.serialize_entry(&d.to_string(), &n)?;
    }
    map.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub q: u64,
    pub t: u64,
    pub k: u64,
    pub m: u64,
    pub divisors: Vec<u64>,
    #[serde(serialize_with = "big_map")]
    pub f: BTreeMap<u64, BigUint>,
    #[serde(serialize_with = "big_map")]
    pub orbits_per_d: BTreeMap<u64, BigUint>,
    #[serde(serialize_with = "big")]
    pub total_orbits: BigUint,
    pub psi_numerator: u64,
    pub psi_denominator: u64,
    #[serde(serialize_with = "big")]
    pub final_count: BigUint,
}

/// Number of inequivalent LRS codes with t blocks of length m and dimension k.
pub fn count_inequivalent_lrs(q: u64, t: u64, k: u64, m: u64) -> Result<OrbitReport> {
    report_with_psi(q, t, k, m, psi(k, m)?)
}

/// Same as [`count_inequivalent_lrs`] with an explicitly supplied `Psi`.
pub fn report_with_psi(q: u64, t: u64, k: u64, m: u64, p: Psi) -> Result<OrbitReport> {
    let f = f_table(q, t)?;
    let orbits_per_d = orbits_from_f(q - 1, &f)?;
    let total_orbits: BigUint = orbits_per_d.values().sum();
    let binom = binomial(q - 1, t);
    if f.values().sum::<BigUint>() != binom {
        return Err(Error::InvariantViolation(
            "the f_d do not add up to C(q - 1, t)".into(),
        ));
    }
    let (final_count, rem) = (&total_orbits * p.numerator).div_rem(&BigUint::from(p.denominator));
    if !rem.is_zero() {
        return Err(Error::InvariantViolation(format!(
            "Psi({k}, {m}) times {total_orbits} is not an integer"
        )));
    }
    Ok(OrbitReport {
        q,
        t,
        k,
        m,
        divisors: f.keys().copied().collect(),
        f,
        orbits_per_d,
        total_orbits,
        psi_numerator: p.numerator,
        psi_denominator: p.denominator,
        final_count,
    })
}

/// One orbit: its members (sorted exponent sets, in lexicographic order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: Vec<u64>,
    pub stabilizer_order: u64,
    pub members: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub q: u64,
    pub t: u64,
    pub orbits: Vec<Orbit>,
}

impl OrbitPartition {
    pub fn representatives(&self) -> Vec<&[u64]> {
        self.orbits.iter().map(|o| o.representative.as_slice()).collect()
    }
}

fn translate(set: &[u64], j: u64, n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = set.iter().map(|&a| (a + j) % n).collect();
    out.sort_unstable();
    out
}

/// Explicit orbits of the translation action on t-subsets of Z_{q-1}, ordered by
/// their lexicographically smallest member.
pub fn enumerate_orbits(q: u64, t: u64, cap: u128) -> Result<OrbitPartition> {
    check_qt(q, t)?;
    let n = q - 1;
    let total = binomial(n, t);
    if total > BigUint::from(cap) {
        return Err(Error::cap(
            "subsets to enumerate",
            total.to_u128().unwrap_or(u128::MAX),
            cap,
        ));
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut orbits = Vec::new();
    for set in (0..n).combinations(t as usize) {
        if seen.contains(&set) {
            continue;
        }
        let mut members: Vec<Vec<u64>> = (0..n).map(|j| translate(&set, j, n)).collect();
        members.sort_unstable();
        members.dedup();
        let stabilizer_order = n / members.len() as u64;
        seen.extend(members.iter().cloned());
        orbits.push(Orbit {
            representative: set,
            stabilizer_order,
            members,
        });
    }
    Ok(OrbitPartition { q, t, orbits })
}

/// `{ j : A + j = A }` in Z_n.
pub fn stabilizer(n: u64, set: &[u64]) -> Vec<u64> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    (0..n).filter(|&j| translate(&sorted, j, n) == sorted).collect()
}

/// Checks that the subgroup of order d stabilizes `A` exactly when `A` is a union
/// of its cosets.
pub fn verify_coset_lemma(n: u64, set: &[u64], d: u64) -> Result<bool> {
    if d == 0 || n % d != 0 {
        return Err(Error::InvalidParameter(format!("{d} does not divide {n}")));
    }
    let sub: Vec<u64> = (0..d).map(|i| i * (n / d)).collect();
    let stab = stabilizer(n, set);
    let contained = sub.iter().all(|c| stab.contains(c));
    let members: HashSet<u64> = set.iter().map(|a| a % n).collect();
    let union_of_cosets = members
        .iter()
        .all(|&a| sub.iter().all(|&c| members.contains(&((a + c) % n))));
    Ok(contained == union_of_cosets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn arithmetic_functions() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(24).unwrap(), 8);
        assert_eq!(euler_phi(97).unwrap(), 96);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert!(euler_phi(0).is_err());
        assert_eq!(binomial(24, 12), b(2704156));
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(5, 5).unwrap(), Psi { numerator: 1, denominator: 1 });
        assert_eq!(psi(4, 5).unwrap(), Psi { numerator: 1, denominator: 1 });
        assert_eq!(psi(2, 5).unwrap(), Psi { numerator: 2, denominator: 1 });
        assert_eq!(psi(2, 12).unwrap(), Psi { numerator: 2, denominator: 1 });
        assert!(psi(1, 5).is_err());
        assert!(psi(6, 5).is_err());
    }

    #[test]
    fn f_table_q25_t12() {
        let f = f_table(25, 12).unwrap();
        let expected: BTreeMap<u64, BigUint> = [(12, 2), (6, 4), (4, 18), (3, 64), (2, 900), (1, 2703168)]
            .into_iter()
            .map(|(d, v)| (d, b(v)))
            .collect();
        assert_eq!(f, expected);
        assert_eq!(count_orbits(25, 12).unwrap(), b(112720));
    }

    #[test]
    fn f_table_small_cases() {
        let f = f_table(7, 3).unwrap();
        assert_eq!(f.get(&3), Some(&b(2)));
        assert_eq!(f.get(&1), Some(&b(18)));
        assert_eq!(count_orbits(7, 3).unwrap(), b(4));
        let coprime = f_table(8, 3).unwrap();
        assert_eq!(coprime.len(), 1);
        assert_eq!(coprime[&1], b(35));
        assert!(f_table(7, 0).is_err());
        assert!(f_table(7, 7).is_err());
        assert!(f_table(1, 1).is_err());
    }

    #[test]
    fn burnside_examples() {
        assert_eq!(burnside_orbits(25, 12).unwrap(), b(112720));
        assert_eq!(burnside_orbits(7, 3).unwrap(), b(4));
        assert_eq!(burnside_orbits(8, 3).unwrap(), b(5));
        assert_eq!(burnside_orbits(7, 2).unwrap(), b(3));
    }

    #[test]
    fn lrs_counts() {
        let r = count_inequivalent_lrs(25, 12, 5, 5).unwrap();
        assert_eq!(r.final_count, b(112720));
        let r = count_inequivalent_lrs(25, 12, 2, 5).unwrap();
        assert_eq!(r.final_count, b(2 * 112720));
        // 2 phi(m) = (phi(m)/2) * 4
        for m in [4, 5, 7, 12] {
            let r = count_inequivalent_lrs(7, 3, 2, m).unwrap();
            assert_eq!(r.final_count, b(2 * euler_phi(m).unwrap()));
        }
        assert_eq!(count_inequivalent_lrs(7, 3, 3, 3).unwrap().final_count, b(4));
        for m in [4, 5, 9, 10] {
            let r = count_inequivalent_lrs(13, 1, 2, m).unwrap();
            assert_eq!(r.final_count, b(euler_phi(m).unwrap() / 2));
        }
        assert!(count_inequivalent_lrs(7, 3, 1, 3).is_err());
    }

    #[test]
    fn report_serializes_exact_integers() {
        let r = count_inequivalent_lrs(25, 12, 3, 3).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"final_count\":112720"));
        assert!(json.contains("\"1\":2703168"));
        let big = count_inequivalent_lrs(128, 63, 2, 2).unwrap();
        let json = serde_json::to_string(&big).unwrap();
        assert!(json.contains(&format!("\"total_orbits\":{}", big.total_orbits)));
    }

    #[test]
    fn table_one_partition() {
        let part = enumerate_orbits(7, 3, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(part.orbits.len(), 4);
        // residues of 3^e mod 7, 3 being the smallest primitive root
        let residue = |e: u64| [1u64, 3, 2, 6, 4, 5][e as usize];
        let as_residues: HashSet<Vec<Vec<u64>>> = part
            .orbits
            .iter()
            .map(|o| {
                let mut sets: Vec<Vec<u64>> = o
                    .members
                    .iter()
                    .map(|s| s.iter().map(|&e| residue(e)).sorted().collect())
                    .collect();
                sets.sort();
                sets
            })
            .collect();
        let table: HashSet<Vec<Vec<u64>>> = [
            vec![vec![1, 2, 4], vec![3, 5, 6]],
            vec![vec![1, 5, 6], vec![3, 4, 6], vec![2, 4, 5], vec![1, 2, 6], vec![2, 3, 5], vec![1, 3, 4]],
            vec![vec![1, 3, 5], vec![2, 3, 6], vec![1, 4, 5], vec![1, 2, 3], vec![2, 4, 6], vec![4, 5, 6]],
            vec![vec![2, 5, 6], vec![1, 4, 6], vec![2, 3, 4], vec![1, 3, 6], vec![1, 2, 5], vec![3, 4, 5]],
        ]
        .into_iter()
        .map(|mut o| {
            o.sort();
            o
        })
        .collect();
        assert_eq!(as_residues, table);
    }

    #[test]
    fn small_partitions() {
        let one = enumerate_orbits(5, 4, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(one.orbits.len(), 1);
        assert_eq!(one.orbits[0].stabilizer_order, 4);
        assert_eq!(enumerate_orbits(7, 2, DEFAULT_ORBIT_CAP).unwrap().orbits.len(), 3);
        assert!(matches!(
            enumerate_orbits(101, 50, DEFAULT_ORBIT_CAP),
            Err(Error::CapExceeded { .. })
        ));
        let again = enumerate_orbits(13, 4, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(again, enumerate_orbits(13, 4, DEFAULT_ORBIT_CAP).unwrap());
    }

    #[test]
    fn coset_lemma_examples() {
        // {1,2,4} in F_7 is {0,2,4} in exponents of 3
        assert_eq!(stabilizer(6, &[0, 2, 4]), vec![0, 2, 4]);
        assert!(verify_coset_lemma(6, &[0, 2, 4], 3).unwrap());
        // {1,5,6} is {0,5,3}
        assert_eq!(stabilizer(6, &[0, 3, 5]), vec![0]);
        let full: Vec<u64> = (0..12).collect();
        for d in divisors(12).unwrap() {
            assert!(verify_coset_lemma(12, &full, d).unwrap());
        }
        assert_eq!(stabilizer(12, &full).len(), 12);
        assert!(verify_coset_lemma(6, &[0], 4).is_err());
    }

    proptest! {
        #[test]
        fn three_counts_agree(q in 2u64..=40, t_seed in 0u64..1000) {
            let t = 1 + t_seed % (q - 1);
            let f = f_table(q, t).unwrap();
            prop_assert_eq!(f.values().sum::<BigUint>(), binomial(q - 1, t));
            for (&d, fd) in &f {
                prop_assert!((fd % BigUint::from((q - 1) / d)).is_zero());
            }
            let c = count_orbits(q, t).unwrap();
            prop_assert_eq!(&c, &burnside_orbits(q, t).unwrap());
            if binomial(q - 1, t) <= BigUint::from(1u32 << 14) {
                let part = enumerate_orbits(q, t, DEFAULT_ORBIT_CAP).unwrap();
                prop_assert_eq!(BigUint::from(part.orbits.len()), c);
                let covered: usize = part.orbits.iter().map(|o| o.members.len()).sum();
                prop_assert_eq!(BigUint::from(covered), binomial(q - 1, t));
                for o in &part.orbits {
                    prop_assert_eq!(o.members.len() as u64 * o.stabilizer_order, q - 1);
                    prop_assert_eq!(&o.members[0], &o.representative);
                }
            }
        }

        #[test]
        fn coset_lemma_holds(n in 1u64..30, raw in prop::collection::btree_set(0u64..30, 1..8), d_seed in 0usize..10) {
            let set: Vec<u64> = raw.into_iter().map(|a| a % n).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
            let ds = divisors(n).unwrap();
            let d = ds[d_seed % ds.len()];
            prop_assert!(verify_coset_lemma(n, &set, d).unwrap());
        }

        #[test]
        fn trivial_counts(q in 2u64..200) {
            prop_assert_eq!(count_orbits(q, 1).unwrap(), BigUint::one());
            prop_assert_eq!(count_orbits(q, q - 1).unwrap(), BigUint::one());
        }
    }
}
