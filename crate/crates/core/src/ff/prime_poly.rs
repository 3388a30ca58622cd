//! Dense polynomials over a prime field, used only while building the
//! exponent tables of a tower. Coefficients are stored lowest degree first.

pub(crate) type Poly = Vec<u64>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Remainder of `f` modulo the monic polynomial `modulus`.
pub(crate) fn rem(f: &[u64], modulus: &[u64], p: u64) -> Poly {
    let d = modulus.len() - 1;
    let mut r = f.to_vec();
    while r.len() > d {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - d;
            for (i, &c) in modulus[..d].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * lead) % p;
            }
        }
    }
    trim(r)
}

pub(crate) fn mul_mod(f: &[u64], g: &[u64], modulus: &[u64], p: u64) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            if b != 0 {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
    }
    rem(&prod, modulus, p)
}

pub(crate) fn pow_poly_mod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Poly {
    let mut result = vec![1u64];
    let mut b = rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, modulus, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(&b, &b, modulus, p);
        }
    }
    result
}

fn sub(f: &[u64], g: &[u64], p: u64) -> Poly {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0);
            let b = g.get(i).copied().unwrap_or(0);
            (a + p - b) % p
        })
        .collect();
    trim(out)
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p);
        let monic: Poly = b.iter().map(|c| c * inv % p).collect();
        let r = rem(&a, &monic, p);
        a = monic;
        b = r;
    }
    a
}

/// Rabin's irreducibility test for a monic polynomial of degree `d >= 1`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    let x = vec![0, 1];
    // x^{p^j} mod f, for j = 0..=d
    let mut frob = vec![rem(&x, f, p)];
    for _ in 0..d {
        let next = pow_poly_mod(frob.last().unwrap(), p, f, p);
        frob.push(next);
    }
    if sub(&frob[d], &x, p).iter().any(|&c| c != 0) {
        return false;
    }
    prime_factors(d as u64).into_iter().all(|r| {
        let h = sub(&frob[d / r as usize], &x, p);
        let g = gcd(f, &h, p);
        g.len() == 1
    })
}

/// Encode a polynomial of degree `< d` as the integer `sum c_i p^i`.
pub(crate) fn encode(f: &[u64], p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| acc * p + c)
}

pub(crate) fn decode(mut n: u64, p: u64, d: usize) -> Poly {
    let mut out = vec![0; d];
    for c in out.iter_mut() {
        *c = n % p;
        n /= p;
    }
    trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rabin_small_cases() {
        // x^2 + 1 over F_3 is irreducible, over F_2 it is (x + 1)^2
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible(&[0, 1, 0, 1], 2));
        // x^4 + x + 1 irreducible over F_2, x^4 + x^2 + 1 = (x^2+x+1)^2 is not
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree d over F_p = (1/d) sum_{e|d} mu(e) p^{d/e}
        for (p, d, expected) in [(2u64, 4usize, 3usize), (2, 5, 6), (3, 3, 8), (5, 2, 10)] {
            let count = (0..p.pow(d as u32))
                .filter(|&n| {
                    let mut f = decode(n, p, d);
                    f.resize(d, 0);
                    f.push(1);
                    is_irreducible(&f, p)
                })
                .count();
            assert_eq!(count, expected, "p={p} d={d}");
        }
    }

    #[test]
    fn encode_decode() {
        assert_eq!(encode(&[1, 2], 3), 7);
        assert_eq!(decode(7, 3, 2), vec![1, 2]);
        assert_eq!(decode(0, 3, 2), Vec::<u64>::new());
    }
}
