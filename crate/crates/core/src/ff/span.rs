//! F_q-spans of vectors over F_{q^m}, computed by expanding every element into
//! its F_p coordinates and running an incremental echelon reduction.

use super::{Elt, FieldTower};

/// Incremental row-echelon basis over F_p.
#[derive(Clone, Debug)]
enum Echelon {
    /// p = 2 and at most 128 coordinates: rows are bitmasks keyed by their top bit.
    Binary(Vec<u128>),
    /// General p: (pivot column, row normalized so the pivot is 1).
    Dense { p: u64, rows: Vec<(usize, Vec<u64>)> },
}

impl Echelon {
    fn new(p: u64, width: usize) -> Self {
        if p == 2 && width <= 128 {
            Echelon::Binary(Vec::new())
        } else {
            Echelon::Dense {
                p,
                rows: Vec::new(),
            }
        }
    }

    fn rank(&self) -> usize {
        match self {
            Echelon::Binary(rows) => rows.len(),
            Echelon::Dense { rows, .. } => rows.len(),
        }
    }

    fn insert_bits(rows: &mut Vec<u128>, mut v: u128) -> bool {
        for &r in rows.iter() {
            let top = 127 - r.leading_zeros();
            if v >> top & 1 == 1 {
                v ^= r;
            }
        }
        if v == 0 {
            return false;
        }
        // keep rows sorted by decreasing top bit so a single pass reduces fully
        let pos = rows
            .iter()
            .position(|r| r.leading_zeros() > v.leading_zeros())
            .unwrap_or(rows.len());
        rows.insert(pos, v);
        true
    }

    fn insert_dense(p: u64, rows: &mut Vec<(usize, Vec<u64>)>, mut v: Vec<u64>) -> bool {
        for (pivot, r) in rows.iter() {
            let c = v[*pivot];
            if c != 0 {
                let f = p - c;
                for (x, y) in v.iter_mut().zip(r) {
                    *x = (*x + f * y) % p;
                }
            }
        }
        let Some(pivot) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = inv_mod(v[pivot], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        rows.push((pivot, v));
        true
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// F_q-span of vectors of a fixed length over F_{q^m}.
#[derive(Clone, Debug)]
pub struct FqSpan<'a> {
    tower: &'a FieldTower,
    len: usize,
    ech: Echelon,
}

impl<'a> FqSpan<'a> {
    pub fn new(tower: &'a FieldTower, len: usize) -> Self {
        let width = len * tower.prime_degree();
        FqSpan {
            tower,
            len,
            ech: Echelon::new(tower.p(), width),
        }
    }

    /// Dimension over F_q.
    pub fn dim(&self) -> usize {
        self.ech.rank() / self.tower.a() as usize
    }

    /// Adds a single field element (vectors of length 1). Returns whether the span grew.
    pub fn insert(&mut self, x: Elt) -> bool {
        self.insert_vec(&[x])
    }

    /// Adds a vector; returns whether the span grew.
    pub fn insert_vec(&mut self, v: &[Elt]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let t = self.tower;
        let before = self.ech.rank();
        // F_q v = F_p-span of { w^l v : l < a } for an F_p-basis (w^l) of F_q
        for &w in t.fq_basis() {
            let scaled: Vec<Elt> = v.iter().map(|&x| t.mul(w, x)).collect();
            match &mut self.ech {
                Echelon::Binary(rows) => {
                    let d = t.prime_degree();
                    let bits = scaled
                        .iter()
                        .enumerate()
                        .fold(0u128, |acc, (i, &x)| acc | (t.poly_int(x) as u128) << (i * d));
                    Echelon::insert_bits(rows, bits);
                }
                Echelon::Dense { p, rows } => {
                    let coords: Vec<u64> = scaled.iter().flat_map(|&x| t.fp_coords(x)).collect();
                    Echelon::insert_dense(*p, rows, coords);
                }
            }
        }
        self.ech.rank() > before
    }
}

/// Dimension over F_q of the span of the given elements.
pub fn fq_dim(tower: &FieldTower, elements: &[Elt]) -> usize {
    let mut span = FqSpan::new(tower, 1);
    for &x in elements {
        span.insert(x);
    }
    span.dim()
}

/// Dimension over F_q of the span of the given vectors (all of length `len`).
pub fn fq_dim_vectors<'v>(
    tower: &FieldTower,
    len: usize,
    vectors: impl IntoIterator<Item = &'v [Elt]>,
) -> usize {
    let mut span = FqSpan::new(tower, len);
    for v in vectors {
        span.insert_vec(v);
    }
    span.dim()
}
