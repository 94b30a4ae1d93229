//! Independent dimension oracle: Terracini-style Jacobian of the classical
//! parametrization `(λ, t) ↦ ⋆_k Σ_i λ_{k,i} t_{k,i}^A`. Exponents, field
//! arithmetic and elimination are all local to this file; nothing here
//! calls into the library beyond reading exponent columns.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const P: u64 = 1_000_000_007;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

/// Exponent vectors of degree `d` in `n + 1` variables.
pub fn degree_monomials(d: u32, n: u32) -> Vec<Vec<u32>> {
    fn rec(vars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(vars - 1, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as usize + 1, d, &mut Vec::new(), &mut out);
    out
}

/// Columns of the Segre–Veronese embedding: concatenated exponent blocks.
pub fn sv_columns(d: &[u32], n: &[u32]) -> Vec<Vec<u32>> {
    let mut cols: Vec<Vec<u32>> = vec![Vec::new()];
    for (&di, &ni) in d.iter().zip(n) {
        let block = degree_monomials(di, ni);
        cols = cols
            .iter()
            .flat_map(|c| {
                block.iter().map(move |b| {
                    let mut v = c.clone();
                    v.extend(b);
                    v
                })
            })
            .collect();
    }
    cols
}

pub fn rank(mut m: Vec<Vec<u64>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let iv = inv(m[r][c]);
        for x in &mut m[r][c..] {
            *x = mul(*x, iv);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = (*x + P - mul(f, p)) % P;
                }
            }
        }
        r += 1;
    }
    r
}

fn monomial(t: &[u64], a: &[u32]) -> u64 {
    t.iter()
        .zip(a)
        .fold(1, |acc, (&x, &e)| mul(acc, pow(x, e as u64)))
}

/// Projective dimension of `σ_{r_1}(X) ⋆ ... ⋆ σ_{r_m}(X)` for the variety
/// with the given exponent columns, as the best Jacobian rank over `tries`
/// random points, minus one.
pub fn hadamard_dim(cols: &[Vec<u32>], r: &[usize], seed: u64, tries: usize) -> usize {
    let big_n = cols.len();
    let vars = cols[0].len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..tries {
        // sums[k][j] = Σ_i λ_{k,i} t_{k,i}^{a_j}
        let mut lam = Vec::new();
        let mut pts = Vec::new();
        let mut sums = Vec::new();
        for &rk in r {
            let l: Vec<u64> = (0..rk).map(|_| rng.gen_range(1..P)).collect();
            let t: Vec<Vec<u64>> = (0..rk)
                .map(|_| (0..vars).map(|_| rng.gen_range(1..P)).collect())
                .collect();
            let s: Vec<u64> = cols
                .iter()
                .map(|a| (0..rk).fold(0, |acc, i| (acc + mul(l[i], monomial(&t[i], a))) % P))
                .collect();
            lam.push(l);
            pts.push(t);
            sums.push(s);
        }
        // others[k][j] = ∏_{h ≠ k} sums[h][j]
        let others: Vec<Vec<u64>> = (0..r.len())
            .map(|k| {
                (0..big_n)
                    .map(|j| {
                        (0..r.len())
                            .filter(|&h| h != k)
                            .fold(1, |acc, h| mul(acc, sums[h][j]))
                    })
                    .collect()
            })
            .collect();
        let mut jac: Vec<Vec<u64>> = vec![Vec::new(); big_n];
        for k in 0..r.len() {
            for i in 0..r[k] {
                let t = &pts[k][i];
                for (j, a) in cols.iter().enumerate() {
                    let mono = monomial(t, a);
                    jac[j].push(mul(others[k][j], mono));
                    for l in 0..vars {
                        let d = mul(mul(lam[k][i], a[l] as u64), mul(mono, inv(t[l])));
                        jac[j].push(mul(others[k][j], d));
                    }
                }
            }
        }
        best = best.max(rank(jac));
    }
    best.saturating_sub(1)
}

pub fn secant_dim(cols: &[Vec<u32>], r: usize, seed: u64) -> usize {
    hadamard_dim(cols, &[r], seed, 2)
}

/// Columns of a library exponent matrix, for custom varieties.
pub fn matrix_columns(a: &hadsec_core::ExponentMatrix) -> Vec<Vec<u32>> {
    (0..a.ncols())
        .map(|c| a.column(c).into_iter().map(|x| x as u32).collect())
        .collect()
}

/// Number of integer partitions of `k`, by direct recursion on the largest part.
pub fn partitions(k: usize) -> u64 {
    fn rec(k: usize, max: usize) -> u64 {
        if k == 0 {
            return 1;
        }
        (1..=max.min(k)).map(|p| rec(k - p, p)).sum()
    }
    rec(k, k)
}
