#![allow(dead_code)]

use rand::Rng;
use schubert_pullback::rootsys::RootSystem;
use schubert_pullback::weyl::ReducedWord;

/// Order of `s_i s_j` from the Cartan matrix.
pub fn braid_order(sys: &RootSystem, i: usize, j: usize) -> usize {
    if i == j {
        return 1;
    }
    let c = sys.cartan_matrix();
    match c[i][j] * c[j][i] {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        x => panic!("bad Cartan product {x}"),
    }
}

/// Every `(position, i, j)` where the word contains the alternating block
/// `i j i ...` of length `m_ij`.
pub fn braid_sites(sys: &RootSystem, w: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for start in 0..w.len() {
        if start + 1 >= w.len() || w[start] == w[start + 1] {
            continue;
        }
        let (i, j) = (w[start], w[start + 1]);
        let m = braid_order(sys, i, j);
        if start + m > w.len() {
            continue;
        }
        if (0..m).all(|t| w[start + t] == if t % 2 == 0 { i } else { j }) {
            out.push((start, i, j));
        }
    }
    out
}

/// Apply one random braid move; returns `false` if the word admits none.
pub fn random_braid_move(sys: &RootSystem, w: &mut ReducedWord, rng: &mut impl Rng) -> bool {
    let sites = braid_sites(sys, &w.0);
    if sites.is_empty() {
        return false;
    }
    let (start, i, j) = sites[rng.gen_range(0..sites.len())];
    let m = braid_order(sys, i, j);
    for t in 0..m {
        w.0[start + t] = if t % 2 == 0 { j } else { i };
    }
    true
}

/// Coefficients of `prod (1 + q + ... + q^e)`.
pub fn poincare(exponents: &[u32]) -> Vec<usize> {
    let mut c = vec![1usize];
    for &e in exponents {
        let mut next = vec![0; c.len() + e as usize];
        for (k, &x) in c.iter().enumerate() {
            for t in 0..=e as usize {
                next[k + t] += x;
            }
        }
        c = next;
    }
    c
}
