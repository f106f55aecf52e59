//! Known presentations of `CH*(G; F_p)` as truncated polynomial algebras.
//!
//! Every case here has the shape `F_p[x_{d_1}, ..., x_{d_r}] / (x_{d_j}^{h_j})`,
//! with `deg x_d = d` in the doubled grading (so `x_d` lives over Weyl group
//! elements of length `d / 2`).

use std::collections::BTreeMap;

use super::label::Monomial;
use super::Lattice;
use crate::rootsys::{CartanType, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub degree: u32,
    /// Truncation: `x^height = 0`.
    pub height: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
}

impl Presentation {
    pub fn trivial() -> Self {
        Presentation {
            generators: Vec::new(),
        }
    }

    pub fn new(generators: &[(u32, u32)]) -> Self {
        let mut generators: Vec<Generator> = generators
            .iter()
            .map(|&(degree, height)| Generator { degree, height })
            .collect();
        generators.sort_by_key(|g| g.degree);
        Presentation { generators }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn top_degree(&self) -> u32 {
        self.generators
            .iter()
            .map(|g| g.degree * (g.height - 1))
            .sum()
    }

    /// Basis monomials of the given degree.
    pub fn monomials(&self, degree: u32) -> Vec<Monomial> {
        fn go(gens: &[Generator], left: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<Monomial>) {
            let Some((g, rest)) = gens.split_first() else {
                if left == 0 {
                    out.push(Monomial::from_factors(acc.clone()));
                }
                return;
            };
            for e in 0..g.height {
                let d = g.degree * e;
                if d > left {
                    break;
                }
                if e > 0 {
                    acc.push((g.degree, e));
                }
                go(rest, left - d, acc, out);
                if e > 0 {
                    acc.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(&self.generators, degree, &mut Vec::new(), &mut out);
        out
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.monomials(degree).len()
    }

    /// Nonzero graded dimensions.
    pub fn graded_dims(&self) -> BTreeMap<usize, usize> {
        let mut dims = vec![1usize];
        for g in &self.generators {
            let mut next = vec![0usize; dims.len() + (g.degree * (g.height - 1)) as usize];
            for (i, &c) in dims.iter().enumerate() {
                for e in 0..g.height {
                    next[i + (g.degree * e) as usize] += c;
                }
            }
            dims = next;
        }
        dims.into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .collect()
    }
}

/// The largest `k` with `p^k | n`.
fn valuation(mut n: usize, p: u32) -> u32 {
    let p = p as usize;
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// `CH*(G; F_p)` for the group of type `ct` and the given lattice, where known.
///
/// `None` means the table does not cover the case (Spin and SO modulo 2).
pub fn presentation(ct: CartanType, p: u32, lattice: Lattice) -> Option<Presentation> {
    let n = ct.rank();
    let adjoint = lattice == Lattice::Adjoint;
    let pres = match (ct.family(), n) {
        (Family::A, _) => {
            // PGL_{n+1}: F_p[x_2] / (x_2^{p^k}), p^k || n + 1.
            let k = if adjoint { valuation(n + 1, p) } else { 0 };
            if k == 0 {
                Presentation::trivial()
            } else {
                Presentation::new(&[(2, p.pow(k))])
            }
        }
        (Family::C, _) => {
            // PSp_{2n} mod 2: F_2[x_2] / (x_2^{2^{k+1}}), 2^k || n.
            if adjoint && p == 2 {
                Presentation::new(&[(2, 2 << valuation(n, 2))])
            } else {
                Presentation::trivial()
            }
        }
        (Family::B | Family::D, _) => {
            if p == 2 {
                return None;
            }
            Presentation::trivial()
        }
        (Family::G, 2) => match p {
            2 => Presentation::new(&[(6, 2)]),
            _ => Presentation::trivial(),
        },
        (Family::F, 4) => match p {
            2 => Presentation::new(&[(6, 2)]),
            3 => Presentation::new(&[(8, 3)]),
            _ => Presentation::trivial(),
        },
        (Family::E, 6) => match (p, adjoint) {
            (2, _) => Presentation::new(&[(6, 2)]),
            (3, false) => Presentation::new(&[(8, 3)]),
            (3, true) => Presentation::new(&[(2, 9), (8, 3)]),
            _ => Presentation::trivial(),
        },
        (Family::E, 7) => match (p, adjoint) {
            (2, false) => Presentation::new(&[(6, 2), (10, 2), (18, 2)]),
            (2, true) => Presentation::new(&[(2, 2), (6, 2), (10, 2), (18, 2)]),
            (3, _) => Presentation::new(&[(8, 3)]),
            _ => Presentation::trivial(),
        },
        (Family::E, 8) => match p {
            2 => Presentation::new(&[(6, 8), (10, 4), (18, 2), (30, 2)]),
            3 => Presentation::new(&[(8, 3), (20, 3)]),
            5 => Presentation::new(&[(12, 5)]),
            _ => Presentation::trivial(),
        },
        _ => return None,
    };
    Some(pres)
}

/// Nonzero graded dimensions of `CH*(G; F_p)`; `None` when not covered.
pub fn expected_dims(ct: CartanType, p: u32, lattice: Lattice) -> Option<BTreeMap<usize, usize>> {
    presentation(ct, p, lattice).map(|pr| pr.graded_dims())
}
