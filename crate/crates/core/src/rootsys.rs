//! Root data for the simple Cartan types.
//!
//! Everything lives in simple-root coordinates: a root is an integer vector
//! `(c_1, ..., c_n)` meaning `c_1 α_1 + ... + c_n α_n`, a weight is a rational
//! vector in the same basis. The only geometric input is the Cartan matrix;
//! the invariant form is recovered from it through a symmetrizer.
//!
//! Node labels follow Bourbaki:
//!
//! ```text
//! A_n  1 - 2 - ... - n
//! B_n  1 - ... - (n-1) => n        (α_n short)
//! C_n  1 - ... - (n-1) <= n        (α_n long)
//! D_n  1 - ... - (n-2) - (n-1)
//!                    \ - n
//! E_n  1 - 3 - 4 - 5 - ... - n,  2 attached to 4
//! F_4  1 - 2 => 3 - 4              (α_1, α_2 long)
//! G_2  1 <= 2                      (α_1 short, α_2 long)
//! ```

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A simple Cartan type such as `F4` or `A3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::invalid(format!("{family}{rank} is not a simple Cartan type")))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// G2, F4 and E8: adjoint and simply connected forms coincide.
    pub fn has_trivial_center(&self) -> bool {
        matches!(
            (self.family, self.rank),
            (Family::G, 2) | (Family::F, 4) | (Family::E, 8)
        )
    }

    /// Exponents `e_i` of the Weyl group; the Poincaré polynomial is
    /// `∏ (1 + q + ... + q^{e_i})`.
    pub fn exponents(&self) -> Vec<u32> {
        let n = self.rank as u32;
        match self.family {
            Family::A => (1..=n).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i - 1).collect(),
            Family::D => {
                let mut e: Vec<u32> = (1..n).map(|i| 2 * i - 1).collect();
                e.push(n - 1);
                e.sort_unstable();
                e
            }
            Family::E => match n {
                6 => vec![1, 4, 5, 7, 8, 11],
                7 => vec![1, 5, 7, 9, 11, 13, 17],
                _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
            },
            Family::F => vec![1, 5, 7, 11],
            Family::G => vec![1, 5],
        }
    }

    /// The Cartan matrix `c_ij = ⟨α_j^∨, α_i⟩ = 2(α_i, α_j)/(α_j, α_j)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut bond = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..n - 1 {
                    bond(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    bond(i, i + 1);
                }
                bond(n - 3, n - 1);
            }
            Family::E => {
                bond(0, 2);
                bond(1, 3);
                for i in 2..n - 1 {
                    bond(i, i + 1);
                }
            }
            Family::F => {
                bond(0, 1);
                bond(1, 2);
                bond(2, 3);
            }
            Family::G => bond(0, 1),
        }
        match self.family {
            Family::B => c[n - 2][n - 1] = -2,
            Family::C => c[n - 1][n - 2] = -2,
            Family::F => c[1][2] = -2,
            Family::G => c[1][0] = -3,
            _ => {}
        }
        c
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::invalid(format!("unknown Cartan type {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::invalid(format!("unknown Cartan type {s:?}")))?;
        CartanType::new(family, rank)
    }
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i32>,
}

impl Root {
    pub fn new(coords: Vec<i32>) -> Self {
        Root { coords }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Root { coords }
    }

    pub fn height(&self) -> i32 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0) && self.coords.iter().any(|&c| c > 0)
    }

    pub fn negated(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// A weight in simple-root coordinates (generally rational).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    pub coords: Vec<Rational64>,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i32>>,
    /// `d_j = (α_j, α_j) / 2`, normalized so short roots have `d = 1`.
    symmetrizer: Vec<i64>,
    /// Gram matrix `(α_i, α_j) = c_ij d_j`.
    form: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    root_index: HashMap<Vec<i32>, usize>,
    fundamental_weights: Vec<Weight>,
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Self {
        let cartan = cartan_type.cartan_matrix();
        let n = cartan_type.rank();
        let symmetrizer = symmetrize(&cartan);
        let form: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| cartan[i][j] as i64 * symmetrizer[j]).collect())
            .collect();
        debug_assert!((0..n).all(|i| (0..n).all(|j| form[i][j] == form[j][i])));

        let positive_roots = positive_roots_by_strings(&cartan);
        let root_index = positive_roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.coords.clone(), k))
            .collect();
        let fundamental_weights = invert_rational(&cartan)
            .into_iter()
            .map(|coords| Weight { coords })
            .collect();

        RootSystem {
            cartan_type,
            cartan,
            symmetrizer,
            form,
            positive_roots,
            root_index,
            fundamental_weights,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn gram_matrix(&self) -> &[Vec<i64>] {
        &self.form
    }

    /// Positive roots ordered by height, then lexicographically on coordinates.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental_weights
    }

    /// Index of `coords` in [`positive_roots`](Self::positive_roots).
    pub fn positive_root_index(&self, coords: &[i32]) -> Option<usize> {
        self.root_index.get(coords).copied()
    }

    pub fn is_root(&self, coords: &[i32]) -> bool {
        if self.root_index.contains_key(coords) {
            return true;
        }
        let neg: Vec<i32> = coords.iter().map(|c| -c).collect();
        self.root_index.contains_key(&neg)
    }

    /// `(x, y)` for integer vectors in simple-root coordinates.
    pub fn inner(&self, x: &[i32], y: &[i32]) -> i64 {
        let mut s = 0i64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                s += xi as i64 * yj as i64 * self.form[i][j];
            }
        }
        s
    }

    fn inner_rational(&self, x: &[i32], y: &[Rational64]) -> Rational64 {
        let mut s = Rational64::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += Rational64::from_integer(xi as i64 * self.form[i][j]) * yj;
            }
        }
        s
    }

    fn check_root(&self, beta: &Root) -> Result<()> {
        if beta.coords.len() != self.rank() || !self.is_root(&beta.coords) {
            return Err(Error::NotARoot(beta.coords.clone()));
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::invalid(format!(
                "node index {} out of range for {}",
                i + 1,
                self.cartan_type
            )));
        }
        Ok(())
    }

    /// `⟨β^∨, α_i⟩ = 2(β, α_i)/(β, β)`.
    pub fn pair_coroot_with_root(&self, beta: &Root, i: usize) -> Result<i32> {
        self.check_root(beta)?;
        self.check_index(i)?;
        let num = 2 * self.inner(&beta.coords, &Root::simple(self.rank(), i).coords);
        let den = self.inner(&beta.coords, &beta.coords);
        assert!(num % den == 0, "non-integral Cartan integer for {beta:?}");
        Ok((num / den) as i32)
    }

    /// `⟨β^∨, ω_i⟩ = 2(β, ω_i)/(β, β)`, computed through the rational
    /// coordinates of the fundamental weight.
    pub fn pair_coroot_with_weight(&self, beta: &Root, i: usize) -> Result<i32> {
        self.check_root(beta)?;
        self.check_index(i)?;
        let num = self.inner_rational(&beta.coords, &self.fundamental_weights[i].coords)
            * Rational64::from_integer(2);
        let den = self.inner(&beta.coords, &beta.coords);
        let v = num / Rational64::from_integer(den);
        assert!(v.is_integer(), "non-integral pairing with ω_{}", i + 1);
        Ok(*v.numer() as i32)
    }

    /// `⟨α_j, α_i^∨⟩`, the coefficient used by the simple reflection
    /// `s_i(α_j) = α_j - ⟨α_j, α_i^∨⟩ α_i`.
    pub fn simple_coroot_value(&self, j: usize, i: usize) -> i32 {
        self.cartan[j][i]
    }

    /// Whether the Gram matrix is positive definite (all leading pivots > 0).
    pub fn form_is_positive_definite(&self) -> bool {
        let n = self.rank();
        let mut m: Vec<Vec<Rational64>> = self
            .form
            .iter()
            .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
            .collect();
        for k in 0..n {
            if m[k][k] <= Rational64::zero() {
                return false;
            }
            for i in k + 1..n {
                let f = m[i][k] / m[k][k];
                for j in k..n {
                    let t = m[k][j] * f;
                    m[i][j] -= t;
                }
            }
        }
        true
    }
}

/// Solve `c_ij d_j = c_ji d_i` along the Dynkin diagram, scaled so `min d = 1`.
fn symmetrize(cartan: &[Vec<i32>]) -> Vec<i64> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational64>> = vec![None; n];
    d[0] = Some(Rational64::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let di = d[i].unwrap();
        for j in 0..n {
            if j != i && cartan[i][j] != 0 && d[j].is_none() {
                d[j] = Some(di * Rational64::new(cartan[j][i] as i64, cartan[i][j] as i64));
                stack.push(j);
            }
        }
    }
    let d: Vec<Rational64> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let min = *d.iter().min().unwrap();
    d.iter()
        .map(|x| {
            let r = x / min;
            assert!(r.is_integer());
            *r.numer()
        })
        .collect()
}

/// Grow the positive roots height by height: `β + α_i` is a root exactly when
/// the `α_i`-string through `β` extends upward, i.e. `r - ⟨β, α_i^∨⟩ > 0`
/// where `r` counts how far the string goes down.
fn positive_roots_by_strings(cartan: &[Vec<i32>]) -> Vec<Root> {
    let n = cartan.len();
    let mut known: std::collections::HashSet<Vec<i32>> = std::collections::HashSet::new();
    let mut level: Vec<Vec<i32>> = (0..n).map(|i| Root::simple(n, i).coords).collect();
    let mut all: Vec<Root> = Vec::new();
    while !level.is_empty() {
        level.sort();
        level.dedup();
        for r in &level {
            known.insert(r.clone());
        }
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..n {
                let mut down = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        down += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i32 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                if down - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.push(up);
                }
            }
        }
        all.extend(level.drain(..).map(Root::new));
        level = next;
    }
    all.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.coords.cmp(&b.coords)));
    all
}

/// Rows of the inverse of `m` over the rationals, indexed so that
/// `Σ_k out[i][k] m[k][j] = δ_ij`.
fn invert_rational(m: &[Vec<i32>]) -> Vec<Vec<Rational64>> {
    let n = m.len();
    // Solve X m = I  <=>  m^T X^T = I.
    let mut a: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational64> =
                (0..n).map(|j| Rational64::from_integer(m[j][i] as i64)).collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let t = a[col][c] * f;
                    a[r][c] -= t;
                }
            }
        }
    }
    // a[:, n..] = (m^T)^{-1} = X^T, so X[i][k] = a[k][n + i].
    (0..n)
        .map(|i| (0..n).map(|k| a[k][n + i]).collect())
        .collect()
}
