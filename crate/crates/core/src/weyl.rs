//! Weyl group elements as integer matrices acting on simple-root
//! coordinates, enumerated stratum by stratum.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem};

/// A Weyl group element, stored as its action on the root lattice.
///
/// Row-major `n x n` matrix; column `j` holds the coordinates of `w(α_j)`.
/// The matrix is the canonical form: equal elements have identical entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    n: usize,
    m: Box<[i32]>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let mut m = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        WeylElement { n, m: m.into() }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[i32] {
        &self.m
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i32 {
        self.m[row * self.n + col]
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.n)
    }

    /// Matrix product `self * other`, i.e. the element `self ∘ other`.
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let n = self.n;
        let mut m = vec![0i32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.m[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] += a * other.m[k * n + j];
                }
            }
        }
        WeylElement { n, m: m.into() }
    }

    pub fn apply(&self, v: &[i32]) -> Vec<i32> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| self.m[i * n + j] * v[j]).sum())
            .collect()
    }

    pub fn determinant_sign(&self) -> i64 {
        // Bareiss fraction-free elimination; exact for these small matrices.
        let n = self.n;
        let mut a: Vec<i64> = self.m.iter().map(|&x| x as i64).collect();
        let mut sign = 1i64;
        let mut prev = 1i64;
        for k in 0..n {
            if a[k * n + k] == 0 {
                match (k + 1..n).find(|&r| a[r * n + k] != 0) {
                    Some(r) => {
                        for c in 0..n {
                            a.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        sign * a[n * n - 1]
    }
}

/// A word in the simple reflections; letters are 0-based node indices.
///
/// Text form is 1-based, as the tables print it: `"4 3 2 1"` or `"4,3,2,1"`
/// stands for `s_4 s_3 s_2 s_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ReducedWord(pub Vec<usize>);

impl ReducedWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// 1-based letters.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn reversed(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().copied().collect())
    }

    /// Compact `s4s3s2s1` notation; `1` for the empty word.
    pub fn to_product_string(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(|i| format!("s{}", i + 1)).collect()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for ReducedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let tok = tok.trim_start_matches(['s', 'S']);
            let i: usize = tok
                .parse()
                .map_err(|_| Error::invalid(format!("bad letter {tok:?} in word {s:?}")))?;
            if i == 0 {
                return Err(Error::invalid(format!("letters are 1-based, got 0 in {s:?}")));
            }
            letters.push(i - 1);
        }
        Ok(ReducedWord(letters))
    }
}

/// All elements of one length, in lexicographic order of their lex-minimal
/// reduced words.
#[derive(Debug, Clone)]
pub struct LengthStratum {
    pub length: usize,
    pub elements: Vec<WeylElement>,
    /// `words[i]` is the lex-minimal reduced word of `elements[i]`.
    pub words: Vec<ReducedWord>,
    index_of: HashMap<WeylElement, usize>,
}

impl LengthStratum {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index_of.get(w).copied()
    }
}

/// An ordered pair with `u v = w` and `ℓ(u) + ℓ(v) = ℓ(w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub u: WeylElement,
    pub v: WeylElement,
}

/// Weyl group of a root system, together with its reflections.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    sys: RootSystem,
    simple: Vec<WeylElement>,
    /// `reflections[k]` is `s_β` for `β = positive_roots()[k]`.
    reflections: Vec<WeylElement>,
    /// Positive roots flattened, `n` coordinates each.
    roots_flat: Vec<i32>,
}

impl WeylGroup {
    pub fn new(sys: RootSystem) -> Self {
        let n = sys.rank();
        let mut roots_flat = Vec::with_capacity(n * sys.positive_roots().len());
        for r in sys.positive_roots() {
            roots_flat.extend_from_slice(&r.coords);
        }
        let reflections: Vec<WeylElement> = sys
            .positive_roots()
            .iter()
            .map(|beta| reflection_matrix(&sys, beta))
            .collect();
        let simple = (0..n)
            .map(|i| {
                let k = sys.positive_root_index(&Root::simple(n, i).coords).unwrap();
                reflections[k].clone()
            })
            .collect();
        WeylGroup {
            sys,
            simple,
            reflections,
            roots_flat,
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    /// `ℓ(w_0)`, the number of positive roots.
    pub fn longest_length(&self) -> usize {
        self.sys.positive_roots().len()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.rank())
    }

    pub fn simple_reflection(&self, i: usize) -> Result<&WeylElement> {
        self.simple.get(i).ok_or_else(|| {
            Error::invalid(format!(
                "simple reflection index {} out of range 1..={}",
                i + 1,
                self.rank()
            ))
        })
    }

    pub fn reflections(&self) -> &[WeylElement] {
        &self.reflections
    }

    /// `s_β` for any root `β` (positive or negative).
    pub fn reflection_for_root(&self, beta: &Root) -> Result<WeylElement> {
        let idx = self
            .sys
            .positive_root_index(&beta.coords)
            .or_else(|| self.sys.positive_root_index(&beta.negated().coords))
            .ok_or_else(|| Error::NotARoot(beta.coords.clone()))?;
        Ok(self.reflections[idx].clone())
    }

    /// Whether `w` maps the positive root with flat index `k` to a positive root.
    #[inline]
    pub(crate) fn keeps_positive(&self, w: &WeylElement, k: usize) -> bool {
        let n = self.rank();
        let beta = &self.roots_flat[k * n..(k + 1) * n];
        // w(β) is a root, so the sign of any nonzero coordinate decides.
        for i in 0..n {
            let mut c = 0;
            for j in 0..n {
                c += w.m[i * n + j] * beta[j];
            }
            if c != 0 {
                return c > 0;
            }
        }
        unreachable!("w(β) = 0 for a root β")
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &WeylElement) -> usize {
        (0..self.longest_length())
            .filter(|&k| !self.keeps_positive(w, k))
            .count()
    }

    /// `ℓ(w s_i) > ℓ(w)`, i.e. `w(α_i) > 0`.
    #[inline]
    pub fn right_ascent(&self, w: &WeylElement, i: usize) -> bool {
        let n = self.rank();
        for r in 0..n {
            let c = w.m[r * n + i];
            if c != 0 {
                return c > 0;
            }
        }
        unreachable!()
    }

    /// `w s_i`: only columns meeting node `i` change.
    pub fn mul_simple_right(&self, w: &WeylElement, i: usize) -> WeylElement {
        let n = self.rank();
        let c = self.sys.cartan_matrix();
        let mut m = w.m.clone();
        // s_i(α_j) = α_j - ⟨α_j, α_i^∨⟩ α_i, so column j gains -c_ji * column i.
        for j in 0..n {
            let a = c[j][i];
            if a == 0 {
                continue;
            }
            for r in 0..n {
                m[r * n + j] -= a * w.m[r * n + i];
            }
        }
        WeylElement { n, m }
    }

    /// `s_i w`: only row `i` changes.
    pub fn mul_simple_left(&self, i: usize, w: &WeylElement) -> WeylElement {
        let n = self.rank();
        let c = self.sys.cartan_matrix();
        let mut m = w.m.clone();
        for j in 0..n {
            let a = c[j][i];
            if a == 0 {
                continue;
            }
            for col in 0..n {
                m[i * n + col] -= a * w.m[j * n + col];
            }
        }
        WeylElement { n, m }
    }

    /// Product of the letters read left to right. Non-reduced words are fine.
    pub fn parse_word(&self, letters: &[usize]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &i in letters {
            self.simple_reflection(i)?;
            w = self.mul_simple_right(&w, i);
        }
        Ok(w)
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        // Strip right descents: w s_{i1} ... s_{ik} = 1, so w^{-1} = s_{i1} ... s_{ik}.
        let mut cur = w.clone();
        let mut inv = self.identity();
        'outer: loop {
            for i in 0..self.rank() {
                if !self.right_ascent(&cur, i) {
                    cur = self.mul_simple_right(&cur, i);
                    inv = self.mul_simple_right(&inv, i);
                    continue 'outer;
                }
            }
            break;
        }
        debug_assert!(cur.is_identity());
        inv
    }

    /// The lexicographically least reduced word, built greedily from the
    /// smallest left descent at each step.
    pub fn minimal_word(&self, w: &WeylElement) -> ReducedWord {
        // Left descents of w are right descents of w^{-1}.
        let mut inv = self.inverse(w);
        let mut letters = Vec::new();
        'outer: loop {
            for i in 0..self.rank() {
                if !self.right_ascent(&inv, i) {
                    letters.push(i);
                    inv = self.mul_simple_right(&inv, i);
                    continue 'outer;
                }
            }
            break;
        }
        ReducedWord(letters)
    }

    /// Strata `0..=max_len` by breadth-first expansion along right ascents.
    pub fn enumerate_up_to_length(&self, max_len: usize) -> Result<Strata> {
        let mut strata = Strata::new(self);
        strata.extend_to(self, max_len)?;
        Ok(strata)
    }

    /// Every `w = u ⊙ v`, with `u` running through the strata in order.
    pub fn factorizations(&self, w: &WeylElement, strata: &mut Strata) -> Result<Vec<Factorization>> {
        let len = self.length(w);
        strata.extend_to(self, len)?;
        let mut out = Vec::new();
        for k in 0..=len {
            for u in &strata.get(k).elements {
                let v = self.inverse(u).mul(w);
                if self.length(&v) == len - k {
                    out.push(Factorization { u: u.clone(), v });
                }
            }
        }
        Ok(out)
    }

    /// Factorizations `w = u ⊙ v` with `ℓ(u) = left_len` only.
    pub fn factorizations_with_left_length(
        &self,
        w: &WeylElement,
        left_len: usize,
        strata: &mut Strata,
    ) -> Result<Vec<Factorization>> {
        let len = self.length(w);
        if left_len > len {
            return Ok(Vec::new());
        }
        strata.extend_to(self, left_len)?;
        let mut out = Vec::new();
        for u in &strata.get(left_len).elements {
            let v = self.inverse(u).mul(w);
            if self.length(&v) == len - left_len {
                out.push(Factorization { u: u.clone(), v });
            }
        }
        Ok(out)
    }
}

fn reflection_matrix(sys: &RootSystem, beta: &Root) -> WeylElement {
    let n = sys.rank();
    let mut m = vec![0i32; n * n];
    // s_β(α_j) = α_j - ⟨α_j, β^∨⟩ β with ⟨α_j, β^∨⟩ = 2(α_j, β)/(β, β).
    let bb = sys.inner(&beta.coords, &beta.coords);
    for j in 0..n {
        let aj = Root::simple(n, j);
        let num = 2 * sys.inner(&aj.coords, &beta.coords);
        assert!(num % bb == 0);
        let pairing = (num / bb) as i32;
        for r in 0..n {
            m[r * n + j] = (r == j) as i32 - pairing * beta.coords[r];
        }
    }
    WeylElement { n, m: m.into() }
}

/// Length strata `0..=max_length()`, grown on demand.
#[derive(Debug, Clone)]
pub struct Strata {
    strata: Vec<LengthStratum>,
}

impl Strata {
    pub fn new(group: &WeylGroup) -> Self {
        let id = group.identity();
        let mut index_of = HashMap::new();
        index_of.insert(id.clone(), 0);
        Strata {
            strata: vec![LengthStratum {
                length: 0,
                elements: vec![id],
                words: vec![ReducedWord::default()],
                index_of,
            }],
        }
    }

    pub fn max_length(&self) -> usize {
        self.strata.len() - 1
    }

    pub fn get(&self, k: usize) -> &LengthStratum {
        &self.strata[k]
    }

    pub fn try_get(&self, k: usize) -> Option<&LengthStratum> {
        self.strata.get(k)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.strata.iter().map(|s| s.len()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LengthStratum> {
        self.strata.iter()
    }

    /// Locate an element: `(length, index within stratum)`.
    pub fn locate(&self, group: &WeylGroup, w: &WeylElement) -> Option<(usize, usize)> {
        let len = group.length(w);
        self.strata
            .get(len)
            .and_then(|s| s.index_of(w))
            .map(|i| (len, i))
    }

    pub fn extend_to(&mut self, group: &WeylGroup, max_len: usize) -> Result<()> {
        if max_len > group.longest_length() {
            return Err(Error::invalid(format!(
                "length {max_len} exceeds ℓ(w_0) = {}",
                group.longest_length()
            )));
        }
        while self.max_length() < max_len {
            let prev = self.strata.last().unwrap();
            let length = prev.length + 1;
            let mut elements = Vec::new();
            let mut words = Vec::new();
            let mut index_of = HashMap::new();
            // Walking the previous stratum in word order and appending letters
            // in increasing order discovers each element first through its
            // lex-minimal reduced word, so the new stratum comes out sorted.
            for (v, word) in prev.elements.iter().zip(&prev.words) {
                for i in 0..group.rank() {
                    if !group.right_ascent(v, i) {
                        continue;
                    }
                    let w = group.mul_simple_right(v, i);
                    if index_of.contains_key(&w) {
                        continue;
                    }
                    index_of.insert(w.clone(), elements.len());
                    elements.push(w);
                    let mut letters = word.0.clone();
                    letters.push(i);
                    words.push(ReducedWord(letters));
                }
            }
            self.strata.push(LengthStratum {
                length,
                elements,
                words,
                index_of,
            });
        }
        Ok(())
    }
}
