//! `π*: CH*(G/B; F_p) -> CH*(G; F_p)` on Schubert classes.
//!
//! The kernel of `π*` is the ideal generated by the degree-2 classes coming
//! from the character lattice. In degree `2k` it is therefore spanned by the
//! products `x_i ⌣ [Σ_u]` with `ℓ(u) = k - 1`, which the Chevalley formula
//! expands as
//!
//! ```text
//! x_i ⌣ [Σ_u] = Σ ⟨β^∨, x_i⟩ [Σ_{u s_β}]     (β > 0, ℓ(u s_β) = ℓ(u) + 1)
//! ```
//!
//! with `x_i = α_i` for the adjoint form and `x_i = ω_i` for the simply
//! connected one. The image of `[Σ_w]` is its class in the quotient of the
//! degree-`2k` span by these relations.

pub mod label;
pub mod presentation;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fplinalg::{inv_mod, is_prime, FpVector, QuotientSpace, MAX_MODULUS};
use crate::rootsys::{CartanType, Family, RootSystem};
use crate::weyl::{ReducedWord, Strata, WeylElement, WeylGroup};

pub use label::{Label, Monomial, SignedMonomial};
pub use presentation::{expected_dims, presentation, Presentation};

/// Which character lattice supplies the degree-2 generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lattice {
    /// Root lattice: relations from `α_i`.
    Adjoint,
    /// Weight lattice: relations from `ω_i`.
    SimplyConnected,
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lattice::Adjoint => "adjoint",
            Lattice::SimplyConnected => "simply_connected",
        })
    }
}

impl FromStr for Lattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "adjoint" | "ad" => Ok(Lattice::Adjoint),
            "simply_connected" | "sc" => Ok(Lattice::SimplyConnected),
            _ => Err(Error::invalid(format!("unknown lattice {s:?}"))),
        }
    }
}

/// One degree of the computation: type, prime, word length `k` (degree `2k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PullbackProblem {
    pub cartan_type: CartanType,
    pub p: u32,
    pub k: usize,
    pub lattice: Lattice,
}

impl PullbackProblem {
    pub fn new(cartan_type: CartanType, p: u32, k: usize, lattice: Lattice) -> Result<Self> {
        check_prime(p)?;
        Ok(PullbackProblem {
            cartan_type,
            p,
            k,
            lattice: effective_lattice(cartan_type, lattice),
        })
    }

    pub fn degree(&self) -> usize {
        2 * self.k
    }
}

fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) || p >= MAX_MODULUS {
        return Err(Error::invalid(format!("{p} is not a supported prime")));
    }
    Ok(())
}

fn effective_lattice(ct: CartanType, lattice: Lattice) -> Lattice {
    if ct.has_trivial_center() && lattice == Lattice::SimplyConnected {
        log::warn!("{ct} has trivial center; lattice flag ignored");
        return Lattice::Adjoint;
    }
    lattice
}

/// Chevalley relations in degree `2k`: one row per `(u, i)`, `ℓ(u) = k - 1`,
/// columns indexed by the length-`k` stratum.
#[derive(Debug, Clone)]
pub struct RelationMatrix {
    pub p: u32,
    pub width: usize,
    /// Row `a * rank + i` is `x_i ⌣ [Σ_{u_a}]`.
    pub rows: Vec<FpVector>,
}

/// `⟨β^∨, x_i⟩` for every positive root `β` (outer) and node `i` (inner).
pub fn generator_pairings(sys: &RootSystem, lattice: Lattice) -> Vec<Vec<i32>> {
    sys.positive_roots()
        .iter()
        .map(|beta| {
            (0..sys.rank())
                .map(|i| match lattice {
                    Lattice::Adjoint => sys.pair_coroot_with_root(beta, i),
                    Lattice::SimplyConnected => sys.pair_coroot_with_weight(beta, i),
                }
                .expect("positive root"))
                .collect()
        })
        .collect()
}

/// Build the degree-`2k` relation matrix; strata `k - 1` and `k` must exist.
pub fn build_relations(
    group: &WeylGroup,
    strata: &Strata,
    k: usize,
    p: u32,
    pairings: &[Vec<i32>],
) -> RelationMatrix {
    assert!(k >= 1 && strata.max_length() >= k);
    let n = group.rank();
    let lower = strata.get(k - 1);
    let upper = strata.get(k);
    let width = upper.len();
    let reflections = group.reflections();

    let blocks: Vec<Vec<FpVector>> = lower
        .elements
        .par_iter()
        .map(|u| {
            let mut raw = vec![vec![0i64; width]; n];
            let mut filled = vec![false; width];
            for (b, s_beta) in reflections.iter().enumerate() {
                // ℓ(u s_β) > ℓ(u) iff u(β) > 0; exact length via stratum lookup.
                if !group.keeps_positive(u, b) {
                    continue;
                }
                let w = u.mul(s_beta);
                let Some(col) = upper.index_of(&w) else { continue };
                assert!(!filled[col], "two reflections give the same u s_β");
                filled[col] = true;
                for (i, row) in raw.iter_mut().enumerate() {
                    row[col] = pairings[b][i] as i64;
                }
            }
            raw.into_iter()
                .map(|r| FpVector::from_residues(p, r))
                .collect()
        })
        .collect();

    RelationMatrix {
        p,
        width,
        rows: blocks.into_iter().flatten().collect(),
    }
}

/// Quotient of degree `2k` and the image of every Schubert class in it.
#[derive(Debug, Clone)]
pub struct ClassificationResult {
    pub problem: PullbackProblem,
    pub quotient: QuotientSpace,
    /// `images[b] = project(e_b)`, aligned with stratum `k`.
    pub images: Vec<FpVector>,
}

impl ClassificationResult {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Stratum indices whose image is nonzero.
    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(b, _)| b)
    }
}

/// How the labels of one degree were obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelSource {
    /// Degree 0.
    Unit,
    /// The presentation has nothing in this degree, so no quotient was computed.
    PredictedZero,
    /// Computed quotient is zero.
    Vanishing,
    /// Labeled from the single-generator quotient (anchor, power test or `p = 2`).
    Labeled,
    /// Nonzero classes reported as raw quotient coordinates.
    Unlabeled(String),
}

#[derive(Debug, Clone)]
pub struct DegreeLabels {
    pub k: usize,
    pub source: LabelSource,
    /// Aligned with stratum `k`.
    pub labels: Vec<Label>,
}

/// Element whose image is declared `+x_d` for a generator in odd characteristic.
///
/// `None` when no normalization is fixed for the case.
pub fn anchor_word(ct: CartanType, p: u32, lattice: Lattice, degree: u32) -> Option<ReducedWord> {
    let word = |s: &str| s.parse::<ReducedWord>().ok();
    match (ct.family(), ct.rank(), p, lattice, degree) {
        (Family::F, 4, 3, _, 8) => word("4 3 2 1"),
        (Family::E, 6, 3, Lattice::SimplyConnected, 8) => word("4 3 2 1"),
        (Family::E, 7, 3, _, 8) => word("4 3 2 1"),
        // PGL_n: [Σ_{s_1}] = x_1 maps to t.
        (Family::A, _, _, Lattice::Adjoint, 2) => word("1"),
        _ => None,
    }
}

fn binomial_mod(n: u32, k: u32, p: u32) -> u32 {
    // Lucas' theorem
    let (mut n, mut k) = (n, k);
    let mut r = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for j in 0..b {
            c = c * (a - j) as u64 / (j + 1) as u64;
        }
        r = r * (c % p as u64) % p as u64;
        n /= p;
        k /= p;
    }
    r as u32
}

/// Lazily computed classification for one `(type, p, lattice)`.
#[derive(Debug)]
pub struct PullbackEngine {
    group: WeylGroup,
    strata: Strata,
    p: u32,
    lattice: Lattice,
    presentation: Option<Presentation>,
    pairings: Vec<Vec<i32>>,
    classified: BTreeMap<usize, ClassificationResult>,
    labels: BTreeMap<usize, DegreeLabels>,
}

impl PullbackEngine {
    pub fn new(cartan_type: CartanType, p: u32, lattice: Lattice) -> Result<Self> {
        check_prime(p)?;
        let lattice = effective_lattice(cartan_type, lattice);
        let sys = RootSystem::new(cartan_type);
        let pairings = generator_pairings(&sys, lattice);
        let group = WeylGroup::new(sys);
        let strata = Strata::new(&group);
        Ok(PullbackEngine {
            group,
            strata,
            p,
            lattice,
            presentation: presentation(cartan_type, p, lattice),
            pairings,
            classified: BTreeMap::new(),
            labels: BTreeMap::new(),
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.group.root_system().cartan_type()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn strata(&self) -> &Strata {
        &self.strata
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn ensure_strata(&mut self, k: usize) -> Result<()> {
        self.strata.extend_to(&self.group, k)
    }

    pub fn parse_word(&self, letters: &[usize]) -> Result<WeylElement> {
        self.group.parse_word(letters)
    }

    pub fn problem(&self, k: usize) -> PullbackProblem {
        PullbackProblem {
            cartan_type: self.cartan_type(),
            p: self.p,
            k,
            lattice: self.lattice,
        }
    }

    pub fn relations(&mut self, k: usize) -> Result<RelationMatrix> {
        if k == 0 {
            return Err(Error::invalid("degree 0 has no relations"));
        }
        self.ensure_strata(k)?;
        Ok(build_relations(&self.group, &self.strata, k, self.p, &self.pairings))
    }

    /// Quotient and images in degree `2k`.
    pub fn classify(&mut self, k: usize) -> Result<&ClassificationResult> {
        if !self.classified.contains_key(&k) {
            let result = self.compute_classification(k)?;
            self.classified.insert(k, result);
        }
        Ok(&self.classified[&k])
    }

    fn compute_classification(&mut self, k: usize) -> Result<ClassificationResult> {
        self.ensure_strata(k)?;
        let problem = self.problem(k);
        let quotient = if k == 0 {
            QuotientSpace::by_span(self.p, 1, &[])?
        } else {
            let rel = self.relations(k)?;
            QuotientSpace::by_span_owned(self.p, rel.width, rel.rows)?
        };
        let images = (0..quotient.ambient_dim())
            .map(|b| quotient.project_unit(b))
            .collect();
        Ok(ClassificationResult {
            problem,
            quotient,
            images,
        })
    }

    /// Classify and compare against the known presentation, if any.
    pub fn classify_checked(&mut self, k: usize) -> Result<&ClassificationResult> {
        let expected = self.presentation.as_ref().map(|pr| pr.dim(2 * k as u32));
        let dim = self.classify(k)?.dim();
        if let Some(expected) = expected {
            if expected != dim {
                return Err(Error::DimensionMismatch {
                    degree: 2 * k,
                    computed: dim,
                    expected,
                });
            }
        }
        Ok(&self.classified[&k])
    }

    /// Labels for every element of length `k`, calibrating lower degrees first
    /// when a power class needs them.
    pub fn labels(&mut self, k: usize) -> Result<&DegreeLabels> {
        if !self.labels.contains_key(&k) {
            let dl = self.compute_labels(k)?;
            self.labels.insert(k, dl);
        }
        Ok(&self.labels[&k])
    }

    pub fn label_of(&mut self, w: &WeylElement) -> Result<Label> {
        let k = self.group.length(w);
        self.ensure_strata(k)?;
        let idx = self.strata.get(k).index_of(w).expect("enumerated stratum");
        Ok(self.labels(k)?.labels[idx].clone())
    }

    fn compute_labels(&mut self, k: usize) -> Result<DegreeLabels> {
        self.ensure_strata(k)?;
        let size = self.strata.get(k).len();
        let p = self.p;
        if k == 0 {
            return Ok(DegreeLabels {
                k,
                source: LabelSource::Unit,
                labels: vec![Label::Term(SignedMonomial::one(p))],
            });
        }
        let degree = 2 * k as u32;
        let monomials = self.presentation.as_ref().map(|pr| pr.monomials(degree));
        if monomials.as_ref().is_some_and(|m| m.is_empty()) {
            return Ok(DegreeLabels {
                k,
                source: LabelSource::PredictedZero,
                labels: vec![Label::Zero; size],
            });
        }
        let result = self.classify_checked(k)?.clone();
        if result.dim() == 0 {
            return Ok(DegreeLabels {
                k,
                source: LabelSource::Vanishing,
                labels: vec![Label::Zero; size],
            });
        }
        let unlabeled = |why: &str| DegreeLabels {
            k,
            source: LabelSource::Unlabeled(why.to_string()),
            labels: result
                .images
                .iter()
                .map(|v| if v.is_zero() { Label::Zero } else { Label::Unlabeled(v.clone()) })
                .collect(),
        };
        let Some(monomials) = monomials else {
            return Ok(unlabeled("presentation unknown"));
        };
        if monomials.len() != 1 {
            return Ok(unlabeled("degree is not spanned by a single monomial"));
        }
        let monomial = monomials.into_iter().next().unwrap();

        // Reference class: first nonzero image. Every image is a multiple of it.
        let reference = result.nonzero().next().expect("dim 1");
        let ref_image = result.images[reference].clone();
        let label_with = |c: u32| -> Vec<Label> {
            result
                .images
                .iter()
                .map(|v| {
                    if v.is_zero() {
                        return Label::Zero;
                    }
                    let r = v.ratio_to(&ref_image).expect("one-dimensional quotient");
                    Label::Term(SignedMonomial {
                        coeff: r * c % p,
                        p,
                        monomial: monomial.clone(),
                    })
                })
                .collect()
        };

        if p == 2 {
            return Ok(DegreeLabels {
                k,
                source: LabelSource::Labeled,
                labels: label_with(1),
            });
        }
        let single_generator = self.presentation.as_ref().unwrap().generators().len() == 1;
        let Some((d, e)) = monomial.as_power().filter(|_| single_generator) else {
            return Ok(unlabeled("mixed generators in odd characteristic"));
        };

        let ref_coeff = if e == 1 {
            let Some(anchor) = anchor_word(self.cartan_type(), p, self.lattice, d) else {
                return Ok(unlabeled("no anchor for this generator"));
            };
            let w = self.group.parse_word(anchor.letters())?;
            let idx = self
                .strata
                .get(k)
                .index_of(&w)
                .ok_or_else(|| Error::Calibration(format!("anchor {anchor} has length != {k}")))?;
            let img = &result.images[idx];
            if img.is_zero() {
                return Err(Error::Calibration(format!(
                    "anchor {} maps to zero",
                    anchor.to_product_string()
                )));
            }
            // anchor = r * reference = +x_d, so reference = r^{-1} x_d.
            inv_mod(img.ratio_to(&ref_image).unwrap(), p)
        } else {
            // Δ(x^e) has coefficient C(e, a) on x^a ⊗ x^{e-a}.
            let Some(a) = (1..e).find(|&a| binomial_mod(e, a, p) != 0) else {
                return Ok(unlabeled("power class invisible to the coproduct"));
            };
            let left = Monomial::power(d, a);
            let right = Monomial::power(d, e - a);
            let w = self.strata.get(k).elements[reference].clone();
            let coef = self.coproduct_coefficient(&w, &left, &right)?;
            if coef == 0 {
                return Err(Error::Calibration(format!(
                    "coefficient of {left} ⊗ {right} vanishes on {}",
                    self.strata.get(k).words[reference].to_product_string()
                )));
            }
            coef * inv_mod(binomial_mod(e, a, p), p) % p
        };
        Ok(DegreeLabels {
            k,
            source: LabelSource::Labeled,
            labels: label_with(ref_coeff),
        })
    }

    /// `Σ_{w = u ⊙ v} [left]π*[Σ_u] · [right]π*[Σ_v]  (mod p)`.
    pub fn coproduct_coefficient(
        &mut self,
        w: &WeylElement,
        left: &Monomial,
        right: &Monomial,
    ) -> Result<u32> {
        let len = self.group.length(w);
        let (dl, dr) = (left.degree() as usize, right.degree() as usize);
        if dl % 2 != 0 || dr % 2 != 0 || dl + dr != 2 * len {
            return Err(Error::invalid(format!(
                "degrees {dl} + {dr} do not add up to {}",
                2 * len
            )));
        }
        let (kl, kr) = (dl / 2, dr / 2);
        self.labels(kl)?;
        self.labels(kr)?;
        let facts = self
            .group
            .factorizations_with_left_length(w, kl, &mut self.strata)?;
        let p = self.p;
        let mut total = 0u32;
        for f in facts {
            let iu = self.strata.get(kl).index_of(&f.u).unwrap();
            let iv = self.strata.get(kr).index_of(&f.v).unwrap();
            let cu = self.labels[&kl].labels[iu]
                .coefficient_of(left)
                .ok_or_else(|| Error::Calibration(format!("degree {dl} is not labeled")))?;
            let cv = self.labels[&kr].labels[iv]
                .coefficient_of(right)
                .ok_or_else(|| Error::Calibration(format!("degree {dr} is not labeled")))?;
            total = (total + cu * cv) % p;
        }
        Ok(total)
    }

}

/// One-shot classification of a single degree.
pub fn classify(problem: PullbackProblem) -> Result<ClassificationResult> {
    let mut engine = PullbackEngine::new(problem.cartan_type, problem.p, problem.lattice)?;
    Ok(engine.classify(problem.k)?.clone())
}
