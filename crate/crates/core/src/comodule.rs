//! Coaction of `CH*(G)` on `CH*(G/B)` restricted to Schubert classes.
//!
//! `μ*[Σ_w] = Σ_{w = u ⊙ v} π*[Σ_u] ⊗ [Σ_v]`. Since `u = w v^{-1}` is fixed by
//! `v`, each `v` contributes at most one term.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::pullback::{Label, PullbackEngine};
use crate::weyl::{ReducedWord, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComoduleTerm {
    /// `π*[Σ_u]`, never zero.
    pub left: Label,
    pub u: WeylElement,
    pub u_word: ReducedWord,
    pub v: WeylElement,
    pub v_word: ReducedWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComoduleExpansion {
    pub w_word: ReducedWord,
    /// Ordered by `ℓ(u)`, then by the lex-minimal word of `u`.
    pub terms: Vec<ComoduleTerm>,
}

#[derive(Serialize)]
struct TermJson {
    left: String,
    u: String,
    v: String,
}

impl ComoduleExpansion {
    /// Term list as `(left label, word of v)`, one-based.
    pub fn summary(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|t| (t.left.to_string(), t.v_word.to_string()))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|t| TermJson {
                left: t.left.to_string(),
                u: t.u_word.to_string(),
                v: t.v_word.to_string(),
            })
            .collect();
        serde_json::json!({ "word": self.w_word.to_string(), "terms": terms })
    }
}

impl fmt::Display for ComoduleExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.w_word.is_empty() { "e".to_string() } else { self.w_word.to_product_string() };
        write!(f, "μ*[Σ_{w}] =")?;
        if self.terms.is_empty() {
            return write!(f, " 0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let v = if t.v_word.is_empty() { "e".to_string() } else { t.v_word.to_product_string() };
            let sep = if i == 0 { " " } else { " + " };
            write!(f, "{sep}({}) ⊗ [Σ_{v}]", t.left)?;
        }
        Ok(())
    }
}

impl PullbackEngine {
    pub fn comodule_expansion(&mut self, w: &WeylElement) -> Result<ComoduleExpansion> {
        let len = self.group().length(w);
        self.ensure_strata(len)?;
        let mut strata = self.strata().clone();
        let mut terms = Vec::new();
        // factorizations come out in stratum order, so terms need no sorting
        for a in 0..=len {
            let labels = self.labels(a)?.labels.clone();
            let facts = self
                .group()
                .factorizations_with_left_length(w, a, &mut strata)?;
            for f in facts {
                let iu = strata.get(a).index_of(&f.u).expect("enumerated");
                if labels[iu].is_zero() {
                    continue;
                }
                let iv = strata.get(len - a).index_of(&f.v).expect("enumerated");
                terms.push(ComoduleTerm {
                    left: labels[iu].clone(),
                    u_word: strata.get(a).words[iu].clone(),
                    v_word: strata.get(len - a).words[iv].clone(),
                    u: f.u,
                    v: f.v,
                });
            }
        }
        Ok(ComoduleExpansion {
            w_word: self.group().minimal_word(w),
            terms,
        })
    }
}
