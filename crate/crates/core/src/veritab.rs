//! Expected-result tables and comparison against computed labels.
//!
//! A fixture holds one labeled set of elements:
//!
//! ```text
//! type=F4 p=3 degree=8 label=+x8 lattice=adjoint
//! 4 3 2 1
//! 2 3 2 1
//! ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Comparison is done on
//! group elements, never on words.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pullback::{Label, Lattice, PullbackEngine};
use crate::rootsys::{CartanType, Family};
use crate::weyl::{ReducedWord, WeylElement};

/// Environment variable naming a fixture directory to use instead of the
/// embedded tables.
pub const FIXTURE_DIR_VAR: &str = "SCHUBERT_FIXTURES";

const EMBEDDED: &[(&str, &str)] = &[
    ("g2_p2_x6", include_str!("../fixtures/g2_p2_x6.txt")),
    ("f4_p2_x6", include_str!("../fixtures/f4_p2_x6.txt")),
    ("f4_p3_x8", include_str!("../fixtures/f4_p3_x8.txt")),
    ("f4_p3_minus_x8", include_str!("../fixtures/f4_p3_minus_x8.txt")),
    ("f4_p3_x8sq", include_str!("../fixtures/f4_p3_x8sq.txt")),
    ("f4_p3_minus_x8sq", include_str!("../fixtures/f4_p3_minus_x8sq.txt")),
    ("e6_p2_x6", include_str!("../fixtures/e6_p2_x6.txt")),
    ("e6sc_p2_x6", include_str!("../fixtures/e6sc_p2_x6.txt")),
    ("e6sc_p3_x8", include_str!("../fixtures/e6sc_p3_x8.txt")),
    ("e6sc_p3_minus_x8", include_str!("../fixtures/e6sc_p3_minus_x8.txt")),
    ("e6sc_p3_x8sq", include_str!("../fixtures/e6sc_p3_x8sq.txt")),
    ("e6sc_p3_minus_x8sq", include_str!("../fixtures/e6sc_p3_minus_x8sq.txt")),
    ("e7_p3_x8", include_str!("../fixtures/e7_p3_x8.txt")),
    ("e7_p3_minus_x8", include_str!("../fixtures/e7_p3_minus_x8.txt")),
    ("e7_p3_x8sq", include_str!("../fixtures/e7_p3_x8sq.txt")),
    ("e7_p3_minus_x8sq", include_str!("../fixtures/e7_p3_minus_x8sq.txt")),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedCase {
    pub id: String,
    pub cartan_type: CartanType,
    pub p: u32,
    pub lattice: Lattice,
    pub degree: usize,
    pub label: Label,
    pub words: Vec<ReducedWord>,
}

impl ExpectedCase {
    pub fn length(&self) -> usize {
        self.degree / 2
    }

    /// Parse the fixture text; `id` is used in error messages.
    pub fn parse(id: &str, text: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Fixture {
            file: id.to_string(),
            line,
            msg,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| err(1, "empty fixture".into()))?;

        let mut fields = HashMap::new();
        for kv in header.split_whitespace() {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| err(hline, format!("expected key=value, got {kv:?}")))?;
            fields.insert(k, v);
        }
        let field = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| err(hline, format!("missing {k}")))
        };
        let cartan_type: CartanType = field("type")?.parse().map_err(|e| err(hline, format!("{e}")))?;
        let p: u32 = field("p")?.parse().map_err(|e| err(hline, format!("p: {e}")))?;
        let degree: usize = field("degree")?
            .parse()
            .map_err(|e| err(hline, format!("degree: {e}")))?;
        if degree % 2 != 0 {
            return Err(err(hline, format!("odd degree {degree}")));
        }
        let lattice: Lattice = match fields.get("lattice") {
            Some(l) => l.parse().map_err(|e| err(hline, format!("{e}")))?,
            None => Lattice::Adjoint,
        };
        let label = Label::parse(field("label")?, p).map_err(|e| err(hline, format!("{e}")))?;

        let mut words = Vec::new();
        let mut seen = BTreeSet::new();
        for (n, line) in lines {
            let w: ReducedWord = line.parse().map_err(|e| err(n, format!("{e}")))?;
            if w.len() != degree / 2 {
                return Err(err(n, format!("word {line:?} has length {}, expected {}", w.len(), degree / 2)));
            }
            if !seen.insert(w.clone()) {
                return Err(err(n, format!("duplicate word {line:?}")));
            }
            words.push(w);
        }
        Ok(ExpectedCase {
            id: id.to_string(),
            cartan_type,
            p,
            lattice,
            degree,
            label,
            words,
        })
    }

    pub fn to_fixture_text(&self) -> String {
        let mut s = format!(
            "type={} p={} degree={} label={} lattice={}\n",
            self.cartan_type, self.p, self.degree, self.label, self.lattice
        );
        for w in &self.words {
            s.push_str(&w.to_string());
            s.push('\n');
        }
        s
    }
}

/// The built-in tables.
pub fn embedded_cases() -> Result<Vec<ExpectedCase>> {
    EMBEDDED
        .iter()
        .map(|(id, text)| ExpectedCase::parse(id, text))
        .collect()
}

/// Every `*.txt` in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<ExpectedCase>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let id = p.file_stem().unwrap().to_string_lossy().into_owned();
            ExpectedCase::parse(&id, &std::fs::read_to_string(p)?)
        })
        .collect()
}

/// `dir` if given, else the directory in [`FIXTURE_DIR_VAR`], else the embedded tables.
pub fn load_cases(dir: Option<&Path>) -> Result<Vec<ExpectedCase>> {
    if let Some(d) = dir {
        return load_dir(d);
    }
    match std::env::var_os(FIXTURE_DIR_VAR) {
        Some(d) => load_dir(Path::new(&d)),
        None => embedded_cases(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelMismatch {
    pub word: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub case: String,
    pub passed: bool,
    /// Computed with the case's label but absent from the table.
    pub missing: Vec<String>,
    /// Listed in the table but computed to be zero.
    pub extra: Vec<String>,
    /// Listed in the table with a different nonzero computed label.
    pub label_mismatches: Vec<LabelMismatch>,
    /// Anything else that went wrong (dimension checks, errors).
    pub problems: Vec<String>,
    /// Number of elements checked.
    pub checked: usize,
}

impl VerificationReport {
    fn new(case: &str) -> Self {
        VerificationReport {
            case: case.to_string(),
            passed: false,
            missing: Vec::new(),
            extra: Vec::new(),
            label_mismatches: Vec::new(),
            problems: Vec::new(),
            checked: 0,
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.missing.is_empty()
            && self.extra.is_empty()
            && self.label_mismatches.is_empty()
            && self.problems.is_empty();
        self
    }

    fn failed(case: &str, problem: String) -> Self {
        let mut r = VerificationReport::new(case);
        r.problems.push(problem);
        r.finish()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} elements)", self.case, self.checked)?;
        for w in &self.missing {
            write!(f, "\n  missing from table: {w}")?;
        }
        for w in &self.extra {
            write!(f, "\n  listed but zero: {w}")?;
        }
        for m in &self.label_mismatches {
            write!(f, "\n  {}: expected {}, computed {}", m.word, m.expected, m.computed)?;
        }
        for p in &self.problems {
            write!(f, "\n  {p}")?;
        }
        Ok(())
    }
}

/// Runs cases, sharing one engine per `(type, p, lattice)`.
#[derive(Debug, Default)]
pub struct Verifier {
    engines: HashMap<(CartanType, u32, Lattice), PullbackEngine>,
}

impl Verifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn engine(&mut self, ct: CartanType, p: u32, lattice: Lattice) -> Result<&mut PullbackEngine> {
        let key = (ct, p, lattice);
        if !self.engines.contains_key(&key) {
            self.engines.insert(key, PullbackEngine::new(ct, p, lattice)?);
        }
        Ok(self.engines.get_mut(&key).unwrap())
    }

    pub fn run(&mut self, case: &ExpectedCase) -> VerificationReport {
        match self.try_run(case) {
            Ok(r) => r,
            Err(e) => VerificationReport::failed(&case.id, e.to_string()),
        }
    }

    fn try_run(&mut self, case: &ExpectedCase) -> Result<VerificationReport> {
        let engine = self.engine(case.cartan_type, case.p, case.lattice)?;
        let k = case.length();
        let expected: Vec<WeylElement> = case
            .words
            .iter()
            .map(|w| engine.parse_word(w.letters()))
            .collect::<Result<_>>()?;
        engine.ensure_strata(k)?;
        let labels = engine.labels(k)?.labels.clone();
        let stratum = engine.strata().get(k);

        let mut report = VerificationReport::new(&case.id);
        report.checked = expected.len();
        let mut listed = vec![false; stratum.len()];
        for (w, word) in expected.iter().zip(&case.words) {
            let Some(idx) = stratum.index_of(w) else {
                report.problems.push(format!("{word} is not reduced"));
                continue;
            };
            if listed[idx] {
                report.problems.push(format!("{word} repeats an element already listed"));
                continue;
            }
            listed[idx] = true;
            let got = &labels[idx];
            if got.is_zero() {
                report.extra.push(stratum.words[idx].to_string());
            } else if got != &case.label {
                report.label_mismatches.push(LabelMismatch {
                    word: stratum.words[idx].to_string(),
                    expected: case.label.to_string(),
                    computed: got.to_string(),
                });
            }
        }
        for (idx, l) in labels.iter().enumerate() {
            if !listed[idx] && l == &case.label {
                report.missing.push(stratum.words[idx].to_string());
            }
        }
        Ok(report.finish())
    }
}

/// Check one case with a fresh engine.
pub fn run_verification(case: &ExpectedCase) -> VerificationReport {
    Verifier::new().run(case)
}

/// Smallest `i >= 1` with `C(n, i) != 0 (mod p)`.
fn first_unit_binomial(n: usize, p: usize) -> usize {
    (1..=n).find(|&i| lucas(n, i, p) != 0).unwrap_or(n)
}

fn lucas(mut n: usize, mut k: usize, p: usize) -> usize {
    let mut r = 1;
    while k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1;
        for j in 0..b {
            c = c * (a - j) / (j + 1);
        }
        r = r * c % p;
        n /= p;
        k /= p;
    }
    r
}

/// Compare the general algorithm with the closed form `F_p[t]/(t^h)`, `t` in
/// degree 2.
///
/// `PGL_n` (`family = A`): killing the roots `x_i - x_j` identifies every `x_i`
/// with `t`, and the symmetric relations become `C(n, i) t^i`, so `h` is the
/// first `i` with `C(n, i) != 0`, i.e. `p^k` with `p^k || n`.
///
/// Adjoint `C_n` (`family = C`, rank `n`): the relations are `C(n, i) t^{2i}`;
/// with `p = 2` this gives `h = 2^{k+1}` for `2^k || n`, and for odd `p` the
/// roots `2x_i` already kill `t`.
pub fn closed_form_check(family: Family, n: usize, p: u32) -> VerificationReport {
    let id = format!("{family}{n}_p{p}_closed_form");
    match try_closed_form(family, n, p, &id) {
        Ok(r) => r,
        Err(e) => VerificationReport::failed(&id, e.to_string()),
    }
}

/// Height `h` of the closed form `F_p[t]/(t^h)`; see [`closed_form_check`].
pub fn closed_form_height(family: Family, n: usize, p: u32) -> Option<usize> {
    match family {
        Family::A if n >= 2 => Some(first_unit_binomial(n, p as usize)),
        Family::C if n >= 2 && p == 2 => Some(2 * first_unit_binomial(n, 2)),
        Family::C if n >= 2 => Some(1),
        _ => None,
    }
}

fn try_closed_form(family: Family, n: usize, p: u32, id: &str) -> Result<VerificationReport> {
    let height = closed_form_height(family, n, p)
        .ok_or_else(|| Error::invalid(format!("no closed form for {family}{n}")))?;
    let ct = match family {
        Family::A => CartanType::new(Family::A, n - 1)?,
        _ => CartanType::new(family, n)?,
    };
    let mut engine = PullbackEngine::new(ct, p, Lattice::Adjoint)?;
    let top = engine.group().longest_length();
    let mut report = VerificationReport::new(id);
    for k in 0..=top {
        let dim = engine.classify(k)?.dim();
        let expected = usize::from(k < height);
        report.checked += 1;
        if dim != expected {
            report
                .problems
                .push(format!("degree {}: dimension {dim}, expected {expected}", 2 * k));
        }
    }

    // Degree 2 is spanned by a single generator.
    let images = engine.classify(1)?.images.clone();
    if let Some(first) = images.iter().find(|v| !v.is_zero()) {
        for (i, v) in images.iter().enumerate() {
            if !v.is_zero() && v.ratio_to(first).is_none() {
                report.problems.push(format!("image of s{} is off the line", i + 1));
            }
        }
        // PGL_n: [Σ_{s_i}] = ω_i ↦ i t.
        if family == Family::A {
            let stratum = engine.strata().get(1);
            let s1 = &images[stratum.index_of(engine.group().simple_reflection(0)?).unwrap()];
            for i in 0..ct.rank() {
                let b = stratum.index_of(engine.group().simple_reflection(i)?).unwrap();
                let mut want = s1.clone();
                want.scale(((i + 1) as u32) % p);
                if images[b] != want {
                    report
                        .problems
                        .push(format!("image of s{} is not {} times that of s1", i + 1, i + 1));
                }
            }
        }
    }
    Ok(report.finish())
}
