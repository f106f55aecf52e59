//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use schubert_pullback::fplinalg::FpVector;
use schubert_pullback::pullback::{expected_dims, Label, Lattice, Monomial, PullbackEngine};
use schubert_pullback::rootsys::{CartanType, Family, RootSystem};
use schubert_pullback::veritab::{closed_form_check, embedded_cases, ExpectedCase, Verifier};
use schubert_pullback::weyl::{WeylElement, WeylGroup};

type Check = Result<String, String>;

fn ct(s: &str) -> CartanType {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cases_with_prefix(prefix: &str) -> Vec<ExpectedCase> {
    embedded_cases()
        .unwrap()
        .into_iter()
        .filter(|c| c.id.starts_with(prefix))
        .collect()
}

fn verify_cases(v: &mut Verifier, cases: &[ExpectedCase]) -> Result<(), String> {
    for c in cases {
        let r = v.run(c);
        ensure(r.passed, || r.to_string())?;
    }
    Ok(())
}

/// Computed dims in degrees `2..=2*max_k` against the presentation.
fn dims_match(e: &mut PullbackEngine, max_k: usize) -> Result<(), String> {
    let exp = expected_dims(e.cartan_type(), e.p(), e.lattice()).ok_or("no presentation")?;
    for k in 1..=max_k {
        let dim = e.classify(k).map_err(|x| x.to_string())?.dim();
        let want = exp.get(&(2 * k)).copied().unwrap_or(0);
        ensure(dim == want, || format!("degree {}: {dim} vs {want}", 2 * k))?;
    }
    Ok(())
}

fn g2_word(e: &PullbackEngine, s: &str) -> WeylElement {
    let letters: Vec<usize> = s.chars().map(|c| if c == 's' { 0 } else { 1 }).collect();
    e.parse_word(&letters).unwrap()
}

fn criterion_1() -> Check {
    let mut e = PullbackEngine::new(ct("G2"), 2, Lattice::Adjoint).unwrap();
    dims_match(&mut e, 6)?;
    let labels = e.labels(3).unwrap().labels.clone();
    let x6: BTreeSet<WeylElement> = e
        .strata()
        .get(3)
        .elements
        .iter()
        .zip(&labels)
        .filter(|(_, l)| l.to_string() == "+x6^1")
        .map(|(w, _)| w.clone())
        .collect();
    let want: BTreeSet<WeylElement> = ["sts", "tst"].iter().map(|w| g2_word(&e, w)).collect();
    ensure(x6 == want, || "Π(x6) differs from {sts, tst}".into())?;

    // 1 ⊗ [Σ_w] plus the extra terms, keyed by v
    let sts = g2_word(&e, "sts");
    let tst = g2_word(&e, "tst");
    let mut table: Vec<(&str, Vec<WeylElement>)> = Vec::new();
    for w in ["", "s", "t", "st", "ts"] {
        table.push((w, vec![]));
    }
    for w in ["sts", "stst", "ststs"] {
        let v = e.group().inverse(&sts).mul(&g2_word(&e, w));
        table.push((w, vec![v]));
    }
    for w in ["tst", "tsts", "tstst"] {
        let v = e.group().inverse(&tst).mul(&g2_word(&e, w));
        table.push((w, vec![v]));
    }
    table.push(("ststst", vec![tst.clone(), sts.clone()]));
    ensure(table.len() == 12, || "table size".into())?;
    let mut covered = HashSet::new();
    for (word, extra) in table {
        let w = g2_word(&e, word);
        covered.insert(w.clone());
        let ex = e.comodule_expansion(&w).map_err(|x| x.to_string())?;
        let got: BTreeSet<(String, WeylElement)> =
            ex.terms.iter().map(|t| (t.left.to_string(), t.v.clone())).collect();
        let mut want: BTreeSet<(String, WeylElement)> = BTreeSet::from([("1".to_string(), w.clone())]);
        want.extend(extra.into_iter().map(|v| ("+x6^1".to_string(), v)));
        ensure(got == want && ex.terms.len() == want.len(), || {
            format!("expansion of {word:?}: {ex}")
        })?;
    }
    ensure(covered.len() == 12, || "not all 12 elements".into())?;
    Ok("dims, Π(x6), 12 expansions".into())
}

fn criterion_2() -> Check {
    let mut v = Verifier::new();
    verify_cases(&mut v, &cases_with_prefix("f4_p2"))?;
    dims_match(v.engine(ct("F4"), 2, Lattice::Adjoint).unwrap(), 6)?;
    Ok("Π(x6) = 6 words; dims 2..12".into())
}

fn criterion_3() -> Check {
    let mut v = Verifier::new();
    let cases = cases_with_prefix("f4_p3");
    ensure(cases.len() == 4, || "expected four F4 mod 3 tables".into())?;
    verify_cases(&mut v, &cases)?;
    let e = v.engine(ct("F4"), 3, Lattice::Adjoint).unwrap();
    let anchor = e.parse_word(&[3, 2, 1, 0]).unwrap();
    let l = e.label_of(&anchor).unwrap();
    ensure(l.to_string() == "+x8^1", || format!("anchor labeled {l}"))?;

    let result = e.classify(8).unwrap();
    let distinct: HashSet<&FpVector> = result.images.iter().filter(|v| !v.is_zero()).collect();
    ensure(distinct.len() == 2, || format!("{} nonzero classes in degree 16", distinct.len()))?;

    let x8 = Monomial::power(8, 1);
    let elements = e.strata().get(8).elements.clone();
    let labels = e.labels(8).unwrap().labels.clone();
    let mut seen = BTreeMap::new();
    for (w, l) in elements.iter().zip(&labels) {
        if l.is_zero() {
            continue;
        }
        let c = e.coproduct_coefficient(w, &x8, &x8).unwrap();
        seen.entry(l.to_string()).or_insert_with(BTreeSet::new).insert(c);
    }
    let want = BTreeMap::from([
        ("+x8^2".to_string(), BTreeSet::from([2])),
        ("-x8^2".to_string(), BTreeSet::from([1])),
    ]);
    ensure(seen == want, || format!("coproduct coefficients {seen:?}"))?;
    Ok("8 + 8 and 34 + 21 elements; x8⊗x8 coefficient 2 on +x8^2".into())
}

fn criterion_4() -> Check {
    let mut v = Verifier::new();
    let cases: Vec<_> = embedded_cases()
        .unwrap()
        .into_iter()
        .filter(|c| c.id.ends_with("p2_x6") && c.id.starts_with("e6"))
        .collect();
    ensure(cases.len() == 2, || "expected both lattices".into())?;
    verify_cases(&mut v, &cases)?;
    Ok("Π(x6) = 12 words for both lattices".into())
}

fn criterion_5() -> Check {
    let mut v = Verifier::new();
    let cases = cases_with_prefix("e6sc_p3");
    ensure(cases.len() == 4, || "expected four tables".into())?;
    verify_cases(&mut v, &cases)?;
    Ok("24 + 24 and 213 + 211 elements".into())
}

fn criterion_6() -> Check {
    let mut v = Verifier::new();
    let cases = cases_with_prefix("e7_p3");
    ensure(cases.len() == 4, || "expected four tables".into())?;
    verify_cases(&mut v, &cases)?;
    Ok("24 + 24 and 213 + 211 elements".into())
}

fn criterion_7a() -> Check {
    for n in 2..=6 {
        for p in [2, 3, 5] {
            let r = closed_form_check(Family::A, n, p);
            ensure(r.passed, || r.to_string())?;
        }
    }
    for n in 2..=4 {
        let r = closed_form_check(Family::C, n, 2);
        ensure(r.passed, || r.to_string())?;
    }
    Ok("PGL_n, n = 2..6, p = 2, 3, 5; C_n, n = 2..4, p = 2 (t^{2^{k+1}})".into())
}

/// The C-type closed form exactly as stated: `F_2[t]/(t^{2^k})`, `2^k || n`.
fn criterion_7b() -> Check {
    let mut bad = Vec::new();
    for n in 2..=4usize {
        let height = 1usize << n.trailing_zeros();
        let mut e = PullbackEngine::new(CartanType::new(Family::C, n).unwrap(), 2, Lattice::Adjoint).unwrap();
        for k in 0..=e.group().longest_length() {
            let dim = e.classify(k).unwrap().dim();
            if dim != usize::from(k < height) {
                bad.push(format!("C{n} degree {}: {dim}", 2 * k));
            }
        }
    }
    ensure(bad.is_empty(), || bad.join(", "))?;
    Ok("C_n as stated".into())
}

fn instances() -> Vec<(CartanType, u32, Lattice, usize)> {
    let mut v = vec![
        (ct("G2"), 2, Lattice::Adjoint, 6),
        (ct("F4"), 2, Lattice::Adjoint, 6),
        (ct("F4"), 3, Lattice::Adjoint, 8),
        (ct("E6"), 2, Lattice::Adjoint, 6),
        (ct("E6"), 2, Lattice::SimplyConnected, 6),
        (ct("E6"), 3, Lattice::SimplyConnected, 8),
        (ct("E7"), 3, Lattice::Adjoint, 8),
    ];
    for n in 1..=5 {
        for p in [2, 3, 5] {
            let a = CartanType::new(Family::A, n).unwrap();
            v.push((a, p, Lattice::Adjoint, a.rank() * (a.rank() + 1) / 2));
        }
    }
    for n in 2..=4 {
        v.push((CartanType::new(Family::C, n).unwrap(), 2, Lattice::Adjoint, n * n));
    }
    v
}

fn all_types() -> Vec<CartanType> {
    let mut v = Vec::new();
    for n in 1..=8 {
        v.push(CartanType::new(Family::A, n).unwrap());
    }
    for n in 2..=8 {
        v.push(CartanType::new(Family::B, n).unwrap());
        v.push(CartanType::new(Family::C, n).unwrap());
    }
    for n in 4..=8 {
        v.push(CartanType::new(Family::D, n).unwrap());
    }
    for t in ["E6", "E7", "E8", "F4", "G2"] {
        v.push(ct(t));
    }
    v
}

fn criterion_8() -> Check {
    // stratum sizes
    for t in ["G2", "A3", "B3", "F4"] {
        let ct = ct(t);
        let g = WeylGroup::new(RootSystem::new(ct));
        let s = g.enumerate_up_to_length(g.longest_length()).unwrap();
        let want = common::poincare(&ct.exponents());
        ensure(s.sizes() == want, || format!("{t} strata {:?}", s.sizes()))?;
    }

    // Cartan integers
    for t in all_types() {
        let sys = RootSystem::new(t);
        for b in sys.positive_roots() {
            let bb = sys.inner(&b.coords, &b.coords);
            for g in sys.positive_roots() {
                let x = 2 * sys.inner(&b.coords, &g.coords);
                ensure(x % bb == 0, || format!("{t}: non-integral pairing"))?;
            }
        }
    }

    // relations vanish in the quotient; project ∘ lift = id
    for (t, p, lattice, top) in instances() {
        let mut e = PullbackEngine::new(t, p, lattice).unwrap();
        for k in 1..=top {
            let rel = e.relations(k).unwrap();
            let q = e.classify(k).unwrap().quotient.clone();
            for r in &rel.rows {
                ensure(q.project(r).unwrap().is_zero(), || format!("{t} p={p} k={k}: relation survives"))?;
            }
            for j in 0..q.dim() {
                let u = FpVector::unit(p, q.dim(), j);
                ensure(q.project(&q.lift(&u).unwrap()).unwrap() == u, || {
                    format!("{t} p={p} k={k}: project ∘ lift")
                })?;
            }
        }
    }

    // simply connected: degree 2 vanishes
    for t in all_types() {
        for p in [2, 3, 5, 7] {
            let mut e = PullbackEngine::new(t, p, Lattice::SimplyConnected).unwrap();
            ensure(e.classify(1).unwrap().dim() == 0, || format!("{t} p={p} degree 2"))?;
        }
    }

    // braid rewriting leaves reports unchanged
    let cases = embedded_cases().unwrap();
    let mut v = Verifier::new();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut done = 0;
    while done < 20 {
        let case = &cases[rng.gen_range(0..cases.len())];
        let sys = RootSystem::new(case.cartan_type);
        let mut changed = case.clone();
        let i = rng.gen_range(0..changed.words.len());
        let mut moved = false;
        for _ in 0..rng.gen_range(1..=4) {
            moved |= common::random_braid_move(&sys, &mut changed.words[i], &mut rng);
        }
        if !moved || changed.words[i] == case.words[i] {
            continue;
        }
        let before = v.run(case);
        let after = v.run(&changed);
        ensure(before == after, || format!("{}: rewrite changed the report", case.id))?;
        done += 1;
    }
    Ok("strata, Cartan integers, quotient laws, sc degree 2, 20 braid rewrites".into())
}

fn criterion_9() -> Check {
    let mut e = PullbackEngine::new(ct("E8"), 2, Lattice::Adjoint).unwrap();
    let dim = e.classify(3).map_err(|x| x.to_string())?.dim();
    let labels = e.labels(3).map_err(|x| x.to_string())?;
    let nonzero = labels.labels.iter().filter(|l| !matches!(l, Label::Zero)).count();
    Ok(format!("E8 p=2 degree 6 ran: quotient dim {dim}, {nonzero} nonzero classes"))
}

struct Criterion {
    id: &'static str,
    what: &'static str,
    limit: Duration,
    run: fn() -> Check,
    /// Expected to fail for a documented reason; reported but not fatal.
    known_deviation: Option<&'static str>,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: "1", what: "G2 p=2", limit: secs(1), run: criterion_1, known_deviation: None },
        Criterion { id: "2", what: "F4 p=2", limit: secs(5), run: criterion_2, known_deviation: None },
        Criterion { id: "3", what: "F4 p=3", limit: secs(60), run: criterion_3, known_deviation: None },
        Criterion { id: "4", what: "E6 p=2, both lattices", limit: secs(30), run: criterion_4, known_deviation: None },
        Criterion { id: "5", what: "E6 p=3 simply connected", limit: secs(600), run: criterion_5, known_deviation: None },
        Criterion { id: "6", what: "E7 p=3", limit: secs(600), run: criterion_6, known_deviation: None },
        Criterion { id: "7a", what: "A/C closed forms (derived heights)", limit: secs(60), run: criterion_7a, known_deviation: None },
        Criterion {
            id: "7b",
            what: "C closed form F_2[t]/(t^{2^k}) as stated",
            limit: secs(60),
            run: criterion_7b,
            known_deviation: Some("with n read as the rank, the stated exponent is half the one the relations give (PSp_4 = SO_5 has t^4 = 0); it holds for n = 2 * rank"),
        },
        Criterion { id: "8", what: "property suite", limit: secs(600), run: criterion_8, known_deviation: None },
        Criterion { id: "9", what: "E8 p=2 degree 6 smoke test", limit: secs(600), run: criterion_9, known_deviation: None },
    ];

    let mut fatal = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        let status = if ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:<3} {status} {} [{:.2}s / {}s] {}",
            c.id,
            c.what,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            detail.lines().next().unwrap_or("")
        );
        match (ok, c.known_deviation) {
            (false, Some(why)) => println!("              known deviation: {why}"),
            (true, Some(_)) => {
                println!("              deviation no longer reproduces");
                fatal += 1;
            }
            (false, None) => {
                for l in detail.lines().skip(1) {
                    println!("              {l}");
                }
                fatal += 1;
            }
            (true, None) => {}
        }
    }
    if fatal > 0 {
        eprintln!("{fatal} acceptance criteria failed");
        std::process::exit(1);
    }
}
