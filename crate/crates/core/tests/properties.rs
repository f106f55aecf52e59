mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use schubert_pullback::pullback::{Lattice, PullbackEngine};
use schubert_pullback::rootsys::{CartanType, RootSystem};
use schubert_pullback::weyl::{ReducedWord, WeylGroup};

fn group(t: &str) -> WeylGroup {
    WeylGroup::new(RootSystem::new(t.parse().unwrap()))
}

fn type_and_word() -> impl Strategy<Value = (&'static str, Vec<usize>)> {
    prop::sample::select(vec!["A4", "B3", "C4", "D5", "G2", "F4", "E6", "E7"]).prop_flat_map(|t| {
        let n = t.parse::<CartanType>().unwrap().rank();
        (Just(t), prop::collection::vec(0..n, 0..14))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimal_word_round_trip((t, letters) in type_and_word()) {
        let g = group(t);
        let w = g.parse_word(&letters).unwrap();
        let len = g.length(&w);
        prop_assert!(len <= letters.len());
        prop_assert_eq!(len % 2, letters.len() % 2);
        let m = g.minimal_word(&w);
        prop_assert_eq!(m.len(), len);
        prop_assert_eq!(g.parse_word(m.letters()).unwrap(), w.clone());
        let inv = g.inverse(&w);
        prop_assert!(inv.mul(&w).is_identity());
        prop_assert_eq!(g.length(&inv), len);
        prop_assert_eq!(g.parse_word(m.reversed().letters()).unwrap(), inv);
    }

    #[test]
    fn braid_moves_keep_the_element((t, letters) in type_and_word(), seed in any::<u64>()) {
        let g = group(t);
        let w = g.parse_word(&letters).unwrap();
        let mut word = g.minimal_word(&w);
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..6 {
            common::random_braid_move(g.root_system(), &mut word, &mut rng);
            prop_assert_eq!(g.parse_word(word.letters()).unwrap(), w.clone());
            prop_assert_eq!(word.len(), g.length(&w));
        }
    }

    #[test]
    fn factorizations_are_length_additive((t, letters) in type_and_word()) {
        let g = group(t);
        let w = g.parse_word(&letters).unwrap();
        let len = g.length(&w);
        let mut strata = g.enumerate_up_to_length(0).unwrap();
        let fs = g.factorizations(&w, &mut strata).unwrap();
        prop_assert!(fs.len() >= 2 || len == 0);
        for f in &fs {
            prop_assert_eq!(f.u.mul(&f.v), w.clone());
            prop_assert_eq!(g.length(&f.u) + g.length(&f.v), len);
        }
    }

    #[test]
    fn word_text_round_trip(letters in prop::collection::vec(0usize..8, 0..20)) {
        let w = ReducedWord(letters);
        prop_assert_eq!(w.to_string().parse::<ReducedWord>().unwrap(), w);
    }
}

/// Same label exactly when same image.
#[test]
fn labels_refine_images_exactly() {
    for (t, p, lattice, ks) in [
        ("F4", 3, Lattice::Adjoint, vec![4, 8]),
        ("F4", 2, Lattice::Adjoint, vec![3]),
        ("E6", 3, Lattice::SimplyConnected, vec![4, 8]),
        ("A3", 2, Lattice::Adjoint, vec![1, 2, 3]),
    ] {
        let mut e = PullbackEngine::new(t.parse().unwrap(), p, lattice).unwrap();
        for k in ks {
            let images = e.classify(k).unwrap().images.clone();
            let labels = e.labels(k).unwrap().labels.clone();
            for a in 0..images.len() {
                for b in a..images.len() {
                    assert_eq!(images[a] == images[b], labels[a] == labels[b], "{t} k={k}");
                }
            }
        }
    }
}

#[test]
fn f4_minus_x8_is_inverse_of_x8() {
    let mut e = PullbackEngine::new("F4".parse().unwrap(), 3, Lattice::Adjoint).unwrap();
    let labels = e.labels(4).unwrap().labels.clone();
    let st = e.strata().get(4).clone();
    let with = |s: &str| -> std::collections::BTreeSet<_> {
        st.elements
            .iter()
            .zip(&labels)
            .filter(|(_, l)| l.to_string() == s)
            .map(|(w, _)| w.clone())
            .collect()
    };
    let plus = with("+x8^1");
    let minus = with("-x8^1");
    assert_eq!(plus.len(), 8);
    let inverted = plus.iter().map(|w| e.group().inverse(w)).collect();
    assert_eq!(minus, inverted);
}

#[test]
fn expansion_terms_respect_degrees() {
    let mut e = PullbackEngine::new("F4".parse().unwrap(), 3, Lattice::Adjoint).unwrap();
    e.ensure_strata(9).unwrap();
    let sample: Vec<_> = e.strata().get(9).elements.iter().step_by(7).cloned().collect();
    for w in sample {
        let ex = e.comodule_expansion(&w).unwrap();
        let mut strata = e.strata().clone();
        let nf = e.group().factorizations(&w, &mut strata).unwrap().len();
        assert!(ex.terms.len() <= nf);
        for t in &ex.terms {
            let deg = match t.left.term() {
                Some(m) => m.monomial.degree() as usize,
                None => panic!("unlabeled term"),
            };
            assert_eq!(deg / 2 + e.group().length(&t.v), 9);
            assert!(!t.left.is_zero());
        }
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let mut e = PullbackEngine::new("E6".parse().unwrap(), 3, Lattice::SimplyConnected).unwrap();
            let rel = e.relations(6).unwrap();
            let images = e.classify(6).unwrap().images.clone();
            (rel.rows, images)
        })
    };
    assert_eq!(run(1), run(4));
}
