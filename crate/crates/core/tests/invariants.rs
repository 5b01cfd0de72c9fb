use std::collections::HashMap;

use helixlab::collections::{apply_braid, seed_state};
use helixlab::explorer::explore_str;
use helixlab::lattice::ProjectiveSpace;
use helixlab::markov::{act_psl2, descend, psl2_of_word, Involution, MarkovTriple, Psl2Mat, PslLetter};
use helixlab::{equal_in_an, BraidWordA};

fn reduced_involution_words(max_len: usize) -> Vec<Vec<Involution>> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Vec<Involution>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = vec![];
        for w in &layer {
            for g in Involution::ALL {
                if w.first() != Some(&g) {
                    let mut v = vec![g];
                    v.extend_from_slice(w);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[test]
fn descent_word_is_the_unique_short_word() {
    let root = MarkovTriple::root();
    let mut reached: HashMap<MarkovTriple, Vec<Involution>> = HashMap::new();
    for w in reduced_involution_words(6) {
        let mut t = root.clone();
        for g in w.iter().rev() {
            t = g.apply(&t);
        }
        assert!(reached.insert(t.clone(), w.clone()).is_none(), "two words reach {t}");
    }
    assert_eq!(reached.len(), 1 + 3 * (1 + 2 + 4 + 8 + 16 + 32));
    for (t, w) in &reached {
        assert_eq!(&descend(t).unwrap().labels, w, "{t}");
    }
}

#[test]
fn stabilizer_of_root_is_generated_by_w() {
    let letters = [PslLetter::V, PslLetter::W, PslLetter::Winv];
    let w = psl2_of_word(&[PslLetter::W]);
    let powers = [Psl2Mat::identity(), w.clone(), w.pow(2)];
    let root = MarkovTriple::root();
    let mut layer: Vec<Vec<PslLetter>> = vec![vec![]];
    let mut fixers = 0;
    for _ in 0..=6 {
        let mut next = vec![];
        for word in &layer {
            if act_psl2(word, &root).unwrap() == root {
                fixers += 1;
                assert!(powers.contains(&psl2_of_word(word)), "{word:?}");
            }
            for &l in &letters {
                let mut v = word.clone();
                v.push(l);
                next.push(v);
            }
        }
        layer = next;
    }
    assert!(fixers > 3);
}

#[test]
fn str_collisions_match_artin_equality() {
    let seed = seed_state(ProjectiveSpace::new(2).unwrap());
    let letters = ["s1", "s1^-1", "s2", "s2^-1"];
    let mut words: Vec<BraidWordA> = vec![BraidWordA::identity(3)];
    let mut layer = vec![String::new()];
    for _ in 0..4 {
        let mut next = vec![];
        for w in &layer {
            for l in letters {
                next.push(format!("{l} {w}"));
            }
        }
        words.extend(next.iter().map(|t| BraidWordA::parse(3, t).unwrap()));
        layer = next;
    }
    let keys: Vec<String> = words.iter().map(|w| apply_braid(&seed, w).unwrap().key()).collect();
    let mut classes: Vec<usize> = vec![];
    for i in 0..words.len() {
        let j = classes.iter().copied().find(|&j| equal_in_an(&words[i], &words[j]));
        match j {
            Some(j) => assert_eq!(keys[i], keys[j], "{} ~ {}", words[i], words[j]),
            None => {
                for &j in &classes {
                    assert_ne!(keys[i], keys[j], "{} vs {}", words[i], words[j]);
                }
                classes.push(i);
            }
        }
    }
    assert_eq!(classes.len(), explore_str(ProjectiveSpace::new(2).unwrap(), 4, None).unwrap().node_count());
}
