use std::collections::{BTreeSet, VecDeque};

use borel_hilb::poset::{check_lex_revlex_duality, j_lattice_isomorphism_check};
use borel_hilb::{flip, ExponentVector, Filter, MonomialOrder, MonomialSet, Poset};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Everything reachable from `a` by Borel moves.
fn reachable_up(a: &ExponentVector) -> BTreeSet<ExponentVector> {
    let mut seen = BTreeSet::from([a.clone()]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(b) = queue.pop_front() {
        for j in 1..b.nvars() {
            for i in 0..j {
                if let Some(c) = b.exchange(i, j) {
                    if seen.insert(c.clone()) {
                        queue.push_back(c);
                    }
                }
            }
        }
    }
    seen
}

/// Stars for exponents, bars between variables; swap the two symbols and
/// read the word backwards.
fn bars_and_stars(a: &ExponentVector) -> ExponentVector {
    let mut word = Vec::new();
    for (i, &e) in a.exponents().iter().enumerate() {
        if i > 0 {
            word.push('|');
        }
        word.extend(std::iter::repeat('*').take(e as usize));
    }
    let swapped: String = word.iter().rev().map(|&c| if c == '*' { '|' } else { '*' }).collect();
    ExponentVector::new(swapped.split('|').map(|g| g.len() as u32).collect())
}

fn lex_lt(a: &ExponentVector, b: &ExponentVector) -> bool {
    a.exponents() < b.exponents()
}

fn revlex_lt(a: &ExponentVector, b: &ExponentVector) -> bool {
    // a < b iff at the last differing position a has the larger exponent
    match a.exponents().iter().zip(b.exponents()).rposition(|(x, y)| x != y) {
        Some(k) => a.exponents()[k] > b.exponents()[k],
        None => false,
    }
}

#[test]
fn order_is_reachability() {
    for m in 1..=4 {
        for n in 1..=4 {
            let p = Poset::build(m, n).unwrap();
            for (i, a) in p.elements().iter().enumerate() {
                let up = reachable_up(a);
                for (j, b) in p.elements().iter().enumerate() {
                    assert_eq!(p.leq(i, j), up.contains(b), "P({m},{n}) {a} vs {b}");
                }
            }
        }
    }
}

#[test]
fn lex_and_revlex_refine_the_poset() {
    for m in 1..=4 {
        for n in 1..=4 {
            let p = Poset::build(m, n).unwrap();
            for (lo, hi) in p.edges() {
                let (a, b) = (p.element(lo), p.element(hi));
                assert!(lex_lt(a, b) && revlex_lt(a, b));
                assert!(MonomialOrder::Lex.compare(a, b).unwrap().is_lt());
                assert!(MonomialOrder::RevLex.compare(a, b).unwrap().is_lt());
            }
            // both are total: distinct elements are always comparable one way
            for a in p.elements() {
                for b in p.elements() {
                    if a != b {
                        assert_ne!(revlex_lt(a, b), revlex_lt(b, a));
                    }
                }
            }
        }
    }
}

#[test]
fn flip_matches_bars_and_stars() {
    assert_eq!(flip(&ExponentVector::new(vec![2, 3, 0, 1])).to_text("y"), "y1^2*y4");
    for m in 1..=4 {
        for n in 1..=4 {
            let p = Poset::build(m, n).unwrap();
            let q = Poset::build(n as u32, m as usize).unwrap();
            let images: Vec<usize> = p.elements().iter().map(|a| q.index_of(&flip(a)).unwrap()).collect();
            for (i, a) in p.elements().iter().enumerate() {
                assert_eq!(flip(a), bars_and_stars(a));
                assert_eq!(&flip(&flip(a)), a);
                for j in 0..p.len() {
                    assert_eq!(p.leq(i, j), q.leq(images[i], images[j]));
                }
            }
            let distinct: BTreeSet<usize> = images.iter().copied().collect();
            assert_eq!(distinct.len(), q.len());
        }
    }
}

#[test]
fn lex_revlex_duality_by_hand() {
    for m in 1..=4 {
        for n in 1..=4 {
            assert!(check_lex_revlex_duality(m, n as usize).unwrap());
            let p = Poset::build(m, n).unwrap();
            for a in p.elements() {
                for b in p.elements() {
                    assert_eq!(lex_lt(a, b), revlex_lt(&flip(a), &flip(b)));
                }
            }
        }
    }
}

#[test]
fn grid_lattice_isomorphism() {
    for m in 1..=12u32 {
        for n in 1..=12usize {
            if m as usize * n <= 12 {
                assert!(j_lattice_isomorphism_check(m, n).unwrap(), "J({m} x {n})");
            }
        }
    }
}

#[test]
fn filters_form_a_lattice() {
    let p = Poset::build(3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let pick = |rng: &mut ChaCha8Rng| {
            let seeds = (0..p.len()).filter(|_| rng.gen_bool(0.2));
            Filter::up_closure(&MonomialSet::from_indices(&p, seeds))
        };
        let (f, g) = (pick(&mut rng), pick(&mut rng));
        assert!(f.union(&g).is_up_closed());
        assert!(f.difference(&f.difference(&g)).is_up_closed());
        assert!(f.complement().is_down_closed());
    }
}

proptest! {
    #[test]
    fn flip_is_an_involution(exps in prop::collection::vec(0u32..5, 1..6)) {
        let a = ExponentVector::new(exps);
        prop_assert_eq!(flip(&flip(&a)), a.clone());
        prop_assert_eq!(flip(&a).degree() as usize, a.nvars() - 1);
    }
}
