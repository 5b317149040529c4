use std::collections::HashMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schur_core::tableau::oracle::{
    count_column_strict_fillings, count_standard_fillings, tensor_embed, RelationSpace,
};
use schur_core::tableau::{
    enumerate_standard, find_violation, theta_expand, Entry, EntryDegrees, IntCombination, Straightener,
};
use schur_core::{straighten, Partition, Tableau};

fn fill(shape: &Partition, word: &[Entry]) -> Tableau {
    let mut cols = Vec::new();
    let mut pos = 0;
    for c in shape.column_lengths() {
        cols.push(word[pos..pos + c].to_vec());
        pos += c;
    }
    Tableau::from_columns(cols).unwrap()
}

fn label(code: usize, m: usize, n: usize) -> Entry {
    let code = code % (m + n);
    if code < m {
        -(code as Entry) - 1
    } else {
        (code - m) as Entry + 1
    }
}

/// A shape of size `1..=max_r`, label ranges with `1 <= m + n <= max_labels`, and a filling.
fn tableau_case(max_r: usize, max_labels: usize) -> impl Strategy<Value = (Tableau, usize, usize)> {
    (1..=max_r, 0..=max_labels, any::<usize>())
        .prop_flat_map(move |(r, m, pick)| (Just((r, m, pick)), usize::from(m == 0)..=max_labels - m))
        .prop_flat_map(|((r, m, pick), n)| {
            let shapes = Partition::all(r);
            let shape = shapes[pick % shapes.len()].clone();
            prop::collection::vec(any::<usize>(), r).prop_map(move |codes| {
                let word: Vec<Entry> = codes.iter().map(|&c| label(c, m, n)).collect();
                (fill(&shape, &word), m, n)
            })
        })
}

fn minus(a: &IntCombination, t: &Tableau) -> IntCombination {
    let mut c: IntCombination = a.iter().map(|(s, k)| (s.clone(), -k)).collect();
    *c.entry(t.clone()).or_insert(0) += 1;
    c.retain(|_, k| *k != 0);
    c
}

proptest! {
    #[test]
    fn normalize_sign_matches_tensor_embedding((t, _m, _n) in tableau_case(5, 4)) {
        let raw = tensor_embed(&t);
        match t.normalize() {
            Some((canon, sign)) => {
                prop_assert!(canon.columns_canonical());
                let scaled: std::collections::BTreeMap<_, _> =
                    tensor_embed(&canon).into_iter().map(|(w, c)| (w, sign * c)).collect();
                prop_assert_eq!(raw, scaled);
            }
            None => prop_assert!(raw.is_empty()),
        }
    }

    #[test]
    fn straightening_output_is_standard_and_stable((t, m, n) in tableau_case(6, 5)) {
        let s = straighten(&t, m, n).unwrap();
        let again = Straightener::new();
        for (u, &k) in &s {
            prop_assert!(k != 0);
            prop_assert!(u.is_standard(), "{u:?}");
            prop_assert_eq!(u.shape(), t.shape());
            prop_assert_eq!(again.straighten(u), IntCombination::from([(u.clone(), 1)]));
        }
        if t.is_standard() {
            prop_assert_eq!(s, IntCombination::from([(t.clone(), 1)]));
        }
    }

    #[test]
    fn straightening_is_sound((t, m, n) in tableau_case(4, 4)) {
        let space = RelationSpace::new(&t.shape(), m, n).unwrap();
        let s = straighten(&t, m, n).unwrap();
        prop_assert!(space.contains(&minus(&s, &t)).unwrap());
    }

    #[test]
    fn theta_contains_the_violating_tableau((t, _m, _n) in tableau_case(6, 5)) {
        let Some((canon, _)) = t.normalize() else { return Ok(()) };
        if let Some(vd) = find_violation(&canon).unwrap() {
            let l = theta_expand(&canon, &vd).unwrap();
            prop_assert_eq!(l.get(&canon), Some(&1));
        }
    }
}

#[test]
fn straightening_terminates_on_every_small_filling() {
    let memo = Straightener::new();
    for r in 1..=4 {
        for shape in Partition::all(r) {
            for (m, n) in [(2, 2), (0, 4), (4, 0), (1, 3)] {
                let k: usize = m + n;
                for code in 0..k.pow(r as u32) {
                    let mut c = code;
                    let word: Vec<Entry> = (0..r)
                        .map(|_| {
                            let e = label(c % k, m, n);
                            c /= k;
                            e
                        })
                        .collect();
                    let out = memo.straighten(&fill(&shape, &word));
                    assert!(out.keys().all(Tableau::is_standard));
                }
            }
        }
    }
}

#[test]
fn straightening_terminates_on_random_larger_tableaux() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let memo = Straightener::new();
    for _ in 0..1000 {
        let r = rng.gen_range(5..=8);
        let shapes = Partition::all(r);
        let shape = &shapes[rng.gen_range(0..shapes.len())];
        let (m, n) = (rng.gen_range(0..=3), rng.gen_range(1..=3));
        let word: Vec<Entry> = (0..r).map(|_| label(rng.gen_range(0..m + n), m, n)).collect();
        let out = memo.straighten(&fill(shape, &word));
        assert!(out.keys().all(Tableau::is_standard));
    }
}

#[test]
fn straightening_is_sound_on_seeded_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut spaces: HashMap<(Partition, usize, usize), RelationSpace> = HashMap::new();
    for _ in 0..100 {
        let r = rng.gen_range(2..=5);
        let shapes = Partition::all(r);
        let shape = shapes[rng.gen_range(0..shapes.len())].clone();
        let m = rng.gen_range(0..=2);
        let n = rng.gen_range(1..=3 - m.min(2));
        let word: Vec<Entry> = (0..r).map(|_| label(rng.gen_range(0..m + n), m, n)).collect();
        let t = fill(&shape, &word);
        let space = spaces
            .entry((shape.clone(), m, n))
            .or_insert_with(|| RelationSpace::new(&shape, m, n).unwrap());
        let s = straighten(&t, m, n).unwrap();
        assert!(space.contains(&minus(&s, &t)).unwrap(), "{t:?}");
    }
}

#[test]
fn basis_counts_match_relation_quotient() {
    for r in 1..=5 {
        for shape in Partition::all(r) {
            for m in 0..=3 {
                for n in 0..=3 {
                    let space = RelationSpace::new(&shape, m, n).unwrap();
                    let basis = enumerate_standard(&shape, &EntryDegrees::uniform(m, n), None);
                    assert_eq!(basis.len(), space.quotient_rank(), "{shape} m={m} n={n}");
                    assert_eq!(basis.len(), count_standard_fillings(&shape, m, n));
                }
            }
        }
    }
}

#[test]
fn classical_dimensions() {
    let binomial = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    for r in 1..=5 {
        for n in 1..=4 {
            let ext = enumerate_standard(&Partition::column(r).unwrap(), &EntryDegrees::uniform(0, n), None);
            assert_eq!(ext.len(), if r <= n { binomial(n, r) } else { 0 });
            let sym = enumerate_standard(&Partition::row(r).unwrap(), &EntryDegrees::uniform(0, n), None);
            assert_eq!(sym.len(), binomial(n + r - 1, r));
            for shape in Partition::all(r) {
                let count = enumerate_standard(&shape, &EntryDegrees::uniform(0, n), None).len();
                assert_eq!(count, count_column_strict_fillings(&shape, n), "{shape} n={n}");
            }
        }
    }
}

#[test]
fn odd_labels_swap_the_roles_of_rows_and_columns() {
    for r in 1..=5 {
        for shape in Partition::all(r) {
            for k in 1..=3 {
                let odd = enumerate_standard(&shape, &EntryDegrees::uniform(k, 0), None).len();
                let even = enumerate_standard(&shape.conjugate(), &EntryDegrees::uniform(0, k), None).len();
                assert_eq!(odd, even, "{shape} k={k}");
            }
        }
    }
}

#[test]
fn enumeration_is_sorted_by_degree_then_reading_word() {
    let degrees = EntryDegrees::new(vec![1, 3], vec![0, 2]).unwrap();
    let shape = Partition::new(vec![2, 1]).unwrap();
    let all = enumerate_standard(&shape, &degrees, None);
    let keys: Vec<(i64, Tableau)> = all.iter().map(|t| (t.degree(&degrees).unwrap(), t.clone())).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    for d in 0..=9 {
        let only = enumerate_standard(&shape, &degrees, Some(d));
        assert_eq!(only, all.iter().filter(|t| t.degree(&degrees).unwrap() == d).cloned().collect::<Vec<_>>());
    }
}

#[test]
fn worked_example_straightens_to_two_terms() {
    let shape = Partition::new(vec![3, 3, 2]).unwrap();
    let t = Tableau::from_entries(
        &shape,
        &[(1, 1, -3), (1, 2, -2), (1, 3, -2), (2, 1, 2), (2, 2, 1), (2, 3, 3), (3, 1, -1), (3, 2, 3)],
    )
    .unwrap();
    let t1 = fill(&shape, &[-3, -2, -2, -1, 1, 3, 2, 3]);
    let t2 = fill(&shape, &[-3, -2, -2, -1, 2, 3, 1, 3]);
    assert_eq!(straighten(&t, 3, 3).unwrap(), IntCombination::from([(t1, 1), (t2, -1)]));
}
