use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posetres::homology::{reduced_homology, ChainVector};
use posetres::io::{parse_ideal, write_ideal};
use posetres::verify::betti_oracle;
use posetres::{
    build_sequence, homogenize, random, Execution, Field, FinitePoset, LcmLattice, Monomial, PrimeField, Rationals,
    Variant,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn any_poset(seed: u64) -> FinitePoset {
    let mut r = rng(seed);
    match r.gen_range(0..3) {
        0 => random::ranked_poset(&mut r, 12, true),
        1 => random::nonranked_poset(&mut r, 9),
        _ => random::lattice(&mut r, 14),
    }
}

/// Reachability along upward covers.
fn cover_closure(p: &FinitePoset, x: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([x]);
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for &z in p.upper_covers(y) {
            if seen.insert(z) {
                stack.push(z);
            }
        }
    }
    seen
}

fn monomial(nvars: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..5, nvars).prop_map(Monomial::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_is_the_closure_of_covers(seed in any::<u64>()) {
        let p = any_poset(seed);
        for x in 0..p.len() {
            let up = cover_closure(&p, x);
            for y in 0..p.len() {
                prop_assert_eq!(p.leq(x, y), up.contains(&y));
            }
            prop_assert!(p.leq(p.bottom(), x));
        }
        for (b, a) in p.cover_pairs() {
            prop_assert!(p.rank(a) > p.rank(b));
        }
    }

    #[test]
    fn rank_completion_keeps_the_order(seed in any::<u64>()) {
        let p = any_poset(seed);
        let (q, embed) = p.rank_completion();
        prop_assert!(q.is_ranked());
        for x in 0..p.len() {
            prop_assert_eq!(q.rank(embed[x]), p.rank(x));
            for y in 0..p.len() {
                prop_assert_eq!(q.leq(embed[x], embed[y]), p.leq(x, y));
            }
        }
        if p.is_ranked() {
            prop_assert_eq!(q.len(), p.len());
        }
    }

    #[test]
    fn open_interval_faces_are_chains(seed in any::<u64>()) {
        let p = any_poset(seed);
        let ext = p.linear_extension();
        for alpha in 0..p.len() {
            let inside: Vec<usize> = (0..p.len())
                .filter(|&x| x != p.bottom() && p.lt(x, alpha))
                .collect();
            let k = p.open_interval_complex(alpha);
            let mut expected = 0;
            for mask in 0u32..1 << inside.len() {
                let set: Vec<usize> = (0..inside.len()).filter(|i| mask >> i & 1 == 1).map(|i| inside[i]).collect();
                let chain = set.iter().all(|&a| set.iter().all(|&b| p.comparable(a, b)));
                let mut face: Vec<u32> = set.iter().map(|&x| p.position(x) as u32).collect();
                face.sort_unstable();
                prop_assert_eq!(k.contains(&face), chain, "alpha {} face {:?}", p.label(alpha), face);
                expected += usize::from(chain);
            }
            prop_assert_eq!(k.total_faces(), expected);
            for face in k.all_faces() {
                prop_assert!(face.iter().all(|&v| ext[v as usize] != alpha));
            }
        }
    }

    #[test]
    fn crosscut_faces_have_small_joins(seed in any::<u64>()) {
        let p = random::lattice(&mut rng(seed), 16);
        let atoms = p.atoms().to_vec();
        prop_assume!(atoms.len() <= 10);
        for alpha in 0..p.len() {
            let k = p.crosscut_interval_complex(alpha);
            for mask in 1u32..1 << atoms.len() {
                let set: Vec<usize> = (0..atoms.len()).filter(|i| mask >> i & 1 == 1).map(|i| atoms[i]).collect();
                let face: Vec<u32> = (0..atoms.len() as u32).filter(|i| mask >> i & 1 == 1).collect();
                let join = p.join(&set).expect("lattices have joins");
                prop_assert_eq!(k.contains(&face), p.lt(join, alpha));
            }
        }
    }

    #[test]
    fn classes_ignore_boundaries(seed in any::<u64>(), prime in prop::sample::select(vec![2u64, 3, 5])) {
        let mut r = rng(seed);
        let k = random::complex(&mut r, 7, 8, 3);
        fn check<F: Field>(f: &F, k: &posetres::SimplicialComplex, r: &mut ChaCha8Rng) -> Result<(), TestCaseError> {
            let h = reduced_homology(f, k);
            for d in 0..k.dim() {
                let mut z = ChainVector::zero(d);
                for c in h.basis_cycles(d) {
                    z = z.add(f, &c.scale(f, &f.from_i64(r.gen_range(-4..=4))));
                }
                let before = h.class_of(&z).unwrap();
                let mut w = ChainVector::zero(d + 1);
                for face in k.faces(d + 1) {
                    w.add_term(f, face, f.from_i64(r.gen_range(-2..=2)));
                }
                let shifted = z.add(f, &w.boundary(f));
                prop_assert_eq!(h.class_of(&shifted).unwrap(), before);
                for b in h.boundary_space(d) {
                    prop_assert!(h.class_of(&b).unwrap().iter().all(|c| f.is_zero(c)));
                }
                for (i, c) in h.basis_cycles(d).iter().enumerate() {
                    let e = h.class_of(c).unwrap();
                    let unit = e.iter().enumerate().all(|(j, x)| *x == if i == j { f.one() } else { f.zero() });
                    prop_assert!(unit);
                }
            }
            Ok(())
        }
        check(&Rationals, &k, &mut r)?;
        check(&PrimeField::new(prime).unwrap(), &k, &mut r)?;
    }

    #[test]
    fn lcm_laws(a in monomial(4), b in monomial(4), c in monomial(4)) {
        let ab = a.lcm(&b).unwrap();
        prop_assert_eq!(&ab, &b.lcm(&a).unwrap());
        prop_assert_eq!(ab.lcm(&c).unwrap(), a.lcm(&b.lcm(&c).unwrap()).unwrap());
        prop_assert!(a.divides(&ab).unwrap() && b.divides(&ab).unwrap());
        prop_assert_eq!(a.divides(&b).unwrap(), ab == b);
    }

    #[test]
    fn ideal_text_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let i = random::ideal(&mut r, n, 6, 4);
        let back = parse_ideal(&write_ideal(&i)).unwrap();
        prop_assert_eq!(back.ideal, i);
        prop_assert!(back.removed.is_empty());
    }

    #[test]
    fn lattice_elements_are_subset_lcms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let i = random::ideal(&mut r, n, 7, 3);
        let l = LcmLattice::build(&i, 22).unwrap();
        let direct: BTreeSet<Monomial> = (0u32..1 << i.len())
            .map(|m| i.subset_lcm(&(0..i.len()).filter(|b| m >> b & 1 == 1).collect::<Vec<_>>()).unwrap())
            .collect();
        let built: BTreeSet<Monomial> = (0..l.len()).map(|x| l.monomial(x).clone()).collect();
        prop_assert_eq!(built, direct);
        prop_assert!(l.poset().is_lattice());
    }

    #[test]
    fn first_betti_numbers(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let i = random::ideal(&mut r, n, 6, 3);
        let t = betti_oracle(&Rationals, &i, 22, Execution::Sequential).unwrap().totals();
        prop_assert_eq!(t[0], 1);
        prop_assert_eq!(t[1], i.len());
    }

    #[test]
    fn execution_modes_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::ranked_poset(&mut r, 14, true);
        let eta = random::poset_map(&mut r, &p, 3, 2);
        let q = Rationals;
        let a = homogenize(&build_sequence(&p, &q, Variant::Delta, Execution::Sequential).unwrap(), &eta).unwrap();
        let b = homogenize(&build_sequence(&p, &q, Variant::Delta, Execution::Parallel).unwrap(), &eta).unwrap();
        prop_assert_eq!(a.ranks(), b.ranks());
        for i in 0..=a.length() {
            prop_assert_eq!(a.generators(i), b.generators(i));
            prop_assert_eq!(a.entries(i), b.entries(i));
        }
    }
}
