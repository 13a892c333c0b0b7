//! Property tests. Each case draws a seed and builds its objects from a
//! ChaCha8 stream, so a shrunk failure is reproducible from one number.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wildred::algebras::{adjoin_identity, decode_pair, encode_pair};
use wildred::gadgets::{build_t, extract_similarity, transport_witness, ExtractOptions};
use wildred::homspace::{decide_similarity, hom_basis, krull_schmidt, Decision};
use wildred::json::JsonCodec;
use wildred::tuples::{apply_equivalence, apply_similarity, apply_star_congruence};
use wildred::{
    verify_witness, CongruenceWitness, Elem, EquivalenceWitness, Field, Mat, MatTuple, SimilarityWitness, Witness,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn large(deg: u32) -> Field {
    Field::new(10007, deg).unwrap()
}

fn random_tuple(f: Field, t: usize, m: usize, n: usize, rng: &mut ChaCha8Rng) -> MatTuple {
    MatTuple::new((0..t).map(|_| Mat::random(f, m, n, rng)).collect()).unwrap()
}

fn elems(f: Field, rng: &mut ChaCha8Rng) -> [Elem; 3] {
    [f.random(rng), f.random(rng), f.random(rng)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(seed: u64, deg in 1u32..=2) {
        let f = large(deg);
        let [a, b, c] = elems(f, &mut rng(seed));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if let Some(inv) = f.inv(a) {
            prop_assert_eq!(f.mul(a, inv), f.one());
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_ne!(f.add(f.one(), f.one()), f.zero());
    }

    #[test]
    fn involution_axioms(seed: u64, deg in 1u32..=2) {
        let f = large(deg);
        let [a, b, _] = elems(f, &mut rng(seed));
        prop_assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
        prop_assert_eq!(f.conj(f.add(a, b)), f.add(f.conj(a), f.conj(b)));
        prop_assert_eq!(f.conj(f.conj(a)), a);
    }

    #[test]
    fn star_preserves_rank(seed: u64, m in 1usize..5, n in 1usize..5) {
        let f = large(2);
        let mut r = rng(seed);
        // low rank products exercise more than generic full rank
        let k = 1 + (seed as usize % m.min(n));
        let a = Mat::random(f, m, k, &mut r).mul(&Mat::random(f, k, n, &mut r)).unwrap();
        prop_assert_eq!(a.rank(), a.star().rank());
    }

    #[test]
    fn inverse_exact_or_error(seed: u64, n in 1usize..6) {
        let f = large(1);
        let mut r = rng(seed);
        let m = Mat::random(f, n, n, &mut r);
        if m.det().unwrap().is_zero() {
            prop_assert!(m.inverse().is_err());
        } else {
            prop_assert!(m.inverse().unwrap().mul(&m).unwrap().is_identity());
        }
        let mut singular = m.clone();
        for j in 0..n {
            singular.set(n - 1, j, m.get(0, j));
        }
        if n > 1 {
            prop_assert!(singular.inverse().is_err());
        }
    }

    #[test]
    fn blocks_round_trip(seed: u64, r0 in 0usize..3, r1 in 1usize..3, c0 in 0usize..3, c1 in 1usize..3) {
        let f = large(1);
        let mut r = rng(seed);
        let grid: Vec<Vec<Mat>> = [r0, r1]
            .iter()
            .map(|&rows| [c0, c1].iter().map(|&cols| Mat::random(f, rows, cols, &mut r)).collect())
            .collect();
        let whole = Mat::block_assemble(&grid).unwrap();
        prop_assert_eq!(&whole.slice(0..r0, 0..c0), &grid[0][0]);
        prop_assert_eq!(&whole.slice(0..r0, c0..c0 + c1), &grid[0][1]);
        prop_assert_eq!(&whole.slice(r0..r0 + r1, 0..c0), &grid[1][0]);
        prop_assert_eq!(&whole.slice(r0..r0 + r1, c0..c0 + c1), &grid[1][1]);
    }

    #[test]
    fn direct_sum_associative(seed: u64) {
        let f = large(1);
        let mut r = rng(seed);
        let [a, b, c] = [(1, 2), (2, 1), (2, 2)].map(|(m, n)| random_tuple(f, 2, m, n, &mut r));
        prop_assert_eq!(a.direct_sum(&b).unwrap().direct_sum(&c).unwrap(), a.direct_sum(&b.direct_sum(&c).unwrap()).unwrap());
    }

    #[test]
    fn equivalence_is_an_equivalence_relation(seed: u64, m in 1usize..4, n in 1usize..4) {
        let f = large(1);
        let mut r = rng(seed);
        let t = random_tuple(f, 2, m, n, &mut r);
        let w1 = EquivalenceWitness::new(Mat::random_invertible(f, m, &mut r), Mat::random_invertible(f, n, &mut r)).unwrap();
        let w2 = EquivalenceWitness::new(Mat::random_invertible(f, m, &mut r), Mat::random_invertible(f, n, &mut r)).unwrap();
        let u = apply_equivalence(&w1, &t).unwrap();
        let v = apply_equivalence(&w2, &u).unwrap();
        prop_assert!(verify_witness(&Witness::Equivalence(EquivalenceWitness::identity(f, m, n)), &t, &t));
        prop_assert!(verify_witness(&Witness::Equivalence(w1.inverse().unwrap()), &u, &t));
        prop_assert!(verify_witness(&Witness::Equivalence(w1.then(&w2).unwrap()), &t, &v));
    }

    #[test]
    fn congruence_and_similarity_are_equivalence_relations(seed: u64, n in 1usize..4, deg in 1u32..=2) {
        let f = large(deg);
        let mut r = rng(seed);
        let t = random_tuple(f, 2, n, n, &mut r);
        let c1 = CongruenceWitness::new(Mat::random_invertible(f, n, &mut r)).unwrap();
        let c2 = CongruenceWitness::new(Mat::random_invertible(f, n, &mut r)).unwrap();
        let u = apply_star_congruence(&c1, &t).unwrap();
        let v = apply_star_congruence(&c2, &u).unwrap();
        prop_assert!(verify_witness(&Witness::Congruence(CongruenceWitness::identity(f, n)), &t, &t));
        prop_assert!(verify_witness(&Witness::Congruence(c1.inverse().unwrap()), &u, &t));
        prop_assert!(verify_witness(&Witness::Congruence(c1.then(&c2).unwrap()), &t, &v));

        let s1 = SimilarityWitness::new(Mat::random_invertible(f, n, &mut r)).unwrap();
        let s2 = SimilarityWitness::new(Mat::random_invertible(f, n, &mut r)).unwrap();
        let u = apply_similarity(&s1, &t).unwrap();
        let v = apply_similarity(&s2, &u).unwrap();
        prop_assert!(verify_witness(&Witness::Similarity(SimilarityWitness::identity(f, n)), &t, &t));
        prop_assert!(verify_witness(&Witness::Similarity(s1.inverse().unwrap()), &u, &t));
        prop_assert!(verify_witness(&Witness::Similarity(s1.then(&s2).unwrap()), &t, &v));
    }

    #[test]
    fn hom_basis_intertwines_and_adds(seed: u64) {
        let f = large(1);
        let mut r = rng(seed);
        // a shared Jordan-type block guarantees nonzero Hom spaces
        let t = MatTuple::pair(Mat::identity(f, 2), Mat::from_i64(f, &[&[4, 1], &[0, 4]])).unwrap();
        let t2 = random_tuple(f, 2, 1, 2, &mut r);
        let u = t.direct_sum(&MatTuple::pair(Mat::identity(f, 1), Mat::from_i64(f, &[&[4]])).unwrap()).unwrap();
        let h = hom_basis(&t, &u).unwrap();
        for e in h.basis() {
            prop_assert!(e.intertwines(&t, &u));
        }
        let whole = hom_basis(&t.direct_sum(&t2).unwrap(), &u).unwrap().dim();
        prop_assert_eq!(whole, h.dim() + hom_basis(&t2, &u).unwrap().dim());
    }

    #[test]
    fn krull_schmidt_replays_and_ignores_shuffles(seed: u64, m in 1usize..5, n in 1usize..5) {
        let f = large(1);
        let mut r = rng(seed);
        let t = random_tuple(f, 2, m, n, &mut r);
        let dec = krull_schmidt(&t).unwrap();
        prop_assert!(dec.verify(&t));
        let shuffle = EquivalenceWitness::new(Mat::random_invertible(f, m, &mut r), Mat::random_invertible(f, n, &mut r)).unwrap();
        let moved = apply_equivalence(&shuffle, &t).unwrap();
        prop_assert_eq!(krull_schmidt(&moved).unwrap().extents(), dec.extents());
    }

    #[test]
    fn planted_similarity_is_found(seed: u64, n in 1usize..4) {
        let f = large(1);
        let mut r = rng(seed);
        let t = random_tuple(f, 2, n, n, &mut r);
        let s = SimilarityWitness::new(Mat::random_invertible(f, n, &mut r)).unwrap();
        let u = apply_similarity(&s, &t).unwrap();
        match decide_similarity(&t, &u, 20, &mut r).unwrap() {
            Decision::Related(w) => prop_assert!(verify_witness(&Witness::Similarity(w), &t, &u)),
            other => prop_assert!(false, "planted instance not found: {:?}", other),
        }
    }

    #[test]
    fn transport_then_extract(seed: u64, n in 1usize..4, e in 0usize..3) {
        let f = large(1);
        let eps = [f.zero(), f.one(), f.neg(f.one())][e];
        let mut r = rng(seed);
        let (a, b) = (Mat::random(f, n, n, &mut r), Mat::random(f, n, n, &mut r));
        let s = SimilarityWitness::new(Mat::random_invertible(f, n, &mut r)).unwrap();
        let source = MatTuple::pair(a.clone(), b.clone()).unwrap();
        let target = apply_similarity(&s, &source).unwrap();
        let rw = transport_witness(&s, eps, &a, &b).unwrap();
        let g1 = build_t(eps, &a, &b).unwrap();
        let g2 = build_t(eps, target.get(0), target.get(1)).unwrap();
        prop_assert!(verify_witness(&Witness::Congruence(rw.clone()), &g1.pair, &g2.pair));
        let opts = ExtractOptions { seed, ..Default::default() };
        let ex = extract_similarity(&rw, eps, (&a, &b), (target.get(0), target.get(1)), &opts).unwrap();
        prop_assert!(verify_witness(&Witness::Similarity(ex.witness), &source, &target));
    }

    #[test]
    fn decoded_algebras_have_the_advertised_shape(seed: u64, n in 2usize..4) {
        let f = large(1);
        let mut r = rng(seed);
        let (a, b) = (Mat::random(f, n, n, &mut r), Mat::random(f, n, n, &mut r));
        let alg = decode_pair(&a, &b).unwrap();
        prop_assert!(alg.check_associativity());
        let d = alg.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = alg.mul(&alg.basis_vector(i), &alg.basis_vector(j));
                // products land in span(e1, e2) and only the generators multiply
                prop_assert!(ij[2..].iter().all(|x| x.is_zero()));
                if i < 2 || j < 2 {
                    prop_assert!(ij.iter().all(|x| x.is_zero()));
                }
                for k in 0..d {
                    prop_assert!(alg.mul(&ij, &alg.basis_vector(k)).iter().all(|x| x.is_zero()));
                }
            }
        }
        let (square, cube) = alg.power_subspaces();
        prop_assert_eq!(square.dim(), 2);
        prop_assert_eq!(cube.dim(), 0);
        let enc = encode_pair(&alg).unwrap();
        prop_assert_eq!((enc.a, enc.b), (a, b));
    }

    #[test]
    fn encoding_a_shuffled_algebra_is_a_basis_change(seed: u64, n in 2usize..4) {
        let f = large(1);
        let mut r = rng(seed);
        let alg = decode_pair(&Mat::random(f, n, n, &mut r), &Mat::random(f, n, n, &mut r)).unwrap();
        let shuffled = alg.change_basis(&Mat::random_invertible(f, n + 2, &mut r)).unwrap();
        let enc = encode_pair(&shuffled).unwrap();
        prop_assert_eq!(decode_pair(&enc.a, &enc.b).unwrap(), shuffled.change_basis(&enc.basis).unwrap());
    }

    #[test]
    fn adjoined_units_are_exactly_nonzero_scalar_parts(seed: u64, n in 2usize..4) {
        let f = large(1);
        let mut r = rng(seed);
        let alg = adjoin_identity(&decode_pair(&Mat::random(f, n, n, &mut r), &Mat::random(f, n, n, &mut r)).unwrap()).unwrap();
        let mut u: Vec<Elem> = (0..alg.dim()).map(|_| f.random(&mut r)).collect();
        u[0] = f.random_nonzero(&mut r);
        let inv = alg.inverse(&u).unwrap().expect("unit");
        prop_assert_eq!(alg.mul(&u, &inv), alg.one().unwrap());
        u[0] = f.zero();
        prop_assert!(alg.inverse(&u).unwrap().is_none());
    }

    #[test]
    fn json_round_trips(seed: u64, deg in 1u32..=2, m in 0usize..4, n in 0usize..4) {
        let f = large(deg);
        let mut r = rng(seed);
        let t = random_tuple(f, 3, m, n, &mut r);
        prop_assert_eq!(MatTuple::from_json(f, &t.to_json()).unwrap(), t);
        let w = Witness::Congruence(CongruenceWitness::new(Mat::random_invertible(f, n.max(1), &mut r)).unwrap());
        prop_assert_eq!(Witness::from_json(f, &w.to_json()).unwrap(), w);
    }
}

#[test]
fn involution_axioms_exhaustive_over_f9() {
    let f = Field::new(3, 2).unwrap();
    let all: Vec<Elem> = f.elements().collect();
    assert_eq!(all.len(), 9);
    for &a in &all {
        assert_eq!(f.conj(f.conj(a)), a);
        for &b in &all {
            assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
            assert_eq!(f.conj(f.add(a, b)), f.add(f.conj(a), f.conj(b)));
        }
    }
}
