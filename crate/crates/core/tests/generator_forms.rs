mod common;

use common::*;
use golay_forge::generator::{
    generate_algebraic_form, generate_exponent_form, generate_index_form, generate_matrix,
    generate_pair, golay_binary,
};
use golay_forge::reference::{boolean_cs, equivalent_spec};
use golay_forge::{Complex64, Permutation, Unitary2x2, UnitaryChain};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn re(values: &[f64]) -> Vec<Complex64> {
    values.iter().map(|&x| c(x, 0.0)).collect()
}

#[test]
fn golden_vectors_from_the_oracle() {
    let ones = |bits: usize| vec![Unitary2x2::ones(); bits + 1];
    let id1 = [1u32];
    let id2 = [1u32, 2];
    assert_eq!(oracle_sequence(&ones(1), &id1, 0, 0), re(&[1.0, -1.0]));
    assert_eq!(oracle_sequence(&ones(1), &id1, 1, 0), re(&[-1.0, -1.0]));
    assert_eq!(oracle_sequence(&ones(2), &id2, 0, 0), re(&[1.0, -1.0, -1.0, -1.0]));

    let golay = UnitaryChain::golay(Permutation::identity(2));
    assert_eq!(oracle_chain(&golay, 0, 0), re(&[1.0, 1.0, 1.0, -1.0]));
    assert_eq!(oracle_chain(&golay, 0, 1), re(&[1.0, 1.0, -1.0, 1.0]));
    assert_eq!(oracle_chain(&golay, 1, 0), re(&[-1.0, 1.0, -1.0, -1.0]));
    assert_eq!(oracle_chain(&golay, 1, 1), re(&[-1.0, 1.0, 1.0, 1.0]));
    assert_eq!(oracle_golay(&id2, 1, 0), vec![1.0, -1.0, 1.0, 1.0]);

    let u = Unitary2x2::new(c(1.0, 1.0), c(3.0, 1.0)).unwrap();
    let w = Unitary2x2::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
    let chain = UnitaryChain::new("2,1".parse().unwrap(), vec![w, u, w]).unwrap();
    let frozen = [c(1.0, 1.0), c(-1.0, 3.0), c(-1.0, -3.0), c(-1.0, 1.0)];
    assert_eq!(oracle_chain(&chain, 0, 0), frozen);

    for (r, s) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let spec = golay.clone().with_selectors(r, s).unwrap();
        assert_eq!(generate_index_form(&spec).as_slice(), oracle_chain(&golay, r as usize, s as usize));
        let spec = chain.clone().with_selectors(r, s).unwrap();
        assert_eq!(generate_index_form(&spec).as_slice(), oracle_chain(&chain, r as usize, s as usize));
    }
}

#[test]
fn pair_and_matrix_examples() {
    let chain = UnitaryChain::golay(Permutation::identity(2));
    let (a, b) = generate_pair(&chain);
    assert_eq!(a.as_slice(), re(&[1.0, 1.0, 1.0, -1.0]));
    assert_eq!(b.as_slice(), re(&[1.0, 1.0, -1.0, 1.0]));
    let sum: Vec<Complex64> = oracle_autocorrelation(&a)
        .iter()
        .zip(oracle_autocorrelation(&b))
        .map(|(x, y)| x + y)
        .collect();
    assert_eq!(sum, re(&[8.0, 0.0, 0.0, 0.0]));
    let m = generate_matrix(&chain);
    assert_eq!(m.get(1, 1).as_slice(), re(&[-1.0, 1.0, 1.0, 1.0]));
}

#[test]
fn ones_chain_is_kernel_times_top_walsh() {
    // With C = S = 1 the -1 sits at U_{1,0}, not U_{1,1}.
    for bits in 1..=4u32 {
        for perm in Permutation::all(bits) {
            let chain = UnitaryChain::ones(perm.clone());
            for (r, s) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
                let got = generate_index_form(&chain.clone().with_selectors(r, s).unwrap());
                let g = oracle_golay(perm.as_slice(), r as usize, s as usize);
                let top = (1usize << bits) - 1;
                let sign = if r == 0 { 1.0 } else { -1.0 };
                let expected: Vec<Complex64> = (0..got.len())
                    .map(|n| c(sign * g[n] * oracle_walsh(top, n, bits as usize), 0.0))
                    .collect();
                assert_eq!(got.as_slice(), expected);
            }
        }
    }
}

#[test]
fn golay_chain_is_the_signed_kernel() {
    for bits in 1..=4u32 {
        for perm in Permutation::all(bits) {
            let chain = UnitaryChain::golay(perm.clone());
            for (r, s) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
                let got = generate_index_form(&chain.clone().with_selectors(r, s).unwrap());
                let kernel = golay_binary(bits, &perm, r, s).unwrap();
                assert_eq!(kernel.as_slice(), re(&oracle_golay(perm.as_slice(), r as usize, s as usize)));
                let sign = if (r as u32 + bits * s as u32) % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(got, kernel.scaled(c(sign, 0.0)));
            }
        }
    }
}

#[test]
fn reference_routine_matches_transformed_index_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for bits in 0..=6u32 {
        for _ in 0..10 {
            let perm = random_perm(&mut rng, bits);
            let chain = random_chain(&mut rng, bits, perm.clone());
            let cs: Vec<Complex64> = chain.matrices().iter().map(|u| u.c()).collect();
            let ss: Vec<Complex64> = chain.matrices().iter().map(|u| u.s()).collect();
            for (r, s) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
                let reference = boolean_cs(&perm, &cs, &ss, r, s).unwrap();
                let spec = equivalent_spec(&perm, &cs, &ss, r, s).unwrap();
                let swapped: Vec<Unitary2x2> = chain
                    .matrices()
                    .iter()
                    .map(|u| Unitary2x2::new(u.c(), -u.s().conj()).unwrap())
                    .collect();
                let expected = oracle_sequence(&swapped, perm.as_slice(), r as usize, s as usize);
                assert!(max_relative_diff(&expected, &reference) < 1e-12);
                assert_eq!(generate_index_form(&spec), reference);
            }
        }
    }
}

#[test]
fn zero_entries_need_the_index_form() {
    let zero = c(0.0, 0.0);
    let chain = UnitaryChain::new(
        "3,1,2".parse().unwrap(),
        vec![
            Unitary2x2::new(zero, c(1.0, 1.0)).unwrap(),
            Unitary2x2::new(c(3.0, 1.0), zero).unwrap(),
            Unitary2x2::ones(),
            Unitary2x2::new(c(0.0, 1.0), c(1.0, 0.0)).unwrap(),
        ],
    )
    .unwrap();
    for (r, s) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
        let spec = chain.clone().with_selectors(r, s).unwrap();
        let index = generate_index_form(&spec);
        assert_eq!(index.as_slice(), oracle_chain(&chain, r as usize, s as usize));
        assert_eq!(generate_exponent_form(&spec), index);
        assert!(generate_algebraic_form(&spec).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn forms_agree_with_the_oracle(seed in any::<u64>(), bits in 0u32..=7, r in 0u8..2, s in 0u8..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = random_perm(&mut rng, bits);
        let chain = random_chain(&mut rng, bits, perm);
        let spec = chain.clone().with_selectors(r, s).unwrap();
        let oracle = oracle_chain(&chain, r as usize, s as usize);
        let index = generate_index_form(&spec);
        prop_assert!(max_relative_diff(&oracle, &index) < 1e-12);
        prop_assert_eq!(generate_exponent_form(&spec), index.clone());
        let algebraic = generate_algebraic_form(&spec).unwrap();
        prop_assert!(max_relative_diff(&index, &algebraic) < 1e-10);
    }

    #[test]
    fn unimodular_algebraic_form_stays_on_the_circle(seed in any::<u64>(), bits in 1u32..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = random_perm(&mut rng, bits);
        let matrices = (0..=bits)
            .map(|_| {
                use rand::Rng;
                let a = rng.gen_range(0.0..std::f64::consts::TAU);
                let b = rng.gen_range(0.0..std::f64::consts::TAU);
                Unitary2x2::new(Complex64::from_polar(1.0, a), Complex64::from_polar(1.0, b)).unwrap()
            })
            .collect();
        let chain = UnitaryChain::new(perm, matrices).unwrap();
        let seq = generate_algebraic_form(&chain.with_selectors(0, 1).unwrap()).unwrap();
        for z in seq.iter() {
            prop_assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn every_line_of_a_random_matrix_is_complementary(seed in any::<u64>(), bits in 0u32..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = random_perm(&mut rng, bits);
        let m = generate_matrix(&random_chain(&mut rng, bits, perm));
        prop_assert!(m.structure_holds());
        for (_, (a, b)) in m.lines() {
            prop_assert!(oracle_complementary(a, b));
        }
    }
}
