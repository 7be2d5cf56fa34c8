mod support;

use cobcat::cob1::Matching1D;
use cobcat::exactmath::{Field, FieldMatrix};
use cobcat::monoidal::*;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::gen;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_field<R: Rng>(r: &mut R) -> Field {
    [Field::Rationals, Field::Prime(2), Field::Prime(3), Field::Prime(5), Field::Prime(7)][r.gen_range(0..5)]
}

#[test]
fn restricted_evaluation_is_functorial() {
    let mut r = rng(11);
    for _ in 0..1000 {
        let field = random_field(&mut r);
        let dim = r.gen_range(1..=3);
        let theory = FrobeniusDatum::new(gen::symmetric(&mut r, field, dim)).unwrap();
        let a = r.gen_range(0..=2);
        let b = a + 2 * r.gen_range(0..=1);
        let c = b + 2 * r.gen_range(0..=usize::from(b < 3));
        let v = gen::restricted(&mut r, a, b);
        let w = gen::restricted(&mut r, b, c);
        let composite = evaluate_restricted(&theory, &v.then(&w).unwrap());
        let product = evaluate_restricted(&theory, &w).mul(&evaluate_restricted(&theory, &v)).unwrap();
        assert_eq!(composite, product);
    }
}

#[test]
fn extension_exactly_for_nondegenerate_pairings() {
    let mut r = rng(12);
    let mut seen = [0usize; 2];
    for _ in 0..100 {
        let field = random_field(&mut r);
        let dim = r.gen_range(1..=4);
        let b = gen::symmetric(&mut r, field, dim);
        let det = b.determinant().unwrap();
        let theory = FrobeniusDatum::new(b).unwrap();
        let ext = extend_to_full(&theory);
        assert_eq!(ext.extends(), det != BigRational::from_integer(0.into()));
        seen[usize::from(ext.extends())] += 1;
        if let Some(e) = ext.evaluator() {
            let id = Matching1D::identity(1);
            let down = e.evaluate(&id.tensor(&Matching1D::cap())).mul(&e.evaluate(&Matching1D::cup().tensor(&id))).unwrap();
            let up = e.evaluate(&Matching1D::cap().tensor(&id)).mul(&e.evaluate(&id.tensor(&Matching1D::cup()))).unwrap();
            assert_eq!(down, FieldMatrix::identity(field, dim));
            assert_eq!(up, FieldMatrix::identity(field, dim));
            assert_eq!(e.circle_value(), &field.from_int(dim as i64));
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn standard_pairing_circle_is_the_dimension() {
    for field in [Field::Rationals, Field::Prime(5), Field::Prime(7)] {
        for dim in 1..=4 {
            let e = extend_to_full(&FrobeniusDatum::standard(field, dim));
            let z = e.evaluator().unwrap().evaluate(&Matching1D::circles(1));
            assert_eq!(z.get(0, 0), &field.from_int(dim as i64));
        }
    }
}

proptest! {
    #[test]
    fn full_evaluation_is_functorial(seed in any::<u64>(), a in 0..=2usize, b in 0..=3usize, c in 0..=2usize) {
        let mut r = rng(seed);
        let (b, c) = (b + (a + b) % 2, c + (b + (a + b) % 2 + c) % 2);
        let field = random_field(&mut r);
        let dim = r.gen_range(1..=2);
        let pairing = gen::symmetric(&mut r, field, dim);
        prop_assume!(pairing.is_invertible());
        let ext = extend_to_full(&FrobeniusDatum::new(pairing).unwrap());
        let e = ext.evaluator().unwrap();
        let v = gen::matching(&mut r, a, b, 1);
        let w = gen::matching(&mut r, b, c, 1);
        prop_assert_eq!(e.evaluate(&v.then(&w).unwrap()), e.evaluate(&w).mul(&e.evaluate(&v)).unwrap());
        prop_assert_eq!(e.evaluate(&v.tensor(&w)), e.evaluate(&v).kron(&e.evaluate(&w)));
    }

    #[test]
    fn restricted_evaluation_is_monoidal(seed in any::<u64>(), a in 0..=1usize, b in 0..=1usize, c in 0..=1usize, d in 0..=1usize) {
        let mut r = rng(seed);
        let theory = FrobeniusDatum::new(gen::symmetric(&mut r, Field::Rationals, 2)).unwrap();
        let v = gen::restricted(&mut r, a, a + 2 * b);
        let w = gen::restricted(&mut r, c, c + 2 * d);
        prop_assert_eq!(evaluate_restricted(&theory, &v.tensor(&w)), evaluate_restricted(&theory, &v).kron(&evaluate_restricted(&theory, &w)));
    }

    #[test]
    fn k_invariant_is_additive_and_kills_doubles(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_picard(&mut r);
        let g0 = p.pi0();
        let g1 = p.pi1();
        let x: Vec<i64> = (0..g0.len()).map(|_| r.gen_range(-5..=5)).collect();
        let y: Vec<i64> = (0..g0.len()).map(|_| r.gen_range(-5..=5)).collect();
        prop_assert!(g1.is_zero(&g1.add(&p.c(&x, &y), &p.c(&y, &x))));
        prop_assert_eq!(p.k_invariant(&g0.add(&x, &g0.scale(2, &y))), p.k_invariant(&x));
        prop_assert_eq!(p.k_invariant(&g0.add(&x, &y)), g1.add(&p.k_invariant(&x), &p.k_invariant(&y)));
    }

    #[test]
    fn relabelled_data_is_equivalent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_picard(&mut r);
        prop_assert!(picard_equivalent(&p, &p, 1 << 20).unwrap());
        let q = PicardData::new(p.pi0().clone(), p.pi1().clone(), {
            let n = p.pi0().len();
            (0..n).map(|i| (0..n).map(|j| p.pi1().neg(&p.c(&p.pi0().generator(i), &p.pi0().generator(j)))).collect()).collect()
        }).unwrap();
        prop_assert!(picard_equivalent(&p, &q, 1 << 20).unwrap());
    }
}

fn random_picard<R: Rng>(r: &mut R) -> PicardData {
    let orders = [0u64, 2, 2, 3, 4];
    loop {
        let pi0 = CyclicSum::new(&(0..r.gen_range(0..=2)).map(|_| orders[r.gen_range(0..orders.len())]).collect::<Vec<_>>());
        let pi1 = CyclicSum::new(&(0..r.gen_range(1..=2)).map(|_| orders[r.gen_range(0..orders.len())]).collect::<Vec<_>>());
        let n = pi0.len();
        let mut c = vec![vec![pi1.zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = pi1.reduce(&(0..pi1.len()).map(|_| r.gen_range(-3..=3)).collect::<Vec<_>>());
                c[i][j] = v.clone();
                c[j][i] = pi1.neg(&v);
            }
        }
        if let Ok(p) = PicardData::new(pi0, pi1, c) {
            return p;
        }
    }
}
