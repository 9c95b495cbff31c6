//! Derivation laws on random elements of random towers.

use charp::algebra::{Field, Poly};
use charp::random::{random_elem, random_nonzero, random_tower};
use charp::tower::Elem;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(seed: u64) -> (ChaCha8Rng, charp::tower::Tower) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = [2u32, 3, 5][rng.gen_range(0..3)];
    let extra = rng.gen_range(0..3);
    let t = random_tower(&mut rng, p, extra);
    (rng, t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn leibniz_and_quotient(seed in any::<u64>()) {
        let (mut rng, t) = setup(seed);
        let a = random_elem(&mut rng, &t, 3);
        let b = random_nonzero(&mut rng, &t, 3);
        let (da, db) = (t.derive(&a), t.derive(&b));
        prop_assert_eq!(t.derive(&(&a * &b)), &(&da * &b) + &(&a * &db));
        prop_assert_eq!(t.derive(&(&a + &b)), &da + &db);
        let q = a.checked_div(&b).unwrap();
        prop_assert_eq!(&t.derive(&q) * &b.pow(2), &(&da * &b) - &(&a * &db));
    }

    #[test]
    fn pth_powers_are_constants(seed in any::<u64>()) {
        let (mut rng, t) = setup(seed);
        let a = random_elem(&mut rng, &t, 3);
        prop_assert!(t.derive(&a.pow(t.p() as u64)).is_zero());
    }

    #[test]
    fn iterated_pth_power_is_a_derivation(seed in any::<u64>()) {
        let (mut rng, t) = setup(seed);
        let a = random_elem(&mut rng, &t, 2);
        let b = random_elem(&mut rng, &t, 2);
        let n = t.p() as u64;
        let lhs = t.derive_n(&(&a * &b), n);
        let rhs = &(&t.derive_n(&a, n) * &b) + &(&a * &t.derive_n(&b, n));
        prop_assert_eq!(lhs, rhs);
        // the composed form agrees with naive iteration
        prop_assert_eq!(t.pth_power_derivation(1).apply(&a), t.derive_n(&a, n));
    }

    #[test]
    fn frobenius_reconstructs(seed in any::<u64>()) {
        let (mut rng, t) = setup(seed);
        let a = random_elem(&mut rng, &t, 3);
        let d = t.frobenius_decompose(&a);
        prop_assert_eq!(d.reconstruct(), a.clone());
        for (m, g) in &d.terms {
            prop_assert!(m.iter().all(|&k| k < t.p()));
            prop_assert!(!g.is_zero());
            prop_assert!(t.is_constant(&g.pow(t.p() as u64)));
        }
        prop_assert_eq!(t.pth_root(&a.pow(t.p() as u64)), Some(a));
    }

    #[test]
    fn chain_rule_for_polynomials(seed in any::<u64>()) {
        // D(Q(u)) = D(u) Q'(u) + Q^D(u)
        let (mut rng, t) = setup(seed);
        let u = random_elem(&mut rng, &t, 2);
        let len = rng.gen_range(1..5);
        let q: Poly<Elem> = Poly::new((0..len).map(|_| random_elem(&mut rng, &t, 2)).collect());
        let lhs = t.derive(&q.eval(&u));
        let qd: Poly<Elem> = Poly::new(q.coeffs().iter().map(|c| t.derive(c)).collect());
        let rhs = &(&t.derive(&u) * &q.derivative().eval(&u)) + &qd.eval(&u);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn second_pth_power_is_a_derivation() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let p = [2u32, 3][rng.gen_range(0..2)];
        let extra = rng.gen_range(0..2);
        let t = random_tower(&mut rng, p, extra);
        let a = random_elem(&mut rng, &t, 2);
        let b = random_elem(&mut rng, &t, 2);
        let n = (p * p) as u64;
        let lhs = t.derive_n(&(&a * &b), n);
        let rhs = &(&t.derive_n(&a, n) * &b) + &(&a * &t.derive_n(&b, n));
        assert_eq!(lhs, rhs);
    }
}
