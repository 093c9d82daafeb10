use braidcat::cyclotomic::{gauss_binomial, rat, CycNum, Q};
use proptest::prelude::*;

/// Σ c_k ζ_N^k built only from powers of a primitive root.
fn from_powers(n: u32, cs: &[(i64, i64)]) -> CycNum {
    let z = CycNum::root_of_unity(n, 1).unwrap();
    let mut acc = CycNum::zero();
    for (k, &(a, b)) in cs.iter().enumerate() {
        acc += &(&CycNum::from_rational(rat(a, b)) * &z.pow(k as i64).unwrap());
    }
    acc
}

/// Direct floating-point evaluation, independent of the reduced representation.
fn float_eval(n: u32, cs: &[(i64, i64)]) -> (f64, f64) {
    let mut re = 0.0;
    let mut im = 0.0;
    for (k, &(a, b)) in cs.iter().enumerate() {
        let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let c = a as f64 / b as f64;
        re += c * t.cos();
        im += c * t.sin();
    }
    (re, im)
}

fn element() -> impl Strategy<Value = (u32, Vec<(i64, i64)>)> {
    (1u32..=24).prop_flat_map(|n| (Just(n), prop::collection::vec((-6i64..=6, 1i64..=4), 1..=n as usize)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((n, a) in element(), b in prop::collection::vec((-6i64..=6, 1i64..=4), 1..6), c in prop::collection::vec((-6i64..=6, 1i64..=4), 1..6), m in 1u32..=12) {
        let x = from_powers(n, &a);
        let y = from_powers(m, &b);
        let z = from_powers(n, &c);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn numeric_shadow((n, a) in element()) {
        let x = from_powers(n, &a);
        let (re, im) = x.to_complex();
        let (fr, fi) = float_eval(n, &a);
        prop_assert!((re - fr).abs() < 1e-9 && (im - fi).abs() < 1e-9, "{} vs ({fr}, {fi})", x);
    }
}

#[test]
fn gauss_binomial_pascal_and_product() {
    // generic q: ζ_N with N larger than every n, so the product formula has nonzero denominators
    for n_ord in [13u32, 17, 30] {
        let q = CycNum::root_of_unity(n_ord, 1).unwrap();
        for n in 1..=12u32 {
            for k in 1..n {
                let lhs = gauss_binomial(n, k, &q).unwrap();
                let pascal = &gauss_binomial(n - 1, k - 1, &q).unwrap() + &(&q.pow(k as i64).unwrap() * &gauss_binomial(n - 1, k, &q).unwrap());
                assert_eq!(lhs, pascal, "Pascal at n={n}, k={k}");
                let mut prod = CycNum::one();
                for i in 1..=k {
                    let num = CycNum::one() - q.pow((n - k + i) as i64).unwrap();
                    let den = CycNum::one() - q.pow(i as i64).unwrap();
                    prod = &(&prod * &num) * &den.inv().unwrap();
                }
                assert_eq!(lhs, prod, "product formula at n={n}, k={k}");
            }
        }
    }
}

#[test]
fn gauss_binomial_vanishes_at_roots() {
    for p in 2..=12u32 {
        let z = CycNum::root_of_unity(p, 1).unwrap();
        for k in 1..p {
            assert!(gauss_binomial(p, k, &z).unwrap().is_zero(), "p={p}, k={k}");
        }
        // at q = 1 the classical binomial survives
        assert_eq!(gauss_binomial(p, 1, &CycNum::one()).unwrap(), CycNum::from_rational(Q::from_integer(p.into())));
    }
}
