use braidcat::cyclotomic::{int, rat, CycNum, Q};
use braidcat::graded_braid::{Bicharacter, GradingGroup, Lattice};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn det(m: &[Vec<Q>]) -> Q {
    // cofactor expansion: independent of the library's elimination
    match m.len() {
        0 => int(1),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<Q>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
                let s = if j % 2 == 0 { int(1) } else { int(-1) };
                s * &m[0][j] * det(&minor)
            })
            .fold(Q::zero(), |a, b| a + b),
    }
}

fn gram(l: &Lattice) -> Vec<Vec<Q>> {
    l.basis.iter().map(|a| l.basis.iter().map(|b| l.pair(a, b)).collect()).collect()
}

/// Random full-rank even lattice: integer symmetric form with even diagonal, integer basis.
fn lattice() -> impl Strategy<Value = Lattice> {
    (1usize..=3)
        .prop_flat_map(|r| (Just(r), prop::collection::vec(-3i64..=3, r * r), prop::collection::vec(-2i64..=2, r * r)))
        .prop_filter_map("degenerate", |(r, f, b)| {
            let form: Vec<Vec<Q>> = (0..r).map(|i| (0..r).map(|j| int(f[i.min(j) * r + i.max(j)] * if i == j { 2 } else { 1 })).collect()).collect();
            let basis: Vec<Vec<Q>> = (0..r).map(|i| (0..r).map(|j| int(b[i * r + j] + if i == j { 3 } else { 0 })).collect()).collect();
            let l = Lattice::new(form, basis).ok()?;
            let d = det(&gram(&l)).abs();
            // keep Λ*/Λ small enough to enumerate
            if d.is_zero() || d > int(4000) {
                return None;
            }
            Some(l)
        })
}

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=6).prop_map(|(a, b)| rat(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_of_dual(l in lattice()) {
        let dd = l.dual().unwrap().dual().unwrap();
        prop_assert!(dd.same_lattice(&l));
    }

    #[test]
    fn discriminant_order_is_det(l in lattice()) {
        let d = l.discriminant_form().unwrap();
        let g = det(&gram(&l)).abs();
        prop_assert_eq!(Q::from_integer(d.order().into()), g);
        // monodromy on the discriminant group is symmetric
        let els = d.elements();
        for a in els.iter().take(6) {
            for b in els.iter().take(6) {
                prop_assert_eq!(d.monodromy(a, b), d.monodromy(b, a));
            }
        }
    }

    #[test]
    fn bimultiplicative_free(a in prop::collection::vec(small_q(), 4), u in prop::collection::vec(-3i64..=3, 6)) {
        let form = vec![vec![a[0].clone(), a[1].clone()], vec![a[2].clone(), a[3].clone()]];
        let b = Bicharacter::new(GradingGroup::free(2), form).unwrap();
        let g = b.group().clone();
        let d = |i: usize| g.degree(vec![int(u[i]), int(u[i + 1])], vec![]).unwrap();
        let (x, y, z) = (d(0), d(2), d(4));
        prop_assert_eq!(b.braiding_value(&g.add(&x, &y), &z).unwrap(), &b.braiding_value(&x, &z).unwrap() * &b.braiding_value(&y, &z).unwrap());
        prop_assert_eq!(b.braiding_value(&x, &g.add(&y, &z)).unwrap(), &b.braiding_value(&x, &y).unwrap() * &b.braiding_value(&x, &z).unwrap());
        prop_assert_eq!(b.monodromy(&x, &y).unwrap(), b.monodromy(&y, &x).unwrap());
    }

    #[test]
    fn bimultiplicative_torsion(m in 2u32..=6, k in 0i64..=11, u in prop::collection::vec(-8i64..=8, 3)) {
        // on Z_m the exponent must lie in (2/m)Z for σ to descend
        let a = rat(2 * k, m as i64);
        let g = GradingGroup::cyclic(m).unwrap();
        let b = Bicharacter::new(g.clone(), vec![vec![a]]).unwrap();
        let d = |i: usize| g.degree(vec![], vec![u[i].rem_euclid(m as i64)]).unwrap();
        let (x, y, z) = (d(0), d(1), d(2));
        prop_assert_eq!(b.braiding_value(&g.add(&x, &y), &z).unwrap(), &b.braiding_value(&x, &z).unwrap() * &b.braiding_value(&y, &z).unwrap());
        prop_assert_eq!(b.monodromy(&x, &y).unwrap(), b.monodromy(&y, &x).unwrap());
    }
}

#[test]
fn triplet_discriminant_triples() {
    for p in 2..=6u32 {
        let d = Lattice::triplet(p).unwrap().discriminant_form().unwrap();
        assert_eq!(d.group.label(), format!("Z{}", 2 * p));
        let n = 2 * p as i64;
        for k in 0..n {
            assert_eq!(d.quadratic_form(&[k]), CycNum::exp_pi_i(&rat(k * k, n)));
            for l in 0..n {
                assert_eq!(d.monodromy(&[k], &[l]), CycNum::exp_pi_i(&rat(2 * k * l, n)), "p={p}, ({k},{l})");
            }
        }
    }
}
