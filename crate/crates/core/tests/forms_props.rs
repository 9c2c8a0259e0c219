mod common;

use common::*;
use gaussmanin::forms::{df_wedge, differential, divide_by_df, integrate_top_wrt, PolyForm};
use gaussmanin::local::{default_degree_bound, jacobian_std_basis, mora_normal_form};
use gaussmanin::series::{vars, MultiPoly, Vars};
use gaussmanin::Error;
use proptest::prelude::*;
use rand::Rng;

fn xyz() -> Vars {
    vars(&["x", "y", "z"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), degree in 0usize..=1) {
        let omega = random_form(&mut rng(seed), &xyz(), degree, 5);
        prop_assert!(omega.exterior_d().unwrap().exterior_d().unwrap().is_zero());
    }

    #[test]
    fn graded_leibniz(seed in any::<u64>(), p in 0usize..=2, q in 0usize..=1) {
        prop_assume!(p + q < 3);
        let mut r = rng(seed);
        let a = random_form(&mut r, &xyz(), p, 3);
        let b = random_form(&mut r, &xyz(), q, 3);
        let lhs = a.wedge(&b).unwrap().exterior_d().unwrap();
        let first = a.exterior_d().unwrap().wedge(&b).unwrap();
        let second = a.wedge(&b.exterior_d().unwrap()).unwrap();
        let rhs = if p % 2 == 0 { first.add(&second) } else { first.sub(&second) };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_graded_commutative(seed in any::<u64>(), p in 0usize..=2, q in 0usize..=1) {
        prop_assume!(p + q <= 3);
        let mut r = rng(seed);
        let a = random_form(&mut r, &xyz(), p, 3);
        let b = random_form(&mut r, &xyz(), q, 3);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(ab, if (p * q) % 2 == 0 { ba } else { ba.neg() });
    }

    #[test]
    fn primitive_differentiates_back(seed in any::<u64>(), var in 0usize..3) {
        let g = random_poly(&mut rng(seed), &xyz(), 5, 5);
        let omega = PolyForm::top(g);
        prop_assert_eq!(integrate_top_wrt(&omega, var).exterior_d().unwrap(), omega);
    }
}

#[test]
fn wedge_overflow_and_top_degree_errors() {
    let dx = differential(&MultiPoly::var(xyz(), 0));
    let top = PolyForm::top(MultiPoly::one(xyz()));
    assert_eq!(top.exterior_d(), Err(Error::TopDegree));
    assert!(matches!(dx.wedge(&top), Err(Error::DegreeOverflow(4, 3))));
}

fn random_top_coefficient<R: Rng>(r: &mut R, f: &MultiPoly, bound: u32) -> MultiPoly {
    let vs = f.vars().clone();
    let g = random_poly(r, &vs, bound.min(8), 6);
    if r.gen_bool(0.5) {
        return g;
    }
    // an element of the Jacobian ideal, truncated to the certified range
    let mut h = MultiPoly::zero(vs.clone());
    for j in 0..vs.len() {
        h = &h + &(&random_poly(r, &vs, 4, 3) * &f.partial(j));
    }
    h.truncate(bound)
}

#[test]
fn gelfand_leray_round_trip_on_fixtures() {
    for (name, f) in all_fixtures() {
        let bound = default_degree_bound(&f);
        let basis = jacobian_std_basis(&f, bound).unwrap();
        let oracle = JacobianSpan::new(&f, bound);
        let mut r = rng(1234);
        let mut exact_without_tail = 0;
        for _ in 0..500 {
            let g = random_top_coefficient(&mut r, &f, bound);
            let omega = PolyForm::top(g.clone());
            let gl = divide_by_df(&f, &omega, &basis).unwrap();
            let lhs = df_wedge(&f, &gl.eta).unwrap().add(&PolyForm::top(&gl.remainder + &gl.tail));
            assert_eq!(lhs, omega, "{name}: round trip of {g}");
            assert!(gl.tail.order().is_none_or(|o| o > bound), "{name}: tail below the bound");
            if gl.tail.is_zero() {
                exact_without_tail += 1;
            }
            let (_, nf) = mora_normal_form(&g, &basis).unwrap();
            assert_eq!(nf, gl.remainder);
            assert_eq!(gl.remainder.is_zero(), oracle.contains(&g), "{name}: membership of {g}");
        }
        assert!(exact_without_tail > 0, "{name}");
    }
}

#[test]
fn division_rejects_foreign_basis() {
    let basis = jacobian_std_basis(&cusp(), 10).unwrap();
    let omega = PolyForm::top(MultiPoly::one(xy()));
    assert_eq!(divide_by_df(&node(), &omega, &basis), Err(Error::BasisMismatch));
}
