mod common;

use common::*;
use gaussmanin::brieskorn::{
    cohomology_ranks, gm_connection_qh, microlocal_apply, reduce_primitive, reduce_to_basis, reduce_with_tails,
    spectral_first_order, t_matrix, BrieskornElement, LocalContext,
};
use gaussmanin::connection::{sorted_rational_eigenvalues, Lattice, Verdict};
use gaussmanin::forms::PolyForm;
use gaussmanin::series::{int, Monomial, MultiPoly, Rational, TruncatedSeries, Var};
use num_traits::{One, Zero};
use proptest::prelude::*;

const N: i64 = 8;

/// Weighted degree `sum (e_i + 1) w_i` of `m dx`.
fn exponent(m: &Monomial, weights: &[Rational]) -> Rational {
    m.exps().iter().zip(weights).map(|(&e, w)| w * int(e as i64 + 1)).sum()
}

fn agree(a: &BrieskornElement, b: &BrieskornElement) -> bool {
    a.coords().iter().zip(b.coords()).all(|(x, y)| x.agrees_with(y))
}

fn qh_contexts() -> Vec<(&'static str, LocalContext, Vec<Rational>)> {
    qh_fixtures().into_iter().map(|(n, f, w)| (n, LocalContext::for_precision(&f, 10, N).unwrap(), w)).collect()
}

#[test]
fn quasi_homogeneous_t_matrix_is_s_times_exponents() {
    for (name, f, weights) in qh_fixtures() {
        let ctx = LocalContext::for_precision(&f, 10, 10).unwrap();
        let t = t_matrix(&ctx, 10).unwrap();
        let m = t.matrix();
        for i in 0..ctx.mu() {
            for j in 0..ctx.mu() {
                let expected = if i == j {
                    TruncatedSeries::monomial(Var::S, exponent(&ctx.report().basis_monomials[i], &weights), 1, 10)
                } else {
                    TruncatedSeries::zero(Var::S, 10)
                };
                assert_eq!(m.get(i, j), &expected, "{name} entry ({i}, {j})");
            }
        }
    }
}

#[test]
fn determinant_valuation_is_mu_for_quasi_homogeneous_fixtures() {
    for (name, ctx, _) in qh_contexts() {
        let det = t_matrix(&ctx, N).unwrap().determinant().unwrap();
        assert_eq!(det.valuation(), Some(ctx.mu() as i64), "{name}");
    }
}

#[test]
fn t55_determinant_is_nonzero() {
    let ctx = LocalContext::for_precision(&t55(), 15, 14).unwrap();
    let det = t_matrix(&ctx, 14).unwrap().determinant().unwrap();
    assert!(!det.is_zero());
}

#[test]
fn t55_first_order_data() {
    let ctx = LocalContext::for_precision(&t55(), 15, 4).unwrap();
    let spectral = spectral_first_order(&t_matrix(&ctx, 4).unwrap()).unwrap();
    assert!(!spectral.a0.is_zero());
    assert!(spectral.nilpotent_a0);
    assert_eq!(spectral.exponents, None);
}

#[test]
fn quasi_homogeneous_connection_is_regular_with_shifted_exponents() {
    for (name, ctx, weights) in qh_contexts() {
        let conn = gm_connection_qh(&ctx, N).unwrap();
        let sat = conn.saturate(&Lattice::standard(conn.dim(), N), N as usize);
        assert_eq!(sat.verdict, Verdict::Regular, "{name}");
        assert_eq!(sat.steps, 0);
        let mut expected: Vec<Rational> = ctx.report().basis_monomials.iter().map(|m| exponent(m, &weights) - Rational::one()).collect();
        expected.sort();
        assert_eq!(sorted_rational_eigenvalues(&conn.residue(&sat.lattice).unwrap()).unwrap(), expected, "{name}");
    }
}

#[test]
fn cohomology_has_rank_mu_in_top_degree() {
    for (name, ctx, _) in qh_contexts() {
        let t = t_matrix(&ctx, N).unwrap();
        let pieces = cohomology_ranks(&ctx, &t).unwrap();
        let n = ctx.f().nvars() - 1;
        let total: usize = pieces.iter().map(|p| p.dimension).sum();
        assert_eq!(total, 1 + ctx.mu(), "{name}");
        assert!(pieces.iter().any(|p| p.degree == n), "{name}");
    }
}

#[test]
fn quasi_homogeneous_reductions_have_no_tails() {
    for (name, ctx, _) in qh_contexts() {
        let mut r = rng(5);
        for _ in 0..50 {
            let g = random_poly(&mut r, ctx.f().vars(), 6, 5);
            assert!(reduce_with_tails(&PolyForm::top(g), &ctx, N).unwrap().is_exact(), "{name}");
        }
    }
}

#[test]
fn jacobian_ideal_members_reduce_to_higher_order() {
    // f_x dx is d(f) ^ (dy) = s-exact, so its class starts at s^1
    for (name, ctx, _) in qh_contexts() {
        let g = ctx.f().partial(0);
        let class = reduce_to_basis(&PolyForm::top(g), &ctx, N).unwrap();
        assert!(class.coords().iter().all(|c| c.coeff(0).is_none_or(|c0| c0.is_zero())), "{name}");
    }
}

fn fixture_context(which: usize) -> (LocalContext, MultiPoly) {
    let (_, f) = all_fixtures().swap_remove(which);
    (LocalContext::for_precision(&f, 12, N).unwrap(), f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn multiplication_by_f_matches_microlocal_t(seed in any::<u64>(), which in 0usize..4) {
        let (ctx, f) = fixture_context(which);
        let g = random_poly(&mut rng(seed), f.vars(), 4, 4);
        let omega = PolyForm::top(g.clone());
        let t = t_matrix(&ctx, N).unwrap();
        let lhs = reduce_to_basis(&PolyForm::top(&g * &f), &ctx, N).unwrap();
        let rhs = microlocal_apply(&t, &reduce_to_basis(&omega, &ctx, N).unwrap()).unwrap();
        prop_assert!(agree(&lhs, &rhs));
    }

    #[test]
    fn t_and_s_commutator_is_s_squared(seed in any::<u64>(), which in 0usize..5) {
        let (_, f) = all_fixtures().swap_remove(which);
        let ctx = LocalContext::for_precision(&f, 12, 4).unwrap();
        let t = t_matrix(&ctx, 4).unwrap();
        let g = random_poly(&mut rng(seed), f.vars(), 4, 4);
        let c = reduce_to_basis(&PolyForm::top(g), &ctx, 4).unwrap();
        let ts = microlocal_apply(&t, &c.shift(1)).unwrap();
        let st = microlocal_apply(&t, &c).unwrap().shift(1);
        let diff = ts.try_sub(&st).unwrap();
        prop_assert!(agree(&diff.truncate(2), &c.shift(2).truncate(2)));
    }

    #[test]
    fn primitive_choice_does_not_matter(seed in any::<u64>(), which in 0usize..4) {
        let (ctx, f) = fixture_context(which);
        let g = random_poly(&mut rng(seed), f.vars(), 5, 4);
        let omega = PolyForm::top(g);
        let s_class = reduce_to_basis(&omega, &ctx, N).unwrap().shift(1);
        for var in 0..f.nvars() {
            let via = reduce_primitive(&omega, var, &ctx, N).unwrap();
            prop_assert!(agree(&via, &s_class));
        }
    }
}

#[test]
fn elements_reject_wrong_shapes() {
    let ctx = LocalContext::new(&cusp(), 10).unwrap();
    let arc = std::sync::Arc::new(ctx.report().clone());
    assert!(BrieskornElement::new(vec![TruncatedSeries::zero(Var::S, 3)], arc.clone()).is_err());
    assert!(BrieskornElement::new(vec![TruncatedSeries::zero(Var::T, 3); 2], arc).is_err());
    assert!(BrieskornElement::zero(&ctx, 3).is_zero());
}
