use neumann_core::dynamics::{project, PhasePoint};
use neumann_core::e3::{casimir_c1, casimir_c2, hat_l, poisson_bracket};
use neumann_core::poly::{Axis, Monomial, Polynomial, Rational, UvPolynomial, Var, NVARS};
use neumann_core::potentials::{expand_uv, Params};
use neumann_core::quantum::{apply_l, SphereFunction};
use proptest::prelude::*;

const PHASE_VARS: [Var; 6] = [Var::X1, Var::X2, Var::X3, Var::M1, Var::M2, Var::M3];

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Random polynomial over `vars` with total degree at most `max_degree`.
fn poly_over(vars: &'static [Var], max_degree: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let term = (
        prop::collection::vec(0..vars.len(), 0..=max_degree as usize),
        rational(),
    )
        .prop_map(move |(picks, c)| {
            let mut m = Monomial::ONE;
            for p in picks {
                let v = vars[p];
                m.set_exponent(v, m.exponent(v) + 1);
            }
            (m, c)
        });
    prop::collection::vec(term, 0..=max_terms).prop_map(Polynomial::from_terms)
}

fn phase_poly(max_degree: u32) -> impl Strategy<Value = Polynomial> {
    poly_over(&PHASE_VARS, max_degree, 5)
}

fn x_poly(max_degree: u32) -> impl Strategy<Value = Polynomial> {
    poly_over(&PHASE_VARS[..3], max_degree, 6)
}

fn any_poly() -> impl Strategy<Value = Polynomial> {
    poly_over(&Var::ALL, 3, 5)
}

fn uv_poly() -> impl Strategy<Value = UvPolynomial> {
    prop::collection::vec(((0u32..=2, 0u32..=2), rational()), 0..=4).prop_map(UvPolynomial::from_terms)
}

fn axis() -> impl Strategy<Value = Axis> {
    prop_oneof![Just(Axis::One), Just(Axis::Two), Just(Axis::Three)]
}

fn assignment() -> impl Strategy<Value = [Rational; NVARS]> {
    prop::collection::vec(rational(), NVARS).prop_map(|v| std::array::from_fn(|i| v[i].clone()))
}

proptest! {
    #[test]
    fn addition_is_a_commutative_group(f in any_poly(), g in any_poly(), h in any_poly()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f + &Polynomial::zero(), f.clone());
        prop_assert!((&f + &(-&f)).is_zero());
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive(f in any_poly(), g in any_poly(), h in any_poly()) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &Polynomial::one(), f.clone());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(f in any_poly(), g in any_poly(), at in assignment()) {
        prop_assert_eq!((&f * &g).evaluate(&at), f.evaluate(&at) * g.evaluate(&at));
        prop_assert_eq!((&f + &g).evaluate(&at), f.evaluate(&at) + g.evaluate(&at));
    }

    #[test]
    fn partial_derivative_obeys_leibniz(f in any_poly(), g in any_poly(), vi in 0usize..NVARS) {
        let v = Var::ALL[vi];
        prop_assert_eq!((&f * &g).partial(v), &(&f.partial(v) * &g) + &(&f * &g.partial(v)));
    }

    #[test]
    fn identity_substitution_is_trivial(f in any_poly()) {
        let bindings: Vec<(Var, Polynomial)> = Var::ALL.iter().map(|&v| (v, Polynomial::var(v))).collect();
        prop_assert_eq!(f.substitute(&bindings), f);
    }

    #[test]
    fn json_round_trip(f in any_poly()) {
        let json = serde_json::to_string(&f).unwrap();
        let back: Polynomial = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn sphere_reduction_is_an_idempotent_homomorphism(f in x_poly(5), g in x_poly(4)) {
        let (rf, rg) = (f.reduce_mod_sphere(), g.reduce_mod_sphere());
        prop_assert!(rf.degree_in(Var::X3) <= 1);
        prop_assert_eq!(rf.reduce_mod_sphere(), rf.clone());
        prop_assert_eq!((&f + &g).reduce_mod_sphere(), &rf + &rg);
        prop_assert_eq!((&f * &g).reduce_mod_sphere(), (&rf * &rg).reduce_mod_sphere());
        let ideal_element = &(&casimir_c1() - &Polynomial::one()) * &f;
        prop_assert!(ideal_element.reduce_mod_sphere().is_zero());
    }

    #[test]
    fn expansion_is_a_ring_homomorphism(p in uv_poly(), q in uv_poly()) {
        let s = Params::Symbolic;
        prop_assert_eq!(expand_uv(&(&p * &q), &s), &expand_uv(&p, &s) * &expand_uv(&q, &s));
        prop_assert_eq!(expand_uv(&(&p + &q), &s), &expand_uv(&p, &s) + &expand_uv(&q, &s));
    }

    #[test]
    fn bracket_is_antisymmetric(f in phase_poly(4), g in phase_poly(4)) {
        prop_assert!((&poisson_bracket(&f, &g) + &poisson_bracket(&g, &f)).is_zero());
    }

    #[test]
    fn bracket_obeys_leibniz(f in phase_poly(3), g in phase_poly(3), h in phase_poly(3)) {
        let lhs = poisson_bracket(&f, &(&g * &h));
        let rhs = &(&poisson_bracket(&f, &g) * &h) + &(&g * &poisson_bracket(&f, &h));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_obeys_jacobi(f in phase_poly(3), g in phase_poly(3), h in phase_poly(3)) {
        let j = &(&poisson_bracket(&f, &poisson_bracket(&g, &h)) + &poisson_bracket(&g, &poisson_bracket(&h, &f)))
            + &poisson_bracket(&h, &poisson_bracket(&f, &g));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn momentum_bracket_is_minus_rotation(f in x_poly(4), i in axis()) {
        prop_assert_eq!(poisson_bracket(&Polynomial::m(i), &f), -&hat_l(i, &f));
    }

    #[test]
    fn casimirs_are_central(f in phase_poly(4)) {
        prop_assert!(poisson_bracket(&casimir_c1(), &f).is_zero());
        prop_assert!(poisson_bracket(&casimir_c2(), &f).is_zero());
    }

    #[test]
    fn rotation_descends_to_the_quotient(p in x_poly(5), i in axis()) {
        let via_quotient = apply_l(i, &SphereFunction::new(&p));
        let direct = SphereFunction::new(&hat_l(i, &p));
        prop_assert_eq!(via_quotient, direct);
    }

    #[test]
    fn rotation_is_a_derivation(f in x_poly(3), g in x_poly(3), i in axis()) {
        prop_assert_eq!(hat_l(i, &(&f * &g)), &(&hat_l(i, &f) * &g) + &(&f * &hat_l(i, &g)));
    }

    #[test]
    fn projection_lands_on_the_orbit_and_is_idempotent(
        x in prop::array::uniform3(-10.0f64..10.0),
        m in prop::array::uniform3(-10.0f64..10.0),
    ) {
        prop_assume!(x.iter().map(|v| v * v).sum::<f64>() > 1e-6);
        let p = project(&PhasePoint::new(x, m)).unwrap();
        prop_assert!((p.c1() - 1.0).abs() < 1e-14);
        prop_assert!(p.c2().abs() < 1e-13 * (1.0 + m.iter().fold(0.0f64, |a, v| a.max(v.abs()))));
        let q = project(&p).unwrap();
        prop_assert!(p.distance(&q) < 1e-13 * (1.0 + m.iter().fold(0.0f64, |a, v| a.max(v.abs()))));
    }
}

#[test]
fn casimirs_bracket_to_zero_with_every_low_degree_monomial() {
    fn monomials(max_degree: u32) -> Vec<Monomial> {
        let mut out = vec![Monomial::ONE];
        for _ in 0..max_degree {
            let next: Vec<Monomial> = out
                .iter()
                .flat_map(|m| PHASE_VARS.iter().map(move |&v| m.mul(&Monomial::var(v))))
                .collect();
            out.extend(next);
            out.sort();
            out.dedup();
        }
        out
    }
    let all = monomials(4);
    assert_eq!(all.len(), 210);
    for m in all {
        let f = Polynomial::monomial(m, Rational::from_integer(1.into()));
        assert!(poisson_bracket(&casimir_c1(), &f).is_zero(), "{m}");
        assert!(poisson_bracket(&casimir_c2(), &f).is_zero(), "{m}");
    }
}
