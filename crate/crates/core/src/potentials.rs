//! The potential family `(U_n, V_n)` and the systems built from it.
//!
//! Potentials are kept as polynomials in the abstract quadratics `U` and `V`
//! and only expanded into `X`, `a` when a bracket or an evaluation needs them.
//!
//! ```text
//! U_1 = U,            V_1 = V
//! U_n = U V_{n-1},    V_n = V V_{n-1} - U_{n-1}
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{require_zero, VerifyError};
use crate::poly::{int, Axis, Polynomial, Rational, UvPolynomial};

/// Parameters `a1, a2, a3`, either kept as ring variables or fixed numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Params {
    Symbolic,
    Numeric([Rational; 3]),
}

impl Params {
    pub fn numeric(a1: Rational, a2: Rational, a3: Rational) -> Self {
        Params::Numeric([a1, a2, a3])
    }

    pub fn ints(a1: i64, a2: i64, a3: i64) -> Self {
        Params::Numeric([int(a1), int(a2), int(a3)])
    }

    /// Exact conversion of finite floats. Returns `None` for NaN or infinities.
    pub fn from_f64(a: [f64; 3]) -> Option<Self> {
        let mut out: [Rational; 3] = std::array::from_fn(|_| Rational::zero());
        for (o, x) in out.iter_mut().zip(a) {
            *o = Rational::from_float(x)?;
        }
        Some(Params::Numeric(out))
    }

    /// `a_i` as a polynomial: the variable itself or a constant.
    pub fn a(&self, axis: Axis) -> Polynomial {
        match self {
            Params::Symbolic => Polynomial::a(axis),
            Params::Numeric(a) => Polynomial::constant(a[axis.index()].clone()),
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Params::Symbolic)
    }
}

/// `U = a2 a3 X1^2 + a3 a1 X2^2 + a1 a2 X3^2`.
pub fn neumann_u(params: &Params) -> Polynomial {
    Axis::ALL
        .iter()
        .map(|&i| {
            let (j, k) = i.cyclic();
            &(&params.a(j) * &params.a(k)) * &Polynomial::x(i).pow(2)
        })
        .sum()
}

/// `V = (a2 + a3) X1^2 + (a3 + a1) X2^2 + (a1 + a2) X3^2`.
pub fn neumann_v(params: &Params) -> Polynomial {
    Axis::ALL
        .iter()
        .map(|&i| {
            let (j, k) = i.cyclic();
            &(&params.a(j) + &params.a(k)) * &Polynomial::x(i).pow(2)
        })
        .sum()
}

/// Substitutes the concrete quadratics `U`, `V` into an abstract polynomial.
pub fn expand_uv(p: &UvPolynomial, params: &Params) -> Polynomial {
    p.eval_at(&neumann_u(params), &neumann_v(params))
}

/// `(U_n, V_n)` as abstract polynomials in `U`, `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialPair {
    pub n: u32,
    pub u: UvPolynomial,
    pub v: UvPolynomial,
}

impl PotentialPair {
    /// The Neumann pair `(U, V)`.
    pub fn first() -> Self {
        PotentialPair {
            n: 1,
            u: UvPolynomial::u(),
            v: UvPolynomial::v(),
        }
    }

    /// One application of the recurrence.
    pub fn recurrence_step(&self) -> Self {
        PotentialPair {
            n: self.n + 1,
            u: &UvPolynomial::u() * &self.v,
            v: &(&UvPolynomial::v() * &self.v) - &self.u,
        }
    }

    /// `(U_n, V_n)` by iterating the recurrence from `n = 1`.
    pub fn iterated(n: u32) -> Result<Self, VerifyError> {
        check_n(n)?;
        let mut pair = PotentialPair::first();
        while pair.n < n {
            pair = pair.recurrence_step();
        }
        Ok(pair)
    }
}

fn check_n(n: u32) -> Result<(), VerifyError> {
    if n == 0 {
        Err(VerifyError::InvalidArgument("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Pascal's triangle up to row `rows`, exact.
fn pascal(rows: usize) -> Vec<Vec<BigInt>> {
    let mut tri: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for r in 1..=rows {
        let prev = &tri[r - 1];
        let mut row = vec![BigInt::one(); r + 1];
        for k in 1..r {
            row[k] = &prev[k - 1] + &prev[k];
        }
        tri.push(row);
    }
    tri
}

/// Explicit form of `(U_n, V_n)`:
///
/// ```text
/// U_n = sum_{k=0}^{[(n-1)/2]} (-1)^k C(n-1-k, k) U^{k+1} V^{n-1-2k}
/// V_n = sum_{k=0}^{[n/2]}     (-1)^k C(n-k, k)   U^k     V^{n-2k}
/// ```
pub fn closed_form(n: u32) -> Result<PotentialPair, VerifyError> {
    check_n(n)?;
    let tri = pascal(n as usize);
    let signed = |k: u32, c: &BigInt| {
        let c = Rational::from_integer(c.clone());
        if k % 2 == 1 {
            -c
        } else {
            c
        }
    };
    let u = UvPolynomial::from_terms((0..=(n - 1) / 2).map(|k| {
        let c = &tri[(n - 1 - k) as usize][k as usize];
        ((k + 1, n - 1 - 2 * k), signed(k, c))
    }));
    let v = UvPolynomial::from_terms((0..=n / 2).map(|k| {
        let c = &tri[(n - k) as usize][k as usize];
        ((k, n - 2 * k), signed(k, c))
    }));
    Ok(PotentialPair { n, u, v })
}

/// Closed form against the iterated recurrence for `1 <= n <= nmax`.
pub fn verify_closed_form(nmax: u32) -> Result<(), VerifyError> {
    check_n(nmax)?;
    for n in 1..=nmax {
        let (closed, iterated) = (closed_form(n)?, PotentialPair::iterated(n)?);
        for (name, a, b) in [("U_n", &closed.u, &iterated.u), ("V_n", &closed.v, &iterated.v)] {
            let residual = a - b;
            if !residual.is_zero() {
                return Err(VerifyError::UvResidual {
                    identity: format!("closed form of {name} against the recurrence"),
                    n: Some(n),
                    residual,
                });
            }
        }
    }
    Ok(())
}

/// `V_{n+1} - V V_n + U V_{n-1} = 0` for `2 <= n <= nmax`.
pub fn verify_three_term(nmax: u32) -> Result<(), VerifyError> {
    if nmax < 2 {
        return Err(VerifyError::InvalidArgument("nmax must be at least 2".into()));
    }
    let forms: Vec<PotentialPair> = (1..=nmax + 1).map(closed_form).collect::<Result<_, _>>()?;
    for n in 2..=nmax {
        let idx = (n - 1) as usize;
        let residual =
            &(&forms[idx + 1].v - &(&UvPolynomial::v() * &forms[idx].v)) + &(&UvPolynomial::u() * &forms[idx - 1].v);
        if !residual.is_zero() {
            return Err(VerifyError::UvResidual {
                identity: "three-term relation V_{n+1} - V V_n + U V_{n-1}".into(),
                n: Some(n),
                residual,
            });
        }
    }
    Ok(())
}

/// Both first-order identities, for `1 <= n <= nmax`:
/// `dV U_n + U dU V_n = 0` and `dV V_n + V dU V_n = dU U_n`.
pub fn verify_pdes(nmax: u32) -> Result<(), VerifyError> {
    if nmax < 1 {
        return Err(VerifyError::InvalidArgument("nmax must be at least 1".into()));
    }
    for n in 1..=nmax {
        let p = closed_form(n)?;
        let first = &p.u.partial_v() + &(&UvPolynomial::u() * &p.v.partial_u());
        if !first.is_zero() {
            return Err(VerifyError::UvResidual {
                identity: "dV U_n + U dU V_n = 0".into(),
                n: Some(n),
                residual: first,
            });
        }
        let second = &(&p.v.partial_v() + &(&UvPolynomial::v() * &p.v.partial_u())) - &p.u.partial_u();
        if !second.is_zero() {
            return Err(VerifyError::UvResidual {
                identity: "dV V_n + V dU V_n - dU U_n = 0".into(),
                n: Some(n),
                residual: second,
            });
        }
    }
    Ok(())
}

/// `H_n = sum a_i M_i^2 + U_n`, `I_n = sum M_i^2 + V_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrableSystem {
    pub n: u32,
    pub h: Polynomial,
    pub i: Polynomial,
}

/// `sum_i a_i M_i^2`.
pub fn kinetic_h(params: &Params) -> Polynomial {
    Axis::ALL.iter().map(|&i| &params.a(i) * &Polynomial::m(i).pow(2)).sum()
}

/// `sum_i M_i^2`.
pub fn kinetic_i() -> Polynomial {
    Axis::ALL.iter().map(|&i| Polynomial::m(i).pow(2)).sum()
}

pub fn build_system(n: u32, params: &Params) -> Result<IntegrableSystem, VerifyError> {
    let pair = closed_form(n)?;
    let u = neumann_u(params);
    let v = neumann_v(params);
    Ok(IntegrableSystem {
        n,
        h: &kinetic_h(params) + &pair.u.eval_at(&u, &v),
        i: &kinetic_i() + &pair.v.eval_at(&u, &v),
    })
}

/// `S(X) = (a1 - a2)(a2 - a3)(a3 - a1) X1 X2 X3`.
pub fn s_of_x(params: &Params) -> Polynomial {
    let [a1, a2, a3] = Axis::ALL.map(|i| params.a(i));
    let prefactor = &(&(&a1 - &a2) * &(&a2 - &a3)) * &(&a3 - &a1);
    let xs = &(&Polynomial::x(Axis::One) * &Polynomial::x(Axis::Two)) * &Polynomial::x(Axis::Three);
    &prefactor * &xs
}

/// `dV V_{n-1}`, the factor relating `{H_n, I_n}` to `{H_2, I_2}`. Needs `n >= 2`.
pub fn commutator_prefactor(n: u32) -> Result<UvPolynomial, VerifyError> {
    if n < 2 {
        return Err(VerifyError::InvalidArgument("prefactor needs n >= 2".into()));
    }
    Ok(closed_form(n - 1)?.v.partial_v())
}

fn weighted_square_sum(params: &Params, power: u32) -> Polynomial {
    Axis::ALL
        .iter()
        .map(|&k| &params.a(k).pow(power) * &Polynomial::x(k).pow(2))
        .sum()
}

/// The first three members of the rival polynomial family on the sphere:
///
/// ```text
/// I   = sum a_k X_k^2
/// I_2 = sum a_k^2 X_k^2 - (sum a_k X_k^2)^2
/// I_3 = sum a_k^3 X_k^2 - 2 (sum a_j X_j^2)(sum a_k^2 X_k^2) + (sum a_k X_k^2)^3
/// ```
pub fn wojciechowski(k: u32, params: &Params) -> Result<Polynomial, VerifyError> {
    let w1 = weighted_square_sum(params, 1);
    match k {
        1 => Ok(w1),
        2 => Ok(&weighted_square_sum(params, 2) - &w1.pow(2)),
        3 => {
            let w2 = weighted_square_sum(params, 2);
            Ok(&(&weighted_square_sum(params, 3) - &(&w1 * &w2).scale_int(2)) + &w1.pow(3))
        }
        _ => Err(VerifyError::InvalidArgument(format!(
            "only the first three members are available, got k = {k}"
        ))),
    }
}

/// Sums `f(i, j, k)` over the three cyclic rotations of `(1, 2, 3)`.
fn cyclic_sum(f: impl Fn(Axis, Axis, Axis) -> Polynomial) -> Polynomial {
    Axis::ALL
        .iter()
        .map(|&i| {
            let (j, k) = i.cyclic();
            f(i, j, k)
        })
        .sum()
}

/// Expected `V_2 + I_2` on the sphere:
/// `sum_cyc (a2 a3 - a1^2) X1^2 + a1^2 + a2^2 + a3^2`.
pub fn v2_plus_i2_expected(params: &Params) -> Polynomial {
    cyclic_sum(|i, j, k| {
        let a = |x| params.a(x);
        let quad = &(&a(j) * &a(k)) - &a(i).pow(2);
        &(&quad * &Polynomial::x(i).pow(2)) + &a(i).pow(2)
    })
}

/// The quoted closed form of `V_3 + I_3`:
///
/// ```text
/// sum_cyc (a1-a2)(a1-a3)(3a1+2a2+2a3) X1^4
///   + sum_cyc a1(-4a1^2+3a2^2+3a3^2) X1^2
///   + sum_cyc a1^2(a1-a2-a3) + a1 a2 a3
/// ```
///
/// This does not hold on the sphere; the discrepancy is exactly
/// `2 V sum_k a_k^2 X_k^2`. See [`v3_plus_i3_corrected`].
pub fn v3_plus_i3_claimed(params: &Params) -> Polynomial {
    let a = |x| params.a(x);
    let body = cyclic_sum(|i, j, k| {
        let quartic =
            &(&(&a(i) - &a(j)) * &(&a(i) - &a(k))) * &(&(&a(i).scale_int(3) + &a(j).scale_int(2)) + &a(k).scale_int(2));
        let quadratic =
            &a(i) * &(&(&a(i).pow(2).scale_int(-4) + &a(j).pow(2).scale_int(3)) + &a(k).pow(2).scale_int(3));
        let constant = &a(i).pow(2) * &(&(&a(i) - &a(j)) - &a(k));
        &(&(&quartic * &Polynomial::x(i).pow(4)) + &(&quadratic * &Polynomial::x(i).pow(2))) + &constant
    });
    &body + &(&(&a(Axis::One) * &a(Axis::Two)) * &a(Axis::Three))
}

/// `V_3 + I_3` on the sphere in the same shape, with coefficients that do hold:
///
/// ```text
/// sum_cyc (a1-a2)(a1-a3)(a1+a2+a3) X1^4
///   + sum_cyc a1(a2^2+a3^2-2a1^2) X1^2
///   + a1^3 + a2^3 + a3^3 + a1 a2 a3
/// ```
pub fn v3_plus_i3_corrected(params: &Params) -> Polynomial {
    let a = |x| params.a(x);
    let body = cyclic_sum(|i, j, k| {
        let sum = &(&a(i) + &a(j)) + &a(k);
        let quartic = &(&(&a(i) - &a(j)) * &(&a(i) - &a(k))) * &sum;
        let quadratic = &a(i) * &(&(&a(j).pow(2) + &a(k).pow(2)) - &a(i).pow(2).scale_int(2));
        &(&(&quartic * &Polynomial::x(i).pow(4)) + &(&quadratic * &Polynomial::x(i).pow(2))) + &a(i).pow(3)
    });
    &body + &(&(&a(Axis::One) * &a(Axis::Two)) * &a(Axis::Three))
}

/// `V_k + I_k` reduced mod the sphere.
pub fn reduced_sum_with_rival(k: u32, params: &Params) -> Result<Polynomial, VerifyError> {
    let v = expand_uv(&closed_form(k)?.v, params);
    Ok((&v + &wojciechowski(k, params)?).reduce_mod_sphere())
}

/// Checks the difference identities for `k = 2` (`V_2 + I_2`) and `k = 3`
/// (the quoted `V_3 + I_3` form), modulo the sphere, with symbolic `a`.
pub fn verify_distinctness(k: u32) -> Result<(), VerifyError> {
    verify_distinctness_with(k, &Params::Symbolic)
}

pub fn verify_distinctness_with(k: u32, params: &Params) -> Result<(), VerifyError> {
    let (expected, name) = match k {
        2 => (v2_plus_i2_expected(params), "V_2 + I_2 difference identity"),
        3 => (
            v3_plus_i3_claimed(params),
            "V_3 + I_3 difference identity (quoted form)",
        ),
        _ => {
            return Err(VerifyError::InvalidArgument(format!(
                "distinctness is checked for k = 2 or 3, got {k}"
            )))
        }
    };
    let lhs = reduced_sum_with_rival(k, params)?;
    require_zero(name, Some(k), &lhs - &expected.reduce_mod_sphere())
}

/// `V_3 + I_3` against [`v3_plus_i3_corrected`], modulo the sphere.
pub fn verify_distinctness_corrected(params: &Params) -> Result<(), VerifyError> {
    let lhs = reduced_sum_with_rival(3, params)?;
    require_zero(
        "V_3 + I_3 difference identity (corrected form)",
        Some(3),
        &lhs - &v3_plus_i3_corrected(params).reduce_mod_sphere(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Var};

    fn uv(terms: &[(u32, u32, i64)]) -> UvPolynomial {
        UvPolynomial::from_terms(terms.iter().map(|&(a, b, c)| ((a, b), int(c))))
    }

    #[test]
    fn recurrence_from_first_pair() {
        let p2 = PotentialPair::first().recurrence_step();
        assert_eq!(p2.n, 2);
        assert_eq!(p2.u, uv(&[(1, 1, 1)]));
        assert_eq!(p2.v, uv(&[(0, 2, 1), (1, 0, -1)]));
        let p3 = p2.recurrence_step();
        assert_eq!(p3.v, uv(&[(0, 3, 1), (1, 1, -2)]));
        assert_eq!(p3.u, uv(&[(1, 2, 1), (2, 0, -1)]));
    }

    #[test]
    fn closed_form_small_n() {
        assert_eq!(closed_form(1).unwrap(), PotentialPair::first());
        let p2 = closed_form(2).unwrap();
        assert_eq!(p2.u, uv(&[(1, 1, 1)]));
        assert_eq!(p2.v, uv(&[(0, 2, 1), (1, 0, -1)]));
        assert_eq!(closed_form(3).unwrap().v, uv(&[(0, 3, 1), (1, 1, -2)]));
        assert!(closed_form(0).is_err());
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for n in 1..=12 {
            assert_eq!(closed_form(n).unwrap(), PotentialPair::iterated(n).unwrap(), "n = {n}");
        }
        verify_closed_form(12).unwrap();
        assert!(verify_closed_form(0).is_err());
    }

    #[test]
    fn three_term_and_pdes() {
        // n = 2 by hand: (V^3 - 2UV) - V(V^2 - U) + UV = 0
        let r = &(&uv(&[(0, 3, 1), (1, 1, -2)]) - &(&UvPolynomial::v() * &uv(&[(0, 2, 1), (1, 0, -1)])))
            + &uv(&[(1, 1, 1)]);
        assert!(r.is_zero());
        verify_three_term(10).unwrap();
        verify_pdes(10).unwrap();
        assert!(verify_three_term(1).is_err());
    }

    #[test]
    fn second_pde_at_n2() {
        let p = closed_form(2).unwrap();
        let lhs = &p.v.partial_v() + &(&UvPolynomial::v() * &p.v.partial_u());
        assert_eq!(lhs, UvPolynomial::v());
        assert_eq!(p.u.partial_u(), UvPolynomial::v());
    }

    #[test]
    fn prefactors() {
        assert_eq!(commutator_prefactor(2).unwrap(), UvPolynomial::one());
        assert_eq!(commutator_prefactor(3).unwrap(), uv(&[(0, 1, 2)]));
        assert_eq!(commutator_prefactor(4).unwrap(), uv(&[(0, 2, 3), (1, 0, -2)]));
        assert!(commutator_prefactor(1).is_err());
    }

    #[test]
    fn expansion_of_u_and_v2() {
        let u = expand_uv(&UvPolynomial::u(), &Params::Symbolic);
        assert_eq!(u, neumann_u(&Params::Symbolic));
        assert_eq!(u.len(), 3);
        assert!(expand_uv(&UvPolynomial::zero(), &Params::Symbolic).is_zero());
        let v = neumann_v(&Params::Symbolic);
        let v2 = expand_uv(&uv(&[(0, 2, 1), (1, 0, -1)]), &Params::Symbolic);
        assert_eq!(v2, &(&v * &v) - &u);
    }

    #[test]
    fn expanded_degrees() {
        for n in 1..=5 {
            let v = expand_uv(&closed_form(n).unwrap().v, &Params::Symbolic);
            assert_eq!(v.x_degree(), 2 * n);
            assert!(v.terms().all(|(m, _)| m.param_degree() == n), "a-homogeneous, n = {n}");
        }
    }

    #[test]
    fn neumann_h_at_a_point() {
        let sys = build_system(1, &Params::ints(1, 2, 3)).unwrap();
        let mut vals: [Rational; 9] = std::array::from_fn(|_| Rational::zero());
        vals[Var::M1.index()] = int(1);
        vals[Var::X2.index()] = int(1);
        assert_eq!(sys.h.evaluate(&vals), int(4));
    }

    #[test]
    fn equal_parameters_give_constant_potential() {
        let sys = build_system(1, &Params::ints(1, 1, 1)).unwrap();
        assert_eq!(sys.h.reduce_mod_sphere(), &kinetic_i() + &Polynomial::one());
    }

    #[test]
    fn s_of_x_values() {
        let xs = &(&Polynomial::x(Axis::One) * &Polynomial::x(Axis::Two)) * &Polynomial::x(Axis::Three);
        assert_eq!(s_of_x(&Params::ints(1, 2, 3)), xs.scale_int(2));
        assert!(s_of_x(&Params::ints(4, 4, 9)).is_zero());
        assert_eq!(s_of_x(&Params::Symbolic).len(), 6);
    }

    #[test]
    fn rival_family_first_member() {
        let w1 = wojciechowski(1, &Params::Symbolic).unwrap();
        assert_eq!(w1, weighted_square_sum(&Params::Symbolic, 1));
        let total = Axis::ALL.iter().map(|&i| Polynomial::a(i)).sum::<Polynomial>();
        let diff = &neumann_v(&Params::Symbolic) - &(&total - &w1);
        assert!(diff.reduce_mod_sphere().is_zero());
        assert!(!diff.is_zero(), "only holds on the sphere");
    }

    #[test]
    fn rival_i2_at_a_point() {
        let w2 = wojciechowski(2, &Params::ints(1, 2, 3)).unwrap();
        let mut vals: [Rational; 9] = std::array::from_fn(|_| Rational::zero());
        vals[0] = int(1);
        assert!(w2.evaluate(&vals).is_zero());
        assert!(wojciechowski(4, &Params::Symbolic).is_err());
    }

    #[test]
    fn distinctness_k2() {
        verify_distinctness(2).unwrap();
        // quartic content cancels after reduction
        assert_eq!(reduced_sum_with_rival(2, &Params::Symbolic).unwrap().x_degree(), 2);
    }

    #[test]
    fn distinctness_k2_equal_parameters() {
        let p = Params::Numeric([rat(5, 2), rat(5, 2), rat(5, 2)]);
        verify_distinctness_with(2, &p).unwrap();
        let lhs = reduced_sum_with_rival(2, &p).unwrap();
        assert_eq!(lhs, v2_plus_i2_expected(&p).reduce_mod_sphere());
        assert!(lhs.as_constant().is_some());
    }

    #[test]
    fn quoted_v3_i3_form_is_off_by_two_v_w2() {
        let p = Params::Symbolic;
        let err = verify_distinctness(3).unwrap_err();
        let residual = err.residual_polynomial().unwrap().clone();
        let expected = (&neumann_v(&p) * &weighted_square_sum(&p, 2))
            .scale_int(2)
            .reduce_mod_sphere();
        assert_eq!(residual, expected);
        verify_distinctness_corrected(&p).unwrap();
    }
}
