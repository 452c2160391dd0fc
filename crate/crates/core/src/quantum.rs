//! Quantum checks on the sphere quotient ring `Q[X1, X2, X3] / (X.X - 1)`.
//!
//! The momenta are realized as `M_i = i L_i`, with `L_i = eps_ijk X_j d_k`,
//! and the potentials act by multiplication. Every operator we need is even
//! in `M`, so the imaginary unit only shows up as a phase that is tracked
//! separately ([`Phased`]); all arithmetic stays rational. In particular
//! `M_i^2 = -L_i^2`, so
//!
//! ```text
//! H_n = -sum a_i L_i^2 + U_n,     I_n = -sum L_i^2 + V_n.
//! ```
//!
//! `C1 = Id` holds by construction of the quotient.

use crate::e3::{casimir_c1, hat_l};
use crate::error::{require_zero, VerifyError};
use crate::par::{self, Execution};
use crate::poly::{levi_civita, Axis, Monomial, Polynomial, Var};
use crate::potentials::{closed_form, commutator_prefactor, expand_uv, s_of_x, Params};

/// Element of the sphere quotient ring, kept in canonical form (X3-degree at
/// most one), so equality is term-map equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SphereFunction(Polynomial);

impl SphereFunction {
    /// Canonicalizes `p`. Panics in debug builds if `p` involves `M`.
    pub fn new(p: &Polynomial) -> Self {
        debug_assert!(p.only_uses(|v| !v.is_m()), "sphere functions do not depend on M");
        SphereFunction(p.reduce_mod_sphere())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::new(&Polynomial::monomial(m, num_traits::One::one()))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn value(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_inner(self) -> Polynomial {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &SphereFunction) -> SphereFunction {
        SphereFunction(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &SphereFunction) -> SphereFunction {
        SphereFunction(&self.0 - &other.0)
    }

    /// Multiplication operator by `p`.
    pub fn times(&self, p: &Polynomial) -> SphereFunction {
        SphereFunction::new(&(p * &self.0))
    }
}

/// `L_i f`, re-canonicalized.
pub fn apply_l(axis: Axis, f: &SphereFunction) -> SphereFunction {
    SphereFunction::new(&hat_l(axis, f.value()))
}

/// A sphere function times `i^phase`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phased {
    pub phase: u8,
    pub value: SphereFunction,
}

impl Phased {
    pub fn real(value: SphereFunction) -> Self {
        Phased { phase: 0, value }
    }

    /// Folds `i^2 = -1` into the value, leaving phase 0 or 1.
    pub fn normalized(self) -> Self {
        let p = self.phase % 4;
        let value = if p >= 2 {
            SphereFunction(-self.value.0)
        } else {
            self.value
        };
        Phased { phase: p % 2, value }
    }
}

/// `M_i f = i L_i f`.
pub fn apply_m(axis: Axis, f: &Phased) -> Phased {
    Phased {
        phase: (f.phase + 1) % 4,
        value: apply_l(axis, &f.value),
    }
    .normalized()
}

/// `M_i^2 f = -L_i(L_i f)`.
pub fn apply_m_squared(axis: Axis, f: &SphereFunction) -> SphereFunction {
    let twice = apply_m(axis, &apply_m(axis, &Phased::real(f.clone())));
    debug_assert_eq!(twice.phase, 0);
    twice.value
}

/// `(sum_i L_i(X_i f), sum_i X_i L_i f)`, the real parts of `sum M_i X_i f`
/// and `sum X_i M_i f` (both carry one factor of `i`).
pub fn c2_real_forms(f: &SphereFunction) -> (SphereFunction, SphereFunction) {
    let mut left = SphereFunction::zero();
    let mut right = SphereFunction::zero();
    for i in Axis::ALL {
        let xi = Polynomial::x(i);
        left = left.add(&apply_l(i, &f.times(&xi)));
        right = right.add(&apply_l(i, f).times(&xi));
    }
    (left, right)
}

/// Canonical monomials `X1^i X2^j X3^e` (`e <= 1`) of degree at most
/// `max_degree`, in graded-lex order.
pub fn canonical_basis(max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for e in 0..=1u32 {
        for i in 0..=max_degree {
            for j in 0..=max_degree {
                if i + j + e <= max_degree {
                    let mut m = Monomial::ONE;
                    m.set_exponent(Var::X1, i as u16);
                    m.set_exponent(Var::X2, j as u16);
                    m.set_exponent(Var::X3, e as u16);
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    out
}

fn operator_failure(identity: String, n: Option<u32>, monomial: Monomial, residual: SphereFunction) -> VerifyError {
    VerifyError::Operator {
        identity,
        n,
        monomial,
        residual: residual.into_inner(),
    }
}

/// Real forms of the e(3) commutation relations on the basis:
/// `[L_i, L_j] = -eps_ijk L_k`, `[L_i, X_j] = -eps_ijk X_k`, `[X_i, X_j] = 0`.
pub fn verify_qu1(max_degree: u32) -> Result<(), VerifyError> {
    if max_degree < 1 {
        return Err(VerifyError::InvalidArgument("max_degree must be at least 1".into()));
    }
    for m in canonical_basis(max_degree) {
        let f = SphereFunction::monomial(m);
        let lf: Vec<SphereFunction> = Axis::ALL.iter().map(|&i| apply_l(i, &f)).collect();
        for i in Axis::ALL {
            for j in Axis::ALL {
                let lhs = apply_l(i, &lf[j.index()]).sub(&apply_l(j, &lf[i.index()]));
                let rhs = Axis::ALL
                    .iter()
                    .fold(SphereFunction::zero(), |acc, &k| match levi_civita(i, j, k) {
                        0 => acc,
                        s => acc.sub(&SphereFunction(lf[k.index()].value().scale_int(s as i64))),
                    });
                let r = lhs.sub(&rhs);
                if !r.is_zero() {
                    return Err(operator_failure(
                        format!("[L_{}, L_{}]", i.index() + 1, j.index() + 1),
                        None,
                        m,
                        r,
                    ));
                }

                let xj = Polynomial::x(j);
                let lhs = apply_l(i, &f.times(&xj)).sub(&lf[i.index()].times(&xj));
                let rhs = Axis::ALL
                    .iter()
                    .fold(SphereFunction::zero(), |acc, &k| match levi_civita(i, j, k) {
                        0 => acc,
                        s => acc.sub(&f.times(&Polynomial::x(k).scale_int(s as i64))),
                    });
                let r = lhs.sub(&rhs);
                if !r.is_zero() {
                    return Err(operator_failure(
                        format!("[L_{}, X_{}]", i.index() + 1, j.index() + 1),
                        None,
                        m,
                        r,
                    ));
                }

                let xi = Polynomial::x(i);
                let r = f.times(&xj).times(&xi).sub(&f.times(&xi).times(&xj));
                if !r.is_zero() {
                    return Err(operator_failure(
                        format!("[X_{}, X_{}]", i.index() + 1, j.index() + 1),
                        None,
                        m,
                        r,
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Both orderings of `C2` annihilate every basis monomial.
pub fn verify_c2_annihilates(max_degree: u32) -> Result<(), VerifyError> {
    for m in canonical_basis(max_degree) {
        let (left, right) = c2_real_forms(&SphereFunction::monomial(m));
        if !left.is_zero() {
            return Err(operator_failure("sum M_i X_i".into(), None, m, left));
        }
        if !right.is_zero() {
            return Err(operator_failure("sum X_i M_i".into(), None, m, right));
        }
    }
    Ok(())
}

/// The pair `H_n`, `I_n` as operators on the quotient.
#[derive(Clone, Debug)]
pub struct QuantumSystem {
    pub n: u32,
    pub params: Params,
    u_n: Polynomial,
    v_n: Polynomial,
}

impl QuantumSystem {
    pub fn new(n: u32, params: Params) -> Result<Self, VerifyError> {
        let pair = closed_form(n)?;
        let u_n = expand_uv(&pair.u, &params).reduce_mod_sphere();
        let v_n = expand_uv(&pair.v, &params).reduce_mod_sphere();
        Ok(QuantumSystem { n, params, u_n, v_n })
    }

    fn kinetic(&self, f: &SphereFunction, weighted: bool) -> SphereFunction {
        Axis::ALL.iter().fold(SphereFunction::zero(), |acc, &i| {
            let m2 = apply_m_squared(i, f);
            if weighted {
                acc.add(&m2.times(&self.params.a(i)))
            } else {
                acc.add(&m2)
            }
        })
    }

    /// `H_n f = sum a_i M_i^2 f + U_n f`.
    pub fn apply_h(&self, f: &SphereFunction) -> SphereFunction {
        self.kinetic(f, true).add(&f.times(&self.u_n))
    }

    /// `I_n f = sum M_i^2 f + V_n f`.
    pub fn apply_i(&self, f: &SphereFunction) -> SphereFunction {
        self.kinetic(f, false).add(&f.times(&self.v_n))
    }

    /// `H_n(I_n f) - I_n(H_n f)`.
    pub fn commutator(&self, f: &SphereFunction) -> SphereFunction {
        let hi = self.apply_h(&self.apply_i(f));
        let ih = self.apply_i(&self.apply_h(f));
        hi.sub(&ih)
    }

    pub fn potential_u(&self) -> SphereFunction {
        SphereFunction(self.u_n.clone())
    }

    pub fn potential_v(&self) -> SphereFunction {
        SphereFunction(self.v_n.clone())
    }
}

/// `[H_n, I_n] f = 0` for every basis monomial of degree at most `max_degree`.
pub fn verify_quantum_commutation(n: u32, max_degree: u32, params: &Params) -> Result<(), VerifyError> {
    verify_quantum_commutation_with(n, max_degree, params, Execution::default())
}

pub fn verify_quantum_commutation_with(
    n: u32,
    max_degree: u32,
    params: &Params,
    exec: Execution,
) -> Result<(), VerifyError> {
    let sys = QuantumSystem::new(n, params.clone())?;
    let basis = canonical_basis(max_degree);
    let results = par::map_slice(&basis, exec, |&m| {
        let r = sys.commutator(&SphereFunction::monomial(m));
        if r.is_zero() {
            Ok(())
        } else {
            Err(operator_failure("[H_n, I_n]".into(), Some(n), m, r))
        }
    });
    par::first_error(results)
}

/// For each axis:
///
/// ```text
/// L_i(U_n - a_i V_n) = dV V_{n-1} (-2 S(X) X_i + 2 a_i^2 (a_j - a_k)(1 - C1) X_j X_k)
/// ```
///
/// exactly as polynomials, and modulo the sphere it equals `-2 dV V_{n-1} S(X) X_i`.
pub fn verify_qu6_qu8(n: u32, params: &Params) -> Result<(), VerifyError> {
    let pair = closed_form(n)?;
    let u_n = expand_uv(&pair.u, params);
    let v_n = expand_uv(&pair.v, params);
    let factor = expand_uv(&commutator_prefactor(n)?, params);
    let s = s_of_x(params);
    let one_minus_c1 = &Polynomial::one() - &casimir_c1();
    for i in Axis::ALL {
        let (j, k) = i.cyclic();
        let lhs = hat_l(i, &(&u_n - &(&params.a(i) * &v_n)));
        let s_part = (&s * &Polynomial::x(i)).scale_int(-2);
        let c1_coeff = (&params.a(i).pow(2) * &(&params.a(j) - &params.a(k))).scale_int(2);
        let c1_part = &(&c1_coeff * &one_minus_c1) * &(&Polynomial::x(j) * &Polynomial::x(k));
        let rhs = &factor * &(&s_part + &c1_part);
        require_zero("L_i(U_n - a_i V_n) factorization", Some(n), &lhs - &rhs)?;
        let reduced = (&lhs - &(&factor * &s_part)).reduce_mod_sphere();
        require_zero("L_i(U_n - a_i V_n) on the sphere", Some(n), reduced)?;
    }
    Ok(())
}

/// Multiplication by `U_n` and by `V_m` commute on the basis.
pub fn verify_multiplication_ordering(n: u32, m: u32, max_degree: u32, params: &Params) -> Result<(), VerifyError> {
    let u = QuantumSystem::new(n, params.clone())?.potential_u();
    let v = QuantumSystem::new(m, params.clone())?.potential_v();
    for mono in canonical_basis(max_degree) {
        let f = SphereFunction::monomial(mono);
        let r = f
            .times(u.value())
            .times(v.value())
            .sub(&f.times(v.value()).times(u.value()));
        if !r.is_zero() {
            return Err(operator_failure("U_n V_m ordering".into(), Some(n), mono, r));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::neumann_v;

    fn x(i: usize) -> Polynomial {
        Polynomial::x(Axis::from_label(i).unwrap())
    }

    #[test]
    fn basis_size() {
        // 28 monomials without X3, 21 with X3
        assert_eq!(canonical_basis(6).len(), 49);
        assert_eq!(canonical_basis(0), vec![Monomial::ONE]);
    }

    #[test]
    fn apply_l_examples() {
        let f = SphereFunction::new(&x(2));
        assert_eq!(apply_l(Axis::One, &f).value(), &-x(3));
        let radius = casimir_c1();
        assert!(hat_l(Axis::One, &radius).is_zero());
        let v = SphereFunction::new(&neumann_v(&Params::Symbolic));
        let expected = (&(&Polynomial::a(Axis::Two) - &Polynomial::a(Axis::Three)) * &(&x(2) * &x(3))).scale_int(2);
        assert_eq!(apply_l(Axis::One, &v).value(), &expected);
    }

    #[test]
    fn l_descends_to_quotient() {
        let p = &(&x(3).pow(4) * &x(1)) + &(&x(2).pow(2) * &x(3).pow(3));
        for i in Axis::ALL {
            let via_quotient = apply_l(i, &SphereFunction::new(&p));
            let direct = SphereFunction::new(&hat_l(i, &p));
            assert_eq!(via_quotient, direct);
        }
    }

    #[test]
    fn m_squared_and_phase() {
        assert!(apply_m_squared(Axis::One, &SphereFunction::new(&x(1))).is_zero());
        let once = apply_m(Axis::One, &Phased::real(SphereFunction::new(&x(2))));
        assert_eq!(once.phase, 1);
        assert_eq!(once.value.value(), &-x(3));
        // M_1^2 X2 = -L_1(-X3) = L_1 X3 = X2
        assert_eq!(apply_m_squared(Axis::One, &SphereFunction::new(&x(2))).value(), &x(2));
    }

    #[test]
    fn c2_on_constant() {
        let (l, r) = c2_real_forms(&SphereFunction::new(&Polynomial::one()));
        assert!(l.is_zero() && r.is_zero());
        verify_c2_annihilates(4).unwrap();
    }

    #[test]
    fn l1_l2_on_x1() {
        let f = SphereFunction::new(&x(1));
        let lhs = apply_l(Axis::One, &apply_l(Axis::Two, &f)).sub(&apply_l(Axis::Two, &apply_l(Axis::One, &f)));
        assert_eq!(lhs.value(), &x(2));
        assert_eq!(apply_l(Axis::Three, &f).value(), &-x(2));
    }

    #[test]
    fn commutation_relations_low_degree() {
        verify_qu1(3).unwrap();
        assert!(verify_qu1(0).is_err());
    }

    #[test]
    fn quantum_commutation_n1_constant() {
        let sys = QuantumSystem::new(1, Params::Symbolic).unwrap();
        assert!(sys.commutator(&SphereFunction::new(&Polynomial::one())).is_zero());
        verify_quantum_commutation(1, 3, &Params::Symbolic).unwrap();
    }

    #[test]
    fn quantum_commutation_equal_parameters() {
        verify_quantum_commutation(3, 4, &Params::ints(2, 2, 2)).unwrap();
    }

    #[test]
    fn wrong_potential_fails() {
        // Negative control: replacing I's potential by U breaks commutation.
        let mut sys = QuantumSystem::new(2, Params::ints(1, 2, 3)).unwrap();
        sys.v_n = sys.u_n.clone();
        let failing = canonical_basis(2)
            .into_iter()
            .any(|m| !sys.commutator(&SphereFunction::monomial(m)).is_zero());
        assert!(failing);
    }

    #[test]
    fn qu7_n2_and_degenerate() {
        verify_qu6_qu8(2, &Params::Symbolic).unwrap();
        verify_qu6_qu8(3, &Params::ints(1, 5, 5)).unwrap();
        assert!(verify_qu6_qu8(1, &Params::Symbolic).is_err());
    }

    #[test]
    fn ordering_irrelevance() {
        verify_multiplication_ordering(2, 3, 3, &Params::Symbolic).unwrap();
    }
}
