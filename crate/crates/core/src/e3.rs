//! Lie–Poisson structure of e(3).
//!
//! Generators satisfy `{M_i, M_j} = eps_ijk M_k`, `{M_i, X_j} = eps_ijk X_k`,
//! `{X_i, X_j} = 0`. The bracket of arbitrary polynomials is computed in one
//! pass from the gradient form
//!
//! ```text
//! {f, g} = M . (grad_M f x grad_M g) + X . (grad_M f x grad_X g - grad_M g x grad_X f)
//! ```
//!
//! so the generator table is something the tests check rather than an input.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{require_zero, VerifyError};
use crate::par::{self, Execution};
use crate::poly::{Axis, Monomial, Polynomial, Rational, Var, NVARS};
use crate::potentials::{
    build_system, commutator_prefactor, expand_uv, neumann_u, neumann_v, s_of_x, IntegrableSystem, Params,
};
use num_traits::{One, Zero};

fn grad_m(f: &Polynomial) -> [Polynomial; 3] {
    Axis::ALL.map(|i| f.partial(Var::m(i)))
}

fn grad_x(f: &Polynomial) -> [Polynomial; 3] {
    Axis::ALL.map(|i| f.partial(Var::x(i)))
}

/// `u_j v_k - u_k v_j` for `(j, k)` cyclic after `i`, skipping zero factors.
fn cross_component(u: &[Polynomial; 3], v: &[Polynomial; 3], i: Axis) -> Polynomial {
    let (j, k) = i.cyclic();
    let (j, k) = (j.index(), k.index());
    let mut out = Polynomial::zero();
    if !u[j].is_zero() && !v[k].is_zero() {
        out += &(&u[j] * &v[k]);
    }
    if !u[k].is_zero() && !v[j].is_zero() {
        out -= &(&u[k] * &v[j]);
    }
    out
}

/// Lie–Poisson bracket on e(3).
pub fn poisson_bracket(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fx) = (grad_m(f), grad_x(f));
    let (gm, gx) = (grad_m(g), grad_x(g));
    let mut out = Polynomial::zero();
    for i in Axis::ALL {
        let mm = cross_component(&fm, &gm, i);
        let mx = &cross_component(&fm, &gx, i) - &cross_component(&gm, &fx, i);
        if !mm.is_zero() {
            out += &(&Polynomial::m(i) * &mm);
        }
        if !mx.is_zero() {
            out += &(&Polynomial::x(i) * &mx);
        }
    }
    out
}

/// `C1 = X1^2 + X2^2 + X3^2`.
pub fn casimir_c1() -> Polynomial {
    Axis::ALL.iter().map(|&i| Polynomial::x(i).pow(2)).sum()
}

/// `C2 = X1 M1 + X2 M2 + X3 M3`.
pub fn casimir_c2() -> Polynomial {
    Axis::ALL.iter().map(|&i| &Polynomial::x(i) * &Polynomial::m(i)).sum()
}

/// `L_i f = eps_ijk X_j d_{X_k} f`; on functions of `X` alone, `{M_i, f} = -L_i f`.
pub fn hat_l(axis: Axis, f: &Polynomial) -> Polynomial {
    let (j, k) = axis.cyclic();
    &(&Polynomial::x(j) * &f.partial(Var::x(k))) - &(&Polynomial::x(k) * &f.partial(Var::x(j)))
}

/// `2 sum_i M_i L_i(U - a_i V)`: the bracket `{H2 + U, I2 + V}` for potentials
/// depending on `X` only, computed through the rotation fields instead of the
/// full bracket.
pub fn bracket_via_rotations(u: &Polynomial, v: &Polynomial, params: &Params) -> Polynomial {
    Axis::ALL
        .iter()
        .map(|&i| {
            let inner = u - &(&params.a(i) * v);
            &Polynomial::m(i) * &hat_l(i, &inner)
        })
        .sum::<Polynomial>()
        .scale_int(2)
}

/// Hamiltonian vector field `xdot_i = {H, X_i}`, `mdot_i = {H, M_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub xdot: [Polynomial; 3],
    pub mdot: [Polynomial; 3],
}

impl VectorField {
    pub fn components(&self) -> impl Iterator<Item = &Polynomial> {
        self.xdot.iter().chain(self.mdot.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.components().all(Polynomial::is_zero)
    }
}

pub fn hamiltonian_vector_field(h: &Polynomial) -> VectorField {
    VectorField {
        xdot: Axis::ALL.map(|i| poisson_bracket(h, &Polynomial::x(i))),
        mdot: Axis::ALL.map(|i| poisson_bracket(h, &Polynomial::m(i))),
    }
}

/// Which diagonal quadratic potential is unknown in the partner derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartnerUnknown {
    /// Solve for the integral's potential `V` given the Neumann `U`.
    Integral,
    /// Solve for the Hamiltonian's potential `U` given the Neumann `V`.
    Hamiltonian,
}

/// A solved diagonal quadratic `p1 X1^2 + p2 X2^2 + p3 X3^2` satisfying
/// `L_i(U - a_i V) = 0` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPartner {
    pub unknown: PartnerUnknown,
    pub coefficients: [Polynomial; 3],
    /// `[p2 - p3, p3 - p1, p1 - p2]` as required by the vanishing conditions.
    pub differences: [Polynomial; 3],
}

impl QuadraticPartner {
    pub fn potential(&self) -> Polynomial {
        Axis::ALL
            .iter()
            .map(|&i| &self.coefficients[i.index()] * &Polynomial::x(i).pow(2))
            .sum()
    }

    /// Sum of the three difference relations; zero for a consistent system.
    pub fn relation_sum(&self) -> Polynomial {
        self.differences.iter().cloned().sum()
    }
}

/// Parameter-only coefficient of the given `X`/`M` monomial in `p`.
fn coefficient_of(p: &Polynomial, phase: &Monomial) -> Polynomial {
    Polynomial::from_terms(p.terms().filter_map(|(m, c)| {
        let matches = (0..6).all(|i| m.0[i] == phase.0[i]);
        matches.then(|| {
            let mut rest = *m;
            rest.0[..6].fill(0);
            (rest, c.clone())
        })
    }))
}

/// Solves for the diagonal quadratic partner of the Neumann potential with
/// symbolic `a`, fixing `p1 = normalization`.
///
/// For a diagonal form `L_1(p1 X1^2 + p2 X2^2 + p3 X3^2) = 2(p3 - p2) X2 X3`,
/// so each vanishing condition fixes one coefficient difference.
pub fn derive_quadratic_partner(
    unknown: PartnerUnknown,
    normalization: &Polynomial,
) -> Result<QuadraticPartner, VerifyError> {
    let params = Params::Symbolic;
    let known = match unknown {
        PartnerUnknown::Integral => neumann_u(&params),
        PartnerUnknown::Hamiltonian => neumann_v(&params),
    };
    let mut differences: [Polynomial; 3] = std::array::from_fn(|_| Polynomial::zero());
    for i in Axis::ALL {
        let (j, k) = i.cyclic();
        let lk = hat_l(i, &known);
        let xjxk = Monomial::var(Var::x(j)).mul(&Monomial::var(Var::x(k)));
        let c = coefficient_of(&lk, &xjxk);
        if &Polynomial::monomial(xjxk, Rational::one()) * &c != lk {
            return Err(VerifyError::residual(
                "partner ansatz (rotation image not along X_j X_k)",
                None,
                lk,
            ));
        }
        // p_j - p_k = -(1/2) * (L_i U coefficient)/a_i     (unknown V)
        // p_j - p_k = -(1/2) * a_i (L_i V coefficient)     (unknown U)
        let half = Rational::new(1.into(), 2.into());
        let d = match unknown {
            PartnerUnknown::Integral => c
                .div_var_exact(Var::a(i))
                .ok_or_else(|| VerifyError::residual("partner relation not divisible by a_i", None, c.clone()))?
                .scale(&-half),
            PartnerUnknown::Hamiltonian => (&params.a(i) * &c).scale(&-half),
        };
        differences[i.index()] = d;
    }
    let partner = QuadraticPartner {
        unknown,
        coefficients: [
            normalization.clone(),
            normalization - &differences[2],
            normalization + &differences[1],
        ],
        differences,
    };
    require_zero("partner relations sum", None, partner.relation_sum())?;
    let (u, v) = match unknown {
        PartnerUnknown::Integral => (known, partner.potential()),
        PartnerUnknown::Hamiltonian => (partner.potential(), known),
    };
    for i in Axis::ALL {
        require_zero(
            "partner vanishing condition L_i(U - a_i V)",
            None,
            hat_l(i, &(&u - &(&params.a(i) * &v))),
        )?;
    }
    Ok(partner)
}

/// Rational point on the orbit `C1 = 1`, `C2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstrainedPoint {
    pub x: [Rational; 3],
    pub m: [Rational; 3],
}

impl ConstrainedPoint {
    /// `X = (2p, 2q, 1 - p^2 - q^2) / (1 + p^2 + q^2)`, `M = X x w`.
    pub fn from_stereographic(p: &Rational, q: &Rational, w: &[Rational; 3]) -> Self {
        let one = Rational::one();
        let two = &one + &one;
        let d = &(&one + &(p * p)) + &(q * q);
        let x = [
            &(&two * p) / &d,
            &(&two * q) / &d,
            &(&(&one - &(p * p)) - &(q * q)) / &d,
        ];
        let m = [
            &(&x[1] * &w[2]) - &(&x[2] * &w[1]),
            &(&x[2] * &w[0]) - &(&x[0] * &w[2]),
            &(&x[0] * &w[1]) - &(&x[1] * &w[0]),
        ];
        ConstrainedPoint { x, m }
    }

    pub fn c1(&self) -> Rational {
        self.x.iter().map(|v| v * v).sum()
    }

    pub fn c2(&self) -> Rational {
        self.x.iter().zip(self.m.iter()).map(|(a, b)| a * b).sum()
    }

    /// Variable assignment with the parameters set to `a`.
    pub fn assignment(&self, a: &[Rational; 3]) -> [Rational; NVARS] {
        std::array::from_fn(|i| match i / 3 {
            0 => self.x[i].clone(),
            1 => self.m[i - 3].clone(),
            _ => a[i - 6].clone(),
        })
    }

    pub fn to_f64(&self) -> ([f64; 3], [f64; 3]) {
        use num_traits::ToPrimitive;
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        (self.x.each_ref().map(f), self.m.each_ref().map(f))
    }
}

/// Rational with numerator in `[-100, 100]` and denominator in `[1, 100]`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-100i64..=100).into(), rng.gen_range(1i64..=100).into())
}

pub fn sample_point_with<R: Rng>(rng: &mut R) -> ConstrainedPoint {
    let p = random_rational(rng);
    let q = random_rational(rng);
    let w = std::array::from_fn(|_| random_rational(rng));
    ConstrainedPoint::from_stereographic(&p, &q, &w)
}

/// Three pairwise distinct random rationals.
pub fn sample_distinct_params<R: Rng>(rng: &mut R) -> [Rational; 3] {
    loop {
        let a: [Rational; 3] = std::array::from_fn(|_| random_rational(rng));
        if a[0] != a[1] && a[1] != a[2] && a[0] != a[2] {
            return a;
        }
    }
}

/// Random polynomial in `X` and `M` with up to `terms` monomials of total
/// degree at most `max_degree` and small rational coefficients.
pub fn random_polynomial<R: Rng>(rng: &mut R, max_degree: u32, terms: usize) -> Polynomial {
    let phase_vars = [Var::X1, Var::X2, Var::X3, Var::M1, Var::M2, Var::M3];
    Polynomial::from_terms((0..terms).map(|_| {
        let degree = rng.gen_range(0..=max_degree);
        let mut m = Monomial::ONE;
        for _ in 0..degree {
            let v = phase_vars[rng.gen_range(0..phase_vars.len())];
            m.set_exponent(v, m.exponent(v) + 1);
        }
        (m, random_rational(rng))
    }))
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn sample_constrained_point(seed: u64) -> ConstrainedPoint {
    sample_point_with(&mut rng_for(seed, 0))
}

/// Right-hand side of the master identity for `{H_2, I_2}`:
///
/// ```text
/// -4 S(X) C2 + 4 (1 - C1) [a1^2 (a2 - a3) X2 X3 M1 + cyclic]
/// ```
pub fn fin_rhs(params: &Params) -> Polynomial {
    let s_term = (&s_of_x(params) * &casimir_c2()).scale_int(-4);
    let bracket: Polynomial = Axis::ALL
        .iter()
        .map(|&i| {
            let (j, k) = i.cyclic();
            let coeff = &params.a(i).pow(2) * &(&params.a(j) - &params.a(k));
            &coeff * &(&(&Polynomial::x(j) * &Polynomial::x(k)) * &Polynomial::m(i))
        })
        .sum();
    let one_minus_c1 = &Polynomial::one() - &casimir_c1();
    &s_term + &(&one_minus_c1 * &bracket).scale_int(4)
}

/// `{H_2, I_2}` minus the master-identity right-hand side must vanish.
pub fn verify_fin_identity(params: &Params) -> Result<(), VerifyError> {
    let sys = build_system(2, params)?;
    let lhs = poisson_bracket(&sys.h, &sys.i);
    require_zero("{H_2, I_2} master identity", Some(2), &lhs - &fin_rhs(params))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommutationMode {
    Symbolic,
    Points,
}

/// `{H_n, I_n}` with symbolic parameters.
pub fn system_bracket(sys: &IntegrableSystem) -> Polynomial {
    poisson_bracket(&sys.h, &sys.i)
}

/// Residual of `{H_n, I_n} - dV V_{n-1} {H_2, I_2}` (for `n = 1`, just `{H_1, I_1}`).
pub fn int1_residual(n: u32, params: &Params) -> Result<Polynomial, VerifyError> {
    let sys = build_system(n, params)?;
    let lhs = system_bracket(&sys);
    if n == 1 {
        return Ok(lhs);
    }
    let h2i2 = system_bracket(&build_system(2, params)?);
    let factor = expand_uv(&commutator_prefactor(n)?, params);
    Ok(&lhs - &(&factor * &h2i2))
}

/// Checks that `{H_n, I_n}` vanishes on the orbit.
///
/// Symbolic mode proves it for symbolic `a`: the bracket factors through
/// `{H_2, I_2}` (exact polynomial identity) and `{H_2, I_2}` lies in the ideal
/// generated by `C2` and `1 - C1`. Points mode evaluates the bracket exactly at
/// `count` rational orbit points, each with fresh distinct rational `a`.
pub fn verify_commutation(n: u32, mode: CommutationMode, count: usize, seed: u64) -> Result<(), VerifyError> {
    verify_commutation_with(n, mode, count, seed, Execution::default())
}

pub fn verify_commutation_with(
    n: u32,
    mode: CommutationMode,
    count: usize,
    seed: u64,
    exec: Execution,
) -> Result<(), VerifyError> {
    if n == 0 {
        return Err(VerifyError::InvalidArgument("n must be at least 1".into()));
    }
    match mode {
        CommutationMode::Symbolic => {
            let params = Params::Symbolic;
            let name = if n == 1 {
                "{H_1, I_1} = 0"
            } else {
                "{H_n, I_n} = dV V_{n-1} {H_2, I_2}"
            };
            require_zero(name, Some(n), int1_residual(n, &params)?)?;
            if n >= 2 {
                verify_fin_identity(&params)?;
            }
            Ok(())
        }
        CommutationMode::Points => {
            let results = par::map_range(count, exec, |idx| check_point(n, seed, idx));
            par::first_error(results)
        }
    }
}

/// Draws `(a, point)` for sample `idx` and requires `{H_n, I_n}` to vanish there.
pub fn check_point(n: u32, seed: u64, idx: usize) -> Result<(), VerifyError> {
    let mut rng = rng_for(seed, idx as u64 + 1);
    let a = sample_distinct_params(&mut rng);
    let point = sample_point_with(&mut rng);
    let sys = build_system(n, &Params::Numeric(a.clone()))?;
    let value = system_bracket(&sys).evaluate(&point.assignment(&a));
    if value.is_zero() {
        Ok(())
    } else {
        Err(VerifyError::Point {
            identity: "{H_n, I_n} at an orbit point".into(),
            n,
            index: idx,
            point: Box::new(point),
            params: Box::new(a),
            value: Box::new(value),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use crate::potentials::kinetic_h;
    use crate::potentials::kinetic_i;

    fn gens() -> Vec<(Polynomial, &'static str)> {
        Axis::ALL
            .iter()
            .map(|&i| (Polynomial::m(i), "M"))
            .chain(Axis::ALL.iter().map(|&i| (Polynomial::x(i), "X")))
            .collect()
    }

    #[test]
    fn generator_examples() {
        let (m1, m2, m3) = (
            Polynomial::m(Axis::One),
            Polynomial::m(Axis::Two),
            Polynomial::m(Axis::Three),
        );
        assert_eq!(poisson_bracket(&m1, &m2), m3);
        assert!(poisson_bracket(&Polynomial::x(Axis::One), &Polynomial::x(Axis::Two)).is_zero());
        assert_eq!(
            poisson_bracket(&m1, &Polynomial::x(Axis::Two)),
            Polynomial::x(Axis::Three)
        );
    }

    #[test]
    fn generator_table_is_antisymmetric() {
        let g = gens();
        for (f, _) in &g {
            for (h, _) in &g {
                assert!((poisson_bracket(f, h) + poisson_bracket(h, f)).is_zero());
            }
        }
        assert_eq!(g.len() * g.len(), 36);
    }

    #[test]
    fn casimirs() {
        let c1 = casimir_c1();
        let c2 = casimir_c2();
        assert!(poisson_bracket(&c1, &Polynomial::m(Axis::One)).is_zero());
        assert!(poisson_bracket(&c2, &Polynomial::x(Axis::Two)).is_zero());
        let h = &kinetic_h(&Params::Symbolic) + &neumann_u(&Params::Symbolic);
        assert!(poisson_bracket(&c2, &h).is_zero());
    }

    #[test]
    fn hat_l_examples() {
        let p = Params::Symbolic;
        let v = neumann_v(&p);
        let x2x3 = &Polynomial::x(Axis::Two) * &Polynomial::x(Axis::Three);
        let expected = (&(&Polynomial::a(Axis::Two) - &Polynomial::a(Axis::Three)) * &x2x3).scale_int(2);
        assert_eq!(hat_l(Axis::One, &v), expected);
        assert_eq!(
            hat_l(Axis::One, &neumann_u(&p)),
            &Polynomial::a(Axis::One) * &hat_l(Axis::One, &v)
        );
        for i in Axis::ALL {
            assert!(hat_l(i, &casimir_c1()).is_zero());
        }
        assert_eq!(hat_l(Axis::One, &Polynomial::x(Axis::Two)), -Polynomial::x(Axis::Three));
    }

    #[test]
    fn m_bracket_is_minus_hat_l() {
        let f = &Polynomial::x(Axis::One).pow(2) * &Polynomial::x(Axis::Two)
            + Polynomial::x(Axis::Three).pow(3).scale_int(5);
        for i in Axis::ALL {
            assert_eq!(poisson_bracket(&Polynomial::m(i), &f), -hat_l(i, &f));
        }
    }

    #[test]
    fn kinetic_flow_is_rotation() {
        let vf = hamiltonian_vector_field(&kinetic_i());
        for i in Axis::ALL {
            let (j, k) = i.cyclic();
            let cross = &(&Polynomial::x(j) * &Polynomial::m(k)) - &(&Polynomial::x(k) * &Polynomial::m(j));
            assert_eq!(vf.xdot[i.index()], cross.scale_int(2));
            assert!(vf.mdot[i.index()].is_zero());
        }
        assert!(hamiltonian_vector_field(&casimir_c1()).is_zero());
    }

    #[test]
    fn neumann_field_matches_componentwise_brackets() {
        let p = Params::Symbolic;
        let h = &kinetic_h(&p) + &neumann_u(&p);
        let vf = hamiltonian_vector_field(&h);
        // mdot_1 = {H2, M1} + {U, M1} = {H2, M1} + L_1 U
        let kinetic = poisson_bracket(&kinetic_h(&p), &Polynomial::m(Axis::One));
        assert_eq!(vf.mdot[0], &kinetic + &hat_l(Axis::One, &neumann_u(&p)));
    }

    #[test]
    fn rotation_route_matches_bracket() {
        let p = Params::Symbolic;
        // any X-only potentials, here the n = 2 pair and an arbitrary cubic
        let cubic = &Polynomial::x(Axis::One).pow(3) + &(&Polynomial::x(Axis::Two) * &Polynomial::x(Axis::Three));
        for (u, v) in [
            (neumann_u(&p), neumann_v(&p)),
            (&neumann_u(&p) * &neumann_v(&p), &neumann_v(&p).pow(2) - &neumann_u(&p)),
            (cubic.clone(), cubic.scale_int(3) + Polynomial::x(Axis::Two)),
        ] {
            let direct = poisson_bracket(&(&kinetic_h(&p) + &u), &(&kinetic_i() + &v));
            assert_eq!(direct, bracket_via_rotations(&u, &v, &p));
        }
    }

    #[test]
    fn partner_integral_side() {
        let p = Params::Symbolic;
        let norm = &Polynomial::a(Axis::Two) + &Polynomial::a(Axis::Three);
        let partner = derive_quadratic_partner(PartnerUnknown::Integral, &norm).unwrap();
        assert_eq!(partner.potential(), neumann_v(&p));
        assert!(partner.relation_sum().is_zero());
        assert_eq!(
            partner.differences[0],
            &Polynomial::a(Axis::Three) - &Polynomial::a(Axis::Two)
        );
    }

    #[test]
    fn partner_hamiltonian_side() {
        let p = Params::Symbolic;
        let (a1, a2, a3) = (
            Polynomial::a(Axis::One),
            Polynomial::a(Axis::Two),
            Polynomial::a(Axis::Three),
        );
        let partner = derive_quadratic_partner(PartnerUnknown::Hamiltonian, &(&a2 * &a3)).unwrap();
        assert_eq!(partner.potential(), neumann_u(&p));
        assert_eq!(partner.differences[0], -(&a1 * &(&a2 - &a3)));
        assert_eq!(partner.differences[1], -(&a2 * &(&a3 - &a1)));
        assert_eq!(partner.differences[2], -(&a3 * &(&a1 - &a2)));
        assert!(partner.relation_sum().is_zero());
    }

    #[test]
    fn partner_up_to_casimir() {
        // Any normalization works; the family differs by multiples of C1.
        let norm = Polynomial::a(Axis::One).scale_int(7);
        let base = Polynomial::a(Axis::Two) + Polynomial::a(Axis::Three);
        let a = derive_quadratic_partner(PartnerUnknown::Integral, &norm).unwrap();
        let b = derive_quadratic_partner(PartnerUnknown::Integral, &base).unwrap();
        assert_eq!(&a.potential() - &b.potential(), &(&norm - &base) * &casimir_c1());
    }

    #[test]
    fn stereographic_points() {
        let z = int(0);
        let w = [int(1), int(2), int(3)];
        let pole = ConstrainedPoint::from_stereographic(&z, &z, &w);
        assert_eq!(pole.x, [int(0), int(0), int(1)]);
        let e1 = ConstrainedPoint::from_stereographic(&int(1), &z, &w);
        assert_eq!(e1.x, [int(1), int(0), int(0)]);
        for seed in 0..20 {
            let pt = sample_constrained_point(seed);
            assert_eq!(pt.c1(), int(1));
            assert!(pt.c2().is_zero());
        }
        let q = ConstrainedPoint::from_stereographic(&rat(1, 3), &rat(-2, 7), &w);
        assert_eq!(q.c1(), int(1));
    }

    #[test]
    fn fin_identity_symbolic_and_numeric() {
        verify_fin_identity(&Params::Symbolic).unwrap();
        verify_fin_identity(&Params::ints(1, 2, 3)).unwrap();
        let equal = Params::ints(2, 2, 2);
        assert!(fin_rhs(&equal).is_zero());
        assert!(system_bracket(&build_system(2, &equal).unwrap()).is_zero());
    }

    #[test]
    fn commutation_small_n() {
        verify_commutation(1, CommutationMode::Symbolic, 0, 0).unwrap();
        verify_commutation(2, CommutationMode::Symbolic, 0, 0).unwrap();
        verify_commutation(3, CommutationMode::Points, 10, 11).unwrap();
        assert!(verify_commutation(0, CommutationMode::Symbolic, 0, 0).is_err());
    }

    #[test]
    fn bracket_is_nonzero_off_the_orbit() {
        // Negative control: with C2 != 0 the n = 2 bracket does not vanish.
        let a = [int(1), int(2), int(3)];
        let sys = build_system(2, &Params::Numeric(a.clone())).unwrap();
        let mut off = ConstrainedPoint::from_stereographic(&rat(1, 2), &rat(1, 3), &[int(1), int(0), int(0)]);
        off.m = [int(1), int(1), int(1)];
        assert!(!off.c2().is_zero());
        assert!(!system_bracket(&sys).evaluate(&off.assignment(&a)).is_zero());
    }
}
