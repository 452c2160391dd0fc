use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Polynomial, Rational};

/// Exact polynomial in two abstract variables `U` and `V`.
///
/// Keys are `(deg_U, deg_V)`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UvPolynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl UvPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(0, 0, Rational::one())
    }

    pub fn u() -> Self {
        Self::term(1, 0, Rational::one())
    }

    pub fn v() -> Self {
        Self::term(0, 1, Rational::one())
    }

    pub fn term(deg_u: u32, deg_v: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_u, deg_v), c);
        }
        Self { terms }
    }

    pub fn int_term(deg_u: u32, deg_v: u32, c: i64) -> Self {
        Self::term(deg_u, deg_v, Rational::from_integer(c.into()))
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(iter: I) -> Self {
        let mut terms: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (k, c) in iter {
            *terms.entry(k).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, deg_u: u32, deg_v: u32) -> Rational {
        self.terms.get(&(deg_u, deg_v)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, x)| (*k, x * c)))
    }

    pub fn partial_u(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((du, _), _)| *du > 0)
                .map(|(&(du, dv), c)| ((du - 1, dv), c * Rational::from_integer(BigInt::from(du)))),
        )
    }

    pub fn partial_v(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, dv), _)| *dv > 0)
                .map(|(&(du, dv), c)| ((du, dv - 1), c * Rational::from_integer(BigInt::from(dv)))),
        )
    }

    /// Evaluates the abstract polynomial at concrete `U = u`, `V = v`.
    pub fn eval_at(&self, u: &Polynomial, v: &Polynomial) -> Polynomial {
        let max_u = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let max_v = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let mut u_pows = vec![Polynomial::one()];
        for k in 1..=max_u {
            let next = &u_pows[k - 1] * u;
            u_pows.push(next);
        }
        let mut v_pows = vec![Polynomial::one()];
        for k in 1..=max_v {
            let next = &v_pows[k - 1] * v;
            v_pows.push(next);
        }
        let mut out = Polynomial::zero();
        for (&(du, dv), c) in &self.terms {
            let term = (&u_pows[du as usize] * &v_pows[dv as usize]).scale(c);
            out += &term;
        }
        out
    }
}

impl fmt::Display for UvPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Highest V power first, the way the closed forms are usually written.
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|a, b| (b.0 .1, a.0 .0).cmp(&(a.0 .1, b.0 .0)));
        for (idx, (&(du, dv), c)) in keys.into_iter().enumerate() {
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || (du == 0 && dv == 0) {
                factors.push(abs.to_string());
            }
            match du {
                0 => {}
                1 => factors.push("U".into()),
                e => factors.push(format!("U^{e}")),
            }
            match dv {
                0 => {}
                1 => factors.push("V".into()),
                e => factors.push(format!("V^{e}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add<&UvPolynomial> for &UvPolynomial {
    type Output = UvPolynomial;
    fn add(self, rhs: &UvPolynomial) -> UvPolynomial {
        UvPolynomial::from_terms(self.terms.iter().chain(rhs.terms.iter()).map(|(k, c)| (*k, c.clone())))
    }
}

impl Sub<&UvPolynomial> for &UvPolynomial {
    type Output = UvPolynomial;
    fn sub(self, rhs: &UvPolynomial) -> UvPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &UvPolynomial {
    type Output = UvPolynomial;
    fn neg(self) -> UvPolynomial {
        UvPolynomial {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Mul<&UvPolynomial> for &UvPolynomial {
    type Output = UvPolynomial;
    fn mul(self, rhs: &UvPolynomial) -> UvPolynomial {
        let mut acc: HashMap<(u32, u32), Rational> = HashMap::new();
        for (&(au, av), ca) in &self.terms {
            for (&(bu, bv), cb) in &rhs.terms {
                *acc.entry((au + bu, av + bv)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        UvPolynomial::from_terms(acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<UvPolynomial> for UvPolynomial {
            type Output = UvPolynomial;
            fn $method(self, rhs: UvPolynomial) -> UvPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&UvPolynomial> for UvPolynomial {
            type Output = UvPolynomial;
            fn $method(self, rhs: &UvPolynomial) -> UvPolynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
