use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::{Axis, Monomial, Var, NVARS};
use super::{ParseError, Rational};

/// Sparse multivariate polynomial with exact rational coefficients over the
/// nine fixed variables.
///
/// The term map never stores a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<TermRecord>", try_from = "Vec<TermRecord>")]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

/// Wire form of a single term: `{exponents: [9 ints], num: "..", den: ".."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: [u16; NVARS],
    pub num: String,
    pub den: String,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn x(axis: Axis) -> Self {
        Self::var(Var::x(axis))
    }

    pub fn m(axis: Axis) -> Self {
        Self::var(Var::m(axis))
    }

    pub fn a(axis: Axis) -> Self {
        Self::var(Var::a(axis))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in iter {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_accumulator(acc)
    }

    fn from_accumulator(acc: HashMap<Monomial, Rational>) -> Self {
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.x_degree()).max().unwrap_or(0)
    }

    pub fn param_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.param_degree()).max().unwrap_or(0)
    }

    /// True iff every term avoids the variables rejected by `allowed`.
    pub fn only_uses(&self, allowed: impl Fn(Var) -> bool) -> bool {
        self.terms.keys().all(|m| m.support().all(|(v, _)| allowed(v)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&Rational::from_integer(c.into()))
    }

    /// Multiplies by a single monomial.
    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative in `v`.
    pub fn partial(&self, v: Var) -> Self {
        let i = v.index();
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[i] > 0)
                .map(|(m, c)| {
                    let e = m.0[i];
                    let mut d = *m;
                    d.0[i] = e - 1;
                    (d, c * Rational::from_integer(BigInt::from(e)))
                })
                .collect(),
        }
    }

    /// `self / v` when every term is divisible by `v`.
    pub fn div_var_exact(&self, v: Var) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.div_var(v)?, c.clone());
        }
        Some(Self { terms })
    }

    /// Simultaneous substitution of each bound variable by a polynomial.
    pub fn substitute(&self, bindings: &[(Var, Polynomial)]) -> Self {
        let mut bound: [Option<&Polynomial>; NVARS] = [None; NVARS];
        for (v, p) in bindings {
            bound[v.index()] = Some(p);
        }
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut free = *m;
            let mut factor = Polynomial::one();
            for (i, slot) in bound.iter().enumerate() {
                let e = m.0[i];
                if let (Some(p), true) = (slot, e > 0) {
                    free.0[i] = 0;
                    let pe = powers.entry((i, e)).or_insert_with(|| p.pow(e as u32));
                    factor = &factor * &*pe;
                }
            }
            for (fm, fc) in factor.terms {
                *acc.entry(fm.mul(&free)).or_insert_with(Rational::zero) += fc * c;
            }
        }
        Self::from_accumulator(acc)
    }

    /// Exact evaluation with one value per variable (indexed like [`Var::ALL`]).
    pub fn evaluate(&self, values: &[Rational; NVARS]) -> Rational {
        let mut max_exp = [0u16; NVARS];
        for m in self.terms.keys() {
            for (mx, &e) in max_exp.iter_mut().zip(m.0.iter()) {
                *mx = (*mx).max(e);
            }
        }
        let tables: Vec<Vec<Rational>> = values
            .iter()
            .zip(max_exp.iter())
            .map(|(v, &mx)| {
                let mut t = Vec::with_capacity(mx as usize + 1);
                t.push(Rational::one());
                for k in 1..=mx as usize {
                    let next = &t[k - 1] * v;
                    t.push(next);
                }
                t
            })
            .collect();
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term *= &tables[i][e as usize];
                }
            }
            sum += term;
        }
        sum
    }

    /// Canonical representative modulo `X1^2 + X2^2 + X3^2 - 1`: every `X3^2`
    /// is replaced by `1 - X1^2 - X2^2`, leaving X3-degree at most one.
    pub fn reduce_mod_sphere(&self) -> Self {
        let x3 = Var::X3.index();
        if self.terms.keys().all(|m| m.0[x3] < 2) {
            return self.clone();
        }
        let s = Polynomial::one() - Polynomial::var(Var::X1).pow(2) - Polynomial::var(Var::X2).pow(2);
        let mut s_pows: Vec<Polynomial> = vec![Polynomial::one()];
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.0[x3];
            if e < 2 {
                *acc.entry(*m).or_insert_with(Rational::zero) += c;
                continue;
            }
            let k = (e / 2) as usize;
            while s_pows.len() <= k {
                let next = s_pows.last().unwrap() * &s;
                s_pows.push(next);
            }
            let mut rest = *m;
            rest.0[x3] = e % 2;
            for (sm, sc) in s_pows[k].terms() {
                *acc.entry(sm.mul(&rest)).or_insert_with(Rational::zero) += sc * c;
            }
        }
        Self::from_accumulator(acc)
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(m, c)| TermRecord {
                exponents: m.0,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Self, ParseError> {
        let mut terms = Vec::with_capacity(records.len());
        for r in records {
            let num: BigInt = r.num.parse().map_err(|_| ParseError::Integer(r.num.clone()))?;
            let den: BigInt = r.den.parse().map_err(|_| ParseError::Integer(r.den.clone()))?;
            if den.is_zero() {
                return Err(ParseError::ZeroDenominator);
            }
            terms.push((Monomial(r.exponents), Rational::new(num, den)));
        }
        Ok(Self::from_terms(terms))
    }
}

impl From<Polynomial> for Vec<TermRecord> {
    fn from(p: Polynomial) -> Self {
        p.to_records()
    }
}

impl TryFrom<Vec<TermRecord>> for Polynomial {
    type Error = ParseError;

    fn try_from(records: Vec<TermRecord>) -> Result<Self, Self::Error> {
        Polynomial::from_records(&records)
    }
}

impl fmt::Display for Polynomial {
    /// Descending graded-lex order, e.g. `2*X1^2*a1 - 1/3*M2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

fn add_into(terms: &mut BTreeMap<Monomial, Rational>, other: &Polynomial, sign: bool) {
    for (m, c) in &other.terms {
        match terms.get_mut(m) {
            Some(x) => {
                if sign {
                    *x += c;
                } else {
                    *x -= c;
                }
                if x.is_zero() {
                    terms.remove(m);
                }
            }
            None => {
                terms.insert(*m, if sign { c.clone() } else { -c.clone() });
            }
        }
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        add_into(&mut self.terms, rhs, true);
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        add_into(&mut self.terms, rhs, false);
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let (small, large) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(large.len() * 2);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                let prod = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += prod,
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        Polynomial::from_accumulator(acc)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::replace(c, Rational::zero());
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        let mut acc = Polynomial::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}
