use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of variables in the fixed polynomial universe.
pub const NVARS: usize = 9;

/// Spatial axis index, 1-based in display.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    One,
    Two,
    Three,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::One, Axis::Two, Axis::Three];

    /// 0-based index.
    pub fn index(self) -> usize {
        match self {
            Axis::One => 0,
            Axis::Two => 1,
            Axis::Three => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Axis> {
        Axis::ALL.get(i).copied()
    }

    /// Parses the 1-based label used throughout the formulas (1, 2, 3).
    pub fn from_label(i: usize) -> Option<Axis> {
        i.checked_sub(1).and_then(Axis::from_index)
    }

    /// The cyclic successors `(j, k)` such that `(self, j, k)` is an even permutation.
    pub fn cyclic(self) -> (Axis, Axis) {
        match self {
            Axis::One => (Axis::Two, Axis::Three),
            Axis::Two => (Axis::Three, Axis::One),
            Axis::Three => (Axis::One, Axis::Two),
        }
    }
}

/// Levi-Civita symbol on axis triples.
pub fn levi_civita(i: Axis, j: Axis, k: Axis) -> i32 {
    let (i, j, k) = (i.index() as i32, j.index() as i32, k.index() as i32);
    (i - j) * (j - k) * (k - i) / 2
}

/// The nine ring variables, in the order used by exponent vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X1,
    X2,
    X3,
    M1,
    M2,
    M3,
    A1,
    A2,
    A3,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::X1,
        Var::X2,
        Var::X3,
        Var::M1,
        Var::M2,
        Var::M3,
        Var::A1,
        Var::A2,
        Var::A3,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn x(axis: Axis) -> Var {
        Var::ALL[axis.index()]
    }

    pub fn m(axis: Axis) -> Var {
        Var::ALL[3 + axis.index()]
    }

    pub fn a(axis: Axis) -> Var {
        Var::ALL[6 + axis.index()]
    }

    pub fn name(self) -> &'static str {
        ["X1", "X2", "X3", "M1", "M2", "M3", "a1", "a2", "a3"][self.index()]
    }

    pub fn is_x(self) -> bool {
        self.index() < 3
    }

    pub fn is_m(self) -> bool {
        (3..6).contains(&self.index())
    }

    pub fn is_param(self) -> bool {
        self.index() >= 6
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over `(X1, X2, X3, M1, M2, M3, a1, a2, a3)`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors compared left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> Monomial {
        let mut m = Monomial::ONE;
        m.0[v.index()] = e;
        m
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn set_exponent(&mut self, v: Var, e: u16) {
        self.0[v.index()] = e;
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Joint degree in `X1, X2, X3`.
    pub fn x_degree(&self) -> u32 {
        self.0[..3].iter().map(|&e| e as u32).sum()
    }

    pub fn m_degree(&self) -> u32 {
        self.0[3..6].iter().map(|&e| e as u32).sum()
    }

    /// Joint degree in the parameters `a1, a2, a3`.
    pub fn param_degree(&self) -> u32 {
        self.0[6..].iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NVARS];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = a + b;
        }
        Monomial(out)
    }

    /// `self / v`, or `None` when `v` does not divide.
    pub fn div_var(&self, v: Var) -> Option<Monomial> {
        let e = self.0[v.index()];
        (e > 0).then(|| {
            let mut m = *self;
            m.0[v.index()] = e - 1;
            m
        })
    }

    /// Variables with non-zero exponent.
    pub fn support(&self) -> impl Iterator<Item = (Var, u16)> + '_ {
        Var::ALL
            .iter()
            .zip(self.0.iter())
            .filter(|(_, &e)| e > 0)
            .map(|(&v, &e)| (v, e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.support() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let x1 = Monomial::var(Var::X1);
        let x2sq = Monomial::var_pow(Var::X2, 2);
        let x1x3 = Monomial::var(Var::X1).mul(&Monomial::var(Var::X3));
        assert!(x1 < x2sq);
        assert!(x2sq < x1x3);
        assert!(Monomial::ONE < x1);
    }

    #[test]
    fn levi_civita_signs() {
        use Axis::*;
        assert_eq!(levi_civita(One, Two, Three), 1);
        assert_eq!(levi_civita(Two, Three, One), 1);
        assert_eq!(levi_civita(Two, One, Three), -1);
        assert_eq!(levi_civita(One, One, Three), 0);
    }

    #[test]
    fn display() {
        let m = Monomial::var_pow(Var::X1, 2).mul(&Monomial::var(Var::A3));
        assert_eq!(m.to_string(), "X1^2*a3");
    }
}
