use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational};

/// Sparse exact-rational polynomial over `{x, eta, t, dt}`.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Rational::one(), m)
    }

    pub fn x() -> Self {
        Self::monomial(Monomial::x_pow(1))
    }

    pub fn eta() -> Self {
        Self::monomial(Monomial::new(0, true, 0, false))
    }

    pub fn t() -> Self {
        Self::monomial(Monomial::new(0, false, 1, false))
    }

    pub fn dt() -> Self {
        Self::monomial(Monomial::new(0, false, 0, true))
    }

    pub fn x_pow(n: u32) -> Self {
        Self::monomial(Monomial::x_pow(n))
    }

    /// Polynomial in `x` from ascending coefficients.
    pub fn from_x_coeffs<I: IntoIterator<Item = Rational>>(coeffs: I) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            p.add_term(Monomial::x_pow(i as u32), c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::ONE)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GradedPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn map_monomials<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&Monomial, &Rational) -> GradedPoly,
    {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out += f(m, c);
        }
        out
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<i32, GradedPoly> {
        let mut parts: BTreeMap<i32, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.degree()).or_default().add_term(*m, c.clone());
        }
        parts
    }

    /// The common degree of all terms, or `None` for zero and mixed-degree
    /// polynomials.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// True when only `x` occurs.
    pub fn is_x_only(&self) -> bool {
        self.terms.keys().all(|m| !m.eta && !m.dt && m.t == 0)
    }

    /// True when `t` and `dt` do not occur.
    pub fn is_in_v(&self) -> bool {
        self.terms.keys().all(|m| !m.dt && m.t == 0)
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    /// Coefficients of `x^i` for an `x`-only polynomial, ascending, of length
    /// `len` (higher terms must not exist).
    pub fn x_coeffs(&self, len: usize) -> Option<Vec<Rational>> {
        let mut out = vec![Rational::zero(); len];
        for (m, c) in &self.terms {
            if m.eta || m.dt || m.t != 0 || m.x as usize >= len {
                return None;
            }
            out[m.x as usize] = c.clone();
        }
        Some(out)
    }

    /// The coefficient of `eta` as a polynomial: `q` in `p + q*eta`, keeping
    /// `t`/`dt` factors.
    pub fn eta_part(&self) -> GradedPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.eta {
                out.add_term(Monomial { eta: false, ..*m }, c.clone());
            }
        }
        out
    }

    /// The part without `eta`.
    pub fn eta_free_part(&self) -> GradedPoly {
        GradedPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.eta)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn d_dx(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.x > 0 {
                out.add_term(Monomial { x: m.x - 1, ..*m }, c * Rational::from_integer(m.x.into()));
            }
        }
        out
    }

    pub fn d_dt(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.t > 0 {
                out.add_term(Monomial { t: m.t - 1, ..*m }, c * Rational::from_integer(m.t.into()));
            }
        }
        out
    }

    /// Sets `t = c` and `dt = 0`.
    pub fn eval_t(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            if m.dt {
                continue;
            }
            let mut coeff = a.clone();
            for _ in 0..m.t {
                coeff *= c;
            }
            out.add_term(Monomial { t: 0, ..*m }, coeff);
        }
        out
    }

    /// Canonical text form. Terms are printed from the top of the monomial
    /// order down; the output re-parses to the same polynomial.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
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

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly({self})")
    }
}

impl From<Rational> for GradedPoly {
    fn from(c: Rational) -> Self {
        GradedPoly::constant(c)
    }
}

impl AddAssign<&GradedPoly> for GradedPoly {
    fn add_assign(&mut self, rhs: &GradedPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign for GradedPoly {
    fn add_assign(&mut self, rhs: GradedPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&GradedPoly> for GradedPoly {
    fn sub_assign(&mut self, rhs: &GradedPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for GradedPoly {
    type Output = GradedPoly;
    fn add(mut self, rhs: GradedPoly) -> GradedPoly {
        self += rhs;
        self
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for GradedPoly {
    type Output = GradedPoly;
    fn sub(mut self, rhs: GradedPoly) -> GradedPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -&self
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }
}

impl Mul for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: GradedPoly) -> GradedPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_poly};

    fn p(s: &str) -> GradedPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn eta_squares_to_zero() {
        assert!((&GradedPoly::eta() * &GradedPoly::eta()).is_zero());
    }

    #[test]
    fn x_and_eta_commute() {
        let x = GradedPoly::x();
        let eta = GradedPoly::eta();
        assert_eq!(&x * &eta, &eta * &x);
        assert_eq!((&x * &eta).to_string(), "x*eta");
    }

    #[test]
    fn square_of_linear_homotopy() {
        let lam = p("x - 2*t*x - 2*eta*dt");
        let expected = p("x^2*(1 - 2*t)^2 - 4*x*(1 - 2*t)*eta*dt");
        assert_eq!(&lam * &lam, expected);
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x^3").d_dx(), p("3*x^2"));
        assert!(p("5").d_dx().is_zero());
        assert_eq!(p("x^2*eta").d_dx(), p("2*x*eta"));
        assert_eq!(p("t^2*x").d_dt(), p("2*t*x"));
    }

    #[test]
    fn endpoint_evaluation() {
        let path = p("x + t*(-2*x) - 2*eta*dt");
        assert_eq!(path.eval_t(&int(0)), p("x"));
        assert_eq!(path.eval_t(&int(1)), p("-x"));
    }

    #[test]
    fn printer_is_descending() {
        assert_eq!(p("-1 + x^2").to_string(), "x^2 - 1");
        assert_eq!(p("x*eta*(-1/2)").to_string(), "-1/2*x*eta");
        assert_eq!(GradedPoly::zero().to_string(), "0");
    }

    #[test]
    fn homogeneous_parts_split_by_degree() {
        let v = p("x^2 + 3*eta + x*eta*dt + dt");
        let parts = v.homogeneous_parts();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[&-1], p("3*eta"));
        assert_eq!(parts[&0], p("x^2 + x*eta*dt"));
        assert_eq!(parts[&1], p("dt"));
        assert_eq!(v.homogeneous_degree(), None);
        assert_eq!(p("x*eta").homogeneous_degree(), Some(-1));
    }
}
