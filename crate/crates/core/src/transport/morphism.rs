use std::fmt;
use std::sync::Arc;

use super::partitions::{SetPartitions, MAX_PARTITION_SIZE};
use super::sym::{Basis, SymTensor};
use crate::algebra::{factorial, GradedPoly, Monomial, Rational};
use crate::chain::{LinearOperator, ProbabilitySpace};
use crate::error::{Error, Result};

type ComponentFn<B> = dyn Fn(&[B]) -> GradedPoly + Send + Sync;

/// A coalgebra morphism `SU -> SV`, stored by its components
/// `F_n : S^n U -> V`. Components are evaluated on basis factors; the
/// induced map on words sums over set partitions.
pub struct CoalgMorphism<B> {
    name: String,
    component: Arc<ComponentFn<B>>,
    // components above this arity vanish
    top_arity: Option<usize>,
}

impl<B> Clone for CoalgMorphism<B> {
    fn clone(&self) -> Self {
        CoalgMorphism {
            name: self.name.clone(),
            component: Arc::clone(&self.component),
            top_arity: self.top_arity,
        }
    }
}

impl<B> fmt::Debug for CoalgMorphism<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoalgMorphism({})", self.name)
    }
}

/// `(-1)^{k-1} (k-1)!`, the coefficient of a `k`-block partition in the
/// inverse of the cumulant map.
pub fn inverse_coefficient(k: usize) -> Rational {
    let c = Rational::from_integer(factorial(k as u64 - 1));
    if k.is_multiple_of(2) {
        -c
    } else {
        c
    }
}

impl<B: Basis + Send + Sync + 'static> CoalgMorphism<B> {
    pub fn new<F>(name: impl Into<String>, top_arity: Option<usize>, component: F) -> Self
    where
        F: Fn(&[B]) -> GradedPoly + Send + Sync + 'static,
    {
        CoalgMorphism {
            name: name.into(),
            component: Arc::new(component),
            top_arity,
        }
    }

    /// A morphism with only a linear component.
    pub fn linear<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&B) -> GradedPoly + Send + Sync + 'static,
    {
        Self::new(name, Some(1), move |args: &[B]| f(&args[0]))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn top_arity(&self) -> Option<usize> {
        self.top_arity
    }

    /// `F_n(args)`; zero above the top arity.
    pub fn component(&self, args: &[B]) -> GradedPoly {
        match self.top_arity {
            Some(top) if args.len() > top => GradedPoly::zero(),
            _ if args.is_empty() => GradedPoly::zero(),
            _ => (self.component)(args),
        }
    }

    fn check_arity(&self, n: usize) -> Result<()> {
        if n > MAX_PARTITION_SIZE {
            return Err(Error::ArityOutOfRange {
                what: "coalgebra morphism word",
                got: n,
                min: 1,
                max: MAX_PARTITION_SIZE,
            });
        }
        Ok(())
    }

    /// The induced coalgebra map:
    /// `F(a_1...a_n) = sum_pi (+-) F(a_B1) . ... . F(a_Bk)`.
    pub fn apply(&self, t: &SymTensor<B>) -> Result<SymTensor<Monomial>> {
        let mut out = SymTensor::zero();
        for (word, c) in t.terms() {
            let n = word.len();
            self.check_arity(n)?;
            if n == 0 {
                continue;
            }
            let parities = word.parities();
            let factors = word.factors();
            if self.top_arity == Some(1) {
                let values: Vec<GradedPoly> = factors
                    .iter()
                    .map(|f| self.component(std::slice::from_ref(f)))
                    .collect();
                if values.iter().all(|v| !v.is_zero()) {
                    out.add_scaled(&SymTensor::from_polys(&values), c);
                }
                continue;
            }
            for pi in SetPartitions::new(n) {
                if let Some(top) = self.top_arity {
                    if pi.blocks().iter().any(|b| b.len() > top) {
                        continue;
                    }
                }
                let mut values = Vec::with_capacity(pi.len());
                for block in pi.blocks() {
                    let args: Vec<B> = block.iter().map(|&i| factors[i].clone()).collect();
                    let v = self.component(&args);
                    if v.is_zero() {
                        break;
                    }
                    values.push(v);
                }
                if values.len() < pi.len() {
                    continue;
                }
                let coeff = if pi.koszul_negative(&parities) {
                    -c.clone()
                } else {
                    c.clone()
                };
                out.add_scaled(&SymTensor::from_polys(&values), &coeff);
            }
        }
        Ok(out)
    }

    /// `pi_1 F(t)`: only the one-block partition reaches `S^1`.
    pub fn apply_linear(&self, t: &SymTensor<B>) -> Result<GradedPoly> {
        let mut out = GradedPoly::zero();
        for (word, c) in t.terms() {
            self.check_arity(word.len())?;
            out += self.component(word.factors()).scale(c);
        }
        Ok(out)
    }

    /// `G o F` with components `pi_1 G(F(args))`.
    pub fn then(&self, g: &CoalgMorphism<Monomial>) -> CoalgMorphism<B> {
        let f = self.clone();
        let g = g.clone();
        let name = format!("{} o {}", g.name, f.name);
        CoalgMorphism::new(name, None, move |args: &[B]| {
            let word = SymTensor::word(args.to_vec());
            let image = f.apply(&word).expect("arity checked by caller");
            g.apply_linear(&image).expect("arity checked by caller")
        })
    }
}

impl CoalgMorphism<Monomial> {
    /// The cumulant map: `a_1 . ... . a_n -> a_1 ... a_n`.
    pub fn phi() -> Self {
        Self::new("phi", None, |args: &[Monomial]| {
            product_of(args.iter().map(|m| GradedPoly::monomial(*m)))
        })
    }

    /// Inverse of [`CoalgMorphism::phi`]: `(-1)^{n-1} (n-1)! a_1 ... a_n`.
    pub fn phi_inverse() -> Self {
        Self::new("phi^-1", None, |args: &[Monomial]| {
            product_of(args.iter().map(|m| GradedPoly::monomial(*m))).scale(&inverse_coefficient(args.len()))
        })
    }

    /// The expectation as a morphism into the constants, linear only.
    pub fn expectation(space: &ProbabilitySpace) -> Self {
        let space = space.clone();
        Self::linear("E", move |m: &Monomial| {
            GradedPoly::constant(space.expectation(&GradedPoly::monomial(*m)))
        })
    }

    /// The identity coalgebra map.
    pub fn identity() -> Self {
        Self::linear("id", |m: &Monomial| GradedPoly::monomial(*m))
    }
}

fn product_of<I: Iterator<Item = GradedPoly>>(factors: I) -> GradedPoly {
    factors.fold(GradedPoly::one(), |acc, f| &acc * &f)
}

/// Extension of a degree +1 linear map to a coderivation of `SV`:
/// `a_1 ... a_n -> sum_i (-1)^{|a_1|+...+|a_{i-1}|} a_1 ... d(a_i) ... a_n`.
pub fn coderivation(d: &LinearOperator, t: &SymTensor<Monomial>) -> SymTensor<Monomial> {
    assert!(d.degree_shift() % 2 != 0, "coderivation of an even map");
    let mut out = SymTensor::zero();
    for (word, c) in t.terms() {
        let factors = word.factors();
        let mut negative = false;
        for i in 0..factors.len() {
            let image = d.apply(&GradedPoly::monomial(factors[i]));
            if !image.is_zero() {
                let polys: Vec<GradedPoly> = factors
                    .iter()
                    .enumerate()
                    .map(|(j, m)| {
                        if j == i {
                            image.clone()
                        } else {
                            GradedPoly::monomial(*m)
                        }
                    })
                    .collect();
                let coeff = if negative { -c.clone() } else { c.clone() };
                out.add_scaled(&SymTensor::from_polys(&polys), &coeff);
            }
            if factors[i].is_odd() {
                negative = !negative;
            }
        }
    }
    out
}

/// All multisets of `generators` basis indices with sizes `1..=max_size`,
/// ascending by size, then lexicographically.
pub fn generator_words(generators: usize, max_size: usize) -> Vec<Vec<usize>> {
    fn extend(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            extend(i, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=max_size {
        extend(0, generators, size, &mut Vec::new(), &mut out);
    }
    out
}

/// Convenience: the word tensor of a list of generator indices.
pub fn generator_word(indices: &[usize]) -> SymTensor<super::Generator> {
    SymTensor::word(indices.iter().map(|&i| super::Generator(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_poly};

    fn mono(s: &str) -> Monomial {
        let p = parse_poly(s).unwrap();
        let m = *p.terms().next().unwrap().0;
        m
    }

    #[test]
    fn phi_components() {
        let x = mono("x");
        let eta = mono("eta");
        assert_eq!(CoalgMorphism::phi().component(&[x, x]), parse_poly("x^2").unwrap());
        assert!(CoalgMorphism::phi().component(&[eta, eta]).is_zero());
        assert_eq!(CoalgMorphism::phi().component(&[x]), GradedPoly::x());
    }

    #[test]
    fn phi_inverse_components() {
        let x = mono("x");
        let inv = CoalgMorphism::phi_inverse();
        assert_eq!(inv.component(&[x]), GradedPoly::x());
        assert_eq!(inv.component(&[x, x]), parse_poly("-x^2").unwrap());
        assert_eq!(inv.component(&[x, x, x]), parse_poly("2*x^3").unwrap());
        assert_eq!(inverse_coefficient(4), int(-6));
    }

    #[test]
    fn inverse_after_phi_on_three_equal_factors() {
        // (phi^-1 phi)_3(x,x,x) = x^3 - 3 x.x^2 + 2 x.x.x = 0
        let x = mono("x");
        let word = SymTensor::word(vec![x, x, x]);
        let image = CoalgMorphism::phi().apply(&word).unwrap();
        let back = CoalgMorphism::phi_inverse().apply(&image).unwrap();
        assert_eq!(back, word);
        assert!(CoalgMorphism::phi_inverse().apply_linear(&image).unwrap().is_zero());
    }

    #[test]
    fn inverse_after_phi_binary_mixed_parity() {
        let a = mono("x*eta");
        let b = mono("x^2");
        let word = SymTensor::word(vec![a, b]);
        let image = CoalgMorphism::phi().apply(&word).unwrap();
        assert_eq!(CoalgMorphism::phi_inverse().apply(&image).unwrap(), word);
    }

    #[test]
    fn generator_multisets() {
        let words = generator_words(2, 2);
        assert_eq!(words, vec![vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(generator_words(2, 6).len(), 27);
        assert!(generator_words(0, 3).is_empty());
    }
}
