use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{GradedPoly, Monomial, Rational};

/// A basis element of a graded vector space that can appear as a factor of
/// a symmetric word.
pub trait Basis: Clone + Ord + fmt::Debug + fmt::Display {
    fn is_odd(&self) -> bool;
}

impl Basis for Monomial {
    fn is_odd(&self) -> bool {
        Monomial::is_odd(self)
    }
}

/// The `i`-th standard basis vector of `C^n`, in degree zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(pub usize);

impl Basis for Generator {
    fn is_odd(&self) -> bool {
        false
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0 + 1)
    }
}

/// A word `a_1 . ... . a_n` in the symmetric coalgebra, factors sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymWord<B> {
    factors: Vec<B>,
}

impl<B: Basis> SymWord<B> {
    /// Sorts the factors, returning the word and whether the Koszul sign of
    /// the reordering is negative. `None` when an odd factor repeats.
    pub fn canonical(mut factors: Vec<B>) -> Option<(Self, bool)> {
        let mut negative = false;
        // insertion sort, counting transpositions of odd neighbours
        for i in 1..factors.len() {
            let mut j = i;
            while j > 0 && factors[j - 1] > factors[j] {
                if factors[j - 1].is_odd() && factors[j].is_odd() {
                    negative = !negative;
                }
                factors.swap(j - 1, j);
                j -= 1;
            }
        }
        if factors.windows(2).any(|w| w[0] == w[1] && w[0].is_odd()) {
            return None;
        }
        Some((SymWord { factors }, negative))
    }

    pub fn factors(&self) -> &[B] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn parities(&self) -> Vec<bool> {
        self.factors.iter().map(Basis::is_odd).collect()
    }
}

impl<B: Basis> fmt::Display for SymWord<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(" (.) "))
    }
}

/// Finite linear combination of symmetric words.
#[derive(Clone, PartialEq, Eq)]
pub struct SymTensor<B> {
    terms: BTreeMap<SymWord<B>, Rational>,
}

impl<B: Basis> Default for SymTensor<B> {
    fn default() -> Self {
        SymTensor { terms: BTreeMap::new() }
    }
}

impl<B: Basis> SymTensor<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single word on `factors` (in the given order).
    pub fn word(factors: Vec<B>) -> Self {
        let mut t = Self::zero();
        t.add_word(factors, Rational::one());
        t
    }

    pub fn add_word(&mut self, factors: Vec<B>, c: Rational) {
        if c.is_zero() {
            return;
        }
        if let Some((w, negative)) = SymWord::canonical(factors) {
            self.add_canonical(w, if negative { -c } else { c });
        }
    }

    fn add_canonical(&mut self, w: SymWord<B>, c: Rational) {
        let entry = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &SymTensor<B>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_canonical(w.clone(), a * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymWord<B>, &Rational)> {
        self.terms.iter()
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

    pub fn max_arity(&self) -> usize {
        self.terms.keys().map(SymWord::len).max().unwrap_or(0)
    }

    /// The component in `S^n`.
    pub fn arity_part(&self, n: usize) -> SymTensor<B> {
        SymTensor {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }
}

impl SymTensor<Monomial> {
    /// `p_1 . ... . p_n` expanded multilinearly into monomial words.
    pub fn from_polys(factors: &[GradedPoly]) -> Self {
        let mut partial: Vec<(Vec<Monomial>, Rational)> = vec![(Vec::new(), Rational::one())];
        for p in factors {
            let mut next = Vec::with_capacity(partial.len() * p.len());
            for (word, c) in &partial {
                for (m, a) in p.terms() {
                    let mut w = word.clone();
                    w.push(*m);
                    next.push((w, c * a));
                }
            }
            partial = next;
        }
        let mut out = Self::zero();
        for (w, c) in partial {
            out.add_word(w, c);
        }
        out
    }

    /// Projection onto `S^1 = V`.
    pub fn linear_part(&self) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (w, c) in &self.terms {
            if w.len() == 1 {
                out.add_term(w.factors[0], c.clone());
            }
        }
        out
    }
}

impl<B: Basis> fmt::Display for SymTensor<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c}) {w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<B: Basis> fmt::Debug for SymTensor<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymTensor({self})")
    }
}
