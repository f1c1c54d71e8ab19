//! The symmetric coalgebra `SV`, the cumulant map `phi` and everything
//! transported along it: `L-infinity` brackets of the transported
//! differential, total cumulants, homotopy random variables and joint
//! cumulants.
//!
//! Two independent routes exist for the brackets and for the total
//! cumulant. The generic route builds words in [`SymTensor`] and pushes them
//! through `phi`, the coderivation of `d` (or the expectation) and
//! `phi^{-1}`. The direct route evaluates the set-partition formula on
//! polynomial arguments.

mod morphism;
mod partitions;
mod sym;

pub use morphism::{coderivation, generator_word, generator_words, inverse_coefficient, CoalgMorphism};
pub use partitions::{enumerate_partitions, SetPartition, SetPartitions, MAX_PARTITION_SIZE};
pub use sym::{Basis, Generator, SymTensor, SymWord};

use num_traits::{One, Zero};

use crate::algebra::{GradedPoly, Monomial, Rational};
use crate::chain::{LinearOperator, ProbabilitySpace};
use crate::error::{Error, Result};
use crate::report::Report;

/// Highest arity accepted for symbolic brackets.
pub const MAX_BRACKET_ARITY: usize = 8;
/// Highest arity accepted by [`check_hrv`].
pub const MAX_HRV_ARITY: usize = 6;

fn arity_check(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::ArityOutOfRange {
            what,
            got: n,
            min: 1,
            max,
        });
    }
    Ok(())
}

/// `a_1 ... a_n`, the component of `phi` on a word.
pub fn phi_component(word: &[GradedPoly]) -> GradedPoly {
    word.iter().fold(GradedPoly::one(), |acc, a| &acc * a)
}

/// `(-1)^{n-1} (n-1)! a_1 ... a_n`, the component of `phi^{-1}` on a word.
pub fn phi_inverse_component(word: &[GradedPoly]) -> Result<GradedPoly> {
    arity_check("phi^-1 component", word.len(), MAX_PARTITION_SIZE)?;
    Ok(phi_component(word).scale(&inverse_coefficient(word.len())))
}

/// `l_n(a_1, .., a_n)`, the arity-`n` component of `phi^{-1} d phi`,
/// computed through the symmetric coalgebra.
pub fn transported_bracket(space: &ProbabilitySpace, args: &[GradedPoly]) -> Result<GradedPoly> {
    transported_bracket_with(space.differential(), args)
}

/// [`transported_bracket`] for an arbitrary degree +1 differential, for
/// instance the total differential on `V[t, dt]`.
pub fn transported_bracket_with(d: &LinearOperator, args: &[GradedPoly]) -> Result<GradedPoly> {
    arity_check("transported bracket", args.len(), MAX_BRACKET_ARITY)?;
    let word = SymTensor::from_polys(args);
    let image = CoalgMorphism::phi().apply(&word)?;
    let differentiated = coderivation(d, &image);
    CoalgMorphism::phi_inverse().apply_linear(&differentiated)
}

/// The same bracket from the closed formula
/// `l_n = sum_pi (+-) c_|pi| sum_j (+-) a_B1 ... d(a_Bj) ... a_Bk`,
/// without building any words.
pub fn bracket_direct(d: &LinearOperator, args: &[GradedPoly]) -> Result<GradedPoly> {
    arity_check("transported bracket", args.len(), MAX_BRACKET_ARITY)?;
    let mut out = GradedPoly::zero();
    for homogeneous in homogeneous_combinations(args) {
        out += bracket_homogeneous(d, &homogeneous);
    }
    Ok(out)
}

/// Multilinear expansion of `args` into tuples of homogeneous arguments.
fn homogeneous_combinations(args: &[GradedPoly]) -> Vec<Vec<GradedPoly>> {
    let mut combos: Vec<Vec<GradedPoly>> = vec![Vec::new()];
    for a in args {
        let parts: Vec<GradedPoly> = a.homogeneous_parts().into_values().collect();
        let mut next = Vec::with_capacity(combos.len() * parts.len());
        for c in &combos {
            for p in &parts {
                let mut c = c.clone();
                c.push(p.clone());
                next.push(c);
            }
        }
        combos = next;
    }
    combos
}

fn is_odd(p: &GradedPoly) -> bool {
    p.homogeneous_degree().is_some_and(|d| d % 2 != 0)
}

/// Products of every subset of `args`, indexed by bitmask, in ascending
/// argument order.
fn subset_products(args: &[GradedPoly]) -> Vec<GradedPoly> {
    let n = args.len();
    let mut products = vec![GradedPoly::one(); 1 << n];
    for mask in 1usize..(1 << n) {
        let top = usize::BITS - 1 - mask.leading_zeros();
        let rest = mask & !(1 << top);
        products[mask] = &products[rest] * &args[top as usize];
    }
    products
}

fn bracket_homogeneous(d: &LinearOperator, args: &[GradedPoly]) -> GradedPoly {
    let n = args.len();
    let parities: Vec<bool> = args.iter().map(is_odd).collect();
    let products = subset_products(args);
    let images: Vec<GradedPoly> = products.iter().map(|p| d.apply(p)).collect();
    let mask_odd = |mask: u32| {
        (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .fold(false, |o, i| o ^ parities[i])
    };

    let mut out = GradedPoly::zero();
    for pi in SetPartitions::new(n) {
        let masks: Vec<u32> = pi.block_masks().collect();
        let k = masks.len();
        let mut coeff = inverse_coefficient(k);
        if pi.koszul_negative(&parities) {
            coeff = -coeff;
        }
        // prefix[j] = P_B1 ... P_Bj, suffix[j] = P_Bj+1 ... P_Bk
        let mut prefix = vec![GradedPoly::one()];
        for &m in &masks[..k - 1] {
            let next = prefix.last().expect("nonempty") * &products[m as usize];
            prefix.push(next);
        }
        let mut suffix = vec![GradedPoly::one(); k];
        for j in (0..k - 1).rev() {
            suffix[j] = &products[masks[j + 1] as usize] * &suffix[j + 1];
        }
        let mut sum = GradedPoly::zero();
        let mut passed_odd = false;
        for j in 0..k {
            let image = &images[masks[j] as usize];
            let term = if image.is_zero() || prefix[j].is_zero() || suffix[j].is_zero() {
                GradedPoly::zero()
            } else {
                &(&prefix[j] * image) * &suffix[j]
            };
            if passed_odd {
                sum -= &term;
            } else {
                sum += term;
            }
            passed_odd ^= mask_odd(masks[j]);
        }
        out += sum.scale(&coeff);
    }
    out
}

/// `k_n(a_1, .., a_n) = sum_pi (-1)^{|pi|-1} (|pi|-1)! prod_B E(prod_{i in B} a_i)`.
pub fn total_cumulant(space: &ProbabilitySpace, args: &[GradedPoly]) -> Result<Rational> {
    partitions::check_size("total cumulant", args.len())?;
    let mut total = Rational::zero();
    for homogeneous in homogeneous_combinations(args) {
        total += cumulant_homogeneous(space, &homogeneous);
    }
    Ok(total)
}

fn cumulant_homogeneous(space: &ProbabilitySpace, args: &[GradedPoly]) -> Rational {
    let parities: Vec<bool> = args.iter().map(is_odd).collect();
    let moments: Vec<Rational> = subset_products(args).iter().map(|p| space.expectation(p)).collect();
    partition_sum(args.len(), &parities, |mask| &moments[mask as usize], true)
}

/// `sum_pi (+-) w(|pi|) prod_B value(B)` with `w = (-1)^{k-1}(k-1)!` when
/// `inverse` is set and `w = 1` otherwise.
fn partition_sum<'a, F>(n: usize, parities: &[bool], value: F, inverse: bool) -> Rational
where
    F: Fn(u32) -> &'a Rational,
{
    let mut total = Rational::zero();
    for pi in SetPartitions::new(n) {
        let mut term = Rational::one();
        for m in pi.block_masks() {
            let v = value(m);
            if v.is_zero() {
                term = Rational::zero();
                break;
            }
            term *= v;
        }
        if term.is_zero() {
            continue;
        }
        if inverse {
            term *= inverse_coefficient(pi.len());
        }
        if pi.koszul_negative(parities) {
            term = -term;
        }
        total += term;
    }
    total
}

/// Joint cumulant of `n` even elements from the moments of their
/// sub-products, indexed by subset bitmask (`moments[0]` is unused).
pub fn cumulant_from_subset_moments(n: usize, moments: &[Rational]) -> Result<Rational> {
    partitions::check_size("cumulant order", n)?;
    assert_eq!(moments.len(), 1 << n, "one moment per subset");
    Ok(partition_sum(n, &vec![false; n], |m| &moments[m as usize], true))
}

/// `K = phi^{-1} E phi` evaluated through the symmetric coalgebra; the
/// independent route to [`total_cumulant`].
pub fn total_cumulant_transported(space: &ProbabilitySpace, args: &[GradedPoly]) -> Result<Rational> {
    arity_check("transported cumulant", args.len(), MAX_BRACKET_ARITY)?;
    let word = SymTensor::from_polys(args);
    cumulant_of_tensor(space, &word)
}

fn cumulant_of_tensor(space: &ProbabilitySpace, t: &SymTensor<Monomial>) -> Result<Rational> {
    let moments = CoalgMorphism::phi().apply(t)?;
    let scalars = CoalgMorphism::expectation(space).apply(&moments)?;
    let value = CoalgMorphism::phi_inverse().apply_linear(&scalars)?;
    Ok(value.constant_term())
}

/// `m_n = sum_pi prod_B k_|B|`; `cumulants[i]` is `k_{i+1}`.
///
/// The set-partition sum is organized by the block containing the first
/// element: `m_n = sum_j C(n-1, j-1) k_j m_{n-j}`. This is the same sum, so
/// it has no partition-size cap.
pub fn moments_from_cumulants(cumulants: &[Rational], n: usize) -> Result<Rational> {
    if cumulants.len() < n {
        return Err(Error::Inconsistent(format!(
            "moment of order {n} needs {n} cumulants, got {}",
            cumulants.len()
        )));
    }
    let mut m = vec![Rational::one()];
    for order in 1..=n {
        let mut sum = Rational::zero();
        let mut binom = Rational::one(); // C(order-1, j-1)
        for j in 1..=order {
            sum += &binom * &cumulants[j - 1] * &m[order - j];
            binom = binom * Rational::from_integer((order - j).into()) / Rational::from_integer(j.into());
        }
        m.push(sum);
    }
    Ok(m[n].clone())
}

/// [`moments_from_cumulants`] by explicit enumeration of set partitions;
/// limited to `n <= 12`.
pub fn moments_from_cumulants_enumerated(cumulants: &[Rational], n: usize) -> Result<Rational> {
    partitions::check_size("moment order", n)?;
    if cumulants.len() < n {
        return Err(Error::Inconsistent(format!(
            "moment of order {n} needs {n} cumulants, got {}",
            cumulants.len()
        )));
    }
    let by_mask: Vec<Rational> = (0u32..(1 << n))
        .map(|m| {
            if m == 0 {
                Rational::zero()
            } else {
                cumulants[m.count_ones() as usize - 1].clone()
            }
        })
        .collect();
    Ok(partition_sum(n, &vec![false; n], |m| &by_mask[m as usize], false))
}

/// A collection of `n` ordinary random variables: `e_i -> values[i]`, no
/// higher components.
pub fn ordinary_collection(values: Vec<GradedPoly>) -> CoalgMorphism<Generator> {
    let name = format!(
        "X({})",
        values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
    );
    CoalgMorphism::linear(name, move |g: &Generator| values[g.0].clone())
}

/// `(d^phi X)` on one generator word.
pub fn transported_differential_of(
    d: &LinearOperator,
    x: &CoalgMorphism<Generator>,
    word: &[usize],
) -> Result<GradedPoly> {
    let image = x.apply(&generator_word(word))?;
    let pushed = CoalgMorphism::phi().apply(&image)?;
    CoalgMorphism::phi_inverse().apply_linear(&coderivation(d, &pushed))
}

/// Passes iff every component of `d^phi o X` vanishes on all generator words
/// up to `max_arity` (at most 6).
pub fn check_hrv(
    space: &ProbabilitySpace,
    x: &CoalgMorphism<Generator>,
    generators: usize,
    max_arity: usize,
) -> Result<Report> {
    arity_check("homotopy random variable check", max_arity, MAX_HRV_ARITY)?;
    let mut report = Report::new(format!("d^phi o {} = 0 through arity {max_arity}", x.name()));
    for word in generator_words(generators, max_arity) {
        let v = transported_differential_of(space.differential(), x, &word)?;
        if !v.is_zero() {
            let label: Vec<String> = word.iter().map(|&i| Generator(i).to_string()).collect();
            report.fail("closed", format!("(d^phi X)({}) = {v}", label.join(" (.) ")));
            return Ok(report);
        }
    }
    report.pass("closed");
    Ok(report)
}

/// `(K o X)` on a word of generator indices, composed through the
/// symmetric coalgebra. The caller is responsible for `X` being closed.
pub fn joint_cumulant(space: &ProbabilitySpace, x: &CoalgMorphism<Generator>, word: &[usize]) -> Result<Rational> {
    partitions::check_size("joint cumulant", word.len())?;
    let image = x.apply(&generator_word(word))?;
    cumulant_of_tensor(space, &image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_poly, rat};

    fn p(s: &str) -> GradedPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn gaussian_brackets() {
        let g = ProbabilitySpace::homotopy_gaussian();
        assert!(transported_bracket(&g, &[p("x"), p("x")]).unwrap().is_zero());
        assert_eq!(transported_bracket(&g, &[p("eta"), p("x")]).unwrap(), GradedPoly::one());
        assert_eq!(transported_bracket(&g, &[p("eta")]).unwrap(), p("-x"));
        assert!(transported_bracket(&g, &[]).is_err());
        assert!(transported_bracket(&g, &vec![p("x"); 9]).is_err());
    }

    #[test]
    fn binary_bracket_formula() {
        // l_2(a,b) = d(ab) - d(a)b - (-1)^{|a|} a d(b)
        let g = ProbabilitySpace::homotopy_gaussian();
        let a = p("x^2*eta");
        let b = p("x*eta + 3");
        let expected = g.d(&(&a * &b)) - &g.d(&a) * &b + &a * &g.d(&b);
        assert_eq!(transported_bracket(&g, &[a.clone(), b.clone()]).unwrap(), expected);
        assert_eq!(bracket_direct(g.differential(), &[a, b]).unwrap(), expected);
    }

    #[test]
    fn cumulant_examples() {
        let g = ProbabilitySpace::homotopy_gaussian();
        let x = p("x");
        assert_eq!(total_cumulant(&g, &[p("x^2 + 3")]).unwrap(), int(4));
        let (a, b) = (p("x^2"), p("x^3 + x"));
        let expected = g.expectation(&(&a * &b)) - g.expectation(&a) * g.expectation(&b);
        assert_eq!(total_cumulant(&g, &[a, b]).unwrap(), expected);
        assert_eq!(
            total_cumulant(&g, &[x.clone(), x.clone(), x.clone(), x.clone()]).unwrap(),
            int(0)
        );
        assert_eq!(total_cumulant(&g, &[x.clone(), x.clone()]).unwrap(), int(1));
        assert!(total_cumulant(&g, &vec![x; 13]).is_err());
    }

    #[test]
    fn moments_from_gaussian_cumulants() {
        let k = vec![int(0), int(1), int(0), int(0), int(0), int(0)];
        assert_eq!(moments_from_cumulants(&k, 4).unwrap(), int(3));
        assert_eq!(moments_from_cumulants(&k, 6).unwrap(), int(15));
        assert_eq!(moments_from_cumulants(&[rat(2, 3)], 1).unwrap(), rat(2, 3));
        assert!(moments_from_cumulants(&k, 7).is_err());
        let k: Vec<Rational> = (1..=10).map(|i| rat(i, i + 2)).collect();
        assert!(moments_from_cumulants(&k, 0).unwrap().is_one());
        for n in 1..=10 {
            assert_eq!(
                moments_from_cumulants(&k, n).unwrap(),
                moments_from_cumulants_enumerated(&k, n).unwrap()
            );
        }
    }

    #[test]
    fn hrv_examples() {
        let g = ProbabilitySpace::homotopy_gaussian();
        let x = ordinary_collection(vec![p("x^3 - 2*x + 1/2")]);
        assert!(check_hrv(&g, &x, 1, 4).unwrap().passed());
        let eta = ordinary_collection(vec![p("eta")]);
        let report = check_hrv(&g, &eta, 1, 2).unwrap();
        assert!(!report.passed());
        assert!(report
            .first_failure()
            .unwrap()
            .detail
            .as_ref()
            .unwrap()
            .ends_with("= -x"));
        let empty = ordinary_collection(vec![]);
        assert!(check_hrv(&g, &empty, 0, 3).unwrap().passed());
    }

    #[test]
    fn joint_cumulant_examples() {
        let g = ProbabilitySpace::homotopy_gaussian();
        let x = ordinary_collection(vec![p("x")]);
        assert_eq!(joint_cumulant(&g, &x, &[0, 0]).unwrap(), int(1));
        assert_eq!(joint_cumulant(&g, &x, &[0]).unwrap(), int(0));
        let pair = ordinary_collection(vec![p("x"), p("1")]);
        assert_eq!(joint_cumulant(&g, &pair, &[0, 1]).unwrap(), int(0));
    }

    #[test]
    fn composed_morphism_matches_joint_cumulant() {
        let g = ProbabilitySpace::homotopy_gaussian();
        let x = ordinary_collection(vec![p("x^2 - x")]);
        let k = CoalgMorphism::phi()
            .then(&CoalgMorphism::expectation(&g))
            .then(&CoalgMorphism::phi_inverse());
        let kx = x.then(&k);
        for n in 1..=4 {
            let word = vec![Generator(0); n];
            let via_compose = kx.component(&word).constant_term();
            assert_eq!(via_compose, joint_cumulant(&g, &x, &vec![0; n]).unwrap());
        }
    }
}
