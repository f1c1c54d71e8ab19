//! The homotopy Gaussian `C[x, eta]`, `d(p + q eta) = q' - x q`, and the
//! explicit homotopy between two ordinary random variables with equal
//! cumulants.
//!
//! The expectation is computed from the relation `E d = 0` alone:
//! `E(x^{n+1}) = n E(x^{n-1})` with `E(1) = 1`, `E(x) = 0`, so no integral
//! is ever evaluated.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{double_factorial, int, GradedPoly, Monomial, Rational};
use crate::chain::ProbabilitySpace;
use crate::cone::{BasisElement, TruncatedSpace};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::Report;
use crate::transport::{
    bracket_direct, inverse_coefficient, joint_cumulant, ordinary_collection, total_cumulant, CoalgMorphism, Generator,
    SetPartitions,
};

/// Highest order accepted by [`verify_homotopy`] and the homotopy builders.
pub const MAX_HOMOTOPY_ORDER: usize = 8;

pub const Y_BOUND_NOTE: &str = "y_n sums j = 1..floor((n+1)/2); the printed bound floor(n/2) drops the constant term for odd n and breaks d y_n = x^n - E(x^n) (e.g. n = 1)";

pub const REMARK_NOTE: &str = "the partition formula gives identical joint cumulants for (x, 1) and (-x, 1) on every word listed; the claim that the second cumulant distinguishes them is not reproduced here";

/// `E(x^n)`: `(n-1)!!` for even `n`, zero for odd `n`.
pub fn moment(n: u32) -> Rational {
    let mut even = Rational::one(); // E(x^0)
    if n % 2 == 1 {
        return Rational::zero();
    }
    let mut k = 0;
    while k < n {
        // E(x^{k+2}) = (k+1) E(x^k)
        even *= int(k as i64 + 1);
        k += 2;
    }
    even
}

/// Gaussian expectation on `V = C[x, eta]`; terms outside `C[x]` contribute
/// zero.
pub fn expectation(v: &GradedPoly) -> Rational {
    v.terms()
        .filter(|(m, _)| !m.eta && !m.dt && m.t == 0)
        .fold(Rational::zero(), |acc, (m, c)| acc + c * moment(m.x))
}

/// `d(p + q eta) = q' - x q`, with `t`, `dt` factors carried along.
pub fn d_poly(v: &GradedPoly) -> GradedPoly {
    v.map_monomials(|m, c| {
        if !m.eta {
            return GradedPoly::zero();
        }
        let rest = Monomial { x: 0, eta: false, ..*m };
        let mut out = GradedPoly::term(-c.clone(), Monomial { x: m.x + 1, ..rest });
        if m.x > 0 {
            out.add_term(Monomial { x: m.x - 1, ..rest }, c * int(m.x as i64));
        }
        out
    })
}

/// `p(x) + q(x) eta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussElement {
    pub even: GradedPoly,
    pub odd: GradedPoly,
}

impl GaussElement {
    pub fn new(even: GradedPoly, odd: GradedPoly) -> Result<Self> {
        for part in [&even, &odd] {
            if !part.is_x_only() {
                return Err(Error::NotInPolynomialRing(part.to_string()));
            }
        }
        Ok(GaussElement { even, odd })
    }

    pub fn to_poly(&self) -> GradedPoly {
        &self.even + &(&self.odd * &GradedPoly::eta())
    }
}

impl TryFrom<&GradedPoly> for GaussElement {
    type Error = Error;

    fn try_from(v: &GradedPoly) -> Result<Self> {
        if !v.is_in_v() {
            return Err(Error::NotInPolynomialRing(v.to_string()));
        }
        Ok(GaussElement {
            even: v.eta_free_part(),
            odd: v.eta_part(),
        })
    }
}

pub fn gauss_d(v: &GaussElement) -> GaussElement {
    GaussElement {
        even: &v.odd.d_dx() - &(&GradedPoly::x() * &v.odd),
        odd: GradedPoly::zero(),
    }
}

pub fn gauss_e(v: &GaussElement) -> Rational {
    expectation(&v.even)
}

fn y_with_bound(n: u32, top: u32) -> GradedPoly {
    let mut sum = GradedPoly::zero();
    let numerator = double_factorial(n as i64 - 1);
    for j in 1..=top {
        let exp = n + 1 - 2 * j;
        let c = Rational::new(numerator.clone(), double_factorial(exp as i64));
        sum.add_term(Monomial::x_pow(exp), c);
    }
    -(&sum * &GradedPoly::eta())
}

/// `y_n = -eta sum_{j=1}^{floor((n+1)/2)} x^{n+1-2j} (n-1)!! / (n+1-2j)!!`,
/// the primitive with `d y_n = x^n - E(x^n)`.
pub fn y_n(n: u32) -> Result<GradedPoly> {
    if n < 1 {
        return Err(Error::ArityOutOfRange {
            what: "y_n index",
            got: n as usize,
            min: 1,
            max: u32::MAX as usize,
        });
    }
    Ok(y_with_bound(n, n.div_ceil(2)))
}

/// `y_n` summed only to `floor(n/2)`. Kept to demonstrate that this bound
/// fails the primitive property for odd `n`.
pub fn y_n_floor_half(n: u32) -> GradedPoly {
    y_with_bound(n, n / 2)
}

/// The unique `h(r) = sum_i a_i y_i` with `d h(r) = r`, for `r` in `C[x]`
/// with `E(r) = 0`.
pub fn solve_h(r: &GradedPoly) -> Result<GradedPoly> {
    if !r.is_x_only() {
        return Err(Error::NotInPolynomialRing(r.to_string()));
    }
    let e = expectation(r);
    if !e.is_zero() {
        return Err(Error::NotCentered {
            poly: r.to_string(),
            expectation: Box::new(e),
        });
    }
    let mut rest = r.clone();
    let mut h = GradedPoly::zero();
    let top = r.x_degree().unwrap_or(0);
    for i in (1..=top).rev() {
        let a = rest.coefficient(&Monomial::x_pow(i));
        if a.is_zero() {
            continue;
        }
        // x^i - E(x^i) is monic in x^i
        let centered = &GradedPoly::x_pow(i) - &GradedPoly::constant(moment(i));
        rest -= &centered.scale(&a);
        h += y_n(i)?.scale(&a);
    }
    debug_assert!(rest.is_zero(), "remainder {rest} after elimination");
    Ok(h)
}

fn require_x_only(p: &GradedPoly) -> Result<()> {
    if p.is_x_only() {
        Ok(())
    } else {
        Err(Error::NotInPolynomialRing(p.to_string()))
    }
}

fn order_check(n: usize) -> Result<()> {
    if n == 0 || n > MAX_HOMOTOPY_ORDER {
        return Err(Error::ArityOutOfRange {
            what: "homotopy order",
            got: n,
            min: 1,
            max: MAX_HOMOTOPY_ORDER,
        });
    }
    Ok(())
}

/// `Lambda_n = p^n + t (q^n - p^n) + h(p^n - q^n) dt`.
pub fn lambda_n(p: &GradedPoly, q: &GradedPoly, n: u32) -> Result<GradedPoly> {
    require_x_only(p)?;
    require_x_only(q)?;
    let pn = p.pow(n);
    let qn = q.pow(n);
    let (ep, eq) = (expectation(&pn), expectation(&qn));
    if ep != eq {
        return Err(Error::MomentMismatch {
            order: n as usize,
            left: Box::new(ep),
            right: Box::new(eq),
        });
    }
    let h = solve_h(&(&pn - &qn))?;
    Ok(&pn + &(&GradedPoly::t() * &(&qn - &pn)) + &h * &GradedPoly::dt())
}

/// Set partitions of `{1..n}` grouped by their multiset of block sizes.
fn partition_types(n: usize) -> BTreeMap<Vec<usize>, u64> {
    let mut types = BTreeMap::new();
    for pi in SetPartitions::new(n) {
        let mut sizes: Vec<usize> = pi.blocks().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        *types.entry(sizes).or_insert(0u64) += 1;
    }
    types
}

/// `H_n = sum_{set partitions} (-1)^{k-1} (k-1)! Lambda_{p_1} ... Lambda_{p_k}`
/// from precomputed `lambdas[i] = Lambda_{i+1}`.
fn h_from_lambdas(lambdas: &[GradedPoly], n: usize) -> GradedPoly {
    let mut out = GradedPoly::zero();
    for (sizes, count) in partition_types(n) {
        let product = sizes.iter().fold(GradedPoly::one(), |acc, &s| &acc * &lambdas[s - 1]);
        let coeff = inverse_coefficient(sizes.len()) * int(count as i64);
        out += product.scale(&coeff);
    }
    out
}

/// `H_n`, the `n`-th component of the transported homotopy.
pub fn big_h_n(p: &GradedPoly, q: &GradedPoly, n: u32) -> Result<GradedPoly> {
    order_check(n as usize)?;
    let homotopy = Homotopy::build(p, q, n as usize)?;
    Ok(homotopy.components[n as usize - 1].clone())
}

/// `Lambda` and `H = phi^{-1} Lambda` through a given order.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub p: GradedPoly,
    pub q: GradedPoly,
    /// `lambdas[i]` is `Lambda_{i+1}`.
    pub lambdas: Vec<GradedPoly>,
    /// `components[i]` is `H_{i+1}`.
    pub components: Vec<GradedPoly>,
}

impl Homotopy {
    /// Fails with [`Error::CumulantMismatch`] at the first order where the
    /// cumulants of `p` and `q` differ.
    pub fn build(p: &GradedPoly, q: &GradedPoly, max_order: usize) -> Result<Self> {
        order_check(max_order)?;
        require_x_only(p)?;
        require_x_only(q)?;
        if let Some((order, left, right)) = first_cumulant_difference(p, q, max_order)? {
            return Err(Error::CumulantMismatch {
                order,
                left: Box::new(left),
                right: Box::new(right),
            });
        }
        let lambdas = (1..=max_order as u32)
            .map(|n| lambda_n(p, q, n))
            .collect::<Result<Vec<_>>>()?;
        let components = (1..=max_order).map(|n| h_from_lambdas(&lambdas, n)).collect();
        Ok(Homotopy {
            p: p.clone(),
            q: q.clone(),
            lambdas,
            components,
        })
    }

    /// `Lambda` as a coalgebra morphism out of `S C`.
    pub fn lambda_morphism(&self) -> CoalgMorphism<Generator> {
        let lambdas = self.lambdas.clone();
        let top = lambdas.len();
        CoalgMorphism::new("Lambda", Some(top), move |args: &[Generator]| {
            lambdas[args.len() - 1].clone()
        })
    }

    /// `H` as a coalgebra morphism out of `S C`.
    pub fn h_morphism(&self) -> CoalgMorphism<Generator> {
        let comps = self.components.clone();
        let top = comps.len();
        CoalgMorphism::new("H", Some(top), move |args: &[Generator]| comps[args.len() - 1].clone())
    }
}

/// First order `n <= max_order` with `k_n(p,..,p) != k_n(q,..,q)`.
pub fn first_cumulant_difference(
    p: &GradedPoly,
    q: &GradedPoly,
    max_order: usize,
) -> Result<Option<(usize, Rational, Rational)>> {
    let g = ProbabilitySpace::homotopy_gaussian();
    for n in 1..=max_order {
        let kp = total_cumulant(&g, &vec![p.clone(); n])?;
        let kq = total_cumulant(&g, &vec![q.clone(); n])?;
        if kp != kq {
            return Ok(Some((n, kp, kq)));
        }
    }
    Ok(None)
}

/// Checks, for every `n <= max_order`: `D Lambda_n = 0`; the endpoints of
/// `H_n` are the components of `X` (`X_1 = p`) and `Y` (`Y_1 = q`); the
/// transported differential kills `H`; the cumulants of `p` and `q` agree.
pub fn verify_homotopy(p: &GradedPoly, q: &GradedPoly, max_order: usize) -> Result<Report> {
    order_check(max_order)?;
    require_x_only(p)?;
    require_x_only(q)?;
    let mut report = Report::new(format!("homotopy from {p} to {q} through order {max_order}"));

    if let Some((order, left, right)) = first_cumulant_difference(p, q, max_order)? {
        report.fail(
            "equal cumulants",
            format!("order {order}: k_{order}(p) = {left}, k_{order}(q) = {right}"),
        );
        return Ok(report);
    }
    report.pass("equal cumulants");
    report.note(Y_BOUND_NOTE);

    let homotopy = Homotopy::build(p, q, max_order)?;
    let g = ProbabilitySpace::homotopy_gaussian();
    let total_d = g.homotopy_differential();

    let unclosed = homotopy
        .lambdas
        .iter()
        .enumerate()
        .find(|(_, l)| !total_d.apply(l).is_zero());
    match unclosed {
        Some((i, l)) => report.fail(
            "D Lambda_n = 0",
            format!("n = {}: D({l}) = {}", i + 1, total_d.apply(l)),
        ),
        None => report.pass("D Lambda_n = 0"),
    }

    let mut endpoint_failure = None;
    for (i, h) in homotopy.components.iter().enumerate() {
        let (x_n, y_n) = if i == 0 {
            (p.clone(), q.clone())
        } else {
            (GradedPoly::zero(), GradedPoly::zero())
        };
        let (h0, h1) = (h.eval_t(&int(0)), h.eval_t(&int(1)));
        if h0 != x_n || h1 != y_n {
            endpoint_failure = Some(format!("n = {}: H(0) = {h0}, H(1) = {h1}", i + 1));
            break;
        }
    }
    match endpoint_failure {
        Some(w) => report.fail("endpoints", w),
        None => report.pass("endpoints"),
    }

    match transported_closedness_witness(&homotopy)? {
        Some(w) => report.fail("D^phi H = 0", w),
        None => report.pass("D^phi H = 0"),
    }
    Ok(report)
}

/// `(D^phi H)_n = sum_pi l_k(H_|B1|, .., H_|Bk|)` for every `n`, with the
/// brackets of the total differential on `V[t, dt]`.
fn transported_closedness_witness(homotopy: &Homotopy) -> Result<Option<String>> {
    let total_d = ProbabilitySpace::homotopy_gaussian().homotopy_differential();
    for n in 1..=homotopy.components.len() {
        let mut sum = GradedPoly::zero();
        for (sizes, count) in partition_types(n) {
            let args: Vec<GradedPoly> = sizes.iter().map(|&s| homotopy.components[s - 1].clone()).collect();
            sum += bracket_direct(&total_d, &args)?.scale(&int(count as i64));
        }
        if !sum.is_zero() {
            return Ok(Some(format!("n = {n}: {sum}")));
        }
    }
    Ok(None)
}

/// One row of the remark experiment.
#[derive(Clone, Debug, Serialize)]
pub struct RemarkRow {
    pub word: String,
    pub x_bar: String,
    pub y_bar: String,
    pub x_bar_composed: String,
    pub y_bar_composed: String,
    pub consistent: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RemarkReport {
    pub max_order: usize,
    pub rows: Vec<RemarkRow>,
    /// Words on which the two collections have different joint cumulants.
    pub distinguishing_words: Vec<String>,
    /// Every entry matched between the partition formula and `K o X`.
    pub consistent: bool,
    pub notes: Vec<String>,
}

/// Joint cumulants of `(x, 1)` and `(-x, 1)` on every word of size at most
/// `max_order`, each computed by the partition formula and by composing
/// `K o X` in the symmetric coalgebra.
pub fn remark_experiment(max_order: usize) -> Result<RemarkReport> {
    if max_order == 0 || max_order > crate::transport::MAX_HRV_ARITY {
        return Err(Error::ArityOutOfRange {
            what: "remark order",
            got: max_order,
            min: 1,
            max: crate::transport::MAX_HRV_ARITY,
        });
    }
    let g = ProbabilitySpace::homotopy_gaussian();
    let x_vals = vec![GradedPoly::x(), GradedPoly::one()];
    let y_vals = vec![-GradedPoly::x(), GradedPoly::one()];
    let x_bar = ordinary_collection(x_vals.clone());
    let y_bar = ordinary_collection(y_vals.clone());

    let mut rows = Vec::new();
    for word in crate::transport::generator_words(2, max_order) {
        let args = |vals: &[GradedPoly]| word.iter().map(|&i| vals[i].clone()).collect::<Vec<_>>();
        let kx = total_cumulant(&g, &args(&x_vals))?;
        let ky = total_cumulant(&g, &args(&y_vals))?;
        let kx_c = joint_cumulant(&g, &x_bar, &word)?;
        let ky_c = joint_cumulant(&g, &y_bar, &word)?;
        let label: Vec<String> = word.iter().map(|&i| Generator(i).to_string()).collect();
        rows.push(RemarkRow {
            word: label.join(" (.) "),
            consistent: kx == kx_c && ky == ky_c,
            agree: kx == ky,
            x_bar: kx.to_string(),
            y_bar: ky.to_string(),
            x_bar_composed: kx_c.to_string(),
            y_bar_composed: ky_c.to_string(),
        });
    }
    let distinguishing_words: Vec<String> = rows.iter().filter(|r| !r.agree).map(|r| r.word.clone()).collect();
    let consistent = rows.iter().all(|r| r.consistent);
    let mut notes = Vec::new();
    if distinguishing_words.is_empty() {
        notes.push(REMARK_NOTE.to_string());
    }
    Ok(RemarkReport {
        max_order,
        rows,
        distinguishing_words,
        consistent,
        notes,
    })
}

/// Matrix of `q eta -> q' - x q` from `{x^k eta : k <= cap}` to
/// `{x^j : j <= cap + 1}`.
pub fn d_matrix(cap: u32) -> Matrix {
    let mut m = Matrix::zeros(cap as usize + 2, cap as usize + 1);
    for k in 0..=cap {
        let image = d_poly(&GradedPoly::monomial(Monomial::new(k, true, 0, false)));
        for (mono, c) in image.terms() {
            m.set(mono.x as usize, k as usize, c.clone());
        }
    }
    m
}

/// The homotopy Gaussian truncated to `q eta` with `deg q <= cap` (degree
/// -1) and `p` with `deg p <= cap + 1` (degree 0). Products leaving the
/// truncation are undefined.
pub fn truncated_space(cap: u32) -> TruncatedSpace {
    let odd = cap as usize + 1;
    let even = cap as usize + 2;
    let dim = odd + even;
    let mut basis = Vec::with_capacity(dim);
    for k in 0..odd {
        basis.push(BasisElement {
            label: GradedPoly::monomial(Monomial::new(k as u32, true, 0, false)).to_string(),
            degree: -1,
        });
    }
    for j in 0..even {
        basis.push(BasisElement {
            label: GradedPoly::x_pow(j as u32).to_string(),
            degree: 0,
        });
    }
    let index = |m: &Monomial| -> Option<usize> {
        match m.eta {
            true if (m.x as usize) < odd => Some(m.x as usize),
            false if (m.x as usize) < even => Some(odd + m.x as usize),
            _ => None,
        }
    };
    let monomial_of = |i: usize| -> Monomial {
        if i < odd {
            Monomial::new(i as u32, true, 0, false)
        } else {
            Monomial::x_pow((i - odd) as u32)
        }
    };

    let mut d = Matrix::zeros(dim, dim);
    let dm = d_matrix(cap);
    for k in 0..odd {
        for j in 0..even {
            d.set(odd + j, k, dm.get(j, k).clone());
        }
    }

    let mut product = BTreeMap::new();
    for i in 0..dim {
        for j in 0..dim {
            let v = &GradedPoly::monomial(monomial_of(i)) * &GradedPoly::monomial(monomial_of(j));
            let mut vec = vec![Rational::zero(); dim];
            let mut inside = true;
            for (m, c) in v.terms() {
                match index(m) {
                    Some(idx) => vec[idx] = c.clone(),
                    None => inside = false,
                }
            }
            if inside {
                product.insert((i, j), vec);
            }
        }
    }

    let expectation_vec = (0..dim)
        .map(|i| expectation(&GradedPoly::monomial(monomial_of(i))))
        .collect();
    TruncatedSpace::new(basis, d, product, expectation_vec, odd).expect("gaussian truncation is consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn p(s: &str) -> GradedPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn differential_examples() {
        assert_eq!(d_poly(&p("eta")), p("-x"));
        assert_eq!(d_poly(&p("x*eta")), p("1 - x^2"));
        assert!(d_poly(&p("x^5")).is_zero());
        let v = GaussElement::try_from(&p("x^2 + x*eta")).unwrap();
        assert_eq!(gauss_d(&v).to_poly(), p("1 - x^2"));
        assert!(gauss_d(&gauss_d(&v)).to_poly().is_zero());
    }

    #[test]
    fn expectation_examples() {
        assert_eq!(expectation(&p("1")), int(1));
        assert_eq!(expectation(&p("x^4")), int(3));
        assert_eq!(expectation(&p("x^7 + 2*eta")), int(0));
        assert_eq!(moment(6), int(15));
        assert_eq!(gauss_e(&GaussElement::try_from(&p("x^2 + eta")).unwrap()), int(1));
    }

    #[test]
    fn primitives() {
        assert_eq!(y_n(1).unwrap(), p("-eta"));
        assert_eq!(y_n(2).unwrap(), p("-x*eta"));
        assert_eq!(y_n(3).unwrap(), p("-(x^2 + 2)*eta"));
        assert!(y_n(0).is_err());
        assert!(y_n_floor_half(1).is_zero());
        assert_eq!(y_n_floor_half(2), y_n(2).unwrap());
    }

    #[test]
    fn solve_h_examples() {
        assert_eq!(solve_h(&p("x^2 - 1")).unwrap(), p("-x*eta"));
        assert_eq!(solve_h(&p("x^3 - 3*x")).unwrap(), p("-(x^2 - 1)*eta"));
        match solve_h(&p("x^2")) {
            Err(Error::NotCentered { expectation, .. }) => assert_eq!(*expectation, int(1)),
            other => panic!("{other:?}"),
        }
        assert!(solve_h(&p("0")).unwrap().is_zero());
        assert!(solve_h(&p("eta")).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_n(&p("x"), &p("-x"), 1).unwrap(), p("x - 2*t*x - 2*eta*dt"));
        assert_eq!(lambda_n(&p("x"), &p("-x"), 2).unwrap(), p("x^2"));
        for n in 1..5 {
            assert_eq!(lambda_n(&p("x"), &p("x"), n).unwrap(), p("x").pow(n));
        }
        assert!(matches!(
            lambda_n(&p("x"), &p("x + 1"), 1),
            Err(Error::MomentMismatch { order: 1, .. })
        ));
    }

    #[test]
    fn big_h_examples() {
        let l1 = lambda_n(&p("x"), &p("-x"), 1).unwrap();
        assert_eq!(big_h_n(&p("x"), &p("-x"), 1).unwrap(), l1);
        let h2 = big_h_n(&p("x"), &p("-x"), 2).unwrap();
        assert_eq!(h2, p("x^2*(4*t - 4*t^2) + 4*x*(1 - 2*t)*eta*dt"));
        assert!(h2.eval_t(&int(0)).is_zero());
        assert!(matches!(
            big_h_n(&p("x"), &p("x^2"), 2),
            Err(Error::CumulantMismatch { order: 1, .. })
        ));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_homotopy(&p("x"), &p("-x"), 6).unwrap().passed());
        let r = verify_homotopy(&p("x"), &p("x + 1"), 2).unwrap();
        assert!(!r.passed());
        assert!(r
            .first_failure()
            .unwrap()
            .detail
            .as_ref()
            .unwrap()
            .starts_with("order 1"));
        assert!(verify_homotopy(&p("x^2 - x"), &p("x^2 - x"), 4).unwrap().passed());
        assert!(verify_homotopy(&p("x"), &p("-x"), 9).is_err());
    }

    #[test]
    fn generic_composition_matches_h_formula() {
        let homotopy = Homotopy::build(&p("x"), &p("-x"), 4).unwrap();
        let composed = homotopy.lambda_morphism().then(&CoalgMorphism::phi_inverse());
        for n in 1..=4 {
            assert_eq!(composed.component(&vec![Generator(0); n]), homotopy.components[n - 1]);
        }
    }

    #[test]
    fn truncation_shape() {
        let space = truncated_space(4);
        assert_eq!(space.dim(), 11);
        assert_eq!(d_matrix(4).rank(), 5);
    }
}
