//! Differentials, probability spaces and the axioms relating them.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{GradedPoly, Monomial, Rational};
use crate::gaussian;
use crate::report::Report;

type PolyFn = dyn Fn(&GradedPoly) -> GradedPoly + Send + Sync;
type ExpectationFn = dyn Fn(&GradedPoly) -> Rational + Send + Sync;

/// A linear map on polynomials that shifts degree by `degree_shift`.
#[derive(Clone)]
pub struct LinearOperator {
    name: String,
    apply: Arc<PolyFn>,
    degree_shift: i32,
}

impl LinearOperator {
    pub fn new<F>(name: impl Into<String>, degree_shift: i32, f: F) -> Self
    where
        F: Fn(&GradedPoly) -> GradedPoly + Send + Sync + 'static,
    {
        LinearOperator {
            name: name.into(),
            apply: Arc::new(f),
            degree_shift,
        }
    }

    pub fn zero(degree_shift: i32) -> Self {
        Self::new("0", degree_shift, |_| GradedPoly::zero())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree_shift(&self) -> i32 {
        self.degree_shift
    }

    pub fn apply(&self, v: &GradedPoly) -> GradedPoly {
        (self.apply)(v)
    }

    /// Extension to `V[t, dt]`:
    /// `D(v f) = (d v) f + (-1)^{|v|} v (df/dt) dt`
    /// where `v` is the `x, eta` part of a monomial and `f` its `t, dt` part.
    pub fn with_homotopy_parameter(&self) -> LinearOperator {
        assert_eq!(
            self.degree_shift, 1,
            "homotopy extension needs a degree +1 differential"
        );
        let inner = self.clone();
        LinearOperator::new(format!("{} + dt d/dt", self.name), 1, move |p| {
            p.map_monomials(|m, c| {
                let v = GradedPoly::term(c.clone(), Monomial { t: 0, dt: false, ..*m });
                let f = GradedPoly::monomial(Monomial::new(0, false, m.t, m.dt));
                let mut out = &inner.apply(&v) * &f;
                if !m.dt && m.t > 0 {
                    let df_dt = &f.d_dt() * &GradedPoly::dt();
                    let term = &v * &df_dt;
                    if m.eta {
                        out -= &term;
                    } else {
                        out += term;
                    }
                }
                out
            })
        })
    }
}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOperator({}, shift {})", self.name, self.degree_shift)
    }
}

/// Unital commutative homotopy probability space whose product is
/// [`GradedPoly`] multiplication.
#[derive(Clone)]
pub struct ProbabilitySpace {
    name: String,
    differential: LinearOperator,
    expectation: Arc<ExpectationFn>,
    unit: GradedPoly,
}

impl ProbabilitySpace {
    pub fn new<E>(name: impl Into<String>, differential: LinearOperator, expectation: E) -> Self
    where
        E: Fn(&GradedPoly) -> Rational + Send + Sync + 'static,
    {
        ProbabilitySpace {
            name: name.into(),
            differential,
            expectation: Arc::new(expectation),
            unit: GradedPoly::one(),
        }
    }

    /// `C[x, eta]` with `d(p + q eta) = q' - x q` and the Gaussian moments.
    pub fn homotopy_gaussian() -> Self {
        Self::new(
            "homotopy Gaussian",
            LinearOperator::new("d", 1, gaussian::d_poly),
            gaussian::expectation,
        )
    }

    /// The homotopy Gaussian differential with a prescribed moment table
    /// `E(x^n) = moments[n]`. Used to build deliberately broken spaces.
    ///
    /// # Panics
    /// When asked for a moment beyond the table.
    pub fn gaussian_with_moments(moments: Vec<Rational>) -> Self {
        Self::new(
            "homotopy Gaussian (custom moments)",
            LinearOperator::new("d", 1, gaussian::d_poly),
            moment_expectation(moments),
        )
    }

    /// Ordinary space `C[x]` with zero differential and `E(x^n) = moments[n]`.
    ///
    /// # Panics
    /// When asked for a moment beyond the table.
    pub fn ordinary_from_moments(moments: Vec<Rational>) -> Self {
        Self::new("ordinary C[x]", LinearOperator::zero(1), moment_expectation(moments))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn differential(&self) -> &LinearOperator {
        &self.differential
    }

    pub fn d(&self, v: &GradedPoly) -> GradedPoly {
        self.differential.apply(v)
    }

    pub fn expectation(&self, v: &GradedPoly) -> Rational {
        (self.expectation)(v)
    }

    pub fn unit(&self) -> &GradedPoly {
        &self.unit
    }

    /// The total differential on `V[t, dt]`.
    pub fn homotopy_differential(&self) -> LinearOperator {
        self.differential.with_homotopy_parameter()
    }
}

impl fmt::Debug for ProbabilitySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProbabilitySpace({})", self.name)
    }
}

fn moment_expectation(moments: Vec<Rational>) -> impl Fn(&GradedPoly) -> Rational + Send + Sync {
    move |v: &GradedPoly| {
        v.terms()
            .filter(|(m, _)| !m.eta && !m.dt && m.t == 0)
            .map(|(m, c)| {
                let moment = moments
                    .get(m.x as usize)
                    .unwrap_or_else(|| panic!("moment of order {} not supplied", m.x));
                c * moment
            })
            .fold(Rational::zero(), |acc, v| acc + v)
    }
}

/// Passes iff `d(d(v)) = 0` for every `v` in `test_set`; the first failing
/// element is the witness.
pub fn check_d_squared(space: &ProbabilitySpace, test_set: &[GradedPoly]) -> Report {
    let mut report = Report::new(format!("d^2 = 0 on {} ({} elements)", space.name(), test_set.len()));
    if test_set.is_empty() {
        report.fail("d squared", "empty test set");
        return report;
    }
    match test_set.iter().find(|v| !space.d(&space.d(v)).is_zero()) {
        Some(w) => report.fail(
            "d squared",
            format!("witness {w}: d(d({w})) = {}", space.d(&space.d(w))),
        ),
        None => report.pass("d squared"),
    }
    report
}

/// Passes iff `E(1) = 1` and `E(d(x^k eta)) = 0` for `k <= degree_bound`.
pub fn check_expectation_chain_map(space: &ProbabilitySpace, degree_bound: u32) -> Report {
    let mut report = Report::new(format!("E is a pointed chain map on {}", space.name()));
    let e1 = space.expectation(space.unit());
    report.record(
        "E(1) = 1",
        e1.is_one(),
        if e1.is_one() {
            String::new()
        } else {
            format!("E(1) = {e1}")
        },
    );
    let witness = (0..=degree_bound)
        .map(|k| GradedPoly::monomial(Monomial::new(k, true, 0, false)))
        .find(|v| !space.expectation(&space.d(v)).is_zero());
    match witness {
        Some(w) => {
            let dw = space.d(&w);
            report.fail(
                "E o d = 0",
                format!("witness {w}: E(d({w})) = E({dw}) = {}", space.expectation(&dw)),
            )
        }
        None => report.pass("E o d = 0"),
    }
    report
}

/// Checks that `alpha` is a morphism of probability spaces that also
/// respects products, on the given test set: `alpha d = d alpha`,
/// `E_W alpha = E_V`, `alpha(1) = 1`, `alpha(ab) = alpha(a) alpha(b)`.
pub fn check_algebra_morphism(
    alpha: &LinearOperator,
    source: &ProbabilitySpace,
    target: &ProbabilitySpace,
    test_set: &[GradedPoly],
) -> Report {
    let mut report = Report::new(format!(
        "{} : {} -> {} is an algebra morphism",
        alpha.name(),
        source.name(),
        target.name()
    ));
    let unit_ok = alpha.apply(source.unit()) == *target.unit();
    report.record("unit", unit_ok, if unit_ok { "" } else { "alpha(1) != 1" });

    let chain = test_set
        .iter()
        .find(|v| alpha.apply(&source.d(v)) != target.d(&alpha.apply(v)));
    match chain {
        Some(w) => report.fail("chain map", format!("witness {w}")),
        None => report.pass("chain map"),
    }

    let expect = test_set
        .iter()
        .find(|v| target.expectation(&alpha.apply(v)) != source.expectation(v));
    match expect {
        Some(w) => report.fail("expectation", format!("witness {w}")),
        None => report.pass("expectation"),
    }

    let mut product_witness = None;
    'outer: for a in test_set {
        for b in test_set {
            if alpha.apply(&(a * b)) != &alpha.apply(a) * &alpha.apply(b) {
                product_witness = Some(format!("({a}) * ({b})"));
                break 'outer;
            }
        }
    }
    match product_witness {
        Some(w) => report.fail("product", format!("witness {w}")),
        None => report.pass("product"),
    }
    report
}
