//! Chevalley-Eilenberg complexes `S(g[-1])^* (x) V` of a Lie algebra action.
//!
//! An element is a sum of `eta_I (x) v_I` over square-free monomials
//! `eta_I`, stored by bitmask. The differential is
//!
//! `d = sum_i d/d eta_i (x) rho_i + sum_{i<j} f_ij^k eta_k d/d eta_j d/d eta_i`
//!
//! with left derivatives, `d/d eta_i` applied first in the second term. That
//! ordering is the one for which `d^2 = 0` on genuine representations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::algebra::{parse_rational, GradedPoly, Monomial, Rational};
use crate::chain::LinearOperator;
use crate::error::{Error, Result};
use crate::gaussian;
use crate::linalg::{dot, greedy_extend, Matrix, Vector};
use crate::report::Report;

/// Largest Lie algebra dimension accepted; the exterior algebra has `2^n`
/// summands.
pub const MAX_LIE_DIM: usize = 6;

pub const COINVARIANTS_NOTE: &str =
    "H^0 is computed as V / (sum_i im rho_i), the co-invariants; written V/V_g in some sources";

/// Structure constants `[l_i, l_j] = sum_k f[i][j][k] l_k`, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    dim: usize,
    f: Vec<Vec<BTreeMap<usize, Rational>>>,
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::Inconsistent(msg.into())
}

impl LieAlgebraData {
    /// `f[i][j]` lists `(k, f_ij^k)`; repeated `k` accumulate.
    pub fn new(dim: usize, f: Vec<Vec<Vec<(usize, Rational)>>>) -> Result<Self> {
        if dim == 0 || dim > MAX_LIE_DIM {
            return Err(Error::ArityOutOfRange {
                what: "Lie algebra dimension",
                got: dim,
                min: 1,
                max: MAX_LIE_DIM,
            });
        }
        if f.len() != dim || f.iter().any(|row| row.len() != dim) {
            return Err(inconsistent(format!("structure constants must be {dim}x{dim}")));
        }
        let mut sparse = vec![vec![BTreeMap::new(); dim]; dim];
        for (i, row) in f.into_iter().enumerate() {
            for (j, entries) in row.into_iter().enumerate() {
                for (k, c) in entries {
                    if k >= dim {
                        return Err(inconsistent(format!("f[{i}][{j}] names generator {k} of {dim}")));
                    }
                    let slot: &mut Rational = sparse[i][j].entry(k).or_insert_with(Rational::zero);
                    *slot += c;
                }
                sparse[i][j].retain(|_, c: &mut Rational| !c.is_zero());
            }
        }
        Ok(LieAlgebraData { dim, f: sparse })
    }

    pub fn abelian(dim: usize) -> Result<Self> {
        Self::new(dim, vec![vec![Vec::new(); dim]; dim])
    }

    /// `so(3)`: `f_ij^k = epsilon_ijk`.
    pub fn so3() -> Self {
        let mut f = vec![vec![Vec::new(); 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            f[i][j].push((k, Rational::one()));
            f[j][i].push((k, -Rational::one()));
        }
        Self::new(3, f).expect("so(3) constants are well formed")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.f[i][j].get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn bracket_terms(&self, i: usize, j: usize) -> impl Iterator<Item = (&usize, &Rational)> {
        self.f[i][j].iter()
    }
}

/// Antisymmetry and the Jacobi identity, exactly.
pub fn validate_lie(lie: &LieAlgebraData) -> Report {
    let n = lie.dim;
    let mut report = Report::new(format!("Lie algebra of dimension {n}"));
    let mut witness = None;
    'anti: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if lie.constant(i, j, k) != -lie.constant(j, i, k) {
                    witness = Some(format!(
                        "f_{}{}^{} = {}, f_{}{}^{} = {}",
                        i + 1,
                        j + 1,
                        k + 1,
                        lie.constant(i, j, k),
                        j + 1,
                        i + 1,
                        k + 1,
                        lie.constant(j, i, k)
                    ));
                    break 'anti;
                }
            }
        }
    }
    match witness {
        Some(w) => report.fail("antisymmetry", w),
        None => report.pass("antisymmetry"),
    }

    let mut witness = None;
    'jacobi: for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for p in 0..n {
                    let mut sum = Rational::zero();
                    for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
                        for m in 0..n {
                            sum += lie.constant(a, b, m) * lie.constant(m, c, p);
                        }
                    }
                    if !sum.is_zero() {
                        witness = Some(format!(
                            "generators ({}, {}, {}), component {}: {sum}",
                            i + 1,
                            j + 1,
                            l + 1,
                            p + 1
                        ));
                        break 'jacobi;
                    }
                }
            }
        }
    }
    match witness {
        Some(w) => report.fail("Jacobi identity", w),
        None => report.pass("Jacobi identity"),
    }
    report
}

/// A module for a Lie algebra: `n` operators on `V` plus an expectation,
/// with a notion of truncation of `V` at a level `cap`.
pub trait LieModule {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn operator_count(&self) -> usize;
    fn act(&self, i: usize, v: &Self::Elem) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn add_scaled(&self, acc: &mut Self::Elem, c: &Rational, v: &Self::Elem);
    fn is_zero(&self, v: &Self::Elem) -> bool;
    fn expectation(&self, v: &Self::Elem) -> Rational;
    /// Basis of the truncation of `V` at `cap`.
    fn basis(&self, cap: usize) -> Vec<Self::Elem>;
    /// Coordinates in [`LieModule::basis`] at `cap`; `None` outside it.
    fn coordinates(&self, v: &Self::Elem, cap: usize) -> Option<Vector>;
    fn describe(&self, v: &Self::Elem) -> String;
}

/// Operators on `C[x]`; truncation at `cap` is `deg <= cap`.
#[derive(Clone)]
pub struct PolynomialAction {
    pub name: String,
    operators: Vec<LinearOperator>,
    expectation: Arc<dyn Fn(&GradedPoly) -> Rational + Send + Sync>,
}

impl fmt::Debug for PolynomialAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolynomialAction({}, {} operators)", self.name, self.operators.len())
    }
}

impl PolynomialAction {
    pub fn new<E>(name: impl Into<String>, operators: Vec<LinearOperator>, expectation: E) -> Self
    where
        E: Fn(&GradedPoly) -> Rational + Send + Sync + 'static,
    {
        PolynomialAction {
            name: name.into(),
            operators,
            expectation: Arc::new(expectation),
        }
    }

    /// `n` copies of the translation generator `rho(f) = f' - x f` with the
    /// Gaussian expectation.
    pub fn gaussian_translation(n: usize) -> Self {
        let rho = LinearOperator::new("rho", 0, |f: &GradedPoly| &f.d_dx() - &(&GradedPoly::x() * f));
        Self::new("gaussian-translation", vec![rho; n], gaussian::expectation)
    }
}

impl LieModule for PolynomialAction {
    type Elem = GradedPoly;

    fn operator_count(&self) -> usize {
        self.operators.len()
    }

    fn act(&self, i: usize, v: &GradedPoly) -> GradedPoly {
        self.operators[i].apply(v)
    }

    fn zero(&self) -> GradedPoly {
        GradedPoly::zero()
    }

    fn add_scaled(&self, acc: &mut GradedPoly, c: &Rational, v: &GradedPoly) {
        *acc += v.scale(c);
    }

    fn is_zero(&self, v: &GradedPoly) -> bool {
        v.is_zero()
    }

    fn expectation(&self, v: &GradedPoly) -> Rational {
        (self.expectation)(v)
    }

    fn basis(&self, cap: usize) -> Vec<GradedPoly> {
        (0..=cap as u32).map(GradedPoly::x_pow).collect()
    }

    fn coordinates(&self, v: &GradedPoly, cap: usize) -> Option<Vector> {
        if !v.is_x_only() || v.x_degree().is_some_and(|d| d as usize > cap) {
            return None;
        }
        Some((0..=cap as u32).map(|k| v.coefficient(&Monomial::x_pow(k))).collect())
    }

    fn describe(&self, v: &GradedPoly) -> String {
        v.to_string()
    }
}

/// Matrices on `Q^m`: `matrices[i][r][c]` is the coefficient of `e_r` in
/// `rho_i(e_c)`. Truncation does not apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAction {
    matrices: Vec<Matrix>,
    expectation: Vector,
}

impl MatrixAction {
    pub fn new(matrices: Vec<Matrix>, expectation: Vector) -> Result<Self> {
        let m = expectation.len();
        if m == 0 {
            return Err(inconsistent("module has dimension 0"));
        }
        if let Some(i) = matrices.iter().position(|a| a.rows() != m || a.cols() != m) {
            return Err(inconsistent(format!("matrix {i} is not {m}x{m}")));
        }
        Ok(MatrixAction { matrices, expectation })
    }

    /// Zero action of `n` generators on `Q^m` with expectation `e_1^*`.
    pub fn zero_action(n: usize, m: usize) -> Self {
        let mut e = vec![Rational::zero(); m];
        e[0] = Rational::one();
        MatrixAction {
            matrices: vec![Matrix::zeros(m, m); n],
            expectation: e,
        }
    }

    /// The standard representation of `so(3)`, `(L_i)_{jk} = -epsilon_ijk`,
    /// optionally plus a trivial summand carrying the expectation.
    pub fn so3_standard(with_trivial: bool) -> Self {
        let m = if with_trivial { 4 } else { 3 };
        let mut matrices = vec![Matrix::zeros(m, m); 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            // epsilon_ijk = 1 on cyclic triples
            matrices[i].set(j, k, -Rational::one());
            matrices[i].set(k, j, Rational::one());
        }
        let mut expectation = vec![Rational::zero(); m];
        if with_trivial {
            expectation[3] = Rational::one();
        }
        MatrixAction { matrices, expectation }
    }

    pub fn dim(&self) -> usize {
        self.expectation.len()
    }
}

impl LieModule for MatrixAction {
    type Elem = Vector;

    fn operator_count(&self) -> usize {
        self.matrices.len()
    }

    fn act(&self, i: usize, v: &Vector) -> Vector {
        self.matrices[i].apply(v)
    }

    fn zero(&self) -> Vector {
        vec![Rational::zero(); self.dim()]
    }

    fn add_scaled(&self, acc: &mut Vector, c: &Rational, v: &Vector) {
        crate::linalg::axpy(acc, c, v);
    }

    fn is_zero(&self, v: &Vector) -> bool {
        v.iter().all(Zero::is_zero)
    }

    fn expectation(&self, v: &Vector) -> Rational {
        dot(&self.expectation, v)
    }

    fn basis(&self, _cap: usize) -> Vec<Vector> {
        (0..self.dim())
            .map(|i| crate::linalg::unit_vector(self.dim(), i))
            .collect()
    }

    fn coordinates(&self, v: &Vector, _cap: usize) -> Option<Vector> {
        Some(v.clone())
    }

    fn describe(&self, v: &Vector) -> String {
        let parts: Vec<String> = v.iter().map(Rational::to_string).collect();
        format!("({})", parts.join(", "))
    }
}

/// `sum_I eta_I (x) v_I`, keyed by the bitmask of `I`.
#[derive(Clone, Debug, PartialEq)]
pub struct CeElement<E> {
    terms: BTreeMap<u32, E>,
}

impl<E: Clone> CeElement<E> {
    pub fn zero() -> Self {
        CeElement { terms: BTreeMap::new() }
    }

    pub fn single(mask: u32, v: E) -> Self {
        CeElement {
            terms: BTreeMap::from([(mask, v)]),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &E)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn part(&self, mask: u32) -> Option<&E> {
        self.terms.get(&mask)
    }
}

fn below(mask: u32, i: usize) -> u32 {
    (mask & ((1u32 << i) - 1)).count_ones()
}

/// Left derivative `d/d eta_i`: `None` if `eta_i` is absent, otherwise the
/// remaining mask and whether the sign is negative.
fn derivative(mask: u32, i: usize) -> Option<(u32, bool)> {
    (mask & (1 << i) != 0).then(|| (mask & !(1 << i), below(mask, i) % 2 == 1))
}

/// Left multiplication by `eta_k`.
fn left_multiply(mask: u32, k: usize) -> Option<(u32, bool)> {
    (mask & (1 << k) == 0).then(|| (mask | (1 << k), below(mask, k) % 2 == 1))
}

fn eta_label(mask: u32) -> String {
    if mask == 0 {
        return "1".into();
    }
    let parts: Vec<String> = (0..32)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| format!("eta{}", i + 1))
        .collect();
    parts.join("*")
}

/// The CE complex of a Lie algebra acting on a module. Degree `-k` is
/// truncated at module level `D + (n - k)`, so the differential maps each
/// truncated degree into the next.
pub struct CeComplex<'a, M: LieModule> {
    lie: &'a LieAlgebraData,
    module: &'a M,
}

impl<'a, M: LieModule> CeComplex<'a, M> {
    pub fn new(lie: &'a LieAlgebraData, module: &'a M) -> Result<Self> {
        if module.operator_count() != lie.dim() {
            return Err(inconsistent(format!(
                "{} operators for a Lie algebra of dimension {}",
                module.operator_count(),
                lie.dim()
            )));
        }
        Ok(CeComplex { lie, module })
    }

    pub fn n(&self) -> usize {
        self.lie.dim()
    }

    fn add(&self, out: &mut CeElement<M::Elem>, mask: u32, negative: bool, c: &Rational, v: &M::Elem) {
        let c = if negative { -c.clone() } else { c.clone() };
        let slot = out.terms.entry(mask).or_insert_with(|| self.module.zero());
        self.module.add_scaled(slot, &c, v);
        if self.module.is_zero(slot) {
            out.terms.remove(&mask);
        }
    }

    pub fn d(&self, x: &CeElement<M::Elem>) -> CeElement<M::Elem> {
        let n = self.n();
        let one = Rational::one();
        let mut out = CeElement::zero();
        for (&mask, v) in x.terms() {
            for i in 0..n {
                if let Some((rest, neg)) = derivative(mask, i) {
                    let image = self.module.act(i, v);
                    self.add(&mut out, rest, neg, &one, &image);
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    let Some((m1, s1)) = derivative(mask, i) else { continue };
                    let Some((m2, s2)) = derivative(m1, j) else { continue };
                    for (&k, c) in self.lie.bracket_terms(i, j) {
                        if let Some((m3, s3)) = left_multiply(m2, k) {
                            self.add(&mut out, m3, s1 ^ s2 ^ s3, c, v);
                        }
                    }
                }
            }
        }
        out
    }

    /// Module level of degree `-k` at truncation `trunc`.
    pub fn cap(&self, k: usize, trunc: usize) -> usize {
        trunc + (self.n() - k)
    }

    fn masks(&self, k: usize) -> Vec<u32> {
        (0u32..(1 << self.n()))
            .filter(|m| m.count_ones() as usize == k)
            .collect()
    }

    /// Basis of degree `-k`: every `eta_I`, `|I| = k`, times every module
    /// basis element at the level of that degree.
    pub fn chain_basis(&self, k: usize, trunc: usize) -> Vec<CeElement<M::Elem>> {
        let module_basis = self.module.basis(self.cap(k, trunc));
        self.masks(k)
            .into_iter()
            .flat_map(|m| module_basis.iter().map(move |b| CeElement::single(m, b.clone())))
            .collect()
    }

    fn coordinates(&self, x: &CeElement<M::Elem>, k: usize, trunc: usize) -> Result<Vector> {
        let cap = self.cap(k, trunc);
        let width = self.module.basis(cap).len();
        let masks = self.masks(k);
        let mut out = vec![Rational::zero(); masks.len() * width];
        for (&mask, v) in x.terms() {
            let slot = masks
                .iter()
                .position(|&m| m == mask)
                .ok_or_else(|| inconsistent(format!("{} is not in degree -{k}", eta_label(mask))))?;
            let coords = self
                .module
                .coordinates(v, cap)
                .ok_or_else(|| Error::TruncationLeak(format!("{} leaves level {cap}", self.module.describe(v))))?;
            for (i, c) in coords.into_iter().enumerate() {
                out[slot * width + i] = c;
            }
        }
        Ok(out)
    }

    /// `d : C^{-k} -> C^{-k+1}` at the truncation, for `1 <= k <= n`.
    pub fn differential_matrix(&self, k: usize, trunc: usize) -> Result<Matrix> {
        let columns = self
            .chain_basis(k, trunc)
            .iter()
            .map(|b| self.coordinates(&self.d(b), k - 1, trunc))
            .collect::<Result<Vec<_>>>()?;
        let rows = self.masks(k - 1).len() * self.module.basis(self.cap(k - 1, trunc)).len();
        Ok(Matrix::from_columns(&columns, rows))
    }

    /// `dim H^{-k}` for `0 <= k <= n`, keyed by the degree `-k`.
    pub fn cohomology(&self, trunc: usize) -> Result<BTreeMap<i32, usize>> {
        let n = self.n();
        let ranks: Vec<usize> = (1..=n)
            .map(|k| self.differential_matrix(k, trunc).map(|m| m.rank()))
            .collect::<Result<_>>()?;
        let mut out = BTreeMap::new();
        for k in 0..=n {
            let dim = self.chain_basis(k, trunc).len();
            let outgoing = if k == 0 { 0 } else { ranks[k - 1] };
            let incoming = if k == n { 0 } else { ranks[k] };
            out.insert(-(k as i32), dim - outgoing - incoming);
        }
        Ok(out)
    }

    /// `d(d(b)) = 0` for every basis element `b` of every degree.
    pub fn check_d_squared(&self, trunc: usize) -> Report {
        let mut report = Report::new("d^2 = 0 on the truncated basis");
        for k in 0..=self.n() {
            for b in self.chain_basis(k, trunc) {
                let dd = self.d(&self.d(&b));
                if !dd.is_zero() {
                    report.fail(
                        "d^2 = 0",
                        format!("d^2({}) = {}", self.describe(&b), self.describe(&dd)),
                    );
                    return report;
                }
            }
        }
        report.pass("d^2 = 0");
        report
    }

    pub fn describe(&self, x: &CeElement<M::Elem>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = x
            .terms()
            .map(|(&m, v)| format!("{} (x) {}", eta_label(m), self.module.describe(v)))
            .collect();
        parts.join(" + ")
    }
}

/// `rho_i rho_j - rho_j rho_i = sum_k f_ij^k rho_k` on the module basis at
/// level `cap`.
pub fn check_representation<M: LieModule>(lie: &LieAlgebraData, module: &M, cap: usize) -> Report {
    let mut report = Report::new("representation property");
    let n = lie.dim();
    if module.operator_count() != n {
        report.fail(
            "representation property",
            format!("{} operators for dimension {n}", module.operator_count()),
        );
        return report;
    }
    for v in module.basis(cap) {
        for i in 0..n {
            for j in i + 1..n {
                let mut lhs = module.act(i, &module.act(j, &v));
                module.add_scaled(&mut lhs, &-Rational::one(), &module.act(j, &module.act(i, &v)));
                for (&k, c) in lie.bracket_terms(i, j) {
                    module.add_scaled(&mut lhs, &-c.clone(), &module.act(k, &v));
                }
                if !module.is_zero(&lhs) {
                    report.fail(
                        "representation property",
                        format!(
                            "[rho_{}, rho_{}] on {} differs by {}",
                            i + 1,
                            j + 1,
                            module.describe(&v),
                            module.describe(&lhs)
                        ),
                    );
                    return report;
                }
            }
        }
    }
    report.pass("representation property");
    report
}

/// Dimension of `V / sum_i im rho_i` at the truncation and representatives
/// chosen greedily from the module basis.
pub fn ce_h0<M: LieModule>(lie: &LieAlgebraData, module: &M, trunc: usize) -> Result<(usize, Vec<M::Elem>)> {
    let complex = CeComplex::new(lie, module)?;
    let cap0 = complex.cap(0, trunc);
    let cap1 = complex.cap(1, trunc);
    let width = module.basis(cap0).len();
    let mut images = Vec::new();
    for v in module.basis(cap1) {
        for i in 0..lie.dim() {
            let image = module.act(i, &v);
            let coords = module
                .coordinates(&image, cap0)
                .ok_or_else(|| Error::TruncationLeak(format!("{} leaves level {cap0}", module.describe(&image))))?;
            images.push(coords);
        }
    }
    let candidates = module.basis(cap0);
    let candidate_coords: Vec<Vector> = candidates
        .iter()
        .map(|c| module.coordinates(c, cap0).expect("basis lies in its level"))
        .collect();
    let chosen = greedy_extend(&images, &candidate_coords, width);
    let reps: Vec<M::Elem> = chosen.into_iter().map(|i| candidates[i].clone()).collect();
    Ok((reps.len(), reps))
}

/// Outcome of [`check_cone_conditions`].
#[derive(Clone, Debug)]
pub struct ConeConditions {
    pub report: Report,
    pub cohomology: BTreeMap<i32, usize>,
    pub is_algebraic_cone: bool,
}

/// Representation property, `d^2 = 0`, and the three cone conditions:
/// (a) `E` extended by zero on positive `eta` content is a chain map,
/// (b) `H^0 = Q` via `E`, (c) `H^{-i} = 0` for `1 <= i <= n`.
pub fn check_cone_conditions<M: LieModule>(lie: &LieAlgebraData, module: &M, trunc: usize) -> Result<ConeConditions> {
    let complex = CeComplex::new(lie, module)?;
    let n = lie.dim();
    let mut report = Report::new(format!("Chevalley-Eilenberg complex, dim g = {n}, truncation {trunc}"));
    report.merge(validate_lie(lie));
    report.merge(check_representation(lie, module, complex.cap(0, trunc)));
    report.merge(complex.check_d_squared(trunc));

    let mut witness = None;
    'a: for v in module.basis(complex.cap(1, trunc)) {
        for i in 0..n {
            let e = module.expectation(&module.act(i, &v));
            if !e.is_zero() {
                witness = Some(format!("E(rho_{}({})) = {e}", i + 1, module.describe(&v)));
                break 'a;
            }
        }
    }
    match witness {
        Some(w) => report.fail("(a) expectation is a chain map", w),
        None => report.pass("(a) expectation is a chain map"),
    }

    let cohomology = complex.cohomology(trunc)?;
    let h0 = cohomology[&0];
    let (_, reps) = ce_h0(lie, module, trunc)?;
    let detected = reps.iter().any(|r| !module.expectation(r).is_zero());
    if h0 == 1 && detected {
        report.pass("(b) H^0 = Q via E");
    } else if h0 != 1 {
        report.fail("(b) H^0 = Q via E", format!("H^0 has dimension {h0}"));
    } else {
        report.fail("(b) H^0 = Q via E", "E vanishes on H^0");
    }
    report.note(COINVARIANTS_NOTE);

    let nonzero: Vec<String> = cohomology
        .iter()
        .filter(|(&deg, &r)| deg < 0 && r != 0)
        .map(|(deg, r)| format!("H^{deg} has dimension {r}"))
        .collect();
    if nonzero.is_empty() {
        report.pass("(c) H^-i = 0 for 1 <= i <= n");
    } else {
        report.fail("(c) H^-i = 0 for 1 <= i <= n", nonzero.join("; "));
    }
    let is_algebraic_cone = report.passed();
    if is_algebraic_cone {
        report.note("the CE complex is an algebraic cone over V: a free extension with E a quasi-isomorphism");
    }
    Ok(ConeConditions {
        report,
        cohomology,
        is_algebraic_cone,
    })
}

/// The CE element of `C(g, C[x])` for `n = 1` as a polynomial in `x, eta`.
pub fn to_gaussian_poly(x: &CeElement<GradedPoly>) -> GradedPoly {
    let mut out = GradedPoly::zero();
    for (&mask, v) in x.terms() {
        match mask {
            0 => out += v.clone(),
            1 => out += v * &GradedPoly::eta(),
            _ => panic!("mask {mask} outside a one-dimensional algebra"),
        }
    }
    out
}

/// Wire format of a CE problem: structure constants as a flat row-major
/// list of `n*n` sparse entries `[[k, "p/q"], ..]`, plus the action.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CeInputJson {
    pub dim: usize,
    pub f: Vec<Vec<(usize, String)>>,
    pub action: ActionJson,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    #[serde(default)]
    pub symbolic: Option<String>,
    #[serde(default)]
    pub matrices: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default)]
    pub expectation: Option<Vec<String>>,
}

/// A parsed action.
#[derive(Clone, Debug)]
pub enum Action {
    Polynomial(PolynomialAction),
    Matrix(MatrixAction),
}

fn parse_field(s: &str, at: impl FnOnce() -> String) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| inconsistent(format!("{}: not a rational: {s:?}", at())))
}

impl CeInputJson {
    pub fn lie(&self) -> Result<LieAlgebraData> {
        let n = self.dim;
        if n == 0 || n > MAX_LIE_DIM {
            return Err(Error::ArityOutOfRange {
                what: "Lie algebra dimension",
                got: n,
                min: 1,
                max: MAX_LIE_DIM,
            });
        }
        if self.f.len() != n * n {
            return Err(inconsistent(format!(
                "/f: expected {} entries, got {}",
                n * n,
                self.f.len()
            )));
        }
        let mut f = vec![vec![Vec::new(); n]; n];
        for (idx, entries) in self.f.iter().enumerate() {
            for (e, (k, s)) in entries.iter().enumerate() {
                let c = parse_field(s, || format!("/f/{idx}/{e}/1"))?;
                f[idx / n][idx % n].push((*k, c));
            }
        }
        LieAlgebraData::new(n, f)
    }

    pub fn action(&self) -> Result<Action> {
        let a = &self.action;
        match (&a.symbolic, &a.matrices) {
            (Some(name), None) => {
                if a.expectation.is_some() {
                    return Err(inconsistent(
                        "/action/expectation: only matrix actions carry an expectation",
                    ));
                }
                if name != "gaussian-translation" {
                    return Err(inconsistent(format!("/action/symbolic: unknown action {name:?}")));
                }
                Ok(Action::Polynomial(PolynomialAction::gaussian_translation(self.dim)))
            }
            (None, Some(mats)) => {
                let e = a
                    .expectation
                    .as_ref()
                    .ok_or_else(|| inconsistent("/action/expectation: required for matrix actions"))?;
                let m = e.len();
                let expectation = e
                    .iter()
                    .enumerate()
                    .map(|(i, s)| parse_field(s, || format!("/action/expectation/{i}")))
                    .collect::<Result<Vec<_>>>()?;
                let mut matrices = Vec::with_capacity(mats.len());
                for (i, rows) in mats.iter().enumerate() {
                    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
                        return Err(inconsistent(format!("/action/matrices/{i}: expected {m}x{m}")));
                    }
                    let parsed = rows
                        .iter()
                        .enumerate()
                        .map(|(r, row)| {
                            row.iter()
                                .enumerate()
                                .map(|(c, s)| parse_field(s, || format!("/action/matrices/{i}/{r}/{c}")))
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    matrices.push(Matrix::from_rows(parsed, m));
                }
                if matrices.len() != self.dim {
                    return Err(inconsistent(format!(
                        "/action/matrices: expected {} matrices, got {}",
                        self.dim,
                        matrices.len()
                    )));
                }
                Ok(Action::Matrix(MatrixAction::new(matrices, expectation)?))
            }
            _ => Err(inconsistent(
                "/action: give exactly one of \"symbolic\" or \"matrices\"",
            )),
        }
    }
}
