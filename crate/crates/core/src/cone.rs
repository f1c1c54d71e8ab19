//! Finite truncations of probability spaces and the algebraic cone
//! `CV = V (+) K[1]`.
//!
//! Matrices act on column vectors of basis coordinates: `d[i][j]` is the
//! coefficient of basis element `i` in `d(e_j)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, Rational};
use crate::error::{Error, Result};
use crate::linalg::{dot, greedy_extend, rank_of, unit_vector, Matrix, Vector};
use crate::report::Report;
use crate::transport::cumulant_from_subset_moments;

/// Highest cumulant order checked by [`verify_cone`].
pub const MAX_CONE_CUMULANT_ORDER: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisElement {
    pub label: String,
    pub degree: i32,
}

/// A probability space cut down to finitely many basis elements. Products
/// missing from the table leave the truncation and are undefined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSpace {
    basis: Vec<BasisElement>,
    d: Matrix,
    product: BTreeMap<(usize, usize), Vector>,
    expectation: Vector,
    unit: usize,
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::Inconsistent(msg.into())
}

impl TruncatedSpace {
    /// Validates shapes, degrees, `d^2 = 0`, `E d = 0`, `E(1) = 1` and that
    /// the unit acts as the identity wherever its products are defined.
    pub fn new(
        basis: Vec<BasisElement>,
        d: Matrix,
        product: BTreeMap<(usize, usize), Vector>,
        expectation: Vector,
        unit: usize,
    ) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(inconsistent("empty basis"));
        }
        if d.rows() != n || d.cols() != n {
            return Err(inconsistent(format!(
                "d is {}x{}, basis has {n} elements",
                d.rows(),
                d.cols()
            )));
        }
        if expectation.len() != n {
            return Err(inconsistent(format!(
                "expectation has {} entries, basis has {n}",
                expectation.len()
            )));
        }
        if unit >= n {
            return Err(inconsistent(format!("unit index {unit} out of range")));
        }
        if basis[unit].degree != 0 {
            return Err(inconsistent("unit must have degree 0"));
        }
        for i in 0..n {
            for j in 0..n {
                if !d.get(i, j).is_zero() && basis[i].degree != basis[j].degree + 1 {
                    return Err(inconsistent(format!(
                        "d[{i}][{j}] links degree {} to degree {}",
                        basis[j].degree, basis[i].degree
                    )));
                }
            }
            if !expectation[i].is_zero() && basis[i].degree != 0 {
                return Err(inconsistent(format!(
                    "expectation nonzero on {} of degree {}",
                    basis[i].label, basis[i].degree
                )));
            }
        }
        for (&(i, j), v) in &product {
            if i >= n || j >= n || v.len() != n {
                return Err(inconsistent(format!("product entry ({i},{j}) has wrong shape")));
            }
            let deg = basis[i].degree + basis[j].degree;
            if let Some(k) = (0..n).find(|&k| !v[k].is_zero() && basis[k].degree != deg) {
                return Err(inconsistent(format!(
                    "product ({i},{j}) has a term {} outside degree {deg}",
                    basis[k].label
                )));
            }
        }
        let space = TruncatedSpace {
            basis,
            d,
            product,
            expectation,
            unit,
        };
        if !space.d.mul(&space.d).is_zero() {
            return Err(inconsistent("d^2 != 0"));
        }
        let ed = space.d.left_apply(&space.expectation);
        if let Some(j) = ed.iter().position(|v| !v.is_zero()) {
            return Err(inconsistent(format!("E(d({})) = {} != 0", space.basis[j].label, ed[j])));
        }
        if !space.expectation[unit].is_one() {
            return Err(inconsistent(format!("E(1) = {} != 1", space.expectation[unit])));
        }
        for j in 0..n {
            let e = unit_vector(n, j);
            for key in [(unit, j), (j, unit)] {
                if let Some(v) = space.product.get(&key) {
                    if *v != e {
                        return Err(inconsistent(format!(
                            "unit does not act as identity on {}",
                            space.basis[j].label
                        )));
                    }
                }
            }
        }
        Ok(space)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn differential(&self) -> &Matrix {
        &self.d
    }

    pub fn expectation_vector(&self) -> &[Rational] {
        &self.expectation
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn products(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.product
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut ds: Vec<i32> = self.basis.iter().map(|b| b.degree).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    fn indices_of_degree(&self, deg: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree == deg).collect()
    }

    pub fn expectation(&self, v: &[Rational]) -> Rational {
        dot(&self.expectation, v)
    }

    pub fn apply_d(&self, v: &[Rational]) -> Vector {
        self.d.apply(v)
    }

    /// Bilinear extension of the product table; `None` if a needed pair is
    /// undefined.
    pub fn multiply(&self, a: &[Rational], b: &[Rational]) -> Option<Vector> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let v = self.product.get(&(i, j))?;
                let c = ai * bj;
                for (o, x) in out.iter_mut().zip(v) {
                    if !x.is_zero() {
                        *o += &c * x;
                    }
                }
            }
        }
        Some(out)
    }

    /// Fraction of basis pairs with a defined product.
    pub fn product_coverage(&self) -> (usize, usize) {
        (self.product.len(), self.dim() * self.dim())
    }

    pub fn to_json(&self) -> TruncatedSpaceJson {
        let n = self.dim();
        TruncatedSpaceJson {
            basis: self.basis.clone(),
            d: (0..n)
                .map(|i| self.d.row(i).iter().map(Rational::to_string).collect())
                .collect(),
            product: self
                .product
                .iter()
                .map(|(&(i, j), v)| (format!("{i},{j}"), v.iter().map(Rational::to_string).collect()))
                .collect(),
            expectation: self.expectation.iter().map(Rational::to_string).collect(),
            unit: self.unit,
        }
    }
}

/// Wire format: rationals are `"p/q"` strings, product keys are `"i,j"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncatedSpaceJson {
    pub basis: Vec<BasisElement>,
    pub d: Vec<Vec<String>>,
    #[serde(default)]
    pub product: BTreeMap<String, Vec<String>>,
    pub expectation: Vec<String>,
    pub unit: usize,
}

fn rational_field(s: &str, at: impl FnOnce() -> String) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| inconsistent(format!("{}: not a rational: {s:?}", at())))
}

impl TryFrom<&TruncatedSpaceJson> for TruncatedSpace {
    type Error = Error;

    fn try_from(j: &TruncatedSpaceJson) -> Result<Self> {
        let n = j.basis.len();
        let mut rows = Vec::with_capacity(n);
        for (i, row) in j.d.iter().enumerate() {
            if row.len() != n {
                return Err(inconsistent(format!("/d/{i}: expected {n} entries, got {}", row.len())));
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(k, s)| rational_field(s, || format!("/d/{i}/{k}")))
                .collect::<Result<Vec<_>>>()?;
            rows.push(parsed);
        }
        if rows.len() != n {
            return Err(inconsistent(format!("/d: expected {n} rows, got {}", rows.len())));
        }
        let mut product = BTreeMap::new();
        for (key, v) in &j.product {
            let parsed_key = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| inconsistent(format!("/product/{key}: key must be \"i,j\"")))?;
            let vec = v
                .iter()
                .enumerate()
                .map(|(k, s)| rational_field(s, || format!("/product/{key}/{k}")))
                .collect::<Result<Vec<_>>>()?;
            product.insert(parsed_key, vec);
        }
        let expectation = j
            .expectation
            .iter()
            .enumerate()
            .map(|(k, s)| rational_field(s, || format!("/expectation/{k}")))
            .collect::<Result<Vec<_>>>()?;
        TruncatedSpace::new(
            j.basis.clone(),
            Matrix::from_rows(rows, n),
            product,
            expectation,
            j.unit,
        )
    }
}

/// `dim ker - dim im` in every degree present in the basis.
pub fn homology_ranks(space: &TruncatedSpace) -> BTreeMap<i32, usize> {
    let mut ranks = BTreeMap::new();
    for deg in space.degrees() {
        let cols = space.indices_of_degree(deg);
        let rows_up = space.indices_of_degree(deg + 1);
        let rank_out = space.d.select(&rows_up, &cols).rank();
        let rows = cols.clone();
        let cols_in = space.indices_of_degree(deg - 1);
        let rank_in = space.d.select(&rows, &cols_in).rank();
        ranks.insert(deg, cols.len() - rank_out - rank_in);
    }
    ranks
}

/// `V = H (+) B (+) B^`: `B` the image of `d`, `B^` basis elements mapped
/// isomorphically onto `B`, `H` a complement of `B` in `ker d` that starts
/// with the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub h: Vec<Vector>,
    pub b: Vec<Vector>,
    /// Indices of the basis elements spanning `B^`.
    pub b_hat: Vec<usize>,
}

impl Decomposition {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.h.len(), self.b.len(), self.b_hat.len())
    }
}

pub fn decompose(space: &TruncatedSpace) -> Decomposition {
    let n = space.dim();
    let mut h = Vec::new();
    let mut b = Vec::new();
    let mut b_hat = Vec::new();
    let mut images_by_degree: BTreeMap<i32, Vec<Vector>> = BTreeMap::new();
    let mut kernels_by_degree: BTreeMap<i32, Vec<Vector>> = BTreeMap::new();
    for deg in space.degrees() {
        let cols = space.indices_of_degree(deg);
        let rows = space.indices_of_degree(deg + 1);
        let block = space.d.select(&rows, &cols);
        let (_, pivots) = block.rref();
        for &p in &pivots {
            b_hat.push(cols[p]);
            images_by_degree
                .entry(deg + 1)
                .or_default()
                .push(space.d.column(cols[p]));
        }
        let kernel = block
            .kernel()
            .into_iter()
            .map(|v| {
                let mut full = vec![Rational::zero(); n];
                for (k, c) in cols.iter().zip(v) {
                    full[*k] = c;
                }
                full
            })
            .collect();
        kernels_by_degree.insert(deg, kernel);
    }
    for deg in space.degrees() {
        let images = images_by_degree.remove(&deg).unwrap_or_default();
        let mut candidates = Vec::new();
        if deg == 0 {
            candidates.push(unit_vector(n, space.unit));
        }
        candidates.extend(kernels_by_degree.remove(&deg).unwrap_or_default());
        for i in greedy_extend(&images, &candidates, n) {
            h.push(candidates[i].clone());
        }
        b.extend(images);
    }
    Decomposition { h, b, b_hat }
}

/// The algebraic cone on a truncated space together with its inclusion.
#[derive(Clone, Debug)]
pub struct ConeResult {
    pub source: TruncatedSpace,
    pub space: TruncatedSpace,
    /// `dim CV x dim V`, the identity on the first `dim V` coordinates.
    pub inclusion: Matrix,
    pub decomposition: Decomposition,
    /// `K = {h - E(h) 1}` for the non-unit vectors of `H`, in `V` coordinates.
    pub k: Vec<Vector>,
}

/// `CV = V (+) K[1]` with `d(s k) = k`, `s k . v = lambda(v) s k` where
/// `lambda` is the coordinate along `1` in `H (+) B (+) B^`, `s k . s k' = 0`,
/// and `E` extended by zero.
pub fn build_algebraic_cone(space: &TruncatedSpace) -> Result<ConeResult> {
    let n = space.dim();
    let decomposition = decompose(space);
    let unit = unit_vector(n, space.unit);
    let k: Vec<Vector> = decomposition
        .h
        .iter()
        .filter(|v| **v != unit)
        .map(|v| {
            let e = space.expectation(v);
            v.iter().zip(&unit).map(|(a, u)| a - &e * u).collect()
        })
        .collect();

    // coordinates along 1 in the basis [1, K, B, B^]
    let mut adapted: Vec<Vector> = vec![unit.clone()];
    adapted.extend(k.iter().cloned());
    adapted.extend(decomposition.b.iter().cloned());
    adapted.extend(decomposition.b_hat.iter().map(|&i| unit_vector(n, i)));
    if adapted.len() != n || rank_of(&adapted, n) != n {
        return Err(inconsistent(format!(
            "H + B + B^ has dimension {} in a space of dimension {n}",
            rank_of(&adapted, n)
        )));
    }
    let change = Matrix::from_columns(&adapted, n);
    let lambda: Vec<Rational> = (0..n)
        .map(|j| change.solve(&unit_vector(n, j)).expect("adapted basis is invertible")[0].clone())
        .collect();

    let m = k.len();
    let total = n + m;
    let mut basis = space.basis.clone();
    let k_degree = |v: &Vector| -> i32 {
        let i = v.iter().position(|c| !c.is_zero()).expect("nonzero homology vector");
        space.basis[i].degree
    };
    for (i, v) in k.iter().enumerate() {
        basis.push(BasisElement {
            label: format!("s(k{})", i + 1),
            degree: k_degree(v) - 1,
        });
    }

    let mut d = Matrix::zeros(total, total);
    for i in 0..n {
        for j in 0..n {
            d.set(i, j, space.d.get(i, j).clone());
        }
    }
    for (s, v) in k.iter().enumerate() {
        for (i, c) in v.iter().enumerate() {
            d.set(i, n + s, c.clone());
        }
    }

    let pad = |v: &Vector| -> Vector {
        let mut out = v.clone();
        out.resize(total, Rational::zero());
        out
    };
    let mut product: BTreeMap<(usize, usize), Vector> = space.product.iter().map(|(&key, v)| (key, pad(v))).collect();
    for s in 0..m {
        let sk = n + s;
        let sk_odd = basis[sk].degree % 2 != 0;
        for (j, lambda_j) in lambda.iter().enumerate().take(n) {
            let mut v = vec![Rational::zero(); total];
            v[sk] = lambda_j.clone();
            product.insert((sk, j), v.clone());
            if sk_odd && space.basis[j].degree % 2 != 0 {
                for c in v.iter_mut() {
                    *c = -c.clone();
                }
            }
            product.insert((j, sk), v);
        }
        for t in 0..m {
            product.insert((sk, n + t), vec![Rational::zero(); total]);
        }
    }

    let mut expectation = space.expectation.clone();
    expectation.resize(total, Rational::zero());
    let cone_space = TruncatedSpace::new(basis, d, product, expectation, space.unit)?;

    let mut inclusion = Matrix::zeros(total, n);
    for i in 0..n {
        inclusion.set(i, i, Rational::one());
    }
    Ok(ConeResult {
        source: space.clone(),
        space: cone_space,
        inclusion,
        decomposition,
        k,
    })
}

impl ConeResult {
    /// Negative control: drop `d(s k) = k`, so `K[1]` becomes closed and
    /// homology appears in its degree.
    pub fn without_shift_differential(&self) -> Result<ConeResult> {
        let n = self.source.dim();
        let mut d = self.space.d.clone();
        for s in 0..self.k.len() {
            for i in 0..n {
                d.set(i, n + s, Rational::zero());
            }
        }
        let space = TruncatedSpace::new(
            self.space.basis.clone(),
            d,
            self.space.product.clone(),
            self.space.expectation.clone(),
            self.space.unit,
        )?;
        Ok(ConeResult { space, ..self.clone() })
    }

    /// Negative control: `s k_i . k_j = s k_i` instead of zero. The
    /// inclusion stays an algebra map.
    pub fn with_product_not_zeroed(&self) -> ConeResult {
        let n = self.source.dim();
        let total = self.space.dim();
        let mut out = self.clone();
        for s in 0..self.k.len() {
            for j in 0..n {
                if !self.space.expectation[j].is_zero() || j == self.space.unit {
                    continue;
                }
                let mut v = vec![Rational::zero(); total];
                v[n + s] = Rational::one();
                out.space.product.insert((n + s, j), v.clone());
                out.space.product.insert((j, n + s), v);
            }
        }
        out
    }
}

/// Joint cumulant `k(a_{w_1}, .., a_{w_n})` of degree-zero elements of a
/// truncated space; products are taken left to right.
pub fn truncated_cumulant(space: &TruncatedSpace, elements: &[Vector], word: &[usize]) -> Result<Rational> {
    let n = word.len();
    crate::transport::enumerate_partitions(n)?;
    let mut products: Vec<Option<Vector>> = vec![None; 1 << n];
    let mut unit = vec![Rational::zero(); space.dim()];
    unit[space.unit] = Rational::one();
    products[0] = Some(unit);
    for mask in 1usize..(1 << n) {
        let top = usize::BITS - 1 - mask.leading_zeros();
        let rest = mask & !(1 << top);
        let prev = products[rest].as_ref().expect("smaller masks first");
        let next = space
            .multiply(prev, &elements[word[top as usize]])
            .ok_or_else(|| Error::TruncationLeak(format!("product of word {word:?} leaves the truncation")))?;
        products[mask] = Some(next);
    }
    let moments: Vec<Rational> = products
        .iter()
        .map(|p| space.expectation(p.as_ref().expect("all masks filled")))
        .collect();
    cumulant_from_subset_moments(n, &moments)
}

/// The five cone checks: injective inclusion, inclusion is an algebra map on
/// defined products, `E_CV incl = E_V`, homology of `CV` is one-dimensional
/// in degree 0 and zero elsewhere, and joint cumulants of `elements` (in `V`
/// coordinates) agree in `V` and `CV` through `max_order`.
pub fn verify_cone(cone: &ConeResult, elements: &[Vector], max_order: usize) -> Result<Report> {
    if max_order == 0 || max_order > MAX_CONE_CUMULANT_ORDER {
        return Err(Error::ArityOutOfRange {
            what: "cone cumulant order",
            got: max_order,
            min: 1,
            max: MAX_CONE_CUMULANT_ORDER,
        });
    }
    let v = &cone.source;
    let cv = &cone.space;
    let n = v.dim();
    if let Some(bad) = elements.iter().find(|e| e.len() != n) {
        return Err(inconsistent(format!(
            "test element has {} coordinates, V has {n}",
            bad.len()
        )));
    }
    let mut report = Report::new(format!("algebraic cone: dim V = {n}, dim CV = {}", cv.dim()));

    let rank = cone.inclusion.rank();
    report.record(
        "inclusion injective",
        rank == n,
        if rank == n {
            String::new()
        } else {
            format!("rank {rank} < {n}")
        },
    );

    let include = |x: &Vector| cone.inclusion.apply(x);
    let mut algebra_witness = None;
    for (&(i, j), prod) in v.products() {
        let lhs = include(prod);
        let rhs = cv.multiply(&include(&unit_vector(n, i)), &include(&unit_vector(n, j)));
        if rhs.as_ref() != Some(&lhs) {
            algebra_witness = Some(format!("{} * {}", v.basis()[i].label, v.basis()[j].label));
            break;
        }
    }
    let (defined, pairs) = v.product_coverage();
    report.note(format!("products defined on {defined} of {pairs} basis pairs of V"));
    match algebra_witness {
        Some(w) => report.fail("inclusion is an algebra map", w),
        None => report.pass("inclusion is an algebra map"),
    }

    let pulled = cone.inclusion.left_apply(cv.expectation_vector());
    let chain = cv.differential().left_apply(cv.expectation_vector());
    if pulled != v.expectation_vector() {
        report.fail("expectation factors through CV", "E_CV o incl != E_V");
    } else if let Some(j) = chain.iter().position(|c| !c.is_zero()) {
        report.fail(
            "expectation factors through CV",
            format!("E_CV(d {}) != 0", cv.basis()[j].label),
        );
    } else {
        report.pass("expectation factors through CV");
    }

    let ranks = homology_ranks(cv);
    let bad: Vec<String> = ranks
        .iter()
        .filter(|(&deg, &r)| r != usize::from(deg == 0))
        .map(|(deg, r)| format!("H^{deg} has rank {r}"))
        .collect();
    let ranks_text: Vec<String> = ranks.iter().map(|(d, r)| format!("{d}: {r}")).collect();
    report.note(format!("homology ranks of CV: {{{}}}", ranks_text.join(", ")));
    if bad.is_empty() {
        report.pass("CV is contractible");
    } else {
        report.fail("CV is contractible", bad.join("; "));
    }

    let included: Vec<Vector> = elements.iter().map(include).collect();
    let mut cumulant_witness = None;
    let mut words = 0usize;
    let mut skipped = 0usize;
    'words: for size in 1..=max_order {
        for word in multisets(elements.len(), size) {
            let a = match truncated_cumulant(v, elements, &word) {
                Err(Error::TruncationLeak(_)) => {
                    skipped += 1;
                    continue;
                }
                other => other?,
            };
            let b = truncated_cumulant(cv, &included, &word)?;
            words += 1;
            if a != b {
                cumulant_witness = Some(format!("word {word:?}: {a} in V, {b} in CV"));
                break 'words;
            }
        }
    }
    match cumulant_witness {
        Some(w) => report.fail("cumulants agree in V and CV", w),
        None => {
            report.pass("cumulants agree in V and CV");
            report.note(format!("{words} joint cumulants compared through order {max_order}"));
        }
    }
    if skipped > 0 {
        report.note(format!(
            "{skipped} words skipped: their products leave the truncation of V"
        ));
    }
    Ok(report)
}

fn multisets(n: usize, size: usize) -> Vec<Vec<usize>> {
    crate::transport::generator_words(n, size)
        .into_iter()
        .filter(|w| w.len() == size)
        .collect()
}

/// Ordinary probability space on `m` points with basis `1, delta_2, ..,
/// delta_m` (indicators of points `2..m`): `delta_i delta_j = [i = j]
/// delta_i`, `E(delta_i) = p_i`, `d = 0`.
pub fn ordinary_space(probabilities: &[Rational]) -> Result<TruncatedSpace> {
    let m = probabilities.len();
    if m == 0 {
        return Err(inconsistent("no points"));
    }
    if probabilities.iter().any(|p| *p <= Rational::zero()) {
        return Err(inconsistent("probabilities must be positive"));
    }
    let total: Rational = probabilities.iter().sum();
    if !total.is_one() {
        return Err(inconsistent(format!("probabilities sum to {total}")));
    }
    let mut basis = vec![BasisElement {
        label: "1".into(),
        degree: 0,
    }];
    basis.extend((2..=m).map(|i| BasisElement {
        label: format!("delta{i}"),
        degree: 0,
    }));
    let mut product = BTreeMap::new();
    for i in 0..m {
        product.insert((0, i), unit_vector(m, i));
        product.insert((i, 0), unit_vector(m, i));
        if i > 0 {
            product.insert((i, i), unit_vector(m, i));
            for j in 1..m {
                if j != i {
                    product.insert((i, j), vec![Rational::zero(); m]);
                }
            }
        }
    }
    let mut expectation = vec![Rational::one()];
    expectation.extend(probabilities[1..].iter().cloned());
    TruncatedSpace::new(basis, Matrix::zeros(m, m), product, expectation, 0)
}

/// All basis elements of degree zero, as coordinate vectors.
pub fn degree_zero_basis(space: &TruncatedSpace) -> Vec<Vector> {
    space
        .indices_of_degree(0)
        .into_iter()
        .map(|i| unit_vector(space.dim(), i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::gaussian::truncated_space;

    #[test]
    fn ordinary_decomposition_is_all_homology() {
        let v = ordinary_space(&[rat(1, 3), rat(1, 3), rat(1, 3)]).unwrap();
        let dec = decompose(&v);
        assert_eq!(dec.dims(), (3, 0, 0));
        assert_eq!(dec.h[0], unit_vector(3, 0));
    }

    #[test]
    fn gaussian_decomposition() {
        let v = truncated_space(4);
        let dec = decompose(&v);
        assert_eq!(dec.dims(), (1, 5, 5));
        assert_eq!(dec.h[0], unit_vector(v.dim(), v.unit()));
    }

    #[test]
    fn gaussian_homology() {
        let ranks = homology_ranks(&truncated_space(6));
        assert_eq!(ranks.get(&-1), Some(&0));
        assert_eq!(ranks.get(&0), Some(&1));
    }

    #[test]
    fn zero_differential_homology() {
        let v = ordinary_space(&vec![rat(1, 4); 4]).unwrap();
        assert_eq!(homology_ranks(&v).get(&0), Some(&4));
    }

    #[test]
    fn two_point_cone() {
        let v = ordinary_space(&[rat(1, 2), rat(1, 2)]).unwrap();
        let cone = build_algebraic_cone(&v).unwrap();
        assert_eq!(cone.space.dim(), 3);
        assert_eq!(cone.k, vec![vec![rat(-1, 2), int(1)]]);
        let ranks = homology_ranks(&cone.space);
        assert_eq!(ranks.get(&0), Some(&1));
        assert_eq!(ranks.get(&-1), Some(&0));
        let delta = unit_vector(2, 1);
        assert_eq!(
            truncated_cumulant(&v, std::slice::from_ref(&delta), &[0, 0]).unwrap(),
            rat(1, 4)
        );
        let incl = cone.inclusion.apply(&delta);
        assert_eq!(truncated_cumulant(&cone.space, &[incl], &[0, 0]).unwrap(), rat(1, 4));
        assert!(verify_cone(&cone, &[delta], 6).unwrap().passed());
    }

    #[test]
    fn three_point_cone() {
        let v = ordinary_space(&[rat(1, 2), rat(1, 4), rat(1, 4)]).unwrap();
        let cone = build_algebraic_cone(&v).unwrap();
        assert_eq!(cone.space.dim(), 5);
        assert!(verify_cone(&cone, &degree_zero_basis(&v), 4).unwrap().passed());
    }

    #[test]
    fn one_point_cone() {
        let v = ordinary_space(&[int(1)]).unwrap();
        let cone = build_algebraic_cone(&v).unwrap();
        assert_eq!(cone.space.dim(), 1);
        assert!(verify_cone(&cone, &degree_zero_basis(&v), 3).unwrap().passed());
    }

    #[test]
    fn gaussian_cone_is_itself() {
        let v = truncated_space(3);
        let cone = build_algebraic_cone(&v).unwrap();
        assert_eq!(cone.space.dim(), v.dim());
    }

    #[test]
    fn negative_controls() {
        let v = ordinary_space(&[rat(1, 2), rat(1, 2)]).unwrap();
        let cone = build_algebraic_cone(&v).unwrap();
        let elements = degree_zero_basis(&v);

        let tampered = cone.with_product_not_zeroed();
        let report = verify_cone(&tampered, &elements, 3).unwrap();
        assert!(report.check("inclusion is an algebra map").unwrap().passed);

        let broken = cone.without_shift_differential().unwrap();
        let report = verify_cone(&broken, &elements, 3).unwrap();
        assert!(report.check("inclusion is an algebra map").unwrap().passed);
        assert!(!report.check("CV is contractible").unwrap().passed);
    }

    #[test]
    fn validation() {
        assert!(ordinary_space(&[rat(1, 2), rat(1, 3)]).is_err());
        let v = ordinary_space(&[rat(1, 2), rat(1, 2)]).unwrap();
        let mut json = v.to_json();
        let back = TruncatedSpace::try_from(&json).unwrap();
        assert_eq!(back, v);
        json.expectation[0] = "2".into();
        assert!(TruncatedSpace::try_from(&json).is_err());
        let mut json = v.to_json();
        json.d[1][0] = "1".into();
        assert!(TruncatedSpace::try_from(&json).is_err());
    }
}
