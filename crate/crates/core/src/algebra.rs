//! Finite-dimensional Z2-graded algebras over Q given by structure constants.
//!
//! An algebra is a basis with parities and a multiplication table
//! `b_i * b_j = sum_k c_ij^k b_k`. Structural checks (grading consistency,
//! power associativity, graded-simplicity, centrality) are exact decisions.
//! The generic trace is extracted from the minimal polynomial of the generic
//! element v = sum xi_i b_i over K(xi), computed fraction-free with Bareiss
//! determinants so no rational-function arithmetic is ever needed.

use crate::linalg::{QMatrix, SpanBuilder};
use crate::scalar::{parse_rat, Rat};
use crate::superpoly::{EvenVar, Parity, SuperPolynomial, VarNames};
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

/// Coordinate vector of an algebra element in the fixed basis.
pub type AlgebraElement = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    DimensionMismatch { expected: usize, got: usize },
    MissingUnit,
    NotPowerAssociative,
    /// The dependence solve for the minimal polynomial did not produce
    /// polynomial coefficients; reported rather than guessed around.
    DegenerateSolve(String),
    Malformed(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            AlgebraError::MissingUnit => write!(f, "algebra has no unit element"),
            AlgebraError::NotPowerAssociative => write!(f, "algebra is not power associative"),
            AlgebraError::DegenerateSolve(s) => write!(f, "degenerate trace solve: {s}"),
            AlgebraError::Malformed(s) => write!(f, "malformed algebra description: {s}"),
        }
    }
}

impl std::error::Error for AlgebraError {}

/// Finite-dimensional Z2-graded algebra by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    pub name: String,
    dim: usize,
    labels: Vec<String>,
    degrees: Vec<Parity>,
    unit: Option<Vec<Rat>>,
    /// `table[i][j]` lists the nonzero (k, c_ij^k).
    table: Vec<Vec<Vec<(usize, Rat)>>>,
}

impl GradedAlgebra {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        degrees: Vec<Parity>,
        unit: Option<Vec<Rat>>,
        triples: Vec<(usize, usize, usize, Rat)>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if degrees.len() != dim {
            return Err(AlgebraError::Malformed(format!(
                "degrees has length {}, expected {}",
                degrees.len(),
                dim
            )));
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(AlgebraError::Malformed(format!(
                    "unit has length {}, expected {}",
                    u.len(),
                    dim
                )));
            }
        }
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for (i, j, k, c) in triples {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::Malformed(format!(
                    "mul entry ({i},{j},{k}) out of range for dim {dim}"
                )));
            }
            if !c.is_zero() {
                table[i][j].push((k, c));
            }
        }
        for row in &mut table {
            for cell in row {
                cell.sort_by_key(|(k, _)| *k);
            }
        }
        Ok(GradedAlgebra {
            name: name.into(),
            dim,
            labels,
            degrees,
            unit,
            table,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> Parity {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[Parity] {
        &self.degrees
    }

    pub fn even_dim(&self) -> usize {
        self.degrees.iter().filter(|d| **d == Parity::Even).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim - self.even_dim()
    }

    pub fn unit(&self) -> Result<&Vec<Rat>, AlgebraError> {
        self.unit.as_ref().ok_or(AlgebraError::MissingUnit)
    }

    pub fn structure_constant_rows(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.table[i][j]
    }

    pub fn zero_elem(&self) -> AlgebraElement {
        vec![Rat::zero(); self.dim]
    }

    pub fn basis_elem(&self, i: usize) -> AlgebraElement {
        let mut v = self.zero_elem();
        v[i] = Rat::one();
        v
    }

    /// Bilinear extension of the structure constants.
    pub fn mul_elem(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        if a.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: a.len(),
            });
        }
        if b.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: b.len(),
            });
        }
        let mut out = self.zero_elem();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let f = ai.clone() * bj;
                for (k, c) in &self.table[i][j] {
                    out[*k] += f.clone() * c;
                }
            }
        }
        Ok(out)
    }

    /// Same bilinear extension with polynomial coordinates.
    pub fn mul_poly_vec(
        &self,
        a: &[SuperPolynomial],
        b: &[SuperPolynomial],
    ) -> Vec<SuperPolynomial> {
        assert_eq!(a.len(), self.dim);
        assert_eq!(b.len(), self.dim);
        let mut out = vec![SuperPolynomial::zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let prod = ai.mul(bj);
                for (k, c) in &self.table[i][j] {
                    out[*k] = out[*k].add(&prod.scale(c));
                }
            }
        }
        out
    }

    /// Checks the unit law `1 * b_j = b_j * 1 = b_j` for the stored unit.
    pub fn check_unit_law(&self) -> Result<bool, AlgebraError> {
        let u = self.unit()?.clone();
        for j in 0..self.dim {
            let b = self.basis_elem(j);
            if self.mul_elem(&u, &b)? != b || self.mul_elem(&b, &u)? != b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All `(i, j, k)` with `c_ij^k != 0` and `deg(b_k) != deg(b_i) + deg(b_j)`.
    pub fn check_graded(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let want = self.degrees[i].add(self.degrees[j]);
                for (k, _) in &self.table[i][j] {
                    if self.degrees[*k] != want {
                        bad.push((i, j, *k));
                    }
                }
            }
        }
        bad
    }

    /// Whether the multiplication is associative on all basis triples.
    pub fn is_associative(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let ij = self
                        .mul_elem(&self.basis_elem(i), &self.basis_elem(j))
                        .unwrap();
                    let jk = self
                        .mul_elem(&self.basis_elem(j), &self.basis_elem(k))
                        .unwrap();
                    let l = self.mul_elem(&ij, &self.basis_elem(k)).unwrap();
                    let r = self.mul_elem(&self.basis_elem(i), &jk).unwrap();
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The generic element v = sum xi_i b_i with xi_i = even variable i.
    pub fn generic_element(&self) -> Vec<SuperPolynomial> {
        (0..self.dim)
            .map(|i| SuperPolynomial::even_var(EvenVar(i as u32)))
            .collect()
    }

    /// Power associativity on the generic element (characteristic-0
    /// criterion): v v^2 = v^2 v and v^2 v^2 = (v^2 v) v identically.
    pub fn check_power_associative(&self) -> PowerAssocReport {
        let v = self.generic_element();
        let v2 = self.mul_poly_vec(&v, &v);
        let v2v = self.mul_poly_vec(&v2, &v);
        let vv2 = self.mul_poly_vec(&v, &v2);
        let third = v2v == vv2;
        let v2v2 = self.mul_poly_vec(&v2, &v2);
        let v2vv = self.mul_poly_vec(&v2v, &v);
        let fourth = v2v2 == v2vv;
        PowerAssocReport { third, fourth }
    }

    /// Closure of each homogeneous basis element under the multiplication
    /// algebra; graded-simple iff every closure is the whole space.
    pub fn check_graded_simple(&self) -> GradedSimpleReport {
        let mut closure_dims = Vec::with_capacity(self.dim);
        let mut witness = None;
        for i in 0..self.dim {
            let mut span = SpanBuilder::new(self.dim);
            span.insert(self.basis_elem(i));
            loop {
                let current: Vec<Vec<Rat>> = span.basis().to_vec();
                let mut grew = false;
                for v in &current {
                    for j in 0..self.dim {
                        let b = self.basis_elem(j);
                        grew |= span.insert(self.mul_elem(&b, v).unwrap());
                        grew |= span.insert(self.mul_elem(v, &b).unwrap());
                    }
                }
                if !grew {
                    break;
                }
            }
            closure_dims.push(span.rank());
            if span.rank() < self.dim && witness.is_none() {
                witness = Some(i);
            }
        }
        GradedSimpleReport {
            closure_dims,
            proper_ideal_from: witness,
        }
    }

    /// Solves for endomorphisms commuting with all left and right
    /// translations (the centroid), reporting both the full and the
    /// even-degree solution space dimensions.
    pub fn check_central(&self) -> CentroidReport {
        let n = self.dim;
        let unknowns = n * n; // Phi_{k,l}: phi(b_l) = sum_k Phi_{k,l} b_k
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                // phi(b_i b_j) = b_i phi(b_j)
                for k in 0..n {
                    let mut row = vec![Rat::zero(); unknowns];
                    for (m, c) in &self.table[i][j] {
                        row[k * n + m] += c.clone();
                    }
                    for l in 0..n {
                        for (kk, c) in &self.table[i][l] {
                            if *kk == k {
                                row[l * n + j] -= c.clone();
                            }
                        }
                    }
                    rows.push(row);
                }
                // phi(b_j b_i) = phi(b_j) b_i
                for k in 0..n {
                    let mut row = vec![Rat::zero(); unknowns];
                    for (m, c) in &self.table[j][i] {
                        row[k * n + m] += c.clone();
                    }
                    for l in 0..n {
                        for (kk, c) in &self.table[l][i] {
                            if *kk == k {
                                row[l * n + j] -= c.clone();
                            }
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let m = QMatrix::from_rows(rows.clone());
        let dim_full = unknowns - m.rank();

        // even part: force Phi_{k,l} = 0 when deg(b_k) != deg(b_l)
        let even_cols: Vec<usize> = (0..unknowns)
            .filter(|idx| self.degrees[idx / n] == self.degrees[idx % n])
            .collect();
        let even_rows: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| even_cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        let me = QMatrix::from_rows(even_rows);
        let dim_even = even_cols.len() - me.rank();

        CentroidReport { dim_full, dim_even }
    }

    /// Minimal polynomial of the generic element and the generic trace.
    pub fn generic_minimal_polynomial(&self) -> Result<GenericTraceData, AlgebraError> {
        let pa = self.check_power_associative();
        if !pa.pass() {
            return Err(AlgebraError::NotPowerAssociative);
        }
        let unit = self.unit()?;
        let n = self.dim;
        let unit_vec: Vec<SuperPolynomial> = unit
            .iter()
            .map(|c| SuperPolynomial::constant(c.clone()))
            .collect();
        let v = self.generic_element();

        // powers v^0, v^1, ... as columns, left-normed bracketing
        let mut powers: Vec<Vec<SuperPolynomial>> = vec![unit_vec, v.clone()];
        let s = loop {
            let k = powers.len() - 1; // highest computed exponent
            if columns_dependent(&powers) {
                break k;
            }
            if k == n {
                return Err(AlgebraError::DegenerateSolve(
                    "no dependence among generic powers up to the dimension".into(),
                ));
            }
            let next = self.mul_poly_vec(powers.last().unwrap(), &v);
            powers.push(next);
        };

        // Solve v^s = d_{s-1} v^{s-1} + ... + d_0 v^0 by Cramer on a row
        // subset with nonzero determinant, fraction-free.
        let cols: Vec<&Vec<SuperPolynomial>> = powers[..s].iter().collect();
        let rhs = &powers[s];
        let rows = find_invertible_rows(&cols, n, s).ok_or_else(|| {
            AlgebraError::DegenerateSolve("no invertible row subset for the dependence".into())
        })?;
        let base: Vec<Vec<SuperPolynomial>> = rows
            .iter()
            .map(|&r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let d0 = bareiss_det(base.clone());
        if d0.is_zero() {
            return Err(AlgebraError::DegenerateSolve("singular base minor".into()));
        }
        let mut dep = Vec::with_capacity(s);
        for i in 0..s {
            let mut m = base.clone();
            for (ri, &r) in rows.iter().enumerate() {
                m[ri][i] = rhs[r].clone();
            }
            let di = bareiss_det(m);
            let q = di.exact_div(&d0).ok_or_else(|| {
                AlgebraError::DegenerateSolve(format!(
                    "dependence coefficient {i} is not a polynomial"
                ))
            })?;
            dep.push(q);
        }

        // verify m_v(v) = 0 on all coordinates
        let mut residue = powers[s].clone();
        for (i, d) in dep.iter().enumerate() {
            for c in 0..n {
                residue[c] = residue[c].sub(&powers[i][c].mul(d));
            }
        }
        if residue.iter().any(|p| !p.is_zero()) {
            return Err(AlgebraError::DegenerateSolve(
                "generic Cayley-Hamilton residue is nonzero".into(),
            ));
        }

        // m_v(t) = t^s - sigma_1 t^{s-1} + ... + (-1)^s sigma_s
        let mut sigma = Vec::with_capacity(s);
        for j in 1..=s {
            let d = &dep[s - j];
            let signed = if j % 2 == 1 { d.clone() } else { d.negate() };
            sigma.push(signed);
        }

        // Trd = sigma_1, read off as a linear functional
        let mut trd = vec![Rat::zero(); n];
        for (m, c) in sigma[0].terms() {
            if m.total_degree() != 1 || !m.odd_part().is_empty() {
                return Err(AlgebraError::DegenerateSolve(
                    "sigma_1 is not linear in the generic coordinates".into(),
                ));
            }
            let (&var, _) = m.even_part().iter().next().unwrap();
            trd[var.0 as usize] = c.clone();
        }

        Ok(GenericTraceData {
            degree: s,
            sigma,
            trd,
        })
    }

    /// Minimal polynomial of a concrete element, monic, as coefficients
    /// `[c_0, ..., c_{s-1}, 1]` of `c_0 + c_1 t + ... + t^s`.
    pub fn numeric_minimal_polynomial(
        &self,
        a: &AlgebraElement,
    ) -> Result<Vec<Rat>, AlgebraError> {
        let unit = self.unit()?.clone();
        let mut powers: Vec<AlgebraElement> = vec![unit];
        let mut span = SpanBuilder::new(self.dim);
        span.insert(powers[0].clone());
        loop {
            let next = self.mul_elem(powers.last().unwrap(), a)?;
            if !span.insert(next.clone()) {
                // dependent: solve powers * c = next
                let s = powers.len();
                let mut rows = Vec::with_capacity(self.dim);
                for r in 0..self.dim {
                    rows.push((0..s).map(|c| powers[c][r].clone()).collect());
                }
                let m = QMatrix::from_rows(rows);
                let sol = m.solve(&next).ok_or_else(|| {
                    AlgebraError::DegenerateSolve("inconsistent numeric dependence".into())
                })?;
                let mut coeffs: Vec<Rat> = sol.into_iter().map(|c| -c).collect();
                coeffs.push(Rat::one());
                return Ok(coeffs);
            }
            powers.push(next);
        }
    }

    /// Gram matrix `G_ij = trd(b_i b_j)` of a linear functional.
    pub fn trace_form_gram(&self, trd: &[Rat]) -> Result<QMatrix, AlgebraError> {
        if trd.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: trd.len(),
            });
        }
        let mut g = QMatrix::zero(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut v = Rat::zero();
                for (k, c) in &self.table[i][j] {
                    v += trd[*k].clone() * c;
                }
                *g.at_mut(i, j) = v;
            }
        }
        Ok(g)
    }

    pub fn check_trace_nondegenerate(&self, trd: &[Rat]) -> Result<bool, AlgebraError> {
        Ok(!self.trace_form_gram(trd)?.det().is_zero())
    }

    /// Copy of the algebra with the trivial grading (all degrees even).
    pub fn ungraded(&self) -> GradedAlgebra {
        let mut a = self.clone();
        a.name = format!("{}(ungraded)", self.name);
        a.degrees = vec![Parity::Even; self.dim];
        a
    }
}

/// Applies a linear functional to an element.
pub fn apply_functional(trd: &[Rat], a: &AlgebraElement) -> Rat {
    trd.iter()
        .zip(a)
        .map(|(t, x)| t.clone() * x)
        .fold(Rat::zero(), |acc, v| acc + v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerAssocReport {
    /// v v^2 = v^2 v
    pub third: bool,
    /// v^2 v^2 = (v^2 v) v
    pub fourth: bool,
}

impl PowerAssocReport {
    pub fn pass(&self) -> bool {
        self.third && self.fourth
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSimpleReport {
    pub closure_dims: Vec<usize>,
    /// First basis element generating a proper graded ideal, if any.
    pub proper_ideal_from: Option<usize>,
}

impl GradedSimpleReport {
    pub fn pass(&self) -> bool {
        self.proper_ideal_from.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentroidReport {
    pub dim_full: usize,
    pub dim_even: usize,
}

impl CentroidReport {
    pub fn is_central(&self) -> bool {
        self.dim_full == 1
    }
    pub fn is_graded_central(&self) -> bool {
        self.dim_even == 1
    }
}

/// Generic trace data: degree s, the coefficients sigma_1..sigma_s of the
/// generic minimal polynomial, and Trd = sigma_1 as a linear functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericTraceData {
    pub degree: usize,
    pub sigma: Vec<SuperPolynomial>,
    pub trd: Vec<Rat>,
}

impl GenericTraceData {
    pub fn trd_of(&self, a: &AlgebraElement) -> Rat {
        apply_functional(&self.trd, a)
    }
}

/// An algebra bundled with its generic trace; the unit of work for the
/// supertrace-identity machinery.
#[derive(Clone, Debug)]
pub struct TracedAlgebra {
    pub algebra: Arc<GradedAlgebra>,
    pub trace: GenericTraceData,
}

impl TracedAlgebra {
    pub fn new(algebra: GradedAlgebra) -> Result<Self, AlgebraError> {
        let trace = algebra.generic_minimal_polynomial()?;
        Ok(TracedAlgebra {
            algebra: Arc::new(algebra),
            trace,
        })
    }

    /// Same algebra with an explicit trace functional in place of sigma_1.
    pub fn with_functional(algebra: GradedAlgebra, trd: Vec<Rat>) -> Result<Self, AlgebraError> {
        if trd.len() != algebra.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: algebra.dim(),
                got: trd.len(),
            });
        }
        let degree = trd.len();
        Ok(TracedAlgebra {
            algebra: Arc::new(algebra),
            trace: GenericTraceData {
                degree,
                sigma: Vec::new(),
                trd,
            },
        })
    }
}

/// Namer for the generic coordinates xi_1..xi_n of an algebra.
pub struct XiNames;

impl VarNames for XiNames {
    fn even_name(&self, v: EvenVar) -> String {
        format!("xi{}", v.0 + 1)
    }
    fn odd_name(&self, v: crate::superpoly::OddVar) -> String {
        format!("eta{}", v.0 + 1)
    }
}

// ---------------------------------------------------------------------------
// fraction-free linear algebra over K[xi]
// ---------------------------------------------------------------------------

/// Bareiss determinant of a square matrix of even-only polynomials.
pub fn bareiss_det(mut m: Vec<Vec<SuperPolynomial>>) -> SuperPolynomial {
    let n = m.len();
    if n == 0 {
        return SuperPolynomial::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut sign = 1i32;
    let mut prev = SuperPolynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return SuperPolynomial::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact by construction");
            }
            m[i][k] = SuperPolynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.negate()
    } else {
        det
    }
}

/// Whether the given columns (each a vector of polynomials) are linearly
/// dependent over the rational-function field: all maximal minors vanish.
fn columns_dependent(cols: &[Vec<SuperPolynomial>]) -> bool {
    let k = cols.len();
    let n = cols[0].len();
    if k > n {
        return true;
    }
    let mut rows_choice: Vec<usize> = (0..k).collect();
    loop {
        let m: Vec<Vec<SuperPolynomial>> = rows_choice
            .iter()
            .map(|&r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        if !bareiss_det(m).is_zero() {
            return false;
        }
        // next k-combination of 0..n
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if rows_choice[i] != i + n - k {
                rows_choice[i] += 1;
                for j in i + 1..k {
                    rows_choice[j] = rows_choice[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// First row subset of size `s` on which the column matrix is invertible.
fn find_invertible_rows(cols: &[&Vec<SuperPolynomial>], n: usize, s: usize) -> Option<Vec<usize>> {
    let mut choice: Vec<usize> = (0..s).collect();
    loop {
        let m: Vec<Vec<SuperPolynomial>> = choice
            .iter()
            .map(|&r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        if !bareiss_det(m).is_zero() {
            return Some(choice);
        }
        let mut i = s;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if choice[i] != i + n - s {
                choice[i] += 1;
                for j in i + 1..s {
                    choice[j] = choice[j - 1] + 1;
                }
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

/// Full matrix algebra M_n with the elementary grading `deg e_ij = g_i + g_j`.
///
/// Basis order: even matrix units first (lexicographic by (row, col)), then
/// odd ones, so that generic superelements pair even basis rows with the
/// leading generic coordinates.
pub fn matrix_algebra(n: usize, grading: &[u8]) -> GradedAlgebra {
    assert_eq!(grading.len(), n, "grading must give one parity per row");
    let mut units: Vec<(usize, usize, Parity)> = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        for i in 0..n {
            for j in 0..n {
                let d = Parity::from_bit(grading[i] + grading[j]);
                if d == p {
                    units.push((i, j, d));
                }
            }
        }
    }
    let index = |a: usize, b: usize| units.iter().position(|&(i, j, _)| i == a && j == b).unwrap();
    let labels: Vec<String> = units
        .iter()
        .map(|(i, j, _)| format!("e{}{}", i + 1, j + 1))
        .collect();
    let degrees: Vec<Parity> = units.iter().map(|&(_, _, d)| d).collect();
    let mut triples = Vec::new();
    for (a, &(i, j, _)) in units.iter().enumerate() {
        for (b, &(k, l, _)) in units.iter().enumerate() {
            if j == k {
                triples.push((a, b, index(i, l), Rat::one()));
            }
        }
    }
    let mut unit = vec![Rat::zero(); units.len()];
    for i in 0..n {
        unit[index(i, i)] = Rat::one();
    }
    let name = if grading.iter().all(|&g| g == 0) {
        format!("M{n}")
    } else {
        format!(
            "M{n}[{}]",
            grading
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join("")
        )
    };
    GradedAlgebra::new(name, labels, degrees, Some(unit), triples).unwrap()
}

/// Truncated Grassmann algebra E_k with its canonical grading; basis indexed
/// by subsets of {1..k} in binary-counter order.
pub fn grassmann(k: usize) -> GradedAlgebra {
    assert!(k < 16, "truncated Grassmann builder supports k < 16");
    let n = 1usize << k;
    let labels: Vec<String> = (0..n)
        .map(|mask: usize| {
            if mask == 0 {
                "1".to_string()
            } else {
                (0..k)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| format!("e{}", b + 1))
                    .collect::<Vec<_>>()
                    .join("")
            }
        })
        .collect();
    let degrees: Vec<Parity> = (0..n)
        .map(|mask: usize| Parity::from_bit((mask.count_ones() % 2) as u8))
        .collect();
    let mut triples = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a & b != 0 {
                continue; // repeated generator
            }
            // sign: for each generator of b, count generators of a above it
            let mut sign = 1i64;
            for bit in 0..k {
                if b >> bit & 1 == 1 {
                    let above = (a >> (bit + 1)).count_ones();
                    if above % 2 == 1 {
                        sign = -sign;
                    }
                }
            }
            triples.push((a, b, a | b, Rat::from_integer(sign.into())));
        }
    }
    let mut unit = vec![Rat::zero(); n];
    unit[0] = Rat::one();
    GradedAlgebra::new(format!("E{k}"), labels, degrees, Some(unit), triples).unwrap()
}

/// Untwisted tensor product A (x) F with the sum grading.
pub fn tensor_product(a: &GradedAlgebra, f: &GradedAlgebra, name: &str) -> GradedAlgebra {
    let (na, nf) = (a.dim(), f.dim());
    let dim = na * nf;
    let idx = |i: usize, j: usize| i * nf + j;
    let mut labels = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    for i in 0..na {
        for j in 0..nf {
            labels.push(format!("{}(x){}", a.labels()[i], f.labels()[j]));
            degrees.push(a.degree(i).add(f.degree(j)));
        }
    }
    let mut triples = Vec::new();
    for i1 in 0..na {
        for i2 in 0..na {
            for (k, ca) in a.structure_constant_rows(i1, i2) {
                for j1 in 0..nf {
                    for j2 in 0..nf {
                        for (l, cf) in f.structure_constant_rows(j1, j2) {
                            triples.push((
                                idx(i1, j1),
                                idx(i2, j2),
                                idx(*k, *l),
                                ca.clone() * cf,
                            ));
                        }
                    }
                }
            }
        }
    }
    let unit = match (a.unit(), f.unit()) {
        (Ok(ua), Ok(uf)) => {
            let mut u = vec![Rat::zero(); dim];
            for i in 0..na {
                for j in 0..nf {
                    u[idx(i, j)] = ua[i].clone() * &uf[j];
                }
            }
            Some(u)
        }
        _ => None,
    };
    GradedAlgebra::new(name, labels, degrees, unit, triples).unwrap()
}

// ---------------------------------------------------------------------------
// JSON file format
// ---------------------------------------------------------------------------

/// Reads an algebra from the JSON object
/// `{ "name", "dim", "degrees": [0|1...], "unit": ["p/q"...],
///    "mul": [[i, j, k, "p/q"]...] }` with 0-based indices; absent mul
/// triples mean zero.
pub fn algebra_from_json(v: &serde_json::Value) -> Result<GradedAlgebra, AlgebraError> {
    let obj = v
        .as_object()
        .ok_or_else(|| AlgebraError::Malformed("top level must be an object".into()))?;
    let name = obj
        .get("name")
        .and_then(|x| x.as_str())
        .ok_or_else(|| AlgebraError::Malformed("field `name` must be a string".into()))?;
    let dim = obj
        .get("dim")
        .and_then(|x| x.as_u64())
        .ok_or_else(|| AlgebraError::Malformed("field `dim` must be a natural number".into()))?
        as usize;
    let degrees_json = obj
        .get("degrees")
        .and_then(|x| x.as_array())
        .ok_or_else(|| AlgebraError::Malformed("field `degrees` must be an array".into()))?;
    if degrees_json.len() != dim {
        return Err(AlgebraError::Malformed(format!(
            "field `degrees` has {} entries, expected {}",
            degrees_json.len(),
            dim
        )));
    }
    let mut degrees = Vec::with_capacity(dim);
    for d in degrees_json {
        match d.as_u64() {
            Some(0) => degrees.push(Parity::Even),
            Some(1) => degrees.push(Parity::Odd),
            _ => {
                return Err(AlgebraError::Malformed(
                    "field `degrees` entries must be 0 or 1".into(),
                ))
            }
        }
    }
    let parse_scalar = |x: &serde_json::Value, field: &str| -> Result<Rat, AlgebraError> {
        if let Some(s) = x.as_str() {
            parse_rat(s).map_err(|e| AlgebraError::Malformed(format!("field `{field}`: {e}")))
        } else if let Some(i) = x.as_i64() {
            Ok(Rat::from_integer(i.into()))
        } else {
            Err(AlgebraError::Malformed(format!(
                "field `{field}` entries must be decimal-free rational strings"
            )))
        }
    };
    let unit_json = obj
        .get("unit")
        .and_then(|x| x.as_array())
        .ok_or_else(|| AlgebraError::Malformed("field `unit` must be an array".into()))?;
    if unit_json.len() != dim {
        return Err(AlgebraError::Malformed(format!(
            "field `unit` has {} entries, expected {}",
            unit_json.len(),
            dim
        )));
    }
    let unit: Vec<Rat> = unit_json
        .iter()
        .map(|x| parse_scalar(x, "unit"))
        .collect::<Result<_, _>>()?;
    let mul_json = obj
        .get("mul")
        .and_then(|x| x.as_array())
        .ok_or_else(|| AlgebraError::Malformed("field `mul` must be an array".into()))?;
    let mut triples = Vec::with_capacity(mul_json.len());
    for entry in mul_json {
        let arr = entry
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| AlgebraError::Malformed("field `mul` entries must be [i, j, k, c]".into()))?;
        let geti = |x: &serde_json::Value| -> Result<usize, AlgebraError> {
            x.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| AlgebraError::Malformed("field `mul` indices must be naturals".into()))
        };
        triples.push((
            geti(&arr[0])?,
            geti(&arr[1])?,
            geti(&arr[2])?,
            parse_scalar(&arr[3], "mul")?,
        ));
    }
    let labels = (0..dim).map(|i| format!("b{}", i + 1)).collect();
    let alg = GradedAlgebra::new(name, labels, degrees, Some(unit), triples)?;
    match alg.check_unit_law() {
        Ok(true) => {}
        Ok(false) => {
            return Err(AlgebraError::Malformed(
                "field `unit` does not satisfy the unit law".into(),
            ))
        }
        Err(e) => return Err(e),
    }
    Ok(alg)
}

pub fn algebra_from_file(path: &str) -> Result<GradedAlgebra, AlgebraError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AlgebraError::Malformed(format!("cannot read `{path}`: {e}")))?;
    let v: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| AlgebraError::Malformed(format!("invalid JSON in `{path}`: {e}")))?;
    algebra_from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeMap;

    fn m2() -> GradedAlgebra {
        matrix_algebra(2, &[0, 0])
    }

    fn m2_11() -> GradedAlgebra {
        matrix_algebra(2, &[0, 1])
    }

    #[test]
    fn matrix_units_multiply() {
        let a = m2();
        // basis order for the trivial grading: e11, e12, e21, e22
        assert_eq!(a.labels(), &["e11", "e12", "e21", "e22"]);
        let e12 = a.basis_elem(1);
        let e21 = a.basis_elem(2);
        assert_eq!(a.mul_elem(&e12, &e21).unwrap(), a.basis_elem(0));
        let u = a.unit().unwrap().clone();
        assert_eq!(a.mul_elem(&u, &e12).unwrap(), e12);
        assert!(a.check_unit_law().unwrap());
        assert!(a.is_associative());
    }

    #[test]
    fn m11_basis_order_and_grading() {
        let a = m2_11();
        // even units first: e11, e22; then odd: e12, e21
        assert_eq!(a.labels(), &["e11", "e22", "e12", "e21"]);
        assert_eq!(
            a.degrees(),
            &[Parity::Even, Parity::Even, Parity::Odd, Parity::Odd]
        );
        assert!(a.check_graded().is_empty());
    }

    #[test]
    fn grading_violation_is_located() {
        // M2 with degrees (0,0,0,1) on basis e11,e12,e21,e22
        let mut triples = Vec::new();
        let units = [(0, 0), (0, 1), (1, 0), (1, 1)];
        let index = |i: usize, j: usize| units.iter().position(|&(a, b)| (a, b) == (i, j)).unwrap();
        for (a, &(i, j)) in units.iter().enumerate() {
            for (b, &(k, l)) in units.iter().enumerate() {
                if j == k {
                    triples.push((a, b, index(i, l), Rat::one()));
                }
            }
        }
        let alg = GradedAlgebra::new(
            "bad",
            vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()],
            vec![Parity::Even, Parity::Even, Parity::Even, Parity::Odd],
            None,
            triples,
        )
        .unwrap();
        let bad = alg.check_graded();
        // e12 * e22 = e12 is one of the violations
        assert!(bad.contains(&(1, 3, 1)), "violations: {bad:?}");
        // trivial grading always passes
        assert!(m2().check_graded().is_empty());
    }

    #[test]
    fn grassmann_builder() {
        let e2 = grassmann(2);
        assert_eq!(e2.dim(), 4);
        assert_eq!(e2.labels(), &["1", "e1", "e2", "e1e2"]);
        assert_eq!(
            e2.degrees(),
            &[Parity::Even, Parity::Odd, Parity::Odd, Parity::Even]
        );
        let e1 = e2.basis_elem(1);
        let e2v = e2.basis_elem(2);
        let prod = e2.mul_elem(&e1, &e2v).unwrap();
        assert_eq!(prod, e2.basis_elem(3));
        let anti = e2.mul_elem(&e2v, &e1).unwrap();
        let mut neg = e2.zero_elem();
        neg[3] = rat(-1);
        assert_eq!(anti, neg);
        assert!(e2.check_graded().is_empty());
        assert!(e2.is_associative());
        assert!(grassmann(3).check_power_associative().pass());
    }

    #[test]
    fn power_associativity_failure_detected() {
        // a*a = b, b*a = a, a*b = b*b = 0
        let alg = GradedAlgebra::new(
            "np",
            vec!["a".into(), "b".into()],
            vec![Parity::Even, Parity::Even],
            None,
            vec![(0, 0, 1, rat(1)), (1, 0, 0, rat(1))],
        )
        .unwrap();
        let rep = alg.check_power_associative();
        assert!(!rep.pass());
        assert!(m2().check_power_associative().pass());
    }

    #[test]
    fn graded_simplicity() {
        assert!(m2_11().check_graded_simple().pass());
        assert!(m2().check_graded_simple().pass());

        // M2 (+) M2 block diagonal is not graded-simple
        let a = m2();
        let dim = 8;
        let mut triples = Vec::new();
        for blk in 0..2 {
            let off = blk * 4;
            for i in 0..4 {
                for j in 0..4 {
                    for (k, c) in a.structure_constant_rows(i, j) {
                        triples.push((off + i, off + j, off + k, c.clone()));
                    }
                }
            }
        }
        let labels = (0..dim).map(|i| format!("b{i}")).collect();
        let sum = GradedAlgebra::new(
            "M2+M2",
            labels,
            vec![Parity::Even; dim],
            None,
            triples,
        )
        .unwrap();
        assert!(!sum.check_graded_simple().pass());

        // A = M_1(K + cK), c^2 = 1: graded-simple though not simple ungraded
        let kc = GradedAlgebra::new(
            "K+cK",
            vec!["1".into(), "c".into()],
            vec![Parity::Even, Parity::Odd],
            Some(vec![rat(1), rat(0)]),
            vec![
                (0, 0, 0, rat(1)),
                (0, 1, 1, rat(1)),
                (1, 0, 1, rat(1)),
                (1, 1, 0, rat(1)),
            ],
        )
        .unwrap();
        assert!(kc.check_graded_simple().pass());
    }

    #[test]
    fn centroid_dimensions() {
        assert!(m2().check_central().is_central());
        // K + K split: centroid is 2-dimensional
        let kk = GradedAlgebra::new(
            "K+K",
            vec!["p".into(), "q".into()],
            vec![Parity::Even, Parity::Even],
            Some(vec![rat(1), rat(1)]),
            vec![(0, 0, 0, rat(1)), (1, 1, 1, rat(1))],
        )
        .unwrap();
        let rep = kk.check_central();
        assert_eq!(rep.dim_full, 2);
        assert!(!rep.is_central());
        // truncated E2: even centroid exceeds K
        let rep = grassmann(2).check_central();
        assert!(rep.dim_even > 1);
        assert!(!rep.is_central());
    }

    #[test]
    fn generic_minimal_polynomial_m2() {
        let a = m2();
        let t = a.generic_minimal_polynomial().unwrap();
        assert_eq!(t.degree, 2);
        // sigma_1 = xi_1 + xi_4 (trace), sigma_2 = xi_1 xi_4 - xi_2 xi_3 (det)
        let xi = |k: u32| SuperPolynomial::even_var(EvenVar(k));
        assert_eq!(t.sigma[0], xi(0).add(&xi(3)));
        assert_eq!(t.sigma[1], xi(0).mul(&xi(3)).sub(&xi(1).mul(&xi(2))));
        assert_eq!(t.trd, vec![rat(1), rat(0), rat(0), rat(1)]);
        // Trd(1) = s
        assert_eq!(t.trd_of(a.unit().unwrap()), rat(2));
    }

    #[test]
    fn generic_minimal_polynomial_m3_degree() {
        let a = matrix_algebra(3, &[0, 0, 0]);
        let t = a.generic_minimal_polynomial().unwrap();
        assert_eq!(t.degree, 3);
        // sigma_1 is the matrix trace
        let mut expect = vec![rat(0); 9];
        for (i, l) in a.labels().iter().enumerate() {
            if l == "e11" || l == "e22" || l == "e33" {
                expect[i] = rat(1);
            }
        }
        assert_eq!(t.trd, expect);
        assert_eq!(t.trd_of(a.unit().unwrap()), rat(3));
    }

    #[test]
    fn grassmann_trace() {
        let e2 = grassmann(2);
        let t = e2.generic_minimal_polynomial().unwrap();
        assert_eq!(t.degree, 2);
        assert_eq!(t.trd, vec![rat(2), rat(0), rat(0), rat(0)]);
        assert_eq!(t.trd_of(e2.unit().unwrap()), rat(2));
        // degenerate Gram for E2
        assert!(!e2.check_trace_nondegenerate(&t.trd).unwrap());
        // the naive coefficient-of-1 functional is degenerate too
        assert!(!e2
            .check_trace_nondegenerate(&[rat(1), rat(0), rat(0), rat(0)])
            .unwrap());
    }

    #[test]
    fn gram_matrices() {
        let a = m2();
        let t = a.generic_minimal_polynomial().unwrap();
        let g = a.trace_form_gram(&t.trd).unwrap();
        assert_eq!(g.det(), rat(-1));
        assert!(a.check_trace_nondegenerate(&t.trd).unwrap());

        let m3 = matrix_algebra(3, &[0, 0, 0]);
        let t3 = m3.generic_minimal_polynomial().unwrap();
        assert!(m3.check_trace_nondegenerate(&t3.trd).unwrap());

        let k = matrix_algebra(1, &[0]);
        let tk = k.generic_minimal_polynomial().unwrap();
        let gk = k.trace_form_gram(&tk.trd).unwrap();
        assert_eq!(gk.det(), rat(1));
    }

    #[test]
    fn trace_is_symmetric_and_kills_commutators() {
        let a = m2();
        let t = a.generic_minimal_polynomial().unwrap();
        let g = a.trace_form_gram(&t.trd).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.at(i, j), g.at(j, i));
            }
        }
        // Trd(ab - ba) = 0 on the whole basis implies it identically
        for i in 0..4 {
            for j in 0..4 {
                let ab = a.mul_elem(&a.basis_elem(i), &a.basis_elem(j)).unwrap();
                let ba = a.mul_elem(&a.basis_elem(j), &a.basis_elem(i)).unwrap();
                let diff: Vec<Rat> = ab.iter().zip(&ba).map(|(x, y)| x.clone() - y).collect();
                assert!(t.trd_of(&diff).is_zero());
            }
        }
    }

    #[test]
    fn specialized_minimal_polynomial_divides_generic() {
        // random rational points: the numeric minimal polynomial divides the
        // specialized m_v(t)
        let a = m2();
        let t = a.generic_minimal_polynomial().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let pt: Vec<Rat> = (0..4)
                .map(|_| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
                .collect();
            let mu = a.numeric_minimal_polynomial(&pt).unwrap();
            // specialize m_v(t): coefficients of t^s, ..., t^0
            let subs: BTreeMap<EvenVar, Rat> = pt
                .iter()
                .enumerate()
                .map(|(i, c)| (EvenVar(i as u32), c.clone()))
                .collect();
            let mut mv = vec![Rat::zero(); t.degree + 1];
            mv[t.degree] = Rat::one();
            for (j, s) in t.sigma.iter().enumerate() {
                let val = s.eval_even(&subs).unwrap();
                let signed = if (j + 1) % 2 == 1 { -val } else { val };
                mv[t.degree - 1 - j] = signed;
            }
            assert!(
                divides_univariate(&mu, &mv),
                "numeric minimal polynomial must divide the specialized generic one"
            );
        }
    }

    /// Exact univariate divisibility test over Q; coefficients low-to-high.
    fn divides_univariate(den: &[Rat], num: &[Rat]) -> bool {
        let mut rem: Vec<Rat> = num.to_vec();
        let dd = den.len() - 1;
        let lead = den[dd].clone();
        while rem.len() - 1 >= dd && rem.iter().any(|c| !c.is_zero()) {
            let rd = rem.len() - 1;
            let f = rem[rd].clone() / lead.clone();
            for i in 0..=dd {
                let idx = rd - dd + i;
                let v = rem[idx].clone() - f.clone() * &den[i];
                rem[idx] = v;
            }
            while rem.len() > 1 && rem.last().unwrap().is_zero() {
                rem.pop();
            }
            if rem.len() - 1 < dd {
                break;
            }
        }
        rem.iter().all(|c| c.is_zero())
    }

    #[test]
    fn tensor_product_algebra() {
        let a = m2_11();
        let f = grassmann(1);
        let af = tensor_product(&a, &f, "M2(x)E1");
        assert_eq!(af.dim(), 8);
        assert!(af.check_graded().is_empty());
        assert!(af.check_unit_law().unwrap());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{
            "name": "K+cK",
            "dim": 2,
            "degrees": [0, 1],
            "unit": ["1", "0"],
            "mul": [[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[1,1,0,"1"]]
        }"#;
        let v: serde_json::Value = serde_json::from_str(text).unwrap();
        let alg = algebra_from_json(&v).unwrap();
        assert_eq!(alg.dim(), 2);
        assert!(alg.check_graded().is_empty());

        let bad: serde_json::Value =
            serde_json::from_str(r#"{"name":"x","dim":1,"degrees":[2],"unit":["1"],"mul":[]}"#)
                .unwrap();
        let err = algebra_from_json(&bad).unwrap_err();
        assert!(err.to_string().contains("degrees"));
    }
}
