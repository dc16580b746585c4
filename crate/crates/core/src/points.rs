//! Zero-dimensional schemes in projective space.
//!
//! Power sums of the dual linear forms of points, vanishing ideals, the
//! multiplication operators of an Artinian reduction, a deterministic
//! trace-form reducedness test, point recovery, and the certificate that
//! writes the generator `H_{r+2}` as a combination of `(r+s+1)`-th powers of
//! the points' linear forms.
//!
//! Everything here uses the standard grading and the derivation action.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::duality::{h_vector, span_rank, GradedIdeal};
use crate::gadmissible::artinian_dual_generator;
use crate::linalg::{ExactMatrix, UniPoly};
use crate::poly::{factorial, monomials_of_weight, Action, Exponent, Flavor, SparsePoly, Weighting};
use crate::{degree_cap, Error, Result, Q};

/// A point of projective space with rational coordinates, scaled so that its
/// first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint(Vec<Q>);

impl ProjectivePoint {
    pub fn new(coords: Vec<Q>) -> Result<Self> {
        let Some(first) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::InvalidPoint("all coordinates are zero".into()));
        };
        let inv = first.recip();
        Ok(ProjectivePoint(coords.into_iter().map(|c| c * &inv).collect()))
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn check_points(points: &[ProjectivePoint]) -> Result<usize> {
    let n = points.first().map_or(0, ProjectivePoint::len);
    for (i, p) in points.iter().enumerate() {
        if p.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: p.len(),
            });
        }
        if points[..i].contains(p) {
            return Err(Error::InvalidPoint(format!("point {p} is repeated")));
        }
    }
    Ok(n)
}

/// `L = a₁y₁ + … + aₙyₙ` for `P = (a₁, …, aₙ)`.
pub fn dual_linear_form(p: &ProjectivePoint) -> SparsePoly {
    let n = p.len();
    SparsePoly::from_terms(
        Flavor::Dual,
        n,
        p.0.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Exponent::unit(n, i), c.clone())),
    )
    .expect("unit exponents have the point's length")
}

/// The powers `L₁ʲ, …, L_rʲ`, which span `(I(X)^⊥)_j`.
pub fn power_sum_component(points: &[ProjectivePoint], j: u32) -> Result<Vec<SparsePoly>> {
    check_points(points)?;
    Ok(points.iter().map(|p| dual_linear_form(p).form_power(j)).collect())
}

/// Basis of `I(X)_d`: the kernel of evaluation at the points on the
/// degree-`d` monomials.
pub fn vanishing_ideal_component(points: &[ProjectivePoint], d: u64, nvars: usize) -> Result<Vec<SparsePoly>> {
    let n = check_points(points)?;
    if !points.is_empty() && n != nvars {
        return Err(Error::Dimension {
            expected: nvars,
            found: n,
        });
    }
    let monomials = monomials_of_weight(&Weighting::standard(nvars), d);
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        let row = monomials
            .iter()
            .map(|m| SparsePoly::monomial(Flavor::Ring, m.clone(), Q::one()).evaluate(p.coords()))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let m = ExactMatrix::from_rows(rows, monomials.len())?;
    Ok(m.kernel()
        .into_iter()
        .map(|v| {
            SparsePoly::from_terms(
                Flavor::Ring,
                nvars,
                monomials.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()),
            )
            .expect("monomials have the ambient length")
        })
        .collect())
}

/// The ideal of the points, generated by its components of degree `1..=r`
/// (the regularity of `r` points is at most `r`).
pub fn vanishing_ideal(points: &[ProjectivePoint], nvars: usize) -> Result<GradedIdeal> {
    let mut gens = Vec::new();
    for d in 1..=points.len().max(1) as u64 {
        gens.extend(vanishing_ideal_component(points, d, nvars)?);
    }
    GradedIdeal::standard(gens, nvars)
}

/// One graded piece `A_j = R_j / I_j` with a monomial basis.
struct QuotientPiece {
    monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
    basis: Vec<usize>,
}

impl QuotientPiece {
    fn new(ideal: &GradedIdeal, j: u64) -> Self {
        let (monomials, m) = ideal.component_matrix(j);
        let (rows, pivots) = m.rref();
        let basis = (0..monomials.len()).filter(|c| !pivots.contains(c)).collect();
        let index = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        QuotientPiece {
            monomials,
            index,
            rows,
            pivots,
            basis,
        }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn basis_monomials(&self) -> Vec<Exponent> {
        self.basis.iter().map(|&c| self.monomials[c].clone()).collect()
    }

    /// Coordinates of the class of a degree-`j` polynomial.
    fn reduce(&self, p: &SparsePoly) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.monomials.len()];
        for (e, c) in p.terms() {
            v[self.index[e]] = c.clone();
        }
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            if !v[piv].is_zero() {
                let f = v[piv].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        self.basis.iter().map(|&c| v[c].clone()).collect()
    }

    /// Matrix of multiplication by `f` from this piece into `target`.
    fn multiplication(&self, f: &SparsePoly, target: &QuotientPiece) -> Result<ExactMatrix> {
        let columns = self
            .basis_monomials()
            .into_iter()
            .map(|m| {
                let prod = SparsePoly::monomial(Flavor::Ring, m, Q::one()).ring_mul(f)?;
                Ok(target.reduce(&prod))
            })
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::from_columns(&columns, target.dim())
    }
}

fn check_standard_linear(ideal: &GradedIdeal, z: &SparsePoly) -> Result<()> {
    if !ideal.weighting().is_standard() {
        return Err(Error::Usage("zero-dimensional schemes need the standard grading".into()));
    }
    if z.flavor() != Flavor::Ring || z.nvars() != ideal.nvars() || z.is_homogeneous(ideal.weighting()) != Some(1) {
        return Err(Error::Usage(format!("z = {z} must be a linear form in {} variables", ideal.nvars())));
    }
    Ok(())
}

/// Multiplication operators on the degree-`s` piece of `R/I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateOperators {
    /// Degree of the scheme (stable Hilbert function value).
    pub r: usize,
    /// Socle degree.
    pub s: u64,
    /// Monomial basis of `A_s`.
    pub basis: Vec<Exponent>,
    /// `Mᵢ = (mult by z)⁻¹ ∘ (mult by xᵢ)` on `A_s`.
    pub operators: Vec<ExactMatrix>,
}

impl CoordinateOperators {
    /// `M_λ = Σ λᵢ Mᵢ`.
    pub fn combination(&self, lambda: &[Q]) -> Result<ExactMatrix> {
        if lambda.len() != self.operators.len() {
            return Err(Error::Dimension {
                expected: self.operators.len(),
                found: lambda.len(),
            });
        }
        let mut m = ExactMatrix::zeros(self.r, self.r);
        for (op, c) in self.operators.iter().zip(lambda) {
            m = m.add_scaled(op, c)?;
        }
        Ok(m)
    }

    /// Regular representation of the basis element `b_k = x^e`, i.e.
    /// `∏ Mᵢ^{eᵢ}`.
    pub fn basis_multiplication(&self, k: usize) -> Result<ExactMatrix> {
        let mut m = ExactMatrix::identity(self.r);
        for (op, &e) in self.operators.iter().zip(self.basis[k].entries()) {
            if e > 0 {
                m = m.checked_mul(&op.pow(e)?)?;
            }
        }
        Ok(m)
    }
}

/// Builds the operators after checking that `z` is injective on
/// `A_j → A_{j+1}` for `s ≤ j ≤ 2s`.
pub fn coordinate_operators(ideal: &GradedIdeal, z: &SparsePoly) -> Result<CoordinateOperators> {
    check_standard_linear(ideal, z)?;
    let hv = h_vector(ideal, degree_cap())?;
    let s = hv.socle_degree;
    let mut pieces: Vec<QuotientPiece> = (s..=2 * s + 1).map(|j| QuotientPiece::new(ideal, j)).collect();
    for (k, j) in (s..=2 * s).enumerate() {
        let zmap = pieces[k].multiplication(z, &pieces[k + 1])?;
        if zmap.rank() != pieces[k].dim() {
            return Err(Error::BadZ { degree: j });
        }
    }
    let next = pieces.swap_remove(1);
    let here = pieces.swap_remove(0);
    let r = here.dim();
    if r != hv.stable_value || next.dim() != r {
        return Err(Error::Inconclusive(format!(
            "Hilbert function is not stable at the socle degree {s}"
        )));
    }
    let zinv = here
        .multiplication(z, &next)?
        .inverse()?
        .ok_or(Error::BadZ { degree: s })?;
    let operators = (0..ideal.nvars())
        .map(|i| {
            let x = SparsePoly::variable(Flavor::Ring, ideal.nvars(), i);
            zinv.checked_mul(&here.multiplication(&x, &next)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoordinateOperators {
        r,
        s,
        basis: here.basis_monomials(),
        operators,
    })
}

/// Verdict of the trace-form test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTest {
    pub reduced: bool,
    /// Determinant of `T(b_k, b_l) = trace(mult_{b_k b_l})`.
    pub determinant: Q,
}

/// The scheme is reduced iff the trace form of the algebra `A_s` (product
/// transported through `z^s`) is nondegenerate.
pub fn trace_reduced_test(ideal: &GradedIdeal, z: &SparsePoly) -> Result<TraceTest> {
    let ops = coordinate_operators(ideal, z)?;
    trace_test_from(&ops)
}

fn trace_test_from(ops: &CoordinateOperators) -> Result<TraceTest> {
    let mults = (0..ops.r)
        .map(|k| ops.basis_multiplication(k))
        .collect::<Result<Vec<_>>>()?;
    let mut form = ExactMatrix::zeros(ops.r, ops.r);
    for k in 0..ops.r {
        for l in k..ops.r {
            let t = mults[k].checked_mul(&mults[l])?.trace();
            form.set(k, l, t.clone());
            form.set(l, k, t);
        }
    }
    let determinant = form.det()?;
    Ok(TraceTest {
        reduced: !determinant.is_zero(),
        determinant,
    })
}

/// How far point recovery got.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecoveryStatus {
    /// All `r` points have rational coordinates.
    Complete,
    /// The separating polynomial is squarefree but has irrational roots; only
    /// the rational points are listed.
    IrrationalPartial,
    /// No separating combination found within the attempt budget.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointRecovery {
    pub status: RecoveryStatus,
    pub points: Vec<ProjectivePoint>,
    /// The last combination tried and its minimal polynomial.
    pub lambda: Vec<i64>,
    pub minimal_polynomial: UniPoly,
}

/// Seed of the combination generator, fixed for reproducible output.
const LAMBDA_SEED: u64 = 0x006d_6163_6475_616c;

fn random_lambda(rng: &mut StdRng, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-9..=9)).collect()
}

fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&c| Q::from_integer(c.into())).collect()
}

/// Minimal polynomials of `count` pseudo-random combinations `M_λ`.
pub fn sample_minimal_polynomials(
    ops: &CoordinateOperators,
    count: usize,
    seed: u64,
) -> Result<Vec<(Vec<i64>, UniPoly)>> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let lambda = random_lambda(&mut rng, ops.operators.len());
            let mp = ops.combination(&to_q(&lambda))?.minimal_polynomial()?;
            Ok((lambda, mp))
        })
        .collect()
}

/// Reads the points off the joint eigenvectors of the operators.
pub fn recover_points(ideal: &GradedIdeal, z: &SparsePoly, max_attempts: usize) -> Result<PointRecovery> {
    let ops = coordinate_operators(ideal, z)?;
    recover_from(&ops, max_attempts)
}

fn recover_from(ops: &CoordinateOperators, max_attempts: usize) -> Result<PointRecovery> {
    let mut rng = StdRng::seed_from_u64(LAMBDA_SEED);
    let n = ops.operators.len();
    let mut last = (vec![0; n], UniPoly::zero());
    for _ in 0..max_attempts.max(1) {
        let lambda = random_lambda(&mut rng, n);
        let m = ops.combination(&to_q(&lambda))?;
        let mp = m.minimal_polynomial()?;
        if mp.degree() != Some(ops.r) || !mp.is_squarefree()? {
            last = (lambda, mp);
            continue;
        }
        let mut points = Vec::new();
        for root in mp.rational_roots()? {
            let shifted = m.add_scaled(&ExactMatrix::identity(ops.r), &-root)?;
            let kernel = shifted.kernel();
            let v = kernel.first().expect("a root of the minimal polynomial is an eigenvalue");
            let k = v.iter().position(|c| !c.is_zero()).expect("eigenvectors are nonzero");
            let coords = ops
                .operators
                .iter()
                .map(|op| Ok(&op.mul_vec(v)?[k] / &v[k]))
                .collect::<Result<Vec<_>>>()?;
            points.push(ProjectivePoint::new(coords)?);
        }
        let status = if points.len() == ops.r {
            RecoveryStatus::Complete
        } else {
            RecoveryStatus::IrrationalPartial
        };
        return Ok(PointRecovery {
            status,
            points,
            lambda,
            minimal_polynomial: mp,
        });
    }
    Ok(PointRecovery {
        status: RecoveryStatus::Inconclusive,
        points: Vec::new(),
        lambda: last.0,
        minimal_polynomial: last.1,
    })
}

/// Solves `H = Σ cᵢ Lᵢ^d` (with `d = deg H`) for the points' linear forms.
/// Returns `None` when no combination exists.
pub fn waring_decompose(h: &SparsePoly, points: &[ProjectivePoint]) -> Result<Option<Vec<Q>>> {
    let n = check_points(points)?;
    if h.flavor() != Flavor::Dual || (!points.is_empty() && h.nvars() != n) {
        return Err(Error::Usage("the form must be a dual polynomial matching the points".into()));
    }
    let d = h
        .is_homogeneous(&Weighting::standard(h.nvars()))
        .ok_or_else(|| Error::Usage(format!("{h} is not a form")))?;
    let powers = power_sum_component(points, d as u32)?;
    let monomials = monomials_of_weight(&Weighting::standard(h.nvars()), d);
    let index: HashMap<&Exponent, usize> = monomials.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let vector = |p: &SparsePoly| {
        let mut v = vec![Q::zero(); monomials.len()];
        for (e, c) in p.terms() {
            v[index[e]] = c.clone();
        }
        v
    };
    let columns: Vec<Vec<Q>> = powers.iter().map(vector).collect();
    ExactMatrix::from_columns(&columns, monomials.len())?.solve(&vector(h))
}

/// Checks `H = (1/d!) Σ (αᵢ / z(Pᵢ)) Lᵢ^d` exactly, with `d = deg H`.
pub fn check_identity(h: &SparsePoly, z: &SparsePoly, points: &[ProjectivePoint], alphas: &[Q]) -> Result<bool> {
    if points.len() != alphas.len() {
        return Err(Error::Dimension {
            expected: points.len(),
            found: alphas.len(),
        });
    }
    let Some(d) = h.is_homogeneous(&Weighting::standard(h.nvars())) else {
        return Ok(false);
    };
    let d_fact = Q::from_integer(factorial(d as u32));
    let mut sum = SparsePoly::zero(Flavor::Dual, h.nvars());
    for (p, a) in points.iter().zip(alphas) {
        let zp = z.evaluate(p.coords())?;
        if zp.is_zero() {
            return Err(Error::BadZ { degree: 0 });
        }
        let term = dual_linear_form(p).form_power(d as u32).scale(&(a / (zp * &d_fact)));
        sum = sum.checked_add(&term)?;
    }
    Ok(&sum == h)
}

/// Evidence collected while certifying reducedness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub trace_determinant: Q,
    /// Combination used to separate the points, with its minimal polynomial.
    pub lambda: Vec<i64>,
    pub minimal_polynomial: UniPoly,
    pub minimal_polynomial_squarefree: bool,
    pub recovery: RecoveryStatus,
}

/// Reducedness verdict with the power-sum decomposition of `H_{r+2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducednessCertificate {
    pub reduced: bool,
    pub r: usize,
    pub s: u64,
    pub z: SparsePoly,
    /// `H_{r+2}` under derivation, normalized to graded-lex leading coefficient 1.
    pub h: SparsePoly,
    pub points: Option<Vec<ProjectivePoint>>,
    pub alphas: Option<Vec<Q>>,
    pub diagnostics: Diagnostics,
}

/// Number of separating combinations tried by [`reducedness_certificate`].
pub const RECOVERY_ATTEMPTS: usize = 16;

/// Decides reducedness with the trace form and, when the points are
/// rational, produces `αᵢ` with
/// `H_{r+2} = (1/(r+s+1)!) Σ (αᵢ / z(Pᵢ)) Lᵢ^{r+s+1}`.
pub fn reducedness_certificate(ideal: &GradedIdeal, z: &SparsePoly) -> Result<ReducednessCertificate> {
    let ops = coordinate_operators(ideal, z)?;
    let (r, s) = (ops.r, ops.s);
    let h = artinian_dual_generator(ideal, z, r as u32 + 2, Action::Derivation)?.normalized();
    let trace = trace_test_from(&ops)?;
    let recovery = recover_from(&ops, RECOVERY_ATTEMPTS)?;
    let squarefree = !recovery.minimal_polynomial.is_zero() && recovery.minimal_polynomial.is_squarefree()?;
    let diagnostics = Diagnostics {
        trace_determinant: trace.determinant.clone(),
        lambda: recovery.lambda.clone(),
        minimal_polynomial: recovery.minimal_polynomial.clone(),
        minimal_polynomial_squarefree: squarefree,
        recovery: recovery.status,
    };
    let mut cert = ReducednessCertificate {
        reduced: trace.reduced,
        r,
        s,
        z: z.clone(),
        h,
        points: None,
        alphas: None,
        diagnostics,
    };
    if !trace.reduced || recovery.status != RecoveryStatus::Complete {
        return Ok(cert);
    }
    let points = recovery.points;
    let d = r as u32 + s as u32 + 1;
    let powers = power_sum_component(&points, d)?;
    if span_rank(&powers) != r {
        return Err(Error::Certificate("power sums of the points are dependent".into()));
    }
    let c = waring_decompose(&cert.h, &points)?
        .ok_or_else(|| Error::Certificate("H is not a combination of the points' power sums".into()))?;
    let d_fact = Q::from_integer(factorial(d));
    let alphas = c
        .iter()
        .zip(&points)
        .map(|(ci, p)| Ok(ci * &d_fact * z.evaluate(p.coords())?))
        .collect::<Result<Vec<_>>>()?;
    if alphas.iter().any(Zero::is_zero) {
        return Err(Error::Certificate("a coefficient of the decomposition vanishes".into()));
    }
    if !check_identity(&cert.h, z, &points, &alphas)? {
        return Err(Error::Certificate("decomposition does not reproduce H".into()));
    }
    cert.points = Some(points);
    cert.alphas = Some(alphas);
    Ok(cert)
}

impl ReducednessCertificate {
    /// Structured form with exact rationals printed as `p/q` strings.
    pub fn to_json(&self) -> Value {
        let q = |v: &Q| Value::String(v.to_string());
        json!({
            "reduced": self.reduced,
            "r": self.r,
            "s": self.s,
            "z": self.z.to_string(),
            "H": self.h.to_string(),
            "points": self.points.as_ref().map(|ps| ps.iter().map(|p| p.coords().iter().map(q).collect::<Vec<_>>()).collect::<Vec<_>>()),
            "alphas": self.alphas.as_ref().map(|a| a.iter().map(q).collect::<Vec<_>>()),
            "diagnostics": {
                "trace_determinant": q(&self.diagnostics.trace_determinant),
                "lambda": self.diagnostics.lambda,
                "minimal_polynomial": self.diagnostics.minimal_polynomial.to_string(),
                "minimal_polynomial_squarefree": self.diagnostics.minimal_polynomial_squarefree,
                "recovery": format!("{:?}", self.diagnostics.recovery),
            },
        })
    }
}

impl fmt::Display for ReducednessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reduced={}", self.reduced)?;
        writeln!(f, "r={}", self.r)?;
        writeln!(f, "s={}", self.s)?;
        writeln!(f, "z={}", self.z)?;
        writeln!(f, "H={}", self.h)?;
        if let (Some(points), Some(alphas)) = (&self.points, &self.alphas) {
            for (p, a) in points.iter().zip(alphas) {
                writeln!(f, "point={p} L={} alpha={a}", dual_linear_form(p))?;
            }
        }
        let d = &self.diagnostics;
        writeln!(f, "trace_determinant={}", d.trace_determinant)?;
        writeln!(f, "lambda={:?}", d.lambda)?;
        writeln!(f, "minimal_polynomial={}", d.minimal_polynomial)?;
        writeln!(f, "minimal_polynomial_squarefree={}", d.minimal_polynomial_squarefree)?;
        write!(f, "recovery={:?}", d.recovery)
    }
}
