//! Graded duality: inverse systems of homogeneous ideals, Hilbert functions,
//! annihilators of dual modules and membership in finitely generated dual
//! submodules.
//!
//! Every routine works one weighted degree at a time. The pairing between
//! `R_j` and `Γ_j` is diagonal on monomials (`x^K ∘ y^K` is `1` under
//! contraction and `K!` under derivation), so each graded piece reduces to an
//! exact kernel or solve over a small coefficient matrix.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_traits::Zero;

use crate::linalg::ExactMatrix;
use crate::poly::{apply, monomials_of_weight, Action, Exponent, Flavor, SparsePoly, Weighting};
use crate::{degree_cap, Error, Result, Q};

/// Homogeneous ideal of the weighted polynomial ring, given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdeal {
    generators: Vec<SparsePoly>,
    degrees: Vec<u64>,
    weighting: Weighting,
}

impl GradedIdeal {
    /// Zero generators are dropped; the others must be homogeneous ring
    /// polynomials in `weighting.len()` variables.
    pub fn new(generators: Vec<SparsePoly>, weighting: Weighting) -> Result<Self> {
        let n = weighting.len();
        let mut gens = Vec::new();
        let mut degrees = Vec::new();
        for (i, g) in generators.into_iter().enumerate() {
            if g.flavor() != Flavor::Ring {
                return Err(Error::InvalidIdeal(format!(
                    "generator {} is a dual polynomial",
                    i + 1
                )));
            }
            if g.nvars() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: g.nvars(),
                });
            }
            if g.is_zero() {
                continue;
            }
            let d = g.is_homogeneous(&weighting).ok_or_else(|| {
                Error::InvalidIdeal(format!("generator {} ({g}) is not homogeneous", i + 1))
            })?;
            gens.push(g);
            degrees.push(d);
        }
        Ok(GradedIdeal {
            generators: gens,
            degrees,
            weighting,
        })
    }

    /// Ideal in the standard grading.
    pub fn standard(generators: Vec<SparsePoly>, nvars: usize) -> Result<Self> {
        Self::new(generators, Weighting::standard(nvars))
    }

    pub fn generators(&self) -> &[SparsePoly] {
        &self.generators
    }

    pub fn weighting(&self) -> &Weighting {
        &self.weighting
    }

    pub fn nvars(&self) -> usize {
        self.weighting.len()
    }

    /// `I + (g)`.
    pub fn with_generator(&self, g: SparsePoly) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(g);
        Self::new(gens, self.weighting.clone())
    }

    /// Spanning rows of `I_j` on the monomials of weight `j`.
    fn component_rows(&self, j: u64, columns: &MonomialIndex) -> Vec<Vec<Q>> {
        let mut seen = HashSet::new();
        let mut rows = Vec::new();
        for (g, &d) in self.generators.iter().zip(&self.degrees) {
            if d > j {
                continue;
            }
            for u in monomials_of_weight(&self.weighting, j - d) {
                let mut row = vec![Q::zero(); columns.len()];
                for (e, c) in g.terms() {
                    row[columns.index(&e.add(&u))] = c.clone();
                }
                if seen.insert(row.clone()) {
                    rows.push(row);
                }
            }
        }
        rows
    }

    /// Monomials of weight `j` and a matrix whose rows span `I_j` on them.
    pub(crate) fn component_matrix(&self, j: u64) -> (Vec<Exponent>, ExactMatrix) {
        let columns = MonomialIndex::new(monomials_of_weight(&self.weighting, j));
        let rows = self.component_rows(j, &columns);
        let m = ExactMatrix::from_rows(rows, columns.len()).expect("rows have the column count");
        (columns.monomials, m)
    }

    /// `dim I_j`.
    pub fn component_dimension(&self, j: u64) -> usize {
        let columns = MonomialIndex::new(monomials_of_weight(&self.weighting, j));
        let rows = self.component_rows(j, &columns);
        ExactMatrix::from_rows(rows, columns.len())
            .expect("rows have the column count")
            .rank()
    }

    /// Whether a homogeneous ring polynomial lies in the ideal.
    pub fn contains(&self, f: &SparsePoly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let d = f.is_homogeneous(&self.weighting).ok_or_else(|| {
            Error::Usage(format!("membership test needs a homogeneous polynomial, got {f}"))
        })?;
        let columns = MonomialIndex::new(monomials_of_weight(&self.weighting, d));
        let mut rows = self.component_rows(d, &columns);
        let base = rank(&rows, columns.len());
        rows.push(columns.vector(f));
        Ok(rank(&rows, columns.len()) == base)
    }
}

/// Column index over a list of monomials.
struct MonomialIndex {
    monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl MonomialIndex {
    fn new(monomials: Vec<Exponent>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialIndex { monomials, index }
    }

    /// Union of the supports, in ascending graded-lex order.
    fn covering(polys: &[SparsePoly]) -> Self {
        let set: BTreeSet<Exponent> = polys
            .iter()
            .flat_map(|p| p.exponents().cloned())
            .collect();
        Self::new(set.into_iter().collect())
    }

    fn len(&self) -> usize {
        self.monomials.len()
    }

    fn index(&self, e: &Exponent) -> usize {
        self.index[e]
    }

    fn vector(&self, p: &SparsePoly) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.len()];
        for (e, c) in p.terms() {
            v[self.index(e)] = c.clone();
        }
        v
    }

    fn poly(&self, flavor: Flavor, nvars: usize, v: &[Q]) -> SparsePoly {
        SparsePoly::from_terms(
            flavor,
            nvars,
            self.monomials
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e.clone(), c.clone())),
        )
        .expect("monomials have the ambient length")
    }
}

fn rank(rows: &[Vec<Q>], cols: usize) -> usize {
    crate::linalg::rank_of(rows, cols)
}

/// Rank of the span of a list of polynomials of one flavor.
pub fn span_rank(polys: &[SparsePoly]) -> usize {
    let idx = MonomialIndex::covering(polys);
    rank(&polys.iter().map(|p| idx.vector(p)).collect::<Vec<_>>(), idx.len())
}

/// Whether two lists of polynomials span the same vector space.
pub fn spans_equal(a: &[SparsePoly], b: &[SparsePoly]) -> bool {
    let ra = span_rank(a);
    ra == span_rank(b) && {
        let both: Vec<SparsePoly> = a.iter().chain(b).cloned().collect();
        span_rank(&both) == ra
    }
}

/// Whether `p` lies in the span of `polys`.
pub fn in_span(p: &SparsePoly, polys: &[SparsePoly]) -> bool {
    if p.is_zero() {
        return true;
    }
    let mut all = polys.to_vec();
    let base = span_rank(&all);
    all.push(p.clone());
    span_rank(&all) == base
}

/// A reduced-echelon basis of the span of `polys`.
pub fn span_basis(polys: &[SparsePoly]) -> Vec<SparsePoly> {
    let Some(first) = polys.first() else {
        return Vec::new();
    };
    let (flavor, n) = (first.flavor(), first.nvars());
    let idx = MonomialIndex::covering(polys);
    let m = ExactMatrix::from_rows(polys.iter().map(|p| idx.vector(p)).collect(), idx.len())
        .expect("rows have the column count");
    m.rref().0.iter().map(|r| idx.poly(flavor, n, r)).collect()
}

/// Basis of `I^⊥` in weighted degree `j`.
///
/// Rows of the pairing matrix are the multiples `u·g` spanning `I_j`;
/// columns are the dual monomials `y^K` of weight `j`, weighted by the value
/// of `x^K ∘ y^K` under the chosen action. The dual piece is its kernel.
pub fn dual_component(ideal: &GradedIdeal, j: u64, act: Action) -> Vec<SparsePoly> {
    let columns = MonomialIndex::new(monomials_of_weight(&ideal.weighting, j));
    let mut rows = ideal.component_rows(j, &columns);
    if act == Action::Derivation {
        let weights: Vec<Q> = columns.monomials.iter().map(|k| act.pairing(k)).collect();
        for row in &mut rows {
            for (v, w) in row.iter_mut().zip(&weights) {
                if !v.is_zero() {
                    *v *= w;
                }
            }
        }
    }
    let m = ExactMatrix::from_rows(rows, columns.len()).expect("rows have the column count");
    m.kernel()
        .iter()
        .map(|v| columns.poly(Flavor::Dual, ideal.nvars(), v))
        .collect()
}

/// `HF(j) = dim (R/I)_j = dim I^⊥_j`.
pub fn hilbert_function(ideal: &GradedIdeal, j: u64) -> usize {
    monomials_of_weight(&ideal.weighting, j).len() - ideal.component_dimension(j)
}

/// Hilbert function values, h-vector and socle degree of a one-dimensional
/// quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    /// `HF(0), …, HF(s + 1)`.
    pub hilbert: Vec<usize>,
    /// `h_0, …, h_s`.
    pub h: Vec<i64>,
    /// Last degree with a nonzero `h`.
    pub socle_degree: u64,
    /// The stabilized Hilbert function value (the degree `r` for points).
    pub stable_value: usize,
}

/// Computes `HF(0..)` until two consecutive values agree, then reads off the
/// h-vector. No agreement by `j_max` is reported as inconclusive.
pub fn h_vector(ideal: &GradedIdeal, j_max: u64) -> Result<HVector> {
    let mut hilbert = vec![hilbert_function(ideal, 0)];
    for j in 1..=j_max {
        let v = hilbert_function(ideal, j);
        let prev = hilbert[hilbert.len() - 1];
        hilbert.push(v);
        if v == prev {
            let s = j - 1;
            let h = (0..=s as usize)
                .map(|t| {
                    let below = if t == 0 { 0 } else { hilbert[t - 1] as i64 };
                    hilbert[t] as i64 - below
                })
                .collect();
            return Ok(HVector {
                hilbert,
                h,
                socle_degree: s,
                stable_value: v,
            });
        }
    }
    Err(Error::Inconclusive(format!(
        "Hilbert function did not stabilize by degree {j_max} (values {hilbert:?})"
    )))
}

/// Finite presentation of a submodule of the dual module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPresentation {
    generators: Vec<SparsePoly>,
    action: Action,
    weighting: Weighting,
}

impl DualPresentation {
    pub fn new(generators: Vec<SparsePoly>, action: Action, weighting: Weighting) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.flavor() != Flavor::Dual {
                return Err(Error::InvalidModule(format!(
                    "generator {} is a ring polynomial",
                    i + 1
                )));
            }
            if g.nvars() != weighting.len() {
                return Err(Error::Dimension {
                    expected: weighting.len(),
                    found: g.nvars(),
                });
            }
            if g.is_zero() {
                return Err(Error::InvalidModule(format!("generator {} is zero", i + 1)));
            }
        }
        Ok(DualPresentation {
            generators,
            action,
            weighting,
        })
    }

    /// The cyclic module `⟨F⟩`.
    pub fn cyclic(f: SparsePoly, action: Action, weighting: Weighting) -> Result<Self> {
        Self::new(vec![f], action, weighting)
    }

    pub fn generators(&self) -> &[SparsePoly] {
        &self.generators
    }

    pub fn action(&self) -> Action {
        self.action
    }

    pub fn weighting(&self) -> &Weighting {
        &self.weighting
    }

    pub fn nvars(&self) -> usize {
        self.weighting.len()
    }

    fn homogeneous_degrees(&self) -> Result<Vec<u64>> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                g.is_homogeneous(&self.weighting).ok_or_else(|| {
                    Error::InvalidModule(format!("generator {} ({g}) is not homogeneous", i + 1))
                })
            })
            .collect()
    }

    /// Spanning set `{u ∘ Fᵢ}` of the degree-`j` piece, tagged with the
    /// generator index and multiplier.
    fn spanning_set(&self, j: u64) -> Result<Vec<(usize, Exponent, SparsePoly)>> {
        let degrees = self.homogeneous_degrees()?;
        let n = self.nvars();
        let mut out = Vec::new();
        for (i, (g, &d)) in self.generators.iter().zip(&degrees).enumerate() {
            if d < j {
                continue;
            }
            for u in monomials_of_weight(&self.weighting, d - j) {
                let x = SparsePoly::monomial(Flavor::Ring, u.clone(), Q::from_integer(1.into()));
                debug_assert_eq!(x.nvars(), n);
                let image = apply(&x, g, self.action)?;
                if !image.is_zero() {
                    out.push((i, u, image));
                }
            }
        }
        Ok(out)
    }

    /// Basis of the submodule's piece in degree `j`.
    pub fn module_component(&self, j: u64) -> Result<Vec<SparsePoly>> {
        let span: Vec<SparsePoly> = self.spanning_set(j)?.into_iter().map(|(_, _, p)| p).collect();
        Ok(span_basis(&span))
    }

    /// Every degree in which the submodule can be nonzero.
    pub fn degrees(&self) -> Result<Vec<u64>> {
        let top = self.homogeneous_degrees()?.into_iter().max().unwrap_or(0);
        Ok((0..=top).collect())
    }

    /// The whole (finite-dimensional) submodule as a list of spanning vectors.
    pub fn all_components(&self) -> Result<Vec<SparsePoly>> {
        let mut out = Vec::new();
        for j in self.degrees()? {
            out.extend(self.module_component(j)?);
        }
        Ok(out)
    }
}

/// Basis of `Ann_R(W)` in weighted degree `d`: the kernel of
/// `g ↦ (g ∘ F1, …, g ∘ Fm)` on `R_d`.
pub fn annihilator_component(module: &DualPresentation, d: u64) -> Result<Vec<SparsePoly>> {
    let degrees = module.homogeneous_degrees()?;
    let n = module.nvars();
    let columns = MonomialIndex::new(monomials_of_weight(&module.weighting, d));
    // One block of rows per generator, indexed by dual monomials of weight deg(Fi) − d.
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (g, &deg) in module.generators.iter().zip(&degrees) {
        if deg < d {
            continue;
        }
        let targets = MonomialIndex::new(monomials_of_weight(&module.weighting, deg - d));
        let mut block = vec![vec![Q::zero(); columns.len()]; targets.len()];
        for (col, alpha) in columns.monomials.iter().enumerate() {
            for (beta, c) in g.terms() {
                if let Some((k, e)) = module.action.apply_monomial(alpha, beta) {
                    let row = targets.index(&e);
                    block[row][col] += c * Q::from_integer(k);
                }
            }
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|v| !v.is_zero())));
    }
    let m = ExactMatrix::from_rows(rows, columns.len()).expect("rows have the column count");
    Ok(m
        .kernel()
        .iter()
        .map(|v| columns.poly(Flavor::Ring, n, v))
        .collect())
}

/// Witness expansion `G = Σ fᵢ ∘ F_{index}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    /// `(fᵢ, generator index)` pairs with nonzero `fᵢ`.
    pub parts: Vec<(SparsePoly, usize)>,
}

impl Membership {
    /// Re-applies the expansion to the module's generators.
    pub fn reapply(&self, module: &DualPresentation) -> Result<SparsePoly> {
        let mut acc = SparsePoly::zero(Flavor::Dual, module.nvars());
        for (f, i) in &self.parts {
            acc = acc.checked_add(&apply(f, &module.generators[*i], module.action)?)?;
        }
        Ok(acc)
    }
}

/// Expresses a homogeneous `G` through the module generators, or proves it is
/// not in the submodule.
pub fn module_membership(g: &SparsePoly, module: &DualPresentation) -> Result<Option<Membership>> {
    if g.flavor() != Flavor::Dual {
        return Err(Error::Usage("membership target must be a dual polynomial".into()));
    }
    if g.is_zero() {
        return Ok(Some(Membership { parts: Vec::new() }));
    }
    let e = g.is_homogeneous(&module.weighting).ok_or_else(|| {
        Error::Usage(format!("membership target {g} is not homogeneous"))
    })?;
    let candidates = module.spanning_set(e)?;
    let rows_idx = MonomialIndex::new(monomials_of_weight(&module.weighting, e));
    let columns: Vec<Vec<Q>> = candidates.iter().map(|(_, _, p)| rows_idx.vector(p)).collect();
    let m = ExactMatrix::from_columns(&columns, rows_idx.len())?;
    let Some(x) = m.solve(&rows_idx.vector(g))? else {
        return Ok(None);
    };
    let n = module.nvars();
    let mut parts: Vec<SparsePoly> = vec![SparsePoly::zero(Flavor::Ring, n); module.generators.len()];
    for ((i, u, _), c) in candidates.iter().zip(&x) {
        if !c.is_zero() {
            let term = SparsePoly::monomial(Flavor::Ring, u.clone(), c.clone());
            parts[*i] = parts[*i].checked_add(&term)?;
        }
    }
    Ok(Some(Membership {
        parts: parts
            .into_iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(i, f)| (f, i))
            .collect(),
    }))
}

/// Splits `g` as a sum of one element from the span of each list, if possible.
pub fn sum_membership(g: &SparsePoly, spaces: &[Vec<SparsePoly>]) -> Result<Option<Vec<SparsePoly>>> {
    let flat: Vec<SparsePoly> = spaces.iter().flatten().cloned().chain([g.clone()]).collect();
    let idx = MonomialIndex::covering(&flat);
    let columns: Vec<Vec<Q>> = spaces.iter().flatten().map(|p| idx.vector(p)).collect();
    let m = ExactMatrix::from_columns(&columns, idx.len())?;
    let Some(x) = m.solve(&idx.vector(g))? else {
        return Ok(None);
    };
    let mut out = Vec::with_capacity(spaces.len());
    let mut k = 0;
    for space in spaces {
        let mut acc = SparsePoly::zero(g.flavor(), g.nvars());
        for p in space {
            acc = acc.checked_add(&p.scale(&x[k]))?;
            k += 1;
        }
        out.push(acc);
    }
    Ok(Some(out))
}

/// The full inverse system of an Artinian graded ideal, piece by piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinianDual {
    action: Action,
    weighting: Weighting,
    /// Nonzero pieces in ascending degree.
    pieces: Vec<(u64, Vec<SparsePoly>)>,
}

/// Computes `I^⊥` for an Artinian ideal.
///
/// Enumeration stops once `max weight` consecutive positive degrees have a
/// zero dual piece: any nonzero element above that window would have a
/// nonzero contraction landing inside it. Hitting [`degree_cap`] first is
/// reported as inconclusive (the ideal is probably not Artinian).
pub fn artinian_dual(ideal: &GradedIdeal, act: Action) -> Result<ArtinianDual> {
    let window = ideal.weighting.max_weight();
    let cap = degree_cap();
    let mut pieces = Vec::new();
    let mut zeros = 0;
    let mut j = 0;
    loop {
        if j > cap {
            return Err(Error::Inconclusive(format!(
                "dual module still nonzero near degree cap {cap}; is the ideal Artinian?"
            )));
        }
        let piece = dual_component(ideal, j, act);
        if piece.is_empty() {
            if j > 0 {
                zeros += 1;
            }
        } else {
            zeros = 0;
            pieces.push((j, piece));
        }
        if zeros >= window {
            break;
        }
        j += 1;
    }
    Ok(ArtinianDual {
        action: act,
        weighting: ideal.weighting.clone(),
        pieces,
    })
}

impl ArtinianDual {
    pub fn pieces(&self) -> &[(u64, Vec<SparsePoly>)] {
        &self.pieces
    }

    pub fn piece(&self, j: u64) -> &[SparsePoly] {
        self.pieces
            .iter()
            .find(|(d, _)| *d == j)
            .map(|(_, p)| p.as_slice())
            .unwrap_or(&[])
    }

    pub fn top_degree(&self) -> Option<u64> {
        self.pieces.last().map(|(d, _)| *d)
    }

    /// Length of the Artinian quotient.
    pub fn total_dimension(&self) -> usize {
        self.pieces.iter().map(|(_, p)| p.len()).sum()
    }

    /// Image of the variables acting on the higher pieces, inside degree `j`.
    fn image_in(&self, j: u64) -> Vec<SparsePoly> {
        let n = self.weighting.len();
        let mut image = Vec::new();
        for (i, &a) in self.weighting.weights().iter().enumerate() {
            let x = SparsePoly::variable(Flavor::Ring, n, i);
            for f in self.piece(j + a) {
                let v = apply(&x, f, self.action).expect("flavors and arities agree");
                if !v.is_zero() {
                    image.push(v);
                }
            }
        }
        image
    }

    /// Number of minimal generators in each degree that has any.
    pub fn socle_profile(&self) -> Vec<(u64, usize)> {
        self.pieces
            .iter()
            .filter_map(|(j, piece)| {
                let count = piece.len() - span_rank(&self.image_in(*j));
                (count > 0).then_some((*j, count))
            })
            .collect()
    }

    /// Total number of minimal generators (the Cohen–Macaulay type).
    pub fn socle_dimension(&self) -> usize {
        self.socle_profile().iter().map(|(_, c)| c).sum()
    }

    /// One choice of minimal generators, lowest degree first.
    pub fn minimal_generators(&self) -> Vec<SparsePoly> {
        let mut out = Vec::new();
        for (j, piece) in &self.pieces {
            let mut span = self.image_in(*j);
            for f in piece {
                if !in_span(f, &span) {
                    span.push(f.clone());
                    out.push(f.clone());
                }
            }
        }
        out
    }
}
