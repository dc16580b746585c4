//! G-admissible generator sequences of one-dimensional graded Gorenstein
//! quotients, and bounded divisibility probes.
//!
//! For a homogeneous nonzerodivisor `z` on `R/I`, every truncation
//! `I + (zᵗ)` is Artinian Gorenstein, so its inverse system is cyclic,
//! generated by a single form `H_t`. Scaling the `H_t` so that
//! `z ∘ H_{t+1} = H_t` gives the canonical sequence this module builds and
//! checks.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::duality::{
    annihilator_component, artinian_dual, spans_equal, DualPresentation, GradedIdeal,
};
use crate::linalg::ExactMatrix;
use crate::poly::{apply, monomials_of_weight, Action, Exponent, Flavor, SparsePoly};
use crate::{Error, Result, Q};

fn check_z(ideal: &GradedIdeal, z: &SparsePoly) -> Result<u64> {
    if z.flavor() != Flavor::Ring || z.nvars() != ideal.nvars() {
        return Err(Error::Usage(format!(
            "z must be a ring polynomial in {} variables",
            ideal.nvars()
        )));
    }
    match z.is_homogeneous(ideal.weighting()) {
        Some(d) if d > 0 => Ok(d),
        _ => Err(Error::Usage(format!(
            "z = {z} must be homogeneous of positive degree"
        ))),
    }
}

/// The generator of `(I + (zᵗ))^⊥`, certified to generate the whole dual.
///
/// The returned form is not normalized.
pub fn artinian_dual_generator(
    ideal: &GradedIdeal,
    z: &SparsePoly,
    t: u32,
    act: Action,
) -> Result<SparsePoly> {
    check_z(ideal, z)?;
    if t == 0 {
        return Err(Error::Usage("truncation exponent t must be positive".into()));
    }
    let truncated = ideal.with_generator(z.ring_pow(t)?)?;
    let dual = artinian_dual(&truncated, act)?;
    let socle = dual.socle_dimension();
    if socle != 1 {
        return Err(Error::NotGorenstein {
            socle_dimension: socle,
        });
    }
    let top = dual.top_degree().expect("a socle element exists");
    let generator = dual.piece(top)[0].clone();
    // Certify cyclicity: the submodule generated by the top form has the
    // same length as the whole dual.
    let cyclic = DualPresentation::cyclic(generator.clone(), act, ideal.weighting().clone())?;
    let length: usize = (0..=top)
        .map(|j| cyclic.module_component(j).map(|b| b.len()))
        .sum::<Result<usize>>()?;
    if length != dual.total_dimension() {
        return Err(Error::NotGorenstein {
            socle_dimension: socle,
        });
    }
    Ok(generator)
}

/// A G-admissible generator sequence `H₁, …, H_T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSequence {
    ideal: GradedIdeal,
    z: SparsePoly,
    h: Vec<SparsePoly>,
    action: Action,
}

impl GSequence {
    /// Wraps an externally supplied sequence without checking it; use
    /// [`verify_admissible`] to test the conditions.
    pub fn from_parts(
        ideal: GradedIdeal,
        z: SparsePoly,
        h: Vec<SparsePoly>,
        action: Action,
    ) -> Result<Self> {
        check_z(&ideal, &z)?;
        for (i, f) in h.iter().enumerate() {
            if f.flavor() != Flavor::Dual || f.nvars() != ideal.nvars() || f.is_zero() {
                return Err(Error::Usage(format!(
                    "H_{} must be a nonzero dual polynomial in {} variables",
                    i + 1,
                    ideal.nvars()
                )));
            }
        }
        Ok(GSequence {
            ideal,
            z,
            h,
            action,
        })
    }

    pub fn ideal(&self) -> &GradedIdeal {
        &self.ideal
    }

    pub fn z(&self) -> &SparsePoly {
        &self.z
    }

    pub fn action(&self) -> Action {
        self.action
    }

    /// All generators; `generators()[t - 1]` is `H_t`.
    pub fn generators(&self) -> &[SparsePoly] {
        &self.h
    }

    /// `H_t` for `1 ≤ t ≤ T`.
    pub fn h(&self, t: usize) -> Option<&SparsePoly> {
        t.checked_sub(1).and_then(|i| self.h.get(i))
    }

    /// Number of generators `T`.
    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// Weighted degree of `H_t`.
    pub fn degree(&self, t: usize) -> Option<u64> {
        self.h(t)?.is_homogeneous(self.ideal.weighting())
    }

    /// Socle degree of the Artinian reduction, i.e. `deg H₁`.
    pub fn socle_degree(&self) -> Option<u64> {
        self.degree(1)
    }
}

/// Builds `H₁, …, H_T` with `H₁` normalized to graded-lex leading
/// coefficient 1 and each later generator scaled so that `z ∘ H_{t+1} = H_t`.
pub fn g_sequence(ideal: &GradedIdeal, z: &SparsePoly, big_t: u32, act: Action) -> Result<GSequence> {
    if big_t == 0 {
        return Err(Error::Usage("sequence length T must be positive".into()));
    }
    let mut h = vec![artinian_dual_generator(ideal, z, 1, act)?.normalized()];
    for t in 2..=big_t {
        let g = artinian_dual_generator(ideal, z, t, act)?;
        let image = apply(z, &g, act)?;
        let prev = h.last().expect("H_1 is present");
        let (lead, c) = prev.leading_term().expect("generators are nonzero");
        let ratio = image.coefficient(lead) / c;
        if ratio.is_zero() || image != prev.scale(&ratio) {
            return Err(Error::Admissibility {
                level: t as usize,
                reason: format!("z ∘ H_{t} is not a nonzero multiple of H_{}", t - 1),
            });
        }
        h.push(g.scale(&ratio.recip()));
    }
    GSequence::from_parts(ideal.clone(), z.clone(), h, act)
}

/// Outcome of checking both admissibility conditions at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCheck {
    pub level: usize,
    /// `z ∘ H_l = H_{l−1}` (or `0` when `l = 1`).
    pub shift: bool,
    /// `Ann(⟨H_l⟩) ∘ H_{l+1} = ⟨H₁⟩`; `None` when `H_{l+1}` is not available.
    pub annihilator: Option<bool>,
}

/// Per-level admissibility report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub levels: Vec<LevelCheck>,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.levels
            .iter()
            .all(|l| l.shift && l.annihilator != Some(false))
    }
}

/// Checks the shift condition and the annihilator condition for every level
/// `l ≤ l_max` the sequence supports.
pub fn verify_admissible(seq: &GSequence, l_max: usize) -> Result<AdmissibilityReport> {
    let w = seq.ideal.weighting().clone();
    let h1 = DualPresentation::cyclic(seq.h[0].clone(), seq.action, w.clone())?;
    let mut levels = Vec::new();
    for l in 1..=l_max.min(seq.len()) {
        let image = apply(&seq.z, &seq.h[l - 1], seq.action)?;
        let shift = if l == 1 {
            image.is_zero()
        } else {
            image == seq.h[l - 2]
        };
        let annihilator = match seq.h.get(l) {
            None => None,
            Some(next) => Some(annihilator_condition(seq, l, next, &h1)?),
        };
        levels.push(LevelCheck {
            level: l,
            shift,
            annihilator,
        });
    }
    Ok(AdmissibilityReport { levels })
}

/// Degreewise comparison of `Ann(⟨H_l⟩) ∘ H_{l+1}` with `⟨H₁⟩`.
fn annihilator_condition(
    seq: &GSequence,
    l: usize,
    next: &SparsePoly,
    h1: &DualPresentation,
) -> Result<bool> {
    let w = seq.ideal.weighting();
    let Some(top) = next.is_homogeneous(w) else {
        return Ok(false);
    };
    let module = DualPresentation::cyclic(seq.h[l - 1].clone(), seq.action, w.clone())?;
    for d in 0..=top {
        let mut image = Vec::new();
        for g in annihilator_component(&module, d)? {
            let v = apply(&g, next, seq.action)?;
            if !v.is_zero() {
                image.push(v);
            }
        }
        if !spans_equal(&image, &h1.module_component(top - d)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A divisibility witness `H_t = a ∘ (F ∘ H_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub f: SparsePoly,
    pub r: usize,
}

fn checked_probe(seq: &GSequence, a: &SparsePoly) -> Result<u64> {
    if a.flavor() != Flavor::Ring || a.nvars() != seq.ideal.nvars() {
        return Err(Error::Usage("probe element must be a ring polynomial".into()));
    }
    let d = a
        .is_homogeneous(seq.ideal.weighting())
        .ok_or_else(|| Error::Usage(format!("probe element {a} is not homogeneous")))?;
    if seq.ideal.contains(a)? {
        return Err(Error::Usage(format!(
            "probe element {a} lies in the ideal; a nonzero element of the quotient is required"
        )));
    }
    Ok(d)
}

/// Solves `a ∘ (F ∘ H_r) = H_t` for a homogeneous `F` of the forced degree.
pub fn solve_divisibility(seq: &GSequence, a: &SparsePoly, t: usize, r: usize) -> Result<Option<SparsePoly>> {
    let deg_a = checked_probe(seq, a)?;
    let (Some(target), Some(source)) = (seq.h(t), seq.h(r)) else {
        return Err(Error::Usage(format!(
            "levels t = {t} and r = {r} must lie in 1..={}",
            seq.len()
        )));
    };
    let w = seq.ideal.weighting();
    let (dt, dr) = (seq.degree(t), seq.degree(r));
    let (Some(dt), Some(dr)) = (dt, dr) else {
        return Ok(None);
    };
    let Some(deg_f) = dr.checked_sub(dt).and_then(|d| d.checked_sub(deg_a)) else {
        return Ok(None);
    };
    let multipliers = monomials_of_weight(w, deg_f);
    if multipliers.is_empty() {
        return Ok(None);
    }
    // (a·x^u) ∘ H_r for every candidate monomial u of F.
    let images = multipliers
        .iter()
        .map(|u| {
            let au = a.ring_mul(&SparsePoly::monomial(Flavor::Ring, u.clone(), Q::one()))?;
            apply(&au, source, seq.action)
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = monomials_of_weight(w, dt);
    let position = |e: &Exponent| rows.iter().position(|m| m == e).expect("degree matches");
    let columns: Vec<Vec<Q>> = images
        .iter()
        .map(|p| {
            let mut col = vec![Q::zero(); rows.len()];
            for (e, c) in p.terms() {
                col[position(e)] = c.clone();
            }
            col
        })
        .collect();
    let mut rhs = vec![Q::zero(); rows.len()];
    for (e, c) in target.terms() {
        rhs[position(e)] = c.clone();
    }
    let m = ExactMatrix::from_columns(&columns, rows.len())?;
    Ok(m.solve(&rhs)?.map(|x| {
        SparsePoly::from_terms(
            Flavor::Ring,
            seq.ideal.nvars(),
            multipliers.into_iter().zip(x).filter(|(_, c)| !c.is_zero()),
        )
        .expect("multipliers have the ambient length")
    }))
}

/// Searches `r = t..=r_max` for the first witness `H_t = a ∘ (F ∘ H_r)`.
///
/// `None` means no witness within the bound; it is evidence, not proof, of a
/// divisibility failure.
pub fn divisibility_probe(
    seq: &GSequence,
    a: &SparsePoly,
    t: usize,
    r_max: usize,
) -> Result<Option<Witness>> {
    checked_probe(seq, a)?;
    if t == 0 || t > r_max || r_max > seq.len() {
        return Err(Error::Usage(format!(
            "need 1 ≤ t ≤ r_max ≤ T = {}, got t = {t}, r_max = {r_max}",
            seq.len()
        )));
    }
    for r in t..=r_max {
        if let Some(f) = solve_divisibility(seq, a, t, r)? {
            assert!(r >= t, "witness levels never drop below t");
            return Ok(Some(Witness { f, r }));
        }
    }
    Ok(None)
}

/// Default probe set: monomials of total degree at most `e − 1` outside `I`.
pub fn probe_default_set(seq: &GSequence, e: u64) -> Result<Vec<SparsePoly>> {
    let n = seq.ideal.nvars();
    let standard = crate::poly::Weighting::standard(n);
    let mut out = Vec::new();
    for d in 0..e {
        for m in monomials_of_weight(&standard, d).into_iter().rev() {
            let p = SparsePoly::monomial(Flavor::Ring, m, Q::one());
            if !seq.ideal.contains(&p)? {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Outcome of one probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeOutcome {
    pub a: SparsePoly,
    pub witness: Option<Witness>,
}

/// Runs [`divisibility_probe`] over many elements in parallel.
pub fn probe_all(
    seq: &GSequence,
    probes: &[SparsePoly],
    t: usize,
    r_max: usize,
) -> Result<Vec<ProbeOutcome>> {
    probes
        .par_iter()
        .map(|a| {
            Ok(ProbeOutcome {
                a: a.clone(),
                witness: divisibility_probe(seq, a, t, r_max)?,
            })
        })
        .collect()
}
