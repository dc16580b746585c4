//! Numerical semigroups and the inverse systems of their monomial curves.
//!
//! For generators `a1 < … < an` with gcd one, the dual of the curve ideal
//! `I(a1,…,an)` is spanned by the forms `L_j = Σ_{ω(K)=j} y^K`, one for every
//! `j` in the semigroup. Truncating by `x1^t` keeps the `L_j` whose
//! `y1`-degree stays below `t`.

use num_integer::Integer;
use num_traits::One;

use crate::poly::{monomials_of_weight, Exponent, Flavor, SparsePoly, Weighting};
use crate::{Error, Result, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    weighting: Weighting,
    /// Membership for `0..=frobenius + 1`; everything beyond is a member.
    members: Vec<bool>,
    frobenius: i64,
}

impl NumericalSemigroup {
    /// Generators are sorted and deduplicated; they must be positive with gcd one.
    pub fn new(generators: &[u64]) -> Result<Self> {
        let mut gens = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Err(Error::InvalidSemigroup("no generators".into()));
        }
        if gens[0] == 0 {
            return Err(Error::InvalidSemigroup("generators must be positive".into()));
        }
        let g = gens.iter().fold(0u64, |acc, &a| acc.gcd(&a));
        if g != 1 {
            return Err(Error::InvalidSemigroup(format!(
                "generators {gens:?} have gcd {g}, expected 1"
            )));
        }
        // Scan until a1 consecutive members appear; past that run every
        // integer is a member.
        let a1 = gens[0] as usize;
        let mut members = vec![true];
        let mut run = 1usize;
        let mut j = 0usize;
        while run < a1 {
            j += 1;
            let m = gens
                .iter()
                .any(|&a| (a as usize) <= j && members[j - a as usize]);
            members.push(m);
            run = if m { run + 1 } else { 0 };
        }
        let frobenius = j as i64 - a1 as i64;
        members.truncate((frobenius + 2) as usize);
        let weighting = Weighting::new(gens.clone()).expect("positive generators");
        Ok(NumericalSemigroup {
            generators: gens,
            weighting,
            members,
            frobenius,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// The generators as variable weights.
    pub fn weighting(&self) -> &Weighting {
        &self.weighting
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    /// Smallest generator, the multiplicity of the semigroup ring.
    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn contains(&self, j: u64) -> bool {
        if j as i64 > self.frobenius {
            return true;
        }
        self.members[j as usize]
    }

    /// Membership for a possibly negative integer.
    pub fn contains_signed(&self, j: i64) -> bool {
        j >= 0 && self.contains(j as u64)
    }

    /// Largest non-member, or −1 when the semigroup is all of ℕ.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    /// `L_j = Σ_{ω(K)=j} y^K`; zero when `j` is not in the semigroup.
    pub fn l_form(&self, j: u64) -> SparsePoly {
        let n = self.generators.len();
        SparsePoly::from_terms(
            Flavor::Dual,
            n,
            monomials_of_weight(&self.weighting, j)
                .into_iter()
                .map(|k| (k, Q::one())),
        )
        .expect("exponents have the ambient length")
    }

    /// Binomials `x^K0 − x^K` for every weight `j ≤ degree_bound` with at
    /// least two monomials, `K0` the lexicographically smallest exponent of
    /// that weight. Spans the curve ideal up to the bound; not minimal.
    pub fn toric_relations(&self, degree_bound: u64) -> Vec<SparsePoly> {
        let n = self.generators.len();
        let mut out = Vec::new();
        for j in 0..=degree_bound {
            let mons = monomials_of_weight(&self.weighting, j);
            if mons.len() < 2 {
                continue;
            }
            // Descending lex order puts the smallest exponent last.
            let (base, rest) = mons.split_last().expect("at least two monomials");
            for k in rest {
                out.push(binomial(n, base, k));
            }
        }
        out
    }

    /// Whether `L_j` belongs to the dual of `I + (x1^t)`.
    fn admissible(&self, j: i64, t: u32) -> bool {
        self.contains_signed(j) && !self.contains_signed(j - t as i64 * self.multiplicity() as i64)
    }

    /// The generators `L_j` of `(I + (x1^t))^⊥`, with the minimal ones flagged.
    ///
    /// `j` runs over the semigroup up to `frobenius + t·a1`, keeping those with
    /// `j − t·a1` outside the semigroup (equivalently `deg_{y1} L_j ≤ t − 1`).
    /// Since `xi ∘ L_{j+ai} = L_j`, an entry is minimal exactly when no
    /// `j + ai` is itself kept.
    pub fn truncated_dual_generators(&self, t: u32) -> Result<Vec<TruncatedGenerator>> {
        if t == 0 {
            return Err(Error::Usage("truncation order t must be at least 1".into()));
        }
        let bound = self.frobenius + t as i64 * self.multiplicity() as i64;
        let mut out = Vec::new();
        for j in 0..=bound.max(0) {
            if !self.admissible(j, t) {
                continue;
            }
            let minimal = self
                .generators
                .iter()
                .all(|&a| !self.admissible(j + a as i64, t));
            out.push(TruncatedGenerator {
                degree: j as u64,
                form: self.l_form(j as u64),
                minimal,
            });
        }
        Ok(out)
    }

    /// Minimal generators of `(I + (x1^t))^⊥` for `t = 1..=max_t`.
    pub fn level_table(&self, max_t: u32) -> Result<Vec<TruncationLevel>> {
        (1..=max_t)
            .map(|t| {
                let generators = self
                    .truncated_dual_generators(t)?
                    .into_iter()
                    .filter(|g| g.minimal)
                    .collect();
                Ok(TruncationLevel { t, generators })
            })
            .collect()
    }
}

fn binomial(n: usize, a: &Exponent, b: &Exponent) -> SparsePoly {
    SparsePoly::from_terms(
        Flavor::Ring,
        n,
        [(a.clone(), Q::one()), (b.clone(), -Q::one())],
    )
    .expect("exponents have the ambient length")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedGenerator {
    pub degree: u64,
    pub form: SparsePoly,
    pub minimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationLevel {
    pub t: u32,
    pub generators: Vec<TruncatedGenerator>,
}
