//! Sparse exact polynomials in the ring `k[x1..xn]` and its divided-power
//! dual `k[y1..yn]`, plus the contraction and derivation actions of the
//! former on the latter.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result, Q};

pub use parse::{parse_poly, ParseError};

/// Exponent vector of a monomial.
///
/// Ordered graded-lexicographically: total degree first, then
/// lexicographically on the entries. Iterating a [`SparsePoly`] walks its
/// terms in this order, so the last term is the leading one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    /// The exponent of the single variable `i` (zero-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponent(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Componentwise sum.
    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    /// `∏ eᵢ!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e))
    }

    /// `∏ βᵢ!/(βᵢ−αᵢ)!` for `self = β ≥ α`.
    fn falling_factorial(&self, alpha: &Exponent) -> BigInt {
        let mut acc = BigInt::one();
        for (&b, &a) in self.0.iter().zip(&alpha.0) {
            for k in (b - a + 1)..=b {
                acc *= k;
            }
        }
        acc
    }

    fn padded(&self, n: usize) -> Exponent {
        let mut e = self.0.clone();
        e.resize(n, 0);
        Exponent(e)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Positive integer weights `(a1, ..., an)` on the variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weighting(Vec<u64>);

impl Weighting {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::Usage(format!("weight of variable {} must be positive", i + 1)));
        }
        Ok(Weighting(weights))
    }

    /// All weights equal to one.
    pub fn standard(n: usize) -> Self {
        Weighting(vec![1; n])
    }

    pub fn weights(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_standard(&self) -> bool {
        self.0.iter().all(|&w| w == 1)
    }

    pub fn max_weight(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(1)
    }

    /// Weighted degree `Σ kᵢ aᵢ` of an exponent.
    pub fn degree(&self, k: &Exponent) -> Result<u64> {
        weighted_degree(k, self)
    }

    fn degree_unchecked(&self, k: &Exponent) -> u64 {
        k.0.iter().zip(&self.0).map(|(&e, &w)| e as u64 * w).sum()
    }
}

/// Weighted degree `Σ kᵢ aᵢ`.
pub fn weighted_degree(k: &Exponent, w: &Weighting) -> Result<u64> {
    if k.len() != w.len() {
        return Err(Error::Dimension {
            expected: w.len(),
            found: k.len(),
        });
    }
    Ok(w.degree_unchecked(k))
}

/// Every exponent of weighted degree `j`, in descending lexicographic order.
pub fn monomials_of_weight(w: &Weighting, j: u64) -> Vec<Exponent> {
    fn go(weights: &[u64], rest: u64, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        match weights.split_first() {
            None => {
                if rest == 0 {
                    out.push(Exponent(prefix.clone()));
                }
            }
            Some((&a, tail)) => {
                for k in (0..=rest / a).rev() {
                    prefix.push(k as u32);
                    go(tail, rest - k * a, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(&w.0, j, &mut Vec::with_capacity(w.len()), &mut out);
    out
}

/// Which side of the duality a polynomial lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Elements of the polynomial ring, variables `x1..xn`.
    Ring,
    /// Elements of the divided-power module, variables `y1..yn`.
    Dual,
}

impl Flavor {
    pub fn symbol(self) -> char {
        match self {
            Flavor::Ring => 'x',
            Flavor::Dual => 'y',
        }
    }
}

/// How the ring acts on the dual module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    /// `x^α ∘ y^β = y^(β−α)` when `β ≥ α`, else 0.
    Contraction,
    /// `x^α` acts as `∂^α`.
    Derivation,
}

impl Action {
    /// Value of the pairing `x^K ∘ y^K`.
    pub fn pairing(self, k: &Exponent) -> Q {
        match self {
            Action::Contraction => Q::one(),
            Action::Derivation => Q::from_integer(k.factorial()),
        }
    }

    /// `x^α ∘ y^β`, as coefficient and exponent.
    pub fn apply_monomial(self, alpha: &Exponent, beta: &Exponent) -> Option<(BigInt, Exponent)> {
        let diff = beta.checked_sub(alpha)?;
        let c = match self {
            Action::Contraction => BigInt::one(),
            Action::Derivation => beta.falling_factorial(alpha),
        };
        Some((c, diff))
    }
}

impl std::str::FromStr for Action {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "contract" | "contraction" => Ok(Action::Contraction),
            "derive" | "derivation" => Ok(Action::Derivation),
            other => Err(Error::Usage(format!("unknown action '{other}'"))),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Contraction => "contraction",
            Action::Derivation => "derivation",
        })
    }
}

/// Direction of the diagonal change of basis `y^β ↦ β!·y^β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rescale {
    ToDerivation,
    ToContraction,
}

/// Sparse polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored and every exponent has length `nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    flavor: Flavor,
    nvars: usize,
    terms: BTreeMap<Exponent, Q>,
}

impl SparsePoly {
    pub fn zero(flavor: Flavor, nvars: usize) -> Self {
        SparsePoly {
            flavor,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(flavor: Flavor, nvars: usize, c: Q) -> Self {
        Self::monomial(flavor, Exponent::zero(nvars), c)
    }

    pub fn one(flavor: Flavor, nvars: usize) -> Self {
        Self::constant(flavor, nvars, Q::one())
    }

    pub fn monomial(flavor: Flavor, exp: Exponent, c: Q) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        SparsePoly { flavor, nvars, terms }
    }

    /// The variable with zero-based index `i`.
    pub fn variable(flavor: Flavor, nvars: usize, i: usize) -> Self {
        Self::monomial(flavor, Exponent::unit(nvars, i), Q::one())
    }

    /// Builds a polynomial, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(flavor: Flavor, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Q)>,
    {
        let mut p = Self::zero(flavor, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension {
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Q)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    /// Graded-lex leading term.
    pub fn leading_term(&self) -> Option<(&Exponent, &Q)> {
        self.terms.iter().next_back()
    }

    /// Scales so the graded-lex leading coefficient is one; zero stays zero.
    pub fn normalized(&self) -> SparsePoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Extends the variable count, padding exponents with zeros.
    pub fn with_nvars(&self, n: usize) -> Result<SparsePoly> {
        if n < self.nvars {
            if self.terms.keys().any(|e| e.0[n..].iter().any(|&k| k > 0)) {
                return Err(Error::Dimension {
                    expected: n,
                    found: self.nvars,
                });
            }
            let terms = self
                .terms
                .iter()
                .map(|(e, c)| (Exponent(e.0[..n].to_vec()), c.clone()))
                .collect();
            return Ok(SparsePoly {
                flavor: self.flavor,
                nvars: n,
                terms,
            });
        }
        Ok(SparsePoly {
            flavor: self.flavor,
            nvars: n,
            terms: self.terms.iter().map(|(e, c)| (e.padded(n), c.clone())).collect(),
        })
    }

    /// Same coefficients with the other flavor (`x` ↔ `y`).
    pub fn with_flavor(&self, flavor: Flavor) -> SparsePoly {
        SparsePoly {
            flavor,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Q) -> SparsePoly {
        if c.is_zero() {
            return Self::zero(self.flavor, self.nvars);
        }
        SparsePoly {
            flavor: self.flavor,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    fn check_compatible(&self, other: &SparsePoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        if self.flavor != other.flavor {
            return Err(Error::Usage("cannot combine ring and dual polynomials".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.checked_add(&-other)
    }

    fn mul_unchecked(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = Self::zero(self.flavor, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }

    /// Product in the polynomial ring. Only defined for ring polynomials.
    pub fn ring_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(other)?;
        if self.flavor != Flavor::Ring {
            return Err(Error::Usage("ring_mul is only defined on ring polynomials".into()));
        }
        Ok(self.mul_unchecked(other))
    }

    pub fn ring_pow(&self, k: u32) -> Result<SparsePoly> {
        if self.flavor != Flavor::Ring {
            return Err(Error::Usage("ring_pow is only defined on ring polynomials".into()));
        }
        Ok(self.form_power(k))
    }

    /// `self^k` as an ordinary polynomial, whatever the flavor.
    ///
    /// On the dual side this is the power of a form in the symmetric algebra,
    /// which is what the derivation action pairs against.
    pub fn form_power(&self, k: u32) -> SparsePoly {
        let mut acc = Self::one(self.flavor, self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Common weighted degree of all terms; `None` for zero or mixed degrees.
    pub fn is_homogeneous(&self, w: &Weighting) -> Option<u64> {
        if w.len() != self.nvars {
            return None;
        }
        let mut degs = self.terms.keys().map(|e| w.degree_unchecked(e));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Largest weighted degree among the terms.
    pub fn max_degree(&self, w: &Weighting) -> Option<u64> {
        self.terms.keys().map(|e| w.degree_unchecked(e)).max()
    }

    /// Largest exponent of the zero-based variable `i` over all terms.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.0[i]).max()
    }

    /// Evaluates at a point.
    pub fn evaluate(&self, point: &[Q]) -> Result<Q> {
        if point.len() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut total = Q::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    v *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Multiplies (`ToDerivation`) or divides (`ToContraction`) each
    /// coefficient by `β!`.
    pub fn rescale(&self, direction: Rescale) -> SparsePoly {
        action_rescale(self, direction)
    }

    pub(crate) fn exponents(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        SparsePoly {
            flavor: self.flavor,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        -&self
    }
}

/// Panics on flavor or arity mismatch; use [`SparsePoly::checked_add`] to
/// get an error instead.
impl Add for &SparsePoly {
    type Output = SparsePoly;

    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;

    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

/// `f ∘ F`: the action of a ring polynomial on a dual polynomial.
pub fn apply(f: &SparsePoly, big_f: &SparsePoly, act: Action) -> Result<SparsePoly> {
    if f.flavor != Flavor::Ring || big_f.flavor != Flavor::Dual {
        return Err(Error::Usage(
            "apply expects a ring polynomial acting on a dual polynomial".into(),
        ));
    }
    if f.nvars != big_f.nvars {
        return Err(Error::Dimension {
            expected: f.nvars,
            found: big_f.nvars,
        });
    }
    let mut out = SparsePoly::zero(Flavor::Dual, big_f.nvars);
    for (alpha, a) in &f.terms {
        for (beta, b) in &big_f.terms {
            if let Some((k, e)) = act.apply_monomial(alpha, beta) {
                out.add_term(e, a * b * Q::from_integer(k));
            }
        }
    }
    Ok(out)
}

/// The change of basis `y^β ↦ β!·y^β` (or its inverse) intertwining the
/// contraction and derivation actions.
pub fn action_rescale(big_f: &SparsePoly, direction: Rescale) -> SparsePoly {
    let terms = big_f
        .terms
        .iter()
        .map(|(e, c)| {
            let f = Q::from_integer(e.factorial());
            let c = match direction {
                Rescale::ToDerivation => c * f,
                Rescale::ToContraction => c / f,
            };
            (e.clone(), c)
        })
        .collect();
    SparsePoly {
        flavor: big_f.flavor,
        nvars: big_f.nvars,
        terms,
    }
}

/// Canonical text form: terms by ascending graded-lex order, no spaces.
impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let sym = self.flavor.symbol();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            let abs = c.abs();
            let is_const = e.0.iter().all(|&k| k == 0);
            if is_const {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let mut first = true;
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "{sym}{}", i + 1)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}
