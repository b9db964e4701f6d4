//! The Laurent-series character `φ` on words and its algebraic Birkhoff
//! decomposition `φ = φ₋⁻¹ * φ₊`, realized by the Bogoliubov recursion over
//! the reduced coproduct.
//!
//! On an admissible word `φ` acts by `φ(1) = 1`, `φ(y w) = x(z) φ(w)`,
//! `φ(d w) = ∂_z φ(w)`, with `φ(y) = x(z) = e^z/(1 - e^z)`.
//!
//! # Precision
//!
//! A [`CharacterState`] expands `x(z)` once, through `z^(P-1)`. A word of
//! weight `W` then has `φ`, `φ̄` and `φ₊` correct through `z^(P-W)`, since each
//! letter costs one order and the pole order of `φ₋(w')` is bounded by the
//! weight of `w'`. Any constant term therefore needs `P >= W`; the default is
//! `P = W + 4`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_arith::{int, Rational};
use crate::hopf_words::{reduced_coproduct, shuffle0, Letter, Word, WordSum};
use crate::laurent::LaurentSeries;

/// Extra orders of `z` kept above the minimum needed for a constant term.
pub const DEFAULT_MARGIN: i64 = 4;

/// Arguments `(k_1, ..., k_n)` of a value at `(-k_1, ..., -k_n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// `k_1 + ... + k_n`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The word `d^{k_n} y ⋯ d^{k_1} y`.
    pub fn word(&self) -> Word {
        Word::from_zeta_arguments(&self.0)
    }

    pub fn word_weight(&self) -> usize {
        self.total() as usize + self.depth()
    }

    /// All compositions of depth `1..=max_depth` with `total <= max_total`,
    /// by depth, then total, then lexicographically.
    pub fn enumerate(max_depth: usize, max_total: u32) -> Vec<Composition> {
        let mut out = Vec::new();
        for depth in 1..=max_depth {
            for total in 0..=max_total {
                let mut current = Vec::with_capacity(depth);
                fill_compositions(depth, total, &mut current, &mut out);
            }
        }
        out
    }
}

fn fill_compositions(
    depth: usize,
    remaining: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Composition>,
) {
    if current.len() + 1 == depth {
        current.push(remaining);
        out.push(Composition(current.clone()));
        current.pop();
        return;
    }
    for k in 0..=remaining {
        current.push(k);
        fill_compositions(depth, remaining - k, current, out);
        current.pop();
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("`{p}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

fn apply_operator_chain(w: &Word, x: &LaurentSeries) -> Result<LaurentSeries> {
    if w.is_unit() {
        return Ok(LaurentSeries::one());
    }
    let blocks = w
        .blocks()
        .ok_or_else(|| Error::NotAdmissible(w.to_string()))?;
    let (first, rest) = blocks.split_first().expect("non-unit word has a block");
    let mut acc = x.clone();
    for &k in rest.iter().rev() {
        acc = x * &acc.nth_derivative(k);
    }
    Ok(acc.nth_derivative(*first))
}

/// `φ(w)` correct through `z^(precision - 1)`.
pub fn phi(w: &Word, precision: i64) -> Result<LaurentSeries> {
    if w.is_unit() {
        return Ok(LaurentSeries::one());
    }
    let weight = w.weight() as i64;
    let x = LaurentSeries::x((precision + weight - 1).max(0));
    Ok(apply_operator_chain(w, &x)?.truncated(precision))
}

/// Memoized `φ`, `φ₋`, `φ₊` at one fixed working precision.
///
/// Single-owner: use one state per thread.
#[derive(Debug, Clone)]
pub struct CharacterState {
    precision: i64,
    margin: i64,
    x: LaurentSeries,
    phi_cache: HashMap<Word, LaurentSeries>,
    minus_cache: HashMap<Word, LaurentSeries>,
    plus_cache: HashMap<Word, LaurentSeries>,
    lemma_cache: HashMap<Word, LaurentSeries>,
}

impl CharacterState {
    /// Working precision `precision`: `x(z)` is expanded through
    /// `z^(precision - 1)`.
    pub fn new(precision: i64) -> Self {
        let precision = precision.max(1);
        CharacterState {
            precision,
            margin: DEFAULT_MARGIN,
            x: LaurentSeries::x(precision),
            phi_cache: HashMap::new(),
            minus_cache: HashMap::new(),
            plus_cache: HashMap::new(),
            lemma_cache: HashMap::new(),
        }
    }

    /// Enough precision for constant terms of words up to `max_weight`.
    pub fn for_weight(max_weight: usize) -> Self {
        Self::new(max_weight as i64 + DEFAULT_MARGIN)
    }

    /// Orders kept beyond the minimum when precision is raised on demand.
    pub fn with_margin(mut self, margin: i64) -> Self {
        self.margin = margin.max(0);
        self
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn margin(&self) -> i64 {
        self.margin
    }

    /// Raises the working precision to at least `precision`, dropping all
    /// caches if it changes.
    pub fn ensure_precision(&mut self, precision: i64) {
        if precision > self.precision {
            *self = Self::new(precision).with_margin(self.margin);
        }
    }

    pub fn phi(&mut self, w: &Word) -> Result<LaurentSeries> {
        if let Some(s) = self.phi_cache.get(w) {
            return Ok(s.clone());
        }
        let s = apply_operator_chain(w, &self.x)?;
        self.phi_cache.insert(w.clone(), s.clone());
        Ok(s)
    }

    /// `φ` extended linearly; words ending in `d` contribute zero.
    pub fn phi_sum(&mut self, ws: &WordSum) -> Result<LaurentSeries> {
        let mut acc = LaurentSeries::zero();
        for (w, c) in ws.reduce_t().iter() {
            acc = &acc + &self.phi(w)?.scale(c);
        }
        Ok(acc)
    }

    /// `(φ₋(w), φ₊(w))` by the Bogoliubov recursion:
    /// `φ̄(w) = φ(w) + Σ φ₋(w') φ(w'')` over `Δ̃₀(w)`, `φ₋ = -π(φ̄)`,
    /// `φ₊ = (id - π)(φ̄)`.
    pub fn birkhoff(&mut self, w: &Word) -> Result<(LaurentSeries, LaurentSeries)> {
        if w.is_unit() {
            return Ok((LaurentSeries::one(), LaurentSeries::one()));
        }
        if let (Some(m), Some(p)) = (self.minus_cache.get(w), self.plus_cache.get(w)) {
            return Ok((m.clone(), p.clone()));
        }
        let mut bar = self.phi(w)?;
        for ((left, right), c) in reduced_coproduct(w)?.reduce_t().iter() {
            let (minus_left, _) = self.birkhoff(left)?;
            let phi_right = self.phi(right)?;
            bar = &bar + &(&minus_left * &phi_right).scale(c);
        }
        let minus = -&bar.pole_part()?;
        let plus = bar.regular_part()?;
        if plus.has_pole() {
            return Err(Error::UnexpectedPole {
                valuation: plus.valuation(),
            });
        }
        self.minus_cache.insert(w.clone(), minus.clone());
        self.plus_cache.insert(w.clone(), plus.clone());
        Ok((minus, plus))
    }

    pub fn phi_plus(&mut self, w: &Word) -> Result<LaurentSeries> {
        Ok(self.birkhoff(w)?.1)
    }

    pub fn phi_minus(&mut self, w: &Word) -> Result<LaurentSeries> {
        Ok(self.birkhoff(w)?.0)
    }

    /// `φ₊` extended linearly over a `T`-reduced sum.
    pub fn phi_plus_sum(&mut self, ws: &WordSum) -> Result<LaurentSeries> {
        let mut acc = LaurentSeries::zero();
        for (w, c) in ws.reduce_t().iter() {
            acc = &acc + &self.phi_plus(w)?.scale(c);
        }
        Ok(acc)
    }

    /// `φ₊(w)` through the depth recursion
    /// `φ₊(w) = (2^dp(w) - 2)⁻¹ Σ φ₊(w') φ₊(w'')` over `Δ̃₀(w)`, bottoming
    /// out at depth one, where `Δ̃₀` vanishes and `φ₊ = (id - π) φ`.
    pub fn phi_plus_by_depth(&mut self, w: &Word) -> Result<LaurentSeries> {
        if w.depth() <= 1 {
            return self.phi_plus(w);
        }
        if let Some(s) = self.lemma_cache.get(w) {
            return Ok(s.clone());
        }
        let mut acc = LaurentSeries::zero();
        for ((left, right), c) in reduced_coproduct(w)?.reduce_t().iter() {
            let a = self.phi_plus_by_depth(left)?;
            let b = self.phi_plus_by_depth(right)?;
            acc = &acc + &(&a * &b).scale(c);
        }
        let denom = int((1i64 << w.depth()) - 2);
        let s = acc.scale(&denom.recip());
        self.lemma_cache.insert(w.clone(), s.clone());
        Ok(s)
    }

    fn with_retry<F>(&mut self, ks: &Composition, f: F) -> Result<Rational>
    where
        F: Fn(&mut Self, &Word) -> Result<Rational>,
    {
        let weight = ks.word_weight() as i64;
        self.ensure_precision(weight + self.margin);
        let w = ks.word();
        match f(self, &w) {
            Err(Error::PrecisionUnderflow { .. }) => {
                self.ensure_precision(weight + 2 * self.margin.max(DEFAULT_MARGIN));
                f(self, &w)
            }
            other => other,
        }
    }

    /// Renormalized value at `(-k_1, ..., -k_n)`: the constant term of
    /// `φ₊(d^{k_n} y ⋯ d^{k_1} y)`.
    pub fn zeta_ems_birkhoff(&mut self, ks: &Composition) -> Result<Rational> {
        self.with_retry(ks, |s, w| s.phi_plus(w)?.constant_term())
    }

    /// Same value through [`CharacterState::phi_plus_by_depth`].
    pub fn zeta_ems_lemma311(&mut self, ks: &Composition) -> Result<Rational> {
        self.with_retry(ks, |s, w| s.phi_plus_by_depth(w)?.constant_term())
    }

    /// Whether `φ₊(u ⧢₀ v) = φ₊(u) φ₊(v)` on the shared precision window.
    pub fn shuffle_relation_check(&mut self, u: &Word, v: &Word) -> Result<bool> {
        for w in [u, v] {
            if !w.is_admissible() {
                return Err(Error::NotAdmissible(w.to_string()));
            }
        }
        self.ensure_precision((u.weight() + v.weight()) as i64 + self.margin);
        let lhs = self.phi_plus_sum(&shuffle0(u, v))?;
        let rhs = &self.phi_plus(u)? * &self.phi_plus(v)?;
        Ok(lhs.agrees_with(&rhs))
    }
}

/// The generator `d(u ⧢₀ v) - du ⧢₀ v - u ⧢₀ dv` of the relation ideal.
pub fn lminus_generator(u: &Word, v: &Word) -> WordSum {
    let d = |w: &Word| w.prepend(Letter::D);
    shuffle0(u, v)
        .prepend(Letter::D)
        .sub(&shuffle0(&d(u), v))
        .sub(&shuffle0(u, &d(v)))
}

/// True when a series is zero on its whole known window.
pub fn vanishes(s: &LaurentSeries) -> bool {
    s.is_zero() || s.terms().all(|(_, c)| c.is_zero())
}
