//! Bernoulli-number closed forms for the desingularized (FKMT) and
//! renormalized (EMS) values at non-positive integers, their truncated
//! generating functions, and the identities relating them.
//!
//! Generating functions follow the convention
//! `Z(t_1, ..., t_n) = Σ ζ(-k_1, ..., -k_n) Π (-t_i)^{k_i} / k_i!`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::exact_arith::{bernoulli, binomial, factorial, int, multinomial, Rational};
use crate::renorm::Composition;

/// Truncated power series in one variable, known through `x^degree_cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniSeries {
    coeffs: Vec<Rational>,
}

impl UniSeries {
    pub fn zero(degree_cap: u32) -> Self {
        UniSeries {
            coeffs: vec![Rational::zero(); degree_cap as usize + 1],
        }
    }

    /// Pads or truncates `coeffs` to `degree_cap + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, degree_cap: u32) -> Self {
        coeffs.resize(degree_cap as usize + 1, Rational::zero());
        UniSeries { coeffs }
    }

    /// `e^x` through `x^degree_cap`.
    pub fn exp(degree_cap: u32) -> Self {
        let coeffs = (0..=degree_cap as u64)
            .map(|m| Rational::new(1.into(), factorial(m)))
            .collect();
        UniSeries { coeffs }
    }

    pub fn degree_cap(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, m: u32) -> Option<&Rational> {
        self.coeffs.get(m as usize)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let cap = self.degree_cap().min(other.degree_cap());
        let coeffs = (0..=cap as usize)
            .map(|m| &self.coeffs[m] + &other.coeffs[m])
            .collect();
        UniSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cap = self.degree_cap().min(other.degree_cap()) as usize;
        let mut coeffs = vec![Rational::zero(); cap + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(cap + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(cap + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        UniSeries { coeffs }
    }

    /// Each derivative loses one known order.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return UniSeries::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, a)| a * int(m as i64))
            .collect();
        UniSeries { coeffs }
    }

    pub fn nth_derivative(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |s, _| s.derivative())
    }

    /// Divides by `x^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: u32) -> Result<Self> {
        let k = k as usize;
        if k >= self.coeffs.len() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotInvertible);
        }
        Ok(UniSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Exact quotient; `other` must have a non-zero constant term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let lead = other.coeffs[0].clone();
        if lead.is_zero() {
            return Err(Error::NotInvertible);
        }
        let cap = self.degree_cap().min(other.degree_cap()) as usize;
        let mut q: Vec<Rational> = Vec::with_capacity(cap + 1);
        for m in 0..=cap {
            let mut acc = self.coeffs[m].clone();
            for (j, qj) in q.iter().enumerate() {
                acc -= qj * &other.coeffs[m - j];
            }
            q.push(acc / &lead);
        }
        Ok(UniSeries { coeffs: q })
    }
}

/// Truncated power series in `t_1, ..., t_n`, keeping total degree
/// `<= degree_cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    nvars: usize,
    degree_cap: u32,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiSeries {
    pub fn zero(nvars: usize, degree_cap: u32) -> Self {
        MultiSeries {
            nvars,
            degree_cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, degree_cap: u32, c: Rational) -> Self {
        let mut s = Self::zero(nvars, degree_cap);
        s.add_term(vec![0; nvars], c);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c t^exps`, silently dropping terms beyond the cap.
    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.nvars, "exponent tuple length");
        if c.is_zero() || exps.iter().sum::<u32>() > self.degree_cap {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCount {
                got: other.nvars,
                expected: self.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.nvars, self.degree_cap.min(other.degree_cap));
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let cap = self.degree_cap.min(other.degree_cap);
        let mut out = Self::zero(self.nvars, cap);
        for (ea, a) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, b) in &other.terms {
                if da + eb.iter().sum::<u32>() > cap {
                    continue;
                }
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, a * b);
            }
        }
        Ok(out)
    }

    /// `t_i ↦ -t_i` for every variable.
    pub fn negate_vars(&self) -> Self {
        let mut out = self.clone();
        for (e, c) in out.terms.iter_mut() {
            if e.iter().sum::<u32>() % 2 == 1 {
                *c = -c.clone();
            }
        }
        out
    }

    /// Substitutes `s = t_first + ... + t_n` (zero-based `first`) into `f`.
    pub fn substitute_tail_sum(f: &UniSeries, nvars: usize, first: usize, degree_cap: u32) -> Self {
        let mut out = Self::zero(nvars, degree_cap);
        let width = nvars - first;
        for m in 0..=degree_cap.min(f.degree_cap()) {
            let a = &f.coeffs[m as usize];
            if a.is_zero() {
                continue;
            }
            for parts in weak_compositions(m, width) {
                let parts64: Vec<u64> = parts.iter().map(|&p| p as u64).collect();
                let weight = multinomial(m as u64, &parts64).expect("parts sum to m");
                let mut exps = vec![0; nvars];
                exps[first..].copy_from_slice(&parts);
                out.add_term(exps, a * weight);
            }
        }
        out
    }

    /// Regards `self` as a series in the last `self.nvars` of `nvars` variables.
    pub fn embed_tail(&self, nvars: usize) -> Self {
        let offset = nvars - self.nvars;
        let mut out = Self::zero(nvars, self.degree_cap);
        for (e, c) in &self.terms {
            let mut exps = vec![0; offset];
            exps.extend_from_slice(e);
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Coefficients of `t_1^0 ... t_{n-1}^0 t_n^m` as a univariate series.
    pub fn to_uni(&self) -> UniSeries {
        let mut coeffs = vec![Rational::zero(); self.degree_cap as usize + 1];
        for (e, c) in &self.terms {
            if e[..self.nvars - 1].iter().all(|&x| x == 0) {
                coeffs[e[self.nvars - 1] as usize] = c.clone();
            }
        }
        UniSeries { coeffs }
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O(deg {})", self.degree_cap + 1);
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*t{}", v + 1)?,
                    _ => write!(f, "*t{}^{p}", v + 1)?,
                }
            }
        }
        write!(f, " + O(deg {})", self.degree_cap + 1)
    }
}

struct Record<'a>(&'a [u32], &'a Rational);

impl Serialize for Record<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Term", 2)?;
        st.serialize_field("exps", self.0)?;
        st.serialize_field("coef", &self.1.to_string())?;
        st.end()
    }
}

impl Serialize for MultiSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&Record(e, c))?;
        }
        seq.end()
    }
}

/// All length-`parts` tuples of non-negative integers summing to `total`,
/// in lexicographic order.
pub fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=total {
            cur.push(k);
            go(total - k, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

fn sign(e: u64) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Sums `term(columns)` over every choice of splits, column `j` (zero-based)
/// splitting `ks[j]` into `width(j)` parts, weighted by the multinomials
/// `Π_j k_j! / Π ν!`.
fn column_split_sum<W, F>(ks: &[u32], width: W, term: F) -> Rational
where
    W: Fn(usize) -> usize,
    F: Fn(&[Vec<u32>]) -> Rational,
{
    let choices: Vec<Vec<Vec<u32>>> = ks
        .iter()
        .enumerate()
        .map(|(j, &k)| weak_compositions(k, width(j)))
        .collect();
    let weights: Vec<Vec<Rational>> = choices
        .iter()
        .zip(ks)
        .map(|(cs, &k)| {
            cs.iter()
                .map(|c| {
                    let parts: Vec<u64> = c.iter().map(|&p| p as u64).collect();
                    multinomial(k as u64, &parts).expect("parts sum to k")
                })
                .collect()
        })
        .collect();
    let mut idx = vec![0usize; ks.len()];
    let mut total = Rational::zero();
    let mut columns: Vec<Vec<u32>> = choices.iter().map(|c| c[0].clone()).collect();
    loop {
        for (j, &i) in idx.iter().enumerate() {
            columns[j].clone_from(&choices[j][i]);
        }
        let t = term(&columns);
        if !t.is_zero() {
            let mut w = t;
            for (j, &i) in idx.iter().enumerate() {
                w *= &weights[j][i];
            }
            total += w;
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return total;
            }
            idx[j] += 1;
            if idx[j] < choices[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Sums over triangular arrays `ν_{ij}`, `1 <= i <= j <= n`, whose column
/// sums are the `k_j`; `factor` receives each row sum `r_i = Σ_{j>=i} ν_{ij}`.
fn triangular_sum<F>(ks: &[u32], factor: F) -> Rational
where
    F: Fn(u32) -> Rational,
{
    let n = ks.len();
    let body = column_split_sum(
        ks,
        |j| j + 1,
        |cols| {
            let mut prod = Rational::one();
            for i in 0..n {
                let r: u32 = cols[i..].iter().map(|c| c[i]).sum();
                prod *= factor(r);
                if prod.is_zero() {
                    break;
                }
            }
            prod
        },
    );
    let total: u64 = ks.iter().map(|&k| k as u64).sum();
    sign(total) * body
}

/// Desingularized value `ζ_FKMT(-k_1, ..., -k_n)`.
pub fn zeta_fkmt(ks: &Composition) -> Rational {
    triangular_sum(ks.parts(), |r| bernoulli(r as usize + 1))
}

/// Renormalized value `ζ_EMS(-k_1, ..., -k_n)` from its Bernoulli sum.
pub fn zeta_ems_closed(ks: &Composition) -> Rational {
    triangular_sum(ks.parts(), |r| {
        bernoulli(r as usize + 1) / int(r as i64 + 1)
    })
}

fn check_generating_args(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::DepthOutOfRange {
            depth: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    Ok(())
}

/// `((1 - s) e^s - 1) / (e^s - 1)^2`, a unit series in `s`.
pub fn fkmt_factor(degree_cap: u32) -> UniSeries {
    let e = UniSeries::exp(degree_cap + 2);
    let one_minus_s = vec![Rational::one(), -Rational::one()];
    let num = UniSeries::from_coeffs(one_minus_s, degree_cap + 2)
        .mul(&e)
        .add(&UniSeries::from_coeffs(
            vec![-Rational::one()],
            degree_cap + 2,
        ));
    let em1 = e.add(&UniSeries::from_coeffs(
        vec![-Rational::one()],
        degree_cap + 2,
    ));
    let den = em1.mul(&em1);
    unit_ratio(&num, &den, 2)
}

/// `(s - (e^s - 1)) / (s (e^s - 1))`.
pub fn ems_factor(degree_cap: u32) -> UniSeries {
    let cap = degree_cap + 2;
    let e = UniSeries::exp(cap);
    let em1 = e.add(&UniSeries::from_coeffs(vec![-Rational::one()], cap));
    let s = UniSeries::from_coeffs(vec![Rational::zero(), Rational::one()], cap);
    let num = s.add(&em1.scale(&-Rational::one()));
    let den = s.mul(&em1);
    unit_ratio(&num, &den, 2)
}

/// `(1 - e^{-s}) / s`.
pub fn conversion_unit(degree_cap: u32) -> UniSeries {
    let cap = degree_cap + 1;
    let coeffs = (0..=cap as u64)
        .map(|m| {
            let c = Rational::new(1.into(), factorial(m));
            match m {
                0 => Rational::zero(),
                _ => -(sign(m) * c),
            }
        })
        .collect();
    let num = UniSeries::from_coeffs(coeffs, cap);
    let s = UniSeries::from_coeffs(vec![Rational::zero(), Rational::one()], cap);
    unit_ratio(&num, &s, 1)
}

fn unit_ratio(num: &UniSeries, den: &UniSeries, shift: u32) -> UniSeries {
    let num = num
        .shift_down(shift)
        .expect("numerator vanishes to the shift order");
    let den = den
        .shift_down(shift)
        .expect("denominator vanishes to the shift order");
    num.div(&den)
        .expect("denominator is a unit after cancellation")
}

fn product_over_tails(n: usize, degree_cap: u32, factor: &UniSeries) -> Result<MultiSeries> {
    check_generating_args(n)?;
    let mut acc = MultiSeries::constant(n, degree_cap, Rational::one());
    for first in 0..n {
        acc = acc.mul(&MultiSeries::substitute_tail_sum(
            factor, n, first, degree_cap,
        ))?;
    }
    Ok(acc)
}

/// Generating function of the desingularized values, to total degree `degree_cap`.
pub fn gen_fkmt(n: usize, degree_cap: u32) -> Result<MultiSeries> {
    product_over_tails(n, degree_cap, &fkmt_factor(degree_cap))
}

/// Generating function of the renormalized values, to total degree `degree_cap`.
pub fn gen_ems(n: usize, degree_cap: u32) -> Result<MultiSeries> {
    product_over_tails(n, degree_cap, &ems_factor(degree_cap))
}

/// `Π_i (1 - e^{-(t_i + ... + t_n)}) / (t_i + ... + t_n)`.
pub fn conversion_factor(n: usize, degree_cap: u32) -> Result<MultiSeries> {
    product_over_tails(n, degree_cap, &conversion_unit(degree_cap))
}

/// `t_i ↦ -t_i`.
pub fn negate_vars(ms: &MultiSeries) -> MultiSeries {
    ms.negate_vars()
}

/// Reads `ζ(-k_1, ..., -k_n)` off a generating function:
/// `(-1)^{Σk} Π k_i! [t^k]`.
pub fn coefficient_to_zeta(ms: &MultiSeries, ks: &Composition) -> Result<Rational> {
    if ms.nvars() != ks.depth() {
        return Err(Error::VariableCount {
            got: ks.depth(),
            expected: ms.nvars(),
        });
    }
    if ks.total() > ms.degree_cap() {
        return Err(Error::DegreeCap {
            degree: ks.total(),
            cap: ms.degree_cap(),
        });
    }
    let mut c = ms.coeff(ks.parts()) * sign(ks.total() as u64);
    for &k in ks.parts() {
        c *= Rational::from_integer(factorial(k as u64));
    }
    Ok(c)
}

fn require_depth(ks: &Composition, min: usize, max: usize) -> Result<()> {
    let depth = ks.depth();
    if depth < min || depth > max {
        return Err(Error::DepthOutOfRange { depth, min, max });
    }
    Ok(())
}

fn comp(parts: Vec<u32>) -> Composition {
    Composition::new(parts).expect("non-empty by construction")
}

/// `Σ Π_{a>=2} C(k_a, i_a) ζ(-i_2, ..., -i_n) ζ(-k_1 - j_2 - ... - j_n)` over
/// `i_a + j_a = k_a`.
pub fn prefix_split_sum<F>(ks: &Composition, zeta: F) -> Result<Rational>
where
    F: Fn(&Composition) -> Rational,
{
    require_depth(ks, 2, usize::MAX)?;
    let parts = ks.parts();
    let k1 = parts[0];
    let tail = &parts[1..];
    let mut total = Rational::zero();
    let mut is: Vec<u32> = vec![0; tail.len()];
    loop {
        let mut w = Rational::one();
        for (&k, &i) in tail.iter().zip(&is) {
            w *= binomial(k as u64, i as u64);
        }
        let js: u32 = tail.iter().zip(&is).map(|(k, i)| k - i).sum();
        total += w * zeta(&comp(is.clone())) * zeta(&comp(vec![k1 + js]));
        let mut a = 0;
        loop {
            if a == is.len() {
                return Ok(total);
            }
            if is[a] < tail[a] {
                is[a] += 1;
                break;
            }
            is[a] = 0;
            a += 1;
        }
    }
}

/// The depth-reduction recurrence for desingularized values.
pub fn fkmt_recurrence_check(ks: &Composition) -> Result<bool> {
    Ok(zeta_fkmt(ks) == prefix_split_sum(ks, zeta_fkmt)?)
}

/// The same recurrence for renormalized values.
pub fn ems_prefix_split_check(ks: &Composition) -> Result<bool> {
    Ok(zeta_ems_closed(ks) == prefix_split_sum(ks, zeta_ems_closed)?)
}

/// `ζ(-k) = Σ_{i+j=k_n} C(k_n, i) ζ(-i) ζ(-k_1, ..., -k_{n-1} - j)`.
pub fn ems_last_split_sum<F>(ks: &Composition, zeta: F) -> Result<Rational>
where
    F: Fn(&Composition) -> Rational,
{
    require_depth(ks, 2, usize::MAX)?;
    let parts = ks.parts();
    let (&kn, prefix) = parts.split_last().expect("depth >= 2");
    let mut total = Rational::zero();
    for i in 0..=kn {
        let mut head = prefix.to_vec();
        *head.last_mut().expect("non-empty prefix") += kn - i;
        total += binomial(kn as u64, i as u64) * zeta(&comp(vec![i])) * zeta(&comp(head));
    }
    Ok(total)
}

pub fn ems_recurrence_check(ks: &Composition) -> Result<bool> {
    Ok(zeta_ems_closed(ks) == ems_last_split_sum(ks, zeta_ems_closed)?)
}

/// `ζ_FKMT` by repeated depth reduction down to `(-1)^k B_{k+1}`.
pub fn zeta_fkmt_recursive(ks: &Composition) -> Rational {
    match ks.parts() {
        [k] => sign(*k as u64) * bernoulli(*k as usize + 1),
        _ => prefix_split_sum(ks, zeta_fkmt_recursive).expect("depth >= 2"),
    }
}

/// `ζ_EMS` by repeated last-argument splitting down to `(-1)^k B_{k+1}/(k+1)`.
pub fn zeta_ems_recursive(ks: &Composition) -> Rational {
    match ks.parts() {
        [k] => sign(*k as u64) * bernoulli(*k as usize + 1) / int(*k as i64 + 1),
        _ => ems_last_split_sum(ks, zeta_ems_recursive).expect("depth >= 2"),
    }
}

/// `Σ_m (-x)^m / m! ζ_EMS(-prefix, -m)` through `x^degree_cap`.
pub fn ems_tail_series(prefix: &[u32], degree_cap: u32) -> UniSeries {
    let coeffs = (0..=degree_cap)
        .map(|m| {
            let mut ks = prefix.to_vec();
            ks.push(m);
            sign(m as u64) * zeta_ems_closed(&comp(ks))
                / Rational::from_integer(factorial(m as u64))
        })
        .collect();
    UniSeries { coeffs }
}

/// Compares `(-1)^{Σk} (𝔥 ∂^{k_{n-1}}) ⋯ (𝔥 ∂^{k_1}) 𝔥` with the series of
/// values whose first arguments are `prefix`, through `x^degree_cap`.
pub fn frak_h_identity_check(prefix: &[u32], degree_cap: u32) -> Result<bool> {
    if prefix.is_empty() {
        return Err(Error::EmptyComposition);
    }
    if degree_cap < 3 {
        return Err(Error::DegreeCap {
            degree: degree_cap,
            cap: 3,
        });
    }
    let total: u32 = prefix.iter().sum();
    let cap = degree_cap + total + prefix.len() as u32 + 1;
    let h = gen_ems(1, cap)?.to_uni();
    let mut f = h.clone();
    for &k in prefix {
        f = h.mul(&f.nth_derivative(k));
    }
    let f = f.scale(&sign(total as u64));
    let direct = ems_tail_series(prefix, degree_cap);
    Ok((0..=degree_cap).all(|m| f.coeff(m) == direct.coeff(m)))
}

/// Conversion sums: column `j` (zero-based) splits `k_j` into `j + 2` parts,
/// the last one going to the converted value and the rest to the unit
/// factors; factor `i` collects `m_i = Σ_{j>=i} ν_{j-i, j}`.
fn conversion_sum<W, Z>(
    ks: &Composition,
    diagonal_sign: bool,
    factor: W,
    zeta: Z,
) -> Result<Rational>
where
    W: Fn(u32) -> Rational,
    Z: Fn(&Composition) -> Rational,
{
    require_depth(ks, 1, 3)?;
    let n = ks.depth();
    let total = column_split_sum(
        ks.parts(),
        |j| j + 2,
        |cols| {
            let mut prod = Rational::one();
            for i in 0..n {
                let m: u32 = (i..n).map(|j| cols[j][j - i]).sum();
                prod *= factor(m);
                if prod.is_zero() {
                    return prod;
                }
            }
            let diag: Vec<u32> = (0..n).map(|j| cols[j][j + 1]).collect();
            if diagonal_sign {
                let diag_total: u64 = diag.iter().map(|&d| d as u64).sum();
                prod *= sign(diag_total);
            }
            prod * zeta(&comp(diag))
        },
    );
    Ok(total)
}

/// Renormalized value as a combination of desingularized ones (depth <= 3).
pub fn ems_from_fkmt(ks: &Composition) -> Result<Rational> {
    conversion_sum(ks, true, |m| int(m as i64 + 1).recip(), zeta_fkmt)
}

/// Desingularized value as a combination of renormalized ones (depth <= 3).
pub fn fkmt_from_ems(ks: &Composition) -> Result<Rational> {
    let total = ks.total() as u64;
    let body = conversion_sum(ks, false, |m| bernoulli(m as usize), zeta_ems_closed)?;
    Ok(sign(total) * body)
}
