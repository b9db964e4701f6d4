//! Verification suites shared by the command-line tool and the acceptance
//! tests. Each suite counts the identities it checked and records every
//! failure with the offending input and both sides.

use std::fmt;

use num_traits::Zero;

use crate::closedform::{
    coefficient_to_zeta, conversion_factor, ems_from_fkmt, ems_last_split_sum, fkmt_from_ems,
    frak_h_identity_check, gen_ems, gen_fkmt, negate_vars, prefix_split_sum, zeta_ems_closed,
    zeta_fkmt,
};
use crate::error::Result;
use crate::exact_arith::{bernoulli, binomial, int, rat, Rational};
use crate::hopf_words::{reduced_coproduct, reduced_coproduct_explicit, Word};
use crate::renorm::{lminus_generator, vanishes, CharacterState, Composition};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    fn check_eq<T: PartialEq + fmt::Display>(&mut self, what: impl fmt::Display, lhs: T, rhs: T) {
        self.checked += 1;
        if lhs != rhs {
            self.failures.push(format!("{what}: {lhs} != {rhs}"));
        }
    }

    fn check(&mut self, what: impl fmt::Display, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures.push(format!("{what}: identity fails"));
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} checked, {} failed",
            self.checked,
            self.failures.len()
        )
    }
}

fn sign(e: u32) -> Rational {
    if e.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

fn comp(parts: Vec<u32>) -> Composition {
    Composition::new(parts).expect("non-empty")
}

/// Every composition of depth `min_depth..=max_depth` with entries `<= max_entry`.
fn boxed_compositions(min_depth: usize, max_depth: usize, max_entry: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for n in min_depth..=max_depth {
        let base = max_entry as usize + 1;
        for code in 0..base.pow(n as u32) {
            out.push(
                (0..n)
                    .map(|i| ((code / base.pow(i as u32)) % base) as u32)
                    .collect(),
            );
        }
    }
    out
}

/// Explicit reduced coproduct against subset enumeration for depths
/// `2..=max_depth` with entries `<= max_entry`, and `Δ̃₀(d^a y) = 0` for
/// `a <= max_d_power`.
pub fn coproduct(max_depth: usize, max_entry: u32, max_d_power: u32) -> Result<Report> {
    let mut r = Report::default();
    for ks in boxed_compositions(2, max_depth, max_entry) {
        let enumerated = reduced_coproduct(&Word::from_blocks(&ks))?.reduce_t();
        let explicit = reduced_coproduct_explicit(&ks)?;
        r.check_eq(format!("explicit coproduct {ks:?}"), explicit, enumerated);
    }
    for a in 0..=max_d_power {
        let w = Word::from_blocks(&[a]);
        let t = reduced_coproduct(&w)?;
        r.check(
            format!("reduced coproduct of {w} vanishes"),
            t.iter().next().is_none(),
        );
    }
    Ok(r)
}

/// `φ₊(u ⧢₀ v) = φ₊(u) φ₊(v)` for admissible words up to `max_weight`.
pub fn shuffle(max_weight: usize) -> Result<Report> {
    let mut r = Report::default();
    let mut st = CharacterState::for_weight(2 * max_weight);
    let words = Word::admissible_up_to(max_weight);
    for u in &words {
        for v in &words {
            let ok = st.shuffle_relation_check(u, v)?;
            r.check(format!("shuffle relation for ({u}, {v})"), ok);
        }
    }
    Ok(r)
}

/// `ζ(-a) ζ(-b) = Σ_k (-1)^k C(a,k) ζ(-b-k, -a+k)` for `a <= max_a`,
/// `1 <= b <= max_b`, with values from the Birkhoff pipeline.
pub fn depth_two_shuffle(max_a: u32, max_b: u32) -> Result<Report> {
    let mut r = Report::default();
    let mut st = CharacterState::for_weight((max_a + max_b + 2) as usize);
    for a in 0..=max_a {
        for b in 1..=max_b {
            let lhs =
                st.zeta_ems_birkhoff(&comp(vec![a]))? * st.zeta_ems_birkhoff(&comp(vec![b]))?;
            let mut rhs = Rational::zero();
            for k in 0..=a {
                rhs += sign(k)
                    * binomial(a as u64, k as u64)
                    * st.zeta_ems_birkhoff(&comp(vec![b + k, a - k]))?;
            }
            r.check_eq(format!("depth-two shuffle a={a} b={b}"), lhs, rhs);
        }
    }
    Ok(r)
}

/// One composition through all three pipelines; `None` when they agree.
pub fn pipelines_disagree(ks: &Composition, st: &mut CharacterState) -> Result<Option<String>> {
    let birkhoff = st.zeta_ems_birkhoff(ks)?;
    let lemma = st.zeta_ems_lemma311(ks)?;
    let closed = zeta_ems_closed(ks);
    if birkhoff == lemma && lemma == closed {
        Ok(None)
    } else {
        Ok(Some(format!(
            "({ks}): birkhoff {birkhoff}, depth recursion {lemma}, closed form {closed}"
        )))
    }
}

/// Birkhoff, depth recursion and closed form agree on every composition of
/// depth `<= max_depth` with `k_1 + ... + k_n <= max_total`.
pub fn birkhoff_vs_closed(max_depth: usize, max_total: u32) -> Result<Report> {
    let mut r = Report::default();
    let mut st = CharacterState::for_weight(max_depth + max_total as usize);
    for ks in Composition::enumerate(max_depth, max_total) {
        r.checked += 1;
        if let Some(msg) = pipelines_disagree(&ks, &mut st)? {
            r.failures.push(msg);
        }
    }
    Ok(r)
}

/// The series identity between the two generating functions, depths
/// `1..=max_depth`, to total degree `degree_cap`.
pub fn thm321(max_depth: usize, degree_cap: u32) -> Result<Report> {
    let mut r = Report::default();
    for n in 1..=max_depth {
        let lhs = gen_ems(n, degree_cap)?;
        let rhs = conversion_factor(n, degree_cap)?.mul(&negate_vars(&gen_fkmt(n, degree_cap)?))?;
        r.check(
            format!("generating functions at depth {n}, degree {degree_cap}"),
            lhs == rhs,
        );
    }
    Ok(r)
}

/// Generating-function coefficients against the closed forms.
pub fn coefficients(max_depth: usize, degree_cap: u32) -> Result<Report> {
    let mut r = Report::default();
    for n in 1..=max_depth {
        let gf = gen_fkmt(n, degree_cap)?;
        let ge = gen_ems(n, degree_cap)?;
        for ks in Composition::enumerate(n, degree_cap)
            .into_iter()
            .filter(|k| k.depth() == n)
        {
            r.check_eq(
                format!("fkmt coefficient ({ks})"),
                coefficient_to_zeta(&gf, &ks)?,
                zeta_fkmt(&ks),
            );
            r.check_eq(
                format!("ems coefficient ({ks})"),
                coefficient_to_zeta(&ge, &ks)?,
                zeta_ems_closed(&ks),
            );
        }
    }
    Ok(r)
}

/// Depth-reduction recurrences for depths `2..=max_depth`.
pub fn recurrence(max_depth: usize, max_total: u32) -> Result<Report> {
    let mut r = Report::default();
    for ks in Composition::enumerate(max_depth, max_total)
        .into_iter()
        .filter(|k| k.depth() >= 2)
    {
        r.check_eq(
            format!("fkmt prefix split ({ks})"),
            zeta_fkmt(&ks),
            prefix_split_sum(&ks, zeta_fkmt)?,
        );
        r.check_eq(
            format!("ems last split ({ks})"),
            zeta_ems_closed(&ks),
            ems_last_split_sum(&ks, zeta_ems_closed)?,
        );
        r.check_eq(
            format!("ems prefix split ({ks})"),
            zeta_ems_closed(&ks),
            prefix_split_sum(&ks, zeta_ems_closed)?,
        );
    }
    Ok(r)
}

/// The `𝔥` operator identity for prefixes of length `1..=max_len` with
/// entries `<= max_entry`, through `x^degree_cap`.
pub fn frak_h(max_len: usize, max_entry: u32, degree_cap: u32) -> Result<Report> {
    let mut r = Report::default();
    for prefix in boxed_compositions(1, max_len, max_entry) {
        let ok = frak_h_identity_check(&prefix, degree_cap)?;
        r.check(format!("h-operator identity for prefix {prefix:?}"), ok);
    }
    Ok(r)
}

/// Both conversion formulas against the closed forms (depth `<= 3`).
pub fn conversions(max_depth: usize, max_total: u32) -> Result<Report> {
    let mut r = Report::default();
    for ks in Composition::enumerate(max_depth.min(3), max_total) {
        r.check_eq(
            format!("ems from fkmt ({ks})"),
            ems_from_fkmt(&ks)?,
            zeta_ems_closed(&ks),
        );
        r.check_eq(
            format!("fkmt from ems ({ks})"),
            fkmt_from_ems(&ks)?,
            zeta_fkmt(&ks),
        );
    }
    Ok(r)
}

/// `φ(d(u ⧢₀ v) - du ⧢₀ v - u ⧢₀ dv) = 0` for admissible `u, v` up to `max_weight`.
pub fn lminus(max_weight: usize) -> Result<Report> {
    let mut r = Report::default();
    let mut st = CharacterState::for_weight(2 * max_weight + 1);
    let words = Word::admissible_up_to(max_weight);
    for u in &words {
        for v in &words {
            let s = st.phi_sum(&lminus_generator(u, v))?;
            r.checked += 1;
            if !vanishes(&s) {
                r.failures
                    .push(format!("relation generator for ({u}, {v}) maps to {s}"));
            }
        }
    }
    Ok(r)
}

/// Values at the origin, the depth-one formula, and vanishing at even
/// arguments, all through the Birkhoff pipeline.
pub fn known_values(max_origin_depth: usize, max_k: u32, max_m: u32) -> Result<Report> {
    let mut r = Report::default();
    let mut st = CharacterState::for_weight(
        max_origin_depth
            .max(2 * max_m as usize + 1)
            .max(max_k as usize + 1),
    );
    for n in 1..=max_origin_depth {
        let ks = comp(vec![0; n]);
        r.check_eq(
            format!("origin, depth {n}"),
            st.zeta_ems_birkhoff(&ks)?,
            rat(-1, 2).pow(n as i32),
        );
    }
    for k in 0..=max_k {
        let want = sign(k) * bernoulli(k as usize + 1) / int(k as i64 + 1);
        r.check_eq(
            format!("depth one, k={k}"),
            st.zeta_ems_birkhoff(&comp(vec![k]))?,
            want,
        );
    }
    for m in 1..=max_m {
        r.check_eq(
            format!("even argument -{}", 2 * m),
            st.zeta_ems_birkhoff(&comp(vec![2 * m]))?,
            Rational::zero(),
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for r in [
            coproduct(3, 1, 3).unwrap(),
            shuffle(2).unwrap(),
            depth_two_shuffle(2, 2).unwrap(),
            birkhoff_vs_closed(2, 3).unwrap(),
            thm321(2, 4).unwrap(),
            coefficients(2, 4).unwrap(),
            recurrence(3, 3).unwrap(),
            frak_h(1, 1, 3).unwrap(),
            conversions(3, 2).unwrap(),
            lminus(2).unwrap(),
            known_values(3, 5, 2).unwrap(),
        ] {
            assert!(r.passed(), "{:?}", r.failures);
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn report_records_failures() {
        let mut r = Report::default();
        r.check_eq("x", int(1), int(2));
        r.check("y", true);
        assert_eq!(r.checked, 2);
        assert_eq!(r.failures, vec!["x: 1 != 2".to_string()]);
        assert_eq!(r.to_string(), "2 checked, 1 failed");
    }

    #[test]
    fn boxed_counts() {
        assert_eq!(boxed_compositions(2, 2, 2).len(), 9);
        assert_eq!(boxed_compositions(1, 2, 1).len(), 2 + 4);
    }
}
