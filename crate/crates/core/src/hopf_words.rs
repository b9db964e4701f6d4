//! Words over the two letters `d` and `y`, the product `⧢₀`, and the
//! admissible-subset coproduct.
//!
//! Elements of the quotient Hopf algebra are represented by linear
//! combinations of words. Words ending in `d` are zero in the quotient and
//! are dropped by [`WordSum::reduce_t`]; the remaining relations are never
//! normalized, so two sums can be equal in the quotient without being equal
//! as maps.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{binomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    D,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::D => 'd',
            Letter::Y => 'y',
        }
    }
}

/// A word in `{d, y}*`. Ordered by length, then lexicographically with `d < y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn d_power(n: u32) -> Self {
        Word(vec![Letter::D; n as usize])
    }

    /// `d^{b_1} y d^{b_2} y ... d^{b_r} y`, blocks in the order given.
    pub fn from_blocks(blocks: &[u32]) -> Self {
        let mut letters = Vec::with_capacity(blocks.iter().map(|&b| b as usize + 1).sum());
        for &b in blocks {
            letters.extend(std::iter::repeat_n(Letter::D, b as usize));
            letters.push(Letter::Y);
        }
        Word(letters)
    }

    /// The word `d^{k_n} y ... d^{k_1} y` attached to the zeta arguments
    /// `(-k_1, ..., -k_n)`. Note the reversal.
    pub fn from_zeta_arguments(ks: &[u32]) -> Self {
        let reversed: Vec<u32> = ks.iter().rev().copied().collect();
        Self::from_blocks(&reversed)
    }

    /// Inverse of [`Word::from_blocks`]; `None` unless the word is admissible.
    pub fn blocks(&self) -> Option<Vec<u32>> {
        if !self.is_admissible() {
            return None;
        }
        let mut out = Vec::new();
        let mut run = 0;
        for &l in &self.0 {
            match l {
                Letter::D => run += 1,
                Letter::Y => {
                    out.push(run);
                    run = 0;
                }
            }
        }
        Some(out)
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn depth(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::Y).count()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Empty, or ending in `y`.
    pub fn is_admissible(&self) -> bool {
        self.0.last().is_none_or(|&l| l == Letter::Y)
    }

    pub fn prepend(&self, l: Letter) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(l);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The subword on the positions whose bit is set in `mask`.
    fn select(&self, mask: u64, complement: bool) -> Word {
        Word(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| ((mask >> i) & 1 == 1) != complement)
                .map(|(_, &l)| l)
                .collect(),
        )
    }

    /// Every word of the given weight.
    pub fn all_of_weight(weight: usize) -> Vec<Word> {
        (0..1u64 << weight)
            .map(|bits| {
                Word(
                    (0..weight)
                        .map(|i| {
                            if (bits >> i) & 1 == 1 {
                                Letter::Y
                            } else {
                                Letter::D
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// Every admissible word of weight at most `max_weight`, unit included.
    pub fn admissible_up_to(max_weight: usize) -> Vec<Word> {
        let mut out: Vec<Word> = (0..=max_weight)
            .flat_map(Word::all_of_weight)
            .filter(Word::is_admissible)
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::unit());
        }
        s.chars()
            .map(|c| match c {
                'd' => Ok(Letter::D),
                'y' => Ok(Letter::Y),
                other => Err(Error::Parse(format!("unexpected letter `{other}` in word"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    *map.entry(key).or_insert_with(Rational::zero) += c;
}

fn prune<K: Ord>(map: &mut BTreeMap<K, Rational>) {
    map.retain(|_, c| !c.is_zero());
}

fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a Rational)>,
{
    let mut first = true;
    for (label, c) in terms {
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        write!(f, "{}*{}", c.abs(), label)?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// A finite rational linear combination of words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordSum {
    terms: BTreeMap<Word, Rational>,
}

impl WordSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Rational::one())
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(w, c);
        s
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        accumulate(&mut self.terms, w, c);
        prune(&mut self.terms);
    }

    pub fn add_assign_scaled(&mut self, other: &WordSum, c: &Rational) {
        for (w, a) in &other.terms {
            accumulate(&mut self.terms, w.clone(), a * c);
        }
        prune(&mut self.terms);
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

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Drops every word ending in `d`.
    pub fn reduce_t(&self) -> WordSum {
        WordSum {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.is_admissible())
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn prepend(&self, l: Letter) -> WordSum {
        WordSum {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.prepend(l), c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &WordSum) -> WordSum {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Rational::one());
        out
    }
}

impl fmt::Display for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(w, c)| (w.to_string(), c)))
    }
}

/// A finite rational linear combination of tensors `u ⊗ v` of words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorSum {
    terms: BTreeMap<(Word, Word), Rational>,
}

impl TensorSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: Rational) {
        accumulate(&mut self.terms, (left, right), c);
        prune(&mut self.terms);
    }

    /// Adds `c (u ⊗ v + v ⊗ u)`.
    pub fn add_sym(&mut self, u: &Word, v: &Word, c: &Rational) {
        accumulate(&mut self.terms, (u.clone(), v.clone()), c.clone());
        accumulate(&mut self.terms, (v.clone(), u.clone()), c.clone());
        prune(&mut self.terms);
    }

    pub fn sym(u: &Word, v: &Word) -> Self {
        let mut t = Self::zero();
        t.add_sym(u, v, &Rational::one());
        t
    }

    pub fn add_assign_scaled(&mut self, other: &TensorSum, c: &Rational) {
        for ((u, v), a) in &other.terms {
            accumulate(&mut self.terms, (u.clone(), v.clone()), a * c);
        }
        prune(&mut self.terms);
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

    pub fn iter(&self) -> impl Iterator<Item = (&(Word, Word), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &Word, v: &Word) -> Rational {
        self.terms
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Drops tensors with a factor ending in `d`.
    pub fn reduce_t(&self) -> TensorSum {
        TensorSum {
            terms: self
                .terms
                .iter()
                .filter(|((u, v), _)| u.is_admissible() && v.is_admissible())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn swapped(&self) -> TensorSum {
        TensorSum {
            terms: self
                .terms
                .iter()
                .map(|((u, v), c)| ((v.clone(), u.clone()), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for TensorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms
                .iter()
                .map(|((u, v), c)| (format!("({u} ⊗ {v})"), c)),
        )
    }
}

fn shuffle0_slices(u: &[Letter], v: &[Letter]) -> WordSum {
    if u.is_empty() {
        return WordSum::word(Word(v.to_vec()));
    }
    if v.is_empty() {
        return WordSum::word(Word(u.to_vec()));
    }
    match (u[0], v[0]) {
        // yu ⧢₀ v = y(u ⧢₀ v)
        (Letter::Y, _) => shuffle0_slices(&u[1..], v).prepend(Letter::Y),
        // u ⧢₀ yv = y(u ⧢₀ v)
        (_, Letter::Y) => shuffle0_slices(u, &v[1..]).prepend(Letter::Y),
        // du ⧢₀ dv = d(u ⧢₀ dv) - u ⧢₀ d²v
        (Letter::D, Letter::D) => {
            let mut out = shuffle0_slices(&u[1..], v).prepend(Letter::D);
            let mut ddv = Vec::with_capacity(v.len() + 1);
            ddv.push(Letter::D);
            ddv.extend_from_slice(v);
            out.add_assign_scaled(&shuffle0_slices(&u[1..], &ddv), &-Rational::one());
            out
        }
    }
}

/// The product `u ⧢₀ v` on `Q<d, y>`. The result is not `T`-reduced.
pub fn shuffle0(u: &Word, v: &Word) -> WordSum {
    shuffle0_slices(&u.0, &v.0)
}

/// Bilinear extension of [`shuffle0`].
pub fn shuffle0_sums(a: &WordSum, b: &WordSum) -> WordSum {
    let mut out = WordSum::zero();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            out.add_assign_scaled(&shuffle0(u, v), &(cu * cv));
        }
    }
    out
}

fn require_admissible(w: &Word) -> Result<()> {
    if w.is_admissible() {
        Ok(())
    } else {
        Err(Error::NotAdmissible(w.to_string()))
    }
}

/// `Δ₀(w) = Σ w_S ⊗ w_{S̄}` over the subsets `S` of letter positions for
/// which both extracted subwords are admissible.
pub fn coproduct(w: &Word) -> Result<TensorSum> {
    require_admissible(w)?;
    let n = w.weight();
    assert!(n < 64, "subset enumeration is limited to weight < 64");
    let mut out = TensorSum::zero();
    for mask in 0..(1u64 << n) {
        let left = w.select(mask, false);
        if !left.is_admissible() {
            continue;
        }
        let right = w.select(mask, true);
        if right.is_admissible() {
            accumulate(&mut out.terms, (left, right), Rational::one());
        }
    }
    Ok(out)
}

/// `Δ̃₀(w) = Δ₀(w) - 1 ⊗ w - w ⊗ 1`.
pub fn reduced_coproduct(w: &Word) -> Result<TensorSum> {
    require_admissible(w)?;
    if w.is_unit() {
        return Err(Error::UnitWord);
    }
    let mut out = coproduct(w)?;
    let minus_one = -Rational::one();
    out.add_term(Word::unit(), w.clone(), minus_one.clone());
    out.add_term(w.clone(), Word::unit(), minus_one);
    Ok(out)
}

/// The action `x • (u ⊗ v)`: each letter of `x`, last one first, is
/// prepended to the left factor plus prepended to the right factor.
/// Not reduced.
pub fn bullet(x: &Word, t: &TensorSum) -> TensorSum {
    let mut current = t.clone();
    for &l in x.letters().iter().rev() {
        let mut next = TensorSum::zero();
        for ((u, v), c) in current.iter() {
            accumulate(&mut next.terms, (u.prepend(l), v.clone()), c.clone());
            accumulate(&mut next.terms, (u.clone(), v.prepend(l)), c.clone());
        }
        prune(&mut next.terms);
        current = next;
    }
    current
}

/// Closed formula for `Δ̃₀(w_{k_1} ⋯ w_{k_n})` with `w_m = d^m y`, `n >= 2`,
/// summing over the splittings `i_q + j_q = k_q` and the left/right
/// placements of `d^{i_q}` and `d^{j_q} y`. Blocks are taken in word order,
/// not zeta-argument order. The result is `T`-reduced.
pub fn reduced_coproduct_explicit(ks: &[u32]) -> Result<TensorSum> {
    let n = ks.len();
    if n < 2 {
        return Err(Error::DepthOutOfRange {
            depth: n,
            min: 2,
            max: usize::MAX,
        });
    }
    let mut out = TensorSum::zero();
    // p = 1 is the leading sum (no placements); p >= 2 the nested ones
    for p in 1..n {
        let tail = Word::from_blocks(&ks[p..]);
        let mut splits = vec![0u32; p];
        loop {
            let weight: Rational = (0..p)
                .map(|a| binomial(ks[a] as u64, splits[a] as u64))
                .product();
            let i_p = splits[p - 1];
            let j_p = ks[p - 1] - i_p;
            for placement in 0..(1u64 << (p - 1)) {
                let mut left = Word::unit();
                let mut right = Word::unit();
                for q in 0..p - 1 {
                    let i_q = splits[q];
                    let j_q = ks[q] - i_q;
                    let d_i = Word::d_power(i_q);
                    let d_j_y = Word::d_power(j_q).concat(&Word::from_blocks(&[0]));
                    if (placement >> q) & 1 == 0 {
                        left = left.concat(&d_i);
                        right = right.concat(&d_j_y);
                    } else {
                        left = left.concat(&d_j_y);
                        right = right.concat(&d_i);
                    }
                }
                let left = left.concat(&Word::from_blocks(&[i_p]));
                let right = right.concat(&Word::d_power(j_p)).concat(&tail);
                out.add_sym(&left, &right, &weight);
            }
            // odometer over 0 <= splits[a] <= ks[a]
            let mut a = 0;
            while a < p {
                if splits[a] < ks[a] {
                    splits[a] += 1;
                    break;
                }
                splits[a] = 0;
                a += 1;
            }
            if a == p {
                break;
            }
        }
    }
    Ok(out.reduce_t())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::int;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn tensor(terms: &[(&str, &str, i64)]) -> TensorSum {
        let mut t = TensorSum::zero();
        for &(u, v, c) in terms {
            t.add_term(w(u), w(v), int(c));
        }
        t
    }

    #[test]
    fn weight_depth_admissible() {
        let word = w("ddyyd");
        assert_eq!(word.weight(), 5);
        assert_eq!(word.depth(), 2);
        assert!(!word.is_admissible());
        assert!(w("yy").is_admissible());
        assert!(w("dy").is_admissible());
        assert!(!w("yd").is_admissible());
        assert!(Word::unit().is_admissible());
        assert_eq!(w("1"), Word::unit());
        assert!("dxy".parse::<Word>().is_err());
    }

    #[test]
    fn zeta_argument_word_is_reversed() {
        assert_eq!(Word::from_zeta_arguments(&[1, 0]), w("ydy"));
        assert_eq!(Word::from_zeta_arguments(&[2, 0, 1]), w("dyyddy"));
        assert_eq!(w("dyyddy").blocks(), Some(vec![1, 0, 2]));
        assert_eq!(w("yd").blocks(), None);
    }

    #[test]
    fn canonical_order() {
        let mut v = [w("y"), w("dd"), w("yd"), w("d"), w("dy")];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["d", "y", "dd", "dy", "yd"]);
    }

    #[test]
    fn reduce_t_examples() {
        let mut s = WordSum::term(w("yd"), int(3));
        s.add_term(w("yy"), int(2));
        assert_eq!(s.reduce_t(), WordSum::term(w("yy"), int(2)));
        assert_eq!(
            WordSum::word(Word::unit()).reduce_t(),
            WordSum::word(Word::unit())
        );
        assert!(WordSum::term(w("dyd"), int(5)).reduce_t().is_zero());
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle0(&w("y"), &w("y")), WordSum::word(w("yy")));
        assert_eq!(shuffle0(&w("dy"), &w("y")), WordSum::word(w("ydy")));
        for word in Word::admissible_up_to(4) {
            assert_eq!(shuffle0(&Word::unit(), &word), WordSum::word(word.clone()));
            assert_eq!(shuffle0(&word, &Word::unit()), WordSum::word(word.clone()));
        }
        // d ⧢₀ d = d(1 ⧢₀ d) - 1 ⧢₀ dd = 0
        assert!(shuffle0(&w("d"), &w("d")).is_zero());
    }

    #[test]
    fn shuffle_d_rule() {
        // dy ⧢₀ dy = d(y ⧢₀ dy) - y ⧢₀ ddy = d(ydy) - yddy
        let mut want = WordSum::word(w("dydy"));
        want.add_term(w("yddy"), int(-1));
        assert_eq!(shuffle0(&w("dy"), &w("dy")), want);
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(
            coproduct(&w("y")).unwrap(),
            tensor(&[("1", "y", 1), ("y", "1", 1)])
        );
        assert_eq!(
            coproduct(&w("yy")).unwrap(),
            tensor(&[("1", "yy", 1), ("yy", "1", 1), ("y", "y", 2)])
        );
        assert_eq!(
            coproduct(&w("dy")).unwrap(),
            tensor(&[("1", "dy", 1), ("dy", "1", 1)])
        );
        assert_eq!(coproduct(&Word::unit()).unwrap(), tensor(&[("1", "1", 1)]));
        assert!(matches!(coproduct(&w("yd")), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn reduced_coproduct_examples() {
        for a in 0..=6 {
            assert!(reduced_coproduct(&Word::from_blocks(&[a]))
                .unwrap()
                .is_zero());
        }
        assert_eq!(
            reduced_coproduct(&w("yy")).unwrap(),
            tensor(&[("y", "y", 2)])
        );
        assert_eq!(
            reduced_coproduct(&w("ydy")).unwrap(),
            tensor(&[("y", "dy", 1), ("dy", "y", 1)])
        );
        assert_eq!(reduced_coproduct(&Word::unit()), Err(Error::UnitWord));
    }

    #[test]
    fn explicit_formula_examples() {
        assert_eq!(
            reduced_coproduct_explicit(&[0, 0]).unwrap(),
            tensor(&[("y", "y", 2)])
        );
        for ks in [[1, 0], [0, 1]] {
            assert_eq!(
                reduced_coproduct_explicit(&ks).unwrap(),
                reduced_coproduct(&Word::from_blocks(&ks))
                    .unwrap()
                    .reduce_t(),
                "{ks:?}"
            );
        }
        assert!(reduced_coproduct_explicit(&[3]).is_err());
    }

    #[test]
    fn explicit_formula_matches_enumeration() {
        for n in 2..=4usize {
            let total = 3usize.pow(n as u32);
            for code in 0..total {
                let ks: Vec<u32> = (0..n)
                    .map(|i| ((code / 3usize.pow(i as u32)) % 3) as u32)
                    .collect();
                let enumerated = reduced_coproduct(&Word::from_blocks(&ks))
                    .unwrap()
                    .reduce_t();
                assert_eq!(
                    reduced_coproduct_explicit(&ks).unwrap(),
                    enumerated,
                    "{ks:?}"
                );
            }
        }
    }

    #[test]
    fn recursive_laws() {
        for word in Word::admissible_up_to(5) {
            if word.is_unit() {
                continue;
            }
            let inner = reduced_coproduct(&word).unwrap();
            let dw = reduced_coproduct(&word.prepend(Letter::D))
                .unwrap()
                .reduce_t();
            assert_eq!(dw, bullet(&w("d"), &inner).reduce_t(), "d{word}");

            let yw = reduced_coproduct(&word.prepend(Letter::Y))
                .unwrap()
                .reduce_t();
            let mut want = bullet(&w("y"), &inner);
            want.add_assign_scaled(&TensorSum::sym(&w("y"), &word), &int(1));
            assert_eq!(yw, want.reduce_t(), "y{word}");
        }
    }

    #[test]
    fn bullet_binomial_identities() {
        let words = Word::admissible_up_to(2);
        for a in &words {
            for b in &words {
                let base = TensorSum::sym(a, b);
                for n in 1..=3u32 {
                    // d^n • (a ⊗sym b) = Σ C(n,i) d^i a ⊗sym d^j b
                    let mut want = TensorSum::zero();
                    for i in 0..=n {
                        let l = Word::d_power(i).concat(a);
                        let r = Word::d_power(n - i).concat(b);
                        want.add_sym(&l, &r, &binomial(n as u64, i as u64));
                    }
                    assert_eq!(bullet(&Word::d_power(n), &base), want);

                    // (d^n y) • (a ⊗sym b) over {u, v} = {d^i y, d^j}
                    let mut want = TensorSum::zero();
                    for i in 0..=n {
                        let c = binomial(n as u64, i as u64);
                        let dy = Word::from_blocks(&[i]);
                        let dj = Word::d_power(n - i);
                        want.add_sym(&dy.concat(a), &dj.concat(b), &c);
                        want.add_sym(&dj.concat(a), &dy.concat(b), &c);
                    }
                    assert_eq!(bullet(&Word::from_blocks(&[n]), &base), want);
                }
            }
        }
    }

    #[test]
    fn bullet_composes_letterwise() {
        let t = tensor(&[("y", "dy", 2), ("yy", "1", -1)]);
        let x = w("dyd");
        let stepwise = bullet(&w("d"), &bullet(&w("y"), &bullet(&w("d"), &t)));
        assert_eq!(bullet(&x, &t), stepwise);
        assert_eq!(bullet(&Word::unit(), &t), t);
    }

    #[test]
    fn cocommutative_with_counit() {
        for word in Word::admissible_up_to(6) {
            let delta = coproduct(&word).unwrap();
            assert_eq!(delta.swapped(), delta, "{word}");
            if !word.is_unit() {
                assert_eq!(delta.coeff(&Word::unit(), &word), int(1));
                assert_eq!(delta.coeff(&word, &Word::unit()), int(1));
            }
        }
    }

    #[test]
    fn rendering() {
        let mut s = WordSum::term(w("yy"), int(2));
        s.add_term(w("y"), crate::exact_arith::rat(-1, 3));
        assert_eq!(s.to_string(), "-1/3*y + 2*yy");
        assert_eq!(WordSum::zero().to_string(), "0");
        assert_eq!(tensor(&[("y", "y", 2)]).to_string(), "2*(y ⊗ y)");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_word(max: usize) -> impl Strategy<Value = Word> {
            proptest::collection::vec(prop_oneof![Just(Letter::D), Just(Letter::Y)], 0..=max)
                .prop_map(Word::from_letters)
        }

        proptest! {
            #[test]
            fn shuffle_preserves_weight(u in arb_word(4), v in arb_word(4)) {
                for (word, _) in shuffle0(&u, &v).iter() {
                    prop_assert_eq!(word.weight(), u.weight() + v.weight());
                }
            }

            #[test]
            fn text_roundtrip(u in arb_word(10)) {
                prop_assert_eq!(u.to_string().parse::<Word>().unwrap(), u);
            }
        }
    }
}
