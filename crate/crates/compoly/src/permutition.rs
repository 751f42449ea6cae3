//! Permutitions (sets of lists): canonical segmented-permutation form,
//! the shape and sinv statistics, standardization, exhaustive enumeration,
//! and the generating-function checks against the reduced polynomials.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::composition::{compositions_of, Composition};
use crate::error::{Error, Result};
use crate::gpoly::reduced_p_cached;
use crate::qpoly::QPoly;
use crate::rational::Rational;
use crate::report::CheckReport;

/// Counts of permutitions by size, `a(0) = a(1) = 1, a(2) = 3, ...`
/// (sets of lists). Used as the embedded reference sequence for the
/// `oeis` command; [`a000262`] recomputes it by recurrence.
pub const A000262_PREFIX: [u64; 13] = [
    1,
    1,
    3,
    13,
    73,
    501,
    4051,
    37633,
    394353,
    4596553,
    58941091,
    824073141,
    12470162233,
];

/// Permutition counts via the recurrence
/// `a(n) = (2n-1) a(n-1) - (n-1)(n-2) a(n-2)`, an oracle independent of
/// the enumeration code.
pub fn a000262(nmax: usize) -> Vec<u64> {
    let mut a = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let v = match n {
            0 | 1 => 1u64,
            _ => {
                (2 * n as u64 - 1) * a[n - 1] - ((n as u64 - 1) * (n as u64 - 2)) * a[n - 2]
            }
        };
        a.push(v);
    }
    a
}

/// A set partition of `{1, ..., n}` with a total order inside each block,
/// stored in canonical segmented-permutation form: blocks sorted by
/// strictly increasing last letter.
///
/// The empty permutition (zero blocks) is the unique permutition of size 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutition {
    blocks: Vec<Vec<usize>>,
}

impl Permutition {
    /// Canonicalize a set of ordered blocks: sorts the blocks by last
    /// letter and validates that the letters partition `{1, ..., n}`.
    pub fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::NotAPartition("empty block".into()));
        }
        let n: usize = blocks.iter().map(|b| b.len()).sum();
        let mut seen = vec![false; n + 1];
        for &letter in blocks.iter().flatten() {
            if letter == 0 || letter > n {
                return Err(Error::NotAPartition(format!(
                    "letter {letter} outside 1..={n}"
                )));
            }
            if seen[letter] {
                return Err(Error::NotAPartition(format!("letter {letter} repeats")));
            }
            seen[letter] = true;
        }
        blocks.sort_by_key(|b| *b.last().expect("blocks nonempty"));
        Ok(Permutition { blocks })
    }

    /// The empty permutition.
    pub fn empty() -> Self {
        Permutition { blocks: Vec::new() }
    }

    /// Blocks known to be canonical already (built by the enumerator).
    fn from_canonical(blocks: Vec<Vec<usize>>) -> Self {
        debug_assert!(blocks.windows(2).all(|w| w[0].last() < w[1].last()));
        Permutition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of letters.
    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// The flattened word `tau_1 ... tau_n` read along the blocks.
    pub fn word(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect()
    }

    /// Shape `c(pi)`: block lengths in canonical order.
    pub fn shape(&self) -> Composition {
        match Composition::new(self.blocks.iter().map(|b| b.len()).collect()) {
            Ok(c) => c,
            Err(_) => Composition::empty(),
        }
    }

    /// Special inversions: letters strictly greater than the last letter
    /// of their own block.
    pub fn sinv(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| {
                let last = *b.last().expect("blocks nonempty");
                b.iter().filter(|&&x| x > last).count()
            })
            .sum()
    }

    /// Standardize the letters of the block suffix starting at the 1-based
    /// block index `from_block`, jointly, preserving the bars.
    pub fn std_suffix(&self, from_block: usize) -> Permutition {
        assert!(
            from_block >= 1 && from_block <= self.blocks.len(),
            "std_suffix: block index {from_block} out of range"
        );
        let suffix = &self.blocks[from_block - 1..];
        let flat: Vec<usize> = suffix.iter().flatten().copied().collect();
        let std = standardize(&flat);
        let mut blocks = Vec::with_capacity(suffix.len());
        let mut pos = 0;
        for b in suffix {
            blocks.push(std[pos..pos + b.len()].to_vec());
            pos += b.len();
        }
        // standardization is order-preserving, so the suffix stays canonical
        Permutition::from_canonical(blocks)
    }
}

/// Replace the distinct letters of a word by their ranks in `{1, ..., len}`.
pub fn standardize(word: &[usize]) -> Vec<usize> {
    let mut sorted: Vec<usize> = word.to_vec();
    sorted.sort_unstable();
    debug_assert!(sorted.windows(2).all(|w| w[0] != w[1]), "letters repeat");
    word.iter()
        .map(|x| sorted.binary_search(x).expect("letter present") + 1)
        .collect()
}

/// Visit the flattened word of every shape-`I` permutition, in
/// lexicographic order on the word.
fn for_each_shape_word(i: &Composition, mut visit: impl FnMut(&[usize])) {
    let n = i.weight();
    if n == 0 {
        visit(&[]);
        return;
    }
    assert!(n < 64, "enumeration limited to n < 64");
    let ends = i.prefix_sums();
    let mut is_end = vec![false; n + 1];
    for &e in &ends {
        is_end[e] = true;
    }
    let mut word = Vec::with_capacity(n);
    fn rec(
        n: usize,
        is_end: &[bool],
        word: &mut Vec<usize>,
        used: u64,
        prev_last: usize,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if word.len() == n {
            visit(word);
            return;
        }
        let pos = word.len() + 1;
        let closes_block = is_end[pos];
        for letter in 1..=n {
            if used & (1 << letter) != 0 {
                continue;
            }
            // a block's last letter must exceed the previous block's last
            if closes_block && letter < prev_last {
                continue;
            }
            word.push(letter);
            let next_last = if closes_block { letter } else { prev_last };
            rec(n, is_end, word, used | (1 << letter), next_last, visit);
            word.pop();
        }
    }
    rec(n, &is_end, &mut word, 0, 0, &mut visit);
}

fn word_to_blocks(word: &[usize], i: &Composition) -> Vec<Vec<usize>> {
    let mut blocks = Vec::with_capacity(i.len());
    let mut pos = 0;
    for &p in i.parts() {
        blocks.push(word[pos..pos + p].to_vec());
        pos += p;
    }
    blocks
}

fn word_sinv(word: &[usize], i: &Composition) -> usize {
    let mut total = 0;
    let mut pos = 0;
    for &p in i.parts() {
        let block = &word[pos..pos + p];
        let last = block[p - 1];
        total += block.iter().filter(|&&x| x > last).count();
        pos += p;
    }
    total
}

/// All permutitions of shape `I`, in lexicographic order on the word.
pub fn enumerate_shape(i: &Composition) -> Vec<Permutition> {
    let mut out = Vec::new();
    for_each_shape_word(i, |word| {
        out.push(Permutition::from_canonical(word_to_blocks(word, i)));
    });
    out
}

/// Number of permutitions of shape `I`, without materializing them.
pub fn count_shape(i: &Composition) -> u64 {
    let mut count = 0;
    for_each_shape_word(i, |_| count += 1);
    count
}

/// All permutitions of `{1, ..., n}` in lexicographic order on
/// (shape, word). `enumerate(0)` is the single empty permutition.
pub fn enumerate(n: usize) -> Vec<Permutition> {
    if n == 0 {
        return vec![Permutition::empty()];
    }
    let mut out = Vec::new();
    for i in compositions_of(n) {
        out.extend(enumerate_shape(&i));
    }
    out
}

/// Number of permutitions of `{1, ..., n}`, by direct counting.
pub fn count_permutitions(n: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    compositions_of(n).par_iter().map(count_shape).sum()
}

/// The sinv generating function over shape-`I` permutitions:
/// `sum over c(pi) = I of q^sinv(pi)`.
pub fn sinv_polynomial(i: &Composition) -> QPoly {
    let n = i.weight();
    let r = i.len();
    let mut hist = vec![0u64; n.saturating_sub(r) + 1];
    for_each_shape_word(i, |word| {
        hist[word_sinv(word, i)] += 1;
    });
    QPoly::from_coeffs(
        hist.into_iter()
            .map(|c| Rational::from_integer(c.into()))
            .collect(),
    )
}

/// The main theorem at one weight: `sinv_polynomial(I) = P_I` for every
/// composition `I` of `n`, plus the total count against the recurrence.
pub fn check_theorem(n: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("theorem n={n}"));
    let results: Vec<(Composition, QPoly, QPoly)> = compositions_of(n)
        .into_par_iter()
        .map(|i| {
            let by_sinv = sinv_polynomial(&i);
            let by_reduction = crate::gpoly::reduced_p(&i).expect("reduced polynomial exists");
            (i, by_sinv, by_reduction)
        })
        .collect();
    let mut total = 0u64;
    for (i, by_sinv, by_reduction) in &results {
        report.record(
            format!("sinv generating function I={i}"),
            by_sinv == by_reduction,
            || format!("I={i}: sinv gives {by_sinv}, reduction gives {by_reduction}"),
        );
        total += by_sinv.eval(&Rational::from_integer(1.into())).to_integer()
            .try_into()
            .unwrap_or(0);
    }
    let expected = a000262(n)[n];
    report.record(
        format!("total count {total} permutitions"),
        total == expected,
        || format!("count {total} != recurrence value {expected}"),
    );
    report
}

/// Enumerated counts for sizes `0..=nmax` against the recurrence oracle.
pub fn check_counts(nmax: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("counts nmax={nmax}"));
    let expected = a000262(nmax);
    for n in 0..=nmax {
        let counted = count_permutitions(n);
        report.record(
            format!("n={n}: {counted}"),
            counted == expected[n],
            || format!("enumerated {counted}, recurrence says {}", expected[n]),
        );
    }
    report
}

/// `P_I(0)` and `P_I(1)` specializations for every composition of `n`:
/// the closed-form constant term and the shape count.
pub fn check_specializations(n: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("specializations n={n}"));
    let mut cache = HashMap::new();
    for i in compositions_of(n) {
        let p = reduced_p_cached(&i, &mut cache).expect("reduced polynomial exists");
        let at_zero = p.eval(&Rational::from_integer(0.into()));
        let closed = crate::gpoly::p_at_zero(&i);
        report.record(format!("P_{i}(0)"), at_zero == closed, || {
            format!("I={i}: P(0)={at_zero}, closed form {closed}")
        });
        let at_one = p.eval(&Rational::from_integer(1.into()));
        let count = Rational::from_integer(count_shape(&i).into());
        report.record(format!("P_{i}(1)"), at_one == count, || {
            format!("I={i}: P(1)={at_one}, {count} permutitions of shape I")
        });
    }
    report
}

impl fmt::Display for Permutition {
    /// Segmented-permutation form: letters concatenated within blocks and
    /// blocks separated by `|` when `n <= 9` (e.g. `4612|53|978`);
    /// comma-separated letters for larger `n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.n() <= 9;
        for (b, block) in self.blocks.iter().enumerate() {
            if b > 0 {
                write!(f, "|")?;
            }
            for (k, letter) in block.iter().enumerate() {
                if k > 0 && !compact {
                    write!(f, ",")?;
                }
                write!(f, "{letter}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Permutition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(Permutition::empty());
        }
        let comma_mode = s.contains(',');
        let mut blocks = Vec::new();
        for piece in s.split('|') {
            let block: Vec<usize> = if comma_mode {
                piece
                    .split(',')
                    .map(|l| {
                        l.trim().parse().map_err(|_| Error::Parse {
                            position: 0,
                            message: format!("invalid letter {l:?}"),
                        })
                    })
                    .collect::<Result<_>>()?
            } else {
                piece
                    .chars()
                    .map(|ch| {
                        ch.to_digit(10).map(|d| d as usize).ok_or(Error::Parse {
                            position: 0,
                            message: format!("invalid letter {ch:?}"),
                        })
                    })
                    .collect::<Result<_>>()?
            };
            blocks.push(block);
        }
        Permutition::from_blocks(blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpoly::reduced_p;
    use crate::rational::int;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn p(s: &str) -> Permutition {
        s.parse().unwrap()
    }

    #[test]
    fn canonicalization() {
        // {53, 4612, 978} -> (4612|53|978)
        let pi = Permutition::from_blocks(vec![vec![5, 3], vec![4, 6, 1, 2], vec![9, 7, 8]])
            .unwrap();
        assert_eq!(pi.to_string(), "4612|53|978");
        assert_eq!(pi.shape(), c(&[4, 2, 3]));
        assert_eq!(pi.sinv(), 4);
        // one block
        assert_eq!(
            Permutition::from_blocks(vec![vec![2, 1]]).unwrap().to_string(),
            "21"
        );
        // last letters 2 < 3
        assert_eq!(
            Permutition::from_blocks(vec![vec![3], vec![1, 2]])
                .unwrap()
                .to_string(),
            "12|3"
        );
    }

    #[test]
    fn partition_validation() {
        assert!(matches!(
            Permutition::from_blocks(vec![vec![1, 1], vec![2]]),
            Err(Error::NotAPartition(_))
        ));
        assert!(matches!(
            Permutition::from_blocks(vec![vec![1], vec![3]]),
            Err(Error::NotAPartition(_))
        ));
        assert!(matches!(
            Permutition::from_blocks(vec![vec![]]),
            Err(Error::NotAPartition(_))
        ));
    }

    #[test]
    fn sinv_examples() {
        assert_eq!(p("12|3|4").sinv(), 0);
        assert_eq!(p("21|3|4").sinv(), 1);
        assert_eq!(p("1|432").sinv(), 2);
        assert_eq!(p("1|2|3").shape(), c(&[1, 1, 1]));
        assert_eq!(p("12|3|4").shape(), c(&[2, 1, 1]));
    }

    #[test]
    fn standardization() {
        assert_eq!(standardize(&[7, 4, 2, 5, 8]), vec![4, 2, 1, 3, 5]);
        assert_eq!(standardize(&[1, 2, 3]), vec![1, 2, 3]);
        assert_eq!(standardize(&[3, 6, 2]), vec![2, 3, 1]);
        assert!(standardize(&[]).is_empty());
    }

    #[test]
    fn suffix_standardization() {
        let pi = p("361|74|258");
        assert_eq!(pi.std_suffix(2).to_string(), "42|135");
        assert_eq!(pi.std_suffix(1), pi.std_suffix(1).std_suffix(1));
        // whole-permutition standardization of a standard permutition is itself
        assert_eq!(pi.std_suffix(1), pi);
        // sinv of the suffix blocks (74|258 has one special inversion) is
        // unchanged by joint standardization
        assert_eq!(pi.std_suffix(2).sinv(), 1);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(0).len(), 1);
        assert_eq!(enumerate(1), vec![p("1")]);
        assert_eq!(enumerate(3).len(), 13);
        assert_eq!(enumerate(4).len(), 73);
        for n in 0..=6 {
            assert_eq!(count_permutitions(n), a000262(n)[n], "n={n}");
        }
        assert_eq!(&a000262(12)[..], &A000262_PREFIX[..]);
    }

    #[test]
    fn enumeration_is_sorted_and_partitions() {
        let all = enumerate(4);
        let keys: Vec<(Composition, Vec<usize>)> =
            all.iter().map(|pi| (pi.shape(), pi.word())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted, "enumeration sorted by (shape, word), no dups");
        // shapes partition the enumeration
        let by_shape: usize = compositions_of(4)
            .iter()
            .map(|i| enumerate_shape(i).len())
            .sum();
        assert_eq!(by_shape, all.len());
    }

    #[test]
    fn shape_13_matches_paper_list() {
        let listed = [
            "1|234", "1|324", "1|243", "1|423", "1|342", "1|432", "2|134", "2|314", "2|143",
            "2|413", "3|124", "3|214",
        ];
        let sinvs = [0, 0, 1, 1, 2, 2, 0, 0, 1, 1, 0, 0];
        let mut expected: Vec<Permutition> = listed.iter().map(|s| p(s)).collect();
        for (s, &v) in listed.iter().zip(&sinvs) {
            assert_eq!(p(s).sinv(), v, "sinv({s})");
        }
        expected.sort_by_key(|pi| pi.word());
        let mut got = enumerate_shape(&c(&[1, 3]));
        got.sort_by_key(|pi| pi.word());
        assert_eq!(got, expected);
        assert_eq!(sinv_polynomial(&c(&[1, 3])), QPoly::from_integers(&[6, 4, 2]));
    }

    #[test]
    fn shape_211() {
        let got = enumerate_shape(&c(&[2, 1, 1]));
        let expected: Vec<Permutition> =
            ["12|3|4", "21|3|4", "31|2|4", "41|2|3"].iter().map(|s| p(s)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn sinv_polynomials() {
        assert_eq!(sinv_polynomial(&c(&[1, 1, 1, 1])), QPoly::one());
        assert_eq!(sinv_polynomial(&c(&[2])), QPoly::from_integers(&[1, 1]));
        // max sinv over a shape is n - l(I), the degree of P_I
        for n in 1..=6 {
            for i in compositions_of(n) {
                let poly = sinv_polynomial(&i);
                assert_eq!(poly.degree(), Some(n - i.len()), "I={i}");
                assert_eq!(
                    poly.eval(&int(1)),
                    int(count_shape(&i) as i64),
                    "P_{i}(1) counts the shape"
                );
            }
        }
    }

    #[test]
    fn theorem_small() {
        for n in 1..=6 {
            for i in compositions_of(n) {
                assert_eq!(sinv_polynomial(&i), reduced_p(&i).unwrap(), "I={i}");
            }
        }
        assert!(check_theorem(5).passed());
    }

    #[test]
    fn counts_and_specializations_reports() {
        assert!(check_counts(5).passed());
        assert!(check_specializations(5).passed());
    }

    #[test]
    fn text_round_trip() {
        for s in ["4612|53|978", "1", "21", "12|3"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("").to_string(), "");
        let big = Permutition::from_blocks(vec![
            vec![10, 2],
            (3..=9).collect::<Vec<_>>(),
            vec![1, 11],
        ])
        .unwrap();
        let text = big.to_string();
        assert!(text.contains(','), "large letters are comma-separated");
        assert_eq!(text.parse::<Permutition>().unwrap(), big);
    }
}
