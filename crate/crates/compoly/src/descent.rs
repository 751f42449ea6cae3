//! Realization of the power-sum algebra inside symmetric-group algebras:
//! the split-and-standardize convolution, iterated-bracket elements, their
//! q-deformation, and the identity checks that pin the embedding.
//!
//! A degree-`n` element is a linear combination of permutations of
//! `{1, ..., n}`, stored as words. The coefficient of the identity word in
//! the image of `S_n` is the loud self-check for the convolution
//! convention: it must be the whole image.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::composition::Composition;
use crate::nsym::{s_1mq_psi, s_psi, PsiExpansion};
use crate::qpoly::QPoly;
use crate::rational::Rational;
use crate::report::CheckReport;

/// A linear combination of permutations of `{1, ..., n}` with `QPoly`
/// coefficients; keys are one-line words, absent keys mean zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PermAlgebraElement {
    degree: usize,
    terms: BTreeMap<Vec<u8>, QPoly>,
}

impl PermAlgebraElement {
    pub fn zero(degree: usize) -> Self {
        PermAlgebraElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 scalar: a multiple of the empty word.
    pub fn scalar(c: QPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        PermAlgebraElement { degree: 0, terms }
    }

    /// A single word with a coefficient.
    pub fn term(word: Vec<u8>, c: QPoly) -> Self {
        let degree = word.len();
        debug_assert!(is_permutation_word(&word));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        PermAlgebraElement { degree, terms }
    }

    /// The identity permutation `1 2 ... n` with coefficient 1.
    pub fn identity_word(n: usize) -> Self {
        PermAlgebraElement::term((1..=n as u8).collect(), QPoly::one())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &QPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[u8]) -> QPoly {
        self.terms.get(word).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn add(&self, other: &PermAlgebraElement) -> PermAlgebraElement {
        assert_eq!(self.degree, other.degree, "adding inhomogeneous elements");
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let entry = terms.entry(w.clone()).or_insert_with(QPoly::zero);
            *entry = &*entry + c;
        }
        terms.retain(|_, c| !c.is_zero());
        PermAlgebraElement {
            degree: self.degree,
            terms,
        }
    }

    pub fn scale(&self, c: &QPoly) -> PermAlgebraElement {
        if c.is_zero() {
            return PermAlgebraElement::zero(self.degree);
        }
        PermAlgebraElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn neg(&self) -> PermAlgebraElement {
        self.scale(&QPoly::constant(Rational::from_integer((-1).into())))
    }

    /// Graded convolution: `(f * g)[w] = f[std(w_1..w_p)] g[std(w_(p+1)..)]`
    /// summed over all permutations `w` of `{1, ..., p+r}`. Implemented by
    /// splitting the value set: for each pair of terms `(u, v)` and each
    /// `p`-subset `S` of the values, the word `u` patterned on `S` followed
    /// by `v` patterned on the complement contributes the product
    /// coefficient.
    pub fn convolution(&self, other: &PermAlgebraElement) -> PermAlgebraElement {
        let p = self.degree;
        let r = other.degree;
        let n = p + r;
        let mut terms: BTreeMap<Vec<u8>, QPoly> = BTreeMap::new();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                let coeff = cu * cv;
                for subset in (1..=n as u8).combinations(p) {
                    let complement: Vec<u8> =
                        (1..=n as u8).filter(|x| !subset.contains(x)).collect();
                    let mut word = Vec::with_capacity(n);
                    word.extend(u.iter().map(|&ui| subset[ui as usize - 1]));
                    word.extend(v.iter().map(|&vi| complement[vi as usize - 1]));
                    let entry = terms.entry(word).or_insert_with(QPoly::zero);
                    *entry = &*entry + &coeff;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        PermAlgebraElement { degree: n, terms }
    }

    /// JSON document: array of `{"word": [...], "coefficients": [...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    serde_json::json!({
                        "word": w,
                        "coefficients": c.coeff_strings(),
                    })
                })
                .collect(),
        )
    }
}

fn is_permutation_word(word: &[u8]) -> bool {
    let n = word.len();
    let mut seen = vec![false; n + 1];
    word.iter().all(|&v| {
        let v = v as usize;
        v >= 1 && v <= n && !std::mem::replace(&mut seen[v], true)
    })
}

/// The iterated bracket `[...[[1, 2], 3], ..., n]` expanded into signed
/// permutations, where juxtaposition is word concatenation. Has exactly
/// `2^(n-1)` terms with coefficients plus or minus 1.
pub fn dynkin(n: usize) -> PermAlgebraElement {
    assert!(n >= 1, "dynkin: n must be positive");
    let mut el = PermAlgebraElement::term(vec![1], QPoly::one());
    for k in 2..=n as u8 {
        let mut next: BTreeMap<Vec<u8>, QPoly> = BTreeMap::new();
        for (w, c) in &el.terms {
            let mut right = w.clone();
            right.push(k);
            let mut left = Vec::with_capacity(w.len() + 1);
            left.push(k);
            left.extend_from_slice(w);
            let entry = next.entry(right).or_insert_with(QPoly::zero);
            *entry = &*entry + c;
            let entry = next.entry(left).or_insert_with(QPoly::zero);
            *entry = &*entry - c;
        }
        next.retain(|_, c| !c.is_zero());
        el = PermAlgebraElement {
            degree: k as usize,
            terms: next,
        };
    }
    el
}

/// The q-deformation `(1-q) [...[[1, 2]_q, 3]_q, ..., n]_q` with
/// `[a, b]_q = ab - q ba`.
pub fn q_dynkin(n: usize) -> PermAlgebraElement {
    assert!(n >= 1, "q_dynkin: n must be positive");
    let q = QPoly::q_power(1);
    let mut el = PermAlgebraElement::term(vec![1], QPoly::one());
    for k in 2..=n as u8 {
        let mut next: BTreeMap<Vec<u8>, QPoly> = BTreeMap::new();
        for (w, c) in &el.terms {
            let mut right = w.clone();
            right.push(k);
            let mut left = Vec::with_capacity(w.len() + 1);
            left.push(k);
            left.extend_from_slice(w);
            let entry = next.entry(right).or_insert_with(QPoly::zero);
            *entry = &*entry + c;
            let q_c = &q * c;
            let entry = next.entry(left).or_insert_with(QPoly::zero);
            *entry = &*entry - &q_c;
        }
        next.retain(|_, c| !c.is_zero());
        el = PermAlgebraElement {
            degree: k as usize,
            terms: next,
        };
    }
    el.scale(&QPoly::one_minus_q_power(1))
}

/// The algebra morphism into group algebras: the word
/// `Psi_(i_1) ... Psi_(i_r)` maps to the convolution of the iterated
/// brackets, extended linearly.
pub fn psi_to_perm(e: &PsiExpansion) -> PermAlgebraElement {
    let mut dynkin_cache: BTreeMap<usize, PermAlgebraElement> = BTreeMap::new();
    let mut out = PermAlgebraElement::zero(e.degree());
    for (i, coeff) in e.terms() {
        let image = psi_word_image(i, &mut dynkin_cache);
        out = out.add(&image.scale(coeff));
    }
    out
}

fn psi_word_image(
    i: &Composition,
    cache: &mut BTreeMap<usize, PermAlgebraElement>,
) -> PermAlgebraElement {
    if i.is_empty() {
        return PermAlgebraElement::scalar(QPoly::one());
    }
    let parts = i.parts();
    let mut el = cache
        .entry(parts[0])
        .or_insert_with(|| dynkin(parts[0]))
        .clone();
    for &p in &parts[1..] {
        let d = cache.entry(p).or_insert_with(|| dynkin(p)).clone();
        el = el.convolution(&d);
    }
    el
}

/// The two embedding identities, with the convention self-check first:
/// (a) the image of `S_n` is the identity word, and only if that holds,
/// (b) the image of `S_n((1-q)A)` is the iterated q-bracketing.
pub fn check_dynkin_identities(n: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("descent algebra n={n}"));
    let s_image = psi_to_perm(&s_psi(n));
    let identity = PermAlgebraElement::identity_word(n);
    let convention_ok = s_image == identity;
    report.record(
        format!("image of S_{n} is the identity permutation"),
        convention_ok,
        || {
            format!(
                "convention mismatch: image of S_{n} has {} terms{}",
                s_image.num_terms(),
                first_diff(&s_image, &identity)
                    .map(|d| format!("; {d}"))
                    .unwrap_or_default()
            )
        },
    );
    if !convention_ok {
        report.fail(
            format!("image of S_{n}((1-q)A) is the iterated q-bracketing"),
            "skipped: the convolution convention self-check failed, so the \
             q-bracket comparison would be meaningless"
                .to_string(),
        );
        return report;
    }
    let lhs = psi_to_perm(&s_1mq_psi(n));
    let rhs = q_dynkin(n);
    report.record(
        format!("image of S_{n}((1-q)A) is the iterated q-bracketing"),
        lhs == rhs,
        || first_diff(&lhs, &rhs).unwrap_or_else(|| "degree mismatch".to_string()),
    );
    report
}

fn first_diff(a: &PermAlgebraElement, b: &PermAlgebraElement) -> Option<String> {
    let mut keys: Vec<&Vec<u8>> = a.terms.keys().chain(b.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().find_map(|w| {
        let ca = a.coefficient(w);
        let cb = b.coefficient(w);
        (ca != cb).then(|| format!("first differing permutation {w:?}: {ca} vs {cb}"))
    })
}
