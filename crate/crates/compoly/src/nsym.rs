//! The free graded algebra on the power-sum generators with polynomial
//! coefficients in `q`: expansions of the complete functions, their graded
//! inverse, the `(1-q)`-transform, and the bracketing identities that give
//! an independent oracle for the composition polynomials.
//!
//! Everything is a finite linear combination of words in the generators;
//! a word is indexed by the composition of its subscripts. The degree-0
//! component is spanned by the empty word.

use std::collections::BTreeMap;

use crate::composition::{compositions_of, Composition};
use crate::error::{Error, Result};
use crate::gpoly::{g_integral, g_recursive};
use crate::qpoly::QPoly;
use crate::rational::Rational;
use crate::report::CheckReport;

/// A homogeneous element of the free algebra on the generators
/// `Psi_1, Psi_2, ...`: a map from composition-indexed words to `QPoly`
/// coefficients. Absent keys mean coefficient zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PsiExpansion {
    degree: usize,
    terms: BTreeMap<Composition, QPoly>,
}

impl PsiExpansion {
    /// The zero element of a given degree.
    pub fn zero(degree: usize) -> Self {
        PsiExpansion {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A degree-0 scalar (multiple of the empty word).
    pub fn scalar(c: QPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Composition::empty(), c);
        }
        PsiExpansion { degree: 0, terms }
    }

    pub fn one() -> Self {
        PsiExpansion::scalar(QPoly::one())
    }

    /// The generator `Psi_n`, `n >= 1`.
    pub fn psi(n: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(
            Composition::single(n).expect("n >= 1"),
            QPoly::one(),
        );
        PsiExpansion { degree: n, terms }
    }

    /// A single word with a coefficient.
    pub fn term(i: Composition, c: QPoly) -> Self {
        let degree = i.weight();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(i, c);
        }
        PsiExpansion { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &QPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the word indexed by `I`; the weight must match the
    /// degree.
    pub fn coefficient(&self, i: &Composition) -> Result<QPoly> {
        if i.weight() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: i.weight(),
            });
        }
        Ok(self.terms.get(i).cloned().unwrap_or_else(QPoly::zero))
    }

    /// Sum of homogeneous elements of the same degree.
    pub fn add(&self, other: &PsiExpansion) -> PsiExpansion {
        assert_eq!(
            self.degree, other.degree,
            "adding inhomogeneous expansions"
        );
        let mut terms = self.terms.clone();
        for (i, c) in &other.terms {
            let entry = terms.entry(i.clone()).or_insert_with(QPoly::zero);
            *entry = &*entry + c;
        }
        terms.retain(|_, c| !c.is_zero());
        PsiExpansion {
            degree: self.degree,
            terms,
        }
    }

    /// Concatenation product: words concatenate, coefficients multiply.
    pub fn mul(&self, other: &PsiExpansion) -> PsiExpansion {
        let degree = self.degree + other.degree;
        let mut terms: BTreeMap<Composition, QPoly> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let key = i.concat(j);
                let prod = a * b;
                let entry = terms.entry(key).or_insert_with(QPoly::zero);
                *entry = &*entry + &prod;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        PsiExpansion { degree, terms }
    }

    /// Multiply every coefficient by a polynomial scalar.
    pub fn scale(&self, c: &QPoly) -> PsiExpansion {
        if c.is_zero() {
            return PsiExpansion::zero(self.degree);
        }
        PsiExpansion {
            degree: self.degree,
            terms: self.terms.iter().map(|(i, a)| (i.clone(), a * c)).collect(),
        }
    }

    pub fn neg(&self) -> PsiExpansion {
        self.scale(&QPoly::constant(Rational::from_integer((-1).into())))
    }

    /// Specialize `q` in every coefficient.
    pub fn eval_q(&self, v: &Rational) -> BTreeMap<Composition, Rational> {
        self.terms
            .iter()
            .map(|(i, c)| (i.clone(), c.eval(v)))
            .filter(|(_, c)| !num_traits::Zero::is_zero(c))
            .collect()
    }

    /// JSON document: array of `{"composition": [...], "coefficients":
    /// ["...", ...]}` in the deterministic key order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(i, c)| {
                    serde_json::json!({
                        "composition": i.parts(),
                        "coefficients": c.coeff_strings(),
                    })
                })
                .collect(),
        )
    }
}

/// The q-deformed bracket `[a, b]_p = ab - p ba` with a polynomial scalar.
pub fn qbracket(a: &PsiExpansion, b: &PsiExpansion, p: &QPoly) -> PsiExpansion {
    a.mul(b).add(&b.mul(a).scale(p).neg())
}

/// Degree-`n` complete function in the power-sum basis:
/// `S_n = sum over I of Psi^I / (i_1 (i_1+i_2) ... (i_1+...+i_r))`.
pub fn s_psi(n: usize) -> PsiExpansion {
    if n == 0 {
        return PsiExpansion::one();
    }
    let mut terms = BTreeMap::new();
    for i in compositions_of(n) {
        let denom = i
            .prefix_sums()
            .into_iter()
            .fold(num_bigint::BigInt::from(1), |acc, s| acc * s);
        terms.insert(i, QPoly::constant(Rational::new(1.into(), denom)));
    }
    PsiExpansion { degree: n, terms }
}

/// Degree-`k` component of the graded inverse of the complete-function
/// series: `Lambda_0 = 1`, `Lambda_k = - sum over a < k of
/// Lambda_a S_{k-a}`. (So `Lambda_1 = -Psi_1`.)
pub fn lambda_psi(k: usize) -> PsiExpansion {
    lambda_table(k).pop().expect("table covers 0..=k")
}

/// `Lambda_0 ..= Lambda_kmax` built in one pass.
pub fn lambda_table(kmax: usize) -> Vec<PsiExpansion> {
    let s: Vec<PsiExpansion> = (0..=kmax).map(s_psi).collect();
    let mut table: Vec<PsiExpansion> = Vec::with_capacity(kmax + 1);
    table.push(PsiExpansion::one());
    for k in 1..=kmax {
        let mut acc = PsiExpansion::zero(k);
        for a in 0..k {
            acc = acc.add(&table[a].mul(&s[k - a]));
        }
        table.push(acc.neg());
    }
    table
}

/// Degree-`n` component of the `(1-q)`-transform of the complete series:
/// `S_n((1-q)A) = sum over k of q^k Lambda_k S_{n-k}`.
///
/// At `q = 0` this is `S_n`; at `q = 1` it vanishes for `n >= 1`.
pub fn s_1mq_psi(n: usize) -> PsiExpansion {
    let lambdas = lambda_table(n);
    let mut acc = PsiExpansion::zero(n);
    for (k, lambda) in lambdas.iter().enumerate() {
        let term = lambda.mul(&s_psi(n - k)).scale(&QPoly::q_power(k));
        acc = acc.add(&term);
    }
    acc
}

/// The differential-equation identity in degree `n`:
/// `n S_n = sum over j < n of S_j Psi_{n-j}`.
pub fn check_ode(n: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("ode n={n}"));
    assert!(n >= 1);
    let lhs = s_psi(n).scale(&QPoly::constant(Rational::new(
        num_bigint::BigInt::from(n),
        1.into(),
    )));
    let mut rhs = PsiExpansion::zero(n);
    for j in 0..n {
        rhs = rhs.add(&s_psi(j).mul(&PsiExpansion::psi(n - j)));
    }
    record_equal(&mut report, format!("n S_n = sum S_j Psi_(n-j), n={n}"), &lhs, &rhs);
    report
}

/// Both one-sided inversion relations in degrees `1..=n`:
/// `sum Lambda_a S_b = sum S_a Lambda_b = 0`.
pub fn check_inversion(n: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("inversion n={n}"));
    let lambdas = lambda_table(n);
    for k in 1..=n {
        let mut left = PsiExpansion::zero(k);
        let mut right = PsiExpansion::zero(k);
        for a in 0..=k {
            left = left.add(&lambdas[a].mul(&s_psi(k - a)));
            right = right.add(&s_psi(a).mul(&lambdas[k - a]));
        }
        report.record(format!("sum Lambda_a S_b = 0, degree {k}"), left.is_zero(), || {
            format!("left inverse residue: {:?}", first_term(&left))
        });
        report.record(format!("sum S_a Lambda_b = 0, degree {k}"), right.is_zero(), || {
            format!("right inverse residue: {:?}", first_term(&right))
        });
    }
    report
}

/// The coefficient oracle: the coefficient of `Psi^I` in `S_n((1-q)A)`
/// equals `g_I`, for every `I` of weight `n`, computed by both the
/// integral and the recursive route.
pub fn check_prop1(n: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("psi-coefficient oracle n={n}"));
    let expansion = s_1mq_psi(n);
    for i in compositions_of(n) {
        let coeff = expansion.coefficient(&i).expect("weights match");
        let by_integral = g_integral(&i);
        let by_recursion = g_recursive(&i);
        report.record(
            format!("coefficient of Psi^({i}) = g_({i})"),
            coeff == by_integral && by_integral == by_recursion,
            || {
                format!(
                    "I={i}: coefficient {coeff}, integral {by_integral}, recursion {by_recursion}"
                )
            },
        );
    }
    report
}

/// The iterated q-bracketing identity: `S_n((1-q)A)` equals
/// `sum over I of (1 - q^(i_1))
///  [...[[Psi_(i_1), Psi_(i_2)]_(q^(i_2)), Psi_(i_3)]_(q^(i_3)), ...]
///  / (i_1 (i_1+i_2) ... )`.
pub fn check_qbracket_identity(n: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("qbracket n={n}"));
    assert!(n >= 1);
    let lhs = s_1mq_psi(n);
    let mut rhs = PsiExpansion::zero(n);
    for i in compositions_of(n) {
        let parts = i.parts();
        let mut el = PsiExpansion::psi(parts[0]);
        for &p in &parts[1..] {
            el = qbracket(&el, &PsiExpansion::psi(p), &QPoly::q_power(p));
        }
        let denom = i
            .prefix_sums()
            .into_iter()
            .fold(num_bigint::BigInt::from(1), |acc, s| acc * s);
        let scalar = QPoly::one_minus_q_power(parts[0]).scale(&Rational::new(1.into(), denom));
        rhs = rhs.add(&el.scale(&scalar));
    }
    record_equal(
        &mut report,
        format!("S_n((1-q)A) = bracketed sum, n={n}"),
        &lhs,
        &rhs,
    );
    report
}

fn first_term(e: &PsiExpansion) -> Option<(String, String)> {
    e.terms
        .iter()
        .next()
        .map(|(i, c)| (i.to_string(), c.to_string()))
}

/// Record equality of two expansions, witnessing the first differing
/// coefficient.
fn record_equal(report: &mut CheckReport, label: String, lhs: &PsiExpansion, rhs: &PsiExpansion) {
    if lhs == rhs {
        report.pass(label);
        return;
    }
    let mut keys: Vec<&Composition> = lhs.terms.keys().chain(rhs.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    let witness = keys
        .into_iter()
        .find_map(|key| {
            let a = lhs.terms.get(key).cloned().unwrap_or_else(QPoly::zero);
            let b = rhs.terms.get(key).cloned().unwrap_or_else(QPoly::zero);
            (a != b).then(|| format!("first differing coefficient at Psi^({key}): {a} vs {b}"))
        })
        .unwrap_or_else(|| "degree mismatch".to_string());
    report.fail(label, witness);
}
