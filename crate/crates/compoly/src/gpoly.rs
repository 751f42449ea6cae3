//! Composition polynomials `g_I(q)`, their reduced forms `f_I` and `P_I`,
//! full tables by weight, and the recursion identity check.
//!
//! `g_I` is computed two independent ways: by symbolic iterated
//! integration ([`g_integral`]) and by the memoized recursion
//! ([`g_recursive`]). `P_I(q) = n! g_I(q) / (1-q)^r` must come out with
//! nonnegative integer coefficients of degree `n - r`; [`reduced_p`]
//! asserts both rather than assuming them.

use std::collections::HashMap;

use num_traits::{One, Signed};

use crate::composition::{compositions_of, Composition};
use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::rational::{factorial, falling_factorial, Rational};
use crate::report::CheckReport;
use crate::tpoly::TPoly;

/// `g_I(q)` by iterated integration: one `integrate_power_from_q` layer per
/// part, innermost variable first, then the outer variable is set to 1.
pub fn g_integral(i: &Composition) -> QPoly {
    let mut acc = TPoly::one();
    for &part in i.parts() {
        acc = acc.integrate_power_from_q(part);
    }
    acc.eval_at_one()
}

/// `g_I(q)` by the recursion
/// `g_I = (g_{I^1} - q^{i_1} g_{(i_2,...,i_r)}) / i_1`
/// with base case `g_{(m)} = (1 - q^m)/m`, memoized over sub-compositions.
pub fn g_recursive(i: &Composition) -> QPoly {
    let mut cache = HashMap::new();
    g_recursive_cached(i, &mut cache)
}

/// Recursion with a caller-provided memo table, shared across a whole
/// table build.
pub fn g_recursive_cached(i: &Composition, cache: &mut HashMap<Composition, QPoly>) -> QPoly {
    if let Some(hit) = cache.get(i) {
        return hit.clone();
    }
    let value = if i.len() == 1 {
        let m = i.parts()[0];
        QPoly::one_minus_q_power(m).scale(&Rational::new(1.into(), m.into()))
    } else {
        let i1 = i.parts()[0];
        let merged = g_recursive_cached(&i.merge_first_two().expect("len >= 2"), cache);
        let tail = g_recursive_cached(&i.tail().expect("len >= 2"), cache);
        (&merged - &tail.shift_up(i1)).scale(&Rational::new(1.into(), i1.into()))
    };
    cache.insert(i.clone(), value.clone());
    value
}

/// `P_I(0) = n! / (i_1 (i_1+i_2) ... (i_1+...+i_r))`, exactly.
pub fn p_at_zero(i: &Composition) -> Rational {
    let denom = i
        .prefix_sums()
        .into_iter()
        .fold(num_bigint::BigInt::one(), |acc, s| acc * s);
    Rational::new(factorial(i.weight()), denom)
}

/// `P_I(q) = n! g_I(q) / (1-q)^r`, with the guaranteed properties asserted:
/// exact divisibility, nonnegative integer coefficients, degree `n - r`.
pub fn reduced_p(i: &Composition) -> Result<QPoly> {
    let mut cache = HashMap::new();
    reduced_p_cached(i, &mut cache)
}

/// As [`reduced_p`], memoizing `g` values across calls.
pub fn reduced_p_cached(
    i: &Composition,
    cache: &mut HashMap<Composition, QPoly>,
) -> Result<QPoly> {
    let n = i.weight();
    let r = i.len();
    let g = g_recursive_cached(i, cache);
    let numerator = g.scale(&Rational::from_integer(factorial(n)));
    let p = numerator.div_exact(&QPoly::one_minus_q_power(1).pow(r))?;
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::NonIntegerCoefficient(format!(
                "P_{i} coefficient of q^{k} is {c}"
            )));
        }
        if c.is_negative() {
            return Err(Error::NegativeCoefficient(format!(
                "P_{i} coefficient of q^{k} is {c}"
            )));
        }
    }
    if p.degree() != Some(n - r) {
        return Err(Error::NotDivisible);
    }
    Ok(p)
}

/// `f_I(q) = P_I(q)/n! = g_I(q)/(1-q)^r` as an exact rational polynomial.
pub fn f_reduced(i: &Composition) -> Result<QPoly> {
    let p = reduced_p(i)?;
    Ok(p.scale(&Rational::new(1.into(), factorial(i.weight()))))
}

/// The `P_I` values for every composition of a given weight, in the
/// deterministic enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyTable {
    n: usize,
    entries: Vec<(Composition, QPoly)>,
}

impl PolyTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(Composition, QPoly)] {
        &self.entries
    }

    pub fn get(&self, i: &Composition) -> Option<&QPoly> {
        self.entries
            .iter()
            .find(|(c, _)| c == i)
            .map(|(_, p)| p)
    }

    /// JSON document: `{"n": ..., "entries": [{"composition": [...],
    /// "P": ["...", ...]}, ...]}` with coefficient strings ascending.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "entries": self.entries.iter().map(|(i, p)| {
                serde_json::json!({
                    "composition": i.parts(),
                    "P": p.coeff_strings(),
                })
            }).collect::<Vec<_>>(),
        })
    }

    /// Exact inverse of [`PolyTable::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<PolyTable> {
        let bad = |msg: &str| Error::Parse {
            position: 0,
            message: format!("table json: {msg}"),
        };
        let n = value
            .get("n")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| bad("missing n"))? as usize;
        let raw = value
            .get("entries")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing entries"))?;
        let mut entries = Vec::with_capacity(raw.len());
        for e in raw {
            let parts = e
                .get("composition")
                .and_then(|v| v.as_array())
                .ok_or_else(|| bad("missing composition"))?
                .iter()
                .map(|p| p.as_u64().map(|p| p as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| bad("bad part"))?;
            let coeffs = e
                .get("P")
                .and_then(|v| v.as_array())
                .ok_or_else(|| bad("missing P"))?
                .iter()
                .map(|c| c.as_str().map(str::to_owned))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| bad("bad coefficient"))?;
            entries.push((Composition::new(parts)?, QPoly::from_coeff_strings(&coeffs)?));
        }
        Ok(PolyTable { n, entries })
    }
}

/// `P_I` for every `I` of weight `n`, one shared memo table per build.
pub fn reduced_table(n: usize) -> Result<PolyTable> {
    let mut cache = HashMap::new();
    let mut entries = Vec::with_capacity(1 << (n - 1));
    for i in compositions_of(n) {
        let p = reduced_p_cached(&i, &mut cache)?;
        entries.push((i, p));
    }
    Ok(PolyTable { n, entries })
}

/// Verify, for every `I` of weight `n` with at least two parts, the exact
/// polynomial identity
/// `q i_1 P_I + P_{I^1} = i_1 P_I + (n!/(n-i_1)!) q^{i_1} P_{(i_2,...,i_r)}`.
pub fn check_ad_recursion(n: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("recursion n={n}"));
    assert!(n >= 2, "check_ad_recursion: n must be at least 2");
    let mut cache = HashMap::new();
    for i in compositions_of(n) {
        if i.len() < 2 {
            continue;
        }
        let label = format!("I={i}");
        let i1 = i.parts()[0];
        let p = match reduced_p_cached(&i, &mut cache) {
            Ok(p) => p,
            Err(e) => {
                report.fail(label, format!("P_I failed: {e}"));
                continue;
            }
        };
        let p_merged = reduced_p_cached(&i.merge_first_two().unwrap(), &mut cache).unwrap();
        let p_tail = reduced_p_cached(&i.tail().unwrap(), &mut cache).unwrap();
        let i1_scalar = Rational::new(i1.into(), 1.into());
        let lhs = &p.scale(&i1_scalar).shift_up(1) + &p_merged;
        let multiplier = Rational::from_integer(falling_factorial(n, i1));
        let rhs = &p.scale(&i1_scalar) + &p_tail.scale(&multiplier).shift_up(i1);
        report.record(label, lhs == rhs, || {
            format!("I={i}: lhs {lhs} != rhs {rhs}")
        });
    }
    report
}
