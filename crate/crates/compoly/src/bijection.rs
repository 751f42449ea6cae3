//! The two maps whose disjoint union proves the recursion: executable
//! phi_1 and phi_2, the image-membership predicates, the inverse map, the
//! per-side q-weights, and an exhaustive verifier for a single shape.
//!
//! For a composition `I` of `n` with at least two parts, writing
//! `I^1 = (i_1+i_2, i_3, ...)`:
//!
//! * `E1` = pairs `(tau, x)` with `c(tau) = I` and `x` in the first block;
//! * `E2` = permutitions of shape `I^1`;
//! * `E3` = pairs `(pi, w)` with `pi` a standard permutition of shape
//!   `(i_2, ..., i_r)` on `n - i_1` letters and `w` a word of `i_1`
//!   distinct letters from `{1, ..., n}`.
//!
//! `phi_1 : E1 -> E1 v E3` and `phi_2 : E2 -> E1 v E3` combine into a
//! sinv-compatible bijection from `E1 v E2` onto `E1 v E3`.

use itertools::Itertools;

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::gpoly::reduced_p;
use crate::permutition::{enumerate_shape, standardize, Permutition};
use crate::qpoly::QPoly;
use crate::rational::{falling_factorial, Rational};
use crate::report::CheckReport;

/// Pair `(tau, x)`: a shape-`I` permutition and a letter of its first block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct E1Element {
    pub tau: Permutition,
    pub x: usize,
}

/// A permutition of the merged shape `I^1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct E2Element {
    pub tau: Permutition,
}

/// Pair `(pi, w)`: a standard permutition of shape `(i_2, ..., i_r)`
/// together with a word of `i_1` distinct letters from the full alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct E3Element {
    pub pi: Permutition,
    pub w: Vec<usize>,
}

/// Where an image of phi_1 or phi_2 lands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhiImage {
    InE1(E1Element),
    InE3(E3Element),
}

/// Which map an element of `E1 v E3` comes from, decided by the image
/// characterization alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageTag {
    Phi1Image,
    Phi2Image,
}

/// The unique preimage of an element of `E1 v E3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preimage {
    FromE1(E1Element),
    FromE2(E2Element),
}

/// Which side of the recursion an element is weighted for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

/// Any element of the three sets, for weight bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    E1(E1Element),
    E2(E2Element),
    E3(E3Element),
}

fn swap_values(word: &[usize], a: usize, b: usize) -> Vec<usize> {
    word.iter()
        .map(|&v| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        })
        .collect()
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidElement(msg()))
    }
}

/// `phi_1((tau, x))`. With `S` the first-block letters: if the block ends
/// in `min S`, exchange `x` with that last letter to form the word `w` and
/// standardize the rest (landing in `E3`); otherwise exchange the last
/// letter with its predecessor in `S` (landing back in `E1`).
pub fn phi1(e: &E1Element, i: &Composition) -> Result<PhiImage> {
    require(i.len() >= 2, || format!("phi1 needs l(I) >= 2, got I={i}"))?;
    require(e.tau.shape() == *i, || {
        format!("phi1: c({}) != {i}", e.tau)
    })?;
    let first = &e.tau.blocks()[0];
    require(first.contains(&e.x), || {
        format!("phi1: x={} not in the first block of {}", e.x, e.tau)
    })?;
    let last = *first.last().expect("block nonempty");
    let min = *first.iter().min().expect("block nonempty");
    if last == min {
        let w = swap_values(first, e.x, last);
        let pi = e.tau.std_suffix(2);
        Ok(PhiImage::InE3(E3Element { pi, w }))
    } else {
        let m = *first
            .iter()
            .filter(|&&s| s < last)
            .max()
            .expect("last is not the minimum");
        let mut blocks: Vec<Vec<usize>> = e.tau.blocks().to_vec();
        blocks[0] = swap_values(&blocks[0], last, m);
        let tau = Permutition::from_blocks(blocks)?;
        debug_assert_eq!(tau.shape(), *i, "phi1 case B preserves the shape");
        Ok(PhiImage::InE1(E1Element { tau, x: e.x }))
    }
}

/// `phi_2(tau)` for `c(tau) = I^1`. With `L` the merged block's last
/// letter: if the first `i_1` letters all exceed `L` they split off as the
/// word `w` and the rest standardizes (landing in `E3`); otherwise the
/// letter `tau_{i_1}` is exchanged with the greatest smaller-than-`L`
/// letter among the first `i_1`, splitting the block (landing in `E1`).
pub fn phi2(e: &E2Element, i: &Composition) -> Result<PhiImage> {
    require(i.len() >= 2, || format!("phi2 needs l(I) >= 2, got I={i}"))?;
    let merged = i.merge_first_two()?;
    require(e.tau.shape() == merged, || {
        format!("phi2: c({}) != I^1 = {merged}", e.tau)
    })?;
    let i1 = i.parts()[0];
    let block = &e.tau.blocks()[0];
    let last = *block.last().expect("block nonempty");
    let head = &block[..i1];
    let second = &block[i1..];
    if head.iter().all(|&a| a > last) {
        let mut letters: Vec<usize> = second.to_vec();
        for b in &e.tau.blocks()[1..] {
            letters.extend_from_slice(b);
        }
        let std = standardize(&letters);
        let tail = i.tail()?;
        let mut blocks = Vec::with_capacity(tail.len());
        let mut pos = 0;
        for &p in tail.parts() {
            blocks.push(std[pos..pos + p].to_vec());
            pos += p;
        }
        let pi = Permutition::from_blocks(blocks)?;
        Ok(PhiImage::InE3(E3Element {
            pi,
            w: head.to_vec(),
        }))
    } else {
        let x = head[i1 - 1];
        let k = *head
            .iter()
            .filter(|&&s| s < last)
            .max()
            .expect("some head letter is below the block last");
        let mut blocks = Vec::with_capacity(i.len());
        blocks.push(swap_values(head, k, x));
        blocks.push(second.to_vec());
        blocks.extend(e.tau.blocks()[1..].iter().cloned());
        let tau = Permutition::from_blocks(blocks)?;
        debug_assert_eq!(tau.shape(), *i, "phi2 case B splits into shape I");
        Ok(PhiImage::InE1(E1Element { tau, x }))
    }
}

/// Letters `1..=n` not used by `w`, ascending: the range of the unique
/// increasing morphism that undoes the suffix standardization.
fn complement_of_word(w: &[usize], n: usize) -> Vec<usize> {
    let mut used = vec![false; n + 1];
    for &v in w {
        used[v] = true;
    }
    (1..=n).filter(|&v| !used[v]).collect()
}

/// Decide which map's image an element of `E1 v E3` belongs to, using the
/// characterizations of the two images (exactly one applies).
pub fn image_predicate(img: &PhiImage, i: &Composition) -> Result<ImageTag> {
    match img {
        PhiImage::InE1(e) => {
            require(e.tau.shape() == *i && i.len() >= 2, || {
                format!("predicate: ({}, {}) is not an E1 element for I={i}", e.tau, e.x)
            })?;
            let first = &e.tau.blocks()[0];
            let second_last = *e.tau.blocks()[1].last().expect("block nonempty");
            let greatest_below = *first
                .iter()
                .filter(|&&s| s < second_last)
                .max()
                .expect("the first block's last letter is below the second's");
            if *first.last().expect("block nonempty") == greatest_below {
                Ok(ImageTag::Phi2Image)
            } else {
                Ok(ImageTag::Phi1Image)
            }
        }
        PhiImage::InE3(e) => {
            let n = i.weight();
            let i1 = i.parts().first().copied().unwrap_or(0);
            require(
                i.len() >= 2 && e.w.len() == i1 && e.pi.shape() == i.tail()?,
                || format!("predicate: ({}, {:?}) is not an E3 element for I={i}", e.pi, e.w),
            )?;
            let complement = complement_of_word(&e.w, n);
            let std_last = *e.pi.blocks()[0].last().expect("block nonempty");
            let relabeled_last = complement[std_last - 1];
            let min_w = *e.w.iter().min().expect("w nonempty");
            if min_w < relabeled_last {
                Ok(ImageTag::Phi1Image)
            } else {
                Ok(ImageTag::Phi2Image)
            }
        }
    }
}

/// The unique preimage of an element of `E1 v E3`, dispatching on
/// [`image_predicate`].
pub fn phi_inverse(img: &PhiImage, i: &Composition) -> Result<Preimage> {
    let tag = image_predicate(img, i)?;
    match (img, tag) {
        (PhiImage::InE1(e), ImageTag::Phi1Image) => {
            // undo the phi_1 exchange: the original block last is the
            // successor of the current one among the first-block letters
            let first = &e.tau.blocks()[0];
            let last = *first.last().expect("block nonempty");
            let successor = *first
                .iter()
                .filter(|&&s| s > last)
                .min()
                .expect("phi1-image block last is not the maximum");
            let mut blocks: Vec<Vec<usize>> = e.tau.blocks().to_vec();
            blocks[0] = swap_values(&blocks[0], last, successor);
            Ok(Preimage::FromE1(E1Element {
                tau: Permutition::from_blocks(blocks)?,
                x: e.x,
            }))
        }
        (PhiImage::InE1(e), ImageTag::Phi2Image) => {
            // undo the phi_2 split: restore tau_{i_1} = x, then merge the
            // first two blocks
            let first = &e.tau.blocks()[0];
            let last = *first.last().expect("block nonempty");
            let mut merged = swap_values(first, last, e.x);
            merged.extend_from_slice(&e.tau.blocks()[1]);
            let mut blocks = vec![merged];
            blocks.extend(e.tau.blocks()[2..].iter().cloned());
            Ok(Preimage::FromE2(E2Element {
                tau: Permutition::from_blocks(blocks)?,
            }))
        }
        (PhiImage::InE3(e), ImageTag::Phi1Image) => {
            // undo phi_1 case A: relabel the suffix back, rebuild the first
            // block from w by exchanging min(w) with the last position
            let n = i.weight();
            let complement = complement_of_word(&e.w, n);
            let min_w = *e.w.iter().min().expect("w nonempty");
            let x = *e.w.last().expect("w nonempty");
            let first = swap_values(&e.w, min_w, x);
            let mut blocks = vec![first];
            for b in e.pi.blocks() {
                blocks.push(b.iter().map(|&v| complement[v - 1]).collect());
            }
            Ok(Preimage::FromE1(E1Element {
                tau: Permutition::from_blocks(blocks)?,
                x,
            }))
        }
        (PhiImage::InE3(e), ImageTag::Phi2Image) => {
            // undo phi_2 case A: relabel the suffix back and glue w onto
            // the front of the first block
            let n = i.weight();
            let complement = complement_of_word(&e.w, n);
            let relabeled: Vec<Vec<usize>> = e
                .pi
                .blocks()
                .iter()
                .map(|b| b.iter().map(|&v| complement[v - 1]).collect())
                .collect();
            let mut merged = e.w.clone();
            merged.extend_from_slice(&relabeled[0]);
            let mut blocks = vec![merged];
            blocks.extend(relabeled[1..].iter().cloned());
            Ok(Preimage::FromE2(E2Element {
                tau: Permutition::from_blocks(blocks)?,
            }))
        }
    }
}

/// The q-weight an element carries in the recursion identity.
///
/// Left side: `E1` counts `q^(sinv+1)` (the `q i_1 P_I` term) and `E2`
/// counts `q^sinv`. Right side: `E1` counts `q^sinv` and `E3` counts
/// `q^(sinv(pi) + i_1)`; the word `w` contributes no inversions.
pub fn side_weight(elem: &Element, side: Side, i: &Composition) -> Result<QPoly> {
    let i1 = i.parts().first().copied().unwrap_or(0);
    match (elem, side) {
        (Element::E1(e), Side::Lhs) => Ok(QPoly::q_power(e.tau.sinv() + 1)),
        (Element::E2(e), Side::Lhs) => Ok(QPoly::q_power(e.tau.sinv())),
        (Element::E1(e), Side::Rhs) => Ok(QPoly::q_power(e.tau.sinv())),
        (Element::E3(e), Side::Rhs) => Ok(QPoly::q_power(e.pi.sinv() + i1)),
        (Element::E3(_), Side::Lhs) => Err(Error::InvalidElement(
            "E3 elements only appear on the right side".into(),
        )),
        (Element::E2(_), Side::Rhs) => Err(Error::InvalidElement(
            "E2 elements only appear on the left side".into(),
        )),
    }
}

/// `q^k` rendered the way the worked tables print statistics.
fn stat_string(k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => "q".to_string(),
        _ => format!("q^{k}"),
    }
}

fn word_string(w: &[usize], n: usize) -> String {
    if n <= 9 {
        w.iter().map(|v| v.to_string()).collect()
    } else {
        w.iter().map(|v| v.to_string()).join(",")
    }
}

fn image_string(img: &PhiImage, n: usize) -> String {
    match img {
        PhiImage::InE1(e) => format!("({}, {})", e.tau, e.x),
        PhiImage::InE3(e) => format!("({}, {})", e.pi, word_string(&e.w, n)),
    }
}

/// One mapping, rendered like a row of the worked tables: the input, its
/// image, and the raw statistics `(q^sinv(input), q^sinv(image))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub input: String,
    pub image: String,
    pub input_stat: String,
    pub image_stat: String,
}

impl TraceRow {
    pub fn render(&self) -> String {
        format!(
            "{} -> {}  ({}, {})",
            self.input, self.image, self.input_stat, self.image_stat
        )
    }
}

/// Report plus optional trace rows for one composition.
#[derive(Clone, Debug)]
pub struct BijectionVerification {
    pub report: CheckReport,
    pub trace: Vec<TraceRow>,
}

fn image_sinv(img: &PhiImage) -> usize {
    match img {
        PhiImage::InE1(e) => e.tau.sinv(),
        PhiImage::InE3(e) => e.pi.sinv(),
    }
}

/// Exhaustively verify the bijection for one composition `I` with at
/// least two parts: totality and injectivity, image partition, predicate
/// consistency, the four sinv shifts, round trips both ways, and the
/// aggregate recursion identity.
pub fn verify_bijection(i: &Composition, with_trace: bool) -> Result<BijectionVerification> {
    if i.len() < 2 {
        return Err(Error::TooShort { len: i.len() });
    }
    let n = i.weight();
    let i1 = i.parts()[0];
    let merged = i.merge_first_two()?;
    let tail = i.tail()?;
    let mut report = CheckReport::new(format!("bijection I={i}"));
    let mut trace = Vec::new();

    let e1: Vec<E1Element> = enumerate_shape(i)
        .into_iter()
        .flat_map(|tau| {
            let mut xs = tau.blocks()[0].clone();
            xs.sort_unstable();
            xs.into_iter()
                .map(move |x| E1Element { tau: tau.clone(), x })
        })
        .collect();
    let e2: Vec<E2Element> = enumerate_shape(&merged)
        .into_iter()
        .map(|tau| E2Element { tau })
        .collect();
    let e3: Vec<E3Element> = enumerate_shape(&tail)
        .into_iter()
        .flat_map(|pi| {
            (1..=n)
                .permutations(i1)
                .map(move |w| E3Element { pi: pi.clone(), w })
        })
        .collect();

    // |E2| = |E3| = (n!/(n-i1)!) * #permutitions of the tail shape
    let expected_e3 =
        falling_factorial(n, i1) * crate::permutition::count_shape(&tail);
    report.record(
        "set sizes |E2| = |E3| = (n!/(n-i1)!) |tail shapes|",
        num_bigint::BigInt::from(e2.len()) == expected_e3
            && num_bigint::BigInt::from(e3.len()) == expected_e3,
        || format!("|E2|={}, |E3|={}, expected {expected_e3}", e2.len(), e3.len()),
    );

    let mut images: Vec<(Element, PhiImage)> = Vec::with_capacity(e1.len() + e2.len());
    for e in &e1 {
        let img = phi1(e, i)?;
        if with_trace {
            trace.push(TraceRow {
                input: format!("({}, {})", e.tau, e.x),
                image: image_string(&img, n),
                input_stat: stat_string(e.tau.sinv()),
                image_stat: stat_string(image_sinv(&img)),
            });
        }
        images.push((Element::E1(e.clone()), img));
    }
    for e in &e2 {
        let img = phi2(e, i)?;
        if with_trace {
            trace.push(TraceRow {
                input: format!("({})", e.tau),
                image: image_string(&img, n),
                input_stat: stat_string(e.tau.sinv()),
                image_stat: stat_string(image_sinv(&img)),
            });
        }
        images.push((Element::E2(e.clone()), img));
    }

    // (a) totality came from the loops above; injectivity:
    let mut seen = std::collections::BTreeSet::new();
    let mut duplicate = None;
    for (_, img) in &images {
        if !seen.insert(img.clone()) {
            duplicate = Some(img.clone());
        }
    }
    report.record("phi is injective", duplicate.is_none(), || {
        format!("image repeated: {}", image_string(&duplicate.unwrap(), n))
    });

    // (b) the images of phi_1 and phi_2 partition E1 v E3
    let mut target = std::collections::BTreeSet::new();
    for e in &e1 {
        target.insert(PhiImage::InE1(e.clone()));
    }
    for e in &e3 {
        target.insert(PhiImage::InE3(e.clone()));
    }
    let missing: Vec<&PhiImage> = target.difference(&seen).collect();
    let extra: Vec<&PhiImage> = seen.difference(&target).collect();
    report.record(
        "images of phi_1 and phi_2 partition E1 and E3",
        missing.is_empty() && extra.is_empty(),
        || {
            format!(
                "missing: {:?}, extra: {:?}",
                missing.iter().map(|m| image_string(m, n)).collect::<Vec<_>>(),
                extra.iter().map(|m| image_string(m, n)).collect::<Vec<_>>()
            )
        },
    );

    // (c) the image characterizations decide provenance correctly
    let mut predicate_ok = true;
    let mut predicate_witness = String::new();
    for (src, img) in &images {
        let expected = match src {
            Element::E1(_) => ImageTag::Phi1Image,
            Element::E2(_) => ImageTag::Phi2Image,
            Element::E3(_) => unreachable!("E3 is never a source"),
        };
        let got = image_predicate(img, i)?;
        if got != expected {
            predicate_ok = false;
            predicate_witness = format!(
                "{} classified {:?}, produced by {:?}",
                image_string(img, n),
                got,
                expected
            );
        }
    }
    report.record(
        "image predicates match provenance",
        predicate_ok,
        || predicate_witness.clone(),
    );

    // (d) the four sinv shifts
    let mut shifts_ok = true;
    let mut shift_witness = String::new();
    for (src, img) in &images {
        let ok = match (src, img) {
            (Element::E1(e), PhiImage::InE1(p)) => p.tau.sinv() == e.tau.sinv() + 1,
            (Element::E1(e), PhiImage::InE3(p)) => e.tau.sinv() == p.pi.sinv() + i1 - 1,
            (Element::E2(e), PhiImage::InE1(p)) => e.tau.sinv() == p.tau.sinv(),
            (Element::E2(e), PhiImage::InE3(p)) => e.tau.sinv() == p.pi.sinv() + i1,
            (Element::E3(_), _) => unreachable!("E3 is never a source"),
        };
        if !ok {
            shifts_ok = false;
            shift_witness = format!("sinv shift violated at {}", image_string(img, n));
        }
    }
    report.record("sinv shifts", shifts_ok, || shift_witness.clone());

    // round trips: phi_inverse . phi = id and phi . phi_inverse = id
    let mut round_ok = true;
    let mut round_witness = String::new();
    for (src, img) in &images {
        let back = phi_inverse(img, i)?;
        let matches = match (src, &back) {
            (Element::E1(e), Preimage::FromE1(b)) => e == b,
            (Element::E2(e), Preimage::FromE2(b)) => e == b,
            _ => false,
        };
        if !matches {
            round_ok = false;
            round_witness = format!("inverse failed at {}", image_string(img, n));
        }
    }
    for img in &target {
        let pre = phi_inverse(img, i)?;
        let forward = match &pre {
            Preimage::FromE1(e) => phi1(e, i)?,
            Preimage::FromE2(e) => phi2(e, i)?,
        };
        if forward != *img {
            round_ok = false;
            round_witness = format!("phi(phi^-1) failed at {}", image_string(img, n));
        }
    }
    report.record("round trips", round_ok, || round_witness.clone());

    // (e) the aggregate identity: summed weights match the recursion sides
    let mut lhs_sum = QPoly::zero();
    for e in &e1 {
        lhs_sum = &lhs_sum + &side_weight(&Element::E1(e.clone()), Side::Lhs, i)?;
    }
    for e in &e2 {
        lhs_sum = &lhs_sum + &side_weight(&Element::E2(e.clone()), Side::Lhs, i)?;
    }
    let mut rhs_sum = QPoly::zero();
    for e in &e1 {
        rhs_sum = &rhs_sum + &side_weight(&Element::E1(e.clone()), Side::Rhs, i)?;
    }
    for e in &e3 {
        rhs_sum = &rhs_sum + &side_weight(&Element::E3(e.clone()), Side::Rhs, i)?;
    }
    report.record("weighted sums agree", lhs_sum == rhs_sum, || {
        format!("lhs {lhs_sum} != rhs {rhs_sum}")
    });
    let p = reduced_p(i)?;
    let p_merged = reduced_p(&merged)?;
    let p_tail = reduced_p(&tail)?;
    let i1_scalar = Rational::new(i1.into(), 1.into());
    let lhs_poly = &p.scale(&i1_scalar).shift_up(1) + &p_merged;
    let rhs_poly = &p.scale(&i1_scalar)
        + &p_tail
            .scale(&Rational::from_integer(falling_factorial(n, i1)))
            .shift_up(i1);
    report.record(
        "aggregate recursion identity",
        lhs_sum == lhs_poly && rhs_sum == rhs_poly,
        || {
            format!(
                "element sums ({lhs_sum}, {rhs_sum}) vs polynomial sides ({lhs_poly}, {rhs_poly})"
            )
        },
    );

    Ok(BijectionVerification { report, trace })
}

/// [`verify_bijection`] across every composition of `n` with at least two
/// parts.
pub fn check_bijections(n: usize) -> CheckReport {
    use rayon::prelude::*;
    let mut report = CheckReport::new(format!("bijections n={n}"));
    let results: Vec<CheckReport> = crate::composition::compositions_of(n)
        .into_par_iter()
        .filter(|i| i.len() >= 2)
        .map(|i| {
            verify_bijection(&i, false)
                .map(|v| v.report)
                .unwrap_or_else(|e| {
                    let mut r = CheckReport::new(format!("bijection I={i}"));
                    r.fail("construction", e.to_string());
                    r
                })
        })
        .collect();
    for r in results {
        report.record(r.name.clone(), r.passed(), || {
            r.failures()
                .map(|c| format!("{}: {}", c.label, c.witness.clone().unwrap_or_default()))
                .collect::<Vec<_>>()
                .join("; ")
        });
    }
    report
}
