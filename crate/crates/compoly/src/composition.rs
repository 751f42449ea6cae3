//! Integer compositions: construction, enumeration in a fixed order, and
//! the merge/tail operations driving the recursion and the bijection.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A composition `(i_1, ..., i_r)`: a finite sequence of positive integers.
///
/// The weight-0 composition (no parts) exists only as the unit for
/// concatenation and as the shape of the empty permutition; it is built
/// with [`Composition::empty`] and never produced by [`Composition::new`],
/// parsing, or enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    /// A composition from its parts; fails on an empty list or a zero part.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidComposition(format!(
                "part {} is zero",
                pos + 1
            )));
        }
        Ok(Composition { parts })
    }

    /// The weight-0 composition with no parts.
    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    /// Single-part composition `(n)`.
    pub fn single(n: usize) -> Result<Self> {
        Composition::new(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.parts.first().copied()
    }

    /// `I^1 = (i_1 + i_2, i_3, ..., i_r)`.
    pub fn merge_first_two(&self) -> Result<Composition> {
        if self.len() < 2 {
            return Err(Error::TooShort { len: self.len() });
        }
        let mut parts = Vec::with_capacity(self.len() - 1);
        parts.push(self.parts[0] + self.parts[1]);
        parts.extend_from_slice(&self.parts[2..]);
        Ok(Composition { parts })
    }

    /// `(i_2, ..., i_r)`.
    pub fn tail(&self) -> Result<Composition> {
        if self.len() < 2 {
            return Err(Error::TooShort { len: self.len() });
        }
        Ok(Composition {
            parts: self.parts[1..].to_vec(),
        })
    }

    /// Concatenation `I . J`.
    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Composition { parts }
    }

    /// Positions after which a block ends when a word of length `weight()`
    /// is cut according to this composition: the partial sums.
    pub fn prefix_sums(&self) -> Vec<usize> {
        let mut sums = Vec::with_capacity(self.parts.len());
        let mut acc = 0;
        for &p in &self.parts {
            acc += p;
            sums.push(acc);
        }
        sums
    }
}

/// All `2^(n-1)` compositions of `n >= 1` in lexicographic order on the
/// part lists, e.g. `(1,1,1) < (1,2) < (2,1) < (3)`.
pub fn compositions_of(n: usize) -> Vec<Composition> {
    assert!(n >= 1, "compositions_of: n must be positive");
    let mut out = Vec::with_capacity(1 << (n - 1));
    let mut current = Vec::new();
    fn rec(remaining: usize, current: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if remaining == 0 {
            out.push(Composition {
                parts: current.clone(),
            });
            return;
        }
        for first in 1..=remaining {
            current.push(first);
            rec(remaining - first, current, out);
            current.pop();
        }
    }
    rec(n, &mut current, &mut out);
    out
}

impl fmt::Display for Composition {
    /// Comma-separated parts, e.g. `2,1,1`. No brackets, no spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "empty composition".into(),
            });
        }
        let mut parts = Vec::new();
        let mut position = 0;
        for piece in s.split(',') {
            let p: usize = piece.trim().parse().map_err(|_| Error::Parse {
                position,
                message: format!("invalid part {piece:?}"),
            })?;
            if p == 0 {
                return Err(Error::Parse {
                    position,
                    message: "part is zero".into(),
                });
            }
            parts.push(p);
            position += piece.len() + 1;
        }
        Composition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(compositions_of(1), vec![c(&[1])]);
        assert_eq!(
            compositions_of(3),
            vec![c(&[1, 1, 1]), c(&[1, 2]), c(&[2, 1]), c(&[3])]
        );
        let all4 = compositions_of(4);
        assert_eq!(all4.len(), 8);
        for i in all4.windows(2) {
            assert!(i[0] < i[1], "not sorted: {} !< {}", i[0], i[1]);
        }
        for n in 1..=12 {
            let all = compositions_of(n);
            assert_eq!(all.len(), 1 << (n - 1));
            assert!(all.iter().all(|i| i.weight() == n));
        }
    }

    #[test]
    fn merge_and_tail() {
        assert_eq!(c(&[2, 1, 1]).merge_first_two().unwrap(), c(&[3, 1]));
        assert_eq!(c(&[3, 2, 3]).merge_first_two().unwrap(), c(&[5, 3]));
        assert_eq!(c(&[1, 3]).merge_first_two().unwrap(), c(&[4]));
        assert_eq!(c(&[2, 1, 1]).tail().unwrap(), c(&[1, 1]));
        assert_eq!(c(&[1, 3]).tail().unwrap(), c(&[3]));
        assert_eq!(c(&[3, 2, 3]).tail().unwrap(), c(&[2, 3]));
        assert_eq!(c(&[4]).tail(), Err(Error::TooShort { len: 1 }));
        assert_eq!(c(&[4]).merge_first_two(), Err(Error::TooShort { len: 1 }));
    }

    #[test]
    fn weights_preserved() {
        for n in 2..=9 {
            for i in compositions_of(n) {
                if i.len() >= 2 {
                    assert_eq!(i.merge_first_two().unwrap().weight(), n);
                    assert_eq!(i.merge_first_two().unwrap().len(), i.len() - 1);
                    assert_eq!(i.tail().unwrap().weight(), n - i.parts()[0]);
                }
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert!(Composition::new(vec![]).is_err());
        assert!(Composition::new(vec![1, 0, 2]).is_err());
        assert!(Composition::empty().is_empty());
        assert_eq!(Composition::empty().weight(), 0);
    }

    #[test]
    fn text_round_trip() {
        let i = c(&[2, 1, 1]);
        assert_eq!(i.to_string(), "2,1,1");
        assert_eq!("2,1,1".parse::<Composition>().unwrap(), i);
        assert_eq!("10,3".parse::<Composition>().unwrap(), c(&[10, 3]));
        assert!("".parse::<Composition>().is_err());
        assert!("2,x".parse::<Composition>().is_err());
        assert!("2,0".parse::<Composition>().is_err());
        match "12,y".parse::<Composition>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn helpers() {
        assert_eq!(c(&[3, 2, 3]).prefix_sums(), vec![3, 5, 8]);
        assert_eq!(c(&[1, 3]).concat(&c(&[2])), c(&[1, 3, 2]));
        assert_eq!(Composition::empty().concat(&c(&[2])), c(&[2]));
    }
}
