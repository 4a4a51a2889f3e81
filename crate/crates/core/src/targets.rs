//! Target sets: the labels a database search must amplify.
//!
//! A label `x` in `[0, 2^n)` is identified with the basis state whose first
//! qubit (index 0) carries the most significant bit. Bitstrings are therefore
//! written MSB-first, so `"100"` is label 4 on three qubits.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest qubit count a label can address.
pub const MAX_LABEL_BITS: usize = 63;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetSet {
    n: usize,
    labels: Vec<u64>,
}

#[derive(Deserialize)]
struct TargetFileJson {
    n: usize,
    targets: Vec<JsonLabel>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonLabel {
    Int(u64),
    Bits(String),
}

impl TargetSet {
    /// Builds a target set from labels in any order. Duplicates are rejected.
    pub fn new(n: usize, labels: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_qubits(n)?;
        let mut labels: Vec<u64> = labels.into_iter().collect();
        if labels.is_empty() {
            return Err(Error::EmptyTargetSet);
        }
        labels.sort_unstable();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateLabel(w[0]));
            }
        }
        let limit = 1u64 << n;
        if let Some(&bad) = labels.iter().find(|&&x| x >= limit) {
            return Err(Error::LabelOutOfRange { label: bad, n });
        }
        Ok(Self { n, labels })
    }

    /// Builds a target set from MSB-first bitstrings, all of length `n`.
    pub fn from_bitstrings<S: AsRef<str>>(n: usize, bits: &[S]) -> Result<Self> {
        let labels = bits
            .iter()
            .map(|s| parse_bitstring(s.as_ref(), n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, labels)
    }

    /// All `2^n` labels.
    pub fn full(n: usize) -> Result<Self> {
        check_qubits(n)?;
        Self::new(n, 0..(1u64 << n))
    }

    /// Parses either the text format (`n=<int>` followed by one bitstring per
    /// line) or the JSON format `{"n": int, "targets": [...]}` whose entries
    /// are integers or bitstrings.
    pub fn parse(input: &str) -> Result<Self> {
        let trimmed = input.trim_start();
        if trimmed.starts_with('{') {
            let raw: TargetFileJson = serde_json::from_str(trimmed)?;
            check_qubits(raw.n)?;
            let labels = raw
                .targets
                .into_iter()
                .map(|l| match l {
                    JsonLabel::Int(x) => Ok(x),
                    JsonLabel::Bits(b) => parse_bitstring(&b, raw.n),
                })
                .collect::<Result<Vec<_>>>()?;
            return Self::new(raw.n, labels);
        }
        let mut lines = input
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `n=<int>` header".into()))?;
        let n = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad header line `{header}`")))?;
        let bits: Vec<&str> = lines.collect();
        Self::from_bitstrings(n, &bits)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Text form accepted by [`TargetSet::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for &x in &self.labels {
            out.push_str(&to_bitstring(x, self.n));
            out.push('\n');
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted, distinct labels.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `2^n`, the size of the whole database.
    pub fn universe_size(&self) -> u64 {
        1u64 << self.n
    }

    pub fn contains(&self, x: u64) -> bool {
        self.labels.binary_search(&x).is_ok()
    }

    /// Labels of the complement `N \ S`.
    pub fn complement(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.universe_size()).filter(move |&x| !self.contains(x))
    }

    /// The first `m` bits of `x`, read as an `m`-bit integer.
    pub fn prefix(&self, x: u64, m: usize) -> u64 {
        prefix_of(x, self.n, m)
    }
}

impl fmt::Display for TargetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, &x) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", to_bitstring(x, self.n))?;
        }
        write!(f, "}}")
    }
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_LABEL_BITS {
        return Err(Error::InvalidQubitCount {
            n,
            max: MAX_LABEL_BITS,
        });
    }
    Ok(())
}

pub(crate) fn prefix_of(x: u64, n: usize, m: usize) -> u64 {
    debug_assert!(m <= n);
    if m == 0 {
        0
    } else {
        x >> (n - m)
    }
}

/// Value of qubit `q` (0 = most significant) in label `x` on `n` qubits.
pub fn qubit_bit(x: u64, n: usize, q: usize) -> bool {
    (x >> (n - 1 - q)) & 1 == 1
}

/// MSB-first bitstring of `x` padded to `n` characters.
pub fn to_bitstring(x: u64, n: usize) -> String {
    (0..n)
        .map(|q| if qubit_bit(x, n, q) { '1' } else { '0' })
        .collect()
}

/// Parses an MSB-first bitstring of exactly `n` characters.
pub fn parse_bitstring(s: &str, n: usize) -> Result<u64> {
    if s.len() != n {
        return Err(Error::Parse(format!(
            "bitstring `{s}` has length {}, expected {n}",
            s.len()
        )));
    }
    s.chars().try_fold(0u64, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::Parse(format!("invalid character `{c}` in `{s}`"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_text_and_json() {
        let text = "n=3\n000\n001\n010\n100\n";
        let s = TargetSet::parse(text).unwrap();
        assert_eq!(s.labels(), &[0, 1, 2, 4]);
        let j = TargetSet::parse(r#"{"n": 3, "targets": [4, 0, 2, 1]}"#).unwrap();
        assert_eq!(s, j);
        let b = TargetSet::parse(r#"{"n": 3, "targets": ["100", 0, "010", "001"]}"#).unwrap();
        assert_eq!(s, b);
        assert!(TargetSet::parse(r#"{"n": 3, "targets": ["10"]}"#).is_err());
        assert_eq!(TargetSet::parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            TargetSet::new(3, Vec::<u64>::new()),
            Err(Error::EmptyTargetSet)
        ));
        assert!(matches!(
            TargetSet::parse("n=2\n01\n01\n"),
            Err(Error::DuplicateLabel(1))
        ));
        assert!(matches!(
            TargetSet::new(2, [4]),
            Err(Error::LabelOutOfRange { label: 4, n: 2 })
        ));
        assert!(TargetSet::parse("n=3\n01\n").is_err());
        assert!(TargetSet::parse("n=2\n0a\n").is_err());
        assert!(TargetSet::parse("3\n000\n").is_err());
        assert!(TargetSet::new(0, [0]).is_err());
        assert!(matches!(TargetSet::parse("n=2\n"), Err(Error::EmptyTargetSet)));
    }

    #[test]
    fn bit_helpers() {
        assert_eq!(to_bitstring(4, 3), "100");
        assert_eq!(parse_bitstring("011", 3).unwrap(), 3);
        assert!(qubit_bit(4, 3, 0));
        assert!(!qubit_bit(4, 3, 2));
        assert_eq!(prefix_of(0b110, 3, 2), 0b11);
        assert_eq!(prefix_of(0b110, 3, 0), 0);
    }

    #[test]
    fn complement_and_display() {
        let s = TargetSet::new(2, [1, 2]).unwrap();
        assert_eq!(s.complement().collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(s.to_string(), "{01, 10}");
    }
}
