//! Symbolic addresses: words over the positive integers, over pairs of
//! positive integers, and over the binary alphabet `{1, 2}`, together with
//! the conjugation between integer words and binary Cantor addresses.
//!
//! The integer symbol `n` is coded as `2^(n-1) 1`, and a trailing tail symbol
//! `(n, ∞)` as `2^n`. Concatenating the codes gives a bijection between
//! integer words (with an optional tail) and binary words.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

const EMPTY: &str = "∅";
const INF: &str = "∞";

/// A finite word over the positive integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NatWord(Vec<u32>);

impl NatWord {
    pub fn new(symbols: Vec<u32>) -> Result<Self> {
        if symbols.contains(&0) {
            return domain("integer word symbols must be >= 1");
        }
        Ok(NatWord(symbols))
    }

    pub fn empty() -> Self {
        NatWord(Vec::new())
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the symbols; equals the length of the binary code.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&s| u64::from(s)).sum()
    }

    /// Binary code of the finite word.
    pub fn to_binary(&self) -> BinaryWord {
        let mut out = Vec::with_capacity(self.weight() as usize);
        for &s in &self.0 {
            push_symbol_code(&mut out, NatSymbol::Finite(s));
        }
        BinaryWord(out)
    }
}

/// A finite word over pairs of positive integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairWord(Vec<(u32, u32)>);

impl PairWord {
    pub fn new(symbols: Vec<(u32, u32)>) -> Result<Self> {
        if symbols.iter().any(|&(i, j)| i == 0 || j == 0) {
            return domain("pair word components must be >= 1");
        }
        Ok(PairWord(symbols))
    }

    pub fn empty() -> Self {
        PairWord(Vec::new())
    }

    pub fn symbols(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<(u32, u32)> {
        self.0.last().copied()
    }

    /// The word with its last symbol removed.
    pub fn parent(&self) -> Result<PairWord> {
        match self.0.split_last() {
            Some((_, rest)) => Ok(PairWord(rest.to_vec())),
            None => domain("the empty word has no parent"),
        }
    }

    /// Horizontal and vertical coordinate words.
    pub fn components(&self) -> (NatWord, NatWord) {
        let (xs, ys) = self.0.iter().copied().unzip();
        (NatWord(xs), NatWord(ys))
    }

    /// Total exponent `Σ i + Σ j`; the probability of the word is `2^(-weight)`.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&(i, j)| u64::from(i) + u64::from(j)).sum()
    }

    /// The word extended by one symbol.
    pub fn child(&self, i: u32, j: u32) -> Result<PairWord> {
        let mut v = self.0.clone();
        v.push((i, j));
        PairWord::new(v)
    }

    /// Replaces the last symbol `(i, j)` by `(i + di, j + dj)`.
    pub(crate) fn bump_last(&self, di: u32, dj: u32) -> PairWord {
        let mut v = self.0.clone();
        if let Some(last) = v.last_mut() {
            last.0 += di;
            last.1 += dj;
        }
        PairWord(v)
    }

    pub fn concat(&self, other: &PairWord) -> PairWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        PairWord(v)
    }
}

/// Which infinite family of siblings is attached after the last symbol of a
/// pair word.
///
/// For `ω = ω⁻(i, j)`:
/// * `EmptyInf` is `∪_{b≥1} J_{ω⁻(i, j+b)}`,
/// * `InfEmpty` is `∪_{a≥1} J_{ω⁻(i+a, j)}`,
/// * `InfInf` is `∪_{a,b≥1} J_{ω⁻(i+a, j+b)}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TailMarker {
    #[default]
    None,
    EmptyInf,
    InfEmpty,
    InfInf,
}

impl TailMarker {
    /// Whether the horizontal / vertical coordinate carries an `∞` tail.
    pub fn axes(self) -> (bool, bool) {
        match self {
            TailMarker::None => (false, false),
            TailMarker::EmptyInf => (false, true),
            TailMarker::InfEmpty => (true, false),
            TailMarker::InfInf => (true, true),
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            TailMarker::None => "",
            TailMarker::EmptyInf => "(∅,∞)",
            TailMarker::InfEmpty => "(∞,∅)",
            TailMarker::InfInf => "(∞,∞)",
        }
    }
}

/// A word over `{1, 2}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if symbols.iter().any(|&s| s != 1 && s != 2) {
            return domain("binary word symbols must be 1 or 2");
        }
        Ok(BinaryWord(symbols))
    }

    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` followed by `d` (which must be 1 or 2).
    pub fn child(&self, d: u8) -> BinaryWord {
        debug_assert!(d == 1 || d == 2);
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(d);
        BinaryWord(v)
    }

    /// All words of length `k`, in lexicographic order.
    pub fn all_of_length(k: usize) -> Vec<BinaryWord> {
        (0..1usize << k)
            .map(|bits| BinaryWord((0..k).map(|p| 1 + ((bits >> (k - 1 - p)) & 1) as u8).collect()))
            .collect()
    }
}

/// A single integer symbol, or a trailing tail symbol `(n, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NatSymbol {
    Finite(u32),
    Tail(u32),
}

/// Binary code of one symbol: `n ↦ 2^(n-1) 1`, `(n, ∞) ↦ 2^n`.
pub fn symbol_to_binary(sym: NatSymbol) -> Result<BinaryWord> {
    match sym {
        NatSymbol::Finite(0) | NatSymbol::Tail(0) => domain("symbols must be >= 1"),
        _ => {
            let mut out = Vec::new();
            push_symbol_code(&mut out, sym);
            Ok(BinaryWord(out))
        }
    }
}

fn push_symbol_code(out: &mut Vec<u8>, sym: NatSymbol) {
    match sym {
        NatSymbol::Finite(n) => {
            out.extend(std::iter::repeat_n(2, (n - 1) as usize));
            out.push(1);
        }
        NatSymbol::Tail(n) => out.extend(std::iter::repeat_n(2, n as usize)),
    }
}

/// An integer word, optionally ending in a tail `(σ, ∞)`: the domain of the
/// conjugation map.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NatAddress {
    word: NatWord,
    tail: bool,
}

impl NatAddress {
    /// `tail = true` requires a nonempty word (its last symbol becomes `(n, ∞)`).
    pub fn new(word: NatWord, tail: bool) -> Result<Self> {
        if tail && word.is_empty() {
            return domain("a tail address needs at least one symbol");
        }
        Ok(NatAddress { word, tail })
    }

    pub fn finite(word: NatWord) -> Self {
        NatAddress { word, tail: false }
    }

    pub fn word(&self) -> &NatWord {
        &self.word
    }

    pub fn has_tail(&self) -> bool {
        self.tail
    }

    /// The conjugation map into binary Cantor addresses.
    pub fn to_binary(&self) -> BinaryWord {
        let syms = self.word.symbols();
        let mut out = Vec::with_capacity(self.word.weight() as usize);
        for (k, &s) in syms.iter().enumerate() {
            let sym = if self.tail && k + 1 == syms.len() { NatSymbol::Tail(s) } else { NatSymbol::Finite(s) };
            push_symbol_code(&mut out, sym);
        }
        BinaryWord(out)
    }

    /// Inverse of [`NatAddress::to_binary`]; total on binary words.
    ///
    /// Each maximal block `2^k 1` becomes the symbol `k + 1`; a trailing run of
    /// `k ≥ 1` twos becomes the tail symbol `(k, ∞)`.
    pub fn from_binary(b: &BinaryWord) -> NatAddress {
        let mut symbols = Vec::new();
        let mut twos = 0u32;
        for &d in b.symbols() {
            if d == 2 {
                twos += 1;
            } else {
                symbols.push(twos + 1);
                twos = 0;
            }
        }
        let tail = twos > 0;
        if tail {
            symbols.push(twos);
        }
        NatAddress { word: NatWord(symbols), tail }
    }
}

impl fmt::Display for NatWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(EMPTY);
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

impl fmt::Display for NatAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)?;
        if self.tail {
            f.write_str(INF)?;
        }
        Ok(())
    }
}

impl fmt::Display for PairWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(EMPTY);
        }
        for (i, j) in &self.0 {
            write!(f, "({i},{j})")?;
        }
        Ok(())
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(EMPTY);
        }
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

fn parse_err<T>(s: &str, what: &str) -> Result<T> {
    Err(Error::Parse(format!("invalid {what}: {s:?}")))
}

impl FromStr for NatWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == EMPTY {
            return Ok(NatWord::empty());
        }
        let symbols = s
            .split('.')
            .map(|p| p.parse::<u32>().or_else(|_| parse_err(s, "integer word")))
            .collect::<Result<Vec<_>>>()?;
        NatWord::new(symbols)
    }
}

impl FromStr for NatAddress {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_suffix(INF) {
            Some(body) => NatAddress::new(body.trim_end_matches('.').parse()?, true),
            None => Ok(NatAddress::finite(s.parse()?)),
        }
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == EMPTY {
            return Ok(BinaryWord::empty());
        }
        let symbols = s
            .chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                _ => parse_err(s, "binary word"),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BinaryWord(symbols))
    }
}

/// Parses `"(1,2)(3,1)"`, optionally followed by a tail suffix such as
/// `"(∞,∅)"`.
pub fn parse_pair_address(s: &str) -> Result<(PairWord, TailMarker)> {
    let s = s.trim();
    if s.is_empty() || s == EMPTY {
        return Ok((PairWord::empty(), TailMarker::None));
    }
    let mut symbols = Vec::new();
    let mut tail = TailMarker::None;
    let mut rest = s;
    while !rest.is_empty() {
        if tail != TailMarker::None {
            return parse_err(s, "pair word (tail marker must be last)");
        }
        let Some(inner) = rest.strip_prefix('(') else { return parse_err(s, "pair word") };
        let Some(close) = inner.find(')') else { return parse_err(s, "pair word") };
        let body = &inner[..close];
        rest = &inner[close + 1..];
        let marker = [TailMarker::EmptyInf, TailMarker::InfEmpty, TailMarker::InfInf]
            .into_iter()
            .find(|m| m.suffix() == format!("({body})"));
        if let Some(m) = marker {
            tail = m;
            continue;
        }
        let Some((a, b)) = body.split_once(',') else { return parse_err(s, "pair word") };
        let (Ok(i), Ok(j)) = (a.trim().parse::<u32>(), b.trim().parse::<u32>()) else {
            return parse_err(s, "pair word");
        };
        symbols.push((i, j));
    }
    let word = PairWord::new(symbols)?;
    if tail != TailMarker::None && word.is_empty() {
        return parse_err(s, "pair word (tail marker needs a symbol)");
    }
    Ok((word, tail))
}

impl FromStr for PairWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match parse_pair_address(s)? {
            (w, TailMarker::None) => Ok(w),
            _ => parse_err(s, "pair word (unexpected tail marker)"),
        }
    }
}
