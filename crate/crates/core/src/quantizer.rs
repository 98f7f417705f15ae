//! Closed-form optimal codebooks and quantization errors.
//!
//! For `n ≥ 2` let `ℓ = ℓ(n)` with `4^ℓ ≤ n < 4^(ℓ+1)` and consider the
//! `4^ℓ` product cells `A_σ × A_τ`, `|σ| = |τ| = ℓ`:
//!
//! * `n = 4^ℓ` (`ℓ ≥ 1`): one codeword at the centre of every cell.
//! * `4^ℓ < n ≤ 2·4^ℓ`: `n − 4^ℓ` cells carry two codewords (split along `x`
//!   or `y`), the others one.
//! * `2·4^ℓ < n ≤ 3·4^ℓ`: `n − 2·4^ℓ` cells carry three codewords (four
//!   possible patterns), the others two.
//! * `3·4^ℓ < n < 4^(ℓ+1)`: `n − 3·4^ℓ` cells carry the four centres of
//!   their children, the others three codewords.
//!
//! Every such choice is a *variant*. Variants are ranked lexicographically:
//! first by the sorted set of multi-codeword cells, then by the vector of
//! per-cell pattern choices read as a mixed-radix number.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::codebook::Codebook;
use crate::error::{domain, Error, Result};
use crate::measure::{cantor_point, Point};
use crate::scalar::Scalar;
use crate::words::BinaryWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `n = 4^ℓ`, `ℓ ≥ 1`.
    Power,
    /// `4^ℓ < n ≤ 2·4^ℓ`.
    Low,
    /// `2·4^ℓ < n < 4^(ℓ+1)`; cells carry two to four codewords.
    High,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Power => "power",
            Regime::Low => "low",
            Regime::High => "high",
        })
    }
}

fn pow4(l: u32) -> u64 {
    1u64 << (2 * l)
}

/// The level `ℓ(n)` and regime of `n ≥ 2`.
pub fn level(n: u64) -> Result<(u32, Regime)> {
    if n < 2 {
        return domain(format!("level needs n >= 2, got {n}"));
    }
    let l = (63 - n.leading_zeros()) / 2;
    let base = pow4(l);
    let regime = if n == base {
        Regime::Power
    } else if n <= 2 * base {
        Regime::Low
    } else {
        Regime::High
    };
    Ok((l, regime))
}

/// The `n`-th quantization error `V_n`.
pub fn quantization_error<S: Scalar>(n: u64) -> Result<S> {
    if n < 1 {
        return domain("quantization error needs n >= 1");
    }
    if n == 1 {
        return Ok(S::ratio(1, 4));
    }
    let (l, regime) = level(n)?;
    let four_l = S::from_u64_lossy(pow4(l));
    let n_s = S::from_u64_lossy(n);
    Ok(match regime {
        Regime::Power => S::ratio(1, 4) * S::inv_pow(9, l),
        Regime::Low => {
            let single = S::ratio(2, 1) * four_l.clone() - n_s.clone();
            let split = S::ratio(5, 9) * (n_s - four_l);
            S::ratio(1, 4) * S::inv_pow(36, l) * (single + split)
        }
        Regime::High => S::inv_pow(36, l + 1) * (S::ratio(9, 1) * four_l - S::ratio(2, 1) * n_s),
    })
}

/// The `4^ℓ` product cells of level `ℓ`, in lexicographic order of `(σ, τ)`.
pub fn level_cells(l: u32) -> Vec<(BinaryWord, BinaryWord)> {
    let words = BinaryWord::all_of_length(l as usize);
    let mut out = Vec::with_capacity(words.len() * words.len());
    for s in &words {
        for t in &words {
            out.push((s.clone(), t.clone()));
        }
    }
    out
}

fn cell_index(l: u32, sigma: &BinaryWord, tau: &BinaryWord) -> Option<usize> {
    if sigma.len() != l as usize || tau.len() != l as usize {
        return None;
    }
    let rank = |w: &BinaryWord| w.symbols().iter().fold(0usize, |acc, &d| acc * 2 + usize::from(d - 1));
    Some(rank(sigma) * (1usize << l) + rank(tau))
}

fn cell_at(l: u32, index: usize) -> (BinaryWord, BinaryWord) {
    let side = 1usize << l;
    let unrank = |r: usize| {
        BinaryWord::new((0..l as usize).map(|p| 1 + ((r >> (l as usize - 1 - p)) & 1) as u8).collect())
            .expect("binary digits")
    };
    (unrank(index / side), unrank(index % side))
}

/// One member of the family of optimal codebooks for a given `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariantSpec {
    n: u64,
    level: u32,
    regime: Regime,
    /// Sorted indices (into [`level_cells`]) of the cells carrying the extra codeword.
    split: Vec<usize>,
    /// Low regime: one entry per split cell, in `split` order, each in `0..2`.
    /// High regime: one entry per level cell, in cell order, below the arity
    /// of that cell's pattern (see [`pattern_arity`]). Power regime: empty.
    choices: Vec<u8>,
}

impl VariantSpec {
    /// Validates a variant given by explicit cell addresses.
    pub fn new(n: u64, split_cells: &[(BinaryWord, BinaryWord)], choices: Vec<u8>) -> Result<Self> {
        let (l, regime) = level(n)?;
        let mut split = split_cells
            .iter()
            .map(|(s, t)| {
                cell_index(l, s, t).ok_or_else(|| Error::InconsistentVariant(format!("cell ({s},{t}) is not at level {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        split.sort_unstable();
        split.dedup();
        if split.len() != split_cells.len() {
            return Err(Error::InconsistentVariant("duplicate split cells".into()));
        }
        let spec = VariantSpec { n, level: l, regime, split, choices };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InconsistentVariant(m));
        let want = split_count(self.n, self.level, self.regime) as usize;
        if self.split.len() != want {
            return bad(format!("n = {} needs {want} split cells, got {}", self.n, self.split.len()));
        }
        let arities = self.choice_arities();
        if self.choices.len() != arities.len() {
            return bad(format!("{} regime needs {} choices, got {}", self.regime, arities.len(), self.choices.len()));
        }
        for (i, (&c, &arity)) in self.choices.iter().zip(&arities).enumerate() {
            if u32::from(c) >= arity {
                return bad(format!("choice {c} at position {i} exceeds arity {arity}"));
            }
        }
        Ok(())
    }

    /// Codewords carried by cell `index` of the level.
    fn cell_load(&self, index: usize) -> u64 {
        let base = match self.regime {
            Regime::Power => 1,
            Regime::Low => 1,
            Regime::High => high_base(self.n, self.level),
        };
        base + u64::from(self.split.binary_search(&index).is_ok())
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Addresses of the cells carrying the extra codeword.
    pub fn split_cells(&self) -> Vec<(BinaryWord, BinaryWord)> {
        self.split.iter().map(|&i| cell_at(self.level, i)).collect()
    }

    pub fn choices(&self) -> &[u8] {
        &self.choices
    }

    /// Position of this variant in the lexicographic enumeration.
    pub fn rank(&self) -> BigUint {
        let total_cells = pow4(self.level);
        let comb = rank_combination(total_cells, &self.split);
        let mut choice_rank = BigUint::zero();
        for (arity, c) in self.choice_arities().into_iter().zip(&self.choices) {
            choice_rank = choice_rank * BigUint::from(arity) + BigUint::from(*c);
        }
        comb * choice_space(self.n, self.level, self.regime) + choice_rank
    }

    fn choice_arities(&self) -> Vec<u32> {
        match self.regime {
            Regime::Power => vec![],
            Regime::Low => vec![2; self.split.len()],
            Regime::High => (0..pow4(self.level) as usize).map(|i| pattern_arity(self.cell_load(i))).collect(),
        }
    }
}

/// Codewords per cell outside the split set in the high regime: 2, or 3
/// once `n` exceeds `3·4^ℓ`.
fn high_base(n: u64, l: u32) -> u64 {
    if n <= 3 * pow4(l) {
        2
    } else {
        3
    }
}

/// Number of interchangeable patterns for a cell holding `load` codewords.
pub fn pattern_arity(load: u64) -> u32 {
    match load {
        2 => 2,
        3 => 4,
        _ => 1,
    }
}

fn split_count(n: u64, l: u32, regime: Regime) -> u64 {
    match regime {
        Regime::Power => 0,
        Regime::Low => n - pow4(l),
        Regime::High => n - high_base(n, l) * pow4(l),
    }
}

fn choice_space(n: u64, l: u32, regime: Regime) -> BigUint {
    let k = split_count(n, l, regime);
    let rest = (pow4(l) - k) as u32;
    let pow = |a: u32, e: u32| BigUint::from(a).pow(e);
    match regime {
        Regime::Power => BigUint::one(),
        Regime::Low => pow(2, k as u32),
        Regime::High => {
            let base = high_base(n, l);
            pow(pattern_arity(base), rest) * pow(pattern_arity(base + 1), k as u32)
        }
    }
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Number of variants for `n ≥ 2`.
pub fn count_variants(n: u64) -> Result<BigUint> {
    let (l, regime) = level(n)?;
    let k = split_count(n, l, regime);
    Ok(binomial(pow4(l), k) * choice_space(n, l, regime))
}

/// Lexicographic rank of a sorted `k`-subset of `0..total`.
fn rank_combination(total: u64, subset: &[usize]) -> BigUint {
    let k = subset.len() as u64;
    let mut rank = BigUint::zero();
    let mut next = 0u64;
    for (pos, &c) in subset.iter().enumerate() {
        let remaining = k - pos as u64 - 1;
        for skipped in next..c as u64 {
            rank += binomial(total - skipped - 1, remaining);
        }
        next = c as u64 + 1;
    }
    rank
}

/// Inverse of [`rank_combination`].
fn unrank_combination(total: u64, k: u64, mut rank: BigUint) -> Vec<usize> {
    let mut out = Vec::with_capacity(k as usize);
    let mut c = 0u64;
    for pos in 0..k {
        let remaining = k - pos - 1;
        // Walk C(total - c - 1, remaining) downwards in c with the ratio
        // C(a - 1, r) = C(a, r)·(a - r)/a.
        let mut block = binomial(total - c - 1, remaining);
        while rank >= block {
            rank -= &block;
            let a = total - c - 1;
            c += 1;
            block = if a == 0 || a - remaining == 0 {
                BigUint::zero()
            } else {
                block * BigUint::from(a - remaining) / BigUint::from(a)
            };
        }
        out.push(c as usize);
        c += 1;
    }
    out
}

/// The variant at position `index` of the enumeration for `n`.
pub fn variant_at(n: u64, index: &BigUint) -> Result<VariantSpec> {
    let count = count_variants(n)?;
    if index >= &count {
        return domain(format!("variant index {index} out of range: n = {n} has {count} variants"));
    }
    let (l, regime) = level(n)?;
    let k = split_count(n, l, regime);
    let space = choice_space(n, l, regime);
    let (comb_rank, mut choice_rank) = index.div_rem(&space);
    let split = unrank_combination(pow4(l), k, comb_rank);
    let mut spec = VariantSpec { n, level: l, regime, split, choices: vec![] };
    let arities = spec.choice_arities();
    let mut choices = vec![0u8; arities.len()];
    for (slot, &arity) in choices.iter_mut().zip(&arities).rev() {
        let (q, r) = choice_rank.div_rem(&BigUint::from(arity));
        *slot = r.to_u8().expect("digit below arity");
        choice_rank = q;
    }
    spec.choices = choices;
    Ok(spec)
}

/// The default variant: lowest-ranked split set, all choices zero.
pub fn default_variant(n: u64) -> Result<VariantSpec> {
    variant_at(n, &BigUint::zero())
}

/// Lazily enumerates every variant of `n` in rank order.
pub fn enumerate_variants(n: u64) -> Result<VariantIter> {
    let first = default_variant(n)?;
    Ok(VariantIter { next: Some(first) })
}

pub struct VariantIter {
    next: Option<VariantSpec>,
}

impl Iterator for VariantIter {
    type Item = VariantSpec;

    fn next(&mut self) -> Option<VariantSpec> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(current)
    }
}

fn successor(spec: &VariantSpec) -> Option<VariantSpec> {
    let arities = spec.choice_arities();
    let mut choices = spec.choices.clone();
    for i in (0..choices.len()).rev() {
        if u32::from(choices[i]) + 1 < arities[i] {
            choices[i] += 1;
            return Some(VariantSpec { choices, ..spec.clone() });
        }
        choices[i] = 0;
    }
    // Choice vector wrapped: advance the split set.
    let total = pow4(spec.level) as usize;
    let mut split = spec.split.clone();
    let k = split.len();
    let mut i = k;
    loop {
        if i == 0 {
            return None;
        }
        i -= 1;
        if split[i] < total - (k - i) {
            split[i] += 1;
            for j in i + 1..k {
                split[j] = split[j - 1] + 1;
            }
            break;
        }
    }
    let mut next = VariantSpec { split, choices: vec![], ..spec.clone() };
    next.choices = vec![0; next.choice_arities().len()];
    Some(next)
}

fn cw<S: Scalar>(sigma: &BinaryWord, tau: &BinaryWord) -> Point<S> {
    Point::new(cantor_point(sigma), cantor_point(tau))
}

/// Two codewords in cell `(σ, τ)`: `x`-split (0) or `y`-split (1).
fn pair_pattern<S: Scalar>(s: &BinaryWord, t: &BinaryWord, choice: u8) -> [Point<S>; 2] {
    match choice {
        0 => [cw(&s.child(1), t), cw(&s.child(2), t)],
        _ => [cw(s, &t.child(1)), cw(s, &t.child(2))],
    }
}

/// Three codewords in cell `(σ, τ)`.
fn triple_pattern<S: Scalar>(s: &BinaryWord, t: &BinaryWord, choice: u8) -> [Point<S>; 3] {
    let (s1, s2, t1, t2) = (s.child(1), s.child(2), t.child(1), t.child(2));
    match choice {
        0 => [cw(&s1, t), cw(&s2, &t1), cw(&s2, &t2)],
        1 => [cw(&s1, &t1), cw(&s1, &t2), cw(&s2, t)],
        2 => [cw(&s1, &t1), cw(&s2, &t1), cw(s, &t2)],
        _ => [cw(s, &t1), cw(&s1, &t2), cw(&s2, &t2)],
    }
}

/// Builds the codebook of a variant.
pub fn optimal_codebook<S: Scalar>(spec: &VariantSpec) -> Result<Codebook<S>> {
    spec.validate()?;
    let cells = level_cells(spec.level);
    let mut points = Vec::with_capacity(spec.n as usize);
    match spec.regime {
        Regime::Power => points.extend(cells.iter().map(|(s, t)| cw(s, t))),
        Regime::Low => {
            let mut slot = 0;
            for (i, (s, t)) in cells.iter().enumerate() {
                if spec.split.binary_search(&i).is_ok() {
                    points.extend(pair_pattern(s, t, spec.choices[slot]));
                    slot += 1;
                } else {
                    points.push(cw(s, t));
                }
            }
        }
        Regime::High => {
            for (i, (s, t)) in cells.iter().enumerate() {
                let c = spec.choices[i];
                match spec.cell_load(i) {
                    2 => points.extend(pair_pattern(s, t, c)),
                    3 => points.extend(triple_pattern(s, t, c)),
                    _ => {
                        for a in 1..=2 {
                            for b in 1..=2 {
                                points.push(cw(&s.child(a), &t.child(b)));
                            }
                        }
                    }
                }
            }
        }
    }
    debug_assert_eq!(points.len() as u64, spec.n);
    Codebook::new(points)
}

/// Default optimal codebook for any `n ≥ 1` (`n = 1` is the mean).
pub fn default_codebook<S: Scalar>(n: u64) -> Result<Codebook<S>> {
    match n {
        0 => domain("n must be >= 1"),
        1 => Codebook::new(vec![Point::center()]),
        _ => optimal_codebook(&default_variant(n)?),
    }
}
