//! Invariant monomial bases of linearized systems.
//!
//! Sections of `(d, c)` are the degree-`d` monomials `ξ^e` whose weight
//! `Σ e_i k_i` is `≡ c mod p`. Counting and support-restricted existence are
//! dynamic programs over `(variables processed, degree used, weight residue)`,
//! so neither materializes the basis.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::binomial;
use crate::divisor::LinearizedSystem;
use crate::error::{Error, Result};

/// Default cap on the raw number of degree-`d` monomials an enumeration may face.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Exponent vector aligned with the variables of a system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exponents.get(index).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// `|f| = Σ e_i k_i mod p`.
    pub fn weight(&self, weights: &[u32], p: u32) -> u32 {
        let total: u64 = self
            .exponents
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum();
        (total % p as u64) as u32
    }

    /// Indices with a positive exponent, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn supported_in(&self, support: &[usize]) -> bool {
        self.exponents
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || support.contains(&i))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => continue,
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
            any = true;
        }
        if !any {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// The invariant monomials of a system, in decreasing lexicographic order of
/// exponent vectors (so `ξ_0^d` comes first when present).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionBasis {
    system: LinearizedSystem,
    monomials: Vec<Monomial>,
}

impl SectionBasis {
    pub fn system(&self) -> &LinearizedSystem {
        &self.system
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Bitset over residues mod `p`.
#[derive(Clone, PartialEq, Eq)]
struct Residues {
    words: Vec<u64>,
    p: usize,
}

impl Residues {
    fn empty(p: u32) -> Self {
        Residues {
            words: vec![0; (p as usize).div_ceil(64)],
            p: p as usize,
        }
    }

    fn insert(&mut self, r: usize) {
        self.words[r / 64] |= 1 << (r % 64);
    }

    fn contains(&self, r: u32) -> bool {
        let r = r as usize;
        self.words[r / 64] >> (r % 64) & 1 == 1
    }

    /// `self ∪= other + shift`: bits below `p - shift` move up by `shift`,
    /// the rest wrap to the bottom.
    fn absorb_shifted(&mut self, other: &Residues, shift: u32) {
        let shift = shift as usize % self.p;
        or_shifted_left(&mut self.words, &other.words, shift, self.p);
        if shift > 0 {
            or_shifted_right(&mut self.words, &other.words, self.p - shift, self.p);
        }
    }
}

/// `dst |= (src << by)`, truncated to `len` bits.
fn or_shifted_left(dst: &mut [u64], src: &[u64], by: usize, len: usize) {
    let (ws, bs) = (by / 64, by % 64);
    for i in (ws..dst.len()).rev() {
        let j = i - ws;
        let mut w = src[j] << bs;
        if bs > 0 && j > 0 {
            w |= src[j - 1] >> (64 - bs);
        }
        dst[i] |= w;
    }
    mask_tail(dst, len);
}

/// `dst |= (src >> by)`.
fn or_shifted_right(dst: &mut [u64], src: &[u64], by: usize, len: usize) {
    let (ws, bs) = (by / 64, by % 64);
    for i in 0..dst.len().saturating_sub(ws) {
        let j = i + ws;
        let mut w = src[j] >> bs;
        if bs > 0 && j + 1 < src.len() {
            w |= src[j + 1] << (64 - bs);
        }
        dst[i] |= w;
    }
    mask_tail(dst, len);
}

fn mask_tail(words: &mut [u64], len: usize) {
    if !len.is_multiple_of(64) {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << (len % 64)) - 1;
        }
    }
}

/// `reach[r]`: residues attainable with total degree exactly `r` using the
/// given weights.
fn reachable(weights: impl Iterator<Item = u32>, degree: u32, p: u32) -> Vec<Residues> {
    let mut reach = vec![Residues::empty(p); degree as usize + 1];
    reach[0].insert(0);
    weights.fold(reach, |reach, w| extend(&reach, w, p))
}

/// Adds one variable of weight `w` to a reachability table.
fn extend(prev: &[Residues], w: u32, p: u32) -> Vec<Residues> {
    let mut next = prev.to_vec();
    for r in 1..prev.len() {
        for e in 1..=r {
            let shift = ((e as u64 * w as u64) % p as u64) as u32;
            next[r].absorb_shifted(&prev[r - e], shift);
        }
    }
    next
}

/// Raw count of degree-`d` monomials in `v` variables.
pub fn monomial_count(num_vars: usize, degree: u32) -> Option<u128> {
    if num_vars == 0 {
        return Some(u128::from(degree == 0));
    }
    binomial(degree as u64 + num_vars as u64 - 1, num_vars as u64 - 1)
}

/// Enumerates the invariant monomials of `system`.
pub fn enumerate_basis(system: &LinearizedSystem, cap: u64) -> Result<SectionBasis> {
    let raw = monomial_count(system.num_vars(), system.degree()).ok_or(Error::CountOverflow)?;
    if raw > cap as u128 {
        return Err(Error::TooLarge { count: raw, cap });
    }
    let p = system.p();
    let v = system.num_vars();
    let d = system.degree();
    // suffix[i][r]: residues attainable by variables i.. with degree r.
    let mut suffix: Vec<Vec<Residues>> = vec![reachable(core::iter::empty(), d, p)];
    for i in (0..v).rev() {
        let next = extend(&suffix[0], system.weight(i), p);
        suffix.insert(0, next);
    }
    let mut monomials = Vec::new();
    let mut exps = vec![0u32; v];
    if v == 0 {
        if d == 0 && system.character() == 0 {
            monomials.push(Monomial::new(Vec::new()));
        }
    } else {
        walk(system, &suffix, 0, d, 0, &mut exps, &mut monomials);
    }
    Ok(SectionBasis {
        system: system.clone(),
        monomials,
    })
}

fn walk(
    system: &LinearizedSystem,
    suffix: &[Vec<Residues>],
    var: usize,
    remaining: u32,
    acc: u32,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    let p = system.p();
    let need = (system.character() + p - acc) % p;
    if !suffix[var][remaining as usize].contains(need) {
        return;
    }
    if var + 1 == exps.len() {
        exps[var] = remaining;
        out.push(Monomial::new(exps.clone()));
        exps[var] = 0;
        return;
    }
    let w = system.weight(var) as u64;
    for e in (0..=remaining).rev() {
        exps[var] = e;
        let next = ((acc as u64 + e as u64 * w) % p as u64) as u32;
        walk(system, suffix, var + 1, remaining - e, next, exps, out);
    }
    exps[var] = 0;
}

/// `counts[c]` = number of degree-`d` monomials of weight `c`, for every `c`.
pub fn count_by_character(weights: &[u32], degree: u32, p: u32) -> Result<Vec<u128>> {
    let d = degree as usize;
    let pu = p as usize;
    let mut ways = vec![vec![0u128; pu]; d + 1];
    ways[0][0] = 1;
    for &w in weights {
        let prev = ways.clone();
        for r in 1..=d {
            for e in 1..=r {
                let shift = (e as u64 * w as u64 % p as u64) as usize;
                for (c, &n) in prev[r - e].iter().enumerate() {
                    if n == 0 {
                        continue;
                    }
                    let t = (c + shift) % pu;
                    ways[r][t] = ways[r][t].checked_add(n).ok_or(Error::CountOverflow)?;
                }
            }
        }
    }
    Ok(ways.swap_remove(d))
}

/// `|enumerate_basis(system)|` without enumerating.
pub fn count_basis(system: &LinearizedSystem) -> Result<u128> {
    let counts = count_by_character(system.weights(), system.degree(), system.p())?;
    Ok(counts[system.character() as usize])
}

/// Whether some invariant monomial has support inside `support`.
pub fn exists_supported(system: &LinearizedSystem, support: &[usize]) -> Result<bool> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    if let Some(&index) = support.iter().find(|&&i| i >= system.num_vars()) {
        return Err(Error::IndexOutOfRange {
            index,
            len: system.num_vars(),
        });
    }
    Ok(exists_supported_unchecked(system, support.iter().copied()))
}

pub(crate) fn exists_supported_unchecked(
    system: &LinearizedSystem,
    support: impl Iterator<Item = usize>,
) -> bool {
    let reach = reachable(
        support.map(|i| system.weight(i)),
        system.degree(),
        system.p(),
    );
    reach[system.degree() as usize].contains(system.character())
}
