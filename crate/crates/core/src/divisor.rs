//! Divisor classes and their `(degree, character)` translation.
//!
//! On the quotient, the coordinate divisor `D_i` (image of `ξ_i = 0`) pulls
//! back to `O(1)` with the linearization that makes `ξ_i` invariant, so its
//! sections are the degree-one monomials of weight `k_i`. The torsion class
//! `N = D_1 - D_0` has degree zero and character `k_1 - k_0`, and `K` has
//! degree `p - n - 2` with character `±Σ_t k_t`. Everything a section space
//! sees of a class is therefore the pair `(degree, character mod p)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::residue;
use crate::config::{QuotientConfig, SignConvention};
use crate::error::{Error, Result};

/// `K? + Σ a_i D_i + j N`, with `i` ranging over variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DivisorClass {
    coefficients: BTreeMap<usize, u32>,
    twist: i64,
    canonical: bool,
}

impl DivisorClass {
    pub fn new() -> Self {
        Self::default()
    }

    /// `K + t D_0`, the shape of every adjoint system in this crate.
    pub fn adjoint(t: u32) -> Self {
        Self::new().with_canonical(true).with_coordinate(0, t)
    }

    pub fn with_canonical(mut self, canonical: bool) -> Self {
        self.canonical = canonical;
        self
    }

    /// Adds `multiplicity · D_index` to the class.
    pub fn with_coordinate(mut self, index: usize, multiplicity: u32) -> Self {
        if multiplicity > 0 {
            *self.coefficients.entry(index).or_insert(0) += multiplicity;
        }
        self
    }

    pub fn with_twist(mut self, twist: i64) -> Self {
        self.twist = twist;
        self
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, u32> {
        &self.coefficients
    }

    pub fn coefficient(&self, index: usize) -> u32 {
        self.coefficients.get(&index).copied().unwrap_or(0)
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn canonical(&self) -> bool {
        self.canonical
    }

    /// `t = Σ a_i`.
    pub fn total_degree(&self) -> u32 {
        self.coefficients.values().sum()
    }

    /// Sum of classes; the canonical multiplicity must stay in `{0, 1}`.
    pub fn plus(&self, other: &Self) -> Option<Self> {
        if self.canonical && other.canonical {
            return None;
        }
        let mut out = self.clone();
        for (&i, &a) in &other.coefficients {
            out = out.with_coordinate(i, a);
        }
        out.twist += other.twist;
        out.canonical |= other.canonical;
        Some(out)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        if self.canonical {
            terms.push("K".into());
        }
        for (i, a) in &self.coefficients {
            terms.push(format!("{a}D_{i}"));
        }
        if self.twist != 0 || terms.is_empty() {
            terms.push(format!("{}N", self.twist));
        }
        f.write_str(&terms.join(" + "))
    }
}

/// A `G`-linearized `O(d)`: invariant sections are the degree-`d` monomials
/// of weight `≡ character`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearizedSystem {
    p: u32,
    weights: Vec<u32>,
    degree: u32,
    character: u32,
}

impl LinearizedSystem {
    /// Variable `i` carries weight `weights[i]`. The character is reduced mod `p`.
    pub fn new(p: u32, weights: Vec<u32>, degree: u32, character: i64) -> Result<Self> {
        if !crate::arith::is_prime(p as u64) {
            return Err(Error::NotPrime(p as i64));
        }
        let mut seen = alloc::vec![false; p as usize];
        for &w in &weights {
            if w >= p {
                return Err(Error::WeightOutOfRange {
                    weight: w as i64,
                    p: p as i64,
                });
            }
            if core::mem::replace(&mut seen[w as usize], true) {
                return Err(Error::DuplicateWeight(w));
            }
        }
        Ok(LinearizedSystem {
            p,
            weights,
            degree,
            character: residue(character, p),
        })
    }

    /// The system `(degree, character)` in the variables of `config`.
    pub fn on_config(config: &QuotientConfig, degree: u32, character: i64) -> Self {
        LinearizedSystem {
            p: config.p(),
            weights: config.weights().to_vec(),
            degree,
            character: residue(character, config.p()),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> u32 {
        self.weights[index]
    }

    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn character(&self) -> u32 {
        self.character
    }

    /// The same variables with a different degree and character.
    pub fn with(&self, degree: u32, character: i64) -> Self {
        LinearizedSystem {
            p: self.p,
            weights: self.weights.clone(),
            degree,
            character: residue(character, self.p),
        }
    }
}

/// Translates a divisor class into its linearized system.
///
/// `d = t + [K]·(p-n-2)` and `c = Σ a_i k_i + j (k_1 - k_0) + [K]·sign·Σ_t k_t`.
pub fn to_system(
    config: &QuotientConfig,
    class: &DivisorClass,
    sign: SignConvention,
) -> Result<LinearizedSystem> {
    let p = config.p();
    let k = config.weights();
    let mut character: i64 = 0;
    for (&i, &a) in class.coefficients() {
        let w = *k.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: k.len(),
        })?;
        character += residue(a as i64 * w as i64, p) as i64;
    }
    let twist_char = residue(k[1] as i64 - k[0] as i64, p) as i64;
    character += residue(class.twist(), p) as i64 * twist_char;
    let mut degree = class.total_degree();
    if class.canonical() {
        degree += config.canonical_degree();
        character += sign.as_i64() * config.weight_sum() as i64;
    }
    Ok(LinearizedSystem::on_config(config, degree, character))
}

/// Rewrites a class on the fundamental quotient as `K? + t D_0 + j N` with
/// `0 <= j < p`, using `D_i ~ D_0 + i N` and `p N ~ 0`.
pub fn normalize_class(config: &QuotientConfig, class: &DivisorClass) -> Result<DivisorClass> {
    if !config.is_fundamental() {
        return Err(Error::NotFundamentalCase);
    }
    let p = config.p();
    let mut twist = class.twist();
    for (&i, &a) in class.coefficients() {
        if i >= config.num_vars() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: config.num_vars(),
            });
        }
        twist += residue(i as i64 * a as i64, p) as i64;
    }
    Ok(DivisorClass::new()
        .with_canonical(class.canonical())
        .with_coordinate(0, class.total_degree())
        .with_twist(residue(twist, p) as i64))
}
