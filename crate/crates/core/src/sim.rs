//! Bounded deciders for right, left and two-sided (weak) similarity.
//!
//! Similarity quantifies over every synchronized extension, so a search can
//! only ever *refute*; a pair that survives every extension up to the bound
//! is reported as consistent up to that bound, and is upgraded to certified
//! only when a constructive witness recipe covers it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{invariant_factors, similar, IntMatrix, IntPoly, RatPoly};
use crate::certificates::{certify, Certificate};
use crate::error::{Error, Result};
use crate::extensions::{left_specs, right_specs, two_sided_specs, ExtensionSpec};
use crate::perm::{Permutation, PointMap};
use crate::petrie::petrie_matrix;
use crate::report::SCHEMA_VERSION;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Right,
    Left,
    TwoSided,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Right, Mode::Left, Mode::TwoSided];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Right => "right",
            Self::Left => "left",
            Self::TwoSided => "two-sided",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right" | "r" => Ok(Self::Right),
            "left" | "l" => Ok(Self::Left),
            "two-sided" | "two_sided" | "twosided" | "t" => Ok(Self::TwoSided),
            _ => Err(Error::Parse { text: s.into(), reason: "expected right, left or two-sided".into() }),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strength {
    Similar,
    WeaklySimilar,
}

impl Strength {
    pub fn short(self) -> &'static str {
        match self {
            Self::Similar => "sim",
            Self::WeaklySimilar => "weak",
        }
    }
}

/// Cheapest first: determinant, trace, characteristic polynomial, invariant factors.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Discriminator {
    Determinant,
    Trace,
    Charpoly,
    InvariantFactors,
}

impl fmt::Display for Discriminator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Determinant => "determinant",
            Self::Trace => "trace",
            Self::Charpoly => "charpoly",
            Self::InvariantFactors => "invariant-factors",
        })
    }
}

/// Largest extension sizes searched on each side. One-sided modes read only
/// their own side; two-sided searches every `(m, n)` in `1..=left × 1..=right`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ExtensionBound {
    pub left: usize,
    pub right: usize,
}

impl ExtensionBound {
    pub fn uniform(b: usize) -> Self {
        Self { left: b, right: b }
    }

    pub fn two_sided(m: usize, n: usize) -> Self {
        Self { left: m, right: n }
    }

    /// 3 for one-sided modes, `(2, 2)` for two-sided.
    pub fn default_for(mode: Mode) -> Self {
        match mode {
            Mode::TwoSided => Self::two_sided(2, 2),
            _ => Self::uniform(3),
        }
    }

    /// Extension sizes `(m, n)` in search order (total size, then `m`).
    pub fn sizes(&self, mode: Mode) -> Vec<(usize, usize)> {
        match mode {
            Mode::Right => (1..=self.right).map(|n| (0, n)).collect(),
            Mode::Left => (1..=self.left).map(|m| (m, 0)).collect(),
            Mode::TwoSided => {
                let mut v: Vec<_> = (1..=self.left).flat_map(|m| (1..=self.right).map(move |n| (m, n))).collect();
                v.sort_by_key(|&(m, n)| (m + n, m));
                v
            }
        }
    }

    fn validate(&self, mode: Mode) -> Result<()> {
        let ok = match mode {
            Mode::Right => self.right >= 1,
            Mode::Left => self.left >= 1,
            Mode::TwoSided => self.left >= 1 && self.right >= 1,
        };
        if !ok {
            return Err(Error::Precondition(format!("extension bound must be at least 1 for {mode}")));
        }
        Ok(())
    }
}

impl fmt::Display for ExtensionBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.left, self.right)
    }
}

/// Specs of one size, in enumeration order.
pub fn specs_of_size(k: usize, mode: Mode, (m, n): (usize, usize)) -> Box<dyn Iterator<Item = ExtensionSpec> + Send> {
    match mode {
        Mode::Right => Box::new(right_specs(k, n).map(ExtensionSpec::Right)),
        Mode::Left => Box::new(left_specs(m).map(ExtensionSpec::Left)),
        Mode::TwoSided => Box::new(two_sided_specs(k, m, n).map(ExtensionSpec::TwoSided)),
    }
}

/// Similarity invariants of one Petrie matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Profile {
    det: BigInt,
    trace: BigInt,
    charpoly: IntPoly,
    factors: Option<Vec<RatPoly>>,
}

impl Profile {
    fn of(p: &Permutation, strength: Strength) -> Result<Self> {
        Ok(Self::of_matrix(&petrie_matrix(p)?, strength))
    }

    fn of_matrix(m: &IntMatrix, strength: Strength) -> Self {
        let charpoly = m.charpoly();
        let factors = (strength == Strength::Similar).then(|| {
            let r = charpoly.to_rat();
            if r.gcd(&r.derivative()).degree() == Some(0) {
                vec![r.monic()]
            } else {
                invariant_factors(m)
            }
        });
        Self { det: m.det(), trace: m.trace(), charpoly, factors }
    }

    /// First discriminator separating the two profiles.
    fn separate(&self, other: &Self) -> Option<(Discriminator, [String; 2])> {
        if self.det != other.det {
            return Some((Discriminator::Determinant, [self.det.to_string(), other.det.to_string()]));
        }
        if self.trace != other.trace {
            return Some((Discriminator::Trace, [self.trace.to_string(), other.trace.to_string()]));
        }
        if self.charpoly != other.charpoly {
            return Some((Discriminator::Charpoly, [self.charpoly.to_string(), other.charpoly.to_string()]));
        }
        match (&self.factors, &other.factors) {
            (Some(a), Some(b)) if a != b => Some((Discriminator::InvariantFactors, [show_factors(a), show_factors(b)])),
            _ => None,
        }
    }
}

fn show_factors(f: &[RatPoly]) -> String {
    let parts: Vec<String> = f.iter().map(|p| p.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// A synchronized extension pair whose Petrie matrices are not (weakly) similar.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RefutationWitness {
    pub spec: ExtensionSpec,
    pub sigma: Permutation,
    pub rho: Permutation,
    pub discriminator: Discriminator,
    pub values: [String; 2],
}

impl RefutationWitness {
    /// Re-derives the extended pair from the bases and recomputes the
    /// discriminating values.
    pub fn replay(&self, base_sigma: &Permutation, base_rho: &Permutation) -> Result<bool> {
        let (s, r) = (self.spec.apply(base_sigma)?, self.spec.apply(base_rho)?);
        if s != self.sigma || r != self.rho {
            return Ok(false);
        }
        let (a, b) = (petrie_matrix(&s)?, petrie_matrix(&r)?);
        let strength = if self.discriminator == Discriminator::InvariantFactors { Strength::Similar } else { Strength::WeaklySimilar };
        let (pa, pb) = (Profile::of_matrix(&a, strength), Profile::of_matrix(&b, strength));
        let separated = pa.separate(&pb) == Some((self.discriminator, self.values.clone()));
        Ok(separated && (self.discriminator != Discriminator::InvariantFactors || !similar(&a, &b)?))
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Refuted { witness: RefutationWitness },
    ConsistentUpTo { bound: ExtensionBound },
    Certified { bound: ExtensionBound, certificate: Certificate },
}

/// Number of extension pairs compared at one size.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SizeLog {
    pub left: usize,
    pub right: usize,
    pub checked: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub schema_version: u32,
    pub sigma: Permutation,
    pub rho: Permutation,
    pub mode: Mode,
    pub strength: Strength,
    pub outcome: Outcome,
    pub log: Vec<SizeLog>,
    /// Whether the base Petrie matrices are similar; independent of the outcome.
    pub petrie_similar: bool,
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self.outcome, Outcome::Refuted { .. })
    }

    pub fn witness(&self) -> Option<&RefutationWitness> {
        match &self.outcome {
            Outcome::Refuted { witness } => Some(witness),
            _ => None,
        }
    }
}

fn check_bases(sigma: &Permutation, rho: &Permutation) -> Result<()> {
    if sigma.degree() != rho.degree() {
        return Err(Error::DegreeMismatch { left: sigma.degree(), right: rho.degree() });
    }
    if sigma.degree() < 3 {
        return Err(Error::DegreeTooSmall { min: 3, got: sigma.degree() });
    }
    Ok(())
}

fn search(
    sigma: &Permutation,
    rho: &Permutation,
    mode: Mode,
    strength: Strength,
    bound: &ExtensionBound,
) -> Result<(Option<RefutationWitness>, Vec<SizeLog>)> {
    check_bases(sigma, rho)?;
    bound.validate(mode)?;
    let mut log = Vec::new();
    for size in bound.sizes(mode) {
        let mut checked = 0;
        for spec in specs_of_size(sigma.degree(), mode, size) {
            checked += 1;
            let (s, r) = (spec.apply(sigma)?, spec.apply(rho)?);
            if s == r {
                continue;
            }
            if let Some((discriminator, values)) = Profile::of(&s, strength)?.separate(&Profile::of(&r, strength)?) {
                log.push(SizeLog { left: size.0, right: size.1, checked });
                return Ok((Some(RefutationWitness { spec, sigma: s, rho: r, discriminator, values }), log));
            }
        }
        log.push(SizeLog { left: size.0, right: size.1, checked });
    }
    Ok((None, log))
}

/// Compares every synchronized extension pair up to `bound`; the first
/// mismatch refutes, otherwise the pair is consistent (or certified when a
/// witness recipe applies).
pub fn check_pair(sigma: &Permutation, rho: &Permutation, mode: Mode, strength: Strength, bound: &ExtensionBound) -> Result<Verdict> {
    let (witness, log) = search(sigma, rho, mode, strength, bound)?;
    let petrie_similar = similar(&petrie_matrix(sigma)?, &petrie_matrix(rho)?)?;
    let outcome = match witness {
        Some(witness) => Outcome::Refuted { witness },
        None => match certify(sigma, rho, mode, bound)? {
            Some(certificate) => Outcome::Certified { bound: *bound, certificate },
            None => Outcome::ConsistentUpTo { bound: *bound },
        },
    };
    Ok(Verdict { schema_version: SCHEMA_VERSION, sigma: sigma.clone(), rho: rho.clone(), mode, strength, outcome, log, petrie_similar })
}

/// The first counterexample in enumeration order, if any.
pub fn refute(sigma: &Permutation, rho: &Permutation, mode: Mode, strength: Strength, bound: &ExtensionBound) -> Result<Option<RefutationWitness>> {
    Ok(search(sigma, rho, mode, strength, bound)?.0)
}

/// Extends both permutations by `spec` and checks the result in each mode.
pub fn propagate_check(
    sigma: &Permutation,
    rho: &Permutation,
    spec: &ExtensionSpec,
    modes: &[Mode],
    strength: Strength,
    bound: &ExtensionBound,
) -> Result<Vec<Verdict>> {
    let (s, r) = (spec.apply(sigma)?, spec.apply(rho)?);
    modes.iter().map(|&mode| check_pair(&s, &r, mode, strength, bound)).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassStatus {
    Singleton,
    /// Every internal pair survived the bounded search.
    Candidate,
    /// Every member is certified against the first.
    Certified,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassEntry {
    pub members: Vec<Permutation>,
    pub status: ClassStatus,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PairRefutation {
    pub spec: ExtensionSpec,
    pub discriminator: Discriminator,
    pub values: [String; 2],
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema_version: u32,
    pub degree: usize,
    pub mode: Mode,
    pub strength: Strength,
    pub bound: ExtensionBound,
    pub extensions_per_pair: usize,
    pub classes: Vec<ClassEntry>,
    /// Keyed `"σ|ρ"` by image lists, `σ` before `ρ` lexicographically.
    pub refutations: BTreeMap<String, PairRefutation>,
}

impl ClassificationReport {
    pub fn cache_file_name(n: usize, mode: Mode, strength: Strength, bound: &ExtensionBound) -> String {
        format!("classify-n{n}-{mode}-{}-b{bound}.json", strength.short())
    }

    /// Classes with at least two members.
    pub fn nontrivial(&self) -> impl Iterator<Item = &ClassEntry> {
        self.classes.iter().filter(|c| c.members.len() > 1)
    }

    pub fn class_of(&self, p: &Permutation) -> Option<&ClassEntry> {
        self.classes.iter().find(|c| c.members.contains(p))
    }
}

pub fn pair_key(a: &Permutation, b: &Permutation) -> String {
    let show = |p: &Permutation| p.images().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    format!("{}|{}", show(a), show(b))
}

/// Partitions `S_n` into classes of pairs that no extension up to `bound`
/// separates, recording a separating extension for every cross-class pair.
/// Uses the global rayon pool; wrap in `ThreadPool::install` to limit workers.
pub fn classify(n: usize, mode: Mode, strength: Strength, bound: &ExtensionBound) -> Result<ClassificationReport> {
    if n < 3 {
        return Err(Error::DegreeTooSmall { min: 3, got: n });
    }
    bound.validate(mode)?;
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let specs: Vec<ExtensionSpec> = bound.sizes(mode).into_iter().flat_map(|size| specs_of_size(n, mode, size)).collect();
    let profiles: Vec<Vec<Profile>> = perms
        .par_iter()
        .map(|p| specs.iter().map(|s| Profile::of(&s.apply(p)?, strength)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;

    // bounded similarity is an equivalence: equal invariants on every spec
    let mut class_of = vec![usize::MAX; perms.len()];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..perms.len() {
        let c = reps.iter().position(|&r| profiles[r] == profiles[i]).unwrap_or_else(|| {
            reps.push(i);
            reps.len() - 1
        });
        class_of[i] = c;
    }

    let pairs: Vec<(usize, usize)> = (0..perms.len()).flat_map(|i| (i + 1..perms.len()).map(move |j| (i, j))).filter(|&(i, j)| class_of[i] != class_of[j]).collect();
    let refutations: BTreeMap<String, PairRefutation> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (idx, (discriminator, values)) = profiles[i]
                .iter()
                .zip(&profiles[j])
                .enumerate()
                .find_map(|(idx, (a, b))| a.separate(b).map(|d| (idx, d)))
                .expect("different classes differ somewhere");
            (pair_key(&perms[i], &perms[j]), PairRefutation { spec: specs[idx].clone(), discriminator, values })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    let classes = reps
        .iter()
        .enumerate()
        .map(|(c, _)| {
            let members: Vec<Permutation> = (0..perms.len()).filter(|&i| class_of[i] == c).map(|i| perms[i].clone()).collect();
            let status = if members.len() == 1 {
                ClassStatus::Singleton
            } else if members[1..].iter().map(|m| certify(&members[0], m, mode, bound)).collect::<Result<Vec<_>>>()?.iter().all(Option::is_some) {
                ClassStatus::Certified
            } else {
                ClassStatus::Candidate
            };
            Ok(ClassEntry { members, status })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ClassificationReport {
        schema_version: SCHEMA_VERSION,
        degree: n,
        mode,
        strength,
        bound: *bound,
        extensions_per_pair: specs.len(),
        classes,
        refutations,
    })
}
