//! Right, left and two-sided extensions of a permutation, and the
//! synchronized extension pairs of two permutations.
//!
//! A right extension of `σ_k` by `(β, t)` keeps `σ` on `1..k-1`, sends `k`
//! to `β(t)` and routes `t` back to `σ(k)`; a left extension by `(α, s)`
//! routes `s` to `m + σ(1)` and `m + 1` to `α(s)`; a two-sided extension
//! does both. Two extensions of different bases with the same spec form a
//! synchronized pair.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{lex_permutations, Permutation, PointMap, RangePermutation};

/// Filler `β` on `{k+1, …, k+n}` and slot `t` in that range.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RightExtensionSpec {
    filler: RangePermutation,
    slot: usize,
}

impl RightExtensionSpec {
    pub fn new(filler: RangePermutation, slot: usize) -> Result<Self> {
        if filler.is_empty() {
            return Err(Error::InvalidSpec("right filler must be non-empty".into()));
        }
        if filler.start() < 2 {
            return Err(Error::InvalidSpec("right filler must start above the base".into()));
        }
        if slot < filler.start() || slot > filler.end() {
            return Err(Error::InvalidSpec(format!("slot {slot} outside {}..={}", filler.start(), filler.end())));
        }
        Ok(Self { filler, slot })
    }

    /// `k` is implied by the filler range `{k+1..k+n}`.
    pub fn from_images(images: Vec<usize>, slot: usize) -> Result<Self> {
        let start = images.iter().copied().min().ok_or_else(|| Error::InvalidSpec("empty filler".into()))?;
        let filler = RangePermutation::new(start, images).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        Self::new(filler, slot)
    }

    pub fn base_degree(&self) -> usize {
        self.filler.start() - 1
    }

    pub fn size(&self) -> usize {
        self.filler.len()
    }

    pub fn filler(&self) -> &RangePermutation {
        &self.filler
    }

    pub fn slot(&self) -> usize {
        self.slot
    }

    /// The same filler pattern and slot offset placed above a base of degree `k`.
    pub fn rebased(&self, k: usize) -> Self {
        let shift = |v: usize| v + k - self.base_degree();
        let filler = RangePermutation::new(k + 1, self.filler.images().iter().map(|&v| shift(v)).collect()).expect("shift preserves bijectivity");
        Self { filler, slot: shift(self.slot) }
    }
}

/// Filler `α` on `{1, …, m}` and slot `s` in that range.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LeftExtensionSpec {
    filler: Permutation,
    slot: usize,
}

impl LeftExtensionSpec {
    pub fn new(filler: Permutation, slot: usize) -> Result<Self> {
        if slot == 0 || slot > filler.degree() {
            return Err(Error::InvalidSpec(format!("slot {slot} outside 1..={}", filler.degree())));
        }
        Ok(Self { filler, slot })
    }

    pub fn from_images(images: Vec<usize>, slot: usize) -> Result<Self> {
        let filler = Permutation::new(images).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        Self::new(filler, slot)
    }

    pub fn size(&self) -> usize {
        self.filler.degree()
    }

    pub fn filler(&self) -> &Permutation {
        &self.filler
    }

    pub fn slot(&self) -> usize {
        self.slot
    }
}

/// Both sides at once; the right filler lives on `{m+k+1, …, m+k+n}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TwoSidedExtensionSpec {
    left: LeftExtensionSpec,
    right: RightExtensionSpec,
}

impl TwoSidedExtensionSpec {
    pub fn new(left: LeftExtensionSpec, right: RightExtensionSpec) -> Result<Self> {
        if right.base_degree() < left.size() + 2 {
            return Err(Error::InvalidSpec("right filler overlaps the left block".into()));
        }
        Ok(Self { left, right })
    }

    pub fn left(&self) -> &LeftExtensionSpec {
        &self.left
    }

    pub fn right(&self) -> &RightExtensionSpec {
        &self.right
    }

    /// Degree of the base this spec extends.
    pub fn base_degree(&self) -> usize {
        self.right.base_degree() - self.left.size()
    }
}

/// Any of the three extension shapes; JSON `{"kind": "right", "filler": [...], "slot": t}` etc.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub enum ExtensionSpec {
    Right(RightExtensionSpec),
    Left(LeftExtensionSpec),
    TwoSided(TwoSidedExtensionSpec),
}

impl ExtensionSpec {
    pub fn apply(&self, base: &Permutation) -> Result<Permutation> {
        match self {
            Self::Right(s) => right_extend(base, s),
            Self::Left(s) => left_extend(base, s),
            Self::TwoSided(s) => two_sided_extend(base, s),
        }
    }

    /// `(m, n)`: sizes added on the left and on the right.
    pub fn sizes(&self) -> (usize, usize) {
        match self {
            Self::Right(s) => (0, s.size()),
            Self::Left(s) => (s.size(), 0),
            Self::TwoSided(s) => (s.left.size(), s.right.size()),
        }
    }
}

impl fmt::Display for ExtensionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

#[derive(Serialize, Deserialize)]
struct RawSide {
    filler: Vec<usize>,
    slot: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum RawSpec {
    Right { filler: Vec<usize>, slot: usize },
    Left { filler: Vec<usize>, slot: usize },
    TwoSided { left: RawSide, right: RawSide },
}

impl TryFrom<RawSpec> for ExtensionSpec {
    type Error = Error;
    fn try_from(raw: RawSpec) -> Result<Self> {
        Ok(match raw {
            RawSpec::Right { filler, slot } => Self::Right(RightExtensionSpec::from_images(filler, slot)?),
            RawSpec::Left { filler, slot } => Self::Left(LeftExtensionSpec::from_images(filler, slot)?),
            RawSpec::TwoSided { left, right } => Self::TwoSided(TwoSidedExtensionSpec::new(
                LeftExtensionSpec::from_images(left.filler, left.slot)?,
                RightExtensionSpec::from_images(right.filler, right.slot)?,
            )?),
        })
    }
}

impl From<ExtensionSpec> for RawSpec {
    fn from(spec: ExtensionSpec) -> Self {
        let right = |s: &RightExtensionSpec| RawSide { filler: s.filler.images().to_vec(), slot: s.slot };
        let left = |s: &LeftExtensionSpec| RawSide { filler: s.filler.images().to_vec(), slot: s.slot };
        match spec {
            ExtensionSpec::Right(s) => RawSpec::Right { filler: s.filler.images().to_vec(), slot: s.slot },
            ExtensionSpec::Left(s) => RawSpec::Left { filler: s.filler.images().to_vec(), slot: s.slot },
            ExtensionSpec::TwoSided(s) => RawSpec::TwoSided { left: left(&s.left), right: right(&s.right) },
        }
    }
}

/// `R(σ_k, β, t)`.
pub fn right_extend(base: &Permutation, spec: &RightExtensionSpec) -> Result<Permutation> {
    let k = base.degree();
    if spec.base_degree() != k {
        return Err(Error::InvalidSpec(format!("right filler starts at {}, base has degree {k}", spec.filler.start())));
    }
    let n = spec.size();
    let images = (1..=k + n)
        .map(|i| match i {
            _ if i < k => base.image(i),
            _ if i == k => spec.filler.image(spec.slot),
            _ if i == spec.slot => base.image(k),
            _ => spec.filler.image(i),
        })
        .collect();
    Permutation::new(images)
}

/// `L(α_m, σ_k, s)`.
pub fn left_extend(base: &Permutation, spec: &LeftExtensionSpec) -> Result<Permutation> {
    let k = base.degree();
    if k < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: k });
    }
    let m = spec.size();
    let images = (1..=m + k)
        .map(|i| match i {
            _ if i == spec.slot => m + base.image(1),
            _ if i <= m => spec.filler.image(i),
            _ if i == m + 1 => spec.filler.image(spec.slot),
            _ => m + base.image(i - m),
        })
        .collect();
    Permutation::new(images)
}

/// `T(α_m, σ_k, β, s, t)`.
pub fn two_sided_extend(base: &Permutation, spec: &TwoSidedExtensionSpec) -> Result<Permutation> {
    let k = base.degree();
    if k < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: k });
    }
    let (l, r) = (&spec.left, &spec.right);
    let m = l.size();
    if r.base_degree() != m + k {
        return Err(Error::InvalidSpec(format!("right filler starts at {}, expected {}", r.filler.start(), m + k + 1)));
    }
    let n = r.size();
    let images = (1..=m + k + n)
        .map(|i| match i {
            _ if i == l.slot => m + base.image(1),
            _ if i <= m => l.filler.image(i),
            _ if i == m + 1 => l.filler.image(l.slot),
            _ if i < m + k => m + base.image(i - m),
            _ if i == m + k => r.filler.image(r.slot),
            _ if i == r.slot => m + base.image(k),
            _ => r.filler.image(i),
        })
        .collect();
    Permutation::new(images)
}

/// Recovers `(σ_k, β, t)` from a right extension `τ`, or `None` if `τ` is
/// not a right extension of any degree-`k` permutation.
pub fn decompose_right(tau: &Permutation, k: usize) -> Option<(Permutation, RightExtensionSpec)> {
    let total = tau.degree();
    if k < 2 || total <= k {
        return None;
    }
    if (1..k).any(|i| tau.image(i) > k) || tau.image(k) <= k {
        return None;
    }
    let mut low = (k + 1..=total).filter(|&j| tau.image(j) <= k);
    let t = low.next()?;
    if low.next().is_some() {
        return None;
    }
    let base: Vec<usize> = (1..k).map(|i| tau.image(i)).chain([tau.image(t)]).collect();
    let filler: Vec<usize> = (k + 1..=total).map(|j| if j == t { tau.image(k) } else { tau.image(j) }).collect();
    let spec = RightExtensionSpec::new(RangePermutation::new(k + 1, filler).ok()?, t).ok()?;
    Some((Permutation::new(base).ok()?, spec))
}

/// Recovers `(α, σ_k, s)` from a left extension `τ` with `m` added points.
pub fn decompose_left(tau: &Permutation, m: usize) -> Option<(Permutation, LeftExtensionSpec)> {
    let total = tau.degree();
    if m == 0 || total < m + 2 {
        return None;
    }
    let k = total - m;
    if tau.image(m + 1) > m || (m + 2..=total).any(|j| tau.image(j) <= m) {
        return None;
    }
    let mut high = (1..=m).filter(|&i| tau.image(i) > m);
    let s = high.next()?;
    if high.next().is_some() {
        return None;
    }
    let filler: Vec<usize> = (1..=m).map(|i| if i == s { tau.image(m + 1) } else { tau.image(i) }).collect();
    let base: Vec<usize> = [tau.image(s) - m].into_iter().chain((2..=k).map(|j| tau.image(m + j) - m)).collect();
    let spec = LeftExtensionSpec::new(Permutation::new(filler).ok()?, s).ok()?;
    Some((Permutation::new(base).ok()?, spec))
}

/// Recovers the base and both fillers of a two-sided extension with `m`
/// points added on the left and `n` on the right.
pub fn decompose_two_sided(tau: &Permutation, m: usize, n: usize) -> Option<(Permutation, TwoSidedExtensionSpec)> {
    let total = tau.degree();
    if m == 0 || n == 0 || total < m + n + 2 {
        return None;
    }
    let k = total - m - n;
    let mk = m + k;
    // left block
    if tau.image(m + 1) > m || (m + 2..mk).any(|j| tau.image(j) <= m || tau.image(j) > mk) {
        return None;
    }
    let mut high = (1..=m).filter(|&i| tau.image(i) > m);
    let s = high.next()?;
    if high.next().is_some() || tau.image(s) > mk {
        return None;
    }
    // right block
    if tau.image(mk) <= mk {
        return None;
    }
    let mut low = (mk + 1..=total).filter(|&j| tau.image(j) <= mk);
    let t = low.next()?;
    if low.next().is_some() || tau.image(t) <= m {
        return None;
    }
    let alpha: Vec<usize> = (1..=m).map(|i| if i == s { tau.image(m + 1) } else { tau.image(i) }).collect();
    let beta: Vec<usize> = (mk + 1..=total).map(|j| if j == t { tau.image(mk) } else { tau.image(j) }).collect();
    let base: Vec<usize> = [tau.image(s) - m]
        .into_iter()
        .chain((2..k).map(|j| tau.image(m + j) - m))
        .chain([tau.image(t) - m])
        .collect();
    let spec = TwoSidedExtensionSpec::new(
        LeftExtensionSpec::new(Permutation::new(alpha).ok()?, s).ok()?,
        RightExtensionSpec::new(RangePermutation::new(mk + 1, beta).ok()?, t).ok()?,
    )
    .ok()?;
    Some((Permutation::new(base).ok()?, spec))
}

/// All right specs of size `n` over a base of degree `k`: fillers in
/// lexicographic order, slots ascending.
pub fn right_specs(k: usize, n: usize) -> impl Iterator<Item = RightExtensionSpec> + Clone {
    let fillers: Vec<Vec<usize>> = if n == 0 { Vec::new() } else { lex_permutations((k + 1..=k + n).collect()).collect() };
    fillers.into_iter().flat_map(move |f| {
        let filler = RangePermutation::new(k + 1, f).expect("lexicographic fillers are bijections");
        (k + 1..=k + n).map(move |t| RightExtensionSpec { filler: filler.clone(), slot: t })
    })
}

/// All left specs of size `m`, fillers lexicographic, slots ascending.
pub fn left_specs(m: usize) -> impl Iterator<Item = LeftExtensionSpec> + Clone {
    let fillers: Vec<Permutation> = if m == 0 { Vec::new() } else { Permutation::all(m).collect() };
    fillers.into_iter().flat_map(move |f| (1..=m).map(move |s| LeftExtensionSpec { filler: f.clone(), slot: s }))
}

/// All two-sided specs of sizes `(m, n)` over a base of degree `k`; the left
/// choice is the outer loop.
pub fn two_sided_specs(k: usize, m: usize, n: usize) -> impl Iterator<Item = TwoSidedExtensionSpec> + Clone {
    left_specs(m).flat_map(move |l| right_specs(m + k, n).map(move |r| TwoSidedExtensionSpec { left: l.clone(), right: r }))
}

/// One synchronized extension pair together with the spec that produced it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SyncPair {
    pub spec: ExtensionSpec,
    pub sigma: Permutation,
    pub rho: Permutation,
}

fn check_pair(sigma: &Permutation, rho: &Permutation) -> Result<()> {
    if sigma.degree() != rho.degree() {
        return Err(Error::DegreeMismatch { left: sigma.degree(), right: rho.degree() });
    }
    if sigma.degree() < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: sigma.degree() });
    }
    Ok(())
}

fn sync(spec: ExtensionSpec, sigma: &Permutation, rho: &Permutation) -> SyncPair {
    let a = spec.apply(sigma).expect("enumerated specs fit the base");
    let b = spec.apply(rho).expect("enumerated specs fit the base");
    SyncPair { spec, sigma: a, rho: b }
}

/// The `n!·n` synchronized right extensions of size `n`, lazily.
pub fn enumerate_synchronized_right<'a>(sigma: &'a Permutation, rho: &'a Permutation, n: usize) -> Result<impl Iterator<Item = SyncPair> + 'a> {
    check_pair(sigma, rho)?;
    Ok(right_specs(sigma.degree(), n).map(move |s| sync(ExtensionSpec::Right(s), sigma, rho)))
}

/// The `m!·m` synchronized left extensions of size `m`, lazily.
pub fn enumerate_synchronized_left<'a>(sigma: &'a Permutation, rho: &'a Permutation, m: usize) -> Result<impl Iterator<Item = SyncPair> + 'a> {
    check_pair(sigma, rho)?;
    Ok(left_specs(m).map(move |s| sync(ExtensionSpec::Left(s), sigma, rho)))
}

/// The `(m!·m)(n!·n)` synchronized two-sided extensions of sizes `(m, n)`, lazily.
pub fn enumerate_synchronized_two_sided<'a>(
    sigma: &'a Permutation,
    rho: &'a Permutation,
    m: usize,
    n: usize,
) -> Result<impl Iterator<Item = SyncPair> + 'a> {
    check_pair(sigma, rho)?;
    Ok(two_sided_specs(sigma.degree(), m, n).map(move |s| sync(ExtensionSpec::TwoSided(s), sigma, rho)))
}

/// Number of specs of one size, `n!·n`.
pub fn spec_count(n: usize) -> usize {
    (1..=n).product::<usize>() * n
}
